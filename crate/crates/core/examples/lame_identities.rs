//! Exact identities of the Lamé symbol over the Gaussian rationals.
//!
//! Prints the symbol at one point, then runs the randomised identity suite.

use elastic_corners::lame::{algebra_suite, b_matrix_identities, check_lame_symbol, lame_symbol, SymbolPoint};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> elastic_corners::Result<()> {
    let pt = SymbolPoint::from_ints(2, 1, (3, -1))?;
    let s = lame_symbol(&pt);
    println!("lambda = 2, mu = 1, eta = (3, -1)");
    println!("  L     = {}", s.l);
    println!("  det L = {}", s.det_l);
    println!("  eigenvalues ((λ+2μ)|η|², μ|η|²) = ({}, {})", s.eigs.0, s.eigs.1);
    println!("  symbol checks: {:?}", check_lame_symbol(&pt));

    let one = BigRational::from_integer(1.into());
    let b = b_matrix_identities(&one, &one)?;
    println!("B-matrix at lambda = mu = 1: a = {}, b = {}, all identities hold: {}", b.a, b.b, b.all());

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let suite = algebra_suite(&mut rng, &one, &one, 500, 200)?;
    println!(
        "random suite: {} rank-one instances ({} failures), {} symbol points ({} + {} failures), pass = {}",
        suite.rank_one_instances,
        suite.rank_one_failures,
        suite.symbol_points,
        suite.symbol_failures,
        suite.factorisation_failures,
        suite.pass
    );
    Ok(())
}
