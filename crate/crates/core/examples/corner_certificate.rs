//! Order-by-order rank certificate for the corner-jet system.
//!
//! Usage: `cargo run --release --example corner_certificate -- [max_order]`

use elastic_corners::corner::{certify, probe_order};
use num_rational::BigRational;

fn main() -> elastic_corners::Result<()> {
    let max_order: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let lambda: BigRational = "-9/10".parse().expect("rational");
    let mu = BigRational::from_integer(1.into());
    let cert = certify(&lambda, &mu, max_order)?;
    println!("lambda = {}, mu = {}, a = {}, b = {}", cert.lambda, cert.mu, cert.a, cert.b);
    println!("order  unknowns  boundary  pde  rank  full");
    for o in &cert.orders {
        println!(
            "{:>5}  {:>8}  {:>8}  {:>3}  {:>4}  {}",
            o.order, o.unknowns, o.boundary_rows, o.pde_rows, o.rank, o.full_rank
        );
    }
    for c in cert.chain.iter().take(3) {
        println!("chain at n = {}: {} (licenses PDE rows at order {})", c.n, c.statements.join(" ⇒ "), c.licenses_pde_order);
    }
    println!("certificate passes: {}", cert.pass);

    let one = BigRational::from_integer(1.into());
    println!("\nexcluded case a = b = 1:");
    for n in 0..=6 {
        let r = probe_order(n, &one, &one);
        println!("  order {n}: rank {} of {}", r.rank, r.unknowns);
    }
    Ok(())
}
