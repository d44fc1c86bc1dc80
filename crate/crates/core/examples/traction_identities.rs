//! Traction, Günter derivative and normal-derivative reconstruction for
//! fields that vanish on a line.

use elastic_corners::elastic::{
    guenter_derivative, normal_from_cauchy, traction, traction_curl_form, traction_mu_form, LameParameters,
    VanishingField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> elastic_corners::Result<()> {
    let p = LameParameters::new(-0.9, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = [0.0f64; 4];
    for _ in 0..100 {
        let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let nu = [th.cos(), th.sin()];
        let f = VanishingField::random(&mut rng, [0.3, -0.2], nu, 5);
        let x = f.line_point(rng.random_range(-1.0..1.0));
        let s = f.eval(x);
        let t = traction(&s, nu, &p)?;
        let jac = s.jac.expect("jacobian");
        let dnu = [jac[0][0] * nu[0] + jac[0][1] * nu[1], jac[1][0] * nu[0] + jac[1][1] * nu[1]];
        let dist = |a: [elastic_corners::C64; 2], b: [elastic_corners::C64; 2]| (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
        let zero = [elastic_corners::C64::new(0.0, 0.0); 2];
        worst[0] = worst[0].max(dist(t, traction_mu_form(&s, nu, &p)?));
        worst[1] = worst[1].max(dist(t, traction_curl_form(&s, nu, &p)?));
        worst[2] = worst[2].max(dist(normal_from_cauchy(t, nu, &p), dnu));
        worst[3] = worst[3].max(dist(guenter_derivative(&s, nu)?, zero));
    }
    println!("over 100 random fields vanishing on a line:");
    println!("  traction vs μ-form          {:.2e}", worst[0]);
    println!("  traction vs curl form       {:.2e}", worst[1]);
    println!("  ∂_ν w from (w, Tw) = (0, Tw) {:.2e}", worst[2]);
    println!("  Günter derivative           {:.2e}", worst[3]);
    Ok(())
}
