//! Hankel functions of the first kind with their Wronskian and recurrence
//! residuals.

use elastic_corners::special::{bessel_j0, bessel_j1, bessel_y0, bessel_y1, hankel012};
use std::f64::consts::PI;

fn main() -> elastic_corners::Result<()> {
    println!("{:>10}  {:>24}  {:>24}  {:>9}  {:>9}", "x", "H0", "H1", "wronskian", "recur");
    for x in [1e-3, 0.1, 1.0, 5.0, 11.9, 12.0, 30.0, 1e3] {
        let [h0, h1, h2] = hankel012(x)?;
        // J₁Y₀ − J₀Y₁ = 2/(πx)
        let w = (bessel_j1(x) * bessel_y0(x)? - bessel_j0(x) * bessel_y1(x)?) / (2.0 / (PI * x)) - 1.0;
        // H₀ + H₂ = (2/x) H₁
        let r = (h0 + h2 - h1 * (2.0 / x)).norm() / h1.norm();
        println!("{x:>10.3e}  {:>11.4e}{:+11.4e}i  {:>11.4e}{:+11.4e}i  {:>9.1e}  {:>9.1e}", h0.re, h0.im, h1.re, h1.im, w.abs(), r);
    }
    Ok(())
}
