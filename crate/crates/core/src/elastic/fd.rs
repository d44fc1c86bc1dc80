use super::params::LameParameters;
use crate::C64;

/// Central finite-difference weights on offsets `-r..=r` for the `m`-th
/// derivative (Fornberg's recursion). Order of accuracy is `2r` for even
/// stencils when `m ≤ 2`.
pub fn central_weights(m: usize, r: usize) -> Vec<f64> {
    let z: Vec<f64> = (-(r as i64)..=(r as i64)).map(|v| v as f64).collect();
    let n = z.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = z[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = z[i];
        for j in 0..i {
            let c3 = z[i] - z[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[m]).collect()
}

/// `ℒu + ω²u` at `x` by fourth-order central differences with step `h`,
/// where `ℒ = μΔ + (λ+μ)∇div`.
pub fn navier_residual_fd<F>(f: F, x: [f64; 2], params: &LameParameters, omega: f64, h: f64) -> [C64; 2]
where
    F: Fn([f64; 2]) -> [C64; 2],
{
    let w2 = central_weights(2, 2);
    let w1 = central_weights(1, 2);
    let zero = C64::new(0.0, 0.0);
    let mut d11 = [zero; 2];
    let mut d22 = [zero; 2];
    let mut d12 = [zero; 2];
    for a in 0..5 {
        let oa = a as f64 - 2.0;
        let u1 = f([x[0] + oa * h, x[1]]);
        let u2 = f([x[0], x[1] + oa * h]);
        for c in 0..2 {
            d11[c] += u1[c] * w2[a];
            d22[c] += u2[c] * w2[a];
        }
        if w1[a] == 0.0 {
            continue;
        }
        for b in 0..5 {
            if w1[b] == 0.0 {
                continue;
            }
            let ob = b as f64 - 2.0;
            let u = f([x[0] + oa * h, x[1] + ob * h]);
            for c in 0..2 {
                d12[c] += u[c] * (w1[a] * w1[b]);
            }
        }
    }
    let h2 = h * h;
    let (lam, mu) = (params.lambda(), params.mu());
    let u0 = f(x);
    let lap = [(d11[0] + d22[0]) / h2, (d11[1] + d22[1]) / h2];
    let grad_div = [(d11[0] + d12[1]) / h2, (d12[0] + d22[1]) / h2];
    [
        lap[0] * mu + grad_div[0] * (lam + mu) + u0[0] * (omega * omega),
        lap[1] * mu + grad_div[1] * (lam + mu) + u0[1] * (omega * omega),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_weights() {
        let w = central_weights(2, 2);
        let want = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
        let w = central_weights(1, 1);
        assert!((w[0] + 0.5).abs() < 1e-15 && w[1].abs() < 1e-15 && (w[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn weights_are_exact_on_polynomials() {
        for r in 1..=4 {
            for m in 1..=2 {
                let w = central_weights(m, r);
                for p in 0..=(2 * r) {
                    let s: f64 = w
                        .iter()
                        .enumerate()
                        .map(|(j, wj)| wj * ((j as f64) - r as f64).powi(p as i32))
                        .sum();
                    let want = if p == m { (1..=m).product::<usize>() as f64 } else { 0.0 };
                    assert!((s - want).abs() < 1e-9, "r={r} m={m} p={p} s={s}");
                }
            }
        }
    }
}
