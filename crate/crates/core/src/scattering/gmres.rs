use crate::C64;

#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct GmresOptions {
    /// Relative residual target `‖b − Ax‖ ≤ tol ‖b‖`.
    pub tol: f64,
    pub restart: usize,
    pub max_iter: usize,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { tol: 1e-10, restart: 200, max_iter: 1000 }
    }
}

#[derive(Clone, Debug)]
pub struct GmresOutcome {
    pub x: Vec<C64>,
    pub iterations: usize,
    pub residual: f64,
    /// Relative residual after every inner iteration.
    pub history: Vec<f64>,
    pub converged: bool,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Restarted GMRES with modified Gram–Schmidt and Givens rotations.
pub fn gmres<F>(mut apply: F, b: &[C64], x0: Option<&[C64]>, opts: &GmresOptions) -> GmresOutcome
where
    F: FnMut(&[C64], &mut [C64]),
{
    let n = b.len();
    let bnorm = norm(b);
    let mut x = x0.map(|v| v.to_vec()).unwrap_or_else(|| vec![C64::default(); n]);
    let mut history = Vec::new();
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = C64::default());
        return GmresOutcome { x, iterations: 0, residual: 0.0, history, converged: true };
    }
    let m = opts.restart.max(1);
    let mut ax = vec![C64::default(); n];
    let mut iterations = 0;
    loop {
        apply(&x, &mut ax);
        let r: Vec<C64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let beta = norm(&r);
        let rel = beta / bnorm;
        if rel <= opts.tol || iterations >= opts.max_iter {
            return GmresOutcome { x, iterations, residual: rel, history, converged: rel <= opts.tol };
        }
        let mut v: Vec<Vec<C64>> = vec![r.iter().map(|z| z / beta).collect()];
        let mut hcols: Vec<Vec<C64>> = Vec::new();
        let mut cs: Vec<f64> = Vec::new();
        let mut sn: Vec<C64> = Vec::new();
        let mut g = vec![C64::new(beta, 0.0)];
        let mut w = vec![C64::default(); n];
        for j in 0..m {
            apply(&v[j], &mut w);
            iterations += 1;
            let mut h = vec![C64::default(); j + 2];
            for (i, vi) in v.iter().enumerate() {
                let hij = dot(vi, &w);
                h[i] = hij;
                w.iter_mut().zip(vi).for_each(|(a, b)| *a -= hij * b);
            }
            let hn = norm(&w);
            h[j + 1] = C64::new(hn, 0.0);
            for i in 0..j {
                let t = h[i] * cs[i] + sn[i] * h[i + 1];
                h[i + 1] = -sn[i].conj() * h[i] + h[i + 1] * cs[i];
                h[i] = t;
            }
            let (a, bb) = (h[j], h[j + 1]);
            let den = (a.norm_sqr() + bb.norm_sqr()).sqrt();
            let (c, s) = if den == 0.0 {
                (1.0, C64::default())
            } else if a.norm() == 0.0 {
                (0.0, bb.conj() / bb.norm())
            } else {
                let c = a.norm() / den;
                (c, (a / a.norm()) * bb.conj() / den)
            };
            h[j] = h[j] * c + s * h[j + 1];
            h[j + 1] = C64::default();
            cs.push(c);
            sn.push(s);
            let gj = g[j];
            g.push(-s.conj() * gj);
            g[j] = gj * c;
            hcols.push(h);
            let rel = g[j + 1].norm() / bnorm;
            history.push(rel);
            let done = rel <= opts.tol || iterations >= opts.max_iter || hn == 0.0;
            if !done {
                v.push(w.iter().map(|z| z / hn).collect());
            }
            if done || j + 1 == m {
                let k = j + 1;
                let mut y = vec![C64::default(); k];
                for i in (0..k).rev() {
                    let mut s = g[i];
                    for l in i + 1..k {
                        s -= hcols[l][i] * y[l];
                    }
                    y[i] = s / hcols[i][i];
                }
                for (l, yl) in y.iter().enumerate() {
                    x.iter_mut().zip(&v[l]).for_each(|(a, b)| *a += yl * b);
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_nonsymmetric_system() {
        let n = 30;
        let a = |i: usize, j: usize| {
            if i == j { C64::new(3.0, 0.5) } else { C64::new(((i * 7 + j * 3) % 5) as f64 * 0.05, ((i + 2 * j) % 3) as f64 * 0.03) }
        };
        let xs: Vec<C64> = (0..n).map(|i| C64::new(i as f64, 1.0)).collect();
        let b: Vec<C64> = (0..n).map(|i| (0..n).map(|j| a(i, j) * xs[j]).sum()).collect();
        let apply = |x: &[C64], y: &mut [C64]| {
            for i in 0..n {
                y[i] = (0..n).map(|j| a(i, j) * x[j]).sum();
            }
        };
        for restart in [5, 50] {
            let out = gmres(apply, &b, None, &GmresOptions { tol: 1e-12, restart, max_iter: 500 });
            assert!(out.converged);
            let err: f64 = out.x.iter().zip(&xs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-9, "restart {restart}: {err}");
        }
    }
}
