use crate::{Error, Result};

/// Real banded matrix in column-major band storage with room for pivoting fill.
#[derive(Clone, Debug)]
pub struct BandMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    ld: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ld = 2 * kl + ku + 1;
        Self { n, kl, ku, ld, data: vec![0.0; ld * n] }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.ld + self.kl + self.ku + i - j
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        i + self.ku >= j && j + self.kl >= i
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) { self.data[self.idx(i, j)] } else { 0.0 }
    }

    /// Adds `v` at `(i, j)`; the position must lie inside the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside the band");
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// `self += a * other` for matrices with identical shape.
    pub fn axpy(&mut self, a: f64, other: &BandMatrix) {
        assert_eq!((self.n, self.kl, self.ku), (other.n, other.kl, other.ku));
        self.data.iter_mut().zip(&other.data).for_each(|(x, y)| *x += a * y);
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for j in 0..self.n {
            let lo = j.saturating_sub(self.ku);
            let hi = (j + self.kl).min(self.n - 1);
            for i in lo..=hi {
                y[i] += self.data[self.idx(i, j)] * x[j];
            }
        }
        y
    }

    /// LU factorisation with partial pivoting.
    pub fn factor(mut self) -> Result<BandLu> {
        let (n, kl, ku, ld) = (self.n, self.kl, self.ku, self.ld);
        let kv = kl + ku;
        let mut ipiv = vec![0usize; n];
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let base = j * ld + kv;
            let mut jp = 0;
            let mut best = self.data[base].abs();
            for r in 1..=km {
                let v = self.data[base + r].abs();
                if v > best {
                    best = v;
                    jp = r;
                }
            }
            ipiv[j] = j + jp;
            if best == 0.0 {
                return Err(Error::Domain(format!("banded matrix is exactly singular at column {j}")));
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let a = c * ld + kv + j - c;
                    self.data.swap(a, a + jp);
                }
            }
            let piv = self.data[base];
            for r in 1..=km {
                self.data[base + r] /= piv;
            }
            for c in j + 1..=ju {
                let top = c * ld + kv + j - c;
                let t = self.data[top];
                if t != 0.0 {
                    let (left, right) = self.data.split_at_mut(c * ld);
                    let l = &left[base + 1..base + 1 + km];
                    let col = &mut right[top - c * ld + 1..top - c * ld + 1 + km];
                    col.iter_mut().zip(l).for_each(|(x, m)| *x -= m * t);
                }
            }
        }
        Ok(BandLu { m: self, ipiv })
    }
}

pub struct BandLu {
    m: BandMatrix,
    ipiv: Vec<usize>,
}

impl BandLu {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.m.data[j * self.m.ld + self.m.kl + self.m.ku + i - j]
    }

    /// Solve `A x = b` in place.
    pub fn solve(&self, b: &mut [f64]) {
        let (n, kl, kv) = (self.m.n, self.m.kl, self.m.kl + self.m.ku);
        for j in 0..n {
            b.swap(j, self.ipiv[j]);
            let km = kl.min(n - 1 - j);
            let bj = b[j];
            if bj != 0.0 {
                for r in 1..=km {
                    b[j + r] -= self.at(j + r, j) * bj;
                }
            }
        }
        for j in (0..n).rev() {
            b[j] /= self.at(j, j);
            let bj = b[j];
            for i in j.saturating_sub(kv)..j {
                b[i] -= self.at(i, j) * bj;
            }
        }
    }

    /// Solve `Aᵀ x = b` in place.
    pub fn solve_transpose(&self, b: &mut [f64]) {
        let (n, kl, kv) = (self.m.n, self.m.kl, self.m.kl + self.m.ku);
        for j in 0..n {
            let mut s = b[j];
            for i in j.saturating_sub(kv)..j {
                s -= self.at(i, j) * b[i];
            }
            b[j] = s / self.at(j, j);
        }
        for j in (0..n).rev() {
            let km = kl.min(n - 1 - j);
            let mut s = b[j];
            for r in 1..=km {
                s -= self.at(j + r, j) * b[j + r];
            }
            b[j] = s;
            b.swap(j, self.ipiv[j]);
        }
    }

    /// Smallest singular value by inverse iteration on `AᵀA`, from a fixed start vector.
    pub fn smallest_singular_value(&self, max_iter: usize, rel_tol: f64) -> f64 {
        use rand::{Rng, SeedableRng};
        let n = self.m.n;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= nx);
        let mut sigma = f64::INFINITY;
        for _ in 0..max_iter {
            self.solve(&mut x);
            self.solve_transpose(&mut x);
            let nz = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= nz);
            let s = 1.0 / nz.sqrt();
            let done = (sigma - s).abs() <= rel_tol * s;
            sigma = s;
            if done {
                break;
            }
        }
        sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn sample(n: usize, kl: usize, ku: usize) -> (BandMatrix, DMatrix<f64>) {
        let mut b = BandMatrix::zeros(n, kl, ku);
        let mut d = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if b.in_band(i, j) {
                    // Weak diagonal forces pivoting.
                    let v = ((i * 31 + j * 17) % 11) as f64 - 5.0 + if i == j { 0.1 } else { 0.0 };
                    b.add(i, j, v);
                    d[(i, j)] = v;
                }
            }
        }
        (b, d)
    }

    #[test]
    fn solves_match_dense() {
        let (b, d) = sample(40, 3, 2);
        let lu = b.factor().unwrap();
        let rhs: Vec<f64> = (0..40).map(|i| (i as f64).sin()).collect();
        let mut x = rhs.clone();
        lu.solve(&mut x);
        let r = &d * DMatrix::from_column_slice(40, 1, &x);
        assert!((0..40).all(|i| (r[i] - rhs[i]).abs() < 1e-9));
        let mut y = rhs.clone();
        lu.solve_transpose(&mut y);
        let r = d.transpose() * DMatrix::from_column_slice(40, 1, &y);
        assert!((0..40).all(|i| (r[i] - rhs[i]).abs() < 1e-9));
    }

    #[test]
    fn smallest_singular_value_matches_svd() {
        let (b, d) = sample(30, 4, 4);
        let s = b.factor().unwrap().smallest_singular_value(500, 1e-13);
        let e = d.singular_values().iter().copied().fold(f64::INFINITY, f64::min);
        assert!((s - e).abs() < 1e-8 * e.max(1.0), "{s} {e}");
    }
}
