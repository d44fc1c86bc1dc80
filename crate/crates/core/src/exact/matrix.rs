use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::gaussian::{GaussianInt, GaussianRational as GR};

/// Small dense matrix over ℚ(i), row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GR>,
}

/// Result of fraction-free elimination.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// (row, column) of each pivot in elimination order.
    pub pivots: Vec<(usize, usize)>,
    /// sha256 over the pivot positions and values.
    pub trace_hash: String,
}

impl RankReport {
    pub fn full_column_rank(&self) -> bool {
        self.rank == self.cols
    }
}

struct Elimination {
    rank: usize,
    sign_flips: usize,
    pivots: Vec<(usize, usize)>,
    last_pivot: GaussianInt,
    hash: String,
}

impl GRMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GR::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GR::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GR>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| GR::int(v)).collect()).collect())
    }

    pub fn column(v: Vec<GR>) -> Self {
        let n = v.len();
        Self { rows: n, cols: 1, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GR] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<GR>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(GR::conj).collect() }
    }

    pub fn scale(&self, s: &GR) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GR::is_zero)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        if self.rows == 0 {
            return other.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Row-scaled copy in ℤ[i] plus the per-row scale factors.
    fn to_gaussian_ints(&self) -> (Vec<Vec<GaussianInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let s = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            out.push(self.row(i).iter().map(|x| x.scaled_to_int(&s)).collect());
            scales.push(s);
        }
        (out, scales)
    }

    /// Fraction-free (Bareiss) row echelon reduction over ℤ[i] with column
    /// skipping. Every division is exact; a failed division is a bug.
    fn eliminate(&self) -> Elimination {
        let (mut a, _) = self.to_gaussian_ints();
        let mut prev = GaussianInt::one();
        let mut r = 0;
        let mut flips = 0;
        let mut pivots = Vec::new();
        let mut hasher = Sha256::new();
        hasher.update(format!("{}x{};", self.rows, self.cols).as_bytes());
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                flips += 1;
            }
            let piv = a[r][c].clone();
            for i in r + 1..self.rows {
                let f = a[i][c].clone();
                for j in c + 1..self.cols {
                    let num = piv.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division must be exact");
                }
                a[i][c] = GaussianInt { re: 0.into(), im: 0.into() };
            }
            hasher.update(format!("{r},{c},{};", piv).as_bytes());
            pivots.push((r, c));
            prev = piv;
            r += 1;
        }
        Elimination {
            rank: r,
            sign_flips: flips,
            pivots,
            last_pivot: prev,
            hash: hex::encode(hasher.finalize()),
        }
    }

    pub fn rank_report(&self) -> RankReport {
        let e = self.eliminate();
        RankReport {
            rows: self.rows,
            cols: self.cols,
            rank: e.rank,
            pivots: e.pivots,
            trace_hash: e.hash,
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> GR {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return GR::one();
        }
        let e = self.eliminate();
        if e.rank < self.rows {
            return GR::zero();
        }
        let (_, scales) = self.to_gaussian_ints();
        let s = scales.iter().fold(BigInt::one(), |acc, x| acc * x);
        let mut d = &e.last_pivot.to_rational() / &GR::real(num_rational::BigRational::from_integer(s));
        if e.sign_flips % 2 == 1 {
            d = -d;
        }
        d
    }

    /// Cofactor expansion; exponential cost, kept as an independent oracle
    /// for small matrices.
    pub fn det_cofactor(&self) -> GR {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return GR::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = GR::zero();
        for j in 0..n {
            let mut minor = Vec::with_capacity(n - 1);
            for i in 1..n {
                minor.push((0..n).filter(|&c| c != j).map(|c| self[(i, c)].clone()).collect());
            }
            let term = &self[(0, j)] * &GRMatrix::from_rows(minor).det_cofactor();
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Inverse by Gauss–Jordan over ℚ(i); `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pv = a[(c, c)].inv()?;
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &pv;
                inv[(c, j)] = &inv[(c, j)] * &pv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    a[(i, j)] = &a[(i, j)] - &(&f * &a[(c, j)]);
                    inv[(i, j)] = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form over ℚ(i).
    pub fn rref(&self) -> Self {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let pv = a[(r, c)].inv().unwrap();
            for j in 0..self.cols {
                a[(r, j)] = &a[(r, j)] * &pv;
            }
            for i in 0..self.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in 0..self.cols {
                        a[(i, j)] = &a[(i, j)] - &(&f * &a[(r, j)]);
                    }
                }
            }
            r += 1;
        }
        a
    }
}

impl std::ops::Index<(usize, usize)> for GRMatrix {
    type Output = GR;
    fn index(&self, (i, j): (usize, usize)) -> &GR {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GRMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GR {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a GRMatrix> for &'a GRMatrix {
    type Output = GRMatrix;
    fn mul(self, o: &GRMatrix) -> GRMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = GRMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * &o[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a GRMatrix> for &'a GRMatrix {
    type Output = GRMatrix;
    fn add(self, o: &GRMatrix) -> GRMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        GRMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a GRMatrix> for &'a GRMatrix {
    type Output = GRMatrix;
    fn sub(self, o: &GRMatrix) -> GRMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        GRMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for GRMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for GRMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}
