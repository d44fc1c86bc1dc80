use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::certify::certify_order;
use super::rows::{boundary_rows, col};
use crate::exact::{GRMatrix, GaussianRational as GR};
use crate::lame::ab;

/// Labels of the four extreme monomials, in printed row order.
fn extreme_labels(n: usize) -> [String; 4] {
    [
        format!("L1^{n}"),
        format!("L1^{} L2", n - 1),
        format!("L1 L2^{}", n - 1),
        format!("L2^{n}"),
    ]
}

/// The four extremes `Λ₁ⁿ, Λ₁ⁿ⁻¹Λ₂, Λ₁Λ₂ⁿ⁻¹, Λ₂ⁿ` expressed through the
/// middle monomials `j = 2..=n−2`, solved from our boundary rows
/// (one block, `t = 1`). Column `c` is `j = c + 2`.
pub fn derived_normal_form(n: usize) -> GRMatrix {
    assert!(n >= 4, "normal form needs order ≥ 4");
    let sys = boundary_rows(n);
    let rows: Vec<usize> = (0..sys.matrix.rows()).filter(|&i| i < 4).collect();
    let ext = [n, n - 1, 1, 0];
    let mids: Vec<usize> = (2..=n - 2).collect();
    let pick = |cols: &[usize]| {
        GRMatrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| sys.matrix[(i, col(n, 1, j))].clone()).collect())
                .collect(),
        )
    };
    let re = pick(&ext);
    let rm = pick(&mids);
    let inv = re.inverse().expect("extreme block is invertible");
    (&inv * &rm).scale(&GR::int(-1))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |r, i| r * (n - i) / (i + 1))
}

fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// α(m, j) as printed.
fn alpha(m: i64, j: i64) -> [i64; 4] {
    [
        binom(m, m + 1 - j) * sgn(m + 1 - j),
        binom(m, m - j) * sgn(m - j),
        binom(m, m + 1 - j),
        binom(m, m - j),
    ]
}

/// Prefactor matrix and denominator of the printed system for `n = m + 1`:
/// the transcribed displays at orders 4, 5, 6 and the general even/odd
/// formula beyond.
fn printed_prefactor(n: usize) -> ([[i64; 4]; 4], i64, &'static str) {
    let m = n as i64 - 1;
    match n {
        4 => ([[8, 0, 8, 0], [-3, -1, 3, -1], [1, 3, -1, 3], [0, -8, 0, 8]], -16, "order-4 display"),
        5 => ([[4, 1, 4, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, 4, -1, 4]], -8, "display (d)"),
        6 => ([[24, 0, 24, 0], [-5, -1, 5, -1], [1, 5, -1, 5], [0, -24, 0, 24]], -48, "display (e)"),
        _ if m % 2 == 0 => ([[m, 1, m, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, m, -1, m]], -2 * m, "even-m formula"),
        _ => {
            let q = m * m - 1;
            ([[q, 0, q, 0], [-m, -1, m, -1], [1, m, -1, m], [0, -q, 0, q]], -2 * q, "odd-m formula with Q(m)")
        }
    }
}

/// Right-hand vectors of the printed systems. Order 4 prints (3, −3, 3, 3)
/// explicitly; the others use α.
fn printed_vector(n: usize, j: usize) -> [i64; 4] {
    if n == 4 {
        [3, -3, 3, 3]
    } else {
        alpha(n as i64 - 1, j as i64)
    }
}

/// The printed normal form as a 4 × (n−3) matrix, same layout as
/// [`derived_normal_form`].
pub fn printed_normal_form(n: usize) -> GRMatrix {
    let (m, den, _) = printed_prefactor(n);
    let mut out = GRMatrix::zeros(4, n - 3);
    for (c, j) in (2..=n - 2).enumerate() {
        let v = printed_vector(n, j);
        for r in 0..4 {
            let s: i64 = (0..4).map(|k| m[r][k] * v[k]).sum();
            out[(r, c)] = GR::frac(s, den);
        }
    }
    out
}

/// Scalar relations stated in the prose after displays (d) and (e):
/// (order, extreme row, j, coefficient).
fn prose_relations() -> Vec<(usize, usize, usize, GR)> {
    vec![
        (5, 1, 2, GR::int(-1)),
        (5, 1, 3, GR::zero()),
        (5, 2, 3, GR::int(-1)),
        (5, 2, 2, GR::zero()),
        (6, 1, 3, GR::frac(-5, 3)),
        (6, 1, 2, GR::zero()),
        (6, 1, 4, GR::zero()),
        (6, 2, 3, GR::frac(-5, 3)),
        (6, 2, 2, GR::zero()),
        (6, 2, 4, GR::zero()),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffEntry {
    pub source: String,
    pub row: String,
    pub j: usize,
    pub printed: String,
    pub derived: String,
    pub equal: bool,
}

/// Entrywise comparison of one printed system with the derived one.
#[derive(Clone, Debug, Serialize)]
pub struct PrintedDiff {
    pub order: usize,
    pub source: String,
    pub denominator: i64,
    pub entries: Vec<DiffEntry>,
    pub mismatches: usize,
    /// Whether our own rows certify the vanishing jet at this order,
    /// irrespective of any mismatch.
    pub derived_certifies: bool,
}

/// Diff of the printed system at order `n` (4, 5, 6, or any higher order
/// through the general formula) against the derived normal form.
pub fn compare_printed_systems(n: usize) -> PrintedDiff {
    assert!(n >= 4, "printed systems start at order 4");
    let (_, den, source) = printed_prefactor(n);
    let derived = derived_normal_form(n);
    let printed = printed_normal_form(n);
    let labels = extreme_labels(n);
    let mut entries = Vec::new();
    for r in 0..4 {
        for (c, j) in (2..=n - 2).enumerate() {
            entries.push(DiffEntry {
                source: source.to_string(),
                row: labels[r].clone(),
                j,
                printed: printed[(r, c)].to_string(),
                derived: derived[(r, c)].to_string(),
                equal: printed[(r, c)] == derived[(r, c)],
            });
        }
    }
    for (order, r, j, v) in prose_relations() {
        if order != n {
            continue;
        }
        let d = &derived[(r, j - 2)];
        entries.push(DiffEntry {
            source: "prose relation".into(),
            row: labels[r].clone(),
            j,
            printed: v.to_string(),
            derived: d.to_string(),
            equal: &v == d,
        });
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let (a, b) = ab(&one, &one);
    let derived_certifies = certify_order(n, &a, &b).map(|r| r.full_rank).unwrap_or(false);
    PrintedDiff {
        order: n,
        source: source.to_string(),
        denominator: den,
        mismatches: entries.iter().filter(|e| !e.equal).count(),
        entries,
        derived_certifies,
    }
}
