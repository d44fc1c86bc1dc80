use num_rational::BigRational;
use serde::Serialize;

use crate::exact::{GRMatrix, GaussianRational as GR};
use crate::lame::LambdaForm;

/// Column of `v[t][j]` at order `n` (`t` is 1 or 2).
pub fn col(n: usize, t: usize, j: usize) -> usize {
    (t - 1) * (n + 1) + j
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Leg {
    /// The leg along the first axis.
    Lower,
    /// The leg along the second axis.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TraceKind {
    /// From `w = 0` on the leg.
    Dirichlet,
    /// From `∂_ν w = 0`, itself a consequence of `w = Tw = 0`.
    Normal,
}

/// Which combination of the two components of `ℒ²w` a row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Combination {
    /// `2(E₁ + iE₂)`
    Plus,
    /// `2(E₁ − iE₂)`
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// `∂_{τ₁}^p ∂_{τ₂}^q W_t(O) = 0`.
    Boundary { t: usize, p: usize, q: usize, leg: Leg, kind: TraceKind },
    /// `Λ₁^k Λ₂^{n−4−k} ℒ²w(O) = 0`, combined as stated.
    Pde { k: usize, combination: Combination },
}

/// Constraint rows at one order with their provenance.
#[derive(Clone, Debug, Serialize)]
pub struct JetSystem {
    pub order: usize,
    pub matrix: GRMatrix,
    pub provenance: Vec<Provenance>,
}

impl JetSystem {
    pub fn unknowns(&self) -> usize {
        2 * (self.order + 1)
    }

    fn empty(n: usize) -> Self {
        Self { order: n, matrix: GRMatrix::zeros(0, 2 * (n + 1)), provenance: Vec::new() }
    }

    fn push(&mut self, row: Vec<GR>, p: Provenance) {
        self.matrix.push_row(row);
        self.provenance.push(p);
    }

    pub fn stack(mut self, other: JetSystem) -> Self {
        assert_eq!(self.order, other.order);
        self.matrix = self.matrix.vstack(&other.matrix);
        self.provenance.extend(other.provenance);
        self
    }
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// Coefficients of `∂_{τ₁}^p ∂_{τ₂}^q = 2^{−n} i^q (Λ₁+Λ₂)^p (Λ₁−Λ₂)^q` on
/// the monomials `Λ₁ʲ Λ₂ⁿ⁻ʲ`, `j = 0..=n`.
pub fn tau_monomial(p: usize, q: usize) -> Vec<GR> {
    let n = p + q;
    let scale = &GR::i().pow(q as u32) * &GR::frac(1, 1 << n);
    (0..=n)
        .map(|j| {
            let mut c: i64 = 0;
            for a in 0..=p.min(j) {
                let b = j - a;
                if b > q {
                    continue;
                }
                let sign = if (q - b) % 2 == 0 { 1 } else { -1 };
                c += binom(p, a) * binom(q, b) * sign;
            }
            &GR::int(c) * &scale
        })
        .collect()
}

/// Change of basis from `{∂_{τ₁}^p ∂_{τ₂}^{n−p}}` (rows, `p = 0..=n`) to
/// `{Λ₁ʲ Λ₂ⁿ⁻ʲ}` (columns).
pub fn basis_change(n: usize) -> GRMatrix {
    GRMatrix::from_rows((0..=n).map(|p| tau_monomial(p, n - p)).collect())
}

/// Tangential rows from both legs. For `n ≥ 3` these are the four powers
/// `p ∈ {n, n−1, 1, 0}` of `∂_{τ₁}`; for small `n` duplicates collapse and
/// the rows already force the whole jet.
pub fn boundary_rows(n: usize) -> JetSystem {
    let mut seen = Vec::new();
    let candidates = [
        (n, Leg::Lower, TraceKind::Dirichlet),
        (n.saturating_sub(1), Leg::Lower, TraceKind::Normal),
        (1.min(n), Leg::Upper, TraceKind::Normal),
        (0, Leg::Upper, TraceKind::Dirichlet),
    ];
    let mut sys = JetSystem::empty(n);
    for t in 1..=2 {
        seen.clear();
        for &(p, leg, kind) in &candidates {
            if seen.contains(&p) {
                continue;
            }
            seen.push(p);
            let mut row = vec![GR::zero(); 2 * (n + 1)];
            for (j, c) in tau_monomial(p, n - p).into_iter().enumerate() {
                row[col(n, t, j)] = c;
            }
            sys.push(row, Provenance::Boundary { t, p, q: n - p, leg, kind });
        }
    }
    sys
}

/// Rows from `Λ₁^k Λ₂^{n−4−k} ℒ²w(O) = 0`, `k = 0..=n−4`, generated from the
/// Λ-form of the squared symbol. Empty below order 4.
pub fn pde_rows(n: usize, a: &BigRational, b: &BigRational) -> JetSystem {
    let mut sys = JetSystem::empty(n);
    if n < 4 {
        return sys;
    }
    let form = LambdaForm::from_ab(a, b);
    let half = GR::frac(1, 2);
    // w = T W with w₁ = (W₁+W₂)/2, w₂ = i(W₁−W₂)/2
    let t_mat = GRMatrix::from_rows(vec![
        vec![half.clone(), half.clone()],
        vec![&GR::i() * &half, &GR::complex(0, -1) * &half],
    ]);
    for k in 0..=(n - 4) {
        // e[r][col]: component r of ℒ²w in the v basis
        let mut e = [vec![GR::zero(); 2 * (n + 1)], vec![GR::zero(); 2 * (n + 1)]];
        for (p1, _p2, c) in &form.terms {
            let j = *p1 as usize + k;
            let ct = c * &t_mat;
            for (r, er) in e.iter_mut().enumerate() {
                for t in 1..=2 {
                    er[col(n, t, j)] += &ct[(r, t - 1)];
                }
            }
        }
        for (comb, sign) in [(Combination::Plus, GR::i()), (Combination::Minus, GR::complex(0, -1))] {
            let row = (0..2 * (n + 1))
                .map(|c| &GR::int(2) * &(&e[0][c] + &(&sign * &e[1][c])))
                .collect();
            sys.push(row, Provenance::Pde { k, combination: comb });
        }
    }
    sys
}

/// Boundary rows stacked on PDE rows.
pub fn jet_system(n: usize, a: &BigRational, b: &BigRational) -> JetSystem {
    boundary_rows(n).stack(pde_rows(n, a, b))
}
