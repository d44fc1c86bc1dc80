//! Exact checks on the Lamé symbol, its diagonalisation and the Λ-form of the
//! squared operator.
//!
//! With Λ₁ = η₁ − iη₂ and Λ₂ = η₁ + iη₂ substituted for the Wirtinger-type
//! operators Λ₁(∂) = ∂_{τ₁} − i∂_{τ₂} and Λ₂(∂) = ∂_{τ₁} + i∂_{τ₂}, every
//! identity below is a polynomial identity in η checked over ℚ(i).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::exact::{GRMatrix, GaussianRational as GR};
use crate::{Error, Result};

/// Lamé parameters and a symbol point, all rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolPoint {
    pub lambda: BigRational,
    pub mu: BigRational,
    pub eta: (BigRational, BigRational),
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random rational with numerator in `-num..=num` and denominator in `1..=den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> BigRational {
    q(rng.random_range(-num..=num), rng.random_range(1..=den))
}

/// Random admissible (λ, μ): μ > 0 and λ + μ > 0.
pub fn random_lame<R: Rng + ?Sized>(rng: &mut R) -> (BigRational, BigRational) {
    let mu = q(rng.random_range(1..=30), rng.random_range(1..=12));
    loop {
        let lambda = random_rational(rng, 40, 12);
        if (&lambda + &mu).is_positive() {
            return (lambda, mu);
        }
    }
}

pub fn check_lame(lambda: &BigRational, mu: &BigRational) -> Result<()> {
    let mut errs = Vec::new();
    if !mu.is_positive() {
        errs.push(format!("mu > 0 required (got {mu})"));
    }
    if !(lambda + mu).is_positive() {
        errs.push(format!("lambda + mu > 0 required (got {})", lambda + mu));
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(errs))
    }
}

impl SymbolPoint {
    pub fn new(lambda: BigRational, mu: BigRational, eta: (BigRational, BigRational)) -> Result<Self> {
        check_lame(&lambda, &mu)?;
        if eta.0.is_zero() && eta.1.is_zero() {
            return Err(Error::Precondition("symbol point η must be nonzero".into()));
        }
        Ok(Self { lambda, mu, eta })
    }

    pub fn from_ints(lambda: i64, mu: i64, eta: (i64, i64)) -> Result<Self> {
        Self::new(q(lambda, 1), q(mu, 1), (q(eta.0, 1), q(eta.1, 1)))
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let (lambda, mu) = random_lame(rng);
        loop {
            let eta = (random_rational(rng, 20, 9), random_rational(rng, 20, 9));
            if !(eta.0.is_zero() && eta.1.is_zero()) {
                return Self { lambda, mu, eta };
            }
        }
    }

    /// η₁² + η₂².
    pub fn eta_sq(&self) -> GR {
        GR::real(&self.eta.0 * &self.eta.0 + &self.eta.1 * &self.eta.1)
    }

    /// (Λ₁, Λ₂) = (η₁ − iη₂, η₁ + iη₂).
    pub fn lambdas(&self) -> (GR, GR) {
        (
            GR::new(self.eta.0.clone(), -self.eta.1.clone()),
            GR::new(self.eta.0.clone(), self.eta.1.clone()),
        )
    }

    fn lam(&self) -> GR {
        GR::real(self.lambda.clone())
    }

    fn mu_(&self) -> GR {
        GR::real(self.mu.clone())
    }
}

/// Returns `(det(A+UVᵀ), (1+VᵀA⁻¹U) det A)`, computed independently: the left
/// side by cofactor expansion, the right through an exact inverse.
pub fn det_rank_one_update(a: &GRMatrix, u: &GRMatrix, v: &GRMatrix) -> Result<(GR, GR)> {
    if a.rows() != a.cols() || u.cols() != 1 || v.cols() != 1 || u.rows() != a.rows() || v.rows() != a.rows() {
        return Err(Error::Precondition("shape mismatch in rank-one update".into()));
    }
    let inv = a.inverse().ok_or_else(|| Error::Precondition("A must be invertible".into()))?;
    let lhs = (a + &(u * &v.transpose())).det_cofactor();
    let quad = &(&v.transpose() * &inv) * u;
    let rhs = &(&GR::one() + &quad[(0, 0)]) * &a.det();
    Ok((lhs, rhs))
}

/// The Lamé symbol at a point and its closed-form companions.
#[derive(Clone, Debug, Serialize)]
pub struct LameSymbol {
    pub l: GRMatrix,
    pub det_l: GR,
    /// (λ+2μ)|η|² and μ|η|².
    pub eigs: (GR, GR),
    pub p: GRMatrix,
}

/// `L = μ|η|² I + (λ+μ) ΘΘᵀ` together with det, eigenvalues and `P`.
pub fn lame_symbol(pt: &SymbolPoint) -> LameSymbol {
    let (e1, e2) = (GR::real(pt.eta.0.clone()), GR::real(pt.eta.1.clone()));
    let theta = GRMatrix::column(vec![e1.clone(), e2.clone()]);
    let eta_sq = pt.eta_sq();
    let l = &GRMatrix::identity(2).scale(&(&pt.mu_() * &eta_sq))
        + &(&theta * &theta.transpose()).scale(&(&pt.lam() + &pt.mu_()));
    let det_l = l.det();
    let pm = &pt.lam() + &(&pt.mu_() + &pt.mu_());
    let eigs = (&pm * &eta_sq, &pt.mu_() * &eta_sq);
    let p = GRMatrix::from_rows(vec![vec![-&e2, e1.clone()], vec![e1, e2]]);
    LameSymbol { l, det_l, eigs, p }
}

#[derive(Clone, Debug, Serialize)]
pub struct LameSymbolReport {
    pub det_formula: bool,
    pub det_via_rank_one_update: bool,
    pub eigenvectors: bool,
    pub diagonalisation: bool,
    pub p_squared: bool,
}

impl LameSymbolReport {
    pub fn all(&self) -> bool {
        self.det_formula && self.det_via_rank_one_update && self.eigenvectors && self.diagonalisation && self.p_squared
    }
}

/// Checks det L, the eigenpairs (columns of P), `L = P diag(μ, λ+2μ) P` taken
/// literally with the same P on both sides, and `P² = |η|² I`.
pub fn check_lame_symbol(pt: &SymbolPoint) -> LameSymbolReport {
    let s = lame_symbol(pt);
    let eta_sq = pt.eta_sq();
    let pm = &pt.lam() + &(&pt.mu_() + &pt.mu_());
    let det_want = &(&pm * &pt.mu_()) * &(&eta_sq * &eta_sq);

    // det(μ|η|²I + (λ+μ)ΘΘᵀ) = (1 + (λ+μ)/μ) μ²|η|⁴ through the rank-one identity
    let a = GRMatrix::identity(2).scale(&(&pt.mu_() * &eta_sq));
    let theta = GRMatrix::column(vec![GR::real(pt.eta.0.clone()), GR::real(pt.eta.1.clone())]);
    let u = theta.scale(&(&pt.lam() + &pt.mu_()));
    let rank_one = det_rank_one_update(&a, &u, &theta)
        .map(|(lhs, rhs)| {
            let closed = &(&GR::one() + &(&(&pt.lam() + &pt.mu_()) / &pt.mu_()))
                * &(&(&pt.mu_() * &pt.mu_()) * &(&eta_sq * &eta_sq));
            lhs == rhs && rhs == closed && lhs == s.det_l
        })
        .unwrap_or(false);

    let col = |j: usize| GRMatrix::column(vec![s.p[(0, j)].clone(), s.p[(1, j)].clone()]);
    let eigenvectors = &s.l * &col(0) == col(0).scale(&s.eigs.1) && &s.l * &col(1) == col(1).scale(&s.eigs.0);

    let mut d = GRMatrix::zeros(2, 2);
    d[(0, 0)] = pt.mu_();
    d[(1, 1)] = pm;
    let diagonalisation = &(&s.p * &d) * &s.p == s.l;
    let p_squared = &s.p * &s.p == GRMatrix::identity(2).scale(&eta_sq);
    LameSymbolReport {
        det_formula: s.det_l == det_want,
        det_via_rank_one_update: rank_one,
        eigenvectors,
        diagonalisation,
        p_squared,
    }
}

/// `B = [[−iμ, λ+2μ], [μ, i(λ+2μ)]]`.
pub fn b_matrix(lambda: &BigRational, mu: &BigRational) -> GRMatrix {
    let pm = lambda + mu + mu;
    GRMatrix::from_rows(vec![
        vec![GR::new(BigRational::zero(), -mu.clone()), GR::real(pm.clone())],
        vec![GR::real(mu.clone()), GR::new(BigRational::zero(), pm)],
    ])
}

/// (a, b) = ((λ+2μ)², μ²).
pub fn ab(lambda: &BigRational, mu: &BigRational) -> (BigRational, BigRational) {
    let pm = lambda + mu + mu;
    (&pm * &pm, mu * mu)
}

#[derive(Clone, Debug, Serialize)]
pub struct BMatrixReport {
    pub a: String,
    pub b: String,
    pub b_bt: GRMatrix,
    pub b_bt_closed_form: bool,
    pub bbar_bbart_closed_form: bool,
    pub mixed_sum_scalar: bool,
    pub a_minus_b_factorisation: bool,
    pub minus_four_ab: bool,
}

impl BMatrixReport {
    pub fn all(&self) -> bool {
        self.b_bt_closed_form
            && self.bbar_bbart_closed_form
            && self.mixed_sum_scalar
            && self.a_minus_b_factorisation
            && self.minus_four_ab
    }
}

fn sigma(sign: i64) -> GRMatrix {
    // [[1, ±i], [±i, −1]]
    GRMatrix::from_rows(vec![
        vec![GR::one(), GR::complex(0, sign)],
        vec![GR::complex(0, sign), GR::int(-1)],
    ])
}

pub fn b_matrix_identities(lambda: &BigRational, mu: &BigRational) -> Result<BMatrixReport> {
    check_lame(lambda, mu)?;
    let b = b_matrix(lambda, mu);
    let bb = b.conj();
    let (a_, b_) = ab(lambda, mu);
    let amb = GR::real(&a_ - &b_);
    let apb = GR::real(&a_ + &b_);
    let b_bt = &b * &b.transpose();
    let bbar = &bb * &bb.transpose();
    let mixed = &(&b * &bb.transpose()) + &(&bb * &b.transpose());
    let four_ab = {
        let m = GRMatrix::from_rows(vec![vec![amb.clone(), apb.clone()], vec![apb.clone(), amb.clone()]]);
        m.det() == GR::real(-(BigRational::from_integer(4.into()) * &a_ * &b_))
    };
    Ok(BMatrixReport {
        a: a_.to_string(),
        b: b_.to_string(),
        b_bt_closed_form: b_bt == sigma(1).scale(&amb),
        bbar_bbart_closed_form: bbar == sigma(-1).scale(&amb),
        mixed_sum_scalar: mixed == GRMatrix::identity(2).scale(&(&apb + &apb)),
        a_minus_b_factorisation: &a_ - &b_ == (lambda + mu) * (lambda + mu + mu + mu),
        minus_four_ab: four_ab,
        b_bt,
    })
}

/// The squared symbol written as Λ₁Λ₂ Σ Λ₁^p Λ₂^{2−p} C_p, with
/// `C₂ = ¼BBᵀ`, `C₁ = ¼(BB̄ᵀ + B̄Bᵀ)`, `C₀ = ¼B̄B̄ᵀ`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaForm {
    /// `(power of Λ₁, power of Λ₂, coefficient)` for each term of the full
    /// quartic, i.e. the outer Λ₁Λ₂ is already folded in.
    pub terms: Vec<(u32, u32, GRMatrix)>,
}

impl LambdaForm {
    /// Built from the B matrix of actual Lamé parameters.
    pub fn from_lame(lambda: &BigRational, mu: &BigRational) -> Self {
        let b = b_matrix(lambda, mu);
        let bb = b.conj();
        let quarter = GR::frac(1, 4);
        let c2 = (&b * &b.transpose()).scale(&quarter);
        let c1 = (&(&b * &bb.transpose()) + &(&bb * &b.transpose())).scale(&quarter);
        let c0 = (&bb * &bb.transpose()).scale(&quarter);
        Self { terms: vec![(3, 1, c2), (2, 2, c1), (1, 3, c0)] }
    }

    /// Built from (a, b) alone through the closed-form B products. Accepts
    /// values no Lamé pair produces, which is what degeneracy probes need.
    pub fn from_ab(a: &BigRational, b: &BigRational) -> Self {
        let amb = GR::real(a - b);
        let apb = GR::real(a + b);
        let quarter = GR::frac(1, 4);
        let c2 = sigma(1).scale(&(&amb * &quarter));
        let c1 = GRMatrix::identity(2).scale(&(&apb * &GR::frac(1, 2)));
        let c0 = sigma(-1).scale(&(&amb * &quarter));
        Self { terms: vec![(3, 1, c2), (2, 2, c1), (1, 3, c0)] }
    }

    pub fn eval(&self, l1: &GR, l2: &GR) -> GRMatrix {
        let mut out = GRMatrix::zeros(2, 2);
        for (p1, p2, c) in &self.terms {
            out = &out + &c.scale(&(&l1.pow(*p1) * &l2.pow(*p2)));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorisationReport {
    pub laplacian_symbol: bool,
    pub tau_symbols: bool,
    pub p1_p2_form: bool,
    pub lambda_form: bool,
    pub lambda_form_from_ab: bool,
}

impl FactorisationReport {
    pub fn all(&self) -> bool {
        self.laplacian_symbol && self.tau_symbols && self.p1_p2_form && self.lambda_form && self.lambda_form_from_ab
    }
}

/// Compares `L·L` with `|η|² P₁(η) P₂(η)` and with the Λ-form.
pub fn lsq_factorization_check(pt: &SymbolPoint) -> FactorisationReport {
    let s = lame_symbol(pt);
    let l2 = &s.l * &s.l;
    let (lam1, lam2) = pt.lambdas();
    let b = b_matrix(&pt.lambda, &pt.mu);
    let bb = b.conj();
    let half = GR::frac(1, 2);
    let p1 = (&b.scale(&lam1) + &bb.scale(&lam2)).scale(&half);
    let p2 = (&b.transpose().scale(&lam1) + &bb.transpose().scale(&lam2)).scale(&half);
    let eta_sq = pt.eta_sq();
    let (e1, e2) = (GR::real(pt.eta.0.clone()), GR::real(pt.eta.1.clone()));
    let (a_, b_) = ab(&pt.lambda, &pt.mu);
    FactorisationReport {
        laplacian_symbol: &lam1 * &lam2 == eta_sq,
        tau_symbols: &(&lam1 + &lam2) * &half == e1
            && &(&GR::i() * &half) * &(&lam1 - &lam2) == e2,
        p1_p2_form: (&p1 * &p2).scale(&eta_sq) == l2,
        lambda_form: LambdaForm::from_lame(&pt.lambda, &pt.mu).eval(&lam1, &lam2) == l2,
        lambda_form_from_ab: LambdaForm::from_ab(&a_, &b_).eval(&lam1, &lam2) == l2,
    }
}

/// Random Gaussian rational with parts drawn by [`random_rational`].
pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> GR {
    GR::new(random_rational(rng, num, den), random_rational(rng, num, den))
}

/// Random invertible 2×2 `A` with random columns `U`, `V`.
pub fn random_rank_one_instance<R: Rng + ?Sized>(rng: &mut R) -> (GRMatrix, GRMatrix, GRMatrix) {
    let g = |rng: &mut R| random_gaussian(rng, 12, 7);
    let a = loop {
        let a = GRMatrix::from_rows(vec![vec![g(rng), g(rng)], vec![g(rng), g(rng)]]);
        if !a.det().is_zero() {
            break a;
        }
    };
    let u = GRMatrix::column(vec![g(rng), g(rng)]);
    let v = GRMatrix::column(vec![g(rng), g(rng)]);
    (a, u, v)
}

/// Outcome of the randomised exact-identity suite.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSuite {
    pub rank_one_instances: usize,
    pub rank_one_failures: usize,
    pub symbol_points: usize,
    pub symbol_failures: usize,
    pub factorisation_failures: usize,
    /// The B-matrix identities at the fixed pair, then at each random pair.
    pub b_matrix: BMatrixReport,
    pub b_matrix_failures: usize,
    pub pass: bool,
}

/// Runs the rank-one determinant identity on `rank_one` random instances and
/// the symbol, B-matrix and factorisation identities on `points` random
/// symbol points. The first symbol point uses the fixed pair `(λ, μ)`.
pub fn algebra_suite<R: Rng + ?Sized>(
    rng: &mut R,
    lambda: &BigRational,
    mu: &BigRational,
    rank_one: usize,
    points: usize,
) -> Result<AlgebraSuite> {
    let b_matrix = b_matrix_identities(lambda, mu)?;
    let mut rank_one_failures = 0;
    for _ in 0..rank_one {
        let (a, u, v) = random_rank_one_instance(rng);
        let (l, r) = det_rank_one_update(&a, &u, &v)?;
        rank_one_failures += usize::from(l != r);
    }
    let (mut symbol_failures, mut factorisation_failures, mut b_matrix_failures) = (0, 0, 0);
    for i in 0..points {
        let mut pt = SymbolPoint::random(rng);
        if i == 0 {
            pt = SymbolPoint::new(lambda.clone(), mu.clone(), pt.eta)?;
        }
        symbol_failures += usize::from(!check_lame_symbol(&pt).all());
        factorisation_failures += usize::from(!lsq_factorization_check(&pt).all());
        b_matrix_failures += usize::from(!b_matrix_identities(&pt.lambda, &pt.mu)?.all());
    }
    let pass = b_matrix.all()
        && rank_one_failures == 0
        && symbol_failures == 0
        && factorisation_failures == 0
        && b_matrix_failures == 0;
    Ok(AlgebraSuite {
        rank_one_instances: rank_one,
        rank_one_failures,
        symbol_points: points,
        symbol_failures,
        factorisation_failures,
        b_matrix,
        b_matrix_failures,
        pass,
    })
}
