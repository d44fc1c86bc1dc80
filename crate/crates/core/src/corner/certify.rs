use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::rows::{boundary_rows, pde_rows, JetSystem, Provenance};
use crate::lame::{ab, check_lame};
use crate::{Error, Result};

/// Exact rank of the stacked system at one order.
#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub order: usize,
    pub unknowns: usize,
    pub boundary_rows: usize,
    pub pde_rows: usize,
    pub rank: usize,
    pub full_rank: bool,
    pub pivot_trace_sha256: String,
    pub provenance: Vec<Provenance>,
}

fn admissible(a: &BigRational, b: &BigRational) -> Result<()> {
    if !a.is_positive() || !b.is_positive() || a == b {
        return Err(Error::Precondition(format!(
            "inadmissible (a, b) = ({a}, {b}): need a > 0, b > 0 and a != b"
        )));
    }
    Ok(())
}

fn rank_of(n: usize, sys: JetSystem, boundary: usize) -> OrderReport {
    let rep = sys.matrix.rank_report();
    OrderReport {
        order: n,
        unknowns: sys.unknowns(),
        boundary_rows: boundary,
        pde_rows: sys.matrix.rows() - boundary,
        rank: rep.rank,
        full_rank: rep.full_column_rank(),
        pivot_trace_sha256: rep.trace_hash,
        provenance: sys.provenance,
    }
}

/// Rank of boundary plus PDE rows at order `n` for admissible `(a, b)`.
pub fn certify_order(n: usize, a: &BigRational, b: &BigRational) -> Result<OrderReport> {
    admissible(a, b)?;
    Ok(probe_order(n, a, b))
}

/// Same as [`certify_order`] without the admissibility guard. Only meant for
/// degeneracy probes such as `a = −b` or `b = 0`.
pub fn probe_order(n: usize, a: &BigRational, b: &BigRational) -> OrderReport {
    let bnd = boundary_rows(n);
    let nb = bnd.matrix.rows();
    rank_of(n, bnd.stack(pde_rows(n, a, b)), nb)
}

/// One link of the chain `∇ⁿw(O) = 0 ⇒ ∇ⁿ⁻²u₀(O) = 0 ⇒ ∇ⁿ⁻²ℒu₀(O) = 0 ⇒
/// ∇ⁿ⁻²ℒ²w(O) = 0`, which licenses the PDE rows at order `n + 2`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub n: usize,
    pub statements: Vec<String>,
    pub licenses_pde_order: usize,
}

fn grad(k: usize, what: &str) -> String {
    match k {
        0 => format!("{what}(O) = 0"),
        1 => format!("∇{what}(O) = 0"),
        _ => format!("∇^{k} {what}(O) = 0"),
    }
}

/// Needs full-rank certificates through order `n`, i.e.
/// `certified_through ≥ n`. The middle step uses `∇^{n−2}ℒw ⊂ span{∇ⁿw}`.
pub fn chain_u0_and_l2(n: usize, certified_through: Option<usize>) -> Result<ChainStep> {
    if n < 2 {
        return Err(Error::Precondition("the chain starts at order 2".into()));
    }
    match certified_through {
        Some(c) if c >= n => {}
        _ => {
            return Err(Error::Precondition(format!(
                "chain at order {n} needs certificates through order {n}"
            )))
        }
    }
    Ok(ChainStep {
        n,
        statements: vec![
            grad(n, "w"),
            grad(n - 2, "u₀"),
            grad(n - 2, "ℒu₀"),
            grad(n - 2, "ℒ²w"),
        ],
        licenses_pde_order: n + 2,
    })
}

/// Proof log for one parameter pair.
#[derive(Clone, Debug, Serialize)]
pub struct InductionCertificate {
    pub max_order: usize,
    pub lambda: String,
    pub mu: String,
    pub a: String,
    pub b: String,
    pub orders: Vec<OrderReport>,
    pub chain: Vec<ChainStep>,
    /// Facts that are used but not computed.
    pub assumptions: Vec<String>,
    pub pass: bool,
}

/// Runs orders `0..=max_order` serially: order `n ≥ 4` uses PDE rows only
/// after the chain link at `n − 2` is on record.
pub fn certify(lambda: &BigRational, mu: &BigRational, max_order: usize) -> Result<InductionCertificate> {
    check_lame(lambda, mu)?;
    let (a, b) = ab(lambda, mu);
    admissible(&a, &b)?;
    let mut orders = Vec::with_capacity(max_order + 1);
    let mut chain: Vec<ChainStep> = Vec::new();
    for n in 0..=max_order {
        if n >= 4 && !chain.iter().any(|c| c.licenses_pde_order == n) {
            return Err(Error::Precondition(format!("no chain link licenses PDE rows at order {n}")));
        }
        let rep = certify_order(n, &a, &b)?;
        let ok = rep.full_rank;
        orders.push(rep);
        if !ok {
            break;
        }
        if n >= 2 {
            chain.push(chain_u0_and_l2(n, Some(n))?);
        }
    }
    let pass = orders.len() == max_order + 1 && orders.iter().all(|o| o.full_rank);
    Ok(InductionCertificate {
        max_order,
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        a: a.to_string(),
        b: b.to_string(),
        orders,
        chain,
        assumptions: vec![
            "all jets vanishing at O implies w ≡ 0 near O by analyticity (not computed)".into(),
            "w = Tw = 0 on both legs implies ∂_ν w = 0 there (vanishing-line traction identity)".into(),
        ],
        pass,
    })
}

/// Guard facts that hold for every admissible pair, checked on the pair.
pub fn global_guards(a: &BigRational, b: &BigRational) -> bool {
    let four_ab = BigRational::from_integer(4.into()) * a * b;
    let det = (a - b) * (a - b) - (a + b) * (a + b);
    det == -four_ab && !det.is_zero()
}
