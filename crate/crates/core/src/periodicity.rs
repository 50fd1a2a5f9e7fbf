//! Congruence obstructions to p-periodicity. A p-periodic diagram satisfies
//! Y ≡ bar(Y) mod (p, A^2p − 1) and Y ≡ Y_quotient^p mod (p, d^(p−1) − 1);
//! a failed congruence proves the diagram cannot be p-periodic. An abstract
//! symmetry screen on the strand multigraph supplies a third, purely
//! combinatorial obstruction.

use alloc::vec::Vec;

use crate::diagram::{abstract_screen, strand_multigraph, Diagram};
use crate::ring::{
    pth_power_solve, reduce_mod, CongruenceIdeal, IdealKind, QuotientRing, Residue, Scalar,
};
use crate::Result;

/// Outcome of one obstruction test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestOutcome {
    /// The congruence (or screen) holds: no obstruction from this test.
    Pass,
    /// Violated: the diagram cannot be p-periodic.
    Fail,
    /// The test carries no information (rotational quotient at p = 2 is the
    /// zero ring).
    Vacuous,
    /// Not run (no quotient diagram supplied).
    Skipped,
    /// Not decided (no strand graph available, or over the search budget).
    Inconclusive,
}

impl core::fmt::Display for TestOutcome {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            TestOutcome::Pass => "pass",
            TestOutcome::Fail => "fail",
            TestOutcome::Vacuous => "vacuous",
            TestOutcome::Skipped => "skipped",
            TestOutcome::Inconclusive => "inconclusive",
        })
    }
}

/// Final verdict: a single failed test is a proof of non-periodicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Proven not p-periodic, with the names of the failed tests.
    NotPeriodic(Vec<&'static str>),
    /// Every applicable test passed; periodicity remains possible.
    NoObstruction,
}

/// All obstruction results for one (diagram, p) query.
#[derive(Debug, Clone)]
pub struct PeriodReport {
    /// The period tested.
    pub p: u32,
    /// Self-conjugacy in the rotational quotient.
    pub cond2: TestOutcome,
    /// Agreement with the p-th power of the quotient invariant.
    pub cond1: TestOutcome,
    /// Membership in the image of the Frobenius (no quotient needed).
    pub pth_power: TestOutcome,
    /// Free-symmetry screen of the strand multigraph.
    pub screen: TestOutcome,
    /// The invariant reduced in the rotational quotient (None in the
    /// zero ring at p = 2).
    pub residue: Option<Residue>,
    /// NotPeriodic iff at least one test failed.
    pub verdict: Verdict,
}

/// cond2: Y ≡ bar(Y) mod (p, A^2p − 1). Vacuous at p = 2.
pub fn test_condition2(y: &Scalar, p: u32) -> Result<TestOutcome> {
    let ideal = CongruenceIdeal { p, kind: IdealKind::Rotational };
    let ring = QuotientRing::new(ideal)?;
    if ring.is_zero_ring() {
        return Ok(TestOutcome::Vacuous);
    }
    let diff = y - &y.bar();
    Ok(if ring.reduce_scalar(&diff).iter().all(|&c| c == 0) {
        TestOutcome::Pass
    } else {
        TestOutcome::Fail
    })
}

/// cond1: Y ≡ Y_quotient^p mod (p, d^(p−1) − 1). The quotient diagram is
/// trusted; the covering itself is not verified.
pub fn test_condition1(y: &Scalar, yq: &Scalar, p: u32) -> Result<TestOutcome> {
    let ideal = CongruenceIdeal { p, kind: IdealKind::Frobenius };
    let ring = QuotientRing::new(ideal)?;
    let r = ring.reduce_scalar(y);
    let rq = ring.reduce_scalar(yq);
    Ok(if ring.pow(&rq, p) == r { TestOutcome::Pass } else { TestOutcome::Fail })
}

/// Quotient-free relaxation of cond1: Y must be a p-th power in the
/// Frobenius quotient. cond1 passing forces this to pass.
pub fn test_pth_power(y: &Scalar, p: u32) -> Result<TestOutcome> {
    let r = reduce_mod(y, CongruenceIdeal { p, kind: IdealKind::Frobenius })?;
    Ok(if pth_power_solve(&r)?.is_some() { TestOutcome::Pass } else { TestOutcome::Fail })
}

fn assemble(
    v: &Scalar,
    vq: Option<&Scalar>,
    p: u32,
    screen: TestOutcome,
    with_pth_power: bool,
) -> Result<PeriodReport> {
    let cond2 = test_condition2(v, p)?;
    let cond1 = match vq {
        Some(q) => test_condition1(v, q, p)?,
        None => TestOutcome::Skipped,
    };
    let pth_power =
        if with_pth_power { test_pth_power(v, p)? } else { TestOutcome::Skipped };
    let rot = QuotientRing::new(CongruenceIdeal { p, kind: IdealKind::Rotational })?;
    let residue = if rot.is_zero_ring() {
        None
    } else {
        Some(reduce_mod(v, CongruenceIdeal { p, kind: IdealKind::Rotational })?)
    };
    let mut reasons = Vec::new();
    for (name, out) in [
        ("cond2", cond2),
        ("cond1", cond1),
        ("pth-power", pth_power),
        ("screen", screen),
    ] {
        if out == TestOutcome::Fail {
            reasons.push(name);
        }
    }
    let verdict =
        if reasons.is_empty() { Verdict::NoObstruction } else { Verdict::NotPeriodic(reasons) };
    Ok(PeriodReport { p, cond2, cond1, pth_power, screen, residue, verdict })
}

/// Complete-search budget for the symmetry screen, in strand-graph vertices.
const SCREEN_NV_BUDGET: usize = 40;

/// Run every obstruction against a spatial-graph diagram. Annular input is
/// evaluated in the sphere (the axis is forgotten); the optional quotient
/// diagram is trusted to be the actual p-quotient.
pub fn full_report(d: &Diagram, p: u32, quotient: Option<&Diagram>) -> Result<PeriodReport> {
    full_report_opts(d, p, quotient, true)
}

/// As [`full_report`], but the p-th-power membership test (which needs no
/// quotient but costs a coefficient search) only runs when requested.
pub fn full_report_opts(
    d: &Diagram,
    p: u32,
    quotient: Option<&Diagram>,
    with_pth_power: bool,
) -> Result<PeriodReport> {
    let amb = d.forget_annulus();
    let y = crate::yamada::yamada(&amb)?;
    let yq = match quotient {
        Some(q) => Some(crate::yamada::yamada(&q.forget_annulus())?),
        None => None,
    };
    let g = strand_multigraph(&amb)?;
    let screen = if g.nv > SCREEN_NV_BUDGET {
        TestOutcome::Inconclusive
    } else if abstract_screen(&g, p) {
        TestOutcome::Pass
    } else {
        TestOutcome::Fail
    };
    assemble(&y, yq.as_ref(), p, screen, with_pth_power)
}

/// The link variant: the same congruences applied to a Kauffman bracket
/// value (and its quotient's, when known). No strand graph is supplied, so
/// the screen is inconclusive.
pub fn test_link_period(b: &Scalar, bq: Option<&Scalar>, p: u32) -> Result<PeriodReport> {
    assemble(b, bq, p, TestOutcome::Inconclusive, true)
}
