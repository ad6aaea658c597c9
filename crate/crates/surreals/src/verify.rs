//! Differential verification drivers.
//!
//! Every construction in this crate that has two independent routes to the
//! same value is checked here by running both routes and comparing:
//!
//! - [`genetic_add`] / [`genetic_mul`] compute sums and products purely
//!   through their defining option cuts and are compared against exact dyadic
//!   arithmetic over the finite-birthday universe from [`brute_surreals`];
//! - [`check_omega_recursive`] and [`check_kappa_recursive`] witness-check
//!   the closed ω-map and κ-map sign sequences against their defining cuts;
//! - [`check_h_iota`] and [`check_log_chain`] compare closed exponent-map
//!   formulas with the generic recursive evaluator;
//! - [`check_minimality`] probes that designated representatives are the
//!   simplest members of their equivalence classes, at explicit bounds;
//! - [`run_suite`] / [`run_all`] package everything into one-line-per-instance
//!   reports ([`SuiteReport`]) for tests and the command-line `verify` verb.
//!
//! Verdicts are three-valued. A `FAIL` is a genuine disagreement between two
//! routes and should break a build. Checks that sample infinite option sets
//! report `UNRESOLVED` at their bound rather than guessing; the bound is
//! recorded in the report line.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cuts::{
    canonical_options, canonical_options_sampled, check_cut_witness, simplest_between, CheckStatus,
    CutSpec, Generator, ProbeEntry, Verdict, WitnessReport,
};
use crate::dyadic::Dyadic;
use crate::explog::{
    h_closed, sigma_monomial_decode, Evaluator, ExpCmp, MonomialProduct, PurelyInfinite,
};
use crate::kappa::{
    class_membership, decode_kappa_index, epsilon_map, iota, kappa_iter, kappa_recognize,
    kappa_signseq, SurrealClass,
};
use crate::normalform::{arch_equiv, comp_equiv, nf_to_signseq, omega_pow, NormalForm, Surreal};
use crate::ordinal::Ordinal;
use crate::signseq::{Sign, SignSeq};
use crate::{Error, Result};

// ===== finite-birthday universe =====

/// All sign sequences of length at most `birthday`, in increasing value order.
///
/// There are exactly `2^(birthday+1) - 1` of them: the empty sequence plus two
/// extensions (one per sign) of every sequence of the previous generation.
/// These are precisely the surreal numbers born by day `birthday`, i.e. the
/// dyadic rationals of that birthday, and they form the test universe for the
/// genetic-arithmetic suites.
pub fn brute_surreals(birthday: u64) -> Vec<SignSeq> {
    let mut all = vec![SignSeq::empty()];
    let mut frontier = vec![SignSeq::empty()];
    for _ in 0..birthday {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for s in &frontier {
            for sign in [Sign::Minus, Sign::Plus] {
                let mut t = s.clone();
                t.push(sign, Ordinal::one());
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    all
}

// ===== genetic arithmetic =====

/// Memoized state for genetic (cut-recursive) arithmetic.
///
/// Holds memo tables for addition, multiplication and the ω-map keyed by the
/// operand sign sequences, plus a recursion-depth bound and a cap on how many
/// canonical options per side a single recursion step may consume.
/// Memoization is a pure cache: it never changes any result, only the cost of
/// reaching it (a property the test suite checks by comparing fresh and shared
/// contexts).
#[derive(Debug, Clone)]
pub struct GeneticContext {
    add_memo: HashMap<(SignSeq, SignSeq), SignSeq>,
    mul_memo: HashMap<(SignSeq, SignSeq), SignSeq>,
    omega_memo: HashMap<SignSeq, SignSeq>,
    depth: u64,
    sample_bound: u64,
}

impl Default for GeneticContext {
    fn default() -> Self {
        GeneticContext::new(512, 64)
    }
}

impl GeneticContext {
    /// A context allowing `depth` nested cut recursions and at most
    /// `sample_bound` canonical options per side of any one cut.
    pub fn new(depth: u64, sample_bound: u64) -> Self {
        GeneticContext {
            add_memo: HashMap::new(),
            mul_memo: HashMap::new(),
            omega_memo: HashMap::new(),
            depth,
            sample_bound,
        }
    }

    /// Canonical options of `x`, refusing option sets wider than the bound.
    fn options(&self, x: &SignSeq) -> Result<(Vec<SignSeq>, Vec<SignSeq>)> {
        let (l, r) = canonical_options(x)?;
        if l.len() as u64 > self.sample_bound || r.len() as u64 > self.sample_bound {
            return Err(Error::DepthExceeded(format!(
                "option set of {x} exceeds the sampling bound {}",
                self.sample_bound
            )));
        }
        Ok((l, r))
    }

    /// Genetic sum `x + y`, by the cut
    /// `⟨ xᴸ+y, x+yᴸ | xᴿ+y, x+yᴿ ⟩` with no arithmetic shortcuts.
    ///
    /// # Errors
    /// [`Error::DepthExceeded`] when the recursion outruns the context's depth
    /// bound; [`Error::Domain`] for transfinite operands (their option sets
    /// are infinite).
    pub fn add(&mut self, x: &SignSeq, y: &SignSeq) -> Result<SignSeq> {
        let depth = self.depth;
        self.add_at(x, y, depth)
    }

    fn add_at(&mut self, x: &SignSeq, y: &SignSeq, depth: u64) -> Result<SignSeq> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.add_memo.get(&key) {
            return Ok(v.clone());
        }
        if depth == 0 {
            return Err(Error::DepthExceeded(format!("genetic addition {x} + {y}")));
        }
        let (xl, xr) = self.options(x)?;
        let (yl, yr) = self.options(y)?;
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for xo in &xl {
            lefts.push(self.add_at(xo, y, depth - 1)?);
        }
        for yo in &yl {
            lefts.push(self.add_at(x, yo, depth - 1)?);
        }
        for xo in &xr {
            rights.push(self.add_at(xo, y, depth - 1)?);
        }
        for yo in &yr {
            rights.push(self.add_at(x, yo, depth - 1)?);
        }
        let v = simplest_between(&lefts, &rights)?;
        self.add_memo.insert(key, v.clone());
        self.add_memo.insert((y.clone(), x.clone()), v.clone());
        Ok(v)
    }

    /// Genetic product `x·y`, by the cut whose options are
    /// `x'·y + x·y' − x'·y'` over option pairs `(x', y')` taken from the same
    /// side (left options of the product) or opposite sides (right options).
    ///
    /// The three products in each option are computed genetically; the final
    /// combination is exact dyadic arithmetic.
    ///
    /// # Errors
    /// As for [`GeneticContext::add`].
    pub fn mul(&mut self, x: &SignSeq, y: &SignSeq) -> Result<SignSeq> {
        let depth = self.depth;
        self.mul_at(x, y, depth)
    }

    fn mul_at(&mut self, x: &SignSeq, y: &SignSeq, depth: u64) -> Result<SignSeq> {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.mul_memo.get(&key) {
            return Ok(v.clone());
        }
        if depth == 0 {
            return Err(Error::DepthExceeded(format!(
                "genetic multiplication {x} * {y}"
            )));
        }
        let (xl, xr) = self.options(x)?;
        let (yl, yr) = self.options(y)?;
        let mut lefts = Vec::new();
        let mut rights = Vec::new();
        for (xs, ys) in [(&xl, &yl), (&xr, &yr)] {
            for xo in xs.iter() {
                for yo in ys.iter() {
                    lefts.push(self.mul_option(x, y, xo, yo, depth)?);
                }
            }
        }
        for (xs, ys) in [(&xl, &yr), (&xr, &yl)] {
            for xo in xs.iter() {
                for yo in ys.iter() {
                    rights.push(self.mul_option(x, y, xo, yo, depth)?);
                }
            }
        }
        let v = simplest_between(&lefts, &rights)?;
        self.mul_memo.insert(key, v.clone());
        self.mul_memo.insert((y.clone(), x.clone()), v.clone());
        Ok(v)
    }

    /// One product option `x'·y + x·y' − x'·y'`.
    fn mul_option(
        &mut self,
        x: &SignSeq,
        y: &SignSeq,
        xo: &SignSeq,
        yo: &SignSeq,
        depth: u64,
    ) -> Result<SignSeq> {
        let a = self.mul_at(xo, y, depth - 1)?.to_dyadic()?;
        let b = self.mul_at(x, yo, depth - 1)?.to_dyadic()?;
        let c = self.mul_at(xo, yo, depth - 1)?.to_dyadic()?;
        Ok(SignSeq::from_dyadic(&(a + b - c)))
    }

    /// Memoized closed ω-map: the sign sequence of `ω^a`.
    ///
    /// # Errors
    /// Propagates rendering errors from the normal-form layer.
    pub fn omega(&mut self, a: &SignSeq) -> Result<SignSeq> {
        if let Some(v) = self.omega_memo.get(a) {
            return Ok(v.clone());
        }
        let v = nf_to_signseq(&omega_pow(&Surreal::Seq(a.clone())))?;
        self.omega_memo.insert(a.clone(), v.clone());
        Ok(v)
    }
}

/// Genetic sum with a fresh default context; see [`GeneticContext::add`].
///
/// # Errors
/// As for [`GeneticContext::add`].
pub fn genetic_add(x: &SignSeq, y: &SignSeq) -> Result<SignSeq> {
    GeneticContext::default().add(x, y)
}

/// Genetic product with a fresh default context; see [`GeneticContext::mul`].
///
/// # Errors
/// As for [`GeneticContext::mul`].
pub fn genetic_mul(x: &SignSeq, y: &SignSeq) -> Result<SignSeq> {
    GeneticContext::default().mul(x, y)
}

// ===== cut-witness checks for the ω- and κ-maps =====

/// Exact options for finitely long values, sampled options otherwise.
fn options_within(x: &SignSeq, bound: u64) -> (Vec<SignSeq>, Vec<SignSeq>) {
    match canonical_options(x) {
        Ok(pair) => pair,
        Err(_) => canonical_options_sampled(x, bound),
    }
}

/// Witness-check the closed sign sequence of `ω^a` against its defining cut
/// `⟨ 0, n·ω^{a'} | ω^{a''}/2^n ⟩` over left options `a'` and right options
/// `a''` of the exponent.
///
/// The candidate is the closed rendering; each exponent option contributes a
/// one-parameter generator family, and [`check_cut_witness`] samples the
/// families up to `bound` and probes the candidate's truncations.
///
/// # Errors
/// Propagates rendering failures for the candidate itself; generator members
/// that fail to render are skipped (they simply do not constrain the cut).
pub fn check_omega_recursive(a: &SignSeq, bound: u64) -> Result<WitnessReport> {
    let candidate = nf_to_signseq(&omega_pow(&Surreal::Seq(a.clone())))?;
    let (al, ar) = options_within(a, bound);
    let mut lefts = vec![Generator::concrete(SignSeq::empty())];
    for o in al {
        let label = format!("n*w^({o})");
        let exp = o.clone();
        lefts.push(Generator::family(label, move |n| {
            let coeff = BigRational::from_integer(BigInt::from(n));
            nf_to_signseq(&NormalForm::monomial(Surreal::Seq(exp.clone()), coeff)).ok()
        }));
    }
    let mut rights = Vec::new();
    for o in ar {
        let label = format!("w^({o})/2^n");
        let exp = o.clone();
        rights.push(Generator::family(label, move |n| {
            let coeff = BigRational::new(BigInt::one(), BigInt::one() << n as usize);
            nf_to_signseq(&NormalForm::monomial(Surreal::Seq(exp.clone()), coeff)).ok()
        }));
    }
    // Families are sampled to twice the probe order: a truncation probe at
    // depth k inside the candidate's final run is typically excluded by the
    // family member of index k + 1, so equal bounds would always leave the
    // deepest probe unexcluded.
    Ok(check_cut_witness(
        &candidate,
        &CutSpec::new(lefts, rights),
        2 * bound,
        bound,
    ))
}

/// Witness-check the closed sign sequence of `κ_a` against its defining cut
/// `⟨ n, exp^n(κ_{a'}) | log^n(κ_{a''}) ⟩` over left options `a'` and right
/// options `a''` of the index.
///
/// exp- and log-iterates of recognized κ-values are themselves κ-iterates
/// (`κ_{a,n∓1}`), so the generator families stay in closed form.
pub fn check_kappa_recursive(a: &SignSeq, bound: u64) -> WitnessReport {
    let candidate = kappa_signseq(a, 0);
    let (al, ar) = options_within(a, bound);
    let mut lefts = vec![Generator::family("n".to_string(), |n| {
        i64::try_from(n)
            .ok()
            .map(|k| SignSeq::from_dyadic(&Dyadic::integer(k)))
    })];
    for o in al {
        let label = format!("exp^n(kappa({o}))");
        let idx = o.clone();
        lefts.push(Generator::family(label, move |n| {
            i64::try_from(n).ok().map(|k| kappa_signseq(&idx, -k))
        }));
    }
    let mut rights = Vec::new();
    for o in ar {
        let label = format!("log^n(kappa({o}))");
        let idx = o.clone();
        rights.push(Generator::family(label, move |n| {
            i64::try_from(n).ok().map(|k| kappa_signseq(&idx, k))
        }));
    }
    // Sampled to twice the probe order for the same reason as the ω-map
    // witness: exclusion of the deepest probes can need one family index
    // beyond the probe depth.
    check_cut_witness(&candidate, &CutSpec::new(lefts, rights), 2 * bound, bound)
}

// ===== minimality =====

/// Equivalence relations for which class-minimality of a representative can
/// be probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum EquivRelation {
    /// Archimedean equivalence: same leading ω-exponent.
    Arch,
    /// Comparability-class equivalence: bounded by powers of each other.
    Comp,
    /// exp/log equivalence: separated by no more than finitely many exp's.
    Exp,
}

impl fmt::Display for EquivRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivRelation::Arch => "ARCH",
            EquivRelation::Comp => "COMP",
            EquivRelation::Exp => "EXP",
        })
    }
}

/// Outcome of a [`check_minimality`] run: one probe entry per truncation of
/// the candidate, plus an aggregate verdict.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinimalityReport {
    /// The candidate representative, rendered.
    pub value: String,
    /// The equivalence relation probed.
    pub relation: EquivRelation,
    /// Iteration bound used for relation tests (e.g. exp/log ladder height).
    pub bound: u64,
    /// Truncation order: probes are the candidate's truncations up to this.
    pub probe_order: u64,
    /// One entry per proper truncation; `excluded_by` records the evidence
    /// that the truncation is *not* equivalent to the candidate.
    pub probes: Vec<ProbeEntry>,
    /// Aggregate verdict over all probes.
    pub verdict: Verdict,
}

impl MinimalityReport {
    /// True when every truncation was shown inequivalent to the candidate.
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "minimality of {} under {} (bound {}, probe order {}): {}",
            self.value, self.relation, self.bound, self.probe_order, self.verdict
        )?;
        for p in &self.probes {
            match &p.excluded_by {
                Some(ev) => writeln!(f, "  probe {}: {} ({ev})", p.probe, p.status)?,
                None => writeln!(f, "  probe {}: {}", p.probe, p.status)?,
            }
        }
        Ok(())
    }
}

/// For a recognized tower value `x = ω^{ω^b}` with `b` a κ-index sequence
/// `(a, n)`, the pair `(log^k, exp^k)` of its `k`-fold iterates, i.e.
/// `(κ_{a,n+k}, κ_{a,n−k})`.
fn kappa_ladder(x: &SignSeq, k: i64) -> Option<(SignSeq, SignSeq)> {
    let e1 = sigma_monomial_decode(x)?;
    let b = sigma_monomial_decode(&e1)?;
    let (a, n) = decode_kappa_index(&b)?;
    let lo = kappa_signseq(&a, n.checked_add(k)?);
    let hi = kappa_signseq(&a, n.checked_sub(k)?);
    Some((lo, hi))
}

/// Probe that `x` is the simplest member of its `relation`-class: every
/// proper truncation of `x` (up to `probe_order`) must be *inequivalent*
/// to `x`.
///
/// For [`EquivRelation::Exp`]: when `x` is a recognized κ-iterate, a probe is
/// excluded by lying below the `bound`-fold log-iterate or above the
/// `bound`-fold exp-iterate of `x` (either gap needs more than `bound` exp's
/// to bridge, and iterates of κ-values never cross a κ-value of higher
/// index); probes caught between the ladder rungs are genuinely equivalent
/// and fail. For unrecognized values the probe falls back to a bounded
/// exp-comparison of the logarithms' scales.
pub fn check_minimality(
    x: &SignSeq,
    relation: EquivRelation,
    bound: u64,
    probe_order: u64,
) -> MinimalityReport {
    let ladder = match relation {
        EquivRelation::Exp => i64::try_from(bound).ok().and_then(|k| kappa_ladder(x, k)),
        _ => None,
    };
    let mut probes = Vec::new();
    for t in x.truncation_probes(probe_order) {
        let (status, evidence) = minimality_probe(x, &t, relation, bound, ladder.as_ref());
        probes.push(ProbeEntry {
            probe: t.to_string(),
            status,
            excluded_by: evidence,
        });
    }
    let verdict = if probes.iter().any(|p| p.status == CheckStatus::Fail) {
        Verdict::Fail
    } else if probes.iter().any(|p| p.status == CheckStatus::Unresolved) {
        Verdict::UnresolvedAtBound
    } else {
        Verdict::Pass
    };
    MinimalityReport {
        value: x.to_string(),
        relation,
        bound,
        probe_order,
        probes,
        verdict,
    }
}

fn minimality_probe(
    x: &SignSeq,
    t: &SignSeq,
    relation: EquivRelation,
    bound: u64,
    ladder: Option<&(SignSeq, SignSeq)>,
) -> (CheckStatus, Option<String>) {
    match relation {
        EquivRelation::Arch => match arch_equiv(&Surreal::Seq(t.clone()), &Surreal::Seq(x.clone()))
        {
            Ok(false) => (
                CheckStatus::Pass,
                Some("different leading exponent".to_string()),
            ),
            Ok(true) => (CheckStatus::Fail, Some("same leading exponent".to_string())),
            Err(e) => (CheckStatus::Unresolved, Some(e.to_string())),
        },
        EquivRelation::Comp => {
            if t.is_empty() {
                return (
                    CheckStatus::Pass,
                    Some("zero is in no comparability class".to_string()),
                );
            }
            match comp_equiv(&Surreal::Seq(t.clone()), &Surreal::Seq(x.clone())) {
                Ok(false) => (
                    CheckStatus::Pass,
                    Some("different comparability key".to_string()),
                ),
                Ok(true) => (
                    CheckStatus::Fail,
                    Some("same comparability key".to_string()),
                ),
                Err(e) => (CheckStatus::Unresolved, Some(e.to_string())),
            }
        }
        EquivRelation::Exp => {
            if let Some((lo, hi)) = ladder {
                return if t < lo {
                    (
                        CheckStatus::Pass,
                        Some(format!("below the {bound}-fold log-iterate {lo}")),
                    )
                } else if t > hi {
                    (
                        CheckStatus::Pass,
                        Some(format!("above the {bound}-fold exp-iterate")),
                    )
                } else {
                    (
                        CheckStatus::Fail,
                        Some(format!("within {bound} exp's of the candidate")),
                    )
                };
            }
            if t.first_sign() != Some(Sign::Plus) {
                return (CheckStatus::Pass, Some("not a positive value".to_string()));
            }
            if t.as_ordinal().and_then(|o| o.as_finite()).is_some() && x.len().as_finite().is_none()
            {
                return (
                    CheckStatus::Pass,
                    Some("finite against infinite".to_string()),
                );
            }
            let mut ev = Evaluator::default();
            match ev.exp_cmp(&Surreal::Seq(t.clone()), &Surreal::Seq(x.clone()), bound) {
                Ok(ExpCmp::Ll) => (
                    CheckStatus::Pass,
                    Some("exp-iterates stay below".to_string()),
                ),
                Ok(ExpCmp::Gg) => (
                    CheckStatus::Pass,
                    Some("exp-iterates stay above".to_string()),
                ),
                Ok(ExpCmp::Equiv) => (CheckStatus::Fail, Some(format!("within {bound} exp's"))),
                Ok(ExpCmp::UnknownAtBound) => (
                    CheckStatus::Unresolved,
                    Some(format!("undecided at exp-bound {bound}")),
                ),
                Err(e) => (CheckStatus::Unresolved, Some(e.to_string())),
            }
        }
    }
}

// ===== exponent-map identities =====

/// Compare the closed and the recursive evaluation of `h` on `ι_a` extended
/// by a `sign`-run of length `lambda`.
fn h_tail_outcome(a: &SignSeq, lambda: &Ordinal, sign: Sign) -> (CheckStatus, Option<String>) {
    let mut b = iota(a);
    b.push(sign, lambda.clone());
    let Some(closed) = h_closed(&b) else {
        return (
            CheckStatus::Fail,
            Some(format!("no closed form recognized for {b}")),
        );
    };
    let mut ev = Evaluator::default();
    match ev.h_recursive(&b) {
        Ok(v) if v == closed => (CheckStatus::Pass, None),
        Ok(v) => (
            CheckStatus::Fail,
            Some(format!("h({b}): recursion gives {v}, closed form {closed}")),
        ),
        Err(Error::UnresolvedRecursion(m)) => (CheckStatus::Unresolved, Some(m)),
        Err(e) => (CheckStatus::Fail, Some(format!("h({b}): {e}"))),
    }
}

/// True when the closed formula for `h` on `ι_a` extended by a plus-run and
/// by a minus-run of length `lambda` agrees with the generic recursive
/// evaluator on both.
pub fn check_h_iota(a: &SignSeq, lambda: &Ordinal) -> bool {
    [Sign::Minus, Sign::Plus]
        .into_iter()
        .all(|s| h_tail_outcome(a, lambda, s).0 == CheckStatus::Pass)
}

/// The tower value `ω^{ω^{−μ}}` for an ordinal `μ` (the `μ`-fold log-iterate
/// of `ω` when `μ` is finite).
fn neg_tower(mu: &Ordinal) -> Result<SignSeq> {
    let exponent = SignSeq::from_ordinal(mu).negate();
    let inner = omega_pow(&Surreal::Seq(exponent));
    nf_to_signseq(&omega_pow(&Surreal::Nf(inner)))
}

/// True when `log^n(ω^{ω^{−λ}}) = ω^{ω^{−(λ+n)}}`: applying the recursive
/// `log` evaluator `n` times to the closed tower value for `λ` lands exactly
/// on the closed tower value for `λ + n`.
pub fn check_log_chain(lambda: &Ordinal, n: u64) -> bool {
    let Ok(start) = neg_tower(lambda) else {
        return false;
    };
    let Ok(want) = neg_tower(&(lambda + &Ordinal::finite(n))) else {
        return false;
    };
    let mut ev = Evaluator::default();
    let Ok(got) = ev.log_iter(&Surreal::Seq(start), n) else {
        return false;
    };
    matches!(got.to_signseq(), Ok(v) if v == want)
}

/// True when `exp^n(base) = Ω^{n+1}(seed)`: the `n`-fold recursive
/// exp-iterate of `base` equals the `(n+1)`-fold closed ω-map tower over
/// `seed`.
///
/// The seed is the tower's innermost exponent, not the base: for `base = ω`
/// the seed is `1` (so the identity holds from `n = 0`), while for
/// `base = ε_0` the seed is `ε_0 + 1` (the identity holds from `n = 1`,
/// since `exp(ε_0) = ω^{ω^{ε_0+1}}`).
pub fn check_exp_tower(base: &Surreal, seed: &Surreal, n: u64) -> bool {
    let mut tower = Surreal::Nf(omega_pow(seed));
    for _ in 0..n {
        tower = Surreal::Nf(omega_pow(&tower));
    }
    let mut ev = Evaluator::default();
    let Ok(got) = ev.exp_iter(base, n) else {
        return false;
    };
    match (got.to_signseq(), tower.to_signseq()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

// ===== suite reports =====

/// One verified instance: a suite name, an instance label, a three-valued
/// verdict, the bound it was reached at, and optional detail.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SuiteLine {
    /// Name of the suite this line belongs to.
    pub suite: String,
    /// Human-readable instance label, e.g. `"kappa(-1)"` or `"1/2 + *"`.
    pub instance: String,
    /// Aggregate verdict for the instance.
    pub verdict: Verdict,
    /// Sampling / iteration bound the verdict was reached at.
    pub bound: u64,
    /// Failure or obstruction details, or a cardinality note on success.
    pub detail: Option<String>,
}

impl fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] bound={}",
            self.verdict, self.suite, self.instance, self.bound
        )?;
        if let Some(d) = &self.detail {
            write!(f, " — {d}")?;
        }
        Ok(())
    }
}

/// A collection of [`SuiteLine`]s, printable one line per instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SuiteReport {
    /// All verified instances, in suite order.
    pub lines: Vec<SuiteLine>,
}

impl SuiteReport {
    /// True when no line failed (`UNRESOLVED` lines do not fail a report).
    pub fn passed(&self) -> bool {
        self.fail_count() == 0
    }

    /// Number of `FAIL` lines.
    pub fn fail_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| l.verdict == Verdict::Fail)
            .count()
    }

    /// Number of `UNRESOLVED` lines.
    pub fn unresolved_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| l.verdict == Verdict::UnresolvedAtBound)
            .count()
    }

    /// Append all lines of `other` to this report.
    pub fn merge(&mut self, other: SuiteReport) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        write!(
            f,
            "{} checked, {} failed, {} unresolved",
            self.lines.len(),
            self.fail_count(),
            self.unresolved_count()
        )
    }
}

/// Bounds for the verification suites.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Generator-sampling and ladder bound for witness checks.
    pub bound: u64,
    /// Truncation order for minimality probing.
    pub probes: u64,
    /// Maximum κ-index length: index suites run over all sign sequences of
    /// length at most this.
    pub max_index_len: u64,
    /// Birthday bound for the genetic-arithmetic universe.
    pub birthday: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: 4,
            probes: 3,
            max_index_len: 3,
            birthday: 6,
        }
    }
}

// ===== suite construction =====

type Job = Box<dyn Fn() -> SuiteLine + Send + Sync>;

fn status_verdict(s: CheckStatus) -> Verdict {
    match s {
        CheckStatus::Pass => Verdict::Pass,
        CheckStatus::Fail => Verdict::Fail,
        CheckStatus::Unresolved => Verdict::UnresolvedAtBound,
    }
}

/// Keep the worse of two statuses (with its detail): Fail > Unresolved > Pass.
fn worse(
    a: (CheckStatus, Option<String>),
    b: (CheckStatus, Option<String>),
) -> (CheckStatus, Option<String>) {
    fn rank(s: CheckStatus) -> u8 {
        match s {
            CheckStatus::Pass => 0,
            CheckStatus::Unresolved => 1,
            CheckStatus::Fail => 2,
        }
    }
    if rank(b.0) > rank(a.0) {
        b
    } else {
        a
    }
}

/// A suite line for a single named identity check.
fn anchor(
    instance: &str,
    bound: u64,
    f: impl Fn() -> (CheckStatus, Option<String>) + Send + Sync + 'static,
) -> Job {
    let instance = instance.to_string();
    Box::new(move || {
        let (status, detail) = f();
        SuiteLine {
            suite: "anchors".to_string(),
            instance: instance.clone(),
            verdict: status_verdict(status),
            bound,
            detail,
        }
    })
}

/// Compare a computed sequence against an expected one.
fn seq_outcome(got: Result<SignSeq>, want: &SignSeq) -> (CheckStatus, Option<String>) {
    match got {
        Ok(v) if v == *want => (CheckStatus::Pass, None),
        Ok(v) => (CheckStatus::Fail, Some(format!("got {v}, want {want}"))),
        Err(Error::UnresolvedRecursion(m)) => (CheckStatus::Unresolved, Some(m)),
        Err(e) => (CheckStatus::Fail, Some(e.to_string())),
    }
}

fn bool_outcome(ok: bool) -> (CheckStatus, Option<String>) {
    if ok {
        (CheckStatus::Pass, None)
    } else {
        (CheckStatus::Fail, None)
    }
}

/// Aggregate many sub-checks of one instance into a single line.
fn aggregate_line(
    suite: &str,
    instance: String,
    bound: u64,
    total: usize,
    failures: &[String],
    open: &[String],
) -> SuiteLine {
    fn sample(items: &[String]) -> String {
        let mut s = items.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
        if items.len() > 3 {
            s.push_str("; …");
        }
        s
    }
    let (verdict, detail) = if !failures.is_empty() {
        (
            Verdict::Fail,
            Some(format!(
                "{}/{} failed: {}",
                failures.len(),
                total,
                sample(failures)
            )),
        )
    } else if !open.is_empty() {
        (
            Verdict::UnresolvedAtBound,
            Some(format!(
                "{}/{} unresolved: {}",
                open.len(),
                total,
                sample(open)
            )),
        )
    } else {
        (Verdict::Pass, Some(format!("{total} instances")))
    };
    SuiteLine {
        suite: suite.to_string(),
        instance,
        verdict,
        bound,
        detail,
    }
}

/// Render a witness report as a suite line, quoting betweenness failures and
/// up to three unexcluded truncations.
fn witness_line(suite: &str, instance: String, report: &WitnessReport) -> SuiteLine {
    let detail = match report.verdict {
        Verdict::Pass => None,
        _ => {
            let mut bits: Vec<String> = report
                .betweenness
                .iter()
                .filter(|b| b.status != CheckStatus::Pass)
                .map(|b| {
                    format!(
                        "{} {}: {}",
                        b.side,
                        b.generator,
                        b.detail.clone().unwrap_or_else(|| b.status.to_string())
                    )
                })
                .collect();
            let open: Vec<&ProbeEntry> = report
                .probes
                .iter()
                .filter(|p| p.status == CheckStatus::Unresolved)
                .collect();
            if !open.is_empty() {
                bits.push(format!(
                    "{} unexcluded truncation(s), e.g. {}",
                    open.len(),
                    open.iter()
                        .take(3)
                        .map(|p| p.probe.clone())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            Some(bits.join("; "))
        }
    };
    SuiteLine {
        suite: suite.to_string(),
        instance,
        verdict: report.verdict,
        bound: report.bound,
        detail,
    }
}

/// Render a minimality report as a suite line.
fn minimality_line(suite: &str, instance: String, report: &MinimalityReport) -> SuiteLine {
    let detail = match report.verdict {
        Verdict::Pass => None,
        _ => {
            let bad: Vec<String> = report
                .probes
                .iter()
                .filter(|p| p.status != CheckStatus::Pass)
                .take(3)
                .map(|p| {
                    format!(
                        "probe {}: {} ({})",
                        p.probe,
                        p.status,
                        p.excluded_by.clone().unwrap_or_default()
                    )
                })
                .collect();
            Some(bad.join("; "))
        }
    };
    SuiteLine {
        suite: suite.to_string(),
        instance,
        verdict: report.verdict,
        bound: report.bound,
        detail,
    }
}

fn int_seq(n: i64) -> SignSeq {
    SignSeq::from_dyadic(&Dyadic::integer(n))
}

/// The literal sequence `⊕^ω ⊖^{ω^k}`.
fn plus_omega_minus_pow(k: u64) -> SignSeq {
    let mut s = SignSeq::plus(Ordinal::omega());
    s.push(Sign::Minus, Ordinal::finite(k).omega_pow());
    s
}

fn anchor_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let bound = opts.bound;
    let eps0 = Ordinal::eps(Ordinal::Zero);
    let mut jobs: Vec<Job> = Vec::new();

    // h and g at small arguments.
    jobs.push(anchor("h(0) = w^(-1)", bound, || {
        let mut want = SignSeq::plus(Ordinal::one());
        want.push(Sign::Minus, Ordinal::omega());
        seq_outcome(Evaluator::default().h(&SignSeq::empty()), &want)
    }));
    jobs.push(anchor("h(1) = 1", bound, || {
        seq_outcome(Evaluator::default().h(&int_seq(1)), &int_seq(1))
    }));
    jobs.push(anchor("h(-1) = w^(-2)", bound, || {
        let mut want = SignSeq::plus(Ordinal::one());
        want.push(Sign::Minus, &Ordinal::omega() * &Ordinal::finite(2));
        seq_outcome(Evaluator::default().h(&int_seq(-1)), &want)
    }));
    {
        let eps0 = eps0.clone();
        jobs.push(anchor("g(eps(0)) = eps(0) + 1", bound, move || {
            let mut want = SignSeq::plus(eps0.clone());
            want.push(Sign::Plus, Ordinal::one());
            seq_outcome(Evaluator::default().g(&SignSeq::plus(eps0.clone())), &want)
        }));
    }

    // exp/log at ordinal arguments.
    jobs.push(anchor("exp(w) = w^w", bound, || {
        let want = SignSeq::from_ordinal(&Ordinal::omega().omega_pow());
        let got = Evaluator::default()
            .exp_iter(&Surreal::from_ordinal(&Ordinal::omega()), 1)
            .and_then(|v| v.to_signseq());
        seq_outcome(got, &want)
    }));
    {
        let eps0 = eps0.clone();
        jobs.push(anchor(
            "exp(eps(0)) = w^(w^(eps(0) + 1))",
            bound,
            move || {
                let e1 = &eps0 + &Ordinal::one();
                let want = SignSeq::from_ordinal(&e1.omega_pow().omega_pow());
                let got = Evaluator::default()
                    .exp_iter(&Surreal::from_ordinal(&eps0), 1)
                    .and_then(|v| v.to_signseq());
                seq_outcome(got, &want)
            },
        ));
    }
    jobs.push(anchor("log(w) = w^(w^(-1))", bound, || {
        let want = plus_omega_minus_pow(3);
        let got = Evaluator::default()
            .log_iter(&Surreal::from_ordinal(&Ordinal::omega()), 1)
            .and_then(|v| v.to_signseq());
        seq_outcome(got, &want)
    }));
    jobs.push(anchor("log^3(w) = w^(w^(-3))", bound, || {
        bool_outcome(check_log_chain(&Ordinal::Zero, 3))
    }));
    jobs.push(anchor("log(w^(w^(-w))) = w^(w^(-(w+1)))", bound, || {
        bool_outcome(check_log_chain(&Ordinal::omega(), 1))
    }));
    jobs.push(anchor("exp^3(w) = w^(w^(w^w))", bound, || {
        let one = Surreal::from_dyadic(&Dyadic::integer(1));
        bool_outcome(check_exp_tower(
            &Surreal::from_ordinal(&Ordinal::omega()),
            &one,
            3,
        ))
    }));
    jobs.push(anchor(
        "exp_cmp(kappa(0), kappa(1)) = LL",
        bound,
        move || {
            let x = Surreal::Seq(kappa_signseq(&SignSeq::empty(), 0));
            let y = Surreal::Seq(kappa_signseq(&int_seq(1), 0));
            match Evaluator::default().exp_cmp(&x, &y, bound) {
                Ok(ExpCmp::Ll) => (CheckStatus::Pass, None),
                Ok(c) => (CheckStatus::Fail, Some(format!("got {c:?}"))),
                Err(e) => (CheckStatus::Fail, Some(e.to_string())),
            }
        },
    ));

    // ι- and κ-map values.
    jobs.push(anchor("iota(0) = 0", bound, || {
        seq_outcome(Ok(iota(&SignSeq::empty())), &SignSeq::empty())
    }));
    jobs.push(anchor("kappa(0) = w", bound, || {
        seq_outcome(
            Ok(kappa_signseq(&SignSeq::empty(), 0)),
            &SignSeq::from_ordinal(&Ordinal::omega()),
        )
    }));
    jobs.push(anchor("kappa(1) = eps(0)", bound, || {
        seq_outcome(
            Ok(kappa_signseq(&int_seq(1), 0)),
            &SignSeq::plus(Ordinal::eps(Ordinal::Zero)),
        )
    }));
    jobs.push(anchor("kappa(-1) = w^(w^(-w))", bound, || {
        seq_outcome(Ok(kappa_signseq(&int_seq(-1), 0)), &plus_omega_minus_pow(4))
    }));
    jobs.push(anchor("kappa(-1) via normal form", bound, || {
        seq_outcome(
            nf_to_signseq(&kappa_iter(&int_seq(-1), 0)),
            &plus_omega_minus_pow(4),
        )
    }));
    jobs.push(anchor("log(kappa(0)) via normal form", bound, || {
        seq_outcome(
            nf_to_signseq(&kappa_iter(&SignSeq::empty(), 1)),
            &plus_omega_minus_pow(3),
        )
    }));
    jobs.push(anchor("exp(kappa(0)) = w^w", bound, || {
        seq_outcome(
            Ok(kappa_signseq(&SignSeq::empty(), -1)),
            &SignSeq::from_ordinal(&Ordinal::omega().omega_pow()),
        )
    }));
    {
        let eps0 = eps0.clone();
        jobs.push(anchor(
            "exp(kappa(1)) = w^(w^(eps(0) + 1))",
            bound,
            move || {
                let e1 = &eps0 + &Ordinal::one();
                seq_outcome(
                    Ok(kappa_signseq(&int_seq(1), -1)),
                    &SignSeq::from_ordinal(&e1.omega_pow().omega_pow()),
                )
            },
        ));
    }

    // ε-map fixed points and lengths.
    jobs.push(anchor(
        "w^(eps(a)) = eps(a) for a in {0, 1, w}",
        bound,
        || {
            let indices = [
                SignSeq::empty(),
                int_seq(1),
                SignSeq::from_ordinal(&Ordinal::omega()),
            ];
            let mut failures = Vec::new();
            for a in indices {
                let e = epsilon_map(&a);
                match nf_to_signseq(&omega_pow(&Surreal::Seq(e.clone()))) {
                    Ok(v) if v == e => {}
                    Ok(v) => failures.push(format!("a = {a}: w^(eps) = {v} differs from {e}")),
                    Err(err) => failures.push(format!("a = {a}: {err}")),
                }
            }
            if failures.is_empty() {
                (CheckStatus::Pass, None)
            } else {
                (CheckStatus::Fail, Some(failures.join("; ")))
            }
        },
    ));
    jobs.push(anchor("eps(0) is eps(0) pluses", bound, || {
        let e = epsilon_map(&SignSeq::empty());
        bool_outcome(e.runs() == [(Sign::Plus, Ordinal::eps(Ordinal::Zero))])
    }));

    // Recognition and classification.
    jobs.push(anchor(
        "recognize(w) = kappa(0)",
        bound,
        || match kappa_recognize(&Surreal::from_ordinal(&Ordinal::omega())) {
            Some(ix) if ix.a == SignSeq::empty() && ix.n == 0 => (CheckStatus::Pass, None),
            Some(ix) => (
                CheckStatus::Fail,
                Some(format!("got kappa({}, {})", ix.a, ix.n)),
            ),
            None => (CheckStatus::Fail, Some("not recognized".to_string())),
        },
    ));
    jobs.push(anchor(
        "recognize(eps(0)) = kappa(1)",
        bound,
        || match kappa_recognize(&Surreal::from_ordinal(&Ordinal::eps(Ordinal::Zero))) {
            Some(ix) if ix.a == int_seq(1) && ix.n == 0 => (CheckStatus::Pass, None),
            Some(ix) => (
                CheckStatus::Fail,
                Some(format!("got kappa({}, {})", ix.a, ix.n)),
            ),
            None => (CheckStatus::Fail, Some("not recognized".to_string())),
        },
    ));
    let class_cases: Vec<(&str, Surreal, SurrealClass)> = vec![
        (
            "class(eps(0)) = IN_EPS",
            Surreal::from_ordinal(&Ordinal::eps(Ordinal::Zero)),
            SurrealClass::InEps,
        ),
        (
            "class(w^(w^(-w))) = IN_KAPPA",
            Surreal::Nf(kappa_iter(&int_seq(-1), 0)),
            SurrealClass::InKappa,
        ),
        (
            "class(w^(w^(-1))) = IN_OMEGA_OMEGA",
            Surreal::Nf(kappa_iter(&SignSeq::empty(), 1)),
            SurrealClass::InOmegaOmega,
        ),
        (
            "class(w^2) = IN_OMEGA",
            Surreal::from_ordinal(&Ordinal::finite(2).omega_pow()),
            SurrealClass::InOmega,
        ),
        (
            "class(1/2) = GENERIC",
            Surreal::from_dyadic(&Dyadic::new(1, 1)),
            SurrealClass::Generic,
        ),
    ];
    for (label, value, want) in class_cases {
        jobs.push(anchor(label, bound, move || {
            let got = class_membership(&value);
            if got == want {
                (CheckStatus::Pass, None)
            } else {
                (CheckStatus::Fail, Some(format!("got {got}")))
            }
        }));
    }

    // κ on successor integers meets the ε-map.
    for m in 0..=2_i64 {
        let label = format!("kappa({}) = eps({})", m + 1, m);
        jobs.push(anchor(&label, bound, move || {
            seq_outcome(
                Ok(kappa_signseq(&int_seq(m + 1), 0)),
                &epsilon_map(&int_seq(m)),
            )
        }));
    }

    // One closed-vs-recursive h sample (the full grid is the h-tails suite).
    jobs.push(anchor("h on iota(1) tails of length w", bound, || {
        bool_outcome(check_h_iota(&int_seq(1), &Ordinal::omega()))
    }));

    jobs
}

fn omega_cut_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let bound = opts.bound;
    brute_surreals(opts.max_index_len)
        .into_iter()
        .map(|a| {
            let job: Job = Box::new(move || {
                let instance = format!("w^({a})");
                match check_omega_recursive(&a, bound) {
                    Ok(report) => witness_line("omega-cut", instance, &report),
                    Err(e) => SuiteLine {
                        suite: "omega-cut".to_string(),
                        instance,
                        verdict: Verdict::Fail,
                        bound,
                        detail: Some(e.to_string()),
                    },
                }
            });
            job
        })
        .collect()
}

fn kappa_cut_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let bound = opts.bound;
    brute_surreals(opts.max_index_len)
        .into_iter()
        .map(|a| {
            let job: Job = Box::new(move || {
                let report = check_kappa_recursive(&a, bound);
                witness_line("kappa-cut", format!("kappa({a})"), &report)
            });
            job
        })
        .collect()
}

fn kappa_minimal_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let bound = opts.bound;
    let probes = opts.probes;
    brute_surreals(opts.max_index_len)
        .into_iter()
        .map(|a| {
            let job: Job = Box::new(move || {
                let x = kappa_signseq(&a, 0);
                let report = check_minimality(&x, EquivRelation::Exp, bound, probes);
                minimality_line(
                    "kappa-minimal",
                    format!("kappa({a}) minimal (EXP)"),
                    &report,
                )
            });
            job
        })
        .collect()
}

/// Tail lengths exercised by the h-tails suite.
fn tail_lambdas() -> Vec<Ordinal> {
    vec![
        Ordinal::one(),
        Ordinal::finite(2),
        Ordinal::omega(),
        &Ordinal::omega() + &Ordinal::one(),
        Ordinal::finite(2).omega_pow(),
        Ordinal::eps(Ordinal::Zero),
    ]
}

fn h_tail_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for a in brute_surreals(opts.max_index_len) {
        for lambda in tail_lambdas() {
            let a = a.clone();
            jobs.push(Box::new(move || {
                let outcome = [Sign::Minus, Sign::Plus]
                    .into_iter()
                    .map(|s| h_tail_outcome(&a, &lambda, s))
                    .fold((CheckStatus::Pass, None), worse);
                SuiteLine {
                    suite: "h-tails".to_string(),
                    instance: format!("iota({a}) tail {lambda}"),
                    verdict: status_verdict(outcome.0),
                    bound: crate::explog::DEFAULT_BOUND,
                    detail: outcome.1,
                }
            }));
        }
    }
    jobs
}

fn log_chain_jobs(_opts: &VerifyOptions) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let lambdas = [
        Ordinal::Zero,
        Ordinal::one(),
        Ordinal::omega(),
        &Ordinal::omega() + &Ordinal::one(),
        Ordinal::eps(Ordinal::Zero),
    ];
    for lambda in lambdas {
        for n in 0..=3_u64 {
            let lambda = lambda.clone();
            jobs.push(Box::new(move || SuiteLine {
                suite: "log-chains".to_string(),
                instance: format!("log^{n} of w^(w^(-({lambda})))"),
                verdict: if check_log_chain(&lambda, n) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                bound: crate::explog::DEFAULT_BOUND,
                detail: None,
            }));
        }
    }
    for n in 0..=4_u64 {
        jobs.push(Box::new(move || {
            let base = Surreal::from_ordinal(&Ordinal::omega());
            let seed = Surreal::from_dyadic(&Dyadic::integer(1));
            SuiteLine {
                suite: "log-chains".to_string(),
                instance: format!("exp^{n}(w) tower"),
                verdict: if check_exp_tower(&base, &seed, n) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                bound: crate::explog::DEFAULT_BOUND,
                detail: None,
            }
        }));
    }
    for n in 1..=3_u64 {
        jobs.push(Box::new(move || {
            let base = Surreal::from_ordinal(&Ordinal::eps(Ordinal::Zero));
            let seed = Surreal::from_ordinal(&(&Ordinal::eps(Ordinal::Zero) + &Ordinal::one()));
            SuiteLine {
                suite: "log-chains".to_string(),
                instance: format!("exp^{n}(eps(0)) tower"),
                verdict: if check_exp_tower(&base, &seed, n) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                bound: crate::explog::DEFAULT_BOUND,
                detail: None,
            }
        }));
    }
    jobs
}

/// Ordinals used as standing transfinite test points.
fn standard_ordinals() -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let eps0 = Ordinal::eps(Ordinal::Zero);
    vec![
        w.clone(),
        &w + &Ordinal::one(),
        &w * &Ordinal::finite(2),
        Ordinal::finite(2).omega_pow(),
        w.omega_pow(),
        eps0.clone(),
        &eps0 + &Ordinal::one(),
    ]
}

/// Sign sequences on which the recursive `h` is known to resolve: all
/// finite-birthday values, ι-values and their tails, and ordinals.
fn h_domain_points() -> Vec<SignSeq> {
    let mut pts = brute_surreals(5);
    for a in brute_surreals(3) {
        pts.push(iota(&a));
        let mut t1 = iota(&a);
        t1.push(Sign::Plus, Ordinal::omega());
        pts.push(t1);
        let mut t2 = iota(&a);
        t2.push(Sign::Minus, Ordinal::eps(Ordinal::Zero));
        pts.push(t2);
    }
    for o in standard_ordinals() {
        pts.push(SignSeq::from_ordinal(&o));
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Purely infinite normal forms used by the exp/log round-trip line.
fn purely_infinite_pool() -> Vec<PurelyInfinite> {
    let mut exps: Vec<SignSeq> = ["1/4", "1/2", "3/4", "1", "3/2", "2", "3"]
        .iter()
        .map(|s| SignSeq::from_dyadic(&s.parse::<Dyadic>().expect("dyadic literal")))
        .collect();
    for o in standard_ordinals() {
        exps.push(SignSeq::from_ordinal(&o));
    }
    let coeffs = [
        BigRational::one(),
        BigRational::from_integer(BigInt::from(2)),
        BigRational::from_integer(BigInt::from(-1)),
        BigRational::new(BigInt::one(), BigInt::from(2)),
    ];
    let mut pool = Vec::new();
    for e in &exps {
        for c in &coeffs {
            let nf = NormalForm::monomial(Surreal::Seq(e.clone()), c.clone());
            pool.push(PurelyInfinite::new(nf).expect("positive exponent"));
        }
    }
    for i in 0..exps.len() {
        for j in 0..i {
            let nf = NormalForm::from_terms(vec![
                (Surreal::Seq(exps[i].clone()), BigRational::one()),
                (
                    Surreal::Seq(exps[j].clone()),
                    BigRational::from_integer(BigInt::from(-3)),
                ),
            ]);
            pool.push(PurelyInfinite::new(nf).expect("positive exponents"));
        }
    }
    pool
}

fn inverse_jobs(_opts: &VerifyOptions) -> Vec<Job> {
    let bound = crate::explog::DEFAULT_BOUND;
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        let pts = h_domain_points();
        let total = pts.len();
        let mut ev = Evaluator::default();
        let mut failures = Vec::new();
        let mut open = Vec::new();
        for b in &pts {
            match ev.h(b).and_then(|v| ev.g(&v).map(|back| (v, back))) {
                Ok((_, back)) if back == *b => {}
                Ok((v, back)) => failures.push(format!("g(h({b})) = g({v}) = {back}")),
                Err(e) => open.push(format!("at {b}: {e}")),
            }
        }
        aggregate_line(
            "inverses",
            "g(h(b)) = b".to_string(),
            bound,
            total,
            &failures,
            &open,
        )
    }));
    jobs.push(Box::new(move || {
        let pts = h_domain_points();
        let total = pts.len();
        let mut ev = Evaluator::default();
        let mut failures = Vec::new();
        let mut open = Vec::new();
        for b in &pts {
            let x = match ev.h(b) {
                Ok(x) => x,
                Err(e) => {
                    open.push(format!("h({b}): {e}"));
                    continue;
                }
            };
            match ev.g(&x).and_then(|a| ev.h(&a).map(|back| (a, back))) {
                Ok((_, back)) if back == x => {}
                Ok((a, back)) => failures.push(format!("h(g({x})) = h({a}) = {back}")),
                Err(e) => open.push(format!("at {x}: {e}")),
            }
        }
        aggregate_line(
            "inverses",
            "h(g(x)) = x".to_string(),
            bound,
            total,
            &failures,
            &open,
        )
    }));
    jobs.push(Box::new(move || {
        let pool = purely_infinite_pool();
        let total = pool.len();
        let mut ev = Evaluator::default();
        let mut failures = Vec::new();
        let mut open = Vec::new();
        for p in &pool {
            let roundtrip = ev
                .exp_purely_infinite(p)
                .and_then(|y| MonomialProduct::from_value(&Surreal::Nf(y)))
                .and_then(|m| ev.log_monomial(&m));
            match roundtrip {
                Ok(back) if back == *p => {}
                Ok(back) => failures.push(format!("log(exp({p})) = {back}")),
                Err(e) => open.push(format!("at {p}: {e}")),
            }
        }
        aggregate_line(
            "inverses",
            "log(exp(x)) = x on purely infinite x".to_string(),
            bound,
            total,
            &failures,
            &open,
        )
    }));
    jobs
}

fn two_route_jobs(opts: &VerifyOptions) -> Vec<Job> {
    let bound = opts.bound;
    brute_surreals(opts.max_index_len)
        .into_iter()
        .map(|a| {
            let job: Job = Box::new(move || {
                let mut failures = Vec::new();
                let mut total = 0;
                for n in -2..=2_i64 {
                    total += 1;
                    let direct = kappa_signseq(&a, n);
                    match nf_to_signseq(&kappa_iter(&a, n)) {
                        Ok(v) if v == direct => {}
                        Ok(v) => failures.push(format!(
                            "kappa({a}, {n}): sequence route {direct}, normal-form route {v}"
                        )),
                        Err(e) => failures.push(format!("kappa({a}, {n}): {e}")),
                    }
                }
                aggregate_line(
                    "two-route",
                    format!("kappa({a}, -2..=2)"),
                    bound,
                    total,
                    &failures,
                    &[],
                )
            });
            job
        })
        .collect()
}

#[derive(Clone, Copy)]
enum GeneticOp {
    Add,
    Mul,
}

fn genetic_line(op: GeneticOp, x: &SignSeq, universe: &[SignSeq], bound: u64) -> SuiteLine {
    let (suite, sym) = match op {
        GeneticOp::Add => ("genetic-add", "+"),
        GeneticOp::Mul => ("genetic-mul", "*"),
    };
    let mut ctx = GeneticContext::default();
    let mut failures = Vec::new();
    let mut open = Vec::new();
    let xd = x.to_dyadic().expect("finite-birthday values are dyadic");
    for y in universe {
        let yd = y.to_dyadic().expect("finite-birthday values are dyadic");
        let want = SignSeq::from_dyadic(&match op {
            GeneticOp::Add => xd + yd,
            GeneticOp::Mul => xd * yd,
        });
        let got = match op {
            GeneticOp::Add => ctx.add(x, y),
            GeneticOp::Mul => ctx.mul(x, y),
        };
        match got {
            Ok(v) if v == want => {}
            Ok(v) => failures.push(format!("{x} {sym} {y}: cut gives {v}, dyadic gives {want}")),
            Err(e @ Error::DepthExceeded(_)) => open.push(format!("{x} {sym} {y}: {e}")),
            Err(e) => failures.push(format!("{x} {sym} {y}: {e}")),
        }
    }
    aggregate_line(
        suite,
        format!("{x} {sym} *"),
        bound,
        universe.len(),
        &failures,
        &open,
    )
}

fn genetic_jobs(op: GeneticOp, opts: &VerifyOptions) -> Vec<Job> {
    let universe = Arc::new(brute_surreals(opts.birthday));
    let bound = opts.birthday;
    universe
        .iter()
        .cloned()
        .map(|x| {
            let universe = Arc::clone(&universe);
            let job: Job = Box::new(move || genetic_line(op, &x, &universe, bound));
            job
        })
        .collect()
}

// ===== suite drivers =====

/// Names accepted by [`run_suite`], in the order [`run_all`] runs them.
pub fn available_suites() -> &'static [&'static str] {
    &[
        "anchors",
        "omega-cut",
        "kappa-cut",
        "kappa-minimal",
        "h-tails",
        "log-chains",
        "inverses",
        "two-route",
        "genetic-add",
        "genetic-mul",
    ]
}

fn suite_jobs(name: &str, opts: &VerifyOptions) -> Result<Vec<Job>> {
    Ok(match name {
        "anchors" => anchor_jobs(opts),
        "omega-cut" => omega_cut_jobs(opts),
        "kappa-cut" => kappa_cut_jobs(opts),
        "kappa-minimal" => kappa_minimal_jobs(opts),
        "h-tails" => h_tail_jobs(opts),
        "log-chains" => log_chain_jobs(opts),
        "inverses" => inverse_jobs(opts),
        "two-route" => two_route_jobs(opts),
        "genetic-add" => genetic_jobs(GeneticOp::Add, opts),
        "genetic-mul" => genetic_jobs(GeneticOp::Mul, opts),
        other => {
            return Err(Error::Domain(format!(
                "unknown suite {other:?}; available: {}",
                available_suites().join(", ")
            )))
        }
    })
}

#[cfg(feature = "parallel")]
fn execute(jobs: Vec<Job>, parallel: bool) -> Vec<SuiteLine> {
    if parallel {
        jobs.par_iter().map(|job| job()).collect()
    } else {
        jobs.iter().map(|job| job()).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn execute(jobs: Vec<Job>, _parallel: bool) -> Vec<SuiteLine> {
    jobs.iter().map(|job| job()).collect()
}

/// Run one verification suite, data-parallel across instances when the
/// `parallel` feature is enabled.
///
/// Each instance runs with its own state (evaluators, genetic contexts), so
/// parallel and sequential runs produce identical reports.
///
/// # Errors
/// [`Error::Domain`] for an unknown suite name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    Ok(SuiteReport {
        lines: execute(suite_jobs(name, opts)?, true),
    })
}

/// Sequential twin of [`run_suite`], for differential testing and benches.
///
/// # Errors
/// [`Error::Domain`] for an unknown suite name.
pub fn run_suite_sequential(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    Ok(SuiteReport {
        lines: execute(suite_jobs(name, opts)?, false),
    })
}

/// Run every suite from [`available_suites`], merged into one report.
pub fn run_all(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::default();
    for name in available_suites() {
        report.merge(run_suite(name, opts).expect("available suite names are valid"));
    }
    report
}

/// Sequential twin of [`run_all`].
pub fn run_all_sequential(opts: &VerifyOptions) -> SuiteReport {
    let mut report = SuiteReport::default();
    for name in available_suites() {
        report.merge(run_suite_sequential(name, opts).expect("available suite names are valid"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(s: &str) -> SignSeq {
        SignSeq::from_dyadic(&s.parse::<Dyadic>().expect("dyadic literal"))
    }

    #[test]
    fn brute_universe_has_expected_size_and_order() {
        assert_eq!(brute_surreals(1), vec![dy("-1"), dy("0"), dy("1")]);
        let day2 = brute_surreals(2);
        assert_eq!(
            day2,
            ["-2", "-1", "-1/2", "0", "1/2", "1", "2"].map(dy).to_vec(),
            "day-2 universe should list the seven values in increasing order"
        );
        assert_eq!(brute_surreals(6).len(), 127, "day-6 universe size");
    }

    #[test]
    fn genetic_add_matches_dyadic_arithmetic() {
        let mut ctx = GeneticContext::default();
        assert_eq!(ctx.add(&dy("1/2"), &dy("1/4")).expect("add"), dy("3/4"));
        for a in brute_surreals(3) {
            assert_eq!(
                ctx.add(&a, &SignSeq::empty()).expect("add zero"),
                a,
                "adding zero must return the same value for {a}"
            );
        }
        assert_eq!(ctx.add(&dy("-3/2"), &dy("3")).expect("add"), dy("3/2"));
    }

    #[test]
    fn genetic_mul_matches_dyadic_arithmetic() {
        let mut ctx = GeneticContext::default();
        assert_eq!(ctx.mul(&dy("1/2"), &dy("2")).expect("mul"), dy("1"));
        assert_eq!(ctx.mul(&dy("3"), &dy("-2")).expect("mul"), dy("-6"));
        for x in brute_surreals(3) {
            let xd = x.to_dyadic().expect("dyadic");
            for y in brute_surreals(3) {
                let yd = y.to_dyadic().expect("dyadic");
                assert_eq!(
                    ctx.mul(&x, &y).expect("mul"),
                    SignSeq::from_dyadic(&(xd * yd)),
                    "genetic product {x} * {y} must match dyadic arithmetic"
                );
            }
        }
    }

    #[test]
    fn genetic_memoization_is_pure() {
        let x = dy("3/2");
        let y = dy("-5/4");
        let mut shared = GeneticContext::default();
        let first = shared.add(&x, &y).expect("add");
        let second = shared.add(&x, &y).expect("memoized add");
        let fresh = GeneticContext::default().add(&x, &y).expect("fresh add");
        assert_eq!(first, second, "memo hit must reproduce the computed value");
        assert_eq!(first, fresh, "fresh context must agree with shared context");
    }

    #[test]
    fn omega_cut_witnesses_pass_for_small_exponents() {
        for a in [dy("0"), dy("1"), dy("-1")] {
            let report = check_omega_recursive(&a, 4).expect("candidate renders");
            assert!(report.passed(), "w^({a}) witness failed:\n{report}");
        }
        let zero = check_omega_recursive(&SignSeq::empty(), 4).expect("render");
        assert_eq!(
            zero.exact_cross_check,
            Some(CheckStatus::Pass),
            "w^0 = 1 has finite options and an exact cross-check"
        );
    }

    #[test]
    fn kappa_cut_witnesses_pass_for_small_indices() {
        for a in [dy("0"), dy("1"), dy("-1")] {
            let report = check_kappa_recursive(&a, 4);
            assert!(report.passed(), "kappa({a}) witness failed:\n{report}");
        }
    }

    #[test]
    fn h_closed_form_matches_recursion_on_samples() {
        assert!(check_h_iota(&SignSeq::empty(), &Ordinal::one()));
        assert!(check_h_iota(&dy("1"), &Ordinal::omega()));
        assert!(check_h_iota(&dy("-1"), &Ordinal::finite(2)));
    }

    #[test]
    fn log_chains_and_exp_towers_hold() {
        assert!(check_log_chain(&Ordinal::Zero, 3), "log^3(w)");
        assert!(check_log_chain(&Ordinal::omega(), 1), "log(kappa(-1))");
        assert!(
            check_log_chain(&Ordinal::eps(Ordinal::Zero), 2),
            "log^2 past eps(0)"
        );
        let w = Surreal::from_ordinal(&Ordinal::omega());
        let one = Surreal::from_dyadic(&Dyadic::integer(1));
        assert!(check_exp_tower(&w, &one, 4), "exp^4(w)");
        let eps0 = Surreal::from_ordinal(&Ordinal::eps(Ordinal::Zero));
        let seed = Surreal::from_ordinal(&(&Ordinal::eps(Ordinal::Zero) + &Ordinal::one()));
        assert!(check_exp_tower(&eps0, &seed, 3), "exp^3(eps(0))");
    }

    #[test]
    fn minimality_reports_pass_for_class_representatives() {
        let w = SignSeq::from_ordinal(&Ordinal::omega());
        let arch = check_minimality(&w, EquivRelation::Arch, 4, 3);
        assert!(arch.passed(), "w should be ARCH-minimal:\n{arch}");

        let ww = SignSeq::from_ordinal(&Ordinal::omega().omega_pow());
        let comp = check_minimality(&ww, EquivRelation::Comp, 4, 3);
        assert!(comp.passed(), "w^w should be COMP-minimal:\n{comp}");

        let k = kappa_signseq(&dy("-1"), 0);
        let exp = check_minimality(&k, EquivRelation::Exp, 4, 3);
        assert!(exp.passed(), "kappa(-1) should be EXP-minimal:\n{exp}");
        assert!(!exp.probes.is_empty(), "probes must not be vacuous");
        assert!(
            exp.probes.iter().all(|p| p.status == CheckStatus::Pass),
            "every truncation of kappa(-1) must be decided inequivalent:\n{exp}"
        );
    }

    #[test]
    fn anchors_suite_is_all_pass() {
        let report = run_suite("anchors", &VerifyOptions::default()).expect("known suite");
        assert!(!report.lines.is_empty());
        for line in &report.lines {
            assert_eq!(line.verdict, Verdict::Pass, "anchor failed: {line}");
        }
    }

    #[test]
    fn parallel_and_sequential_runs_agree() {
        let opts = VerifyOptions::default();
        let par = run_suite("two-route", &opts).expect("known suite");
        let seq = run_suite_sequential("two-route", &opts).expect("known suite");
        assert_eq!(
            par, seq,
            "parallel and sequential reports must be identical"
        );
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("no-such-suite", &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }
}
