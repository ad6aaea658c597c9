//! Cuts: the simplest number between two sets, canonical options, and
//! bounded verification of cut representations.
//!
//! The fundamental existence theorem for surreal numbers says that whenever
//! every member of `L` is less than every member of `R`, there is a unique
//! *simplest* (minimum birthday) surreal strictly between them, written
//! `⟨L | R⟩`. [`simplest_between`] computes it structurally on sign
//! sequences, with no bound on sequence length.
//!
//! Recursive constructions in this crate are specified by such cuts whose
//! sides are often infinite *families* (e.g. "all `n·ω^c` for `n < ω`").
//! [`check_cut_witness`] verifies a claimed value of a cut at a finite bound:
//! every sampled option must lie on its side of the candidate, and every
//! proper truncation of the candidate must be excluded from the cut interval
//! by some sampled option. Family checks that pass at the bound are reported
//! as passes *at that bound*; an unexcluded truncation yields the explicit
//! verdict [`Verdict::UnresolvedAtBound`], never a silent pass.

use std::fmt;

use crate::ordinal::Ordinal;
use crate::signseq::{Sign, SignSeq};
use crate::{Error, Result};

/// The simplest surreal strictly greater than every element of `left` and
/// strictly less than every element of `right` (either side may be empty).
///
/// # Errors
/// [`Error::OverlappingCut`] unless `max(left) < min(right)`.
pub fn simplest_between(left: &[SignSeq], right: &[SignSeq]) -> Result<SignSeq> {
    let lo = left.iter().max();
    let hi = right.iter().min();
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return Err(Error::OverlappingCut(format!(
                "left option {l} is not below right option {h}"
            )));
        }
    }
    Ok(simplest_in(lo, hi))
}

/// The simplest surreal in the open interval `(lo, hi)`, where `None` means
/// unbounded. Requires `lo < hi` when both bounds are present.
pub fn simplest_in(lo: Option<&SignSeq>, hi: Option<&SignSeq>) -> SignSeq {
    match (lo, hi) {
        (None, None) => SignSeq::empty(),
        (Some(l), None) => simplest_above(l),
        (None, Some(h)) => simplest_above(&h.negate()).negate(),
        (Some(l), Some(h)) => {
            assert!(l < h, "simplest_in requires lo < hi, got {l} and {h}");
            let cp = l.common_prefix(h);
            if cp == *l {
                // h strictly extends l (it must, since l < h), beginning with
                // a plus; descend just below that continuation.
                let tail = suffix_after(h, &cp);
                l.concat(&plus_then_below(&tail))
            } else if cp == *h {
                let tail = suffix_after(l, &cp);
                h.concat(&plus_then_below(&tail.negate()).negate())
            } else {
                // Both sides continue past the fork; l with ⊖, h with ⊕, so
                // the fork itself sits strictly between and nothing shorter
                // does.
                cp
            }
        }
    }
}

/// The simplest surreal strictly greater than `l`.
fn simplest_above(l: &SignSeq) -> SignSeq {
    match l.as_ordinal() {
        // l is an ordinal α: anything above it extends ⊕^α with a plus.
        Some(alpha) => SignSeq::plus(&alpha + &Ordinal::one()),
        // Otherwise the all-plus prefix before l's first minus already beats l.
        None => match l.runs() {
            [(Sign::Plus, c), ..] => SignSeq::plus(c.clone()),
            _ => SignSeq::empty(),
        },
    }
}

/// For a tail `t` that begins with a plus, the simplest sequence that is
/// positive (starts with ⊕) yet strictly below `t` in tail order.
fn plus_then_below(t: &SignSeq) -> SignSeq {
    let [(Sign::Plus, c), rest @ ..] = t.runs() else {
        unreachable!("the longer side of a cut continues with a plus toward its value")
    };
    if c.as_finite() == Some(1) {
        // ⊕ alone would tie or overshoot; go below whatever follows the plus.
        let mut rest_seq = SignSeq::empty();
        for (s, n) in rest {
            rest_seq.push(*s, n.clone());
        }
        SignSeq::plus(Ordinal::one()).concat(&simplest_in(None, Some(&rest_seq)))
    } else {
        // At least two pluses follow: a single ⊕ ends strictly below them.
        SignSeq::plus(Ordinal::one())
    }
}

/// The remainder of `longer` after its initial segment `prefix`.
pub(crate) fn suffix_after(longer: &SignSeq, prefix: &SignSeq) -> SignSeq {
    debug_assert!(prefix.is_prefix_of(longer));
    let skip = prefix.len();
    let mut out = SignSeq::empty();
    let mut consumed = Ordinal::Zero;
    for (s, c) in longer.runs() {
        let end = &consumed + c;
        if let Some(rem) = skip.left_diff(&end) {
            // This run extends past the prefix; keep its last `rem` signs.
            if !rem.is_zero() {
                out.push(*s, rem.min(c.clone()));
            }
        }
        consumed = end;
    }
    out
}

/// The canonical cut of `x`: its proper initial segments, the ones below `x`
/// on the left and the ones above on the right, each sorted increasingly.
///
/// # Errors
/// [`Error::Domain`] if `x` is transfinite (its full truncation set would be
/// infinite); use [`canonical_options_sampled`] instead.
pub fn canonical_options(x: &SignSeq) -> Result<(Vec<SignSeq>, Vec<SignSeq>)> {
    if x.len().as_finite().is_none() {
        return Err(Error::Domain(format!(
            "canonical options of transfinite {x} form an infinite set"
        )));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut prefix = SignSeq::empty();
    for (s, c) in x.runs() {
        let n = c.as_finite().expect("finite length implies finite runs");
        for _ in 0..n {
            // The next sign of x decides the side: continuing with ⊕ means
            // x > prefix.
            match s {
                Sign::Plus => left.push(prefix.clone()),
                Sign::Minus => right.push(prefix.clone()),
            }
            prefix.push(*s, Ordinal::one());
        }
    }
    left.sort();
    right.sort();
    Ok((left, right))
}

/// Like [`canonical_options`] but over the bounded truncation sample
/// [`SignSeq::truncation_probes`], usable on transfinite sequences.
pub fn canonical_options_sampled(x: &SignSeq, k: u64) -> (Vec<SignSeq>, Vec<SignSeq>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for p in x.truncation_probes(k) {
        if p < *x {
            left.push(p);
        } else {
            right.push(p);
        }
    }
    (left, right)
}

/// One option generator on a side of a [`CutSpec`]: a single concrete value,
/// or an ω-indexed family sampled at `n = 0, 1, …` up to the check bound.
pub enum Generator {
    /// A single option.
    Concrete(SignSeq),
    /// An option family; `member(n)` may return `None` for indices where the
    /// family has no member (e.g. families defined for `n ≥ 1`).
    Family {
        /// Human-readable description, e.g. `"n*w"`.
        label: String,
        /// The `n`-th member.
        member: Box<dyn Fn(u64) -> Option<SignSeq> + Send + Sync>,
    },
}

impl Generator {
    /// A concrete option.
    pub fn concrete(v: SignSeq) -> Self {
        Generator::Concrete(v)
    }

    /// A labelled ω-indexed family.
    pub fn family(
        label: impl Into<String>,
        member: impl Fn(u64) -> Option<SignSeq> + Send + Sync + 'static,
    ) -> Self {
        Generator::Family {
            label: label.into(),
            member: Box::new(member),
        }
    }

    fn label(&self) -> String {
        match self {
            Generator::Concrete(v) => v.to_string(),
            Generator::Family { label, .. } => label.clone(),
        }
    }

    fn sample(&self, bound: u64) -> Vec<SignSeq> {
        match self {
            Generator::Concrete(v) => vec![v.clone()],
            Generator::Family { member, .. } => (0..=bound).filter_map(member).collect(),
        }
    }

    fn is_concrete(&self) -> bool {
        matches!(self, Generator::Concrete(_))
    }
}

/// A cut `⟨left | right⟩` whose sides may mix concrete options and families.
pub struct CutSpec {
    /// Left options.
    pub left: Vec<Generator>,
    /// Right options.
    pub right: Vec<Generator>,
}

impl CutSpec {
    /// A cut from its two sides.
    pub fn new(left: Vec<Generator>, right: Vec<Generator>) -> Self {
        CutSpec { left, right }
    }
}

/// Outcome of a single checkable fact inside a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum CheckStatus {
    /// The fact holds (for families: at every sampled index).
    Pass,
    /// The fact is refuted.
    Fail,
    /// Not decidable from the sampled options.
    Unresolved,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Unresolved => "UNRESOLVED",
        })
    }
}

/// Overall verdict of a witness check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Verdict {
    /// All checks passed (family checks at the sampling bound).
    Pass,
    /// Some check failed; the candidate is not the value of the cut.
    Fail,
    /// No failure, but some truncation of the candidate was not excluded by
    /// any sampled option, so minimality is not settled at this bound.
    UnresolvedAtBound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::UnresolvedAtBound => "UNRESOLVED",
        })
    }
}

/// Betweenness result for one generator.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BetweennessEntry {
    /// `"left"` or `"right"`.
    pub side: &'static str,
    /// The generator's label.
    pub generator: String,
    /// Pass/fail for every sampled member of the generator.
    pub status: CheckStatus,
    /// On failure, which member violated the ordering.
    pub detail: Option<String>,
}

/// Exclusion result for one truncation probe of the candidate.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProbeEntry {
    /// The truncated candidate that must *not* lie in the cut interval.
    pub probe: String,
    /// Excluded or unresolved (a probe is never a hard failure by itself).
    pub status: CheckStatus,
    /// The sampled option that excludes the probe, when one was found.
    pub excluded_by: Option<String>,
}

/// Full result of [`check_cut_witness`].
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WitnessReport {
    /// The candidate value under test.
    pub candidate: String,
    /// Family sampling bound (`n ≤ bound`).
    pub bound: u64,
    /// Truncation probe order passed to [`SignSeq::truncation_probes`].
    pub probe_order: u64,
    /// Per-generator ordering checks.
    pub betweenness: Vec<BetweennessEntry>,
    /// Per-truncation exclusion checks.
    pub probes: Vec<ProbeEntry>,
    /// When every generator is concrete, the exact value of the cut is
    /// computed independently and compared; `None` when families are present.
    pub exact_cross_check: Option<CheckStatus>,
    /// Aggregate verdict.
    pub verdict: Verdict,
}

impl WitnessReport {
    /// True iff the verdict is [`Verdict::Pass`].
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "witness {} (bound {}, probe order {}): {:?}",
            self.candidate, self.bound, self.probe_order, self.verdict
        )?;
        for b in &self.betweenness {
            write!(f, "  {:>5} {} .. {:?}", b.side, b.generator, b.status)?;
            match &b.detail {
                Some(d) => writeln!(f, " ({d})")?,
                None => writeln!(f)?,
            }
        }
        for p in &self.probes {
            match (&p.status, &p.excluded_by) {
                (CheckStatus::Unresolved, _) => {
                    writeln!(f, "  probe {} .. UNRESOLVED at this bound", p.probe)?
                }
                (_, Some(by)) => writeln!(f, "  probe {} .. excluded by {}", p.probe, by)?,
                _ => writeln!(f, "  probe {} .. {:?}", p.probe, p.status)?,
            }
        }
        if let Some(x) = self.exact_cross_check {
            writeln!(f, "  exact simplest-between cross-check .. {x:?}")?;
        }
        Ok(())
    }
}

/// Check that `candidate` is the value of the cut `spec`, sampling families at
/// indices `0..=bound` and testing minimality against the candidate's
/// truncation probes of order `probe_order`.
///
/// Betweenness failures are decisive ([`Verdict::Fail`]); a truncation that no
/// sampled option excludes makes the verdict [`Verdict::UnresolvedAtBound`].
pub fn check_cut_witness(
    candidate: &SignSeq,
    spec: &CutSpec,
    bound: u64,
    probe_order: u64,
) -> WitnessReport {
    let mut betweenness = Vec::new();
    let mut left_values: Vec<(String, SignSeq)> = Vec::new();
    let mut right_values: Vec<(String, SignSeq)> = Vec::new();

    for g in &spec.left {
        let mut status = CheckStatus::Pass;
        let mut detail = None;
        for v in g.sample(bound) {
            if v >= *candidate {
                status = CheckStatus::Fail;
                detail = Some(format!("member {v} is not below the candidate"));
            }
            left_values.push((g.label(), v));
        }
        betweenness.push(BetweennessEntry {
            side: "left",
            generator: g.label(),
            status,
            detail,
        });
    }
    for g in &spec.right {
        let mut status = CheckStatus::Pass;
        let mut detail = None;
        for v in g.sample(bound) {
            if v <= *candidate {
                status = CheckStatus::Fail;
                detail = Some(format!("member {v} is not above the candidate"));
            }
            right_values.push((g.label(), v));
        }
        betweenness.push(BetweennessEntry {
            side: "right",
            generator: g.label(),
            status,
            detail,
        });
    }

    let mut probes = Vec::new();
    for t in candidate.truncation_probes(probe_order) {
        let excluder = left_values
            .iter()
            .find(|(_, v)| t <= *v)
            .map(|(label, v)| format!("left {label} member {v}"))
            .or_else(|| {
                right_values
                    .iter()
                    .find(|(_, v)| *v <= t)
                    .map(|(label, v)| format!("right {label} member {v}"))
            });
        probes.push(match excluder {
            Some(by) => ProbeEntry {
                probe: t.to_string(),
                status: CheckStatus::Pass,
                excluded_by: Some(by),
            },
            None => ProbeEntry {
                probe: t.to_string(),
                status: CheckStatus::Unresolved,
                excluded_by: None,
            },
        });
    }

    let all_concrete = spec.left.iter().all(Generator::is_concrete)
        && spec.right.iter().all(Generator::is_concrete);
    let exact_cross_check = if all_concrete {
        let lefts: Vec<SignSeq> = left_values.iter().map(|(_, v)| v.clone()).collect();
        let rights: Vec<SignSeq> = right_values.iter().map(|(_, v)| v.clone()).collect();
        Some(match simplest_between(&lefts, &rights) {
            Ok(z) if z == *candidate => CheckStatus::Pass,
            _ => CheckStatus::Fail,
        })
    } else {
        None
    };

    let any_fail = betweenness.iter().any(|b| b.status == CheckStatus::Fail)
        || exact_cross_check == Some(CheckStatus::Fail);
    let any_unresolved = probes.iter().any(|p| p.status == CheckStatus::Unresolved);
    let verdict = if any_fail {
        Verdict::Fail
    } else if any_unresolved {
        Verdict::UnresolvedAtBound
    } else {
        Verdict::Pass
    };

    WitnessReport {
        candidate: candidate.to_string(),
        bound,
        probe_order,
        betweenness,
        probes,
        exact_cross_check,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{self, Dyadic};

    fn seq(s: &str) -> SignSeq {
        s.parse().expect("test sequence parses")
    }

    fn seqs(ss: &[&str]) -> Vec<SignSeq> {
        ss.iter().map(|s| seq(s)).collect()
    }

    #[test]
    fn simplest_between_empty_sides() {
        assert_eq!(simplest_between(&[], &[]).unwrap(), SignSeq::empty());
        assert_eq!(simplest_between(&seqs(&["0"]), &[]).unwrap(), seq("+"));
        assert_eq!(simplest_between(&[], &seqs(&["0"])).unwrap(), seq("-"));
        assert_eq!(simplest_between(&seqs(&["+^3"]), &[]).unwrap(), seq("+^4"));
        assert_eq!(
            simplest_between(&seqs(&["+^w"]), &[]).unwrap(),
            seq("+^(w + 1)")
        );
        assert_eq!(
            simplest_between(&[], &seqs(&["+^w"])).unwrap(),
            SignSeq::empty()
        );
        assert_eq!(
            simplest_between(&seqs(&["+^w -"]), &[]).unwrap(),
            seq("+^w")
        );
    }

    #[test]
    fn simplest_between_two_sided() {
        assert_eq!(
            simplest_between(&seqs(&["0"]), &seqs(&["+"])).unwrap(),
            seq("+ -")
        );
        assert_eq!(
            simplest_between(&seqs(&["-"]), &seqs(&["+"])).unwrap(),
            SignSeq::empty()
        );
        assert_eq!(
            simplest_between(&seqs(&["+ -"]), &seqs(&["+"])).unwrap(),
            seq("+ - +")
        );
        assert_eq!(
            simplest_between(&seqs(&["0"]), &seqs(&["+^w"])).unwrap(),
            seq("+")
        );
        assert_eq!(
            simplest_between(&seqs(&["+^w -"]), &seqs(&["+^w"])).unwrap(),
            seq("+^w - +"),
            "between ω−1 and ω"
        );
        assert_eq!(
            simplest_between(&seqs(&["+^w"]), &seqs(&["+^w +"])).unwrap(),
            seq("+^w + -"),
            "between ω and ω+1"
        );
        assert_eq!(
            simplest_between(&seqs(&["+ - -", "+ -"]), &seqs(&["+", "+ +"])).unwrap(),
            seq("+ - +"),
            "max of left and min of right decide"
        );
    }

    #[test]
    fn simplest_between_agrees_with_dyadic_oracle() {
        let grid: Vec<Dyadic> = (-16..=16).map(|n| Dyadic::new(n, 2)).collect();
        for l in &grid {
            for h in &grid {
                if l >= h {
                    continue;
                }
                let via_seq =
                    simplest_between(&[SignSeq::from_dyadic(l)], &[SignSeq::from_dyadic(h)])
                        .unwrap();
                let via_dyadic = dyadic::simplest_in(Some(l), Some(h));
                assert_eq!(
                    via_seq,
                    SignSeq::from_dyadic(&via_dyadic),
                    "simplest in ({l}, {h})"
                );
            }
        }
    }

    #[test]
    fn simplest_between_rejects_overlap() {
        assert!(matches!(
            simplest_between(&seqs(&["+"]), &seqs(&["+"])),
            Err(Error::OverlappingCut(_))
        ));
        assert!(matches!(
            simplest_between(&seqs(&["+^2"]), &seqs(&["+"])),
            Err(Error::OverlappingCut(_))
        ));
    }

    #[test]
    fn canonical_options_partition_truncations() {
        // 3/4 = ⊕⊖⊕: left options {0, 1/2}, right option {1}.
        let (l, r) = canonical_options(&seq("+ - +")).unwrap();
        assert_eq!(l, seqs(&["0", "+ -"]));
        assert_eq!(r, seqs(&["+"]));
        let back = simplest_between(&l, &r).unwrap();
        assert_eq!(back, seq("+ - +"), "canonical cut reproduces the number");

        let (l, r) = canonical_options(&SignSeq::empty()).unwrap();
        assert!(l.is_empty() && r.is_empty());

        assert!(matches!(
            canonical_options(&seq("+^w")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn canonical_options_roundtrip_small_dyadics() {
        for num in -12..=12 {
            for exp in 0..3 {
                let x = SignSeq::from_dyadic(&Dyadic::new(num, exp));
                let (l, r) = canonical_options(&x).unwrap();
                assert_eq!(simplest_between(&l, &r).unwrap(), x, "roundtrip of {x}");
            }
        }
    }

    #[test]
    fn canonical_options_sampled_on_transfinite() {
        let (l, r) = canonical_options_sampled(&seq("+^w -"), 2);
        assert!(l.contains(&seq("+^2")));
        assert!(
            r.contains(&seq("+^w")),
            "the limit truncation ω sits above ω−1"
        );
        assert!(l.iter().all(|p| p < &seq("+^w -")));
        assert!(r.iter().all(|p| p > &seq("+^w -")));
    }

    #[test]
    fn witness_passes_for_omega_as_sup_of_integers() {
        // ω = ⟨n | ⟩: the archetypal family cut.
        let spec = CutSpec::new(
            vec![Generator::family("n", |n| {
                Some(SignSeq::plus(Ordinal::finite(n)))
            })],
            vec![],
        );
        let report = check_cut_witness(&seq("+^w"), &spec, 6, 3);
        assert_eq!(report.verdict, Verdict::Pass, "{report}");
        assert!(
            report.exact_cross_check.is_none(),
            "families disable the exact path"
        );
    }

    #[test]
    fn witness_flags_wrong_candidates() {
        let spec = CutSpec::new(
            vec![Generator::family("n", |n| {
                Some(SignSeq::plus(Ordinal::finite(n)))
            })],
            vec![],
        );
        // 3 is below the sampled member 4 on the left: betweenness fails.
        let report = check_cut_witness(&seq("+^3"), &spec, 6, 3);
        assert_eq!(report.verdict, Verdict::Fail, "{report}");

        // ω + 1 and ω − 1 are above all integers but not minimal; their
        // truncation ω is in the interval, which sampling cannot exclude.
        for wrong in ["+^w +", "+^w -"] {
            let report = check_cut_witness(&seq(wrong), &spec, 6, 3);
            assert_eq!(report.verdict, Verdict::UnresolvedAtBound, "{report}");
            assert!(report
                .probes
                .iter()
                .any(|p| p.status == CheckStatus::Unresolved && p.probe == "+^w"));
        }
    }

    #[test]
    fn witness_exact_cross_check_on_concrete_cuts() {
        let spec = CutSpec::new(
            vec![Generator::concrete(SignSeq::empty())],
            vec![Generator::concrete(seq("+"))],
        );
        let good = check_cut_witness(&seq("+ -"), &spec, 4, 4);
        assert_eq!(good.verdict, Verdict::Pass, "{good}");
        assert_eq!(good.exact_cross_check, Some(CheckStatus::Pass));

        // 1/4 lies in (0, 1) but is not the simplest element.
        let bad = check_cut_witness(&seq("+ - -"), &spec, 4, 4);
        assert_eq!(bad.verdict, Verdict::Fail, "{bad}");
        assert_eq!(bad.exact_cross_check, Some(CheckStatus::Fail));
    }

    #[test]
    fn witness_family_members_may_be_missing() {
        // A family defined only for n ≥ 1 (member 0 is None).
        let spec = CutSpec::new(
            vec![Generator::family("n >= 1", |n| {
                (n >= 1).then(|| SignSeq::from_dyadic(&Dyadic::new(-1, n as u32)))
            })],
            vec![Generator::concrete(seq("+"))],
        );
        // ⟨−1/2^n | 1⟩ = 0 for the full family; sampled members all below 0.
        let report = check_cut_witness(&SignSeq::empty(), &spec, 5, 3);
        assert_eq!(report.verdict, Verdict::Pass, "{report}");
    }
}
