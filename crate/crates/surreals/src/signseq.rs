//! Transfinite sign sequences: surreal numbers as ordinal-indexed `±` strings.
//!
//! A surreal number is identified with its *sign sequence*: a function from an
//! ordinal (its birthday, or length) to `{⊖, ⊕}`. This module stores such
//! sequences in run-length form — alternating blocks of pluses and minuses
//! with ordinal counts — and implements the order, the simplicity relation,
//! prefix/truncation machinery, and the conversions to and from dyadic
//! rationals (which are exactly the finite-length sequences).
//!
//! Order is lexicographic with the convention `⊖ <` (end of sequence) `< ⊕`:
//! at the first position where two sequences differ (running off the end
//! counts as differing), a plus wins and a minus loses.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::ordinal::Ordinal;
use crate::{Error, Result};

/// One sign of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `⊖`, written `-`.
    Minus,
    /// `⊕`, written `+`.
    Plus,
}

impl Sign {
    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// A surreal number as a run-length-encoded transfinite sign sequence.
///
/// Invariant: block signs strictly alternate and every count is a nonzero
/// ordinal. The empty sequence is the surreal 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignSeq {
    blocks: Vec<(Sign, Ordinal)>,
}

impl SignSeq {
    /// The empty sequence (the surreal number 0).
    pub fn empty() -> Self {
        SignSeq::default()
    }

    /// A single block.
    pub fn single(sign: Sign, count: Ordinal) -> Self {
        let mut s = SignSeq::empty();
        s.push(sign, count);
        s
    }

    /// `count` pluses.
    pub fn plus(count: Ordinal) -> Self {
        SignSeq::single(Sign::Plus, count)
    }

    /// `count` minuses.
    pub fn minus(count: Ordinal) -> Self {
        SignSeq::single(Sign::Minus, count)
    }

    /// The ordinal `o` as a surreal: `o` pluses.
    pub fn from_ordinal(o: &Ordinal) -> Self {
        SignSeq::plus(o.clone())
    }

    /// The value as an ordinal, if the sequence is all pluses.
    pub fn as_ordinal(&self) -> Option<Ordinal> {
        match self.blocks.as_slice() {
            [] => Some(Ordinal::Zero),
            [(Sign::Plus, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// True iff this is the empty sequence (the number 0).
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The run-length blocks, alternating in sign.
    pub fn runs(&self) -> &[(Sign, Ordinal)] {
        &self.blocks
    }

    /// The first sign, if any. `Some(Plus)` iff the value is positive.
    pub fn first_sign(&self) -> Option<Sign> {
        self.blocks.first().map(|(s, _)| *s)
    }

    /// The sequence length (the value's birthday): ordered sum of run counts.
    pub fn len(&self) -> Ordinal {
        let mut total = Ordinal::Zero;
        for (_, c) in &self.blocks {
            total = &total + c;
        }
        total
    }

    /// Append `count` copies of `sign`, fusing with a trailing run of the same
    /// sign (counts add as ordinals, so `⊕ ⅋ ⊕^ω = ⊕^ω`).
    pub fn push(&mut self, sign: Sign, count: Ordinal) {
        if count.is_zero() {
            return;
        }
        if let Some((s, c)) = self.blocks.last_mut() {
            if *s == sign {
                *c = &*c + &count;
                return;
            }
        }
        self.blocks.push((sign, count));
    }

    /// `self` followed by `other` (written `self ⅋ other`).
    pub fn concat(&self, other: &SignSeq) -> SignSeq {
        let mut out = self.clone();
        for (s, c) in &other.blocks {
            out.push(*s, c.clone());
        }
        out
    }

    /// The negation: every sign flipped.
    pub fn negate(&self) -> SignSeq {
        SignSeq {
            blocks: self
                .blocks
                .iter()
                .map(|(s, c)| (s.flip(), c.clone()))
                .collect(),
        }
    }

    /// The first `p` signs (all of `self` if `p ≥ len`).
    pub fn truncate_to(&self, p: &Ordinal) -> SignSeq {
        let mut out = SignSeq::empty();
        let mut rem = p.clone();
        for (s, c) in &self.blocks {
            if rem.is_zero() {
                break;
            }
            match c.left_diff(&rem) {
                // c ≤ rem: the whole run fits.
                Some(rest) => {
                    out.push(*s, c.clone());
                    rem = rest;
                }
                // c > rem: take the first rem signs of this run.
                None => {
                    out.push(*s, rem);
                    break;
                }
            }
        }
        out
    }

    /// The longest common initial segment of `self` and `other`.
    pub fn common_prefix(&self, other: &SignSeq) -> SignSeq {
        let mut out = SignSeq::empty();
        let mut a = RunCursor::new(self);
        let mut b = RunCursor::new(other);
        while let (Some((sa, ra)), Some((sb, rb))) = (a.current(), b.current()) {
            if sa != sb {
                break;
            }
            let step = if ra <= rb { ra } else { rb };
            out.push(sa, step.clone());
            a.advance(&step);
            b.advance(&step);
        }
        out
    }

    /// True iff `self` is an initial segment of `other` (possibly all of it).
    pub fn is_prefix_of(&self, other: &SignSeq) -> bool {
        self.common_prefix(other) == *self
    }

    /// The simplicity order: `self` is simpler than `other` iff it is a
    /// *proper* initial segment.
    pub fn is_simpler(&self, other: &SignSeq) -> bool {
        self != other && self.is_prefix_of(other)
    }

    /// True iff the two sequences agree at every position `ξ ≤ pos`.
    pub fn agrees_through(&self, other: &SignSeq, pos: &Ordinal) -> bool {
        let through = pos + &Ordinal::one();
        self.truncate_to(&through) == other.truncate_to(&through)
    }

    /// Decompose into consecutive (plus-count, minus-count) pairs
    /// `(α_0, β_0), (α_1, β_1), …`: `α_0 = 0` iff the sequence starts with a
    /// minus, and `β` of the final pair is 0 iff it ends with a plus.
    pub fn block_pairs(&self) -> Vec<(Ordinal, Ordinal)> {
        let mut pairs: Vec<(Ordinal, Ordinal)> = Vec::new();
        for (s, c) in &self.blocks {
            match s {
                Sign::Plus => pairs.push((c.clone(), Ordinal::Zero)),
                Sign::Minus => match pairs.last_mut() {
                    Some(p) if p.1.is_zero() => p.1 = c.clone(),
                    _ => pairs.push((Ordinal::Zero, c.clone())),
                },
            }
        }
        pairs
    }

    /// Rebuild a sequence from (plus-count, minus-count) pairs, skipping
    /// zero counts.
    pub fn from_block_pairs(pairs: &[(Ordinal, Ordinal)]) -> SignSeq {
        let mut out = SignSeq::empty();
        for (alpha, beta) in pairs {
            out.push(Sign::Plus, alpha.clone());
            out.push(Sign::Minus, beta.clone());
        }
        out
    }

    /// Total number of pluses `self⁺`: the ordered ordinal sum of the plus
    /// runs.
    pub fn plus_count(&self) -> Ordinal {
        let mut total = Ordinal::Zero;
        for (s, c) in &self.blocks {
            if *s == Sign::Plus {
                total = &total + c;
            }
        }
        total
    }

    /// Total number of minuses, as [`SignSeq::plus_count`] mirrored.
    pub fn minus_count(&self) -> Ordinal {
        self.negate().plus_count()
    }

    /// `γ_μ`: the partial plus-count through pair `μ` of
    /// [`SignSeq::block_pairs`], i.e. `α_0 + … + α_μ` as an ordered ordinal
    /// sum.
    ///
    /// # Errors
    /// [`Error::Domain`] if `μ` is out of range.
    pub fn gamma_prefix(&self, mu: usize) -> Result<Ordinal> {
        let pairs = self.block_pairs();
        if mu >= pairs.len() {
            return Err(Error::Domain(format!(
                "gamma_prefix index {mu} out of range for {} pair(s)",
                pairs.len()
            )));
        }
        let mut total = Ordinal::Zero;
        for (alpha, _) in &pairs[..=mu] {
            total = &total + alpha;
        }
        Ok(total)
    }

    /// Remove the leading plus (`♭`): the unique `x` with `⊕ ⅋ x = self`.
    ///
    /// On the first run count this is `c ↦ x` with `1 + x = c`, so a finite
    /// count drops by one and an infinite count is unchanged.
    ///
    /// # Errors
    /// [`Error::Domain`] if the sequence is empty or starts with a minus.
    pub fn flat(&self) -> Result<SignSeq> {
        match self.blocks.first() {
            Some((Sign::Plus, c)) => {
                let mut out = SignSeq::empty();
                let reduced = match c.as_finite() {
                    Some(n) => Ordinal::finite(n - 1),
                    None => c.clone(),
                };
                out.push(Sign::Plus, reduced);
                for (s, c) in &self.blocks[1..] {
                    out.push(*s, c.clone());
                }
                Ok(out)
            }
            Some((Sign::Minus, _)) => Err(Error::Domain(
                "flat requires a sequence starting with a plus".into(),
            )),
            None => Err(Error::Domain("flat of the empty sequence".into())),
        }
    }

    /// Remove the leading minus (`♯`): mirror image of [`SignSeq::flat`].
    ///
    /// # Errors
    /// [`Error::Domain`] if the sequence is empty or starts with a plus.
    pub fn sharp(&self) -> Result<SignSeq> {
        match self.blocks.first() {
            Some((Sign::Minus, _)) => Ok(self.negate().flat().expect("starts with plus").negate()),
            Some((Sign::Plus, _)) => Err(Error::Domain(
                "sharp requires a sequence starting with a minus".into(),
            )),
            None => Err(Error::Domain("sharp of the empty sequence".into())),
        }
    }

    /// A bounded sample of the proper initial segments of `self`, suitable as
    /// probe set for cut verification.
    ///
    /// For every run the sample contains the run's start position, the first
    /// `k` and last `k` positions inside it, and — when the count is a limit
    /// or has a limit part `P` — the fundamental-sequence points `P[0..=k]`
    /// and the limit position itself. Truncations at those positions are
    /// returned in increasing length order, starting with the empty prefix;
    /// the full sequence is not included.
    pub fn truncation_probes(&self, k: u64) -> Vec<SignSeq> {
        let total = self.len();
        let mut positions: BTreeSet<Ordinal> = BTreeSet::new();
        let mut base = Ordinal::Zero;
        for (_, c) in &self.blocks {
            positions.insert(base.clone());
            for j in 1..=k {
                let oj = Ordinal::finite(j);
                if oj < *c {
                    positions.insert(&base + &oj);
                }
            }
            let (limit, fin) = c.split_finite();
            if !limit.is_zero() {
                for n in 0..=k {
                    let fs = limit
                        .fundamental_sequence(n)
                        .expect("nonzero limit parts are limits");
                    positions.insert(&base + &fs);
                }
                if fin > 0 {
                    positions.insert(&base + &limit);
                }
                for j in 1..=fin.min(k) {
                    positions.insert(&base + &(&limit + &Ordinal::finite(fin - j)));
                }
            } else {
                for j in 1..=fin.min(k) {
                    positions.insert(&base + &Ordinal::finite(fin - j));
                }
            }
            base = &base + c;
        }
        positions.remove(&total);
        positions.iter().map(|p| self.truncate_to(p)).collect()
    }

    /// The value as a dyadic rational.
    ///
    /// # Errors
    /// [`Error::NotDyadic`] if the sequence is transfinite (some run count is
    /// infinite).
    pub fn to_dyadic(&self) -> Result<Dyadic> {
        let mut signs: Vec<bool> = Vec::new();
        for (s, c) in &self.blocks {
            let n = c.as_finite().ok_or_else(|| {
                Error::NotDyadic(format!("{self} is transfinite, not a dyadic rational"))
            })?;
            signs.extend(std::iter::repeat_n(*s == Sign::Plus, n as usize));
        }
        Ok(Dyadic::from_signs(&signs))
    }

    /// The sign sequence of a dyadic rational; inverse of
    /// [`SignSeq::to_dyadic`].
    pub fn from_dyadic(d: &Dyadic) -> SignSeq {
        let mut out = SignSeq::empty();
        for plus in d.sign_expansion() {
            out.push(if plus { Sign::Plus } else { Sign::Minus }, Ordinal::one());
        }
        out
    }
}

/// A read cursor over the runs of a sequence, supporting ordinal-sized steps.
struct RunCursor<'a> {
    blocks: &'a [(Sign, Ordinal)],
    idx: usize,
    /// How much of the current run has been consumed.
    consumed: Ordinal,
}

impl<'a> RunCursor<'a> {
    fn new(seq: &'a SignSeq) -> Self {
        RunCursor {
            blocks: &seq.blocks,
            idx: 0,
            consumed: Ordinal::Zero,
        }
    }

    /// The current sign and how many copies of it remain, or `None` at the end.
    fn current(&self) -> Option<(Sign, Ordinal)> {
        let (s, c) = self.blocks.get(self.idx)?;
        let rem = self
            .consumed
            .left_diff(c)
            .expect("consumed never exceeds the run count");
        Some((*s, rem))
    }

    /// Consume `step` signs; `step` must not exceed the current remainder.
    fn advance(&mut self, step: &Ordinal) {
        self.consumed = &self.consumed + step;
        let (_, c) = &self.blocks[self.idx];
        if self.consumed == *c {
            self.idx += 1;
            self.consumed = Ordinal::Zero;
        }
    }
}

impl PartialOrd for SignSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignSeq {
    /// Lexicographic with `⊖ <` end `< ⊕` at the first divergence.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = RunCursor::new(self);
        let mut b = RunCursor::new(other);
        loop {
            match (a.current(), b.current()) {
                (None, None) => return Ordering::Equal,
                (None, Some((sb, _))) => {
                    // self ended; other continues with sb.
                    return match sb {
                        Sign::Plus => Ordering::Less,
                        Sign::Minus => Ordering::Greater,
                    };
                }
                (Some((sa, _)), None) => {
                    return match sa {
                        Sign::Plus => Ordering::Greater,
                        Sign::Minus => Ordering::Less,
                    };
                }
                (Some((sa, ra)), Some((sb, rb))) => {
                    if sa != sb {
                        return match sa {
                            Sign::Plus => Ordering::Greater,
                            Sign::Minus => Ordering::Less,
                        };
                    }
                    let step = if ra <= rb { ra } else { rb };
                    a.advance(&step);
                    b.advance(&step);
                }
            }
        }
    }
}

impl fmt::Display for SignSeq {
    /// Runs joined by spaces: `+`, `+^3`, `+^w`, `+^(w^(2))`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
            match c.as_finite() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None => {
                    if *c == Ordinal::omega() {
                        write!(f, "^w")?;
                    } else {
                        write!(f, "^({c})")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SignSeq {
    type Err = Error;

    /// Parse the run syntax emitted by [`Display`]; runs may repeat a sign and
    /// are fused, so `+ +` parses as `+^2`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(SignSeq::empty());
        }
        let bytes = t.as_bytes();
        let mut out = SignSeq::empty();
        let mut pos = 0;
        while pos < bytes.len() {
            while pos < bytes.len() && bytes[pos] == b' ' {
                pos += 1;
            }
            if pos == bytes.len() {
                break;
            }
            let sign = match bytes[pos] {
                b'+' => Sign::Plus,
                b'-' => Sign::Minus,
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `+` or `-`".into(),
                    });
                }
            };
            pos += 1;
            let count = if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'(' {
                    // Parenthesized ordinal expression; find the matching `)`.
                    let start = pos + 1;
                    let mut depth = 1;
                    let mut end = start;
                    while end < bytes.len() && depth > 0 {
                        match bytes[end] {
                            b'(' => depth += 1,
                            b')' => depth -= 1,
                            _ => {}
                        }
                        end += 1;
                    }
                    if depth != 0 {
                        return Err(Error::Parse {
                            pos,
                            msg: "unbalanced `(`".into(),
                        });
                    }
                    let inner: Ordinal = t[start..end - 1].parse().map_err(|e| match e {
                        Error::Parse { pos: p, msg } => Error::Parse {
                            pos: start + p,
                            msg,
                        },
                        other => other,
                    })?;
                    pos = end;
                    inner
                } else if pos < bytes.len() && bytes[pos] == b'w' {
                    pos += 1;
                    Ordinal::omega()
                } else {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(Error::Parse {
                            pos,
                            msg: "expected a run count after `^`".into(),
                        });
                    }
                    let n: u64 = t[start..pos].parse().map_err(|_| Error::Parse {
                        pos: start,
                        msg: "run count out of range".into(),
                    })?;
                    Ordinal::finite(n)
                }
            } else {
                Ordinal::one()
            };
            if count.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "run count must be nonzero".into(),
                });
            }
            out.push(sign, count);
        }
        if out.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty sign sequence; write `0`".into(),
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        s.parse().expect("test sequence parses")
    }

    fn ord(s: &str) -> Ordinal {
        s.parse().expect("test ordinal parses")
    }

    #[test]
    fn push_fuses_and_absorbs() {
        let mut s = SignSeq::empty();
        s.push(Sign::Plus, Ordinal::one());
        s.push(Sign::Plus, Ordinal::omega());
        assert_eq!(s, seq("+^w"), "1 + ω = ω inside a fused run");
        s.push(Sign::Minus, Ordinal::finite(2));
        s.push(Sign::Plus, Ordinal::Zero);
        assert_eq!(s, seq("+^w -^2"), "zero-count pushes are no-ops");
    }

    #[test]
    fn ordering_lex_with_end_between() {
        // ⊖ < end < ⊕ at the first divergence.
        assert!(seq("+^w -") < seq("+^w"), "ω − 1 < ω");
        assert!(seq("+^w") < seq("+^w +"), "ω < ω + 1");
        assert!(seq("-") < SignSeq::empty());
        assert!(SignSeq::empty() < seq("+"));
        assert!(seq("- +") < SignSeq::empty(), "−1/2 < 0");
        assert!(seq("+ -") < seq("+"), "1/2 < 1");
        assert!(seq("+ -") > SignSeq::empty(), "1/2 > 0");
        assert!(seq("+^w - +") < seq("+^w"), "divergence inside a run");
        assert_eq!(seq("+^2 +").cmp(&seq("+^3")), Ordering::Equal);
    }

    #[test]
    fn ordering_matches_dyadic_values() {
        let values: Vec<SignSeq> = (-24..=24)
            .map(|n| SignSeq::from_dyadic(&Dyadic::new(n, 3)))
            .collect();
        for a in &values {
            for b in &values {
                assert_eq!(
                    a.cmp(b),
                    a.to_dyadic().unwrap().cmp(&b.to_dyadic().unwrap()),
                    "sequence order vs value order for {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn simplicity_is_proper_prefix() {
        assert!(SignSeq::empty().is_simpler(&seq("+ -")));
        assert!(seq("+").is_simpler(&seq("+ -")));
        assert!(!seq("+").is_simpler(&seq("+")));
        assert!(!seq("+").is_simpler(&seq("- +")));
        assert!(seq("+^w").is_simpler(&seq("+^w +")));
        assert!(seq("+^3").is_simpler(&seq("+^w")), "3 is simpler than ω");
        assert!(!seq("+^w").is_simpler(&seq("+^3")));
    }

    #[test]
    fn truncation_takes_initial_segments() {
        let a = seq("+^w -^w");
        assert_eq!(a.truncate_to(&ord("3")), seq("+^3"));
        assert_eq!(a.truncate_to(&ord("w")), seq("+^w"));
        assert_eq!(a.truncate_to(&ord("w + 1")), seq("+^w -"));
        assert_eq!(
            a.truncate_to(&ord("w*3")),
            a,
            "over-long prefix is the whole"
        );
        assert_eq!(a.truncate_to(&Ordinal::Zero), SignSeq::empty());
    }

    #[test]
    fn common_prefix_and_agreement() {
        let a = seq("+^w -^2 +");
        let b = seq("+^w -^3");
        assert_eq!(a.common_prefix(&b), seq("+^w -^2"));
        assert!(a.agrees_through(&b, &ord("w + 1")));
        assert!(!a.agrees_through(&b, &ord("w + 2")));
        assert_eq!(seq("+").common_prefix(&seq("-")), SignSeq::empty());
    }

    #[test]
    fn lengths_and_counts() {
        let a = seq("+^w -^2 +^3");
        assert_eq!(a.len(), ord("w + 5"));
        assert_eq!(a.plus_count(), ord("w + 3"));
        assert_eq!(a.minus_count(), ord("2"));
        assert_eq!(seq("-^w +").plus_count(), ord("1"));
        assert_eq!(SignSeq::empty().len(), Ordinal::Zero);
    }

    #[test]
    fn block_pairs_pad_at_both_ends() {
        assert_eq!(
            seq("+^w -^2 +^3").block_pairs(),
            vec![(ord("w"), ord("2")), (ord("3"), Ordinal::Zero)]
        );
        assert_eq!(
            seq("-^2 +").block_pairs(),
            vec![(Ordinal::Zero, ord("2")), (Ordinal::one(), Ordinal::Zero)]
        );
        let a = seq("+^w -^w +^w");
        assert_eq!(SignSeq::from_block_pairs(&a.block_pairs()), a);
    }

    #[test]
    fn gamma_prefix_accumulates_plus_runs() {
        let a = seq("+^w -^2 +^3 - +");
        assert_eq!(a.gamma_prefix(0).unwrap(), ord("w"));
        assert_eq!(a.gamma_prefix(1).unwrap(), ord("w + 3"));
        assert_eq!(a.gamma_prefix(2).unwrap(), ord("w + 4"));
        assert!(matches!(a.gamma_prefix(3), Err(Error::Domain(_))));
    }

    #[test]
    fn flat_and_sharp() {
        assert_eq!(seq("+^3 -").flat().unwrap(), seq("+^2 -"));
        assert_eq!(seq("+ -^w").flat().unwrap(), seq("-^w"));
        assert_eq!(seq("+^w").flat().unwrap(), seq("+^w"), "1 + ω = ω");
        assert_eq!(seq("+^(w + 2)").flat().unwrap(), seq("+^(w + 2)"));
        assert_eq!(seq("-^3 +").sharp().unwrap(), seq("-^2 +"));
        assert_eq!(seq("-^w").sharp().unwrap(), seq("-^w"));
        assert!(matches!(seq("-").flat(), Err(Error::Domain(_))));
        assert!(matches!(seq("+").sharp(), Err(Error::Domain(_))));
        assert!(matches!(SignSeq::empty().flat(), Err(Error::Domain(_))));
    }

    #[test]
    fn dyadic_conversion_roundtrip() {
        for num in -20..=20 {
            for exp in 0..4 {
                let d = Dyadic::new(num, exp);
                let s = SignSeq::from_dyadic(&d);
                assert_eq!(s.to_dyadic().unwrap(), d, "round-trip of {d}");
            }
        }
        assert_eq!(seq("+ - +").to_dyadic().unwrap(), Dyadic::new(3, 2));
        assert!(matches!(seq("+^w").to_dyadic(), Err(Error::NotDyadic(_))));
    }

    #[test]
    fn truncation_probes_cover_run_interiors_and_limits() {
        let probes = seq("+^w").truncation_probes(3);
        let lengths: Vec<Ordinal> = probes.iter().map(|p| p.len()).collect();
        assert_eq!(lengths, vec![ord("0"), ord("1"), ord("2"), ord("3")]);

        let probes = seq("+^(w + 2)").truncation_probes(3);
        let lengths: Vec<Ordinal> = probes.iter().map(|p| p.len()).collect();
        assert_eq!(
            lengths,
            vec![
                ord("0"),
                ord("1"),
                ord("2"),
                ord("3"),
                ord("w"),
                ord("w + 1")
            ],
            "limit point and last positions before the end"
        );

        let probes = seq("+^1000").truncation_probes(2);
        let lengths: Vec<Ordinal> = probes.iter().map(|p| p.len()).collect();
        assert_eq!(
            lengths,
            vec![ord("0"), ord("1"), ord("2"), ord("998"), ord("999")]
        );

        let probes = seq("+^w -^w").truncation_probes(2);
        let lengths: Vec<Ordinal> = probes.iter().map(|p| p.len()).collect();
        assert_eq!(
            lengths,
            vec![
                ord("0"),
                ord("1"),
                ord("2"),
                ord("w"),
                ord("w + 1"),
                ord("w + 2")
            ],
        );

        let probes = seq("+^(w^(2))").truncation_probes(2);
        let lengths: Vec<Ordinal> = probes.iter().map(|p| p.len()).collect();
        assert_eq!(
            lengths,
            vec![ord("0"), ord("1"), ord("2"), ord("w"), ord("w*2")],
            "fundamental-sequence points of the limit count"
        );

        for p in seq("+^w -^2 +").truncation_probes(3) {
            assert!(
                p.is_simpler(&seq("+^w -^2 +")),
                "{p} must be a proper prefix"
            );
        }
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in [
            "0",
            "+",
            "-",
            "+^2",
            "+^w",
            "-^w +",
            "+^w -^(w^(2)) +^3",
            "+^(eps(0)) -",
        ] {
            let v = seq(s);
            assert_eq!(v.to_string(), s, "printer is canonical");
            assert_eq!(v.to_string().parse::<SignSeq>().unwrap(), v);
        }
        assert_eq!(seq("+ +"), seq("+^2"), "repeated signs fuse");
        assert_eq!(seq(" +^w  - "), seq("+^w -"), "whitespace is forgiven");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!("x".parse::<SignSeq>(), Err(Error::Parse { .. })));
        assert!(matches!("+^".parse::<SignSeq>(), Err(Error::Parse { .. })));
        assert!(matches!("+^0".parse::<SignSeq>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "+^(w".parse::<SignSeq>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!("".parse::<SignSeq>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn negate_flips_order() {
        let a = seq("+^w -");
        let b = seq("+^3");
        assert!(a > b);
        assert!(a.negate() < b.negate());
        assert_eq!(a.negate().negate(), a);
    }
}
