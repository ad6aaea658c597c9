//! The ι- and κ-maps, the ε-map, and recognizers for their images.
//!
//! The κ-numbers are the multiplicative-scale representatives
//! `κ_a = ω^{ω^{ι_a}}`, indexed by all surreals `a`. The index map ι has a
//! closed sign-sequence form: reading the block pairs `(α_μ, β_μ)` of `a`
//! with running plus-count `γ_μ`, each pair contributes `ε_{♭γ_μ}` pluses
//! (with `ε_{♭0} := 0`, so nothing) and `ω·β_μ` minuses. Applying the
//! ω-power rendering twice then yields `κ_a` and its log/exp iterates
//! `κ_{a,n}` exactly.
//!
//! The ε-map (the fixed points of the ω-map, indexed by all surreals) has the
//! analogous form with `ε_{γ_μ}` pluses and `(ε_{γ_μ})^ω·β_μ` minuses, and
//! [`is_epsilon_surreal`] decides membership in its image from the block
//! shape alone.
//!
//! [`kappa_recognize`] inverts the whole construction: given a value, it
//! peels two ω-power layers and parses the exponent against the ι-grammar,
//! reconstructing the index `a` and the iterate offset `n` — including the
//! absorption case where a final `ε` plus-run of `ι_a` is swallowed by a
//! longer exp-iterate tail.

use crate::normalform::{omega_pow, NormalForm, Surreal};
use crate::ordinal::Ordinal;
use crate::signseq::{Sign, SignSeq};

#[cfg(feature = "serde")]
use serde::Serialize;

/// `♭γ` as an ε-subscript: `ε_{♭γ}` with the convention `ε_{♭0} := 0`.
/// (`♭γ` is the unique `x` with `1 + x = γ`.)
fn eps_flat(gamma: &Ordinal) -> Ordinal {
    match gamma.as_finite() {
        Some(0) => Ordinal::Zero,
        Some(n) => Ordinal::eps(Ordinal::finite(n - 1)),
        None => Ordinal::eps(gamma.clone()),
    }
}

/// `1 + i`: the inverse of `♭` on counts (`♭(1 + i) = i`).
pub(crate) fn one_plus(i: &Ordinal) -> Ordinal {
    &Ordinal::one() + i
}

/// The ι-map: the κ-index sequence of `a`, in closed form.
///
/// Block pair `(α_μ, β_μ)` of `a` (using the padding pair `(0, 0)` when
/// `a = 0`) contributes `ε_{♭γ_μ}` pluses and `ω·β_μ` minuses, where
/// `γ_μ = α_0 + … + α_μ`. The plus runs are strictly increasing ε-numbers,
/// which is what makes the map invertible.
pub fn iota(a: &SignSeq) -> SignSeq {
    let mut pairs = a.block_pairs();
    if pairs.is_empty() {
        pairs.push((Ordinal::Zero, Ordinal::Zero));
    }
    let mut out = SignSeq::empty();
    let mut gamma = Ordinal::Zero;
    let omega = Ordinal::omega();
    for (alpha, beta) in &pairs {
        gamma = &gamma + alpha;
        out.push(Sign::Plus, eps_flat(&gamma));
        out.push(Sign::Minus, &omega * beta);
    }
    out
}

/// `κ_a = ω^{ω^{ι_a}}` as a normal form.
pub fn kappa(a: &SignSeq) -> NormalForm {
    kappa_iter(a, 0)
}

/// The log/exp iterates of `κ_a`: `kappa_iter(a, n) = log^n(κ_a)` for
/// `n ≥ 0` and `exp^{-n}(κ_a)` for `n < 0`, in closed form.
///
/// The index sequence is `ι_a` followed by `n` minuses (for `n > 0`) or by
/// `Ω^{m}(ε_{♭a⁺} + 1)` pluses for `n = -(m+1)` (a single plus when
/// `m = 0`); the value is the double ω-power of that sequence.
pub fn kappa_iter(a: &SignSeq, n: i64) -> NormalForm {
    let idx = kappa_index_seq(a, n);
    omega_pow(&Surreal::Nf(omega_pow(&Surreal::Seq(idx))))
}

/// The exponent index of `κ_{a,n}`: `κ_{a,n} = ω^{ω^{kappa_index_seq(a, n)}}`.
pub fn kappa_index_seq(a: &SignSeq, n: i64) -> SignSeq {
    let base = iota(a);
    match n.cmp(&0) {
        std::cmp::Ordering::Equal => base,
        std::cmp::Ordering::Greater => base.concat(&SignSeq::minus(Ordinal::finite(n as u64))),
        std::cmp::Ordering::Less => {
            let m = (-n - 1) as u64;
            let tail = if m == 0 {
                Ordinal::one()
            } else {
                let mut t = &eps_flat(&a.plus_count()) + &Ordinal::one();
                for _ in 0..m {
                    t = t.omega_pow();
                }
                t
            };
            base.concat(&SignSeq::plus(tail))
        }
    }
}

/// The sign sequence of `κ_{a,n}` by composing the ω-power block formula
/// twice, independently of the normal-form rendering pipeline.
pub fn kappa_signseq(a: &SignSeq, n: i64) -> SignSeq {
    let idx = kappa_index_seq(a, n);
    let once = omega_pow_pairs(&idx.block_pairs());
    let twice = omega_pow_pairs(&SignSeq::from_block_pairs(&once).block_pairs());
    SignSeq::from_block_pairs(&twice)
}

/// The sign sequence `σ(ω^b)` for an arbitrary sign sequence `b`, via the
/// block formula.
pub(crate) fn render_sigma(b: &SignSeq) -> SignSeq {
    SignSeq::from_block_pairs(&omega_pow_pairs(&b.block_pairs()))
}

/// Block pairs of `σ(ω^b)` from the block pairs of `b`: pair `(α_μ, β_μ)`
/// becomes `(ω^{γ_μ}, ω^{γ_μ+1}·β_μ)`.
fn omega_pow_pairs(pairs: &[(Ordinal, Ordinal)]) -> Vec<(Ordinal, Ordinal)> {
    let padded: Vec<(Ordinal, Ordinal)> = if pairs.is_empty() {
        vec![(Ordinal::Zero, Ordinal::Zero)]
    } else {
        pairs.to_vec()
    };
    let mut out = Vec::with_capacity(padded.len());
    let mut gamma = Ordinal::Zero;
    for (alpha, beta) in &padded {
        gamma = &gamma + alpha;
        let minus_unit = (&gamma + &Ordinal::one()).omega_pow();
        out.push((gamma.omega_pow(), &minus_unit * beta));
    }
    out
}

/// The ε-map: the `a`-th fixed point of the ω-map, in closed form. Block
/// pair `(α_μ, β_μ)` of `a` contributes `ε_{γ_μ}` pluses and
/// `(ε_{γ_μ})^ω·β_μ = ω^{ω^{ε_{γ_μ}+1}}·β_μ` minuses.
pub fn epsilon_map(a: &SignSeq) -> SignSeq {
    let mut pairs = a.block_pairs();
    if pairs.is_empty() {
        pairs.push((Ordinal::Zero, Ordinal::Zero));
    }
    let mut out = SignSeq::empty();
    let mut gamma = Ordinal::Zero;
    for (alpha, beta) in &pairs {
        gamma = &gamma + alpha;
        let eps = Ordinal::eps(gamma.clone());
        out.push(Sign::Plus, eps.clone());
        let minus_unit = (&eps + &Ordinal::one()).omega_pow().omega_pow();
        out.push(Sign::Minus, &minus_unit * beta);
    }
    out
}

/// Decide whether `x` is a generalized ε-number (a fixed point `x = ω^x`,
/// i.e. in the image of [`epsilon_map`]): the first plus run must be
/// nonempty, every plus run must be an ordinal ε-number strictly above all
/// earlier ones, and every minus run must be a left multiple of
/// `(ε)^ω = ω^{ε·ω}` for the ε of its pair.
pub fn is_epsilon_surreal(x: &SignSeq) -> bool {
    let pairs = x.block_pairs();
    if pairs.is_empty() {
        return false;
    }
    let mut prev: Option<Ordinal> = None;
    for (alpha, beta) in &pairs {
        let Ordinal::Eps(_) = alpha else { return false };
        if let Some(p) = &prev {
            if alpha <= p {
                return false;
            }
        }
        prev = Some(alpha.clone());
        if !beta.is_zero() {
            let unit_exp = &(alpha + &Ordinal::one()).omega_pow();
            if beta.left_divide_omega_pow(unit_exp).is_none() {
                return false;
            }
        }
    }
    true
}

/// A recognized κ-iterate: the value equals `log^n(κ_a)` (with negative `n`
/// meaning exp-iterates).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub struct KappaIndex {
    /// The κ-index, as a sign sequence rendered to text for reporting.
    #[cfg_attr(
        feature = "serde",
        serde(serialize_with = "crate::kappa::seq_as_string")
    )]
    pub a: SignSeq,
    /// The iterate offset: `n` applications of log (negative: of exp).
    pub n: i64,
}

#[cfg(feature = "serde")]
fn seq_as_string<S: serde::Serializer>(v: &SignSeq, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// If `x = ω^e` with coefficient 1 (a pure monomial), return `e`.
fn as_pure_power(x: &Surreal) -> Option<Surreal> {
    use num_traits::One;
    let nf = x.to_normalform()?;
    match nf.terms() {
        [(e, r)] if r.is_one() => Some(e.clone()),
        _ => None,
    }
}

/// Recognize `x` as a κ-iterate `κ_{a,n} = log^n(κ_a)`, if it is one.
///
/// Peels `x = ω^{ω^b}` and parses `b` against the ι-grammar: plus runs are
/// strictly increasing `ε_{♭γ}` (decoding `γ`), minus runs are `ω·β` with a
/// possible finite tail giving `n > 0`, and a trailing plus run beyond the
/// grammar is an exp-iterate tail `Ω^m(ε_{♭a⁺}+1)` giving `n = -(m+1)` —
/// where for `m ≥ 1` the tail may have absorbed a final ε plus-run of
/// `ι_a`, which is restored by comparing plus-counts.
pub fn kappa_recognize(x: &Surreal) -> Option<KappaIndex> {
    let e1 = as_pure_power(x)?;
    let e2 = as_pure_power(&e1)?;
    let b = e2.to_signseq().ok()?;
    decode_kappa_index(&b).map(|(a, n)| KappaIndex { a, n })
}

/// Invert [`kappa_index_seq`]: recover `(a, n)` from an index sequence, or
/// `None` when `b` is not of that shape. Infinite minus tails fold into the
/// index (`ι_a ⅋ ω·k⊖` and `ι_{a⅋k⊖}` name the same sequence), so the
/// returned `n` is the canonical finite remainder.
pub(crate) fn decode_kappa_index(b: &SignSeq) -> Option<(SignSeq, i64)> {
    let pairs = b.block_pairs();
    if pairs.is_empty() {
        return Some((SignSeq::empty(), 0));
    }
    let ends_with_plus = pairs.last().map(|(_, beta)| beta.is_zero()) == Some(true);
    let mut a_pairs: Vec<(Ordinal, Ordinal)> = Vec::new();
    let mut gamma_prev = Ordinal::Zero;
    let last_idx = pairs.len() - 1;
    for (idx, (big_a, big_b)) in pairs.iter().enumerate() {
        if idx == last_idx && ends_with_plus {
            return finish_plus_tail(a_pairs, &gamma_prev, big_a);
        }
        let alpha = decode_plus_run(&mut gamma_prev, big_a, idx == 0)?;
        let (limit, fin) = big_b.split_finite();
        let beta = limit.left_divide_omega_pow(&Ordinal::one())?;
        if idx == last_idx {
            a_pairs.push((alpha, beta));
            return Some((SignSeq::from_block_pairs(&a_pairs), fin as i64));
        }
        if fin != 0 || beta.is_zero() {
            return None;
        }
        a_pairs.push((alpha, beta));
    }
    unreachable!("the final pair always returns")
}

/// Decode one ι plus-run: 0 (only allowed first) or `ε_i` with
/// `γ = 1 + i` strictly above the running plus-count; returns the
/// recovered `α` of `a` and advances `γ`.
fn decode_plus_run(gamma_prev: &mut Ordinal, run: &Ordinal, first: bool) -> Option<Ordinal> {
    if run.is_zero() {
        debug_assert!(first, "only the first pair can lack a plus run");
        return Some(Ordinal::Zero);
    }
    let Ordinal::Eps(i) = run else { return None };
    let gamma = one_plus(i);
    let alpha = gamma_prev.left_diff(&gamma)?;
    if alpha.is_zero() && !first {
        return None;
    }
    *gamma_prev = gamma;
    Some(alpha)
}

/// Handle a final plus run `c`, which is either the last ι plus-run itself
/// (`n = 0`), a bare exp tail of one plus possibly fused onto an ι plus-run
/// (`n = -1`), or an ω-power tower `Ω^m(ε+1)` that absorbed any fused
/// ι plus-run (`n = -(m+1)`).
fn finish_plus_tail(
    mut a_pairs: Vec<(Ordinal, Ordinal)>,
    gamma_prev: &Ordinal,
    c: &Ordinal,
) -> Option<(SignSeq, i64)> {
    let push_final_run = |a_pairs: &mut Vec<(Ordinal, Ordinal)>, gamma: &Ordinal| -> Option<()> {
        let alpha = gamma_prev.left_diff(gamma)?;
        if alpha.is_zero() {
            return None;
        }
        a_pairs.push((alpha, Ordinal::Zero));
        Some(())
    };

    // n = 0: the run is an ι plus-run ε_{♭γ} and nothing follows.
    if let Ordinal::Eps(i) = c {
        push_final_run(&mut a_pairs, &one_plus(i))?;
        return Some((SignSeq::from_block_pairs(&a_pairs), 0));
    }

    let (limit, fin) = c.split_finite();
    // n = −1: a single exp plus, fused onto ε_{♭γ} when `a` ends with a plus.
    if fin == 1 {
        match &limit {
            Ordinal::Zero => {}
            Ordinal::Eps(i) => push_final_run(&mut a_pairs, &one_plus(i))?,
            _ => return None,
        }
        return Some((SignSeq::from_block_pairs(&a_pairs), -1));
    }
    if fin != 0 {
        return None;
    }

    // n = −(m+1), m ≥ 1: unwrap the tower ω^{ω^{…^{ε_j + 1}}}.
    let mut cur = c.clone();
    let mut m: i64 = 0;
    let target_plus = loop {
        let terms = cur.cnf_terms();
        let [(exp, 1)] = terms.as_slice() else {
            return None;
        };
        m += 1;
        let (pd, fd) = exp.split_finite();
        if fd == 1 {
            match &pd {
                Ordinal::Zero => break Ordinal::Zero,
                Ordinal::Eps(i) => break one_plus(i),
                _ => return None,
            }
        }
        if fd != 0 {
            return None;
        }
        cur = exp.clone();
    };
    // Reconcile the absorbed plus-run: the tower names a⁺; if the decoded
    // prefix has fewer pluses, the difference is the swallowed final run.
    match gamma_prev.cmp(&target_plus) {
        std::cmp::Ordering::Equal => {}
        std::cmp::Ordering::Less => push_final_run(&mut a_pairs, &target_plus)?,
        std::cmp::Ordering::Greater => return None,
    }
    Some((SignSeq::from_block_pairs(&a_pairs), -(m + 1)))
}

/// Position of a value in the chain of scale classes
/// `ε-numbers ⊂ κ-numbers ⊂ ω^{ω^x} ⊂ ω^x ⊂ everything`; the most specific
/// class is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub enum SurrealClass {
    /// A fixed point of the ω-map.
    #[cfg_attr(feature = "serde", serde(rename = "IN_EPS"))]
    InEps,
    /// `κ_a` for some `a` (iterate offset 0).
    #[cfg_attr(feature = "serde", serde(rename = "IN_KAPPA"))]
    InKappa,
    /// `ω^{ω^b}` for some `b`.
    #[cfg_attr(feature = "serde", serde(rename = "IN_OMEGA_OMEGA"))]
    InOmegaOmega,
    /// `ω^b` for some `b`.
    #[cfg_attr(feature = "serde", serde(rename = "IN_OMEGA"))]
    InOmega,
    /// None of the above.
    #[cfg_attr(feature = "serde", serde(rename = "GENERIC"))]
    Generic,
}

impl std::fmt::Display for SurrealClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SurrealClass::InEps => "IN_EPS",
            SurrealClass::InKappa => "IN_KAPPA",
            SurrealClass::InOmegaOmega => "IN_OMEGA_OMEGA",
            SurrealClass::InOmega => "IN_OMEGA",
            SurrealClass::Generic => "GENERIC",
        };
        write!(f, "{s}")
    }
}

/// The most specific scale class containing `x`.
pub fn class_membership(x: &Surreal) -> SurrealClass {
    if let Ok(s) = x.to_signseq() {
        if is_epsilon_surreal(&s) {
            return SurrealClass::InEps;
        }
    }
    if let Some(k) = kappa_recognize(x) {
        if k.n == 0 {
            return SurrealClass::InKappa;
        }
    }
    if let Some(e1) = as_pure_power(x) {
        if as_pure_power(&e1).is_some() {
            return SurrealClass::InOmegaOmega;
        }
        return SurrealClass::InOmega;
    }
    SurrealClass::Generic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::nf_to_signseq;

    fn seq(s: &str) -> SignSeq {
        s.parse().expect("test sequence parses")
    }

    fn dy(s: &str) -> SignSeq {
        SignSeq::from_dyadic(&s.parse().expect("test dyadic parses"))
    }

    #[test]
    fn iota_small_indices() {
        assert_eq!(iota(&SignSeq::empty()), SignSeq::empty());
        assert_eq!(iota(&dy("1")), seq("+^(eps(0))"));
        assert_eq!(iota(&dy("2")), seq("+^(eps(1))"));
        assert_eq!(iota(&dy("5")), seq("+^(eps(4))"));
        assert_eq!(iota(&dy("-1")), seq("-^w"));
        assert_eq!(iota(&dy("-2")), seq("-^(w*2)"));
        assert_eq!(iota(&seq("+^w")), seq("+^(eps(w))"));
        assert_eq!(iota(&dy("1/2")), seq("+^(eps(0)) -^w"));
        assert_eq!(iota(&dy("-1/2")), seq("-^w +^(eps(0))"));
        assert_eq!(iota(&dy("3/2")), seq("+^(eps(1)) -^w"));
    }

    #[test]
    fn iota_plus_runs_strictly_increase() {
        for s in ["+^3 -^2 +", "- + - +", "+^w - +^2", "+ -^w +"] {
            let i = iota(&seq(s));
            let mut prev: Option<Ordinal> = None;
            for (alpha, _) in i.block_pairs() {
                if !alpha.is_zero() {
                    assert!(
                        matches!(alpha, Ordinal::Eps(_)),
                        "plus run {alpha} in ι({s})"
                    );
                    if let Some(p) = &prev {
                        assert!(alpha > *p, "plus runs must increase in ι({s})");
                    }
                    prev = Some(alpha);
                }
            }
        }
    }

    #[test]
    fn kappa_small_values() {
        // κ_0 = ω, κ_1 = ε_0, κ_2 = ε_1, κ_{m+1} = ε_m.
        assert_eq!(
            nf_to_signseq(&kappa(&SignSeq::empty())).unwrap(),
            seq("+^w")
        );
        assert_eq!(nf_to_signseq(&kappa(&dy("1"))).unwrap(), seq("+^(eps(0))"));
        assert_eq!(nf_to_signseq(&kappa(&dy("2"))).unwrap(), seq("+^(eps(1))"));
        assert_eq!(nf_to_signseq(&kappa(&dy("3"))).unwrap(), seq("+^(eps(2))"));
        // κ_{−1} = ω^{ω^{−ω}}.
        assert_eq!(
            nf_to_signseq(&kappa(&dy("-1"))).unwrap(),
            seq("+^w -^(w^(4))")
        );
    }

    #[test]
    fn kappa_iterates_in_closed_form() {
        // log κ_0 = ω^{ω^{−1}} and log² κ_0 = ω^{ω^{−2}}.
        assert_eq!(
            nf_to_signseq(&kappa_iter(&SignSeq::empty(), 1)).unwrap(),
            seq("+^w -^(w^(3))")
        );
        assert_eq!(kappa_index_seq(&SignSeq::empty(), 2), seq("-^2"));
        // exp κ_0 = ω^ω, exp² κ_0 = ω^{ω^ω}.
        assert_eq!(kappa_index_seq(&SignSeq::empty(), -1), seq("+"));
        assert_eq!(kappa_index_seq(&SignSeq::empty(), -2), seq("+^w"));
        assert_eq!(kappa_index_seq(&SignSeq::empty(), -3), seq("+^(w^(w))"));
        // log κ_1 = ω^{ω^{ε_0 − 1}} with index ι_1 ⅋ ⊖.
        assert_eq!(kappa_index_seq(&dy("1"), 1), seq("+^(eps(0)) -"));
        assert_eq!(
            nf_to_signseq(&kappa_iter(&dy("1"), 1)).unwrap(),
            seq("+^(eps(0)) -^(w^(eps(0)*2 + 1))")
        );
        // exp κ_1 = ω^{ω^{ε_0+1}}; exp² κ_1 has the absorbed index ω^{ε_0+1}.
        assert_eq!(kappa_index_seq(&dy("1"), -1), seq("+^(eps(0) + 1)"));
        assert_eq!(kappa_index_seq(&dy("1"), -2), seq("+^(w^(eps(0) + 1))"));
    }

    #[test]
    fn kappa_signseq_matches_rendering_route() {
        let indices = ["0", "1", "2", "-1", "-2", "1/2", "-1/2", "3/4", "3/2"];
        for a in &indices {
            for n in -2..=2 {
                let a = dy(a);
                assert_eq!(
                    kappa_signseq(&a, n),
                    nf_to_signseq(&kappa_iter(&a, n)).unwrap(),
                    "κ_({a}, {n}) via block pairs vs via normal form"
                );
            }
        }
        let omega_idx = seq("+^w");
        for n in -2..=2 {
            assert_eq!(
                kappa_signseq(&omega_idx, n),
                nf_to_signseq(&kappa_iter(&omega_idx, n)).unwrap()
            );
        }
    }

    #[test]
    fn epsilon_map_values() {
        assert_eq!(epsilon_map(&SignSeq::empty()), seq("+^(eps(0))"));
        assert_eq!(epsilon_map(&dy("1")), seq("+^(eps(1))"));
        assert_eq!(epsilon_map(&dy("2")), seq("+^(eps(2))"));
        assert_eq!(epsilon_map(&seq("+^w")), seq("+^(eps(w))"));
        assert_eq!(
            epsilon_map(&dy("-1")),
            seq("+^(eps(0)) -^(w^(w^(eps(0) + 1)))"),
            "the ε of -1 hangs one (ε_0)^ω minus block after ε_0"
        );
        assert_eq!(
            epsilon_map(&dy("1/2")),
            seq("+^(eps(1)) -^(w^(w^(eps(1) + 1)))")
        );
    }

    #[test]
    fn epsilon_map_images_satisfy_the_criterion() {
        for s in ["0", "1", "-1", "1/2", "-1/2", "2", "5/4"] {
            let image = epsilon_map(&dy(s));
            assert!(is_epsilon_surreal(&image), "ε_({s}) = {image}");
        }
        assert!(is_epsilon_surreal(&epsilon_map(&seq("+^w - +"))));
    }

    #[test]
    fn epsilon_criterion_rejects_non_fixed_points() {
        assert!(!is_epsilon_surreal(&SignSeq::empty()));
        assert!(!is_epsilon_surreal(&seq("+^w")), "ω is not a fixed point");
        assert!(!is_epsilon_surreal(&seq("+^(eps(0)) +")), "ε_0 + 1 is not");
        assert!(
            !is_epsilon_surreal(&seq("+^(eps(0)) -^w")),
            "the ι of 1/2 is not"
        );
        assert!(!is_epsilon_surreal(&seq("-^(eps(0))")));
        assert!(
            !is_epsilon_surreal(&seq("+^(eps(1)) -^w +^(eps(0))")),
            "plus runs must increase"
        );
    }

    #[test]
    fn recognizer_roundtrips_closed_forms() {
        let indices = [
            "0", "1", "2", "-1", "-2", "1/2", "-1/2", "3/4", "-3/4", "3/2",
        ];
        for a in &indices {
            for n in -3..=3 {
                let a = dy(a);
                let value = Surreal::Nf(kappa_iter(&a, n));
                let got = kappa_recognize(&value)
                    .unwrap_or_else(|| panic!("κ_({a}, {n}) = {value} must be recognized"));
                assert_eq!(
                    (got.a.clone(), got.n),
                    (a.clone(), n),
                    "decode of κ_({a}, {n})"
                );
            }
        }
        let omega_idx = seq("+^w");
        for n in -3..=3 {
            let got = kappa_recognize(&Surreal::Nf(kappa_iter(&omega_idx, n))).unwrap();
            assert_eq!((got.a, got.n), (omega_idx.clone(), n));
        }
    }

    #[test]
    fn recognizer_accepts_plain_descriptions() {
        // ω itself, in sequence form.
        let got = kappa_recognize(&Surreal::Seq(seq("+^w"))).unwrap();
        assert_eq!((got.a, got.n), (SignSeq::empty(), 0));
        // ε_1 as an ordinal sequence is κ_2.
        let got = kappa_recognize(&Surreal::Seq(seq("+^(eps(1))"))).unwrap();
        assert_eq!((got.a, got.n), (dy("2"), 0));
    }

    #[test]
    fn recognizer_rejects_non_kappa_values() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let two = BigRational::from(BigInt::from(2));
        let one = BigRational::from(BigInt::from(1));
        // ω² = ω^2 has a non-ι exponent; ω·2 is not even a pure power.
        let w2 = Surreal::Nf(NormalForm::monomial(Surreal::integer(2), one.clone()));
        assert!(kappa_recognize(&w2).is_none());
        let w_twice = Surreal::Nf(NormalForm::monomial(Surreal::integer(1), two));
        assert!(kappa_recognize(&w_twice).is_none());
        assert!(kappa_recognize(&Surreal::integer(1)).is_none());
        assert!(kappa_recognize(&Surreal::zero()).is_none());
        // ω^{ω^{ω·2}}: the tower tail must end at a successor of an ε or 0.
        let e = Surreal::Seq(seq("+^(w*2)"));
        let val = Surreal::Nf(omega_pow(&Surreal::Nf(omega_pow(&e))));
        assert!(kappa_recognize(&val).is_none());
    }

    #[test]
    fn class_membership_chain() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let one = BigRational::from(BigInt::from(1));
        // The five canonical examples, one per class.
        assert_eq!(
            class_membership(&Surreal::Seq(seq("+^(eps(0))"))),
            SurrealClass::InEps
        );
        let kappa_m1 = Surreal::Nf(kappa(&dy("-1")));
        assert_eq!(class_membership(&kappa_m1), SurrealClass::InKappa);
        let log_k0 = Surreal::Nf(kappa_iter(&SignSeq::empty(), 1));
        assert_eq!(class_membership(&log_k0), SurrealClass::InOmegaOmega);
        let w2 = Surreal::Nf(NormalForm::monomial(Surreal::integer(2), one));
        assert_eq!(class_membership(&w2), SurrealClass::InOmega);
        assert_eq!(
            class_membership(&Surreal::from_dyadic(&crate::dyadic::Dyadic::half())),
            SurrealClass::Generic
        );
        // ω is a κ-number before it is a double power.
        assert_eq!(
            class_membership(&Surreal::Seq(seq("+^w"))),
            SurrealClass::InKappa
        );
        // ω^ω = exp(κ_0) is a double power but not a κ proper.
        assert_eq!(
            class_membership(&Surreal::Nf(kappa_iter(&SignSeq::empty(), -1))),
            SurrealClass::InOmegaOmega
        );
    }
}
