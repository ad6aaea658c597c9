//! Conway normal forms `Σ ω^{a_i}·r_i` and their sign-sequence rendering.
//!
//! Every surreal number has a unique normal form: a (here, finite) sum of
//! monomials `ω^{a_i} r_i` with strictly decreasing surreal exponents `a_i`
//! and nonzero rational coefficients `r_i`. [`NormalForm`] stores that shape;
//! [`Surreal`] is the working representation of a number, either a sign
//! sequence or a normal form, compared semantically.
//!
//! The centerpiece is [`nf_to_signseq`]: the closed formula that turns a
//! normal form with dyadic coefficients into its exact sign sequence. Each
//! monomial `ω^a` contributes, per block pair `(α_μ, β_μ)` of `a`, a run of
//! `ω^{γ_μ}` pluses followed by `ω^{γ_μ+1}·β_μ` minuses, where `γ_μ` is the
//! running plus-count of `a`. A real multiple `ω^a·r` then appends the sign
//! expansion of `r` (first plus dropped) with every sign inflated to
//! `ω^{a⁺}` copies, and a negative `r` flips the whole segment. Summands
//! after the first are rendered from *reduced* exponents
//! ([`reduced_sequence`]): a minus of `a_i` is suppressed wherever some
//! earlier exponent agrees with `a_i` up to and including that position.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;
use crate::ordinal::Ordinal;
use crate::signseq::{Sign, SignSeq};
use crate::{Error, Result};

/// A surreal number, as a sign sequence or in Conway normal form.
///
/// Equality and order are *semantic*: `Seq` and `Nf` representations of the
/// same number compare equal. Comparison across representations renders the
/// normal form to a sign sequence when possible and otherwise brackets its
/// non-dyadic coefficients between dyadics of increasing precision; for
/// values this crate constructs, that always decides. A comparison that
/// cannot be decided at the supported precision panics rather than guessing.
#[derive(Debug, Clone)]
pub enum Surreal {
    /// A run-length sign sequence.
    Seq(SignSeq),
    /// A Conway normal form.
    Nf(NormalForm),
}

/// A finite Conway normal form: exponents strictly decreasing, coefficients
/// nonzero. The empty sum is 0.
#[derive(Debug, Clone)]
pub struct NormalForm {
    terms: Vec<(Surreal, BigRational)>,
}

impl Surreal {
    /// The number 0 (as the empty sign sequence).
    pub fn zero() -> Self {
        Surreal::Seq(SignSeq::empty())
    }

    /// A dyadic rational, as its sign sequence.
    pub fn from_dyadic(d: &Dyadic) -> Self {
        Surreal::Seq(SignSeq::from_dyadic(d))
    }

    /// A (small) integer.
    pub fn integer(n: i64) -> Self {
        Surreal::from_dyadic(&Dyadic::integer(n))
    }

    /// An ordinal, as its all-plus sign sequence.
    pub fn from_ordinal(o: &Ordinal) -> Self {
        Surreal::Seq(SignSeq::from_ordinal(o))
    }

    /// A rational number, as the normal form `ω^0·r` (0 stays the empty
    /// sequence).
    pub fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            Surreal::zero()
        } else {
            Surreal::Nf(NormalForm::real(r.clone()))
        }
    }

    /// True iff the value is 0.
    pub fn is_zero(&self) -> bool {
        match self {
            Surreal::Seq(s) => s.is_empty(),
            Surreal::Nf(n) => n.terms.is_empty(),
        }
    }

    /// Sign of the value: `Greater` for positive, `Less` for negative.
    pub fn signum(&self) -> Ordering {
        match self {
            Surreal::Seq(s) => match s.first_sign() {
                None => Ordering::Equal,
                Some(Sign::Plus) => Ordering::Greater,
                Some(Sign::Minus) => Ordering::Less,
            },
            Surreal::Nf(n) => match n.terms.first() {
                None => Ordering::Equal,
                Some((_, r)) => rat_sign(r),
            },
        }
    }

    /// The negation, preserving the representation.
    pub fn negate(&self) -> Surreal {
        match self {
            Surreal::Seq(s) => Surreal::Seq(s.negate()),
            Surreal::Nf(n) => Surreal::Nf(nf_neg(n)),
        }
    }

    /// The sign sequence of the value.
    ///
    /// # Errors
    /// [`Error::UnsupportedRendering`] if a normal form has a non-dyadic
    /// coefficient (such values have infinitely many sign runs).
    pub fn to_signseq(&self) -> Result<SignSeq> {
        match self {
            Surreal::Seq(s) => Ok(s.clone()),
            Surreal::Nf(n) => nf_to_signseq(n),
        }
    }

    /// View the value as a normal form, when the representation allows it
    /// without a general decoder: normal forms pass through; sign sequences
    /// convert when they are finite (dyadic), all-plus (an ordinal), or
    /// all-minus.
    pub fn to_normalform(&self) -> Option<NormalForm> {
        match self {
            Surreal::Nf(n) => Some(n.clone()),
            Surreal::Seq(s) => {
                if let Ok(d) = s.to_dyadic() {
                    return Some(NormalForm::real(d.to_rational()));
                }
                if let Some(o) = s.as_ordinal() {
                    return Some(NormalForm::from_cnf_ordinal(&o));
                }
                if let Some(o) = s.negate().as_ordinal() {
                    return Some(nf_neg(&NormalForm::from_cnf_ordinal(&o)));
                }
                None
            }
        }
    }
}

impl NormalForm {
    /// The empty sum, 0.
    pub fn zero() -> Self {
        NormalForm { terms: Vec::new() }
    }

    /// `ω^exp · coeff` (the zero form if `coeff = 0`).
    pub fn monomial(exp: Surreal, coeff: BigRational) -> Self {
        NormalForm::from_terms(vec![(exp, coeff)])
    }

    /// The real number `r` as `ω^0 · r`.
    pub fn real(r: BigRational) -> Self {
        NormalForm::monomial(Surreal::zero(), r)
    }

    /// An ordinal `ω^{e_1}c_1 + …` as the same sum of surreal monomials.
    pub fn from_cnf_ordinal(o: &Ordinal) -> Self {
        let terms = o
            .cnf_terms()
            .into_iter()
            .map(|(e, c)| {
                (
                    Surreal::from_ordinal(&e),
                    BigRational::from(BigInt::from(c)),
                )
            })
            .collect();
        NormalForm::from_terms(terms)
    }

    /// Normalize a term list: sort by strictly decreasing exponent, merge
    /// equal exponents, drop zero coefficients.
    pub fn from_terms(mut terms: Vec<(Surreal, BigRational)>) -> Self {
        terms.sort_by(|x, y| y.0.cmp(&x.0));
        let mut out: Vec<(Surreal, BigRational)> = Vec::new();
        for (e, r) in terms {
            match out.last_mut() {
                Some((pe, pr)) if *pe == e => *pr += r,
                _ => out.push((e, r)),
            }
            if let Some((_, pr)) = out.last() {
                if pr.is_zero() {
                    out.pop();
                }
            }
        }
        NormalForm { terms: out }
    }

    /// The terms, in strictly decreasing exponent order.
    pub fn terms(&self) -> &[(Surreal, BigRational)] {
        &self.terms
    }

    /// True iff this is the empty sum.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The leading coefficient, if any.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, r)| r)
    }
}

/// `ω^a` as a normal form.
pub fn omega_pow(a: &Surreal) -> NormalForm {
    NormalForm::monomial(a.clone(), BigRational::one())
}

/// Sum of two normal forms (term-wise merge by exponent).
pub fn nf_add(x: &NormalForm, y: &NormalForm) -> NormalForm {
    let mut terms = x.terms.clone();
    terms.extend(y.terms.iter().cloned());
    NormalForm::from_terms(terms)
}

/// Negation of a normal form.
pub fn nf_neg(x: &NormalForm) -> NormalForm {
    NormalForm {
        terms: x
            .terms
            .iter()
            .map(|(e, r)| (e.clone(), -r.clone()))
            .collect(),
    }
}

/// Product of two normal forms: `ω^a r · ω^b s = ω^{a+b} (r·s)` on each pair
/// of terms, with surreal exponent addition.
///
/// # Errors
/// [`Error::Domain`] if an exponent sum is not supported (exponents must be
/// normal forms, dyadics, or all-plus/all-minus sequences).
pub fn nf_mul(x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
    let mut terms = Vec::new();
    for (a, r) in &x.terms {
        for (b, s) in &y.terms {
            terms.push((surreal_add(a, b)?, r * s));
        }
    }
    Ok(NormalForm::from_terms(terms))
}

/// Surreal addition for the representations used as normal-form exponents.
///
/// Covers dyadic + dyadic exactly, and otherwise converts both operands to
/// normal forms via [`Surreal::to_normalform`] and merges them (ordinals add
/// by the Hessenberg sum, as surreal addition requires).
///
/// # Errors
/// [`Error::Domain`] when an operand is a general transfinite sequence with
/// no direct normal form.
pub fn surreal_add(a: &Surreal, b: &Surreal) -> Result<Surreal> {
    if let (Surreal::Seq(sa), Surreal::Seq(sb)) = (a, b) {
        if let (Ok(da), Ok(db)) = (sa.to_dyadic(), sb.to_dyadic()) {
            return Ok(Surreal::from_dyadic(&(da + db)));
        }
    }
    let (na, nb) = match (a.to_normalform(), b.to_normalform()) {
        (Some(na), Some(nb)) => (na, nb),
        _ => {
            return Err(Error::Domain(format!(
                "addition of general sign sequences is not supported: {a} + {b}"
            )))
        }
    };
    Ok(Surreal::Nf(nf_add(&na, &nb)))
}

/// The leading exponent `Ind(x)` of a nonzero surreal: the `a_0` of its
/// normal form, so that `x` is commensurate with `ω^{a_0}`.
///
/// # Errors
/// [`Error::ZeroArgument`] for 0; [`Error::Domain`] for a transfinite sign
/// sequence that is neither an ordinal nor a negated ordinal (supply such
/// values in normal form).
pub fn ind(x: &Surreal) -> Result<Surreal> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("Ind(0) is undefined".into()));
    }
    match x {
        Surreal::Nf(n) => Ok(n.terms[0].0.clone()),
        Surreal::Seq(_) => match x.to_normalform() {
            Some(n) => Ok(n.terms[0].0.clone()),
            None => Err(Error::Domain(format!(
                "Ind of general sign sequence {x}: supply the value in normal form"
            ))),
        },
    }
}

/// Archimedean equivalence: `x ∼ y` iff neither is infinitely larger than
/// the other, i.e. their leading exponents agree (0 is equivalent only to 0).
///
/// # Errors
/// As for [`ind`], on unsupported sequence shapes.
pub fn arch_equiv(x: &Surreal, y: &Surreal) -> Result<bool> {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => Ok(true),
        (true, false) | (false, true) => Ok(false),
        (false, false) => Ok(ind(x)? == ind(y)?),
    }
}

/// The exponential-scale key of `x`: `None` for finite appreciable values,
/// otherwise the leading exponent `b_0` of `Ind(x)`, which is invariant under
/// reciprocals (`1/x` has `Ind = −Ind(x)`, same `b_0`).
fn comp_key(x: &Surreal) -> Result<Option<Surreal>> {
    let i = ind(x)?;
    if i.is_zero() {
        return Ok(None);
    }
    Ok(Some(ind(&i)?))
}

/// Comparability-class equivalence: `x` and `y` are bounded by powers of each
/// other (so every `ω^{ω^{b_0}}` is a class representative and `x ∼ 1/x`).
///
/// # Errors
/// [`Error::ZeroArgument`] if either value is 0; otherwise as for [`ind`].
pub fn comp_equiv(x: &Surreal, y: &Surreal) -> Result<bool> {
    Ok(comp_key(x)? == comp_key(y)?)
}

/// The representative `ω^{ω^{b_0}}` of the comparability class of an
/// infinite positive `x`.
///
/// # Errors
/// [`Error::Domain`] if `x` is not strictly positive or not infinite.
pub fn leading_fundamental(x: &Surreal) -> Result<Surreal> {
    if x.signum() != Ordering::Greater {
        return Err(Error::Domain(format!(
            "leading_fundamental requires a positive value, got {x}"
        )));
    }
    let i = ind(x)?;
    if i.signum() != Ordering::Greater {
        return Err(Error::Domain(format!(
            "leading_fundamental requires an infinite value, got {x}"
        )));
    }
    let b0 = ind(&i)?;
    Ok(Surreal::Nf(omega_pow(&Surreal::Nf(omega_pow(&b0)))))
}

// ===== comparison =====

impl PartialEq for Surreal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surreal {}

impl PartialOrd for Surreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surreal {
    /// Semantic order across representations.
    ///
    /// # Panics
    /// If a sequence/normal-form comparison cannot be decided even with
    /// coefficients bracketed at 2⁻¹²⁸ precision (not reachable for values
    /// built by this crate).
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Surreal::Seq(a), Surreal::Seq(b)) => a.cmp(b),
            (Surreal::Nf(a), Surreal::Nf(b)) => nf_cmp(a, b),
            (Surreal::Seq(a), Surreal::Nf(b)) => cmp_seq_nf(a, b),
            (Surreal::Nf(a), Surreal::Seq(b)) => cmp_seq_nf(b, a).reverse(),
        }
    }
}

impl PartialEq for NormalForm {
    fn eq(&self, other: &Self) -> bool {
        nf_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for NormalForm {}

fn rat_sign(r: &BigRational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Term-wise normal-form comparison: at the first differing term, a larger
/// exponent wins by the sign of its coefficient, and equal exponents compare
/// by coefficient.
fn nf_cmp(x: &NormalForm, y: &NormalForm) -> Ordering {
    let mut k = 0;
    loop {
        match (x.terms.get(k), y.terms.get(k)) {
            (None, None) => return Ordering::Equal,
            (Some((_, r)), None) => return rat_sign(r),
            (None, Some((_, s))) => return rat_sign(s).reverse(),
            (Some((a, r)), Some((b, s))) => match a.cmp(b) {
                Ordering::Greater => return rat_sign(r),
                Ordering::Less => return rat_sign(s).reverse(),
                Ordering::Equal => match r.cmp(s) {
                    Ordering::Equal => k += 1,
                    ord => return ord,
                },
            },
        }
    }
}

/// Compare a sign sequence against a normal form. Renders the form when its
/// coefficients are dyadic; otherwise squeezes it between renderable forms
/// whose coefficients are dyadic floors/ceilings of increasing precision.
/// Distinct values always separate at finite precision because a finite-run
/// sequence never equals a form with a non-dyadic coefficient.
fn cmp_seq_nf(s: &SignSeq, z: &NormalForm) -> Ordering {
    match nf_to_signseq(z) {
        Ok(zs) => s.cmp(&zs),
        Err(_) => {
            for precision in [4u32, 8, 16, 32, 64, 128] {
                let lo = nf_to_signseq(&round_coeffs(z, precision, false));
                let hi = nf_to_signseq(&round_coeffs(z, precision, true));
                let (Ok(lo), Ok(hi)) = (lo, hi) else { break };
                if *s <= lo {
                    return Ordering::Less;
                }
                if *s >= hi {
                    return Ordering::Greater;
                }
            }
            panic!("cannot order sign sequence {s} against normal form {z} at supported precision")
        }
    }
}

/// `z` with every non-dyadic coefficient moved strictly down (`up = false`)
/// or up (`up = true`) to a dyadic of the given precision.
fn round_coeffs(z: &NormalForm, precision: u32, up: bool) -> NormalForm {
    let scale = BigRational::from(BigInt::one() << precision as usize);
    let terms = z
        .terms
        .iter()
        .map(|(e, r)| {
            let rounded = if Dyadic::try_from_rational(r).is_ok() {
                r.clone()
            } else {
                let steps = (r * &scale).floor()
                    + if up {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                steps / &scale
            };
            (e.clone(), rounded)
        })
        .collect();
    NormalForm::from_terms(terms)
}

// ===== sign-sequence rendering =====

/// Apply the minus-suppression rule to a list of exponent sequences: in
/// `exps[i]`, a minus at position `ν` is dropped iff some earlier `exps[j]`
/// agrees with `exps[i]` at every position `ξ ≤ ν`.
///
/// Within each minus run this suppresses exactly the positions below
/// `M_i = max_j |common prefix of exps[i], exps[j]|`, so runs shrink by a
/// left difference and never reorder.
pub fn reduced_sequence(exps: &[SignSeq]) -> Vec<SignSeq> {
    let mut out = Vec::with_capacity(exps.len());
    for (i, a) in exps.iter().enumerate() {
        let m = exps[..i]
            .iter()
            .map(|b| a.common_prefix(b).len())
            .max()
            .unwrap_or(Ordinal::Zero);
        let mut reduced = SignSeq::empty();
        let mut base = Ordinal::Zero;
        for (sign, count) in a.runs() {
            let end = &base + count;
            match sign {
                Sign::Plus => reduced.push(Sign::Plus, count.clone()),
                Sign::Minus => {
                    // Positions [base, end) ∩ [0, m) are suppressed.
                    let cut = if m >= end { &end } else { &m };
                    let suppressed = match base.left_diff(cut) {
                        Some(d) => d,
                        None => Ordinal::Zero, // m ≤ base: nothing suppressed.
                    };
                    let kept = suppressed
                        .left_diff(count)
                        .expect("cannot suppress more signs than the run holds");
                    reduced.push(Sign::Minus, kept);
                }
            }
            base = end;
        }
        out.push(reduced);
    }
    out
}

/// `σ(ω^b)` for an exponent given as a sign sequence: per block pair
/// `(α_μ, β_μ)` of `b`, emit `ω^{γ_μ}` pluses and `ω^{γ_μ+1}·β_μ` minuses,
/// with `γ_μ` the plus-count of `b` through pair `μ`.
fn render_omega_pow(b: &SignSeq) -> SignSeq {
    let mut pairs = b.block_pairs();
    if pairs.is_empty() {
        // ω^0 = 1 comes out of the same formula with the padding pair (0, 0).
        pairs.push((Ordinal::Zero, Ordinal::Zero));
    }
    let mut out = SignSeq::empty();
    let mut gamma = Ordinal::Zero;
    for (alpha, beta) in &pairs {
        gamma = &gamma + alpha;
        out.push(Sign::Plus, gamma.omega_pow());
        if !beta.is_zero() {
            let minus_unit = (&gamma + &Ordinal::one()).omega_pow();
            out.push(Sign::Minus, &minus_unit * beta);
        }
    }
    out
}

/// `σ(ω^b · r)` for dyadic `r ≠ 0`: the monomial rendering followed by the
/// sign expansion of `r` (first plus dropped) at `ω^{b⁺}` copies per sign;
/// negative `r` flips everything.
fn render_monomial_real(b: &SignSeq, r: &Dyadic) -> SignSeq {
    debug_assert!(!r.is_zero(), "normal forms have nonzero coefficients");
    if r.is_negative() {
        return render_monomial_real(b, &-*r).negate();
    }
    let mut out = render_omega_pow(b);
    let unit = b.plus_count().omega_pow();
    for &plus in r.sign_expansion().iter().skip(1) {
        out.push(if plus { Sign::Plus } else { Sign::Minus }, unit.clone());
    }
    out
}

/// The sign sequence of a normal form: each term rendered from its *reduced*
/// exponent and concatenated.
///
/// # Errors
/// [`Error::UnsupportedRendering`] if a coefficient is not dyadic (the true
/// sequence would have infinitely many runs), or if an exponent cannot
/// itself be rendered.
pub fn nf_to_signseq(nf: &NormalForm) -> Result<SignSeq> {
    let mut exps = Vec::with_capacity(nf.terms.len());
    let mut coeffs = Vec::with_capacity(nf.terms.len());
    for (e, r) in &nf.terms {
        exps.push(e.to_signseq()?);
        coeffs.push(Dyadic::try_from_rational(r).map_err(|_| {
            Error::UnsupportedRendering(format!(
                "coefficient {r} is not dyadic; the sign sequence has infinitely many runs"
            ))
        })?);
    }
    let mut out = SignSeq::empty();
    for (reduced, r) in reduced_sequence(&exps).iter().zip(&coeffs) {
        out = out.concat(&render_monomial_real(reduced, r));
    }
    Ok(out)
}

impl fmt::Display for Surreal {
    /// Values print in the friendliest faithful notation: finite sequences as
    /// dyadics, all-plus sequences as ordinals, other sequences in run
    /// syntax, and normal forms in `w^(a)*r` syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surreal::Seq(s) => {
                if let Ok(d) = s.to_dyadic() {
                    write!(f, "{d}")
                } else if let Some(o) = s.as_ordinal() {
                    write!(f, "{o}")
                } else if let Some(o) = s.negate().as_ordinal() {
                    let inner = o.to_string();
                    if inner.contains(' ') {
                        write!(f, "-({inner})")
                    } else {
                        write!(f, "-{inner}")
                    }
                } else {
                    write!(f, "{s}")
                }
            }
            Surreal::Nf(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, r)) in self.terms.iter().enumerate() {
            let (sep, abs) = if r.is_negative() {
                (if k == 0 { "-" } else { " - " }, -r.clone())
            } else {
                (if k == 0 { "" } else { " + " }, r.clone())
            };
            write!(f, "{sep}")?;
            if e.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            let one = Surreal::integer(1);
            if *e == one {
                write!(f, "w")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if !abs.is_one() {
                write!(f, "*{abs}")?;
            }
        }
        Ok(())
    }
}
