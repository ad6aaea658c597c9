//! Exact arithmetic on an ordinal notation system: Cantor normal form
//! extended with ε-atoms.
//!
//! The notations cover every ordinal the sign-sequence formulas in this crate
//! produce from desk-scale inputs: they are closed under `+`, `·`, `ω^x` and
//! `ε_x` (with ε-indices that may themselves contain ε-atoms). Ordinals at or
//! beyond the first fixed point of `x ↦ ε_x` are out of scope, as is
//! exponentiation with arbitrary base.
//!
//! All values are immutable and all operations are pure functions, so the type
//! is safe for unrestricted concurrent use.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::{Error, Result};

/// An ordinal in Cantor normal form extended with ε-atoms.
///
/// Normalization invariants (enforced by the constructors):
/// - `Sum` term exponents are strictly decreasing and coefficients are ≥ 1;
///   a `Sum` is nonempty.
/// - A lone term `ω^{ε_x}` with coefficient 1 is represented as `Eps(x)`
///   (ε-numbers are fixed points of `α ↦ ω^α`).
///
/// With these invariants, structural equality coincides with ordinal equality
/// and [`Ord`] is the ordinal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ordinal {
    /// The ordinal 0.
    Zero,
    /// `ω^{e_1}·c_1 + … + ω^{e_k}·c_k` with `e_1 > … > e_k` and every `c_i ≥ 1`.
    Sum(Vec<Term>),
    /// `ε_index`, the `index`-th fixed point of `α ↦ ω^α`.
    Eps(Box<Ordinal>),
}

/// One Cantor-normal-form term `ω^exp · coeff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    /// The exponent of ω.
    pub exp: Ordinal,
    /// The multiplicity; at least 1 in a normalized sum.
    pub coeff: u64,
}

impl Term {
    fn new(exp: Ordinal, coeff: u64) -> Self {
        Term { exp, coeff }
    }
}

impl Ordinal {
    /// The ordinal 1.
    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    /// The ordinal ω.
    pub fn omega() -> Self {
        Ordinal::Sum(vec![Term::new(Ordinal::finite(1), 1)])
    }

    /// The finite ordinal `n`.
    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::Zero
        } else {
            Ordinal::Sum(vec![Term::new(Ordinal::Zero, n)])
        }
    }

    /// `ε_index`.
    pub fn eps(index: Ordinal) -> Self {
        Ordinal::Eps(Box::new(index))
    }

    /// `ω^self`, normalizing `ω^{ε_x}` to `ε_x`.
    pub fn omega_pow(&self) -> Self {
        match self {
            Ordinal::Eps(_) => self.clone(),
            _ => Ordinal::Sum(vec![Term::new(self.clone(), 1)]),
        }
    }

    /// True iff this is the ordinal 0.
    pub fn is_zero(&self) -> bool {
        matches!(self, Ordinal::Zero)
    }

    /// Returns `Some(n)` iff this ordinal is the finite ordinal `n`.
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Ordinal::Zero => Some(0),
            Ordinal::Sum(ts) if ts.len() == 1 && ts[0].exp.is_zero() => Some(ts[0].coeff),
            _ => None,
        }
    }

    /// True iff this ordinal is a limit (nonzero with no immediate predecessor).
    pub fn is_limit(&self) -> bool {
        match self {
            Ordinal::Zero => false,
            Ordinal::Eps(_) => true,
            Ordinal::Sum(ts) => !ts.last().expect("sums are nonempty").exp.is_zero(),
        }
    }

    /// The immediate predecessor, if this ordinal is a successor.
    pub fn pred(&self) -> Option<Ordinal> {
        match self {
            Ordinal::Sum(ts) => {
                let last = ts.last().expect("sums are nonempty");
                if !last.exp.is_zero() {
                    return None;
                }
                let mut v = ts.clone();
                if last.coeff > 1 {
                    v.last_mut().expect("nonempty").coeff -= 1;
                } else {
                    v.pop();
                }
                Some(from_terms(v))
            }
            _ => None,
        }
    }

    /// View as a list of CNF terms (`ε_x` reads as the single term `ω^{ε_x}·1`).
    fn as_terms(&self) -> Cow<'_, [Term]> {
        match self {
            Ordinal::Zero => Cow::Borrowed(&[]),
            Ordinal::Sum(ts) => Cow::Borrowed(ts),
            Ordinal::Eps(_) => Cow::Owned(vec![Term::new(self.clone(), 1)]),
        }
    }

    /// The Cantor-normal-form terms as (exponent, coefficient) pairs in
    /// strictly decreasing exponent order (`ε_x` is the single term
    /// `(ε_x, 1)`).
    pub fn cnf_terms(&self) -> Vec<(Ordinal, u64)> {
        self.as_terms()
            .iter()
            .map(|t| (t.exp.clone(), t.coeff))
            .collect()
    }

    /// The exponent of the leading CNF term (`None` for 0).
    pub fn leading_exp(&self) -> Option<Ordinal> {
        match self {
            Ordinal::Zero => None,
            Ordinal::Sum(ts) => Some(ts[0].exp.clone()),
            Ordinal::Eps(_) => Some(self.clone()),
        }
    }

    /// Hessenberg (natural) sum: commutative, coefficient-wise merge of terms.
    pub fn nat_add(&self, other: &Ordinal) -> Ordinal {
        let mut merged: Vec<Term> = Vec::new();
        let (a, b) = (self.as_terms(), other.as_terms());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = if i == a.len() {
                let t = b[j].clone();
                j += 1;
                t
            } else if j == b.len() {
                let t = a[i].clone();
                i += 1;
                t
            } else {
                match a[i].exp.cmp(&b[j].exp) {
                    Ordering::Greater => {
                        let t = a[i].clone();
                        i += 1;
                        t
                    }
                    Ordering::Less => {
                        let t = b[j].clone();
                        j += 1;
                        t
                    }
                    Ordering::Equal => {
                        let t = Term::new(
                            a[i].exp.clone(),
                            a[i].coeff
                                .checked_add(b[j].coeff)
                                .expect("ordinal coefficient overflow"),
                        );
                        i += 1;
                        j += 1;
                        t
                    }
                }
            };
            merged.push(next);
        }
        from_terms(merged)
    }

    /// The unique `x` with `self + x = other`, or `None` if `self > other`.
    ///
    /// This is left subtraction for the (non-commutative) ordinal sum; it is
    /// what "remove an initial segment of length `self`" means for positions.
    pub fn left_diff(&self, other: &Ordinal) -> Option<Ordinal> {
        let a = self.as_terms();
        let b = other.as_terms();
        let mut i = 0;
        loop {
            if i == a.len() {
                return Some(from_terms(b[i..].to_vec()));
            }
            if i == b.len() {
                // `a` still has terms, so self > other.
                return None;
            }
            match a[i].exp.cmp(&b[i].exp) {
                Ordering::Less => return Some(from_terms(b[i..].to_vec())),
                Ordering::Greater => return None,
                Ordering::Equal => match a[i].coeff.cmp(&b[i].coeff) {
                    Ordering::Less => {
                        let mut v = vec![Term::new(b[i].exp.clone(), b[i].coeff - a[i].coeff)];
                        v.extend(b[i + 1..].iter().cloned());
                        return Some(from_terms(v));
                    }
                    Ordering::Greater => {
                        // self's term outweighs other's at the same exponent;
                        // self > other unless both end here with equal tails,
                        // which they cannot (coefficients differ).
                        return None;
                    }
                    Ordering::Equal => i += 1,
                },
            }
        }
    }

    /// The largest ε-number ≤ `self`, if any.
    pub fn eps_floor(&self) -> Option<Ordinal> {
        match self {
            Ordinal::Zero => None,
            Ordinal::Eps(_) => Some(self.clone()),
            // Any ε ≤ ω^{e1}·c1 + … satisfies ε = ω^ε < ω^{e1+1}, hence ε ≤ e1;
            // conversely eps_floor(e1) ≤ e1 ≤ ω^{e1} ≤ self.
            Ordinal::Sum(ts) => ts[0].exp.eps_floor(),
        }
    }

    /// The least ε-number strictly greater than `self`.
    pub fn least_eps_above(&self) -> Ordinal {
        match self.eps_floor() {
            None => Ordinal::eps(Ordinal::Zero),
            Some(Ordinal::Eps(i)) => Ordinal::eps(&*i + &Ordinal::one()),
            Some(_) => unreachable!("eps_floor returns ε-atoms"),
        }
    }

    /// Decompose `λ = floor + remainder` where `floor` is 0 or an ε-number
    /// with `floor < λ ≤` the next ε-number above `floor`.
    ///
    /// Degenerate case: for `λ = ε_i` with `i` a limit ordinal there is no such
    /// floor; by convention `(0, λ)` is returned (callers that care route such
    /// inputs elsewhere; see `explog`).
    ///
    /// # Errors
    /// [`Error::Domain`] if `λ = 0`.
    pub fn eps_decompose(&self) -> Result<(Ordinal, Ordinal)> {
        if self.is_zero() {
            return Err(Error::Domain("eps_decompose of 0".into()));
        }
        let floor = match self.eps_floor() {
            None => Ordinal::Zero,
            Some(f) if &f == self => {
                // self is ε_i; the floor must be *strictly* below it.
                let Ordinal::Eps(i) = &f else {
                    unreachable!("eps_floor returns ε-atoms")
                };
                if i.is_zero() {
                    Ordinal::Zero
                } else if let Some(j) = i.pred() {
                    Ordinal::eps(j)
                } else {
                    // ε at a limit index: degenerate by convention.
                    Ordinal::Zero
                }
            }
            Some(f) => f,
        };
        let rem = floor.left_diff(self).expect("floor ≤ λ by construction");
        Ok((floor, rem))
    }

    /// The `n`-th element of the canonical fundamental sequence of a limit
    /// ordinal: strictly increasing in `n` and cofinal in `self`.
    ///
    /// Scheme (Wainer-style): `ω^{e+1}[n] = ω^e·n`; `ω^e[n] = ω^{e[n]}` for
    /// limit `e`; a trailing coefficient `c > 1` splits off one copy;
    /// `ε_0[n]` is the ω-tower of height `n`; `ε_{j+1}[n] = Ω^{n+1}(ε_j+1)`;
    /// `ε_i[n] = ε_{i[n]}` for limit `i`.
    ///
    /// # Errors
    /// [`Error::Domain`] if `self` is 0 or a successor.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::Domain(format!(
                "fundamental sequence of non-limit ordinal {self}"
            )));
        }
        match self {
            Ordinal::Eps(i) => {
                if i.is_zero() {
                    // ε_0[n]: ω-tower of height n (1, ω, ω^ω, …).
                    let mut t = Ordinal::one();
                    for _ in 0..n {
                        t = t.omega_pow();
                    }
                    Ok(t)
                } else if let Some(j) = i.pred() {
                    // ε_{j+1}[n]: the (n+1)-fold ω-tower above ε_j + 1.
                    let mut t = &Ordinal::eps(j) + &Ordinal::one();
                    for _ in 0..=n {
                        t = t.omega_pow();
                    }
                    Ok(t)
                } else {
                    Ok(Ordinal::eps(i.fundamental_sequence(n)?))
                }
            }
            Ordinal::Sum(ts) => {
                let mut head = ts.clone();
                let last = head.pop().expect("sums are nonempty");
                if last.coeff > 1 {
                    head.push(Term::new(last.exp.clone(), last.coeff - 1));
                }
                let piece = fs_of_omega_pow(&last.exp, n)?;
                Ok(&from_terms(head) + &piece)
            }
            Ordinal::Zero => unreachable!("zero is not a limit"),
        }
    }

    /// Split into limit part and finite tail: `self = P + f` with `P` a limit
    /// ordinal or 0 and `f` finite.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self {
            Ordinal::Sum(ts) => {
                let last = ts.last().expect("sums are nonempty");
                if last.exp.is_zero() {
                    let head = ts[..ts.len() - 1].to_vec();
                    (from_terms(head), last.coeff)
                } else {
                    (self.clone(), 0)
                }
            }
            _ => (self.clone(), 0),
        }
    }

    /// If `self = ω^gamma · β` (left multiple), returns `β`; otherwise `None`.
    ///
    /// Used to recognize block counts of the form `ω·β` and to test the
    /// divisibility side conditions of the ε-number criterion.
    pub fn left_divide_omega_pow(&self, gamma: &Ordinal) -> Option<Ordinal> {
        if gamma.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Ordinal::Zero);
        }
        let mut out = Vec::new();
        for t in self.as_terms().iter() {
            // ω^gamma · ω^x = ω^{gamma + x}, so each exponent must be
            // expressible as gamma + x.
            let x = gamma.left_diff(&t.exp)?;
            out.push(Term::new(x, t.coeff));
        }
        Some(from_terms(out))
    }
}

/// Assemble a normalized ordinal from a strictly-decreasing term list.
fn from_terms(terms: Vec<Term>) -> Ordinal {
    debug_assert!(
        terms.windows(2).all(|w| w[0].exp > w[1].exp),
        "term exponents must be strictly decreasing"
    );
    debug_assert!(
        terms.iter().all(|t| t.coeff >= 1),
        "coefficients must be ≥ 1"
    );
    if terms.is_empty() {
        return Ordinal::Zero;
    }
    if terms.len() == 1 && terms[0].coeff == 1 {
        if let Ordinal::Eps(_) = terms[0].exp {
            return terms[0].exp.clone();
        }
    }
    Ordinal::Sum(terms)
}

/// `(ω^e)[n]` for `e > 0` (so that `ω^e` is a limit).
fn fs_of_omega_pow(e: &Ordinal, n: u64) -> Result<Ordinal> {
    if let Some(f) = e.pred() {
        // ω^{f+1}[n] = ω^f · n.
        Ok(if n == 0 {
            Ordinal::Zero
        } else {
            from_terms(vec![Term::new(f, n)])
        })
    } else {
        Ok(e.fundamental_sequence(n)?.omega_pow())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        use Ordinal::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (Eps(x), Eps(y)) => x.cmp(y),
            _ => {
                let a = self.as_terms();
                let b = other.as_terms();
                for (ta, tb) in a.iter().zip(b.iter()) {
                    match ta.exp.cmp(&tb.exp).then_with(|| ta.coeff.cmp(&tb.coeff)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;

    /// Ordinal sum (non-commutative, absorbing: `1 + ω = ω`).
    fn add(self, rhs: &Ordinal) -> Ordinal {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let a = self.as_terms();
        let b = rhs.as_terms();
        let f1 = &b[0].exp;
        let mut out: Vec<Term> = a.iter().take_while(|t| t.exp > *f1).cloned().collect();
        if let Some(t) = a.get(out.len()) {
            if t.exp == *f1 {
                out.push(Term::new(
                    f1.clone(),
                    t.coeff
                        .checked_add(b[0].coeff)
                        .expect("ordinal coefficient overflow"),
                ));
                out.extend(b[1..].iter().cloned());
                return from_terms(out);
            }
        }
        out.extend(b.iter().cloned());
        from_terms(out)
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;

    /// Ordinal product (left-distributes over the second factor: `2·ω = ω`).
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::Zero;
        }
        let a = self.as_terms();
        let e1 = &a[0].exp;
        let mut acc = Ordinal::Zero;
        for t in rhs.as_terms().iter() {
            let piece = if t.exp.is_zero() {
                // self · finite: multiply the leading coefficient, keep the tail.
                let mut v = a.to_vec();
                v[0].coeff = v[0]
                    .coeff
                    .checked_mul(t.coeff)
                    .expect("ordinal coefficient overflow");
                from_terms(v)
            } else {
                from_terms(vec![Term::new(e1 + &t.exp, t.coeff)])
            };
            acc = &acc + &piece;
        }
        acc
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Zero => write!(f, "0"),
            Ordinal::Eps(i) => write!(f, "eps({i})"),
            Ordinal::Sum(ts) => {
                for (k, t) in ts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    if t.exp.is_zero() {
                        write!(f, "{}", t.coeff)?;
                        continue;
                    }
                    if let Ordinal::Eps(_) = t.exp {
                        // ω^{ε_x} = ε_x, so print the fixed point directly.
                        write!(f, "{}", t.exp)?;
                    } else if t.exp.as_finite() == Some(1) {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^({})", t.exp)?;
                    }
                    if t.coeff != 1 {
                        write!(f, "*{}", t.coeff)?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    /// Parse the textual grammar emitted by [`Display`]: `0`, integers, `w`,
    /// `w^(expr)`, `eps(expr)`, optional `*k` coefficients, joined by `+`
    /// (interpreted as the ordinal sum, left to right).
    fn from_str(s: &str) -> Result<Self> {
        let mut p = OrdParser { s, pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::Parse {
                pos: p.pos,
                msg: "trailing input after ordinal".into(),
            });
        }
        Ok(v)
    }
}

struct OrdParser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> OrdParser<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected `{tok}`"),
            })
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.s[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(Error::Parse {
                pos: start,
                msg: "expected an integer".into(),
            });
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.eat("+") {
            let t = self.term()?;
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let atom = self.atom()?;
        if self.eat("*") {
            let c = self.integer()?;
            Ok(&atom * &Ordinal::finite(c))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        if self.eat("eps") {
            self.expect("(")?;
            let idx = self.expr()?;
            self.expect(")")?;
            return Ok(Ordinal::eps(idx));
        }
        if self.eat("w") {
            if self.eat("^") {
                // Canonical form is `w^(expr)`; a bare integer exponent is
                // accepted as input shorthand (`w^2`).
                let e = if self.eat("(") {
                    let e = self.expr()?;
                    self.expect(")")?;
                    e
                } else {
                    Ordinal::finite(self.integer()?)
                };
                return Ok(e.omega_pow());
            }
            return Ok(Ordinal::omega());
        }
        let n = self.integer()?;
        Ok(Ordinal::finite(n))
    }
}
