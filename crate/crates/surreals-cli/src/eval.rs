//! Evaluation of parsed expressions through the kernel.
//!
//! Numeric forms evaluate to a [`Surreal`]; the directive heads `sign`,
//! `nf`, `cmp` and `class` evaluate to renderings or judgments and are only
//! legal as the outermost node (they have no numeric value to feed into
//! arithmetic).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use surreals::dyadic::Dyadic;
use surreals::explog::{Evaluator, MonomialProduct};
use surreals::kappa::{class_membership, epsilon_map, iota, kappa_iter, SurrealClass};
use surreals::normalform::{nf_mul, omega_pow, surreal_add, NormalForm, Surreal};
use surreals::ordinal::Ordinal;
use surreals::{Error, Result};

use crate::expr::{Expr, Func};

/// Result of evaluating one expression.
#[derive(Debug, Clone)]
pub enum Evaluated {
    /// A surreal value.
    Value(Surreal),
    /// The outcome of `cmp(x, y)`.
    Comparison(Ordering),
    /// The outcome of `class(x)`.
    Class(SurrealClass),
    /// The rendering requested by `sign(x)`.
    SignSequence(String),
    /// The rendering requested by `nf(x)`.
    NormalForm(String),
}

/// Nesting budget for [`pretty`]; towers deeper than this keep their raw
/// exponents.
const PRETTY_DEPTH: u8 = 32;

/// The normal-form rendering of a value, when it has one. Sequence-shaped
/// exponents are decoded recursively so nested powers print as
/// `w^(w^(-1))` rather than in raw run syntax; dyadics and (negated)
/// ordinals print in arithmetic notation, so `kappa(1)` renders `eps(0)`
/// rather than the self-referential `w^(eps(0))`.
pub fn normal_form_rendering(v: &Surreal) -> Option<String> {
    match structured(v) {
        Surreal::Nf(n) => Some(n.to_string()),
        Surreal::Seq(s) => {
            let v = Surreal::Seq(s);
            if arithmetic_notation(&v) {
                Some(v.to_string())
            } else {
                v.to_normalform().map(|n| n.to_string())
            }
        }
    }
}

/// True when a sequence value already displays as a dyadic or a (possibly
/// negated) ordinal rather than in run syntax.
fn arithmetic_notation(v: &Surreal) -> bool {
    match v {
        Surreal::Seq(s) => {
            s.to_dyadic().is_ok() || s.as_ordinal().is_some() || s.negate().as_ordinal().is_some()
        }
        Surreal::Nf(_) => false,
    }
}

/// Rewrite `v` into the friendliest equal form: normal-form exponents are
/// prettified recursively, and bare sequences that render an ω-power are
/// decoded into structured powers. Sequences that already print as
/// dyadics or (negated) ordinals are left alone. Recognizers that peel
/// normal forms (κ-recognition, class membership) see more through a
/// structured value than through raw run-syntax exponents.
pub fn structured(v: &Surreal) -> Surreal {
    pretty(v, PRETTY_DEPTH)
}

fn pretty(v: &Surreal, depth: u8) -> Surreal {
    let Some(next) = depth.checked_sub(1) else {
        return v.clone();
    };
    match v {
        Surreal::Nf(n) => {
            let p = pretty_nf(n, next);
            // ω-map fixed points collapse to their exponent: ω^{ε} = ε, and
            // the ε-notation is the more canonical rendering.
            if let [(e, r)] = p.terms() {
                if r.is_one() && Surreal::Nf(p.clone()) == *e {
                    return e.clone();
                }
            }
            Surreal::Nf(p)
        }
        Surreal::Seq(_) => {
            if arithmetic_notation(v) {
                return v.clone();
            }
            if let Some(a) = decoded_exponent(v, next) {
                return Surreal::Nf(NormalForm::monomial(Surreal::Nf(a), BigRational::one()));
            }
            let neg = v.negate();
            if let Some(a) = decoded_exponent(&neg, next) {
                return Surreal::Nf(NormalForm::monomial(Surreal::Nf(a), -BigRational::one()));
            }
            v.clone()
        }
    }
}

/// Prettify every exponent of a normal form.
fn pretty_nf(n: &NormalForm, depth: u8) -> NormalForm {
    NormalForm::from_terms(
        n.terms()
            .iter()
            .map(|(e, r)| (pretty(e, depth), r.clone()))
            .collect(),
    )
}

/// If `v` is a rendered ω-power `ω^A` (coefficient 1), return `A`'s
/// prettified normal form. Fixed points of the ω-map (the ε-numbers) decode
/// to themselves and are declined — deepening them would not terminate.
fn decoded_exponent(v: &Surreal, depth: u8) -> Option<NormalForm> {
    let m = MonomialProduct::from_value(v).ok()?;
    let plain = Surreal::Nf(NormalForm::from_terms(m.factors().to_vec()));
    if plain == *v {
        return None;
    }
    let factors = m
        .factors()
        .iter()
        .map(|(b, s)| (pretty(b, depth), s.clone()))
        .collect();
    Some(NormalForm::from_terms(factors))
}

/// The sign-sequence rendering of a value, when it is renderable.
pub fn sign_rendering(v: &Surreal) -> Option<String> {
    v.to_signseq().ok().map(|s| s.to_string())
}

/// Evaluate an expression. `bound` is the truncation/sampling order for the
/// recursive exp/log/g/h evaluator.
///
/// # Errors
/// Kernel errors propagate unchanged; using a directive (`sign`, `nf`,
/// `cmp`, `class`) in a numeric position is an [`Error::Domain`].
pub fn evaluate(e: &Expr, bound: u64) -> Result<Evaluated> {
    let mut ev = Evaluator::new(bound);
    match e {
        Expr::Call(Func::SignOf, args) => {
            let v = value(&args[0], &mut ev)?;
            let s = v.to_signseq()?;
            Ok(Evaluated::SignSequence(s.to_string()))
        }
        Expr::Call(Func::NfOf, args) => {
            let v = value(&args[0], &mut ev)?;
            match normal_form_rendering(&v) {
                Some(n) => Ok(Evaluated::NormalForm(n)),
                None => Err(Error::Domain(format!("{v} has no normal-form rendering"))),
            }
        }
        Expr::Call(Func::Cmp, args) => {
            let x = value(&args[0], &mut ev)?;
            let y = value(&args[1], &mut ev)?;
            Ok(Evaluated::Comparison(x.cmp(&y)))
        }
        Expr::Call(Func::Class, args) => {
            let v = value(&args[0], &mut ev)?;
            Ok(Evaluated::Class(class_membership(&v)))
        }
        _ => Ok(Evaluated::Value(structured(&value(e, &mut ev)?))),
    }
}

/// Evaluate a numeric expression to a [`Surreal`].
///
/// # Errors
/// As for [`evaluate`].
pub fn value(e: &Expr, ev: &mut Evaluator) -> Result<Surreal> {
    match e {
        Expr::Int(n) => Ok(Surreal::from_dyadic(&Dyadic::integer(*n))),
        Expr::Rat(p, q) => rational(*p, *q),
        Expr::W => Ok(Surreal::from_ordinal(&Ordinal::omega())),
        Expr::WPow(inner) => {
            let v = value(inner, ev)?;
            Ok(Surreal::Nf(omega_pow(&v)))
        }
        Expr::Neg(inner) => Ok(value(inner, ev)?.negate()),
        Expr::Add(a, b) => surreal_add(&value(a, ev)?, &value(b, ev)?),
        Expr::Sub(a, b) => surreal_add(&value(a, ev)?, &value(b, ev)?.negate()),
        Expr::Mul(a, b) => {
            let va = value(a, ev)?;
            let vb = value(b, ev)?;
            let (Some(na), Some(nb)) = (va.to_normalform(), vb.to_normalform()) else {
                return Err(Error::Domain(format!(
                    "multiplication needs normal-form operands: {va} * {vb}"
                )));
            };
            Ok(Surreal::Nf(nf_mul(&na, &nb)?))
        }
        Expr::Call(func, args) => call(*func, args, ev),
    }
}

fn call(func: Func, args: &[Expr], ev: &mut Evaluator) -> Result<Surreal> {
    match func {
        Func::Eps => {
            let a = value(&args[0], ev)?.to_signseq()?;
            Ok(Surreal::Seq(epsilon_map(&a)))
        }
        Func::Exp => {
            let v = value(&args[0], ev)?;
            ev.exp_iter(&v, 1)
        }
        Func::Log => {
            let v = value(&args[0], ev)?;
            ev.log_iter(&v, 1)
        }
        Func::G => {
            let a = value(&args[0], ev)?.to_signseq()?;
            Ok(Surreal::Seq(ev.g(&a)?))
        }
        Func::H => {
            let b = value(&args[0], ev)?.to_signseq()?;
            Ok(Surreal::Seq(ev.h(&b)?))
        }
        Func::Kappa => {
            let a = value(&args[0], ev)?.to_signseq()?;
            let n = match args.get(1) {
                Some(arg) => small_integer(&value(arg, ev)?, "kappa iterate")?,
                None => 0,
            };
            Ok(Surreal::Nf(kappa_iter(&a, n)))
        }
        Func::Iota => {
            let a = value(&args[0], ev)?.to_signseq()?;
            Ok(Surreal::Seq(iota(&a)))
        }
        Func::SignOf | Func::NfOf | Func::Cmp | Func::Class => Err(Error::Domain(format!(
            "`{}` is a rendering directive, not a number; use it as the outermost operation",
            match func {
                Func::SignOf => "sign",
                Func::NfOf => "nf",
                Func::Cmp => "cmp",
                _ => "class",
            }
        ))),
    }
}

/// A rational literal: dyadic denominators render exactly as sign sequences;
/// other denominators become constant normal-form terms.
fn rational(p: i64, q: i64) -> Result<Surreal> {
    debug_assert!(q > 0, "parser guarantees a positive denominator");
    if q.count_ones() == 1 {
        let k = q.trailing_zeros();
        return Ok(Surreal::from_dyadic(&Dyadic::new(p, k)));
    }
    let coeff = BigRational::new(BigInt::from(p), BigInt::from(q));
    Ok(Surreal::Nf(NormalForm::monomial(
        Surreal::integer(0),
        coeff,
    )))
}

/// Extract a small signed integer (for κ iterate counts).
fn small_integer(v: &Surreal, what: &str) -> Result<i64> {
    let err = || Error::Domain(format!("{what} must be a small integer, got {v}"));
    let d = v
        .to_signseq()
        .map_err(|_| err())?
        .to_dyadic()
        .map_err(|_| err())?;
    let r = d.to_rational();
    if !r.is_integer() {
        return Err(err());
    }
    r.numer().to_i64().ok_or_else(err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn eval(s: &str) -> Evaluated {
        evaluate(&parse(s).expect("test expression parses"), 6)
            .unwrap_or_else(|e| panic!("evaluate {s}: {e}"))
    }

    fn value_of(s: &str) -> Surreal {
        match eval(s) {
            Evaluated::Value(v) => v,
            other => panic!("{s} should be a value, got {other:?}"),
        }
    }

    #[test]
    fn arithmetic_and_literals() {
        assert_eq!(value_of("1/2 + 1/4").to_string(), "3/4");
        assert_eq!(value_of("w + 1").to_string(), "w + 1");
        assert_eq!(value_of("w*2 - w").to_string(), "w");
        assert_eq!(value_of("-(w + 1)").to_string(), "-w - 1");
        assert_eq!(value_of("2*3").to_string(), "6");
        assert_eq!(value_of("1/3").to_string(), "1/3");
        assert!(
            sign_rendering(&value_of("1/3")).is_none(),
            "1/3 is not dyadic"
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(sign_rendering(&value_of("kappa(0)")).expect("seq"), "+^w");
        assert_eq!(
            normal_form_rendering(&value_of("kappa(0)")).expect("nf"),
            "w"
        );
        assert_eq!(
            normal_form_rendering(&value_of("kappa(1)")).expect("nf"),
            "eps(0)"
        );
        assert_eq!(
            normal_form_rendering(&value_of("eps(1)")).expect("nf"),
            "eps(1)"
        );
        assert_eq!(
            normal_form_rendering(&value_of("kappa(-1)")).expect("nf"),
            "w^(w^(-w))"
        );
        assert_eq!(
            normal_form_rendering(&value_of("log(w)")).expect("nf"),
            "w^(w^(-1))"
        );
        assert_eq!(
            normal_form_rendering(&value_of("exp(w)")).expect("nf"),
            "w^(w)"
        );
        assert_eq!(
            sign_rendering(&value_of("eps(0)")).expect("seq"),
            "+^(eps(0))"
        );
        assert_eq!(sign_rendering(&value_of("h(0)")).expect("seq"), "+ -^w");
        assert_eq!(sign_rendering(&value_of("iota(-1)")).expect("seq"), "-^w");
        assert_eq!(value_of("w^(w^(-w))"), value_of("kappa(-1)"));
    }

    #[test]
    fn directives() {
        match eval("cmp(kappa(0), kappa(1))") {
            Evaluated::Comparison(Ordering::Less) => {}
            other => panic!("kappa(0) < kappa(1), got {other:?}"),
        }
        match eval("class(eps(0))") {
            Evaluated::Class(SurrealClass::InEps) => {}
            other => panic!("expected IN_EPS, got {other:?}"),
        }
        match eval("sign(1/2)") {
            Evaluated::SignSequence(s) => assert_eq!(s, "+ -"),
            other => panic!("expected a sign sequence, got {other:?}"),
        }
        match eval("nf(w + 1/2)") {
            Evaluated::NormalForm(s) => assert_eq!(s, "w + 1/2"),
            other => panic!("expected a normal form, got {other:?}"),
        }
        let err = evaluate(&parse("1 + cmp(1, 2)").expect("parses"), 6).unwrap_err();
        assert!(
            matches!(err, Error::Domain(_)),
            "directives are not numbers: {err}"
        );
    }
}
