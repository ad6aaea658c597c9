//! Expression syntax: abstract trees, a position-reporting parser, and a
//! canonical printer satisfying `parse ∘ print = id`.
//!
//! The grammar covers the kernel's value constructors:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom
//! atom   := INT ('/' INT)?                 integers and rationals p/q
//!         | 'w' ('^' '(' expr ')')?        ω and the ω-map w^(e)
//!         | NAME '(' expr (',' expr)* ')'  function application
//!         | '(' expr ')'
//! NAME   := eps | exp | log | g | h | kappa | iota | sign | nf | cmp | class
//! ```
//!
//! Whitespace is free between tokens. The printer emits one canonical
//! spelling (`a + b`, `a - b`, `a*b`, `-a`, `w^(e)`, `f(x, y)`) and
//! parenthesizes by precedence, so printing and re-parsing is the identity
//! on every tree, and parsing then printing is the identity on canonically
//! spelled input.

use std::fmt;

use surreals::{Error, Result};

/// Function heads applicable in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    /// `eps(a)`: the ε-map at index `a`.
    Eps,
    /// `exp(x)`: exponential (purely infinite arguments).
    Exp,
    /// `log(x)`: logarithm (monomial-product arguments).
    Log,
    /// `g(a)`: exponent-map inverse (`ω^x ↦ ω^{ω^{g}}` direction).
    G,
    /// `h(b)`: the exponent map of `log`.
    H,
    /// `kappa(a)` or `kappa(a, n)`: κ-numbers and their exp/log iterates.
    Kappa,
    /// `iota(a)`: the ι-map (κ's double ω-map exponent).
    Iota,
    /// `sign(x)`: render `x` as a sign sequence.
    SignOf,
    /// `nf(x)`: render `x` as a normal form.
    NfOf,
    /// `cmp(x, y)`: three-way comparison.
    Cmp,
    /// `class(x)`: most specific scale class of `x`.
    Class,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Eps => "eps",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::G => "g",
            Func::H => "h",
            Func::Kappa => "kappa",
            Func::Iota => "iota",
            Func::SignOf => "sign",
            Func::NfOf => "nf",
            Func::Cmp => "cmp",
            Func::Class => "class",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "eps" => Func::Eps,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "g" => Func::G,
            "h" => Func::H,
            "kappa" => Func::Kappa,
            "iota" => Func::Iota,
            "sign" => Func::SignOf,
            "nf" => Func::NfOf,
            "cmp" => Func::Cmp,
            "class" => Func::Class,
            _ => return None,
        })
    }

    /// Allowed argument counts.
    fn arity(self) -> std::ops::RangeInclusive<usize> {
        match self {
            Func::Kappa => 1..=2,
            Func::Cmp => 2..=2,
            _ => 1..=1,
        }
    }
}

/// Abstract syntax of surreal expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// An integer literal.
    Int(i64),
    /// A rational literal `p/q` as written (`q > 0`).
    Rat(i64, i64),
    /// The ordinal ω.
    W,
    /// `w^(e)`: the ω-map applied to `e`.
    WPow(Box<Expr>),
    /// Unary negation.
    Neg(Box<Expr>),
    /// Sum.
    Add(Box<Expr>, Box<Expr>),
    /// Difference.
    Sub(Box<Expr>, Box<Expr>),
    /// Product.
    Mul(Box<Expr>, Box<Expr>),
    /// Function application.
    Call(Func, Vec<Expr>),
}

impl Expr {
    /// Binding strength for the printer: additive 1, multiplicative 2,
    /// unary minus 3, atoms 4.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.prec() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(p, q) => write!(f, "{p}/{q}"),
            Expr::W => write!(f, "w"),
            Expr::WPow(e) => write!(f, "w^({e})"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                child(f, x, 4)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parse an expression, reporting failures with byte positions.
///
/// # Errors
/// [`Error::Parse`] with the byte offset and a description of what was
/// expected.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, what: &str) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(b'-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        while self.eat(b'*') {
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.factor()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')', "`)` to close the group")?;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => self.number(),
            Some(b) if b.is_ascii_alphabetic() => self.name(),
            _ => Err(self.err("expected a value")),
        }
    }

    fn integer(&mut self, what: &str) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(format!("expected {what}")));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer literal `{digits}` is out of range"),
        })
    }

    fn number(&mut self) -> Result<Expr> {
        let p = self.integer("an integer")?;
        // A rational literal `p/q`; `/` is not a general operator.
        if self.eat(b'/') {
            let at = self.pos;
            let q = self.integer("a denominator")?;
            if q == 0 {
                return Err(Error::Parse {
                    pos: at,
                    msg: "denominator must be nonzero".into(),
                });
            }
            Ok(Expr::Rat(p, q))
        } else {
            Ok(Expr::Int(p))
        }
    }

    fn name(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters");
        if name == "w" {
            if self.eat(b'^') {
                self.expect(b'(', "`(` after `w^`")?;
                let e = self.expr()?;
                self.expect(b')', "`)` to close `w^(`")?;
                return Ok(Expr::WPow(Box::new(e)));
            }
            return Ok(Expr::W);
        }
        let Some(func) = Func::from_name(name) else {
            return Err(Error::Parse {
                pos: start,
                msg: format!("unknown name `{name}`"),
            });
        };
        self.expect(b'(', &format!("`(` after `{name}`"))?;
        let mut args = vec![self.expr()?];
        while self.eat(b',') {
            args.push(self.expr()?);
        }
        self.expect(b')', &format!("`)` to close `{name}(`"))?;
        let arity = func.arity();
        if !arity.contains(&args.len()) {
            return Err(Error::Parse {
                pos: start,
                msg: format!(
                    "`{name}` takes {} argument(s), got {}",
                    if arity.start() == arity.end() {
                        arity.start().to_string()
                    } else {
                        format!("{} to {}", arity.start(), arity.end())
                    },
                    args.len()
                ),
            });
        }
        Ok(Expr::Call(func, args))
    }
}
