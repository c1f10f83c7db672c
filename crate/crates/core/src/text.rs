//! Text syntax for polynomials and operators.
//!
//! Polynomials: `3*x1^[2]*x2 - 1/2*x3`. `^[k]` is a divided power; in dp mode a
//! plain `^k` means the same. In classical mode `^k` is an ordinary power and the
//! input is carried into the divided power ring by `x^a -> a! x^[a]`.
//! `x, y, z` abbreviate `x1, x2, x3`. Operators use `a1..an` (or `a, b, c`).
//! `*` is the product of the respective ring.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::divided_powers::{dp_mul, omega_inv, ClassicalPoly, DPPoly, Monomial, Operator};
use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

/// How exponents in the input are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    DividedPower,
    Classical,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "dp" => Ok(Mode::DividedPower),
            "classical" => Ok(Mode::Classical),
            _ => Err(Error::Syntax { pos: 0, msg: format!("unknown mode '{s}', expected dp or classical") }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Poly,
    Op,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
    n: usize,
    kind: Kind,
}

// One factor of a term: a coefficient or a variable raised to a power.
enum Factor {
    Coeff(BigRational),
    Var { index: usize, exp: u32, bracket: bool },
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize, kind: Kind) -> Parser<'a> {
        Parser { chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), at: 0, src, n, kind }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |(p, _)| *p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.at].iter().map(|(_, c)| c).collect();
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let p = self.pos();
        let v = self.number()?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: p, msg: format!("{what} too large") })
    }

    fn var_index(&mut self) -> Result<usize> {
        let p = self.pos();
        let c = self.peek().unwrap();
        self.at += 1;
        let (prefix, aliases): (char, [char; 3]) = match self.kind {
            Kind::Poly => ('x', ['x', 'y', 'z']),
            Kind::Op => ('a', ['a', 'b', 'c']),
        };
        let greek = ['α', 'β', 'γ'];
        let index = if c == prefix && self.peek().is_some_and(|d| d.is_ascii_digit()) {
            let k = self.small("variable index")? as usize;
            if k == 0 {
                return Err(Error::Syntax { pos: p, msg: "variables are numbered from 1".into() });
            }
            k - 1
        } else if let Some(i) = aliases.iter().position(|&a| a == c) {
            i
        } else if let (Kind::Op, Some(i)) = (self.kind, greek.iter().position(|&a| a == c)) {
            i
        } else {
            return Err(Error::Syntax { pos: p, msg: format!("unexpected character '{c}'") });
        };
        if index >= self.n {
            return Err(Error::Syntax { pos: p, msg: format!("variable {} exceeds --vars {}", index + 1, self.n) });
        }
        Ok(index)
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                let den = if self.peek() == Some('/') {
                    self.at += 1;
                    let p = self.pos();
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Syntax { pos: p, msg: "zero denominator".into() });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(Factor::Coeff(BigRational::new(num, den)))
            }
            Some(_) => {
                let index = self.var_index()?;
                let (mut exp, mut bracket) = (1, false);
                if self.peek() == Some('^') {
                    self.at += 1;
                    if self.peek() == Some('[') {
                        self.at += 1;
                        exp = self.small("exponent")?;
                        if self.peek() != Some(']') {
                            return self.err("expected ']'");
                        }
                        self.at += 1;
                        bracket = true;
                    } else {
                        exp = self.small("exponent")?;
                    }
                }
                Ok(Factor::Var { index, exp, bracket })
            }
            None => self.err("unexpected end of input"),
        }
    }

    // Returns (sign, factors) per term.
    fn terms(&mut self) -> Result<Vec<(bool, Vec<Factor>, usize)>> {
        let mut out = Vec::new();
        let mut negative = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negative = c == '-';
            self.at += 1;
        }
        loop {
            let p = self.pos();
            let mut factors = vec![self.factor()?];
            while self.peek() == Some('*') {
                self.at += 1;
                factors.push(self.factor()?);
            }
            out.push((negative, factors, p));
            match self.peek() {
                None => return Ok(out),
                Some(c @ ('+' | '-')) => {
                    negative = c == '-';
                    self.at += 1;
                }
                Some(c) => return self.err(format!("unexpected character '{c}'")),
            }
        }
    }
}

fn coeff_in(field: Field, q: &BigRational, pos: usize) -> Result<Scalar> {
    field.from_rational(q).map_err(|_| Error::Syntax { pos, msg: "denominator vanishes in this field".into() })
}

/// Parses a divided-power polynomial in `n` variables.
pub fn parse_poly(src: &str, n: usize, field: Field, mode: Mode) -> Result<DPPoly> {
    let mut p = Parser::new(src, n, Kind::Poly);
    if p.chars.is_empty() {
        return p.err("empty polynomial");
    }
    if p.chars.len() == 1 && p.peek() == Some('0') {
        return Ok(DPPoly::zero(n, field));
    }
    let terms = p.terms()?;
    let mut total = DPPoly::zero(n, field);
    let mut classical = Vec::new();
    for (negative, factors, pos) in terms {
        let mut c = field.one();
        let mut term = DPPoly::one(n, field);
        let mut exps = vec![0u32; n];
        for f in factors {
            match f {
                Factor::Coeff(q) => c = &c * &coeff_in(field, &q, pos)?,
                Factor::Var { index, exp, bracket } => match mode {
                    Mode::DividedPower => {
                        let mut e = vec![0; n];
                        e[index] = exp;
                        term = dp_mul(&term, &DPPoly::term(Monomial::new(e), field.one()))?;
                    }
                    Mode::Classical => {
                        if bracket {
                            return Err(Error::Syntax { pos, msg: "divided powers ^[k] are not allowed in classical mode".into() });
                        }
                        exps[index] += exp;
                    }
                },
            }
        }
        if negative {
            c = c.neg();
        }
        match mode {
            Mode::DividedPower => total = &total + &term.scale(&c),
            Mode::Classical => classical.push((Monomial::new(exps), c)),
        }
    }
    if mode == Mode::Classical {
        total = omega_inv(&ClassicalPoly::from_terms(n, field, classical))?;
    }
    Ok(total)
}

/// Parses an operator in `a1..an`, truncated at `trunc`.
pub fn parse_operator(src: &str, n: usize, field: Field, trunc: u32) -> Result<Operator> {
    let mut p = Parser::new(src, n, Kind::Op);
    if p.chars.is_empty() {
        return p.err("empty operator");
    }
    if p.chars.len() == 1 && p.peek() == Some('0') {
        return Ok(Operator::zero(n, field, trunc));
    }
    let mut total = Operator::zero(n, field, trunc);
    for (negative, factors, pos) in p.terms()? {
        let mut c = field.one();
        let mut exps = vec![0u32; n];
        for f in factors {
            match f {
                Factor::Coeff(q) => c = &c * &coeff_in(field, &q, pos)?,
                Factor::Var { index, exp, .. } => exps[index] += exp,
            }
        }
        if negative {
            c = c.neg();
        }
        total = &total + &Operator::term(Monomial::new(exps), c, trunc);
    }
    Ok(total)
}

fn format_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a Scalar)>,
    var: &str,
    bracket: bool,
) -> String {
    let mut out = String::new();
    for (m, c) in terms {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{var}{}", i + 1)),
                _ if bracket => factors.push(format!("{var}{}^[{e}]", i + 1)),
                _ => factors.push(format!("{var}{}^{e}", i + 1)),
            }
        }
        let negative = c.is_negative();
        let abs = if negative { c.neg() } else { c.clone() };
        let body = if factors.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            factors.join("*")
        } else {
            format!("{abs}*{}", factors.join("*"))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text of a polynomial, highest terms first.
pub fn format_dp(f: &DPPoly) -> String {
    format_terms(f.terms().rev(), "x", true)
}

pub fn format_operator(s: &Operator) -> String {
    format_terms(s.terms().rev(), "a", false)
}

pub fn format_classical(g: &ClassicalPoly) -> String {
    format_terms(g.terms().rev(), "x", false)
}

/// Largest variable index mentioned in the input, counting `x, y, z` as 1, 2, 3.
pub fn infer_arity(src: &str) -> usize {
    let chars: Vec<char> = src.chars().collect();
    let mut best = 1;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let prev_alpha = i > 0 && chars[i - 1].is_alphanumeric();
        if !prev_alpha && matches!(c, 'x' | 'a') {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j > i + 1 {
                best = best.max(chars[i + 1..j].iter().collect::<String>().parse().unwrap_or(1));
            }
            i = j;
            continue;
        }
        match c {
            'y' | 'b' => best = best.max(2),
            'z' | 'c' => best = best.max(3),
            _ => {}
        }
        i += 1;
    }
    best
}
