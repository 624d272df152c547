use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::Error;

/// A formal transcendental. The constant 1 is never a symbol; it is the empty [`Monomial`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse(format!("invalid symbol name `{name}`")));
        }
        Ok(Symbol(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The finite symbol set a session works over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        let mut symbols = Vec::with_capacity(names.len());
        for n in names {
            let s = Symbol::new(n.as_ref())?;
            if !seen.insert(s.clone()) {
                return Err(Error::Parse(format!("duplicate symbol `{s}`")));
            }
            symbols.push(s);
        }
        Ok(Alphabet { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.contains(s)
    }

    /// Parses `text` and rejects symbols outside the alphabet.
    pub fn parse(&self, text: &str) -> Result<PolyScalar, Error> {
        let p: PolyScalar = text.parse()?;
        if let Some(s) = p.symbols().into_iter().find(|s| !self.contains(s)) {
            return Err(Error::Parse(format!("symbol `{s}` is not in the alphabet")));
        }
        Ok(p)
    }

    /// All monomials of total degree at most `max_degree`, the constant first.
    pub fn monomials_up_to(&self, max_degree: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        let mut frontier = vec![Monomial::one()];
        for _ in 0..max_degree {
            let mut next = BTreeSet::new();
            for m in &frontier {
                for s in &self.symbols {
                    next.insert(m.mul(&Monomial::symbol(s.clone())));
                }
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }
}

/// Product of symbols with positive exponents; the empty product is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Monomial(BTreeMap::from([(s, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            *out.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in the session symbols with rational coefficients; stands in for a real number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyScalar {
    pub fn constant(r: Rational) -> Self {
        Self::monomial(Monomial::one(), r)
    }

    pub fn monomial(m: Monomial, coef: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(m, coef);
        }
        PolyScalar { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::monomial(Monomial::symbol(s), Rational::one())
    }

    /// Convenience for tests and examples: panics on an invalid name.
    pub fn var(name: &str) -> Self {
        Self::symbol(Symbol::new(name).expect("valid symbol name"))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this is a constant polynomial.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coef.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitutes rational values for every symbol.
    pub fn eval_numeric(&self, env: &BTreeMap<Symbol, Rational>) -> Result<Rational, Error> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.factors() {
                let x = env
                    .get(s)
                    .ok_or_else(|| Error::MissingSymbol(s.to_string()))?;
                v *= &x.pow(e);
            }
            total += &v;
        }
        Ok(total)
    }
}

impl Zero for PolyScalar {
    fn zero() -> Self {
        PolyScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyScalar {
    fn one() -> Self {
        PolyScalar::constant(Rational::one())
    }
}

impl From<Rational> for PolyScalar {
    fn from(r: Rational) -> Self {
        PolyScalar::constant(r)
    }
}

impl From<i64> for PolyScalar {
    fn from(n: i64) -> Self {
        PolyScalar::constant(Rational::from(n))
    }
}

impl Add<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: PolyScalar) -> PolyScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: &PolyScalar) -> PolyScalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, c.abs())
            } else {
                (false, c.clone())
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PolyScalar {
    type Err = Error;

    /// Grammar: sums and differences of `*`-products of rationals (`p` or `p/q`) and
    /// powers `sym^e`. Parentheses are not supported.
    fn from_str(s: &str) -> Result<Self, Error> {
        Parser::new(s).parse_sum()
    }
}

impl Serialize for PolyScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PolyScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn parse_sum(&mut self) -> Result<PolyScalar, Error> {
        let mut total = PolyScalar::zero();
        let mut sign = if self.eat('-') { -1 } else { 1 };
        loop {
            let term = self.parse_product()?;
            total = if sign < 0 {
                &total - &term
            } else {
                &total + &term
            };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected character"));
        }
        Ok(total)
    }

    fn parse_product(&mut self) -> Result<PolyScalar, Error> {
        let mut acc = self.parse_factor()?;
        while self.eat('*') {
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<PolyScalar, Error> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.take_while(|c| c.is_ascii_digit());
                let mut text = n.to_string();
                if self.eat('/') {
                    self.skip_ws();
                    let d = self.take_while(|c| c.is_ascii_digit());
                    if d.is_empty() {
                        return Err(self.err("expected denominator"));
                    }
                    text = format!("{n}/{d}");
                }
                Ok(PolyScalar::constant(text.parse()?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                let sym = Symbol::new(name)?;
                let mut e = 1u32;
                if self.eat('^') {
                    self.skip_ws();
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    e = digits.parse().map_err(|_| self.err("expected exponent"))?;
                }
                let mut m = Monomial::one();
                for _ in 0..e {
                    m = m.mul(&Monomial::symbol(sym.clone()));
                }
                Ok(PolyScalar::monomial(m, Rational::one()))
            }
            _ => Err(self.err("expected number or symbol")),
        }
    }
}
