use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Zero};

use super::{Monomial, PolyScalar, Rational};
use crate::error::Error;

/// A basis vector of the space being symmetrized.
pub trait HatBasis: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    /// The scalar obtained by forgetting the hat.
    fn underlying(&self) -> PolyScalar;
    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl HatBasis for Monomial {
    fn underlying(&self) -> PolyScalar {
        PolyScalar::monomial(self.clone(), Rational::one())
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Basis element `m̂₁m̂₂` of the second symmetric power, stored with sorted factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HatPair(Monomial, Monomial);

impl HatPair {
    pub fn new(a: Monomial, b: Monomial) -> Self {
        if a <= b {
            HatPair(a, b)
        } else {
            HatPair(b, a)
        }
    }

    pub fn factors(&self) -> (&Monomial, &Monomial) {
        (&self.0, &self.1)
    }
}

impl HatBasis for HatPair {
    fn underlying(&self) -> PolyScalar {
        PolyScalar::monomial(self.0.mul(&self.1), Rational::one())
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

/// Element of a symmetric algebra over `Q` on the basis `B`.
///
/// Keys are sorted multisets, so the product is commutative by construction. Nonzero
/// elements are homogeneous; the zero element has no degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPower<B: HatBasis> {
    terms: BTreeMap<Vec<B>, Rational>,
}

/// `S^k_Q(R)` on the hatted monomial basis.
pub type SymElement = SymPower<Monomial>;

/// `S^k(S^2_Q R)`, the home of the refined level-k classes.
pub type SymSquarePower = SymPower<HatPair>;

impl<B: HatBasis> Default for SymPower<B> {
    fn default() -> Self {
        SymPower {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: HatBasis> SymPower<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit of the symmetric algebra (degree 0).
    pub fn unit() -> Self {
        SymPower {
            terms: BTreeMap::from([(Vec::new(), Rational::one())]),
        }
    }

    pub fn basis(mut factors: Vec<B>, coef: Rational) -> Self {
        factors.sort();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(factors, coef);
        }
        SymPower { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[B], &Rational)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[B]) -> Rational {
        let mut k = key.to_vec();
        k.sort();
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_sorted(&mut self, key: Vec<B>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += coef * other`. Fails if both sides are nonzero of different degrees.
    pub fn add_scaled(&mut self, other: &Self, coef: &Rational) -> Result<(), Error> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch {
                    expected: a,
                    found: b,
                });
            }
        }
        for (k, c) in &other.terms {
            self.add_sorted(k.clone(), c * coef);
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SymPower {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect(),
        }
    }

    /// Product in the symmetric algebra; degrees add.
    pub fn sym_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut key = Vec::with_capacity(k1.len() + k2.len());
                key.extend(k1.iter().cloned());
                key.extend(k2.iter().cloned());
                key.sort();
                out.add_sorted(key, c1 * c2);
            }
        }
        out
    }

    /// Forget the hats: multiply the underlying scalars of every factor.
    pub fn project(&self) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (k, c) in &self.terms {
            let prod = k
                .iter()
                .fold(PolyScalar::one(), |acc, b| &acc * &b.underlying());
            out = &out + &prod.scale(c);
        }
        out
    }
}

/// `â`: expand over the monomial basis and hat each monomial.
pub fn hat(a: &PolyScalar) -> SymElement {
    let mut out = SymElement::zero();
    for (m, c) in a.terms() {
        out.add_sorted(vec![m.clone()], c.clone());
    }
    out
}

pub fn sym_mul<B: HatBasis>(s: &SymPower<B>, t: &SymPower<B>) -> SymPower<B> {
    s.sym_mul(t)
}

pub fn project<B: HatBasis>(s: &SymPower<B>) -> PolyScalar {
    s.project()
}

impl SymElement {
    /// Reads a degree-2 element as a degree-1 element of `S^*(S^2)`.
    pub fn to_square_power(&self) -> Result<SymSquarePower, Error> {
        let mut out = SymSquarePower::zero();
        for (k, c) in &self.terms {
            if k.len() != 2 {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: k.len(),
                });
            }
            out.add_sorted(vec![HatPair::new(k[0].clone(), k[1].clone())], c.clone());
        }
        Ok(out)
    }
}

impl SymSquarePower {
    /// The image under `S^k(S^2) -> S^{2k}` that multiplies out the pairs.
    pub fn flatten(&self) -> SymElement {
        let mut out = SymElement::zero();
        for (k, c) in &self.terms {
            let mut flat: Vec<Monomial> =
                k.iter().flat_map(|p| [p.0.clone(), p.1.clone()]).collect();
            flat.sort();
            out.add_sorted(flat, c.clone());
        }
        out
    }
}

impl<B: HatBasis> Add<&SymPower<B>> for &SymPower<B> {
    type Output = SymPower<B>;
    /// Panics on a degree mismatch; use [`SymPower::add_scaled`] to handle it.
    fn add(self, rhs: &SymPower<B>) -> SymPower<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one())
            .expect("degree mismatch in sum");
        out
    }
}

impl<B: HatBasis> Sub<&SymPower<B>> for &SymPower<B> {
    type Output = SymPower<B>;
    fn sub(self, rhs: &SymPower<B>) -> SymPower<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one())
            .expect("degree mismatch in difference");
        out
    }
}

impl<B: HatBasis> Neg for &SymPower<B> {
    type Output = SymPower<B>;
    fn neg(self) -> SymPower<B> {
        self.scale(&-Rational::one())
    }
}

impl<B: HatBasis> fmt::Display for SymPower<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, c.abs())
            } else {
                (false, c.clone())
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() || k.is_empty() {
                write!(f, "{mag}")?;
                if !k.is_empty() {
                    f.write_str("*")?;
                }
            }
            if !k.is_empty() {
                f.write_str("[")?;
                for (i, b) in k.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    b.fmt_factor(f)?;
                }
                f.write_str("]")?;
            }
        }
        Ok(())
    }
}

impl<B: HatBasis> fmt::Debug for SymPower<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
