use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::group::ModelSymp;
use crate::scalars::Rational;
use crate::symplectic::Genus;

/// Rational chain in the inhomogeneous bar complex: a finite sum of `n`-tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct BarChain {
    genus: Genus,
    degree: usize,
    terms: BTreeMap<Vec<ModelSymp>, Rational>,
}

impl BarChain {
    pub fn zero(g: Genus, degree: usize) -> Self {
        BarChain {
            genus: g,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-0 chain `c·()`.
    pub fn point(g: Genus, c: Rational) -> Self {
        let mut out = Self::zero(g, 0);
        out.add_term(Vec::new(), &c);
        out
    }

    /// A single tuple with coefficient one.
    pub fn tuple(g: Genus, tuple: Vec<ModelSymp>) -> Result<Self> {
        let mut out = Self::zero(g, tuple.len());
        out.try_add_term(tuple, &Rational::from(1))?;
        Ok(out)
    }

    pub fn from_terms(
        g: Genus,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<ModelSymp>, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(g, degree);
        for (t, c) in terms {
            out.try_add_term(t, &c)?;
        }
        Ok(out)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[ModelSymp], &Rational)> {
        self.terms.iter().map(|(t, c)| (t.as_slice(), c))
    }

    pub fn coefficient(&self, tuple: &[ModelSymp]) -> Rational {
        self.terms
            .get(tuple)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn try_add_term(&mut self, tuple: Vec<ModelSymp>, coef: &Rational) -> Result<()> {
        if tuple.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: tuple.len(),
            });
        }
        if let Some(bad) = tuple.iter().find(|e| e.genus() != self.genus) {
            return Err(Error::GenusMismatch(self.genus.get(), bad.genus().get()));
        }
        self.insert(tuple, coef);
        Ok(())
    }

    /// Panics on a degree or genus mismatch.
    pub fn add_term(&mut self, tuple: Vec<ModelSymp>, coef: &Rational) {
        self.try_add_term(tuple, coef)
            .expect("malformed chain term");
    }

    fn insert(&mut self, tuple: Vec<ModelSymp>, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
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

    pub fn try_add(&self, other: &BarChain) -> Result<BarChain> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.get(), other.genus.get()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.insert(t.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> BarChain {
        let mut out = Self::zero(self.genus, self.degree);
        if r.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(t, c)| (t.clone(), c * r)).collect();
        out
    }

    /// `∂(g₁,…,g_n) = (g₂,…,g_n) + Σ(−1)^i(…,g_i g_{i+1},…) + (−1)^n(g₁,…,g_{n−1})`.
    pub fn boundary(&self) -> Result<BarChain> {
        let n = self.degree;
        if n == 0 {
            return Err(Error::Precondition("boundary of a degree-0 chain".into()));
        }
        let mut out = Self::zero(self.genus, n - 1);
        for (t, c) in &self.terms {
            out.insert(t[1..].to_vec(), c);
            let neg = -c;
            for i in 1..n {
                let mut face = Vec::with_capacity(n - 1);
                face.extend_from_slice(&t[..i - 1]);
                face.push(t[i - 1].mul(&t[i]));
                face.extend_from_slice(&t[i + 1..]);
                out.insert(face, if i % 2 == 0 { c } else { &neg });
            }
            out.insert(t[..n - 1].to_vec(), if n % 2 == 0 { c } else { &neg });
        }
        Ok(out)
    }

    pub fn is_cycle(&self) -> bool {
        self.degree == 0 || self.boundary().map(|b| b.is_zero()).unwrap_or(false)
    }

    /// Applies a map to every entry of every tuple.
    pub fn map_elements(&self, g: Genus, f: impl Fn(&ModelSymp) -> ModelSymp) -> BarChain {
        let mut out = Self::zero(g, self.degree);
        for (t, c) in &self.terms {
            out.insert(t.iter().map(&f).collect(), c);
        }
        out
    }

    pub fn embed(&self, offset: usize, total: Genus) -> BarChain {
        self.map_elements(total, |e| e.embed(offset, total))
    }

    /// Push-forward to the mapping-class section, forgetting `fC` and `cal`.
    pub fn p_star(&self) -> BarChain {
        self.map_elements(self.genus, ModelSymp::project_mapping_class)
    }
}

impl Add<&BarChain> for &BarChain {
    type Output = BarChain;
    fn add(self, rhs: &BarChain) -> BarChain {
        self.try_add(rhs).expect("chain shape mismatch")
    }
}

impl Sub<&BarChain> for &BarChain {
    type Output = BarChain;
    fn sub(self, rhs: &BarChain) -> BarChain {
        self.try_add(&-rhs).expect("chain shape mismatch")
    }
}

impl Neg for &BarChain {
    type Output = BarChain;
    fn neg(self) -> BarChain {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Debug for BarChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{t:?}")?;
        }
        Ok(())
    }
}
