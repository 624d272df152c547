use std::fmt;
use std::sync::Arc;

use num::traits::Zero;
use rayon::prelude::*;

use super::BarChain;
use crate::error::{Error, Result};
use crate::group::ModelSymp;
use crate::scalars::{PolyScalar, Rational, SymElement, SymSquarePower};
use crate::symplectic::{iota, iota_disc, CohVector, Genus, SpMatrix};

/// A coefficient module for cochains.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero_for(g: Genus) -> Self;

    fn add_scaled(&mut self, other: &Self, c: &Rational);

    /// Action of `A(φ)` on a twisted coefficient; the identity for trivial modules.
    fn act(&self, _a: &SpMatrix) -> Self {
        self.clone()
    }
}

/// Coefficients with a product, usable in the Alexander–Whitney cup.
pub trait CupProduct: Coefficient {
    fn cup(&self, other: &Self) -> Self;
}

impl Coefficient for Rational {
    fn zero_for(_: Genus) -> Self {
        Rational::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += &(other * c);
    }
}

impl CupProduct for Rational {
    fn cup(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for PolyScalar {
    fn zero_for(_: Genus) -> Self {
        PolyScalar::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self = &*self + &other.scale(c);
    }
}

impl CupProduct for PolyScalar {
    fn cup(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for SymElement {
    fn zero_for(_: Genus) -> Self {
        SymElement::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        SymElement::add_scaled(self, other, c).expect("homogeneous cochain values");
    }
}

impl CupProduct for SymElement {
    fn cup(&self, other: &Self) -> Self {
        self.sym_mul(other)
    }
}

impl Coefficient for SymSquarePower {
    fn zero_for(_: Genus) -> Self {
        SymSquarePower::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        SymSquarePower::add_scaled(self, other, c).expect("homogeneous cochain values");
    }
}

impl CupProduct for SymSquarePower {
    fn cup(&self, other: &Self) -> Self {
        self.sym_mul(other)
    }
}

impl Coefficient for CohVector<PolyScalar> {
    fn zero_for(g: Genus) -> Self {
        CohVector::zero(g)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self = &*self + &other.scale(c);
    }
    fn act(&self, a: &SpMatrix) -> Self {
        a.apply(self)
    }
}

type Evaluator<C> = dyn Fn(&[ModelSymp]) -> Result<C> + Send + Sync;

/// An inhomogeneous cochain given by an evaluator on tuples.
pub struct BarCochain<C> {
    name: String,
    genus: Genus,
    degree: usize,
    twisted: bool,
    eval: Arc<Evaluator<C>>,
}

impl<C> Clone for BarCochain<C> {
    fn clone(&self) -> Self {
        BarCochain {
            name: self.name.clone(),
            genus: self.genus,
            degree: self.degree,
            twisted: self.twisted,
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<C> fmt::Debug for BarCochain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[deg {}, g={}{}]",
            self.name,
            self.degree,
            self.genus,
            if self.twisted { ", twisted" } else { "" }
        )
    }
}

impl<C: Coefficient> BarCochain<C> {
    /// Cochain with trivial action on its coefficients.
    pub fn new(
        name: impl Into<String>,
        g: Genus,
        degree: usize,
        eval: impl Fn(&[ModelSymp]) -> Result<C> + Send + Sync + 'static,
    ) -> Self {
        BarCochain {
            name: name.into(),
            genus: g,
            degree,
            twisted: false,
            eval: Arc::new(eval),
        }
    }

    /// Cochain valued in a module with the `H^1` action.
    pub fn twisted(
        name: impl Into<String>,
        g: Genus,
        degree: usize,
        eval: impl Fn(&[ModelSymp]) -> Result<C> + Send + Sync + 'static,
    ) -> Self {
        BarCochain {
            name: name.into(),
            genus: g,
            degree,
            twisted: true,
            eval: Arc::new(eval),
        }
    }

    pub fn constant(name: impl Into<String>, g: Genus, value: C, twisted: bool) -> Self {
        let eval = move |_: &[ModelSymp]| Ok(value.clone());
        BarCochain {
            name: name.into(),
            genus: g,
            degree: 0,
            twisted,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_twisted(&self) -> bool {
        self.twisted
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn value(&self, tuple: &[ModelSymp]) -> Result<C> {
        if tuple.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: tuple.len(),
            });
        }
        if let Some(bad) = tuple.iter().find(|e| e.genus() != self.genus) {
            return Err(Error::GenusMismatch(self.genus.get(), bad.genus().get()));
        }
        (self.eval)(tuple)
    }

    /// `⟨f, c⟩ = Σ c_t f(t)`; terms are evaluated in parallel and summed in chain order.
    pub fn evaluate(&self, c: &BarChain) -> Result<C> {
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: c.degree(),
            });
        }
        if c.genus() != self.genus {
            return Err(Error::GenusMismatch(self.genus.get(), c.genus().get()));
        }
        let terms: Vec<(&[ModelSymp], &Rational)> = c.terms().collect();
        let values: Vec<C> = terms
            .par_iter()
            .map(|(t, _)| (self.eval)(t))
            .collect::<Result<_>>()?;
        let mut acc = C::zero_for(self.genus);
        for ((_, coef), v) in terms.iter().zip(&values) {
            acc.add_scaled(v, coef);
        }
        Ok(acc)
    }

    /// Twisted coboundary `δf(g₁,…,g_{n+1}) = g₁·f(g₂,…) + Σ(−1)^i f(…,g_i g_{i+1},…) + (−1)^{n+1} f(g₁,…,g_n)`.
    pub fn coboundary(&self) -> BarCochain<C> {
        let f = self.clone();
        let n = self.degree;
        let twisted = self.twisted;
        let eval = move |t: &[ModelSymp]| -> Result<C> {
            let first = (f.eval)(&t[1..])?;
            let mut acc = if twisted {
                first.act(t[0].action())
            } else {
                first
            };
            for i in 1..=n {
                let mut face = Vec::with_capacity(n);
                face.extend_from_slice(&t[..i - 1]);
                face.push(t[i - 1].compose(&t[i])?);
                face.extend_from_slice(&t[i + 1..]);
                acc.add_scaled(&(f.eval)(&face)?, &sign(i));
            }
            acc.add_scaled(&(f.eval)(&t[..n])?, &sign(n + 1));
            Ok(acc)
        };
        BarCochain {
            name: format!("d({})", self.name),
            genus: self.genus,
            degree: n + 1,
            twisted,
            eval: Arc::new(eval),
        }
    }

    pub fn try_add(&self, other: &BarCochain<C>) -> Result<BarCochain<C>> {
        self.combine(other, &Rational::from(1), "+")
    }

    pub fn try_sub(&self, other: &BarCochain<C>) -> Result<BarCochain<C>> {
        self.combine(other, &Rational::from(-1), "-")
    }

    fn combine(&self, other: &BarCochain<C>, c: &Rational, op: &str) -> Result<BarCochain<C>> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.get(), other.genus.get()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        if self.twisted != other.twisted {
            return Err(Error::CoefficientMismatch(
                "cannot add twisted and trivial cochains".into(),
            ));
        }
        let (f, h, c) = (self.clone(), other.clone(), c.clone());
        let eval = move |t: &[ModelSymp]| -> Result<C> {
            let mut v = (f.eval)(t)?;
            v.add_scaled(&(h.eval)(t)?, &c);
            Ok(v)
        };
        Ok(BarCochain {
            name: format!("({} {op} {})", self.name, other.name),
            genus: self.genus,
            degree: self.degree,
            twisted: self.twisted,
            eval: Arc::new(eval),
        })
    }

    pub fn scale(&self, r: &Rational) -> BarCochain<C> {
        let (f, r2) = (self.clone(), r.clone());
        let g = self.genus;
        let eval = move |t: &[ModelSymp]| -> Result<C> {
            let mut acc = C::zero_for(g);
            acc.add_scaled(&(f.eval)(t)?, &r2);
            Ok(acc)
        };
        BarCochain {
            name: format!("{r}*{}", self.name),
            genus: self.genus,
            degree: self.degree,
            twisted: self.twisted,
            eval: Arc::new(eval),
        }
    }

    /// Post-composition with a coefficient map (trivial action on the result).
    pub fn map_values<D: Coefficient>(
        &self,
        name: impl Into<String>,
        m: impl Fn(C) -> D + Send + Sync + 'static,
    ) -> BarCochain<D> {
        let f = self.clone();
        BarCochain::new(name, self.genus, self.degree, move |t| Ok(m((f.eval)(t)?)))
    }
}

fn sign(i: usize) -> Rational {
    Rational::from(if i % 2 == 0 { 1 } else { -1 })
}

/// `(f ∪ h)(g₁,…,g_{p+q}) = f(g₁,…,g_p)·h(g_{p+1},…,g_{p+q})`.
pub fn aw_cup<C: CupProduct>(f: &BarCochain<C>, h: &BarCochain<C>) -> Result<BarCochain<C>> {
    if f.twisted || h.twisted {
        return Err(Error::CoefficientMismatch(
            "the cup product needs trivial coefficients".into(),
        ));
    }
    if f.genus != h.genus {
        return Err(Error::GenusMismatch(f.genus.get(), h.genus.get()));
    }
    let p = f.degree;
    let (a, b) = (f.clone(), h.clone());
    Ok(BarCochain::new(
        format!("({} u {})", f.name, h.name),
        f.genus,
        f.degree + h.degree,
        move |t| Ok((a.eval)(&t[..p])?.cup(&(b.eval)(&t[p..])?)),
    ))
}

fn check_pair_inputs(
    f1: &BarCochain<CohVector<PolyScalar>>,
    f2: &BarCochain<CohVector<PolyScalar>>,
) -> Result<()> {
    for f in [f1, f2] {
        if f.degree != 1 || !f.twisted {
            return Err(Error::CoefficientMismatch(format!(
                "{} is not a twisted 1-cochain",
                f.name
            )));
        }
    }
    if f1.genus != f2.genus {
        return Err(Error::GenusMismatch(f1.genus.get(), f2.genus.get()));
    }
    Ok(())
}

/// `(g, h) ↦ ι(f₁(g), A(g) f₂(h))`.
pub fn pair_cocycle(
    f1: &BarCochain<CohVector<PolyScalar>>,
    f2: &BarCochain<CohVector<PolyScalar>>,
) -> Result<BarCochain<PolyScalar>> {
    check_pair_inputs(f1, f2)?;
    let (a, b) = (f1.clone(), f2.clone());
    Ok(BarCochain::new(
        format!("{}.{}", f1.name, f2.name),
        f1.genus,
        2,
        move |t| {
            let u = (a.eval)(&t[..1])?;
            let v = t[0].action().apply(&(b.eval)(&t[1..])?);
            iota(&u, &v)
        },
    ))
}

/// `(g, h) ↦ ι̃(f₁(g), A(g) f₂(h))`, valued in `S^2_Q R`.
pub fn pair_cocycle_disc(
    f1: &BarCochain<CohVector<PolyScalar>>,
    f2: &BarCochain<CohVector<PolyScalar>>,
) -> Result<BarCochain<SymElement>> {
    check_pair_inputs(f1, f2)?;
    let (a, b) = (f1.clone(), f2.clone());
    Ok(BarCochain::new(
        format!("{}~{}", f1.name, f2.name),
        f1.genus,
        2,
        move |t| {
            let u = (a.eval)(&t[..1])?;
            let v = t[0].action().apply(&(b.eval)(&t[1..])?);
            iota_disc(&u, &v)
        },
    ))
}

/// Checks the crossed law `f(gh) = f(g) + g·f(h)` on the given pairs.
pub fn check_crossed(
    f: &BarCochain<CohVector<PolyScalar>>,
    pairs: &[(ModelSymp, ModelSymp)],
) -> Result<()> {
    for (g, h) in pairs {
        let lhs = f.value(&[g.compose(h)?])?;
        let rhs = &f.value(std::slice::from_ref(g))?
            + &g.action().apply(&f.value(std::slice::from_ref(h))?);
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "{} fails the crossed law",
                f.name
            )));
        }
    }
    Ok(())
}
