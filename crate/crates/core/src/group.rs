//! The finite-data model group: tuples `(T, fC, kv, cal)`.

use std::fmt;

use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{PolyScalar, Rational};
use crate::symplectic::{act_on_coh, iota, twist_matrix, CohVector, Generator, Genus, SpMatrix};

/// An element of the model group.
///
/// `t` is the action on `H_1`; `a` caches the induced action `(T^{-1})^T` on `H^1`, which
/// is the action used by every twisted formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelSymp {
    t: SpMatrix,
    a: SpMatrix,
    fc: CohVector<PolyScalar>,
    kv: CohVector<Rational>,
    cal: PolyScalar,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupTag {
    Full,
    Symp0,
    Ham,
    TorelliLike,
}

impl SubgroupTag {
    pub fn contains(self, phi: &ModelSymp) -> bool {
        match self {
            SubgroupTag::Full => true,
            SubgroupTag::Symp0 => phi.t.is_identity() && phi.kv.is_zero(),
            SubgroupTag::Ham => phi.t.is_identity() && phi.kv.is_zero() && phi.fc.is_zero(),
            SubgroupTag::TorelliLike => phi.t.is_identity(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SubgroupTag::Full => "full",
            SubgroupTag::Symp0 => "symp0",
            SubgroupTag::Ham => "ham",
            SubgroupTag::TorelliLike => "torelli-like",
        }
    }
}

fn check(expected: Genus, found: Genus) -> Result<()> {
    if expected != found {
        return Err(Error::GenusMismatch(expected.get(), found.get()));
    }
    Ok(())
}

impl ModelSymp {
    pub fn new(
        t: SpMatrix,
        fc: CohVector<PolyScalar>,
        kv: CohVector<Rational>,
        cal: PolyScalar,
    ) -> Result<Self> {
        let g = t.genus();
        check(g, fc.genus())?;
        check(g, kv.genus())?;
        let a = act_on_coh(&t)?;
        Ok(ModelSymp { t, a, fc, kv, cal })
    }

    pub fn identity(g: Genus) -> Self {
        ModelSymp {
            t: SpMatrix::identity(g),
            a: SpMatrix::identity(g),
            fc: CohVector::zero(g),
            kv: CohVector::zero(g),
            cal: PolyScalar::zero(),
        }
    }

    /// `(I, fc, 0, cal)`.
    pub fn heisenberg(fc: CohVector<PolyScalar>, cal: PolyScalar) -> Self {
        let g = fc.genus();
        ModelSymp {
            t: SpMatrix::identity(g),
            a: SpMatrix::identity(g),
            fc,
            kv: CohVector::zero(g),
            cal,
        }
    }

    /// `(I, fc, 0, 0)`.
    pub fn symp0(fc: CohVector<PolyScalar>) -> Self {
        Self::heisenberg(fc, PolyScalar::zero())
    }

    /// Central element `(I, 0, 0, cal)`.
    pub fn central(g: Genus, cal: PolyScalar) -> Self {
        Self::heisenberg(CohVector::zero(g), cal)
    }

    /// A lift of a Lickorish generator with free decoration.
    pub fn lift_generator(
        generator: Generator,
        fc: CohVector<PolyScalar>,
        kv: CohVector<Rational>,
        cal: PolyScalar,
    ) -> Result<Self> {
        let t = twist_matrix(fc.genus(), generator)?;
        Self::new(t, fc, kv, cal)
    }

    /// Product of generator matrices, left to right, decorated as given.
    pub fn from_word(
        word: &[Generator],
        fc: CohVector<PolyScalar>,
        kv: CohVector<Rational>,
        cal: PolyScalar,
    ) -> Result<Self> {
        let g = fc.genus();
        let mut t = SpMatrix::identity(g);
        for &gen in word {
            t = t.mul(&twist_matrix(g, gen)?);
        }
        Self::new(t, fc, kv, cal)
    }

    pub fn genus(&self) -> Genus {
        self.t.genus()
    }

    pub fn matrix(&self) -> &SpMatrix {
        &self.t
    }

    /// Action on `H^1`.
    pub fn action(&self) -> &SpMatrix {
        &self.a
    }

    pub fn fc(&self) -> &CohVector<PolyScalar> {
        &self.fc
    }

    pub fn kv(&self) -> &CohVector<Rational> {
        &self.kv
    }

    pub fn kv_poly(&self) -> CohVector<PolyScalar> {
        self.kv.map(|c| PolyScalar::from(c.clone()))
    }

    pub fn cal(&self) -> &PolyScalar {
        &self.cal
    }

    /// `flux̃ = fC + kv`.
    pub fn flux_tilde(&self) -> CohVector<PolyScalar> {
        &self.fc + &self.kv_poly()
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_identity() && self.fc.is_zero() && self.kv.is_zero() && self.cal.is_zero()
    }

    pub fn compose(&self, other: &ModelSymp) -> Result<ModelSymp> {
        check(self.genus(), other.genus())?;
        let moved = self.a.apply(&other.fc);
        let cal = &(&self.cal + &other.cal) + &iota(&self.fc, &moved)?;
        Ok(ModelSymp {
            t: self.t.mul(&other.t),
            a: self.a.mul(&other.a),
            fc: &self.fc + &moved,
            kv: &self.kv + &self.a.apply(&other.kv),
            cal,
        })
    }

    /// Composition of elements known to share a genus.
    pub(crate) fn mul(&self, other: &ModelSymp) -> ModelSymp {
        self.compose(other).expect("genus mismatch inside a chain")
    }

    pub fn inverse(&self) -> ModelSymp {
        let a_inv = self.a.inverse();
        ModelSymp {
            t: self.t.inverse(),
            fc: -&a_inv.apply(&self.fc),
            kv: -&a_inv.apply(&self.kv),
            a: a_inv,
            cal: -&self.cal,
        }
    }

    pub fn commutes_with(&self, other: &ModelSymp) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// `φψφ^{-1}ψ^{-1}` for two elements of the Heisenberg submodel.
    pub fn commutator(&self, other: &ModelSymp) -> Result<ModelSymp> {
        for phi in [self, other] {
            if !SubgroupTag::Symp0.contains(phi) {
                return Err(Error::OutsideSubgroup("symp0"));
            }
        }
        Ok(self
            .compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())?)
    }

    /// Image in the section `{(T, 0, kv, 0)}`, i.e. forgetting the kernel data.
    pub fn project_mapping_class(&self) -> ModelSymp {
        let g = self.genus();
        ModelSymp {
            t: self.t.clone(),
            a: self.a.clone(),
            fc: CohVector::zero(g),
            kv: self.kv.clone(),
            cal: PolyScalar::zero(),
        }
    }

    /// Block embedding into a surface of genus `total`, starting at handle `offset`.
    pub fn embed(&self, offset: usize, total: Genus) -> ModelSymp {
        ModelSymp {
            t: self.t.embed(offset, total),
            a: self.a.embed(offset, total),
            fc: self.fc.embed(offset, total),
            kv: self.kv.embed(offset, total),
            cal: self.cal.clone(),
        }
    }
}

impl fmt::Debug for ModelSymp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = if self.t.is_identity() {
            "I".to_string()
        } else {
            format!("{:?}", self.t.rows())
        };
        write!(f, "({t}, {}, {}, {})", self.fc, self.kv, self.cal)
    }
}
