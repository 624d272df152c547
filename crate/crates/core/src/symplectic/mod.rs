//! First (co)homology of a closed genus-g surface with its pairings, the Lickorish
//! transvections acting on it, exterior powers, and the discontinuous intersection pairing.
//!
//! Basis conventions: positions `0..g` hold `x_1..x_g` (resp. `x*_1..x*_g`) and positions
//! `g..2g` hold `y_1..y_g` (resp. `y*_1..y*_g`), with `<x_i, y_j> = δ_ij` and
//! `ι(x*_i, y*_j) = δ_ij`. Public 1-based helpers such as [`Vector::x`] follow the same
//! order.

mod coinvariants;
pub(crate) mod exterior;
mod matrix;

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{hat, PolyScalar, Rational, Scalar, SymElement};

pub use coinvariants::{la2_coinvariant, la2_witness, RationalWedge2};
pub use exterior::{
    exterior_basis, ideal_quotient_dims, omega0, pair_ext, rep_1k_basis, ExtElement, IdealReducer,
};
pub use matrix::{act_on_coh, twist_matrix, Generator, SpMatrix};

/// Genus of the closed surface; at least 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Genus(usize);

impl Genus {
    pub fn new(g: usize) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Rank of `H_1`.
    pub fn rank(self) -> usize {
        2 * self.0
    }

    pub fn x(self, i: usize) -> usize {
        assert!(
            (1..=self.0).contains(&i),
            "x_{i} out of range for genus {}",
            self.0
        );
        i - 1
    }

    pub fn y(self, i: usize) -> usize {
        assert!(
            (1..=self.0).contains(&i),
            "y_{i} out of range for genus {}",
            self.0
        );
        self.0 + i - 1
    }

    /// Sum of genera, for block embeddings.
    pub fn plus(self, other: Genus) -> Genus {
        Genus(self.0 + other.0)
    }
}

impl TryFrom<usize> for Genus {
    type Error = Error;
    fn try_from(g: usize) -> Result<Self> {
        Genus::new(g)
    }
}

impl From<Genus> for usize {
    fn from(g: Genus) -> usize {
        g.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Marker for which space a vector or exterior element lives in.
pub trait Space: Copy + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync + 'static {
    const X: &'static str;
    const Y: &'static str;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Homology {}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cohomology {}

impl Space for Homology {
    const X: &'static str = "x";
    const Y: &'static str = "y";
}

impl Space for Cohomology {
    const X: &'static str = "x*";
    const Y: &'static str = "y*";
}

/// Skew form on basis positions: `<e_a, e_b>` (equally `ι(e*_a, e*_b)`).
pub fn form(g: Genus, a: usize, b: usize) -> i64 {
    let n = g.get();
    if a < n && b == a + n {
        1
    } else if b < n && a == b + n {
        -1
    } else {
        0
    }
}

/// Coordinate vector of length `2g`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector<S, K> {
    genus: Genus,
    coords: Vec<S>,
    _space: PhantomData<K>,
}

pub type HomVector<S> = Vector<S, Homology>;
pub type CohVector<S> = Vector<S, Cohomology>;

impl<S: Scalar, K: Space> Vector<S, K> {
    pub fn zero(g: Genus) -> Self {
        Vector {
            genus: g,
            coords: vec![S::zero(); g.rank()],
            _space: PhantomData,
        }
    }

    pub fn basis(g: Genus, pos: usize) -> Self {
        let mut v = Self::zero(g);
        v.coords[pos] = S::one();
        v
    }

    pub fn x(g: Genus, i: usize) -> Self {
        Self::basis(g, g.x(i))
    }

    pub fn y(g: Genus, i: usize) -> Self {
        Self::basis(g, g.y(i))
    }

    pub fn from_coords(coords: Vec<S>) -> Result<Self> {
        if coords.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "vector of odd length {}",
                coords.len()
            )));
        }
        let g = Genus::new(coords.len() / 2)?;
        Ok(Vector {
            genus: g,
            coords,
            _space: PhantomData,
        })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn coord(&self, pos: usize) -> &S {
        &self.coords[pos]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_scalar(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Vector<T, K> {
        Vector {
            genus: self.genus,
            coords: self.coords.iter().map(f).collect(),
            _space: PhantomData,
        }
    }

    /// The skew pairing in this basis; panics on a genus mismatch.
    pub fn pair(&self, other: &Self) -> S {
        assert_eq!(self.genus, other.genus, "genus mismatch in pairing");
        let g = self.genus.get();
        let mut acc = S::zero();
        for i in 0..g {
            acc = acc + self.coords[i].clone() * other.coords[g + i].clone()
                - self.coords[g + i].clone() * other.coords[i].clone();
        }
        acc
    }

    /// Zero-extends into the block starting at `offset` of a genus-`total` surface.
    pub fn embed(&self, offset: usize, total: Genus) -> Self {
        let g = self.genus.get();
        let n = total.get();
        assert!(offset + g <= n, "block does not fit");
        let mut out = Self::zero(total);
        for i in 0..g {
            out.coords[offset + i] = self.coords[i].clone();
            out.coords[n + offset + i] = self.coords[g + i].clone();
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        Vector {
            genus: self.genus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
            _space: PhantomData,
        }
    }
}

impl<S: Scalar, K: Space> Add<&Vector<S, K>> for &Vector<S, K> {
    type Output = Vector<S, K>;
    fn add(self, rhs: &Vector<S, K>) -> Vector<S, K> {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Scalar, K: Space> Sub<&Vector<S, K>> for &Vector<S, K> {
    type Output = Vector<S, K>;
    fn sub(self, rhs: &Vector<S, K>) -> Vector<S, K> {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<S: Scalar, K: Space> Neg for &Vector<S, K> {
    type Output = Vector<S, K>;
    fn neg(self) -> Vector<S, K> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar, K: Space> fmt::Display for Vector<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus.get();
        let mut first = true;
        for (pos, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let (name, i) = if pos < g {
                (K::X, pos + 1)
            } else {
                (K::Y, pos - g + 1)
            };
            if c.is_one() {
                write!(f, "{name}{i}")?;
            } else {
                write!(f, "({c}){name}{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<S: Scalar, K: Space> fmt::Debug for Vector<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar + Serialize, K: Space> Serialize for Vector<S, K> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        self.coords.serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>, K: Space> Deserialize<'de> for Vector<S, K> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<S>::deserialize(d)?;
        Vector::from_coords(coords).map_err(serde::de::Error::custom)
    }
}

fn same_genus(a: Genus, b: Genus) -> Result<()> {
    if a != b {
        return Err(Error::GenusMismatch(a.get(), b.get()));
    }
    Ok(())
}

/// `<a, b>` on `H_1`.
pub fn intersect<S: Scalar>(a: &HomVector<S>, b: &HomVector<S>) -> Result<S> {
    same_genus(a.genus, b.genus)?;
    Ok(a.pair(b))
}

/// Cup-product pairing on `H^1`.
pub fn iota<S: Scalar>(u: &CohVector<S>, v: &CohVector<S>) -> Result<S> {
    same_genus(u.genus, v.genus)?;
    Ok(u.pair(v))
}

/// `x_i ↦ -y*_i`, `y_i ↦ x*_i`.
pub fn pd<S: Scalar>(a: &HomVector<S>) -> CohVector<S> {
    let g = a.genus.get();
    let mut coords = Vec::with_capacity(2 * g);
    coords.extend(a.coords[g..].iter().cloned());
    coords.extend(a.coords[..g].iter().map(|c| -c.clone()));
    Vector {
        genus: a.genus,
        coords,
        _space: PhantomData,
    }
}

pub fn pd_inverse<S: Scalar>(w: &CohVector<S>) -> HomVector<S> {
    let g = w.genus.get();
    let mut coords = Vec::with_capacity(2 * g);
    coords.extend(w.coords[g..].iter().map(|c| -c.clone()));
    coords.extend(w.coords[..g].iter().cloned());
    Vector {
        genus: w.genus,
        coords,
        _space: PhantomData,
    }
}

/// Reinterprets coordinates in the dual basis (`x_i ↦ x*_i`, `y_i ↦ y*_i`), so that the
/// Kronecker pairing of `ξ` with `dual_basis(a)` is the coordinate dot product.
pub fn dual_basis<S: Scalar>(a: &HomVector<S>) -> CohVector<S> {
    Vector {
        genus: a.genus,
        coords: a.coords.clone(),
        _space: PhantomData,
    }
}

/// `ι̃(u, v) = Σ ι(e_i, e_j) â_i b̂_j`, the pairing valued in `S^2_Q R`.
pub fn iota_disc(u: &CohVector<PolyScalar>, v: &CohVector<PolyScalar>) -> Result<SymElement> {
    same_genus(u.genus, v.genus)?;
    Ok(iota_disc_unchecked(u, v))
}

pub(crate) fn iota_disc_unchecked(
    u: &CohVector<PolyScalar>,
    v: &CohVector<PolyScalar>,
) -> SymElement {
    let g = u.genus.get();
    let mut out = SymElement::zero();
    let one = Rational::from(1);
    let minus = Rational::from(-1);
    for i in 0..g {
        let (ux, uy) = (&u.coords[i], &u.coords[g + i]);
        let (vx, vy) = (&v.coords[i], &v.coords[g + i]);
        if !ux.is_zero() && !vy.is_zero() {
            out.add_scaled(&hat(ux).sym_mul(&hat(vy)), &one)
                .expect("degree 2");
        }
        if !uy.is_zero() && !vx.is_zero() {
            out.add_scaled(&hat(uy).sym_mul(&hat(vx)), &minus)
                .expect("degree 2");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Monomial, PolyScalar};

    fn g(n: usize) -> Genus {
        Genus::new(n).unwrap()
    }

    type HQ = HomVector<Rational>;
    type CQ = CohVector<Rational>;
    type CP = CohVector<PolyScalar>;

    #[test]
    fn genus_must_be_at_least_two() {
        assert_eq!(Genus::new(1), Err(Error::InvalidGenus(1)));
        assert!(Genus::new(2).is_ok());
    }

    #[test]
    fn intersection_conventions() {
        let g2 = g(2);
        let one = Rational::from(1);
        assert_eq!(intersect(&HQ::x(g2, 1), &HQ::y(g2, 1)).unwrap(), one);
        assert_eq!(
            intersect(&HQ::y(g2, 1), &HQ::x(g2, 1)).unwrap(),
            -one.clone()
        );
        assert!(intersect(&HQ::x(g2, 1), &HQ::x(g2, 2)).unwrap().is_zero());
        assert_eq!(iota(&CQ::x(g2, 1), &CQ::y(g2, 1)).unwrap(), one);
        assert!(intersect(&HQ::x(g2, 1), &HQ::x(g(3), 1)).is_err());
    }

    #[test]
    fn pd_correspondence() {
        let g2 = g(2);
        assert_eq!(pd(&HQ::x(g2, 1)), -&CQ::y(g2, 1));
        assert_eq!(pd(&HQ::y(g2, 1)), CQ::x(g2, 1));
        let a = &HQ::x(g2, 1) + &HQ::y(g2, 2);
        assert_eq!(pd(&a), &(-&CQ::y(g2, 1)) + &CQ::x(g2, 2));
        assert_eq!(
            iota(&pd(&HQ::x(g2, 1)), &pd(&HQ::y(g2, 1))).unwrap(),
            Rational::from(1)
        );
        for p in 0..4 {
            for q in 0..4 {
                let (a, b) = (HQ::basis(g2, p), HQ::basis(g2, q));
                assert_eq!(iota(&pd(&a), &pd(&b)).unwrap(), intersect(&a, &b).unwrap());
            }
            assert_eq!(pd_inverse(&pd(&HQ::basis(g2, p))), HQ::basis(g2, p));
        }
    }

    #[test]
    fn iota_disc_examples() {
        let g2 = g(2);
        let t1 = PolyScalar::var("t1");
        let t2 = PolyScalar::var("t2");
        let th = PolyScalar::var("th");
        let u = CP::x(g2, 1).mul_scalar(&t1);
        let v = CP::y(g2, 1).mul_scalar(&t2);
        assert_eq!(iota_disc(&u, &v).unwrap(), hat(&t1).sym_mul(&hat(&t2)));
        let one = hat(&PolyScalar::from(1));
        assert_eq!(
            iota_disc(&CP::x(g2, 1), &CP::y(g2, 1)).unwrap(),
            one.sym_mul(&one)
        );
        let w = &CP::x(g2, 1).mul_scalar(&th) + &CP::y(g2, 1);
        assert!(iota_disc(&w, &w).unwrap().is_zero());
        let key = [Monomial::one(), Monomial::one()];
        assert_eq!(
            iota_disc(&CP::y(g2, 1), &CP::x(g2, 1))
                .unwrap()
                .coefficient(&key),
            Rational::from(-1)
        );
    }

    #[test]
    fn embedding_places_blocks() {
        let v = CQ::y(g(2), 2);
        let e = v.embed(2, g(4));
        assert_eq!(e, CQ::y(g(4), 4));
    }
}
