use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::traits::Zero;

use super::{form, CohVector, Genus, SpMatrix};
use crate::error::{Error, Result};
use crate::scalars::{Monomial, PolyScalar, Rational, SymElement};

/// Element of `Λ²_Q H^1(Σ; R)`, the exterior square over the rationals rather than over
/// the scalar ring.
///
/// With `R` modeled as `Q[Θ]`, `H^1(Σ; R)` has the `Q`-basis `m·e*_p` for monomials `m` and
/// positions `p`; these "atoms" are wedged freely, so `(θ₁x*₁)∧(θ₂y*₁)` and
/// `(θ₁θ₂x*₁)∧y*₁` stay distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalWedge2 {
    genus: Genus,
    terms: BTreeMap<((Monomial, usize), (Monomial, usize)), Rational>,
}

type Atom = (Monomial, usize);

impl RationalWedge2 {
    pub fn zero(g: Genus) -> Self {
        RationalWedge2 {
            genus: g,
            terms: BTreeMap::new(),
        }
    }

    /// `u ∧ v`, expanded over atoms.
    pub fn wedge(u: &CohVector<PolyScalar>, v: &CohVector<PolyScalar>) -> Result<Self> {
        if u.genus() != v.genus() {
            return Err(Error::GenusMismatch(u.genus().get(), v.genus().get()));
        }
        let mut out = Self::zero(u.genus());
        for (p, a) in u.coords().iter().enumerate() {
            for (q, b) in v.coords().iter().enumerate() {
                for (ma, ca) in a.terms() {
                    for (mb, cb) in b.terms() {
                        out.add_atoms((ma.clone(), p), (mb.clone(), q), ca * cb);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_atoms(&mut self, a: Atom, b: Atom, coef: Rational) {
        let (key, coef) = match a.cmp(&b) {
            std::cmp::Ordering::Equal => return,
            std::cmp::Ordering::Less => ((a, b), coef),
            std::cmp::Ordering::Greater => ((b, a), -coef),
        };
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

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.get(), other.genus.get()));
        }
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_atoms(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    /// Diagonal action of a matrix on `H^1` (coefficients are untouched).
    pub fn act(&self, m: &SpMatrix) -> Self {
        let n = self.genus.rank();
        let column = |p: usize| -> Vec<(usize, i64)> {
            (0..n)
                .filter_map(|i| Some((i, m.get(i, p))).filter(|&(_, c)| c != 0))
                .collect()
        };
        let mut out = Self::zero(self.genus);
        for (((ma, p), (mb, q)), c) in &self.terms {
            for (i, ci) in column(*p) {
                for (j, cj) in column(*q) {
                    out.add_atoms(
                        (ma.clone(), i),
                        (mb.clone(), j),
                        c * &Rational::from(ci * cj),
                    );
                }
            }
        }
        out
    }
}

impl fmt::Debug for RationalWedge2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus.get();
        let name = |p: usize| {
            if p < g {
                format!("x*{}", p + 1)
            } else {
                format!("y*{}", p - g + 1)
            }
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(((ma, p), (mb, q)), c)| format!("{c}*({ma}{})^({mb}{})", name(*p), name(*q)))
            .collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        )
    }
}

/// `(a u) ∧ (b v) ↦ ι(u, v) â b̂`, the coinvariant map onto `S^2_Q R`.
pub fn la2_coinvariant(w: &RationalWedge2) -> SymElement {
    let mut out = SymElement::zero();
    for (((ma, p), (mb, q)), c) in &w.terms {
        let f = form(w.genus, *p, *q);
        if f != 0 {
            let term = SymElement::basis(vec![ma.clone(), mb.clone()], c * &Rational::from(f));
            out.add_scaled(&term, &Rational::from(1)).expect("degree 2");
        }
    }
    out
}

/// `(m₁ x*₁) ∧ (m₂ y*₁)`, a preimage of `m̂₁ m̂₂` under [`la2_coinvariant`].
pub fn la2_witness(g: Genus, m1: &Monomial, m2: &Monomial) -> RationalWedge2 {
    let mut out = RationalWedge2::zero(g);
    out.add_atoms(
        (m1.clone(), g.x(1)),
        (m2.clone(), g.y(1)),
        Rational::from(1),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::hat;
    use crate::symplectic::{act_on_coh, iota_disc, twist_matrix, Generator};

    fn g2() -> Genus {
        Genus::new(2).unwrap()
    }

    #[test]
    fn examples() {
        let g = g2();
        let t1 = PolyScalar::var("t1");
        let t2 = PolyScalar::var("t2");
        let w = RationalWedge2::wedge(
            &CohVector::x(g, 1).mul_scalar(&t1),
            &CohVector::y(g, 1).mul_scalar(&t2),
        )
        .unwrap();
        assert_eq!(la2_coinvariant(&w), hat(&t1).sym_mul(&hat(&t2)));

        let a = RationalWedge2::wedge(&CohVector::x(g, 1), &CohVector::y(g, 1)).unwrap();
        let b = RationalWedge2::wedge(&CohVector::x(g, 2), &CohVector::y(g, 2)).unwrap();
        let one = hat(&PolyScalar::from(1));
        assert_eq!(
            la2_coinvariant(&a.try_add(&b).unwrap()),
            one.sym_mul(&one).scale(&Rational::from(2))
        );
    }

    #[test]
    fn rational_and_real_wedges_differ() {
        let g = g2();
        let t1 = PolyScalar::var("t1");
        let t2 = PolyScalar::var("t2");
        let split = RationalWedge2::wedge(
            &CohVector::x(g, 1).mul_scalar(&t1),
            &CohVector::y(g, 1).mul_scalar(&t2),
        )
        .unwrap();
        let joined = RationalWedge2::wedge(
            &CohVector::x(g, 1).mul_scalar(&(&t1 * &t2)),
            &CohVector::y(g, 1),
        )
        .unwrap();
        assert_ne!(split, joined);
        assert_ne!(la2_coinvariant(&split), la2_coinvariant(&joined));
        assert_eq!(
            la2_coinvariant(&split).project(),
            la2_coinvariant(&joined).project()
        );
    }

    #[test]
    fn agrees_with_discontinuous_pairing_and_is_invariant() {
        let g = g2();
        let t = PolyScalar::var("t");
        let u = &CohVector::x(g, 1).mul_scalar(&t) + &CohVector::y(g, 2).mul_scalar(&(&t * &t));
        let v = &CohVector::y(g, 1) + &CohVector::x(g, 2).mul_scalar(&(&t + &PolyScalar::from(3)));
        let w = RationalWedge2::wedge(&u, &v).unwrap();
        assert_eq!(la2_coinvariant(&w), iota_disc(&u, &v).unwrap());
        for gen in [Generator::Lambda(1), Generator::Mu(2), Generator::Nu(1)] {
            let a = act_on_coh(&twist_matrix(g, gen).unwrap()).unwrap();
            assert_eq!(la2_coinvariant(&w.act(&a)), la2_coinvariant(&w));
            assert_eq!(
                w.act(&a),
                RationalWedge2::wedge(&a.apply(&u), &a.apply(&v)).unwrap()
            );
        }
    }

    #[test]
    fn witnesses_hit_every_basis_monomial() {
        use crate::scalars::Alphabet;
        let names = ["t1", "t2", "t3", "t4"];
        for size in 1..=4 {
            let alphabet = Alphabet::new(&names[..size]).unwrap();
            let monos = alphabet.monomials_up_to(2);
            for g in [2, 3] {
                let g = Genus::new(g).unwrap();
                for (i, m1) in monos.iter().enumerate() {
                    for m2 in &monos[i..] {
                        let w = la2_witness(g, m1, m2);
                        let target =
                            SymElement::basis(vec![m1.clone(), m2.clone()], Rational::from(1));
                        assert_eq!(la2_coinvariant(&w), target);
                    }
                }
            }
        }
    }
}
