use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;

use itertools::Itertools;
use num::traits::One;

use super::{form, Cohomology, Genus, Homology, Space, Vector};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, SubspaceReducer};
use crate::scalars::{Rational, Scalar};

/// Homogeneous element of `Λ^k` over `H_1` or `H^1`, keyed by increasing position sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement<S, K> {
    genus: Genus,
    degree: usize,
    terms: BTreeMap<Vec<usize>, S>,
    _space: PhantomData<K>,
}

/// Sign of the permutation sorting `idx`, or `None` if an index repeats.
pub(crate) fn sort_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// All increasing `k`-subsets of `0..2g`, in lexicographic order.
pub fn exterior_basis(g: Genus, k: usize) -> Vec<Vec<usize>> {
    (0..g.rank()).combinations(k).collect()
}

impl<S: Scalar, K: Space> ExtElement<S, K> {
    pub fn zero(g: Genus, degree: usize) -> Self {
        ExtElement {
            genus: g,
            degree,
            terms: BTreeMap::new(),
            _space: PhantomData,
        }
    }

    pub fn one(g: Genus) -> Self {
        Self::basis(g, &[], S::one())
    }

    /// `coef · e_{i1} ∧ … ∧ e_{ik}` for positions in any order.
    pub fn basis(g: Genus, positions: &[usize], coef: S) -> Self {
        let mut out = Self::zero(g, positions.len());
        assert!(
            positions.iter().all(|&p| p < g.rank()),
            "position out of range"
        );
        let mut idx = positions.to_vec();
        if let Some(sign) = sort_sign(&mut idx) {
            out.add_term(idx, coef.scale(&Rational::from(sign)));
        }
        out
    }

    /// Applies a coefficient map termwise.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ExtElement<T, K> {
        let mut out = ExtElement::zero(self.genus, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn from_vector(v: &Vector<S, K>) -> Self {
        let mut out = Self::zero(v.genus(), 1);
        for (p, c) in v.coords().iter().enumerate() {
            out.add_term(vec![p], c.clone());
        }
        out
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

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &S)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn coefficient(&self, positions: &[usize]) -> S {
        self.terms.get(positions).cloned().unwrap_or_else(S::zero)
    }

    fn add_term(&mut self, key: Vec<usize>, coef: S) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + coef;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.get(), other.genus.get()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = if self.is_zero() {
            Self::zero(self.genus, other.degree)
        } else {
            self.clone()
        };
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.genus, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale(r));
        }
        out
    }

    /// Graded-commutative product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.genus, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some(sign) = sort_sign(&mut idx) {
                    out.add_term(idx, (ca.clone() * cb.clone()).scale(&Rational::from(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Apply a matrix to every factor.
    pub fn act(&self, m: &super::SpMatrix) -> Self {
        let cols: Vec<Vector<S, K>> = (0..self.genus.rank())
            .map(|p| m.apply(&Vector::basis(self.genus, p)))
            .collect();
        let mut out = Self::zero(self.genus, self.degree);
        for (k, c) in &self.terms {
            let mut prod = Self::basis(self.genus, &[], c.clone());
            for &p in k {
                prod = prod
                    .wedge(&Self::from_vector(&cols[p]))
                    .expect("same genus");
            }
            out = out.try_add(&prod).expect("same degree");
        }
        out
    }

    /// Coordinates in [`exterior_basis`] order.
    pub fn to_coords(&self) -> Vec<S> {
        exterior_basis(self.genus, self.degree)
            .into_iter()
            .map(|k| self.coefficient(&k))
            .collect()
    }

    pub fn from_coords(g: Genus, degree: usize, coords: &[S]) -> Self {
        let mut out = Self::zero(g, degree);
        for (k, c) in exterior_basis(g, degree).into_iter().zip(coords) {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<S: Scalar> ExtElement<S, Homology> {
    /// `C = 2·C₀`, `C₀(a_1∧…∧a_k) = Σ_{i<j} (-1)^{i+j-1} <a_i,a_j> a_1∧…â_i…â_j…∧a_k`.
    pub fn contract(&self) -> Result<Self> {
        if self.degree < 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: self.degree,
            });
        }
        let mut out = Self::zero(self.genus, self.degree - 2);
        for (k, c) in &self.terms {
            for i in 0..k.len() {
                for j in i + 1..k.len() {
                    let f = form(self.genus, k[i], k[j]);
                    if f == 0 {
                        continue;
                    }
                    // 1-based positions i+1, j+1 give exponent i + j + 1.
                    let sign = if (i + j + 1) % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = k
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &x)| x)
                        .collect();
                    out.add_term(rest, c.scale(&Rational::from(2 * sign * f)));
                }
            }
        }
        Ok(out)
    }
}

impl<S: Scalar, K: Space> fmt::Display for ExtElement<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let g = self.genus.get();
        let name = |p: usize| {
            if p < g {
                format!("{}{}", K::X, p + 1)
            } else {
                format!("{}{}", K::Y, p - g + 1)
            }
        };
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let body = if k.is_empty() {
                "1".to_string()
            } else {
                k.iter().map(|&p| name(p)).join("^")
            };
            if c.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "({c})*{body}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar, K: Space> fmt::Debug for ExtElement<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `ω₀ = Σ x_i ∧ y_i`.
pub fn omega0<S: Scalar, K: Space>(g: Genus) -> ExtElement<S, K> {
    let mut out = ExtElement::zero(g, 2);
    for i in 1..=g.get() {
        out.add_term(vec![g.x(i), g.y(i)], S::one());
    }
    out
}

/// Kronecker pairing of `Λ^k H_1` with `Λ^k H^1` in dual bases.
pub fn pair_ext<S: Scalar>(
    xi: &ExtElement<S, Homology>,
    eta: &ExtElement<S, Cohomology>,
) -> Result<S> {
    if xi.genus != eta.genus {
        return Err(Error::GenusMismatch(xi.genus.get(), eta.genus.get()));
    }
    if xi.degree != eta.degree {
        return Err(Error::DegreeMismatch {
            expected: xi.degree,
            found: eta.degree,
        });
    }
    let mut acc = S::zero();
    for (k, c) in &xi.terms {
        if let Some(d) = eta.terms.get(k) {
            acc = acc + c.clone() * d.clone();
        }
    }
    Ok(acc)
}

fn contraction_matrix(g: Genus, k: usize) -> QMatrix {
    let src = exterior_basis(g, k);
    let dst = exterior_basis(g, k - 2);
    let index: HashMap<Vec<usize>, usize> =
        dst.into_iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut m = QMatrix::zeros(index.len(), src.len());
    for (col, b) in src.iter().enumerate() {
        let img = ExtElement::<Rational, Homology>::basis(g, b, Rational::one())
            .contract()
            .expect("k >= 2");
        for (key, c) in img.terms() {
            m[(index[key], col)] = c.clone();
        }
    }
    m
}

/// Basis of the kernel of the contraction on `Λ^k H_1`, the irreducible `[1^k]`.
pub fn rep_1k_basis(g: Genus, k: usize) -> Result<Vec<ExtElement<Rational, Homology>>> {
    if k < 1 || k > g.get() {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= k <= {g}, got {k}"
        )));
    }
    if k == 1 {
        return Ok((0..g.rank())
            .map(|p| ExtElement::basis(g, &[p], Rational::one()))
            .collect());
    }
    let m = contraction_matrix(g, k);
    Ok(m.nullspace()
        .iter()
        .map(|v| ExtElement::from_coords(g, k, v))
        .collect())
}

fn ideal_spanning_set(g: Genus, d: usize) -> QMatrix {
    let n = exterior_basis(g, d).len();
    if d < 3 {
        return QMatrix::zeros(0, n);
    }
    let w = omega0::<Rational, Homology>(g);
    let mut rows = Vec::new();
    for h in 0..g.rank() {
        let wh = w
            .wedge(&ExtElement::basis(g, &[h], Rational::one()))
            .expect("same genus");
        for rest in exterior_basis(g, d - 3) {
            let v = wh
                .wedge(&ExtElement::basis(g, &rest, Rational::one()))
                .expect("same genus");
            if !v.is_zero() {
                rows.push(v.to_coords());
            }
        }
    }
    if rows.is_empty() {
        QMatrix::zeros(0, n)
    } else {
        QMatrix::from_rows(rows)
    }
}

/// Dimensions of `Λ^d H_1 / (ideal generated by ω₀ ∧ H_1)` for `d = 0..=up_to`.
pub fn ideal_quotient_dims(g: Genus, up_to: usize) -> Result<Vec<usize>> {
    if up_to > g.rank() {
        return Err(Error::IndexOutOfRange(format!(
            "degree {up_to} exceeds 2g = {}",
            g.rank()
        )));
    }
    Ok((0..=up_to)
        .map(|d| exterior_basis(g, d).len() - ideal_spanning_set(g, d).rank())
        .collect())
}

/// Canonical normal forms in `Λ^d` modulo the ideal generated by `ω₀ ∧ H_1`.
#[derive(Clone, Debug)]
pub struct IdealReducer {
    genus: Genus,
    degree: usize,
    reducer: SubspaceReducer,
}

impl IdealReducer {
    pub fn new(g: Genus, degree: usize) -> Self {
        IdealReducer {
            genus: g,
            degree,
            reducer: SubspaceReducer::new(ideal_spanning_set(g, degree)),
        }
    }

    pub fn ideal_dim(&self) -> usize {
        self.reducer.dim()
    }

    pub fn reduce<K: Space>(&self, x: &ExtElement<Rational, K>) -> ExtElement<Rational, K> {
        assert_eq!(
            (x.genus, x.degree),
            (self.genus, self.degree),
            "reducer shape mismatch"
        );
        let mut v = x.to_coords();
        self.reducer.reduce(&mut v);
        ExtElement::from_coords(self.genus, self.degree, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{iota, CohVector, HomVector};
    use num::traits::Zero;

    type EH = ExtElement<Rational, Homology>;
    type EC = ExtElement<Rational, Cohomology>;

    fn g(n: usize) -> Genus {
        Genus::new(n).unwrap()
    }

    fn binom(n: usize, k: isize) -> usize {
        if k < 0 || k as usize > n {
            return 0;
        }
        let k = k as usize;
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn v(gg: Genus, p: usize) -> EH {
        EH::basis(gg, &[p], Rational::one())
    }

    #[test]
    fn wedge_examples() {
        let g2 = g(2);
        let (x1, y1, x2, y2) = (v(g2, 0), v(g2, 2), v(g2, 1), v(g2, 3));
        let e = x1.wedge(&y1).unwrap().wedge(&x2).unwrap();
        assert_eq!(e.coefficient(&[0, 1, 2]), Rational::from(-1));
        assert_eq!(e, EH::basis(g2, &[0, 2, 1], Rational::one()));
        assert!(x1.wedge(&x1).unwrap().is_zero());
        let w = omega0::<Rational, Homology>(g2);
        let top = x1
            .wedge(&y1)
            .unwrap()
            .wedge(&x2)
            .unwrap()
            .wedge(&y2)
            .unwrap();
        assert_eq!(w.wedge(&w).unwrap(), top.scale(&Rational::from(2)));
        let a = x1.wedge(&y2).unwrap();
        assert_eq!(a.wedge(&x2).unwrap(), x2.wedge(&a).unwrap());
        assert_eq!(
            x1.wedge(&x2).unwrap(),
            x2.wedge(&x1).unwrap().scale(&Rational::from(-1))
        );
    }

    #[test]
    fn contraction_examples() {
        let g2 = g(2);
        let c = v(g2, 0).wedge(&v(g2, 2)).unwrap().contract().unwrap();
        assert_eq!(c, EH::one(g2).scale(&Rational::from(2)));
        assert!(v(g2, 0)
            .wedge(&v(g2, 1))
            .unwrap()
            .contract()
            .unwrap()
            .is_zero());
        assert!(v(g2, 0).contract().is_err());
    }

    #[test]
    fn johnson_contraction() {
        for n in 2..=5 {
            let gg = g(n);
            let mut partial = EH::zero(gg, 2);
            for i in 1..n {
                partial = partial
                    .try_add(&v(gg, gg.x(i)).wedge(&v(gg, gg.y(i))).unwrap())
                    .unwrap();
            }
            let tau = partial.wedge(&v(gg, gg.y(n))).unwrap();
            let want = v(gg, gg.y(n)).scale(&Rational::from(2 * (n as i64 - 1)));
            assert_eq!(tau.contract().unwrap(), want, "genus {n}");
        }
    }

    #[test]
    fn rep_dimensions() {
        assert_eq!(rep_1k_basis(g(2), 2).unwrap().len(), 5);
        assert_eq!(rep_1k_basis(g(3), 3).unwrap().len(), 14);
        assert_eq!(rep_1k_basis(g(2), 1).unwrap().len(), 4);
        assert!(rep_1k_basis(g(2), 3).is_err());
        assert!(rep_1k_basis(g(2), 0).is_err());
        for b in rep_1k_basis(g(3), 2).unwrap() {
            assert!(b.contract().unwrap().is_zero());
        }
    }

    #[test]
    fn irreducible_split_is_direct() {
        for n in 2..=3 {
            let gg = g(n);
            for k in 2..=n {
                let mut rows: Vec<Vec<Rational>> = rep_1k_basis(gg, k)
                    .unwrap()
                    .iter()
                    .map(EH::to_coords)
                    .collect();
                let ker = rows.len();
                let w = omega0::<Rational, Homology>(gg);
                for b in exterior_basis(gg, k - 2) {
                    rows.push(
                        w.wedge(&EH::basis(gg, &b, Rational::one()))
                            .unwrap()
                            .to_coords(),
                    );
                }
                let total = binom(2 * n, k as isize);
                assert_eq!(ker, total - binom(2 * n, k as isize - 2));
                assert_eq!(QMatrix::from_rows(rows).rank(), total);
            }
        }
    }

    #[test]
    fn ideal_quotient_examples() {
        let d2 = ideal_quotient_dims(g(2), 4).unwrap();
        assert_eq!(d2, vec![1, 4, 6, 0, 0]);
        let d3 = ideal_quotient_dims(g(3), 6).unwrap();
        assert_eq!(d3[0], 1);
        assert_eq!(d3[2], 15);
        assert_eq!(d3, vec![1, 6, 15, 14, 0, 0, 0]);
        assert!(ideal_quotient_dims(g(2), 5).is_err());
    }

    #[test]
    fn pairing_examples() {
        let g3 = g(3);
        let one = Rational::one();
        for k in 1..=3 {
            let xi = EH::basis(g3, &(0..k).collect::<Vec<_>>(), one.clone());
            let eta = EC::basis(g3, &(0..k).collect::<Vec<_>>(), one.clone());
            assert_eq!(pair_ext(&xi, &eta).unwrap(), one);
        }
        assert!(pair_ext(&v(g3, 0), &EC::basis(g3, &[3], one.clone()))
            .unwrap()
            .is_zero());
        assert!(pair_ext(&v(g3, 0), &EC::one(g3)).is_err());
    }

    #[test]
    fn laplace_identity_for_omega_wedge_h() {
        // <ω₀∧h, u∧v∧w> = ι(v,w)<h,u> - ι(u,w)<h,v> + ι(u,v)<h,w>, with <h,u> = u(h).
        let g2 = g(2);
        let r = |n: i64| Rational::from(n);
        let u = CohVector::from_coords(vec![r(1), r(2), r(0), r(-1)]).unwrap();
        let vv = CohVector::from_coords(vec![r(0), r(1), r(3), r(1)]).unwrap();
        let w = CohVector::from_coords(vec![r(2), r(-1), r(1), r(0)]).unwrap();
        let h = HomVector::from_coords(vec![r(1), r(0), r(-2), r(1)]).unwrap();
        let ev = |c: &CohVector<Rational>| -> Rational {
            c.coords().iter().zip(h.coords()).map(|(a, b)| a * b).sum()
        };
        let lhs = pair_ext(
            &omega0::<Rational, Homology>(g2)
                .wedge(&EH::from_vector(&h))
                .unwrap(),
            &EC::from_vector(&u)
                .wedge(&EC::from_vector(&vv))
                .unwrap()
                .wedge(&EC::from_vector(&w))
                .unwrap(),
        )
        .unwrap();
        let rhs = iota(&vv, &w).unwrap() * ev(&u) - iota(&u, &w).unwrap() * ev(&vv)
            + iota(&u, &vv).unwrap() * ev(&w);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reducer_is_canonical() {
        let g2 = g(2);
        let red = IdealReducer::new(g2, 3);
        assert_eq!(red.ideal_dim(), 4);
        let x = v(g2, 0).wedge(&v(g2, 1)).unwrap().wedge(&v(g2, 2)).unwrap();
        assert!(red.reduce(&x).is_zero());
    }
}
