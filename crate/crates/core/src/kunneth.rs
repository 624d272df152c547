//! The bigraded algebra `H*(Σ_g) ⊗ Λ[x̃_i, ỹ_i]` carrying `[Flux]`, `ω̃₀`, `v`, `e` and
//! integration over the fiber.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bar::BarCochain;
use crate::cocycles::character;
use crate::error::{Error, Result};
use crate::scalars::{PolyScalar, Rational};
use crate::symplectic::exterior::sort_sign;
use crate::symplectic::{omega0, ExtElement, Genus, Homology, IdealReducer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationsMode {
    Free,
    /// Quotient by the ideal generated by `ω̃₀x̃_i` and `ω̃₀ỹ_i`.
    Reduced,
}

impl RelationsMode {
    pub fn name(self) -> &'static str {
        match self {
            RelationsMode::Free => "free",
            RelationsMode::Reduced => "reduced",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "free" => Ok(RelationsMode::Free),
            "reduced" => Ok(RelationsMode::Reduced),
            other => Err(Error::Parse(format!(
                "unknown relations mode `{other}` (free, reduced)"
            ))),
        }
    }
}

/// Basis of `H*(Σ_g)`; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fiber {
    One,
    X(usize),
    Y(usize),
    Mu,
}

impl Fiber {
    pub fn degree(self) -> usize {
        match self {
            Fiber::One => 0,
            Fiber::X(_) | Fiber::Y(_) => 1,
            Fiber::Mu => 2,
        }
    }

    fn mul(self, other: Fiber) -> Option<(Fiber, i64)> {
        match (self, other) {
            (Fiber::One, f) | (f, Fiber::One) => Some((f, 1)),
            (Fiber::X(i), Fiber::Y(j)) if i == j => Some((Fiber::Mu, 1)),
            (Fiber::Y(i), Fiber::X(j)) if i == j => Some((Fiber::Mu, -1)),
            _ => None,
        }
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fiber::One => write!(f, "1"),
            Fiber::X(i) => write!(f, "x*{i}"),
            Fiber::Y(i) => write!(f, "y*{i}"),
            Fiber::Mu => write!(f, "mu"),
        }
    }
}

fn reducer(g: Genus, degree: usize) -> Arc<IdealReducer> {
    static CACHE: OnceLock<Mutex<HashMap<(Genus, usize), Arc<IdealReducer>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("reducer cache").get(&(g, degree)) {
        return r.clone();
    }
    let r = Arc::new(IdealReducer::new(g, degree));
    cache
        .lock()
        .expect("reducer cache")
        .entry((g, degree))
        .or_insert(r)
        .clone()
}

fn base_name(g: Genus, pos: usize) -> String {
    let n = g.get();
    if pos < n {
        format!("x~{}", pos + 1)
    } else {
        format!("y~{}", pos - n + 1)
    }
}

fn fmt_terms<K: Ord>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, Rational>,
    show: impl Fn(&K) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (k, c)) in terms.iter().enumerate() {
        if n > 0 {
            write!(f, " + ")?;
        }
        write!(f, "{c}*{}", show(k))?;
    }
    Ok(())
}

/// Mixed-degree element of the base algebra, keyed by increasing positions
/// (`x̃_i` at `i − 1`, `ỹ_i` at `g + i − 1`).
#[derive(Clone, PartialEq, Eq)]
pub struct BaseElement {
    genus: Genus,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl BaseElement {
    pub fn zero(g: Genus) -> Self {
        BaseElement {
            genus: g,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_ext(x: &ExtElement<Rational, Homology>) -> Self {
        BaseElement {
            genus: x.genus(),
            terms: x.terms().map(|(k, c)| (k.to_vec(), c.clone())).collect(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    /// The degree-`d` part.
    pub fn component(&self, d: usize) -> ExtElement<Rational, Homology> {
        self.terms
            .iter()
            .filter(|(k, _)| k.len() == d)
            .map(|(k, c)| ExtElement::basis(self.genus, k, c.clone()))
            .fold(ExtElement::zero(self.genus, d), |acc, x| {
                acc.try_add(&x).expect("same shape")
            })
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus;
        fmt_terms(f, &self.terms, |k| {
            if k.is_empty() {
                "1".into()
            } else {
                k.iter()
                    .map(|&p| base_name(g, p))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        })
    }
}

impl fmt::Debug for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseElement({self})")
    }
}

/// `Q`-combination of `fiber ⊗ base monomial`.
#[derive(Clone, PartialEq, Eq)]
pub struct KunnethClass {
    genus: Genus,
    mode: RelationsMode,
    terms: BTreeMap<(Fiber, Vec<usize>), Rational>,
}

impl KunnethClass {
    pub fn zero(g: Genus, mode: RelationsMode) -> Self {
        KunnethClass {
            genus: g,
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// `c · fiber ⊗ e_{p1} … e_{pk}` with positions in any order.
    pub fn term(
        g: Genus,
        mode: RelationsMode,
        fiber: Fiber,
        positions: &[usize],
        c: Rational,
    ) -> Result<Self> {
        if let Fiber::X(i) | Fiber::Y(i) = fiber {
            if !(1..=g.get()).contains(&i) {
                return Err(Error::IndexOutOfRange(format!(
                    "fiber class {fiber} at genus {g}"
                )));
            }
        }
        if positions.iter().any(|&p| p >= g.rank()) {
            return Err(Error::IndexOutOfRange(format!(
                "base position at genus {g}"
            )));
        }
        let mut out = Self::zero(g, mode);
        let mut idx = positions.to_vec();
        if let Some(sign) = sort_sign(&mut idx) {
            out.add_term(fiber, idx, c * Rational::from(sign));
        }
        Ok(out.normalized())
    }

    /// `fiber ⊗ x` for a homogeneous base element.
    pub fn from_base(
        fiber: Fiber,
        x: &ExtElement<Rational, Homology>,
        mode: RelationsMode,
    ) -> Self {
        let mut out = Self::zero(x.genus(), mode);
        for (k, c) in x.terms() {
            out.add_term(fiber, k.to_vec(), c.clone());
        }
        out.normalized()
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn mode(&self) -> RelationsMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(Fiber, Vec<usize>), Rational> {
        &self.terms
    }

    pub fn with_mode(&self, mode: RelationsMode) -> Self {
        KunnethClass {
            mode,
            ..self.clone()
        }
        .normalized()
    }

    fn add_term(&mut self, fiber: Fiber, base: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (fiber, base);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v = &*v + &c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Applies the ideal relations fiber by fiber and degree by degree in reduced mode.
    fn normalized(mut self) -> Self {
        if self.mode == RelationsMode::Free {
            return self;
        }
        let g = self.genus;
        let mut blocks: BTreeMap<(Fiber, usize), ExtElement<Rational, Homology>> = BTreeMap::new();
        for ((fiber, base), c) in std::mem::take(&mut self.terms) {
            let d = base.len();
            let e = blocks
                .entry((fiber, d))
                .or_insert_with(|| ExtElement::zero(g, d));
            *e = e
                .try_add(&ExtElement::basis(g, &base, c))
                .expect("same shape");
        }
        for ((fiber, d), x) in blocks {
            let r = if d >= 3 { reducer(g, d).reduce(&x) } else { x };
            for (k, c) in r.terms() {
                self.add_term(fiber, k.to_vec(), c.clone());
            }
        }
        self
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.get(), other.genus.get()));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode.name(), other.mode.name()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((f, b), c) in &other.terms {
            out.add_term(*f, b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.genus, self.mode);
        for ((f, b), c) in &self.terms {
            out.add_term(*f, b.clone(), c * r);
        }
        out
    }

    /// `(f₁ ⊗ b₁)(f₂ ⊗ b₂) = (−1)^{|b₁||f₂|} f₁f₂ ⊗ b₁b₂`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.genus, self.mode);
        for ((f1, b1), c1) in &self.terms {
            for ((f2, b2), c2) in &other.terms {
                let Some((f, fs)) = f1.mul(*f2) else { continue };
                let mut b: Vec<usize> = b1.iter().chain(b2).copied().collect();
                let Some(bs) = sort_sign(&mut b) else {
                    continue;
                };
                let koszul = if (b1.len() * f2.degree()) % 2 == 0 {
                    1
                } else {
                    -1
                };
                out.add_term(f, b, c1 * c2 * Rational::from(fs * bs * koszul));
            }
        }
        Ok(out.normalized())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.genus, self.mode);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same shape");
        }
        acc
    }

    pub fn unit(g: Genus, mode: RelationsMode) -> Self {
        Self::from_base(Fiber::One, &ExtElement::one(g), mode)
    }

    /// Part of fiber degree `p` and base degree `q`.
    pub fn component(&self, p: usize, q: usize) -> Self {
        KunnethClass {
            terms: self
                .terms
                .iter()
                .filter(|((f, b), _)| f.degree() == p && b.len() == q)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Keeps the terms with trivial base part.
    pub fn fiber_restriction(&self) -> Self {
        KunnethClass {
            terms: self
                .terms
                .iter()
                .filter(|((_, b), _)| b.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Integration over the fiber: `μ ⊗ b ↦ b`, other fiber parts to zero.
    pub fn pi_star(&self) -> BaseElement {
        BaseElement {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|((f, _), _)| *f == Fiber::Mu)
                .map(|((_, b), c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// Named classes: `flux`, `v`, `e`, `omega0t`, `gamma`, `mu`, `1`.
    pub fn named(g: Genus, name: &str, mode: RelationsMode) -> Result<Self> {
        Ok(match name.trim() {
            "flux" => flux_class(g, mode),
            "v" => v_class(g, mode),
            "e" => e_class(g, mode),
            "omega0t" => omega0t_class(g, mode),
            "gamma" => gamma_class(g, mode),
            "mu" => mu_class(g, mode),
            "1" => Self::unit(g, mode),
            other => Err(Error::Parse(format!(
                "unknown class `{other}` (flux, v, e, omega0t, gamma, mu, 1)"
            )))?,
        })
    }

    /// Sums of products such as `v*v`, `2*e*v + -1*flux^2`.
    pub fn parse(g: Genus, text: &str, mode: RelationsMode) -> Result<Self> {
        let mut total = Self::zero(g, mode);
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let mut acc = Self::unit(g, mode);
            for factor in term.split('*') {
                let factor = factor.trim();
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let (neg, base) = match base.strip_prefix('-') {
                    Some(b) if !b.starts_with(|c: char| c.is_ascii_digit()) => (true, b),
                    _ => (false, base),
                };
                let x = match base.parse::<Rational>() {
                    Ok(r) => Self::unit(g, mode).scale(&r),
                    Err(_) => Self::named(g, base, mode)?,
                };
                let x = x.pow(exp);
                acc = acc.multiply(&if neg { x.scale(&Rational::from(-1)) } else { x })?;
            }
            total = total.try_add(&acc)?;
        }
        Ok(total)
    }
}

impl fmt::Display for KunnethClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus;
        fmt_terms(f, &self.terms, |(fiber, b)| {
            let base: Vec<String> = b.iter().map(|&p| base_name(g, p)).collect();
            if base.is_empty() {
                format!("[{fiber}]")
            } else {
                format!("[{fiber}|{}]", base.join(" "))
            }
        })
    }
}

impl fmt::Debug for KunnethClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KunnethClass({}, {self})", self.mode.name())
    }
}

pub fn mu_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    KunnethClass::from_base(Fiber::Mu, &ExtElement::one(g), mode)
}

/// `[Flux] = Σ x*_i ⊗ x̃_i + y*_i ⊗ ỹ_i`.
pub fn flux_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    let mut out = KunnethClass::zero(g, mode);
    for i in 1..=g.get() {
        out.add_term(Fiber::X(i), vec![g.x(i)], Rational::one());
        out.add_term(Fiber::Y(i), vec![g.y(i)], Rational::one());
    }
    out
}

/// `1 ⊗ ω̃₀` with `ω̃₀ = Σ x̃_i ỹ_i`.
pub fn omega0t_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    KunnethClass::from_base(Fiber::One, &omega0(g), mode)
}

/// `γ = ω̃₀ / (2g − 2)`.
pub fn gamma_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    omega0t_class(g, mode).scale(&Rational::from(2 * g.get() as i64 - 2).recip())
}

/// `e = (2 − 2g)μ`.
pub fn e_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    mu_class(g, mode).scale(&Rational::from(2 - 2 * g.get() as i64))
}

/// `v = (2g − 2)μ + [Flux] + γ`.
pub fn v_class(g: Genus, mode: RelationsMode) -> KunnethClass {
    mu_class(g, mode)
        .scale(&Rational::from(2 * g.get() as i64 - 2))
        .try_add(&flux_class(g, mode))
        .and_then(|x| x.try_add(&gamma_class(g, mode)))
        .expect("same shape")
}

/// Bar cochain of a homogeneous base element: a monomial `e_{p1} … e_{pk}` evaluates on
/// `(φ₁,…,φ_k)` as the product of coordinate characters `e_{pj}(φ_j)`.
pub fn base_cochain(x: &ExtElement<Rational, Homology>) -> BarCochain<PolyScalar> {
    let g = x.genus();
    let terms: Vec<(Vec<usize>, Rational)> =
        x.terms().map(|(k, c)| (k.to_vec(), c.clone())).collect();
    BarCochain::new(format!("base({x})"), g, x.degree(), move |t| {
        let mut total = PolyScalar::zero();
        for (k, c) in &terms {
            let mut prod = PolyScalar::from(c.clone());
            for (&p, phi) in k.iter().zip(t) {
                prod = &prod * &character(g, p, phi)?;
            }
            total = &total + &prod;
        }
        Ok(total)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SubgroupTag;
    use crate::random::Sampler;
    use rand::Rng;
    use RelationsMode::{Free, Reduced};

    fn genus(g: usize) -> Genus {
        Genus::new(g).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn random_class(s: &mut Sampler, mode: RelationsMode) -> KunnethClass {
        let g = s.genus();
        let n = g.get();
        let mut out = KunnethClass::zero(g, mode);
        for _ in 0..4 {
            let rng = s.rng();
            let fiber = match rng.gen_range(0..4) {
                0 => Fiber::One,
                1 => Fiber::X(rng.gen_range(1..=n)),
                2 => Fiber::Y(rng.gen_range(1..=n)),
                _ => Fiber::Mu,
            };
            let d = rng.gen_range(0..=3);
            let pos: Vec<usize> = (0..d).map(|_| rng.gen_range(0..2 * n)).collect();
            let c = q(rng.gen_range(-3..=3));
            out = out
                .try_add(&KunnethClass::term(g, mode, fiber, &pos, c).unwrap())
                .unwrap();
        }
        out
    }

    fn total_degree(x: &KunnethClass) -> Option<usize> {
        let degs: Vec<usize> = x
            .terms()
            .keys()
            .map(|(f, b)| f.degree() + b.len())
            .collect();
        degs.first()
            .copied()
            .filter(|d| degs.iter().all(|e| e == d))
    }

    #[test]
    fn flux_class_at_genus_two() {
        let g = genus(2);
        let f = flux_class(g, Free);
        assert_eq!(
            f.to_string(),
            "1*[x*1|x~1] + 1*[x*2|x~2] + 1*[y*1|y~1] + 1*[y*2|y~2]"
        );
        assert!(f.fiber_restriction().is_zero());
        assert_eq!(f.component(1, 1), f);
    }

    #[test]
    fn flux_square_is_minus_two_mu_omega() {
        for n in 2..=5 {
            let g = genus(n);
            let f = flux_class(g, Free);
            let expected = KunnethClass::from_base(Fiber::Mu, &omega0(g), Free).scale(&q(-2));
            assert_eq!(f.multiply(&f).unwrap(), expected, "g = {n}");
        }
        let g = genus(2);
        let f = flux_class(g, Free);
        assert_eq!(
            f.multiply(&f).unwrap().to_string(),
            "-2*[mu|x~1 y~1] + -2*[mu|x~2 y~2]"
        );
    }

    #[test]
    fn fiber_products() {
        let g = genus(3);
        let mu = mu_class(g, Free);
        assert!(mu.multiply(&mu).unwrap().is_zero());
        let x = |i| KunnethClass::term(g, Free, Fiber::X(i), &[], q(1)).unwrap();
        let y = |i| KunnethClass::term(g, Free, Fiber::Y(i), &[], q(1)).unwrap();
        assert_eq!(x(2).multiply(&y(2)).unwrap(), mu);
        assert_eq!(y(2).multiply(&x(2)).unwrap(), mu.scale(&q(-1)));
        assert!(x(1).multiply(&y(2)).unwrap().is_zero());
        assert!(x(1).multiply(&x(1)).unwrap().is_zero());
        assert!(mu.multiply(&x(1)).unwrap().is_zero());
    }

    #[test]
    fn v_restricts_to_area_and_squares_to_zero_with_relations() {
        for n in 2..=5 {
            let g = genus(n);
            let v = v_class(g, Reduced);
            assert_eq!(
                v.fiber_restriction(),
                mu_class(g, Reduced).scale(&q(2 * n as i64 - 2))
            );
            assert!(v.multiply(&v).unwrap().is_zero(), "g = {n}");
        }
    }

    #[test]
    fn free_v_square_is_the_ideal_remainder() {
        for n in 2..=4 {
            let g = genus(n);
            let v = v_class(g, Free);
            let sq = v.multiply(&v).unwrap();
            assert!(!sq.is_zero());
            let (flux, gamma, mu) = (flux_class(g, Free), gamma_class(g, Free), mu_class(g, Free));
            let m = q(2 * n as i64 - 2);
            // The three components of the square.
            let c22 = flux
                .multiply(&flux)
                .unwrap()
                .try_add(&mu.multiply(&gamma).unwrap().scale(&(&m * &q(2))))
                .unwrap();
            assert!(c22.is_zero());
            assert!(sq.component(2, 2).is_zero());
            assert!(sq.component(4, 0).is_zero());
            assert_eq!(
                sq.component(1, 3),
                flux.multiply(&gamma).unwrap().scale(&q(2))
            );
            assert_eq!(sq.component(0, 4), gamma.multiply(&gamma).unwrap());
            // Each surviving term lies in the ideal.
            let w = omega0::<Rational, Homology>(g);
            let expected = (1..=n)
                .flat_map(|i| [(Fiber::X(i), g.x(i)), (Fiber::Y(i), g.y(i))])
                .map(|(f, p)| {
                    let b = ExtElement::basis(g, &[p], q(1)).wedge(&w).unwrap();
                    KunnethClass::from_base(f, &b, Free).scale(&(q(2) * m.recip()))
                })
                .fold(KunnethClass::zero(g, Free), |a, x| a.try_add(&x).unwrap());
            assert_eq!(sq.component(1, 3), expected);
            assert!(sq.with_mode(Reduced).is_zero());
            assert!(flux.multiply(&gamma).unwrap().with_mode(Reduced).is_zero());
            assert!(gamma.multiply(&gamma).unwrap().with_mode(Reduced).is_zero());
        }
    }

    #[test]
    fn fiber_integrals() {
        for n in 2..=4 {
            let g = genus(n);
            for mode in [Free, Reduced] {
                let (e, v) = (e_class(g, mode), v_class(g, mode));
                let w = BaseElement::from_ext(&omega0(g));
                let mw = KunnethClass::from_base(Fiber::Mu, &omega0(g), mode);
                assert_eq!(mw.pi_star(), w);
                assert!(e.multiply(&e).unwrap().pi_star().is_zero());
                let v1 = e.multiply(&v).unwrap().pi_star();
                assert_eq!(v1, BaseElement::from_ext(&omega0(g).scale(&q(-1))));
                let s = e.try_add(&v).unwrap();
                let lhs = s.multiply(&s).unwrap().scale(&q(-1)).pi_star();
                assert_eq!(
                    lhs,
                    BaseElement::from_ext(&omega0(g).scale(&q(2))),
                    "g = {n}, {mode:?}"
                );
            }
        }
    }

    #[test]
    fn graded_commutative_and_associative() {
        for n in [2, 3] {
            let mut s = Sampler::new(11 + n as u64, genus(n));
            for mode in [Free, Reduced] {
                for _ in 0..100 {
                    let (a, b, c) = (
                        random_class(&mut s, mode),
                        random_class(&mut s, mode),
                        random_class(&mut s, mode),
                    );
                    let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
                    let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                    assert_eq!(l, r);
                    for (ka, ca) in a.terms() {
                        for (kb, cb) in b.terms() {
                            let x = KunnethClass::term(s.genus(), mode, ka.0, &ka.1, ca.clone())
                                .unwrap();
                            let y = KunnethClass::term(s.genus(), mode, kb.0, &kb.1, cb.clone())
                                .unwrap();
                            let (dx, dy) = (total_degree(&x).unwrap(), total_degree(&y).unwrap());
                            let sign = q(if dx * dy % 2 == 0 { 1 } else { -1 });
                            assert_eq!(
                                x.multiply(&y).unwrap(),
                                y.multiply(&x).unwrap().scale(&sign)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let g = genus(2);
        let err = flux_class(g, Free)
            .multiply(&flux_class(g, Reduced))
            .unwrap_err();
        assert_eq!(err, Error::ModeMismatch("free", "reduced"));
        assert!(flux_class(g, Free)
            .multiply(&flux_class(genus(3), Free))
            .is_err());
    }

    #[test]
    fn named_classes_and_expressions() {
        let g = genus(3);
        for mode in [Free, Reduced] {
            let vv = KunnethClass::parse(g, "v*v", mode).unwrap();
            assert_eq!(vv, v_class(g, mode).pow(2));
            assert_eq!(KunnethClass::parse(g, "v^2", mode).unwrap(), vv);
            let ev = KunnethClass::parse(g, "2*e*v + -1*flux^2", mode).unwrap();
            let expected = e_class(g, mode)
                .multiply(&v_class(g, mode))
                .unwrap()
                .scale(&q(2))
                .try_add(&flux_class(g, mode).pow(2).scale(&q(-1)))
                .unwrap();
            assert_eq!(ev, expected);
            assert_eq!(
                KunnethClass::parse(g, "-mu", mode).unwrap(),
                mu_class(g, mode).scale(&q(-1))
            );
        }
        assert!(KunnethClass::parse(g, "w", Free).is_err());
        assert!(KunnethClass::parse(g, "v +", Free).is_err());
        assert_eq!(mu_class(g, Reduced).to_string(), "1*[mu]");
        assert_eq!(KunnethClass::zero(g, Free).to_string(), "0");
    }

    #[test]
    fn base_omega_matches_the_cocycle_on_symp0_pairs() {
        use crate::cocycles::omega0_tilde;
        for n in [2, 3] {
            let g = genus(n);
            let base = base_cochain(&omega0(g));
            let cocycle = omega0_tilde(g);
            let mut s = Sampler::new(5 + n as u64, g);
            for _ in 0..100 {
                let t = s.tuple(2, SubgroupTag::Symp0);
                assert_eq!(base.value(&t).unwrap(), cocycle.value(&t).unwrap());
            }
        }
    }

    #[test]
    fn base_cochain_of_characters() {
        use crate::cocycles::{x_tilde, y_tilde};
        let g = genus(3);
        let mut s = Sampler::new(2, g);
        for i in 1..=3 {
            let bx = base_cochain(&ExtElement::basis(g, &[g.x(i)], q(1)));
            let by = base_cochain(&ExtElement::basis(g, &[g.y(i)], q(1)));
            for _ in 0..20 {
                let t = s.tuple(1, SubgroupTag::Symp0);
                assert_eq!(
                    bx.value(&t).unwrap(),
                    x_tilde(g, i).unwrap().value(&t).unwrap()
                );
                assert_eq!(
                    by.value(&t).unwrap(),
                    y_tilde(g, i).unwrap().value(&t).unwrap()
                );
            }
        }
    }
}
