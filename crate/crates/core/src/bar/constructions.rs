use itertools::Itertools;
use num::traits::Zero;
use num::{BigInt, Integer, One};
use rand::seq::SliceRandom;
use rand::Rng;

use super::BarChain;
use crate::error::{Error, Result};
use crate::group::{ModelSymp, SubgroupTag};
use crate::scalars::{PolyScalar, Rational};
use crate::symplectic::{CohVector, Genus};

/// Units beyond this count are refused by the boundary solver.
const MAX_UNITS: i64 = 100_000;

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_σ sgn(σ) (g_{σ(1)},…,g_{σ(k)})` for pairwise-commuting elements.
pub fn shuffle_cycle(elements: &[ModelSymp]) -> Result<BarChain> {
    let Some(first) = elements.first() else {
        return Err(Error::Precondition(
            "a shuffle cycle needs at least one element".into(),
        ));
    };
    let g = first.genus();
    for (a, b) in elements.iter().tuple_combinations() {
        if !a.commutes_with(b)? {
            return Err(Error::NotCommuting);
        }
    }
    let k = elements.len();
    let mut out = BarChain::zero(g, k);
    for p in (0..k).permutations(k) {
        let tuple = p.iter().map(|&i| elements[i].clone()).collect();
        out.add_term(tuple, &Rational::from(permutation_sign(&p)));
    }
    Ok(out)
}

/// Block-embeds the factors into genus `g₁ + g₂` and forms the signed shuffle product.
pub fn cross_product(c1: &BarChain, c2: &BarChain) -> BarChain {
    let total = c1.genus().plus(c2.genus());
    let (p, q) = (c1.degree(), c2.degree());
    let e1 = c1.embed(0, total);
    let e2 = c2.embed(c1.genus().get(), total);
    let shuffles: Vec<(Vec<usize>, i64)> = (0..p + q)
        .combinations(p)
        .map(|pos| {
            let moves: usize = pos.iter().enumerate().map(|(i, &s)| s - i).sum();
            (pos, if moves % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    let mut out = BarChain::zero(total, p + q);
    for (a, ca) in e1.terms() {
        for (b, cb) in e2.terms() {
            let coef = ca * cb;
            for (pos, sign) in &shuffles {
                let (mut ia, mut ib) = (a.iter(), b.iter());
                let tuple = (0..p + q)
                    .map(|s| {
                        if pos.contains(&s) {
                            ia.next()
                        } else {
                            ib.next()
                        }
                        .expect("shuffle length")
                        .clone()
                    })
                    .collect();
                out.add_term(tuple, &(&coef * &Rational::from(*sign)));
            }
        }
    }
    out
}

fn require_symp0(c: &BarChain) -> Result<()> {
    for (t, _) in c.terms() {
        if !t.iter().all(|e| SubgroupTag::Symp0.contains(e)) {
            return Err(Error::OutsideSubgroup("symp0"));
        }
    }
    Ok(())
}

/// Signed unit terms `±(g)` whose sum is `N·z` for the common denominator `N`.
fn unit_terms(z: &BarChain) -> Result<(BigInt, Vec<(ModelSymp, bool)>)> {
    let n = z
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = Rational::from_big(n.clone());
    let mut units = Vec::new();
    for (t, c) in z.terms() {
        let m = (c * &scale).to_i64().filter(|m| m.abs() <= MAX_UNITS);
        let m = m.ok_or_else(|| {
            Error::Precondition("coefficients too large for the boundary solver".into())
        })?;
        for _ in 0..m.abs() {
            units.push((t[0].clone(), m > 0));
        }
        if units.len() as i64 > MAX_UNITS {
            return Err(Error::Precondition(
                "too many unit terms for the boundary solver".into(),
            ));
        }
    }
    Ok((n, units))
}

/// Folds `Σ ±(g_j)` into `(P) − (id) + ∂D`, returning `(P, D)`.
fn fold_units(g: Genus, units: &[(ModelSymp, bool)]) -> (ModelSymp, BarChain) {
    let mut p = ModelSymp::identity(g);
    let mut d = BarChain::zero(g, 2);
    let one = Rational::from(1);
    let minus = Rational::from(-1);
    for (e, positive) in units {
        if *positive {
            d.add_term(vec![p.clone(), e.clone()], &one);
            p = p.mul(e);
        } else {
            let next = p.mul(&e.inverse());
            d.add_term(vec![next.clone(), e.clone()], &minus);
            p = next;
        }
    }
    (p, d)
}

/// A 2-chain bounding `(z_c)` for a central element `z_c = (I, 0, 0, c)`.
fn central_filler<R: Rng + ?Sized>(g: Genus, c: &PolyScalar, rng: Option<&mut R>) -> BarChain {
    let id = ModelSymp::identity(g);
    let mut w = BarChain::zero(g, 2);
    w.add_term(vec![id.clone(), id.clone()], &Rational::from(1));
    if c.is_zero() {
        return w;
    }
    let (j, lambda) = match rng {
        Some(r) => {
            let num = *[-3i64, -2, -1, 1, 2, 3].choose(r).expect("nonempty");
            (
                r.gen_range(1..=g.get()),
                Rational::new(num, r.gen_range(1..=3)),
            )
        }
        None => (1, Rational::from(1)),
    };
    let a_coef = c.scale(&(Rational::new(1, 2) * &lambda.recip()));
    let a = ModelSymp::symp0(CohVector::x(g, j).mul_scalar(&a_coef));
    let b = ModelSymp::symp0(CohVector::y(g, j).mul_scalar(&PolyScalar::from(lambda)));
    let units = [
        (a.clone(), true),
        (b.clone(), true),
        (a.inverse(), true),
        (b.inverse(), true),
    ];
    let (_, d_prime) = fold_units(g, &units);
    w.add_term(vec![id.clone(), id], &Rational::from(2));
    w.add_term(vec![a.clone(), a.inverse()], &Rational::from(1));
    w.add_term(vec![b.clone(), b.inverse()], &Rational::from(1));
    &w - &d_prime
}

fn solve<R: Rng + ?Sized>(z: &BarChain, mut rng: Option<&mut R>) -> Result<BarChain> {
    if z.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: z.degree(),
        });
    }
    require_symp0(z)?;
    let g = z.genus();
    let mut total = CohVector::<PolyScalar>::zero(g);
    for (t, c) in z.terms() {
        total = &total + &t[0].fc().scale(c);
    }
    if !total.is_zero() {
        return Err(Error::NotABoundary(format!(
            "total flux {total} is nonzero"
        )));
    }
    if z.is_zero() {
        return Ok(BarChain::zero(g, 2));
    }
    let (n, mut units) = unit_terms(z)?;
    if let Some(r) = rng.as_deref_mut() {
        units.shuffle(r);
    }
    let (p, d) = fold_units(g, &units);
    let mut filler = &d + &central_filler(g, p.cal(), rng);
    let id = ModelSymp::identity(g);
    filler.add_term(vec![id.clone(), id], &Rational::from(-1));
    let d = filler.scale(&Rational::from_big(n).recip());
    if &d.boundary()? != z {
        return Err(Error::NotABoundary("solver certificate failed".into()));
    }
    Ok(d)
}

/// A 2-chain `d` with `∂d = z` for a 1-chain in the Heisenberg submodel with zero total flux.
pub fn express_as_boundary(z: &BarChain) -> Result<BarChain> {
    solve::<rand_chacha::ChaCha8Rng>(z, None)
}

/// As [`express_as_boundary`], with randomized unit order and commutator witness.
pub fn express_as_boundary_randomized<R: Rng + ?Sized>(
    z: &BarChain,
    rng: &mut R,
) -> Result<BarChain> {
    solve(z, Some(rng))
}

/// One summand `s·(q, k)` of a twisted 1-chain; `k` lies in the Heisenberg submodel.
#[derive(Clone, Debug)]
pub struct TwistedTerm {
    pub lift: ModelSymp,
    pub kernel: ModelSymp,
    pub sign: Rational,
}

#[derive(Clone, Debug)]
pub struct LiftedCycle {
    pub cycle: BarChain,
    /// The filler `d` produced by the boundary solver.
    pub filler: BarChain,
    /// A 3-chain whose boundary is `p_*(cycle)`.
    pub p_star_primitive: BarChain,
}

fn block(q: &ModelSymp, k: &ModelSymp) -> BarChain {
    let g = q.genus();
    let id = ModelSymp::identity(g);
    let qi = q.inverse();
    let mut b = BarChain::zero(g, 2);
    b.add_term(vec![q.clone(), k.clone()], &Rational::from(1));
    b.add_term(vec![q.mul(k), qi.clone()], &Rational::from(1));
    b.add_term(vec![q.clone(), qi], &Rational::from(-1));
    b.add_term(vec![id.clone(), id], &Rational::from(-1));
    b
}

fn lift<R: Rng + ?Sized>(data: &[TwistedTerm], rng: Option<&mut R>) -> Result<LiftedCycle> {
    let Some(first) = data.first() else {
        return Err(Error::Precondition("empty twisted chain".into()));
    };
    let g = first.lift.genus();
    let mut defect = CohVector::<PolyScalar>::zero(g);
    let mut blocks = BarChain::zero(g, 2);
    let mut z = BarChain::zero(g, 1);
    for term in data {
        if term.lift.genus() != g || term.kernel.genus() != g {
            return Err(Error::GenusMismatch(
                g.get(),
                term.lift.genus().get().max(term.kernel.genus().get()),
            ));
        }
        if !SubgroupTag::Symp0.contains(&term.kernel) {
            return Err(Error::OutsideSubgroup("symp0"));
        }
        let u = term.kernel.fc();
        defect = &defect + &(&term.lift.action().apply(u) - u).scale(&term.sign);
        blocks = &blocks + &block(&term.lift, &term.kernel).scale(&term.sign);
        let conj = term.lift.mul(&term.kernel).mul(&term.lift.inverse());
        z.add_term(vec![conj], &term.sign);
        z.add_term(vec![term.kernel.clone()], &-&term.sign);
    }
    if !defect.is_zero() {
        return Err(Error::NotACycle(format!(
            "twisted boundary {defect} is nonzero"
        )));
    }
    let filler = solve(&z, rng)?;
    let cycle = &blocks + &filler;
    if !cycle.boundary()?.is_zero() {
        return Err(Error::NotACycle("lifted chain is not closed".into()));
    }
    let p_star_primitive = mapping_class_primitive(&cycle)?;
    Ok(LiftedCycle {
        cycle,
        filler,
        p_star_primitive,
    })
}

/// Lifts `Σ s_i q̄_i ⊗ [k_i]` to a 2-cycle of the model group.
pub fn lift_twisted_cycle(data: &[TwistedTerm]) -> Result<LiftedCycle> {
    lift::<rand_chacha::ChaCha8Rng>(data, None)
}

pub fn lift_twisted_cycle_randomized<R: Rng + ?Sized>(
    data: &[TwistedTerm],
    rng: &mut R,
) -> Result<LiftedCycle> {
    lift(data, Some(rng))
}

/// A 3-chain `w` with `∂w = p_*(c)` when `p_*(c)` only involves tuples `(ḡ, 1)`.
///
/// Uses `∂(ḡ,1,1) = (1,1) − (ḡ,1)`; the result is verified before returning.
pub fn mapping_class_primitive(c: &BarChain) -> Result<BarChain> {
    if c.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: c.degree(),
        });
    }
    let g = c.genus();
    let image = c.p_star();
    let id = ModelSymp::identity(g);
    let mut w = BarChain::zero(g, 3);
    for (t, coef) in image.terms() {
        if !t[1].is_identity() {
            return Err(Error::NotABoundary(
                "push-forward has a term outside the (g, 1) pattern".into(),
            ));
        }
        if !t[0].is_identity() {
            w.add_term(vec![t[0].clone(), id.clone(), id.clone()], &-coef);
        }
    }
    if w.boundary()? != image {
        return Err(Error::NotABoundary("push-forward is not a boundary".into()));
    }
    Ok(w)
}
