use num::traits::Zero;

use super::*;
use crate::error::Error;
use crate::group::{ModelSymp, SubgroupTag};
use crate::random::Sampler;
use crate::scalars::{PolyScalar, Rational, SymElement};
use crate::symplectic::{iota, CohVector, Genus};

fn g2() -> Genus {
    Genus::new(2).unwrap()
}

fn h(v: CohVector<PolyScalar>) -> ModelSymp {
    ModelSymp::symp0(v)
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn fluxc(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("fluxc", g, 1, |t| Ok(t[0].fc().clone()))
}

fn flux(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("flux", g, 1, |t| Ok(t[0].flux_tilde()))
}

fn kv(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("kR", g, 1, |t| Ok(t[0].kv_poly()))
}

fn calabi(g: Genus) -> BarCochain<PolyScalar> {
    BarCochain::new("cal", g, 1, |t| Ok(t[0].cal().clone()))
}

/// A trivial-coefficient cochain mixing several slots nonlinearly.
fn scrambled(g: Genus, degree: usize) -> BarCochain<PolyScalar> {
    BarCochain::new("scrambled", g, degree, |t| {
        let mut acc = PolyScalar::from(1);
        for (i, e) in t.iter().enumerate() {
            let w = &e.flux_tilde().coords()[i % e.genus().rank()] + e.cal();
            acc = &(&acc * &w) + &PolyScalar::from(i as i64 + 1);
        }
        Ok(acc)
    })
}

#[test]
fn boundary_examples() {
    let g = g2();
    let mut s = Sampler::new(1, g);
    let (a, b) = (s.element(), s.element());
    let c = BarChain::tuple(g, vec![a.clone(), b.clone()]).unwrap();
    let mut want = BarChain::zero(g, 1);
    want.add_term(vec![b.clone()], &q(1));
    want.add_term(vec![a.compose(&b).unwrap()], &q(-1));
    want.add_term(vec![a.clone()], &q(1));
    assert_eq!(c.boundary().unwrap(), want);

    let id = ModelSymp::identity(g);
    let c = BarChain::tuple(g, vec![id.clone(), id.clone()]).unwrap();
    assert_eq!(c.boundary().unwrap(), BarChain::tuple(g, vec![id]).unwrap());
    assert!(BarChain::point(g, q(1)).boundary().is_err());
}

#[test]
fn boundary_squares_to_zero() {
    let mut s = Sampler::new(2, g2());
    for n in 2..=4 {
        for _ in 0..100 {
            let c = s.chain(n, 3, SubgroupTag::Full);
            assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
        }
    }
}

#[test]
fn coboundary_squares_to_zero_and_is_adjoint() {
    let g = g2();
    let mut s = Sampler::new(3, g);
    let f = scrambled(g, 1);
    let ddf = f.coboundary().coboundary();
    let tw = flux(g).coboundary().coboundary();
    let twisted_scrambled = BarCochain::twisted("tw", g, 1, |t| {
        Ok(t[0].fc().mul_scalar(&(t[0].cal() + &PolyScalar::from(1))))
    });
    let tw2 = twisted_scrambled.coboundary().coboundary();
    for _ in 0..100 {
        let t = s.tuple(3, SubgroupTag::Full);
        assert!(ddf.value(&t).unwrap().is_zero());
        assert!(tw.value(&t).unwrap().is_zero());
        assert!(tw2.value(&t).unwrap().is_zero());
    }
    for n in 1..=2 {
        let f = scrambled(g, n);
        let df = f.coboundary();
        for _ in 0..100 {
            let c = s.chain(n + 1, 2, SubgroupTag::Full);
            assert_eq!(
                df.evaluate(&c).unwrap(),
                f.evaluate(&c.boundary().unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn constant_twisted_cochain_coboundary() {
    let g = g2();
    let w = CohVector::x(g, 1).mul_scalar(&PolyScalar::var("t"));
    let c = BarCochain::constant("w", g, w.clone(), true);
    let dc = c.coboundary();
    let mut s = Sampler::new(4, g);
    for _ in 0..20 {
        let phi = s.element();
        let want = &phi.action().apply(&w) - &w;
        assert_eq!(dc.value(std::slice::from_ref(&phi)).unwrap(), want);
    }
    assert!(flux(g)
        .coboundary()
        .value(&s.tuple(2, SubgroupTag::Full))
        .unwrap()
        .is_zero());
}

#[test]
fn evaluate_is_linear_and_checks_shapes() {
    let g = g2();
    let mut s = Sampler::new(5, g);
    let f = scrambled(g, 2);
    assert!(f.evaluate(&BarChain::zero(g, 2)).unwrap().is_zero());
    for _ in 0..50 {
        let (a, b) = (
            s.chain(2, 3, SubgroupTag::Full),
            s.chain(2, 3, SubgroupTag::Full),
        );
        let r = s.rational();
        let combo = &a + &b.scale(&r);
        let want = &f.evaluate(&a).unwrap() + &f.evaluate(&b).unwrap().scale(&r);
        assert_eq!(f.evaluate(&combo).unwrap(), want);
    }
    assert!(matches!(
        f.evaluate(&BarChain::zero(g, 1)),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn cup_examples() {
    let g = g2();
    let xt1 = BarCochain::new("x~1", g, 1, |t| Ok(-t[0].fc().coords()[2].clone()));
    let yt1 = BarCochain::new("y~1", g, 1, |t| Ok(t[0].fc().coords()[0].clone()));
    let cup = aw_cup(&xt1, &yt1).unwrap();
    // The characters read the flux through Poincaré duality, so the pairing pair is (−y*₁, x*₁).
    let pair = [h(-&CohVector::y(g, 1)), h(CohVector::x(g, 1))];
    assert_eq!(cup.value(&pair).unwrap(), PolyScalar::from(1));
    let literal = [h(CohVector::x(g, 1)), h(CohVector::y(g, 1))];
    assert_eq!(cup.value(&literal).unwrap(), PolyScalar::from(0));

    let one = BarCochain::constant("1", g, PolyScalar::from(1), false);
    let mut s = Sampler::new(6, g);
    let f = scrambled(g, 2);
    let f1 = aw_cup(&one, &f).unwrap();
    let f2 = aw_cup(&f, &one).unwrap();
    for _ in 0..20 {
        let t = s.tuple(2, SubgroupTag::Full);
        assert_eq!(f1.value(&t).unwrap(), f.value(&t).unwrap());
        assert_eq!(f2.value(&t).unwrap(), f.value(&t).unwrap());
    }
    let twisted = BarCochain::twisted("tw", g, 1, |t| Ok(t[0].cal().clone()));
    assert!(matches!(
        aw_cup(&twisted, &f),
        Err(Error::CoefficientMismatch(_))
    ));
}

#[test]
fn graded_commutator_of_characters_is_a_coboundary() {
    let g = g2();
    let mut s = Sampler::new(7, g);
    for (i, j) in [(0, 2), (1, 3), (0, 1), (2, 3)] {
        let f = BarCochain::new("f", g, 1, move |t| Ok(t[0].fc().coords()[i].clone()));
        let k = BarCochain::new("h", g, 1, move |t| Ok(t[0].fc().coords()[j].clone()));
        let prod = BarCochain::new("fh", g, 1, move |t| {
            Ok(&t[0].fc().coords()[i] * &t[0].fc().coords()[j])
        });
        let lhs = aw_cup(&f, &k)
            .unwrap()
            .try_add(&aw_cup(&k, &f).unwrap())
            .unwrap();
        let rhs = prod.coboundary().scale(&q(-1));
        for _ in 0..50 {
            let t = s.tuple(2, SubgroupTag::Symp0);
            assert_eq!(lhs.value(&t).unwrap(), rhs.value(&t).unwrap());
        }
    }
}

#[test]
fn pair_cocycle_examples_and_closure() {
    let g = g2();
    let ff = pair_cocycle(&flux(g), &flux(g)).unwrap();
    assert_eq!(
        ff.value(&[h(CohVector::x(g, 1)), h(CohVector::y(g, 1))])
            .unwrap(),
        PolyScalar::from(1)
    );
    let mut s = Sampler::new(8, g);
    let cochains = [flux(g), fluxc(g), kv(g)];
    for f1 in &cochains {
        for f2 in &cochains {
            let d = pair_cocycle(f1, f2).unwrap().coboundary();
            let dd = pair_cocycle_disc(f1, f2).unwrap().coboundary();
            for _ in 0..100 {
                let t = s.tuple(3, SubgroupTag::Full);
                assert!(d.value(&t).unwrap().is_zero());
                assert_eq!(dd.value(&t).unwrap(), SymElement::zero());
            }
        }
    }
    let pairs: Vec<_> = (0..20).map(|_| (s.element(), s.element())).collect();
    for f in &cochains {
        check_crossed(f, &pairs).unwrap();
    }
    let bad = BarCochain::twisted("bad", g, 1, |t: &[ModelSymp]| {
        Ok(t[0].fc().mul_scalar(&(t[0].cal() + &PolyScalar::from(1))))
    });
    let heis: Vec<_> = (0..20)
        .map(|_| {
            (
                s.element_in(SubgroupTag::Symp0),
                s.element_in(SubgroupTag::Symp0),
            )
        })
        .collect();
    assert!(check_crossed(&bad, &heis).is_err());
}

#[test]
fn calabi_law_as_cochains() {
    let g = g2();
    let lhs = calabi(g).coboundary();
    let rhs = pair_cocycle(&fluxc(g), &fluxc(g)).unwrap().scale(&q(-1));
    let mut s = Sampler::new(9, g);
    for _ in 0..100 {
        let t = s.tuple(2, SubgroupTag::Full);
        assert_eq!(lhs.value(&t).unwrap(), rhs.value(&t).unwrap());
    }
}

#[test]
fn shuffle_examples() {
    let g = g2();
    let a = h(CohVector::x(g, 1));
    let b = h(CohVector::x(g, 2));
    assert_eq!(
        shuffle_cycle(std::slice::from_ref(&a)).unwrap(),
        BarChain::tuple(g, vec![a.clone()]).unwrap()
    );
    let c = shuffle_cycle(&[a.clone(), b.clone()]).unwrap();
    let want = &BarChain::tuple(g, vec![a.clone(), b.clone()]).unwrap()
        - &BarChain::tuple(g, vec![b, a.clone()]).unwrap();
    assert_eq!(c, want);
    assert!(c.is_cycle());
    assert!(matches!(
        shuffle_cycle(&[a, h(CohVector::y(g, 1))]),
        Err(Error::NotCommuting)
    ));
}

#[test]
fn shuffle_of_commuting_tuples_is_a_cycle() {
    let g = Genus::new(3).unwrap();
    let mut s = Sampler::new(10, g);
    for k in 1..=3 {
        let positions: Vec<usize> = (0..k).collect();
        let els: Vec<ModelSymp> = positions
            .iter()
            .map(|&i| {
                let r = PolyScalar::from(s.nonzero_rational());
                let v = &CohVector::x(g, i + 1).mul_scalar(&r)
                    + &CohVector::x(g, 3).mul_scalar(&s.poly());
                ModelSymp::heisenberg(v, s.poly())
            })
            .collect();
        assert!(shuffle_cycle(&els).unwrap().is_cycle());
    }
}

#[test]
fn cross_product_leibniz_and_unit() {
    let g = g2();
    let mut s = Sampler::new(11, g);
    for _ in 0..30 {
        let c1 = s.chain(2, 2, SubgroupTag::Full);
        let c2 = s.chain(1, 2, SubgroupTag::Full);
        let lhs = cross_product(&c1, &c2).boundary().unwrap();
        let rhs = &cross_product(&c1.boundary().unwrap(), &c2)
            + &cross_product(&c1, &c2.boundary().unwrap());
        assert_eq!(lhs, rhs);
        let c3 = s.chain(1, 2, SubgroupTag::Full);
        let lhs = cross_product(&c3, &c2).boundary().unwrap();
        let rhs = &cross_product(&c3.boundary().unwrap(), &c2)
            - &cross_product(&c3, &c2.boundary().unwrap());
        assert_eq!(lhs, rhs);
    }
    let c = s.chain(2, 3, SubgroupTag::Full);
    let g4 = Genus::new(4).unwrap();
    assert_eq!(cross_product(&c, &BarChain::point(g, q(1))), c.embed(0, g4));
    let a = shuffle_cycle(&[h(CohVector::x(g, 1)), h(CohVector::x(g, 2))]).unwrap();
    let b = shuffle_cycle(&[h(CohVector::y(g, 1))]).unwrap();
    assert!(cross_product(&a, &b).is_cycle());
}

#[test]
fn boundary_solver_examples() {
    let g = g2();
    let (a, b) = (
        h(CohVector::x(g, 1)),
        h(CohVector::y(g, 2).mul_scalar(&PolyScalar::var("t1"))),
    );
    let mut z = BarChain::zero(g, 1);
    z.add_term(vec![a.clone()], &q(1));
    z.add_term(vec![b.clone()], &q(1));
    z.add_term(vec![a.compose(&b).unwrap()], &q(-1));
    let d = express_as_boundary(&z).unwrap();
    assert_eq!(d.boundary().unwrap(), z);

    let mut bad = BarChain::zero(g, 1);
    bad.add_term(vec![a.clone()], &q(1));
    assert!(matches!(
        express_as_boundary(&bad),
        Err(Error::NotABoundary(_))
    ));

    let nu = ModelSymp::lift_generator(
        crate::symplectic::Generator::Nu(1),
        CohVector::zero(g),
        CohVector::x(g, 1),
        PolyScalar::zero(),
    )
    .unwrap();
    let outside = BarChain::tuple(g, vec![nu]).unwrap();
    assert!(matches!(
        express_as_boundary(&outside),
        Err(Error::OutsideSubgroup(_))
    ));
}

#[test]
fn boundary_solver_handles_central_residues() {
    let g = g2();
    let mut s = Sampler::new(12, g);
    for _ in 0..50 {
        let (a, b) = (
            s.element_in(SubgroupTag::Symp0),
            s.element_in(SubgroupTag::Symp0),
        );
        let mut z = BarChain::zero(g, 1);
        z.add_term(vec![a.clone()], &q(1));
        z.add_term(vec![b.clone()], &q(1));
        z.add_term(vec![b.compose(&a).unwrap()], &q(-1));
        let half = Rational::new(1, 2);
        let z = z.scale(&half);
        let d = express_as_boundary_randomized(&z, s.rng()).unwrap();
        assert_eq!(d.boundary().unwrap(), z);
        let d0 = express_as_boundary(&z).unwrap();
        let diff = &d - &d0;
        assert!(diff.is_cycle());
    }
}

#[test]
fn twisted_lift_requires_a_cycle() {
    let g = g2();
    let nu = ModelSymp::lift_generator(
        crate::symplectic::Generator::Nu(1),
        CohVector::zero(g),
        CohVector::x(g, 1),
        PolyScalar::zero(),
    )
    .unwrap();
    let k = h(CohVector::y(g, 1));
    let data = [TwistedTerm {
        lift: nu,
        kernel: k,
        sign: q(1),
    }];
    assert!(matches!(
        lift_twisted_cycle(&data),
        Err(Error::NotACycle(_))
    ));
}

#[test]
fn central_lift_is_a_cycle_with_trivial_push_forward() {
    let g = g2();
    let mut s = Sampler::new(13, g);
    let q_el = ModelSymp::central(g, s.poly());
    let k = h(CohVector::x(g, 1));
    let lifted = lift_twisted_cycle(&[TwistedTerm {
        lift: q_el,
        kernel: k,
        sign: q(1),
    }])
    .unwrap();
    assert!(lifted.cycle.is_cycle());
    assert!(lifted.filler.is_zero());
    let ff = pair_cocycle(&fluxc(g), &fluxc(g)).unwrap();
    assert!(ff.evaluate(&lifted.cycle).unwrap().is_zero());
}

#[test]
fn mapping_class_primitive_rejects_other_patterns() {
    let g = g2();
    let mut s = Sampler::new(14, g);
    let a = s.element();
    let b = ModelSymp::lift_generator(
        crate::symplectic::Generator::Mu(1),
        CohVector::zero(g),
        CohVector::zero(g),
        PolyScalar::zero(),
    )
    .unwrap();
    let c = BarChain::tuple(g, vec![a, b]).unwrap();
    assert!(mapping_class_primitive(&c).is_err());
}

#[test]
fn heisenberg_orthogonal_pairs_bound_in_degree_one() {
    let g = g2();
    let mut s = Sampler::new(15, g);
    for _ in 0..20 {
        let (a, b) = (
            s.element_in(SubgroupTag::Symp0),
            s.element_in(SubgroupTag::Symp0),
        );
        let commuting = iota(a.fc(), b.fc()).unwrap().is_zero();
        assert_eq!(shuffle_cycle(&[a, b]).is_ok(), commuting);
    }
}
