//! Named verification suites with deterministic, canonically ordered reports.

use std::fmt::Display;
use std::time::Instant;

use num::traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bar::{cross_product, BarChain, BarCochain};
use crate::cocycles::{
    alpha, alpha_tilde, alpha_tilde_flat, alpha_tilde_permutation_sum, build_cstar_cycle,
    build_cstar_cycle_randomized, calabi_cochain, check_fluxc_decomposition, flux_pullback,
    fluxc_square, omega0_tilde, torus_cycle, xy_primitive, Cocycle, CstarDecorations,
};
use crate::error::{Error, Result};
use crate::group::{ModelSymp, SubgroupTag};
use crate::kunneth::{
    base_cochain, e_class, flux_class, gamma_class, mu_class, v_class, BaseElement, Fiber,
    KunnethClass, RelationsMode,
};
use crate::random::Sampler;
use crate::scalars::{Alphabet, Monomial, PolyScalar, Rational, SymElement};
use crate::symplectic::{
    act_on_coh, ideal_quotient_dims, iota, la2_coinvariant, la2_witness, omega0, twist_matrix,
    CohVector, ExtElement, Genus, Homology, RationalWedge2,
};

pub const SUITES: [&str; 10] = [
    "cstar",
    "kunneth",
    "heisenberg",
    "pullbacks",
    "cocycles",
    "fluxc",
    "stability",
    "johnson",
    "coinvariants",
    "structure",
];

fn default_symbols() -> Vec<String> {
    vec!["t1".into(), "t2".into()]
}

fn default_suites() -> Vec<String> {
    vec!["all".into()]
}

fn default_cases() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub genus: Genus,
    #[serde(default = "default_symbols")]
    pub symbols: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
    #[serde(default = "default_cases")]
    pub cases: usize,
}

impl SuiteConfig {
    pub fn new(genus: usize) -> Result<Self> {
        Ok(SuiteConfig {
            genus: Genus::new(genus)?,
            symbols: default_symbols(),
            seed: 0,
            suites: default_suites(),
            cases: default_cases(),
        })
    }

    /// Suite names with `all` expanded, deduplicated in registry order.
    pub fn resolved_suites(&self) -> Result<Vec<&'static str>> {
        let mut wanted = vec![false; SUITES.len()];
        for s in &self.suites {
            if s == "all" {
                wanted.iter_mut().for_each(|w| *w = true);
                continue;
            }
            let i = SUITES.iter().position(|n| n == s).ok_or_else(|| {
                Error::Parse(format!("unknown suite `{s}` (all, {})", SUITES.join(", ")))
            })?;
            wanted[i] = true;
        }
        Ok(SUITES
            .iter()
            .zip(wanted)
            .filter(|(_, w)| *w)
            .map(|(n, _)| *n)
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// Stable identifier of the statement being checked.
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{status} {} [{}]\n", c.name, c.anchor));
            if c.status == Status::Fail {
                out.push_str(&format!(
                    "     expected: {}\n     actual:   {}\n",
                    c.expected, c.actual
                ));
            }
        }
        out.push_str(&format!(
            "{} passed, {} failed ({} ms)\n",
            self.summary.passed, self.summary.failed, self.summary.elapsed_ms
        ));
        out
    }
}

struct Outcome {
    expected: String,
    actual: String,
    pass: bool,
}

fn equal(expected: impl Display, actual: impl Display) -> Outcome {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Outcome {
        pass: expected == actual,
        expected,
        actual,
    }
}

/// Runs `n` cases; each returns `None` on success or a description of the failure.
fn cases(
    what: &str,
    n: usize,
    mut f: impl FnMut(usize) -> Result<Option<String>>,
) -> Result<Outcome> {
    let mut ok = 0;
    let mut first = None;
    for i in 0..n {
        match f(i)? {
            None => ok += 1,
            Some(msg) => {
                first.get_or_insert(format!("case {i}: {msg}"));
            }
        }
    }
    let mut actual = format!("{ok}/{n} {what}");
    if let Some(msg) = first {
        actual.push_str(&format!("; first failure {msg}"));
    }
    Ok(Outcome {
        expected: format!("{n}/{n} {what}"),
        actual,
        pass: ok == n,
    })
}

fn mismatch<T: PartialEq + Display>(want: &T, got: &T) -> Option<String> {
    (want != got).then(|| format!("expected {want}, got {got}"))
}

type CheckFn = Box<dyn Fn(&Ctx, &mut Sampler) -> Result<Outcome> + Send + Sync>;

struct Check {
    name: String,
    anchor: &'static str,
    run: CheckFn,
}

fn check(
    name: impl Into<String>,
    anchor: &'static str,
    run: impl Fn(&Ctx, &mut Sampler) -> Result<Outcome> + Send + Sync + 'static,
) -> Check {
    Check {
        name: name.into(),
        anchor,
        run: Box::new(run),
    }
}

struct Ctx {
    genus: Genus,
    alphabet: Alphabet,
    seed: u64,
    cases: usize,
}

impl Ctx {
    /// Sampler seeded from the run seed and the check name, so checks are independent of order.
    fn sampler(&self, name: &str) -> Sampler {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in name.bytes() {
            h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
        }
        Sampler::with_alphabet(self.seed ^ h, self.genus, &self.alphabet)
    }

    fn theta(&self, i: usize) -> PolyScalar {
        let s = self.alphabet.symbols();
        PolyScalar::symbol(s[i % s.len()].clone())
    }

    fn sample_r(&self) -> Vec<PolyScalar> {
        vec![
            PolyScalar::from(1),
            PolyScalar::from(Rational::new(-3, 2)),
            self.theta(0),
        ]
    }
}

fn genus(n: usize) -> Genus {
    Genus::new(n).expect("genus >= 2")
}

fn two() -> Rational {
    Rational::from(2)
}

fn cstar_suite(ctx: &Ctx) -> Vec<Check> {
    ctx.sample_r()
        .into_iter()
        .map(|r| {
            check(
                format!("cstar/pairing r={r}"),
                "cstar-pairing",
                move |ctx, s| {
                    let g = ctx.genus;
                    let a = alpha(g, 1)?;
                    let want = r.scale(&two());
                    cases("random lifts give 2r", 10, |_| {
                        let dec = CstarDecorations::random(s);
                        let i = s.rng().gen_range(1..g.get());
                        let c = build_cstar_cycle_randomized(g, &r, i, &dec, s.rng())?;
                        if !c.cycle.is_cycle() {
                            return Ok(Some("lift is not closed".into()));
                        }
                        Ok(mismatch(&want, &a.evaluate(&c.cycle)?))
                    })
                },
            )
        })
        .collect()
}

fn omega_mu(g: Genus, mode: RelationsMode) -> KunnethClass {
    KunnethClass::from_base(Fiber::Mu, &omega0(g), mode)
}

fn kunneth_suite(_: &Ctx) -> Vec<Check> {
    use RelationsMode::{Free, Reduced};
    vec![
        check("kunneth/flux-square", "flux-square", |_, _| {
            cases("genera 2..5 with [Flux]^2 = -2 mu omega0~", 4, |i| {
                let g = genus(i + 2);
                let f = flux_class(g, Free);
                Ok(mismatch(
                    &omega_mu(g, Free).scale(&-two()),
                    &f.multiply(&f)?,
                ))
            })
        }),
        check("kunneth/v-square-reduced", "v-square", |_, _| {
            cases("genera 2..5 with v^2 = 0 and v|fiber = (2g-2)mu", 4, |i| {
                let g = genus(i + 2);
                let v = v_class(g, Reduced);
                let area = mu_class(g, Reduced).scale(&Rational::from(2 * g.get() as i64 - 2));
                Ok(mismatch(&KunnethClass::zero(g, Reduced), &v.multiply(&v)?)
                    .or_else(|| mismatch(&area, &v.fiber_restriction())))
            })
        }),
        check("kunneth/v-square-components", "v-square", |_, _| {
            cases(
                "genera 2..5 with the free components of v^2 as predicted",
                4,
                |i| {
                    let g = genus(i + 2);
                    let (v, f, gm, mu) = (
                        v_class(g, Free),
                        flux_class(g, Free),
                        gamma_class(g, Free),
                        mu_class(g, Free),
                    );
                    let sq = v.multiply(&v)?;
                    let m = Rational::from(2 * g.get() as i64 - 2);
                    let c22 = f
                        .multiply(&f)?
                        .try_add(&mu.multiply(&gm)?.scale(&(&m * &two())))?;
                    let c13 = f.multiply(&gm)?;
                    let c04 = gm.multiply(&gm)?;
                    let ok = c22.is_zero()
                        && sq.component(2, 2).is_zero()
                        && sq.component(1, 3) == c13.scale(&two())
                        && !c13.is_zero()
                        && sq.component(0, 4) == c04
                        && c13.with_mode(Reduced).is_zero()
                        && c04.with_mode(Reduced).is_zero();
                    Ok((!ok).then(|| format!("v^2 = {sq}")))
                },
            )
        }),
        check("kunneth/fiber-integrals", "fiber-integrals", |_, _| {
            cases(
                "genera and modes with v1 = -omega0~, e1 = 0, -pi(e+v)^2 = 2 omega0~",
                8,
                |i| {
                    let g = genus(i / 2 + 2);
                    let mode = if i % 2 == 0 { Free } else { Reduced };
                    let (e, v) = (e_class(g, mode), v_class(g, mode));
                    let w = omega0(g);
                    let v1 = e.multiply(&v)?.pi_star();
                    let e1 = e.multiply(&e)?.pi_star();
                    let s = e.try_add(&v)?;
                    let total = s.multiply(&s)?.scale(&Rational::from(-1)).pi_star();
                    Ok(
                        mismatch(&BaseElement::from_ext(&w.scale(&Rational::from(-1))), &v1)
                            .or_else(|| mismatch(&BaseElement::zero(g), &e1))
                            .or_else(|| mismatch(&BaseElement::from_ext(&w.scale(&two())), &total)),
                    )
                },
            )
        }),
        check("kunneth/bridge", "omega0-bridge", |ctx, s| {
            let g = ctx.genus;
            let (base, cocycle) = (base_cochain(&omega0(g)), omega0_tilde(g));
            cases(
                "symp0 pairs where base omega0~ matches the cocycle",
                ctx.cases,
                |_| {
                    let t = s.tuple(2, SubgroupTag::Symp0);
                    Ok(mismatch(&cocycle.value(&t)?, &base.value(&t)?))
                },
            )
        }),
    ]
}

fn heisenberg_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check(
            "heisenberg/alpha-minus-two-omega",
            "alpha-omega0",
            |ctx, s| {
                let g = ctx.genus;
                let (a, w, d) = (alpha(g, 1)?, omega0_tilde(g), xy_primitive(g).coboundary());
                cases(
                    "symp0 pairs with alpha - 2 omega0~ = delta(sum x~y~)",
                    ctx.cases,
                    |_| {
                        let t = s.tuple(2, SubgroupTag::Symp0);
                        let lhs = &a.value(&t)? - &w.value(&t)?.scale(&two());
                        Ok(mismatch(&d.value(&t)?, &lhs))
                    },
                )
            },
        ),
        check("heisenberg/orthogonal-tori", "alpha-omega0", |ctx, s| {
            let a = alpha(ctx.genus, 1)?;
            cases("orthogonal commuting tori with alpha = 0", 20, |_| {
                let z = torus_cycle(&s.isotropic_fluxes(2))?;
                Ok(mismatch(&PolyScalar::zero(), &a.evaluate(&z)?))
            })
        }),
    ]
}

fn pullbacks_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check("pullbacks/torus-value", "torus-pullback", |ctx, _| {
            let g = ctx.genus;
            cases("k-tori with flux pullback of x1^..^xk = 1", g.get(), |i| {
                let k = i + 1;
                let fluxes: Vec<_> = (1..=k)
                    .map(|j| CohVector::y(g, j).mul_scalar(&PolyScalar::from(-1)))
                    .collect();
                let z = torus_cycle(&fluxes)?;
                let xi = ExtElement::basis(g, &(0..k).collect::<Vec<_>>(), Rational::from(1));
                Ok(mismatch(
                    &PolyScalar::from(1),
                    &flux_pullback(&xi)?.evaluate(&z)?,
                ))
            })
        }),
        check("pullbacks/omega0-wedge-h", "ideal-kernel", |ctx, s| {
            let g = ctx.genus;
            cases("isotropic 3-tori killing omega0^h", 50, |_| {
                let z = torus_cycle(&s.isotropic_fluxes(3))?;
                let h = s.rng().gen_range(0..g.rank());
                let xi = omega0::<Rational, Homology>(g).wedge(&ExtElement::basis(
                    g,
                    &[h],
                    Rational::from(1),
                ))?;
                Ok(mismatch(
                    &PolyScalar::zero(),
                    &flux_pullback(&xi)?.evaluate(&z)?,
                ))
            })
        }),
        check("pullbacks/ideal-quotient-dims", "ideal-kernel", |ctx, _| {
            let g = ctx.genus;
            let n = g.rank() as i64;
            let binom = |k: i64| -> usize {
                if k < 0 || k > n {
                    0
                } else {
                    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
                }
            };
            let want: Vec<usize> = (0..=g.rank() as i64)
                .map(|k| {
                    if k > g.get() as i64 {
                        0
                    } else {
                        binom(k) - binom(k - 2) + usize::from(k == 2)
                    }
                })
                .collect();
            Ok(equal(
                format!("{want:?}"),
                format!("{:?}", ideal_quotient_dims(g, g.rank())?),
            ))
        }),
    ]
}

fn cocycles_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check(
            "cocycles/alpha-tilde-1-closed",
            "alpha-tilde-closed",
            |ctx, s| {
                let d = alpha_tilde(ctx.genus, 1)?.coboundary();
                cases("3-tuples with delta alpha~(1) = 0", ctx.cases, |_| {
                    let v = d.value(&s.tuple(3, SubgroupTag::Full))?;
                    Ok((!v.is_zero()).then(|| v.to_string()))
                })
            },
        ),
        check(
            "cocycles/alpha-tilde-2-closed",
            "alpha-tilde-closed",
            |ctx, s| {
                let d = alpha_tilde(ctx.genus, 2)?.coboundary();
                let n = if ctx.genus.get() >= 3 {
                    ctx.cases.min(10)
                } else {
                    ctx.cases
                };
                cases("5-tuples with delta alpha~(2) = 0", n, |_| {
                    let v = d.value(&s.tuple(5, SubgroupTag::Full))?;
                    Ok((!v.is_zero()).then(|| v.to_string()))
                })
            },
        ),
        check(
            "cocycles/alpha-tilde-reference",
            "alpha-tilde-closed",
            |ctx, s| {
                let g = ctx.genus;
                let (a1, r1) = (alpha_tilde(g, 1)?, alpha_tilde_permutation_sum(g, 1)?);
                let (a2, r2) = (alpha_tilde(g, 2)?, alpha_tilde_permutation_sum(g, 2)?);
                cases(
                    "tuples where matching and permutation sums agree",
                    ctx.cases.min(20),
                    |_| {
                        let (t2, t4) =
                            (s.tuple(2, SubgroupTag::Full), s.tuple(4, SubgroupTag::Full));
                        Ok(mismatch(&r1.value(&t2)?, &a1.value(&t2)?)
                            .or(mismatch(&r2.value(&t4)?, &a2.value(&t4)?)))
                    },
                )
            },
        ),
        check("cocycles/pair-closed", "pair-closed", |ctx, s| {
            let g = ctx.genus;
            let names = ["flux", "fluxc", "kR"];
            let mut ds = Vec::new();
            for a in names {
                for b in names {
                    match Cocycle::parse(g, &format!("pair:{a},{b}"))? {
                        Cocycle::Real(c) => ds.push(c.coboundary()),
                        _ => unreachable!("pairings are real-valued"),
                    }
                }
            }
            cases(
                "3-tuples with delta pair(A, B) = 0 for all A, B",
                ctx.cases,
                |_| {
                    let t = s.tuple(3, SubgroupTag::Full);
                    for d in &ds {
                        let v = d.value(&t)?;
                        if !v.is_zero() {
                            return Ok(Some(format!("{}: {v}", d.name())));
                        }
                    }
                    Ok(None)
                },
            )
        }),
        check("cocycles/calabi-law", "calabi-law", |ctx, s| {
            let g = ctx.genus;
            let (d, f) = (calabi_cochain(g).coboundary(), fluxc_square(g));
            cases("pairs with delta Cal = -Fluxc.Fluxc", ctx.cases, |_| {
                let t = s.tuple(2, SubgroupTag::Full);
                Ok(mismatch(&-f.value(&t)?, &d.value(&t)?))
            })
        }),
    ]
}

fn fluxc_suite(ctx: &Ctx) -> Vec<Check> {
    ctx.sample_r()
        .into_iter()
        .map(|r| {
            check(
                format!("fluxc/decomposition r={r}"),
                "fluxc-decomposition",
                move |ctx, s| {
                    let g = ctx.genus;
                    let c = build_cstar_cycle(g, &r, 1, &CstarDecorations::random(s))?.cycle;
                    cases(
                        "cycles with alpha = 2 kR.Fluxc and Fluxc.Fluxc = 0",
                        10,
                        |i| {
                            let z = if i == 0 {
                                c.clone()
                            } else {
                                &c + &s.chain(3, 3, SubgroupTag::Symp0).boundary()?
                            };
                            let rep = check_fluxc_decomposition(&z)?;
                            Ok(
                                (!(rep.holds() && rep.symmetric() && rep.alpha == r.scale(&two())))
                                    .then(|| format!("{rep:?}")),
                            )
                        },
                    )
                },
            )
        })
        .collect()
}

fn stability_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check("stability/block-embedding", "stability", |ctx, _| {
            let small = genus(2);
            let t = ctx.theta(0);
            let c = build_cstar_cycle(small, &t, 1, &CstarDecorations::plain(small))?.cycle;
            let base = alpha_tilde_flat(small).evaluate(&c)?;
            let targets: Vec<(usize, usize)> = vec![(3, 0), (3, 1), (4, 0), (4, 2)];
            cases("block embeddings preserving alpha~", targets.len(), |i| {
                let (n, offset) = targets[i];
                let big = genus(n);
                let e = c.embed(offset, big);
                if !e.is_cycle() {
                    return Ok(Some("embedded chain is not closed".into()));
                }
                Ok(mismatch(&base, &alpha_tilde_flat(big).evaluate(&e)?))
            })
        }),
        check(
            "stability/level-two-reference",
            "level-two-product",
            |ctx, _| {
                let z = level_two_cycle(ctx)?;
                let g = z.genus();
                Ok(equal(
                    alpha_tilde_permutation_sum(g, 2)?.evaluate(&z)?,
                    alpha_tilde(g, 2)?.evaluate(&z)?,
                ))
            },
        ),
        check(
            "stability/level-two-projection",
            "level-two-product",
            |ctx, _| {
                let z = level_two_cycle(ctx)?;
                let want = (&ctx.theta(0) * &ctx.theta(1)).scale(&Rational::from(8));
                Ok(equal(
                    want,
                    alpha_tilde(z.genus(), 2)?.evaluate(&z)?.project(),
                ))
            },
        ),
    ]
}

fn level_two_cycle(ctx: &Ctx) -> Result<BarChain> {
    let g = genus(2);
    let c1 = build_cstar_cycle(g, &ctx.theta(0), 1, &CstarDecorations::plain(g))?.cycle;
    let c2 = build_cstar_cycle(g, &ctx.theta(1), 1, &CstarDecorations::plain(g))?.cycle;
    Ok(cross_product(&c1, &c2))
}

fn johnson_suite(_: &Ctx) -> Vec<Check> {
    vec![check(
        "johnson/contraction",
        "johnson-contraction",
        |_, _| {
            cases(
                "genera 2..5 with C((sum x_i^y_i)^y_g) = 2(g-1) y_g",
                4,
                |i| {
                    let n = i + 2;
                    let g = genus(n);
                    let v = |p| ExtElement::<Rational, Homology>::basis(g, &[p], Rational::from(1));
                    let mut partial = ExtElement::zero(g, 2);
                    for j in 1..n {
                        partial = partial.try_add(&v(g.x(j)).wedge(&v(g.y(j)))?)?;
                    }
                    let tau = partial.wedge(&v(g.y(n)))?;
                    Ok(mismatch(
                        &v(g.y(n)).scale(&Rational::from(2 * (n as i64 - 1))),
                        &tau.contract()?,
                    ))
                },
            )
        },
    )]
}

fn coinvariants_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check(
            "coinvariants/lickorish-invariance",
            "coinvariants",
            |ctx, s| {
                let g = ctx.genus;
                cases(
                    "wedges with la2 invariant under a Lickorish generator",
                    ctx.cases,
                    |_| {
                        let mut w = RationalWedge2::zero(g);
                        for _ in 0..2 {
                            w = w.try_add(&RationalWedge2::wedge(&s.coh_poly(), &s.coh_poly())?)?;
                        }
                        let m = act_on_coh(&twist_matrix(g, s.generator())?)?;
                        Ok(mismatch(&la2_coinvariant(&w), &la2_coinvariant(&w.act(&m))))
                    },
                )
            },
        ),
        check("coinvariants/surjectivity", "coinvariants", |ctx, _| {
            let g = ctx.genus;
            let symbols = ctx.alphabet.symbols();
            let mut targets: Vec<(Monomial, Monomial)> = Vec::new();
            for size in 1..=symbols.len().min(4) {
                let names: Vec<String> = symbols[..size].iter().map(|s| s.to_string()).collect();
                let monos = Alphabet::new(&names)?.monomials_up_to(2);
                for (i, m1) in monos.iter().enumerate() {
                    targets.extend(monos[i..].iter().map(|m2| (m1.clone(), m2.clone())));
                }
            }
            cases("basis monomials hit by their witness", targets.len(), |i| {
                let (m1, m2) = &targets[i];
                let want = SymElement::basis(vec![m1.clone(), m2.clone()], Rational::from(1));
                Ok(mismatch(&want, &la2_coinvariant(&la2_witness(g, m1, m2))))
            })
        }),
    ]
}

/// Trivial-coefficient cochain mixing all slots nonlinearly.
fn probe(g: Genus, degree: usize) -> BarCochain<PolyScalar> {
    BarCochain::new("probe", g, degree, |t| {
        let mut acc = PolyScalar::from(1);
        for (i, e) in t.iter().enumerate() {
            let w = &e.flux_tilde().coords()[i % e.genus().rank()] + e.cal();
            acc = &(&acc * &w) + &PolyScalar::from(i as i64 + 1);
        }
        Ok(acc)
    })
}

fn structure_suite(_: &Ctx) -> Vec<Check> {
    vec![
        check("structure/boundary-squared", "bar-complex", |ctx, s| {
            cases("chains with boundary of boundary = 0", ctx.cases, |i| {
                let z = s.chain(2 + i % 3, 2, SubgroupTag::Full);
                let dd = z.boundary()?.boundary()?;
                Ok((!dd.is_zero()).then(|| format!("{} terms survive", dd.num_terms())))
            })
        }),
        check("structure/coboundary-squared", "bar-complex", |ctx, s| {
            let g = ctx.genus;
            let dds: Vec<_> = (1..=2)
                .map(|d| probe(g, d).coboundary().coboundary())
                .collect();
            cases("tuples with delta delta = 0", ctx.cases, |i| {
                let dd = &dds[i % 2];
                let v = dd.value(&s.tuple(dd.degree(), SubgroupTag::Full))?;
                Ok((!v.is_zero()).then(|| v.to_string()))
            })
        }),
        check("structure/adjunction", "bar-complex", |ctx, s| {
            let g = ctx.genus;
            let f = probe(g, 2);
            let df = f.coboundary();
            cases(
                "chains with <delta f, z> = <f, boundary z>",
                ctx.cases,
                |_| {
                    let z = s.chain(3, 2, SubgroupTag::Full);
                    Ok(mismatch(&f.evaluate(&z.boundary()?)?, &df.evaluate(&z)?))
                },
            )
        }),
        check("structure/group-axioms", "group-law", |ctx, s| {
            let g = ctx.genus;
            let id = ModelSymp::identity(g);
            cases(
                "triples satisfying associativity, unit and inverse",
                ctx.cases,
                |_| {
                    let (a, b, c) = (s.element(), s.element(), s.element());
                    let ok = a.compose(&b)?.compose(&c)? == a.compose(&b.compose(&c)?)?
                        && a.compose(&id)? == a
                        && id.compose(&a)? == a
                        && a.compose(&a.inverse())?.is_identity()
                        && a.inverse().compose(&a)?.is_identity();
                    Ok((!ok).then(|| format!("{a:?}, {b:?}, {c:?}")))
                },
            )
        }),
        check("structure/heisenberg-commutator", "group-law", |ctx, s| {
            let g = ctx.genus;
            cases(
                "symp0 pairs with commutator = central 2 iota",
                ctx.cases,
                |_| {
                    let (a, b) = (
                        s.element_in(SubgroupTag::Symp0),
                        s.element_in(SubgroupTag::Symp0),
                    );
                    let want = ModelSymp::central(g, iota(a.fc(), b.fc())?.scale(&two()));
                    Ok(mismatch(
                        &format!("{want:?}"),
                        &format!("{:?}", a.commutator(&b)?),
                    ))
                },
            )
        }),
    ]
}

fn suite_checks(name: &str, ctx: &Ctx) -> Vec<Check> {
    match name {
        "cstar" => cstar_suite(ctx),
        "kunneth" => kunneth_suite(ctx),
        "heisenberg" => heisenberg_suite(ctx),
        "pullbacks" => pullbacks_suite(ctx),
        "cocycles" => cocycles_suite(ctx),
        "fluxc" => fluxc_suite(ctx),
        "stability" => stability_suite(ctx),
        "johnson" => johnson_suite(ctx),
        "coinvariants" => coinvariants_suite(ctx),
        "structure" => structure_suite(ctx),
        _ => unreachable!("suite names are resolved first"),
    }
}

/// Runs the configured suites. Checks run in parallel; the report is sorted by check name.
/// Elapsed times are recorded only with `timings`, so reports are reproducible by default.
pub fn run_suite(config: &SuiteConfig, timings: bool) -> Result<Report> {
    let suites = config.resolved_suites()?;
    let ctx = Ctx {
        genus: config.genus,
        alphabet: Alphabet::new(&config.symbols)?,
        seed: config.seed,
        cases: config.cases,
    };
    let start = Instant::now();
    let all: Vec<Check> = suites.iter().flat_map(|s| suite_checks(s, &ctx)).collect();
    let mut checks: Vec<CheckRecord> = all
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let mut s = ctx.sampler(&c.name);
            let outcome = (c.run)(&ctx, &mut s).unwrap_or_else(|e| Outcome {
                expected: "no error".into(),
                actual: format!("error: {e}"),
                pass: false,
            });
            CheckRecord {
                name: c.name.clone(),
                anchor: c.anchor.into(),
                status: if outcome.pass {
                    Status::Pass
                } else {
                    Status::Fail
                },
                expected: outcome.expected,
                actual: outcome.actual,
                elapsed_ms: if timings {
                    t.elapsed().as_millis() as u64
                } else {
                    0
                },
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    Ok(Report {
        config: config.clone(),
        summary: Summary {
            passed,
            failed: checks.len() - passed,
            elapsed_ms: if timings {
                start.elapsed().as_millis() as u64
            } else {
                0
            },
        },
        checks,
    })
}
