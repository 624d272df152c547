use rand::Rng;

use super::{alpha, fluxc_cochain, fluxc_square, kr_cochain};
use crate::bar::{
    lift_twisted_cycle, lift_twisted_cycle_randomized, mapping_class_primitive, pair_cocycle,
    shuffle_cycle, BarChain, LiftedCycle, TwistedTerm,
};
use crate::error::{Error, Result};
use crate::group::ModelSymp;
use crate::random::Sampler;
use crate::scalars::{PolyScalar, Rational};
use crate::symplectic::{CohVector, Generator, Genus};

/// Free decorations of the lifts `ν̃_i, μ̃_i, μ̃_{i+1}` and of the two kernel elements.
#[derive(Clone, Debug)]
pub struct CstarDecorations {
    pub nu: (CohVector<PolyScalar>, PolyScalar),
    pub mu: (CohVector<PolyScalar>, PolyScalar),
    pub mu_next: (CohVector<PolyScalar>, PolyScalar),
    pub kernel_cal: (PolyScalar, PolyScalar),
    /// `kv(ν̃_i) = kv_scale · x*_i`.
    pub kv_scale: Rational,
}

impl CstarDecorations {
    pub fn plain(g: Genus) -> Self {
        let blank = || (CohVector::zero(g), PolyScalar::from(0));
        CstarDecorations {
            nu: blank(),
            mu: blank(),
            mu_next: blank(),
            kernel_cal: (PolyScalar::from(0), PolyScalar::from(0)),
            kv_scale: Rational::from(1),
        }
    }

    /// Random `fC` and Calabi decorations; the `kv` normalization is kept.
    pub fn random(s: &mut Sampler) -> Self {
        CstarDecorations {
            nu: (s.coh_poly(), s.poly()),
            mu: (s.coh_poly(), s.poly()),
            mu_next: (s.coh_poly(), s.poly()),
            kernel_cal: (s.poly(), s.poly()),
            kv_scale: Rational::from(1),
        }
    }
}

fn cstar_data(
    g: Genus,
    r: &PolyScalar,
    i: usize,
    dec: &CstarDecorations,
) -> Result<Vec<TwistedTerm>> {
    if i == 0 || i >= g.get() {
        return Err(Error::IndexOutOfRange(format!(
            "handle index {i} needs 1 <= i <= {}",
            g.get() - 1
        )));
    }
    let lift = |gen, (fc, cal): &(CohVector<PolyScalar>, PolyScalar), kv| {
        ModelSymp::lift_generator(gen, fc.clone(), kv, cal.clone())
    };
    let nu = lift(
        Generator::Nu(i),
        &dec.nu,
        CohVector::x(g, i).scale(&dec.kv_scale),
    )?;
    let mu = lift(Generator::Mu(i), &dec.mu, CohVector::zero(g))?;
    let mu_next = lift(Generator::Mu(i + 1), &dec.mu_next, CohVector::zero(g))?;
    let k = ModelSymp::heisenberg(CohVector::y(g, i).mul_scalar(r), dec.kernel_cal.0.clone());
    let k_next = ModelSymp::heisenberg(
        CohVector::y(g, i + 1).mul_scalar(r),
        dec.kernel_cal.1.clone(),
    );
    let one = Rational::from(1);
    Ok(vec![
        TwistedTerm {
            lift: nu,
            kernel: k.clone(),
            sign: one.clone(),
        },
        TwistedTerm {
            lift: mu,
            kernel: k,
            sign: -&one,
        },
        TwistedTerm {
            lift: mu_next,
            kernel: k_next,
            sign: one,
        },
    ])
}

/// The 2-cycle `c̃*_r` lifting `ν_i ⊗ r y*_i − μ_i ⊗ r y*_i + μ_{i+1} ⊗ r y*_{i+1}`.
pub fn build_cstar_cycle(
    g: Genus,
    r: &PolyScalar,
    i: usize,
    dec: &CstarDecorations,
) -> Result<LiftedCycle> {
    lift_twisted_cycle(&cstar_data(g, r, i, dec)?)
}

/// As [`build_cstar_cycle`], with a randomized boundary solver.
pub fn build_cstar_cycle_randomized<R: Rng + ?Sized>(
    g: Genus,
    r: &PolyScalar,
    i: usize,
    dec: &CstarDecorations,
    rng: &mut R,
) -> Result<LiftedCycle> {
    lift_twisted_cycle_randomized(&cstar_data(g, r, i, dec)?, rng)
}

/// The torus cycle of elements `(I, f_j, 0, 0)` for pairwise ι-orthogonal fluxes.
pub fn torus_cycle(fluxes: &[CohVector<PolyScalar>]) -> Result<BarChain> {
    let els: Vec<ModelSymp> = fluxes.iter().cloned().map(ModelSymp::symp0).collect();
    shuffle_cycle(&els)
}

/// Evaluations entering the decomposition of `α` on a cycle with trivial push-forward.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxcReport {
    pub alpha: PolyScalar,
    pub kr_fluxc: PolyScalar,
    pub fluxc_kr: PolyScalar,
    pub fluxc_fluxc: PolyScalar,
}

impl FluxcReport {
    /// `⟨α, z⟩ = 2⟨k·Flux̃_c, z⟩` and `⟨Flux̃_c·Flux̃_c, z⟩ = 0`.
    pub fn holds(&self) -> bool {
        self.alpha == self.kr_fluxc.scale(&Rational::from(2))
            && num::Zero::is_zero(&self.fluxc_fluxc)
    }

    /// The two orders of the mixed pairing agree.
    pub fn symmetric(&self) -> bool {
        self.kr_fluxc == self.fluxc_kr
    }
}

pub fn check_fluxc_decomposition(z: &BarChain) -> Result<FluxcReport> {
    if z.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: z.degree(),
        });
    }
    if !z.is_cycle() {
        return Err(Error::NotACycle("input chain is not closed".into()));
    }
    mapping_class_primitive(z)?;
    let g = z.genus();
    let (k, f) = (kr_cochain(g), fluxc_cochain(g));
    Ok(FluxcReport {
        alpha: alpha(g, 1)?.evaluate(z)?,
        kr_fluxc: pair_cocycle(&k, &f)?.evaluate(z)?,
        fluxc_kr: pair_cocycle(&f, &k)?.evaluate(z)?,
        fluxc_fluxc: fluxc_square(g).evaluate(z)?,
    })
}
