//! Named cochains on the model group: flux-type crossed homomorphisms, coordinate
//! characters, flux pullbacks of exterior classes, and the refined cocycles `α̃^(k)`.

mod alpha;
mod cstar;
mod registry;

use num::traits::Zero;

use crate::bar::{pair_cocycle, BarCochain};
use crate::error::{Error, Result};
use crate::group::{ModelSymp, SubgroupTag};
use crate::scalars::{PolyScalar, Rational};
use crate::symplectic::{dual_basis, pair_ext, pd_inverse, CohVector, ExtElement, Genus, Homology};

pub use alpha::{alpha, alpha_tilde, alpha_tilde_flat, alpha_tilde_permutation_sum};
pub use cstar::{
    build_cstar_cycle, build_cstar_cycle_randomized, check_fluxc_decomposition, torus_cycle,
    CstarDecorations, FluxcReport,
};
pub use registry::{parse_ext, Cocycle, CocycleValue};

/// `φ ↦ flux̃(φ) = fC + kv`.
pub fn flux_cochain(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("flux", g, 1, |t| Ok(t[0].flux_tilde()))
}

/// `φ ↦ Flux̃_c(φ)`.
pub fn fluxc_cochain(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("fluxc", g, 1, |t| Ok(t[0].fc().clone()))
}

/// `φ ↦ kv(φ)`, the mapping-class crossed homomorphism pulled back.
pub fn kr_cochain(g: Genus) -> BarCochain<CohVector<PolyScalar>> {
    BarCochain::twisted("kR", g, 1, |t| Ok(t[0].kv_poly()))
}

pub fn calabi_cochain(g: Genus) -> BarCochain<PolyScalar> {
    BarCochain::new("cal", g, 1, |t| Ok(t[0].cal().clone()))
}

/// `(φ, ψ) ↦ ι(Flux̃_c(φ), A(φ) Flux̃_c(ψ))`.
pub fn fluxc_square(g: Genus) -> BarCochain<PolyScalar> {
    pair_cocycle(&fluxc_cochain(g), &fluxc_cochain(g)).expect("twisted 1-cochains")
}

fn symp0_flux(phi: &ModelSymp) -> Result<&CohVector<PolyScalar>> {
    if !SubgroupTag::Symp0.contains(phi) {
        return Err(Error::OutsideSubgroup("symp0"));
    }
    Ok(phi.fc())
}

fn check_index(g: Genus, i: usize) -> Result<()> {
    if !(1..=g.get()).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "character index {i} at genus {g}"
        )));
    }
    Ok(())
}

/// `x̃_i`: the `x_i`-coordinate of the flux read in `H_1` through Poincaré duality.
pub fn x_tilde(g: Genus, i: usize) -> Result<BarCochain<PolyScalar>> {
    check_index(g, i)?;
    let pos = g.y(i);
    Ok(BarCochain::new(format!("x~{i}"), g, 1, move |t| {
        Ok(-symp0_flux(&t[0])?.coord(pos).clone())
    }))
}

/// `ỹ_i`: the `y_i`-coordinate of the flux read in `H_1`.
pub fn y_tilde(g: Genus, i: usize) -> Result<BarCochain<PolyScalar>> {
    check_index(g, i)?;
    let pos = g.x(i);
    Ok(BarCochain::new(format!("y~{i}"), g, 1, move |t| {
        Ok(symp0_flux(&t[0])?.coord(pos).clone())
    }))
}

fn characters(g: Genus, phi: &ModelSymp) -> Result<(Vec<PolyScalar>, Vec<PolyScalar>)> {
    let u = symp0_flux(phi)?;
    let n = g.get();
    let xs = (1..=n).map(|i| -u.coord(g.y(i)).clone()).collect();
    let ys = (1..=n).map(|i| u.coord(g.x(i)).clone()).collect();
    Ok((xs, ys))
}

/// Coordinate character at exterior position `pos`: `x̃_i` for `pos = i − 1`, `ỹ_i` for `pos = g + i − 1`.
pub(crate) fn character(g: Genus, pos: usize, phi: &ModelSymp) -> Result<PolyScalar> {
    let u = symp0_flux(phi)?;
    let n = g.get();
    if pos < n {
        Ok(-u.coord(pos + n).clone())
    } else if pos < 2 * n {
        Ok(u.coord(pos - n).clone())
    } else {
        Err(Error::IndexOutOfRange(format!(
            "character position {pos} at genus {g}"
        )))
    }
}

/// `ω̃₀(φ, ψ) = Σ x̃_i(φ) ỹ_i(ψ)`.
pub fn omega0_tilde(g: Genus) -> BarCochain<PolyScalar> {
    BarCochain::new("omega0~", g, 2, move |t| {
        let (x, _) = characters(g, &t[0])?;
        let (_, y) = characters(g, &t[1])?;
        Ok(x.iter()
            .zip(&y)
            .fold(PolyScalar::zero(), |acc, (a, b)| &acc + &(a * b)))
    })
}

/// `φ ↦ Σ x̃_i(φ) ỹ_i(φ)`, whose coboundary is `α − 2ω̃₀` on the Heisenberg submodel.
pub fn xy_primitive(g: Genus) -> BarCochain<PolyScalar> {
    BarCochain::new("sum x~y~", g, 1, move |t| {
        let (x, y) = characters(g, &t[0])?;
        Ok(x.iter()
            .zip(&y)
            .fold(PolyScalar::zero(), |acc, (a, b)| &acc + &(a * b)))
    })
}

/// `(φ₁,…,φ_k) ↦ (1/k!)⟨ξ, f₁ ∧ … ∧ f_k⟩` with `f_i` the flux of `φ_i` read in `H_1`.
pub fn flux_pullback(xi: &ExtElement<Rational, Homology>) -> Result<BarCochain<PolyScalar>> {
    let g = xi.genus();
    let k = xi.degree();
    if k == 0 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    let xi_poly = xi.map(|c| PolyScalar::from(c.clone()));
    let norm = Rational::factorial(k).recip();
    Ok(BarCochain::new(format!("flux*({xi})"), g, k, move |t| {
        let mut eta = ExtElement::one(g);
        for phi in t {
            let f = dual_basis(&pd_inverse(symp0_flux(phi)?));
            eta = eta.wedge(&ExtElement::from_vector(&f))?;
        }
        Ok(pair_ext(&xi_poly, &eta)?.scale(&norm))
    }))
}
