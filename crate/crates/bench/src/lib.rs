//! Fixtures shared by the benchmarks.

use sympflux_core::bar::{cross_product, BarChain};
use sympflux_core::cocycles::{build_cstar_cycle, CstarDecorations};
use sympflux_core::scalars::PolyScalar;
use sympflux_core::symplectic::Genus;

pub fn genus(n: usize) -> Genus {
    Genus::new(n).expect("genus >= 2")
}

/// `c̃*_θ` on the first handle pair.
pub fn cstar(g: Genus, theta: &str) -> BarChain {
    build_cstar_cycle(g, &PolyScalar::var(theta), 1, &CstarDecorations::plain(g))
        .expect("valid handle")
        .cycle
}

/// Cross product of two genus-2 lifted cycles, living at genus 4.
pub fn level_two_cycle() -> BarChain {
    let g = genus(2);
    cross_product(&cstar(g, "t1"), &cstar(g, "t2"))
}
