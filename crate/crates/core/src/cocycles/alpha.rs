use itertools::Itertools;

use crate::bar::BarCochain;
use crate::error::{Error, Result};
use crate::group::ModelSymp;
use crate::scalars::{PolyScalar, Rational, SymElement, SymSquarePower};
use crate::symplectic::{iota_disc, CohVector, Genus, SpMatrix};

/// `ξ_i = A(φ₁⋯φ_{i−1}) flux̃(φ_i)`.
fn translated_fluxes(t: &[ModelSymp]) -> Vec<CohVector<PolyScalar>> {
    let mut prefix = SpMatrix::identity(t[0].genus());
    let mut out = Vec::with_capacity(t.len());
    for phi in t {
        out.push(prefix.apply(&phi.flux_tilde()));
        prefix = prefix.mul(phi.action());
    }
    out
}

/// Signed sum over perfect matchings of `0..n` of products of `pair(a, b)`, `a < b`.
fn matching_sum(idx: &[usize], pair: &dyn Fn(usize, usize) -> SymSquarePower) -> SymSquarePower {
    let Some((&first, rest)) = idx.split_first() else {
        return SymSquarePower::unit();
    };
    let mut acc = SymSquarePower::zero();
    for (j, &partner) in rest.iter().enumerate() {
        let p = pair(first, partner);
        if p.is_zero() {
            continue;
        }
        let remaining: Vec<usize> = rest.iter().copied().filter(|&x| x != partner).collect();
        let sub = matching_sum(&remaining, pair);
        let sign = Rational::from(if j % 2 == 0 { 1 } else { -1 });
        acc.add_scaled(&p.sym_mul(&sub), &sign)
            .expect("homogeneous");
    }
    acc
}

/// `α̃^(k)(φ₁,…,φ_{2k}) = (1/(2k)!) Σ_σ sgn σ Π_j ι̃(ξ_{σ(2j−1)}, ξ_{σ(2j)})`, valued in `S^k(S^2_Q R)`.
///
/// Every perfect matching occurs `2^k k!` times in the permutation sum with the same sign,
/// so the sum is taken over matchings.
pub fn alpha_tilde(g: Genus, k: usize) -> Result<BarCochain<SymSquarePower>> {
    if k == 0 {
        return Err(Error::Precondition("alpha_tilde needs k >= 1".into()));
    }
    let n = 2 * k;
    let weight =
        Rational::from(2).pow(k as u32) * &Rational::factorial(k) * &Rational::factorial(n).recip();
    Ok(BarCochain::new(format!("alpha~({k})"), g, n, move |t| {
        let xi = translated_fluxes(t);
        let table: Vec<Vec<SymSquarePower>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a < b {
                            iota_disc(&xi[a], &xi[b])?.to_square_power()
                        } else {
                            Ok(SymSquarePower::zero())
                        }
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let idx: Vec<usize> = (0..n).collect();
        Ok(matching_sum(&idx, &|a, b| table[a][b].clone()).scale(&weight))
    }))
}

/// [`alpha_tilde`] evaluated literally as the signed sum over all of `S_{2k}`.
pub fn alpha_tilde_permutation_sum(g: Genus, k: usize) -> Result<BarCochain<SymSquarePower>> {
    if k == 0 {
        return Err(Error::Precondition("alpha_tilde needs k >= 1".into()));
    }
    let n = 2 * k;
    let norm = Rational::factorial(n).recip();
    Ok(BarCochain::new(
        format!("alpha~({k}) by permutations"),
        g,
        n,
        move |t| {
            let xi = translated_fluxes(t);
            let mut acc = SymSquarePower::zero();
            for p in (0..n).permutations(n) {
                let inversions = (0..n)
                    .tuple_combinations()
                    .filter(|&(a, b)| p[a] > p[b])
                    .count();
                let mut term = SymSquarePower::unit();
                for j in 0..k {
                    term = term
                        .sym_mul(&iota_disc(&xi[p[2 * j]], &xi[p[2 * j + 1]])?.to_square_power()?);
                }
                acc.add_scaled(
                    &term,
                    &Rational::from(if inversions % 2 == 0 { 1 } else { -1 }),
                )?;
            }
            Ok(acc.scale(&norm))
        },
    ))
}

/// `α̃ = α̃^(1)` read in `S^2_Q R`.
pub fn alpha_tilde_flat(g: Genus) -> BarCochain<SymElement> {
    let a = alpha_tilde(g, 1).expect("k = 1");
    a.map_values("alpha~", |v| v.flatten())
}

/// `α^(k) = project ∘ α̃^(k)`, real-valued.
pub fn alpha(g: Genus, k: usize) -> Result<BarCochain<PolyScalar>> {
    let name = if k == 1 {
        "alpha".to_string()
    } else {
        format!("alpha({k})")
    };
    Ok(alpha_tilde(g, k)?.map_values(name, |v| v.project()))
}
