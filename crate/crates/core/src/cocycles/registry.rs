use std::fmt;

use super::{
    alpha, alpha_tilde, alpha_tilde_flat, flux_cochain, flux_pullback, fluxc_cochain, kr_cochain,
    omega0_tilde,
};
use super::{x_tilde, y_tilde};
use crate::bar::{pair_cocycle, pair_cocycle_disc, BarChain, BarCochain};
use crate::error::{Error, Result};
use crate::scalars::{PolyScalar, Rational, SymElement, SymSquarePower};
use crate::symplectic::{omega0, CohVector, ExtElement, Genus, Homology};

/// A cocycle looked up by name, with its coefficient type.
#[derive(Clone, Debug)]
pub enum Cocycle {
    Real(BarCochain<PolyScalar>),
    Sym(BarCochain<SymElement>),
    SymSquare(BarCochain<SymSquarePower>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CocycleValue {
    Real(PolyScalar),
    Sym(SymElement),
    SymSquare(SymSquarePower),
}

impl fmt::Display for CocycleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleValue::Real(v) => write!(f, "{v}"),
            CocycleValue::Sym(v) => write!(f, "{v}"),
            CocycleValue::SymSquare(v) => write!(f, "{v}"),
        }
    }
}

impl CocycleValue {
    /// Image in `R` under the projection.
    pub fn project(&self) -> PolyScalar {
        match self {
            CocycleValue::Real(v) => v.clone(),
            CocycleValue::Sym(v) => v.project(),
            CocycleValue::SymSquare(v) => v.project(),
        }
    }
}

fn twisted(g: Genus, name: &str) -> Result<BarCochain<CohVector<PolyScalar>>> {
    match name.trim() {
        "flux" => Ok(flux_cochain(g)),
        "fluxc" => Ok(fluxc_cochain(g)),
        "kR" | "kr" => Ok(kr_cochain(g)),
        other => Err(Error::Parse(format!(
            "unknown crossed homomorphism `{other}` (flux, fluxc, kR)"
        ))),
    }
}

fn pair_names(arg: &str) -> Result<(&str, &str)> {
    arg.split_once(',')
        .ok_or_else(|| Error::Parse(format!("`{arg}` should be two names separated by a comma")))
}

fn index(arg: &str) -> Result<usize> {
    arg.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{arg}` is not an index")))
}

impl Cocycle {
    /// Registry names: `alpha`, `alpha:k`, `alpha_tilde`, `alpha_tilde:k`, `omega0_tilde`,
    /// `x_tilde:i`, `y_tilde:i`, `flux_pullback:<ξ>`, `pair:A,B`, `pair_disc:A,B`.
    pub fn parse(g: Genus, name: &str) -> Result<Cocycle> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (name.trim(), None),
        };
        let need = |what: &str| arg.ok_or_else(|| Error::Parse(format!("`{head}` needs {what}")));
        match head {
            "alpha" => Ok(Cocycle::Real(alpha(
                g,
                arg.map(index).transpose()?.unwrap_or(1),
            )?)),
            "alpha_tilde" => match arg.map(index).transpose()?.unwrap_or(1) {
                1 => Ok(Cocycle::Sym(alpha_tilde_flat(g))),
                k => Ok(Cocycle::SymSquare(alpha_tilde(g, k)?)),
            },
            "omega0_tilde" => Ok(Cocycle::Real(omega0_tilde(g))),
            "x_tilde" => Ok(Cocycle::Real(x_tilde(g, index(need("an index")?)?)?)),
            "y_tilde" => Ok(Cocycle::Real(y_tilde(g, index(need("an index")?)?)?)),
            "flux_pullback" => Ok(Cocycle::Real(flux_pullback(&parse_ext(
                g,
                need("a class")?,
            )?)?)),
            "pair" => {
                let (a, b) = pair_names(need("two names")?)?;
                Ok(Cocycle::Real(
                    pair_cocycle(&twisted(g, a)?, &twisted(g, b)?)?.renamed(name),
                ))
            }
            "pair_disc" => {
                let (a, b) = pair_names(need("two names")?)?;
                Ok(Cocycle::Sym(
                    pair_cocycle_disc(&twisted(g, a)?, &twisted(g, b)?)?.renamed(name),
                ))
            }
            other => Err(Error::Parse(format!("unknown cocycle `{other}`"))),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Cocycle::Real(c) => c.degree(),
            Cocycle::Sym(c) => c.degree(),
            Cocycle::SymSquare(c) => c.degree(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Cocycle::Real(c) => c.name(),
            Cocycle::Sym(c) => c.name(),
            Cocycle::SymSquare(c) => c.name(),
        }
    }

    pub fn evaluate(&self, z: &BarChain) -> Result<CocycleValue> {
        Ok(match self {
            Cocycle::Real(c) => CocycleValue::Real(c.evaluate(z)?),
            Cocycle::Sym(c) => CocycleValue::Sym(c.evaluate(z)?),
            Cocycle::SymSquare(c) => CocycleValue::SymSquare(c.evaluate(z)?),
        })
    }
}

fn parse_factor(g: Genus, f: &str) -> Result<ExtElement<Rational, Homology>> {
    let f = f.trim();
    if f == "omega0" {
        return Ok(omega0(g));
    }
    let (kind, idx) = f.split_at(f.find(|c: char| c.is_ascii_digit()).unwrap_or(f.len()));
    let i = index(idx)?;
    if !(1..=g.get()).contains(&i) {
        return Err(Error::IndexOutOfRange(format!("`{f}` at genus {g}")));
    }
    let pos = match kind {
        "x" => g.x(i),
        "y" => g.y(i),
        _ => {
            return Err(Error::Parse(format!(
                "unknown factor `{f}` (x<i>, y<i>, omega0)"
            )))
        }
    };
    Ok(ExtElement::basis(g, &[pos], Rational::from(1)))
}

/// Parses sums like `x1^x2`, `omega0^y1`, `2*x1^y1 + -1/2*x2^y2`.
pub fn parse_ext(g: Genus, text: &str) -> Result<ExtElement<Rational, Homology>> {
    let mut total: Option<ExtElement<Rational, Homology>> = None;
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in `{text}`")));
        }
        let (coef, body) = match term.split_once('*') {
            Some((c, b)) => (c.trim().parse::<Rational>()?, b),
            None => match term.strip_prefix('-') {
                Some(b) => (Rational::from(-1), b),
                None => (Rational::from(1), term),
            },
        };
        let mut acc = ExtElement::one(g);
        for f in body.split('^') {
            acc = acc.wedge(&parse_factor(g, f)?)?;
        }
        let acc = acc.scale(&coef);
        total = Some(match total {
            None => acc,
            Some(t) => t.try_add(&acc)?,
        });
    }
    total.ok_or_else(|| Error::Parse("empty class".into()))
}
