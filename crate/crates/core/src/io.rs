//! JSON descriptors for elements, chains, certificates and evaluation requests.

use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bar::BarChain;
use crate::cocycles::{build_cstar_cycle, torus_cycle, Cocycle, CstarDecorations};
use crate::error::{Error, Result};
use crate::group::ModelSymp;
use crate::scalars::{Alphabet, PolyScalar, Rational, Scalar};
use crate::symplectic::{CohVector, Generator, Genus, SpMatrix};

/// `{genus, word | matrix, fC, kv, cal}`; missing decorations are zero, a missing word is the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDescriptor {
    pub genus: Genus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<Generator>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, rename = "fC", skip_serializing_if = "Option::is_none")]
    pub fc: Option<CohVector<PolyScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kv: Option<CohVector<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cal: Option<PolyScalar>,
}

fn check_len<S: Scalar>(g: Genus, v: &CohVector<S>, what: &str) -> Result<()> {
    if v.genus() != g {
        return Err(Error::Parse(format!(
            "{what} has length {} but genus {g} needs {}",
            2 * v.genus().get(),
            g.rank()
        )));
    }
    Ok(())
}

impl ElementDescriptor {
    pub fn from_element(phi: &ModelSymp) -> Self {
        let g = phi.genus();
        ElementDescriptor {
            genus: g,
            word: None,
            matrix: (!phi.matrix().is_identity()).then(|| phi.matrix().rows()),
            fc: (!phi.fc().is_zero()).then(|| phi.fc().clone()),
            kv: (!phi.kv().is_zero()).then(|| phi.kv().clone()),
            cal: (!phi.cal().is_zero()).then(|| phi.cal().clone()),
        }
    }

    pub fn to_element(&self) -> Result<ModelSymp> {
        let g = self.genus;
        let fc = self.fc.clone().unwrap_or_else(|| CohVector::zero(g));
        let kv = self.kv.clone().unwrap_or_else(|| CohVector::zero(g));
        check_len(g, &fc, "fC")?;
        check_len(g, &kv, "kv")?;
        let cal = self.cal.clone().unwrap_or_else(PolyScalar::zero);
        match (&self.word, &self.matrix) {
            (Some(_), Some(_)) => Err(Error::Parse(
                "give either `word` or `matrix`, not both".into(),
            )),
            (Some(w), None) => ModelSymp::from_word(w, fc, kv, cal),
            (None, Some(rows)) => {
                let t = SpMatrix::from_rows(rows.clone())?;
                if t.genus() != g {
                    return Err(Error::GenusMismatch(g.get(), t.genus().get()));
                }
                ModelSymp::new(t, fc, kv, cal)
            }
            (None, None) => ModelSymp::new(SpMatrix::identity(g), fc, kv, cal),
        }
    }

    fn symbols(&self) -> Vec<String> {
        let mut out = Vec::new();
        let polys = self
            .fc
            .iter()
            .flat_map(|v| v.coords().iter())
            .chain(self.cal.iter());
        for p in polys {
            out.extend(p.symbols().into_iter().map(|s| s.to_string()));
        }
        out
    }
}

/// One term `{coef, tuple}` of a chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTerm {
    pub coef: Rational,
    pub tuple: Vec<ElementDescriptor>,
}

pub fn chain_to_terms(z: &BarChain) -> Vec<ChainTerm> {
    z.terms()
        .map(|(t, c)| ChainTerm {
            coef: c.clone(),
            tuple: t.iter().map(ElementDescriptor::from_element).collect(),
        })
        .collect()
}

/// Builds a chain of the given degree; every tuple must have that length.
pub fn chain_from_terms(g: Genus, degree: usize, terms: &[ChainTerm]) -> Result<BarChain> {
    let mut out = BarChain::zero(g, degree);
    for term in terms {
        if term.tuple.len() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: term.tuple.len(),
            });
        }
        let tuple = term
            .tuple
            .iter()
            .map(ElementDescriptor::to_element)
            .collect::<Result<Vec<_>>>()?;
        if let Some(phi) = tuple.iter().find(|phi| phi.genus() != g) {
            return Err(Error::GenusMismatch(g.get(), phi.genus().get()));
        }
        out.try_add_term(tuple, &term.coef)?;
    }
    Ok(out)
}

/// `{chain, boundary, verified}`: `verified` records that `∂ chain = boundary` was recomputed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub chain: Vec<ChainTerm>,
    pub boundary: Vec<ChainTerm>,
    pub verified: bool,
}

impl Certificate {
    /// Cycle certificate: `boundary` is `∂z`, verified when it vanishes.
    pub fn cycle(z: &BarChain) -> Result<Self> {
        let b = z.boundary()?;
        Ok(Certificate {
            chain: chain_to_terms(z),
            boundary: chain_to_terms(&b),
            verified: b.is_zero(),
        })
    }

    /// Filler certificate: `∂ filler = target`.
    pub fn filler(filler: &BarChain, target: &BarChain) -> Result<Self> {
        let verified = &filler.boundary()? == target;
        Ok(Certificate {
            chain: chain_to_terms(filler),
            boundary: chain_to_terms(target),
            verified,
        })
    }
}

/// Input of `eval`: a registered cocycle and a chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalRequest {
    pub cocycle: String,
    pub genus: Genus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
    pub chain: Vec<ChainTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub cocycle: String,
    pub degree: usize,
    pub value: String,
    /// Image in `R` of a refined value.
    pub projected: String,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub certificate: Certificate,
}

pub fn evaluate_request(req: &EvalRequest) -> Result<EvalOutcome> {
    let g = req.genus;
    if let Some(symbols) = &req.symbols {
        let alphabet = Alphabet::new(symbols)?;
        for term in &req.chain {
            for el in &term.tuple {
                if let Some(s) = el.symbols().into_iter().find(|s| !symbols.contains(s)) {
                    return Err(Error::Parse(format!(
                        "symbol `{s}` is not in the alphabet {:?}",
                        alphabet.symbols()
                    )));
                }
            }
        }
    }
    let cocycle = Cocycle::parse(g, &req.cocycle)?;
    let z = chain_from_terms(g, cocycle.degree(), &req.chain)?;
    let certificate = Certificate::cycle(&z)?;
    let value = cocycle.evaluate(&z)?;
    let closed = certificate.verified;
    Ok(EvalOutcome {
        cocycle: req.cocycle.clone(),
        degree: cocycle.degree(),
        value: value.to_string(),
        projected: value.project().to_string(),
        closed,
        note: (!closed).then(|| "chain not closed".to_string()),
        certificate,
    })
}

/// Named chain constructions for `build`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BuildSpec {
    /// The lifted 2-cycle `c̃*_r` on handles `i, i + 1`.
    Cstar {
        genus: Genus,
        r: PolyScalar,
        handle: usize,
    },
    /// Shuffle cycle of `(I, −r y*_i, 0, 0)` for `i = 1..=k`, whose fluxes read `r x_i` in `H_1`.
    Torus {
        genus: Genus,
        k: usize,
        r: PolyScalar,
    },
}

pub fn build_chain(spec: &BuildSpec) -> Result<BarChain> {
    match spec {
        BuildSpec::Cstar { genus, r, handle } => {
            Ok(build_cstar_cycle(*genus, r, *handle, &CstarDecorations::plain(*genus))?.cycle)
        }
        BuildSpec::Torus { genus, k, r } => {
            if *k == 0 || *k > genus.get() {
                return Err(Error::IndexOutOfRange(format!(
                    "torus dimension {k} at genus {genus}"
                )));
            }
            let fluxes: Vec<_> = (1..=*k)
                .map(|i| CohVector::y(*genus, i).mul_scalar(&-r))
                .collect();
            torus_cycle(&fluxes)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SubgroupTag;
    use crate::random::Sampler;

    fn g2() -> Genus {
        Genus::new(2).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let mut s = Sampler::new(3, g2());
        for _ in 0..50 {
            let phi = s.element();
            let d = ElementDescriptor::from_element(&phi);
            let json = serde_json::to_string(&d).unwrap();
            let back: ElementDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_element().unwrap(), phi);
        }
    }

    #[test]
    fn element_from_word() {
        let json = r#"{"genus": 2, "word": ["lambda1", "mu2"], "fC": ["t1", "0", "0", "1/2"], "cal": "3"}"#;
        let d: ElementDescriptor = serde_json::from_str(json).unwrap();
        let phi = d.to_element().unwrap();
        let expected = ModelSymp::from_word(
            &[Generator::Lambda(1), Generator::Mu(2)],
            CohVector::from_coords(vec![
                PolyScalar::var("t1"),
                0.into(),
                0.into(),
                Rational::new(1, 2).into(),
            ])
            .unwrap(),
            CohVector::zero(g2()),
            PolyScalar::from(3),
        )
        .unwrap();
        assert_eq!(phi, expected);
    }

    #[test]
    fn schema_violations() {
        let bad = [
            r#"{"genus": 2, "word": ["lambda1"], "matrix": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
            r#"{"genus": 2, "fC": ["1", "0"]}"#,
            r#"{"genus": 2, "matrix": [[1,1,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
            r#"{"genus": 2, "matrix": [[1,0],[0,1]]}"#,
        ];
        for json in bad {
            let parsed = serde_json::from_str::<ElementDescriptor>(json);
            assert!(
                parsed.map(|d| d.to_element().is_err()).unwrap_or(true),
                "{json}"
            );
        }
        assert!(serde_json::from_str::<ElementDescriptor>(r#"{"genus": 1}"#).is_err());
        assert!(serde_json::from_str::<ElementDescriptor>(r#"{"genus": 2, "colour": 1}"#).is_err());
    }

    #[test]
    fn chain_round_trip_and_degree_check() {
        let mut s = Sampler::new(9, g2());
        let z = s.chain(3, 4, SubgroupTag::Full);
        let terms = chain_to_terms(&z);
        let json = serde_json::to_string(&terms).unwrap();
        let back: Vec<ChainTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(chain_from_terms(g2(), 3, &back).unwrap(), z);
        assert_eq!(
            chain_from_terms(g2(), 2, &back).unwrap_err(),
            Error::DegreeMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn certificates() {
        let mut s = Sampler::new(4, g2());
        let z = s.chain(2, 3, SubgroupTag::Full);
        let c = Certificate::cycle(&z.boundary().unwrap()).unwrap();
        assert!(c.verified);
        let c = Certificate::cycle(&z).unwrap();
        assert!(!c.verified);
        assert_eq!(
            chain_from_terms(g2(), 1, &c.boundary).unwrap(),
            z.boundary().unwrap()
        );
        assert!(
            Certificate::filler(&z, &z.boundary().unwrap())
                .unwrap()
                .verified
        );
        assert!(
            !Certificate::filler(&z, &BarChain::zero(g2(), 1))
                .unwrap()
                .verified
        );
    }

    fn request(cocycle: &str, g: usize, z: &BarChain) -> EvalRequest {
        EvalRequest {
            cocycle: cocycle.into(),
            genus: Genus::new(g).unwrap(),
            symbols: None,
            chain: chain_to_terms(z),
        }
    }

    #[test]
    fn eval_examples() {
        let g = g2();
        let cstar = build_chain(&BuildSpec::Cstar {
            genus: g,
            r: 3.into(),
            handle: 1,
        })
        .unwrap();
        let out = evaluate_request(&request("alpha", 2, &cstar)).unwrap();
        assert_eq!(
            (out.value.as_str(), out.closed, out.note.clone()),
            ("6", true, None)
        );

        let torus = build_chain(&BuildSpec::Torus {
            genus: g,
            k: 2,
            r: 1.into(),
        })
        .unwrap();
        let out = evaluate_request(&request("flux_pullback:x1^x2", 2, &torus)).unwrap();
        assert_eq!(out.value, "1");

        let out = evaluate_request(&request("alpha", 2, &BarChain::zero(g, 2))).unwrap();
        assert_eq!((out.value.as_str(), out.closed), ("0", true));
    }

    #[test]
    fn eval_flags_open_chains_and_checks_degree() {
        let mut s = Sampler::new(1, g2());
        let z = s.chain(2, 2, SubgroupTag::Symp0);
        let out = evaluate_request(&request("omega0_tilde", 2, &z)).unwrap();
        assert!(!out.closed);
        assert_eq!(out.note.as_deref(), Some("chain not closed"));
        assert_eq!(
            out.value,
            crate::cocycles::omega0_tilde(g2())
                .evaluate(&z)
                .unwrap()
                .to_string()
        );
        assert!(matches!(
            evaluate_request(&request("alpha", 2, &s.chain(3, 1, SubgroupTag::Full))),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn eval_rejects_foreign_symbols() {
        let g = g2();
        let z = build_chain(&BuildSpec::Cstar {
            genus: g,
            r: PolyScalar::var("s"),
            handle: 1,
        })
        .unwrap();
        let mut req = request("alpha", 2, &z);
        req.symbols = Some(vec!["t1".into()]);
        assert!(evaluate_request(&req).is_err());
        req.symbols = Some(vec!["s".into()]);
        assert_eq!(evaluate_request(&req).unwrap().value, "2*s");
    }

    #[test]
    fn eval_request_json_shape() {
        let json = r#"{"cocycle": "alpha", "genus": 2, "chain": []}"#;
        let req: EvalRequest = serde_json::from_str(json).unwrap();
        assert_eq!(evaluate_request(&req).unwrap().value, "0");
        let spec: BuildSpec =
            serde_json::from_str(r#"{"kind": "cstar", "genus": 3, "r": "-3/2", "handle": 2}"#)
                .unwrap();
        let z = build_chain(&spec).unwrap();
        assert_eq!(
            evaluate_request(&request("alpha", 3, &z)).unwrap().value,
            "-3"
        );
    }
}
