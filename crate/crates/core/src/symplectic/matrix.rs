use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{form, Genus, Space, Vector};
use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

/// Integer `2g × 2g` matrix preserving the skew form, stored row-major.
///
/// Acting on `H_1` coordinates, column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpMatrix {
    genus: Genus,
    data: Vec<i64>,
}

impl SpMatrix {
    pub fn identity(g: Genus) -> Self {
        let n = g.rank();
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        SpMatrix { genus: g, data }
    }

    /// Validates shape and the symplectic condition.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n % 2 != 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "expected a square matrix of even size, got {n} rows"
            )));
        }
        let m = SpMatrix {
            genus: Genus::new(n / 2)?,
            data: rows.into_iter().flatten().collect(),
        };
        if !m.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.genus.rank() + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.genus.rank())
            .map(<[i64]>::to_vec)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.genus, other.genus, "genus mismatch in matrix product");
        let n = self.genus.rank();
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        let t = a.checked_mul(b).expect("matrix entry overflow");
                        data[i * n + j] = data[i * n + j]
                            .checked_add(t)
                            .expect("matrix entry overflow");
                    }
                }
            }
        }
        SpMatrix {
            genus: self.genus,
            data,
        }
    }

    pub fn transpose(&self) -> SpMatrix {
        let n = self.genus.rank();
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        SpMatrix {
            genus: self.genus,
            data,
        }
    }

    /// `TᵀJT = J`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.genus.rank();
        let g = self.genus;
        for a in 0..n {
            for b in 0..n {
                let mut s = 0i64;
                for p in 0..n {
                    for q in 0..n {
                        let j = form(g, p, q);
                        if j != 0 {
                            s += self.get(p, a) * j * self.get(q, b);
                        }
                    }
                }
                if s != form(g, a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// `T⁻¹ = -J Tᵀ J`, valid because `T` is symplectic.
    pub fn inverse(&self) -> SpMatrix {
        let g = self.genus;
        let n = g.rank();
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for p in 0..n {
                    let jp = form(g, i, p);
                    if jp == 0 {
                        continue;
                    }
                    for q in 0..n {
                        let jq = form(g, q, j);
                        if jq != 0 {
                            s += jp * self.get(q, p) * jq;
                        }
                    }
                }
                data[i * n + j] = -s;
            }
        }
        SpMatrix { genus: g, data }
    }

    pub fn apply<S: Scalar, K: Space>(&self, v: &Vector<S, K>) -> Vector<S, K> {
        assert_eq!(self.genus, v.genus(), "genus mismatch in matrix action");
        let n = self.genus.rank();
        let coords = (0..n)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..n {
                    let a = self.data[i * n + j];
                    if a != 0 && !v.coord(j).is_zero() {
                        acc = acc + v.coord(j).scale(&Rational::from(a));
                    }
                }
                acc
            })
            .collect();
        Vector::from_coords(coords).expect("length preserved")
    }

    /// Block-diagonal extension acting as the identity outside `[offset, offset + g)`.
    pub fn embed(&self, offset: usize, total: Genus) -> SpMatrix {
        let g = self.genus.get();
        let n = total.get();
        assert!(offset + g <= n, "block does not fit");
        let place = |p: usize| {
            if p < g {
                offset + p
            } else {
                n + offset + p - g
            }
        };
        let mut out = SpMatrix::identity(total);
        let big = total.rank();
        for i in 0..2 * g {
            for j in 0..2 * g {
                out.data[place(i) * big + place(j)] = self.get(i, j);
            }
        }
        out
    }
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Action on `H^1` through `φ(w) = (φ⁻¹)^* w`: the matrix `(T⁻¹)ᵀ`.
pub fn act_on_coh(t: &SpMatrix) -> Result<SpMatrix> {
    if !t.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(t.inverse().transpose())
}

/// A Lickorish Dehn twist, indexed from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    Lambda(usize),
    Mu(usize),
    Nu(usize),
}

impl Generator {
    /// Homology class `c` of the twisting curve.
    pub fn curve<S: Scalar, K: Space>(&self, g: Genus) -> Result<Vector<S, K>> {
        let n = g.get();
        let check = |i: usize, max: usize| {
            if (1..=max).contains(&i) {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange(format!(
                    "{self} needs 1 <= index <= {max} at genus {n}"
                )))
            }
        };
        match *self {
            Generator::Lambda(i) => {
                check(i, n)?;
                Ok(Vector::x(g, i))
            }
            Generator::Mu(i) => {
                check(i, n)?;
                Ok(Vector::y(g, i))
            }
            Generator::Nu(i) => {
                check(i, n - 1)?;
                Ok(&Vector::y(g, i) - &Vector::y(g, i + 1))
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lambda(i) => write!(f, "lambda{i}"),
            Generator::Mu(i) => write!(f, "mu{i}"),
            Generator::Nu(i) => write!(f, "nu{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, idx) = s.split_at(split);
        let i: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("generator `{s}` lacks an index")))?;
        match name {
            "lambda" => Ok(Generator::Lambda(i)),
            "mu" => Ok(Generator::Mu(i)),
            "nu" => Ok(Generator::Nu(i)),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Transvection `t_c(a) = a - <a, c> c` for the generator's curve class `c`.
pub fn twist_matrix(g: Genus, generator: Generator) -> Result<SpMatrix> {
    let c = generator.curve::<Rational, super::Homology>(g)?;
    let n = g.rank();
    let c: Vec<i64> = c
        .coords()
        .iter()
        .map(|x| x.to_i64().expect("integral class"))
        .collect();
    // Column j is e_j - <e_j, c> c.
    let mut data = vec![0; n * n];
    for j in 0..n {
        let pairing: i64 = (0..n).map(|k| form(g, j, k) * c[k]).sum();
        for i in 0..n {
            data[i * n + j] = i64::from(i == j) - pairing * c[i];
        }
    }
    Ok(SpMatrix { genus: g, data })
}
