//! Seeded sampling of scalars, elements and chains.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::BarChain;
use crate::group::{ModelSymp, SubgroupTag};
use crate::scalars::{Alphabet, Monomial, PolyScalar, Rational};
use crate::symplectic::{CohVector, Generator, Genus};

pub struct Sampler {
    rng: ChaCha8Rng,
    genus: Genus,
    monomials: Vec<Monomial>,
}

impl Sampler {
    /// Sampler over the default alphabet `{t1, t2}`.
    pub fn new(seed: u64, g: Genus) -> Self {
        let alphabet = Alphabet::new(&["t1", "t2"]).expect("valid symbols");
        Self::with_alphabet(seed, g, &alphabet)
    }

    pub fn with_alphabet(seed: u64, g: Genus, alphabet: &Alphabet) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            genus: g,
            monomials: alphabet.monomials_up_to(1),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        Rational::new(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=2))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        let n = *[-3, -2, -1, 1, 2, 3]
            .choose(&mut self.rng)
            .expect("nonempty");
        Rational::new(n, self.rng.gen_range(1..=2))
    }

    /// At most two terms, each of degree at most one.
    pub fn poly(&mut self) -> PolyScalar {
        let mut p = PolyScalar::from(0);
        for _ in 0..self.rng.gen_range(0..=2) {
            let m = self
                .monomials
                .choose(&mut self.rng)
                .expect("nonempty")
                .clone();
            let c = self.nonzero_rational();
            p.add_term(m, &c);
        }
        p
    }

    pub fn coh_poly(&mut self) -> CohVector<PolyScalar> {
        let coords = (0..self.genus.rank())
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    self.poly()
                } else {
                    PolyScalar::from(0)
                }
            })
            .collect();
        CohVector::from_coords(coords).expect("even length")
    }

    pub fn coh_rational(&mut self) -> CohVector<Rational> {
        let coords = (0..self.genus.rank())
            .map(|_| {
                if self.rng.gen_bool(0.5) {
                    self.rational()
                } else {
                    Rational::from(0)
                }
            })
            .collect();
        CohVector::from_coords(coords).expect("even length")
    }

    /// `k` fluxes in the isotropic span of `x*_1, …, x*_g`.
    pub fn isotropic_fluxes(&mut self, k: usize) -> Vec<CohVector<PolyScalar>> {
        let g = self.genus;
        (0..k)
            .map(|_| {
                (1..=g.get()).fold(CohVector::zero(g), |acc, i| {
                    &acc + &CohVector::x(g, i).mul_scalar(&self.poly())
                })
            })
            .collect()
    }

    pub fn generator(&mut self) -> Generator {
        let g = self.genus.get();
        match self.rng.gen_range(0..3) {
            0 => Generator::Lambda(self.rng.gen_range(1..=g)),
            1 => Generator::Mu(self.rng.gen_range(1..=g)),
            _ => Generator::Nu(self.rng.gen_range(1..g)),
        }
    }

    pub fn word(&mut self, max_len: usize) -> Vec<Generator> {
        let len = self.rng.gen_range(0..=max_len);
        (0..len).map(|_| self.generator()).collect()
    }

    pub fn element(&mut self) -> ModelSymp {
        self.element_in(SubgroupTag::Full)
    }

    pub fn element_in(&mut self, tag: SubgroupTag) -> ModelSymp {
        let g = self.genus;
        let (word, kv) = match tag {
            SubgroupTag::Full => (self.word(3), self.coh_rational()),
            SubgroupTag::TorelliLike => (Vec::new(), self.coh_rational()),
            SubgroupTag::Symp0 | SubgroupTag::Ham => (Vec::new(), CohVector::zero(g)),
        };
        let fc = if tag == SubgroupTag::Ham {
            CohVector::zero(g)
        } else {
            self.coh_poly()
        };
        let cal = self.poly();
        ModelSymp::from_word(&word, fc, kv, cal).expect("sampled data is consistent")
    }

    pub fn tuple(&mut self, n: usize, tag: SubgroupTag) -> Vec<ModelSymp> {
        (0..n).map(|_| self.element_in(tag)).collect()
    }

    /// Random chain with small integer coefficients.
    pub fn chain(&mut self, degree: usize, terms: usize, tag: SubgroupTag) -> BarChain {
        let mut c = BarChain::zero(self.genus, degree);
        for _ in 0..terms {
            let t = self.tuple(degree, tag);
            let coef = Rational::from(self.rng.gen_range(-2..=2));
            c.add_term(t, &coef);
        }
        c
    }
}
