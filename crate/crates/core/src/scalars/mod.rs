//! Exact scalars: rationals, the polynomial stand-in for the reals, and symmetric powers
//! over `Q` with the hat and projection maps.

mod poly;
mod rational;
mod sym;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

pub use poly::{Alphabet, Monomial, PolyScalar, Symbol};
pub use rational::Rational;
pub use sym::{hat, project, sym_mul, HatBasis, HatPair, SymElement, SymPower, SymSquarePower};

/// Commutative ring over `Q` used as a coordinate ring for vectors and exterior powers.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + 'static
{
    fn from_rational(r: Rational) -> Self;

    fn scale(&self, r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Scalar for PolyScalar {
    fn from_rational(r: Rational) -> Self {
        PolyScalar::constant(r)
    }

    fn scale(&self, r: &Rational) -> Self {
        PolyScalar::scale(self, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn poly() -> impl Strategy<Value = PolyScalar> {
        let term = (small_rational(), 0u32..=2, 0u32..=2);
        proptest::collection::vec(term, 0..4).prop_map(|ts| {
            let a = PolyScalar::var("a");
            let b = PolyScalar::var("b");
            ts.into_iter().fold(PolyScalar::zero(), |acc, (c, i, j)| {
                let mut m = PolyScalar::constant(c);
                for _ in 0..i {
                    m = &m * &a;
                }
                for _ in 0..j {
                    m = &m * &b;
                }
                &acc + &m
            })
        })
    }

    fn sym2() -> impl Strategy<Value = SymElement> {
        (poly(), poly()).prop_map(|(x, y)| hat(&x).sym_mul(&hat(&y)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_axioms(x in poly(), y in poly(), z in poly()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x - &x, PolyScalar::zero());
        }

        #[test]
        fn display_parse_round_trip(x in poly()) {
            prop_assert_eq!(x.to_string().parse::<PolyScalar>().unwrap(), x);
        }

        #[test]
        fn sym_mul_commutes(s in sym2(), t in sym2()) {
            prop_assert_eq!(s.sym_mul(&t), t.sym_mul(&s));
        }

        #[test]
        fn project_is_multiplicative(s in sym2(), t in sym2()) {
            prop_assert_eq!(s.sym_mul(&t).project(), &s.project() * &t.project());
        }

        #[test]
        fn project_inverts_hat(x in poly()) {
            prop_assert_eq!(hat(&x).project(), x);
        }

        #[test]
        fn hat_is_linear(x in poly(), y in poly(), c in small_rational()) {
            let lhs = hat(&(&x + &y.scale(&c)));
            let mut rhs = hat(&x);
            rhs.add_scaled(&hat(&y), &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn project_is_injective_on_unit_multiples(x in poly()) {
            let s = hat(&x).sym_mul(&hat(&PolyScalar::one()));
            prop_assert_eq!(s.project().is_zero(), s.is_zero());
        }
    }

    #[test]
    fn projection_has_a_kernel_in_degree_two() {
        let t1 = PolyScalar::var("t1");
        let t2 = PolyScalar::var("t2");
        let split = hat(&t1).sym_mul(&hat(&t2));
        let joined = hat(&(&t1 * &t2)).sym_mul(&hat(&PolyScalar::one()));
        let diff = &split - &joined;
        assert!(!diff.is_zero());
        assert!(diff.project().is_zero());
    }
}
