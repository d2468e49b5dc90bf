//! Exact arithmetic in GF(p^m) and polynomial evaluation over it.

mod field;
mod poly;

pub use field::{Elem, Fe, FieldDescriptor, Gf, MAX_ORDER};
pub use poly::{Poly, ProductForm, Var};

pub(crate) use field::{gcd, is_prime};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("GF({p}^{m}) exceeds the supported order 2^16")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus {0:?} is not a monic polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("no primitive element found")]
    NoGenerator,
    #[error("descriptor generator {found} differs from the canonical generator {expected}")]
    GeneratorMismatch { expected: u32, found: u32 },
    #[error("integer code {code} is outside GF({q})")]
    CodeOutOfRange { code: u32, q: u32 },
    #[error("coefficient vector {0:?} does not describe a field element")]
    BadCoefficients(Vec<u32>),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("root {0} listed more than once")]
    RepeatedRoot(Fe),
    #[error("expected a polynomial in {expected}, found a factor in {found}")]
    VariableMismatch { expected: &'static str, found: Var },
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Gf> {
        vec![
            Gf::new(2, 2, None).unwrap(),
            Gf::new(3, 2, None).unwrap(),
            Gf::new(5, 2, None).unwrap(),
            Gf::new(2, 6, None).unwrap(),
            Gf::new(7, 1, None).unwrap(),
        ]
    }

    #[test]
    fn integer_code_round_trip() {
        for f in fields() {
            for a in f.elements() {
                let c = f.coeffs(a);
                assert_eq!(c.len(), f.degree() as usize);
                assert_eq!(f.from_coeffs(&c).unwrap(), a);
            }
        }
    }

    #[test]
    fn fermat_and_order_divides() {
        for f in fields() {
            let n = (f.order() - 1) as u64;
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, n as i64).unwrap(), Fe::ONE);
                assert_eq!(n % f.element_order(a).unwrap(), 0);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn field_axioms(fi in 0usize..5, a in 0u32..65536, b in 0u32..65536, c in 0u32..65536) {
            let f = &fields()[fi];
            let q = f.order();
            let (a, b, c) = (Fe(a % q), Fe(b % q), Fe(c % q));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
        }

        #[test]
        fn roots_then_rebuild(mask in 1u32..255) {
            // squarefree split polynomials over GF(9): rebuild from their roots
            let f = Gf::new(3, 2, None).unwrap();
            let roots: Vec<Fe> = (0..8).filter(|i| mask & (1 << i) != 0).map(|i| Fe(i + 1)).collect();
            let p = Poly::from_roots(&roots, Var::T, &f).unwrap();
            let found = p.roots_in_field(&f).unwrap();
            prop_assert_eq!(Poly::from_roots(&found, Var::T, &f).unwrap(), p);
        }
    }
}
