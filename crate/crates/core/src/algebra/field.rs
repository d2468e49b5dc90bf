//! Finite fields GF(p^m) with table-driven arithmetic.
//!
//! Elements are stored by their integer code: the coefficient vector
//! `(c_0, ..., c_{m-1})` of the polynomial-basis representation maps to
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Multiplication, inversion and powers
//! go through log/antilog tables over a fixed primitive element; addition goes
//! through a Zech-logarithm table. All tables are built once at construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its integer code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialized description of a field: enough to rebuild it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub generator: u32,
}

/// The finite field GF(p^m).
#[derive(Clone)]
pub struct Gf {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Gf {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Dense polynomial arithmetic over the prime field, used only while the
/// tables do not exist yet.
mod prime_poly {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo `b` over GF(p); `b` must be nonzero.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = c * bc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        rem(&out, modulus, p)
    }

    /// Coefficient digits (little-endian, length m) of an integer code.
    pub fn digits(mut code: u32, p: u32, m: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(m as usize);
        for _ in 0..m {
            d.push(code % p);
            code /= p;
        }
        d
    }

    pub fn code(digits: &[u32], p: u32) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// True when the monic polynomial `f` (degree >= 1) has no monic factor of
    /// degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for c in 0..count {
                let mut cand = digits(c as u32, p, d as u32);
                cand.push(1);
                if rem(f, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Gf {
    /// Builds GF(p^m). Without a modulus the lexicographically smallest monic
    /// irreducible of degree `m` is used (ordered by the integer code of its
    /// non-leading coefficients).
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Gf, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p));
        }
        if m == 0 {
            return Err(AlgebraError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(AlgebraError::FieldTooLarge { p, m });
        }
        let q = q as u32;

        let modulus = match modulus {
            Some(given) => {
                if given.len() != m as usize + 1 || given[m as usize] != 1 {
                    return Err(AlgebraError::BadModulus(given.to_vec()));
                }
                if given.iter().any(|&c| c >= p) {
                    return Err(AlgebraError::BadModulus(given.to_vec()));
                }
                if !prime_poly::is_irreducible(given, p) {
                    return Err(AlgebraError::ReducibleModulus(given.to_vec()));
                }
                given.to_vec()
            }
            None => {
                let mut found = None;
                for c in 0..q {
                    let mut cand = prime_poly::digits(c, p, m);
                    cand.push(1);
                    if prime_poly::is_irreducible(&cand, p) {
                        found = Some(cand);
                        break;
                    }
                }
                // an irreducible of every degree exists over a prime field
                found.expect("no irreducible polynomial found")
            }
        };

        let generator = Self::find_generator(p, m, q, &modulus).ok_or(AlgebraError::NoGenerator)?;
        Ok(Self::with_tables(p, m, q, modulus, generator))
    }

    /// Rebuilds a field from its serialized descriptor; the generator must be
    /// the one the deterministic search picks.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Gf, AlgebraError> {
        let f = Gf::new(d.p, d.m, Some(&d.modulus))?;
        if f.generator.0 != d.generator {
            return Err(AlgebraError::GeneratorMismatch {
                expected: f.generator.0,
                found: d.generator,
            });
        }
        Ok(f)
    }

    fn find_generator(p: u32, m: u32, q: u32, modulus: &[u32]) -> Option<Fe> {
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let pow = |base: &[u32], mut e: u64| {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = prime_poly::mul_mod(&acc, &b, modulus, p);
                }
                b = prime_poly::mul_mod(&b, &b, modulus, p);
                e >>= 1;
            }
            acc
        };
        (1..q).map(Fe).find(|&cand| {
            let mut d = prime_poly::digits(cand.0, p, m);
            prime_poly::trim(&mut d);
            factors.iter().all(|&l| pow(&d, order / l) != [1u32])
        })
    }

    fn with_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>, generator: Fe) -> Gf {
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut gd = prime_poly::digits(generator.0, p, m);
        prime_poly::trim(&mut gd);
        let mut cur = vec![1u32];
        for i in 0..order {
            let mut padded = cur.clone();
            padded.resize(m as usize, 0);
            let c = prime_poly::code(&padded, p);
            exp[i] = c;
            exp[i + order] = c;
            log[c as usize] = i as u32;
            cur = prime_poly::mul_mod(&cur, &gd, &modulus, p);
        }

        // zech[n] = log(1 + g^n), or NO_LOG when 1 + g^n = 0
        let one = prime_poly::digits(1, p, m);
        let mut zech = vec![NO_LOG; order];
        for (n, z) in zech.iter_mut().enumerate() {
            let d = prime_poly::digits(exp[n], p, m);
            let s: Vec<u32> = d.iter().zip(&one).map(|(a, b)| (a + b) % p).collect();
            let c = prime_poly::code(&s, p);
            if c != 0 {
                *z = log[c as usize];
            }
        }
        let neg_one_log = if p == 2 { 0 } else { (order / 2) as u32 };

        Gf {
            p,
            m,
            q,
            modulus,
            generator,
            exp,
            log,
            zech,
            neg_one_log,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
            generator: self.generator.0,
        }
    }

    /// All elements in integer-code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn element(&self, code: u32) -> Result<Fe, AlgebraError> {
        if code < self.q {
            Ok(Fe(code))
        } else {
            Err(AlgebraError::CodeOutOfRange { code, q: self.q })
        }
    }

    /// Polynomial-basis coefficients, little-endian, length m.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        prime_poly::digits(a.0, self.p, self.m)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe, AlgebraError> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(AlgebraError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(Fe(prime_poly::code(coeffs, self.p)))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    fn order_minus_one(&self) -> u32 {
        self.q - 1
    }

    /// g^e for the fixed generator g; `e` may be negative.
    #[inline]
    pub fn gen_pow(&self, e: i64) -> Fe {
        let n = self.order_minus_one() as i64;
        Fe(self.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete log to the fixed generator, `None` for zero.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u32> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.order_minus_one();
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[diff as usize] {
            NO_LOG => Fe::ZERO,
            z => Fe(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.neg_one_log) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, AlgebraError> {
        if a.0 == 0 {
            return Err(AlgebraError::ZeroInverse);
        }
        let n = self.order_minus_one();
        Ok(Fe(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e; negative exponents need a nonzero base.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe, AlgebraError> {
        if a.0 == 0 {
            return match e {
                0 => Ok(Fe::ONE),
                e if e > 0 => Ok(Fe::ZERO),
                _ => Err(AlgebraError::ZeroInverse),
            };
        }
        let n = self.order_minus_one() as i64;
        let l = self.log[a.0 as usize] as i64;
        Ok(Fe(self.exp[((l * e.rem_euclid(n)) % n) as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64, AlgebraError> {
        let l = self.log(a).ok_or(AlgebraError::ZeroOrder)? as u64;
        let n = self.order_minus_one() as u64;
        Ok(n / gcd(n, l))
    }

    pub fn elem(&self, a: Fe) -> Elem<'_> {
        Elem { field: self, value: a }
    }
}

/// A field element bound to its field, for call sites that want operator
/// syntax and mixed-field detection.
#[derive(Clone, Copy, Debug)]
pub struct Elem<'f> {
    field: &'f Gf,
    value: Fe,
}

impl<'f> Elem<'f> {
    pub fn value(self) -> Fe {
        self.value
    }

    pub fn field(self) -> &'f Gf {
        self.field
    }

    fn same_field(self, other: Elem<'_>) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::MixedFields)
        }
    }

    pub fn try_add(self, other: Elem<'_>) -> Result<Elem<'f>, AlgebraError> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: Elem<'_>) -> Result<Elem<'f>, AlgebraError> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: Elem<'_>) -> Result<Elem<'f>, AlgebraError> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(self, other: Elem<'_>) -> Result<Elem<'f>, AlgebraError> {
        self.same_field(other)?;
        Ok(self.field.elem(self.field.div(self.value, other.value)?))
    }

    pub fn inv(self) -> Result<Elem<'f>, AlgebraError> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    pub fn pow(self, e: i64) -> Result<Elem<'f>, AlgebraError> {
        Ok(self.field.elem(self.field.pow(self.value, e)?))
    }

    pub fn order(self) -> Result<u64, AlgebraError> {
        self.field.element_order(self.value)
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl std::ops::Add for Elem<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("operands from different fields")
    }
}

impl std::ops::Sub for Elem<'_> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("operands from different fields")
    }
}

impl std::ops::Mul for Elem<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("operands from different fields")
    }
}

impl std::ops::Neg for Elem<'_> {
    type Output = Self;
    fn neg(self) -> Self {
        self.field.elem(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Gf {
        Gf::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn gf4_basics() {
        let f = gf4();
        assert_eq!(f.order(), 4);
        let w = f.generator();
        assert_eq!(f.element_order(w).unwrap(), 3);
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w, w2), Fe::ONE);
        assert_eq!(f.inv(w).unwrap(), w2);
        // w^2 = w + 1
        assert_eq!(w2, f.add(w, Fe::ONE));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            Gf::new(2, 2, Some(&[1, 0, 1])),
            Err(AlgebraError::ReducibleModulus(vec![1, 0, 1]))
        );
    }

    #[test]
    fn default_modulus_is_first_irreducible() {
        // z^2, z^2+1? over GF(3): z^2 has a root; z^2+1 has none.
        let f = Gf::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(Gf::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Gf::new(2, 6, None).unwrap().modulus(), &[1, 1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn generator_is_smallest_primitive() {
        let f = Gf::new(3, 2, None).unwrap();
        let g = f.generator();
        assert_eq!(f.element_order(g).unwrap(), 8);
        for c in 1..g.0 {
            assert!(f.element_order(Fe(c)).unwrap() < 8);
        }
        assert_eq!(f.pow(g, 8).unwrap(), Fe::ONE);
    }

    #[test]
    fn prime_field_works() {
        let f = Gf::new(5, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(Fe(3), Fe(4)), Fe(2));
        assert_eq!(f.mul(Fe(3), Fe(4)), Fe(2));
        assert_eq!(f.neg(Fe(1)), Fe(4));
        let g2 = Gf::new(2, 1, None).unwrap();
        assert_eq!(g2.generator(), Fe::ONE);
        assert_eq!(g2.add(Fe(1), Fe(1)), Fe(0));
    }

    #[test]
    fn order_of_power() {
        let f = Gf::new(5, 2, None).unwrap();
        let g8 = f.gen_pow(8);
        assert_eq!(f.element_order(g8).unwrap(), 3);
        assert_eq!(f.element_order(Fe::ONE).unwrap(), 1);
        assert_eq!(f.element_order(Fe::ZERO), Err(AlgebraError::ZeroOrder));
    }

    #[test]
    fn errors() {
        assert_eq!(Gf::new(4, 1, None), Err(AlgebraError::NotPrime(4)));
        assert!(matches!(Gf::new(2, 17, None), Err(AlgebraError::FieldTooLarge { .. })));
        assert!(Gf::new(2, 16, None).is_ok());
        let f = gf4();
        assert_eq!(f.inv(Fe::ZERO), Err(AlgebraError::ZeroInverse));
        assert_eq!(f.pow(Fe::ZERO, -1), Err(AlgebraError::ZeroInverse));
        assert_eq!(f.pow(f.generator(), -1).unwrap(), f.inv(f.generator()).unwrap());
    }

    #[test]
    fn mixed_fields_detected() {
        let a = gf4();
        let b = Gf::new(3, 2, None).unwrap();
        let x = a.elem(Fe(2));
        let y = b.elem(Fe(2));
        assert_eq!(x.try_add(y).err(), Some(AlgebraError::MixedFields));
        assert_eq!(x.try_mul(y).err(), Some(AlgebraError::MixedFields));
        let z = a.elem(Fe(3));
        assert_eq!((x * z).value(), Fe::ONE);
    }

    #[test]
    fn descriptor_round_trip() {
        let f = Gf::new(5, 2, None).unwrap();
        let d = f.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Gf::from_descriptor(&back).unwrap(), f);
    }
}
