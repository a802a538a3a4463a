//! Arithmetic in F_q = F_{p^m} for odd primes p: deterministic construction,
//! field operations, Frobenius, absolute trace, and quadratic-residue
//! classification.
//!
//! Elements are stored as their integer value in [0, q): the base-p digits of
//! the value are the polynomial-basis coordinates. Multiplicative work goes
//! through log/antilog tables when q is small enough to afford them
//! ([`TABLE_LIMIT`]); additive work is digit arithmetic either way.

use crate::arith;
use crate::{Error, Result};
use serde::Serialize;

/// Largest field size for which log/antilog tables are precomputed.
pub const TABLE_LIMIT: u64 = 1 << 24;

/// An element of F_q, identified by its value in [0, q): base-p digits are
/// the coefficients in the polynomial basis, lowest power first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Quadratic-residue status of a field element. Zero gets its own tag:
/// the zero element is neither a unit square nor a nonsquare, and several
/// counting arguments in this crate need the three cases kept apart.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ResidueClass {
    Zero,
    Square,
    NonSquare,
}

struct Tables {
    /// exp[i] = value of pi^i, i in [0, q-1)
    exp: Vec<u32>,
    /// log[v] = i with pi^i = v; log[0] is a sentinel
    log: Vec<u32>,
}

/// A concrete realization of GF(p^m) with a fixed modulus and generator.
pub struct FieldDescriptor {
    p: u64,
    m: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients lowest-degree first, length m+1.
    modulus: Vec<u64>,
    pi: FieldElement,
    /// Tr(x^j) for j in 0..m; trace of any element is the digit dot product.
    basis_traces: Vec<u64>,
    tables: Option<Tables>,
}

impl FieldDescriptor {
    /// Build GF(p^m) deterministically: scan monic degree-m polynomials in
    /// lexicographic order of their low-coefficient value and take the first
    /// irreducible one whose residue class of x is a primitive element; then
    /// pi := x.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::new_variant(p, m, 0)
    }

    /// Same scan as [`FieldDescriptor::new`] but skipping the first `skip`
    /// acceptable moduli, giving an inequivalent realization of the same
    /// field for cross-checks.
    pub fn new_variant(p: u64, m: u32, skip: usize) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if m < 1 {
            return Err(Error::BadDegree(m));
        }
        let q = p.checked_pow(m).ok_or(Error::FieldTooLarge { p, m })?;
        let radical = arith::distinct_prime_factors(q - 1);
        let mut remaining = skip;
        for v in 0..q {
            let modulus = arith::candidate_modulus(v, m, p);
            if !arith::is_irreducible(&modulus, p) {
                continue;
            }
            if !x_is_primitive(&modulus, p, q, &radical) {
                continue;
            }
            if remaining > 0 {
                remaining -= 1;
                continue;
            }
            return Self::from_modulus(p, m, q, modulus);
        }
        Err(Error::NoModulus { p, m })
    }

    fn from_modulus(p: u64, m: u32, q: u64, modulus: Vec<u64>) -> Result<Self> {
        let pi_value = if m == 1 {
            // x = -c mod (x + c)
            (p - modulus[0] % p) % p
        } else {
            p
        };
        let mut fd = FieldDescriptor {
            p,
            m,
            q,
            modulus,
            pi: FieldElement(pi_value),
            basis_traces: Vec::new(),
            tables: None,
        };
        fd.basis_traces = fd.compute_basis_traces()?;
        if q <= TABLE_LIMIT {
            fd.tables = Some(fd.build_tables()?);
        }
        Ok(fd)
    }

    fn compute_basis_traces(&self) -> Result<Vec<u64>> {
        let (p, m) = (self.p, self.m as usize);
        let f = &self.modulus;
        let mut traces = Vec::with_capacity(m);
        for j in 0..m {
            let mut basis = vec![0u64; j + 1];
            basis[j] = 1;
            let mut acc = basis.clone();
            let mut t = basis;
            for _ in 1..m {
                t = arith::ppowmod(&t, p, f, p);
                acc = arith::padd(&acc, &t, p);
            }
            if acc.len() > 1 {
                return Err(Error::Internal(
                    "trace of a basis element landed outside F_p".into(),
                ));
            }
            traces.push(acc.first().copied().unwrap_or(0));
        }
        Ok(traces)
    }

    fn build_tables(&self) -> Result<Tables> {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur.0 as u32;
            if log[cur.0 as usize] != u32::MAX {
                return Err(Error::Internal(
                    "generator order is less than q-1 while building tables".into(),
                ));
            }
            log[cur.0 as usize] = i as u32;
            cur = self.mul_in_basis(cur, self.pi);
        }
        if cur != FieldElement::ONE {
            return Err(Error::Internal("pi^(q-1) != 1".into()));
        }
        Ok(Tables { exp, log })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed generator of the multiplicative group.
    pub fn pi(&self) -> FieldElement {
        self.pi
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::NotInField { value, q: self.q })
        }
    }

    /// Element with the given polynomial-basis coordinates (length m,
    /// entries reduced mod p).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector must have length {}",
                self.m
            )));
        }
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            value = value * self.p + c % self.p;
        }
        Ok(FieldElement(value))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.0;
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// The scalar c in F_p as a field element.
    pub fn embed(&self, c: u64) -> FieldElement {
        FieldElement(c % self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (p, mut x, mut y) = (self.p, a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += place * ((x % p + y % p) % p);
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let (p, mut x) = (self.p, a.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += place * ((p - x % p) % p);
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.tables {
            if a.is_zero() || b.is_zero() {
                return FieldElement::ZERO;
            }
            let n = self.q - 1;
            let i = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % n;
            FieldElement(t.exp[i as usize] as u64)
        } else {
            self.mul_in_basis(a, b)
        }
    }

    /// Polynomial-basis multiplication, independent of the tables. Kept
    /// public so the two routes can be checked against each other.
    pub fn mul_in_basis(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let pa = self.coeffs(a);
        let pb = self.coeffs(b);
        let prod = arith::pmulmod(&pa, &pb, &self.modulus, self.p);
        self.from_poly(&prod)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let i = (n - t.log[a.0 as usize] as u64) % n;
            Ok(FieldElement(t.exp[i as usize] as u64))
        } else {
            Ok(self.inv_in_basis(a))
        }
    }

    /// Inverse via a^(q-2) in polynomial-basis arithmetic.
    pub fn inv_in_basis(&self, a: FieldElement) -> FieldElement {
        self.pow_in_basis(a, self.q - 2)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let i = ((t.log[a.0 as usize] as u128 * e as u128) % n as u128) as u64;
            FieldElement(t.exp[i as usize] as u64)
        } else {
            self.pow_in_basis(a, e)
        }
    }

    fn pow_in_basis(&self, a: FieldElement, e: u64) -> FieldElement {
        let pa = self.coeffs(a);
        let r = arith::ppowmod(&pa, e, &self.modulus, self.p);
        self.from_poly(&r)
    }

    /// Absolute trace to F_p: the digit dot product with the basis traces.
    pub fn trace(&self, x: FieldElement) -> u64 {
        let (p, mut v) = (self.p, x.0);
        let mut acc = 0u64;
        for &t in &self.basis_traces {
            if v == 0 {
                break;
            }
            acc += (v % p) * t;
            v /= p;
        }
        acc % p
    }

    /// x^(p^j), with j reduced mod m (negative j allowed).
    pub fn frobenius(&self, x: FieldElement, j: i64) -> FieldElement {
        let m = self.m as i64;
        let j = ((j % m) + m) % m;
        self.pow(x, self.p.pow(j as u32))
    }

    pub fn residue_class(&self, x: FieldElement) -> ResidueClass {
        if x.is_zero() {
            return ResidueClass::Zero;
        }
        if let Some(t) = &self.tables {
            if t.log[x.0 as usize] % 2 == 0 {
                ResidueClass::Square
            } else {
                ResidueClass::NonSquare
            }
        } else {
            let e = self.pow(x, (self.q - 1) / 2);
            if e == FieldElement::ONE {
                ResidueClass::Square
            } else {
                ResidueClass::NonSquare
            }
        }
    }

    /// Discrete log base pi; None for zero. Requires tables.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        let t = self.tables.as_ref()?;
        if x.is_zero() {
            None
        } else {
            Some(t.log[x.0 as usize] as u64)
        }
    }

    /// pi^i for i in [0, q-1). Requires tables; panics otherwise.
    pub fn exp(&self, i: u64) -> FieldElement {
        let t = self
            .tables
            .as_ref()
            .expect("exp() requires log/antilog tables");
        FieldElement(t.exp[i as usize] as u64)
    }

    fn from_poly(&self, coeffs: &[u64]) -> FieldElement {
        let mut value = 0u64;
        for &c in coeffs.iter().rev() {
            value = value * self.p + c;
        }
        FieldElement(value)
    }
}

fn x_is_primitive(modulus: &[u64], p: u64, q: u64, radical: &[u64]) -> bool {
    let x = vec![0u64, 1];
    let xq = arith::ppowmod(&x, q - 1, modulus, p);
    if xq != vec![1] {
        return false;
    }
    for &r in radical {
        if arith::ppowmod(&x, (q - 1) / r, modulus, p) == vec![1] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f35() -> FieldDescriptor {
        FieldDescriptor::new(3, 5).unwrap()
    }

    #[test]
    fn construct_3_5() {
        let fd = f35();
        assert_eq!(fd.q(), 243);
        assert!(fd.has_tables());
        // pi has order exactly q-1
        assert_eq!(fd.pow(fd.pi(), 242), FieldElement::ONE);
        for r in [2u64, 11] {
            assert_ne!(fd.pow(fd.pi(), 242 / r), FieldElement::ONE);
        }
    }

    #[test]
    fn construct_prime_field() {
        let fd = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(fd.q(), 3);
        // 2 is the only primitive root of F_3
        assert_eq!(fd.pi().value(), 2);
    }

    #[test]
    fn rejects_even_characteristic() {
        assert!(matches!(
            FieldDescriptor::new(2, 5),
            Err(Error::NotOddPrime(2))
        ));
        assert!(matches!(
            FieldDescriptor::new(9, 2),
            Err(Error::NotOddPrime(9))
        ));
    }

    #[test]
    fn construction_is_deterministic() {
        let a = FieldDescriptor::new(3, 5).unwrap();
        let b = FieldDescriptor::new(3, 5).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.pi(), b.pi());
    }

    #[test]
    fn variant_modulus_differs() {
        let a = FieldDescriptor::new(3, 5).unwrap();
        let b = FieldDescriptor::new_variant(3, 5, 1).unwrap();
        assert_ne!(a.modulus(), b.modulus());
        assert_eq!(b.pow(b.pi(), 242), FieldElement::ONE);
    }

    #[test]
    fn field_axioms_on_samples() {
        let fd = f35();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = FieldElement(rng.gen_range(0..fd.q()));
            let b = FieldElement(rng.gen_range(0..fd.q()));
            let c = FieldElement(rng.gen_range(0..fd.q()));
            assert_eq!(fd.add(a, b), fd.add(b, a));
            assert_eq!(fd.mul(a, b), fd.mul(b, a));
            assert_eq!(
                fd.mul(a, fd.add(b, c)),
                fd.add(fd.mul(a, b), fd.mul(a, c))
            );
            if !a.is_zero() {
                assert_eq!(fd.mul(a, fd.inv(a).unwrap()), FieldElement::ONE);
            }
        }
        assert!(fd.inv(FieldElement::ZERO).is_err());
    }

    #[test]
    fn characteristic_addition() {
        let fd = f35();
        assert_eq!(fd.add(fd.embed(1), fd.embed(2)), FieldElement::ZERO);
    }

    #[test]
    fn trace_values() {
        let fd = f35();
        assert_eq!(fd.trace(FieldElement::ZERO), 0);
        assert_eq!(fd.trace(FieldElement::ONE), 2); // m mod p = 5 mod 3
        let zero_fiber = fd.elements().filter(|&x| fd.trace(x) == 0).count();
        assert_eq!(zero_fiber, 81); // p^(m-1)
    }

    #[test]
    fn trace_additive_and_frobenius_invariant() {
        let fd = f35();
        for x in fd.elements() {
            let fx = fd.frobenius(x, 1);
            assert_eq!(fd.trace(fx), fd.trace(x));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let a = FieldElement(rng.gen_range(0..fd.q()));
            let b = FieldElement(rng.gen_range(0..fd.q()));
            assert_eq!(
                fd.trace(fd.add(a, b)),
                (fd.trace(a) + fd.trace(b)) % fd.p()
            );
        }
    }

    #[test]
    fn frobenius_identity_and_order() {
        let fd = f35();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = FieldElement(rng.gen_range(0..fd.q()));
            assert_eq!(fd.frobenius(x, 0), x);
            assert_eq!(fd.frobenius(x, 5), x);
            assert_eq!(fd.frobenius(x, -1), fd.frobenius(x, 4));
        }
    }

    #[test]
    fn residue_classes() {
        let fd = f35();
        assert_eq!(fd.residue_class(FieldElement::ZERO), ResidueClass::Zero);
        // q = 243 == 3 mod 4, so -1 is a nonsquare
        let minus_one = fd.neg(FieldElement::ONE);
        assert_eq!(fd.residue_class(minus_one), ResidueClass::NonSquare);
        let mut squares = 0;
        let mut nonsquares = 0;
        for x in fd.elements() {
            match fd.residue_class(x) {
                ResidueClass::Square => squares += 1,
                ResidueClass::NonSquare => nonsquares += 1,
                ResidueClass::Zero => {}
            }
            if !x.is_zero() {
                assert_eq!(fd.residue_class(fd.mul(x, x)), ResidueClass::Square);
            }
        }
        assert_eq!(squares, 121);
        assert_eq!(nonsquares, 121);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let fd = f35();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = FieldElement(rng.gen_range(0..fd.q()));
            let e = rng.gen_range(0..500u64);
            let mut acc = FieldElement::ONE;
            for _ in 0..e {
                acc = fd.mul(acc, a);
            }
            assert_eq!(fd.pow(a, e), acc);
        }
    }

    #[test]
    fn tables_agree_with_polynomial_basis() {
        let fd = f35();
        assert!(fd.has_tables());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let a = FieldElement(rng.gen_range(0..fd.q()));
            let b = FieldElement(rng.gen_range(0..fd.q()));
            assert_eq!(fd.mul(a, b), fd.mul_in_basis(a, b));
            if !a.is_zero() {
                assert_eq!(fd.inv(a).unwrap(), fd.inv_in_basis(a));
            }
        }
    }

    #[test]
    fn coeff_round_trip() {
        let fd = f35();
        for x in fd.elements() {
            let c = fd.coeffs(x);
            assert_eq!(c.len(), 5);
            assert_eq!(fd.element_from_coeffs(&c).unwrap(), x);
        }
    }
}
