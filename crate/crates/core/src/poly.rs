//! Polynomials over F_p, p-cyclotomic cosets mod q-1, minimal polynomials of
//! powers of the generator, and the parity-check / generator polynomials of
//! the code.

use crate::arith;
use crate::code::CodeSpec;
use crate::field::{FieldDescriptor, FieldElement};
use crate::{Error, Result};
use serde::Serialize;

/// Dense polynomial over F_p, coefficients lowest-degree first, canonical
/// (no trailing zeros; zero polynomial has an empty coefficient vector).
/// Serializes as a JSON array of integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct PolyOverFp {
    coeffs: Vec<u64>,
}

impl PolyOverFp {
    pub fn zero() -> Self {
        PolyOverFp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyOverFp { coeffs: vec![1] }
    }

    /// Reduce the given coefficients mod p and trim to canonical form.
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        let reduced = coeffs.into_iter().map(|c| c % p).collect();
        PolyOverFp {
            coeffs: arith::ptrim(reduced),
        }
    }

    /// x^k - 1 over F_p.
    pub fn x_power_minus_one(k: usize, p: u64) -> Self {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[0] = p - 1;
        coeffs[k] = 1;
        PolyOverFp { coeffs }
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = 1;
        PolyOverFp { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        arith::pdeg(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, rhs: &PolyOverFp, p: u64) -> PolyOverFp {
        PolyOverFp {
            coeffs: arith::padd(&self.coeffs, &rhs.coeffs, p),
        }
    }

    pub fn sub(&self, rhs: &PolyOverFp, p: u64) -> PolyOverFp {
        PolyOverFp {
            coeffs: arith::psub(&self.coeffs, &rhs.coeffs, p),
        }
    }

    pub fn mul(&self, rhs: &PolyOverFp, p: u64) -> PolyOverFp {
        PolyOverFp {
            coeffs: arith::pmul(&self.coeffs, &rhs.coeffs, p),
        }
    }

    pub fn divrem(&self, rhs: &PolyOverFp, p: u64) -> Result<(PolyOverFp, PolyOverFp)> {
        if rhs.is_zero() {
            return Err(Error::PolyDivisionByZero);
        }
        let (q, r) = arith::pdivrem(&self.coeffs, &rhs.coeffs, p);
        Ok((PolyOverFp { coeffs: q }, PolyOverFp { coeffs: r }))
    }

    /// Evaluate at a point of the extension field (coefficients embedded
    /// through F_p -> F_q), by Horner's rule.
    pub fn eval_ext(&self, x: FieldElement, fd: &FieldDescriptor) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = fd.add(fd.mul(acc, x), fd.embed(c));
        }
        acc
    }
}

/// The p-cyclotomic coset of an exponent mod q-1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CyclotomicCoset {
    pub representative: u64,
    /// Sorted, distinct members {i * p^j mod (q-1)}.
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The p-cyclotomic coset of i mod q-1.
pub fn cyclotomic_coset(i: u64, fd: &FieldDescriptor) -> Result<CyclotomicCoset> {
    let n = fd.q() - 1;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, limit: n });
    }
    let mut members = vec![i];
    let mut cur = arith::mulmod(i, fd.p(), n);
    while cur != i {
        members.push(cur);
        cur = arith::mulmod(cur, fd.p(), n);
    }
    members.sort_unstable();
    Ok(CyclotomicCoset {
        representative: members[0],
        members,
    })
}

/// One coset per orbit, covering all of [0, q-1).
pub fn cyclotomic_transversal(fd: &FieldDescriptor) -> Vec<CyclotomicCoset> {
    let n = fd.q() - 1;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i as usize] {
            continue;
        }
        let coset = cyclotomic_coset(i, fd).expect("index in range");
        for &j in &coset.members {
            seen[j as usize] = true;
        }
        out.push(coset);
    }
    out
}

/// Minimal polynomial of pi^(-i) over F_p, computed as the exact product of
/// (x - pi^(-i p^j)) over the coset of i in extension-field arithmetic. Every
/// coefficient must collapse into the base field, which doubles as a
/// correctness check on the field construction.
pub fn minimal_poly(i: u64, fd: &FieldDescriptor) -> Result<PolyOverFp> {
    let n = fd.q() - 1;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, limit: n });
    }
    let coset = cyclotomic_coset(i, fd)?;
    // Coefficients over F_q, lowest first; start from the constant poly 1.
    let mut coeffs: Vec<FieldElement> = vec![FieldElement::ONE];
    for &j in &coset.members {
        let root = fd.pow(fd.pi(), (n - j) % n); // pi^(-j)
        let neg_root = fd.neg(root);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (t, &c) in coeffs.iter().enumerate() {
            next[t + 1] = fd.add(next[t + 1], c);
            next[t] = fd.add(next[t], fd.mul(neg_root, c));
        }
        coeffs = next;
    }
    let mut base = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if c.value() >= fd.p() {
            return Err(Error::CoefficientNotInBaseField);
        }
        base.push(c.value());
    }
    let poly = PolyOverFp::new(base, fd.p());
    // Self-check: monic of coset-size degree, vanishing at pi^(-i).
    if poly.degree() != Some(coset.len()) || !poly.is_monic() {
        return Err(Error::Internal("minimal polynomial malformed".into()));
    }
    let at_root = poly.eval_ext(fd.pow(fd.pi(), (n - i) % n), fd);
    if !at_root.is_zero() {
        return Err(Error::Internal(
            "minimal polynomial does not vanish at its root".into(),
        ));
    }
    Ok(poly)
}

/// Parity-check polynomial h = h_1 h_{d1} h_{d2}: the product of the minimal
/// polynomials of pi^(-1), pi^(-d1), pi^(-d2). Errors if the three factors
/// are not pairwise distinct of degree m (the parameter regime guarantees
/// they are).
pub fn build_parity_check(spec: &CodeSpec, fd: &FieldDescriptor) -> Result<PolyOverFp> {
    let m = fd.m() as usize;
    let h1 = minimal_poly(1, fd)?;
    let hd1 = minimal_poly(spec.d1_mod(), fd)?;
    let hd2 = minimal_poly(spec.d2_mod(), fd)?;
    for (name, h) in [("h_1", &h1), ("h_d1", &hd1), ("h_d2", &hd2)] {
        if h.degree() != Some(m) {
            return Err(Error::InvalidParameter(format!(
                "{name} has degree {:?}, expected {m}",
                h.degree()
            )));
        }
    }
    if h1 == hd1 || h1 == hd2 || hd1 == hd2 {
        return Err(Error::InvalidParameter(
            "the three minimal polynomials are not pairwise distinct".into(),
        ));
    }
    let h = h1.mul(&hd1, fd.p()).mul(&hd2, fd.p());
    debug_assert_eq!(h.degree(), Some(3 * m));
    Ok(h)
}

/// Generator polynomial g = (x^(q-1) - 1) / h; errors if h does not divide.
pub fn generator_poly(h: &PolyOverFp, fd: &FieldDescriptor) -> Result<PolyOverFp> {
    let n = (fd.q() - 1) as usize;
    let xn1 = PolyOverFp::x_power_minus_one(n, fd.p());
    let (g, r) = xn1.divrem(h, fd.p())?;
    if !r.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{validate_spec, Mode};

    fn f35() -> FieldDescriptor {
        FieldDescriptor::new(3, 5).unwrap()
    }

    #[test]
    fn coset_of_one() {
        let fd = f35();
        let c = cyclotomic_coset(1, &fd).unwrap();
        assert_eq!(c.members, vec![1, 3, 9, 27, 81]);
        assert_eq!(c.representative, 1);
    }

    #[test]
    fn coset_of_zero() {
        let fd = f35();
        let c = cyclotomic_coset(0, &fd).unwrap();
        assert_eq!(c.members, vec![0]);
    }

    #[test]
    fn coset_of_d1_disjoint_from_coset_of_one() {
        let fd = f35();
        let c1 = cyclotomic_coset(1, &fd).unwrap();
        let c5 = cyclotomic_coset(5, &fd).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.members.iter().all(|x| !c1.members.contains(x)));
    }

    #[test]
    fn coset_out_of_range() {
        let fd = f35();
        assert!(cyclotomic_coset(242, &fd).is_err());
    }

    #[test]
    fn transversal_covers_everything() {
        let fd = f35();
        let total: usize = cyclotomic_transversal(&fd).iter().map(|c| c.len()).sum();
        assert_eq!(total, 242);
    }

    #[test]
    fn minimal_poly_degree_and_roots() {
        let fd = f35();
        let h1 = minimal_poly(1, &fd).unwrap();
        assert_eq!(h1.degree(), Some(5));
        let root = fd.pow(fd.pi(), 241); // pi^(-1)
        assert!(h1.eval_ext(root, &fd).is_zero());
    }

    #[test]
    fn minimal_poly_of_zero_exponent() {
        let fd = f35();
        // minimal polynomial of pi^0 = 1 is x - 1
        let h0 = minimal_poly(0, &fd).unwrap();
        assert_eq!(h0.coeffs(), &[2, 1]);
    }

    #[test]
    fn minimal_polys_pairwise_distinct() {
        let fd = f35();
        let a = minimal_poly(1, &fd).unwrap();
        let b = minimal_poly(5, &fd).unwrap();
        let c = minimal_poly(41, &fd).unwrap();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn minimal_poly_constant_on_coset() {
        let fd = f35();
        for i in [1u64, 5, 41, 7] {
            let a = minimal_poly(i, &fd).unwrap();
            let b = minimal_poly(i * 3 % 242, &fd).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn parity_check_3_5_1() {
        let fd = f35();
        let spec = validate_spec(3, 5, 1, Mode::Theorem2).unwrap();
        let h = build_parity_check(&spec, &fd).unwrap();
        assert_eq!(h.degree(), Some(15));
        let xn1 = PolyOverFp::x_power_minus_one(242, 3);
        let (_, r) = xn1.divrem(&h, 3).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn parity_check_5_5_1() {
        let fd = FieldDescriptor::new(5, 5).unwrap();
        let spec = validate_spec(5, 5, 1, Mode::Theorem2).unwrap();
        let h = build_parity_check(&spec, &fd).unwrap();
        assert_eq!(h.degree(), Some(15));
        let xn1 = PolyOverFp::x_power_minus_one(3124, 5);
        let (_, r) = xn1.divrem(&h, 5).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn parity_check_independent_of_representatives() {
        let fd = f35();
        let spec = validate_spec(3, 5, 1, Mode::Theorem2).unwrap();
        let h = build_parity_check(&spec, &fd).unwrap();
        // Rebuild from other members of the same cosets.
        let alt = minimal_poly(3, &fd)
            .unwrap()
            .mul(&minimal_poly(15, &fd).unwrap(), 3)
            .mul(&minimal_poly(123, &fd).unwrap(), 3);
        assert_eq!(h, alt);
    }

    #[test]
    fn generator_poly_3_5_1() {
        let fd = f35();
        let spec = validate_spec(3, 5, 1, Mode::Theorem2).unwrap();
        let h = build_parity_check(&spec, &fd).unwrap();
        let g = generator_poly(&h, &fd).unwrap();
        assert_eq!(g.degree(), Some(227));
        let pi_inv = fd.pow(fd.pi(), 241);
        assert!(!g.eval_ext(pi_inv, &fd).is_zero());
        assert!(h.eval_ext(pi_inv, &fd).is_zero());
        // g*h + 1 = x^242
        let gh = g.mul(&h, 3);
        let sum = gh.add(&PolyOverFp::one(), 3);
        assert_eq!(sum, PolyOverFp::monomial(242));
    }

    #[test]
    fn generator_poly_rejects_nondivisor() {
        let fd = f35();
        let not_a_factor = PolyOverFp::new(vec![1, 1, 1], 3);
        assert!(matches!(
            generator_poly(&not_a_factor, &fd),
            Err(Error::NonzeroRemainder)
        ));
    }

    #[test]
    fn poly_ring_basics() {
        let p = 3;
        let xm1 = PolyOverFp::new(vec![2, 1], p); // x - 1
        let xp1 = PolyOverFp::new(vec![1, 1], p); // x + 1
        let prod = xm1.mul(&xp1, p);
        assert_eq!(prod.coeffs(), &[2, 0, 1]); // x^2 - 1
        let (q, r) = prod.divrem(&xm1, p).unwrap();
        assert_eq!(q, xp1);
        assert!(r.is_zero());
        assert!(PolyOverFp::one().divrem(&PolyOverFp::zero(), p).is_err());
    }
}
