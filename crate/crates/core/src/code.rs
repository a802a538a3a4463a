//! The cyclic code C_(p,m,k) of length q-1 and dimension 3m: parameter
//! validation, codeword synthesis, the sum-to-weight map, and
//! weight-distribution assembly by exhaustive, closed-form, or sampled
//! methods.

use crate::arith;
use crate::expsum;
use crate::field::{FieldDescriptor, FieldElement};
use crate::poly::{build_parity_check, PolyOverFp};
use crate::tables;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which parameter regime the spec is validated against: `T2` is the
/// coprime case (gcd(m,k) = 1, m odd, m >= 5); `T3` is the general case
/// (e = gcd(m,k) arbitrary, m/e odd, m/e >= 5).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    T2,
    T3,
}

/// Validated code parameters with the derived exponents d1 = (p^2k + 1)/2
/// and d2 = (p^4k + 1)/2.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CodeSpec {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub q: u64,
    pub d1: u64,
    pub d2: u64,
    pub e: u32,
    #[serde(skip)]
    pub mode: Mode,
    #[serde(skip)]
    d1_mod: u64,
    #[serde(skip)]
    d2_mod: u64,
}

impl CodeSpec {
    /// d1 reduced mod q-1 (the exponent actually applied to nonzero elements).
    pub fn d1_mod(&self) -> u64 {
        self.d1_mod
    }

    pub fn d2_mod(&self) -> u64 {
        self.d2_mod
    }

    /// Code length q - 1.
    pub fn length(&self) -> u64 {
        self.q - 1
    }

    /// Number of codewords p^(3m) as a big integer.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(3 * self.m)
    }
}

/// Check (p, m, k) against the chosen regime and derive the exponents.
pub fn validate_spec(p: u64, m: u32, k: u32, mode: Mode) -> Result<CodeSpec> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if m < 1 {
        return Err(Error::BadDegree(m));
    }
    if k < 1 {
        return Err(Error::InvalidParameter("k must be a positive integer".into()));
    }
    let q = p.checked_pow(m).ok_or(Error::FieldTooLarge { p, m })?;
    let e = gcd_u32(m, k);
    match mode {
        Mode::T2 => {
            if e != 1 {
                return Err(Error::InvalidParameter(format!(
                    "gcd(m, k) must be 1 (got {e})"
                )));
            }
            if m % 2 == 0 {
                return Err(Error::InvalidParameter("m must be odd".into()));
            }
            if m < 5 {
                return Err(Error::InvalidParameter("m must be at least 5".into()));
            }
        }
        Mode::T3 => {
            let me = m / e;
            if me % 2 == 0 {
                return Err(Error::InvalidParameter("m/gcd(m,k) must be odd".into()));
            }
            if me < 5 {
                return Err(Error::InvalidParameter(
                    "m/gcd(m,k) must be at least 5".into(),
                ));
            }
        }
    }
    let p128 = p as u128;
    let d1 = derive_exponent(p128, 2 * k, "d1")?;
    let d2 = derive_exponent(p128, 4 * k, "d2")?;
    debug_assert!(d1 % 2 == 1 && d2 % 2 == 1);
    Ok(CodeSpec {
        p,
        m,
        k,
        q,
        d1,
        d2,
        e,
        mode,
        d1_mod: d1 % (q - 1),
        d2_mod: d2 % (q - 1),
    })
}

fn derive_exponent(p: u128, two_k: u32, name: &str) -> Result<u64> {
    let pw = p
        .checked_pow(two_k)
        .ok_or_else(|| Error::InvalidParameter(format!("{name} is unrepresentable")))?;
    u64::try_from((pw + 1) / 2)
        .map_err(|_| Error::InvalidParameter(format!("{name} is unrepresentable")))
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    arith::gcd_u64(a as u64, b as u64) as u32
}

/// The triple indexing a codeword.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DeltaTriple {
    pub d0: FieldElement,
    pub d1: FieldElement,
    pub d2: FieldElement,
}

impl DeltaTriple {
    pub const ZERO: DeltaTriple = DeltaTriple {
        d0: FieldElement::ZERO,
        d1: FieldElement::ZERO,
        d2: FieldElement::ZERO,
    };

    pub fn new(d0: FieldElement, d1: FieldElement, d2: FieldElement) -> Self {
        DeltaTriple { d0, d1, d2 }
    }

    pub fn is_zero(&self) -> bool {
        self.d0.is_zero() && self.d1.is_zero() && self.d2.is_zero()
    }
}

/// One codeword: entry i is Tr(d0 pi^i + d1 pi^(i d1) + d2 pi^(i d2)),
/// length q - 1, entries in [0, p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeword {
    pub entries: Vec<u64>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Synthesize the codeword for a given triple.
pub fn codeword(delta: &DeltaTriple, spec: &CodeSpec, fd: &FieldDescriptor) -> Codeword {
    let n = spec.length() as usize;
    let step0 = fd.pi();
    let step1 = fd.pow(fd.pi(), spec.d1_mod());
    let step2 = fd.pow(fd.pi(), spec.d2_mod());
    let mut cur0 = FieldElement::ONE;
    let mut cur1 = FieldElement::ONE;
    let mut cur2 = FieldElement::ONE;
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let t = fd.trace(fd.mul(delta.d0, cur0))
            + fd.trace(fd.mul(delta.d1, cur1))
            + fd.trace(fd.mul(delta.d2, cur2));
        entries.push(t % spec.p);
        cur0 = fd.mul(cur0, step0);
        cur1 = fd.mul(cur1, step1);
        cur2 = fd.mul(cur2, step2);
    }
    Codeword { entries }
}

pub fn hamming_weight(cw: &Codeword) -> u64 {
    cw.entries.iter().filter(|&&e| e != 0).count() as u64
}

/// Map an exponential-sum value to the weight of its codeword:
/// w = (p-1) p^(m-1) - ((p-1)/p) s. The sum must be divisible by p and the
/// weight must land in [0, q-1].
pub fn weight_from_s(s: i64, spec: &CodeSpec) -> Result<u64> {
    let p = spec.p as i64;
    if s % p != 0 {
        return Err(Error::SumNotDivisible(s));
    }
    let base = (spec.p - 1) as i128 * spec.p.pow(spec.m - 1) as i128;
    let w = base - (s as i128 / p as i128) * (p as i128 - 1);
    if w < 0 || w > (spec.q - 1) as i128 {
        return Err(Error::WeightOutOfRange(s));
    }
    Ok(w as u64)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WdMethod {
    Exact,
    ClosedForm,
    Sampled,
    /// Used by the CLI when it has run both exact and closed-form and is
    /// reporting the agreed distribution.
    Verify,
}

/// Weight -> frequency, with the method that produced it. Frequencies are
/// arbitrary precision and serialize as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct WeightDistribution {
    pub spec: CodeSpec,
    pub method: WdMethod,
    #[serde(serialize_with = "crate::ser::weights_as_rows")]
    pub weights: BTreeMap<u64, BigUint>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

impl WeightDistribution {
    /// Wrap a complete distribution, enforcing its invariants: frequencies
    /// sum to p^(3m), the zero weight occurs exactly once, and there are at
    /// most five nonzero weights.
    pub fn new_full(
        spec: CodeSpec,
        method: WdMethod,
        weights: BTreeMap<u64, BigUint>,
    ) -> Result<Self> {
        let total: BigUint = weights.values().sum();
        if total != spec.size() {
            return Err(Error::Internal(format!(
                "weight frequencies sum to {total}, expected {}",
                spec.size()
            )));
        }
        if weights.get(&0) != Some(&BigUint::one()) {
            return Err(Error::Internal("zero weight must occur exactly once".into()));
        }
        if weights.len() > 6 {
            return Err(Error::Internal(format!(
                "distribution has {} distinct weights, expected at most 6",
                weights.len()
            )));
        }
        Ok(WeightDistribution {
            spec,
            method,
            weights,
            seed: None,
            samples: None,
        })
    }

    pub fn new_sampled(
        spec: CodeSpec,
        weights: BTreeMap<u64, BigUint>,
        samples: u64,
        seed: u64,
    ) -> Self {
        WeightDistribution {
            spec,
            method: WdMethod::Sampled,
            weights,
            seed: Some(seed),
            samples: Some(samples),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weight distribution serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,frequency\n");
        for (w, freq) in &self.weights {
            out.push_str(&format!("{w},{freq}\n"));
        }
        out
    }
}

/// How to assemble a weight distribution.
#[derive(Clone, Copy, Debug)]
pub enum WdRequest {
    Exact,
    ClosedForm,
    Sampled { n: u64, seed: u64 },
}

/// Assemble the weight distribution of C_(p,m,k) by the requested method.
/// The exact method enumerates all q^3 triples and is refused when q^3
/// exceeds `budget`.
pub fn weight_distribution(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    request: WdRequest,
    budget: u64,
) -> Result<WeightDistribution> {
    match request {
        WdRequest::Exact => {
            let counts = expsum::full_svalue_counts(spec, fd, budget)?;
            let weights = svalue_counts_to_weights(&counts, spec)?;
            WeightDistribution::new_full(*spec, WdMethod::Exact, weights)
        }
        WdRequest::ClosedForm => {
            let table = match spec.mode {
                Mode::T2 => tables::table2(spec.p, spec.m)?,
                Mode::T3 => tables::table3(spec.p, spec.m, spec.e)?,
            };
            let mut weights = BTreeMap::new();
            for row in table.rows() {
                let w = u64::try_from(&row.label)
                    .map_err(|_| Error::Internal("negative weight in table".into()))?;
                weights.insert(w, row.frequency.clone());
            }
            WeightDistribution::new_full(*spec, WdMethod::ClosedForm, weights)
        }
        WdRequest::Sampled { n, seed } => {
            if n == 0 {
                return Err(Error::InvalidParameter("sample size must be positive".into()));
            }
            let counts = expsum::sampled_svalue_counts(spec, fd, n, seed)?;
            let mut weights: BTreeMap<u64, BigUint> = BTreeMap::new();
            for (s, cnt) in counts {
                *weights.entry(weight_from_s(s, spec)?).or_default() += cnt;
            }
            Ok(WeightDistribution::new_sampled(*spec, weights, n, seed))
        }
    }
}

pub(crate) fn svalue_counts_to_weights(
    counts: &BTreeMap<i64, u64>,
    spec: &CodeSpec,
) -> Result<BTreeMap<u64, BigUint>> {
    let mut weights: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (&s, &cnt) in counts {
        *weights.entry(weight_from_s(s, spec)?).or_default() += cnt;
    }
    Ok(weights)
}

/// True iff the codeword of `delta` lies in the cyclic code with parity-check
/// polynomial h, i.e. c(x) h(x) = 0 mod (x^(q-1) - 1).
pub fn delsarte_check(delta: &DeltaTriple, spec: &CodeSpec, fd: &FieldDescriptor) -> Result<bool> {
    let h = build_parity_check(spec, fd)?;
    let cw = codeword(delta, spec, fd);
    Ok(vector_in_code(&cw.entries, &h, fd))
}

/// Membership test for an arbitrary length-(q-1) vector against a
/// parity-check polynomial.
pub fn vector_in_code(entries: &[u64], h: &PolyOverFp, fd: &FieldDescriptor) -> bool {
    let p = fd.p();
    let n = entries.len();
    // c(x) * h(x) mod (x^n - 1): accumulate with wrapped exponents.
    let mut acc = vec![0u64; n];
    for (j, &hc) in h.coeffs().iter().enumerate() {
        if hc == 0 {
            continue;
        }
        for (i, &ci) in entries.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let idx = (i + j) % n;
            acc[idx] = (acc[idx] + ci * hc) % p;
        }
    }
    acc.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (CodeSpec, FieldDescriptor) {
        let spec = validate_spec(3, 5, 1, Mode::T2).unwrap();
        let fd = FieldDescriptor::new(3, 5).unwrap();
        (spec, fd)
    }

    fn random_delta(fd: &FieldDescriptor, rng: &mut impl Rng) -> DeltaTriple {
        DeltaTriple::new(
            fd.element(rng.gen_range(0..fd.q())).unwrap(),
            fd.element(rng.gen_range(0..fd.q())).unwrap(),
            fd.element(rng.gen_range(0..fd.q())).unwrap(),
        )
    }

    #[test]
    fn validate_accepts_and_derives() {
        let spec = validate_spec(3, 5, 1, Mode::T2).unwrap();
        assert_eq!((spec.d1, spec.d2, spec.e, spec.q), (5, 41, 1, 243));
    }

    #[test]
    fn validate_rejects_even_m() {
        assert!(validate_spec(3, 6, 1, Mode::T2).is_err());
    }

    #[test]
    fn validate_rejects_small_m() {
        assert!(validate_spec(3, 3, 1, Mode::T2).is_err());
    }

    #[test]
    fn validate_rejects_common_factor_in_t2() {
        assert!(validate_spec(3, 10, 2, Mode::T2).is_err());
    }

    #[test]
    fn validate_general_mode() {
        let spec = validate_spec(3, 10, 2, Mode::T3).unwrap();
        assert_eq!(spec.e, 2);
        assert_eq!(spec.d1, 41);
        assert_eq!(spec.d2, (3u64.pow(8) + 1) / 2);
    }

    #[test]
    fn zero_delta_gives_zero_word() {
        let (spec, fd) = setup();
        let cw = codeword(&DeltaTriple::ZERO, &spec, &fd);
        assert_eq!(cw.len(), 242);
        assert_eq!(hamming_weight(&cw), 0);
    }

    #[test]
    fn single_term_word_has_balanced_weight() {
        let (spec, fd) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let d0 = fd.element(rng.gen_range(1..fd.q())).unwrap();
            let delta = DeltaTriple::new(d0, FieldElement::ZERO, FieldElement::ZERO);
            let cw = codeword(&delta, &spec, &fd);
            assert_eq!(hamming_weight(&cw), 162); // (p-1) p^(m-1)
        }
    }

    #[test]
    fn distinct_deltas_give_distinct_words() {
        let (spec, fd) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let a = random_delta(&fd, &mut rng);
            let b = random_delta(&fd, &mut rng);
            if a != b {
                assert_ne!(codeword(&a, &spec, &fd), codeword(&b, &spec, &fd));
            }
        }
    }

    #[test]
    fn weight_from_s_table() {
        let (spec, _) = setup();
        assert_eq!(weight_from_s(0, &spec).unwrap(), 162);
        assert_eq!(weight_from_s(243, &spec).unwrap(), 0);
        assert_eq!(weight_from_s(81, &spec).unwrap(), 108);
        assert_eq!(weight_from_s(-81, &spec).unwrap(), 216);
        assert_eq!(weight_from_s(27, &spec).unwrap(), 144);
        assert_eq!(weight_from_s(-27, &spec).unwrap(), 180);
    }

    #[test]
    fn weight_from_s_rejects_bad_values() {
        let (spec, _) = setup();
        assert!(matches!(
            weight_from_s(28, &spec),
            Err(Error::SumNotDivisible(28))
        ));
        assert!(matches!(
            weight_from_s(-300, &spec),
            Err(Error::WeightOutOfRange(-300))
        ));
    }

    #[test]
    fn hamming_weight_matches_sum_route() {
        let (spec, fd) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let delta = random_delta(&fd, &mut rng);
            let report = expsum::s_exact(&delta, &spec, &fd).unwrap();
            let via_sum = weight_from_s(report.s, &spec).unwrap();
            let direct = hamming_weight(&codeword(&delta, &spec, &fd));
            assert_eq!(via_sum, direct);
        }
    }

    #[test]
    fn exact_distribution_budget_guard() {
        let (spec, fd) = setup();
        let err = weight_distribution(&spec, &fd, WdRequest::Exact, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn closed_form_matches_reference_small() {
        let (spec, fd) = setup();
        let wd = weight_distribution(&spec, &fd, WdRequest::ClosedForm, 0).unwrap();
        let expect: BTreeMap<u64, BigUint> = [
            (0u64, 1u64),
            (108, 14520),
            (144, 2548260),
            (162, 9740258),
            (180, 2038608),
            (216, 7260),
        ]
        .into_iter()
        .map(|(w, f)| (w, BigUint::from(f)))
        .collect();
        assert_eq!(wd.weights, expect);
    }

    #[test]
    fn sampled_distribution_counts_samples() {
        let (spec, fd) = setup();
        let wd =
            weight_distribution(&spec, &fd, WdRequest::Sampled { n: 500, seed: 9 }, 0).unwrap();
        let total: BigUint = wd.weights.values().sum();
        assert_eq!(total, BigUint::from(500u32));
        assert_eq!(wd.seed, Some(9));
        // Support must stay within the five weights plus zero.
        for w in wd.weights.keys() {
            assert!([0u64, 108, 144, 162, 180, 216].contains(w));
        }
    }

    #[test]
    fn sampled_distribution_is_reproducible() {
        let (spec, fd) = setup();
        let a = weight_distribution(&spec, &fd, WdRequest::Sampled { n: 300, seed: 4 }, 0).unwrap();
        let b = weight_distribution(&spec, &fd, WdRequest::Sampled { n: 300, seed: 4 }, 0).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn delsarte_accepts_trace_words() {
        let (spec, fd) = setup();
        assert!(delsarte_check(&DeltaTriple::ZERO, &spec, &fd).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let h = build_parity_check(&spec, &fd).unwrap();
        for _ in 0..100 {
            let delta = random_delta(&fd, &mut rng);
            let cw = codeword(&delta, &spec, &fd);
            assert!(vector_in_code(&cw.entries, &h, &fd));
        }
    }

    #[test]
    fn delsarte_rejects_low_weight_vectors() {
        let (spec, fd) = setup();
        let h = build_parity_check(&spec, &fd).unwrap();
        // Minimum distance is 108, so no weight-1 vector is a codeword.
        let mut v = vec![0u64; 242];
        v[17] = 1;
        assert!(!vector_in_code(&v, &h, &fd));
    }

    #[test]
    fn json_shape() {
        let (spec, fd) = setup();
        let wd = weight_distribution(&spec, &fd, WdRequest::ClosedForm, 0).unwrap();
        let js: serde_json::Value = serde_json::from_str(&wd.to_json()).unwrap();
        assert_eq!(js["spec"]["p"], 3);
        assert_eq!(js["spec"]["d2"], 41);
        assert_eq!(js["method"], "closed_form");
        assert_eq!(js["weights"][0]["w"], 0);
        assert_eq!(js["weights"][0]["freq"], "1");
        assert!(js["seed"].is_null());
    }

    #[test]
    fn csv_shape() {
        let (spec, fd) = setup();
        let wd = weight_distribution(&spec, &fd, WdRequest::ClosedForm, 0).unwrap();
        let csv = wd.to_csv();
        assert!(csv.starts_with("weight,frequency\n0,1\n108,14520\n"));
    }
}
