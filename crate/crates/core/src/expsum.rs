//! Exact evaluation of the exponential sum S_{f_Delta} and independent
//! magnitude classification through the rank of the associated quadratic
//! form.
//!
//! No complex arithmetic appears anywhere: f_Delta scales linearly under
//! F_p, so its fibers over the nonzero values of F_p all have the same size
//! and the character sum collapses to the integer (p n0 - q) / (p - 1),
//! where n0 counts the zeros of f_Delta. The rank route goes through the
//! linearized operator H_Delta, whose kernel matches the radical of the
//! quadratic form; Gaussian elimination over F_p gives the rank in O(m^3).

use crate::arith;
use crate::code::{CodeSpec, DeltaTriple};
use crate::field::{FieldDescriptor, FieldElement};
use crate::{Error, Result};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// f_Delta(x) = Tr(d0 x + d1 x^d1 + d2 x^d2), an element of F_p.
pub fn f_delta(delta: &DeltaTriple, x: FieldElement, spec: &CodeSpec, fd: &FieldDescriptor) -> u64 {
    let t = fd.trace(fd.mul(delta.d0, x))
        + fd.trace(fd.mul(delta.d1, fd.pow(x, spec.d1_mod())))
        + fd.trace(fd.mul(delta.d2, fd.pow(x, spec.d2_mod())));
    t % spec.p
}

/// The m x m matrix over F_p of the linearized operator
/// H_Delta(x) = d2^(p^4k) x^(p^8k) + d1^(p^4k) x^(p^6k) + d1^(p^2k) x^(p^2k)
///            + 2 d0^(p^4k) x^(p^4k) + d2 x
/// in the polynomial basis. Its kernel has the same dimension as the radical
/// of the quadratic form attached to Delta.
#[derive(Clone, Debug)]
pub struct LinearizedMap {
    m: usize,
    p: u64,
    /// Row-major m x m entries in [0, p).
    mat: Vec<u64>,
}

impl LinearizedMap {
    pub fn entries(&self) -> &[u64] {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// Apply the represented map to a field element.
    pub fn apply(&self, x: FieldElement, fd: &FieldDescriptor) -> FieldElement {
        let xd = fd.coeffs(x);
        let mut out = vec![0u64; self.m];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &c) in xd.iter().enumerate() {
                acc += self.mat[r * self.m + j] * c;
            }
            *slot = acc % self.p;
        }
        fd.element_from_coeffs(&out).expect("length m")
    }

    pub fn rank(&self) -> u32 {
        let mut scratch = self.mat.clone();
        gauss_rank(&mut scratch, self.m, self.p, |v| {
            arith::invmod_prime(v, self.p)
        })
    }

    pub fn nullity(&self) -> u32 {
        self.m as u32 - self.rank()
    }
}

/// Row-echelon rank of a row-major m x m matrix over F_p. `inv` supplies
/// inverses of nonzero residues.
fn gauss_rank(mat: &mut [u64], m: usize, p: u64, inv: impl Fn(u64) -> u64) -> u32 {
    let mut rank = 0usize;
    for col in 0..m {
        let Some(pivot) = (rank..m).find(|&r| mat[r * m + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..m {
                mat.swap(pivot * m + c, rank * m + c);
            }
        }
        let pinv = inv(mat[rank * m + col]);
        for r in rank + 1..m {
            let f = mat[r * m + col];
            if f == 0 {
                continue;
            }
            let f = arith::mulmod(f, pinv, p);
            for c in col..m {
                let sub = arith::mulmod(f, mat[rank * m + c], p);
                mat[r * m + c] = (mat[r * m + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank as u32
}

/// Build the matrix of H_Delta column by column from the basis images.
pub fn build_linearized(
    delta: &DeltaTriple,
    spec: &CodeSpec,
    fd: &FieldDescriptor,
) -> LinearizedMap {
    let m = fd.m() as usize;
    let p = fd.p();
    let k = spec.k as i64;
    let two = fd.embed(2);
    let c_outer = fd.frobenius(delta.d2, 4 * k);
    let c_mid_hi = fd.frobenius(delta.d1, 4 * k);
    let c_mid_lo = fd.frobenius(delta.d1, 2 * k);
    let c_diag = fd.mul(two, fd.frobenius(delta.d0, 4 * k));
    let c_id = delta.d2;
    let mut mat = vec![0u64; m * m];
    for j in 0..m {
        let mut basis = vec![0u64; m];
        basis[j] = 1;
        let e = fd.element_from_coeffs(&basis).expect("length m");
        let img = [
            fd.mul(c_outer, fd.frobenius(e, 8 * k)),
            fd.mul(c_mid_hi, fd.frobenius(e, 6 * k)),
            fd.mul(c_mid_lo, fd.frobenius(e, 2 * k)),
            fd.mul(c_diag, fd.frobenius(e, 4 * k)),
            fd.mul(c_id, e),
        ]
        .into_iter()
        .fold(FieldElement::ZERO, |acc, t| fd.add(acc, t));
        for (r, c) in fd.coeffs(img).into_iter().enumerate() {
            mat[r * m + j] = c;
        }
    }
    LinearizedMap { m, p, mat }
}

/// Rank of the quadratic form attached to Delta. The zero triple yields the
/// zero form; its rank is reported as 0 with the flag set, and it is excluded
/// from the rank-range guarantee.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RankReport {
    pub rank: u32,
    pub zero_delta: bool,
}

pub fn rank_of_form(delta: &DeltaTriple, spec: &CodeSpec, fd: &FieldDescriptor) -> RankReport {
    if delta.is_zero() {
        return RankReport {
            rank: 0,
            zero_delta: true,
        };
    }
    RankReport {
        rank: build_linearized(delta, spec, fd).rank(),
        zero_delta: false,
    }
}

/// Exact per-triple report: the sum value, the zero count of f_Delta, and
/// the rank of the quadratic form, cross-checked against each other.
#[derive(Clone, Copy, Debug)]
pub struct SValueReport {
    pub delta: DeltaTriple,
    pub rank: u32,
    pub s: i64,
    pub n0: u64,
}

/// Evaluate S_{f_Delta} exactly by fiber counting, and the rank by
/// elimination; any violation of the relations between them is an internal
/// error, not a data condition.
pub fn s_exact(delta: &DeltaTriple, spec: &CodeSpec, fd: &FieldDescriptor) -> Result<SValueReport> {
    let mut n0 = 0u64;
    for x in fd.elements() {
        if f_delta(delta, x, spec, fd) == 0 {
            n0 += 1;
        }
    }
    let s = s_from_n0(spec.p, spec.q, n0)?;
    let rank = rank_of_form(delta, spec, fd).rank;
    check_relations(spec, s, rank, n0)?;
    Ok(SValueReport {
        delta: *delta,
        rank,
        s,
        n0,
    })
}

fn s_from_n0(p: u64, q: u64, n0: u64) -> Result<i64> {
    let num = p as i128 * n0 as i128 - q as i128;
    if num % (p as i128 - 1) != 0 {
        return Err(Error::Internal(format!(
            "p*n0 - q = {num} is not divisible by p-1"
        )));
    }
    i64::try_from(num / (p as i128 - 1))
        .map_err(|_| Error::Internal("sum value overflows i64".into()))
}

fn check_relations(spec: &CodeSpec, s: i64, rank: u32, n0: u64) -> Result<()> {
    let recompute = spec.p as i128 * n0 as i128 - spec.q as i128;
    if recompute != (s as i128) * (spec.p as i128 - 1) {
        return Err(Error::Internal("n0 and s disagree".into()));
    }
    if rank % 2 == 1 {
        if s != 0 {
            return Err(Error::Internal(format!(
                "odd rank {rank} with nonzero sum {s}"
            )));
        }
    } else {
        let expected = (spec.p as i128).pow(spec.m - rank / 2);
        if (s as i128).abs() != expected {
            return Err(Error::Internal(format!(
                "even rank {rank} with |s| = {} != p^(m - r/2) = {expected}",
                (s as i128).abs()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Bulk engine
// ---------------------------------------------------------------------------

/// Precomputed state for enumerating S over many triples. Requires the
/// field's log/antilog tables.
///
/// Triples are walked in log form: a component is either absent (the zero
/// element) or an exponent a with delta = pi^a. For x = pi^i,
/// Tr(delta x^d) = T[(a + i*d) mod (q-1)] where T is the trace-of-powers row;
/// the row is stored doubled so no reduction is needed in the inner loop.
pub struct SumEngine<'f> {
    fd: &'f FieldDescriptor,
    spec: CodeSpec,
    p: u64,
    m: usize,
    q: u64,
    n: usize,
    /// Doubled trace row: tt[j] = Tr(pi^(j mod n)), length 2n.
    tt: Vec<u8>,
    /// e1[i] = (i * d1) mod n, e2[i] = (i * d2) mod n.
    e1: Vec<u32>,
    e2: Vec<u32>,
    /// Value of pi^j (copy of the antilog table for contiguous access).
    expv: Vec<u32>,
    /// Base-p digits of every field value, value-major, m bytes per value.
    digits: Vec<u8>,
    /// Basis-image logs for the five terms of H_Delta: term t maps basis
    /// exponent j to (j * p^ft) mod n for ft in {8k, 6k, 2k, 4k, 0}.
    fl: [Vec<u32>; 5],
    /// p^(4k) mod n and p^(2k) mod n for the coefficient Frobenius twists.
    ft4: u64,
    ft2: u64,
    log_two: u64,
    /// Inverses mod p for elimination pivots.
    inv_p: Vec<u64>,
}

impl<'f> SumEngine<'f> {
    pub fn new(spec: &CodeSpec, fd: &'f FieldDescriptor) -> Result<Self> {
        if spec.q != fd.q() || spec.p != fd.p() {
            return Err(Error::InvalidParameter(
                "field does not match the code parameters".into(),
            ));
        }
        if !fd.has_tables() {
            return Err(Error::InvalidParameter(
                "bulk enumeration requires log/antilog tables (q too large)".into(),
            ));
        }
        let p = fd.p();
        if p > u8::MAX as u64 {
            return Err(Error::InvalidParameter(
                "bulk enumeration supports p < 256".into(),
            ));
        }
        let q = fd.q();
        let n = (q - 1) as usize;
        let m = fd.m() as usize;

        let mut tt = vec![0u8; 2 * n];
        for j in 0..n {
            tt[j] = fd.trace(fd.exp(j as u64)) as u8;
        }
        tt.copy_within(0..n, n);

        let mut e1 = vec![0u32; n];
        let mut e2 = vec![0u32; n];
        for i in 0..n {
            e1[i] = ((i as u64 * spec.d1_mod()) % n as u64) as u32;
            e2[i] = ((i as u64 * spec.d2_mod()) % n as u64) as u32;
        }

        let mut expv = vec![0u32; n];
        for (j, slot) in expv.iter_mut().enumerate() {
            *slot = fd.exp(j as u64).value() as u32;
        }

        let mut digits = vec![0u8; q as usize * m];
        for v in 0..q {
            let mut x = v;
            for t in 0..m {
                digits[v as usize * m + t] = (x % p) as u8;
                x /= p;
            }
        }

        let nm = n as u64;
        let k = spec.k;
        let mm = fd.m();
        let frob_mult = |jumps: u32| arith::powmod(p, (jumps % mm) as u64, nm);
        let basis_logs = |mult: u64| -> Vec<u32> {
            (0..m)
                .map(|j| ((j as u64 * mult) % nm) as u32)
                .collect()
        };
        let fl = [
            basis_logs(frob_mult(8 * k)),
            basis_logs(frob_mult(6 * k)),
            basis_logs(frob_mult(2 * k)),
            basis_logs(frob_mult(4 * k)),
            basis_logs(1),
        ];
        let ft4 = frob_mult(4 * k);
        let ft2 = frob_mult(2 * k);
        let log_two = fd
            .log(fd.embed(2))
            .ok_or_else(|| Error::Internal("2 is zero in F_p".into()))?;
        let inv_p = (0..p)
            .map(|v| if v == 0 { 0 } else { arith::invmod_prime(v, p) })
            .collect();

        Ok(SumEngine {
            fd,
            spec: *spec,
            p,
            m,
            q,
            n,
            tt,
            e1,
            e2,
            expv,
            digits,
            fl,
            ft4,
            ft2,
            log_two,
            inv_p,
        })
    }

    /// Count the zeros of f_Delta for a triple given in log form.
    fn n0_for_logs(&self, a: [Option<u64>; 3], needed: &mut [u8]) -> u64 {
        self.fill_needed(a[1], a[2], needed);
        1 + match a[0] {
            None => count_value(needed, 0),
            Some(a0) => count_matches(&self.tt[a0 as usize..a0 as usize + self.n], needed),
        }
    }

    /// needed[i] = the trace value the d0 term must contribute at x = pi^i
    /// for f_Delta(x) to vanish.
    fn fill_needed(&self, a1: Option<u64>, a2: Option<u64>, needed: &mut [u8]) {
        let p = self.p as u16;
        let tt = &self.tt;
        match (a1, a2) {
            (Some(a1), Some(a2)) => {
                let (a1, a2) = (a1 as usize, a2 as usize);
                for (i, slot) in needed.iter_mut().enumerate() {
                    let r = tt[a1 + self.e1[i] as usize] as u16
                        + tt[a2 + self.e2[i] as usize] as u16;
                    *slot = ((2 * p - r) % p) as u8;
                }
            }
            (Some(a1), None) => {
                let a1 = a1 as usize;
                for (i, slot) in needed.iter_mut().enumerate() {
                    let r = tt[a1 + self.e1[i] as usize] as u16;
                    *slot = ((p - r) % p) as u8;
                }
            }
            (None, Some(a2)) => {
                let a2 = a2 as usize;
                for (i, slot) in needed.iter_mut().enumerate() {
                    let r = tt[a2 + self.e2[i] as usize] as u16;
                    *slot = ((p - r) % p) as u8;
                }
            }
            (None, None) => needed.fill(0),
        }
    }

    /// Rank of the quadratic form for a triple in log form, via the matrix
    /// of H_Delta. `mat` is m*m scratch.
    fn rank_for_logs(&self, a: [Option<u64>; 3], mat: &mut [u64]) -> u32 {
        mat.fill(0);
        let nm = self.n as u64;
        let m = self.m;
        let terms = [
            a[2].map(|v| ((v * self.ft4) % nm, 0usize)),
            a[1].map(|v| ((v * self.ft4) % nm, 1usize)),
            a[1].map(|v| ((v * self.ft2) % nm, 2usize)),
            a[0].map(|v| ((v * self.ft4 + self.log_two) % nm, 3usize)),
            a[2].map(|v| (v, 4usize)),
        ];
        for (clog, t) in terms.into_iter().flatten() {
            let fl = &self.fl[t];
            for j in 0..m {
                let mut idx = clog + fl[j] as u64;
                if idx >= nm {
                    idx -= nm;
                }
                let value = self.expv[idx as usize] as usize;
                let dig = &self.digits[value * m..value * m + m];
                for r in 0..m {
                    mat[r * m + j] += dig[r] as u64;
                }
            }
        }
        for entry in mat.iter_mut() {
            *entry %= self.p;
        }
        gauss_rank(mat, m, self.p, |v| self.inv_p[v as usize])
    }

    fn logs_of(&self, delta: &DeltaTriple) -> [Option<u64>; 3] {
        [
            self.fd.log(delta.d0),
            self.fd.log(delta.d1),
            self.fd.log(delta.d2),
        ]
    }

    /// S for one triple by rank classification first, resolving the sign by
    /// fiber counting only when the rank is even.
    fn s_rank_then_sign(
        &self,
        a: [Option<u64>; 3],
        needed: &mut [u8],
        mat: &mut [u64],
    ) -> Result<(i64, u32)> {
        let rank = self.rank_for_logs(a, mat);
        if rank % 2 == 1 {
            return Ok((0, rank));
        }
        let n0 = self.n0_for_logs(a, needed);
        let s = s_from_n0(self.p, self.q, n0)?;
        check_relations(&self.spec, s, rank, n0)?;
        Ok((s, rank))
    }
}

fn count_matches(row: &[u8], needed: &[u8]) -> u64 {
    let mut acc = 0u32;
    for (a, b) in row.iter().zip(needed) {
        acc += (a == b) as u32;
    }
    acc as u64
}

fn count_value(row: &[u8], v: u8) -> u64 {
    let mut acc = 0u32;
    for &a in row {
        acc += (a == v) as u32;
    }
    acc as u64
}

/// What a full enumeration should compute per triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepMethod {
    /// Fiber-count S for every triple (fastest).
    FiberCount,
    /// Rank first; fiber-count only even-rank triples to resolve the sign.
    RankThenSign,
    /// Both routes for every triple, cross-checking the rank/sum relations.
    Both,
}

/// Result of a full enumeration over all q^3 triples.
#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    /// S value -> number of triples.
    pub svalue_counts: BTreeMap<i64, u64>,
    /// Rank -> number of nonzero triples (empty for `FiberCount`).
    pub rank_counts: BTreeMap<u32, u64>,
}

struct SliceAcc {
    svals: Vec<(i64, u64)>,
    ranks: Vec<u64>,
}

impl SliceAcc {
    fn new(m: usize) -> Self {
        SliceAcc {
            svals: Vec::with_capacity(16),
            ranks: vec![0; m + 1],
        }
    }

    fn record_s(&mut self, s: i64) {
        match self.svals.iter_mut().find(|(v, _)| *v == s) {
            Some((_, c)) => *c += 1,
            None => self.svals.push((s, 1)),
        }
    }

    fn merge(mut self, other: SliceAcc) -> SliceAcc {
        for (s, c) in other.svals {
            match self.svals.iter_mut().find(|(v, _)| *v == s) {
                Some((_, cur)) => *cur += c,
                None => self.svals.push((s, c)),
            }
        }
        for (r, c) in other.ranks.iter().enumerate() {
            self.ranks[r] += c;
        }
        self
    }
}

/// Enumerate all q^3 triples. Refused when q^3 exceeds `budget`. The triple
/// space is partitioned along the d2 axis; per-worker histograms merge by
/// addition, so the outcome is identical for any worker count.
pub fn full_sweep(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    budget: u64,
    method: SweepMethod,
) -> Result<SweepOutcome> {
    let required = (spec.q as u128).pow(3);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let engine = SumEngine::new(spec, fd)?;
    let n = engine.n;
    let m = engine.m;
    let axis: Vec<Option<u64>> = std::iter::once(None)
        .chain((0..n as u64).map(Some))
        .collect();

    let acc = axis
        .par_iter()
        .try_fold(
            || (SliceAcc::new(m), vec![0u8; n], vec![0u64; m * m]),
            |(mut acc, mut needed, mut mat), &a2| -> Result<_> {
                for &a1 in &axis {
                    engine.fill_needed(a1, a2, &mut needed);
                    for &a0 in &axis {
                        let a = [a0, a1, a2];
                        let nonzero = a.iter().any(Option::is_some);
                        match method {
                            SweepMethod::FiberCount => {
                                let n0 = 1 + match a0 {
                                    None => count_value(&needed, 0),
                                    Some(a0) => count_matches(
                                        &engine.tt[a0 as usize..a0 as usize + n],
                                        &needed,
                                    ),
                                };
                                acc.record_s(s_from_n0(engine.p, engine.q, n0)?);
                            }
                            SweepMethod::RankThenSign => {
                                let rank = engine.rank_for_logs(a, &mut mat);
                                let s = if rank % 2 == 1 {
                                    0
                                } else {
                                    let n0 = 1 + match a0 {
                                        None => count_value(&needed, 0),
                                        Some(a0) => count_matches(
                                            &engine.tt[a0 as usize..a0 as usize + n],
                                            &needed,
                                        ),
                                    };
                                    s_from_n0(engine.p, engine.q, n0)?
                                };
                                acc.record_s(s);
                                if nonzero {
                                    acc.ranks[rank as usize] += 1;
                                }
                            }
                            SweepMethod::Both => {
                                let n0 = 1 + match a0 {
                                    None => count_value(&needed, 0),
                                    Some(a0) => count_matches(
                                        &engine.tt[a0 as usize..a0 as usize + n],
                                        &needed,
                                    ),
                                };
                                let s = s_from_n0(engine.p, engine.q, n0)?;
                                let rank = engine.rank_for_logs(a, &mut mat);
                                check_relations(&engine.spec, s, rank, n0)?;
                                acc.record_s(s);
                                if nonzero {
                                    acc.ranks[rank as usize] += 1;
                                }
                            }
                        }
                    }
                }
                Ok((acc, needed, mat))
            },
        )
        .map(|r| r.map(|(acc, _, _)| acc))
        .try_reduce(|| SliceAcc::new(m), |a, b| Ok(a.merge(b)))?;

    let mut outcome = SweepOutcome::default();
    for (s, c) in acc.svals {
        outcome.svalue_counts.insert(s, c);
    }
    for (r, &c) in acc.ranks.iter().enumerate() {
        if c > 0 {
            outcome.rank_counts.insert(r as u32, c);
        }
    }
    Ok(outcome)
}

/// S-value counts over all triples by pure fiber counting.
pub fn full_svalue_counts(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    budget: u64,
) -> Result<BTreeMap<i64, u64>> {
    Ok(full_sweep(spec, fd, budget, SweepMethod::FiberCount)?.svalue_counts)
}

/// S-value counts by the rank-first route; must agree with
/// [`full_svalue_counts`] bit for bit.
pub fn full_svalue_counts_via_rank(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    budget: u64,
) -> Result<BTreeMap<i64, u64>> {
    Ok(full_sweep(spec, fd, budget, SweepMethod::RankThenSign)?.svalue_counts)
}

/// Seeded sampling of triples; S per sample via rank-then-sign. Counts merge
/// by addition, so results are independent of the worker count.
pub fn sampled_svalue_counts(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    samples: u64,
    seed: u64,
) -> Result<BTreeMap<i64, u64>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("sample size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<[u64; 3]> = (0..samples)
        .map(|_| {
            [
                rng.gen_range(0..spec.q),
                rng.gen_range(0..spec.q),
                rng.gen_range(0..spec.q),
            ]
        })
        .collect();

    if fd.has_tables() {
        let engine = SumEngine::new(spec, fd)?;
        let n = engine.n;
        let m = engine.m;
        let counts = triples
            .par_chunks(4096)
            .try_fold(
                || (BTreeMap::<i64, u64>::new(), vec![0u8; n], vec![0u64; m * m]),
                |(mut map, mut needed, mut mat), chunk| -> Result<_> {
                    for t in chunk {
                        let delta = DeltaTriple::new(
                            FieldElement(t[0]),
                            FieldElement(t[1]),
                            FieldElement(t[2]),
                        );
                        let a = engine.logs_of(&delta);
                        let (s, _) = engine.s_rank_then_sign(a, &mut needed, &mut mat)?;
                        *map.entry(s).or_insert(0) += 1;
                    }
                    Ok((map, needed, mat))
                },
            )
            .map(|r| r.map(|(map, _, _)| map))
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (s, c) in b {
                    *a.entry(s).or_insert(0) += c;
                }
                Ok(a)
            })?;
        Ok(counts)
    } else {
        let mut map = BTreeMap::new();
        for t in &triples {
            let delta =
                DeltaTriple::new(FieldElement(t[0]), FieldElement(t[1]), FieldElement(t[2]));
            let report = s_exact(&delta, spec, fd)?;
            *map.entry(report.s).or_insert(0) += 1;
        }
        Ok(map)
    }
}

/// How to assemble a value distribution.
#[derive(Clone, Copy, Debug)]
pub enum VdMode {
    Full,
    Sampled { n: u64, seed: u64 },
}

/// The distribution of S over triples. Serializes as
/// `{"values":[{"s":...,"freq":"..."},...]}` with decimal-string counts.
#[derive(Clone, Debug, Serialize)]
pub struct ValueDistribution {
    #[serde(serialize_with = "crate::ser::svalues_as_rows")]
    pub values: BTreeMap<i64, BigUint>,
    #[serde(skip)]
    pub spec: CodeSpec,
    #[serde(skip)]
    pub seed: Option<u64>,
    #[serde(skip)]
    pub samples: Option<u64>,
}

impl ValueDistribution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("value distribution serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,frequency\n");
        for (s, freq) in &self.values {
            out.push_str(&format!("{s},{freq}\n"));
        }
        out
    }
}

pub fn value_distribution(
    spec: &CodeSpec,
    fd: &FieldDescriptor,
    mode: VdMode,
    budget: u64,
) -> Result<ValueDistribution> {
    match mode {
        VdMode::Full => {
            let counts = full_svalue_counts(spec, fd, budget)?;
            Ok(ValueDistribution {
                values: counts
                    .into_iter()
                    .map(|(s, c)| (s, BigUint::from(c)))
                    .collect(),
                spec: *spec,
                seed: None,
                samples: None,
            })
        }
        VdMode::Sampled { n, seed } => {
            let counts = sampled_svalue_counts(spec, fd, n, seed)?;
            Ok(ValueDistribution {
                values: counts
                    .into_iter()
                    .map(|(s, c)| (s, BigUint::from(c)))
                    .collect(),
                spec: *spec,
                seed: Some(seed),
                samples: Some(n),
            })
        }
    }
}
