//! Exhaustive verification of the containment law.
//!
//! For every nonzero tuple `φ` up to scalar and every subspace `W` of the
//! ambient space this sweep decides, independently,
//!
//!   * the direct containment test (coordinate rewrite, complement
//!     coefficients must vanish), and
//!   * the essential-subspace test `M(φ) ⊆ W`,
//!
//! and records every pair on which the two disagree. The plan precomputes
//! flat per-subspace rewrite rows and a derivative instruction list, so a
//! pair costs a handful of `u64` multiply-adds; ranges of representative
//! indices are independent work units for parallel drivers. Every so often
//! the fast path is cross-checked against the generic implementations it
//! was flattened from.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::apolarity::{essential_subspace, membership, MembershipTester};
use crate::error::{Error, Result};
use crate::field::{check_apolarity_characteristic, PrimeField};
use crate::linalg::Subspace;
use crate::poly::{monomials_of_degree, Form, FormTuple, Monomial, MultiDegree};

use super::enumerate_subspaces;

/// Hard ceiling on the number of projective representatives a single sweep
/// may enumerate.
pub const MAX_REPRESENTATIVES: u64 = 1_000_000_000;

const CROSSCHECK_STRIDE: u64 = 1 << 16;

#[derive(Clone, Copy)]
struct DerivOp {
    src: u32,
    var: u8,
    dst: u32,
    mult: u32,
}

struct BadBlock {
    rows: usize,
    flat: Vec<u64>,
}

struct WTester {
    w_rows: Vec<u64>,
    w_pivots: Vec<usize>,
    bad: Vec<BadBlock>,
}

/// A disagreement between the direct test and the containment test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub rep_index: u64,
    pub subspace_index: usize,
    pub direct: bool,
    pub containment: bool,
}

/// Counters and findings from one range of representatives.
#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub reps_checked: u64,
    pub pairs_checked: u128,
    pub member_pairs: u64,
    pub crosschecks: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepOutcome {
    pub fn merge(mut self, other: SweepOutcome) -> SweepOutcome {
        self.reps_checked += other.reps_checked;
        self.pairs_checked += other.pairs_checked;
        self.member_pairs += other.member_pairs;
        self.crosschecks += other.crosschecks;
        self.mismatches.extend(other.mismatches);
        self
    }
}

/// Precomputed plan for one `(q, n, d)` instance.
pub struct UniversalPropertySweep {
    field: PrimeField,
    p: u64,
    nvars: usize,
    degrees: Vec<u32>,
    block_orders: Vec<Vec<Monomial>>,
    block_offsets: Vec<usize>,
    total_len: usize,
    deriv_cols: usize,
    deriv_ops: Vec<DerivOp>,
    subspaces: Vec<Subspace<PrimeField>>,
    testers: Vec<WTester>,
    inv_table: Vec<u64>,
    canonical_total: u64,
}

impl UniversalPropertySweep {
    pub fn new(
        field: &PrimeField,
        n: u32,
        d: &MultiDegree,
        subspace_cap: u64,
    ) -> Result<Self> {
        let p = field.modulus();
        check_apolarity_characteristic(p, d.max_entry())?;
        if p >= (1 << 15) {
            return Err(Error::InvalidParameters(
                "exhaustive sweep supports moduli below 2^15".to_string(),
            ));
        }
        let nvars = n as usize + 1;
        let degrees: Vec<u32> = d.entries().to_vec();

        let block_orders: Vec<Vec<Monomial>> = degrees
            .iter()
            .map(|&di| monomials_of_degree(nvars, di))
            .collect();
        let mut block_offsets = Vec::with_capacity(degrees.len());
        let mut total_len = 0usize;
        for order in &block_orders {
            block_offsets.push(total_len);
            total_len += order.len();
        }

        // Derivative instruction list: coefficient `src` contributes
        // `mult * coeffs[src]` to entry `(var, dst)` of the contraction
        // matrix.
        let mut deriv_ops = Vec::new();
        let mut deriv_cols = 0usize;
        {
            let mut dst_offset = 0usize;
            for (i, &di) in degrees.iter().enumerate() {
                let lower = monomials_of_degree(nvars, di.saturating_sub(1));
                for (a, m) in block_orders[i].iter().enumerate() {
                    for (j, &e) in m.exps().iter().enumerate() {
                        if e == 0 || di == 0 {
                            continue;
                        }
                        let mut lowered = m.exps().to_vec();
                        lowered[j] -= 1;
                        let dst = lower
                            .binary_search(&Monomial::new(lowered))
                            .expect("lowered monomial");
                        deriv_ops.push(DerivOp {
                            src: (block_offsets[i] + a) as u32,
                            var: j as u8,
                            dst: (dst_offset + dst) as u32,
                            mult: (e as u64 % p) as u32,
                        });
                    }
                }
                dst_offset += lower.len();
            }
            deriv_cols = deriv_cols.max(dst_offset);
        }

        // Every subspace of the ambient space, all dimensions, in the
        // canonical enumeration order.
        let mut subspaces = Vec::new();
        for dim in 0..=nvars {
            for s in enumerate_subspaces(field, dim, nvars, subspace_cap)? {
                subspaces.push(s);
            }
        }
        let mut testers = Vec::with_capacity(subspaces.len());
        for s in &subspaces {
            let generic = MembershipTester::new(field, s, &degrees)?;
            let bad = (0..degrees.len())
                .map(|entry| {
                    let rows = generic.rows(entry);
                    let mut flat = Vec::with_capacity(rows.len() * block_orders[entry].len());
                    for row in rows {
                        flat.extend_from_slice(row);
                    }
                    BadBlock {
                        rows: rows.len(),
                        flat,
                    }
                })
                .collect();
            let mut w_rows = Vec::with_capacity(s.dim() * nvars);
            for r in 0..s.dim() {
                w_rows.extend_from_slice(s.basis().row(r));
            }
            testers.push(WTester {
                w_rows,
                w_pivots: s.pivots().to_vec(),
                bad,
            });
        }

        let canonical_total = projective_count(p, total_len)?;

        Ok(UniversalPropertySweep {
            field: *field,
            p,
            nvars,
            degrees,
            block_orders,
            block_offsets,
            total_len,
            deriv_cols,
            deriv_ops,
            subspaces,
            testers,
            inv_table: crate::field::inverse_table(field),
            canonical_total,
        })
    }

    /// Number of nonzero tuples up to scalar, `(q^N - 1)/(q - 1)`.
    pub fn total_reps(&self) -> u64 {
        self.canonical_total
    }

    pub fn num_subspaces(&self) -> usize {
        self.subspaces.len()
    }

    pub fn total_pairs(&self) -> u128 {
        self.canonical_total as u128 * self.subspaces.len() as u128
    }

    pub fn subspace(&self, index: usize) -> &Subspace<PrimeField> {
        &self.subspaces[index]
    }

    /// The coefficient vector of representative `idx` (leading coefficient
    /// normalized to 1).
    pub fn decode_rep(&self, idx: u64) -> Vec<u64> {
        let q = self.p as u128;
        let n = self.total_len;
        let mut lead = 0usize;
        let mut rem = idx as u128;
        loop {
            let size = q.pow((n - 1 - lead) as u32);
            if rem < size {
                break;
            }
            rem -= size;
            lead += 1;
        }
        let mut coeffs = vec![0u64; n];
        coeffs[lead] = 1;
        for pos in (lead + 1..n).rev() {
            coeffs[pos] = (rem % q) as u64;
            rem /= q;
        }
        coeffs
    }

    /// Rebuild the tuple for a representative, for reporting and
    /// cross-checking.
    pub fn rep_tuple(&self, coeffs: &[u64]) -> FormTuple<PrimeField> {
        let forms = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                let block =
                    &coeffs[self.block_offsets[i]..self.block_offsets[i] + self.block_orders[i].len()];
                Form::from_coeff_vec(&self.field, self.nvars, di, &self.block_orders[i], block)
                    .expect("coefficients over the block order")
            })
            .collect();
        FormTuple::new(forms).expect("nonempty tuple")
    }

    /// Check all pairs for representatives `start..end`.
    pub fn check_range(&self, start: u64, end: u64) -> SweepOutcome {
        let end = end.min(self.canonical_total);
        let mut out = SweepOutcome::default();
        if start >= end {
            return out;
        }
        let p = self.p;
        let mut coeffs = self.decode_rep(start);
        let mut lead = coeffs.iter().position(|&c| c != 0).expect("nonzero rep");

        let mut dmat = vec![0u64; self.nvars * self.deriv_cols];
        let mut dt = vec![0u64; self.deriv_cols * self.nvars];
        let mut a_basis = vec![0u64; self.nvars * self.nvars];
        let mut a_copy = vec![0u64; self.nvars * self.nvars];
        let mut m_basis = vec![0u64; self.nvars * self.nvars];
        let mut work = vec![0u64; self.nvars];
        let mut pivots = Vec::with_capacity(self.nvars);

        for idx in start..end {
            // Contraction matrix of the current representative.
            dmat.iter_mut().for_each(|v| *v = 0);
            for op in &self.deriv_ops {
                let c = coeffs[op.src as usize];
                if c != 0 {
                    let cell = &mut dmat[op.var as usize * self.deriv_cols + op.dst as usize];
                    *cell = (*cell + c * op.mult as u64) % p;
                }
            }
            // A = kernel of the transpose; M = kernel of A.
            transpose_into(&dmat, self.nvars, self.deriv_cols, &mut dt);
            let dt_rank = rref_flat(p, &self.inv_table, &mut dt, self.deriv_cols, self.nvars, &mut pivots);
            let a_dim = kernel_flat(p, &self.inv_table, &dt, self.nvars, &pivots, &mut a_basis);
            debug_assert_eq!(a_dim, self.nvars - dt_rank);
            let m_dim = {
                a_copy[..a_dim * self.nvars].copy_from_slice(&a_basis[..a_dim * self.nvars]);
                let _ = rref_flat(p, &self.inv_table, &mut a_copy[..a_dim * self.nvars], a_dim, self.nvars, &mut pivots);
                kernel_flat(p, &self.inv_table, &a_copy, self.nvars, &pivots, &mut m_basis)
            };
            debug_assert_eq!(m_dim, self.nvars - a_dim);

            for (w_index, tester) in self.testers.iter().enumerate() {
                let direct = self.direct_member(tester, &coeffs);
                let containment = self.contains_m(tester, &m_basis, m_dim, &mut work);
                if direct {
                    out.member_pairs += 1;
                }
                if direct != containment {
                    out.mismatches.push(Mismatch {
                        rep_index: idx,
                        subspace_index: w_index,
                        direct,
                        containment,
                    });
                }
            }
            out.reps_checked += 1;
            out.pairs_checked += self.testers.len() as u128;

            if idx.is_multiple_of(CROSSCHECK_STRIDE) {
                self.crosscheck(idx, &coeffs, &m_basis, m_dim, &mut out);
            }

            advance(&mut coeffs, &mut lead, p);
        }
        out
    }

    fn direct_member(&self, tester: &WTester, coeffs: &[u64]) -> bool {
        for (entry, block) in tester.bad.iter().enumerate() {
            let len = self.block_orders[entry].len();
            let base = self.block_offsets[entry];
            for r in 0..block.rows {
                let row = &block.flat[r * len..(r + 1) * len];
                let mut acc = 0u64;
                for (a, b) in row.iter().zip(&coeffs[base..base + len]) {
                    acc += a * b;
                }
                if !acc.is_multiple_of(self.p) {
                    return false;
                }
            }
        }
        true
    }

    fn contains_m(&self, tester: &WTester, m_basis: &[u64], m_dim: usize, work: &mut [u64]) -> bool {
        let n = self.nvars;
        // A subspace cannot contain a bigger one; for a full-rank tuple this
        // settles all but the full ambient space immediately.
        if tester.w_pivots.len() < m_dim {
            return false;
        }
        if tester.w_pivots.len() == n {
            return true;
        }
        for mr in 0..m_dim {
            work.copy_from_slice(&m_basis[mr * n..(mr + 1) * n]);
            for (wr, &pc) in tester.w_pivots.iter().enumerate() {
                let c = work[pc];
                if c == 0 {
                    continue;
                }
                let row = &tester.w_rows[wr * n..(wr + 1) * n];
                let neg = self.p - c;
                for (wv, rv) in work.iter_mut().zip(row) {
                    *wv = (*wv + neg * rv) % self.p;
                }
            }
            if work.iter().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    fn crosscheck(
        &self,
        idx: u64,
        coeffs: &[u64],
        m_basis: &[u64],
        m_dim: usize,
        out: &mut SweepOutcome,
    ) {
        let tuple = self.rep_tuple(coeffs);
        let profile = essential_subspace(&self.field, &tuple).expect("sweep characteristic");
        assert_eq!(profile.rank, m_dim, "fast rank vs apolarity at rep {idx}");
        for r in 0..m_dim {
            assert_eq!(
                profile.essential.basis().row(r),
                &m_basis[r * self.nvars..(r + 1) * self.nvars],
                "fast essential basis vs apolarity at rep {idx}"
            );
        }
        for (w_index, s) in self.subspaces.iter().enumerate() {
            let via_op = membership(&self.field, &tuple, s).expect("membership");
            let via_fast = self.direct_member(&self.testers[w_index], coeffs);
            assert_eq!(via_op, via_fast, "fast direct test vs rewrite at rep {idx}");
        }
        out.crosschecks += 1;
    }
}

fn projective_count(p: u64, len: usize) -> Result<u64> {
    let q = BigUint::from(p);
    let total = (q.pow(len as u32) - BigUint::one()) / (BigUint::from(p - 1));
    match total.to_u64() {
        Some(t) if t <= MAX_REPRESENTATIVES => Ok(t),
        Some(t) => Err(Error::CapExceeded {
            required: t as u128,
            cap: MAX_REPRESENTATIVES,
        }),
        None => Err(Error::CapExceeded {
            required: u128::MAX,
            cap: MAX_REPRESENTATIVES,
        }),
    }
}

fn advance(coeffs: &mut [u64], lead: &mut usize, q: u64) {
    let n = coeffs.len();
    let mut i = n;
    while i > *lead + 1 {
        i -= 1;
        coeffs[i] += 1;
        if coeffs[i] < q {
            return;
        }
        coeffs[i] = 0;
    }
    coeffs[*lead] = 0;
    *lead += 1;
    if *lead < n {
        coeffs[*lead] = 1;
    }
}

fn transpose_into(src: &[u64], rows: usize, cols: usize, dst: &mut [u64]) {
    for r in 0..rows {
        for c in 0..cols {
            dst[c * rows + r] = src[r * cols + c];
        }
    }
}

/// In-place reduced row echelon form on a flat row-major buffer.
/// Returns the rank; pivot columns are written to `pivots`.
fn rref_flat(
    p: u64,
    inv: &[u64],
    data: &mut [u64],
    rows: usize,
    cols: usize,
    pivots: &mut Vec<usize>,
) -> usize {
    pivots.clear();
    let mut pr = 0usize;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        let Some(src) = (pr..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if src != pr {
            for c in 0..cols {
                data.swap(src * cols + c, pr * cols + c);
            }
        }
        let scale = inv[data[pr * cols + col] as usize];
        for c in col..cols {
            data[pr * cols + c] = data[pr * cols + c] * scale % p;
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = data[r * cols + col];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for c in col..cols {
                data[r * cols + c] = (data[r * cols + c] + neg * data[pr * cols + c]) % p;
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pr
}

/// Canonical kernel basis of an RREF matrix, written row-major into `out`;
/// returns the kernel dimension. `out` must hold `cols * cols` entries.
fn kernel_flat(
    p: u64,
    inv: &[u64],
    rref: &[u64],
    cols: usize,
    pivots: &[usize],
    out: &mut [u64],
) -> usize {
    let kdim = cols - pivots.len();
    out[..cols * cols].iter_mut().for_each(|v| *v = 0);
    let mut row = 0usize;
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let base = row * cols;
        out[base + free] = 1;
        for (pr, &pc) in pivots.iter().enumerate() {
            let v = rref[pr * cols + free];
            if v != 0 {
                out[base + pc] = p - v;
            }
        }
        row += 1;
    }
    debug_assert_eq!(row, kdim);
    let mut scratch_pivots = Vec::new();
    let _ = rref_flat(p, inv, &mut out[..kdim * cols], kdim, cols, &mut scratch_pivots);
    kdim
}
