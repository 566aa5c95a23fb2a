//! Exhaustive fibers of the plane-forgetting map.
//!
//! Over a nonzero tuple `φ`, the planes that carry `φ` (the fiber of the map
//! that forgets the plane) are exactly the `(r+1)`-dimensional subspaces
//! containing the essential subspace `M(φ)`. With `m(φ) = r + 1 - k` there
//! are `[n-r+k choose k]_q` of them, and none at all when `m(φ) > r + 1`.
//! This module enumerates the fiber directly through the containment test
//! and checks both laws.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::apolarity::{essential_subspace, membership};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Subspace;
use crate::poly::FormTuple;
use crate::strata::FanoParameters;

use super::{enumerate_subspaces, gaussian_binomial};

/// The enumerated fiber over one tuple, with both cross-checks.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub phi: FormTuple<PrimeField>,
    /// `m(φ)` — computed by apolarity, or supplied by the caller when the
    /// characteristic forbids computing it.
    pub rank: usize,
    /// `r + 1 - rank`; negative exactly when the fiber must be empty.
    pub k: i64,
    /// Planes carrying `φ`, found by the direct containment test.
    pub members: Vec<Subspace<PrimeField>>,
    /// `[n-r+k choose k]_q`, or 0 when `k < 0`.
    pub expected_count: BigUint,
    pub count_matches: bool,
    /// Fiber set equals `{Λ : M(φ) ⊆ Λ}`; `None` when `M` was not computed.
    pub set_matches_essential: Option<bool>,
}

fn fiber_impl(
    field: &PrimeField,
    params: &FanoParameters,
    phi: &FormTuple<PrimeField>,
    cap: u64,
    rank: usize,
    essential: Option<&Subspace<PrimeField>>,
) -> Result<FiberReport> {
    if phi.nvars() != params.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: params.ambient_dim(),
            found: phi.nvars(),
        });
    }
    if phi.is_zero() {
        return Err(Error::ZeroTuple);
    }
    let mut members = Vec::new();
    let mut set_ok = essential.map(|_| true);
    for plane in enumerate_subspaces(field, params.plane_dim(), params.ambient_dim(), cap)? {
        let direct = membership(field, phi, &plane)?;
        if let (Some(m), Some(ok)) = (essential, set_ok.as_mut()) {
            if plane.contains(field, m)? != direct {
                *ok = false;
            }
        }
        if direct {
            members.push(plane);
        }
    }
    let k = params.r() as i64 + 1 - rank as i64;
    let expected_count = if k < 0 {
        BigUint::zero()
    } else {
        gaussian_binomial(
            k as usize,
            (params.n() - params.r()) as usize + k as usize,
            field.modulus(),
        )
    };
    let count_matches = BigUint::from(members.len() as u64) == expected_count;
    Ok(FiberReport {
        phi: phi.clone(),
        rank,
        k,
        members,
        expected_count,
        count_matches,
        set_matches_essential: set_ok,
    })
}

/// Enumerate the fiber over `φ`, computing `m(φ)` by apolarity (requires
/// characteristic 0 in spirit — concretely `p > max dᵢ`).
pub fn fiber_of_h(
    field: &PrimeField,
    params: &FanoParameters,
    phi: &FormTuple<PrimeField>,
    cap: u64,
) -> Result<FiberReport> {
    let profile = essential_subspace(field, phi)?;
    fiber_impl(
        field,
        params,
        phi,
        cap,
        profile.rank,
        Some(&profile.essential),
    )
}

/// Enumerate the fiber with a caller-supplied rank, for small characteristics
/// where the containment test still works but `M(φ)` is not computable.
/// Only the count law is checked.
pub fn fiber_of_h_with_rank(
    field: &PrimeField,
    params: &FanoParameters,
    phi: &FormTuple<PrimeField>,
    cap: u64,
    rank: usize,
) -> Result<FiberReport> {
    fiber_impl(field, params, phi, cap, rank, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::witness_form;
    use crate::poly::MultiDegree;
    use crate::text::parse_tuple;
    use num_traits::ToPrimitive;

    fn params(n: u32, r: u32, d: &[u32]) -> FanoParameters {
        FanoParameters::new(n, r, MultiDegree::new(d.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn full_rank_tuple_has_singleton_fiber() {
        let f5 = PrimeField::new(5).unwrap();
        let p = params(3, 1, &[2]);
        // m = 2 = r + 1: the fiber is exactly {M(φ)}.
        let phi = parse_tuple(&f5, "x0^2 + x1^2", Some(4)).unwrap();
        let rep = fiber_of_h(&f5, &p, &phi, 1 << 20).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.k, 0);
        assert_eq!(rep.members.len(), 1);
        assert!(rep.count_matches);
        assert_eq!(rep.set_matches_essential, Some(true));
        let m = essential_subspace(&f5, &phi).unwrap().essential;
        assert_eq!(rep.members[0], m);
    }

    #[test]
    fn corank_one_fiber_counts_lines_through_a_point() {
        let f5 = PrimeField::new(5).unwrap();
        let p = params(3, 1, &[2]);
        let phi = witness_form(&f5, &p, 1).unwrap(); // m = 1
        let rep = fiber_of_h(&f5, &p, &phi, 1 << 20).unwrap();
        // [n-r+1 choose 1]_q = (q^3 - 1)/(q - 1) = 31.
        assert_eq!(rep.expected_count.to_u64(), Some(31));
        assert_eq!(rep.members.len(), 31);
        assert!(rep.count_matches);
        assert_eq!(rep.set_matches_essential, Some(true));
    }

    #[test]
    fn overfull_rank_means_empty_fiber() {
        let f5 = PrimeField::new(5).unwrap();
        let p = params(3, 1, &[2]);
        let phi = parse_tuple(&f5, "x0^2 + x1^2 + x2^2", Some(4)).unwrap(); // m = 3 > r + 1
        let rep = fiber_of_h(&f5, &p, &phi, 1 << 20).unwrap();
        assert_eq!(rep.rank, 3);
        assert_eq!(rep.k, -1);
        assert!(rep.members.is_empty());
        assert!(rep.count_matches);
    }

    #[test]
    fn supplied_rank_path_skips_the_set_check() {
        // Over F_2 with d = (2) apolarity is forbidden, but the fiber is
        // still enumerable; the caller supplies the rank.
        let f2 = PrimeField::new(2).unwrap();
        let p = params(3, 1, &[2]);
        let phi = parse_tuple(&f2, "x0^2", Some(4)).unwrap();
        assert!(fiber_of_h(&f2, &p, &phi, 1 << 20).is_err());
        let rep = fiber_of_h_with_rank(&f2, &p, &phi, 1 << 20, 1).unwrap();
        assert_eq!(rep.set_matches_essential, None);
        // x0^2 = (x0)^2 lives on every plane containing x0: 7 of them.
        assert_eq!(rep.members.len(), 7);
        assert!(rep.count_matches);
    }

    #[test]
    fn zero_tuple_is_refused() {
        let f5 = PrimeField::new(5).unwrap();
        let p = params(3, 1, &[2]);
        let phi = parse_tuple(&f5, "0", Some(4)).unwrap();
        assert!(matches!(
            fiber_of_h(&f5, &p, &phi, 1 << 20),
            Err(Error::ZeroTuple)
        ));
    }
}
