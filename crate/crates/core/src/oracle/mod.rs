//! Brute-force ground truth over small prime fields.
//!
//! Everything here is exhaustive and exact: subspaces stream out in
//! canonical form grouped by pivot pattern, counts come from Gaussian
//! binomials computed two independent ways, vanishing is decided
//! coefficient-wise after substitution (never pointwise, which would lie
//! over small fields), and the containment laws of the apolarity module are
//! checked pair by pair. The enumerations are partitioned into independent
//! work units so a driver may fan them out across threads and merge the
//! results in a deterministic order.

mod enumerate;
mod fano;
mod fiber;
mod universal;

pub use enumerate::{
    enumerate_subspaces, pattern_partitions, pivot_patterns, subspace_count, PatternSubspaces,
};
pub use fano::{fano_points, projective_points, vanishes_pointwise};
pub use fiber::{fiber_of_h, fiber_of_h_with_rank, FiberReport};
pub use universal::{Mismatch, SweepOutcome, UniversalPropertySweep};

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::apolarity::essential_subspace;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::strata::FanoParameters;
use crate::FormTuple;

/// A prime-power field descriptor `q = p^e`. Only `e = 1` is implemented;
/// the exponent is kept so that the interface does not change if extension
/// fields are added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePowerField {
    p: u64,
    e: u32,
}

impl PrimePowerField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if e != 1 {
            return Err(Error::UnsupportedExtension { p, e });
        }
        PrimeField::new(p)?;
        Ok(PrimePowerField { p, e })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }
}

/// Gaussian binomial `[m choose k]_q`: the number of `k`-dimensional
/// subspaces of `F_q^m`, via the exact product formula
/// `∏_{i=0}^{k-1} (q^{m-i} - 1) / (q^{k-i} - 1)`.
pub fn gaussian_binomial(k: usize, m: usize, q: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((m - i) as u32) - BigUint::one();
        den *= q.pow((k - i) as u32) - BigUint::one();
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot
}

/// Coefficients (ascending degree) of `[m choose k]_q` as a polynomial in
/// `q`, from the `q`-Pascal recurrence
/// `[m k]_q = [m-1 k-1]_q + q^k · [m-1 k]_q`.
///
/// The polynomial has degree `k(m-k)`; evaluating it agrees with
/// [`gaussian_binomial`], giving two independent routes to every count.
pub fn gaussian_binomial_poly(k: usize, m: usize) -> Vec<BigUint> {
    if k > m {
        return Vec::new();
    }
    // row[j] holds the coefficient list for [mm choose j]_q.
    let mut row: Vec<Vec<BigUint>> = alloc::vec![alloc::vec![BigUint::one()]];
    for mm in 1..=m {
        let top = k.min(mm);
        let mut next: Vec<Vec<BigUint>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            if j == 0 || j == mm {
                next.push(alloc::vec![BigUint::one()]);
                continue;
            }
            let left = &row[j - 1];
            let right = &row[j];
            let mut coeffs = alloc::vec![BigUint::zero(); left.len().max(right.len() + j)];
            for (i, c) in left.iter().enumerate() {
                coeffs[i] += c;
            }
            for (i, c) in right.iter().enumerate() {
                coeffs[i + j] += c;
            }
            next.push(coeffs);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Evaluate a coefficient list at `q`.
pub fn eval_poly_at(coeffs: &[BigUint], q: u64) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &q + c;
    }
    acc
}

/// Is `φ` in stratum `k`, i.e. `m(φ) ≤ r + 1 - k`?
///
/// The affine side condition (a chosen pairing value being nonzero) is
/// deliberately not folded in; see [`crate::apolarity::pairing_nonzero`].
pub fn stratum_membership<F: Field>(
    field: &F,
    phi: &FormTuple<F>,
    k: u32,
    params: &FanoParameters,
) -> Result<bool> {
    if k > params.r() {
        return Err(Error::IndexOutOfRange {
            k: k as i64,
            r: params.r(),
        });
    }
    let profile = essential_subspace(field, phi)?;
    Ok(profile.rank as i64 <= params.r() as i64 + 1 - k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_field_front_door() {
        assert!(PrimePowerField::new(7, 1).is_ok());
        assert!(matches!(
            PrimePowerField::new(7, 2),
            Err(Error::UnsupportedExtension { p: 7, e: 2 })
        ));
        assert!(PrimePowerField::prime(6).is_err());
        assert_eq!(PrimePowerField::prime(5).unwrap().q(), 5);
    }

    #[test]
    fn gaussian_binomial_reference_values() {
        assert_eq!(gaussian_binomial(0, 4, 3), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(1, 2, 7), BigUint::from(8u32)); // q + 1
        assert_eq!(gaussian_binomial(2, 4, 7), BigUint::from(2850u32));
        assert_eq!(gaussian_binomial(3, 2, 5), BigUint::zero());
        // Complementary symmetry.
        assert_eq!(gaussian_binomial(1, 3, 3), gaussian_binomial(2, 3, 3));
    }

    #[test]
    fn poly_route_agrees_and_has_grassmannian_degree() {
        for m in 0..=6usize {
            for k in 0..=m {
                let coeffs = gaussian_binomial_poly(k, m);
                assert_eq!(coeffs.len(), k * (m - k) + 1, "degree k(m-k)");
                for q in [2u64, 3, 5, 7] {
                    assert_eq!(eval_poly_at(&coeffs, q), gaussian_binomial(k, m, q));
                }
            }
        }
    }

    #[test]
    fn stratum_membership_bounds_k() {
        use crate::poly::MultiDegree;
        use crate::text::parse_tuple;
        let q = crate::field::Rationals;
        let params =
            FanoParameters::new(3, 1, MultiDegree::single(3).unwrap()).unwrap();
        let phi = parse_tuple(&q, "x0^3", Some(4)).unwrap();
        // m = 1 = r + 1 - r: in stratum r, hence in every smaller stratum.
        assert!(stratum_membership(&q, &phi, 1, &params).unwrap());
        assert!(stratum_membership(&q, &phi, 0, &params).unwrap());
        assert!(stratum_membership(&q, &phi, 2, &params).is_err());
        let fat = parse_tuple(&q, "x0^3 + x1^3 + x2^3", Some(4)).unwrap();
        assert!(!stratum_membership(&q, &fat, 1, &params).unwrap());
    }
}
