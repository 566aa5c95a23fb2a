//! Exhaustive plane counting on a zero locus.
//!
//! A projective `r`-plane corresponds to an `(r+1)`-dimensional subspace
//! `Λ ⊆ F_q^{n+1}`. The plane lies on the common zero locus of the tuple
//! `f` exactly when every pullback of an entry of `f` along a linear
//! parametrization of `Λ` is the zero *form* — coefficient-wise, not
//! pointwise, since over a small field a nonzero form can vanish at every
//! rational point.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Subspace;
use crate::poly::FormTuple;
use crate::strata::FanoParameters;

use super::enumerate_subspaces;

fn validate_tuple(params: &FanoParameters, f: &FormTuple<PrimeField>) -> Result<()> {
    if f.nvars() != params.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: params.ambient_dim(),
            found: f.nvars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroTuple);
    }
    if f.degrees().as_slice() != params.multidegree().entries() {
        return Err(Error::InvalidDegree(alloc::format!(
            "tuple degrees {:?} do not match declared multidegree {:?}",
            f.degrees(),
            params.multidegree().entries()
        )));
    }
    Ok(())
}

/// All `(r+1)`-dimensional subspaces on which every entry of `f` restricts
/// to the zero form, in canonical enumeration order.
pub fn fano_points(
    field: &PrimeField,
    params: &FanoParameters,
    f: &FormTuple<PrimeField>,
    cap: u64,
) -> Result<Vec<Subspace<PrimeField>>> {
    validate_tuple(params, f)?;
    let mut members = Vec::new();
    for plane in enumerate_subspaces(field, params.plane_dim(), params.ambient_dim(), cap)? {
        let pullback = f.substitute_linear(field, plane.basis())?;
        if pullback.is_zero() {
            members.push(plane);
        }
    }
    Ok(members)
}

/// Canonical representatives of the projective points of a subspace: every
/// nonzero vector up to scalar, i.e. one vector per line.
pub fn projective_points(field: &PrimeField, space: &Subspace<PrimeField>) -> Vec<Vec<u64>> {
    let t = space.dim();
    let q = field.modulus();
    let mut points = Vec::new();
    // Coefficient vectors with first nonzero coordinate 1.
    for lead in 0..t {
        let tail = t - lead - 1;
        let mut digits = vec![0u64; tail];
        loop {
            let mut coeffs = vec![0u64; t];
            coeffs[lead] = 1;
            coeffs[lead + 1..].copy_from_slice(&digits);
            let mut v = vec![0u64; space.ambient()];
            for (row, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, vj) in v.iter_mut().enumerate() {
                    *vj = field.add(vj, &field.mul(&c, space.basis().at(row, j)));
                }
            }
            points.push(v);
            let mut i = digits.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    points
}

/// Pointwise vanishing of every entry of `f` on every rational point of the
/// subspace. Equivalent to coefficient-wise vanishing only when
/// `q > max dᵢ`; exposed for cross-checks under exactly that hypothesis.
pub fn vanishes_pointwise(
    field: &PrimeField,
    f: &FormTuple<PrimeField>,
    space: &Subspace<PrimeField>,
) -> Result<bool> {
    for point in projective_points(field, space) {
        for form in f.forms() {
            if !field.is_zero(&form.evaluate(field, &point)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiDegree;
    use crate::text::parse_tuple;

    fn params(n: u32, r: u32, d: &[u32]) -> FanoParameters {
        FanoParameters::new(n, r, MultiDegree::new(d.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn lines_in_a_hyperplane_of_p3() {
        // f = x3 cuts out a plane; lines in it number q^2 + q + 1.
        let f3 = PrimeField::new(3).unwrap();
        let f = parse_tuple(&f3, "x3", Some(4)).unwrap();
        let members = fano_points(&f3, &params(3, 1, &[1]), &f, 1 << 20).unwrap();
        assert_eq!(members.len(), 13);
    }

    #[test]
    fn rulings_of_a_smooth_quadric() {
        // x0*x3 - x1*x2 carries two rulings of q + 1 lines each.
        let f3 = PrimeField::new(3).unwrap();
        let f = parse_tuple(&f3, "x0*x3 - x1*x2", Some(4)).unwrap();
        let members = fano_points(&f3, &params(3, 1, &[2]), &f, 1 << 20).unwrap();
        assert_eq!(members.len(), 8);
    }

    #[test]
    fn zero_tuple_is_refused() {
        let f3 = PrimeField::new(3).unwrap();
        let f = parse_tuple(&f3, "0", Some(4)).unwrap();
        assert!(matches!(
            fano_points(&f3, &params(3, 1, &[1]), &f, 1 << 20),
            Err(Error::ZeroTuple)
        ));
    }

    #[test]
    fn coefficientwise_vanishing_is_strict_over_small_fields() {
        // x0^2*x1 + x0*x1^2 = x0*x1*(x0+x1) vanishes at every F_2-point of
        // the plane span(x0, x1) but is not the zero form on it.
        let f2 = PrimeField::new(2).unwrap();
        let f = parse_tuple(&f2, "x0^2*x1 + x0*x1^2", Some(3)).unwrap();
        let plane = {
            use crate::linalg::Mat;
            Subspace::from_span(
                &f2,
                Mat::<PrimeField>::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
            )
        };
        assert!(vanishes_pointwise(&f2, &f, &plane).unwrap());
        let pullback = f.substitute_linear(&f2, plane.basis()).unwrap();
        assert!(!pullback.is_zero());
        // And fano_points therefore refuses to count that plane.
        let members = fano_points(&f2, &params(2, 1, &[3]), &f, 1 << 20).unwrap();
        assert!(!members.contains(&plane));
    }

    #[test]
    fn projective_point_counts() {
        let f5 = PrimeField::new(5).unwrap();
        let full = Subspace::full(&f5, 3);
        assert_eq!(projective_points(&f5, &full).len(), 31); // (5^3-1)/4
        assert_eq!(projective_points(&f5, &Subspace::zero(3)).len(), 0);
    }
}
