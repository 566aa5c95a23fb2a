//! Contraction, apolar annihilators, essential subspaces, and the
//! generalized rank of a form tuple.
//!
//! A covector `ℓ = Σ ℓⱼ·Xⱼ` acts on a tuple `φ` of forms in `x0..xn` by
//! `ℓ∘φᵢ = Σⱼ ℓⱼ·∂φᵢ/∂xⱼ`, lowering every degree by one. The annihilator
//! `A(φ) ⊂ V*` of that action and its orthogonal complement `M(φ) ⊂ V`
//! control containment: `φ` is a tuple of forms on a subspace `W` exactly
//! when `M(φ) ⊆ W`. The dimension `m(φ) = dim M(φ)` generalizes the rank of
//! a quadratic form.
//!
//! Formal derivatives degenerate when the characteristic is at most the
//! degree, so every operation here insists on characteristic 0 or
//! `p > max dᵢ` and fails loudly otherwise.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{check_apolarity_characteristic, Field};
use crate::linalg::{Mat, Subspace};
use crate::poly::{monomials_of_degree, Covector, Form, FormTuple, Monomial};
use crate::strata::FanoParameters;

fn check_characteristic<F: Field>(field: &F, tuple: &FormTuple<F>) -> Result<()> {
    check_apolarity_characteristic(field.characteristic(), tuple.max_degree())
}

/// `ℓ∘φ`: contract every entry of the tuple by the covector `ℓ`.
///
/// Degree-1 entries contract to constants (degree-0 forms).
pub fn contract<F: Field>(
    field: &F,
    ell: &Covector<F>,
    phi: &FormTuple<F>,
) -> Result<FormTuple<F>> {
    if ell.len() != phi.nvars() {
        return Err(Error::DimensionMismatch {
            expected: phi.nvars(),
            found: ell.len(),
        });
    }
    check_characteristic(field, phi)?;
    let mut out = Vec::with_capacity(phi.len());
    for form in phi.forms() {
        if form.degree() == 0 {
            return Err(Error::InvalidDegree(
                "cannot contract a degree-0 form".to_string(),
            ));
        }
        let mut acc = Form::zero(form.nvars(), form.degree() - 1);
        for (j, coef) in ell.coords().iter().enumerate() {
            if field.is_zero(coef) {
                continue;
            }
            let dj = form.partial_derivative(field, j)?;
            acc = acc.add(field, &dj.scale(field, coef))?;
        }
        out.push(acc);
    }
    FormTuple::new(out)
}

/// The matrix of the contraction map `V* → Sym^{d-1}`: row `j` holds the
/// coefficients of `∂φ/∂xⱼ` across all tuple entries.
fn contraction_matrix<F: Field>(field: &F, phi: &FormTuple<F>) -> Result<Mat<F>> {
    let nvars = phi.nvars();
    let orders: Vec<Vec<Monomial>> = phi
        .forms()
        .iter()
        .map(|f| monomials_of_degree(nvars, f.degree().saturating_sub(1)))
        .collect();
    let offsets: Vec<usize> = orders
        .iter()
        .scan(0usize, |acc, o| {
            let start = *acc;
            *acc += o.len();
            Some(start)
        })
        .collect();
    let total: usize = orders.iter().map(Vec::len).sum();
    let mut mat = Mat::zero(field, nvars, total);
    for (i, form) in phi.forms().iter().enumerate() {
        if form.degree() == 0 {
            // Constants differentiate to zero; their column block stays zero.
            continue;
        }
        for j in 0..nvars {
            let dj = form.partial_derivative(field, j)?;
            for (m, c) in dj.terms() {
                let col = offsets[i]
                    + orders[i]
                        .binary_search(m)
                        .expect("derivative monomial in order");
                *mat.at_mut(j, col) = c.clone();
            }
        }
    }
    Ok(mat)
}

/// The annihilator `A(φ) = {ℓ ∈ V* : ℓ∘φ = 0}`, as a canonical subspace of
/// the dual space.
pub fn apolar_space<F: Field>(field: &F, phi: &FormTuple<F>) -> Result<Subspace<F>> {
    check_characteristic(field, phi)?;
    let mat = contraction_matrix(field, phi)?;
    Ok(Subspace::from_span(field, mat.left_kernel(field)))
}

/// The annihilator, the essential subspace, and the generalized rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarityProfile<F: Field> {
    /// `A(φ) ⊂ V*`.
    pub apolar: Subspace<F>,
    /// `M(φ) = A(φ)^⊥ ⊂ V`, the smallest subspace carrying `φ`.
    pub essential: Subspace<F>,
    /// `m(φ) = dim M(φ)`.
    pub rank: usize,
}

/// Compute `A(φ)`, `M(φ) = A(φ)^⊥`, and `m(φ)` in one pass.
pub fn essential_subspace<F: Field>(field: &F, phi: &FormTuple<F>) -> Result<ApolarityProfile<F>> {
    let apolar = apolar_space(field, phi)?;
    let essential = apolar.orthogonal_complement(field);
    let rank = essential.dim();
    debug_assert_eq!(rank, phi.nvars() - apolar.dim());
    Ok(ApolarityProfile {
        apolar,
        essential,
        rank,
    })
}

/// Direct containment test: is every entry of `φ` a form on `W`?
///
/// Extends a basis of `W` to a basis of the ambient space, rewrites `φ` in
/// the new coordinates through the inverse change of variables, and checks
/// that no monomial touches a complement coordinate. This makes no use of
/// derivatives, so it is valid in every characteristic.
pub fn membership<F: Field>(field: &F, phi: &FormTuple<F>, w: &Subspace<F>) -> Result<bool> {
    if w.ambient() != phi.nvars() {
        return Err(Error::DimensionMismatch {
            expected: phi.nvars(),
            found: w.ambient(),
        });
    }
    let t = w.dim();
    let basis = w.extend_to_basis(field);
    let inverse = basis
        .inverse(field)
        .expect("extended basis is invertible");
    let rewrite = inverse.transposed();
    for form in phi.forms() {
        let psi = form.substitute_linear(field, &rewrite)?;
        for (m, _) in psi.terms() {
            if m.exps()[t..].iter().any(|&e| e > 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The containment test for one fixed subspace, factored for reuse across
/// many forms: the coordinate rewrite is linear in the coefficients of `φ`,
/// so the complement-coordinate coefficients form a fixed matrix applied to
/// the coefficient vector.
pub struct MembershipTester<F: Field> {
    degrees: Vec<u32>,
    orders: Vec<Vec<Monomial>>,
    /// Per tuple entry: rows of complement-monomial coefficients.
    bad_rows: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> MembershipTester<F> {
    pub fn new(field: &F, w: &Subspace<F>, degrees: &[u32]) -> Result<Self> {
        let nvars = w.ambient();
        let t = w.dim();
        let basis = w.extend_to_basis(field);
        let inverse = basis
            .inverse(field)
            .expect("extended basis is invertible");
        let rewrite = inverse.transposed();
        let mut orders = Vec::with_capacity(degrees.len());
        let mut bad_rows = Vec::with_capacity(degrees.len());
        for &d in degrees {
            let order = monomials_of_degree(nvars, d);
            let bad: Vec<usize> = (0..order.len())
                .filter(|&i| order[i].exps()[t..].iter().any(|&e| e > 0))
                .collect();
            let mut rows = vec![vec![field.zero(); order.len()]; bad.len()];
            for (col, m) in order.iter().enumerate() {
                let image = Form::monomial(field, m.clone(), field.one())?
                    .substitute_linear(field, &rewrite)?;
                for (row, &bi) in bad.iter().enumerate() {
                    if let Some(c) = image.coeff(&order[bi]) {
                        rows[row][col] = c.clone();
                    }
                }
            }
            orders.push(order);
            bad_rows.push(rows);
        }
        Ok(MembershipTester {
            degrees: degrees.to_vec(),
            orders,
            bad_rows,
        })
    }

    /// Test a tuple whose degrees match the tester's.
    pub fn is_member(&self, field: &F, phi: &FormTuple<F>) -> Result<bool> {
        if phi.degrees() != self.degrees {
            return Err(Error::InvalidDegree(
                "tuple degrees do not match tester".to_string(),
            ));
        }
        for (i, form) in phi.forms().iter().enumerate() {
            let coeffs = form.coeff_vec(field, &self.orders[i]);
            if !self.accepts_block(field, i, &coeffs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Test one entry's coefficient vector against the rewrite rows.
    pub fn accepts_block(&self, field: &F, entry: usize, coeffs: &[F::Elem]) -> bool {
        for row in &self.bad_rows[entry] {
            let mut acc = field.zero();
            for (a, b) in row.iter().zip(coeffs) {
                acc = field.add(&acc, &field.mul(a, b));
            }
            if !field.is_zero(&acc) {
                return false;
            }
        }
        true
    }

    /// The rewrite rows for one entry, for callers that flatten them into
    /// specialized representations.
    pub fn rows(&self, entry: usize) -> &[Vec<F::Elem>] {
        &self.bad_rows[entry]
    }
}

/// A tuple with generalized rank exactly `r + 1 - k`:
/// `φᵢ = Σ_{j=0}^{r-k} xⱼ^{dᵢ}`.
pub fn witness_form<F: Field>(
    field: &F,
    params: &FanoParameters,
    k: u32,
) -> Result<FormTuple<F>> {
    if k > params.r() {
        return Err(Error::IndexOutOfRange {
            k: k as i64,
            r: params.r(),
        });
    }
    let d = params.multidegree();
    if d.has_unit_entry() {
        return Err(Error::InvalidDegree(
            "witness construction needs every degree at least 2".to_string(),
        ));
    }
    check_apolarity_characteristic(field.characteristic(), d.max_entry())?;
    let nvars = params.ambient_dim();
    let top = (params.r() - k) as usize;
    let mut forms = Vec::with_capacity(d.len());
    for &di in d.entries() {
        let mut f = Form::zero(nvars, di);
        for j in 0..=top {
            let mut exps = vec![0u32; nvars];
            exps[j] = di;
            f.add_term(field, Monomial::new(exps), field.one())?;
        }
        forms.push(f);
    }
    FormTuple::new(forms)
}

/// The perfect pairing of dual degree-`d` spaces, `Σᵢ⟨fᵢ, φᵢ⟩`, where on
/// monomials `⟨X^a, x^b⟩ = δ_{ab}·Πⱼ aⱼ!` (apply `f` to `φ` as a constant
/// differential operator).
pub fn apolarity_pairing<F: Field>(
    field: &F,
    f: &FormTuple<F>,
    phi: &FormTuple<F>,
) -> Result<F::Elem> {
    if f.nvars() != phi.nvars() {
        return Err(Error::DimensionMismatch {
            expected: phi.nvars(),
            found: f.nvars(),
        });
    }
    if f.degrees() != phi.degrees() {
        return Err(Error::InvalidDegree(
            "paired tuples must share a multidegree".to_string(),
        ));
    }
    check_characteristic(field, phi)?;
    let mut acc = field.zero();
    for (fi, pi) in f.forms().iter().zip(phi.forms()) {
        for (m, c) in fi.terms() {
            let Some(pc) = pi.coeff(m) else { continue };
            let mut weight = field.one();
            for &e in m.exps() {
                weight = field.mul(&weight, &field.factorial(e));
            }
            acc = field.add(&acc, &field.mul(&field.mul(c, pc), &weight));
        }
    }
    Ok(acc)
}

/// `⟨f, φ⟩ ≠ 0`.
pub fn pairing_nonzero<F: Field>(field: &F, f: &FormTuple<F>, phi: &FormTuple<F>) -> Result<bool> {
    Ok(!field.is_zero(&apolarity_pairing(field, f, phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::MultiDegree;
    use crate::text::parse_tuple;

    fn q() -> Rationals {
        Rationals
    }

    fn tuple(input: &str, nvars: usize) -> FormTuple<Rationals> {
        parse_tuple(&q(), input, Some(nvars)).unwrap()
    }

    fn params(n: u32, r: u32, d: &[u32]) -> FanoParameters {
        FanoParameters::new(n, r, MultiDegree::new(d.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn contract_is_a_directional_derivative() {
        let f = q();
        // X0 ∘ x0^2 = 2 x0.
        let phi = tuple("x0^2", 2);
        let out = contract(&f, &Covector::basis(&f, 2, 0), &phi).unwrap();
        assert_eq!(out, tuple("2*x0", 2));
        // X1 ∘ x0^3 = 0.
        let phi = tuple("x0^3", 2);
        let out = contract(&f, &Covector::basis(&f, 2, 1), &phi).unwrap();
        assert!(out.is_zero());
        // Degree-1 forms contract to constants.
        let phi = tuple("3*x0 + x1", 2);
        let out = contract(&f, &Covector::basis(&f, 2, 0), &phi).unwrap();
        assert_eq!(out.forms()[0].degree(), 0);
        assert_eq!(
            out.forms()[0].coeff(&Monomial::constant(2)),
            Some(&f.from_i64(3))
        );
    }

    #[test]
    fn contract_matches_symmetric_matrix_action() {
        let f = q();
        // phi = x0*x1 pairs with the matrix [[0,1],[1,0]]: contracting by
        // ℓ = a·X0 + b·X1 must give b·x0 + a·x1.
        let phi = tuple("x0*x1", 2);
        let ell = Covector::new(vec![f.from_i64(2), f.from_i64(5)]);
        let out = contract(&f, &ell, &phi).unwrap();
        assert_eq!(out, tuple("5*x0 + 2*x1", 2));
    }

    #[test]
    fn contract_dimension_and_characteristic_errors() {
        let f = q();
        let phi = tuple("x0^2", 2);
        assert!(contract(&f, &Covector::basis(&f, 3, 0), &phi).is_err());
        let f3 = PrimeField::new(3).unwrap();
        let phi3 = parse_tuple(&f3, "x0^3", Some(2)).unwrap();
        assert!(matches!(
            contract(&f3, &Covector::basis(&f3, 2, 0), &phi3),
            Err(Error::SmallCharacteristic { p: 3, max_degree: 3 })
        ));
    }

    #[test]
    fn apolar_space_of_a_power_of_a_coordinate() {
        let f = q();
        for d in 1..5u32 {
            let phi = tuple(&alloc::format!("x0^{d}"), 4);
            let a = apolar_space(&f, &phi).unwrap();
            assert_eq!(a.dim(), 3);
            // A = span(X1, X2, X3).
            for j in 1..4 {
                let mut v = vec![f.zero(); 4];
                v[j] = f.one();
                assert!(a.contains_vector(&f, &v).unwrap());
            }
        }
    }

    #[test]
    fn annihilator_of_tuple_is_intersection() {
        let f = q();
        let phi1 = tuple("x0^2 + x1*x2", 4);
        let phi2 = tuple("x1^3 - x3^3", 4);
        let joint = FormTuple::new(
            phi1.forms()
                .iter()
                .chain(phi2.forms())
                .cloned()
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let a1 = apolar_space(&f, &phi1).unwrap();
        let a2 = apolar_space(&f, &phi2).unwrap();
        let a = apolar_space(&f, &joint).unwrap();
        assert_eq!(a, a1.intersect(&f, &a2).unwrap());
    }

    #[test]
    fn essential_subspace_examples() {
        let f = q();
        // m(x0^d) = 1 with M = span(x0).
        let p = essential_subspace(&f, &tuple("x0^4", 3)).unwrap();
        assert_eq!(p.rank, 1);
        assert!(p.essential.contains_vector(&f, &[f.one(), f.zero(), f.zero()]).unwrap());
        // Sums of m-th powers in distinct variables: rank m.
        let p = essential_subspace(&f, &tuple("x0^3 + x1^3; x0^2 + x1^2", 4)).unwrap();
        assert_eq!(p.rank, 2);
        // Quadric rank: x0*x1 has matrix [[0,1],[1,0]] of rank 2.
        let p = essential_subspace(&f, &tuple("x0*x1", 2)).unwrap();
        assert_eq!(p.rank, 2);
        // Zero tuple: A = V*, M = 0, rank 0.
        let p = essential_subspace(&f, &tuple("0", 3)).unwrap();
        assert_eq!(p.rank, 0);
        assert_eq!(p.apolar.dim(), 3);
    }

    #[test]
    fn membership_examples() {
        let f = q();
        let w01 = Subspace::from_span(
            &f,
            Mat::from_rows(vec![
                vec![f.one(), f.zero(), f.zero()],
                vec![f.zero(), f.one(), f.zero()],
            ])
            .unwrap(),
        );
        let w0 = Subspace::from_span(
            &f,
            Mat::from_rows(vec![vec![f.one(), f.zero(), f.zero()]]).unwrap(),
        );
        assert!(membership(&f, &tuple("x0^2", 3), &w01).unwrap());
        let sq = tuple("x0^2 + 2*x0*x1 + x1^2", 3); // (x0 + x1)^2
        assert!(!membership(&f, &sq, &w0).unwrap());
        assert!(membership(&f, &sq, &w01).unwrap());
        // The diagonal line span(x0 + x1) does carry (x0+x1)^2.
        let diag = Subspace::from_span(
            &f,
            Mat::from_rows(vec![vec![f.one(), f.one(), f.zero()]]).unwrap(),
        );
        assert!(membership(&f, &sq, &diag).unwrap());
        // Small characteristic is fine here: x0^3 on F_3.
        let f3 = PrimeField::new(3).unwrap();
        let phi3 = parse_tuple(&f3, "x0^3", Some(2)).unwrap();
        let w = Subspace::from_span(&f3, Mat::<PrimeField>::from_rows(vec![vec![1, 0]]).unwrap());
        assert!(membership(&f3, &phi3, &w).unwrap());
        // Zero subspace carries only the zero tuple.
        assert!(!membership(&f, &sq, &Subspace::zero(3)).unwrap());
        assert!(membership(&f, &tuple("0", 3), &Subspace::zero(3)).unwrap());
    }

    #[test]
    fn membership_tester_agrees_with_direct_call() {
        let f = q();
        let w = Subspace::from_span(
            &f,
            Mat::from_rows(vec![vec![f.one(), f.from_i64(2), f.from_i64(3)]]).unwrap(),
        );
        let tester = MembershipTester::new(&f, &w, &[2]).unwrap();
        for phi in [
            tuple("x0^2 + 4*x0*x1 + 4*x1^2", 3),
            tuple("x0^2 + 4*x0*x1 + 4*x1^2 + 9*x2^2 + 6*x0*x2 + 12*x1*x2", 3),
            tuple("x0^2", 3),
        ] {
            assert_eq!(
                tester.is_member(&f, &phi).unwrap(),
                membership(&f, &phi, &w).unwrap()
            );
        }
    }

    #[test]
    fn witness_rank_is_exact() {
        let f = q();
        for (n, r, d) in [(3u32, 1u32, vec![3u32]), (4, 2, vec![2, 2]), (5, 2, vec![4])] {
            let p = params(n, r, &d);
            for k in 0..=r {
                let w = witness_form(&f, &p, k).unwrap();
                let prof = essential_subspace(&f, &w).unwrap();
                assert_eq!(prof.rank as u32, r + 1 - k);
            }
            assert!(witness_form(&f, &p, r + 1).is_err());
        }
        // k = r collapses to pure powers of x0.
        let w = witness_form(&f, &params(3, 1, &[3]), 1).unwrap();
        assert_eq!(w, tuple("x0^3", 4));
        // Unit degrees are rejected.
        assert!(witness_form(&f, &params(3, 1, &[1]), 0).is_err());
    }

    #[test]
    fn pairing_weights_monomials_with_factorials() {
        let f = q();
        // ⟨X0^2, x0^2⟩ = 2! and ⟨X0*X1, x0*x1⟩ = 1.
        let x0sq = tuple("x0^2", 2);
        assert_eq!(apolarity_pairing(&f, &x0sq, &x0sq).unwrap(), f.from_i64(2));
        let mixed = tuple("x0*x1", 2);
        assert_eq!(apolarity_pairing(&f, &mixed, &mixed).unwrap(), f.one());
        assert!(!pairing_nonzero(&f, &x0sq, &mixed).unwrap());
    }
}
