//! Sparse homogeneous multivariate forms and tuples of them.
//!
//! A [`Form`] is a homogeneous polynomial in variables `x0..x{nvars-1}` with
//! coefficients in an exact field, stored as a sparse map from exponent
//! vectors to nonzero coefficients. Monomials are ordered lexicographically
//! by exponent vector, which fixes a canonical term order for serialization
//! and coefficient vectors.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector of a monomial; total degree is the sum of the entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, j: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The monomial with exponent `j` lowered by one, for differentiation.
    fn lower(&self, j: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        Monomial { exps }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps }
    }
}

/// Dimension of the space of degree-`d` forms in `nvars` variables.
pub fn sym_dim(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return if d == 0 { 1 } else { 0 };
    }
    let n = BigUint::from(nvars as u64 - 1 + d as u64);
    let k = BigUint::from(d);
    binomial(n, k)
        .to_usize()
        .expect("symmetric-power dimension exceeds usize")
}

/// All degree-`d` monomials in `nvars` variables, ascending lexicographic.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(sym_dim(nvars, d));
    let mut current = vec![0u32; nvars];
    fill_monomials(&mut current, 0, d, &mut out);
    out
}

fn fill_monomials(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill_monomials(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// Position of `m` in [`monomials_of_degree`] order.
pub fn monomial_index(order: &[Monomial], m: &Monomial) -> usize {
    order
        .binary_search(m)
        .expect("monomial of matching degree and arity")
}

/// A homogeneous form. The zero form keeps its declared degree and has an
/// empty term map; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<F: Field> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Form<F> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(field: &F, nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut form = Form::zero(nvars, degree);
        for (m, c) in terms {
            form.add_term(field, m, c)?;
        }
        Ok(form)
    }

    pub fn monomial(field: &F, m: Monomial, coeff: F::Elem) -> Result<Self> {
        let nvars = m.nvars();
        let degree = m.total_degree();
        Form::from_terms(field, nvars, degree, [(m, coeff)])
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) -> Result<()> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        if m.total_degree() != self.degree {
            return Err(Error::InvalidDegree(alloc::format!(
                "monomial of degree {} in a form of degree {}",
                m.total_degree(),
                self.degree
            )));
        }
        if field.is_zero(&c) {
            return Ok(());
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &c);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    pub fn add(&self, field: &F, other: &Form<F>) -> Result<Form<F>> {
        if other.nvars != self.nvars || other.degree != self.degree {
            return Err(Error::InvalidDegree(
                "form addition needs matching arity and degree".to_string(),
            ));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Form<F> {
        if field.is_zero(c) {
            return Form::zero(self.nvars, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), field.mul(v, c)))
            .collect();
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn neg(&self, field: &F) -> Form<F> {
        self.scale(field, &field.neg(&field.one()))
    }

    pub fn mul(&self, field: &F, other: &Form<F>) -> Result<Form<F>> {
        if other.nvars != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(field, ma.mul(mb), field.mul(ca, cb))?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, field: &F, e: u32) -> Form<F> {
        let mut acc = Form::from_terms(
            field,
            self.nvars,
            0,
            [(Monomial::constant(self.nvars), field.one())],
        )
        .expect("constant form");
        for _ in 0..e {
            acc = acc.mul(field, self).expect("matching arity");
        }
        acc
    }

    /// Formal partial derivative in the `j`-th variable.
    pub fn partial_derivative(&self, field: &F, j: usize) -> Result<Form<F>> {
        if self.degree == 0 {
            return Err(Error::InvalidDegree(
                "cannot differentiate a degree-0 form".to_string(),
            ));
        }
        if j >= self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: j + 1,
            });
        }
        let mut out = Form::zero(self.nvars, self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.exps()[j];
            if e == 0 {
                continue;
            }
            let coeff = field.mul(c, &field.from_i64(e as i64));
            out.add_term(field, m.lower(j), coeff)?;
        }
        Ok(out)
    }

    /// Substitute `x_j := Σ_a map[a][j] · y_a`; the result lives in
    /// `map.rows()` variables. This is the workhorse behind coordinate
    /// rewrites, group actions, and restriction to a parametrized subspace.
    pub fn substitute_linear(&self, field: &F, map: &crate::linalg::Mat<F>) -> Result<Form<F>> {
        if map.cols() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: map.cols(),
            });
        }
        let new_vars = map.rows();
        let images: Vec<Form<F>> = (0..self.nvars)
            .map(|j| {
                let mut lin = Form::zero(new_vars, 1);
                for a in 0..new_vars {
                    lin.add_term(
                        field,
                        Monomial::variable(new_vars, a),
                        map.at(a, j).clone(),
                    )?;
                }
                Ok(lin)
            })
            .collect::<Result<_>>()?;
        let mut out = Form::zero(new_vars, self.degree);
        for (m, c) in &self.terms {
            let mut term = Form::from_terms(
                field,
                new_vars,
                0,
                [(Monomial::constant(new_vars), c.clone())],
            )?;
            for (j, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(field, &images[j].pow(field, e))?;
                }
            }
            out = out.add(field, &term)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, field: &F, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[j]);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Coefficients against `monomials_of_degree(self.nvars, self.degree)`.
    pub fn coeff_vec(&self, field: &F, order: &[Monomial]) -> Vec<F::Elem> {
        let mut v = vec![field.zero(); order.len()];
        for (m, c) in &self.terms {
            v[monomial_index(order, m)] = c.clone();
        }
        v
    }

    pub fn from_coeff_vec(
        field: &F,
        nvars: usize,
        degree: u32,
        order: &[Monomial],
        coeffs: &[F::Elem],
    ) -> Result<Form<F>> {
        Form::from_terms(
            field,
            nvars,
            degree,
            order.iter().cloned().zip(coeffs.iter().cloned()),
        )
    }
}

/// A covector, i.e. an element of the dual space, in dual coordinates
/// `X0..X{n}` with `⟨Xi, xj⟩ = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covector<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> Covector<F> {
    pub fn new(coords: Vec<F::Elem>) -> Self {
        Covector { coords }
    }

    pub fn basis(field: &F, nvars: usize, j: usize) -> Self {
        let mut coords = vec![field.zero(); nvars];
        coords[j] = field.one();
        Covector { coords }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// A list of degrees `(d_1, …, d_s)`, every entry at least 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidParameters(
                "multidegree needs at least one entry".to_string(),
            ));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidParameters(
                "multidegree entries must be positive".to_string(),
            ));
        }
        Ok(MultiDegree(degrees))
    }

    pub fn single(d: u32) -> Result<Self> {
        MultiDegree::new(vec![d])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Number of forms `s`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_entry(&self) -> u32 {
        *self.0.iter().max().expect("nonempty")
    }

    pub fn has_unit_entry(&self) -> bool {
        self.0.contains(&1)
    }

    /// Exactly the single quadric `(2)`.
    pub fn is_single_quadric(&self) -> bool {
        self.0 == [2]
    }
}

/// An `s`-tuple of forms over a common variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTuple<F: Field> {
    forms: Vec<Form<F>>,
}

impl<F: Field> FormTuple<F> {
    pub fn new(forms: Vec<Form<F>>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidParameters(
                "form tuple needs at least one entry".to_string(),
            ));
        };
        let nvars = first.nvars();
        for f in &forms {
            if f.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: f.nvars(),
                });
            }
        }
        Ok(FormTuple { forms })
    }

    pub fn single(form: Form<F>) -> Self {
        FormTuple { forms: vec![form] }
    }

    pub fn forms(&self) -> &[Form<F>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nvars(&self) -> usize {
        self.forms[0].nvars()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The multidegree, when every entry has positive degree.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        MultiDegree::new(self.degrees())
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(Form::is_zero)
    }

    pub fn substitute_linear(&self, field: &F, map: &crate::linalg::Mat<F>) -> Result<FormTuple<F>> {
        let forms = self
            .forms
            .iter()
            .map(|f| f.substitute_linear(field, map))
            .collect::<Result<_>>()?;
        Ok(FormTuple { forms })
    }
}
