//! Exhaustive subspace enumeration in canonical form.
//!
//! Subspaces of `F_q^m` of a fixed dimension are partitioned by the pivot
//! columns of their reduced row-echelon basis. For a pivot pattern
//! `p_0 < … < p_{k-1}` the basis matrix is determined by its free cells —
//! the entries right of a pivot that are not themselves in a pivot column —
//! so each pattern contributes exactly `q^{#free}` subspaces and every
//! subspace appears exactly once. Patterns are independent work units;
//! iterating them in lexicographic order with an odometer over the free
//! cells gives a deterministic stream.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{Mat, Subspace};

use super::gaussian_binomial;

/// All strictly increasing pivot-column patterns, lexicographic.
pub fn pivot_patterns(dim: usize, ambient: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dim > ambient {
        return out;
    }
    let mut cur: Vec<usize> = (0..dim).collect();
    loop {
        out.push(cur.clone());
        // Advance the combination odometer.
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < ambient - (dim - i) {
                cur[i] += 1;
                for j in i + 1..dim {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn free_cells(pivots: &[usize], ambient: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in p + 1..ambient {
            if !pivots.contains(&col) {
                cells.push((row, col));
            }
        }
    }
    cells
}

/// Iterator over every subspace with a fixed pivot pattern.
pub struct PatternSubspaces {
    field: PrimeField,
    ambient: usize,
    pivots: Vec<usize>,
    cells: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

impl PatternSubspaces {
    pub fn new(field: PrimeField, pivots: Vec<usize>, ambient: usize) -> Self {
        let cells = free_cells(&pivots, ambient);
        PatternSubspaces {
            field,
            ambient,
            digits: vec![0; cells.len()],
            pivots,
            cells,
            done: false,
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `q^{#free cells}`.
    pub fn count(&self) -> u128 {
        (self.field.modulus() as u128).pow(self.cells.len() as u32)
    }

    fn build(&self) -> Subspace<PrimeField> {
        let dim = self.pivots.len();
        let mut mat = Mat::zero(&self.field, dim, self.ambient);
        for (row, &p) in self.pivots.iter().enumerate() {
            *mat.at_mut(row, p) = 1;
        }
        for (&(row, col), &v) in self.cells.iter().zip(&self.digits) {
            *mat.at_mut(row, col) = v;
        }
        Subspace::from_rref_unchecked(mat, self.pivots.clone())
    }
}

impl Iterator for PatternSubspaces {
    type Item = Subspace<PrimeField>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.build();
        // Odometer: bump the last free cell, carrying leftwards.
        let q = self.field.modulus();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}

/// Exact number of `dim`-dimensional subspaces of `F_q^ambient`.
pub fn subspace_count(dim: usize, ambient: usize, q: u64) -> num_bigint::BigUint {
    gaussian_binomial(dim, ambient, q)
}

fn check_cap(dim: usize, ambient: usize, q: u64, cap: u64) -> Result<()> {
    let total = subspace_count(dim, ambient, q);
    match total.to_u128() {
        Some(t) if t <= cap as u128 => Ok(()),
        Some(t) => Err(Error::CapExceeded { required: t, cap }),
        None => Err(Error::CapExceeded {
            required: u128::MAX,
            cap,
        }),
    }
}

/// The pattern-level partition of the enumeration, for parallel drivers.
/// Fails if the total count would exceed `cap`.
pub fn pattern_partitions(
    field: &PrimeField,
    dim: usize,
    ambient: usize,
    cap: u64,
) -> Result<Vec<PatternSubspaces>> {
    if dim > ambient {
        return Err(Error::InvalidParameters(alloc::format!(
            "subspace dimension {dim} exceeds ambient {ambient}"
        )));
    }
    check_cap(dim, ambient, field.modulus(), cap)?;
    Ok(pivot_patterns(dim, ambient)
        .into_iter()
        .map(|p| PatternSubspaces::new(*field, p, ambient))
        .collect())
}

/// Stream every `dim`-dimensional subspace of `F_q^ambient` exactly once,
/// in canonical form, grouped by pivot pattern.
pub fn enumerate_subspaces(
    field: &PrimeField,
    dim: usize,
    ambient: usize,
    cap: u64,
) -> Result<impl Iterator<Item = Subspace<PrimeField>>> {
    Ok(pattern_partitions(field, dim, ambient, cap)?
        .into_iter()
        .flatten())
}
