//! Finite-dimensional algebras given by structure constants, and their left
//! modules given by action matrices.

mod hom;
mod module;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactlin::Matrix;
use crate::field::{Field, Scalar};

pub use hom::{dual_module, hom_basis, hom_space_dim, DualModule};
pub use module::{
    direct_sum, free_module, validate_module, DirectSum, Module, ModuleHom, ModuleViolation, Pushout,
};
pub(crate) use hom::{dual_only, hom_space_matrix};
pub(crate) use module::{cokernel, corestrict, kernel, pushout};

/// `A = k^n` with basis `e_0..e_{n-1}`, `e_i e_j = sum_k mult[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: Field,
    dim: usize,
    unit: Vec<Scalar>,
    // flattened: coords of e_i e_j at index i * dim + j
    mult: Vec<Vec<Scalar>>,
}

/// First failed algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    /// `unit * e_i != e_i`
    LeftUnit { i: usize },
    /// `e_i * unit != e_i`
    RightUnit { i: usize },
    /// `(e_i e_j) e_k != e_i (e_j e_k)`
    Associativity { i: usize, j: usize, k: usize },
}

impl Algebra {
    /// Checks shapes and field membership only; see [`validate_algebra`] for the axioms.
    pub fn new(field: Field, unit: Vec<Scalar>, mult: Vec<Vec<Vec<Scalar>>>) -> Result<Algebra, Error> {
        let n = unit.len();
        let shape_err = |found: (usize, usize)| Error::DimensionMismatch {
            op: "Algebra::new",
            expected: (n, n),
            found,
        };
        if mult.len() != n {
            return Err(shape_err((mult.len(), n)));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in mult {
            if row.len() != n {
                return Err(shape_err((n, row.len())));
            }
            for v in row {
                if v.len() != n {
                    return Err(shape_err((n, v.len())));
                }
                flat.push(v);
            }
        }
        if unit.iter().chain(flat.iter().flatten()).any(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Algebra { field, dim: n, unit, mult: flat })
    }

    /// Integer structure constants, `table[i][j]` the coordinates of `e_i e_j`.
    pub fn from_ints(field: Field, unit: &[i64], table: &[&[&[i64]]]) -> Result<Algebra, Error> {
        let unit = unit.iter().map(|&v| field.from_int(v)).collect();
        let mult = table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|&c| field.from_int(c)).collect()).collect())
            .collect();
        Algebra::new(field, unit, mult)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i * self.dim + j]
    }

    pub fn mult_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let k = self.field;
        let mut out = vec![k.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if k.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if k.is_zero(bj) {
                    continue;
                }
                let c = k.mul(ai, bj);
                for (o, m) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o = k.add(o, &k.mul(&c, m));
                }
            }
        }
        out
    }

    /// Matrix of `x -> e_i x` on `A`.
    pub fn left_regular(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |r, c| self.basis_product(i, c)[r].clone())
    }

    /// Matrix of `x -> x e_i` on `A`.
    pub fn right_regular(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |r, c| self.basis_product(c, i)[r].clone())
    }

    /// Matrix of `x -> x a` on `A`.
    pub fn right_mult(&self, a: &[Scalar]) -> Matrix {
        let k = self.field;
        let mut m = Matrix::zeros(k, self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !k.is_zero(ai) {
                m = m.add(&self.right_regular(i).scale(ai));
            }
        }
        m
    }

    /// Basis indices generating `A` as an algebra, chosen greedily in order.
    pub fn generating_indices(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut span = self.subalgebra_closure(&[]);
        for i in 0..self.dim {
            if span.cols() == self.dim {
                break;
            }
            let e = Matrix::column_vector(self.field, self.basis_vector(i));
            if !span.spans(&e) {
                chosen.push(i);
                span = self.subalgebra_closure(&chosen);
            }
        }
        chosen
    }

    // Column basis of the subalgebra generated by the unit and the chosen basis elements.
    fn subalgebra_closure(&self, gens: &[usize]) -> Matrix {
        let mut cols: Vec<Vec<Scalar>> = vec![self.unit.clone()];
        cols.extend(gens.iter().map(|&g| self.basis_vector(g)));
        let mut basis = Matrix::from_columns(self.field, self.dim, &cols).column_basis();
        loop {
            let vs = basis.columns();
            let mut all = vs.clone();
            for a in &vs {
                for b in &vs {
                    all.push(self.multiply(a, b));
                }
            }
            let next = Matrix::from_columns(self.field, self.dim, &all).column_basis();
            if next.cols() == basis.cols() {
                return basis;
            }
            basis = next;
        }
    }
}

/// Checks the unit axioms, then associativity on all basis triples.
pub fn validate_algebra(a: &Algebra) -> Result<(), AlgebraViolation> {
    for i in 0..a.dim {
        let e = a.basis_vector(i);
        if a.multiply(&a.unit, &e) != e {
            return Err(AlgebraViolation::LeftUnit { i });
        }
        if a.multiply(&e, &a.unit) != e {
            return Err(AlgebraViolation::RightUnit { i });
        }
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            let ij = a.basis_product(i, j).to_vec();
            for k in 0..a.dim {
                let ek = a.basis_vector(k);
                let lhs = a.multiply(&ij, &ek);
                let rhs = a.multiply(&a.basis_vector(i), a.basis_product(j, k));
                if lhs != rhs {
                    return Err(AlgebraViolation::Associativity { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// The opposite algebra: `e_i *op e_j = e_j e_i`.
pub fn opposite(a: &Algebra) -> Algebra {
    let n = a.dim;
    let mult = (0..n * n).map(|idx| a.basis_product(idx % n, idx / n).to_vec()).collect();
    Algebra { field: a.field, dim: n, unit: a.unit.clone(), mult }
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! Small algebras shared by unit tests across the crate.
    use super::*;
    use alloc::sync::Arc;

    /// `F_2[x]/(x^2)`, basis `{1, x}`.
    pub fn dual_numbers() -> Arc<Algebra> {
        let f = Field::Prime(2);
        Arc::new(Algebra::from_ints(f, &[1, 0], &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap())
    }

    /// `F_3[x]/(x^3)`, basis `{1, x, x^2}`.
    pub fn truncated_cubic() -> Arc<Algebra> {
        let f = Field::Prime(3);
        Arc::new(
            Algebra::from_ints(
                f,
                &[1, 0, 0],
                &[
                    &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                    &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]],
                    &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
                ],
            )
            .unwrap(),
        )
    }

    /// `F_2[x,y]/(x^2,y^2)`, basis `{1, x, y, xy}`.
    pub fn klein() -> Arc<Algebra> {
        let f = Field::Prime(2);
        let z = [0, 0, 0, 0];
        Arc::new(
            Algebra::from_ints(
                f,
                &[1, 0, 0, 0],
                &[
                    &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                    &[&[0, 1, 0, 0], &z, &[0, 0, 0, 1], &z],
                    &[&[0, 0, 1, 0], &[0, 0, 0, 1], &z, &z],
                    &[&[0, 0, 0, 1], &z, &z, &z],
                ],
            )
            .unwrap(),
        )
    }

    /// Upper triangular 2x2 matrices over `F_2`, basis `{e11, e12, e22}`.
    pub fn upper_triangular() -> Arc<Algebra> {
        let f = Field::Prime(2);
        let z = [0, 0, 0];
        Arc::new(
            Algebra::from_ints(
                f,
                &[1, 0, 1],
                &[
                    &[&[1, 0, 0], &[0, 1, 0], &z],
                    &[&z, &z, &[0, 1, 0]],
                    &[&z, &z, &[0, 0, 1]],
                ],
            )
            .unwrap(),
        )
    }

    /// The trivial module over a local algebra whose basis vectors after the first are nilpotent.
    pub fn residue_field(a: &Arc<Algebra>) -> Module {
        let f = a.field();
        let action = (0..a.dim())
            .map(|i| Matrix::from_ints(f, &[&[if i == 0 { 1 } else { 0 }]]))
            .collect();
        Module::new(a.clone(), 1, action).unwrap()
    }

    /// One-dimensional module of the triangular algebra on which `e_jj` acts as 1.
    pub fn triangular_simple(a: &Arc<Algebra>, j: usize) -> Module {
        let f = a.field();
        let ones = if j == 1 { [1, 0, 0] } else { [0, 0, 1] };
        let action = ones.iter().map(|&v| Matrix::from_ints(f, &[&[v]])).collect();
        Module::new(a.clone(), 1, action).unwrap()
    }
}
