use alloc::sync::Arc;
use alloc::vec::Vec;

use super::module::{free_module, Module, ModuleHom};
use super::{opposite, Algebra};
use crate::error::Error;
use crate::exactlin::{kernel_basis, solve_right, Matrix, Solve};

/// Columns are row-major vectorizations of a basis of `Hom_A(m, n)`.
///
/// Only algebra generators are imposed, which suffices for valid modules.
pub(crate) fn hom_space_matrix(m: &Module, n: &Module) -> Result<Matrix, Error> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let k = m.field();
    let (p, q) = (m.dim(), n.dim());
    let unknowns = p * q;
    if unknowns == 0 {
        return Ok(Matrix::zeros(k, 0, 0));
    }
    let gens = m.algebra().generating_indices();
    let mut sys = Matrix::zeros(k, gens.len() * unknowns, unknowns);
    // unknown X[s][c] sits at s * p + c; equation (g, r, c): (rho_N X - X rho_M)[r][c] = 0
    for (gi, &g) in gens.iter().enumerate() {
        let rn = n.action(g);
        let rm = m.action(g);
        for r in 0..q {
            for c in 0..p {
                let row = gi * unknowns + r * p + c;
                for s in 0..q {
                    let v = rn.get(r, s);
                    if !k.is_zero(v) {
                        let col = s * p + c;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, k.add(&cur, v));
                    }
                }
                for t in 0..p {
                    let v = rm.get(t, c);
                    if !k.is_zero(v) {
                        let col = r * p + t;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, k.sub(&cur, v));
                    }
                }
            }
        }
    }
    Ok(kernel_basis(&sys))
}

/// A basis of `Hom_A(m, n)`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleHom>, Error> {
    let basis = hom_space_matrix(m, n)?;
    let k = m.field();
    Ok((0..basis.cols())
        .map(|j| {
            let mat = Matrix::from_vectorized(k, n.dim(), m.dim(), &basis.column(j));
            ModuleHom::new_unchecked(m.clone(), n.clone(), mat)
        })
        .collect())
}

pub fn hom_space_dim(m: &Module, n: &Module) -> Result<usize, Error> {
    Ok(hom_space_matrix(m, n)?.cols())
}

/// `M* = Hom_A(M, A)` as a left module over the opposite algebra, with the
/// double dual and the natural evaluation map `M -> M**`.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub module: Module,
    /// The maps `M -> A` whose coordinates the basis of `module` records.
    pub basis: Vec<ModuleHom>,
    /// `M**`, over an algebra equal to that of `M`.
    pub double_dual: Module,
    pub evaluation: ModuleHom,
}

/// `Hom_A(M, A)` with its right `A`-action written as a left `A^op`-action.
pub(crate) fn dual_only(m: &Module, op: &Arc<Algebra>) -> Result<(Module, Vec<ModuleHom>), Error> {
    let a = m.algebra();
    let k = m.field();
    let regular = free_module(a, 1);
    let basis = hom_basis(m, &regular)?;
    let r = basis.len();
    let stacked = Matrix::from_columns(k, a.dim() * m.dim(), &basis.iter().map(|f| f.matrix().vectorize()).collect::<Vec<_>>());
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let right = a.right_regular(i);
        let images: Vec<_> = basis.iter().map(|f| right.mul(f.matrix()).vectorize()).collect();
        let rhs = Matrix::from_columns(k, a.dim() * m.dim(), &images);
        match solve_right(&stacked, &rhs)? {
            Solve::Solved(x) => action.push(x),
            Solve::Unsolvable { .. } => return Err(Error::Internal("right action leaves Hom(M, A)")),
        }
    }
    Ok((Module::new(op.clone(), r, action)?, basis))
}

pub fn dual_module(m: &Module) -> Result<DualModule, Error> {
    let a = m.algebra().clone();
    let k = m.field();
    let op = Arc::new(opposite(&a));
    let (dual, basis) = dual_only(m, &op)?;
    let (dd, dd_basis) = dual_only(&dual, &a)?;
    let double_dual = dd.rebased(&a);
    let r = basis.len();
    let stacked = Matrix::from_columns(k, a.dim() * r, &dd_basis.iter().map(|u| u.matrix().vectorize()).collect::<Vec<_>>());
    // ev_m(f_t) = f_t(m): an (n x r) matrix whose column t is column c of f_t
    let evals: Vec<_> = (0..m.dim())
        .map(|c| Matrix::from_fn(k, a.dim(), r, |row, t| basis[t].matrix().get(row, c).clone()).vectorize())
        .collect();
    let rhs = Matrix::from_columns(k, a.dim() * r, &evals);
    let coords = match solve_right(&stacked, &rhs)? {
        Solve::Solved(x) => x,
        Solve::Unsolvable { .. } => return Err(Error::Internal("evaluation is not in the double dual")),
    };
    let evaluation = ModuleHom::new_unchecked(m.clone(), double_dual.clone(), coords);
    Ok(DualModule { module: dual, basis, double_dual, evaluation })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::module::direct_sum;
    use super::*;
    use crate::algebra::validate_module;

    #[test]
    fn hom_from_regular_is_evaluation() {
        let a = klein();
        let free = free_module(&a, 1);
        for m in [residue_field(&a), free.clone(), free_module(&a, 2)] {
            assert_eq!(hom_space_dim(&free, &m).unwrap(), m.dim());
        }
    }

    #[test]
    fn endomorphisms_of_trivial_module() {
        let a = dual_numbers();
        let k = residue_field(&a);
        assert_eq!(hom_space_dim(&k, &k).unwrap(), 1);
    }

    #[test]
    fn trivial_module_into_regular_hits_socle() {
        let a = dual_numbers();
        let k = residue_field(&a);
        let homs = hom_basis(&k, &free_module(&a, 1)).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].matrix(), &Matrix::from_ints(a.field(), &[&[0], &[1]]));
        assert!(homs[0].intertwines());
    }

    #[test]
    fn hom_dimension_is_basis_invariant() {
        let a = truncated_cubic();
        let f = a.field();
        let m = direct_sum(&a, &[residue_field(&a), free_module(&a, 1)]).module;
        let g = Matrix::from_ints(f, &[&[1, 0, 1, 0], &[2, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let conj = m.change_basis(&g).unwrap();
        assert_eq!(validate_module(&conj), Ok(()));
        assert_eq!(hom_space_dim(&m, &m).unwrap(), hom_space_dim(&conj, &conj).unwrap());
        assert_eq!(hom_space_dim(&m, &conj).unwrap(), hom_space_dim(&m, &m).unwrap());
    }

    #[test]
    fn algebra_mismatch() {
        let m = residue_field(&dual_numbers());
        let n = residue_field(&klein());
        assert_eq!(hom_basis(&m, &n).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn dual_of_free_is_free() {
        for a in [dual_numbers(), upper_triangular()] {
            let d = dual_module(&free_module(&a, 2)).unwrap();
            assert_eq!(d.module.dim(), 2 * a.dim());
            assert_eq!(validate_module(&d.module), Ok(()));
            assert_eq!(*d.module.algebra().as_ref(), opposite(&a));
            assert!(d.evaluation.is_isomorphism());
            assert!(d.evaluation.intertwines());
        }
    }

    #[test]
    fn dual_of_trivial_module_is_one_dimensional() {
        let a = dual_numbers();
        let d = dual_module(&residue_field(&a)).unwrap();
        assert_eq!(d.module.dim(), 1);
    }

    #[test]
    fn dual_of_zero_is_zero() {
        let a = klein();
        let d = dual_module(&Module::zero(&a)).unwrap();
        assert!(d.module.is_zero());
        assert!(d.double_dual.is_zero());
    }
}
