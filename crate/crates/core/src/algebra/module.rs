use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::Algebra;
use crate::error::Error;
use crate::exactlin::{kernel_basis, quotient_structure, solve_right, Matrix, Solve};
use crate::field::{Field, Scalar};

/// A finite-dimensional left module: `action[i]` is the matrix of `e_i`.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for Module {}

/// First failed module axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    /// The unit does not act as the identity.
    UnitAction,
    /// `rho(e_i) rho(e_j) != rho(e_i e_j)`
    Multiplicativity { i: usize, j: usize },
}

impl Module {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Module, Error> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(m) = action.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch { op: "Module::new", expected: (dim, dim), found: m.shape() });
        }
        if action.iter().any(|m| m.field() != algebra.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Module { algebra, dim, action })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        Module { algebra: algebra.clone(), dim: 0, action }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `a = sum a_i e_i`.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dim, self.dim);
        for (i, ai) in a.iter().enumerate() {
            if !k.is_zero(ai) {
                m = m.add(&self.action[i].scale(ai));
            }
        }
        m
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// Same module data over a value-equal algebra handle.
    pub(crate) fn rebased(&self, algebra: &Arc<Algebra>) -> Module {
        debug_assert_eq!(*self.algebra, **algebra);
        Module { algebra: algebra.clone(), dim: self.dim, action: self.action.clone() }
    }

    /// Standard basis vector `i` of the underlying space.
    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let k = self.field();
        let mut v = vec![k.zero(); self.dim];
        v[i] = k.one();
        v
    }

    /// Span of `{e_i v}` for the given vectors, as independent columns.
    pub fn generated_submodule_basis(&self, vectors: &[Vec<Scalar>]) -> Matrix {
        let mut cols = Vec::with_capacity(vectors.len() * self.action.len());
        for v in vectors {
            for a in &self.action {
                cols.push(a.apply(v));
            }
        }
        Matrix::from_columns(self.field(), self.dim, &cols).column_basis()
    }

    /// Conjugated copy `g^-1 rho g`, i.e. the same module in the basis given by the columns of `g`.
    pub fn change_basis(&self, g: &Matrix) -> Option<Module> {
        let inv = g.inverse()?;
        let action = self.action.iter().map(|a| inv.mul(a).mul(g)).collect();
        Some(Module { algebra: self.algebra.clone(), dim: self.dim, action })
    }
}

/// Checks that the unit acts as the identity and that the action respects the structure constants.
pub fn validate_module(m: &Module) -> Result<(), ModuleViolation> {
    let a = &m.algebra;
    if m.act(a.unit()) != Matrix::identity(m.field(), m.dim) {
        return Err(ModuleViolation::UnitAction);
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if m.action[i].mul(&m.action[j]) != m.act(a.basis_product(i, j)) {
                return Err(ModuleViolation::Multiplicativity { i, j });
            }
        }
    }
    Ok(())
}

/// `A^g` with block-diagonal left-regular action; basis index `block * dim A + i` is `e_i` in block `block`.
pub fn free_module(a: &Arc<Algebra>, g: usize) -> Module {
    let f = a.field();
    let action = (0..a.dim())
        .map(|i| {
            let l = a.left_regular(i);
            Matrix::block_diag(f, &vec![l; g])
        })
        .collect();
    Module { algebra: a.clone(), dim: g * a.dim(), action }
}

/// An `A`-linear map; `matrix` is `target.dim x source.dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<ModuleHom, Error> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::DimensionMismatch {
                op: "ModuleHom::new",
                expected: (target.dim, source.dim),
                found: matrix.shape(),
            });
        }
        let hom = ModuleHom { source, target, matrix };
        if !hom.intertwines() {
            return Err(Error::NotAHomomorphism);
        }
        Ok(hom)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> ModuleHom {
        debug_assert_eq!(matrix.shape(), (target.dim, source.dim));
        ModuleHom { source, target, matrix }
    }

    pub fn identity(m: &Module) -> ModuleHom {
        ModuleHom { source: m.clone(), target: m.clone(), matrix: Matrix::identity(m.field(), m.dim) }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.field(), target.dim, source.dim),
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `matrix * rho_source(e_i) = rho_target(e_i) * matrix` for all `i`.
    pub fn intertwines(&self) -> bool {
        self.source
            .action
            .iter()
            .zip(&self.target.action)
            .all(|(s, t)| self.matrix.mul(s) == t.mul(&self.matrix))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleHom) -> ModuleHom {
        assert_eq!(first.target.dim, self.source.dim, "composition shape mismatch");
        ModuleHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleHom {
        ModuleHom { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn neg(&self) -> ModuleHom {
        ModuleHom { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.neg() }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }
}

/// The submodule spanned by the (independent, invariant) columns of `basis`, with its inclusion.
pub(crate) fn submodule(m: &Module, basis: &Matrix) -> Result<(Module, ModuleHom), Error> {
    let action = m
        .action
        .iter()
        .map(|a| match solve_right(basis, &a.mul(basis))? {
            Solve::Solved(x) => Ok(x),
            Solve::Unsolvable { .. } => Err(Error::InvalidModule("subspace is not a submodule".into())),
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let sub = Module { algebra: m.algebra.clone(), dim: basis.cols(), action };
    let incl = ModuleHom::new_unchecked(sub.clone(), m.clone(), basis.clone());
    Ok((sub, incl))
}

pub(crate) fn kernel(f: &ModuleHom) -> (Module, ModuleHom) {
    let basis = kernel_basis(&f.matrix);
    submodule(&f.source, &basis).expect("kernel of a module map is a submodule")
}

/// Result of forming `M / S`.
#[derive(Clone, Debug)]
pub(crate) struct Quotient {
    pub module: Module,
    pub projection: ModuleHom,
    /// Linear (not necessarily `A`-linear) section of the projection.
    pub lift: Matrix,
}

impl Quotient {
    /// The map out of the quotient induced by `phi`, which must vanish on the submodule.
    pub fn induced(&self, phi: &ModuleHom) -> ModuleHom {
        ModuleHom::new_unchecked(self.module.clone(), phi.target.clone(), phi.matrix.mul(&self.lift))
    }
}

/// Quotient by the span of the invariant columns of `s` (need not be independent).
pub(crate) fn quotient(m: &Module, s: &Matrix) -> Quotient {
    let sb = s.column_basis();
    let q = quotient_structure(m.dim, &sb).expect("column basis is independent");
    let action = m.action.iter().map(|a| q.projection.mul(a).mul(&q.lift)).collect();
    let module = Module { algebra: m.algebra.clone(), dim: q.quotient_dim, action };
    let projection = ModuleHom::new_unchecked(m.clone(), module.clone(), q.projection);
    Quotient { module, projection, lift: q.lift }
}

pub(crate) fn cokernel(f: &ModuleHom) -> Quotient {
    quotient(&f.target, &f.matrix)
}

/// Factors `f` through the submodule inclusion `incl` (image of `f` must lie in it).
pub(crate) fn corestrict(f: &ModuleHom, incl: &ModuleHom) -> Result<ModuleHom, Error> {
    match solve_right(&incl.matrix, &f.matrix)? {
        Solve::Solved(x) => Ok(ModuleHom::new_unchecked(f.source.clone(), incl.source.clone(), x)),
        Solve::Unsolvable { .. } => Err(Error::Internal("image does not lie in the submodule")),
    }
}

/// A finite direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> DirectSum {
    let f = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| Matrix::block_diag(f, &parts.iter().map(|p| p.action[i].clone()).collect::<Vec<_>>()))
        .collect();
    let total: usize = parts.iter().map(|p| p.dim).sum();
    let module = Module { algebra: algebra.clone(), dim: total, action };
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        let mut inj = Matrix::zeros(f, total, p.dim);
        inj.paste(offset, 0, &Matrix::identity(f, p.dim));
        injections.push(ModuleHom::new_unchecked(p.clone(), module.clone(), inj.clone()));
        projections.push(ModuleHom::new_unchecked(module.clone(), p.clone(), inj.transpose()));
        offset += p.dim;
    }
    DirectSum { module, injections, projections }
}

/// Pushout of `left: X -> Y` and `right: X -> Z`, i.e. `(Y ⊕ Z) / {(left x, -right x)}`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: Module,
    pub from_left: ModuleHom,
    pub from_right: ModuleHom,
    pub(crate) quotient: Quotient,
}

impl Pushout {
    /// The map out of the pushout induced by a compatible pair `(u: Y -> W, v: Z -> W)`.
    pub fn induced(&self, u: &ModuleHom, v: &ModuleHom) -> ModuleHom {
        let sum = ModuleHom::new_unchecked(
            self.quotient.projection.source().clone(),
            u.target.clone(),
            u.matrix.hstack(&v.matrix),
        );
        self.quotient.induced(&sum)
    }
}

pub(crate) fn pushout(left: &ModuleHom, right: &ModuleHom) -> Pushout {
    let algebra = left.source.algebra.clone();
    let ds = direct_sum(&algebra, &[left.target.clone(), right.target.clone()]);
    let rel = left.matrix.vstack(&right.matrix.neg());
    let quotient = quotient(&ds.module, &rel);
    let from_left = quotient.projection.compose(&ds.injections[0]);
    let from_right = quotient.projection.compose(&ds.injections[1]);
    Pushout { module: quotient.module.clone(), from_left, from_right, quotient }
}
