//! Bounded cochain complexes of modules (differentials raise degree).
//!
//! `Σ(X)^n = X^{n+1}` with negated differential; `D^n(M)` is `M --id--> M`
//! in degrees `n, n+1`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    cokernel, corestrict, direct_sum, hom_space_matrix, kernel, Algebra, Module, ModuleHom,
};
use crate::error::Error;
use crate::exactlin::{extend_independent, solve_right, split_section, Matrix, Solve};
use crate::field::Scalar;
use crate::gorenstein::{
    complete_resolution, cosyzygy, fpd_hull, is_gorenstein_projective, short_exact, CompleteResolutionWindow,
    GorensteinContext, StableObject,
};
use crate::resolve::{free_cover, is_projective, proj_dim_upto, split_epi, ProjDim};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    algebra: Arc<Algebra>,
    lo: i64,
    components: Vec<Module>,
    /// `d^n` for `n = lo..hi`.
    differentials: Vec<ModuleHom>,
    zero: Module,
}

/// First violated complex axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexViolation {
    InvalidComponent { degree: i64 },
    NotAHomomorphism { degree: i64 },
    /// `d^{degree+1} ∘ d^degree != 0`
    SquareNonzero { degree: i64 },
}

impl ChainComplex {
    /// Components in degrees `lo, lo+1, ...` and the matrices of `d^lo, d^{lo+1}, ...`.
    pub fn new(algebra: Arc<Algebra>, lo: i64, components: Vec<Module>, differentials: Vec<Matrix>) -> Result<ChainComplex, Error> {
        if components.is_empty() {
            return Err(Error::InvalidComplex("no components".into()));
        }
        if differentials.len() + 1 != components.len() {
            return Err(Error::InvalidComplex(format!(
                "{} components need {} differentials, got {}",
                components.len(),
                components.len() - 1,
                differentials.len()
            )));
        }
        if components.iter().any(|c| *c.algebra().as_ref() != *algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let components: Vec<Module> = components.iter().map(|c| c.rebased(&algebra)).collect();
        let mut homs = Vec::with_capacity(differentials.len());
        for (i, d) in differentials.into_iter().enumerate() {
            let (s, t) = (&components[i], &components[i + 1]);
            if d.shape() != (t.dim(), s.dim()) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} has shape {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    t.dim(),
                    s.dim()
                )));
            }
            if d.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
            homs.push(ModuleHom::new_unchecked(s.clone(), t.clone(), d));
        }
        let zero = Module::zero(&algebra);
        Ok(ChainComplex { algebra, lo, components, differentials: homs, zero })
    }

    pub(crate) fn from_homs(algebra: &Arc<Algebra>, lo: i64, components: Vec<Module>, differentials: Vec<ModuleHom>) -> ChainComplex {
        debug_assert_eq!(components.len(), differentials.len() + 1);
        ChainComplex { algebra: algebra.clone(), lo, components, differentials, zero: Module::zero(algebra) }
    }

    pub fn zero(algebra: &Arc<Algebra>) -> ChainComplex {
        ChainComplex::concentrated(&Module::zero(algebra), 0)
    }

    /// `M` in degree `n`.
    pub fn concentrated(m: &Module, n: i64) -> ChainComplex {
        ChainComplex::from_homs(m.algebra(), n, vec![m.clone()], Vec::new())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn components(&self) -> &[Module] {
        &self.components
    }

    pub fn differentials(&self) -> &[ModuleHom] {
        &self.differentials
    }

    pub fn component(&self, n: i64) -> &Module {
        if n < self.lo || n > self.hi() {
            &self.zero
        } else {
            &self.components[(n - self.lo) as usize]
        }
    }

    /// `d^n`, the zero map outside `[lo, hi)`.
    pub fn differential(&self, n: i64) -> ModuleHom {
        if n < self.lo || n >= self.hi() {
            ModuleHom::zero(self.component(n), self.component(n + 1))
        } else {
            self.differentials[(n - self.lo) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Module::is_zero)
    }

    /// `Z^n = ker d^n` with its inclusion.
    pub fn cycles(&self, n: i64) -> (Module, ModuleHom) {
        kernel(&self.differential(n))
    }
}

pub fn validate_complex(x: &ChainComplex) -> Result<(), ComplexViolation> {
    for (i, c) in x.components.iter().enumerate() {
        if crate::algebra::validate_module(c).is_err() {
            return Err(ComplexViolation::InvalidComponent { degree: x.lo + i as i64 });
        }
    }
    for (i, d) in x.differentials.iter().enumerate() {
        if !d.intertwines() {
            return Err(ComplexViolation::NotAHomomorphism { degree: x.lo + i as i64 });
        }
    }
    for (i, w) in x.differentials.windows(2).enumerate() {
        if !w[1].compose(&w[0]).is_zero() {
            return Err(ComplexViolation::SquareNonzero { degree: x.lo + i as i64 });
        }
    }
    Ok(())
}

/// `dim H^n(X)`.
pub fn homology(x: &ChainComplex, n: i64) -> usize {
    let out = x.differential(n);
    let inc = x.differential(n - 1);
    x.component(n).dim() - out.rank() - inc.rank()
}

/// The lowest degree with nonzero homology, if any.
pub fn first_homology(x: &ChainComplex) -> Option<i64> {
    (x.lo()..=x.hi()).find(|&n| homology(x, n) != 0)
}

pub fn is_acyclic(x: &ChainComplex) -> bool {
    first_homology(x).is_none()
}

/// `Σ^k X`: `(Σ^k X)^n = X^{n+k}`, differentials multiplied by `(-1)^k`.
pub fn shift(x: &ChainComplex, k: i64) -> ChainComplex {
    let diffs = if k.rem_euclid(2) == 1 {
        x.differentials.iter().map(ModuleHom::neg).collect()
    } else {
        x.differentials.clone()
    };
    ChainComplex::from_homs(&x.algebra, x.lo - k, x.components.clone(), diffs)
}

pub fn suspension(x: &ChainComplex) -> ChainComplex {
    shift(x, 1)
}

/// `D^n(M) = M --id--> M` in degrees `n, n+1`.
pub fn disk_complex(m: &Module, n: i64) -> ChainComplex {
    ChainComplex::from_homs(m.algebra(), n, vec![m.clone(), m.clone()], vec![ModuleHom::identity(m)])
}

/// Degreewise direct sum.
pub fn direct_sum_complex(parts: &[ChainComplex]) -> ChainComplex {
    let a = parts[0].algebra.clone();
    let lo = parts.iter().map(ChainComplex::lo).min().unwrap();
    let hi = parts.iter().map(ChainComplex::hi).max().unwrap();
    let sums: Vec<_> = (lo..=hi)
        .map(|n| direct_sum(&a, &parts.iter().map(|p| p.component(n).clone()).collect::<Vec<_>>()))
        .collect();
    let k = a.field();
    let diffs = (lo..hi)
        .map(|n| {
            let blocks: Vec<Matrix> = parts.iter().map(|p| p.differential(n).matrix().clone()).collect();
            let (s, t) = (&sums[(n - lo) as usize].module, &sums[(n - lo + 1) as usize].module);
            ModuleHom::new_unchecked(s.clone(), t.clone(), Matrix::block_diag(k, &blocks))
        })
        .collect();
    ChainComplex::from_homs(&a, lo, sums.into_iter().map(|s| s.module).collect(), diffs)
}

/// The window as a complex supported on `[-radius, radius+1]`.
pub fn window_complex(w: &CompleteResolutionWindow) -> ChainComplex {
    let a = w.components[0].algebra().clone();
    ChainComplex::from_homs(&a, w.lo(), w.components.clone(), w.differentials.clone())
}

/// `0 -> Z^a -> T^a -> ... -> T^b -> Z^{b+1} -> 0`, with `Z^a` in degree `a - 1`.
pub fn window_closure(w: &CompleteResolutionWindow, a: i64, b: i64) -> Result<ChainComplex, Error> {
    let r = w.radius as i64;
    if a < -r || b + 1 > r || a > b {
        return Err(Error::WindowTooSmall { window: w.radius, gdim: w.gdim });
    }
    let alg = w.components[0].algebra().clone();
    let (za, ia) = w.cycles[(a + r) as usize].clone();
    let (zb, ib) = w.cycles[(b + 1 + r) as usize].clone();
    let mut components = vec![za];
    let mut diffs = vec![ia];
    for j in a..=b {
        components.push(w.component(j).clone());
        if j < b {
            diffs.push(w.differential(j).clone());
        }
    }
    diffs.push(corestrict(w.differential(b), &ib)?);
    components.push(zb);
    Ok(ChainComplex::from_homs(&alg, a - 1, components, diffs))
}

/// `f^n: X^n -> Y^n` for `n = lo..lo + components.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub lo: i64,
    pub components: Vec<Matrix>,
}

impl ChainMap {
    pub fn component(&self, n: i64) -> Option<&Matrix> {
        if n < self.lo {
            return None;
        }
        self.components.get((n - self.lo) as usize)
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let k = x.algebra.field();
        ChainMap { lo: x.lo, components: x.components.iter().map(|c| Matrix::identity(k, c.dim())).collect() }
    }

    /// Components are `A`-linear and commute with the differentials inside the support.
    pub fn is_chain_map(&self, x: &ChainComplex, y: &ChainComplex) -> bool {
        let hi = self.lo + self.components.len() as i64 - 1;
        for n in self.lo..=hi {
            let f = self.component(n).unwrap();
            let h = ModuleHom::new_unchecked(x.component(n).clone(), y.component(n).clone(), f.clone());
            if f.shape() != (y.component(n).dim(), x.component(n).dim()) || !h.intertwines() {
                return false;
            }
            if n < hi {
                let g = self.component(n + 1).unwrap();
                if y.differential(n).matrix().mul(f) != g.mul(x.differential(n).matrix()) {
                    return false;
                }
            }
        }
        true
    }
}

/// `[X, Y]` over a degree range: chain maps modulo nullhomotopic ones.
#[derive(Clone, Debug)]
pub struct HomotopyClassSpace {
    pub lo: i64,
    pub hi: i64,
    pub chain_maps_dim: usize,
    pub nullhomotopic_dim: usize,
    /// Chain maps whose classes form a basis of the quotient.
    pub representatives: Vec<ChainMap>,
    nullhomotopic: Matrix,
    layout: Layout,
}

impl HomotopyClassSpace {
    pub fn quotient_dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_nullhomotopic(&self, f: &ChainMap) -> bool {
        let v = self.layout.flatten(f);
        self.nullhomotopic.spans(&Matrix::column_vector(self.nullhomotopic.field(), v))
    }
}

// Offsets of vec(f^n) inside one flat coordinate vector.
#[derive(Clone, Debug)]
struct Layout {
    lo: i64,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    total: usize,
    field: crate::field::Field,
}

impl Layout {
    fn new(x: &ChainComplex, y: &ChainComplex, a: i64, b: i64) -> Layout {
        let mut shapes = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for n in a..=b {
            let s = (y.component(n).dim(), x.component(n).dim());
            offsets.push(total);
            total += s.0 * s.1;
            shapes.push(s);
        }
        Layout { lo: a, shapes, offsets, total, field: x.algebra.field() }
    }

    fn idx(&self, n: i64) -> Option<usize> {
        if n < self.lo || n >= self.lo + self.shapes.len() as i64 {
            None
        } else {
            Some((n - self.lo) as usize)
        }
    }

    fn add_block(&self, v: &mut [Scalar], n: i64, m: &Matrix) {
        if let Some(i) = self.idx(n) {
            let off = self.offsets[i];
            for (t, e) in m.vectorize().into_iter().enumerate() {
                v[off + t] = self.field.add(&v[off + t], &e);
            }
        }
    }

    fn flatten(&self, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.total];
        for (i, _) in self.shapes.iter().enumerate() {
            let n = self.lo + i as i64;
            if let Some(m) = f.component(n) {
                self.add_block(&mut v, n, m);
            }
        }
        v
    }

    fn unflatten(&self, v: &[Scalar]) -> ChainMap {
        let components = self
            .shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &off)| Matrix::from_vectorized(self.field, r, c, &v[off..off + r * c]))
            .collect();
        ChainMap { lo: self.lo, components }
    }
}

/// Chain maps `X -> Y` on degrees `[a, b]` modulo `d s + s d` with `s^j: X^j -> Y^{j-1}`,
/// `j = a..=b+1`. Differentials leaving the range are taken from the complexes.
pub fn hom_classes_on(x: &ChainComplex, y: &ChainComplex, a: i64, b: i64) -> Result<HomotopyClassSpace, Error> {
    if *x.algebra != *y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let k = x.algebra.field();
    let layout = Layout::new(x, y, a, b);
    // Hom_A(X^n, Y^n) bases, flattened
    let mut hom_cols: Vec<Vec<Scalar>> = Vec::new();
    let mut constraint_cols: Vec<Vec<Scalar>> = Vec::new();
    let con_layout = if b > a { Some(Layout::new(x, y, a, b - 1)) } else { None };
    let con_rows: usize = (a..b).map(|n| y.component(n + 1).dim() * x.component(n).dim()).sum();
    let con_offsets: Vec<usize> = (a..b)
        .scan(0, |acc, n| {
            let o = *acc;
            *acc += y.component(n + 1).dim() * x.component(n).dim();
            Some(o)
        })
        .collect();
    let _ = con_layout;
    for n in a..=b {
        let (xs, ys) = (x.component(n), y.component(n));
        let basis = hom_space_matrix(xs, ys)?;
        for j in 0..basis.cols() {
            let f = Matrix::from_vectorized(k, ys.dim(), xs.dim(), &basis.column(j));
            let mut v = vec![k.zero(); layout.total];
            layout.add_block(&mut v, n, &f);
            hom_cols.push(v);
            // constraint at n: d_Y^n f^n - f^{n+1} d_X^n ; at n-1: -f^n d_X^{n-1}
            let mut c = vec![k.zero(); con_rows];
            if n < b {
                let m = y.differential(n).matrix().mul(&f);
                let off = con_offsets[(n - a) as usize];
                for (t, e) in m.vectorize().into_iter().enumerate() {
                    c[off + t] = k.add(&c[off + t], &e);
                }
            }
            if n > a {
                let m = f.mul(x.differential(n - 1).matrix()).neg();
                let off = con_offsets[(n - 1 - a) as usize];
                for (t, e) in m.vectorize().into_iter().enumerate() {
                    c[off + t] = k.add(&c[off + t], &e);
                }
            }
            constraint_cols.push(c);
        }
    }
    let homs = Matrix::from_columns(k, layout.total, &hom_cols);
    let constraints = Matrix::from_columns(k, con_rows, &constraint_cols);
    let chain_maps = homs.mul(&constraints.kernel_basis());
    let mut null_cols = Vec::new();
    for j in a..=b + 1 {
        let (xs, ys) = (x.component(j), y.component(j - 1));
        let basis = hom_space_matrix(xs, ys)?;
        for c in 0..basis.cols() {
            let s = Matrix::from_vectorized(k, ys.dim(), xs.dim(), &basis.column(c));
            let mut v = vec![k.zero(); layout.total];
            layout.add_block(&mut v, j - 1, &s.mul(x.differential(j - 1).matrix()));
            layout.add_block(&mut v, j, &y.differential(j - 1).matrix().mul(&s));
            null_cols.push(v);
        }
    }
    let nullhomotopic = Matrix::from_columns(k, layout.total, &null_cols).column_basis();
    let representatives = extend_independent(&nullhomotopic, &chain_maps)
        .into_iter()
        .map(|j| layout.unflatten(&chain_maps.column(j)))
        .collect();
    Ok(HomotopyClassSpace {
        lo: a,
        hi: b,
        chain_maps_dim: chain_maps.cols(),
        nullhomotopic_dim: nullhomotopic.cols(),
        representatives,
        nullhomotopic,
        layout,
    })
}

/// `[X, Y]` over the union of the supports.
pub fn homotopy_classes(x: &ChainComplex, y: &ChainComplex) -> Result<HomotopyClassSpace, Error> {
    hom_classes_on(x, y, x.lo.min(y.lo), x.hi().max(y.hi()))
}

/// Homotopy classes between two complete-resolution windows of equal radius, on the
/// interior degrees `[-radius+1, radius-1]`.
pub fn window_homotopy_classes(s: &CompleteResolutionWindow, t: &CompleteResolutionWindow) -> Result<HomotopyClassSpace, Error> {
    if s.radius != t.radius {
        return Err(Error::InvalidComplex("windows of different radii".into()));
    }
    let r = s.radius as i64;
    hom_classes_on(&window_complex(s), &window_complex(t), -r + 1, r - 1)
}

/// `[Z, ΣX]`, which computes degreewise split extensions of `Z` by `X`.
pub fn ext1_dw(z: &ChainComplex, x: &ChainComplex) -> Result<usize, Error> {
    Ok(homotopy_classes(z, &suspension(x))?.quotient_dim())
}

/// `s^j: X^j -> Y^{j-1}` with `f = d s + s d` on `[a, b]`, if any.
pub fn find_nullhomotopy(x: &ChainComplex, y: &ChainComplex, f: &ChainMap, a: i64, b: i64) -> Result<Option<Vec<Matrix>>, Error> {
    let k = x.algebra.field();
    let layout = Layout::new(x, y, a, b);
    let mut cols = Vec::new();
    let mut owners = Vec::new();
    let mut bases = Vec::new();
    for j in a..=b + 1 {
        let (xs, ys) = (x.component(j), y.component(j - 1));
        let basis = hom_space_matrix(xs, ys)?;
        for c in 0..basis.cols() {
            let s = Matrix::from_vectorized(k, ys.dim(), xs.dim(), &basis.column(c));
            let mut v = vec![k.zero(); layout.total];
            layout.add_block(&mut v, j - 1, &s.mul(x.differential(j - 1).matrix()));
            layout.add_block(&mut v, j, &y.differential(j - 1).matrix().mul(&s));
            cols.push(v);
            owners.push((j, c));
        }
        bases.push(basis);
    }
    let system = Matrix::from_columns(k, layout.total, &cols);
    let rhs = Matrix::column_vector(k, layout.flatten(f));
    match solve_right(&system, &rhs)? {
        Solve::Unsolvable { .. } => Ok(None),
        Solve::Solved(sol) => {
            let mut out: Vec<Matrix> = (a..=b + 1)
                .map(|j| Matrix::zeros(k, y.component(j - 1).dim(), x.component(j).dim()))
                .collect();
            for (row, &(j, c)) in owners.iter().enumerate() {
                let coef = sol.get(row, 0);
                if k.is_zero(coef) {
                    continue;
                }
                let i = (j - a) as usize;
                let (r, cc) = out[i].shape();
                let s = Matrix::from_vectorized(k, r, cc, &bases[i].column(c));
                out[i] = out[i].add(&s.scale(coef));
            }
            Ok(Some(out))
        }
    }
}

/// Evidence for [`is_contractible`].
#[derive(Clone, Debug)]
pub enum Contractibility {
    NotAcyclic { degree: i64 },
    /// `0 -> Z^n -> X^n -> Z^{n+1} -> 0` splits for every `n`, and `id = d s + s d`.
    Contractible { sections: Vec<ModuleHom>, homotopy: Vec<Matrix> },
    /// The sequence at `degree` does not split, and no nullhomotopy of the identity exists.
    NotContractible { degree: i64 },
}

impl Contractibility {
    pub fn is_contractible(&self) -> bool {
        matches!(self, Contractibility::Contractible { .. })
    }
}

/// Split test on the syzygy sequences, cross-checked against a nullhomotopy of the identity.
pub fn is_contractible(x: &ChainComplex) -> Result<Contractibility, Error> {
    if let Some(degree) = first_homology(x) {
        return Ok(Contractibility::NotAcyclic { degree });
    }
    let mut sections = Vec::new();
    let mut failed = None;
    for n in x.lo..=x.hi() {
        let (_, inc) = x.cycles(n + 1);
        let onto = corestrict(&x.differential(n), &inc)?;
        match split_epi(&onto) {
            Ok(s) => sections.push(s),
            Err(_) => {
                failed = Some(n);
                break;
            }
        }
    }
    let homotopy = find_nullhomotopy(x, x, &ChainMap::identity(x), x.lo, x.hi())?;
    match (failed, homotopy) {
        (None, Some(homotopy)) => Ok(Contractibility::Contractible { sections, homotopy }),
        (Some(degree), None) => Ok(Contractibility::NotContractible { degree }),
        _ => Err(Error::Internal("split test and nullhomotopy test disagree")),
    }
}

/// A class of modules used to form `dw` and `tilde` classes of complexes.
#[derive(Clone, Debug)]
pub enum ClassOracle {
    Projective,
    GorensteinProjective(GorensteinContext),
    /// Finite projective dimension, searched up to the declared Gorenstein dimension.
    FinitePd(GorensteinContext),
    All,
}

impl ClassOracle {
    pub fn name(&self) -> &'static str {
        match self {
            ClassOracle::Projective => "projective",
            ClassOracle::GorensteinProjective(_) => "gorenstein-projective",
            ClassOracle::FinitePd(_) => "finite-pd",
            ClassOracle::All => "all",
        }
    }

    pub fn holds(&self, m: &Module) -> Result<bool, Error> {
        Ok(match self {
            ClassOracle::Projective => is_projective(m).is_projective(),
            ClassOracle::GorensteinProjective(ctx) => is_gorenstein_projective(ctx, m)?.is_gorenstein_projective(),
            ClassOracle::FinitePd(ctx) => matches!(proj_dim_upto(m, ctx.gdim), ProjDim::Finite(_)),
            ClassOracle::All => true,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// Every component in the class.
    Dw,
    /// Acyclic with every cycle module in the class.
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// First degree whose component (dw) or cycle module (tilde) fails the oracle.
    pub failing_degree: Option<i64>,
    /// First degree with homology, for tilde.
    pub homology_degree: Option<i64>,
}

pub fn class_membership(x: &ChainComplex, oracle: &ClassOracle, kind: ClassKind) -> Result<Membership, Error> {
    match kind {
        ClassKind::Dw => {
            for n in x.lo..=x.hi() {
                if !oracle.holds(x.component(n))? {
                    return Ok(Membership { member: false, failing_degree: Some(n), homology_degree: None });
                }
            }
            Ok(Membership { member: true, failing_degree: None, homology_degree: None })
        }
        ClassKind::Tilde => {
            if let Some(h) = first_homology(x) {
                return Ok(Membership { member: false, failing_degree: None, homology_degree: Some(h) });
            }
            for n in x.lo..=x.hi() {
                if !oracle.holds(&x.cycles(n).0)? {
                    return Ok(Membership { member: false, failing_degree: Some(n), homology_degree: None });
                }
            }
            Ok(Membership { member: true, failing_degree: None, homology_degree: None })
        }
    }
}

/// Why [`dg_test`] rejected a complex.
#[derive(Clone, Debug)]
pub enum DgWitness {
    /// The component in `degree` is outside the left class.
    Degreewise { degree: i64 },
    /// `map` is a chain map into family member `member` that is not nullhomotopic.
    Homotopy { member: usize, map: ChainMap },
}

#[derive(Clone, Debug)]
pub enum DgVerdict {
    /// `[X, D] = 0` for every member of the family; evidence relative to the family only.
    Pass { family_size: usize },
    Fail(DgWitness),
}

impl DgVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, DgVerdict::Pass { .. })
    }
}

/// Semi-decision for `X ∈ dg(left)`: degreewise membership plus vanishing homotopy classes
/// into a finite family from `tilde(right)`.
pub fn dg_test(x: &ChainComplex, left: &ClassOracle, right: &ClassOracle, family: &[ChainComplex]) -> Result<DgVerdict, Error> {
    for (index, d) in family.iter().enumerate() {
        if !class_membership(d, right, ClassKind::Tilde)?.member {
            return Err(Error::InvalidFamilyMember { index });
        }
    }
    if let Some(degree) = class_membership(x, left, ClassKind::Dw)?.failing_degree {
        if left.holds(x.component(degree))? {
            return Err(Error::Internal("degreewise witness does not fail the oracle"));
        }
        return Ok(DgVerdict::Fail(DgWitness::Degreewise { degree }));
    }
    for (member, d) in family.iter().enumerate() {
        let classes = homotopy_classes(x, d)?;
        if let Some(map) = classes.representatives.first() {
            let (a, b) = (classes.lo, classes.hi);
            if !map.is_chain_map(x, d) || find_nullhomotopy(x, d, map, a, b)?.is_some() {
                return Err(Error::Internal("homotopy witness failed verification"));
            }
            return Ok(DgVerdict::Fail(DgWitness::Homotopy { member, map: map.clone() }));
        }
    }
    Ok(DgVerdict::Pass { family_size: family.len() })
}

/// Disks on the seeds in degrees `lo..hi`, bounded closures of the seeds' complete
/// resolutions (one and two free terms), and their shifts by `±1`.
pub fn standard_family(ctx: &GorensteinContext, seeds: &[Module], lo: i64, hi: i64) -> Result<Vec<ChainComplex>, Error> {
    let mut out = Vec::new();
    for m in seeds {
        for n in lo..hi {
            out.push(disk_complex(m, n));
        }
    }
    for m in seeds {
        let w = complete_resolution(ctx, m, ctx.gdim + 2)?;
        if w.is_zero() {
            continue;
        }
        for (a, b) in [(0, 0), (0, 1)] {
            let c = window_closure(&w, a, b)?;
            out.push(shift(&c, -1));
            out.push(shift(&c, 1));
            out.push(c);
        }
    }
    Ok(out)
}

/// `0 -> X -> F -> C -> 0` with `F` acyclic with cycles of finite projective dimension and
/// `C` acyclic with Gorenstein-projective cycles.
#[derive(Clone, Debug)]
pub struct WeakTrivialityWitness {
    pub f: ChainComplex,
    pub c: ChainComplex,
    pub into: ChainMap,
    pub onto: ChainMap,
}

impl WeakTrivialityWitness {
    /// Exactness in every degree, chain-map checks and both class memberships.
    pub fn verify(&self, ctx: &GorensteinContext, x: &ChainComplex) -> Result<bool, Error> {
        let mut ok = validate_complex(&self.f).is_ok() && validate_complex(&self.c).is_ok();
        ok &= self.into.is_chain_map(x, &self.f) && self.onto.is_chain_map(&self.f, &self.c);
        for n in x.lo..=x.hi() {
            let (Some(i), Some(p)) = (self.into.component(n), self.onto.component(n)) else {
                return Ok(false);
            };
            let i = ModuleHom::new_unchecked(x.component(n).clone(), self.f.component(n).clone(), i.clone());
            let p = ModuleHom::new_unchecked(self.f.component(n).clone(), self.c.component(n).clone(), p.clone());
            ok &= short_exact(&i, &p);
        }
        ok &= class_membership(&self.f, &ClassOracle::FinitePd(ctx.clone()), ClassKind::Tilde)?.member;
        ok &= class_membership(&self.c, &ClassOracle::GorensteinProjective(ctx.clone()), ClassKind::Tilde)?.member;
        Ok(ok)
    }
}

pub fn witness_weak_triviality(ctx: &GorensteinContext, x: &ChainComplex) -> Result<WeakTrivialityWitness, Error> {
    if *x.algebra != *ctx.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if !is_acyclic(x) {
        return Err(Error::NotAcyclic);
    }
    let k = x.algebra.field();
    let zero_c = ChainComplex::from_homs(
        &x.algebra,
        x.lo,
        vec![x.zero.clone(); x.components.len()],
        vec![ModuleHom::zero(&x.zero, &x.zero); x.differentials.len()],
    );
    let zero_map = |from: &ChainComplex| ChainMap {
        lo: x.lo,
        components: from.components.iter().map(|c| Matrix::zeros(k, 0, c.dim())).collect(),
    };
    if x.is_zero() || class_membership(x, &ClassOracle::Projective, ClassKind::Tilde)?.member {
        let w = WeakTrivialityWitness { f: x.clone(), onto: zero_map(x), c: zero_c, into: ChainMap::identity(x) };
        return Ok(w);
    }
    let (lo, hi) = (x.lo, x.hi());
    let cycles: Vec<(Module, ModuleHom)> = (lo..=hi + 1).map(|n| x.cycles(n)).collect();
    let hulls = cycles.iter().map(|(z, _)| fpd_hull(ctx, z)).collect::<Result<Vec<_>, _>>()?;
    let mut ext_modules = Vec::new();
    let mut into = Vec::new();
    for n in lo..=hi {
        let i = (n - lo) as usize;
        let (e, phi) = extension_step(x, n, &cycles[i], &cycles[i + 1], &hulls[i].embedding, &hulls[i + 1].embedding)?;
        ext_modules.push(e);
        into.push(phi);
    }
    let mut f_diffs = Vec::new();
    for n in lo..hi {
        let i = (n - lo) as usize;
        let (h1, h2) = (hulls[i + 1].hull.dim(), hulls[i + 2].hull.dim());
        let (s, t) = (&ext_modules[i], &ext_modules[i + 1]);
        let mut d = Matrix::zeros(k, t.dim(), s.dim());
        d.paste(0, hulls[i].hull.dim(), &Matrix::identity(k, h1));
        debug_assert_eq!(t.dim(), h1 + h2);
        f_diffs.push(ModuleHom::new_unchecked(s.clone(), t.clone(), d));
    }
    let f = ChainComplex::from_homs(&x.algebra, lo, ext_modules.clone(), f_diffs);
    let quotients: Vec<_> = (lo..=hi)
        .map(|n| {
            let i = (n - lo) as usize;
            cokernel(&ModuleHom::new_unchecked(x.component(n).clone(), ext_modules[i].clone(), into[i].clone()))
        })
        .collect();
    let c_diffs = (lo..hi)
        .map(|n| {
            let i = (n - lo) as usize;
            quotients[i].induced(&quotients[i + 1].projection.compose(&f.differential(n)))
        })
        .collect();
    let c = ChainComplex::from_homs(&x.algebra, lo, quotients.iter().map(|q| q.module.clone()).collect(), c_diffs);
    let onto = ChainMap { lo, components: quotients.iter().map(|q| q.projection.matrix().clone()).collect() };
    let w = WeakTrivialityWitness { f, c, into: ChainMap { lo, components: into }, onto };
    if !w.verify(ctx, x)? {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "weak triviality witness" });
    }
    Ok(w)
}

// E^n = H^n ⊕ H^{n+1} with action [[ρ_H, δ], [0, ρ_H']] containing X^n = Z^n ⊕ Z^{n+1}
// (adapted basis) through [[h_n, t], [0, h_{n+1}]].
fn extension_step(
    x: &ChainComplex,
    n: i64,
    z: &(Module, ModuleHom),
    z_next: &(Module, ModuleHom),
    h: &ModuleHom,
    h_next: &ModuleHom,
) -> Result<(Module, Matrix), Error> {
    let a = x.algebra.clone();
    let k = a.field();
    let na = a.dim();
    let xn = x.component(n);
    let onto = corestrict(&x.differential(n), &z_next.1)?;
    let lift = split_section(onto.matrix()).ok_or(Error::Internal("cycle corestriction is not onto"))?;
    let basis = z.1.matrix().hstack(&lift);
    let inv = basis.inverse().ok_or(Error::Internal("adapted basis is singular"))?;
    let (zd, z1d) = (z.0.dim(), z_next.0.dim());
    let (hm, hm1) = (h.target(), h_next.target());
    let (hd, h1d) = (hm.dim(), hm1.dim());
    let delta_x: Vec<Matrix> = (0..na).map(|i| inv.mul(xn.action(i)).mul(&basis).block(0, zd, zd, z1d)).collect();
    // unknowns: δ(e_i) (hd x h1d each), then t (hd x z1d)
    let dsz = hd * h1d;
    let unknowns = na * dsz + hd * z1d;
    let eq_cocycle = na * na * dsz;
    let eq_unit = dsz;
    let eq_compat = na * hd * z1d;
    let rows = eq_cocycle + eq_unit + eq_compat;
    let mut sys = Matrix::zeros(k, rows, unknowns);
    let mut rhs = Matrix::zeros(k, rows, 1);
    let put = |sys: &mut Matrix, row0: usize, col: usize, m: &Matrix| {
        for (t, e) in m.vectorize().into_iter().enumerate() {
            if !k.is_zero(&e) {
                let cur = sys.get(row0 + t, col).clone();
                sys.set(row0 + t, col, k.add(&cur, &e));
            }
        }
    };
    for u in 0..unknowns {
        if u < na * dsz {
            let l = u / dsz;
            let off = u % dsz;
            let mut dl = Matrix::zeros(k, hd, h1d);
            dl.set(off / h1d, off % h1d, k.one());
            // δ(e_i e_j) - ρ_H(e_i) δ(e_j) - δ(e_i) ρ_H'(e_j) = 0
            for i in 0..na {
                for j in 0..na {
                    let row0 = (i * na + j) * dsz;
                    let c = &a.basis_product(i, j)[l];
                    if !k.is_zero(c) {
                        put(&mut sys, row0, u, &dl.scale(c));
                    }
                    if j == l {
                        put(&mut sys, row0, u, &hm.action(i).mul(&dl).neg());
                    }
                    if i == l {
                        put(&mut sys, row0, u, &dl.mul(hm1.action(j)).neg());
                    }
                }
            }
            let c = &a.unit()[l];
            if !k.is_zero(c) {
                put(&mut sys, eq_cocycle, u, &dl.scale(c));
            }
            // compatibility: δ(e_l) h_{n+1}
            put(&mut sys, eq_cocycle + eq_unit + l * hd * z1d, u, &dl.mul(h_next.matrix()));
        } else {
            let off = u - na * dsz;
            let mut t = Matrix::zeros(k, hd, z1d);
            t.set(off / z1d, off % z1d, k.one());
            for i in 0..na {
                let m = hm.action(i).mul(&t).sub(&t.mul(z_next.0.action(i)));
                put(&mut sys, eq_cocycle + eq_unit + i * hd * z1d, u, &m);
            }
        }
    }
    for i in 0..na {
        let m = h.matrix().mul(&delta_x[i]);
        let row0 = eq_cocycle + eq_unit + i * hd * z1d;
        for (t, e) in m.vectorize().into_iter().enumerate() {
            rhs.set(row0 + t, 0, e);
        }
    }
    let sol = match solve_right(&sys, &rhs)? {
        Solve::Solved(s) => s,
        Solve::Unsolvable { .. } => return Err(Error::Internal("no extension compatible with the hulls")),
    };
    let col = sol.column(0);
    let delta: Vec<Matrix> = (0..na).map(|l| Matrix::from_vectorized(k, hd, h1d, &col[l * dsz..(l + 1) * dsz])).collect();
    let t = Matrix::from_vectorized(k, hd, z1d, &col[na * dsz..]);
    let action: Vec<Matrix> = (0..na)
        .map(|i| {
            let mut m = Matrix::zeros(k, hd + h1d, hd + h1d);
            m.paste(0, 0, hm.action(i));
            m.paste(0, hd, &delta[i]);
            m.paste(hd, hd, hm1.action(i));
            m
        })
        .collect();
    let e = Module::new(a.clone(), hd + h1d, action)?;
    if crate::algebra::validate_module(&e).is_err() {
        return Err(Error::Internal("extension module fails the module axioms"));
    }
    let mut phi = Matrix::zeros(k, hd + h1d, zd + z1d);
    phi.paste(0, 0, h.matrix());
    phi.paste(0, zd, &t);
    phi.paste(hd, zd, h_next.matrix());
    Ok((e, phi.mul(&inv)))
}

/// `P -> X` quasi-isomorphism with `P` free, bounded above, computed down to `bottom`.
#[derive(Clone, Debug)]
pub struct FreeReplacement {
    pub complex: ChainComplex,
    pub ranks: Vec<usize>,
    pub quasi_iso: ChainMap,
}

/// Built from the top: `P^n` covers `{(p, x) ∈ P^{n+1} ⊕ X^n : d p = 0, f(p) = d x}`.
pub fn free_replacement(x: &ChainComplex, bottom: i64) -> FreeReplacement {
    let a = x.algebra.clone();
    let k = a.field();
    let hi = x.hi();
    let zero = Module::zero(&a);
    // descending lists, later reversed
    let mut comps: Vec<Module> = Vec::new();
    let mut ranks = Vec::new();
    let mut diffs: Vec<ModuleHom> = Vec::new();
    let mut fs: Vec<Matrix> = Vec::new();
    let mut above = zero.clone();
    let mut above_d = ModuleHom::zero(&zero, &zero);
    let mut above_f = Matrix::zeros(k, x.component(hi + 1).dim(), 0);
    for n in (bottom..=hi).rev() {
        let xn = x.component(n);
        let ds = direct_sum(&a, &[above.clone(), xn.clone()]);
        let tgt = direct_sum(&a, &[above_d.target().clone(), x.component(n + 1).clone()]);
        let (pd, xd) = (above.dim(), xn.dim());
        let mut l = Matrix::zeros(k, tgt.module.dim(), pd + xd);
        l.paste(0, 0, above_d.matrix());
        l.paste(above_d.target().dim(), 0, &above_f);
        l.paste(above_d.target().dim(), pd, &x.differential(n).matrix().neg());
        let (kn, incl) = kernel(&ModuleHom::new_unchecked(ds.module.clone(), tgt.module.clone(), l));
        let cover = free_cover(&kn);
        let to_v = incl.compose(&cover.projection);
        let d = to_v.matrix().block(0, 0, pd, cover.cover.dim());
        let f = to_v.matrix().block(pd, 0, xd, cover.cover.dim());
        diffs.push(ModuleHom::new_unchecked(cover.cover.clone(), above.clone(), d));
        fs.push(f.clone());
        ranks.push(cover.rank);
        comps.push(cover.cover.clone());
        above_d = diffs.last().unwrap().clone();
        above = cover.cover;
        above_f = f;
    }
    comps.reverse();
    ranks.reverse();
    fs.reverse();
    diffs.reverse();
    // diffs[i] is d^{bottom+i}: P^{bottom+i} -> P^{bottom+i+1}; the last one maps into zero
    diffs.pop();
    let complex = ChainComplex::from_homs(&a, bottom, comps, diffs);
    FreeReplacement { complex, ranks, quasi_iso: ChainMap { lo: bottom, components: fs } }
}

/// Which cycle module of the completed replacement is returned. With `P^0` in degree 0 the
/// image of `T^0` is `Z^1`, which is what a module concentrated in degree 0 realizes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// `Z^1`.
    Left,
    /// `Z^2`, the suspension of the left variant.
    Right,
}

/// The splice degree used by [`realize_complex`]: `lo - 1 - d`.
pub fn splice_degree(ctx: &GorensteinContext, x: &ChainComplex) -> i64 {
    x.lo - 1 - ctx.gdim as i64
}

pub fn realize_complex(ctx: &GorensteinContext, x: &ChainComplex) -> Result<StableObject, Error> {
    realize_complex_with(ctx, x, splice_degree(ctx, x), Stabilization::Left)
}

/// Free replacement `P`, then `T^j = P^j` for `j <= s` completed above by cosyzygies of
/// `G = coker(P^{s-1} -> P^s)`, so `Z^{s+1+i} = Ω^{-i} G`. Any `s <= lo - 1 - d` is admissible.
pub fn realize_complex_with(ctx: &GorensteinContext, x: &ChainComplex, s: i64, which: Stabilization) -> Result<StableObject, Error> {
    if *x.algebra != *ctx.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if s > splice_degree(ctx, x) {
        return Err(Error::InvalidComplex(format!("splice degree {s} is above lo - 1 - d")));
    }
    let target = match which {
        Stabilization::Left => 1,
        Stabilization::Right => 2,
    };
    let p = free_replacement(x, s - 1).complex;
    let mut module = cokernel(&p.differential(s - 1)).module;
    for _ in 0..(target - s - 1) {
        module = cosyzygy(ctx, &module)?.cokernel;
    }
    if !is_gorenstein_projective(ctx, &module)?.is_gorenstein_projective() {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "realization of a complex" });
    }
    Ok(StableObject { module, gdim: ctx.gdim })
}

/// `coker(P^{t-1} -> P^t) -> P^{t+1} -> ... -> P^{hi}`, quasi-isomorphic to `X` for `t <= lo`.
pub fn truncated_replacement(x: &ChainComplex, t: i64) -> ChainComplex {
    let p = free_replacement(x, t - 1).complex;
    let q = cokernel(&p.differential(t - 1));
    let mut comps = vec![q.module.clone()];
    let mut diffs = vec![q.induced(&p.differential(t))];
    for n in t + 1..=p.hi() {
        comps.push(p.component(n).clone());
        if n < p.hi() {
            diffs.push(p.differential(n));
        }
    }
    if comps.len() == diffs.len() {
        diffs.pop();
    }
    ChainComplex::from_homs(&x.algebra, t, comps, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::free_module;
    use crate::gorenstein::{realize_module, stable_hom, stable_iso_check};

    fn x_map(a: &Arc<Algebra>) -> Matrix {
        a.left_regular(1)
    }

    fn x_complex(a: &Arc<Algebra>, len: usize) -> ChainComplex {
        let free = free_module(a, 1);
        ChainComplex::new(a.clone(), 0, vec![free; len], vec![x_map(a); len - 1]).unwrap()
    }

    /// `0 -> k -> A -> ... -> A -> k -> 0` with `frees` copies of `A`, starting in degree 0.
    fn closure(a: &Arc<Algebra>, frees: usize) -> ChainComplex {
        let k = residue_field(a);
        let free = free_module(a, 1);
        let f = a.field();
        let mut comps = vec![k.clone()];
        let mut diffs = vec![Matrix::from_ints(f, &[&[0], &[1]])];
        for i in 0..frees {
            comps.push(free.clone());
            if i + 1 < frees {
                diffs.push(x_map(a));
            }
        }
        diffs.push(Matrix::from_ints(f, &[&[1, 0]]));
        comps.push(k);
        ChainComplex::new(a.clone(), 0, comps, diffs).unwrap()
    }

    #[test]
    fn validation_examples() {
        let a = dual_numbers();
        let free = free_module(&a, 1);
        assert_eq!(validate_complex(&disk_complex(&free, 0)), Ok(()));
        assert_eq!(validate_complex(&x_complex(&a, 3)), Ok(()));
        let id = Matrix::identity(a.field(), 2);
        let bad = ChainComplex::new(a.clone(), 0, vec![free.clone(); 3], vec![id.clone(), id]).unwrap();
        assert_eq!(validate_complex(&bad), Err(ComplexViolation::SquareNonzero { degree: 0 }));
    }

    #[test]
    fn homology_examples() {
        let a = dual_numbers();
        assert!(is_acyclic(&disk_complex(&free_module(&a, 1), 3)));
        let k0 = ChainComplex::concentrated(&residue_field(&a), 0);
        assert_eq!(homology(&k0, 0), 1);
        assert!(!is_acyclic(&k0));
        let x = x_complex(&a, 5);
        assert!((1..4).all(|n| homology(&x, n) == 0));
        assert_eq!(homology(&x, 0), 1);
        assert_eq!(homology(&x, 4), 1);
        assert!(is_acyclic(&closure(&a, 2)));
    }

    #[test]
    fn contractibility_examples() {
        let a = dual_numbers();
        let free = free_module(&a, 1);
        assert!(is_contractible(&disk_complex(&free, 0)).unwrap().is_contractible());
        let two = direct_sum_complex(&[disk_complex(&free, 0), disk_complex(&residue_field(&a), 3)]);
        assert!(is_contractible(&two).unwrap().is_contractible());
        assert!(matches!(is_contractible(&x_complex(&a, 4)).unwrap(), Contractibility::NotAcyclic { degree: 0 }));
        assert!(matches!(is_contractible(&closure(&a, 1)).unwrap(), Contractibility::NotContractible { .. }));
    }

    #[test]
    fn suspension_conventions() {
        let a = dual_numbers();
        let k0 = ChainComplex::concentrated(&residue_field(&a), 0);
        let s = suspension(&k0);
        assert_eq!((s.lo(), s.hi()), (-1, -1));
        let x = x_complex(&a, 3);
        let ss = suspension(&suspension(&x));
        assert_eq!(ss.lo(), x.lo() - 2);
        assert_eq!(ss.differentials(), x.differentials());
        assert_eq!(suspension(&x).differential(-1).matrix(), &x_map(&a).neg());
    }

    #[test]
    fn homotopy_class_examples() {
        let a = dual_numbers();
        let free = free_module(&a, 1);
        let d = disk_complex(&free, 0);
        assert_eq!(homotopy_classes(&d, &d).unwrap().quotient_dim(), 0);
        let k = residue_field(&a);
        let h = homotopy_classes(&ChainComplex::concentrated(&k, 0), &ChainComplex::concentrated(&k, 1)).unwrap();
        assert_eq!(h.chain_maps_dim, 0);
        assert_eq!(h.quotient_dim(), 0);
    }

    #[test]
    fn closure_self_homotopy_matches_stable_endomorphisms() {
        let a = dual_numbers();
        let c = closure(&a, 2);
        let h = homotopy_classes(&c, &c).unwrap();
        let k = residue_field(&a);
        assert_eq!(h.quotient_dim(), stable_hom(&k, &k).unwrap().dim());
    }

    #[test]
    fn window_homotopy_matches_stable_hom() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let s = complete_resolution(&ctx, &k, 3).unwrap();
        let h = window_homotopy_classes(&s, &s).unwrap();
        assert_eq!(h.quotient_dim(), 1);
        assert_eq!(stable_hom(s.z0(), s.z0()).unwrap().dim(), 1);
    }

    #[test]
    fn ext1_dw_examples() {
        let a = dual_numbers();
        let k0 = ChainComplex::concentrated(&residue_field(&a), 0);
        assert_eq!(ext1_dw(&k0, &k0).unwrap(), 0);
        let d = disk_complex(&free_module(&a, 1), 0);
        assert_eq!(ext1_dw(&d, &closure(&a, 2)).unwrap(), 0);
    }

    #[test]
    fn class_membership_examples() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let d = disk_complex(&free_module(&a, 1), 0);
        assert!(class_membership(&d, &ClassOracle::Projective, ClassKind::Tilde).unwrap().member);
        let k0 = ChainComplex::concentrated(&residue_field(&a), 0);
        assert!(class_membership(&k0, &ClassOracle::All, ClassKind::Dw).unwrap().member);
        assert!(!class_membership(&k0, &ClassOracle::All, ClassKind::Tilde).unwrap().member);
        let c = closure(&a, 3);
        assert!(class_membership(&c, &ClassOracle::GorensteinProjective(ctx), ClassKind::Tilde).unwrap().member);
        assert!(!class_membership(&c, &ClassOracle::Projective, ClassKind::Tilde).unwrap().member);
    }

    #[test]
    fn dg_test_examples() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let family = standard_family(&ctx, &[k.clone(), free_module(&a, 1)], -1, 2).unwrap();
        let x = x_complex(&a, 3);
        assert!(dg_test(&x, &ClassOracle::Projective, &ClassOracle::All, &family).unwrap().passed());
        let k0 = ChainComplex::concentrated(&k, 0);
        assert!(dg_test(&k0, &ClassOracle::All, &ClassOracle::All, &[]).unwrap().passed());
        // the trailing k of the closure sits in degree 0
        let tail = shift(&closure(&a, 2), 3);
        match dg_test(&k0, &ClassOracle::All, &ClassOracle::All, std::slice::from_ref(&tail)).unwrap() {
            DgVerdict::Fail(DgWitness::Homotopy { member: 0, map }) => assert!(map.is_chain_map(&k0, &tail)),
            other => panic!("unexpected {other:?}"),
        }
        match dg_test(&k0, &ClassOracle::Projective, &ClassOracle::All, &family).unwrap() {
            DgVerdict::Fail(DgWitness::Degreewise { degree: 0 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let err = dg_test(&x, &ClassOracle::Projective, &ClassOracle::All, &[k0]).unwrap_err();
        assert_eq!(err, Error::InvalidFamilyMember { index: 0 });
    }

    #[test]
    fn weak_triviality_of_closure() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let x = closure(&a, 2);
        let w = witness_weak_triviality(&ctx, &x).unwrap();
        assert!(w.verify(&ctx, &x).unwrap());
        let d = disk_complex(&free_module(&a, 1), 0);
        let w = witness_weak_triviality(&ctx, &d).unwrap();
        assert_eq!(w.f, d);
        assert!(w.c.is_zero());
        let z = ChainComplex::zero(&a);
        assert!(witness_weak_triviality(&ctx, &z).unwrap().f.is_zero());
    }

    #[test]
    fn weak_triviality_over_triangular_algebra() {
        let t = upper_triangular();
        let ctx = GorensteinContext::new(t.clone(), 1);
        let s2 = triangular_simple(&t, 2);
        let cover = free_cover(&s2);
        let x = ChainComplex::from_homs(
            &t,
            0,
            vec![cover.syzygy.clone(), cover.cover.clone(), s2.clone()],
            vec![cover.inclusion.clone(), cover.projection.clone()],
        );
        assert!(is_acyclic(&x));
        let w = witness_weak_triviality(&ctx, &x).unwrap();
        assert!(w.verify(&ctx, &x).unwrap());
    }

    #[test]
    fn free_replacement_of_module_is_its_resolution() {
        let a = klein();
        let k = residue_field(&a);
        let p = free_replacement(&ChainComplex::concentrated(&k, 0), -2);
        assert_eq!(p.ranks, vec![3, 2, 1]);
        assert_eq!(homology(&p.complex, 0), 1);
        assert_eq!(homology(&p.complex, -1), 0);
        assert!(p.quasi_iso.is_chain_map(&p.complex, &ChainComplex::concentrated(&k, 0)));
    }

    #[test]
    fn realize_concentrated_module_matches_module_realization() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let r = realize_complex(&ctx, &ChainComplex::concentrated(&k, 0)).unwrap();
        let m = realize_module(&ctx, &k).unwrap();
        assert!(stable_iso_check(&ctx, &r.module, &m.module).unwrap().is_isomorphic());
        let d = realize_complex(&ctx, &disk_complex(&free_module(&a, 1), 0)).unwrap();
        assert_eq!(stable_hom(&d.module, &d.module).unwrap().dim(), 0);
    }

    #[test]
    fn realize_concentrated_module_without_periodicity_one() {
        // over F_3[x]/(x^3), Ωk is not stably isomorphic to k
        let a = truncated_cubic();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let r = realize_complex(&ctx, &ChainComplex::concentrated(&k, 0)).unwrap();
        assert_eq!(r.module.dim(), 1);
        assert!(stable_iso_check(&ctx, &r.module, &k).unwrap().is_isomorphic());
        let shifted = realize_complex(&ctx, &ChainComplex::concentrated(&k, 1)).unwrap();
        let omega = free_cover(&k).syzygy;
        assert!(stable_iso_check(&ctx, &shifted.module, &omega).unwrap().is_isomorphic());
    }

    #[test]
    fn realize_two_copies_of_trivial_module() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let x = ChainComplex::new(a.clone(), 0, vec![k.clone(), k.clone()], vec![Matrix::zeros(a.field(), 1, 1)]).unwrap();
        let r = realize_complex(&ctx, &x).unwrap();
        let rk = realize_module(&ctx, &k).unwrap().module;
        let expected = direct_sum(&a, &[rk.clone(), cosyzygy(&ctx, &rk).unwrap().cokernel]).module;
        assert!(stable_iso_check(&ctx, &r.module, &expected).unwrap().is_isomorphic());
    }

    #[test]
    fn splice_degree_is_irrelevant() {
        let a = klein();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let x = ChainComplex::concentrated(&k, 0);
        let s = splice_degree(&ctx, &x);
        let base = realize_complex_with(&ctx, &x, s, Stabilization::Left).unwrap().module;
        for extra in 1..3 {
            let other = realize_complex_with(&ctx, &x, s - extra, Stabilization::Left).unwrap().module;
            assert!(stable_iso_check(&ctx, &base, &other).unwrap().is_isomorphic());
        }
    }

    #[test]
    fn right_variant_is_suspension_of_left() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let x = closure(&a, 1);
        let x = direct_sum_complex(&[x, ChainComplex::concentrated(&residue_field(&a), 1)]);
        let left = realize_complex_with(&ctx, &x, splice_degree(&ctx, &x), Stabilization::Left).unwrap().module;
        let right = realize_complex_with(&ctx, &x, splice_degree(&ctx, &x), Stabilization::Right).unwrap().module;
        let sigma = cosyzygy(&ctx, &left).unwrap().cokernel;
        assert!(stable_iso_check(&ctx, &right, &sigma).unwrap().is_isomorphic());
    }

    #[test]
    fn truncated_replacement_is_quasi_isomorphic() {
        let a = dual_numbers();
        let ctx = GorensteinContext::new(a.clone(), 0);
        let k = residue_field(&a);
        let x = ChainComplex::concentrated(&k, 0);
        let t = truncated_replacement(&x, -1);
        assert_eq!(validate_complex(&t), Ok(()));
        assert_eq!((t.lo(), t.hi()), (-1, 0));
        assert_eq!(homology(&t, 0), 1);
        assert_eq!(homology(&t, -1), 0);
        let r1 = realize_complex(&ctx, &x).unwrap().module;
        let r2 = realize_complex(&ctx, &t).unwrap().module;
        assert!(stable_iso_check(&ctx, &r1, &r2).unwrap().is_isomorphic());
    }
}
