//! Free covers, syzygies, free resolutions, projectivity and Ext.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{free_module, hom_space_matrix, kernel, Algebra, Module, ModuleHom};
use crate::error::Error;
use crate::exactlin::{extend_independent, solve_right, Matrix, Solve};
use crate::field::Scalar;

/// `0 -> syzygy -> cover -> module -> 0` with `cover` free of rank `rank`.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub module: Module,
    pub cover: Module,
    pub rank: usize,
    /// Images in `module` of the free generators.
    pub generators: Vec<Vec<Scalar>>,
    pub projection: ModuleHom,
    pub syzygy: Module,
    pub inclusion: ModuleHom,
}

/// The element `1` of block `b` in `A^g`.
pub fn free_generator(a: &Algebra, g: usize, b: usize) -> Vec<Scalar> {
    let n = a.dim();
    let mut v = vec![a.field().zero(); g * n];
    v[b * n..(b + 1) * n].clone_from_slice(a.unit());
    v
}

/// The map `A^g -> target` sending generator `b` to `images[b]`.
pub fn hom_from_free(free: &Module, target: &Module, images: &[Vec<Scalar>]) -> ModuleHom {
    let a = free.algebra();
    let n = a.dim();
    assert_eq!(free.dim(), images.len() * n, "one image per free generator");
    let k = a.field();
    let mut cols = Vec::with_capacity(free.dim());
    for y in images {
        for t in 0..n {
            cols.push(target.action(t).apply(y));
        }
    }
    ModuleHom::new_unchecked(free.clone(), target.clone(), Matrix::from_columns(k, target.dim(), &cols))
}

fn generates(m: &Module, vs: &[Vec<Scalar>]) -> bool {
    m.generated_submodule_basis(vs).cols() == m.dim()
}

/// Generating set chosen from the basis of `m`: greedy pruning, then pairwise
/// merging `g_a + c g_b -> g_a` while the set still generates.
fn cover_generators(m: &Module) -> Vec<Vec<Scalar>> {
    let k = m.field();
    let mut gens: Vec<Vec<Scalar>> = (0..m.dim()).map(|i| m.basis_vector(i)).collect();
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        rest.remove(i);
        if generates(m, &rest) {
            gens = rest;
        } else {
            i += 1;
        }
    }
    let scalars: Vec<Scalar> = match k.characteristic() {
        0 => vec![k.one()],
        p => (1..p as i64).map(|c| k.from_int(c)).collect(),
    };
    'merge: loop {
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                if a == b {
                    continue;
                }
                for c in &scalars {
                    let merged: Vec<Scalar> = gens[a].iter().zip(&gens[b]).map(|(x, y)| k.add(x, &k.mul(c, y))).collect();
                    let mut trial = gens.clone();
                    trial[a] = merged;
                    trial.remove(b);
                    if generates(m, &trial) {
                        gens = trial;
                        continue 'merge;
                    }
                }
            }
        }
        return gens;
    }
}

pub fn free_cover(m: &Module) -> FreeCover {
    let a = m.algebra();
    let generators = cover_generators(m);
    let rank = generators.len();
    let cover = free_module(a, rank);
    let projection = hom_from_free(&cover, m, &generators);
    let (syzygy, inclusion) = kernel(&projection);
    FreeCover { module: m.clone(), cover, rank, generators, projection, syzygy, inclusion }
}

/// `Ω^j M`.
pub fn syzygy(m: &Module, j: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..j {
        cur = free_cover(&cur).syzygy;
    }
    cur
}

/// `F_n -> ... -> F_0 -> M -> 0`, with `F_i` the cover of `Ω^i M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Module,
    pub length: usize,
    pub covers: Vec<FreeCover>,
    /// `differentials[i - 1]` is `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub differentials: Vec<ModuleHom>,
    /// `Ω^{length+1} M`
    pub tail: Module,
}

impl Resolution {
    pub fn free(&self, i: usize) -> &Module {
        &self.covers[i].cover
    }

    pub fn rank(&self, i: usize) -> usize {
        self.covers[i].rank
    }

    pub fn augmentation(&self) -> &ModuleHom {
        &self.covers[0].projection
    }

    pub fn differential(&self, i: usize) -> &ModuleHom {
        &self.differentials[i - 1]
    }

    /// `Ω^i M` for `i <= length + 1`.
    pub fn syzygy(&self, i: usize) -> &Module {
        if i == 0 {
            &self.module
        } else {
            &self.covers[i - 1].syzygy
        }
    }

    /// Rank checks that the sequence is exact at `M` and at every `F_i` with `i < length`.
    pub fn is_exact(&self) -> bool {
        if !self.augmentation().is_surjective() {
            return false;
        }
        let mut prev = self.augmentation().clone();
        for i in 1..=self.length {
            let d = self.differential(i);
            if !prev.compose(d).is_zero() || d.rank() != self.free(i - 1).dim() - prev.rank() {
                return false;
            }
            prev = d.clone();
        }
        true
    }
}

pub fn resolution(m: &Module, n: usize) -> Resolution {
    let mut covers: Vec<FreeCover> = Vec::with_capacity(n + 1);
    let mut differentials = Vec::with_capacity(n);
    let mut cur = m.clone();
    for i in 0..=n {
        let c = free_cover(&cur);
        if i > 0 {
            let prev = &covers[i - 1];
            differentials.push(prev.inclusion.compose(&c.projection));
        }
        cur = c.syzygy.clone();
        covers.push(c);
    }
    Resolution { module: m.clone(), length: n, covers, differentials, tail: cur }
}

/// Evidence for [`is_projective`].
#[derive(Clone, Debug)]
pub enum Projectivity {
    /// `A`-linear `s: M -> F` with `π ∘ s = id`.
    Section(ModuleHom),
    /// No combination of the `hom_dim` basis maps of `Hom_A(M, F)` splits `π`.
    Obstruction { hom_dim: usize },
}

impl Projectivity {
    pub fn is_projective(&self) -> bool {
        matches!(self, Projectivity::Section(_))
    }
}

/// Decides projectivity by searching for an `A`-linear section of the free cover.
pub fn is_projective(m: &Module) -> Projectivity {
    let c = free_cover(m);
    projectivity_of(&c)
}

pub(crate) fn projectivity_of(c: &FreeCover) -> Projectivity {
    match split_epi(&c.projection) {
        Ok(s) => Projectivity::Section(s),
        Err(hom_dim) => Projectivity::Obstruction { hom_dim },
    }
}

/// An `A`-linear `s` with `p ∘ s = id`, or the dimension of `Hom_A(target, source)` searched in vain.
pub fn split_epi(p: &ModuleHom) -> Result<ModuleHom, usize> {
    let (src, tgt) = (p.source(), p.target());
    let k = src.field();
    if tgt.is_zero() {
        return Ok(ModuleHom::zero(tgt, src));
    }
    let homs = hom_space_matrix(tgt, src).expect("same algebra");
    let (sd, td) = (src.dim(), tgt.dim());
    let images: Vec<Vec<Scalar>> = (0..homs.cols())
        .map(|j| p.matrix().mul(&Matrix::from_vectorized(k, sd, td, &homs.column(j))).vectorize())
        .collect();
    let system = Matrix::from_columns(k, td * td, &images);
    let target = Matrix::column_vector(k, Matrix::identity(k, td).vectorize());
    match solve_right(&system, &target).expect("shapes agree") {
        Solve::Solved(x) => {
            let s = homs.mul(&x);
            let mat = Matrix::from_vectorized(k, sd, td, &s.column(0));
            Ok(ModuleHom::new_unchecked(tgt.clone(), src.clone(), mat))
        }
        Solve::Unsolvable { .. } => Err(homs.cols()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjDim {
    Finite(usize),
    ExceedsBound,
}

/// Smallest `j <= bound` with `Ω^j M` projective.
pub fn proj_dim_upto(m: &Module, bound: usize) -> ProjDim {
    let mut cur = m.clone();
    for j in 0..=bound {
        let c = free_cover(&cur);
        if projectivity_of(&c).is_projective() {
            return ProjDim::Finite(j);
        }
        cur = c.syzygy;
    }
    ProjDim::ExceedsBound
}

/// `Ext^i_A(M, N)` with cocycle representatives `F_i -> N` spanning a complement of the coboundaries.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<ModuleHom>,
}

// Hom(A^g, N) = N^g through generator images; δ(φ) = φ ∘ d where d: F' -> F.
fn coboundary_matrix(d: &ModuleHom, rank_source: usize, rank_target: usize, n: &Module) -> Matrix {
    let a = n.algebra();
    let k = a.field();
    let (ad, nd) = (a.dim(), n.dim());
    let mut out = Matrix::zeros(k, rank_source * nd, rank_target * nd);
    for bp in 0..rank_source {
        let w = d.matrix().apply(&free_generator(a, rank_source, bp));
        for b in 0..rank_target {
            let block = n.act(&w[b * ad..(b + 1) * ad]);
            out.paste(bp * nd, b * nd, &block);
        }
    }
    out
}

pub fn ext_space(m: &Module, n: &Module, i: usize) -> Result<ExtSpace, Error> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(ext_from_resolution(&resolution(m, i + 1), n, i))
}

/// `dim Ext^i(M, N)` for `0 <= i <= max`, from a single resolution.
pub fn ext_dims(m: &Module, n: &Module, max: usize) -> Result<Vec<usize>, Error> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let res = resolution(m, max + 1);
    Ok((0..=max).map(|i| ext_from_resolution(&res, n, i).dim).collect())
}

/// Needs `res.length > i`.
pub(crate) fn ext_from_resolution(res: &Resolution, n: &Module, i: usize) -> ExtSpace {
    let k = n.field();
    let nd = n.dim();
    let delta_i = coboundary_matrix(res.differential(i + 1), res.rank(i + 1), res.rank(i), n);
    let cocycles = delta_i.kernel_basis();
    let coboundaries = if i == 0 {
        Matrix::zeros(k, res.rank(0) * nd, 0)
    } else {
        coboundary_matrix(res.differential(i), res.rank(i), res.rank(i - 1), n).column_basis()
    };
    let picked = extend_independent(&coboundaries, &cocycles);
    let free = res.free(i);
    let representatives = picked
        .iter()
        .map(|&j| {
            let coords = cocycles.column(j);
            let images: Vec<Vec<Scalar>> = coords.chunks(nd).map(|c| c.to_vec()).collect();
            hom_from_free(free, n, &images)
        })
        .collect::<Vec<_>>();
    ExtSpace { degree: i, dim: representatives.len(), representatives }
}

/// `A` as a left module over itself.
pub fn regular_module(a: &Arc<Algebra>) -> Module {
    free_module(a, 1)
}
