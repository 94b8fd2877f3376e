//! Gorenstein-projective modules over an algebra of declared Gorenstein
//! dimension: the GP test, cosyzygies, complete resolutions, approximations,
//! stable Hom-spaces and the realization of a module in the stable category.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    cokernel, dual_only, free_module, hom_space_matrix, kernel, opposite, pushout, Algebra, Module, ModuleHom,
};
use crate::error::Error;
use crate::exactlin::{extend_independent, solve_right, Matrix, Solve};
use crate::field::Scalar;
use crate::resolve::{
    ext_from_resolution, free_cover, is_projective, proj_dim_upto, regular_module, resolution, ProjDim,
};

/// An algebra together with its declared self-injective dimension `gdim`.
#[derive(Clone, Debug)]
pub struct GorensteinContext {
    pub algebra: Arc<Algebra>,
    pub gdim: usize,
    opposite: Arc<Algebra>,
}

impl GorensteinContext {
    pub fn new(algebra: Arc<Algebra>, gdim: usize) -> GorensteinContext {
        let opposite = Arc::new(opposite(&algebra));
        GorensteinContext { algebra, gdim, opposite }
    }

    fn check(&self, m: &Module) -> Result<(), Error> {
        if *m.algebra().as_ref() == *self.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// `dim Ext^i(M, A)` for `i = 1..=gdim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpCertificate {
    pub ext_dims: Vec<(usize, usize)>,
}

impl GpCertificate {
    pub fn is_gorenstein_projective(&self) -> bool {
        self.ext_dims.iter().all(|&(_, d)| d == 0)
    }
}

pub fn is_gorenstein_projective(ctx: &GorensteinContext, m: &Module) -> Result<GpCertificate, Error> {
    ctx.check(m)?;
    if ctx.gdim == 0 {
        return Ok(GpCertificate { ext_dims: Vec::new() });
    }
    let reg = regular_module(m.algebra());
    let res = resolution(m, ctx.gdim + 1);
    let ext_dims = (1..=ctx.gdim).map(|i| (i, ext_from_resolution(&res, &reg, i).dim)).collect();
    Ok(GpCertificate { ext_dims })
}

fn is_gp(ctx: &GorensteinContext, m: &Module) -> Result<bool, Error> {
    Ok(is_gorenstein_projective(ctx, m)?.is_gorenstein_projective())
}

/// `0 -> G -> F -> G' -> 0` with `F` free of rank `rank`.
#[derive(Clone, Debug)]
pub struct Cosyzygy {
    pub module: Module,
    pub free: Module,
    pub rank: usize,
    pub embedding: ModuleHom,
    pub cokernel: Module,
    pub projection: ModuleHom,
}

// G -> A^g, m -> (c_1(m), ..., c_g(m)) for generators c_j of G* over A^op.
fn cosyzygy_step(ctx: &GorensteinContext, g: &Module) -> Result<Cosyzygy, Error> {
    let a = g.algebra();
    let k = a.field();
    let n = a.dim();
    let (dual, basis) = dual_only(g, &ctx.opposite)?;
    let cover = free_cover(&dual);
    let rank = cover.rank;
    let mut mat = Matrix::zeros(k, rank * n, g.dim());
    for (j, c) in cover.generators.iter().enumerate() {
        let mut phi = Matrix::zeros(k, n, g.dim());
        for (t, ct) in c.iter().enumerate() {
            if !k.is_zero(ct) {
                phi = phi.add(&basis[t].matrix().scale(ct));
            }
        }
        mat.paste(j * n, 0, &phi);
    }
    let free = free_module(a, rank);
    let embedding = ModuleHom::new_unchecked(g.clone(), free.clone(), mat);
    if !embedding.is_injective() {
        return Err(Error::DoubleDualNotInjective);
    }
    let q = cokernel(&embedding);
    Ok(Cosyzygy { module: g.clone(), free, rank, embedding, cokernel: q.module, projection: q.projection })
}

/// Embeds a Gorenstein-projective `G` into a free module with Gorenstein-projective cokernel.
pub fn cosyzygy(ctx: &GorensteinContext, g: &Module) -> Result<Cosyzygy, Error> {
    if !is_gp(ctx, g)? {
        return Err(Error::NotGorensteinProjective { what: "cosyzygy input", gdim: ctx.gdim });
    }
    let c = cosyzygy_step(ctx, g)?;
    if !is_gp(ctx, &c.cokernel)? {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "cosyzygy cokernel" });
    }
    Ok(c)
}

/// `Ω^{-j} G`.
pub fn cosyzygy_iter(ctx: &GorensteinContext, g: &Module, j: usize) -> Result<Module, Error> {
    let mut cur = g.clone();
    for _ in 0..j {
        cur = cosyzygy(ctx, &cur)?.cokernel;
    }
    Ok(cur)
}

/// Degrees `-radius..=radius+1` of a complete resolution of `M`, spliced so that
/// `Z^0 = Ω^{-d} Ω^d M`.
#[derive(Clone, Debug)]
pub struct CompleteResolutionWindow {
    pub radius: usize,
    pub gdim: usize,
    /// `T^j` for `j = -radius..=radius+1`.
    pub components: Vec<Module>,
    pub ranks: Vec<usize>,
    /// `d^j: T^j -> T^{j+1}` for `j = -radius..=radius`.
    pub differentials: Vec<ModuleHom>,
    /// `Z^j = ker d^j` with its inclusion, for `j = -radius..=radius`.
    pub cycles: Vec<(Module, ModuleHom)>,
    /// `(j, i)`: `T^j` and `d^j` coincide with `F_i` and `d_i` of the free resolution of `M`.
    pub agreement: Vec<(i64, usize)>,
}

/// Per-property outcome of [`CompleteResolutionWindow::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    pub acyclic: bool,
    pub free: bool,
    pub cycles_gp: bool,
    pub agrees: bool,
}

impl WindowReport {
    pub fn passed(&self) -> bool {
        self.acyclic && self.free && self.cycles_gp && self.agrees
    }
}

impl CompleteResolutionWindow {
    pub fn lo(&self) -> i64 {
        -(self.radius as i64)
    }

    fn idx(&self, j: i64) -> usize {
        (j - self.lo()) as usize
    }

    pub fn component(&self, j: i64) -> &Module {
        &self.components[self.idx(j)]
    }

    pub fn differential(&self, j: i64) -> &ModuleHom {
        &self.differentials[self.idx(j)]
    }

    pub fn cycle(&self, j: i64) -> &Module {
        &self.cycles[self.idx(j)].0
    }

    pub fn z0(&self) -> &Module {
        self.cycle(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Module::is_zero)
    }

    /// Interior acyclicity, freeness, GP cycles and agreement with the resolution of `m`.
    pub fn check(&self, ctx: &GorensteinContext, m: &Module) -> Result<WindowReport, Error> {
        let w = self.radius as i64;
        let acyclic = (-w + 1..=w).all(|j| {
            let before = self.differential(j - 1);
            let after = self.differential(j);
            after.compose(before).is_zero() && before.rank() + after.rank() == self.component(j).dim()
        });
        let n = ctx.algebra.dim();
        let free = self.components.iter().zip(&self.ranks).all(|(c, &r)| c.dim() == r * n);
        let mut cycles_gp = true;
        for (z, _) in &self.cycles {
            cycles_gp &= is_gp(ctx, z)?;
        }
        let agrees = match self.agreement.iter().map(|&(_, i)| i).max() {
            None => true,
            Some(len) => {
                let res = resolution(m, len + 1);
                self.agreement.iter().all(|&(j, i)| {
                    self.component(j) == res.free(i)
                        && (j == self.lo() || self.differential(j - 1).matrix() == res.differential(i + 1).matrix())
                })
            }
        };
        Ok(WindowReport { acyclic, free, cycles_gp, agrees })
    }
}

pub fn complete_resolution(ctx: &GorensteinContext, m: &Module, radius: usize) -> Result<CompleteResolutionWindow, Error> {
    ctx.check(m)?;
    let d = ctx.gdim;
    if radius < d {
        return Err(Error::WindowTooSmall { window: radius, gdim: d });
    }
    let w = radius as i64;
    let di = d as i64;
    let a = m.algebra();
    let res = resolution(m, radius.max(d));
    let g = res.syzygy(d).clone();
    if !is_gp(ctx, &g)? {
        return Err(Error::GdimTooSmall { gdim: d, stage: "d-th syzygy is not Gorenstein-projective" });
    }
    if is_projective(&g).is_projective() {
        return Ok(zero_window(a, radius, d));
    }
    let mut cos: Vec<Cosyzygy> = Vec::new();
    let mut cur = g;
    for _ in 0..=(radius + d + 1) {
        let c = cosyzygy_step(ctx, &cur)?;
        if !is_gp(ctx, &c.cokernel)? {
            return Err(Error::GdimTooSmall { gdim: d, stage: "cosyzygy cokernel" });
        }
        cur = c.cokernel.clone();
        cos.push(c);
    }
    let mut components = Vec::new();
    let mut ranks = Vec::new();
    for j in -w..=w + 1 {
        if j >= -di {
            let c = &cos[(j + di) as usize];
            components.push(c.free.clone());
            ranks.push(c.rank);
        } else {
            let i = (-j - 1) as usize;
            components.push(res.free(i).clone());
            ranks.push(res.rank(i));
        }
    }
    let mut differentials = Vec::new();
    for j in -w..=w {
        let dj = if j >= -di {
            let i = (j + di) as usize;
            cos[i + 1].embedding.compose(&cos[i].projection)
        } else if j == -di - 1 {
            cos[0].embedding.compose(&res.covers[d].projection)
        } else {
            res.differential((-j - 1) as usize).clone()
        };
        differentials.push(dj);
    }
    let cycles = differentials.iter().map(kernel).collect();
    let agreement = (-w..=-di - 1).map(|j| (j, (-j - 1) as usize)).collect();
    Ok(CompleteResolutionWindow { radius, gdim: d, components, ranks, differentials, cycles, agreement })
}

fn zero_window(a: &Arc<Algebra>, radius: usize, gdim: usize) -> CompleteResolutionWindow {
    let z = Module::zero(a);
    let len = 2 * radius + 2;
    let differentials = vec![ModuleHom::zero(&z, &z); len - 1];
    let cycles = vec![(z.clone(), ModuleHom::zero(&z, &z)); len - 1];
    CompleteResolutionWindow {
        radius,
        gdim,
        components: vec![z; len],
        ranks: vec![0; len],
        differentials,
        cycles,
        agreement: Vec::new(),
    }
}

/// `0 -> K -> G -> M -> 0` with `G` Gorenstein-projective and `pd K <= d`.
#[derive(Clone, Debug)]
pub struct GpApproximation {
    pub module: Module,
    pub approximation: Module,
    pub projection: ModuleHom,
    pub kernel: Module,
    pub inclusion: ModuleHom,
    pub gp: GpCertificate,
    pub kernel_pd: usize,
}

impl GpApproximation {
    pub fn is_exact(&self) -> bool {
        short_exact(&self.inclusion, &self.projection)
    }
}

pub(crate) fn short_exact(i: &ModuleHom, p: &ModuleHom) -> bool {
    i.is_injective()
        && p.is_surjective()
        && p.compose(i).is_zero()
        && i.source().dim() + p.target().dim() == p.source().dim()
}

// Returns (G, π: G -> M, K, K -> G); `budget` bounds the recursion depth.
fn approximate(ctx: &GorensteinContext, m: &Module, budget: usize) -> Result<(ModuleHom, ModuleHom), Error> {
    if is_gp(ctx, m)? {
        let z = Module::zero(m.algebra());
        return Ok((ModuleHom::identity(m), ModuleHom::zero(&z, m)));
    }
    if budget == 0 {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "Gorenstein-projective approximation" });
    }
    let cover = free_cover(m);
    let (pi_inner, _) = approximate(ctx, &cover.syzygy, budget - 1)?;
    let co = cosyzygy_step(ctx, pi_inner.source())?;
    let q = pushout(&co.embedding, &pi_inner);
    let g = pushout(&q.from_right, &cover.inclusion);
    let zero_q = ModuleHom::zero(&q.module, m);
    let projection = g.induced(&zero_q, &cover.projection);
    Ok((projection, g.from_left))
}

pub fn gp_approximation(ctx: &GorensteinContext, m: &Module) -> Result<GpApproximation, Error> {
    ctx.check(m)?;
    let (projection, inclusion) = approximate(ctx, m, ctx.gdim)?;
    let approximation = projection.source().clone();
    let gp = is_gorenstein_projective(ctx, &approximation)?;
    if !gp.is_gorenstein_projective() {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "approximation is not Gorenstein-projective" });
    }
    let kernel = inclusion.source().clone();
    let kernel_pd = match proj_dim_upto(&kernel, ctx.gdim) {
        ProjDim::Finite(p) => p,
        ProjDim::ExceedsBound => {
            return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "approximation kernel has large projective dimension" })
        }
    };
    let out = GpApproximation { module: m.clone(), approximation, projection, kernel, inclusion, gp, kernel_pd };
    if !out.is_exact() {
        return Err(Error::Internal("approximation sequence is not exact"));
    }
    Ok(out)
}

/// `0 -> M -> H -> G' -> 0` with `pd H <= d` and `G'` Gorenstein-projective.
#[derive(Clone, Debug)]
pub struct FpdHull {
    pub module: Module,
    pub hull: Module,
    pub embedding: ModuleHom,
    pub cokernel: Module,
    pub projection: ModuleHom,
    pub hull_pd: usize,
    pub gp: GpCertificate,
}

impl FpdHull {
    pub fn is_exact(&self) -> bool {
        short_exact(&self.embedding, &self.projection)
    }
}

pub fn fpd_hull(ctx: &GorensteinContext, m: &Module) -> Result<FpdHull, Error> {
    let approx = gp_approximation(ctx, m)?;
    let co = cosyzygy_step(ctx, &approx.approximation)?;
    let h = pushout(&co.embedding, &approx.projection);
    let zero_m = ModuleHom::zero(m, &co.cokernel);
    let projection = h.induced(&co.projection, &zero_m);
    let hull = h.module.clone();
    let hull_pd = match proj_dim_upto(&hull, ctx.gdim) {
        ProjDim::Finite(p) => p,
        ProjDim::ExceedsBound => return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "hull has large projective dimension" }),
    };
    let gp = is_gorenstein_projective(ctx, &co.cokernel)?;
    if !gp.is_gorenstein_projective() {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "hull cokernel is not Gorenstein-projective" });
    }
    let out = FpdHull { module: m.clone(), hull, embedding: h.from_right, cokernel: co.cokernel, projection, hull_pd, gp };
    if !out.is_exact() {
        return Err(Error::Internal("hull sequence is not exact"));
    }
    Ok(out)
}

/// `Hom_A(M, N)` modulo maps factoring through a projective.
#[derive(Clone, Debug)]
pub struct StableHomSpace {
    pub source: Module,
    pub target: Module,
    /// Vectorized basis of `Hom_A(M, N)`, one map per column.
    pub hom: Matrix,
    /// Vectorized basis of the projectively factoring maps.
    pub factoring: Matrix,
    /// Maps whose classes form a basis of the quotient.
    pub representatives: Vec<ModuleHom>,
}

impl StableHomSpace {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn hom_dim(&self) -> usize {
        self.hom.cols()
    }

    /// Whether `f` factors through a projective.
    pub fn is_stably_zero(&self, f: &ModuleHom) -> bool {
        self.factoring.spans(&Matrix::column_vector(f.matrix().field(), f.matrix().vectorize()))
    }
}

/// Every map `M -> N` through a projective factors through the free cover `π: F -> N`,
/// so the factoring subspace is `{π ∘ α}`.
pub fn stable_hom(m: &Module, n: &Module) -> Result<StableHomSpace, Error> {
    let hom = hom_space_matrix(m, n)?;
    let k = m.field();
    let cover = free_cover(n);
    let lifts = hom_space_matrix(m, &cover.cover)?;
    let (fd, md) = (cover.cover.dim(), m.dim());
    let images: Vec<Vec<Scalar>> = (0..lifts.cols())
        .map(|j| cover.projection.matrix().mul(&Matrix::from_vectorized(k, fd, md, &lifts.column(j))).vectorize())
        .collect();
    let factoring = Matrix::from_columns(k, n.dim() * md, &images).column_basis();
    let representatives = extend_independent(&factoring, &hom)
        .into_iter()
        .map(|j| ModuleHom::new_unchecked(m.clone(), n.clone(), Matrix::from_vectorized(k, n.dim(), md, &hom.column(j))))
        .collect();
    Ok(StableHomSpace { source: m.clone(), target: n.clone(), hom, factoring, representatives })
}

/// Outcome of [`stable_iso_check`].
#[derive(Clone, Debug)]
pub enum StableIso {
    /// `g ∘ f` and `f ∘ g` agree with the identities modulo projectively factoring maps.
    Isomorphic { f: ModuleHom, g: ModuleHom },
    NotIsomorphic { reason: NonIsoReason },
    /// The candidate cap was reached before the search space was exhausted.
    Inconclusive { tried: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoReason {
    /// `(sHom(M,N), sHom(N,M), sEnd M, sEnd N)` are not all equal.
    DimensionMismatch([usize; 4]),
    /// No `g` in the finite stable space `sHom(N, M)` admits a compatible `f`.
    Exhausted,
}

impl StableIso {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, StableIso::Isomorphic { .. })
    }
}

pub const DEFAULT_ISO_CAP: usize = 10_000;

pub fn stable_iso_check(ctx: &GorensteinContext, m: &Module, n: &Module) -> Result<StableIso, Error> {
    stable_iso_check_capped(ctx, m, n, DEFAULT_ISO_CAP)
}

pub fn stable_iso_check_capped(ctx: &GorensteinContext, m: &Module, n: &Module, cap: usize) -> Result<StableIso, Error> {
    ctx.check(m)?;
    ctx.check(n)?;
    if !is_gp(ctx, m)? {
        return Err(Error::NotGorensteinProjective { what: "first argument", gdim: ctx.gdim });
    }
    if !is_gp(ctx, n)? {
        return Err(Error::NotGorensteinProjective { what: "second argument", gdim: ctx.gdim });
    }
    let mn = stable_hom(m, n)?;
    let nm = stable_hom(n, m)?;
    let mm = stable_hom(m, m)?;
    let nn = stable_hom(n, n)?;
    let dims = [mn.dim(), nm.dim(), mm.dim(), nn.dim()];
    if dims.iter().any(|&x| x != dims[0]) {
        return Ok(StableIso::NotIsomorphic { reason: NonIsoReason::DimensionMismatch(dims) });
    }
    if dims[0] == 0 {
        return Ok(StableIso::Isomorphic { f: ModuleHom::zero(m, n), g: ModuleHom::zero(n, m) });
    }
    let k = m.field();
    let s = nm.dim();
    let (coeffs, exhaustive): (Vec<Vec<Scalar>>, bool) = match k.characteristic() {
        0 => {
            // unit vectors only
            let mut out = Vec::new();
            for i in 0..s {
                let mut v = vec![k.zero(); s];
                v[i] = k.one();
                out.push(v);
            }
            (out, false)
        }
        p => {
            let total = (p as u128).checked_pow(s as u32).map(|t| t - 1);
            let exhaustive = total.is_some_and(|t| t <= cap as u128);
            (enumerate_nonzero(k, p, s, cap), exhaustive)
        }
    };
    let id_m = Matrix::identity(k, m.dim()).vectorize();
    let id_n = Matrix::identity(k, n.dim()).vectorize();
    let mut rhs = id_m.clone();
    rhs.extend(id_n.iter().cloned());
    let rhs = Matrix::column_vector(k, rhs);
    let (pm, pn) = (mm.factoring.cols(), nn.factoring.cols());
    let (md2, nd2) = (id_m.len(), id_n.len());
    for (tried, b) in coeffs.iter().enumerate() {
        if tried >= cap {
            return Ok(StableIso::Inconclusive { tried });
        }
        let mut g = Matrix::zeros(k, m.dim(), n.dim());
        for (bj, rep) in b.iter().zip(&nm.representatives) {
            if !k.is_zero(bj) {
                g = g.add(&rep.matrix().scale(bj));
            }
        }
        let r = mn.dim();
        let mut sys = Matrix::zeros(k, md2 + nd2, r + pm + pn);
        for (i, f) in mn.representatives.iter().enumerate() {
            let gf = g.mul(f.matrix()).vectorize();
            let fg = f.matrix().mul(&g).vectorize();
            for (row, v) in gf.into_iter().enumerate() {
                sys.set(row, i, v);
            }
            for (row, v) in fg.into_iter().enumerate() {
                sys.set(md2 + row, i, v);
            }
        }
        sys.paste(0, r, &mm.factoring);
        sys.paste(md2, r + pm, &nn.factoring);
        if let Solve::Solved(x) = solve_right(&sys, &rhs)? {
            let mut f = Matrix::zeros(k, n.dim(), m.dim());
            for (i, rep) in mn.representatives.iter().enumerate() {
                let c = x.get(i, 0);
                if !k.is_zero(c) {
                    f = f.add(&rep.matrix().scale(c));
                }
            }
            return Ok(StableIso::Isomorphic {
                f: ModuleHom::new_unchecked(m.clone(), n.clone(), f),
                g: ModuleHom::new_unchecked(n.clone(), m.clone(), g),
            });
        }
    }
    if exhaustive {
        Ok(StableIso::NotIsomorphic { reason: NonIsoReason::Exhausted })
    } else {
        Ok(StableIso::Inconclusive { tried: coeffs.len() })
    }
}

// Nonzero vectors of F_p^s in counting order, at most `cap + 1` of them.
fn enumerate_nonzero(k: crate::field::Field, p: u32, s: usize, cap: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut digits = vec![0u32; s];
    loop {
        let mut i = 0;
        while i < s {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == s {
            return out;
        }
        out.push(digits.iter().map(|&d| k.from_int(d as i64)).collect());
        if out.len() > cap {
            return out;
        }
    }
}

/// A Gorenstein-projective module viewed in the stable category.
#[derive(Clone, Debug)]
pub struct StableObject {
    pub module: Module,
    pub gdim: usize,
}

/// `Z^0` of the complete resolution of `M` with window radius `d`.
pub fn realize_module(ctx: &GorensteinContext, m: &Module) -> Result<StableObject, Error> {
    let window = complete_resolution(ctx, m, ctx.gdim)?;
    let module = window.z0().clone();
    if !is_gp(ctx, &module)? {
        return Err(Error::GdimTooSmall { gdim: ctx.gdim, stage: "realization is not Gorenstein-projective" });
    }
    Ok(StableObject { module, gdim: ctx.gdim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::algebra::{direct_sum, hom_basis, validate_module};
    use crate::resolve::syzygy;

    fn ctx(a: &Arc<Algebra>, d: usize) -> GorensteinContext {
        GorensteinContext::new(a.clone(), d)
    }

    #[test]
    fn gp_test_examples() {
        let a = dual_numbers();
        assert!(is_gorenstein_projective(&ctx(&a, 0), &residue_field(&a)).unwrap().is_gorenstein_projective());
        let t = upper_triangular();
        let c = ctx(&t, 1);
        let s2 = is_gorenstein_projective(&c, &triangular_simple(&t, 2)).unwrap();
        assert!(!s2.is_gorenstein_projective());
        assert_eq!(s2.ext_dims.len(), 1);
        assert!(is_gorenstein_projective(&c, &free_module(&t, 2)).unwrap().is_gorenstein_projective());
        assert!(is_gorenstein_projective(&c, &triangular_simple(&t, 1)).unwrap().is_gorenstein_projective());
    }

    #[test]
    fn cosyzygy_of_trivial_module_is_socle_embedding() {
        let a = dual_numbers();
        let c = cosyzygy(&ctx(&a, 0), &residue_field(&a)).unwrap();
        assert_eq!(c.rank, 1);
        assert_eq!(c.embedding.matrix(), &Matrix::from_ints(a.field(), &[&[0], &[1]]));
        assert_eq!(c.cokernel.dim(), 1);
        assert!(c.cokernel.action(1).is_zero());
        assert!(c.embedding.intertwines());
    }

    #[test]
    fn cosyzygy_of_free_and_zero() {
        let a = klein();
        let c = cosyzygy(&ctx(&a, 0), &free_module(&a, 1)).unwrap();
        assert_eq!(c.rank, 1);
        assert!(c.cokernel.is_zero());
        let z = cosyzygy(&ctx(&a, 0), &Module::zero(&a)).unwrap();
        assert!(z.free.is_zero() && z.cokernel.is_zero());
    }

    #[test]
    fn cosyzygy_rejects_non_gp() {
        let t = upper_triangular();
        let err = cosyzygy(&ctx(&t, 1), &triangular_simple(&t, 2)).unwrap_err();
        assert!(matches!(err, Error::NotGorensteinProjective { .. }));
    }

    #[test]
    fn syzygy_inverts_cosyzygy_stably() {
        let a = klein();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        let back = syzygy(&cosyzygy(&c, &k).unwrap().cokernel, 1);
        assert!(stable_iso_check(&c, &k, &back).unwrap().is_isomorphic());
        let forth = cosyzygy(&c, &syzygy(&k, 1)).unwrap().cokernel;
        assert!(stable_iso_check(&c, &k, &forth).unwrap().is_isomorphic());
    }

    #[test]
    fn periodic_complete_resolution() {
        let a = dual_numbers();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        let w = complete_resolution(&c, &k, 3).unwrap();
        assert_eq!(w.components.len(), 8);
        assert!(w.ranks.iter().all(|&r| r == 1));
        for d in &w.differentials {
            assert_eq!(d.rank(), 1);
            assert!(d.matrix().mul(d.matrix()).is_zero());
        }
        assert_eq!(w.z0().dim(), 1);
        assert!(w.check(&c, &k).unwrap().passed());
        assert_eq!(w.agreement.first(), Some(&(-3, 2)));
    }

    #[test]
    fn klein_complete_resolution_growth() {
        let a = klein();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        let w = complete_resolution(&c, &k, 2).unwrap();
        // T^{-1} = F_0, T^{-2} = F_1 of the resolution of k: ranks 1 and 2
        assert_eq!(w.component(-1).dim(), 4);
        assert_eq!(w.component(-2).dim(), 8);
        assert_eq!((-2..=2).map(|j| w.cycle(j).dim()).collect::<Vec<_>>(), vec![5, 3, 1, 3, 5]);
        assert!(w.check(&c, &k).unwrap().passed());
    }

    #[test]
    fn window_radius_must_cover_gdim() {
        let t = upper_triangular();
        let err = complete_resolution(&ctx(&t, 1), &triangular_simple(&t, 2), 0).unwrap_err();
        assert_eq!(err, Error::WindowTooSmall { window: 0, gdim: 1 });
    }

    #[test]
    fn free_module_has_zero_window() {
        for (a, d) in [(dual_numbers(), 0), (upper_triangular(), 1)] {
            let w = complete_resolution(&ctx(&a, d), &free_module(&a, 2), 2).unwrap();
            assert!(w.is_zero());
        }
        let t = upper_triangular();
        let w = complete_resolution(&ctx(&t, 1), &triangular_simple(&t, 2), 2).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn approximation_short_circuits_on_gp() {
        let a = dual_numbers();
        let k = residue_field(&a);
        let ap = gp_approximation(&ctx(&a, 0), &k).unwrap();
        assert_eq!(ap.approximation, k);
        assert!(ap.kernel.is_zero());
        assert!(ap.is_exact());
    }

    #[test]
    fn approximation_over_triangular_algebra_is_projective() {
        let t = upper_triangular();
        let c = ctx(&t, 1);
        let s2 = triangular_simple(&t, 2);
        let ap = gp_approximation(&c, &s2).unwrap();
        assert!(ap.is_exact());
        assert!(ap.projection.intertwines() && ap.inclusion.intertwines());
        assert_eq!(validate_module(&ap.approximation), Ok(()));
        assert!(is_projective(&ap.approximation).is_projective());
        assert!(ap.kernel_pd <= 1);
    }

    #[test]
    fn hull_of_trivial_module_is_regular() {
        let a = dual_numbers();
        let h = fpd_hull(&ctx(&a, 0), &residue_field(&a)).unwrap();
        assert_eq!(h.hull.dim(), 2);
        assert_eq!(h.hull_pd, 0);
        assert_eq!(h.cokernel.dim(), 1);
        assert!(h.is_exact());
    }

    #[test]
    fn hull_over_triangular_algebra() {
        let t = upper_triangular();
        let h = fpd_hull(&ctx(&t, 1), &triangular_simple(&t, 2)).unwrap();
        assert!(h.is_exact());
        assert!(h.hull_pd <= 1);
        assert!(h.embedding.intertwines() && h.projection.intertwines());
        let z = fpd_hull(&ctx(&t, 1), &Module::zero(&t)).unwrap();
        assert!(z.hull.is_zero() && z.cokernel.is_zero());
    }

    #[test]
    fn stable_endomorphisms_of_trivial_module() {
        let a = dual_numbers();
        let k = residue_field(&a);
        let s = stable_hom(&k, &k).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(stable_hom(&free_module(&a, 1), &k).unwrap().dim(), 0);
        assert_eq!(stable_hom(&Module::zero(&a), &k).unwrap().dim(), 0);
    }

    // Oracle: span of all composites β ∘ α through the cover, from explicit Hom bases.
    fn factoring_by_composites(m: &Module, n: &Module) -> usize {
        let f = free_cover(n).cover;
        let alphas = hom_basis(m, &f).unwrap();
        let betas = hom_basis(&f, n).unwrap();
        let k = m.field();
        let cols: Vec<Vec<Scalar>> = alphas
            .iter()
            .flat_map(|a| betas.iter().map(move |b| b.compose(a).matrix().vectorize()))
            .collect();
        Matrix::from_columns(k, m.dim() * n.dim(), &cols).rank()
    }

    #[test]
    fn factoring_subspace_matches_composites() {
        let a = klein();
        let k = residue_field(&a);
        let o = syzygy(&k, 1);
        for (x, y) in [(&k, &k), (&k, &o), (&o, &k), (&o, &o)] {
            assert_eq!(stable_hom(x, y).unwrap().factoring.cols(), factoring_by_composites(x, y));
        }
    }

    #[test]
    fn stable_hom_ignores_free_summands() {
        let a = truncated_cubic();
        let k = residue_field(&a);
        let kf = direct_sum(&a, &[k.clone(), free_module(&a, 1)]).module;
        assert_eq!(stable_hom(&k, &k).unwrap().dim(), stable_hom(&kf, &k).unwrap().dim());
    }

    #[test]
    fn stable_iso_examples() {
        let a = dual_numbers();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        assert!(stable_iso_check(&c, &k, &k).unwrap().is_isomorphic());
        assert!(stable_iso_check(&c, &k, &syzygy(&k, 2)).unwrap().is_isomorphic());
        match stable_iso_check(&c, &k, &free_module(&a, 1)).unwrap() {
            StableIso::NotIsomorphic { reason: NonIsoReason::DimensionMismatch(d) } => assert_eq!(d, [0, 0, 1, 0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn stable_iso_distinguishes_same_dimension_modules() {
        // over F_3[x]/(x^3) all four stable spaces between k and Ωk = A/(x^2) are one-dimensional
        let a = truncated_cubic();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        let o = syzygy(&k, 1);
        match stable_iso_check(&c, &k, &o).unwrap() {
            StableIso::NotIsomorphic { reason } => assert_eq!(reason, NonIsoReason::Exhausted),
            other => panic!("unexpected {other:?}"),
        }
        let o2 = syzygy(&k, 2);
        assert!(stable_iso_check(&c, &k, &o2).unwrap().is_isomorphic());
    }

    #[test]
    fn realization_examples() {
        let a = dual_numbers();
        let c = ctx(&a, 0);
        let k = residue_field(&a);
        let r = realize_module(&c, &k).unwrap();
        assert!(stable_iso_check(&c, &r.module, &k).unwrap().is_isomorphic());
        assert!(realize_module(&c, &free_module(&a, 1)).unwrap().module.is_zero());
        let t = upper_triangular();
        let r = realize_module(&ctx(&t, 1), &triangular_simple(&t, 2)).unwrap();
        assert_eq!(stable_hom(&r.module, &r.module).unwrap().dim(), 0);
    }
}
