//! Verification suites over the corpus.

use ghal_core::algebra::Module;
use ghal_core::complexes::{
    class_membership, dg_test, homotopy_classes, is_acyclic, is_contractible, realize_complex, realize_complex_with,
    splice_degree, standard_family, truncated_replacement, witness_weak_triviality, ChainComplex, ClassKind,
    ClassOracle, Contractibility, DgVerdict, DgWitness, Stabilization,
};
use ghal_core::gorenstein::{
    complete_resolution, cosyzygy, gp_approximation, is_gorenstein_projective, realize_module, stable_hom,
    stable_iso_check, GorensteinContext, NonIsoReason, StableIso,
};
use ghal_core::resolve::free_cover;
use serde_json::{json, Value};

use crate::corpus::{Corpus, CorpusAlgebra, Item};
use crate::report::{CheckRecord, InputDigest, Report, Verdict};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    FrobeniusShift,
    Realization,
    Classes,
    Contractibility,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["frobenius-shift", "realization", "classes", "contractibility", "all"];

    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "frobenius-shift" => Suite::FrobeniusShift,
            "realization" => Suite::Realization,
            "classes" => Suite::Classes,
            "contractibility" => Suite::Contractibility,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

type Outcome = Result<(bool, Value), ghal_core::Error>;

fn record<T>(name: &str, anchor: &str, alg: &CorpusAlgebra, item: &Item<T>, outcome: Outcome) -> CheckRecord {
    let (ok, details) = match outcome {
        Ok(v) => v,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    CheckRecord {
        name: name.into(),
        anchor: anchor.into(),
        input: format!("{}/{}", alg.name, item.name),
        digest: item.digest.clone(),
        verdict: Verdict::from(ok),
        details,
    }
}

pub fn iso_json(iso: &StableIso) -> Value {
    match iso {
        StableIso::Isomorphic { .. } => json!({ "verdict": "isomorphic" }),
        StableIso::NotIsomorphic { reason: NonIsoReason::DimensionMismatch(d) } => {
            json!({ "verdict": "not-isomorphic", "reason": "dimension-mismatch", "stable_dims": d })
        }
        StableIso::NotIsomorphic { reason: NonIsoReason::Exhausted } => {
            json!({ "verdict": "not-isomorphic", "reason": "exhausted" })
        }
        StableIso::Inconclusive { tried } => json!({ "verdict": "inconclusive", "tried": tried }),
    }
}

fn iso(ctx: &GorensteinContext, m: &Module, n: &Module) -> Outcome {
    let r = stable_iso_check(ctx, m, n)?;
    Ok((r.is_isomorphic(), json!({ "dims": [m.dim(), n.dim()], "iso": iso_json(&r) })))
}

fn shift_checks(ctx: &GorensteinContext, alg: &CorpusAlgebra, out: &mut Vec<CheckRecord>) -> Result<(), ghal_core::Error> {
    for item in &alg.modules {
        let m = &item.value;
        if is_gorenstein_projective(ctx, m)?.is_gorenstein_projective() {
            let outcome = (|| {
                let omega = free_cover(m).syzygy;
                let back = cosyzygy(ctx, &omega)?.cokernel;
                let forth = free_cover(&cosyzygy(ctx, m)?.cokernel).syzygy;
                let (a, da) = iso(ctx, &back, m)?;
                let (b, db) = iso(ctx, &forth, m)?;
                Ok((a && b, json!({ "cosyzygy_of_syzygy": da, "syzygy_of_cosyzygy": db })))
            })();
            out.push(record("syzygy-cosyzygy-inverse", "frobenius-shift", alg, item, outcome));
        }
        let outcome = (|| {
            let x = ChainComplex::concentrated(m, 0);
            let s = splice_degree(ctx, &x);
            let left = realize_complex_with(ctx, &x, s, Stabilization::Left)?.module;
            let right = realize_complex_with(ctx, &x, s, Stabilization::Right)?.module;
            iso(ctx, &right, &cosyzygy(ctx, &left)?.cokernel)
        })();
        out.push(record("right-variant-is-suspension", "stabilization-shift", alg, item, outcome));
    }
    Ok(())
}

fn realization_checks(ctx: &GorensteinContext, alg: &CorpusAlgebra, out: &mut Vec<CheckRecord>) {
    for item in &alg.modules {
        let m = &item.value;
        let outcome = (|| {
            let r = realize_module(ctx, m)?.module;
            let g = gp_approximation(ctx, m)?.approximation;
            iso(ctx, &r, &g)
        })();
        out.push(record("realization-equals-approximation", "realization", alg, item, outcome));
        let outcome = (|| {
            let r = realize_complex(ctx, &ChainComplex::concentrated(m, 0))?.module;
            iso(ctx, &r, &realize_module(ctx, m)?.module)
        })();
        out.push(record("realize-complex-concentrated", "realization", alg, item, outcome));
        let outcome = (|| {
            let a = gp_approximation(ctx, m)?;
            let ok = a.is_exact() && a.gp.is_gorenstein_projective() && a.kernel_pd <= ctx.gdim;
            let d = json!({
                "approximation_dim": a.approximation.dim(),
                "kernel_dim": a.kernel.dim(),
                "kernel_pd": a.kernel_pd,
                "exact": a.is_exact(),
            });
            Ok((ok, d))
        })();
        out.push(record("approximation-certificate", "approximation", alg, item, outcome));
        let outcome = (|| {
            let w = complete_resolution(ctx, m, ctx.gdim + 2)?;
            let r = w.check(ctx, m)?;
            let d = json!({
                "ranks": w.ranks,
                "acyclic": r.acyclic,
                "free": r.free,
                "cycles_gp": r.cycles_gp,
                "agrees": r.agrees,
            });
            Ok((r.passed(), d))
        })();
        out.push(record("complete-resolution-window", "complete-resolution", alg, item, outcome));
        if let Some(gl) = alg.global_dimension {
            let outcome = (|| {
                let r = realize_module(ctx, m)?.module;
                let dim = stable_hom(&r, &r)?.dim();
                Ok((dim == 0, json!({ "global_dimension": gl, "stable_dim_end": dim })))
            })();
            out.push(record("finite-global-dimension-vanishing", "realization", alg, item, outcome));
        }
    }
    for item in &alg.complexes {
        let x = &item.value;
        let outcome = (|| {
            let r = realize_complex(ctx, x)?.module;
            let t = truncated_replacement(x, x.lo() - 1);
            let r2 = realize_complex(ctx, &t)?.module;
            iso(ctx, &r, &r2)
        })();
        out.push(record("realize-complex-quasi-iso-invariance", "realization", alg, item, outcome));
    }
}

fn family(ctx: &GorensteinContext, alg: &CorpusAlgebra) -> Result<Vec<ChainComplex>, ghal_core::Error> {
    let seeds: Vec<Module> = alg.modules.iter().map(|m| m.value.clone()).collect();
    standard_family(ctx, &seeds, -2, 4)
}

fn class_checks(ctx: &GorensteinContext, alg: &CorpusAlgebra, out: &mut Vec<CheckRecord>) {
    let family = family(ctx, alg);
    let projective = ClassOracle::Projective;
    for item in &alg.complexes {
        let x = &item.value;
        let outcome = (|| {
            let family = family.clone()?;
            let tilde = class_membership(x, &projective, ClassKind::Tilde)?.member;
            let acyclic = is_acyclic(x);
            let dg = dg_test(x, &projective, &ClassOracle::All, &family)?;
            let witness = match &dg {
                DgVerdict::Pass { .. } => Value::Null,
                DgVerdict::Fail(DgWitness::Degreewise { degree }) => json!({ "degreewise": degree }),
                DgVerdict::Fail(DgWitness::Homotopy { member, .. }) => json!({ "homotopy_member": member }),
            };
            let d = json!({
                "tilde": tilde,
                "dg_pass": dg.passed(),
                "acyclic": acyclic,
                "family_size": family.len(),
                "witness": witness,
            });
            Ok((tilde == (dg.passed() && acyclic), d))
        })();
        out.push(record("tilde-equals-dg-and-acyclic", "tilde-dg-acyc", alg, item, outcome));
        let frees = class_membership(x, &projective, ClassKind::Dw);
        if matches!(frees, Ok(ref m) if m.member) {
            let outcome = (|| {
                let dg = dg_test(x, &projective, &ClassOracle::All, &family.clone()?)?;
                Ok((dg.passed(), json!({ "dg_pass": dg.passed() })))
            })();
            out.push(record("bounded-frees-are-dg", "bounded-above-dg", alg, item, outcome));
        }
        if is_acyclic(x) {
            let outcome = (|| {
                let mut dims = Vec::new();
                for p in &alg.complexes {
                    if class_membership(&p.value, &projective, ClassKind::Dw)?.member {
                        dims.push(json!([p.name, homotopy_classes(&p.value, x)?.quotient_dim()]));
                    }
                }
                let ok = dims.iter().all(|d| d[1] == 0);
                Ok((ok, json!({ "homotopy_from_frees": dims })))
            })();
            out.push(record("acyclic-orthogonal-to-frees", "bounded-below-orthogonality", alg, item, outcome));
            let outcome = (|| {
                let w = witness_weak_triviality(ctx, x)?;
                let ok = w.verify(ctx, x)?;
                let dims = |c: &ChainComplex| c.components().iter().map(Module::dim).collect::<Vec<_>>();
                Ok((ok, json!({ "f_dims": dims(&w.f), "c_dims": dims(&w.c) })))
            })();
            out.push(record("weak-triviality-witness", "weak-triviality", alg, item, outcome));
        }
    }
}

fn contractibility_checks(alg: &CorpusAlgebra, out: &mut Vec<CheckRecord>) {
    for item in &alg.complexes {
        let outcome = is_contractible(&item.value).map(|c| {
            let d = match c {
                Contractibility::NotAcyclic { degree } => json!({ "contractible": false, "homology_degree": degree }),
                Contractibility::Contractible { .. } => json!({ "contractible": true }),
                Contractibility::NotContractible { degree } => {
                    json!({ "contractible": false, "non_split_degree": degree })
                }
            };
            (true, d)
        });
        out.push(record("split-test-agrees-with-nullhomotopy", "contractibility", alg, item, outcome));
    }
}

/// Runs `suite` over an already validated corpus.
pub fn run_suite(corpus: &Corpus, suite: Suite) -> Result<Report, CliError> {
    let mut checks = Vec::new();
    let mut inputs = Vec::new();
    for alg in &corpus.algebras {
        let ctx = GorensteinContext::new(alg.algebra.clone(), alg.gdim);
        inputs.push(InputDigest { path: alg.name.clone(), sha256: alg.digest.clone() });
        for m in &alg.modules {
            inputs.push(InputDigest { path: format!("{}/modules/{}", alg.name, m.name), sha256: m.digest.clone() });
        }
        for c in &alg.complexes {
            inputs.push(InputDigest { path: format!("{}/complexes/{}", alg.name, c.name), sha256: c.digest.clone() });
        }
        if suite.includes(Suite::FrobeniusShift) {
            shift_checks(&ctx, alg, &mut checks)?;
        }
        if suite.includes(Suite::Realization) {
            realization_checks(&ctx, alg, &mut checks);
        }
        if suite.includes(Suite::Classes) {
            class_checks(&ctx, alg, &mut checks);
        }
        if suite.includes(Suite::Contractibility) {
            contractibility_checks(alg, &mut checks);
        }
    }
    Ok(Report::new(suite.name(), inputs, checks))
}
