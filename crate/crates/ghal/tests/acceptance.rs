//! Acceptance criteria 1-10: one PASS/FAIL line each, exit status 1 if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ghal::corpus::{Corpus, CorpusAlgebra};
use ghal::format::{complex_file, load_complex, load_module, module_file, read_json};
use ghal_core::algebra::Module;
use ghal_core::complexes::{
    class_membership, dg_test, find_nullhomotopy, homotopy_classes, is_acyclic, is_contractible, realize_complex,
    realize_complex_with, splice_degree, standard_family, window_homotopy_classes, witness_weak_triviality,
    ChainComplex, ClassKind, ClassOracle, Contractibility, DgVerdict, DgWitness, Stabilization,
};
use ghal_core::gorenstein::{
    complete_resolution, cosyzygy, gp_approximation, is_gorenstein_projective, realize_module, stable_hom,
    stable_iso_check, GorensteinContext,
};
use ghal_core::resolve::{ext_dims, free_cover, is_projective};
use serde_json::Value;

type Check = Result<String, String>;

fn corpus() -> Corpus {
    Corpus::load(&Corpus::default_root()).expect("bundled corpus loads")
}

fn algebra<'a>(c: &'a Corpus, name: &str) -> &'a CorpusAlgebra {
    c.algebras.iter().find(|a| a.name == name).expect("corpus algebra")
}

fn ctx(a: &CorpusAlgebra) -> GorensteinContext {
    GorensteinContext::new(a.algebra.clone(), a.gdim)
}

fn module<'a>(a: &'a CorpusAlgebra, name: &str) -> &'a Module {
    &a.modules.iter().find(|m| m.name == name).expect("corpus module").value
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn iso(ctx: &GorensteinContext, m: &Module, n: &Module) -> Result<bool, String> {
    Ok(stable_iso_check(ctx, m, n).map_err(err)?.is_isomorphic())
}

fn realization_equals_approximation(c: &Corpus) -> Check {
    let mut n = 0;
    for alg in &c.algebras {
        let ctx = ctx(alg);
        for item in &alg.modules {
            let m = &item.value;
            let r = realize_module(&ctx, m).map_err(err)?.module;
            let g = gp_approximation(&ctx, m).map_err(err)?.approximation;
            ensure(iso(&ctx, &r, &g)?, format!("{}/{}: realization differs from approximation", alg.name, item.name))?;
            let rc = realize_complex(&ctx, &ChainComplex::concentrated(m, 0)).map_err(err)?.module;
            ensure(iso(&ctx, &rc, &r)?, format!("{}/{}: complex realization differs", alg.name, item.name))?;
            n += 1;
        }
    }
    ensure(n >= 12, format!("only {n} corpus modules"))?;
    Ok(format!("{n} modules"))
}

fn finite_global_dimension_vanishes(c: &Corpus) -> Check {
    let alg = algebra(c, "upper-triangular");
    let ctx = ctx(alg);
    for item in &alg.modules {
        let r = realize_module(&ctx, &item.value).map_err(err)?.module;
        let d = stable_hom(&r, &r).map_err(err)?.dim();
        ensure(d == 0, format!("{}: stable endomorphisms of dimension {d}", item.name))?;
    }
    Ok(format!("{} modules stably zero", alg.modules.len()))
}

fn shift_relation(c: &Corpus) -> Check {
    let mut n = 0;
    for name in ["dual-numbers", "klein"] {
        let alg = algebra(c, name);
        let ctx = ctx(alg);
        for item in &alg.modules {
            let m = &item.value;
            ensure(is_gorenstein_projective(&ctx, m).map_err(err)?.is_gorenstein_projective(), "corpus module not GP")?;
            let omega = free_cover(m).syzygy;
            let co = cosyzygy(&ctx, m).map_err(err)?.cokernel;
            ensure(iso(&ctx, &cosyzygy(&ctx, &omega).map_err(err)?.cokernel, m)?, format!("{name}/{}: Ω⁻¹Ω", item.name))?;
            ensure(iso(&ctx, &free_cover(&co).syzygy, m)?, format!("{name}/{}: ΩΩ⁻¹", item.name))?;
            let x = ChainComplex::concentrated(m, 0);
            let s = splice_degree(&ctx, &x);
            let left = realize_complex_with(&ctx, &x, s, Stabilization::Left).map_err(err)?.module;
            let right = realize_complex_with(&ctx, &x, s, Stabilization::Right).map_err(err)?.module;
            let sigma = cosyzygy(&ctx, &left).map_err(err)?.cokernel;
            ensure(iso(&ctx, &right, &sigma)?, format!("{name}/{}: right variant is not Σ(left)", item.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} GP modules"))
}

fn contractibility_agreement(c: &Corpus) -> Check {
    let (mut yes, mut no, mut total) = (0, 0, 0);
    for alg in &c.algebras {
        for item in &alg.complexes {
            match is_contractible(&item.value).map_err(|e| format!("{}/{}: {e}", alg.name, item.name))? {
                Contractibility::Contractible { .. } => yes += 1,
                Contractibility::NotContractible { .. } | Contractibility::NotAcyclic { .. } => no += 1,
            }
            total += 1;
        }
    }
    ensure(total >= 20 && yes > 0 && no > 0, format!("{total} complexes, {yes} contractible, {no} not"))?;
    Ok(format!("{total} complexes agree ({yes} contractible, {no} not)"))
}

fn tilde_is_dg_and_acyclic(c: &Corpus) -> Check {
    let (mut total, mut failures) = (0, 0);
    let projective = ClassOracle::Projective;
    for alg in &c.algebras {
        let ctx = ctx(alg);
        let seeds: Vec<Module> = alg.modules.iter().map(|m| m.value.clone()).collect();
        let family = standard_family(&ctx, &seeds, -2, 4).map_err(err)?;
        for item in &alg.complexes {
            let x = &item.value;
            let tilde = class_membership(x, &projective, ClassKind::Tilde).map_err(err)?.member;
            let dg = dg_test(x, &projective, &ClassOracle::All, &family).map_err(err)?;
            ensure(tilde == (dg.passed() && is_acyclic(x)), format!("{}/{}: discrepancy", alg.name, item.name))?;
            match dg {
                DgVerdict::Pass { .. } => {}
                DgVerdict::Fail(DgWitness::Degreewise { degree }) => {
                    ensure(!is_projective(x.component(degree)).is_projective(), "degreewise witness is projective")?;
                    failures += 1;
                }
                DgVerdict::Fail(DgWitness::Homotopy { member, map }) => {
                    let d = &family[member];
                    ensure(map.is_chain_map(x, d), "homotopy witness is not a chain map")?;
                    let h = homotopy_classes(x, d).map_err(err)?;
                    let null = find_nullhomotopy(x, d, &map, h.lo, h.hi).map_err(err)?;
                    ensure(null.is_none() && !h.is_nullhomotopic(&map), "homotopy witness is nullhomotopic")?;
                    failures += 1;
                }
            }
            total += 1;
        }
    }
    Ok(format!("{total} complexes, 0 discrepancies, {failures} verified witnesses"))
}

fn approximation_certificates(c: &Corpus) -> Check {
    for alg in &c.algebras {
        let ctx = ctx(alg);
        for item in &alg.modules {
            let a = gp_approximation(&ctx, &item.value).map_err(err)?;
            ensure(
                a.is_exact() && a.gp.is_gorenstein_projective() && a.kernel_pd <= ctx.gdim,
                format!("{}/{}: bad certificate", alg.name, item.name),
            )?;
            if alg.name == "upper-triangular" {
                ensure(is_projective(&a.approximation).is_projective(), format!("{}: G not projective", item.name))?;
            }
        }
    }
    let dual = algebra(c, "dual-numbers");
    let k = module(dual, "k");
    let a = gp_approximation(&ctx(dual), k).map_err(err)?;
    ensure(a.kernel.dim() == 0 && a.approximation.dim() == 1, "approximation of k over dual numbers is not k")?;
    ensure(a.projection.is_isomorphism(), "G -> k is not an isomorphism")?;
    Ok("all corpus modules certified; G = k, K = 0 for k; G projective over T2".into())
}

fn stable_hom_ledger(c: &Corpus) -> Check {
    let dual = algebra(c, "dual-numbers");
    let k = module(dual, "k");
    let end = stable_hom(k, k).map_err(err)?.dim();
    ensure(end == 1, format!("dim stable End(k) = {end}"))?;
    let ext = ext_dims(k, k, 5).map_err(err)?;
    ensure(ext == [1, 1, 1, 1, 1, 1], format!("Ext^i(k,k) = {ext:?}"))?;
    let omega = free_cover(module(algebra(c, "klein"), "k")).syzygy.dim();
    ensure(omega == 3, format!("dim Ωk = {omega} over the Klein algebra"))?;
    Ok(format!("stable End(k) = {end}, Ext^0..5(k,k) = {ext:?}, dim Ωk = {omega}"))
}

fn window_homotopy(c: &Corpus) -> Check {
    let dual = algebra(c, "dual-numbers");
    let ctx = ctx(dual);
    let k = module(dual, "k");
    let s = complete_resolution(&ctx, k, 3).map_err(err)?;
    let t = complete_resolution(&ctx, k, 3).map_err(err)?;
    let h = window_homotopy_classes(&s, &t).map_err(err)?.quotient_dim();
    let st = stable_hom(s.z0(), t.z0()).map_err(err)?.dim();
    ensure(h == st && h == 1, format!("window homotopy {h}, stable Hom {st}"))?;
    Ok(format!("[S, T] = {h} = dim stable Hom(Z0 S, Z0 T)"))
}

fn witness_soundness(c: &Corpus) -> Check {
    let mut n = 0;
    for alg in &c.algebras {
        let ctx = ctx(alg);
        for item in alg.complexes.iter().filter(|x| is_acyclic(&x.value)) {
            let w = witness_weak_triviality(&ctx, &item.value).map_err(|e| format!("{}/{}: {e}", alg.name, item.name))?;
            ensure(w.verify(&ctx, &item.value).map_err(err)?, format!("{}/{}: witness fails", alg.name, item.name))?;
            n += 1;
        }
    }
    Ok(format!("{n} acyclic complexes"))
}

fn ghal(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ghal")).args(args).output().map_err(err)?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn report_without_timestamp(path: &Path) -> Result<Value, String> {
    let (mut v, _) = read_json::<Value>(path).map_err(err)?;
    v.as_object_mut().ok_or("report is not an object")?.remove("timestamp");
    Ok(v)
}

fn determinism_and_round_trip(c: &Corpus) -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let p = |name: &str| dir.path().join(name).display().to_string();
    for name in ["r1.json", "r2.json"] {
        let (code, _) = ghal(&["verify", "--suite", "all", "--out", &p(name)])?;
        ensure(code == 0, format!("verify exited with {code}"))?;
    }
    let (a, b) = (report_without_timestamp(&dir.path().join("r1.json"))?, report_without_timestamp(&dir.path().join("r2.json"))?);
    ensure(a == b, "reports differ")?;
    let dual = algebra(c, "dual-numbers");
    let root = Corpus::default_root();
    let alg = root.join("dual-numbers/algebra.json").display().to_string();
    let k = root.join("dual-numbers/modules/k.json").display().to_string();
    let closure = root.join("dual-numbers/complexes/closure-2.json").display().to_string();
    let mut emitted = 0;
    for cmd in ["realize", "approx", "syzygy"] {
        let out = p(&format!("{cmd}.json"));
        let (code, _) = ghal(&[cmd, "--algebra", &alg, "--module", &k, "--gdim", "0", "--out", &out])?;
        ensure(code == 0, format!("{cmd} exited with {code}"))?;
        let m = load_module(&dual.algebra, Path::new(&out)).map_err(err)?;
        ensure(ghal::format::module_of(&dual.algebra, &module_file(&m)).map_err(err)? == m, "module round trip")?;
        emitted += 1;
    }
    let wdir = p("witness");
    let (code, _) = ghal(&["witness-w", "--algebra", &alg, "--complex", &closure, "--gdim", "0", "--out", &wdir])?;
    ensure(code == 0, format!("witness-w exited with {code}"))?;
    for f in ["f.json", "c.json"] {
        let x = load_complex(&dual.algebra, &Path::new(&wdir).join(f)).map_err(err)?;
        ensure(ghal::format::complex_of(&dual.algebra, &complex_file(&x)).map_err(err)? == x, "complex round trip")?;
        emitted += 1;
    }
    let regen = dir.path().join("corpus");
    ghal::corpus::write_bundled(&regen).map_err(err)?;
    let again = Corpus::load(&regen).map_err(err)?;
    let digests = |c: &Corpus| -> Vec<String> {
        c.algebras.iter().flat_map(|a| a.modules.iter().map(|m| m.digest.clone()).chain(a.complexes.iter().map(|x| x.digest.clone()))).collect()
    };
    ensure(digests(&again) == digests(c), "regenerated corpus differs from the bundled one")?;
    Ok(format!("identical reports; {emitted} emitted files and the regenerated corpus re-validate"))
}

fn main() {
    let c = corpus();
    let criteria: [(&str, u64, fn(&Corpus) -> Check); 10] = [
        ("realization equals approximation", 5000, realization_equals_approximation),
        ("finite global dimension has zero stable category", 1000, finite_global_dimension_vanishes),
        ("syzygy and cosyzygy are stably inverse; right variant is the suspension", 2000, shift_relation),
        ("split test agrees with nullhomotopy test", 1000, contractibility_agreement),
        ("tilde = dg and acyclic, witnesses verified", 2000, tilde_is_dg_and_acyclic),
        ("approximation certificates", 1000, approximation_certificates),
        ("stable Hom and Ext ledger", 1000, stable_hom_ledger),
        ("window homotopy equals stable Hom", 1000, window_homotopy),
        ("weak-triviality witnesses are sound", 1000, witness_soundness),
        ("determinism and round trip", 10000, determinism_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, budget_ms, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(&c);
        let elapsed = start.elapsed();
        let budget = Duration::from_millis(*budget_ms);
        let (ok, detail) = match result {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over time budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {} ({detail}; {} ms of {budget_ms} ms)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            elapsed.as_millis()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
