//! `ghal` subcommands. Every command prints one JSON object on stdout.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use ghal_core::algebra::{free_module, Algebra, Module};
use ghal_core::complexes::{
    class_membership, dg_test, homology, homotopy_classes, is_acyclic, is_contractible, realize_complex,
    splice_degree, standard_family, validate_complex, witness_weak_triviality, ChainComplex, ClassKind, ClassOracle,
    Contractibility, DgVerdict, DgWitness,
};
use ghal_core::gorenstein::{
    complete_resolution, cosyzygy, fpd_hull, gp_approximation, is_gorenstein_projective, stable_hom,
    stable_iso_check, GorensteinContext,
};
use ghal_core::resolve::{ext_space, proj_dim_upto, resolution, syzygy, ProjDim};
use serde_json::{json, Value};

use crate::corpus::Corpus;
use crate::format::{complex_file, complex_shape_of, load_algebra, load_complex, load_module, module_file, read_json, write_json};
use crate::suites::{iso_json, run_suite, Suite};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ghal", version, about = "Exact Gorenstein homological algebra over finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Algebra file.
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// Module file.
    #[arg(long, global = true)]
    pub module: Option<PathBuf>,
    /// Second module file (Ext and stable Hom targets, stable-iso partner).
    #[arg(long, global = true)]
    pub of_module: Option<PathBuf>,
    /// Complex file.
    #[arg(long, global = true)]
    pub complex: Option<PathBuf>,
    /// Declared Gorenstein dimension.
    #[arg(long, global = true)]
    pub gdim: Option<usize>,
    /// Complete-resolution window radius.
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Search bound for resolutions and projective dimension.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Ext or syzygy degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Output file (module, complex, report) or directory (witness-w).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexCheck {
    Validate,
    Acyclic,
    Contractible,
    Class,
    Dg,
    Homotopy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dw,
    Tilde,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// dim Ext^degree(module, of-module).
    Ext,
    /// Ranks of a minimal-length free resolution up to --bound.
    Resolve,
    /// The syzygy module of the given degree.
    Syzygy,
    /// Projective dimension, searched up to --bound.
    Pd,
    /// Gorenstein-projectivity test with Ext certificates.
    GpTest,
    /// Cosyzygy of a Gorenstein-projective module.
    Cosyzygy,
    /// Complete-resolution window of radius --window.
    CompleteRes,
    /// Gorenstein-projective approximation.
    Approx,
    /// Hull of finite projective dimension.
    Hull,
    /// Stable Hom from module to of-module.
    StableHom,
    /// Stable isomorphism check between module and of-module.
    StableIso,
    /// Realization of a module in the stable category.
    Realize,
    /// Realization of a bounded complex.
    RealizeComplex,
    /// Predicates on a complex.
    ComplexCheck {
        #[arg(value_enum)]
        check: ComplexCheck,
        /// Class oracle: projective, gorenstein-projective, finite-pd or all.
        #[arg(long, default_value = "projective")]
        oracle: String,
        #[arg(long, value_enum, default_value = "tilde")]
        kind: Kind,
        /// Right oracle for dg.
        #[arg(long, default_value = "all")]
        right: String,
        /// Test family member files for dg; the standard family is used when absent.
        #[arg(long)]
        family: Vec<PathBuf>,
        /// Seed modules for the standard family; defaults to the regular module.
        #[arg(long)]
        seed: Vec<PathBuf>,
        /// Target complex for homotopy.
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Weak-triviality witness of a bounded acyclic complex.
    WitnessW,
    /// Run a verification suite over the bundled corpus.
    Verify {
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        /// Corpus directory containing manifest.json.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

/// Outcome of a command: JSON for stdout plus whether a mathematical check failed.
struct Output {
    value: Value,
    failed: bool,
}

impl From<Value> for Output {
    fn from(value: Value) -> Output {
        Output { value, failed: false }
    }
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Input(format!("missing required flag --{flag}")))
}

impl Cli {
    fn algebra(&self) -> Result<Arc<Algebra>, CliError> {
        load_algebra(need(&self.algebra, "algebra")?)
    }

    fn module(&self, a: &Arc<Algebra>) -> Result<Module, CliError> {
        load_module(a, need(&self.module, "module")?)
    }

    fn of_module(&self, a: &Arc<Algebra>) -> Result<Module, CliError> {
        load_module(a, need(&self.of_module, "of-module")?)
    }

    fn complex(&self, a: &Arc<Algebra>) -> Result<ChainComplex, CliError> {
        load_complex(a, need(&self.complex, "complex")?)
    }

    fn ctx(&self, a: &Arc<Algebra>) -> Result<GorensteinContext, CliError> {
        Ok(GorensteinContext::new(a.clone(), *need(&self.gdim, "gdim")?))
    }

    fn write_module(&self, m: &Module) -> Result<Option<String>, CliError> {
        match &self.out {
            Some(p) => write_json(p, &module_file(m)).map(|_| Some(p.display().to_string())),
            None => Ok(None),
        }
    }
}

fn oracle(name: &str, cli: &Cli, a: &Arc<Algebra>) -> Result<ClassOracle, CliError> {
    Ok(match name {
        "projective" => ClassOracle::Projective,
        "all" => ClassOracle::All,
        "gorenstein-projective" => ClassOracle::GorensteinProjective(cli.ctx(a)?),
        "finite-pd" => ClassOracle::FinitePd(cli.ctx(a)?),
        other => return Err(CliError::Input(format!("unknown oracle {other:?}"))),
    })
}

fn dims(x: &ChainComplex) -> Vec<usize> {
    x.components().iter().map(Module::dim).collect()
}

fn stable_end(m: &Module) -> Result<usize, CliError> {
    Ok(stable_hom(m, m)?.dim())
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Ext => {
            let a = cli.algebra()?;
            let (m, n) = (cli.module(&a)?, cli.of_module(&a)?);
            let i = *need(&cli.degree, "degree")?;
            Ok(json!({ "degree": i, "dim": ext_space(&m, &n, i)?.dim }).into())
        }
        Command::Resolve => {
            let a = cli.algebra()?;
            let m = cli.module(&a)?;
            let r = resolution(&m, cli.bound.unwrap_or(3));
            let ranks: Vec<usize> = (0..=r.length).map(|i| r.rank(i)).collect();
            let syz: Vec<usize> = (0..=r.length).map(|i| r.syzygy(i).dim()).collect();
            Ok(json!({ "ranks": ranks, "syzygy_dims": syz, "exact": r.is_exact() }).into())
        }
        Command::Syzygy => {
            let a = cli.algebra()?;
            let m = cli.module(&a)?;
            let j = cli.degree.unwrap_or(1);
            let s = syzygy(&m, j);
            Ok(json!({ "degree": j, "dim": s.dim(), "out": cli.write_module(&s)? }).into())
        }
        Command::Pd => {
            let a = cli.algebra()?;
            let m = cli.module(&a)?;
            let bound = *need(&cli.bound, "bound")?;
            Ok(match proj_dim_upto(&m, bound) {
                ProjDim::Finite(d) => json!({ "pd": d, "bound": bound }),
                ProjDim::ExceedsBound => json!({ "pd": null, "bound": bound, "exceeds_bound": true }),
            }
            .into())
        }
        Command::GpTest => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let c = is_gorenstein_projective(&ctx, &cli.module(&a)?)?;
            let v = json!({
                "gorenstein_projective": c.is_gorenstein_projective(),
                "gdim": ctx.gdim,
                "ext_dims": c.ext_dims,
            });
            Ok(v.into())
        }
        Command::Cosyzygy => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let c = cosyzygy(&ctx, &cli.module(&a)?)?;
            let out = cli.write_module(&c.cokernel)?;
            Ok(json!({ "dim": c.cokernel.dim(), "free_rank": c.rank, "out": out }).into())
        }
        Command::CompleteRes => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let m = cli.module(&a)?;
            let w = complete_resolution(&ctx, &m, cli.window.unwrap_or(ctx.gdim + 2))?;
            let r = w.check(&ctx, &m)?;
            let cycles: Vec<usize> = w.cycles.iter().map(|(z, _)| z.dim()).collect();
            let v = json!({
                "radius": w.radius,
                "lo": w.lo(),
                "ranks": w.ranks,
                "cycle_dims": cycles,
                "z0_dim": w.z0().dim(),
                "check": { "acyclic": r.acyclic, "free": r.free, "cycles_gp": r.cycles_gp, "agrees": r.agrees },
            });
            Ok(Output { value: v, failed: !r.passed() })
        }
        Command::Approx => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let g = gp_approximation(&ctx, &cli.module(&a)?)?;
            let out = cli.write_module(&g.approximation)?;
            let v = json!({
                "approximation_dim": g.approximation.dim(),
                "kernel_dim": g.kernel.dim(),
                "kernel_pd": g.kernel_pd,
                "exact": g.is_exact(),
                "out": out,
            });
            Ok(Output { value: v, failed: !g.is_exact() })
        }
        Command::Hull => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let h = fpd_hull(&ctx, &cli.module(&a)?)?;
            let out = cli.write_module(&h.hull)?;
            let v = json!({
                "hull_dim": h.hull.dim(),
                "cokernel_dim": h.cokernel.dim(),
                "hull_pd": h.hull_pd,
                "exact": h.is_exact(),
                "out": out,
            });
            Ok(Output { value: v, failed: !h.is_exact() })
        }
        Command::StableHom => {
            let a = cli.algebra()?;
            let s = stable_hom(&cli.module(&a)?, &cli.of_module(&a)?)?;
            Ok(json!({ "dim": s.dim(), "hom_dim": s.hom_dim() }).into())
        }
        Command::StableIso => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let r = stable_iso_check(&ctx, &cli.module(&a)?, &cli.of_module(&a)?)?;
            Ok(json!({ "isomorphic": r.is_isomorphic(), "result": iso_json(&r) }).into())
        }
        Command::Realize => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let m = cli.module(&a)?;
            let w = complete_resolution(&ctx, &m, cli.window.unwrap_or(ctx.gdim))?;
            let z = w.z0().clone();
            let out = cli.write_module(&z)?;
            Ok(json!({ "dim": z.dim(), "stable_dim_end": stable_end(&z)?, "out": out }).into())
        }
        Command::RealizeComplex => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let x = cli.complex(&a)?;
            let r = realize_complex(&ctx, &x)?;
            let out = cli.write_module(&r.module)?;
            let v = json!({
                "dim": r.module.dim(),
                "stable_dim_end": stable_end(&r.module)?,
                "splice_degree": splice_degree(&ctx, &x),
                "out": out,
            });
            Ok(v.into())
        }
        Command::ComplexCheck { check, oracle: name, kind, right, family, seed, other } => {
            let a = cli.algebra()?;
            complex_check(cli, &a, *check, name, *kind, right, family, seed, other.as_deref())
        }
        Command::WitnessW => {
            let a = cli.algebra()?;
            let ctx = cli.ctx(&a)?;
            let x = cli.complex(&a)?;
            let w = witness_weak_triviality(&ctx, &x)?;
            let verified = w.verify(&ctx, &x)?;
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
                write_json(&dir.join("f.json"), &complex_file(&w.f))?;
                write_json(&dir.join("c.json"), &complex_file(&w.c))?;
            }
            let v = json!({ "f_dims": dims(&w.f), "c_dims": dims(&w.c), "verified": verified });
            Ok(Output { value: v, failed: !verified })
        }
        Command::Verify { suite, corpus } => {
            let suite = Suite::parse(suite).ok_or_else(|| CliError::Input(format!("unknown suite {suite:?}")))?;
            let root = corpus.clone().unwrap_or_else(Corpus::default_root);
            let corpus = Corpus::load(&root)?;
            let report = run_suite(&corpus, suite)?;
            if let Some(p) = &cli.out {
                write_json(p, &report)?;
            }
            let v = json!({
                "suite": report.suite,
                "overall": report.overall,
                "summary": report.summary,
                "out": cli.out.as_ref().map(|p| p.display().to_string()),
            });
            let v = if cli.out.is_some() { v } else { serde_json::to_value(&report).expect("serializable") };
            Ok(Output { value: v, failed: !report.passed() })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn complex_check(
    cli: &Cli,
    a: &Arc<Algebra>,
    check: ComplexCheck,
    name: &str,
    kind: Kind,
    right: &str,
    family: &[PathBuf],
    seed: &[PathBuf],
    other: Option<&Path>,
) -> Result<Output, CliError> {
    if check == ComplexCheck::Validate {
        let path = need(&cli.complex, "complex")?;
        let (f, _) = read_json(path)?;
        let x = complex_shape_of(a, &f).map_err(|e| e.context(path))?;
        return Ok(match validate_complex(&x) {
            Ok(()) => json!({ "valid": true }).into(),
            Err(v) => Output { value: json!({ "valid": false, "violation": format!("{v:?}") }), failed: true },
        });
    }
    let x = cli.complex(a)?;
    Ok(match check {
        ComplexCheck::Validate => unreachable!(),
        ComplexCheck::Acyclic => {
            let h: Vec<(i64, usize)> = (x.lo()..=x.hi()).map(|n| (n, homology(&x, n))).filter(|&(_, d)| d > 0).collect();
            json!({ "acyclic": is_acyclic(&x), "homology": h }).into()
        }
        ComplexCheck::Contractible => match is_contractible(&x)? {
            Contractibility::Contractible { .. } => json!({ "contractible": true }),
            Contractibility::NotAcyclic { degree } => {
                json!({ "contractible": false, "reason": "not acyclic", "degree": degree })
            }
            Contractibility::NotContractible { degree } => {
                json!({ "contractible": false, "reason": "syzygy sequence does not split", "degree": degree })
            }
        }
        .into(),
        ComplexCheck::Class => {
            let o = oracle(name, cli, a)?;
            let k = match kind {
                Kind::Dw => ClassKind::Dw,
                Kind::Tilde => ClassKind::Tilde,
            };
            let m = class_membership(&x, &o, k)?;
            json!({
                "oracle": o.name(),
                "member": m.member,
                "failing_degree": m.failing_degree,
                "homology_degree": m.homology_degree,
            })
            .into()
        }
        ComplexCheck::Dg => {
            let left = oracle(name, cli, a)?;
            let right = oracle(right, cli, a)?;
            let members = if family.is_empty() {
                let seeds = if seed.is_empty() {
                    vec![free_module(a, 1)]
                } else {
                    seed.iter().map(|p| load_module(a, p)).collect::<Result<Vec<_>, _>>()?
                };
                let ctx = GorensteinContext::new(a.clone(), cli.gdim.unwrap_or(0));
                standard_family(&ctx, &seeds, x.lo() - 1, x.hi() + 2)?
            } else {
                family.iter().map(|p| load_complex(a, p)).collect::<Result<Vec<_>, _>>()?
            };
            match dg_test(&x, &left, &right, &members)? {
                DgVerdict::Pass { family_size } => json!({ "pass": true, "family_size": family_size }),
                DgVerdict::Fail(DgWitness::Degreewise { degree }) => {
                    json!({ "pass": false, "witness": { "degreewise": degree } })
                }
                DgVerdict::Fail(DgWitness::Homotopy { member, map }) => {
                    json!({ "pass": false, "witness": { "member": member, "map_lo": map.lo } })
                }
            }
            .into()
        }
        ComplexCheck::Homotopy => {
            let y = match other {
                Some(p) => load_complex(a, p)?,
                None => x.clone(),
            };
            let h = homotopy_classes(&x, &y)?;
            json!({
                "chain_maps_dim": h.chain_maps_dim,
                "nullhomotopic_dim": h.nullhomotopic_dim,
                "quotient_dim": h.quotient_dim(),
            })
            .into()
        }
    })
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            println!("{}", out.value);
            i32::from(out.failed)
        }
        Err(e) => {
            eprintln!("ghal: {e}");
            e.exit_code()
        }
    }
}
