//! The bundled corpus: four algebras with hand-built modules and bounded complexes.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use ghal_core::algebra::{direct_sum, free_module, Algebra, Module};
use ghal_core::complexes::{direct_sum_complex, disk_complex, shift, ChainComplex};
use ghal_core::resolve::free_cover;
use ghal_core::{Field, Matrix};
use serde::{Deserialize, Serialize};

use crate::format::{
    algebra_file, complex_file, load_algebra, module_file, read_json, sha256_hex, write_json, AlgebraFile, ComplexFile,
    ModuleFile,
};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub algebras: Vec<ManifestAlgebra>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestAlgebra {
    pub name: String,
    pub file: String,
    pub gdim: usize,
    /// Set when the algebra has finite global dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_dimension: Option<usize>,
    pub modules: Vec<ManifestEntry>,
    pub complexes: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
}

/// A parsed corpus value with the SHA-256 of its file.
#[derive(Clone, Debug)]
pub struct Item<T> {
    pub name: String,
    pub digest: String,
    pub value: T,
}

#[derive(Clone, Debug)]
pub struct CorpusAlgebra {
    pub name: String,
    pub digest: String,
    pub algebra: Arc<Algebra>,
    pub gdim: usize,
    pub global_dimension: Option<usize>,
    pub modules: Vec<Item<Module>>,
    pub complexes: Vec<Item<ChainComplex>>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub root: PathBuf,
    pub algebras: Vec<CorpusAlgebra>,
}

impl Corpus {
    /// Parses and validates every file named in `manifest.json`; the first bad file aborts.
    pub fn load(root: &Path) -> Result<Corpus, CliError> {
        let manifest_path = root.join("manifest.json");
        if !manifest_path.is_file() {
            return Err(CliError::Input(format!("missing corpus manifest {}", manifest_path.display())));
        }
        let (manifest, _) = read_json::<Manifest>(&manifest_path)?;
        let mut algebras = Vec::new();
        for entry in &manifest.algebras {
            let path = root.join(&entry.file);
            let (_, bytes) = read_json::<AlgebraFile>(&path)?;
            let algebra = load_algebra(&path)?;
            let mut modules = Vec::new();
            for m in &entry.modules {
                let path = root.join(&m.file);
                let (f, bytes) = read_json::<ModuleFile>(&path)?;
                let value = crate::format::module_of(&algebra, &f).map_err(|e| e.context(&path))?;
                modules.push(Item { name: m.name.clone(), digest: sha256_hex(&bytes), value });
            }
            let mut complexes = Vec::new();
            for c in &entry.complexes {
                let path = root.join(&c.file);
                let (f, bytes) = read_json::<ComplexFile>(&path)?;
                let value = crate::format::complex_of(&algebra, &f).map_err(|e| e.context(&path))?;
                complexes.push(Item { name: c.name.clone(), digest: sha256_hex(&bytes), value });
            }
            algebras.push(CorpusAlgebra {
                name: entry.name.clone(),
                digest: sha256_hex(&bytes),
                algebra,
                gdim: entry.gdim,
                global_dimension: entry.global_dimension,
                modules,
                complexes,
            });
        }
        Ok(Corpus { root: root.to_path_buf(), algebras })
    }

    /// `crates/ghal/corpus` of this source tree.
    pub fn default_root() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
    }
}

/// In-memory description of the bundled corpus.
pub struct BundledAlgebra {
    pub name: &'static str,
    pub algebra: Arc<Algebra>,
    pub gdim: usize,
    pub global_dimension: Option<usize>,
    pub modules: Vec<(&'static str, Module)>,
    pub complexes: Vec<(&'static str, ChainComplex)>,
}

fn ints(k: Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(k, rows)
}

fn module(a: &Arc<Algebra>, action: &[&[&[i64]]]) -> Module {
    let dim = action[0].len();
    Module::new(a.clone(), dim, action.iter().map(|m| ints(a.field(), m)).collect()).unwrap()
}

fn complex(a: &Arc<Algebra>, lo: i64, comps: &[&Module], diffs: Vec<Matrix>) -> ChainComplex {
    ChainComplex::new(a.clone(), lo, comps.iter().map(|&m| m.clone()).collect(), diffs).unwrap()
}

fn sum(a: &Arc<Algebra>, parts: &[&Module]) -> Module {
    direct_sum(a, &parts.iter().map(|&m| m.clone()).collect::<Vec<_>>()).module
}

fn dual_numbers() -> BundledAlgebra {
    let f2 = Field::Prime(2);
    let a = Arc::new(Algebra::from_ints(f2, &[1, 0], &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]]).unwrap());
    let k = module(&a, &[&[&[1]], &[&[0]]]);
    let free = free_module(&a, 1);
    let x = a.left_regular(1);
    let socle = ints(f2, &[&[0], &[1]]);
    let top = ints(f2, &[&[1, 0]]);
    let closure2 = complex(&a, 0, &[&k, &free, &free, &k], vec![socle.clone(), x.clone(), top.clone()]);
    let closure1 = complex(&a, 0, &[&k, &free, &k], vec![socle, top]);
    BundledAlgebra {
        name: "dual-numbers",
        gdim: 0,
        global_dimension: None,
        modules: vec![
            ("k", k.clone()),
            ("free-1", free.clone()),
            ("free-2", free_module(&a, 2)),
            ("k-plus-free", sum(&a, &[&k, &free])),
            ("k-plus-k", sum(&a, &[&k, &k])),
        ],
        complexes: vec![
            ("disk-free-0", disk_complex(&free, 0)),
            ("disk-k-1", disk_complex(&k, 1)),
            ("k-in-0", ChainComplex::concentrated(&k, 0)),
            ("free-in-0", ChainComplex::concentrated(&free, 0)),
            ("x-stretch", complex(&a, 0, &[&free, &free, &free], vec![x.clone(), x])),
            ("closure-1", closure1.clone()),
            ("closure-2", closure2.clone()),
            ("closure-2-shifted", shift(&closure2, 1)),
            ("disks-0-2", direct_sum_complex(&[disk_complex(&free, 0), disk_complex(&free, 2)])),
            ("k-zero-k", complex(&a, 0, &[&k, &k], vec![ints(f2, &[&[0]])])),
            ("closure-1-plus-disk", direct_sum_complex(&[closure1, disk_complex(&free, -1)])),
        ],
        algebra: a,
    }
}

fn truncated_cubic() -> BundledAlgebra {
    let f3 = Field::Prime(3);
    let e = |i: usize, j: usize| -> Vec<i64> {
        let mut v = vec![0; 3];
        if i + j < 3 {
            v[i + j] = 1;
        }
        v
    };
    let table: Vec<Vec<Vec<i64>>> = (0..3).map(|i| (0..3).map(|j| e(i, j)).collect()).collect();
    let rows: Vec<Vec<&[i64]>> = table.iter().map(|r| r.iter().map(Vec::as_slice).collect()).collect();
    let refs: Vec<&[&[i64]]> = rows.iter().map(Vec::as_slice).collect();
    let a = Arc::new(Algebra::from_ints(f3, &[1, 0, 0], &refs).unwrap());
    let k = module(&a, &[&[&[1]], &[&[0]], &[&[0]]]);
    let m2 = module(&a, &[&[&[1, 0], &[0, 1]], &[&[0, 0], &[1, 0]], &[&[0, 0], &[0, 0]]]);
    let free = free_module(&a, 1);
    let x = a.left_regular(1);
    let x2 = a.left_regular(2);
    let socle = ints(f3, &[&[0], &[0], &[1]]);
    let top = ints(f3, &[&[1, 0, 0]]);
    BundledAlgebra {
        name: "truncated-cubic",
        gdim: 0,
        global_dimension: None,
        modules: vec![
            ("k", k.clone()),
            ("free-1", free.clone()),
            ("quotient-x2", m2.clone()),
            ("k-plus-quotient-x2", sum(&a, &[&k, &m2])),
        ],
        complexes: vec![
            ("disk-free-0", disk_complex(&free, 0)),
            ("k-in-0", ChainComplex::concentrated(&k, 0)),
            ("closure-x", complex(&a, 0, &[&k, &free, &free, &k], vec![socle.clone(), x.clone(), top])),
            ("socle-sequence", complex(&a, 0, &[&k, &free, &m2], vec![socle, ints(f3, &[&[1, 0, 0], &[0, 1, 0]])])),
            ("x-x2-stretch", complex(&a, 0, &[&free, &free, &free], vec![x, x2])),
        ],
        algebra: a,
    }
}

fn klein() -> BundledAlgebra {
    let f2 = Field::Prime(2);
    // basis 1, x, y, xy
    let a = Arc::new(
        Algebra::from_ints(
            f2,
            &[1, 0, 0, 0],
            &[
                &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
                &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]],
                &[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]],
            ],
        )
        .unwrap(),
    );
    let z = &[&[0, 0][..], &[0, 0]][..];
    let k = module(&a, &[&[&[1]], &[&[0]], &[&[0]], &[&[0]]]);
    let mod_x = module(&a, &[&[&[1, 0], &[0, 1]], z, &[&[0, 0], &[1, 0]], z]);
    let free = free_module(&a, 1);
    let cover = free_cover(&k);
    let ses = ChainComplex::new(
        a.clone(),
        0,
        vec![cover.syzygy.clone(), cover.cover.clone(), k.clone()],
        vec![cover.inclusion.matrix().clone(), cover.projection.matrix().clone()],
    )
    .unwrap();
    BundledAlgebra {
        name: "klein",
        gdim: 0,
        global_dimension: None,
        modules: vec![
            ("k", k.clone()),
            ("free-1", free.clone()),
            ("syzygy-k", cover.syzygy.clone()),
            ("quotient-x", mod_x),
        ],
        complexes: vec![
            ("disk-free-0", disk_complex(&free, 0)),
            ("disk-k-0", disk_complex(&k, 0)),
            ("k-in-0", ChainComplex::concentrated(&k, 0)),
            ("syzygy-sequence", ses),
        ],
        algebra: a,
    }
}

fn upper_triangular() -> BundledAlgebra {
    let f2 = Field::Prime(2);
    // basis e11, e12, e22
    let a = Arc::new(
        Algebra::from_ints(
            f2,
            &[1, 0, 1],
            &[
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]],
            ],
        )
        .unwrap(),
    );
    let s1 = module(&a, &[&[&[1]], &[&[0]], &[&[0]]]);
    let s2 = module(&a, &[&[&[0]], &[&[0]], &[&[1]]]);
    // basis e12, e22 of A e22
    let p2 = module(&a, &[&[&[1, 0], &[0, 0]], &[&[0, 1], &[0, 0]], &[&[0, 0], &[0, 1]]]);
    let free = free_module(&a, 1);
    let ses = complex(&a, 0, &[&s1, &p2, &s2], vec![ints(f2, &[&[1], &[0]]), ints(f2, &[&[0, 1]])]);
    BundledAlgebra {
        name: "upper-triangular",
        gdim: 1,
        global_dimension: Some(1),
        modules: vec![("simple-1", s1), ("simple-2", s2.clone()), ("projective-2", p2.clone()), ("free-1", free.clone())],
        complexes: vec![
            ("simple-sequence", ses),
            ("disk-projective-2", disk_complex(&p2, 0)),
            ("simple-2-in-0", ChainComplex::concentrated(&s2, 0)),
            ("disk-free-1", disk_complex(&free, 1)),
        ],
        algebra: a,
    }
}

pub fn bundled() -> Vec<BundledAlgebra> {
    vec![dual_numbers(), truncated_cubic(), klein(), upper_triangular()]
}

/// Writes the bundled corpus and its manifest under `root`.
pub fn write_bundled(root: &Path) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("{}: {e}", root.display()));
    let mut manifest = Manifest { algebras: Vec::new() };
    for b in bundled() {
        let dir = root.join(b.name);
        std::fs::create_dir_all(dir.join("modules")).map_err(io)?;
        std::fs::create_dir_all(dir.join("complexes")).map_err(io)?;
        let file = format!("{}/algebra.json", b.name);
        write_json(&root.join(&file), &algebra_file(&b.algebra))?;
        let mut entry = ManifestAlgebra {
            name: b.name.into(),
            file,
            gdim: b.gdim,
            global_dimension: b.global_dimension,
            modules: Vec::new(),
            complexes: Vec::new(),
        };
        for (name, m) in &b.modules {
            let file = format!("{}/modules/{name}.json", b.name);
            write_json(&root.join(&file), &module_file(m))?;
            entry.modules.push(ManifestEntry { name: (*name).into(), file });
        }
        for (name, x) in &b.complexes {
            let file = format!("{}/complexes/{name}.json", b.name);
            write_json(&root.join(&file), &complex_file(x))?;
            entry.complexes.push(ManifestEntry { name: (*name).into(), file });
        }
        manifest.algebras.push(entry);
    }
    write_json(&root.join("manifest.json"), &manifest)
}
