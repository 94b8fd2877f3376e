//! JSON interchange formats for algebras, modules and complexes.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use ghal_core::algebra::{validate_algebra, validate_module, Algebra, Module};
use ghal_core::complexes::{validate_complex, ChainComplex};
use ghal_core::{Field, Matrix, Scalar};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FieldRepr {
    Prime { p: u32 },
    Rationals { rationals: bool },
}

/// Residues are plain integers, rationals `{"num": "..", "den": ".."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Fraction { num: String, den: String },
}

/// Row-major list of rows.
pub type MatrixRepr = Vec<Vec<ScalarRepr>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldRepr,
    pub dim: usize,
    pub unit: Vec<ScalarRepr>,
    pub mult: Vec<Vec<Vec<ScalarRepr>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra_digest: String,
    pub dim: usize,
    pub action: Vec<MatrixRepr>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub lo: i64,
    pub hi: i64,
    pub components: Vec<ModuleFile>,
    pub differentials: Vec<MatrixRepr>,
}

fn invalid(what: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{what}: {msg}"))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn field_of(repr: &FieldRepr) -> Result<Field, CliError> {
    match *repr {
        FieldRepr::Prime { p } => Field::prime(p).map_err(|e| invalid("field", e)),
        FieldRepr::Rationals { rationals: true } => Ok(Field::Rationals),
        FieldRepr::Rationals { rationals: false } => Err(invalid("field", "\"rationals\" must be true")),
    }
}

fn field_repr(k: Field) -> FieldRepr {
    match k {
        Field::Prime(p) => FieldRepr::Prime { p },
        Field::Rationals => FieldRepr::Rationals { rationals: true },
    }
}

pub fn scalar_repr(s: &Scalar) -> ScalarRepr {
    match s {
        Scalar::Residue(v) => ScalarRepr::Int(*v as i64),
        Scalar::Rational(r) => ScalarRepr::Fraction { num: r.numer().to_string(), den: r.denom().to_string() },
    }
}

/// Residues must be reduced into `0..p`; rationals may be integers or fractions.
pub fn scalar_of(k: Field, s: &ScalarRepr) -> Result<Scalar, CliError> {
    match (k, s) {
        (Field::Prime(p), ScalarRepr::Int(v)) => {
            if *v < 0 || *v >= p as i64 {
                return Err(invalid("scalar", format!("{v} is not a reduced residue mod {p}")));
            }
            Ok(Scalar::Residue(*v as u32))
        }
        (Field::Prime(p), ScalarRepr::Fraction { .. }) => Err(invalid("scalar", format!("fraction given over F_{p}"))),
        (Field::Rationals, ScalarRepr::Int(v)) => Ok(k.from_int(*v)),
        (Field::Rationals, ScalarRepr::Fraction { num, den }) => {
            let n = BigInt::from_str(num).map_err(|e| invalid("numerator", e))?;
            let d = BigInt::from_str(den).map_err(|e| invalid("denominator", e))?;
            k.from_fraction(&n, &d).ok_or_else(|| invalid("scalar", "zero denominator"))
        }
    }
}

pub fn matrix_repr(m: &Matrix) -> MatrixRepr {
    (0..m.rows()).map(|i| m.row(i).iter().map(scalar_repr).collect()).collect()
}

pub fn matrix_of(k: Field, rows: usize, cols: usize, repr: &MatrixRepr) -> Result<Matrix, CliError> {
    if repr.len() != rows || repr.iter().any(|r| r.len() != cols) {
        let found = repr.first().map_or(0, Vec::len);
        return Err(invalid("matrix", format!("expected {rows}x{cols}, found {}x{found}", repr.len())));
    }
    let data = repr.iter().flatten().map(|s| scalar_of(k, s)).collect::<Result<Vec<_>, _>>()?;
    Matrix::new(k, rows, cols, data).map_err(|e| invalid("matrix", e))
}

pub fn algebra_file(a: &Algebra) -> AlgebraFile {
    AlgebraFile {
        field: field_repr(a.field()),
        dim: a.dim(),
        unit: a.unit().iter().map(scalar_repr).collect(),
        mult: a.mult_table().iter().map(|row| row.iter().map(|v| v.iter().map(scalar_repr).collect()).collect()).collect(),
    }
}

/// SHA-256 of the canonical compact encoding, which is what module files refer to.
pub fn algebra_digest(a: &Algebra) -> String {
    sha256_hex(&serde_json::to_vec(&algebra_file(a)).expect("serializable"))
}

pub fn algebra_of(f: &AlgebraFile) -> Result<Algebra, CliError> {
    let k = field_of(&f.field)?;
    if f.unit.len() != f.dim || f.mult.len() != f.dim {
        return Err(invalid("algebra", format!("unit and mult must have length dim = {}", f.dim)));
    }
    let unit = f.unit.iter().map(|s| scalar_of(k, s)).collect::<Result<Vec<_>, _>>()?;
    let mult = f
        .mult
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|s| scalar_of(k, s)).collect()).collect())
        .collect::<Result<Vec<Vec<Vec<_>>>, _>>()?;
    let a = Algebra::new(k, unit, mult).map_err(|e| invalid("algebra", e))?;
    validate_algebra(&a).map_err(|v| invalid("algebra", format!("{v:?}")))?;
    Ok(a)
}

pub fn module_file(m: &Module) -> ModuleFile {
    ModuleFile {
        algebra_digest: algebra_digest(m.algebra()),
        dim: m.dim(),
        action: m.actions().iter().map(matrix_repr).collect(),
    }
}

pub fn module_of(a: &Arc<Algebra>, f: &ModuleFile) -> Result<Module, CliError> {
    let digest = algebra_digest(a);
    if f.algebra_digest != digest {
        return Err(invalid("module", format!("algebra digest {} does not match {digest}", f.algebra_digest)));
    }
    if f.action.len() != a.dim() {
        return Err(invalid("module", format!("{} action matrices, algebra has dimension {}", f.action.len(), a.dim())));
    }
    let action = f.action.iter().map(|m| matrix_of(a.field(), f.dim, f.dim, m)).collect::<Result<Vec<_>, _>>()?;
    let m = Module::new(a.clone(), f.dim, action).map_err(|e| invalid("module", e))?;
    validate_module(&m).map_err(|v| invalid("module", format!("{v:?}")))?;
    Ok(m)
}

pub fn complex_file(x: &ChainComplex) -> ComplexFile {
    ComplexFile {
        lo: x.lo(),
        hi: x.hi(),
        components: x.components().iter().map(module_file).collect(),
        differentials: x.differentials().iter().map(|d| matrix_repr(d.matrix())).collect(),
    }
}

pub fn complex_of(a: &Arc<Algebra>, f: &ComplexFile) -> Result<ChainComplex, CliError> {
    let x = complex_shape_of(a, f)?;
    validate_complex(&x).map_err(|v| invalid("complex", format!("{v:?}")))?;
    Ok(x)
}

/// Checks shapes and components only; the differentials may violate the complex axioms.
pub fn complex_shape_of(a: &Arc<Algebra>, f: &ComplexFile) -> Result<ChainComplex, CliError> {
    if f.hi < f.lo || (f.hi - f.lo + 1) as usize != f.components.len() {
        return Err(invalid("complex", format!("support [{}, {}] needs {} components", f.lo, f.hi, f.hi - f.lo + 1)));
    }
    let comps = f.components.iter().map(|c| module_of(a, c)).collect::<Result<Vec<_>, _>>()?;
    if f.differentials.len() + 1 != comps.len() {
        return Err(invalid("complex", format!("{} components need {} differentials", comps.len(), comps.len() - 1)));
    }
    let diffs = f
        .differentials
        .iter()
        .enumerate()
        .map(|(i, d)| matrix_of(a.field(), comps[i + 1].dim(), comps[i].dim(), d))
        .collect::<Result<Vec<_>, _>>()?;
    ChainComplex::new(a.clone(), f.lo, comps, diffs).map_err(|e| invalid("complex", e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<(T, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|e| invalid(&path.display().to_string(), e))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| invalid(&path.display().to_string(), e))?;
    Ok((value, bytes))
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>, CliError> {
    let (f, _) = read_json::<AlgebraFile>(path)?;
    algebra_of(&f).map(Arc::new).map_err(|e| e.context(path))
}

pub fn load_module(a: &Arc<Algebra>, path: &Path) -> Result<Module, CliError> {
    let (f, _) = read_json::<ModuleFile>(path)?;
    module_of(a, &f).map_err(|e| e.context(path))
}

pub fn load_complex(a: &Arc<Algebra>, path: &Path) -> Result<ChainComplex, CliError> {
    let (f, _) = read_json::<ComplexFile>(path)?;
    complex_of(a, &f).map_err(|e| e.context(path))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, to_pretty(value)).map_err(|e| invalid(&path.display().to_string(), e))
}
