//! Locating and parsing input files.
//!
//! A path that does not exist on disk is looked up by its file name among
//! the reference files built into `lieb-core`, so `general.rmat` works from
//! any directory. An `algebra: NAME` header resolves to `NAME.alg` next to
//! the referring file, then to the built-in of that name.

use std::path::{Path, PathBuf};

use lieb_core::bialgebra::Cocommutator;
use lieb_core::fixtures;
use lieb_core::format::{self, FormatError, Source};
use lieb_core::liealg::{LieAlgebra, Wedge};
use lieb_core::symkernel::{Bindings, PolyExpr, Rational};

#[derive(Debug)]
pub enum InputError {
    /// Unreadable or malformed input; exit code 2.
    Invalid(String),
    /// An algebra file whose brackets fail Jacobi; reported as a failed check.
    Jacobi { path: String, message: String },
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Invalid(m) => f.write_str(m),
            InputError::Jacobi { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub label: String,
    pub text: String,
    dir: Option<PathBuf>,
}

pub fn read(path: &str) -> Result<Loaded, InputError> {
    let p = Path::new(path);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| InputError::Invalid(format!("{path}: {e}")))?;
        return Ok(Loaded {
            label: path.to_string(),
            text,
            dir: p.parent().map(Path::to_path_buf),
        });
    }
    let name = p.file_name().and_then(|s| s.to_str()).unwrap_or(path);
    match fixtures::get(name) {
        Some(text) => Ok(Loaded {
            label: name.to_string(),
            text: text.to_string(),
            dir: None,
        }),
        None => Err(InputError::Invalid(format!("{path}: no such file or built-in"))),
    }
}

fn syntax(label: &str, e: impl std::fmt::Display) -> InputError {
    InputError::Invalid(format!("{label}:{e}"))
}

fn parse_algebra(f: &Loaded) -> Result<LieAlgebra, InputError> {
    format::parse_algebra(&f.text).map_err(|e| match e {
        FormatError::Jacobi { .. } => InputError::Jacobi {
            path: f.label.clone(),
            message: e.to_string(),
        },
        other => syntax(&f.label, other),
    })
}

pub fn algebra(path: &str) -> Result<LieAlgebra, InputError> {
    parse_algebra(&read(path)?)
}

fn referenced_algebra(f: &Loaded, src: &Source) -> Result<LieAlgebra, InputError> {
    let name = src
        .algebra_ref()
        .ok_or_else(|| InputError::Invalid(format!("{}: no `algebra:` header and no --algebra given", f.label)))?;
    let file = format!("{name}.alg");
    if let Some(dir) = &f.dir {
        let local = dir.join(&file);
        if local.exists() {
            return algebra(&local.to_string_lossy());
        }
    }
    algebra(&file)
}

fn source(f: &Loaded) -> Result<Source, InputError> {
    Source::parse(&f.text).map_err(|e| syntax(&f.label, e))
}

/// An r-matrix file with its algebra and declared constraints.
pub struct RMatrixInput {
    pub label: String,
    pub algebra: LieAlgebra,
    pub r: Wedge,
    pub constraints: Vec<PolyExpr>,
}

pub fn rmatrix(path: &str, alg: Option<&LieAlgebra>) -> Result<RMatrixInput, InputError> {
    let f = read(path)?;
    let src = source(&f)?;
    let algebra = match alg {
        Some(a) => a.clone(),
        None => referenced_algebra(&f, &src)?,
    };
    let r = src.rmatrix(&algebra).map_err(|e| syntax(&f.label, e))?;
    let constraints = src.constraints().map_err(|e| syntax(&f.label, e))?;
    Ok(RMatrixInput {
        label: f.label,
        algebra,
        r,
        constraints,
    })
}

pub fn cocommutator(path: &str) -> Result<(LieAlgebra, Cocommutator), InputError> {
    let f = read(path)?;
    let src = source(&f)?;
    let alg = referenced_algebra(&f, &src)?;
    let rows = src.cocommutator(&alg).map_err(|e| syntax(&f.label, e))?;
    Ok((alg, Cocommutator { rows }))
}

/// Rows of a generator map `from → to`; every generator of `from` must be mapped.
pub fn generator_map(path: &str, from: &LieAlgebra, to: &LieAlgebra) -> Result<Vec<Vec<Rational>>, InputError> {
    let f = read(path)?;
    let rows = source(&f)?
        .linear_rows(from.names(), to.names())
        .map_err(|e| syntax(&f.label, e))?;
    let mut out = vec![Vec::new(); from.dim()];
    for (i, v) in rows {
        out[i] = v;
    }
    if let Some(i) = out.iter().position(Vec::is_empty) {
        return Err(InputError::Invalid(format!("{}: `{}` is not mapped", f.label, from.name(i))));
    }
    Ok(out)
}

/// `c2=0,c1=1` style bindings from the command line.
pub fn bindings(arg: &str) -> Result<Bindings, InputError> {
    format::parse_bindings(arg, &Default::default()).map_err(|e| syntax("--at", e))
}

pub fn names(arg: &str) -> Vec<String> {
    arg.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
