//! Model names accepted by `--model` and their construction.

use quantdisk::disk::{ConeModel, DiskModel};
use quantdisk::exact::Rational;
use quantdisk::zoo::{Group, GroupModel, LaurentBasis, LaurentModel, MatrixBasis, MatrixModel, PolyBasis, PolyModel, WickFlatModel};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub enum AnyModel {
    Poly(PolyModel),
    Laurent(LaurentModel),
    Matrix(MatrixModel),
    Group(GroupModel),
    Wick(WickFlatModel),
    Cone(ConeModel),
    Disk(DiskModel),
}

/// Runs `$body` with `$m` bound to the concrete model.
macro_rules! with_model {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::registry::AnyModel::Poly($m) => $body,
            $crate::registry::AnyModel::Laurent($m) => $body,
            $crate::registry::AnyModel::Matrix($m) => $body,
            $crate::registry::AnyModel::Group($m) => $body,
            $crate::registry::AnyModel::Wick($m) => $body,
            $crate::registry::AnyModel::Cone($m) => $body,
            $crate::registry::AnyModel::Disk($m) => $body,
        }
    };
}
pub(crate) use with_model;

/// Name, parameters and a one-line description, in listing order.
pub const MODELS: [(&str, &str, &str); 13] = [
    ("poly:monomial", "-", "polynomials in z, basis z^n"),
    ("poly:factorial", "-", "polynomials in z, basis z^n/n!"),
    ("laurent:plain", "-", "Laurent polynomials, basis z^n"),
    ("laurent:factorial", "-", "Laurent polynomials, basis z^n/|n|!"),
    ("matrix:plain", "-", "finite matrices, basis E_ij"),
    ("matrix:hat", "-", "finite matrices, basis E_ij/sqrt(i! j!)"),
    ("matrix:tilde", "-", "finite matrices, basis E_ij/(i j)"),
    ("group:Z", "--epsilon 1", "group algebra of Z"),
    ("group:Zd:<d>", "--epsilon 1", "group algebra of Z^d"),
    ("group:free:<N>", "--epsilon 1", "group algebra of the free group on N generators"),
    ("wick:<n>", "--hbar", "flat Wick star product on C^n"),
    ("cone:<n>", "--hbar", "Wick star product on the cone, basis f_{P,Q,alpha}"),
    ("disk:<n>", "--hbar (allowed)", "star product on the disk, basis f_{P,Q}; `disk` picks cone or disk by the index shape"),
];

fn parse_usize(spec: &str, s: &str) -> CliResult<usize> {
    s.parse().map_err(|_| CliError::Usage(format!("model {spec}: {s:?} is not a dimension")))
}

/// Builds the model named by `spec`. A bare `wick`, `cone` or `disk` takes `--n`.
pub fn build(spec: &str, cfg: &RunConfig) -> CliResult<AnyModel> {
    let parts: Vec<&str> = spec.split(':').collect();
    let hbar: &Rational = &cfg.hbar;
    let dim = |k: usize| -> CliResult<usize> { parts.get(k).map_or(Ok(cfg.n), |s| parse_usize(spec, s)) };
    let model = match parts.as_slice() {
        ["poly", "monomial"] => AnyModel::Poly(PolyModel::new(PolyBasis::Monomial)),
        ["poly", "factorial"] => AnyModel::Poly(PolyModel::new(PolyBasis::Factorial)),
        ["laurent", "plain"] => AnyModel::Laurent(LaurentModel::new(LaurentBasis::Plain)),
        ["laurent", "factorial"] => AnyModel::Laurent(LaurentModel::new(LaurentBasis::Factorial)),
        ["matrix", "plain"] => AnyModel::Matrix(MatrixModel::new(MatrixBasis::Plain)),
        ["matrix", "hat"] => AnyModel::Matrix(MatrixModel::new(MatrixBasis::Hat)),
        ["matrix", "tilde"] => AnyModel::Matrix(MatrixModel::new(MatrixBasis::Tilde)),
        ["group", "Z"] => AnyModel::Group(GroupModel::new(Group::Z, cfg.epsilon.clone())?),
        ["group", "Zd", d] => AnyModel::Group(GroupModel::new(Group::Zd(parse_usize(spec, d)?), cfg.epsilon.clone())?),
        ["group", "free", k] => AnyModel::Group(GroupModel::new(Group::Free(parse_usize(spec, k)?), cfg.epsilon.clone())?),
        ["wick"] | ["wick", _] => AnyModel::Wick(WickFlatModel::new(dim(1)?, hbar.clone())?),
        ["cone"] | ["cone", _] => AnyModel::Cone(ConeModel::new(dim(1)?, hbar.clone())?),
        ["disk"] | ["disk", _] => AnyModel::Disk(DiskModel::new(dim(1)?, hbar.clone())?),
        _ => return Err(CliError::Usage(format!("unknown model {spec:?}; see `algebra list`"))),
    };
    Ok(model)
}

/// For a bare `disk` spec, elements whose indices carry `alpha` live on the cone.
pub fn build_for_element(spec: &str, cfg: &RunConfig, doc: &serde_json::Value) -> CliResult<AnyModel> {
    let is_disk = spec == "disk" || spec.starts_with("disk:");
    if is_disk {
        let file_model = doc.get("model").and_then(|m| m.as_str()).unwrap_or("");
        let has_alpha = doc
            .get("terms")
            .and_then(|t| t.as_array())
            .is_some_and(|ts| ts.iter().any(|t| t.get("index").and_then(|i| i.get("alpha")).is_some()));
        if file_model.starts_with("cone") || has_alpha {
            let n = spec.strip_prefix("disk:").map_or(Ok(cfg.n), |s| parse_usize(spec, s))?;
            return build(&format!("cone:{n}"), cfg);
        }
    }
    build(spec, cfg)
}
