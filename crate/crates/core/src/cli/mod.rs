//! Front end: parsing, the analysis pipeline, and report rendering.

mod parse;
mod render;

pub use parse::{parse_poly, ParseError};
pub use render::{render_json, render_text, ArrayRow, RenderedBlock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::correspondence::{correspondence_lattice, CorrespondenceError, CorrespondenceReport};
use crate::groups::{arrangement_array, Arrangement};
use crate::numberfield::{splitting_field, NumberFieldError, SplittingField};
use crate::poly::UniPoly;
use crate::resolvent::{certify_spec, search_resolvent, ResolventError, ResolventSpec, MAX_DEGREE};
use crate::roots::{isolate_roots, RootError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub precision_bits: u32,
    pub norm_bound: u32,
    pub format: OutputFormat,
    pub emit_array: bool,
    pub seed_spec: Option<Vec<i64>>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            precision_bits: 128,
            norm_bound: 8,
            format: OutputFormat::Text,
            emit_array: false,
            seed_spec: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Domain(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("theorem check failed: {0}")]
    Assertion(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Domain(_) => 2,
            CliError::Certification(_) => 3,
            CliError::Assertion(_) => 4,
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::Constant | RootError::NotMonic(_) | RootError::NotSquarefree(_) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Certification(e.to_string()),
        }
    }
}

impl From<ResolventError> for CliError {
    fn from(e: ResolventError) -> Self {
        match e {
            ResolventError::DegreeOutOfRange(_) | ResolventError::WeightCount { .. } => {
                CliError::Domain(e.to_string())
            }
            ResolventError::Root(r) => r.into(),
            _ => CliError::Certification(e.to_string()),
        }
    }
}

impl From<NumberFieldError> for CliError {
    fn from(e: NumberFieldError) -> Self {
        match e {
            NumberFieldError::Resolvent(r) => r.into(),
            NumberFieldError::Root(r) => r.into(),
            _ => CliError::Certification(e.to_string()),
        }
    }
}

impl From<CorrespondenceError> for CliError {
    fn from(e: CorrespondenceError) -> Self {
        match e {
            CorrespondenceError::NumberField(n) => n.into(),
            _ => CliError::Assertion(e.to_string()),
        }
    }
}

/// Everything one run produces.
#[derive(Clone, Debug)]
pub struct Analysis {
    /// The polynomial as parsed.
    pub input: UniPoly,
    /// `c` when the roots were scaled by `c` to reach a monic integer polynomial.
    pub scale: Option<BigInt>,
    pub field: SplittingField,
    pub report: CorrespondenceReport,
    /// One entry per subgroup, in report order.
    pub arrays: Option<Vec<Vec<RenderedBlock>>>,
}

/// Parses and runs the full pipeline.
pub fn analyze(text: &str, cfg: &AnalysisConfig) -> Result<Analysis, CliError> {
    if cfg.precision_bits < 64 {
        return Err(CliError::Domain(
            "precision must be at least 64 bits".into(),
        ));
    }
    if cfg.norm_bound < 1 {
        return Err(CliError::Domain("norm bound must be at least 1".into()));
    }
    let input = parse_poly(text)?;
    let n = input.degree().unwrap_or(0);
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(CliError::Domain(format!(
            "degree {n} is outside the supported range 2..={MAX_DEGREE}"
        )));
    }
    if !input.is_squarefree() {
        let g = input.gcd(&input.derivative()).expect("nonzero input");
        return Err(CliError::Domain(format!(
            "polynomial is not squarefree: gcd(f, f') = {g}"
        )));
    }
    let (f, c) = input.to_monic_integral().expect("nonconstant input");
    let scale = (!c.is_one()).then_some(c);
    let rs = isolate_roots(&f, cfg.precision_bits)?;
    let spec = match &cfg.seed_spec {
        Some(w) => {
            let spec = ResolventSpec::new(w.clone());
            certify_spec(&rs, &spec)?;
            spec
        }
        None => search_resolvent(&rs, cfg.norm_bound)?,
    };
    let field = splitting_field(&f, &spec, &rs)?;
    let report = correspondence_lattice(&field)?;
    let arrays = if cfg.emit_array {
        let g = &field.galois.group;
        let base = Arrangement::identity(n);
        let mut all = Vec::with_capacity(report.subgroups.len());
        for entry in &report.subgroups {
            let blocks = arrangement_array(g, &entry.subgroup, &base)
                .map_err(|e| CliError::Assertion(e.to_string()))?;
            all.push(render::render_blocks(&blocks, &field));
        }
        Some(all)
    } else {
        None
    };
    Ok(Analysis {
        input,
        scale,
        field,
        report,
        arrays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_squarefree_is_domain_error() {
        let e = analyze("x^2 - 2x + 1", &AnalysisConfig::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("x - 1"), "{e}");
    }

    #[test]
    fn degree_range() {
        assert_eq!(
            analyze("x - 1", &AnalysisConfig::default())
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            analyze("x^5 - 2", &AnalysisConfig::default())
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            analyze("x^2 + y", &AnalysisConfig::default())
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn sqrt_two_report() {
        let a = analyze("x^2 - 2", &AnalysisConfig::default()).unwrap();
        assert_eq!(a.report.group.order(), 2);
        assert_eq!(a.report.subgroups.len(), 2);
        assert!(a.report.all_pass());
        assert!(a.scale.is_none());
    }

    #[test]
    fn non_monic_is_rescaled() {
        let a = analyze("2x^2 - 1", &AnalysisConfig::default()).unwrap();
        assert_eq!(a.scale, Some(BigInt::from(2)));
        assert_eq!(a.report.polynomial, UniPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn bad_seed_spec() {
        let cfg = AnalysisConfig {
            seed_spec: Some(vec![1, 1]),
            ..AnalysisConfig::default()
        };
        assert_eq!(analyze("x^2 - 2", &cfg).unwrap_err().exit_code(), 3);
        let cfg = AnalysisConfig {
            seed_spec: Some(vec![1, 2, 3]),
            ..AnalysisConfig::default()
        };
        assert_eq!(analyze("x^2 - 2", &cfg).unwrap_err().exit_code(), 2);
    }
}
