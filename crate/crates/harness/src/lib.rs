//! Scenario runner for the adjlab engine: built-in scenarios, JSON input
//! documents and deterministic reports.

pub mod anchors;
pub mod document;
pub mod error;
pub mod params;
pub mod report;
pub mod scenarios;

pub use error::HarnessError;
pub use params::{FieldChoice, Params};
pub use report::{Report, Status};
pub use scenarios::{catalog, default_suite, run_many, run_scenario, CatalogEntry};

/// Runs a built-in scenario, or a document file when `target` names one.
/// With `input`, `target` is the op applied to a document without tasks.
pub fn run_target(target: &str, input: Option<&std::path::Path>, params: &Params) -> Result<Report, HarnessError> {
    if let Some(path) = input {
        let source = std::fs::read_to_string(path)?;
        return document::run_document(&source, target, Some(target), params);
    }
    if scenarios::is_builtin(target) {
        return run_scenario(target, params);
    }
    let path = std::path::Path::new(target);
    if path.is_file() {
        let source = std::fs::read_to_string(path)?;
        let name = path.file_stem().map_or(target.into(), |s| s.to_string_lossy().into_owned());
        return document::run_document(&source, &name, None, params);
    }
    Err(HarnessError::Unknown(target.to_string()))
}
