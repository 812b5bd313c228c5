use std::fs;
use std::path::Path;

use fuzznorm::{make_generator, Generator, GeneratorSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A norm description file: `{"dim": 2, "generator": {...}, "label": "..."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub dim: usize,
    pub generator: GeneratorSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read spec {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn build(&self) -> Result<Generator, CliError> {
        Ok(make_generator(&self.generator, self.dim)?)
    }

    /// The label, falling back to the generator kind.
    pub fn name(&self, g: &Generator) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| g.kind_name().to_string())
    }
}
