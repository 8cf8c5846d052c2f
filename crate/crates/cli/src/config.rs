use std::fmt;

use clap::ValueEnum;
use squiral::Limits;

/// Hard ceiling on the supertile level, whatever the flags or environment say.
pub const LEVEL_CAP: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
    Pbm,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Pbm => "pbm",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_level: u32,
    pub memory_budget: u64,
    pub output_format: OutputFormat,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn new(
        max_level: u32,
        memory_budget: u64,
        output_format: OutputFormat,
        verbosity: u8,
    ) -> Result<Self, String> {
        if max_level > LEVEL_CAP {
            return Err(format!(
                "--max-level {max_level} exceeds the hard cap of {LEVEL_CAP}"
            ));
        }
        if memory_budget == 0 {
            return Err("--mem-budget must be positive".into());
        }
        Ok(RunConfig {
            max_level,
            memory_budget,
            output_format,
            verbosity,
        })
    }

    /// Saturation may compare up to one level below the generation cap, which
    /// leaves room for the two-level stability check.
    pub fn limits(&self) -> Limits {
        Limits {
            max_level: self.max_level,
            saturation_level: self.max_level.saturating_sub(1),
            memory_budget: self.memory_budget,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_reproduce_library_limits() {
        let cfg = RunConfig::new(9, 2 << 30, OutputFormat::Text, 0).unwrap();
        assert_eq!(cfg.limits(), Limits::default());
    }

    #[test]
    fn invalid_values_rejected() {
        assert!(RunConfig::new(13, 1, OutputFormat::Text, 0).is_err());
        assert!(RunConfig::new(5, 0, OutputFormat::Text, 0).is_err());
        assert!(RunConfig::new(12, 1, OutputFormat::Text, 0).is_ok());
    }
}
