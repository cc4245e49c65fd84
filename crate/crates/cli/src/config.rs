use std::path::PathBuf;

use clap::{Args, ValueEnum};
use vvol_core::{Caps, Error, OnePoint, Partition, Result};

pub const DEFAULT_MAX_K: u32 = 12;
pub const DEFAULT_MAX_WEIGHT: u32 = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Largest k for which a((k)) is tabulated.
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    pub max_k: u32,

    /// Weight cap on t-monomials [default: min(10, max-k + 1)].
    #[arg(long)]
    pub max_weight: Option<u32>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here (atomically) instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Directory holding cached minimal tables.
    #[arg(long, value_name = "DIR", env = "VVOL_CACHE_DIR")]
    pub cache: Option<PathBuf>,

    /// Append decimal approximations to exact values.
    #[arg(long)]
    pub decimals: bool,

    /// Significant digits for decimal output.
    #[arg(long, default_value_t = 12)]
    pub digits: usize,

    /// Singleton convention of the n-point recursion.
    #[arg(long, value_parser = parse_one_point, default_value = "unit")]
    pub one_point: OnePoint,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub caps: Caps,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    /// `Some(digits)` when decimals were requested.
    pub digits: Option<usize>,
    pub one_point: OnePoint,
}

impl CommonArgs {
    pub fn resolve(&self) -> Result<Config> {
        if self.max_k == 0 {
            return Err(Error::Config("--max-k must be at least 1".into()));
        }
        let max_weight = self.max_weight.unwrap_or(DEFAULT_MAX_WEIGHT.min(self.max_k + 1));
        if max_weight == 0 {
            return Err(Error::Config("--max-weight must be at least 1".into()));
        }
        if max_weight > self.max_k + 1 {
            return Err(Error::Config(format!("--max-weight {max_weight} exceeds max-k + 1 = {}", self.max_k + 1)));
        }
        if self.digits == 0 || self.digits > 17 {
            return Err(Error::Config("--digits must be between 1 and 17".into()));
        }
        Ok(Config {
            caps: Caps { max_k: self.max_k, max_weight },
            format: self.format,
            out: self.out.clone(),
            cache: self.cache.clone(),
            digits: self.decimals.then_some(self.digits),
            one_point: self.one_point,
        })
    }
}

fn parse_one_point(s: &str) -> std::result::Result<OnePoint, String> {
    OnePoint::parse(s).map_err(|e| e.to_string())
}

/// Profiles are written `3,2,2`, `(3, 2, 2)` or `''` for the empty one.
pub fn parse_profile(s: &str) -> std::result::Result<Partition, String> {
    Partition::parse(s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[derive(Parser)]
    struct Wrap {
        #[command(flatten)]
        common: CommonArgs,
    }

    fn resolve(args: &[&str]) -> Result<Config> {
        let mut full = vec!["x"];
        full.extend_from_slice(args);
        Wrap::try_parse_from(full).unwrap().common.resolve()
    }

    #[test]
    fn defaults() {
        let c = resolve(&[]).unwrap();
        assert_eq!(c.caps, Caps { max_k: 12, max_weight: 10 });
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.digits, None);
        assert_eq!(c.one_point, OnePoint::Unit);
    }

    #[test]
    fn weight_default_follows_small_k() {
        assert_eq!(resolve(&["--max-k", "1"]).unwrap().caps.max_weight, 2);
        assert_eq!(resolve(&["--max-k", "5"]).unwrap().caps.max_weight, 6);
    }

    #[test]
    fn invalid_caps() {
        assert!(resolve(&["--max-k", "0"]).is_err());
        assert!(resolve(&["--max-k", "4", "--max-weight", "6"]).is_err());
        assert!(resolve(&["--max-weight", "0"]).is_err());
    }

    #[test]
    fn decimals_are_opt_in() {
        assert_eq!(resolve(&["--decimals", "--digits", "5"]).unwrap().digits, Some(5));
    }
}
