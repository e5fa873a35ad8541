use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use h2lyndon::pairing::DEFAULT_DIMENSION_CAP;
use h2lyndon::series::is_prime;
use h2lyndon::words::Alphabet;

use crate::CliError;

pub const MAX_P: u64 = 13;
pub const MAX_N: usize = 6;
pub const MAX_LETTERS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flags shared by every subcommand. Each overrides the matching key of `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Prime p, at most 13.
    #[arg(long)]
    pub p: Option<u64>,
    /// Filtration level n, from 1 to 6.
    #[arg(long)]
    pub n: Option<usize>,
    /// Ordered letters, e.g. `xyz` or `a1,a2,a3`.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Seed for randomized suites.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key = value` lines; `#` starts a comment.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u64,
    pub n: usize,
    pub alphabet: Alphabet,
    pub seed: u64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub deg: Option<usize>,
    pub modulus: Option<u64>,
    pub cases: Option<usize>,
    pub dim_cap: usize,
    /// Whether p, n and the alphabet were set explicitly rather than defaulted.
    pub p_given: bool,
    pub n_given: bool,
    pub alphabet_given: bool,
}

const KEYS: &[&str] = &["p", "n", "alphabet", "seed", "format", "out", "deg", "mod", "cases", "dim_cap"];

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        out.insert(key, value.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

fn parsed<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    file.get(key)
        .map(|v| v.parse().map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}"))))
        .transpose()
}

impl RunConfig {
    /// Merges flags over the config file over defaults, then validates.
    pub fn resolve(
        common: &Common,
        deg: Option<usize>,
        modulus: Option<u64>,
        cases: Option<usize>,
        dim_cap: Option<usize>,
    ) -> Result<RunConfig, CliError> {
        let file = match &common.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let p = common.p.or(parsed(&file, "p")?);
        let n = common.n.or(parsed(&file, "n")?);
        let alphabet = common.alphabet.clone().or(file.get("alphabet").cloned());
        let format = match (common.format, file.get("format")) {
            (Some(f), _) => Some(f),
            (None, Some(v)) => Some(
                Format::from_str(v, true).map_err(|_| CliError::Usage(format!("config key format: {v:?}")))?,
            ),
            (None, None) => None,
        };
        let config = RunConfig {
            p: p.unwrap_or(3),
            n: n.unwrap_or(3),
            alphabet: Alphabet::parse(alphabet.as_deref().unwrap_or("xyz"))
                .map_err(|e| CliError::Usage(format!("alphabet: {e}")))?,
            seed: common.seed.or(parsed(&file, "seed")?).unwrap_or(0),
            format,
            out: common.out.clone().or(file.get("out").map(PathBuf::from)),
            deg: deg.or(parsed(&file, "deg")?),
            modulus: modulus.or(parsed(&file, "mod")?),
            cases: cases.or(parsed(&file, "cases")?),
            dim_cap: dim_cap.or(parsed(&file, "dim_cap")?).unwrap_or(DEFAULT_DIMENSION_CAP),
            p_given: p.is_some(),
            n_given: n.is_some(),
            alphabet_given: alphabet.is_some(),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !is_prime(self.p) || self.p > MAX_P {
            return Err(CliError::Usage(format!("p must be a prime between 2 and {MAX_P}, got {}", self.p)));
        }
        if self.n == 0 || self.n > MAX_N {
            return Err(CliError::Usage(format!("n must be between 1 and {MAX_N}, got {}", self.n)));
        }
        if self.alphabet.size() > MAX_LETTERS {
            return Err(CliError::Usage(format!(
                "at most {MAX_LETTERS} letters are supported, got {}",
                self.alphabet.size()
            )));
        }
        Ok(())
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let c = parse_config("# sweep\np = 5\nalphabet = \"xy\"  # two letters\n\ndim-cap=10\n").unwrap();
        assert_eq!(c["p"], "5");
        assert_eq!(c["alphabet"], "xy");
        assert_eq!(c["dim_cap"], "10");
        assert!(parse_config("q = 1").is_err());
        assert!(parse_config("p 5").is_err());
    }

    #[test]
    fn bounds() {
        let ok = |c: Common| RunConfig::resolve(&c, None, None, None, None);
        assert!(ok(Common::default()).is_ok());
        assert!(ok(Common { p: Some(4), ..Common::default() }).is_err());
        assert!(ok(Common { p: Some(17), ..Common::default() }).is_err());
        assert!(ok(Common { n: Some(7), ..Common::default() }).is_err());
        assert!(ok(Common { alphabet: Some("abcde".into()), ..Common::default() }).is_err());
        assert!(ok(Common { alphabet: Some("xx".into()), ..Common::default() }).is_err());
    }
}
