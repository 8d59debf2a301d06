use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xkraw_core::algebra::{parse_rational, Rational};
use xkraw_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "xkraw", version, about = "Exact classical and exceptional Krawtchouk polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients and grid values of the classical K_n(x; p, N).
    Kraw(Common),
    /// Exceptional polynomials K^{(j,d)}_n.
    Xkraw(Common),
    /// Run the verification suites.
    Verify(Common),
    /// Recurrence coefficients c_{n,l} as CSV.
    Recurrence(Common),
    /// Resultant identities for K_n(x) and K_n(x+1).
    Resultant(Common),
    /// Everything about the (2,2) family at one (p, N).
    Family22(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Probability as an exact fraction, e.g. 1/3.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long = "N")]
    pub big_n: Option<i64>,
    /// Family 1..4.
    #[arg(long)]
    pub j: Option<i64>,
    /// Seed degree.
    #[arg(long)]
    pub d: Option<i64>,
    /// Index or inclusive range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Suite names, comma separated (verify).
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Parameters `a` for the resultant check, comma separated fractions.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (0: all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Largest seed degree in sweeps.
    #[arg(long, default_value_t = 3)]
    pub d_max: i64,
    /// Largest n for the resultant check.
    #[arg(long, default_value_t = 5)]
    pub n_max: i64,
    /// Flip one sign in the Darboux seeds; verification must then fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

pub const D_CAP: i64 = 6;

impl Common {
    pub fn p_value(&self) -> Result<Option<Rational>> {
        self.p.as_deref().map(parse_rational).transpose()
    }

    pub fn require_p(&self) -> Result<Rational> {
        self.p_value()?.ok_or_else(|| missing("--p"))
    }

    pub fn require_n_big(&self) -> Result<i64> {
        self.big_n.ok_or_else(|| missing("--N"))
    }

    pub fn require_j(&self) -> Result<i64> {
        self.j.ok_or_else(|| missing("--j"))
    }

    pub fn require_d(&self) -> Result<usize> {
        let d = self.d.ok_or_else(|| missing("--d"))?;
        check_d(d)
    }

    pub fn n_range(&self) -> Result<Option<Vec<i64>>> {
        self.n.as_deref().map(parse_range).transpose()
    }
}

pub fn check_d(d: i64) -> Result<usize> {
    if !(0..=D_CAP).contains(&d) {
        return Err(Error::InvalidParams(format!("d must lie in 0..={D_CAP}, got {d}")));
    }
    Ok(d as usize)
}

fn missing(flag: &str) -> Error {
    Error::InvalidParams(format!("{flag} is required"))
}

/// `7`, `-2..4` (inclusive) or `0..=4`.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::InvalidParams(format!("bad index or range {s:?}"));
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    match s.split_once("..") {
        None => Ok(vec![int(s)?]),
        Some((a, b)) => {
            let (lo, hi) = (int(a)?, int(b.strip_prefix('=').unwrap_or(b))?);
            if lo > hi {
                return Err(bad());
            }
            Ok((lo..=hi).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert_eq!(parse_range("-2..1").unwrap(), vec![-2, -1, 0, 1]);
        assert_eq!(parse_range("0..=2").unwrap(), vec![0, 1, 2]);
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("x").is_err());
    }
}
