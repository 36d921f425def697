//! Argument parsing and resolution into a validated run configuration.

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as Complex;
use quadwalk_core::{CoinParams, InitialState};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "quadwalk",
    about = "4-state quantum walk on the line: simulation, limit laws, verification",
    after_help = "Complex numbers are written re+imj, e.g. 0.5, -0.5j, 0.5-0.5j, 7.07e-1+0j.\n\
                  Exit codes: 0 success, 1 verification failure, 2 invalid input."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coin amplitudes a,b,c,d (the 2x2 block [[a,c],[b,d]] must be unitary)
    #[arg(long, global = true)]
    pub coin: Option<String>,

    /// Initial origin amplitudes alpha,beta,gamma,delta (unit norm)
    #[arg(long, global = true)]
    pub init: Option<String>,

    /// Number of walk steps
    #[arg(long, global = true, default_value_t = 500)]
    pub time: usize,

    /// Grid size for quadratures and density tables (even, >= 256)
    #[arg(long = "grid", global = true, default_value_t = 16384)]
    pub gridsize: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output path (stdout when omitted)
    #[arg(long = "out", global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the randomized verification suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Fault injection: add this real offset to the coin amplitude a
    /// (verify only; the unitarity check must then fail)
    #[arg(long = "perturb-coin", global = true)]
    pub perturb_coin: Option<f64>,

    /// Tolerance override NAME=VALUE (repeatable); see `verify` report for names
    #[arg(long = "tol", global = true)]
    pub tol: Vec<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evolve the walk and emit the position distribution at time T
    Simulate {
        /// Also emit the (t, P(X_t=0)) series for t = 0..=T to this path
        #[arg(long = "p0-series")]
        p0_series: Option<PathBuf>,
    },
    /// Emit the closed-form stationary distribution over an x-range
    Stationary {
        /// Half-width of the x-range
        #[arg(long, default_value_t = 20)]
        range: i64,
    },
    /// Emit the rescaled weak-limit density and its parameters
    Limit,
    /// Run the full invariant suite; nonzero exit on any failure
    Verify,
    /// Put the 2-state walk's limit density next to the 4-state one
    Compare2 {
        /// 2-state initial amplitudes alpha2,beta2 (unit norm)
        #[arg(long = "init2")]
        init2: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved, validated configuration.
pub struct RunConfig {
    pub command: Command,
    pub coin: CoinParams,
    pub init: InitialState,
    pub time: usize,
    pub gridsize: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub perturbation: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self> {
        if cli.gridsize < 256 || !cli.gridsize.is_multiple_of(2) {
            bail!("--grid must be even and at least 256, got {}", cli.gridsize);
        }
        if cli.perturb_coin.is_some() && !matches!(cli.command, Command::Verify) {
            bail!("--perturb-coin is a verify-only fault injection flag");
        }

        let base_coin = match &cli.coin {
            None => CoinParams::hadamard(),
            Some(spec) => {
                let v = parse_complex_list(spec, 4)?;
                CoinParams::new(v[0], v[1], v[2], v[3])
                    .map_err(|e| anyhow!("invalid --coin: {e}"))?
            }
        };
        let coin = match cli.perturb_coin {
            None => base_coin,
            Some(eps) => CoinParams::new_unchecked(
                base_coin.a + Complex::new(eps, 0.0),
                base_coin.b,
                base_coin.c,
                base_coin.d,
            ),
        };

        let init = match &cli.init {
            None => InitialState::symmetric(),
            Some(spec) => {
                let v = parse_complex_list(spec, 4)?;
                InitialState::new(v[0], v[1], v[2], v[3])
                    .map_err(|e| anyhow!("invalid --init: {e}"))?
            }
        };

        if matches!(
            cli.command,
            Command::Stationary { .. } | Command::Limit | Command::Compare2 { .. }
        ) && !is_hadamard(&coin)
        {
            bail!("closed-form limit laws are available for the Hadamard coin only");
        }

        let mut tolerances = crate::verify::default_thresholds();
        for spec in &cli.tol {
            let (name, value) = spec
                .split_once('=')
                .ok_or_else(|| anyhow!("--tol expects NAME=VALUE, got {spec:?}"))?;
            let value: f64 = value
                .parse()
                .map_err(|_| anyhow!("--tol {name}: {value:?} is not a number"))?;
            if !tolerances.contains_key(name) {
                bail!(
                    "unknown tolerance {name:?}; valid names: {}",
                    tolerances.keys().cloned().collect::<Vec<_>>().join(", ")
                );
            }
            tolerances.insert(name.to_string(), value);
        }

        Ok(Self {
            command: cli.command,
            coin,
            init,
            time: cli.time,
            gridsize: cli.gridsize,
            format: cli.format,
            out: cli.out,
            seed: cli.seed,
            perturbation: cli.perturb_coin,
            tolerances,
        })
    }
}

pub fn is_hadamard(coin: &CoinParams) -> bool {
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    (coin.a - h).norm() <= 1e-12
        && (coin.b - h).norm() <= 1e-12
        && (coin.c - h).norm() <= 1e-12
        && (coin.d + h).norm() <= 1e-12
}

/// Parses `n` comma-separated complex numbers in `re+imj` notation.
pub fn parse_complex_list(spec: &str, n: usize) -> Result<Vec<Complex>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != n {
        bail!("expected {n} comma-separated values, got {}", parts.len());
    }
    parts.iter().map(|p| parse_complex(p)).collect()
}

/// Parses one complex number: `0.5`, `-1j`, `0.5-0.5j`, `1e-3+2.5e-4j`, ...
pub fn parse_complex(s: &str) -> Result<Complex> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('J')) else {
        return t
            .parse::<f64>()
            .map(|re| Complex::new(re, 0.0))
            .map_err(|_| anyhow!("cannot parse {t:?} as a real number"));
    };
    // split the imaginary term at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let re: f64 = re_str
        .parse()
        .map_err(|_| anyhow!("cannot parse real part {re_str:?} of {t:?}"))?;
    let im: f64 = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_str
            .parse()
            .map_err(|_| anyhow!("cannot parse imaginary part {im_str:?} of {t:?}"))?,
    };
    Ok(Complex::new(re, im))
}

/// Formats one complex number losslessly in the same `re+imj` notation the
/// parser accepts (17 significant digits each part).
pub fn format_complex(z: Complex) -> String {
    format!("{:.16e}{:+.16e}j", z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_combined_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex::new(0.5, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex::new(-0.5, 0.0));
        assert_eq!(parse_complex("0.5j").unwrap(), Complex::new(0.0, 0.5));
        assert_eq!(parse_complex("-0.5j").unwrap(), Complex::new(0.0, -0.5));
        assert_eq!(parse_complex("j").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse_complex("-j").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("1+2j").unwrap(), Complex::new(1.0, 2.0));
        assert_eq!(parse_complex("0.5-0.5j").unwrap(), Complex::new(0.5, -0.5));
        assert_eq!(
            parse_complex("1e-3+2.5e-4j").unwrap(),
            Complex::new(1e-3, 2.5e-4)
        );
        assert_eq!(parse_complex("1E-3j").unwrap(), Complex::new(0.0, 1e-3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1+j2").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn format_round_trips() {
        for z in [
            Complex::new(0.5, -0.5),
            Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex::new(-1.0 / 3.0, 2.0e-17),
            Complex::new(0.0, 0.0),
        ] {
            let shown = format_complex(z);
            assert_eq!(parse_complex(&shown).unwrap(), z, "{shown}");
        }
    }

    #[test]
    fn list_length_is_checked() {
        assert!(parse_complex_list("1,2,3", 4).is_err());
        assert_eq!(parse_complex_list("1,2,3,4", 4).unwrap().len(), 4);
    }
}
