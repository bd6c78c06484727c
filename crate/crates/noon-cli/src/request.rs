use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError};
use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Detector table of the N-photon projection network.
    Project,
    /// NOON fringe versus phase, by network simulation and in closed form.
    Fringe,
    /// Four-photon rate versus H–V delay for a Gaussian spectrum.
    Dip,
    /// Four-photon visibility from a spectrum or an overlap ratio.
    Visibility,
    /// Simple-picture G⁽⁴⁾ values for the three pair timings.
    Cases,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Type1,
    Type2,
}

/// Command-line flags. Every field is optional here so a config file can fill gaps.
#[derive(Debug, Default, Parser)]
#[command(name = "noon", version, about = "NOON-state projection and four-photon interference scans")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Option<Command>,
    /// Photon number N.
    #[arg(long)]
    pub n: Option<usize>,
    /// Pump (sum-frequency) bandwidth, rad/s.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_plus: Option<f64>,
    /// Phase-matching (difference-frequency) bandwidth, rad/s.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_minus: Option<f64>,
    /// Overlap ratio ℰ/𝒜 in [0, 1], instead of a spectrum.
    #[arg(long, allow_negative_numbers = true)]
    pub ratio_ea: Option<f64>,
    /// First phase, radians.
    #[arg(long, allow_negative_numbers = true)]
    pub phi_start: Option<f64>,
    /// End of the phase range (excluded), radians.
    #[arg(long, allow_negative_numbers = true)]
    pub phi_end: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// First delay, seconds.
    #[arg(long, allow_negative_numbers = true)]
    pub dt_start: Option<f64>,
    /// Last delay (included), seconds.
    #[arg(long, allow_negative_numbers = true)]
    pub dt_end: Option<f64>,
    /// Detector size, metres.
    #[arg(long, allow_negative_numbers = true)]
    pub dx: Option<f64>,
    /// Fringe spacing λ/Δθ, metres.
    #[arg(long, allow_negative_numbers = true)]
    pub fringe_spacing: Option<f64>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file whose keys are flag names; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Config file contents, keyed by flag name.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub command: Option<Command>,
    pub n: Option<usize>,
    pub sigma_plus: Option<f64>,
    pub sigma_minus: Option<f64>,
    pub ratio_ea: Option<f64>,
    pub phi_start: Option<f64>,
    pub phi_end: Option<f64>,
    pub points: Option<usize>,
    pub dt_start: Option<f64>,
    pub dt_end: Option<f64>,
    pub dx: Option<f64>,
    pub fringe_spacing: Option<f64>,
    pub scheme: Option<SchemeArg>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| invalid(format!("config: {}", e.message())))
    }
}

/// A fully resolved scan. Range fields that do not apply to `command` are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRequest {
    pub command: Command,
    pub n: Option<usize>,
    pub sigma_plus: Option<f64>,
    pub sigma_minus: Option<f64>,
    pub ratio_ea: Option<f64>,
    pub phi_start: Option<f64>,
    pub phi_end: Option<f64>,
    pub points: Option<usize>,
    pub dt_start: Option<f64>,
    pub dt_end: Option<f64>,
    pub dx: Option<f64>,
    pub fringe_spacing: Option<f64>,
    pub scheme: Option<SchemeArg>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

const DEFAULT_N: usize = 4;
const DEFAULT_FRINGE_POINTS: usize = 64;
/// Odd, so the symmetric default delay range includes ΔT = 0.
const DEFAULT_DIP_POINTS: usize = 65;

impl ScanRequest {
    /// Flags over config values, then command defaults, then validation.
    pub fn resolve(args: Args, config: ConfigFile) -> Result<Self, CliError> {
        let command = args
            .command
            .or(config.command)
            .ok_or_else(|| invalid("command: required (project, fringe, dip, visibility or cases)"))?;
        let mut req = ScanRequest {
            command,
            n: args.n.or(config.n),
            sigma_plus: args.sigma_plus.or(config.sigma_plus),
            sigma_minus: args.sigma_minus.or(config.sigma_minus),
            ratio_ea: args.ratio_ea.or(config.ratio_ea),
            phi_start: args.phi_start.or(config.phi_start),
            phi_end: args.phi_end.or(config.phi_end),
            points: args.points.or(config.points),
            dt_start: args.dt_start.or(config.dt_start),
            dt_end: args.dt_end.or(config.dt_end),
            dx: args.dx.or(config.dx),
            fringe_spacing: args.fringe_spacing.or(config.fringe_spacing),
            scheme: args.scheme.or(config.scheme),
            format: args.format.or(config.format).unwrap_or(Format::Csv),
            out: args.out.or(config.out),
        };
        req.apply_defaults();
        req.validate()?;
        Ok(req)
    }

    fn apply_defaults(&mut self) {
        match self.command {
            Command::Project => {
                self.n.get_or_insert(DEFAULT_N);
            }
            Command::Fringe => {
                self.n.get_or_insert(DEFAULT_N);
                self.phi_start.get_or_insert(0.0);
                self.phi_end.get_or_insert(2.0 * std::f64::consts::PI);
                self.points.get_or_insert(DEFAULT_FRINGE_POINTS);
            }
            Command::Dip => {
                // the delay range defaults to ±5 T_c once the spectrum is built
                self.points.get_or_insert(DEFAULT_DIP_POINTS);
            }
            Command::Visibility => {
                self.scheme.get_or_insert(SchemeArg::Type2);
            }
            Command::Cases => {}
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let finite = |name: &str, v: Option<f64>| match v {
            Some(x) if !x.is_finite() => Err(invalid(format!("{name}: must be finite, got {x}"))),
            _ => Ok(()),
        };
        for (name, v) in [
            ("sigma-plus", self.sigma_plus),
            ("sigma-minus", self.sigma_minus),
            ("ratio-ea", self.ratio_ea),
            ("phi-start", self.phi_start),
            ("phi-end", self.phi_end),
            ("dt-start", self.dt_start),
            ("dt-end", self.dt_end),
            ("dx", self.dx),
            ("fringe-spacing", self.fringe_spacing),
        ] {
            finite(name, v)?;
        }
        if let Some(p) = self.points {
            if p < 2 {
                return Err(invalid(format!("points: need at least 2, got {p}")));
            }
        }
        if let (Some(a), Some(b)) = (self.phi_start, self.phi_end) {
            if a >= b {
                return Err(invalid(format!("phi-start: {a} must be below phi-end {b}")));
            }
        }
        if let (Some(a), Some(b)) = (self.dt_start, self.dt_end) {
            if a >= b {
                return Err(invalid(format!("dt-start: {a} must be below dt-end {b}")));
            }
        }
        let spectrum = self.sigma_plus.is_some() || self.sigma_minus.is_some();
        let both_sigmas = self.sigma_plus.is_some() && self.sigma_minus.is_some();
        match self.command {
            Command::Dip => {
                if !both_sigmas {
                    return Err(invalid("sigma-plus, sigma-minus: both required for dip"));
                }
                if self.ratio_ea.is_some() {
                    return Err(invalid("ratio-ea: dip needs a spectrum, not an overlap ratio"));
                }
                if self.dt_start.is_some() != self.dt_end.is_some() {
                    return Err(invalid("dt-start, dt-end: give both or neither"));
                }
            }
            Command::Visibility => {
                if spectrum == self.ratio_ea.is_some() {
                    return Err(invalid(
                        "ratio-ea: supply exactly one of an overlap ratio or sigma-plus with sigma-minus",
                    ));
                }
                if spectrum && !both_sigmas {
                    return Err(invalid("sigma-plus, sigma-minus: both required"));
                }
                if let Some(r) = self.ratio_ea {
                    if !(0.0..=1.0).contains(&r) {
                        return Err(invalid(format!("ratio-ea: {r} not in [0, 1]")));
                    }
                }
                if self.dx.is_some() != self.fringe_spacing.is_some() {
                    return Err(invalid("dx, fringe-spacing: give both or neither"));
                }
            }
            Command::Project | Command::Fringe | Command::Cases => {}
        }
        Ok(())
    }
}
