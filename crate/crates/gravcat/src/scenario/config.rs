//! Plain-text sweep configuration files and `--set` overrides.
//!
//! The format is flat key-value with two sections:
//!
//! ```text
//! # witness against time at several temperatures
//! channel = constant_field
//! outputs = EW
//! reference = thermal_t0
//!
//! [fixed]
//! omega = 1.0
//! lambda = 0.5
//!
//! [sweep]
//! T = list 0.1 0.4 0.7 1.0
//! t = lin 0 12.566370614359172 400
//! ```
//!
//! Top-level keys (`channel`, `outputs`, `reference`) come before the
//! sections. `channel` is one of `constant_field`, `decaying_field`,
//! `pl_noise`, `qwm_after_pl` and is required; `outputs` is a comma-separated
//! subset of `ST, BN, CN, PR, EW` (default: all five); `reference` currently
//! admits only `thermal_t0`. `[fixed]` pins parameters, `[sweep]` declares
//! one or two grids (`lin start stop points`, `log start stop points`, or
//! `list v1 v2 ...`); the first sweep line is the outer axis. Any key not
//! valid for the chosen channel, and any unknown key anywhere, is an error
//! naming the offending line.

use std::path::Path;

use super::{
    ChannelKind, Grid, MeasureKind, ParamKey, ParamSet, ReferenceState, Scenario, ScenarioError,
    SpectrumSweep, SweepAxis, SweepConfig,
};

fn err(line: usize, msg: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Config(format!("line {line}: {msg}"))
}

fn parse_number(token: &str, line: usize) -> Result<f64, ScenarioError> {
    let v: f64 = token
        .parse()
        .map_err(|_| err(line, format!("'{token}' is not a number")))?;
    if !v.is_finite() {
        return Err(err(line, format!("'{token}' is not finite")));
    }
    Ok(v)
}

fn parse_grid(spec: &str, line: usize) -> Result<Grid, ScenarioError> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    match tokens.split_first() {
        Some((&"lin", rest)) | Some((&"log", rest)) => {
            if rest.len() != 3 {
                return Err(err(
                    line,
                    format!("'{}' grids take exactly: start stop points", tokens[0]),
                ));
            }
            let start = parse_number(rest[0], line)?;
            let stop = parse_number(rest[1], line)?;
            let points: usize = rest[2]
                .parse()
                .map_err(|_| err(line, format!("'{}' is not a point count", rest[2])))?;
            Ok(if tokens[0] == "lin" {
                Grid::Linear { start, stop, points }
            } else {
                Grid::LogSpaced { start, stop, points }
            })
        }
        Some((&"list", rest)) => {
            if rest.is_empty() {
                return Err(err(line, "'list' needs at least one value"));
            }
            Ok(Grid::List(
                rest.iter().map(|t| parse_number(t, line)).collect::<Result<_, _>>()?,
            ))
        }
        _ => Err(err(line, "grid must start with 'lin', 'log', or 'list'")),
    }
}

fn parse_outputs(value: &str, line: usize) -> Result<Vec<MeasureKind>, ScenarioError> {
    let mut outputs = Vec::new();
    for token in value.split(',') {
        let token = token.trim();
        let m = MeasureKind::from_name(token)
            .ok_or_else(|| err(line, format!("unknown measure '{token}' (ST, BN, CN, PR, EW)")))?;
        outputs.push(m);
    }
    Ok(outputs)
}

#[derive(PartialEq)]
enum Section {
    Top,
    Fixed,
    Sweep,
}

/// Parse a sweep configuration from text. See the module docs for the
/// format; errors carry 1-based line numbers.
pub fn parse_config(text: &str) -> Result<SweepConfig, ScenarioError> {
    let mut section = Section::Top;
    let mut channel: Option<(ChannelKind, usize)> = None;
    let mut outputs: Option<Vec<MeasureKind>> = None;
    let mut reference: Option<ReferenceState> = None;
    let mut fixed: Vec<(ParamKey, f64, usize)> = Vec::new();
    let mut axes: Vec<(SweepAxis, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "fixed" => Section::Fixed,
                "sweep" => Section::Sweep,
                other => return Err(err(line, format!("unknown section '[{other}]'"))),
            };
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, "expected 'key = value'"));
        };
        let (key, value) = (key.trim(), value.trim());
        match section {
            Section::Top => match key {
                "channel" => {
                    if channel.is_some() {
                        return Err(err(line, "duplicate 'channel'"));
                    }
                    let c = ChannelKind::from_name(value).ok_or_else(|| {
                        err(
                            line,
                            format!(
                                "unknown channel '{value}' (constant_field, decaying_field, pl_noise, qwm_after_pl)"
                            ),
                        )
                    })?;
                    channel = Some((c, line));
                }
                "outputs" => {
                    if outputs.is_some() {
                        return Err(err(line, "duplicate 'outputs'"));
                    }
                    outputs = Some(parse_outputs(value, line)?);
                }
                "reference" => {
                    if reference.is_some() {
                        return Err(err(line, "duplicate 'reference'"));
                    }
                    reference = Some(ReferenceState::from_name(value).ok_or_else(|| {
                        err(line, format!("unknown reference '{value}' (thermal_t0)"))
                    })?);
                }
                other => {
                    return Err(err(
                        line,
                        format!("unknown top-level key '{other}' (channel, outputs, reference)"),
                    ))
                }
            },
            Section::Fixed | Section::Sweep => {
                let k = ParamKey::from_name(key)
                    .ok_or_else(|| err(line, format!("unknown parameter '{key}'")))?;
                if fixed.iter().any(|&(fk, _, _)| fk == k)
                    || axes.iter().any(|(a, _)| a.key == k)
                {
                    return Err(err(line, format!("parameter '{key}' already assigned")));
                }
                if section == Section::Fixed {
                    fixed.push((k, parse_number(value, line)?, line));
                } else {
                    if axes.len() == 2 {
                        return Err(err(line, "at most 2 parameters can be swept"));
                    }
                    axes.push((SweepAxis::new(k, parse_grid(value, line)?), line));
                }
            }
        }
    }

    let Some((channel, _)) = channel else {
        return Err(ScenarioError::Config("missing 'channel = ...' line".into()));
    };
    let allowed = channel.allowed_keys();
    let mut params = ParamSet::default();
    for (k, v, line) in fixed {
        if !allowed.contains(&k) {
            return Err(err(
                line,
                format!("parameter '{}' does not apply to channel '{}'", k.name(), channel.name()),
            ));
        }
        params.set(k, v);
    }
    for (axis, line) in &axes {
        if !allowed.contains(&axis.key) {
            return Err(err(
                *line,
                format!(
                    "parameter '{}' does not apply to channel '{}'",
                    axis.key.name(),
                    channel.name()
                ),
            ));
        }
    }
    if axes.is_empty() {
        return Err(ScenarioError::Config("the [sweep] section declares no parameters".into()));
    }

    let cfg = SweepConfig {
        channel,
        fixed: params,
        axes: axes.into_iter().map(|(a, _)| a).collect(),
        outputs: outputs.unwrap_or_else(|| MeasureKind::ALL.to_vec()),
        reference: reference.unwrap_or_default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Read and parse a configuration file.
pub fn load_config(path: &Path) -> Result<SweepConfig, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ScenarioError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

/// Parse one `key=value` override.
pub fn parse_assignment(s: &str) -> Result<(ParamKey, f64), ScenarioError> {
    let Some((key, value)) = s.split_once('=') else {
        return Err(ScenarioError::Config(format!("--set '{s}': expected key=value")));
    };
    let (key, value) = (key.trim(), value.trim());
    let k = ParamKey::from_name(key)
        .ok_or_else(|| ScenarioError::Config(format!("--set: unknown parameter '{key}'")))?;
    let v: f64 = value
        .parse()
        .map_err(|_| ScenarioError::Config(format!("--set {key}: '{value}' is not a number")))?;
    if !v.is_finite() {
        return Err(ScenarioError::Config(format!("--set {key}: value must be finite")));
    }
    Ok((k, v))
}

/// Apply `key=value` overrides to a scenario's fixed parameters. Overriding
/// a swept parameter or one the scenario does not read is an error.
pub fn apply_overrides(scenario: &mut Scenario, sets: &[String]) -> Result<(), ScenarioError> {
    for s in sets {
        let (key, value) = parse_assignment(s)?;
        match scenario {
            Scenario::Measures(cfg) => {
                if cfg.axes.iter().any(|a| a.key == key) {
                    return Err(ScenarioError::Config(format!(
                        "--set: '{}' is swept; override values in the [sweep] grid instead",
                        key.name()
                    )));
                }
                if !cfg.channel.allowed_keys().contains(&key) {
                    return Err(ScenarioError::Config(format!(
                        "--set: parameter '{}' does not apply to channel '{}'",
                        key.name(),
                        cfg.channel.name()
                    )));
                }
                cfg.fixed.set(key, value);
            }
            Scenario::Spectrum(sp) => {
                if sp.axis.key == key {
                    return Err(ScenarioError::Config(format!(
                        "--set: '{}' is swept; override values in the sweep grid instead",
                        key.name()
                    )));
                }
                if !SpectrumSweep::ALLOWED_KEYS.contains(&key) {
                    return Err(ScenarioError::Config(format!(
                        "--set: parameter '{}' does not apply to a spectrum sweep",
                        key.name()
                    )));
                }
                sp.fixed.set(key, value);
            }
        }
    }
    Ok(())
}
