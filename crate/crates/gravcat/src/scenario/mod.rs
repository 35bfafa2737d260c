//! Configuration-driven parameter sweeps: model -> channel -> measures over
//! one- or two-dimensional grids, collected into deterministic tables.
//!
//! A [`Scenario`] is either a [`SweepConfig`] (apply a channel to the thermal
//! state over a grid and record the requested measures) or a
//! [`SpectrumSweep`] (tabulate the four energy branches against omega or
//! gamma). Rows always appear in sweep order, outer axis first, regardless of
//! how many workers evaluate the grid; identical inputs produce bitwise
//! identical tables.

pub mod config;
pub mod csvout;
pub mod presets;

use rayon::prelude::*;

use crate::channels::{
    dephase_pl, evolve_constant_field, evolve_decaying_field, qwm_reverse, DecayParams,
    FieldParams, NoiseParams, ReversalParams,
};
use crate::error::CoreError;
use crate::measures::{measure_all, MeasureRecord};
use crate::model::{spectrum, thermal_state, ModelParams};

/// Errors from building or running a scenario. `exit_code` maps them onto
/// the CLI convention: 1 for configuration problems (including invalid
/// parameter values and I/O), 2 for numeric failures during evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("evaluation failed at {point}: {source}")]
    Point {
        point: String,
        #[source]
        source: CoreError,
    },
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Config(_) | ScenarioError::Io { .. } => 1,
            // A parameter that fails its own validation is a configuration
            // problem no matter where it surfaces; everything else that goes
            // wrong mid-grid is numeric.
            ScenarioError::Point { source: CoreError::InvalidParam { .. }, .. } => 1,
            ScenarioError::Point { .. } => 2,
        }
    }
}

/// The channel applied between the thermal state and the measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    ConstantField,
    DecayingField,
    PlNoise,
    QwmAfterPl,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::ConstantField,
        ChannelKind::DecayingField,
        ChannelKind::PlNoise,
        ChannelKind::QwmAfterPl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::ConstantField => "constant_field",
            ChannelKind::DecayingField => "decaying_field",
            ChannelKind::PlNoise => "pl_noise",
            ChannelKind::QwmAfterPl => "qwm_after_pl",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Parameters this channel reads; anything else in a config is a typo.
    pub fn allowed_keys(self) -> &'static [ParamKey] {
        use ParamKey::*;
        match self {
            ChannelKind::ConstantField => &[Omega, Gamma, Temperature, Energy, Lambda, Delta, Time],
            ChannelKind::DecayingField => &[Omega, Gamma, Temperature, Delta, Mu, Chi, Time],
            ChannelKind::PlNoise => &[Omega, Gamma, Temperature, G, Alpha, Tau],
            ChannelKind::QwmAfterPl => &[Omega, Gamma, Temperature, G, Alpha, Tau, R],
        }
    }
}

/// One of the five reported measures. Variants are declared in column-name
/// order so sorting them yields the CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasureKind {
    Bn,
    Cn,
    Ew,
    Pr,
    St,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 5] = [
        MeasureKind::Bn,
        MeasureKind::Cn,
        MeasureKind::Ew,
        MeasureKind::Pr,
        MeasureKind::St,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Bn => "BN",
            MeasureKind::Cn => "CN",
            MeasureKind::Ew => "EW",
            MeasureKind::Pr => "PR",
            MeasureKind::St => "ST",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    fn pick(self, r: &MeasureRecord) -> f64 {
        match self {
            MeasureKind::Bn => r.bn,
            MeasureKind::Cn => r.cn,
            MeasureKind::Ew => r.ew,
            MeasureKind::Pr => r.pr,
            MeasureKind::St => r.st,
        }
    }
}

/// Every parameter a scenario can fix or sweep. The wire names are the
/// config-file and `--set` keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKey {
    Omega,
    Gamma,
    Temperature,
    Energy,
    Lambda,
    Delta,
    Mu,
    Chi,
    G,
    Alpha,
    R,
    Time,
    Tau,
}

impl ParamKey {
    pub const ALL: [ParamKey; 13] = [
        ParamKey::Omega,
        ParamKey::Gamma,
        ParamKey::Temperature,
        ParamKey::Energy,
        ParamKey::Lambda,
        ParamKey::Delta,
        ParamKey::Mu,
        ParamKey::Chi,
        ParamKey::G,
        ParamKey::Alpha,
        ParamKey::R,
        ParamKey::Time,
        ParamKey::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamKey::Omega => "omega",
            ParamKey::Gamma => "gamma",
            ParamKey::Temperature => "T",
            ParamKey::Energy => "E",
            ParamKey::Lambda => "lambda",
            ParamKey::Delta => "delta",
            ParamKey::Mu => "mu",
            ParamKey::Chi => "chi",
            ParamKey::G => "g",
            ParamKey::Alpha => "alpha",
            ParamKey::R => "r",
            ParamKey::Time => "t",
            ParamKey::Tau => "tau",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// A complete parameter assignment. Sweeps start from one of these and
/// override the swept keys point by point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    values: [f64; 13],
}

impl Default for ParamSet {
    /// omega=1, gamma=1, T=0.1, E=0, lambda=0.5, delta=1, mu=0.5, chi=0.1,
    /// g=1e-4, alpha=2.1, r=0, t=0, tau=0.
    fn default() -> Self {
        let mut p = ParamSet { values: [0.0; 13] };
        p.set(ParamKey::Omega, 1.0);
        p.set(ParamKey::Gamma, 1.0);
        p.set(ParamKey::Temperature, 0.1);
        p.set(ParamKey::Energy, 0.0);
        p.set(ParamKey::Lambda, 0.5);
        p.set(ParamKey::Delta, 1.0);
        p.set(ParamKey::Mu, 0.5);
        p.set(ParamKey::Chi, 0.1);
        p.set(ParamKey::G, 1e-4);
        p.set(ParamKey::Alpha, 2.1);
        p.set(ParamKey::R, 0.0);
        p.set(ParamKey::Time, 0.0);
        p.set(ParamKey::Tau, 0.0);
        p
    }
}

impl ParamSet {
    pub fn get(&self, key: ParamKey) -> f64 {
        self.values[key as usize]
    }

    pub fn set(&mut self, key: ParamKey, value: f64) {
        self.values[key as usize] = value;
    }

    pub fn with(mut self, key: ParamKey, value: f64) -> Self {
        self.set(key, value);
        self
    }
}

/// Grid of sweep values. Linear and log-spaced grids hit both endpoints
/// exactly (the interpolation is start*(1-t) + stop*t, and for log spacing
/// the first and last values are pinned to the inputs).
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    List(Vec<f64>),
    Linear { start: f64, stop: f64, points: usize },
    LogSpaced { start: f64, stop: f64, points: usize },
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::List(v) => v.len(),
            Grid::Linear { points, .. } | Grid::LogSpaced { points, .. } => *points,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self, key: ParamKey) -> Result<(), ScenarioError> {
        let bad = |msg: String| Err(ScenarioError::Config(msg));
        match self {
            Grid::List(v) => {
                if v.is_empty() {
                    return bad(format!("sweep '{}': empty value list", key.name()));
                }
                if let Some(x) = v.iter().find(|x| !x.is_finite()) {
                    return bad(format!("sweep '{}': non-finite value {x}", key.name()));
                }
            }
            Grid::Linear { start, stop, points } => {
                if *points < 2 {
                    return bad(format!(
                        "sweep '{}': lin grid needs at least 2 points (use a list for a single value)",
                        key.name()
                    ));
                }
                if !start.is_finite() || !stop.is_finite() {
                    return bad(format!("sweep '{}': non-finite grid bound", key.name()));
                }
            }
            Grid::LogSpaced { start, stop, points } => {
                if *points < 2 {
                    return bad(format!(
                        "sweep '{}': log grid needs at least 2 points (use a list for a single value)",
                        key.name()
                    ));
                }
                if !(start.is_finite() && stop.is_finite() && *start > 0.0 && *stop > 0.0) {
                    return bad(format!(
                        "sweep '{}': log grid bounds must be finite and positive",
                        key.name()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Linear { start, stop, points } => (0..*points)
                .map(|i| {
                    let t = i as f64 / (*points - 1) as f64;
                    start * (1.0 - t) + stop * t
                })
                .collect(),
            Grid::LogSpaced { start, stop, points } => {
                let (la, lb) = (start.ln(), stop.ln());
                (0..*points)
                    .map(|i| {
                        if i == 0 {
                            *start
                        } else if i == *points - 1 {
                            *stop
                        } else {
                            let t = i as f64 / (*points - 1) as f64;
                            (la * (1.0 - t) + lb * t).exp()
                        }
                    })
                    .collect()
            }
        }
    }
}

/// One swept parameter with its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub key: ParamKey,
    pub grid: Grid,
}

impl SweepAxis {
    pub fn new(key: ParamKey, grid: Grid) -> Self {
        SweepAxis { key, grid }
    }
}

/// Reference state for the entanglement witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReferenceState {
    /// The untouched thermal state of the same (omega, gamma, T).
    #[default]
    ThermalT0,
}

impl ReferenceState {
    pub fn name(self) -> &'static str {
        match self {
            ReferenceState::ThermalT0 => "thermal_t0",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        (name == ReferenceState::ThermalT0.name()).then_some(ReferenceState::ThermalT0)
    }
}

/// A measure sweep: channel, fixed parameters, one or two swept axes (outer
/// first), and which measures to report.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub fixed: ParamSet,
    pub axes: Vec<SweepAxis>,
    pub outputs: Vec<MeasureKind>,
    pub reference: ReferenceState,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(ScenarioError::Config(format!(
                "expected 1 or 2 swept parameters, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].key == self.axes[1].key {
            return Err(ScenarioError::Config(format!(
                "parameter '{}' is swept twice",
                self.axes[0].key.name()
            )));
        }
        for axis in &self.axes {
            if !self.channel.allowed_keys().contains(&axis.key) {
                return Err(ScenarioError::Config(format!(
                    "parameter '{}' does not apply to channel '{}'",
                    axis.key.name(),
                    self.channel.name()
                )));
            }
            axis.grid.validate(axis.key)?;
        }
        if self.outputs.is_empty() {
            return Err(ScenarioError::Config("no output measures requested".into()));
        }
        Ok(())
    }

    /// Requested measures in column order, deduplicated.
    pub fn sorted_outputs(&self) -> Vec<MeasureKind> {
        let mut out = self.outputs.clone();
        out.sort();
        out.dedup();
        out
    }
}

/// A sweep of the four energy branches against omega or gamma.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSweep {
    pub fixed: ParamSet,
    pub axis: SweepAxis,
}

impl SpectrumSweep {
    /// Parameters meaningful for a spectrum table.
    pub const ALLOWED_KEYS: [ParamKey; 3] =
        [ParamKey::Omega, ParamKey::Gamma, ParamKey::Temperature];

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.axis.key != ParamKey::Omega && self.axis.key != ParamKey::Gamma {
            return Err(ScenarioError::Config(format!(
                "spectrum sweeps run over 'omega' or 'gamma', not '{}'",
                self.axis.key.name()
            )));
        }
        self.axis.grid.validate(self.axis.key)
    }
}

/// Anything the engine can run.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Measures(SweepConfig),
    Spectrum(SpectrumSweep),
}

/// Sweep output: column names and rows of numbers, one row per grid point in
/// sweep order (outer axis slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn describe_point(channel: Option<ChannelKind>, coords: &[(ParamKey, f64)]) -> String {
    let mut s = coords
        .iter()
        .map(|(k, v)| format!("{}={v}", k.name()))
        .collect::<Vec<_>>()
        .join(", ");
    if let Some(c) = channel {
        s.push_str(&format!(" (channel {})", c.name()));
    }
    s
}

fn evaluate_measures(
    channel: ChannelKind,
    p: &ParamSet,
    outputs: &[MeasureKind],
) -> Result<Vec<f64>, CoreError> {
    let model = ModelParams::new(
        p.get(ParamKey::Omega),
        p.get(ParamKey::Gamma),
        p.get(ParamKey::Temperature),
    )?;
    let rho0 = thermal_state(&model)?;
    let rho_t = match channel {
        ChannelKind::ConstantField => {
            let f = FieldParams::new(
                p.get(ParamKey::Energy),
                p.get(ParamKey::Lambda),
                p.get(ParamKey::Delta),
                p.get(ParamKey::Time),
            )?;
            evolve_constant_field(&rho0, &f)?
        }
        ChannelKind::DecayingField => {
            let d = DecayParams::new(p.get(ParamKey::Mu), p.get(ParamKey::Chi))?;
            evolve_decaying_field(&rho0, p.get(ParamKey::Delta), p.get(ParamKey::Time), &d)?
        }
        ChannelKind::PlNoise => {
            let n =
                NoiseParams::new(p.get(ParamKey::G), p.get(ParamKey::Alpha), p.get(ParamKey::Tau))?;
            dephase_pl(&rho0, &n)?
        }
        ChannelKind::QwmAfterPl => {
            let n =
                NoiseParams::new(p.get(ParamKey::G), p.get(ParamKey::Alpha), p.get(ParamKey::Tau))?;
            let dephased = dephase_pl(&rho0, &n)?;
            qwm_reverse(&dephased, &ReversalParams::new(p.get(ParamKey::R))?)?
        }
    };
    let record = measure_all(&rho_t, &rho0)?;
    Ok(outputs.iter().map(|m| m.pick(&record)).collect())
}

/// Evaluate `job` over all indices, preserving index order in the output.
/// `workers` = 0 uses the process-wide thread pool, 1 runs sequentially,
/// anything else runs on a dedicated pool of that size. The results are
/// bitwise identical in all three modes.
fn map_ordered<F>(count: usize, workers: usize, job: F) -> Result<Vec<Vec<f64>>, ScenarioError>
where
    F: Fn(usize) -> Result<Vec<f64>, ScenarioError> + Sync,
{
    let results: Vec<Result<Vec<f64>, ScenarioError>> = match workers {
        1 => (0..count).map(&job).collect(),
        0 => (0..count).into_par_iter().map(&job).collect(),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| ScenarioError::Config(format!("worker pool: {e}")))?;
            pool.install(|| (0..count).into_par_iter().map(&job).collect())
        }
    };
    // Surface the first failing grid point in sweep order, deterministically.
    results.into_iter().collect()
}

fn run_measures(cfg: &SweepConfig, workers: usize) -> Result<ResultTable, ScenarioError> {
    cfg.validate()?;
    let outputs = cfg.sorted_outputs();
    let grids: Vec<Vec<f64>> = cfg.axes.iter().map(|a| a.grid.values()).collect();
    let inner_len = grids.get(1).map_or(1, Vec::len);
    let total = grids[0].len() * inner_len;

    let rows = map_ordered(total, workers, |idx| {
        let (i, j) = (idx / inner_len, idx % inner_len);
        let mut p = cfg.fixed;
        let mut coords = vec![(cfg.axes[0].key, grids[0][i])];
        if cfg.axes.len() == 2 {
            coords.push((cfg.axes[1].key, grids[1][j]));
        }
        for &(k, v) in &coords {
            p.set(k, v);
        }
        let values = evaluate_measures(cfg.channel, &p, &outputs).map_err(|source| {
            ScenarioError::Point { point: describe_point(Some(cfg.channel), &coords), source }
        })?;
        let mut row: Vec<f64> = coords.iter().map(|&(_, v)| v).collect();
        row.extend(values);
        Ok(row)
    })?;

    let mut columns: Vec<String> = cfg.axes.iter().map(|a| a.key.name().to_string()).collect();
    columns.extend(outputs.iter().map(|m| m.name().to_string()));
    Ok(ResultTable { columns, rows })
}

fn run_spectrum(sp: &SpectrumSweep, workers: usize) -> Result<ResultTable, ScenarioError> {
    sp.validate()?;
    let values = sp.axis.grid.values();

    let rows = map_ordered(values.len(), workers, |i| {
        let v = values[i];
        let mut p = sp.fixed;
        p.set(sp.axis.key, v);
        let model = ModelParams::new(
            p.get(ParamKey::Omega),
            p.get(ParamKey::Gamma),
            p.get(ParamKey::Temperature),
        )
        .and_then(|m| spectrum(&m))
        .map_err(|source| ScenarioError::Point {
            point: describe_point(None, &[(sp.axis.key, v)]),
            source,
        })?;
        let mut row = vec![v];
        row.extend(model.energies);
        Ok(row)
    })?;

    let columns = vec![
        sp.axis.key.name().to_string(),
        "E0".into(),
        "E1".into(),
        "E2".into(),
        "E3".into(),
    ];
    Ok(ResultTable { columns, rows })
}

/// Run a scenario on the process-wide thread pool.
pub fn run_scenario(s: &Scenario) -> Result<ResultTable, ScenarioError> {
    run_scenario_with_workers(s, 0)
}

/// Run a scenario with an explicit worker count (1 = strictly sequential).
pub fn run_scenario_with_workers(s: &Scenario, workers: usize) -> Result<ResultTable, ScenarioError> {
    match s {
        Scenario::Measures(cfg) => run_measures(cfg, workers),
        Scenario::Spectrum(sp) => run_spectrum(sp, workers),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::measure_all;
    use crate::model::thermal_state;

    fn single_point_pl(tau: f64) -> SweepConfig {
        SweepConfig {
            channel: ChannelKind::PlNoise,
            fixed: ParamSet::default(),
            axes: vec![SweepAxis::new(ParamKey::Tau, Grid::List(vec![tau]))],
            outputs: MeasureKind::ALL.to_vec(),
            reference: ReferenceState::ThermalT0,
        }
    }

    #[test]
    fn linear_and_log_grids_hit_their_endpoints_exactly() {
        let lin = Grid::Linear { start: 0.0, stop: 4.0 * std::f64::consts::PI, points: 400 };
        let v = lin.values();
        assert_eq!(v.len(), 400);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[399], 4.0 * std::f64::consts::PI);
        assert!(v.windows(2).all(|w| w[0] < w[1]));

        let log = Grid::LogSpaced { start: 0.1, stop: 1e5, points: 400 };
        let v = log.values();
        assert_eq!(v[0], 0.1);
        assert_eq!(v[399], 1e5);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_validation_rejects_degenerate_specs() {
        let key = ParamKey::Tau;
        assert!(Grid::List(vec![]).validate(key).is_err());
        assert!(Grid::List(vec![f64::NAN]).validate(key).is_err());
        assert!(Grid::Linear { start: 0.0, stop: 1.0, points: 1 }.validate(key).is_err());
        assert!(Grid::LogSpaced { start: 0.0, stop: 1.0, points: 10 }.validate(key).is_err());
        assert!(Grid::LogSpaced { start: 0.1, stop: 1e5, points: 400 }.validate(key).is_ok());
    }

    #[test]
    fn param_keys_round_trip_through_names() {
        for k in ParamKey::ALL {
            assert_eq!(ParamKey::from_name(k.name()), Some(k));
        }
        assert_eq!(ParamKey::from_name("Omega"), None);
        for c in ChannelKind::ALL {
            assert_eq!(ChannelKind::from_name(c.name()), Some(c));
        }
        for m in MeasureKind::ALL {
            assert_eq!(MeasureKind::from_name(m.name()), Some(m));
        }
    }

    #[test]
    fn validation_catches_key_and_axis_misuse() {
        let mut cfg = single_point_pl(0.0);
        cfg.axes = vec![];
        assert!(matches!(cfg.validate(), Err(ScenarioError::Config(_))));

        let mut cfg = single_point_pl(0.0);
        cfg.axes = vec![
            SweepAxis::new(ParamKey::Tau, Grid::List(vec![0.0])),
            SweepAxis::new(ParamKey::Tau, Grid::List(vec![1.0])),
        ];
        assert!(matches!(cfg.validate(), Err(ScenarioError::Config(_))));

        // lambda belongs to the constant field, not the noise channel.
        let mut cfg = single_point_pl(0.0);
        cfg.axes = vec![SweepAxis::new(ParamKey::Lambda, Grid::List(vec![0.5]))];
        assert!(matches!(cfg.validate(), Err(ScenarioError::Config(_))));

        let mut cfg = single_point_pl(0.0);
        cfg.outputs.clear();
        assert!(matches!(cfg.validate(), Err(ScenarioError::Config(_))));
    }

    #[test]
    fn degenerate_sweep_reproduces_the_bare_thermal_measures() {
        let table = run_scenario(&Scenario::Measures(single_point_pl(0.0))).unwrap();
        assert_eq!(table.columns, vec!["tau", "BN", "CN", "EW", "PR", "ST"]);
        assert_eq!(table.rows.len(), 1);

        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let rho = thermal_state(&p).unwrap();
        let r = measure_all(&rho, &rho).unwrap();
        let row = &table.rows[0];
        assert_eq!(row[0], 0.0);
        assert_eq!(row[1..], [r.bn, r.cn, r.ew, r.pr, r.st]);
    }

    #[test]
    fn two_axis_sweeps_run_outer_major() {
        let cfg = SweepConfig {
            channel: ChannelKind::PlNoise,
            fixed: ParamSet::default(),
            axes: vec![
                SweepAxis::new(ParamKey::Omega, Grid::List(vec![1.0, 2.0])),
                SweepAxis::new(ParamKey::Tau, Grid::List(vec![0.0, 10.0, 20.0])),
            ],
            outputs: vec![MeasureKind::Pr],
            reference: ReferenceState::ThermalT0,
        };
        let table = run_scenario(&Scenario::Measures(cfg)).unwrap();
        assert_eq!(table.columns, vec!["omega", "tau", "PR"]);
        assert_eq!(table.rows.len(), 6);
        let coords: Vec<(f64, f64)> = table.rows.iter().map(|r| (r[0], r[1])).collect();
        assert_eq!(
            coords,
            vec![(1.0, 0.0), (1.0, 10.0), (1.0, 20.0), (2.0, 0.0), (2.0, 10.0), (2.0, 20.0)]
        );
    }

    #[test]
    fn duplicate_output_requests_collapse_into_one_column() {
        let mut cfg = single_point_pl(0.0);
        cfg.outputs = vec![MeasureKind::St, MeasureKind::Pr, MeasureKind::St];
        let table = run_scenario(&Scenario::Measures(cfg)).unwrap();
        assert_eq!(table.columns, vec!["tau", "PR", "ST"]);
    }

    #[test]
    fn worker_counts_do_not_change_results() {
        let cfg = SweepConfig {
            channel: ChannelKind::QwmAfterPl,
            fixed: ParamSet::default().with(ParamKey::Tau, 50.0),
            axes: vec![
                SweepAxis::new(ParamKey::R, Grid::Linear { start: 0.0, stop: 0.9, points: 7 }),
                SweepAxis::new(ParamKey::Omega, Grid::List(vec![1.0, 2.0, 3.0])),
            ],
            outputs: MeasureKind::ALL.to_vec(),
            reference: ReferenceState::ThermalT0,
        };
        let s = Scenario::Measures(cfg);
        let serial = run_scenario_with_workers(&s, 1).unwrap();
        let parallel = run_scenario_with_workers(&s, 3).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn spectrum_sweep_tabulates_labeled_branches() {
        let sp = SpectrumSweep {
            fixed: ParamSet::default(),
            axis: SweepAxis::new(ParamKey::Gamma, Grid::List(vec![-1.0, 1.0])),
        };
        let table = run_scenario(&Scenario::Spectrum(sp)).unwrap();
        assert_eq!(table.columns, vec!["gamma", "E0", "E1", "E2", "E3"]);
        let sqrt2 = (2.0_f64).sqrt();
        // E0 = -gamma, E1 = gamma, E2 = -K, E3 = K with omega = 1.
        assert_eq!(table.rows[0][1..], [1.0, -1.0, -sqrt2, sqrt2]);
        assert_eq!(table.rows[1][1..], [-1.0, 1.0, -sqrt2, sqrt2]);

        let bad = SpectrumSweep {
            fixed: ParamSet::default(),
            axis: SweepAxis::new(ParamKey::Tau, Grid::List(vec![0.0])),
        };
        assert!(matches!(
            run_scenario(&Scenario::Spectrum(bad)),
            Err(ScenarioError::Config(_))
        ));
    }

    #[test]
    fn point_failures_name_the_grid_point_and_classify_the_exit() {
        // alpha = 0.5 violates the noise-parameter invariant: config class.
        let mut cfg = single_point_pl(1.0);
        cfg.fixed.set(ParamKey::Alpha, 0.5);
        let err = run_scenario(&Scenario::Measures(cfg)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("tau=1"), "{err}");

        // An unrepresentable Boltzmann weight is a numeric failure.
        let mut cfg = single_point_pl(1.0);
        cfg.fixed.set(ParamKey::Temperature, 1e-9);
        let err = run_scenario(&Scenario::Measures(cfg)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(err, ScenarioError::Point { .. }));
    }
}
