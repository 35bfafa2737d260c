//! Bundled sweep presets, one per reference figure.
//!
//! `fig1` tabulates the energy branches; `fig2a`-`fig2e` and `fig3a`-`fig3f`
//! trace the entanglement witness under the constant and decaying fields;
//! `fig4`-`fig8` sweep the four correlation measures against the noise time
//! while varying one model or noise parameter; `fig9` maps the reversal
//! strength against the noise time. Grid densities (400 points per
//! continuous axis) are a rendering choice; the fixed parameter values are
//! the captioned ones.

use std::f64::consts::PI;

use super::{
    ChannelKind, Grid, MeasureKind, ParamKey, ParamSet, ReferenceState, Scenario, SpectrumSweep,
    SweepAxis, SweepConfig,
};

/// Name, figure label, and a one-line summary of a bundled preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub figure: &'static str,
    pub summary: &'static str,
}

const POINTS: usize = 400;

fn lin(start: f64, stop: f64) -> Grid {
    Grid::Linear { start, stop, points: POINTS }
}

fn log(start: f64, stop: f64) -> Grid {
    Grid::LogSpaced { start, stop, points: POINTS }
}

fn list(values: &[f64]) -> Grid {
    Grid::List(values.to_vec())
}

/// Constant field: outer family axis, inner time axis over [0, 4 pi].
fn constant_field(outer: SweepAxis) -> Scenario {
    Scenario::Measures(SweepConfig {
        channel: ChannelKind::ConstantField,
        fixed: ParamSet::default(),
        axes: vec![outer, SweepAxis::new(ParamKey::Time, lin(0.0, 4.0 * PI))],
        outputs: vec![MeasureKind::Ew],
        reference: ReferenceState::ThermalT0,
    })
}

/// Decaying field: outer family axis, inner time axis over [0, 100].
fn decaying_field(outer: SweepAxis) -> Scenario {
    Scenario::Measures(SweepConfig {
        channel: ChannelKind::DecayingField,
        fixed: ParamSet::default(),
        axes: vec![outer, SweepAxis::new(ParamKey::Time, lin(0.0, 100.0))],
        outputs: vec![MeasureKind::Ew],
        reference: ReferenceState::ThermalT0,
    })
}

/// Power-law noise: outer log time axis, inner family axis, four measures.
fn pl_noise(inner: SweepAxis) -> Scenario {
    Scenario::Measures(SweepConfig {
        channel: ChannelKind::PlNoise,
        fixed: ParamSet::default(),
        axes: vec![SweepAxis::new(ParamKey::Tau, log(0.1, 1e5)), inner],
        outputs: vec![MeasureKind::St, MeasureKind::Bn, MeasureKind::Cn, MeasureKind::Pr],
        reference: ReferenceState::ThermalT0,
    })
}

/// Build a preset scenario by name.
pub fn preset(name: &str) -> Option<Scenario> {
    let axis = SweepAxis::new;
    let scenario = match name {
        "fig1" => Scenario::Spectrum(SpectrumSweep {
            fixed: ParamSet::default(),
            axis: axis(ParamKey::Gamma, lin(-5.0, 5.0)),
        }),

        "fig2a" => constant_field(axis(ParamKey::Temperature, list(&[0.1, 0.4, 0.7, 1.0]))),
        "fig2b" => constant_field(axis(ParamKey::Omega, list(&[0.5, 1.0, 2.0, 3.0]))),
        "fig2c" => constant_field(axis(ParamKey::Lambda, list(&[0.1, 0.5, 1.0, 2.0]))),
        "fig2d" => constant_field(axis(ParamKey::Gamma, list(&[0.5, 1.0, 2.0, 3.0]))),
        "fig2e" => constant_field(axis(ParamKey::Delta, list(&[-1.0, -0.5, 0.5, 1.0]))),

        "fig3a" => decaying_field(axis(ParamKey::Chi, list(&[0.1, 0.2, 0.3, 0.5]))),
        "fig3b" => decaying_field(axis(ParamKey::Mu, list(&[0.1, 0.5, 1.0, 2.0]))),
        "fig3c" => decaying_field(axis(ParamKey::Temperature, list(&[0.1, 0.4, 0.7, 1.0]))),
        "fig3d" => decaying_field(axis(ParamKey::Omega, list(&[1.0, 2.0, 3.0, 4.0]))),
        "fig3e" => decaying_field(axis(ParamKey::Gamma, list(&[0.5, 1.0, 1.5, 2.0]))),
        "fig3f" => decaying_field(axis(ParamKey::Delta, list(&[0.25, 0.5, 0.75, 1.0]))),

        "fig4" => pl_noise(axis(ParamKey::Omega, list(&[1.0, 2.0, 3.0, 4.0]))),
        "fig5" => pl_noise(axis(ParamKey::G, list(&[1e-5, 1e-4, 1e-3, 1e-2]))),
        "fig6" => pl_noise(axis(ParamKey::Gamma, list(&[0.5, 1.0, 2.0, 3.0]))),
        "fig7" => pl_noise(axis(ParamKey::Temperature, list(&[0.1, 0.15, 0.2, 0.3]))),
        "fig8" => pl_noise(axis(ParamKey::Alpha, list(&[1.5, 2.1, 3.0, 4.0]))),

        "fig9" => Scenario::Measures(SweepConfig {
            channel: ChannelKind::QwmAfterPl,
            fixed: ParamSet::default()
                .with(ParamKey::Omega, 2.0)
                .with(ParamKey::Gamma, 1.5),
            axes: vec![
                axis(ParamKey::Tau, log(0.1, 1e5)),
                axis(ParamKey::R, lin(0.0, 1.0)),
            ],
            outputs: vec![MeasureKind::St, MeasureKind::Bn, MeasureKind::Cn, MeasureKind::Pr],
            reference: ReferenceState::ThermalT0,
        }),

        _ => return None,
    };
    Some(scenario)
}

/// All bundled presets in figure order.
pub fn list_presets() -> Vec<PresetInfo> {
    vec![
        PresetInfo {
            name: "fig1",
            figure: "1",
            summary: "energy branches E0..E3 vs gamma at omega=1",
        },
        PresetInfo {
            name: "fig2a",
            figure: "2a",
            summary: "witness vs time, constant field, T in {0.1, 0.4, 0.7, 1.0}",
        },
        PresetInfo {
            name: "fig2b",
            figure: "2b",
            summary: "witness vs time, constant field, omega in {0.5, 1, 2, 3}",
        },
        PresetInfo {
            name: "fig2c",
            figure: "2c",
            summary: "witness vs time, constant field, lambda in {0.1, 0.5, 1, 2}",
        },
        PresetInfo {
            name: "fig2d",
            figure: "2d",
            summary: "witness vs time, constant field, gamma in {0.5, 1, 2, 3}",
        },
        PresetInfo {
            name: "fig2e",
            figure: "2e",
            summary: "witness vs time, constant field, delta in {-1, -0.5, 0.5, 1}",
        },
        PresetInfo {
            name: "fig3a",
            figure: "3a",
            summary: "witness vs time, decaying field, chi in {0.1, 0.2, 0.3, 0.5}",
        },
        PresetInfo {
            name: "fig3b",
            figure: "3b",
            summary: "witness vs time, decaying field, mu in {0.1, 0.5, 1, 2}",
        },
        PresetInfo {
            name: "fig3c",
            figure: "3c",
            summary: "witness vs time, decaying field, T in {0.1, 0.4, 0.7, 1.0}",
        },
        PresetInfo {
            name: "fig3d",
            figure: "3d",
            summary: "witness vs time, decaying field, omega in {1, 2, 3, 4}",
        },
        PresetInfo {
            name: "fig3e",
            figure: "3e",
            summary: "witness vs time, decaying field, gamma in {0.5, 1, 1.5, 2}",
        },
        PresetInfo {
            name: "fig3f",
            figure: "3f",
            summary: "witness vs time, decaying field, delta in {0.25, 0.5, 0.75, 1}",
        },
        PresetInfo {
            name: "fig4",
            figure: "4",
            summary: "measures vs noise time tau, omega in {1, 2, 3, 4}",
        },
        PresetInfo {
            name: "fig5",
            figure: "5",
            summary: "measures vs noise time tau, g in {1e-5, 1e-4, 1e-3, 1e-2}",
        },
        PresetInfo {
            name: "fig6",
            figure: "6",
            summary: "measures vs noise time tau, gamma in {0.5, 1, 2, 3}",
        },
        PresetInfo {
            name: "fig7",
            figure: "7",
            summary: "measures vs noise time tau, T in {0.1, 0.15, 0.2, 0.3}",
        },
        PresetInfo {
            name: "fig8",
            figure: "8",
            summary: "measures vs noise time tau, alpha in {1.5, 2.1, 3, 4}",
        },
        PresetInfo {
            name: "fig9",
            figure: "9",
            summary: "measures vs noise time tau and reversal strength r, omega=2, gamma=1.5",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::run_scenario;

    #[test]
    fn every_listed_preset_resolves_and_validates() {
        let infos = list_presets();
        assert_eq!(infos.len(), 18);
        for info in &infos {
            let scenario = preset(info.name).unwrap_or_else(|| panic!("{} missing", info.name));
            match scenario {
                Scenario::Measures(cfg) => cfg.validate().unwrap(),
                Scenario::Spectrum(sp) => sp.validate().unwrap(),
            }
        }
        assert!(preset("fig10").is_none());
        let mut names: Vec<_> = infos.iter().map(|i| i.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 18);
    }

    #[test]
    fn fixed_parameters_match_their_captions() {
        // (preset, key, value) triples pinned by the captions.
        let expectations: &[(&str, ParamKey, f64)] = &[
            ("fig2a", ParamKey::Delta, 1.0),
            ("fig2a", ParamKey::Gamma, 1.0),
            ("fig2a", ParamKey::Omega, 1.0),
            ("fig2a", ParamKey::Lambda, 0.5),
            ("fig3a", ParamKey::Mu, 0.5),
            ("fig3a", ParamKey::Temperature, 0.1),
            ("fig3a", ParamKey::Delta, 1.0),
            ("fig4", ParamKey::Gamma, 1.0),
            ("fig4", ParamKey::Alpha, 2.1),
            ("fig4", ParamKey::G, 1e-4),
            ("fig4", ParamKey::Temperature, 0.1),
            ("fig5", ParamKey::Omega, 1.0),
            ("fig9", ParamKey::G, 1e-4),
            ("fig9", ParamKey::Gamma, 1.5),
            ("fig9", ParamKey::Omega, 2.0),
            ("fig9", ParamKey::Alpha, 2.1),
            ("fig9", ParamKey::Temperature, 0.1),
        ];
        for &(name, key, value) in expectations {
            let Some(Scenario::Measures(cfg)) = preset(name) else {
                panic!("{name} should be a measure sweep");
            };
            assert_eq!(cfg.fixed.get(key), value, "{name} {}", key.name());
            assert!(
                cfg.axes.iter().all(|a| a.key != key),
                "{name}: {} is fixed by the caption, not swept",
                key.name()
            );
        }
    }

    #[test]
    fn sweep_shapes_match_the_figure_layout() {
        let Some(Scenario::Measures(fig4)) = preset("fig4") else { panic!() };
        assert_eq!(fig4.axes[0].key, ParamKey::Tau);
        assert_eq!(fig4.axes[0].grid.len(), 400);
        assert_eq!(fig4.axes[1].grid.values(), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(
            fig4.sorted_outputs(),
            vec![MeasureKind::Bn, MeasureKind::Cn, MeasureKind::Pr, MeasureKind::St]
        );

        let Some(Scenario::Measures(fig2a)) = preset("fig2a") else { panic!() };
        assert_eq!(fig2a.axes[0].key, ParamKey::Temperature);
        assert_eq!(fig2a.axes[1].key, ParamKey::Time);
        let times = fig2a.axes[1].grid.values();
        assert_eq!(times[399], 4.0 * PI);
        assert_eq!(fig2a.sorted_outputs(), vec![MeasureKind::Ew]);

        let Some(Scenario::Spectrum(fig1)) = preset("fig1") else { panic!() };
        assert_eq!(fig1.axis.key, ParamKey::Gamma);
        assert_eq!(fig1.fixed.get(ParamKey::Omega), 1.0);
    }

    #[test]
    fn spectrum_preset_runs_end_to_end() {
        let table = run_scenario(&preset("fig1").unwrap()).unwrap();
        assert_eq!(table.rows.len(), 400);
        assert_eq!(table.columns[0], "gamma");
        // Branches stay ordered E2 <= E0 <= E1 <= E3 on the positive side.
        let last = table.rows.last().unwrap();
        assert!(last[3] <= last[1] && last[1] <= last[2] && last[2] <= last[4]);
    }
}
