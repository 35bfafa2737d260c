//! Correlation and purity estimators for X-shaped two-qubit states.
//!
//! All five estimators have closed forms in the X-state entries; independent
//! oracle implementations (full trace contractions, conditional entropies,
//! the singular-value Bell bound, the spin-flip concurrence) live in
//! [`crate::selfcheck`] and back every formula here.
//!
//! Conventions for states whose |00><11| coherence carries a phase (output
//! of the constant-field channel): magnitudes |rho14|, |rho23| enter the
//! concurrence and the Bell bound; the transverse correlation coefficients
//! use real parts, C11 = 2 Re(rho23 + rho14) and C22 = 2 Re(rho23 - rho14).

use crate::error::CoreError;
use crate::model::ModelParams;
use crate::smallmat::{DensityMatrix, EXP_ARG_LIMIT};

/// Bloch-basis data of an X state: local z components A3 (first qubit) and
/// B3 (second qubit) plus the diagonal correlation coefficients C11, C22,
/// C33. Every field lies in [-1, 1] for a valid state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateCoefficients {
    pub a3: f64,
    pub b3: f64,
    pub c11: f64,
    pub c22: f64,
    pub c33: f64,
}

/// One row of sweep output: steerability, Bell nonlocality, concurrence,
/// purity, entanglement witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureRecord {
    pub st: f64,
    pub bn: f64,
    pub cn: f64,
    pub pr: f64,
    pub ew: f64,
}

/// Bloch coefficients of an X-shaped state.
pub fn bloch_x(rho: &DensityMatrix) -> Result<XStateCoefficients, CoreError> {
    rho.require_x_shaped()?;
    let (r11, r22, r33, r44) = (rho.diag(0), rho.diag(1), rho.diag(2), rho.diag(3));
    let re14 = rho.entry(0, 3).re;
    let re23 = rho.entry(1, 2).re;
    Ok(XStateCoefficients {
        a3: r11 + r22 - r33 - r44,
        b3: r11 - r22 + r33 - r44,
        c11: 2.0 * (re23 + re14),
        c22: 2.0 * (re23 - re14),
        c33: r11 - r22 - r33 + r44,
    })
}

/// Entanglement witness Tr[rho_ref rho_t] - 1/2.
///
/// With the thermal state as its own reference this is positive exactly when
/// the witness detects entanglement surviving the channel.
pub fn entanglement_witness(rho_t: &DensityMatrix, rho_ref: &DensityMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            acc += (rho_ref.entry(i, j) * rho_t.entry(j, i)).re;
        }
    }
    acc - 0.5
}

/// Closed-form witness for a thermal reference dephased by a phase factor on
/// the |00><11| coherence (phase_arg = 4 delta lambda t for the constant
/// field, 4 delta mu t e^{-chi t} for the decaying one):
///
/// ```text
/// EW = (U1 - 4 U2 + U3 + 2 U4) / (K^2 Z^2)
/// U1 = -gamma^2 + K^2 cosh(2 gamma/T) - 2 omega^2
/// U2 = K^2 cosh(gamma/T) cosh(K/T)
/// U3 = omega^2 cosh(2K/T)
/// U4 = gamma^2 cos(phase_arg) sinh^2(K/T)
/// ```
///
/// The common exponential prefactor of numerator and denominator cancels to
/// 1/(K^2 Z^2) exactly, which is how it is evaluated here (the uncancelled
/// form overflows f64 long before any term matters). Errors when 2K/T or
/// 2|gamma|/T exceeds 700. At omega = gamma = 0 the state is I/4 and
/// EW = -1/4 for any phase.
pub fn ew_closed_form(p: &ModelParams, phase_arg: f64) -> Result<f64, CoreError> {
    let (omega, gamma, t) = (p.omega(), p.gamma(), p.temperature());
    if omega == 0.0 && gamma == 0.0 {
        return Ok(-0.25);
    }
    let k = p.kappa();
    for arg in [2.0 * k / t, 2.0 * gamma.abs() / t] {
        if arg > EXP_ARG_LIMIT {
            return Err(CoreError::ExpOverflow { context: "ew_closed_form", exponent: arg });
        }
    }
    let z = 2.0 * ((k / t).cosh() + (gamma / t).cosh());
    let u1 = -gamma * gamma + k * k * (2.0 * gamma / t).cosh() - 2.0 * omega * omega;
    let u2 = k * k * (gamma / t).cosh() * (k / t).cosh();
    let u3 = omega * omega * (2.0 * k / t).cosh();
    let u4 = gamma * gamma * phase_arg.cos() * (k / t).sinh().powi(2);
    Ok((u1 - 4.0 * u2 + u3 + 2.0 * u4) / (k * k * z * z))
}

/// w log2(w) with the 0 log 0 = 0 convention. Weights inside [-1e-12, 0]
/// clamp to zero (roundoff from valid states); anything more negative is a
/// genuine precondition failure and errors.
fn xlog2(w: f64) -> Result<f64, CoreError> {
    if w <= 0.0 {
        if w < -1e-12 {
            return Err(CoreError::NegativeWeight { value: w });
        }
        return Ok(0.0);
    }
    Ok(w * w.log2())
}

/// Steering inequality value I in [0, 6] from X-state coefficients:
///
/// ```text
/// I = sum_{i=1,2} [(1-Cii) log2(1-Cii) + (1+Cii) log2(1+Cii)]
///     - X1 + (X2 + X3 + X4 + X5)/2
/// X1 = (1+A3) log2(1+A3) + (1-A3) log2(1-A3)
/// X2..X5 = w log2(w) over w = 1 +- C33 +- A3 +- B3 (sign pattern ++, --+,
///          +--, -+-) for (C33, A3, B3)
/// ```
///
/// Equivalently I = 6 - 2 sum_i H(sigma_i^B | sigma_i^A) over the three
/// aligned Pauli measurements; the conditional-entropy route is the oracle
/// in [`crate::selfcheck`]. Steering is detected when I exceeds 2.
pub fn steering_value(x: &XStateCoefficients) -> Result<f64, CoreError> {
    let mut total = 0.0;
    for c in [x.c11, x.c22] {
        total += xlog2(1.0 - c)? + xlog2(1.0 + c)?;
    }
    let x1 = xlog2(1.0 + x.a3)? + xlog2(1.0 - x.a3)?;
    let x2 = xlog2(1.0 + x.c33 + x.a3 + x.b3)?;
    let x3 = xlog2(1.0 - x.c33 - x.a3 + x.b3)?;
    let x4 = xlog2(1.0 + x.c33 - x.a3 - x.b3)?;
    let x5 = xlog2(1.0 - x.c33 + x.a3 - x.b3)?;
    Ok(total - x1 + 0.5 * (x2 + x3 + x4 + x5))
}

/// Normalized steerability ST = max(0, (I - 2)/4) in [0, 1].
pub fn steerability(rho: &DensityMatrix) -> Result<f64, CoreError> {
    let i = steering_value(&bloch_x(rho)?)?;
    Ok(((i - 2.0) / 4.0).max(0.0))
}

/// Maximal CHSH value B = 2 max(2 sqrt2 b1, b2) with
/// b1 = sqrt(|rho14|^2 + |rho23|^2) and
/// b2 = sqrt(4 (|rho14| + |rho23|)^2 + C33^2).
///
/// This equals the singular-value bound 2 sqrt(u1 + u2) over the two largest
/// eigenvalues of T^t T (the oracle route); values above 2 violate the CHSH
/// inequality, topping out at 2 sqrt2.
pub fn chsh_value(rho: &DensityMatrix) -> Result<f64, CoreError> {
    rho.require_x_shaped()?;
    let m14 = rho.entry(0, 3).norm();
    let m23 = rho.entry(1, 2).norm();
    let c33 = rho.diag(0) - rho.diag(1) - rho.diag(2) + rho.diag(3);
    let b1 = m14.hypot(m23);
    let b2 = (2.0 * (m14 + m23)).hypot(c33);
    Ok(2.0 * (2.0 * (2.0_f64).sqrt() * b1).max(b2))
}

/// Normalized Bell nonlocality BN = max(0, (B - 2)/(2 sqrt2 - 2)) in [0, 1].
pub fn bell_nonlocality(rho: &DensityMatrix) -> Result<f64, CoreError> {
    let b = chsh_value(rho)?;
    Ok(((b - 2.0) / (2.0 * (2.0_f64).sqrt() - 2.0)).max(0.0))
}

/// Concurrence of an X state,
/// CN = 2 max(0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33)).
///
/// Diagonal entries may dip below zero by at most the density-matrix PSD
/// tolerance (clamped before the square root); further negative populations
/// error.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64, CoreError> {
    rho.require_x_shaped()?;
    let mut diag = [0.0_f64; 4];
    for (i, d) in diag.iter_mut().enumerate() {
        let v = rho.diag(i);
        if v < -1e-10 {
            return Err(CoreError::DensityNotPositive { min_eigenvalue: v });
        }
        *d = v.max(0.0);
    }
    let inner = rho.entry(1, 2).norm() - (diag[0] * diag[3]).sqrt();
    let outer = rho.entry(0, 3).norm() - (diag[1] * diag[2]).sqrt();
    Ok(2.0 * inner.max(outer).max(0.0))
}

/// Purity Tr[rho^2], in [1/4, 1] for two qubits.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            acc += rho.entry(i, j).norm_sqr();
        }
    }
    acc
}

/// All five estimators of `rho_t`, with `rho_ref` as the witness reference.
pub fn measure_all(
    rho_t: &DensityMatrix,
    rho_ref: &DensityMatrix,
) -> Result<MeasureRecord, CoreError> {
    Ok(MeasureRecord {
        st: steerability(rho_t)?,
        bn: bell_nonlocality(rho_t)?,
        cn: concurrence(rho_t)?,
        pr: purity(rho_t),
        ew: entanglement_witness(rho_t, rho_ref),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{evolve_constant_field, FieldParams};
    use crate::model::{thermal_state, ModelParams};
    use crate::smallmat::{ComplexMatrix, C64};
    use proptest::prelude::*;

    fn bell_phi_plus() -> DensityMatrix {
        let half = C64::new(0.5, 0.0);
        let mut m = ComplexMatrix::zeros(4).unwrap();
        m[(0, 0)] = half;
        m[(3, 3)] = half;
        m[(0, 3)] = half;
        m[(3, 0)] = half;
        DensityMatrix::new(m).unwrap()
    }

    fn maximally_mixed() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_diag(&[C64::new(0.25, 0.0); 4]).unwrap()).unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        let d = (1.0 - p) / 4.0;
        let mut m = ComplexMatrix::from_diag(&[
            C64::new(p / 2.0 + d, 0.0),
            C64::new(d, 0.0),
            C64::new(d, 0.0),
            C64::new(p / 2.0 + d, 0.0),
        ])
        .unwrap();
        m[(0, 3)] = C64::new(p / 2.0, 0.0);
        m[(3, 0)] = C64::new(p / 2.0, 0.0);
        DensityMatrix::new(m).unwrap()
    }

    fn thermal(omega: f64, gamma: f64, t: f64) -> DensityMatrix {
        thermal_state(&ModelParams::new(omega, gamma, t).unwrap()).unwrap()
    }

    #[test]
    fn bloch_coefficients_of_the_bell_state() {
        let x = bloch_x(&bell_phi_plus()).unwrap();
        assert_eq!((x.a3, x.b3), (0.0, 0.0));
        assert_eq!((x.c11, x.c22, x.c33), (1.0, -1.0, 1.0));
    }

    #[test]
    fn measure_all_on_the_bell_state_saturates_everything() {
        let bell = bell_phi_plus();
        let r = measure_all(&bell, &bell).unwrap();
        assert!((r.st - 1.0).abs() < 1e-12);
        assert!((r.bn - 1.0).abs() < 1e-12);
        assert!((r.cn - 1.0).abs() < 1e-12);
        assert!((r.pr - 1.0).abs() < 1e-12);
        assert!((r.ew - 0.5).abs() < 1e-12);
    }

    #[test]
    fn measure_all_on_the_maximally_mixed_state() {
        let mixed = maximally_mixed();
        let r = measure_all(&mixed, &bell_phi_plus()).unwrap();
        assert_eq!((r.st, r.bn, r.cn), (0.0, 0.0, 0.0));
        assert!((r.pr - 0.25).abs() < 1e-15);
        assert!((r.ew + 0.25).abs() < 1e-15);
        // The witness value is reference independent for I/4.
        let r2 = measure_all(&mixed, &thermal(1.0, 1.0, 0.1)).unwrap();
        assert!((r2.ew + 0.25).abs() < 1e-15);
    }

    #[test]
    fn steering_value_spans_its_range() {
        let top = steering_value(&bloch_x(&bell_phi_plus()).unwrap()).unwrap();
        assert!((top - 6.0).abs() < 1e-12);
        let bottom = steering_value(&bloch_x(&maximally_mixed()).unwrap()).unwrap();
        assert_eq!(bottom, 0.0);
    }

    #[test]
    fn steering_value_is_even_in_the_correlation_signs() {
        let x = bloch_x(&thermal(1.0, 1.0, 0.1)).unwrap();
        let flipped = XStateCoefficients { c11: -x.c11, c22: -x.c22, ..x };
        assert!(
            (steering_value(&x).unwrap() - steering_value(&flipped).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn steering_rejects_weights_negative_beyond_roundoff() {
        let bad = XStateCoefficients { a3: 0.0, b3: 0.0, c11: 1.0 + 1e-9, c22: 0.0, c33: 0.0 };
        assert!(matches!(
            steering_value(&bad),
            Err(CoreError::NegativeWeight { .. })
        ));
        let rounding = XStateCoefficients { a3: 0.0, b3: 0.0, c11: 1.0 + 1e-13, c22: 0.0, c33: 0.0 };
        assert!(steering_value(&rounding).is_ok());
    }

    #[test]
    fn werner_state_crosses_the_bell_threshold_at_inverse_sqrt2() {
        let threshold = 1.0 / (2.0_f64).sqrt();
        assert_eq!(bell_nonlocality(&werner(threshold - 1e-6)).unwrap(), 0.0);
        assert!(bell_nonlocality(&werner(threshold + 1e-6)).unwrap() > 0.0);
        // At p = 0.8 the CHSH value is 2 sqrt2 p.
        let b = chsh_value(&werner(0.8)).unwrap();
        assert!((b - 2.0 * (2.0_f64).sqrt() * 0.8).abs() < 1e-12);
    }

    #[test]
    fn golden_measures_of_the_reference_thermal_state() {
        // Independently derived and frozen: measures of thermal(1, 1, 0.1).
        let rho = thermal(1.0, 1.0, 0.1);
        let r = measure_all(&rho, &rho).unwrap();
        assert!((r.st - 0.331297686042996).abs() < 1e-12);
        assert!((r.bn - 0.487784042556055).abs() < 1e-12);
        assert!((r.cn - 0.680406991768250).abs() < 1e-12);
        assert!((r.pr - 0.969208493572137).abs() < 1e-12);
        assert!((r.ew - 0.469208493572137).abs() < 1e-12);
        assert!(r.st > 0.0 && r.st < 1.0);
    }

    #[test]
    fn near_ground_thermal_concurrence_is_inverse_sqrt2() {
        let cn = concurrence(&thermal(1.0, 1.0, 0.01)).unwrap();
        assert!((cn - 1.0 / (2.0_f64).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn witness_closed_form_handles_the_free_limit() {
        let p = ModelParams::new(0.0, 0.0, 0.5).unwrap();
        assert_eq!(ew_closed_form(&p, 1.3).unwrap(), -0.25);
    }

    #[test]
    fn witness_closed_form_overflow_names_the_exponent() {
        let p = ModelParams::new(40.0, 0.0, 0.1).unwrap();
        match ew_closed_form(&p, 0.0).unwrap_err() {
            CoreError::ExpOverflow { exponent, .. } => assert!((exponent - 800.0).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witness_closed_form_matches_the_direct_trace(
            omega in 0.2..5.0f64, gamma in 0.2..5.0f64, t in 0.3..3.0f64,
            lambda in 0.0..2.0f64, delta in -1.0..1.0f64, time in 0.0..15.0f64,
        ) {
            let p = ModelParams::new(omega, gamma, t).unwrap();
            let rho0 = thermal_state(&p).unwrap();
            let f = FieldParams::new(0.0, lambda, delta, time).unwrap();
            let rho_t = evolve_constant_field(&rho0, &f).unwrap();
            let direct = entanglement_witness(&rho_t, &rho0);
            let closed = ew_closed_form(&p, 4.0 * delta * lambda * time).unwrap();
            prop_assert!((direct - closed).abs() < 1e-12);
        }

        #[test]
        fn witness_at_zero_phase_is_purity_minus_half(
            omega in 0.2..5.0f64, gamma in 0.2..5.0f64, t in 0.05..3.0f64,
        ) {
            let p = ModelParams::new(omega, gamma, t).unwrap();
            let rho0 = thermal_state(&p).unwrap();
            let closed = ew_closed_form(&p, 0.0).unwrap();
            prop_assert!((closed - (purity(&rho0) - 0.5)).abs() < 1e-12);
        }

        #[test]
        fn measures_stay_in_range_on_thermal_states(
            omega in 0.2..5.0f64, gamma in 0.2..5.0f64, t in 0.05..3.0f64,
        ) {
            let rho = thermal(omega, gamma, t);
            let x = bloch_x(&rho).unwrap();
            for v in [x.a3, x.b3, x.c11, x.c22, x.c33] {
                prop_assert!((-1.0 - 1e-10..=1.0 + 1e-10).contains(&v));
            }
            let r = measure_all(&rho, &rho).unwrap();
            prop_assert!((0.0..=1.0 + 1e-10).contains(&r.st));
            prop_assert!((0.0..=1.0 + 1e-10).contains(&r.bn));
            prop_assert!((0.0..=1.0 + 1e-10).contains(&r.cn));
            prop_assert!((0.25 - 1e-12..=1.0 + 1e-12).contains(&r.pr));
            prop_assert!((-0.5..=0.5).contains(&r.ew));
            // Nonlocality implies entanglement.
            if r.cn <= 1e-12 {
                prop_assert!(r.bn <= 1e-12);
            }
        }
    }
}
