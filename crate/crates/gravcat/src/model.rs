//! Two-qubit gravitational cat model: Hamiltonian, spectrum, Gibbs state.
//!
//! Each particle sits in a double-well potential deep enough that its state
//! space reduces to the two localized wells, giving an effective qubit with
//! energy gap `omega`. Gravity couples the position-like operators of the two
//! particles with strength `gamma`, so in the |00>,|01>,|10>,|11> basis
//!
//! ```text
//! H = (omega/2) (sz x I + I x sz) - gamma (sx x sx)
//!   = diag(omega, 0, 0, -omega) - gamma on the anti-diagonal.
//! ```
//!
//! Units: hbar = k_B = 1; temperatures and times are in units of `omega`.

use crate::error::CoreError;
use crate::smallmat::{ComplexMatrix, DensityMatrix, C64, EXP_ARG_LIMIT};

/// Model parameters: energy gap, gravitational coupling, temperature.
///
/// `omega` and `gamma` may take any finite value (spectrum queries sweep both
/// through zero and negative ranges); the temperature must be finite and
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega: f64,
    gamma: f64,
    temperature: f64,
}

impl ModelParams {
    pub fn new(omega: f64, gamma: f64, temperature: f64) -> Result<Self, CoreError> {
        for (name, value) in [("omega", omega), ("gamma", gamma)] {
            if !value.is_finite() {
                return Err(CoreError::InvalidParam { name, value, requirement: "must be finite" });
            }
        }
        if !temperature.is_finite() || temperature <= 0.0 {
            return Err(CoreError::InvalidParam {
                name: "T",
                value: temperature,
                requirement: "must be finite and strictly positive",
            });
        }
        Ok(Self { omega, gamma, temperature })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// K = sqrt(gamma^2 + omega^2), the half-gap of the even sector.
    pub fn kappa(&self) -> f64 {
        self.omega.hypot(self.gamma)
    }
}

/// Gravitational coupling gamma = (G m^2 / 2)(1/x - 1/x') for two particles
/// of mass `m` whose wells put them at separations `x` (near) and `x_prime`
/// (far).
pub fn gamma_from_masses(m: f64, x: f64, x_prime: f64, g_newton: f64) -> Result<f64, CoreError> {
    for (name, value) in [("m", m), ("x", x), ("x_prime", x_prime), ("G", g_newton)] {
        if !value.is_finite() || value <= 0.0 {
            return Err(CoreError::InvalidParam {
                name,
                value,
                requirement: "must be finite and strictly positive",
            });
        }
    }
    Ok(0.5 * g_newton * m * m * (1.0 / x - 1.0 / x_prime))
}

/// The 4x4 cat Hamiltonian for the given parameters.
pub fn hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(4).expect("4 is supported");
    h[(0, 0)] = C64::new(p.omega, 0.0);
    h[(3, 3)] = C64::new(-p.omega, 0.0);
    for i in 0..4 {
        h[(i, 3 - i)] += C64::new(-p.gamma, 0.0);
    }
    h
}

/// Eigensystem of the cat Hamiltonian in closed form.
///
/// Pair order follows the analytic construction, not energy: the odd-parity
/// Bell pair (|01> +- |10>)/sqrt(2) with energies -gamma, +gamma first, then
/// the even-parity pair mixing |00> and |11> with energies -K, +K.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub energies: [f64; 4],
    pub states: [[C64; 4]; 4],
}

impl Spectrum {
    /// Energies sorted ascending (construction order is not sorted).
    pub fn sorted_energies(&self) -> [f64; 4] {
        let mut e = self.energies;
        e.sort_by(|a, b| a.partial_cmp(b).expect("energies are finite"));
        e
    }
}

/// Closed-form spectrum. Errors at omega = gamma = 0, where the even-sector
/// eigenvectors are undefined (any basis of the degenerate plane works, so no
/// single closed form exists).
pub fn spectrum(p: &ModelParams) -> Result<Spectrum, CoreError> {
    let (omega, gamma) = (p.omega, p.gamma);
    if omega == 0.0 && gamma == 0.0 {
        return Err(CoreError::DegenerateBasis);
    }
    let k = p.kappa();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| C64::new(x, 0.0);
    let zero = C64::new(0.0, 0.0);

    let psi0 = [zero, re(inv_sqrt2), re(inv_sqrt2), zero];
    let psi1 = [zero, re(-inv_sqrt2), re(inv_sqrt2), zero];

    // The even-sector normalizers k_{-+} = 1/sqrt((omega -+ K)^2 + gamma^2)
    // degenerate to 0/0 on one side when gamma = 0; take the gamma -> 0 limit
    // of the closed-form vectors there.
    let (psi2, psi3) = if gamma == 0.0 {
        if omega > 0.0 {
            ([zero, zero, zero, re(1.0)], [re(-1.0), zero, zero, zero])
        } else {
            ([re(1.0), zero, zero, zero], [zero, zero, zero, re(1.0)])
        }
    } else {
        let km = 1.0 / ((omega - k).powi(2) + gamma * gamma).sqrt();
        let kp = 1.0 / ((omega + k).powi(2) + gamma * gamma).sqrt();
        (
            [re(-km * (omega - k)), zero, zero, re(km * gamma)],
            [re(-kp * (omega + k)), zero, zero, re(kp * gamma)],
        )
    };

    Ok(Spectrum {
        energies: [-gamma, gamma, -k, k],
        states: [psi0, psi1, psi2, psi3],
    })
}

fn check_boltzmann_args(p: &ModelParams, context: &'static str) -> Result<(f64, f64), CoreError> {
    let (k, t) = (p.kappa(), p.temperature);
    let (bk, bg) = (k / t, p.gamma.abs() / t);
    if bk > EXP_ARG_LIMIT {
        return Err(CoreError::ExpOverflow { context, exponent: bk });
    }
    if bg > EXP_ARG_LIMIT {
        return Err(CoreError::ExpOverflow { context, exponent: bg });
    }
    Ok((bk, bg))
}

/// Partition function Z = 2 [cosh(K/T) + cosh(gamma/T)].
///
/// Errors when K/T or |gamma|/T exceeds 700 (exp would overflow).
pub fn partition_function(p: &ModelParams) -> Result<f64, CoreError> {
    let (bk, bg) = check_boltzmann_args(p, "partition_function")?;
    Ok(2.0 * (bk.cosh() + bg.cosh()))
}

/// Thermal (Gibbs) state exp(-H/T)/Z in closed form.
///
/// The state is X-shaped: diagonal (rho11, rho22, rho22, rho44) with real
/// coherences rho14 and rho23. At omega = gamma = 0 the Hamiltonian vanishes
/// and the state is I/4.
pub fn thermal_state(p: &ModelParams) -> Result<DensityMatrix, CoreError> {
    if p.omega == 0.0 && p.gamma == 0.0 {
        let quarter = C64::new(0.25, 0.0);
        return DensityMatrix::new(ComplexMatrix::from_diag(&[quarter; 4])?);
    }
    let (bk, bg) = check_boltzmann_args(p, "thermal_state")?;
    let k = p.kappa();
    let z = 2.0 * (bk.cosh() + bg.cosh());
    let sinh_ratio = bk.sinh() / k; // sinh(K/T)/K, finite since K > 0 here
    let r11 = (bk.cosh() - p.omega * sinh_ratio) / z;
    let r44 = (bk.cosh() + p.omega * sinh_ratio) / z;
    let r14 = p.gamma * sinh_ratio / z;
    let r22 = bg.cosh() / z;
    // bg is |gamma|/T (overflow guard); sinh is odd, so restore gamma's sign.
    let r23 = (p.gamma / p.temperature).sinh() / z;

    let mut m = ComplexMatrix::zeros(4)?;
    m[(0, 0)] = C64::new(r11, 0.0);
    m[(1, 1)] = C64::new(r22, 0.0);
    m[(2, 2)] = C64::new(r22, 0.0);
    m[(3, 3)] = C64::new(r44, 0.0);
    m[(0, 3)] = C64::new(r14, 0.0);
    m[(3, 0)] = C64::new(r14, 0.0);
    m[(1, 2)] = C64::new(r23, 0.0);
    m[(2, 1)] = C64::new(r23, 0.0);
    DensityMatrix::new(m)
}
