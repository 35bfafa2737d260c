//! Classical dephasing channels and the weak-measurement reversal map.
//!
//! All maps act on X-shaped two-qubit states (support on the diagonal and
//! anti-diagonal only, which the thermal state satisfies) and touch only the
//! |00><11| coherence and, for the reversal map, the populations:
//!
//! * constant stochastic field: the |00><11| coherence picks up the phase
//!   exp(-4 i delta lambda t); everything else is untouched (pure dephasing
//!   by a locally applied field of fixed random orientation delta).
//! * decaying stochastic field: same map with the coupling frozen at its
//!   current value lambda(t) = mu exp(-chi t), so the phase argument is
//!   4 delta mu t exp(-chi t) and the coherence revives at late times.
//! * power-law classical noise: the ensemble average over noise histories
//!   damps the coherence by exp(-8 beta(tau)) with beta the twice-integrated
//!   autocorrelation of the noise (see [`beta_pl`]).
//! * weak-measurement reversal: both qubits pass through
//!   Q = diag(1, sqrt(1 - r)); the renormalized output concentrates weight on
//!   |00> and partially undoes dephasing-induced degradation.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::smallmat::{ComplexMatrix, DensityMatrix, C64, ANNIHILATION_TOL};

fn require_finite(name: &'static str, value: f64) -> Result<(), CoreError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CoreError::InvalidParam { name, value, requirement: "must be finite" })
    }
}

/// Constant stochastic field: energy offset E, coupling lambda >= 0, field
/// orientation delta in [-1, 1], evolution time t >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    energy: f64,
    lambda: f64,
    delta: f64,
    time: f64,
}

impl FieldParams {
    pub fn new(energy: f64, lambda: f64, delta: f64, time: f64) -> Result<Self, CoreError> {
        require_finite("E", energy)?;
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(CoreError::InvalidParam {
                name: "lambda",
                value: lambda,
                requirement: "must be finite and >= 0",
            });
        }
        if !(delta.is_finite() && (-1.0..=1.0).contains(&delta)) {
            return Err(CoreError::InvalidParam {
                name: "delta",
                value: delta,
                requirement: "must lie in [-1, 1]",
            });
        }
        if !(time.is_finite() && time >= 0.0) {
            return Err(CoreError::InvalidParam {
                name: "t",
                value: time,
                requirement: "must be finite and >= 0",
            });
        }
        Ok(Self { energy, lambda, delta, time })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn time(&self) -> f64 {
        self.time
    }
}

/// Decaying field envelope: initial coupling mu >= 0, decay rate chi >= 0
/// (chi = 0 reduces to the constant field with lambda = mu).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    mu: f64,
    chi: f64,
}

impl DecayParams {
    pub fn new(mu: f64, chi: f64) -> Result<Self, CoreError> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(CoreError::InvalidParam {
                name: "mu",
                value: mu,
                requirement: "must be finite and >= 0",
            });
        }
        if !(chi.is_finite() && chi >= 0.0) {
            return Err(CoreError::InvalidParam {
                name: "chi",
                value: chi,
                requirement: "must be finite and >= 0",
            });
        }
        Ok(Self { mu, chi })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }
}

/// Power-law noise: dimensionless rate g > 0, exponent alpha > 1, scaled
/// time tau >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    g: f64,
    alpha: f64,
    tau: f64,
}

impl NoiseParams {
    pub fn new(g: f64, alpha: f64, tau: f64) -> Result<Self, CoreError> {
        if !(g.is_finite() && g > 0.0) {
            return Err(CoreError::InvalidParam {
                name: "g",
                value: g,
                requirement: "must be finite and > 0",
            });
        }
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(CoreError::InvalidParam {
                name: "alpha",
                value: alpha,
                requirement: "must be finite and > 1",
            });
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(CoreError::InvalidParam {
                name: "tau",
                value: tau,
                requirement: "must be finite and >= 0",
            });
        }
        Ok(Self { g, alpha, tau })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Weak-measurement reversal strength r in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReversalParams {
    r: f64,
}

impl ReversalParams {
    pub fn new(r: f64) -> Result<Self, CoreError> {
        if !(r.is_finite() && (0.0..=1.0).contains(&r)) {
            return Err(CoreError::InvalidParam {
                name: "r",
                value: r,
                requirement: "must lie in [0, 1]",
            });
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Two-qubit propagator of the constant stochastic field, diagonal in the
/// computational basis:
/// diag(e^{-it(2E + 2 delta lambda)}, e^{-2itE}, e^{-2itE}, e^{-it(2E - 2 delta lambda)}).
pub fn stochastic_unitary(f: &FieldParams) -> ComplexMatrix {
    let phase = |arg: f64| Complex64::from_polar(1.0, -arg);
    let t = f.time;
    let e2 = 2.0 * f.energy;
    let dl2 = 2.0 * f.delta * f.lambda;
    ComplexMatrix::from_diag(&[
        phase(t * (e2 + dl2)),
        phase(t * e2),
        phase(t * e2),
        phase(t * (e2 - dl2)),
    ])
    .expect("4 is supported")
}

/// Multiply the |00><11| coherence of an X state by `factor` and rebuild.
fn scale_coherence(rho0: &DensityMatrix, factor: C64) -> Result<DensityMatrix, CoreError> {
    rho0.require_x_shaped()?;
    let mut m = rho0.matrix().clone();
    m[(0, 3)] *= factor;
    m[(3, 0)] = m[(0, 3)].conj();
    DensityMatrix::new(m)
}

/// Dephasing under the constant stochastic field: the |00><11| coherence is
/// multiplied by exp(-4 i delta lambda t); all other entries are carried over
/// bit for bit (so the result is independent of the energy offset E, which
/// only contributes a global phase).
pub fn evolve_constant_field(
    rho0: &DensityMatrix,
    f: &FieldParams,
) -> Result<DensityMatrix, CoreError> {
    scale_coherence(rho0, Complex64::from_polar(1.0, -4.0 * f.delta * f.lambda * f.time))
}

/// Phase convention for the decaying field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayPhase {
    /// Coupling frozen at its instantaneous value: phase 4 delta mu t e^{-chi t}.
    /// This is the normative map; the phase grows, peaks near t = 1/chi and
    /// dies out again, so the coherence revives at late times.
    FrozenCoupling,
    /// Time-integrated coupling: phase 4 delta mu (1 - e^{-chi t})/chi, which
    /// saturates instead of reviving. Exposed for comparison only.
    IntegratedCoupling,
}

/// Dephasing under an exponentially decaying stochastic field,
/// lambda(t) = mu exp(-chi t), with the frozen-coupling phase convention.
///
/// `delta` and `time` carry the same meaning and bounds as in
/// [`FieldParams`]; the energy offset is omitted because it cancels in the
/// conjugation.
pub fn evolve_decaying_field(
    rho0: &DensityMatrix,
    delta: f64,
    time: f64,
    d: &DecayParams,
) -> Result<DensityMatrix, CoreError> {
    evolve_decaying_field_with(rho0, delta, time, d, DecayPhase::FrozenCoupling)
}

/// [`evolve_decaying_field`] with an explicit phase convention.
pub fn evolve_decaying_field_with(
    rho0: &DensityMatrix,
    delta: f64,
    time: f64,
    d: &DecayParams,
    phase: DecayPhase,
) -> Result<DensityMatrix, CoreError> {
    // Validate delta/time through the shared constructor.
    let f = FieldParams::new(0.0, 0.0, delta, time)?;
    let arg = match phase {
        DecayPhase::FrozenCoupling => 4.0 * f.delta * d.mu * (-d.chi * f.time).exp() * f.time,
        // (1 - e^{-chi t})/chi -> t as chi -> 0.
        DecayPhase::IntegratedCoupling if d.chi == 0.0 => 4.0 * f.delta * d.mu * f.time,
        DecayPhase::IntegratedCoupling => {
            4.0 * f.delta * d.mu * (-(-d.chi * f.time).exp_m1()) / d.chi
        }
    };
    scale_coherence(rho0, Complex64::from_polar(1.0, -arg))
}

/// Twice-integrated autocorrelation beta(tau) of power-law classical noise.
///
/// In dimensionless variables x = g tau the closed form is
///
/// ```text
/// beta = [x (alpha - 2) - 1 + (1 + x)^(2 - alpha)] / ((alpha - 2) g)
/// beta = [x - ln(1 + x)] / g                        at alpha = 2
/// ```
///
/// The direct expression cancels catastrophically for small x (the result is
/// O(x^2) built from O(1) terms), so for x < 1/4 the series
/// beta = (1/g) sum_{k>=2} d_k x^k with d_2 = (alpha-1)/2 and
/// d_{k+1} = d_k (2 - alpha - k)/(k + 1) is used; it is exact in the
/// alpha -> 2 limit as well. beta(0) = 0 and beta is non-decreasing in tau.
pub fn beta_pl(n: &NoiseParams) -> f64 {
    let x = n.g * n.tau;
    if x < 0.25 {
        let mut term = 0.5 * (n.alpha - 1.0) * x * x;
        let mut sum = term;
        let mut k = 2.0;
        while term.abs() > 1e-18 * sum.abs().max(f64::MIN_POSITIVE) && k < 200.0 {
            term *= x * (2.0 - n.alpha - k) / (k + 1.0);
            sum += term;
            k += 1.0;
        }
        sum / n.g
    } else if n.alpha == 2.0 {
        (x - x.ln_1p()) / n.g
    } else {
        // expm1/ln_1p keep the large-x branch accurate near alpha = 2.
        (x * (n.alpha - 2.0) + ((2.0 - n.alpha) * x.ln_1p()).exp_m1()) / ((n.alpha - 2.0) * n.g)
    }
}

/// Ensemble-averaged power-law dephasing: the |00><11| coherence is damped by
/// exp(-8 beta(tau)); populations and the |01><10| coherence are untouched.
pub fn dephase_pl(rho0: &DensityMatrix, n: &NoiseParams) -> Result<DensityMatrix, CoreError> {
    let damping = (-8.0 * beta_pl(n)).exp();
    scale_coherence(rho0, C64::new(damping, 0.0))
}

/// Weak-measurement reversal on both qubits, Q = diag(1, sqrt(1 - r)),
/// renormalized:
///
/// ```text
/// kappa   = rho11 + 2 rho22 |1 - r| + rho44 (1 - r)^2
/// rho11Q  = rho11 / kappa            rho14Q = (1 - r) rho14 / kappa
/// rho22Q  = rho33Q = rho22 |1 - r| / kappa
/// rho23Q  = rho23 |1 - r| / kappa    rho44Q = rho44 (1 - r)^2 / kappa
/// ```
///
/// r = 0 returns the input unchanged; r = 1 collapses onto |00> (an error if
/// the state has no |00> population to renormalize against).
pub fn qwm_reverse(rho: &DensityMatrix, rp: &ReversalParams) -> Result<DensityMatrix, CoreError> {
    rho.require_x_shaped()?;
    if rp.r == 0.0 {
        return Ok(rho.clone());
    }
    let q = 1.0 - rp.r;
    let qa = q.abs();
    let (r11, r22, r33, r44) = (rho.diag(0), rho.diag(1), rho.diag(2), rho.diag(3));
    let kappa = r11 + (r22 + r33) * qa + r44 * q * q;
    if kappa <= ANNIHILATION_TOL {
        return Err(CoreError::StateAnnihilated { trace: kappa });
    }
    let mut m = ComplexMatrix::zeros(4)?;
    m[(0, 0)] = C64::new(r11 / kappa, 0.0);
    m[(1, 1)] = C64::new(r22 * qa / kappa, 0.0);
    m[(2, 2)] = C64::new(r33 * qa / kappa, 0.0);
    m[(3, 3)] = C64::new(r44 * q * q / kappa, 0.0);
    m[(0, 3)] = rho.entry(0, 3) * (q / kappa);
    m[(3, 0)] = m[(0, 3)].conj();
    m[(1, 2)] = rho.entry(1, 2) * (qa / kappa);
    m[(2, 1)] = m[(1, 2)].conj();
    DensityMatrix::new(m)
}

/// The single-qubit reversal operator Q = diag(1, sqrt(1 - r)).
pub fn reversal_operator(rp: &ReversalParams) -> ComplexMatrix {
    ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new((1.0 - rp.r).sqrt(), 0.0)])
        .expect("2 is supported")
}
