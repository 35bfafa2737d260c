//! Brute-force cross checks of every closed form in the crate.
//!
//! Each function here recomputes a quantity by a deliberately different
//! route: matrix exponential instead of the analytic thermal entries, trace
//! contractions and conditional entropies instead of the steering formula,
//! singular values of the correlation matrix instead of the two-branch Bell
//! bound, the spin-flip spectrum instead of the X-state concurrence,
//! eigenvalues instead of the entrywise purity sum, and adaptive quadrature
//! instead of the integrated dephasing exponent. [`run`] drives all of them
//! over randomized thermal states and a fixed noise grid, returning one
//! [`CheckOutcome`] per check; the `gravcat selfcheck` subcommand and the
//! acceptance tests both call it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::{beta_pl, dephase_pl, evolve_constant_field, qwm_reverse,
                      reversal_operator, FieldParams, NoiseParams, ReversalParams};
use crate::error::CoreError;
use crate::measures::{bloch_x, chsh_value, concurrence, entanglement_witness, ew_closed_form,
                      purity, steering_value};
use crate::model::{hamiltonian, thermal_state, ModelParams};
use crate::smallmat::{conjugate_map, expm_hermitian, herm_eig, kron, ComplexMatrix,
                      DensityMatrix, C64};

/// Result of one oracle comparison: the worst absolute (or, for the
/// quadrature check, relative) deviation seen and whether it stayed inside
/// the advertised tolerance.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckOutcome {
    fn from_worst(name: &'static str, worst: f64, tolerance: f64) -> Self {
        CheckOutcome { name, worst, tolerance, pass: worst <= tolerance }
    }
}

/// Thermal state by exponentiating the Hamiltonian spectrally and dividing
/// by the trace, bypassing the analytic entry formulas.
pub fn thermal_state_expm(p: &ModelParams) -> Result<DensityMatrix, CoreError> {
    let h = hamiltonian(p);
    let w = expm_hermitian(&h, -1.0 / p.temperature())?;
    let z = w.trace().re;
    if z <= 0.0 {
        return Err(CoreError::StateAnnihilated { trace: z });
    }
    DensityMatrix::new(w.scaled(C64::new(1.0 / z, 0.0)))
}

fn pauli(i: usize) -> ComplexMatrix {
    match i {
        0 => ComplexMatrix::identity(2).expect("2x2 identity"),
        1 => ComplexMatrix::sigma_x(),
        2 => ComplexMatrix::sigma_y(),
        3 => ComplexMatrix::sigma_z(),
        _ => unreachable!("pauli index 0..=3"),
    }
}

/// Tr[rho (sigma_a x sigma_b)], index 0 meaning the identity.
fn correlator(rho: &DensityMatrix, a: usize, b: usize) -> Result<f64, CoreError> {
    let op = kron(&pauli(a), &pauli(b))?;
    Ok(op.matmul(rho.matrix())?.trace().re)
}

fn entropy_term(w: f64) -> Result<f64, CoreError> {
    if w <= 0.0 {
        if w < -1e-12 {
            return Err(CoreError::NegativeWeight { value: w });
        }
        return Ok(0.0);
    }
    Ok(w * w.log2())
}

/// Steering inequality value via conditional entropies,
/// I = 6 - 2 sum_i H(sigma_i^B | sigma_i^A), with the joint outcome
/// distributions p(a, b) = (1 + a A_i + b B_i + a b C_ii)/4 built from full
/// trace contractions rather than the X-state entry shortcut.
pub fn steering_value_entropy(rho: &DensityMatrix) -> Result<f64, CoreError> {
    let mut conditional_sum = 0.0;
    for i in 1..=3 {
        let a_i = correlator(rho, i, 0)?;
        let b_i = correlator(rho, 0, i)?;
        let c_ii = correlator(rho, i, i)?;
        let mut h_joint = 0.0;
        for a in [1.0, -1.0] {
            for b in [1.0, -1.0] {
                h_joint -= entropy_term((1.0 + a * a_i + b * b_i + a * b * c_ii) / 4.0)?;
            }
        }
        let mut h_a = 0.0;
        for a in [1.0, -1.0] {
            h_a -= entropy_term((1.0 + a * a_i) / 2.0)?;
        }
        conditional_sum += h_joint - h_a;
    }
    Ok(6.0 - 2.0 * conditional_sum)
}

/// Eigenvalues of a real symmetric 3x3 matrix by cyclic Jacobi rotations,
/// descending.
fn sym3_eigenvalues(mut m: [[f64; 3]; 3]) -> [f64; 3] {
    let mut scale: f64 = 0.0;
    for row in &m {
        for v in row {
            scale += v * v;
        }
    }
    let target = 1e-30 * scale.max(1e-300);
    for _ in 0..50 {
        let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
        if off <= target {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = m[p][q];
            if apq.abs() <= 1e-300 {
                continue;
            }
            let tau = (m[q][q] - m[p][p]) / (2.0 * apq);
            let t = if tau >= 0.0 {
                1.0 / (tau + (1.0 + tau * tau).sqrt())
            } else {
                -1.0 / (-tau + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            for k in 0..3 {
                let (mkp, mkq) = (m[k][p], m[k][q]);
                m[k][p] = c * mkp - s * mkq;
                m[k][q] = s * mkp + c * mkq;
            }
            for k in 0..3 {
                let (mpk, mqk) = (m[p][k], m[q][k]);
                m[p][k] = c * mpk - s * mqk;
                m[q][k] = s * mpk + c * mqk;
            }
        }
    }
    let mut eigs = [m[0][0], m[1][1], m[2][2]];
    eigs.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    eigs
}

/// Maximal CHSH value from the correlation matrix: B = 2 sqrt(u1 + u2) over
/// the two largest eigenvalues of T^t T, where T_ab = Tr[rho sigma_a x
/// sigma_b]. Works for any two-qubit state, not just X-shaped ones.
pub fn chsh_value_horodecki(rho: &DensityMatrix) -> Result<f64, CoreError> {
    let mut t = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            t[a][b] = correlator(rho, a + 1, b + 1)?;
        }
    }
    let mut tt = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                tt[i][j] += t[k][i] * t[k][j];
            }
        }
    }
    let eigs = sym3_eigenvalues(tt);
    Ok(2.0 * (eigs[0].max(0.0) + eigs[1].max(0.0)).sqrt())
}

/// Hermitian square root of a positive semidefinite matrix, clamping
/// eigenvalues inside the PSD tolerance to zero.
fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix, CoreError> {
    let pairs = herm_eig(m)?;
    let n = m.nrows();
    let mut out = ComplexMatrix::zeros(n)?;
    for pair in &pairs {
        let root = pair.value.max(0.0).sqrt();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += pair.vector[i] * pair.vector[j].conj() * root;
            }
        }
    }
    Ok(out)
}

/// Concurrence by the spin-flip construction. With Y = sigma_y x sigma_y and
/// r = sqrt(rho), the matrix N = r Y r* satisfies N N^dagger =
/// r (Y rho* Y) r, so the Wootters lambdas are the singular values of N.
/// Reading them off the Hermitian embedding [[0, N], [N^dagger, 0]], whose
/// eigenvalues are the pairs +/- lambda, keeps full absolute accuracy even
/// when a lambda sits near zero; rooting the eigenvalues of N N^dagger would
/// lose half the digits exactly there, and cold thermal states pin one
/// lambda at 1/Z-level values.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<f64, CoreError> {
    let yy = kron(&ComplexMatrix::sigma_y(), &ComplexMatrix::sigma_y())?;
    let root = sqrt_psd(rho.matrix())?;
    let root_conj = ComplexMatrix::from_fn(4, |i, j| root[(i, j)].conj())?;
    let n = root.matmul(&yy)?.matmul(&root_conj)?;
    let mut emb = ComplexMatrix::zeros(8)?;
    for i in 0..4 {
        for j in 0..4 {
            emb[(i, 4 + j)] = n[(i, j)];
            emb[(4 + i, j)] = n[(j, i)].conj();
        }
    }
    let eigs = herm_eig(&emb)?;
    // Ascending order puts the non-negative half of the +/- pairs last.
    let lam: Vec<f64> = eigs[4..].iter().map(|p| p.value.max(0.0)).collect();
    Ok((lam[3] - lam[2] - lam[1] - lam[0]).max(0.0))
}

/// Purity as the eigenvalue sum of squares instead of the entrywise sum.
pub fn purity_from_spectrum(rho: &DensityMatrix) -> Result<f64, CoreError> {
    Ok(herm_eig(rho.matrix())?.iter().map(|p| p.value * p.value).sum())
}

fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over [a, b] to relative tolerance
/// `rel_tol` (with an absolute floor for integrals near zero).
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = rel_tol * whole.abs().max(1e-300);
    simpson_step(f, a, b, fa, fm, fb, whole, eps, 60)
}

/// Dephasing exponent by direct double quadrature of the stationary noise
/// kernel over the causal triangle:
///
/// ```text
/// beta(tau) = int_0^tau dt1 int_0^t1 du  g (alpha - 1) (1 + g u)^(-alpha)
/// ```
///
/// Nested adaptive Simpson, no antiderivatives anywhere; the closed form in
/// [`crate::channels::beta_pl`] must agree to better than 1e-6 relative.
pub fn beta_pl_quadrature(n: &NoiseParams) -> f64 {
    let (g, alpha, tau) = (n.g(), n.alpha(), n.tau());
    if tau == 0.0 {
        return 0.0;
    }
    let kernel = move |u: f64| g * (alpha - 1.0) * (1.0 + g * u).powf(-alpha);
    let inner = move |t1: f64| adaptive_simpson(&kernel, 0.0, t1, 1e-10);
    adaptive_simpson(&inner, 0.0, tau, 1e-9)
}

/// Weak-measurement reversal by explicit Kraus conjugation with
/// Q x Q, Q = diag(1, sqrt(1 - r)), renormalized.
pub fn qwm_reverse_conjugation(
    rho: &DensityMatrix,
    rp: &ReversalParams,
) -> Result<DensityMatrix, CoreError> {
    let q = reversal_operator(rp);
    conjugate_map(&kron(&q, &q)?, rho, true)
}

/// The fixed (g, alpha, tau) grid the quadrature comparison runs over,
/// spanning the series, crossover, and saturated regimes of the exponent.
pub fn noise_grid() -> Vec<NoiseParams> {
    let mut grid = Vec::new();
    for &g in &[1e-4, 1e-2, 1.0] {
        for &alpha in &[1.5, 2.1, 3.0] {
            for &tau in &[0.1, 10.0, 1e4] {
                grid.push(NoiseParams::new(g, alpha, tau).expect("valid grid point"));
            }
        }
    }
    grid
}

fn random_params(rng: &mut ChaCha8Rng) -> Result<ModelParams, CoreError> {
    let omega = rng.gen_range(0.2..5.0);
    let gamma = rng.gen_range(0.2..5.0);
    let t = rng.gen_range(0.05..3.0);
    ModelParams::new(omega, gamma, t)
}

/// Run every oracle comparison: five closed-form equivalences over `states`
/// random thermal states, the quadrature grid, and the reversal map against
/// Kraus conjugation. Deterministic for a fixed seed.
pub fn run(states: usize, seed: u64) -> Result<Vec<CheckOutcome>, CoreError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_thermal = 0.0_f64;
    let mut worst_ew = 0.0_f64;
    let mut worst_steering = 0.0_f64;
    let mut worst_chsh = 0.0_f64;
    let mut worst_concurrence = 0.0_f64;
    let mut worst_purity = 0.0_f64;
    let mut worst_qwm = 0.0_f64;

    for _ in 0..states {
        let p = random_params(&mut rng)?;
        let rho = thermal_state(&p)?;

        let via_expm = thermal_state_expm(&p)?;
        worst_thermal = worst_thermal.max(rho.matrix().max_abs_diff(via_expm.matrix()));

        // Witness: the analytic expression in the model parameters against
        // the direct overlap trace after a random constant-field evolution.
        let f = FieldParams::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.0..15.0),
        )?;
        let rho_field = evolve_constant_field(&rho, &f)?;
        let phase = 4.0 * f.delta() * f.lambda() * f.time();
        worst_ew = worst_ew
            .max((entanglement_witness(&rho_field, &rho) - ew_closed_form(&p, phase)?).abs());

        let closed = steering_value(&bloch_x(&rho)?)?;
        worst_steering = worst_steering.max((closed - steering_value_entropy(&rho)?).abs());

        worst_chsh = worst_chsh.max((chsh_value(&rho)? - chsh_value_horodecki(&rho)?).abs());

        worst_concurrence =
            worst_concurrence.max((concurrence(&rho)? - concurrence_wootters(&rho)?).abs());

        worst_purity = worst_purity.max((purity(&rho) - purity_from_spectrum(&rho)?).abs());

        // Reversal after a random amount of dephasing, never at full
        // measurement strength (r = 1 is covered by exact endpoint tests).
        let noise = NoiseParams::new(1e-3, 2.1, rng.gen_range(0.0..1e3))?;
        let dephased = dephase_pl(&rho, &noise)?;
        let rp = ReversalParams::new(rng.gen_range(0.0..0.99))?;
        let fast = qwm_reverse(&dephased, &rp)?;
        let slow = qwm_reverse_conjugation(&dephased, &rp)?;
        worst_qwm = worst_qwm.max(fast.matrix().max_abs_diff(slow.matrix()));
    }

    let mut worst_beta_rel = 0.0_f64;
    for n in noise_grid() {
        let closed = beta_pl(&n);
        let quad = beta_pl_quadrature(&n);
        worst_beta_rel = worst_beta_rel.max((closed - quad).abs() / quad.abs().max(1e-300));
    }

    Ok(vec![
        CheckOutcome::from_worst("thermal_vs_expm", worst_thermal, 1e-10),
        CheckOutcome::from_worst("witness_vs_trace", worst_ew, 1e-10),
        CheckOutcome::from_worst("steering_vs_entropy", worst_steering, 1e-10),
        CheckOutcome::from_worst("chsh_vs_horodecki", worst_chsh, 1e-10),
        CheckOutcome::from_worst("concurrence_vs_wootters", worst_concurrence, 1e-10),
        CheckOutcome::from_worst("purity_vs_spectrum", worst_purity, 1e-12),
        CheckOutcome::from_worst("beta_vs_quadrature", worst_beta_rel, 1e-6),
        CheckOutcome::from_worst("qwm_vs_conjugation", worst_qwm, 1e-12),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{evolve_constant_field, FieldParams};

    fn bell_phi_plus() -> DensityMatrix {
        let half = C64::new(0.5, 0.0);
        let mut m = ComplexMatrix::zeros(4).unwrap();
        m[(0, 0)] = half;
        m[(3, 3)] = half;
        m[(0, 3)] = half;
        m[(3, 0)] = half;
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn entropy_route_saturates_on_the_bell_state() {
        let i = steering_value_entropy(&bell_phi_plus()).unwrap();
        assert!((i - 6.0).abs() < 1e-12);
    }

    #[test]
    fn horodecki_bound_on_the_bell_state_is_two_sqrt_two() {
        let b = chsh_value_horodecki(&bell_phi_plus()).unwrap();
        assert!((b - 2.0 * (2.0_f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wootters_route_handles_a_phased_coherence() {
        // The X-state closed form uses |rho14|; the spin-flip spectrum must
        // agree after a phase-imprinting channel.
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let rho0 = thermal_state(&p).unwrap();
        let f = FieldParams::new(0.3, 0.5, 0.7, 1.1).unwrap();
        let rho_t = evolve_constant_field(&rho0, &f).unwrap();
        let closed = crate::measures::concurrence(&rho_t).unwrap();
        let slow = concurrence_wootters(&rho_t).unwrap();
        assert!((closed - slow).abs() < 1e-12);
    }

    #[test]
    fn sym3_jacobi_recovers_a_known_spectrum() {
        // diag(5, 2, 1) conjugated by a rotation in the (0, 1) plane.
        let (c, s) = (0.6, 0.8);
        let d = [5.0, 2.0, 1.0];
        let mut m = [[0.0; 3]; 3];
        m[0][0] = c * c * d[0] + s * s * d[1];
        m[1][1] = s * s * d[0] + c * c * d[1];
        m[0][1] = c * s * (d[0] - d[1]);
        m[1][0] = m[0][1];
        m[2][2] = d[2];
        let eigs = sym3_eigenvalues(m);
        assert!((eigs[0] - 5.0).abs() < 1e-12);
        assert!((eigs[1] - 2.0).abs() < 1e-12);
        assert!((eigs[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_matches_the_closed_exponent_on_a_spot_check() {
        for n in [
            NoiseParams::new(1e-2, 2.1, 10.0).unwrap(),
            NoiseParams::new(1.0, 1.5, 0.1).unwrap(),
            NoiseParams::new(1e-4, 3.0, 1e4).unwrap(),
        ] {
            let closed = beta_pl(&n);
            let quad = beta_pl_quadrature(&n);
            assert!(
                ((closed - quad) / quad).abs() < 1e-7,
                "g={} alpha={} tau={}: closed={closed:e} quad={quad:e}",
                n.g(),
                n.alpha(),
                n.tau()
            );
        }
    }

    #[test]
    fn quadrature_of_the_zero_interval_is_zero() {
        assert_eq!(beta_pl_quadrature(&NoiseParams::new(1.0, 2.0, 0.0).unwrap()), 0.0);
    }

    #[test]
    fn thermal_purity_agrees_with_the_boltzmann_weights() {
        let p = ModelParams::new(1.0, 1.0, 0.1).unwrap();
        let rho = thermal_state(&p).unwrap();
        let z = crate::model::partition_function(&p).unwrap();
        let from_weights: f64 = crate::model::spectrum(&p)
            .unwrap()
            .energies
            .iter()
            .map(|e| ((-e / p.temperature()).exp() / z).powi(2))
            .sum();
        assert!((purity(&rho) - from_weights).abs() < 1e-12);
    }

    #[test]
    fn full_run_passes_on_a_small_sample() {
        let outcomes = run(25, 7).unwrap();
        assert_eq!(outcomes.len(), 8);
        for o in &outcomes {
            assert!(o.pass, "{} worst {:e} tol {:e}", o.name, o.worst, o.tolerance);
        }
    }

    #[test]
    fn runs_are_deterministic_for_a_fixed_seed() {
        let a = run(10, 42).unwrap();
        let b = run(10, 42).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.worst, y.worst);
        }
    }
}
