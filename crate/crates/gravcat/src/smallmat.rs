//! Dependency-free complex small-matrix core.
//!
//! Everything operates on dense row-major 2x2 and 4x4 complex matrices: just
//! enough linear algebra for two-qubit work (Kronecker products, a cyclic
//! Jacobi Hermitian eigensolver, matrix exponentials through the spectral
//! decomposition, and map conjugation), plus the validated [`DensityMatrix`]
//! newtype used by every channel and measure.

use num_complex::Complex64;

use crate::error::CoreError;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Hermiticity tolerance below which the eigensolver symmetrizes its input.
pub const HERM_EIG_DEFECT_TOL: f64 = 1e-10;
/// Hermiticity tolerance for a valid density matrix.
pub const DENSITY_HERM_TOL: f64 = 1e-12;
/// Trace tolerance for a valid density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a valid density matrix.
pub const DENSITY_PSD_TOL: f64 = 1e-10;
/// Off-pattern magnitude above which a state stops counting as X-shaped.
pub const X_SHAPE_TOL: f64 = 1e-12;
/// Largest exponent fed to `exp` before erroring out.
pub const EXP_ARG_LIMIT: f64 = 700.0;
/// Traces at or below this are treated as annihilation during renormalization.
pub const ANNIHILATION_TOL: f64 = 1e-300;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix with 2, 4 or 8 rows/columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

fn check_dim(n: usize) -> Result<(), CoreError> {
    if n == 2 || n == 4 || n == 8 {
        Ok(())
    } else {
        Err(CoreError::UnsupportedDimension { rows: n, cols: n })
    }
}

impl ComplexMatrix {
    /// Zero matrix of the given square dimension (2, 4 or 8).
    pub fn zeros(n: usize) -> Result<Self, CoreError> {
        check_dim(n)?;
        Ok(Self { rows: n, cols: n, data: vec![ZERO; n * n] })
    }

    /// Identity matrix of the given dimension (2, 4 or 8).
    pub fn identity(n: usize) -> Result<Self, CoreError> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Square matrix built entry by entry from `f(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self, CoreError> {
        check_dim(n)?;
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Ok(Self { rows: n, cols: n, data })
    }

    /// Diagonal matrix from the given entries (length 2, 4 or 8).
    pub fn from_diag(diag: &[C64]) -> Result<Self, CoreError> {
        let n = diag.len();
        let mut m = Self::zeros(n)?;
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        Ok(m)
    }

    /// Pauli X.
    pub fn sigma_x() -> Self {
        let mut m = Self::zeros(2).expect("2 is supported");
        m[(0, 1)] = ONE;
        m[(1, 0)] = ONE;
        m
    }

    /// Pauli Y.
    pub fn sigma_y() -> Self {
        let mut m = Self::zeros(2).expect("2 is supported");
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        m
    }

    /// Pauli Z.
    pub fn sigma_z() -> Self {
        Self::from_diag(&[ONE, -ONE]).expect("2 is supported")
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self, CoreError> {
        if self.cols != rhs.rows {
            return Err(CoreError::ShapeMismatch {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let n = self.rows;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self, CoreError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(CoreError::ShapeMismatch {
                op: "add",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o += r;
        }
        Ok(out)
    }

    /// Entrywise scaling by a complex factor.
    pub fn scaled(&self, factor: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }

    /// Matrix trace.
    pub fn trace(&self) -> C64 {
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise deviation from Hermiticity, max |M - M^dagger| / 2 scale free.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product of two 2x2 matrices, in the |00>,|01>,|10>,|11> basis.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, CoreError> {
    if (a.rows, a.cols) != (2, 2) || (b.rows, b.cols) != (2, 2) {
        return Err(CoreError::ShapeMismatch {
            op: "kron",
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    ComplexMatrix::from_fn(4, |i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// One eigenvalue with its unit eigenvector.
#[derive(Debug, Clone)]
pub struct EigPair {
    pub value: f64,
    pub vector: Vec<C64>,
}

/// Eigendecomposition of a small Hermitian matrix by cyclic complex Jacobi
/// rotations (the crate uses it on 2x2, 4x4 and 8x8 inputs).
///
/// Inputs with Hermiticity defect below 1e-10 are symmetrized to
/// (M + M^dagger)/2 first; larger defects are an error. Eigenvalues come back
/// ascending; exact ties are broken by the position and value of the
/// eigenvector's first non-negligible component, and each vector's global
/// phase is fixed so that component is real positive. The output is therefore
/// deterministic for identical inputs.
pub fn herm_eig(m: &ComplexMatrix) -> Result<Vec<EigPair>, CoreError> {
    if m.rows != m.cols {
        return Err(CoreError::ShapeMismatch {
            op: "herm_eig",
            left: (m.rows, m.cols),
            right: (m.cols, m.rows),
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERM_EIG_DEFECT_TOL {
        return Err(CoreError::NotHermitian { defect });
    }
    let n = m.rows;
    let mut a = ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)?;
    let mut v = ComplexMatrix::identity(n)?;

    let scale = a.frobenius().max(1.0);
    let target = (1e-15 * scale).powi(2);
    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s
    };

    const MAX_SWEEPS: usize = 60;
    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps >= MAX_SWEEPS {
            return Err(CoreError::EigNoConvergence { off_diagonal: off(&a).sqrt(), sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // Unitary plane rotation zeroing a[p][q]:
                //   U[p][p] = c, U[p][q] = -s*phi, U[q][p] = s*conj(phi), U[q][q] = c
                // with phi the phase of a[p][q] and tan built the numerically
                // stable way from tau = (a_qq - a_pp) / (2|a_pq|).
                let phi = apq / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phi * s;

                // A <- U^dagger A U, applied as column then row updates.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * sp.conj();
                    a[(k, q)] = akq * c - akp * sp;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * sp;
                    a[(q, k)] = aqk * c - apk * sp.conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * sp.conj();
                    v[(k, q)] = vkq * c - vkp * sp;
                }
            }
        }
    }

    let mut pairs: Vec<EigPair> = (0..n)
        .map(|j| {
            let mut vector: Vec<C64> = (0..n).map(|i| v[(i, j)]).collect();
            canonical_phase(&mut vector);
            EigPair { value: a[(j, j)].re, vector }
        })
        .collect();
    pairs.sort_by(|x, y| {
        x.value
            .partial_cmp(&y.value)
            .expect("eigenvalues of a Hermitian matrix are finite")
            .then_with(|| vector_order_key(&x.vector).cmp(&vector_order_key(&y.vector)))
    });
    Ok(pairs)
}

/// Rotate a vector's global phase so its first non-negligible component is
/// real positive.
fn canonical_phase(v: &mut [C64]) {
    if let Some(lead) = v.iter().find(|c| c.norm() > 1e-8) {
        let phase = lead / lead.norm();
        let inv = phase.conj();
        for c in v.iter_mut() {
            *c *= inv;
        }
    }
}

/// Total order key for tie-breaking eigenvectors with equal eigenvalues:
/// index of the first non-negligible component, then its value.
fn vector_order_key(v: &[C64]) -> (usize, u64, u64) {
    let idx = v.iter().position(|c| c.norm() > 1e-12).unwrap_or(v.len());
    let lead = v.get(idx).copied().unwrap_or(ZERO);
    (idx, lead.re.to_bits(), lead.im.to_bits())
}

/// exp(scale * M) for Hermitian M, through the spectral decomposition.
///
/// Errors if any `scale * eigenvalue` exceeds 700 (f64 exp overflow).
pub fn expm_hermitian(m: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix, CoreError> {
    let pairs = herm_eig(m)?;
    let n = m.rows;
    let mut out = ComplexMatrix::zeros(n)?;
    for pair in &pairs {
        let arg = scale * pair.value;
        if arg > EXP_ARG_LIMIT {
            return Err(CoreError::ExpOverflow { context: "expm_hermitian", exponent: arg });
        }
        let w = arg.exp();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += pair.vector[i] * pair.vector[j].conj() * w;
            }
        }
    }
    Ok(out)
}

/// Validated two-qubit density matrix: 4x4, Hermitian within 1e-12, unit
/// trace within 1e-12, eigenvalues above -1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a candidate 4x4 matrix.
    pub fn new(mat: ComplexMatrix) -> Result<Self, CoreError> {
        if (mat.nrows(), mat.ncols()) != (4, 4) {
            return Err(CoreError::ShapeMismatch {
                op: "DensityMatrix::new",
                left: (mat.nrows(), mat.ncols()),
                right: (4, 4),
            });
        }
        let defect = mat.hermiticity_defect();
        if defect > DENSITY_HERM_TOL {
            return Err(CoreError::DensityNotHermitian { defect });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(CoreError::DensityTraceNotOne { trace: tr.re });
        }
        let min_eig = herm_eig(&mat)?
            .first()
            .map(|p| p.value)
            .expect("4x4 decomposition is non-empty");
        if min_eig < -DENSITY_PSD_TOL {
            return Err(CoreError::DensityNotPositive { min_eigenvalue: min_eig });
        }
        Ok(Self { mat })
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Single entry.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    /// Real part of a diagonal entry (imaginary part is zero by Hermiticity
    /// up to the validation tolerance).
    pub fn diag(&self, i: usize) -> f64 {
        self.mat[(i, i)].re
    }

    /// Error unless all support sits on the diagonal and anti-diagonal.
    pub fn require_x_shaped(&self) -> Result<(), CoreError> {
        for i in 0..4 {
            for j in 0..4 {
                if i == j || i + j == 3 {
                    continue;
                }
                let magnitude = self.mat[(i, j)].norm();
                if magnitude > X_SHAPE_TOL {
                    return Err(CoreError::NotXShaped { row: i, col: j, magnitude });
                }
            }
        }
        Ok(())
    }
}

/// A rho A^dagger, optionally renormalized to unit trace.
///
/// With `renormalize` set, a post-map trace at or below 1e-300 is reported as
/// annihilation instead of dividing by (near) zero. The result passes the
/// usual density-matrix validation, so conjugating by a non-unitary map
/// without renormalizing fails with a trace error.
pub fn conjugate_map(
    a: &ComplexMatrix,
    rho: &DensityMatrix,
    renormalize: bool,
) -> Result<DensityMatrix, CoreError> {
    let mut b = a.matmul(rho.matrix())?.matmul(&a.adjoint())?;
    if renormalize {
        let tr = b.trace().re;
        if tr <= ANNIHILATION_TOL {
            return Err(CoreError::StateAnnihilated { trace: tr });
        }
        b = b.scaled(C64::new(1.0 / tr, 0.0));
    }
    DensityMatrix::new(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn gravcat_hamiltonian(omega: f64, gamma: f64) -> ComplexMatrix {
        let mut h = ComplexMatrix::zeros(4).unwrap();
        h[(0, 0)] = c(omega, 0.0);
        h[(3, 3)] = c(-omega, 0.0);
        for i in 0..4 {
            h[(i, 3 - i)] += c(-gamma, 0.0);
        }
        h
    }

    #[test]
    fn kron_of_paulis_has_antidiagonal_layout() {
        let xx = kron(&ComplexMatrix::sigma_x(), &ComplexMatrix::sigma_x()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(xx[(i, j)], expected);
            }
        }
        let zz = kron(&ComplexMatrix::sigma_z(), &ComplexMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(zz[(0, 0)], ONE);
        assert_eq!(zz[(3, 3)], -ONE);
    }

    #[test]
    fn kron_rejects_wrong_shapes() {
        let four = ComplexMatrix::identity(4).unwrap();
        let two = ComplexMatrix::identity(2).unwrap();
        assert!(kron(&four, &two).is_err());
    }

    #[test]
    fn eig_of_model_hamiltonian_matches_known_spectrum() {
        let h = gravcat_hamiltonian(1.0, 1.0);
        let pairs = herm_eig(&h).unwrap();
        let expected = [-(2.0_f64).sqrt(), -1.0, 1.0, (2.0_f64).sqrt()];
        for (pair, want) in pairs.iter().zip(expected) {
            assert!((pair.value - want).abs() < 1e-12, "{} vs {}", pair.value, want);
        }
    }

    #[test]
    fn eig_is_deterministic_and_orthonormal_under_degeneracy() {
        let m = ComplexMatrix::from_diag(&[c(2.0, 0.0); 4]).unwrap();
        let a = herm_eig(&m).unwrap();
        let b = herm_eig(&m).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value.to_bits(), y.value.to_bits());
            for (u, v) in x.vector.iter().zip(&y.vector) {
                assert_eq!(u, v);
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let dot: C64 = a[i]
                    .vector
                    .iter()
                    .zip(&a[j].vector)
                    .map(|(u, v)| u.conj() * v)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot.re - want).abs() < 1e-12 && dot.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eig_rejects_visibly_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(4).unwrap();
        m[(0, 1)] = c(1e-3, 0.0);
        let err = herm_eig(&m).unwrap_err();
        assert!(matches!(err, CoreError::NotHermitian { .. }));

        // A defect below 1e-10 is symmetrized away instead.
        let mut m = ComplexMatrix::identity(4).unwrap();
        m[(0, 1)] = c(1e-12, 0.0);
        assert!(herm_eig(&m).is_ok());
    }

    #[test]
    fn expm_at_zero_scale_is_identity() {
        let h = gravcat_hamiltonian(1.3, -0.7);
        let e = expm_hermitian(&h, 0.0).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(4).unwrap()) < 1e-14);
    }

    #[test]
    fn expm_trace_matches_partition_sum() {
        // trace exp(-H/T) = 2 [cosh(K/T) + cosh(gamma/T)] for the cat Hamiltonian.
        let h = gravcat_hamiltonian(1.0, 1.0);
        let t = 0.1_f64;
        let e = expm_hermitian(&h, -1.0 / t).unwrap();
        let k = (2.0_f64).sqrt();
        let z = 2.0 * ((k / t).cosh() + (1.0 / t).cosh());
        assert!((e.trace().re - z).abs() / z < 1e-12);
        assert!(e.trace().im.abs() < 1e-9);
    }

    #[test]
    fn expm_reports_the_offending_exponent() {
        let h = gravcat_hamiltonian(1.0, 1.0);
        let err = expm_hermitian(&h, -1000.0).unwrap_err();
        match err {
            CoreError::ExpOverflow { exponent, .. } => {
                assert!((exponent - 1000.0 * (2.0_f64).sqrt()).abs() < 1e-9)
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn density_matrix_validation_catches_each_violation() {
        let valid = ComplexMatrix::from_diag(&[c(0.25, 0.0); 4]).unwrap();
        assert!(DensityMatrix::new(valid).is_ok());

        let bad_trace = ComplexMatrix::from_diag(&[c(0.5, 0.0); 4]).unwrap();
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(CoreError::DensityTraceNotOne { .. })
        ));

        let negative =
            ComplexMatrix::from_diag(&[c(0.75, 0.0), c(0.5, 0.0), c(0.25, 0.0), c(-0.5, 0.0)])
                .unwrap();
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(CoreError::DensityNotPositive { .. })
        ));

        let mut skew = ComplexMatrix::from_diag(&[c(0.25, 0.0); 4]).unwrap();
        skew[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(CoreError::DensityNotHermitian { .. })
        ));
    }

    #[test]
    fn x_shape_check_flags_off_pattern_support() {
        let mut m = ComplexMatrix::from_diag(&[c(0.25, 0.0); 4]).unwrap();
        m[(0, 1)] = c(1e-6, 0.0);
        m[(1, 0)] = c(1e-6, 0.0);
        let rho = DensityMatrix::new(m).unwrap();
        assert!(matches!(
            rho.require_x_shaped(),
            Err(CoreError::NotXShaped { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn conjugation_by_zero_map_reports_annihilation() {
        let rho =
            DensityMatrix::new(ComplexMatrix::from_diag(&[c(0.25, 0.0); 4]).unwrap()).unwrap();
        let zero = ComplexMatrix::zeros(4).unwrap();
        assert!(matches!(
            conjugate_map(&zero, &rho, true),
            Err(CoreError::StateAnnihilated { .. })
        ));
        // Without renormalization the trace defect is reported instead.
        assert!(matches!(
            conjugate_map(&zero, &rho, false),
            Err(CoreError::DensityTraceNotOne { .. })
        ));
    }

    prop_compose! {
        fn arb_hermitian4()(entries in proptest::collection::vec(-3.0..3.0f64, 16)) -> ComplexMatrix {
            let mut m = ComplexMatrix::zeros(4).unwrap();
            // Lower triangle drives both halves so the result is exactly Hermitian.
            let mut k = 0;
            for i in 0..4 {
                for j in 0..=i {
                    if i == j {
                        m[(i, i)] = c(entries[k], 0.0);
                        k += 1;
                    } else {
                        let v = c(entries[k], entries[k + 1]);
                        k += 2;
                        m[(i, j)] = v;
                        m[(j, i)] = v.conj();
                    }
                }
            }
            m
        }
    }

    fn random_unitary_from(m: &ComplexMatrix) -> ComplexMatrix {
        let pairs = herm_eig(m).unwrap();
        ComplexMatrix::from_fn(4, |i, j| pairs[j].vector[i]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eig_reconstructs_and_is_orthonormal(m in arb_hermitian4()) {
            let pairs = herm_eig(&m).unwrap();
            // Orthonormality to 1e-10, eigen-residual to 1e-9.
            for i in 0..4 {
                for j in 0..4 {
                    let dot: C64 = pairs[i].vector.iter().zip(&pairs[j].vector)
                        .map(|(u, v)| u.conj() * v).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot.re - want).abs() < 1e-10 && dot.im.abs() < 1e-10);
                }
            }
            for pair in &pairs {
                for i in 0..4 {
                    let mv: C64 = (0..4).map(|k| m[(i, k)] * pair.vector[k]).sum();
                    let res = (mv - pair.vector[i] * pair.value).norm();
                    prop_assert!(res < 1e-9, "residual {res}");
                }
            }
            let mut rebuilt = ComplexMatrix::zeros(4).unwrap();
            for pair in &pairs {
                for i in 0..4 {
                    for j in 0..4 {
                        rebuilt[(i, j)] += pair.vector[i] * pair.vector[j].conj() * pair.value;
                    }
                }
            }
            prop_assert!(rebuilt.max_abs_diff(&m) < 1e-9);
        }

        #[test]
        fn spectra_are_invariant_under_unitary_conjugation(
            m in arb_hermitian4(),
            seed in arb_hermitian4(),
        ) {
            let u = random_unitary_from(&seed);
            let rotated = u.matmul(&m).unwrap().matmul(&u.adjoint()).unwrap();
            let ev_m: Vec<f64> = herm_eig(&m).unwrap().iter().map(|p| p.value).collect();
            let ev_r: Vec<f64> = herm_eig(&rotated).unwrap().iter().map(|p| p.value).collect();
            for (a, b) in ev_m.iter().zip(&ev_r) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn expm_is_additive_in_the_scale(m in arb_hermitian4(), s in -2.0..2.0f64, t in -2.0..2.0f64) {
            let both = expm_hermitian(&m, s + t).unwrap();
            let ea = expm_hermitian(&m, s).unwrap();
            let eb = expm_hermitian(&m, t).unwrap();
            let split = ea.matmul(&eb).unwrap();
            // With s and t of opposite sign the factors dwarf the product, so
            // the rounding floor scales with the factor norms, not the result.
            let scale = (ea.frobenius() * eb.frobenius()).max(1.0);
            prop_assert!(both.max_abs_diff(&split) < 1e-10 * scale);
        }

        #[test]
        fn kron_is_bilinear(
            a in proptest::collection::vec(-2.0..2.0f64, 8),
            b in proptest::collection::vec(-2.0..2.0f64, 8),
            q in proptest::collection::vec(-2.0..2.0f64, 8),
            scale in -2.0..2.0f64,
        ) {
            let m2 = |v: &[f64]| ComplexMatrix::from_fn(2, |i, j| c(v[2*(2*i+j)], v[2*(2*i+j)+1])).unwrap();
            let (a, b, q) = (m2(&a), m2(&b), m2(&q));
            let lhs = kron(&a.scaled(c(scale, 0.0)).add(&b).unwrap(), &q).unwrap();
            let rhs = kron(&a, &q).unwrap().scaled(c(scale, 0.0)).add(&kron(&b, &q).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn unitary_conjugation_preserves_trace_and_spectrum(seed in arb_hermitian4()) {
            let rho = DensityMatrix::new(
                ComplexMatrix::from_diag(&[c(0.4, 0.0), c(0.3, 0.0), c(0.2, 0.0), c(0.1, 0.0)]).unwrap()
            ).unwrap();
            let u = random_unitary_from(&seed);
            let out = conjugate_map(&u, &rho, false).unwrap();
            prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
            let ev: Vec<f64> = herm_eig(out.matrix()).unwrap().iter().map(|p| p.value).collect();
            for (got, want) in ev.iter().zip([0.1, 0.2, 0.3, 0.4]) {
                prop_assert!((got - want).abs() < 1e-10);
            }
        }
    }
}
