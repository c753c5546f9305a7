//! Gaussian states described by their first and second quadrature moments.
//!
//! Quadratures follow `x = (a + a†)/2`, `p = (a - a†)/2i`, so `[x, p] = i/2`
//! and the vacuum variance is exactly 1/4. Vectors and matrices use the
//! interleaved ordering `(x1, p1, x2, p2, ...)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variance of either quadrature of the vacuum.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// `|<[x, p]>| / 2` for a single mode.
pub const XP_COMMUTATOR_BOUND: f64 = 0.25;

const SYMMETRY_TOL: f64 = 1e-12;
const EIGEN_TOL: f64 = 1e-10;

/// The fixed quadrature convention. Carried as a type so call sites can name it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuadratureConvention;

impl QuadratureConvention {
    pub const fn vacuum_variance(self) -> f64 {
        VACUUM_VARIANCE
    }

    /// Commutator bound `C_AB` for the conjugate pair `(x, p)` of one mode.
    pub const fn commutator_bound(self) -> f64 {
        XP_COMMUTATOR_BOUND
    }
}

/// Description of the two-mode squeezed resource.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SqueezingSpec {
    /// Pure two-mode squeezed vacuum with squeezing parameter `r`.
    Pure { r: f64 },
    /// Squeezed / antisqueezed joint-quadrature noise in dB relative to vacuum.
    Impure {
        squeezing_db: f64,
        antisqueezing_db: f64,
    },
}

impl Default for SqueezingSpec {
    /// The measured -2.9 dB / +3.9 dB resource.
    fn default() -> Self {
        SqueezingSpec::Impure {
            squeezing_db: -2.9,
            antisqueezing_db: 3.9,
        }
    }
}

impl SqueezingSpec {
    pub fn pure(r: f64) -> Self {
        SqueezingSpec::Pure { r }
    }

    pub fn impure(squeezing_db: f64, antisqueezing_db: f64) -> Self {
        SqueezingSpec::Impure {
            squeezing_db,
            antisqueezing_db,
        }
    }

    /// Checks ranges. An impure spec must also satisfy `V- * V+ >= 1/16`,
    /// i.e. `squeezing_db + antisqueezing_db >= 0`, or the state is unphysical.
    pub fn validate(&self) -> Result<()> {
        match *self {
            SqueezingSpec::Pure { r } => {
                if !r.is_finite() || r < 0.0 {
                    return Err(Error::InvalidSqueezing(format!("r = {r} must be finite and >= 0")));
                }
            }
            SqueezingSpec::Impure {
                squeezing_db,
                antisqueezing_db,
            } => {
                if !squeezing_db.is_finite() || !antisqueezing_db.is_finite() {
                    return Err(Error::InvalidSqueezing("dB levels must be finite".into()));
                }
                if squeezing_db > 0.0 {
                    return Err(Error::InvalidSqueezing(format!(
                        "squeezing level {squeezing_db} dB must be <= 0"
                    )));
                }
                if antisqueezing_db < 0.0 {
                    return Err(Error::InvalidSqueezing(format!(
                        "antisqueezing level {antisqueezing_db} dB must be >= 0"
                    )));
                }
                if squeezing_db + antisqueezing_db < -1e-12 {
                    return Err(Error::InvalidSqueezing(format!(
                        "|{squeezing_db}| dB squeezing exceeds {antisqueezing_db} dB antisqueezing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Variance of the squeezed joint quadratures `(x1+x2)/√2`, `(p1-p2)/√2`.
    pub fn squeezed_variance(&self) -> f64 {
        match *self {
            SqueezingSpec::Pure { r } => VACUUM_VARIANCE * (-2.0 * r).exp(),
            SqueezingSpec::Impure { squeezing_db, .. } => VACUUM_VARIANCE * db_to_ratio(squeezing_db),
        }
    }

    /// Variance of the antisqueezed joint quadratures `(x1-x2)/√2`, `(p1+p2)/√2`.
    pub fn antisqueezed_variance(&self) -> f64 {
        match *self {
            SqueezingSpec::Pure { r } => VACUUM_VARIANCE * (2.0 * r).exp(),
            SqueezingSpec::Impure {
                antisqueezing_db, ..
            } => VACUUM_VARIANCE * db_to_ratio(antisqueezing_db),
        }
    }

    /// Pure state with the same squeezed-quadrature noise.
    pub fn pure_equivalent(&self) -> SqueezingSpec {
        match *self {
            SqueezingSpec::Pure { .. } => *self,
            SqueezingSpec::Impure { squeezing_db, .. } => SqueezingSpec::Pure {
                r: -std::f64::consts::LN_10 * squeezing_db / 20.0,
            },
        }
    }
}

/// `10^(db/10)`.
pub fn db_to_ratio(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Index of the `x` quadrature of `mode` in the interleaved ordering.
pub const fn x_index(mode: usize) -> usize {
    2 * mode
}

/// Index of the `p` quadrature of `mode` in the interleaved ordering.
pub const fn p_index(mode: usize) -> usize {
    2 * mode + 1
}

/// A real linear combination of quadratures, e.g. `p2 - p1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearForm(Vec<f64>);

impl LinearForm {
    pub fn zero(n_modes: usize) -> Self {
        LinearForm(vec![0.0; 2 * n_modes])
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        LinearForm(coeffs)
    }

    pub fn x(n_modes: usize, mode: usize) -> Self {
        Self::zero(n_modes).plus_x(mode, 1.0)
    }

    pub fn p(n_modes: usize, mode: usize) -> Self {
        Self::zero(n_modes).plus_p(mode, 1.0)
    }

    pub fn plus_x(mut self, mode: usize, coeff: f64) -> Self {
        self.0[x_index(mode)] += coeff;
        self
    }

    pub fn plus_p(mut self, mode: usize, coeff: f64) -> Self {
        self.0[p_index(mode)] += coeff;
        self
    }

    pub fn plus(&self, other: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.0.len(), other.0.len());
        LinearForm(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.0.len(), other.0.len());
        LinearForm(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, factor: f64) -> LinearForm {
        LinearForm(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[f64]> for LinearForm {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Multi-mode Gaussian state: mean vector and covariance matrix.
///
/// Immutable; every operation returns a new state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Builds a state from raw moments, checking symmetry, positivity and the
    /// uncertainty principle `cov + (i/4)Ω ⪰ 0`.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 {
            return Err(Error::ZeroModes);
        }
        if dim % 2 != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim + 1,
                found: dim,
            });
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: cov.nrows().max(cov.ncols()),
            });
        }
        let state = GaussianState { mean, cov };
        let asym = state.asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        let min_eig = state.min_covariance_eigenvalue();
        if min_eig < -EIGEN_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        let min_phys = state.physicality_margin();
        if min_phys < -EIGEN_TOL {
            return Err(Error::Unphysical(min_phys));
        }
        Ok(state)
    }

    /// Vacuum on `n_modes` modes.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        let dim = 2 * n_modes;
        Ok(GaussianState {
            mean: DVector::zeros(dim),
            cov: DMatrix::identity(dim, dim) * VACUUM_VARIANCE,
        })
    }

    /// Two-mode EPR state with `x1 + x2` and `p1 - p2` squeezed.
    pub fn epr(spec: &SqueezingSpec) -> Result<Self> {
        spec.validate()?;
        let v_minus = spec.squeezed_variance();
        let v_plus = spec.antisqueezed_variance();
        let single = 0.5 * (v_plus + v_minus);
        let corr = 0.5 * (v_plus - v_minus);
        let mut cov = DMatrix::zeros(4, 4);
        for i in 0..4 {
            cov[(i, i)] = single;
        }
        // cov(x1, x2) < 0 squeezes x1 + x2; cov(p1, p2) > 0 squeezes p1 - p2.
        cov[(x_index(0), x_index(1))] = -corr;
        cov[(x_index(1), x_index(0))] = -corr;
        cov[(p_index(0), p_index(1))] = corr;
        cov[(p_index(1), p_index(0))] = corr;
        Ok(GaussianState {
            mean: DVector::zeros(4),
            cov,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes() {
            return Err(Error::ModeOutOfRange {
                mode,
                n_modes: self.n_modes(),
            });
        }
        Ok(())
    }

    fn check_coeffs(&self, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                found: coeffs.len(),
            });
        }
        Ok(())
    }

    /// Applies a symplectic matrix: `mean -> S mean`, `cov -> S cov Sᵀ`.
    fn transformed(&self, s: &DMatrix<f64>) -> GaussianState {
        let cov = s * &self.cov * s.transpose();
        // Re-symmetrize so rounding never accumulates into asymmetry.
        let cov = (&cov + cov.transpose()) * 0.5;
        GaussianState {
            mean: s * &self.mean,
            cov,
        }
    }

    /// Rotates the quadratures of `mode` by `theta` radians:
    /// `x' = x cosθ - p sinθ`, `p' = x sinθ + p cosθ`.
    pub fn phase_rotate(&self, mode: usize, theta: f64) -> Result<Self> {
        self.check_mode(mode)?;
        let dim = self.mean.len();
        let (sin, cos) = theta.sin_cos();
        let mut s = DMatrix::identity(dim, dim);
        let (ix, ip) = (x_index(mode), p_index(mode));
        s[(ix, ix)] = cos;
        s[(ix, ip)] = -sin;
        s[(ip, ix)] = sin;
        s[(ip, ip)] = cos;
        Ok(self.transformed(&s))
    }

    /// Direct sum `self ⊕ other`; `other`'s modes are appended after `self`'s.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let (n, m) = (self.mean.len(), other.mean.len());
        let mut mean = DVector::zeros(n + m);
        mean.rows_mut(0, n).copy_from(&self.mean);
        mean.rows_mut(n, m).copy_from(&other.mean);
        let mut cov = DMatrix::zeros(n + m, n + m);
        cov.view_mut((0, 0), (n, n)).copy_from(&self.cov);
        cov.view_mut((n, n), (m, m)).copy_from(&other.cov);
        GaussianState { mean, cov }
    }

    /// Appends `count` vacuum modes.
    pub fn with_vacuum_ancillas(&self, count: usize) -> Result<Self> {
        Ok(self.tensor(&GaussianState::vacuum(count)?))
    }

    /// Beamsplitter of transmissivity `t` between modes `a` and `b`:
    /// `x_a' = √t x_a + √(1-t) x_b`, `x_b' = -√(1-t) x_a + √t x_b` (same for p).
    pub fn beamsplitter(&self, a: usize, b: usize, t: f64) -> Result<Self> {
        self.check_mode(a)?;
        self.check_mode(b)?;
        check_transmission(t)?;
        if a == b {
            return Err(Error::InvalidConfig("beamsplitter needs two distinct modes".into()));
        }
        Ok(self.transformed(&beamsplitter_matrix(self.n_modes(), a, b, t)))
    }

    /// Keeps only the listed modes, in the given order (partial trace).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::ZeroModes);
        }
        for &m in keep {
            self.check_mode(m)?;
        }
        let idx: Vec<usize> = keep
            .iter()
            .flat_map(|&m| [x_index(m), p_index(m)])
            .collect();
        let mean = DVector::from_iterator(idx.len(), idx.iter().map(|&i| self.mean[i]));
        let cov = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.cov[(idx[r], idx[c])]);
        Ok(GaussianState { mean, cov })
    }

    /// Pure-loss channel of transmission `t` on `mode`, realised as a
    /// beamsplitter with a fresh vacuum ancilla that is then discarded.
    pub fn pure_loss(&self, mode: usize, t: f64) -> Result<Self> {
        self.check_mode(mode)?;
        check_transmission(t)?;
        let n = self.n_modes();
        let mixed = self.with_vacuum_ancillas(1)?.beamsplitter(mode, n, t)?;
        let keep: Vec<usize> = (0..n).collect();
        mixed.reduce(&keep)
    }

    /// Closed form of [`GaussianState::pure_loss`]: the mode's block goes to
    /// `t·block + (1-t)/4·I`, its cross-covariances and mean scale by `√t`.
    pub fn pure_loss_closed_form(&self, mode: usize, t: f64) -> Result<Self> {
        self.check_mode(mode)?;
        check_transmission(t)?;
        let sqrt_t = t.sqrt();
        let in_mode = |i: usize| i / 2 == mode;
        let dim = self.mean.len();
        let mean = DVector::from_fn(dim, |i, _| {
            if in_mode(i) {
                sqrt_t * self.mean[i]
            } else {
                self.mean[i]
            }
        });
        let cov = DMatrix::from_fn(dim, dim, |r, c| {
            let v = self.cov[(r, c)];
            match (in_mode(r), in_mode(c)) {
                (true, true) => t * v + if r == c { (1.0 - t) * VACUUM_VARIANCE } else { 0.0 },
                (true, false) | (false, true) => sqrt_t * v,
                (false, false) => v,
            }
        });
        Ok(GaussianState { mean, cov })
    }

    /// `coeffsᵀ · cov · coeffs`, with rounding-level negatives clamped to zero.
    pub fn linear_combination_variance(&self, coeffs: &[f64]) -> Result<f64> {
        let v = self.covariance_between(coeffs, coeffs)?;
        Ok(if v < 0.0 && v > -1e-12 { 0.0 } else { v })
    }

    /// `aᵀ · cov · b`.
    pub fn covariance_between(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        self.check_coeffs(a)?;
        self.check_coeffs(b)?;
        let mut acc = 0.0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                acc += ai * self.cov[(i, j)] * bj;
            }
        }
        Ok(acc)
    }

    /// `coeffs · mean`.
    pub fn linear_combination_mean(&self, coeffs: &[f64]) -> Result<f64> {
        self.check_coeffs(coeffs)?;
        Ok(coeffs.iter().zip(self.mean.iter()).map(|(c, m)| c * m).sum())
    }

    /// Largest entrywise `|cov - covᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        (&self.cov - self.cov.transpose()).amax()
    }

    pub fn min_covariance_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.cov.clone()).eigenvalues.min()
    }

    /// Smallest eigenvalue of the Hermitian matrix `cov + (i/4)Ω`.
    /// Non-negative (to rounding) exactly when the state is physical.
    pub fn physicality_margin(&self) -> f64 {
        // Real embedding of V + iW: [[V, -W], [W, V]] has the same spectrum, doubled.
        let dim = self.mean.len();
        let w = symplectic_form(self.n_modes()) * VACUUM_VARIANCE;
        let mut embed = DMatrix::zeros(2 * dim, 2 * dim);
        embed.view_mut((0, 0), (dim, dim)).copy_from(&self.cov);
        embed.view_mut((dim, dim), (dim, dim)).copy_from(&self.cov);
        embed.view_mut((0, dim), (dim, dim)).copy_from(&(-&w));
        embed.view_mut((dim, 0), (dim, dim)).copy_from(&w);
        SymmetricEigen::new(embed).eigenvalues.min()
    }

    pub fn is_physical(&self) -> bool {
        self.physicality_margin() >= -EIGEN_TOL
    }

    /// `det(4·cov)`: 1 for pure states, > 1 for mixed ones.
    pub fn purity_determinant(&self) -> f64 {
        (&self.cov * (1.0 / VACUUM_VARIANCE)).determinant()
    }

    /// Largest entrywise difference in mean and covariance.
    pub fn max_abs_diff(&self, other: &GaussianState) -> f64 {
        if self.mean.len() != other.mean.len() {
            return f64::INFINITY;
        }
        (&self.mean - &other.mean)
            .amax()
            .max((&self.cov - &other.cov).amax())
    }
}

fn check_transmission(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::TransmissionOutOfRange(t));
    }
    Ok(())
}

/// Block-diagonal `Ω = ⊕ [[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for m in 0..n_modes {
        omega[(x_index(m), p_index(m))] = 1.0;
        omega[(p_index(m), x_index(m))] = -1.0;
    }
    omega
}

/// Symplectic matrix of a beamsplitter acting on modes `a`, `b`.
pub fn beamsplitter_matrix(n_modes: usize, a: usize, b: usize, t: f64) -> DMatrix<f64> {
    let dim = 2 * n_modes;
    let (st, sr) = (t.sqrt(), (1.0 - t).sqrt());
    let mut s = DMatrix::identity(dim, dim);
    for (ia, ib) in [(x_index(a), x_index(b)), (p_index(a), p_index(b))] {
        s[(ia, ia)] = st;
        s[(ia, ib)] = sr;
        s[(ib, ia)] = -sr;
        s[(ib, ib)] = st;
    }
    s
}
