use num_complex::Complex64;

use crate::error::{JsrError, Result};

/// Default cap on the dimension of a Kronecker product.
pub const DEFAULT_KRON_CAP: usize = 4096;

/// Dense square complex matrix with value semantics.
///
/// Entries are stored row-major. All constructors reject non-finite entries
/// and the 0x0 matrix; every operation returns a fresh value and never
/// mutates its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

/// Result of the Gelfand-formula spectral radius iteration.
///
/// `value` is always an upper estimate derived from norms of repeated
/// squares; when `converged` is false the iteration budget ran out and
/// `error_bound` reports the last observed step size instead of a tight one.
#[derive(Debug, Clone, Copy)]
pub struct SpectralRadiusEstimate {
    pub value: f64,
    pub error_bound: f64,
    pub converged: bool,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(JsrError::InvalidMatrix("0x0 matrices are rejected".into()));
        }
        Ok(CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Matrix unit E_ij (1 at row i, column j).
    pub fn matrix_unit(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim {
            return Err(JsrError::InvalidMatrix(format!(
                "matrix unit index ({i},{j}) out of range for dim {dim}"
            )));
        }
        let mut m = Self::zeros(dim)?;
        m.data[i * dim + j] = Complex64::new(1.0, 0.0);
        Ok(m)
    }

    pub fn diag(entries: &[Complex64]) -> Result<Self> {
        let mut m = Self::zeros(entries.len())?;
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = e;
        }
        m.validate()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(JsrError::InvalidMatrix("0x0 matrices are rejected".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(JsrError::InvalidMatrix(format!(
                    "row of length {} in a {dim}x{dim} matrix",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        let m = CMatrix { dim, data };
        m.validate()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    fn validate(&self) -> Result<()> {
        for z in &self.data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(JsrError::InvalidMatrix("non-finite entry".into()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Exact floating product AB; dimension mismatch is a usage error.
    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(JsrError::DimensionMismatch(format!(
                "matmul of {}x{0} with {}x{1}",
                self.dim, other.dim
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &CMatrix) -> CMatrix {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let dst = &mut out[i * d..(i + 1) * d];
                for j in 0..d {
                    dst[j] += a * row[j];
                }
            }
        }
        CMatrix { dim: d, data: out }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(JsrError::DimensionMismatch("add of different dims".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn transpose(&self) -> CMatrix {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j];
            }
        }
        CMatrix { dim: d, data }
    }

    pub fn adjoint(&self) -> CMatrix {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        CMatrix { dim: d, data }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn norm_one(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|i| self.data[i * d + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn norm_inf(&self) -> f64 {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.data[i * d + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Cheap upper bound on the spectral norm:
    /// min(Frobenius, sqrt(norm_1 * norm_inf)).
    pub fn op_norm_upper(&self) -> f64 {
        self.frobenius()
            .min((self.norm_one() * self.norm_inf()).sqrt())
    }

    /// Spectral norm (largest singular value).
    ///
    /// Power iteration on A^H A from the renormalized all-ones vector,
    /// 1e-12 tolerance on the Rayleigh quotient, at most 1000 iterations,
    /// with one deterministic perturbed restart on stagnation. The matrix is
    /// pre-scaled by an exact power of two when entries leave [1e-100, 1e100].
    pub fn op_norm(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 {
            return 0.0;
        }
        let scale = if m > 1e100 || m < 1e-100 {
            m.log2().ceil().exp2()
        } else {
            1.0
        };
        let a = if scale != 1.0 {
            self.scale(Complex64::new(1.0 / scale, 0.0))
        } else {
            self.clone()
        };
        let d = a.dim;

        let ones: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); d];
        // Fixed perturbation pattern so restarts stay deterministic.
        let perturbed: Vec<Complex64> = (0..d)
            .map(|i| {
                Complex64::new(
                    1.0 + 0.25 * ((i * 7 + 3) % 11) as f64 / 11.0,
                    0.125 * ((i * 5 + 1) % 7) as f64 / 7.0,
                )
            })
            .collect();

        let (lambda, stagnated) = a.power_iteration(&ones);
        let mut best = lambda;
        if stagnated || lambda == 0.0 {
            let (retry, _) = a.power_iteration(&perturbed);
            best = best.max(retry);
        }
        best.sqrt() * scale
    }

    /// One power-iteration run on A^H A. Returns the best Rayleigh quotient
    /// seen and whether the run stagnated (Rayleigh change below tolerance
    /// while the eigen-residual stayed large, or a start in the kernel).
    fn power_iteration(&self, start: &[Complex64]) -> (f64, bool) {
        let mut v = start.to_vec();
        normalize(&mut v);
        let mut lambda_prev = -1.0f64;
        let mut best = 0.0f64;
        let mut stagnated = false;
        for _ in 0..1000 {
            let av = self.apply(&v);
            let lambda: f64 = av.iter().map(|z| z.norm_sqr()).sum();
            best = best.max(lambda);
            let mut w = self.apply_adjoint(&av);
            if (lambda - lambda_prev).abs() <= 1e-12 * lambda.max(f64::MIN_POSITIVE) {
                let residual: f64 = w
                    .iter()
                    .zip(&v)
                    .map(|(wi, vi)| (wi - vi * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                stagnated = residual > 1e-8 * lambda.max(f64::MIN_POSITIVE);
                break;
            }
            lambda_prev = lambda;
            let nw: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nw == 0.0 {
                stagnated = true;
                break;
            }
            for z in &mut w {
                *z /= nw;
            }
            v = w;
        }
        (best, stagnated)
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..d {
                acc += self.data[i * d + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                acc += self.data[i * d + j].conj() * v[i];
            }
            out[j] = acc;
        }
        out
    }

    /// Spectral radius by scaled repeated squaring (Gelfand formula).
    ///
    /// Computes A <- A^2 / s with a running log-scale accumulator, up to 40
    /// squarings, and reports ||A^(2^k)||^(1/2^k) * scale. Entries are
    /// renormalized to unit max-magnitude at every squaring, so overflow
    /// cannot occur. Nilpotent inputs terminate exactly at zero.
    pub fn spectral_radius_estimate(&self) -> SpectralRadiusEstimate {
        const MAX_SQUARINGS: i32 = 40;
        let m0 = self.max_abs();
        if m0 == 0.0 {
            return SpectralRadiusEstimate {
                value: 0.0,
                error_bound: 0.0,
                converged: true,
            };
        }
        let mut a = self.scale(Complex64::new(1.0 / m0, 0.0));
        // Invariant: original^(2^k) = a * exp(t).
        let mut t = m0.ln();
        let mut prev = (a.frobenius().ln() + t).exp();
        let mut delta = f64::INFINITY;
        for k in 1..=MAX_SQUARINGS {
            let sq = a.mul_unchecked(&a);
            let m = sq.max_abs();
            if m == 0.0 {
                return SpectralRadiusEstimate {
                    value: 0.0,
                    error_bound: 0.0,
                    converged: true,
                };
            }
            a = sq.scale(Complex64::new(1.0 / m, 0.0));
            t = 2.0 * t + m.ln();
            let est = ((a.frobenius().ln() + t) / (k as f64).exp2()).exp();
            delta = (prev - est).abs();
            if k >= 6 && delta <= 1e-10 * est.max(1e-300) {
                return SpectralRadiusEstimate {
                    value: est,
                    error_bound: 2.0 * delta + 1e-14 * est,
                    converged: true,
                };
            }
            prev = est;
        }
        SpectralRadiusEstimate {
            value: prev,
            error_bound: 2.0 * delta + 1e-14 * prev,
            converged: false,
        }
    }

    /// Spectral radius (max eigenvalue modulus); see `spectral_radius_estimate`.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius_estimate().value
    }

    /// Kronecker product with the default dimension cap.
    pub fn kron(&self, other: &CMatrix) -> Result<CMatrix> {
        self.kron_with_cap(other, DEFAULT_KRON_CAP)
    }

    pub fn kron_with_cap(&self, other: &CMatrix, cap: usize) -> Result<CMatrix> {
        let dim = self
            .dim
            .checked_mul(other.dim)
            .filter(|&d| d <= cap)
            .ok_or(JsrError::KroneckerCap {
                dim: self.dim.saturating_mul(other.dim),
                cap,
            })?;
        let (p, q) = (self.dim, other.dim);
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..p {
            for j in 0..p {
                let a = self.data[i * p + j];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for r in 0..q {
                    for s in 0..q {
                        data[(i * q + r) * dim + (j * q + s)] = a * other.data[r * q + s];
                    }
                }
            }
        }
        Ok(CMatrix { dim, data })
    }
}

fn normalize(v: &mut [Complex64]) {
    let n: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in v {
            *z /= n;
        }
    }
}
