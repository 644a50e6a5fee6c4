//! Small dense helpers behind the algebra module: a Jacobi eigensolver for
//! Hermitian matrices, kernel computation with a relative singular-value
//! cutoff, and Gram-Schmidt utilities on coordinate vectors in C^n.

use num_complex::Complex64;

use crate::error::{JsrError, Result};
use crate::matrix::CMatrix;

/// Relative singular-value cutoff for rank decisions.
pub const RANK_CUTOFF: f64 = 1e-8;

/// Rectangular complex matrix, row-major. Only what the kernel/least-squares
/// computations need; square matrices stay in `CMatrix`.
#[derive(Debug, Clone)]
pub struct Rect {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Rect {
    pub fn zeros(rows: usize, cols: usize) -> Rect {
        Rect {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.data[i * self.cols + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// A^H A as a square Hermitian matrix.
    fn gram(&self) -> CMatrix {
        let n = self.cols;
        let mut g = CMatrix::zeros(n).expect("cols >= 1");
        for a in 0..n {
            for b in a..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..self.rows {
                    acc += self.get(i, a).conj() * self.get(i, b);
                }
                g.set(a, b, acc);
                if a != b {
                    g.set(b, a, acc.conj());
                }
            }
        }
        g
    }
}

/// Eigenvalues (ascending) and a unitary matrix of eigenvectors (columns)
/// of a Hermitian matrix, by cyclic complex Jacobi rotations.
pub fn hermitian_eig(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let d = a.dim();
    let mut m = a.clone();
    let mut v = CMatrix::identity(d).expect("dim >= 1");
    let scale = m.frobenius();
    if scale > 0.0 {
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..d {
                for q in (p + 1)..d {
                    off += m.get(p, q).norm_sqr();
                }
            }
            if off.sqrt() <= 1e-14 * scale {
                break;
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    jacobi_rotate(&mut m, &mut v, p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..d).collect();
    let evals: Vec<f64> = (0..d).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&x, &y| evals[x].partial_cmp(&evals[y]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut vs = CMatrix::zeros(d).expect("dim >= 1");
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..d {
            vs.set(r, new_col, v.get(r, old_col));
        }
    }
    (sorted, vs)
}

fn jacobi_rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m.get(p, p).re;
    let aqq = m.get(q, q).re;
    // Phase factor turning the 2x2 block real symmetric.
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(phase, 1) * [[c, s], [-s, c]] zeroes the (p,q) entry.
    let upp = phase * c;
    let upq = phase * s;
    let uqp = Complex64::new(-s, 0.0);
    let uqq = Complex64::new(c, 0.0);

    let d = m.dim();
    // A <- U^H A U.
    for k in 0..d {
        let akp = m.get(k, p);
        let akq = m.get(k, q);
        m.set(k, p, akp * upp + akq * uqp);
        m.set(k, q, akp * upq + akq * uqq);
    }
    for k in 0..d {
        let apk = m.get(p, k);
        let aqk = m.get(q, k);
        m.set(p, k, upp.conj() * apk + uqp.conj() * aqk);
        m.set(q, k, upq.conj() * apk + uqq.conj() * aqk);
    }
    // The rotation zeroes the pivot pair; pin it against rounding noise.
    m.set(p, q, Complex64::new(0.0, 0.0));
    m.set(q, p, Complex64::new(0.0, 0.0));
    m.set(p, p, Complex64::new(m.get(p, p).re, 0.0));
    m.set(q, q, Complex64::new(m.get(q, q).re, 0.0));

    for k in 0..d {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * upp + vkq * uqp);
        v.set(k, q, vkp * upq + vkq * uqq);
    }
}

/// Largest singular value of a rectangular matrix.
pub fn sigma_max(m: &Rect) -> f64 {
    let (evals, _) = hermitian_eig(&m.gram());
    evals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Orthonormal basis of the (numerical) kernel of `m`.
///
/// Rank decisions use the relative cutoff `RANK_CUTOFF` on singular values;
/// residuals are measured directly through `m` to avoid the precision loss
/// of the Gram matrix. Residual ratios falling in the ambiguity band
/// (1e-10, 1e-6) x sigma_max produce an `AmbiguousRank` error.
pub fn kernel_basis(m: &Rect) -> Result<Vec<Vec<Complex64>>> {
    let n = m.cols();
    let (evals, vecs) = hermitian_eig(&m.gram());
    let smax = evals.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    if smax == 0.0 {
        // The zero map: the whole space is the kernel.
        return Ok((0..n)
            .map(|i| {
                let mut e = vec![Complex64::new(0.0, 0.0); n];
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect());
    }
    let mut kernel = Vec::new();
    for (idx, ev) in evals.iter().enumerate() {
        let sigma_gram = ev.max(0.0).sqrt();
        // Generous pre-filter from the Gram spectrum; exact decision below.
        if sigma_gram > 1e-4 * smax {
            continue;
        }
        let v: Vec<Complex64> = (0..n).map(|r| vecs.get(r, idx)).collect();
        let image = m.apply(&v);
        let residual: f64 = image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let ratio = residual / smax;
        if ratio < RANK_CUTOFF {
            kernel.push(v);
        } else if ratio < 1e-6 {
            return Err(JsrError::AmbiguousRank { ratio });
        }
    }
    Ok(kernel)
}

/// Least-squares solution of `m x = b` through the Gram pseudo-inverse.
/// Returns the solution and the residual norm.
pub fn lstsq(m: &Rect, b: &[Complex64]) -> (Vec<Complex64>, f64) {
    assert_eq!(b.len(), m.rows());
    let n = m.cols();
    let (evals, vecs) = hermitian_eig(&m.gram());
    let emax = evals.last().copied().unwrap_or(0.0).max(0.0);
    // rhs = A^H b.
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..m.rows() {
            acc += m.get(i, j).conj() * b[i];
        }
        rhs[j] = acc;
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        if evals[k] <= (RANK_CUTOFF * RANK_CUTOFF) * emax || evals[k] <= 0.0 {
            continue;
        }
        let mut coef = Complex64::new(0.0, 0.0);
        for r in 0..n {
            coef += vecs.get(r, k).conj() * rhs[r];
        }
        coef /= evals[k];
        for r in 0..n {
            x[r] += vecs.get(r, k) * coef;
        }
    }
    let image = m.apply(&x);
    let residual: f64 = image
        .iter()
        .zip(b)
        .map(|(y, bi)| (y - bi).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (x, residual)
}

pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Modified Gram-Schmidt; vectors whose remainder falls below
/// `drop_tol` times the largest input norm are dropped.
pub fn orthonormalize(vectors: &[Vec<Complex64>], drop_tol: f64) -> Vec<Vec<Complex64>> {
    let scale = vectors.iter().map(|v| vec_norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let n = vec_norm(&w);
        if n > drop_tol * scale {
            for wi in &mut w {
                *wi /= n;
            }
            basis.push(w);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `basis` (orthonormal)
/// inside C^dim, chosen greedily from projected standard basis vectors.
pub fn complement_basis(basis: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let target = dim - basis.len();
    let mut complement: Vec<Vec<Complex64>> = Vec::new();
    while complement.len() < target {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for i in 0..dim {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[i] = Complex64::new(1.0, 0.0);
            for b in basis.iter().chain(complement.iter()) {
                let c = dot(b, &e);
                for (ei, bi) in e.iter_mut().zip(b) {
                    *ei -= c * bi;
                }
            }
            let n = vec_norm(&e);
            if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
                best = Some((n, e));
            }
        }
        let (n, mut e) = best.expect("dim > 0");
        assert!(n > 1e-8, "complement search degenerated");
        for ei in &mut e {
            *ei /= n;
        }
        complement.push(e);
    }
    complement
}
