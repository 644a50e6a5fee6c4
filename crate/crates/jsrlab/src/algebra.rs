//! Finite-dimensional associative algebras given by structure constants
//! (b_i b_j = sum_k c[i][j][k] b_k), with multiplication operators,
//! unitization, Jacobson radical, centre, ideals and quotients, and JSR of
//! element sets computed through the left regular representation on the
//! unitization.
//!
//! Everything here is deliberately finite-dimensional: every ideal of such
//! an algebra is admissible in the quotient-based JSR identities, and the
//! Jacobson radical coincides with the largest nilpotent ideal, computable
//! in characteristic zero by the trace criterion
//! `x in Rad(A)  iff  trace(L_{xa}) = 0 for all a in A^1`.

use num_complex::Complex64;

use crate::error::{JsrError, Result};
use crate::jsr::{self, Enclosure, MatrixSet};
use crate::linalg::{self, Rect};
use crate::matrix::CMatrix;

const IDEAL_TOL: f64 = 1e-8;

/// Coordinate vector of an algebra element in the chosen basis.
pub type Element = Vec<Complex64>;

/// Associative algebra over C presented by structure constants.
#[derive(Debug, Clone)]
pub struct StructureAlgebra {
    dim: usize,
    /// c[(i*dim + j)*dim + k]: coefficient of b_k in b_i * b_j.
    constants: Vec<Complex64>,
    basis_labels: Option<Vec<String>>,
}

impl StructureAlgebra {
    pub fn new(
        dim: usize,
        constants: Vec<Complex64>,
        basis_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(JsrError::Schema("algebra dimension must be >= 1".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(JsrError::Schema(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if constants
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(JsrError::Schema("non-finite structure constant".into()));
        }
        if let Some(labels) = &basis_labels {
            if labels.len() != dim {
                return Err(JsrError::Schema(
                    "basis_labels length must equal dim".into(),
                ));
            }
        }
        Ok(StructureAlgebra {
            dim,
            constants,
            basis_labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    #[inline]
    pub fn sc(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[Complex64] {
        &self.constants
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dim];
        e[i] = Complex64::new(1.0, 0.0);
        e
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Complex64], y: &[Complex64]) -> Element {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            if x[i].re == 0.0 && x[i].im == 0.0 {
                continue;
            }
            for j in 0..d {
                let f = x[i] * y[j];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out[k] += f * self.sc(i, j, k);
                }
            }
        }
        out
    }

    /// Checks (b_i b_j) b_l = b_i (b_j b_l) for all triples; returns whether
    /// every associator residual stays below 1e-9, plus the max residual.
    pub fn check_associativity(&self) -> (bool, f64) {
        let d = self.dim;
        let mut max_residual = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&self.basis_element(i), &self.basis_element(j));
                for l in 0..d {
                    let lhs = self.multiply(&ij, &self.basis_element(l));
                    let jl = self.multiply(&self.basis_element(j), &self.basis_element(l));
                    let rhs = self.multiply(&self.basis_element(i), &jl);
                    for k in 0..d {
                        max_residual = max_residual.max((lhs[k] - rhs[k]).norm());
                    }
                }
            }
        }
        (max_residual <= 1e-9, max_residual)
    }

    /// Matrix of left multiplication: (L_a x)_k = sum_j (L_a)[k][j] x_j.
    pub fn left_mult_matrix(&self, a: &[Complex64]) -> CMatrix {
        let d = self.dim;
        let mut m = CMatrix::zeros(d).expect("dim >= 1");
        for k in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    acc += a[i] * self.sc(i, j, k);
                }
                m.set(k, j, acc);
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, a: &[Complex64]) -> CMatrix {
        let d = self.dim;
        let mut m = CMatrix::zeros(d).expect("dim >= 1");
        for k in 0..d {
            for i in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    acc += a[j] * self.sc(i, j, k);
                }
                m.set(k, i, acc);
            }
        }
        m
    }

    /// Left and right multiplication matrices of an element.
    pub fn mult_matrices(&self, a: &[Complex64]) -> (CMatrix, CMatrix) {
        (self.left_mult_matrix(a), self.right_mult_matrix(a))
    }

    /// Solves L_e = R_e = I; `Some` when a two-sided unit exists (residual
    /// below 1e-9 on the stacked linear system).
    pub fn find_unit(&self) -> Option<Element> {
        let d = self.dim;
        let mut sys = Rect::zeros(2 * d * d, d);
        let mut rhs = vec![Complex64::new(0.0, 0.0); 2 * d * d];
        for j in 0..d {
            for k in 0..d {
                let row = j * d + k;
                for i in 0..d {
                    sys.set(row, i, self.sc(i, j, k));
                }
                if j == k {
                    rhs[row] = Complex64::new(1.0, 0.0);
                }
            }
        }
        for i in 0..d {
            for k in 0..d {
                let row = d * d + i * d + k;
                for j in 0..d {
                    sys.set(row, j, self.sc(i, j, k));
                }
                if i == k {
                    rhs[row] = Complex64::new(1.0, 0.0);
                }
            }
        }
        let (e, residual) = linalg::lstsq(&sys, &rhs);
        let scale = (2.0 * d as f64).sqrt();
        if residual <= 1e-9 * scale.max(1.0) {
            Some(e)
        } else {
            None
        }
    }

    /// Adjoins a two-sided unit (as the last basis element) unless the
    /// algebra already has one, in which case the algebra is returned as-is.
    pub fn unitize(&self) -> Unitization {
        if let Some(unit) = self.find_unit() {
            return Unitization {
                algebra: self.clone(),
                unit,
                extended: false,
            };
        }
        let d = self.dim;
        let nd = d + 1;
        let mut constants = vec![Complex64::new(0.0, 0.0); nd * nd * nd];
        let idx = |i: usize, j: usize, k: usize| (i * nd + j) * nd + k;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    constants[idx(i, j, k)] = self.sc(i, j, k);
                }
            }
        }
        for i in 0..nd {
            constants[idx(i, d, i)] += Complex64::new(1.0, 0.0);
            if i < d {
                constants[idx(d, i, i)] += Complex64::new(1.0, 0.0);
            }
        }
        let labels = self.basis_labels.as_ref().map(|ls| {
            let mut ls = ls.clone();
            ls.push("1".into());
            ls
        });
        let algebra = StructureAlgebra {
            dim: nd,
            constants,
            basis_labels: labels,
        };
        let mut unit = vec![Complex64::new(0.0, 0.0); nd];
        unit[d] = Complex64::new(1.0, 0.0);
        Unitization {
            algebra,
            unit,
            extended: true,
        }
    }

    /// Jacobson radical: the largest nilpotent ideal, computed as the
    /// kernel of the trace form x -> (trace(L_{x b_j}))_j over the
    /// unitization. Nilpotency of the result is verified.
    pub fn jacobson_radical(&self) -> Result<IdealBasis> {
        let unitization = self.unitize();
        let b = &unitization.algebra;
        let da = self.dim;
        let db = b.dim();
        // trace(L_m) for each basis element m of B.
        let tvec: Vec<Complex64> = (0..db)
            .map(|m| {
                let mut t = Complex64::new(0.0, 0.0);
                for k in 0..db {
                    t += b.sc(m, k, k);
                }
                t
            })
            .collect();
        let mut sys = Rect::zeros(db, da);
        for i in 0..da {
            let ei = embed(&self.basis_element(i), db);
            for j in 0..db {
                let p = b.multiply(&ei, &b.basis_element(j));
                let mut entry = Complex64::new(0.0, 0.0);
                for m in 0..db {
                    entry += p[m] * tvec[m];
                }
                sys.set(j, i, entry);
            }
        }
        let kernel = linalg::kernel_basis(&sys)?;
        let ideal = IdealBasis::new(self, kernel)?;
        self.verify_nilpotent(&ideal)?;
        Ok(ideal)
    }

    fn verify_nilpotent(&self, ideal: &IdealBasis) -> Result<()> {
        let mut chain: Vec<Element> = ideal.basis().to_vec();
        for _ in 0..self.dim {
            if chain.is_empty() {
                return Ok(());
            }
            let mut products = Vec::new();
            for v in &chain {
                for w in ideal.basis() {
                    products.push(self.multiply(v, w));
                }
            }
            chain = linalg::orthonormalize(&products, IDEAL_TOL);
        }
        if chain.is_empty() {
            Ok(())
        } else {
            Err(JsrError::InvalidIdeal {
                residual: 1.0,
                tolerance: IDEAL_TOL,
            })
        }
    }

    /// Largest ideal commutative modulo the radical:
    /// {x : x[b_i, b_j] in Rad(A) for all basis pairs}, a linear kernel.
    pub fn rcq_a_ideal(&self) -> Result<IdealBasis> {
        let rad = self.jacobson_radical()?;
        let d = self.dim;
        let complement = linalg::complement_basis(rad.basis(), d);
        let qdim = complement.len();
        if qdim == 0 {
            // Nilpotent algebra: everything is commutative modulo Rad = A.
            return IdealBasis::new(self, (0..d).map(|i| self.basis_element(i)).collect());
        }
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let bi = self.basis_element(i);
                let bj = self.basis_element(j);
                let mut com = self.multiply(&bi, &bj);
                let ji = self.multiply(&bj, &bi);
                for (c, x) in com.iter_mut().zip(&ji) {
                    *c -= x;
                }
                // Map x -> coordinates of (x * com) off the radical.
                for u in &complement {
                    let mut row = vec![Complex64::new(0.0, 0.0); d];
                    for (p, slot) in row.iter_mut().enumerate() {
                        let prod = self.multiply(&self.basis_element(p), &com);
                        *slot = linalg::dot(u, &prod);
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            // Commutative algebra: the whole algebra qualifies.
            return IdealBasis::new(self, (0..d).map(|i| self.basis_element(i)).collect());
        }
        let mut sys = Rect::zeros(rows.len(), d);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                sys.set(r, c, *v);
            }
        }
        let kernel = linalg::kernel_basis(&sys)?;
        let ideal = IdealBasis::new(self, kernel)?;
        if !ideal.contains_subspace(rad.basis(), IDEAL_TOL) {
            return Err(JsrError::InvalidIdeal {
                residual: 1.0,
                tolerance: IDEAL_TOL,
            });
        }
        Ok(ideal)
    }

    /// Centre: kernel of x -> L_x - R_x (orthonormal subspace basis).
    pub fn center(&self) -> Result<Vec<Element>> {
        let d = self.dim;
        let mut sys = Rect::zeros(d * d, d);
        for k in 0..d {
            for j in 0..d {
                let row = k * d + j;
                for i in 0..d {
                    sys.set(row, i, self.sc(i, j, k) - self.sc(j, i, k));
                }
            }
        }
        linalg::kernel_basis(&sys)
    }

    /// Quotient by a two-sided ideal: the induced algebra on an orthonormal
    /// complement, together with the projection map (rows = complement
    /// coordinates). The projection is multiplicative because the ideal
    /// absorbs all cross terms.
    pub fn quotient(&self, ideal: &IdealBasis) -> Result<(StructureAlgebra, Rect)> {
        if ideal.parent_dim() != self.dim {
            return Err(JsrError::Usage(
                "ideal belongs to a different algebra".into(),
            ));
        }
        let d = self.dim;
        let complement = linalg::complement_basis(ideal.basis(), d);
        let qd = complement.len();
        if qd == 0 {
            return Err(JsrError::Usage(
                "quotient by the whole algebra is empty".into(),
            ));
        }
        let mut proj = Rect::zeros(qd, d);
        for (r, u) in complement.iter().enumerate() {
            for c in 0..d {
                proj.set(r, c, u[c].conj());
            }
        }
        let mut constants = vec![Complex64::new(0.0, 0.0); qd * qd * qd];
        for i in 0..qd {
            for j in 0..qd {
                let p = self.multiply(&complement[i], &complement[j]);
                for (k, u) in complement.iter().enumerate() {
                    constants[(i * qd + j) * qd + k] = linalg::dot(u, &p);
                }
            }
        }
        let quotient = StructureAlgebra {
            dim: qd,
            constants,
            basis_labels: None,
        };
        Ok((quotient, proj))
    }

    /// Spectral radius of a single element through the regular
    /// representation on the unitization.
    pub fn element_spectral_radius(&self, a: &[Complex64]) -> f64 {
        let unitization = self.unitize();
        let b = &unitization.algebra;
        b.left_mult_matrix(&embed(a, b.dim())).spectral_radius()
    }

    /// The matrix set {L_a on A^1 : a in elements}; the faithful norm
    /// behind `algebra_jsr`.
    pub fn regular_set(&self, elements: &[Element]) -> Result<MatrixSet> {
        if elements.is_empty() {
            return Err(JsrError::Usage(
                "algebra_jsr requires a nonempty element list".into(),
            ));
        }
        if elements.iter().any(|a| a.len() != self.dim) {
            return Err(JsrError::DimensionMismatch(
                "element coordinates must match the algebra dimension".into(),
            ));
        }
        let unitization = self.unitize();
        let b = &unitization.algebra;
        let members = elements
            .iter()
            .map(|a| b.left_mult_matrix(&embed(a, b.dim())))
            .collect();
        MatrixSet::new(members)
    }

    /// JSR enclosure of a set of algebra elements via the regular
    /// representation (rho(L_M) = rho(M), and the norm a -> ||L_a on A^1||
    /// is submultiplicative and faithful).
    pub fn algebra_jsr(&self, elements: &[Element], depth: usize, delta: f64) -> Result<Enclosure> {
        jsr::jsr_enclosure(&self.regular_set(elements)?, depth, delta)
    }

    // Built-in constructors used across the test suites.

    /// Full matrix algebra M_n(C); basis E_ij in row-major order.
    pub fn full_matrix(n: usize) -> StructureAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::from_matrix_units(n, pairs)
    }

    /// Upper triangular algebra T_n(C); basis E_ij, i <= j.
    pub fn upper_triangular(n: usize) -> StructureAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Self::from_matrix_units(n, pairs)
    }

    /// Strictly upper triangular (nilpotent) algebra N_n(C); basis E_ij, i < j.
    pub fn strictly_upper(n: usize) -> StructureAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_matrix_units(n, pairs)
    }

    /// Commutative algebra C^n (diagonal matrices).
    pub fn diagonal(n: usize) -> StructureAlgebra {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        Self::from_matrix_units(n, pairs)
    }

    /// Algebra with identically zero multiplication (a null ideal summand).
    pub fn null_algebra(n: usize) -> StructureAlgebra {
        StructureAlgebra {
            dim: n,
            constants: vec![Complex64::new(0.0, 0.0); n * n * n],
            basis_labels: None,
        }
    }

    fn from_matrix_units(_n: usize, pairs: Vec<(usize, usize)>) -> StructureAlgebra {
        let d = pairs.len();
        let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
        let mut constants = vec![Complex64::new(0.0, 0.0); d * d * d];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if j == k {
                    if let Some(c) = index((i, l)) {
                        constants[(a * d + b) * d + c] = Complex64::new(1.0, 0.0);
                    }
                }
            }
        }
        let labels = pairs
            .iter()
            .map(|&(i, j)| format!("e{}{}", i + 1, j + 1))
            .collect();
        StructureAlgebra {
            dim: d,
            constants,
            basis_labels: Some(labels),
        }
    }

    /// Direct sum with componentwise multiplication and no cross terms.
    pub fn direct_sum(&self, other: &StructureAlgebra) -> StructureAlgebra {
        let da = self.dim;
        let db = other.dim;
        let d = da + db;
        let mut constants = vec![Complex64::new(0.0, 0.0); d * d * d];
        for i in 0..da {
            for j in 0..da {
                for k in 0..da {
                    constants[(i * d + j) * d + k] = self.sc(i, j, k);
                }
            }
        }
        for i in 0..db {
            for j in 0..db {
                for k in 0..db {
                    constants[((da + i) * d + (da + j)) * d + (da + k)] = other.sc(i, j, k);
                }
            }
        }
        StructureAlgebra {
            dim: d,
            constants,
            basis_labels: None,
        }
    }
}

/// Result of adjoining a unit: the (possibly unchanged) algebra, the unit
/// element coordinates, and whether the dimension grew by one.
#[derive(Debug, Clone)]
pub struct Unitization {
    pub algebra: StructureAlgebra,
    pub unit: Element,
    pub extended: bool,
}

/// Embeds an element of A into the unitization coordinate space.
pub fn embed(a: &[Complex64], target_dim: usize) -> Element {
    let mut out = vec![Complex64::new(0.0, 0.0); target_dim];
    out[..a.len()].copy_from_slice(a);
    out
}

/// Orthonormal basis of a two-sided ideal of a structure algebra.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    parent_dim: usize,
    basis: Vec<Element>,
}

impl IdealBasis {
    /// Orthonormalizes the vectors and verifies two-sidedness:
    /// the residual of A*J and J*A off span(J) must stay below 1e-8.
    pub fn new(algebra: &StructureAlgebra, vectors: Vec<Element>) -> Result<IdealBasis> {
        if vectors.iter().any(|v| v.len() != algebra.dim()) {
            return Err(JsrError::DimensionMismatch(
                "ideal vectors must match the algebra dimension".into(),
            ));
        }
        let basis = linalg::orthonormalize(&vectors, IDEAL_TOL);
        let ideal = IdealBasis {
            parent_dim: algebra.dim(),
            basis,
        };
        let residual = ideal.closure_residual(algebra);
        if residual > IDEAL_TOL {
            return Err(JsrError::InvalidIdeal {
                residual,
                tolerance: IDEAL_TOL,
            });
        }
        Ok(ideal)
    }

    fn closure_residual(&self, algebra: &StructureAlgebra) -> f64 {
        let mut worst = 0.0f64;
        for v in &self.basis {
            for i in 0..algebra.dim() {
                let e = algebra.basis_element(i);
                for p in [algebra.multiply(&e, v), algebra.multiply(v, &e)] {
                    let off = self.project_out(&p);
                    let norm = linalg::vec_norm(&p);
                    if norm > IDEAL_TOL {
                        worst = worst.max(linalg::vec_norm(&off) / norm.max(1.0));
                    } else {
                        worst = worst.max(linalg::vec_norm(&off));
                    }
                }
            }
        }
        worst
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Component of x orthogonal to the ideal span.
    pub fn project_out(&self, x: &[Complex64]) -> Element {
        let mut out = x.to_vec();
        for b in &self.basis {
            let c = linalg::dot(b, &out);
            for (oi, bi) in out.iter_mut().zip(b) {
                *oi -= c * bi;
            }
        }
        out
    }

    /// Every vector of `others` lies in this ideal's span up to `tol`.
    pub fn contains_subspace(&self, others: &[Element], tol: f64) -> bool {
        others.iter().all(|v| {
            let n = linalg::vec_norm(v);
            n == 0.0 || linalg::vec_norm(&self.project_out(v)) <= tol * n.max(1.0)
        })
    }
}
