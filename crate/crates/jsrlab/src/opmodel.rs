//! Exactly solvable operator model: T = lambda*I + K on l^2, with K
//! supported on a finite leading corner. Such operators are block diagonal,
//! (lambda*I_n + K) ⊕ lambda*I, so the operator norm, spectral radius,
//! essential norm and essential JSR are all finite exact computations: the
//! essential quantities see only the scalar part, the finite block carries
//! the compact perturbation. This makes the operator identity
//! rho(M) = max(rho_e(M), r(M)) checkable on the nose.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{JsrError, Result};
use crate::jsr::{self, unit_disc, Enclosure, MatrixSet};
use crate::matrix::CMatrix;

/// Operator lambda*I + P_n K P_n on l^2.
#[derive(Debug, Clone)]
pub struct ScalarPlusCorner {
    lambda: Complex64,
    corner: CMatrix,
}

impl ScalarPlusCorner {
    pub fn new(lambda: Complex64, corner: CMatrix) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(JsrError::InvalidMatrix("non-finite lambda".into()));
        }
        Ok(ScalarPlusCorner { lambda, corner })
    }

    /// Pure scalar operator lambda*I (trivial one-dimensional corner).
    pub fn scalar(lambda: Complex64) -> Self {
        ScalarPlusCorner {
            lambda,
            corner: CMatrix::zeros(1).expect("dim 1"),
        }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn corner(&self) -> &CMatrix {
        &self.corner
    }

    pub fn corner_size(&self) -> usize {
        self.corner.dim()
    }

    /// Zero-pads the corner block; norm- and spectrum-neutral.
    pub fn pad_to(&self, n: usize) -> Self {
        let m = self.corner.dim();
        if n <= m {
            return self.clone();
        }
        let mut corner = CMatrix::zeros(n).expect("n >= 1");
        for i in 0..m {
            for j in 0..m {
                corner.set(i, j, self.corner.get(i, j));
            }
        }
        ScalarPlusCorner {
            lambda: self.lambda,
            corner,
        }
    }

    /// (lambda*I + K)(mu*I + L) = lambda*mu*I + (lambda*L + mu*K + K*L),
    /// corners zero-padded to the common size first.
    pub fn multiply(&self, other: &ScalarPlusCorner) -> ScalarPlusCorner {
        let n = self.corner_size().max(other.corner_size());
        let a = self.pad_to(n);
        let b = other.pad_to(n);
        let kl = a.corner.mul_unchecked(&b.corner);
        let mut corner = CMatrix::zeros(n).expect("n >= 1");
        for i in 0..n {
            for j in 0..n {
                corner.set(
                    i,
                    j,
                    a.lambda * b.corner.get(i, j) + b.lambda * a.corner.get(i, j) + kl.get(i, j),
                );
            }
        }
        ScalarPlusCorner {
            lambda: a.lambda * b.lambda,
            corner,
        }
    }

    /// Faithful finite model: the (n+1)x(n+1) matrix diag(lambda*I_n + K,
    /// lambda). Multiplicative, and norm/spectral-radius-exact for T.
    pub fn embed(&self) -> CMatrix {
        let n = self.corner.dim();
        let mut m = CMatrix::zeros(n + 1).expect("n+1 >= 1");
        for i in 0..n {
            for j in 0..n {
                let mut v = self.corner.get(i, j);
                if i == j {
                    v += self.lambda;
                }
                m.set(i, j, v);
            }
        }
        m.set(n, n, self.lambda);
        m
    }

    /// Essential norm ||pi(T)||: the corner is compact, so only |lambda|
    /// survives in the Calkin algebra.
    pub fn essential_norm(&self) -> f64 {
        self.lambda.norm()
    }

    pub fn op_norm(&self) -> f64 {
        self.embed().op_norm()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.embed().spectral_radius()
    }

    /// Restriction to the corner-free invariant complement: lambda*I.
    pub fn tail_restriction(&self) -> ScalarPlusCorner {
        ScalarPlusCorner::scalar(self.lambda)
    }
}

/// Essential JSR of a family: the Calkin image is the commuting scalar set
/// {lambda_i}, so its JSR is exactly the max modulus.
pub fn essential_jsr(ops: &[ScalarPlusCorner]) -> Result<f64> {
    if ops.is_empty() {
        return Err(JsrError::Usage(
            "essential_jsr requires a nonempty family".into(),
        ));
    }
    Ok(ops.iter().map(|t| t.lambda.norm()).fold(0.0, f64::max))
}

/// Embeds a family into matrices of the common padded size.
pub fn embed_set(ops: &[ScalarPlusCorner]) -> Result<MatrixSet> {
    if ops.is_empty() {
        return Err(JsrError::Usage(
            "embed_set requires a nonempty family".into(),
        ));
    }
    let n = ops.iter().map(|t| t.corner_size()).max().expect("nonempty");
    MatrixSet::new(ops.iter().map(|t| t.pad_to(n).embed()).collect())
}

/// Numerical check of the operator identity rho(M) = max(rho_e(M), r(M)).
#[derive(Debug, Clone, Serialize)]
pub struct OperatorBwReport {
    pub enclosure: Enclosure,
    pub essential_jsr: f64,
    pub bw_lower: f64,
    /// max(essential_jsr, bw_lower): a certified lower bound for rho(M).
    pub rhs_lo: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Computes the enclosure of the embedded family and checks it against the
/// scalar/BW right-hand side: rhs_lo <= hi + tol and lo <= rhs_lo + width +
/// tol, with tol = 1e-6.
pub fn verify_operator_bw(
    ops: &[ScalarPlusCorner],
    depth: usize,
    delta: f64,
) -> Result<OperatorBwReport> {
    let set = embed_set(ops)?;
    let enclosure = jsr::jsr_enclosure(&set, depth, delta)?;
    let essential = essential_jsr(ops)?;
    let bw_lower = set.bw_radius_estimate(depth.min(8))?;
    let rhs_lo = essential.max(bw_lower);
    let tolerance = 1e-6;
    let pass = rhs_lo <= enclosure.hi + tolerance
        && enclosure.lo <= rhs_lo + enclosure.width() + tolerance;
    Ok(OperatorBwReport {
        enclosure,
        essential_jsr: essential,
        bw_lower,
        rhs_lo,
        tolerance,
        pass,
    })
}

/// Seeded instance: lambda in the annulus 0.1 <= |lambda| <= 1, corner
/// entries uniform in the unit disc.
pub fn random_instance(rng: &mut ChaCha8Rng, max_corner: usize) -> ScalarPlusCorner {
    let lambda = loop {
        let z = unit_disc(rng);
        let n = z.norm();
        if (0.1..=1.0).contains(&n) {
            break z;
        }
    };
    let n = rng.gen_range(1..=max_corner.max(1));
    let mut corner = CMatrix::zeros(n).expect("n >= 1");
    for i in 0..n {
        for j in 0..n {
            corner.set(i, j, unit_disc(rng));
        }
    }
    ScalarPlusCorner { lambda, corner }
}

/// Adversarial family: all corners strictly upper triangular, so every
/// corner product is nilpotent and the corners never feed the BW radius.
pub fn nilpotent_corner_instance(rng: &mut ChaCha8Rng, corner: usize) -> ScalarPlusCorner {
    let lambda = loop {
        let z = unit_disc(rng);
        let n = z.norm();
        if (0.1..=1.0).contains(&n) {
            break z;
        }
    };
    let n = corner.max(2);
    let mut k = CMatrix::zeros(n).expect("n >= 2");
    for i in 0..n {
        for j in (i + 1)..n {
            k.set(i, j, unit_disc(rng));
        }
    }
    ScalarPlusCorner { lambda, corner: k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn embed_examples() {
        let t = ScalarPlusCorner::scalar(c(0.3, -0.4));
        let m = t.embed();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(0, 0), c(0.3, -0.4));
        assert_eq!(m.get(1, 1), c(0.3, -0.4));

        let k = CMatrix::from_real_rows(&[vec![0.5, 1.0], vec![0.0, -0.2]]).unwrap();
        let t = ScalarPlusCorner::new(c(0.0, 0.0), k.clone()).unwrap();
        let m = t.embed();
        assert_eq!(m.get(0, 0), c(0.5, 0.0));
        assert_eq!(m.get(0, 1), c(1.0, 0.0));
        assert_eq!(m.get(2, 2), c(0.0, 0.0));

        // lambda = 0.5, K = [1.5]: diag(2, 0.5), rho = ||T|| = 2.
        let t = ScalarPlusCorner::new(c(0.5, 0.0), CMatrix::from_real_rows(&[vec![1.5]]).unwrap())
            .unwrap();
        let m = t.embed();
        assert_eq!(m.get(0, 0), c(2.0, 0.0));
        assert_eq!(m.get(1, 1), c(0.5, 0.0));
        assert!((t.spectral_radius() - 2.0).abs() < 1e-9);
        assert!((t.op_norm() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn essential_norm_examples() {
        let k = CMatrix::from_real_rows(&[vec![3.0, 1.0], vec![0.5, -2.0]]).unwrap();
        assert_eq!(
            ScalarPlusCorner::new(c(0.0, 0.0), k.clone())
                .unwrap()
                .essential_norm(),
            0.0
        );
        assert_eq!(ScalarPlusCorner::scalar(c(3.0, 0.0)).essential_norm(), 3.0);
        let e = ScalarPlusCorner::new(c(0.5, 0.5), k)
            .unwrap()
            .essential_norm();
        assert!((e - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn essential_norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_instance(&mut rng, 3);
            let b = random_instance(&mut rng, 2);
            let lhs = a.multiply(&b).essential_norm();
            let rhs = a.essential_norm() * b.essential_norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-30));
        }
    }

    #[test]
    fn essential_jsr_examples() {
        let k = CMatrix::from_real_rows(&[vec![0.7]]).unwrap();
        let zeros = vec![
            ScalarPlusCorner::new(c(0.0, 0.0), k.clone()).unwrap(),
            ScalarPlusCorner::scalar(c(0.0, 0.0)),
        ];
        assert_eq!(essential_jsr(&zeros).unwrap(), 0.0);

        let single = vec![ScalarPlusCorner::scalar(c(0.0, -0.8))];
        assert!((essential_jsr(&single).unwrap() - 0.8).abs() < 1e-12);

        let fam = vec![
            ScalarPlusCorner::new(c(0.3, 0.0), k.clone()).unwrap(),
            ScalarPlusCorner::new(c(0.9, 0.0), k.clone()).unwrap(),
            ScalarPlusCorner::new(c(0.5, 0.0), k).unwrap(),
        ];
        assert!((essential_jsr(&fam).unwrap() - 0.9).abs() < 1e-12);
    }

    #[test]
    fn embed_is_multiplicative_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fam: Vec<ScalarPlusCorner> = (0..3).map(|_| random_instance(&mut rng, 3)).collect();
        let n = fam.iter().map(|t| t.corner_size()).max().unwrap();
        for _ in 0..20 {
            let len = rng.gen_range(2..=6);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..fam.len())).collect();
            let mut op = fam[word[0]].clone();
            let mut mat = fam[word[0]].pad_to(n).embed();
            for &i in &word[1..] {
                op = op.multiply(&fam[i]);
                mat = mat.mul_unchecked(&fam[i].pad_to(n).embed());
            }
            let emb = op.pad_to(n).embed();
            let mut dev = 0.0f64;
            for (x, y) in emb.entries().iter().zip(mat.entries()) {
                dev = dev.max((x - y).norm());
            }
            assert!(dev <= 1e-10, "deviation {dev}");
        }
    }

    #[test]
    fn operator_bw_scalar_family() {
        let fam = vec![ScalarPlusCorner::scalar(c(0.5, 0.0))];
        let r = verify_operator_bw(&fam, 8, 1e-6).unwrap();
        assert!(r.pass);
        assert!((r.enclosure.lo - 0.5).abs() < 1e-9);
        assert!((r.enclosure.hi - 0.5).abs() < 1e-9);
        assert!((r.rhs_lo - 0.5).abs() < 1e-9);
    }

    #[test]
    fn operator_bw_dominant_corner() {
        // lambda = 0.5 with K = diag(1.5): rho = max(0.5, 2.0) = 2.0.
        let t = ScalarPlusCorner::new(c(0.5, 0.0), CMatrix::from_real_rows(&[vec![1.5]]).unwrap())
            .unwrap();
        let r = verify_operator_bw(&[t], 8, 1e-3).unwrap();
        assert!(r.pass);
        assert!(r.enclosure.contains(2.0));
        assert!((r.rhs_lo - 2.0).abs() < 1e-6);
        assert!((r.essential_jsr - 0.5).abs() < 1e-12);
    }

    #[test]
    fn operator_bw_nilpotent_corners() {
        // Corners stay jointly nilpotent: rho(M) = rho_e(M) = 0.9 while the
        // corner part never contributes to any spectral radius.
        let mut k1 = CMatrix::zeros(2).unwrap();
        k1.set(0, 1, c(0.8, 0.3));
        let mut k2 = CMatrix::zeros(2).unwrap();
        k2.set(0, 1, c(-0.6, 0.1));
        let fam = vec![
            ScalarPlusCorner::new(c(0.9, 0.0), k1).unwrap(),
            ScalarPlusCorner::new(c(0.9, 0.0), k2).unwrap(),
        ];
        // Brute-force r_n over words of length <= 8: every embedded product
        // is triangular with all diagonal entries 0.9^n.
        let set = embed_set(&fam).unwrap();
        for n in 1..=8 {
            let (rn, _) = set.lower_bound_bw(n).unwrap();
            assert!((rn - 0.9).abs() < 1e-8, "r_{n} = {rn}");
        }
        let r = verify_operator_bw(&fam, 10, 1e-3).unwrap();
        assert!(r.pass);
        assert!((r.rhs_lo - 0.9).abs() < 1e-8);
        assert!(r.enclosure.lo <= 0.9 + 1e-9 && 0.9 <= r.enclosure.hi + 1e-9);
        assert!(r.enclosure.width() < 0.01);
    }

    #[test]
    fn essential_bounded_by_enclosure() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let fam: Vec<ScalarPlusCorner> = (0..rng.gen_range(1..=3))
                .map(|_| random_instance(&mut rng, 3))
                .collect();
            let e = jsr::jsr_enclosure(&embed_set(&fam).unwrap(), 8, 0.05).unwrap();
            let ess = essential_jsr(&fam).unwrap();
            assert!(ess <= e.hi + 1e-9, "{ess} vs {}", e.hi);
        }
    }

    #[test]
    fn restriction_essential_norm_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let t = random_instance(&mut rng, 3);
            let r = t.tail_restriction();
            assert!(r.essential_norm() <= 2.0 * t.essential_norm() + 1e-15);
            assert_eq!(r.essential_norm(), t.essential_norm());
        }
    }
}
