//! Joint spectral radius bounds and certified enclosures for finite sets of
//! complex matrices.
//!
//! Upper bounds come from max norms of length-n products (Gelfand formula),
//! lower bounds from max spectral radii of products (the BW radius), and
//! [`jsr_enclosure`] combines both in a Gripenberg-style branch-and-bound
//! over the product tree. All set-level computations first rescale the set
//! so its largest member norm is 1; `delta` and the pruning rule live on
//! that normalized scale, which makes every reported bound exactly
//! equivariant under scaling of the input set.

use std::cell::{Cell, RefCell};
use std::collections::HashSet;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{JsrError, Result};
use crate::matrix::CMatrix;

/// Budget on the number of products formed by the enumeration-based bounds.
pub const DEFAULT_PRODUCT_BUDGET: u64 = 2_000_000;
/// Budget on branch-and-bound tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;
pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_DELTA: f64 = 1e-3;

/// Entry quantization used when merging duplicate products.
const DEDUP_QUANTUM: f64 = 1e-12;

/// Nonempty finite set of same-dimension complex matrices.
#[derive(Debug, Clone)]
pub struct MatrixSet {
    members: Vec<CMatrix>,
    label: Option<String>,
}

impl MatrixSet {
    pub fn new(members: Vec<CMatrix>) -> Result<Self> {
        if members.is_empty() {
            return Err(JsrError::InvalidMatrix(
                "matrix set must be nonempty".into(),
            ));
        }
        let dim = members[0].dim();
        if members.iter().any(|m| m.dim() != dim) {
            return Err(JsrError::DimensionMismatch(
                "matrix set members must share one dimension".into(),
            ));
        }
        Ok(MatrixSet {
            members,
            label: None,
        })
    }

    pub fn with_label(members: Vec<CMatrix>, label: impl Into<String>) -> Result<Self> {
        let mut s = Self::new(members)?;
        s.label = Some(label.into());
        Ok(s)
    }

    pub fn members(&self) -> &[CMatrix] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Largest member spectral norm; the normalization scale for bounds.
    pub fn max_norm(&self) -> f64 {
        self.members.iter().map(|m| m.op_norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> MatrixSet {
        MatrixSet {
            members: self.members.iter().map(|m| m.scale(c)).collect(),
            label: self.label.clone(),
        }
    }

    /// Removes entry-wise-equal duplicates (after 1e-12 quantization),
    /// keeping first occurrences. JSR-invariant.
    pub fn dedup(&self) -> MatrixSet {
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        for m in &self.members {
            if seen.insert(quant_key(m)) {
                members.push(m.clone());
            }
        }
        MatrixSet {
            members,
            label: self.label.clone(),
        }
    }

    /// Max over length-n words of `op_norm(word)^(1/n)`; a guaranteed upper
    /// bound for the JSR up to 1e-9 relative numerical slack.
    pub fn upper_bound(&self, n: usize) -> Result<f64> {
        self.upper_bound_with_budget(n, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn upper_bound_with_budget(&self, n: usize, budget: u64) -> Result<f64> {
        if n == 0 {
            return Err(JsrError::Usage("upper_bound requires n >= 1".into()));
        }
        let s = self.max_norm();
        if s == 0.0 {
            return Ok(0.0);
        }
        let normalized = self.normalized_members(s);
        // Member norms are <= 1 after normalization, so norms only shrink
        // along extensions: a prefix that cannot beat `best` is exact to skip.
        let best = Cell::new(0.0f64);
        stream_words(
            &normalized,
            n,
            budget,
            |k, _, p| {
                if k == n && p.op_norm_upper() > best.get() {
                    best.set(best.get().max(p.op_norm()));
                }
            },
            |_, p| p.op_norm_upper() > best.get(),
        )?;
        Ok(best.get().powf(1.0 / n as f64) * s)
    }

    /// r_n(M): max over length-n words of `spectral_radius(word)^(1/n)`,
    /// with the lexicographically first argmax word.
    pub fn lower_bound_bw(&self, n: usize) -> Result<(f64, Vec<usize>)> {
        self.lower_bound_bw_with_budget(n, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn lower_bound_bw_with_budget(&self, n: usize, budget: u64) -> Result<(f64, Vec<usize>)> {
        if n == 0 {
            return Err(JsrError::Usage("lower_bound_bw requires n >= 1".into()));
        }
        let s = self.max_norm();
        if s == 0.0 {
            return Ok((0.0, vec![0; n]));
        }
        let normalized = self.normalized_members(s);
        // rho(extension) <= ||prefix|| once members are normalized, so
        // subtrees below `best` cannot win and skipping them keeps both the
        // exact maximum and the lexicographically first argmax.
        let best = Cell::new(-1.0f64);
        let witness = RefCell::new(Vec::new());
        stream_words(
            &normalized,
            n,
            budget,
            |k, w, p| {
                if k == n && p.op_norm_upper() >= best.get() {
                    let rho = p.spectral_radius();
                    if rho > best.get() {
                        best.set(rho);
                        *witness.borrow_mut() = w.to_vec();
                    }
                }
            },
            |_, p| p.op_norm_upper() > best.get(),
        )?;
        Ok((
            best.get().max(0.0).powf(1.0 / n as f64) * s,
            witness.into_inner(),
        ))
    }

    /// sup of r_n over 1 <= n <= n_max; monotone nondecreasing in n_max.
    pub fn bw_radius_estimate(&self, n_max: usize) -> Result<f64> {
        self.bw_radius_estimate_with_budget(n_max, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn bw_radius_estimate_with_budget(&self, n_max: usize, budget: u64) -> Result<f64> {
        if n_max == 0 {
            return Err(JsrError::Usage(
                "bw_radius_estimate requires n_max >= 1".into(),
            ));
        }
        let s = self.max_norm();
        if s == 0.0 {
            return Ok(0.0);
        }
        let normalized = self.normalized_members(s);
        let best = Cell::new(0.0f64);
        let deepest_root = 1.0 / n_max as f64;
        stream_words(
            &normalized,
            n_max,
            budget,
            |k, _, p| {
                let root = 1.0 / k as f64;
                if p.op_norm_upper().powf(root) > best.get() {
                    best.set(best.get().max(p.spectral_radius().powf(root)));
                }
            },
            // ||prefix||^(1/k') <= ||prefix||^(1/n_max) for k' <= n_max when
            // the prefix norm is <= 1, so this subtree cut is exact too.
            |_, p| p.op_norm_upper().min(1.0).powf(deepest_root) > best.get(),
        )?;
        Ok(best.get() * s)
    }

    /// The set of all length-m products, deduplicated entry-wise at
    /// quantization 1e-12.
    pub fn power_set(&self, m: usize) -> Result<MatrixSet> {
        self.power_set_with_budget(m, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn power_set_with_budget(&self, m: usize, budget: u64) -> Result<MatrixSet> {
        if m == 0 {
            return Err(JsrError::Usage("power_set requires m >= 1".into()));
        }
        let mut out = Vec::new();
        enumerate_levels(&self.members, m, budget, |k, level| {
            if k == m {
                out = level.iter().map(|(_, p)| p.clone()).collect();
            }
        })?;
        Ok(MatrixSet {
            members: out,
            label: self.label.clone(),
        })
    }

    /// The multiplication-operator set {kron(B^T, A) : A, B in M} of
    /// dimension dim^2, realizing X -> A X B on vectorized matrices.
    pub fn mult_operator_set(&self) -> Result<MatrixSet> {
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        for a in &self.members {
            for b in &self.members {
                let k = b.transpose().kron(a)?;
                if seen.insert(quant_key(&k)) {
                    members.push(k);
                }
            }
        }
        Ok(MatrixSet {
            members,
            label: self.label.clone(),
        })
    }

    /// Enlarges the set with k seeded absolutely-convex combinations
    /// sum(c_i m_i), sum |c_i| <= 1.
    pub fn abs_hull_sample(&self, k: usize, seed: u64) -> MatrixSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut members = self.members.clone();
        for _ in 0..k {
            let raw: Vec<Complex64> = (0..self.members.len())
                .map(|_| unit_disc(&mut rng))
                .collect();
            let total: f64 = raw.iter().map(|c| c.norm()).sum();
            let t: f64 = rng.gen_range(0.0f64..=1.0);
            let factor = if total > 0.0 { t / total } else { 0.0 };
            let mut combo = CMatrix::zeros(self.dim()).expect("dim >= 1");
            for (c, m) in raw.iter().zip(&self.members) {
                combo = combo
                    .add(&m.scale(c * Complex64::new(factor, 0.0)))
                    .expect("same dim");
            }
            members.push(combo);
        }
        MatrixSet {
            members,
            label: self.label.clone(),
        }
    }

    fn normalized_members(&self, s: f64) -> Vec<CMatrix> {
        let inv = Complex64::new(1.0 / s, 0.0);
        self.members.iter().map(|m| m.scale(inv)).collect()
    }
}

/// Uniform sample from the closed complex unit disc.
pub(crate) fn unit_disc(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let re = rng.gen_range(-1.0f64..=1.0);
        let im = rng.gen_range(-1.0f64..=1.0);
        if re * re + im * im <= 1.0 {
            return Complex64::new(re, im);
        }
    }
}

pub(crate) fn quant_key(m: &CMatrix) -> Vec<(u8, i64)> {
    let mut key = Vec::with_capacity(2 * m.entries().len());
    for z in m.entries() {
        key.push(quant(z.re));
        key.push(quant(z.im));
    }
    key
}

fn quant(x: f64) -> (u8, i64) {
    let q = (x / DEDUP_QUANTUM).round();
    if q.abs() <= 4.0e18 {
        (0, q as i64)
    } else {
        (1, x.to_bits() as i64)
    }
}

/// Streams words of length 1..=n_max in lexicographic preorder with their
/// products, depth-first so memory stays O(depth * |M|). `descend` is
/// consulted after visiting a word; a `false` skips its whole subtree.
/// Errors out when more than `budget` words get formed.
fn stream_words(
    members: &[CMatrix],
    n_max: usize,
    budget: u64,
    mut visit: impl FnMut(usize, &[usize], &CMatrix),
    mut descend: impl FnMut(usize, &CMatrix) -> bool,
) -> Result<()> {
    let mut formed: u64 = 0;
    let mut stack: Vec<(Vec<usize>, CMatrix)> = Vec::new();
    for i in (0..members.len()).rev() {
        formed += 1;
        if formed > budget {
            return Err(JsrError::BudgetExceeded {
                formed,
                limit: budget,
            });
        }
        stack.push((vec![i], members[i].clone()));
    }
    while let Some((word, prod)) = stack.pop() {
        visit(word.len(), &word, &prod);
        if word.len() < n_max && descend(word.len(), &prod) {
            for i in (0..members.len()).rev() {
                formed += 1;
                if formed > budget {
                    return Err(JsrError::BudgetExceeded {
                        formed,
                        limit: budget,
                    });
                }
                let mut w = word.clone();
                w.push(i);
                stack.push((w, prod.mul_unchecked(&members[i])));
            }
        }
    }
    Ok(())
}

/// Iterates deduplicated product levels M^1 .. M^n in lexicographic word
/// order, calling `on_level` for each; errors out when more than `budget`
/// products get formed.
fn enumerate_levels(
    members: &[CMatrix],
    n: usize,
    budget: u64,
    mut on_level: impl FnMut(usize, &[(Vec<usize>, CMatrix)]),
) -> Result<()> {
    let mut formed: u64 = 0;
    let mut seen: HashSet<Vec<(u8, i64)>> = HashSet::new();
    let mut level: Vec<(Vec<usize>, CMatrix)> = Vec::new();
    for (i, m) in members.iter().enumerate() {
        if seen.insert(quant_key(m)) {
            level.push((vec![i], m.clone()));
        }
    }
    on_level(1, &level);
    for k in 2..=n {
        let mut next = Vec::new();
        seen.clear();
        for (w, p) in &level {
            for (i, m) in members.iter().enumerate() {
                formed += 1;
                if formed > budget {
                    return Err(JsrError::BudgetExceeded {
                        formed,
                        limit: budget,
                    });
                }
                let prod = p.mul_unchecked(m);
                if seen.insert(quant_key(&prod)) {
                    let mut word = w.clone();
                    word.push(i);
                    next.push((word, prod));
                }
            }
        }
        level = next;
        on_level(k, &level);
    }
    Ok(())
}

/// Certified interval [lo, hi] containing the JSR, with the witness word
/// behind the lower bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
    /// Word over member indices with spectral_radius(product)^(1/len) = lo.
    pub lo_witness: Vec<usize>,
    pub depth_reached: usize,
    pub converged: bool,
    pub nodes_explored: u64,
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure, slack: f64) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi) + slack
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnclosureParams {
    pub depth: usize,
    /// Convergence target and pruning slack, on the normalized scale
    /// (largest member norm = 1).
    pub delta: f64,
    pub node_budget: u64,
}

impl Default for EnclosureParams {
    fn default() -> Self {
        EnclosureParams {
            depth: DEFAULT_DEPTH,
            delta: DEFAULT_DELTA,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Externally known valid bounds used to warm-start an enclosure; the lower
/// seed carries its witness word.
#[derive(Debug, Clone, Default)]
pub struct BoundSeeds {
    pub lower: Option<(f64, Vec<usize>)>,
    pub upper: Option<f64>,
}

/// Branch-and-bound JSR enclosure.
///
/// A node (word w of length n) is pruned when `op_norm(w)^(1/n) <= lo +
/// delta`; pruned values and depth-capped leaves together bound the JSR
/// from above, visited words bound it from below through their spectral
/// radii. Exceeding the node budget yields a partial enclosure with
/// `converged = false`, never an invalid bound. Deterministic: the tree is
/// explored depth-first in lexicographic order.
pub fn jsr_enclosure(set: &MatrixSet, depth: usize, delta: f64) -> Result<Enclosure> {
    jsr_enclosure_with(
        set,
        &EnclosureParams {
            depth,
            delta,
            ..EnclosureParams::default()
        },
        &BoundSeeds::default(),
    )
}

pub fn jsr_enclosure_with(
    set: &MatrixSet,
    params: &EnclosureParams,
    seeds: &BoundSeeds,
) -> Result<Enclosure> {
    if params.depth == 0 {
        return Err(JsrError::Usage("enclosure depth must be >= 1".into()));
    }
    if params.delta.is_nan() || params.delta <= 0.0 {
        return Err(JsrError::Usage("enclosure delta must be > 0".into()));
    }
    let s = set.max_norm();
    if s == 0.0 {
        return Ok(Enclosure {
            lo: 0.0,
            hi: 0.0,
            lo_witness: vec![0],
            depth_reached: 1,
            converged: true,
            nodes_explored: 1,
        });
    }
    let normalized = set.normalized_members(s);
    let search = precondition(&normalized, params.delta);
    let m = search.len();

    let mut lo = 0.0f64;
    let mut witness: Option<Vec<usize>> = None;
    if let Some((v, w)) = &seeds.lower {
        lo = (v / s).max(0.0);
        witness = Some(w.clone());
    }

    let mut stack: Vec<(Vec<usize>, CMatrix)> = Vec::new();
    for i in (0..m).rev() {
        stack.push((vec![i], search[i].clone()));
    }
    let mut stopped_max = 0.0f64;
    let mut nodes: u64 = 0;
    let mut exhausted = false;
    let mut depth_reached = 0usize;

    while let Some((word, prod)) = stack.pop() {
        nodes += 1;
        let n = word.len();
        if nodes > params.node_budget {
            exhausted = true;
            stopped_max = stopped_max.max(prod.op_norm_upper().powf(1.0 / n as f64));
            for (w2, p2) in stack.drain(..) {
                stopped_max = stopped_max.max(p2.op_norm_upper().powf(1.0 / w2.len() as f64));
            }
            break;
        }
        depth_reached = depth_reached.max(n);

        let root = 1.0 / n as f64;
        let cheap = prod.op_norm_upper().powf(root);
        // Short words always get a spectral-radius evaluation so r_1, r_2
        // enter the lower bound; deeper words skip it when they prune anyway.
        if n > 2 && cheap <= lo + params.delta {
            stopped_max = stopped_max.max(cheap);
            continue;
        }
        let r_root = prod.spectral_radius().powf(root);
        if r_root > lo {
            lo = r_root;
            witness = Some(word.clone());
        }
        let threshold = lo + params.delta;
        if cheap <= threshold {
            stopped_max = stopped_max.max(cheap);
            continue;
        }
        let u = prod.op_norm().powf(root);
        if u <= threshold || n == params.depth {
            stopped_max = stopped_max.max(u);
            continue;
        }
        for i in (0..m).rev() {
            let mut w = word.clone();
            w.push(i);
            stack.push((w, prod.mul_unchecked(&search[i])));
        }
    }

    let mut hi = stopped_max;
    if let Some(u0) = seeds.upper {
        hi = hi.min(u0 / s);
    }

    // Recompute the lower bound from the witness on the unconditioned
    // normalized set, so `lo` matches its witness exactly.
    let witness = witness.unwrap_or_else(|| vec![0]);
    let mut wprod = normalized[witness[0]].clone();
    for &i in &witness[1..] {
        wprod = wprod.mul_unchecked(&normalized[i]);
    }
    let mut lo = wprod.spectral_radius().powf(1.0 / witness.len() as f64);
    if lo > hi {
        assert!(
            lo - hi <= 1e-9 * lo.max(1.0),
            "internal error: enclosure inverted (lo {lo} > hi {hi})"
        );
        lo = hi;
    }
    let converged = !exhausted && hi - lo <= params.delta;
    Ok(Enclosure {
        lo: lo * s,
        hi: hi * s,
        lo_witness: witness,
        depth_reached,
        converged,
        nodes_explored: nodes,
    })
}

/// Similarity preconditioning: when the off-diagonal support of the set is
/// acyclic (a joint triangularity pattern, up to permutation), conjugate by
/// the permutation and a graded diagonal so off-diagonal mass stops
/// inflating norm-based upper bounds. The JSR is similarity-invariant, so
/// bounds computed on the conjugated set remain valid.
fn precondition(members: &[CMatrix], delta: f64) -> Vec<CMatrix> {
    let d = members[0].dim();
    if d > 64 || d == 1 {
        return members.to_vec();
    }
    let mut support = vec![false; d * d];
    let mut offmax = 0.0f64;
    for m in members {
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    let a = m.get(i, j).norm();
                    if a > 0.0 {
                        support[i * d + j] = true;
                        offmax = offmax.max(a);
                    }
                }
            }
        }
    }
    if offmax == 0.0 {
        return members.to_vec();
    }
    // Kahn topological sort with smallest-index preference; support at
    // (i, j) forces i before j in the triangular order.
    let mut indeg = vec![0usize; d];
    for i in 0..d {
        for j in 0..d {
            if support[i * d + j] {
                indeg[j] += 1;
            }
        }
    }
    let mut placed = vec![false; d];
    let mut order = Vec::with_capacity(d);
    for _ in 0..d {
        let Some(v) = (0..d).find(|&v| !placed[v] && indeg[v] == 0) else {
            return members.to_vec(); // cyclic support: not jointly triangular
        };
        placed[v] = true;
        order.push(v);
        for j in 0..d {
            if support[v * d + j] {
                indeg[j] -= 1;
            }
        }
    }
    let eps = (1e-4 * delta.min(0.005) / (2.0 * d as f64 * offmax)).min(1.0);
    if eps.powi(d as i32 - 1) < 1e-200 {
        return members.to_vec();
    }
    let mut pows = vec![1.0f64; d];
    for k in 1..d {
        pows[k] = pows[k - 1] * eps;
    }
    members
        .iter()
        .map(|m| {
            let mut c = CMatrix::zeros(d).expect("dim >= 1");
            for i in 0..d {
                for j in 0..d {
                    let v = m.get(order[i], order[j]);
                    if j >= i {
                        c.set(i, j, v * Complex64::new(pows[j - i], 0.0));
                    } else {
                        // Below-diagonal entries are structural zeros.
                        c.set(i, j, v);
                    }
                }
            }
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair() -> MatrixSet {
        MatrixSet::new(vec![
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap(),
        ])
        .unwrap()
    }

    fn units() -> MatrixSet {
        MatrixSet::new(vec![
            CMatrix::matrix_unit(2, 0, 1).unwrap(),
            CMatrix::matrix_unit(2, 1, 0).unwrap(),
        ])
        .unwrap()
    }

    /// Independent brute-force oracle: exhaustive recursion over all |M|^n
    /// words, no dedup, no normalization.
    fn brute_max<F: Fn(&CMatrix) -> f64>(set: &MatrixSet, n: usize, f: &F) -> f64 {
        fn rec<F: Fn(&CMatrix) -> f64>(
            members: &[CMatrix],
            prefix: Option<&CMatrix>,
            left: usize,
            f: &F,
            best: &mut f64,
        ) {
            if left == 0 {
                *best = best.max(f(prefix.expect("n >= 1")));
                return;
            }
            for m in members {
                let next = match prefix {
                    Some(p) => p.mul_unchecked(m),
                    None => m.clone(),
                };
                rec(members, Some(&next), left - 1, f, best);
            }
        }
        let mut best = f64::NEG_INFINITY;
        rec(set.members(), None, n, f, &mut best);
        best
    }

    #[test]
    fn upper_bound_identity_and_units() {
        let id = MatrixSet::new(vec![CMatrix::identity(2).unwrap()]).unwrap();
        assert!((id.upper_bound(5).unwrap() - 1.0).abs() < 1e-12);
        for n in [1, 2, 3, 5] {
            assert!((units().upper_bound(n).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn upper_bound_pair_matches_brute_oracle() {
        let m = pair();
        let oracle = brute_max(&m, 2, &|p| p.op_norm()).powf(0.5);
        // Frozen: max length-2 product norm is (3+sqrt5)/2, attained at AB.
        let frozen = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!((oracle - frozen).abs() < 1e-10);
        let got = m.upper_bound(2).unwrap();
        assert!((got - frozen).abs() < 1e-10, "{got} vs {frozen}");
    }

    #[test]
    fn lower_bound_examples() {
        let id = MatrixSet::new(vec![CMatrix::identity(2).unwrap()]).unwrap();
        let (v, w) = id.lower_bound_bw(3).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        assert_eq!(w, vec![0, 0, 0]);

        let (v, w) = units().lower_bound_bw(2).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(w, vec![0, 1]);

        let (v, w) = pair().lower_bound_bw(2).unwrap();
        let frozen = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        assert!((v - frozen).abs() < 1e-9);
        assert_eq!(w, vec![0, 1]);
        let oracle = brute_max(&pair(), 2, &|p| p.spectral_radius()).powf(0.5);
        assert!((v - oracle).abs() < 1e-9);
    }

    #[test]
    fn bw_estimate_examples() {
        let d = MatrixSet::new(vec![CMatrix::diag(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap()]).unwrap();
        assert!((d.bw_radius_estimate(4).unwrap() - 2.0).abs() < 1e-10);

        assert!(units().bw_radius_estimate(1).unwrap().abs() < 1e-12);
        assert!((units().bw_radius_estimate(2).unwrap() - 1.0).abs() < 1e-12);

        // Still attained at n = 2 for the classic pair; brute-check n <= 6.
        let est = pair().bw_radius_estimate(6).unwrap();
        let frozen = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        let mut oracle = 0.0f64;
        for n in 1..=6 {
            let r = brute_max(&pair(), n, &|p| p.spectral_radius()).powf(1.0 / n as f64);
            oracle = oracle.max(r);
        }
        assert!((oracle - frozen).abs() < 1e-9);
        assert!((est - frozen).abs() < 1e-9);
    }

    #[test]
    fn bw_estimate_monotone_in_depth() {
        let m = pair();
        let mut prev = 0.0;
        for n in 1..=6 {
            let v = m.bw_radius_estimate(n).unwrap();
            assert!(v + 1e-12 >= prev);
            prev = v;
        }
    }

    #[test]
    fn enclosure_scalar_set() {
        let s =
            MatrixSet::new(vec![CMatrix::diag(&[c(0.7, -0.2), c(0.7, -0.2)]).unwrap()]).unwrap();
        let e = jsr_enclosure(&s, 6, 1e-8).unwrap();
        let r = c(0.7, -0.2).norm();
        assert!((e.lo - r).abs() < 1e-12);
        assert!((e.hi - r).abs() < 1e-12);
        assert!(e.converged);
    }

    #[test]
    fn enclosure_matrix_units() {
        let e = jsr_enclosure(&units(), 8, 1e-6).unwrap();
        assert!((e.lo - 1.0).abs() < 1e-9);
        assert!((e.hi - 1.0).abs() < 1e-9);
        assert!(e.converged);
    }

    #[test]
    fn enclosure_classic_pair() {
        let e = jsr_enclosure(&pair(), 14, 0.02).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(e.contains(golden), "[{}, {}]", e.lo, e.hi);
        assert!(e.width() <= 0.02);
        // The witness product must reproduce lo exactly.
        let mut p = pair().members()[e.lo_witness[0]].clone();
        for &i in &e.lo_witness[1..] {
            p = p.mul_unchecked(&pair().members()[i]);
        }
        let r = p.spectral_radius().powf(1.0 / e.lo_witness.len() as f64);
        assert!((r - e.lo).abs() <= 1e-9 * e.lo.max(1.0));
    }

    #[test]
    fn enclosure_respects_node_budget() {
        let params = EnclosureParams {
            depth: 12,
            delta: 1e-6,
            node_budget: 20,
        };
        let e = jsr_enclosure_with(&pair(), &params, &BoundSeeds::default()).unwrap();
        assert!(!e.converged);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(e.lo <= golden + 1e-9);
        assert!(e.hi >= golden - 1e-9);
        assert!(e.lo <= e.hi);
    }

    #[test]
    fn enclosure_rejects_bad_params() {
        assert!(jsr_enclosure(&pair(), 0, 0.1).is_err());
        assert!(jsr_enclosure(&pair(), 5, 0.0).is_err());
    }

    #[test]
    fn power_set_examples() {
        let id = MatrixSet::new(vec![CMatrix::identity(2).unwrap()]).unwrap();
        assert_eq!(id.power_set(3).unwrap().len(), 1);

        let p = units().power_set(2).unwrap();
        assert_eq!(p.len(), 3); // {0, E11, E22}
        assert!(p.members()[0].is_zero());

        assert_eq!(pair().power_set(2).unwrap().len(), 4);
    }

    #[test]
    fn mult_operator_set_examples() {
        let id = MatrixSet::new(vec![CMatrix::identity(2).unwrap()]).unwrap();
        let k = id.mult_operator_set().unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k.members()[0], CMatrix::identity(4).unwrap());

        let d = MatrixSet::new(vec![CMatrix::diag(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap()]).unwrap();
        let k = d.mult_operator_set().unwrap();
        assert_eq!(k.len(), 1);
        assert!((k.members()[0].spectral_radius() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn kronecker_identity_on_classic_pair() {
        let m = pair();
        let e = jsr_enclosure(&m, 12, 0.02).unwrap();
        let ek = jsr_enclosure(&m.mult_operator_set().unwrap(), 10, 0.05).unwrap();
        // rho(L_M R_M) = rho(M)^2: intervals [lo^2, hi^2] and ek overlap.
        let sq = Enclosure {
            lo: e.lo * e.lo,
            hi: e.hi * e.hi,
            lo_witness: vec![],
            depth_reached: 0,
            converged: true,
            nodes_explored: 0,
        };
        assert!(
            ek.overlaps(&sq, 1e-6),
            "[{},{}] vs [{},{}]",
            ek.lo,
            ek.hi,
            sq.lo,
            sq.hi
        );
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(ek.lo <= phi2 + 1e-6 && phi2 <= ek.hi + 1e-6);
    }

    #[test]
    fn abs_hull_sample_examples() {
        let m = pair();
        assert_eq!(m.abs_hull_sample(0, 1).len(), 2);

        let id = MatrixSet::new(vec![CMatrix::identity(2).unwrap()]).unwrap();
        let h = id.abs_hull_sample(4, 9);
        assert_eq!(h.len(), 5);
        for extra in &h.members()[1..] {
            // Each sample is c*I with |c| <= 1.
            assert!((extra.get(0, 0) - extra.get(1, 1)).norm() < 1e-12);
            assert!(extra.get(0, 1).norm() < 1e-12);
            assert!(extra.get(0, 0).norm() <= 1.0 + 1e-12);
        }
        let e = jsr_enclosure(&h, 8, 1e-3).unwrap();
        assert!((e.lo - 1.0).abs() < 1e-9 && (e.hi - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hull_invariance_on_pair() {
        let m = pair();
        let e1 = jsr_enclosure(&m, 10, 0.05).unwrap();
        let e2 = jsr_enclosure(&m.abs_hull_sample(5, 7), 10, 0.05).unwrap();
        assert!(e1.overlaps(&e2, e1.width() + e2.width() + 1e-6));
    }

    #[test]
    fn budget_error_names_limit() {
        let m = pair();
        match m.upper_bound_with_budget(25, 1000) {
            Err(JsrError::BudgetExceeded { limit: 1000, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn scale_equivariance_exact_factors() {
        let m = pair();
        let e = jsr_enclosure(&m, 10, 0.02).unwrap();
        let ub = m.upper_bound(5).unwrap();
        let (r, w) = m.lower_bound_bw(5).unwrap();
        for (cc, a) in [(c(2.0, 0.0), 2.0), (c(0.5, 0.0), 0.5), (c(0.0, 1.0), 1.0)] {
            let ms = m.scale(cc);
            let es = jsr_enclosure(&ms, 10, 0.02).unwrap();
            assert!((es.lo - a * e.lo).abs() <= 1e-12 * (a * e.lo).max(1e-30));
            assert!((es.hi - a * e.hi).abs() <= 1e-12 * (a * e.hi).max(1e-30));
            let ubs = ms.upper_bound(5).unwrap();
            assert!((ubs - a * ub).abs() <= 1e-12 * (a * ub));
            let (rs, ws) = ms.lower_bound_bw(5).unwrap();
            assert!((rs - a * r).abs() <= 1e-12 * (a * r).max(1e-30));
            assert_eq!(ws, w);
        }
    }

    #[test]
    fn doubling_monotonicity_and_sandwich() {
        let m = pair();
        for n in [1usize, 2, 3, 5] {
            let un = m.upper_bound(n).unwrap();
            let u2n = m.upper_bound(2 * n).unwrap();
            assert!(u2n <= un + 1e-9 * un.max(1.0));
        }
        let e = jsr_enclosure(&m, 10, 0.02).unwrap();
        for n in 1..=8 {
            let (rn, _) = m.lower_bound_bw(n).unwrap();
            assert!(rn <= e.hi + 1e-9);
            assert!(e.lo <= m.upper_bound(n).unwrap() + 1e-9);
        }
    }

    #[test]
    fn divisor_monotonicity_of_lower_bounds() {
        let m = pair();
        for n in 1..=3usize {
            let rn = m.lower_bound_bw(n).unwrap().0;
            if 2 * n <= 6 {
                let rnm = m.lower_bound_bw(2 * n).unwrap().0;
                assert!(rn <= rnm + 1e-9);
            }
        }
    }

    #[test]
    fn triangular_preconditioning_tightens_upper_bound() {
        // T3-type set with known diagonals; at depth 8 the raw norm tree
        // alone would sit far above max |diag|.
        let t1 = CMatrix::from_real_rows(&[
            vec![0.9, 0.8, -0.7],
            vec![0.0, 0.4, 0.9],
            vec![0.0, 0.0, -0.3],
        ])
        .unwrap();
        let t2 = CMatrix::from_real_rows(&[
            vec![-0.5, 1.0, 0.6],
            vec![0.0, 0.8, -0.9],
            vec![0.0, 0.0, 0.2],
        ])
        .unwrap();
        let m = MatrixSet::new(vec![t1, t2]).unwrap();
        let e = jsr_enclosure(&m, 8, 0.02).unwrap();
        let r1 = 0.9f64; // max |diagonal|
        assert!(e.hi - r1 <= 0.02, "hi {} vs r1 {}", e.hi, r1);
        assert!(e.lo >= r1 - 1e-6);
    }

    #[test]
    fn permuted_triangular_family_also_tightens() {
        // Same family conjugated by the permutation (0 2 1).
        let perm = |m: &CMatrix| {
            let p = [2usize, 0, 1];
            let mut out = CMatrix::zeros(3).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    out.set(p[i], p[j], m.get(i, j));
                }
            }
            out
        };
        let t1 = CMatrix::from_real_rows(&[
            vec![0.9, 0.8, -0.7],
            vec![0.0, 0.4, 0.9],
            vec![0.0, 0.0, -0.3],
        ])
        .unwrap();
        let t2 = CMatrix::from_real_rows(&[
            vec![-0.5, 1.0, 0.6],
            vec![0.0, 0.8, -0.9],
            vec![0.0, 0.0, 0.2],
        ])
        .unwrap();
        let m = MatrixSet::new(vec![perm(&t1), perm(&t2)]).unwrap();
        let e = jsr_enclosure(&m, 8, 0.02).unwrap();
        assert!(e.hi - 0.9 <= 0.02, "hi {}", e.hi);
    }

    #[test]
    fn seeded_enclosure_uses_warm_start() {
        let m = pair();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let seeds = BoundSeeds {
            lower: Some((golden, vec![0, 1])),
            upper: Some(golden),
        };
        let params = EnclosureParams {
            depth: 4,
            delta: 0.5,
            node_budget: 1000,
        };
        let e = jsr_enclosure_with(&m, &params, &seeds).unwrap();
        assert!((e.lo - golden).abs() < 1e-9);
        assert!((e.hi - golden).abs() < 1e-9);
    }

    #[test]
    fn set_validation() {
        assert!(MatrixSet::new(vec![]).is_err());
        assert!(MatrixSet::new(vec![
            CMatrix::identity(2).unwrap(),
            CMatrix::identity(3).unwrap()
        ])
        .is_err());
        let dup = MatrixSet::new(vec![
            CMatrix::identity(2).unwrap(),
            CMatrix::identity(2).unwrap(),
        ])
        .unwrap();
        assert_eq!(dup.dedup().len(), 1);
    }
}
