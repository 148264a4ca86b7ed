//! Front end: Seifert or Brieskorn data to a tower decomposition.
//!
//! The chain is: normalized Seifert invariants -> tau function (a closed
//! lattice count) -> graded root with its involution -> tower module of
//! the orientation reversal -> dual module -> extracted decomposition.
//! Absolute gradings are pinned by the Neumann-Siebenmann invariant,
//! computed from the Wu class of the star-shaped plumbing.

use crate::grading::Grading;
use crate::oracle::bits::BitMatrix;
use crate::pipeline::{extract_parameters, forward_s1, HfDecomposition};
use crate::tower::{GradedModule, Step, Tower};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::sync::Mutex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub b: i64,
    /// Pairs (b_i, a_i) with gcd(a_i, b_i) = 1.
    pub fibers: Vec<(i64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornSpec {
    pub a: Vec<u64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("NotCoprime: entries {0} and {1} share a factor")]
    NotCoprime(u64, u64),
    #[error("PositiveFibration: degree is positive")]
    PositiveFibration,
    #[error("UnsupportedInput: {0}")]
    UnsupportedInput(String),
    #[error("DivergentTau: {0}")]
    DivergentTau(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl SeifertInvariants {
    /// Orbifold degree b + Σ b_i/a_i as an exact rational.
    pub fn degree(&self) -> Grading {
        let mut d = Grading::from(self.b);
        for &(bi, ai) in &self.fibers {
            d += Grading::new(bi, ai as i64);
        }
        d
    }
}

fn mod_inverse(x: i64, m: i64) -> Option<i64> {
    // Extended Euclid; m > 0.
    let (mut r0, mut r1) = (m, x.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m))
}

/// The unique negative Seifert integral homology sphere over the given
/// multiplicities: local invariants solve b_i·(a/a_i) ≡ -1 (mod a_i) with
/// 0 < b_i < a_i, and the degree comes out to exactly -1/∏a_i.
pub fn brieskorn_normalize(spec: &BrieskornSpec) -> Result<SeifertInvariants, SeifertError> {
    for i in 0..spec.a.len() {
        for k in (i + 1)..spec.a.len() {
            if spec.a[i].gcd(&spec.a[k]) != 1 {
                return Err(SeifertError::NotCoprime(spec.a[i], spec.a[k]));
            }
        }
        if spec.a[i] == 0 {
            return Err(SeifertError::UnsupportedInput("multiplicity 0".into()));
        }
    }
    let product: i64 = spec.a.iter().map(|&x| x as i64).product();
    let mut fibers = Vec::new();
    let mut total = 0i64;
    for &ai in &spec.a {
        if ai == 1 {
            continue;
        }
        let ai = ai as i64;
        let rest = product / ai;
        let inv = mod_inverse(rest, ai)
            .ok_or_else(|| SeifertError::Internal("coprimality violated".into()))?;
        let bi = (-inv).rem_euclid(ai);
        debug_assert_eq!((bi * rest).rem_euclid(ai), (ai - 1) % ai);
        fibers.push((bi, ai as u64));
        total += bi * rest;
    }
    debug_assert_eq!((total + 1) % product, 0);
    let b = -(total + 1) / product;
    Ok(SeifertInvariants { b, fibers })
}

/// Normalized data: central weight e0 and arms (alpha_i, omega_i) with
/// 0 < omega_i < alpha_i.
#[derive(Clone, Debug)]
struct Normalized {
    e0: i64,
    arms: Vec<(i64, i64)>,
}

fn normalize(inv: &SeifertInvariants) -> Result<Normalized, SeifertError> {
    let mut e0 = inv.b;
    let mut arms = Vec::new();
    for &(bi, ai) in &inv.fibers {
        if ai == 0 {
            return Err(SeifertError::UnsupportedInput("multiplicity 0".into()));
        }
        let ai = ai as i64;
        if bi.gcd(&ai) != 1 {
            return Err(SeifertError::UnsupportedInput(format!(
                "gcd(a_i, b_i) != 1 for ({bi}, {ai})"
            )));
        }
        if ai == 1 {
            e0 += bi;
            continue;
        }
        let omega = bi.rem_euclid(ai);
        e0 += (bi - omega) / ai;
        arms.push((ai, omega));
    }
    Ok(Normalized { e0, arms })
}

/// Negative continued fraction a/w = [k1, ..., ks], all entries >= 2.
fn neg_continued_fraction(mut a: i64, mut w: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while w > 0 {
        let k = (a + w - 1).div_euclid(w);
        out.push(k);
        let next = k * w - a;
        a = w;
        w = next;
    }
    out
}

/// The Neumann-Siebenmann invariant from the star-shaped plumbing: solve
/// for the Wu class w (the characteristic vector with 0/1 coefficients)
/// and take (sign - w·w)/8.
fn mu_bar_from_plumbing(n: &Normalized) -> Result<i64, SeifertError> {
    // Vertices: center first, then each arm in order.
    let mut weights = vec![n.e0];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(alpha, omega) in &n.arms {
        let cf = neg_continued_fraction(alpha, omega);
        let mut prev = 0usize;
        for k in cf {
            weights.push(-k);
            let v = weights.len() - 1;
            edges.push((prev, v));
            prev = v;
        }
    }
    let nv = weights.len();
    // Q = -(intersection form): diag -weights, edges -1. Solve
    // Q eps = diag(Q) mod 2.
    let mut m = BitMatrix::zero(nv, nv + 1);
    for v in 0..nv {
        if weights[v] % 2 != 0 {
            m.set(v, v, true);
            m.set(v, nv, true);
        }
    }
    for &(u, v) in &edges {
        m.flip(u, v);
        m.flip(v, u);
    }
    let pivots = m.rref();
    if pivots.len() != nv || pivots.iter().any(|&p| p >= nv) {
        return Err(SeifertError::Internal("Wu system is singular".into()));
    }
    let mut eps = vec![false; nv];
    for (row, &col) in pivots.iter().enumerate() {
        eps[col] = m.get(row, nv);
    }
    let mut w2: i64 = (0..nv).filter(|&v| eps[v]).map(|v| weights[v]).sum();
    for &(u, v) in &edges {
        if eps[u] && eps[v] {
            w2 += 2;
        }
    }
    let sign = -(nv as i64);
    if (sign - w2) % 8 != 0 {
        return Err(SeifertError::Internal("mu-bar is not an integer".into()));
    }
    Ok((sign - w2) / 8)
}

enum TauKind {
    Closed(Normalized),
    Table(Vec<i64>),
}

/// The tau function: an integer sequence whose sublevel structure is the
/// graded root. For Seifert data the increment has the closed form
/// Δ(n) = 1 - n e0 - Σ ⌈n ω_i / α_i⌉.
pub struct TauFunction {
    kind: TauKind,
    /// Reflection point of the symmetry τ(n) = τ(n_k - n).
    n_k: i64,
    horizon: i64,
    mu_bar: i64,
    memo: Mutex<TauMemo>,
}

#[derive(Default)]
struct TauMemo {
    /// τ(0), τ(1), ... as far as computed.
    pos: Vec<i64>,
    /// τ(-1), τ(-2), ...
    neg: Vec<i64>,
}

impl TauFunction {
    pub fn delta(&self, l: i64) -> i64 {
        match &self.kind {
            TauKind::Closed(n) => {
                let mut d = 1 - l * n.e0;
                for &(alpha, omega) in &n.arms {
                    d -= (l * omega + alpha - 1).div_euclid(alpha);
                }
                d
            }
            TauKind::Table(values) => {
                // Extend by reflection on the left and by slope-1 growth
                // past the right end.
                let v = |n: i64| self.table_value(values, n);
                v(l + 1) - v(l)
            }
        }
    }

    fn table_value(&self, values: &[i64], n: i64) -> i64 {
        let len = values.len() as i64;
        if n < 0 {
            self.table_value(values, self.n_k - n)
        } else if n < len {
            values[n as usize]
        } else {
            values[(len - 1) as usize] + (n - len + 1)
        }
    }

    /// τ(n), for any integer index; τ(0) = 0.
    pub fn value(&self, n: i64) -> i64 {
        let mut memo = self.memo.lock().unwrap();
        if n >= 0 {
            while (memo.pos.len() as i64) <= n {
                let l = memo.pos.len() as i64 - 1;
                let next = memo.pos[l as usize] + self.delta(l);
                memo.pos.push(next);
            }
            memo.pos[n as usize]
        } else {
            while (memo.neg.len() as i64) < -n {
                let l = -(memo.neg.len() as i64) - 1;
                let tau_next = if memo.neg.is_empty() { memo.pos[0] } else { memo.neg[memo.neg.len() - 1] };
                memo.neg.push(tau_next - self.delta(l));
            }
            memo.neg[(-n - 1) as usize]
        }
    }

    pub fn mu_bar(&self) -> i64 {
        self.mu_bar
    }

    pub fn reflection_point(&self) -> i64 {
        self.n_k
    }

    pub fn horizon(&self) -> i64 {
        self.horizon
    }

    /// Synthetic tau for tests: explicit values for τ(0), τ(1), ...,
    /// reflected about the argmin symmetry point on the left, together
    /// with a declared Neumann-Siebenmann invariant.
    pub fn from_values(values: Vec<i64>, mu_bar: i64) -> Result<TauFunction, SeifertError> {
        if values.is_empty() || values[0] != 0 {
            return Err(SeifertError::DivergentTau("tau(0) must be 0".into()));
        }
        let min = *values.iter().min().unwrap();
        let lo = values.iter().position(|&v| v == min).unwrap() as i64;
        let hi = values.iter().rposition(|&v| v == min).unwrap() as i64;
        let tail = &values[values.len().saturating_sub(2)..];
        if tail.len() == 2 && tail[1] <= tail[0] {
            return Err(SeifertError::DivergentTau(
                "tau does not increase at the end of the table".into(),
            ));
        }
        let mut t = TauFunction {
            kind: TauKind::Table(values),
            n_k: lo + hi,
            horizon: 0,
            mu_bar,
            memo: Mutex::new(TauMemo::default()),
        };
        t.horizon = t.n_k.max(0) + t.len_hint();
        t.memo.lock().unwrap().pos.push(0);
        Ok(t)
    }

    fn len_hint(&self) -> i64 {
        match &self.kind {
            TauKind::Closed(n) => {
                let a: i64 = n.arms.iter().map(|&(alpha, _)| alpha).product();
                let nu = n.arms.len() as i64;
                (nu + 1) * a + 8
            }
            TauKind::Table(v) => v.len() as i64 + 8,
        }
    }
}

/// Build the tau function of a negative Seifert integral homology sphere.
pub fn tau_function(inv: &SeifertInvariants) -> Result<TauFunction, SeifertError> {
    tau_function_with_horizon(inv, None)
}

/// Same, overriding the scan horizon (the default is derived from the
/// fiber product and is always safe; a larger value only costs time).
pub fn tau_function_with_horizon(
    inv: &SeifertInvariants,
    horizon: Option<i64>,
) -> Result<TauFunction, SeifertError> {
    let norm = normalize(inv)?;
    let degree = inv.degree();
    if degree == Grading::ZERO {
        return Err(SeifertError::UnsupportedInput("degree is zero".into()));
    }
    if !degree.is_negative() {
        return Err(SeifertError::PositiveFibration);
    }
    let a: i64 = norm.arms.iter().map(|&(alpha, _)| alpha).product();
    if degree != Grading::new(-1, a) {
        return Err(SeifertError::UnsupportedInput(format!(
            "not an integral homology sphere: degree {degree}, fiber product {a}"
        )));
    }
    let mu_bar = mu_bar_from_plumbing(&norm)?;
    let mut t = TauFunction {
        kind: TauKind::Closed(norm),
        n_k: 0,
        horizon: 0,
        mu_bar,
        memo: Mutex::new(TauMemo::default()),
    };
    t.memo.lock().unwrap().pos.push(0);
    t.horizon = horizon.unwrap_or_else(|| t.len_hint()).max(8);
    // The reflection point: the global argmin set is symmetric under
    // n -> n_k - n, so its extremes sum to n_k.
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    let mut min = i64::MAX;
    for n in -t.horizon..=t.horizon {
        let v = t.value(n);
        if v < min {
            min = v;
            lo = n;
            hi = n;
        } else if v == min {
            hi = n;
        }
    }
    if lo <= -t.horizon + 2 || hi >= t.horizon - 2 {
        return Err(SeifertError::DivergentTau(
            "tau minima touch the scan horizon".into(),
        ));
    }
    t.n_k = lo + hi;
    t.horizon = t.n_k.max(0) + horizon.unwrap_or_else(|| t.len_hint()).max(8);
    Ok(t)
}

/// A graded root: vertices are sublevel components of tau over a window
/// symmetric under the reflection, with the level function χ, parent
/// edges one level up, and the reflection-induced involution ι.
pub struct GradedRoot {
    levels: Vec<i64>,
    parents: Vec<Option<usize>>,
    iota: Vec<usize>,
    intervals: Vec<(i64, i64)>,
    min_level: i64,
}

impl GradedRoot {
    pub fn vertex_count(&self) -> usize {
        self.levels.len()
    }

    pub fn chi(&self, v: usize) -> Grading {
        Grading::from(self.levels[v])
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn iota(&self, v: usize) -> usize {
        self.iota[v]
    }

    pub fn min_level(&self) -> i64 {
        self.min_level
    }

    /// The sublevel interval a vertex represents, in tau coordinates.
    pub fn interval(&self, v: usize) -> (i64, i64) {
        self.intervals[v]
    }

    /// Build from explicit tau values on a window [lo, lo + len) that is
    /// symmetric under n -> (2 lo + len - 1) - n and whose end values are
    /// maximal. The tree is truncated one level above the merge of all
    /// leaves; the infinite stem above is implicit.
    pub fn from_tau_window(lo: i64, values: &[i64]) -> GradedRoot {
        use std::collections::{BTreeMap, HashMap};
        assert!(!values.is_empty());
        let hi = lo + values.len() as i64 - 1;
        let reflect = lo + hi;
        let min_level = *values.iter().min().unwrap();

        // Points grouped by level, ascending.
        let mut by_level: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (i, &v) in values.iter().enumerate() {
            by_level.entry(v).or_default().push(lo + i as i64);
        }
        // Hull of every local-minimum plateau: the tree is complete once a
        // single sublevel component covers all of them.
        let (mut leaf_lo, mut leaf_hi) = (i64::MAX, i64::MIN);
        {
            let len = values.len();
            let mut i = 0;
            while i < len {
                let start = i;
                while i + 1 < len && values[i + 1] == values[start] {
                    i += 1;
                }
                let left_up = start == 0 || values[start - 1] > values[start];
                let right_up = i + 1 == len || values[i + 1] > values[start];
                if left_up && right_up && start > 0 && i + 1 < len {
                    leaf_lo = leaf_lo.min(lo + start as i64);
                    leaf_hi = leaf_hi.max(lo + i as i64);
                }
                i += 1;
            }
            if leaf_lo > leaf_hi {
                // Degenerate windows: fall back to the argmin hull.
                leaf_lo = values.iter().position(|&v| v == min_level).unwrap() as i64 + lo;
                leaf_hi = values.iter().rposition(|&v| v == min_level).unwrap() as i64 + lo;
            }
        }

        let mut levels = Vec::new();
        let mut parents: Vec<Option<usize>> = Vec::new();
        let mut intervals: Vec<(i64, i64)> = Vec::new();
        // Active sublevel intervals: start -> end.
        let mut active: BTreeMap<i64, i64> = BTreeMap::new();
        let mut prev_layer: Vec<(usize, (i64, i64))> = Vec::new();
        let mut pending = by_level.into_iter().peekable();
        let mut h = min_level;
        loop {
            while let Some(&(lv, _)) = pending.peek() {
                if lv > h {
                    break;
                }
                let (_, pts) = pending.next().unwrap();
                for n in pts {
                    // Insert n, merging with neighbors.
                    let mut start = n;
                    let mut end = n;
                    if let Some((&s, &e)) = active.range(..n).next_back() {
                        if e == n - 1 {
                            start = s;
                            active.remove(&s);
                        }
                    }
                    if let Some(&e) = active.get(&(n + 1)) {
                        end = e;
                        active.remove(&(n + 1));
                    }
                    active.insert(start, end);
                }
            }
            let layer: Vec<(usize, (i64, i64))> = active
                .iter()
                .map(|(&s, &e)| {
                    let v = levels.len();
                    levels.push(h);
                    parents.push(None);
                    intervals.push((s, e));
                    (v, (s, e))
                })
                .collect();
            for &(child, (s, e)) in &prev_layer {
                let up = layer
                    .iter()
                    .find(|&&(_, (s2, e2))| s2 <= s && e <= e2)
                    .expect("sublevel components nest");
                parents[child] = Some(up.0);
            }
            let merged_all = layer.len() == 1 && {
                let (s, e) = layer[0].1;
                s <= leaf_lo && leaf_hi <= e
            };
            prev_layer = layer;
            if merged_all {
                break;
            }
            h += 1;
            assert!(
                h <= values[0].min(*values.last().unwrap()),
                "window ends too low for the merge of all leaves"
            );
        }
        let by_key: HashMap<(i64, (i64, i64)), usize> = (0..levels.len())
            .map(|v| ((levels[v], intervals[v]), v))
            .collect();
        let iota: Vec<usize> = (0..levels.len())
            .map(|v| {
                let (s, e) = intervals[v];
                by_key[&(levels[v], (reflect - e, reflect - s))]
            })
            .collect();
        GradedRoot { levels, parents, iota, intervals, min_level }
    }

    pub fn from_tau(tau: &TauFunction) -> GradedRoot {
        let hi = tau.reflection_point().max(0) + tau.horizon();
        let lo = tau.reflection_point() - hi;
        let values: Vec<i64> = (lo..=hi).map(|n| tau.value(n)).collect();
        GradedRoot::from_tau_window(lo, &values)
    }

    /// Minimal-level vertex fixed by the involution.
    fn minimal_invariant_vertex(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.iota[v] == v)
            .min_by_key(|&v| self.levels[v])
            .expect("the merged top vertex is always invariant")
    }

    fn subtree_min(&self, v: usize) -> i64 {
        // One pass in ascending level order: children precede parents.
        let n = self.vertex_count();
        let mut best: Vec<i64> = self.levels.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&w| self.levels[w]);
        for &w in &order {
            if let Some(p) = self.parents[w] {
                best[p] = best[p].min(best[w]);
            }
        }
        best[v]
    }

    /// True when the minimal invariant vertex reaches a global minimum
    /// along a strictly decreasing path; also returns χ(v) - χ(w), the
    /// gap between that vertex and the global minimum.
    pub fn is_projective_type(&self) -> (bool, Grading) {
        let v = self.minimal_invariant_vertex();
        let gap = self.levels[v] - self.min_level;
        (self.subtree_min(v) == self.min_level, Grading::from(gap))
    }

    /// Persistence of the sublevel filtration: the essential level and
    /// the finite bars (birth level, length).
    fn persistence(&self) -> (i64, Vec<(i64, i64)>) {
        // Leaves die where their component merges with an older one; in
        // tree terms, each non-minimal merge event is visible as a vertex
        // with more than one child.
        let n = self.vertex_count();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = self.parents[v] {
                children[p].push(v);
            }
        }
        let mut bars = Vec::new();
        // birth[v]: minimal level in the subtree of v.
        let mut birth = vec![0i64; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.levels[v]);
        for &v in &order {
            if children[v].is_empty() {
                birth[v] = self.levels[v];
            } else {
                let mut births: Vec<i64> =
                    children[v].iter().map(|&c| birth[c]).collect();
                births.sort_unstable();
                birth[v] = births[0];
                // All but the eldest die here.
                for &b in &births[1..] {
                    if self.levels[v] > b {
                        bars.push((b, self.levels[v] - b));
                    }
                }
            }
        }
        (self.min_level, bars)
    }
}

/// Decomposition and full module from a tau function.
///
/// The module of the orientation reversal is read off the root (the
/// essential tower at the global minimum, one finite tower per bar) with
/// degrees 2h + C where C = 2 μ̄ - 2 χ(v); dualizing and extracting the
/// parameters yields the decomposition.
pub fn hf_from_tau(tau: &TauFunction) -> Result<(HfDecomposition, GradedModule), SeifertError> {
    // Divergence guard: increments must be >= 1 near the horizon.
    let far = tau.reflection_point().max(0) + tau.horizon();
    for l in (far - 4)..far {
        if tau.delta(l) < 1 {
            return Err(SeifertError::DivergentTau(format!(
                "tau increment below 1 at {l}"
            )));
        }
    }
    let root = GradedRoot::from_tau(tau);
    let v = root.minimal_invariant_vertex();
    let c_shift = 2 * tau.mu_bar() - 2 * root.levels[v];
    let (ess, bars) = root.persistence();

    // Module of the reversal, then its dual.
    let mut dual = GradedModule::zero(Step::U);
    dual.push_infinite(Grading::from(-(2 * ess + c_shift)));
    for (b, len) in bars {
        let bottom = -(2 * b + c_shift) - 2 * len + 1;
        dual.push(Tower::finite(Grading::from(bottom), len as u32));
    }
    let dec = extract_parameters(&dual)
        .map_err(|e| SeifertError::Internal(format!("extracted module is not in standard form: {e}")))?;
    if dec.s != Grading::from(-2 * tau.mu_bar()) {
        return Err(SeifertError::Internal(format!(
            "reducible grading {} disagrees with the Wu-class invariant {}",
            dec.s,
            -2 * tau.mu_bar()
        )));
    }
    let full = forward_s1(&dec).map_err(|e| SeifertError::Internal(e.to_string()))?;
    if full != dual {
        return Err(SeifertError::Internal(
            "round trip through the decomposition changed the module".into(),
        ));
    }
    Ok((dec, full))
}

/// Convenience: Brieskorn data straight to the decomposition, the full
/// module, and the graded root.
pub fn brieskorn_pipeline(
    spec: &BrieskornSpec,
) -> Result<(HfDecomposition, GradedModule, GradedRoot), SeifertError> {
    let inv = brieskorn_normalize(spec)?;
    let tau = tau_function(&inv)?;
    let (dec, full) = hf_from_tau(&tau)?;
    let root = GradedRoot::from_tau(&tau);
    Ok((dec, full, root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{compute_invariants, connected_homology, is_projective_dec};

    fn brieskorn(a: &[u64]) -> (HfDecomposition, GradedModule, GradedRoot) {
        brieskorn_pipeline(&BrieskornSpec { a: a.to_vec() }).unwrap()
    }

    #[test]
    fn normalize_small_brieskorn() {
        let inv = brieskorn_normalize(&BrieskornSpec { a: vec![2, 3, 5] }).unwrap();
        assert_eq!(inv.b, -2);
        assert_eq!(inv.fibers, vec![(1, 2), (2, 3), (4, 5)]);
        assert_eq!(inv.degree(), Grading::new(-1, 30));

        let inv = brieskorn_normalize(&BrieskornSpec { a: vec![2, 3, 7] }).unwrap();
        assert_eq!(inv.b, -1);
        assert_eq!(inv.degree(), Grading::new(-1, 42));

        assert!(brieskorn_normalize(&BrieskornSpec { a: vec![5, 8, 13] }).is_ok());
        assert_eq!(
            brieskorn_normalize(&BrieskornSpec { a: vec![2, 3, 4] }).unwrap_err(),
            SeifertError::NotCoprime(2, 4)
        );
    }

    #[test]
    fn tau_rejects_bad_inputs() {
        // Positive fibration.
        let pos = SeifertInvariants { b: 1, fibers: vec![(1, 2), (1, 3), (1, 7)] };
        assert!(matches!(
            tau_function(&pos),
            Err(SeifertError::PositiveFibration)
        ));
        // Not an integral homology sphere.
        let qhs = SeifertInvariants { b: -1, fibers: vec![(1, 2), (1, 2)] };
        assert!(matches!(
            tau_function(&qhs),
            Err(SeifertError::UnsupportedInput(_))
        ));
    }

    #[test]
    fn tau_values_of_2_3_7() {
        let inv = brieskorn_normalize(&BrieskornSpec { a: vec![2, 3, 7] }).unwrap();
        let tau = tau_function(&inv).unwrap();
        let vals: Vec<i64> = (0..=13).map(|n| tau.value(n)).collect();
        assert_eq!(vals, vec![0, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(tau.mu_bar(), 1);
        assert_eq!(tau.reflection_point(), 2);
        // Symmetry.
        for n in -6..=8 {
            assert_eq!(tau.value(n), tau.value(2 - n), "n = {n}");
        }
    }

    #[test]
    fn poincare_sphere_is_an_l_space() {
        let (dec, full, _) = brieskorn(&[2, 3, 5]);
        assert_eq!(dec.s, Grading::from(2));
        assert!(dec.pairs.is_empty());
        assert!(dec.j.is_zero());
        let want = GradedModule::from_towers(Step::U, [Tower::infinite(Grading::from(2))]);
        assert_eq!(full, want);
        let inv = compute_invariants(&dec).unwrap();
        assert_eq!(inv.mu_bar, Grading::from(-1));
        assert_eq!(inv.delta, Grading::from(1));
    }

    #[test]
    fn anchors_2_3_7() {
        let (dec, full, root) = brieskorn(&[2, 3, 7]);
        assert_eq!(dec, HfDecomposition::without_j(Grading::from(-2), vec![(1, 1)]));
        let want = GradedModule::from_towers(
            Step::U,
            [Tower::infinite(Grading::from(0)), Tower::finite(Grading::from(-1), 1)],
        );
        assert_eq!(full, want);
        let inv = compute_invariants(&dec).unwrap();
        assert_eq!(inv.delta, Grading::from(0));
        assert_eq!(inv.mu_bar, Grading::from(1));
        let (flag, gap) = root.is_projective_type();
        assert!(flag);
        assert_eq!(gap, inv.delta - inv.beta);
    }

    #[test]
    fn anchors_2_3_11_and_13_and_19() {
        let (dec, _, root) = brieskorn(&[2, 3, 11]);
        assert_eq!(dec, HfDecomposition::without_j(Grading::from(0), vec![(1, 1)]));
        assert_eq!(compute_invariants(&dec).unwrap().delta, Grading::from(1));
        assert!(root.is_projective_type().0);

        let (dec, _, root) = brieskorn(&[2, 3, 13]);
        assert_eq!(dec.s, Grading::from(0));
        assert!(dec.pairs.is_empty());
        assert_eq!(
            dec.j,
            GradedModule::from_towers(Step::U, [Tower::finite(Grading::from(-1), 1)])
        );
        assert!(root.is_projective_type().0);
        assert!(is_projective_dec(&dec));

        let (dec, _, _) = brieskorn(&[2, 3, 19]);
        let inv = compute_invariants(&dec).unwrap();
        assert_eq!(inv.delta, Grading::from(0));
        assert_eq!(inv.mu_bar, Grading::from(1));
    }

    #[test]
    fn lens_like_root_has_no_pairs() {
        // Sigma(2,3) is the three-sphere.
        let (dec, full, _) = brieskorn(&[2, 3]);
        assert_eq!(dec, HfDecomposition::without_j(Grading::from(0), vec![]));
        assert_eq!(
            full,
            GradedModule::from_towers(Step::U, [Tower::infinite(Grading::from(0))])
        );
    }

    #[test]
    fn synthetic_tau_without_maxima() {
        let tau = TauFunction::from_values((0..20).collect(), 0).unwrap();
        let (dec, _) = hf_from_tau(&tau).unwrap();
        assert!(dec.pairs.is_empty());
        assert!(dec.j.is_zero());
    }

    #[test]
    fn synthetic_divergent_tau() {
        let mut vals: Vec<i64> = (0..20).collect();
        vals.push(3);
        let err = match TauFunction::from_values(vals, 0) {
            Err(e) => e,
            Ok(t) => match hf_from_tau(&t) {
                Err(e) => e,
                Ok(_) => panic!("divergent tau accepted"),
            },
        };
        assert!(matches!(err, SeifertError::DivergentTau(_)));
    }

    #[test]
    fn projective_type_of_figure_roots() {
        // A symmetric V: two swapped minima reached from the invariant
        // merge vertex.
        let root = GradedRoot::from_tau_window(0, &[1, 0, 1, 0, 1]);
        assert_eq!(root.is_projective_type(), (true, Grading::from(1)));
        // Single vertex.
        let root = GradedRoot::from_tau_window(0, &[0]);
        assert_eq!(root.is_projective_type(), (true, Grading::from(0)));
        // An invariant middle valley strictly above the side minima: the
        // invariant vertex only reaches level 1.
        let root = GradedRoot::from_tau_window(0, &[3, 0, 3, 1, 2, 1, 3, 0, 3]);
        let (flag, gap) = root.is_projective_type();
        assert!(!flag);
        assert_eq!(gap, Grading::from(2));
    }

    #[test]
    fn non_projective_anchor_5_8_13() {
        let (dec, _, root) = brieskorn(&[5, 8, 13]);
        assert!(!root.is_projective_type().0);
        assert!(!is_projective_dec(&dec));
        let conn = connected_homology(&dec).unwrap();
        let want = GradedModule::from_towers(
            Step::U,
            [Tower::finite(Grading::from(1), 1), Tower::finite(Grading::from(1), 2)],
        );
        assert_eq!(conn, want);
    }

    #[test]
    fn connected_homology_anchors() {
        let (dec, _, _) = brieskorn(&[5, 7, 13]);
        let conn = connected_homology(&dec).unwrap();
        assert_eq!(
            conn,
            GradedModule::from_towers(Step::U, [Tower::finite(Grading::from(1), 1)])
        );
        let (dec, _, _) = brieskorn(&[7, 10, 17]);
        let conn = connected_homology(&dec).unwrap();
        let want = GradedModule::from_towers(
            Step::U,
            [Tower::finite(Grading::from(-1), 1), Tower::finite(Grading::from(-1), 2)],
        );
        assert_eq!(conn, want);
    }
}
