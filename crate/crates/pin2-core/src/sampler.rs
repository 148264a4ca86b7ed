//! Seeded generation of valid decompositions and the oracle/pipeline
//! equivalence check they feed.

use crate::grading::Grading;
use crate::oracle::complex::GChainComplex;
use crate::oracle::galg::Algebra;
use crate::oracle::resolution::{abc_profile_with, borel_dims_with, OracleError, Resolution};
use crate::pipeline::{compute_invariants, compute_swfhg, forward_s1, HfDecomposition};
use crate::tower::{GradedModule, Step};

/// Deterministic 64-bit generator (splitmix64); identical seeds give
/// identical streams on every platform.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A random valid decomposition: N ≤ 3 pairs with n_i ≤ 6, at most three
/// J-towers, and an even integer s.
pub fn random_decomposition(rng: &mut SplitMix64) -> HfDecomposition {
    loop {
        let n_pairs = rng.below(4) as usize;
        let mut pairs = Vec::with_capacity(n_pairs);
        // Build from the top pair down: d_N <= 1 odd, then extend with
        // smaller d and larger d + 2n.
        let mut d = 1 - 2 * rng.range(0, 2);
        let mut level = d + 2 * rng.range(1.max((3 - d) / 2), 6);
        let mut ok = true;
        for _ in 0..n_pairs {
            let n2 = (level - d) / 2;
            if n2 < 1 || n2 > 6 {
                ok = false;
                break;
            }
            pairs.push((d, n2 as u32));
            d -= 2 * rng.range(1, 2);
            level += 2 * rng.range(1, 2);
        }
        if !ok {
            continue;
        }
        pairs.reverse();
        let mut j = GradedModule::zero(Step::U);
        for _ in 0..rng.below(4) {
            let bottom = rng.range(-6, 4);
            let len = rng.range(1, 3) as u32;
            j.push_finite(Grading::from(bottom), len);
        }
        let s = Grading::from(2 * rng.range(-3, 3));
        let dec = HfDecomposition::new(s, pairs, j);
        if dec.validate().is_ok() {
            return dec;
        }
    }
}

#[derive(Debug)]
pub struct CheckFailure {
    pub case: usize,
    pub dec: HfDecomposition,
    pub what: String,
}

/// Compare the chain-level Borel homology of the standard complex of
/// `dec` (both groups, through `max_degree`) and its correction terms
/// against the closed-form pipeline.
pub fn check_one(dec: &HfDecomposition, max_degree: i64) -> Result<(), String> {
    let mut res_g = Resolution::new(Algebra::G);
    let mut res_s1 = Resolution::new(Algebra::S1);
    check_one_with(&mut res_g, &mut res_s1, dec, max_degree)
}

/// Same check, reusing shared resolutions across cases.
pub fn check_one_with(
    res_g: &mut Resolution,
    res_s1: &mut Resolution,
    dec: &HfDecomposition,
    max_degree: i64,
) -> Result<(), String> {
    let z = GChainComplex::from_decomposition(dec);
    let lo = dec.s.as_integer().unwrap_or(0) + dec
        .pairs
        .first()
        .map(|&(d, _)| d)
        .unwrap_or(0)
        .min(0)
        - 14;
    let hi = max_degree;

    let expect_s1 = forward_s1(dec).map_err(|e| e.to_string())?;
    let got_s1 = borel_dims_with(res_s1, &z, lo, hi).map_err(|e| e.to_string())?;
    if got_s1 != expect_s1.dims_in(lo, hi) {
        return Err(format!(
            "circle-equivariant dimensions differ on [{lo}, {hi}]: oracle {:?} vs pipeline {:?}",
            got_s1,
            expect_s1.dims_in(lo, hi)
        ));
    }

    let expect_g = compute_swfhg(dec).map_err(|e| e.to_string())?.base();
    let got_g = borel_dims_with(res_g, &z, lo, hi).map_err(|e| e.to_string())?;
    if got_g != expect_g.dims_in(lo, hi) {
        return Err(format!(
            "group-equivariant dimensions differ on [{lo}, {hi}]: oracle {:?} vs pipeline {:?}",
            got_g,
            expect_g.dims_in(lo, hi)
        ));
    }

    let inv = compute_invariants(dec).map_err(|e| e.to_string())?;
    let margin = truncation_margin();
    let abc_cap = (inv.alpha.double().double().numer() / inv.alpha.denom()).abs() + 16;
    let profile =
        abc_profile_with(res_g, &z, abc_cap.max(16), margin).map_err(|e: OracleError| e.to_string())?;
    if (profile.alpha, profile.beta, profile.gamma) != (inv.alpha, inv.beta, inv.gamma) {
        return Err(format!(
            "correction terms differ: oracle ({:?},{:?},{:?}) vs pipeline ({:?},{:?},{:?})",
            profile.alpha, profile.beta, profile.gamma, inv.alpha, inv.beta, inv.gamma
        ));
    }
    Ok(())
}

/// Margin for the localization periodicity check, overridable through
/// PIN2_TRUNC_MARGIN.
pub fn truncation_margin() -> i64 {
    std::env::var("PIN2_TRUNC_MARGIN")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

/// Run `cases` seeded checks; returns every failure.
pub fn oracle_check(cases: usize, seed: u64, max_degree: i64) -> Vec<CheckFailure> {
    let mut res_g = Resolution::new(Algebra::G);
    let mut res_s1 = Resolution::new(Algebra::S1);
    let mut failures = Vec::new();
    for case in 0..cases {
        let mut rng = SplitMix64(seed ^ (case as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let dec = random_decomposition(&mut rng);
        if let Err(what) = check_one_with(&mut res_g, &mut res_s1, &dec, max_degree) {
            failures.push(CheckFailure { case, dec, what });
        }
    }
    failures
}
