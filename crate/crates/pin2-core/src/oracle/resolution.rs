//! Free resolutions of the trivial module and Borel homology.
//!
//! A resolution is a free module over the chain algebra (or its circle
//! subalgebra) with homology F₂ concentrated in degree 0. Borel homology
//! of a complex Z is the homology of the coinvariants of (resolution ⊗ Z);
//! the correction terms are read off the image of the fixed-point
//! inclusion in that homology. Resolutions are immutable once extended
//! and are shared across checks.

use super::bits::{BitMatrix, RowBasis};
use super::complex::GChainComplex;
use super::galg::{mono_degree, mono_kappa, mono_mul, Algebra, GElem, Mono};
use crate::grading::Grading;
use std::collections::HashMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("TruncationTooLow: {0}")]
    TruncationTooLow(String),
    #[error("InvalidFixedPart: {0}")]
    InvalidFixedPart(String),
    #[error("NonIntegerShift: total shift {0} is not an integer")]
    NonIntegerShift(Grading),
}

/// Free resolution of F₂ over the chosen algebra, built degreewise with
/// deterministic pivoting: generators are added one at a time, each
/// killing the first unkilled homology class.
pub struct Resolution {
    algebra: Algebra,
    /// Degree of each free generator.
    gens: Vec<i64>,
    /// Differential of each generator as Σ coefficient · generator.
    diffs: Vec<Vec<(usize, GElem)>>,
    exact_to: i64,
}

impl Resolution {
    pub fn new(algebra: Algebra) -> Self {
        Resolution { algebra, gens: vec![0], diffs: vec![vec![]], exact_to: -1 }
    }

    pub fn build(algebra: Algebra, up_to: i64) -> Self {
        let mut r = Resolution::new(algebra);
        r.extend_to(up_to);
        r
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn exact_to(&self) -> i64 {
        self.exact_to
    }

    /// Basis of the underlying complex: (generator, monomial), per degree.
    fn basis_at(&self, deg: i64) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for (g, &gd) in self.gens.iter().enumerate() {
            for &m in self.algebra.monomials() {
                if gd + mono_degree(m) == deg {
                    out.push((g, m));
                }
            }
        }
        out
    }

    /// Image of ∂ on one basis element, as (generator, monomial) terms.
    fn boundary_of(&self, g: usize, m: Mono) -> Vec<(usize, Mono)> {
        let lead = GElem::from_monos(&[m]);
        let mut acc: Vec<(usize, Mono)> = Vec::new();
        let mut put = |key: (usize, Mono)| {
            if let Some(p) = acc.iter().position(|&x| x == key) {
                acc.remove(p);
            } else {
                acc.push(key);
            }
        };
        for b in lead.boundary().monos() {
            put((g, b));
        }
        for &(h, coeff) in &self.diffs[g] {
            for t in lead.mul(coeff).monos() {
                put((h, t));
            }
        }
        acc
    }

    /// Rows = boundaries of the degree-`deg` basis over the `deg - 1`
    /// basis.
    fn boundary_matrix(&self, deg: i64) -> (Vec<(usize, Mono)>, BitMatrix) {
        let src = self.basis_at(deg);
        let tgt = self.basis_at(deg - 1);
        let pos: HashMap<(usize, Mono), usize> =
            tgt.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut m = BitMatrix::zero(src.len(), tgt.len().max(1));
        for (r, &(g, mm)) in src.iter().enumerate() {
            for key in self.boundary_of(g, mm) {
                m.flip(r, pos[&key]);
            }
        }
        (src, m)
    }

    /// Extend so homology is F₂ in degree 0 only, through `up_to`.
    pub fn extend_to(&mut self, up_to: i64) {
        while self.exact_to < up_to {
            let k = self.exact_to + 1;
            let (src, dmat) = self.boundary_matrix(k);
            let pos: HashMap<(usize, Mono), usize> =
                src.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let cycles = dmat.transposed().kernel_basis();

            // Row space of the boundaries from degree k + 1, plus the
            // protected augmentation class at degree 0.
            let mut protected = RowBasis::new(src.len().max(1));
            {
                let above = self.basis_at(k + 1);
                for &(g, mm) in &above {
                    let cols: Vec<usize> =
                        self.boundary_of(g, mm).into_iter().map(|key| pos[&key]).collect();
                    protected.insert_bits(&cols);
                }
                if k == 0 {
                    let aug: Vec<usize> = src
                        .iter()
                        .enumerate()
                        .filter(|&(_, &(g, mm))| g == 0 && mm == 0)
                        .map(|(i, _)| i)
                        .collect();
                    protected.insert_bits(&aug);
                }
            }

            // Candidate kills: at degree 0 restrict to the augmentation
            // ideal so the surviving class is never touched.
            let mut candidates: Vec<Vec<usize>> = Vec::new();
            {
                let mut plain: Vec<Vec<usize>> = Vec::new();
                for r in 0..cycles.rows() {
                    plain.push((0..src.len()).filter(|&c| cycles.get(r, c)).collect());
                }
                if k == 0 {
                    let aug = |v: &Vec<usize>| -> bool {
                        v.iter().filter(|&&c| mono_degree(src[c].1) == 0).count() % 2 == 1
                    };
                    let pivot = plain.iter().position(aug);
                    for (r, v) in plain.iter().enumerate() {
                        if Some(r) == pivot {
                            continue;
                        }
                        if aug(v) {
                            let p = &plain[pivot.unwrap()];
                            let mut sum = v.clone();
                            for &c in p {
                                if let Some(at) = sum.iter().position(|&x| x == c) {
                                    sum.remove(at);
                                } else {
                                    sum.push(c);
                                }
                            }
                            candidates.push(sum);
                        } else {
                            candidates.push(v.clone());
                        }
                    }
                } else {
                    candidates = plain;
                }
            }

            // The group-like generator of the algebra permutes the
            // degree-k basis; its translates of a killed cycle are also
            // boundaries of the new generator's orbit.
            let (rot, rot_count) = match self.algebra {
                Algebra::G => (1u8, 3usize),
                Algebra::S1 => (2u8, 1usize),
            };
            let apply_rot: Vec<usize> = src
                .iter()
                .map(|&(g, mm)| pos[&(g, mono_mul(rot, mm).unwrap())])
                .collect();

            for cand in candidates {
                if !protected.insert_bits(&cand) {
                    continue;
                }
                // New generator in degree k + 1 with this cycle as image.
                let mut by_gen: HashMap<usize, GElem> = HashMap::new();
                for &c in &cand {
                    let (g, mm) = src[c];
                    let e = by_gen.entry(g).or_insert(GElem::ZERO);
                    *e = e.add(GElem::from_monos(&[mm]));
                }
                let mut terms: Vec<(usize, GElem)> =
                    by_gen.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                terms.sort_by_key(|&(g, _)| g);
                debug_assert!(terms.iter().all(|&(_, c)| c.0 & !self.algebra.mask() == 0));
                self.gens.push(k + 1);
                self.diffs.push(terms);
                // Its orbit contributes the j-translates as boundaries.
                let mut row = cand.clone();
                for _ in 0..rot_count {
                    row = row.iter().map(|&c| apply_rot[c]).collect();
                    protected.insert_bits(&row);
                }
            }
            self.exact_to = k;
        }
    }

    /// Homology dimensions of the resolution itself (for exactness
    /// verification).
    pub fn homology_dims(&self, up_to: i64) -> Vec<usize> {
        (0..=up_to)
            .map(|k| {
                let (srck, dmat) = self.boundary_matrix(k);
                let cycles = srck.len() - dmat.rank();
                let (_, dmat_up) = self.boundary_matrix(k + 1);
                cycles - dmat_up.rank()
            })
            .collect()
    }
}

/// The coinvariant complex computing Borel homology: basis pairs
/// (resolution generator, basis element of Z).
pub struct BorelComplex<'a> {
    res: &'a Resolution,
    z: &'a GChainComplex,
    by_degree: HashMap<i64, Vec<(usize, usize)>>,
    pos: HashMap<(usize, usize), usize>,
}

impl<'a> BorelComplex<'a> {
    pub fn new(res: &'a Resolution, z: &'a GChainComplex) -> Self {
        let mut by_degree: HashMap<i64, Vec<(usize, usize)>> = HashMap::new();
        for (g, &gd) in res.gens.iter().enumerate() {
            for b in 0..z.dim() {
                by_degree.entry(gd + z.degs[b]).or_default().push((g, b));
            }
        }
        let mut pos = HashMap::new();
        for v in by_degree.values() {
            for (i, &key) in v.iter().enumerate() {
                pos.insert(key, i);
            }
        }
        BorelComplex { res, z, by_degree, pos }
    }

    fn basis(&self, deg: i64) -> &[(usize, usize)] {
        self.by_degree.get(&deg).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// ∂(g ⊗ z) = Σ h ⊗ κ(α)z over ∂g = Σ αh, plus g ⊗ ∂z.
    fn boundary_of(&self, g: usize, b: usize) -> Vec<(usize, usize)> {
        let mut acc: Vec<(usize, usize)> = Vec::new();
        let mut put = |key: (usize, usize)| {
            if let Some(p) = acc.iter().position(|&x| x == key) {
                acc.remove(p);
            } else {
                acc.push(key);
            }
        };
        for &(h, coeff) in &self.res.diffs[g] {
            for m in coeff.monos() {
                for &t in &self.z.apply_mono(mono_kappa(m), b) {
                    put((h, t));
                }
            }
        }
        for &t in self.z.d_of(b) {
            put((g, t));
        }
        acc
    }

    fn boundary_rank(&self, deg: i64, allowed: Option<&[usize]>) -> usize {
        let mut basis = RowBasis::new(self.basis(deg - 1).len().max(1));
        let mut rank = 0;
        for &(g, b) in self.basis(deg) {
            if let Some(a) = allowed {
                if !a.contains(&b) {
                    continue;
                }
            }
            let cols: Vec<usize> =
                self.boundary_of(g, b).into_iter().map(|k| self.pos[&k]).collect();
            if basis.insert_bits(&cols) {
                rank += 1;
            }
        }
        rank
    }

    /// Homology dimensions at integer degrees lo..=hi (unshifted).
    pub fn dims(&self, lo: i64, hi: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut rank_here = self.boundary_rank(lo, None);
        for d in lo..=hi {
            let rank_above = self.boundary_rank(d + 1, None);
            let cycles = self.basis(d).len() - rank_here;
            out.push(cycles - rank_above);
            rank_here = rank_above;
        }
        out
    }

    /// Rank of the image of H(coinv(R)) -> H(coinv(Z)) per degree on
    /// lo..=hi, where R is the fixed subcomplex of Z.
    pub fn fixed_image_profile(&self, lo: i64, hi: i64) -> Vec<usize> {
        let fixed = &self.z.fixed;
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for deg in lo..=hi {
            // Cycles of the restricted complex at this degree.
            let src_sub: Vec<(usize, usize)> = self
                .basis(deg)
                .iter()
                .copied()
                .filter(|&(_, b)| fixed.contains(&b))
                .collect();
            let tgt_len = self.basis(deg - 1).len().max(1);
            let mut sub = BitMatrix::zero(src_sub.len(), tgt_len);
            for (r, &(g, b)) in src_sub.iter().enumerate() {
                for key in self.boundary_of(g, b) {
                    sub.flip(r, self.pos[&key]);
                }
            }
            let sub_cycles = sub.transposed().kernel_basis();
            // Boundaries of the full complex from one degree up.
            let mut basis = RowBasis::new(self.basis(deg).len().max(1));
            for &(g, b) in self.basis(deg + 1) {
                let cols: Vec<usize> =
                    self.boundary_of(g, b).into_iter().map(|k| self.pos[&k]).collect();
                basis.insert_bits(&cols);
            }
            let mut rank = 0;
            for r in 0..sub_cycles.rows() {
                let cols: Vec<usize> = (0..src_sub.len())
                    .filter(|&c| sub_cycles.get(r, c))
                    .map(|c| self.pos[&src_sub[c]])
                    .collect();
                if basis.insert_bits(&cols) {
                    rank += 1;
                }
            }
            out.push(rank);
        }
        out
    }
}

/// Required resolution depth for reading Z's Borel homology through
/// `raw_hi`.
fn depth_for(z: &GChainComplex, raw_hi: i64) -> i64 {
    (raw_hi + 1 - z.min_deg()).max(0)
}

/// F₂-dimensions of the Borel homology of `(Z, m, n)` at integer degrees
/// `lo..=hi`, with the `[m + 4n]` shift applied, reusing a shared
/// resolution.
pub fn borel_dims_with(
    res: &mut Resolution,
    z: &GChainComplex,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>, OracleError> {
    let shift = z.total_shift();
    let shift = shift.as_integer().ok_or(OracleError::NonIntegerShift(shift))?;
    let (raw_lo, raw_hi) = (lo + shift, hi + shift);
    res.extend_to(depth_for(z, raw_hi));
    let borel = BorelComplex::new(res, z);
    Ok(borel.dims(raw_lo, raw_hi))
}

pub fn borel_dims(
    z: &GChainComplex,
    algebra: Algebra,
    lo: i64,
    hi: i64,
) -> Result<Vec<usize>, OracleError> {
    let mut res = Resolution::new(algebra);
    borel_dims_with(&mut res, z, lo, hi)
}

/// The minimal degrees of the localized part in residues 0, 1, 2 mod 4,
/// computed as the image of the fixed-part inclusion, plus the resulting
/// Manolescu invariants of the triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbcProfile {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub alpha: Grading,
    pub beta: Grading,
    pub gamma: Grading,
}

pub fn abc_profile_with(
    res: &mut Resolution,
    z: &GChainComplex,
    up_to: i64,
    margin: i64,
) -> Result<AbcProfile, OracleError> {
    assert_eq!(res.algebra(), Algebra::G);
    if z.fixed.len() != 1 || z.degs[z.fixed[0]] != 0 {
        return Err(OracleError::InvalidFixedPart(format!(
            "expected a one-point fixed set in degree 0, found {} cells",
            z.fixed.len()
        )));
    }
    let cap = up_to + margin;
    res.extend_to(depth_for(z, cap));
    let borel = BorelComplex::new(res, z);
    let profile = borel.fixed_image_profile(0, cap);
    // Localization: the image profile must be 4-periodic across the
    // margin window.
    for d in (up_to.max(0))..=(cap - 4) {
        if profile[d as usize] != profile[(d + 4) as usize] {
            return Err(OracleError::TruncationTooLow(format!(
                "fixed-image profile not 4-periodic at degree {d}"
            )));
        }
    }
    let first = |residue: i64| -> Result<i64, OracleError> {
        (0..=cap)
            .find(|&d| d.rem_euclid(4) == residue && profile[d as usize] > 0)
            .ok_or_else(|| {
                OracleError::TruncationTooLow(format!(
                    "no localized class in residue {residue} below {cap}"
                ))
            })
    };
    let a = first(0)?;
    let b = first(1)? - 1;
    let c = first(2)? - 2;
    let m = Grading::from(z.shift_m);
    let two_n = Grading::from(num_rational::Rational64::from_integer(2) * z.shift_n);
    let inv = |x: i64| Grading::from(x).half() - m.half() - two_n;
    Ok(AbcProfile { a, b, c, alpha: inv(a), beta: inv(b), gamma: inv(c) })
}

pub fn abc_profile(z: &GChainComplex, up_to: i64, margin: i64) -> Result<AbcProfile, OracleError> {
    let mut res = Resolution::new(Algebra::G);
    abc_profile_with(&mut res, z, up_to, margin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::Grading;

    #[test]
    fn resolutions_are_exact() {
        for alg in [Algebra::G, Algebra::S1] {
            let mut r = Resolution::new(alg);
            r.extend_to(12);
            let h = r.homology_dims(12);
            assert_eq!(h[0], 1, "{alg:?}");
            assert!(h[1..].iter().all(|&x| x == 0), "{alg:?}: {h:?}");
        }
    }

    #[test]
    fn borel_of_point_is_classifying_space() {
        let pt = GChainComplex::point();
        let dims = borel_dims(&pt, Algebra::G, 0, 8).unwrap();
        assert_eq!(dims, vec![1, 1, 1, 0, 1, 1, 1, 0, 1]);
        let dims = borel_dims(&pt, Algebra::S1, 0, 7).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn borel_of_free_block_restricts_one_tower() {
        let z = GChainComplex::free_tower(0, 1);
        let dims = borel_dims(&z, Algebra::G, 0, 5).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 0, 0, 0]);
        let z = GChainComplex::free_tower(-2, 3);
        let dims = borel_dims(&z, Algebra::G, -2, 4).unwrap();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn free_block_has_doubled_circle_towers() {
        let z = GChainComplex::free_tower(-2, 3);
        let dims = borel_dims(&z, Algebra::S1, -4, 6).unwrap();
        assert_eq!(dims, vec![0, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn standard_small_case_matches_towers() {
        let z = GChainComplex::standard(Grading::from(0), &[(1, 1)]);
        let dims = borel_dims(&z, Algebra::S1, 0, 8).unwrap();
        assert_eq!(dims, vec![0, 1, 1, 0, 1, 0, 1, 0, 1]);
        let dims = borel_dims(&z, Algebra::G, 0, 9).unwrap();
        assert_eq!(dims, vec![0, 1, 1, 0, 1, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn h_suspension_shifts_by_four() {
        let pt = GChainComplex::point();
        let sus = pt.suspend(super::super::complex::Suspension::H);
        let dims = borel_dims(&sus, Algebra::G, 0, 10).unwrap();
        assert_eq!(dims, vec![0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1]);
    }

    #[test]
    fn abc_of_point_vanishes() {
        let pt = GChainComplex::point();
        let p = abc_profile(&pt, 8, 8).unwrap();
        assert_eq!((p.a, p.b, p.c), (0, 0, 0));
        assert_eq!(p.alpha, Grading::from(0));
        assert_eq!(p.beta, Grading::from(0));
        assert_eq!(p.gamma, Grading::from(0));
    }

    #[test]
    fn abc_of_small_standard_complex() {
        let z = GChainComplex::standard(Grading::from(0), &[(1, 1)]);
        let p = abc_profile(&z, 8, 8).unwrap();
        assert_eq!((p.a, p.b, p.c), (4, 0, 0));
        assert_eq!(p.alpha, Grading::from(2));
        assert_eq!(p.beta, Grading::from(0));
        assert_eq!(p.gamma, Grading::from(0));
    }

    #[test]
    fn smash_of_free_blocks_matches_quotient_count() {
        // The product of two free orbits is again free, and its circle
        // quotient is two copies of the group: four classes in each of
        // the two degrees above the combined shift.
        let z1 = GChainComplex::free_tower(1, 1);
        let w = z1.smash(&z1);
        let dims = borel_dims(&w, Algebra::S1, 0, 5).unwrap();
        assert_eq!(dims, vec![0, 0, 4, 4, 0, 0]);
        // Cross-check: the same count from the group side, where the
        // free part contributes one restricted tower per circle class.
        let dims_g = borel_dims(&w, Algebra::G, 0, 5).unwrap();
        assert_eq!(dims_g.iter().sum::<usize>(), 4);
    }

    #[test]
    fn truncation_error_when_margin_misses_localization() {
        let z = GChainComplex::standard(Grading::from(0), &[(1, 1)]);
        assert!(matches!(
            abc_profile(&z, 0, 0),
            Err(OracleError::TruncationTooLow(_))
        ));
    }

    #[test]
    fn abc_rejects_nontrivial_fixed_part() {
        let z = GChainComplex::standard(Grading::from(0), &[(1, 1)])
            .suspend(super::super::complex::Suspension::RTilde);
        assert!(matches!(
            abc_profile(&z, 8, 8),
            Err(OracleError::InvalidFixedPart(_))
        ));
    }
}
