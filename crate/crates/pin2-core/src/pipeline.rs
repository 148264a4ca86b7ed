//! From a Heegaard Floer tower decomposition to the Pin(2)-equivariant
//! package: the F[v]-module with its q-arrows, the correction terms
//! (alpha, beta, gamma, delta, mu-bar), connected homology, the chain
//! local equivalence class, and cobordism-obstruction verdicts.

use crate::grading::Grading;
use crate::tower::{GradedModule, Step, Tower};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The canonical input: `HF+ = T+_{s+d1+2n1-1} ⊕ ⊕_i T+_{s+d_i}(c_i)
/// ⊕ ⊕_i T+_{s+d_i}(n_i) ⊕ J^{⊕2}[-s]`, where
/// `c_i = (d_{i+1} + 2 n_{i+1} - d_i)/2` with the sentinel
/// `(d_{N+1}, n_{N+1}) = (1, 0)`.
///
/// `j` carries relative gradings; it is shifted by `[-s]` only when
/// materialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HfDecomposition {
    pub s: Grading,
    /// Pairs `(d_i, n_i)`, `d_i` odd and strictly increasing, `d_N <= 1`.
    pub pairs: Vec<(i64, u32)>,
    pub j: GradedModule,
}

impl<'de> Deserialize<'de> for HfDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            s: Grading,
            pairs: Vec<(i64, u32)>,
            #[serde(default)]
            j: Option<GradedModule>,
        }
        let w = Wire::deserialize(deserializer)?;
        Ok(HfDecomposition {
            s: w.s,
            pairs: w.pairs,
            j: w.j.unwrap_or_else(|| GradedModule::zero(Step::U)),
        })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("EvenD: d_{index} = {d} must be odd")]
    EvenD { index: usize, d: i64 },
    #[error("DNotAtMostOne: d_{index} = {d} exceeds 1")]
    DNotAtMostOne { index: usize, d: i64 },
    #[error("MonotonicityViolation: {what} at i = {index}")]
    MonotonicityViolation { index: usize, what: &'static str },
    #[error("LengthViolation: {what}")]
    LengthViolation { what: String },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("MultipleInfiniteTowers: found {0}")]
    MultipleInfiniteTowers(usize),
    #[error("NotJSplitForm: {0}")]
    NotJSplitForm(String),
}

impl HfDecomposition {
    pub fn new(s: Grading, pairs: Vec<(i64, u32)>, j: GradedModule) -> Self {
        HfDecomposition { s, pairs, j }
    }

    pub fn without_j(s: Grading, pairs: Vec<(i64, u32)>) -> Self {
        HfDecomposition { s, pairs, j: GradedModule::zero(Step::U) }
    }

    /// Leading pair, falling back to the sentinel `(1, 0)`.
    pub fn first_pair(&self) -> (i64, i64) {
        self.pairs
            .first()
            .map(|&(d, n)| (d, n as i64))
            .unwrap_or((1, 0))
    }

    pub fn validate(&self) -> Result<(), DecompError> {
        for (i, &(d, n)) in self.pairs.iter().enumerate() {
            if d.rem_euclid(2) == 0 {
                return Err(DecompError::EvenD { index: i + 1, d });
            }
            if d > 1 {
                return Err(DecompError::DNotAtMostOne { index: i + 1, d });
            }
            if n == 0 {
                return Err(DecompError::LengthViolation {
                    what: format!("n_{} must be positive", i + 1),
                });
            }
        }
        for i in 1..self.pairs.len() {
            let (dp, np) = self.pairs[i - 1];
            let (d, n) = self.pairs[i];
            if d <= dp {
                return Err(DecompError::MonotonicityViolation {
                    index: i + 1,
                    what: "d_i must strictly increase",
                });
            }
            if 2 * (n as i64) + d >= 2 * (np as i64) + dp {
                return Err(DecompError::MonotonicityViolation {
                    index: i + 1,
                    what: "d_i + 2 n_i must strictly decrease",
                });
            }
        }
        if let Some(&(d, n)) = self.pairs.last() {
            if d + 2 * (n as i64) < 3 {
                return Err(DecompError::LengthViolation {
                    what: format!("d_N + 2 n_N = {} must be at least 3", d + 2 * n as i64),
                });
            }
        }
        if self.j.step() != Step::U {
            return Err(DecompError::LengthViolation {
                what: "J must be a step-2 module".into(),
            });
        }
        if !self.j.infinite_towers().is_empty() {
            return Err(DecompError::LengthViolation {
                what: "J must be a finite module".into(),
            });
        }
        if let Some(t) = self.j.finite_towers().first() {
            if !t.bottom.is_integer() {
                return Err(DecompError::LengthViolation {
                    what: "J carries relative (integer) gradings".into(),
                });
            }
        }
        Ok(())
    }
}

/// The S¹-equivariant module of the decomposition, with absolute gradings.
pub fn forward_s1(dec: &HfDecomposition) -> Result<GradedModule, DecompError> {
    dec.validate()?;
    let (d1, n1) = dec.first_pair();
    let mut m = GradedModule::zero(Step::U);
    m.push_infinite(dec.s + Grading::from(d1 + 2 * n1 - 1));
    for i in 0..dec.pairs.len() {
        let (d, n) = dec.pairs[i];
        let (dn, nn) = dec
            .pairs
            .get(i + 1)
            .map(|&(d, n)| (d, n as i64))
            .unwrap_or((1, 0));
        let connector = (dn + 2 * nn - d) / 2;
        debug_assert!(connector >= 0 && (dn + 2 * nn - d) % 2 == 0);
        m.push_finite(dec.s + Grading::from(d), connector as u32);
        m.push_finite(dec.s + Grading::from(d), n);
    }
    let j2 = dec.j.direct_sum(&dec.j).shift(-dec.s);
    Ok(m.direct_sum(&j2))
}

/// Recover the decomposition from a module in the image of [`forward_s1`].
///
/// Bottoms hosting summands of odd multiplicity locate `s + d_i`; at each
/// such bottom the larger odd length is `n_i` and the smaller (when
/// present) is the connector. `s` is fixed by the sentinel at the top
/// pair, and the leftover towers must halve into `J`.
pub fn extract_parameters(m: &GradedModule) -> Result<HfDecomposition, ExtractError> {
    if m.step() != Step::U {
        return Err(ExtractError::NotJSplitForm("expected a step-2 module".into()));
    }
    let inf = m.infinite_towers();
    if inf.len() != 1 {
        return Err(ExtractError::MultipleInfiniteTowers(inf.len()));
    }
    let inf_bottom = inf[0].bottom;

    let mut mult: BTreeMap<(Grading, u32), usize> = BTreeMap::new();
    for t in m.finite_towers() {
        *mult.entry((t.bottom, t.len.unwrap())).or_default() += 1;
    }

    // Odd-multiplicity lengths per bottom, bottoms ascending.
    let mut odd: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
    for (&(b, l), &c) in &mult {
        if c % 2 == 1 {
            odd.entry(b).or_default().push(l);
        }
    }
    for lens in odd.values() {
        if lens.len() > 2 {
            return Err(ExtractError::NotJSplitForm(format!(
                "{} odd-multiplicity classes at one degree",
                lens.len()
            )));
        }
    }

    let bottoms: Vec<Grading> = odd.keys().copied().collect();
    let (s, pairs) = if bottoms.is_empty() {
        (inf_bottom, Vec::new())
    } else {
        // Work down from the top pair, where the sentinel fixes s.
        let top = *bottoms.last().unwrap();
        let lens_top = &odd[&top];
        let (s, d_top, n_top) = match lens_top.as_slice() {
            [n] => (top - Grading::from(1), 1i64, *n),
            [c, n] => {
                let d = 1 - 2 * (*c as i64);
                (top - Grading::from(d), d, *n)
            }
            _ => unreachable!(),
        };
        let mut pairs_rev: Vec<(i64, u32)> = vec![(d_top, n_top)];
        for &b in bottoms.iter().rev().skip(1) {
            let d = match (b - s).as_integer() {
                Some(d) => d,
                None => {
                    return Err(ExtractError::NotJSplitForm(
                        "odd-class degree not an integer offset from s".into(),
                    ))
                }
            };
            let (d_next, n_next) = *pairs_rev.last().unwrap();
            let connector = (d_next + 2 * (n_next as i64) - d) / 2;
            let lens = &odd[&b];
            match lens.as_slice() {
                [c, n] if *c as i64 == connector && (d_next + 2 * (n_next as i64) - d) % 2 == 0 => {
                    pairs_rev.push((d, *n));
                }
                _ => {
                    return Err(ExtractError::NotJSplitForm(format!(
                        "odd classes at degree {b} do not match the chain condition"
                    )))
                }
            }
        }
        pairs_rev.reverse();
        (s, pairs_rev)
    };

    let dec_shell = HfDecomposition::without_j(s, pairs.clone());
    dec_shell
        .validate()
        .map_err(|e| ExtractError::NotJSplitForm(e.to_string()))?;

    let (d1, n1) = dec_shell.first_pair();
    if inf_bottom != s + Grading::from(d1 + 2 * n1 - 1) {
        return Err(ExtractError::NotJSplitForm(format!(
            "infinite tower sits at {inf_bottom}, expected {}",
            s + Grading::from(d1 + 2 * n1 - 1)
        )));
    }

    // Remove one copy of each bar and connector; the rest must halve into J.
    for i in 0..pairs.len() {
        let (d, n) = pairs[i];
        let (dn, nn) = pairs
            .get(i + 1)
            .map(|&(d, n)| (d, n as i64))
            .unwrap_or((1, 0));
        let connector = ((dn + 2 * nn - d) / 2) as u32;
        for len in [n, connector] {
            if len == 0 {
                continue;
            }
            let key = (s + Grading::from(d), len);
            match mult.get_mut(&key) {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    return Err(ExtractError::NotJSplitForm(format!(
                        "missing summand of length {len} at degree {}",
                        key.0
                    )))
                }
            }
        }
    }
    let mut j = GradedModule::zero(Step::U);
    for (&(b, l), &c) in &mult {
        if c % 2 != 0 {
            return Err(ExtractError::NotJSplitForm(format!(
                "summands at degree {b} do not pair up"
            )));
        }
        let rel = b - s;
        if !rel.is_integer() {
            return Err(ExtractError::NotJSplitForm(
                "J summand at non-integer offset from s".into(),
            ));
        }
        for _ in 0..c / 2 {
            j.push_finite(rel, l);
        }
    }
    Ok(HfDecomposition::new(s, pairs, j))
}

/// The pair bookkeeping behind the F[v]-module: the multiset `J0` from the
/// mod-4 rule on `(d_i, n_i)`, its maximal elements under
/// `(a,b) ⪰ (c,d) ⟺ a ≥ c and a+4b ≥ c+4d`, the leftover multiplicities
/// `m(a,b)`, and the repeated-summand module `J_rep`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JPairs {
    pub j0: Vec<(i64, i64)>,
    pub jmax: Vec<(i64, i64)>,
    pub multiplicities: Vec<((i64, i64), u32)>,
    pub j_rep: GradedModule,
}

fn dominates(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0 >= b.0 && a.0 + 4 * a.1 >= b.0 + 4 * b.1
}

pub fn build_jpairs(dec: &HfDecomposition) -> Result<JPairs, DecompError> {
    dec.validate()?;
    let mut j0: Vec<(i64, i64)> = Vec::new();
    for &(d, n) in &dec.pairs {
        let n = n as i64;
        let (a, b) = if d.rem_euclid(4) == 1 {
            (d, (n + 1) / 2)
        } else {
            (d + 2, n / 2)
        };
        if b > 0 {
            j0.push((a, b));
        }
    }
    j0.sort();
    let jmax: Vec<(i64, i64)> = {
        let mut mx: Vec<(i64, i64)> = Vec::new();
        for &p in &j0 {
            if mx.contains(&p) {
                continue;
            }
            if j0.iter().all(|&q| q == p || !dominates(q, p)) {
                mx.push(p);
            }
        }
        mx.sort();
        mx
    };
    // Maximal pairs form an antichain: a ascending forces a+4b descending.
    debug_assert!(jmax.windows(2).all(|w| w[0].0 < w[1].0
        && w[0].0 + 4 * w[0].1 > w[1].0 + 4 * w[1].1));

    let mut counts: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    for &p in &j0 {
        *counts.entry(p).or_default() += 1;
    }
    let mut multiplicities: Vec<((i64, i64), u32)> = Vec::new();
    let mut j_rep = GradedModule::zero(Step::V);
    for (&p, &c) in &counts {
        let m = if jmax.contains(&p) { c - 1 } else { c };
        if m > 0 {
            multiplicities.push((p, m));
            for _ in 0..m {
                j_rep.push_finite(Grading::from(p.0), p.1 as u32);
            }
        }
    }
    Ok(JPairs { j0, jmax, multiplicities, j_rep })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrowKind {
    /// q maps the source tower isomorphically one degree down onto the target.
    TowerIso,
    /// q is nonzero exactly on source elements of degree above the threshold.
    IsoAbove { threshold: Grading },
    /// q sends the source generator to the matching element of the target
    /// (reducible) tower, v-equivariantly below it.
    GeneratorHit,
    /// q annihilates the source tower.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QArrow {
    pub source: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(flatten)]
    pub kind: ArrowKind,
}

/// An F[v]-module together with the q-action, one arrow per tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QvModule {
    pub towers: Vec<Tower>,
    pub arrows: Vec<QArrow>,
}

impl QvModule {
    pub fn base(&self) -> GradedModule {
        GradedModule::from_towers(Step::V, self.towers.iter().copied())
    }

    /// Where q sends the element of `tower` in degree `e`, if nonzero.
    pub fn q_image(&self, tower: usize, e: Grading) -> Option<(usize, Grading)> {
        let arrow = self.arrows.iter().find(|a| a.source == tower)?;
        let tgt = arrow.target?;
        match arrow.kind {
            ArrowKind::Zero => None,
            ArrowKind::TowerIso | ArrowKind::IsoAbove { .. } | ArrowKind::GeneratorHit => {
                let down = e - Grading::from(1);
                let t = &self.towers[tgt];
                let diff = down - t.bottom;
                let k = diff.as_integer()?;
                if k < 0 || k % 4 != 0 {
                    return None;
                }
                if let Some(n) = t.len {
                    if k / 4 >= n as i64 {
                        return None;
                    }
                }
                Some((tgt, down))
            }
        }
    }
}

/// Full SWFH^G of a valid decomposition, as base towers plus q-arrows.
pub fn compute_swfhg(dec: &HfDecomposition) -> Result<QvModule, DecompError> {
    let jp = build_jpairs(dec)?;
    let s = dec.s;
    let (d1, n1) = dec.first_pair();
    let coker_bottom = 4 * ((d1 + 2 * n1 + 1).div_euclid(4));

    let mut towers: Vec<Tower> = Vec::new();
    let mut arrows: Vec<QArrow> = Vec::new();

    let abs = |rel: i64| s + Grading::from(rel);
    let t_a = 0;
    towers.push(Tower::infinite(abs(coker_bottom)));
    let t_1 = 1;
    towers.push(Tower::infinite(abs(1)));
    let t_2 = 2;
    towers.push(Tower::infinite(abs(2)));
    arrows.push(QArrow { source: t_a, target: None, kind: ArrowKind::Zero });
    arrows.push(QArrow {
        source: t_1,
        target: Some(t_a),
        kind: ArrowKind::IsoAbove { threshold: abs(coker_bottom) },
    });
    arrows.push(QArrow { source: t_2, target: Some(t_1), kind: ArrowKind::TowerIso });

    // Kernel chain over the maximal pairs, with sentinel (1, 0).
    for i in 0..jp.jmax.len() {
        let (a, _) = jp.jmax[i];
        let (an, bn) = jp.jmax.get(i + 1).copied().unwrap_or((1, 0));
        debug_assert_eq!((an + 4 * bn - a).rem_euclid(4), 0);
        let len = (an + 4 * bn - a) / 4;
        if len > 0 {
            towers.push(Tower::finite(abs(a), len as u32));
            arrows.push(QArrow { source: towers.len() - 1, target: None, kind: ArrowKind::Zero });
        }
    }

    for t in jp.j_rep.finite_towers() {
        towers.push(Tower::finite(s + t.bottom, t.len.unwrap()));
        arrows.push(QArrow { source: towers.len() - 1, target: None, kind: ArrowKind::Zero });
    }

    let res_j = dec
        .j
        .restrict_to_v()
        .expect("J is validated as a step-2 module");
    for t in res_j.finite_towers() {
        towers.push(Tower::finite(s + t.bottom, t.len.unwrap()));
        arrows.push(QArrow { source: towers.len() - 1, target: None, kind: ArrowKind::Zero });
    }

    // Mod-4 rule towers; their generators hit the reducible part when the
    // degree below them is populated.
    for &(d, n) in &dec.pairs {
        let n = n as i64;
        let (bot, len) = if d.rem_euclid(4) == 1 {
            (d + 2, n / 2)
        } else {
            (d, (n + 1) / 2)
        };
        if len == 0 {
            continue;
        }
        let tower = Tower::finite(abs(bot), len as u32);
        towers.push(tower);
        let src = towers.len() - 1;
        let gen_deg = tower.top(Step::V).unwrap();
        let hit = gen_deg - Grading::from(1);
        let target = [t_a, t_1, t_2].into_iter().find(|&t| {
            let diff = hit - towers[t].bottom;
            matches!(diff.as_integer(), Some(k) if k >= 0 && k % 4 == 0)
        });
        match target {
            Some(t) => arrows.push(QArrow { source: src, target: Some(t), kind: ArrowKind::GeneratorHit }),
            None => arrows.push(QArrow { source: src, target: None, kind: ArrowKind::Zero }),
        }
    }

    // Canonical ordering: towers sorted, arrows re-indexed.
    let mut order: Vec<usize> = (0..towers.len()).collect();
    order.sort_by_key(|&i| (towers[i], i));
    let mut rank = vec![0usize; towers.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let towers: Vec<Tower> = order.iter().map(|&i| towers[i]).collect();
    let mut arrows: Vec<QArrow> = arrows
        .into_iter()
        .map(|a| QArrow {
            source: rank[a.source],
            target: a.target.map(|t| rank[t]),
            kind: a.kind,
        })
        .collect();
    arrows.sort_by_key(|a| a.source);
    Ok(QvModule { towers, arrows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ManolescuInvariants {
    pub alpha: Grading,
    pub beta: Grading,
    pub gamma: Grading,
    pub delta: Grading,
    pub mu_bar: Grading,
}

pub fn compute_invariants(dec: &HfDecomposition) -> Result<ManolescuInvariants, DecompError> {
    dec.validate()?;
    let (d1, n1) = dec.first_pair();
    let half_s = dec.s.half();
    Ok(ManolescuInvariants {
        alpha: half_s + Grading::from(2 * (d1 + 2 * n1 + 1).div_euclid(4)),
        beta: half_s,
        gamma: half_s,
        delta: (dec.s + Grading::from(d1 + 2 * n1 - 1)).half(),
        mu_bar: -half_s,
    })
}

/// `HF_conn`: the bars and connectors, nothing else.
pub fn connected_homology(dec: &HfDecomposition) -> Result<GradedModule, DecompError> {
    dec.validate()?;
    let mut m = GradedModule::zero(Step::U);
    for i in 0..dec.pairs.len() {
        let (d, n) = dec.pairs[i];
        let (dn, nn) = dec
            .pairs
            .get(i + 1)
            .map(|&(d, n)| (d, n as i64))
            .unwrap_or((1, 0));
        m.push_finite(dec.s + Grading::from(d), ((dn + 2 * nn - d) / 2) as u32);
        m.push_finite(dec.s + Grading::from(d), n);
    }
    Ok(m)
}

/// The chain-local-equivalence class `C(s, {d_i}, {n_i})`; two classes are
/// equal exactly when all components agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClass {
    pub s: Grading,
    pub pairs: Vec<(i64, u32)>,
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.pairs.iter().map(|p| p.0.to_string()).collect();
        let ns: Vec<String> = self.pairs.iter().map(|p| p.1.to_string()).collect();
        write!(
            f,
            "C({}, {{{}}}, {{{}}})",
            crate::grading::pretty(self.s),
            ds.join(","),
            ns.join(",")
        )
    }
}

pub fn local_class(dec: &HfDecomposition) -> Result<LocalClass, DecompError> {
    dec.validate()?;
    Ok(LocalClass { s: dec.s, pairs: dec.pairs.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CompareVerdict {
    Obstructed { differing: Vec<String> },
    NoObstruction,
}

/// Compare the homology cobordism invariants of two decompositions,
/// reporting every differing component.
pub fn compare(a: &HfDecomposition, b: &HfDecomposition) -> Result<CompareVerdict, DecompError> {
    a.validate()?;
    b.validate()?;
    let mut differing = Vec::new();
    if a.s != b.s {
        differing.push("s".to_string());
    }
    let ds = |d: &HfDecomposition| d.pairs.iter().map(|p| p.0).collect::<Vec<_>>();
    let ns = |d: &HfDecomposition| d.pairs.iter().map(|p| p.1).collect::<Vec<_>>();
    if ds(a) != ds(b) {
        differing.push("{d_i}".to_string());
    }
    if ns(a) != ns(b) {
        differing.push("{n_i}".to_string());
    }
    if connected_homology(a)? != connected_homology(b)? {
        differing.push("connected homology".to_string());
    }
    if differing.is_empty() {
        Ok(CompareVerdict::NoObstruction)
    } else {
        Ok(CompareVerdict::Obstructed { differing })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeifertConsistency {
    NegOk,
    PosOk,
    Both,
    Neither,
}

/// Could `(alpha, beta, gamma, delta)` belong to a Seifert space of either
/// fibration sign? Used to certify spaces not cobordant to any Seifert
/// fibration.
pub fn seifert_consistency(inv: &ManolescuInvariants) -> SeifertConsistency {
    let one = Grading::from(1);
    let neg = inv.beta == inv.gamma && {
        let expect = if inv.delta.same_parity(inv.beta) {
            inv.delta
        } else {
            inv.delta + one
        };
        inv.alpha == expect
    };
    let pos = inv.alpha == inv.beta && {
        let expect = if inv.delta.same_parity(inv.beta) {
            inv.delta
        } else {
            inv.delta - one
        };
        inv.gamma == expect
    };
    match (neg, pos) {
        (true, true) => SeifertConsistency::Both,
        (true, false) => SeifertConsistency::NegOk,
        (false, true) => SeifertConsistency::PosOk,
        (false, false) => SeifertConsistency::Neither,
    }
}

/// Module-level projective-type criterion: at most one pair, and the top
/// pair has `d = 1` so that no connector survives.
pub fn is_projective_dec(dec: &HfDecomposition) -> bool {
    match dec.pairs.as_slice() {
        [] => true,
        [(d, _)] => *d == 1,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> Grading {
        Grading::from(v)
    }

    fn dec(s: i64, pairs: &[(i64, u32)]) -> HfDecomposition {
        HfDecomposition::without_j(g(s), pairs.to_vec())
    }

    fn tfin(b: i64, n: u32) -> Tower {
        Tower::finite(g(b), n)
    }

    #[test]
    fn validate_examples() {
        assert!(dec(0, &[(1, 1)]).validate().is_ok());
        assert_eq!(
            dec(0, &[(3, 1)]).validate().unwrap_err(),
            DecompError::DNotAtMostOne { index: 1, d: 3 }
        );
        assert!(dec(0, &[(-5, 6), (-3, 4), (-1, 2)]).validate().is_ok());
        assert!(matches!(
            dec(0, &[(2, 1)]).validate().unwrap_err(),
            DecompError::EvenD { .. }
        ));
        assert!(matches!(
            dec(0, &[(-1, 2), (-3, 4)]).validate().unwrap_err(),
            DecompError::MonotonicityViolation { .. }
        ));
        assert!(matches!(
            dec(0, &[(1, 0)]).validate().unwrap_err(),
            DecompError::LengthViolation { .. }
        ));
        assert!(matches!(
            dec(0, &[(-1, 1)]).validate().unwrap_err(),
            DecompError::LengthViolation { .. }
        ));
    }

    #[test]
    fn forward_worked_example() {
        let m = forward_s1(&dec(0, &[(-5, 6), (-3, 4), (-1, 2)])).unwrap();
        let want = GradedModule::from_towers(
            Step::U,
            [
                Tower::infinite(g(6)),
                tfin(-5, 6),
                tfin(-5, 5),
                tfin(-3, 4),
                tfin(-3, 3),
                tfin(-1, 2),
                tfin(-1, 1),
            ],
        );
        assert_eq!(m, want);
    }

    #[test]
    fn forward_s3_and_small() {
        let m = forward_s1(&dec(0, &[])).unwrap();
        assert_eq!(m, GradedModule::from_towers(Step::U, [Tower::infinite(g(0))]));
        let m = forward_s1(&dec(-2, &[(1, 1)])).unwrap();
        let want = GradedModule::from_towers(Step::U, [Tower::infinite(g(0)), tfin(-1, 1)]);
        assert_eq!(m, want);
    }

    #[test]
    fn extract_inverts_forward() {
        let cases = [
            dec(0, &[(-5, 6), (-3, 4), (-1, 2)]),
            dec(0, &[]),
            dec(-2, &[(1, 1)]),
            HfDecomposition::new(
                g(4),
                vec![(-3, 4), (1, 1)],
                GradedModule::from_towers(Step::U, [tfin(-7, 2), tfin(0, 1)]),
            ),
        ];
        for d in cases {
            let m = forward_s1(&d).unwrap();
            let back = extract_parameters(&m).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn extract_rejects_bad_modules() {
        let two_inf = GradedModule::from_towers(
            Step::U,
            [Tower::infinite(g(0)), Tower::infinite(g(2))],
        );
        assert_eq!(
            extract_parameters(&two_inf).unwrap_err(),
            ExtractError::MultipleInfiniteTowers(2)
        );
        // Unpairable leftovers.
        let m = GradedModule::from_towers(Step::U, [Tower::infinite(g(0)), tfin(-2, 1)]);
        assert!(matches!(
            extract_parameters(&m).unwrap_err(),
            ExtractError::NotJSplitForm(_)
        ));
        // Wrong infinite tower position relative to the odd classes.
        let m = GradedModule::from_towers(Step::U, [Tower::infinite(g(4)), tfin(1, 1)]);
        assert!(matches!(
            extract_parameters(&m).unwrap_err(),
            ExtractError::NotJSplitForm(_)
        ));
    }

    #[test]
    fn jpairs_examples() {
        // (0, [(-5,7),(-3,5)]): J0 = {(-3,3) x2}, Jmax = [(-3,3)], J_rep = V+_{-3}(3)
        let jp = build_jpairs(&dec(0, &[(-5, 7), (-3, 5)])).unwrap();
        assert_eq!(jp.j0, vec![(-3, 3), (-3, 3)]);
        assert_eq!(jp.jmax, vec![(-3, 3)]);
        assert_eq!(
            jp.j_rep,
            GradedModule::from_towers(Step::V, [Tower::finite(g(-3), 3)])
        );

        // Worked example: Jmax = [(-3,3),(1,1)], J_rep = V+_{-3}(2)
        let jp = build_jpairs(&dec(0, &[(-5, 6), (-3, 4), (-1, 2)])).unwrap();
        assert_eq!(jp.jmax, vec![(-3, 3), (1, 1)]);
        assert_eq!(
            jp.j_rep,
            GradedModule::from_towers(Step::V, [Tower::finite(g(-3), 2)])
        );

        // (-2, [(1,1)]): J0 = {(1,1)}, J_rep = 0
        let jp = build_jpairs(&dec(-2, &[(1, 1)])).unwrap();
        assert_eq!(jp.j0, vec![(1, 1)]);
        assert_eq!(jp.jmax, vec![(1, 1)]);
        assert!(jp.j_rep.is_zero());
    }

    #[test]
    fn swfhg_worked_example() {
        let q = compute_swfhg(&dec(0, &[(-5, 6), (-3, 4), (-1, 2)])).unwrap();
        let want = GradedModule::from_towers(
            Step::V,
            [
                Tower::infinite(g(8)),
                Tower::infinite(g(1)),
                Tower::infinite(g(2)),
                Tower::finite(g(-5), 3),
                Tower::finite(g(-3), 2),
                Tower::finite(g(-3), 2),
                Tower::finite(g(-1), 2),
                Tower::finite(g(-1), 1),
            ],
        );
        assert_eq!(q.base(), want);
    }

    #[test]
    fn swfhg_s3_is_bg_pattern() {
        let q = compute_swfhg(&dec(0, &[])).unwrap();
        let want = GradedModule::from_towers(
            Step::V,
            [Tower::infinite(g(0)), Tower::infinite(g(1)), Tower::infinite(g(2))],
        );
        assert_eq!(q.base(), want);
        let isos: Vec<_> = q
            .arrows
            .iter()
            .filter(|a| !matches!(a.kind, ArrowKind::Zero))
            .collect();
        assert_eq!(isos.len(), 2);
    }

    #[test]
    fn q_cubed_vanishes_on_arrows() {
        for d in [
            dec(0, &[(-5, 6), (-3, 4), (-1, 2)]),
            dec(0, &[(1, 1)]),
            dec(-2, &[(1, 1)]),
            dec(0, &[(-3, 4)]),
            dec(2, &[(-5, 7), (-3, 5)]),
        ] {
            let q = compute_swfhg(&d).unwrap();
            for (i, t) in q.towers.iter().enumerate() {
                let top = t
                    .top(Step::V)
                    .unwrap_or(t.bottom + Grading::from(40));
                let mut e = t.bottom;
                while e <= top {
                    let mut cur = Some((i, e));
                    for _ in 0..3 {
                        cur = cur.and_then(|(tw, deg)| q.q_image(tw, deg));
                    }
                    assert!(cur.is_none(), "q^3 nonzero from tower {i} degree {e:?}");
                    e += Grading::from(4);
                }
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let inv = compute_invariants(&dec(0, &[])).unwrap();
        assert_eq!(
            (inv.alpha, inv.beta, inv.gamma, inv.delta, inv.mu_bar),
            (g(0), g(0), g(0), g(0), g(0))
        );
        let inv = compute_invariants(&dec(-2, &[(1, 1)])).unwrap();
        assert_eq!(
            (inv.alpha, inv.beta, inv.gamma, inv.delta, inv.mu_bar),
            (g(1), g(-1), g(-1), g(0), g(1))
        );
    }

    #[test]
    fn connected_homology_examples() {
        assert!(connected_homology(&dec(0, &[])).unwrap().is_zero());
        // One pair (d1, n1) = (-1, 2) at s = 0: bars T+_{-1}(1) + T+_{-1}(2)
        let m = connected_homology(&dec(0, &[(-1, 2)])).unwrap();
        let want = GradedModule::from_towers(Step::U, [tfin(-1, 1), tfin(-1, 2)]);
        assert_eq!(m, want);
    }

    #[test]
    fn compare_and_local_class() {
        let a = dec(0, &[(1, 1)]);
        assert_eq!(compare(&a, &a).unwrap(), CompareVerdict::NoObstruction);
        let b = dec(0, &[(-1, 2)]);
        match compare(&a, &b).unwrap() {
            CompareVerdict::Obstructed { differing } => {
                assert!(differing.contains(&"{d_i}".to_string()));
                assert!(differing.contains(&"connected homology".to_string()));
            }
            _ => panic!("expected obstruction"),
        }
        assert_eq!(local_class(&a).unwrap().to_string(), "C(0, {1}, {1})");
        assert_eq!(local_class(&dec(0, &[])).unwrap().to_string(), "C(0, {}, {})");
    }

    #[test]
    fn consistency_examples() {
        let mk = |a: i64, b: i64, c: i64, d: i64| ManolescuInvariants {
            alpha: g(a),
            beta: g(b),
            gamma: g(c),
            delta: g(d),
            mu_bar: -g(b),
        };
        assert_eq!(seifert_consistency(&mk(2, 2, 0, 2)), SeifertConsistency::Neither);
        assert_eq!(seifert_consistency(&mk(1, -1, -1, 0)), SeifertConsistency::NegOk);
        assert_eq!(seifert_consistency(&mk(0, 0, 0, 0)), SeifertConsistency::Both);
    }

    #[test]
    fn projective_criterion() {
        assert!(is_projective_dec(&dec(0, &[])));
        assert!(is_projective_dec(&dec(-2, &[(1, 1)])));
        assert!(!is_projective_dec(&dec(0, &[(-1, 2)])));
        assert!(!is_projective_dec(&dec(0, &[(-5, 6), (-3, 4), (-1, 2)])));
    }
}
