//! Graded modules over F[U] and F[v] as multisets of towers.
//!
//! A tower is a cyclic summand: `bottom` is the lowest nonzero degree and
//! a finite tower of length `n` is supported in `n` degrees spaced by the
//! module's step (2 for the U-action, 4 for the v-action). Infinite towers
//! have no top. Towers are kept sparse; per-degree ranks are computed on
//! demand, so large families stay cheap.

use crate::grading::{pretty, Grading};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    /// U lowers degree by 2.
    U,
    /// v lowers degree by 4.
    V,
}

impl Step {
    pub fn spacing(self) -> i64 {
        match self {
            Step::U => 2,
            Step::V => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tower {
    pub bottom: Grading,
    /// `None` encodes an infinite tower.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<u32>,
}

impl Tower {
    pub fn finite(bottom: Grading, len: u32) -> Self {
        Tower { bottom, len: Some(len) }
    }

    pub fn infinite(bottom: Grading) -> Self {
        Tower { bottom, len: None }
    }

    /// Degree of the module generator (top element) of a finite tower.
    pub fn top(&self, step: Step) -> Option<Grading> {
        self.len
            .map(|n| self.bottom + Grading::from(step.spacing() * (n as i64 - 1)))
    }

    fn supports(&self, step: Step, d: Grading) -> bool {
        let diff = d - self.bottom;
        let Some(k) = diff.as_integer() else {
            return false;
        };
        if k < 0 || k % step.spacing() != 0 {
            return false;
        }
        match self.len {
            None => true,
            Some(n) => k / step.spacing() < n as i64,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("InvalidStep: expected a step-{expected} module, got step {got}")]
    InvalidStep { expected: i64, got: i64 },
    #[error("tower bottoms must differ by integers: {0} vs {1}")]
    IncommensurableBottoms(Grading, Grading),
}

/// Finite direct sum of towers, all of one step, in canonical order.
///
/// Equality is multiset equality of summands; zero-length towers are
/// dropped at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedModule {
    step: Step,
    finite: Vec<Tower>,
    infinite: Vec<Tower>,
}

impl GradedModule {
    pub fn zero(step: Step) -> Self {
        GradedModule { step, finite: Vec::new(), infinite: Vec::new() }
    }

    pub fn from_towers(step: Step, towers: impl IntoIterator<Item = Tower>) -> Self {
        let mut m = GradedModule::zero(step);
        for t in towers {
            m.push(t);
        }
        m
    }

    pub fn step(&self) -> Step {
        self.step
    }

    pub fn push(&mut self, t: Tower) {
        if t.len == Some(0) {
            return;
        }
        debug_assert!(
            self.bottoms_commensurable(t.bottom),
            "tower bottoms must differ by integers"
        );
        match t.len {
            Some(_) => insert_sorted(&mut self.finite, t),
            None => insert_sorted(&mut self.infinite, t),
        }
    }

    fn bottoms_commensurable(&self, b: Grading) -> bool {
        self.finite
            .iter()
            .chain(self.infinite.iter())
            .all(|t| (t.bottom - b).is_integer())
    }

    pub fn push_finite(&mut self, bottom: Grading, len: u32) {
        self.push(Tower::finite(bottom, len));
    }

    pub fn push_infinite(&mut self, bottom: Grading) {
        self.push(Tower::infinite(bottom));
    }

    pub fn finite_towers(&self) -> &[Tower] {
        &self.finite
    }

    pub fn infinite_towers(&self) -> &[Tower] {
        &self.infinite
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.infinite.is_empty()
    }

    pub fn summand_count(&self) -> usize {
        self.finite.len() + self.infinite.len()
    }

    pub fn iter_all(&self) -> impl Iterator<Item = &Tower> {
        self.finite.iter().chain(self.infinite.iter())
    }

    /// Multiset union.
    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        assert_eq!(self.step, other.step, "direct sum needs matching steps");
        let mut m = self.clone();
        for t in other.iter_all() {
            m.push(*t);
        }
        m
    }

    /// `shift(M, k) = M[k]`: every bottom decreases by `k`.
    pub fn shift(&self, k: Grading) -> GradedModule {
        let mv = |t: &Tower| Tower { bottom: t.bottom - k, len: t.len };
        GradedModule {
            step: self.step,
            finite: self.finite.iter().map(mv).collect(),
            infinite: self.infinite.iter().map(mv).collect(),
        }
    }

    /// F₂-dimension in a single degree.
    pub fn rank_at(&self, d: Grading) -> usize {
        self.iter_all().filter(|t| t.supports(self.step, d)).count()
    }

    /// Dimensions over an inclusive integer degree window (for oracle
    /// comparisons). Degrees are taken at integer points `lo..=hi`.
    pub fn dims_in(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.rank_at(Grading::from(d))).collect()
    }

    /// Restriction along v ↦ U²: a step-2 module becomes a step-4 module.
    ///
    /// T⁺_d(n) ↦ V⁺_d(⌈n/2⌉) ⊕ V⁺_{d+2}(⌊n/2⌋); an infinite tower splits
    /// into two infinite towers at d and d+2.
    pub fn restrict_to_v(&self) -> Result<GradedModule, ModuleError> {
        if self.step != Step::U {
            return Err(ModuleError::InvalidStep {
                expected: 2,
                got: self.step.spacing(),
            });
        }
        let mut m = GradedModule::zero(Step::V);
        for t in &self.finite {
            let n = t.len.unwrap() as i64;
            m.push(Tower::finite(t.bottom, ((n + 1) / 2) as u32));
            m.push(Tower::finite(t.bottom + Grading::from(2), (n / 2) as u32));
        }
        for t in &self.infinite {
            m.push(Tower::infinite(t.bottom));
            m.push(Tower::infinite(t.bottom + Grading::from(2)));
        }
        Ok(m)
    }
}

fn insert_sorted(v: &mut Vec<Tower>, t: Tower) {
    let pos = v.partition_point(|x| *x <= t);
    v.insert(pos, t);
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.step {
            Step::U => "T",
            Step::V => "V",
        };
        if self.is_zero() {
            return write!(f, "0");
        }
        // Group equal summands into powers, highest bottoms first.
        let mut parts: Vec<(Tower, usize)> = Vec::new();
        for t in self.infinite.iter().chain(self.finite.iter()) {
            match parts.last_mut() {
                Some((prev, mult)) if prev == t => *mult += 1,
                _ => parts.push((*t, 1)),
            }
        }
        parts.sort_by(|a, b| {
            (a.0.len.is_some(), b.0.bottom).cmp(&(b.0.len.is_some(), a.0.bottom))
        });
        let mut first = true;
        for (t, mult) in parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t.len {
                None => write!(f, "{}+_{}", letter, pretty(t.bottom))?,
                Some(n) => write!(f, "{}+_{}({})", letter, pretty(t.bottom), n)?,
            }
            if mult > 1 {
                write!(f, "^{}", mult)?;
            }
        }
        Ok(())
    }
}

// Wire form: {"step":2,"towers":[{"bottom":"-1/1","len":2}],"infinite":[{"bottom":"0/1"}]}

#[derive(Serialize, Deserialize)]
struct TowerWire {
    bottom: Grading,
    #[serde(skip_serializing_if = "Option::is_none")]
    len: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct ModuleWire {
    step: i64,
    towers: Vec<TowerWire>,
    #[serde(default)]
    infinite: Vec<TowerWire>,
}

impl Serialize for GradedModule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ModuleWire {
            step: self.step.spacing(),
            towers: self
                .finite
                .iter()
                .map(|t| TowerWire { bottom: t.bottom, len: t.len })
                .collect(),
            infinite: self
                .infinite
                .iter()
                .map(|t| TowerWire { bottom: t.bottom, len: None })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedModule {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = ModuleWire::deserialize(deserializer)?;
        let step = match w.step {
            2 => Step::U,
            4 => Step::V,
            other => return Err(D::Error::custom(format!("step must be 2 or 4, got {other}"))),
        };
        let mut m = GradedModule::zero(step);
        for t in w.towers {
            let len = t.len.ok_or_else(|| D::Error::custom("finite tower missing len"))?;
            m.push(Tower::finite(t.bottom, len));
        }
        for t in w.infinite {
            m.push(Tower::infinite(t.bottom));
        }
        Ok(m)
    }
}
