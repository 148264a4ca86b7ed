//! Finite equivariant chain complexes over F₂.
//!
//! A complex is a graded F₂ basis with three operators: J (degree 0),
//! S (degree +1), D (degree -1), subject to J⁴ = 1, S² = 0, SJ = J³S,
//! D² = 0, DJ = JD and the Leibniz twist DS = SD + (1 + J²). A marked
//! subset of the basis is the fixed-point set; the pair (m, n) records
//! formal desuspensions so a complex represents a triple in the stable
//! category.
//!
//! Complexes whose free part comes with a chosen orbit basis carry their
//! presentation (one differential expression per free generator). Smash
//! products are built at the presentation level: products of free orbits
//! are free on the product cells, and plain-tensor terms are rewritten
//! into that basis through the triangular change of basis fixed by
//! normal-ordered evaluation of the twisted action
//! s(a⊗b) = sa⊗b + j²a⊗sb, j(a⊗b) = ja⊗jb.

use super::galg::{mono, mono_degree, mono_mul, mono_parts, GElem, Mono};
use crate::grading::Grading;
use num_rational::Rational64;
use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

type Vecs = Vec<Vec<usize>>;

fn xor_push(acc: &mut Vec<usize>, v: usize) {
    if let Some(pos) = acc.iter().position(|&x| x == v) {
        acc.remove(pos);
    } else {
        acc.push(v);
    }
}

fn normalized(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(v.len());
    let mut it = v.into_iter().peekable();
    while let Some(x) = it.next() {
        if it.peek() == Some(&x) {
            it.next();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Fixed,
    Gen(usize),
}

/// A free presentation: an optional reducible point plus free orbit
/// generators with differential expressions over the algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub has_fixed: bool,
    pub gens: Vec<(String, i64)>,
    pub diffs: Vec<Vec<(GElem, Target)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suspension {
    RTilde,
    H,
}

#[derive(Clone)]
pub struct GChainComplex {
    pub degs: Vec<i64>,
    pub names: Vec<String>,
    j: Vecs,
    s: Vecs,
    d: Vecs,
    pub fixed: Vec<usize>,
    presentation: Option<Presentation>,
    /// Formal desuspension data (m, n).
    pub shift_m: i64,
    pub shift_n: Rational64,
}

impl GChainComplex {
    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn j_of(&self, i: usize) -> &[usize] {
        &self.j[i]
    }

    pub fn s_of(&self, i: usize) -> &[usize] {
        &self.s[i]
    }

    pub fn d_of(&self, i: usize) -> &[usize] {
        &self.d[i]
    }

    pub fn min_deg(&self) -> i64 {
        self.degs.iter().copied().min().unwrap_or(0)
    }

    pub fn max_deg(&self) -> i64 {
        self.degs.iter().copied().max().unwrap_or(0)
    }

    /// Net grading shift applied when reading Borel homology: [m + 4n].
    pub fn total_shift(&self) -> Grading {
        Grading::from(self.shift_m) + Grading::from(Rational64::from_integer(4) * self.shift_n)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    /// Compile a presentation into explicit operator matrices. Basis
    /// layout: the fixed point first (when present), then per generator
    /// the orbit jᵐx (4 cells) followed by jᵐsx (4 cells).
    pub fn from_presentation(p: Presentation, shift_m: i64, shift_n: Rational64) -> Self {
        let fixed_count = p.has_fixed as usize;
        let base = |g: usize| fixed_count + 8 * g;
        let dim = fixed_count + 8 * p.gens.len();
        let mut degs = vec![0i64; dim];
        let mut names = vec![String::new(); dim];
        let mut j: Vecs = vec![vec![]; dim];
        let mut s: Vecs = vec![vec![]; dim];
        let mut d: Vecs = vec![vec![]; dim];
        let mut fixed = Vec::new();
        if p.has_fixed {
            fixed.push(0);
            names[0] = "f".into();
            j[0] = vec![0];
        }
        for (g, (name, deg)) in p.gens.iter().enumerate() {
            let b = base(g);
            for m in 0..4usize {
                degs[b + m] = *deg;
                degs[b + 4 + m] = *deg + 1;
                names[b + m] = format!("j{m}·{name}");
                names[b + 4 + m] = format!("j{m}s·{name}");
                j[b + m] = vec![b + (m + 1) % 4];
                j[b + 4 + m] = vec![b + 4 + (m + 1) % 4];
                // s · jᵐx = j³ᵐ s x
                s[b + m] = vec![b + 4 + (3 * m) % 4];
            }
            for m in 0..4usize {
                for e in 0..2usize {
                    let idx = b + 4 * e + m;
                    let mut img: Vec<usize> = Vec::new();
                    if e == 1 {
                        // ∂(jᵐs) = jᵐ + jᵐ⁺²
                        xor_push(&mut img, b + m);
                        xor_push(&mut img, b + (m + 2) % 4);
                    }
                    let lead = GElem::from_monos(&[mono(m as u8, e as u8)]);
                    for &(coeff, tgt) in &p.diffs[g] {
                        let prod = lead.mul(coeff);
                        match tgt {
                            Target::Gen(h) => {
                                for a in prod.monos() {
                                    xor_push(&mut img, base(h) + a as usize);
                                }
                            }
                            Target::Fixed => {
                                if prod.augmentation() {
                                    xor_push(&mut img, 0);
                                }
                            }
                        }
                    }
                    d[idx] = normalized(img);
                }
            }
        }
        GChainComplex {
            degs,
            names,
            j,
            s,
            d,
            fixed,
            presentation: Some(p),
            shift_m,
            shift_n,
        }
    }

    /// The single reducible generator: a one-point fixed set in degree 0.
    pub fn point() -> Self {
        GChainComplex::from_presentation(
            Presentation { has_fixed: true, gens: vec![], diffs: vec![] },
            0,
            Rational64::from_integer(0),
        )
    }

    /// Free block with generators x_d, x_{d+2}, ..., x_{d+2n-2} and
    /// ∂x_k = s(1 + j²) x_{k-2}: its circle homology is a pair of towers
    /// of length n at bottom d.
    pub fn free_tower(d: i64, n: u32) -> Self {
        GChainComplex::from_presentation(
            free_tower_presentation(d, n, false),
            0,
            Rational64::from_integer(0),
        )
    }

    /// The standard complex of a decomposition: the reducible plus one
    /// free block per pair, each degree-1 generator hitting the
    /// reducible. Desuspension bookkeeping is (0, -s/4).
    pub fn standard(s_grading: Grading, pairs: &[(i64, u32)]) -> Self {
        let mut p = Presentation { has_fixed: true, gens: vec![], diffs: vec![] };
        for &(d, n) in pairs {
            append_tower(&mut p, d, n, true);
        }
        GChainComplex::from_presentation(p, 0, -s_grading.rational() / 4)
    }

    /// Standard complex together with free blocks for the J-part.
    pub fn from_decomposition(dec: &crate::pipeline::HfDecomposition) -> Self {
        let mut p = Presentation { has_fixed: true, gens: vec![], diffs: vec![] };
        for &(d, n) in &dec.pairs {
            append_tower(&mut p, d, n, true);
        }
        for t in dec.j.finite_towers() {
            let b = t.bottom.as_integer().expect("J carries integer gradings");
            append_tower(&mut p, b, t.len.unwrap(), false);
        }
        GChainComplex::from_presentation(p, 0, -dec.s.rational() / 4)
    }

    /// The three-cell model of the sign-representation sphere: c₀ in
    /// degree 0 and the pair c₁, jc₁ in degree 1, with ∂c₁ = c₀. The
    /// circle acts trivially throughout, so the whole model is fixed.
    pub fn rtilde_plus() -> Self {
        GChainComplex {
            degs: vec![0, 1, 1],
            names: vec!["c0".into(), "c1".into(), "jc1".into()],
            j: vec![vec![0], vec![2], vec![1]],
            s: vec![vec![], vec![], vec![]],
            d: vec![vec![], vec![0], vec![0]],
            fixed: vec![0, 1, 2],
            presentation: None,
            shift_m: 0,
            shift_n: Rational64::from_integer(0),
        }
    }

    /// The 25-cell model of the quaternion sphere: fixed point r₀ plus
    /// free generators y₁, y₂, y₃ with ∂y₁ = r₀, ∂y₂ = (1+j)y₁,
    /// ∂y₃ = sy₁ + (1+j)y₂.
    pub fn h_plus() -> Self {
        let one_plus_j = GElem::from_monos(&[mono(0, 0), mono(1, 0)]);
        let s_elem = GElem::from_monos(&[mono(0, 1)]);
        let p = Presentation {
            has_fixed: true,
            gens: vec![("y1".into(), 1), ("y2".into(), 2), ("y3".into(), 3)],
            diffs: vec![
                vec![(GElem::ONE, Target::Fixed)],
                vec![(one_plus_j, Target::Gen(0))],
                vec![(s_elem, Target::Gen(0)), (one_plus_j, Target::Gen(1))],
            ],
        };
        GChainComplex::from_presentation(p, 0, Rational64::from_integer(0))
    }

    /// Direct sum as complexes; at most one side may have a fixed set and
    /// both sides need presentations.
    pub fn direct_sum(&self, other: &GChainComplex) -> GChainComplex {
        let p1 = self.presentation().expect("direct sum needs presentations");
        let p2 = other.presentation().expect("direct sum needs presentations");
        assert!(
            !(p1.has_fixed && p2.has_fixed),
            "direct sum would have two fixed sets"
        );
        if !p1.has_fixed && p2.has_fixed {
            return other.direct_sum(self);
        }
        assert_eq!(self.shift_m, other.shift_m);
        assert_eq!(self.shift_n, other.shift_n);
        let mut p = p1.clone();
        let off = p.gens.len();
        for (name, deg) in &p2.gens {
            p.gens.push((format!("{name}'"), *deg));
        }
        for terms in &p2.diffs {
            p.diffs.push(
                terms
                    .iter()
                    .map(|&(c, t)| match t {
                        Target::Gen(h) => (c, Target::Gen(h + off)),
                        Target::Fixed => panic!("free summand may not hit a fixed point"),
                    })
                    .collect(),
            );
        }
        GChainComplex::from_presentation(p, self.shift_m, self.shift_n)
    }

    /// Smash product. Free-orbit pairs become free on the eight product
    /// cells x ⊗ (c·y); differentials are rewritten into that basis.
    /// Fixed points tensor; desuspension data add.
    pub fn smash(&self, other: &GChainComplex) -> GChainComplex {
        let p1 = self.presentation().expect("smash needs free-orbit presentations");
        let p2 = other.presentation().expect("smash needs free-orbit presentations");
        let (n1, n2) = (p1.gens.len(), p2.gens.len());
        let has_fixed = p1.has_fixed && p2.has_fixed;

        // Generator numbering: first f₁⊗y_k (if p1 has fixed), then
        // x_i⊗f₂ (if p2 has fixed), then the product cells (i, k, c).
        let b_count = if p1.has_fixed { n2 } else { 0 };
        let c_count = if p2.has_fixed { n1 } else { 0 };
        let b_gen = |k: usize| k;
        let c_gen = |i: usize| b_count + i;
        let d_gen = |i: usize, k: usize, c: Mono| b_count + c_count + (i * n2 + k) * 8 + c as usize;

        let mut gens: Vec<(String, i64)> = Vec::new();
        let mut diffs: Vec<Vec<(GElem, Target)>> = Vec::new();

        if p1.has_fixed {
            for (k, (name, deg)) in p2.gens.iter().enumerate() {
                gens.push((format!("f⊗{name}"), *deg));
                let mut terms: Vec<(GElem, Target)> = Vec::new();
                for &(beta, tgt) in &p2.diffs[k] {
                    match tgt {
                        Target::Gen(l) => terms.push((beta, Target::Gen(b_gen(l)))),
                        Target::Fixed => {
                            if beta.augmentation() && has_fixed {
                                terms.push((GElem::ONE, Target::Fixed));
                            }
                        }
                    }
                }
                diffs.push(terms);
            }
        }
        if p2.has_fixed {
            for (i, (name, deg)) in p1.gens.iter().enumerate() {
                gens.push((format!("{name}⊗f"), *deg));
                let mut terms: Vec<(GElem, Target)> = Vec::new();
                for &(alpha, tgt) in &p1.diffs[i] {
                    match tgt {
                        Target::Gen(jj) => terms.push((alpha, Target::Gen(c_gen(jj)))),
                        Target::Fixed => {
                            if alpha.augmentation() && has_fixed {
                                terms.push((GElem::ONE, Target::Fixed));
                            }
                        }
                    }
                }
                diffs.push(terms);
            }
        }
        for (i, (name_i, deg_i)) in p1.gens.iter().enumerate() {
            for (k, (name_k, deg_k)) in p2.gens.iter().enumerate() {
                for c in 0..8u8 {
                    gens.push((
                        format!("{name_i}⊗[{c}]{name_k}"),
                        deg_i + deg_k + mono_degree(c),
                    ));
                    let mut acc: HashMap<Target, GElem> = HashMap::new();
                    let mut add = |t: Target, g: GElem| {
                        let e = acc.entry(t).or_insert(GElem::ZERO);
                        *e = e.add(g);
                    };
                    // x ⊗ ∂(c) y
                    for c2 in GElem::from_monos(&[c]).boundary().monos() {
                        add(Target::Gen(d_gen(i, k, c2)), GElem::ONE);
                    }
                    // x ⊗ c·Dy
                    for &(beta, tgt) in &p2.diffs[k] {
                        let prod = GElem::from_monos(&[c]).mul(beta);
                        match tgt {
                            Target::Gen(l) => {
                                for g in prod.monos() {
                                    add(Target::Gen(d_gen(i, l, g)), GElem::ONE);
                                }
                            }
                            Target::Fixed => {
                                if prod.augmentation() {
                                    add(Target::Gen(c_gen(i)), GElem::ONE);
                                }
                            }
                        }
                    }
                    // Dx ⊗ c y
                    for &(alpha, tgt) in &p1.diffs[i] {
                        match tgt {
                            Target::Gen(jj) => {
                                for a in alpha.monos() {
                                    for &(gamma, c2) in rewrite(a, c) {
                                        add(
                                            Target::Gen(d_gen(jj, k, c2)),
                                            GElem::from_monos(&[gamma]),
                                        );
                                    }
                                }
                            }
                            Target::Fixed => {
                                if alpha.augmentation() {
                                    add(Target::Gen(b_gen(k)), GElem::from_monos(&[c]));
                                }
                            }
                        }
                    }
                    let mut terms: Vec<(Target, GElem)> =
                        acc.into_iter().filter(|(_, g)| !g.is_zero()).collect();
                    terms.sort_by_key(|&(t, _)| match t {
                        Target::Fixed => usize::MAX,
                        Target::Gen(g) => g,
                    });
                    diffs.push(terms.into_iter().map(|(t, g)| (g, t)).collect());
                }
            }
        }
        GChainComplex::from_presentation(
            Presentation { has_fixed, gens, diffs },
            self.shift_m + other.shift_m,
            self.shift_n + other.shift_n,
        )
    }

    /// Suspension by the quaternion or sign representation.
    pub fn suspend(&self, rep: Suspension) -> GChainComplex {
        match rep {
            Suspension::H => GChainComplex::h_plus().smash(self),
            Suspension::RTilde => self.tensor_trivial(&GChainComplex::rtilde_plus()),
        }
    }

    /// Tensor with a circle-trivial model (every model cell has s = 0 and
    /// j² = 1); the plain tensor formulas are strict in this case.
    fn tensor_trivial(&self, model: &GChainComplex) -> GChainComplex {
        let (na, nb) = (model.dim(), self.dim());
        let idx = |a: usize, b: usize| a * nb + b;
        let mut degs = vec![0i64; na * nb];
        let mut names = vec![String::new(); na * nb];
        let mut j: Vecs = vec![vec![]; na * nb];
        let mut s: Vecs = vec![vec![]; na * nb];
        let mut d: Vecs = vec![vec![]; na * nb];
        for a in 0..na {
            for b in 0..nb {
                let i = idx(a, b);
                degs[i] = model.degs[a] + self.degs[b];
                names[i] = format!("{}⊗{}", model.names[a], self.names[b]);
                for &ja in &model.j[a] {
                    for &jb in &self.j[b] {
                        xor_push(&mut j[i], idx(ja, jb));
                    }
                }
                // s(a⊗b) = sa⊗b + j²a⊗sb with sa = 0, j²a = a.
                for &sb in &self.s[b] {
                    xor_push(&mut s[i], idx(a, sb));
                }
                for &da in &model.d[a] {
                    xor_push(&mut d[i], idx(da, b));
                }
                for &db in &self.d[b] {
                    xor_push(&mut d[i], idx(a, db));
                }
            }
        }
        let mut fixed = Vec::new();
        for &fa in &model.fixed {
            for &fb in &self.fixed {
                fixed.push(idx(fa, fb));
            }
        }
        fixed.sort_unstable();
        GChainComplex {
            degs,
            names,
            j: j.into_iter().map(normalized).collect(),
            s: s.into_iter().map(normalized).collect(),
            d: d.into_iter().map(normalized).collect(),
            fixed,
            presentation: None,
            shift_m: self.shift_m + model.shift_m,
            shift_n: self.shift_n + model.shift_n,
        }
    }

    fn compose(&self, f: &Vecs, g: &Vecs, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &m in &g[i] {
            for &t in &f[m] {
                xor_push(&mut out, t);
            }
        }
        normalized(out)
    }

    /// Verify every operator identity as a matrix identity.
    pub fn check_relations(&self) -> Result<(), String> {
        let n = self.dim();
        let apply = |vs: &Vecs, v: &[usize]| -> Vec<usize> {
            let mut out = Vec::new();
            for &i in v {
                for &t in &vs[i] {
                    xor_push(&mut out, t);
                }
            }
            normalized(out)
        };
        for i in 0..n {
            for &t in &self.j[i] {
                if self.degs[t] != self.degs[i] {
                    return Err(format!("J not degree 0 at {}", self.names[i]));
                }
            }
            for &t in &self.s[i] {
                if self.degs[t] != self.degs[i] + 1 {
                    return Err(format!("S not degree +1 at {}", self.names[i]));
                }
            }
            for &t in &self.d[i] {
                if self.degs[t] != self.degs[i] - 1 {
                    return Err(format!("D not degree -1 at {}", self.names[i]));
                }
            }
            let j2 = self.compose(&self.j, &self.j, i);
            let j4 = apply(&self.j, &apply(&self.j, &j2));
            if j4 != vec![i] {
                return Err(format!("J^4 != 1 at {}", self.names[i]));
            }
            if !apply(&self.s, &self.s[i]).is_empty() {
                return Err(format!("S^2 != 0 at {}", self.names[i]));
            }
            let sj = apply(&self.s, &self.j[i]);
            let j3s = apply(&self.j, &apply(&self.j, &apply(&self.j, &self.s[i])));
            if sj != j3s {
                return Err(format!("SJ != J^3 S at {}", self.names[i]));
            }
            if !apply(&self.d, &self.d[i]).is_empty() {
                return Err(format!("D^2 != 0 at {}", self.names[i]));
            }
            if apply(&self.d, &self.j[i]) != apply(&self.j, &self.d[i]) {
                return Err(format!("DJ != JD at {}", self.names[i]));
            }
            let ds = apply(&self.d, &self.s[i]);
            let mut rhs = apply(&self.s, &self.d[i]);
            xor_push(&mut rhs, i);
            for &t in &j2 {
                xor_push(&mut rhs, t);
            }
            if ds != normalized(rhs) {
                return Err(format!("DS != SD + (1+J^2) at {}", self.names[i]));
            }
        }
        for &i in &self.fixed {
            if !self.s[i].is_empty() {
                return Err(format!("S nonzero on fixed {}", self.names[i]));
            }
            if self.compose(&self.j, &self.j, i) != vec![i] {
                return Err(format!("J^2 nontrivial on fixed {}", self.names[i]));
            }
            for &t in &self.d[i] {
                if !self.fixed.contains(&t) {
                    return Err(format!("D leaves the fixed set at {}", self.names[i]));
                }
            }
        }
        Ok(())
    }

    /// The fixed set is one reducible generator and the free part splits
    /// into two halves exchanged by J, each closed under S and closed
    /// under D modulo the reducible.
    pub fn is_j_split(&self) -> bool {
        if self.fixed.len() != 1 {
            return false;
        }
        let f = self.fixed[0];
        if self.degs[f] != 0
            || self.j[f] != vec![f]
            || !self.s[f].is_empty()
            || !self.d[f].is_empty()
        {
            return false;
        }
        let n = self.dim();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in (0..n).filter(|&i| i != f) {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let ci = color[i].unwrap();
                if self.j[i].len() != 1 || self.j[i][0] == f {
                    return false;
                }
                let jt = self.j[i][0];
                let mut ok = true;
                let mut visit = |t: usize, want: bool, queue: &mut VecDeque<usize>| {
                    match color[t] {
                        Some(c) => {
                            if c != want {
                                ok = false;
                            }
                        }
                        None => {
                            color[t] = Some(want);
                            queue.push_back(t);
                        }
                    }
                };
                visit(jt, !ci, &mut queue);
                for &t in &self.s[i] {
                    if t == f {
                        return false;
                    }
                    visit(t, ci, &mut queue);
                }
                for &t in &self.d[i] {
                    if t != f {
                        visit(t, ci, &mut queue);
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Plain-text listing in stable basis order, for diffing.
    pub fn dump(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let show = |v: &[usize]| -> String {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter()
                    .map(|&i| self.names[i].clone())
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        };
        let _ = writeln!(out, "shift m={} n={}", self.shift_m, self.shift_n);
        for i in 0..self.dim() {
            let marker = if self.fixed.contains(&i) { " fixed" } else { "" };
            let _ = writeln!(out, "basis {} deg {}{}", self.names[i], self.degs[i], marker);
        }
        for i in 0..self.dim() {
            let _ = writeln!(out, "J {} -> {}", self.names[i], show(&self.j[i]));
            let _ = writeln!(out, "S {} -> {}", self.names[i], show(&self.s[i]));
            let _ = writeln!(out, "D {} -> {}", self.names[i], show(&self.d[i]));
        }
        out
    }

    /// Per-degree index of basis elements, for matrix assembly.
    pub fn basis_by_degree(&self) -> HashMap<i64, Vec<usize>> {
        let mut map: HashMap<i64, Vec<usize>> = HashMap::new();
        for (i, &d) in self.degs.iter().enumerate() {
            map.entry(d).or_default().push(i);
        }
        map
    }

    /// Apply a monomial jᵐsᵉ to a basis element (s first, then j).
    pub fn apply_mono(&self, x: Mono, i: usize) -> Vec<usize> {
        let (m, e) = mono_parts(x);
        let mut cur = vec![i];
        if e == 1 {
            let mut next = Vec::new();
            for &k in &cur {
                for &t in &self.s[k] {
                    xor_push(&mut next, t);
                }
            }
            cur = next;
        }
        for _ in 0..m {
            let mut next = Vec::new();
            for &k in &cur {
                for &t in &self.j[k] {
                    xor_push(&mut next, t);
                }
            }
            cur = next;
        }
        normalized(cur)
    }
}

fn append_tower(p: &mut Presentation, d: i64, n: u32, hit_fixed: bool) {
    let s_one_j2 = GElem::from_monos(&[mono(0, 1), mono(2, 1)]);
    let first = p.gens.len();
    for k in 0..n {
        let deg = d + 2 * k as i64;
        p.gens.push((format!("x{}_{}", first, deg), deg));
        let mut terms: Vec<(GElem, Target)> = Vec::new();
        if k > 0 {
            terms.push((s_one_j2, Target::Gen(first + k as usize - 1)));
        }
        if hit_fixed && deg == 1 {
            terms.push((GElem::ONE, Target::Fixed));
        }
        p.diffs.push(terms);
    }
}

fn free_tower_presentation(d: i64, n: u32, hit_fixed: bool) -> Presentation {
    let mut p = Presentation { has_fixed: hit_fixed, gens: vec![], diffs: vec![] };
    append_tower(&mut p, d, n, hit_fixed);
    p
}

/// Rewrite table: the plain cell pair (a·x) ⊗ (c·y) of a product of two
/// free orbits, expressed in the free basis {γ · (x ⊗ c'y)} fixed by
/// normal-ordered evaluation of the twisted action.
fn rewrite(a: Mono, c: Mono) -> &'static [(Mono, Mono)] {
    static TABLE: OnceLock<Vec<Vec<Vec<(Mono, Mono)>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        // T maps free coordinates (γ, c') to plain coordinates (p, q):
        //   γ = jᵐ:   (jᵐ, jᵐc')
        //   γ = jᵐs:  (jᵐs, jᵐc') + (jᵐ⁺², jᵐ s c')   [second term when sc' ≠ 0]
        let pidx = |p: Mono, q: Mono| (p as usize) * 8 + q as usize;
        let fidx = |g: Mono, c: Mono| (g as usize) * 8 + c as usize;
        let mut t = super::bits::BitMatrix::zero(64, 64);
        for m in 0..4u8 {
            for c in 0..8u8 {
                let g0 = mono(m, 0);
                t.set(pidx(g0, mono_mul(g0, c).unwrap()), fidx(g0, c), true);
                let g1 = mono(m, 1);
                t.set(pidx(g1, mono_mul(g0, c).unwrap()), fidx(g1, c), true);
                if let Some(sc) = mono_mul(g1, c) {
                    t.set(pidx(mono((m + 2) % 4, 0), sc), fidx(g1, c), true);
                }
            }
        }
        // Invert by solving T X = I column by column via RREF of [T | I].
        let mut aug = super::bits::BitMatrix::zero(64, 128);
        for r in 0..64 {
            for cc in 0..64 {
                if t.get(r, cc) {
                    aug.set(r, cc, true);
                }
            }
            aug.set(r, 64 + r, true);
        }
        let pivots = aug.rref();
        assert_eq!(pivots.len(), 64, "rewrite table must be invertible");
        // After reduction the left block is the identity, so row i of the
        // right block is row i of T⁻¹.
        let mut out = vec![vec![Vec::new(); 8]; 8];
        for p in 0..8u8 {
            for q in 0..8u8 {
                let col = pidx(p, q);
                for i in 0..64 {
                    if aug.get(i, 64 + col) {
                        out[p as usize][q as usize].push(((i / 8) as Mono, (i % 8) as Mono));
                    }
                }
            }
        }
        out
    });
    &table[a as usize][c as usize]
}
