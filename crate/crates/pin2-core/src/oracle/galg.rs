//! The chain algebra of the group: F₂-combinations of the eight cells
//! 1, j, j², j³, s, js, j²s, j³s, with sj = j³s, s² = 0, j⁴ = 1 and
//! boundary ∂s = 1 + j².
//!
//! Elements are 8-bit masks; bit m + 4e is the monomial jᵐsᵉ.

/// Monomial index: m + 4e for jᵐ sᵉ.
pub type Mono = u8;

pub fn mono(m: u8, e: u8) -> Mono {
    debug_assert!(m < 4 && e < 2);
    m + 4 * e
}

pub fn mono_parts(x: Mono) -> (u8, u8) {
    (x % 4, x / 4)
}

pub fn mono_degree(x: Mono) -> i64 {
    (x / 4) as i64
}

/// jᵃsᵇ · jᵐsᵉ, or `None` when the product vanishes (s² = 0).
pub fn mono_mul(left: Mono, right: Mono) -> Option<Mono> {
    let (a, b) = mono_parts(left);
    let (m, e) = mono_parts(right);
    if b == 0 {
        Some(mono((a + m) % 4, e))
    } else if e == 0 {
        // s jᵐ = j³ᵐ s
        Some(mono((a + 3 * m) % 4, 1))
    } else {
        None
    }
}

/// The anti-automorphism moving coefficients across the coinvariant
/// tensor: α x ⊗ z ≡ x ⊗ κ(α) z. κ(jᵐ) = j⁻ᵐ and κ(jᵐ s) = jᵐ⁺² s.
pub fn mono_kappa(x: Mono) -> Mono {
    let (m, e) = mono_parts(x);
    if e == 0 {
        mono((4 - m) % 4, 0)
    } else {
        mono((m + 2) % 4, 1)
    }
}

/// An F₂-combination of monomials.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct GElem(pub u8);

impl GElem {
    pub const ZERO: GElem = GElem(0);
    pub const ONE: GElem = GElem(1);

    pub fn from_monos(ms: &[Mono]) -> GElem {
        let mut v = 0u8;
        for &m in ms {
            v ^= 1 << m;
        }
        GElem(v)
    }

    pub fn monos(self) -> impl Iterator<Item = Mono> {
        (0u8..8).filter(move |&k| self.0 >> k & 1 == 1)
    }

    pub fn add(self, other: GElem) -> GElem {
        GElem(self.0 ^ other.0)
    }

    pub fn mul(self, other: GElem) -> GElem {
        let mut out = 0u8;
        for a in self.monos() {
            for b in other.monos() {
                if let Some(p) = mono_mul(a, b) {
                    out ^= 1 << p;
                }
            }
        }
        GElem(out)
    }

    /// ∂ of the element: ∂(jᵐ) = 0, ∂(jᵐs) = jᵐ + jᵐ⁺².
    pub fn boundary(self) -> GElem {
        let mut out = 0u8;
        for x in self.monos() {
            let (m, e) = mono_parts(x);
            if e == 1 {
                out ^= 1 << mono(m, 0);
                out ^= 1 << mono((m + 2) % 4, 0);
            }
        }
        GElem(out)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coefficient sum; boundaries and the augmentation ideal vanish here.
    pub fn augmentation(self) -> bool {
        (self.0 & 0x0f).count_ones() % 2 == 1
    }
}

impl std::fmt::Debug for GElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["1", "j", "j2", "j3", "s", "js", "j2s", "j3s"];
        let parts: Vec<&str> = self.monos().map(|m| names[m as usize]).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Monomial basis of the algebra in use: the full group algebra or the
/// circle subalgebra spanned by 1, j², s, j²s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    G,
    S1,
}

impl Algebra {
    pub fn monomials(self) -> &'static [Mono] {
        match self {
            Algebra::G => &[0, 1, 2, 3, 4, 5, 6, 7],
            Algebra::S1 => &[0, 2, 4, 6],
        }
    }

    pub fn mask(self) -> u8 {
        match self {
            Algebra::G => 0xff,
            Algebra::S1 => 0b0101_0101,
        }
    }
}
