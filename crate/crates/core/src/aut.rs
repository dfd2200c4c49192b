//! Closed-form algebra of the automorphisms of the sumset monoid.
//!
//! Every automorphism is `ε·h` for a sign `ε ∈ {+1,−1}` and an unsigned map
//! `h` from one of two one-parameter families:
//!
//! * family `F` (shifts): `f_α(X) = X + α·δ⁻(X)`, a translation of `X` that
//!   preserves its gap sequence; these form the infinite cyclic part.
//! * family `G` (involutions): `g_α(X) = X + α·δ⁻(X) − δ⁺(X)`; each `g_α`
//!   squares to the identity and plays the reflection role.
//!
//! [`AutElem`] is the canonical descriptor `(sign, family, shift)`.
//! Composition closes over descriptors in O(1) via the table
//! `f_a∘f_b = f_{a+b}`, `f_a∘g_b = g_{a+b}`, `g_a∘f_b = g_{a−b}`,
//! `g_a∘g_b = f_{a−b}`, extended to signed maps by the conjugation rule
//! `h_a(−X) = −h_{−a}(X)`. The oracle suites re-verify all of this pointwise;
//! the closed forms here are trusted only because those suites pass.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::finset::{subsets_in_window, FinSet, SetError};
use crate::parse::{Cursor, ParseError};

/// Multiplicative sign, the two-element group `{+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// The two unsigned families: `F` (gap-preserving shifts, the translation
/// part) and `G` (the involution family, the reflection part).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::F => 'f',
            Family::G => 'g',
        }
    }
}

/// Canonical descriptor of an automorphism: the map `sign · h_shift` with
/// `h` drawn from family `F` or `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutElem {
    pub sign: Sign,
    pub family: Family,
    pub shift: i64,
}

impl AutElem {
    pub fn new(sign: Sign, family: Family, shift: i64) -> Self {
        AutElem {
            sign,
            family,
            shift,
        }
    }

    /// The identity automorphism `f_0`.
    pub fn identity() -> Self {
        AutElem::new(Sign::Plus, Family::F, 0)
    }

    /// The central involution `−g_0`, as a map `X ↦ (min X + max X) − X`.
    pub fn central() -> Self {
        AutElem::new(Sign::Minus, Family::G, 0)
    }

    /// Evaluates the denoted map on a set.
    pub fn apply(&self, x: &FinSet) -> Result<FinSet, SetError> {
        let shift = self.shift as i128;
        let t = match self.family {
            Family::F => shift.checked_mul(x.delta_minus()),
            Family::G => shift
                .checked_mul(x.delta_minus())
                .and_then(|v| v.checked_sub(x.delta_plus())),
        }
        .ok_or(SetError::Overflow)?;
        let moved = x.translate_wide(t)?;
        match self.sign {
            Sign::Plus => Ok(moved),
            Sign::Minus => moved.negate(),
        }
    }

    /// `(family, shift) ↦ (family, −shift)`: the unsigned part picked up when
    /// a map is commuted past elementwise negation, `h_a(−X) = −h_{−a}(X)`.
    fn conj(family: Family, shift: i64) -> (Family, i64) {
        (family, -shift)
    }

    fn table(f1: Family, a: i64, f2: Family, b: i64) -> (Family, i64) {
        match (f1, f2) {
            (Family::F, Family::F) => (Family::F, a + b),
            (Family::F, Family::G) => (Family::G, a + b),
            (Family::G, Family::F) => (Family::G, a - b),
            (Family::G, Family::G) => (Family::F, a - b),
        }
    }

    /// The descriptor of `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AutElem) -> AutElem {
        let (f1, a1) = match other.sign {
            Sign::Plus => (self.family, self.shift),
            Sign::Minus => Self::conj(self.family, self.shift),
        };
        let (family, shift) = Self::table(f1, a1, other.family, other.shift);
        AutElem::new(self.sign * other.sign, family, shift)
    }

    /// Group inverse. `f_α⁻¹ = f_{−α}`, `g_α⁻¹ = g_α`; the signed rows follow
    /// from the conjugation rule and are oracle-validated.
    pub fn inverse(&self) -> AutElem {
        match (self.sign, self.family) {
            (Sign::Plus, Family::F) => AutElem::new(Sign::Plus, Family::F, -self.shift),
            (Sign::Plus, Family::G) => *self,
            (Sign::Minus, Family::F) => *self,
            (Sign::Minus, Family::G) => AutElem::new(Sign::Minus, Family::G, -self.shift),
        }
    }

    /// `self` composed with itself `n` times; negative `n` powers the
    /// inverse.
    pub fn power(&self, n: i64) -> AutElem {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut mag = n.unsigned_abs();
        let mut acc = AutElem::identity();
        let mut sq = base;
        while mag > 0 {
            if mag & 1 == 1 {
                acc = acc.compose(&sq);
            }
            mag >>= 1;
            if mag > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &AutElem) -> AutElem {
        self.compose(other).compose(&self.inverse())
    }

    /// Lifts an automorphism of the integers (`x ↦ ±x`) to the elementwise
    /// map on sets.
    pub fn augment(direction: Sign) -> AutElem {
        AutElem::new(direction, Family::F, 0)
    }

    /// True exactly on the two augmentations `±f_0`.
    pub fn is_inner(&self) -> bool {
        self.family == Family::F && self.shift == 0
    }

    /// The sign and coefficient pair `(a, b)` with `self = sign·φ_{a,b}`,
    /// where `φ_{a,b}(X) = X + a·min X + b·max X`.
    pub fn to_phi(&self) -> (Sign, PhiAB) {
        let (a, b) = match self.family {
            Family::F => (self.shift, -self.shift),
            Family::G => (self.shift - 1, -(self.shift + 1)),
        };
        (self.sign, PhiAB { a, b })
    }

    /// Coordinates in the direct product of the sign group with the infinite
    /// dihedral group. The central factor counts occurrences of `−g_0`:
    /// `−f_α = (−g_0)∘g_{−α}` and `−g_α = (−g_0)∘f_{−α}`.
    pub fn to_z2dih(&self) -> Z2DihElem {
        let (central, refl, trans) = match (self.sign, self.family) {
            (Sign::Plus, Family::F) => (Sign::Plus, false, self.shift),
            (Sign::Plus, Family::G) => (Sign::Plus, true, self.shift),
            (Sign::Minus, Family::F) => (Sign::Minus, true, -self.shift),
            (Sign::Minus, Family::G) => (Sign::Minus, false, -self.shift),
        };
        Z2DihElem {
            central,
            dih: DihElem { refl, trans },
        }
    }
}

impl fmt::Display for AutElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        write!(f, "{}[{}]", self.family.letter(), self.shift)
    }
}

impl FromStr for AutElem {
    type Err = ParseError;

    /// Parses the descriptor grammar `[-]f[α]` / `[-]g[α]`, e.g. `f[-2]`,
    /// `-g[3]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.skip_ws();
        let sign = if c.eat('-') {
            Sign::Minus
        } else {
            c.eat('+');
            Sign::Plus
        };
        let family = match c.bump() {
            Some('f') => Family::F,
            Some('g') => Family::G,
            _ => {
                return Err(ParseError::new(
                    c.pos().saturating_sub(1),
                    "expected family letter 'f' or 'g'",
                ))
            }
        };
        c.expect('[')?;
        let shift = c.integer()?;
        c.expect(']')?;
        c.expect_end()?;
        Ok(AutElem::new(sign, family, shift))
    }
}

/// Shift values `0, 1, −1, 2, −2, ...` up to `bound` in magnitude.
pub fn shift_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|m| [m, -m]))
}

/// Every descriptor with `|shift| <= bound`, in the canonical enumeration
/// order: sign, then family, then shift by magnitude (positive first).
pub fn descriptors(bound: i64) -> Vec<AutElem> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for family in [Family::F, Family::G] {
            for shift in shift_order(bound) {
                out.push(AutElem::new(sign, family, shift));
            }
        }
    }
    out
}

/// The endomorphism `φ_{a,b}(X) = X + a·min X + b·max X`.
///
/// Always a monoid endomorphism; an automorphism exactly when
/// `a + b ∈ {0, −2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhiAB {
    pub a: i64,
    pub b: i64,
}

impl PhiAB {
    pub fn new(a: i64, b: i64) -> Self {
        PhiAB { a, b }
    }

    pub fn apply(&self, x: &FinSet) -> Result<FinSet, SetError> {
        let t = (self.a as i128)
            .checked_mul(x.min() as i128)
            .and_then(|u| u.checked_add((self.b as i128).checked_mul(x.max() as i128)?))
            .ok_or(SetError::Overflow)?;
        x.translate_wide(t)
    }
}

/// Rejection witness: a two-point (or one-point) target set provably outside
/// the image of `±φ_{a,b}`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not-automorphism; unreachable target {witness}")]
pub struct NotAutomorphism {
    pub witness: FinSet,
}

/// Classifies `sign·φ_{a,b}`: returns its descriptor when `a+b ∈ {0,−2}`,
/// otherwise the minimal unreachable extremal target.
pub fn classify_phi(sign: Sign, a: i64, b: i64) -> Result<AutElem, NotAutomorphism> {
    let s = a as i128 + b as i128;
    if s == 0 {
        return Ok(AutElem::new(sign, Family::F, a));
    }
    if s == -2 {
        return Ok(AutElem::new(sign, Family::G, a + 1));
    }
    let witness = unreachable_extremal_target(a, b, i64::MAX)
        .expect("a coefficient pair with a+b outside {0,-2} always has an obstructed target");
    Err(NotAutomorphism { witness })
}

/// Smallest target `{c, d}` (ordered by span `d−c`, then `|c|`, positive `c`
/// before negative) such that no integer extremal pair `(min X, max X)` maps
/// onto `(c, d)` under `φ_{a,b}`.
///
/// Solvability of `(a+1)·y + b·z = c`, `a·y + (b+1)·z = d` reduces to
/// `(a+b+1)·z = d + a·d − a·c`; for `a+b+1 = 0` the system is inconsistent
/// unless the right side vanishes, otherwise it is solvable exactly when
/// `a+b+1` divides the right side. `None` when every target within the bound
/// is reachable (in particular when `a+b ∈ {0,−2}`).
pub(crate) fn unreachable_extremal_target(a: i64, b: i64, bound: i64) -> Option<FinSet> {
    let divisor = (a as i128) + (b as i128) + 1;
    if divisor == 1 || divisor == -1 {
        return None;
    }
    for span in 0..=bound {
        for magnitude in 0..=bound {
            let mut candidates = vec![magnitude];
            if magnitude != 0 {
                candidates.push(-magnitude);
            }
            for c in candidates {
                let Some(d) = c.checked_add(span) else {
                    continue;
                };
                if d.checked_abs().is_none_or(|v| v > bound) {
                    continue;
                }
                let rhs = (d as i128) + (a as i128) * (d as i128) - (a as i128) * (c as i128);
                let obstructed = if divisor == 0 {
                    rhs != 0
                } else {
                    rhs % divisor != 0
                };
                if obstructed {
                    return Some(FinSet::new([c, d]).unwrap());
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not recognized: {detail}")]
pub struct IdentifyError {
    pub detail: String,
}

impl IdentifyError {
    fn new(detail: impl Into<String>) -> Self {
        IdentifyError {
            detail: detail.into(),
        }
    }
}

/// The fixed 50-set sweep used to confirm a decoded descriptor.
fn sweep_corpus() -> Vec<FinSet> {
    subsets_in_window(-3, 3, 3).into_iter().take(50).collect()
}

/// Recovers the descriptor of a black-box automorphism from three probes and
/// one verification sweep.
///
/// The probe `{0,1,3}` has gap sequence `(1,2)`; unsigned maps translate, so
/// a preserved gap sequence means sign `+1` and a reversed one sign `−1`.
/// After correcting for the sign, `min bb({1,2}) − min bb({0,1})` is `+1`
/// for family `F` and `−1` for family `G`, and `min bb({0,1})` pins the
/// shift. The black box may return `None` to signal it has no value for an
/// input (table-backed boxes); a `None` on a probe is a decode failure,
/// a `None` during the sweep merely skips that set.
pub fn identify<B>(bb: &mut B) -> Result<AutElem, IdentifyError>
where
    B: FnMut(&FinSet) -> Option<FinSet>,
{
    let probe = |bb: &mut B, elems: &[i64]| -> Result<FinSet, IdentifyError> {
        let x = FinSet::new(elems.iter().copied()).unwrap();
        bb(&x).ok_or_else(|| IdentifyError::new(format!("black box has no value for {x}")))
    };

    let y_orient = probe(bb, &[0, 1, 3])?;
    let sign = match y_orient.gaps().as_slice() {
        [1, 2] => Sign::Plus,
        [2, 1] => Sign::Minus,
        _ => {
            return Err(IdentifyError::new(format!(
                "image of {{0,1,3}} is {y_orient}, which no descriptor produces"
            )))
        }
    };

    let correct = |y: FinSet| -> Result<FinSet, IdentifyError> {
        match sign {
            Sign::Plus => Ok(y),
            Sign::Minus => y
                .negate()
                .map_err(|_| IdentifyError::new("probe image negation overflowed")),
        }
    };
    let y01 = correct(probe(bb, &[0, 1])?)?;
    let y12 = correct(probe(bb, &[1, 2])?)?;
    if y01.gaps() != [1] || y12.gaps() != [1] {
        return Err(IdentifyError::new(
            "probe images of {0,1} and {1,2} must be two-point sets with gap 1",
        ));
    }

    let m01 = y01.min() as i128;
    let (family, shift) = match y12.min() as i128 - m01 {
        1 => (Family::F, -m01),
        -1 => (Family::G, -1 - m01),
        diff => {
            return Err(IdentifyError::new(format!(
                "probe min difference {diff} matches neither family"
            )))
        }
    };
    let shift: i64 = shift
        .try_into()
        .map_err(|_| IdentifyError::new("decoded shift exceeds the descriptor range"))?;
    let decoded = AutElem::new(sign, family, shift);

    for x in sweep_corpus() {
        if let Some(seen) = bb(&x) {
            match decoded.apply(&x) {
                Ok(expected) if expected == seen => {}
                Ok(expected) => {
                    return Err(IdentifyError::new(format!(
                        "sweep disagreement on {x}: decoded {decoded} gives {expected}, black box gives {seen}"
                    )))
                }
                Err(_) => {
                    return Err(IdentifyError::new(format!(
                        "decoded descriptor {decoded} overflows on sweep input {x}"
                    )))
                }
            }
        }
    }
    Ok(decoded)
}

/// Element of the infinite dihedral group: a translation `r^trans`,
/// reflected when `refl` is set (`s·r^trans`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihElem {
    pub refl: bool,
    pub trans: i64,
}

impl DihElem {
    pub fn identity() -> Self {
        DihElem {
            refl: false,
            trans: 0,
        }
    }

    pub fn inverse(&self) -> DihElem {
        if self.refl {
            *self
        } else {
            DihElem {
                refl: false,
                trans: -self.trans,
            }
        }
    }
}

impl Mul for DihElem {
    type Output = DihElem;

    // (s1,n1)·(s2,n2) = (s1 xor s2, n1 + (−1)^{s1}·n2)
    fn mul(self, rhs: DihElem) -> DihElem {
        let n2 = if self.refl { -rhs.trans } else { rhs.trans };
        DihElem {
            refl: self.refl ^ rhs.refl,
            trans: self.trans + n2,
        }
    }
}

impl fmt::Display for DihElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.refl {
            write!(f, "s·r^{}", self.trans)
        } else {
            write!(f, "r^{}", self.trans)
        }
    }
}

/// Element of the direct product of the sign group with the infinite
/// dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Z2DihElem {
    pub central: Sign,
    pub dih: DihElem,
}

impl Z2DihElem {
    pub fn identity() -> Self {
        Z2DihElem {
            central: Sign::Plus,
            dih: DihElem::identity(),
        }
    }

    pub fn inverse(&self) -> Z2DihElem {
        Z2DihElem {
            central: self.central,
            dih: self.dih.inverse(),
        }
    }

    /// The descriptor with these coordinates; two-sided inverse of
    /// [`AutElem::to_z2dih`].
    pub fn to_aut(&self) -> AutElem {
        match (self.central, self.dih.refl) {
            (Sign::Plus, false) => AutElem::new(Sign::Plus, Family::F, self.dih.trans),
            (Sign::Plus, true) => AutElem::new(Sign::Plus, Family::G, self.dih.trans),
            (Sign::Minus, true) => AutElem::new(Sign::Minus, Family::F, -self.dih.trans),
            (Sign::Minus, false) => AutElem::new(Sign::Minus, Family::G, -self.dih.trans),
        }
    }
}

impl Mul for Z2DihElem {
    type Output = Z2DihElem;

    fn mul(self, rhs: Z2DihElem) -> Z2DihElem {
        Z2DihElem {
            central: self.central * rhs.central,
            dih: self.dih * rhs.dih,
        }
    }
}

impl fmt::Display for Z2DihElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.central {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        };
        write!(f, "({c}, {})", self.dih)
    }
}

impl FromStr for Z2DihElem {
    type Err = ParseError;

    /// Parses `(±1, r^n)` / `(±1, s·r^n)`; `*` is accepted for `·`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor::new(s);
        c.skip_ws();
        c.expect('(')?;
        c.skip_ws();
        let central = if c.eat('+') {
            Sign::Plus
        } else if c.eat('-') {
            Sign::Minus
        } else {
            return Err(ParseError::new(c.pos(), "expected '+1' or '-1'"));
        };
        c.expect('1')?;
        c.skip_ws();
        c.expect(',')?;
        c.skip_ws();
        let refl = if c.eat('s') {
            if !(c.eat('·') || c.eat('*')) {
                return Err(ParseError::new(c.pos(), "expected '·' after 's'"));
            }
            true
        } else {
            false
        };
        c.expect('r')?;
        c.expect('^')?;
        let trans = c.integer()?;
        c.skip_ws();
        c.expect(')')?;
        c.expect_end()?;
        Ok(Z2DihElem {
            central,
            dih: DihElem { refl, trans },
        })
    }
}
