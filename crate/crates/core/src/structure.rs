//! Reduced-quotient machinery: minimizer, homomorphism extraction, and the
//! `id`/`rev` decomposition of a black-box automorphism.
//!
//! Translation classes of finite sets have the canonical representative
//! `X − min X`. Every automorphism factors as a reduced-representative map
//! (`id` or `rev`) followed by a translation homomorphism
//! `X ↦ a·min X + b·max X`; [`decompose`] recovers that factorization from
//! black-box access and [`Decomposition::eval`] replays it.

use std::fmt;

use crate::aut::AutElem;
use crate::finset::{subsets_in_window, FinSet, SetError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("black box is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("black box is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("input set is not reduced (must contain 0 as its minimum)")]
    NotReduced,
    #[error(transparent)]
    Set(#[from] SetError),
}

/// The homomorphism `X ↦ a·min X + b·max X` into the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomDescriptor {
    pub a: i64,
    pub b: i64,
}

impl HomDescriptor {
    pub fn eval(&self, x: &FinSet) -> Option<i64> {
        let v = (self.a as i128).checked_mul(x.min() as i128)?;
        let w = (self.b as i128).checked_mul(x.max() as i128)?;
        v.checked_add(w)?.try_into().ok()
    }
}

/// The reduced-representative factor of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    Id,
    Rev,
}

/// A factorization `X ↦ f(X − min X) + a·min X + b·max X` with
/// `f ∈ {id, rev}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub a: i64,
    pub b: i64,
}

impl Decomposition {
    /// Literal evaluation of the factorization.
    pub fn eval(&self, x: &FinSet) -> Result<FinSet, SetError> {
        let base = match self.kind {
            DecompositionKind::Id => x.reduce()?,
            DecompositionKind::Rev => x.rev()?,
        };
        let t = (self.a as i128)
            .checked_mul(x.min() as i128)
            .and_then(|v| v.checked_add((self.b as i128).checked_mul(x.max() as i128)?))
            .ok_or(SetError::Overflow)?;
        base.translate_wide(t)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DecompositionKind::Id => "id",
            DecompositionKind::Rev => "rev",
        };
        write!(f, "{kind} ; a={} ; b={}", self.a, self.b)
    }
}

/// The minimum of a set; a surjective monoid homomorphism onto the integers.
pub fn minimizer(x: &FinSet) -> i64 {
    x.min()
}

fn probe_corpus() -> Vec<FinSet> {
    subsets_in_window(-3, 3, 3)
}

/// Recovers `(a, b)` from a black-box homomorphism into the integers via
/// `a = −bb({−1,0})`, `b = bb({0,1})`, then confirms `bb(X) = a·min X +
/// b·max X` over the probe corpus.
pub fn hom_extract<B>(bb: &mut B) -> Result<HomDescriptor, StructureError>
where
    B: FnMut(&FinSet) -> Option<i64>,
{
    let mut probe = |elems: &[i64]| -> Result<i64, StructureError> {
        let x = FinSet::new(elems.iter().copied()).unwrap();
        bb(&x).ok_or_else(|| {
            StructureError::NotHomomorphism(format!("black box has no value for {x}"))
        })
    };
    let a = probe(&[-1, 0])?
        .checked_neg()
        .ok_or_else(|| StructureError::NotHomomorphism("coefficient overflow".into()))?;
    let b = probe(&[0, 1])?;
    let hom = HomDescriptor { a, b };

    for x in probe_corpus() {
        if let Some(seen) = bb(&x) {
            if hom.eval(&x) != Some(seen) {
                return Err(StructureError::NotHomomorphism(format!(
                    "value at {x} is {seen}, expected {}·min + {}·max",
                    hom.a, hom.b
                )));
            }
        }
    }
    Ok(hom)
}

/// Factors a black-box automorphism as `f(X − min X) + a·min X + b·max X`.
///
/// Probing order is fixed: `{0,1,3}` decides `f` (preserved gap sequence
/// means `id`, reversed means `rev`), `{0,1}` pins `b = min bb({0,1})`, and
/// `{1}` pins `a` through `bb({1}) = {a + b}`. The factorization is then
/// confirmed over the probe corpus.
pub fn decompose<B>(bb: &mut B) -> Result<Decomposition, StructureError>
where
    B: FnMut(&FinSet) -> Option<FinSet>,
{
    let mut probe = |elems: &[i64]| -> Result<FinSet, StructureError> {
        let x = FinSet::new(elems.iter().copied()).unwrap();
        bb(&x).ok_or_else(|| {
            StructureError::NotDecomposable(format!("black box has no value for {x}"))
        })
    };

    let y_orient = probe(&[0, 1, 3])?;
    let kind = match y_orient.gaps().as_slice() {
        [1, 2] => DecompositionKind::Id,
        [2, 1] => DecompositionKind::Rev,
        _ => {
            return Err(StructureError::NotDecomposable(format!(
                "image of {{0,1,3}} is {y_orient}, expected a three-point set with gaps 1,2 or 2,1"
            )))
        }
    };

    let y01 = probe(&[0, 1])?;
    if y01.gaps() != [1] {
        return Err(StructureError::NotDecomposable(format!(
            "image of {{0,1}} is {y01}, expected a two-point set with gap 1"
        )));
    }
    let b = y01.min();

    let y1 = probe(&[1])?;
    if !y1.is_singleton() {
        return Err(StructureError::NotDecomposable(format!(
            "image of {{1}} is {y1}, expected a singleton"
        )));
    }
    let a = (y1.min() as i128 - b as i128)
        .try_into()
        .map_err(|_| StructureError::NotDecomposable("coefficient out of range".into()))?;

    let decomposition = Decomposition { kind, a, b };
    for x in probe_corpus() {
        if let Some(seen) = bb(&x) {
            match decomposition.eval(&x) {
                Ok(expected) if expected == seen => {}
                Ok(expected) => {
                    return Err(StructureError::NotDecomposable(format!(
                        "disagreement on {x}: factorization gives {expected}, black box gives {seen}"
                    )))
                }
                Err(_) => {
                    return Err(StructureError::NotDecomposable(format!(
                        "factorization overflows on {x}"
                    )))
                }
            }
        }
    }
    Ok(decomposition)
}

/// The action induced on reduced representatives: `reduce(e(X))` for reduced
/// `X`. Orientation-preserving descriptors act as the identity,
/// orientation-reversing ones as `rev`.
pub fn quotient_action(e: &AutElem, x: &FinSet) -> Result<FinSet, StructureError> {
    if !x.is_reduced() {
        return Err(StructureError::NotReduced);
    }
    Ok(e.apply(x)?.reduce()?)
}
