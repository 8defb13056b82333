use serde::{Deserialize, Serialize};

use super::word::{body_letter, canonical_word, eval_word};
use super::{Element, Family, GroupCtx};
use crate::error::{Error, Result};

/// The natural maps between members of the two families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomKind {
    /// `G_k -> G_k'` or `W_k -> W_k'` with `k' <= k`.
    LevelProjection,
    /// `G_k -> W_k'` with `k' <= k`; kernel `Z_k` when `k' = k`.
    WreathProjection,
}

/// Homomorphism sending `x -> x` and `y -> y`.
#[derive(Clone, Debug)]
pub struct Hom {
    source: GroupCtx,
    target: GroupCtx,
    kind: HomKind,
    x_image: Element,
    letter_images: Vec<Element>,
}

impl Hom {
    pub fn new(source: &GroupCtx, target: &GroupCtx) -> Result<Self> {
        if source.p() != target.p() {
            return Err(Error::BadHom(format!("primes differ: {} vs {}", source.p(), target.p())));
        }
        if target.k() > source.k() {
            return Err(Error::BadHom(format!("cannot map level {} onto level {}", source.k(), target.k())));
        }
        let kind = match (source.family(), target.family()) {
            (Family::Gk, Family::Gk) | (Family::Wk, Family::Wk) => HomKind::LevelProjection,
            (Family::Gk, Family::Wk) => HomKind::WreathProjection,
            (Family::Wk, Family::Gk) => {
                return Err(Error::BadHom("the wreath product does not map onto G_k".into()))
            }
        };
        let letter_images =
            (0..source.body_len()).map(|i| eval_word(&body_letter(source, i), target)).collect();
        Ok(Hom { source: source.clone(), target: target.clone(), kind, x_image: target.x(), letter_images })
    }

    /// `G_k -> W_k`.
    pub fn wreath(source: &GroupCtx) -> Result<Self> {
        let target = GroupCtx::w(source.p(), source.k())?;
        Self::new(source, &target)
    }

    pub fn source(&self) -> &GroupCtx {
        &self.source
    }
    pub fn target(&self) -> &GroupCtx {
        &self.target
    }
    pub fn kind(&self) -> HomKind {
        self.kind
    }

    /// Image of `g`; agrees with evaluating `canonical_word(g)` in the target.
    pub fn apply(&self, g: &Element) -> Element {
        let t = &self.target;
        let mut acc = t.pow(&self.x_image, g.a as i64);
        for (img, &e) in self.letter_images.iter().zip(&g.body) {
            if e != 0 {
                acc = t.mul(&acc, &t.pow(img, e as i64));
            }
        }
        acc
    }

    /// Reference implementation through the word layer.
    pub fn apply_via_word(&self, g: &Element) -> Element {
        eval_word(&canonical_word(&self.source, g), &self.target)
    }
}

/// `project(g, target)`.
pub fn project(source: &GroupCtx, g: &Element, target: &GroupCtx) -> Result<Element> {
    source.validate(g)?;
    Ok(Hom::new(source, target)?.apply(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_elements() {
        let g = GroupCtx::g(3, 2).unwrap();
        let h = Hom::wreath(&g).unwrap();
        assert!(h.apply(&g.y_p()).is_identity());
        assert!(h.apply(&g.e_j(1)).is_identity());
        assert!(h.apply(&g.x_pow(9)).is_identity());
        assert!(!h.apply(&g.y()).is_identity());
    }

    #[test]
    fn rejects_wrong_direction() {
        let g1 = GroupCtx::g(3, 1).unwrap();
        let g2 = GroupCtx::g(3, 2).unwrap();
        assert!(Hom::new(&g1, &g2).is_err());
        assert!(Hom::new(&GroupCtx::w(3, 1).unwrap(), &g1).is_err());
        assert!(Hom::new(&g1, &GroupCtx::g(5, 1).unwrap()).is_err());
    }
}
