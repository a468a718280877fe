use std::fmt;

use super::Space;
use crate::error::{structural, Error, Result};

/// A morphism of the model category.
///
/// For every factor `j` of the target, `assignment[j]` is either
/// `Some(i)`: factor `j` is the source factor `i` pushed through the
/// canonical linear embedding `P^{n_i} -> P^{m_j}` onto the first
/// coordinates, or `None`: factor `j` is the constant base point
/// `[1:0:...:0]`. Source factors that no target factor refers to are
/// projected away.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    source: Space,
    target: Space,
    assignment: Vec<Option<usize>>,
}

/// Result of [`Morphism::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Every model object is complete, so every model morphism is proper.
    pub is_proper: bool,
    pub is_smooth: bool,
    pub is_iso: bool,
    /// Every model morphism factors as a regular embedding followed by a
    /// smooth projection.
    pub is_lci: bool,
    /// `dim(source) - dim(target)`; only meaningful when smooth.
    pub relative_dimension: Option<i64>,
}

impl Morphism {
    pub fn new(source: Space, target: Space, assignment: Vec<Option<usize>>) -> Result<Self> {
        if assignment.len() != target.factor_count() {
            return Err(structural(format!(
                "assignment has {} entries but {target} has {} factors",
                assignment.len(),
                target.factor_count()
            )));
        }
        let mut used = vec![false; source.factor_count()];
        for (j, a) in assignment.iter().enumerate() {
            if let Some(i) = *a {
                if i >= source.factor_count() {
                    return Err(structural(format!(
                        "target factor {} pulled from missing source factor {}",
                        j + 1,
                        i + 1
                    )));
                }
                if used[i] {
                    return Err(structural(format!(
                        "source factor {} used twice (diagonals are not in the model)",
                        i + 1
                    )));
                }
                used[i] = true;
                if source.dims()[i] > target.dims()[j] {
                    return Err(structural(format!("cannot embed P^{} into P^{}", source.dims()[i], target.dims()[j])));
                }
            }
        }
        Ok(Morphism { source, target, assignment })
    }

    pub fn identity(x: &Space) -> Self {
        Morphism { source: x.clone(), target: x.clone(), assignment: (0..x.factor_count()).map(Some).collect() }
    }

    /// The unique map to the point.
    pub fn to_point(x: &Space) -> Self {
        Morphism { source: x.clone(), target: Space::point(), assignment: Vec::new() }
    }

    /// Projection onto the listed factors, in the listed order.
    pub fn projection(x: &Space, keep: &[usize]) -> Result<Self> {
        let target = Space::new(keep.iter().map(|&i| x.dims()[i]).collect());
        Morphism::new(x.clone(), target, keep.iter().map(|&i| Some(i)).collect())
    }

    /// Factor permutation: target factor `j` is source factor `perm[j]`.
    pub fn permutation(x: &Space, perm: &[usize]) -> Result<Self> {
        if perm.len() != x.factor_count() {
            return Err(structural("permutation length mismatch"));
        }
        Morphism::projection(x, perm)
    }

    /// The canonical base point of `x`.
    pub fn base_point(x: &Space) -> Self {
        Morphism { source: Space::point(), target: x.clone(), assignment: vec![None; x.factor_count()] }
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// For each source factor, the target factor it feeds (if any).
    pub fn inverse_assignment(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.source.factor_count()];
        for (j, a) in self.assignment.iter().enumerate() {
            if let Some(i) = a {
                inv[*i] = Some(j);
            }
        }
        inv
    }

    /// Source factors not referenced by any target factor.
    pub fn dropped_factors(&self) -> Vec<usize> {
        self.inverse_assignment().iter().enumerate().filter(|(_, t)| t.is_none()).map(|(i, _)| i).collect()
    }

    /// `next ∘ self` (first `self`, then `next`).
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target != next.source {
            return Err(structural(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, next.source, next.target
            )));
        }
        let assignment = next.assignment.iter().map(|a| a.and_then(|k| self.assignment[k])).collect();
        Ok(Morphism { source: self.source.clone(), target: next.target.clone(), assignment })
    }

    pub fn classify(&self) -> Classification {
        let is_smooth = self.assignment.iter().enumerate().all(|(j, a)| match a {
            Some(i) => self.source.dims()[*i] == self.target.dims()[j],
            None => false,
        });
        let is_iso = is_smooth && self.source.factor_count() == self.target.factor_count();
        Classification {
            is_proper: true,
            is_smooth,
            is_iso,
            is_lci: true,
            relative_dimension: is_smooth.then(|| self.source.dim() as i64 - self.target.dim() as i64),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.classify().is_smooth
    }

    pub fn is_iso(&self) -> bool {
        self.classify().is_iso
    }

    pub fn require_smooth(&self, what: &str) -> Result<()> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(Error::UnsupportedLeg(format!("{what}: {self} is not smooth")))
        }
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Morphism> {
        if !self.is_iso() {
            return Err(Error::UnsupportedLeg(format!("{self} is not an isomorphism")));
        }
        let assignment = self.inverse_assignment();
        Ok(Morphism { source: self.target.clone(), target: self.source.clone(), assignment })
    }

    /// Rename source factors by a permutation: the result is
    /// `self ∘ p^{-1}` where `p` sends old factor `i` to new position
    /// `new_pos[i]`.
    pub(crate) fn reindex_source(&self, new_source: &Space, new_pos: &[usize]) -> Morphism {
        Morphism {
            source: new_source.clone(),
            target: self.target.clone(),
            assignment: self.assignment.iter().map(|a| a.map(|i| new_pos[i])).collect(),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(j, a)| match a {
                Some(i) => format!("t{} <- s{}", j + 1, i + 1),
                None => format!("t{} <- const", j + 1),
            })
            .collect();
        write!(f, "{} -> {} {{ {} }}", self.source, self.target, parts.join(", "))
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fiber square
///
/// ```text
///   W --g̃--> N
///   |h̃       |h
///   v        v
///   M --g--> Y
/// ```
/// with `g` smooth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSquare {
    pub apex: Space,
    /// `h̃: W -> M`, the base change of `h` (proper).
    pub h_tilde: Morphism,
    /// `g̃: W -> N`, the base change of `g` (smooth).
    pub g_tilde: Morphism,
}

/// Fiber product of a smooth `g: M -> Y` with an arbitrary `h: N -> Y`.
///
/// Writing `M ≅ Y x A` through `g`, the apex is `N x A` (factors of `N`
/// first, then the fiber factors of `g` in their order in `M`).
pub fn fiber_product(g: &Morphism, h: &Morphism) -> Result<FiberSquare> {
    if !g.is_smooth() {
        return Err(Error::UnsupportedLeg(format!("fiber product needs a smooth leg, {g} is not smooth")));
    }
    if g.target() != h.target() {
        return Err(structural(format!("fiber product over different bases {} and {}", g.target(), h.target())));
    }
    let m = g.source();
    let n = h.source();
    let fiber: Vec<usize> = g.dropped_factors();
    let a = Space::new(fiber.iter().map(|&i| m.dims()[i]).collect());
    let apex = n.product(&a);
    let n_count = n.factor_count();

    let g_inv = g.inverse_assignment();
    let h_tilde_assign = (0..m.factor_count())
        .map(|i| match g_inv[i] {
            Some(j) => h.assignment()[j],
            None => {
                let pos = fiber.iter().position(|&f| f == i).expect("fiber factor");
                Some(n_count + pos)
            }
        })
        .collect();
    let h_tilde = Morphism::new(apex.clone(), m.clone(), h_tilde_assign)?;
    let g_tilde = Morphism::projection(&apex, &(0..n_count).collect::<Vec<_>>())?;
    Ok(FiberSquare { apex, h_tilde, g_tilde })
}
