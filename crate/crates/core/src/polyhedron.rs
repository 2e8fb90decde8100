//! Polyhedra as finite intersections of closed halfspaces, and the exact
//! primitives built on top of them: containment, the `{0}` test and
//! vertex enumeration.

use num_traits::{One, Signed, Zero};

use crate::arith::{QVector, Rational};
use crate::dd;
use crate::error::{Error, Result};
use crate::simplex::{solve_lp, LpOutcome, Sense};

/// `{w : normal·w ≥ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: QVector,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: QVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() && offset.is_positive() {
            return Err(Error::EmptyHalfspace);
        }
        Ok(Halfspace { normal, offset })
    }

    /// Skips the emptiness check; only [`Polyhedron::push`] should see these.
    pub(crate) fn raw(normal: QVector, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn satisfied_by(&self, w: &QVector) -> bool {
        self.normal.dot(w) >= self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    trivially_empty: bool,
}

impl Polyhedron {
    /// The whole space `Qᵈⁱᵐ`.
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, halfspaces: Vec::new(), trivially_empty: false }
    }

    pub fn from_halfspaces(dim: usize, halfspaces: impl IntoIterator<Item = Halfspace>) -> Self {
        let mut p = Polyhedron::new(dim);
        for h in halfspaces {
            p.push(h);
        }
        p
    }

    /// Adds a halfspace. Zero normals are dropped when `offset ≤ 0` and make
    /// the polyhedron empty otherwise.
    pub fn push(&mut self, h: Halfspace) {
        assert_eq!(h.normal.dim(), self.dim, "halfspace dimension must match the polyhedron");
        if h.normal.is_zero() {
            if h.offset.is_positive() {
                self.trivially_empty = true;
            }
            return;
        }
        self.halfspaces.push(h);
    }

    pub fn add(&mut self, normal: QVector, offset: Rational) {
        self.push(Halfspace::raw(normal, offset));
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        let mut p = self.clone();
        p.trivially_empty |= other.trivially_empty;
        p.halfspaces.extend(other.halfspaces.iter().cloned());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.trivially_empty
    }

    pub fn contains_point(&self, w: &QVector) -> bool {
        !self.trivially_empty && self.halfspaces.iter().all(|h| h.satisfied_by(w))
    }

    /// Copy with halfspaces implied by the remaining ones removed.
    pub fn without_redundant(&self) -> Polyhedron {
        let mut kept = self.halfspaces.clone();
        let mut i = 0;
        while i < kept.len() {
            let rest = Polyhedron {
                dim: self.dim,
                halfspaces: kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, h)| h.clone()).collect(),
                trivially_empty: self.trivially_empty,
            };
            let redundant = match solve_lp(&kept[i].normal, &rest, Sense::Min) {
                LpOutcome::Optimal { value, .. } => value >= kept[i].offset,
                LpOutcome::Infeasible { .. } => true,
                LpOutcome::Unbounded { .. } => false,
            };
            if redundant {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Polyhedron { dim: self.dim, halfspaces: kept, trivially_empty: self.trivially_empty }
    }
}

/// A point of `inner` violating some halfspace of `outer`, if any.
pub fn point_outside(outer: &Polyhedron, inner: &Polyhedron) -> Option<QVector> {
    assert_eq!(outer.dim(), inner.dim(), "containment needs equal dimensions");
    if outer.is_trivially_empty() {
        // Every point of a nonempty inner lies outside.
        return match solve_lp(&QVector::zeros(inner.dim()), inner, Sense::Min) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        };
    }
    for h in outer.halfspaces() {
        match solve_lp(&h.normal, inner, Sense::Min) {
            LpOutcome::Infeasible { .. } => return None,
            LpOutcome::Optimal { value, point } => {
                if value < h.offset {
                    return Some(point);
                }
            }
            LpOutcome::Unbounded { feasible_point, ray } => {
                // normal·ray < 0: walk far enough to cross the boundary.
                let slope = -h.normal.dot(&ray);
                let gap = h.normal.dot(&feasible_point) - &h.offset;
                let steps = if gap.is_negative() { Rational::zero() } else { (gap / slope).floor() + Rational::one() };
                return Some(&feasible_point + &ray.scale(&steps));
            }
        }
    }
    None
}

/// Whether every point of `inner` lies in `outer`.
pub fn contains(outer: &Polyhedron, inner: &Polyhedron) -> bool {
    point_outside(outer, inner).is_none()
}

/// Whether `p` is exactly `{0}`: the origin is feasible and every
/// coordinate has maximum and minimum zero over `p`.
pub fn is_singleton_zero(p: &Polyhedron) -> bool {
    singleton_zero_optima(p).is_some()
}

/// The `2·dim` optima (max then min per coordinate) proving `p = {0}`, or `None`.
pub fn singleton_zero_optima(p: &Polyhedron) -> Option<Vec<Rational>> {
    if !p.contains_point(&QVector::zeros(p.dim())) {
        return None;
    }
    let mut optima = Vec::with_capacity(2 * p.dim());
    for i in 0..p.dim() {
        let e = QVector::unit(p.dim(), i);
        for sense in [Sense::Max, Sense::Min] {
            match solve_lp(&e, p, sense) {
                LpOutcome::Optimal { value, .. } if value.is_zero() => optima.push(value),
                _ => return None,
            }
        }
    }
    Some(optima)
}

/// Vertices of a bounded polyhedron in lexicographic order.
///
/// Homogenizes `p` to the cone `{(w, t) : aᵢ·w − bᵢt ≥ 0, t ≥ 0}` and runs
/// the double description method; vertices are the rays with `t > 0`.
/// Fails with [`Error::Unbounded`] when `p` is nonempty and has a recession direction.
pub fn enumerate_vertices(p: &Polyhedron) -> Result<Vec<QVector>> {
    if p.is_trivially_empty() {
        return Ok(Vec::new());
    }
    let n = p.dim();
    let mut rows: Vec<QVector> = p
        .halfspaces()
        .iter()
        .map(|h| h.normal.iter().cloned().chain(std::iter::once(-&h.offset)).collect())
        .collect();
    rows.push(QVector::unit(n + 1, n));
    let cone = dd::cone_generators(n + 1, &rows);

    let split = |r: &QVector| -> (QVector, Rational) {
        (r.iter().take(n).cloned().collect(), r[n].clone())
    };
    let mut vertices = Vec::new();
    let mut recession = None;
    for r in &cone.rays {
        let (w, t) = split(r);
        if t.is_positive() {
            vertices.push(w.scale(&t.recip()));
        } else {
            recession = Some(w);
        }
    }
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(l) = cone.lineality.first() {
        return Err(Error::Unbounded(split(l).0));
    }
    if let Some(w) = recession {
        return Err(Error::Unbounded(w));
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
