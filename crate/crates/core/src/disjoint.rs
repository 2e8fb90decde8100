//! The three disjointness relations and the D-disjoint pair builder.
//!
//! * `x ⊥ y`: `{x+y, −(x+y)}` and `{x−y, y−x}` have the same nonempty set of upper bounds.
//! * symmetric-interval: `[−x,x] ∩ [−y,y] = {0}`.
//! * `x ⊥* y`: `[0,x] ∩ [0,y] = {0}` for `x, y ≥ 0`.
//!
//! For positive elements each relation implies the next one.

use serde::Serialize;

use crate::arith::{QVector, Rational};
use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::order::BoundKind;
use crate::polyhedron::{enumerate_vertices, point_outside, singleton_zero_optima, Polyhedron};
use crate::simplex::{solve_lp, LpOutcome, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DisjointnessKind {
    Perp,
    SymmetricInterval,
    DDisjoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Max and min of every coordinate over the intersection, all zero.
    ZeroOptima(Vec<Rational>),
    /// A nonzero point of the intersection.
    CommonPoint(QVector),
    /// The two upper-bound sets contain each other; `witness` shows they are nonempty.
    EqualBounds { witness: QVector },
    /// A point in exactly one of the two upper-bound sets.
    SeparatingPoint { point: QVector, above_sums: bool },
    /// `{x+y, −(x+y)}` has no upper bound.
    NoUpperBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessVerdict {
    pub kind: DisjointnessKind,
    pub result: bool,
    pub certificate: Certificate,
}

/// `u = x − z`, `v = y − z` for a maximal lower bound `z` of `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDisjointPair {
    pub u: QVector,
    pub v: QVector,
    pub meet: QVector,
}

impl OrderedSpace {
    fn require_positive(&self, x: &QVector) -> Result<()> {
        self.check_dim(x)?;
        if self.member(x) {
            Ok(())
        } else {
            Err(Error::NotPositive(x.clone()))
        }
    }

    pub fn d_disjoint(&self, x: &QVector, y: &QVector) -> Result<DisjointnessVerdict> {
        self.require_positive(x)?;
        self.require_positive(y)?;
        let zero = QVector::zeros(self.dim());
        let body = self.interval(&zero, x)?.body.intersect(&self.interval(&zero, y)?.body);
        let verdict = intersection_verdict(DisjointnessKind::DDisjoint, &body)?;
        if let Certificate::CommonPoint(w) = &verdict.certificate {
            let ok = !w.is_zero()
                && self.member(w)
                && self.member(&(x - w))
                && self.member(&(y - w));
            if !ok {
                return Err(Error::Invariant(format!("D-disjointness witness {w} fails re-verification")));
            }
        }
        Ok(verdict)
    }

    pub fn sym_interval_disjoint(&self, x: &QVector, y: &QVector) -> Result<DisjointnessVerdict> {
        self.require_positive(x)?;
        self.require_positive(y)?;
        let body = self.interval(&-x, x)?.body.intersect(&self.interval(&-y, y)?.body);
        let verdict = intersection_verdict(DisjointnessKind::SymmetricInterval, &body)?;
        if let Certificate::CommonPoint(w) = &verdict.certificate {
            let ok = !w.is_zero() && [x, y].iter().all(|b| self.member(&(*b + w)) && self.member(&(*b - w)));
            if !ok {
                return Err(Error::Invariant(format!("symmetric-interval witness {w} fails re-verification")));
            }
        }
        Ok(verdict)
    }

    /// Defined for arbitrary `x, y`.
    pub fn perp(&self, x: &QVector, y: &QVector) -> Result<DisjointnessVerdict> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let sum = x + y;
        let diff = x - y;
        let sums = self.bound_set(&[sum.clone(), -&sum], BoundKind::Upper)?.body;
        let diffs = self.bound_set(&[diff.clone(), -&diff], BoundKind::Upper)?.body;
        let verdict = |result, certificate| DisjointnessVerdict { kind: DisjointnessKind::Perp, result, certificate };

        let witness = match solve_lp(&QVector::zeros(self.dim()), &sums, Sense::Max) {
            LpOutcome::Optimal { point, .. } => point,
            _ => return Ok(verdict(false, Certificate::NoUpperBound)),
        };
        let is_upper = |w: &QVector, p: &QVector| self.member(&(w - p)) && self.member(&(w + p));
        if let Some(point) = point_outside(&diffs, &sums) {
            if !(is_upper(&point, &sum) && !is_upper(&point, &diff)) {
                return Err(Error::Invariant(format!("⊥ separating point {point} fails re-verification")));
            }
            return Ok(verdict(false, Certificate::SeparatingPoint { point, above_sums: true }));
        }
        if let Some(point) = point_outside(&sums, &diffs) {
            if !(is_upper(&point, &diff) && !is_upper(&point, &sum)) {
                return Err(Error::Invariant(format!("⊥ separating point {point} fails re-verification")));
            }
            return Ok(verdict(false, Certificate::SeparatingPoint { point, above_sums: false }));
        }
        if !is_upper(&witness, &sum) {
            return Err(Error::Invariant(format!("upper bound {witness} fails re-verification")));
        }
        Ok(verdict(true, Certificate::EqualBounds { witness }))
    }

    /// Builds `(x − z, y − z)` with `z` maximal in `{x,y}^L`; the pair is always D-disjoint.
    pub fn make_d_disjoint_pair(&self, x: &QVector, y: &QVector) -> Result<DDisjointPair> {
        let meet = self.maximal_lower_bound(x, y, None)?;
        let pair = DDisjointPair { u: x - &meet, v: y - &meet, meet };
        if !self.d_disjoint(&pair.u, &pair.v)?.result {
            return Err(Error::Invariant(format!("pair {:?} built from {x}, {y} is not D-disjoint", pair)));
        }
        Ok(pair)
    }
}

/// `{0}` test on a bounded intersection, with a vertex witness when it fails.
fn intersection_verdict(kind: DisjointnessKind, body: &Polyhedron) -> Result<DisjointnessVerdict> {
    if let Some(optima) = singleton_zero_optima(body) {
        return Ok(DisjointnessVerdict { kind, result: true, certificate: Certificate::ZeroOptima(optima) });
    }
    let w = enumerate_vertices(body)?
        .into_iter()
        .find(|v| !v.is_zero())
        .ok_or_else(|| Error::Invariant("nonzero intersection without a nonzero vertex".into()))?;
    Ok(DisjointnessVerdict { kind, result: false, certificate: Certificate::CommonPoint(w) })
}
