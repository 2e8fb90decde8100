//! Order comparisons, order intervals, bound sets and maximal lower bounds.
//!
//! Translating the cone's inequalities gives every set here as a polyhedron:
//! `w ∈ x + V_p ⟺ aᵢ·w ≥ aᵢ·x` and `w ∈ x − V_p ⟺ −aᵢ·w ≥ −aᵢ·x`.

use crate::arith::QVector;
use crate::cone::OrderedSpace;
use crate::error::{Error, Result};
use crate::polyhedron::{is_singleton_zero, Polyhedron};
use crate::simplex::{solve_lp, LpOutcome, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
}

/// `[lo, hi] = {w : lo ≤ w ≤ hi}`.
#[derive(Clone, Debug)]
pub struct OrderInterval {
    pub lo: QVector,
    pub hi: QVector,
    pub body: Polyhedron,
}

/// `A^U = ∩ (xᵢ + V_p)` or `A^L = ∩ (xᵢ − V_p)`.
#[derive(Clone, Debug)]
pub struct BoundSet {
    pub kind: BoundKind,
    pub points: Vec<QVector>,
    pub body: Polyhedron,
}

impl OrderedSpace {
    /// `x + V_p` or `x − V_p` as a polyhedron.
    pub fn translated_cone(&self, x: &QVector, kind: BoundKind) -> Polyhedron {
        let mut p = Polyhedron::new(self.dim());
        for a in self.inequalities() {
            match kind {
                BoundKind::Upper => p.add(a.clone(), a.dot(x)),
                BoundKind::Lower => p.add(-a, -a.dot(x)),
            }
        }
        p
    }

    pub fn leq(&self, x: &QVector, y: &QVector) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.member(&(y - x)))
    }

    pub fn interval(&self, lo: &QVector, hi: &QVector) -> Result<OrderInterval> {
        self.check_dim(lo)?;
        self.check_dim(hi)?;
        let body = self.translated_cone(lo, BoundKind::Upper).intersect(&self.translated_cone(hi, BoundKind::Lower));
        Ok(OrderInterval { lo: lo.clone(), hi: hi.clone(), body })
    }

    pub fn bound_set(&self, points: &[QVector], kind: BoundKind) -> Result<BoundSet> {
        let mut body = Polyhedron::new(self.dim());
        for x in points {
            self.check_dim(x)?;
            body = body.intersect(&self.translated_cone(x, kind));
        }
        Ok(BoundSet { kind, points: points.to_vec(), body })
    }

    pub fn lower_bound_set(&self, x: &QVector, y: &QVector) -> Result<BoundSet> {
        self.bound_set(&[x.clone(), y.clone()], BoundKind::Lower)
    }

    pub fn upper_bound_set(&self, x: &QVector, y: &QVector) -> Result<BoundSet> {
        self.bound_set(&[x.clone(), y.clone()], BoundKind::Upper)
    }

    /// A maximal element of `{x,y}^L`, above `above` when given.
    ///
    /// Maximizes the strictly positive functional `f`: if `w ≥ z` is another
    /// feasible point then `f·(w − z) ≥ 0` with equality only for `w = z`,
    /// so an `f`-optimal point has no strictly larger lower bound. Which
    /// maximal element comes back depends on `f` and the pivoting rule.
    pub fn maximal_lower_bound(&self, x: &QVector, y: &QVector, above: Option<&QVector>) -> Result<QVector> {
        let mut body = self.lower_bound_set(x, y)?.body;
        if let Some(a) = above {
            self.check_dim(a)?;
            if !(self.member(&(x - a)) && self.member(&(y - a))) {
                return Err(Error::NotLowerBound(a.clone()));
            }
            body = body.intersect(&self.translated_cone(a, BoundKind::Upper));
        }
        match solve_lp(self.strictly_positive_functional(), &body, Sense::Max) {
            LpOutcome::Optimal { point, .. } => Ok(point),
            other => Err(Error::Invariant(format!("lower-bound set has no maximal element: {other:?}"))),
        }
    }

    /// A minimal element of `{x,y}^U`, below `below` when given.
    pub fn minimal_upper_bound(&self, x: &QVector, y: &QVector, below: Option<&QVector>) -> Result<QVector> {
        let nx = -x;
        let ny = -y;
        let nb = below.map(|b| -b);
        self.maximal_lower_bound(&nx, &ny, nb.as_ref()).map(|z| -&z).map_err(|e| match e {
            Error::NotLowerBound(v) => Error::NotLowerBound(-&v),
            e => e,
        })
    }

    /// `z ∈ {x,y}^L` and `[0, x−z] ∩ [0, y−z] = {0}`.
    pub fn is_maximal_lower_bound(&self, x: &QVector, y: &QVector, z: &QVector) -> Result<bool> {
        self.check_dim(z)?;
        if !(self.leq(z, x)? && self.leq(z, y)?) {
            return Ok(false);
        }
        let zero = QVector::zeros(self.dim());
        let a = self.interval(&zero, &(x - z))?;
        let b = self.interval(&zero, &(y - z))?;
        Ok(is_singleton_zero(&a.body.intersect(&b.body)))
    }

    /// `z ∈ {x,y}^U` and `[x−z, 0] ∩ [y−z, 0] = {0}`.
    pub fn is_minimal_upper_bound(&self, x: &QVector, y: &QVector, z: &QVector) -> Result<bool> {
        self.check_dim(z)?;
        if !(self.leq(x, z)? && self.leq(y, z)?) {
            return Ok(false);
        }
        let zero = QVector::zeros(self.dim());
        let a = self.interval(&(x - z), &zero)?;
        let b = self.interval(&(y - z), &zero)?;
        Ok(is_singleton_zero(&a.body.intersect(&b.body)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{build_space, ConeRep};
    use crate::polyhedron::enumerate_vertices;
    use crate::simplex::is_feasible;

    fn q(v: &[i64]) -> QVector {
        QVector::from_ints(v)
    }

    fn orthant(n: usize) -> OrderedSpace {
        build_space(&ConeRep::orthant(n)).unwrap()
    }

    fn pyramid() -> OrderedSpace {
        build_space(&ConeRep::from_generators(3, vec![q(&[1, 0, 1]), q(&[0, 1, 1]), q(&[-1, 0, 1]), q(&[0, -1, 1])]))
            .unwrap()
    }

    #[test]
    fn leq_examples() {
        let o = orthant(2);
        assert!(o.leq(&q(&[0, 0]), &q(&[1, 2])).unwrap());
        assert!(!o.leq(&q(&[1, 0]), &q(&[0, 1])).unwrap());
        assert!(!o.leq(&q(&[0, 1]), &q(&[1, 0])).unwrap());
        let s = pyramid();
        assert!(s.leq(&q(&[1, 0, 1]), &q(&[1, 1, 2])).unwrap());
        assert!(matches!(o.leq(&q(&[0]), &q(&[1, 2])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bound_sets() {
        let o = orthant(2);
        let l = o.lower_bound_set(&q(&[2, 1]), &q(&[1, 3])).unwrap();
        assert!(l.body.contains_point(&q(&[1, 1])));
        assert!(!l.body.contains_point(&q(&[2, 1])));
        let u = o.upper_bound_set(&q(&[2, -1]), &q(&[-5, 3])).unwrap();
        assert!(is_feasible(&u.body));

        let s = pyramid();
        let l = s.lower_bound_set(&q(&[1, 0, 1]), &q(&[0, 1, 1])).unwrap();
        let positive = l.body.intersect(&s.translated_cone(&QVector::zeros(3), BoundKind::Upper));
        assert_eq!(enumerate_vertices(&positive).unwrap(), vec![QVector::zeros(3)]);
    }

    #[test]
    fn interval_bounded() {
        let s = pyramid();
        let i = s.interval(&QVector::zeros(3), &q(&[1, 1, 2])).unwrap();
        assert!(enumerate_vertices(&i.body).is_ok());
        let empty = s.interval(&q(&[1, 1, 2]), &QVector::zeros(3)).unwrap();
        assert!(!is_feasible(&empty.body));
    }

    #[test]
    fn maximal_lower_bounds() {
        let o = orthant(2);
        let (x, y) = (q(&[2, 1]), q(&[1, 3]));
        assert_eq!(o.maximal_lower_bound(&x, &y, None).unwrap(), q(&[1, 1]));
        assert!(o.is_maximal_lower_bound(&x, &y, &q(&[1, 1])).unwrap());
        assert!(!o.is_maximal_lower_bound(&x, &y, &q(&[0, 0])).unwrap());
        assert!(!o.is_maximal_lower_bound(&x, &y, &q(&[2, 0])).unwrap());
        assert!(matches!(o.maximal_lower_bound(&x, &y, Some(&q(&[2, 0]))), Err(Error::NotLowerBound(_))));

        let s = pyramid();
        let (v1, v2) = (q(&[1, 0, 1]), q(&[0, 1, 1]));
        let zero = QVector::zeros(3);
        assert_eq!(s.maximal_lower_bound(&v1, &v2, Some(&zero)).unwrap(), zero);
        assert!(s.is_maximal_lower_bound(&v1, &v2, &zero).unwrap());
        let z = s.maximal_lower_bound(&v1, &v2, None).unwrap();
        assert!(s.is_maximal_lower_bound(&v1, &v2, &z).unwrap());
    }

    #[test]
    fn minimal_upper_bounds() {
        let o = orthant(2);
        let (x, y) = (q(&[2, 1]), q(&[1, 3]));
        assert_eq!(o.minimal_upper_bound(&x, &y, None).unwrap(), q(&[2, 3]));
        assert!(o.is_minimal_upper_bound(&x, &y, &q(&[2, 3])).unwrap());
        assert!(!o.is_minimal_upper_bound(&x, &y, &q(&[3, 3])).unwrap());
    }
}
