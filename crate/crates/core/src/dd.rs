//! Double description method for `{x : aᵢ·x ≥ 0}`.
//!
//! Starts from the whole space (lineality = Qᵈ, no rays) and adds one
//! inequality at a time. While some lineality direction is cut by the new
//! inequality that direction becomes a ray and everything else is projected
//! onto the hyperplane. Otherwise rays are split into `+`, `0`, `−` classes
//! and adjacent `(+, −)` pairs are combined. Adjacency uses the
//! combinatorial test on zero sets plus the rank lower bound on their size.

use num_traits::{Signed, Zero};

use crate::arith::{QVector, Rational};

/// `{Σ λᵢlᵢ + Σ μⱼrⱼ : μ ≥ 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lineality: Vec<QVector>,
    pub rays: Vec<QVector>,
}

impl ConeGenerators {
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
}

#[derive(Clone)]
struct Ray {
    v: QVector,
    zeros: Vec<bool>,
}

/// Minimal generators of the cone cut out by `inequalities` in `Qᵈ`.
pub fn cone_generators(dim: usize, inequalities: &[QVector]) -> ConeGenerators {
    let mut lineality: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in inequalities.iter().enumerate() {
        debug_assert_eq!(a.dim(), dim);
        if a.is_zero() {
            for r in &mut rays {
                r.zeros.push(true);
            }
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = -&l;
                al = -al;
            }
            for other in &mut lineality {
                let t = a.dot(other) / &al;
                if !t.is_zero() {
                    *other = (&*other - &l.scale(&t)).primitive();
                }
            }
            for r in &mut rays {
                let t = a.dot(&r.v) / &al;
                if !t.is_zero() {
                    r.v = (&r.v - &l.scale(&t)).primitive();
                }
                r.zeros.push(true);
            }
            let mut zeros: Vec<bool> = inequalities[..k].iter().map(|b| b.dot(&l).is_zero()).collect();
            zeros.push(false);
            rays.push(Ray { v: l.primitive(), zeros });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        // Rank bound: two adjacent rays share at least (d − dim L − 2) tight constraints.
        let needed = dim.saturating_sub(lineality.len()).saturating_sub(2);

        let mut created = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common: Vec<bool> =
                    rays[p].zeros.iter().zip(&rays[q].zeros).map(|(x, y)| *x && *y).collect();
                if common.iter().filter(|&&z| z).count() < needed {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(o, r)| {
                    o == p
                        || o == q
                        || common.iter().zip(&r.zeros).any(|(c, z)| *c && !*z)
                });
                if !adjacent {
                    continue;
                }
                let v = (&rays[q].v.scale(&values[p]) - &rays[p].v.scale(&values[q])).primitive();
                let mut zeros = common;
                zeros.push(true);
                created.push(Ray { v, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(plus.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            r.zeros.push(values[i].is_zero());
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    ConeGenerators { lineality, rays: rays.into_iter().map(|r| r.v).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(rows: &[&[i64]]) -> Vec<QVector> {
        rows.iter().map(|r| QVector::from_ints(r)).collect()
    }

    fn sorted(mut v: Vec<QVector>) -> Vec<QVector> {
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let g = cone_generators(3, &vs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(g.is_pointed());
        assert_eq!(sorted(g.rays), sorted(vs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])));
    }

    #[test]
    fn square_pyramid_cone() {
        let h = vs(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]]);
        let g = cone_generators(3, &h);
        assert!(g.is_pointed());
        assert_eq!(
            sorted(g.rays),
            sorted(vs(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]))
        );
    }

    #[test]
    fn half_plane_keeps_lineality() {
        let g = cone_generators(2, &vs(&[&[0, 1]]));
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.lineality[0][1], Rational::zero());
        assert_eq!(g.rays, vs(&[&[0, 1]]));
    }

    #[test]
    fn redundant_and_zero_rows() {
        let g = cone_generators(2, &vs(&[&[1, 0], &[0, 0], &[0, 1], &[1, 1], &[2, 0]]));
        assert_eq!(sorted(g.rays), sorted(vs(&[&[1, 0], &[0, 1]])));
    }

    #[test]
    fn trivial_cone() {
        let g = cone_generators(2, &vs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]));
        assert!(g.is_pointed());
        assert!(g.rays.is_empty());
    }
}
