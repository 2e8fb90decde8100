//! Polyhedral positive cones and the ordered spaces they define.
//!
//! Only closed, pointed, generating polyhedral cones are admitted. In finite
//! dimension a closed cone gives an Archimedean order and a generating cone
//! gives a directed space; directed Archimedean spaces are pre-Riesz. Those
//! flags are therefore set by construction rather than tested per instance.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, rank_of, QMatrix, QVector, Rational};
use crate::dd;
use crate::error::{check_dim, Error, Result};
use crate::polyhedron::Polyhedron;
use crate::simplex::{is_feasible, solve_lp, LpOutcome, Sense};

/// A cone given by generators (`cone(g₁,…,gₖ)`), inequalities
/// (`{w : aᵢ·w ≥ 0}`), or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRep {
    pub dim: usize,
    pub generators: Option<Vec<QVector>>,
    pub inequalities: Option<Vec<QVector>>,
}

impl ConeRep {
    pub fn from_generators(dim: usize, generators: Vec<QVector>) -> Self {
        ConeRep { dim, generators: Some(generators), inequalities: None }
    }

    pub fn from_inequalities(dim: usize, inequalities: Vec<QVector>) -> Self {
        ConeRep { dim, generators: None, inequalities: Some(inequalities) }
    }

    pub fn orthant(dim: usize) -> Self {
        Self::from_generators(dim, (0..dim).map(|i| QVector::unit(dim, i)).collect())
    }
}

/// On-disk cone document. Vectors are lists of rational strings. There is
/// deliberately no way to write a strict inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<String>>>,
}

impl ConeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cone document: {e}")))
    }

    pub fn to_rep(&self) -> Result<ConeRep> {
        let vectors = |list: &Option<Vec<Vec<String>>>| -> Result<Option<Vec<QVector>>> {
            list.as_ref()
                .map(|vs| {
                    vs.iter()
                        .map(|v| {
                            let q = v.iter().map(|s| parse_rational(s)).collect::<Result<QVector>>()?;
                            check_dim(self.dim, &q)?;
                            Ok(q)
                        })
                        .collect()
                })
                .transpose()
        };
        Ok(ConeRep {
            dim: self.dim,
            generators: vectors(&self.generators)?,
            inequalities: vectors(&self.inequalities)?,
        })
    }

    pub fn from_rep(rep: &ConeRep) -> Self {
        let strings = |vs: &Vec<QVector>| vs.iter().map(QVector::to_strings).collect();
        ConeDocument {
            dim: rep.dim,
            generators: rep.generators.as_ref().map(strings),
            inequalities: rep.inequalities.as_ref().map(strings),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceFlags {
    pub pointed: bool,
    pub generating: bool,
    pub archimedean: bool,
    pub pre_riesz: bool,
}

/// A finite-dimensional space ordered by a validated polyhedral cone.
#[derive(Clone, Debug)]
pub struct OrderedSpace {
    dim: usize,
    rays: Vec<QVector>,
    facets: Vec<QVector>,
    functional: QVector,
    flags: SpaceFlags,
}

/// The face of the cone cut out by making a set of inequalities tight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceHandle {
    pub active_set: BTreeSet<usize>,
    pub generator_point: QVector,
}

/// Validates `rep` and materializes both representations.
pub fn build_space(rep: &ConeRep) -> Result<OrderedSpace> {
    let dim = rep.dim;
    if dim == 0 {
        return Err(Error::Parse("cone dimension must be positive".into()));
    }
    if rep.generators.is_none() && rep.inequalities.is_none() {
        return Err(Error::Parse("cone needs generators or inequalities".into()));
    }
    for v in rep.generators.iter().chain(&rep.inequalities).flatten() {
        check_dim(dim, v)?;
    }
    if let Some(gens) = &rep.generators {
        if let Some(i) = gens.iter().position(QVector::is_zero) {
            return Err(Error::Parse(format!("generator {i} is zero")));
        }
    }

    let (rays, facets) = match (&rep.generators, &rep.inequalities) {
        (Some(gens), ineqs) => {
            let (rays, facets) = from_generators(dim, gens)?;
            if let Some(ineqs) = ineqs {
                check_consistent(dim, gens, ineqs, &facets)?;
            }
            (rays, facets)
        }
        (None, Some(ineqs)) => from_inequalities(dim, ineqs)?,
        (None, None) => unreachable!(),
    };
    let rays = order_like(rays, rep.generators.as_deref());
    let facets = order_like(facets, rep.inequalities.as_deref());
    let functional = positive_functional(dim, &rays)?;
    Ok(OrderedSpace {
        dim,
        rays,
        facets,
        functional,
        flags: SpaceFlags { pointed: true, generating: true, archimedean: true, pre_riesz: true },
    })
}

fn from_generators(dim: usize, gens: &[QVector]) -> Result<(Vec<QVector>, Vec<QVector>)> {
    let dual = dd::cone_generators(dim, gens);
    if let Some(l) = dual.lineality.first() {
        return Err(Error::NotGenerating(sign_normalized(l)));
    }
    let facets = dual.rays;
    let primal = dd::cone_generators(dim, &facets);
    if let Some(l) = primal.lineality.first() {
        return Err(Error::NotPointed(sign_normalized(l)));
    }
    Ok((primal.rays, facets))
}

fn from_inequalities(dim: usize, ineqs: &[QVector]) -> Result<(Vec<QVector>, Vec<QVector>)> {
    let primal = dd::cone_generators(dim, ineqs);
    if let Some(l) = primal.lineality.first() {
        return Err(Error::NotPointed(sign_normalized(l)));
    }
    if rank_of(dim, &primal.rays) < dim {
        let missed = if primal.rays.is_empty() {
            QVector::unit(dim, 0)
        } else {
            QMatrix::from_rows(dim, primal.rays.clone())?.nullspace_basis().remove(0)
        };
        return Err(Error::NotGenerating(sign_normalized(&missed.primitive())));
    }
    let facets = dd::cone_generators(dim, &primal.rays).rays;
    Ok((primal.rays, facets))
}

fn check_consistent(dim: usize, gens: &[QVector], ineqs: &[QVector], facets: &[QVector]) -> Result<()> {
    for g in gens {
        if let Some(a) = ineqs.iter().find(|a| a.dot(g).is_negative()) {
            return Err(Error::InconsistentReps(format!("generator {g} violates inequality {a}")));
        }
    }
    let from_ineqs = dd::cone_generators(dim, ineqs);
    for r in from_ineqs.lineality.iter().flat_map(|l| [l.clone(), -l]).chain(from_ineqs.rays) {
        if let Some(f) = facets.iter().find(|f| f.dot(&r).is_negative()) {
            return Err(Error::InconsistentReps(format!(
                "{r} satisfies the inequalities but violates {f}, which every generator satisfies"
            )));
        }
    }
    Ok(())
}

/// Vectors matching (up to positive scaling) an entry of `reference` come
/// first in reference order; the rest follow lexicographically.
fn order_like(mut vs: Vec<QVector>, reference: Option<&[QVector]>) -> Vec<QVector> {
    vs.sort();
    let mut out = Vec::with_capacity(vs.len());
    for r in reference.unwrap_or(&[]) {
        let r = r.primitive();
        if let Some(i) = vs.iter().position(|v| *v == r) {
            out.push(vs.remove(i));
        }
    }
    out.extend(vs);
    out
}

fn sign_normalized(v: &QVector) -> QVector {
    match v.iter().find(|e| !e.is_zero()) {
        Some(e) if e.is_negative() => -v,
        _ => v.clone(),
    }
}

/// Maximizes `t` subject to `f·gᵢ ≥ t` and `−1 ≤ fⱼ ≤ 1`, then rescales so `f·gᵢ ≥ 1`.
fn positive_functional(dim: usize, rays: &[QVector]) -> Result<QVector> {
    let mut p = Polyhedron::new(dim + 1);
    for g in rays {
        p.add(g.iter().cloned().chain(std::iter::once(-Rational::one())).collect(), Rational::zero());
    }
    for j in 0..dim {
        let e = QVector::unit(dim + 1, j);
        p.add(e.clone(), -Rational::one());
        p.add(-&e, -Rational::one());
    }
    match solve_lp(&QVector::unit(dim + 1, dim), &p, Sense::Max) {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            Ok(point.iter().take(dim).map(|c| c / &value).collect())
        }
        other => Err(Error::Invariant(format!(
            "no strictly positive functional for a pointed cone: {other:?}"
        ))),
    }
}

impl OrderedSpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays of the cone, as primitive integer vectors.
    pub fn generators(&self) -> &[QVector] {
        &self.rays
    }

    /// Irredundant facet normals `aᵢ`, so that `V_p = {w : aᵢ·w ≥ 0}`.
    pub fn inequalities(&self) -> &[QVector] {
        &self.facets
    }

    pub fn flags(&self) -> SpaceFlags {
        self.flags
    }

    pub fn rep(&self) -> ConeRep {
        ConeRep { dim: self.dim, generators: Some(self.rays.clone()), inequalities: Some(self.facets.clone()) }
    }

    pub fn check_dim(&self, v: &QVector) -> Result<()> {
        check_dim(self.dim, v)
    }

    pub fn member(&self, v: &QVector) -> bool {
        self.facets.iter().all(|a| !a.dot(v).is_negative())
    }

    /// Membership decided from the generators: is `v` a nonnegative
    /// combination of the extreme rays?
    pub fn member_by_generators(&self, v: &QVector) -> bool {
        let k = self.rays.len();
        let mut p = Polyhedron::new(k);
        for i in 0..self.dim {
            let row: QVector = self.rays.iter().map(|g| g[i].clone()).collect();
            p.add(row.clone(), v[i].clone());
            p.add(-&row, -&v[i]);
        }
        for j in 0..k {
            p.add(QVector::unit(k, j), Rational::zero());
        }
        is_feasible(&p)
    }

    /// `f` with `f·g ≥ 1` on every extreme ray, hence `f·w > 0` on `V_p \ {0}`.
    pub fn strictly_positive_functional(&self) -> &QVector {
        &self.functional
    }

    /// The face generated by `x`: the inequalities tight at `x`.
    pub fn face_of(&self, x: &QVector) -> Result<FaceHandle> {
        self.check_dim(x)?;
        if !self.member(x) {
            return Err(Error::NotPositive(x.clone()));
        }
        let active_set = (0..self.facets.len()).filter(|&i| self.facets[i].dot(x).is_zero()).collect();
        Ok(FaceHandle { active_set, generator_point: x.clone() })
    }

    pub fn face_contains(&self, face: &FaceHandle, w: &QVector) -> bool {
        self.member(w) && face.active_set.iter().all(|&i| self.facets[i].dot(w).is_zero())
    }

    /// All inequalities vanishing on the face cut out by `active`.
    pub fn face_closure(&self, active: &BTreeSet<usize>) -> BTreeSet<usize> {
        let on_face: Vec<&QVector> = self
            .rays
            .iter()
            .filter(|r| active.iter().all(|&i| self.facets[i].dot(r).is_zero()))
            .collect();
        (0..self.facets.len())
            .filter(|&i| on_face.iter().all(|r| self.facets[i].dot(r).is_zero()))
            .collect()
    }

    /// Whether face `f` is a proper subface of face `g`.
    pub fn face_strictly_below(&self, f: &FaceHandle, g: &FaceHandle) -> bool {
        let cf = self.face_closure(&f.active_set);
        let cg = self.face_closure(&g.active_set);
        cf.is_superset(&cg) && cf != cg && !self.face_contains(f, &g.generator_point)
    }
}
