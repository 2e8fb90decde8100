//! Atoms, discrete and D-discrete elements.
//!
//! In the admitted spaces (Archimedean, every pair has maximal lower bounds)
//! an element is D-discrete exactly when it is an atom. Two independent
//! routes are kept for that predicate: [`OrderedSpace::is_atom`] uses LPs
//! over the annihilator of `x`, while [`OrderedSpace::d_disjoint_witness_below`]
//! works from the vertices of `[0,x]` and builds an explicit D-disjoint pair.
//! [`OrderedSpace::is_d_discrete`] runs both and fails loudly if they disagree.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{in_span, QMatrix, QVector, Rational};
use crate::cone::{FaceHandle, OrderedSpace};
use crate::error::{Error, Result};
use crate::polyhedron::{enumerate_vertices, Polyhedron};
use crate::simplex::{solve_lp, LpOutcome, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscreteStatus {
    Atom,
    DDiscrete,
    NotDDiscrete,
    /// Discrete because it is an atom.
    Discrete,
    /// No ⊥-pair was found below `x`; the search is not exhaustive.
    DiscreteUnknown,
    NotDiscrete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteVerdict {
    pub status: DiscreteStatus,
    pub witness: Option<(QVector, QVector)>,
    pub face_chain: Option<Vec<FaceHandle>>,
}

/// Nonzero `first, second ≤ x` with `first ⊥* second`, and how they were obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessConstruction {
    pub first: QVector,
    pub second: QVector,
    /// Vertex of `[0,x]` off the ray through `x`.
    pub vertex: QVector,
    /// `sup{c : c·vertex ≤ x}`.
    pub alpha: Rational,
    pub lambda: Rational,
    /// Maximal lower bound of `x − α·vertex` and `λα·vertex` above zero.
    pub meet: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDescent {
    pub atom: QVector,
    /// `(xₖ, face generated by xₖ)` for every iterate, ending with the atom.
    pub trace: Vec<(QVector, FaceHandle)>,
}

impl OrderedSpace {
    fn require_nonzero_positive(&self, x: &QVector) -> Result<()> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !self.member(x) {
            return Err(Error::NotPositive(x.clone()));
        }
        Ok(())
    }

    fn lower_interval(&self, x: &QVector) -> Result<Polyhedron> {
        Ok(self.interval(&QVector::zeros(self.dim()), x)?.body)
    }

    /// `[0,x] ⊆ span(x)`: every functional vanishing on `x` vanishes on `[0,x]`.
    pub fn is_atom(&self, x: &QVector) -> Result<bool> {
        self.require_nonzero_positive(x)?;
        let body = self.lower_interval(x)?;
        let annihilator = QMatrix::from_rows(self.dim(), vec![x.clone()])?.nullspace_basis();
        for f in &annihilator {
            for sense in [Sense::Max, Sense::Min] {
                match solve_lp(f, &body, sense) {
                    LpOutcome::Optimal { value, .. } if value.is_zero() => {}
                    LpOutcome::Optimal { .. } => return Ok(false),
                    other => {
                        return Err(Error::Invariant(format!("order interval [0,{x}] is not a polytope: {other:?}")))
                    }
                }
            }
        }
        Ok(true)
    }

    /// `max{c : c·a ≤ x}`; attained because the cone is closed.
    pub fn sup_scaling(&self, a: &QVector, x: &QVector) -> Result<Rational> {
        self.check_dim(a)?;
        self.check_dim(x)?;
        let mut p = Polyhedron::new(1);
        for f in self.inequalities() {
            p.add(QVector::new(vec![-f.dot(a)]), -f.dot(x));
        }
        match solve_lp(&QVector::new(vec![Rational::one()]), &p, Sense::Max) {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Unbounded { .. } => Err(Error::Unbounded(a.clone())),
            LpOutcome::Infeasible { .. } => Err(Error::NotPositive(x.clone())),
        }
    }

    /// Lexicographically smallest vertex of `[0,x]` not on the ray through `x`.
    fn vertex_off_span(&self, x: &QVector) -> Result<Option<QVector>> {
        let vertices = enumerate_vertices(&self.lower_interval(x)?)?;
        Ok(vertices.into_iter().find(|w| !in_span(x, w)))
    }

    /// Nonzero D-disjoint `a, b ≤ x`, or `None` exactly when `x` is an atom.
    ///
    /// Follows the argument that D-discrete elements are atoms, made finite:
    /// 1. `w`: a vertex of `[0,x]` off `span(x)`;
    /// 2. `a′ = α·w` with `α = sup{c : c·w ≤ x}`, so `sup{c : c·a′ ≤ x} = 1`; `v = x − a′`;
    /// 3. `β = min{c ≥ 0 : v ≤ c·a′}` (closed cone, so attained) and `λ = min(β/2, 1)`,
    ///    or `λ = 1` when `v` is not below any multiple of `a′`;
    /// 4. `z`: a maximal element of `{v, λa′}^L` with `z ≥ 0`;
    /// 5. the pair `(v − z, λa′ − z)`.
    ///
    /// `λa′ = z` would give `(1+λ)a′ ≤ x`, and `v = z` would give `v ≤ λa′` with
    /// `λ < β`, so both components are nonzero; `λ ≤ 1` keeps both below `x`.
    pub fn d_disjoint_witness_below(&self, x: &QVector) -> Result<Option<WitnessConstruction>> {
        self.require_nonzero_positive(x)?;
        let Some(vertex) = self.vertex_off_span(x)? else {
            return Ok(None);
        };
        let alpha = self.sup_scaling(&vertex, x)?;
        let scaled = vertex.scale(&alpha);
        let v = x - &scaled;

        let mut p = Polyhedron::new(1);
        p.add(QVector::new(vec![Rational::one()]), Rational::zero());
        for f in self.inequalities() {
            p.add(QVector::new(vec![f.dot(&scaled)]), f.dot(&v));
        }
        let lambda = match solve_lp(&QVector::new(vec![Rational::one()]), &p, Sense::Min) {
            LpOutcome::Infeasible { .. } => Rational::one(),
            LpOutcome::Optimal { value, .. } if value.is_positive() => {
                std::cmp::min(value / Rational::from_integer(2.into()), Rational::one())
            }
            other => {
                return Err(Error::Invariant(format!("x − αw ≤ 0 for a vertex w off span(x): {other:?}")))
            }
        };

        let small = scaled.scale(&lambda);
        let meet = self.maximal_lower_bound(&v, &small, Some(&QVector::zeros(self.dim())))?;
        let construction =
            WitnessConstruction { first: &v - &meet, second: &small - &meet, vertex, alpha, lambda, meet };
        self.verify_d_pair(x, &construction.first, &construction.second)?;
        Ok(Some(construction))
    }

    fn verify_d_pair(&self, x: &QVector, a: &QVector, b: &QVector) -> Result<()> {
        let below = |w: &QVector| !w.is_zero() && self.member(w) && self.member(&(x - w));
        if below(a) && below(b) && self.d_disjoint(a, b)?.result {
            Ok(())
        } else {
            Err(Error::Invariant(format!("witness ({a}, {b}) below {x} fails re-verification")))
        }
    }

    /// D-discrete iff atom; a refutation always carries a re-verified witness.
    pub fn is_d_discrete(&self, x: &QVector) -> Result<DiscreteVerdict> {
        let atom = self.is_atom(x)?;
        let witness = self.d_disjoint_witness_below(x)?;
        match (atom, witness) {
            (true, None) => Ok(DiscreteVerdict { status: DiscreteStatus::DDiscrete, witness: None, face_chain: None }),
            (false, Some(w)) => Ok(DiscreteVerdict {
                status: DiscreteStatus::NotDDiscrete,
                witness: Some((w.first, w.second)),
                face_chain: None,
            }),
            (atom, w) => Err(Error::Invariant(format!(
                "atom test says {atom} but the witness search {} for {x}",
                if w.is_some() { "found a D-disjoint pair" } else { "found none" }
            ))),
        }
    }

    /// Three-valued: atoms are discrete; otherwise a ⊥-pair below `x` is
    /// searched among vertex pairs of `[0,x]`, the D-disjoint witness, and
    /// complements `(w, x − w)`. Failing to find one is reported as unknown.
    pub fn is_discrete(&self, x: &QVector) -> Result<DiscreteVerdict> {
        if self.is_atom(x)? {
            return Ok(DiscreteVerdict { status: DiscreteStatus::Discrete, witness: None, face_chain: None });
        }
        let vertices: Vec<QVector> =
            enumerate_vertices(&self.lower_interval(x)?)?.into_iter().filter(|w| !w.is_zero()).collect();
        let mut candidates = Vec::new();
        if let Some(w) = self.d_disjoint_witness_below(x)? {
            candidates.push((w.first, w.second));
        }
        for w in &vertices {
            let rest = x - w;
            if !rest.is_zero() {
                candidates.push((w.clone(), rest));
            }
        }
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                candidates.push((a.clone(), b.clone()));
            }
        }
        for (a, b) in candidates {
            if self.perp(&a, &b)?.result {
                let below = |w: &QVector| !w.is_zero() && self.member(w) && self.member(&(x - w));
                if !(below(&a) && below(&b)) {
                    return Err(Error::Invariant(format!("⊥ witness ({a}, {b}) is not below {x}")));
                }
                return Ok(DiscreteVerdict {
                    status: DiscreteStatus::NotDiscrete,
                    witness: Some((a, b)),
                    face_chain: None,
                });
            }
        }
        Ok(DiscreteVerdict { status: DiscreteStatus::DiscreteUnknown, witness: None, face_chain: None })
    }

    /// An atom `0 < z ≤ x` by face descent: while `xₖ` is not an atom,
    /// subtract the largest multiple of a vertex of `[0,xₖ]` off `span(xₖ)`.
    /// Each step lands in a proper subface, so at most `dim` iterates occur.
    pub fn find_atom_below(&self, x: &QVector) -> Result<AtomDescent> {
        self.require_nonzero_positive(x)?;
        let mut trace: Vec<(QVector, FaceHandle)> = Vec::new();
        let mut current = x.clone();
        loop {
            let face = self.face_of(&current)?;
            if let Some((_, prev)) = trace.last() {
                if !self.face_strictly_below(&face, prev) {
                    return Err(Error::Invariant(format!("face of {current} does not strictly descend")));
                }
            }
            trace.push((current.clone(), face));
            if trace.len() > self.dim() {
                return Err(Error::Invariant(format!("descent from {x} exceeded {} steps", self.dim())));
            }
            let atom = self.is_atom(&current)?;
            let vertex = self.vertex_off_span(&current)?;
            match (atom, vertex) {
                (true, None) => return Ok(AtomDescent { atom: current, trace }),
                (false, Some(a)) => {
                    let alpha = self.sup_scaling(&a, &current)?;
                    current = &current - &a.scale(&alpha);
                }
                (atom, _) => {
                    return Err(Error::Invariant(format!(
                        "atom test ({atom}) and vertex search disagree on {current}"
                    )))
                }
            }
        }
    }
}

/// `x = c·y` for some `c ≥ 0`.
pub fn nonneg_multiple(x: &QVector, y: &QVector) -> bool {
    if x.is_zero() {
        return true;
    }
    if y.is_zero() || !in_span(y, x) {
        return false;
    }
    let i = (0..y.dim()).find(|&i| !y[i].is_zero()).unwrap();
    !(&x[i] / &y[i]).is_negative()
}
