//! Two-phase primal simplex over the rationals with Bland's rule.
//!
//! Problems are posed over free variables `w ∈ Qⁿ` constrained by a
//! [`Polyhedron`] `{w : aᵢ·w ≥ bᵢ}`. Internally each `wⱼ` is split into
//! `w⁺ⱼ − w⁻ⱼ` and every row gets a surplus variable. Rows with `bᵢ ≤ 0`
//! start with their surplus in the basis; only rows with `bᵢ > 0` need an
//! artificial variable, so polyhedra containing the origin skip phase one.

use num_traits::{One, Signed, Zero};

use crate::arith::{QVector, Rational};
use crate::polyhedron::Polyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Result of a linear program, always accompanied by its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: QVector },
    /// `feasible_point + t·ray` stays feasible for all `t ≥ 0` and improves the objective.
    Unbounded { feasible_point: QVector, ray: QVector },
    /// Nonnegative multipliers `y`, one per halfspace, with `Σ yᵢaᵢ = 0` and `Σ yᵢbᵢ > 0`.
    Infeasible { farkas: QVector },
}

impl LpOutcome {
    pub fn optimum(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    /// Re-checks the certificate exactly against the problem it came from.
    pub fn verify(&self, objective: &QVector, p: &Polyhedron, sense: Sense) -> bool {
        let hs = p.halfspaces();
        match self {
            LpOutcome::Optimal { value, point } => {
                p.contains_point(point) && &objective.dot(point) == value
            }
            LpOutcome::Unbounded { feasible_point, ray } => {
                let gain = objective.dot(ray);
                let improving = match sense {
                    Sense::Max => gain.is_positive(),
                    Sense::Min => gain.is_negative(),
                };
                p.contains_point(feasible_point)
                    && improving
                    && hs.iter().all(|h| !h.normal.dot(ray).is_negative())
            }
            LpOutcome::Infeasible { farkas } => {
                if p.is_trivially_empty() {
                    return farkas.dim() == 0;
                }
                if farkas.dim() != hs.len() || farkas.iter().any(Signed::is_negative) {
                    return false;
                }
                let mut combo = QVector::zeros(p.dim());
                let mut rhs = Rational::zero();
                for (y, h) in farkas.iter().zip(hs) {
                    combo = &combo + &h.normal.scale(y);
                    rhs += y * &h.offset;
                }
                combo.is_zero() && rhs.is_positive()
            }
        }
    }
}

/// Optimizes `objective·w` over `p`.
pub fn solve_lp(objective: &QVector, p: &Polyhedron, sense: Sense) -> LpOutcome {
    assert_eq!(objective.dim(), p.dim(), "objective dimension must match the polyhedron");
    if p.is_trivially_empty() {
        return LpOutcome::Infeasible { farkas: QVector::zeros(0) };
    }
    let outcome = Tableau::new(p).solve(objective, sense);
    debug_assert!(outcome.verify(objective, p, sense), "simplex certificate failed: {outcome:?}");
    outcome
}

/// Whether `p` has at least one point.
pub fn is_feasible(p: &Polyhedron) -> bool {
    !solve_lp(&QVector::zeros(p.dim()), p, Sense::Max).is_infeasible()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    Plus(usize),
    Minus(usize),
    Surplus(usize),
    Artificial(usize),
}

struct Tableau {
    n: usize,
    columns: Vec<Column>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Row sign applied so that every right-hand side starts nonnegative.
    sign: Vec<Rational>,
    /// Column that formed the initial identity for each row.
    initial: Vec<usize>,
    /// Original halfspace index of each remaining row.
    origin: Vec<usize>,
    m_original: usize,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn new(p: &Polyhedron) -> Self {
        let n = p.dim();
        let hs = p.halfspaces();
        let m = hs.len();
        let mut columns: Vec<Column> = (0..n).map(Column::Plus).collect();
        columns.extend((0..n).map(Column::Minus));
        columns.extend((0..m).map(Column::Surplus));
        let artificial_rows: Vec<usize> = (0..m).filter(|&i| hs[i].offset.is_positive()).collect();
        columns.extend(artificial_rows.iter().map(|&i| Column::Artificial(i)));

        let width = columns.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut sign = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, h) in hs.iter().enumerate() {
            // aᵢ·w⁺ − aᵢ·w⁻ − sᵢ = bᵢ, multiplied by σᵢ.
            let s = if h.offset.is_positive() { Rational::one() } else { -Rational::one() };
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = &s * &h.normal[j];
                row[n + j] = -&row[j];
            }
            row[2 * n + i] = -&s;
            if h.offset.is_positive() {
                let a = artificial_rows.iter().position(|&r| r == i).unwrap();
                row[2 * n + m + a] = Rational::one();
                basis.push(2 * n + m + a);
            } else {
                basis.push(2 * n + i);
            }
            rhs.push(&s * &h.offset);
            rows.push(row);
            sign.push(s);
        }
        let initial = basis.clone();
        Tableau { n, columns, rows, rhs, basis, sign, initial, origin: (0..m).collect(), m_original: m }
    }

    fn width(&self) -> usize {
        self.columns.len()
    }

    fn is_artificial(&self, j: usize) -> bool {
        matches!(self.columns[j], Column::Artificial(_))
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        (0..self.width())
            .map(|j| {
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                d
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, c: usize, d: &mut [Rational]) {
        let inv = self.rows[r][c].recip();
        for e in self.rows[r].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (e, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &f * p;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !d[c].is_zero() {
            let f = d[c].clone();
            for (e, p) in d.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes with Bland's rule over the allowed columns.
    fn run(&mut self, d: &mut [Rational], allowed: &dyn Fn(usize) -> bool) -> Phase {
        loop {
            let Some(enter) = (0..self.width()).find(|&j| allowed(j) && d[j].is_negative()) else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Phase::Unbounded(enter),
                Some((r, _)) => self.pivot(r, enter, d),
            }
        }
    }

    fn point(&self) -> QVector {
        let mut w = QVector::zeros(self.n);
        for (i, &b) in self.basis.iter().enumerate() {
            match self.columns[b] {
                Column::Plus(j) => w[j] += &self.rhs[i],
                Column::Minus(j) => w[j] -= &self.rhs[i],
                _ => {}
            }
        }
        w
    }

    fn solve(mut self, objective: &QVector, sense: Sense) -> LpOutcome {
        if self.columns.iter().any(|c| matches!(c, Column::Artificial(_))) {
            let cost: Vec<Rational> = (0..self.width())
                .map(|j| if self.is_artificial(j) { Rational::one() } else { Rational::zero() })
                .collect();
            let mut d = self.reduced_costs(&cost);
            // Phase one is bounded below by zero.
            let Phase::Optimal = self.run(&mut d, &|_| true) else { unreachable!() };
            let infeasibility: Rational = self
                .basis
                .iter()
                .zip(&self.rhs)
                .filter(|(&b, _)| self.is_artificial(b))
                .map(|(_, v)| v.clone())
                .sum();
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible { farkas: self.farkas(&cost, &d) };
            }
            self.drive_out_artificials(&mut d);
        }

        let n = self.n;
        let cost: Vec<Rational> = self
            .columns
            .iter()
            .map(|c| {
                let v = match *c {
                    Column::Plus(j) => objective[j].clone(),
                    Column::Minus(j) => -&objective[j],
                    _ => Rational::zero(),
                };
                if sense == Sense::Max {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let mut d = self.reduced_costs(&cost);
        let artificial: Vec<bool> = (0..self.width()).map(|j| self.is_artificial(j)).collect();
        match self.run(&mut d, &|j| !artificial[j]) {
            Phase::Optimal => {
                let point = self.point();
                LpOutcome::Optimal { value: objective.dot(&point), point }
            }
            Phase::Unbounded(enter) => {
                let mut ray = QVector::zeros(n);
                let mut step = |col: usize, amount: &Rational| match self.columns[col] {
                    Column::Plus(j) => ray[j] += amount,
                    Column::Minus(j) => ray[j] -= amount,
                    _ => {}
                };
                step(enter, &Rational::one());
                for (i, &b) in self.basis.iter().enumerate() {
                    step(b, &-&self.rows[i][enter]);
                }
                LpOutcome::Unbounded { feasible_point: self.point(), ray }
            }
        }
    }

    /// Dual multipliers read off the columns that formed the initial identity.
    fn farkas(&self, cost: &[Rational], d: &[Rational]) -> QVector {
        let mut y = QVector::zeros(self.m_original);
        for (i, &col) in self.initial.iter().enumerate() {
            let u = &cost[col] - &d[col];
            y[i] = &self.sign[i] * &u;
        }
        y
    }

    fn drive_out_artificials(&mut self, d: &mut [Rational]) {
        let mut i = 0;
        while i < self.rows.len() {
            if !self.is_artificial(self.basis[i]) {
                i += 1;
                continue;
            }
            let col = (0..self.width()).find(|&j| !self.is_artificial(j) && !self.rows[i][j].is_zero());
            match col {
                Some(j) => {
                    self.pivot(i, j, d);
                    i += 1;
                }
                None => {
                    // Redundant row: a combination of the others.
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    self.origin.remove(i);
                }
            }
        }
    }
}
