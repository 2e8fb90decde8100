//! Brute-force oracles and reproducible random instances.
//!
//! Nothing in here calls the simplex or double description code: vertices
//! and facets are found by solving every square subsystem, and only the
//! exact linear algebra in [`crate::arith`] is shared with the main paths.

use std::path::Path;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::arith::{rank_of, ratio, QMatrix, QVector, Rational};
use crate::cone::{build_space, ConeDocument, ConeRep, OrderedSpace};
use crate::error::{Error, Result};
use crate::polyhedron::{Halfspace, Polyhedron};

/// Parameters of a random cone; identical specs give identical cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct InstanceSpec {
    pub dim: usize,
    pub generator_count: usize,
    pub coefficient_bound: u32,
    pub seed: u64,
}

const MAX_REJECTIONS: usize = 1000;

/// Samples generators with entries `p/q`, `|p| ≤ b`, `1 ≤ q ≤ b`, until
/// the cone is pointed and generating.
pub fn random_space(spec: InstanceSpec) -> Result<OrderedSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let b = spec.coefficient_bound.max(1) as i64;
    for _ in 0..MAX_REJECTIONS {
        let gens: Vec<QVector> = (0..spec.generator_count)
            .map(|_| (0..spec.dim).map(|_| ratio(rng.gen_range(-b..=b), rng.gen_range(1..=b))).collect())
            .collect();
        if gens.iter().any(QVector::is_zero) {
            continue;
        }
        if let Ok(space) = build_space(&ConeRep::from_generators(spec.dim, gens)) {
            return Ok(space);
        }
    }
    Err(Error::Invariant(format!("no pointed generating cone after {MAX_REJECTIONS} draws for {spec:?}")))
}

/// Nonzero nonnegative integer combination of the extreme rays. A third of
/// the draws use a single ray so atoms show up regularly.
pub fn random_positive(space: &OrderedSpace, rng: &mut impl Rng, bound: i64) -> QVector {
    let rays = space.generators();
    let mut x = QVector::zeros(space.dim());
    while x.is_zero() {
        let style = rng.gen_range(0..3);
        let chosen: Vec<usize> = match style {
            0 => vec![rng.gen_range(0..rays.len())],
            1 => vec![rng.gen_range(0..rays.len()), rng.gen_range(0..rays.len())],
            _ => (0..rays.len()).collect(),
        };
        for i in chosen {
            let c = Rational::from_integer(rng.gen_range(0..=bound).into());
            x = &x + &rays[i].scale(&c);
        }
    }
    x
}

/// Arbitrary vector with small integer entries.
pub fn random_vector(dim: usize, rng: &mut impl Rng, bound: i64) -> QVector {
    (0..dim).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cone generated by `(1,0,1), (0,1,1), (−1,0,1), (0,−1,1)`: a discrete
/// element that is not an atom lives here.
pub fn square_pyramid() -> ConeRep {
    ConeRep::from_generators(
        3,
        vec![
            QVector::from_ints(&[1, 0, 1]),
            QVector::from_ints(&[0, 1, 1]),
            QVector::from_ints(&[-1, 0, 1]),
            QVector::from_ints(&[0, -1, 1]),
        ],
    )
}

/// The always-included instances: the square pyramid and orthants in dims 2–4.
pub fn pinned_corpus() -> Vec<(String, OrderedSpace)> {
    let mut out = vec![("square_pyramid".to_string(), build_space(&square_pyramid()).expect("pinned cone"))];
    for n in 2..=4 {
        out.push((format!("orthant{n}"), build_space(&ConeRep::orthant(n)).expect("pinned cone")));
    }
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    pub pinned: Vec<PinnedEntry>,
    pub random: Vec<InstanceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinnedEntry {
    pub name: String,
    pub cone: String,
}

/// Reads `manifest.json` from `dir` and builds every pinned and random space.
pub fn load_manifest(dir: &Path) -> Result<Vec<(String, OrderedSpace)>> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())));
    let manifest: Manifest = serde_json::from_str(&read(&dir.join("manifest.json"))?)
        .map_err(|e| Error::Parse(format!("corpus manifest: {e}")))?;
    let mut out = Vec::new();
    for entry in &manifest.pinned {
        let doc = ConeDocument::parse(&read(&dir.join(&entry.cone))?)?;
        out.push((entry.name.clone(), build_space(&doc.to_rep()?)?));
    }
    for spec in &manifest.random {
        out.push((format!("random-d{}-s{}", spec.dim, spec.seed), random_space(*spec)?));
    }
    Ok(out)
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), &mut visit);
}

/// Vertices by exhaustive enumeration: every `dim`-subset of halfspaces
/// whose normals are independent is solved with equality, and the feasible
/// solutions are kept. Sorted, no duplicates. Assumes `p` is bounded.
pub fn oracle_vertices(p: &Polyhedron) -> Vec<QVector> {
    let n = p.dim();
    let hs = p.halfspaces();
    if p.is_trivially_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    combinations(hs.len(), n, |idx| {
        let rows: Vec<QVector> = idx.iter().map(|&i| hs[i].normal.clone()).collect();
        if rank_of(n, &rows) < n {
            return;
        }
        let rhs: QVector = idx.iter().map(|&i| hs[i].offset.clone()).collect();
        let m = QMatrix::from_rows(n, rows).expect("square system");
        if let Some(w) = m.solve(&rhs) {
            if hs.iter().all(|h| h.satisfied_by(&w)) {
                out.push(w);
            }
        }
    });
    out.sort();
    out.dedup();
    out
}

/// Facet normals of `cone(generators)` by brute force over `(dim−1)`-subsets.
pub fn oracle_facets(dim: usize, generators: &[QVector]) -> Vec<QVector> {
    let mut out = Vec::new();
    combinations(generators.len(), dim - 1, |idx| {
        let rows: Vec<QVector> = idx.iter().map(|&i| generators[i].clone()).collect();
        if rank_of(dim, &rows) < dim - 1 {
            return;
        }
        let normal = if rows.is_empty() {
            QVector::unit(dim, 0)
        } else {
            QMatrix::from_rows(dim, rows).expect("rows").nullspace_basis().remove(0)
        };
        let values: Vec<Rational> = generators.iter().map(|g| normal.dot(g)).collect();
        let normal = if values.iter().all(|v| !v.is_negative()) {
            normal
        } else if values.iter().all(|v| !v.is_positive()) {
            -&normal
        } else {
            return;
        };
        out.push(normal.primitive());
    });
    out.sort();
    out.dedup();
    out
}

/// `[0,x] ∩ [0,y] = {0}` decided by listing the vertices of the intersection.
pub fn oracle_d_disjoint(space: &OrderedSpace, x: &QVector, y: &QVector) -> bool {
    let n = space.dim();
    let facets = oracle_facets(n, space.generators());
    let mut p = Polyhedron::new(n);
    for a in &facets {
        p.push(Halfspace::new(a.clone(), Rational::zero()).expect("nonzero facet"));
        for b in [x, y] {
            p.push(Halfspace::new(-a, -a.dot(b)).expect("nonzero facet"));
        }
    }
    oracle_vertices(&p) == vec![QVector::zeros(n)]
}

/// Brackets `max{c : c·a ≤ x}` on the grid `k/den`: returns `lo` with
/// `lo` feasible and `lo + 1/den` infeasible, judged by the oracle facets.
pub fn oracle_sup_scaling(space: &OrderedSpace, a: &QVector, x: &QVector, den: i64, max_steps: i64) -> Option<Rational> {
    let facets = oracle_facets(space.dim(), space.generators());
    let feasible = |c: &Rational| {
        let w = x - &a.scale(c);
        facets.iter().all(|f| !f.dot(&w).is_negative())
    };
    let step = Rational::new(One::one(), den.into());
    let mut lo = Rational::zero();
    if !feasible(&lo) {
        return None;
    }
    for _ in 0..max_steps {
        let next = &lo + &step;
        if !feasible(&next) {
            return Some(lo);
        }
        lo = next;
    }
    None
}
