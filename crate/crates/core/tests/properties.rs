mod common;

use std::path::PathBuf;

use num_traits::Signed;
use ordcone::arith::{int, ratio};
use ordcone::oracle::{
    load_manifest, oracle_facets, oracle_sup_scaling, pinned_corpus, random_positive, random_space, random_vector, rng,
    InstanceSpec,
};
use ordcone::{build_space, ConeDocument, ConeRep, OrderedSpace, QVector};

use common::random_spaces;

fn sorted(v: &[QVector]) -> Vec<QVector> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn corpus() -> Vec<OrderedSpace> {
    let mut out: Vec<OrderedSpace> = pinned_corpus().into_iter().map(|(_, s)| s).collect();
    out.extend(random_spaces(60, 90_000));
    out
}

#[test]
fn facets_match_brute_force() {
    for s in corpus() {
        assert_eq!(sorted(s.inequalities()), oracle_facets(s.dim(), s.generators()), "{:?}", s.generators());
    }
}

#[test]
fn representations_round_trip() {
    for s in corpus() {
        let from_h = build_space(&ConeRep::from_inequalities(s.dim(), s.inequalities().to_vec())).unwrap();
        let from_v = build_space(&ConeRep::from_generators(s.dim(), s.generators().to_vec())).unwrap();
        for t in [&from_h, &from_v] {
            assert_eq!(sorted(t.generators()), sorted(s.generators()));
            assert_eq!(sorted(t.inequalities()), sorted(s.inequalities()));
        }
        let doc = ConeDocument::from_rep(&s.rep());
        let text = serde_json::to_string(&doc).unwrap();
        let back = build_space(&ConeDocument::parse(&text).unwrap().to_rep().unwrap()).unwrap();
        assert_eq!(back.generators(), s.generators());
        assert_eq!(back.inequalities(), s.inequalities());
    }
}

#[test]
fn membership_by_facets_and_by_generators_agree() {
    let mut r = rng(11);
    for s in corpus() {
        for _ in 0..20 {
            let v = random_vector(s.dim(), &mut r, 3);
            assert_eq!(s.member(&v), s.member_by_generators(&v), "{v}");
        }
        let p = random_positive(&s, &mut r, 3);
        assert!(s.member(&p) && s.member_by_generators(&p));
    }
}

#[test]
fn functional_is_strictly_positive() {
    for s in corpus() {
        let f = s.strictly_positive_functional();
        assert!(s.generators().iter().all(|g| f.dot(g).is_positive()));
    }
}

#[test]
fn manifest_matches_pinned_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let loaded = load_manifest(&dir).unwrap();
    assert_eq!(loaded.len(), 9);
    for (name, space) in pinned_corpus() {
        let (_, from_file) = loaded.iter().find(|(n, _)| *n == name).unwrap();
        assert_eq!(sorted(from_file.generators()), sorted(space.generators()), "{name}");
        assert_eq!(sorted(from_file.inequalities()), sorted(space.inequalities()), "{name}");
    }
}

#[test]
fn random_spaces_are_valid_and_reproducible() {
    for seed in 0..200 {
        let spec = InstanceSpec { dim: 2 + (seed % 4) as usize, generator_count: 6, coefficient_bound: 3, seed };
        let a = random_space(spec).unwrap();
        let b = random_space(spec).unwrap();
        assert_eq!(a.generators(), b.generators());
        let flags = a.flags();
        assert!(flags.pointed && flags.generating && flags.archimedean && flags.pre_riesz);
    }
}

#[test]
fn order_is_a_partial_order() {
    let mut r = rng(12);
    for s in random_spaces(40, 91_000) {
        for _ in 0..10 {
            let x = random_vector(s.dim(), &mut r, 2);
            let y = &x + &random_positive(&s, &mut r, 2);
            let z = &y + &random_positive(&s, &mut r, 2);
            assert!(s.leq(&x, &x).unwrap());
            assert!(s.leq(&x, &y).unwrap() && s.leq(&y, &z).unwrap() && s.leq(&x, &z).unwrap());
            assert!(!s.leq(&y, &x).unwrap(), "{x} < {y}");
        }
    }
}

#[test]
fn upper_and_lower_bounds_are_dual() {
    let mut r = rng(13);
    for s in random_spaces(40, 92_000) {
        for _ in 0..5 {
            let x = random_vector(s.dim(), &mut r, 3);
            let y = random_vector(s.dim(), &mut r, 3);
            let w = s.minimal_upper_bound(&x, &y, None).unwrap();
            assert!(s.is_minimal_upper_bound(&x, &y, &w).unwrap());
            assert!(s.is_maximal_lower_bound(&-&x, &-&y, &-&w).unwrap());
            let above = &w + &s.generators()[0];
            assert!(!s.is_minimal_upper_bound(&x, &y, &above).unwrap());
        }
    }
}

#[test]
fn mlb_respects_above() {
    let mut r = rng(14);
    for s in random_spaces(40, 93_000) {
        let x = random_vector(s.dim(), &mut r, 3);
        let y = random_vector(s.dim(), &mut r, 3);
        let low = &s.maximal_lower_bound(&x, &y, None).unwrap() - &random_positive(&s, &mut r, 2);
        let z = s.maximal_lower_bound(&x, &y, Some(&low)).unwrap();
        assert!(s.leq(&low, &z).unwrap());
        assert!(s.is_maximal_lower_bound(&x, &y, &z).unwrap());
        assert!(s.maximal_lower_bound(&x, &y, Some(&(&x + &s.generators()[0]))).is_err());
    }
}

#[test]
fn pairs_from_maximal_lower_bounds_are_d_disjoint() {
    let mut r = rng(15);
    let mut incomparable = 0;
    for s in random_spaces(125, 94_000) {
        for _ in 0..10 {
            let x = random_vector(s.dim(), &mut r, 3);
            let y = random_vector(s.dim(), &mut r, 3);
            if s.leq(&x, &y).unwrap() || s.leq(&y, &x).unwrap() {
                continue;
            }
            let p = s.make_d_disjoint_pair(&x, &y).unwrap();
            assert!(s.d_disjoint(&p.u, &p.v).unwrap().result);
            assert_eq!(&p.u - &p.v, &x - &y);
            incomparable += 1;
        }
    }
    assert!(incomparable >= 500, "only {incomparable} incomparable pairs");
}

#[test]
fn sup_scaling_matches_grid_sweep() {
    const DEN: i64 = 12;
    let mut r = rng(16);
    for s in corpus() {
        for g in s.generators() {
            let x = random_positive(&s, &mut r, 3);
            let c = s.sup_scaling(g, &x).unwrap();
            assert!(s.member(&(&x - &g.scale(&c))));
            let bracket = oracle_sup_scaling(&s, g, &x, DEN, 20 * DEN).unwrap();
            let floor = (&c * int(DEN)).floor() / int(DEN);
            assert_eq!(bracket, floor, "a = {g}, x = {x}, sup = {c}");
        }
    }
}

#[test]
fn rays_are_atoms_and_sums_are_not() {
    for s in corpus() {
        let gens = s.generators();
        for g in gens {
            assert!(s.is_atom(g).unwrap());
            assert!(s.is_atom(&g.scale(&ratio(7, 3))).unwrap());
        }
        let sum = &gens[0] + &gens[1];
        assert!(!s.is_atom(&sum).unwrap());
        assert!(s.d_disjoint_witness_below(&sum).unwrap().is_some());
    }
}

#[test]
fn zero_is_disjoint_from_everything() {
    let mut r = rng(17);
    for s in corpus() {
        let x = random_positive(&s, &mut r, 3);
        let zero = QVector::zeros(s.dim());
        assert!(s.d_disjoint(&x, &zero).unwrap().result);
        assert!(s.sym_interval_disjoint(&zero, &x).unwrap().result);
        assert!(s.perp(&x, &zero).unwrap().result);
        assert!(!s.d_disjoint(&x, &x).unwrap().result);
    }
}
