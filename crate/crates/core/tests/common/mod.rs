//! Test-side oracles and generators, written against raw data rather than the
//! library's own algorithms.
#![allow(dead_code)]

use complete_ideals::{Cycle, DualGraph, MonomialIdeal};
use rand::Rng;

/// `Y·W` straight from self-intersections and the edge list.
pub fn product_oracle(g: &DualGraph, y: &[i64], w: &[i64]) -> i64 {
    let mut total = 0;
    for (i, &s) in g.self_ints().iter().enumerate() {
        total += s * y[i] * w[i];
    }
    for [a, b] in g.edges() {
        total += y[*a] * w[*b] + y[*b] * w[*a];
    }
    total
}

/// `K·Y` by adjunction, without solving for `K`.
pub fn canonical_product_oracle(g: &DualGraph, y: &[i64]) -> i64 {
    g.self_ints().iter().zip(y).map(|(s, c)| (-s - 2) * c).sum()
}

pub fn genus_oracle(g: &DualGraph, y: &[i64]) -> i64 {
    let twice = product_oracle(g, y, y) + canonical_product_oracle(g, y);
    assert_eq!(twice.rem_euclid(2), 0, "Y^2 + KY is even");
    twice / 2 + 1
}

pub fn is_anti_nef_oracle(g: &DualGraph, z: &[i64]) -> bool {
    let n = g.num_vertices();
    z.iter().all(|&c| c >= 0)
        && z.iter().any(|&c| c > 0)
        && (0..n).all(|i| {
            let mut unit = vec![0; n];
            unit[i] = 1;
            product_oracle(g, z, &unit) <= 0
        })
}

/// Every vector in `[0, max]^n`, lexicographic.
pub fn boxed_vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// All anti-nef cycles with coefficients at most `max`.
pub fn anti_nef_cycles(g: &DualGraph, max: i64) -> Vec<Cycle> {
    boxed_vectors(g.num_vertices(), max)
        .into_iter()
        .filter(|v| is_anti_nef_oracle(g, v))
        .map(Cycle::new)
        .collect()
}

/// Random tree with weights in `[-5, -2]`; retried until negative definite.
pub fn random_tree<R: Rng>(rng: &mut R, max_vertices: usize) -> DualGraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let weights: Vec<i64> = (0..n).map(|_| -rng.gen_range(2..=5)).collect();
        let edges: Vec<[usize; 2]> = (1..n).map(|i| [rng.gen_range(0..i), i]).collect();
        if let Ok(g) = DualGraph::from_parts(&weights, &edges) {
            return g;
        }
    }
}

/// Random rational graph: a random tree accepted only when rational.
pub fn random_rational_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> DualGraph {
    loop {
        let g = random_tree(rng, max_vertices);
        if g.is_rational().unwrap() {
            return g;
        }
    }
}

/// Exponents in `[0, bound)^d`, lexicographic.
pub fn lattice_box(d: usize, bound: u32) -> Vec<Vec<u32>> {
    boxed_vectors(d, i64::from(bound) - 1)
        .into_iter()
        .map(|v| v.into_iter().map(|c| c as u32).collect())
        .collect()
}

/// Newton polyhedron membership by supporting weights. Every facet of the
/// polyhedron is spanned by differences of generators and coordinate
/// directions, so the normals built from those (kept when nonnegative)
/// include all facet normals and decide membership exactly.
pub fn newton_membership_oracle(gens: &[Vec<u32>], v: &[u32]) -> bool {
    let d = v.len();
    assert!(d == 2 || d == 3, "oracle covers d = 2, 3");
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for a in gens {
        for b in gens {
            dirs.push(a.iter().zip(b).map(|(&x, &y)| i64::from(x) - i64::from(y)).collect());
        }
    }
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        dirs.push(e);
    }
    let mut normals: Vec<Vec<i64>> = Vec::new();
    if d == 2 {
        normals.extend(dirs.iter().map(|u| vec![u[1], -u[0]]));
    } else {
        for u in &dirs {
            for w in &dirs {
                normals.push(vec![u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]]);
            }
        }
    }
    for mut w in normals {
        if w.iter().all(|&c| c <= 0) {
            w.iter_mut().for_each(|c| *c = -*c);
        }
        if w.iter().any(|&c| c < 0) || w.iter().all(|&c| c == 0) {
            continue;
        }
        let dot = |p: &[u32]| -> i64 { p.iter().zip(&w).map(|(&a, &b)| i64::from(a) * b).sum() };
        let floor = gens.iter().map(|g| dot(g)).min().unwrap();
        if dot(v) < floor {
            return false;
        }
    }
    true
}

/// `x^{k v} ∈ I^k` for some `k <= k_max`; sufficient for integrality.
pub fn power_membership(ideal: &MonomialIdeal, v: &[u32], k_max: u32) -> bool {
    let mut power = ideal.clone();
    for k in 1..=k_max {
        let scaled: Vec<u32> = v.iter().map(|c| c * k).collect();
        if power.contains(&scaled) {
            return true;
        }
        power = power.product(ideal).unwrap();
    }
    false
}

/// Colength by counting lattice points of a box outside the ideal.
pub fn colength_oracle(ideal: &MonomialIdeal) -> u64 {
    let bound = 1 + ideal.gens().iter().flatten().copied().max().unwrap();
    lattice_box(ideal.dim(), bound).iter().filter(|v| !ideal.contains(v)).count() as u64
}

/// Random m-primary monomial ideal in `d` variables with exponents below
/// `bound`.
pub fn random_primary_ideal<R: Rng>(rng: &mut R, d: usize, bound: u32) -> MonomialIdeal {
    let mut gens = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = rng.gen_range(1..=bound);
        gens.push(e);
    }
    for _ in 0..rng.gen_range(0..=4) {
        gens.push((0..d).map(|_| rng.gen_range(0..bound)).collect());
    }
    gens.retain(|g: &Vec<u32>| g.iter().any(|&c| c > 0));
    MonomialIdeal::new(d, gens).unwrap()
}

/// Property-test settings; integration tests have no crate root for proptest
/// to file regressions beside, so persistence is off.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}
