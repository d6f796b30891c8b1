//! Exact membership in Newton polyhedra `conv(P) + R^d_{>=0}`.
//!
//! In the plane the polyhedron is cut out by the edges of the lower convex
//! hull of the minimal points. In higher dimension membership is an exact
//! rational linear feasibility problem, solved by phase-one simplex with
//! Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Whether `v` lies in the Newton polyhedron of the nonempty point set `points`.
pub fn in_newton_polyhedron(points: &[Vec<u32>], v: &[u32]) -> bool {
    assert!(!points.is_empty(), "Newton polyhedron of an empty set");
    if points.iter().any(|p| divides(p, v)) {
        return true;
    }
    let degree: u64 = v.iter().map(|&e| u64::from(e)).sum();
    let min_degree = points.iter().map(|p| p.iter().map(|&e| u64::from(e)).sum::<u64>()).min().unwrap();
    if degree < min_degree {
        return false;
    }
    if v.len() == 2 {
        in_polyhedron_planar(points, v)
    } else {
        in_polyhedron_lp(points, v)
    }
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Lower-left convex hull of a planar point set: vertices of its Newton
/// polygon ordered by increasing `x`.
pub fn planar_hull(points: &[Vec<u32>]) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = points.iter().map(|p| [i64::from(p[0]), i64::from(p[1])]).collect();
    // minimal points only: for each x keep the lowest y, then drop points
    // dominated by an earlier (smaller x) point
    pts.sort();
    let mut minimal: Vec<[i64; 2]> = Vec::new();
    for p in pts {
        if minimal.last().is_none_or(|q| p[1] < q[1]) {
            minimal.push(p);
        }
    }
    let mut hull: Vec<[i64; 2]> = Vec::new();
    for p in minimal {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

pub fn in_polyhedron_planar(points: &[Vec<u32>], v: &[u32]) -> bool {
    let hull = planar_hull(points);
    let v = [i64::from(v[0]), i64::from(v[1])];
    let first = hull[0];
    let last = hull[hull.len() - 1];
    v[0] >= first[0]
        && v[1] >= last[1]
        && hull.windows(2).all(|w| cross(w[0], w[1], v) >= 0)
}

/// Membership by deciding feasibility of `sum l_p p + s = v`, `sum l_p = 1`,
/// `l, s >= 0`.
pub fn in_polyhedron_lp(points: &[Vec<u32>], v: &[u32]) -> bool {
    let d = v.len();
    let m = points.len();
    let int = |x: u32| BigRational::from_integer(BigInt::from(x));
    // columns: l_0..l_{m-1}, s_0..s_{d-1}
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row: Vec<BigRational> = points.iter().map(|p| int(p[i])).collect();
        row.extend((0..d).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        rows.push(row);
        rhs.push(int(v[i]));
    }
    let mut last = vec![BigRational::one(); m];
    last.extend((0..d).map(|_| BigRational::zero()));
    rows.push(last);
    rhs.push(BigRational::one());
    feasible(rows, rhs)
}

/// Phase-one simplex: is `{x >= 0 : A x = b}` nonempty? Requires `b >= 0`.
pub(crate) fn feasible(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    // tableau columns: originals, one artificial per row, then rhs
    let width = cols + rows + 1;
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(r, (mut row, rhs))| {
            row.extend((0..rows).map(|k| if k == r { BigRational::one() } else { BigRational::zero() }));
            row.push(rhs);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..cols {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..cols + rows).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so some row always qualifies
        let (r, _) = leave.expect("phase-one objective is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..rows {
            if k != r && !t[k][enter].is_zero() {
                let f = t[k][enter].clone();
                for j in 0..width {
                    let delta = &f * &t[r][j];
                    t[k][j] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..width {
                let delta = &f * &t[r][j];
                cost[j] -= delta;
            }
        }
        basis[r] = enter;
    }
    // cost[rhs] holds minus the optimal sum of artificials
    cost[width - 1].is_zero()
}
