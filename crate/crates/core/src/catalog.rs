//! Small named fans and polytopes used by tests, fixtures and the CLI.

use itertools::Itertools;

use crate::fan::Fan;
use crate::lattice::LatticeVector;
use crate::polytope::{HPolytope, Inequality, LatticePolytope};
use crate::{Int, Rat};

fn unit(d: usize, i: usize) -> LatticeVector {
    let mut v = vec![0i64; d];
    v[i] = 1;
    LatticeVector::from_i64(&v)
}

fn all_but_one(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|skip| (0..n).filter(|&i| i != skip).collect()).collect()
}

/// `P^d` with rays `e_1, …, e_d, −Σ e_i`.
pub fn projective_space(d: usize) -> Fan {
    let mut rays: Vec<LatticeVector> = (0..d).map(|i| unit(d, i)).collect();
    rays.push(LatticeVector::from_i64(&vec![-1; d]));
    Fan::new(d, rays, all_but_one(d + 1)).expect("projective space fan")
}

pub fn projective_line() -> Fan {
    projective_space(1)
}

pub fn projective_plane() -> Fan {
    projective_space(2)
}

/// Weighted projective space with rays `e_1, …, e_d` and `e_0` fixed by
/// `w_0 e_0 + Σ w_i e_i = 0`; requires `w_0 = 1`.
pub fn weighted_projective_space(weights: &[i64]) -> Fan {
    assert_eq!(weights[0], 1, "first weight must be 1");
    let d = weights.len() - 1;
    let e0: Vec<i64> = weights[1..].iter().map(|w| -w).collect();
    let mut rays = vec![LatticeVector::from_i64(&e0)];
    rays.extend((0..d).map(|i| unit(d, i)));
    Fan::new(d, rays, all_but_one(d + 1)).expect("weighted projective fan")
}

/// Blow-up of the projective plane at a torus-fixed point: rays
/// `(1,0), (0,1), (−1,−1), (1,1)`.
pub fn blowup_plane() -> Fan {
    Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]], &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]])
        .expect("blow-up fan")
}

/// Product of projective spaces `P^{d_1} × … × P^{d_k}`.
pub fn product_of_projective_spaces(dims: &[usize]) -> Fan {
    let d: usize = dims.iter().sum();
    let mut rays = Vec::new();
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut offset = 0;
    for &di in dims {
        let start = rays.len();
        for i in 0..di {
            rays.push(unit(d, offset + i));
        }
        let mut v = vec![0i64; d];
        for x in &mut v[offset..offset + di] {
            *x = -1;
        }
        rays.push(LatticeVector::from_i64(&v));
        blocks.push(all_but_one(di + 1).into_iter().map(|c| c.into_iter().map(|i| start + i).collect()).collect());
        offset += di;
    }
    let cones = blocks
        .iter()
        .multi_cartesian_product()
        .map(|parts| parts.into_iter().flatten().copied().collect())
        .collect();
    Fan::new(d, rays, cones).expect("product fan")
}

/// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (−1,a), (0,−1)`.
pub fn hirzebruch(a: i64) -> Fan {
    Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, a], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]])
        .expect("Hirzebruch fan")
}

/// Blow-up of `P^3` at the fixed point of the cone spanned by `e_1, e_2, e_3`.
pub fn blowup_p3() -> Fan {
    Fan::from_i64(
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1], &[1, 1, 1]],
        &[&[0, 1, 4], &[0, 2, 4], &[1, 2, 4], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
    .expect("blow-up of P^3")
}

/// `P(1,1,2,2,2)`: rays `e_0 = (−1,−2,−2,−2)` and the unit vectors `e_1..e_4`.
pub fn p11222() -> Fan {
    weighted_projective_space(&[1, 1, 2, 2, 2])
}

/// Crepant resolution of `P(1,1,2,2,2)`: the 2-cone spanned by `e_0` and
/// `e_1` is subdivided by the ray `e_5 = (0,−1,−1,−1)`.
pub fn p11222_crepant() -> Fan {
    let base = p11222();
    let mut rays = base.rays().to_vec();
    rays.push(LatticeVector::from_i64(&[0, -1, -1, -1]));
    let mut cones = Vec::new();
    for c in base.max_cones() {
        if c.contains(&0) && c.contains(&1) {
            for drop in [0, 1] {
                let mut split: Vec<usize> = c.iter().copied().filter(|&i| i != drop).collect();
                split.push(5);
                cones.push(split);
            }
        } else {
            cones.push(c.clone());
        }
    }
    Fan::new(4, rays, cones).expect("crepant resolution fan")
}

/// `{m : ⟨m, e_i⟩ ≥ −1}` for a fan's rays: the anticanonical polytope.
pub fn anticanonical_polytope(fan: &Fan) -> HPolytope {
    let ineqs = fan.rays().iter().map(|e| Inequality::new(e.clone(), Int::from(-1))).collect();
    HPolytope::new(fan.dim(), ineqs).expect("anticanonical system")
}

/// The seven-dimensional system `z_i ≥ −1` together with
/// `−2z₁ − 2z₂ − 2z₃ − 2z₄ − 3z₅ − 3z₆ − 3z₇ ≥ −1`.
pub fn weighted_seven_fold_system() -> HPolytope {
    let mut ineqs: Vec<Inequality> = (0..7).map(|i| Inequality::new(unit(7, i), Int::from(-1))).collect();
    ineqs.push(Inequality::from_i64(&[-2, -2, -2, -2, -3, -3, -3], -1));
    HPolytope::new(7, ineqs).expect("seven-dimensional system")
}

/// `conv(±e_i)`.
pub fn cross_polytope(d: usize) -> LatticePolytope {
    let pts: Vec<Vec<Rat>> = (0..d)
        .flat_map(|i| {
            [1i64, -1].into_iter().map(move |s| {
                (0..d).map(|j| Rat::from_integer(Int::from(if i == j { s } else { 0 }))).collect()
            })
        })
        .collect();
    LatticePolytope::from_points(d, &pts).expect("cross-polytope")
}

/// `[−1, 1]^d` in H-representation.
pub fn cube_system(d: usize) -> HPolytope {
    let ineqs = (0..d)
        .flat_map(|i| {
            let u = unit(d, i);
            [Inequality::new(u.clone(), Int::from(-1)), Inequality::new(u.scale(&Int::from(-1)), Int::from(-1))]
        })
        .collect();
    HPolytope::new(d, ineqs).expect("cube system")
}
