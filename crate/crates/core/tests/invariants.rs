mod common;

use common::{corpus_fans, int, rat};
use num_traits::{One, Zero};
use proptest::prelude::*;
use semiample::catalog::{anticanonical_polytope, p11222, p11222_crepant, projective_plane, projective_space};
use semiample::coxring::{fermat, CoxRing, GradedPolynomial};
use semiample::divisor::TorusInvariantDivisor;
use semiample::hodge::{h21_batyrev, subdivision_counts, triangulation_helper};
use semiample::poly::Polynomial;
use semiample::polytope::vertices_from_inequalities;
use semiample::residue::{c_ab, TraceForm};
use semiample::threefold::SemiampleThreefold;
use semiample::Rat;

fn cartier_case() -> impl Strategy<Value = (usize, Vec<i64>)> {
    let n = corpus_fans().len();
    (0..n, proptest::collection::vec(-1i64..=3, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn divisor_invariants((k, raw) in cartier_case()) {
        let fans = corpus_fans();
        let fan = &fans[k].1;
        let coeffs: Vec<_> = raw[..fan.rays().len()].iter().map(|&x| int(x)).collect();
        let d = TorusInvariantDivisor::new(fan, coeffs).unwrap();
        prop_assume!(d.is_cartier().unwrap());
        prop_assert_eq!(d.nakai_globally_generated().unwrap(), d.is_globally_generated().unwrap());
        prop_assert_eq!(d.nakai_ample().unwrap(), d.is_strictly_convex().unwrap());
        if d.is_globally_generated().unwrap() {
            // (D^d) as d!·vol(Δ_D) and as the top intersection number
            let p = d.section_polytope().unwrap();
            let vol = if p.is_full_dimensional() { p.normalized_volume() } else { Rat::zero() };
            prop_assert_eq!(d.top_self_intersection().unwrap(), vol.clone());
            // semiample ⇔ (D^d) > 0 and every wall number ≥ 0
            let walls_ok = d.wall_intersections().unwrap().iter().all(|w| w.value >= int(0));
            prop_assert_eq!(d.is_semiample().unwrap(), vol > Rat::zero() && walls_ok);
        }
        if d.is_semiample().unwrap() {
            let sd = d.sigma_d().unwrap();
            prop_assert!(fan.is_refinement(&sd.fan));
            prop_assert!(d.pushforward(&sd.fan).unwrap().nakai_ample().unwrap());
        }
    }
}

#[test]
fn graded_piece_dimension_is_a_lattice_point_count() {
    for (name, fan) in corpus_fans() {
        let ring = CoxRing::new(&fan).unwrap();
        for b in [vec![1i64; fan.rays().len()], (0..fan.rays().len()).map(|i| (i % 3) as i64).collect()] {
            let beta = ring.class_of_i64(&b);
            let count = ring.polytope(&beta).unwrap().lattice_points().len();
            assert_eq!(ring.dim_of(&beta).unwrap(), count, "{name} {b:?}");
        }
    }
}

#[test]
fn j0_is_contained_in_j1() {
    let ring = CoxRing::new(&projective_space(3)).unwrap();
    let f = ring.homogeneous(fermat(4, 4), None).unwrap();
    for a in 1..3 {
        let deg = ring.combine(&[(a + 1, &f.degree), (-1, &ring.beta0())]);
        let j0 = ring.j0_graded_piece(&f, &deg).unwrap();
        let j1 = ring.j1_graded_piece(&f, &deg).unwrap();
        for g in j0.reduced_basis() {
            assert!(j1.contains(&g).unwrap());
        }
        assert!(j0.dim() <= j1.dim());
    }
}

fn level(ring: &CoxRing, f: &GradedPolynomial, a: i64, terms: &[(Vec<u32>, i64)]) -> GradedPolynomial {
    let deg = ring.combine(&[(a + 1, &f.degree), (-1, &ring.beta0())]);
    let p = Polynomial::from_terms(ring.nvars(), terms.iter().map(|(e, c)| (e.clone(), rat(*c)))).unwrap();
    GradedPolynomial { poly: p, degree: deg }
}

#[test]
fn cup_pair_is_bilinear_and_kills_j1_in_both_slots() {
    let ring = CoxRing::new(&projective_space(3)).unwrap();
    let f = ring.homogeneous(fermat(4, 4), None).unwrap();
    let tf = TraceForm::new(&ring, &f).unwrap();
    let a1 = level(&ring, &f, 1, &[(vec![1, 1, 1, 1], 1), (vec![2, 2, 0, 0], 3)]);
    let a2 = level(&ring, &f, 1, &[(vec![2, 1, 1, 0], -2), (vec![1, 1, 1, 1], 5)]);
    let b = level(&ring, &f, 1, &[(vec![2, 2, 0, 0], 1), (vec![1, 1, 1, 1], -1), (vec![0, 2, 1, 1], 4)]);
    let two = rat(2);
    let sum = GradedPolynomial { poly: a1.poly.scale(&two).add(&a2.poly), degree: a1.degree.clone() };
    let lhs = tf.cup_pair(&sum, 1, &b, 1).unwrap().rational;
    let rhs = two * tf.cup_pair(&a1, 1, &b, 1).unwrap().rational + tf.cup_pair(&a2, 1, &b, 1).unwrap().rational;
    assert_eq!(lhs, rhs);

    let j1 = ring.j1_graded_piece(&f, &b.degree).unwrap().reduced_basis();
    assert!(!j1.is_empty());
    for g in &j1 {
        let g = GradedPolynomial { poly: g.clone(), degree: b.degree.clone() };
        assert!(tf.cup_pair(&a1, 1, &g, 1).unwrap().rational.is_zero());
        assert!(tf.cup_pair(&g, 1, &a1, 1).unwrap().rational.is_zero());
    }
}

#[test]
fn swapping_levels_scales_by_the_constant_ratio() {
    let ring = CoxRing::new(&projective_space(4)).unwrap();
    let f = ring.homogeneous(fermat(5, 5), None).unwrap();
    let tf = TraceForm::new(&ring, &f).unwrap();
    let g12 = tf.gram(1, 2).unwrap();
    let g21 = tf.gram(2, 1).unwrap();
    let (c12, c21) = (c_ab(1, 2, 4), c_ab(2, 1, 4));
    for i in 0..g12.len() {
        for j in 0..g12[i].len() {
            assert_eq!(&g12[i][j] * &c21, &g21[j][i] * &c12);
        }
    }
    let g03 = tf.gram(0, 3).unwrap();
    assert!(!g03[0][0].is_zero());
}

#[test]
fn a1_counts_add_up_to_the_rays() {
    for fan in [projective_space(4), p11222()] {
        let delta = vertices_from_inequalities(&anticanonical_polytope(&fan)).unwrap();
        let helper = triangulation_helper(&delta.dual_polytope().unwrap()).unwrap();
        let counts = subdivision_counts(&helper, &delta).unwrap();
        assert_eq!(counts.a1.iter().sum::<usize>(), helper.rays().len());
    }
}

#[test]
fn batyrev_matches_the_threefold_pipeline() {
    let crepant = p11222_crepant();
    let ring = CoxRing::new(&crepant).unwrap();
    let terms: Vec<(Vec<u32>, Rat)> = [[8, 0, 0, 0, 0, 4], [0, 8, 0, 0, 0, 4], [0, 0, 4, 0, 0, 0], [0, 0, 0, 4, 0, 0], [0, 0, 0, 0, 4, 0]]
        .iter()
        .map(|e| (e.to_vec(), Rat::one()))
        .collect();
    let f = ring.homogeneous(Polynomial::from_terms(6, terms).unwrap(), None).unwrap();
    let h = SemiampleThreefold::new(&ring, &f).unwrap().hodge_numbers().unwrap();
    let delta = vertices_from_inequalities(&anticanonical_polytope(&p11222())).unwrap();
    assert_eq!(int(h[1] as i64), h21_batyrev(&delta).unwrap());
    assert_eq!(h[1], h[2]);

    let p4 = projective_space(4);
    let ring = CoxRing::new(&p4).unwrap();
    let f = ring.homogeneous(fermat(5, 5), None).unwrap();
    let h = SemiampleThreefold::new(&ring, &f).unwrap().hodge_numbers().unwrap();
    let delta = vertices_from_inequalities(&anticanonical_polytope(&p4)).unwrap();
    assert_eq!(int(h[1] as i64), h21_batyrev(&delta).unwrap());
}

#[test]
fn interior_points_match_r1_at_the_bottom_level() {
    let ring = CoxRing::new(&projective_plane()).unwrap();
    let f = ring.homogeneous(fermat(3, 3), None).unwrap();
    let deg = ring.combine(&[(1, &f.degree), (-1, &ring.beta0())]);
    let interior = ring.polytope(&f.degree).unwrap().relative_interior_points().len();
    assert_eq!(ring.r1_dim(&f, &deg).unwrap(), interior);
}
