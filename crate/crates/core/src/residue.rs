//! Determinant constants `c_I^β`, the toric Jacobian and toric residue, the
//! cup-Jacobian `J`, the trace form `η` and the cup-product pairing on
//! `R_1(f)`.
//!
//! Normalization: `η(H)` is the constant `c` with
//! `H·x_1⋯x_n − c·J ∈ J_0(f)` times `d!·vol(Δ_β)`. Pairing values carry the
//! factor `(2π√−1)^d` symbolically.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::coxring::{CoxRing, DegreeClass, GradedPolynomial, GradedSubspace, Nondegeneracy};
use crate::error::{Error, Result};
use crate::linalg::{det, Matrix};
use crate::poly::{poly_det, Polynomial};
use crate::util::factorial;
use crate::{Int, Rat};

const RESIDUE: &str = "toric residue normalized by Res(J_F) = d!vol";
const PAIRING: &str = "cup product as a trace of A·B against the cup-Jacobian";

/// `r · (2π√−1)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingValue {
    pub rational: Rat,
    pub two_pi_i_exponent: u32,
}

fn check_index(ring: &CoxRing, index: &[usize], len: usize) -> Result<()> {
    if index.len() != len || index.iter().any(|&i| i >= ring.nvars()) {
        return Err(Error::validation(format!("index set {index:?} must have {len} entries below {}", ring.nvars())));
    }
    Ok(())
}

/// `det(⟨m_j, e_{i_k}⟩)` for an ordered `d`-subset.
pub fn det_e(ring: &CoxRing, index: &[usize]) -> Result<Int> {
    let d = ring.dim();
    check_index(ring, index, d)?;
    let rows: Vec<Vec<Int>> = (0..d).map(|j| index.iter().map(|&i| ring.fan().rays()[i][j].clone()).collect()).collect();
    Ok(det(&Matrix::from_rows(&rows, d)))
}

/// `det` of the `(d+1) × (d+1)` matrix with first row `(b_{i_0}, …, b_{i_d})`
/// and remaining rows `⟨m_j, e_{i_k}⟩`.
pub fn c_i_beta(ring: &CoxRing, b: &[Int], index: &[usize]) -> Result<Int> {
    let d = ring.dim();
    check_index(ring, index, d + 1)?;
    if b.len() != ring.nvars() {
        return Err(Error::validation("degree vector has the wrong length"));
    }
    let mut rows = vec![index.iter().map(|&i| b[i].clone()).collect::<Vec<_>>()];
    rows.extend((0..d).map(|j| index.iter().map(|&i| ring.fan().rays()[i][j].clone()).collect()));
    Ok(det(&Matrix::from_rows(&rows, d + 1)))
}

pub fn c_i(ring: &CoxRing, beta: &DegreeClass, index: &[usize]) -> Result<Int> {
    c_i_beta(ring, beta.representative(), index)
}

/// Increasing `(d+1)`-subsets with `c_I^β ≠ 0`, in lexicographic order.
pub fn admissible_index_sets(ring: &CoxRing, beta: &DegreeClass) -> Vec<Vec<usize>> {
    (0..ring.nvars())
        .combinations(ring.dim() + 1)
        .filter(|i| !c_i(ring, beta, i).expect("well-formed index set").is_zero())
        .collect()
}

fn first_admissible(ring: &CoxRing, beta: &DegreeClass) -> Result<Vec<usize>> {
    admissible_index_sets(ring, beta).into_iter().next().ok_or_else(|| {
        if beta == &ring.zero_class() {
            Error::precondition("the degree is zero", RESIDUE)
        } else {
            Error::inconsistency("no index set with nonzero constant for a nonzero class")
        }
    })
}

fn common_degree(ring: &CoxRing, polys: &[GradedPolynomial]) -> Result<DegreeClass> {
    if polys.len() != ring.dim() + 1 {
        return Err(Error::validation(format!("expected {} polynomials", ring.dim() + 1)));
    }
    let beta = polys[0].degree.clone();
    if polys.iter().any(|p| p.degree != beta) {
        return Err(Error::validation("the polynomials have different degrees"));
    }
    Ok(beta)
}

/// `ρ = (d+1)β − β_0`.
pub fn residue_degree(ring: &CoxRing, beta: &DegreeClass) -> DegreeClass {
    ring.combine(&[(ring.dim() as i64 + 1, beta), (-1, &ring.beta0())])
}

/// `J_F = det(∂F_j/∂x_{i_k}) / (c_I^β · x̂_I)` for a given admissible `I`.
pub fn toric_jacobian_with(ring: &CoxRing, f: &[GradedPolynomial], index: &[usize]) -> Result<GradedPolynomial> {
    let beta = common_degree(ring, f)?;
    let c = c_i(ring, &beta, index)?;
    if c.is_zero() {
        return Err(Error::validation(format!("index set {index:?} has vanishing constant")));
    }
    let n = ring.nvars();
    let m: Vec<Vec<Polynomial>> = f.iter().map(|fj| index.iter().map(|&i| fj.poly.derivative(i)).collect()).collect();
    let d = poly_det(&m, n);
    let hat: Vec<u32> = (0..n).map(|i| u32::from(!index.contains(&i))).collect();
    let q = d
        .div_monomial(&hat)
        .ok_or_else(|| Error::inconsistency("Jacobian determinant is not divisible by the complementary variables"))?;
    let poly = q.scale(&Rat::from_integer(c).recip());
    ring.homogeneous(poly, Some(residue_degree(ring, &beta)))
}

pub fn toric_jacobian(ring: &CoxRing, f: &[GradedPolynomial]) -> Result<GradedPolynomial> {
    let beta = common_degree(ring, f)?;
    toric_jacobian_with(ring, f, &first_admissible(ring, &beta)?)
}

/// `d!·vol(Δ_β)`.
pub fn degree_volume(ring: &CoxRing, beta: &DegreeClass) -> Result<Rat> {
    let p = ring.polytope(beta)?;
    if !p.is_full_dimensional() {
        return Ok(Rat::zero());
    }
    Ok(p.normalized_volume())
}

/// The unique `c` with `h − c·j ∈ span`, given `span` of codimension one
/// not containing `j`.
fn coset_coefficient(span: &GradedSubspace, j: &Polynomial, h: &Polynomial) -> Result<Rat> {
    let rj = span.reduce_sparse(j)?;
    let rh = span.reduce_sparse(h)?;
    let Some((col, pivot)) = rj.first() else {
        return Err(Error::precondition("the Jacobian lies in the ideal", RESIDUE));
    };
    let c = rh.iter().find(|(i, _)| i == col).map(|(_, v)| v / pivot).unwrap_or_else(Rat::zero);
    let scaled: Vec<(usize, Rat)> = rj.iter().map(|(i, v)| (*i, v * &c)).filter(|(_, v)| !v.is_zero()).collect();
    if scaled != rh {
        return Err(Error::inconsistency("quotient is not spanned by the Jacobian"));
    }
    Ok(c)
}

/// `Res_F(H) = c · d!vol(Δ_β)` where `H − c·J_F ∈ ⟨F_0, …, F_d⟩_ρ`.
pub fn toric_residue(ring: &CoxRing, f: &[GradedPolynomial], h: &GradedPolynomial) -> Result<Rat> {
    let beta = common_degree(ring, f)?;
    let rho = residue_degree(ring, &beta);
    if h.degree != rho {
        return Err(Error::validation("the numerator does not have degree (d+1)β − β₀"));
    }
    if !ring.is_semiample(&beta)? {
        return Err(Error::precondition("the degree is not semiample", RESIDUE));
    }
    let span = ring.ideal_graded_piece(f, &rho)?;
    if span.codim() != 1 {
        return Err(Error::precondition(
            format!("⟨F⟩ has codimension {} in degree ρ: F has common zeros or the certificate failed", span.codim()),
            RESIDUE,
        ));
    }
    let jac = toric_jacobian(ring, f)?;
    let c = coset_coefficient(&span, &jac.poly, &h.poly)?;
    Ok(c * degree_volume(ring, &beta)?)
}

/// `J = J_{F_I} / c_I^β` with `F_j = x_j ∂f/∂x_j`, `j ∈ I`.
pub fn cup_jacobian_with(ring: &CoxRing, f: &GradedPolynomial, index: &[usize]) -> Result<GradedPolynomial> {
    let partials = ring.weighted_partials(f);
    let fi: Vec<GradedPolynomial> = index.iter().map(|&i| partials[i].clone()).collect();
    let j = toric_jacobian_with(ring, &fi, index)?;
    let c = c_i(ring, &f.degree, index)?;
    Ok(GradedPolynomial { poly: j.poly.scale(&Rat::from_integer(c).recip()), degree: j.degree })
}

pub fn cup_jacobian(ring: &CoxRing, f: &GradedPolynomial) -> Result<GradedPolynomial> {
    cup_jacobian_with(ring, f, &first_admissible(ring, &f.degree)?)
}

/// `c_ab = (−1)^{a(a+1)/2 + b(b+1)/2 + a² + d − 1} / (a! b!)`.
pub fn c_ab(a: usize, b: usize, d: usize) -> Rat {
    let e = a * (a + 1) / 2 + b * (b + 1) / 2 + a * a + d - 1;
    let sign = if e.is_multiple_of(2) { Int::one() } else { -Int::one() };
    Rat::new(sign, factorial(a) * factorial(b))
}

/// The trace form `η` on `R_1(f)_{(d+1)β − 2β_0}` of a certified `f`.
#[derive(Clone, Debug)]
pub struct TraceForm<'r> {
    ring: &'r CoxRing,
    f: GradedPolynomial,
    top: DegreeClass,
    j0: GradedSubspace,
    jacobian: GradedPolynomial,
    volume: Rat,
}

impl<'r> TraceForm<'r> {
    pub fn new(ring: &'r CoxRing, f: &GradedPolynomial) -> Result<Self> {
        if ring.nondegeneracy_certificate(f)? != Nondegeneracy::CertifiedNondegenerate {
            return Err(Error::precondition("f is not certified nondegenerate", PAIRING));
        }
        let rho = residue_degree(ring, &f.degree);
        let j0 = ring.j0_graded_piece(f, &rho)?;
        if j0.codim() != 1 {
            return Err(Error::precondition(format!("J₀(f) has codimension {} in degree ρ", j0.codim()), PAIRING));
        }
        let jacobian = cup_jacobian(ring, f)?;
        if j0.contains(&jacobian.poly)? {
            return Err(Error::precondition("the cup-Jacobian lies in J₀(f)", PAIRING));
        }
        let top = ring.sub(&rho, &ring.beta0());
        let volume = degree_volume(ring, &f.degree)?;
        Ok(TraceForm { ring, f: f.clone(), top, j0, jacobian, volume })
    }

    pub fn polynomial(&self) -> &GradedPolynomial {
        &self.f
    }

    pub fn ring(&self) -> &CoxRing {
        self.ring
    }

    pub fn jacobian(&self) -> &GradedPolynomial {
        &self.jacobian
    }

    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    /// `(d+1)β − 2β_0`.
    pub fn top_degree(&self) -> &DegreeClass {
        &self.top
    }

    /// `η(H) = c·d!vol(Δ_β)` with `H·x_1⋯x_n − c·J ∈ J_0(f)`; zero off the top degree.
    pub fn eta(&self, h: &GradedPolynomial) -> Result<Rat> {
        if h.degree != self.top {
            return Ok(Rat::zero());
        }
        Ok(self.eta_unchecked(&h.poly)? * &self.volume)
    }

    fn eta_unchecked(&self, h: &Polynomial) -> Result<Rat> {
        let shifted = h.mul_monomial(&vec![1; self.ring.nvars()]);
        coset_coefficient(&self.j0, &self.jacobian.poly, &shifted)
    }

    fn level_degree(&self, a: usize) -> DegreeClass {
        self.ring.combine(&[(a as i64 + 1, &self.f.degree), (-1, &self.ring.beta0())])
    }

    /// `∫ A ∪ B = (−1)^d c_ab η(A·B)` for `A ∈ S_{(a+1)β−β_0}`, `B ∈ S_{(b+1)β−β_0}`, `a + b = d − 1`.
    pub fn cup_pair(&self, a_poly: &GradedPolynomial, a: usize, b_poly: &GradedPolynomial, b: usize) -> Result<PairingValue> {
        let d = self.ring.dim();
        if a + b + 1 != d {
            return Err(Error::validation(format!("levels {a} and {b} do not add up to {}", d - 1)));
        }
        if a_poly.degree != self.level_degree(a) || b_poly.degree != self.level_degree(b) {
            return Err(Error::validation("pairing arguments have the wrong degrees"));
        }
        let prod = GradedPolynomial { poly: a_poly.poly.mul(&b_poly.poly), degree: self.top.clone() };
        let sign = if d.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        Ok(PairingValue { rational: sign * c_ab(a, b, d) * self.eta(&prod)?, two_pi_i_exponent: d as u32 })
    }

    /// Coset basis of `R_1(f)` at level `a`, ordered lexicographically.
    pub fn r1_basis(&self, a: usize) -> Result<Vec<GradedPolynomial>> {
        let deg = self.level_degree(a);
        let j1 = self.ring.j1_graded_piece(&self.f, &deg)?;
        Ok(j1
            .quotient_monomials()
            .into_iter()
            .map(|e| GradedPolynomial { poly: Polynomial::monomial(e, Rat::one()), degree: deg.clone() })
            .collect())
    }

    /// Matrix of `∫ A_i ∪ B_j` over the `R_1` bases at levels `a` and `b`.
    pub fn gram(&self, a: usize, b: usize) -> Result<Vec<Vec<Rat>>> {
        use rayon::prelude::*;
        let left = self.r1_basis(a)?;
        let right = self.r1_basis(b)?;
        left.par_iter()
            .map(|x| right.iter().map(|y| Ok(self.cup_pair(x, a, y, b)?.rational)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{blowup_plane, product_of_projective_spaces, projective_line, projective_plane};
    use crate::coxring::fermat;
    use crate::util::rat;
    use proptest::prelude::*;

    fn graded(ring: &CoxRing, terms: &[(&[u32], i64)]) -> GradedPolynomial {
        let p = Polynomial::from_terms(ring.nvars(), terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap();
        ring.homogeneous(p, None).unwrap()
    }

    #[test]
    fn c_examples() {
        let l = CoxRing::new(&projective_line()).unwrap();
        assert_eq!(c_i_beta(&l, &[Int::from(2), Int::zero()], &[0, 1]).unwrap(), Int::from(-2));
        let p = CoxRing::new(&projective_plane()).unwrap();
        let three = [Int::from(3), Int::zero(), Int::zero()];
        assert_eq!(c_i_beta(&p, &three, &[0, 1, 2]).unwrap(), Int::from(3));
        assert_eq!(c_i_beta(&p, &three, &[0, 0, 2]).unwrap(), Int::zero());
        assert!(c_i_beta(&p, &three, &[0, 1]).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let l = CoxRing::new(&projective_line()).unwrap();
        let f = [graded(&l, &[(&[2, 0], 1)]), graded(&l, &[(&[0, 2], 1)])];
        let j = toric_jacobian(&l, &f).unwrap();
        assert_eq!(j.poly, Polynomial::monomial(vec![1, 1], rat(-2)));
        let p = CoxRing::new(&projective_plane()).unwrap();
        let cubes: Vec<GradedPolynomial> =
            [[3u32, 0, 0], [0, 3, 0], [0, 0, 3]].iter().map(|e| graded(&p, &[(e, 1)])).collect();
        let j = toric_jacobian(&p, &cubes).unwrap();
        assert_eq!(j.poly.terms().keys().collect::<Vec<_>>(), vec![&vec![2, 2, 2]]);
        let same = [cubes[0].clone(), cubes[0].clone(), cubes[1].clone()];
        assert!(toric_jacobian(&p, &same).unwrap().poly.is_zero());
    }

    #[test]
    fn residue_examples() {
        let l = CoxRing::new(&projective_line()).unwrap();
        let f = [graded(&l, &[(&[2, 0], 1)]), graded(&l, &[(&[0, 2], 1)])];
        let j = toric_jacobian(&l, &f).unwrap();
        assert_eq!(toric_residue(&l, &f, &j).unwrap(), rat(2));
        assert_eq!(toric_residue(&l, &f, &graded(&l, &[(&[1, 1], 1)])).unwrap(), rat(-1));
        assert_eq!(toric_residue(&l, &f, &graded(&l, &[(&[2, 0], 3)])).unwrap(), rat(0));
    }

    #[test]
    fn residue_of_jacobian_on_surfaces() {
        let p = CoxRing::new(&projective_plane()).unwrap();
        let f = [
            graded(&p, &[(&[2, 0, 0], 1), (&[0, 1, 1], 1)]),
            graded(&p, &[(&[0, 2, 0], 1), (&[1, 0, 1], 2)]),
            graded(&p, &[(&[0, 0, 2], 1), (&[1, 1, 0], -1)]),
        ];
        let j = toric_jacobian(&p, &f).unwrap();
        assert_eq!(toric_residue(&p, &f, &j).unwrap(), rat(4));
    }

    #[test]
    fn cup_jacobian_independent_of_index_set() {
        let r = CoxRing::new(&product_of_projective_spaces(&[1, 1])).unwrap();
        let beta = r.class_of_i64(&[2, 0, 2, 0]);
        let basis = r.monomial_basis(&beta).unwrap();
        let f = Polynomial::from_terms(4, basis.monomials.iter().enumerate().map(|(k, e)| (e.clone(), rat((k * k % 7) as i64 + 1)))).unwrap();
        let f = r.homogeneous(f, None).unwrap();
        let sets = admissible_index_sets(&r, &beta);
        assert!(sets.len() >= 2);
        let j0 = r.j0_graded_piece(&f, &residue_degree(&r, &beta)).unwrap();
        let first = cup_jacobian_with(&r, &f, &sets[0]).unwrap();
        for s in &sets[1..] {
            let other = cup_jacobian_with(&r, &f, s).unwrap();
            assert!(j0.contains(&first.poly.sub(&other.poly)).unwrap());
        }
    }

    #[test]
    fn elliptic_cubic_pairing() {
        let p = CoxRing::new(&projective_plane()).unwrap();
        let f = p.homogeneous(fermat(3, 3), None).unwrap();
        let t = TraceForm::new(&p, &f).unwrap();
        let one = graded(&p, &[(&[0, 0, 0], 1)]);
        let xyz = graded(&p, &[(&[1, 1, 1], 1)]);
        let v = t.cup_pair(&one, 0, &xyz, 1).unwrap();
        assert_ne!(v.rational, rat(0));
        assert_eq!(v.two_pi_i_exponent, 2);
        let w = t.cup_pair(&xyz, 1, &one, 0).unwrap();
        assert_eq!(w.rational, -v.rational.clone());
        // A in J_1 pairs to zero
        let x3 = graded(&p, &[(&[3, 0, 0], 1)]);
        assert_eq!(t.cup_pair(&one, 0, &x3, 1).unwrap().rational, rat(0));
        assert_eq!(t.eta(&one).unwrap(), rat(0));
    }

    #[test]
    fn c_ab_values() {
        assert_eq!(c_ab(0, 1, 2), rat(1));
        assert_eq!(c_ab(1, 0, 2), rat(-1));
        assert_eq!(c_ab(1, 2, 4), Rat::new(Int::from(1), Int::from(2)));
        for (a, b) in [(0, 3), (1, 2)] {
            assert_eq!(c_ab(a, b, 4), -c_ab(b, a, 4));
        }
    }

    fn random_poly(ring: &CoxRing, beta: &DegreeClass, coeffs: &[i64]) -> GradedPolynomial {
        let basis = ring.monomial_basis(beta).unwrap();
        let p = Polynomial::from_terms(
            ring.nvars(),
            basis.monomials.iter().zip(coeffs.iter().cycle()).map(|(e, c)| (e.clone(), rat(*c))),
        )
        .unwrap();
        GradedPolynomial { poly: p, degree: beta.clone() }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn euler_formula(b in prop::collection::vec(0i64..3, 4), coeffs in prop::collection::vec(-4i64..5, 1..12)) {
            let r = CoxRing::new(&blowup_plane()).unwrap();
            let beta = r.class_of_i64(&b);
            let f = random_poly(&r, &beta, &coeffs);
            for index in (0..4).combinations(3) {
                let c = c_i(&r, &beta, &index).unwrap();
                let mut rhs = Polynomial::zero(4);
                for (k, &ik) in index.iter().enumerate() {
                    let rest: Vec<usize> = index.iter().copied().filter(|&i| i != ik).collect();
                    let mut term = f.poly.euler_derivative(ik).scale(&Rat::from_integer(det_e(&r, &rest).unwrap()));
                    if k % 2 == 1 {
                        term = term.scale(&rat(-1));
                    }
                    rhs = rhs.add(&term);
                }
                prop_assert_eq!(f.poly.scale(&Rat::from_integer(c)), rhs);
            }
        }

        #[test]
        fn constant_is_representative_independent(b in prop::collection::vec(-3i64..4, 4), m in prop::collection::vec(-3i64..4, 2)) {
            let r = CoxRing::new(&blowup_plane()).unwrap();
            let shifted: Vec<Int> = b.iter().zip(r.fan().rays()).map(|(bi, e)| Int::from(*bi) + Int::from(m[0]) * &e[0] + Int::from(m[1]) * &e[1]).collect();
            let b: Vec<Int> = b.into_iter().map(Int::from).collect();
            for index in (0..4).combinations(3) {
                prop_assert_eq!(c_i_beta(&r, &b, &index).unwrap(), c_i_beta(&r, &shifted, &index).unwrap());
            }
        }

        #[test]
        fn second_euler_identity(b in prop::collection::vec(-3i64..4, 4), j in 0usize..4) {
            let r = CoxRing::new(&blowup_plane()).unwrap();
            let b: Vec<Int> = b.into_iter().map(Int::from).collect();
            for index in (0..4).combinations(3) {
                let mut total = c_i_beta(&r, &b, &index).unwrap() * &b[j];
                for (k, &ik) in index.iter().enumerate() {
                    let mut swapped = vec![j];
                    swapped.extend(index.iter().copied().filter(|&i| i != ik));
                    let term = c_i_beta(&r, &b, &swapped).unwrap() * &b[ik];
                    if k % 2 == 0 { total -= term } else { total += term }
                }
                prop_assert!(total.is_zero());
            }
        }
    }
}
