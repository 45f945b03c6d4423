//! Middle cohomology of a regular semiample hypersurface in a four-dimensional
//! toric variety: two-cone charts, face polynomials, the `H^3` decomposition
//! and the cup-product Gram matrix.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::coxring::{CoxRing, DegreeClass, GradedPolynomial, Nondegeneracy};
use crate::divisor::SigmaD;
use crate::error::{Error, Result};
use crate::fan::{ConeRef, Fan, Star};
use crate::lattice::{cone_multiplicity, gcd_all, LatticeFrame, LatticeVector};
use crate::poly::{Exponent, Polynomial};
use crate::residue::{PairingValue, TraceForm};
use crate::{Int, Rat};

const DECOMPOSITION: &str = "H^3 decomposition theorem for semiample threefolds";
const CUP: &str = "cup product theorem for semiample threefolds";

/// An interior ray `ρ_i` of a chart with its flanking cones
/// `σ′ = cone(left, ray)` and `σ″ = cone(ray, right)` of `Σ(2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorRay {
    pub ray: usize,
    pub left: usize,
    pub right: usize,
    pub mult_left: Int,
    pub mult_right: Int,
    /// `mult(σ′ + σ″)`.
    pub mult_outer: Int,
}

/// A cone `σ ∈ Σ_X(2)` with the rays of `Σ` subdividing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoConeChart {
    /// `σ` in ray indices of `Σ_X`.
    pub sigma: ConeRef,
    /// Boundary rays of `σ` as indices into `Σ`, in the order used for `interior`.
    pub boundary: (usize, usize),
    /// Interior rays ordered from `boundary.0` to `boundary.1`.
    pub interior: Vec<InteriorRay>,
}

impl TwoConeChart {
    /// `n(σ)`.
    pub fn n(&self) -> usize {
        self.interior.len()
    }

    /// Whether interior rays `i` and `j` (positions in `interior`) span a cone of `Σ(2)`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) == 1
    }
}

fn det2(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Every `σ ∈ Σ_X(2)` with its interior rays, flanking cones and multiplicities.
/// `sigma_x_rays[k]` is the index in `Σ` of the `k`-th ray of `Σ_X`.
pub fn two_cone_charts_with(sigma: &Fan, sigma_x: &Fan, sigma_x_rays: &[usize]) -> Result<Vec<TwoConeChart>> {
    let mut inside: BTreeMap<ConeRef, Vec<usize>> = BTreeMap::new();
    for r in 0..sigma.rays().len() {
        let c = sigma_x.smallest_containing_cone(sigma, &ConeRef { rays: vec![r], dim: 1 })?;
        if c.dim == 2 {
            inside.entry(c).or_default().push(r);
        }
    }
    let mut charts = Vec::new();
    for s in sigma_x.cones(2) {
        let (u, v) = (sigma_x_rays[s.rays[0]], sigma_x_rays[s.rays[1]]);
        let ru = sigma.rays()[u].coords().to_vec();
        let rv = sigma.rays()[v].coords().to_vec();
        let frame = LatticeFrame::new(sigma.dim(), &[ru.clone(), rv.clone()]);
        let plane = |x: &[Int]| frame.span_coords(x).expect("ray lies in the plane of its chart");
        let (pu, pv) = (plane(&ru), plane(&rv));
        let orient = det2(&pu, &pv).signum();
        let mut rays = inside.remove(&s).unwrap_or_default();
        let coords: BTreeMap<usize, Vec<Int>> = rays.iter().map(|&r| (r, plane(sigma.rays()[r].coords()))).collect();
        rays.sort_by(|a, b| {
            let d = det2(&coords[a], &coords[b]) * &orient;
            if d.is_positive() {
                std::cmp::Ordering::Less
            } else if d.is_negative() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        let mut chain = vec![u];
        chain.extend(&rays);
        chain.push(v);
        for w in chain.windows(2) {
            if sigma.cone_with_rays(w).is_none() {
                return Err(Error::inconsistency(format!("rays {} and {} of a chart do not span a cone of the fan", w[0], w[1])));
            }
        }
        let mult = |a: usize, b: usize| cone_multiplicity(&[sigma.rays()[a].clone(), sigma.rays()[b].clone()]);
        let mut interior = Vec::with_capacity(rays.len());
        for k in 1..chain.len() - 1 {
            let (left, ray, right) = (chain[k - 1], chain[k], chain[k + 1]);
            let ir = InteriorRay {
                ray,
                left,
                right,
                mult_left: mult(left, ray)?,
                mult_right: mult(ray, right)?,
                mult_outer: mult(left, right)?,
            };
            if !mult_identity_holds(sigma, &ir) {
                return Err(Error::inconsistency("multiplicity identity fails for an interior ray"));
            }
            interior.push(ir);
        }
        charts.push(TwoConeChart { sigma: s, boundary: (u, v), interior });
    }
    Ok(charts)
}

/// `mult(σ′+σ″)·e_i = mult(σ′)·e″ + mult(σ″)·e′`.
pub fn mult_identity_holds(sigma: &Fan, ir: &InteriorRay) -> bool {
    let e = |r: usize| sigma.rays()[r].coords().to_vec();
    let (ei, el, er) = (e(ir.ray), e(ir.left), e(ir.right));
    (0..sigma.dim()).all(|j| &ir.mult_outer * &ei[j] == &ir.mult_left * &er[j] + &ir.mult_right * &el[j])
}

/// [`two_cone_charts_with`], matching rays of `Σ_X` to rays of `Σ` by vector.
pub fn two_cone_charts(sigma: &Fan, sigma_x: &Fan) -> Result<Vec<TwoConeChart>> {
    if !sigma.is_refinement(sigma_x) {
        return Err(Error::validation("the fine fan does not refine the coarse fan"));
    }
    let idx: BTreeMap<&LatticeVector, usize> = sigma.rays().iter().enumerate().map(|(i, r)| (r, i)).collect();
    let map: Vec<usize> = sigma_x
        .rays()
        .iter()
        .map(|r| idx.get(r).copied().ok_or_else(|| Error::validation("a ray of the coarse fan is missing from the fine fan")))
        .collect::<Result<_>>()?;
    two_cone_charts_with(sigma, sigma_x, &map)
}

/// `f_σ` on `V(σ)` together with its Cox ring.
#[derive(Clone, Debug)]
pub struct FaceRestriction {
    pub sigma: ConeRef,
    pub star: Star,
    pub ring: CoxRing,
    /// `f_σ`; zero when no term of `f` lies on the face.
    pub poly: GradedPolynomial,
    /// Lattice points of the face, as monomials of `S_β`.
    pub face_monomials: Vec<Exponent>,
}

/// Data shared by the decomposition and the Gram matrix.
#[derive(Debug)]
pub struct SemiampleThreefold<'r> {
    ring: &'r CoxRing,
    f: GradedPolynomial,
    sigma_x: SigmaD,
    charts: Vec<TwoConeChart>,
}

/// Kind of a summand of `H^{3−a,a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `R_1(f)_{(a+1)β−β_0}`.
    R1,
    /// `L_a^{σ,i} = R_1(f_σ)_{aβ^σ−β_0^σ}` for the `i`-th interior ray of chart `chart`.
    L { chart: usize, ray: usize },
}

/// One summand with its monomial coset basis, ordered lexicographically.
#[derive(Clone, Debug)]
pub struct H3Block {
    pub level: usize,
    pub kind: BlockKind,
    pub degree: DegreeClass,
    pub basis: Vec<Exponent>,
}

impl H3Block {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The pairing between levels `a` and `3 − a` on the concatenated block bases.
#[derive(Clone, Debug)]
pub struct H3Gram {
    pub rows: Vec<H3Block>,
    pub cols: Vec<H3Block>,
    pub entries: Vec<Vec<PairingValue>>,
}

impl H3Gram {
    pub fn rational_matrix(&self) -> Vec<Vec<Rat>> {
        self.entries.iter().map(|r| r.iter().map(|v| v.rational.clone()).collect()).collect()
    }

    /// Row and column offsets of each block.
    pub fn offsets(blocks: &[H3Block]) -> Vec<usize> {
        blocks
            .iter()
            .scan(0, |acc, b| {
                let s = *acc;
                *acc += b.dim();
                Some(s)
            })
            .collect()
    }
}

fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

impl<'r> SemiampleThreefold<'r> {
    /// Requires `d = 4`, `deg f` semiample with a lattice polytope, `f` certified.
    pub fn new(ring: &'r CoxRing, f: &GradedPolynomial) -> Result<Self> {
        if ring.dim() != 4 {
            return Err(Error::precondition(format!("ambient dimension is {}, not 4", ring.dim()), DECOMPOSITION));
        }
        if !ring.is_semiample(&f.degree)? {
            return Err(Error::precondition("deg f is not semiample", DECOMPOSITION));
        }
        ring.polytope(&f.degree)?.require_lattice()?;
        if ring.nondegeneracy_certificate(f)? != Nondegeneracy::CertifiedNondegenerate {
            return Err(Error::precondition("f is not certified nondegenerate", DECOMPOSITION));
        }
        let sigma_x = ring.divisor(&f.degree).sigma_d()?;
        let charts = two_cone_charts_with(ring.fan(), &sigma_x.fan, &sigma_x.ray_indices)?;
        Ok(SemiampleThreefold { ring, f: f.clone(), sigma_x, charts })
    }

    pub fn sigma_x(&self) -> &Fan {
        &self.sigma_x.fan
    }

    pub fn sigma_x_rays(&self) -> &[usize] {
        &self.sigma_x.ray_indices
    }

    pub fn charts(&self) -> &[TwoConeChart] {
        &self.charts
    }

    /// `f_σ` for `σ ∈ Σ_X(2)` given in ray indices of `Σ_X`.
    ///
    /// Face monomials `x^a` of `S_β` (zero exponent on the rays of `σ`) go to
    /// `∏ y_γ^{(a_j − μ_j)/k_j}`, where `e_j` is the extra ray of `γ ⊃ σ`,
    /// `k_j` the content of its image in `N/N_σ` and `μ_j` the least `a_j` on
    /// the face. The degree `β^σ` is the class of the face polytope.
    pub fn face_polynomial(&self, sigma: &ConeRef) -> Result<FaceRestriction> {
        let fan_x = &self.sigma_x.fan;
        let map = &self.sigma_x.ray_indices;
        let star = fan_x.star(sigma)?;
        let ring = CoxRing::new(&star.fan)?;
        let on_sigma: Vec<usize> = sigma.rays.iter().map(|&r| map[r]).collect();
        let basis = self.ring.monomial_basis(&self.f.degree)?;
        let face_monomials: Vec<Exponent> =
            basis.monomials.iter().filter(|e| on_sigma.iter().all(|&i| e[i] == 0)).cloned().collect();
        if face_monomials.is_empty() {
            return Err(Error::precondition("the face of Δ over σ has no lattice points", DECOMPOSITION));
        }
        let mut extra = Vec::with_capacity(star.ray_cones.len());
        for g in &star.ray_cones {
            let j = map[*g.rays.iter().find(|r| !sigma.rays.contains(r)).expect("larger cone")];
            let k = gcd_all(&star.frame.quotient(self.ring.fan().rays()[j].coords()));
            let mu = face_monomials.iter().map(|e| e[j]).min().expect("nonempty face");
            extra.push((j, k, mu));
        }
        let translate = |e: &[u32]| -> Result<Exponent> {
            extra
                .iter()
                .map(|(j, k, mu)| {
                    let (q, r) = Int::from(e[*j] - mu).div_rem(k);
                    if !r.is_zero() {
                        return Err(Error::inconsistency("face monomial off the quotient lattice"));
                    }
                    u32::try_from(q).map_err(|_| Error::inconsistency("exponent overflow"))
                })
                .collect()
        };
        let degree = ring.degree_of_monomial(&translate(&face_monomials[0])?);
        let mut poly = Polynomial::zero(ring.nvars());
        for (e, c) in self.f.poly.terms() {
            if on_sigma.iter().all(|&i| e[i] == 0) {
                poly.add_term(translate(e)?, c.clone());
            }
        }
        let poly = ring.homogeneous(poly, Some(degree))?;
        Ok(FaceRestriction { sigma: sigma.clone(), star, ring, poly, face_monomials })
    }

    fn level_degree(&self, a: usize) -> DegreeClass {
        self.ring.combine(&[(a as i64 + 1, &self.f.degree), (-1, &self.ring.beta0())])
    }

    fn face_restrictions(&self) -> Result<Vec<Option<FaceRestriction>>> {
        self.charts
            .par_iter()
            .map(|c| if c.n() == 0 { Ok(None) } else { self.face_polynomial(&c.sigma).map(Some) })
            .collect()
    }

    fn blocks_with(&self, a: usize, faces: &[Option<FaceRestriction>]) -> Result<Vec<H3Block>> {
        let deg = self.level_degree(a);
        let basis = self.ring.j1_graded_piece(&self.f, &deg)?.quotient_monomials();
        let mut blocks = vec![H3Block { level: a, kind: BlockKind::R1, degree: deg, basis }];
        for (ci, (chart, face)) in self.charts.iter().zip(faces).enumerate() {
            let Some(face) = face else { continue };
            let r = &face.ring;
            let deg = r.combine(&[(a as i64, &face.poly.degree), (-1, &r.beta0())]);
            let basis = r.j1_graded_piece(&face.poly, &deg)?.quotient_monomials();
            for i in 0..chart.n() {
                blocks.push(H3Block { level: a, kind: BlockKind::L { chart: ci, ray: i }, degree: deg.clone(), basis: basis.clone() });
            }
        }
        Ok(blocks)
    }

    fn certify_faces(faces: &[Option<FaceRestriction>]) -> Result<()> {
        for face in faces.iter().flatten() {
            if face.ring.nondegeneracy_certificate(&face.poly)? != Nondegeneracy::CertifiedNondegenerate {
                return Err(Error::precondition("a face polynomial f_σ is not certified nondegenerate", DECOMPOSITION));
            }
        }
        Ok(())
    }

    /// Blocks of `H^{3−a,a}` for `a = 0, 1, 2, 3`.
    pub fn h3_decomposition(&self) -> Result<Vec<Vec<H3Block>>> {
        let faces = self.face_restrictions()?;
        Self::certify_faces(&faces)?;
        (0..4).map(|a| self.blocks_with(a, &faces)).collect()
    }

    /// `h^{3−a,a}` for `a = 0..3`.
    pub fn hodge_numbers(&self) -> Result<[usize; 4]> {
        let d = self.h3_decomposition()?;
        let mut h = [0; 4];
        for (a, blocks) in d.iter().enumerate() {
            h[a] = blocks.iter().map(H3Block::dim).sum();
        }
        Ok(h)
    }

    /// Gram matrix of `∫ ω ∪ ω′` for `ω ∈ H^{3−a,a}`, `ω′ ∈ H^{a,3−a}`.
    pub fn gram(&self, a: usize) -> Result<H3Gram> {
        if a > 3 {
            return Err(Error::precondition(format!("level {a} is out of range 0..=3"), CUP));
        }
        let b = 3 - a;
        let faces = self.face_restrictions()?;
        Self::certify_faces(&faces)?;
        let rows = self.blocks_with(a, &faces)?;
        let cols = self.blocks_with(b, &faces)?;
        let trace = TraceForm::new(self.ring, &self.f)?;
        let traces: Vec<Option<TraceForm<'_>>> = faces
            .iter()
            .map(|f| f.as_ref().map(|f| TraceForm::new(&f.ring, &f.poly)).transpose())
            .collect::<Result<_>>()?;
        let zero = PairingValue { rational: Rat::zero(), two_pi_i_exponent: 4 };
        let mut entries = Vec::with_capacity(rows.iter().map(H3Block::dim).sum());
        for rb in &rows {
            let block_rows: Vec<Vec<PairingValue>> = rb
                .basis
                .par_iter()
                .map(|x| {
                    let mut row = Vec::new();
                    for cb in &cols {
                        for y in &cb.basis {
                            row.push(self.entry(rb, x, cb, y, &trace, &traces, &faces)?.unwrap_or_else(|| zero.clone()));
                        }
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            entries.extend(block_rows);
        }
        Ok(H3Gram { rows, cols, entries })
    }

    #[allow(clippy::too_many_arguments)]
    fn entry(
        &self,
        rb: &H3Block,
        x: &[u32],
        cb: &H3Block,
        y: &[u32],
        trace: &TraceForm<'_>,
        traces: &[Option<TraceForm<'_>>],
        faces: &[Option<FaceRestriction>],
    ) -> Result<Option<PairingValue>> {
        let a = rb.level;
        match (&rb.kind, &cb.kind) {
            (BlockKind::R1, BlockKind::R1) => {
                let gx = GradedPolynomial { poly: Polynomial::monomial(x.to_vec(), Rat::one()), degree: rb.degree.clone() };
                let gy = GradedPolynomial { poly: Polynomial::monomial(y.to_vec(), Rat::one()), degree: cb.degree.clone() };
                Ok(Some(trace.cup_pair(&gx, a, &gy, cb.level)?))
            }
            (BlockKind::L { chart: c1, ray: i }, BlockKind::L { chart: c2, ray: j }) if c1 == c2 => {
                let chart = &self.charts[*c1];
                let factor = if i == j {
                    let ir = &chart.interior[*i];
                    -Rat::new(ir.mult_outer.clone(), &ir.mult_left * &ir.mult_right)
                } else if chart.adjacent(*i, *j) {
                    Rat::new(Int::one(), chart.interior[(*i).min(*j)].mult_right.clone())
                } else {
                    return Ok(None);
                };
                let face = faces[*c1].as_ref().expect("chart with interior rays has a face");
                let t = traces[*c1].as_ref().expect("chart with interior rays has a trace form");
                let prod: Exponent = x.iter().zip(y).map(|(p, q)| p + q).collect();
                let h = GradedPolynomial { degree: face.ring.degree_of_monomial(&prod), poly: Polynomial::monomial(prod, Rat::one()) };
                let value = sign(a as i64 - 1) * factor * t.eta(&h)?;
                Ok(Some(PairingValue { rational: value, two_pi_i_exponent: 4 }))
            }
            _ => Ok(None),
        }
    }
}

/// `h^{3−a,a}` blocks of `{f = 0}`; see [`SemiampleThreefold::h3_decomposition`].
pub fn h3_decomposition(ring: &CoxRing, f: &GradedPolynomial) -> Result<Vec<Vec<H3Block>>> {
    SemiampleThreefold::new(ring, f)?.h3_decomposition()
}

/// Gram matrix between levels `a` and `3 − a`; see [`SemiampleThreefold::gram`].
pub fn gram_h3(ring: &CoxRing, f: &GradedPolynomial, a: usize) -> Result<H3Gram> {
    SemiampleThreefold::new(ring, f)?.gram(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{p11222, p11222_crepant, projective_space};
    use crate::coxring::fermat;
    use crate::linalg::{rank, Matrix};
    use crate::util::rat;

    pub(crate) fn crepant_f(ring: &CoxRing) -> GradedPolynomial {
        let terms: [(&[u32], i64); 5] = [
            (&[8, 0, 0, 0, 0, 4], 1),
            (&[0, 8, 0, 0, 0, 4], 1),
            (&[0, 0, 4, 0, 0, 0], 1),
            (&[0, 0, 0, 4, 0, 0], 1),
            (&[0, 0, 0, 0, 4, 0], 1),
        ];
        let p = Polynomial::from_terms(6, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap();
        ring.homogeneous(p, None).unwrap()
    }

    #[test]
    fn ample_case_has_no_interior_rays() {
        let fan = projective_space(4);
        let charts = two_cone_charts(&fan, &fan).unwrap();
        assert_eq!(charts.len(), 10);
        assert!(charts.iter().all(|c| c.n() == 0));
    }

    #[test]
    fn crepant_chart() {
        let charts = two_cone_charts(&p11222_crepant(), &p11222()).unwrap();
        let with: Vec<_> = charts.iter().filter(|c| c.n() > 0).collect();
        assert_eq!(with.len(), 1);
        let c = with[0];
        assert_eq!(c.n(), 1);
        let ir = &c.interior[0];
        assert_eq!(ir.ray, 5);
        assert_eq!((ir.mult_left.clone(), ir.mult_right.clone(), ir.mult_outer.clone()), (Int::one(), Int::one(), Int::from(2)));
        assert!(mult_identity_holds(&p11222_crepant(), ir));
    }

    #[test]
    fn chart_with_three_interior_rays() {
        let coarse = projective_space(2);
        let fine = Fan::from_i64(
            &[&[1, 0], &[0, 1], &[-1, -1], &[2, 1], &[1, 1], &[1, 2]],
            &[&[0, 3], &[3, 4], &[4, 5], &[5, 1], &[1, 2], &[2, 0]],
        )
        .unwrap();
        let charts = two_cone_charts(&fine, &coarse).unwrap();
        let c = charts.iter().find(|c| c.n() > 0).unwrap();
        assert_eq!(c.n(), 3);
        let order: Vec<usize> = c.interior.iter().map(|r| r.ray).collect();
        assert!(order == [3, 4, 5] || order == [5, 4, 3]);
        assert!(c.adjacent(0, 1) && c.adjacent(2, 1) && !c.adjacent(0, 2));
        let middle = &c.interior[1];
        assert_eq!((middle.mult_left.clone(), middle.mult_right.clone(), middle.mult_outer.clone()), (Int::one(), Int::one(), Int::from(3)));
        assert!(c.interior.iter().all(|r| mult_identity_holds(&fine, r)));
    }

    #[test]
    fn refinement_violation_is_reported() {
        assert!(two_cone_charts(&p11222(), &p11222_crepant()).is_err());
    }

    #[test]
    fn crepant_face_polynomial() {
        let fan = p11222_crepant();
        let ring = CoxRing::new(&fan).unwrap();
        let f = crepant_f(&ring);
        let tf = SemiampleThreefold::new(&ring, &f).unwrap();
        let chart = tf.charts().iter().find(|c| c.n() == 1).unwrap().clone();
        let face = tf.face_polynomial(&chart.sigma).unwrap();
        assert_eq!(face.star.fan.dim(), 2);
        // x_2^4 + x_3^4 + x_4^4 restricted to the face: a plane quartic.
        assert_eq!(face.poly.poly.len(), 3);
        assert_eq!(face.face_monomials.len(), 15);
        assert!(face.poly.poly.terms().keys().all(|e| e.iter().sum::<u32>() == 4));
        assert_eq!(face.ring.nondegeneracy_certificate(&face.poly).unwrap(), Nondegeneracy::CertifiedNondegenerate);
    }

    #[test]
    fn degenerate_face_polynomial_is_flagged() {
        let fan = p11222_crepant();
        let ring = CoxRing::new(&fan).unwrap();
        let f = crepant_f(&ring);
        let g = GradedPolynomial { poly: f.poly.filter(|e| e[4] == 0), degree: f.degree.clone() };
        let tf = SemiampleThreefold { ring: &ring, f: g.clone(), sigma_x: ring.divisor(&g.degree).sigma_d().unwrap(), charts: vec![] };
        let sigma = tf.sigma_x().cones(2).into_iter().find(|s| {
            let mut r: Vec<usize> = s.rays.iter().map(|&i| tf.sigma_x_rays()[i]).collect();
            r.sort();
            r == vec![0, 1]
        });
        let face = tf.face_polynomial(&sigma.unwrap()).unwrap();
        assert_ne!(face.ring.nondegeneracy_certificate(&face.poly).unwrap(), Nondegeneracy::CertifiedNondegenerate);
    }

    #[test]
    fn crepant_decomposition() {
        let fan = p11222_crepant();
        let ring = CoxRing::new(&fan).unwrap();
        let f = crepant_f(&ring);
        let tf = SemiampleThreefold::new(&ring, &f).unwrap();
        let d = tf.h3_decomposition().unwrap();
        let dims: Vec<Vec<usize>> = d.iter().map(|l| l.iter().map(H3Block::dim).collect()).collect();
        assert_eq!(dims, vec![vec![1, 0], vec![83, 3], vec![83, 3], vec![1, 0]]);
        assert_eq!(tf.hodge_numbers().unwrap(), [1, 86, 86, 1]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn crepant_gram_vanishing_pattern_and_rank() {
        let fan = p11222_crepant();
        let ring = CoxRing::new(&fan).unwrap();
        let f = crepant_f(&ring);
        let tf = SemiampleThreefold::new(&ring, &f).unwrap();
        let g = tf.gram(1).unwrap();
        let m = g.rational_matrix();
        assert_eq!(m.len(), 86);
        let ro = H3Gram::offsets(&g.rows);
        let co = H3Gram::offsets(&g.cols);
        for i in ro[0]..ro[0] + g.rows[0].dim() {
            for j in co[1]..co[1] + g.cols[1].dim() {
                assert!(m[i][j].is_zero());
                assert!(m[j][i].is_zero());
            }
        }
        assert_eq!(rank(&Matrix::from_rows(&m, 86)), 86);
        let back = tf.gram(2).unwrap().rational_matrix();
        for i in 0..86 {
            for j in 0..86 {
                assert_eq!(back[j][i], -m[i][j].clone());
            }
        }
    }

    #[test]
    fn ample_gram_is_the_r1_pairing() {
        let fan = projective_space(4);
        let ring = CoxRing::new(&fan).unwrap();
        let f = ring.homogeneous(fermat(5, 5), None).unwrap();
        let tf = SemiampleThreefold::new(&ring, &f).unwrap();
        assert_eq!(tf.hodge_numbers().unwrap(), [1, 101, 101, 1]);
        let g = tf.gram(0).unwrap();
        assert_eq!(g.rows.len(), 1);
        let direct = TraceForm::new(&ring, &f).unwrap().gram(0, 3).unwrap();
        assert_eq!(g.rational_matrix(), direct);
        assert!(!direct[0][0].is_zero());
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let fan = projective_space(3);
        let ring = CoxRing::new(&fan).unwrap();
        let f = ring.homogeneous(fermat(4, 4), None).unwrap();
        assert!(matches!(SemiampleThreefold::new(&ring, &f), Err(Error::Precondition { .. })));
    }
}
