//! Torus-invariant divisors on complete fans: support functions, convexity,
//! the polytope `Δ_D`, intersection numbers, the coarsened fan `Σ_D`,
//! push-forward and pull-back, the toric Nakai criterion and the orbit
//! stratification of a semiample hypersurface.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::cone::ConeGeometry;
use crate::error::{Error, Result};
use crate::fan::{ConeRef, Fan};
use crate::lattice::{dot, primitivize, LatticeFrame, LatticeVector};
use crate::linalg::{solve, Matrix};
use crate::polytope::{vertices_from_inequalities, HPolytope, Inequality, LatticePolytope};
use crate::util::{to_int, to_rat, UnionFind};
use crate::{Int, Rat};

const NAKAI: &str = "toric Nakai criterion";
const INTERSECTION: &str = "intersection numbers as face volumes of the section polytope";
const SIGMA_D: &str = "gluing maximal cones with equal support data";

/// `D = Σ a_i D_i` on a fixed fan.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusInvariantDivisor<'a> {
    fan: &'a Fan,
    coeffs: Vec<Int>,
}

/// `m_σ` for every maximal cone, in the fan's cone order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub m: Vec<LatticeVector>,
}

impl SupportFunction {
    /// `ψ(x)` for `x` in maximal cone `cone`.
    pub fn value(&self, cone: usize, x: &[Int]) -> Int {
        dot(&self.m[cone], x)
    }
}

/// `(D · V(τ))` for a wall `τ` with its two maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallIntersection {
    pub wall: ConeRef,
    pub cones: (usize, usize),
    pub value: Int,
}

/// `Σ_D` together with how it was assembled from `Σ`.
#[derive(Clone, Debug)]
pub struct SigmaD {
    pub fan: Fan,
    /// Rays of `Σ_D` as indices into the rays of `Σ`.
    pub ray_indices: Vec<usize>,
    /// Maximal cones of `Σ` glued into each maximal cone of `Σ_D`.
    pub classes: Vec<Vec<usize>>,
    /// Common `m_σ` on each maximal cone of `Σ_D`.
    pub m: Vec<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub cone: ConeRef,
    /// Smallest cone of `Σ_D` containing `cone`, in the rays of `Σ_D`.
    pub container: ConeRef,
    pub torus_factor_dim: usize,
}

impl<'a> TorusInvariantDivisor<'a> {
    pub fn new(fan: &'a Fan, coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != fan.rays().len() {
            return Err(Error::validation(format!(
                "divisor has {} coefficients but the fan has {} rays",
                coeffs.len(),
                fan.rays().len()
            )));
        }
        Ok(TorusInvariantDivisor { fan, coeffs })
    }

    pub fn from_i64(fan: &'a Fan, coeffs: &[i64]) -> Result<Self> {
        Self::new(fan, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn scale(&self, k: &Int) -> Self {
        TorusInvariantDivisor { fan: self.fan, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        TorusInvariantDivisor {
            fan: self.fan,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn require_complete(&self) -> Result<()> {
        if !self.fan.is_complete() {
            return Err(Error::precondition("the fan is not complete", "support function of a divisor"));
        }
        Ok(())
    }

    /// Rational `m_σ` per maximal cone; fails only if a non-simplicial cone
    /// admits no linear function with the prescribed values.
    pub fn rational_support_function(&self) -> Result<Vec<Vec<Rat>>> {
        self.require_complete()?;
        let d = self.fan.dim();
        self.fan
            .max_cones()
            .iter()
            .enumerate()
            .map(|(c, cone)| {
                let rows: Vec<Vec<Rat>> = cone.iter().map(|&i| to_rat(&self.fan.rays()[i])).collect();
                let rhs: Vec<Rat> = cone.iter().map(|&i| Rat::from_integer(-self.coeffs[i].clone())).collect();
                solve(&Matrix::from_rows(&rows, d), &rhs).ok_or_else(|| {
                    Error::NotCartier(format!("no linear function matches the coefficients on cone {c}"))
                })
            })
            .collect()
    }

    pub fn support_function(&self) -> Result<SupportFunction> {
        let m = self
            .rational_support_function()?
            .into_iter()
            .enumerate()
            .map(|(c, v)| {
                to_int(&v).map(LatticeVector::new).ok_or_else(|| {
                    Error::NotCartier(format!("no integral solution on cone {c}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SupportFunction { m })
    }

    pub fn is_cartier(&self) -> Result<bool> {
        match self.support_function() {
            Ok(_) => Ok(true),
            Err(Error::NotCartier(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// `⟨m_σ, e_j⟩ ≥ −a_j` for all maximal `σ` and all rays `j`.
    pub fn is_globally_generated(&self) -> Result<bool> {
        let psi = self.support_function()?;
        Ok(psi.m.iter().all(|m| {
            self.fan.rays().iter().zip(&self.coeffs).all(|(e, a)| dot(m, e) >= -a.clone())
        }))
    }

    /// Convex, with equality only on the rays of the cone itself.
    pub fn is_strictly_convex(&self) -> Result<bool> {
        let psi = self.support_function()?;
        Ok(psi.m.iter().zip(self.fan.max_cones()).all(|(m, cone)| {
            self.fan.rays().iter().zip(&self.coeffs).enumerate().all(|(j, (e, a))| {
                let v = dot(m, e);
                let neg = -a.clone();
                v > neg || (v == neg && cone.contains(&j))
            })
        }))
    }

    pub fn is_ample(&self) -> Result<bool> {
        self.is_strictly_convex()
    }

    /// `Δ_D = {m : ⟨m, e_i⟩ ≥ −a_i}`.
    pub fn polytope(&self) -> HPolytope {
        let ineqs = self
            .fan
            .rays()
            .iter()
            .zip(&self.coeffs)
            .map(|(e, a)| Inequality::new(e.clone(), -a.clone()))
            .collect();
        HPolytope::new(self.fan.dim(), ineqs).expect("rays are nonzero and of the fan's rank")
    }

    pub fn section_polytope(&self) -> Result<LatticePolytope> {
        vertices_from_inequalities(&self.polytope())
    }

    pub fn is_semiample(&self) -> Result<bool> {
        if !self.is_globally_generated()? {
            return Ok(false);
        }
        Ok(self.section_polytope()?.is_full_dimensional())
    }

    fn require_semiample(&self) -> Result<()> {
        if !self.is_semiample()? {
            return Err(Error::precondition("the divisor is not semiample", SIGMA_D));
        }
        Ok(())
    }

    /// `(D^k · V(σ))` for a cone of dimension `d − k`, via the volume of the
    /// face of `Δ_D` cut out by the rays of `σ`.
    pub fn intersection_number(&self, k: usize, sigma: &ConeRef) -> Result<Rat> {
        let d = self.fan.dim();
        if k > d || sigma.dim + k != d {
            return Err(Error::validation(format!("cone of dimension {} does not match k = {k}", sigma.dim)));
        }
        if !self.is_globally_generated()? {
            return Err(Error::precondition("the divisor is not globally generated", INTERSECTION));
        }
        let poly = self.section_polytope()?;
        self.intersection_in(&poly, k, sigma)
    }

    fn intersection_in(&self, poly: &LatticePolytope, k: usize, sigma: &ConeRef) -> Result<Rat> {
        let tight: Vec<(Vec<Int>, Rat)> = sigma
            .rays
            .iter()
            .map(|&i| (self.fan.rays()[i].coords().to_vec(), Rat::from_integer(-self.coeffs[i].clone())))
            .collect();
        let Some(face) = poly.face_where_tight(&tight) else { return Ok(Rat::zero()) };
        if face.dim != k {
            return Ok(Rat::zero());
        }
        Ok(poly.face_polytope(&face)?.normalized_volume())
    }

    /// `(D^d)`.
    pub fn top_self_intersection(&self) -> Result<Rat> {
        self.intersection_number(self.fan.dim(), &ConeRef::zero())
    }

    /// `(D · V(τ))` for every wall, for any Cartier `D`: with `τ = σ ∩ σ'`,
    /// `m_σ − m_σ' = ℓ u` where `u` generates `τ^⊥ ∩ M` and is positive on
    /// `σ' \ τ`; then `(D · V(τ)) = ℓ`.
    pub fn wall_intersections(&self) -> Result<Vec<WallIntersection>> {
        let psi = self.support_function()?;
        let d = self.fan.dim();
        let mut out = Vec::new();
        for wall in self.fan.cones(d - 1) {
            let cones = self.fan.max_cones_containing(&wall);
            if cones.len() != 2 {
                return Err(Error::inconsistency("wall not shared by exactly two maximal cones"));
            }
            let (s, t) = (cones[0], cones[1]);
            let gens: Vec<Vec<Int>> = wall.rays.iter().map(|&r| self.fan.rays()[r].coords().to_vec()).collect();
            let frame = LatticeFrame::new(d, &gens);
            let mut u = frame.dual_lift(&[Int::from(1)]);
            let outside = self.fan.max_cones()[t]
                .iter()
                .find(|r| !wall.rays.contains(r))
                .expect("maximal cone larger than its wall");
            if dot(&u, &self.fan.rays()[*outside]).is_negative() {
                u = u.iter().map(|x| -x.clone()).collect();
            }
            let diff = psi.m[s].sub(&psi.m[t]);
            let pivot = u.iter().position(|x| !x.is_zero()).expect("nonzero generator");
            let value = &diff[pivot] / &u[pivot];
            if diff.coords() != u.iter().map(|x| x * &value).collect::<Vec<_>>() {
                return Err(Error::inconsistency("support data differ by a vector off the wall's dual line"));
            }
            out.push(WallIntersection { wall, cones: (s, t), value });
        }
        Ok(out)
    }

    /// `(D · V(τ))` written as `((D + kA) · V(τ)) − k (A · V(τ))` with `A`
    /// ample and `D + kA` globally generated; both terms are face volumes.
    pub fn wall_intersections_by_decomposition(&self, ample: &TorusInvariantDivisor<'a>) -> Result<Vec<Rat>> {
        if !ample.is_ample()? {
            return Err(Error::precondition("auxiliary divisor is not ample", NAKAI));
        }
        let mut k = Int::zero();
        let mut shifted = self.clone();
        while !shifted.is_globally_generated()? {
            k += 1;
            shifted = self.add(&ample.scale(&k));
        }
        let d = self.fan.dim();
        let p_shift = shifted.section_polytope()?;
        let p_ample = ample.section_polytope()?;
        self.fan
            .cones(d - 1)
            .iter()
            .map(|wall| {
                let a = shifted.intersection_in(&p_shift, 1, wall)?;
                let b = ample.intersection_in(&p_ample, 1, wall)?;
                Ok(a - Rat::from_integer(k.clone()) * b)
            })
            .collect()
    }

    pub fn nakai_globally_generated(&self) -> Result<bool> {
        Ok(self.wall_intersections()?.iter().all(|w| !w.value.is_negative()))
    }

    pub fn nakai_ample(&self) -> Result<bool> {
        Ok(self.wall_intersections()?.iter().all(|w| w.value.is_positive()))
    }

    /// `Σ_D` by gluing maximal cones with equal `m_σ`.
    pub fn sigma_d_by_support(&self) -> Result<SigmaD> {
        self.require_semiample()?;
        let psi = self.support_function()?;
        let mut uf = UnionFind::new(self.fan.max_cones().len());
        let mut first: BTreeMap<&LatticeVector, usize> = BTreeMap::new();
        for (c, m) in psi.m.iter().enumerate() {
            match first.get(m) {
                Some(&f) => uf.union(f, c),
                None => {
                    first.insert(m, c);
                }
            }
        }
        self.glue(&uf.classes(), &psi)
    }

    /// `Σ_D` by gluing across walls with `(D·V(τ)) = 0`.
    pub fn sigma_d_by_walls(&self) -> Result<SigmaD> {
        self.require_semiample()?;
        let psi = self.support_function()?;
        let mut uf = UnionFind::new(self.fan.max_cones().len());
        for w in self.wall_intersections()? {
            if w.value.is_zero() {
                uf.union(w.cones.0, w.cones.1);
            }
        }
        self.glue(&uf.classes(), &psi)
    }

    /// `Σ_D` as the normal fan of `Δ_D`.
    pub fn sigma_d_by_normal_fan(&self) -> Result<Fan> {
        self.require_semiample()?;
        self.section_polytope()?.normal_fan()
    }

    /// `Σ_D` by three independent constructions that must agree.
    pub fn sigma_d(&self) -> Result<SigmaD> {
        let a = self.sigma_d_by_support()?;
        let b = self.sigma_d_by_walls()?;
        let c = self.sigma_d_by_normal_fan()?;
        if !a.fan.same_cones(&b.fan) {
            return Err(Error::inconsistency("gluing by support data and by zero walls disagree"));
        }
        if !a.fan.same_cones(&c) {
            return Err(Error::inconsistency("glued fan differs from the normal fan of the section polytope"));
        }
        Ok(a)
    }

    fn glue(&self, classes: &[Vec<usize>], psi: &SupportFunction) -> Result<SigmaD> {
        let d = self.fan.dim();
        let mut cone_rays: Vec<Vec<usize>> = Vec::new();
        for class in classes {
            let mut all: Vec<usize> = class.iter().flat_map(|&c| self.fan.max_cones()[c].clone()).collect();
            all.sort();
            all.dedup();
            let gens: Vec<LatticeVector> = all.iter().map(|&r| self.fan.rays()[r].clone()).collect();
            let g = ConeGeometry::new(&gens, d);
            let faces = g.faces();
            let extremal: Vec<usize> = (0..all.len())
                .filter(|&i| faces.contains(&vec![i]) && g.face_dim(&[i]) == 1)
                .map(|i| all[i])
                .collect();
            cone_rays.push(extremal);
        }
        let mut ray_indices: Vec<usize> = cone_rays.iter().flatten().copied().collect();
        ray_indices.sort();
        ray_indices.dedup();
        let pos: BTreeMap<usize, usize> = ray_indices.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let rays: Vec<LatticeVector> = ray_indices.iter().map(|&r| self.fan.rays()[r].clone()).collect();
        let cones: Vec<Vec<usize>> = cone_rays.iter().map(|c| c.iter().map(|r| pos[r]).collect()).collect();
        let fan = Fan::new(d, rays, cones)?;
        let m = classes.iter().map(|c| psi.m[c[0]].clone()).collect();
        Ok(SigmaD { fan, ray_indices, classes: classes.to_vec(), m })
    }

    /// Restriction to the rays of a coarser fan `coarse` refined by this fan.
    pub fn pushforward<'b>(&self, coarse: &'b Fan) -> Result<TorusInvariantDivisor<'b>> {
        if !self.fan.is_refinement(coarse) {
            return Err(Error::inconsistency("the fan does not refine the target fan"));
        }
        let coeffs = coarse
            .rays()
            .iter()
            .map(|r| {
                self.fan
                    .rays()
                    .iter()
                    .position(|e| e == r)
                    .map(|i| self.coeffs[i].clone())
                    .ok_or_else(|| Error::inconsistency("a ray of the coarser fan is not a ray of the refinement"))
            })
            .collect::<Result<Vec<_>>>()?;
        TorusInvariantDivisor::new(coarse, coeffs)
    }

    /// `−ψ_D` evaluated on the rays of a refinement `fine`.
    pub fn pullback<'b>(&self, fine: &'b Fan) -> Result<TorusInvariantDivisor<'b>> {
        if !fine.is_refinement(self.fan) {
            return Err(Error::inconsistency("target fan does not refine the divisor's fan"));
        }
        let psi = self.support_function()?;
        let geo = self.fan.geometry();
        let coeffs = fine
            .rays()
            .iter()
            .map(|e| {
                let c = geo
                    .iter()
                    .position(|g| g.contains(e))
                    .ok_or_else(|| Error::inconsistency("ray outside the support"))?;
                Ok(-psi.value(c, e))
            })
            .collect::<Result<Vec<_>>>()?;
        TorusInvariantDivisor::new(fine, coeffs)
    }

    /// For every cone of `Σ`, its smallest container in `Σ_D` and the
    /// dimension of the torus factor of the corresponding stratum.
    pub fn stratify(&self) -> Result<Vec<StratumRecord>> {
        let sd = self.sigma_d()?;
        let mut out = Vec::new();
        for k in 0..=self.fan.dim() {
            for cone in self.fan.cones(k) {
                let container = sd.fan.smallest_containing_cone(self.fan, &cone)?;
                let torus_factor_dim = container.dim - cone.dim;
                out.push(StratumRecord { cone, container, torus_factor_dim });
            }
        }
        Ok(out)
    }
}

/// A primitive vector on the ray through `v`; convenience for callers.
pub fn ray_of(v: &[Int]) -> Result<LatticeVector> {
    primitivize(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tests::{blowup, plane};
    use crate::util::rat;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn support_function_examples() {
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        let psi = d3.support_function().unwrap();
        // cones {0,1},{0,2},{1,2}
        assert_eq!(psi.m, vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[1, 0])]);
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        let psi = pb.support_function().unwrap();
        // cones {0,3},{1,3} share m = 0
        assert_eq!(psi.m[0], lv(&[0, 0]));
        assert_eq!(psi.m[1], lv(&[0, 0]));
    }

    #[test]
    fn not_cartier_example() {
        let f = Fan::from_i64(&[&[1, 1], &[1, -1], &[-1, 0]], &[&[0, 1], &[1, 2], &[2, 0]]).unwrap();
        assert!(f.validate().complete);
        let d = TorusInvariantDivisor::from_i64(&f, &[1, 0, 0]).unwrap();
        assert!(matches!(d.support_function(), Err(Error::NotCartier(_))));
        assert!(!d.is_cartier().unwrap());
    }

    #[test]
    fn convexity_examples() {
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        assert!(d3.is_globally_generated().unwrap() && d3.is_strictly_convex().unwrap());
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        assert!(pb.is_globally_generated().unwrap());
        assert!(!pb.is_strictly_convex().unwrap());
        let neg = TorusInvariantDivisor::from_i64(&p, &[0, 0, -1]).unwrap();
        assert!(!neg.is_globally_generated().unwrap());
    }

    #[test]
    fn polytope_examples() {
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        let poly = d3.section_polytope().unwrap();
        assert_eq!(poly.normalized_volume(), rat(1));
        assert_eq!(poly.lattice_points().len(), 3);
        let line = Fan::from_i64(&[&[1], &[-1]], &[&[0], &[1]]).unwrap();
        let d = TorusInvariantDivisor::from_i64(&line, &[2, 0]).unwrap();
        assert_eq!(d.section_polytope().unwrap().normalized_volume(), rat(2));
    }

    #[test]
    fn semiample_examples() {
        let b = blowup();
        assert!(TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap().is_semiample().unwrap());
        let p = plane();
        assert!(TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap().is_semiample().unwrap());
        assert!(!TorusInvariantDivisor::from_i64(&p, &[0, 0, 0]).unwrap().is_semiample().unwrap());
    }

    #[test]
    fn intersection_examples() {
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        assert_eq!(d3.intersection_number(2, &ConeRef::zero()).unwrap(), rat(1));
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        let exc = b.cone_with_rays(&[3]).unwrap();
        assert_eq!(pb.intersection_number(1, &exc).unwrap(), rat(0));
        let r = b.cone_with_rays(&[2]).unwrap();
        assert_eq!(pb.intersection_number(1, &r).unwrap(), rat(1));
        let neg = TorusInvariantDivisor::from_i64(&p, &[0, 0, -1]).unwrap();
        assert!(matches!(neg.intersection_number(2, &ConeRef::zero()), Err(Error::Precondition { .. })));
    }

    #[test]
    fn sigma_d_examples() {
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        let sd = pb.sigma_d().unwrap();
        assert!(sd.fan.same_cones(&plane()));
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        assert!(d3.sigma_d().unwrap().fan.same_cones(&p));
        let p1p1 = Fan::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]).unwrap();
        let pt = TorusInvariantDivisor::from_i64(&p1p1, &[1, 0, 0, 0]).unwrap();
        assert!(pt.is_globally_generated().unwrap());
        assert!(matches!(pt.sigma_d(), Err(Error::Precondition { .. })));
    }

    #[test]
    fn push_pull_examples() {
        let (p, b) = (plane(), blowup());
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        let down = pb.pushforward(&p).unwrap();
        assert_eq!(down.coeffs(), &[Int::from(0), Int::from(0), Int::from(1)]);
        let up = down.pullback(&b).unwrap();
        assert_eq!(up.coeffs(), pb.coeffs());
        assert!(down.nakai_ample().unwrap());
    }

    #[test]
    fn nakai_examples() {
        let p = plane();
        let d3 = TorusInvariantDivisor::from_i64(&p, &[0, 0, 1]).unwrap();
        assert!(d3.wall_intersections().unwrap().iter().all(|w| w.value == Int::from(1)));
        assert!(d3.nakai_ample().unwrap());
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        assert!(pb.nakai_globally_generated().unwrap() && !pb.nakai_ample().unwrap());
        let exc = TorusInvariantDivisor::from_i64(&b, &[0, 0, 0, 1]).unwrap();
        assert!(!exc.nakai_globally_generated().unwrap());
        let w = exc.wall_intersections().unwrap();
        let on_exc = w.iter().find(|w| w.wall.rays == vec![3]).unwrap();
        assert_eq!(on_exc.value, Int::from(-1));
        // same numbers through the difference of globally generated divisors
        let ample = TorusInvariantDivisor::from_i64(&b, &[1, 1, 2, 0]).unwrap();
        assert!(ample.is_ample().unwrap());
        let dec = exc.wall_intersections_by_decomposition(&ample).unwrap();
        let direct: Vec<Rat> = w.iter().map(|w| Rat::from_integer(w.value.clone())).collect();
        assert_eq!(dec, direct);
    }

    #[test]
    fn stratify_examples() {
        let b = blowup();
        let pb = TorusInvariantDivisor::from_i64(&b, &[0, 0, 1, 0]).unwrap();
        let recs = pb.stratify().unwrap();
        let exc = recs.iter().find(|r| r.cone.rays == vec![3]).unwrap();
        assert_eq!(exc.container.dim, 2);
        assert_eq!(exc.torus_factor_dim, 1);
        let shared = recs.iter().find(|r| r.cone.rays == vec![0]).unwrap();
        assert_eq!(shared.torus_factor_dim, 0);
        let zero = recs.iter().find(|r| r.cone.rays.is_empty()).unwrap();
        assert_eq!(zero.container, ConeRef::zero());
        assert_eq!(zero.torus_factor_dim, 0);
    }
}
