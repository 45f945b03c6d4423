//! Rational polyhedral fans: validation, cones by dimension, refinement,
//! smallest containing cones and star fans of orbit closures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::cone::ConeGeometry;
use crate::error::{Error, Result};
use crate::lattice::{dot, is_primitive, primitivize, LatticeFrame, LatticeVector};
use crate::util::UnionFind;
use crate::Int;

/// A cone of a fan, named by its rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeRef {
    pub rays: Vec<usize>,
    pub dim: usize,
}

impl ConeRef {
    pub fn zero() -> Self {
        ConeRef { rays: Vec::new(), dim: 0 }
    }

    pub fn is_face_of(&self, other: &ConeRef) -> bool {
        self.rays.iter().all(|r| other.rays.contains(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub complete: bool,
    pub simplicial: bool,
    pub violations: Vec<String>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    geometry: OnceLock<Vec<ConeGeometry>>,
    cones_by_dim: OnceLock<Vec<Vec<ConeRef>>>,
    diagnostics: OnceLock<Diagnostics>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

/// Star of a cone: the fan of `V(σ)` in `N / N_σ` with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Star {
    pub fan: Fan,
    pub frame: LatticeFrame,
    /// For each ray of the star fan, the cone `γ ⊃ σ` of one dimension more.
    pub ray_cones: Vec<ConeRef>,
}

impl Fan {
    /// Structural checks only; see [`Fan::validate`] for the geometric ones.
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::validation(format!("ray {i} has length {}, expected {dim}", r.dim())));
            }
            if r.is_zero() {
                return Err(Error::validation(format!("ray {i} is zero")));
            }
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::validation(format!("cone {c} refers to missing ray {bad}")));
            }
            let sorted: Vec<usize> = cone.into_iter().sorted().dedup().collect();
            cones.push(sorted);
        }
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
            geometry: OnceLock::new(),
            cones_by_dim: OnceLock::new(),
            diagnostics: OnceLock::new(),
        })
    }

    pub fn from_i64(rays: &[&[i64]], max_cones: &[&[usize]]) -> Result<Self> {
        let dim = rays.first().map_or(0, |r| r.len());
        Fan::new(
            dim,
            rays.iter().map(|r| LatticeVector::from_i64(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub(crate) fn geometry(&self) -> &[ConeGeometry] {
        self.geometry.get_or_init(|| {
            self.max_cones
                .iter()
                .map(|c| {
                    let gens: Vec<LatticeVector> = c.iter().map(|&i| self.rays[i].clone()).collect();
                    ConeGeometry::new(&gens, self.dim)
                })
                .collect()
        })
    }

    pub fn max_cone_ref(&self, i: usize) -> ConeRef {
        ConeRef { rays: self.max_cones[i].clone(), dim: self.geometry()[i].dim() }
    }

    fn all_cones(&self) -> &[Vec<ConeRef>] {
        self.cones_by_dim.get_or_init(|| {
            let mut by_dim: Vec<BTreeSet<ConeRef>> = vec![BTreeSet::new(); self.dim + 1];
            for (c, g) in self.max_cones.iter().zip(self.geometry()) {
                for face in g.faces() {
                    let dim = g.face_dim(&face);
                    let rays: Vec<usize> = face.iter().map(|&i| c[i]).collect();
                    by_dim[dim].insert(ConeRef { rays, dim });
                }
            }
            if self.max_cones.is_empty() {
                by_dim[0].insert(ConeRef::zero());
            }
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    /// All `k`-dimensional cones, each once, sorted by ray indices.
    pub fn cones(&self, k: usize) -> Vec<ConeRef> {
        self.all_cones().get(k).cloned().unwrap_or_default()
    }

    /// The cone with exactly these rays, if there is one.
    pub fn cone_with_rays(&self, rays: &[usize]) -> Option<ConeRef> {
        let mut r = rays.to_vec();
        r.sort();
        self.all_cones().iter().flatten().find(|c| c.rays == r).cloned()
    }

    /// Indices of maximal cones having `c` as a face.
    pub fn max_cones_containing(&self, c: &ConeRef) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| c.rays.iter().all(|r| self.max_cones[i].contains(r)))
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.geometry().iter().all(|g| g.is_simplicial())
    }

    pub fn is_complete(&self) -> bool {
        self.validate().complete
    }

    /// Smallest cone containing the point, if the point is in the support.
    pub fn carrier(&self, x: &[Int]) -> Option<ConeRef> {
        for (c, g) in self.max_cones.iter().zip(self.geometry()) {
            if let Some(face) = g.carrier(x) {
                let dim = g.face_dim(&face);
                return Some(ConeRef { rays: face.iter().map(|&i| c[i]).collect(), dim });
            }
        }
        None
    }

    pub fn contains_point(&self, x: &[Int]) -> bool {
        self.geometry().iter().any(|g| g.contains(x))
    }

    /// Runs all geometric checks and reports every violation found.
    pub fn validate(&self) -> Diagnostics {
        self.diagnostics.get_or_init(|| self.compute_diagnostics()).clone()
    }

    fn compute_diagnostics(&self) -> Diagnostics {
        let mut v = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            if !is_primitive(r) {
                v.push(format!("ray {i} is not primitive"));
            }
        }
        for (i, j) in (0..self.rays.len()).tuple_combinations() {
            if self.rays[i] == self.rays[j] {
                v.push(format!("rays {i} and {j} coincide"));
            }
        }
        let geo = self.geometry();
        for (c, g) in geo.iter().enumerate() {
            if !g.is_pointed() {
                v.push(format!("cone {c} is not strongly convex"));
                continue;
            }
            let faces = g.faces();
            for local in 0..self.max_cones[c].len() {
                if !faces.iter().any(|f| f == &vec![local] && g.face_dim(f) == 1) {
                    v.push(format!("ray {} is not extremal in cone {c}", self.max_cones[c][local]));
                }
            }
        }
        for (a, b) in (0..self.max_cones.len()).tuple_combinations() {
            if !self.meet_is_common_face(a, b) {
                v.push(format!("cones {a} and {b} do not meet in a common face"));
            }
        }
        let simplicial = geo.iter().all(|g| g.is_simplicial());
        let complete = v.is_empty() && self.facet_pairing_complete();
        Diagnostics { complete, simplicial, violations: v }
    }

    fn meet_is_common_face(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.max_cones[a], &self.max_cones[b]);
        let (ga, gb) = (&self.geometry()[a], &self.geometry()[b]);
        let common: Vec<usize> = ca.iter().copied().filter(|r| cb.contains(r)).collect();
        let la: Vec<usize> = common.iter().map(|r| ca.iter().position(|x| x == r).unwrap()).collect();
        let lb: Vec<usize> = common.iter().map(|r| cb.iter().position(|x| x == r).unwrap()).collect();
        if !ga.faces().contains(&la) || !gb.faces().contains(&lb) {
            return false;
        }
        // no ray of one cone may lie in the other outside the common face
        for &r in ca.iter().filter(|r| !common.contains(r)) {
            if gb.contains(&self.rays[r]) {
                return false;
            }
        }
        for &r in cb.iter().filter(|r| !common.contains(r)) {
            if ga.contains(&self.rays[r]) {
                return false;
            }
        }
        // separating functional: a facet of either cone containing the common face
        let separates = |g: &ConeGeometry, own: &[usize], other: &[usize], tight_local: &[usize]| {
            g.facets().iter().any(|f| {
                if !tight_local.iter().all(|i| f.tight.contains(i)) {
                    return false;
                }
                let u = g.frame().span_dual_lift(&f.normal);
                let on_own: Vec<usize> = (0..own.len()).filter(|i| f.tight.contains(i)).collect();
                let own_tight_ok = on_own.len() == tight_local.len();
                let other_ok = other.iter().all(|&r| {
                    let val = dot(&u, &self.rays[r]);
                    val.is_negative() || (val.is_zero() && common.contains(&r))
                });
                own_tight_ok && other_ok && g.dim() == self.dim
            })
        };
        if separates(ga, ca, cb, &la) || separates(gb, cb, ca, &lb) {
            return true;
        }
        self.meet_by_extreme_rays(a, b, &common)
    }

    /// Exact check that `cone(a) ∩ cone(b) = cone(common)` via the extreme
    /// rays of the intersection.
    fn meet_by_extreme_rays(&self, a: usize, b: usize, common: &[usize]) -> bool {
        let d = self.dim;
        let mut rows: Vec<(Vec<Int>, bool)> = Vec::new();
        for i in [a, b] {
            let g = &self.geometry()[i];
            for f in g.facets() {
                rows.push((g.frame().span_dual_lift(&f.normal), false));
            }
            let frame = g.frame();
            for j in 0..d - g.dim() {
                let mut e = vec![Int::zero(); d - g.dim()];
                e[j] = Int::from(1);
                rows.push((frame.dual_lift(&e), true));
            }
        }
        let eqs: Vec<Vec<Int>> = rows.iter().filter(|r| r.1).map(|r| r.0.clone()).collect();
        let ineqs: Vec<Vec<Int>> = rows.iter().filter(|r| !r.1).map(|r| r.0.clone()).collect();
        let eq_frame = LatticeFrame::new(d, &eqs);
        let need = d.saturating_sub(1).saturating_sub(eq_frame.rank());
        let cg: Vec<LatticeVector> = common.iter().map(|&r| self.rays[r].clone()).collect();
        let common_cone = ConeGeometry::new(&cg, d);
        let feasible = |x: &[Int]| {
            eqs.iter().all(|e| dot(e, x).is_zero()) && ineqs.iter().all(|n| !dot(n, x).is_negative())
        };
        for subset in (0..ineqs.len()).combinations(need) {
            let mut sys: Vec<Vec<Int>> = eqs.clone();
            sys.extend(subset.iter().map(|&i| ineqs[i].clone()));
            let f = LatticeFrame::new(d, &sys);
            if f.rank() != d - 1 {
                continue;
            }
            let dir = kernel_direction(&sys, d);
            for s in [1i64, -1] {
                let x: Vec<Int> = dir.iter().map(|c| c * s).collect();
                if feasible(&x) && !common_cone.contains(&x) {
                    return false;
                }
            }
        }
        true
    }

    fn facet_pairing_complete(&self) -> bool {
        let d = self.dim;
        if d == 0 {
            return self.max_cones.len() == 1;
        }
        let geo = self.geometry();
        if self.max_cones.is_empty() || geo.iter().any(|g| g.dim() != d) {
            return false;
        }
        let mut count: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (c, g) in geo.iter().enumerate() {
            for f in g.facets() {
                let rays: Vec<usize> = f.tight.iter().map(|&i| self.max_cones[c][i]).collect();
                count.entry(rays).or_default().push(c);
            }
        }
        if count.values().any(|v| v.len() != 2) {
            return false;
        }
        let mut uf = UnionFind::new(self.max_cones.len());
        for v in count.values() {
            uf.union(v[0], v[1]);
        }
        if uf.classes().len() != 1 {
            return false;
        }
        // orthant sampling
        let mut samples: Vec<Vec<Int>> = Vec::new();
        for signs in (0..d).map(|_| [-1i64, 1]).multi_cartesian_product() {
            samples.push(signs.iter().map(|&s| Int::from(s)).collect());
        }
        for i in 0..d {
            for s in [-1i64, 1] {
                let mut e = vec![Int::zero(); d];
                e[i] = Int::from(s);
                samples.push(e);
            }
        }
        samples.iter().all(|x| self.contains_point(x))
    }

    /// Every cone of `self` lies in a cone of `coarse`, and the supports agree.
    pub fn is_refinement(&self, coarse: &Fan) -> bool {
        if self.dim != coarse.dim {
            return false;
        }
        let cg = coarse.geometry();
        for c in &self.max_cones {
            let inside = cg.iter().any(|g| c.iter().all(|&r| g.contains(&self.rays[r])));
            if !inside {
                return false;
            }
        }
        let (fc, cc) = (self.is_complete(), coarse.is_complete());
        if fc || cc {
            return fc && cc;
        }
        // supports: every ray and barycenter of coarse cones is covered
        coarse.max_cones.iter().all(|c| {
            let bary: Vec<Int> = (0..self.dim).map(|j| c.iter().map(|&r| coarse.rays[r][j].clone()).sum()).collect();
            self.contains_point(&bary) && c.iter().all(|&r| self.contains_point(&coarse.rays[r]))
        })
    }

    /// The smallest cone of `self` containing the cone `c` of the refinement `fine`.
    pub fn smallest_containing_cone(&self, fine: &Fan, c: &ConeRef) -> Result<ConeRef> {
        let x: Vec<Int> = (0..self.dim).map(|j| c.rays.iter().map(|&r| fine.rays[r][j].clone()).sum()).collect();
        let found = self.carrier(&x).ok_or_else(|| {
            Error::inconsistency("cone of the refinement is not contained in the coarser fan")
        })?;
        let g = ConeGeometry::new(&found.rays.iter().map(|&r| self.rays[r].clone()).collect::<Vec<_>>(), self.dim);
        if !c.rays.iter().all(|&r| g.contains(&fine.rays[r])) {
            return Err(Error::inconsistency("refinement violated: cone straddles coarser cones"));
        }
        Ok(found)
    }

    /// Fan of `V(σ)` in the quotient lattice `N / (span σ ∩ N)`.
    pub fn star(&self, sigma: &ConeRef) -> Result<Star> {
        let containing = self.max_cones_containing(sigma);
        if containing.is_empty() || self.cone_with_rays(&sigma.rays).is_none() {
            return Err(Error::validation("cone is not in the fan"));
        }
        let gens: Vec<Vec<Int>> = sigma.rays.iter().map(|&r| self.rays[r].coords().to_vec()).collect();
        let frame = LatticeFrame::new(self.dim, &gens);
        let ray_cones: Vec<ConeRef> =
            self.cones(sigma.dim + 1).into_iter().filter(|g| sigma.is_face_of(g)).collect();
        let mut rays = Vec::with_capacity(ray_cones.len());
        for g in &ray_cones {
            let extra = g.rays.iter().find(|r| !sigma.rays.contains(r)).expect("larger cone");
            rays.push(primitivize(&frame.quotient(&self.rays[*extra]))?);
        }
        let cones: Vec<Vec<usize>> = containing
            .iter()
            .map(|&m| (0..ray_cones.len()).filter(|&k| ray_cones[k].rays.iter().all(|r| self.max_cones[m].contains(r))).collect())
            .collect();
        let fan = Fan::new(self.dim - frame.rank(), rays, cones)?;
        Ok(Star { fan, frame, ray_cones })
    }

    pub fn star_fan(&self, sigma: &ConeRef) -> Result<Fan> {
        Ok(self.star(sigma)?.fan)
    }

    /// Same cones up to reordering of rays and cones.
    pub fn same_cones(&self, other: &Fan) -> bool {
        let key = |f: &Fan| -> BTreeSet<BTreeSet<LatticeVector>> {
            f.max_cones.iter().map(|c| c.iter().map(|&r| f.rays[r].clone()).collect()).collect()
        };
        self.dim == other.dim && key(self) == key(other)
    }
}

/// Primitive generator of the one-dimensional kernel of a rank `d-1` system.
fn kernel_direction(rows: &[Vec<Int>], d: usize) -> Vec<Int> {
    use crate::linalg::{kernel, Matrix};
    use crate::util::{clear_denominators, to_rat};
    let r: Vec<Vec<_>> = rows.iter().map(|x| to_rat(x)).collect();
    let k = kernel(&Matrix::from_rows(&r, d));
    clear_denominators(&k[0])
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn plane() -> Fan {
        Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[0, 2], &[1, 2]]).unwrap()
    }

    pub fn blowup() -> Fan {
        Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]], &[&[0, 3], &[3, 1], &[1, 2], &[2, 0]]).unwrap()
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn validate_examples() {
        let d = plane().validate();
        assert!(d.complete && d.simplicial && d.is_valid());
        let partial = Fan::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[0, 2]]).unwrap();
        let d = partial.validate();
        assert!(!d.complete);
        assert!(d.is_valid());
        let bad = Fan::from_i64(&[&[2, 0], &[0, 1]], &[&[0, 1]]).unwrap();
        assert!(!bad.validate().is_valid());
        let overlap = Fan::from_i64(&[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]).unwrap();
        assert!(!overlap.validate().is_valid());
    }

    #[test]
    fn cones_examples() {
        assert_eq!(plane().cones(1).len(), 3);
        assert_eq!(plane().cones(2).len(), 3);
        assert_eq!(plane().cones(0), vec![ConeRef::zero()]);
        assert_eq!(blowup().cones(2).len(), 4);
    }

    #[test]
    fn refinement_examples() {
        assert!(blowup().is_refinement(&plane()));
        assert!(!plane().is_refinement(&blowup()));
        assert!(plane().is_refinement(&plane()));
    }

    #[test]
    fn smallest_cone_examples() {
        let (p, b) = (plane(), blowup());
        let r = b.cone_with_rays(&[3]).unwrap();
        assert_eq!(p.smallest_containing_cone(&b, &r).unwrap(), ConeRef { rays: vec![0, 1], dim: 2 });
        let r = b.cone_with_rays(&[0]).unwrap();
        assert_eq!(p.smallest_containing_cone(&b, &r).unwrap(), ConeRef { rays: vec![0], dim: 1 });
        assert_eq!(p.smallest_containing_cone(&b, &ConeRef::zero()).unwrap(), ConeRef::zero());
    }

    #[test]
    fn star_examples() {
        let p = plane();
        let s = p.star_fan(&p.cone_with_rays(&[0]).unwrap()).unwrap();
        assert_eq!(s.dim(), 1);
        let mut rays = s.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![lv(&[-1]), lv(&[1])]);
        assert!(s.validate().complete);
        assert!(p.star_fan(&ConeRef::zero()).unwrap().same_cones(&p));
        let top = p.star_fan(&p.cone_with_rays(&[0, 1]).unwrap()).unwrap();
        assert_eq!(top.dim(), 0);
        assert!(top.rays().is_empty());
        assert_eq!(top.max_cones(), &[Vec::<usize>::new()]);
        assert!(top.validate().complete);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn non_simplicial_fan() {
        // fan over the faces of a cube: 6 square cones
        let mut rays = Vec::new();
        for s in [[-1i64, -1, -1], [-1, -1, 1], [-1, 1, -1], [-1, 1, 1], [1, -1, -1], [1, -1, 1], [1, 1, -1], [1, 1, 1]] {
            rays.push(lv(&s));
        }
        let mut cones = Vec::new();
        for axis in 0..3 {
            for sign in [-1i64, 1] {
                cones.push((0..8).filter(|&i| rays[i][axis] == Int::from(sign)).collect::<Vec<_>>());
            }
        }
        let f = Fan::new(3, rays, cones).unwrap();
        let d = f.validate();
        assert!(d.complete, "{:?}", d.violations);
        assert!(!d.simplicial);
        assert_eq!(f.cones(2).len(), 12);
        assert_eq!(f.cones(1).len(), 8);
        let star = f.star_fan(&f.cones(1)[0]).unwrap();
        assert_eq!(star.rays().len(), 3);
        assert!(star.validate().complete);
    }

    fn random_complete_fan() -> impl proptest::strategy::Strategy<Value = Fan> {
        use proptest::prelude::*;
        // stellar subdivisions of the projective plane at random interior points
        proptest::collection::vec((1i64..4, 1i64..4, 0usize..3), 0..3).prop_map(|steps| {
            let mut rays: Vec<LatticeVector> = vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])];
            let mut cones: Vec<Vec<usize>> = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
            for (s, t, which) in steps {
                let c = cones[which % cones.len()].clone();
                let v = rays[c[0]].scale(&Int::from(s)).add(&rays[c[1]].scale(&Int::from(t)));
                let v = primitivize(&v).unwrap();
                if rays.contains(&v) {
                    continue;
                }
                rays.push(v);
                let k = rays.len() - 1;
                cones.retain(|x| x != &c);
                cones.push(vec![c[0], k]);
                cones.push(vec![k, c[1]]);
            }
            Fan::new(2, rays, cones).unwrap()
        })
    }

    proptest::proptest! {
        #[test]
        fn star_of_complete_is_complete(f in random_complete_fan()) {
            proptest::prop_assert!(f.validate().complete);
            for k in 0..=2 {
                for c in f.cones(k) {
                    let s = f.star_fan(&c).unwrap();
                    proptest::prop_assert!(s.validate().complete);
                    let n = f.cones(k + 1).into_iter().filter(|g| c.is_face_of(g)).count();
                    proptest::prop_assert_eq!(s.rays().len(), n);
                }
            }
        }

        #[test]
        fn mutual_refinement_means_equal(f in random_complete_fan()) {
            let p = plane();
            proptest::prop_assert!(f.is_refinement(&p));
            if p.is_refinement(&f) {
                proptest::prop_assert!(f.same_cones(&p));
            }
        }
    }
}
