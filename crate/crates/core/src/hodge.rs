//! Lattice-point formulas for Hodge numbers of hypersurfaces: subdivision
//! counts `a_k(γ)`, face-level e-numbers, `h^{d−1−p,2}`, Batyrev's `h^{2,1}`
//! and the mirror comparison built on them.
//!
//! Cones `γ` of `Σ_X`, the normal fan of `Δ`, are identified with the faces
//! `Γ_γ` of `Δ`; `dim γ = d − dim Γ_γ`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{dot_rat, LatticeVector};
use crate::linalg::{solve, Matrix};
use crate::polytope::{Face, LatticePolytope};
use crate::util::to_rat;
use crate::{Int, Rat};

const HP2: &str = "h^{d-1-p,2} lattice-point formula";
const BATYREV: &str = "Batyrev h^{2,1} formula";
const MPCP: &str = "maximal projective crepant partial resolution";

/// `a_1(γ)` and `a_2(γ)` indexed like `Δ.all_faces()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCounts {
    pub a1: Vec<usize>,
    /// Unknown when only the MPCP shortcut for `a_1` was used.
    pub a2: Option<Vec<usize>>,
}

fn face_index(delta: &LatticePolytope) -> HashMap<&[usize], usize> {
    delta.all_faces().iter().enumerate().map(|(i, f)| (f.vertices.as_slice(), i)).collect()
}

fn minimizing_vertices(delta: &LatticePolytope, x: &[Int]) -> Vec<usize> {
    let vals: Vec<Rat> = delta.vertices().iter().map(|v| dot_rat(v, x)).collect();
    let min = vals.iter().min().expect("nonempty polytope").clone();
    (0..vals.len()).filter(|&i| vals[i] == min).collect()
}

/// `Γ_γ` for the smallest cone `γ` of the normal fan containing `x`.
pub fn cone_face(delta: &LatticePolytope, x: &[Int]) -> Result<Face> {
    let vs = minimizing_vertices(delta, x);
    delta
        .all_faces()
        .iter()
        .find(|f| f.vertices == vs)
        .cloned()
        .ok_or_else(|| Error::inconsistency("minimizing vertex set is not a face"))
}

/// Counts for an explicit simplicial refinement `Σ` of the normal fan of `Δ`.
pub fn subdivision_counts(sigma: &Fan, delta: &LatticePolytope) -> Result<SubdivisionCounts> {
    if !delta.is_full_dimensional() || sigma.dim() != delta.ambient() {
        return Err(Error::validation("fan and polytope dimensions differ or the polytope is not full-dimensional"));
    }
    if !sigma.is_complete() {
        return Err(Error::validation("the refining fan is not complete"));
    }
    let idx = face_index(delta);
    let rays = sigma.rays();
    let face_of = |x: &[Int]| -> Result<usize> {
        let vs = minimizing_vertices(delta, x);
        idx.get(vs.as_slice()).copied().ok_or_else(|| Error::inconsistency("minimizing vertex set is not a face"))
    };
    for c in sigma.max_cones() {
        let bary: Vec<Int> = (0..sigma.dim()).map(|j| c.iter().map(|&r| rays[r][j].clone()).sum()).collect();
        let vs = minimizing_vertices(delta, &bary);
        if vs.len() != 1 || !c.iter().all(|&r| minimizing_vertices(delta, &rays[r]).contains(&vs[0])) {
            return Err(Error::validation("the fan does not refine the normal fan of the polytope"));
        }
    }
    let n = delta.all_faces().len();
    let mut a1 = vec![0; n];
    for r in rays {
        a1[face_of(r)?] += 1;
    }
    let mut a2 = vec![0; n];
    for c in sigma.cones(2) {
        let x: Vec<Int> = (0..sigma.dim()).map(|j| &rays[c.rays[0]][j] + &rays[c.rays[1]][j]).collect();
        a2[face_of(&x)?] += 1;
    }
    Ok(SubdivisionCounts { a1, a2: Some(a2) })
}

fn require_reflexive(p: &LatticePolytope) -> Result<()> {
    if !p.is_reflexive() {
        return Err(Error::precondition("polytope is not reflexive", MPCP));
    }
    Ok(())
}

fn is_simple(p: &LatticePolytope) -> bool {
    let d = p.dim().unwrap_or(0);
    (0..p.vertices().len()).all(|v| p.facets().iter().filter(|f| f.vertices.contains(&v)).count() == d)
}

/// Whether the only lattice points of `p` are its vertices and the origin.
pub fn only_vertices_and_origin(p: &LatticePolytope) -> bool {
    p.lattice_points().len() == p.vertices().len() + 1
}

/// `a_1(γ) = l*(Γ*_γ)` for a reflexive `Δ` and any MPCP subdivision. `a_2` is
/// filled in only when no subdivision is needed: `Δ*` has no lattice points
/// beyond its vertices and the origin and `Δ` is simple.
pub fn mpcp_counts(delta: &LatticePolytope) -> Result<SubdivisionCounts> {
    require_reflexive(delta)?;
    let dual = delta.dual_polytope()?;
    let d = delta.ambient();
    let faces = delta.all_faces();
    let a1 = faces
        .par_iter()
        .map(|f| {
            if f.dim == d {
                return Ok(0);
            }
            let g = delta.dual_face_in(&dual, f)?;
            Ok(dual.face_polytope(&g)?.relative_interior_points().len())
        })
        .collect::<Result<Vec<_>>>()?;
    let a2 = (only_vertices_and_origin(&dual) && is_simple(delta))
        .then(|| faces.iter().map(|f| usize::from(f.dim + 2 == d)).collect());
    Ok(SubdivisionCounts { a1, a2 })
}

/// `l*` of a face and of its double, memoized per face index.
struct FaceCounts<'p> {
    delta: &'p LatticePolytope,
    interior: Vec<std::sync::OnceLock<usize>>,
    double: Vec<std::sync::OnceLock<usize>>,
}

impl<'p> FaceCounts<'p> {
    fn new(delta: &'p LatticePolytope) -> Self {
        let n = delta.all_faces().len();
        FaceCounts { delta, interior: (0..n).map(|_| Default::default()).collect(), double: (0..n).map(|_| Default::default()).collect() }
    }

    fn l_star(&self, i: usize) -> Result<usize> {
        if let Some(v) = self.interior[i].get() {
            return Ok(*v);
        }
        let v = self.delta.face_polytope(&self.delta.all_faces()[i])?.relative_interior_points().len();
        Ok(*self.interior[i].get_or_init(|| v))
    }

    fn l_star_double(&self, i: usize) -> Result<usize> {
        if let Some(v) = self.double[i].get() {
            return Ok(*v);
        }
        let v = self.delta.face_polytope(&self.delta.all_faces()[i])?.dilate(&Int::from(2))?.relative_interior_points().len();
        Ok(*self.double[i].get_or_init(|| v))
    }

    /// Faces of one dimension less contained in face `i`.
    fn facets_of(&self, i: usize) -> Vec<usize> {
        let faces = self.delta.all_faces();
        let f = &faces[i];
        (0..faces.len())
            .filter(|&j| faces[j].dim + 1 == f.dim && faces[j].vertices.iter().all(|v| f.vertices.contains(v)))
            .collect()
    }

    /// Faces of one dimension more containing face `i`.
    fn cofacets_of(&self, i: usize) -> Vec<usize> {
        let faces = self.delta.all_faces();
        let f = &faces[i];
        (0..faces.len())
            .filter(|&j| faces[j].dim == f.dim + 1 && f.vertices.iter().all(|v| faces[j].vertices.contains(v)))
            .collect()
    }
}

fn sign(k: usize) -> Int {
    if k.is_multiple_of(2) {
        Int::one()
    } else {
        -Int::one()
    }
}

/// Which of the three face-level e-number displays applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EFaceValue {
    /// `e^{d−2−p,1}(Y ∩ T_γ)` for `dim γ = p`.
    TopRow(Int),
    /// `e^{d−3−p,0}(Y ∩ T_γ)` for `dim γ = p + 1`.
    FacetSum(Int),
    /// `e^{d−3−p,0}(Y ∩ T_γ)` for `dim γ = p + 2`.
    Interior(Int),
}

impl EFaceValue {
    pub fn value(&self) -> &Int {
        match self {
            EFaceValue::TopRow(v) | EFaceValue::FacetSum(v) | EFaceValue::Interior(v) => v,
        }
    }
}

fn e_value(counts: &FaceCounts<'_>, i: usize, d: usize, p: usize) -> Result<EFaceValue> {
    let f = &counts.delta.all_faces()[i];
    let cone_dim = d - f.dim;
    let facet_sum = || -> Result<usize> { counts.facets_of(i).into_iter().map(|j| counts.l_star(j)).sum() };
    if cone_dim == p {
        let v = Int::from(counts.l_star_double(i)?) - Int::from(d - p + 1) * Int::from(counts.l_star(i)?) - Int::from(facet_sum()?);
        Ok(EFaceValue::TopRow(sign(d - p - 1) * v))
    } else if cone_dim == p + 1 {
        Ok(EFaceValue::FacetSum(sign(d - p - 2) * Int::from(facet_sum()?)))
    } else if cone_dim == p + 2 {
        Ok(EFaceValue::Interior(sign(d - p - 3) * Int::from(counts.l_star(i)?)))
    } else {
        Err(Error::precondition(format!("face of dimension {} matches no display for p = {p}", f.dim), HP2))
    }
}

/// The e-number of `Y ∩ T_γ` for `Γ_γ = face`, with `d = dim Δ`.
pub fn e_face_values(delta: &LatticePolytope, face: &Face, p: usize) -> Result<EFaceValue> {
    let d = delta.dim().ok_or_else(|| Error::validation("empty polytope"))?;
    if face.dim > d || d < p + face.dim {
        return Err(Error::precondition("face dimension out of range", HP2));
    }
    let i = delta
        .all_faces()
        .iter()
        .position(|f| f == face)
        .ok_or_else(|| Error::validation("not a face of the polytope"))?;
    e_value(&FaceCounts::new(delta), i, d, p)
}

/// A face contributing a nonzero term to `h^{d−1−p,2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTerm {
    pub face: Face,
    pub cone_dim: usize,
    pub contribution: Int,
}

/// Value of `h^{d−1−p,2}` with its nonzero face terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeValue {
    pub p: usize,
    pub d: usize,
    pub value: Int,
    pub terms: Vec<FaceTerm>,
}

impl HodgeValue {
    /// `(d−1−p, 2)`.
    pub fn indices(&self) -> (usize, usize) {
        (self.d - 1 - self.p, 2)
    }
}

/// `h^{d−1−p,2}` from counts `a_k(γ)` on the faces of `Δ`, for `p > 2`, `p ≠ d − 3`.
pub fn h_p2_with_counts(delta: &LatticePolytope, counts: &SubdivisionCounts, p: usize) -> Result<HodgeValue> {
    let d = delta.ambient();
    if !delta.is_full_dimensional() {
        return Err(Error::validation("polytope is not full-dimensional"));
    }
    if p <= 2 || p + 3 == d || p > d {
        return Err(Error::precondition(format!("requires p > 2 and p ≠ d − 3 (p = {p}, d = {d})"), HP2));
    }
    let faces = delta.all_faces();
    if counts.a1.len() != faces.len() || counts.a2.as_ref().is_some_and(|a| a.len() != faces.len()) {
        return Err(Error::validation("counts do not match the faces of the polytope"));
    }
    let fc = FaceCounts::new(delta);
    let per_face: Vec<Option<FaceTerm>> = (0..faces.len())
        .into_par_iter()
        .map(|i| {
            let f = &faces[i];
            let cone_dim = d - f.dim;
            let contribution = if cone_dim == p {
                if counts.a1[i] == 0 {
                    return Ok(None);
                }
                let e = e_value(&fc, i, d, p)?;
                Int::from(counts.a1[i]) * sign(d - p - 1) * e.value()
            } else if cone_dim == p + 2 {
                let l = fc.l_star(i)?;
                if l == 0 {
                    return Ok(None);
                }
                let a2 = counts.a2.as_ref().ok_or_else(|| {
                    Error::precondition("a_2 is needed on a face with interior points but is unknown", HP2)
                })?;
                let tau: usize = fc.cofacets_of(i).into_iter().map(|j| counts.a1[j]).sum();
                Int::from(l) * (Int::from(a2[i]) - Int::from(p + 1) * Int::from(counts.a1[i]) - Int::from(tau))
            } else {
                return Ok(None);
            };
            Ok((!contribution.is_zero()).then(|| FaceTerm { face: f.clone(), cone_dim, contribution }))
        })
        .collect::<Result<_>>()?;
    let terms: Vec<FaceTerm> = per_face.into_iter().flatten().collect();
    let value: Int = terms.iter().map(|t| &t.contribution).sum();
    if value.is_negative() {
        return Err(Error::inconsistency(format!("h^{{{},2}} evaluated to {value}", d - 1 - p)));
    }
    Ok(HodgeValue { p, d, value, terms })
}

/// `h^{d−1−p,2}` of the hypersurface with Newton polytope `Δ` in the toric
/// variety of a simplicial refinement `Σ` of the normal fan of `Δ`.
pub fn h_p2(delta: &LatticePolytope, sigma: &Fan, p: usize) -> Result<HodgeValue> {
    h_p2_with_counts(delta, &subdivision_counts(sigma, delta)?, p)
}

/// `l(Δ) − 5 − Σ_{codim θ = 1} l*(θ) + Σ_{codim θ = 2} l*(θ)·l*(θ*)`.
pub fn h21_batyrev(delta: &LatticePolytope) -> Result<Int> {
    if delta.ambient() != 4 || !delta.is_reflexive() {
        return Err(Error::precondition("requires a reflexive polytope of dimension 4", BATYREV));
    }
    let dual = delta.dual_polytope()?;
    let mut h = Int::from(delta.lattice_points().len()) - Int::from(5);
    for f in delta.faces(3)? {
        h -= Int::from(delta.face_polytope(&f)?.relative_interior_points().len());
    }
    for f in delta.faces(2)? {
        let inner = delta.face_polytope(&f)?.relative_interior_points().len();
        if inner > 0 {
            let g = delta.dual_face_in(&dual, &f)?;
            h += Int::from(inner * dual.face_polytope(&g)?.relative_interior_points().len());
        }
    }
    Ok(h)
}

/// A contributing face on one side of the mirror comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub face_vertices: Vec<Vec<Rat>>,
    pub dual_face_vertices: Vec<Vec<Rat>>,
    /// Interior points of the doubled face.
    pub double_interior: Vec<LatticeVector>,
    /// Interior points of the dual face.
    pub dual_interior: Vec<LatticeVector>,
    pub contribution: Int,
}

/// `h^{d−1−p,2}` of the hypersurface with Newton polytope `polytope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeReport {
    pub name: String,
    pub value: Int,
    /// Whether `a_2` was known exactly or only `a_1` via the MPCP shortcut.
    pub a2_exact: bool,
    pub lattice_points: usize,
    pub witnesses: Vec<Witness>,
}

/// Both sides of the comparison for `Δ` and `Δ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    pub d: usize,
    pub p: usize,
    pub dual_has_only_vertices_and_origin: bool,
    pub delta: HodgeReport,
    pub dual: HodgeReport,
}

impl MirrorReport {
    pub fn values_differ(&self) -> bool {
        self.delta.value != self.dual.value
    }
}

fn side_report(poly: &LatticePolytope, dual: &LatticePolytope, p: usize, name: &str) -> Result<HodgeReport> {
    let counts = mpcp_counts(poly)?;
    let hv = h_p2_with_counts(poly, &counts, p)?;
    let verts = |q: &LatticePolytope, f: &Face| f.vertices.iter().map(|&i| q.vertices()[i].clone()).collect::<Vec<_>>();
    let witnesses = hv
        .terms
        .iter()
        .map(|t| {
            let g = poly.dual_face_in(dual, &t.face)?;
            let fp = poly.face_polytope(&t.face)?;
            Ok(Witness {
                face_vertices: verts(poly, &t.face),
                dual_face_vertices: verts(dual, &g),
                double_interior: fp.dilate(&Int::from(2))?.relative_interior_points(),
                dual_interior: dual.face_polytope(&g)?.relative_interior_points(),
                contribution: t.contribution.clone(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(HodgeReport {
        name: format!("h^{{{},2}}({name})", hv.d - 1 - p),
        value: hv.value,
        a2_exact: counts.a2.is_some(),
        lattice_points: poly.lattice_points().len(),
        witnesses,
    })
}

/// `h^{d−1−p,2}` for the hypersurfaces with Newton polytopes `Δ` and `Δ*`.
pub fn mirror_check(delta: &LatticePolytope, p: usize) -> Result<MirrorReport> {
    require_reflexive(delta)?;
    let dual = delta.dual_polytope()?;
    Ok(MirrorReport {
        d: delta.ambient(),
        p,
        dual_has_only_vertices_and_origin: only_vertices_and_origin(&dual),
        delta: side_report(delta, &dual, p, "Δ")?,
        dual: side_report(&dual, delta, p, "Δ*")?,
    })
}

/// Simplicial fan over a triangulation of `∂Δ*` whose rays are all nonzero
/// lattice points of `Δ*` in lexicographic order; refines the normal fan of `Δ`.
pub fn triangulation_helper(delta_star: &LatticePolytope) -> Result<Fan> {
    let n = delta_star.lattice_points().len().saturating_sub(1);
    triangulation_helper_with_order(delta_star, &(0..n).collect::<Vec<_>>())
}

/// As [`triangulation_helper`], with `priority` a permutation of the ray
/// indices: facets are pulled and the remaining points inserted by stellar
/// subdivision in this order.
pub fn triangulation_helper_with_order(delta_star: &LatticePolytope, priority: &[usize]) -> Result<Fan> {
    require_reflexive(delta_star)?;
    let d = delta_star.ambient();
    let points: Vec<LatticeVector> = delta_star.lattice_points().into_iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
    let mut sorted = priority.to_vec();
    sorted.sort_unstable();
    if sorted != (0..points.len()).collect::<Vec<_>>() {
        return Err(Error::validation("priority is not a permutation of the lattice points"));
    }
    let rank: Vec<usize> = {
        let mut r = vec![0; points.len()];
        for (k, &i) in priority.iter().enumerate() {
            r[i] = k;
        }
        r
    };
    let index: HashMap<Vec<Rat>, usize> = points.iter().enumerate().map(|(i, p)| (to_rat(p), i)).collect();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for facet in delta_star.faces(d - 1)? {
        let fp = delta_star.face_polytope(&facet)?;
        let global: Vec<usize> = fp.vertices().iter().map(|v| index[v]).collect();
        let mut order: Vec<usize> = (0..global.len()).collect();
        order.sort_by_key(|&k| rank[global[k]]);
        for s in fp.pulling_triangulation(&order) {
            let mut g: Vec<usize> = s.into_iter().map(|k| global[k]).collect();
            g.sort_unstable();
            simplices.push(g);
        }
    }
    let is_vertex: Vec<bool> = {
        let mut v = vec![false; points.len()];
        for x in delta_star.vertices() {
            v[index[x]] = true;
        }
        v
    };
    let carrier = |s: &[usize], q: &LatticeVector| -> Option<Vec<usize>> {
        let rows: Vec<Vec<Rat>> = (0..d).map(|j| s.iter().map(|&i| Rat::from_integer(points[i][j].clone())).collect()).collect();
        let mu = solve(&Matrix::from_rows(&rows, d), &to_rat(q))?;
        if mu.iter().any(|x| x.is_negative()) {
            return None;
        }
        Some(s.iter().zip(&mu).filter(|(_, x)| x.is_positive()).map(|(&i, _)| i).collect())
    };
    for &q in priority.iter().filter(|&&i| !is_vertex[i]) {
        let Some(c) = simplices.iter().find_map(|s| carrier(s, &points[q])) else {
            return Err(Error::inconsistency("boundary point outside the triangulation"));
        };
        let (hit, keep): (Vec<_>, Vec<_>) = simplices.into_iter().partition(|s| c.iter().all(|v| s.contains(v)));
        simplices = keep;
        for s in hit {
            for v in &c {
                let mut t: Vec<usize> = s.iter().copied().filter(|x| x != v).collect();
                t.push(q);
                t.sort_unstable();
                simplices.push(t);
            }
        }
    }
    simplices.sort();
    let fan = Fan::new(d, points, simplices)?;
    let diag = fan.validate();
    if !diag.is_valid() || !diag.complete || !diag.simplicial {
        return Err(Error::inconsistency(format!("triangulation helper produced an invalid fan: {:?}", diag.violations)));
    }
    Ok(fan)
}
