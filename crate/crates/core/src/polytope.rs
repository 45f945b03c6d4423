//! Lattice polytopes in `M_R`: conversion between inequality and vertex
//! descriptions, the face lattice, lattice point enumeration, normalized
//! volumes, dilation, reflexive duality and normal fans.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cone::cofactor_normal;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{dot, dot_rat, gcd_all, primitivize, LatticeFrame, LatticeVector};
use crate::linalg::{kernel, rank, solve, Matrix};
use crate::util::{clear_denominators, to_int, to_rat};
use crate::{Int, Rat};

/// `⟨m, normal⟩ ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub normal: LatticeVector,
    pub rhs: Int,
}

impl Inequality {
    pub fn new(normal: LatticeVector, rhs: Int) -> Self {
        Inequality { normal, rhs }
    }

    pub fn from_i64(normal: &[i64], rhs: i64) -> Self {
        Inequality { normal: LatticeVector::from_i64(normal), rhs: Int::from(rhs) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    ambient: usize,
    inequalities: Vec<Inequality>,
}

impl HPolytope {
    pub fn new(ambient: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        for (i, q) in inequalities.iter().enumerate() {
            if q.normal.dim() != ambient {
                return Err(Error::validation(format!(
                    "inequality {i} has normal of length {}, expected {ambient}",
                    q.normal.dim()
                )));
            }
            if q.normal.is_zero() {
                return Err(Error::validation(format!("inequality {i} has zero normal")));
            }
        }
        Ok(HPolytope { ambient, inequalities })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.inequalities
            .iter()
            .all(|q| dot_rat(x, &q.normal) >= Rat::from_integer(q.rhs.clone()))
    }
}

/// A facet `⟨m, normal⟩ ≥ rhs` with its vertex incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integral normal; unique for full-dimensional polytopes.
    pub normal: Vec<Int>,
    pub rhs: Rat,
    pub vertices: Vec<usize>,
}

/// A face given by the indices of its vertices in the parent polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<Vec<Rat>>,
    dim: Option<usize>,
    frame: LatticeFrame,
    /// `⟨normal, m⟩ = value` on the affine span.
    equations: Vec<(Vec<Int>, Rat)>,
    facets: Vec<Facet>,
    integral: bool,
    face_lattice: OnceLock<Vec<Face>>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

/// Normals with rational rhs made integral and primitive.
fn normalize_inequality(normal: &[Rat], rhs: &Rat) -> (Vec<Int>, Rat) {
    let n = clear_denominators(normal);
    let scale = {
        let l = normal.iter().zip(&n).find(|(a, _)| !a.is_zero()).map(|(a, b)| Rat::from_integer(b.clone()) / a);
        l.unwrap_or_else(Rat::one)
    };
    let g = gcd_all(&n);
    let n: Vec<Int> = n.iter().map(|x| x / &g).collect();
    (n, rhs * scale / Rat::from_integer(g))
}

fn affine_rank(points: &[&Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rat>> =
        points[1..].iter().map(|p| p.iter().zip(points[0].iter()).map(|(a, b)| a - b).collect()).collect();
    rank(&Matrix::from_rows(&rows, points[0].len()))
}

impl LatticePolytope {
    pub fn empty(ambient: usize) -> Self {
        LatticePolytope {
            ambient,
            vertices: Vec::new(),
            dim: None,
            frame: LatticeFrame::new(ambient, &[]),
            equations: Vec::new(),
            facets: Vec::new(),
            integral: true,
            face_lattice: OnceLock::new(),
        }
    }

    /// Convex hull of a finite point set.
    pub fn from_points(ambient: usize, points: &[Vec<Rat>]) -> Result<Self> {
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::validation("point of wrong length"));
        }
        if points.is_empty() {
            return Ok(Self::empty(ambient));
        }
        let pts: Vec<Vec<Rat>> = points.iter().cloned().sorted().dedup().collect();
        let frame = direction_frame(ambient, &pts);
        let k = frame.rank();
        let p0 = pts[0].clone();
        let local: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| {
                let diff: Vec<Rat> = p.iter().zip(&p0).map(|(a, b)| a - b).collect();
                frame.coords_rat(&diff)[..k].to_vec()
            })
            .collect();
        let mut candidates: Vec<(Vec<Int>, Rat)> = Vec::new();
        if k >= 1 {
            let mut seen = BTreeSet::new();
            for subset in (0..pts.len()).combinations(k) {
                let rows: Vec<Vec<Int>> = subset[1..]
                    .iter()
                    .map(|&i| {
                        let d: Vec<Rat> =
                            local[i].iter().zip(&local[subset[0]]).map(|(a, b)| a - b).collect();
                        clear_denominators(&d)
                    })
                    .collect();
                let u = cofactor_normal(&rows, k);
                if u.iter().all(Zero::is_zero) {
                    continue;
                }
                let vals: Vec<Rat> = local.iter().map(|y| dot_rat(y, &u)).collect();
                let base = vals[subset[0]].clone();
                let above = vals.iter().any(|v| *v > base);
                let below = vals.iter().any(|v| *v < base);
                if above && below {
                    continue;
                }
                let u: Vec<Int> = if below { u.iter().map(|x| -x.clone()).collect() } else { u };
                let n = frame.span_dual_lift(&u);
                let g = gcd_all(&n);
                let n: Vec<Int> = n.iter().map(|x| x / &g).collect();
                if seen.insert(n.clone()) {
                    let rhs = pts.iter().map(|p| dot_rat(p, &n)).min().expect("nonempty");
                    candidates.push((n, rhs));
                }
            }
        }
        Self::from_vertices_and_candidates(ambient, pts, candidates)
    }

    /// `points` must lie in the polytope, include all vertices, and `candidates`
    /// must be valid inequalities including every facet-defining one.
    fn from_vertices_and_candidates(
        ambient: usize,
        points: Vec<Vec<Rat>>,
        candidates: Vec<(Vec<Int>, Rat)>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Ok(Self::empty(ambient));
        }
        let pts: Vec<Vec<Rat>> = points.into_iter().sorted().dedup().collect();
        let frame = direction_frame(ambient, &pts);
        let k = frame.rank();
        let equations: Vec<(Vec<Int>, Rat)> = (0..ambient - k)
            .map(|j| {
                let mut e = vec![Int::zero(); ambient - k];
                e[j] = Int::one();
                let n = frame.dual_lift(&e);
                let c = dot_rat(&pts[0], &n);
                (n, c)
            })
            .collect();
        let mut facets: Vec<(Vec<Int>, Rat, Vec<usize>)> = Vec::new();
        if k >= 1 {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for (n, c) in &candidates {
                let vals: Vec<Rat> = pts.iter().map(|p| dot_rat(p, n)).collect();
                if vals.iter().any(|v| v < c) {
                    return Err(Error::inconsistency("candidate inequality violated by a vertex"));
                }
                let tight: Vec<usize> = (0..pts.len()).filter(|&i| vals[i] == *c).collect();
                if tight.len() < k || tight.len() == pts.len() {
                    continue;
                }
                let tp: Vec<&Vec<Rat>> = tight.iter().map(|&i| &pts[i]).collect();
                if affine_rank(&tp) != k - 1 || !seen.insert(tight.clone()) {
                    continue;
                }
                let (n, c) = normalize_inequality(&to_rat(n), c);
                facets.push((n, c, tight));
            }
        }
        // drop points that are not extreme
        let keep: Vec<usize> = (0..pts.len())
            .filter(|&i| {
                if k == 0 {
                    return true;
                }
                let mut common: Vec<usize> = (0..pts.len()).collect();
                for (_, _, t) in facets.iter().filter(|f| f.2.contains(&i)) {
                    common.retain(|j| t.contains(j));
                }
                common == vec![i]
            })
            .collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let vertices: Vec<Vec<Rat>> = keep.iter().map(|&i| pts[i].clone()).collect();
        let mut facets: Vec<Facet> = facets
            .into_iter()
            .map(|(normal, rhs, t)| Facet {
                normal,
                rhs,
                vertices: t.iter().filter_map(|i| remap.get(i).copied()).collect(),
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.rhs.cmp(&b.rhs)));
        let integral = vertices.iter().all(|v| v.iter().all(|x| x.is_integer()));
        Ok(LatticePolytope {
            ambient,
            vertices,
            dim: Some(k),
            frame,
            equations,
            facets,
            integral,
            face_lattice: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == Some(self.ambient)
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// Vertices as lattice vectors, or an error for rational polytopes.
    pub fn lattice_vertices(&self) -> Result<Vec<LatticeVector>> {
        self.require_lattice()?;
        Ok(self.vertices.iter().map(|v| LatticeVector::new(to_int(v).expect("integral"))).collect())
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<Int>, Rat)] {
        &self.equations
    }

    /// Basis of the lattice of directions of the affine span.
    pub fn affine_lattice(&self) -> Vec<Vec<Int>> {
        self.frame.basis()
    }

    pub fn is_lattice_polytope(&self) -> bool {
        self.integral
    }

    pub fn require_lattice(&self) -> Result<()> {
        if self.integral {
            Ok(())
        } else {
            Err(Error::NotLattice("polytope has non-integral vertices".into()))
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.is_empty()
            && self.equations.iter().all(|(n, c)| dot_rat(x, n) == *c)
            && self.facets.iter().all(|f| dot_rat(x, &f.normal) >= f.rhs)
    }

    fn constraints(&self, strict: bool) -> Option<Vec<(Vec<Int>, Int, bool)>> {
        let mut out = Vec::new();
        for (n, c) in &self.equations {
            if !c.is_integer() {
                return None;
            }
            out.push((n.clone(), c.to_integer(), true));
        }
        for f in &self.facets {
            let bound = if strict { f.rhs.floor().to_integer() + Int::one() } else { f.rhs.ceil().to_integer() };
            out.push((f.normal.clone(), bound, false));
        }
        Some(out)
    }

    fn enumerate(&self, strict: bool) -> Vec<LatticeVector> {
        if self.is_empty() {
            return Vec::new();
        }
        let Some(cons) = self.constraints(strict) else { return Vec::new() };
        let d = self.ambient;
        if d == 0 {
            return vec![LatticeVector::new(vec![])];
        }
        let lo: Vec<Int> =
            (0..d).map(|j| self.vertices.iter().map(|v| v[j].ceil().to_integer()).min().unwrap()).collect();
        let hi: Vec<Int> =
            (0..d).map(|j| self.vertices.iter().map(|v| v[j].floor().to_integer()).max().unwrap()).collect();
        if (0..d).any(|j| lo[j] > hi[j]) {
            return Vec::new();
        }
        let scan = BoxScan::new(&lo, &hi, cons);
        let firsts: Vec<Int> = num_iter(&lo[0], &hi[0]);
        let chunks: Vec<Vec<LatticeVector>> = firsts
            .par_iter()
            .map(|x0| {
                let mut out = Vec::new();
                let mut point = vec![x0.clone()];
                let partial: Vec<Int> = scan.cons.iter().map(|(n, _, _)| &n[0] * x0).collect();
                scan.descend(1, &mut point, &partial, &mut out);
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        self.enumerate(false)
    }

    /// Lattice points in the relative interior, in lexicographic order.
    pub fn relative_interior_points(&self) -> Vec<LatticeVector> {
        self.enumerate(true)
    }

    /// All nonempty faces, the polytope itself included.
    pub fn all_faces(&self) -> &[Face] {
        self.face_lattice.get_or_init(|| {
            let Some(k) = self.dim else { return Vec::new() };
            let n = self.vertices.len();
            let full: Vec<usize> = (0..n).collect();
            let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
            all.insert(full.clone());
            let mut frontier = vec![full];
            while let Some(face) = frontier.pop() {
                for f in &self.facets {
                    let meet: Vec<usize> = face.iter().copied().filter(|i| f.vertices.contains(i)).collect();
                    if !meet.is_empty() && meet.len() < face.len() && all.insert(meet.clone()) {
                        frontier.push(meet);
                    }
                }
            }
            let mut faces: Vec<Face> = all
                .into_iter()
                .map(|vs| {
                    let dim = if vs.len() == n {
                        k
                    } else {
                        let pts: Vec<&Vec<Rat>> = vs.iter().map(|&i| &self.vertices[i]).collect();
                        affine_rank(&pts)
                    };
                    Face { vertices: vs, dim }
                })
                .collect();
            faces.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.vertices.cmp(&b.vertices)));
            faces
        })
    }

    pub fn faces(&self, k: usize) -> Result<Vec<Face>> {
        match self.dim {
            Some(d) if k <= d => Ok(self.all_faces().iter().filter(|f| f.dim == k).cloned().collect()),
            _ => Err(Error::validation(format!("face dimension {k} out of range"))),
        }
    }

    /// The face as a polytope in its own right.
    pub fn face_polytope(&self, face: &Face) -> Result<LatticePolytope> {
        let pts: Vec<Vec<Rat>> = face.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        let cands: Vec<(Vec<Int>, Rat)> = self.facets.iter().map(|f| (f.normal.clone(), f.rhs.clone())).collect();
        Self::from_vertices_and_candidates(self.ambient, pts, cands)
    }

    /// Face of the vertices satisfying `⟨m, n⟩ = value` for each given pair,
    /// where all such functionals are assumed to be valid inequalities.
    pub fn face_where_tight(&self, tight: &[(Vec<Int>, Rat)]) -> Option<Face> {
        let vs: Vec<usize> = (0..self.vertices.len())
            .filter(|&i| tight.iter().all(|(n, c)| dot_rat(&self.vertices[i], n) == *c))
            .collect();
        if vs.is_empty() {
            return None;
        }
        self.all_faces().iter().find(|f| f.vertices == vs).cloned()
    }

    fn local_coords(&self) -> Vec<Vec<Rat>> {
        let k = self.dim.unwrap_or(0);
        let p0 = &self.vertices[0];
        self.vertices
            .iter()
            .map(|p| {
                let diff: Vec<Rat> = p.iter().zip(p0).map(|(a, b)| a - b).collect();
                self.frame.coords_rat(&diff)[..k].to_vec()
            })
            .collect()
    }

    /// Simplices of the pulling triangulation for the given vertex priority
    /// (earlier vertices are pulled first).
    pub fn pulling_triangulation(&self, order: &[usize]) -> Vec<Vec<usize>> {
        let Some(k) = self.dim else { return Vec::new() };
        let rank_of: HashMap<usize, usize> = order.iter().enumerate().map(|(r, &v)| (v, r)).collect();
        let faces = self.all_faces();
        let mut memo: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
        let full = Face { vertices: (0..self.vertices.len()).collect(), dim: k };
        pull(&full, faces, &rank_of, &mut memo)
    }

    /// `k! vol_k` measured against the lattice of the affine span.
    pub fn normalized_volume(&self) -> Rat {
        let order: Vec<usize> = (0..self.vertices.len()).collect();
        self.normalized_volume_with(&order)
    }

    pub fn normalized_volume_with(&self, order: &[usize]) -> Rat {
        let Some(k) = self.dim else { return Rat::zero() };
        if k == 0 {
            return Rat::one();
        }
        let local = self.local_coords();
        let simplices = if self.vertices.len() == k + 1 {
            vec![(0..=k).collect()]
        } else {
            self.pulling_triangulation(order)
        };
        simplices.iter().map(|s| simplex_volume(&local, s)).sum()
    }

    pub fn dilate(&self, k: &Int) -> Result<LatticePolytope> {
        if !k.is_positive() {
            return Err(Error::validation("dilation factor must be positive"));
        }
        let kr = Rat::from_integer(k.clone());
        let mut p = self.clone();
        p.vertices = self.vertices.iter().map(|v| v.iter().map(|x| x * &kr).collect()).collect();
        p.equations = self.equations.iter().map(|(n, c)| (n.clone(), c * &kr)).collect();
        for f in p.facets.iter_mut() {
            f.rhs = &f.rhs * &kr;
        }
        p.integral = p.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()));
        p.face_lattice = OnceLock::new();
        Ok(p)
    }

    fn origin_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.rhs.is_negative())
    }

    pub fn is_reflexive(&self) -> bool {
        self.integral
            && self.origin_interior()
            && self.facets.iter().all(|f| f.rhs == -Rat::one())
    }

    /// `{y : ⟨x, y⟩ ≥ −1 for all x in p}`.
    pub fn dual_polytope(&self) -> Result<LatticePolytope> {
        if !self.origin_interior() {
            return Err(Error::precondition(
                "the origin must be an interior point of a full-dimensional polytope",
                "polar duality",
            ));
        }
        let pts: Vec<Vec<Rat>> = self
            .facets
            .iter()
            .map(|f| {
                let s = -f.rhs.clone();
                f.normal.iter().map(|x| Rat::from_integer(x.clone()) / &s).collect()
            })
            .collect();
        let cands: Vec<(Vec<Int>, Rat)> =
            self.vertices.iter().map(|v| normalize_inequality(v, &-Rat::one())).collect();
        Self::from_vertices_and_candidates(self.ambient, pts, cands)
    }

    /// The dual face inside a precomputed dual polytope.
    pub fn dual_face_in(&self, dual: &LatticePolytope, face: &Face) -> Result<Face> {
        if !self.is_reflexive() {
            return Err(Error::precondition("polytope is not reflexive", "reflexive duality"));
        }
        let tight: Vec<(Vec<Int>, Rat)> = face
            .vertices
            .iter()
            .map(|&i| (to_int(&self.vertices[i]).expect("integral"), -Rat::one()))
            .collect();
        dual.face_where_tight(&tight)
            .ok_or_else(|| Error::inconsistency("dual face is empty"))
    }

    pub fn dual_face(&self, face: &Face) -> Result<Face> {
        let dual = self.dual_polytope()?;
        self.dual_face_in(&dual, face)
    }

    /// Fan of inner normal cones; rays are the facet normals in facet order.
    pub fn normal_fan(&self) -> Result<Fan> {
        if !self.is_full_dimensional() {
            return Err(Error::precondition("polytope is not full-dimensional", "normal fan"));
        }
        let rays: Vec<LatticeVector> =
            self.facets.iter().map(|f| primitivize(&f.normal)).collect::<Result<_>>()?;
        let cones: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|v| (0..self.facets.len()).filter(|&f| self.facets[f].vertices.contains(&v)).collect())
            .collect();
        Fan::new(self.ambient, rays, cones)
    }
}

fn direction_frame(ambient: usize, pts: &[Vec<Rat>]) -> LatticeFrame {
    let dirs: Vec<Vec<Int>> = pts[1..]
        .iter()
        .map(|p| {
            let d: Vec<Rat> = p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
            clear_denominators(&d)
        })
        .filter(|d| d.iter().any(|x| !x.is_zero()))
        .collect();
    LatticeFrame::new(ambient, &dirs)
}

fn simplex_volume(local: &[Vec<Rat>], s: &[usize]) -> Rat {
    let k = s.len() - 1;
    let rows: Vec<Vec<Rat>> =
        s[1..].iter().map(|&i| local[i].iter().zip(&local[s[0]]).map(|(a, b)| a - b).collect()).collect();
    let m = Matrix::from_rows(&rows, k);
    // determinant via elimination over Q
    let mut a = m;
    let mut d = Rat::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !a[(i, c)].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d *= &piv;
        for i in c + 1..k {
            let f = &a[(i, c)] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..k {
                let v = &a[(i, j)] - &f * &a[(c, j)];
                a[(i, j)] = v;
            }
        }
    }
    d.abs()
}

fn pull(
    face: &Face,
    faces: &[Face],
    rank_of: &HashMap<usize, usize>,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(&face.vertices) {
        return s.clone();
    }
    let out = if face.dim == 0 || face.vertices.len() == face.dim + 1 {
        vec![face.vertices.clone()]
    } else {
        let apex = *face
            .vertices
            .iter()
            .min_by_key(|v| rank_of.get(v).copied().unwrap_or(usize::MAX))
            .expect("nonempty face");
        let mut out = Vec::new();
        for g in faces.iter().filter(|g| {
            g.dim + 1 == face.dim
                && !g.vertices.contains(&apex)
                && g.vertices.iter().all(|v| face.vertices.contains(v))
        }) {
            for mut s in pull(g, faces, rank_of, memo) {
                s.push(apex);
                s.sort();
                out.push(s);
            }
        }
        out
    };
    memo.insert(face.vertices.clone(), out.clone());
    out
}

fn num_iter(lo: &Int, hi: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        out.push(x.clone());
        x += 1;
    }
    out
}

/// Depth-first box scan with interval pruning on linear constraints.
struct BoxScan {
    lo: Vec<Int>,
    hi: Vec<Int>,
    cons: Vec<(Vec<Int>, Int, bool)>,
    /// For each constraint and depth: min and max of the remaining terms.
    rest_min: Vec<Vec<Int>>,
    rest_max: Vec<Vec<Int>>,
}

impl BoxScan {
    fn new(lo: &[Int], hi: &[Int], cons: Vec<(Vec<Int>, Int, bool)>) -> Self {
        let d = lo.len();
        let mut rest_min = Vec::new();
        let mut rest_max = Vec::new();
        for (n, _, _) in &cons {
            let mut mins = vec![Int::zero(); d + 1];
            let mut maxs = vec![Int::zero(); d + 1];
            for j in (0..d).rev() {
                let a = &n[j] * &lo[j];
                let b = &n[j] * &hi[j];
                let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
                mins[j] = &mins[j + 1] + mn;
                maxs[j] = &maxs[j + 1] + mx;
            }
            rest_min.push(mins);
            rest_max.push(maxs);
        }
        BoxScan { lo: lo.to_vec(), hi: hi.to_vec(), cons, rest_min, rest_max }
    }

    fn feasible(&self, depth: usize, partial: &[Int]) -> bool {
        self.cons.iter().enumerate().all(|(c, (_, rhs, eq))| {
            let max = &partial[c] + &self.rest_max[c][depth];
            if &max < rhs {
                return false;
            }
            if *eq {
                let min = &partial[c] + &self.rest_min[c][depth];
                return &min <= rhs;
            }
            true
        })
    }

    fn descend(&self, depth: usize, point: &mut Vec<Int>, partial: &[Int], out: &mut Vec<LatticeVector>) {
        if !self.feasible(depth, partial) {
            return;
        }
        if depth == self.lo.len() {
            out.push(LatticeVector::new(point.clone()));
            return;
        }
        let mut x = self.lo[depth].clone();
        while x <= self.hi[depth] {
            let next: Vec<Int> =
                self.cons.iter().zip(partial).map(|((n, _, _), p)| p + &n[depth] * &x).collect();
            point.push(x.clone());
            self.descend(depth + 1, point, &next, out);
            point.pop();
            x += 1;
        }
    }
}

/// Converts an inequality system to a polytope.
pub fn vertices_from_inequalities(h: &HPolytope) -> Result<LatticePolytope> {
    let d = h.ambient;
    let ineqs = &h.inequalities;
    if d == 0 {
        return Ok(if ineqs.iter().all(|q| !q.rhs.is_positive()) {
            LatticePolytope::from_points(0, &[vec![]])?
        } else {
            LatticePolytope::empty(0)
        });
    }
    let normals: Vec<Vec<Rat>> = ineqs.iter().map(|q| to_rat(&q.normal)).collect();
    let r = if normals.is_empty() { 0 } else { rank(&Matrix::from_rows(&normals, d)) };
    // rows of the system: (normal, rhs, is_equation)
    let mut rows: Vec<(Vec<Rat>, Rat, bool)> =
        ineqs.iter().map(|q| (to_rat(&q.normal), Rat::from_integer(q.rhs.clone()), false)).collect();
    if r < d {
        // restrict to the orthogonal complement of the lineality space
        let lineality = if normals.is_empty() {
            (0..d).map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
        } else {
            kernel(&Matrix::from_rows(&normals, d))
        };
        for k in lineality {
            rows.push((k, Rat::zero(), true));
        }
    }
    let eq_rows: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].2).collect();
    let ineq_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].2).collect();
    let need = d - eq_rows.len();
    let feasible = |x: &[Rat]| {
        rows.iter().all(|(n, c, eq)| {
            let v: Rat = x.iter().zip(n).map(|(a, b)| a * b).sum();
            if *eq {
                v == *c
            } else {
                v >= *c
            }
        })
    };
    let mut verts: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for subset in ineq_rows.iter().copied().combinations(need) {
        let chosen: Vec<usize> = eq_rows.iter().copied().chain(subset).collect();
        let a: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let m = Matrix::from_rows(&a, d);
        if rank(&m) < d {
            continue;
        }
        let b: Vec<Rat> = chosen.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve(&m, &b) {
            if feasible(&x) {
                verts.insert(x);
            }
        }
    }
    if verts.is_empty() {
        return Ok(LatticePolytope::empty(d));
    }
    if r < d || !recession_cone_trivial(&normals, d) {
        return Err(Error::NotAPolytope);
    }
    let cands: Vec<(Vec<Int>, Rat)> =
        ineqs.iter().map(|q| (q.normal.coords().to_vec(), Rat::from_integer(q.rhs.clone()))).collect();
    LatticePolytope::from_vertices_and_candidates(d, verts.into_iter().collect(), cands)
}

/// `{x : ⟨n_i, x⟩ ≥ 0}` is zero, assuming the normals span.
fn recession_cone_trivial(normals: &[Vec<Rat>], d: usize) -> bool {
    let ints: Vec<Vec<Int>> = normals.iter().map(|n| clear_denominators(n)).collect();
    if d == 1 {
        let pos = ints.iter().any(|n| n[0].is_positive());
        let neg = ints.iter().any(|n| n[0].is_negative());
        return pos && neg;
    }
    for subset in (0..ints.len()).combinations(d - 1) {
        let rows: Vec<Vec<Int>> = subset.iter().map(|&i| ints[i].clone()).collect();
        let r = cofactor_normal(&rows, d);
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let vals: Vec<Int> = ints.iter().map(|n| dot(n, &r)).collect();
        if vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
