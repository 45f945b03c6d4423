//! The homogeneous coordinate ring `S = Q[x_1, …, x_n]` of a complete toric
//! variety, graded by `A_{d−1} = Z^n / M`, and the fixed-degree linear
//! algebra of the ideals `J(f)`, `J_0(f)` and `J_1(f)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::divisor::TorusInvariantDivisor;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::dot;
use crate::linalg::{hermite, Matrix, SparseEchelon, SparseRow};
use crate::poly::{Exponent, Polynomial};
use crate::polytope::{vertices_from_inequalities, LatticePolytope};
use crate::{Int, Rat};

/// A class in `A_{d−1}`, stored as its Hermite-reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeClass {
    normal: Vec<Int>,
}

impl DegreeClass {
    /// A torus-invariant representative `b` with `D = Σ b_i D_i` in the class.
    pub fn representative(&self) -> &[Int] {
        &self.normal
    }
}

#[derive(Clone, Debug)]
pub struct GradedPieceBasis {
    pub degree: DegreeClass,
    pub monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl GradedPieceBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn to_sparse(&self, p: &Polynomial) -> Result<SparseRow<Rat>> {
        let mut row: Vec<(usize, Rat)> = p
            .terms()
            .iter()
            .map(|(e, c)| {
                self.index_of(e)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| Error::validation("polynomial has a monomial outside the graded piece"))
            })
            .collect::<Result<_>>()?;
        row.sort_by_key(|(i, _)| *i);
        Ok(row)
    }

    pub fn from_sparse(&self, row: &[(usize, Rat)], nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, row.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
            .expect("basis monomials have the ring's length")
    }
}

/// A polynomial known to be homogeneous of `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPolynomial {
    pub poly: Polynomial,
    pub degree: DegreeClass,
}

/// A subspace of `S_γ` in reduced echelon form over its monomial basis.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub basis: Arc<GradedPieceBasis>,
    echelon: SparseEchelon<Rat>,
    nvars: usize,
}

impl GradedSubspace {
    fn new(basis: Arc<GradedPieceBasis>, nvars: usize) -> Self {
        let echelon = SparseEchelon::new(basis.len());
        GradedSubspace { basis, echelon, nvars }
    }

    pub fn degree(&self) -> &DegreeClass {
        &self.basis.degree
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn codim(&self) -> usize {
        self.basis.len() - self.dim()
    }

    pub fn echelon(&self) -> &SparseEchelon<Rat> {
        &self.echelon
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.echelon.contains(&self.basis.to_sparse(p)?))
    }

    /// Canonical coset representative: all pivot monomials eliminated.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let r = self.echelon.reduce(&self.basis.to_sparse(p)?);
        Ok(self.basis.from_sparse(&r, self.nvars))
    }

    pub fn reduce_sparse(&self, p: &Polynomial) -> Result<SparseRow<Rat>> {
        Ok(self.echelon.reduce(&self.basis.to_sparse(p)?))
    }

    /// Monomials at non-pivot columns: a basis of the quotient `S_γ / V`.
    pub fn quotient_monomials(&self) -> Vec<Exponent> {
        self.echelon.free_columns().into_iter().map(|i| self.basis.monomials[i].clone()).collect()
    }

    pub fn reduced_basis(&self) -> Vec<Polynomial> {
        self.echelon.reduced_basis().iter().map(|r| self.basis.from_sparse(r, self.nvars)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nondegeneracy {
    CertifiedNondegenerate,
    Inconclusive,
}

/// The Cox ring of a complete fan.
#[derive(Debug)]
pub struct CoxRing {
    fan: Fan,
    hnf: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    cache: Mutex<HashMap<DegreeClass, Arc<GradedPieceBasis>>>,
}

impl Clone for CoxRing {
    fn clone(&self) -> Self {
        CoxRing {
            fan: self.fan.clone(),
            hnf: self.hnf.clone(),
            pivots: self.pivots.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

fn to_exponent(v: &[Int]) -> Option<Exponent> {
    v.iter().map(|x| x.to_u32()).collect()
}

impl CoxRing {
    pub fn new(fan: &Fan) -> Result<Self> {
        if !fan.is_complete() {
            return Err(Error::precondition("the fan is not complete", "graded pieces of the Cox ring"));
        }
        let n = fan.rays().len();
        let rows: Vec<Vec<Int>> =
            (0..fan.dim()).map(|j| fan.rays().iter().map(|e| e[j].clone()).collect()).collect();
        let h = hermite(&Matrix::from_rows(&rows, n));
        let hnf = (0..h.pivots.len()).map(|i| h.h.row(i).to_vec()).collect();
        Ok(CoxRing { fan: fan.clone(), hnf, pivots: h.pivots, cache: Mutex::new(HashMap::new()) })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn nvars(&self) -> usize {
        self.fan.rays().len()
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// Class of `Σ b_i D_i`.
    pub fn class_of(&self, b: &[Int]) -> DegreeClass {
        assert_eq!(b.len(), self.nvars(), "degree vector length");
        let mut v = b.to_vec();
        for (row, &p) in self.hnf.iter().zip(&self.pivots) {
            let q = num_integer::Integer::div_floor(&v[p], &row[p]);
            if !q.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &q * r;
                }
            }
        }
        DegreeClass { normal: v }
    }

    pub fn class_of_i64(&self, b: &[i64]) -> DegreeClass {
        self.class_of(&b.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
    }

    pub fn degree_of_monomial(&self, exps: &[u32]) -> DegreeClass {
        self.class_of(&exps.iter().map(|&e| Int::from(e)).collect::<Vec<_>>())
    }

    pub fn degrees_equal(&self, a: &DegreeClass, b: &DegreeClass) -> bool {
        a == b
    }

    pub fn zero_class(&self) -> DegreeClass {
        self.class_of(&vec![Int::zero(); self.nvars()])
    }

    /// `β_0 = Σ deg(x_i)`.
    pub fn beta0(&self) -> DegreeClass {
        self.class_of(&vec![Int::one(); self.nvars()])
    }

    pub fn add(&self, a: &DegreeClass, b: &DegreeClass) -> DegreeClass {
        self.class_of(&a.normal.iter().zip(&b.normal).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &DegreeClass, b: &DegreeClass) -> DegreeClass {
        self.class_of(&a.normal.iter().zip(&b.normal).map(|(x, y)| x - y).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: i64, a: &DegreeClass) -> DegreeClass {
        self.class_of(&a.normal.iter().map(|x| x * k).collect::<Vec<_>>())
    }

    /// `Σ c_k β_k` for small integer multipliers.
    pub fn combine(&self, terms: &[(i64, &DegreeClass)]) -> DegreeClass {
        let mut v = vec![Int::zero(); self.nvars()];
        for (k, c) in terms {
            for (x, y) in v.iter_mut().zip(&c.normal) {
                *x += y * *k;
            }
        }
        self.class_of(&v)
    }

    pub fn divisor(&self, beta: &DegreeClass) -> TorusInvariantDivisor<'_> {
        TorusInvariantDivisor::new(&self.fan, beta.normal.clone()).expect("representative has one entry per ray")
    }

    /// `Δ_β` for the stored representative.
    pub fn polytope(&self, beta: &DegreeClass) -> Result<LatticePolytope> {
        vertices_from_inequalities(&self.divisor(beta).polytope())
    }

    pub fn is_semiample(&self, beta: &DegreeClass) -> Result<bool> {
        self.divisor(beta).is_semiample()
    }

    /// Monomials of `S_β`, via `m ↦ ∏ x_i^{b_i + ⟨m, e_i⟩}` on `Δ_β ∩ M`;
    /// sorted lexicographically.
    pub fn monomial_basis(&self, beta: &DegreeClass) -> Result<Arc<GradedPieceBasis>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(beta) {
            return Ok(b.clone());
        }
        let poly = self.polytope(beta)?;
        let mut monomials: Vec<Exponent> = if poly.is_empty() {
            Vec::new()
        } else {
            poly.lattice_points()
                .par_iter()
                .map(|m| {
                    let v: Vec<Int> =
                        self.fan.rays().iter().zip(&beta.normal).map(|(e, b)| b + dot(m, e)).collect();
                    to_exponent(&v).ok_or_else(|| Error::inconsistency("negative or huge exponent in a graded piece"))
                })
                .collect::<Result<_>>()?
        };
        monomials.sort();
        let index = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let basis = Arc::new(GradedPieceBasis { degree: beta.clone(), monomials, index });
        self.cache.lock().expect("cache lock").insert(beta.clone(), basis.clone());
        Ok(basis)
    }

    pub fn dim_of(&self, beta: &DegreeClass) -> Result<usize> {
        Ok(self.monomial_basis(beta)?.len())
    }

    /// Checks homogeneity; the zero polynomial needs an explicit degree.
    pub fn homogeneous(&self, poly: Polynomial, degree: Option<DegreeClass>) -> Result<GradedPolynomial> {
        if poly.nvars() != self.nvars() {
            return Err(Error::validation("polynomial has the wrong number of variables"));
        }
        let degree = match (degree, poly.terms().keys().next()) {
            (Some(d), _) => d,
            (None, Some(e)) => self.degree_of_monomial(e),
            (None, None) => return Err(Error::validation("zero polynomial needs an explicit degree")),
        };
        if poly.terms().keys().any(|e| self.degree_of_monomial(e) != degree) {
            return Err(Error::validation("polynomial is not homogeneous of the declared degree"));
        }
        Ok(GradedPolynomial { poly, degree })
    }

    /// `span{g · m : g ∈ gens, m ∈ S_{γ − deg g}}` in `S_γ`.
    pub fn ideal_graded_piece(&self, gens: &[GradedPolynomial], gamma: &DegreeClass) -> Result<GradedSubspace> {
        let target = self.monomial_basis(gamma)?;
        let mut space = GradedSubspace::new(target.clone(), self.nvars());
        let mut groups: BTreeMap<&DegreeClass, Vec<&Polynomial>> = BTreeMap::new();
        for g in gens {
            if !g.poly.is_zero() {
                groups.entry(&g.degree).or_default().push(&g.poly);
            }
        }
        for (deg, polys) in groups {
            let src = self.monomial_basis(deg)?;
            let mut pre = SparseEchelon::new(src.len());
            for p in polys {
                pre.insert(&src.to_sparse(p)?);
            }
            let reduced: Vec<Polynomial> =
                pre.reduced_basis().iter().map(|r| src.from_sparse(r, self.nvars())).collect();
            let shifts = self.monomial_basis(&self.sub(gamma, deg))?;
            let rows: Vec<SparseRow<Rat>> = shifts
                .monomials
                .par_iter()
                .flat_map_iter(|m| reduced.iter().map(move |g| g.mul_monomial(m)))
                .map(|p| target.to_sparse(&p))
                .collect::<Result<_>>()?;
            for r in rows {
                space.echelon.insert(&r);
            }
        }
        Ok(space)
    }

    /// `x_i ∂f/∂x_i`, all of degree `deg f`.
    pub fn weighted_partials(&self, f: &GradedPolynomial) -> Vec<GradedPolynomial> {
        (0..self.nvars())
            .map(|i| GradedPolynomial { poly: f.poly.euler_derivative(i), degree: f.degree.clone() })
            .collect()
    }

    /// `∂f/∂x_i`, of degree `deg f − deg x_i`.
    pub fn partials(&self, f: &GradedPolynomial) -> Vec<GradedPolynomial> {
        (0..self.nvars())
            .map(|i| {
                let mut e = vec![0u32; self.nvars()];
                e[i] = 1;
                GradedPolynomial {
                    poly: f.poly.derivative(i),
                    degree: self.sub(&f.degree, &self.degree_of_monomial(&e)),
                }
            })
            .collect()
    }

    pub fn j_graded_piece(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<GradedSubspace> {
        self.ideal_graded_piece(&self.partials(f), gamma)
    }

    pub fn j0_graded_piece(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<GradedSubspace> {
        self.ideal_graded_piece(&self.weighted_partials(f), gamma)
    }

    /// Images of the monomials of `S_γ` under `h ↦ h·x_1⋯x_n mod J_0(f)`.
    fn j1_images(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<(Arc<GradedPieceBasis>, usize, Vec<SparseRow<Rat>>)> {
        let src = self.monomial_basis(gamma)?;
        let j0 = self.j0_graded_piece(f, &self.add(gamma, &self.beta0()))?;
        let ones = vec![1u32; self.nvars()];
        let images = src
            .monomials
            .par_iter()
            .map(|m| {
                let shifted: Exponent = m.iter().zip(&ones).map(|(a, b)| a + b).collect();
                j0.reduce_sparse(&Polynomial::monomial(shifted, Rat::one()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((src, j0.basis.len(), images))
    }

    /// `J_1(f)_γ = {h ∈ S_γ : h·x_1⋯x_n ∈ J_0(f)}`.
    pub fn j1_graded_piece(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<GradedSubspace> {
        let (src, width, images) = self.j1_images(f, gamma)?;
        let mut tagged = SparseEchelon::new(width + src.len());
        for (k, img) in images.into_iter().enumerate() {
            let mut row = img;
            row.push((width + k, Rat::one()));
            tagged.insert(&row);
        }
        let mut space = GradedSubspace::new(src, self.nvars());
        for row in tagged.rows() {
            if row.first().is_some_and(|(c, _)| *c >= width) {
                let kernel: Vec<(usize, Rat)> = row.iter().map(|(c, v)| (c - width, v.clone())).collect();
                space.echelon.insert(&kernel);
            }
        }
        Ok(space)
    }

    /// `dim R_1(f)_γ`, the rank of `h ↦ h·x_1⋯x_n` modulo `J_0(f)`.
    pub fn r1_dim(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<usize> {
        let (_, width, images) = self.j1_images(f, gamma)?;
        let mut e = SparseEchelon::new(width);
        for img in images {
            e.insert(&img);
        }
        Ok(e.rank())
    }

    pub fn r_dim(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<usize> {
        Ok(self.j_graded_piece(f, gamma)?.codim())
    }

    pub fn r0_dim(&self, f: &GradedPolynomial, gamma: &DegreeClass) -> Result<usize> {
        Ok(self.j0_graded_piece(f, gamma)?.codim())
    }

    /// Codimension-one test for `⟨F_I⟩` in degree `(d+1)β − β_0` with the
    /// toric Jacobian outside it, for the first admissible `I`.
    pub fn nondegeneracy_certificate(&self, f: &GradedPolynomial) -> Result<Nondegeneracy> {
        let beta = &f.degree;
        let Some(index) = crate::residue::admissible_index_sets(self, beta).into_iter().next() else {
            if beta == &self.zero_class() {
                return Ok(Nondegeneracy::Inconclusive);
            }
            return Err(Error::inconsistency("no index set with nonzero constant for a nonzero class"));
        };
        let partials = self.weighted_partials(f);
        let fi: Vec<GradedPolynomial> = index.iter().map(|&i| partials[i].clone()).collect();
        let rho = self.combine(&[(self.dim() as i64 + 1, beta), (-1, &self.beta0())]);
        let span = self.ideal_graded_piece(&fi, &rho)?;
        if span.codim() != 1 {
            return Ok(Nondegeneracy::Inconclusive);
        }
        let jac = crate::residue::toric_jacobian(self, &fi)?;
        if span.contains(&jac.poly)? {
            return Ok(Nondegeneracy::Inconclusive);
        }
        Ok(Nondegeneracy::CertifiedNondegenerate)
    }
}

/// Number of exponent vectors of total degree `deg` in `n` variables with
/// every entry at most `bound`; counts `R_1` of Fermat hypersurfaces.
pub fn bounded_exponent_count(n: usize, deg: usize, bound: usize) -> usize {
    let mut ways = vec![0usize; deg + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0usize; deg + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..=bound.min(deg - s) {
                next[s + e] += w;
            }
        }
        ways = next;
    }
    ways[deg]
}

/// `Σ x_i^k` on `P^{n−1}`, as a polynomial in `n` variables.
pub fn fermat(n: usize, k: u32) -> Polynomial {
    Polynomial::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = k;
            (e, Rat::one())
        }),
    )
    .expect("Fermat polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{blowup_plane, projective_line, projective_plane, projective_space};
    use crate::util::rat;

    fn hyperplane(r: &CoxRing, k: i64) -> DegreeClass {
        let mut b = vec![0i64; r.nvars()];
        b[0] = k;
        r.class_of_i64(&b)
    }

    #[test]
    fn degree_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        let x = r.degree_of_monomial(&[1, 0, 0]);
        assert_eq!(x, r.degree_of_monomial(&[0, 1, 0]));
        assert_eq!(x, r.degree_of_monomial(&[0, 0, 1]));
        assert_eq!(r.beta0(), hyperplane(&r, 3));
        let b = CoxRing::new(&blowup_plane()).unwrap();
        assert_ne!(b.degree_of_monomial(&[1, 1, 0, 0]), b.degree_of_monomial(&[0, 0, 2, 0]));
    }

    #[test]
    fn basis_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        assert_eq!(r.dim_of(&hyperplane(&r, 3)).unwrap(), 10);
        assert_eq!(r.dim_of(&hyperplane(&r, -1)).unwrap(), 0);
        let l = CoxRing::new(&projective_line()).unwrap();
        let basis = l.monomial_basis(&hyperplane(&l, 2)).unwrap();
        assert_eq!(basis.monomials, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn basis_matches_direct_enumeration() {
        let b = CoxRing::new(&blowup_plane()).unwrap();
        for exps in [[2u32, 1, 3, 0], [0, 0, 1, 0], [1, 1, 1, 1], [0, 0, 0, 2]] {
            let beta = b.degree_of_monomial(&exps);
            let basis = b.monomial_basis(&beta).unwrap();
            let total: u32 = 8;
            let mut count = 0;
            for a in 0..=total {
                for c in 0..=total {
                    for e in 0..=total {
                        for g in 0..=total {
                            if b.degree_of_monomial(&[a, c, e, g]) == beta {
                                count += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(basis.len(), count, "{exps:?}");
        }
    }

    fn fermat_graded(r: &CoxRing, k: u32) -> GradedPolynomial {
        r.homogeneous(fermat(r.nvars(), k), None).unwrap()
    }

    #[test]
    fn ideal_piece_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        let f = fermat_graded(&r, 3);
        assert_eq!(r.j0_graded_piece(&f, &hyperplane(&r, 3)).unwrap().dim(), 3);
        // x^3, y^3, z^3 times cubics: 28 monomials of degree 6 minus those with all exponents ≤ 2
        let six = r.j0_graded_piece(&f, &hyperplane(&r, 6)).unwrap();
        assert_eq!(six.dim(), 28 - bounded_exponent_count(3, 6, 2));
        assert_eq!(r.ideal_graded_piece(&[], &hyperplane(&r, 3)).unwrap().dim(), 0);
    }

    #[test]
    fn reduce_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        let f = fermat_graded(&r, 3);
        let three = r.j0_graded_piece(&f, &hyperplane(&r, 3)).unwrap();
        assert!(three.reduce(&Polynomial::monomial(vec![3, 0, 0], rat(1))).unwrap().is_zero());
        let xyz = Polynomial::monomial(vec![1, 1, 1], rat(1));
        assert_eq!(three.reduce(&xyz).unwrap(), xyz);
        let five = r.j0_graded_piece(&f, &hyperplane(&r, 5)).unwrap();
        assert!(five.reduce(&Polynomial::monomial(vec![4, 1, 0], rat(1))).unwrap().is_zero());
        assert!(three.reduce(&Polynomial::monomial(vec![4, 1, 0], rat(1))).is_err());
    }

    #[test]
    fn r1_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        let f = fermat_graded(&r, 3);
        assert_eq!(r.r1_dim(&f, &r.zero_class()).unwrap(), 1);
        assert_eq!(r.r1_dim(&f, &hyperplane(&r, 3)).unwrap(), 1);
        let j1 = r.j1_graded_piece(&f, &hyperplane(&r, 3)).unwrap();
        assert_eq!(j1.quotient_monomials(), vec![vec![1, 1, 1]]);
        let p4 = CoxRing::new(&projective_space(4)).unwrap();
        let q = fermat_graded(&p4, 5);
        assert_eq!(p4.r1_dim(&q, &hyperplane(&p4, 5)).unwrap(), 101);
    }

    #[test]
    fn j0_inside_j1() {
        let r = CoxRing::new(&blowup_plane()).unwrap();
        let beta = r.class_of_i64(&[0, 0, 3, 1]);
        let f = Polynomial::from_terms(
            4,
            r.monomial_basis(&beta).unwrap().monomials.iter().enumerate().map(|(k, e)| (e.clone(), rat(k as i64 % 5 + 1))),
        )
        .unwrap();
        let f = r.homogeneous(f, None).unwrap();
        let j1 = r.j1_graded_piece(&f, &beta).unwrap();
        for g in r.weighted_partials(&f) {
            assert!(j1.contains(&g.poly).unwrap());
        }
    }

    #[test]
    fn certificate_examples() {
        let r = CoxRing::new(&projective_plane()).unwrap();
        assert_eq!(r.nondegeneracy_certificate(&fermat_graded(&r, 3)).unwrap(), Nondegeneracy::CertifiedNondegenerate);
        let cube = r.homogeneous(Polynomial::monomial(vec![3, 0, 0], rat(1)), None).unwrap();
        assert_eq!(r.nondegeneracy_certificate(&cube).unwrap(), Nondegeneracy::Inconclusive);
        let p4 = CoxRing::new(&projective_space(4)).unwrap();
        assert_eq!(
            p4.nondegeneracy_certificate(&fermat_graded(&p4, 5)).unwrap(),
            Nondegeneracy::CertifiedNondegenerate
        );
    }

    #[test]
    fn bounded_counts() {
        assert_eq!(bounded_exponent_count(5, 5, 3), 101);
        assert_eq!(bounded_exponent_count(3, 3, 1), 1);
        assert_eq!(bounded_exponent_count(4, 4, 2), 19);
    }
}
