//! Integer lattice vectors, pairings, primitive generators, cone multiplicities
//! and unimodular frames adapted to sublattices.

use std::fmt;
use std::ops::Deref;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det, smith, Matrix};
use crate::{Int, Rat};

pub type IntegerMatrix = Matrix<Int>;

/// A point of `M` or `N` in the fixed dual bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(d: usize) -> Self {
        LatticeVector(vec![Int::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rat> {
        self.0.iter().map(|a| Rat::from_integer(a.clone())).collect()
    }
}

impl Deref for LatticeVector {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl From<Vec<Int>> for LatticeVector {
    fn from(v: Vec<Int>) -> Self {
        LatticeVector(v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `⟨m, n⟩ = Σ m_j n_j`.
pub fn pairing(m: &[Int], n: &[Int]) -> Result<Int> {
    if m.len() != n.len() {
        return Err(Error::validation(format!(
            "pairing of vectors of lengths {} and {}",
            m.len(),
            n.len()
        )));
    }
    Ok(dot(m, n))
}

pub(crate) fn dot(m: &[Int], n: &[Int]) -> Int {
    m.iter().zip(n).map(|(a, b)| a * b).sum()
}

pub(crate) fn dot_rat(m: &[Rat], n: &[Int]) -> Rat {
    m.iter().zip(n).map(|(a, b)| a * b).sum()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn primitivize(v: &[Int]) -> Result<LatticeVector> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::validation("cannot primitivize the zero vector"));
    }
    Ok(LatticeVector(v.iter().map(|c| c / &g).collect()))
}

pub fn is_primitive(v: &[Int]) -> bool {
    gcd_all(v) == Int::from(1)
}

/// Index of the group generated by `gens` inside the lattice points of their span.
pub fn cone_multiplicity(gens: &[LatticeVector]) -> Result<Int> {
    let Some(first) = gens.first() else { return Ok(Int::from(1)) };
    let d = first.dim();
    if gens.iter().any(|g| g.dim() != d) {
        return Err(Error::validation("generators of different lengths"));
    }
    let rows: Vec<Vec<Int>> = gens.iter().map(|g| g.0.clone()).collect();
    let m = Matrix::from_rows(&rows, d);
    if gens.len() == d {
        let det = det(&m).abs();
        if det.is_zero() {
            return Err(Error::precondition(
                "cone generators are linearly dependent",
                "cone multiplicity",
            ));
        }
        return Ok(det);
    }
    let s = smith(&m);
    if s.rank() < gens.len() {
        return Err(Error::precondition(
            "cone generators are linearly dependent",
            "cone multiplicity",
        ));
    }
    Ok(s.invariants.iter().product())
}

pub fn int_matrix(rows: &[LatticeVector], cols: usize) -> IntegerMatrix {
    let v: Vec<Vec<Int>> = rows.iter().map(|r| r.0.clone()).collect();
    Matrix::from_rows(&v, cols)
}

/// A unimodular basis of `Z^d` whose first `rank` vectors are a basis of
/// `span(V) ∩ Z^d` for the vectors `V` it was built from.
///
/// Points are row vectors; `x = (x Q) Q⁻¹`, so `x Q` are coordinates with
/// respect to the rows of `Q⁻¹`. Dual vectors `m` are columns, and for `m`
/// vanishing on the span the tail of `Q⁻¹ m` pairs with the tail of `x Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFrame {
    rank: usize,
    q: IntegerMatrix,
    q_inv: IntegerMatrix,
}

impl LatticeFrame {
    pub fn new(ambient: usize, vectors: &[Vec<Int>]) -> Self {
        if vectors.is_empty() {
            return LatticeFrame {
                rank: 0,
                q: Matrix::identity(ambient),
                q_inv: Matrix::identity(ambient),
            };
        }
        let m = Matrix::from_rows(vectors, ambient);
        let s = smith(&m);
        LatticeFrame { rank: s.rank(), q: s.q, q_inv: s.q_inv }
    }

    pub fn ambient(&self) -> usize {
        self.q.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Saturated basis of the span.
    pub fn basis(&self) -> Vec<Vec<Int>> {
        (0..self.rank).map(|i| self.q_inv.row(i).to_vec()).collect()
    }

    pub fn coords(&self, x: &[Int]) -> Vec<Int> {
        self.q.left_apply(x)
    }

    pub fn coords_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let qr = self.q.map(|a| Rat::from_integer(a.clone()));
        qr.left_apply(x)
    }

    /// Coordinates in the saturated basis, if `x` lies in the span.
    pub fn span_coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        let y = self.coords(x);
        if y[self.rank..].iter().all(Zero::is_zero) {
            Some(y[..self.rank].to_vec())
        } else {
            None
        }
    }

    /// Image in the quotient lattice `Z^d / (span ∩ Z^d)`.
    pub fn quotient(&self, x: &[Int]) -> Vec<Int> {
        self.coords(x)[self.rank..].to_vec()
    }

    /// Coordinates of a dual vector vanishing on the span, in the dual of the quotient.
    pub fn dual_quotient(&self, m: &[Int]) -> Option<Vec<Int>> {
        let w = self.q_inv.apply(m);
        if w[..self.rank].iter().all(Zero::is_zero) {
            Some(w[self.rank..].to_vec())
        } else {
            None
        }
    }

    pub fn dual_quotient_rat(&self, m: &[Rat]) -> Option<Vec<Rat>> {
        let qi = self.q_inv.map(|a| Rat::from_integer(a.clone()));
        let w = qi.apply(m);
        if w[..self.rank].iter().all(Zero::is_zero) {
            Some(w[self.rank..].to_vec())
        } else {
            None
        }
    }

    /// Inverse of [`Self::dual_quotient`].
    pub fn dual_lift(&self, mq: &[Int]) -> Vec<Int> {
        let mut w = vec![Int::zero(); self.rank];
        w.extend(mq.iter().cloned());
        self.q.apply(&w)
    }

    /// Dual vectors in span coordinates: `u` on the span is `Σ u_i` times the
    /// dual of the `i`-th basis vector; returns an ambient representative.
    pub fn span_dual_lift(&self, u: &[Int]) -> Vec<Int> {
        let mut w = u.to_vec();
        w.resize(self.ambient(), Int::zero());
        self.q.apply(&w)
    }
}
