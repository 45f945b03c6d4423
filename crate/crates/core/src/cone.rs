//! Polyhedral cones given by generators: facets, faces, membership.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::lattice::{dot, gcd_all, LatticeFrame, LatticeVector};
use crate::linalg::{det, rank, Matrix};
use crate::util::to_rat;
use crate::Int;

#[derive(Clone, Debug)]
pub(crate) struct ConeFacet {
    /// Inward primitive normal in span coordinates.
    pub normal: Vec<Int>,
    /// Generators on the facet.
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct ConeGeometry {
    frame: LatticeFrame,
    gens: Vec<Vec<Int>>,
    facets: Vec<ConeFacet>,
    simplicial: bool,
}

fn rank_int(rows: &[Vec<Int>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let r: Vec<Vec<_>> = rows.iter().map(|v| to_rat(v)).collect();
    rank(&Matrix::from_rows(&r, cols))
}

/// Generalized cross product: the integer normal to `k - 1` vectors in `Z^k`.
pub(crate) fn cofactor_normal(rows: &[Vec<Int>], k: usize) -> Vec<Int> {
    let m = Matrix::from_rows(rows, k);
    let all_rows: Vec<usize> = (0..rows.len()).collect();
    (0..k)
        .map(|j| {
            let cols: Vec<usize> = (0..k).filter(|&c| c != j).collect();
            let d = det(&m.select(&all_rows, &cols));
            if (j + rows.len()).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

impl ConeGeometry {
    pub fn new(gens: &[LatticeVector], ambient: usize) -> Self {
        let raw: Vec<Vec<Int>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        let frame = LatticeFrame::new(ambient, &raw);
        let k = frame.rank();
        let coords: Vec<Vec<Int>> =
            raw.iter().map(|g| frame.span_coords(g).expect("generator lies in its span")).collect();
        let simplicial = coords.len() == k;
        let mut facets = Vec::new();
        if k == 1 {
            let pos = coords.iter().all(|c| c[0].is_positive());
            let neg = coords.iter().all(|c| c[0].is_negative());
            if pos || neg {
                let s = if pos { 1 } else { -1 };
                facets.push(ConeFacet { normal: vec![Int::from(s)], tight: vec![] });
            }
        } else if k >= 2 {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for subset in (0..coords.len()).combinations(k - 1) {
                let rows: Vec<Vec<Int>> = subset.iter().map(|&i| coords[i].clone()).collect();
                let mut normal = cofactor_normal(&rows, k);
                let g = gcd_all(&normal);
                if g.is_zero() {
                    continue;
                }
                for x in normal.iter_mut() {
                    *x = &*x / &g;
                }
                let vals: Vec<Int> = coords.iter().map(|c| dot(&normal, c)).collect();
                if vals.iter().any(|v| v.is_negative()) {
                    if vals.iter().any(|v| v.is_positive()) {
                        continue;
                    }
                    for x in normal.iter_mut() {
                        *x = -x.clone();
                    }
                }
                let tight: Vec<usize> = (0..coords.len()).filter(|&i| vals[i].is_zero()).collect();
                if seen.insert(tight.clone()) {
                    facets.push(ConeFacet { normal, tight });
                }
            }
        }
        ConeGeometry { frame, gens: coords, facets, simplicial }
    }

    pub fn dim(&self) -> usize {
        self.frame.rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn facets(&self) -> &[ConeFacet] {
        &self.facets
    }

    pub fn frame(&self) -> &LatticeFrame {
        &self.frame
    }

    /// Strong convexity: the cone contains no line.
    pub fn is_pointed(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return true;
        }
        let normals: Vec<Vec<Int>> = self.facets.iter().map(|f| f.normal.clone()).collect();
        rank_int(&normals, k) == k
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        match self.frame.span_coords(x) {
            None => false,
            Some(y) => self.facets.iter().all(|f| !dot(&f.normal, &y).is_negative()),
        }
    }

    /// Generators of the smallest face containing `x`, if `x` is in the cone.
    pub fn carrier(&self, x: &[Int]) -> Option<Vec<usize>> {
        let y = self.frame.span_coords(x)?;
        let mut face: Vec<usize> = (0..self.gens.len()).collect();
        for f in &self.facets {
            let v = dot(&f.normal, &y);
            if v.is_negative() {
                return None;
            }
            if v.is_zero() {
                face.retain(|i| f.tight.contains(i));
            }
        }
        Some(face)
    }

    /// Dimension of the face spanned by the given generators.
    pub fn face_dim(&self, face: &[usize]) -> usize {
        if self.simplicial {
            return face.len();
        }
        let rows: Vec<Vec<Int>> = face.iter().map(|&i| self.gens[i].clone()).collect();
        rank_int(&rows, self.dim())
    }

    /// All faces as sets of generator indices, including the cone and its apex.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.gens.len();
        if self.simplicial {
            return (0..=n).flat_map(|k| (0..n).combinations(k)).collect();
        }
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert((0..n).collect());
        let mut frontier: Vec<Vec<usize>> = vec![(0..n).collect()];
        while let Some(face) = frontier.pop() {
            for f in &self.facets {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.tight.contains(i)).collect();
                if meet.len() < face.len() && all.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        all.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn square_pyramid_cone() {
        let g = [lv(&[1, 1, 1]), lv(&[-1, 1, 1]), lv(&[-1, -1, 1]), lv(&[1, -1, 1])];
        let c = ConeGeometry::new(&g, 3);
        assert_eq!(c.dim(), 3);
        assert!(!c.is_simplicial());
        assert_eq!(c.facets().len(), 4);
        assert!(c.is_pointed());
        let faces = c.faces();
        // apex, 4 rays, 4 facets, the cone
        assert_eq!(faces.len(), 10);
        assert!(c.contains(&lv(&[0, 0, 1])));
        assert!(!c.contains(&lv(&[0, 2, 1])));
        assert_eq!(c.carrier(&lv(&[0, 1, 1])).unwrap(), vec![0, 1]);
        assert_eq!(c.carrier(&lv(&[0, 0, 1])).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn lower_dimensional_cone() {
        let g = [lv(&[1, 0, 0]), lv(&[1, 2, 0])];
        let c = ConeGeometry::new(&g, 3);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&lv(&[1, 1, 0])));
        assert!(!c.contains(&lv(&[1, 1, 1])));
        assert!(!c.contains(&lv(&[0, 1, 0])));
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn non_pointed() {
        let g = [lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])];
        let c = ConeGeometry::new(&g, 2);
        assert!(!c.is_pointed());
    }
}
