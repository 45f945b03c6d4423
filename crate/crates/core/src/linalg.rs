//! Exact linear algebra: dense matrices, Bareiss determinants, Hermite and
//! Smith normal forms over Euclidean rings, reduced row echelon forms over
//! fields and an incremental sparse echelon basis.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Index, IndexMut, Neg};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

/// Integer-like scalars: exact division, signs and a Euclidean algorithm.
pub trait Ring: Clone + Debug + Integer + Signed + Send + Sync {}

impl<T> Ring for T where T: Clone + Debug + Integer + Signed + Send + Sync {}

/// Field scalars for elimination. Implemented for fractions of any [`Ring`].
pub trait Field: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T: Ring> Field for Ratio<T> {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, x)| acc + x.clone() * self[(i, j)].clone())
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let v = self[(target, j)].clone() + factor.clone() * self[(source, j)].clone();
            self[(target, j)] = v;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for i in 0..self.rows {
            let v = self[(i, target)].clone() + factor.clone() * self[(i, source)].clone();
            self[(i, target)] = v;
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free determinant (Bareiss).
pub fn det<T: Ring>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Row Hermite normal form `h = u * m` with `u` unimodular.
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    /// Pivot column of each nonzero row of `h`; the nonzero rows come first.
    pub pivots: Vec<usize>,
}

pub fn hermite<T: Ring>(m: &Matrix<T>) -> Hermite<T> {
    let mut a = m.clone();
    let mut u = Matrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            let best = (r..a.rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()));
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-q.clone());
                u.add_row_multiple(i, r, &-q);
                if !a[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            let neg = -T::one();
            for j in 0..a.cols {
                a[(r, j)] = a[(r, j)].clone() * neg.clone();
            }
            for j in 0..u.cols {
                u[(r, j)] = u[(r, j)].clone() * neg.clone();
            }
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                a.add_row_multiple(i, r, &-q.clone());
                u.add_row_multiple(i, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h: a, u, pivots }
}

/// Smith normal form `p * m * q = diag(invariants, 0, ...)`.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub invariants: Vec<T>,
    pub p: Matrix<T>,
    pub q: Matrix<T>,
    pub q_inv: Matrix<T>,
}

impl<T: Ring> Smith<T> {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

pub fn smith<T: Ring>(m: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut p = Matrix::identity(rows);
    let mut q = Matrix::identity(cols);
    let mut q_inv = Matrix::identity(cols);
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        let mut found = false;
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            found = true;
            a.swap_rows(t, bi);
            p.swap_rows(t, bi);
            a.swap_cols(t, bj);
            q.swap_cols(t, bj);
            q_inv.swap_rows(t, bj);
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let f = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-f.clone());
                p.add_row_multiple(i, t, &-f);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let f = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-f.clone());
                q.add_col_multiple(j, t, &-f.clone());
                q_inv.add_row_multiple(t, j, &f);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(a[(i, j)].clone() % a[(t, t)].clone()).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if !found {
            break;
        }
        if a[(t, t)].is_negative() {
            let neg = -T::one();
            for j in 0..cols {
                a[(t, j)] = a[(t, j)].clone() * neg.clone();
            }
            for j in 0..rows {
                p[(t, j)] = p[(t, j)].clone() * neg.clone();
            }
        }
        invariants.push(a[(t, t)].clone());
    }
    Smith { invariants, p, q, q_inv }
}

/// Reduced row echelon form over a field.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(m: &Matrix<F>) -> Echelon<F> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv();
        for j in c..a.cols {
            let v = a[(r, j)].clone() * inv.clone();
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let e = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); m.cols];
            x[f] = F::one();
            for (r, &pc) in e.pivots.iter().enumerate() {
                x[pc] = -e.matrix[(r, f)].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `m x = b` (free variables set to zero), if one exists.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(m.rows, b.len());
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let e = rref(&aug);
    if e.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols];
    for (r, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.matrix[(r, m.cols)].clone();
    }
    Some(x)
}

pub type SparseRow<F> = Vec<(usize, F)>;

/// Incrementally built echelon basis of a subspace of `F^ncols`.
///
/// Every stored row is normalized to leading coefficient one and has no
/// entries left of its pivot. Full reduction of a vector eliminates all pivot
/// columns, which yields a canonical representative of its coset.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    ncols: usize,
    rows: Vec<SparseRow<F>>,
    pivot_row: Vec<Option<usize>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    fn eliminate(&self, acc: &mut BTreeMap<usize, F>) {
        let mut cursor = 0;
        loop {
            let next = acc.range(cursor..).map(|(&c, _)| c).find(|&c| self.pivot_row[c].is_some());
            let Some(c) = next else { break };
            let coef = acc.remove(&c).expect("key present");
            let row = &self.rows[self.pivot_row[c].expect("pivot")];
            for (j, v) in row.iter().skip(1) {
                let entry = acc.entry(*j).or_insert_with(F::zero);
                *entry = entry.clone() - coef.clone() * v.clone();
                if entry.is_zero() {
                    acc.remove(j);
                }
            }
            cursor = c + 1;
        }
    }

    /// Canonical representative of `v` modulo the span: no pivot columns remain.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseRow<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (c, x) in v {
            assert!(*c < self.ncols, "column out of range");
            let e = acc.entry(*c).or_insert_with(F::zero);
            *e = e.clone() + x.clone();
        }
        acc.retain(|_, x| !x.is_zero());
        self.eliminate(&mut acc);
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        for e in r.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
        self.pivot_row[r[0].0] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    /// Dense copy of a reduced row echelon basis (rows sorted by pivot).
    pub fn reduced_basis(&self) -> Vec<SparseRow<F>> {
        let mut out: Vec<SparseRow<F>> = Vec::with_capacity(self.rows.len());
        for c in self.pivot_columns() {
            let row = &self.rows[self.pivot_row[c].unwrap()];
            let tail: Vec<(usize, F)> = row[1..].to_vec();
            let mut reduced = self.reduce(&tail);
            reduced.insert(0, (c, F::one()));
            out.push(reduced);
        }
        out
    }
}
