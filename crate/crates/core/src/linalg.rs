//! Dense matrices and row spaces over a finite field.

use std::fmt;

use itertools::Itertools;

use crate::error::Result;
use crate::galois::{Elem, Field};

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field.same_as(&other.field)
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        m
    }

    /// Entry-wise `a -> a^q`.
    pub fn conj(&self) -> Result<Matrix> {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v = self.field.conj(*v)?;
        }
        Ok(m)
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let s = dot(f, self.row(i), other.row(j));
                out.set(i, j, s);
            }
        }
        out
    }

    /// Gram matrix of the rows under `<a, b>_H = sum a_i b_i^q`.
    pub fn hermitian_gram(&self) -> Result<Matrix> {
        Ok(self.mul_transpose(&self.conj()?))
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().0.rows
    }

    /// Basis (as rows) of `{v : self * v^T = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut out = Matrix::zeros(f, 0, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push_row(&v);
        }
        out
    }
}

pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn hermitian_dot(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Elem> {
    let mut acc = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = f.add(acc, f.mul(x, f.conj(y)?));
    }
    Ok(acc)
}

/// A linear code, stored as its reduced row echelon basis so that equal
/// spaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn span(field: &Field, len: usize, rows: &[Vec<Elem>]) -> Self {
        Self::from_matrix(&Matrix::from_rows(field, len, rows))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Subspace { basis: m.rref().0 }
    }

    pub fn zero(field: &Field, len: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, len),
        }
    }

    pub fn full(field: &Field, len: usize) -> Self {
        let rows: Vec<Vec<Elem>> = (0..len)
            .map(|i| {
                let mut v = vec![0; len];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(field, len, &rows)
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut m = self.basis.clone();
        m.push_row(v);
        m.rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::from_matrix(&self.basis.stack(&other.basis))
    }

    pub fn euclidean_dual(&self) -> Subspace {
        Self::from_matrix(&self.basis.nullspace())
    }

    /// `{d : sum c_i d_i^q = 0 for all c}`, the nullspace of the conjugated basis.
    pub fn hermitian_dual(&self) -> Result<Subspace> {
        Ok(Self::from_matrix(&self.basis.conj()?.nullspace()))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.euclidean_dual()
            .sum(&other.euclidean_dual())
            .euclidean_dual()
    }

    pub fn hermitian_hull(&self) -> Result<Subspace> {
        Ok(self.intersection(&self.hermitian_dual()?))
    }

    pub fn is_hermitian_self_orthogonal(&self) -> Result<bool> {
        Ok(self.basis.hermitian_gram()?.is_zero())
    }

    pub fn is_hermitian_self_dual(&self) -> Result<bool> {
        Ok(2 * self.dim() == self.len() && self.is_hermitian_self_orthogonal()?)
    }
}

/// Every `dim`-dimensional subspace of `F^len`, each produced once, by
/// running over all reduced row echelon matrices of that shape.
pub fn subspaces(field: &Field, len: usize, dim: usize) -> impl Iterator<Item = Subspace> + '_ {
    (0..len).combinations(dim).flat_map(move |pivots| {
        let mut slots = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..len {
                if !pivots.contains(&c) {
                    slots.push((i, c));
                }
            }
        }
        let order = field.order();
        slots
            .iter()
            .map(|_| 0..order)
            .multi_cartesian_product()
            .map(move |vals| {
                let mut m = Matrix::zeros(field, dim, len);
                for (i, &pc) in pivots.iter().enumerate() {
                    m.set(i, pc, 1);
                }
                for (&(i, c), v) in slots.iter().zip(vals) {
                    m.set(i, c, v);
                }
                Subspace { basis: m }
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn rank_nullspace_and_duals() {
        let f = make_field(3, 2).unwrap();
        let m = Matrix::from_rows(&f, 4, &[vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 1, 1, 0]]);
        assert_eq!(m.rank(), 2);
        let n = m.nullspace();
        assert_eq!(n.rows(), 2);
        assert!(m.mul_transpose(&n).is_zero());
        let c = Subspace::from_matrix(&m);
        assert_eq!(c.euclidean_dual().euclidean_dual(), c);
        assert_eq!(c.hermitian_dual().unwrap().hermitian_dual().unwrap(), c);
        assert_eq!(c.dim() + c.hermitian_dual().unwrap().dim(), 4);
    }

    #[test]
    fn full_space_has_zero_dual() {
        let f = make_field(2, 2).unwrap();
        let full = Subspace::full(&f, 3);
        assert!(full.hermitian_dual().unwrap().is_empty());
        assert_eq!(Subspace::zero(&f, 3).hermitian_dual().unwrap(), full);
    }

    #[test]
    fn hermitian_self_dual_line_over_f4() {
        let f = make_field(2, 2).unwrap();
        // 1 + 1^q = 0 in characteristic 2
        let c = Subspace::span(&f, 2, &[vec![1, 1]]);
        assert!(c.is_hermitian_self_dual().unwrap());
        assert_eq!(c.hermitian_hull().unwrap(), c);
        let d = Subspace::span(&f, 2, &[vec![1, 0]]);
        assert!(!d.is_hermitian_self_dual().unwrap());
        assert!(d.hermitian_hull().unwrap().is_empty());
    }

    #[test]
    fn intersection_dimension_formula() {
        let f = make_field(5, 2).unwrap();
        let a = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = Subspace::span(&f, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 1, 0, 0]));
        assert_eq!(a.dim() + b.dim(), a.sum(&b).dim() + i.dim());
    }

    #[test]
    fn subspace_enumeration_is_canonical() {
        let f = make_field(3, 1).unwrap();
        let all: Vec<Subspace> = (0..=3).flat_map(|d| subspaces(&f, 3, d)).collect();
        // 1 + 13 + 13 + 1 subspaces of F_3^3
        assert_eq!(all.len(), 28);
        for s in &all {
            assert_eq!(&Subspace::from_matrix(s.basis()), s);
        }
        let distinct: std::collections::HashSet<Vec<Vec<Elem>>> =
            all.iter().map(|s| s.basis().row_vecs()).collect();
        assert_eq!(distinct.len(), 28);
    }
}
