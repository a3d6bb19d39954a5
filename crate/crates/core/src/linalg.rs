//! Exact rational matrices and nullspace computation.
//!
//! All arithmetic is in arbitrary-precision rationals; there is no floating
//! point anywhere in this module. The nullspace basis is read off the reduced
//! row echelon form, which is unique, so the result does not depend on the
//! internal elimination order.

use num::{BigRational, Zero};
use serde::Serialize;

pub type QVector = Vec<BigRational>;

/// Dense exact-rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigRational) {
        let e = &mut self.data[r * self.cols + c];
        *e = &*e + v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigRational]) -> QVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Permute rows and columns; the kernel dimension must be unaffected.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> QMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = QMatrix::zero(self.rows, self.cols);
        for (r, &pr) in row_perm.iter().enumerate() {
            for (c, &pc) in col_perm.iter().enumerate() {
                out.set(r, c, self.get(pr, pc).clone());
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, BigRational)>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Sparse row operations: `dst -= factor * src`, rows kept sorted by column.
fn row_axpy(
    dst: &[(usize, BigRational)],
    src: &[(usize, BigRational)],
    factor: &BigRational,
) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            let v = -(factor * &src[j].1);
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 - factor * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form of the matrix, as sparse rows plus the pivot
/// column of each returned row (rows sorted by pivot column).
fn rref(m: &QMatrix) -> Vec<(usize, Vec<(usize, BigRational)>)> {
    let mut active: Vec<Vec<(usize, BigRational)>> = m.sparse_rows();
    active.retain(|r| !r.is_empty());
    let mut reduced: Vec<(usize, Vec<(usize, BigRational)>)> = Vec::new();

    while !active.is_empty() {
        // choose the row with the fewest entries, among those with the
        // leftmost leading column (keeps fill-in low on sparse systems)
        let lead = active.iter().map(|r| r[0].0).min().unwrap();
        let pick = active
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == lead)
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i)
            .unwrap();
        let mut pivot_row = active.swap_remove(pick);
        let inv = pivot_row[0].1.clone();
        for e in &mut pivot_row {
            e.1 = &e.1 / &inv;
        }
        for row in &mut active {
            if let Ok(pos) = row.binary_search_by_key(&lead, |e| e.0) {
                let f = row[pos].1.clone();
                *row = row_axpy(row, &pivot_row, &f);
            }
        }
        active.retain(|r| !r.is_empty());
        // eliminate the new pivot column from previously reduced rows
        for (_, row) in &mut reduced {
            if let Ok(pos) = row.binary_search_by_key(&lead, |e| e.0) {
                let f = row[pos].1.clone();
                *row = row_axpy(row, &pivot_row, &f);
            }
        }
        reduced.push((lead, pivot_row));
    }
    reduced.sort_by_key(|(p, _)| *p);
    reduced
}

/// Rank of the matrix over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    rref(m).len()
}

/// Basis of the right nullspace, read off the reduced row echelon form.
///
/// One basis vector per free column, in ascending column order; the vector
/// for free column `j` has entry 1 at `j`. This is the canonical reduced
/// basis: it is independent of pivoting choices.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    let reduced = rref(m);
    let pivot_cols: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
    let is_pivot = {
        let mut v = vec![false; m.cols];
        for &p in &pivot_cols {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); m.cols];
        v[free] = BigRational::from_integer(1.into());
        for (pcol, row) in &reduced {
            if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                v[*pcol] = -row[pos].1.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Exact rational rendered as "p/q" (or "p" for integers), for reports.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom() == &num::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serializable view of a kernel basis with exact entries.
#[derive(Serialize)]
pub struct KernelJson {
    pub dimension: usize,
    pub basis: Vec<Vec<String>>,
}

pub fn kernel_json(basis: &[QVector]) -> KernelJson {
    KernelJson {
        dimension: basis.len(),
        basis: basis
            .iter()
            .map(|v| v.iter().map(rational_string).collect())
            .collect(),
    }
}
