//! Dense matrices over a [`FieldCtx`] with exact elimination.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Fq};

/// Row-major dense matrix. Entries are interpreted in the field passed to
/// each operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq { rows, cols, data: vec![Fq::Zero; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::Pow(0));
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Fq>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::ShapeMismatch {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Ok(MatrixFq { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixFq { rows, cols, data }
    }

    /// Parses nested arrays of element strings, reducing exponents in `ctx`.
    pub fn parse(ctx: &FieldCtx, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| ctx.parse_element(s)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }

    /// Nested arrays of element strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.row_iter().map(|r| r.iter().map(Fq::to_string).collect()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fq) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fq]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(Fq) -> Fq) -> Self {
        MatrixFq { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch { op: "vstack", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch { op: "hstack", left: self.shape(), right: other.shape() });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }
}

/// Product A·B.
pub fn mat_mul(ctx: &FieldCtx, a: &MatrixFq, b: &MatrixFq) -> Result<MatrixFq> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch { op: "mat_mul", left: a.shape(), right: b.shape() });
    }
    Ok(MatrixFq::from_fn(a.rows, b.cols, |i, j| {
        ctx.sum((0..a.cols).map(|t| ctx.mul(a.get(i, t), b.get(t, j))))
    }))
}

pub fn transpose(m: &MatrixFq) -> MatrixFq {
    m.transpose()
}

/// Entry-wise x ↦ x^q in a field of size q².
pub fn conjugate(ctx: &FieldCtx, m: &MatrixFq) -> Result<MatrixFq> {
    let base = ctx.square_base().ok_or(crate::gf::GfError::NotASquareField(ctx.q() as u64))?;
    Ok(m.map(|x| ctx.pow(x, base as u64)))
}

/// Conjugate transpose: entry (i, j) is M[j][i]^q.
pub fn conj_transpose(ctx: &FieldCtx, m: &MatrixFq) -> Result<MatrixFq> {
    Ok(conjugate(ctx, m)?.transpose())
}

/// Reduced row echelon form with first-nonzero pivoting, plus pivot columns.
pub fn rref(ctx: &FieldCtx, m: &MatrixFq) -> (MatrixFq, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = ctx.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            a.set(r, j, ctx.mul(a.get(r, j), inv));
        }
        for i in 0..a.rows {
            let f = a.get(i, c);
            if i == r || f.is_zero() {
                continue;
            }
            let nf = ctx.neg(f);
            for j in c..a.cols {
                let v = ctx.add(a.get(i, j), ctx.mul(nf, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank by forward elimination.
pub fn rank(ctx: &FieldCtx, m: &MatrixFq) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = ctx.inv(a.get(r, c)).expect("pivot is nonzero");
        for i in r + 1..a.rows {
            let f = a.get(i, c);
            if f.is_zero() {
                continue;
            }
            let nf = ctx.neg(ctx.mul(f, inv));
            for j in c..a.cols {
                let v = ctx.add(a.get(i, j), ctx.mul(nf, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Basis (as rows) of the right null space {x : M·xᵀ = 0}.
pub fn kernel_basis(ctx: &FieldCtx, m: &MatrixFq) -> MatrixFq {
    let (r, pivots) = rref(ctx, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = MatrixFq::zeros(free.len(), m.cols);
    for (b, &f) in free.iter().enumerate() {
        out.set(b, f, Fq::Pow(0));
        for (pr, &pc) in pivots.iter().enumerate() {
            out.set(b, pc, ctx.neg(r.get(pr, f)));
        }
    }
    out
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(ctx: &FieldCtx, m: &MatrixFq) -> Option<MatrixFq> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let aug = m.hstack(&MatrixFq::identity(n)).ok()?;
    let (r, pivots) = rref(ctx, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(MatrixFq::from_fn(n, n, |i, j| r.get(i, n + j)))
}

/// Incrementally maintained echelon basis of a growing set of vectors.
///
/// Used by subset searches that add one vector at a time and need to know
/// whether it lies in the span of the previous ones.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, ctx: &FieldCtx, v: &[Fq]) -> Vec<Fq> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p];
            if f.is_zero() {
                continue;
            }
            let nf = ctx.neg(f);
            for (x, &y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = ctx.add(*x, ctx.mul(nf, y));
                }
            }
        }
        w
    }

    /// Adds `v` if it is independent of the basis; returns whether it was.
    pub fn push(&mut self, ctx: &FieldCtx, v: &[Fq]) -> bool {
        let w = self.reduce(ctx, v);
        self.push_reduced(ctx, w)
    }

    /// Adds an already reduced residual; returns false when it is zero.
    pub fn push_reduced(&mut self, ctx: &FieldCtx, mut w: Vec<Fq>) -> bool {
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = ctx.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn pop(&mut self) {
        self.rows.pop();
        self.pivots.pop();
    }
}
