//! Exact dense linear algebra over GF(q²).
//!
//! Every subspace basis returned here is in reduced row echelon form with
//! zero rows dropped, so two subspaces are equal exactly when their bases
//! compare equal.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elt, Field};

#[derive(Clone)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
    field: Field,
}

/// Output of [`GfMatrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl PartialEq for GfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for GfMatrix {}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|e| e.0).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl GfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            rows,
            cols,
            data: vec![Elt::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elt::ONE);
        }
        m
    }

    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(e) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::DimensionMismatch(format!(
                "entry {e} outside GF({})",
                field.order()
            )));
        }
        Ok(GfMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Elt>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from raw encodings; panics on bad input.
    pub fn from_u32(field: &Field, rows: &[&[u32]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().copied().map(Elt).collect())
            .collect();
        Self::from_rows(field, cols, rows).expect("well-formed matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn data(&self) -> &[Elt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    fn same_field(&self, other: &GfMatrix) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                "matrices over different fields".into(),
            ))
        }
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns on {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(GfMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Elt::ZERO;
                for t in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Columns `idx`, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> GfMatrix {
        let data = idx.iter().flat_map(|&i| self.row(i).to_vec()).collect();
        GfMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    /// Entry-wise map, e.g. the Frobenius image.
    pub fn map(&self, f: impl Fn(Elt) -> Elt) -> GfMatrix {
        GfMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
            field: self.field.clone(),
        }
    }

    /// Multiplies column `j` by `v[j]`.
    pub fn scale_columns(&self, v: &[Elt]) -> Result<GfMatrix> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "scaling vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &s) in v.iter().enumerate() {
                out.set(i, j, f.mul(self.get(i, j), s));
            }
        }
        Ok(out)
    }

    /// Leftmost-pivot, topmost-row Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let factor = f.neg(factor);
                for j in c..cols {
                    let v = f.add(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the row space: RREF with zero rows removed.
    pub fn row_basis(&self) -> GfMatrix {
        let Rref { matrix, rank, .. } = self.rref();
        GfMatrix {
            rows: rank,
            cols: self.cols,
            data: matrix.data[..rank * self.cols].to_vec(),
            field: self.field.clone(),
        }
    }

    /// Basis of `{x : M xᵀ = 0}`, in RREF.
    pub fn nullspace(&self) -> GfMatrix {
        let f = &self.field;
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Elt::ZERO; self.cols];
            x[free] = Elt::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = f.neg(r.get(i, free));
            }
            basis.push(x);
        }
        GfMatrix::from_rows(f, self.cols, basis)
            .expect("rows have matching length")
            .row_basis()
    }

    /// Basis of rowspace(self) ∩ rowspace(other), from the kernel of the
    /// stacked system `x·A − y·B = 0`.
    pub fn rowspace_meet(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "meet of subspaces in dimensions {} and {}",
                self.cols, other.cols
            )));
        }
        let f = &self.field;
        let stacked = self.stack(&other.map(|e| f.neg(e)))?;
        let kernel = stacked.transpose().nullspace();
        let a_part: Vec<usize> = (0..self.rows).collect();
        let coeffs = kernel.select_columns(&a_part);
        Ok(coeffs.mul(self)?.row_basis())
    }

    /// Text form: `rows cols`, then one line of encodings per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.0.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output from a line iterator.
    pub fn parse_lines<'a>(
        field: &Field,
        lines: &mut impl Iterator<Item = &'a str>,
    ) -> Result<GfMatrix> {
        let dims =
            next_nonempty(lines).ok_or_else(|| Error::Parse("missing matrix shape".into()))?;
        let dims = parse_numbers(dims)?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("expected `rows cols`, got {dims:?}")));
        };
        let (rows, cols) = (rows as usize, cols as usize);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = next_nonempty(lines)
                .ok_or_else(|| Error::Parse(format!("missing matrix row {i}")))?;
            let vals = parse_numbers(line)?;
            if vals.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    vals.len()
                )));
            }
            data.extend(vals.into_iter().map(Elt));
        }
        GfMatrix::new(field, rows, cols, data).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<GfMatrix> {
        Self::parse_lines(field, &mut text.lines())
    }
}

pub(crate) fn next_nonempty<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Option<&'a str> {
    lines.find(|l| !l.trim().is_empty())
}

pub(crate) fn parse_numbers(line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect()
}
