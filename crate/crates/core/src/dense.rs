//! Dense square matrices, row-major, indexed by 0-based positions in `S`.

use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    size: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(size: usize) -> Self {
        IntMatrix {
            size,
            data: vec![0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for p in 0..size {
            m[(p, p)] = 1;
        }
        m
    }

    /// Builds from rows; every row must have `rows.len()` entries.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), size, "matrix rows must be square");
            data.extend_from_slice(row);
        }
        IntMatrix { size, data }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for p in 0..size {
            for q in 0..size {
                data.push(f(p, q));
            }
        }
        IntMatrix { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, p: usize) -> &[i64] {
        &self.data[p * self.size..(p + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.data.chunks(self.size.max(1)).take(self.size)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(p, q)` with `p < q` where the entry differs from its transpose.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|p| (p + 1..self.size).map(move |q| (p, q)))
            .find(|&(p, q)| self[(p, q)] != self[(q, p)])
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    /// Exact product, or `None` on 64-bit overflow.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.size, rhs.size, "size mismatch");
        let s = self.size;
        let mut out = IntMatrix::zeros(s);
        for p in 0..s {
            for r in 0..s {
                let a = self[(p, r)];
                if a == 0 {
                    continue;
                }
                for q in 0..s {
                    let prod = a.checked_mul(rhs[(r, q)])?;
                    let slot = &mut out.data[p * s + q];
                    *slot = slot.checked_add(prod)?;
                }
            }
        }
        Some(out)
    }

    /// Exact product.
    ///
    /// # Panics
    ///
    /// Panics on 64-bit overflow.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs)
            .expect("integer matrix product overflowed")
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix {
            size: self.size,
            data: self.data.iter().map(|&v| v as f64).collect(),
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (p, q): (usize, usize)) -> &i64 {
        &self.data[p * self.size + q]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (p, q): (usize, usize)) -> &mut i64 {
        &mut self.data[p * self.size + q]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    size: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(size: usize) -> Self {
        RealMatrix {
            size,
            data: vec![0.0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for p in 0..size {
            m[(p, p)] = 1.0;
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), size, "matrix rows must be square");
            data.extend_from_slice(row);
        }
        RealMatrix { size, data }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for p in 0..size {
            for q in 0..size {
                data.push(f(p, q));
            }
        }
        RealMatrix { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row(&self, p: usize) -> &[f64] {
        &self.data[p * self.size..(p + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.size.max(1)).take(self.size)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// First `(p, q)` with `|a_pq - a_qp| > rel_tol * max|a|`. NaN entries count as asymmetric.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn first_asymmetry(&self, rel_tol: f64) -> Option<(usize, usize)> {
        let limit = rel_tol * self.max_abs();
        (0..self.size)
            .flat_map(|p| (p + 1..self.size).map(move |q| (p, q)))
            .find(|&(p, q)| !((self[(p, q)] - self[(q, p)]).abs() <= limit))
    }

    /// Replaces each off-diagonal pair by its mean.
    pub fn symmetrize(&mut self) {
        let s = self.size;
        for p in 0..s {
            for q in p + 1..s {
                let mean = 0.5 * (self[(p, q)] + self[(q, p)]);
                self[(p, q)] = mean;
                self[(q, p)] = mean;
            }
        }
    }

    pub fn scaled(&self, factor: f64) -> RealMatrix {
        RealMatrix {
            size: self.size,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn mul(&self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.size, rhs.size, "size mismatch");
        let s = self.size;
        let mut out = RealMatrix::zeros(s);
        for p in 0..s {
            for r in 0..s {
                let a = self[(p, r)];
                if a == 0.0 {
                    continue;
                }
                let src = rhs.row(r);
                let dst = &mut out.data[p * s..(p + 1) * s];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `y = A x`.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.size);
        debug_assert_eq!(y.len(), self.size);
        for (yi, row) in y.iter_mut().zip(self.rows()) {
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (p, q): (usize, usize)) -> &f64 {
        &self.data[p * self.size + q]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (p, q): (usize, usize)) -> &mut f64 {
        &mut self.data[p * self.size + q]
    }
}

impl From<&IntMatrix> for RealMatrix {
    fn from(m: &IntMatrix) -> Self {
        m.to_real()
    }
}
