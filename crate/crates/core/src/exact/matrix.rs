//! Exact symmetric matrices over `Q(√2)` and their characteristic polynomials.

use std::fmt;

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::qs2::QSqrt2;

/// Dense symmetric matrix; symmetry is checked exactly on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<QSqrt2>,
}

impl SymMatrix {
    /// Builds from row-major entries, rejecting anything not exactly symmetric.
    pub fn new(dim: usize, entries: Vec<QSqrt2>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {dim}x{dim} entries, got {}",
                entries.len()
            )));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::Inconsistency(format!(
                        "matrix not symmetric at ({i},{j}): {} vs {}",
                        entries[i * dim + j],
                        entries[j * dim + i]
                    )));
                }
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn diagonal(diag: Vec<QSqrt2>) -> Result<Self> {
        let dim = diag.len();
        let mut entries = vec![QSqrt2::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(vec![QSqrt2::one(); dim]).expect("identity is symmetric")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<QSqrt2>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j).clone());
            }
        }
        SymMatrix { dim: k, entries }
    }

    /// Connected components of the graph whose edges are the nonzero
    /// off-diagonal entries. A simultaneous permutation of rows and columns
    /// puts the matrix in block-diagonal form along these components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let i = comp[head];
                head += 1;
                for j in 0..n {
                    if !seen[j] && !self.get(i, j).is_zero() {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn trace(&self) -> QSqrt2 {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// Dense product `self · rhs` (row-major, not necessarily symmetric).
    pub fn matmul(&self, rhs: &[QSqrt2]) -> Vec<QSqrt2> {
        let n = self.dim;
        let mut out = vec![QSqrt2::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `p(M)` by Horner's scheme, row-major.
    pub fn eval_poly(&self, p: &Poly) -> Vec<QSqrt2> {
        let n = self.dim;
        let mut acc = vec![QSqrt2::zero(); n * n];
        for c in p.coeffs().iter().rev() {
            acc = self.matmul(&acc);
            for i in 0..n {
                acc[i * n + i] += c;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_f64())
    }

    /// Exact rank by elimination over the field.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let mut a: Vec<Vec<QSqrt2>> = self.rows();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = a[rank][col].inv().expect("pivot is nonzero");
            for r in rank + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let t = &f * &a[rank][c];
                    a[r][c] -= &t;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `det(xI − M)` for a symmetric matrix, monic of degree `dim`.
///
/// The matrix is first split into its connected components (a permutation
/// similarity), and each component's determinant is computed by fraction-free
/// Bareiss elimination over `Q(√2)[x]`. The leading principal minors of
/// `xI − M` are themselves characteristic polynomials, hence monic and never
/// zero, so no pivoting is required.
pub fn char_poly(m: &SymMatrix) -> Result<Poly> {
    m.components()
        .iter()
        .map(|comp| bareiss_char_poly(&m.principal(comp)))
        .try_fold(Poly::one(), |acc, p| Ok(&acc * &p?))
}

fn bareiss_char_poly(m: &SymMatrix) -> Result<Poly> {
    let n = m.dim();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-m.get(i, j));
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = Poly::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            return Err(Error::Inconsistency(format!(
                "vanishing leading minor at step {k}"
            )));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = &a[k][k] * &a[i][j];
                let rhs = &a[i][k] * &a[k][j];
                a[i][j] = (&lhs - &rhs).exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if !det.is_monic() || det.degree() != Some(n) {
        return Err(Error::Inconsistency(format!(
            "characteristic polynomial {det} is not monic of degree {n}"
        )));
    }
    Ok(det)
}
