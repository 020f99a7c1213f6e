use std::fmt;

use crate::coefficients::Field;
use crate::linalg::FieldEchelon;

/// Dense square-or-rectangular matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Matrix with a single `1` per column: column `j` maps to row `image[j]`.
    pub fn from_column_images(rows: usize, image: &[usize]) -> Self {
        let mut m = Self::zero(rows, image.len());
        for (j, &i) in image.iter().enumerate() {
            m.set(i, j, F::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn rank(&self) -> usize {
        let mut ech = FieldEchelon::new();
        for i in 0..self.rows {
            let row: Vec<(usize, F)> = (0..self.cols)
                .filter(|&j| !self.get(i, j).is_zero())
                .map(|j| (j, self.get(i, j).clone()))
                .collect();
            ech.insert(row);
        }
        ech.rank()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / self.cols, k % self.cols, x))
    }
}

impl<F: Field + fmt::Display> Matrix<F> {
    /// Lists at most `cap` nonzero entries.
    pub fn describe(&self, cap: usize) -> String {
        let all: Vec<String> = self
            .entries()
            .map(|(i, j, x)| format!("[{i},{j}] {x}"))
            .collect();
        if all.is_empty() {
            return "0".into();
        }
        let more = all.len().saturating_sub(cap);
        let mut s = all.into_iter().take(cap).collect::<Vec<_>>().join(", ");
        if more > 0 {
            s.push_str(&format!(", … ({more} more)"));
        }
        s
    }
}
