//! Matrices and vectors whose entries are truncated power series.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;

/// A coordinate vector `sum_j S_j e_j` of an element of a free
/// `C[[b]]`-module, stored as the column `(S_1, ..., S_p)`.
pub type SeriesVec = Vec<TruncSeries>;

/// Known order of a coordinate vector (minimum over entries).
pub fn vec_order(v: &[TruncSeries]) -> usize {
    v.iter().map(TruncSeries::known_order).min().unwrap_or(0)
}

pub fn vec_truncate(v: &[TruncSeries], order: usize) -> SeriesVec {
    v.iter().map(|s| s.truncate(order)).collect()
}

pub fn vec_add(a: &[TruncSeries], b: &[TruncSeries]) -> SeriesVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[TruncSeries], b: &[TruncSeries]) -> SeriesVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[TruncSeries], s: &TruncSeries) -> SeriesVec {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_shift_up(a: &[TruncSeries], k: usize) -> SeriesVec {
    a.iter().map(|x| x.shift_up(k)).collect()
}

pub fn vec_is_zero(a: &[TruncSeries]) -> bool {
    a.iter().all(TruncSeries::is_zero)
}

/// Minimal valuation over the entries (the `b`-adic order of the element).
pub fn vec_valuation(a: &[TruncSeries]) -> usize {
    a.iter().map(|s| s.valuation().bound()).min().unwrap_or(0)
}

/// The unit vector `e_i` of rank `p`, known mod `b^order`.
pub fn unit_vec(p: usize, i: usize, order: usize) -> SeriesVec {
    (0..p)
        .map(|j| {
            if i == j {
                TruncSeries::one(order)
            } else {
                TruncSeries::zero(order)
            }
        })
        .collect()
}

/// The constant term of every entry.
pub fn vec_constant(a: &[TruncSeries]) -> Vec<Q> {
    a.iter().map(TruncSeries::constant_term).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TruncSeries>,
}

impl SeriesMatrix {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        SeriesMatrix {
            rows,
            cols,
            entries: vec![TruncSeries::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.set(i, i, TruncSeries::one(order));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<TruncSeries>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged matrix rows".into()));
            }
            entries.extend(row);
        }
        Ok(SeriesMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[SeriesVec]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = SeriesMatrix {
            rows: r,
            cols: c,
            entries: vec![TruncSeries::zero(0); r * c],
        };
        for (j, col) in cols.iter().enumerate() {
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    /// Assemble `sum_k coeffs[k] b^k` known mod `b^coeffs.len()`.
    pub fn from_coefficients(coeffs: &[Mat]) -> Self {
        let (r, c) = coeffs.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let n = coeffs.len();
        let mut out = Self::zeros(r, c, n);
        for i in 0..r {
            for j in 0..c {
                let s: Vec<Q> = coeffs.iter().map(|m| m[(i, j)].clone()).collect();
                out.set(i, j, TruncSeries::from_coeffs(s));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: TruncSeries) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> SeriesVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> SeriesVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<SeriesVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn known_order(&self) -> usize {
        self.entries
            .iter()
            .map(TruncSeries::known_order)
            .min()
            .unwrap_or(0)
    }

    fn map(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> Self {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|s| s.truncate(order))
    }

    /// Re-read every entry as a polynomial modulo `b^order`.
    pub fn with_order(&self, order: usize) -> Self {
        self.map(|s| s.with_order(order))
    }

    pub fn transpose(&self) -> Self {
        let mut t = SeriesMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: vec![TruncSeries::zero(0); self.entries.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entrywise `S(b) -> S(-b)`.
    pub fn reflect(&self) -> Self {
        self.map(TruncSeries::reflect)
    }

    /// Entrywise `b^2 S'(b)`.
    pub fn b2_derivative(&self) -> Self {
        self.map(TruncSeries::b2_derivative)
    }

    pub fn shift_up(&self, k: usize) -> Self {
        self.map(|s| s.shift_up(k))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let order = self.known_order().min(other.known_order());
        let mut out = Self::zeros(self.rows, other.cols, order);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = TruncSeries::zero(order);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.set(i, j, acc.truncate(order));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[TruncSeries]) -> SeriesVec {
        assert_eq!(self.cols, v.len());
        let order = self.known_order().min(vec_order(v));
        (0..self.rows)
            .map(|i| {
                let mut acc = TruncSeries::zero(order);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if a.is_zero() || x.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * x);
                }
                acc.truncate(order)
            })
            .collect()
    }

    /// Coefficient matrix of `b^k`.
    pub fn coefficient(&self, k: usize) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some(c) = self.get(i, j).coeff(k) {
                    m[(i, j)] = c.clone();
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncSeries::is_zero)
    }

    /// Inverse of a matrix whose constant term is invertible.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.known_order();
        let c0inv = self.coefficient(0).inverse().ok_or(Error::NotInvertible)?;
        let coeffs: Vec<Mat> = (0..n).map(|k| self.coefficient(k)).collect();
        let mut inv: Vec<Mat> = Vec::with_capacity(n);
        if n > 0 {
            inv.push(c0inv.clone());
        }
        for k in 1..n {
            let mut acc = Mat::zeros(self.rows, self.rows);
            for j in 1..=k {
                if coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&coeffs[j].mul(&inv[k - j]));
            }
            inv.push(c0inv.mul(&acc).scale(&Q::from_int(-1)));
        }
        if n == 0 {
            return Ok(Self::zeros(self.rows, self.rows, 0));
        }
        Ok(Self::from_coefficients(&inv))
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let order = self.known_order().min(other.known_order());
        let r = self.rows + other.rows;
        let c = self.cols + other.cols;
        let mut m = Self::zeros(r, c, order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).truncate(order));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).truncate(order));
            }
        }
        m
    }
}

impl fmt::Debug for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "] mod b^{}", self.known_order())
    }
}

/// A seeded pseudo-random invertible `p×p` matrix with small integer
/// coefficients in degrees below `min(order, 4)`.
pub fn random_unit_matrix(p: usize, order: usize, seed: u64) -> SeriesMatrix {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Mat {
        let rows: Vec<Vec<i64>> = (0..p)
            .map(|_| (0..p).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Mat::from_ints(&refs)
    };
    let head = loop {
        let m = draw(&mut rng);
        if !m.det().is_zero() {
            break m;
        }
    };
    let mut coeffs = vec![head];
    for _ in 1..order.min(4) {
        coeffs.push(draw(&mut rng));
    }
    coeffs.resize(order, Mat::zeros(p, p));
    SeriesMatrix::from_coefficients(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], n: usize) -> TruncSeries {
        let v: Vec<Q> = c.iter().map(|&x| Q::from_int(x)).collect();
        TruncSeries::from_poly(&v, n)
    }

    #[test]
    fn invert_roundtrip() {
        let m = SeriesMatrix::from_rows(vec![
            vec![poly(&[1, 2], 6), poly(&[0, 1, 1], 6)],
            vec![poly(&[3], 6), poly(&[2, 0, 0, 5], 6)],
        ])
        .unwrap();
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), SeriesMatrix::identity(2, 6));
        assert_eq!(inv.mul(&m), SeriesMatrix::identity(2, 6));
    }

    #[test]
    fn invert_rejects_singular_constant_term() {
        let m = SeriesMatrix::from_rows(vec![
            vec![poly(&[1], 4), poly(&[1], 4)],
            vec![poly(&[1], 4), poly(&[1, 1], 4)],
        ])
        .unwrap();
        assert_eq!(m.invert(), Err(Error::NotInvertible));
    }
}
