//! Full-rank `C[[b]]`-lattices inside `b^{-m} E` for a free module `E`.
//!
//! A lattice at shift `m` is stored through *scaled* coordinates: the
//! element `x = b^{-m} v` is represented by `v`, and the lattice is
//! `b^{-m}` times the column span of an echelon matrix `H`. `H` is lower
//! triangular, column `i` has diagonal entry `b^{d_i}`, and every entry
//! below a diagonal `b^{d_j}` is a polynomial of degree `< d_j`. For a
//! given lattice that matrix is unique, so equality is entrywise.
//!
//! Scaled coordinates are only known modulo `b^P`. Each lattice carries the
//! tight exponent `K` with `b^K (scaled ambient) ⊆ L`; every operation
//! refuses with `InsufficientPrecision` when `P < 2K + 2`.

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::{vec_order, SeriesMatrix, SeriesVec};

type Poly = Vec<Q>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Q::is_zero) {
        p.pop();
    }
    p
}

fn poly_of(s: &TruncSeries) -> Poly {
    trim(s.coeffs().to_vec())
}

fn poly_mul(a: &[Q], b: &[Q]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Poly {
    let n = a.len().max(b.len());
    let z = Q::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
            .collect(),
    )
}

fn poly_valuation(a: &[Q]) -> Option<usize> {
    a.iter().position(|c| !c.is_zero())
}

/// Division by `b^k` of a polynomial known to be divisible by it.
fn poly_div_bk(a: &[Q], k: usize) -> Poly {
    debug_assert!(a.iter().take(k).all(Q::is_zero));
    a.iter().skip(k).cloned().collect()
}

fn monomial_poly(k: usize) -> Poly {
    let mut p = vec![Q::zero(); k + 1];
    p[k] = Q::one();
    p
}

fn check_margin(context: &'static str, k: usize, have: usize) -> Result<()> {
    let needed = 2 * k + 2;
    if have < needed {
        return Err(Error::precision(context, needed, have));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    shift: usize,
    /// Echelon basis, `h[row][col]`, exact polynomials.
    h: Vec<Vec<Poly>>,
    diag: Vec<usize>,
    /// `b^K H^{-1}`, exact polynomials.
    g: Vec<Vec<Poly>>,
    k: usize,
    known_order: usize,
}

impl Lattice {
    /// Hermite reduction of `generators` (scaled coordinates at `shift`),
    /// working modulo `b^known_order` (further capped by the generators' own
    /// known orders).
    pub fn echelonize(
        generators: &[SeriesVec],
        rank: usize,
        shift: usize,
        known_order: usize,
    ) -> Result<Lattice> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::ShapeMismatch("generator length differs from rank".into()));
        }
        let order = generators
            .iter()
            .map(|g| vec_order(g))
            .fold(known_order, usize::min);
        let mut work: Vec<SeriesVec> = generators
            .iter()
            .map(|g| g.iter().map(|s| s.truncate(order)).collect())
            .collect();
        work.retain(|g| g.iter().any(|s| !s.is_zero()));

        let mut cols: Vec<SeriesVec> = Vec::with_capacity(rank);
        let mut diag = Vec::with_capacity(rank);
        for r in 0..rank {
            let pivot = work
                .iter()
                .enumerate()
                .filter_map(|(i, g)| match g[r].valuation() {
                    crate::series::Valuation::Exact(v) => Some((v, i)),
                    _ => None,
                })
                .min();
            let Some((d, pi)) = pivot else {
                return Err(Error::RankDeficient);
            };
            let mut pc = work.swap_remove(pi);
            // Make the pivot entry exactly b^d.
            let unit = pc[r].shift_down(d).with_order(order);
            let uinv = unit.invert()?;
            pc = pc.iter().map(|s| s * &uinv).collect();
            for g in &mut work {
                if let crate::series::Valuation::Exact(v) = g[r].valuation() {
                    let factor = g[r].shift_down(d).with_order(order);
                    for (x, y) in g.iter_mut().zip(&pc) {
                        *x = &*x - &(&factor * y);
                    }
                    debug_assert!(v >= d);
                }
            }
            work.retain(|g| g.iter().any(|s| !s.is_zero()));
            cols.push(pc);
            diag.push(d);
        }

        // Reduce entries below each diagonal modulo that diagonal power.
        let mut h: Vec<Vec<Poly>> = vec![vec![Vec::new(); rank]; rank];
        for (i, c) in cols.iter().enumerate() {
            for (row, s) in c.iter().enumerate() {
                h[row][i] = if row < i { Vec::new() } else { poly_of(s) };
            }
            h[i][i] = monomial_poly(diag[i]);
        }
        for i in 0..rank {
            for j in i + 1..rank {
                let q: Poly = h[j][i].iter().skip(diag[j]).cloned().collect();
                if q.is_empty() {
                    continue;
                }
                for row in j..rank {
                    let t = poly_mul(&q, &h[row][j]);
                    h[row][i] = poly_sub(&h[row][i], &t);
                }
                h[j][i].truncate(diag[j]);
                h[j][i] = trim(std::mem::take(&mut h[j][i]));
            }
            for row in i + 1..rank {
                h[row][i].truncate(order);
                h[row][i] = trim(std::mem::take(&mut h[row][i]));
            }
        }
        Self::from_echelon(rank, shift, h, diag, order)
    }

    fn from_echelon(
        rank: usize,
        shift: usize,
        h: Vec<Vec<Poly>>,
        diag: Vec<usize>,
        known_order: usize,
    ) -> Result<Lattice> {
        let total: usize = diag.iter().sum();
        // Columns of b^total H^{-1} by forward substitution.
        let mut x: Vec<Vec<Poly>> = vec![vec![Vec::new(); rank]; rank];
        for col in 0..rank {
            for i in 0..rank {
                let mut acc = if i == col { monomial_poly(total) } else { Vec::new() };
                for j in 0..i {
                    if !h[i][j].is_empty() && !x[j][col].is_empty() {
                        acc = poly_sub(&acc, &poly_mul(&h[i][j], &x[j][col]));
                    }
                }
                x[i][col] = poly_div_bk(&acc, diag[i].min(acc.len()));
            }
        }
        let minval = x
            .iter()
            .flatten()
            .filter_map(|p| poly_valuation(p))
            .min()
            .unwrap_or(total);
        let k = total - minval;
        let g = x
            .into_iter()
            .map(|row| row.into_iter().map(|p| poly_div_bk(&p, minval.min(p.len()))).collect())
            .collect();
        check_margin("lattice", k, known_order)?;
        Ok(Lattice {
            rank,
            shift,
            h,
            diag,
            g,
            k,
            known_order,
        })
    }

    /// The reference module `E` itself, described at `shift`.
    pub fn ambient(rank: usize, shift: usize, known_order: usize) -> Result<Lattice> {
        let gens: Vec<SeriesVec> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            TruncSeries::monomial(Q::one(), shift, known_order)
                        } else {
                            TruncSeries::zero(known_order)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::echelonize(&gens, rank, shift, known_order)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn known_order(&self) -> usize {
        self.known_order
    }

    /// Tight `K` with `b^K·(scaled ambient) ⊆ L`.
    pub fn conductor(&self) -> usize {
        self.k
    }

    /// Exponents of the diagonal pivots.
    pub fn pivot_degrees(&self) -> &[usize] {
        &self.diag
    }

    /// Basis vectors (columns of the echelon matrix) in scaled coordinates,
    /// known modulo `b^order`.
    pub fn basis(&self, order: usize) -> Vec<SeriesVec> {
        (0..self.rank)
            .map(|c| {
                (0..self.rank)
                    .map(|r| TruncSeries::from_poly(&self.h[r][c], order))
                    .collect()
            })
            .collect()
    }

    /// Basis vectors at the lattice's own known order.
    pub fn basis_vectors(&self) -> Vec<SeriesVec> {
        self.basis(self.known_order)
    }

    /// The echelon matrix with basis vectors as columns.
    pub fn basis_matrix(&self, order: usize) -> SeriesMatrix {
        SeriesMatrix::from_columns(&self.basis(order))
    }

    /// Smallest valuation among echelon entries.
    pub fn min_valuation(&self) -> usize {
        self.h
            .iter()
            .flatten()
            .filter_map(|p| poly_valuation(p))
            .min()
            .unwrap_or(0)
    }

    /// The same lattice described at the smallest possible shift.
    pub fn reduce_shift(&self) -> Lattice {
        let t = self.shift.min(self.min_valuation());
        if t == 0 {
            return self.clone();
        }
        Lattice {
            rank: self.rank,
            shift: self.shift - t,
            h: self
                .h
                .iter()
                .map(|row| row.iter().map(|p| poly_div_bk(p, t.min(p.len()))).collect())
                .collect(),
            diag: self.diag.iter().map(|d| d - t).collect(),
            g: self.g.clone(),
            k: self.k - t,
            known_order: self.known_order - t,
        }
    }

    /// The same lattice described at a larger shift.
    pub fn rescale(&self, shift: usize) -> Lattice {
        assert!(shift >= self.shift, "rescale can only increase the shift");
        let s = shift - self.shift;
        if s == 0 {
            return self.clone();
        }
        let bs = monomial_poly(s);
        Lattice {
            rank: self.rank,
            shift,
            h: self
                .h
                .iter()
                .map(|row| row.iter().map(|p| poly_mul(p, &bs)).collect())
                .collect(),
            diag: self.diag.iter().map(|d| d + s).collect(),
            g: self.g.clone(),
            k: self.k + s,
            known_order: self.known_order + s,
        }
    }

    /// `G·v` where `G = b^K H^{-1}`, known to the order of `v`.
    fn g_times(&self, v: &[TruncSeries]) -> SeriesVec {
        let order = vec_order(v);
        (0..self.rank)
            .map(|i| {
                let mut acc = TruncSeries::zero(order);
                for (j, x) in v.iter().enumerate() {
                    if self.g[i][j].is_empty() || x.is_zero() {
                        continue;
                    }
                    let gij = TruncSeries::from_poly(&self.g[i][j], order);
                    acc = &acc + &(&gij * x);
                }
                acc
            })
            .collect()
    }

    /// Membership of the element with scaled coordinates `v` (same shift).
    pub fn contains(&self, v: &[TruncSeries]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::ShapeMismatch("vector length differs from rank".into()));
        }
        check_margin("contains", self.k, vec_order(v))?;
        let w = self.g_times(v);
        Ok(w.iter().all(|s| s.valuation().bound() >= self.k))
    }

    /// Membership of an element given at another shift.
    pub fn contains_at(&self, v: &[TruncSeries], shift: usize) -> Result<bool> {
        if shift <= self.shift {
            let s = self.shift - shift;
            let w: SeriesVec = v.iter().map(|x| x.shift_up(s)).collect();
            self.contains(&w)
        } else {
            self.rescale(shift).contains(v)
        }
    }

    /// Coordinates in the echelon basis of elements given in scaled
    /// coordinates; `NotStable` if some element lies outside the lattice.
    pub fn coordinates(&self, v: &[TruncSeries]) -> Result<SeriesVec> {
        check_margin("coordinates", self.k, vec_order(v))?;
        let w = self.g_times(v);
        if w.iter().any(|s| s.valuation().bound() < self.k) {
            return Err(Error::NotStable);
        }
        Ok(w.iter().map(|s| s.shift_down(self.k)).collect())
    }

    /// `L1 + L2`.
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.rank != other.rank {
            return Err(Error::ShapeMismatch("lattices of different rank".into()));
        }
        let shift = self.shift.max(other.shift);
        let a = self.rescale(shift);
        let b = other.rescale(shift);
        let order = a.known_order.min(b.known_order);
        let mut gens = a.basis(order);
        gens.extend(b.basis(order));
        Self::echelonize(&gens, self.rank, shift, order)
    }

    /// Equality as subsets of `E[b^{-1}]`.
    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        if self.rank != other.rank {
            return Ok(false);
        }
        let shift = self.shift.max(other.shift);
        let a = self.rescale(shift);
        let b = other.rescale(shift);
        check_margin("equality", a.k.max(b.k), a.known_order.min(b.known_order))?;
        Ok(a.h == b.h)
    }

    /// `L1 ⊆ L2`.
    pub fn is_subset_of(&self, other: &Lattice) -> Result<bool> {
        let shift = self.shift.max(other.shift);
        let a = self.rescale(shift);
        let b = other.rescale(shift);
        for v in a.basis_vectors() {
            if !b.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `dim_C(big / small)` for `small ⊆ big`.
    pub fn index_dim(big: &Lattice, small: &Lattice) -> Result<usize> {
        if !small.is_subset_of(big)? {
            return Err(Error::NotASublattice);
        }
        let shift = big.shift.max(small.shift);
        let sb: usize = big.rescale(shift).diag.iter().sum();
        let ss: usize = small.rescale(shift).diag.iter().sum();
        Ok(ss - sb)
    }

    /// `b^j·L` for `j ≥ 0`, kept at the same shift.
    pub fn times_b(&self, j: usize) -> Result<Lattice> {
        let gens: Vec<SeriesVec> = self
            .basis(self.known_order + j)
            .iter()
            .map(|v| v.iter().map(|s| s.shift_up(j).truncate(self.known_order + j)).collect())
            .collect();
        Self::echelonize(&gens, self.rank, self.shift, self.known_order + j)
    }

    /// Inverse-transpose basis `b^K·(H^T)^{-1} = G^T`, columns as vectors.
    /// Used for dual lattices: `{x : x^T L ⊆ C[[b]]} = b^{m-K} span(G^T)`.
    pub fn dual_generators(&self, order: usize) -> Vec<SeriesVec> {
        (0..self.rank)
            .map(|c| {
                (0..self.rank)
                    .map(|r| TruncSeries::from_poly(&self.g[c][r], order))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[&[i64]], n: usize) -> SeriesVec {
        entries
            .iter()
            .map(|c| {
                let q: Vec<Q> = c.iter().map(|&x| Q::from_int(x)).collect();
                TruncSeries::from_poly(&q, n)
            })
            .collect()
    }

    #[test]
    fn echelon_examples() {
        let l = Lattice::echelonize(&[v(&[&[1], &[0, 1]], 8), v(&[&[0], &[0, 1]], 8)], 2, 0, 8)
            .unwrap();
        assert_eq!(l.pivot_degrees(), &[0, 1]);
        let id = Lattice::echelonize(
            &[v(&[&[1], &[0]], 8), v(&[&[0], &[1]], 8), v(&[&[0, 1], &[0]], 8)],
            2,
            0,
            8,
        )
        .unwrap();
        assert_eq!(id, Lattice::ambient(2, 0, 8).unwrap());
        assert_eq!(
            Lattice::echelonize(&[v(&[&[0, 1], &[0]], 8)], 2, 0, 8),
            Err(Error::RankDeficient)
        );
    }

    #[test]
    fn membership() {
        let l = Lattice::echelonize(&[v(&[&[1], &[0]], 8), v(&[&[0], &[0, 1]], 8)], 2, 0, 8)
            .unwrap();
        assert!(!l.contains(&v(&[&[0], &[1]], 8)).unwrap());
        assert!(l.contains(&v(&[&[0], &[0, 1]], 8)).unwrap());
        assert!(l.contains(&v(&[&[0], &[0, 0, 1]], 8)).unwrap());
    }

    #[test]
    fn sums_and_index() {
        let a = Lattice::echelonize(&[v(&[&[0, 1], &[0]], 8), v(&[&[0], &[1]], 8)], 2, 0, 8)
            .unwrap();
        let b = Lattice::echelonize(&[v(&[&[1], &[0]], 8), v(&[&[0], &[0, 1]], 8)], 2, 0, 8)
            .unwrap();
        let e = Lattice::ambient(2, 0, 8).unwrap();
        assert!(a.sum(&b).unwrap().equals(&e).unwrap());
        assert!(a.sum(&a).unwrap().equals(&a).unwrap());
        assert!(!b.equals(&e).unwrap());
        assert_eq!(Lattice::index_dim(&e, &e.times_b(1).unwrap()).unwrap(), 2);
        assert_eq!(Lattice::index_dim(&e, &e).unwrap(), 0);
        assert_eq!(Lattice::index_dim(&b, &e), Err(Error::NotASublattice));
    }

    #[test]
    fn shifted_lattice_matches_rescaled() {
        // <e1, b^{-1} e2> at shift 1 contains E
        let l = Lattice::echelonize(&[v(&[&[0, 1], &[0]], 9), v(&[&[0], &[1]], 9)], 2, 1, 9)
            .unwrap();
        let e = Lattice::ambient(2, 0, 8).unwrap();
        assert_eq!(Lattice::index_dim(&l, &e).unwrap(), 1);
        assert_eq!(l.min_valuation(), 0);
    }

    #[test]
    fn non_diagonal_reduction_is_canonical() {
        // <e1 + b e2 + b^3 e2, b^2 e2> reduces to <e1 + b e2, b^2 e2>
        let l1 = Lattice::echelonize(
            &[v(&[&[1], &[0, 1, 0, 1]], 10), v(&[&[0], &[0, 0, 1]], 10)],
            2,
            0,
            10,
        )
        .unwrap();
        let l2 = Lattice::echelonize(
            &[v(&[&[0], &[0, 0, 1]], 10), v(&[&[1], &[0, 1]], 10)],
            2,
            0,
            10,
        )
        .unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.conductor(), 2);
    }
}
