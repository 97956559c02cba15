//! The `(a,b)`-module type and its standard constructions.
//!
//! A module is presented by a square matrix `M` of truncated series with
//! the row convention `a·e_j = sum_h M[j][h] e_h`. On an element with
//! coordinate column `S` the action is `a(S) = M^T S + b^2 S'`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Mat;
use crate::roots::roots_in_gaussian_rationals;
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::{vec_order, vec_sub, SeriesMatrix, SeriesVec};

#[derive(Clone)]
pub struct AbModule {
    matrix: SeriesMatrix,
    label: Option<String>,
}

impl PartialEq for AbModule {
    /// Presentations are compared, labels ignored.
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl fmt::Debug for AbModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l} ")?;
        }
        write!(f, "{:?}", self.matrix)
    }
}

/// Exponents of a simple-pole module, with multiplicity, sorted by
/// `(re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Q>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<Q>) -> Self {
        eigenvalues.sort_by(Q::lex_cmp);
        Spectrum { eigenvalues }
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.eigenvalues.contains(x)
    }

    pub fn multiplicity(&self, x: &Q) -> usize {
        self.eigenvalues.iter().filter(|e| *e == x).count()
    }

    pub fn negate(&self) -> Spectrum {
        Spectrum::new(self.eigenvalues.iter().map(|e| -e).collect())
    }

    pub fn shift(&self, m: &Q) -> Spectrum {
        Spectrum::new(self.eigenvalues.iter().map(|e| e + m).collect())
    }

    /// Distinct classes mod `Z`, in order of first appearance.
    pub fn classes(&self) -> Vec<Q> {
        let mut out: Vec<Q> = Vec::new();
        for e in &self.eigenvalues {
            let c = e.class_mod_z();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Smallest member of the class of `c` (by real part).
    pub fn min_in_class(&self, c: &Q) -> Option<Q> {
        let class = c.class_mod_z();
        self.eigenvalues
            .iter()
            .filter(|e| e.class_mod_z() == class)
            .min_by(|a, b| a.lex_cmp(b))
            .cloned()
    }

    pub fn max_in_class(&self, c: &Q) -> Option<Q> {
        let class = c.class_mod_z();
        self.eigenvalues
            .iter()
            .filter(|e| e.class_mod_z() == class)
            .max_by(|a, b| a.lex_cmp(b))
            .cloned()
    }

    pub fn sum(&self) -> Q {
        self.eigenvalues.iter().fold(Q::zero(), |acc, e| &acc + e)
    }
}

/// The standard families.
#[derive(Clone, Debug, PartialEq)]
pub enum Construct {
    /// Rank one, `a·e = λb·e`.
    E { lambda: Q },
    /// Rank two on `(x, y)`: `a·x = (λ+n)b·x + b^{n+1}·y`, `a·y = λb·y`.
    Elog { lambda: Q, n: usize },
    /// Rank two on `(y, t)`: `a·y = μb·y`, `a·t = y + (λ-1)b·t`.
    Epair { lambda: Q, mu: Q },
    /// Rank two on `(y, t)`: `a·y = (λ-n)b·y`,
    /// `a·t = (1 + α b^n)·y + (λ-1)b·t`.
    Ealpha { lambda: Q, n: usize, alpha: Q },
    /// Rank `k`: `a·e_j = (λ+j-1)b·e_j + e_{j+1}`, `a·e_k = (λ+k-1)b·e_k`.
    J { k: usize, lambda: Q },
    /// `J(k, λ)` perturbed by `a·e_k += ρ^k b^k·e_1`.
    F { k: usize, lambda: Q, rho: Q },
    /// `a·e_1 = e_2`, `a·e_2 = b·e_3`, `a·e_3 = 0`.
    Rank3Example,
    DirectSum(Vec<Construct>),
}

impl Construct {
    pub fn rank(&self) -> usize {
        match self {
            Construct::E { .. } => 1,
            Construct::Elog { .. } | Construct::Epair { .. } | Construct::Ealpha { .. } => 2,
            Construct::J { k, .. } | Construct::F { k, .. } => *k,
            Construct::Rank3Example => 3,
            Construct::DirectSum(parts) => parts.iter().map(Construct::rank).sum(),
        }
    }

    pub fn default_precision(&self) -> usize {
        2 * self.rank() + 6
    }

    /// Build the presentation, known modulo `b^precision` (default
    /// `2·rank + 6`).
    pub fn build(&self, precision: Option<usize>) -> Result<AbModule> {
        let n = precision.unwrap_or_else(|| self.default_precision());
        if n == 0 {
            return Err(Error::BadParameter("precision must be positive".into()));
        }
        let lin = |c: &Q| TruncSeries::monomial(c.clone(), 1, n);
        let mono = |c: Q, k: usize| TruncSeries::monomial(c, k, n);
        let zero = || TruncSeries::zero(n);
        let one = || TruncSeries::one(n);
        let rows: Vec<Vec<TruncSeries>> = match self {
            Construct::E { lambda } => vec![vec![lin(lambda)]],
            Construct::Elog { lambda, n: shift } => vec![
                vec![lin(&(lambda + &Q::from_int(*shift as i64))), mono(Q::one(), shift + 1)],
                vec![zero(), lin(lambda)],
            ],
            Construct::Epair { lambda, mu } => vec![
                vec![lin(mu), zero()],
                vec![one(), lin(&(lambda - &Q::one()))],
            ],
            Construct::Ealpha { lambda, n: gap, alpha } => {
                if *gap == 0 {
                    return Err(Error::BadParameter("Ealpha needs n >= 1".into()));
                }
                if alpha.is_zero() {
                    return Err(Error::BadParameter("Ealpha needs a nonzero alpha".into()));
                }
                vec![
                    vec![lin(&(lambda - &Q::from_int(*gap as i64))), zero()],
                    vec![&one() + &mono(alpha.clone(), *gap), lin(&(lambda - &Q::one()))],
                ]
            }
            Construct::J { k, lambda } | Construct::F { k, lambda, .. } => {
                if *k == 0 {
                    return Err(Error::BadParameter("rank k must be at least 1".into()));
                }
                let mut rows = vec![vec![zero(); *k]; *k];
                for j in 0..*k {
                    rows[j][j] = lin(&(lambda + &Q::from_int(j as i64)));
                    if j + 1 < *k {
                        rows[j][j + 1] = one();
                    }
                }
                if let Construct::F { rho, .. } = self {
                    if rho.is_zero() {
                        return Err(Error::BadParameter("F needs a nonzero rho".into()));
                    }
                    let extra = mono(rho.pow(*k as u32), *k);
                    rows[k - 1][0] = &rows[k - 1][0] + &extra;
                }
                rows
            }
            Construct::Rank3Example => vec![
                vec![zero(), one(), zero()],
                vec![zero(), zero(), lin(&Q::one())],
                vec![zero(), zero(), zero()],
            ],
            Construct::DirectSum(parts) => {
                let mut it = parts.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::BadParameter("empty direct sum".into()))?;
                let mut acc = first.build(Some(n))?;
                for p in it {
                    acc = acc.direct_sum(&p.build(Some(n))?);
                }
                return Ok(acc.with_label(self.to_string()));
            }
        };
        Ok(AbModule::new(SeriesMatrix::from_rows(rows)?, n)?.with_label(self.to_string()))
    }
}

impl fmt::Display for Construct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construct::E { lambda } => write!(f, "E({lambda})"),
            Construct::Elog { lambda, n } => write!(f, "Elog({lambda}, {n})"),
            Construct::Epair { lambda, mu } => write!(f, "Epair({lambda}, {mu})"),
            Construct::Ealpha { lambda, n, alpha } => write!(f, "Ealpha({lambda}, {n}, {alpha})"),
            Construct::J { k, lambda } => write!(f, "J({k}, {lambda})"),
            Construct::F { k, lambda, rho } => write!(f, "F({k}, {lambda}, {rho})"),
            Construct::Rank3Example => write!(f, "Rank3Example"),
            Construct::DirectSum(parts) => {
                let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "DirectSum({})", names.join(", "))
            }
        }
    }
}

impl AbModule {
    /// Validate a presentation and cut it to `b^known_order`.
    pub fn new(matrix: SeriesMatrix, known_order: usize) -> Result<AbModule> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() == 0 {
            return Err(Error::ShapeMismatch("rank must be at least 1".into()));
        }
        if known_order == 0 {
            return Err(Error::BadParameter("known order must be positive".into()));
        }
        if matrix.known_order() < known_order {
            return Err(Error::precision("module entries", known_order, matrix.known_order()));
        }
        Ok(AbModule {
            matrix: matrix.truncate(known_order),
            label: None,
        })
    }

    /// Presentation read verbatim, at the matrix's own known order.
    pub fn from_matrix(matrix: SeriesMatrix) -> Result<AbModule> {
        let n = matrix.known_order();
        Self::new(matrix, n)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn known_order(&self) -> usize {
        self.matrix.known_order()
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }

    /// Forget coefficients at and beyond `b^order`.
    pub fn truncate(&self, order: usize) -> AbModule {
        AbModule {
            matrix: self.matrix.truncate(order),
            label: self.label.clone(),
        }
    }

    /// `a` applied to the element with coordinates `x`.
    pub fn apply_a(&self, x: &[TruncSeries]) -> SeriesVec {
        assert_eq!(x.len(), self.rank(), "coordinate vector of wrong length");
        let order = self.known_order().min(vec_order(x));
        let mt = self.matrix.transpose().truncate(order);
        let lin = mt.mul_vec(&x.iter().map(|s| s.truncate(order)).collect::<Vec<_>>());
        lin.iter()
            .zip(x)
            .map(|(l, s)| l + &s.truncate(order).b2_derivative())
            .collect()
    }

    /// `(a - λb)` applied to `x`.
    pub fn apply_a_minus(&self, lambda: &Q, x: &[TruncSeries]) -> SeriesVec {
        let ax = self.apply_a(x);
        let lbx: SeriesVec = x.iter().map(|s| s.shift_up(1).scale(lambda)).collect();
        vec_sub(&ax, &lbx)
    }

    /// The presentation in the basis `f = Q·e`, i.e. `f_i = sum_j Q[i][j] e_j`.
    pub fn change_basis(&self, q: &SeriesMatrix) -> Result<AbModule> {
        if q.rows() != self.rank() || q.cols() != self.rank() {
            return Err(Error::ShapeMismatch("base change of wrong size".into()));
        }
        let n = self.known_order().min(q.known_order());
        let q = q.truncate(n);
        let qinv = q.invert()?;
        let m = self.matrix.truncate(n);
        let mf = q.mul(&m).add(&q.b2_derivative()).mul(&qinv);
        Ok(AbModule {
            matrix: mf,
            label: self.label.clone(),
        })
    }

    /// Presentation `M^T(-b)` of the dual module.
    pub fn dual(&self) -> AbModule {
        AbModule {
            matrix: self.matrix.transpose().reflect(),
            label: self.label.as_ref().map(|l| format!("dual({l})")),
        }
    }

    /// `a` replaced by `a + m·b`.
    pub fn twist(&self, m: &Q) -> AbModule {
        let n = self.known_order();
        let mut mat = self.matrix.clone();
        for i in 0..self.rank() {
            let v = mat.get(i, i) + &TruncSeries::monomial(m.clone(), 1, n);
            mat.set(i, i, v);
        }
        AbModule {
            matrix: mat,
            label: self.label.as_ref().map(|l| format!("twist({l}, {m})")),
        }
    }

    pub fn direct_sum(&self, other: &AbModule) -> AbModule {
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        AbModule {
            matrix: self.matrix.block_diag(&other.matrix),
            label,
        }
    }

    pub fn is_simple_pole(&self) -> bool {
        self.matrix.coefficient(0).is_zero()
    }

    /// The matrix `C` with `M = bC + O(b^2)`, in the row convention.
    pub fn residue(&self) -> Mat {
        self.matrix.coefficient(1)
    }

    /// Eigenvalues of `b^{-1}a` on `E/bE`.
    pub fn spectrum(&self) -> Result<Spectrum> {
        if !self.is_simple_pole() {
            return Err(Error::NotSimplePole);
        }
        if self.known_order() < 2 {
            return Err(Error::precision("spectrum", 2, self.known_order()));
        }
        let cp = self.residue().charpoly();
        Ok(Spectrum::new(roots_in_gaussian_rationals(&cp)?))
    }

    /// Quotient by the line `C[[b]]·x`, where `x` is primitive and
    /// `a·x = λb·x`. The line is completed to a basis with the unit
    /// vectors other than the first index where `x(0)` is nonzero.
    pub fn quotient_by_line(&self, x: &[TruncSeries], lambda: &Q) -> Result<AbModule> {
        let p = self.rank();
        if x.len() != p {
            return Err(Error::ShapeMismatch("line generator of wrong length".into()));
        }
        let Some(pivot) = x.iter().position(|s| !s.constant_term().is_zero()) else {
            return Err(Error::NotPrimitive);
        };
        let n = self.known_order().min(vec_order(x));
        let x: SeriesVec = x.iter().map(|s| s.truncate(n)).collect();
        let defect = self.apply_a_minus(lambda, &x);
        if defect.iter().any(|s| !s.is_zero()) {
            return Err(Error::NotEigen(Box::new(lambda.clone())));
        }
        let mut rows = vec![x.clone()];
        for j in (0..p).filter(|&j| j != pivot) {
            rows.push(
                (0..p)
                    .map(|h| if h == j { TruncSeries::one(n) } else { TruncSeries::zero(n) })
                    .collect(),
            );
        }
        let q = SeriesMatrix::from_rows(rows)?;
        let changed = self.change_basis(&q)?;
        let m = changed.matrix();
        let first_ok = m.get(0, 0) == &TruncSeries::monomial(lambda.clone(), 1, m.known_order())
            && (1..p).all(|h| m.get(0, h).is_zero());
        if !first_ok {
            return Err(Error::NotEigen(Box::new(lambda.clone())));
        }
        if p == 1 {
            return Err(Error::ShapeMismatch("quotient of a rank-1 module is zero".into()));
        }
        let rows: Vec<SeriesVec> = (1..p)
            .map(|i| (1..p).map(|h| m.get(i, h).clone()).collect())
            .collect();
        Ok(AbModule {
            matrix: SeriesMatrix::from_rows(rows)?,
            label: self.label.as_ref().map(|l| format!("{l} / line")),
        })
    }

    /// Presentation of an `a`-stable lattice `L ⊆ E[b^{-1}]` on its echelon
    /// basis. The result is known to order `known_order(E) - K(L)`.
    pub fn submodule_module(&self, lattice: &Lattice) -> Result<AbModule> {
        if lattice.rank() != self.rank() {
            return Err(Error::ShapeMismatch("lattice rank differs from module rank".into()));
        }
        let n = self.known_order();
        let m = lattice.shift();
        let mb = TruncSeries::monomial(Q::from_int(m as i64), 1, n);
        let mut images = Vec::with_capacity(self.rank());
        for h in lattice.basis(n) {
            // a(b^{-m} h) = b^{-m} (a(h) - m b h)
            let ah = self.apply_a(&h);
            let w: SeriesVec = ah.iter().zip(&h).map(|(x, y)| x - &(&mb * y)).collect();
            images.push(lattice.coordinates(&w)?);
        }
        // Column i holds the coordinates of a(f_i); the row convention
        // needs the transpose.
        let coords = SeriesMatrix::from_columns(&images);
        let order = coords.known_order();
        if order == 0 {
            return Err(Error::precision("submodule presentation", n + 1, n));
        }
        Ok(AbModule {
            matrix: coords.transpose(),
            label: None,
        })
    }

    /// `a` applied to the basis vectors, as coordinate vectors.
    pub fn a_on_basis(&self) -> Vec<SeriesVec> {
        let n = self.known_order();
        (0..self.rank())
            .map(|i| self.matrix.row(i).iter().map(|s| s.truncate(n)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smatrix::unit_vec;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn rank_one_action() {
        let e = Construct::E { lambda: Q::ratio(1, 3) }.build(Some(6)).unwrap();
        let x = unit_vec(1, 0, 6);
        assert_eq!(e.apply_a(&x), vec![TruncSeries::monomial(Q::ratio(1, 3), 1, 6)]);
        let bx = vec![TruncSeries::monomial(q(1), 1, 6)];
        assert_eq!(e.apply_a(&bx), vec![TruncSeries::monomial(Q::ratio(4, 3), 2, 6)]);
    }

    #[test]
    fn rank3_action() {
        let e = Construct::Rank3Example.build(None).unwrap();
        assert_eq!(e.apply_a(&unit_vec(3, 0, 12)), unit_vec(3, 1, 12));
        assert!(!e.is_simple_pole());
    }

    #[test]
    fn non_square_rejected() {
        let m = SeriesMatrix::zeros(1, 2, 4);
        assert!(matches!(AbModule::new(m, 4), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn dual_and_twist() {
        let e = Construct::E { lambda: q(2) }.build(Some(5)).unwrap();
        assert_eq!(e.dual(), Construct::E { lambda: q(-2) }.build(Some(5)).unwrap());
        let m = Construct::Epair { lambda: q(1), mu: Q::ratio(1, 2) }.build(None).unwrap();
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.twist(&q(3)).dual(), m.dual().twist(&q(-3)));
        assert_eq!(
            Construct::E { lambda: q(1) }.build(Some(5)).unwrap().twist(&q(2)),
            Construct::E { lambda: q(3) }.build(Some(5)).unwrap()
        );
    }

    #[test]
    fn spectra() {
        let e = Construct::Elog { lambda: Q::ratio(1, 2), n: 2 }.build(None).unwrap();
        assert_eq!(e.spectrum().unwrap().eigenvalues, vec![Q::ratio(1, 2), Q::ratio(5, 2)]);
        assert_eq!(e.dual().spectrum().unwrap(), e.spectrum().unwrap().negate());
        let s = Construct::DirectSum(vec![Construct::E { lambda: q(0) }, Construct::E { lambda: q(1) }])
            .build(None)
            .unwrap();
        assert_eq!(s.spectrum().unwrap().eigenvalues, vec![q(0), q(1)]);
        assert_eq!(
            Construct::Rank3Example.build(None).unwrap().spectrum(),
            Err(Error::NotSimplePole)
        );
    }

    #[test]
    fn f_family_entry() {
        let f = Construct::F { k: 3, lambda: q(0), rho: Q::ratio(1, 2) }.build(None).unwrap();
        assert_eq!(f.matrix().get(2, 0), &TruncSeries::monomial(Q::ratio(1, 8), 3, 12));
        assert_eq!(f.matrix().get(2, 2), &TruncSeries::monomial(q(2), 1, 12));
    }

    #[test]
    fn quotients() {
        let n = 10;
        let pair = Construct::Epair { lambda: q(3), mu: q(1) }.build(Some(n)).unwrap();
        let quo = pair.quotient_by_line(&unit_vec(2, 0, n), &q(1)).unwrap();
        assert_eq!(quo, Construct::E { lambda: q(2) }.build(Some(n)).unwrap());

        let j = Construct::J { k: 3, lambda: q(1) }.build(Some(n)).unwrap();
        let quo = j.quotient_by_line(&unit_vec(3, 2, n), &q(3)).unwrap();
        assert_eq!(quo, Construct::J { k: 2, lambda: q(1) }.build(Some(n)).unwrap());

        assert_eq!(
            pair.quotient_by_line(&unit_vec(2, 1, n), &q(1)),
            Err(Error::NotEigen(Box::new(q(1))))
        );
        let bx = vec![TruncSeries::monomial(q(1), 1, n), TruncSeries::zero(n)];
        assert_eq!(pair.quotient_by_line(&bx, &q(1)), Err(Error::NotPrimitive));
    }

    #[test]
    fn change_basis_rank_one_correction() {
        // E_λ with f = (1 + c b) e
        let n = 8;
        let lambda = Q::ratio(2, 3);
        let c = q(5);
        let e = Construct::E { lambda: lambda.clone() }.build(Some(n)).unwrap();
        let unit = TruncSeries::from_poly(&[q(1), c.clone()], n);
        let qm = SeriesMatrix::from_rows(vec![vec![unit.clone()]]).unwrap();
        let f = e.change_basis(&qm).unwrap();
        let expect = &TruncSeries::monomial(lambda, 1, n)
            + &(&TruncSeries::monomial(c, 2, n) * &unit.invert().unwrap());
        assert_eq!(f.matrix().get(0, 0), &expect);
        let back = f.change_basis(&qm.invert().unwrap()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn stable_lattice_presentation() {
        // E itself
        let e = Construct::Epair { lambda: q(2), mu: q(0) }.build(Some(12)).unwrap();
        let l = Lattice::ambient(2, 0, 12).unwrap();
        assert_eq!(e.submodule_module(&l).unwrap(), e);
    }
}
