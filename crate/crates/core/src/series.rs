//! Power series in `b` over `Q(i)`, known modulo `b^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as Q;

/// Result of [`TruncSeries::valuation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    /// The first nonzero coefficient sits at this power.
    Exact(usize),
    /// Every stored coefficient vanishes; the series is `0 mod b^N`.
    AtLeast(usize),
}

impl Valuation {
    /// The valuation, reading the sentinel as its lower bound.
    pub fn bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Valuation::Exact(_))
    }
}

/// A formal power series `sum c_k b^k` of which only `c_0 .. c_{N-1}` are
/// known. `coeffs.len()` is the known order `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Q>,
}

impl TruncSeries {
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        TruncSeries { coeffs }
    }

    /// Polynomial `coeffs` read modulo `b^order` (zero padded or cut).
    pub fn from_poly(coeffs: &[Q], order: usize) -> Self {
        let mut c: Vec<Q> = coeffs.iter().take(order).cloned().collect();
        c.resize(order, Q::zero());
        TruncSeries { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Q::zero(); order],
        }
    }

    pub fn constant(c: Q, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Q::one(), order)
    }

    /// `c * b^k mod b^order`.
    pub fn monomial(c: Q, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn known_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `b^k`; `None` when `k` is beyond the known order.
    pub fn coeff(&self, k: usize) -> Option<&Q> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: Q) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Valuation::Exact(k),
            None => Valuation::AtLeast(self.coeffs.len()),
        }
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    /// Forget everything at and beyond `b^order` (no-op if already coarser).
    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    /// Reinterpret as a polynomial and re-read modulo `b^order`, padding
    /// with zeros. Only sound when the series is known to be a polynomial
    /// of degree below its known order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_poly(&self.coeffs, order)
    }

    /// Multiplication by `b^k`; the known order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut c = vec![Q::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs: c }
    }

    /// Division by `b^k`, dropping the first `k` coefficients (which the
    /// caller asserts vanish). The known order shrinks by `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.known_order().min(other.known_order());
        TruncSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.known_order().min(other.known_order());
        TruncSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// Cauchy product truncated at the smaller known order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.known_order().min(other.known_order());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Inverse of a unit, to the same known order.
    pub fn invert(&self) -> Result<Self> {
        let n = self.known_order();
        let c0 = self.constant_term();
        let inv0 = c0.inv().ok_or(Error::NotAUnit)?;
        if n == 0 {
            return Err(Error::NotAUnit);
        }
        let mut out = vec![Q::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Q::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -(&acc * &inv0);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Formal derivative; known order drops by one.
    pub fn derivative(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Q::from_int(k as i64))
                .collect(),
        }
    }

    /// `b^2 * S'(b)`, at the same known order as `S`.
    pub fn b2_derivative(&self) -> Self {
        let n = self.known_order();
        let mut out = vec![Q::zero(); n];
        for k in 1..n.saturating_sub(1) {
            out[k + 1] = &self.coeffs[k] * &Q::from_int(k as i64);
        }
        TruncSeries { coeffs: out }
    }

    /// `S(-b)`.
    pub fn reflect(&self) -> Self {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Degree of the last nonzero known coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(b^{})", self, self.known_order())
    }
}

impl fmt::Display for TruncSeries {
    /// Canonical `c*b^k + ...` text (real negative terms as `- c*b^k`); the zero series prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && num_traits::Signed::is_negative(&c.re);
            let c = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            write!(f, "{}*b^{}", c, k)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &'a TruncSeries) -> TruncSeries {
        TruncSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &'a TruncSeries) -> TruncSeries {
        TruncSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &'a TruncSeries) -> TruncSeries {
        TruncSeries::mul(self, rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], n: usize) -> TruncSeries {
        let v: Vec<Q> = c.iter().map(|&x| Q::from_int(x)).collect();
        TruncSeries::from_poly(&v, n)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1], 3) + &s(&[-1, 1], 3), s(&[0, 2], 3));
        let t = s(&[3, 0, 5], 4);
        assert_eq!(&TruncSeries::zero(4) + &t, t);
        let half = Q::ratio(1, 2);
        let ih = &Q::i() * &half;
        let a = TruncSeries::from_poly(&[half.clone(), ih.clone()], 3);
        let b = TruncSeries::from_poly(&[half.clone(), -&ih], 3);
        assert_eq!(&a + &b, TruncSeries::one(3));
    }

    #[test]
    fn add_takes_min_order() {
        assert_eq!((&s(&[1], 2) + &s(&[1], 5)).known_order(), 2);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1], 3) * &s(&[1, -1], 3), s(&[1, 0, -1], 3));
        assert_eq!(&s(&[0, 1], 3) * &s(&[0, 1], 3), s(&[0, 0, 1], 3));
        let t = s(&[2, 7, -1], 3);
        assert_eq!(&t * &TruncSeries::one(3), t);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s(&[1, -1], 3).invert().unwrap(), s(&[1, 1, 1], 3));
        assert_eq!(
            s(&[2], 1).invert().unwrap(),
            TruncSeries::constant(Q::ratio(1, 2), 1)
        );
        assert_eq!(s(&[0, 1], 3).invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s(&[0, 0, 1], 3).derivative(), s(&[0, 2], 2));
        assert!(s(&[5], 3).derivative().is_zero());
        let d = s(&[1, 3, 0, 1], 4).derivative();
        assert_eq!(d, s(&[3, 0, 3], 3));
        assert_eq!(d.known_order(), 3);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(s(&[0, 0, 1, 1], 4).valuation(), Valuation::Exact(2));
        assert_eq!(s(&[5], 4).valuation(), Valuation::Exact(0));
        assert_eq!(TruncSeries::zero(4).valuation(), Valuation::AtLeast(4));
    }

    #[test]
    fn b2_derivative_matches_derivative() {
        let t = s(&[1, 2, 3, 4, 5], 5);
        let expect = t.derivative().shift_up(2).truncate(5);
        assert_eq!(t.b2_derivative(), expect);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[0, -1, 0, 2], 4).to_string(), "-1*b^1 + 2*b^3");
        assert_eq!(TruncSeries::zero(2).to_string(), "0");
    }
}
