//! Exact roots in `Q(i)` of polynomials with `Q(i)` coefficients, by
//! enumerating Gaussian-integer divisors of the cleared constant and leading
//! coefficients (rational root theorem over the UFD `Z[i]`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as Q;

type GInt = (i128, i128);

fn gnorm(z: GInt) -> i128 {
    z.0 * z.0 + z.1 * z.1
}

fn gdivides(d: GInt, z: GInt) -> bool {
    let n = gnorm(d);
    if n == 0 {
        return false;
    }
    // z * conj(d)
    let re = z.0 * d.0 + z.1 * d.1;
    let im = z.1 * d.0 - z.0 * d.1;
    re % n == 0 && im % n == 0
}

fn int_divisors(n: i128) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: i128 = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Gaussian divisors of `z`, one representative per associate class
/// (`re > 0, im >= 0`).
fn gaussian_divisors(z: GInt) -> Vec<GInt> {
    let n = gnorm(z);
    let mut out = Vec::new();
    for dn in int_divisors(n) {
        let mut x: i128 = 0;
        while x * x <= dn {
            if let Some(y) = isqrt(dn - x * x) {
                for cand in [(x, y), (x, -y), (-x, y), (-x, -y)] {
                    let rep = normalize_assoc(cand);
                    if gdivides(rep, z) && !out.contains(&rep) {
                        out.push(rep);
                    }
                }
            }
            x += 1;
        }
    }
    out
}

fn normalize_assoc(mut z: GInt) -> GInt {
    for _ in 0..4 {
        if z.0 > 0 && z.1 >= 0 {
            return z;
        }
        z = (-z.1, z.0);
    }
    z
}

fn to_gint(q: &Q, scale: &BigInt) -> Option<GInt> {
    let re = &q.re * BigRational::from_integer(scale.clone());
    let im = &q.im * BigRational::from_integer(scale.clone());
    if !re.is_integer() || !im.is_integer() {
        return None;
    }
    Some((re.to_integer().to_i128()?, im.to_integer().to_i128()?))
}

fn eval(poly: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Synthetic division by `(x - r)`; assumes `r` is a root.
fn deflate(poly: &[Q], r: &Q) -> Vec<Q> {
    let n = poly.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (0..n).rev() {
        carry = &poly[k + 1] + &(&carry * r);
        out[k] = carry.clone();
    }
    out
}

/// All roots with multiplicity of `poly` (coefficients lowest degree first),
/// or `NonSplitSpectrum` if some root is not in `Q(i)`.
pub fn roots_in_gaussian_rationals(poly: &[Q]) -> Result<Vec<Q>> {
    let mut p: Vec<Q> = poly.to_vec();
    while p.len() > 1 && p.last().is_some_and(Q::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Q::zero());
        p.remove(0);
    }
    'outer: while p.len() > 1 {
        let lcm = p
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(&c.denom_lcm()));
        let a0 = to_gint(&p[0], &lcm).ok_or(Error::NonSplitSpectrum)?;
        let an = to_gint(p.last().unwrap(), &lcm).ok_or(Error::NonSplitSpectrum)?;
        if gnorm(a0) > (1i128 << 60) || gnorm(an) > (1i128 << 60) {
            return Err(Error::NonSplitSpectrum);
        }
        let num_divs = gaussian_divisors(a0);
        let den_divs = gaussian_divisors(an);
        let units: [GInt; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        for d in &den_divs {
            let den = Q::new(
                BigRational::from_integer(BigInt::from(d.0)),
                BigRational::from_integer(BigInt::from(d.1)),
            );
            for n in &num_divs {
                for u in units {
                    let num = (n.0 * u.0 - n.1 * u.1, n.0 * u.1 + n.1 * u.0);
                    let numq = Q::new(
                        BigRational::from_integer(BigInt::from(num.0)),
                        BigRational::from_integer(BigInt::from(num.1)),
                    );
                    let r = &numq / &den;
                    if eval(&p, &r).is_zero() {
                        p = deflate(&p, &r);
                        roots.push(r);
                        continue 'outer;
                    }
                }
            }
        }
        return Err(Error::NonSplitSpectrum);
    }
    roots.sort_by(Q::lex_cmp);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_from_roots(rs: &[Q]) -> Vec<Q> {
        let mut p = vec![Q::one()];
        for r in rs {
            let mut next = vec![Q::zero(); p.len() + 1];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * r);
            }
            p = next;
        }
        p
    }

    #[test]
    fn finds_rational_and_gaussian_roots() {
        let rs = vec![
            Q::ratio(-3, 2),
            Q::complex((1, 1), (2, 3)),
            Q::from_int(0),
            Q::ratio(1, 2),
            Q::ratio(1, 2),
        ];
        let p = poly_from_roots(&rs);
        let mut got = roots_in_gaussian_rationals(&p).unwrap();
        let mut want = rs.clone();
        got.sort_by(Q::lex_cmp);
        want.sort_by(Q::lex_cmp);
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_irrational() {
        // x^2 - 2
        let p = vec![Q::from_int(-2), Q::zero(), Q::one()];
        assert_eq!(roots_in_gaussian_rationals(&p), Err(Error::NonSplitSpectrum));
    }

    #[test]
    fn finds_i() {
        // x^2 + 1
        let p = vec![Q::one(), Q::zero(), Q::one()];
        let r = roots_in_gaussian_rationals(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&Q::i()) && r.contains(&(-Q::i())));
    }
}
