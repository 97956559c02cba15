//! Eigenvectors of `b^{-1}a`, normal rank-one submodules, Jordan–Hölder
//! sequences, `Hom`/`Ext^1` dimensions, the cokernel bound for `a - λb`,
//! and the rank-two classification.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{
    b_power_unit, biggest_simple_pole, flatten, jet_operators, saturate, InvariantReport,
};
use crate::jets::{intertwiner_system, jet_isomorphism, JetIsoResult};
use crate::linalg::{span_rank, Mat};
use crate::module::{AbModule, Construct, Spectrum};
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::{vec_order, vec_valuation, SeriesVec};

/// Solutions of `(a - λb)x = 0` truncated at `b^T`, as `(system, unknowns)`
/// where unknown `k·p + i` is the coefficient of `b^k` in `x_i`.
fn eigen_system(e: &AbModule, lambda: &Q, t: usize) -> Mat {
    let p = e.rank();
    let mut sys = Mat::zeros(t * p, t * p);
    // Coefficient of b^s in (a - λb)x for s = 1..=t.
    for s in 1..=t {
        for k in 0..s {
            let u = s - k;
            let mut blk = e.matrix().coefficient(u).transpose();
            if u == 1 {
                for i in 0..p {
                    let v = &blk[(i, i)] + &(&Q::from_int(k as i64) - lambda);
                    blk[(i, i)] = v;
                }
            }
            for i in 0..p {
                for j in 0..p {
                    if !blk[(i, j)].is_zero() {
                        sys[((s - 1) * p + i, k * p + j)] = blk[(i, j)].clone();
                    }
                }
            }
        }
    }
    sys
}

fn unflatten_by_degree(x: &[Q], p: usize, t: usize) -> SeriesVec {
    (0..p)
        .map(|i| TruncSeries::from_coeffs((0..t).map(|k| x[k * p + i].clone()).collect()))
        .collect()
}

/// Basis of the solutions of `(a - λb)x ≡ 0`, known modulo `b^{N-1}`, for a
/// simple-pole module and an exponent minimal in its class.
pub fn solve_eigenvector(e: &AbModule, lambda: &Q) -> Result<Vec<SeriesVec>> {
    if !e.is_simple_pole() {
        return Err(Error::NotSimplePole);
    }
    let n = e.known_order();
    if n < 2 {
        return Err(Error::precision("eigenvector", 2, n));
    }
    let t = n - 1;
    let below = |mu: &Q| lambda.int_diff(mu).is_some_and(|d| d >= 1);
    let resonant = match e.spectrum() {
        Ok(spec) => spec.eigenvalues.iter().any(below),
        // Without split roots, test the resonances the truncated solve meets.
        Err(Error::NonSplitSpectrum) => {
            let c = e.residue();
            (1..t as i64).any(|k| {
                let shifted = c.sub(&Mat::identity(c.rows()).scale(&(lambda - &Q::from_int(k))));
                shifted.det().is_zero()
            })
        }
        Err(other) => return Err(other),
    };
    if resonant {
        return Err(Error::NotMinimalExponent(Box::new(lambda.clone())));
    }
    let p = e.rank();
    let sys = eigen_system(e, lambda, t);
    Ok(sys
        .kernel()
        .iter()
        .map(|x| unflatten_by_degree(x, p, t))
        .collect())
}

/// An exponent of `spec` with no other exponent below it in its class,
/// smallest by `(re, im)`.
fn class_minimal(spec: &Spectrum) -> Q {
    spec.eigenvalues
        .iter()
        .filter(|l| {
            !spec
                .eigenvalues
                .iter()
                .any(|mu| l.int_diff(mu).is_some_and(|d| d >= 1))
        })
        .min_by(|a, b| a.lex_cmp(b))
        .cloned()
        .expect("a nonempty spectrum has a class-minimal member")
}

/// Coordinates in `E` of a vector given in the echelon basis of `lattice`.
fn to_ambient(lattice: &crate::lattice::Lattice, y: &[TruncSeries], p: usize) -> SeriesVec {
    let order = vec_order(y);
    let mut x: SeriesVec = vec![TruncSeries::zero(order); p];
    for (h, yi) in lattice.basis(order).iter().zip(y) {
        for j in 0..p {
            x[j] = &x[j] + &(&h[j] * yi);
        }
    }
    x
}

/// Solutions of `a·x = λb·x` in any regular module. They all lie in the
/// biggest simple-pole submodule, where [`solve_eigenvector`] applies.
pub fn eigenvectors(e: &AbModule, lambda: &Q) -> Result<Vec<SeriesVec>> {
    let core = biggest_simple_pole(e)?;
    Ok(solve_eigenvector(&core.module, lambda)?
        .iter()
        .map(|y| to_ambient(&core.lattice, y, e.rank()))
        .collect())
}

/// A primitive `x` with `a·x = λb·x`.
pub fn find_normal_line(e: &AbModule) -> Result<(Q, SeriesVec)> {
    let core = biggest_simple_pole(e)?;
    let mu = class_minimal(&core.module.spectrum()?);
    let sols = solve_eigenvector(&core.module, &mu)?;
    let y = sols.first().ok_or_else(|| Error::NotEigen(Box::new(mu.clone())))?;
    let x = to_ambient(&core.lattice, y, e.rank());
    let order = vec_order(&x);
    let s = vec_valuation(&x);
    if s >= order {
        return Err(Error::precision("normal line", s + 1, order));
    }
    let x: SeriesVec = x.iter().map(|c| c.shift_down(s)).collect();
    Ok((&mu - &Q::from_int(s as i64), x))
}

#[derive(Clone, Debug, PartialEq)]
pub struct JHSequence {
    pub exponents: Vec<Q>,
    /// The line generator found at each step, in the coordinates of the
    /// successive quotient.
    pub witnesses: Vec<SeriesVec>,
}

impl JHSequence {
    pub fn sum(&self) -> Q {
        self.exponents.iter().fold(Q::zero(), |a, b| &a + b)
    }
}

pub fn jordan_holder(e: &AbModule) -> Result<JHSequence> {
    let mut cur = e.clone();
    let mut exponents = Vec::new();
    let mut witnesses = Vec::new();
    loop {
        let (lambda, x) = find_normal_line(&cur)?;
        exponents.push(lambda.clone());
        witnesses.push(x.clone());
        if cur.rank() == 1 {
            break;
        }
        cur = cur.quotient_by_line(&x, &lambda)?;
    }
    Ok(JHSequence {
        exponents,
        witnesses,
    })
}

/// Retry cap for the truncation used by [`ext_dims`].
pub const EXT_RETRIES: usize = 4;

fn ext_start(e: &AbModule, f: &AbModule) -> usize {
    // Exponents of the saturation and the simple-pole core, and δ.
    let data = |m: &AbModule| -> Option<(Vec<Q>, usize)> {
        let r = InvariantReport::compute(m).ok()?;
        let mut v = r.spectrum_sharp.eigenvalues;
        v.extend(r.spectrum_flat.eigenvalues);
        Some((v, r.delta))
    };
    match (data(e), data(f)) {
        (Some((se, de)), Some((sf, df))) => {
            let gap = se
                .iter()
                .flat_map(|x| sf.iter().filter_map(move |y| x.int_diff(y)))
                .map(i64::unsigned_abs)
                .max()
                .unwrap_or(0) as usize;
            2 + e.rank() + f.rank() + de + df + gap
        }
        _ => 8,
    }
}

/// `(dim Hom, dim Ext^1)` of `(a,b)`-modules from `E` to `F`, as kernel and
/// cokernel of `P ↦ M_E·P - P·M_F - b^2·P'` on `C[[b]]`-linear maps.
pub fn ext_dims(e: &AbModule, f: &AbModule) -> Result<(usize, usize)> {
    let mut t = ext_start(e, f);
    for _ in 0..=EXT_RETRIES {
        let a = ext_dims_at(e, f, t)?;
        let b = ext_dims_at(e, f, t + 1)?;
        if a == b {
            return Ok(a);
        }
        t *= 2;
    }
    Err(Error::NotStabilized(t / 2))
}

fn ext_dims_at(e: &AbModule, f: &AbModule, t: usize) -> Result<(usize, usize)> {
    let have = e.known_order().min(f.known_order());
    if have < 2 * t {
        return Err(Error::precision("ext dimensions", 2 * t, have));
    }
    let coeffs = |m: &AbModule, n: usize| -> Vec<Mat> {
        (0..n).map(|k| m.matrix().coefficient(k)).collect()
    };
    let block = e.rank() * f.rank();
    let (lam, _) = intertwiner_system(&coeffs(e, t), &coeffs(f, t), 0..t, 0..t, &[]);
    let coker = t * block - lam.rank();
    let (lam2, _) = intertwiner_system(&coeffs(e, 2 * t), &coeffs(f, 2 * t), 0..2 * t, 0..2 * t, &[]);
    let heads: Vec<Vec<Q>> = lam2.kernel().iter().map(|v| v[..t * block].to_vec()).collect();
    Ok((span_rank(&heads), coker))
}

/// `(dim ker, dim coker)` of `a + λb` on `E^*`; by duality these are the
/// dimensions of `Hom(E, E_λ)` and `Ext^1(E, E_λ)`.
pub fn ext_dims_to_rank_one(e: &AbModule, lambda: &Q) -> Result<(usize, usize)> {
    let dual = e.dual().twist(lambda);
    let mut t = ext_start(e, &Construct::E { lambda: lambda.clone() }.build(Some(e.known_order()))?);
    for _ in 0..=EXT_RETRIES {
        let a = kernel_cokernel_of_a(&dual, t)?;
        let b = kernel_cokernel_of_a(&dual, t + 1)?;
        if a == b {
            return Ok(a);
        }
        t *= 2;
    }
    Err(Error::NotStabilized(t / 2))
}

fn kernel_cokernel_of_a(e: &AbModule, t: usize) -> Result<(usize, usize)> {
    if e.known_order() < 2 * t {
        return Err(Error::precision("ext dimensions", 2 * t, e.known_order()));
    }
    let p = e.rank();
    let (a, _) = jet_operators(e, t);
    let coker = p * t - a.rank();
    let (a2, _) = jet_operators(e, 2 * t);
    // Project kernel vectors (index i·2t + k) to degrees below t.
    let heads: Vec<Vec<Q>> = a2
        .kernel()
        .iter()
        .map(|v| {
            (0..p)
                .flat_map(|i| (0..t).map(move |k| (i, k)))
                .map(|(i, k)| v[i * 2 * t + k].clone())
                .collect()
        })
        .collect();
    Ok((span_rank(&heads), coker))
}

/// Smallest `N` with `b^N E ⊆ (a - λb)E`.
pub fn cokernel_b_bound(e: &AbModule, lambda: &Q) -> Result<usize> {
    let rep = InvariantReport::compute(e)?;
    let gap = match rep.spectrum_flat.min_in_class(lambda) {
        Some(lmin) => {
            let d = lambda
                .int_diff(&lmin)
                .ok_or_else(|| Error::BoundNotInteger(format!("{lambda} - {lmin}")))?;
            d.max(0) as usize
        }
        None => 0,
    };
    let t = gap + rep.delta + 2;
    if e.known_order() < t {
        return Err(Error::precision("cokernel bound", t, e.known_order()));
    }
    let p = e.rank();
    let shifted = e.twist(&-lambda);
    let (a, _) = jet_operators(&shifted, t);
    let image: Vec<Vec<Q>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let image_rank = span_rank(&image);
    let mut best = t;
    for n in (0..t).rev() {
        let mut all = image.clone();
        for i in 0..p {
            for k in n..t {
                all.push(flatten(&b_power_unit(p, i, k, t), t));
            }
        }
        if span_rank(&all) == image_rank {
            best = n;
        } else {
            break;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassificationRank2 {
    Sum(Q, Q),
    Log(Q, usize),
    Pair(Q, Q),
    Alpha(Q, usize, Q),
}

impl ClassificationRank2 {
    pub fn to_construct(&self) -> Construct {
        match self {
            ClassificationRank2::Sum(l, m) => Construct::DirectSum(vec![
                Construct::E { lambda: l.clone() },
                Construct::E { lambda: m.clone() },
            ]),
            ClassificationRank2::Log(l, n) => Construct::Elog { lambda: l.clone(), n: *n },
            ClassificationRank2::Pair(l, m) => Construct::Epair {
                lambda: l.clone(),
                mu: m.clone(),
            },
            ClassificationRank2::Alpha(l, n, a) => Construct::Ealpha {
                lambda: l.clone(),
                n: *n,
                alpha: a.clone(),
            },
        }
    }

    pub fn variant(&self) -> &'static str {
        match self {
            ClassificationRank2::Sum(..) => "Sum",
            ClassificationRank2::Log(..) => "Log",
            ClassificationRank2::Pair(..) => "Pair",
            ClassificationRank2::Alpha(..) => "Alpha",
        }
    }
}

impl fmt::Display for ClassificationRank2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationRank2::Sum(l, m) => write!(f, "Sum({l}, {m})"),
            ClassificationRank2::Log(l, n) => write!(f, "Log({l}, {n})"),
            ClassificationRank2::Pair(l, m) => write!(f, "Pair({l}, {m})"),
            ClassificationRank2::Alpha(l, n, a) => write!(f, "Alpha({l}, {n}, {a})"),
        }
    }
}

fn classify_simple_pole(e: &AbModule) -> Result<ClassificationRank2> {
    let spec = e.spectrum()?;
    let (s1, s2) = (spec.eigenvalues[0].clone(), spec.eigenvalues[1].clone());
    match s2.int_diff(&s1) {
        None => Ok(ClassificationRank2::Sum(s1, s2)),
        Some(0) => {
            let c = e.residue();
            let scalar = c.sub(&Mat::identity(2).scale(&s1)).is_zero();
            Ok(if scalar {
                ClassificationRank2::Sum(s1.clone(), s1)
            } else {
                ClassificationRank2::Log(s1, 0)
            })
        }
        Some(n) => {
            let n = n as usize;
            let t = n + 3;
            if e.known_order() < t + 1 {
                return Err(Error::precision("rank-2 classification", t + 1, e.known_order()));
            }
            // A primitive solution for the larger exponent exists exactly
            // for the split module.
            let sys = eigen_system(e, &s2, t);
            let heads: Vec<Vec<Q>> = sys.kernel().iter().map(|v| v[..2].to_vec()).collect();
            Ok(if span_rank(&heads) > 0 {
                ClassificationRank2::Sum(s1, s2)
            } else {
                ClassificationRank2::Log(s1, n)
            })
        }
    }
}

/// Solve `(a - (λ-1)b)t - α b^n y = y` for `t` independent of `y` at `b^0`.
fn recover_alpha(e: &AbModule, y: &[TruncSeries], lambda: &Q, n: usize) -> Result<Q> {
    let t_len = n + 3;
    if e.known_order() < t_len || vec_order(y) < t_len {
        return Err(Error::precision("alpha recovery", t_len, e.known_order().min(vec_order(y))));
    }
    let shifted = e.twist(&-(lambda - &Q::one()));
    let (a, _) = jet_operators(&shifted, t_len);
    // Unknowns: t in flattened coordinates (index i·T + k), then α.
    let dim = 2 * t_len;
    let mut sys = Mat::zeros(dim, dim + 1);
    for r in 0..dim {
        for c in 0..dim {
            sys[(r, c)] = a[(r, c)].clone();
        }
    }
    let bny: SeriesVec = y.iter().map(|s| s.shift_up(n).truncate(t_len)).collect();
    let bny = flatten(&bny, t_len);
    for r in 0..dim {
        sys[(r, dim)] = -&bny[r];
    }
    let rhs = flatten(&y.iter().map(|s| s.truncate(t_len)).collect::<Vec<_>>(), t_len);
    let particular = sys.solve(&rhs).ok_or_else(|| {
        Error::CrossCheckFailed("no basis of the expected rank-2 shape".into())
    })?;
    let y0 = [y[0].constant_term(), y[1].constant_term()];
    let independent = |x: &[Q]| {
        let t0 = [x[0].clone(), x[t_len].clone()];
        !(&(&y0[0] * &t0[1]) - &(&y0[1] * &t0[0])).is_zero()
    };
    let mut candidates = vec![particular.clone()];
    for k in sys.kernel() {
        candidates.push(particular.iter().zip(&k).map(|(p, v)| p + v).collect());
    }
    candidates
        .into_iter()
        .find(|x| independent(x))
        .map(|x| x[dim].clone())
        .ok_or_else(|| Error::CrossCheckFailed("no complement to the normal line".into()))
}

/// Place a regular rank-2 module in the standard list.
pub fn classify_rank2(e: &AbModule) -> Result<ClassificationRank2> {
    if e.rank() != 2 {
        return Err(Error::ShapeMismatch("rank-2 module expected".into()));
    }
    let result = if e.is_simple_pole() {
        classify_simple_pole(e)?
    } else {
        let sharp = saturate(e)?.module;
        match classify_simple_pole(&sharp)? {
            ClassificationRank2::Log(nu, n) if n >= 1 => {
                let lambda = &nu + &Q::from_int(n as i64 + 1);
                let (mu, y) = find_normal_line(e)?;
                if mu != &lambda - &Q::from_int(n as i64) {
                    return Err(Error::CrossCheckFailed(format!(
                        "normal line exponent {mu} does not match {lambda} - {n}"
                    )));
                }
                let alpha = recover_alpha(e, &y, &lambda, n)?;
                ClassificationRank2::Alpha(lambda, n, alpha)
            }
            ClassificationRank2::Log(nu, _) => {
                let l = &nu + &Q::one();
                ClassificationRank2::Pair(l.clone(), l)
            }
            // The two orderings of a pair give isomorphic modules; report
            // the one sorted like the spectrum.
            ClassificationRank2::Sum(s1, s2) => {
                ClassificationRank2::Pair(&s1 + &Q::one(), &s2 + &Q::one())
            }
            other => {
                return Err(Error::CrossCheckFailed(format!("unexpected saturation {other}")))
            }
        }
    };
    if !round_trip(e, &result)? {
        return Err(Error::CrossCheckFailed(format!("{result} is not jet-isomorphic to the input")));
    }
    Ok(result)
}

/// Jet-isomorphism of the standard module for `c` with `e` at the
/// determination bound of the standard module.
fn round_trip(e: &AbModule, c: &ClassificationRank2) -> Result<bool> {
    let std = c.to_construct().build(Some(e.known_order()))?;
    let n0 = InvariantReport::compute(&std)?.determination_bound().max(1);
    Ok(matches!(jet_isomorphism(&std, e, n0, 0)?, JetIsoResult::Iso(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn eigenvectors() {
        let e = Construct::Elog { lambda: Q::ratio(1, 2), n: 2 }.build(None).unwrap();
        let sols = solve_eigenvector(&e, &Q::ratio(1, 2)).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0][0].is_zero());
        assert_eq!(sols[0][1].constant_term(), q(1));
        assert!(matches!(
            solve_eigenvector(&e, &Q::ratio(5, 2)),
            Err(Error::NotMinimalExponent(_))
        ));
        let two = Construct::DirectSum(vec![
            Construct::E { lambda: q(1) },
            Construct::E { lambda: q(1) },
        ])
        .build(None)
        .unwrap();
        assert_eq!(solve_eigenvector(&two, &q(1)).unwrap().len(), 2);
    }

    #[test]
    fn normal_lines() {
        let e = Construct::Epair { lambda: q(2), mu: Q::ratio(1, 2) }.build(None).unwrap();
        let (l, x) = find_normal_line(&e).unwrap();
        assert_eq!(l, Q::ratio(1, 2));
        assert!(x[1].is_zero());
        let j = Construct::J { k: 3, lambda: q(0) }.build(None).unwrap();
        let (l, x) = find_normal_line(&j).unwrap();
        assert_eq!(l, q(2));
        assert!(x[0].is_zero() && x[1].is_zero());
    }

    #[test]
    fn jh_sequences() {
        let j = Construct::J { k: 3, lambda: q(1) }.build(Some(14)).unwrap();
        assert_eq!(jordan_holder(&j).unwrap().exponents, vec![q(3), q(2), q(1)]);
        let e = Construct::Epair { lambda: q(2), mu: Q::ratio(1, 2) }.build(None).unwrap();
        assert_eq!(jordan_holder(&e).unwrap().exponents, vec![Q::ratio(1, 2), q(1)]);
    }

    #[test]
    fn ext_rank_one() {
        for (diff, expect) in [(0, (1, 2)), (2, (1, 2)), (-1, (0, 1))] {
            let e = Construct::E { lambda: q(diff) }.build(Some(40)).unwrap();
            let f = Construct::E { lambda: q(0) }.build(Some(40)).unwrap();
            assert_eq!(ext_dims(&e, &f).unwrap(), expect, "diff {diff}");
            assert_eq!(ext_dims_to_rank_one(&e, &q(0)).unwrap(), expect);
        }
    }

    #[test]
    fn cokernel_bounds() {
        let e = Construct::E { lambda: q(0) }.build(None).unwrap();
        assert_eq!(cokernel_b_bound(&e, &q(0)).unwrap(), 2);
        assert_eq!(cokernel_b_bound(&e, &Q::ratio(1, 2)).unwrap(), 1);
        assert_eq!(cokernel_b_bound(&e, &q(2)).unwrap(), 4);
    }

    #[test]
    fn classify_standard_forms() {
        let cases = vec![
            ClassificationRank2::Sum(q(0), Q::ratio(1, 3)),
            ClassificationRank2::Sum(q(0), q(2)),
            ClassificationRank2::Log(Q::ratio(1, 2), 1),
            ClassificationRank2::Pair(Q::ratio(1, 2), q(2)),
            ClassificationRank2::Pair(q(1), q(1)),
            ClassificationRank2::Alpha(q(3), 1, q(2)),
        ];
        for c in cases {
            let e = c.to_construct().build(Some(12)).unwrap();
            assert_eq!(classify_rank2(&e).unwrap(), c);
        }
        let swapped = Construct::Epair { lambda: q(2), mu: Q::ratio(1, 2) }.build(Some(12)).unwrap();
        assert_eq!(
            classify_rank2(&swapped).unwrap(),
            ClassificationRank2::Pair(Q::ratio(1, 2), q(2))
        );
    }
}
