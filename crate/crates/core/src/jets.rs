//! Jets `E/b^N E`, the determination bound, and deciding and lifting
//! isomorphisms of jets.
//!
//! A morphism `φ: E -> F` is a matrix `P` with `φ(e_j) = sum_h P[j][h] f_h`.
//! It commutes with `a` exactly when `M_E·P - P·M_F - b^2·P' = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::invariants::InvariantReport;
use crate::linalg::Mat;
use crate::module::AbModule;
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::SeriesMatrix;

/// Solution spaces up to this dimension are searched exhaustively.
pub const EXACT_SEARCH_DIM: usize = 6;
/// Random trials when the solution space is larger.
pub const RANDOM_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    matrix: SeriesMatrix,
}

impl Jet {
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn order(&self) -> usize {
        self.matrix.known_order()
    }

    pub fn matrix(&self) -> &SeriesMatrix {
        &self.matrix
    }
}

/// `E/b^N E`.
pub fn jet(e: &AbModule, order: usize) -> Result<Jet> {
    if order > e.known_order() {
        return Err(Error::precision("jet", order, e.known_order()));
    }
    Ok(Jet {
        matrix: e.matrix().truncate(order),
    })
}

/// `or(E) + L(E) + rank(E) + 1`.
pub fn determination_bound(e: &AbModule) -> Result<usize> {
    Ok(InvariantReport::compute(e)?.determination_bound())
}

#[derive(Clone, Debug, PartialEq)]
pub enum JetIsoResult {
    /// Witness `P` known modulo `b^N`, with `P(0)` invertible.
    Iso(SeriesMatrix),
    NotIso,
    /// No invertible element found among this many random trials.
    UndecidedRandomized(usize),
}

impl JetIsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, JetIsoResult::Iso(_))
    }
}

/// Coefficient matrices `M_0 .. M_{n-1}`.
fn coefficients(m: &SeriesMatrix, n: usize) -> Vec<Mat> {
    (0..n).map(|k| m.coefficient(k)).collect()
}

/// Linear equations for the coefficients of `b^s`, `s ∈ eqs`, of
/// `M_E·P - P·M_F - b^2·P'`, in the unknowns `P_t`, `t ∈ unknowns`, with
/// `P_t = fixed[t]` for `t < unknowns.start`. Unknown `(t, i, j)` sits at
/// column `(t - start)·pe·pf + i·pf + j`; equation `(s, i, j)` at row
/// `(s - eqs.start)·pe·pf + i·pf + j`. Returns `(A, rhs)` with `A·x = rhs`.
pub(crate) fn intertwiner_system(
    me: &[Mat],
    mf: &[Mat],
    unknowns: std::ops::Range<usize>,
    eqs: std::ops::Range<usize>,
    fixed: &[Mat],
) -> (Mat, Vec<Q>) {
    let pe = me[0].rows();
    let pf = mf[0].rows();
    let block = pe * pf;
    let nu = unknowns.len() * block;
    let ne = eqs.len() * block;
    let mut a = Mat::zeros(ne, nu);
    let mut rhs = vec![Q::zero(); ne];
    let zero_e = Mat::zeros(pe, pe);
    let zero_f = Mat::zeros(pf, pf);
    for (si, s) in eqs.clone().enumerate() {
        for t in 0..=s {
            let u = s - t;
            let mu_e = me.get(u).unwrap_or(&zero_e);
            let mu_f = mf.get(u).unwrap_or(&zero_f);
            // Coefficient of P_t in equation s: X ↦ M_{E,u} X - X M_{F,u}
            // (minus (s-1) X when t = s - 1).
            let deriv = if t + 1 == s { Q::from_int(s as i64 - 1) } else { Q::zero() };
            if unknowns.contains(&t) {
                let col0 = (t - unknowns.start) * block;
                for i in 0..pe {
                    for j in 0..pf {
                        let row = si * block + i * pf + j;
                        for l in 0..pe {
                            let c = &mu_e[(i, l)];
                            if !c.is_zero() {
                                a[(row, col0 + l * pf + j)] += c;
                            }
                        }
                        for l in 0..pf {
                            let c = &mu_f[(l, j)];
                            if !c.is_zero() {
                                a[(row, col0 + i * pf + l)] -= c;
                            }
                        }
                        if !deriv.is_zero() {
                            a[(row, col0 + i * pf + j)] -= &deriv;
                        }
                    }
                }
            } else if t < unknowns.start {
                let pt = &fixed[t];
                let mut val = mu_e.mul(pt).sub(&pt.mul(mu_f));
                if !deriv.is_zero() {
                    val = val.sub(&pt.scale(&deriv));
                }
                for i in 0..pe {
                    for j in 0..pf {
                        let row = si * block + i * pf + j;
                        rhs[row] -= &val[(i, j)];
                    }
                }
            }
        }
    }
    (a, rhs)
}

fn assemble(blocks: &[Mat]) -> SeriesMatrix {
    SeriesMatrix::from_coefficients(blocks)
}

fn unpack(x: &[Q], count: usize, pe: usize, pf: usize) -> Vec<Mat> {
    (0..count)
        .map(|t| {
            let mut m = Mat::zeros(pe, pf);
            for i in 0..pe {
                for j in 0..pf {
                    m[(i, j)] = x[t * pe * pf + i * pf + j].clone();
                }
            }
            m
        })
        .collect()
}

/// Whether `P` intertwines the two presentations modulo `b^order`.
pub fn is_intertwiner(e: &AbModule, f: &AbModule, p: &SeriesMatrix, order: usize) -> bool {
    if p.known_order() < order || e.known_order() < order || f.known_order() < order {
        return false;
    }
    let p = p.truncate(order);
    let me = e.matrix().truncate(order);
    let mf = f.matrix().truncate(order);
    me.mul(&p).sub(&p.mul(&mf)).sub(&p.b2_derivative()).is_zero()
}

fn det_of_combination(basis: &[Mat], c: &[i64]) -> Q {
    let mut m = Mat::zeros(basis[0].rows(), basis[0].cols());
    for (b, &ci) in basis.iter().zip(c) {
        if ci != 0 {
            m = m.add(&b.scale(&Q::from_int(ci)));
        }
    }
    m.det()
}

/// Decide whether `E/b^N E` and `F/b^N F` are isomorphic.
pub fn jet_isomorphism(e: &AbModule, f: &AbModule, order: usize, seed: u64) -> Result<JetIsoResult> {
    if e.rank() != f.rank() {
        return Ok(JetIsoResult::NotIso);
    }
    let have = e.known_order().min(f.known_order());
    if order > have {
        return Err(Error::precision("jet isomorphism", order, have));
    }
    if order == 0 {
        return Err(Error::BadParameter("jet order must be positive".into()));
    }
    let p = e.rank();
    let me = coefficients(e.matrix(), order);
    let mf = coefficients(f.matrix(), order);
    let (sys, _) = intertwiner_system(&me, &mf, 0..order, 0..order, &[]);
    let kernel = sys.kernel();
    // Keep kernel vectors whose constant blocks are independent.
    let block = p * p;
    let mut chosen: Vec<Vec<Q>> = Vec::new();
    let mut heads: Vec<Vec<Q>> = Vec::new();
    for v in kernel {
        let mut trial = heads.clone();
        trial.push(v[..block].to_vec());
        if crate::linalg::span_rank(&trial) > heads.len() {
            heads = trial;
            chosen.push(v);
        }
    }
    let d = chosen.len();
    if d == 0 {
        return Ok(JetIsoResult::NotIso);
    }
    let head_mats: Vec<Mat> = heads.iter().map(|h| unpack(h, 1, p, p).remove(0)).collect();
    let witness = |c: &[i64]| -> SeriesMatrix {
        let mut x = vec![Q::zero(); order * block];
        for (v, &ci) in chosen.iter().zip(c) {
            if ci == 0 {
                continue;
            }
            let ci = Q::from_int(ci);
            for (xi, vi) in x.iter_mut().zip(v) {
                if !vi.is_zero() {
                    *xi += &(vi * &ci);
                }
            }
        }
        assemble(&unpack(&x, order, p, p))
    };
    if d <= EXACT_SEARCH_DIM {
        // A nonzero polynomial of degree <= p in each variable cannot vanish
        // on the whole grid {0..p}^d.
        let mut c = vec![0i64; d];
        loop {
            if !det_of_combination(&head_mats, &c).is_zero() {
                return Ok(JetIsoResult::Iso(witness(&c)));
            }
            let mut i = 0;
            loop {
                if i == d {
                    return Ok(JetIsoResult::NotIso);
                }
                c[i] += 1;
                if c[i] as usize <= p {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
        if !det_of_combination(&head_mats, &c).is_zero() {
            return Ok(JetIsoResult::Iso(witness(&c)));
        }
    }
    Ok(JetIsoResult::UndecidedRandomized(RANDOM_TRIALS))
}

/// Result of [`lift_jet_isomorphism`].
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    /// The isomorphism, known modulo `b^order`.
    pub matrix: SeriesMatrix,
    /// Number of leading coefficients taken verbatim from the jet; zero
    /// when none of them extends and the lift was solved afresh.
    pub pinned: usize,
}

/// Extend a jet isomorphism `phi` (modulo `b^N`) to an isomorphism modulo
/// `b^target`, one coefficient at a time, checking that each new
/// coefficient is forced.
///
/// A jet isomorphism can carry free top coefficients that no global
/// isomorphism shares, so the lift keeps the longest prefix of `phi` that
/// admits an extension and reports its length in [`Lift::pinned`]. Each
/// coefficient `P_k` is pinned down by the equations of orders
/// `k .. k + c - 1` for the smallest window `c` that determines it.
pub fn lift_jet_isomorphism(
    e: &AbModule,
    f: &AbModule,
    phi: &SeriesMatrix,
    target: usize,
) -> Result<Lift> {
    let p = e.rank();
    if f.rank() != p || phi.rows() != p || phi.cols() != p {
        return Err(Error::ShapeMismatch("lift needs equal ranks".into()));
    }
    let n = phi.known_order();
    if n == 0 || target < n {
        return Err(Error::BadParameter("target order below the jet order".into()));
    }
    if phi.coefficient(0).det().is_zero() {
        return Err(Error::NotInvertible);
    }
    let avail = e.known_order().min(f.known_order());
    if avail < target {
        return Err(Error::precision("jet lift", target, avail));
    }
    let me = coefficients(e.matrix(), avail);
    let mf = coefficients(f.matrix(), avail);
    let given = coefficients(phi, n);
    let mut last_err = Error::LiftNotFound(n);
    for pinned in (1..=n).rev() {
        match lift_from(&me, &mf, &given[..pinned], target, avail) {
            Ok(blocks) => {
                return Ok(Lift {
                    matrix: assemble(&blocks),
                    pinned,
                })
            }
            Err(Error::LiftNotFound(k)) => last_err = Error::LiftNotFound(k),
            Err(other) => return Err(other),
        }
    }
    // Not even the constant term of `phi` extends. Start instead from an
    // isomorphism of the longest available jets, whose leading
    // coefficients are the ones that survive to higher order.
    let JetIsoResult::Iso(deep) = jet_isomorphism(e, f, avail, 0)? else {
        return Err(last_err);
    };
    let deep = coefficients(&deep, avail);
    for len in (1..=avail.min(target)).rev() {
        if let Ok(blocks) = lift_from(&me, &mf, &deep[..len], target, avail) {
            return Ok(Lift {
                matrix: assemble(&blocks),
                pinned: 0,
            });
        }
    }
    Err(last_err)
}

fn lift_from(me: &[Mat], mf: &[Mat], prefix: &[Mat], target: usize, avail: usize) -> Result<Vec<Mat>> {
    let pe = me[0].rows();
    let pf = mf[0].rows();
    let block = pe * pf;
    // A coefficient still free after this many further orders is taken
    // to be genuinely free.
    let max_window = 2 * pe + 4;
    let mut blocks = prefix.to_vec();
    // Equations that involve only the prefix must already hold.
    let check_upto = if me[0].is_zero() && mf[0].is_zero() {
        prefix.len() + 1
    } else {
        prefix.len()
    };
    let (sys, rhs) = intertwiner_system(
        me,
        mf,
        prefix.len()..prefix.len(),
        0..check_upto.min(avail),
        prefix,
    );
    if sys.solve(&rhs).is_none() {
        return Err(Error::LiftNotFound(prefix.len()));
    }
    for k in prefix.len()..target {
        let mut window = 1;
        loop {
            if k + window > avail {
                return Err(Error::precision("jet lift window", k + window, avail));
            }
            let (sys, rhs) =
                intertwiner_system(me, mf, k..k + window, k..k + window, &blocks);
            let Some(x) = sys.solve(&rhs) else {
                return Err(Error::LiftNotFound(k));
            };
            // Unique in the P_k block iff no kernel vector touches it.
            let free = sys
                .kernel()
                .iter()
                .any(|v| v[..block].iter().any(|c| !c.is_zero()));
            if !free {
                blocks.push(unpack(&x[..block], 1, pe, pf).remove(0));
                break;
            }
            window += 1;
            if window > max_window {
                return Err(Error::LiftNotUnique(k));
            }
        }
    }
    Ok(blocks)
}

/// For `a·e = bS(b)·e`, the exponent `S(0)` and the unit `P` with
/// `change_basis(E, [[P]])` equal to `E_{S(0)}`.
pub fn rank1_normal_form(e: &AbModule) -> Result<(Q, TruncSeries)> {
    if e.rank() != 1 {
        return Err(Error::ShapeMismatch("rank-1 module expected".into()));
    }
    if !e.is_simple_pole() {
        return Err(Error::NotSimplePole);
    }
    let n = e.known_order();
    let m = e.matrix().get(0, 0);
    // S_j = coefficient of b^{j+1} in M.
    let s = |j: usize| m.coeff(j + 1).cloned().unwrap_or_else(Q::zero);
    let lambda = s(0);
    // P'/P = -(S - S(0))/b, i.e. (k+1) p_{k+1} = -sum_j S_{j+1} p_{k-j}.
    let mut p = vec![Q::zero(); n];
    p[0] = Q::one();
    for k in 0..n.saturating_sub(1) {
        let mut acc = Q::zero();
        for j in 0..=k {
            let sj = s(j + 1);
            if !sj.is_zero() && !p[k - j].is_zero() {
                acc += &(&sj * &p[k - j]);
            }
        }
        p[k + 1] = -(&acc / &Q::from_int(k as i64 + 1));
    }
    Ok((lambda, TruncSeries::from_coeffs(p)))
}
