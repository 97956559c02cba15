//! Saturation, regularity order, index, the biggest simple-pole submodule,
//! widths and the `α` invariant.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Mat;
use crate::module::AbModule;
use crate::scalar::GaussianRational as Q;
use crate::series::TruncSeries;
use crate::smatrix::{unit_vec, SeriesVec};

fn require_margin(e: &AbModule, context: &'static str) -> Result<()> {
    let needed = 2 * e.rank() + 2;
    if e.known_order() < needed {
        return Err(Error::precision(context, needed, e.known_order()));
    }
    Ok(())
}

/// `L + b^{-1}a·L`, described one shift further out. (`b^{-1}a·L` alone
/// need not have full rank.)
fn saturation_step(e: &AbModule, l: &Lattice) -> Result<Lattice> {
    let n = e.known_order();
    let m = l.shift();
    let mb = TruncSeries::monomial(Q::from_int(m as i64), 1, n);
    let basis = l.basis(n);
    let mut gens: Vec<SeriesVec> = basis
        .iter()
        .map(|h| h.iter().map(|s| s.shift_up(1).truncate(n)).collect())
        .collect();
    for h in &basis {
        let ah = e.apply_a(h);
        gens.push(ah.iter().zip(h).map(|(x, y)| x - &(&mb * y)).collect());
    }
    Lattice::echelonize(&gens, e.rank(), m + 1, n)
}

/// The chain `Φ_0 = E ⊆ Φ_1 ⊆ ...` with `Φ_{k+1} = Φ_k + b^{-1}a·Φ_k`,
/// up to and including the first repeated term (which is not repeated in
/// the output).
pub fn saturation_chain(e: &AbModule) -> Result<Vec<Lattice>> {
    require_margin(e, "saturation")?;
    let p = e.rank();
    let n = e.known_order();
    let mut chain = vec![Lattice::ambient(p, 0, n)?];
    for _ in 0..p {
        let cur = chain.last().unwrap();
        let next = saturation_step(e, cur)?;
        if next.equals(cur)? {
            return Ok(chain);
        }
        chain.push(next.reduce_shift());
    }
    Err(Error::NotRegular(p))
}

#[derive(Clone, Debug)]
pub struct Saturation {
    /// `E^♯` as a lattice in `E[b^{-1}]`, at its minimal shift.
    pub lattice: Lattice,
    /// Presentation of `E^♯` on the echelon basis of `lattice`.
    pub module: AbModule,
    /// Index of the first stable term of the saturation chain.
    pub steps: usize,
}

pub fn saturate(e: &AbModule) -> Result<Saturation> {
    let chain = saturation_chain(e)?;
    let steps = chain.len() - 1;
    let lattice = chain.last().unwrap().clone();
    let module = e.submodule_module(&lattice)?;
    Ok(Saturation {
        lattice,
        module,
        steps,
    })
}

/// Smallest `m` with `E^♯ ⊆ b^{-m}E`.
pub fn index_delta(e: &AbModule) -> Result<usize> {
    Ok(delta_of(&saturate(e)?.lattice))
}

fn delta_of(sharp: &Lattice) -> usize {
    sharp.shift().saturating_sub(sharp.min_valuation())
}

/// `a^j` applied `j` times.
fn apply_a_pow(e: &AbModule, x: &[TruncSeries], j: usize) -> SeriesVec {
    let mut v = x.to_vec();
    for _ in 0..j {
        v = e.apply_a(&v);
    }
    v
}

pub(crate) fn b_power_unit(p: usize, i: usize, k: usize, n: usize) -> SeriesVec {
    unit_vec(p, i, n).iter().map(|s| s.shift_up(k).truncate(n)).collect()
}

/// Smallest `k` with `a^{k+1}E ⊆ sum_{j<=k} a^j b^{k-j+1} E`.
pub fn regularity_order(e: &AbModule) -> Result<usize> {
    require_margin(e, "regularity order")?;
    let p = e.rank();
    let n = e.known_order();
    for k in 0..p {
        let mut gens = Vec::new();
        for j in 0..=k {
            for s in 0..=j {
                for i in 0..p {
                    let x = b_power_unit(p, i, k - j + 1 + s, n);
                    gens.push(apply_a_pow(e, &x, j));
                }
            }
        }
        let psi = Lattice::echelonize(&gens, p, 0, n)?;
        let mut ok = true;
        'test: for s in 0..=k + 1 {
            for i in 0..p {
                let x = b_power_unit(p, i, s, n);
                if !psi.contains(&apply_a_pow(e, &x, k + 1))? {
                    ok = false;
                    break 'test;
                }
            }
        }
        if ok {
            return Ok(k);
        }
    }
    Err(Error::NotRegular(p))
}

#[derive(Clone, Debug)]
pub struct SimplePoleCore {
    /// `E^b` as a lattice inside `E` (shift 0).
    pub lattice: Lattice,
    pub module: AbModule,
}

/// `E^b`, obtained as the lattice dual to `(E^*)^♯`, and confirmed against
/// the fixed point of `F ↦ F ∩ a^{-1}(bF)` on a jet of `E`.
pub fn biggest_simple_pole(e: &AbModule) -> Result<SimplePoleCore> {
    let core = biggest_simple_pole_by_duality(e)?;
    let delta = delta_of(&saturate(e)?.lattice);
    let order = (delta + 2).min(e.known_order());
    let fixed = jet_fixed_point(e, order);
    let image = lattice_image(&core.lattice, order);
    if !same_subspace(&fixed, &image) {
        return Err(Error::CrossCheckFailed(
            "biggest simple-pole submodule: duality and jet fixed point disagree".into(),
        ));
    }
    Ok(core)
}

/// The duality route alone.
pub fn biggest_simple_pole_by_duality(e: &AbModule) -> Result<SimplePoleCore> {
    require_margin(e, "biggest simple-pole submodule")?;
    let n = e.known_order();
    let p = e.rank();
    let dual_sharp = saturate(&e.dual())?.lattice;
    // {x : <x, L'> ⊆ C[[b]]} = b^{m'-K'} span(G'(-b)^T), where the pairing
    // sends (S, T) to sum_i S_i(-b) T_i(b).
    let up = dual_sharp.shift() - dual_sharp.conductor().min(dual_sharp.shift());
    let gens: Vec<SeriesVec> = dual_sharp
        .dual_generators(n)
        .iter()
        .map(|v| v.iter().map(|s| s.reflect().shift_up(up).truncate(n)).collect())
        .collect();
    let lattice = Lattice::echelonize(&gens, p, 0, n)?;
    let module = e.submodule_module(&lattice)?;
    Ok(SimplePoleCore { lattice, module })
}

/// Flattened coordinates of an element of `E/b^N E`: index `i·N + k` holds
/// the coefficient of `b^k` in the `i`-th coordinate.
pub(crate) fn flatten(v: &[TruncSeries], order: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(v.len() * order);
    for s in v {
        for k in 0..order {
            out.push(s.coeff(k).cloned().unwrap_or_else(Q::zero));
        }
    }
    out
}

/// Matrices of `a` and `b` on `E/b^N E` in flattened coordinates (columns
/// are images of the standard basis).
pub(crate) fn jet_operators(e: &AbModule, order: usize) -> (Mat, Mat) {
    let p = e.rank();
    let dim = p * order;
    let mut a = Mat::zeros(dim, dim);
    let mut b = Mat::zeros(dim, dim);
    for i in 0..p {
        for k in 0..order {
            let col = i * order + k;
            let x = b_power_unit(p, i, k, order);
            let ax = flatten(&e.apply_a(&x), order);
            for (r, c) in ax.into_iter().enumerate() {
                a[(r, col)] = c;
            }
            if k + 1 < order {
                b[(col + 1, col)] = Q::one();
            }
        }
    }
    (a, b)
}

/// Largest subspace `F` of `E/b^N E` with `aF ⊆ bF`, as a list of vectors.
pub(crate) fn jet_fixed_point(e: &AbModule, order: usize) -> Vec<Vec<Q>> {
    let p = e.rank();
    let (a, b) = jet_operators(e, order);
    let dim = p * order;
    let mut basis: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    loop {
        let r = basis.len();
        if r == 0 {
            return basis;
        }
        // Solve A V c = B V d.
        let v = Mat::from_rows(basis.clone()).transpose();
        let av = a.mul(&v);
        let bv = b.mul(&v);
        let mut sys = Mat::zeros(dim, 2 * r);
        for i in 0..dim {
            for j in 0..r {
                sys[(i, j)] = av[(i, j)].clone();
                sys[(i, r + j)] = -&bv[(i, j)];
            }
        }
        let kernel = sys.kernel();
        let mut next: Vec<Vec<Q>> = kernel
            .iter()
            .map(|kv| v.mul_vec(&kv[..r]))
            .filter(|x| x.iter().any(|c| !c.is_zero()))
            .collect();
        if next.is_empty() {
            return next;
        }
        let (red, piv) = Mat::from_rows(next).rref();
        next = (0..piv.len()).map(|i| red.row(i).to_vec()).collect();
        if next.len() == r {
            return next;
        }
        basis = next;
    }
}

/// The image of a shift-0 lattice in `E/b^N E`.
fn lattice_image(l: &Lattice, order: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    for h in l.basis(order) {
        for j in 0..order {
            let v: SeriesVec = h.iter().map(|s| s.shift_up(j).truncate(order)).collect();
            out.push(flatten(&v, order));
        }
    }
    out
}

fn same_subspace(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    use crate::linalg::span_rank;
    let ra = span_rank(a);
    let rb = span_rank(b);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && span_rank(&both) == ra
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWidth {
    /// Representative of the class mod `Z` (real part in `[0, 1)`).
    pub class: Q,
    pub lambda_min: Q,
    pub lambda_max: Q,
    pub width: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub classes: Vec<ClassWidth>,
    pub width: i64,
}

impl WidthReport {
    pub fn class(&self, c: &Q) -> Option<&ClassWidth> {
        let key = c.class_mod_z();
        self.classes.iter().find(|w| w.class == key)
    }
}

/// Class-wise widths from the spectra of `E^♯` and `E^b`.
pub fn widths(e: &AbModule) -> Result<WidthReport> {
    let sharp = saturate(e)?.module.spectrum()?;
    let flat = biggest_simple_pole(e)?.module.spectrum()?;
    widths_from_spectra(&sharp, &flat)
}

pub(crate) fn widths_from_spectra(
    sharp: &crate::module::Spectrum,
    flat: &crate::module::Spectrum,
) -> Result<WidthReport> {
    let mut classes_sharp = sharp.classes();
    let mut classes_flat = flat.classes();
    classes_sharp.sort_by(Q::lex_cmp);
    classes_flat.sort_by(Q::lex_cmp);
    if classes_sharp != classes_flat {
        return Err(Error::CrossCheckFailed(
            "spectra of the saturation and of the simple-pole core have different classes".into(),
        ));
    }
    let mut classes = Vec::new();
    for c in classes_sharp {
        let lambda_min = flat.min_in_class(&c).expect("class present");
        let lambda_max = sharp.max_in_class(&c).expect("class present");
        let width = lambda_max
            .int_diff(&lambda_min)
            .expect("members of one class differ by an integer");
        classes.push(ClassWidth {
            class: c,
            lambda_min,
            lambda_max,
            width,
        });
    }
    let width = classes.iter().map(|c| c.width).max().unwrap_or(0);
    Ok(WidthReport { classes, width })
}

/// Trace of `b^{-1}a` on `E^♯/bE^♯` plus `dim(E^♯/E)`.
pub fn alpha_invariant(e: &AbModule) -> Result<Q> {
    let sat = saturate(e)?;
    alpha_from_saturation(e, &sat)
}

pub(crate) fn alpha_from_saturation(e: &AbModule, sat: &Saturation) -> Result<Q> {
    let base = Lattice::ambient(e.rank(), 0, e.known_order())?;
    let codim = Lattice::index_dim(&sat.lattice, &base)?;
    Ok(&sat.module.residue().trace() + &Q::from_int(codim as i64))
}

/// Everything above in one pass.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub rank: usize,
    pub simple_pole: bool,
    pub regularity_order: usize,
    pub saturation_steps: usize,
    pub delta: usize,
    pub saturation: Saturation,
    pub core: SimplePoleCore,
    pub spectrum_sharp: crate::module::Spectrum,
    pub spectrum_flat: crate::module::Spectrum,
    pub widths: WidthReport,
    pub alpha: Q,
}

impl InvariantReport {
    pub fn compute(e: &AbModule) -> Result<InvariantReport> {
        let saturation = saturate(e)?;
        let regularity_order = regularity_order(e)?;
        let delta = delta_of(&saturation.lattice);
        let core = biggest_simple_pole(e)?;
        let spectrum_sharp = saturation.module.spectrum()?;
        let spectrum_flat = core.module.spectrum()?;
        let widths = widths_from_spectra(&spectrum_sharp, &spectrum_flat)?;
        let alpha = alpha_from_saturation(e, &saturation)?;
        Ok(InvariantReport {
            rank: e.rank(),
            simple_pole: e.is_simple_pole(),
            regularity_order,
            saturation_steps: saturation.steps,
            delta,
            saturation,
            core,
            spectrum_sharp,
            spectrum_flat,
            widths,
            alpha,
        })
    }

    /// `or + L + rank + 1`.
    pub fn determination_bound(&self) -> usize {
        let v = self.regularity_order as i64 + self.widths.width + self.rank as i64 + 1;
        v.max(0) as usize
    }
}
