//! Lattices in C[[b]]^p: echelon form, containment and index.
use abmod::smatrix::unit_vec;
use abmod::{Lattice, SeriesVec, TruncSeries};

fn bpow(k: usize, n: usize) -> TruncSeries {
    TruncSeries::one(n).shift_up(k).truncate(n)
}

fn main() -> abmod::Result<()> {
    let n = 10;
    let gens: Vec<SeriesVec> = vec![
        vec![bpow(1, n), &bpow(1, n) + &bpow(2, n)],
        vec![TruncSeries::zero(n), bpow(3, n)],
        vec![bpow(2, n), TruncSeries::zero(n)],
    ];
    let l = Lattice::echelonize(&gens, 2, 0, n)?;
    println!("pivot degrees {:?}, conductor {}", l.pivot_degrees(), l.conductor());
    for v in l.basis_vectors() {
        println!("  [{}, {}]", v[0], v[1]);
    }

    let ambient = Lattice::ambient(2, 0, n)?;
    println!("dim C[[b]]^2 / L = {}", Lattice::index_dim(&ambient, &l)?);
    println!("dim L / bL       = {}", Lattice::index_dim(&l, &l.times_b(1)?)?);
    println!("e_1 in L: {}", l.contains(&unit_vec(2, 0, n))?);
    println!("b^2 e_1 in L: {}", l.contains(&[bpow(2, n), TruncSeries::zero(n)])?);
    Ok(())
}
