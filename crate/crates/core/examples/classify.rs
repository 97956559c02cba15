//! Rank-two classification after a random change of basis.
use abmod::smatrix::random_unit_matrix;
use abmod::structure::classify_rank2;
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    let cases = [
        Construct::DirectSum(vec![Construct::E { lambda: Q::from_int(0) }, Construct::E { lambda: Q::ratio(1, 2) }]),
        Construct::Elog { lambda: Q::ratio(1, 3), n: 2 },
        Construct::Epair { lambda: Q::from_int(1), mu: Q::from_int(1) },
        Construct::Ealpha { lambda: Q::ratio(5, 2), n: 2, alpha: Q::from_int(-1) },
    ];
    for (seed, c) in cases.into_iter().enumerate() {
        let e = c.build(Some(16))?;
        let moved = e.change_basis(&random_unit_matrix(2, 16, seed as u64))?;
        println!("{c} -> {}", classify_rank2(&moved)?);
    }
    Ok(())
}
