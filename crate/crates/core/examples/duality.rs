//! Duals, twists and direct sums.
use abmod::invariants::index_delta;
use abmod::jets::{determination_bound, jet_isomorphism};
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    let e = Construct::E { lambda: Q::ratio(2, 3) }.build(Some(8))?;
    println!("dual of E(2/3) has spectrum {:?}", e.dual().spectrum()?.eigenvalues);

    let pair = Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 2) }.build(Some(16))?;
    let expected = Construct::Epair { lambda: Q::ratio(1, 2), mu: Q::from_int(-1) }.build(Some(16))?;
    let n0 = determination_bound(&pair.dual())?.max(determination_bound(&expected)?);
    let iso = jet_isomorphism(&pair.dual(), &expected, n0, 0)?.is_iso();
    println!("Epair(2,1/2)* ~ Epair(1/2,-1): {iso} (checked at order {n0})");

    for k in 2..=4 {
        let l = Q::ratio(1, 3);
        let j = Construct::J { k, lambda: l.clone() }.build(Some(3 * k + 8))?;
        let target = Construct::J { k, lambda: &(-&l) - &Q::from_int(k as i64 - 1) }.build(Some(3 * k + 8))?;
        let iso = jet_isomorphism(&j.dual(), &target, k + 1, 0)?.is_iso();
        println!("J_{k}(1/3)* ~ J_{k}({}): {iso}, delta {} = {}", -&l - &Q::from_int(k as i64 - 1), index_delta(&j)?, index_delta(&j.dual())?);
    }

    let sum = e.direct_sum(&e.twist(&Q::from_int(1)));
    println!("dual distributes over sums: {}", sum.dual() == e.dual().direct_sum(&e.twist(&Q::from_int(1)).dual()));
    Ok(())
}
