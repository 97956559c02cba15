//! Hom and Ext^1 dimensions.
use abmod::structure::{cokernel_b_bound, ext_dims, ext_dims_to_rank_one};
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    let base = Q::ratio(1, 3);
    let e = Construct::E { lambda: base.clone() }.build(Some(48))?;
    for d in [-2, -1, 0, 1, 2] {
        let f = Construct::E { lambda: &base + &Q::from_int(d) }.build(Some(48))?;
        let (hom, ext1) = ext_dims(&e, &f)?;
        println!("E(1/3) -> E(1/3 + {d}): hom {hom}, ext1 {ext1}");
    }

    let pair = Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 3) }.build(Some(32))?;
    let target = Q::ratio(4, 3);
    println!("Epair(2,1/3) -> E(4/3): {:?}", ext_dims_to_rank_one(&pair, &target)?);
    println!("cokernel of a - (4/3)b on Epair(2,1/3)* contains b^N E for N = {}", cokernel_b_bound(&pair.dual(), &target)?);
    Ok(())
}
