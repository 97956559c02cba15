//! Saturation chain and the biggest simple-pole submodule.
use abmod::invariants::{biggest_simple_pole, saturate, saturation_chain};
use abmod::{Construct, Lattice};

fn main() -> abmod::Result<()> {
    let e = Construct::Rank3Example.build(None)?;
    let chain = saturation_chain(&e)?;
    println!("saturation chain of {e:?}", e = Construct::Rank3Example);
    for (i, l) in chain.iter().enumerate() {
        println!("  step {i}: shift {} pivots {:?}", l.shift(), l.pivot_degrees());
    }
    let sharp = saturate(&e)?;
    println!("sharp has a simple pole: {}", sharp.module.is_simple_pole());
    println!("residue spectrum of sharp: {:?}", sharp.module.spectrum()?.eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let flat = biggest_simple_pole(&e)?;
    let ambient = Lattice::ambient(3, 0, flat.lattice.known_order())?;
    println!("codim of flat in E: {}", Lattice::index_dim(&ambient, &flat.lattice)?);
    println!("residue spectrum of flat: {:?}", flat.module.spectrum()?.eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(())
}
