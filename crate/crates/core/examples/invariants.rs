//! Invariant report of the standard families.
use abmod::invariants::InvariantReport;
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    let modules = [
        Construct::E { lambda: Q::ratio(1, 2) },
        Construct::Elog { lambda: Q::ratio(1, 3), n: 1 },
        Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 3) },
        Construct::Ealpha { lambda: Q::from_int(3), n: 1, alpha: Q::from_int(2) },
        Construct::J { k: 3, lambda: Q::zero() },
        Construct::Rank3Example,
    ];
    for c in modules {
        let r = InvariantReport::compute(&c.build(None)?)?;
        println!("{c}");
        println!(
            "  rank {} simple pole {} or {} delta {} saturation steps {}",
            r.rank, r.simple_pole, r.regularity_order, r.delta, r.saturation_steps
        );
        println!("  spec(sharp) {:?}", strings(&r.spectrum_sharp.eigenvalues));
        println!("  spec(flat)  {:?}", strings(&r.spectrum_flat.eigenvalues));
        println!("  width {} alpha {} N0 {}", r.widths.width, r.alpha, r.determination_bound());
    }
    Ok(())
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}
