//! Straightening a rank-one module a.e = bS(b).e to a.e = S(0)b.e.
use abmod::cli::parse_series_at;
use abmod::jets::rank1_normal_form;
use abmod::{AbModule, Construct, SeriesMatrix};

fn main() -> abmod::Result<()> {
    let n = 8;
    let s = parse_series_at("(1/2)*b + b^2 - 3*b^4", n).expect("valid series");
    let e = AbModule::new(SeriesMatrix::from_rows(vec![vec![s.clone()]])?, n)?;
    let (exponent, unit) = rank1_normal_form(&e)?;
    println!("a.e = ({s}) e");
    println!("exponent {exponent}, unit {unit}");
    let straight = e.change_basis(&SeriesMatrix::from_rows(vec![vec![unit]])?)?;
    let target = Construct::E { lambda: exponent }.build(Some(straight.known_order()))?;
    println!("after the change of basis: {} (standard: {})", straight.matrix().get(0, 0), straight == target);
    Ok(())
}
