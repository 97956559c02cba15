//! Eigenvectors, normal lines and Jordan-Hoelder sequences.
use abmod::structure::{eigenvectors, find_normal_line, jordan_holder};
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    let e = Construct::Elog { lambda: Q::ratio(1, 2), n: 1 }.build(Some(12))?;
    for y in eigenvectors(&e, &Q::ratio(1, 2))? {
        println!("eigenvector for 1/2: [{}]", y.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));
    }

    for c in [
        Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 2) },
        Construct::J { k: 3, lambda: Q::from_int(1) },
        Construct::Rank3Example,
    ] {
        let m = c.build(Some(14))?;
        let (exponent, _) = find_normal_line(&m)?;
        let jh = jordan_holder(&m)?;
        let shown: Vec<String> = jh.exponents.iter().map(|x| x.to_string()).collect();
        println!("{c}: normal line exponent {exponent}, JH {shown:?}, sum {}", jh.sum());
    }
    Ok(())
}
