//! Exact truncated power series in b over Q(i).
use abmod::cli::parse_series_at;
use abmod::{GaussianRational as Q, TruncSeries};

fn main() {
    let s = parse_series_at("2 + b - (1/3+1i)*b^2", 6).expect("valid series");
    let inv = s.invert().expect("unit");
    println!("s        = {s}");
    println!("1/s      = {inv}");
    println!("s * 1/s  = {}", &s * &inv);
    println!("ds/db    = {}", s.derivative());

    // Known only modulo b^6: products lose nothing, derivatives lose one order.
    let t = TruncSeries::monomial(Q::ratio(-1, 2), 1, 6);
    println!("(s*t)'   = {}", (&s * &t).derivative());
    println!("b^3 * s  = {} (known mod b^{})", s.shift_up(3).truncate(6), 6);
}
