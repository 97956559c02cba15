//! Jets, the determination bound, and lifting a jet isomorphism.
use abmod::jets::{determination_bound, is_intertwiner, jet_isomorphism, lift_jet_isomorphism, JetIsoResult};
use abmod::smatrix::random_unit_matrix;
use abmod::{Construct, GaussianRational as Q};

fn main() -> abmod::Result<()> {
    // Two modules with the same 3-jet that are told apart at order 4.
    let j = Construct::J { k: 3, lambda: Q::zero() }.build(Some(12))?;
    let f = Construct::F { k: 3, lambda: Q::zero(), rho: Q::ratio(1, 2) }.build(Some(12))?;
    for order in 1..=4 {
        let verdict = match jet_isomorphism(&j, &f, order, 0)? {
            JetIsoResult::Iso(_) => "isomorphic",
            JetIsoResult::NotIso => "not isomorphic",
            JetIsoResult::UndecidedRandomized(_) => "undecided",
        };
        println!("J_3(0) and F(3,0,1/2) modulo b^{order}: {verdict}");
    }
    println!("determination bound of J_3(0): {}", determination_bound(&j)?);

    // A disguised copy is recognised at the bound and the witness lifts.
    let e = Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 3) }.build(Some(24))?;
    let moved = e.change_basis(&random_unit_matrix(2, 24, 11))?;
    let n0 = determination_bound(&e)?;
    let JetIsoResult::Iso(phi) = jet_isomorphism(&e, &moved, n0, 0)? else {
        unreachable!("a change of basis is an isomorphism")
    };
    let lift = lift_jet_isomorphism(&e, &moved, &phi, 16)?;
    println!(
        "lifted the order-{n0} witness to order {} ({} coefficients kept), intertwines: {}",
        lift.matrix.known_order(),
        lift.pinned,
        is_intertwiner(&e, &moved, &lift.matrix, 16)
    );
    Ok(())
}
