use abmod::cli::{format_module, parse_module_file};
use abmod::invariants::{biggest_simple_pole, index_delta, saturate, InvariantReport};
use abmod::jets::{is_intertwiner, jet_isomorphism, JetIsoResult};
use abmod::smatrix::{random_unit_matrix, unit_vec};
use abmod::structure::{classify_rank2, jordan_holder, solve_eigenvector};
use abmod::{Construct, GaussianRational as Q, Lattice, SeriesVec, TruncSeries};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::ratio(n, d))
}

fn gaussian() -> impl Strategy<Value = Q> {
    (rational(), prop::bool::weighted(0.2), rational()).prop_map(|(re, cplx, im)| {
        if cplx {
            &re + &(&im * &Q::i())
        } else {
            re
        }
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(gaussian(), order).prop_map(TruncSeries::from_coeffs)
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries> {
    series(order).prop_filter("unit", |s| !s.constant_term().is_zero())
}

fn corpus() -> Vec<Construct> {
    let z = Q::from_int;
    vec![
        Construct::E { lambda: Q::ratio(1, 2) },
        Construct::Elog { lambda: Q::ratio(1, 3), n: 1 },
        Construct::Epair { lambda: z(2), mu: Q::ratio(1, 3) },
        Construct::Epair { lambda: z(1), mu: z(1) },
        Construct::Ealpha { lambda: z(3), n: 1, alpha: z(2) },
        Construct::DirectSum(vec![Construct::E { lambda: z(0) }, Construct::E { lambda: Q::ratio(1, 2) }]),
        Construct::J { k: 3, lambda: z(0) },
        Construct::Rank3Example,
    ]
}

fn corpus_member() -> impl Strategy<Value = Construct> {
    prop::sample::select(corpus())
}

fn vec_eq(a: &[TruncSeries], b: &[TruncSeries]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_inverse(s in unit_series(6)) {
        let inv = s.invert().unwrap();
        prop_assert_eq!(&s * &inv, TruncSeries::one(6));
    }

    #[test]
    fn series_ring_laws(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn leibniz(a in series(6), b in series(6)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs.truncate(5), rhs.truncate(5));
    }
}

fn lattice_gens() -> impl Strategy<Value = Vec<SeriesVec>> {
    // Two generators b^{k_i}(e_i + noise), possibly with an extra one.
    let n = 12;
    (0usize..3, 0usize..3, series(4), series(4), series(4), series(4)).prop_map(
        move |(k0, k1, a, b, c, d)| {
            let g0: SeriesVec = vec![TruncSeries::one(n).shift_up(k0).truncate(n), (&a.with_order(n) * &TruncSeries::one(n).shift_up(k0 + 1)).truncate(n)];
            let g1: SeriesVec = vec![b.with_order(n).shift_up(k1).truncate(n), TruncSeries::one(n).shift_up(k1).truncate(n)];
            let g2: SeriesVec = vec![c.with_order(n).shift_up(2).truncate(n), d.with_order(n).shift_up(2).truncate(n)];
            vec![g0, g1, g2]
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn echelon_is_canonical(gens in lattice_gens()) {
        let l = Lattice::echelonize(&gens, 2, 0, 12).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let r = Lattice::echelonize(&rev, 2, 0, 12).unwrap();
        prop_assert!(l.equals(&r).unwrap());
        let again = Lattice::echelonize(&l.basis_vectors(), 2, 0, l.known_order()).unwrap();
        prop_assert!(again.equals(&l).unwrap());
        for g in &gens {
            prop_assert!(l.contains(g).unwrap());
            let bg: SeriesVec = g.iter().map(|s| s.shift_up(1).truncate(12)).collect();
            prop_assert!(l.contains(&bg).unwrap());
        }
    }

    #[test]
    fn index_is_additive(gens in lattice_gens()) {
        let l1 = Lattice::ambient(2, 0, 12).unwrap();
        let l2 = Lattice::echelonize(&gens, 2, 0, 12).unwrap();
        let l3 = l2.times_b(1).unwrap();
        let whole = Lattice::index_dim(&l1, &l3).unwrap();
        prop_assert_eq!(whole, Lattice::index_dim(&l1, &l2).unwrap() + Lattice::index_dim(&l2, &l3).unwrap());
        prop_assert_eq!(Lattice::index_dim(&l2, &l3).unwrap(), 2);
    }

    #[test]
    fn index_is_det_valuation(a in series(6), b in series(6), c in series(6), d in series(6), k in 0usize..3) {
        let n = 12;
        let cols: Vec<SeriesVec> = vec![
            vec![a.with_order(n), b.with_order(n)],
            vec![c.with_order(n).shift_up(k).truncate(n), d.with_order(n).shift_up(k).truncate(n)],
        ];
        let det = &(&cols[0][0] * &cols[1][1]) - &(&cols[0][1] * &cols[1][0]);
        let Some(v) = det.coeffs().iter().position(|x| !x.is_zero()) else { return Ok(()) };
        prop_assume!(v <= 3);
        let l = Lattice::echelonize(&cols, 2, 0, n).unwrap();
        prop_assert_eq!(Lattice::index_dim(&Lattice::ambient(2, 0, n).unwrap(), &l).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_identities(c in corpus_member(), seed in 0u64..1000, x0 in series(10), x1 in series(10), m in rational()) {
        let e = c.build(Some(10)).unwrap();
        let p = e.rank();
        let x: SeriesVec = (0..p).map(|i| if i % 2 == 0 { x0.clone() } else { x1.clone() }).collect();
        let bx: SeriesVec = x.iter().map(|s| s.shift_up(1).truncate(10)).collect();
        let lhs: SeriesVec = e.apply_a(&bx).iter().zip(e.apply_a(&x)).map(|(u, v)| u - &v.shift_up(1).truncate(10)).collect();
        let rhs: SeriesVec = x.iter().map(|s| s.shift_up(2).truncate(10)).collect();
        prop_assert!(vec_eq(&lhs, &rhs));

        let q = random_unit_matrix(p, 10, seed);
        let back = e.change_basis(&q).unwrap().change_basis(&q.invert().unwrap()).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(&e.dual().dual(), &e);
        prop_assert_eq!(e.dual().is_simple_pole(), e.is_simple_pole());
        let other = Construct::E { lambda: Q::ratio(1, 5) }.build(Some(10)).unwrap();
        prop_assert_eq!(e.direct_sum(&other).dual(), e.dual().direct_sum(&other.dual()));
        if e.is_simple_pole() {
            prop_assert_eq!(e.twist(&m).spectrum().unwrap(), e.spectrum().unwrap().shift(&m));
        }
    }

    #[test]
    fn invariants_survive_base_change(c in corpus_member(), seed in 0u64..1000) {
        let e = c.build(Some(20)).unwrap();
        let moved = e.change_basis(&random_unit_matrix(e.rank(), 20, seed)).unwrap();
        let r = InvariantReport::compute(&e).unwrap();
        let s = InvariantReport::compute(&moved).unwrap();
        prop_assert_eq!(r.regularity_order, s.regularity_order);
        prop_assert_eq!(r.delta, s.delta);
        prop_assert_eq!(&r.widths, &s.widths);
        prop_assert_eq!(&r.alpha, &s.alpha);
        prop_assert!(s.regularity_order < s.rank);
        prop_assert!(s.delta <= s.regularity_order);
        prop_assert_eq!(index_delta(&moved.dual()).unwrap(), s.delta);
        prop_assert_eq!(s.spectrum_sharp.classes(), s.spectrum_flat.classes());
        prop_assert_eq!(jordan_holder(&moved).unwrap().sum(), s.alpha.clone());
        prop_assert!(saturate(&moved).unwrap().module.is_simple_pole());
        prop_assert!(biggest_simple_pole(&moved).unwrap().module.is_simple_pole());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn eigenvectors_are_exact(l in rational(), gap in 1i64..3, seed in 0u64..1000, noise in series(4), kappa in 0usize..3) {
        let n = 12;
        let sum = Construct::DirectSum(vec![
            Construct::E { lambda: l.clone() },
            Construct::Elog { lambda: &l + &Q::ratio(1, 2), n: gap as usize },
        ]);
        let e = sum.build(Some(n)).unwrap();
        let e = e.change_basis(&random_unit_matrix(3, n, seed)).unwrap();
        let sols = solve_eigenvector(&e, &l).unwrap();
        prop_assert!(!sols.is_empty());
        for y in &sols {
            let order = y[0].known_order();
            let ay = e.apply_a(y);
            let rhs: SeriesVec = y.iter().map(|s| s.shift_up(1).scale(&l).truncate(order)).collect();
            prop_assert!(vec_eq(&ay.iter().map(|s| s.truncate(order)).collect::<Vec<_>>(), &rhs));
        }
        // A perturbation by b^{kappa+2} is undone by the solver.
        let y = &sols[0];
        let order = y[0].known_order();
        let w: SeriesVec = (0..3).map(|i| (&noise.with_order(order) * &TruncSeries::monomial(Q::from_int(i as i64 + 1), kappa + 2, order)).truncate(order)).collect();
        let perturbed: SeriesVec = y.iter().zip(&w).map(|(a, b)| a + b).collect();
        let diff: SeriesVec = y.iter().zip(&perturbed).map(|(a, b)| a - b).collect();
        prop_assert!(diff.iter().all(|s| s.coeffs().iter().take(kappa + 1).all(|c| c.is_zero())));
    }

    #[test]
    fn classification_is_basis_free(c in prop::sample::select(vec![
        Construct::Epair { lambda: Q::from_int(2), mu: Q::ratio(1, 3) },
        Construct::Elog { lambda: Q::ratio(1, 2), n: 1 },
        Construct::Ealpha { lambda: Q::from_int(3), n: 1, alpha: Q::from_int(2) },
    ]), seed in 0u64..1000) {
        let e = c.build(Some(14)).unwrap();
        let moved = e.change_basis(&random_unit_matrix(2, 14, seed)).unwrap();
        prop_assert_eq!(classify_rank2(&e).unwrap(), classify_rank2(&moved).unwrap());
    }

    #[test]
    fn jet_witnesses_are_sound(c in corpus_member(), seed in 0u64..1000, order in 1usize..5) {
        let e = c.build(Some(12)).unwrap();
        let moved = e.change_basis(&random_unit_matrix(e.rank(), 12, seed)).unwrap();
        let JetIsoResult::Iso(p) = jet_isomorphism(&e, &moved, order, seed).unwrap() else {
            return Err(TestCaseError::fail("base change not recognised"));
        };
        prop_assert!(is_intertwiner(&e, &moved, &p, order));
        prop_assert!(!p.coefficient(0).det().is_zero());
        for lower in 1..order {
            let restricted = p.truncate(lower);
            prop_assert!(is_intertwiner(&e, &moved, &restricted, lower));
        }
    }

    #[test]
    fn module_files_round_trip(c in corpus_member(), seed in 0u64..1000) {
        let e = c.build(None).unwrap();
        let n = e.known_order();
        let moved = e.change_basis(&random_unit_matrix(e.rank(), n, seed)).unwrap();
        let text = format_module(&moved);
        let back = parse_module_file(&text).unwrap().build(None).unwrap();
        prop_assert_eq!(&back, &moved);
        prop_assert_eq!(format_module(&back), text);
    }
}

#[test]
fn unit_vectors_span_ambient() {
    let gens: Vec<SeriesVec> = (0..3).map(|i| unit_vec(3, i, 6)).collect();
    let l = Lattice::echelonize(&gens, 3, 0, 6).unwrap();
    assert!(l.equals(&Lattice::ambient(3, 0, 6).unwrap()).unwrap());
}
