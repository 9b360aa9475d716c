use adjlab_core::ideal::{Ideal, QIdeal};
use adjlab_core::jets::{
    contact_locus_dim, elementary_divisors_along_arc, fiber_dimension_check, ideal_order, image_stabilization_probe,
    jet_ideal, lci_arc_case, order_additivity_check, AdditivityStatus, JetError, JetIdeal, OrderValue, TruncatedArc,
};
use adjlab_core::poly::{MonomialOrder, PolyRing, Polynomial, Rationals};
use adjlab_core::singularity::{jacobian_ideal, AffineSubscheme, LciSlice};
use num_rational::BigRational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn node() -> AffineSubscheme<Rationals> {
    let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
    AffineSubscheme::new(Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap()).unwrap()
}

/// Solutions of the lifting equations of the node over `(t, t)`: with
/// `x = t + sum a_k t^k`, `y = t + sum b_k t^k` for `n < k <= m`, the
/// coefficient of `t^j` in `x^2 - y^2` is `2(a_{j-1} - b_{j-1})` plus terms
/// in lower unknowns, so each of `j = n+2..=m` fixes one `b`; `a_{n+1..m}`
/// and `b_m` stay free: `(m - n) + 1` parameters.
fn node_fiber_oracle(n: usize, m: usize) -> usize {
    let unknowns = 2 * (m - n);
    let equations = m - (n + 1);
    unknowns - equations
}

#[test]
fn node_fibers_match_hand_count() {
    let y = node();
    let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 16).unwrap();
    for (n, m) in [(2, 4), (3, 5)] {
        let rep = fiber_dimension_check(&y, &arc, n, m).unwrap();
        assert_eq!(rep.expected, 3);
        assert_eq!(node_fiber_oracle(n, m), 3);
        assert_eq!(rep.measured, Some(3));
        assert!(rep.pass);
    }
    assert!(matches!(fiber_dimension_check(&y, &arc, 0, 1), Err(JetError::Hypothesis { n: 0, m: 1, e: 1 })));
}

#[test]
fn seeded_lci_fibers() {
    let mut checked = 0;
    for seed in 0..12u64 {
        let case = lci_arc_case(Rationals, seed, 24).unwrap();
        let divs = elementary_divisors_along_arc(&case.y, &case.arc).unwrap();
        let e: usize = divs.iter().sum();
        let n = e + (seed as usize % 2);
        let m = n + e + (seed as usize % 3);
        let rep = fiber_dimension_check(&case.y, &case.arc, n, m).unwrap();
        assert!(rep.pass, "{} seed {seed}: {rep:?}", case.name);
        assert_eq!(rep.expected, (m - n) * case.y.dim() + e);
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn divisor_sum_is_jacobian_order() {
    for seed in 0..12u64 {
        let case = lci_arc_case(Rationals, seed, 20).unwrap();
        let divs = elementary_divisors_along_arc(&case.y, &case.arc).unwrap();
        let jac = jacobian_ideal(&case.y).unwrap();
        let ord = ideal_order(&jac, &case.arc).unwrap();
        assert_eq!(ord, OrderValue::Exact(q(divs.iter().sum::<usize>() as i64)), "seed {seed}");
    }
}

#[test]
fn jet_equations_extend_by_level() {
    let r = PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::GrevLex).unwrap();
    let x = AffineSubscheme::new(Ideal::from_strs(&r, &["x*y - z^2", "x^3 + y*z"]).unwrap()).unwrap();
    let low = jet_ideal(&x, 2).unwrap();
    let high = jet_ideal(&x, 4).unwrap();
    let names = high.ring().var_names();
    let map: Vec<usize> = low
        .ring()
        .var_names()
        .iter()
        .map(|v| names.iter().position(|w| w == v).unwrap())
        .collect();
    let lifted: Vec<Polynomial<Rationals>> = low
        .ideal()
        .generators()
        .iter()
        .map(|g| g.map_vars(high.ring(), &map))
        .collect();
    assert_eq!(&high.ideal().generators()[..lifted.len()], &lifted[..]);
}

#[test]
fn node_examples() {
    let y = node();
    let r = y.ideal().ring().clone();
    let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 6).unwrap();
    assert_eq!(ideal_order(&jacobian_ideal(&y).unwrap(), &arc).unwrap(), OrderValue::Exact(q(1)));

    let xy = Ideal::from_strs(&r, &["x*y"]).unwrap();
    let c = contact_locus_dim(&xy, 2, 2, &Ideal::maximal_at_origin(&r)).unwrap();
    assert_eq!(c.at_least, Some(4));

    let probe = image_stabilization_probe(&y, 1, 1..=4).unwrap();
    let j1 = jet_ideal(&y, 1).unwrap();
    let last = &probe.images.last().unwrap().1;
    assert!(last.contains_ideal(j1.ideal()).unwrap());
    assert!(!j1.ideal().contains_ideal(last).unwrap());

    let xy_scheme = AffineSubscheme::new(xy).unwrap();
    let probe = image_stabilization_probe(&xy_scheme, 0, 0..=3).unwrap();
    for (_, img) in &probe.images {
        let j0 = JetIdeal::of_ideal(xy_scheme.ideal(), 0).unwrap();
        assert!(img.equals(j0.ideal()).unwrap());
    }

    let line = AffineSubscheme::new(Ideal::from_strs(&r, &["x - y"]).unwrap()).unwrap();
    let slice = LciSlice::from_generators(&line, vec![r.parse("x^2 - y^2").unwrap()]).unwrap();
    let rep = order_additivity_check(&line, &slice, &arc, 1).unwrap();
    assert_eq!((rep.lhs, rep.jhat, rep.divisorial), (OrderValue::Exact(q(1)), OrderValue::Exact(q(0)), OrderValue::Exact(q(1))));
    assert_eq!(rep.status, AdditivityStatus::Pass);
}

/// Cutting a monomial contact locus `S = {ord x_i >= k_i}` with the jet
/// equations of `Y` costs at most `c (m + 1 - p)` dimensions, where `p` is
/// the order every equation already has on `S`.
#[test]
fn hyperplane_cut_bound() {
    let r = PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::GrevLex).unwrap();
    let cases: &[(&[&str], [usize; 3])] = &[
        (&["x*y - z^2"], [1, 1, 1]),
        (&["x*y - z^2"], [2, 1, 1]),
        (&["x^2 - y^3", "z - x*y"], [1, 1, 0]),
        (&["x^3 + y^3 + z^3"], [1, 2, 1]),
        (&["x*z - y^2", "y*z - x^2"], [1, 1, 1]),
    ];
    for &(eqs, k) in cases {
        let y = Ideal::from_strs(&r, eqs).unwrap();
        let c = eqs.len();
        for m in 2..=4usize {
            let jy = JetIdeal::of_ideal(&y, m).unwrap();
            let contact: Vec<Polynomial<Rationals>> = (0..3)
                .flat_map(|i| (0..k[i].min(m + 1)).map(move |j| (i, j)))
                .map(|(i, j)| jy.ring().var(jy.var(i, j)))
                .collect();
            let s = Ideal::new(jy.ring(), contact.clone()).unwrap();
            let dim_s = s.krull_dimension().unwrap().unwrap();
            let p = y
                .generators()
                .iter()
                .map(|g| {
                    g.terms()
                        .iter()
                        .map(|(mono, _)| mono.exps().iter().zip(k).map(|(&e, ki)| e as usize * ki).sum::<usize>())
                        .min()
                        .unwrap()
                })
                .min()
                .unwrap()
                .min(m + 1);
            let mut gens = contact;
            gens.extend(jy.ideal().generators().iter().cloned());
            let cut = Ideal::new(jy.ring(), gens).unwrap().krull_dimension().unwrap().unwrap();
            assert!(cut + c * (m + 1 - p) >= dim_s, "{eqs:?} {k:?} m={m}: {cut} vs {dim_s} - {c}*{}", m + 1 - p);
        }
    }
}

#[test]
fn orders_add_along_arcs() {
    let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
    let i = Ideal::from_strs(&r, &["x^2", "x*y - y^3"]).unwrap();
    let j = Ideal::from_strs(&r, &["y^2 + x", "x^3"]).unwrap();
    for seed in 0..6u64 {
        let case = lci_arc_case(Rationals, seed * 6, 16).unwrap();
        let arc = case.arc;
        let a = ideal_order(&i, &arc).unwrap();
        let b = ideal_order(&j, &arc).unwrap();
        let ab = ideal_order(&i.product(&j).unwrap(), &arc).unwrap();
        assert_eq!(a.add(&b), ab);
        let qi = QIdeal::new(vec![(i.clone(), BigRational::new(1.into(), 2.into())), (j.clone(), q(2))]).unwrap();
        let rep = qi.representative(2).unwrap();
        let lhs = adjlab_core::jets::arc_order(&qi, &arc).unwrap();
        assert_eq!(lhs, ideal_order(&rep, &arc).unwrap().scale(&BigRational::new(1.into(), 2.into())));
    }
}
