use adjlab_core::ideal::{CyclicLattice, Ideal, MonomialIdeal, QIdeal};
use adjlab_core::mld::{
    inversion_check, log_discrepancy_at_weight, mld_jet_estimate, mld_monomial, mld_toric_quotient,
    verify_negative_direction, MldValue, MonomialPair,
};
use adjlab_core::poly::{MonomialOrder, PolyRing, Rationals};
use adjlab_core::singularity::AffineSubscheme;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn frac(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

/// `min f` over integer weights in `[1, bound]^n`, by enumeration.
fn box_minimum(pair: &MonomialPair, bound: i64) -> (Q, Vec<Q>) {
    let n = pair.arity();
    let mut w = vec![1i64; n];
    let mut best: Option<(Q, Vec<Q>)> = None;
    loop {
        let wq: Vec<Q> = w.iter().map(|&x| q(x)).collect();
        let v = pair.objective(&wq);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, wq));
        }
        let mut i = 0;
        while i < n && w[i] == bound {
            w[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        w[i] += 1;
    }
    best.unwrap()
}

fn exponent_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |e| {
                    let mut v = v.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&e| e > 0));
    out
}

#[test]
fn empty_boundary_gives_dimension() {
    for n in 0..=6 {
        let r = mld_monomial(&MonomialPair::affine(n, vec![]).unwrap()).unwrap();
        assert_eq!(r.value, MldValue::Finite(q(n as i64)));
    }
}

#[test]
fn normal_crossing_pair() {
    let pair = MonomialPair::affine(2, vec![(MonomialIdeal::new(2, vec![vec![1, 1]]), q(1))]).unwrap();
    let (b, _) = box_minimum(&pair, 6);
    assert_eq!(b, q(0));
    assert_eq!(mld_monomial(&pair).unwrap().value, MldValue::Finite(q(0)));
}

#[test]
fn subspace_powers() {
    for (d, c) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (3, 2)] {
        let n = d + c;
        let gens = (0..c)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let pair = MonomialPair::affine(n, vec![(MonomialIdeal::new(n, gens), q(c as i64))]).unwrap();
        let r = mld_monomial(&pair).unwrap();
        assert_eq!(r.value, MldValue::Finite(q(d as i64)));
        assert_eq!(r.witness.as_deref(), Some(&vec![q(1); n][..]));
        assert_eq!(box_minimum(&pair, 3).0, q(d as i64));
    }
}

/// Single monomial `x^u` with coefficient `a`: `f(w) = sum (1 - a u_i) w_i`
/// is linear, so the minimum on `w >= 1` is `sum (1 - a u_i)` unless a
/// coefficient is negative, in which case it is unbounded below.
#[test]
fn single_monomial_brute_force() {
    let mut discrepancies = 0;
    let mut cases = 0;
    for n in 1..=3usize {
        for u in exponent_vectors(n, 3) {
            for a in [frac(1, 3), frac(1, 2), q(1), frac(3, 2)] {
                let pair = MonomialPair::affine(n, vec![(MonomialIdeal::new(n, vec![u.clone()]), a.clone())]).unwrap();
                let r = mld_monomial(&pair).unwrap();
                let coeffs: Vec<Q> = u.iter().map(|&e| q(1) - &a * q(e as i64)).collect();
                let want = if coeffs.iter().any(|c| c.is_negative()) {
                    MldValue::NegInfinity
                } else {
                    MldValue::Finite(coeffs.iter().sum())
                };
                let (bm, _) = box_minimum(&pair, 8);
                let ok = r.value == want
                    && match &r.value {
                        MldValue::Finite(v) => *v == bm,
                        MldValue::NegInfinity => verify_negative_direction(
                            &pair,
                            r.direction.as_ref().unwrap(),
                            r.negative_point.as_ref().unwrap(),
                        ),
                    };
                cases += 1;
                if !ok {
                    discrepancies += 1;
                }
            }
        }
    }
    assert!(cases > 200);
    assert_eq!(discrepancies, 0);
}

/// Two- and three-generator boundaries: the box minimum never beats the
/// exact value, and equals it whenever the witness lies in the box.
#[test]
fn multi_generator_brute_force() {
    let vs = exponent_vectors(2, 3);
    let mut finite = 0;
    for (i, u) in vs.iter().enumerate() {
        for v in vs.iter().skip(i + 1) {
            for a in [frac(1, 2), frac(2, 3), q(1)] {
                let pair =
                    MonomialPair::affine(2, vec![(MonomialIdeal::new(2, vec![u.clone(), v.clone()]), a.clone())]).unwrap();
                let r = mld_monomial(&pair).unwrap();
                let (bm, _) = box_minimum(&pair, 8);
                match &r.value {
                    MldValue::Finite(val) => {
                        finite += 1;
                        let w = r.witness.as_ref().unwrap();
                        assert_eq!(&log_discrepancy_at_weight(w, &pair).unwrap(), val);
                        assert!(*val <= bm, "{u:?} {v:?} {a}");
                        if w.iter().all(|x| *x <= q(8)) {
                            assert_eq!(*val, bm, "{u:?} {v:?} {a}");
                        }
                    }
                    MldValue::NegInfinity => assert!(verify_negative_direction(
                        &pair,
                        r.direction.as_ref().unwrap(),
                        r.negative_point.as_ref().unwrap()
                    )),
                }
            }
        }
    }
    assert!(finite > 20);
}

#[test]
fn three_variable_ideals_against_box() {
    let cases: &[&[&[u32]]] = &[
        &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]],
        &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 3]],
        &[&[1, 2, 0], &[0, 0, 2]],
        &[&[3, 0, 0], &[1, 1, 1]],
    ];
    for gens in cases {
        for a in [frac(1, 2), frac(3, 4), q(1)] {
            let m = MonomialIdeal::new(3, gens.iter().map(|g| g.to_vec()).collect());
            let pair = MonomialPair::affine(3, vec![(m, a)]).unwrap();
            let r = mld_monomial(&pair).unwrap();
            if let MldValue::Finite(v) = &r.value {
                let (bm, _) = box_minimum(&pair, 8);
                assert!(*v <= bm);
                if r.witness.as_ref().unwrap().iter().all(|x| *x <= q(8)) {
                    assert_eq!(*v, bm);
                }
            }
        }
    }
}

#[test]
fn cyclic_quotient_against_lattice_search() {
    let l = CyclicLattice::new(3, vec![1, 1, 1]).unwrap();
    let pair = MonomialPair::quotient(l.clone(), vec![]).unwrap();
    let r = mld_toric_quotient(&pair).unwrap();
    // the fundamental box of 1/3(1,1,1) holds (1,1,1)/3 and (2,2,2)/3
    let third = frac(1, 3);
    let candidates = [vec![third.clone(); 3], vec![frac(2, 3); 3], vec![q(1); 3]];
    let best = candidates.iter().map(|w| log_discrepancy_at_weight(w, &pair).unwrap()).min().unwrap();
    assert_eq!(best, q(1));
    assert_eq!(r.value, MldValue::Finite(q(1)));

    // D_X = m^5 with m generated by the cubic monomials
    let m5 = MonomialIdeal::all_of_degree(3, 15);
    let pair = MonomialPair::quotient(l.clone(), vec![(m5, q(1))]).unwrap();
    let w = vec![third.clone(); 3];
    assert_eq!(log_discrepancy_at_weight(&w, &pair).unwrap(), q(1) - q(5));
    let r = mld_toric_quotient(&pair).unwrap();
    assert_eq!(r.value, MldValue::NegInfinity);
    assert!(verify_negative_direction(&pair, r.direction.as_ref().unwrap(), r.negative_point.as_ref().unwrap()));

    // 1/5(1,2) with boundary x^5: enumerate z + k(1,2)/5, z in [0,6]^2
    let l = CyclicLattice::new(5, vec![1, 2]).unwrap();
    let pair = MonomialPair::quotient(l, vec![(MonomialIdeal::new(2, vec![vec![5, 0]]), frac(1, 10))]).unwrap();
    let mut best: Option<Q> = None;
    for k in 0..5i64 {
        for z0 in 0..=6i64 {
            for z1 in 0..=6i64 {
                let w = vec![frac((k % 5) + 5 * z0, 5), frac((2 * k) % 5 + 5 * z1, 5)];
                if let Ok(v) = log_discrepancy_at_weight(&w, &pair) {
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
        }
    }
    assert_eq!(mld_toric_quotient(&pair).unwrap().value, MldValue::Finite(best.unwrap()));
}

#[test]
fn scaling_is_monotone() {
    let m = MonomialIdeal::new(3, vec![vec![2, 0, 0], vec![0, 2, 1], vec![1, 1, 1]]);
    let pair = MonomialPair::affine(3, vec![(m, q(2))]).unwrap();
    let mut prev: Option<MldValue> = None;
    for k in 0..=8 {
        let v = mld_monomial(&pair.scaled(&frac(k, 8)).unwrap()).unwrap().value;
        if let Some(p) = prev {
            assert!(v <= p);
        }
        prev = Some(v);
    }
}

#[test]
fn inversion_instances() {
    for (d, c) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (3, 2)] {
        let n = d + c;
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let r = PolyRing::new(&names, Rationals, MonomialOrder::GrevLex).unwrap();
        let gens: Vec<&str> = names[..c].iter().map(|s| s.as_str()).collect();
        let x = AffineSubscheme::new(Ideal::from_strs(&r, &gens).unwrap()).unwrap();
        let rep = inversion_check(&x, 1, &[1, 2]).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.left.value, MldValue::Finite(q(d as i64)));
        assert_eq!(rep.right.value, MldValue::Finite(q(d as i64)));
    }
    let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
    let x = AffineSubscheme::new(Ideal::from_strs(&r, &["x - y"]).unwrap()).unwrap();
    let rep = inversion_check(&x, 1, &[1, 2]).unwrap();
    assert!(rep.pass);
    assert_eq!(rep.right.value, MldValue::Finite(q(1)));

    let node = AffineSubscheme::new(Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap()).unwrap();
    let rep = inversion_check(&node, 1, &[1, 2]).unwrap();
    assert!(rep.pass && rep.defect_trivial);
    assert_eq!(rep.left.value, MldValue::Finite(q(0)));
    assert_eq!(rep.right.value, MldValue::Finite(q(0)));

    let cusp = AffineSubscheme::new(Ideal::from_strs(&r, &["y^2 - x^3"]).unwrap()).unwrap();
    assert!(inversion_check(&cusp, 1, &[1]).is_err());
}

#[test]
fn negative_infimum_in_dimension_one() {
    let pair = MonomialPair::affine(1, vec![(MonomialIdeal::new(1, vec![vec![1]]), q(2))]).unwrap();
    assert_eq!(mld_monomial(&pair).unwrap().value, MldValue::NegInfinity);
    let pair = MonomialPair::affine(1, vec![(MonomialIdeal::new(1, vec![vec![1]]), q(1))]).unwrap();
    assert_eq!(mld_monomial(&pair).unwrap().value, MldValue::Finite(Q::zero()));
}

#[test]
fn estimator_examples() {
    let r = PolyRing::new(&["x"], Rationals, MonomialOrder::GrevLex).unwrap();
    let qx = QIdeal::single(Ideal::from_strs(&r, &["x"]).unwrap(), q(1)).unwrap();
    let e = mld_jet_estimate(&qx, &Ideal::from_strs(&r, &["x"]).unwrap(), 1, &frac(1, 100)).unwrap();
    assert_eq!(e.best_upper, Some(q(0)));
    assert_eq!(e.oracle, Some(MldValue::Finite(q(0))));
    assert!(e.certifies_below_probe);
}

fn monomial_string(names: &[&str], u: &[u32]) -> String {
    let parts: Vec<String> = u
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| format!("{v}^{e}"))
        .collect();
    parts.join("*")
}

/// No certificate `mld < a` with `a <= oracle`, over the single-monomial
/// corpus at levels up to 6.
#[test]
fn jet_estimator_never_certifies_falsely() {
    use adjlab_core::poly::PrimeField;
    let names = ["x", "y", "z"];
    let mut checked = 0;
    for n in 1..=3usize {
        let ring = PolyRing::new(&names[..n], PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
        let origin = Ideal::maximal_at_origin(&ring);
        for u in exponent_vectors(n, 3) {
            let mono = monomial_string(&names, &u);
            for a in [frac(1, 3), frac(1, 2), q(1), frac(3, 2)] {
                let qi = QIdeal::single(Ideal::from_strs(&ring, &[mono.as_str()]).unwrap(), a.clone()).unwrap();
                let pair = MonomialPair::affine(n, vec![(MonomialIdeal::new(n, vec![u.clone()]), a)]).unwrap();
                let oracle = mld_monomial(&pair).unwrap().value;
                let MldValue::Finite(v) = &oracle else { continue };
                let e = mld_jet_estimate(&qi, &origin, 6, v).unwrap();
                assert_eq!(e.oracle.as_ref(), Some(&oracle));
                assert_eq!(e.sound, Some(true), "{mono}");
                assert!(!e.certifies_below_probe, "{mono}");
                for w in &e.witnesses {
                    if let Some(up) = &w.upper {
                        assert!(up >= v, "{mono} level {}", w.level);
                    }
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}
