//! Randomized engine properties, run with a fixed seed so that failures
//! reproduce. Each suite returns the number of cases it ran.

use std::sync::Arc;

use adjlab_core::ideal::{monomial_order_of_ideal, Ideal, MonomialIdeal, MonomialValuation, OrderOfIdeal};
use adjlab_core::jets::{ideal_order, OrderValue, TruncatedArc};
use adjlab_core::poly::{
    substitute_series, Field, MonomialOrder, PolyRing, Polynomial, PrimeField, Rationals, TruncatedSeries,
};
use adjlab_core::singularity::AlternatingMatrix;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const P: u64 = 32003;

pub type Suite = (&'static str, u32, fn(u32) -> Result<u32, String>);

pub fn suites() -> Vec<Suite> {
    vec![
        ("ring axioms", 100, ring_axioms),
        ("series substitution is multiplicative", 100, series_substitution),
        ("Leibniz rule", 100, leibniz),
        ("colon, intersection and sum", 60, colon_intersection_sum),
        ("presentation independence", 60, presentation_independence),
        ("integral closure idempotent and monotone", 60, closure),
        ("monomial order is additive on products", 60, monomial_order_additive),
        ("krull dimension of monomial ideals", 60, krull_monomial),
        ("order additivity along arcs", 60, arc_order_additive),
        ("truncation functoriality", 60, truncation),
        ("pfaffian squared is the determinant", 40, pfaffian_square),
    ]
}

fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases, seed).run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(cases)
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn fail<E: std::fmt::Display>(e: E) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    vec((vec(0..=max_exp, nvars), -9i64..10), 0..=max_terms)
}

fn build<F: Field>(ring: &Arc<PolyRing<F>>, t: &Terms) -> Polynomial<F> {
    t.iter().fold(ring.zero(), |acc, (e, c)| {
        let m = ring.monomial(e.clone()).scale(&ring.field().from_i64(*c));
        &acc + &m
    })
}

fn q_ring() -> Arc<PolyRing<Rationals>> {
    PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::GrevLex).unwrap()
}

fn p_ring() -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(&["x", "y", "z"], PrimeField::new(P).unwrap(), MonomialOrder::GrevLex).unwrap()
}

pub fn ring_axioms(cases: u32) -> Result<u32, String> {
    let r = q_ring();
    run(cases, 1, (terms(3, 3, 5), terms(3, 3, 5), terms(3, 3, 5)), |(a, b, c)| {
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        check(&(&f + &g) + &h == &f + &(&g + &h), "addition is associative")?;
        check(&(&f * &g) * &h == &f * &(&g * &h), "multiplication is associative")?;
        check(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), "distributivity")?;
        check(&f * &g == &g * &f, "multiplication commutes")?;
        check(&f + &g == &g + &f, "addition commutes")?;
        check((&f - &f).is_zero(), "f - f = 0")
    })
}

fn series(prec: usize) -> impl Strategy<Value = Vec<i64>> {
    vec(-20i64..20, prec)
}

pub fn series_substitution(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    let field = *r.field();
    let prec = 6;
    let strat = (terms(3, 3, 4), terms(3, 3, 4), vec(series(prec + 2), 3));
    run(cases, 2, strat, |(a, b, imgs)| {
        let (f, g) = (build(&r, &a), build(&r, &b));
        let images: Vec<_> = imgs
            .iter()
            .map(|c| TruncatedSeries::from_i64s(field, c, prec + 2))
            .collect();
        let fg = substitute_series(&(&f * &g), &images, prec).map_err(fail)?;
        let sf = substitute_series(&f, &images, prec).map_err(fail)?;
        let sg = substitute_series(&g, &images, prec).map_err(fail)?;
        check(fg == sf.mul(&sg).truncate(prec), "substitution respects products")
    })
}

pub fn leibniz(cases: u32) -> Result<u32, String> {
    let r = q_ring();
    run(cases, 3, (terms(3, 4, 5), terms(3, 4, 5), 0usize..3), |(a, b, i)| {
        let (f, g) = (build(&r, &a), build(&r, &b));
        let d = |p: &Polynomial<Rationals>| p.partial_derivative(i).unwrap();
        check(d(&(&f * &g)) == &(&f * &d(&g)) + &(&g * &d(&f)), "d(fg) = f dg + g df")
    })
}

/// Small ideals: two or three generators of degree at most two.
fn small_ideal() -> impl Strategy<Value = Vec<Terms>> {
    vec(terms(3, 2, 3), 1..=3)
}

fn ideal_of<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[Terms]) -> Ideal<F> {
    Ideal::new(ring, gens.iter().map(|t| build(ring, t)).collect()).unwrap()
}

pub fn colon_intersection_sum(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    run(cases, 4, (small_ideal(), small_ideal(), terms(3, 2, 3)), |(a, b, extra)| {
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        let colon = i.quotient(&j).map_err(fail)?;
        check(i.contains_ideal(&colon.product(&j).map_err(fail)?).map_err(fail)?, "(I : J) J in I")?;
        let meet = i.intersection(&j).map_err(fail)?;
        check(i.contains_ideal(&meet).map_err(fail)?, "I ∩ J in I")?;
        check(j.contains_ideal(&meet).map_err(fail)?, "I ∩ J in J")?;
        let s = i.sum(&j).map_err(fail)?;
        for g in i.generators().iter().chain(j.generators()) {
            check(s.contains(g).map_err(fail)?, "I + J contains the generators")?;
        }
        let bigger = ideal_of(&r, &[a.clone(), b.clone(), vec![extra]].concat());
        check(bigger.contains_ideal(&s).map_err(fail)?, "I + J is the smallest")
    })
}

pub fn presentation_independence(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    let strat = (vec(terms(3, 2, 3), 2..=3), vec(terms(3, 1, 2), 3), 0usize..6);
    run(cases, 5, strat, |(gens, mults, rot)| {
        let g: Vec<_> = gens.iter().map(|t| build(&r, t)).collect();
        // g_k + sum_{l > k} m_kl g_l is unimodular; then rotate
        let mut h: Vec<Polynomial<PrimeField>> = Vec::new();
        for k in 0..g.len() {
            let mut p = g[k].clone();
            for l in k + 1..g.len() {
                p = &p + &(&build(&r, &mults[(k + l) % mults.len()]) * &g[l]);
            }
            h.push(p);
        }
        let n = h.len();
        h.rotate_left(rot % n);
        let a = Ideal::new(&r, g).map_err(fail)?;
        let b = Ideal::new(&r, h).map_err(fail)?;
        check(a.equals(&b).map_err(fail)?, "same ideal")
    })
}

fn monomial_gens(nvars: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    vec(vec(0u32..=4, nvars), 1..=4)
}

pub fn closure(cases: u32) -> Result<u32, String> {
    run(cases, 6, (monomial_gens(3), vec(0u32..=4, 3)), |(gens, extra)| {
        let i = MonomialIdeal::new(3, gens.clone());
        let j = MonomialIdeal::new(3, [gens, vec![extra]].concat());
        let ci = i.integral_closure().map_err(fail)?;
        let cj = j.integral_closure().map_err(fail)?;
        check(ci.integral_closure().map_err(fail)? == ci, "closure is idempotent")?;
        check(ci.contains_ideal(&i), "I in closure")?;
        check(cj.contains_ideal(&ci), "closure is monotone")
    })
}

pub fn monomial_order_additive(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    run(cases, 7, (small_ideal(), small_ideal(), vec(1u64..=5, 3)), |(a, b, w)| {
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        if i.is_zero_ideal() || j.is_zero_ideal() {
            return Ok(());
        }
        let v = MonomialValuation::new(w).map_err(fail)?;
        let ij = i.product(&j).map_err(fail)?;
        let o = |x: &Ideal<PrimeField>| monomial_order_of_ideal(&v, x).map_err(fail);
        match (o(&i)?, o(&j)?, o(&ij)?) {
            (OrderOfIdeal::Finite(x), OrderOfIdeal::Finite(y), OrderOfIdeal::Finite(z)) => {
                check(z == x + y, "ord(IJ) = ord I + ord J")
            }
            _ => check(false, "nonzero ideals have finite order"),
        }
    })
}

/// `n` minus the smallest set of variables meeting every support.
fn brute_krull(n: usize, gens: &[Vec<u32>]) -> Option<usize> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let hits = gens.iter().all(|g| g.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) != 0));
        if hits {
            best = best.min(mask.count_ones() as usize);
        }
    }
    Some(n - best)
}

pub fn krull_monomial(cases: u32) -> Result<u32, String> {
    let names = ["a", "b", "c", "d"];
    let r = PolyRing::new(&names, PrimeField::new(P).unwrap(), MonomialOrder::GrevLex).unwrap();
    run(cases, 8, vec(vec(0u32..=2, 4), 1..=4), |gens| {
        let m = MonomialIdeal::new(4, gens.clone());
        let want = brute_krull(4, &gens);
        check(m.krull_dimension() == want, "monomial dimension")?;
        let i = m.to_ideal(&r).map_err(fail)?;
        check(i.krull_dimension().map_err(fail)? == want, "Gröbner dimension")
    })
}

fn arc_strategy(prec: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    // small constant terms keep the orders low and exact
    vec((0i64..2, vec(-5i64..6, prec - 1)), 3).prop_map(|v| {
        v.into_iter()
            .map(|(c, rest)| std::iter::once(c).chain(rest).collect())
            .collect()
    })
}

pub fn arc_order_additive(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    let prec = 14;
    run(cases, 9, (small_ideal(), small_ideal(), arc_strategy(prec)), |(a, b, coords)| {
        let i = ideal_of(&r, &a);
        let j = ideal_of(&r, &b);
        let arc = TruncatedArc::from_i64s(*r.field(), &coords, prec).map_err(fail)?;
        let ij = i.product(&j).map_err(fail)?;
        let oi = ideal_order(&i, &arc).map_err(fail)?;
        let oj = ideal_order(&j, &arc).map_err(fail)?;
        let oij = ideal_order(&ij, &arc).map_err(fail)?;
        match (oi.exact(), oj.exact(), oij.exact()) {
            (Some(x), Some(y), Some(z)) => check(*z == x + y, "ord(IJ) = ord I + ord J"),
            (Some(x), Some(y), None) => check(x + y >= num_rational::BigRational::from_integer((prec as i64).into()), "product order beyond precision"),
            _ => check(matches!(oij, OrderValue::AtLeast(_)), "unknown factor order"),
        }
    })
}

pub fn truncation(cases: u32) -> Result<u32, String> {
    let r = p_ring();
    let prec = 10;
    run(cases, 10, (arc_strategy(prec), 0usize..prec, 0usize..prec, terms(3, 3, 4)), |(coords, a, b, t)| {
        let (n, m) = (a.min(b), a.max(b));
        let arc = TruncatedArc::from_i64s(*r.field(), &coords, prec).map_err(fail)?;
        let am = arc.truncate(m).map_err(fail)?;
        check(am.truncate(n).map_err(fail)? == arc.truncate(n).map_err(fail)?, "truncations compose")?;
        let f = build(&r, &t);
        let lhs = am.eval(&f).map_err(fail)?.truncate(n + 1);
        let rhs = arc.truncate(n).map_err(fail)?.eval(&f).map_err(fail)?;
        check(lhs == rhs, "evaluation commutes with truncation")
    })
}

pub fn pfaffian_square(cases: u32) -> Result<u32, String> {
    let mats: Vec<_> = (2..=6)
        .map(|n| AlternatingMatrix::generic(n, Rationals, MonomialOrder::GrevLex).unwrap())
        .collect();
    run(cases, 11, (0usize..5, vec(-6i64..7, 15)), |(k, pt)| {
        let m = &mats[k];
        let nv = m.ring().nvars();
        let point: Vec<_> = pt[..nv].iter().map(|&v| Rationals.from_i64(v)).collect();
        let s = m.specialize(&point).map_err(fail)?;
        let pf = s.pfaffian();
        check(&pf * &pf == s.determinant(), "pf^2 = det")
    })
}
