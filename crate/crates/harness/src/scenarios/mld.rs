use adjlab_core::ideal::{CyclicLattice, Ideal, MonomialIdeal, QIdeal};
use adjlab_core::lp::{q, Q};
use adjlab_core::mld::{
    inversion_check, mld_jet_estimate, mld_monomial, mld_toric_quotient, verify_negative_direction,
    MldResult, MldValue, MonomialPair,
};
use adjlab_core::poly::{Field, MonomialOrder, PolyRing};
use adjlab_core::singularity::AffineSubscheme;
use num_rational::BigRational;

use super::Ctx;
use crate::error::HarnessError;
use crate::report::{int, text, Recorder, Status};

fn frac(a: i64, b: i64) -> Q {
    BigRational::new(a.into(), b.into())
}

const COEFFICIENTS: [(i64, i64); 4] = [(1, 3), (1, 2), (1, 1), (3, 2)];
const BOX: i64 = 8;

/// `sum w - sum_j a_j min_{g in G_j} <g, w>`, evaluated directly.
fn objective(boundary: &[(Vec<Vec<u32>>, Q)], w: &[Q]) -> Q {
    let mut v: Q = w.iter().sum();
    for (gens, a) in boundary {
        let ord = gens
            .iter()
            .map(|g| g.iter().zip(w).map(|(&e, x)| x * q(e as i64)).sum::<Q>())
            .min()
            .expect("non-empty generator list");
        v -= a * ord;
    }
    v
}

/// Minimum of the objective over integer weights in `[1, BOX]^n`.
fn box_minimum(n: usize, boundary: &[(Vec<Vec<u32>>, Q)]) -> Q {
    let mut w = vec![1i64; n];
    let mut best: Option<Q> = None;
    loop {
        let wq: Vec<Q> = w.iter().map(|&x| q(x)).collect();
        let v = objective(boundary, &wq);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
        let Some(i) = w.iter().position(|&x| x < BOX) else { break };
        for x in w.iter_mut().take(i) {
            *x = 1;
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
            .flat_map(|v: Vec<u32>| {
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

fn pair_of(n: usize, boundary: &[(Vec<Vec<u32>>, Q)]) -> Result<MonomialPair, HarnessError> {
    let b = boundary
        .iter()
        .map(|(g, a)| (MonomialIdeal::new(n, g.clone()), a.clone()))
        .collect();
    Ok(MonomialPair::affine(n, b)?)
}

/// A `-inf` result is accepted only with a direction and a lattice point
/// whose values are negative under the direct objective as well.
fn direction_verified(pair: &MonomialPair, boundary: &[(Vec<Vec<u32>>, Q)], r: &MldResult) -> bool {
    match (&r.direction, &r.negative_point) {
        (Some(d), Some(p)) => {
            verify_negative_direction(pair, d, p)
                && objective(boundary, d) < q(0)
                && objective(boundary, p) < q(0)
                && p.iter().all(|x| x.is_integer() && *x >= q(1))
        }
        _ => false,
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    discrepancies: Vec<String>,
    neg_inf: usize,
    unverified: Vec<String>,
}

fn describe(boundary: &[(Vec<Vec<u32>>, Q)]) -> String {
    let parts: Vec<String> = boundary.iter().map(|(g, a)| format!("{g:?}^{a}")).collect();
    parts.join(" ")
}

/// `x^u` with coefficient `a`: the objective is linear with coefficients
/// `1 - a u_i`, so it is unbounded below iff one is negative.
fn single_monomials(t: &mut Tally) -> Result<(), HarnessError> {
    for n in 1..=3usize {
        for u in exponent_vectors(n, 3) {
            for (num, den) in COEFFICIENTS {
                let a = frac(num, den);
                let boundary = vec![(vec![u.clone()], a.clone())];
                let pair = pair_of(n, &boundary)?;
                let r = mld_monomial(&pair)?;
                let coeffs: Vec<Q> = u.iter().map(|&e| q(1) - &a * q(e as i64)).collect();
                let linear = if coeffs.iter().any(|c| *c < q(0)) {
                    MldValue::NegInfinity
                } else {
                    MldValue::Finite(coeffs.iter().sum())
                };
                let bm = box_minimum(n, &boundary);
                let ok = r.value == linear
                    && match &r.value {
                        MldValue::Finite(v) => *v == bm,
                        MldValue::NegInfinity => bm < q(0),
                    };
                t.cases += 1;
                if !ok {
                    t.discrepancies.push(describe(&boundary));
                }
                if r.value == MldValue::NegInfinity {
                    t.neg_inf += 1;
                    if !direction_verified(&pair, &boundary, &r) {
                        t.unverified.push(describe(&boundary));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Two generators: the box never beats the exact value, and matches it
/// when the witness lies in the box.
fn two_generators(t: &mut Tally) -> Result<(), HarnessError> {
    for n in 2..=3usize {
        let vs = exponent_vectors(n, 2);
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                for a in [frac(1, 2), q(1)] {
                    let boundary = vec![(vec![vs[i].clone(), vs[j].clone()], a)];
                    let pair = pair_of(n, &boundary)?;
                    let r = mld_monomial(&pair)?;
                    t.cases += 1;
                    match &r.value {
                        MldValue::Finite(v) => {
                            let bm = box_minimum(n, &boundary);
                            let in_box = r.witness.as_ref().is_some_and(|w| {
                                w.iter().all(|x| x.is_integer() && *x >= q(1) && *x <= q(BOX))
                            });
                            let witness_ok = r.witness.as_ref().is_some_and(|w| objective(&boundary, w) == *v);
                            if bm < *v || (in_box && bm != *v) || !witness_ok {
                                t.discrepancies.push(describe(&boundary));
                            }
                        }
                        MldValue::NegInfinity => {
                            t.neg_inf += 1;
                            if !direction_verified(&pair, &boundary, &r) {
                                t.unverified.push(describe(&boundary));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn mld_corpus(_ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    for n in 0..=6usize {
        rec.check(format!("empty/N{n}"), "mld.lc", |w| {
            let r = mld_monomial(&MonomialPair::affine(n, vec![])?)?;
            w.insert("value".into(), text(&r.value));
            Ok(Status::from_bool(r.value == MldValue::Finite(q(n as i64))))
        })?;
    }
    rec.check("normal-crossing/xy", "mld.lc", |w| {
        let boundary = vec![(vec![vec![1, 1]], q(1))];
        let r = mld_monomial(&pair_of(2, &boundary)?)?;
        w.insert("value".into(), text(&r.value));
        w.insert("box_minimum".into(), text(box_minimum(2, &boundary)));
        Ok(Status::from_bool(r.value == MldValue::Finite(q(0)) && r.log_canonical()))
    })?;

    let mut single = Tally::default();
    let mut multi = Tally::default();
    rec.check("brute-force/single-monomial", "mld.lc", |w| {
        single_monomials(&mut single)?;
        w.insert("cases".into(), int(single.cases));
        w.insert("discrepancies".into(), int(single.discrepancies.len()));
        if let Some(first) = single.discrepancies.first() {
            w.insert("first_discrepancy".into(), text(first));
        }
        Ok(Status::from_bool(single.discrepancies.is_empty() && single.cases > 200))
    })?;
    rec.check("brute-force/two-generators", "mld.lc", |w| {
        two_generators(&mut multi)?;
        w.insert("cases".into(), int(multi.cases));
        w.insert("discrepancies".into(), int(multi.discrepancies.len()));
        if let Some(first) = multi.discrepancies.first() {
            w.insert("first_discrepancy".into(), text(first));
        }
        Ok(Status::from_bool(multi.discrepancies.is_empty()))
    })?;
    rec.check("negative-directions", "mld.lc", |w| {
        let total = single.neg_inf + multi.neg_inf;
        let bad = single.unverified.len() + multi.unverified.len();
        w.insert("neg_inf_results".into(), int(total));
        w.insert("unverified".into(), int(bad));
        Ok(Status::from_bool(bad == 0 && total > 0))
    })?;

    rec.check("quotient/1-3(1,1,1)", "mld.lc", |w| {
        let l = CyclicLattice::new(3, vec![1, 1, 1])?;
        let r = mld_toric_quotient(&MonomialPair::quotient(l, vec![])?)?;
        // fundamental box points k(1,1,1)/3 and the unit cube corner
        let best = [frac(1, 3), frac(2, 3), q(1)].iter().map(|x| x * q(3)).min().unwrap();
        w.insert("value".into(), text(&r.value));
        w.insert("lattice_search".into(), text(&best));
        Ok(Status::from_bool(r.value == MldValue::Finite(best)))
    })?;

    rec.check("scaling/monotone", "mld.lc", |w| {
        let lambdas = [frac(1, 2), q(1), frac(3, 2), q(2)];
        let mut checked = 0;
        let mut ok = true;
        for u in exponent_vectors(2, 2) {
            let pair = pair_of(2, &[(vec![u, vec![1, 1]], frac(1, 2))])?;
            let mut prev: Option<MldValue> = None;
            for l in &lambdas {
                let v = mld_monomial(&pair.scaled(l)?)?.value;
                ok &= prev.as_ref().is_none_or(|p| v <= *p);
                prev = Some(v);
                checked += 1;
            }
        }
        w.insert("checked".into(), int(checked));
        Ok(Status::from_bool(ok))
    })?;
    Ok(())
}

pub fn inversion_subspace(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => inversion(f, ctx, rec))
}

fn inversion<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let seeds = [ctx.params.seed + 1, ctx.params.seed + 2];
    for (d, c) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (3, 2)] {
        rec.check(format!("inversion/d{d}-c{c}"), "inversion", |w| {
            let n = d + c;
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let r = PolyRing::new(&names, field.clone(), MonomialOrder::GrevLex)?;
            let x = AffineSubscheme::new(ctx.ideal(Ideal::from_strs(&r, &names[..c])?))?;
            let rep = inversion_check(&x, 1, &seeds)?;
            w.insert("left".into(), text(&rep.left.value));
            w.insert("right".into(), text(&rep.right.value));
            let want = MldValue::Finite(q(d as i64));
            Ok(Status::from_bool(rep.pass && rep.left.value == want && rep.right.value == want))
        })?;
    }
    let r = PolyRing::new(&["x", "y"], field, MonomialOrder::GrevLex)?;
    for (id, gen, want) in [("inversion/diagonal-line", "x - y", 1), ("inversion/node-in-plane", "x^2 - y^2", 0)] {
        rec.check(id, "inversion", |w| {
            let x = AffineSubscheme::new(ctx.ideal(Ideal::from_strs(&r, &[gen])?))?;
            let rep = inversion_check(&x, 1, &seeds)?;
            w.insert("left".into(), text(&rep.left.value));
            w.insert("right".into(), text(&rep.right.value));
            Ok(Status::from_bool(rep.pass && rep.right.value == MldValue::Finite(q(want))))
        })?;
    }
    Ok(())
}

pub fn jet_estimate_cross(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => estimates(f, ctx, rec))
}

/// Highest jet level used by the estimator.
pub const LEVELS: usize = 6;

fn estimates<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let names = ["x", "y", "z"];
    for n in 1..=3usize {
        rec.check(format!("no-false-certificate/N{n}"), "jet.witness", |w| {
            let ring = PolyRing::new(&names[..n], field.clone(), MonomialOrder::GrevLex)?;
            let origin = ctx.ideal(Ideal::maximal_at_origin(&ring));
            let mut checked = 0;
            let mut false_certs = Vec::new();
            let mut matched = 0;
            for u in exponent_vectors(n, 3) {
                let mono = ring.monomial(u.clone());
                for (num, den) in COEFFICIENTS {
                    let a = frac(num, den);
                    let pair = pair_of(n, &[(vec![u.clone()], a.clone())])?;
                    let MldValue::Finite(v) = mld_monomial(&pair)?.value else { continue };
                    let qi = QIdeal::single(ctx.ideal(Ideal::new(&ring, vec![mono.clone()])?), a)?;
                    let e = mld_jet_estimate(&qi, &origin, LEVELS, &v)?;
                    let low = e.witnesses.iter().filter_map(|x| x.upper.as_ref()).any(|up| *up < v);
                    if e.certifies_below_probe || low || e.sound != Some(true) {
                        false_certs.push(format!("{mono} at {v}"));
                    }
                    if e.matched == Some(true) {
                        matched += 1;
                    }
                    checked += 1;
                }
            }
            w.insert("checked".into(), int(checked));
            w.insert("matched".into(), int(matched));
            w.insert("false_certificates".into(), int(false_certs.len()));
            if let Some(f) = false_certs.first() {
                w.insert("first_false_certificate".into(), text(f));
            }
            Ok(Status::from_bool(false_certs.is_empty() && checked > 0))
        })?;
    }
    rec.check("certificate/x-at-1-100", "jet.witness", |w| {
        let ring = PolyRing::new(&["x"], field.clone(), MonomialOrder::GrevLex)?;
        let qi = QIdeal::single(ctx.ideal(Ideal::from_strs(&ring, &["x"])?), q(1))?;
        let e = mld_jet_estimate(&qi, &ctx.ideal(Ideal::maximal_at_origin(&ring)), 1, &frac(1, 100))?;
        if let Some(u) = &e.best_upper {
            w.insert("best_upper".into(), text(u));
        }
        Ok(Status::from_bool(e.certifies_below_probe && e.best_upper == Some(q(0))))
    })?;
    Ok(())
}
