use adjlab_core::ideal::Ideal;
use adjlab_core::jets::{
    elementary_divisors_along_arc, fiber_dimension_check, ideal_order, lci_arc_case, order_additivity_check,
    AdditivityStatus, JetError, OrderValue, TruncatedArc,
};
use adjlab_core::lp::q;
use adjlab_core::mld::{inversion_check, MldValue};
use adjlab_core::poly::{Field, MonomialOrder, PolyRing};
use adjlab_core::singularity::{jacobian_ideal, jrx_from_slice, AffineSubscheme, JrxStatus, LciSlice};

use super::Ctx;
use crate::error::HarnessError;
use crate::report::{int, text, texts, Recorder, Status, Witness};

pub fn node_suite(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => node(f, ctx, rec))
}

pub fn lci_fibers(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => fibers(f, ctx, rec))
}

fn order_text(o: &OrderValue) -> String {
    match o {
        OrderValue::Exact(v) => v.to_string(),
        OrderValue::AtLeast(v) => format!(">={v}"),
    }
}

struct Node<F: Field> {
    line: AffineSubscheme<F>,
    curve: AffineSubscheme<F>,
    slice: LciSlice<F>,
    arc: TruncatedArc<F>,
}

fn node_data<F: Field>(field: F, ctx: &Ctx) -> Result<Node<F>, HarnessError> {
    let r = PolyRing::new(&["x", "y"], field.clone(), MonomialOrder::GrevLex)?;
    let line = AffineSubscheme::new(ctx.ideal(Ideal::from_strs(&r, &["x - y"])?))?;
    let curve = AffineSubscheme::new(ctx.ideal(Ideal::from_strs(&r, &["x^2 - y^2"])?))?;
    let slice = LciSlice::from_generators(&line, vec![r.parse("x^2 - y^2")?])?;
    let arc = TruncatedArc::from_i64s(field, &[vec![0, 1], vec![0, 1]], 16)?;
    Ok(Node { line, curve, slice, arc })
}

fn fiber_witness(w: &mut Witness, rep: &adjlab_core::jets::FiberReport) {
    w.insert("divisors".into(), texts(&rep.divisors));
    w.insert("e".into(), int(rep.e));
    w.insert("expected".into(), int(rep.expected));
    if let Some(d) = rep.measured {
        w.insert("measured".into(), int(d));
    }
    w.insert("triangular".into(), rep.triangular.into());
}

/// The node arc `(t, t)` checks shared by both jet scenarios.
fn node_fibers<F: Field>(data: &Node<F>, rec: &mut Recorder) -> Result<(), HarnessError> {
    for (n, m) in [(2usize, 4usize), (3, 5)] {
        rec.check(format!("fiber/node/n{n}-m{m}"), "fiber.dimension", |w| {
            let rep = fiber_dimension_check(&data.curve, &data.arc, n, m)?;
            fiber_witness(w, &rep);
            Ok(Status::from_bool(rep.pass && rep.e == 1 && rep.expected == 3))
        })?;
    }
    rec.check("fiber/node/refusal-n0-m1", "fiber.hypothesis", |w| {
        match fiber_dimension_check(&data.curve, &data.arc, 0, 1) {
            Err(JetError::Hypothesis { n, m, e }) => {
                w.insert("refused".into(), text(format!("n={n} m={m} e={e}")));
                Ok(Status::from_bool(e == 1))
            }
            Err(e) => Err(e.into()),
            Ok(rep) => {
                fiber_witness(w, &rep);
                Ok(Status::Fail)
            }
        }
    })?;
    Ok(())
}

fn node<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let data = node_data(field, ctx)?;

    rec.check("slice-identity/node", "slice.identity", |w| {
        let e = jrx_from_slice(&data.line, &data.slice, 1)?;
        w.insert("status".into(), text(format!("{:?}", e.status)));
        w.insert("jhat".into(), texts(e.candidate.canonical_strings()?));
        w.insert("divisorial".into(), texts(e.divisorial.canonical_strings()?));
        Ok(Status::from_bool(e.status == JrxStatus::Exact && e.candidate.is_unit()?))
    })?;

    node_fibers(&data, rec)?;

    rec.check("additivity/node", "order.additivity", |w| {
        let rep = order_additivity_check(&data.line, &data.slice, &data.arc, 1)?;
        w.insert("ord_jy".into(), text(order_text(&rep.lhs)));
        w.insert("ord_jx".into(), text(order_text(&rep.jhat)));
        w.insert("ord_dy".into(), text(order_text(&rep.divisorial)));
        let expected = (OrderValue::Exact(q(1)), OrderValue::Exact(q(0)), OrderValue::Exact(q(1)));
        Ok(Status::from_bool(
            rep.status == AdditivityStatus::Pass && (rep.lhs, rep.jhat, rep.divisorial) == expected,
        ))
    })?;

    for (id, x, want) in [("inversion/line", &data.line, 1), ("inversion/node", &data.curve, 0)] {
        rec.check(id, "inversion", |w| {
            let rep = inversion_check(x, 1, &[1, 2])?;
            w.insert("left".into(), text(&rep.left.value));
            w.insert("right".into(), text(&rep.right.value));
            Ok(Status::from_bool(rep.pass && rep.right.value == MldValue::Finite(q(want))))
        })?;
    }
    Ok(())
}

/// Seeded arcs on complete intersections; at least ten cases.
pub const LCI_CASES: u64 = 12;
const LCI_PRECISION: usize = 24;

fn fibers<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let data = node_data(field.clone(), ctx)?;
    node_fibers(&data, rec)?;
    let base = ctx.params.seed.wrapping_mul(LCI_CASES);
    for seed in base..base + LCI_CASES {
        let case = lci_arc_case(field.clone(), seed, LCI_PRECISION)?;
        let divs = elementary_divisors_along_arc(&case.y, &case.arc)?;
        let e: usize = divs.iter().sum();
        let n = e + (seed as usize % 2);
        let m = n + e + (seed as usize % 3);
        rec.check(format!("fiber/lci/seed{seed:03}"), "fiber.dimension", |w| {
            w.insert("family".into(), text(case.name));
            w.insert("n".into(), int(n));
            w.insert("m".into(), int(m));
            let rep = fiber_dimension_check(&case.y, &case.arc, n, m)?;
            fiber_witness(w, &rep);
            Ok(Status::from_bool(rep.pass && rep.expected == (m - n) * case.y.dim() + e))
        })?;
        rec.check(format!("divisors/lci/seed{seed:03}"), "fiber.divisors", |w| {
            let ord = ideal_order(&jacobian_ideal(&case.y)?, &case.arc)?;
            w.insert("divisors".into(), texts(&divs));
            w.insert("ord_jacobian".into(), text(order_text(&ord)));
            Ok(Status::from_bool(ord == OrderValue::Exact(q(e as i64))))
        })?;
    }
    Ok(())
}
