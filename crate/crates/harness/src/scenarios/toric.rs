use adjlab_core::ideal::Ideal;
use adjlab_core::lp::q;
use adjlab_core::mld::{format_vec, mld_toric_quotient, verify_negative_direction, MldValue, MonomialPair};
use adjlab_core::poly::Field;
use adjlab_core::singularity::toric::CubicCone;
use adjlab_core::singularity::{general_lci_slice, jrx_from_slice, AffineSubscheme, JrxStatus, SliceOptions};

use super::Ctx;
use crate::error::HarnessError;
use crate::report::{int, text, Recorder, Status, Witness};

pub fn cubic_cone_toric(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => toric_mode(f, ctx, rec))
}

pub fn cubic_cone_embedded(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => embedded(f, ctx, rec))
}

fn names() -> Vec<String> {
    (1..=3).map(|i| format!("x{i}")).collect()
}

fn skipped(w: &mut Witness, what: &str) -> Result<Status, HarnessError> {
    w.insert("skipped".into(), text(format!("{what} unavailable")));
    Ok(Status::Inconclusive)
}

fn toric_mode<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let cone = CubicCone::new(field)?.with_exec(ctx.exec);
    let names = names();
    let power = CubicCone::<F>::maximal_power;

    rec.check("canonical/j1-is-m2", "toric.canonical", |w| {
        let j1 = cone.canonical_jacobian();
        w.insert("j1".into(), text(j1.format(&names)));
        Ok(Status::from_bool(j1 == power(2)))
    })?;

    let mut sandwich = None;
    rec.check("sandwich/certificate", "toric.closure", |w| {
        let s = cone.jacobian_sandwich()?;
        w.insert("exhibited_minors".into(), int(s.lower_minors.len()));
        w.insert("entries_linear".into(), s.entries_linear.into());
        w.insert("lower_closure".into(), text(s.lower_closure.format(&names)));
        w.insert("upper_closure".into(), text(s.upper_closure.format(&names)));
        let ok = s.passed();
        sandwich = Some(s);
        Ok(Status::from_bool(ok))
    })?;

    rec.check("sandwich/closure-m7", "toric.closure", |w| {
        let Some(s) = &sandwich else { return skipped(w, "sandwich") };
        w.insert("closure".into(), text(s.upper_closure.format(&names)));
        Ok(Status::from_bool(s.passed() && s.upper_closure == power(7)))
    })?;

    rec.check("slice/candidate-closure-m2", "toric.canonical", |w| {
        let c = cone.slice_check(ctx.params.seed)?;
        w.insert("minors_checked".into(), int(c.minors_checked));
        w.insert("identity_holds".into(), c.identity_holds.into());
        w.insert("multiplies_back".into(), c.multiplies_back.into());
        w.insert("cofactor".into(), text(&c.cofactor));
        let closure = match &c.candidate {
            Some(m) => Some(m.integral_closure_with(ctx.exec)?),
            None => None,
        };
        if let Some(m) = &closure {
            w.insert("candidate_closure".into(), text(m.format(&names)));
        }
        Ok(Status::from_bool(
            c.identity_holds && c.multiplies_back && closure.is_some_and(|m| m == power(2)),
        ))
    })?;

    rec.check("defect/closure-m5", "toric.defect", |w| {
        let Some(s) = &sandwich else { return skipped(w, "sandwich") };
        if !s.passed() {
            return skipped(w, "certified closure of J'_X");
        }
        let d = cone.colon_defect(s)?;
        w.insert("colon".into(), text(d.colon.format(&names)));
        w.insert("closure".into(), text(d.closure.format(&names)));
        w.insert("reproduces".into(), d.reproduces.into());
        Ok(Status::from_bool(d.closure == power(5) && d.reproduces))
    })?;

    rec.check("mld/quotient-with-defect", "inversion", |w| {
        let pair = MonomialPair::quotient(CubicCone::<F>::lattice(), vec![(power(5), q(1))])?;
        let r = mld_toric_quotient(&pair)?;
        w.insert("value".into(), text(&r.value));
        let verified = match (&r.value, &r.direction, &r.negative_point) {
            (MldValue::NegInfinity, Some(d), Some(p)) => {
                w.insert("direction".into(), text(format_vec(d)));
                verify_negative_direction(&pair, d, p)
            }
            _ => false,
        };
        Ok(Status::from_bool(verified))
    })?;
    Ok(())
}

fn embedded<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let cone = CubicCone::new(field)?.with_exec(ctx.exec);
    let mut x = None;
    rec.check("embedded/dimension", "toric.closure", |w| {
        let s = AffineSubscheme::new(ctx.ideal(cone.ideal()?))?;
        w.insert("dim".into(), int(s.dim()));
        w.insert("codim".into(), int(s.codim()));
        let ok = s.dim() == 3 && s.codim() == cone.codim();
        x = Some(s);
        Ok(Status::from_bool(ok))
    })?;
    let mut y = None;
    rec.check("embedded/slice", "slice.identity", |w| {
        let Some(x) = &x else { return skipped(w, "X") };
        let s = general_lci_slice(x, ctx.params.seed, &SliceOptions::default())?;
        w.insert("attempts".into(), int(s.attempts() as usize));
        y = Some(s);
        Ok(Status::Pass)
    })?;
    rec.check("embedded/identity", "slice.identity", |w| {
        let (Some(x), Some(y)) = (&x, &y) else { return skipped(w, "slice") };
        let e = jrx_from_slice(x, y, 1)?;
        w.insert("status".into(), text(format!("{:?}", e.status)));
        // J_1X is m^2 in the torus coordinates; upstairs the candidate
        // must at least vanish at the vertex
        let vertex = Ideal::maximal_at_origin(cone.ambient());
        let at_vertex = vertex.contains_ideal(&e.candidate)?;
        w.insert("candidate_in_vertex_ideal".into(), at_vertex.into());
        Ok(Status::from_bool(e.status != JrxStatus::Failed && at_vertex))
    })?;
    Ok(())
}
