use adjlab_core::ideal::Ideal;
use adjlab_core::poly::{Field, MonomialOrder, PolyRing};
use adjlab_core::singularity::{
    general_lci_slice, jacobian_ideal, jrx_from_slice, AffineSubscheme, JrxStatus, LciSlice, SliceOptions,
};

use super::Ctx;
use crate::error::HarnessError;
use crate::report::{int, text, texts, Recorder, Status};

pub fn random_slices(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => run(f, ctx, rec))
}

/// Seeds per variety; at least five.
pub const SEEDS: u64 = 5;
const SUM_SLICES: u64 = 4;

/// Reduced varieties that are not local complete intersections at the origin.
fn corpus<F: Field>(field: F, ctx: &Ctx) -> Result<Vec<(&'static str, AffineSubscheme<F>)>, HarnessError> {
    let r3 = PolyRing::new(&["x", "y", "z"], field.clone(), MonomialOrder::GrevLex)?;
    let r4 = PolyRing::new(&["x", "y", "z", "w"], field, MonomialOrder::GrevLex)?;
    let data: [(&str, &_, &[&str]); 3] = [
        ("three-axes", &r3, &["x*y", "x*z", "y*z"]),
        ("cubic-cone", &r4, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]),
        ("two-planes", &r4, &["x*z", "x*w", "y*z", "y*w"]),
    ];
    data.iter()
        .map(|(name, r, gens)| Ok((*name, AffineSubscheme::new(ctx.ideal(Ideal::from_strs(r, gens)?))?)))
        .collect()
}

fn run<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let r = PolyRing::new(&["x", "y"], field.clone(), MonomialOrder::GrevLex)?;
    rec.check("identity/node", "slice.identity", |w| {
        let line = AffineSubscheme::new(ctx.ideal(Ideal::from_strs(&r, &["x - y"])?))?;
        let y = LciSlice::from_generators(&line, vec![r.parse("x^2 - y^2")?])?;
        let e = jrx_from_slice(&line, &y, 1)?;
        w.insert("status".into(), text(format!("{:?}", e.status)));
        Ok(Status::from_bool(e.status == JrxStatus::Exact && e.candidate.is_unit()?))
    })?;

    let opts = SliceOptions::default();
    for (name, x) in corpus(field, ctx)? {
        for seed in ctx.params.seed + 1..=ctx.params.seed + SEEDS {
            let mut slice = None;
            for r in [1u32, 2] {
                rec.check(format!("identity/{name}/seed{seed}/r{r}"), "slice.identity", |w| {
                    if slice.is_none() {
                        slice = Some(general_lci_slice(&x, seed, &opts)?);
                    }
                    let y = slice.as_ref().unwrap();
                    w.insert("attempts".into(), int(y.attempts() as usize));
                    let e = jrx_from_slice(&x, y, r)?;
                    w.insert("status".into(), text(format!("{:?}", e.status)));
                    w.insert("jhat".into(), texts(e.candidate.canonical_strings()?));
                    Ok(Status::from_bool(e.status != JrxStatus::Failed))
                })?;
            }
        }
        rec.check(format!("sum/{name}"), "slice.sum", |w| {
            let jx = x.restrict(&jacobian_ideal(&x)?)?;
            let mut acc = x.ideal().clone();
            let mut contained = true;
            for seed in ctx.params.seed + 1..=ctx.params.seed + SUM_SLICES {
                let y = general_lci_slice(&x, seed, &opts)?;
                let jy = x.restrict(&jacobian_ideal(&y.as_subscheme())?)?;
                contained &= jx.contains_ideal(&jy)?;
                acc = acc.sum(&jy)?;
            }
            w.insert("slices".into(), int(SUM_SLICES as usize));
            w.insert("jacobian".into(), texts(jx.canonical_strings()?));
            Ok(Status::from_bool(contained && acc.contains_ideal(&jx)?))
        })?;
    }
    Ok(())
}
