use adjlab_core::ideal::Ideal;
use adjlab_core::poly::{Field, MonomialOrder};
use adjlab_core::singularity::{conductor_on_x, AffineSubscheme, AlternatingMatrix, LciSlice};

use super::Ctx;
use crate::error::HarnessError;
use crate::report::{int, text, Recorder, Status};

pub fn pfaffian_conductors(ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    with_field!(ctx, f => run(f, ctx, rec))
}

fn label(deleted: &[usize]) -> String {
    let parts: Vec<String> = deleted.iter().map(|i| i.to_string()).collect();
    parts.join("")
}

fn run<F: Field>(field: F, ctx: &Ctx, rec: &mut Recorder) -> Result<(), HarnessError> {
    let n = ctx.params.n.unwrap_or(5);
    if n < 5 || n.is_multiple_of(2) || n > 9 {
        return Err(HarnessError::Invalid(format!("matrix size {n}: expected 5, 7 or 9")));
    }
    let m = AlternatingMatrix::generic(n, field, MonomialOrder::GrevLex)?;
    let ring = m.ring().clone();
    let p = m.sub_pfaffians(1)?;
    let gens = p.iter().map(|(_, g)| g.clone()).collect();
    let mut x = None;
    rec.check("variety/codimension-3", "pfaffian.conductor", |w| {
        let s = AffineSubscheme::new(ctx.ideal(Ideal::new(&ring, gens)?))?;
        w.insert("dim".into(), int(s.dim()));
        w.insert("codim".into(), int(s.codim()));
        let ok = s.codim() == 3;
        x = Some(s);
        Ok(Status::from_bool(ok))
    })?;
    let Some(x) = x else { return Ok(()) };

    let mut conductors = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let deleted: Vec<usize> = [a, b, c].iter().map(|&i| p[i].0[0]).collect();
                let id = format!("conductor/p{}", label(&deleted));
                rec.check(id, "pfaffian.conductor", |w| {
                    let y = LciSlice::from_generators(&x, vec![p[a].1.clone(), p[b].1.clone(), p[c].1.clone()])?;
                    let cond = conductor_on_x(&y)?;
                    let comp = m.sub_pfaffian(&deleted)?;
                    w.insert("complementary_pfaffian".into(), text(&comp));
                    let want = x.ideal().sum(&x.ideal().derive(vec![comp])?)?;
                    let ok = cond.equals(&want)?;
                    w.insert("basis_size".into(), int(cond.groebner_basis()?.len()));
                    conductors.push(cond);
                    Ok(Status::from_bool(ok))
                })?;
            }
        }
    }

    rec.check("defect/sum-is-lower-pfaffians", "pfaffian.defect", |w| {
        let triples = n * (n - 1) * (n - 2) / 6;
        w.insert("conductors".into(), int(conductors.len()));
        if conductors.len() < triples {
            w.insert("skipped".into(), text("a conductor is unavailable"));
            return Ok(Status::Inconclusive);
        }
        let mut total = x.ideal().clone();
        for cond in &conductors {
            total = total.sum(cond)?;
        }
        let lower: Vec<_> = m.sub_pfaffians(3)?.into_iter().map(|(_, e)| e).collect();
        w.insert("lower_pfaffians".into(), int(lower.len()));
        let want = x.ideal().sum(&x.ideal().derive(lower)?)?;
        Ok(Status::from_bool(total.equals(&want)?))
    })?;
    Ok(())
}
