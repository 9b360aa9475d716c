use rand::Rng;

use super::{JetError, TruncatedArc};
use crate::ideal::Ideal;
use crate::poly::{Field, MonomialOrder, PolyRing, TruncatedSeries};
use crate::random;
use crate::singularity::AffineSubscheme;

/// A complete intersection together with an arc on it, obtained by
/// composing a monomial parametrization with random series `s(t)` of
/// order one.
#[derive(Clone, Debug)]
pub struct LciArcCase<F: Field> {
    pub name: &'static str,
    pub seed: u64,
    pub y: AffineSubscheme<F>,
    pub arc: TruncatedArc<F>,
}

struct Family {
    name: &'static str,
    vars: &'static [&'static str],
    equations: &'static [&'static str],
    /// Coordinates as monomials `s^a u^b` in two parameters.
    param: &'static [(u32, u32)],
}

const FAMILIES: &[Family] = &[
    Family {
        name: "node",
        vars: &["x", "y"],
        equations: &["x^2 - y^2"],
        param: &[(1, 0), (1, 0)],
    },
    Family {
        name: "cusp",
        vars: &["x", "y"],
        equations: &["y^2 - x^3"],
        param: &[(2, 0), (3, 0)],
    },
    Family {
        name: "tacnode",
        vars: &["x", "y"],
        equations: &["y^2 - x^4"],
        param: &[(1, 0), (2, 0)],
    },
    Family {
        name: "A1 surface",
        vars: &["x", "y", "z"],
        equations: &["z^2 - x*y"],
        param: &[(2, 0), (0, 2), (1, 1)],
    },
    Family {
        name: "space cusp",
        vars: &["x", "y", "z"],
        equations: &["y^2 - x^3", "z - x*y"],
        param: &[(2, 0), (3, 0), (5, 0)],
    },
    Family {
        name: "A1 threefold section",
        vars: &["x", "y", "z", "w"],
        equations: &["z^2 - x*y", "w - x*z"],
        param: &[(2, 0), (0, 2), (1, 1), (3, 1)],
    },
];

pub fn lci_family_count() -> usize {
    FAMILIES.len()
}

fn random_series<F: Field, R: Rng>(field: &F, rng: &mut R, precision: usize) -> TruncatedSeries<F> {
    let mut c = vec![0i64; precision];
    if precision > 1 {
        c[1] = rng.random_range(1..=3);
    }
    for x in c.iter_mut().skip(2) {
        *x = rng.random_range(-3..=3);
    }
    TruncatedSeries::from_i64s(field.clone(), &c, precision)
}

/// Family `seed mod 6`, parameters drawn from `seed`; the arc is known
/// modulo `t^precision`.
pub fn lci_arc_case<F: Field>(field: F, seed: u64, precision: usize) -> Result<LciArcCase<F>, JetError> {
    let fam = &FAMILIES[(seed % FAMILIES.len() as u64) as usize];
    let ring = PolyRing::new(fam.vars, field.clone(), MonomialOrder::GrevLex)?;
    let y = AffineSubscheme::new(Ideal::from_strs(&ring, fam.equations)?)?;
    let mut rng = random::rng(seed);
    let s = random_series(&field, &mut rng, precision);
    let u = random_series(&field, &mut rng, precision);
    let one = TruncatedSeries::constant(field.clone(), field.one(), precision);
    let pow = |b: &TruncatedSeries<F>, e: u32| (0..e).fold(one.clone(), |acc, _| acc.mul(b));
    let coords = fam
        .param
        .iter()
        .map(|&(a, b)| pow(&s, a).mul(&pow(&u, b)).truncate(precision))
        .collect();
    let arc = TruncatedArc::new(coords)?;
    if !arc.lies_on(y.ideal())? {
        return Err(JetError::NotOnScheme(precision));
    }
    Ok(LciArcCase {
        name: fam.name,
        seed,
        y,
        arc,
    })
}
