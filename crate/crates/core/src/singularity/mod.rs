//! Jacobian ideals, general l.c.i. slices and conductors, divisorial
//! powers, weak l.c.i. defect ideals, pfaffians, and the toric model of the
//! cubic cone `1/3(1,1,1)`.

pub mod minors;
mod pfaffian;
mod slice;
pub mod toric;

pub use pfaffian::AlternatingMatrix;
pub use slice::{
    conductor_on_x, divisorial_power, general_lci_slice, jrx_from_slice, jrx_from_slices, lci_defect_ideal,
    weak_defect_colon, weak_defect_colon_with, weak_defect_sum, DefectSum, DivisorialPower, JrxResult, JrxStatus,
    LciSlice, SliceOptions,
};

use thiserror::Error;

use crate::exec::Exec;
use crate::ideal::{Ideal, IdealError};
use crate::poly::{Field, PolyError};
use crate::random;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("general slice validation failed after {attempts} attempts: {check}")]
    SliceValidation { check: String, attempts: u32 },
    #[error("no nonzerodivisor on X among the generators of the power")]
    NoNonzerodivisor,
    #[error("J_rX recovery undetermined: verification failed for every slice")]
    JrxUndetermined,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<PolyError> for SingularityError {
    fn from(e: PolyError) -> Self {
        SingularityError::Ideal(e.into())
    }
}

impl SingularityError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SingularityError::Ideal(e) if e.is_budget())
    }
}

/// Closed subscheme `X = V(I_X)` of affine space, with its dimension `d`
/// and codimension `c = N - d`.
#[derive(Clone, Debug)]
pub struct AffineSubscheme<F: Field> {
    ideal: Ideal<F>,
    dim: usize,
}

impl<F: Field> AffineSubscheme<F> {
    pub fn new(ideal: Ideal<F>) -> Result<Self, SingularityError> {
        match ideal.krull_dimension()? {
            None => Err(SingularityError::Invalid("defining ideal is the unit ideal".into())),
            Some(dim) => Ok(AffineSubscheme { ideal, dim }),
        }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ideal.ring().nvars() - self.dim
    }

    pub fn nvars(&self) -> usize {
        self.ideal.ring().nvars()
    }

    /// `I_X + J`, the image of an ambient ideal in `O_X`.
    pub fn restrict(&self, j: &Ideal<F>) -> Result<Ideal<F>, SingularityError> {
        let mut gens = self.ideal.generators().to_vec();
        for g in j.generators() {
            let r = self.ideal.normal_form(g)?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        Ok(self.ideal.derive(gens)?)
    }
}

/// Limits for Jacobian minor enumeration.
#[derive(Clone, Copy, Debug)]
pub struct JacobianOptions {
    /// Above this many minors, minors are sampled instead of enumerated.
    pub max_minors: u128,
    pub sample_batch: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for JacobianOptions {
    fn default() -> Self {
        JacobianOptions {
            max_minors: 200_000,
            sample_batch: 32,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JacobianIdeal<F: Field> {
    pub ideal: Ideal<F>,
    /// Whether minors were sampled rather than enumerated.
    pub sampled: bool,
    pub minors_used: usize,
}

pub fn jacobian_ideal<F: Field>(x: &AffineSubscheme<F>) -> Result<Ideal<F>, SingularityError> {
    Ok(jacobian_ideal_with(x, &JacobianOptions {
        exec: x.ideal.exec(),
        ..JacobianOptions::default()
    })?
    .ideal)
}

/// `I_X` plus the `c x c` minors of the Jacobian matrix of the generators
/// of `I_X`. Past `max_minors` the minors are sampled in batches until two
/// consecutive batches add nothing to the ideal.
pub fn jacobian_ideal_with<F: Field>(
    x: &AffineSubscheme<F>,
    opts: &JacobianOptions,
) -> Result<JacobianIdeal<F>, SingularityError> {
    let ring = x.ideal.ring().clone();
    let c = x.codim();
    if c == 0 {
        return Ok(JacobianIdeal {
            ideal: Ideal::unit(&ring).with_budget(x.ideal.budget()).with_exec(x.ideal.exec()),
            sampled: false,
            minors_used: 1,
        });
    }
    let gens = x.ideal.generators();
    let jac = minors::jacobian_matrix(gens, &ring)?;
    let count = minors::binomial(gens.len(), c) * minors::binomial(ring.nvars(), c);
    if count <= opts.max_minors {
        let ms = minors::all_minors(&jac, c, &ring, opts.exec);
        let n = ms.len();
        let ideal = x.restrict(&x.ideal.derive(ms)?)?;
        return Ok(JacobianIdeal {
            ideal,
            sampled: false,
            minors_used: n,
        });
    }
    let mut rng = random::rng(opts.seed);
    let mut cur = x.ideal.clone();
    let mut used = 0;
    let mut stable_rounds = 0;
    while stable_rounds < 2 {
        let picks: Vec<(Vec<usize>, Vec<usize>)> = (0..opts.sample_batch)
            .map(|_| {
                (
                    minors::random_subset(&mut rng, gens.len(), c),
                    minors::random_subset(&mut rng, ring.nvars(), c),
                )
            })
            .collect();
        let ms = opts.exec.map(&picks, |(r, k)| minors::minor(&jac, r, k, &ring));
        used += ms.len();
        let mut grew = false;
        let mut new_gens = cur.generators().to_vec();
        for m in ms {
            if !m.is_zero() && !cur.contains(&m)? {
                new_gens.push(m);
                grew = true;
            }
        }
        if grew {
            cur = cur.derive(new_gens)?;
            stable_rounds = 0;
        } else {
            stable_rounds += 1;
        }
    }
    Ok(JacobianIdeal {
        ideal: cur,
        sampled: true,
        minors_used: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};

    #[test]
    fn jacobian_examples() {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
        let node = AffineSubscheme::new(Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap()).unwrap();
        let j = jacobian_ideal(&node).unwrap();
        assert!(j.equals(&Ideal::from_strs(&r, &["x", "y"]).unwrap()).unwrap());

        let r3 = PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::GrevLex).unwrap();
        let line = AffineSubscheme::new(Ideal::from_strs(&r3, &["x", "y"]).unwrap()).unwrap();
        assert_eq!(line.codim(), 2);
        assert!(jacobian_ideal(&line).unwrap().is_unit().unwrap());
    }

    #[test]
    fn sampling_agrees_with_enumeration() {
        let r = PolyRing::new(&["x", "y", "z", "w"], Rationals, MonomialOrder::GrevLex).unwrap();
        let x = AffineSubscheme::new(Ideal::from_strs(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]).unwrap()).unwrap();
        let full = jacobian_ideal(&x).unwrap();
        let sampled = jacobian_ideal_with(
            &x,
            &JacobianOptions {
                max_minors: 0,
                sample_batch: 8,
                seed: 3,
                exec: Exec::Sequential,
            },
        )
        .unwrap();
        assert!(sampled.sampled);
        assert!(sampled.ideal.equals(&full).unwrap());
    }
}
