use num_rational::BigRational;

use super::{mld_monomial, MldError, MldValue, MonomialPair};
use crate::ideal::{Ideal, QIdeal};
use crate::jets::contact_locus_dim;
use crate::lp::Q;
use crate::poly::Field;

/// `S = {ord_R >= p} ∩ {gamma(0) in Z}` read at level `p - 1`, where `R`
/// is the representative of `Q` at the common denominator `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetWitness {
    pub level: usize,
    pub order: usize,
    /// Codimension of `S` in `J_level A`; `None` when `S` is empty.
    pub codim: Option<usize>,
    /// `dim S - (level + 1) N + p / r`.
    pub witness: Option<Q>,
    /// `codim S - p / r`, an upper bound for the mld.
    pub upper: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetEstimate {
    pub arity: usize,
    pub denominator: u64,
    pub witnesses: Vec<JetWitness>,
    pub best_upper: Option<Q>,
    pub probe: Q,
    /// Some witness exceeds `-probe`, so `mld < probe`.
    pub certifies_below_probe: bool,
    /// Exact value when `Q` is monomial and `Z` is the origin.
    pub oracle: Option<MldValue>,
    /// `best_upper >= oracle`.
    pub sound: Option<bool>,
    /// `best_upper == oracle`.
    pub matched: Option<bool>,
}

/// Upper bounds for `mld_Z(A, Q)` on smooth `A` from codimensions of contact
/// loci, one order per level: `{ord >= p}` is the preimage of its image at
/// level `p - 1`, so higher levels repeat the same codimension.
pub fn mld_jet_estimate<F: Field>(q: &QIdeal<F>, z: &Ideal<F>, n_max: usize, a_probe: &Q) -> Result<JetEstimate, MldError> {
    let ring = z.ring().clone();
    let n = ring.nvars();
    let r = q.common_denominator();
    let rep = if q.factors().is_empty() {
        Ideal::unit(&ring)
    } else {
        q.representative(r)?
    };
    if !crate::poly::PolyRing::same(rep.ring(), &ring) {
        return Err(MldError::Invalid("Q-ideal and center live in different rings".into()));
    }
    let rep = rep.with_budget(z.budget()).with_exec(z.exec());
    let inv_r = BigRational::new(1.into(), r.into());
    let mut witnesses = Vec::new();
    let mut orders = vec![(0usize, 0usize)];
    orders.extend((0..=n_max).map(|l| (l, l + 1)));
    for (level, p) in orders {
        let locus = contact_locus_dim(&rep, p, level, z)?;
        let codim = locus.at_least.map(|d| (level + 1) * n - d);
        let pr = &inv_r * BigRational::from_integer(p.into());
        let upper = codim.map(|c| BigRational::from_integer(c.into()) - &pr);
        witnesses.push(JetWitness {
            level,
            order: p,
            codim,
            witness: upper.as_ref().map(|u| -u.clone()),
            upper,
        });
    }
    let best_upper = witnesses.iter().filter_map(|w| w.upper.clone()).min();
    let certifies_below_probe = best_upper.as_ref().is_some_and(|u| u < a_probe);
    let oracle = if q.factors().iter().all(|(i, _)| i.is_monomial() || crate::ideal::MonomialIdeal::from_ideal(i).is_ok())
        && z.equals(&Ideal::maximal_at_origin(&ring))?
    {
        let pair = if q.factors().is_empty() {
            MonomialPair::affine(n, vec![])?
        } else {
            MonomialPair::from_qideal(q)?
        };
        Some(mld_monomial(&pair)?.value)
    } else {
        None
    };
    let sound = oracle.as_ref().map(|o| match (o, &best_upper) {
        (MldValue::NegInfinity, _) | (_, None) => true,
        (MldValue::Finite(v), Some(u)) => u >= v,
    });
    let matched = oracle.as_ref().map(|o| match (o, &best_upper) {
        (MldValue::Finite(v), Some(u)) => u == v,
        _ => false,
    });
    Ok(JetEstimate {
        arity: n,
        denominator: r,
        witnesses,
        best_upper,
        probe: a_probe.clone(),
        certifies_below_probe,
        oracle,
        sound,
        matched,
    })
}
