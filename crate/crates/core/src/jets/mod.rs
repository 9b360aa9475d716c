//! Jet schemes at finite level, truncated arcs and orders along them,
//! elementary divisors of the Jacobian along an arc, fiber dimensions of
//! truncation maps, contact loci and image stabilization.

mod fiber;
mod jet_ideal;
mod smith;
mod sample;

pub use fiber::{fiber_dimension_check, order_additivity_check, AdditivityReport, AdditivityStatus, FiberReport};
pub use jet_ideal::{
    contact_locus_dim, image_stabilization_probe, jet_ideal, jet_var_name, ContactLocus, JetIdeal, StabilizationReport,
};
pub use sample::{lci_arc_case, lci_family_count, LciArcCase};
pub use smith::{elementary_divisors_along_arc, smith_form, SmithForm};

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::ideal::{Ideal, IdealError, QIdeal};
use crate::poly::{substitute_series, Field, PolyError, Polynomial, SeriesOrder, TruncatedSeries};
use crate::singularity::SingularityError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error("precision {precision} is insufficient: {what}")]
    Precision { precision: usize, what: String },
    #[error("hypothesis m >= n + e >= 2e fails for n = {n}, m = {m}, e = {e}")]
    Hypothesis { n: usize, m: usize, e: usize },
    #[error("arc does not lie on the scheme to precision {0}")]
    NotOnScheme(usize),
    #[error("truncation from level {from} to level {to} is not defined")]
    Level { from: usize, to: usize },
    #[error("{0}")]
    Invalid(String),
}

impl From<IdealError> for JetError {
    fn from(e: IdealError) -> Self {
        JetError::Singularity(e.into())
    }
}

impl From<PolyError> for JetError {
    fn from(e: PolyError) -> Self {
        JetError::Singularity(e.into())
    }
}

impl JetError {
    pub fn is_budget(&self) -> bool {
        matches!(self, JetError::Singularity(e) if e.is_budget())
    }
}

/// Order of a (Q-)ideal along an arc. `AtLeast` is produced when every
/// known coefficient vanishes and is never turned into an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderValue {
    Exact(BigRational),
    AtLeast(BigRational),
}

impl OrderValue {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            OrderValue::Exact(v) => Some(v),
            OrderValue::AtLeast(_) => None,
        }
    }

    pub fn lower_bound(&self) -> &BigRational {
        match self {
            OrderValue::Exact(v) | OrderValue::AtLeast(v) => v,
        }
    }

    fn from_series(o: SeriesOrder) -> Self {
        match o {
            SeriesOrder::Exact(k) => OrderValue::Exact(BigRational::from_integer(k.into())),
            SeriesOrder::AtLeast(k) => OrderValue::AtLeast(BigRational::from_integer(k.into())),
        }
    }

    /// Minimum of orders: exact when the smallest exact value does not
    /// exceed every lower bound.
    pub fn min(values: impl IntoIterator<Item = OrderValue>) -> Option<OrderValue> {
        let mut exact: Option<BigRational> = None;
        let mut bound: Option<BigRational> = None;
        for v in values {
            match v {
                OrderValue::Exact(x) => exact = Some(exact.map_or(x.clone(), |e| e.min(x))),
                OrderValue::AtLeast(x) => bound = Some(bound.map_or(x.clone(), |b| b.min(x))),
            }
        }
        match (exact, bound) {
            (Some(e), Some(b)) if b < e => Some(OrderValue::AtLeast(b)),
            (Some(e), _) => Some(OrderValue::Exact(e)),
            (None, Some(b)) => Some(OrderValue::AtLeast(b)),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.lower_bound() + other.lower_bound();
        match (self, other) {
            (OrderValue::Exact(_), OrderValue::Exact(_)) => OrderValue::Exact(s),
            _ => OrderValue::AtLeast(s),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        match self {
            OrderValue::Exact(v) => OrderValue::Exact(v * c),
            OrderValue::AtLeast(v) => OrderValue::AtLeast(v * c),
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Exact(v) => write!(f, "{v}"),
            OrderValue::AtLeast(v) => write!(f, "at-least({v})"),
        }
    }
}

/// An arc `Spec k[[t]] -> A^N` known modulo `t^P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedArc<F: Field> {
    coords: Vec<TruncatedSeries<F>>,
}

impl<F: Field> TruncatedArc<F> {
    /// Precision is the smallest precision among the coordinates.
    pub fn new(coords: Vec<TruncatedSeries<F>>) -> Result<Self, JetError> {
        if coords.is_empty() {
            return Err(JetError::Invalid("an arc needs at least one coordinate".into()));
        }
        Ok(TruncatedArc { coords })
    }

    /// Polynomial arc given by integer coefficient lists, known to `precision`.
    pub fn from_i64s(field: F, coords: &[Vec<i64>], precision: usize) -> Result<Self, JetError> {
        Self::new(
            coords
                .iter()
                .map(|c| TruncatedSeries::from_i64s(field.clone(), c, precision))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[TruncatedSeries<F>] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> &F {
        self.coords[0].field()
    }

    pub fn precision(&self) -> usize {
        self.coords.iter().map(|c| c.precision()).min().unwrap()
    }

    pub fn base_point(&self) -> Vec<F::Elem> {
        let f = self.field();
        self.coords.iter().map(|c| c.coeff(0).cloned().unwrap_or_else(|| f.zero())).collect()
    }

    /// The `n`-jet: coordinates modulo `t^(n+1)`.
    pub fn truncate(&self, n: usize) -> Result<Self, JetError> {
        let from = self.precision().saturating_sub(1);
        if n > from || self.precision() == 0 {
            return Err(JetError::Level { from, to: n });
        }
        Ok(TruncatedArc {
            coords: self.coords.iter().map(|c| c.truncate(n + 1)).collect(),
        })
    }

    /// Jet coefficients `a_{i,j}` with `j < precision`.
    pub fn coefficient(&self, i: usize, j: usize) -> Option<&F::Elem> {
        self.coords.get(i)?.coeff(j)
    }

    pub fn eval(&self, f: &Polynomial<F>) -> Result<TruncatedSeries<F>, JetError> {
        Ok(substitute_series(f, &self.coords, self.precision())?)
    }

    /// Whether every generator vanishes modulo `t^precision`.
    pub fn lies_on(&self, ideal: &Ideal<F>) -> Result<bool, JetError> {
        for g in ideal.generators() {
            if !self.eval(g)?.is_zero_to_precision() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `min_g ord_t g(gamma)` over the generators.
pub fn ideal_order<F: Field>(ideal: &Ideal<F>, arc: &TruncatedArc<F>) -> Result<OrderValue, JetError> {
    if ideal.is_zero_ideal() {
        return Ok(OrderValue::AtLeast(BigRational::from_integer(arc.precision().into())));
    }
    let mut vals = Vec::with_capacity(ideal.generators().len());
    for g in ideal.generators() {
        vals.push(OrderValue::from_series(arc.eval(g)?.order()));
    }
    Ok(OrderValue::min(vals).unwrap())
}

/// `sum_k e_k ord(I_k)` for `Q = prod I_k^(e_k)`, which agrees with
/// `(1/r) ord(Q_r)` for every denominator `r`.
pub fn arc_order<F: Field>(q: &QIdeal<F>, arc: &TruncatedArc<F>) -> Result<OrderValue, JetError> {
    let mut acc = OrderValue::Exact(BigRational::zero());
    for (ideal, e) in q.factors() {
        if e.is_zero() {
            continue;
        }
        acc = acc.add(&ideal_order(ideal, arc)?.scale(e));
    }
    Ok(acc)
}

/// Orders at growing precision: `arc_at(P)` for `P = start, 2 start, ...`
/// up to `cap`, stopping at the first exact value.
pub fn arc_order_widening<F: Field>(
    q: &QIdeal<F>,
    mut arc_at: impl FnMut(usize) -> Result<TruncatedArc<F>, JetError>,
    start: usize,
    cap: usize,
) -> Result<OrderValue, JetError> {
    let mut p = start.max(1);
    loop {
        let v = arc_order(q, &arc_at(p)?)?;
        if v.exact().is_some() || p >= cap {
            return Ok(v);
        }
        p = (2 * p).min(cap);
    }
}

/// Truncated series with polynomial coefficients, used to expand
/// equations along generic jets.
#[derive(Clone, Debug)]
pub(crate) struct PolySeries<F: Field> {
    pub(crate) coeffs: Vec<Polynomial<F>>,
}

impl<F: Field> PolySeries<F> {
    pub(crate) fn mul(&self, other: &Self) -> Self {
        let p = self.coeffs.len().min(other.coeffs.len());
        let ring = self.coeffs[0].ring().clone();
        let mut out = vec![ring.zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().take(p) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(p - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].try_add(&a.try_mul(b).unwrap()).unwrap();
                }
            }
        }
        PolySeries { coeffs: out }
    }

    pub(crate) fn constant(c: Polynomial<F>, precision: usize) -> Self {
        let ring = c.ring().clone();
        let mut coeffs = vec![ring.zero(); precision];
        if precision > 0 {
            coeffs[0] = c;
        }
        PolySeries { coeffs }
    }

    /// `f(images)` modulo `t^precision`, where `f` lives in another ring.
    pub(crate) fn substitute(f: &Polynomial<F>, images: &[PolySeries<F>], precision: usize) -> Self {
        let ring = images[0].coeffs[0].ring().clone();
        let mut powers: Vec<Vec<PolySeries<F>>> =
            images.iter().map(|_| vec![PolySeries::constant(ring.one(), precision)]).collect();
        let mut acc = vec![ring.zero(); precision];
        for (m, c) in f.terms() {
            let mut t = PolySeries::constant(ring.constant(c.clone()), precision);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            for (a, b) in acc.iter_mut().zip(t.coeffs) {
                *a = a.try_add(&b).unwrap();
            }
        }
        PolySeries { coeffs: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn orders_along_arcs() {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 6).unwrap();
        let xy = QIdeal::single(Ideal::from_strs(&r, &["x*y"]).unwrap(), rat(1, 1)).unwrap();
        assert_eq!(arc_order(&xy, &arc).unwrap(), OrderValue::Exact(rat(2, 1)));
        let cube = TruncatedArc::from_i64s(Rationals, &[vec![0, 0, 0, 1], vec![1]], 6).unwrap();
        let half = QIdeal::single(Ideal::from_strs(&r, &["x"]).unwrap(), rat(1, 2)).unwrap();
        assert_eq!(arc_order(&half, &cube).unwrap(), OrderValue::Exact(rat(3, 2)));
        let jy = QIdeal::single(Ideal::from_strs(&r, &["x^2 - y^2", "2*x", "-2*y"]).unwrap(), rat(1, 1)).unwrap();
        assert_eq!(arc_order(&jy, &arc).unwrap(), OrderValue::Exact(rat(1, 1)));
        let on = Ideal::from_strs(&r, &["x - y"]).unwrap();
        assert!(arc.lies_on(&on).unwrap());
        let unit = QIdeal::single(on, rat(1, 1)).unwrap();
        assert_eq!(arc_order(&unit, &arc).unwrap(), OrderValue::AtLeast(rat(6, 1)));
    }

    #[test]
    fn truncation() {
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1, 0, 1]], 4).unwrap();
        assert_eq!(arc.truncate(1).unwrap().coords()[0].to_string(), "1*t + O(t^2)");
        assert_eq!(arc.truncate(0).unwrap().base_point(), vec![rat(0, 1)]);
        assert_eq!(arc.truncate(3).unwrap().truncate(1).unwrap(), arc.truncate(1).unwrap());
        assert!(arc.truncate(4).is_err());
    }

    #[test]
    fn widening() {
        let r = PolyRing::new(&["x"], Rationals, MonomialOrder::GrevLex).unwrap();
        let q = QIdeal::single(Ideal::from_strs(&r, &["x"]).unwrap(), rat(1, 1)).unwrap();
        let at = |p: usize| TruncatedArc::from_i64s(Rationals, &[vec![0, 0, 0, 0, 0, 0, 0, 7]], p);
        assert_eq!(arc_order(&q, &at(4).unwrap()).unwrap(), OrderValue::AtLeast(rat(4, 1)));
        assert_eq!(arc_order_widening(&q, at, 4, 64).unwrap(), OrderValue::Exact(rat(7, 1)));
    }
}
