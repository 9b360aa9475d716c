use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Ideal, IdealError, MonomialIdeal};
use crate::poly::{Field, PolyRing};

/// Monomial valuation `v(x^u) = <w, u>` with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialValuation {
    weights: Vec<u64>,
}

impl MonomialValuation {
    pub fn new(weights: Vec<u64>) -> Result<Self, IdealError> {
        if weights.contains(&0) {
            return Err(IdealError::Invalid("valuation weights must be at least 1".into()));
        }
        Ok(MonomialValuation { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

/// Order of an ideal along a valuation; `Infinite` only for the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderOfIdeal {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for OrderOfIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderOfIdeal::Finite(v) => write!(f, "{v}"),
            OrderOfIdeal::Infinite => write!(f, "inf"),
        }
    }
}

/// `min` over generators and their terms of `<w, exponent>`.
pub fn monomial_order_of_ideal<F: Field>(
    w: &MonomialValuation,
    ideal: &Ideal<F>,
) -> Result<OrderOfIdeal, IdealError> {
    if w.weights.len() != ideal.ring().nvars() {
        return Err(IdealError::Invalid("valuation arity differs from the ring".into()));
    }
    let best = ideal
        .generators()
        .iter()
        .flat_map(|g| g.terms().iter())
        .map(|(m, _)| m.exps().iter().zip(&w.weights).map(|(&e, &x)| e as u64 * x).sum::<u64>())
        .min();
    Ok(match best {
        Some(v) => OrderOfIdeal::Finite(BigRational::from_integer(v.into())),
        None => OrderOfIdeal::Infinite,
    })
}

/// Formal product `prod I_i^{a_i}` with non-negative rational exponents.
#[derive(Clone, Debug)]
pub struct QIdeal<F: Field> {
    factors: Vec<(Ideal<F>, BigRational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent,
    Undetermined,
}

impl<F: Field> QIdeal<F> {
    pub fn new(factors: Vec<(Ideal<F>, BigRational)>) -> Result<Self, IdealError> {
        if let Some((first, _)) = factors.first() {
            if factors.iter().any(|(i, _)| !PolyRing::same(i.ring(), first.ring())) {
                return Err(crate::poly::PolyError::RingMismatch.into());
            }
        }
        if factors.iter().any(|(_, a)| a.is_negative()) {
            return Err(IdealError::Invalid("Q-ideal exponents must be non-negative".into()));
        }
        Ok(QIdeal { factors })
    }

    pub fn single(ideal: Ideal<F>, exponent: BigRational) -> Result<Self, IdealError> {
        QIdeal::new(vec![(ideal, exponent)])
    }

    pub fn factors(&self) -> &[(Ideal<F>, BigRational)] {
        &self.factors
    }

    /// Least common denominator of the exponents.
    pub fn common_denominator(&self) -> u64 {
        let mut l = BigInt::one();
        for (_, a) in &self.factors {
            l = num_integer::lcm(l, a.denom().clone());
        }
        l.to_u64().expect("denominator fits in u64")
    }

    /// `prod I_i^{r a_i}`; `r` must clear every denominator.
    pub fn representative(&self, r: u64) -> Result<Ideal<F>, IdealError> {
        let Some((first, _)) = self.factors.first() else {
            return Err(IdealError::Invalid("empty Q-ideal has no ring".into()));
        };
        let mut acc = Ideal::unit(first.ring()).with_budget(first.budget()).with_exec(first.exec());
        for (ideal, a) in &self.factors {
            let e = a * BigRational::from_integer(r.into());
            if !e.is_integer() {
                return Err(IdealError::NotADenominator { r });
            }
            let e = e.to_integer().to_u32().ok_or(IdealError::Invalid("exponent too large".into()))?;
            acc = acc.product(&ideal.power(e)?)?;
        }
        Ok(acc)
    }

    /// `sum a_i v(I_i)`.
    pub fn order_along(&self, w: &MonomialValuation) -> Result<OrderOfIdeal, IdealError> {
        let mut total = BigRational::zero();
        for (ideal, a) in &self.factors {
            match monomial_order_of_ideal(w, ideal)? {
                OrderOfIdeal::Infinite if !a.is_zero() => return Ok(OrderOfIdeal::Infinite),
                OrderOfIdeal::Infinite => {}
                OrderOfIdeal::Finite(v) => total += a * v,
            }
        }
        Ok(OrderOfIdeal::Finite(total))
    }

    /// Equivalence up to integral closure, decided where the tools allow:
    /// monomial representatives compare closures, otherwise only exact
    /// equality of representatives is conclusive.
    pub fn equivalent(&self, other: &Self) -> Result<Equivalence, IdealError> {
        let (ra, rb) = (self.common_denominator(), other.common_denominator());
        let r = ra / num_integer::gcd(ra, rb) * rb;
        let a = self.representative(r)?;
        let b = other.representative(r)?;
        if a.is_monomial() && b.is_monomial() {
            let ca = MonomialIdeal::from_ideal(&a)?.integral_closure()?;
            let cb = MonomialIdeal::from_ideal(&b)?.integral_closure()?;
            return Ok(if ca == cb {
                Equivalence::Equivalent
            } else {
                Equivalence::NotEquivalent
            });
        }
        if a.equals(&b)? {
            Ok(Equivalence::Equivalent)
        } else {
            Ok(Equivalence::Undetermined)
        }
    }
}

/// Outcome of checking `lower ⊆ I ⊆ upper` plus, when both bounds are
/// monomial, equality of their integral closures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichCertificate {
    pub lower_contained: bool,
    /// First generator of `lower` outside `I`.
    pub lower_witness: Option<String>,
    pub upper_contains: bool,
    /// First generator of `I` outside `upper`.
    pub upper_witness: Option<String>,
    /// `None` when a bound is not monomial.
    pub closures_equal: Option<bool>,
}

impl SandwichCertificate {
    pub fn passed(&self) -> bool {
        self.lower_contained && self.upper_contains && self.closures_equal != Some(false)
    }
}

pub fn sandwich_certificate<F: Field>(
    ideal: &Ideal<F>,
    lower: &Ideal<F>,
    upper: &Ideal<F>,
) -> Result<SandwichCertificate, IdealError> {
    let mut lower_witness = None;
    for g in lower.generators() {
        if !ideal.contains(g)? {
            lower_witness = Some(g.to_string());
            break;
        }
    }
    let mut upper_witness = None;
    for g in ideal.generators() {
        if !upper.contains(g)? {
            upper_witness = Some(g.to_string());
            break;
        }
    }
    let closures_equal = if lower.is_monomial() && upper.is_monomial() {
        let a = MonomialIdeal::from_ideal(lower)?.integral_closure()?;
        let b = MonomialIdeal::from_ideal(upper)?.integral_closure()?;
        Some(a == b)
    } else {
        None
    };
    Ok(SandwichCertificate {
        lower_contained: lower_witness.is_none(),
        lower_witness,
        upper_contains: upper_witness.is_none(),
        upper_witness,
        closures_equal,
    })
}
