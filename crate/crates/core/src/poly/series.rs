use std::fmt;

use super::{ElemDisplay, Field, PolyError, Polynomial};

/// t-adic order of a truncated series. `AtLeast(p)` means every known
/// coefficient vanishes; it is never promoted to an exact value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesOrder {
    Exact(usize),
    AtLeast(usize),
}

impl SeriesOrder {
    /// Lower bound usable in precision bookkeeping.
    pub fn lower_bound(self) -> usize {
        match self {
            SeriesOrder::Exact(k) | SeriesOrder::AtLeast(k) => k,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            SeriesOrder::Exact(k) => Some(k),
            SeriesOrder::AtLeast(_) => None,
        }
    }
}

/// Power series in `t` known modulo `t^precision`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> TruncatedSeries<F> {
    /// The series whose known coefficients are `coeffs`; precision is
    /// `coeffs.len()`.
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        TruncatedSeries { field, coeffs }
    }

    /// Polynomial in `t` given by `coeffs`, known to `precision`
    /// (missing coefficients are zero, extra ones dropped).
    pub fn from_coeffs(field: F, mut coeffs: Vec<F::Elem>, precision: usize) -> Self {
        coeffs.resize(precision, field.zero());
        TruncatedSeries { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64], precision: usize) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::from_coeffs(field, c, precision)
    }

    pub fn zero(field: F, precision: usize) -> Self {
        let coeffs = vec![field.zero(); precision];
        TruncatedSeries { field, coeffs }
    }

    pub fn constant(field: F, c: F::Elem, precision: usize) -> Self {
        Self::from_coeffs(field, vec![c], precision)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&F::Elem> {
        self.coeffs.get(i)
    }

    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !self.field.is_zero(c)) {
            Some(k) => SeriesOrder::Exact(k),
            None => SeriesOrder::AtLeast(self.precision()),
        }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.order(), SeriesOrder::AtLeast(_))
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision());
        TruncatedSeries {
            field: self.field.clone(),
            coeffs: self.coeffs[..p].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        let coeffs = (0..p).map(|i| self.field.add(&self.coeffs[i], &other.coeffs[i])).collect();
        TruncatedSeries::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        let coeffs = (0..p).map(|i| self.field.sub(&self.coeffs[i], &other.coeffs[i])).collect();
        TruncatedSeries::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        TruncatedSeries::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Product known to `min(p_a + v_b, p_b + v_a)` where `v` is the
    /// (lower bound of the) order of each factor.
    pub fn mul(&self, other: &Self) -> Self {
        let (pa, pb) = (self.precision(), other.precision());
        let va = self.order().lower_bound();
        let vb = other.order().lower_bound();
        let p = (pa + vb).min(pb + va);
        self.mul_to(other, p)
    }

    /// Product truncated to at most `precision` (and never beyond what
    /// the factors determine).
    pub fn mul_trunc(&self, other: &Self, precision: usize) -> Self {
        let m = self.mul(other);
        m.truncate(precision)
    }

    fn mul_to(&self, other: &Self, p: usize) -> Self {
        let f = &self.field;
        let mut out = vec![f.zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= p || f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= p {
                    break;
                }
                if f.is_zero(b) {
                    continue;
                }
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        TruncatedSeries::new(f.clone(), out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TruncatedSeries::constant(self.field.clone(), self.field.one(), self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division by `t^e`; the first `e` coefficients must vanish.
    pub fn shift_down(&self, e: usize) -> Option<Self> {
        if e > self.precision() || self.coeffs[..e].iter().any(|c| !self.field.is_zero(c)) {
            return None;
        }
        Some(TruncatedSeries::new(self.field.clone(), self.coeffs[e..].to_vec()))
    }

    /// Multiplication by `t^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        let mut coeffs = vec![self.field.zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries::new(self.field.clone(), coeffs)
    }

    /// Inverse of a unit (nonzero constant term) to the same precision.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let a0 = self.coeffs.first()?;
        let inv0 = f.inv(a0)?;
        let p = self.precision();
        let mut out = vec![f.zero(); p];
        out[0] = inv0.clone();
        for k in 1..p {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(&s, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&s, &inv0));
        }
        Some(TruncatedSeries::new(f.clone(), out))
    }
}

impl<F: Field> fmt::Display for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", ElemDisplay(&self.field, c))?,
                1 => write!(f, "{}*t", ElemDisplay(&self.field, c))?,
                _ => write!(f, "{}*t^{}", ElemDisplay(&self.field, c), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}

impl<F: Field> fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `f(images)` modulo `t^precision`.
pub fn substitute_series<F: Field>(
    f: &Polynomial<F>,
    images: &[TruncatedSeries<F>],
    precision: usize,
) -> Result<TruncatedSeries<F>, PolyError> {
    let n = f.ring().nvars();
    if images.len() != n {
        return Err(PolyError::ArityMismatch {
            expected: n,
            got: images.len(),
        });
    }
    for im in images {
        if im.precision() < precision {
            return Err(PolyError::PrecisionMismatch {
                needed: precision,
                got: im.precision(),
            });
        }
    }
    let field = f.field().clone();
    let images: Vec<_> = images.iter().map(|s| s.truncate(precision)).collect();
    let mut powers: Vec<Vec<TruncatedSeries<F>>> = images
        .iter()
        .map(|_| vec![TruncatedSeries::constant(field.clone(), field.one(), precision)])
        .collect();
    let mut acc = TruncatedSeries::zero(field.clone(), precision);
    for (m, c) in f.terms() {
        let mut t = TruncatedSeries::constant(field.clone(), c.clone(), precision);
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul_trunc(&images[i], precision);
                powers[i].push(next);
            }
            t = t.mul_trunc(&powers[i][e as usize], precision);
        }
        acc = acc.add(&t.truncate(precision));
    }
    Ok(TruncatedSeries::from_coeffs(field, acc.coeffs, precision))
}
