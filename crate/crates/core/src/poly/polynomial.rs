use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ElemDisplay, Field, Monomial, PolyError, PolyRing};

/// A polynomial in canonical form: terms sorted by the ring's monomial
/// order, largest first, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined,
    /// zeros dropped and the result sorted.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees the terms are already canonical.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    /// A single term `c * x^a`.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.0.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &F::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].1, &b[j].1)
                    } else {
                        field.add(&a[i].1, &b[j].1)
                    };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        Polynomial::from_sorted_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        )
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted_terms(
            &self.ring,
            self.terms.iter().map(|(m, d)| (m.clone(), field.mul(c, d))).collect(),
        )
    }

    /// Multiplication by `c * m`; monomial orders are multiplicative so the
    /// term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted_terms(
            &self.ring,
            self.terms.iter().map(|(n, d)| (n.mul(m), field.mul(c, d))).collect(),
        )
    }

    /// `self - c * m * g` in one merge pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let next_b = |j: usize| (b[j].0.mul(m), field.mul(c, &b[j].1));
        let mut pending = if j < b.len() { Some(next_b(j)) } else { None };
        while i < a.len() {
            let Some((bm, bc)) = pending.as_ref() else {
                break;
            };
            match order.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm.clone(), field.neg(bc)));
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
                Ordering::Equal => {
                    let v = field.sub(&a[i].1, bc);
                    if !field.is_zero(&v) {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    pending = if j < b.len() { Some(next_b(j)) } else { None };
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some((bm, bc)) = pending {
            out.push((bm, field.neg(&bc)));
            j += 1;
            while j < b.len() {
                let (bm, bc) = next_b(j);
                out.push((bm, field.neg(&bc)));
                j += 1;
            }
        }
        Polynomial::from_sorted_terms(&self.ring, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if var >= n {
            return Err(PolyError::VarIndexOutOfRange { index: var, nvars: n });
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[var] > 0)
            .map(|(m, c)| {
                let mut e = m.exps().to_vec();
                let k = e[var];
                e[var] -= 1;
                (Monomial::new(e), field.mul(c, &field.from_i64(k as i64)))
            })
            .collect();
        // derivative may kill terms in positive characteristic, and can
        // reorder under non-graded orders; normalise.
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::ArityMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Ring homomorphism `x_i -> images[i]` into the ring of the images.
    pub fn compose(&self, target: &Arc<PolyRing<F>>, images: &[Polynomial<F>]) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(PolyError::ArityMismatch {
                expected: n,
                got: images.len(),
            });
        }
        for im in images {
            if !PolyRing::same(im.ring(), target) {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![vec![target.one()]; n];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Re-embeds into `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring.
    pub fn map_vars(&self, target: &Arc<PolyRing<F>>, var_map: &[usize]) -> Self {
        assert_eq!(var_map.len(), self.ring.nvars());
        let tn = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; tn];
                for (i, &k) in m.exps().iter().enumerate() {
                    e[var_map[i]] += k;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial in a ring with identical variables but possibly a
    /// different order.
    pub fn reorder(&self, target: &Arc<PolyRing<F>>) -> Self {
        assert_eq!(target.nvars(), self.ring.nvars());
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Exact division; `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        let (glm, glc) = (g.leading_monomial()?, g.leading_coeff()?);
        let field = self.field();
        let ginv = field.inv(glc)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((lm, lc)) = rem.terms.first().cloned() {
            let q = glm.quotient_of(&lm)?;
            let c = field.mul(&lc, &ginv);
            rem = rem.sub_mul_term(&c, &q, g);
            quot.push((q, c));
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }

    /// Remainder of multivariate division by `basis` (first divisor whose
    /// leading monomial divides wins). With `full == false` only the head is
    /// reduced.
    pub fn reduce_by(&self, basis: &[Polynomial<F>], full: bool) -> Self {
        let field = self.field();
        let heads: Vec<(&Self, &Monomial, F::Elem)> = basis
            .iter()
            .filter_map(|g| Some((g, g.leading_monomial()?, field.inv(g.leading_coeff()?)?)))
            .collect();
        let mut p = self.clone();
        let mut k = 0;
        while k < p.terms.len() {
            let m = &p.terms[k].0;
            let hit = heads
                .iter()
                .find_map(|(g, h, inv)| h.quotient_of(m).map(|q| (g, q, inv)));
            match hit {
                Some((g, q, inv)) => {
                    let c = field.mul(&p.terms[k].1, inv);
                    // terms before k exceed every term of c*q*g and survive
                    p = p.sub_mul_term(&c, &q, g);
                }
                None if full => k += 1,
                None => break,
            }
        }
        p
    }

    pub fn variables_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !field.is_one(&abs) || m.is_one() {
                factors.push(format!("{}", ElemDisplay(field, &abs)));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! impl_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(&self)
    }
}
