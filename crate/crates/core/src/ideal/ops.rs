use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{groebner_basis, Budget, IdealError};
use crate::exec::Exec;
use crate::poly::{Field, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial};

/// A finitely generated ideal of a polynomial ring. The reduced Gröbner
/// basis for the ring's order is computed on first use and shared by all
/// clones.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    budget: Budget,
    exec: Exec,
    gb: Arc<OnceLock<Vec<Polynomial<F>>>>,
}

/// Result of `I : J^inf`; `exponent` is the number of colon steps that
/// changed the ideal.
#[derive(Clone, Debug)]
pub struct Saturation<F: Field> {
    pub ideal: Ideal<F>,
    pub exponent: u32,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        if gens.iter().any(|g| !PolyRing::same(g.ring(), ring)) {
            return Err(PolyError::RingMismatch.into());
        }
        let mut gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        dedup_keep_order(&mut gens);
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            budget: Budget::default(),
            exec: Exec::default(),
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_strs<S: AsRef<str>>(ring: &Arc<PolyRing<F>>, gens: &[S]) -> Result<Self, IdealError> {
        let polys = gens
            .iter()
            .map(|s| ring.parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, polys)
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    /// The ideal generated by the variables.
    pub fn maximal_at_origin(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, ring.vars()).unwrap()
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// A new ideal in the same ring inheriting budget and execution mode.
    pub fn derive(&self, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        Ok(Ideal::new(&self.ring, gens)?.with_budget(self.budget).with_exec(self.exec))
    }

    fn derive_in(&self, ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self, IdealError> {
        Ok(Ideal::new(ring, gens)?.with_budget(self.budget).with_exec(self.exec))
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    fn check_ring(&self, other: &Self) -> Result<(), IdealError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch.into())
        }
    }

    pub fn groebner_basis(&self) -> Result<&[Polynomial<F>], IdealError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.gens, &self.budget)?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, IdealError> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch.into());
        }
        Ok(f.reduce_by(self.groebner_basis()?, true))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, IdealError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_ideal(&self, other: &Self) -> Result<bool, IdealError> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact equality (reduced Gröbner bases coincide).
    pub fn equals(&self, other: &Self) -> Result<bool, IdealError> {
        self.check_ring(other)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    /// Whether `self : K^inf == other : K^inf`.
    pub fn equals_up_to_saturation(&self, other: &Self, k: &Self) -> Result<bool, IdealError> {
        let a = self.saturation(k)?.ideal;
        let b = other.saturation(k)?.ideal;
        a.equals(&b)
    }

    pub fn is_unit(&self) -> Result<bool, IdealError> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_term())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, IdealError> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.derive(gens)
    }

    pub fn product(&self, other: &Self) -> Result<Self, IdealError> {
        self.check_ring(other)?;
        let pairs: Vec<(usize, usize)> = (0..self.gens.len())
            .flat_map(|i| (0..other.gens.len()).map(move |j| (i, j)))
            .collect();
        let gens = self
            .exec
            .map(&pairs, |&(i, j)| self.gens[i].try_mul(&other.gens[j]).unwrap());
        self.derive(gens)
    }

    pub fn power(&self, r: u32) -> Result<Self, IdealError> {
        let mut acc = Ideal::unit(&self.ring).with_budget(self.budget).with_exec(self.exec);
        for _ in 0..r {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Ideal generated by `self` in variables sent to `target` by `var_map`.
    pub fn map_into(&self, target: &Arc<PolyRing<F>>, var_map: &[usize]) -> Result<Self, IdealError> {
        let gens = self.gens.iter().map(|g| g.map_vars(target, var_map)).collect();
        self.derive_in(target, gens)
    }

    /// `self ∩ k[other variables]`, as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Self, IdealError> {
        let n = self.ring.nvars();
        for &v in vars {
            if v >= n {
                return Err(PolyError::VarIndexOutOfRange { index: v, nvars: n }.into());
            }
        }
        let mut perm: Vec<usize> = vars.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let k = perm.len();
        perm.extend((0..n).filter(|i| !vars.contains(i)));
        // perm[new] = old
        let names: Vec<&str> = perm.iter().map(|&i| self.ring.var_name(i)).collect();
        let elim_ring = PolyRing::new(&names, self.ring.field().clone(), MonomialOrder::Elimination { split: k })?;
        let mut to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = new;
        }
        let lifted = self.map_into(&elim_ring, &to_new)?;
        let gb = lifted.groebner_basis()?;
        let kept: Vec<Polynomial<F>> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.map_vars(&self.ring, &perm))
            .collect();
        self.derive(kept)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, IdealError> {
        self.check_ring(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring).with_budget(self.budget).with_exec(self.exec));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let t = fresh_name(&self.ring, "t");
        let mut names = vec![t.as_str()];
        names.extend(self.ring.var_names().iter().map(|s| s.as_str()));
        let ext = PolyRing::new(&names, self.ring.field().clone(), MonomialOrder::Elimination { split: 1 })?;
        let shift: Vec<usize> = (1..=n).collect();
        let tv = ext.var(0);
        let one_minus_t = ext.one().try_sub(&tv)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.map_vars(&ext, &shift).try_mul(&tv)?);
        }
        for g in &other.gens {
            gens.push(g.map_vars(&ext, &shift).try_mul(&one_minus_t)?);
        }
        let big = self.derive_in(&ext, gens)?;
        let mut back = vec![0];
        back.extend(0..n);
        let kept: Vec<Polynomial<F>> = big
            .groebner_basis()?
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[0] == 0))
            .map(|g| g.map_vars(&self.ring, &back))
            .collect();
        self.derive(kept)
    }

    /// `self : (f)`.
    pub fn quotient_by(&self, f: &Polynomial<F>) -> Result<Self, IdealError> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch.into());
        }
        if f.is_zero() || self.contains(f)? {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget).with_exec(self.exec));
        }
        let principal = self.derive(vec![f.clone()])?;
        let inter = self.intersection(&principal)?;
        let gens = inter
            .gens
            .iter()
            .map(|g| g.div_exact(f).expect("generator of I ∩ (f) is divisible by f"))
            .collect();
        self.derive(gens)
    }

    /// `self : other`, intersecting the colons by each generator.
    pub fn quotient(&self, other: &Self) -> Result<Self, IdealError> {
        self.check_ring(other)?;
        if self.contains_ideal(other)? {
            return Ok(Ideal::unit(&self.ring).with_budget(self.budget).with_exec(self.exec));
        }
        let parts = self.exec.map(&other.gens, |g| self.quotient_by(g));
        let mut acc: Option<Self> = None;
        for p in parts {
            let p = p?;
            acc = Some(match acc {
                None => p,
                Some(a) => a.intersection(&p)?,
            });
        }
        Ok(acc.unwrap())
    }

    pub fn saturation(&self, other: &Self) -> Result<Saturation<F>, IdealError> {
        let mut cur = self.clone();
        let mut exponent = 0;
        loop {
            let next = cur.quotient(other)?;
            if cur.contains_ideal(&next)? {
                return Ok(Saturation { ideal: cur, exponent });
            }
            cur = next;
            exponent += 1;
        }
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>, IdealError> {
        Ok(self
            .groebner_basis()?
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect())
    }

    /// Krull dimension of the quotient ring; `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>, IdealError> {
        if self.is_unit()? {
            return Ok(None);
        }
        let supports: Vec<Vec<usize>> = self.leading_monomials()?.iter().map(|m| m.support()).collect();
        Ok(Some(self.ring.nvars() - min_hitting_set(&supports)))
    }

    /// Sorted reduced Gröbner basis as strings; equal ideals print equal.
    pub fn canonical_strings(&self) -> Result<Vec<String>, IdealError> {
        Ok(self.groebner_basis()?.iter().map(|g| g.to_string()).collect())
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn dedup_keep_order<T: PartialEq>(v: &mut Vec<T>) {
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for x in v.drain(..) {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    *v = out;
}

pub(crate) fn fresh_name<F: Field>(ring: &PolyRing<F>, base: &str) -> String {
    let mut k = 0;
    loop {
        let cand = format!("_{base}{k}");
        if ring.var_index(&cand).is_none() {
            return cand;
        }
        k += 1;
    }
}

/// Size of a smallest set of indices meeting every set in `sets`.
pub(crate) fn min_hitting_set(sets: &[Vec<usize>]) -> usize {
    let mut sets: Vec<Vec<usize>> = sets.to_vec();
    sets.sort_by_key(|s| s.len());
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|m| m.iter().all(|x| s.contains(x))) {
            minimal.push(s);
        }
    }
    let mut best = usize::MAX;
    let mut chosen = Vec::new();
    hit(&minimal, &mut chosen, &mut best);
    best
}

fn hit(sets: &[Vec<usize>], chosen: &mut Vec<usize>, best: &mut usize) {
    if chosen.len() >= *best {
        return;
    }
    match sets.iter().find(|s| !s.iter().any(|x| chosen.contains(x))) {
        None => *best = chosen.len(),
        Some(s) => {
            for &x in s {
                chosen.push(x);
                hit(sets, chosen, best);
                chosen.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Rationals};

    fn ring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals, MonomialOrder::GrevLex).unwrap()
    }

    fn id(r: &Arc<PolyRing<Rationals>>, g: &[&str]) -> Ideal<Rationals> {
        Ideal::from_strs(r, g).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let r = ring(&["x", "y"]);
        let q = id(&r, &["x^2*y"]).quotient(&id(&r, &["y"])).unwrap();
        assert!(q.equals(&id(&r, &["x^2"])).unwrap());
        let i = id(&r, &["x^2 - y^2", "x*y^3"]);
        assert!(i.quotient(&Ideal::unit(&r)).unwrap().equals(&i).unwrap());
        let q = id(&r, &["x^2 - y^2"]).quotient(&id(&r, &["x - y"])).unwrap();
        assert_eq!(q.canonical_strings().unwrap(), vec!["x + y"]);
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let s = id(&r, &["x^2*y"]).saturation(&id(&r, &["y"])).unwrap();
        assert!(s.ideal.equals(&id(&r, &["x^2"])).unwrap());
        assert_eq!(s.exponent, 1);
        let s = id(&r, &["x^2*y", "x*y^2"]).saturation(&id(&r, &["x"])).unwrap();
        assert!(s.ideal.equals(&id(&r, &["y"])).unwrap());
        assert_eq!(s.exponent, 2);
        let i = id(&r, &["x^3", "y"]);
        let s = i.saturation(&Ideal::unit(&r)).unwrap();
        assert!(s.ideal.equals(&i).unwrap());
        assert_eq!(s.exponent, 0);
    }

    #[test]
    fn sum_intersection_elimination() {
        let r = ring(&["x", "y"]);
        let x = id(&r, &["x"]);
        let y = id(&r, &["y"]);
        assert_eq!(x.intersection(&y).unwrap().canonical_strings().unwrap(), vec!["x*y"]);
        assert!(x.sum(&y).unwrap().equals(&id(&r, &["x", "y"])).unwrap());
        let r3 = ring(&["t", "x", "y"]);
        let e = id(&r3, &["t*x", "(1 - t)*y"]).eliminate(&[0]).unwrap();
        assert_eq!(e.canonical_strings().unwrap(), vec!["x*y"]);
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(Ideal::zero(&r).krull_dimension().unwrap(), Some(3));
        assert_eq!(id(&r, &["x", "y"]).krull_dimension().unwrap(), Some(1));
        assert_eq!(Ideal::unit(&r).krull_dimension().unwrap(), None);
        let r2 = ring(&["x", "y"]);
        let i = id(&r2, &["x^2 + y^2 - 1", "x - y"]);
        assert_eq!(i.krull_dimension().unwrap(), Some(0));
        let lms: Vec<String> = i
            .leading_monomials()
            .unwrap()
            .iter()
            .map(|m| r2.monomial(m.exps().to_vec()).to_string())
            .collect();
        assert_eq!(lms, vec!["x", "y^2"]);
    }

    #[test]
    fn works_over_prime_fields() {
        let f = PrimeField::new(32003).unwrap();
        let r = PolyRing::new(&["x", "y"], f, MonomialOrder::GrevLex).unwrap();
        let i = Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap();
        let q = i.quotient(&Ideal::from_strs(&r, &["x + y"]).unwrap()).unwrap();
        assert_eq!(q.canonical_strings().unwrap(), vec!["x - y"]);
    }

    #[test]
    fn hitting_set() {
        assert_eq!(min_hitting_set(&[vec![0, 1], vec![1, 2], vec![2, 3]]), 2);
        assert_eq!(min_hitting_set(&[]), 0);
        assert_eq!(min_hitting_set(&[vec![0], vec![1], vec![2]]), 3);
    }
}
