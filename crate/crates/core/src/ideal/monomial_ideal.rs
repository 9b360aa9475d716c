//! Monomial ideals, optionally inside the semigroup ring of a cyclic
//! sublattice `{u >= 0 : sum a_i u_i = 0 mod m}` (the invariant ring of a
//! cyclic quotient singularity), with Newton-polyhedron integral closure.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{Ideal, IdealError};
use crate::exec::Exec;
use crate::lp::{q, LinearProgram, LpOutcome, Relation, Q};
use crate::poly::{Field, PolyRing};

const MAX_CLOSURE_BOX: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicLattice {
    pub modulus: u32,
    pub weights: Vec<u32>,
}

impl CyclicLattice {
    pub fn new(modulus: u32, weights: Vec<u32>) -> Result<Self, IdealError> {
        if modulus == 0 {
            return Err(IdealError::Invalid("lattice modulus must be positive".into()));
        }
        Ok(CyclicLattice { modulus, weights })
    }

    pub fn contains(&self, u: &[u32]) -> bool {
        let s: u64 = u
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| x as u64 * w as u64)
            .sum();
        s.is_multiple_of(self.modulus as u64)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    lattice: Option<CyclicLattice>,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Monomial ideal of the polynomial ring in `nvars` variables.
    pub fn new(nvars: usize, gens: Vec<Vec<u32>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), nvars, "exponent vector length");
        }
        let mut m = MonomialIdeal {
            nvars,
            lattice: None,
            gens,
        };
        m.minimalize();
        m
    }

    /// Monomial ideal of the semigroup ring of `lattice`; every generator
    /// must lie in the lattice.
    pub fn in_lattice(nvars: usize, lattice: CyclicLattice, gens: Vec<Vec<u32>>) -> Result<Self, IdealError> {
        if lattice.weights.len() != nvars {
            return Err(IdealError::Invalid("lattice weights do not match the arity".into()));
        }
        for g in &gens {
            if g.len() != nvars || !lattice.contains(g) {
                return Err(IdealError::Invalid(format!("exponent {g:?} is not a lattice point")));
            }
        }
        let mut m = MonomialIdeal {
            nvars,
            lattice: Some(lattice),
            gens,
        };
        m.minimalize();
        Ok(m)
    }

    /// Powers of the maximal ideal: all lattice points of degree `k`
    /// (minimalized), i.e. `m^k` of the polynomial ring when unrestricted.
    pub fn all_of_degree(nvars: usize, k: u32) -> Self {
        MonomialIdeal::new(nvars, exponents_of_degree(nvars, k))
    }

    /// Falls back on the reduced Gröbner basis when the generators are not
    /// all terms.
    pub fn from_ideal<F: Field>(ideal: &Ideal<F>) -> Result<Self, IdealError> {
        let gens = if ideal.is_monomial() {
            ideal.generators()
        } else {
            let gb = ideal.groebner_basis()?;
            if !gb.iter().all(|g| g.is_term()) {
                return Err(IdealError::NotMonomial);
            }
            gb
        };
        Ok(MonomialIdeal::new(
            ideal.ring().nvars(),
            gens.iter().map(|g| g.leading_monomial().unwrap().exps().to_vec()).collect(),
        ))
    }

    pub fn to_ideal<F: Field>(&self, ring: &Arc<PolyRing<F>>) -> Result<Ideal<F>, IdealError> {
        if ring.nvars() != self.nvars {
            return Err(IdealError::Invalid("arity mismatch".into()));
        }
        Ideal::new(ring, self.gens.iter().map(|g| ring.monomial(g.clone())).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn lattice(&self) -> Option<&CyclicLattice> {
        self.lattice.as_ref()
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn in_semigroup(&self, u: &[u32]) -> bool {
        self.lattice.as_ref().is_none_or(|l| l.contains(u))
    }

    fn same_ambient(&self, other: &Self) -> Result<(), IdealError> {
        if self.nvars != other.nvars || self.lattice != other.lattice {
            return Err(IdealError::Invalid("monomial ideals over different semigroups".into()));
        }
        Ok(())
    }

    fn with_gens(&self, gens: Vec<Vec<u32>>) -> Self {
        let mut m = MonomialIdeal {
            nvars: self.nvars,
            lattice: self.lattice.clone(),
            gens,
        };
        m.minimalize();
        m
    }

    fn minimalize(&mut self) {
        let mut g = std::mem::take(&mut self.gens);
        g.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        g.dedup();
        let mut out: Vec<Vec<u32>> = Vec::with_capacity(g.len());
        for u in g {
            if !out.iter().any(|v| dominates(&u, v)) {
                out.push(u);
            }
        }
        self.gens = out;
    }

    /// Minimal semigroup points that dominate `v` coordinatewise.
    fn lift(&self, v: Vec<u32>) -> Vec<Vec<u32>> {
        match &self.lattice {
            None => vec![v],
            Some(l) => {
                let m = l.modulus;
                let mut out = Vec::new();
                for_each_in_box(&vec![m - 1; self.nvars], |delta| {
                    let u: Vec<u32> = v.iter().zip(delta).map(|(a, b)| a + b).collect();
                    if l.contains(&u) {
                        out.push(u);
                    }
                });
                let tmp = self.with_gens(out);
                tmp.gens
            }
        }
    }

    /// Lattice points of a polynomial-ring monomial ideal, as an ideal of
    /// the semigroup ring of `lattice`.
    pub fn contract_to(&self, lattice: CyclicLattice) -> Result<Self, IdealError> {
        if self.lattice.is_some() {
            return Err(IdealError::Invalid("ideal is already a lattice ideal".into()));
        }
        let empty = MonomialIdeal::in_lattice(self.nvars, lattice, Vec::new())?;
        let gens = self.gens.iter().flat_map(|g| empty.lift(g.clone())).collect();
        Ok(empty.with_gens(gens))
    }

    pub fn contains(&self, u: &[u32]) -> bool {
        self.in_semigroup(u) && self.gens.iter().any(|g| dominates(u, g))
    }

    /// Whether `other` is contained in `self`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_ambient(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(self.with_gens(g))
    }

    pub fn product(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_ambient(other)?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(self.with_gens(g))
    }

    pub fn power(&self, r: u32) -> Self {
        let mut acc = self.with_gens(vec![vec![0; self.nvars]]);
        for _ in 0..r {
            acc = acc.product(self).unwrap();
        }
        acc
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_ambient(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.extend(self.lift(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()));
            }
        }
        Ok(self.with_gens(g))
    }

    /// `self : other` in the semigroup ring.
    pub fn quotient(&self, other: &Self) -> Result<Self, IdealError> {
        self.same_ambient(other)?;
        let mut acc = self.with_gens(vec![vec![0; self.nvars]]);
        for b in &other.gens {
            let mut g = Vec::new();
            for a in &self.gens {
                g.extend(self.lift(a.iter().zip(b).map(|(x, y)| x.saturating_sub(*y)).collect()));
            }
            acc = acc.intersection(&self.with_gens(g))?;
        }
        Ok(acc)
    }

    /// Whether `u` lies in the Newton polyhedron `conv(gens) + R^n_{>=0}`.
    pub fn newton_contains(&self, u: &[u32]) -> bool {
        if self.gens.is_empty() {
            return false;
        }
        if self.gens.iter().any(|g| dominates(u, g)) {
            return true;
        }
        let total = |v: &[u32]| v.iter().map(|&e| e as u64).sum::<u64>();
        if self.gens.iter().all(|g| total(g) > total(u)) {
            return false;
        }
        let k = self.gens.len();
        let mut lp = LinearProgram::new(k);
        lp.add(vec![q(1); k], Relation::Eq, q(1));
        for i in 0..self.nvars {
            let row: Vec<Q> = self.gens.iter().map(|g| q(g[i] as i64)).collect();
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            lp.add(row, Relation::Le, q(u[i] as i64));
        }
        matches!(lp.solve(), LpOutcome::Optimal { .. })
    }

    pub fn integral_closure(&self) -> Result<Self, IdealError> {
        self.integral_closure_with(Exec::default())
    }

    /// Lattice points of the Newton polyhedron, minimalized. Minimal
    /// points lie in the box spanned by the coordinatewise maximum of the
    /// generators (widened by the lattice modulus).
    pub fn integral_closure_with(&self, exec: Exec) -> Result<Self, IdealError> {
        if self.gens.is_empty() || self.is_unit() {
            return Ok(self.clone());
        }
        let pad = self.lattice.as_ref().map_or(0, |l| l.modulus - 1);
        let bounds: Vec<u32> = (0..self.nvars)
            .map(|i| self.gens.iter().map(|g| g[i]).max().unwrap() + pad)
            .collect();
        let size: u64 = bounds.iter().map(|&b| b as u64 + 1).product();
        if size > MAX_CLOSURE_BOX {
            return Err(IdealError::Invalid(format!(
                "closure search box has {size} points (limit {MAX_CLOSURE_BOX})"
            )));
        }
        let mut layers: Vec<Vec<Vec<u32>>> = Vec::new();
        for_each_in_box(&bounds, |u| {
            if self.in_semigroup(u) {
                let d = u.iter().sum::<u32>() as usize;
                if layers.len() <= d {
                    layers.resize(d + 1, Vec::new());
                }
                layers[d].push(u.to_vec());
            }
        });
        // by increasing degree: a point dominating a known minimal point is
        // in the closure and not minimal
        let mut found: Vec<Vec<u32>> = Vec::new();
        for layer in layers {
            let open: Vec<Vec<u32>> = layer
                .into_iter()
                .filter(|u| !found.iter().any(|v| dominates(u, v)))
                .collect();
            let hits = exec.map(&open, |u| self.newton_contains(u));
            found.extend(open.into_iter().zip(hits).filter(|(_, h)| *h).map(|(u, _)| u));
        }
        Ok(self.with_gens(found))
    }

    pub fn is_integrally_closed(&self) -> Result<bool, IdealError> {
        Ok(self.integral_closure()? == *self)
    }

    /// `min <w, g>` over generators; `None` for the zero ideal.
    pub fn order(&self, weights: &[u64]) -> Option<u64> {
        self.gens
            .iter()
            .map(|g| g.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum())
            .min()
    }

    /// Krull dimension of `k[x]/I` (polynomial case); `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let supports: Vec<Vec<usize>> = self
            .gens
            .iter()
            .map(|g| (0..self.nvars).filter(|&i| g[i] > 0).collect())
            .collect();
        Some(self.nvars - super::ops::min_hitting_set(&supports))
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| monomial_string(g, names))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

pub(crate) fn monomial_string(g: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = g
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn dominates(u: &[u32], v: &[u32]) -> bool {
    u.iter().zip(v).all(|(a, b)| a >= b)
}

fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    let n = bounds.len();
    let mut u = vec![0u32; n];
    loop {
        f(&u);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if u[i] < bounds[i] {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

/// All exponent vectors of total degree `k` in `n` variables.
pub fn exponents_of_degree(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let i = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 2]]);
        let c = i.integral_closure().unwrap();
        assert_eq!(c, MonomialIdeal::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]));
        let x = MonomialIdeal::new(2, vec![vec![1, 0]]);
        assert_eq!(x.integral_closure().unwrap(), x);
        // (x^3, y^2): closure adds x^2*y
        let j = MonomialIdeal::new(2, vec![vec![3, 0], vec![0, 2]]);
        let cj = j.integral_closure().unwrap();
        assert!(cj.contains(&[2, 1]));
        assert!(!cj.contains(&[1, 1]));
    }

    #[test]
    fn cone_closure_of_pure_powers() {
        // inside the invariant ring of 1/3(1,1,1): (x^21, y^21, z^21) has
        // closure generated by all degree-21 monomials
        let l = CyclicLattice::new(3, vec![1, 1, 1]).unwrap();
        let lower = MonomialIdeal::in_lattice(3, l.clone(), vec![vec![21, 0, 0], vec![0, 21, 0], vec![0, 0, 21]]).unwrap();
        let m7 = MonomialIdeal::in_lattice(3, l, exponents_of_degree(3, 21)).unwrap();
        assert_eq!(lower.integral_closure().unwrap(), m7);
    }

    #[test]
    fn lattice_quotient() {
        let l = CyclicLattice::new(3, vec![1, 1, 1]).unwrap();
        let m = |k: u32| MonomialIdeal::in_lattice(3, l.clone(), exponents_of_degree(3, 3 * k)).unwrap();
        assert_eq!(m(7).quotient(&m(2)).unwrap(), m(5));
        assert_eq!(m(2).quotient(&m(2)).unwrap(), m(0));
    }

    #[test]
    fn polynomial_ring_operations() {
        let a = MonomialIdeal::new(2, vec![vec![1, 0]]);
        let b = MonomialIdeal::new(2, vec![vec![0, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), MonomialIdeal::new(2, vec![vec![1, 1]]));
        let i = MonomialIdeal::new(2, vec![vec![2, 1]]);
        assert_eq!(i.quotient(&b).unwrap(), MonomialIdeal::new(2, vec![vec![2, 0]]));
        assert_eq!(MonomialIdeal::all_of_degree(3, 2).generators().len(), 6);
        assert_eq!(a.krull_dimension(), Some(1));
    }
}
