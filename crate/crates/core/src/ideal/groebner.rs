//! Buchberger's algorithm with the Gebauer-Möller criteria.
//!
//! Pairs are processed smallest (sugar, lcm) first. The returned basis is
//! reduced, monic and sorted by increasing leading monomial, so it is a
//! canonical form of the ideal for the ring's order.

use std::cmp::Ordering;

use super::{Budget, IdealError};
use crate::poly::{Field, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'a, F: Field> {
    order: &'a MonomialOrder,
    polys: Vec<Polynomial<F>>,
    heads: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<'_, F> {
    fn pair_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| self.order.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    fn active_polys(&self) -> Vec<Polynomial<F>> {
        (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| self.polys[k].clone())
            .collect()
    }

    fn insert(&mut self, h: Polynomial<F>, sugar: u32) {
        let hm = h.leading_monomial().unwrap().clone();
        let k = self.polys.len();

        let mut cands: Vec<(usize, Monomial)> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| (g, hm.lcm(&self.heads[g])))
            .collect();
        // chain criterion among the new pairs: drop {h,g1} if some other
        // lcm(h,g2) properly divides it (equal lcms keep the first one)
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if hm.is_coprime(&self.heads[cands[a].0]) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].1, &cands[b].1);
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion
        let mut fresh = Vec::new();
        for (idx, (g, l)) in cands.drain(..).enumerate() {
            if keep[idx] && !hm.is_coprime(&self.heads[g]) {
                let s = (sugar + l.degree() - hm.degree()).max(self.sugar[g] + l.degree() - self.heads[g].degree());
                fresh.push(Pair { i: g, j: k, lcm: l, sugar: s });
            }
        }
        // old pairs made redundant by h
        let heads = &self.heads;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && hm.lcm(&heads[p.i]) != p.lcm && hm.lcm(&heads[p.j]) != p.lcm)
        });
        self.pairs.extend(fresh);
        for g in 0..k {
            if self.active[g] && hm.divides(&self.heads[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.heads.push(hm);
        self.sugar.push(sugar);
        self.active.push(true);
        let mut pairs = std::mem::take(&mut self.pairs);
        pairs.sort_by(|a, b| self.pair_cmp(b, a));
        self.pairs = pairs;
    }
}

fn spoly<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, lcm: &Monomial) -> Polynomial<F> {
    // both monic
    let field = f.field();
    let uf = f.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    let ug = g.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    f.mul_term(&uf, &field.one()).sub_mul_term(&field.one(), &ug, g)
}

/// Reduced Gröbner basis of the ideal generated by `gens` for the order
/// of their ring.
pub fn groebner_basis<F: Field>(
    gens: &[Polynomial<F>],
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>, IdealError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !PolyRing::same(g.ring(), &ring)) {
        return Err(PolyError::RingMismatch.into());
    }
    let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![ring.one()]);
    }
    let order = ring.order();
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();

    let mut st = State {
        order,
        polys: Vec::new(),
        heads: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let h = g.reduce_by(&st.active_polys(), true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        let s = g.total_degree().unwrap();
        st.insert(h.monic(), s);
    }

    let mut processed = 0usize;
    let mut reducers = st.active_polys();
    let mut reducers_stale = false;
    while let Some(p) = st.pairs.pop() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(IdealError::PairBudget(budget.max_pairs));
        }
        if p.lcm.degree() > budget.max_degree {
            return Err(IdealError::DegreeCap {
                cap: budget.max_degree,
                degree: p.lcm.degree(),
            });
        }
        if processed.is_multiple_of(16) {
            budget.check_time()?;
        }
        if reducers_stale {
            reducers = st.active_polys();
            reducers_stale = false;
        }
        let s = spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm);
        let h = s.reduce_by(&reducers, true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        st.insert(h.monic(), p.sugar);
        reducers_stale = true;
    }

    let mut basis = st.active_polys();
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<Polynomial<F>> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = Polynomial::from_terms(&ring, vec![basis[k].terms()[0].clone()]);
        let tail = basis[k].try_sub(&lead)?.reduce_by(&others, true);
        out.push(lead.try_add(&tail)?.monic());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};
    use std::sync::Arc;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals, order).unwrap()
    }

    fn gb(r: &Arc<PolyRing<Rationals>>, gens: &[&str]) -> Vec<String> {
        let g: Vec<_> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        groebner_basis(&g, &Budget::default())
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn small_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(gb(&r, &["x^2", "x"]), vec!["x"]);
        assert_eq!(gb(&r, &["x - y", "x + y"]), vec!["y", "x"]);
        assert_eq!(gb(&r, &["x^2 + y^2 - 1", "x - y"]), vec!["x - y", "y^2 - 1/2"]);
        assert_eq!(gb(&r, &["x", "x + 1"]), vec!["1"]);
    }

    #[test]
    fn lex_twisted_cubic() {
        let r = ring(&["z", "y", "x"], MonomialOrder::Lex);
        assert_eq!(
            gb(&r, &["y - x^2", "z - x^3"]),
            vec!["y - x^2", "z - x^3"]
        );
        let r = ring(&["x", "y", "z", "w"], MonomialOrder::GrevLex);
        let b = gb(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn cyclic_four_is_stable() {
        let r = ring(&["a", "b", "c", "d"], MonomialOrder::GrevLex);
        let b = gb(
            &r,
            &[
                "a + b + c + d",
                "a*b + b*c + c*d + d*a",
                "a*b*c + b*c*d + c*d*a + d*a*b",
                "a*b*c*d - 1",
            ],
        );
        assert_eq!(b.len(), 7);
        let again: Vec<&str> = b.iter().map(|s| s.as_str()).collect();
        assert_eq!(gb(&r, &again), b);
    }

    #[test]
    fn budgets_are_reported() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let g = vec![r.parse("x^3 - y").unwrap(), r.parse("x*y^2 - 1").unwrap()];
        let tight = Budget {
            max_degree: 2,
            ..Budget::default()
        };
        assert!(matches!(groebner_basis(&g, &tight), Err(IdealError::DegreeCap { .. })));
        let few = Budget {
            max_pairs: 0,
            ..Budget::default()
        };
        assert_eq!(groebner_basis(&g, &few), Err(IdealError::PairBudget(0)));
    }
}
