use std::ops::RangeInclusive;
use std::sync::Arc;

use super::{JetError, PolySeries, TruncatedArc};
use crate::ideal::Ideal;
use crate::poly::{Field, MonomialOrder, PolyRing, Polynomial};
use crate::singularity::AffineSubscheme;

pub fn jet_var_name(base: &str, j: usize) -> String {
    format!("{base}_{j}")
}

/// Ring of `n`-jets: variables `{x}_{j}` for every base variable `x` and
/// `0 <= j <= n`, highest level first so that eliminating high levels is
/// eliminating a leading block.
pub(crate) fn jet_ring<F: Field>(base: &Arc<PolyRing<F>>, n: usize) -> Result<Arc<PolyRing<F>>, JetError> {
    let names: Vec<String> = (0..=n)
        .rev()
        .flat_map(|j| base.var_names().iter().map(move |v| jet_var_name(v, j)))
        .collect();
    Ok(PolyRing::new(&names, base.field().clone(), MonomialOrder::GrevLex)?)
}

pub(crate) fn jet_var_index(n: usize, nvars: usize, i: usize, j: usize) -> usize {
    (n - j) * nvars + i
}

/// `x_i(t) = sum_j {x_i}_j t^j` in the level-`n` jet ring, modulo `t^precision`.
pub(crate) fn generic_jet<F: Field>(ring: &Arc<PolyRing<F>>, nbase: usize, n: usize, precision: usize) -> Vec<PolySeries<F>> {
    (0..nbase)
        .map(|i| {
            let coeffs = (0..precision)
                .map(|j| if j <= n { ring.var(jet_var_index(n, nbase, i, j)) } else { ring.zero() })
                .collect();
            PolySeries { coeffs }
        })
        .collect()
}

/// Coefficients of `t^0, ..., t^(upto-1)` of every generator along the
/// generic `n`-jet, level by level.
pub(crate) fn jet_equations<F: Field>(
    gens: &[Polynomial<F>],
    ring: &Arc<PolyRing<F>>,
    n: usize,
    upto: usize,
) -> Vec<Polynomial<F>> {
    if upto == 0 || gens.is_empty() {
        return Vec::new();
    }
    let nbase = gens[0].ring().nvars();
    let x = generic_jet(ring, nbase, n, upto);
    let expanded: Vec<PolySeries<F>> = gens.iter().map(|h| PolySeries::substitute(h, &x, upto)).collect();
    (0..upto)
        .flat_map(|j| expanded.iter().map(move |s| s.coeffs[j].clone()))
        .filter(|p| !p.is_zero())
        .collect()
}

#[derive(Clone, Debug)]
pub struct JetIdeal<F: Field> {
    base_ring: Arc<PolyRing<F>>,
    level: usize,
    ring: Arc<PolyRing<F>>,
    ideal: Ideal<F>,
}

impl<F: Field> JetIdeal<F> {
    /// Jet ideal of `V(ideal)` at level `n`.
    pub fn of_ideal(ideal: &Ideal<F>, n: usize) -> Result<Self, JetError> {
        let base_ring = ideal.ring().clone();
        let ring = jet_ring(&base_ring, n)?;
        let gens = jet_equations(ideal.generators(), &ring, n, n + 1);
        let ideal = Ideal::new(&ring, gens)?.with_budget(ideal.budget()).with_exec(ideal.exec());
        Ok(JetIdeal {
            base_ring,
            level: n,
            ring,
            ideal,
        })
    }

    pub fn base_ring(&self) -> &Arc<PolyRing<F>> {
        &self.base_ring
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// Index of `{x_i}_j` in the jet ring.
    pub fn var(&self, i: usize, j: usize) -> usize {
        jet_var_index(self.level, self.base_ring.nvars(), i, j)
    }

    pub fn krull_dimension(&self) -> Result<Option<usize>, JetError> {
        Ok(self.ideal.krull_dimension()?)
    }

    /// Coordinates of the `n`-jet of `arc` in the jet ring's variable order.
    pub fn point_of(&self, arc: &TruncatedArc<F>) -> Result<Vec<F::Elem>, JetError> {
        let jet = arc.truncate(self.level)?;
        let nb = self.base_ring.nvars();
        let mut pt = vec![self.ring.field().zero(); self.ring.nvars()];
        for i in 0..nb {
            for j in 0..=self.level {
                pt[self.var(i, j)] = jet.coefficient(i, j).cloned().unwrap();
            }
        }
        Ok(pt)
    }

    pub fn contains_jet(&self, arc: &TruncatedArc<F>) -> Result<bool, JetError> {
        let pt = self.point_of(arc)?;
        for g in self.ideal.generators() {
            if !self.ring.field().is_zero(&g.evaluate(&pt)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn jet_ideal<F: Field>(x: &AffineSubscheme<F>, n: usize) -> Result<JetIdeal<F>, JetError> {
    JetIdeal::of_ideal(x.ideal(), n)
}

/// Dimensions of `{ord_I >= p}` and `{ord_I >= p+1}` inside `J_n A` over
/// the center `V(Z)`. `None` is the empty locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactLocus {
    pub at_least: Option<usize>,
    /// `None` also when `p + 1 > n + 1`, see `next_visible`.
    pub at_least_next: Option<usize>,
    pub next_visible: bool,
    /// Dimension of `{ord_I = p}` when it is read off unambiguously.
    pub exact: Option<usize>,
    pub ambiguous: bool,
}

fn contact_ideal<F: Field>(
    ideal: &Ideal<F>,
    p: usize,
    n: usize,
    center: &Ideal<F>,
    ring: &Arc<PolyRing<F>>,
) -> Result<Ideal<F>, JetError> {
    let nb = ideal.ring().nvars();
    let mut gens = jet_equations(ideal.generators(), ring, n, p);
    let base_map: Vec<usize> = (0..nb).map(|i| jet_var_index(n, nb, i, 0)).collect();
    gens.extend(center.generators().iter().map(|g| g.map_vars(ring, &base_map)));
    Ok(Ideal::new(ring, gens)?.with_budget(ideal.budget()).with_exec(ideal.exec()))
}

pub fn contact_locus_dim<F: Field>(ideal: &Ideal<F>, p: usize, n: usize, center: &Ideal<F>) -> Result<ContactLocus, JetError> {
    if p > n + 1 {
        return Err(JetError::Invalid(format!("order {p} is not visible at level {n}")));
    }
    if !PolyRing::same(ideal.ring(), center.ring()) {
        return Err(JetError::Invalid("ideal and center live in different rings".into()));
    }
    let ring = jet_ring(ideal.ring(), n)?;
    let at_least = contact_ideal(ideal, p, n, center, &ring)?.krull_dimension()?;
    let next_visible = p < n + 1;
    let at_least_next = if next_visible {
        contact_ideal(ideal, p + 1, n, center, &ring)?.krull_dimension()?
    } else {
        None
    };
    let (exact, ambiguous) = match (at_least, at_least_next, next_visible) {
        (None, _, _) => (None, false),
        (Some(a), None, true) => (Some(a), false),
        (Some(a), Some(b), true) if a > b => (Some(a), false),
        _ => (None, true),
    };
    Ok(ContactLocus {
        at_least,
        at_least_next,
        next_visible,
        exact,
        ambiguous,
    })
}

#[derive(Clone, Debug)]
pub struct StabilizationReport<F: Field> {
    pub level: usize,
    /// `pi_{n m}(J_m Y)` as ideals of the level-`n` jet ring, per `m`.
    pub images: Vec<(usize, Ideal<F>)>,
    /// First `m` with `image(m) == image(m+1)`.
    pub stabilized_at: Option<usize>,
}

pub fn image_stabilization_probe<F: Field>(
    y: &AffineSubscheme<F>,
    n: usize,
    m_range: RangeInclusive<usize>,
) -> Result<StabilizationReport<F>, JetError> {
    if *m_range.start() < n {
        return Err(JetError::Level { from: *m_range.start(), to: n });
    }
    let base = y.ideal().ring().clone();
    let nb = base.nvars();
    let target = jet_ring(&base, n)?;
    let mut images: Vec<(usize, Ideal<F>)> = Vec::new();
    let mut stabilized_at = None;
    for m in m_range {
        let jm = JetIdeal::of_ideal(y.ideal(), m)?;
        let high: Vec<usize> = (0..(m - n) * nb).collect();
        let elim = jm.ideal().eliminate(&high)?;
        let var_map: Vec<usize> = (0..jm.ring().nvars())
            .map(|v| {
                let (lvl, i) = (m - v / nb, v % nb);
                if lvl <= n {
                    jet_var_index(n, nb, i, lvl)
                } else {
                    0
                }
            })
            .collect();
        let img = elim.map_into(&target, &var_map)?;
        if let Some((pm, prev)) = images.last() {
            if stabilized_at.is_none() && prev.equals(&img)? {
                stabilized_at = Some(*pm);
            }
        }
        images.push((m, img));
    }
    Ok(StabilizationReport {
        level: n,
        images,
        stabilized_at,
    })
}
