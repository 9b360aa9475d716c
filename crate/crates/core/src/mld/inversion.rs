use std::sync::Arc;

use num_rational::BigRational;

use super::{mld_monomial, MldError, MldResult, MonomialPair};
use crate::ideal::{Ideal, MonomialIdeal};
use crate::poly::{Field, PolyRing, Polynomial};
use crate::singularity::{jacobian_ideal, weak_defect_sum, AffineSubscheme, SliceOptions};

#[derive(Clone, Debug)]
pub struct InversionReport {
    pub d: usize,
    pub c: usize,
    pub r: u32,
    /// Variables eliminated by the linear change of coordinates.
    pub pivots: Vec<usize>,
    /// `O_X(-r D_X)` is the unit ideal.
    pub defect_trivial: bool,
    pub slices_used: usize,
    /// `mld_0(X, D_X)` on the chart `X = A^d`.
    pub left: MldResult,
    /// `mld_0(A, I_X^c)` after the change of coordinates.
    pub right: MldResult,
    pub pass: bool,
}

/// Both sides of inversion of adjunction at the origin for a linear
/// subspace `X`, where each side reduces to a monomial pair.
pub fn inversion_check<F: Field>(x: &AffineSubscheme<F>, r: u32, seeds: &[u64]) -> Result<InversionReport, MldError> {
    let ring = x.ideal().ring().clone();
    let n = ring.nvars();
    let gb = x.ideal().groebner_basis()?.to_vec();
    if gb.iter().any(|g| g.total_degree() != Some(1) || !g.is_homogeneous()) {
        if n == 2 && gb.len() == 1 && gb[0].total_degree() == Some(2) && gb[0].is_homogeneous() {
            return node_in_plane(x, &gb[0], r, seeds);
        }
        return Err(MldError::NotMonomialAccessible(
            "X must be a linear subspace or a node in the plane".into(),
        ));
    }
    let c = gb.len();
    let d = n - c;
    // reduced basis: x_p + sum over free variables
    let pivots: Vec<usize> = gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().support()[0])
        .collect();
    let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let substitution = |keep_pivots: bool, target: &Arc<PolyRing<F>>, image_of: &dyn Fn(usize) -> usize| {
        let mut images: Vec<Polynomial<F>> = vec![target.zero(); n];
        for &j in &free {
            images[j] = target.var(image_of(j));
        }
        for (g, &p) in gb.iter().zip(&pivots) {
            let mut img = if keep_pivots { target.var(image_of(p)) } else { target.zero() };
            for (m, coef) in g.terms() {
                let v = m.support()[0];
                if v != p {
                    let t = target.var(image_of(v)).scale(coef);
                    img = img.try_sub(&t).unwrap();
                }
            }
            images[p] = img;
        }
        images
    };

    let images = substitution(true, &ring, &|i| i);
    let moved: Vec<Polynomial<F>> = x
        .ideal()
        .generators()
        .iter()
        .map(|g| g.compose(&ring, &images))
        .collect::<Result<_, _>>()
        .map_err(crate::ideal::IdealError::from)?;
    let ix = MonomialIdeal::from_ideal(&Ideal::new(&ring, moved)?)?;
    let right = mld_monomial(&MonomialPair::affine(n, vec![(ix, BigRational::from_integer(c.into()))])?)?;

    let defect = weak_defect_sum(x, r, seeds, &SliceOptions::default())?;
    let defect_trivial = defect.ideal.is_unit()?;
    let boundary = if defect_trivial {
        vec![]
    } else {
        if d == 0 {
            return Err(MldError::NotMonomialAccessible("nontrivial defect at an isolated point".into()));
        }
        let names: Vec<String> = free.iter().map(|&j| ring.var_names()[j].clone()).collect();
        let chart = PolyRing::new(&names, ring.field().clone(), ring.order().clone()).map_err(crate::ideal::IdealError::from)?;
        let images = substitution(false, &chart, &|j| free.iter().position(|&f| f == j).unwrap());
        let restricted: Vec<Polynomial<F>> = defect
            .ideal
            .generators()
            .iter()
            .map(|g| g.compose(&chart, &images))
            .collect::<Result<_, _>>()
            .map_err(crate::ideal::IdealError::from)?;
        let m = MonomialIdeal::from_ideal(&Ideal::new(&chart, restricted)?)
            .map_err(|_| MldError::NotMonomialAccessible("defect is not monomial on the chart".into()))?;
        vec![(m, BigRational::new(1.into(), (r as i64).into()))]
    };
    let left = mld_monomial(&MonomialPair::affine(d, boundary)?)?;
    let pass = left.value == right.value;
    Ok(InversionReport {
        d,
        c,
        r,
        pivots,
        defect_trivial,
        slices_used: defect.slices_used,
        left,
        right,
        pass,
    })
}

/// Roots `[s : u]` of a binary form, searched among `[1 : 0]` and
/// `[p/q : 1]` with `|p|, q <= ROOT_SEARCH`.
const ROOT_SEARCH: i64 = 12;

fn projective_roots<F: Field>(f: &Polynomial<F>) -> Vec<(F::Elem, F::Elem)> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let eval = |s: &F::Elem, u: &F::Elem| {
        f.compose(&ring, &[ring.constant(s.clone()), ring.constant(u.clone())])
            .map(|v| v.is_zero())
            .unwrap_or(false)
    };
    let mut roots: Vec<(F::Elem, F::Elem)> = Vec::new();
    if eval(&field.one(), &field.zero()) {
        roots.push((field.one(), field.zero()));
    }
    for den in 1..=ROOT_SEARCH {
        for num in -ROOT_SEARCH..=ROOT_SEARCH {
            let Some(t) = field.from_ratio(&BigRational::new(num.into(), den.into())) else {
                continue;
            };
            if eval(&t, &field.one()) && !roots.iter().any(|(s, u)| !field.is_zero(u) && *s == t) {
                roots.push((t, field.one()));
            }
        }
    }
    roots
}

/// `X = V(q)` for a binary quadratic form `q` with two distinct linear
/// factors. The right side moves the factors to coordinates; the left side
/// takes the Jacobian discrepancy on each branch `A^1`, where the log
/// discrepancy of `t -> w t` is `w - ord_w (J'_X + D_X^{1/r})`.
fn node_in_plane<F: Field>(
    x: &AffineSubscheme<F>,
    q: &Polynomial<F>,
    r: u32,
    seeds: &[u64],
) -> Result<InversionReport, MldError> {
    let ring = x.ideal().ring().clone();
    let field = ring.field().clone();
    let roots = projective_roots(q);
    if roots.len() != 2 {
        return Err(MldError::NotMonomialAccessible(
            "quadratic form does not split into distinct rational factors".into(),
        ));
    }
    // l_i = u_i x - s_i y vanishes on the branch through [s_i : u_i]; the
    // inverse of (l_1, l_2) sends the coordinate axes to the branches
    let (s1, u1) = &roots[0];
    let (s2, u2) = &roots[1];
    let det = field.sub(&field.mul(s2, u1), &field.mul(s1, u2));
    let inv = field.inv(&det).expect("distinct roots");
    let lin = |a: &F::Elem, b: &F::Elem| {
        let ta = ring.var(0).scale(&field.mul(a, &inv));
        let tb = ring.var(1).scale(&field.mul(b, &inv));
        ta.try_add(&tb).unwrap()
    };
    // x = (s2 l_1 - s1 l_2) / det, y = (u2 l_1 - u1 l_2) / det
    let images = vec![lin(s2, &field.neg(s1)), lin(u2, &field.neg(u1))];
    let moved = q.compose(&ring, &images).map_err(crate::ideal::IdealError::from)?;
    let ix = MonomialIdeal::from_ideal(&Ideal::new(&ring, vec![moved])?)?;
    let right = mld_monomial(&MonomialPair::affine(2, vec![(ix, BigRational::from_integer(1.into()))])?)?;

    let jac = jacobian_ideal(x)?;
    let defect = weak_defect_sum(x, r, seeds, &SliceOptions::default())?;
    let defect_trivial = defect.ideal.is_unit()?;
    let chart = PolyRing::new(&["t"], field.clone(), ring.order().clone()).map_err(crate::ideal::IdealError::from)?;
    let mut left: Option<MldResult> = None;
    for (s, u) in &roots {
        let branch = [chart.var(0).scale(s), chart.var(0).scale(u)];
        let restrict = |i: &Ideal<F>| -> Result<MonomialIdeal, MldError> {
            let gens: Vec<Polynomial<F>> = i
                .generators()
                .iter()
                .map(|g| g.compose(&chart, &branch))
                .collect::<Result<_, _>>()
                .map_err(crate::ideal::IdealError::from)?;
            Ok(MonomialIdeal::from_ideal(&Ideal::new(&chart, gens)?)?)
        };
        let mut boundary = vec![(restrict(&jac)?, BigRational::from_integer(1.into()))];
        if !defect_trivial {
            boundary.push((restrict(&defect.ideal)?, BigRational::new(1.into(), (r as i64).into())));
        }
        let res = mld_monomial(&MonomialPair::affine(1, boundary)?)?;
        if left.as_ref().is_none_or(|l| res.value < l.value) {
            left = Some(res);
        }
    }
    let left = left.expect("two branches");
    let pass = left.value == right.value;
    Ok(InversionReport {
        d: 1,
        c: 1,
        r,
        pivots: vec![],
        defect_trivial,
        slices_used: defect.slices_used,
        left,
        right,
        pass,
    })
}
