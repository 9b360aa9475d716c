//! Minimal log discrepancies of monomial pairs over the origin of affine
//! space and of cyclic quotient charts, searched over monomial (toric)
//! valuations with exact rational linear programming.

mod estimate;
mod inversion;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::ideal::{CyclicLattice, IdealError, MonomialIdeal, QIdeal};
use crate::jets::JetError;
use crate::lp::{LinearProgram, LpOutcome, Relation, Q};
use crate::poly::Field;
use crate::singularity::SingularityError;

pub use estimate::{mld_jet_estimate, JetEstimate, JetWitness};
pub use inversion::{inversion_check, InversionReport};

const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Debug, Error)]
pub enum MldError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error("invalid pair: {0}")]
    Invalid(String),
    #[error("weight {0} is not a positive point of the lattice")]
    NotInLattice(String),
    #[error("branch and bound exceeded {0} nodes")]
    Budget(usize),
    #[error("not monomial-accessible: {0}")]
    NotMonomialAccessible(String),
}

impl MldError {
    pub fn is_budget(&self) -> bool {
        match self {
            MldError::Budget(_) => true,
            MldError::Ideal(e) => e.is_budget(),
            MldError::Jet(e) => e.is_budget(),
            MldError::Singularity(e) => e.is_budget(),
            _ => false,
        }
    }
}

/// `(A, prod I_j^{a_j})` with monomial `I_j`, on `A^N` or on the quotient
/// chart `A^N / (Z/m)` whose cocharacter lattice is `Z^N + Z a/m`.
#[derive(Clone, Debug)]
pub struct MonomialPair {
    arity: usize,
    lattice: Option<CyclicLattice>,
    boundary: Vec<(MonomialIdeal, Q)>,
}

impl MonomialPair {
    pub fn affine(arity: usize, boundary: Vec<(MonomialIdeal, Q)>) -> Result<Self, MldError> {
        Self::build(arity, None, boundary)
    }

    /// Monomials of the boundary are invariant exponent vectors, i.e.
    /// points of `lattice`.
    pub fn quotient(lattice: CyclicLattice, boundary: Vec<(MonomialIdeal, Q)>) -> Result<Self, MldError> {
        let n = lattice.weights.len();
        for &a in &lattice.weights {
            if a.gcd(&lattice.modulus) != 1 {
                return Err(MldError::Invalid(format!(
                    "weight {a} is not coprime to the modulus {}",
                    lattice.modulus
                )));
            }
        }
        for (b, _) in &boundary {
            if let Some(g) = b.generators().iter().find(|g| !lattice.contains(g)) {
                return Err(MldError::Invalid(format!("boundary monomial {g:?} is not invariant")));
            }
        }
        Self::build(n, Some(lattice), boundary)
    }

    pub fn from_qideal<F: Field>(q: &QIdeal<F>) -> Result<Self, MldError> {
        let n = q
            .factors()
            .first()
            .map_or(0, |(i, _)| i.ring().nvars());
        let boundary = q
            .factors()
            .iter()
            .map(|(i, a)| Ok((MonomialIdeal::from_ideal(i)?, a.clone())))
            .collect::<Result<Vec<_>, MldError>>()?;
        Self::affine(n, boundary)
    }

    fn build(arity: usize, lattice: Option<CyclicLattice>, boundary: Vec<(MonomialIdeal, Q)>) -> Result<Self, MldError> {
        let mut kept = Vec::new();
        for (b, a) in boundary {
            if b.nvars() != arity {
                return Err(MldError::Invalid(format!("boundary ideal has {} variables, expected {arity}", b.nvars())));
            }
            if a.is_negative() {
                return Err(MldError::Invalid(format!("negative exponent {a}")));
            }
            if a.is_zero() {
                continue;
            }
            if b.is_zero() {
                return Err(MldError::Invalid("zero ideal with positive exponent".into()));
            }
            kept.push((b, a));
        }
        Ok(MonomialPair {
            arity,
            lattice,
            boundary: kept,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn lattice(&self) -> Option<&CyclicLattice> {
        self.lattice.as_ref()
    }

    pub fn boundary(&self) -> &[(MonomialIdeal, Q)] {
        &self.boundary
    }

    /// Every exponent multiplied by `lambda`.
    pub fn scaled(&self, lambda: &Q) -> Result<Self, MldError> {
        let b = self
            .boundary
            .iter()
            .map(|(i, a)| (i.clone(), a * lambda))
            .collect();
        Self::build(self.arity, self.lattice.clone(), b)
    }

    /// `sum w - sum_j a_j min_{u in I_j} <w, u>` without lattice checks.
    pub fn objective(&self, w: &[Q]) -> Q {
        let mut v: Q = w.iter().sum();
        for (b, a) in &self.boundary {
            let m = b
                .generators()
                .iter()
                .map(|u| dot(u, w))
                .min()
                .expect("nonzero boundary ideal");
            v -= a * m;
        }
        v
    }

    fn in_lattice(&self, w: &[Q]) -> bool {
        if w.len() != self.arity || w.iter().any(|x| !x.is_positive()) {
            return false;
        }
        match &self.lattice {
            None => w.iter().all(|x| x.is_integer()),
            Some(l) => {
                let m = BigRational::from_integer(l.modulus.into());
                let scaled: Vec<Q> = w.iter().map(|x| x * &m).collect();
                if scaled.iter().any(|x| !x.is_integer()) {
                    return false;
                }
                (0..l.modulus).any(|k| {
                    scaled.iter().zip(&l.weights).all(|(v, &a)| {
                        let r = (v.to_integer() - num_bigint::BigInt::from(k as u64 * a as u64)) % l.modulus;
                        r.is_zero()
                    })
                })
            }
        }
    }

    /// Offsets `frac(k a / m)` of the cosets of `Z^N` in the lattice.
    fn cosets(&self) -> Vec<Vec<Q>> {
        match &self.lattice {
            None => vec![vec![Q::zero(); self.arity]],
            Some(l) => (0..l.modulus)
                .map(|k| {
                    l.weights
                        .iter()
                        .map(|&a| Q::new(((k as u64 * a as u64) % l.modulus as u64).into(), l.modulus.into()))
                        .collect()
                })
                .collect(),
        }
    }
}

fn dot(u: &[u32], w: &[Q]) -> Q {
    u.iter().zip(w).map(|(&e, x)| x * BigRational::from_integer(e.into())).sum()
}

/// Log discrepancy of the toric valuation with weight `w`.
pub fn log_discrepancy_at_weight(w: &[Q], pair: &MonomialPair) -> Result<Q, MldError> {
    if !pair.in_lattice(w) {
        return Err(MldError::NotInLattice(format_vec(w)));
    }
    Ok(pair.objective(w))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MldValue {
    NegInfinity,
    Finite(Q),
}

impl MldValue {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            MldValue::Finite(v) => Some(v),
            MldValue::NegInfinity => None,
        }
    }
}

impl fmt::Display for MldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MldValue::NegInfinity => write!(f, "-inf"),
            MldValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldCertificate {
    /// Minimum of the objective on `{w >= 0, sum w = 1}`.
    pub homogeneous_min: Q,
    /// LP relaxation minimum over all cosets (absent for `-inf`).
    pub relaxation: Option<Q>,
    pub nodes: usize,
    pub cosets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldResult {
    pub value: MldValue,
    pub witness: Option<Vec<Q>>,
    /// For `-inf`: a non-negative rational direction with negative objective.
    pub direction: Option<Vec<Q>>,
    /// For `-inf`: a strictly positive lattice point with negative value.
    pub negative_point: Option<Vec<Q>>,
    pub certificate: MldCertificate,
}

impl MldResult {
    pub fn log_canonical(&self) -> bool {
        matches!(&self.value, MldValue::Finite(v) if !v.is_negative())
    }

    /// Necessary for klt at the center; not sufficient.
    pub fn positive(&self) -> bool {
        matches!(&self.value, MldValue::Finite(v) if v.is_positive())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MldOptions {
    pub node_budget: usize,
    pub exec: Exec,
}

impl Default for MldOptions {
    fn default() -> Self {
        MldOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            exec: Exec::default(),
        }
    }
}

pub fn mld_monomial(pair: &MonomialPair) -> Result<MldResult, MldError> {
    mld_monomial_with(pair, &MldOptions::default())
}

pub fn mld_monomial_with(pair: &MonomialPair, opts: &MldOptions) -> Result<MldResult, MldError> {
    if pair.lattice.is_some() {
        return Err(MldError::Invalid("quotient data given; use mld_toric_quotient".into()));
    }
    solve(pair, opts)
}

pub fn mld_toric_quotient(pair: &MonomialPair) -> Result<MldResult, MldError> {
    mld_toric_quotient_with(pair, &MldOptions::default())
}

pub fn mld_toric_quotient_with(pair: &MonomialPair, opts: &MldOptions) -> Result<MldResult, MldError> {
    if pair.lattice.is_none() {
        return Err(MldError::Invalid("no quotient data".into()));
    }
    solve(pair, opts)
}

/// The direction has negative objective, the objective doubles when the
/// direction does, and the point is a strictly positive lattice point whose
/// value is negative.
pub fn verify_negative_direction(pair: &MonomialPair, dir: &[Q], point: &[Q]) -> bool {
    if dir.len() != pair.arity || dir.iter().any(|x| x.is_negative()) {
        return false;
    }
    let v = pair.objective(dir);
    let two = BigRational::from_integer(2.into());
    let doubled: Vec<Q> = dir.iter().map(|x| x * &two).collect();
    v.is_negative() && pair.objective(&doubled) == v * two && log_discrepancy_at_weight(point, pair).is_ok_and(|x| x.is_negative())
}

struct Lp {
    lp: LinearProgram,
    nw: usize,
}

/// Variables `z = w - lb >= 0` and `s_j >= 0` with `s_j <= <w, u>`.
fn epigraph(pair: &MonomialPair, lb: &[Q], ub: &[Option<Q>]) -> Lp {
    let n = pair.arity;
    let nb = pair.boundary.len();
    let mut lp = LinearProgram::new(n + nb);
    for i in 0..n {
        lp.objective[i] = Q::one();
    }
    for (j, (b, a)) in pair.boundary.iter().enumerate() {
        lp.objective[n + j] = -a.clone();
        for u in b.generators() {
            let mut row = vec![Q::zero(); n + nb];
            for i in 0..n {
                row[i] = -BigRational::from_integer(u[i].into());
            }
            row[n + j] = Q::one();
            lp.add(row, Relation::Le, dot(u, lb));
        }
    }
    for (i, u) in ub.iter().enumerate() {
        if let Some(u) = u {
            let mut row = vec![Q::zero(); n + nb];
            row[i] = Q::one();
            lp.add(row, Relation::Le, u - &lb[i]);
        }
    }
    Lp { lp, nw: n }
}

fn homogeneous(pair: &MonomialPair) -> (Q, Vec<Q>) {
    let n = pair.arity;
    let zero = vec![Q::zero(); n];
    let mut e = epigraph(pair, &zero, &vec![None; n]);
    let mut row = vec![Q::zero(); e.lp.nvars()];
    for x in row.iter_mut().take(n) {
        *x = Q::one();
    }
    e.lp.add(row, Relation::Eq, Q::one());
    match e.lp.solve() {
        LpOutcome::Optimal { x, value } => (value, x[..e.nw].to_vec()),
        other => unreachable!("homogeneous program is bounded and feasible: {other:?}"),
    }
}

fn solve(pair: &MonomialPair, opts: &MldOptions) -> Result<MldResult, MldError> {
    let n = pair.arity;
    let cosets = pair.cosets();
    if n == 0 {
        return Ok(MldResult {
            value: MldValue::Finite(Q::zero()),
            witness: Some(Vec::new()),
            direction: None,
            negative_point: None,
            certificate: MldCertificate {
                homogeneous_min: Q::zero(),
                relaxation: Some(Q::zero()),
                nodes: 0,
                cosets: 1,
            },
        });
    }
    let (hmin, dir) = homogeneous(pair);
    if hmin.is_negative() {
        let point = negative_point(pair, &dir, &cosets[0]);
        return Ok(MldResult {
            value: MldValue::NegInfinity,
            witness: None,
            direction: Some(dir),
            negative_point: Some(point),
            certificate: MldCertificate {
                homogeneous_min: hmin,
                relaxation: None,
                nodes: 0,
                cosets: cosets.len(),
            },
        });
    }
    let per = opts.exec.map(&cosets, |o| branch_and_bound(pair, o, opts.node_budget));
    let mut best: Option<(Q, Vec<Q>)> = None;
    let mut relaxation: Option<Q> = None;
    let mut nodes = 0;
    for r in per {
        let (root, val, w, k) = r?;
        nodes += k;
        if relaxation.as_ref().is_none_or(|x| root < *x) {
            relaxation = Some(root);
        }
        if best.as_ref().is_none_or(|(b, _)| val < *b) {
            best = Some((val, w));
        }
    }
    let (value, witness) = best.unwrap();
    Ok(MldResult {
        value: MldValue::Finite(value),
        witness: Some(witness),
        direction: None,
        negative_point: None,
        certificate: MldCertificate {
            homogeneous_min: hmin,
            relaxation,
            nodes,
            cosets: cosets.len(),
        },
    })
}

/// `k D + w0` for the integral multiple `D` of `dir` and the smallest
/// positive point `w0` of a coset; `k` doubles until the value is negative.
/// Subadditivity of the objective guarantees termination.
fn negative_point(pair: &MonomialPair, dir: &[Q], offset: &[Q]) -> Vec<Q> {
    let den = dir.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let d: Vec<Q> = dir.iter().map(|x| x * BigRational::from_integer(den.clone())).collect();
    let w0: Vec<Q> = offset.iter().map(|o| if o.is_zero() { Q::one() } else { o.clone() }).collect();
    let mut k = Q::one();
    loop {
        let p: Vec<Q> = d.iter().zip(&w0).map(|(x, y)| x * &k + y).collect();
        if pair.objective(&p).is_negative() {
            return p;
        }
        k *= BigRational::from_integer(2.into());
    }
}

/// `(n + b) Δ`, with Δ bounded by Hadamard's inequality over the rows of
/// the epigraph constraint matrix (unit rows contribute 1). The optimal
/// `s_j` are integers since boundary monomials are invariant, so the
/// proximity theorem for pure integer programs applies.
fn proximity_radius(pair: &MonomialPair) -> Q {
    let k = pair.arity + pair.boundary.len();
    let mut norms: Vec<BigInt> = pair
        .boundary
        .iter()
        .flat_map(|(b, _)| b.generators().iter())
        .map(|u| BigInt::from(1u32 + u.iter().map(|&e| (e as u64 * e as u64) as u32).sum::<u32>()))
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let prod: BigInt = norms.iter().take(k).product();
    let delta = prod.sqrt().max(BigInt::one());
    BigRational::from_integer(delta * BigInt::from(k))
}

/// Exact integer minimum on the coset `offset + Z^N` inside the open
/// orthant. Returns (root relaxation, value, witness, nodes).
fn branch_and_bound(pair: &MonomialPair, offset: &[Q], budget: usize) -> Result<(Q, Q, Vec<Q>, usize), MldError> {
    let n = pair.arity;
    let lb0: Vec<Q> = offset.iter().map(|o| if o.is_zero() { Q::one() } else { o.clone() }).collect();
    let on_coset = |x: &Q, i: usize| (x - &offset[i]).is_integer();
    let mut best_val = pair.objective(&lb0);
    let mut best_w = lb0.clone();
    let mut root = None;
    let radius = proximity_radius(pair);
    let mut stack = vec![(lb0, vec![None::<Q>; n])];
    let mut boxed = false;
    let mut nodes = 0;
    while let Some((lb, ub)) = stack.pop() {
        nodes += 1;
        if nodes > budget {
            return Err(MldError::Budget(budget));
        }
        let e = epigraph(pair, &lb, &ub);
        let (z, val) = match e.lp.solve() {
            LpOutcome::Optimal { x, value } => (x, value),
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => unreachable!("objective is non-negative on the orthant"),
        };
        let lbsum: Q = lb.iter().sum();
        let val = val + lbsum;
        let w: Vec<Q> = (0..n).map(|i| &z[i] + &lb[i]).collect();
        if root.is_none() {
            root = Some(val.clone());
            // some integer optimum lies within `radius` of this LP optimum;
            // without the box, zero-cost rays can be followed forever
            let box_ub: Vec<Option<Q>> = w
                .iter()
                .enumerate()
                .map(|(i, x)| Some((x + &radius - &offset[i]).floor() + &offset[i]))
                .collect();
            stack.push((lb.clone(), box_ub));
            // rounding the relaxed optimum up gives a feasible point
            let up: Vec<Q> = w
                .iter()
                .enumerate()
                .map(|(i, x)| (x - &offset[i]).ceil() + &offset[i])
                .collect();
            let v = pair.objective(&up);
            if v < best_val {
                best_val = v;
                best_w = up;
            }
        }
        if val >= best_val || !boxed {
            boxed = true;
            continue;
        }
        match (0..n).find(|&i| !on_coset(&w[i], i)) {
            None => {
                let v = pair.objective(&w);
                if v < best_val {
                    best_val = v;
                    best_w = w;
                }
            }
            Some(i) => {
                let fl = (&w[i] - &offset[i]).floor() + &offset[i];
                let ce = &fl + Q::one();
                if fl >= lb[i] {
                    let mut ub2 = ub.clone();
                    ub2[i] = Some(fl);
                    stack.push((lb.clone(), ub2));
                }
                let mut lb2 = lb;
                lb2[i] = ce;
                stack.push((lb2, ub));
            }
        }
    }
    Ok((root.unwrap_or_else(|| best_val.clone()), best_val, best_w, nodes))
}

pub fn format_vec(w: &[Q]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::q;

    fn mono(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| g.to_vec()).collect())
    }

    #[test]
    fn smooth_points() {
        for n in 0..=6 {
            let r = mld_monomial(&MonomialPair::affine(n, vec![]).unwrap()).unwrap();
            assert_eq!(r.value, MldValue::Finite(q(n as i64)));
            assert_eq!(r.witness.unwrap(), vec![q(1); n]);
        }
    }

    #[test]
    fn small_pairs() {
        let xy = MonomialPair::affine(2, vec![(mono(2, &[&[1, 1]]), q(1))]).unwrap();
        assert_eq!(mld_monomial(&xy).unwrap().value, MldValue::Finite(q(0)));
        assert_eq!(log_discrepancy_at_weight(&[q(1), q(1)], &xy).unwrap(), q(0));

        // (x1, x2)^2 on A^3
        let p = MonomialPair::affine(3, vec![(mono(3, &[&[1, 0, 0], &[0, 1, 0]]), q(2))]).unwrap();
        let r = mld_monomial(&p).unwrap();
        assert_eq!(r.value, MldValue::Finite(q(1)));

        // x^2 on A^1 is not log canonical
        let p = MonomialPair::affine(1, vec![(mono(1, &[&[1]]), q(2))]).unwrap();
        let r = mld_monomial(&p).unwrap();
        assert_eq!(r.value, MldValue::NegInfinity);
        assert!(verify_negative_direction(&p, r.direction.as_ref().unwrap(), r.negative_point.as_ref().unwrap()));

        // f = w1/3 on (x^2 y^3)^{1/3}
        let p = MonomialPair::affine(2, vec![(mono(2, &[&[2, 3]]), Q::new(1.into(), 3.into()))]).unwrap();
        assert_eq!(mld_monomial(&p).unwrap().value, MldValue::Finite(Q::new(1.into(), 3.into())));

        // (x^3, y^2)^{3/4}: relaxed optimum 1/4 at (1, 3/2), integral optimum 1/2
        let p = MonomialPair::affine(2, vec![(mono(2, &[&[3, 0], &[0, 2]]), Q::new(3.into(), 4.into()))]).unwrap();
        let r = mld_monomial(&p).unwrap();
        let half = Q::new(1.into(), 2.into());
        assert_eq!(r.value, MldValue::Finite(half.clone()));
        assert_eq!(r.certificate.relaxation, Some(Q::new(1.into(), 4.into())));
        assert_eq!(log_discrepancy_at_weight(r.witness.as_ref().unwrap(), &p).unwrap(), half);
    }

    #[test]
    fn cyclic_quotient() {
        let l = CyclicLattice::new(3, vec![1, 1, 1]).unwrap();
        let p = MonomialPair::quotient(l.clone(), vec![]).unwrap();
        let r = mld_toric_quotient(&p).unwrap();
        assert_eq!(r.value, MldValue::Finite(q(1)));
        let third = Q::new(1.into(), 3.into());
        assert_eq!(r.witness.unwrap(), vec![third.clone(); 3]);
        assert!(log_discrepancy_at_weight(&[third.clone(), third.clone(), q(1)], &p).is_err());

        let m5 = MonomialIdeal::all_of_degree(3, 15);
        let p = MonomialPair::quotient(l, vec![(m5, q(1))]).unwrap();
        assert_eq!(mld_toric_quotient(&p).unwrap().value, MldValue::NegInfinity);

        let smooth = MonomialPair::quotient(CyclicLattice::new(1, vec![1, 1]).unwrap(), vec![]).unwrap();
        assert_eq!(mld_toric_quotient(&smooth).unwrap().value, MldValue::Finite(q(2)));
        assert!(MonomialPair::quotient(CyclicLattice::new(4, vec![2, 1]).unwrap(), vec![]).is_err());
    }
}
