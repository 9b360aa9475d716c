//! The cone over the cubic Veronese surface, i.e. the quotient
//! `1/3(1,1,1)` embedded in `A^10` by the ten cubic monomials, with its
//! ideals transported to the invariant monomials of `k[x1,x2,x3]`.
//!
//! Every generator of `I_X` is a binomial `z_a z_b - z_c z_d` with
//! `a + b = c + d`, so `I_X` is graded by `Z^3` (with `z_a` in degree `a`).
//! A Jacobian entry `d q / d z_a` is then homogeneous of degree
//! `deg q - a`, and the pullback of any minor along `z_a -> x^a` is a single
//! term whose exponent is fixed by the chosen rows and columns.

use std::sync::Arc;

use super::minors::{self, PolyMatrix};
use super::{AffineSubscheme, SingularityError};
use crate::exec::Exec;
use crate::ideal::{exponents_of_degree, CyclicLattice, Ideal, MonomialIdeal};
use crate::poly::{Field, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::random;

#[derive(Clone, Debug)]
pub struct CubicCone<F: Field> {
    exponents: Vec<Vec<u32>>,
    ambient: Arc<PolyRing<F>>,
    torus: Arc<PolyRing<F>>,
    quadrics: Vec<Polynomial<F>>,
    exec: Exec,
}

/// A maximal Jacobian minor whose pullback is `coefficient * x^exponent`.
#[derive(Clone, Debug)]
pub struct ExhibitedMinor<F: Field> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub coefficient: F::Elem,
    pub exponent: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct JacobianSandwich<F: Field> {
    pub lower_minors: Vec<ExhibitedMinor<F>>,
    /// Ideal of the exhibited exponents.
    pub lower: MonomialIdeal,
    /// Every Jacobian entry is a linear form, so every maximal minor is a
    /// form of degree `codim` and lies in `m^codim`.
    pub entries_linear: bool,
    pub upper: MonomialIdeal,
    pub lower_closure: MonomialIdeal,
    pub upper_closure: MonomialIdeal,
}

impl<F: Field> JacobianSandwich<F> {
    pub fn passed(&self) -> bool {
        self.entries_linear && self.upper.contains_ideal(&self.lower) && self.lower_closure == self.upper_closure
    }
}

/// Colon defect `(J'_X : J_{1,X})` computed on the closure of `J'_X`
/// certified by a passing sandwich.
#[derive(Clone, Debug)]
pub struct ToricDefect {
    pub colon: MonomialIdeal,
    pub closure: MonomialIdeal,
    /// `J_{1,X} * closure` and `J'_X` have the same integral closure.
    pub reproduces: bool,
}

/// Transport of the slice identity for one general complete intersection
/// `Y` cut out by `codim` combinations of the quadrics.
#[derive(Clone, Debug)]
pub struct ToricSliceCheck<F: Field> {
    pub seed: u64,
    /// `g` with `pullback(minor_C(Jac h)) = sign_C * g * minor_{C^c}(D phi)`.
    pub cofactor: Polynomial<F>,
    pub minors_checked: usize,
    pub identity_holds: bool,
    /// `J'_Y O_X` pulled back, in `k[x1,x2,x3]`.
    pub jacobian_pullback: Ideal<F>,
    /// `(J'_Y O_X : g)` in `k[x1,x2,x3]`.
    pub colon: Ideal<F>,
    /// `colon * (g) == J'_Y O_X`.
    pub multiplies_back: bool,
    /// Invariant part of `colon`, `None` if `colon` is not monomial.
    pub candidate: Option<MonomialIdeal>,
}

impl<F: Field> CubicCone<F> {
    pub fn new(field: F) -> Result<Self, SingularityError> {
        let exponents = exponents_of_degree(3, 3);
        let names: Vec<String> = exponents
            .iter()
            .map(|a| format!("z{}{}{}", a[0], a[1], a[2]))
            .collect();
        let ambient = PolyRing::new(&names, field.clone(), MonomialOrder::GrevLex)?;
        let torus = PolyRing::new(&["x1", "x2", "x3"], field, MonomialOrder::GrevLex)?;
        let mut quadrics = Vec::new();
        for mu in exponents_of_degree(3, 6) {
            let mut pairs = Vec::new();
            for (i, a) in exponents.iter().enumerate() {
                for (j, b) in exponents.iter().enumerate().skip(i) {
                    if (0..3).all(|t| a[t] + b[t] == mu[t]) {
                        pairs.push((i, j));
                    }
                }
            }
            let prod = |(i, j): (usize, usize)| ambient.var(i).try_mul(&ambient.var(j)).unwrap();
            for &p in &pairs[1..] {
                quadrics.push(prod(pairs[0]).try_sub(&prod(p)).unwrap());
            }
        }
        Ok(CubicCone {
            exponents,
            ambient,
            torus,
            quadrics,
            exec: Exec::default(),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn ambient(&self) -> &Arc<PolyRing<F>> {
        &self.ambient
    }

    pub fn torus(&self) -> &Arc<PolyRing<F>> {
        &self.torus
    }

    pub fn quadrics(&self) -> &[Polynomial<F>] {
        &self.quadrics
    }

    pub fn ideal(&self) -> Result<Ideal<F>, SingularityError> {
        Ok(Ideal::new(&self.ambient, self.quadrics.clone())?.with_exec(self.exec))
    }

    pub fn subscheme(&self) -> Result<AffineSubscheme<F>, SingularityError> {
        AffineSubscheme::new(self.ideal()?)
    }

    pub fn codim(&self) -> usize {
        self.exponents.len() - 3
    }

    pub fn lattice() -> CyclicLattice {
        CyclicLattice::new(3, vec![1, 1, 1]).expect("valid lattice")
    }

    /// `m^k` of the vertex: invariant monomials of degree `3k`.
    pub fn maximal_power(k: u32) -> MonomialIdeal {
        MonomialIdeal::in_lattice(3, Self::lattice(), exponents_of_degree(3, 3 * k)).expect("lattice points")
    }

    /// `z_a -> x^a`.
    pub fn pullback(&self, p: &Polynomial<F>) -> Result<Polynomial<F>, SingularityError> {
        let images: Vec<Polynomial<F>> = self.exponents.iter().map(|a| self.torus.monomial(a.clone())).collect();
        Ok(p.compose(&self.torus, &images)?)
    }

    fn pull_matrix(&self, m: &PolyMatrix<F>) -> Result<PolyMatrix<F>, SingularityError> {
        m.iter()
            .map(|row| row.iter().map(|e| self.pullback(e)).collect())
            .collect()
    }

    fn point(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.torus.field();
        self.exponents
            .iter()
            .map(|a| {
                a.iter()
                    .zip(x)
                    .fold(f.one(), |acc, (&e, v)| f.mul(&acc, &f.pow(v, e as u64)))
            })
            .collect()
    }

    pub fn jacobian(&self) -> Result<PolyMatrix<F>, SingularityError> {
        Ok(minors::jacobian_matrix(&self.quadrics, &self.ambient)?)
    }

    /// For each coordinate axis, a maximal minor of the Jacobian matrix that
    /// does not vanish at the image of the unit point on that axis; its
    /// pullback is a nonzero multiple of `x_i^(3 codim)`.
    pub fn lower_minors(&self) -> Result<Vec<ExhibitedMinor<F>>, SingularityError> {
        let field = self.torus.field().clone();
        let jac = self.jacobian()?;
        let pulled_jac = self.pull_matrix(&jac)?;
        let c = self.codim();
        let mut out = Vec::new();
        for axis in 0..3 {
            let mut x = vec![field.zero(); 3];
            x[axis] = field.one();
            let z = self.point(&x);
            let num: Vec<Vec<F::Elem>> = jac
                .iter()
                .map(|row| row.iter().map(|e| e.evaluate(&z)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?;
            let cols = pivots(&field, &num);
            let transposed: Vec<Vec<F::Elem>> = (0..num[0].len()).map(|j| num.iter().map(|r| r[j].clone()).collect()).collect();
            let rows = pivots(&field, &transposed);
            if rows.len() != c || cols.len() != c {
                return Err(SingularityError::Verification(format!(
                    "Jacobian rank {} at the axis point, expected {c}",
                    rows.len()
                )));
            }
            let pulled = minors::minor(&pulled_jac, &rows, &cols, &self.torus);
            let mut want = vec![0; 3];
            want[axis] = 3 * c as u32;
            if pulled.len() != 1 || pulled.leading_monomial().unwrap().exps() != want.as_slice() {
                return Err(SingularityError::Verification(format!("minor pulls back to {pulled}")));
            }
            out.push(ExhibitedMinor {
                rows,
                cols,
                coefficient: pulled.leading_coeff().unwrap().clone(),
                exponent: want,
            });
        }
        Ok(out)
    }

    pub fn jacobian_sandwich(&self) -> Result<JacobianSandwich<F>, SingularityError> {
        let lower_minors = self.lower_minors()?;
        let lower = MonomialIdeal::in_lattice(3, Self::lattice(), lower_minors.iter().map(|m| m.exponent.clone()).collect())?;
        let entries_linear = self
            .jacobian()?
            .iter()
            .flatten()
            .all(|e| e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(1)));
        let upper = Self::maximal_power(self.codim() as u32);
        let lower_closure = lower.integral_closure_with(self.exec)?;
        let upper_closure = upper.integral_closure_with(self.exec)?;
        Ok(JacobianSandwich {
            lower_minors,
            lower,
            entries_linear,
            upper,
            lower_closure,
            upper_closure,
        })
    }

    pub fn colon_defect(&self, sandwich: &JacobianSandwich<F>) -> Result<ToricDefect, SingularityError> {
        if !sandwich.passed() {
            return Err(SingularityError::Verification("Jacobian sandwich did not close".into()));
        }
        let j1 = self.canonical_jacobian();
        let colon = sandwich.upper_closure.quotient(&j1)?;
        let closure = colon.integral_closure_with(self.exec)?;
        let back = j1.product(&closure)?.integral_closure_with(self.exec)?;
        Ok(ToricDefect {
            reproduces: back == sandwich.upper_closure,
            colon,
            closure,
        })
    }

    /// `J_{1,X}`: image of `Omega^3` in `omega_X = O_X dx1^dx2^dx3`,
    /// generated by `det[a,b,c] x^(a+b+c-(1,1,1))`.
    pub fn canonical_jacobian(&self) -> MonomialIdeal {
        let mut gens = Vec::new();
        for s in minors::subsets(self.exponents.len(), 3) {
            let (a, b, c) = (&self.exponents[s[0]], &self.exponents[s[1]], &self.exponents[s[2]]);
            if det3(a, b, c) != 0 {
                gens.push((0..3).map(|t| a[t] + b[t] + c[t] - 1).collect());
            }
        }
        MonomialIdeal::in_lattice(3, Self::lattice(), gens).expect("invariant exponents")
    }

    /// `codim` seeded combinations of the quadrics.
    pub fn random_slice(&self, seed: u64) -> Vec<Polynomial<F>> {
        let field = self.ambient.field().clone();
        let mut rng = random::rng(seed);
        (0..self.codim())
            .map(|_| {
                let coeffs = random::general_coefficients(&mut rng, self.quadrics.len());
                self.quadrics.iter().zip(coeffs).fold(self.ambient.zero(), |acc, (q, a)| {
                    acc.try_add(&q.scale(&field.from_i64(a))).unwrap()
                })
            })
            .collect()
    }

    /// Pulls back the maximal minors of the Jacobian matrix of a random
    /// slice, extracts the common cofactor against the complementary minors
    /// of `D phi`, and divides it out.
    pub fn slice_check(&self, seed: u64) -> Result<ToricSliceCheck<F>, SingularityError> {
        let t = &self.torus;
        let field = t.field().clone();
        let h = self.random_slice(seed);
        let jac = minors::jacobian_matrix(&h, &self.ambient)?;
        let pulled = self.pull_matrix(&jac)?;
        let c = self.codim();
        let n = self.exponents.len();
        let rows: Vec<usize> = (0..c).collect();
        let by_mask = minors::minors_of_rows(&pulled, &rows, t);
        let full = (1u64 << n) - 1;
        let mut cofactor: Option<Polynomial<F>> = None;
        let mut identity_holds = true;
        let mut gens = Vec::new();
        let sets = minors::subsets(n, c);
        for cols in &sets {
            let mask = cols.iter().fold(0u64, |m, &i| m | (1 << i));
            let m = by_mask.get(&mask).cloned().unwrap_or_else(|| t.zero());
            let comp: Vec<usize> = (0..n).filter(|i| full & !mask & (1 << i) != 0).collect();
            let (a, b, cc) = (&self.exponents[comp[0]], &self.exponents[comp[1]], &self.exponents[comp[2]]);
            let d = det3(a, b, cc);
            let co = if d == 0 {
                t.zero()
            } else {
                let e: Vec<u32> = (0..3).map(|k| a[k] + b[k] + cc[k] - 1).collect();
                Polynomial::from_terms(t, vec![(Monomial::new(e), field.from_i64(d))])
            };
            let signed = if shuffle_sign(cols) { co.neg() } else { co };
            if !m.is_zero() {
                gens.push(m.clone());
            }
            if signed.is_zero() {
                identity_holds &= m.is_zero();
                continue;
            }
            match &cofactor {
                None => match m.div_exact(&signed) {
                    Some(g) if !g.is_zero() => cofactor = Some(g),
                    _ => identity_holds = false,
                },
                Some(g) => identity_holds &= m == g.try_mul(&signed)?,
            }
        }
        let cofactor = cofactor.ok_or_else(|| SingularityError::Verification("every maximal minor vanishes".into()))?;
        let jacobian_pullback = Ideal::new(t, gens)?.with_exec(self.exec);
        let colon = jacobian_pullback.quotient_by(&cofactor)?;
        let principal = Ideal::new(t, vec![cofactor.clone()])?;
        let multiplies_back = colon.product(&principal)?.equals(&jacobian_pullback)?;
        let reduced = Ideal::new(t, colon.groebner_basis()?.to_vec())?;
        let candidate = if reduced.is_monomial() {
            Some(MonomialIdeal::from_ideal(&reduced)?.contract_to(Self::lattice())?)
        } else {
            None
        };
        Ok(ToricSliceCheck {
            seed,
            cofactor,
            minors_checked: sets.len(),
            identity_holds,
            jacobian_pullback,
            colon,
            multiplies_back,
            candidate,
        })
    }
}

fn det3(a: &[u32], b: &[u32], c: &[u32]) -> i64 {
    let (a, b, c) = (
        a.iter().map(|&v| v as i64).collect::<Vec<_>>(),
        b.iter().map(|&v| v as i64).collect::<Vec<_>>(),
        c.iter().map(|&v| v as i64).collect::<Vec<_>>(),
    );
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Parity of the permutation listing `cols` first and the rest after.
fn shuffle_sign(cols: &[usize]) -> bool {
    cols.iter().enumerate().map(|(k, &i)| i - k).sum::<usize>() % 2 == 1
}

/// Pivot columns of the row echelon form.
fn pivots<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Vec<usize> {
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][col]).unwrap();
        for i in r + 1..a.len() {
            if field.is_zero(&a[i][col]) {
                continue;
            }
            let f = field.mul(&a[i][col], &inv);
            for j in col..ncols {
                let v = field.mul(&f, &a[r][j]);
                a[i][j] = field.sub(&a[i][j], &v);
            }
        }
        out.push(col);
        r += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Rationals};

    #[test]
    fn embedding_data() {
        let x = CubicCone::new(Rationals).unwrap();
        assert_eq!(x.quadrics().len(), 27);
        assert_eq!(x.codim(), 7);
        for q in x.quadrics() {
            assert!(x.pullback(q).unwrap().is_zero());
        }
        assert_eq!(x.canonical_jacobian(), CubicCone::<Rationals>::maximal_power(2));
    }

    #[test]
    fn sandwich_passes() {
        let x = CubicCone::new(Rationals).unwrap();
        let s = x.jacobian_sandwich().unwrap();
        assert!(s.passed());
        assert_eq!(s.upper_closure, CubicCone::<Rationals>::maximal_power(7));
        let d = x.colon_defect(&s).unwrap();
        assert!(d.reproduces);
        assert_eq!(d.closure, CubicCone::<Rationals>::maximal_power(5));
    }

    #[test]
    fn slice_recovers_canonical_jacobian() {
        let x = CubicCone::new(PrimeField::new(32003).unwrap()).unwrap();
        let s = x.slice_check(1).unwrap();
        assert!(s.identity_holds);
        assert!(s.multiplies_back);
        assert_eq!(s.cofactor.total_degree(), Some(15));
        assert_eq!(s.candidate.unwrap(), CubicCone::<PrimeField>::maximal_power(2));
    }
}
