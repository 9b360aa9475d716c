use std::sync::Arc;

use num_rational::BigRational;

use super::jet_ideal::jet_var_name;
use super::smith::jacobian_smith;
use super::{ideal_order, JetError, OrderValue, PolySeries, TruncatedArc};
use crate::ideal::Ideal;
use crate::poly::{Field, MonomialOrder, PolyRing, Polynomial};
use crate::singularity::{jacobian_ideal, jrx_from_slice, AffineSubscheme, JrxStatus, LciSlice};

/// Dimension of `(pi_{nm})^{-1}(pi_n(gamma))` inside `J_m Y`, measured by
/// Gröbner dimension and certified as an affine space by a triangular
/// change of coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub n: usize,
    pub m: usize,
    pub divisors: Vec<usize>,
    pub e: usize,
    /// `(m - n) d + e`.
    pub expected: usize,
    /// Krull dimension of the lifting equations; `None` if empty.
    pub measured: Option<usize>,
    /// Every lifting equation solves for its own pivot variable in terms of
    /// lower-order variables.
    pub triangular: bool,
    /// Number of free variables of the triangular system.
    pub certified: usize,
    pub pass: bool,
}

pub fn fiber_dimension_check<F: Field>(
    y: &AffineSubscheme<F>,
    arc: &TruncatedArc<F>,
    n: usize,
    m: usize,
) -> Result<FiberReport, JetError> {
    if m < n {
        return Err(JetError::Level { from: m, to: n });
    }
    let sf = jacobian_smith(y, arc)?;
    let e = sf.total();
    if !(m >= n + e && n + e >= 2 * e) {
        return Err(JetError::Hypothesis { n, m, e });
    }
    if arc.precision() < m + 1 || sf.precision() < m + 1 {
        return Err(JetError::Precision {
            precision: arc.precision().min(sf.precision()),
            what: format!("lifting from level {n} to level {m} needs precision {}", m + 1),
        });
    }
    let base = y.ideal().ring();
    let nb = base.nvars();
    let expected = (m - n) * y.dim() + e;
    if m == n {
        return Ok(FiberReport {
            n,
            m,
            divisors: sf.divisors,
            e,
            expected,
            measured: Some(0),
            triangular: true,
            certified: 0,
            pass: expected == 0,
        });
    }
    let field = base.field().clone();
    let gamma = |i: usize, j: usize| arc.coefficient(i, j).cloned().unwrap_or_else(|| field.zero());

    // direct lifting equations in the unknown coefficients b_{i,k}, n < k <= m
    let names: Vec<String> = (n + 1..=m)
        .rev()
        .flat_map(|k| base.var_names().iter().map(move |v| jet_var_name(v, k)))
        .collect();
    let bring = PolyRing::new(&names, field.clone(), MonomialOrder::GrevLex)?;
    let beta: Vec<PolySeries<F>> = (0..nb)
        .map(|i| PolySeries {
            coeffs: (0..=m)
                .map(|j| {
                    if j <= n {
                        bring.constant(gamma(i, j))
                    } else {
                        bring.var((m - j) * nb + i)
                    }
                })
                .collect(),
        })
        .collect();
    let mut eqs = Vec::new();
    for h in y.ideal().generators() {
        let s = PolySeries::substitute(h, &beta, m + 1);
        if s.coeffs[..=n].iter().any(|c| !c.is_zero()) {
            return Err(JetError::NotOnScheme(n + 1));
        }
        eqs.extend(s.coeffs[n + 1..].iter().filter(|c| !c.is_zero()).cloned());
    }
    let measured = Ideal::new(&bring, eqs)?
        .with_budget(y.ideal().budget())
        .krull_dimension()?;

    let (triangular, certified) = triangular_certificate(y, &sf.p, &sf.q, &sf.divisors, arc, n, m)?;
    let pass = measured == Some(expected) && triangular && certified == expected;
    Ok(FiberReport {
        n,
        m,
        divisors: sf.divisors,
        e,
        expected,
        measured,
        triangular,
        certified,
        pass,
    })
}

/// Substitutes `beta = gamma_n + t^(n+1) Q v` with `v_i = sum_k v_{i,k} t^k`
/// and checks that `g = P h(beta)` is triangular: `g_i` vanishes below
/// `t^(n+1+e_i)` and its coefficient at `t^(n+1+e_i+k)` is
/// `v_{i,k}` times a nonzero constant plus terms in `v_{*,k'}`, `k' < k`.
fn triangular_certificate<F: Field>(
    y: &AffineSubscheme<F>,
    p: &[Vec<crate::poly::TruncatedSeries<F>>],
    q: &[Vec<crate::poly::TruncatedSeries<F>>],
    divisors: &[usize],
    arc: &TruncatedArc<F>,
    n: usize,
    m: usize,
) -> Result<(bool, usize), JetError> {
    let base = y.ideal().ring();
    let nb = base.nvars();
    let field = base.field().clone();
    let len = m - n;
    let names: Vec<String> = (0..len).flat_map(|k| (0..nb).map(move |i| format!("v{i}_{k}"))).collect();
    let vring: Arc<PolyRing<F>> = PolyRing::new(&names, field.clone(), MonomialOrder::GrevLex)?;
    let var = |i: usize, k: usize| k * nb + i;
    let prec = m + 1;
    let konst = |s: &crate::poly::TruncatedSeries<F>| PolySeries {
        coeffs: (0..prec)
            .map(|j| vring.constant(s.coeff(j).cloned().unwrap_or_else(|| field.zero())))
            .collect(),
    };
    let v: Vec<PolySeries<F>> = (0..nb)
        .map(|i| PolySeries {
            coeffs: (0..prec).map(|k| if k < len { vring.var(var(i, k)) } else { vring.zero() }).collect(),
        })
        .collect();
    let beta: Vec<PolySeries<F>> = (0..nb)
        .map(|i| {
            let mut coeffs: Vec<Polynomial<F>> = (0..prec)
                .map(|j| {
                    if j <= n {
                        vring.constant(arc.coefficient(i, j).cloned().unwrap())
                    } else {
                        vring.zero()
                    }
                })
                .collect();
            for (jj, vj) in v.iter().enumerate() {
                let prod = konst(&q[i][jj]).mul(vj);
                for (t, c) in prod.coeffs.iter().enumerate() {
                    if t + n + 1 < prec && !c.is_zero() {
                        coeffs[t + n + 1] = coeffs[t + n + 1].try_add(c).unwrap();
                    }
                }
            }
            PolySeries { coeffs }
        })
        .collect();
    let hb: Vec<PolySeries<F>> = y
        .ideal()
        .generators()
        .iter()
        .map(|h| PolySeries::substitute(h, &beta, prec))
        .collect();
    let mut pivots = 0;
    for (i, &ei) in divisors.iter().enumerate() {
        let mut g = PolySeries {
            coeffs: vec![vring.zero(); prec],
        };
        for (l, hl) in hb.iter().enumerate() {
            let prod = konst(&p[i][l]).mul(hl);
            for (a, b) in g.coeffs.iter_mut().zip(prod.coeffs) {
                *a = a.try_add(&b).unwrap();
            }
        }
        if g.coeffs[..=(n + ei).min(m)].iter().any(|c| !c.is_zero()) {
            return Ok((false, 0));
        }
        for k in 0..len.saturating_sub(ei) {
            let eq = &g.coeffs[n + 1 + ei + k];
            let pv = var(i, k);
            let mut has_pivot = false;
            for (mono, c) in eq.terms() {
                let supp = mono.support();
                if supp == [pv] && mono.degree() == 1 {
                    has_pivot = !field.is_zero(c);
                } else if supp.iter().any(|&s| s / nb >= k) {
                    return Ok((false, 0));
                }
            }
            if !has_pivot {
                return Ok((false, 0));
            }
            pivots += 1;
        }
    }
    Ok((true, nb * len - pivots))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditivityStatus {
    Pass,
    Fail,
    /// Truncation left one side undetermined.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct AdditivityReport {
    /// `ord J'_Y`.
    pub lhs: OrderValue,
    /// `ord J_{r,X}` (via the slice colon).
    pub jhat: OrderValue,
    /// `ord O_X(-r D^Y)`.
    pub divisorial: OrderValue,
    /// `(jhat + divisorial) / r`.
    pub rhs: OrderValue,
    pub slice_identity: JrxStatus,
    pub status: AdditivityStatus,
}

/// `ord J'_Y = ord J_X + ord D^Y` along an arc on `X`.
pub fn order_additivity_check<F: Field>(
    x: &AffineSubscheme<F>,
    y: &LciSlice<F>,
    arc: &TruncatedArc<F>,
    r: u32,
) -> Result<AdditivityReport, JetError> {
    if !arc.lies_on(x.ideal())? {
        return Err(JetError::NotOnScheme(arc.precision()));
    }
    let jy = jacobian_ideal(&y.as_subscheme())?;
    let lhs = ideal_order(&jy, arc)?;
    let ident = jrx_from_slice(x, y, r)?;
    let jhat = ideal_order(&ident.candidate, arc)?;
    let divisorial = ideal_order(&ident.divisorial, arc)?;
    let inv_r = BigRational::new(1.into(), (r as i64).into());
    let rhs = jhat.add(&divisorial).scale(&inv_r);
    let status = match (&lhs, &rhs) {
        (OrderValue::Exact(a), OrderValue::Exact(b)) => {
            if a == b {
                AdditivityStatus::Pass
            } else {
                AdditivityStatus::Fail
            }
        }
        (OrderValue::Exact(a), OrderValue::AtLeast(b)) | (OrderValue::AtLeast(b), OrderValue::Exact(a)) if b > a => {
            AdditivityStatus::Fail
        }
        _ => AdditivityStatus::Inconclusive,
    };
    Ok(AdditivityReport {
        lhs,
        jhat,
        divisorial,
        rhs,
        slice_identity: ident.status,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rationals;

    fn node() -> (Arc<PolyRing<Rationals>>, AffineSubscheme<Rationals>) {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
        let y = AffineSubscheme::new(Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap()).unwrap();
        (r, y)
    }

    #[test]
    fn node_fibers() {
        let (_, y) = node();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 12).unwrap();
        for (n, m) in [(2, 4), (3, 5), (1, 3), (2, 6)] {
            let rep = fiber_dimension_check(&y, &arc, n, m).unwrap();
            assert_eq!(rep.e, 1);
            assert_eq!(rep.expected, m - n + 1);
            assert!(rep.pass, "{rep:?}");
        }
        assert!(matches!(fiber_dimension_check(&y, &arc, 0, 1), Err(JetError::Hypothesis { .. })));
    }

    #[test]
    fn smooth_fiber() {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
        let y = AffineSubscheme::new(Ideal::from_strs(&r, &["y - x^2"]).unwrap()).unwrap();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![1, 1], vec![1, 2, 1]], 8).unwrap();
        let rep = fiber_dimension_check(&y, &arc, 1, 3).unwrap();
        assert_eq!(rep.expected, 2);
        assert!(rep.pass);
    }

    #[test]
    fn node_additivity() {
        let (r, _) = node();
        let x = AffineSubscheme::new(Ideal::from_strs(&r, &["x - y"]).unwrap()).unwrap();
        let slice = LciSlice::from_generators(&x, vec![r.parse("x^2 - y^2").unwrap()]).unwrap();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 6).unwrap();
        let rep = order_additivity_check(&x, &slice, &arc, 1).unwrap();
        assert_eq!(rep.status, AdditivityStatus::Pass);
        assert_eq!(rep.lhs, OrderValue::Exact(BigRational::from_integer(1.into())));
        assert_eq!(rep.jhat, OrderValue::Exact(BigRational::from_integer(0.into())));
    }
}
