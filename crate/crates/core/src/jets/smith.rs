use num_rational::BigRational;

use super::{JetError, OrderValue, TruncatedArc};
use crate::poly::{Field, SeriesOrder, TruncatedSeries};
use crate::singularity::{minors, AffineSubscheme};

pub type SeriesMatrix<F> = Vec<Vec<TruncatedSeries<F>>>;

/// `P A Q = [diag(t^e_1, ..., t^e_c) | 0]` over `k[[t]]`, known modulo
/// the precisions carried by the entries of `P` and `Q`.
#[derive(Clone, Debug)]
pub struct SmithForm<F: Field> {
    pub divisors: Vec<usize>,
    pub p: SeriesMatrix<F>,
    pub q: SeriesMatrix<F>,
}

impl<F: Field> SmithForm<F> {
    /// Smallest precision among the entries of `P` and `Q`.
    pub fn precision(&self) -> usize {
        self.p.iter().chain(&self.q).flatten().map(|s| s.precision()).min().unwrap_or(usize::MAX)
    }

    pub fn total(&self) -> usize {
        self.divisors.iter().sum()
    }
}

fn identity<F: Field>(field: &F, n: usize, precision: usize) -> SeriesMatrix<F> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = if i == j { field.one() } else { field.zero() };
                    TruncatedSeries::constant(field.clone(), c, precision)
                })
                .collect()
        })
        .collect()
}

/// Smith normal form of a `c x N` matrix (`c <= N`) of truncated series,
/// pivoting on an entry of least order in the remaining block.
pub fn smith_form<F: Field>(a: &SeriesMatrix<F>) -> Result<SmithForm<F>, JetError> {
    let c = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if c > n {
        return Err(JetError::Invalid("more rows than columns".into()));
    }
    if c == 0 {
        return Ok(SmithForm {
            divisors: Vec::new(),
            p: Vec::new(),
            q: Vec::new(),
        });
    }
    let field = a[0][0].field().clone();
    let prec = a.iter().flatten().map(|s| s.precision()).min().unwrap();
    let mut a = a.clone();
    let mut p = identity(&field, c, prec);
    let mut q = identity(&field, n, prec);
    let mut divisors = Vec::with_capacity(c);
    for k in 0..c {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, s) in row.iter().enumerate().skip(k) {
                if let SeriesOrder::Exact(o) = s.order() {
                    if best.is_none_or(|(b, _, _)| o < b) {
                        best = Some((o, i, j));
                    }
                }
            }
        }
        let Some((e, i, j)) = best else {
            return Err(JetError::Precision {
                precision: prec,
                what: format!("elementary divisor {} is not determined", k + 1),
            });
        };
        a.swap(k, i);
        p.swap(k, i);
        for row in a.iter_mut() {
            row.swap(k, j);
        }
        for row in q.iter_mut() {
            row.swap(k, j);
        }
        // normalize the pivot to t^e
        let unit = a[k][k].shift_down(e).unwrap();
        let inv = unit.inverse().unwrap();
        for s in a[k].iter_mut() {
            *s = s.mul(&inv);
        }
        for s in p[k].iter_mut() {
            *s = s.mul(&inv);
        }
        let pivot_row = a[k].clone();
        let pivot_p = p[k].clone();
        for r in 0..c {
            if r == k || a[r][k].is_zero_to_precision() {
                continue;
            }
            let f = a[r][k].shift_down(e).ok_or_else(|| JetError::Precision {
                precision: prec,
                what: "pivot does not divide its column".into(),
            })?;
            for col in 0..n {
                let t = f.mul(&pivot_row[col].shift_down(e).unwrap()).shift_up(e);
                a[r][col] = a[r][col].sub(&t);
            }
            for col in 0..c {
                a_sub(&mut p[r][col], &f.mul(&pivot_p[col]));
            }
        }
        for col in 0..n {
            if col == k || a[k][col].is_zero_to_precision() {
                continue;
            }
            let f = a[k][col].shift_down(e).unwrap();
            a[k][col] = TruncatedSeries::zero(field.clone(), a[k][col].precision());
            for row in q.iter_mut() {
                let t = f.mul(&row[k]);
                a_sub(&mut row[col], &t);
            }
        }
        divisors.push(e);
    }
    Ok(SmithForm { divisors, p, q })
}

fn a_sub<F: Field>(x: &mut TruncatedSeries<F>, y: &TruncatedSeries<F>) {
    *x = x.sub(y);
}

/// Jacobian of the `c` defining equations of `Y` along `arc`, in Smith form.
pub(crate) fn jacobian_smith<F: Field>(y: &AffineSubscheme<F>, arc: &TruncatedArc<F>) -> Result<SmithForm<F>, JetError> {
    let gens = y.ideal().generators();
    if gens.len() != y.codim() {
        return Err(JetError::Invalid(format!(
            "Y must be presented by codim = {} equations, got {}",
            y.codim(),
            gens.len()
        )));
    }
    if !arc.lies_on(y.ideal())? {
        return Err(JetError::NotOnScheme(arc.precision()));
    }
    let ring = y.ideal().ring();
    let jac = minors::jacobian_matrix(gens, ring)?;
    let m: SeriesMatrix<F> = jac
        .iter()
        .map(|row| row.iter().map(|e| arc.eval(e)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    smith_form(&m)
}

/// Elementary divisors `e_1 <= ... <= e_c` of the Jacobian matrix of `Y`
/// along `arc`; their sum is checked against the order of the maximal
/// minors.
pub fn elementary_divisors_along_arc<F: Field>(y: &AffineSubscheme<F>, arc: &TruncatedArc<F>) -> Result<Vec<usize>, JetError> {
    let s = jacobian_smith(y, arc)?;
    let ring = y.ideal().ring();
    let jac = minors::jacobian_matrix(y.ideal().generators(), ring)?;
    let ms = minors::all_minors(&jac, y.codim(), ring, y.ideal().exec());
    let mut orders = Vec::with_capacity(ms.len());
    for m in &ms {
        orders.push(match arc.eval(m)?.order() {
            SeriesOrder::Exact(k) => OrderValue::Exact(BigRational::from_integer(k.into())),
            SeriesOrder::AtLeast(k) => OrderValue::AtLeast(BigRational::from_integer(k.into())),
        });
    }
    let total = s.total();
    match OrderValue::min(orders) {
        Some(OrderValue::Exact(v)) if v == BigRational::from_integer(total.into()) => Ok(s.divisors),
        Some(OrderValue::Exact(v)) => Err(JetError::Singularity(crate::singularity::SingularityError::Verification(
            format!("sum of elementary divisors {total} differs from the minor order {v}"),
        ))),
        _ => Err(JetError::Precision {
            precision: arc.precision(),
            what: "order of the maximal minors".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Ideal;
    use crate::poly::{MonomialOrder, PolyRing, Rationals};

    #[test]
    fn divisors_examples() {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::GrevLex).unwrap();
        let node = AffineSubscheme::new(Ideal::from_strs(&r, &["x^2 - y^2"]).unwrap()).unwrap();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 1]], 6).unwrap();
        assert_eq!(elementary_divisors_along_arc(&node, &arc).unwrap(), vec![1]);

        let line = AffineSubscheme::new(Ideal::from_strs(&r, &["y - x^2"]).unwrap()).unwrap();
        let arc = TruncatedArc::from_i64s(Rationals, &[vec![0, 1], vec![0, 0, 1]], 6).unwrap();
        assert_eq!(elementary_divisors_along_arc(&line, &arc).unwrap(), vec![0]);
    }

    #[test]
    fn transforms_diagonalize() {
        let f = Rationals;
        let s = |c: &[i64]| TruncatedSeries::from_i64s(f, c, 8);
        let a = vec![vec![s(&[0, 0, 1]), s(&[0, 1, 3]), s(&[2])], vec![s(&[0, 0, 0, 1]), s(&[0, 1]), s(&[0, 0, 5])]];
        let sf = smith_form(&a).unwrap();
        assert_eq!(sf.divisors, vec![0, 1]);
        // P A Q
        let prec = sf.precision();
        let mul = |x: &SeriesMatrix<Rationals>, y: &SeriesMatrix<Rationals>| -> SeriesMatrix<Rationals> {
            x.iter()
                .map(|row| {
                    (0..y[0].len())
                        .map(|j| {
                            row.iter()
                                .zip(y)
                                .fold(TruncatedSeries::zero(f, prec), |acc, (u, yr)| acc.add(&u.mul(&yr[j]).truncate(prec)))
                        })
                        .collect()
                })
                .collect()
        };
        let d = mul(&mul(&sf.p, &a), &sf.q);
        for (i, row) in d.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let want = if i == j { SeriesOrder::Exact(sf.divisors[i]) } else { SeriesOrder::AtLeast(e.precision()) };
                assert_eq!(e.order(), want, "entry ({i},{j})");
                if i == j {
                    assert_eq!(e.shift_down(sf.divisors[i]).unwrap().coeffs()[0], f.one());
                }
            }
        }
    }
}
