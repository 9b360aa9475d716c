use super::{jacobian_ideal, AffineSubscheme, SingularityError};
use crate::ideal::Ideal;
use crate::poly::{Field, Polynomial};
use crate::random;

/// A complete intersection `Y ⊇ X` of codimension `c`, scheme-theoretically
/// the union of `X` and a residual `C^Y`.
#[derive(Clone, Debug)]
pub struct LciSlice<F: Field> {
    parent: AffineSubscheme<F>,
    ideal: Ideal<F>,
    residual: Ideal<F>,
    seed: Option<u64>,
    attempts: u32,
}

impl<F: Field> LciSlice<F> {
    /// Validates a slice given by explicit generators.
    pub fn from_generators(x: &AffineSubscheme<F>, gens: Vec<Polynomial<F>>) -> Result<Self, SingularityError> {
        validate(x, gens, None, 1).map_err(|check| SingularityError::SliceValidation { check, attempts: 1 })?
    }

    pub fn parent(&self) -> &AffineSubscheme<F> {
        &self.parent
    }

    /// `I_Y`.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// `I_{C^Y} = I_Y : I_X`.
    pub fn residual(&self) -> &Ideal<F> {
        &self.residual
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn attempts(&self) -> u32 {
        self.attempts
    }

    /// `Y` as a subscheme of the ambient space (dimension `d`).
    pub fn as_subscheme(&self) -> AffineSubscheme<F> {
        AffineSubscheme {
            ideal: self.ideal.clone(),
            dim: self.parent.dim,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SliceOptions {
    /// Extra draws after the first failed validation.
    pub retries: u32,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions { retries: 3 }
    }
}

type Validated<F> = Result<Result<LciSlice<F>, SingularityError>, String>;

fn validate<F: Field>(x: &AffineSubscheme<F>, gens: Vec<Polynomial<F>>, seed: Option<u64>, attempts: u32) -> Validated<F> {
    let inner = || -> Result<Result<LciSlice<F>, String>, SingularityError> {
        let iy = x.ideal.derive(gens)?;
        if !x.ideal.contains_ideal(&iy)? {
            return Ok(Err("I_Y is not contained in I_X".into()));
        }
        if iy.krull_dimension()? != Some(x.dim) {
            return Ok(Err(format!("codimension of I_Y differs from {}", x.codim())));
        }
        let residual = iy.quotient(&x.ideal)?;
        if !x.ideal.intersection(&residual)?.equals(&iy)? {
            return Ok(Err("scheme-union check I_Y = I_X ∩ (I_Y : I_X) failed".into()));
        }
        Ok(Ok(LciSlice {
            parent: x.clone(),
            ideal: iy,
            residual,
            seed,
            attempts,
        }))
    };
    match inner() {
        Err(e) => Ok(Err(e)),
        Ok(Ok(s)) => Ok(Ok(s)),
        Ok(Err(check)) => Err(check),
    }
}

/// `c` random combinations of the generators of `I_X`, validated; up to
/// `retries` further draws from the same stream when validation fails.
pub fn general_lci_slice<F: Field>(
    x: &AffineSubscheme<F>,
    seed: u64,
    opts: &SliceOptions,
) -> Result<LciSlice<F>, SingularityError> {
    let ring = x.ideal.ring().clone();
    let field = ring.field().clone();
    let gens = x.ideal.generators();
    let c = x.codim();
    if c == 0 {
        return Err(SingularityError::Invalid("X is the whole ambient space".into()));
    }
    let mut rng = random::rng(seed);
    let mut last = String::new();
    for attempt in 0..=opts.retries {
        let combos: Vec<Polynomial<F>> = (0..c)
            .map(|_| {
                let coeffs = random::general_coefficients(&mut rng, gens.len());
                let mut acc = ring.zero();
                for (g, a) in gens.iter().zip(coeffs) {
                    acc = acc.try_add(&g.scale(&field.from_i64(a))).unwrap();
                }
                acc
            })
            .collect();
        match validate(x, combos, Some(seed), attempt + 1) {
            Ok(r) => return r,
            Err(check) => last = check,
        }
    }
    Err(SingularityError::SliceValidation {
        check: last,
        attempts: opts.retries + 1,
    })
}

/// `I_{C^Y} O_X`, represented as `I_{C^Y} + I_X`.
pub fn conductor_on_x<F: Field>(y: &LciSlice<F>) -> Result<Ideal<F>, SingularityError> {
    y.parent.restrict(&y.residual)
}

/// `sum_Y C_{X/Y}` over the given slices.
pub fn lci_defect_ideal<F: Field>(x: &AffineSubscheme<F>, slices: &[LciSlice<F>]) -> Result<Ideal<F>, SingularityError> {
    let mut acc = x.ideal.clone();
    for y in slices {
        acc = acc.sum(&conductor_on_x(y)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct DivisorialPower<F: Field> {
    /// `O_X(-rD)`, containing `I_X`.
    pub ideal: Ideal<F>,
    /// The nonzerodivisor used for the double colon.
    pub divisor: Polynomial<F>,
    /// Outcome of repeating the construction with a second nonzerodivisor,
    /// when one was found among the first candidates.
    pub second_choice_agrees: Option<bool>,
}

const NZD_CANDIDATES: usize = 6;
const NZD_SEED: u64 = 0x6e7a64;

fn is_nonzerodivisor<F: Field>(x: &AffineSubscheme<F>, f: &Polynomial<F>) -> Result<bool, SingularityError> {
    if x.ideal.contains(f)? {
        return Ok(false);
    }
    Ok(x.ideal.contains_ideal(&x.ideal.quotient_by(f)?)?)
}

/// Reflexive hull of `a^r` on `X` as `(f) : ((f) : a^r)` in `O_X` for a
/// nonzerodivisor `f` in `a^r`.
pub fn divisorial_power<F: Field>(
    a: &Ideal<F>,
    r: u32,
    x: &AffineSubscheme<F>,
) -> Result<DivisorialPower<F>, SingularityError> {
    if r == 0 {
        return Err(SingularityError::Invalid("r must be positive".into()));
    }
    let ar = x.restrict(&a.power(r)?)?;
    let mut cands: Vec<Polynomial<F>> = Vec::new();
    for g in ar.generators() {
        if cands.len() >= NZD_CANDIDATES {
            break;
        }
        if is_nonzerodivisor(x, g)? {
            cands.push(g.clone());
        }
    }
    // every generator may be a zerodivisor while a general combination is not
    let ring = ar.ring().clone();
    let mut rng = random::rng(NZD_SEED);
    for _ in 0..NZD_CANDIDATES {
        if cands.len() >= 2 {
            break;
        }
        let coeffs = random::general_coefficients(&mut rng, ar.generators().len());
        let mut g = ring.zero();
        for (h, c) in ar.generators().iter().zip(coeffs) {
            g = g.try_add(&h.scale(&ring.field().from_i64(c)))?;
        }
        if is_nonzerodivisor(x, &g)? {
            cands.push(g);
        }
    }
    let Some(f) = cands.first().cloned() else {
        return Err(SingularityError::NoNonzerodivisor);
    };
    let hull = |f: &Polynomial<F>| -> Result<Ideal<F>, SingularityError> {
        let principal = x.restrict(&x.ideal.derive(vec![f.clone()])?)?;
        let inner = principal.quotient(&ar)?;
        Ok(principal.quotient(&inner)?)
    };
    let ideal = hull(&f)?;
    let second_choice_agrees = match cands.get(1) {
        Some(g) => Some(hull(g)?.equals(&ideal)?),
        None => None,
    };
    Ok(DivisorialPower {
        ideal,
        divisor: f,
        second_choice_agrees,
    })
}

#[derive(Clone, Debug)]
pub struct DefectSum<F: Field> {
    pub ideal: Ideal<F>,
    pub slices_used: usize,
    /// Two consecutive partial sums coincided.
    pub stabilized: bool,
}

/// `sum_Y O_X(-r D^Y)` over slices drawn from `seeds`, stopping once a new
/// slice leaves the sum unchanged.
pub fn weak_defect_sum<F: Field>(
    x: &AffineSubscheme<F>,
    r: u32,
    seeds: &[u64],
    opts: &SliceOptions,
) -> Result<DefectSum<F>, SingularityError> {
    if seeds.is_empty() {
        return Err(SingularityError::Invalid("no seeds supplied".into()));
    }
    let exec = x.ideal.exec();
    let parts = exec.map(seeds, |&s| -> Result<Ideal<F>, SingularityError> {
        let y = general_lci_slice(x, s, opts)?;
        Ok(divisorial_power(&conductor_on_x(&y)?, r, x)?.ideal)
    });
    let mut acc: Option<Ideal<F>> = None;
    let mut used = 0;
    for p in parts {
        let p = p?;
        used += 1;
        match acc {
            None => acc = Some(p),
            Some(a) => {
                let next = a.sum(&p)?;
                if a.contains_ideal(&next)? {
                    return Ok(DefectSum {
                        ideal: a,
                        slices_used: used,
                        stabilized: true,
                    });
                }
                acc = Some(next);
            }
        }
    }
    Ok(DefectSum {
        ideal: acc.unwrap(),
        slices_used: used,
        stabilized: false,
    })
}

/// `[(J'_X)^r : J_{r,X}]` in `O_X`.
pub fn weak_defect_colon<F: Field>(x: &AffineSubscheme<F>, r: u32, j_rx: &Ideal<F>) -> Result<Ideal<F>, SingularityError> {
    let jac = jacobian_ideal(x)?;
    weak_defect_colon_with(x, &jac, r, j_rx)
}

pub fn weak_defect_colon_with<F: Field>(
    x: &AffineSubscheme<F>,
    jac: &Ideal<F>,
    r: u32,
    j_rx: &Ideal<F>,
) -> Result<Ideal<F>, SingularityError> {
    let lhs = x.restrict(&jac.power(r)?)?;
    Ok(lhs.quotient(&x.restrict(j_rx)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JrxStatus {
    Exact,
    UpToSaturation,
    Failed,
}

#[derive(Clone, Debug)]
pub struct JrxResult<F: Field> {
    /// Candidate for `J_{r,X}` (contains `I_X`).
    pub candidate: Ideal<F>,
    /// `O_X(-r D^Y)` of the last slice used.
    pub divisorial: Ideal<F>,
    /// `(J'_Y O_X)^r` of the last slice used.
    pub lhs: Ideal<F>,
    pub status: JrxStatus,
    pub slices_used: usize,
}

struct SliceData<F: Field> {
    lhs: Ideal<F>,
    div: Ideal<F>,
}

fn slice_data<F: Field>(x: &AffineSubscheme<F>, y: &LciSlice<F>, r: u32) -> Result<SliceData<F>, SingularityError> {
    let jy = jacobian_ideal(&y.as_subscheme())?;
    let lhs = x.restrict(&x.restrict(&jy)?.power(r)?)?;
    let div = divisorial_power(&conductor_on_x(y)?, r, x)?.ideal;
    Ok(SliceData { lhs, div })
}

fn verify<F: Field>(x: &AffineSubscheme<F>, cand: &Ideal<F>, d: &SliceData<F>) -> Result<JrxStatus, SingularityError> {
    let prod = x.restrict(&cand.product(&d.div)?)?;
    if prod.equals(&d.lhs)? {
        return Ok(JrxStatus::Exact);
    }
    if prod.equals_up_to_saturation(&d.lhs, &d.div)? {
        return Ok(JrxStatus::UpToSaturation);
    }
    Ok(JrxStatus::Failed)
}

/// `((J'_Y O_X)^r : O_X(-r D^Y))`, verified by multiplying back.
pub fn jrx_from_slice<F: Field>(x: &AffineSubscheme<F>, y: &LciSlice<F>, r: u32) -> Result<JrxResult<F>, SingularityError> {
    let d = slice_data(x, y, r)?;
    let candidate = d.lhs.quotient(&d.div)?;
    let status = verify(x, &candidate, &d)?;
    Ok(JrxResult {
        candidate,
        divisorial: d.div,
        lhs: d.lhs,
        status,
        slices_used: 1,
    })
}

/// Like [`jrx_from_slice`], intersecting candidates over further slices
/// until the intersection verifies against every slice used so far.
pub fn jrx_from_slices<F: Field>(
    x: &AffineSubscheme<F>,
    slices: &[LciSlice<F>],
    r: u32,
) -> Result<JrxResult<F>, SingularityError> {
    let mut data = Vec::new();
    let mut cand: Option<Ideal<F>> = None;
    for y in slices {
        let d = slice_data(x, y, r)?;
        let c = d.lhs.quotient(&d.div)?;
        cand = Some(match cand {
            None => c,
            Some(prev) => prev.intersection(&c)?,
        });
        data.push(d);
        let cur = cand.as_ref().unwrap();
        let mut worst = JrxStatus::Exact;
        for d in &data {
            match verify(x, cur, d)? {
                JrxStatus::Failed => {
                    worst = JrxStatus::Failed;
                    break;
                }
                JrxStatus::UpToSaturation => worst = JrxStatus::UpToSaturation,
                JrxStatus::Exact => {}
            }
        }
        if worst != JrxStatus::Failed {
            let last = data.pop().unwrap();
            return Ok(JrxResult {
                candidate: cur.clone(),
                divisorial: last.div,
                lhs: last.lhs,
                status: worst,
                slices_used: data.len() + 1,
            });
        }
    }
    Err(SingularityError::JrxUndetermined)
}
