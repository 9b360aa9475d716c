//! JSON scenario documents: a ring, named ideals and a task list.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use adjlab_core::ideal::{Ideal, MonomialIdeal, QIdeal};
use adjlab_core::jets::{fiber_dimension_check, TruncatedArc};
use adjlab_core::lp::Q;
use adjlab_core::mld::{inversion_check, mld_jet_estimate, mld_monomial, MldValue, MonomialPair};
use adjlab_core::poly::{Field, MonomialOrder, PolyError, PolyRing, Polynomial, PrimeField, Rationals};
use adjlab_core::singularity::{
    conductor_on_x, jacobian_ideal, jrx_from_slice, weak_defect_sum, AffineSubscheme, JrxStatus, LciSlice,
    SliceOptions,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::HarnessError;
use crate::params::Params;
use crate::report::{int, text, texts, Recorder, Report, Status, Witness};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    /// 0 for the rationals, otherwise a prime.
    #[serde(rename = "char")]
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub op: String,
    #[serde(default)]
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub ring: RingSpec,
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
    /// Arguments of the single task run as `run <op> --input file`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub args: BTreeMap<String, Value>,
}

pub const OPS: &[&str] = &[
    "groebner",
    "equals",
    "contains",
    "dimension",
    "jacobian",
    "conductor",
    "jrx",
    "defect",
    "mld_monomial",
    "inversion",
    "fiber",
    "jet_estimate",
];

impl Document {
    pub fn parse(source: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(source)?)
    }

    /// With no task list, `op` applied to the top-level `args`.
    pub fn tasks_for(&self, op: Option<&str>) -> Result<Vec<Task>, HarnessError> {
        if !self.tasks.is_empty() {
            return Ok(self.tasks.clone());
        }
        match op {
            Some(op) => Ok(vec![Task {
                id: None,
                op: op.to_string(),
                args: self.args.clone(),
            }]),
            None => Err(HarnessError::Invalid("document has no tasks".into())),
        }
    }
}

/// 1-based line and column of byte offset `pos`.
fn position(source: &str, pos: usize) -> (usize, usize) {
    let before = &source[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, column)
}

/// Maps a polynomial parse error inside ideal `name` to a document position.
fn locate(source: &str, name: &str, poly: &str, err: PolyError) -> HarnessError {
    let PolyError::Parse { column, message, .. } = &err else {
        return HarnessError::Invalid(format!("ideal {name}: {err}"));
    };
    let key = serde_json::to_string(name).unwrap();
    let lit = serde_json::to_string(poly).unwrap();
    let start = source.find(&key).unwrap_or(0);
    match source[start..].find(&lit) {
        Some(off) => {
            let (line, col) = position(source, start + off);
            HarnessError::Parse {
                line,
                column: col + column,
                message: format!("ideal {name}: {message}"),
            }
        }
        None => HarnessError::Invalid(format!("ideal {name}: {err}")),
    }
}

pub fn run_document(source: &str, name: &str, op: Option<&str>, params: &Params) -> Result<Report, HarnessError> {
    let doc = Document::parse(source)?;
    let tasks = doc.tasks_for(op)?;
    for t in &tasks {
        if !OPS.contains(&t.op.as_str()) {
            return Err(HarnessError::Invalid(format!("unknown op `{}`", t.op)));
        }
    }
    match doc.ring.characteristic {
        0 => execute(Rationals, "q".into(), source, &doc, &tasks, name, params),
        p => {
            let f = PrimeField::new(p).map_err(|e| HarnessError::Invalid(e.to_string()))?;
            execute(f, format!("p:{p}"), source, &doc, &tasks, name, params)
        }
    }
}

struct Env<F: Field> {
    ring: Arc<PolyRing<F>>,
    ideals: BTreeMap<String, Ideal<F>>,
}

impl<F: Field> Env<F> {
    fn ideal(&self, name: &str) -> Result<&Ideal<F>, HarnessError> {
        self.ideals
            .get(name)
            .ok_or_else(|| HarnessError::Invalid(format!("unknown ideal `{name}`")))
    }

    fn scheme(&self, name: &str) -> Result<AffineSubscheme<F>, HarnessError> {
        Ok(AffineSubscheme::new(self.ideal(name)?.clone())?)
    }

    fn monomial(&self, name: &str) -> Result<MonomialIdeal, HarnessError> {
        MonomialIdeal::from_ideal(self.ideal(name)?)
            .map_err(|_| HarnessError::Invalid(format!("ideal `{name}` is not monomial")))
    }
}

fn execute<F: Field>(
    field: F,
    label: String,
    source: &str,
    doc: &Document,
    tasks: &[Task],
    name: &str,
    params: &Params,
) -> Result<Report, HarnessError> {
    let ring = PolyRing::new(&doc.ring.vars, field, MonomialOrder::GrevLex)?;
    let deadline = params.deadline(Instant::now());
    let budget = params.budget(deadline);
    let mut ideals = BTreeMap::new();
    for (iname, gens) in &doc.ideals {
        let polys = gens
            .iter()
            .map(|g| ring.parse(g).map_err(|e| locate(source, iname, g, e)))
            .collect::<Result<Vec<Polynomial<F>>, _>>()?;
        let i = Ideal::new(&ring, polys)?.with_budget(budget).with_exec(params.exec);
        ideals.insert(iname.clone(), i);
    }
    let env = Env { ring, ideals };
    let mut rec = Recorder::new(name, params.seed, &label, deadline);
    let mut outcome = Ok(());
    for (k, t) in tasks.iter().enumerate() {
        let id = t.id.clone().unwrap_or_else(|| format!("{k:03}-{}", t.op));
        if let Err(e) = rec.check_anchored(id, "", |w| task(&env, t, params, w)) {
            outcome = Err(e);
            break;
        }
    }
    Ok(rec.finish(outcome))
}

fn args<T: DeserializeOwned>(t: &Task) -> Result<T, HarnessError> {
    let v = Value::Object(t.args.clone().into_iter().collect());
    serde_json::from_value(v).map_err(|e| HarnessError::Invalid(format!("op {}: {e}", t.op)))
}

fn rational(s: &str) -> Result<Q, HarnessError> {
    s.trim()
        .parse::<Q>()
        .map_err(|_| HarnessError::Invalid(format!("`{s}` is not a fraction a/b")))
}

fn expect_bool(w: &mut Witness, got: bool, expect: Option<bool>) -> Status {
    w.insert("value".into(), got.into());
    Status::from_bool(got == expect.unwrap_or(true))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct One {
    ideal: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Two {
    left: String,
    right: String,
    expect: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Dimension {
    ideal: String,
    expect: Option<Option<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OnX {
    x: String,
    expect: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Slice {
    x: String,
    y: String,
    #[serde(default = "one")]
    r: u32,
    expect: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Defect {
    x: String,
    #[serde(default = "one")]
    r: u32,
    #[serde(default = "seeds")]
    seeds: Vec<u64>,
    expect: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Mld {
    /// `[ideal name, exponent]` pairs.
    #[serde(default)]
    boundary: Vec<(String, String)>,
    expect: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Inversion {
    x: String,
    #[serde(default = "one")]
    r: u32,
    #[serde(default = "seeds")]
    seeds: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Fiber {
    y: String,
    /// Integer coefficients of each coordinate series.
    arc: Vec<Vec<i64>>,
    precision: usize,
    n: usize,
    m: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Estimate {
    boundary: Vec<(String, String)>,
    center: Option<String>,
    #[serde(default = "three")]
    levels: usize,
    probe: String,
}

fn one() -> u32 {
    1
}

fn three() -> usize {
    3
}

fn seeds() -> Vec<u64> {
    vec![1, 2, 3]
}

fn canonical<F: Field>(i: &Ideal<F>) -> Result<Value, HarnessError> {
    Ok(texts(i.canonical_strings()?))
}

/// Compares `got` with ideal `expect` modulo `I_X` when a name is given.
fn compare_on_x<F: Field>(
    env: &Env<F>,
    x: &AffineSubscheme<F>,
    got: &Ideal<F>,
    expect: &Option<String>,
    w: &mut Witness,
) -> Result<Status, HarnessError> {
    w.insert("ideal".into(), canonical(got)?);
    match expect {
        None => Ok(Status::Pass),
        Some(name) => {
            let want = x.restrict(env.ideal(name)?)?;
            Ok(Status::from_bool(x.restrict(got)?.equals(&want)?))
        }
    }
}

fn task<F: Field>(env: &Env<F>, t: &Task, params: &Params, w: &mut Witness) -> Result<Status, HarnessError> {
    w.insert("op".into(), text(&t.op));
    match t.op.as_str() {
        "groebner" => {
            let a: One = args(t)?;
            w.insert("basis".into(), canonical(env.ideal(&a.ideal)?)?);
            Ok(Status::Pass)
        }
        "equals" => {
            let a: Two = args(t)?;
            let got = env.ideal(&a.left)?.equals(env.ideal(&a.right)?)?;
            Ok(expect_bool(w, got, a.expect))
        }
        "contains" => {
            let a: Two = args(t)?;
            let got = env.ideal(&a.left)?.contains_ideal(env.ideal(&a.right)?)?;
            Ok(expect_bool(w, got, a.expect))
        }
        "dimension" => {
            let a: Dimension = args(t)?;
            let d = env.ideal(&a.ideal)?.krull_dimension()?;
            w.insert("dimension".into(), d.map_or(Value::Null, int));
            Ok(Status::from_bool(a.expect.is_none_or(|e| e == d)))
        }
        "jacobian" => {
            let a: OnX = args(t)?;
            let x = env.scheme(&a.x)?;
            let j = x.restrict(&jacobian_ideal(&x)?)?;
            compare_on_x(env, &x, &j, &a.expect, w)
        }
        "conductor" => {
            let a: Slice = args(t)?;
            let x = env.scheme(&a.x)?;
            let y = LciSlice::from_generators(&x, env.ideal(&a.y)?.generators().to_vec())?;
            compare_on_x(env, &x, &conductor_on_x(&y)?, &a.expect, w)
        }
        "jrx" => {
            let a: Slice = args(t)?;
            let x = env.scheme(&a.x)?;
            let y = LciSlice::from_generators(&x, env.ideal(&a.y)?.generators().to_vec())?;
            let e = jrx_from_slice(&x, &y, a.r)?;
            w.insert("status".into(), text(format!("{:?}", e.status)));
            let s = compare_on_x(env, &x, &e.candidate, &a.expect, w)?;
            Ok(if e.status == JrxStatus::Failed { Status::Fail } else { s })
        }
        "defect" => {
            let a: Defect = args(t)?;
            let x = env.scheme(&a.x)?;
            let d = weak_defect_sum(&x, a.r, &a.seeds, &SliceOptions::default())?;
            w.insert("slices_used".into(), int(d.slices_used));
            w.insert("stabilized".into(), d.stabilized.into());
            compare_on_x(env, &x, &d.ideal, &a.expect, w)
        }
        "mld_monomial" => {
            let a: Mld = args(t)?;
            let n = env.ring.nvars();
            let boundary = a
                .boundary
                .iter()
                .map(|(i, e)| Ok((env.monomial(i)?, rational(e)?)))
                .collect::<Result<Vec<_>, HarnessError>>()?;
            let r = mld_monomial(&MonomialPair::affine(n, boundary)?)?;
            w.insert("mld".into(), text(&r.value));
            w.insert("log_canonical".into(), r.log_canonical().into());
            let ok = match a.expect.as_deref().map(str::trim) {
                None => true,
                Some("-inf") => r.value == MldValue::NegInfinity,
                Some(v) => r.value == MldValue::Finite(rational(v)?),
            };
            Ok(Status::from_bool(ok))
        }
        "inversion" => {
            let a: Inversion = args(t)?;
            let rep = inversion_check(&env.scheme(&a.x)?, a.r, &a.seeds)?;
            w.insert("left".into(), text(&rep.left.value));
            w.insert("right".into(), text(&rep.right.value));
            Ok(Status::from_bool(rep.pass))
        }
        "fiber" => {
            let a: Fiber = args(t)?;
            let arc = TruncatedArc::from_i64s(env.ring.field().clone(), &a.arc, a.precision)?;
            let rep = fiber_dimension_check(&env.scheme(&a.y)?, &arc, a.n, a.m)?;
            w.insert("expected".into(), int(rep.expected));
            w.insert("measured".into(), rep.measured.map_or(Value::Null, int));
            w.insert("e".into(), int(rep.e));
            Ok(Status::from_bool(rep.pass))
        }
        "jet_estimate" => {
            let a: Estimate = args(t)?;
            let factors = a
                .boundary
                .iter()
                .map(|(i, e)| Ok((env.ideal(i)?.clone(), rational(e)?)))
                .collect::<Result<Vec<_>, HarnessError>>()?;
            let qi = QIdeal::new(factors)?;
            let center = match &a.center {
                Some(c) => env.ideal(c)?.clone(),
                None => Ideal::maximal_at_origin(&env.ring).with_budget(params.budget(None)),
            };
            let e = mld_jet_estimate(&qi, &center, a.levels, &rational(&a.probe)?)?;
            w.insert("best_upper".into(), e.best_upper.as_ref().map_or(Value::Null, text));
            w.insert("certifies_below_probe".into(), e.certifies_below_probe.into());
            if let Some(o) = &e.oracle {
                w.insert("oracle".into(), text(o));
            }
            Ok(Status::from_bool(e.sound != Some(false)))
        }
        other => Err(HarnessError::Invalid(format!("unknown op `{other}`"))),
    }
}
