//! Built-in scenarios and the catalog describing them.

use std::time::Instant;

use adjlab_core::exec::Exec;
use adjlab_core::ideal::{Budget, Ideal};
use adjlab_core::poly::Field;
use serde::{Deserialize, Serialize};

use crate::anchors::anchor;
use crate::error::HarnessError;
use crate::params::{FieldChoice, Params};
use crate::report::{Recorder, Report};

/// Calls `$body` with `$f` bound to the selected field.
macro_rules! with_field {
    ($ctx:expr, $f:ident => $body:expr) => {
        match $ctx.field {
            Some($crate::params::FieldChoice::Prime(p)) => {
                let $f = adjlab_core::poly::PrimeField::new(p)?;
                $body
            }
            _ => {
                let $f = adjlab_core::poly::Rationals;
                $body
            }
        }
    };
}

mod jets;
mod mld;
mod pfaffian;
mod slices;
mod toric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuntimeClass {
    Seconds,
    Minutes,
    Stretch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub anchor: String,
    pub verifies: String,
    pub runtime: RuntimeClass,
    /// `None` for scenarios that do no polynomial arithmetic.
    pub default_field: Option<FieldChoice>,
    pub stretch: bool,
}

/// Everything a scenario body needs besides the recorder.
pub struct Ctx {
    pub params: Params,
    pub field: Option<FieldChoice>,
    pub budget: Budget,
    pub exec: Exec,
}

impl Ctx {
    pub fn ideal<F: Field>(&self, i: Ideal<F>) -> Ideal<F> {
        i.with_budget(self.budget).with_exec(self.exec)
    }
}

type Body = fn(&Ctx, &mut Recorder) -> Result<(), HarnessError>;

struct Scenario {
    name: &'static str,
    anchor_key: &'static str,
    verifies: &'static str,
    runtime: RuntimeClass,
    default_field: Option<FieldChoice>,
    stretch: bool,
    body: Body,
}

const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "example_3_1_toric",
        anchor_key: "toric.canonical",
        verifies: "cubic cone 1/3(1,1,1) through its monomial parametrization: J_1X = m^2, closure of J'_X = m^7, defect m^5",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Rationals),
        stretch: false,
        body: toric::cubic_cone_toric,
    },
    Scenario {
        name: "example_3_1_embedded_modp",
        anchor_key: "toric.closure",
        verifies: "cubic cone embedded in A^10 over F_p: dimension, general slice, slice identity",
        runtime: RuntimeClass::Stretch,
        default_field: Some(FieldChoice::Prime(crate::params::DEFAULT_PRIME)),
        stretch: true,
        body: toric::cubic_cone_embedded,
    },
    Scenario {
        name: "example_3_2",
        anchor_key: "pfaffian.conductor",
        verifies: "pfaffian variety of a generic alternating matrix: triple conductors and the defect sum",
        runtime: RuntimeClass::Minutes,
        default_field: Some(FieldChoice::Prime(crate::params::DEFAULT_PRIME)),
        stretch: false,
        body: pfaffian::pfaffian_conductors,
    },
    Scenario {
        name: "node_suite",
        anchor_key: "slice.identity",
        verifies: "line inside the node: slice identity, fiber dimensions, order additivity, inversion",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Rationals),
        stretch: false,
        body: jets::node_suite,
    },
    Scenario {
        name: "prop_4_3",
        anchor_key: "fiber.dimension",
        verifies: "jet fiber dimension over seeded arcs on complete intersections, with the hypothesis refusal",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Rationals),
        stretch: false,
        body: jets::lci_fibers,
    },
    Scenario {
        name: "eq3_random",
        anchor_key: "slice.identity",
        verifies: "slice identity for seeded complete-intersection slices of non-lci varieties, and the Jacobian sum",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Prime(crate::params::DEFAULT_PRIME)),
        stretch: false,
        body: slices::random_slices,
    },
    Scenario {
        name: "inversion_subspace",
        anchor_key: "inversion",
        verifies: "both sides of inversion of adjunction for coordinate subspaces, a diagonal line and the node",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Rationals),
        stretch: false,
        body: mld::inversion_subspace,
    },
    Scenario {
        name: "mld_corpus",
        anchor_key: "mld.lc",
        verifies: "exact monomial mld against brute-force weight enumeration and negative directions",
        runtime: RuntimeClass::Seconds,
        default_field: None,
        stretch: false,
        body: mld::mld_corpus,
    },
    Scenario {
        name: "jet_estimate_cross",
        anchor_key: "jet.witness",
        verifies: "contact-locus upper bounds never certify below the exact monomial mld",
        runtime: RuntimeClass::Seconds,
        default_field: Some(FieldChoice::Prime(crate::params::DEFAULT_PRIME)),
        stretch: false,
        body: mld::jet_estimate_cross,
    },
];

pub fn catalog() -> Vec<CatalogEntry> {
    SCENARIOS
        .iter()
        .map(|s| CatalogEntry {
            name: s.name.to_string(),
            anchor: anchor(s.anchor_key).to_string(),
            verifies: s.verifies.to_string(),
            runtime: s.runtime,
            default_field: s.default_field,
            stretch: s.stretch,
        })
        .collect()
}

/// Names of the non-stretch scenarios, in catalog order.
pub fn default_suite() -> Vec<&'static str> {
    SCENARIOS.iter().filter(|s| !s.stretch).map(|s| s.name).collect()
}

pub fn is_builtin(name: &str) -> bool {
    SCENARIOS.iter().any(|s| s.name == name)
}

pub fn run_scenario(name: &str, params: &Params) -> Result<Report, HarnessError> {
    let s = SCENARIOS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| HarnessError::Unknown(name.to_string()))?;
    if s.stretch && !params.stretch {
        return Err(HarnessError::Invalid(format!("{name} is a stretch scenario; pass --stretch to run it")));
    }
    let mut params = params.clone();
    if s.stretch && params.time_budget.is_none() {
        params.time_budget = Some(STRETCH_BUDGET);
    }
    let field = if s.default_field.is_some() {
        params.field.or(s.default_field)
    } else {
        None
    };
    let field_label = field.map_or("none".to_string(), |f| f.to_string());
    let deadline = params.deadline(Instant::now());
    let ctx = Ctx {
        budget: params.budget(deadline),
        exec: params.exec,
        field,
        params: params.clone(),
    };
    let mut rec = Recorder::new(name, params.seed, &field_label, deadline);
    let outcome = (s.body)(&ctx, &mut rec);
    Ok(rec.finish(outcome))
}

/// Declared time budget of stretch scenarios when none is given.
pub const STRETCH_BUDGET: std::time::Duration = std::time::Duration::from_secs(1800);

/// Runs scenarios in the work pool; results come back in input order.
pub fn run_many(names: &[&str], params: &Params) -> Vec<Result<Report, HarnessError>> {
    params.exec.map(names, |n| run_scenario(n, params))
}
