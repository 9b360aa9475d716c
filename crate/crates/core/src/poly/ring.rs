use std::collections::HashSet;
use std::sync::Arc;

use super::{Field, Monomial, MonomialOrder, PolyError, Polynomial};

/// Polynomial ring `k[x_1, ..., x_N]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(
        vars: &[S],
        field: F,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(PolyError::InvalidVariables("empty variable name".into()));
            }
            if !is_identifier(v) {
                return Err(PolyError::InvalidVariables(format!("`{v}` is not an identifier")));
            }
            if !seen.insert(v.as_str()) {
                return Err(PolyError::InvalidVariables(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination { split } = order {
            if split > vars.len() {
                return Err(PolyError::InvalidVariables(format!(
                    "elimination split {split} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field.clone(),
            order,
        })
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        Polynomial::from_terms(self, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn from_i64(self: &Arc<Self>, c: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(c))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars(), "variable index out of range");
        Polynomial::from_terms(self, vec![(Monomial::var(self.nvars(), i), self.field.one())])
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn monomial(self: &Arc<Self>, exps: Vec<u32>) -> Polynomial<F> {
        assert_eq!(exps.len(), self.nvars());
        Polynomial::from_terms(self, vec![(Monomial::new(exps), self.field.one())])
    }

    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Polynomial<F>, PolyError> {
        super::parse_polynomial(self, s)
    }

    /// Structural equality, with a pointer fast path.
    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
