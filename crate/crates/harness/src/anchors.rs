//! Verbatim formula anchors tying each built-in assertion to its source.
//! Only formulae are bundled, never prose.

pub const ANCHORS: &[(&str, &str)] = &[
    ("fiber.dimension", r"{\mathbb A}^{(m-n)d+e}"),
    ("fiber.divisors", r"$e=\sum_i e_i$"),
    ("fiber.hypothesis", r"$m \ge n+e \ge 2e$"),
    ("inversion", r"\mathrm{mld}_Z(X,{\mathcal D}_X)=\mathrm{mld}_Z(A,{\mathcal I}_X^c)"),
    ("jet.witness", r"\dim \mu_X(S)+\operatorname{ord}_{{\mathcal J}_X{\mathcal I}}S > -a"),
    ("mld.lc", r"\mathrm{mld}_Z(X,{\mathcal I}) \ge 0"),
    ("order.additivity", r"\operatorname{ord}_{{\mathcal J}'_Y}=\operatorname{ord}_{{\mathcal J}_X}+\operatorname{ord}_{D^Y}"),
    ("pfaffian.conductor", r"$p_{123}{\mathcal O}_X$"),
    ("pfaffian.defect", r"$(n-3)$"),
    ("slice.identity", r"({\mathcal J}'_Y{\mathcal O}_X)^r={\mathcal J}_{r,X} \cdot {\mathcal O}_X(-rD^Y)"),
    ("slice.sum", r"${\mathcal J}'_X=\sum_Y {\mathcal J}'_Y{\mathcal O}_X$"),
    ("toric.canonical", r"${\mathcal J}_{1,X}={\mathfrak m}^2$"),
    ("toric.closure", r"${\mathfrak m}^7$"),
    ("toric.defect", r"${\mathcal D}_X={\mathfrak m}^5$"),
];

/// Panics on an unknown key: keys are compile-time constants of this crate.
pub fn anchor(key: &str) -> &'static str {
    ANCHORS
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, a)| *a)
        .unwrap_or_else(|| panic!("unknown anchor key {key}"))
}

/// Anchors that do not occur verbatim in `source`.
pub fn missing_from(source: &str) -> Vec<(&'static str, &'static str)> {
    ANCHORS.iter().copied().filter(|(_, a)| !source.contains(a)).collect()
}
