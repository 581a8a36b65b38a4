//! Scenario harness: each scenario rebuilds one structural argument about
//! trivial extensions on a concrete finite instance and reports every
//! intermediate identity as a check with a witness.

mod examples;
mod lemma;
mod product;
mod structure;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{render_vector, submodule_elements, ModuleSpec, Vector};
use crate::resolve::{project_module, PdVerdict};
use crate::ring::{decompose_into_local_factors, Elem, Ring};

pub use examples::{ex22_scenario, ex23_scenario};
pub use lemma::lemma12_scenario;
pub use product::{random_presentation, thm13_product_scenario};
pub use structure::{residue_extension, thm11_part2_bounded, thm11_structure_scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    RecordedDiscrepancy,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::RecordedDiscrepancy => "recorded-discrepancy",
            CheckStatus::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity under test, written as a formula.
    pub anchor: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: &str, anchor: &str, detail: impl Into<String>) -> Check {
        Check { name: name.into(), anchor: anchor.into(), status: CheckStatus::Pass, witness: None, detail: Some(detail.into()) }
    }

    pub fn fail(name: &str, anchor: &str, witness: impl Into<String>) -> Check {
        Check { name: name.into(), anchor: anchor.into(), status: CheckStatus::Fail, witness: Some(witness.into()), detail: None }
    }

    pub fn discrepancy(name: &str, anchor: &str, witness: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: CheckStatus::RecordedDiscrepancy,
            witness: Some(witness.into()),
            detail: Some(detail.into()),
        }
    }

    /// `pass` when `witness` is `None`.
    pub fn verdict(name: &str, anchor: &str, witness: Option<String>, detail: impl Into<String>) -> Check {
        match witness {
            None => Check::pass(name, anchor, detail),
            Some(w) => Check { detail: Some(detail.into()), ..Check::fail(name, anchor, w) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario_id: String,
    pub instance: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Wall time, only filled in on request so that reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl ScenarioReport {
    fn new(id: ScenarioId, instance: &[(&str, String)]) -> Self {
        ScenarioReport {
            scenario_id: id.to_string(),
            instance: instance.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    /// Worst status over all checks.
    pub fn status(&self) -> CheckStatus {
        self.checks.iter().map(|c| c.status).max().unwrap_or(CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScenarioId {
    #[serde(rename = "lemma12")]
    Lemma12,
    #[serde(rename = "thm11-structure")]
    Thm11Structure,
    #[serde(rename = "thm11-part2")]
    Thm11Part2,
    #[serde(rename = "thm13")]
    Thm13,
    #[serde(rename = "ex22")]
    Ex22,
    #[serde(rename = "ex23")]
    Ex23,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 6] = [
        ScenarioId::Lemma12,
        ScenarioId::Thm11Structure,
        ScenarioId::Thm11Part2,
        ScenarioId::Thm13,
        ScenarioId::Ex22,
        ScenarioId::Ex23,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioId::Lemma12 => "lemma12",
            ScenarioId::Thm11Structure => "thm11-structure",
            ScenarioId::Thm11Part2 => "thm11-part2",
            ScenarioId::Thm13 => "thm13",
            ScenarioId::Ex22 => "ex22",
            ScenarioId::Ex23 => "ex23",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ScenarioId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| format!("unknown scenario {s:?}"))
    }
}

/// Every element of `R^n`, refusing more than `budget` vectors.
pub(crate) fn all_vectors(ring: &Ring, n: usize, budget: u64) -> Result<Vec<Vector>> {
    let needed = (ring.card() as u128).pow(n as u32);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    let mut out: Vec<Vector> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| ring.all_elements().map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    Ok(out)
}

/// Elements of a submodule of a free module, by closure.
pub(crate) fn elements_of(m: &ModuleSpec, budget: u64) -> Result<BTreeSet<Vector>> {
    if !m.relations().is_empty() {
        return Err(Error::WrongShape("expected a submodule of a free module".into()));
    }
    submodule_elements(m.ring(), m.ambient_rank(), &m.generators(), budget)
}

/// `None` when the sets agree, otherwise a rendered element of the
/// symmetric difference with the side it lies on.
pub(crate) fn set_difference(ring: &Ring, computed: &BTreeSet<Vector>, expected: &BTreeSet<Vector>) -> Option<String> {
    if let Some(v) = computed.difference(expected).next() {
        return Some(format!("{} computed but not expected", render_vector(ring, v)));
    }
    expected.difference(computed).next().map(|v| format!("{} expected but not computed", render_vector(ring, v)))
}

/// Projective dimension verdict together with the Betti numbers of every
/// local factor's resolution.
pub(crate) fn verdict_with_betti(m: &ModuleSpec, depth: usize) -> Result<(PdVerdict, Vec<(Vec<usize>, bool)>)> {
    let mut verdict = PdVerdict::Finite { pd: 0 };
    let mut shapes = Vec::new();
    for f in decompose_into_local_factors(m.ring())? {
        let res = crate::resolve::minimal_resolution(&project_module(m, &f)?, depth)?;
        verdict = verdict.max(crate::resolve::verdict_of(&res)?);
        shapes.push((res.betti.clone(), res.terminated));
    }
    Ok((verdict, shapes))
}

/// Projectivity decided factor by factor.
pub(crate) fn projective_anywhere(m: &ModuleSpec) -> Result<bool> {
    for f in decompose_into_local_factors(m.ring())? {
        if !crate::module::is_projective(&project_module(m, &f)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isomorphism decided factor by factor.
pub(crate) fn isomorphic_anywhere(m: &ModuleSpec, n: &ModuleSpec) -> Result<bool> {
    if m.ring().is_local() {
        return Ok(crate::module::modules_isomorphic(m, n)?.is_some());
    }
    for f in decompose_into_local_factors(m.ring())? {
        if crate::module::modules_isomorphic(&project_module(m, &f)?, &project_module(n, &f)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn render_elems(ring: &Ring, xs: &[Elem]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| ring.render(x)).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn render_betti(shapes: &[(Vec<usize>, bool)]) -> String {
    let parts: Vec<String> = shapes
        .iter()
        .map(|(b, t)| {
            let nums: Vec<String> = b.iter().map(usize::to_string).collect();
            format!("[{}]{}", nums.join(","), if *t { " terminated" } else { "" })
        })
        .collect();
    parts.join(" x ")
}
