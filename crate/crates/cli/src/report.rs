//! The JSON report document every subcommand emits, and its markdown view.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use trivext::paperlab::{CheckStatus, ScenarioReport};
use trivext::resolve::PdVerdict;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: String,
    pub invocation: Invocation,
    pub payloads: Vec<Payload>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invocation {
    pub subcommand: String,
    /// Effective settings after defaults, config file and flags.
    pub settings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Parse(ParsePayload),
    Resolution(ResolutionPayload),
    Pd(PdPayload),
    GlobalDimension(GlobalDimensionPayload),
    Ideals(IdealsPayload),
    Scenario(ScenarioReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsePayload {
    pub input: String,
    pub canonical: String,
    pub descriptor: String,
    pub ast: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionPayload {
    pub ring: String,
    pub module: String,
    pub betti: Vec<usize>,
    pub depth_reached: usize,
    pub terminated: bool,
    pub minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub periodicity: Option<Periodicity>,
    pub verdict: PdVerdict,
    /// `differentials[i]` is `d_{i+1}` as rendered rows; verbose runs only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub differentials: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub offset: usize,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdPayload {
    pub ring: String,
    pub module: String,
    pub verdict: PdVerdict,
    pub factors: Vec<FactorVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorVerdict {
    pub factor: String,
    pub verdict: PdVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalDimensionPayload {
    pub ring: String,
    pub verdict: PdVerdict,
    pub factors: Vec<FactorProbeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorProbeEntry {
    pub factor: String,
    pub is_field: bool,
    pub residue_verdict: PdVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealsPayload {
    pub ring: String,
    pub count: usize,
    /// Present when the ring is a trivial extension and the pair-form probe ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair_form_count: Option<usize>,
    pub ideals: Vec<IdealEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub generators: Vec<String>,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair_form: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Payload {
    pub fn status(&self) -> CheckStatus {
        match self {
            Payload::Scenario(s) => s.status(),
            Payload::Ideals(i) if i.ideals.iter().any(|e| e.pair_form == Some(false)) => CheckStatus::RecordedDiscrepancy,
            _ => CheckStatus::Pass,
        }
    }
}

impl ReportDocument {
    pub fn new(subcommand: &str, settings: BTreeMap<String, String>, payloads: Vec<Payload>) -> Self {
        let status = payloads.iter().map(Payload::status).max().unwrap_or(CheckStatus::Pass);
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            invocation: Invocation { subcommand: subcommand.to_string(), settings },
            payloads,
            status,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# trivext {}\n", self.invocation.subcommand);
        let _ = writeln!(out, "status: **{}**\n", self.status);
        if !self.invocation.settings.is_empty() {
            out.push_str("| setting | value |\n|---|---|\n");
            for (k, v) in &self.invocation.settings {
                let _ = writeln!(out, "| {k} | {} |", cell(v));
            }
            out.push('\n');
        }
        for p in &self.payloads {
            render_payload(&mut out, p);
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn render_payload(out: &mut String, p: &Payload) {
    match p {
        Payload::Parse(p) => {
            let _ = writeln!(out, "## parse\n\n- input: `{}`\n- canonical: `{}`\n- descriptor: `{}`\n", p.input, p.canonical, p.descriptor);
        }
        Payload::Resolution(r) => {
            let _ = writeln!(out, "## resolution of {} over {}\n", r.module, r.ring);
            let betti: Vec<String> = r.betti.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "- betti: [{}]", betti.join(", "));
            let _ = writeln!(out, "- terminated: {}, depth reached: {}", r.terminated, r.depth_reached);
            if let Some(per) = r.periodicity {
                let _ = writeln!(out, "- periodic from d_{} with period {}", per.offset, per.period);
            }
            let _ = writeln!(out, "- verdict: {}\n", r.verdict);
            for (i, d) in r.differentials.iter().flatten().enumerate() {
                let rows: Vec<String> = d.iter().map(|row| format!("[{}]", row.join(", "))).collect();
                let _ = writeln!(out, "- d_{}: [{}]", i + 1, rows.join(", "));
            }
            if r.differentials.is_some() {
                out.push('\n');
            }
        }
        Payload::Pd(p) => {
            let _ = writeln!(out, "## pd of {} over {}\n\nverdict: {}\n", p.module, p.ring, p.verdict);
            factor_table(out, p.factors.iter().map(|f| (f.factor.as_str(), None, &f.verdict)));
        }
        Payload::GlobalDimension(g) => {
            let _ = writeln!(out, "## global dimension of {}\n\nverdict: {}\n", g.ring, g.verdict);
            factor_table(out, g.factors.iter().map(|f| (f.factor.as_str(), Some(f.is_field), &f.residue_verdict)));
        }
        Payload::Ideals(i) => {
            let _ = write!(out, "## ideals of {}\n\n{} ideals", i.ring, i.count);
            if let Some(n) = i.pair_form_count {
                let _ = write!(out, ", {n} of pair form");
            }
            out.push_str("\n\n| generators | size | pair form | witness |\n|---|---|---|---|\n");
            for e in &i.ideals {
                let pf = e.pair_form.map_or("-".to_string(), |b| b.to_string());
                let _ = writeln!(
                    out,
                    "| {} | {} | {pf} | {} |",
                    cell(&e.generators.join(", ")),
                    e.size,
                    cell(e.witness.as_deref().unwrap_or("-"))
                );
            }
            out.push('\n');
        }
        Payload::Scenario(s) => {
            let instance: Vec<String> = s.instance.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(out, "## {}: {}\n\n{}\n", s.scenario_id, s.status(), cell(&instance.join(", ")));
            if let Some(ms) = s.timing_ms {
                let _ = writeln!(out, "time: {ms} ms\n");
            }
            out.push_str("| check | status | anchor | witness | detail |\n|---|---|---|---|---|\n");
            for c in &s.checks {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    c.name,
                    c.status,
                    cell(&c.anchor),
                    cell(c.witness.as_deref().unwrap_or("-")),
                    cell(c.detail.as_deref().unwrap_or("-"))
                );
            }
            out.push('\n');
        }
    }
}

fn factor_table<'a>(out: &mut String, rows: impl Iterator<Item = (&'a str, Option<bool>, &'a PdVerdict)>) {
    out.push_str("| factor | field | verdict |\n|---|---|---|\n");
    for (f, field, v) in rows {
        let field = field.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(out, "| {} | {field} | {v} |", cell(f));
    }
    out.push('\n');
}
