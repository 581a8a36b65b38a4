use super::{Check, ScenarioId, ScenarioReport};
use crate::config::Config;
use crate::error::Result;
use crate::lcg::Lcg;
use crate::module::{ModuleSpec, PresentationMatrix};
use crate::resolve::{pd_over_product, pd_verdict, PdVerdict};
use crate::ring::{construct_ring, Elem, Ring, RingDescriptor};

/// A matrix of shape at most 3×3 with uniformly drawn entries: rows, then
/// columns, then entries in row-major order.
pub fn random_presentation(ring: &Ring, rng: &mut Lcg) -> PresentationMatrix {
    let rows = 1 + rng.below(3) as usize;
    let cols = 1 + rng.below(3) as usize;
    let entries = (0..rows * cols).map(|_| Elem(rng.below(ring.card() as u32))).collect();
    PresentationMatrix::new(ring, rows, cols, entries).expect("shape matches")
}

fn normalized(v: PdVerdict) -> PdVerdict {
    match v {
        PdVerdict::CertifiedInfinite { mut certificates } => {
            certificates.sort_by_key(|c| format!("{c:?}"));
            PdVerdict::CertifiedInfinite { certificates }
        }
        other => other,
    }
}

fn component_verdict(m: &ModuleSpec, depth: usize) -> Result<PdVerdict> {
    if m.ring().is_local() {
        pd_verdict(m, depth)
    } else {
        pd_over_product(m, depth)
    }
}

/// The verdict over `A × B` through the local-factor decomposition, against
/// the maximum of the verdicts over `A` and `B` computed on the coordinate
/// projections.
fn both_ways(r: &Ring, m: &PresentationMatrix, depth: usize) -> Result<(PdVerdict, PdVerdict)> {
    let via = pd_over_product(&ModuleSpec::presented(m.clone()), depth)?;
    let mut direct = PdVerdict::Finite { pd: 0 };
    for (i, comp) in r.product_factors().expect("product ring").iter().enumerate() {
        let entries = (0..m.rows()).flat_map(|row| (0..m.cols()).map(move |col| (row, col)));
        let entries = entries.map(|(row, col)| r.product_components(m.get(row, col))[i]).collect();
        let mi = PresentationMatrix::new(comp, m.rows(), m.cols(), entries)?;
        direct = direct.max(component_verdict(&ModuleSpec::presented(mi), depth)?);
    }
    Ok((normalized(via), normalized(direct)))
}

pub fn thm13_product_scenario(a: &Ring, b: &Ring, trials: usize, seed: u64, cfg: &Config) -> Result<ScenarioReport> {
    let r = construct_ring(&RingDescriptor::Product(vec![a.descriptor().clone(), b.descriptor().clone()]))?;
    let mut rng = Lcg::with_constants(seed, cfg.lcg_multiplier, cfg.lcg_increment);
    let mut report = ScenarioReport::new(
        ScenarioId::Thm13,
        &[("ring", r.to_string()), ("trials", trials.to_string()), ("seed", seed.to_string()), ("depth", cfg.depth.to_string())],
    );
    let anchor = "pd_(A×B)(M) = max(pd_A(M_A), pd_B(M_B))";

    let mut witness = None;
    let (mut finite, mut infinite, mut unknown) = (0, 0, 0);
    for t in 0..trials {
        let m = random_presentation(&r, &mut rng);
        let (via, direct) = both_ways(&r, &m, cfg.depth)?;
        match via {
            PdVerdict::Finite { .. } => finite += 1,
            PdVerdict::CertifiedInfinite { .. } => infinite += 1,
            PdVerdict::Unknown { .. } => unknown += 1,
        }
        if via != direct && witness.is_none() {
            witness = Some(format!("trial {t}: matrix {m}, decomposition gives {via}, components give {direct}"));
        }
    }
    report.checks.push(Check::verdict(
        "product-max",
        anchor,
        witness,
        format!("{trials} trials: {finite} finite, {infinite} certified infinite, {unknown} unknown"),
    ));

    let free = ModuleSpec::free(&r, 1);
    let via = pd_over_product(&free, cfg.depth)?;
    let witness = (via != PdVerdict::Finite { pd: 0 }).then(|| format!("free(1) gives {via}"));
    report.checks.push(Check::verdict("free-module", anchor, witness, "free(1): Finite(0)"));
    Ok(report)
}
