//! Trivial extensions `A ∝ E`, their distinguished ideals and modules, and
//! the census of ideals with pair-form probes.

use std::collections::HashSet;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::module::ModuleSpec;
use crate::ring::local::{additive_closure, ideal_bitmap};
use crate::ring::{construct_ring_with, Elem, ModuleDescriptor, Ring, RingDescriptor, TableModule};

/// `A ∝ E` for `E` described over the base of `a`.
pub fn triv_extend(a: &Ring, e: &ModuleDescriptor) -> Result<Ring> {
    triv_extend_with(a, e, &Config::default())
}

pub fn triv_extend_with(a: &Ring, e: &ModuleDescriptor, cfg: &Config) -> Result<Ring> {
    let d = RingDescriptor::TrivialExt { base: Box::new(a.descriptor().clone()), module: e.clone() };
    construct_ring_with(&d, cfg)
}

fn parts(r: &Ring) -> Result<(&Ring, &TableModule)> {
    r.trivial_parts().ok_or_else(|| Error::WrongShape(format!("{r} is not a trivial extension")))
}

/// Generators of `I` when `r = A ∝ A/I`.
pub fn cyclic_ideal_gens(r: &Ring) -> Result<Vec<Elem>> {
    let (base, _) = parts(r)?;
    match r.descriptor() {
        RingDescriptor::TrivialExt { module: ModuleDescriptor::Quot(gens), .. } => {
            gens.iter().map(|g| base.decode(g)).collect()
        }
        _ => Err(Error::WrongShape(format!("{r} is not of the form A ∝ A/I"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistinguishedKind {
    /// `I ∝ A/I`.
    IExt,
    /// `0 ∝ A/I`.
    ZeroExt,
    /// `M ∝ A/I`, the maximal ideal, for local `A`.
    Full,
}

/// The named submodule of `R = A ∝ A/I`, as a submodule of `R^1`.
pub fn distinguished_module(r: &Ring, kind: DistinguishedKind) -> Result<ModuleSpec> {
    ModuleSpec::submodule(r, 1, distinguished_generators(r, kind)?.into_iter().map(|g| vec![g]).collect())
}

pub fn distinguished_generators(r: &Ring, kind: DistinguishedKind) -> Result<Vec<Elem>> {
    let (base, e) = parts(r)?;
    let ideal = cyclic_ideal_gens(r)?;
    let one_bar = e.generator(0);
    let firsts: Vec<Elem> = match kind {
        DistinguishedKind::ZeroExt => Vec::new(),
        DistinguishedKind::IExt => ideal,
        DistinguishedKind::Full => {
            base.require_local()?;
            base.locality().maximal_ideal_gens.clone()
        }
    };
    let mut gens: Vec<Elem> = firsts.into_iter().filter(|&a| a != base.zero()).map(|a| r.pair(a, e.zero())).collect();
    if one_bar != e.zero() {
        gens.push(r.pair(base.zero(), one_bar));
    }
    Ok(gens)
}

/// `J = I ∝ E'` with `I` an ideal of `A` and `E'` a submodule of `E`.
#[derive(Clone, Debug)]
pub struct IdealForm {
    pub ambient: Ring,
    pub base_ideal_gens: Vec<Elem>,
    /// Module classes of `E`.
    pub submodule_gens: Vec<u32>,
    base_members: Vec<bool>,
    sub_members: Vec<bool>,
}

impl IdealForm {
    /// `I E ⊆ E'`, checked over every element of `E`.
    pub fn satisfies_invariant(&self) -> bool {
        let (_, e) = parts(&self.ambient).unwrap();
        self.base_ideal_gens.iter().all(|&x| (0..e.card() as u32).all(|m| self.sub_members[e.act(x, m) as usize]))
    }

    pub fn base_size(&self) -> usize {
        self.base_members.iter().filter(|&&b| b).count()
    }

    pub fn submodule_size(&self) -> usize {
        self.sub_members.iter().filter(|&&b| b).count()
    }

    /// Every `(a, e)` with `a ∈ I`, `e ∈ E'`.
    pub fn elements(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for (a, &ia) in self.base_members.iter().enumerate() {
            for (m, &im) in self.sub_members.iter().enumerate() {
                if ia && im {
                    out.push(self.ambient.pair(Elem(a as u32), m as u32));
                }
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug)]
pub struct IdealProbeReport {
    /// Members of the ideal, ascending.
    pub ideal: Vec<Elem>,
    pub generators: Vec<Elem>,
    pub has_pair_form: bool,
    pub pair: Option<IdealForm>,
    pub counterexample_witness: Option<Elem>,
}

/// Whether the ideal generated by `gens` equals `I ∝ E'` for its first
/// projection `I` and `E' = {e : (0,e) ∈ J}`.
pub fn ideal_pair_form_probe(r: &Ring, gens: &[Elem]) -> Result<IdealProbeReport> {
    r.require_finite()?;
    parts(r)?;
    let members = ideal_bitmap(r, gens);
    Ok(probe_members(r, &members, gens.to_vec()))
}

fn probe_members(r: &Ring, members: &[bool], generators: Vec<Elem>) -> IdealProbeReport {
    let (base, e) = parts(r).unwrap();
    let mut base_members = vec![false; base.card()];
    let mut sub_members = vec![false; e.card()];
    for x in r.all_elements().filter(|x| members[x.idx()]) {
        let (a, m) = r.unpair(x);
        base_members[a.idx()] = true;
        if a == base.zero() {
            sub_members[m as usize] = true;
        }
    }
    let mut witness = None;
    'outer: for a in base.all_elements().filter(|a| base_members[a.idx()]) {
        for m in (0..e.card() as u32).filter(|&m| sub_members[m as usize]) {
            let x = r.pair(a, m);
            if !members[x.idx()] {
                witness = Some(x);
                break 'outer;
            }
        }
    }
    let pair = IdealForm {
        ambient: r.clone(),
        base_ideal_gens: greedy_ideal_gens(base, &base_members),
        submodule_gens: greedy_submodule_gens(e, &sub_members),
        base_members,
        sub_members,
    };
    let ideal: Vec<Elem> = r.all_elements().filter(|x| members[x.idx()]).collect();
    IdealProbeReport {
        ideal,
        generators,
        has_pair_form: witness.is_none(),
        pair: witness.is_none().then_some(pair),
        counterexample_witness: witness,
    }
}

fn greedy_ideal_gens(ring: &Ring, members: &[bool]) -> Vec<Elem> {
    let mut chosen = Vec::new();
    let mut span = ideal_bitmap(ring, &[]);
    for x in ring.all_elements().filter(|x| members[x.idx()]) {
        if !span[x.idx()] {
            chosen.push(x);
            span = ideal_bitmap(ring, &chosen);
        }
    }
    chosen
}

fn greedy_submodule_gens(e: &TableModule, members: &[bool]) -> Vec<u32> {
    let mut chosen = Vec::new();
    let mut span = vec![false; e.card()];
    span[e.zero() as usize] = true;
    for m in (0..e.card() as u32).filter(|&m| members[m as usize]) {
        if span[m as usize] {
            continue;
        }
        chosen.push(m);
        // close under the action and addition
        let mut queue: Vec<u32> = (0..e.card() as u32).filter(|&x| span[x as usize]).collect();
        for a in e.base().all_elements() {
            let y = e.act(a, m);
            if !span[y as usize] {
                span[y as usize] = true;
                queue.push(y);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for y in 0..e.card() as u32 {
                if span[y as usize] {
                    let s = e.add(x, y);
                    if !span[s as usize] {
                        span[s as usize] = true;
                        queue.push(s);
                    }
                }
            }
        }
    }
    chosen
}

/// An ideal of a finite ring with the generators that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub members: Vec<Elem>,
    pub generators: Vec<Elem>,
}

/// Every ideal exactly once, by closing `J + Rx` from the zero ideal.
pub fn enumerate_ideals(r: &Ring) -> Result<Vec<Ideal>> {
    enumerate_ideals_with(r, Config::default().ideal_cutoff)
}

pub fn enumerate_ideals_with(r: &Ring, cutoff: usize) -> Result<Vec<Ideal>> {
    r.require_finite()?;
    if r.card() > cutoff {
        return Err(Error::TooLarge { size: r.card() as u128, cutoff: cutoff as u128 });
    }
    let principal: Vec<Vec<bool>> = r.all_elements().map(|x| ideal_bitmap(r, &[x])).collect();
    let zero = ideal_bitmap(r, &[]);
    let mut seen: HashSet<Vec<bool>> = HashSet::from([zero.clone()]);
    let mut out = vec![(zero, Vec::new())];
    let mut head = 0;
    while head < out.len() {
        let (j, gens) = out[head].clone();
        head += 1;
        for x in r.all_elements().filter(|x| !j[x.idx()]) {
            let members: Vec<Elem> = r.all_elements().filter(|y| j[y.idx()] || principal[x.idx()][y.idx()]).collect();
            let next = additive_closure(r, &members);
            if seen.insert(next.clone()) {
                let mut g = gens.clone();
                g.push(x);
                out.push((next, g));
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|(bits, generators)| Ideal { members: r.all_elements().filter(|x| bits[x.idx()]).collect(), generators })
        .collect())
}

/// The census of a finite trivial extension: every ideal with its probe.
pub fn probe_all_ideals(r: &Ring) -> Result<Vec<IdealProbeReport>> {
    parts(r)?;
    Ok(enumerate_ideals(r)?
        .into_iter()
        .map(|ideal| {
            let mut bits = vec![false; r.card()];
            for x in &ideal.members {
                bits[x.idx()] = true;
            }
            probe_members(r, &bits, ideal.generators)
        })
        .collect())
}

#[cfg(test)]
mod tests;
