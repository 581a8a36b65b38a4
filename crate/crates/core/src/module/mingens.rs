use super::lattice::{maximal_ideal_additive, Ambient, Subquotient};
use super::{ModuleSpec, Vector};
use crate::error::Result;
use crate::ring::Ring;

/// Greedy choice among `cands` of a basis of `K/(mK + T)` where `K` is the
/// span of `cands` and `T` the span of `rels`; the result generates `K`
/// modulo `T` minimally.
pub(crate) fn nakayama_select(ring: &Ring, n: usize, cands: &[Vector], rels: &[Vector]) -> Result<Vec<Vector>> {
    ring.require_local()?;
    let amb = Ambient::new(ring, n)?;
    let madd = maximal_ideal_additive(ring);
    let mut current = amb.span(rels);
    for c in cands {
        for &x in &madd {
            current.insert(amb.embed(&super::scale(ring, x, c)));
        }
    }
    let mut chosen = Vec::new();
    for c in cands {
        if !current.contains(&amb.embed(c)) {
            current.extend(amb.cyclic_additive(c));
            chosen.push(c.clone());
        }
    }
    Ok(chosen)
}

/// Generators of `M` whose images form a basis of `M/mM`.
pub fn minimal_generators(m: &ModuleSpec) -> Result<Vec<Vector>> {
    nakayama_select(m.ring(), m.ambient_rank(), &m.generators(), &m.relations())
}

/// `|m^i M|` for `i = 0, 1, …` down to the first zero term (excluded).
pub fn filtration_sizes(m: &ModuleSpec) -> Result<Vec<u128>> {
    m.ring().require_local()?;
    let sq = Subquotient::new(m)?;
    let t = sq.t.card();
    let mut out = Vec::new();
    for i in 0.. {
        let size = sq.power_of_max_times(i).card() / t;
        if size == 1 {
            break;
        }
        out.push(size);
    }
    Ok(out)
}

/// Over a local ring projective means free: `M` is projective iff the
/// surjection from `R^b`, `b` the minimal number of generators, has zero
/// kernel, i.e. iff `|M| = |R|^b`.
pub fn is_projective(m: &ModuleSpec) -> Result<bool> {
    let b = minimal_generators(m)?.len() as u32;
    Ok(m.card()? == (m.ring().card() as u128).pow(b))
}
