use std::collections::{BTreeSet, HashSet};

use super::Vector;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Every element of the submodule of `R^n` generated by `gens`, found by
/// additive closure of the scalar multiples. Works over any finite ring and
/// shares no code with the Howell machinery, so it serves as an oracle.
pub fn submodule_elements(ring: &Ring, n: usize, gens: &[Vector], budget: u64) -> Result<BTreeSet<Vector>> {
    ring.require_finite()?;
    let mut steps: Vec<Vector> = Vec::new();
    let mut seen_steps = HashSet::new();
    for g in gens {
        for r in ring.all_elements() {
            let v = super::scale(ring, r, g);
            if seen_steps.insert(v.clone()) {
                steps.push(v);
            }
        }
    }
    let zero = vec![ring.zero(); n];
    let mut set: HashSet<Vector> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        for s in &steps {
            let y: Vector = x.iter().zip(s).map(|(&a, &b)| ring.add(a, b)).collect();
            if set.insert(y.clone()) {
                if set.len() as u64 > budget {
                    return Err(Error::BudgetExceeded { needed: set.len() as u128, budget: budget as u128 });
                }
                queue.push(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// `C + R·v` for a submodule `C` given as an element set.
pub(crate) fn extend_by(ring: &Ring, c: &HashSet<Vector>, v: &[crate::ring::Elem]) -> HashSet<Vector> {
    let multiples: HashSet<Vector> = ring.all_elements().map(|r| super::scale(ring, r, v)).collect();
    let mut out = HashSet::with_capacity(c.len() * multiples.len());
    for x in c {
        for m in &multiples {
            out.insert(x.iter().zip(m).map(|(&a, &b)| ring.add(a, b)).collect());
        }
    }
    out
}
