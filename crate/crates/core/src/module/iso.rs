use super::lattice::Subquotient;
use super::mingens::{filtration_sizes, minimal_generators};
use super::syzygy::kernel_generators;
use super::{ModuleSpec, Vector};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::howell::Howell;
use crate::ring::Elem;

/// An isomorphism `M → N` given by the images of minimal generators of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub generators: Vec<Vector>,
    pub images: Vec<Vector>,
}

/// Search for an isomorphism between finite modules over a local ring,
/// with the default size cutoff.
pub fn modules_isomorphic(m: &ModuleSpec, n: &ModuleSpec) -> Result<Option<IsoWitness>> {
    modules_isomorphic_with(m, n, Config::default().iso_cutoff as u128)
}

pub fn modules_isomorphic_with(m: &ModuleSpec, n: &ModuleSpec, cutoff: u128) -> Result<Option<IsoWitness>> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring();
    ring.require_local()?;
    let sm = Subquotient::new(m)?;
    let sn = Subquotient::new(n)?;
    let size = sm.card()?;
    if size > cutoff {
        return Err(Error::TooLarge { size, cutoff });
    }
    if size != sn.card()? || filtration_sizes(m)? != filtration_sizes(n)? {
        return Ok(None);
    }
    let gens = minimal_generators(m)?;
    if gens.len() != minimal_generators(n)?.len() {
        return Ok(None);
    }
    let relations = kernel_generators(ring, m.ambient_rank(), &gens, &m.relations())?;
    let annihilators: Vec<Vec<Elem>> = gens
        .iter()
        .map(|g| ring.all_elements().filter(|&r| sm.is_zero_class(&super::scale(ring, r, g))).collect())
        .collect();

    let mn = sn.power_of_max_times(1);
    let elements: Vec<Vector> = sn.elements(cutoff)?.iter().map(|c| sn.amb.extract(c)).collect();
    let candidates: Vec<Vec<&Vector>> = annihilators
        .iter()
        .map(|ann| {
            elements
                .iter()
                .filter(|y| !mn.contains(&sn.amb.embed(y)))
                .filter(|y| {
                    ring.all_elements()
                        .all(|r| sn.is_zero_class(&super::scale(ring, r, y)) == ann.binary_search(&r).is_ok())
                })
                .collect()
        })
        .collect();

    // relations checkable once the first `i` images are fixed
    let ready_at: Vec<usize> = relations
        .iter()
        .map(|rel| rel.iter().rposition(|&x| x != ring.zero()).map_or(0, |p| p + 1))
        .collect();

    struct Search<'a> {
        sn: &'a Subquotient,
        candidates: &'a [Vec<&'a Vector>],
        relations: &'a [Vector],
        ready_at: &'a [usize],
        chosen: Vec<Vector>,
    }

    impl Search<'_> {
        fn run(&mut self, span: &Howell) -> bool {
            let i = self.chosen.len();
            if i == self.candidates.len() {
                return true;
            }
            for &y in &self.candidates[i] {
                if span.contains(&self.sn.amb.embed(y)) {
                    continue;
                }
                self.chosen.push(y.clone());
                let consistent = self.relations.iter().zip(self.ready_at).filter(|(_, &r)| r == i + 1).all(|(rel, _)| {
                    let image = super::combine(self.sn.amb.ring(), &self.chosen, rel, self.sn.amb.rank());
                    self.sn.is_zero_class(&image)
                });
                if consistent {
                    let mut next = span.clone();
                    next.extend(self.sn.amb.cyclic_additive(y));
                    if self.run(&next) {
                        return true;
                    }
                }
                self.chosen.pop();
            }
            false
        }
    }

    let mut search = Search { sn: &sn, candidates: &candidates, relations: &relations, ready_at: &ready_at, chosen: Vec::new() };
    if search.run(&mn) {
        Ok(Some(IsoWitness { generators: gens, images: search.chosen }))
    } else {
        Ok(None)
    }
}
