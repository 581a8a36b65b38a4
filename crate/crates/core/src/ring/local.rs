use super::descriptor::RingDescriptor;
use super::{construct_ring, Elem, Locality, Ring};
use crate::arith::{poly, prime_power};
use crate::error::{Error, Result};

/// Ideal generated by `gens`, as a membership bitmap.
pub(crate) fn ideal_bitmap(ring: &Ring, gens: &[Elem]) -> Vec<bool> {
    let mut products = vec![false; ring.card()];
    for &g in gens {
        for r in ring.all_elements() {
            products[ring.mul(r, g).idx()] = true;
        }
    }
    let gens: Vec<Elem> = ring.all_elements().filter(|x| products[x.idx()]).collect();
    additive_closure(ring, &gens)
}

/// Additive subgroup generated by `gens`.
pub(crate) fn additive_closure(ring: &Ring, gens: &[Elem]) -> Vec<bool> {
    let mut inside = vec![false; ring.card()];
    inside[ring.zero().idx()] = true;
    let mut queue = vec![ring.zero()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = ring.add(x, g);
            if !inside[y.idx()] {
                inside[y.idx()] = true;
                queue.push(y);
            }
        }
    }
    inside
}

/// Non-units are closed under addition iff the ring is local; in that case
/// they form the maximal ideal.
pub(super) fn compute_locality(ring: &Ring) -> Locality {
    let nonunits: Vec<Elem> = ring.all_elements().filter(|&x| !ring.is_unit(x)).collect();
    let mut is_nonunit = vec![false; ring.card()];
    for &x in &nonunits {
        is_nonunit[x.idx()] = true;
    }
    let closed = nonunits.iter().all(|&x| nonunits.iter().all(|&y| is_nonunit[ring.add(x, y).idx()]));
    if !closed {
        return Locality { is_local: false, maximal_ideal: Vec::new(), maximal_ideal_gens: Vec::new(), residue_field: None };
    }
    // m^2 is the additive span of pairwise products.
    let mut square = vec![false; ring.card()];
    for &x in &nonunits {
        for &y in &nonunits {
            square[ring.mul(x, y).idx()] = true;
        }
    }
    let square_gens: Vec<Elem> = ring.all_elements().filter(|x| square[x.idx()]).collect();
    let mut current = additive_closure(ring, &square_gens);
    let mut gens = Vec::new();
    for &x in &nonunits {
        if current[x.idx()] {
            continue;
        }
        gens.push(x);
        let principal = ideal_bitmap(ring, &[x]);
        let members: Vec<Elem> = ring.all_elements().filter(|y| current[y.idx()] || principal[y.idx()]).collect();
        current = additive_closure(ring, &members);
    }
    let residue = residue_field(ring, &is_nonunit, nonunits.len());
    Locality { is_local: true, maximal_ideal: nonunits, maximal_ideal_gens: gens, residue_field: residue }
}

fn residue_field(ring: &Ring, in_m: &[bool], m_size: usize) -> Option<RingDescriptor> {
    let size = (ring.card() / m_size) as u64;
    let (p, f) = prime_power(size)?;
    if f == 1 {
        return Some(RingDescriptor::PrimeField(p));
    }
    // Find an irreducible of degree f with a root modulo m.
    for g in poly::monic_of_degree(f as usize, p) {
        if !poly::is_irreducible(&g, p) {
            continue;
        }
        let has_root = ring.all_elements().any(|x| {
            let val = g.iter().rev().fold(ring.zero(), |acc, &c| ring.add(ring.mul(acc, x), ring.times(ring.one(), c)));
            in_m[val.idx()]
        });
        if has_root {
            return Some(RingDescriptor::PolyQuotient { p, modulus: g });
        }
    }
    None
}

/// One local factor of a finite ring.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub ring: Ring,
    /// Primitive idempotent of the ambient ring cutting out this factor.
    pub idempotent: Elem,
    /// Ring homomorphism ambient → factor, indexed by ambient element.
    pub projection: Vec<Elem>,
}

impl LocalFactor {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x.idx()]
    }
}

/// Split a finite ring into local rings via a complete set of orthogonal
/// primitive idempotents.
pub fn decompose_into_local_factors(ring: &Ring) -> Result<Vec<LocalFactor>> {
    ring.require_finite()?;
    if ring.is_local() {
        return Ok(vec![LocalFactor {
            ring: ring.clone(),
            idempotent: ring.one(),
            projection: ring.all_elements().collect(),
        }]);
    }
    let factors = match ring.descriptor() {
        RingDescriptor::Product(_) => product_factors(ring)?,
        RingDescriptor::ZMod(n) => zmod_factors(ring, *n)?,
        _ => corner_factors(ring)?,
    };
    verify_decomposition(ring, &factors)?;
    Ok(factors)
}

fn product_factors(ring: &Ring) -> Result<Vec<LocalFactor>> {
    let parts = ring.product_factors().unwrap().to_vec();
    let mut out = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for sub in decompose_into_local_factors(part)? {
            let mut comps: Vec<Elem> = parts.iter().map(|f| f.zero()).collect();
            comps[i] = sub.idempotent;
            let idempotent = ring.product_element(&comps);
            let projection = ring.all_elements().map(|x| sub.project(ring.product_components(x)[i])).collect();
            out.push(LocalFactor { ring: sub.ring, idempotent, projection });
        }
    }
    Ok(out)
}

fn zmod_factors(ring: &Ring, n: u64) -> Result<Vec<LocalFactor>> {
    let mut out = Vec::new();
    for (p, e) in crate::arith::factorize(n) {
        let q = p.pow(e);
        let factor = construct_ring(&RingDescriptor::ZMod(q))?;
        // CRT idempotent: 1 mod q, 0 mod n/q.
        let idempotent = ring
            .all_elements()
            .find(|x| x.0 as u64 % q == 1 % q && x.0 as u64 % (n / q) == 0)
            .expect("CRT idempotent exists");
        let projection = ring.all_elements().map(|x| Elem((x.0 as u64 % q) as u32)).collect();
        out.push(LocalFactor { ring: factor, idempotent, projection });
    }
    Ok(out)
}

fn primitive_idempotents(ring: &Ring) -> Result<Vec<Elem>> {
    let ids = ring.idempotents()?;
    Ok(ids
        .iter()
        .copied()
        .filter(|&e| e != ring.zero())
        .filter(|&e| ids.iter().all(|&f| f == ring.zero() || f == e || ring.mul(e, f) != f))
        .collect())
}

fn corner_factors(ring: &Ring) -> Result<Vec<LocalFactor>> {
    let mut out = Vec::new();
    for e in primitive_idempotents(ring)? {
        let desc = RingDescriptor::Corner { ambient: Box::new(ring.descriptor().clone()), idempotent: ring.encode(e).clone() };
        let factor = construct_ring(&desc)?;
        let projection = ring
            .all_elements()
            .map(|x| factor.decode(ring.encode(ring.mul(e, x))))
            .collect::<Result<Vec<_>>>()?;
        out.push(LocalFactor { ring: factor, idempotent: e, projection });
    }
    Ok(out)
}

fn verify_decomposition(ring: &Ring, factors: &[LocalFactor]) -> Result<()> {
    let sum = factors.iter().fold(ring.zero(), |acc, f| ring.add(acc, f.idempotent));
    if sum != ring.one() {
        return Err(Error::Inconsistent("factor idempotents do not sum to 1".into()));
    }
    for (i, a) in factors.iter().enumerate() {
        if !a.ring.is_local() {
            return Err(Error::Inconsistent(format!("factor {} is not local", a.ring)));
        }
        for b in &factors[i + 1..] {
            if ring.mul(a.idempotent, b.idempotent) != ring.zero() {
                return Err(Error::Inconsistent("factor idempotents are not orthogonal".into()));
            }
        }
    }
    let total: usize = factors.iter().map(|f| f.ring.card()).product();
    if total != ring.card() {
        return Err(Error::Inconsistent("factor cardinalities do not multiply to |R|".into()));
    }
    Ok(())
}
