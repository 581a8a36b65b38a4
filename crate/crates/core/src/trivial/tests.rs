use std::collections::BTreeSet;

use super::*;
use crate::ring::{construct_ring, Encoding, RingElement};

fn ring(d: RingDescriptor) -> Ring {
    construct_ring(&d).unwrap()
}

fn gf2_trunc(n: usize) -> RingDescriptor {
    let mut modulus = vec![0; n + 1];
    modulus[n] = 1;
    RingDescriptor::PolyQuotient { p: 2, modulus }
}

fn el(r: &Ring, s: &str) -> Elem {
    RingElement::parse(r, s).unwrap().elem()
}

fn rendered(r: &Ring, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|&x| r.render(x)).collect()
}

fn x_poly(n: usize) -> Encoding {
    let mut c = vec![0; n];
    c[1] = 1;
    Encoding::Coeffs(c)
}

fn z4_triv_z2() -> Ring {
    triv_extend(&ring(RingDescriptor::ZMod(4)), &ModuleDescriptor::Quot(vec![Encoding::Int(2)])).unwrap()
}

fn trunc4_triv_residue() -> Ring {
    triv_extend(&ring(gf2_trunc(4)), &ModuleDescriptor::Quot(vec![x_poly(4)])).unwrap()
}

#[test]
fn extension_shapes() {
    let r = z4_triv_z2();
    assert_eq!(r.card(), 8);
    assert!(r.is_local());
    assert_eq!(rendered(&r, &r.locality().maximal_ideal_gens), vec!["(0,1)", "(2,0)"]);

    let f2 = ring(RingDescriptor::PrimeField(2));
    let r = triv_extend(&f2, &ModuleDescriptor::Free(2)).unwrap();
    assert_eq!(r.card(), 8);
    assert!(r.is_local());
    let m: BTreeSet<Elem> = r.locality().maximal_ideal.iter().copied().collect();
    let expected: BTreeSet<Elem> = (0..4).map(|e| r.pair(f2.zero(), e)).collect();
    assert_eq!(m, expected);

    let r = trunc4_triv_residue();
    assert_eq!(r.card(), 32);
    assert!(r.is_local());
}

#[test]
fn distinguished_modules() {
    let r = z4_triv_z2();
    let zero = distinguished_module(&r, DistinguishedKind::ZeroExt).unwrap();
    assert_eq!(zero.card().unwrap(), 2);
    assert_eq!(rendered(&r, &distinguished_generators(&r, DistinguishedKind::ZeroExt).unwrap()), vec!["(0,1)"]);
    let iext = distinguished_module(&r, DistinguishedKind::IExt).unwrap();
    assert_eq!(iext.card().unwrap(), 4);
    let full = distinguished_module(&r, DistinguishedKind::Full).unwrap();
    assert_eq!(full.card().unwrap(), 4);

    let dual = triv_extend(&ring(RingDescriptor::PrimeField(2)), &ModuleDescriptor::Quot(vec![Encoding::Int(0)])).unwrap();
    assert_eq!(dual.card(), 4);
    assert_eq!(distinguished_module(&dual, DistinguishedKind::IExt).unwrap().card().unwrap(), 2);

    let r = trunc4_triv_residue();
    assert_eq!(distinguished_module(&r, DistinguishedKind::IExt).unwrap().card().unwrap(), 16);
    assert_eq!(distinguished_module(&r, DistinguishedKind::ZeroExt).unwrap().card().unwrap(), 2);

    let free = triv_extend(&ring(RingDescriptor::PrimeField(2)), &ModuleDescriptor::Free(2)).unwrap();
    assert!(matches!(distinguished_module(&free, DistinguishedKind::IExt), Err(Error::WrongShape(_))));
    assert!(matches!(distinguished_module(&ring(RingDescriptor::ZMod(4)), DistinguishedKind::IExt), Err(Error::WrongShape(_))));
}

#[test]
fn pair_form_probes() {
    let r = z4_triv_z2();
    let p = ideal_pair_form_probe(&r, &[el(&r, "(2,0)")]).unwrap();
    assert!(p.has_pair_form);
    let form = p.pair.unwrap();
    assert_eq!((form.base_size(), form.submodule_size()), (2, 1));
    assert!(form.satisfies_invariant());
    assert_eq!(form.elements(), p.ideal);

    let p = ideal_pair_form_probe(&r, &[el(&r, "(0,1)")]).unwrap();
    assert!(p.has_pair_form);

    let p = ideal_pair_form_probe(&r, &[el(&r, "(2,1)")]).unwrap();
    assert!(!p.has_pair_form);
    assert_eq!(rendered(&r, &p.ideal), vec!["(0,0)", "(2,1)"]);
    assert_eq!(r.render(p.counterexample_witness.unwrap()), "(2,0)");
}

#[test]
fn ideal_counts() {
    let dual = triv_extend(&ring(RingDescriptor::PrimeField(2)), &ModuleDescriptor::Free(1)).unwrap();
    assert_eq!(enumerate_ideals(&dual).unwrap().len(), 3);
    assert_eq!(enumerate_ideals(&ring(RingDescriptor::ZMod(4))).unwrap().len(), 3);
    assert_eq!(enumerate_ideals(&ring(RingDescriptor::ZMod(12))).unwrap().len(), 6);
    assert!(matches!(enumerate_ideals_with(&z4_triv_z2(), 4), Err(Error::TooLarge { size: 8, cutoff: 4 })));
}

#[test]
fn generators_reproduce_each_ideal() {
    let r = z4_triv_z2();
    for ideal in enumerate_ideals(&r).unwrap() {
        let bits = ideal_bitmap(&r, &ideal.generators);
        let members: Vec<Elem> = r.all_elements().filter(|x| bits[x.idx()]).collect();
        assert_eq!(members, ideal.members);
    }
}

/// Elements of `GF(2)[x]/(x^4) ∝ GF(2)` as 5-bit words: bits 0..4 are the
/// coefficients of `a`, bit 4 is `e`.
mod bits {
    pub fn times_x(w: u32) -> u32 {
        (w << 1) & 0b01110
    }

    pub fn times_eps(w: u32) -> u32 {
        (w & 1) << 4
    }

    /// Every additive subgroup closed under both multiplications.
    pub fn ideals() -> Vec<u32> {
        let mut spaces: Vec<u32> = vec![1];
        let mut head = 0;
        while head < spaces.len() {
            let s = spaces[head];
            head += 1;
            for v in 0..32u32 {
                if s >> v & 1 == 1 {
                    continue;
                }
                let mut t = s;
                for w in 0..32u32 {
                    if s >> w & 1 == 1 {
                        t |= 1 << (w ^ v);
                    }
                }
                if !spaces.contains(&t) {
                    spaces.push(t);
                }
            }
        }
        assert_eq!(spaces.len(), 374);
        spaces
            .into_iter()
            .filter(|&s| (0..32u32).filter(|w| s >> w & 1 == 1).all(|w| s >> times_x(w) & 1 == 1 && s >> times_eps(w) & 1 == 1))
            .collect()
    }

    pub fn pair_form(s: u32) -> bool {
        (0..32u32).filter(|w| s >> w & 1 == 1).all(|w| s >> (w & 0b01111) & 1 == 1)
    }
}

#[test]
fn census_matches_subspace_oracle() {
    let r = trunc4_triv_residue();
    let word = |x: Elem| {
        let (a, e) = r.unpair(x);
        let (base, _) = r.trivial_parts().unwrap();
        let coeffs = match base.encode(a) {
            Encoding::Coeffs(c) => c.clone(),
            other => panic!("{other:?}"),
        };
        coeffs.iter().enumerate().fold(e << 4, |acc, (i, &c)| acc | (c as u32) << i)
    };
    let oracle: BTreeSet<(u32, bool)> = bits::ideals().into_iter().map(|s| (s, bits::pair_form(s))).collect();
    let census = probe_all_ideals(&r).unwrap();
    let ours: BTreeSet<(u32, bool)> = census
        .iter()
        .map(|p| (p.ideal.iter().fold(0u32, |acc, &x| acc | 1 << word(x)), p.has_pair_form))
        .collect();
    assert_eq!(census.len(), ours.len());
    assert_eq!(ours, oracle);
    let pairs = census.iter().filter(|p| p.has_pair_form).count();
    assert_eq!((census.len(), pairs), (12, 9));
}

#[test]
fn exhaustive_invariants() {
    let bases = [
        (RingDescriptor::ZMod(4), vec![Encoding::Int(2)]),
        (RingDescriptor::ZMod(8), vec![Encoding::Int(4)]),
        (RingDescriptor::ZMod(6), vec![Encoding::Int(2)]),
        (RingDescriptor::PrimeField(3), vec![Encoding::Int(0)]),
        (gf2_trunc(3), vec![x_poly(3)]),
    ];
    for (d, ideal) in bases {
        let a = ring(d);
        let r = triv_extend(&a, &ModuleDescriptor::Quot(ideal)).unwrap();
        assert_eq!(r.is_local(), a.is_local(), "{r}");
        let (_, e) = r.trivial_parts().unwrap();
        for x in r.all_elements() {
            let (xa, xe) = r.unpair(x);
            assert_eq!(r.is_unit(x), a.is_unit(xa));
            for f in 0..e.card() as u32 {
                assert_eq!(r.mul(r.pair(a.zero(), xe), r.pair(a.zero(), f)), r.zero());
            }
        }
        if !a.is_local() {
            continue;
        }
        let zero_ext: Vec<Elem> = distinguished_module(&r, DistinguishedKind::ZeroExt).unwrap().generators().iter().map(|v| v[0]).collect();
        let iext = distinguished_generators(&r, DistinguishedKind::IExt).unwrap();
        for &i in &iext {
            for &z in &zero_ext {
                assert_eq!(r.mul(i, z), r.zero());
            }
        }
        for report in probe_all_ideals(&r).unwrap() {
            if let Some(form) = &report.pair {
                assert!(form.satisfies_invariant());
                assert_eq!(form.elements(), report.ideal);
            }
        }
    }
}
