use std::collections::{BTreeSet, HashSet};

use super::structure::residue_extension;
use super::{all_vectors, elements_of, render_betti, render_elems, verdict_with_betti, Check, ScenarioId, ScenarioReport};
use crate::config::Config;
use crate::error::Result;
use crate::module::{is_projective, kernel_of_map, minimal_generators, render_vector, ModuleMap, ModuleSpec, Vector};
use crate::resolve::global_dim_probe;
use crate::ring::local::ideal_bitmap;
use crate::ring::{construct_ring, Elem, Encoding, ModuleDescriptor, RingDescriptor};
use crate::trivial::{distinguished_module, probe_all_ideals, triv_extend, DistinguishedKind};

/// `R = GF(p)[x]/(x^n) ∝ GF(p)`: the ideal census against the two-generator
/// normal form, and the global dimension.
pub fn ex22_scenario(p: u64, n: usize, cfg: &Config) -> Result<ScenarioReport> {
    let mut modulus = vec![0; n + 1];
    modulus[n] = 1;
    let a = construct_ring(&RingDescriptor::PolyQuotient { p, modulus })?;
    let mut x = vec![0; n];
    if n > 1 {
        x[1] = 1;
    }
    let r = triv_extend(&a, &ModuleDescriptor::Quot(vec![Encoding::Coeffs(x)]))?;
    let (_, e) = r.trivial_parts().unwrap();
    let eps = r.pair(a.zero(), e.generator(0));
    let mut report = ScenarioReport::new(
        ScenarioId::Ex22,
        &[("ring", r.to_string()), ("p", p.to_string()), ("n", n.to_string()), ("depth", cfg.depth.to_string())],
    );

    let census = probe_all_ideals(&r)?;
    let mut normal: HashSet<Vec<bool>> = HashSet::new();
    for b in a.all_elements() {
        let g = r.pair(b, e.zero());
        normal.insert(ideal_bitmap(&r, &[g]));
        normal.insert(ideal_bitmap(&r, &[g, eps]));
    }
    let bits = |members: &[Elem]| {
        let mut v = vec![false; r.card()];
        for m in members {
            v[m.idx()] = true;
        }
        v
    };
    let odd: Vec<_> = census.iter().filter(|c| !normal.contains(&bits(&c.ideal))).collect();
    let anchor = "J = (a,0)R + (0,1)R";
    let detail = format!("{} ideals, {} of the form (a,0)R or (a,0)R + (0,1)R", census.len(), census.len() - odd.len());
    report.checks.push(match odd.first() {
        None => Check::pass("normal-form", anchor, detail),
        Some(j) => Check::discrepancy(
            "normal-form",
            anchor,
            format!("ideal generated by {}", render_elems(&r, &j.generators)),
            format!("{detail}; {} need another shape", odd.len()),
        ),
    });

    let anchor = "J = I ∝ E'";
    let split: Vec<_> = census.iter().filter(|c| !c.has_pair_form).collect();
    let detail = format!("{} of {} ideals have the form I ∝ E'", census.len() - split.len(), census.len());
    report.checks.push(match split.first() {
        None => Check::pass("pair-form", anchor, detail),
        Some(j) => Check::discrepancy(
            "pair-form",
            anchor,
            format!(
                "ideal generated by {} misses {}",
                render_elems(&r, &j.generators),
                r.render(j.counterexample_witness.expect("non-pair ideals carry a witness"))
            ),
            detail,
        ),
    });

    let zext = distinguished_module(&r, DistinguishedKind::ZeroExt)?;
    let (v, betti) = verdict_with_betti(&zext, cfg.depth)?;
    let witness = (!v.is_infinite()).then(|| format!("{v}"));
    report.checks.push(Check::verdict(
        "zero-ext-pd",
        "pd_R(0 ∝ A/M) = pd_R(R(0,1)) = ∞",
        witness,
        format!("{v}, betti {}", render_betti(&betti)),
    ));

    let g = global_dim_probe(&r, cfg.depth)?;
    let witness = (!g.is_infinite()).then(|| format!("{g}"));
    report.checks.push(Check::verdict("gldim", "gldim(R) = ∞", witness, format!("{g}")));
    Ok(report)
}

/// `A = GF(p) ∝ GF(p)^d` and `R = A ∝ A/M`: annihilation by the maximal
/// ideal, the second kernel of two sample modules, and the absence of
/// nonzero free submodules inside `M^n`.
pub fn ex23_scenario(p: u64, dim_e: usize, cfg: &Config) -> Result<ScenarioReport> {
    let k = construct_ring(&RingDescriptor::PrimeField(p))?;
    let a = triv_extend(&k, &ModuleDescriptor::Free(dim_e))?;
    let r = residue_extension(&a)?;
    let (_, ea) = a.trivial_parts().unwrap();
    let (_, er) = r.trivial_parts().unwrap();
    let budget = cfg.budget;
    let mut report = ScenarioReport::new(
        ScenarioId::Ex23,
        &[("base", a.to_string()), ("ring", r.to_string()), ("p", p.to_string()), ("dim_e", dim_e.to_string())],
    );

    // c1
    let max: BTreeSet<Elem> = a.locality().maximal_ideal.iter().copied().collect();
    let zero_ext: BTreeSet<Elem> = (0..ea.card() as u32).map(|c| a.pair(k.zero(), c)).collect();
    let mut witness = (max != zero_ext).then(|| "maximal ideal differs from 0 ∝ E".to_string());
    for &y in &zero_ext {
        for &m in &max {
            if witness.is_none() && a.mul(y, m) != a.zero() {
                witness = Some(format!("{} · {} = {}", a.render(y), a.render(m), a.render(a.mul(y, m))));
            }
        }
    }
    report.checks.push(Check::verdict(
        "annihilation",
        "(0,e)M = 0 for e ∈ E",
        witness,
        format!("|M| = {}, all {} products zero", max.len(), max.len() * zero_ext.len()),
    ));

    // c2
    let samples = [
        ("R/m_R", ModuleSpec::residue_field(&r)?),
        (
            "R/R((0,e_1),0)",
            ModuleSpec::cyclic_quotient(&r, &[r.pair(a.pair(k.zero(), ea.generator(0)), er.zero())]),
        ),
    ];
    let mut notes = Vec::new();
    let mut fail = None;
    let mut gap = None;
    for (label, h) in &samples {
        let z = minimal_generators(h)?;
        let n = z.len();
        let ker_u = kernel_of_map(&ModuleMap::from_free(h.clone(), z)?)?;
        let gens = minimal_generators(&ker_u)?;
        if gens.is_empty() {
            notes.push(format!("{label}: Ker(u) = 0"));
            continue;
        }
        let q = gens.len();
        let ys: Vec<Vector> = gens.iter().map(|g| g.iter().map(|&c| r.unpair(c).0).collect()).collect();
        let ker_v = kernel_of_map(&ModuleMap::from_free(ModuleSpec::free(&r, n), gens)?)?;
        let computed = elements_of(&ker_v, budget)?;
        let in_v = |c: &[Elem]| {
            (0..n).all(|i| ys.iter().zip(c).fold(a.zero(), |acc, (y, &ci)| a.add(acc, a.mul(ci, y[i]))) == a.zero())
        };
        let v: Vec<Vector> = all_vectors(&a, q, budget)?.into_iter().filter(|c| in_v(c)).collect();
        let in_max = |c: &[Elem]| c.iter().all(|&x| a.in_maximal_ideal(x));
        let lift = |allowed: &dyn Fn(&[Elem]) -> bool| -> Result<BTreeSet<Vector>> {
            Ok(all_vectors(&r, q, budget)?
                .into_iter()
                .filter(|w| allowed(&w.iter().map(|&c| r.unpair(c).0).collect::<Vec<_>>()))
                .collect())
        };
        let literal = lift(&|c| in_v(c))?;
        let corrected = lift(&|c| in_v(c) && in_max(c))?;
        notes.push(format!("{label}: q = {q}, |Ker(v)| = {}, |V| = {}", computed.len(), v.len()));
        if computed == literal {
            continue;
        }
        if computed == corrected {
            let outside = v.iter().find(|c| !in_max(c)).expect("V ⊄ M^q when the literal set differs");
            gap.get_or_insert(format!("{label}: {} ∈ V \\ M^q", render_vector(&a, outside)));
        } else {
            let w = computed.symmetric_difference(&corrected).next().unwrap();
            fail.get_or_insert(format!("{label}: {}", render_vector(&r, w)));
        }
    }
    let anchor = "Ker(v) = V ∝ (A/M)^q, V ⊆ M^q";
    let detail = notes.join("; ");
    report.checks.push(match (fail, gap) {
        (Some(w), _) => Check { detail: Some(detail), ..Check::fail("kernel-form", anchor, w) },
        (None, Some(w)) => Check::discrepancy(
            "kernel-form",
            anchor,
            w,
            format!("{detail}; Ker(v) = (V ∩ M^q) ∝ (A/M)^q holds, V itself leaves M^q"),
        ),
        (None, None) => Check::pass("kernel-form", anchor, detail),
    });

    // c3
    let mut witness = None;
    let mut checked = 0;
    for n in 1..=2 {
        for u in all_vectors(&a, n, budget)?.into_iter().filter(|u| u.iter().all(|x| max.contains(x))) {
            if u.iter().all(|&x| x == a.zero()) {
                continue;
            }
            checked += 1;
            let killed = zero_ext.iter().all(|&y| u.iter().all(|&x| a.mul(y, x) == a.zero()));
            if !killed || is_projective(&ModuleSpec::submodule(&a, n, vec![u.clone()])?)? {
                witness.get_or_insert(render_vector(&a, &u));
            }
        }
    }
    report.checks.push(Check::verdict(
        "free-annihilation",
        "U ⊆ M^n free ⇒ U = 0, since (0,e)U = 0",
        witness,
        format!("{checked} nonzero vectors of M and M^2 each annihilated by 0 ∝ E and generating a non-free module"),
    ));
    Ok(report)
}
