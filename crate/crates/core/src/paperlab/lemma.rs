use std::collections::BTreeSet;

use super::{
    all_vectors, elements_of, isomorphic_anywhere, projective_anywhere, render_betti, render_elems, set_difference,
    verdict_with_betti, Check, ScenarioId, ScenarioReport,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::module::{direct_sum, kernel_of_map, ModuleMap, ModuleSpec, Vector};
use crate::ring::local::ideal_bitmap;
use crate::ring::{Elem, ModuleDescriptor, Ring};
use crate::trivial::{distinguished_generators, triv_extend, DistinguishedKind};

/// `R = A ∝ A/I` with the five identities around the non-projectivity of
/// `R/(I ∝ A/I)` and the kernels of `u` and `v`.
pub fn lemma12_scenario(a: &Ring, ideal: &[Elem], cfg: &Config) -> Result<ScenarioReport> {
    a.require_finite()?;
    let in_i = ideal_bitmap(a, ideal);
    if in_i[a.one().idx()] {
        return Err(Error::ImproperIdeal);
    }
    let module = ModuleDescriptor::Quot(ideal.iter().map(|&x| a.encode(x).clone()).collect());
    let r = triv_extend(a, &module)?;
    let (_, e) = r.trivial_parts().unwrap();
    let one_bar = e.generator(0);
    let budget = cfg.budget;
    let mut report = ScenarioReport::new(
        ScenarioId::Lemma12,
        &[("ring", r.to_string()), ("base", a.to_string()), ("ideal", render_elems(a, ideal)), ("depth", cfg.depth.to_string())],
    );

    let iext_gens = distinguished_generators(&r, DistinguishedKind::IExt)?;
    let iext = ModuleSpec::submodule(&r, 1, iext_gens.iter().map(|&g| vec![g]).collect())?;
    let zext = ModuleSpec::submodule(
        &r,
        1,
        distinguished_generators(&r, DistinguishedKind::ZeroExt)?.into_iter().map(|g| vec![g]).collect(),
    )?;
    let quotient = ModuleSpec::cyclic_quotient(&r, &iext_gens);
    let in_iext = |x: Elem| in_i[r.unpair(x).0.idx()];

    // c1
    let anchor = "R/(I ∝ A/I) not projective; (a,e)^2 = (a^2, 0) for a ∈ I";
    let iext_bits = ideal_bitmap(&r, &iext_gens);
    let mut witness = None;
    if projective_anywhere(&quotient)? {
        witness = Some("R/(I ∝ A/I) is projective".to_string());
    }
    let mut idempotents = 0;
    for x in r.all_elements().filter(|&x| in_iext(x)) {
        if witness.is_some() {
            break;
        }
        let (xa, _) = r.unpair(x);
        if r.mul(x, x) != r.pair(a.mul(xa, xa), e.zero()) {
            witness = Some(format!("{} squares to {}", r.render(x), r.render(r.mul(x, x))));
        } else if r.mul(x, x) == x {
            idempotents += 1;
            if ideal_bitmap(&r, &[x]) == iext_bits {
                witness = Some(format!("idempotent {} generates I ∝ A/I", r.render(x)));
            }
        }
    }
    report.checks.push(Check::verdict(
        "quotient-not-projective",
        anchor,
        witness,
        format!("idempotents in I ∝ A/I: {idempotents}, none generating it"),
    ));

    // c2
    let anchor = "Ker(u) = (U ∝ (A/I)^Δ) ⊕ (I ∝ A/I)";
    let delta = ideal.len();
    let mut images: Vec<Vector> = ideal.iter().map(|&x| vec![r.pair(x, e.zero())]).collect();
    images.push(vec![r.pair(a.zero(), one_bar)]);
    let ker_u = kernel_of_map(&ModuleMap::from_free(ModuleSpec::free(&r, 1), images)?)?;
    let computed = elements_of(&ker_u, budget)?;
    let expected: BTreeSet<Vector> = all_vectors(&r, delta + 1, budget)?
        .into_iter()
        .filter(|v| {
            let sum = ideal.iter().zip(v).fold(a.zero(), |acc, (&x, &c)| a.add(acc, a.mul(r.unpair(c).0, x)));
            sum == a.zero() && in_iext(v[delta])
        })
        .collect();
    report.checks.push(Check::verdict(
        "kernel-u",
        anchor,
        set_difference(&r, &computed, &expected),
        format!("|Ker(u)| = {}, |Δ| = {delta}", computed.len()),
    ));

    // c3
    let anchor = "I ∝ A/I ≅ (R^Δ/(U ∝ (A/I)^Δ)) ⊕ (R/(I ∝ A/I))";
    let u: Vec<Vector> = all_vectors(a, delta, budget)?
        .into_iter()
        .filter(|c| ideal.iter().zip(c).fold(a.zero(), |acc, (&x, &y)| a.add(acc, a.mul(x, y))) == a.zero())
        .collect();
    let mut rels: Vec<Vector> = u.iter().map(|c| c.iter().map(|&y| r.pair(y, e.zero())).collect()).collect();
    for j in 0..delta {
        let mut v = vec![r.zero(); delta];
        v[j] = r.pair(a.zero(), one_bar);
        rels.push(v);
    }
    let right = direct_sum(&ModuleSpec::quotient_of_free(&r, delta, &rels)?, &quotient)?;
    let witness = (!isomorphic_anywhere(&iext, &right)?)
        .then(|| format!("no isomorphism: |I ∝ A/I| = {}, |right side| = {}", iext.card().unwrap_or(0), right.card().unwrap_or(0)));
    report.checks.push(Check::verdict("isomorphism", anchor, witness, format!("|U| = {}", u.len())));

    // c4
    let anchor = "pd_R(I ∝ A/I) = pd_R(0 ∝ A/I) = ∞";
    let (vi, bi) = verdict_with_betti(&iext, cfg.depth)?;
    let (vz, bz) = verdict_with_betti(&zext, cfg.depth)?;
    let open = |b: &[(Vec<usize>, bool)]| b.iter().any(|(_, t)| !t);
    let witness = if !vi.is_infinite() || !open(&bi) {
        Some(format!("I ∝ A/I: {vi}, betti {}", render_betti(&bi)))
    } else if !vz.is_infinite() || !open(&bz) {
        Some(format!("0 ∝ A/I: {vz}, betti {}", render_betti(&bz)))
    } else {
        None
    };
    report.checks.push(Check::verdict(
        "pd-infinite",
        anchor,
        witness,
        format!("I ∝ A/I: {vi}, betti {}; 0 ∝ A/I: {vz}, betti {}", render_betti(&bi), render_betti(&bz)),
    ));

    // c5
    let anchor = "Ker(v) = I ∝ A/I, v(a,e) = (a,e)(0,1)";
    let ker_v = kernel_of_map(&ModuleMap::from_free(ModuleSpec::free(&r, 1), vec![vec![r.pair(a.zero(), one_bar)]])?)?;
    let computed = elements_of(&ker_v, budget)?;
    let expected: BTreeSet<Vector> = r.all_elements().filter(|&x| in_iext(x)).map(|x| vec![x]).collect();
    report.checks.push(Check::verdict(
        "kernel-v",
        anchor,
        set_difference(&r, &computed, &expected),
        format!("|Ker(v)| = {}", computed.len()),
    ));

    Ok(report)
}
