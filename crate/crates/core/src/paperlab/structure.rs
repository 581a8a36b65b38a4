use std::collections::BTreeSet;

use super::{all_vectors, elements_of, render_elems, set_difference, Check, ScenarioId, ScenarioReport};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::module::{direct_sum, kernel_of_map, minimal_generators, modules_isomorphic, ModuleMap, ModuleSpec, Vector};
use crate::ring::local::ideal_bitmap;
use crate::ring::{construct_ring, Elem, Encoding, ModuleDescriptor, Ring, RingDescriptor, RingElement, TableModule};
use crate::trivial::triv_extend;

/// `A ∝ A/M` for a finite local ring `A`.
pub fn residue_extension(a: &Ring) -> Result<Ring> {
    a.require_local()?;
    let mut gens: Vec<Encoding> = a.locality().maximal_ideal_gens.iter().map(|&x| a.encode(x).clone()).collect();
    if gens.is_empty() {
        gens.push(a.encode(a.zero()).clone());
    }
    triv_extend(a, &ModuleDescriptor::Quot(gens))
}

/// `Σ c_i v_i` in `A^n` and `Σ c̄_i w_i` in `E^n` for pairs `(v_i, w_i)`.
struct Split<'a> {
    a: &'a Ring,
    e: &'a TableModule,
}

impl Split<'_> {
    fn base_combination(&self, coeffs: &[Elem], vecs: &[Vec<Elem>], n: usize) -> Vec<Elem> {
        let mut out = vec![self.a.zero(); n];
        for (&c, v) in coeffs.iter().zip(vecs) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = self.a.add(*o, self.a.mul(c, x));
            }
        }
        out
    }

    fn module_combination(&self, coeffs: &[Elem], vecs: &[Vec<u32>], n: usize) -> Vec<u32> {
        let mut out = vec![self.e.zero(); n];
        for (&c, v) in coeffs.iter().zip(vecs) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = self.e.add(*o, self.e.act(c, x));
            }
        }
        out
    }
}

/// The kernels `H_1`, `H_2`, `H_3` of the first three steps of a minimal
/// presentation of `H_0` over `R = A ∝ A/M`, checked against their
/// componentwise descriptions.
pub fn thm11_structure_scenario(h0: &ModuleSpec, cfg: &Config) -> Result<ScenarioReport> {
    let r = h0.ring().clone();
    let (a, e) = r.trivial_parts().ok_or_else(|| Error::WrongShape(format!("{r} is not a trivial extension")))?;
    a.require_local()?;
    if e.card() * a.locality().maximal_ideal.len() != a.card() || e.rank() != 1 {
        return Err(Error::WrongShape(format!("{r} is not A ∝ A/M")));
    }
    let split = Split { a, e };
    let one_bar = e.generator(0);
    let budget = cfg.budget;
    let zero_in = |v: &[Elem]| v.iter().all(|&x| x == a.zero());
    let mut report = ScenarioReport::new(ScenarioId::Thm11Structure, &[("ring", r.to_string()), ("module", h0.to_string())]);

    let z = minimal_generators(h0)?;
    let n = z.len();
    let h1 = kernel_of_map(&ModuleMap::from_free(h0.clone(), z)?)?;
    let h1_elements = elements_of(&h1, budget)?;
    let outside = h1_elements.iter().find(|v| v.iter().any(|&x| !r.in_maximal_ideal(x)));
    report.checks.push(Check::verdict(
        "h1-in-max",
        "H1 ⊆ M^n ∝ (A/M)^n",
        outside.map(|v| crate::module::render_vector(&r, v)),
        format!("n = {n}, |H1| = {}", h1_elements.len()),
    ));

    let f_g = finite_generation_check(a);
    if h1_elements.len() == 1 {
        for (name, anchor) in CHAIN_CHECKS {
            report.checks.push(Check::pass(name, anchor, "H1 = 0, so H0 is free and the chain stops"));
        }
        report.checks.push(f_g);
        return Ok(report);
    }

    let gens1 = minimal_generators(&h1)?;
    let m = gens1.len();
    let xs: Vec<Vec<Elem>> = gens1.iter().map(|g| g.iter().map(|&c| r.unpair(c).0).collect()).collect();
    let ys: Vec<Vec<u32>> = gens1.iter().map(|g| g.iter().map(|&c| r.unpair(c).1).collect()).collect();

    // H2 = Ker(u1)
    let h2 = kernel_of_map(&ModuleMap::from_free(ModuleSpec::free(&r, n), gens1.clone())?)?;
    let computed = elements_of(&h2, budget)?;
    let in_u = |c: &[Elem]| {
        zero_in(&split.base_combination(c, &xs, n)) && split.module_combination(c, &ys, n).iter().all(|&y| y == e.zero())
    };
    let expected: BTreeSet<Vector> = all_vectors(&r, m, budget)?
        .into_iter()
        .filter(|v| in_u(&v.iter().map(|&c| r.unpair(c).0).collect::<Vec<_>>()))
        .collect();
    report.checks.push(Check::verdict(
        "h2-set",
        CHAIN_CHECKS[0].1,
        set_difference(&r, &computed, &expected),
        format!("m = {m}, |H2| = {}", computed.len()),
    ));

    let u: Vec<Vector> = all_vectors(a, m, budget)?.into_iter().filter(|c| in_u(c)).collect();
    let outside = u.iter().find(|c| c.iter().any(|&x| !a.in_maximal_ideal(x)));
    report.checks.push(Check::verdict(
        "u-in-max",
        CHAIN_CHECKS[1].1,
        outside.map(|c| crate::module::render_vector(a, c)),
        format!("|U| = {}", u.len()),
    ));

    // H3 = Ker(u2)
    let ts = minimal_generators(&ModuleSpec::submodule(a, m, u.clone())?)?;
    let p = ts.len();
    let mut images: Vec<Vector> = ts.iter().map(|t| t.iter().map(|&x| r.pair(x, e.zero())).collect()).collect();
    for j in 0..m {
        let mut v = vec![r.zero(); m];
        v[j] = r.pair(a.zero(), one_bar);
        images.push(v);
    }
    let h3 = kernel_of_map(&ModuleMap::from_free(ModuleSpec::free(&r, m), images)?)?;
    let computed = elements_of(&h3, budget)?;
    let in_v = |c: &[Elem]| zero_in(&split.base_combination(c, &ts, m));
    let expected: BTreeSet<Vector> = all_vectors(&r, p + m, budget)?
        .into_iter()
        .filter(|w| {
            let base: Vec<Elem> = w.iter().map(|&c| r.unpair(c).0).collect();
            in_v(&base[..p]) && base[p..].iter().all(|&x| a.in_maximal_ideal(x))
        })
        .collect();
    report.checks.push(Check::verdict(
        "h3-set",
        CHAIN_CHECKS[2].1,
        set_difference(&r, &computed, &expected),
        format!("p = {p}, |H3| = {}", computed.len()),
    ));

    let v_elems: Vec<Vector> = all_vectors(a, p, budget)?.into_iter().filter(|c| in_v(c)).collect();
    let unit_vectors = |k: usize, x: Elem| -> Vec<Vector> {
        (0..k)
            .map(|j| {
                let mut v = vec![r.zero(); k];
                v[j] = x;
                v
            })
            .collect()
    };
    let mut right_gens = unit_vectors(m, r.pair(a.zero(), one_bar));
    for &g in &a.locality().maximal_ideal_gens {
        right_gens.extend(unit_vectors(m, r.pair(g, e.zero())));
    }
    let right = ModuleSpec::submodule(&r, m, right_gens)?;
    let model = if p == 0 {
        right
    } else {
        let mut left_gens: Vec<Vector> = v_elems.iter().map(|c| c.iter().map(|&x| r.pair(x, e.zero())).collect()).collect();
        left_gens.extend(unit_vectors(p, r.pair(a.zero(), one_bar)));
        direct_sum(&ModuleSpec::submodule(&r, p, left_gens)?, &right)?
    };
    let witness = match modules_isomorphic(&h3, &model)? {
        Some(_) => None,
        None => Some(format!("no isomorphism onto {model}")),
    };
    report.checks.push(Check::verdict("h3-iso", CHAIN_CHECKS[3].1, witness, format!("|V| = {}", v_elems.len())));
    report.checks.push(f_g);
    Ok(report)
}

const CHAIN_CHECKS: [(&str, &str); 4] = [
    ("h2-set", "H2 = U ∝ (A/M)^m"),
    ("u-in-max", "U ⊆ M^m"),
    ("h3-set", "Ker(u2) = {(a,e) ∈ R^(p+m) : Σ a_i t_i = 0, a_(p+j) ∈ M}"),
    ("h3-iso", "H3 ≅ (V ∝ (A/M)^p) ⊕ (M^m ∝ (A/M)^m)"),
];

fn finite_generation_check(a: &Ring) -> Check {
    let gens = &a.locality().maximal_ideal_gens;
    Check::pass(
        "m-finitely-generated",
        "H3 finitely generated ⇒ M ∝ A/M finitely generated ⇒ M finitely generated",
        format!(
            "M = {} is finitely generated, as in every finite ring; the hypothesis that M is not finitely generated cannot hold, so H1 = 0 is not concluded",
            render_elems(a, gens)
        ),
    )
}

/// `R = series(p, n) ∝ GF(p)` and `v(w) = w·(x,0)` on the window of pairs
/// whose first coordinate has degree at most `dg`.
pub fn thm11_part2_bounded(p: u64, n: usize, dg: usize) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::InvalidDescriptor(format!("precision {n} is below 2")));
    }
    if dg + 1 >= n {
        return Err(Error::PrecisionTooSmall { degree: dg, precision: n });
    }
    let a = construct_ring(&RingDescriptor::SeriesTrunc { p, precision: n })?;
    let x = RingElement::parse(&a, "x")?.elem();
    let r = triv_extend(&a, &ModuleDescriptor::Quot(vec![a.encode(x).clone()]))?;
    let (_, e) = r.trivial_parts().unwrap();
    let coeffs = |y: Elem| match a.encode(y) {
        Encoding::Coeffs(c) => c.clone(),
        other => unreachable!("series elements are coefficient vectors, got {other}"),
    };
    let degree = |y: Elem| coeffs(y).iter().rposition(|&c| c != 0);
    let mut report = ScenarioReport::new(
        ScenarioId::Thm11Part2,
        &[("ring", r.to_string()), ("p", p.to_string()), ("precision", n.to_string()), ("degree_bound", dg.to_string())],
    );

    let window: Vec<Elem> = r.all_elements().filter(|&w| degree(r.unpair(w).0).is_none_or(|d| d <= dg)).collect();
    let v = |w: Elem| r.mul(w, r.pair(x, e.zero()));

    let kernel: BTreeSet<Elem> = window.iter().copied().filter(|&w| v(w) == r.zero()).collect();
    let expected: BTreeSet<Elem> = (0..e.card() as u32).map(|c| r.pair(a.zero(), c)).collect();
    let witness = kernel.symmetric_difference(&expected).next().map(|&w| r.render(w));
    report.checks.push(Check::verdict(
        "kernel-window",
        "Ker(v) ∩ window = 0 ∝ A/M",
        witness,
        format!("{} pairs with deg a ≤ {dg}, kernel size {}", window.len(), kernel.len()),
    ));

    let image: BTreeSet<Elem> = window.iter().map(|&w| v(w)).collect();
    let mut shifted = BTreeSet::new();
    for w in &window {
        let (b, _) = r.unpair(*w);
        let mut c = vec![0; n];
        c[1..].copy_from_slice(&coeffs(b)[..n - 1]);
        shifted.insert(r.pair(a.decode(&Encoding::Coeffs(c))?, e.zero()));
    }
    let witness = image.symmetric_difference(&shifted).next().map(|&w| r.render(w));
    report.checks.push(Check::verdict(
        "principal-image",
        "J = R(x,0): window image = {(ax, 0)}",
        witness,
        format!("{} image elements", image.len()),
    ));

    let principal = ideal_bitmap(&r, &[r.pair(a.zero(), e.generator(0))]);
    let principal: BTreeSet<Elem> = r.all_elements().filter(|w| principal[w.idx()]).collect();
    let witness = kernel.symmetric_difference(&principal).next().map(|&w| r.render(w));
    report.checks.push(Check::verdict("kernel-principal", "Ker(v) = R(0,1)", witness, format!("|R(0,1)| = {}", principal.len())));
    Ok(report)
}
