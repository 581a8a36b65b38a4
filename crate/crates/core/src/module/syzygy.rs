use std::collections::HashSet;

use super::closure::extend_by;
use super::lattice::Ambient;
use super::mingens::nakayama_select;
use super::{ModuleKind, ModuleMap, ModuleSpec, PresentationMatrix, Vector};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Generators of the kernel `{v ∈ R^rank : Mv = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub ring: Ring,
    pub rank: usize,
    pub gens: Vec<Vector>,
}

impl SyzygyBasis {
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn to_module(&self) -> ModuleSpec {
        ModuleSpec::submodule(&self.ring, self.rank, self.gens.clone()).expect("generators have the kernel rank")
    }
}

/// Exhaustive kernel: every `v ∈ R^m` is tested, then the kernel is pruned
/// to module generators by closure.
pub fn syzygies_oracle(m: &PresentationMatrix, budget: u64) -> Result<SyzygyBasis> {
    let ring = m.ring();
    ring.require_finite()?;
    let q = ring.card() as u128;
    let cols = m.cols();
    let needed = q.checked_pow(cols as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    let zero_row = vec![ring.zero(); m.rows()];
    let mut kernel = Vec::new();
    let mut v = vec![ring.zero(); cols];
    for _ in 0..needed {
        if m.apply(&v) == zero_row {
            kernel.push(v.clone());
        }
        for slot in v.iter_mut().rev() {
            slot.0 += 1;
            if slot.idx() < ring.card() {
                break;
            }
            slot.0 = 0;
        }
    }
    let mut closed: HashSet<Vector> = HashSet::from([vec![ring.zero(); cols]]);
    let mut gens = Vec::new();
    for v in kernel {
        if !closed.contains(&v) {
            closed = extend_by(ring, &closed, &v);
            gens.push(v);
        }
    }
    Ok(SyzygyBasis { ring: ring.clone(), rank: cols, gens })
}

/// Unit-pivot reduction to `[I 0; 0 B]` with `B` over the maximal ideal,
/// then an exact kernel of `B` from the Howell form of its graph.
pub fn syzygies_structured(m: &PresentationMatrix) -> Result<SyzygyBasis> {
    let ring = m.ring();
    ring.require_finite()?;
    ring.require_local()?;
    let (r, b, q) = unit_pivot_reduce(m);
    let block_cols: Vec<Vector> = (r..m.cols()).map(|j| (r..m.rows()).map(|i| b.get(i, j)).collect()).collect();
    let inner = kernel_additive(ring, m.rows() - r, &block_cols, &[])?;
    let lifted: Vec<Vector> = inner
        .iter()
        .map(|y| {
            let mut w = vec![ring.zero(); r];
            w.extend_from_slice(y);
            q.apply(&w)
        })
        .collect();
    debug_assert!(lifted.iter().all(|v| m.apply(v).iter().all(|&x| x == ring.zero())));
    let gens = nakayama_select(ring, m.cols(), &lifted, &[])?;
    Ok(SyzygyBasis { ring: ring.clone(), rank: m.cols(), gens })
}

/// Returns the pivot count, the reduced matrix and the column transform `Q`.
fn unit_pivot_reduce(m: &PresentationMatrix) -> (usize, PresentationMatrix, PresentationMatrix) {
    let ring = m.ring();
    let mut a = m.clone();
    let mut q = PresentationMatrix::identity(ring, m.cols());
    let mut r = 0;
    loop {
        let pivot = (r..a.rows()).flat_map(|i| (r..a.cols()).map(move |j| (i, j))).find(|&(i, j)| ring.is_unit(a.get(i, j)));
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, pi, r);
        swap_cols(&mut a, pj, r);
        swap_cols(&mut q, pj, r);
        let inv = ring.inverse(a.get(r, r)).unwrap();
        for j in 0..a.cols() {
            a.set(r, j, ring.mul(inv, a.get(r, j)));
        }
        for i in 0..a.rows() {
            let f = a.get(i, r);
            if i != r && f != ring.zero() {
                for j in 0..a.cols() {
                    a.set(i, j, ring.sub(a.get(i, j), ring.mul(f, a.get(r, j))));
                }
            }
        }
        for j in 0..a.cols() {
            let f = a.get(r, j);
            if j != r && f != ring.zero() {
                for i in 0..a.rows() {
                    a.set(i, j, ring.sub(a.get(i, j), ring.mul(f, a.get(i, r))));
                }
                for i in 0..q.rows() {
                    q.set(i, j, ring.sub(q.get(i, j), ring.mul(f, q.get(i, r))));
                }
            }
        }
        r += 1;
    }
    (r, a, q)
}

fn swap_rows(a: &mut PresentationMatrix, i: usize, k: usize) {
    if i != k {
        for j in 0..a.cols() {
            let (x, y) = (a.get(i, j), a.get(k, j));
            a.set(i, j, y);
            a.set(k, j, x);
        }
    }
}

fn swap_cols(a: &mut PresentationMatrix, j: usize, k: usize) {
    if j != k {
        for i in 0..a.rows() {
            let (x, y) = (a.get(i, j), a.get(i, k));
            a.set(i, j, y);
            a.set(i, k, x);
        }
    }
}

/// Additive generators of `{c ∈ R^k : Σ c_i cols_i ∈ span(rels)}`, where
/// `cols` and `rels` live in `R^n`. Needs a ring of prime-power order.
pub(crate) fn kernel_additive(ring: &Ring, n: usize, cols: &[Vector], rels: &[Vector]) -> Result<Vec<Vector>> {
    let target = Ambient::new(ring, n)?;
    let source = Ambient::new(ring, cols.len())?;
    let t = target.width();
    let mut h = target.howell_with(source.width());
    let basis = ring.frame().unwrap().basis().to_vec();
    for (i, col) in cols.iter().enumerate() {
        for &b in &basis {
            let mut row = target.embed(&super::scale(ring, b, col));
            let mut unit = vec![ring.zero(); cols.len()];
            unit[i] = b;
            source.embed_into(&unit, &mut row);
            h.insert(row);
        }
    }
    for rel in rels {
        for &b in &basis {
            let mut row = target.embed(&super::scale(ring, b, rel));
            row.resize(t + source.width(), 0);
            h.insert(row);
        }
    }
    Ok(h.tail_rows(t).iter().map(|r| source.extract(r)).collect())
}

/// Generators of `{c ∈ R^k : Σ c_i cols_i ∈ span(rels)}` over any finite ring.
pub(crate) fn kernel_generators(ring: &Ring, n: usize, cols: &[Vector], rels: &[Vector]) -> Result<Vec<Vector>> {
    let k = cols.len();
    if ring.frame().is_some() {
        let cands = kernel_additive(ring, n, cols, rels)?;
        return if ring.is_local() { nakayama_select(ring, k, &cands, &[]) } else { greedy_prune(ring, k, &cands) };
    }
    let mut all = cols.to_vec();
    all.extend(rels.iter().cloned());
    let m = PresentationMatrix::from_columns(ring, n, &all)?;
    let syz = syzygies_oracle(&m, Config::default().budget)?;
    let mut out: Vec<Vector> = Vec::new();
    for v in syz.gens {
        let head = v[..k].to_vec();
        if head.iter().any(|&x| x != ring.zero()) && !out.contains(&head) {
            out.push(head);
        }
    }
    Ok(out)
}

/// Drop candidates already in the span of those kept before them.
fn greedy_prune(ring: &Ring, n: usize, cands: &[Vector]) -> Result<Vec<Vector>> {
    let amb = Ambient::new(ring, n)?;
    let mut h = amb.howell();
    let mut kept = Vec::new();
    for c in cands {
        if !h.contains(&amb.embed(c)) {
            h.extend(amb.cyclic_additive(c));
            kept.push(c.clone());
        }
    }
    Ok(kept)
}

/// Kernel of a map out of a free module, as a submodule of the source.
pub fn kernel_of_map(f: &ModuleMap) -> Result<ModuleSpec> {
    let ModuleKind::Free(k) = f.source.kind() else {
        return Err(Error::WrongShape("kernel_of_map needs a free source".into()));
    };
    let ring = f.source.ring();
    let gens = kernel_generators(ring, f.target.ambient_rank(), &f.images, &f.target.relations())?;
    ModuleSpec::submodule(ring, *k, gens)
}

/// A presentation matrix whose cokernel is isomorphic to `m`, on the
/// generators returned by [`ModuleSpec::generators`].
pub fn presentation(m: &ModuleSpec) -> Result<PresentationMatrix> {
    let ring = m.ring();
    match m.kind() {
        ModuleKind::Free(n) => Ok(PresentationMatrix::zeros(ring, *n, 0)),
        ModuleKind::Presented(p) => Ok(p.clone()),
        ModuleKind::Submodule { rank, gens } => {
            let rels = kernel_generators(ring, *rank, gens, &[])?;
            PresentationMatrix::from_columns(ring, gens.len(), &rels)
        }
    }
}
