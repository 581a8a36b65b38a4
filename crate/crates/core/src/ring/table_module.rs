use super::descriptor::{ElemExpr, Encoding, ModuleDescriptor};
use super::{Elem, Ring};
use crate::error::{Error, Result};

/// Cap on `|A|^rank` when enumerating the ambient free module.
const MAX_AMBIENT: u128 = 1 << 20;

/// A finite module over a finite ring, stored as coset classes of `A^rank`
/// with explicit addition and scalar-action tables. Used for the second
/// component of trivial extensions.
pub struct TableModule {
    base: Ring,
    rank: usize,
    /// Canonical representative (least vector) of each class.
    reps: Vec<Vec<Elem>>,
    /// Class of every vector of `A^rank`, indexed lexicographically.
    class_of: Vec<u32>,
    add: Vec<u32>,
    act: Vec<u32>,
}

impl TableModule {
    pub fn build(base: &Ring, desc: &ModuleDescriptor) -> Result<TableModule> {
        let rank = desc.rank();
        let q = base.card();
        let ambient = (q as u128).pow(rank as u32);
        if ambient > MAX_AMBIENT {
            return Err(Error::TooLarge { size: ambient, cutoff: MAX_AMBIENT });
        }
        let relations: Vec<Vec<Elem>> = match desc {
            ModuleDescriptor::Quot(gens) => {
                gens.iter().map(|g| base.decode(g).map(|x| vec![x])).collect::<Result<_>>()?
            }
            ModuleDescriptor::Free(_) => Vec::new(),
            ModuleDescriptor::Pres(rows) => {
                let cols = rows.first().map_or(0, |r| r.len());
                (0..cols)
                    .map(|j| rows.iter().map(|row| base.decode(&row[j])).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?
            }
        };
        let n = ambient as usize;
        let to_vec = |mut idx: usize| -> Vec<Elem> {
            let mut v = vec![Elem(0); rank];
            for slot in v.iter_mut().rev() {
                *slot = Elem((idx % q) as u32);
                idx /= q;
            }
            v
        };
        let to_idx = |v: &[Elem]| v.iter().fold(0usize, |acc, x| acc * q + x.idx());
        let vadd = |a: &[Elem], b: &[Elem]| a.iter().zip(b).map(|(&x, &y)| base.add(x, y)).collect::<Vec<_>>();

        // Submodule generated by the relation columns: additive closure of A·r.
        let mut scaled: Vec<usize> = Vec::new();
        for r in &relations {
            for a in base.all_elements() {
                let v: Vec<Elem> = r.iter().map(|&x| base.mul(a, x)).collect();
                scaled.push(to_idx(&v));
            }
        }
        scaled.sort_unstable();
        scaled.dedup();
        let mut in_sub = vec![false; n];
        let zero_idx = to_idx(&vec![base.zero(); rank]);
        in_sub[zero_idx] = true;
        let mut sub = vec![zero_idx];
        let mut head = 0;
        while head < sub.len() {
            let x = to_vec(sub[head]);
            head += 1;
            for &t in &scaled {
                let y = to_idx(&vadd(&x, &to_vec(t)));
                if !in_sub[y] {
                    in_sub[y] = true;
                    sub.push(y);
                }
            }
        }
        let sub_vecs: Vec<Vec<Elem>> = sub.iter().map(|&i| to_vec(i)).collect();

        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for v in 0..n {
            if class_of[v] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            let rep = to_vec(v);
            for s in &sub_vecs {
                class_of[to_idx(&vadd(&rep, s))] = c;
            }
            reps.push(rep);
        }
        let ne = reps.len();
        let mut add = vec![0u32; ne * ne];
        for i in 0..ne {
            for j in 0..ne {
                add[i * ne + j] = class_of[to_idx(&vadd(&reps[i], &reps[j]))];
            }
        }
        let mut act = vec![0u32; q * ne];
        for a in base.all_elements() {
            for (j, rep) in reps.iter().enumerate() {
                let v: Vec<Elem> = rep.iter().map(|&x| base.mul(a, x)).collect();
                act[a.idx() * ne + j] = class_of[to_idx(&v)];
            }
        }
        Ok(TableModule { base: base.clone(), rank, reps, class_of, add, act })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn card(&self) -> usize {
        self.reps.len()
    }

    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn add(&self, e: u32, f: u32) -> u32 {
        self.add[e as usize * self.card() + f as usize]
    }

    /// Scalar action `a·e`.
    #[inline]
    pub fn act(&self, a: Elem, e: u32) -> u32 {
        self.act[a.idx() * self.card() + e as usize]
    }

    pub fn representative(&self, e: u32) -> &[Elem] {
        &self.reps[e as usize]
    }

    /// Class of an arbitrary vector of `A^rank`.
    pub fn class_of(&self, v: &[Elem]) -> u32 {
        let q = self.base.card();
        self.class_of[v.iter().fold(0usize, |acc, x| acc * q + x.idx())]
    }

    /// The class of the `i`-th standard generator.
    pub fn generator(&self, i: usize) -> u32 {
        let mut v = vec![self.base.zero(); self.rank];
        v[i] = self.base.one();
        self.class_of(&v)
    }

    pub fn encode(&self, e: u32) -> Encoding {
        let rep = &self.reps[e as usize];
        if self.rank == 1 {
            self.base.encode(rep[0]).clone()
        } else {
            Encoding::Tuple(rep.iter().map(|&x| self.base.encode(x).clone()).collect())
        }
    }

    pub fn element(&self, e: &ElemExpr) -> Result<u32> {
        let v = if self.rank == 1 {
            vec![self.base.element(e)?]
        } else {
            match e {
                ElemExpr::Tuple(items) if items.len() == self.rank => {
                    items.iter().map(|it| self.base.element(it)).collect::<Result<Vec<_>>>()?
                }
                ElemExpr::Int(0) => vec![self.base.zero(); self.rank],
                _ => return Err(Error::InvalidElement(format!("{e} is not a module element of rank {}", self.rank))),
            }
        };
        Ok(self.class_of(&v))
    }
}
