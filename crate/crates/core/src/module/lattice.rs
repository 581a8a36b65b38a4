//! Embedding of `R^n` into `(Z/p^e)^(n·d)` through the additive frame of
//! `R`, so that submodules become Howell spans.

use std::collections::HashSet;

use super::{ModuleSpec, Vector};
use crate::error::{Error, Result};
use crate::howell::Howell;
use crate::ring::{Elem, Ring};

#[derive(Clone)]
pub(crate) struct Ambient {
    ring: Ring,
    n: usize,
    d: usize,
    p: u64,
    e: u32,
    /// `p^(e - k_j)` for frame coordinate `j` of order `p^k_j`.
    scale: Vec<u64>,
}

impl Ambient {
    pub fn new(ring: &Ring, n: usize) -> Result<Ambient> {
        let frame = ring.frame().ok_or(Error::NotLocal)?;
        let e = frame.exponent();
        let p = frame.prime();
        let scale = frame.order_exps().iter().map(|&k| p.pow(e - k)).collect();
        Ok(Ambient { ring: ring.clone(), n, d: frame.dim(), p, e, scale })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n * self.d
    }

    pub fn howell(&self) -> Howell {
        Howell::new(self.p, self.e, self.width())
    }

    pub fn howell_with(&self, extra: usize) -> Howell {
        Howell::new(self.p, self.e, self.width() + extra)
    }

    pub fn embed(&self, v: &[Elem]) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.width());
        self.embed_into(v, &mut out);
        out
    }

    pub fn embed_into(&self, v: &[Elem], out: &mut Vec<u64>) {
        debug_assert_eq!(v.len(), self.n);
        let frame = self.ring.frame().unwrap();
        for &x in v {
            out.extend(frame.coords(x).iter().zip(&self.scale).map(|(&c, &s)| c * s));
        }
    }

    pub fn extract(&self, c: &[u64]) -> Vector {
        let frame = self.ring.frame().unwrap();
        c.chunks(self.d)
            .map(|chunk| {
                let raw: Vec<u64> = chunk.iter().zip(&self.scale).map(|(&x, &s)| x / s).collect();
                frame.element(&raw)
            })
            .collect()
    }

    /// Additive generators of `R·v`.
    pub fn cyclic_additive(&self, v: &[Elem]) -> impl Iterator<Item = Vec<u64>> + '_ {
        let v = v.to_vec();
        let frame = self.ring.frame().unwrap();
        frame.basis().iter().map(move |&b| self.embed(&super::scale(&self.ring, b, &v)))
    }

    /// Howell span of the submodule generated by `gens`.
    pub fn span(&self, gens: &[Vector]) -> Howell {
        let mut h = self.howell();
        for g in gens {
            h.extend(self.cyclic_additive(g));
        }
        h
    }
}

/// Additive generators of the maximal ideal of a local ring.
pub(crate) fn maximal_ideal_additive(ring: &Ring) -> Vec<Elem> {
    let frame = ring.frame().expect("local finite rings have prime-power order");
    let mut out = Vec::new();
    for &x in &ring.locality().maximal_ideal_gens {
        for &b in frame.basis() {
            let y = ring.mul(b, x);
            if !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out
}

/// A module `S/T` with both spans in Howell form.
pub(crate) struct Subquotient {
    pub amb: Ambient,
    pub gens: Vec<Vector>,
    /// `S + T`.
    pub s: Howell,
    pub t: Howell,
}

impl Subquotient {
    pub fn new(m: &ModuleSpec) -> Result<Subquotient> {
        Self::from_parts(m.ring(), m.ambient_rank(), m.generators(), m.relations())
    }

    pub fn from_parts(ring: &Ring, n: usize, gens: Vec<Vector>, rels: Vec<Vector>) -> Result<Subquotient> {
        let amb = Ambient::new(ring, n)?;
        let t = amb.span(&rels);
        let mut s = t.clone();
        for g in &gens {
            s.extend(amb.cyclic_additive(g));
        }
        Ok(Subquotient { amb, gens, s, t })
    }

    pub fn card(&self) -> Result<u128> {
        Ok(self.s.card() / self.t.card())
    }

    pub fn in_span(&self, v: &[Elem]) -> bool {
        self.s.contains(&self.amb.embed(v))
    }

    pub fn is_zero_class(&self, v: &[Elem]) -> bool {
        self.t.contains(&self.amb.embed(v))
    }

    /// `m^i S + T` for `i = power`, as a Howell span.
    pub fn power_of_max_times(&self, power: usize) -> Howell {
        let ring = self.amb.ring();
        let madd = maximal_ideal_additive(ring);
        let mut layer: Vec<Vector> = self.gens.clone();
        for _ in 0..power {
            let mut next = Vec::new();
            let mut seen = self.amb.howell();
            for v in &layer {
                for &x in &madd {
                    let w = super::scale(ring, x, v);
                    if seen.insert(self.amb.embed(&w)) {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        let mut closed = self.t.clone();
        for v in &layer {
            closed.extend(self.amb.cyclic_additive(v));
        }
        closed
    }

    /// Canonical representatives of every element, capped at `cutoff`.
    pub fn elements(&self, cutoff: u128) -> Result<Vec<Vec<u64>>> {
        let size = self.card()?;
        if size > cutoff {
            return Err(Error::TooLarge { size, cutoff });
        }
        let q = self.s.modulus();
        let steps: Vec<Vec<u64>> = self.gens.iter().flat_map(|g| self.amb.cyclic_additive(g).collect::<Vec<_>>()).collect();
        let zero = vec![0u64; self.amb.width()];
        let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
        let mut out = vec![zero];
        let mut head = 0;
        while head < out.len() {
            let x = out[head].clone();
            head += 1;
            for s in &steps {
                let mut y: Vec<u64> = x.iter().zip(s).map(|(a, b)| (a + b) % q).collect();
                self.t.reduce(&mut y);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
        }
        Ok(out)
    }
}
