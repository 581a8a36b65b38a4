use super::{Elem, Ring};
use crate::arith::prime_power;

/// Additive coordinates for a ring of prime-power order: a basis
/// `b_1..b_d` of the additive p-group with orders `p^{k_j}`, so every
/// element is uniquely `Σ c_j b_j` with `0 <= c_j < p^{k_j}`.
#[derive(Clone, Debug)]
pub struct AdditiveFrame {
    p: u64,
    /// Exponent of the additive group is `p^exponent`.
    exponent: u32,
    basis: Vec<Elem>,
    order_exps: Vec<u32>,
    coords: Vec<u64>,
    strides: Vec<usize>,
    from_mixed: Vec<Elem>,
}

impl AdditiveFrame {
    pub(super) fn compute(ring: &Ring) -> Option<AdditiveFrame> {
        let (p, _) = prime_power(ring.card() as u64)?;
        let n = ring.card();
        // coords of members of the current span, in terms of the basis so far
        let mut span: Vec<Option<Vec<u64>>> = vec![None; n];
        span[ring.zero().idx()] = Some(Vec::new());
        let mut members = vec![ring.zero()];
        let mut basis: Vec<Elem> = Vec::new();
        let mut order_exps: Vec<u32> = Vec::new();

        while members.len() < n {
            // element of maximal order modulo the span; ties by index
            let mut best: Option<(u32, Elem)> = None;
            for g in ring.all_elements() {
                let mut k = 0;
                let mut y = g;
                while span[y.idx()].is_none() {
                    y = ring.times(y, p);
                    k += 1;
                }
                if best.map_or(true, |(bk, _)| k > bk) {
                    best = Some((k, g));
                }
            }
            let (k, g) = best.unwrap();
            let pk = p.pow(k);
            let h = ring.times(g, pk);
            let hc = span[h.idx()].clone().unwrap();
            let mut adjusted = g;
            for (j, &c) in hc.iter().enumerate() {
                assert!(c % pk == 0, "p-group basis adjustment must be exact");
                let shift = ring.times(basis[j], c / pk);
                adjusted = ring.sub(adjusted, shift);
            }
            basis.push(adjusted);
            order_exps.push(k);
            let mut next = Vec::with_capacity(members.len() * pk as usize);
            let mut next_span: Vec<Option<Vec<u64>>> = vec![None; n];
            for &s in &members {
                let base = span[s.idx()].clone().unwrap();
                let mut x = s;
                for c in 0..pk {
                    let mut cs = base.clone();
                    cs.push(c);
                    assert!(next_span[x.idx()].is_none(), "new basis element must be independent");
                    next_span[x.idx()] = Some(cs);
                    next.push(x);
                    x = ring.add(x, adjusted);
                }
            }
            span = next_span;
            members = next;
        }
        let d = basis.len();
        let exponent = order_exps.iter().copied().max().unwrap_or(0);
        let mut strides = vec![1usize; d];
        for j in 1..d {
            strides[j] = strides[j - 1] * p.pow(order_exps[j - 1]) as usize;
        }
        let mut coords = vec![0u64; n * d];
        let mut from_mixed = vec![Elem(0); n];
        for x in ring.all_elements() {
            let c = span[x.idx()].as_ref().unwrap();
            coords[x.idx() * d..(x.idx() + 1) * d].copy_from_slice(c);
            let mixed: usize = c.iter().zip(&strides).map(|(&ci, &s)| ci as usize * s).sum();
            from_mixed[mixed] = x;
        }
        Some(AdditiveFrame { p, exponent, basis, order_exps, coords, strides, from_mixed })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Characteristic `p^exponent`; coordinates live in this residue ring.
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.exponent)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn order_exps(&self) -> &[u32] {
        &self.order_exps
    }

    #[inline]
    pub fn coords(&self, x: Elem) -> &[u64] {
        let d = self.dim();
        &self.coords[x.idx() * d..(x.idx() + 1) * d]
    }

    /// Element with the given coordinates (reduced modulo the orders).
    pub fn element(&self, c: &[u64]) -> Elem {
        let mixed: usize = c
            .iter()
            .zip(&self.order_exps)
            .zip(&self.strides)
            .map(|((&ci, &k), &s)| (ci % self.p.pow(k)) as usize * s)
            .sum();
        self.from_mixed[mixed]
    }
}
