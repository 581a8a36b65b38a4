//! Howell normal form for submodules of `(Z/p^e)^w`.
//!
//! Rows are kept in echelon form with at most one row per pivot column and
//! the pivot normalized to a power of `p`. Insertion closes the row set
//! under annihilator shifts, so a vector lies in the span iff it reduces to
//! zero, and the rows whose pivot lies at or after column `t` span exactly
//! the vectors of the span that vanish on the first `t` columns.

use crate::arith::{inv_mod, valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Howell {
    p: u64,
    e: u32,
    q: u64,
    width: usize,
    rows: Vec<Option<Vec<u64>>>,
}

impl Howell {
    pub fn new(p: u64, e: u32, width: usize) -> Howell {
        Howell { p, e, q: p.pow(e), width, rows: vec![None; width] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn val(&self, x: u64) -> u32 {
        if x == 0 {
            self.e
        } else {
            valuation(x, self.p)
        }
    }

    /// Scale `r` so its entry at `c` becomes exactly `p^w`.
    fn normalize(&self, r: &mut [u64], c: usize) -> u32 {
        let w = self.val(r[c]);
        let unit = r[c] / self.p.pow(w);
        let inv = inv_mod(unit, self.q).expect("unit part is invertible");
        for x in r.iter_mut() {
            *x = *x * inv % self.q;
        }
        w
    }

    fn shifted(&self, r: &[u64], w: u32) -> Option<Vec<u64>> {
        let f = self.p.pow(self.e - w);
        let s: Vec<u64> = r.iter().map(|&x| x * f % self.q).collect();
        s.iter().any(|&x| x != 0).then_some(s)
    }

    fn axpy(&self, r: &mut [u64], f: u64, b: &[u64]) {
        for (x, &y) in r.iter_mut().zip(b) {
            *x = (*x + self.q - f * y % self.q) % self.q;
        }
    }

    /// Add a vector to the span. Returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut grew = false;
        let mut stack = vec![v];
        while let Some(mut r) = stack.pop() {
            while let Some(c) = r.iter().position(|&x| x != 0) {
                let w = self.val(r[c]);
                match &self.rows[c] {
                    Some(b) => {
                        let vb = self.val(b[c]);
                        if w >= vb {
                            let f = r[c] / self.p.pow(vb);
                            let b = b.clone();
                            self.axpy(&mut r, f, &b);
                            continue;
                        }
                        self.normalize(&mut r, c);
                        if let Some(s) = self.shifted(&r, w) {
                            stack.push(s);
                        }
                        let old = self.rows[c].replace(r).unwrap();
                        stack.push(old);
                    }
                    None => {
                        self.normalize(&mut r, c);
                        if let Some(s) = self.shifted(&r, w) {
                            stack.push(s);
                        }
                        self.rows[c] = Some(r);
                    }
                }
                grew = true;
                break;
            }
        }
        grew
    }

    pub fn extend<I: IntoIterator<Item = Vec<u64>>>(&mut self, vs: I) {
        for v in vs {
            self.insert(v);
        }
    }

    /// Canonical remainder of `v` modulo the span.
    pub fn reduce(&self, v: &mut [u64]) {
        for c in 0..self.width {
            if let Some(b) = &self.rows[c] {
                let f = v[c] / b[c];
                if f > 0 {
                    self.axpy(v, f, b);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut r = v.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&x| x == 0)
    }

    /// Reduce entries above every pivot, making the row set unique for the span.
    pub fn canonicalize(&mut self) {
        for c in 0..self.width {
            let Some(b) = self.rows[c].clone() else { continue };
            for i in 0..c {
                if let Some(r) = &mut self.rows[i] {
                    let f = r[c] / b[c];
                    if f > 0 {
                        let q = self.q;
                        for (x, &y) in r.iter_mut().zip(&b) {
                            *x = (*x + q - f * y % q) % q;
                        }
                    }
                }
            }
        }
    }

    /// Rows in pivot order with their pivot columns.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vec<u64>)> {
        self.rows.iter().enumerate().filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
    }

    /// Additive order of row `r` (pivot `p^v` has order `p^(e-v)`).
    pub fn row_order_exp(&self, pivot: usize) -> u32 {
        self.rows[pivot].as_ref().map_or(0, |r| self.e - self.val(r[pivot]))
    }

    /// `log_p` of the number of elements in the span.
    pub fn log_card(&self) -> u32 {
        self.rows().map(|(c, _)| self.row_order_exp(c)).sum()
    }

    pub fn card(&self) -> u128 {
        (self.p as u128).pow(self.log_card())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }

    /// Rows of the span vanishing on the first `t` columns, truncated to the rest.
    pub fn tail_rows(&self, t: usize) -> Vec<Vec<u64>> {
        self.rows().filter(|(c, _)| *c >= t).map(|(_, r)| r[t..].to_vec()).collect()
    }

    /// Every element of the span, in a deterministic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let basis: Vec<(u64, &Vec<u64>)> = self.rows().map(|(c, r)| (self.p.pow(self.row_order_exp(c)), r)).collect();
        let mut out = vec![vec![0u64; self.width]];
        for (ord, r) in basis {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for v in &out {
                let mut x = v.clone();
                for _ in 0..ord {
                    next.push(x.clone());
                    for (a, &b) in x.iter_mut().zip(r) {
                        *a = (*a + b) % self.q;
                    }
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn brute_span(q: u64, w: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; w]);
        let mut frontier = vec![vec![0; w]];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % q).collect();
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn annihilator_shift_is_closed() {
        // span of (2, 1) over Z/4 contains (0, 2)
        let mut h = Howell::new(2, 2, 2);
        h.insert(vec![2, 1]);
        assert!(h.contains(&[0, 2]));
        assert_eq!(h.card(), 4);
        assert_eq!(h.tail_rows(1), vec![vec![2]]);
    }

    #[test]
    fn canonical_rows_identify_spans() {
        let mut a = Howell::new(3, 2, 3);
        a.extend([vec![3, 1, 0], vec![0, 3, 6]]);
        let mut b = Howell::new(3, 2, 3);
        b.extend([vec![3, 4, 6], vec![0, 6, 3], vec![6, 2, 0]]);
        a.canonicalize();
        b.canonicalize();
        assert_eq!(a, b);
    }

    fn gens_strategy() -> impl Strategy<Value = (u64, u32, usize, Vec<Vec<u64>>)> {
        (prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((2, 3)), Just((3, 2))], 1usize..4).prop_flat_map(
            |((p, e), w)| {
                let q = p.pow(e);
                (Just(p), Just(e), Just(w), prop::collection::vec(prop::collection::vec(0..q, w), 0..4))
            },
        )
    }

    proptest! {
        #[test]
        fn matches_brute_force_span((p, e, w, gens) in gens_strategy()) {
            let q = p.pow(e);
            let mut h = Howell::new(p, e, w);
            h.extend(gens.clone());
            let span = brute_span(q, w, &gens);
            prop_assert_eq!(h.card(), span.len() as u128);
            let listed: BTreeSet<Vec<u64>> = h.elements().into_iter().collect();
            prop_assert_eq!(&listed, &span);
            for t in 0..=w {
                let tail: Vec<Vec<u64>> = h.tail_rows(t).into_iter().map(|r| {
                    let mut v = vec![0; t];
                    v.extend(r);
                    v
                }).collect();
                let expected: BTreeSet<Vec<u64>> = span.iter().filter(|v| v[..t].iter().all(|&x| x == 0)).cloned().collect();
                prop_assert_eq!(brute_span(q, w, &tail), expected);
            }
        }

        #[test]
        fn remainders_are_coset_invariant((p, e, w, gens) in gens_strategy(), shift in prop::collection::vec(0u64..27, 3)) {
            let q = p.pow(e);
            let mut h = Howell::new(p, e, w);
            h.extend(gens);
            let x: Vec<u64> = shift[..w].iter().map(|s| s % q).collect();
            let mut rx = x.clone();
            h.reduce(&mut rx);
            for s in h.elements() {
                let mut y: Vec<u64> = x.iter().zip(&s).map(|(a, b)| (a + b) % q).collect();
                h.reduce(&mut y);
                prop_assert_eq!(&y, &rx);
            }
        }
    }
}
