//! Finite commutative rings and truncated power series, realized as
//! indexed multiplication tables over canonical encodings.

mod build;
mod descriptor;
mod frame;
pub(crate) mod local;
mod table_module;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};

pub use descriptor::{ElemExpr, Encoding, ModuleDescriptor, RingDescriptor};
pub use frame::AdditiveFrame;
pub use local::{decompose_into_local_factors, LocalFactor};
pub use table_module::TableModule;

/// Rings with more elements than this are rejected at construction.
pub const MAX_TABLE_CARD: usize = 2048;

/// Index of an element inside its ring's tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinality {
    Finite(u64),
    /// A power-series model: the stored truncation has `truncated` elements,
    /// the modelled ring is infinite.
    InfiniteTruncated { truncated: u64 },
}

#[derive(Clone, Debug)]
pub struct Locality {
    pub is_local: bool,
    /// All non-units, ascending, when local.
    pub maximal_ideal: Vec<Elem>,
    pub maximal_ideal_gens: Vec<Elem>,
    pub residue_field: Option<RingDescriptor>,
}

pub(crate) enum Parts {
    Atomic,
    Product(Vec<Ring>),
    Trivial { base: Ring, module: Arc<TableModule> },
    Corner { ambient: Ring, members: Vec<Elem> },
}

pub(crate) struct RingData {
    descriptor: RingDescriptor,
    card: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: Elem,
    one: Elem,
    encodings: Vec<Encoding>,
    lookup: HashMap<Encoding, Elem>,
    inverse: Vec<Option<Elem>>,
    parts: Parts,
    series: bool,
    locality: OnceLock<Locality>,
    frame: OnceLock<Option<AdditiveFrame>>,
}

/// Handle to a constructed ring. Cheap to clone, immutable, `Send + Sync`.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

/// The handle returned by [`construct_ring`].
pub type RingHandle = Ring;

pub fn construct_ring(d: &RingDescriptor) -> Result<Ring> {
    construct_ring_with(d, &Config::default())
}

pub fn construct_ring_with(d: &RingDescriptor, cfg: &Config) -> Result<Ring> {
    d.validate()?;
    let tables = build::build_tables(d, cfg)?;
    let card = tables.card;
    let mut neg = vec![0u32; card];
    for x in 0..card {
        let y = (0..card)
            .find(|&y| tables.add[x * card + y] == tables.zero.0)
            .ok_or_else(|| Error::AxiomViolation(format!("no additive inverse for index {x}")))?;
        neg[x] = y as u32;
    }
    let mut inverse = vec![None; card];
    for x in 0..card {
        if let Some(y) = (0..card).find(|&y| tables.mul[x * card + y] == tables.one.0) {
            inverse[x] = Some(Elem(y as u32));
        }
    }
    let lookup = tables.encodings.iter().enumerate().map(|(i, e)| (e.clone(), Elem(i as u32))).collect();
    let ring = Ring(Arc::new(RingData {
        descriptor: d.clone(),
        card,
        add: tables.add,
        mul: tables.mul,
        neg,
        zero: tables.zero,
        one: tables.one,
        encodings: tables.encodings,
        lookup,
        inverse,
        parts: tables.parts,
        series: d.involves_series(),
        locality: OnceLock::new(),
        frame: OnceLock::new(),
    }));
    if card <= cfg.axiom_cutoff {
        ring.check_axioms()?;
    }
    let _ = ring.0.locality.set(local::compute_locality(&ring));
    let _ = ring.0.frame.set(AdditiveFrame::compute(&ring));
    Ok(ring)
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.descriptor)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.descriptor)
    }
}

impl Ring {
    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.descriptor
    }

    /// Number of stored elements (the truncation size for series models).
    #[inline]
    pub fn card(&self) -> usize {
        self.0.card
    }

    pub fn cardinality(&self) -> Cardinality {
        if self.0.series {
            Cardinality::InfiniteTruncated { truncated: self.0.card as u64 }
        } else {
            Cardinality::Finite(self.0.card as u64)
        }
    }

    /// False for power-series models, whose tables are only a truncation.
    pub fn is_finite(&self) -> bool {
        !self.0.series
    }

    pub(crate) fn require_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NotFinite)
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.0.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.idx() * self.0.card + b.idx()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.idx() * self.0.card + b.idx()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.idx()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `n·x` for a nonnegative integer `n`.
    pub fn times(&self, x: Elem, mut n: u64) -> Elem {
        let mut acc = self.zero();
        let mut base = x;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn pow(&self, x: Elem, n: u32) -> Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(acc, x))
    }

    /// Every stored element in index order, without the finiteness check.
    pub fn all_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.card as u32).map(Elem)
    }

    pub fn encode(&self, x: Elem) -> &Encoding {
        &self.0.encodings[x.idx()]
    }

    /// Look up a canonical encoding.
    pub fn decode(&self, e: &Encoding) -> Result<Elem> {
        match self.0.lookup.get(e) {
            Some(x) => Ok(*x),
            None => self.element(&ElemExpr::from(e)),
        }
    }

    /// Interpret element syntax in this ring, reducing to canonical form.
    pub fn element(&self, e: &ElemExpr) -> Result<Elem> {
        build::element_from_expr(self, e)
    }

    pub fn render(&self, x: Elem) -> String {
        self.encode(x).to_string()
    }

    #[inline]
    pub fn is_unit(&self, x: Elem) -> bool {
        self.0.inverse[x.idx()].is_some()
    }

    pub fn inverse(&self, x: Elem) -> Result<Elem> {
        self.0.inverse[x.idx()].ok_or_else(|| Error::NotAUnit(self.render(x)))
    }

    /// Whether multiplication by `x` is injective. Power-series components
    /// answer for the untruncated domain: every nonzero series is regular.
    pub fn is_regular(&self, x: Elem) -> bool {
        match (&self.0.descriptor, &self.0.parts) {
            (RingDescriptor::SeriesTrunc { .. }, _) => x != self.zero(),
            (_, Parts::Product(factors)) => {
                let comps = build::product_components(self, x);
                factors.iter().zip(comps).all(|(f, c)| f.is_regular(c))
            }
            _ => {
                let mut seen = vec![false; self.card()];
                self.all_elements().all(|y| !std::mem::replace(&mut seen[self.mul(x, y).idx()], true))
            }
        }
    }

    pub fn locality(&self) -> &Locality {
        self.0.locality.get().expect("locality is computed at construction")
    }

    pub fn is_local(&self) -> bool {
        self.locality().is_local
    }

    pub(crate) fn require_local(&self) -> Result<()> {
        if self.is_local() {
            Ok(())
        } else {
            Err(Error::NotLocal)
        }
    }

    pub fn is_field(&self) -> bool {
        self.is_local() && self.locality().maximal_ideal.len() == 1
    }

    #[inline]
    pub fn in_maximal_ideal(&self, x: Elem) -> bool {
        !self.is_unit(x)
    }

    /// Additive coordinates, available when the ring has prime-power order.
    pub fn frame(&self) -> Option<&AdditiveFrame> {
        self.0.frame.get().and_then(|f| f.as_ref())
    }

    /// Base ring and module when this is a trivial extension.
    pub fn trivial_parts(&self) -> Option<(&Ring, &TableModule)> {
        match &self.0.parts {
            Parts::Trivial { base, module } => Some((base, module)),
            _ => None,
        }
    }

    pub fn product_factors(&self) -> Option<&[Ring]> {
        match &self.0.parts {
            Parts::Product(f) => Some(f),
            _ => None,
        }
    }

    /// `(a, e)` in a trivial extension, with `e` a module class index.
    pub fn pair(&self, a: Elem, e: u32) -> Elem {
        let (_, m) = self.trivial_parts().expect("pair() needs a trivial extension");
        Elem(a.0 * m.card() as u32 + e)
    }

    /// Split an element of a trivial extension into `(a, e)`.
    pub fn unpair(&self, x: Elem) -> (Elem, u32) {
        let (_, m) = self.trivial_parts().expect("unpair() needs a trivial extension");
        let n = m.card() as u32;
        (Elem(x.0 / n), x.0 % n)
    }

    pub fn product_components(&self, x: Elem) -> Vec<Elem> {
        build::product_components(self, x)
    }

    pub fn product_element(&self, comps: &[Elem]) -> Elem {
        build::product_element(self, comps)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.card();
        let fail = |what: &str, a: usize, b: usize, c: usize| {
            Err(Error::AxiomViolation(format!("{what} fails at indices ({a}, {b}, {c}) in {}", self)))
        };
        let el = |i: usize| Elem(i as u32);
        for a in 0..n {
            if self.add(el(a), self.zero()) != el(a) {
                return fail("additive identity", a, 0, 0);
            }
            if self.mul(el(a), self.one()) != el(a) {
                return fail("multiplicative identity", a, 0, 0);
            }
            for b in 0..n {
                if self.add(el(a), el(b)) != self.add(el(b), el(a)) {
                    return fail("additive commutativity", a, b, 0);
                }
                if self.mul(el(a), el(b)) != self.mul(el(b), el(a)) {
                    return fail("multiplicative commutativity", a, b, 0);
                }
                let ab = self.add(el(a), el(b));
                let mab = self.mul(el(a), el(b));
                for c in 0..n {
                    if self.add(ab, el(c)) != self.add(el(a), self.add(el(b), el(c))) {
                        return fail("additive associativity", a, b, c);
                    }
                    if self.mul(mab, el(c)) != self.mul(el(a), self.mul(el(b), el(c))) {
                        return fail("multiplicative associativity", a, b, c);
                    }
                    if self.mul(el(a), self.add(el(b), el(c)))
                        != self.add(mab, self.mul(el(a), el(c)))
                    {
                        return fail("distributivity", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements in deterministic index order; errors for series models.
    pub fn enumerate_elements(&self) -> Result<impl Iterator<Item = Elem> + '_> {
        self.require_finite()?;
        Ok(self.all_elements())
    }

    /// Every `e` with `e² = e`.
    pub fn idempotents(&self) -> Result<Vec<Elem>> {
        self.require_finite()?;
        Ok(self.all_elements().filter(|&e| self.mul(e, e) == e).collect())
    }
}

/// An element tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RingElement {
    pub fn new(ring: &Ring, elem: Elem) -> Self {
        RingElement { ring: ring.clone(), elem }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let expr = ElemExpr::parse(text).map_err(Error::InvalidElement)?;
        Ok(RingElement::new(ring, ring.element(&expr)?))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn encoding(&self) -> &Encoding {
        self.ring.encode(self.elem)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.elem)
    }

    pub fn inverse(&self) -> Result<RingElement> {
        Ok(RingElement::new(&self.ring, self.ring.inverse(self.elem)?))
    }

    pub fn is_regular(&self) -> bool {
        self.ring.is_regular(self.elem)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encoding())
    }
}

/// Exact ring arithmetic on tagged elements. `Neg` ignores `y` beyond the
/// ring check.
pub fn arith(op: ArithOp, x: &RingElement, y: &RingElement) -> Result<RingElement> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch);
    }
    let r = &x.ring;
    let z = match op {
        ArithOp::Add => r.add(x.elem, y.elem),
        ArithOp::Sub => r.sub(x.elem, y.elem),
        ArithOp::Mul => r.mul(x.elem, y.elem),
        ArithOp::Neg => r.neg(x.elem),
    };
    Ok(RingElement::new(r, z))
}

#[cfg(test)]
mod tests;
