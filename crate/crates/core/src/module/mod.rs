//! Finitely presented modules over finite rings.
//!
//! A module is carried as a subquotient `S / T` of a free module `R^n`:
//! `S` is spanned by generator vectors and `T ⊆ S` by relation vectors.
//! Elements are represented by vectors of `R^n`.

mod closure;
mod iso;
pub(crate) mod lattice;
mod mingens;
mod syzygy;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, Encoding, Ring};

pub use closure::submodule_elements;
pub use iso::{modules_isomorphic, modules_isomorphic_with, IsoWitness};
pub use mingens::{filtration_sizes, is_projective, minimal_generators};
pub use syzygy::{kernel_of_map, presentation, syzygies_oracle, syzygies_structured, SyzygyBasis};

pub type Vector = Vec<Elem>;

/// A `rows × cols` matrix; as a presentation its columns are relations
/// among `rows` generators.
#[derive(Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl PresentationMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::WrongShape(format!("{} entries for a {rows}×{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| e.idx() >= ring.card()) {
            return Err(Error::InvalidElement("matrix entry outside the ring".into()));
        }
        Ok(PresentationMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PresentationMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: &[Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::WrongShape("ragged matrix rows".into()));
        }
        Self::new(ring, rows.len(), cols, rows.concat())
    }

    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::WrongShape(format!("column length differs from {rows}")));
        }
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn from_encodings(ring: &Ring, rows: &[Vec<Encoding>]) -> Result<Self> {
        let decoded = rows.iter().map(|r| r.iter().map(|e| ring.decode(e)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, &decoded)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// `M v` for `v ∈ R^cols`.
    pub fn apply(&self, v: &[Elem]) -> Vector {
        let r = &self.ring;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(r.zero(), |acc, j| r.add(acc, r.mul(self.get(i, j), v[j]))))
            .collect()
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &PresentationMatrix) -> Result<PresentationMatrix> {
        if self.cols != other.rows {
            return Err(Error::WrongShape(format!("{}×{} times {}×{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let cols: Vec<Vector> = other.columns().iter().map(|c| self.apply(c)).collect();
        Self::from_columns(&self.ring, self.rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == self.ring.zero())
    }

    /// No relation column is identically zero.
    pub fn is_zero_column_free(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).any(|i| self.get(i, j) != self.ring.zero()))
    }

    /// Every entry lies in the maximal ideal.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.entries.iter().all(|&x| self.ring.in_maximal_ideal(x))
    }

    pub fn encodings(&self) -> Vec<Vec<Encoding>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| self.ring.encode(x).clone()).collect()).collect()
    }

    /// Rows and columns sorted by their encodings; invariant under
    /// reordering of bases on either side.
    pub fn canonical_form(&self) -> Vec<Vec<String>> {
        let rendered: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|&x| self.ring.render(x)).collect()).collect();
        let mut cols: Vec<Vec<String>> = (0..self.cols).map(|j| rendered.iter().map(|r| r[j].clone()).collect()).collect();
        cols.sort();
        let mut rows: Vec<Vec<String>> = (0..self.rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        rows.sort();
        rows
    }

    /// Block-diagonal sum.
    pub fn block_diagonal(&self, other: &PresentationMatrix) -> Result<PresentationMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut m = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|&x| self.ring.render(x)).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Free(usize),
    /// `coker(R^cols → R^rows)`.
    Presented(PresentationMatrix),
    /// The submodule of `R^rank` generated by `gens`.
    Submodule { rank: usize, gens: Vec<Vector> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    ring: Ring,
    kind: ModuleKind,
}

impl ModuleSpec {
    pub fn free(ring: &Ring, rank: usize) -> Self {
        ModuleSpec { ring: ring.clone(), kind: ModuleKind::Free(rank) }
    }

    pub fn presented(m: PresentationMatrix) -> Self {
        ModuleSpec { ring: m.ring.clone(), kind: ModuleKind::Presented(m) }
    }

    pub fn submodule(ring: &Ring, rank: usize, gens: Vec<Vector>) -> Result<Self> {
        if gens.iter().any(|g| g.len() != rank) {
            return Err(Error::WrongShape(format!("generator outside R^{rank}")));
        }
        Ok(ModuleSpec { ring: ring.clone(), kind: ModuleKind::Submodule { rank, gens } })
    }

    /// `R / (gens)`.
    pub fn cyclic_quotient(ring: &Ring, ideal_gens: &[Elem]) -> Self {
        let m = PresentationMatrix::new(ring, 1, ideal_gens.len(), ideal_gens.to_vec()).expect("1×k shape");
        Self::presented(m)
    }

    /// `R^n / span(rels)`.
    pub fn quotient_of_free(ring: &Ring, n: usize, rels: &[Vector]) -> Result<Self> {
        Ok(Self::presented(PresentationMatrix::from_columns(ring, n, rels)?))
    }

    /// The residue field `R/m` of a local ring.
    pub fn residue_field(ring: &Ring) -> Result<Self> {
        if !ring.is_local() {
            return Err(Error::NotLocal);
        }
        Ok(Self::cyclic_quotient(ring, &ring.locality().maximal_ideal_gens))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    /// `n` such that elements are vectors of `R^n`.
    pub fn ambient_rank(&self) -> usize {
        match &self.kind {
            ModuleKind::Free(n) => *n,
            ModuleKind::Presented(m) => m.rows,
            ModuleKind::Submodule { rank, .. } => *rank,
        }
    }

    /// Generators of `S`.
    pub fn generators(&self) -> Vec<Vector> {
        match &self.kind {
            ModuleKind::Free(n) => standard_basis(&self.ring, *n),
            ModuleKind::Presented(m) => standard_basis(&self.ring, m.rows),
            ModuleKind::Submodule { gens, .. } => gens.clone(),
        }
    }

    /// Generators of `T`.
    pub fn relations(&self) -> Vec<Vector> {
        match &self.kind {
            ModuleKind::Presented(m) => m.columns(),
            _ => Vec::new(),
        }
    }

    pub fn is_literally_free(&self) -> bool {
        matches!(self.kind, ModuleKind::Free(_))
    }

    pub fn card(&self) -> Result<u128> {
        lattice::Subquotient::new(self)?.card()
    }

    /// Whether the vector `v ∈ R^n` lies in `S`.
    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        Ok(lattice::Subquotient::new(self)?.in_span(v))
    }

    /// Whether `v ∈ S` represents zero in `S/T`.
    pub fn is_zero_element(&self, v: &[Elem]) -> Result<bool> {
        Ok(lattice::Subquotient::new(self)?.is_zero_class(v))
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModuleKind::Free(n) => write!(f, "free({n})"),
            ModuleKind::Presented(m) => write!(f, "pres({m})"),
            ModuleKind::Submodule { rank, gens } => {
                let gs: Vec<String> = gens.iter().map(|g| render_vector(&self.ring, g)).collect();
                write!(f, "sub(R^{rank}; {})", gs.join(", "))
            }
        }
    }
}

/// A map out of the generators of `source`; `images[i]` is the image of
/// the `i`-th generator, a vector in the target's ambient free module.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub images: Vec<Vector>,
}

impl ModuleMap {
    pub fn new(source: ModuleSpec, target: ModuleSpec, images: Vec<Vector>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if images.len() != source.generators().len() || images.iter().any(|v| v.len() != target.ambient_rank()) {
            return Err(Error::WrongShape("image list does not match the source generators".into()));
        }
        Ok(ModuleMap { source, target, images })
    }

    /// `R^k → target` sending `e_i` to `images[i]`.
    pub fn from_free(target: ModuleSpec, images: Vec<Vector>) -> Result<Self> {
        let source = ModuleSpec::free(&target.ring, images.len());
        Self::new(source, target, images)
    }

    /// Image of a coefficient vector on the source generators.
    pub fn apply(&self, coeffs: &[Elem]) -> Vector {
        combine(&self.source.ring, &self.images, coeffs, self.target.ambient_rank())
    }

    /// Every relation among the source generators maps into the target relations.
    pub fn is_well_defined(&self) -> Result<bool> {
        let src_gens = self.source.generators();
        let n = self.source.ambient_rank();
        let mut cols = src_gens.clone();
        cols.extend(self.source.relations().iter().map(|t| t.iter().map(|&x| self.source.ring.neg(x)).collect()));
        let k = src_gens.len();
        let kernel = syzygy::kernel_additive(&self.source.ring, n, &cols, &[])?;
        let target = lattice::Subquotient::new(&self.target)?;
        Ok(kernel.iter().all(|v| target.is_zero_class(&self.apply(&v[..k]))))
    }
}

pub fn standard_basis(ring: &Ring, n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut v = vec![ring.zero(); n];
            v[i] = ring.one();
            v
        })
        .collect()
}

/// `Σ coeffs[i] · vecs[i]` in `R^n`.
pub fn combine(ring: &Ring, vecs: &[Vector], coeffs: &[Elem], n: usize) -> Vector {
    let mut out = vec![ring.zero(); n];
    for (v, &c) in vecs.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(v) {
            *o = ring.add(*o, ring.mul(c, x));
        }
    }
    out
}

pub fn scale(ring: &Ring, c: Elem, v: &[Elem]) -> Vector {
    v.iter().map(|&x| ring.mul(c, x)).collect()
}

pub fn render_vector(ring: &Ring, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| ring.render(x)).collect();
    format!("[{}]", parts.join(", "))
}

/// `M ⊕ N` as a block-diagonal presentation (free summands stay free).
pub fn direct_sum(m: &ModuleSpec, n: &ModuleSpec) -> Result<ModuleSpec> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch);
    }
    if let (ModuleKind::Free(a), ModuleKind::Free(b)) = (&m.kind, &n.kind) {
        return Ok(ModuleSpec::free(&m.ring, a + b));
    }
    let pm = presentation(m)?;
    let pn = presentation(n)?;
    Ok(ModuleSpec::presented(pm.block_diagonal(&pn)?))
}
