//! Minimal free resolutions and projective-dimension verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{
    combine, minimal_generators, syzygies_structured, ModuleKind, ModuleSpec, PresentationMatrix, Vector,
};
use crate::ring::{decompose_into_local_factors, LocalFactor, Ring, RingDescriptor};

/// `… → R^{b_2} --d_2--> R^{b_1} --d_1--> R^{b_0} → M → 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: ModuleSpec,
    /// Images of the basis of `R^{b_0}` in `M`.
    pub generators: Vec<Vector>,
    /// `steps[i]` is `d_{i+1}`.
    pub steps: Vec<PresentationMatrix>,
    pub betti: Vec<usize>,
    pub minimal: bool,
    /// Index of the last Betti number computed.
    pub depth_reached: usize,
    /// The last syzygy computed was zero.
    pub terminated: bool,
}

impl Resolution {
    /// Length of the resolution when it terminated.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.terminated.then(|| self.betti.len() - 1)
    }

    /// `d_i ∘ d_{i+1} = 0` for every step, and `d_1` maps into the relations of `M`.
    pub fn is_complex(&self) -> Result<bool> {
        let m = &self.module;
        if let Some(d1) = self.steps.first() {
            for col in d1.columns() {
                let image = combine(m.ring(), &self.generators, &col, m.ambient_rank());
                if !m.is_zero_element(&image)? {
                    return Ok(false);
                }
            }
        }
        for pair in self.steps.windows(2) {
            if !pair[0].compose(&pair[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every differential has entries in the maximal ideal.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.steps.iter().all(PresentationMatrix::entries_in_maximal_ideal)
    }

    /// Smallest `(offset, period)` with `d_offset` and `d_{offset+period}`
    /// equal after canonical sorting.
    pub fn periodicity(&self) -> Option<(usize, usize)> {
        let forms: Vec<_> = self.steps.iter().map(PresentationMatrix::canonical_form).collect();
        for offset in 1..=forms.len() {
            for period in 1..=forms.len() - offset {
                if forms[offset - 1] == forms[offset - 1 + period] && !self.steps[offset - 1].is_zero() {
                    return Some((offset, period));
                }
            }
        }
        None
    }
}

/// Minimal free resolution up to `R^{b_depth}`; stops early when a syzygy vanishes.
pub fn minimal_resolution(m: &ModuleSpec, depth: usize) -> Result<Resolution> {
    let ring = m.ring();
    ring.require_finite()?;
    if !ring.is_local() {
        return Err(Error::NotLocal);
    }
    let generators = minimal_generators(m)?;
    let mut betti = vec![generators.len()];
    let mut steps = Vec::new();
    let first = crate::module::kernel_of_map(&crate::module::ModuleMap::from_free(m.clone(), generators.clone())?)?;
    let mut kernel: Vec<Vector> = first.generators();
    let mut terminated = kernel.is_empty();
    for _ in 0..depth {
        if terminated {
            break;
        }
        let d = PresentationMatrix::from_columns(ring, *betti.last().unwrap(), &kernel)?;
        betti.push(kernel.len());
        kernel = syzygies_structured(&d)?.gens;
        steps.push(d);
        terminated = kernel.is_empty();
    }
    let depth_reached = betti.len() - 1;
    let res = Resolution { module: m.clone(), generators, steps, betti, minimal: true, depth_reached, terminated };
    debug_assert!(res.entries_in_maximal_ideal());
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Over an Artinian local ring finite projective dimension forces
    /// freeness, and the module is not free.
    NonFreeOverArtinianLocal,
    PeriodicSyzygy { offset: usize, period: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PdVerdict {
    Finite { pd: usize },
    CertifiedInfinite { certificates: Vec<Certificate> },
    Unknown { lower_bound: usize },
}

impl PdVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, PdVerdict::CertifiedInfinite { .. })
    }

    /// `Finite`, `CertifiedInfinite` or `Unknown`, ignoring the payload's certificates.
    pub fn class(&self) -> PdVerdict {
        match self {
            PdVerdict::CertifiedInfinite { .. } => PdVerdict::CertifiedInfinite { certificates: Vec::new() },
            other => other.clone(),
        }
    }

    /// Supremum of two verdicts.
    pub fn max(self, other: PdVerdict) -> PdVerdict {
        use PdVerdict::*;
        match (self, other) {
            (CertifiedInfinite { certificates: mut a }, CertifiedInfinite { certificates: b }) => {
                for c in b {
                    if !a.contains(&c) {
                        a.push(c);
                    }
                }
                CertifiedInfinite { certificates: a }
            }
            (c @ CertifiedInfinite { .. }, _) | (_, c @ CertifiedInfinite { .. }) => c,
            (Unknown { lower_bound: a }, Unknown { lower_bound: b }) => Unknown { lower_bound: a.max(b) },
            (Unknown { lower_bound: a }, Finite { pd }) | (Finite { pd }, Unknown { lower_bound: a }) => {
                Unknown { lower_bound: a.max(pd) }
            }
            (Finite { pd: a }, Finite { pd: b }) => Finite { pd: a.max(b) },
        }
    }
}

impl std::fmt::Display for PdVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdVerdict::Finite { pd } => write!(f, "Finite({pd})"),
            PdVerdict::CertifiedInfinite { certificates } => {
                let cs: Vec<String> = certificates
                    .iter()
                    .map(|c| match c {
                        Certificate::NonFreeOverArtinianLocal => "NonFreeOverArtinianLocal".to_string(),
                        Certificate::PeriodicSyzygy { offset, period } => format!("PeriodicSyzygy({offset}, {period})"),
                    })
                    .collect();
                write!(f, "CertifiedInfinite[{}]", cs.join(", "))
            }
            PdVerdict::Unknown { lower_bound } => write!(f, "Unknown(>= {lower_bound})"),
        }
    }
}

/// Verdict from a resolution of the given depth. Power-series models get
/// `Unknown`: their stored truncation is Artinian while the modelled ring
/// is not, so no finite computation here decides the question.
pub fn pd_verdict(m: &ModuleSpec, depth: usize) -> Result<PdVerdict> {
    if m.ring().descriptor().involves_series() {
        m.ring().require_local()?;
        return Ok(PdVerdict::Unknown { lower_bound: 0 });
    }
    verdict_of(&minimal_resolution(m, depth)?)
}

/// Verdict for an already computed resolution.
pub fn verdict_of(res: &Resolution) -> Result<PdVerdict> {
    if let Some(k) = res.projective_dimension() {
        if k > 0 {
            return Err(Error::Inconsistent(format!(
                "resolution of a non-free module over a finite local ring terminated at {k}"
            )));
        }
        return Ok(PdVerdict::Finite { pd: k });
    }
    let mut certificates = vec![Certificate::NonFreeOverArtinianLocal];
    if let Some((offset, period)) = res.periodicity() {
        certificates.push(Certificate::PeriodicSyzygy { offset, period });
    }
    Ok(PdVerdict::CertifiedInfinite { certificates })
}

/// The module `e·M` viewed over the local factor `f`.
pub fn project_module(m: &ModuleSpec, f: &LocalFactor) -> Result<ModuleSpec> {
    let proj = |v: &Vector| -> Vector { v.iter().map(|&x| f.project(x)).collect() };
    Ok(match m.kind() {
        ModuleKind::Free(n) => ModuleSpec::free(&f.ring, *n),
        ModuleKind::Presented(p) => {
            let cols: Vec<Vector> = p.columns().iter().map(proj).collect();
            ModuleSpec::quotient_of_free(&f.ring, p.rows(), &cols)?
        }
        ModuleKind::Submodule { rank, gens } => ModuleSpec::submodule(&f.ring, *rank, gens.iter().map(proj).collect())?,
    })
}

/// Verdict of each local factor of `M`.
pub fn factor_verdicts(m: &ModuleSpec, depth: usize) -> Result<Vec<(LocalFactor, PdVerdict)>> {
    let factors = decompose_into_local_factors(m.ring())?;
    factors
        .into_par_iter()
        .map(|f| {
            let v = pd_verdict(&project_module(m, &f)?, depth)?;
            Ok((f, v))
        })
        .collect()
}

/// Projective dimension over a finite ring via its local factors.
pub fn pd_over_product(m: &ModuleSpec, depth: usize) -> Result<PdVerdict> {
    Ok(factor_verdicts(m, depth)?.into_iter().fold(PdVerdict::Finite { pd: 0 }, |acc, (_, v)| acc.max(v)))
}

#[derive(Clone, Debug)]
pub struct FactorProbe {
    pub factor: RingDescriptor,
    pub is_field: bool,
    pub residue_verdict: PdVerdict,
}

/// Projective dimension of the residue field of each local factor.
pub fn global_dim_factors(r: &Ring, depth: usize) -> Result<Vec<FactorProbe>> {
    let factors = decompose_into_local_factors(r)?;
    factors
        .into_par_iter()
        .map(|f| {
            let is_field = f.ring.is_field();
            let residue_verdict = if is_field {
                PdVerdict::Finite { pd: 0 }
            } else {
                pd_verdict(&ModuleSpec::residue_field(&f.ring)?, depth)?
            };
            Ok(FactorProbe { factor: f.ring.descriptor().clone(), is_field, residue_verdict })
        })
        .collect()
}

/// The worst residue-field verdict over the local factors of `r`.
pub fn global_dim_probe(r: &Ring, depth: usize) -> Result<PdVerdict> {
    Ok(global_dim_factors(r, depth)?.into_iter().fold(PdVerdict::Finite { pd: 0 }, |acc, p| acc.max(p.residue_verdict)))
}
