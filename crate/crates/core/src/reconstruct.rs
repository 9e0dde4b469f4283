//! Candidate cohomology rings for the orbit space and matching against a
//! stable page.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ring::{
    compute_basis, nilpotency_order, poincare, trim_dims, Generator, Nilpotency, Presentation,
    RingError,
};
use crate::spectral::Page;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{0}")]
    NoMatch(NoMatch),
}

/// Diagnostic for a surviving scenario that fits no candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoMatch {
    pub totals: Vec<usize>,
    pub nilpotency: usize,
    pub tried: Vec<String>,
}

impl fmt::Display for NoMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no candidate has dimensions {:?} with x of nilpotency {}; tried {}",
            self.totals,
            self.nilpotency,
            self.tried.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePresentation {
    pub family: u8,
    /// height for family 1, `m` otherwise
    pub param: usize,
    pub lambda: Option<u8>,
    pub presentation: Presentation,
}

impl CandidatePresentation {
    pub fn name(&self) -> String {
        match (self.family, self.lambda) {
            (1, _) => format!("family 1 (h={})", self.param),
            (f, None) => format!("family {f} (m={})", self.param),
            (f, Some(l)) => format!("family {f} (m={}, λ={l})", self.param),
        }
    }
}

fn gen(name: &str, degree: usize) -> Generator {
    Generator {
        name: name.into(),
        degree,
    }
}

fn candidate_cap(top: usize) -> usize {
    2 * (top + 1) + 2
}

/// `F₂[x]/(x^h)`, `|x| = 1`.
pub fn family_one(height: usize) -> Result<CandidatePresentation, ReconstructError> {
    if height < 2 {
        return Err(ReconstructError::InvalidParam(
            "height must be at least 2".into(),
        ));
    }
    let presentation = Presentation::new(
        vec![gen("x", 1)],
        vec![vec![vec![height as u32]]],
        candidate_cap(height - 1),
    )?;
    Ok(CandidatePresentation {
        family: 1,
        param: height,
        lambda: None,
        presentation,
    })
}

/// `F₂[x,y]/(x², y^m)`, `|x| = 1`, `|y| = 2`.
pub fn family_two(m: usize) -> Result<CandidatePresentation, ReconstructError> {
    if m == 0 {
        return Err(ReconstructError::InvalidParam("m must be positive".into()));
    }
    let presentation = Presentation::new(
        vec![gen("x", 1), gen("y", 2)],
        vec![vec![vec![2, 0]], vec![vec![0, m as u32]]],
        candidate_cap(2 * m - 1),
    )?;
    Ok(CandidatePresentation {
        family: 2,
        param: m,
        lambda: None,
        presentation,
    })
}

/// `F₂[x,y,z]/(x⁴, y², z^{m/2}, x²y + λx³)`, `|x| = |y| = 1`, `|z| = 4`.
pub fn family_three(m: usize, lambda: u8) -> Result<CandidatePresentation, ReconstructError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(ReconstructError::InvalidParam(
            "family 3 needs m even and greater than 2".into(),
        ));
    }
    if lambda > 1 {
        return Err(ReconstructError::InvalidParam("λ is 0 or 1".into()));
    }
    let mut mixed = vec![vec![2, 1, 0]];
    if lambda == 1 {
        mixed.push(vec![3, 0, 0]);
    }
    let presentation = Presentation::new(
        vec![gen("x", 1), gen("y", 1), gen("z", 4)],
        vec![
            vec![vec![4, 0, 0]],
            vec![vec![0, 2, 0]],
            vec![vec![0, 0, (m / 2) as u32]],
            mixed,
        ],
        candidate_cap(2 * m - 1),
    )?;
    Ok(CandidatePresentation {
        family: 3,
        param: m,
        lambda: Some(lambda),
        presentation,
    })
}

/// Candidates for an orbit space of cohomological dimension `2m-1`.
pub fn candidate_list(m: usize) -> Result<Vec<CandidatePresentation>, ReconstructError> {
    if m == 0 {
        return Err(ReconstructError::InvalidParam("m must be positive".into()));
    }
    let mut out = vec![family_one(2 * m)?, family_two(m)?];
    if m.is_multiple_of(2) && m > 2 {
        out.push(family_three(m, 0)?);
        out.push(family_three(m, 1)?);
    }
    Ok(out)
}

/// Candidates for a fiber whose cohomology stops in degree `top`.
pub fn candidates_for_top(top: usize) -> Result<Vec<CandidatePresentation>, ReconstructError> {
    if top == 0 {
        return Err(ReconstructError::InvalidParam(
            "fiber has no positive-degree cohomology".into(),
        ));
    }
    if top % 2 == 1 {
        candidate_list(top.div_ceil(2))
    } else {
        Ok(vec![family_one(top + 1)?])
    }
}

/// Smallest `s` with `E_∞^{s,0} = 0`: the height of `t` in the orbit space.
pub fn bottom_row_nilpotency(einf: &Page) -> usize {
    (0..=einf.window().kmax)
        .find(|&k| einf.dim(k, 0) == 0)
        .unwrap_or(einf.window().kmax + 1)
}

/// Nilpotency of `x` minus one: no equivariant map to a sphere of higher
/// dimension with the antipodal action.
pub fn coindex(c: &CandidatePresentation) -> Result<usize, ReconstructError> {
    coindex_of(&c.presentation, "x")
}

pub fn coindex_of(p: &Presentation, class: &str) -> Result<usize, ReconstructError> {
    let basis = compute_basis(p);
    let x = basis.generator(class)?;
    match nilpotency_order(&x)? {
        Nilpotency::Order(k) => Ok(k - 1),
        Nilpotency::Unbounded => Err(ReconstructError::InvalidParam(format!(
            "{class} is not nilpotent within the cap {}",
            p.cap()
        ))),
    }
}

/// No equivariant map `S^N → S^k` for `k ≤ coindex` when `N > coindex`.
pub fn borsuk_bound(coindex: usize) -> usize {
    coindex + 1
}

/// Candidates matching a surviving scenario, with family 3 collapsed over λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateMatch {
    pub family: u8,
    pub param: usize,
    /// both λ values when the invariants cannot tell them apart
    pub lambdas: Vec<u8>,
    pub coindex: usize,
    pub borsuk_bound: usize,
}

impl CandidateMatch {
    pub fn describe(&self) -> String {
        match self.family {
            1 => format!("family 1 F2[x]/(x^{})", self.param),
            2 => format!("family 2 F2[x,y]/(x^2, y^{}) |y|=2", self.param),
            _ => format!(
                "family 3 F2[x,y,z]/(x^4, y^2, z^{}, x^2y + λx^3) |z|=4, λ ∈ {:?} unresolved",
                self.param / 2,
                self.lambdas
            ),
        }
    }
}

/// Candidates with the given total dimensions and `x` of the given
/// nilpotency.
pub fn match_invariants(
    totals: &[usize],
    nilpotency: usize,
    candidates: &[CandidatePresentation],
) -> Result<Vec<CandidateMatch>, ReconstructError> {
    let want = trim_dims(totals);
    let mut out: Vec<CandidateMatch> = Vec::new();
    for c in candidates {
        if trim_dims(&poincare(&c.presentation)) != want {
            continue;
        }
        let ci = coindex(c)?;
        if ci + 1 != nilpotency {
            continue;
        }
        if let Some(prev) = out
            .iter_mut()
            .find(|m| m.family == c.family && m.param == c.param)
        {
            prev.lambdas.extend(c.lambda);
            continue;
        }
        out.push(CandidateMatch {
            family: c.family,
            param: c.param,
            lambdas: c.lambda.into_iter().collect(),
            coindex: ci,
            borsuk_bound: borsuk_bound(ci),
        });
    }
    if out.is_empty() {
        return Err(ReconstructError::NoMatch(NoMatch {
            totals: want,
            nilpotency,
            tried: candidates.iter().map(CandidatePresentation::name).collect(),
        }));
    }
    Ok(out)
}

/// Matches a stable page whose fiber stops in degree `2m-1`.
pub fn match_page(einf: &Page, m: usize) -> Result<Vec<CandidateMatch>, ReconstructError> {
    let top = einf.window().lmax;
    let totals = crate::spectral::total_dims(einf, top)
        .map_err(|e| ReconstructError::InvalidParam(e.to_string()))?;
    match_invariants(&totals, bottom_row_nilpotency(einf), &candidate_list(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_have_expected_dims() {
        assert_eq!(
            trim_dims(&poincare(&family_one(4).unwrap().presentation)),
            vec![1; 4]
        );
        assert_eq!(
            trim_dims(&poincare(&family_two(3).unwrap().presentation)),
            vec![1; 6]
        );
        for lambda in [0, 1] {
            let c = family_three(6, lambda).unwrap();
            assert_eq!(
                trim_dims(&poincare(&c.presentation)),
                vec![1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2, 1]
            );
            assert_eq!(coindex(&c).unwrap(), 3);
        }
        assert!(family_three(2, 0).is_err());
        assert!(family_three(5, 0).is_err());
    }

    #[test]
    fn candidate_lists() {
        assert_eq!(candidate_list(3).unwrap().len(), 2);
        assert_eq!(candidate_list(2).unwrap().len(), 2);
        assert_eq!(candidate_list(4).unwrap().len(), 4);
        assert!(candidate_list(0).is_err());
    }

    #[test]
    fn coindices() {
        assert_eq!(coindex(&family_one(4).unwrap()).unwrap(), 3);
        assert_eq!(coindex(&family_two(4).unwrap()).unwrap(), 1);
        assert_eq!(borsuk_bound(3), 4);
        let bz: Presentation = "ring F2[t:1] cap 6".parse().unwrap();
        assert!(coindex_of(&bz, "t").is_err());
    }

    #[test]
    fn matching() {
        let c = candidate_list(4).unwrap();
        let m = match_invariants(&[1, 1, 1, 1, 1, 1, 1, 1], 2, &c).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].family, 2);
        let m = match_invariants(&[1, 2, 2, 1, 1, 2, 2, 1], 4, &c).unwrap();
        assert_eq!(m[0].lambdas, vec![0, 1]);
        assert!(matches!(
            match_invariants(&[1, 1, 1, 1, 1, 1, 1, 1], 3, &c),
            Err(ReconstructError::NoMatch(_))
        ));
    }
}
