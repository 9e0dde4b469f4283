//! Rank bookkeeping for the Gysin sequence of a double cover `X → X/G`:
//!
//! ```text
//! … → H^{i-1}(X/G) --∪v--> H^i(X/G) --η--> H^i(X) --τ--> H^i(X/G) --∪v--> H^{i+1}(X/G) → …
//! ```
//!
//! With `a_i = dim H^i(X/G)`, `b_i = dim H^i(X)` and ranks `e_i` of `η`,
//! `t_i` of `τ`, `v_i` of `∪v`, exactness pins every rank down from the
//! previous ones, so there is at most one consistent profile.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GysinError {
    #[error("orbit and space dimension vectors differ in length ({orbit} vs {space})")]
    LengthMismatch { orbit: usize, space: usize },
    #[error("empty dimension vectors")]
    Empty,
    #[error("degree {degree} is outside the profile (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
}

/// Dimension vectors of `H^*(X/G)` and `H^*(X)` in degrees `0..=J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinInstance {
    orbit: Vec<usize>,
    space: Vec<usize>,
}

impl GysinInstance {
    pub fn new(orbit: Vec<usize>, space: Vec<usize>) -> Result<Self, GysinError> {
        if orbit.len() != space.len() {
            return Err(GysinError::LengthMismatch {
                orbit: orbit.len(),
                space: space.len(),
            });
        }
        if orbit.is_empty() {
            return Err(GysinError::Empty);
        }
        Ok(GysinInstance { orbit, space })
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn space(&self) -> &[usize] {
        &self.space
    }

    pub fn top(&self) -> usize {
        self.orbit.len() - 1
    }
}

/// Ranks of `η`, `τ` and `∪v` in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub eta: Vec<usize>,
    pub transfer: Vec<usize>,
    pub cup_v: Vec<usize>,
}

/// Where the recurrence first breaks down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Infeasible {
    pub degree: usize,
}

fn solve(inst: &GysinInstance) -> Result<RankProfile, Infeasible> {
    let a = &inst.orbit;
    let b = &inst.space;
    let top = inst.top();
    let mut p = RankProfile {
        eta: Vec::with_capacity(top + 1),
        transfer: Vec::with_capacity(top + 1),
        cup_v: Vec::with_capacity(top + 1),
    };
    // ker η_0 = im(∪v from degree -1) = 0
    let mut e = a[0];
    for i in 0..=top {
        let fail = Err(Infeasible { degree: i });
        if e > a[i] || e > b[i] {
            return fail;
        }
        let Some(t) = b[i].checked_sub(e) else {
            return fail;
        };
        if t > a[i] {
            return fail;
        }
        let v = a[i] - t;
        p.eta.push(e);
        p.transfer.push(t);
        p.cup_v.push(v);
        if i == top {
            // H^{top+1}(X/G) = 0
            if v != 0 {
                return fail;
            }
        } else {
            if v > a[i + 1] {
                return fail;
            }
            e = a[i + 1] - v;
        }
    }
    Ok(p)
}

/// All rank profiles making the sequence exact; empty or a single profile.
pub fn enumerate_exact_profiles(inst: &GysinInstance) -> Vec<RankProfile> {
    solve(inst).into_iter().collect()
}

/// First degree where no exact profile can exist.
pub fn first_infeasible_degree(inst: &GysinInstance) -> Option<usize> {
    solve(inst).err().map(|e| e.degree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GysinGate {
    Pass(RankProfile),
    Fail { degree: usize },
}

impl GysinGate {
    pub fn passes(&self) -> bool {
        matches!(self, GysinGate::Pass(_))
    }
}

/// Whether a candidate `H^*(X/G)` is compatible with `H^*(X)` through the
/// Gysin sequence, in degrees `0..=J`.
pub fn gysin_gate(orbit: &[usize], space: &[usize]) -> Result<GysinGate, GysinError> {
    let inst = GysinInstance::new(orbit.to_vec(), space.to_vec())?;
    Ok(match solve(&inst) {
        Ok(p) => GysinGate::Pass(p),
        Err(e) => GysinGate::Fail { degree: e.degree },
    })
}

/// Independent exactness check of a given profile.
pub fn verify_profile(inst: &GysinInstance, p: &RankProfile) -> bool {
    let a = &inst.orbit;
    let b = &inst.space;
    let top = inst.top();
    if [p.eta.len(), p.transfer.len(), p.cup_v.len()] != [top + 1; 3] {
        return false;
    }
    for i in 0..=top {
        let (e, t, v) = (p.eta[i], p.transfer[i], p.cup_v[i]);
        let next = if i < top { a[i + 1] } else { 0 };
        if e > a[i].min(b[i]) || t > a[i].min(b[i]) || v > a[i].min(next) {
            return false;
        }
        let incoming_v = if i == 0 { 0 } else { p.cup_v[i - 1] };
        // exact at H^i(X/G) between ∪v and η
        if a[i] - e != incoming_v {
            return false;
        }
        // exact at H^i(X) between η and τ
        if b[i] - t != e {
            return false;
        }
        // exact at H^i(X/G) between τ and ∪v
        if a[i] - v != t {
            return false;
        }
    }
    p.cup_v[top] == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharClass {
    /// `∪v: H^i → H^{i+1}` has rank zero, so `v · H^i(X/G) = 0`.
    ForcedZero,
    Unknown,
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharClass::ForcedZero => "forced zero",
            CharClass::Unknown => "unknown",
        })
    }
}

/// Whether the profile forces multiplication by the characteristic class to
/// vanish on degree `i`. For a one-dimensional `H^i(X/G)` spanned by a power
/// `x^i`, this says `x^{i+1} = 0`.
pub fn char_class_zero_composite(p: &RankProfile, i: usize) -> Result<CharClass, GysinError> {
    let top = p.cup_v.len().saturating_sub(1);
    match p.cup_v.get(i) {
        None => Err(GysinError::DegreeOutOfRange { degree: i, top }),
        Some(0) => Ok(CharClass::ForcedZero),
        Some(_) => Ok(CharClass::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: &[usize], b: &[usize]) -> GysinInstance {
        GysinInstance::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn projective_space_over_sphere() {
        let i = inst(&[1, 1, 1, 1], &[1, 0, 0, 1]);
        let ps = enumerate_exact_profiles(&i);
        assert_eq!(
            ps,
            vec![RankProfile {
                eta: vec![1, 0, 0, 0],
                transfer: vec![0, 0, 0, 1],
                cup_v: vec![1, 1, 1, 0],
            }]
        );
        assert!(verify_profile(&i, &ps[0]));
        assert_eq!(
            char_class_zero_composite(&ps[0], 3),
            Ok(CharClass::ForcedZero)
        );
        assert_eq!(char_class_zero_composite(&ps[0], 1), Ok(CharClass::Unknown));
        assert!(char_class_zero_composite(&ps[0], 4).is_err());
    }

    #[test]
    fn infeasible_and_mismatch() {
        assert!(enumerate_exact_profiles(&inst(&[1, 0, 0, 0], &[1, 0, 0, 1])).is_empty());
        assert_eq!(
            first_infeasible_degree(&inst(&[1, 0, 0, 0], &[1, 0, 0, 1])),
            Some(0)
        );
        assert!(GysinInstance::new(vec![1, 1], vec![1]).is_err());
        assert!(GysinInstance::new(vec![], vec![]).is_err());
        assert!(gysin_gate(&[1, 1, 1, 1], &[1, 0, 0, 1]).unwrap().passes());
    }

    #[test]
    fn lens_orbit_profiles() {
        // orbit dims of F2[x,y]/(x^2,y^3) over a mod-2 lens cohomology
        let i = inst(&[1, 1, 1, 1, 1, 1], &[1; 6]);
        let p = enumerate_exact_profiles(&i);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].cup_v, vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(
            char_class_zero_composite(&p[0], 1),
            Ok(CharClass::ForcedZero)
        );
    }
}
