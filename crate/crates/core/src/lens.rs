//! Exact model of the cyclic action on `S^{2m-1} ⊂ Cᵐ` that defines a lens
//! space, and of the involution induced by rotating through half a step.
//!
//! Every action in play multiplies coordinates by roots of unity, so moduli
//! never change and a point is determined (for our purposes) by which
//! coordinates vanish together with the arguments of the rest. Arguments are
//! kept as exact fractions of a full turn in `[0, 1)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("invalid action parameters: {0}")]
    InvalidParams(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}

/// One coordinate: either zero or a unit complex number `e^{2πiθ}` (scaled).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    Zero,
    Phase(Rational64),
}

const ZERO: i64 = -1;

/// `x mod d`, cheap when `x` is already within one period.
fn wrap(x: i64, d: i64) -> i64 {
    if (0..d).contains(&x) {
        x
    } else if (d..2 * d).contains(&x) {
        x - d
    } else {
        x.rem_euclid(d)
    }
}

/// Phases are stored as numerators over one common denominator. A zero
/// coordinate has numerator `-1`.
#[derive(Clone, Debug)]
pub struct PhasePoint {
    den: i64,
    nums: Vec<i64>,
}

impl PhasePoint {
    pub fn new(coords: Vec<Coord>) -> Result<Self, LensError> {
        if coords.iter().all(|c| *c == Coord::Zero) {
            return Err(LensError::InvalidPoint(
                "at least one coordinate must be nonzero".into(),
            ));
        }
        let den = coords.iter().fold(1i64, |acc, c| match c {
            Coord::Zero => acc,
            Coord::Phase(t) => acc.lcm(t.denom()),
        });
        let nums = coords
            .iter()
            .map(|c| match c {
                Coord::Zero => ZERO,
                Coord::Phase(t) => (t.numer() * (den / t.denom())).rem_euclid(den),
            })
            .collect();
        Ok(PhasePoint { den, nums }.canonical())
    }

    /// Point with every coordinate nonzero, given phases as `(num, den)`.
    pub fn from_phases(phases: &[(i64, i64)]) -> Result<Self, LensError> {
        if phases.iter().any(|&(_, d)| d == 0) {
            return Err(LensError::InvalidPoint("zero denominator".into()));
        }
        Self::new(
            phases
                .iter()
                .map(|&(n, d)| Coord::Phase(Rational64::new(n, d)))
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.nums.len()
    }

    /// Phases in `[0, 1)`.
    pub fn coords(&self) -> Vec<Coord> {
        self.nums
            .iter()
            .map(|&n| {
                if n == ZERO {
                    Coord::Zero
                } else {
                    Coord::Phase(Rational64::new(n, self.den))
                }
            })
            .collect()
    }

    /// Same point over the smallest common denominator.
    fn canonical(mut self) -> Self {
        let g = self
            .nums
            .iter()
            .filter(|&&n| n != ZERO)
            .fold(self.den, |g, &n| g.gcd(&n));
        if g > 1 {
            self.den /= g;
            for n in self.nums.iter_mut().filter(|n| **n != ZERO) {
                *n /= g;
            }
        }
        self
    }

    fn shift_assign(&mut self, nums: impl Iterator<Item = i64>, den: i64) {
        if self.den % den != 0 {
            *self = self.shifted(std::iter::repeat(0), den);
        }
        let b = self.den / den;
        for (x, n) in self.nums.iter_mut().zip(nums) {
            if *x != ZERO {
                *x = wrap(*x + n * b, self.den);
            }
        }
    }

    /// Shifts every nonzero coordinate's phase by `num_j / den`.
    fn shifted(&self, nums: impl Iterator<Item = i64>, den: i64) -> PhasePoint {
        let d = if self.den % den == 0 {
            self.den
        } else {
            self.den.lcm(&den)
        };
        let (a, b) = (d / self.den, d / den);
        let nums = self
            .nums
            .iter()
            .zip(nums)
            .map(|(&x, n)| {
                if x == ZERO {
                    ZERO
                } else {
                    (x * a + n * b).rem_euclid(d)
                }
            })
            .collect();
        PhasePoint { den: d, nums }
    }
}

impl PartialEq for PhasePoint {
    fn eq(&self, other: &Self) -> bool {
        self.nums.len() == other.nums.len()
            && self.nums.iter().zip(&other.nums).all(|(&x, &y)| {
                if x == ZERO || y == ZERO {
                    x == y
                } else {
                    x * other.den == y * self.den
                }
            })
    }
}

impl Eq for PhasePoint {}

impl std::hash::Hash for PhasePoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let c = self.clone().canonical();
        c.den.hash(state);
        c.nums.hash(state);
    }
}

/// Comma-separated coordinates, each `zero` or a fraction `a/b`.
impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::Zero => write!(f, "zero")?,
                Coord::Phase(t) if t.is_integer() => write!(f, "{}", t.numer())?,
                Coord::Phase(t) => write!(f, "{}/{}", t.numer(), t.denom())?,
            }
        }
        Ok(())
    }
}

impl FromStr for PhasePoint {
    type Err = LensError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |t: &str| LensError::InvalidPoint(format!("cannot read coordinate {t:?}"));
        let coords = s
            .split(',')
            .map(str::trim)
            .map(|t| {
                if t.eq_ignore_ascii_case("zero") {
                    return Ok(Coord::Zero);
                }
                let (n, d) = t.split_once('/').unwrap_or((t, "1"));
                let n: i64 = n.trim().parse().map_err(|_| bad(t))?;
                let d: i64 = d.trim().parse().map_err(|_| bad(t))?;
                if d <= 0 {
                    return Err(bad(t));
                }
                Ok(Coord::Phase(Rational64::new(n, d)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PhasePoint::new(coords)
    }
}

/// Order `p` of the cyclic group and the rotation weights `q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionParams {
    p: i64,
    q: Vec<i64>,
}

impl ActionParams {
    pub fn new(p: i64, q: Vec<i64>) -> Result<Self, LensError> {
        if p < 2 {
            return Err(LensError::InvalidParams(format!(
                "p = {p} must be at least 2"
            )));
        }
        if q.is_empty() {
            return Err(LensError::InvalidParams(
                "q must have at least one entry".into(),
            ));
        }
        if let Some(&bad) = q.iter().find(|&&qj| qj.gcd(&p) != 1) {
            return Err(LensError::InvalidParams(format!(
                "q entry {bad} is not coprime to p = {p}"
            )));
        }
        Ok(ActionParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> &[i64] {
        &self.q
    }

    pub fn m(&self) -> usize {
        self.q.len()
    }

    fn check_point(&self, pt: &PhasePoint) -> Result<(), LensError> {
        if pt.m() != self.m() {
            return Err(LensError::InvalidParams(format!(
                "point has {} coordinates but q has {}",
                pt.m(),
                self.m()
            )));
        }
        Ok(())
    }

    fn check_alpha(&self) -> Result<(), LensError> {
        if let Some(&even) = self.q.iter().find(|&&qj| qj % 2 == 0) {
            return Err(LensError::InvalidParams(format!(
                "the involution needs odd weights, got {even}"
            )));
        }
        Ok(())
    }
}

/// Action of `k ∈ Z_p`: phase `θ_j` becomes `θ_j + k·q_j/p`.
pub fn zp_act(pt: &PhasePoint, k: i64, a: &ActionParams) -> Result<PhasePoint, LensError> {
    a.check_point(pt)?;
    Ok(pt.shifted(a.q.iter().map(|&qj| k * qj), a.p))
}

/// Lift of the involution: phase `θ_j` becomes `θ_j + q_j/(2p)`.
pub fn alpha(pt: &PhasePoint, a: &ActionParams) -> Result<PhasePoint, LensError> {
    a.check_alpha()?;
    a.check_point(pt)?;
    Ok(pt.shifted(a.q.iter().copied(), 2 * a.p))
}

/// Whether two points lie in the same `Z_p`-orbit.
pub fn orbit_equal(p1: &PhasePoint, p2: &PhasePoint, a: &ActionParams) -> Result<bool, LensError> {
    a.check_point(p1)?;
    a.check_point(p2)?;
    let same_support = p1
        .nums
        .iter()
        .zip(&p2.nums)
        .all(|(&x, &y)| (x == ZERO) == (y == ZERO));
    if !same_support {
        return Ok(false);
    }
    // everything over one denominator d; coordinate j moves by q_j·d/p per step
    let d = p1.den.lcm(&p2.den).lcm(&a.p);
    let (s1, s2, sp) = (d / p1.den, d / p2.den, d / a.p);
    Ok((0..a.p).any(|k| {
        p1.nums
            .iter()
            .zip(&p2.nums)
            .zip(&a.q)
            .all(|((&x, &y), &qj)| x == ZERO || (x * s1 + k * qj * sp - y * s2).rem_euclid(d) == 0)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessCheck {
    Pass,
    Counterexample(PhasePoint),
}

/// Looks for a sample whose class the involution fixes in the lens space.
pub fn alpha_is_free_on(
    samples: &[PhasePoint],
    a: &ActionParams,
) -> Result<FreenessCheck, LensError> {
    a.check_alpha()?;
    for pt in samples {
        if orbit_equal(&alpha(pt, a)?, pt, a)? {
            return Ok(FreenessCheck::Counterexample(pt.clone()));
        }
    }
    Ok(FreenessCheck::Pass)
}

/// Checks `α∘α = zp_act(·, 1)` on every sample.
pub fn alpha_squares_to_generator(
    samples: &[PhasePoint],
    a: &ActionParams,
) -> Result<FreenessCheck, LensError> {
    a.check_alpha()?;
    for pt in samples {
        if alpha(&alpha(pt, a)?, a)? != zp_act(pt, 1, a)? {
            return Ok(FreenessCheck::Counterexample(pt.clone()));
        }
    }
    Ok(FreenessCheck::Pass)
}

/// Checks that the involution's lift is the generator of the free `Z_{2p}`
/// action with the same weights, and that it has order exactly `2p`.
pub fn composite_is_z2p(
    samples: &[PhasePoint],
    a: &ActionParams,
) -> Result<FreenessCheck, LensError> {
    a.check_alpha()?;
    let doubled = ActionParams::new(2 * a.p, a.q.clone())?;
    for pt in samples {
        let lifted = alpha(pt, a)?;
        if lifted != zp_act(pt, 1, &doubled)? {
            return Ok(FreenessCheck::Counterexample(pt.clone()));
        }
        let mut cur = lifted;
        for _ in 1..2 * a.p {
            if cur == *pt {
                return Ok(FreenessCheck::Counterexample(pt.clone()));
            }
            cur.shift_assign(a.q.iter().copied(), 2 * a.p);
        }
        if cur != *pt {
            return Ok(FreenessCheck::Counterexample(pt.clone()));
        }
    }
    Ok(FreenessCheck::Pass)
}

/// The orbit of `pt` under iterates of the involution's lift, in order.
pub fn alpha_orbit(pt: &PhasePoint, a: &ActionParams) -> Result<Vec<PhasePoint>, LensError> {
    let mut orbit = vec![pt.clone()];
    let mut cur = alpha(pt, a)?;
    while cur != *pt {
        orbit.push(cur.clone());
        cur = alpha(&cur, a)?;
    }
    Ok(orbit)
}

/// Every point whose coordinates are `zero` or `j/denominator`, excluding the
/// all-zero point. There are `(denominator + 1)^m - 1` of them.
pub fn sample_grid(m: usize, denominator: i64) -> Result<Vec<PhasePoint>, LensError> {
    if m == 0 || denominator < 1 {
        return Err(LensError::InvalidParams(
            "grid needs m >= 1 and a positive denominator".into(),
        ));
    }
    let choices: Vec<Coord> = std::iter::once(Coord::Zero)
        .chain((0..denominator).map(|j| Coord::Phase(Rational64::new(j, denominator))))
        .collect();
    let n = choices.len();
    let total = n.pow(m as u32);
    let mut out = Vec::with_capacity(total - 1);
    for code in 1..total {
        let mut c = code;
        let coords = (0..m)
            .map(|_| {
                let pick = choices[c % n];
                c /= n;
                pick
            })
            .collect::<Vec<_>>();
        out.push(PhasePoint::new(coords)?);
    }
    Ok(out)
}
