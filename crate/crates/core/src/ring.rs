//! Finitely presented graded-commutative algebras over F₂.
//!
//! The relation ideal is handled one degree at a time: in degree `d` it is the
//! span of all products `relation · monomial` of total degree `d`, and the
//! quotient basis is read off with [`crate::f2::quotient_basis`]. No Gröbner
//! machinery is needed for the small presentations this crate deals with.
//!
//! Characteristic 2 means graded commutativity is plain commutativity, so
//! monomials are exponent vectors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::f2::{quotient_basis, BitVec, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("elements belong to different rings")]
    ForeignElement,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent vector over the generators of a presentation.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Generators with degrees, homogeneous relations, and the top degree tracked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<Generator>,
    relations: Vec<Vec<Monomial>>,
    cap: usize,
}

impl Presentation {
    /// Validates and normalises a presentation. Each relation is a sum of
    /// monomials; repeated monomials cancel in pairs.
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<Vec<Monomial>>,
        cap: usize,
    ) -> Result<Self, RingError> {
        let bad = |s: String| Err(RingError::InvalidPresentation(s));
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return bad(format!("generator {} has degree 0", g.name));
            }
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return bad(format!("bad generator name {:?}", g.name));
            }
            if g.name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return bad(format!("generator name {:?} starts with a digit", g.name));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return bad(format!("duplicate generator {}", g.name));
            }
        }
        let mut normalized = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut counts: HashMap<Monomial, usize> = HashMap::new();
            for mono in rel {
                if mono.len() != generators.len() {
                    return bad("monomial length does not match generator count".into());
                }
                *counts.entry(mono).or_default() += 1;
            }
            let mut monos: Vec<Monomial> = counts
                .into_iter()
                .filter(|(_, c)| c % 2 == 1)
                .map(|(m, _)| m)
                .collect();
            if monos.is_empty() {
                return bad("relation is zero".into());
            }
            monos.sort();
            let deg = degree_of(&generators, &monos[0]);
            if deg == 0 {
                return bad("relation has degree 0".into());
            }
            if monos.iter().any(|m| degree_of(&generators, m) != deg) {
                return bad("relation is not homogeneous".into());
            }
            normalized.push(monos);
        }
        Ok(Presentation {
            generators,
            relations: normalized,
            cap,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<Monomial>] {
        &self.relations
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Same presentation with a different degree cap.
    pub fn with_cap(&self, cap: usize) -> Self {
        Presentation {
            cap,
            ..self.clone()
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, mono: &[u32]) -> usize {
        degree_of(&self.generators, mono)
    }

    pub fn monomial_label(&self, mono: &[u32]) -> String {
        let single = self.generators.iter().all(|g| g.name.chars().count() == 1);
        let parts: Vec<String> = mono
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else if single {
            parts.concat()
        } else {
            parts.join("*")
        }
    }
}

fn degree_of(generators: &[Generator], mono: &[u32]) -> usize {
    mono.iter()
        .zip(generators)
        .map(|(&e, g)| e as usize * g.degree)
        .sum()
}

/// Canonical text form, e.g. `ring F2[v:1,w:2]/(v^2, w^3) cap 12`.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        write!(f, "ring F2[{}]", gens.join(","))?;
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|rel| {
                // highest monomial first reads like the usual notation
                rel.iter()
                    .rev()
                    .map(|m| self.monomial_label(m))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect();
        write!(f, "/({}) cap {}", rels.join(", "), self.cap)
    }
}

impl FromStr for Presentation {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

fn parse_presentation(s: &str) -> Result<Presentation, RingError> {
    let err = |m: &str| RingError::Parse(m.to_string());
    let s = s.trim();
    let rest = s
        .strip_prefix("ring")
        .ok_or_else(|| err("expected `ring`"))?
        .trim_start();
    let rest = rest
        .strip_prefix("F2[")
        .ok_or_else(|| err("expected `F2[`"))?;
    let close = rest.find(']').ok_or_else(|| err("missing `]`"))?;
    let gen_text = &rest[..close];
    let mut rest = rest[close + 1..].trim_start();

    let mut generators = Vec::new();
    for item in gen_text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (name, deg) = item
            .split_once(':')
            .ok_or_else(|| err("generator must be `name:degree`"))?;
        let degree = deg
            .trim()
            .parse::<usize>()
            .map_err(|_| err("bad generator degree"))?;
        generators.push(Generator {
            name: name.trim().to_string(),
            degree,
        });
    }

    let mut relations = Vec::new();
    if let Some(r) = rest.strip_prefix('/') {
        let r = r.trim_start();
        let r = r
            .strip_prefix('(')
            .ok_or_else(|| err("expected `(` after `/`"))?;
        let close = r.find(')').ok_or_else(|| err("missing `)`"))?;
        for rel in r[..close]
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
        {
            relations.push(parse_polynomial(rel, &generators)?);
        }
        rest = r[close + 1..].trim_start();
    }

    let cap_text = rest
        .strip_prefix("cap")
        .ok_or_else(|| err("expected `cap`"))?;
    let cap = cap_text
        .trim()
        .parse::<usize>()
        .map_err(|_| err("bad cap"))?;
    Presentation::new(generators, relations, cap)
}

fn parse_polynomial(text: &str, generators: &[Generator]) -> Result<Vec<Monomial>, RingError> {
    // characteristic 2: a minus sign is a plus sign
    text.split(['+', '-'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_monomial(t, generators))
        .collect()
}

fn parse_monomial(text: &str, generators: &[Generator]) -> Result<Monomial, RingError> {
    let mut mono = vec![0u32; generators.len()];
    if text == "1" {
        return Ok(mono);
    }
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '*' {
            i += 1;
            continue;
        }
        // longest generator name matching here
        let rest: String = chars[i..].iter().collect();
        let (gi, len) = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| rest.starts_with(&g.name))
            .map(|(gi, g)| (gi, g.name.chars().count()))
            .max_by_key(|&(_, len)| len)
            .ok_or_else(|| RingError::Parse(format!("unknown factor in {text:?}")))?;
        i += len;
        let mut exp = 1u32;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| RingError::Parse(format!("bad exponent in {text:?}")))?;
        }
        mono[gi] += exp;
    }
    Ok(mono)
}

/// The spaces whose cohomology rings the engine knows by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Sphere(usize),
    RealProjective(usize),
    /// Lens space `L_p^{2m-1}` with `4 | p`.
    LensMod2(usize),
    ClassifyingSpaceZ2(usize),
}

impl SpaceKind {
    pub fn describe(&self) -> String {
        match self {
            SpaceKind::Sphere(n) => format!("sphere S^{n}"),
            SpaceKind::RealProjective(n) => format!("real projective space RP^{n}"),
            SpaceKind::LensMod2(m) => format!("mod-2 lens space, m={m} (4 | p)"),
            SpaceKind::ClassifyingSpaceZ2(cap) => format!("BZ2 truncated at {cap}"),
        }
    }
}

fn gen(name: &str, degree: usize) -> Generator {
    Generator {
        name: name.into(),
        degree,
    }
}

/// Mod-2 cohomology presentation of a standard space. Caps leave room for
/// the first vanishing degrees above the top class so finiteness is visible.
pub fn standard_space(kind: SpaceKind) -> Result<Presentation, RingError> {
    match kind {
        SpaceKind::Sphere(n) => {
            if n == 0 {
                return Err(RingError::InvalidParam(
                    "sphere dimension must be positive".into(),
                ));
            }
            Presentation::new(vec![gen("s", n)], vec![vec![vec![2]]], 2 * n)
        }
        SpaceKind::RealProjective(n) => {
            if n == 0 {
                return Err(RingError::InvalidParam(
                    "projective dimension must be positive".into(),
                ));
            }
            Presentation::new(vec![gen("a", 1)], vec![vec![vec![n as u32 + 1]]], n + 1)
        }
        SpaceKind::LensMod2(m) => {
            if m == 0 {
                return Err(RingError::InvalidParam("m must be positive".into()));
            }
            Presentation::new(
                vec![gen("v", 1), gen("w", 2)],
                vec![vec![vec![2, 0]], vec![vec![0, m as u32]]],
                2 * m + 1,
            )
        }
        SpaceKind::ClassifyingSpaceZ2(cap) => {
            if cap == 0 {
                return Err(RingError::InvalidParam("cap must be positive".into()));
            }
            Presentation::new(vec![gen("t", 1)], vec![], cap)
        }
    }
}

/// All exponent vectors of total degree `d`, in ascending lexicographic order.
fn monomials_of_degree(generators: &[Generator], d: usize) -> Vec<Monomial> {
    fn go(gens: &[Generator], i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let deg = gens[i].degree;
        for e in 0..=left / deg {
            cur[i] = e as u32;
            go(gens, i + 1, left - e * deg, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(generators, 0, d, &mut vec![0; generators.len()], &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug)]
struct DegreeSlice {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Subspace,
    /// indices into `monomials` of the standard (basis) monomials
    basis: Vec<usize>,
    /// coordinates of every monomial over `basis`
    normal_forms: Vec<BitVec>,
}

/// Per-degree monomial bases of a presented algebra, degrees `0..=cap`.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    presentation: Presentation,
    slices: Vec<DegreeSlice>,
}

pub fn compute_basis(p: &Presentation) -> GradedBasis {
    let gens = &p.generators;
    let mut slices = Vec::with_capacity(p.cap + 1);
    for d in 0..=p.cap {
        let monomials = monomials_of_degree(gens, d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let n = monomials.len();
        let mut spanning = Vec::new();
        for rel in &p.relations {
            let rd = degree_of(gens, &rel[0]);
            if rd > d {
                continue;
            }
            for mult in monomials_of_degree(gens, d - rd) {
                let mut v = BitVec::zeros(n);
                for term in rel {
                    let prod: Monomial = term.iter().zip(&mult).map(|(a, b)| a + b).collect();
                    v.flip(index[&prod]);
                }
                spanning.push(v);
            }
        }
        let ideal = Subspace::span(n, spanning);
        let reps = quotient_basis(&ideal, &Subspace::full(n)).expect("ideal lies in its degree");
        // reduced modulo the ideal, the complement of the pivots is spanned by unit vectors
        let basis: Vec<usize> = reps
            .iter()
            .map(|r| {
                debug_assert_eq!(r.count_ones(), 1);
                r.first_one().unwrap()
            })
            .collect();
        let position: HashMap<usize, usize> =
            basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let normal_forms = (0..n)
            .map(|i| {
                let red = ideal.reduce(&BitVec::unit(n, i));
                let mut coords = BitVec::zeros(basis.len());
                for c in red.ones() {
                    coords.set(position[&c], true);
                }
                coords
            })
            .collect();
        slices.push(DegreeSlice {
            monomials,
            index,
            ideal,
            basis,
            normal_forms,
        });
    }
    GradedBasis {
        presentation: p.clone(),
        slices,
    }
}

impl GradedBasis {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn cap(&self) -> usize {
        self.presentation.cap
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.slices.get(degree).map_or(0, |s| s.basis.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.basis.len()).collect()
    }

    /// Basis monomials in degree `d`.
    pub fn basis_monomials(&self, d: usize) -> Vec<&Monomial> {
        let s = &self.slices[d];
        s.basis.iter().map(|&i| &s.monomials[i]).collect()
    }

    pub fn basis_labels(&self, d: usize) -> Vec<String> {
        self.basis_monomials(d)
            .into_iter()
            .map(|m| self.presentation.monomial_label(m))
            .collect()
    }

    /// Rank of the relation ideal in degree `d`.
    pub fn ideal_rank(&self, d: usize) -> usize {
        self.slices[d].ideal.dim()
    }

    pub fn monomial_count(&self, d: usize) -> usize {
        self.slices[d].monomials.len()
    }

    /// Normal form of a monomial, or `None` if its degree exceeds the cap.
    pub fn normal_form(&self, mono: &[u32]) -> Option<BitVec> {
        let d = self.presentation.degree(mono);
        let s = self.slices.get(d)?;
        Some(s.normal_forms[s.index[mono]].clone())
    }

    pub fn one(&self) -> RingElement<'_> {
        RingElement {
            ring: self,
            degree: 0,
            coeffs: BitVec::unit(1, 0),
        }
    }

    pub fn zero(&self, degree: usize) -> RingElement<'_> {
        RingElement {
            ring: self,
            degree,
            coeffs: BitVec::zeros(self.dim(degree)),
        }
    }

    pub fn element(&self, degree: usize, coeffs: BitVec) -> Result<RingElement<'_>, RingError> {
        if degree > self.cap() {
            return Err(RingError::DegreeOverflow {
                degree,
                cap: self.cap(),
            });
        }
        if coeffs.len() != self.dim(degree) {
            return Err(RingError::InvalidParam(format!(
                "degree {degree} has dimension {}, got {} coefficients",
                self.dim(degree),
                coeffs.len()
            )));
        }
        Ok(RingElement {
            ring: self,
            degree,
            coeffs,
        })
    }

    pub fn monomial(&self, mono: &[u32]) -> Result<RingElement<'_>, RingError> {
        if mono.len() != self.presentation.generators.len() {
            return Err(RingError::InvalidParam(
                "wrong exponent vector length".into(),
            ));
        }
        let degree = self.presentation.degree(mono);
        let coeffs = self.normal_form(mono).ok_or(RingError::DegreeOverflow {
            degree,
            cap: self.cap(),
        })?;
        Ok(RingElement {
            ring: self,
            degree,
            coeffs,
        })
    }

    pub fn generator(&self, name: &str) -> Result<RingElement<'_>, RingError> {
        let i = self
            .presentation
            .generator_index(name)
            .ok_or_else(|| RingError::InvalidParam(format!("no generator named {name}")))?;
        let mut mono = vec![0; self.presentation.generators.len()];
        mono[i] = 1;
        self.monomial(&mono)
    }
}

/// An element of one degree, stored as coordinates over the basis monomials.
#[derive(Clone)]
pub struct RingElement<'a> {
    ring: &'a GradedBasis,
    degree: usize,
    coeffs: BitVec,
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring)
            && self.degree == other.degree
            && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement<'_> {}

impl<'a> RingElement<'a> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BitVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, other: &RingElement<'a>) -> Result<RingElement<'a>, RingError> {
        if !std::ptr::eq(self.ring, other.ring) || self.degree != other.degree {
            return Err(RingError::ForeignElement);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.xor_assign(&other.coeffs);
        Ok(RingElement {
            coeffs,
            ..self.clone()
        })
    }

    pub fn pow(&self, k: u32) -> Result<RingElement<'a>, RingError> {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = cup(&acc, self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.ring.basis_labels(self.degree);
        let terms: Vec<&str> = self.coeffs.ones().map(|i| labels[i].as_str()).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Cup product, reduced to normal form.
pub fn cup<'a>(a: &RingElement<'a>, b: &RingElement<'a>) -> Result<RingElement<'a>, RingError> {
    if !std::ptr::eq(a.ring, b.ring) {
        return Err(RingError::ForeignElement);
    }
    let ring = a.ring;
    let degree = a.degree + b.degree;
    if degree > ring.cap() {
        return Err(RingError::DegreeOverflow {
            degree,
            cap: ring.cap(),
        });
    }
    let ma = ring.basis_monomials(a.degree);
    let mb = ring.basis_monomials(b.degree);
    let mut coeffs = BitVec::zeros(ring.dim(degree));
    for i in a.coeffs.ones() {
        for j in b.coeffs.ones() {
            let prod: Monomial = ma[i].iter().zip(mb[j]).map(|(x, y)| x + y).collect();
            coeffs.xor_assign(&ring.normal_form(&prod).expect("degree within cap"));
        }
    }
    Ok(RingElement {
        ring,
        degree,
        coeffs,
    })
}

/// Dimensions of the algebra in degrees `0..=cap`.
pub fn poincare(p: &Presentation) -> Vec<usize> {
    compute_basis(p).dims()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Order(usize),
    /// No power vanished within the degree cap.
    Unbounded,
}

/// Smallest `k` with `e^k = 0`.
pub fn nilpotency_order(e: &RingElement<'_>) -> Result<Nilpotency, RingError> {
    if e.degree == 0 {
        return Err(RingError::InvalidParam(
            "nilpotency is only defined in positive degree".into(),
        ));
    }
    let cap = e.ring.cap();
    let mut power = e.clone();
    let mut k = 1;
    loop {
        if power.is_zero() {
            return Ok(Nilpotency::Order(k));
        }
        if (k + 1) * e.degree > cap {
            return Ok(Nilpotency::Unbounded);
        }
        power = cup(&power, e)?;
        k += 1;
    }
}

pub fn euler_char(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityGate {
    Pass,
    Fail(String),
}

/// A free involution has empty fixed set, so Floyd's formula forces
/// χ(X) = 2χ(X/G); an odd Euler characteristic rules the action out.
pub fn free_involution_parity_gate(dims: &[usize]) -> ParityGate {
    let chi = euler_char(dims);
    if chi.rem_euclid(2) == 1 {
        ParityGate::Fail(format!(
            "Euler characteristic {chi} is odd; a free involution needs χ(X) = 2χ(X/G)"
        ))
    } else {
        ParityGate::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralGroup {
    Z,
    Cyclic(u64),
    Zero,
}

impl fmt::Display for IntegralGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralGroup::Z => write!(f, "Z"),
            IntegralGroup::Cyclic(n) => write!(f, "Z_{n}"),
            IntegralGroup::Zero => write!(f, "0"),
        }
    }
}

/// Integral homology of `L_p^{2m-1}` in degrees `0..=2m-1`.
pub fn integral_homology_lens(p: u64, m: usize) -> Result<Vec<IntegralGroup>, RingError> {
    if p < 2 {
        return Err(RingError::InvalidParam("p must be at least 2".into()));
    }
    if m == 0 {
        return Err(RingError::InvalidParam("m must be positive".into()));
    }
    let top = 2 * m - 1;
    Ok((0..=top)
        .map(|i| {
            if i == 0 || i == top {
                IntegralGroup::Z
            } else if i % 2 == 1 {
                IntegralGroup::Cyclic(p)
            } else {
                IntegralGroup::Zero
            }
        })
        .collect())
}

/// Drops trailing zeros from a dimension vector.
pub fn trim_dims(dims: &[usize]) -> Vec<usize> {
    let end = dims.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    dims[..end].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text: &str) -> Presentation {
        text.parse().unwrap()
    }

    #[test]
    fn standard_spaces() {
        let lens = standard_space(SpaceKind::LensMod2(3)).unwrap();
        assert_eq!(trim_dims(&poincare(&lens)), vec![1; 6]);
        let s3 = standard_space(SpaceKind::Sphere(3)).unwrap();
        assert_eq!(trim_dims(&poincare(&s3)), vec![1, 0, 0, 1]);
        let rp3 = standard_space(SpaceKind::RealProjective(3)).unwrap();
        assert_eq!(trim_dims(&poincare(&rp3)), vec![1, 1, 1, 1]);
        let bz2 = standard_space(SpaceKind::ClassifyingSpaceZ2(5)).unwrap();
        assert_eq!(poincare(&bz2), vec![1; 6]);
        assert!(standard_space(SpaceKind::Sphere(0)).is_err());
        assert!(standard_space(SpaceKind::LensMod2(0)).is_err());
    }

    #[test]
    fn basis_examples() {
        let p = ring("ring F2[x:1]/(x^4) cap 6");
        assert_eq!(poincare(&p), vec![1, 1, 1, 1, 0, 0, 0]);
        let empty = ring("ring F2[] cap 3");
        assert_eq!(poincare(&empty), vec![1, 0, 0, 0]);
        let b = compute_basis(&p);
        assert_eq!(b.basis_labels(0), vec!["1"]);
    }

    #[test]
    fn cup_examples() {
        let lens = compute_basis(&standard_space(SpaceKind::LensMod2(4)).unwrap());
        let v = lens.generator("v").unwrap();
        assert!(cup(&v, &v).unwrap().is_zero());
        assert_eq!(cup(&lens.one(), &v).unwrap(), v);

        let case3 = compute_basis(&ring(
            "ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^2y + x^3) cap 14",
        ));
        let x = case3.generator("x").unwrap();
        let y = case3.generator("y").unwrap();
        let x2 = cup(&x, &x).unwrap();
        assert_eq!(cup(&x2, &y).unwrap(), x.pow(3).unwrap());
        assert!(matches!(
            cup(&case3.monomial(&[0, 0, 3]).unwrap(), &x.pow(3).unwrap()),
            Err(RingError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn relations_reduce_to_zero() {
        for lambda in [0, 1] {
            let rel = if lambda == 1 { "x^2y + x^3" } else { "x^2y" };
            let b = compute_basis(&ring(&format!(
                "ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, {rel}) cap 14"
            )));
            let mut sum = b.monomial(&[2, 1, 0]).unwrap();
            if lambda == 1 {
                sum = sum.add(&b.monomial(&[3, 0, 0]).unwrap()).unwrap();
            }
            assert!(sum.is_zero());
            assert!(b.monomial(&[0, 2, 0]).unwrap().is_zero());
        }
    }

    #[test]
    fn nilpotency_examples() {
        let b = compute_basis(&ring("ring F2[x:1]/(x^4) cap 10"));
        let x = b.generator("x").unwrap();
        assert_eq!(nilpotency_order(&x).unwrap(), Nilpotency::Order(4));
        let b = compute_basis(&ring("ring F2[x:1,y:2]/(x^2, y^3) cap 12"));
        let x = b.generator("x").unwrap();
        assert_eq!(nilpotency_order(&x).unwrap(), Nilpotency::Order(2));
        let b = compute_basis(&ring("ring F2[t:1] cap 5"));
        let t = b.generator("t").unwrap();
        assert_eq!(nilpotency_order(&t).unwrap(), Nilpotency::Unbounded);
        assert!(nilpotency_order(&b.one()).is_err());
    }

    #[test]
    fn euler_and_parity() {
        assert_eq!(euler_char(&[1; 6]), 0);
        assert_eq!(euler_char(&[1; 7]), 1);
        assert_eq!(euler_char(&[1, 0, 1]), 2);
        assert!(matches!(
            free_involution_parity_gate(&[1; 7]),
            ParityGate::Fail(_)
        ));
        assert_eq!(free_involution_parity_gate(&[1; 8]), ParityGate::Pass);
        assert_eq!(free_involution_parity_gate(&[1, 0, 1]), ParityGate::Pass);
    }

    #[test]
    fn integral_homology() {
        use IntegralGroup::*;
        assert_eq!(
            integral_homology_lens(5, 2).unwrap(),
            vec![Z, Cyclic(5), Zero, Z]
        );
        assert_eq!(integral_homology_lens(2, 1).unwrap(), vec![Z, Z]);
        for p in 2..9 {
            assert_eq!(integral_homology_lens(p, 3).unwrap()[2], Zero);
        }
        assert!(integral_homology_lens(1, 2).is_err());
        assert!(integral_homology_lens(3, 0).is_err());
    }

    #[test]
    fn text_form() {
        let p = ring("ring F2[v:1,w:2]/(v^2, w^3) cap 12");
        assert_eq!(p.to_string(), "ring F2[v:1,w:2]/(v^2, w^3) cap 12");
        let q = ring("ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^2*y - x^3) cap 14");
        assert_eq!(
            q.to_string(),
            "ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^3 + x^2y) cap 14"
        );
        assert_eq!(q.to_string().parse::<Presentation>().unwrap(), q);
        let long = ring("ring F2[ab:1,b:2]/(ab^2*b) cap 5");
        assert_eq!(long.relations()[0], vec![vec![2, 1]]);
        assert_eq!(long.to_string().parse::<Presentation>().unwrap(), long);
    }

    #[test]
    fn rejects_bad_presentations() {
        for bad in [
            "ring F2[x:0] cap 3",
            "ring F2[x:1,x:2] cap 3",
            "ring F2[x:1,y:2]/(x + y) cap 3",
            "ring F2[x:1]/(x + x) cap 3",
            "ring F2[x:1]/(q) cap 3",
            "ring F2[x:1] cup 3",
            "F2[x:1] cap 3",
        ] {
            assert!(bad.parse::<Presentation>().is_err(), "{bad}");
        }
    }
}
