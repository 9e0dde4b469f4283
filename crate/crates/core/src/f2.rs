//! Dense linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words and elimination works a word at a
//! time. Every matrix in this crate is small (a few hundred columns at most),
//! so plain Gaussian elimination is all that is needed.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A vector over F₂ of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, ignoring spaces.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | '_' => {}
                _ => return None,
            }
        }
        Some(Self::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Indices of the nonzero entries, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Every vector of length `len`, in lexicographic order with the zero
    /// vector first. Index 0 is the most significant position.
    pub fn all(len: usize) -> impl Iterator<Item = BitVec> {
        assert!(len < 32, "refusing to enumerate 2^{len} vectors");
        (0u32..(1u32 << len))
            .map(move |code| BitVec::from_bools((0..len).map(|i| (code >> (len - 1 - i)) & 1 == 1)))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Row-major matrix over F₂. Zero-row and zero-column matrices are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match row count");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Convenience constructor from `"0110"`-style row strings.
    pub fn parse_rows(rows: &[&str]) -> Option<Self> {
        let vs = rows
            .iter()
            .map(|r| BitVec::parse(r))
            .collect::<Option<Vec<_>>>()?;
        let cols = vs.first().map_or(0, BitVec::len);
        if vs.iter().any(|v| v.len() != cols) {
            return None;
        }
        Some(Self::from_rows(cols, vs))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i].set(j, b)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.data
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `self · v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        BitVec::from_bools(self.data.iter().map(|row| row.dot(v)))
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[i].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// column of each surviving row. Zero rows are dropped.
fn rref(mut rows: Vec<BitVec>, cols: usize) -> (Vec<BitVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn rank(m: &BitMatrix) -> usize {
    rref(m.data.clone(), m.cols).1.len()
}

/// A linear subspace of F₂ⁿ held as a basis in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| BitVec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = BitVec>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<BitVec> = vectors.into_iter().collect();
        for r in &rows {
            assert_eq!(
                r.len(),
                ambient,
                "vector length does not match ambient dimension"
            );
        }
        let (basis, pivots) = rref(rows, ambient);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The basis rows, in reduced row-echelon form.
    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.ambient, self.basis.clone())
    }

    /// Reduces `v` modulo this subspace: the result has a zero at every pivot
    /// column and differs from `v` by an element of the subspace.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        if !self.contains(v) {
            return None;
        }
        Some(BitVec::from_bools(self.pivots.iter().map(|&p| v.get(p))))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient={}, basis=[", self.ambient)?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "])")
    }
}

/// Null space of `m`, as a subspace of F₂^cols.
pub fn kernel(m: &BitMatrix) -> Subspace {
    let (rows, pivots) = rref(m.data.clone(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::unit(m.cols, free);
        for (row, &p) in rows.iter().zip(&pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        vectors.push(v);
    }
    Subspace::span(m.cols, vectors)
}

/// Column space of `m`, as a subspace of F₂^rows.
pub fn image(m: &BitMatrix) -> Subspace {
    Subspace::span(m.rows, (0..m.cols).map(|j| m.column(j)))
}

/// Coset representatives for a basis of `inside / sub`.
///
/// The representatives are the basis of `inside` reduced modulo `sub` and
/// brought to reduced row-echelon form. They vanish on every pivot column of
/// `sub`, which makes the choice canonical: it depends only on the two
/// subspaces, not on how they were spanned.
pub fn quotient_basis(sub: &Subspace, inside: &Subspace) -> Result<Vec<BitVec>, F2Error> {
    if sub.ambient != inside.ambient {
        return Err(F2Error::DimensionMismatch {
            expected: inside.ambient,
            got: sub.ambient,
        });
    }
    if !sub.is_subspace_of(inside) {
        return Err(F2Error::NotContained);
    }
    let reduced = inside.basis.iter().map(|b| sub.reduce(b)).collect();
    Ok(rref(reduced, inside.ambient).0)
}

/// Expresses vectors as combinations of a fixed, possibly dependent, family.
///
/// `solve` returns coefficients over the original family; when the family is
/// dependent it prefers earlier members.
#[derive(Clone, Debug)]
pub struct Solver {
    len: usize,
    family: usize,
    // echelon rows paired with the combination of family members producing them
    rows: Vec<(BitVec, BitVec, usize)>,
}

impl Solver {
    pub fn new(len: usize, family: &[BitVec]) -> Self {
        let n = family.len();
        let mut rows: Vec<(BitVec, BitVec, usize)> = Vec::new();
        for (i, v) in family.iter().enumerate() {
            assert_eq!(v.len(), len);
            let mut v = v.clone();
            let mut combo = BitVec::unit(n, i);
            for (r, c, p) in &rows {
                if v.get(*p) {
                    v.xor_assign(r);
                    combo.xor_assign(c);
                }
            }
            if let Some(p) = v.first_one() {
                rows.push((v, combo, p));
            }
        }
        Solver {
            len,
            family: n,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn solve(&self, target: &BitVec) -> Option<BitVec> {
        assert_eq!(target.len(), self.len);
        let mut v = target.clone();
        let mut combo = BitVec::zeros(self.family);
        for (r, c, p) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
                combo.xor_assign(c);
            }
        }
        v.is_zero().then_some(combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(rows).unwrap()
    }

    fn v(s: &str) -> BitVec {
        BitVec::parse(s).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&BitMatrix::identity(4)), 4);
        // third row is the sum of the first two
        assert_eq!(rank(&m(&["1100", "0110", "1010"])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&BitMatrix::identity(3)).dim(), 0);
        let k = kernel(&BitMatrix::zeros(2, 3));
        assert_eq!(k, Subspace::full(3));
        let k = kernel(&m(&["11"]));
        assert_eq!(k.basis(), &[v("11")]);
        // exhaustive: of the four vectors in F₂², exactly 00 and 11 are killed
        let killed: Vec<BitVec> = BitVec::all(2)
            .filter(|x| m(&["11"]).mul_vec(x).is_zero())
            .collect();
        assert_eq!(killed, vec![v("00"), v("11")]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&BitMatrix::zeros(3, 2)).dim(), 0);
        assert_eq!(image(&BitMatrix::identity(3)), Subspace::full(3));
        let cols = [v("110"), v("110"), v("001")];
        let img = image(&BitMatrix::from_columns(3, &cols));
        assert_eq!(img.dim(), 2);
        // every vector of F₂³ that is a combination of the columns is in the image
        let spanned: Vec<BitVec> = BitVec::all(3)
            .map(|c| {
                let mut acc = BitVec::zeros(3);
                for i in c.ones() {
                    acc.xor_assign(&cols[i]);
                }
                acc
            })
            .collect();
        for s in &spanned {
            assert!(img.contains(s));
        }
        let distinct: std::collections::BTreeSet<String> =
            spanned.iter().map(|s| s.to_string()).collect();
        assert_eq!(distinct.len(), 1 << img.dim());
    }

    #[test]
    fn quotient_examples() {
        let full2 = Subspace::full(2);
        assert!(quotient_basis(&full2, &full2).unwrap().is_empty());
        assert_eq!(quotient_basis(&Subspace::zero(2), &full2).unwrap().len(), 2);

        let inside = Subspace::span(3, [v("100"), v("010")]);
        let sub = Subspace::span(3, [v("110")]);
        let reps = quotient_basis(&sub, &inside).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(inside.contains(&reps[0]));
        assert!(!sub.contains(&reps[0]));

        let outside = Subspace::span(3, [v("001")]);
        assert_eq!(
            quotient_basis(&outside, &inside),
            Err(F2Error::NotContained)
        );
    }

    #[test]
    fn zero_sized_matrices() {
        let a = BitMatrix::zeros(0, 4);
        assert_eq!(rank(&a), 0);
        assert_eq!(kernel(&a).dim(), 4);
        let b = BitMatrix::zeros(3, 0);
        assert_eq!(kernel(&b).dim(), 0);
        assert_eq!(image(&b).dim(), 0);
    }

    #[test]
    fn solver_prefers_earlier_members() {
        let fam = [v("10"), v("10"), v("01")];
        let s = Solver::new(2, &fam);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.solve(&v("11")).unwrap(), v("101"));
        let s = Solver::new(2, &[v("11")]);
        assert!(s.solve(&v("10")).is_none());
    }
}
