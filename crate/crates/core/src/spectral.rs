//! Pages of the Leray–Serre spectral sequence of the Borel fibration
//! `X → X_G → BZ₂` with constant coefficients, truncated to a finite window.
//!
//! Every page `E_r` is stored as a subquotient `Z_r / B_r` of `E₂`, bigrade by
//! bigrade, where `E₂^{k,l} = t^k ⊗ H^l(X)` has the monomial basis of the
//! fiber. A class is carried by a distinguished `E₂` representative, so
//! products of classes are products of representatives.
//!
//! A differential `d_r` is specified on the multiplicative generators of the
//! page and extended by the derivation rule. The extension is then checked
//! against every product `generator · class`: a product that vanishes (for
//! example because it lands above the top degree of the fiber) must have a
//! vanishing derivation too.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::f2::{image, kernel, quotient_basis, BitMatrix, BitVec, Solver, Subspace};
use crate::ring::{compute_basis, GradedBasis, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("unsupported fiber: {0}")]
    UnsupportedFiber(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("differential is not a derivation: {0}")]
    IllDefined(Box<LeibnizWitness>),
    #[error("differential does not square to zero: {0}")]
    NotSquareZero(Box<SquareWitness>),
    #[error("bad assignment: {0}")]
    BadAssignment(String),
    #[error("window too small: total degree {jmax} needs k up to {jmax} but kmax = {kmax}")]
    WindowTooSmall { jmax: usize, kmax: usize },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

/// A product `generator · class` on which the derivation rule fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizWitness {
    pub r: usize,
    pub generator: String,
    pub class: String,
    /// the product, or `0` when it vanishes
    pub product: String,
    /// `d_r` applied to the product
    pub direct: String,
    /// `d_r(generator)·class + generator·d_r(class)`
    pub leibniz: String,
    pub target: (usize, usize),
}

impl fmt::Display for LeibnizWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d{r}({g} · {c}) with {g} · {c} = {p}: d{r} of the product is {d} but the derivation rule gives {l} at ({k},{l2})",
            r = self.r,
            g = self.generator,
            c = self.class,
            p = self.product,
            d = self.direct,
            l = self.leibniz,
            k = self.target.0,
            l2 = self.target.1,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub r: usize,
    pub class: String,
    pub image: String,
    pub image_of_image: String,
}

impl fmt::Display for SquareWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d{r}({c}) = {i} and d{r}({i}) = {ii}",
            r = self.r,
            c = self.class,
            i = self.image,
            ii = self.image_of_image
        )
    }
}

/// Finite part `0 ≤ k ≤ kmax`, `0 ≤ l ≤ lmax` of the first quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub kmax: usize,
    pub lmax: usize,
}

impl Window {
    pub fn new(kmax: usize, lmax: usize) -> Result<Self, SpectralError> {
        if kmax < 2 * (lmax + 1) {
            return Err(SpectralError::InvalidWindow(format!(
                "kmax = {kmax} must be at least 2·(lmax+1) = {}",
                2 * (lmax + 1)
            )));
        }
        Ok(Window { kmax, lmax })
    }

    /// `kmax = 2·(lmax+1) + 2`; for a lens fiber this is `2·(2m) + 2`.
    pub fn default_for(lmax: usize) -> Self {
        Window {
            kmax: 2 * (lmax + 1) + 2,
            lmax,
        }
    }

    /// Largest total degree whose bigrades, and the targets of every
    /// differential leaving them, all lie inside the window.
    pub fn reliable_degree(&self) -> usize {
        self.kmax - self.lmax - 1
    }

    fn index(&self, k: usize, l: usize) -> usize {
        k * (self.lmax + 1) + l
    }

    fn contains(&self, k: usize, l: usize) -> bool {
        k <= self.kmax && l <= self.lmax
    }

    fn cells(&self) -> usize {
        (self.kmax + 1) * (self.lmax + 1)
    }

    /// Bigrades ordered by total degree, then by `k`.
    fn ordered(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = (0..=self.kmax)
            .flat_map(|k| (0..=self.lmax).map(move |l| (k, l)))
            .collect();
        v.sort_by_key(|&(k, l)| (k + l, k));
        v
    }

    /// Target bigrade of `d_r` from `(k, l)`, if it lies in the window.
    pub fn target(&self, r: usize, k: usize, l: usize) -> Option<(usize, usize)> {
        (l + 1 >= r && k + r <= self.kmax).then(|| (k + r, l + 1 - r))
    }
}

/// Cohomology of the fiber with its multiplication table, degrees `0..=top`.
#[derive(Debug)]
pub struct Fiber {
    presentation: Presentation,
    basis: GradedBasis,
    top: usize,
    labels: Vec<Vec<String>>,
    // products[l1][l2][i][j] for l1 + l2 <= top
    products: Vec<Vec<Vec<Vec<BitVec>>>>,
}

impl Fiber {
    /// Checks that the presentation is finite within its cap and that the
    /// local coefficient system is forced to be constant: when every
    /// `H^l` has dimension at most one, its only automorphism is the
    /// identity. Larger fibers need `assume_trivial_action`.
    pub fn new(p: &Presentation, assume_trivial_action: bool) -> Result<Self, SpectralError> {
        let basis = compute_basis(p);
        let dims = basis.dims();
        let top = dims.iter().rposition(|&d| d != 0).unwrap_or(0);
        let max_gen = p.generators().iter().map(|g| g.degree).max().unwrap_or(1);
        if top + max_gen > p.cap() {
            return Err(SpectralError::UnsupportedFiber(format!(
                "cap {} too small to certify that the algebra vanishes above degree {top}; need cap >= {}",
                p.cap(),
                top + max_gen
            )));
        }
        if !assume_trivial_action {
            if let Some(l) = dims.iter().position(|&d| d > 1) {
                return Err(SpectralError::UnsupportedFiber(format!(
                    "H^{l} has dimension {}, so the involution could act nontrivially; assert a trivial action to proceed",
                    dims[l]
                )));
            }
        }
        let labels: Vec<Vec<String>> = (0..=top).map(|l| basis.basis_labels(l)).collect();
        let mut products = Vec::with_capacity(top + 1);
        for l1 in 0..=top {
            let mut row = Vec::with_capacity(top + 1 - l1);
            for l2 in 0..=top - l1 {
                let m1 = basis.basis_monomials(l1);
                let m2 = basis.basis_monomials(l2);
                let table: Vec<Vec<BitVec>> = m1
                    .iter()
                    .map(|a| {
                        m2.iter()
                            .map(|b| {
                                let prod: Vec<u32> =
                                    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                                basis.normal_form(&prod).expect("within cap")
                            })
                            .collect()
                    })
                    .collect();
                row.push(table);
            }
            products.push(row);
        }
        Ok(Fiber {
            presentation: p.clone(),
            basis,
            top,
            labels,
            products,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self, l: usize) -> usize {
        if l <= self.top {
            self.basis.dim(l)
        } else {
            0
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top).map(|l| self.dim(l)).collect()
    }

    /// Product in `H^*(X)` of coordinate vectors of degrees `l1` and `l2`.
    /// `None` when the product lies above the top degree (and is zero).
    fn multiply(&self, l1: usize, a: &BitVec, l2: usize, b: &BitVec) -> Option<BitVec> {
        if l1 + l2 > self.top {
            return None;
        }
        let table = &self.products[l1][l2];
        let mut out = BitVec::zeros(self.dim(l1 + l2));
        for i in a.ones() {
            for j in b.ones() {
                out.xor_assign(&table[i][j]);
            }
        }
        Some(out)
    }

    fn monomial_label(&self, k: usize, l: usize, j: usize) -> String {
        let t = match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        format!("{t}⊗{}", self.labels[l][j])
    }

    fn e2_label(&self, k: usize, l: usize, v: &BitVec) -> String {
        let terms: Vec<String> = v.ones().map(|j| self.monomial_label(k, l, j)).collect();
        match terms.len() {
            0 => "0".into(),
            1 => terms.into_iter().next().unwrap(),
            _ => format!("({})", terms.join(" + ")),
        }
    }
}

#[derive(Clone, Debug)]
struct Cell {
    cycles: Subspace,
    boundaries: Subspace,
    reps: Vec<BitVec>,
    solver: Solver,
}

impl Cell {
    fn new(cycles: Subspace, boundaries: Subspace) -> Result<Self, SpectralError> {
        let reps = quotient_basis(&boundaries, &cycles).map_err(|e| {
            SpectralError::UnsupportedInstance(format!("boundaries are not cycles: {e}"))
        })?;
        let solver = Solver::new(cycles.ambient_dim(), &reps);
        Ok(Cell {
            cycles,
            boundaries,
            reps,
            solver,
        })
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of an `E₂` vector, if it is a cycle.
    fn class_of(&self, v: &BitVec) -> Option<BitVec> {
        if !self.cycles.contains(v) {
            return None;
        }
        Some(
            self.solver
                .solve(&self.boundaries.reduce(v))
                .expect("reduced cycle lies in the span of the representatives"),
        )
    }

    fn lift(&self, coords: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.cycles.ambient_dim());
        for i in coords.ones() {
            v.xor_assign(&self.reps[i]);
        }
        v
    }
}

/// An element of one bigrade of a page, in the page's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PageElement {
    pub k: usize,
    pub l: usize,
    pub coords: BitVec,
}

impl PageElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

enum Product {
    /// lands beyond `kmax`, where nothing is tracked
    OutOfWindow,
    /// lands above the fiber's top degree, where everything is zero
    Vanishes,
    In(PageElement),
}

/// One page `E_r` inside a window.
#[derive(Clone, Debug)]
pub struct Page {
    r: usize,
    window: Window,
    fiber: Arc<Fiber>,
    cells: Vec<Cell>,
    generators: Vec<PageElement>,
}

/// One bigrade of a page, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub k: usize,
    pub l: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

/// `E₂^{k,l} = H^k(BZ₂) ⊗ H^l(X)` with its monomial basis.
pub fn build_e2(fiber: Arc<Fiber>, window: Window) -> Result<Page, SpectralError> {
    if window.lmax != fiber.top() {
        return Err(SpectralError::InvalidWindow(format!(
            "lmax = {} must equal the fiber's top degree {}",
            window.lmax,
            fiber.top()
        )));
    }
    Window::new(window.kmax, window.lmax)?;
    let mut cells = Vec::with_capacity(window.cells());
    for _k in 0..=window.kmax {
        for l in 0..=window.lmax {
            let n = fiber.dim(l);
            cells.push(Cell::new(Subspace::full(n), Subspace::zero(n))?);
        }
    }
    Page::assemble(2, window, fiber, cells)
}

impl Page {
    fn assemble(
        r: usize,
        window: Window,
        fiber: Arc<Fiber>,
        cells: Vec<Cell>,
    ) -> Result<Self, SpectralError> {
        let mut page = Page {
            r,
            window,
            fiber,
            cells,
            generators: Vec::new(),
        };
        page.generators = page.find_generators()?;
        page.check_multiplicative()?;
        Ok(page)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn fiber(&self) -> &Arc<Fiber> {
        &self.fiber
    }

    /// Multiplicative generators, ordered by total degree then `k`.
    pub fn generators(&self) -> &[PageElement] {
        &self.generators
    }

    pub fn dim(&self, k: usize, l: usize) -> usize {
        if self.window.contains(k, l) {
            self.cell(k, l).dim()
        } else {
            0
        }
    }

    fn cell(&self, k: usize, l: usize) -> &Cell {
        &self.cells[self.window.index(k, l)]
    }

    pub fn basis_element(&self, k: usize, l: usize, i: usize) -> PageElement {
        PageElement {
            k,
            l,
            coords: BitVec::unit(self.dim(k, l), i),
        }
    }

    pub fn zero_at(&self, k: usize, l: usize) -> PageElement {
        PageElement {
            k,
            l,
            coords: BitVec::zeros(self.dim(k, l)),
        }
    }

    /// `E₂` representative of an element.
    pub fn lift(&self, e: &PageElement) -> BitVec {
        self.cell(e.k, e.l).lift(&e.coords)
    }

    /// Class of an `E₂` vector at `(k, l)`, if it survives to this page.
    pub fn class_of(&self, k: usize, l: usize, v: &BitVec) -> Option<PageElement> {
        self.cell(k, l)
            .class_of(v)
            .map(|coords| PageElement { k, l, coords })
    }

    /// Element whose representative is the single `E₂` monomial
    /// `t^k ⊗ (basis monomial j of degree l)`.
    pub fn monomial_class(&self, k: usize, l: usize, j: usize) -> Option<PageElement> {
        let n = self.fiber.dim(l);
        if j >= n || !self.window.contains(k, l) {
            return None;
        }
        self.class_of(k, l, &BitVec::unit(n, j))
    }

    /// Finds the `E₂` monomial `t^k ⊗ label` and returns its class.
    pub fn class_by_label(&self, k: usize, label: &str) -> Option<PageElement> {
        for (l, labels) in self.fiber.labels.iter().enumerate() {
            if let Some(j) = labels.iter().position(|x| x == label) {
                return self.monomial_class(k, l, j);
            }
        }
        None
    }

    fn product(&self, a: &PageElement, b: &PageElement) -> Result<Product, SpectralError> {
        let (k, l) = (a.k + b.k, a.l + b.l);
        if k > self.window.kmax {
            return Ok(Product::OutOfWindow);
        }
        let Some(v) = self.fiber.multiply(a.l, &self.lift(a), b.l, &self.lift(b)) else {
            return Ok(Product::Vanishes);
        };
        match self.class_of(k, l, &v) {
            Some(e) => Ok(Product::In(e)),
            None => Err(SpectralError::UnsupportedInstance(format!(
                "E{}: product of representatives {} · {} is not a cycle",
                self.r,
                self.label(a),
                self.label(b)
            ))),
        }
    }

    /// Product of two elements; `None` when it falls outside the window.
    /// Products above the fiber's top degree come back as `Some(None)`.
    pub fn multiply(
        &self,
        a: &PageElement,
        b: &PageElement,
    ) -> Result<Option<Option<PageElement>>, SpectralError> {
        Ok(match self.product(a, b)? {
            Product::OutOfWindow => None,
            Product::Vanishes => Some(None),
            Product::In(e) => Some(Some(e)),
        })
    }

    pub fn class_label(&self, k: usize, l: usize, i: usize) -> String {
        self.fiber.e2_label(k, l, &self.cell(k, l).reps[i])
    }

    pub fn label(&self, e: &PageElement) -> String {
        let terms: Vec<String> = e
            .coords
            .ones()
            .map(|i| self.class_label(e.k, e.l, i))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn find_generators(&self) -> Result<Vec<PageElement>, SpectralError> {
        let mut gens: Vec<PageElement> = Vec::new();
        for (k, l) in self.window.ordered() {
            let n = self.dim(k, l);
            if (k, l) == (0, 0) || n == 0 {
                continue;
            }
            let mut decomposable = Vec::new();
            for g in &gens {
                if g.k > k || g.l > l || (g.k, g.l) == (k, l) {
                    continue;
                }
                let (kc, lc) = (k - g.k, l - g.l);
                for i in 0..self.dim(kc, lc) {
                    if let Product::In(e) = self.product(g, &self.basis_element(kc, lc, i))? {
                        decomposable.push(e.coords);
                    }
                }
            }
            let dec = Subspace::span(n, decomposable);
            let fresh =
                quotient_basis(&dec, &Subspace::full(n)).expect("subspace of the full space");
            gens.extend(fresh.into_iter().map(|coords| PageElement { k, l, coords }));
        }
        Ok(gens)
    }

    /// Products of generator representatives with cycles are cycles, and with
    /// boundaries are boundaries, everywhere in the window.
    fn check_multiplicative(&self) -> Result<(), SpectralError> {
        for g in &self.generators {
            let gv = self.lift(g);
            for k in 0..=self.window.kmax.saturating_sub(g.k) {
                for l in 0..=self.window.lmax.saturating_sub(g.l) {
                    let cell = self.cell(k, l);
                    let target = self.cell(k + g.k, l + g.l);
                    let check = |v: &BitVec, into: &Subspace, what: &str| {
                        let p = self
                            .fiber
                            .multiply(g.l, &gv, l, v)
                            .expect("bigrade within window");
                        if into.contains(&p) {
                            Ok(())
                        } else {
                            Err(SpectralError::UnsupportedInstance(format!(
                                "E{}: {} times a {what} at ({k},{l}) leaves the {what}s",
                                self.r,
                                self.label(g)
                            )))
                        }
                    };
                    for v in cell.cycles.basis() {
                        check(v, &target.cycles, "cycle")?;
                    }
                    for v in cell.boundaries.basis() {
                        check(v, &target.boundaries, "boundary")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Same page one step later, for a zero differential.
    pub fn advance(&self) -> Page {
        Page {
            r: self.r + 1,
            ..self.clone()
        }
    }

    pub fn summary(&self) -> Vec<CellSummary> {
        let mut out = Vec::new();
        for k in 0..=self.window.kmax {
            for l in 0..=self.window.lmax {
                let dim = self.dim(k, l);
                if dim > 0 {
                    out.push(CellSummary {
                        k,
                        l,
                        dim,
                        basis: (0..dim).map(|i| self.class_label(k, l, i)).collect(),
                    });
                }
            }
        }
        out
    }

    /// Dimension grid, `l` decreasing down the rows and `k` across, for
    /// `k ≤ kshow`.
    pub fn render_grid(&self, kshow: usize) -> String {
        let kshow = kshow.min(self.window.kmax);
        let width = 3;
        let mut s = format!("E{}\n", self.r);
        for l in (0..=self.window.lmax).rev() {
            s.push_str(&format!("{l:>3} |"));
            for k in 0..=kshow {
                let d = self.dim(k, l);
                let cell = if d == 0 {
                    ".".to_string()
                } else {
                    d.to_string()
                };
                s.push_str(&format!("{cell:>width$}"));
            }
            s.push('\n');
        }
        s.push_str("    +");
        s.push_str(&"-".repeat((kshow + 1) * width));
        s.push_str("\n     ");
        for k in 0..=kshow {
            s.push_str(&format!("{k:>width$}"));
        }
        s.push('\n');
        s
    }
}

/// Image chosen for one generator; `None` when `d_r` of that generator has
/// no target inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImage {
    pub generator: PageElement,
    pub image: Option<PageElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialAssignment {
    pub r: usize,
    pub images: Vec<GeneratorImage>,
}

impl DifferentialAssignment {
    pub fn zero(page: &Page) -> Self {
        let r = page.r;
        DifferentialAssignment {
            r,
            images: page
                .generators
                .iter()
                .map(|g| GeneratorImage {
                    generator: g.clone(),
                    image: page
                        .window
                        .target(r, g.k, g.l)
                        .map(|(k, l)| page.zero_at(k, l)),
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images
            .iter()
            .all(|gi| gi.image.as_ref().is_none_or(PageElement::is_zero))
    }

    /// Sets the image of the generator at `generator`'s position.
    pub fn with(
        mut self,
        generator: &PageElement,
        image: PageElement,
    ) -> Result<Self, SpectralError> {
        let slot = self
            .images
            .iter_mut()
            .find(|gi| gi.generator == *generator)
            .ok_or_else(|| SpectralError::BadAssignment("not a generator of this page".into()))?;
        slot.image = Some(image);
        Ok(self)
    }

    /// `generator→image` pairs, for generators that have somewhere to go.
    pub fn describe(&self, page: &Page) -> Vec<(String, String)> {
        self.images
            .iter()
            .filter_map(|gi| {
                gi.image
                    .as_ref()
                    .filter(|im| page.dim(im.k, im.l) > 0)
                    .map(|im| (page.label(&gi.generator), page.label(im)))
            })
            .collect()
    }
}

/// `d_r` as one matrix per bigrade, in page coordinates. `None` marks
/// bigrades whose target lies outside the window.
#[derive(Clone, Debug)]
pub struct FullDifferential {
    r: usize,
    window: Window,
    matrices: Vec<Option<BitMatrix>>,
}

impl FullDifferential {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self, k: usize, l: usize) -> Option<&BitMatrix> {
        if !self.window.contains(k, l) {
            return None;
        }
        self.matrices[self.window.index(k, l)].as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().flatten().all(BitMatrix::is_zero)
    }

    /// Applies `d_r`; `None` if the target is outside the window.
    pub fn apply(&self, e: &PageElement) -> Option<PageElement> {
        let (k, l) = self.window.target(self.r, e.k, e.l)?;
        let m = self.matrix(e.k, e.l)?;
        Some(PageElement {
            k,
            l,
            coords: m.mul_vec(&e.coords),
        })
    }
}

/// Extends the assignment to the derivation it determines, computing the
/// matrices without checking consistency.
pub fn leibniz_matrices(
    page: &Page,
    assign: &DifferentialAssignment,
) -> Result<FullDifferential, SpectralError> {
    let r = page.r;
    let w = page.window;
    if assign.r != r {
        return Err(SpectralError::BadAssignment(format!(
            "assignment is for d{} but the page is E{r}",
            assign.r
        )));
    }
    if assign.images.len() != page.generators.len() {
        return Err(SpectralError::BadAssignment(
            "assignment does not cover the page's generators".into(),
        ));
    }
    let mut images: HashMap<(usize, usize), Vec<(BitVec, BitVec)>> = HashMap::new();
    let mut gen_image: Vec<Option<PageElement>> = Vec::new();
    for (gi, g) in assign.images.iter().zip(&page.generators) {
        if gi.generator != *g {
            return Err(SpectralError::BadAssignment(
                "generator order mismatch".into(),
            ));
        }
        let target = w.target(r, g.k, g.l);
        let image = match (&gi.image, target) {
            (Some(im), Some((tk, tl))) => {
                if (im.k, im.l) != (tk, tl) || im.coords.len() != page.dim(tk, tl) {
                    return Err(SpectralError::BadAssignment(format!(
                        "image of {} must lie in E{r}^({tk},{tl})",
                        page.label(g)
                    )));
                }
                Some(im.clone())
            }
            (None, _) => target.map(|(tk, tl)| page.zero_at(tk, tl)),
            (Some(im), None) => {
                if !im.is_zero() {
                    return Err(SpectralError::BadAssignment(format!(
                        "{} has no target for d{r}",
                        page.label(g)
                    )));
                }
                None
            }
        };
        if let Some(im) = &image {
            images
                .entry((g.k, g.l))
                .or_default()
                .push((g.coords.clone(), im.coords.clone()));
        }
        gen_image.push(image);
    }

    let mut matrices: Vec<Option<BitMatrix>> = vec![None; w.cells()];
    for (k, l) in w.ordered() {
        let Some((tk, tl)) = w.target(r, k, l) else {
            continue;
        };
        let n = page.dim(k, l);
        let tn = page.dim(tk, tl);
        if n == 0 || tn == 0 || (k, l) == (0, 0) {
            matrices[w.index(k, l)] = Some(BitMatrix::zeros(tn, n));
            continue;
        }
        let mut sources: Vec<BitVec> = Vec::new();
        let mut values: Vec<BitVec> = Vec::new();
        for (src, img) in images.get(&(k, l)).into_iter().flatten() {
            sources.push(src.clone());
            values.push(img.clone());
        }
        for (g, dg) in page.generators.iter().zip(&gen_image) {
            if g.k > k || g.l > l || (g.k, g.l) == (k, l) {
                continue;
            }
            let (kc, lc) = (k - g.k, l - g.l);
            for i in 0..page.dim(kc, lc) {
                let c = page.basis_element(kc, lc, i);
                let Product::In(prod) = page.product(g, &c)? else {
                    continue;
                };
                let value = leibniz_value(page, &matrices, g, dg.as_ref(), &c)?;
                sources.push(prod.coords);
                values.push(value);
            }
        }
        let solver = Solver::new(n, &sources);
        if solver.rank() < n {
            return Err(SpectralError::UnsupportedInstance(format!(
                "E{r}^({k},{l}) is not generated by the page generators"
            )));
        }
        let columns: Vec<BitVec> = (0..n)
            .map(|i| {
                let combo = solver.solve(&BitVec::unit(n, i)).expect("full rank");
                let mut out = BitVec::zeros(tn);
                for j in combo.ones() {
                    out.xor_assign(&values[j]);
                }
                out
            })
            .collect();
        matrices[w.index(k, l)] = Some(BitMatrix::from_columns(tn, &columns));
    }
    Ok(FullDifferential {
        r,
        window: w,
        matrices,
    })
}

/// `d(g)·c + g·d(c)` at the target bigrade of `g·c`, in page coordinates.
fn leibniz_value(
    page: &Page,
    matrices: &[Option<BitMatrix>],
    g: &PageElement,
    dg: Option<&PageElement>,
    c: &PageElement,
) -> Result<BitVec, SpectralError> {
    let w = page.window;
    let (tk, tl) = w
        .target(page.r, g.k + c.k, g.l + c.l)
        .expect("caller checked the target");
    let mut out = BitVec::zeros(page.dim(tk, tl));
    if let Some(dg) = dg {
        if let Product::In(e) = page.product(dg, c)? {
            out.xor_assign(&e.coords);
        }
    }
    if w.target(page.r, c.k, c.l).is_some() {
        let m = matrices[w.index(c.k, c.l)]
            .as_ref()
            .expect("lower bigrades are processed first");
        let dc = PageElement {
            k: c.k + page.r,
            l: c.l + 1 - page.r,
            coords: m.mul_vec(&c.coords),
        };
        if let Product::In(e) = page.product(g, &dc)? {
            out.xor_assign(&e.coords);
        }
    }
    Ok(out)
}

/// Extends generator images to all of `E_r` by the derivation rule and
/// checks that the result is well defined and squares to zero.
pub fn extend_leibniz(
    page: &Page,
    assign: &DifferentialAssignment,
) -> Result<FullDifferential, SpectralError> {
    let d = leibniz_matrices(page, assign)?;
    check_derivation(page, &d, assign)?;
    check_square_zero(page, &d)?;
    Ok(d)
}

fn check_derivation(
    page: &Page,
    d: &FullDifferential,
    assign: &DifferentialAssignment,
) -> Result<(), SpectralError> {
    let w = page.window;
    let r = page.r;
    for gi in &assign.images {
        let g = &gi.generator;
        let dg = gi
            .image
            .clone()
            .or_else(|| w.target(r, g.k, g.l).map(|(k, l)| page.zero_at(k, l)));
        for (kc, lc) in w.ordered() {
            if (kc, lc) == (0, 0) {
                continue;
            }
            let (k, l) = (g.k + kc, g.l + lc);
            if k + r > w.kmax || l + 1 < r || l + 1 - r > w.lmax {
                continue;
            }
            let (tk, tl) = (k + r, l + 1 - r);
            for i in 0..page.dim(kc, lc) {
                let c = page.basis_element(kc, lc, i);
                let (direct, product_label) = match page.product(g, &c)? {
                    Product::OutOfWindow => continue,
                    Product::Vanishes => (BitVec::zeros(page.dim(tk, tl)), "0".to_string()),
                    Product::In(p) => {
                        let m = d.matrix(k, l).expect("target inside the window");
                        (m.mul_vec(&p.coords), page.label(&p))
                    }
                };
                let leibniz = leibniz_value(page, &d.matrices, g, dg.as_ref(), &c)?;
                if direct != leibniz {
                    let at = |coords: BitVec| PageElement {
                        k: tk,
                        l: tl,
                        coords,
                    };
                    return Err(SpectralError::IllDefined(Box::new(LeibnizWitness {
                        r,
                        generator: page.label(g),
                        class: page.label(&c),
                        product: product_label,
                        direct: page.label(&at(direct)),
                        leibniz: page.label(&at(leibniz)),
                        target: (tk, tl),
                    })));
                }
            }
        }
    }
    Ok(())
}

fn check_square_zero(page: &Page, d: &FullDifferential) -> Result<(), SpectralError> {
    let w = page.window;
    let r = page.r;
    for (k, l) in w.ordered() {
        let Some(first) = d.matrix(k, l) else {
            continue;
        };
        let Some((tk, tl)) = w.target(r, k, l) else {
            continue;
        };
        let Some(second) = d.matrix(tk, tl) else {
            continue;
        };
        let composite = second.mul(first);
        if let Some(i) = (0..composite.cols()).find(|&i| !composite.column(i).is_zero()) {
            let c = page.basis_element(k, l, i);
            let dc = d.apply(&c).expect("target inside the window");
            let ddc = d.apply(&dc).expect("target inside the window");
            return Err(SpectralError::NotSquareZero(Box::new(SquareWitness {
                r,
                class: page.label(&c),
                image: page.label(&dc),
                image_of_image: page.label(&ddc),
            })));
        }
    }
    Ok(())
}

/// `E_{r+1} = ker d_r / im d_r`, bigrade by bigrade.
pub fn turn_page(page: &Page, d: &FullDifferential) -> Result<Page, SpectralError> {
    if d.r != page.r || d.window != page.window {
        return Err(SpectralError::BadAssignment(
            "differential belongs to a different page".into(),
        ));
    }
    let w = page.window;
    let r = page.r;
    let mut cells = Vec::with_capacity(w.cells());
    for k in 0..=w.kmax {
        for l in 0..=w.lmax {
            let cell = page.cell(k, l);
            let n = cell.dim();
            let cycles_here = match d.matrix(k, l) {
                Some(m) => kernel(m),
                None => Subspace::full(n),
            };
            let boundaries_here = if k >= r && l + r - 1 <= w.lmax {
                match d.matrix(k - r, l + r - 1) {
                    Some(m) => image(m),
                    None => Subspace::zero(n),
                }
            } else {
                Subspace::zero(n)
            };
            let lift_all =
                |s: &Subspace| -> Vec<BitVec> { s.basis().iter().map(|c| cell.lift(c)).collect() };
            let cycles = cell.boundaries.sum(&Subspace::span(
                cell.cycles.ambient_dim(),
                lift_all(&cycles_here),
            ));
            let boundaries = cell.boundaries.sum(&Subspace::span(
                cell.cycles.ambient_dim(),
                lift_all(&boundaries_here),
            ));
            cells.push(Cell::new(cycles, boundaries)?);
        }
    }
    Page::assemble(r + 1, w, page.fiber.clone(), cells)
}

/// No later differential can be nonzero for bidegree reasons: every source
/// that is nonzero now has a zero target on every later page.
pub fn is_stable(page: &Page) -> bool {
    let w = page.window;
    for r in page.r..=w.lmax + 1 {
        for k in 0..=w.kmax {
            for l in 0..=w.lmax {
                if page.dim(k, l) == 0 {
                    continue;
                }
                if let Some((tk, tl)) = w.target(r, k, l) {
                    if page.dim(tk, tl) > 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `dim H^j = Σ_k dim E^{k, j-k}` for `j ≤ jmax`.
pub fn total_dims(einf: &Page, jmax: usize) -> Result<Vec<usize>, SpectralError> {
    let w = einf.window;
    if jmax > w.kmax {
        return Err(SpectralError::WindowTooSmall { jmax, kmax: w.kmax });
    }
    Ok((0..=jmax)
        .map(|j| {
            (0..=j)
                .filter(|&k| j - k <= w.lmax)
                .map(|k| einf.dim(k, j - k))
                .sum()
        })
        .collect())
}
