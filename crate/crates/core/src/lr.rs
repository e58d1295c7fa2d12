//! Littlewood-Richardson coefficients, iterated Schur-functor tensor
//! multiplicities, and Schubert classes of a single Grassmannian.
//!
//! All memoization lives inside an [`LrEngine`]. An engine is `Sync`: its
//! tables sit behind mutexes, so one instance may be shared by concurrent
//! workers. Lock scopes never cover a computation, only a lookup or an
//! insert, so two workers can race to fill the same entry; both compute the
//! same value and the second insert is a no-op.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partition::{partitions_between, Partition, Rectangle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrError {
    #[error("Schubert classes live in different Grassmannians ({0} vs {1})")]
    AmbientMismatch(Rectangle, Rectangle),
    #[error("partition {0} is outside the {1} rectangle")]
    OutsideAmbient(Partition, Rectangle),
    #[error("Schur polynomial oracle needs {needed} variables, got {given}")]
    TooFewVariables { needed: usize, given: usize },
    #[error("Schur polynomial oracle supports at most 8 variables, got {0}")]
    TooManyVariables(usize),
}

/// Counts LR tableaux of shape `nu/lambda` with content `mu`: semistandard
/// fillings whose reverse reading word (right to left, top to bottom) is a
/// lattice word. No caching.
pub fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !lambda.is_contained_in(nu) || !mu.is_contained_in(nu) {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    // Cells of the skew shape in reading order.
    let mut cells = Vec::with_capacity(mu.size());
    for i in 0..nu.len() {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j));
        }
    }
    let width = nu.first_part();
    let mut filling = vec![0usize; nu.len() * width];
    let mut content = vec![0usize; mu.len() + 1];
    let mut search = TableauSearch {
        lambda,
        nu,
        mu,
        width,
        cells: &cells,
        filling: &mut filling,
        content: &mut content,
    };
    search.run(0)
}

struct TableauSearch<'a> {
    lambda: &'a Partition,
    nu: &'a Partition,
    mu: &'a Partition,
    width: usize,
    cells: &'a [(usize, usize)],
    filling: &'a mut [usize],
    content: &'a mut [usize],
}

impl TableauSearch<'_> {
    fn run(&mut self, idx: usize) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (i, j) = self.cells[idx];
        // Weakly increasing along the row: bounded by the cell to the right.
        let mut hi = self.mu.len();
        if j + 1 < self.nu.part(i) {
            hi = hi.min(self.filling[i * self.width + j + 1]);
        }
        // Strictly increasing down the column.
        let mut lo = 1;
        if i > 0 && j >= self.lambda.part(i - 1) {
            lo = self.filling[(i - 1) * self.width + j] + 1;
        }
        // A lattice word cannot use a value above the row index.
        hi = hi.min(i + 1);
        let mut total = 0;
        for v in lo..=hi {
            let used = self.content[v];
            if used >= self.mu.part(v - 1) {
                continue;
            }
            if v > 1 && used >= self.content[v - 1] {
                continue;
            }
            self.content[v] += 1;
            self.filling[i * self.width + j] = v;
            total += self.run(idx + 1);
            self.content[v] -= 1;
        }
        self.filling[i * self.width + j] = 0;
        total
    }
}

/// Association used when folding a tensor product of several Schur functors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldOrder {
    /// `((f0 ⊗ f1) ⊗ f2) ⊗ …`
    Left,
    /// `f0 ⊗ (f1 ⊗ (f2 ⊗ …))`
    Right,
    /// Split in half, expand each half, pair the halves.
    Balanced,
}

type Expansion = BTreeMap<Partition, BigUint>;

/// Memoizing LR calculator.
#[derive(Default)]
pub struct LrEngine {
    coefficients: Mutex<HashMap<(Partition, Partition, Partition), u64>>,
    multiplicities: Mutex<HashMap<(Partition, Vec<Partition>), BigUint>>,
}

impl LrEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c_{λ,μ}^{ν}`.
    pub fn lr_coefficient(&self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        if lambda.size() + mu.size() != nu.size() || !lambda.is_contained_in(nu) || !mu.is_contained_in(nu) {
            return 0;
        }
        if lambda.is_empty() || mu.is_empty() {
            return 1;
        }
        // Symmetric in (λ, μ); put the bigger one inside so the skew shape is small.
        let (outer, content) = if (lambda.size(), lambda) >= (mu.size(), mu) {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let key = (outer.clone(), content.clone(), nu.clone());
        if let Some(&c) = self.coefficients.lock().unwrap().get(&key) {
            return c;
        }
        let c = count_lr_tableaux(outer, content, nu);
        self.coefficients.lock().unwrap().insert(key, c);
        c
    }

    /// Multiplicity of `S^target` in `S^{f_0} ⊗ ⋯ ⊗ S^{f_{k-1}}`. The empty
    /// product is the trivial functor.
    pub fn tensor_multiplicity(&self, target: &Partition, factors: &[Partition]) -> BigUint {
        if let Some(zero) = self.trivially_zero(target, factors) {
            return zero;
        }
        let mut key_factors: Vec<Partition> = factors.iter().filter(|f| !f.is_empty()).cloned().collect();
        if key_factors.is_empty() {
            return BigUint::one();
        }
        if key_factors.len() == 1 {
            return BigUint::from((key_factors[0] == *target) as u8);
        }
        key_factors.sort();
        let key = (target.clone(), key_factors);
        if let Some(m) = self.multiplicities.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = self.fold_left(target, &key.1);
        self.multiplicities.lock().unwrap().insert(key, m.clone());
        m
    }

    /// Uncached tensor multiplicity with an explicit association. Every
    /// order must agree with [`LrEngine::tensor_multiplicity`].
    pub fn tensor_multiplicity_with(&self, target: &Partition, factors: &[Partition], order: FoldOrder) -> BigUint {
        if let Some(zero) = self.trivially_zero(target, factors) {
            return zero;
        }
        match order {
            FoldOrder::Left => self.fold_left(target, factors),
            FoldOrder::Right => {
                let mut state = unit_expansion();
                for f in factors.iter().rev() {
                    state = self.multiply_into(f, &state, target, true);
                }
                state.remove(target).unwrap_or_default()
            }
            FoldOrder::Balanced => {
                let mid = factors.len() / 2;
                let left = self.expand(target, &factors[..mid]);
                let right = self.expand(target, &factors[mid..]);
                let mut total = BigUint::zero();
                for (a, ma) in &left {
                    for (b, mb) in &right {
                        let c = self.lr_coefficient(a, b, target);
                        if c != 0 {
                            total += ma * mb * c;
                        }
                    }
                }
                total
            }
        }
    }

    fn trivially_zero(&self, target: &Partition, factors: &[Partition]) -> Option<BigUint> {
        let total: usize = factors.iter().map(Partition::size).sum();
        if total != target.size() || factors.iter().any(|f| !f.is_contained_in(target)) {
            Some(BigUint::zero())
        } else {
            None
        }
    }

    fn fold_left(&self, target: &Partition, factors: &[Partition]) -> BigUint {
        let Some((last, init)) = factors.split_last() else {
            return BigUint::from(target.is_empty() as u8);
        };
        let state = self.expand(target, init);
        let mut total = BigUint::zero();
        for (kappa, m) in &state {
            let c = self.lr_coefficient(kappa, last, target);
            if c != 0 {
                total += m * c;
            }
        }
        total
    }

    /// Expansion of the product of `factors`, keeping only constituents
    /// contained in `bound`.
    pub fn expand(&self, bound: &Partition, factors: &[Partition]) -> BTreeMap<Partition, BigUint> {
        let mut state = unit_expansion();
        for f in factors {
            state = self.multiply_into(f, &state, bound, false);
            if state.is_empty() {
                break;
            }
        }
        state
    }

    fn multiply_into(&self, factor: &Partition, state: &Expansion, bound: &Partition, factor_first: bool) -> Expansion {
        let mut next = Expansion::new();
        for (kappa, m) in state {
            for nu in partitions_between(kappa, bound, kappa.size() + factor.size()) {
                let c = if factor_first {
                    self.lr_coefficient(factor, kappa, &nu)
                } else {
                    self.lr_coefficient(kappa, factor, &nu)
                };
                if c != 0 {
                    *next.entry(nu).or_default() += m * c;
                }
            }
        }
        next
    }

    pub fn cached_coefficients(&self) -> usize {
        self.coefficients.lock().unwrap().len()
    }
}

fn unit_expansion() -> Expansion {
    let mut e = Expansion::new();
    e.insert(Partition::empty(), BigUint::one());
    e
}

/// A class in the cohomology ring of one Grassmannian, written in the
/// Schubert basis indexed by partitions inside `ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertElement {
    ambient: Rectangle,
    coeffs: BTreeMap<Partition, BigUint>,
}

impl SchubertElement {
    pub fn zero(ambient: Rectangle) -> Self {
        SchubertElement {
            ambient,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Rectangle) -> Self {
        Self::basis(Partition::empty(), ambient).expect("∅ fits every rectangle")
    }

    /// The Schubert class `[λ]`.
    pub fn basis(lambda: Partition, ambient: Rectangle) -> Result<Self, LrError> {
        Self::from_terms(ambient, [(lambda, BigUint::one())])
    }

    pub fn from_terms(
        ambient: Rectangle,
        terms: impl IntoIterator<Item = (Partition, BigUint)>,
    ) -> Result<Self, LrError> {
        let mut e = Self::zero(ambient);
        for (p, c) in terms {
            if !ambient.contains(&p) {
                return Err(LrError::OutsideAmbient(p, ambient));
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, p: Partition, c: BigUint) {
        if c.is_zero() {
            return;
        }
        *self.coeffs.entry(p).or_default() += c;
    }

    pub fn ambient(&self) -> Rectangle {
        self.ambient
    }

    pub fn coefficient(&self, p: &Partition) -> BigUint {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SchubertElement) -> Result<SchubertElement, LrError> {
        if self.ambient != other.ambient {
            return Err(LrError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    /// Cup product; classes outside the ambient rectangle vanish.
    pub fn multiply(&self, other: &SchubertElement, engine: &LrEngine) -> Result<SchubertElement, LrError> {
        if self.ambient != other.ambient {
            return Err(LrError::AmbientMismatch(self.ambient, other.ambient));
        }
        let full = self.ambient.full();
        let mut out = SchubertElement::zero(self.ambient);
        for (lambda, a) in &self.coeffs {
            for (mu, b) in &other.coeffs {
                for nu in partitions_between(lambda, &full, lambda.size() + mu.size()) {
                    let c = engine.lr_coefficient(lambda, mu, &nu);
                    if c != 0 {
                        out.add_term(nu, a * b * c);
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn schubert_multiply(
    a: &SchubertElement,
    b: &SchubertElement,
    engine: &LrEngine,
) -> Result<SchubertElement, LrError> {
    a.multiply(b, engine)
}

/// Monomial expansion of `s_λ(x_1, …, x_n)` by listing semistandard
/// tableaux. Keys are exponent vectors of length `nvars`.
pub fn schur_polynomial_oracle(lambda: &Partition, nvars: usize) -> Result<BTreeMap<Vec<usize>, u64>, LrError> {
    if nvars > 8 {
        return Err(LrError::TooManyVariables(nvars));
    }
    if nvars < lambda.len() {
        return Err(LrError::TooFewVariables {
            needed: lambda.len(),
            given: nvars,
        });
    }
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|i| (0..lambda.part(i)).map(move |j| (i, j)))
        .collect();
    let width = lambda.first_part().max(1);
    let mut filling = vec![0usize; lambda.len().max(1) * width];
    let mut exponent = vec![0usize; nvars];
    let mut out = BTreeMap::new();
    fill_ssyt(&cells, 0, width, nvars, &mut filling, &mut exponent, &mut out);
    Ok(out)
}

fn fill_ssyt(
    cells: &[(usize, usize)],
    idx: usize,
    width: usize,
    nvars: usize,
    filling: &mut [usize],
    exponent: &mut [usize],
    out: &mut BTreeMap<Vec<usize>, u64>,
) {
    if idx == cells.len() {
        *out.entry(exponent.to_vec()).or_default() += 1;
        return;
    }
    let (i, j) = cells[idx];
    let mut lo = 0;
    if j > 0 {
        lo = filling[i * width + j - 1];
    }
    if i > 0 {
        lo = lo.max(filling[(i - 1) * width + j] + 1);
    }
    for v in lo..nvars {
        filling[i * width + j] = v;
        exponent[v] += 1;
        fill_ssyt(cells, idx + 1, width, nvars, filling, exponent, out);
        exponent[v] -= 1;
    }
}
