//! The two labeled sums over arrow labelings: the subrepresentation count
//! `N(β,α)` (Schur functor multiplicities of `S^{(γ(x)^{β(x)})}`) and the
//! semi-invariant dimension `M(β,α)` (exterior power multiplicities,
//! evaluated through conjugate partitions), plus the fiber class expansion
//! and the triple flag instances.
//!
//! Throughout, `γ = α − β`, and an arrow labeling assigns to every arrow `a`
//! a partition inside the `β(ta) × γ(ha)` rectangle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::covariants::VertexLabeling;
use crate::lr::{LrEngine, SchubertElement};
use crate::partition::{Partition, PartitionError, Rectangle};
use crate::quiver::{euler_form_unchecked, DimVector, Quiver, QuiverError, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("beta exceeds alpha at vertex {vertex} ({beta} > {alpha})")]
    NegativeGamma { vertex: usize, beta: usize, alpha: usize },
    #[error("nonzero Euler pairing; use fiber-class (<beta,gamma> = {0})")]
    NonzeroEuler(i64),
    #[error("negative Euler pairing <beta,gamma> = {0}; the general fiber is empty")]
    NegativeEuler(i64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// One partition per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowLabeling(pub Vec<Partition>);

impl fmt::Display for ArrowLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(i, p)| format!("{i}:{p}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// `γ = α − β`, rejecting negative entries.
pub fn gamma_of(q: &Quiver, beta: &DimVector, alpha: &DimVector) -> Result<DimVector, CountError> {
    q.check_len(beta.len())?;
    q.check_len(alpha.len())?;
    beta.0
        .iter()
        .zip(&alpha.0)
        .enumerate()
        .map(|(vertex, (&b, &a))| {
            a.checked_sub(b).ok_or(CountError::NegativeGamma {
                vertex,
                beta: b,
                alpha: a,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DimVector)
}

/// `σ(x) = β(x) − Σ_{ha = x} β(ta)`.
pub fn weight_of(q: &Quiver, beta: &DimVector) -> Result<Weight, CountError> {
    q.check_len(beta.len())?;
    let mut sigma: Vec<i64> = beta.0.iter().map(|&b| b as i64).collect();
    for a in q.arrows() {
        sigma[a.head] -= beta[a.tail] as i64;
    }
    Ok(Weight(sigma))
}

fn zero_pairing_gamma(q: &Quiver, beta: &DimVector, alpha: &DimVector) -> Result<DimVector, CountError> {
    let gamma = gamma_of(q, beta, alpha)?;
    match euler_form_unchecked(q, beta, &gamma) {
        0 => Ok(gamma),
        e => Err(CountError::NonzeroEuler(e)),
    }
}

fn arrow_rectangles(q: &Quiver, beta: &DimVector, gamma: &DimVector) -> Vec<Rectangle> {
    q.arrows()
        .iter()
        .map(|a| Rectangle::new(beta[a.tail], gamma[a.head]))
        .collect()
}

/// A nonzero summand of the labeled sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub labeling: ArrowLabeling,
    pub value: BigUint,
}

/// Result of evaluating the subrepresentation-count sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSum {
    pub total: BigUint,
    /// Complete labelings that survived the degree prune.
    pub examined: u64,
    /// Nonzero summands in canonical enumeration order (empty unless requested).
    pub summands: Vec<Summand>,
}

/// `N(β, α)`, the number of β-dimensional subrepresentations of a general
/// α-dimensional representation. Requires `⟨β, α−β⟩ = 0`.
pub fn count_subreps(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
) -> Result<BigUint, CountError> {
    Ok(count_subreps_detailed(engine, q, beta, alpha, false)?.total)
}

/// As [`count_subreps`], optionally listing every nonzero summand.
pub fn count_subreps_detailed(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
    list_summands: bool,
) -> Result<LabeledSum, CountError> {
    let gamma = zero_pairing_gamma(q, beta, alpha)?;
    let search = SubrepSum::new(engine, q, beta, &gamma, list_summands);
    Ok(search.run())
}

/// Depth-first evaluation of the `N` sum over arrows in index order.
///
/// Each vertex has a degree budget `β(x)γ(x)`; an arrow contributes `|λ(a)|`
/// to its tail and `|λ̄(a)|` to its head. A branch dies as soon as a budget
/// is overshot or can no longer be met, and a vertex's multiplicity is
/// evaluated the moment its last incident arrow is labeled.
struct SubrepSum<'a> {
    engine: &'a LrEngine,
    q: &'a Quiver,
    targets: Vec<Partition>,
    budgets: Vec<usize>,
    /// Some isolated vertex has a nonempty target, so every summand is 0.
    dead: bool,
    choices: Vec<Vec<(Partition, Partition)>>,
    /// Vertices whose last incident arrow is arrow `i`.
    completes_at: Vec<Vec<usize>>,
    /// `reach[i][x]`: largest degree arrows `i..` can still add at `x`.
    reach: Vec<Vec<usize>>,
    list_summands: bool,
}

struct Branch {
    labels: Vec<Partition>,
    complements: Vec<Partition>,
    degree: Vec<usize>,
    product: BigUint,
    out: LabeledSum,
}

impl<'a> SubrepSum<'a> {
    fn new(engine: &'a LrEngine, q: &'a Quiver, beta: &DimVector, gamma: &DimVector, list_summands: bool) -> Self {
        let n = q.nvertices();
        let rects = arrow_rectangles(q, beta, gamma);
        let choices = rects
            .iter()
            .map(|r| {
                r.partitions()
                    .into_iter()
                    .map(|p| {
                        let c = p.complement(*r).expect("enumerated inside the rectangle");
                        (p, c)
                    })
                    .collect()
            })
            .collect();
        let mut completes_at = vec![Vec::new(); q.narrows()];
        let mut isolated = Vec::new();
        for x in 0..n {
            match (0..q.narrows())
                .rev()
                .find(|&i| q.arrow(i).tail == x || q.arrow(i).head == x)
            {
                Some(i) => completes_at[i].push(x),
                None => isolated.push(x),
            }
        }
        let mut reach = vec![vec![0usize; n]; q.narrows() + 1];
        for i in (0..q.narrows()).rev() {
            reach[i] = reach[i + 1].clone();
            let a = q.arrow(i);
            reach[i][a.tail] += rects[i].area();
            reach[i][a.head] += rects[i].area();
        }
        let budgets: Vec<usize> = (0..n).map(|x| beta[x] * gamma[x]).collect();
        // A vertex with no arrows contributes mult(S^{(γ^β)}; trivial), which
        // is 1 exactly when the rectangle is empty.
        let dead = isolated.iter().any(|&x| budgets[x] != 0);
        SubrepSum {
            engine,
            q,
            targets: (0..n).map(|x| Partition::rectangle(beta[x], gamma[x])).collect(),
            budgets,
            dead,
            choices,
            completes_at,
            reach,
            list_summands,
        }
    }

    fn run(&self) -> LabeledSum {
        let empty = LabeledSum {
            total: BigUint::zero(),
            examined: 0,
            summands: Vec::new(),
        };
        if self.dead {
            return empty;
        }
        let n = self.q.nvertices();
        let fresh = || Branch {
            labels: Vec::with_capacity(self.q.narrows()),
            complements: Vec::with_capacity(self.q.narrows()),
            degree: vec![0; n],
            product: BigUint::one(),
            out: LabeledSum {
                total: BigUint::zero(),
                examined: 0,
                summands: Vec::new(),
            },
        };
        if self.q.narrows() == 0 {
            let mut b = fresh();
            self.descend(0, &mut b);
            return b.out;
        }
        // Split on the first arrow; results are merged in choice order so the
        // summand listing is independent of scheduling.
        let parts: Vec<LabeledSum> = (0..self.choices[0].len())
            .into_par_iter()
            .map(|c| {
                let mut b = fresh();
                self.try_choice(0, c, &mut b);
                b.out
            })
            .collect();
        parts.into_iter().fold(empty, |mut acc, p| {
            acc.total += p.total;
            acc.examined += p.examined;
            acc.summands.extend(p.summands);
            acc
        })
    }

    fn descend(&self, i: usize, b: &mut Branch) {
        if i == self.q.narrows() {
            b.out.examined += 1;
            if !b.product.is_zero() {
                b.out.total += &b.product;
                if self.list_summands {
                    b.out.summands.push(Summand {
                        labeling: ArrowLabeling(b.labels.clone()),
                        value: b.product.clone(),
                    });
                }
            }
            return;
        }
        for c in 0..self.choices[i].len() {
            self.try_choice(i, c, b);
        }
    }

    fn try_choice(&self, i: usize, c: usize, b: &mut Branch) {
        let a = self.q.arrow(i);
        let (lam, comp) = &self.choices[i][c];
        let (t, h) = (a.tail, a.head);
        b.degree[t] += lam.size();
        b.degree[h] += comp.size();
        let feasible = [t, h].iter().all(|&x| {
            let d = b.degree[x];
            d <= self.budgets[x] && d + self.reach[i + 1][x] >= self.budgets[x]
        });
        if feasible {
            b.labels.push(lam.clone());
            b.complements.push(comp.clone());
            let saved = b.product.clone();
            let mut alive = true;
            for &x in &self.completes_at[i] {
                let m = self.vertex_factor(x, &b.labels, &b.complements);
                if m.is_zero() {
                    alive = false;
                    break;
                }
                b.product *= m;
            }
            if alive {
                self.descend(i + 1, b);
            }
            b.product = saved;
            b.labels.pop();
            b.complements.pop();
        }
        b.degree[t] -= lam.size();
        b.degree[h] -= comp.size();
    }

    /// `mult(S^{(γ(x)^{β(x)})}; ⊗_{ta=x} S^{λ(a)} ⊗ ⊗_{ha=x} S^{λ̄(a)})`.
    fn vertex_factor(&self, x: usize, labels: &[Partition], complements: &[Partition]) -> BigUint {
        let mut factors = Vec::new();
        for i in self.q.arrows_out_of(x) {
            factors.push(labels[i].clone());
        }
        for i in self.q.arrows_into(x) {
            factors.push(complements[i].clone());
        }
        self.engine.tensor_multiplicity(&self.targets[x], &factors)
    }
}

/// `M(β, α) = dim SI(Q, α−β)_{⟨β,·⟩}`. Requires `⟨β, α−β⟩ = 0`.
///
/// Each labeling contributes `∏_x mult(⋀^{(γ(x)^{β(x)})}; ⊗_{ta=x} ⋀^{λ(a)} ⊗
/// ⊗_{ha=x} ⋀^{λ̄(a)})`. Since `⋀^λ = S^{λ'}`, each factor is evaluated as
/// the multiplicity of `S^{(β(x)^{γ(x)})}` in the product of the conjugates.
/// Labelings are walked with a plain odometer, independently of the
/// search used for `N`.
pub fn si_dimension(engine: &LrEngine, q: &Quiver, beta: &DimVector, alpha: &DimVector) -> Result<BigUint, CountError> {
    let gamma = zero_pairing_gamma(q, beta, alpha)?;
    let n = q.nvertices();
    let rects = arrow_rectangles(q, beta, &gamma);
    let lists: Vec<Vec<(Partition, Partition)>> = rects
        .iter()
        .map(|r| {
            r.partitions()
                .into_iter()
                .map(|p| {
                    let c = p.complement(*r).expect("enumerated inside the rectangle").conjugate();
                    (p.conjugate(), c)
                })
                .collect()
        })
        .collect();
    let targets: Vec<Partition> = (0..n).map(|x| Partition::rectangle(gamma[x], beta[x])).collect();
    let mut digits = vec![0usize; q.narrows()];
    let mut total = BigUint::zero();
    'labelings: loop {
        let mut factors: Vec<Vec<Partition>> = vec![Vec::new(); n];
        for (i, a) in q.arrows().iter().enumerate() {
            let (lam, comp) = &lists[i][digits[i]];
            factors[a.tail].push(lam.clone());
            factors[a.head].push(comp.clone());
        }
        let degrees_ok = (0..n).all(|x| factors[x].iter().map(Partition::size).sum::<usize>() == targets[x].size());
        if degrees_ok {
            let mut product = BigUint::one();
            for x in 0..n {
                let m = engine.tensor_multiplicity(&targets[x], &factors[x]);
                if m.is_zero() {
                    product = m;
                    break;
                }
                product *= m;
            }
            total += product;
        }
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < lists[i].len() {
                continue 'labelings;
            }
            digits[i] = 0;
        }
        break;
    }
    Ok(total)
}

/// Both sides of `N(β,α) = M(β,α)` for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n_value: BigUint,
    pub m_value: BigUint,
    pub euler_pairing: i64,
    pub sigma: Weight,
    pub labelings_examined: u64,
    pub summands: Vec<Summand>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.n_value == self.m_value
    }
}

pub fn verify_theorem1(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
) -> Result<CountReport, CountError> {
    let n = count_subreps_detailed(engine, q, beta, alpha, true)?;
    let m = si_dimension(engine, q, beta, alpha)?;
    Ok(CountReport {
        n_value: n.total,
        m_value: m,
        euler_pairing: 0,
        sigma: weight_of(q, beta)?,
        labelings_examined: n.examined,
        summands: n.summands,
    })
}

/// The class of a general fiber, keyed by vertex labelings `μ̲`: the term
/// `∏_x [complement(μ̲(x))]_x` has coefficient `N(β, α, μ̲)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberClass {
    pub ambient: Vec<Rectangle>,
    pub coeffs: BTreeMap<VertexLabeling, BigUint>,
}

impl FiberClass {
    pub fn coefficient(&self, key: &VertexLabeling) -> BigUint {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next().map(VertexLabeling::size)
    }
}

/// Expands `∏_a Σ_{λ ⊆ β(ta)×γ(ha)} [λ]_{ta}[λ̄]_{ha}` in the tensor
/// product of the cohomology rings of the Grassmannians `Gr(β(x), α(x))`.
pub fn fiber_class(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
) -> Result<FiberClass, CountError> {
    let gamma = gamma_of(q, beta, alpha)?;
    let pairing = euler_form_unchecked(q, beta, &gamma);
    if pairing < 0 {
        return Err(CountError::NegativeEuler(pairing));
    }
    let n = q.nvertices();
    let ambient: Vec<Rectangle> = (0..n).map(|x| Rectangle::new(beta[x], gamma[x])).collect();
    let mut state: BTreeMap<Vec<Partition>, BigUint> = BTreeMap::new();
    state.insert(vec![Partition::empty(); n], BigUint::one());
    for (a, rect) in q.arrows().iter().zip(arrow_rectangles(q, beta, &gamma)) {
        let mut next: BTreeMap<Vec<Partition>, BigUint> = BTreeMap::new();
        for lam in rect.partitions() {
            let comp = lam.complement(rect)?;
            let left = SchubertElement::basis(lam, ambient[a.tail]).ok();
            let right = SchubertElement::basis(comp, ambient[a.head]).ok();
            // Classes outside the vertex rectangle vanish.
            let (Some(left), Some(right)) = (left, right) else {
                continue;
            };
            for (key, coeff) in &state {
                let at_tail = SchubertElement::basis(key[a.tail].clone(), ambient[a.tail])
                    .and_then(|e| e.multiply(&left, engine))
                    .expect("same ambient");
                for (p, c1) in at_tail.terms() {
                    let mut partial = key.clone();
                    partial[a.tail] = p.clone();
                    let at_head = SchubertElement::basis(partial[a.head].clone(), ambient[a.head])
                        .and_then(|e| e.multiply(&right, engine))
                        .expect("same ambient");
                    for (r, c2) in at_head.terms() {
                        let mut full = partial.clone();
                        full[a.head] = r.clone();
                        *next.entry(full).or_default() += coeff * c1 * c2;
                    }
                }
            }
        }
        state = next;
    }
    let mut coeffs = BTreeMap::new();
    for (nu, c) in state {
        let mu = nu
            .iter()
            .zip(&ambient)
            .map(|(p, r)| p.complement(*r))
            .collect::<Result<Vec<_>, _>>()?;
        let key = VertexLabeling(mu);
        debug_assert_eq!(key.size() as i64, pairing);
        coeffs.insert(key, c);
    }
    Ok(FiberClass { ambient, coeffs })
}

/// A triple flag quiver instance whose subrepresentation count is an LR
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleFlag {
    pub quiver: Quiver,
    pub beta: DimVector,
    pub alpha: DimVector,
    pub expected: BigUint,
}

/// Three arms `1 → 2 → ⋯ → n−1` feeding a central vertex of dimension `n`,
/// all arrows pointing inward. Arm vertex `j` has dimension `j`.
///
/// Vertex indices: the λ arm is `0..n−1` (arm vertex `j` at `j−1`), then the
/// μ arm, then the ν arm, and the center last. On an arm labelled by `κ`,
/// `β(j) = #{i ∈ 1..r : n−r−κ_i+i ≤ j}`; the center has `β = r`.
pub fn triple_flag_instance(
    engine: &LrEngine,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    r: usize,
    n: usize,
) -> Result<TripleFlag, CountError> {
    if r > n {
        return Err(CountError::Invalid(format!("r = {r} exceeds n = {n}")));
    }
    let rect = Rectangle::new(r, n - r);
    for p in [lambda, mu, nu] {
        if !p.fits(rect) {
            return Err(PartitionError::DoesNotFit {
                partition: p.clone(),
                rows: r,
                cols: n - r,
            }
            .into());
        }
    }
    if lambda.size() + mu.size() + nu.size() != rect.area() {
        return Err(CountError::Invalid(format!(
            "|lambda|+|mu|+|nu| = {} but r(n-r) = {}",
            lambda.size() + mu.size() + nu.size(),
            rect.area()
        )));
    }
    let arm = n.saturating_sub(1);
    let center = 3 * arm;
    let mut arrows = Vec::new();
    for k in 0..3 {
        for j in 1..arm {
            arrows.push((k * arm + j - 1, k * arm + j));
        }
        if arm > 0 {
            arrows.push((k * arm + arm - 1, center));
        }
    }
    let quiver = Quiver::new(center + 1, arrows)?;
    let mut alpha = vec![0; center + 1];
    let mut beta = vec![0; center + 1];
    for (k, kappa) in [lambda, mu, nu].into_iter().enumerate() {
        for j in 1..=arm {
            alpha[k * arm + j - 1] = j;
            beta[k * arm + j - 1] = (1..=r).filter(|&i| n - r + i <= j + kappa.part(i - 1)).count();
        }
    }
    alpha[center] = n;
    beta[center] = r;
    let expected = BigUint::from(engine.lr_coefficient(lambda, mu, &nu.complement(rect)?));
    Ok(TripleFlag {
        quiver,
        beta: DimVector(beta),
        alpha: DimVector(alpha),
        expected,
    })
}
