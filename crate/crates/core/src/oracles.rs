//! Finite-field ground truth: exhaustive subrepresentation enumeration,
//! seeded sampling with modal voting, the determinant-rank estimate of a
//! semi-invariant weight space, and the `c^{V_i}` basis check.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{count_subreps, gamma_of, si_dimension, CountError};
use crate::field::{Elem, FieldError, FiniteField};
use crate::linalg::{rref_in_place, Matrix};
use crate::lr::LrEngine;
use crate::quiver::{euler_form_unchecked, random_rep_with, semiinvariant_cv, DimVector, FFRep, Quiver, QuiverError};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(
        "enumeration over F_{order} generated more than {budget} subspaces ({points} Grassmannian points in total)"
    )]
    BudgetExceeded { points: BigUint, order: u64, budget: u64 },
    #[error("gaussian binomial [{n} choose {r}] has r > n")]
    BadBinomial { n: usize, r: usize },
    #[error("sampling requires a prime base field, got F_{0}")]
    NotPrimeField(u64),
    #[error("nonzero Euler pairing <beta,gamma> = {0}")]
    NonzeroEuler(i64),
}

/// Number of `r`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> Result<BigUint, OracleError> {
    if r > n {
        return Err(OracleError::BadBinomial { n, r });
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=r {
        num *= q.pow((n - i + 1) as u32) - 1u32;
        den *= q.pow(i as u32) - 1u32;
    }
    Ok(num / den)
}

/// `∏_x [α(x) choose β(x)]_q`, the size of the unpruned search space.
pub fn grassmannian_points(alpha: &DimVector, beta: &DimVector, q: u64) -> Result<BigUint, OracleError> {
    let mut total = BigUint::one();
    for (&a, &b) in alpha.0.iter().zip(&beta.0) {
        total *= gaussian_binomial(a, b, q)?;
    }
    Ok(total)
}

/// Estimated number of subspaces the pruned search generates over `F_q`.
/// At each vertex in topological order the search chooses a subspace
/// containing the image of the incoming arrows, whose rank is taken to be
/// the generic `min(β(x), α(x), Σ_{ha=x} β(ta))`; the estimate sums the
/// products of these choice counts over the levels of the search.
pub fn search_cost(q: &Quiver, alpha: &DimVector, beta: &DimVector, order: u64) -> Result<BigUint, OracleError> {
    q.check_len(alpha.len())?;
    q.check_len(beta.len())?;
    let mut level = BigUint::one();
    let mut total = BigUint::default();
    for &x in q.topological_order() {
        let incoming: usize = q.arrows_into(x).map(|a| beta[q.arrow(a).tail]).sum();
        let r = incoming.min(beta[x]).min(alpha[x]);
        level *= gaussian_binomial(alpha[x] - r, beta[x] - r, order)?;
        total += &level;
    }
    Ok(total)
}

/// The quiver with every arrow reversed.
pub fn opposite(q: &Quiver) -> Quiver {
    Quiver::new(q.nvertices(), q.arrows().iter().map(|a| (a.head, a.tail))).expect("opposite of an acyclic quiver")
}

/// The transposed representation of [`opposite`]`(q)`. Taking annihilators
/// matches `β`-dimensional subrepresentations of `rep` with
/// `(α - β)`-dimensional subrepresentations of the dual.
pub fn dual_rep(q: &Quiver, rep: &FFRep) -> FFRep {
    let mats = rep.matrices().iter().map(Matrix::transpose).collect();
    FFRep::new(&opposite(q), rep.field().clone(), rep.dim().clone(), mats).expect("transposed shapes match")
}

/// Calls `f` with the row-major `d × m` reduced echelon basis of every
/// `d`-dimensional subspace of `F^m`, each subspace exactly once.
pub fn for_each_subspace(field: &FiniteField, m: usize, d: usize, mut f: impl FnMut(&[Elem])) {
    subspaces(field, m, d, &mut |rows| {
        f(rows);
        true
    });
}

/// Stops early once `f` returns `false`.
fn subspaces(field: &FiniteField, m: usize, d: usize, f: &mut dyn FnMut(&[Elem]) -> bool) {
    if d > m {
        return;
    }
    let mut pivots: Vec<usize> = (0..d).collect();
    let mut rows = vec![field.zero(); d * m];
    loop {
        // Free positions: row i, columns right of its pivot that are not pivots.
        let free: Vec<usize> = (0..d)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..m)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| i * m + c)
            })
            .collect();
        rows.iter_mut().for_each(|e| *e = field.zero());
        for (i, &p) in pivots.iter().enumerate() {
            rows[i * m + p] = field.one();
        }
        let order = field.order();
        let mut digits = vec![0u64; free.len()];
        'assign: loop {
            if !f(&rows) {
                return;
            }
            for k in (0..free.len()).rev() {
                digits[k] += 1;
                if digits[k] < order {
                    rows[free[k]] = field.from_packed(digits[k]);
                    continue 'assign;
                }
                digits[k] = 0;
                rows[free[k]] = field.zero();
            }
            break;
        }
        // Next pivot combination in lexicographic order.
        let Some(i) = (0..d).rev().find(|&i| pivots[i] < m - d + i) else {
            return;
        };
        pivots[i] += 1;
        for j in i + 1..d {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

/// Depth-first search over subspace tuples in topological order. At vertex
/// `x` the subspace must contain `R = Σ_{ha=x} V(a)W(ta)`; only subspaces
/// containing `R` are generated, as `R ⊕ T` with `T` a subspace of the
/// coordinates that are not pivots of `R`.
struct SubrepSearch<'a> {
    q: &'a Quiver,
    rep: &'a FFRep,
    beta: &'a DimVector,
    bases: Vec<Vec<Elem>>,
    /// Subspaces generated so far, and the cap on that number.
    nodes: u64,
    budget: u64,
}

impl SubrepSearch<'_> {
    fn run(&mut self, step: usize, visit: &mut dyn FnMut(&[Vec<Elem>])) {
        if self.nodes > self.budget {
            return;
        }
        let order = self.q.topological_order();
        if step == order.len() {
            visit(&self.bases);
            return;
        }
        let x = order[step];
        let f = self.rep.field().clone();
        let (m, b) = (self.rep.dim()[x], self.beta[x]);
        let mut span = Vec::new();
        let mut nspan = 0;
        for ai in self.q.arrows_into(x) {
            let t = self.q.arrow(ai).tail;
            let (va, wt, bt, mt) = (self.rep.matrix(ai), &self.bases[t], self.beta[t], self.rep.dim()[t]);
            for k in 0..bt {
                let w = &wt[k * mt..(k + 1) * mt];
                for r in 0..m {
                    let mut acc = f.zero();
                    for (c, &wc) in w.iter().enumerate() {
                        acc = f.add(acc, f.mul(va[(r, c)], wc));
                    }
                    span.push(acc);
                }
                nspan += 1;
            }
        }
        let pivots = rref_in_place(&mut span, nspan, m, &f);
        let rank = pivots.len();
        if rank > b {
            return;
        }
        span.truncate(rank * m);
        let free_cols: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        subspaces(&f, free_cols.len(), b - rank, &mut |t: &[Elem]| {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let mut basis = span.clone();
            for row in t.chunks(free_cols.len().max(1)).take(b - rank) {
                let mut full = vec![f.zero(); m];
                for (&c, &e) in free_cols.iter().zip(row) {
                    full[c] = e;
                }
                basis.extend(full);
            }
            let saved = std::mem::replace(&mut self.bases[x], basis);
            self.run(step + 1, visit);
            self.bases[x] = saved;
            self.nodes <= self.budget
        });
    }
}

/// Visits every `β`-dimensional subrepresentation of `rep`. Each is given
/// as one row-major `β(x) × α(x)` basis per vertex.
///
/// The search only generates subspaces containing the image of what has
/// already been chosen upstream, so its cost is usually far below
/// [`grassmannian_points`]. The budget caps the number of generated
/// subspaces; exceeding it aborts with [`OracleError::BudgetExceeded`].
pub fn for_each_subrep(
    q: &Quiver,
    rep: &FFRep,
    beta: &DimVector,
    budget: u64,
    mut visit: impl FnMut(&[Vec<Elem>]),
) -> Result<(), OracleError> {
    q.check_len(beta.len())?;
    gamma_of(q, beta, rep.dim())?;
    let mut search = SubrepSearch {
        q,
        rep,
        beta,
        bases: vec![Vec::new(); q.nvertices()],
        nodes: 0,
        budget,
    };
    search.run(0, &mut visit);
    if search.nodes > budget {
        return Err(OracleError::BudgetExceeded {
            points: grassmannian_points(rep.dim(), beta, rep.field().order())?,
            order: rep.field().order(),
            budget,
        });
    }
    Ok(())
}

/// Number of `β`-dimensional subrepresentations of `rep` over its field.
pub fn enumerate_subreps(q: &Quiver, rep: &FFRep, beta: &DimVector, budget: u64) -> Result<u64, OracleError> {
    let mut count = 0u64;
    for_each_subrep(q, rep, beta, budget, |_| count += 1)?;
    Ok(count)
}

/// Parameters of a sampling run.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    /// Prime base field.
    pub p: u64,
    /// Largest extension degree to enumerate over.
    pub max_degree: u32,
    pub trials: usize,
    pub seed: u64,
    pub budget: u64,
}

impl SamplePlan {
    pub fn new(p: u64, max_degree: u32, trials: usize, seed: u64) -> Self {
        SamplePlan {
            p,
            max_degree,
            trials,
            seed,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub seed: u64,
    /// `counts[j-1]` is the count over `F_{p^j}`, for the degrees that
    /// finished within the budget.
    pub counts: Vec<u64>,
    /// The enumeration over the next degree exceeded the budget. This only
    /// happens for samples far from general position.
    pub over_budget: bool,
}

impl Trial {
    /// The count over the largest extension, if it was reached.
    pub fn count(&self) -> Option<u64> {
        if self.over_budget {
            None
        } else {
            self.counts.last().copied()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubrepCount {
    pub p: u64,
    pub max_degree: u32,
    pub seed: u64,
    pub trials: Vec<Trial>,
    /// Final count → number of trials.
    pub tally: BTreeMap<u64, usize>,
    /// Trials that exceeded the budget.
    pub over_budget: usize,
    /// Most frequent final count; `None` when the top frequency is tied or
    /// is reached by the over-budget trials.
    pub modal: Option<u64>,
}

/// Seeds for the trials of a run, drawn from a ChaCha8 stream keyed by the
/// master seed.
pub fn trial_seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.next_u64()).collect()
}

/// Samples representations over `F_p` and counts their subrepresentations
/// over `F_{p^j}`, `j = 1..=max_degree`, taking the modal count at the
/// largest degree across trials. Counting runs on the dual representation
/// when [`search_cost`] says that is cheaper. A trial that exceeds the
/// budget votes for no count; the call fails only when every trial does.
pub fn sampled_subrep_count(
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
    plan: &SamplePlan,
) -> Result<SubrepCount, OracleError> {
    let gamma = gamma_of(q, beta, alpha)?;
    let pairing = euler_form_unchecked(q, beta, &gamma);
    if pairing != 0 {
        return Err(OracleError::NonzeroEuler(pairing));
    }
    let base = FiniteField::prime(plan.p)?;
    let fields = (1..=plan.max_degree)
        .map(|j| FiniteField::new(plan.p, j))
        .collect::<Result<Vec<_>, _>>()?;
    if fields.is_empty() {
        return Err(FieldError::BadDegree(0).into());
    }
    let top = fields[fields.len() - 1].order();
    let op = opposite(q);
    let use_dual = search_cost(&op, alpha, &gamma, top)? < search_cost(q, alpha, beta, top)?;
    let trials = trial_seeds(plan.seed, plan.trials)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = random_rep_with(q, alpha, &base, &mut rng)?;
            let mut trial = Trial {
                seed,
                counts: Vec::new(),
                over_budget: false,
            };
            for f in &fields {
                let ext = v.extend_to(f);
                let count = if use_dual {
                    enumerate_subreps(&op, &dual_rep(q, &ext), &gamma, plan.budget)
                } else {
                    enumerate_subreps(q, &ext, beta, plan.budget)
                };
                match count {
                    Ok(c) => trial.counts.push(c),
                    Err(e @ OracleError::BudgetExceeded { .. }) => {
                        trial.over_budget = true;
                        return Ok((trial, Some(e)));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok((trial, None))
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    if let Some(e) = trials.iter().map(|(_, e)| e.clone()).reduce(|a, b| a.and(b)).flatten() {
        return Err(e);
    }
    let trials: Vec<Trial> = trials.into_iter().map(|(t, _)| t).collect();
    let mut tally = BTreeMap::new();
    for c in trials.iter().filter_map(Trial::count) {
        *tally.entry(c).or_insert(0) += 1;
    }
    let over_budget = trials.iter().filter(|t| t.over_budget).count();
    let best = tally.values().copied().max().unwrap_or(0);
    let leaders: Vec<u64> = tally.iter().filter(|(_, &c)| c == best).map(|(&k, _)| k).collect();
    let modal = (leaders.len() == 1 && best > over_budget).then(|| leaders[0]);
    Ok(SubrepCount {
        p: plan.p,
        max_degree: plan.max_degree,
        seed: plan.seed,
        trials,
        tally,
        over_budget,
        modal,
    })
}

/// Rank of `[c^{V_i}(W_j)]` for `n_v` random `V_i` of dimension `β` and
/// `n_w` random `W_j` of dimension `γ`. Never exceeds `M(β, β+γ)`.
pub fn si_rank_oracle(
    q: &Quiver,
    beta: &DimVector,
    gamma: &DimVector,
    n_v: usize,
    n_w: usize,
    field: &FiniteField,
    seed: u64,
) -> Result<usize, OracleError> {
    q.check_len(beta.len())?;
    q.check_len(gamma.len())?;
    let pairing = euler_form_unchecked(q, beta, gamma);
    if pairing != 0 {
        return Err(OracleError::NonzeroEuler(pairing));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vs = (0..n_v)
        .map(|_| random_rep_with(q, beta, field, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let ws = (0..n_w)
        .map(|_| random_rep_with(q, gamma, field, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let mut eval = Matrix::zeros(n_v, n_w);
    for (i, v) in vs.iter().enumerate() {
        for (j, w) in ws.iter().enumerate() {
            eval[(i, j)] = semiinvariant_cv(q, v, w)?;
        }
    }
    Ok(eval.rank(field))
}

/// A subrepresentation `V_i ⊆ V` with the quotient `W_i = V / V_i`, both
/// read off `V` written in a basis adapted to `V_i`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub sub: FFRep,
    pub quotient: FFRep,
    /// Every arrow matrix was block upper triangular in the adapted basis.
    pub block_triangular: bool,
}

/// Completes the rows of `basis` (a `b × m` echelon-reducible matrix) to a
/// basis of `F^m` with unit vectors at the non-pivot columns. Returns the
/// change of basis matrix whose columns are the new basis vectors.
fn adapted_basis(basis: &[Elem], b: usize, m: usize, f: &FiniteField) -> Matrix {
    let mut reduced = basis.to_vec();
    let pivots = rref_in_place(&mut reduced, b, m, f);
    let mut p = Matrix::zeros(m, m);
    for i in 0..b {
        for r in 0..m {
            p[(r, i)] = reduced[i * m + r];
        }
    }
    for (k, c) in (0..m).filter(|c| !pivots.contains(c)).enumerate() {
        p[(c, b + k)] = f.one();
    }
    p
}

pub fn split_at(q: &Quiver, v: &FFRep, beta: &DimVector, bases: &[Vec<Elem>]) -> Result<Splitting, OracleError> {
    let f = v.field();
    let alpha = v.dim();
    let gamma = gamma_of(q, beta, alpha)?;
    let change: Vec<Matrix> = (0..q.nvertices())
        .map(|x| adapted_basis(&bases[x], beta[x], alpha[x], f))
        .collect();
    let mut block_triangular = true;
    let (mut subs, mut quots) = (Vec::new(), Vec::new());
    for (ai, a) in q.arrows().iter().enumerate() {
        let inv = change[a.head].inverse(f).expect("adapted basis is invertible");
        let m = inv.mul(v.matrix(ai), f).mul(&change[a.tail], f);
        let (bt, bh) = (beta[a.tail], beta[a.head]);
        block_triangular &= m.block(bh, alpha[a.head], 0, bt).is_zero();
        subs.push(m.block(0, bh, 0, bt));
        quots.push(m.block(bh, alpha[a.head], bt, alpha[a.tail]));
    }
    Ok(Splitting {
        sub: FFRep::new(q, f.clone(), beta.clone(), subs)?,
        quotient: FFRep::new(q, f.clone(), gamma, quots)?,
        block_triangular,
    })
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    /// Seed of the representation that was checked, if one was found.
    pub seed: Option<u64>,
    pub attempts: usize,
    pub n_value: BigUint,
    pub m_value: BigUint,
    /// Number of subrepresentations of the checked representation.
    pub k: usize,
    /// `[c^{V_i}(W_j)]`.
    pub evaluation: Option<Matrix>,
    pub block_triangular: bool,
    pub diagonal_nonzero: bool,
    pub off_diagonal_zero: bool,
    pub permutation_diagonal: bool,
    pub inconclusive: Option<String>,
}

impl BasisReport {
    pub fn passed(&self) -> bool {
        self.inconclusive.is_none()
            && self.block_triangular
            && self.diagonal_nonzero
            && self.off_diagonal_zero
            && self.permutation_diagonal
            && BigUint::from(self.k) == self.m_value
    }
}

fn permutation_diagonal(m: &Matrix, f: &FiniteField) -> bool {
    let nonzero = |r: usize, c: usize| !f.is_zero(m[(r, c)]);
    (0..m.rows()).all(|r| (0..m.cols()).filter(|&c| nonzero(r, c)).count() == 1)
        && (0..m.cols()).all(|c| (0..m.rows()).filter(|&r| nonzero(r, c)).count() == 1)
}

/// Checks that the `c^{V_i}` for the subrepresentations `V_i` of the given
/// `v` are dual to the quotients `W_i = V/V_i`.
pub fn verify_basis_for(
    engine: &LrEngine,
    q: &Quiver,
    v: &FFRep,
    beta: &DimVector,
    budget: u64,
) -> Result<BasisReport, OracleError> {
    let alpha = v.dim();
    let n_value = count_subreps(engine, q, beta, alpha)?;
    let m_value = si_dimension(engine, q, beta, alpha)?;
    let mut all = Vec::new();
    for_each_subrep(q, v, beta, budget, |b| all.push(b.to_vec()))?;
    let mut report = BasisReport {
        seed: None,
        attempts: 1,
        n_value: n_value.clone(),
        m_value,
        k: all.len(),
        evaluation: None,
        block_triangular: true,
        diagonal_nonzero: false,
        off_diagonal_zero: false,
        permutation_diagonal: false,
        inconclusive: None,
    };
    if BigUint::from(all.len()) != n_value {
        report.inconclusive = Some(format!(
            "representation has {} rational subrepresentations, expected {n_value}",
            all.len()
        ));
        return Ok(report);
    }
    let f = v.field();
    let splits = all
        .iter()
        .map(|b| split_at(q, v, beta, b))
        .collect::<Result<Vec<_>, _>>()?;
    let k = splits.len();
    let mut eval = Matrix::zeros(k, k);
    for (i, si) in splits.iter().enumerate() {
        for (j, sj) in splits.iter().enumerate() {
            eval[(i, j)] = semiinvariant_cv(q, &si.sub, &sj.quotient)?;
        }
    }
    report.block_triangular = splits.iter().all(|s| s.block_triangular);
    report.diagonal_nonzero = (0..k).all(|i| !f.is_zero(eval[(i, i)]));
    report.off_diagonal_zero = (0..k).all(|i| (0..k).all(|j| i == j || f.is_zero(eval[(i, j)])));
    report.permutation_diagonal = permutation_diagonal(&eval, f);
    report.evaluation = Some(eval);
    Ok(report)
}

/// Samples representations over `field` until one has exactly `N(β, α)`
/// rational subrepresentations, then runs [`verify_basis_for`] on it.
#[allow(clippy::too_many_arguments)]
pub fn verify_basis_corollary(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
    field: &FiniteField,
    seed: u64,
    max_attempts: usize,
    budget: u64,
) -> Result<BasisReport, OracleError> {
    let gamma = gamma_of(q, beta, alpha)?;
    let pairing = euler_form_unchecked(q, beta, &gamma);
    if pairing != 0 {
        return Err(OracleError::NonzeroEuler(pairing));
    }
    let n_value = count_subreps(engine, q, beta, alpha)?;
    let target = n_value.to_u64().unwrap_or(u64::MAX);
    for (attempt, s) in trial_seeds(seed, max_attempts).into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let v = random_rep_with(q, alpha, field, &mut rng)?;
        if enumerate_subreps(q, &v, beta, budget)? != target {
            continue;
        }
        let mut report = verify_basis_for(engine, q, &v, beta, budget)?;
        report.seed = Some(s);
        report.attempts = attempt + 1;
        return Ok(report);
    }
    Ok(BasisReport {
        seed: None,
        attempts: max_attempts,
        n_value,
        m_value: si_dimension(engine, q, beta, alpha)?,
        k: 0,
        evaluation: None,
        block_triangular: false,
        diagonal_nonzero: false,
        off_diagonal_zero: false,
        permutation_diagonal: false,
        inconclusive: Some(format!(
            "no sample among {max_attempts} had exactly {target} rational subrepresentations over {field}"
        )),
    })
}
