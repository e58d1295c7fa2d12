//! Seeded instance generators for the verification suites, shared by the
//! command-line tool and the test suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{fiber_class, triple_flag_instance, CountError};
use crate::covariants::VertexLabeling;
use crate::instance::Instance;
use crate::lr::LrEngine;
use crate::oracles::{opposite, search_cost, SamplePlan};
use crate::partition::{partitions_in_rectangle, Partition, Rectangle};
use crate::quiver::{euler_form_unchecked, DimVector, Quiver};

/// A suite entry with a short human-readable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub instance: Instance,
}

impl Named {
    fn new(name: impl Into<String>, instance: Instance) -> Self {
        Named {
            name: name.into(),
            instance,
        }
    }
}

/// θ(2r) with `β = (1, r)`, `α = (r+1, r+1)`; `N = C(2r, r)`.
pub fn kronecker_family(r: usize) -> Named {
    Named::new(
        format!("theta({}) beta=(1,{r}) alpha=({},{})", 2 * r, r + 1, r + 1),
        Instance::new(
            Quiver::kronecker(2 * r),
            DimVector(vec![1, r]),
            DimVector(vec![r + 1, r + 1]),
        ),
    )
}

/// All `(λ, μ, ν)` in the `r × (n−r)` box with `|λ|+|μ|+|ν| = r(n−r)`.
pub fn triple_flag_triples(r: usize, n: usize) -> Vec<(Partition, Partition, Partition)> {
    let all = partitions_in_rectangle(Rectangle::new(r, n - r));
    let area = r * (n - r);
    let mut out = Vec::new();
    for l in &all {
        for m in &all {
            for v in &all {
                if l.size() + m.size() + v.size() == area {
                    out.push((l.clone(), m.clone(), v.clone()));
                }
            }
        }
    }
    out
}

pub fn triple_flag_suite(engine: &LrEngine, r: usize, n: usize) -> Result<Vec<(Named, u64)>, CountError> {
    triple_flag_triples(r, n)
        .into_iter()
        .map(|(l, m, v)| {
            let t = triple_flag_instance(engine, &l, &m, &v, r, n)?;
            let expected = u64::try_from(&t.expected).expect("LR coefficients are small here");
            let name = format!("tripleflag n={n} r={r} lambda={l} mu={m} nu={v}");
            Ok((Named::new(name, Instance::new(t.quiver, t.beta, t.alpha)), expected))
        })
        .collect()
}

/// Shape limits for random instances.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_verts: usize,
    pub max_arrows: usize,
    pub max_dim: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_verts: 4,
            max_arrows: 4,
            max_dim: 3,
        }
    }
}

/// Random acyclic quiver: arrows go from a lower to a higher index.
pub fn random_quiver<R: Rng>(rng: &mut R, shape: RandomShape) -> Quiver {
    let n = rng.gen_range(1..=shape.max_verts.max(1));
    let arrows: Vec<(usize, usize)> = if n < 2 {
        Vec::new()
    } else {
        let m = rng.gen_range(0..=shape.max_arrows);
        (0..m)
            .map(|_| {
                let t = rng.gen_range(0..n - 1);
                (t, rng.gen_range(t + 1..n))
            })
            .collect()
    };
    Quiver::new(n, arrows).expect("arrows increase the vertex index")
}

fn random_pair<R: Rng>(rng: &mut R, q: &Quiver, max_dim: usize) -> (DimVector, DimVector) {
    let alpha: Vec<usize> = (0..q.nvertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let beta: Vec<usize> = alpha.iter().map(|&a| rng.gen_range(0..=a)).collect();
    (DimVector(beta), DimVector(alpha))
}

/// `count` instances with `⟨β, γ⟩ = 0`, `β ≠ 0` and `γ ≠ 0`.
pub fn random_zero_pairing_suite(seed: u64, count: usize, shape: RandomShape) -> Vec<Named> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = random_quiver(&mut rng, shape);
        let (beta, alpha) = random_pair(&mut rng, &q, shape.max_dim);
        let inst = Instance::new(q, beta, alpha);
        if inst.pairing() == 0 && !inst.beta.is_zero() && !inst.gamma().is_zero() {
            out.push(Named::new(format!("random seed={seed} #{}", out.len()), inst));
        }
    }
    out
}

/// Instances with `0 ≤ ⟨β, γ⟩ ≤ max_pairing` and a labeling of the matching
/// total size. Half of the labelings are drawn from the support of the
/// fiber class, the rest uniformly from all labelings of that size.
pub fn random_covariant_suite(
    engine: &LrEngine,
    seed: u64,
    count: usize,
    shape: RandomShape,
    max_pairing: i64,
) -> Result<Vec<Named>, CountError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = random_quiver(&mut rng, shape);
        let (beta, alpha) = random_pair(&mut rng, &q, shape.max_dim);
        let mut inst = Instance::new(q, beta, alpha);
        let pairing = inst.pairing();
        if !(0..=max_pairing).contains(&pairing) || inst.beta.is_zero() {
            continue;
        }
        let gamma = inst.gamma();
        let labelings = labelings_of_size(&inst.beta, &gamma, pairing as usize);
        let mu = if rng.gen_bool(0.5) {
            let fc = fiber_class(engine, &inst.quiver, &inst.beta, &inst.alpha)?;
            let keys: Vec<_> = fc.coeffs.keys().cloned().collect();
            keys.choose(&mut rng).cloned()
        } else {
            labelings.choose(&mut rng).cloned()
        };
        let Some(mu) = mu else { continue };
        inst.mu = Some(mu);
        out.push(Named::new(format!("covariant seed={seed} #{}", out.len()), inst));
    }
    Ok(out)
}

/// Every vertex labeling inside the `β(x) × γ(x)` boxes with total size `size`.
pub fn labelings_of_size(beta: &DimVector, gamma: &DimVector, size: usize) -> Vec<VertexLabeling> {
    let mut out = vec![(Vec::new(), 0usize)];
    for x in 0..beta.len() {
        let parts = partitions_in_rectangle(Rectangle::new(beta[x], gamma[x]));
        let mut next = Vec::new();
        for (prefix, s) in &out {
            for p in &parts {
                if s + p.size() <= size {
                    let mut v: Vec<Partition> = prefix.clone();
                    v.push(p.clone());
                    next.push((v, s + p.size()));
                }
            }
        }
        out = next;
    }
    out.into_iter()
        .filter(|(_, s)| *s == size)
        .map(|(v, _)| VertexLabeling(v))
        .collect()
}

/// A quiver with three nonzero dimension vectors, all pairwise pairings zero.
#[derive(Clone, Debug)]
pub struct Triple {
    pub quiver: Quiver,
    pub beta: DimVector,
    pub gamma: DimVector,
    pub delta: DimVector,
}

pub fn random_triples(seed: u64, count: usize, shape: RandomShape) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = random_quiver(&mut rng, shape);
        let n = q.nvertices();
        let mut draw = || DimVector((0..n).map(|_| rng.gen_range(0..=shape.max_dim)).collect());
        let (b, g, d) = (draw(), draw(), draw());
        if b.is_zero() || g.is_zero() || d.is_zero() {
            continue;
        }
        let e = |x: &DimVector, y: &DimVector| euler_form_unchecked(&q, x, y);
        if e(&b, &g) == 0 && e(&b, &d) == 0 && e(&g, &d) == 0 {
            out.push(Triple {
                quiver: q,
                beta: b,
                gamma: g,
                delta: d,
            });
        }
    }
    out
}

/// Sampling plan used by the oracle suites: the first `(p, k)`, preferring
/// larger extension degree and then larger `p`, for which the estimated
/// search cost over `F_{p^k}` (the cheaper of the direct and dual searches,
/// see [`search_cost`]) fits the budget.
pub fn sample_plan_for(
    q: &Quiver,
    alpha: &DimVector,
    beta: &DimVector,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Option<SamplePlan> {
    const PRIMES: [u64; 5] = [101, 31, 11, 7, 5];
    let gamma = alpha.checked_sub(beta)?;
    let op = opposite(q);
    for k in [4u32, 3, 2] {
        for p in PRIMES {
            let Some(order) = p.checked_pow(k).filter(|&q| q < 1 << 32) else {
                continue;
            };
            let cost = search_cost(q, alpha, beta, order)
                .ok()?
                .min(search_cost(&op, alpha, &gamma, order).ok()?);
            if cost <= num_bigint::BigUint::from(budget) {
                let mut plan = SamplePlan::new(p, k, trials, seed);
                plan.budget = budget;
                return Some(plan);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_zero_pairing_suite(7, 20, RandomShape::default());
        let b = random_zero_pairing_suite(7, 20, RandomShape::default());
        assert_eq!(a, b);
        for i in a.iter().map(|n| &n.instance) {
            assert!(i.pairing() == 0 && i.quiver.nvertices() <= 4 && i.quiver.narrows() <= 4);
            assert!(i.alpha.0.iter().all(|&d| d <= 3));
        }
    }

    #[test]
    fn triple_flag_triples_in_2x2() {
        let t = triple_flag_triples(2, 4);
        assert!(t.iter().all(|(l, m, v)| l.size() + m.size() + v.size() == 4));
        // Compositions of 4 into three box sizes weighted by partitions per size (1,1,2,1,1).
        let per_size = [1usize, 1, 2, 1, 1];
        let mut expected = 0;
        for a in 0..=4 {
            for b in 0..=4 - a {
                expected += per_size[a] * per_size[b] * per_size[4 - a - b];
            }
        }
        assert_eq!(t.len(), expected);
    }

    #[test]
    fn labelings_have_the_requested_size() {
        let ls = labelings_of_size(&DimVector(vec![1, 2]), &DimVector(vec![2, 1]), 2);
        assert_eq!(ls.len(), 3);
        assert!(ls.iter().all(|l| l.size() == 2));
    }

    #[test]
    fn plan_prefers_large_fields_within_budget() {
        let plan = sample_plan_for(
            &Quiver::kronecker(2),
            &DimVector(vec![2, 2]),
            &DimVector(vec![1, 1]),
            10,
            1,
            10_000_000,
        )
        .unwrap();
        assert_eq!((plan.p, plan.max_degree), (31, 4));
        assert!(sample_plan_for(&Quiver::linear(1), &DimVector(vec![9]), &DimVector(vec![4]), 10, 1, 10).is_none());
    }
}
