//! Test-only oracles that avoid the pruned search and memoized engine paths
//! used by the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use quiver_lr::lr::{count_lr_tableaux, schur_polynomial_oracle};
use quiver_lr::partition::partitions_in_rectangle;
use quiver_lr::quiver::Weight;
use quiver_lr::{BigUint, DimVector, LrEngine, Partition, Quiver, Rectangle, SchubertElement};

/// All partitions of `n`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_in_rectangle(Rectangle::new(n, n))
        .into_iter()
        .filter(|p| p.size() == n)
        .collect()
}

/// All partitions of `n` with at most `rows` rows.
pub fn partitions_with_rows(n: usize, rows: usize) -> Vec<Partition> {
    partitions_in_rectangle(Rectangle::new(rows, n))
        .into_iter()
        .filter(|p| p.size() == n)
        .collect()
}

type Poly = BTreeMap<Vec<usize>, i64>;

fn schur(lambda: &Partition, nvars: usize) -> Poly {
    schur_polynomial_oracle(lambda, nvars)
        .unwrap()
        .into_iter()
        .map(|(k, v)| (k, v as i64))
        .collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `s_λ · s_μ = Σ_ν c^ν_{λμ} s_ν` as polynomials in `ℓ(λ) + ℓ(μ)` variables,
/// enough that no `ν` with a nonzero coefficient is lost.
pub fn schur_product_agrees(engine: &LrEngine, lambda: &Partition, mu: &Partition) -> bool {
    let nvars = (lambda.len() + mu.len()).max(1);
    let lhs = poly_mul(&schur(lambda, nvars), &schur(mu, nvars));
    let mut rhs = Poly::new();
    for nu in partitions_with_rows(lambda.size() + mu.size(), nvars) {
        let c = engine.lr_coefficient(lambda, mu, &nu) as i64;
        if c == 0 {
            continue;
        }
        for (e, v) in schur(&nu, nvars) {
            *rhs.entry(e).or_default() += c * v;
        }
    }
    rhs.retain(|_, c| *c != 0);
    lhs == rhs
}

/// `[λ]·[μ]` has top-degree coefficient 1 when `μ` is the complement of `λ`
/// and 0 for every other `μ` of complementary size.
pub fn poincare_duality_holds(engine: &LrEngine, rect: Rectangle) -> bool {
    let all = partitions_in_rectangle(rect);
    let full = rect.full();
    for l in &all {
        let comp = l.complement(rect).unwrap();
        let a = SchubertElement::basis(l.clone(), rect).unwrap();
        for m in all.iter().filter(|m| m.size() + l.size() == rect.area()) {
            let b = SchubertElement::basis(m.clone(), rect).unwrap();
            let prod = a.multiply(&b, engine).unwrap();
            let expected = BigUint::from((*m == comp) as u8);
            if prod.coefficient(&full) != expected {
                return false;
            }
        }
    }
    true
}

/// Multiplicities `ν ↦ mult(S^ν, ⊗_i S^{λ_i})` for `GL(rows)`, expanded one
/// factor at a time with the brute-force tableau counter.
pub fn tensor_expansion(factors: &[&Partition], rows: usize) -> BTreeMap<Partition, BigUint> {
    let mut cur = BTreeMap::from([(Partition::empty(), BigUint::from(1u8))]);
    for lambda in factors {
        let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (nu, c) in &cur {
            for rho in partitions_with_rows(nu.size() + lambda.size(), rows) {
                let k = count_lr_tableaux(nu, lambda, &rho);
                if k > 0 {
                    *next.entry(rho).or_default() += c * BigUint::from(k);
                }
            }
        }
        cur = next;
    }
    cur
}

/// Multiplicity of `det^s` in `A ⊗ B*` for `GL(n)`, where `A` and `B` are
/// the tensor products of Schur functors given by `tails` and `heads`.
fn det_multiplicity(n: usize, s: i64, tails: &[&Partition], heads: &[&Partition]) -> BigUint {
    if n == 0 {
        return BigUint::from(1u8);
    }
    let a = tensor_expansion(tails, n);
    let b = tensor_expansion(heads, n);
    let (small, large, shift) = if s >= 0 {
        (&b, &a, s as usize)
    } else {
        (&a, &b, (-s) as usize)
    };
    let mut total = BigUint::default();
    for (nu, c) in small {
        if nu.len() > n {
            continue;
        }
        let parts: Vec<usize> = (0..n).map(|i| nu.part(i) + shift).collect();
        if let Some(d) = large.get(&Partition::new(parts)) {
            total += c * d;
        }
    }
    total
}

/// Sequences of `k` partitions, each with at most `rows[i]` rows, whose sizes
/// add up to `total`.
fn labelings(total: usize, rows: &[usize]) -> Vec<Vec<Partition>> {
    if rows.is_empty() {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        let heads = if rows[0] == 0 && first > 0 {
            Vec::new()
        } else {
            partitions_with_rows(first, rows[0])
        };
        if heads.is_empty() {
            continue;
        }
        for rest in labelings(total - first, &rows[1..]) {
            for h in &heads {
                let mut v = vec![h.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// `dim SI(Q, γ)_σ` from the Cauchy decomposition of `K[Rep(Q, γ)]`, summing
/// over all labelings of the arrows with Schur functors and taking the
/// `det^{σ(x)}` multiplicity at each vertex. The degrees at a source are
/// fixed by `σ`, and the rest follow in topological order.
pub fn semi_invariant_dimension(q: &Quiver, gamma: &DimVector, sigma: &Weight) -> BigUint {
    let order = q.topological_order().to_vec();
    let mut labels: Vec<Option<Partition>> = vec![None; q.narrows()];
    let mut total = BigUint::default();
    visit(q, gamma, sigma, &order, 0, &mut labels, &mut total);
    total
}

fn visit(
    q: &Quiver,
    gamma: &DimVector,
    sigma: &Weight,
    order: &[usize],
    step: usize,
    labels: &mut Vec<Option<Partition>>,
    total: &mut BigUint,
) {
    if step == order.len() {
        let mut prod = BigUint::from(1u8);
        for x in 0..q.nvertices() {
            let tails: Vec<&Partition> = q.arrows_out_of(x).map(|a| labels[a].as_ref().unwrap()).collect();
            let heads: Vec<&Partition> = q.arrows_into(x).map(|a| labels[a].as_ref().unwrap()).collect();
            prod *= det_multiplicity(gamma[x], sigma.0[x], &tails, &heads);
            if prod == BigUint::default() {
                return;
            }
        }
        *total += prod;
        return;
    }
    let x = order[step];
    let incoming: usize = q.arrows_into(x).map(|a| labels[a].as_ref().unwrap().size()).sum();
    let out_degree = sigma.0[x] * gamma[x] as i64 + incoming as i64;
    let outs: Vec<usize> = q.arrows_out_of(x).collect();
    if out_degree < 0 {
        return;
    }
    let rows: Vec<usize> = outs
        .iter()
        .map(|&a| {
            let arrow = q.arrow(a);
            gamma[arrow.tail].min(gamma[arrow.head])
        })
        .collect();
    for choice in labelings(out_degree as usize, &rows) {
        for (&a, p) in outs.iter().zip(choice) {
            labels[a] = Some(p);
        }
        visit(q, gamma, sigma, order, step + 1, labels, total);
    }
    for &a in &outs {
        labels[a] = None;
    }
}
