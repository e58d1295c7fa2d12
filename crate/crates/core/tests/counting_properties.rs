mod common;

use common::semi_invariant_dimension;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiver_lr::counting::gamma_of;
use quiver_lr::suites::{kronecker_family, random_triples, random_zero_pairing_suite, RandomShape};
use quiver_lr::{
    build_hat, count_subreps, euler_form, fiber_class, si_dimension, weight_of, BigUint, DimVector, Instance, LrEngine,
    Quiver, VertexLabeling, Weight,
};

fn m_oracle(inst: &Instance) -> BigUint {
    let gamma = gamma_of(&inst.quiver, &inst.beta, &inst.alpha).unwrap();
    let sigma = weight_of(&inst.quiver, &inst.beta).unwrap();
    semi_invariant_dimension(&inst.quiver, &gamma, &sigma)
}

/// Every zero-pairing `β ⊆ α` for random `α` on quivers with more arrows
/// than the default suite, so that counts above 1 are common.
fn dense_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(3..=6);
        let arrows: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let t = rng.gen_range(0..n - 1);
                (t, rng.gen_range(t + 1..n))
            })
            .collect();
        let q = Quiver::new(n, arrows).unwrap();
        let alpha = DimVector((0..n).map(|_| rng.gen_range(1..=3)).collect());
        let mut beta = vec![0; n];
        loop {
            let inst = Instance::new(q.clone(), DimVector(beta.clone()), alpha.clone());
            if inst.pairing() == 0 && !inst.beta.is_zero() && !inst.gamma().is_zero() {
                out.push(inst);
            }
            // Odometer over β ≤ α.
            let Some(i) = (0..n).find(|&i| beta[i] < alpha[i]) else {
                break;
            };
            beta[i] += 1;
            beta[..i].iter_mut().for_each(|b| *b = 0);
        }
    }
    out.truncate(count);
    out
}

#[test]
fn si_dimension_matches_unpruned_oracle_on_theta_family() {
    let e = LrEngine::new();
    for r in 1..=3 {
        let inst = kronecker_family(r).instance;
        assert_eq!(
            si_dimension(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap(),
            m_oracle(&inst),
            "r = {r}"
        );
    }
}

#[test]
fn si_dimension_matches_unpruned_oracle_on_random_instances() {
    let e = LrEngine::new();
    for named in random_zero_pairing_suite(11, 60, RandomShape::default()) {
        let inst = &named.instance;
        let m = si_dimension(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap();
        assert_eq!(m, m_oracle(inst), "{}\n{inst}", named.name);
    }
}

#[test]
fn n_equals_m_on_dense_instances() {
    let e = LrEngine::new();
    let mut above_one = 0;
    for inst in dense_instances(3, 60) {
        let n = count_subreps(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap();
        let m = si_dimension(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap();
        assert_eq!(n, m, "{inst}");
        assert_eq!(m, m_oracle(&inst), "{inst}");
        above_one += usize::from(n > BigUint::from(1u8));
    }
    assert!(above_one >= 5, "only {above_one} instances with N > 1");
}

#[test]
fn oracle_handles_nonzero_pairings() {
    // On θ(2) with γ = (1,1) the weight (1,-1) space is spanned by the two
    // coordinates, and weight (2,-2) by the three quadratic monomials.
    let q = Quiver::kronecker(2);
    let gamma = DimVector(vec![1, 1]);
    assert_eq!(
        semi_invariant_dimension(&q, &gamma, &Weight(vec![1, -1])),
        BigUint::from(2u8)
    );
    assert_eq!(
        semi_invariant_dimension(&q, &gamma, &Weight(vec![2, -2])),
        BigUint::from(3u8)
    );
    assert_eq!(
        semi_invariant_dimension(&q, &gamma, &Weight(vec![1, 0])),
        BigUint::default()
    );
    // With γ = (2,2) the determinants of the pencil give a binary quadratic form.
    assert_eq!(
        semi_invariant_dimension(&q, &DimVector(vec![2, 2]), &Weight(vec![1, -1])),
        BigUint::from(3u8)
    );
}

#[test]
fn multiplicativity_on_seeded_triples() {
    let e = LrEngine::new();
    let mut nontrivial = 0;
    for t in random_triples(17, 30, RandomShape::default()) {
        let (b, g, d) = (&t.beta, &t.gamma, &t.delta);
        let bg = b.add(g);
        let gd = g.add(d);
        let bgd = bg.add(d);
        let n = |sub: &DimVector, total: &DimVector| count_subreps(&e, &t.quiver, sub, total).unwrap();
        let lhs = n(b, &bg) * n(&bg, &bgd);
        let rhs = n(b, &bgd) * n(g, &gd);
        assert_eq!(lhs, rhs, "{:?} {b} {g} {d}", t.quiver.arrows());
        nontrivial += usize::from(lhs != BigUint::from(1u8));
    }
    assert!(nontrivial >= 5, "only {nontrivial} triples with a product other than 1");
}

#[test]
fn fiber_class_is_homogeneous_and_recovers_n() {
    let e = LrEngine::new();
    for named in random_zero_pairing_suite(5, 40, RandomShape::default()) {
        let inst = &named.instance;
        let fc = fiber_class(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap();
        let n = count_subreps(&e, &inst.quiver, &inst.beta, &inst.alpha).unwrap();
        let empty = VertexLabeling::empty(inst.quiver.nvertices());
        assert_eq!(fc.coefficient(&empty), n);
        assert!(fc.coeffs.keys().all(|k| *k == empty));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 40 {
        let q = quiver_lr::suites::random_quiver(&mut rng, RandomShape::default());
        let alpha = DimVector((0..q.nvertices()).map(|_| rng.gen_range(0..=3)).collect());
        let beta = DimVector(alpha.0.iter().map(|&a| rng.gen_range(0..=a)).collect());
        let gamma = alpha.checked_sub(&beta).unwrap();
        let pairing = euler_form(&q, &beta, &gamma).unwrap();
        if !(0..=4).contains(&pairing) {
            continue;
        }
        let fc = fiber_class(&e, &q, &beta, &alpha).unwrap();
        for (k, c) in &fc.coeffs {
            assert_eq!(k.size() as i64, pairing);
            assert!(*c > BigUint::default());
            for x in 0..q.nvertices() {
                assert!(k.get(x).len() <= beta[x] && k.get(x).first_part() <= gamma[x]);
            }
        }
        checked += 1;
    }
}

#[test]
fn hat_quiver_has_zero_pairing() {
    let e = LrEngine::new();
    let q = Quiver::linear(3);
    let (beta, alpha) = (DimVector(vec![1, 1, 1]), DimVector(vec![2, 2, 2]));
    let gamma = alpha.checked_sub(&beta).unwrap();
    let fc = fiber_class(&e, &q, &beta, &alpha).unwrap();
    assert!(!fc.coeffs.is_empty());
    for mu in fc.coeffs.keys() {
        let h = build_hat(&q, &beta, &gamma, mu).unwrap();
        assert_eq!(euler_form(&h.qhat, &h.betahat, &h.gammahat).unwrap(), 0);
        assert_eq!(h.alphahat, h.betahat.add(&h.gammahat));
    }
}
