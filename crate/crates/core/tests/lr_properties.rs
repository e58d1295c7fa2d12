mod common;

use common::{partitions_of, poincare_duality_holds, schur_product_agrees, tensor_expansion};
use proptest::prelude::*;
use quiver_lr::lr::{count_lr_tableaux, FoldOrder};
use quiver_lr::partition::partitions_in_rectangle;
use quiver_lr::{BigUint, LrEngine, Partition, Rectangle, SchubertElement};

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(Partition::new)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_is_an_involution(p in partition(6, 6)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
        prop_assert_eq!(p.conjugate().len(), p.first_part());
    }

    #[test]
    fn complement_is_an_involution(p in partition(4, 5), extra_rows in 0usize..3, extra_cols in 0usize..3) {
        let rect = Rectangle::new(p.len() + extra_rows, p.first_part() + extra_cols);
        let c = p.complement(rect).unwrap();
        prop_assert_eq!(c.size() + p.size(), rect.area());
        prop_assert_eq!(c.complement(rect).unwrap(), p);
    }

    #[test]
    fn text_form_round_trips(p in partition(6, 9)) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn lr_symmetry_and_conjugation(l in partition(4, 4), m in partition(4, 4), nu_index in 0usize..1000) {
        prop_assume!(l.size() + m.size() <= 8);
        let nus = partitions_of(l.size() + m.size());
        let nu = &nus[nu_index % nus.len()];
        let e = LrEngine::new();
        let c = e.lr_coefficient(&l, &m, nu);
        prop_assert_eq!(c, e.lr_coefficient(&m, &l, nu));
        prop_assert_eq!(c, e.lr_coefficient(&l.conjugate(), &m.conjugate(), &nu.conjugate()));
        prop_assert_eq!(c, count_lr_tableaux(&l, &m, nu));
    }

    #[test]
    fn lr_associativity(a in partition(3, 3), b in partition(3, 3), c in partition(3, 3)) {
        prop_assume!(a.size() + b.size() + c.size() <= 7);
        let e = LrEngine::new();
        let total = a.size() + b.size() + c.size();
        for nu in partitions_of(total) {
            let mut left = 0u64;
            let mut right = 0u64;
            for rho in partitions_of(a.size() + b.size()) {
                left += e.lr_coefficient(&a, &b, &rho) * e.lr_coefficient(&rho, &c, &nu);
            }
            for rho in partitions_of(b.size() + c.size()) {
                right += e.lr_coefficient(&b, &c, &rho) * e.lr_coefficient(&a, &rho, &nu);
            }
            prop_assert_eq!(left, right, "nu = {}", nu);
        }
    }

    #[test]
    fn schur_oracle_agrees(l in partition(3, 4), m in partition(3, 4)) {
        prop_assume!(l.size() + m.size() <= 6);
        prop_assert!(schur_product_agrees(&LrEngine::new(), &l, &m));
    }

    #[test]
    fn fold_orders_agree(fs in prop::collection::vec(partition(2, 2), 1..4), target_index in 0usize..1000) {
        let e = LrEngine::new();
        let size: usize = fs.iter().map(Partition::size).sum();
        let targets = partitions_of(size);
        let target = &targets[target_index % targets.len()];
        let left = e.tensor_multiplicity_with(target, &fs, FoldOrder::Left);
        prop_assert_eq!(&left, &e.tensor_multiplicity_with(target, &fs, FoldOrder::Right));
        prop_assert_eq!(&left, &e.tensor_multiplicity(target, &fs));
        let refs: Vec<&Partition> = fs.iter().collect();
        let brute = tensor_expansion(&refs, size.max(1)).remove(target).unwrap_or_default();
        prop_assert_eq!(left, brute);
    }
}

#[test]
fn rectangle_counts_are_binomial() {
    for r in 0..=5 {
        for c in 0..=5 {
            assert_eq!(
                partitions_in_rectangle(Rectangle::new(r, c)).len(),
                binomial(r + c, r),
                "{r}x{c}"
            );
        }
    }
}

#[test]
fn poincare_duality_up_to_4x4() {
    let e = LrEngine::new();
    for r in 1..=4 {
        for c in 1..=4 {
            assert!(poincare_duality_holds(&e, Rectangle::new(r, c)), "{r}x{c}");
        }
    }
}

#[test]
fn schubert_ring_is_commutative_and_associative_in_gr_2_5() {
    let e = LrEngine::new();
    let rect = Rectangle::new(2, 3);
    let all = partitions_in_rectangle(rect);
    let b = |p: &Partition| SchubertElement::basis(p.clone(), rect).unwrap();
    for x in &all {
        for y in &all {
            let xy = b(x).multiply(&b(y), &e).unwrap();
            assert_eq!(xy, b(y).multiply(&b(x), &e).unwrap());
            for z in &all {
                let left = xy.multiply(&b(z), &e).unwrap();
                let right = b(x).multiply(&b(y).multiply(&b(z), &e).unwrap(), &e).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn pieri_rule() {
    let e = LrEngine::new();
    for lambda in partitions_of(4) {
        for k in 0..=3 {
            let row = Partition::new(vec![k]);
            for nu in partitions_of(4 + k) {
                let horizontal_strip =
                    lambda.is_contained_in(&nu) && (0..nu.len()).all(|i| i == 0 || nu.part(i) <= lambda.part(i - 1));
                let expected = u64::from(horizontal_strip);
                assert_eq!(e.lr_coefficient(&lambda, &row, &nu), expected, "{lambda} {row} {nu}");
            }
        }
    }
}

#[test]
fn known_coefficients() {
    let e = LrEngine::new();
    let p = |v: &[usize]| Partition::new(v.to_vec());
    assert_eq!(e.lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
    assert_eq!(
        e.lr_coefficient(&p(&[3, 2, 1]), &p(&[3, 2, 1]), &p(&[4, 4, 2, 1, 1])),
        3
    );
    assert_eq!(e.lr_coefficient(&p(&[4, 2, 1]), &p(&[3, 2, 1]), &p(&[5, 4, 3, 1])), 4);
    assert_eq!(
        e.tensor_multiplicity(&p(&[2, 2]), &[p(&[1]), p(&[1]), p(&[1]), p(&[1])]),
        BigUint::from(2u8)
    );
}
