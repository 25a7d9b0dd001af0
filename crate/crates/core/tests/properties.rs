#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;
use tw2cat_core::cat::{skeleton, twisted_arrow};
use tw2cat_core::homology::nerve_homology;
use tw2cat_core::{AbGroup, FinCategory};

fn random_poset() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            // keep only a < b relations and close transitively
            let mut leq: Vec<Vec<bool>> =
                (0..n).map(|a| (0..n).map(|b| a == b || (a < b && bits[a * n + b])).collect()).collect();
            for k in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if leq[a][k] && leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
            leq
        })
    })
}

proptest! {
    #[test]
    fn twisted_arrow_of_a_poset_is_a_poset(leq in random_poset()) {
        let n = leq.len();
        let p = FinCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| leq[a][b]);
        let (tw, _) = twisted_arrow(&p);
        let t = &tw.category;
        prop_assert!(t.is_thin());
        let (skel, _) = skeleton(t);
        prop_assert_eq!(skel.num_objects(), t.num_objects());
        prop_assert_eq!(t.num_objects(), p.num_morphisms());
    }

    #[test]
    fn posets_with_a_maximum_are_contractible(leq in random_poset()) {
        let n = leq.len();
        let mut leq = leq;
        for row in leq.iter_mut() {
            row[n - 1] = true;
        }
        for a in 0..n - 1 {
            leq[n - 1][a] = false;
        }
        let p = FinCategory::poset((0..n).map(|i| i.to_string()).collect(), |a, b| leq[a][b]);
        let h = nerve_homology(&p, 3).unwrap();
        prop_assert_eq!(h, vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero()]);
    }
}

#[test]
fn bar_oracle_gives_cyclic_group_homology() {
    let h = common::cyclic_group_homology(3, 5);
    let expected = [AbGroup::free(1), AbGroup::cyclic(3), AbGroup::zero(), AbGroup::cyclic(3), AbGroup::zero()];
    assert_eq!(h, expected);
}

#[test]
fn eilenberg_maclane_oracle_matches_known_groups() {
    // H_1 = 0, H_2 = Z/2, H_3 = 0 for K(Z/2, 2)
    let h = common::k_z2_2_homology(4);
    assert_eq!(h, [AbGroup::free(1), AbGroup::zero(), AbGroup::cyclic(2), AbGroup::zero()]);
}

#[test]
fn oracle_smith_factors() {
    assert_eq!(common::invariant_factors(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), [2, 6, 12]);
    assert_eq!(common::invariant_factors(vec![vec![0, 0], vec![0, 0]]), Vec::<i128>::new());
}

#[test]
fn poset_enumeration_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| common::labelled_posets(n).len()).collect();
    assert_eq!(counts, [1, 3, 19, 219]);
}

#[test]
fn twisted_arrow_of_the_interval_is_thin() {
    let (tw, _) = twisted_arrow(&FinCategory::ordinal(2));
    assert!(tw.category.is_thin());
}
