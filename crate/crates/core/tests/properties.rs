mod common;

use std::sync::OnceLock;

use common::{oriented_sides, relabel_naive, unordered};
use gdraw_core::canon::is_achiral;
use gdraw_core::triangles::all_triangles;
use gdraw_core::{analyze, canonical_key, empty_triangles, side_partition, CanonicalKey, Enumerator, RotationSystem};
use proptest::prelude::*;
use proptest::sample::Index;

fn classes_6() -> &'static [CanonicalKey] {
    static KEYS: OnceLock<Vec<CanonicalKey>> = OnceLock::new();
    KEYS.get_or_init(|| Enumerator::new(1).unwrap().frontier(6).unwrap().classes().to_vec())
}

/// Any rotation system of `K_n`, realizable or not.
fn any_system() -> impl Strategy<Value = RotationSystem> {
    (4usize..=8).prop_flat_map(|n| {
        let rows: Vec<_> = (1..=n)
            .map(|v| Just((1..=n).filter(|&u| u != v).collect::<Vec<usize>>()).prop_shuffle())
            .collect();
        rows.prop_map(|rows| RotationSystem::new(rows).unwrap())
    })
}

fn realizable_system() -> impl Strategy<Value = RotationSystem> {
    (any::<Index>(), Just((1..=6).collect::<Vec<usize>>()).prop_shuffle(), any::<bool>()).prop_map(|(i, perm, m)| {
        let rs = i.get(classes_6()).to_rotation_system();
        relabel_naive(&rs, &perm, m)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn side_partition_ignores_triple_order(rs in any_system()) {
        for t in all_triangles(rs.n()) {
            let [a, b, c] = t.vertices().map(|v| v.get());
            let reference = unordered(oriented_sides(&rs, [a, b, c]));
            for order in [[b, c, a], [c, a, b], [a, c, b], [c, b, a], [b, a, c]] {
                prop_assert_eq!(&unordered(oriented_sides(&rs, order)), &reference);
            }
            let ours = side_partition(&rs, &t).unwrap();
            let mine = (
                ours.side_a.iter().map(|v| v.get()).collect(),
                ours.side_b.iter().map(|v| v.get()).collect(),
            );
            prop_assert_eq!(unordered(mine), reference);
        }
    }

    #[test]
    fn side_partition_follows_relabeling_and_mirror(rs in any_system(), seed in any::<u64>()) {
        let n = rs.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.rotate_left((seed % n as u64) as usize);
        if seed & 1 == 1 {
            perm.swap(0, n - 1);
        }
        let img = rs.relabel(&perm).unwrap();
        prop_assert_eq!(&img, &relabel_naive(&rs, &perm, false));
        let mirrored = rs.mirror();
        for t in all_triangles(n) {
            let p = side_partition(&rs, &t).unwrap();
            prop_assert_eq!(&side_partition(&mirrored, &t).unwrap(), &p);
            let [a, b, c] = t.vertices().map(|v| perm[v.index()]);
            let q = side_partition(&img, &gdraw_core::Triangle::of(a, b, c)).unwrap();
            let mut image_a: Vec<usize> = p.side_a.iter().map(|v| perm[v.index()]).collect();
            let mut image_b: Vec<usize> = p.side_b.iter().map(|v| perm[v.index()]).collect();
            image_a.sort();
            image_b.sort();
            let got_a: Vec<usize> = q.side_a.iter().map(|v| v.get()).collect();
            let got_b: Vec<usize> = q.side_b.iter().map(|v| v.get()).collect();
            prop_assert!((got_a == image_a && got_b == image_b) || (got_a == image_b && got_b == image_a));
        }
    }

    #[test]
    fn stats_are_consistent(rs in any_system()) {
        let a = analyze(&rs).unwrap();
        let total_t: usize = a.stats.iter().map(|s| s.t).sum();
        prop_assert_eq!(total_t, 3 * a.empty.len());
        prop_assert!(a.lucky_count() <= rs.n());
        prop_assert_eq!(&a.empty, &empty_triangles(&rs));
    }

    #[test]
    fn relabel_and_mirror_are_invertible(rs in any_system(), seed in any::<u64>()) {
        let n = rs.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.rotate_right((seed % n as u64) as usize);
        let mut inverse = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p - 1] = i + 1;
        }
        prop_assert_eq!(rs.relabel(&perm).unwrap().relabel(&inverse).unwrap(), rs.clone());
        prop_assert_eq!(rs.mirror().mirror(), rs.clone());
        prop_assert_eq!(canonical_key(&rs.relabel(&perm).unwrap().mirror()), canonical_key(&rs));
    }

    #[test]
    fn empty_count_is_invariant_on_realizable_systems(rs in realizable_system(), perm in permutation(6)) {
        let img = relabel_naive(&rs, &perm, true);
        prop_assert_eq!(empty_triangles(&img).len(), empty_triangles(&rs).len());
        prop_assert!(empty_triangles(&rs).len() >= 8);
        prop_assert_eq!(is_achiral(&img), is_achiral(&rs));
    }
}
