//! Boundary-matrix contract: the combinatorial assembly must reproduce the
//! literal brute-force matrix entry by entry, and the structural claims
//! about fibers and trivial rows must hold on the exact system.

use num::{BigRational, Zero};

use cycleforge::cyclespace::{
    boundary_system, brute_force_system, embedding_classes, fiber_counts, forced_singleton,
    point_classes,
};
use cycleforge::linalg::kernel_basis;
use cycleforge::partition::partitions_of;

#[test]
fn boundary_matrix_equals_brute_force_up_to_n4() {
    for n in 1..=4 {
        let fast = boundary_system(n);
        let slow = brute_force_system(n).unwrap();
        assert_eq!(fast.embeddings, slow.embeddings);
        assert_eq!(fast.points, slow.points);
        for r in 0..fast.matrix.rows() {
            for c in 0..fast.matrix.cols() {
                assert_eq!(
                    fast.matrix.get(r, c),
                    slow.matrix.get(r, c),
                    "n={n} row {} col {}",
                    fast.points[r],
                    fast.embeddings[c]
                );
            }
        }
    }
}

#[test]
#[ignore = "n = 5 brute force enumerates 11^6 raw maps; run with --ignored"]
fn boundary_matrix_equals_brute_force_at_n5() {
    let fast = boundary_system(5);
    let slow = brute_force_system(5).unwrap();
    assert_eq!(fast.matrix, slow.matrix);
}

#[test]
fn brute_force_rejects_large_n() {
    assert!(brute_force_system(6).is_err());
}

#[test]
fn trivial_rows_for_odd_n() {
    // rows of classes {alpha, alpha} with |alpha| = (n+1)/2 vanish
    for n in [3usize, 5] {
        let sys = boundary_system(n);
        let mut found = 0;
        for (r, p) in sys.points.iter().enumerate() {
            if p.first() == p.second() {
                found += 1;
                for c in 0..sys.matrix.cols() {
                    assert!(
                        sys.matrix.get(r, c).is_zero(),
                        "n={n} {} col {}",
                        p,
                        sys.embeddings[c]
                    );
                }
            }
        }
        assert!(found > 0);
    }
}

#[test]
fn class_sizes_match_generating_function_count() {
    // |E(n)| equals the number of unordered pairs with total weight <= n,
    // counted through the pair convolution of the partition function
    for n in 1..=10usize {
        let pi: Vec<usize> = (0..=n).map(|m| partitions_of(m).len()).collect();
        let mut ordered = 0usize;
        let mut diagonal = 0usize;
        for m in 0..=n {
            for i in 0..=m {
                ordered += pi[i] * pi[m - i];
            }
            if m % 2 == 0 {
                diagonal += pi[m / 2];
            }
        }
        let expected = (ordered + diagonal) / 2;
        assert_eq!(embedding_classes(n).len(), expected, "n={n}");
    }
}

#[test]
fn kernel_dimension_invariant_under_permutation() {
    let sys = boundary_system(4);
    let rows = sys.matrix.rows();
    let cols = sys.matrix.cols();
    let base = kernel_basis(&sys.matrix).len();
    // a fixed derangement-ish permutation
    let row_perm: Vec<usize> = (0..rows).map(|r| (r + 7) % rows).collect();
    let col_perm: Vec<usize> = (0..cols).map(|c| (c * 5 + 3) % cols).collect();
    assert_eq!(col_perm.iter().collect::<std::collections::BTreeSet<_>>().len(), cols);
    let permuted = sys.matrix.permuted(&row_perm, &col_perm);
    assert_eq!(kernel_basis(&permuted).len(), base);
}

#[test]
fn kernel_vectors_annihilate_brute_force_matrix() {
    // a kernel of the assembled system is a kernel of the literal system
    for n in 1..=4 {
        let fast = boundary_system(n);
        let slow = brute_force_system(n).unwrap();
        for v in kernel_basis(&fast.matrix) {
            assert!(slow.matrix.apply(&v).iter().all(BigRational::is_zero));
        }
    }
}

#[test]
fn singleton_fiber_classification_small() {
    for n in 1..=8 {
        let report = fiber_counts(n);
        let expected: Vec<_> = point_classes(n)
            .into_iter()
            .filter(|p| forced_singleton(p, n))
            .collect();
        assert_eq!(report.singleton_points, expected, "n={n}");
    }
}

#[test]
fn partition_sum_bound_at_n6() {
    // 1 + (Pi(0) + Pi(1) + Pi(2) + Pi(3)) = 1 + (1 + 1 + 2 + 3) = 8 > 6
    let report = fiber_counts(6);
    assert_eq!(report.partition_sum_bound, 8);
}
