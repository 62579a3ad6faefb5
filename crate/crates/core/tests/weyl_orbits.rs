use exceptional_core::weyl_orbits::*;

fn pairs(t: RootType, node: usize) -> PairOrbits {
    parabolic_pair_orbits(&RootSystemData::new(t), node).unwrap()
}

#[test]
fn e7_node_7_has_four_pair_orbits() {
    let p = pairs(RootType::E7, 7);
    assert_eq!(p.orbit_size, 56);
    assert_eq!(p.double_cosets, 4);
    assert_eq!(p.partition, vec![27, 27, 1, 1]);
    assert!(p.partition_sums());
}

#[test]
fn other_minuscule_examples() {
    let e6 = pairs(RootType::E6, 1);
    assert_eq!((e6.orbit_size, e6.double_cosets), (27, 3));
    assert_eq!(e6.partition, vec![16, 10, 1]);
    let d6 = pairs(RootType::D(6), 1);
    assert_eq!((d6.orbit_size, d6.double_cosets), (12, 3));
    assert_eq!(d6.partition, vec![10, 1, 1]);
    for p in [2, 3, 5] {
        let a = pairs(RootType::A(p - 1), 1);
        assert_eq!((a.orbit_size, a.double_cosets), (p, 2));
        assert_eq!(a.partition, vec![p - 1, 1]);
    }
    assert_eq!(weight_orbit(&RootSystemData::new(RootType::A(2)), 1).unwrap().len(), 3);
    for p in [pairs(RootType::E6, 1), pairs(RootType::D(6), 1)] {
        assert!(p.partition_sums());
    }
}

#[test]
fn invalid_nodes_are_rejected() {
    let s = RootSystemData::new(RootType::E7);
    assert!(matches!(weight_orbit(&s, 0), Err(WeylError::InvalidNode { .. })));
    assert!(matches!(weight_orbit(&s, 8), Err(WeylError::InvalidNode { .. })));
}

fn systems() -> Vec<RootSystemData> {
    [RootType::A(1), RootType::A(2), RootType::A(4), RootType::D(4), RootType::D(6), RootType::E6, RootType::E7]
        .into_iter()
        .map(RootSystemData::new)
        .collect()
}

#[test]
fn cartan_matrices_are_symmetric_with_twos_on_the_diagonal() {
    for s in systems() {
        let n = s.rank();
        for i in 0..n {
            assert_eq!(s.cartan[i][i], 2);
            for j in 0..n {
                assert_eq!(s.cartan[i][j], s.cartan[j][i]);
            }
        }
        // tree: n - 1 edges
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| s.cartan[i][j] == -1).count();
        assert_eq!(edges, n - 1);
    }
}

#[test]
fn braid_relations_hold_on_every_orbit() {
    for s in systems() {
        for node in 1..=s.rank() {
            let o = weight_orbit(&s, node).unwrap();
            if o.len() <= 1000 {
                assert!(o.braid_relations_hold(&s), "{} node {node}", s.root_type);
            }
            for action in &o.generator_action {
                // each generator is an involution
                assert!((0..o.len()).all(|k| action[action[k]] == k));
            }
        }
    }
}

#[test]
fn counts_are_invariant_under_diagram_automorphisms() {
    for s in systems() {
        for sigma in s.diagram_automorphisms() {
            for (node, &image) in sigma.iter().enumerate().skip(1) {
                let a = parabolic_pair_orbits(&s, node).unwrap();
                let b = parabolic_pair_orbits(&s, image).unwrap();
                assert_eq!(a.double_cosets, b.double_cosets);
                assert_eq!(a.partition, b.partition);
            }
        }
    }
    // relabeling the E6 diagram by its automorphism gives the same Cartan matrix
    let e6 = RootSystemData::new(RootType::E6);
    let sigma = &e6.diagram_automorphisms()[1];
    for i in 1..=6 {
        for j in 1..=6 {
            assert_eq!(e6.cartan[sigma[i] - 1][sigma[j] - 1], e6.cartan[i - 1][j - 1]);
        }
    }
}

#[test]
fn known_orbit_sizes() {
    let e7 = RootSystemData::new(RootType::E7);
    assert_eq!(weight_orbit(&e7, 1).unwrap().len(), 126);
    let d4 = RootSystemData::new(RootType::D(4));
    for node in [1, 3, 4] {
        assert_eq!(weight_orbit(&d4, node).unwrap().len(), 8);
    }
    let a4 = RootSystemData::new(RootType::A(4));
    assert_eq!(weight_orbit(&a4, 2).unwrap().len(), 10);
    assert_eq!(parabolic_pair_orbit_count(&a4, 2).unwrap(), 3);
}
