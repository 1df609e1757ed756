use super::*;
use proptest::prelude::*;

fn r(v: &[i32]) -> Root {
    Root::new(v.to_vec())
}

fn all_types() -> Vec<RootSystemType> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(RootSystemType::new(Series::A, n).unwrap());
    }
    for n in 2..=6 {
        out.push(RootSystemType::new(Series::B, n).unwrap());
        out.push(RootSystemType::new(Series::C, n).unwrap());
    }
    for n in 3..=6 {
        out.push(RootSystemType::new(Series::D, n).unwrap());
    }
    for n in 6..=8 {
        out.push(RootSystemType::new(Series::E, n).unwrap());
    }
    out.push(RootSystemType::new(Series::F, 4).unwrap());
    out.push(RootSystemType::new(Series::G, 2).unwrap());
    out
}

fn sys(s: &str) -> RootSystem {
    RootSystem::parse(s).unwrap()
}

#[test]
fn rank_bounds() {
    assert!(RootSystemType::new(Series::B, 1).is_err());
    assert!(RootSystemType::new(Series::D, 2).is_err());
    assert!(RootSystemType::new(Series::E, 5).is_err());
    assert!(RootSystemType::new(Series::F, 3).is_err());
    assert!(RootSystemType::new(Series::G, 3).is_err());
    assert!("Q3".parse::<RootSystemType>().is_err());
    assert_eq!("f4".parse::<RootSystemType>().unwrap().to_string(), "F4");
}

#[test]
fn positive_root_counts_match_classical_formulas() {
    for t in all_types() {
        let rs = RootSystem::new(t);
        assert_eq!(rs.num_positive(), tables::classical_positive_count(t), "{t}");
    }
}

#[test]
fn b2_and_g2_positive_roots() {
    let b2 = sys("B2");
    assert_eq!(b2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[1, 2])]);
    let g2 = sys("G2");
    assert_eq!(g2.positive_roots(), &[r(&[1, 0]), r(&[0, 1]), r(&[1, 1]), r(&[2, 1]), r(&[3, 1]), r(&[3, 2])]);
    assert_eq!(sys("A1").positive_roots(), &[r(&[1])]);
}

#[test]
fn g2_pairing() {
    let g2 = sys("G2");
    assert_eq!(g2.pairing(&r(&[1, 0]), &r(&[0, 1])), -3);
    assert_eq!(g2.pairing(&r(&[0, 1]), &r(&[0, 1])), 6);
    assert_eq!(g2.pairing(&r(&[1, 0]), &r(&[1, 0])), 2);
}

#[test]
fn supports_and_lengths() {
    let b2 = sys("B2");
    assert_eq!(b2.support(&r(&[1, 2])).unwrap(), NodeSet::from_indices([0, 1]));
    assert_eq!(b2.length_class(&r(&[1, 0])).unwrap(), LengthClass::Long);
    assert_eq!(b2.length_class(&r(&[1, 2])).unwrap(), LengthClass::Long);
    assert_eq!(b2.length_class(&r(&[1, 1])).unwrap(), LengthClass::Short);
    let g2 = sys("G2");
    assert_eq!(g2.support(&r(&[0, 1])).unwrap(), NodeSet::singleton(1));
    assert_eq!(g2.length_class(&r(&[2, 1])).unwrap(), LengthClass::Short);
    let f4 = sys("F4");
    assert_eq!(f4.support(&r(&[1, 1, 1, 1])).unwrap(), NodeSet::full(4));
    assert!(matches!(b2.support(&r(&[2, 1])), Err(RootSystemError::NotARoot(_))));
    assert!(matches!(b2.support(&r(&[1])), Err(RootSystemError::WrongLength { .. })));
    assert!(sys("A3").positive_roots().iter().all(|g| sys("A3").length_class(g).unwrap() == LengthClass::Long));
}

#[test]
fn levi_roots() {
    let b2 = sys("B2");
    assert_eq!(b2.levi_positive_roots(NodeSet::singleton(1)), vec![r(&[0, 1])]);
    assert!(sys("G2").levi_positive_roots(NodeSet::empty()).is_empty());
    let f4 = sys("F4");
    let mut got = f4.levi_positive_roots(NodeSet::from_indices([1, 2]));
    got.sort();
    let mut want = vec![r(&[0, 1, 0, 0]), r(&[0, 0, 1, 0]), r(&[0, 1, 1, 0]), r(&[0, 1, 2, 0])];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn very_special_dual_examples() {
    let c2 = sys("C2");
    let map = c2.very_special_dual().unwrap();
    assert_eq!(map.dual.name(), "B2");
    let idx = c2.positive_index(&r(&[1, 1])).unwrap();
    assert_eq!(map.images[idx], r(&[1, 2]));

    let b2 = sys("B2");
    let map = b2.very_special_dual().unwrap();
    for i in 0..2 {
        let a = Root::simple(2, i);
        let img = map.map_root(&b2, &a);
        assert_eq!(img, Root::simple(2, map.node_perm[i]));
        assert_ne!(b2.length_class(&a).unwrap(), map.dual.length_class(&img).unwrap());
    }
    assert!(matches!(sys("A3").very_special_dual(), Err(RootSystemError::SimplyLaced(_))));
}

#[test]
fn very_special_dual_is_an_involution_exchanging_lengths() {
    for name in ["B2", "B3", "B4", "C3", "C5", "F4", "G2"] {
        let rs = sys(name);
        let there = rs.very_special_dual().unwrap();
        let back = there.dual.very_special_dual().unwrap();
        assert_eq!(back.dual.name(), rs.name());
        let mut seen = std::collections::HashSet::new();
        for (i, g) in rs.positive_roots().iter().enumerate() {
            let img = &there.images[i];
            assert!(img.is_positive(), "{name}: {g} -> {img}");
            assert!(seen.insert(img.clone()));
            assert_ne!(rs.length_of(i), there.dual.length_class(img).unwrap());
            assert_eq!(&there.dual.very_special_dual().unwrap().map_root(&there.dual, img), g);
        }
    }
}

#[test]
fn f4_long_root_subsystem_is_d4() {
    let f4 = sys("F4");
    let sub = f4.long_root_subsystem().unwrap();
    assert_eq!(sub.roots.len(), 24);
    assert_eq!(sub.basis[0], r(&[0, 1, 2, 2]));
    assert_eq!(sub.basis[1], r(&[1, 0, 0, 0]));
    assert_eq!(sub.basis[2], r(&[0, 1, 0, 0]));
    let d4 = RootSystem::new(sub.kind);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(f4.pairing(&sub.basis[i], &sub.basis[j]), 2 * d4.pairing_matrix()[i][j]);
        }
    }
    // β₁ = ε₁ − ε₂ in the ε-realization.
    let eps = f4.epsilon_of(&sub.basis[0]);
    let want: Vec<Ratio<i64>> = [1, -1, 0, 0].iter().map(|&x| Ratio::from_integer(x)).collect();
    assert_eq!(eps, want);
    assert!(sys("B3").long_root_subsystem().is_err());
}

#[test]
fn f4_delta_roots_are_roots() {
    let f4 = sys("F4");
    for d in [[1, 1, 1, 1], [1, 2, 3, 1], [1, 1, 2, 2], [1, 2, 2, 2]] {
        assert!(f4.is_root(&r(&d)), "{d:?}");
    }
    assert!(!f4.is_root(&r(&[0, 3, 3, 1])));
}

#[test]
fn incidence_root_examples() {
    let f4 = sys("F4");
    assert_eq!(f4.find_incidence_root(NodeSet::empty(), NodeSet::singleton(0)).unwrap(), (0, r(&[0, 1, 0, 0])));
    let a3 = sys("A3");
    assert_eq!(a3.find_incidence_root(NodeSet::singleton(1), NodeSet::singleton(0)).unwrap(), (0, r(&[0, 1, 1])));
    let b3 = sys("B3");
    assert_eq!(b3.find_incidence_root(NodeSet::empty(), NodeSet::singleton(2)).unwrap(), (2, r(&[0, 1, 0])));
    assert!(a3.find_incidence_root(NodeSet::empty(), NodeSet::full(3)).is_err());
    assert!(a3.find_incidence_root(NodeSet::empty(), NodeSet::empty()).is_err());
}

#[test]
fn incidence_root_exhaustive_rank_at_most_four() {
    for t in all_types().into_iter().filter(|t| t.rank <= 4) {
        let rs = RootSystem::new(t);
        for levi in rs.all_nodes().subsets() {
            let off = rs.all_nodes().difference(levi);
            for left in off.subsets() {
                if left.is_empty() || left == off {
                    continue;
                }
                let (l, delta) = rs.find_incidence_root(levi, left).unwrap();
                assert!(left.contains(l));
                assert!(rs.is_root(&delta) && delta.is_positive(), "{t} {delta}");
                assert!(delta.support().is_disjoint(left));
                assert!(rs.pairing(&delta, &Root::simple(rs.rank(), l)) < 0);
            }
        }
    }
}

#[test]
fn pairing_invariants() {
    for t in all_types() {
        let rs = RootSystem::new(t);
        let roots = rs.positive_roots();
        let min_diag = (0..rs.rank()).map(|i| rs.pairing_matrix()[i][i]).min().unwrap();
        assert_eq!(min_diag, 2, "{t}");
        for (i, g) in roots.iter().enumerate() {
            let n = rs.pairing(g, g);
            assert!(n == 2 || n == 4 || (n == 6 && t.series == Series::G), "{t} {g} {n}");
            assert_eq!(n, rs.norm_of(i));
            for d in roots {
                assert_eq!(rs.pairing(g, d), rs.pairing(d, g));
            }
        }
    }
}

#[test]
fn root_strings_are_unbroken() {
    for t in all_types().into_iter().filter(|t| t.rank <= 5) {
        let rs = RootSystem::new(t);
        let all: Vec<Root> = rs.positive_roots().iter().flat_map(|g| [g.clone(), -g]).collect();
        for g in &all {
            for d in &all {
                if g == d || *g == -d {
                    continue;
                }
                let in_phi = |k: i32| rs.is_root(&(g + &d.scaled(k)));
                let members: Vec<i32> = (-4..=4).filter(|&k| in_phi(k)).collect();
                if let (Some(&lo), Some(&hi)) = (members.first(), members.last()) {
                    assert_eq!(members.len() as i32, hi - lo + 1, "{t}: {g} along {d}");
                }
            }
        }
    }
}

#[test]
fn subsystems_are_renumbered_canonically() {
    let e8 = sys("E8");
    let sub = e8.subsystem(NodeSet::full(8).without(7));
    assert_eq!(sub.system.name(), "E7");
    let sub = e8.subsystem(NodeSet::full(8).without(0));
    assert_eq!(sub.system.name(), "D7");
    let f4 = sys("F4");
    let sub = f4.subsystem(NodeSet::from_indices([1, 2, 3]));
    assert_eq!(sub.system.name(), "C3");
    let sub = f4.subsystem(NodeSet::from_indices([0, 1, 2]));
    assert_eq!(sub.system.name(), "B3");
    let sub = sys("B4").subsystem(NodeSet::from_indices([0, 2, 3]));
    assert_eq!(sub.system.name(), "A1xB2");
    assert_eq!(sub.system.labels(), &[1, 3, 4]);
    let sub = sys("G2").subsystem(NodeSet::singleton(1));
    assert_eq!(sub.system.name(), "A1");
    assert_eq!(sys("A3").subsystem(NodeSet::empty()).system.name(), "trivial");
}

#[test]
fn subsystem_pairings_agree_with_ambient() {
    for t in all_types() {
        let rs = RootSystem::new(t);
        for skip in 0..rs.rank() {
            let sub = rs.subsystem(rs.all_nodes().without(skip));
            for (j, &a) in sub.ambient_nodes.iter().enumerate() {
                for (k, &b) in sub.ambient_nodes.iter().enumerate() {
                    let amb = rs.pairing_matrix()[a][b];
                    let loc = sub.system.pairing_matrix()[j][k];
                    // Proportional with the same constant on each component.
                    assert_eq!(amb == 0, loc == 0, "{t} minus {skip}");
                }
            }
            let cartan = rs.cartan_matrix();
            let local = sub.system.cartan_matrix();
            for (j, &a) in sub.ambient_nodes.iter().enumerate() {
                for (k, &b) in sub.ambient_nodes.iter().enumerate() {
                    assert_eq!(cartan[a][b], local[j][k], "{t} minus {skip}");
                }
            }
        }
    }
}

#[test]
fn reducible_parse_and_name() {
    let rs = sys("A1xA2");
    assert_eq!(rs.rank(), 3);
    assert_eq!(rs.num_positive(), 4);
    assert_eq!(rs.name(), "A1xA2");
    assert!(!rs.is_irreducible());
    assert!(rs.kind().is_err());
    assert_eq!(sys("trivial").rank(), 0);
}

proptest! {
    #[test]
    fn node_set_subsets_enumerate_power_set(bits in 0u64..256) {
        let s = NodeSet::from_bits(bits);
        let subs: Vec<NodeSet> = s.subsets().collect();
        prop_assert_eq!(subs.len(), 1usize << s.len());
        prop_assert!(subs.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn pairing_is_bilinear(a in prop::collection::vec(-3i32..=3, 4), b in prop::collection::vec(-3i32..=3, 4), c in prop::collection::vec(-3i32..=3, 4)) {
        let f4 = RootSystem::parse("F4").unwrap();
        let (a, b, c) = (Root::new(a), Root::new(b), Root::new(c));
        prop_assert_eq!(f4.pairing(&(&a + &b), &c), f4.pairing(&a, &c) + f4.pairing(&b, &c));
        prop_assert!(a.is_zero() || f4.pairing(&a, &a) > 0);
    }
}
