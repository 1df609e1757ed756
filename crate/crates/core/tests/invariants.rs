use std::sync::Arc;

use parabolic::census::{enumerate_parabolics, CensusQuery};
use parabolic::geometry::is_fano;
use parabolic::phi::{KernelKind, Prime};
use parabolic::rootsys::RootSystem;

#[test]
fn fano_status_survives_normalization_on_b2_c2() {
    let mut very_special = 0;
    for name in ["B2", "C2"] {
        let rs = Arc::new(RootSystem::parse(name).unwrap());
        for levi in rs.all_nodes().subsets() {
            let q = CensusQuery::new(rs.clone(), Prime::new(2).unwrap(), levi, 4);
            for x in enumerate_parabolics(&q).unwrap() {
                let (y, stripped) = x.normalize();
                if stripped.iter().any(|k| matches!(k.kind, KernelKind::VerySpecialKernel(_))) {
                    very_special += 1;
                }
                assert_eq!(is_fano(&x), is_fano(&y), "{name} {}", x.to_canonical_json());
            }
        }
    }
    assert!(very_special > 0);
}
