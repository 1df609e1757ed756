//! Magnitudes of Chevalley structure constants, read off root strings.
//!
//! `[X_γ, X_δ] = ±(r+1) X_{γ+δ}` where `r` is the length of the δ-string
//! below γ. Signs are not tracked.

use thiserror::Error;

use crate::phi::Prime;
use crate::rootsys::{Root, RootSystem, RootSystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("ProportionalRoots: {0} and {1} are proportional")]
    Proportional(Root, Root),
    #[error("NotComposable: {0} + {1} is not a root")]
    NotComposable(Root, Root),
}

/// The pair `(γ, δ)` together with the length of the δ-string below γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainData {
    pub gamma: Root,
    pub delta: Root,
    pub r: u32,
}

fn check_pair(rs: &RootSystem, gamma: &Root, delta: &Root) -> Result<(), ChevalleyError> {
    for g in [gamma, delta] {
        if !rs.is_root(g) {
            if g.coeffs().len() != rs.rank() {
                return Err(RootSystemError::WrongLength { expected: rs.rank(), got: g.coeffs().len() }.into());
            }
            return Err(RootSystemError::NotARoot(g.clone()).into());
        }
    }
    if gamma == delta || *gamma == -delta {
        return Err(ChevalleyError::Proportional(gamma.clone(), delta.clone()));
    }
    Ok(())
}

fn string_below(rs: &RootSystem, gamma: &Root, delta: &Root) -> u32 {
    let mut r = 0;
    let mut cur = gamma - delta;
    while rs.is_root(&cur) {
        r += 1;
        cur = &cur - delta;
    }
    r
}

/// Largest `r` with `γ − rδ, …, γ` all roots. Requires `γ + δ ∈ Φ`.
pub fn down_chain_length(rs: &RootSystem, gamma: &Root, delta: &Root) -> Result<ChainData, ChevalleyError> {
    check_pair(rs, gamma, delta)?;
    if !rs.is_root(&(gamma + delta)) {
        return Err(ChevalleyError::NotComposable(gamma.clone(), delta.clone()));
    }
    Ok(ChainData { gamma: gamma.clone(), delta: delta.clone(), r: string_below(rs, gamma, delta) })
}

/// `|N_{γ,δ}|`: zero when `γ + δ` is not a root, otherwise `r + 1`.
pub fn structure_constant_magnitude(rs: &RootSystem, gamma: &Root, delta: &Root) -> Result<u32, ChevalleyError> {
    check_pair(rs, gamma, delta)?;
    if !rs.is_root(&(gamma + delta)) {
        return Ok(0);
    }
    Ok(string_below(rs, gamma, delta) + 1)
}

/// Whether the structure constant is divisible by `p`.
pub fn vanishes_mod_p(rs: &RootSystem, gamma: &Root, delta: &Root, p: Prime) -> Result<bool, ChevalleyError> {
    Ok(structure_constant_magnitude(rs, gamma, delta)? % p.get() == 0)
}

/// All composable pairs `(γ, δ)` of roots and their magnitudes.
pub fn structure_table(rs: &RootSystem) -> Vec<(Root, Root, u32)> {
    let all: Vec<Root> = rs.positive_roots().iter().cloned().chain(rs.positive_roots().iter().map(|g| -g)).collect();
    let mut out = Vec::new();
    for g in &all {
        for d in &all {
            if g == d || *g == -d {
                continue;
            }
            if rs.is_root(&(g + d)) {
                out.push((g.clone(), d.clone(), string_below(rs, g, d) + 1));
            }
        }
    }
    out
}

/// The table as CSV with a header line; roots are written as `[a,b,…]`.
pub fn structure_table_csv(rs: &RootSystem) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["gamma", "delta", "magnitude"]).expect("in-memory write");
    for (g, d, m) in structure_table(rs) {
        w.write_record([g.to_string(), d.to_string(), m.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i32]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn g2_chains() {
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(down_chain_length(&g2, &r(&[-2, -1]), &r(&[-1, -1])).unwrap().r, 2);
        assert_eq!(down_chain_length(&g2, &r(&[-3, -1]), &r(&[0, -1])).unwrap().r, 0);
        assert_eq!(structure_constant_magnitude(&g2, &r(&[-2, -1]), &r(&[-1, -1])).unwrap(), 3);
        assert_eq!(structure_constant_magnitude(&g2, &r(&[-3, -1]), &r(&[0, -1])).unwrap(), 1);
        let p3 = Prime::new(3).unwrap();
        assert!(!vanishes_mod_p(&g2, &r(&[-2, -1]), &r(&[1, 0]), p3).unwrap());
        assert_eq!(structure_constant_magnitude(&g2, &r(&[-2, -1]), &r(&[1, 0])).unwrap(), 2);
        assert!(vanishes_mod_p(&g2, &r(&[-2, -1]), &r(&[-1, -1]), p3).unwrap());
    }

    #[test]
    fn simple_cases() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(down_chain_length(&a2, &r(&[1, 0]), &r(&[0, 1])).unwrap().r, 0);
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(structure_constant_magnitude(&b2, &r(&[1, 2]), &r(&[0, 1])).unwrap(), 0);
        assert!(matches!(down_chain_length(&b2, &r(&[1, 2]), &r(&[0, 1])), Err(ChevalleyError::NotComposable(..))));
        assert!(matches!(
            structure_constant_magnitude(&b2, &r(&[1, 1]), &r(&[-1, -1])),
            Err(ChevalleyError::Proportional(..))
        ));
        assert!(structure_constant_magnitude(&b2, &r(&[2, 1]), &r(&[1, 0])).is_err());
    }

    #[test]
    fn magnitudes_are_bounded_by_four() {
        for name in ["A3", "B2", "B3", "C3", "C4", "D4", "F4", "G2"] {
            let rs = RootSystem::parse(name).unwrap();
            let table = structure_table(&rs);
            assert!(!table.is_empty());
            for (g, d, m) in table {
                assert!((1..=4).contains(&m), "{name}");
                assert!(m < 3 || name == "G2", "{name}: {g} {d} {m}");
                if !rs.is_root(&(&g - &d)) {
                    assert_eq!(m, 1);
                }
                if matches!(name, "A3" | "D4") {
                    assert_eq!(m, 1);
                }
            }
        }
    }

    #[test]
    fn magnitude_is_invariant_under_simple_reflections() {
        for name in ["B3", "C3", "F4", "G2"] {
            let rs = RootSystem::parse(name).unwrap();
            let cartan = rs.cartan_matrix();
            let reflect = |g: &Root, i: usize| {
                let k: i64 = g.coeffs().iter().enumerate().map(|(j, &c)| c as i64 * cartan[i][j]).sum();
                let mut v = g.coeffs().to_vec();
                v[i] -= k as i32;
                Root::new(v)
            };
            for (g, d, m) in structure_table(&rs) {
                for i in 0..rs.rank() {
                    let (g2, d2) = (reflect(&g, i), reflect(&d, i));
                    assert_eq!(structure_constant_magnitude(&rs, &g2, &d2).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn csv_has_header() {
        let csv = structure_table_csv(&RootSystem::parse("A2").unwrap());
        assert!(csv.starts_with("gamma,delta,magnitude\n"));
        assert_eq!(csv.lines().count(), 1 + 12);
    }
}
