//! Exhaustive enumeration of parabolic schemes up to a height bound.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::geometry::{self, Character, NotFanoCertificate};
use crate::phi::{self, Height, ParabolicScheme, PhiError, Prime, RankOneBlock};
use crate::rootsys::{LeviSubset, RootSystem};

/// Largest number of candidate functions the brute-force oracle will scan.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error("SearchSpaceTooLarge: {0} candidate functions exceed the limit of {BRUTE_FORCE_LIMIT}")]
    SearchSpaceTooLarge(String),
}

#[derive(Debug, Clone)]
pub struct CensusQuery {
    pub rs: Arc<RootSystem>,
    pub p: Prime,
    pub levi: LeviSubset,
    pub max_height: u32,
    pub normalized_only: bool,
}

impl CensusQuery {
    pub fn new(rs: Arc<RootSystem>, p: Prime, levi: LeviSubset, max_height: u32) -> Self {
        CensusQuery { rs, p, levi, max_height, normalized_only: false }
    }

    #[must_use]
    pub fn normalized(mut self) -> Self {
        self.normalized_only = true;
        self
    }
}

/// Blocks at `alpha` whose height at `alpha` is at most `max_m`.
pub fn rank_one_catalog(rs: &RootSystem, p: Prime, alpha: usize, max_m: u32) -> Vec<RankOneBlock> {
    phi::catalog(rs, p, alpha, max_m)
}

fn sort_key(s: &ParabolicScheme) -> (Vec<usize>, Vec<Height>) {
    (s.levi().iter().collect(), s.values().to_vec())
}

fn finish(q: &CensusQuery, set: HashSet<ParabolicScheme>) -> Vec<ParabolicScheme> {
    let mut out: Vec<ParabolicScheme> = set.into_iter().filter(|s| !q.normalized_only || s.is_normalized()).collect();
    out.sort_by_cached_key(sort_key);
    out
}

/// All distinct intersections of one catalog block per `α ∈ Δ∖I`.
pub fn enumerate_parabolics(q: &CensusQuery) -> Result<Vec<ParabolicScheme>, CensusError> {
    let rs = &q.rs;
    let mut per_alpha = Vec::new();
    for alpha in rs.all_nodes().difference(q.levi).iter() {
        let blocks = rank_one_catalog(rs, q.p, alpha, q.max_height)
            .into_iter()
            .map(|b| phi::block_phi(rs, q.p, b))
            .collect::<Result<Vec<_>, _>>()?;
        per_alpha.push(blocks);
    }
    let mut partial = vec![ParabolicScheme::whole(rs.clone(), q.p)];
    for blocks in &per_alpha {
        let mut next = HashSet::new();
        for acc in &partial {
            for b in blocks {
                next.insert(acc.intersect(b)?);
            }
        }
        partial = next.into_iter().collect();
    }
    Ok(finish(q, partial.into_iter().collect()))
}

/// Every `φ: Φ⁺∖Φ_I⁺ → {0..M}` that passes [`ParabolicScheme::is_valid`].
pub fn brute_force_enumerate(q: &CensusQuery) -> Result<Vec<ParabolicScheme>, CensusError> {
    let rs = &q.rs;
    let domain: Vec<usize> = (0..rs.num_positive()).filter(|&i| !rs.is_levi_root(i, q.levi)).collect();
    let guard = (q.max_height as u128 + 2).checked_pow(domain.len() as u32);
    if guard.is_none_or(|g| g > BRUTE_FORCE_LIMIT) {
        return Err(CensusError::SearchSpaceTooLarge(format!("{}^{}", q.max_height + 2, domain.len())));
    }
    let mut digits = vec![0u32; rs.num_positive()];
    let mut found = HashSet::new();
    loop {
        let s = ParabolicScheme::from_fn(rs.clone(), q.p, q.levi, |i| digits[i])?;
        if s.is_valid() {
            found.insert(s);
        }
        // Odometer step over the domain coordinates.
        let mut carry = true;
        for &i in &domain {
            if digits[i] < q.max_height {
                digits[i] += 1;
                carry = false;
                break;
            }
            digits[i] = 0;
        }
        if carry {
            break;
        }
    }
    Ok(finish(q, found))
}

#[derive(Debug, Clone)]
pub struct FanoRow {
    pub scheme: ParabolicScheme,
    pub chi: Character,
    pub fano: bool,
    pub certificate: Option<NotFanoCertificate>,
}

#[derive(Debug, Clone)]
pub struct FanoCensus {
    pub rows: Vec<FanoRow>,
    /// Largest `φ` value among the Fano schemes.
    pub max_fano_height: Option<u32>,
}

pub fn fano_census(q: &CensusQuery) -> Result<FanoCensus, CensusError> {
    let rows: Vec<FanoRow> = enumerate_parabolics(q)?
        .into_iter()
        .map(|scheme| {
            let chi = geometry::anticanonical_character(&scheme);
            let fano = geometry::is_ample(scheme.root_system(), scheme.levi(), &chi);
            let certificate = if scheme.root_system().is_irreducible() {
                geometry::not_fano_certificate(&scheme).ok().flatten()
            } else {
                None
            };
            FanoRow { scheme, chi, fano, certificate }
        })
        .collect();
    let max_fano_height = rows.iter().filter(|r| r.fano).map(|r| r.scheme.max_height()).max();
    Ok(FanoCensus { rows, max_fano_height })
}

/// Covering relations `(smaller, larger)` of the containment order.
pub fn hasse_diagram(schemes: &[ParabolicScheme]) -> Result<Vec<(usize, usize)>, CensusError> {
    let n = schemes.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            below[i][j] = i != j && schemes[j].contains(&schemes[i])? && schemes[i] != schemes[j];
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Short human-readable name: the generated blocks, or `G` for the whole group.
pub fn scheme_label(s: &ParabolicScheme) -> String {
    match s.generated_blocks() {
        Ok(blocks) if !blocks.is_empty() => blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ∩ "),
        Ok(_) => "G".to_string(),
        Err(_) => phi::phi_hash(s),
    }
}

pub fn hasse_dot(schemes: &[ParabolicScheme]) -> Result<String, CensusError> {
    let edges = hasse_diagram(schemes)?;
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (i, x) in schemes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", scheme_label(x));
    }
    for (a, b) in edges {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    Ok(s)
}

fn levi_string(s: &ParabolicScheme) -> String {
    s.levi().iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn phi_json(s: &ParabolicScheme) -> String {
    serde_json::to_string(&crate::phi::SchemeRepr::from(s).phi).expect("map serializes")
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// One scheme per row.
pub fn census_csv(schemes: &[ParabolicScheme]) -> String {
    write_csv(
        &["type", "prime", "levi", "phi_hash", "phi"],
        schemes.iter().map(|s| {
            vec![s.root_system().name(), s.prime().to_string(), levi_string(s), phi::phi_hash(s), phi_json(s)]
        }),
    )
}

/// One canonical JSON object per line.
pub fn census_json_lines(schemes: &[ParabolicScheme]) -> String {
    schemes.iter().map(|s| s.to_canonical_json() + "\n").collect()
}

pub fn fano_csv(rows: &[FanoRow]) -> String {
    write_csv(
        &["type", "prime", "levi", "phi_hash", "fano", "certificate_root", "pairing_value", "phi", "chi_pairings"],
        rows.iter().map(|r| {
            let s = &r.scheme;
            let rs = s.root_system();
            let (root, value) = match &r.certificate {
                Some(c) => (rs.labels()[c.beta_l].to_string(), c.pairing_value.to_string()),
                None => (String::new(), String::new()),
            };
            let pairings: Vec<String> =
                s.non_levi().iter().map(|a| format!("{}:{}", rs.labels()[a], r.chi.pairing_simple(rs, a))).collect();
            vec![
                rs.name(),
                s.prime().to_string(),
                levi_string(s),
                phi::phi_hash(s),
                r.fano.to_string(),
                root,
                value,
                phi_json(s),
                pairings.join(" "),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi::BlockKind;
    use crate::rootsys::NodeSet;

    fn q(name: &str, p: u32, levi: NodeSet, m: u32) -> CensusQuery {
        CensusQuery::new(Arc::new(RootSystem::parse(name).unwrap()), Prime::new(p).unwrap(), levi, m)
    }

    #[test]
    fn catalogs() {
        let g2 = RootSystem::parse("G2").unwrap();
        let two = Prime::new(2).unwrap();
        let kinds = |v: Vec<RankOneBlock>| {
            let mut k: Vec<String> = v.iter().map(RankOneBlock::kind_label).collect();
            k.sort();
            k
        };
        assert_eq!(kinds(rank_one_catalog(&g2, two, 1, 2)), ["Standard(0)", "Standard(1)", "Standard(2)"]);
        assert_eq!(kinds(rank_one_catalog(&g2, two, 0, 1)), ["ExoticH(0)", "ExoticL(0)", "Standard(0)", "Standard(1)"]);
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(kinds(rank_one_catalog(&b2, Prime::new(3).unwrap(), 0, 1)), ["Standard(0)", "Standard(1)"]);
    }

    #[test]
    fn a2_census() {
        let got = enumerate_parabolics(&q("A2", 2, NodeSet::empty(), 1)).unwrap();
        assert_eq!(got.len(), 4);
        for s in &got {
            let v = s.values();
            assert_eq!(v[2], v[0].min(v[1]));
        }
        assert_eq!(got, brute_force_enumerate(&q("A2", 2, NodeSet::empty(), 1)).unwrap());
    }

    #[test]
    fn height_zero_gives_reduced() {
        for name in ["A3", "B3", "G2"] {
            let rs = Arc::new(RootSystem::parse(name).unwrap());
            for levi in rs.all_nodes().subsets() {
                let got = enumerate_parabolics(&CensusQuery::new(rs.clone(), Prime::new(2).unwrap(), levi, 0)).unwrap();
                assert_eq!(got.len(), 1);
                assert!(got[0].is_reduced());
            }
        }
    }

    #[test]
    fn g2_normalized_count() {
        for m in 1..=5 {
            let got = enumerate_parabolics(&q("G2", 2, NodeSet::empty(), m).normalized()).unwrap();
            assert_eq!(got.len() as u32, 4 * m + 1);
        }
    }

    #[test]
    fn brute_force_guard() {
        assert!(matches!(
            brute_force_enumerate(&q("F4", 2, NodeSet::empty(), 1)),
            Err(CensusError::SearchSpaceTooLarge(_))
        ));
        let b3 = brute_force_enumerate(&q("B3", 2, NodeSet::empty(), 1)).unwrap();
        assert_eq!(b3, enumerate_parabolics(&q("B3", 2, NodeSet::empty(), 1)).unwrap());
    }

    #[test]
    fn hasse_shapes() {
        // A single non-Levi node: the census is the catalog at that node.
        let chain = enumerate_parabolics(&q("B2", 2, NodeSet::singleton(0), 2)).unwrap();
        assert_eq!(chain.len(), 5);
        let edges = hasse_diagram(&chain).unwrap();
        assert_eq!(edges.len(), 4);

        let g2 = enumerate_parabolics(&q("G2", 2, NodeSet::singleton(1), 1)).unwrap();
        assert_eq!(g2.len(), 4);
        let edges = hasse_diagram(&g2).unwrap();
        assert_eq!(edges.len(), 4);
        let label = |i: usize| g2[i].generated_block(0).unwrap();
        for (a, b) in &edges {
            let (a, b) = (label(*a), label(*b));
            assert!(a.kind == BlockKind::Standard || b.kind == BlockKind::Standard);
            assert!(a.chain_rank() < b.chain_rank());
        }

        let single = enumerate_parabolics(&q("A3", 2, NodeSet::empty(), 0)).unwrap();
        assert!(hasse_diagram(&single).unwrap().is_empty());
        let dot = hasse_dot(&g2).unwrap();
        assert!(dot.starts_with("digraph hasse {"));
        assert!(dot.contains("ExoticH(0)@1"));
    }

    #[test]
    fn closed_under_intersection() {
        let all = enumerate_parabolics(&q("C3", 2, NodeSet::empty(), 1)).unwrap();
        let set: HashSet<&ParabolicScheme> = all.iter().collect();
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(5) {
                assert!(set.contains(&a.intersect(b).unwrap()));
            }
        }
    }

    #[test]
    fn fano_census_summary() {
        let c = fano_census(&q("A2", 2, NodeSet::empty(), 5).normalized()).unwrap();
        assert_eq!(c.max_fano_height, Some(1));
        for r in &c.rows {
            if r.certificate.is_some() {
                assert!(!r.fano);
            }
        }
        let g = fano_census(&q("G2", 2, NodeSet::empty(), 5).normalized()).unwrap();
        let fano: Vec<&FanoRow> = g.rows.iter().filter(|r| r.fano).collect();
        assert_eq!(fano.len(), 2);
        let csv = fano_csv(&g.rows);
        assert!(csv.starts_with("type,prime,levi,phi_hash,fano,certificate_root,pairing_value"));
        assert_eq!(csv.lines().count(), g.rows.len() + 1);
    }

    #[test]
    fn outputs_are_deterministic() {
        let a = census_csv(&enumerate_parabolics(&q("B3", 2, NodeSet::singleton(1), 2)).unwrap());
        let b = census_csv(&enumerate_parabolics(&q("B3", 2, NodeSet::singleton(1), 2)).unwrap());
        assert_eq!(a, b);
        let lines = census_json_lines(&enumerate_parabolics(&q("A2", 3, NodeSet::empty(), 1)).unwrap());
        for line in lines.lines() {
            assert_eq!(ParabolicScheme::from_json(line).unwrap().to_canonical_json(), line);
        }
    }
}
