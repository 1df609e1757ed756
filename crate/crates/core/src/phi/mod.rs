//! Parabolic subgroup schemes as numerical functions on positive roots.
//!
//! A scheme is a Levi subset `I` together with `φ: Φ⁺∖Φ_I⁺ → ℕ`; roots of the
//! Levi factor carry the value `∞`. Larger subgroups have larger `φ`, so
//! intersection is the pointwise minimum.

mod serial;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::chevalley;
use crate::rootsys::{LengthClass, LeviSubset, NodeSet, Root, RootSystem, RootSystemError, Series};

pub use serial::{phi_hash, SchemeRepr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("InvalidPrime: {0} is not a prime")]
    InvalidPrime(u32),
    #[error("MismatchedSchemes: schemes live on different root systems or primes")]
    Mismatched,
    #[error("InvalidBlock: {0}")]
    InvalidBlock(String),
    #[error("InvalidLevi: node {0} is out of range")]
    InvalidLevi(usize),
    #[error("DomainMismatch: {0}")]
    DomainMismatch(String),
    #[error("NotInDomain: simple root {0} lies in the Levi subset")]
    NotInDomain(usize),
    #[error("NoUniqueMinimum: no smallest block at simple root {alpha} contains the scheme (minimal candidates: {candidates})")]
    NoUniqueMinimum { alpha: usize, candidates: String },
    #[error("EdgeHypothesis: {0} has no edge of multiplicity {1}")]
    EdgeHypothesis(String, u32),
    #[error("KernelNotContained: the scheme does not contain the very special kernel")]
    KernelNotContained,
    #[error("MalformedInput: {0}")]
    Malformed(String),
}

/// A value of `φ`: a finite height or `∞` on Levi roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u32> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Height::Finite(_))
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, PhiError> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(PhiError::InvalidPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    Standard,
    VerySpecial,
    ExoticH,
    ExoticL,
}

/// A parabolic with maximal reduced part `P^α`, from the rank-one catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankOneBlock {
    pub alpha: usize,
    pub kind: BlockKind,
    pub m: u32,
}

impl RankOneBlock {
    pub fn new(alpha: usize, kind: BlockKind, m: u32) -> Self {
        RankOneBlock { alpha, kind, m }
    }

    /// Name without the anchor, e.g. `VerySpecial(2)`.
    pub fn kind_label(&self) -> String {
        let name = match self.kind {
            BlockKind::Standard => "Standard",
            BlockKind::VerySpecial => "VerySpecial",
            BlockKind::ExoticH => "ExoticH",
            BlockKind::ExoticL => "ExoticL",
        };
        format!("{name}({})", self.m)
    }

    /// Position in the inclusion order at a fixed simple root. Exotic blocks
    /// share a rank; they are incomparable.
    pub fn chain_rank(&self) -> u32 {
        match self.kind {
            BlockKind::Standard => 2 * self.m,
            _ => 2 * self.m + 1,
        }
    }
}

impl fmt::Display for RankOneBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind_label(), self.alpha + 1)
    }
}

/// A kernel stripped from one irreducible factor during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `G^m`, the kernel of the m-th Frobenius.
    Frobenius(u32),
    /// `N^m`, the very special kernel composed with the m-th Frobenius.
    VerySpecialKernel(u32),
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Frobenius(m) => write!(f, "Frobenius({m})"),
            KernelKind::VerySpecialKernel(m) => write!(f, "VerySpecialKernel({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KernelRecord {
    /// Index of the irreducible factor.
    pub factor: usize,
    pub kind: KernelKind,
}

/// `φ(γ+δ) < min(φ(γ), φ(δ))` for a pair where the inequality is forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnneViolation {
    pub gamma: Root,
    pub delta: Root,
    pub sum: Root,
}

/// Whether the factor has an edge of multiplicity `p`.
pub fn edge_hypothesis(rs: &RootSystem, component: usize, p: Prime) -> bool {
    rs.edge_hypothesis(component, p.get())
}

fn is_exotic_anchor(rs: &RootSystem, alpha: usize, p: Prime) -> bool {
    let c = rs.component_of_node(alpha);
    let comp = &rs.components()[c];
    comp.kind.series == Series::G && p.get() == 2 && comp.position(alpha) == Some(0)
}

#[derive(Debug, Clone)]
pub struct ParabolicScheme {
    rs: Arc<RootSystem>,
    p: Prime,
    levi: LeviSubset,
    /// Indexed like `rs.positive_roots()`; `Infinite` exactly on Levi roots.
    phi: Vec<Height>,
}

impl PartialEq for ParabolicScheme {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.levi == other.levi && self.phi == other.phi && *self.rs == *other.rs
    }
}

impl Eq for ParabolicScheme {}

impl std::hash::Hash for ParabolicScheme {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.levi.hash(state);
        self.phi.hash(state);
    }
}

impl ParabolicScheme {
    /// Builds a scheme from the values on `Φ⁺∖Φ_I⁺`, which must be given
    /// exactly once each.
    pub fn new(
        rs: Arc<RootSystem>,
        p: Prime,
        levi: LeviSubset,
        values: &BTreeMap<Root, u32>,
    ) -> Result<Self, PhiError> {
        check_levi(&rs, levi)?;
        let mut phi = Vec::with_capacity(rs.num_positive());
        for (i, g) in rs.positive_roots().iter().enumerate() {
            if rs.is_levi_root(i, levi) {
                if values.contains_key(g) {
                    return Err(PhiError::DomainMismatch(format!("{g} lies in the Levi factor")));
                }
                phi.push(Height::Infinite);
            } else {
                match values.get(g) {
                    Some(&h) => phi.push(Height::Finite(h)),
                    None => return Err(PhiError::DomainMismatch(format!("missing value at {g}"))),
                }
            }
        }
        if let Some(extra) = values.keys().find(|g| rs.positive_index(g).is_none()) {
            return Err(PhiError::DomainMismatch(format!("{extra} is not a positive root")));
        }
        Ok(ParabolicScheme { rs, p, levi, phi })
    }

    /// Builds a scheme from a function on the non-Levi positive roots, given
    /// by root index.
    pub fn from_fn(
        rs: Arc<RootSystem>,
        p: Prime,
        levi: LeviSubset,
        mut f: impl FnMut(usize) -> u32,
    ) -> Result<Self, PhiError> {
        check_levi(&rs, levi)?;
        let phi = (0..rs.num_positive())
            .map(|i| if rs.is_levi_root(i, levi) { Height::Infinite } else { Height::Finite(f(i)) })
            .collect();
        Ok(ParabolicScheme { rs, p, levi, phi })
    }

    /// The reduced parabolic `P_I`.
    pub fn reduced(rs: Arc<RootSystem>, p: Prime, levi: LeviSubset) -> Result<Self, PhiError> {
        Self::from_fn(rs, p, levi, |_| 0)
    }

    /// The whole group: `I = Δ`, empty domain.
    pub fn whole(rs: Arc<RootSystem>, p: Prime) -> Self {
        let levi = rs.all_nodes();
        let phi = vec![Height::Infinite; rs.num_positive()];
        ParabolicScheme { rs, p, levi, phi }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn levi(&self) -> LeviSubset {
        self.levi
    }

    /// Simple roots outside the Levi subset.
    pub fn non_levi(&self) -> NodeSet {
        self.rs.all_nodes().difference(self.levi)
    }

    pub fn value(&self, gamma: &Root) -> Result<Height, PhiError> {
        let idx = self.rs.positive_index(gamma).ok_or_else(|| RootSystemError::NotARoot(gamma.clone()))?;
        Ok(self.phi[idx])
    }

    pub fn value_at(&self, idx: usize) -> Height {
        self.phi[idx]
    }

    pub fn values(&self) -> &[Height] {
        &self.phi
    }

    /// Indices of the roots in `Φ⁺∖Φ_I⁺`.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.phi.len()).filter(|&i| self.phi[i].is_finite())
    }

    /// `φ` on its domain, keyed by root.
    pub fn finite_values(&self) -> BTreeMap<Root, u32> {
        self.domain().map(|i| (self.rs.positive_roots()[i].clone(), self.phi[i].finite().unwrap())).collect()
    }

    pub fn max_height(&self) -> u32 {
        self.phi.iter().filter_map(|h| h.finite()).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.phi.iter().all(|h| matches!(h, Height::Finite(0) | Height::Infinite))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PhiError> {
        if self.p != other.p || *self.rs != *other.rs {
            return Err(PhiError::Mismatched);
        }
        Ok(())
    }

    /// Scheme-theoretic intersection: pointwise minimum.
    pub fn intersect(&self, other: &Self) -> Result<Self, PhiError> {
        self.check_compatible(other)?;
        Ok(ParabolicScheme {
            rs: self.rs.clone(),
            p: self.p,
            levi: self.levi.intersection(other.levi),
            phi: self.phi.iter().zip(&other.phi).map(|(a, b)| *a.min(b)).collect(),
        })
    }

    /// `self ⊇ other`, i.e. `φ_self ≥ φ_other` everywhere.
    pub fn contains(&self, other: &Self) -> Result<bool, PhiError> {
        self.check_compatible(other)?;
        Ok(self.phi.iter().zip(&other.phi).all(|(a, b)| a >= b))
    }

    /// Adds `m` to every finite value.
    pub fn frobenius_pullback(&self, m: u32) -> Self {
        let mut out = self.clone();
        for h in &mut out.phi {
            if let Height::Finite(v) = h {
                *v += m;
            }
        }
        out
    }

    /// The smallest catalog block at `alpha` containing this scheme.
    pub fn generated_block(&self, alpha: usize) -> Result<RankOneBlock, PhiError> {
        if alpha >= self.rs.rank() {
            return Err(PhiError::InvalidLevi(alpha));
        }
        if self.levi.contains(alpha) {
            return Err(PhiError::NotInDomain(alpha + 1));
        }
        let bound = self.max_height() + 1;
        let mut candidates = Vec::new();
        for block in catalog(&self.rs, self.p, alpha, bound) {
            let scheme = block_phi(&self.rs, self.p, block)?;
            if scheme.contains(self)? {
                candidates.push((block, scheme));
            }
        }
        let minimal: Vec<&(RankOneBlock, ParabolicScheme)> = candidates
            .iter()
            .filter(|(_, s)| candidates.iter().all(|(_, t)| !(s.contains(t).unwrap() && s != t)))
            .collect();
        match minimal.as_slice() {
            [(b, _)] => Ok(*b),
            _ => Err(PhiError::NoUniqueMinimum {
                alpha: alpha + 1,
                candidates: minimal.iter().map(|(b, _)| b.kind_label()).collect::<Vec<_>>().join(", "),
            }),
        }
    }

    /// The generated blocks at every simple root outside the Levi subset.
    pub fn generated_blocks(&self) -> Result<Vec<RankOneBlock>, PhiError> {
        self.non_levi().iter().map(|a| self.generated_block(a)).collect()
    }

    /// Intersection of the blocks generated at each `α ∈ Δ∖I`.
    pub fn reconstruct(&self) -> Result<Self, PhiError> {
        let mut acc = ParabolicScheme::whole(self.rs.clone(), self.p);
        for alpha in self.non_levi().iter() {
            let block = block_phi(&self.rs, self.p, self.generated_block(alpha)?)?;
            acc = acc.intersect(&block)?;
        }
        Ok(acc)
    }

    /// A scheme is valid when it is the intersection of its generated blocks.
    pub fn is_valid(&self) -> bool {
        matches!(self.reconstruct(), Ok(r) if r == *self)
    }

    /// Roots where `self` and `other` disagree: `(root, self, other)`.
    pub fn diff(&self, other: &Self) -> Vec<(Root, Height, Height)> {
        self.phi
            .iter()
            .zip(&other.phi)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (self.rs.positive_roots()[i].clone(), *a, *b))
            .collect()
    }

    /// Pairs of positive roots violating `φ(γ+δ) ≥ min(φ(γ), φ(δ))` where
    /// the structure constant is a unit mod p and `γ−δ ∉ Φ`.
    pub fn enne_check(&self) -> Vec<EnneViolation> {
        let rs = &*self.rs;
        let roots = rs.positive_roots();
        let mut out = Vec::new();
        for (i, g) in roots.iter().enumerate() {
            for (j, d) in roots.iter().enumerate().skip(i + 1) {
                let sum = g + d;
                let Some(k) = rs.positive_index(&sum) else { continue };
                if rs.is_root(&(g - d)) {
                    continue;
                }
                if chevalley::vanishes_mod_p(rs, g, d, self.p).unwrap_or(true) {
                    continue;
                }
                if self.phi[k] < self.phi[i].min(self.phi[j]) {
                    out.push(EnneViolation { gamma: g.clone(), delta: d.clone(), sum });
                }
            }
        }
        out
    }

    /// The irreducible factors, each on its own standalone system.
    pub fn factors(&self) -> Vec<ParabolicScheme> {
        (0..self.rs.components().len())
            .map(|c| {
                let sub = self.rs.factor(c);
                let local = Arc::new(sub.system.clone());
                let levi = NodeSet::from_indices(
                    sub.ambient_nodes.iter().enumerate().filter(|(_, &a)| self.levi.contains(a)).map(|(j, _)| j),
                );
                let phi = local
                    .positive_roots()
                    .iter()
                    .map(|g| self.phi[self.rs.positive_index(&sub.globalize(g, self.rs.rank())).unwrap()])
                    .collect();
                ParabolicScheme { rs: local, p: self.p, levi, phi }
            })
            .collect()
    }

    /// Reassembles factors (irreducible or not) into one scheme on the
    /// product system.
    pub fn product(parts: &[ParabolicScheme], p: Prime) -> Result<Self, PhiError> {
        let mut kinds = Vec::new();
        let mut labels = Vec::new();
        for part in parts {
            if part.p != p {
                return Err(PhiError::Mismatched);
            }
            kinds.extend(part.rs.components().iter().map(|c| c.kind));
            labels.extend_from_slice(part.rs.labels());
        }
        let rs = Arc::new(RootSystem::from_components(&kinds).with_labels(labels));
        let mut phi = vec![Height::Infinite; rs.num_positive()];
        let mut levi = NodeSet::empty();
        let mut offset = 0;
        for part in parts {
            let r = part.rs.rank();
            for i in part.levi.iter() {
                levi = levi.with(offset + i);
            }
            for (i, g) in part.rs.positive_roots().iter().enumerate() {
                let mut v = vec![0; rs.rank()];
                v[offset..offset + r].copy_from_slice(g.coeffs());
                phi[rs.positive_index(&Root::new(v)).unwrap()] = part.phi[i];
            }
            offset += r;
        }
        Ok(ParabolicScheme { rs, p, levi, phi })
    }

    /// Transport along the very special isogeny onto the dual system:
    /// `ψ(γ̄) = φ(γ) + [γ long]`.
    pub fn vsi_pullback(&self) -> Result<Self, PhiError> {
        self.vsi_transport(|h, len| match len {
            LengthClass::Long => Some(h + 1),
            LengthClass::Short => Some(h),
        })
    }

    /// Inverse of [`Self::vsi_pullback`]: `ψ(γ̄) = φ(γ) − [γ short]`.
    /// Requires `φ ≥ 1` on every short root of the domain.
    pub fn vsi_pushforward(&self) -> Result<Self, PhiError> {
        self.vsi_transport(|h, len| match len {
            LengthClass::Long => Some(h),
            LengthClass::Short => h.checked_sub(1),
        })
    }

    fn vsi_transport(&self, f: impl Fn(u32, LengthClass) -> Option<u32>) -> Result<Self, PhiError> {
        let rs = &*self.rs;
        if !rs.is_irreducible() {
            return Err(RootSystemError::NotIrreducible(rs.name()).into());
        }
        if !edge_hypothesis(rs, 0, self.p) {
            return Err(PhiError::EdgeHypothesis(rs.name(), self.p.get()));
        }
        let map = rs.very_special_dual()?;
        let levi = map.map_nodes(self.levi);
        let dual = Arc::new(map.dual);
        let mut phi = vec![Height::Infinite; dual.num_positive()];
        for (i, img) in map.images.iter().enumerate() {
            let j = dual.positive_index(img).expect("dual image is a positive root");
            phi[j] = match self.phi[i] {
                Height::Infinite => Height::Infinite,
                Height::Finite(h) => Height::Finite(f(h, rs.length_of(i)).ok_or(PhiError::KernelNotContained)?),
            };
        }
        Ok(ParabolicScheme { rs: dual, p: self.p, levi, phi })
    }

    /// Strips the largest Frobenius and very special kernels from every
    /// irreducible factor. Factors entirely inside the Levi subset are left
    /// alone.
    pub fn normalize(&self) -> (Self, Vec<KernelRecord>) {
        let mut stripped = Vec::new();
        let mut parts = self.factors();
        for (c, part) in parts.iter_mut().enumerate() {
            let Some(min) = part.domain().map(|i| part.phi[i].finite().unwrap()).min() else {
                continue;
            };
            let mut current = part.clone();
            for h in &mut current.phi {
                if let Height::Finite(v) = h {
                    *v -= min;
                }
            }
            let short_ok = current
                .domain()
                .all(|i| current.rs.length_of(i) == LengthClass::Long || current.phi[i] >= Height::Finite(1));
            let kind = if edge_hypothesis(&current.rs, 0, self.p) && short_ok {
                current = current.vsi_pushforward().expect("precondition checked");
                Some(KernelKind::VerySpecialKernel(min))
            } else if min > 0 {
                Some(KernelKind::Frobenius(min))
            } else {
                None
            };
            if let Some(kind) = kind {
                stripped.push(KernelRecord { factor: c, kind });
            }
            *part = current;
        }
        if stripped.is_empty() {
            return (self.clone(), stripped);
        }
        let out = ParabolicScheme::product(&parts, self.p).expect("factors share the prime");
        (out, stripped)
    }

    /// Whether normalization leaves the scheme unchanged.
    pub fn is_normalized(&self) -> bool {
        self.normalize().1.is_empty()
    }
}

fn check_levi(rs: &RootSystem, levi: LeviSubset) -> Result<(), PhiError> {
    if let Some(bad) = levi.iter().find(|&i| i >= rs.rank()) {
        return Err(PhiError::InvalidLevi(bad + 1));
    }
    Ok(())
}

/// Checks that the block may exist for this system and prime.
pub fn validate_block(rs: &RootSystem, p: Prime, block: RankOneBlock) -> Result<(), PhiError> {
    if block.alpha >= rs.rank() {
        return Err(PhiError::InvalidBlock(format!("simple root {} out of range", block.alpha + 1)));
    }
    let c = rs.component_of_node(block.alpha);
    match block.kind {
        BlockKind::Standard => Ok(()),
        BlockKind::VerySpecial if edge_hypothesis(rs, c, p) => Ok(()),
        BlockKind::VerySpecial => {
            Err(PhiError::InvalidBlock(format!("{block}: {} has no edge of multiplicity {p}", rs.components()[c].kind)))
        }
        BlockKind::ExoticH | BlockKind::ExoticL if is_exotic_anchor(rs, block.alpha, p) => Ok(()),
        BlockKind::ExoticH | BlockKind::ExoticL => Err(PhiError::InvalidBlock(format!(
            "{block}: exotic blocks exist only at the short simple root of G2 with p = 2"
        ))),
    }
}

/// The scheme of a catalog block: `I = Δ∖{α}` and the block's table on the
/// roots involving `α`.
pub fn block_phi(rs: &Arc<RootSystem>, p: Prime, block: RankOneBlock) -> Result<ParabolicScheme, PhiError> {
    validate_block(rs, p, block)?;
    let alpha = block.alpha;
    let comp = &rs.components()[rs.component_of_node(alpha)];
    let m = block.m;
    let levi = rs.all_nodes().without(alpha);
    ParabolicScheme::from_fn(rs.clone(), p, levi, |i| {
        let g = &rs.positive_roots()[i];
        match block.kind {
            BlockKind::Standard => m,
            BlockKind::VerySpecial => match rs.length_of(i) {
                LengthClass::Short => m + 1,
                LengthClass::Long => m,
            },
            BlockKind::ExoticL | BlockKind::ExoticH => {
                let local = (g.coeffs()[comp.nodes[0]], g.coeffs()[comp.nodes[1]]);
                let bumped = match block.kind {
                    BlockKind::ExoticL => matches!(local, (1, 0) | (1, 1)),
                    _ => local == (2, 1),
                };
                m + u32::from(bumped)
            }
        }
    })
}

/// Every catalog block at `alpha` with `m ≤ max_m` (Standard) or
/// `m < max_m` (the others), in increasing order.
pub fn catalog(rs: &RootSystem, p: Prime, alpha: usize, max_m: u32) -> Vec<RankOneBlock> {
    let c = rs.component_of_node(alpha);
    let vs = edge_hypothesis(rs, c, p);
    let exotic = is_exotic_anchor(rs, alpha, p);
    let mut out = Vec::new();
    for m in 0..=max_m {
        out.push(RankOneBlock::new(alpha, BlockKind::Standard, m));
        if m == max_m {
            break;
        }
        if vs {
            out.push(RankOneBlock::new(alpha, BlockKind::VerySpecial, m));
        }
        if exotic {
            out.push(RankOneBlock::new(alpha, BlockKind::ExoticH, m));
            out.push(RankOneBlock::new(alpha, BlockKind::ExoticL, m));
        }
    }
    out
}

/// Intersection of catalog blocks, one per listed anchor.
pub fn intersect_blocks(rs: &Arc<RootSystem>, p: Prime, blocks: &[RankOneBlock]) -> Result<ParabolicScheme, PhiError> {
    let mut acc = ParabolicScheme::whole(rs.clone(), p);
    for &b in blocks {
        acc = acc.intersect(&block_phi(rs, p, b)?)?;
    }
    Ok(acc)
}
