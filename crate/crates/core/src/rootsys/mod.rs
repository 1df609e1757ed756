//! Exact root-system data for the irreducible types A–G and their products.
//!
//! Roots are integer coefficient vectors over the simple roots, numbered as in
//! Bourbaki. The pairing is normalized so that short roots have squared length
//! 2; in simply laced components every root is reported as long.

mod dynkin;
mod tables;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("InvalidRank: type {series} does not exist in rank {rank}")]
    InvalidRank { series: char, rank: usize },
    #[error("UnknownType: cannot parse root system label {0:?}")]
    UnknownType(String),
    #[error("NotARoot: {0} is not a root")]
    NotARoot(Root),
    #[error("WrongLength: expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("SimplyLaced: {0} has no very special isogeny")]
    SimplyLaced(String),
    #[error("NotIrreducible: {0} is not irreducible")]
    NotIrreducible(String),
    #[error("UnsupportedType: {0} is not supported by this operation")]
    UnsupportedType(String),
    #[error("InvalidPartition: {0}")]
    InvalidPartition(String),
    #[error("RankTooLarge: rank {0} exceeds 64")]
    RankTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// Type label of an irreducible root system, e.g. `B2` or `F4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    pub series: Series,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(RootSystemError::InvalidRank { series: series.letter(), rank });
        }
        if rank > 64 {
            return Err(RootSystemError::RankTooLarge(rank));
        }
        Ok(RootSystemType { series, rank })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(RootSystemError::UnknownType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| RootSystemError::UnknownType(s.to_string()))?;
        RootSystemType::new(series, rank)
    }
}

/// A set of simple-root indices (0-based), stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u64);

/// Simple roots spanning the Levi factor of a reduced parabolic.
pub type LeviSubset = NodeSet;

impl NodeSet {
    pub const fn empty() -> Self {
        NodeSet(0)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        NodeSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(NodeSet(0), |s, i| s.with(i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        NodeSet(self.0 | (1u64 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        NodeSet(self.0 & !(1u64 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// Every subset of `self`, in increasing order of bitmask.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(NodeSet(cur))
        })
    }
}

/// An integer vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> NodeSet {
        NodeSet::from_indices(self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
    }

    #[must_use]
    pub fn scaled(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<i32>::deserialize(d).map(Root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LengthClass::Short => "short",
            LengthClass::Long => "long",
        })
    }
}

/// One irreducible factor: its type and the (0-based) indices of its simple
/// roots in standard order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: RootSystemType,
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn node_set(&self) -> NodeSet {
        NodeSet::from_indices(self.nodes.iter().copied())
    }

    /// Position of a node inside the component's standard numbering.
    pub fn position(&self, node: usize) -> Option<usize> {
        self.nodes.iter().position(|&v| v == node)
    }
}

#[derive(Debug, Clone)]
struct RootData {
    support: NodeSet,
    norm: i64,
    component: usize,
    length: LengthClass,
    /// `(γ, α_i)` for every simple root.
    simple_pairings: Vec<i64>,
}

/// A (possibly reducible) root system with its positive roots, pairing,
/// length classes and ε-realization.
#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<Component>,
    rank: usize,
    labels: Vec<usize>,
    pairing: Vec<Vec<i64>>,
    epsilon: Vec<Vec<Ratio<i64>>>,
    positive: Vec<Root>,
    data: Vec<RootData>,
    index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && self.labels == other.labels
    }
}

impl Eq for RootSystem {}

/// A subsystem spanned by some simple roots of a larger system, renumbered so
/// that each component is in standard order.
#[derive(Debug, Clone)]
pub struct Subsystem {
    pub system: RootSystem,
    /// `ambient_nodes[j]` is the ambient index of the subsystem's node `j`.
    pub ambient_nodes: Vec<usize>,
}

impl Subsystem {
    /// Local coordinates of an ambient root supported on the subsystem.
    pub fn localize(&self, ambient: &Root) -> Root {
        Root(self.ambient_nodes.iter().map(|&a| ambient.0[a]).collect())
    }

    pub fn globalize(&self, local: &Root, ambient_rank: usize) -> Root {
        let mut v = vec![0; ambient_rank];
        for (j, &a) in self.ambient_nodes.iter().enumerate() {
            v[a] = local.0[j];
        }
        Root(v)
    }
}

impl RootSystem {
    /// Builds an irreducible root system.
    pub fn new(kind: RootSystemType) -> Self {
        Self::from_components(&[kind])
    }

    /// Builds the product of the given irreducible systems, nodes numbered
    /// consecutively.
    pub fn from_components(kinds: &[RootSystemType]) -> Self {
        let rank: usize = kinds.iter().map(|k| k.rank).sum();
        let mut pairing = vec![vec![0i64; rank]; rank];
        let mut components = Vec::with_capacity(kinds.len());
        let eps_dim: usize = kinds.iter().map(|k| tables::realization(*k).doubled[0].len()).sum();
        let mut epsilon = Vec::with_capacity(rank);
        let mut offset = 0;
        let mut eps_offset = 0;
        for &kind in kinds {
            let real = tables::realization(kind);
            let block = real.pairing_matrix();
            for i in 0..kind.rank {
                for j in 0..kind.rank {
                    pairing[offset + i][offset + j] = block[i][j];
                }
                let mut v = vec![Ratio::from_integer(0); eps_dim];
                for (k, &c) in real.doubled[i].iter().enumerate() {
                    v[eps_offset + k] = Ratio::new(c, 2);
                }
                epsilon.push(v);
            }
            components.push(Component { kind, nodes: (offset..offset + kind.rank).collect() });
            eps_offset += real.doubled[0].len();
            offset += kind.rank;
        }
        Self::assemble(components, pairing, epsilon, (1..=rank).collect())
    }

    /// Parses a label such as `B2`, `A1xA2` or `trivial`.
    pub fn parse(label: &str) -> Result<Self, RootSystemError> {
        let label = label.trim();
        if label.eq_ignore_ascii_case("trivial") {
            return Ok(Self::from_components(&[]));
        }
        let kinds = label.split(['x', 'X']).map(RootSystemType::from_str).collect::<Result<Vec<_>, _>>()?;
        let rank: usize = kinds.iter().map(|k| k.rank).sum();
        if rank > 64 {
            return Err(RootSystemError::RankTooLarge(rank));
        }
        Ok(Self::from_components(&kinds))
    }

    fn assemble(
        components: Vec<Component>,
        pairing: Vec<Vec<i64>>,
        epsilon: Vec<Vec<Ratio<i64>>>,
        labels: Vec<usize>,
    ) -> Self {
        let rank = pairing.len();
        let positive = generate_positive_roots(&pairing);
        let mut component_of = vec![0; rank];
        for (c, comp) in components.iter().enumerate() {
            for &v in &comp.nodes {
                component_of[v] = c;
            }
        }
        let data = positive
            .iter()
            .map(|r| {
                let simple_pairings: Vec<i64> =
                    (0..rank).map(|i| r.0.iter().enumerate().map(|(j, &c)| c as i64 * pairing[j][i]).sum()).collect();
                let norm: i64 = r.0.iter().enumerate().map(|(i, &c)| c as i64 * simple_pairings[i]).sum();
                let support = r.support();
                let component = component_of[support.iter().next().unwrap()];
                let kind = components[component].kind;
                let long_norm = components[component].nodes.iter().map(|&v| pairing[v][v]).max().unwrap();
                let length =
                    if kind.is_simply_laced() || norm == long_norm { LengthClass::Long } else { LengthClass::Short };
                RootData { support, norm, component, length, simple_pairings }
            })
            .collect();
        let index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        RootSystem { components, rank, labels, pairing, epsilon, positive, data, index }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// The type of an irreducible system.
    pub fn kind(&self) -> Result<RootSystemType, RootSystemError> {
        match self.components.as_slice() {
            [c] => Ok(c.kind),
            _ => Err(RootSystemError::NotIrreducible(self.name())),
        }
    }

    pub fn name(&self) -> String {
        if self.components.is_empty() {
            return "trivial".to_string();
        }
        self.components.iter().map(|c| c.kind.to_string()).collect::<Vec<_>>().join("x")
    }

    /// 1-based labels of the simple roots; `1..=rank` unless this system was
    /// cut out of a larger one.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i + 1)
    }

    #[must_use]
    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.rank);
        self.labels = labels;
        self
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.rank)
    }

    pub fn component_of_node(&self, node: usize) -> usize {
        self.components.iter().position(|c| c.nodes.contains(&node)).expect("node out of range")
    }

    pub fn pairing_matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// Cartan integers `⟨α_i^∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| 2 * self.pairing[i][j] / self.pairing[i][i]).collect()).collect()
    }

    pub fn epsilon_coords(&self, node: usize) -> &[Ratio<i64>] {
        &self.epsilon[node]
    }

    /// ε-coordinates of an arbitrary lattice vector.
    pub fn epsilon_of(&self, gamma: &Root) -> Vec<Ratio<i64>> {
        let dim = self.epsilon.first().map_or(0, Vec::len);
        let mut out = vec![Ratio::from_integer(0); dim];
        for (i, &c) in gamma.0.iter().enumerate() {
            for (k, e) in self.epsilon[i].iter().enumerate() {
                out[k] += e * Ratio::from_integer(c as i64);
            }
        }
        out
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_index(&self, gamma: &Root) -> Option<usize> {
        self.index.get(gamma).copied()
    }

    pub fn is_root(&self, gamma: &Root) -> bool {
        gamma.0.len() == self.rank && (self.index.contains_key(gamma) || self.index.contains_key(&-gamma))
    }

    fn check_len(&self, gamma: &Root) -> Result<(), RootSystemError> {
        if gamma.0.len() != self.rank {
            return Err(RootSystemError::WrongLength { expected: self.rank, got: gamma.0.len() });
        }
        Ok(())
    }

    fn root_data(&self, gamma: &Root) -> Result<&RootData, RootSystemError> {
        self.check_len(gamma)?;
        let idx = self
            .positive_index(gamma)
            .or_else(|| self.positive_index(&-gamma))
            .ok_or_else(|| RootSystemError::NotARoot(gamma.clone()))?;
        Ok(&self.data[idx])
    }

    /// Symmetric bilinear form on the root lattice.
    pub fn pairing(&self, gamma: &Root, delta: &Root) -> i64 {
        let mut acc = 0;
        for (i, &a) in gamma.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in delta.0.iter().enumerate() {
                acc += a as i64 * b as i64 * self.pairing[i][j];
            }
        }
        acc
    }

    pub fn support(&self, gamma: &Root) -> Result<NodeSet, RootSystemError> {
        self.root_data(gamma).map(|d| d.support)
    }

    pub fn length_class(&self, gamma: &Root) -> Result<LengthClass, RootSystemError> {
        self.root_data(gamma).map(|d| d.length)
    }

    // Index-based accessors used by the hot loops of the parabolic calculus.

    pub fn support_of(&self, idx: usize) -> NodeSet {
        self.data[idx].support
    }

    pub fn length_of(&self, idx: usize) -> LengthClass {
        self.data[idx].length
    }

    pub fn norm_of(&self, idx: usize) -> i64 {
        self.data[idx].norm
    }

    pub fn component_of_root(&self, idx: usize) -> usize {
        self.data[idx].component
    }

    /// `(γ, α_i)` for the positive root with index `idx`.
    pub fn simple_pairing(&self, idx: usize, i: usize) -> i64 {
        self.data[idx].simple_pairings[i]
    }

    /// `{γ ∈ Φ⁺ : Supp(γ) ⊆ I}`.
    pub fn levi_positive_roots(&self, levi: LeviSubset) -> Vec<Root> {
        self.positive
            .iter()
            .zip(&self.data)
            .filter(|(_, d)| d.support.is_subset(levi))
            .map(|(r, _)| r.clone())
            .collect()
    }

    pub fn is_levi_root(&self, idx: usize, levi: LeviSubset) -> bool {
        self.data[idx].support.is_subset(levi)
    }

    /// Whether the component has an edge of multiplicity `p`.
    pub fn edge_hypothesis(&self, component: usize, p: u32) -> bool {
        let kind = self.components[component].kind;
        match kind.series {
            Series::B | Series::C | Series::F => p == 2,
            Series::G => p == 3,
            _ => false,
        }
    }

    /// The subsystem spanned by `nodes`, renumbered into standard order.
    pub fn subsystem(&self, nodes: NodeSet) -> Subsystem {
        let list: Vec<usize> = nodes.iter().filter(|&v| v < self.rank).collect();
        let mut kinds = Vec::new();
        let mut ambient_nodes = Vec::new();
        for piece in dynkin::connected_pieces(&self.pairing, &list) {
            let (kind, order) = dynkin::classify(&self.pairing, &piece).expect("subdiagram of a finite type diagram");
            kinds.push(kind);
            ambient_nodes.extend(order);
        }
        let labels = ambient_nodes.iter().map(|&a| self.labels[a]).collect();
        let system = RootSystem::from_components(&kinds).with_labels(labels);
        Subsystem { system, ambient_nodes }
    }

    /// The irreducible factor with index `c`, as a standalone system.
    pub fn factor(&self, c: usize) -> Subsystem {
        let comp = &self.components[c];
        let labels = comp.nodes.iter().map(|&a| self.labels[a]).collect();
        Subsystem { system: RootSystem::new(comp.kind).with_labels(labels), ambient_nodes: comp.nodes.clone() }
    }

    /// The dual system under the very special isogeny, together with the
    /// induced bijection on roots.
    pub fn very_special_dual(&self) -> Result<VeryDualMap, RootSystemError> {
        let kind = self.kind()?;
        let (dual_kind, perm): (RootSystemType, Vec<usize>) = match kind.series {
            Series::B => (RootSystemType { series: Series::C, rank: kind.rank }, (0..kind.rank).collect()),
            Series::C => (RootSystemType { series: Series::B, rank: kind.rank }, (0..kind.rank).collect()),
            Series::F => (kind, vec![3, 2, 1, 0]),
            Series::G => (kind, vec![1, 0]),
            _ => return Err(RootSystemError::SimplyLaced(self.name())),
        };
        let mut labels = vec![0; kind.rank];
        for (i, &j) in perm.iter().enumerate() {
            labels[j] = self.labels[i];
        }
        let dual = RootSystem::new(dual_kind).with_labels(labels);
        let images = self.positive.iter().map(|g| coroot_image(self, g, &perm)).collect();
        Ok(VeryDualMap { dual, node_perm: perm, images })
    }

    /// The long roots of F4 and the basis β₁..β₄ of the D4 they form.
    pub fn long_root_subsystem(&self) -> Result<LongRootSubsystem, RootSystemError> {
        let kind = self.kind()?;
        if kind.series != Series::F {
            return Err(RootSystemError::UnsupportedType(self.name()));
        }
        let roots: Vec<Root> = self
            .positive
            .iter()
            .zip(&self.data)
            .filter(|(_, d)| d.length == LengthClass::Long)
            .flat_map(|(r, _)| [r.clone(), -r])
            .collect();
        // ε₁−ε₂, ε₂−ε₃, ε₃−ε₄, ε₃+ε₄
        let basis =
            vec![Root(vec![0, 1, 2, 2]), Root(vec![1, 0, 0, 0]), Root(vec![0, 1, 0, 0]), Root(vec![0, 1, 2, 0])];
        Ok(LongRootSubsystem { roots, basis, kind: RootSystemType { series: Series::D, rank: 4 } })
    }

    /// For a partition of `Δ∖I` into `left` and the rest, returns a simple
    /// root `β_l` in `left` and a positive root `δ` with support disjoint from
    /// `left` such that `(δ, β_l) < 0`.
    ///
    /// `δ` is the sum of the simple roots along a shortest diagram path from
    /// `β_l` to a node of the right part, excluding `β_l` itself.
    pub fn find_incidence_root(&self, levi: LeviSubset, left: NodeSet) -> Result<(usize, Root), RootSystemError> {
        let off = self.all_nodes().difference(levi);
        let right = off.difference(left);
        if left.is_empty() || right.is_empty() || !left.is_subset(off) {
            return Err(RootSystemError::InvalidPartition(format!(
                "left must be a nonempty proper subset of the non-Levi nodes (left={:?}, Δ∖I={:?})",
                left.iter().collect::<Vec<_>>(),
                off.iter().collect::<Vec<_>>()
            )));
        }
        let adjacent = |a: usize, b: usize| a != b && self.pairing[a][b] != 0;
        let mut best: Option<(usize, usize, Vec<usize>)> = None;
        for nu in left.iter() {
            // Breadth-first search through Levi nodes only.
            let mut prev = vec![usize::MAX; self.rank];
            let mut dist = vec![usize::MAX; self.rank];
            dist[nu] = 0;
            let mut queue = std::collections::VecDeque::from([nu]);
            while let Some(v) = queue.pop_front() {
                if v != nu && !levi.contains(v) {
                    continue;
                }
                for u in 0..self.rank {
                    if adjacent(v, u) && dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        prev[u] = v;
                        queue.push_back(u);
                    }
                }
            }
            for mu in right.iter() {
                if dist[mu] == usize::MAX {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((_, _, path)) => dist[mu] < path.len(),
                };
                if better {
                    let mut path = vec![mu];
                    let mut v = mu;
                    while prev[v] != nu {
                        v = prev[v];
                        path.push(v);
                    }
                    best = Some((nu, mu, path));
                }
            }
        }
        let (nu, _, path) = best.ok_or_else(|| {
            RootSystemError::InvalidPartition("left and right parts lie in different components".into())
        })?;
        let mut delta = vec![0; self.rank];
        for v in path {
            delta[v] += 1;
        }
        Ok((nu, Root(delta)))
    }
}

/// Image of `γ` under the very special isogeny, in dual coordinates:
/// the coroot `2γ/(γ,γ)` rescaled, with nodes relabeled by `perm`.
fn coroot_image(rs: &RootSystem, gamma: &Root, perm: &[usize]) -> Root {
    let norm = rs.pairing(gamma, gamma);
    let mut v = vec![0; rs.rank];
    for (i, &c) in gamma.0.iter().enumerate() {
        let num = c as i64 * rs.pairing[i][i];
        debug_assert_eq!(num % norm, 0);
        v[perm[i]] = (num / norm) as i32;
    }
    Root(v)
}

/// The very special isogeny's bijection between a system and its dual.
#[derive(Debug, Clone)]
pub struct VeryDualMap {
    pub dual: RootSystem,
    /// Simple root `i` of the source corresponds to simple root `node_perm[i]`
    /// of the dual.
    pub node_perm: Vec<usize>,
    /// Images of the source's positive roots, in order.
    pub images: Vec<Root>,
}

impl VeryDualMap {
    /// Image of an arbitrary (possibly negative) root.
    pub fn map_root(&self, source: &RootSystem, gamma: &Root) -> Root {
        coroot_image(source, gamma, &self.node_perm)
    }

    pub fn map_nodes(&self, nodes: NodeSet) -> NodeSet {
        NodeSet::from_indices(nodes.iter().map(|i| self.node_perm[i]))
    }
}

#[derive(Debug, Clone)]
pub struct LongRootSubsystem {
    /// All long roots, positive and negative.
    pub roots: Vec<Root>,
    pub basis: Vec<Root>,
    pub kind: RootSystemType,
}

/// Positive roots by closure from the simple roots along root strings,
/// ordered by height and then by decreasing coefficient vector.
#[allow(clippy::needless_range_loop)]
fn generate_positive_roots(pairing: &[Vec<i64>]) -> Vec<Root> {
    let rank = pairing.len();
    let mut roots: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
    let mut known: std::collections::HashSet<Root> = roots.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let gamma = roots[cursor].clone();
        cursor += 1;
        for i in 0..rank {
            let alpha = Root::simple(rank, i);
            if gamma == alpha {
                continue;
            }
            // r: how far the α_i-string extends below γ.
            let mut r = 0;
            let mut down = &gamma - &alpha;
            while known.contains(&down) {
                r += 1;
                down = &down - &alpha;
            }
            let cartan: i64 =
                gamma.0.iter().enumerate().map(|(j, &c)| c as i64 * pairing[j][i]).sum::<i64>() * 2 / pairing[i][i];
            let q = r - cartan;
            if q > 0 {
                let up = &gamma + &alpha;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    roots
}

#[cfg(test)]
mod tests;
