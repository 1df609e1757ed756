//! Invariants of the homogeneous space `G/P` computed from `(I, φ)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::phi::{BlockKind, Height, KernelRecord, ParabolicScheme, PhiError, RankOneBlock};
use crate::rootsys::{LeviSubset, NodeSet, Root, RootSystem, RootSystemError, RootSystemType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("NoSmoothContraction: every generated block of {0} is non-reduced")]
    NoSmoothContraction(String),
    #[error("NotQuasiStandard: generated block {0} is exotic")]
    NotQuasiStandard(String),
    #[error("NotNormalized: the scheme contains the kernel {0}")]
    NotNormalized(String),
}

/// An integral weight written in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub coeffs: Vec<BigInt>,
}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character { coeffs: vec![BigInt::zero(); rank] }
    }

    pub fn from_root(gamma: &Root) -> Self {
        Character { coeffs: gamma.coeffs().iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// `(λ, α_i)`.
    pub fn pairing_simple(&self, rs: &RootSystem, i: usize) -> BigInt {
        let m = rs.pairing_matrix();
        self.coeffs.iter().enumerate().map(|(j, c)| c * m[j][i]).sum()
    }

    pub fn pairing_root(&self, rs: &RootSystem, gamma: &Root) -> BigInt {
        gamma.coeffs().iter().enumerate().map(|(i, &c)| self.pairing_simple(rs, i) * c).sum()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<serde_json::Number> =
            self.coeffs.iter().map(|c| c.to_string().parse().expect("integers are valid JSON numbers")).collect();
        raw.serialize(s)
    }
}

pub fn dimension(p: &ParabolicScheme) -> usize {
    p.domain().count()
}

pub fn picard_rank(p: &ParabolicScheme) -> usize {
    p.non_levi().len()
}

/// `χ = Σ p^{φ(γ)} γ` over `Φ⁺∖Φ_I⁺`.
pub fn anticanonical_character(p: &ParabolicScheme) -> Character {
    let rs = p.root_system();
    let base = BigInt::from(p.prime().get());
    let mut chi = Character::zero(rs.rank());
    for i in p.domain() {
        let h = p.value_at(i).finite().unwrap();
        let weight = base.pow(h);
        for (j, &c) in rs.positive_roots()[i].coeffs().iter().enumerate() {
            if c != 0 {
                chi.coeffs[j] += &weight * c;
            }
        }
    }
    chi
}

/// `(λ, α) > 0` for every `α ∈ Δ∖I`.
pub fn is_ample(rs: &RootSystem, levi: LeviSubset, lambda: &Character) -> bool {
    rs.all_nodes().difference(levi).iter().all(|a| lambda.pairing_simple(rs, a) > BigInt::zero())
}

pub fn is_fano(p: &ParabolicScheme) -> bool {
    is_ample(p.root_system(), p.levi(), &anticanonical_character(p))
}

/// Simple roots whose generated block is the reduced `P^α`.
pub fn smooth_contraction_roots(p: &ParabolicScheme) -> Result<NodeSet, GeometryError> {
    let mut out = NodeSet::empty();
    for a in p.non_levi().iter() {
        let b = p.generated_block(a)?;
        if b.kind == BlockKind::Standard && b.m == 0 {
            out = out.with(a);
        }
    }
    Ok(out)
}

fn exotic_block(p: &ParabolicScheme) -> Result<Option<RankOneBlock>, GeometryError> {
    Ok(p.generated_blocks()?.into_iter().find(|b| matches!(b.kind, BlockKind::ExoticH | BlockKind::ExoticL)))
}

/// The smallest reduced parabolic containing `P`, with the decomposition
/// `P = P^sm ∩ residual` where `residual` intersects the non-reduced
/// generated blocks.
#[derive(Debug, Clone)]
pub struct SmoothHull {
    pub p_sm: ParabolicScheme,
    pub residual: ParabolicScheme,
}

pub fn p_sm(p: &ParabolicScheme) -> Result<SmoothHull, GeometryError> {
    if let Some(b) = exotic_block(p)? {
        return Err(GeometryError::NotQuasiStandard(b.to_string()));
    }
    let smooth = smooth_contraction_roots(p)?;
    let rs = p.root_system_arc();
    let hull = ParabolicScheme::reduced(rs.clone(), p.prime(), rs.all_nodes().difference(smooth))?;
    let mut residual = ParabolicScheme::whole(rs.clone(), p.prime());
    for a in p.non_levi().difference(smooth).iter() {
        let b = crate::phi::block_phi(rs, p.prime(), p.generated_block(a)?)?;
        residual = residual.intersect(&b)?;
    }
    debug_assert!(!p.is_valid() || hull.intersect(&residual)? == *p);
    Ok(SmoothHull { p_sm: hull, residual })
}

/// One contraction `X → Y_s` with Picard-rank-one target `Y_s = G_c/P^α`.
#[derive(Debug, Clone)]
pub struct FibrationStep {
    pub target_type: RootSystemType,
    /// Label of the contracted simple root.
    pub target_alpha: usize,
    pub base_dimension: usize,
    /// The fiber `P^α/P`, normalized.
    pub fiber: ParabolicScheme,
    pub stripped: Vec<KernelRecord>,
}

#[derive(Debug, Clone)]
pub struct FibrationSequence {
    /// The normalized source.
    pub source: ParabolicScheme,
    pub source_stripped: Vec<KernelRecord>,
    pub steps: Vec<FibrationStep>,
}

/// Repeatedly contracts along the smallest smooth-contraction root.
pub fn fibration_sequence(p: &ParabolicScheme) -> Result<FibrationSequence, GeometryError> {
    let (source, source_stripped) = p.normalize();
    let mut current = source.clone();
    let mut steps = Vec::new();
    while picard_rank(&current) > 0 {
        let smooth = smooth_contraction_roots(&current)?;
        let rs = current.root_system();
        let Some(alpha) = smooth.iter().min_by_key(|&a| rs.labels()[a]) else {
            return Err(GeometryError::NoSmoothContraction(rs.name()));
        };
        let comp = &rs.components()[rs.component_of_node(alpha)];
        let base_dimension = rs.positive_roots().iter().filter(|g| g.coeffs()[alpha] != 0).count();
        let fiber = restrict(&current, rs.all_nodes().without(alpha))?;
        let (fiber, stripped) = fiber.normalize();
        steps.push(FibrationStep {
            target_type: comp.kind,
            target_alpha: rs.labels()[alpha],
            base_dimension,
            fiber: fiber.clone(),
            stripped,
        });
        current = fiber;
    }
    Ok(FibrationSequence { source, source_stripped, steps })
}

/// The parabolic `P ∩ L` of the Levi subgroup spanned by `nodes`.
pub fn restrict(p: &ParabolicScheme, nodes: NodeSet) -> Result<ParabolicScheme, GeometryError> {
    let rs = p.root_system();
    let sub = rs.subsystem(nodes);
    let local = Arc::new(sub.system.clone());
    let levi = NodeSet::from_indices(
        sub.ambient_nodes.iter().enumerate().filter(|(_, &a)| p.levi().contains(a)).map(|(j, _)| j),
    );
    let out = ParabolicScheme::from_fn(local.clone(), p.prime(), levi, |j| {
        let g = sub.globalize(&local.positive_roots()[j], rs.rank());
        match p.value(&g) {
            Ok(Height::Finite(h)) => h,
            _ => unreachable!("non-Levi root of the subsystem is non-Levi in the ambient system"),
        }
    })?;
    Ok(out)
}

/// `H = max_α Σ_{α∈Supp γ} |(γ,α)| / min_{(γ,α)<0} |(γ,α)|` over positive
/// roots and simple roots. Rank one has no negative pairing; there
/// `H = |Φ⁺| + 1`.
pub fn incidence_threshold(rs: &RootSystem) -> Result<Ratio<i64>, GeometryError> {
    rs.kind()?;
    let n = rs.num_positive();
    let mut num = 0;
    let mut den: Option<i64> = None;
    for a in 0..rs.rank() {
        let mut sum = 0;
        for i in 0..n {
            let v = rs.simple_pairing(i, a);
            if rs.positive_roots()[i].coeffs()[a] != 0 {
                sum += v.abs();
            }
            if v < 0 {
                den = Some(den.map_or(-v, |d| d.min(-v)));
            }
        }
        num = num.max(sum);
    }
    Ok(match den {
        Some(d) => Ratio::new(num, d),
        None => Ratio::from_integer(n as i64 + 1),
    })
}

/// Smallest `m` with `p^m > H`.
pub fn threshold_exponent(h: Ratio<i64>, p: u32) -> u32 {
    let mut m = 0;
    let mut pow = Ratio::from_integer(1i64);
    while pow <= h {
        pow *= Ratio::from_integer(p as i64);
        m += 1;
    }
    m
}

/// Height bound for Fano schemes of Picard rank `r`: kernels of consecutive
/// generated blocks differ by fewer than `m*` Frobenius steps, and the
/// smallest is trivial after normalization.
pub fn fano_height_bound(rs: &RootSystem, p: u32, picard: usize) -> Result<u32, GeometryError> {
    let m_star = threshold_exponent(incidence_threshold(rs)?, p);
    Ok(picard.saturating_sub(1) as u32 * m_star + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotFanoCertificate {
    pub beta_l: usize,
    pub delta: Root,
    pub threshold: Ratio<i64>,
    /// `(χ, β_l)`.
    pub pairing_value: BigInt,
    /// Simple roots on the small-kernel side of the gap.
    pub left: NodeSet,
    /// Frobenius steps across the gap.
    pub gap: u32,
}

/// `(floor, ceiling)` of a block's kernel `K` in Frobenius steps, so that
/// `G^floor ⊆ K ⊆ G^ceiling`.
fn kernel_bounds(b: &RankOneBlock) -> (u32, u32) {
    match b.kind {
        BlockKind::Standard => (b.m, b.m),
        _ => (b.m, b.m + 1),
    }
}

/// Searches for a gap in the kernels of the generated blocks larger than the
/// incidence threshold and, if found, certifies that `χ` fails to be ample.
pub fn not_fano_certificate(p: &ParabolicScheme) -> Result<Option<NotFanoCertificate>, GeometryError> {
    let rs = p.root_system();
    rs.kind()?;
    let (_, stripped) = p.normalize();
    if let Some(k) = stripped.first() {
        return Err(GeometryError::NotNormalized(k.kind.to_string()));
    }
    if let Some(b) = exotic_block(p)? {
        return Err(GeometryError::NotQuasiStandard(b.to_string()));
    }
    if picard_rank(p) < 2 {
        return Ok(None);
    }
    let h = incidence_threshold(rs)?;
    let prime = BigInt::from(p.prime().get());
    let mut ordered: Vec<(RankOneBlock, usize)> =
        p.non_levi().iter().map(|a| p.generated_block(a).map(|b| (b, a))).collect::<Result<_, _>>()?;
    ordered.sort_by_key(|(b, a)| (b.chain_rank(), *a));
    let chi = anticanonical_character(p);
    for split in 1..ordered.len() {
        let (_, m0) = kernel_bounds(&ordered[split - 1].0);
        let (floor, _) = kernel_bounds(&ordered[split].0);
        if floor <= m0 {
            continue;
        }
        let gap = floor - m0;
        if Ratio::from_integer(prime.pow(gap)) <= big_ratio(h) {
            continue;
        }
        let left = NodeSet::from_indices(ordered[..split].iter().map(|(_, a)| *a));
        let (beta_l, delta) = rs.find_incidence_root(p.levi(), left)?;
        let pairing_value = chi.pairing_simple(rs, beta_l);
        if pairing_value < BigInt::zero() {
            return Ok(Some(NotFanoCertificate { beta_l, delta, threshold: h, pairing_value, left, gap }));
        }
    }
    Ok(None)
}

fn big_ratio(r: Ratio<i64>) -> Ratio<BigInt> {
    Ratio::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `p^m` as a big integer.
pub fn big_pow(p: u32, m: u32) -> BigInt {
    let mut out = BigInt::one();
    for _ in 0..m {
        out *= p;
    }
    out
}
