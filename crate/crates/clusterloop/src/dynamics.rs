//! Nielsen-Thurston style classification of cluster automorphisms.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::quiver::{FiniteType, Quiver, QuiverError};
use crate::seed::{ClusterAutomorphism, Order, Seed, SeedError};

pub const DEFAULT_MAX_POWER: usize = 12;
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("not an automorphism of the seed's quiver")]
    NotAutomorphism,
    #[error("no power up to {0} fixes a cluster variable")]
    NotReducible(usize),
}

/// Vertices whose variable is unchanged by `phi`.
pub fn fixed_variables(s: &Seed, phi: &ClusterAutomorphism) -> Result<Vec<usize>, DynError> {
    if !s.is_automorphism(phi, false) {
        return Err(DynError::NotAutomorphism);
    }
    let t = s.apply(phi)?;
    Ok((0..s.quiver().n()).filter(|&v| t.vars()[v] == s.vars()[v]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Power of `phi` whose fixed set was frozen out.
    pub power: usize,
    pub fixed: Vec<usize>,
    /// Subquiver on the remaining vertices, with the original labels.
    pub quiver: Quiver,
    pub induced: ClusterAutomorphism,
}

/// Restricts `phi` to the vertices outside `fixed`: mutations at fixed
/// vertices are dropped, as is the permutation on them.
fn restrict(q: &Quiver, phi: &ClusterAutomorphism, fixed: &[usize]) -> ClusterAutomorphism {
    let gone: BTreeSet<&str> = fixed.iter().map(|&v| q.label(v)).collect();
    let word = phi.word().iter().filter(|w| !gone.contains(w.as_str())).cloned().collect();
    let map: BTreeMap<String, String> = phi.perm_map().into_iter().filter(|(a, _)| !gone.contains(a.as_str())).collect();
    ClusterAutomorphism::from_map(word, &map).expect("restriction of a permutation")
}

/// Freezes out the variables fixed by the least power `p <= max_power`
/// of `phi` that fixes any mutable variable.
pub fn cluster_reduce(s: &Seed, phi: &ClusterAutomorphism, max_power: usize) -> Result<Reduction, DynError> {
    let q = s.quiver();
    for p in 1..=max_power {
        let psi = phi.power(p as i64);
        let fixed: Vec<usize> = fixed_variables(s, &psi)?.into_iter().filter(|&v| q.is_mutable(v)).collect();
        if fixed.is_empty() {
            continue;
        }
        let keep: Vec<usize> = (0..q.n()).filter(|v| !fixed.contains(v)).collect();
        let quiver = q.subquiver(&keep)?;
        let induced = restrict(q, &psi, &fixed);
        return Ok(Reduction { power: p, fixed, quiver, induced });
    }
    Err(DynError::NotReducible(max_power))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedVerdict {
    /// The reduced quiver is of infinite type, which certifies infinite order.
    Infinite,
    /// Finite-type reduced quiver; `order` is the result of a longer search.
    FiniteTypeReduced { order: Order },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NTClass {
    Periodic { order: usize, fixed: Vec<usize> },
    Reducible { reduction: Reduction, verdict: ReducedVerdict },
    PseudoAnosovCandidate { order_bound: usize, max_power: usize },
}

/// Periodic first, then reduction with a finite-type test on the reduced
/// quiver, then pseudo-Anosov candidate.
pub fn classify(s: &Seed, phi: &ClusterAutomorphism, order_bound: usize, max_power: usize) -> Result<NTClass, DynError> {
    match s.order(phi, order_bound)? {
        Order::Finite(order) => return Ok(NTClass::Periodic { order, fixed: fixed_variables(s, phi)? }),
        Order::ExceedsBound(_) => {}
    }
    let reduction = match cluster_reduce(s, phi, max_power) {
        Ok(r) => r,
        Err(DynError::NotReducible(_)) => return Ok(NTClass::PseudoAnosovCandidate { order_bound, max_power }),
        Err(e) => return Err(e),
    };
    let verdict = match reduction.quiver.mutable_part().finite_type()? {
        FiniteType::Infinite(_) => ReducedVerdict::Infinite,
        FiniteType::Finite(_) => ReducedVerdict::FiniteTypeReduced { order: s.order(phi, order_bound.saturating_mul(10))? },
    };
    Ok(NTClass::Reducible { reduction, verdict })
}

/// `T_k = (mu_0; (0 1))` on the two-vertex quiver with `k` arrows, named
/// by that quiver's labels.
pub fn dehn_twist(q: &Quiver) -> ClusterAutomorphism {
    ClusterAutomorphism::new([q.label(0)], vec![vec![q.label(0), q.label(1)]]).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnWitness {
    pub k: i64,
    pub m: i64,
    pub n: usize,
    pub quiver: Quiver,
}

/// Reduces `phi` repeatedly until a two-vertex quiver with `k >= 2` arrows
/// remains, then looks for `phi~^n = T_k^m` with `n, |m| <= max_exp`.
pub fn is_cluster_dehn_twist(
    s: &Seed,
    phi: &ClusterAutomorphism,
    max_reductions: usize,
    max_power: usize,
    max_exp: usize,
) -> Result<Option<DehnWitness>, DynError> {
    let mut seed = s.clone();
    let mut psi = phi.clone();
    for _ in 0..=max_reductions {
        let q = seed.quiver().mutable_part();
        if q.n() == 2 && q.b(0, 1).abs() >= 2 {
            let local = Seed::initial(&q);
            let twist = dehn_twist(&q);
            let twist = if twist.is_automorphism(&q, false) { twist } else { twist.inverse() };
            for n in 1..=max_exp {
                let lhs = psi.power(n as i64);
                for m in (1..=max_exp as i64).flat_map(|m| [m, -m]) {
                    if local.action_equal(&lhs, &twist.power(m))? {
                        return Ok(Some(DehnWitness { k: q.b(0, 1).abs(), m, n, quiver: q }));
                    }
                }
            }
            return Ok(None);
        }
        if !seed.is_automorphism(&psi, false) {
            return Ok(None);
        }
        let r = match cluster_reduce(&seed, &psi, max_power) {
            Ok(r) => r,
            Err(DynError::NotReducible(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if r.quiver.n_mut() == 0 {
            return Ok(None);
        }
        seed = Seed::initial(&r.quiver.mutable_part());
        psi = r.induced;
    }
    Ok(None)
}
