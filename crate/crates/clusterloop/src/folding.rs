//! Finite group actions on quivers, admissibility and folding.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::quiver::{Quiver, QuiverError};
use crate::seed::ClusterAutomorphism;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("generator {0} is not a permutation of the vertices")]
    BadGenerator(usize),
    #[error("generator {0} does not preserve the quiver")]
    NotInvariant(usize),
    #[error("quiver is not admissible: condition {condition} fails at {witness:?}")]
    Inadmissible { condition: u8, witness: Vec<usize> },
    #[error("orbit {0} is frozen or out of range")]
    BadOrbit(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A group given by generating permutations (`g[v]` is the image of `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAction {
    n: usize,
    generators: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
}

impl GAction {
    pub fn new(n: usize, generators: Vec<Vec<usize>>) -> Result<Self, FoldError> {
        for (k, g) in generators.iter().enumerate() {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(FoldError::BadGenerator(k));
            }
        }
        // union-find over generator edges
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &generators {
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if root_of[r] == usize::MAX {
                root_of[r] = orbits.len();
                orbits.push(vec![]);
            }
            orbits[root_of[r]].push(v);
        }
        Ok(GAction { n, generators, orbits })
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, vec![]).unwrap()
    }

    /// Reads one generator per line in cycle notation over `q`'s labels.
    pub fn parse(text: &str, q: &Quiver) -> Result<Self, FoldError> {
        let mut gens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| FoldError::Parse { line: ln + 1, msg };
            let phi = ClusterAutomorphism::parse(&format!("mut: ; perm: {line}")).map_err(|e| err(e.to_string()))?;
            let (_, perm) = phi.resolve(q).map_err(|e| err(e.to_string()))?;
            gens.push(perm);
        }
        Self::new(q.n(), gens)
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Orbits ordered by smallest element.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    fn check_invariant(&self, q: &Quiver) -> Result<(), FoldError> {
        if q.n() != self.n {
            return Err(QuiverError::Shape { expected: self.n, got: q.n() }.into());
        }
        for (k, g) in self.generators.iter().enumerate() {
            if !q.relabeled(g).same_arrows(q) {
                return Err(FoldError::NotInvariant(k));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Violation { condition: u8, witness: Vec<usize> },
}

/// Checks the admissibility conditions. The orbit-local conditions 1 and 3
/// come first; a non-invariant action is then an error, and with invariance
/// the arrow-count condition 2 holds, leaving condition 4.
pub fn is_admissible(q: &Quiver, g: &GAction) -> Result<Admissibility, FoldError> {
    if q.n() != g.n {
        return Err(QuiverError::Shape { expected: g.n, got: q.n() }.into());
    }
    for o in &g.orbits {
        if let Some(&f) = o.iter().find(|&&v| q.is_mutable(v) != q.is_mutable(o[0])) {
            return Ok(Admissibility::Violation { condition: 1, witness: vec![o[0], f] });
        }
    }
    for o in &g.orbits {
        for &i in o {
            for &i2 in o {
                if i != i2 && q.b(i, i2) != 0 {
                    return Ok(Admissibility::Violation { condition: 3, witness: vec![i, i2] });
                }
            }
        }
    }
    g.check_invariant(q)?;
    for o in &g.orbits {
        if !q.is_mutable(o[0]) {
            continue;
        }
        for &i in o {
            for &i2 in o {
                if let Some(j) = (0..q.n()).find(|&j| q.b(i, j) * q.b(i2, j) < 0) {
                    return Ok(Admissibility::Violation { condition: 4, witness: vec![i, i2, j] });
                }
            }
        }
    }
    Ok(Admissibility::Admissible)
}

fn require_admissible(q: &Quiver, g: &GAction) -> Result<(), FoldError> {
    match is_admissible(q, g)? {
        Admissibility::Admissible => Ok(()),
        Admissibility::Violation { condition, witness } => Err(FoldError::Inadmissible { condition, witness }),
    }
}

/// Orbit matrix `b^G_IJ = sum_{i in I} b_ij` (any `j` in `J`) with
/// symmetrizer `D` = orbit sizes, so that `b^G D` is skew-symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedQuiver {
    pub orbits: Vec<Vec<usize>>,
    pub n_mut: usize,
    pub bg: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl FoldedQuiver {
    pub fn is_skew_symmetrizable(&self) -> bool {
        let n = self.bg.len();
        (0..n).all(|i| (0..n).all(|j| self.bg[i][j] * self.d[j] == -self.bg[j][i] * self.d[i]))
    }

    /// Matrix mutation with the same signed rule as for quivers.
    pub fn mutate(&self, k: usize) -> Result<FoldedQuiver, FoldError> {
        if k >= self.n_mut {
            return Err(FoldError::BadOrbit(k));
        }
        let b = &self.bg;
        let n = b.len();
        let mut nb = b.clone();
        for i in 0..n {
            for j in 0..n {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        Ok(FoldedQuiver { bg: nb, ..self.clone() })
    }
}

pub fn fold(q: &Quiver, g: &GAction) -> Result<FoldedQuiver, FoldError> {
    require_admissible(q, g)?;
    let mut orbits = g.orbits.clone();
    orbits.sort_by_key(|o| (!q.is_mutable(o[0]), o[0]));
    let n_mut = orbits.iter().filter(|o| q.is_mutable(o[0])).count();
    let bg = orbits
        .iter()
        .map(|oi| orbits.iter().map(|oj| oi.iter().map(|&i| q.b(i, oj[0])).sum()).collect())
        .collect();
    let d = orbits.iter().map(|o| o.len() as i64).collect();
    Ok(FoldedQuiver { orbits, n_mut, bg, d })
}

/// Mutates at every vertex of orbit `orbit` (an index into `g.orbits()`).
pub fn orbit_mutate(q: &Quiver, g: &GAction, orbit: usize) -> Result<Quiver, FoldError> {
    require_admissible(q, g)?;
    let o = g.orbits.get(orbit).ok_or(FoldError::BadOrbit(orbit))?;
    if !q.is_mutable(o[0]) {
        return Err(FoldError::BadOrbit(orbit));
    }
    let mut r = q.clone();
    for &v in o {
        r = r.mutate(v)?;
    }
    Ok(r)
}

/// Folding then mutating agrees with orbit-mutating then folding.
pub fn fold_commutes(q: &Quiver, g: &GAction, orbit: usize) -> Result<bool, FoldError> {
    let before = fold(q, g)?;
    let after = fold(&orbit_mutate(q, g, orbit)?, g)?;
    let rep = g.orbits[orbit][0];
    let k = before.orbits.iter().position(|o| o.contains(&rep)).unwrap();
    Ok(before.mutate(k)? == after)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Foldability {
    Yes { quivers: usize },
    /// Orbit indices whose successive mutation leaves admissibility.
    Counterexample(Vec<usize>),
    Truncated,
}

/// Explores orbit-mutation words breadth first over distinct quivers.
pub fn globally_foldable(q: &Quiver, g: &GAction, bound: usize) -> Result<Foldability, FoldError> {
    require_admissible(q, g)?;
    let mutable: Vec<usize> = (0..g.orbits.len()).filter(|&o| q.is_mutable(g.orbits[o][0])).collect();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([q.matrix().to_vec()]);
    let mut queue = VecDeque::from([(q.clone(), Vec::<usize>::new())]);
    while let Some((p, word)) = queue.pop_front() {
        for &o in &mutable {
            let mut r = p.clone();
            for &v in &g.orbits[o] {
                r = r.mutate(v)?;
            }
            let mut w = word.clone();
            w.push(o);
            let ok = matches!(is_admissible(&r, g), Ok(Admissibility::Admissible));
            if !ok {
                return Ok(Foldability::Counterexample(w));
            }
            if seen.insert(r.matrix().to_vec()) {
                if seen.len() > bound {
                    return Ok(Foldability::Truncated);
                }
                queue.push_back((r, w));
            }
        }
    }
    Ok(Foldability::Yes { quivers: seen.len() })
}

/// Number of clusters of the folded cluster algebra: seeds with one
/// variable per orbit, mutated along whole orbits. Clusters are compared by
/// their values at a G-invariant random point modulo a large prime.
/// `None` if more than `max_clusters` appear.
pub fn folded_cluster_count(q: &Quiver, g: &GAction, max_clusters: usize) -> Result<Option<usize>, FoldError> {
    use crate::seed::{ModSeed, MOD_P};
    use rand::{Rng, SeedableRng};
    require_admissible(q, g)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xf01d);
    let mut vals = vec![0; q.n()];
    for o in &g.orbits {
        let x = rng.gen_range(2..MOD_P);
        for &v in o {
            vals[v] = x;
        }
    }
    let s0 = ModSeed { quiver: q.clone(), vals };
    let mutable: Vec<usize> = (0..g.orbits.len()).filter(|&o| q.is_mutable(g.orbits[o][0])).collect();
    let key = |s: &ModSeed| {
        let mut v: Vec<u64> = mutable.iter().map(|&o| s.vals[g.orbits[o][0]]).collect();
        v.sort();
        v
    };
    let mut seen = HashSet::from([key(&s0)]);
    let mut queue = VecDeque::from([s0]);
    while let Some(s) = queue.pop_front() {
        for &o in &mutable {
            let mut t = s.clone();
            for &v in &g.orbits[o] {
                t = t.mutate(v).ok_or(FoldError::BadOrbit(o))?;
            }
            if seen.insert(key(&t)) {
                if seen.len() > max_clusters {
                    return Ok(None);
                }
                queue.push_back(t);
            }
        }
    }
    Ok(Some(seen.len()))
}

/// Quivers with actions used as examples.
pub mod examples {
    use super::*;
    use crate::quiver::families;

    /// `0 -> 1 <- 2` with the swap of 0 and 2.
    pub fn a3_swap() -> (Quiver, GAction) {
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 1), (2, 1, 1)]).unwrap();
        (q, GAction::new(3, vec![vec![2, 1, 0]]).unwrap())
    }

    /// Three outer vertices pointing at the centre 0, rotated cyclically.
    pub fn d4_rotation() -> (Quiver, GAction) {
        let q = Quiver::from_arrows(4, 0, &[(1, 0, 1), (2, 0, 1), (3, 0, 1)]).unwrap();
        (q, GAction::new(4, vec![vec![0, 2, 3, 1]]).unwrap())
    }

    /// `A_5` bipartite, `0 -> 1 <- 2 -> 3 <- 4`, with the flip `v -> 4 - v`.
    pub fn a5_flip() -> (Quiver, GAction) {
        let q = Quiver::from_arrows(5, 0, &[(0, 1, 1), (2, 1, 1), (2, 3, 1), (4, 3, 1)]).unwrap();
        (q, GAction::new(5, vec![vec![4, 3, 2, 1, 0]]).unwrap())
    }

    /// Admissible, but mutating the fixed vertex 4 breaks condition 4.
    pub fn breaks_after_one_step() -> (Quiver, GAction) {
        let q = Quiver::from_arrows(5, 0, &[(0, 2, 2), (1, 3, 2), (4, 0, 1), (4, 1, 1), (2, 4, 1), (3, 4, 1)]).unwrap();
        (q, GAction::new(5, vec![vec![1, 0, 3, 2, 4]]).unwrap())
    }

    pub fn a2_swap() -> (Quiver, GAction) {
        (families::a(2), GAction::new(2, vec![vec![1, 0]]).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn admissibility_examples() {
        let (q, g) = a3_swap();
        assert_eq!(is_admissible(&q, &g).unwrap(), Admissibility::Admissible);
        let (q, g) = a2_swap();
        assert_eq!(is_admissible(&q, &g).unwrap(), Admissibility::Violation { condition: 3, witness: vec![0, 1] });
        let p = Quiver::from_arrows(3, 0, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let g = GAction::new(3, vec![vec![2, 1, 0]]).unwrap();
        assert_eq!(is_admissible(&p, &g), Err(FoldError::NotInvariant(0)));
        let (q, g) = d4_rotation();
        assert_eq!(is_admissible(&q, &g).unwrap(), Admissibility::Admissible);
        let k = crate::quiver::families::kronecker();
        let g = GAction::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(is_admissible(&k, &g).unwrap(), Admissibility::Admissible);
        let two_cycle = Quiver::from_arrows(4, 0, &[(0, 1, 1), (2, 3, 1), (1, 2, 1), (3, 0, 1)]).unwrap();
        let g = GAction::new(4, vec![vec![2, 3, 0, 1]]).unwrap();
        assert!(matches!(is_admissible(&two_cycle, &g).unwrap(), Admissibility::Violation { condition: 4, .. }));
        let inner = Quiver::from_arrows(2, 0, &[]).unwrap();
        let mixed = Quiver::from_arrows(1, 1, &[]).unwrap();
        let swap = GAction::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(is_admissible(&inner, &swap).unwrap(), Admissibility::Admissible);
        assert!(matches!(is_admissible(&mixed, &swap).unwrap(), Admissibility::Violation { condition: 1, .. }));
    }

    #[test]
    fn arrows_inside_an_orbit() {
        // 0 -> 1 and 1 -> 0 cancel unless doubled: use the Markov-like triangle
        let q = Quiver::from_arrows(3, 0, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        let g = GAction::new(3, vec![vec![1, 2, 0]]).unwrap();
        assert!(matches!(is_admissible(&q, &g).unwrap(), Admissibility::Violation { condition: 3, .. }));
    }

    #[test]
    fn folded_matrices() {
        let (q, g) = a3_swap();
        let f = fold(&q, &g).unwrap();
        assert_eq!(f.orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!(f.bg, vec![vec![0, 2], vec![-1, 0]]);
        assert_eq!(f.d, vec![2, 1]);
        assert!(f.is_skew_symmetrizable());
        let (q, g) = d4_rotation();
        let f = fold(&q, &g).unwrap();
        assert_eq!(f.bg, vec![vec![0, -1], vec![3, 0]]);
        assert!(f.is_skew_symmetrizable());
        for k in 0..2 {
            assert_eq!(f.mutate(k).unwrap().mutate(k).unwrap(), f);
        }
        let t = fold(&q, &GAction::trivial(4)).unwrap();
        assert_eq!(t.bg, q.matrix().to_vec());
    }

    #[test]
    fn orbit_mutation_is_order_free() {
        let (q, g) = a3_swap();
        let a = q.mutate(0).unwrap().mutate(2).unwrap();
        let b = q.mutate(2).unwrap().mutate(0).unwrap();
        assert_eq!(a, b);
        assert_eq!(orbit_mutate(&q, &g, 0).unwrap(), a);
        assert_eq!(orbit_mutate(&q, &g, 1).unwrap(), q.mutate(1).unwrap());
    }

    #[test]
    fn commuting_and_global() {
        for (q, g) in [a3_swap(), d4_rotation(), a5_flip()] {
            for o in 0..g.orbits().len() {
                assert!(fold_commutes(&q, &g, o).unwrap());
            }
            assert!(matches!(globally_foldable(&q, &g, 10_000).unwrap(), Foldability::Yes { .. }));
        }
        let (q, g) = breaks_after_one_step();
        assert_eq!(is_admissible(&q, &g).unwrap(), Admissibility::Admissible);
        let four = g.orbits().iter().position(|o| o == &vec![4]).unwrap();
        assert_eq!(globally_foldable(&q, &g, 10_000).unwrap(), Foldability::Counterexample(vec![four]));
    }

    #[test]
    fn folded_cluster_counts() {
        // B2/C2 has 6 clusters, G2 has 8, B3/C3 has 20
        let (q, g) = a3_swap();
        assert_eq!(folded_cluster_count(&q, &g, 100).unwrap(), Some(6));
        let (q, g) = d4_rotation();
        assert_eq!(folded_cluster_count(&q, &g, 100).unwrap(), Some(8));
        let (q, g) = a5_flip();
        assert_eq!(folded_cluster_count(&q, &g, 100).unwrap(), Some(20));
    }

    #[test]
    fn parse_generators() {
        let (q, _) = a3_swap();
        let g = GAction::parse("(v0 v2)\n", &q).unwrap();
        assert_eq!(g.generators(), &[vec![2, 1, 0]]);
        assert!(GAction::parse("(v0 v9)", &q).is_err());
    }
}
