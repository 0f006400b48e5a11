//! Named loops compiled into cluster automorphisms: satellite loops, the
//! Kalman loop, and the generators of T-shaped quivers.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::fence::{BraidWord, FenceError, FenceWalk, PlabicFence};
use crate::quiver::{Quiver, QuiverError};
use crate::seed::{ClusterAutomorphism, Seed, SeedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error(transparent)]
    Fence(#[from] FenceError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("inconsistent loop data: {0}")]
    Inconsistent(String),
    #[error("strand {0} is not fixed by the braid permutation")]
    NotFixed(usize),
    #[error("satellite exponent must be at least 3, got {0}")]
    SmallExponent(usize),
    #[error("satellite crossing stuck at column {column} after {mutations} braid moves")]
    Stuck { column: usize, mutations: usize },
    #[error("rotation did not return to the source fence")]
    NotClosed,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} is not an automorphism of the seed")]
    InvalidGenerator(String),
    #[error("bad T-quiver spec: {0}")]
    BadSpec(String),
}

/// The two vertex lists a satellite loop acts on, both left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaInput {
    pub q_gamma: Vec<String>,
    pub q_i: Vec<String>,
}

impl ThetaInput {
    /// Pairs `(r, s)` with `q_gamma[r] == q_i[s]`.
    pub fn overlap(&self) -> Vec<(usize, usize)> {
        self.q_i
            .iter()
            .enumerate()
            .filter_map(|(s, v)| self.q_gamma.iter().position(|g| g == v).map(|r| (r, s)))
            .collect()
    }
}

/// How `pi_gamma^-1` treats the last vertex of `Q_gamma` in the row-i part
/// of the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaReading {
    /// The worked example: a row-i vertex equal to the last `gamma` is skipped.
    Example,
    /// All row-i vertices are emitted; the last `gamma` is sent to the first.
    Lemma,
}

/// Word `gamma_p .. gamma_1, gamma_1, pi^-1(i_1), ...` and one cycle per
/// overlap: the row-i vertices since the previous overlap followed by the
/// intermediate `gamma`s in descending order.
pub fn theta_sequence(t: &ThetaInput, reading: ThetaReading) -> Result<ClusterAutomorphism, LoopError> {
    let p = t.q_gamma.len();
    if p == 0 {
        return Err(LoopError::Inconsistent("empty Q_gamma".into()));
    }
    let ov = t.overlap();
    if ov.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(LoopError::Inconsistent("overlap orders disagree".into()));
    }
    let mut word: Vec<String> = t.q_gamma.iter().rev().cloned().collect();
    word.push(t.q_gamma[0].clone());
    for (s, v) in t.q_i.iter().enumerate() {
        match ov.iter().find(|o| o.1 == s) {
            None => word.push(v.clone()),
            Some(&(r, _)) if r + 1 < p => word.push(t.q_gamma[r + 1].clone()),
            Some(_) => {
                if reading == ThetaReading::Lemma {
                    word.push(t.q_gamma[0].clone());
                }
            }
        }
    }
    let mut cycles = Vec::new();
    let (mut prev_r, mut prev_s) = (None::<usize>, None::<usize>);
    for &(r, s) in &ov {
        let from_s = prev_s.map_or(0, |x| x + 1);
        let mut c: Vec<String> = t.q_i[from_s..=s].to_vec();
        let from_r = prev_r.map_or(0, |x| x + 1);
        c.extend(t.q_gamma[from_r..r].iter().rev().cloned());
        cycles.push(c);
        prev_r = Some(r);
        prev_s = Some(s);
    }
    Ok(ClusterAutomorphism::new(word, cycles)?)
}

/// Substitutes the satellite strand at position `strand` (1-based) by two
/// parallel strands: a single strand passing below the pair becomes
/// `s_j s_{j+1}`, passing above it `s_{j+1} s_j`, and distant letters shift.
pub fn cable(beta: &BraidWord, strand: usize) -> BraidWord {
    let mut p = strand;
    let mut out = Vec::new();
    for &j in &beta.letters {
        if j + 1 < p {
            out.push(j);
        } else if j > p {
            out.push(j + 1);
        } else if j == p {
            out.extend([j + 1, j]);
            p += 1;
        } else {
            out.extend([j, j + 1]);
            p -= 1;
        }
    }
    BraidWord { strands: beta.strands + 1, letters: out }
}

/// The satellite-loop construction on a concrete fence.
#[derive(Debug, Clone)]
pub struct SatelliteTheta {
    pub cabled: BraidWord,
    pub fence: PlabicFence,
    pub quiver: Quiver,
    pub input: ThetaInput,
    /// The loop traced move by move on the fence.
    pub traced: ClusterAutomorphism,
}

/// Cables `beta` (a trailing full twist is dropped) along `strand`, inserts
/// `k - 2` satellite crossings at the end, and traces the loop: the first
/// satellite crossing is carried to the left end through braid moves, then
/// one cyclic rotation closes it up.
pub fn theta_from_satellite(beta: &BraidWord, strand: usize, k: usize) -> Result<SatelliteTheta, LoopError> {
    if k < 3 {
        return Err(LoopError::SmallExponent(k));
    }
    let (beta, _) = beta.strip_full_twist();
    if strand == 0 || strand > beta.strands || beta.permutation()[strand - 1] != strand - 1 {
        return Err(LoopError::NotFixed(strand));
    }
    let mut cabled = cable(&beta, strand);
    let c = cabled.letters.len();
    cabled.letters.extend(std::iter::repeat(strand).take(k - 2));
    let fence = PlabicFence::from_braid(&cabled);
    let quiver = fence.to_quiver();
    let mut walk = FenceWalk::new(&fence);
    let x = walk.move_left(c);
    if x != 0 {
        return Err(LoopError::Stuck { column: x, mutations: walk.word.len() });
    }
    let gammas: Vec<usize> = walk.word.iter().rev().copied().collect();
    walk.rotate()?;
    if walk.fence != fence {
        return Err(LoopError::NotClosed);
    }
    let traced = walk.automorphism(&quiver);
    let faces = fence.faces();
    let mut row: Vec<usize> = (0..faces.len()).filter(|&f| faces[f].row == strand).collect();
    row.sort_by_key(|&f| faces[f].left);
    let name = |f: &usize| quiver.label(*f).to_string();
    let input = ThetaInput { q_gamma: gammas.iter().map(name).collect(), q_i: row.iter().map(name).collect() };
    Ok(SatelliteTheta { cabled, fence, quiver, input, traced })
}

/// Tail lengths `(n_1, ..., n_k)`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnQuiverSpec {
    pub tails: Vec<usize>,
}

impl TnQuiverSpec {
    pub fn new(tails: Vec<usize>) -> Result<Self, LoopError> {
        if tails.is_empty() || tails.iter().any(|&n| n < 2) {
            return Err(LoopError::BadSpec(format!("{tails:?}")));
        }
        Ok(TnQuiverSpec { tails })
    }

    /// Name of vertex `j` (2..=n_i) on tail `i` (1-based).
    pub fn tail_vertex(i: usize, j: usize) -> String {
        format!("{i}_{j}")
    }

    /// A double arrow `v0 => v1`; each tail closes an oriented triangle
    /// `v1 -> i_2 -> v0` and then alternates `i_3 -> i_2`, `i_3 -> i_4`, ...
    pub fn quiver(&self) -> Quiver {
        let mut labels = vec!["v0".to_string(), "v1".to_string()];
        for (t, &n) in self.tails.iter().enumerate() {
            labels.extend((2..=n).map(|j| Self::tail_vertex(t + 1, j)));
        }
        let mut q = Quiver::new(labels.len(), 0);
        q.add_arrows(0, 1, 2).unwrap();
        let mut at = 2;
        for &n in &self.tails {
            q.add_arrows(1, at, 1).unwrap();
            q.add_arrows(at, 0, 1).unwrap();
            for j in 3..=n {
                let (cur, prev) = (at + j - 2, at + j - 3);
                if j % 2 == 1 {
                    q.add_arrows(cur, prev, 1).unwrap();
                } else {
                    q.add_arrows(prev, cur, 1).unwrap();
                }
            }
            at += n - 1;
        }
        q.with_labels(labels).unwrap()
    }

    /// `tau_i`: odd tail vertices (descending), even ones (descending), then
    /// `i_2, v0, v1`, with the cycle `(i_2 v0 v1)`.
    pub fn tau(&self, i: usize) -> Result<ClusterAutomorphism, LoopError> {
        if i == 0 || i > self.tails.len() {
            return Err(LoopError::BadSpec(format!("tail {i} of {}", self.tails.len())));
        }
        let n = self.tails[i - 1];
        let v = |j| Self::tail_vertex(i, j);
        let mut word: Vec<String> = (3..=n).rev().filter(|j| j % 2 == 1).map(v).collect();
        word.extend((3..=n).rev().filter(|j| j % 2 == 0).map(v));
        word.extend([v(2), "v0".into(), "v1".into()]);
        Ok(ClusterAutomorphism::new(word, vec![vec![v(2), "v0".into(), "v1".into()]])?)
    }
}

/// The torus-link fence `(s_1 ... s_{k-1})^n` and the loop `delta^{k-1}` on it.
pub fn kalman_rho(k: usize, n: usize) -> Result<(PlabicFence, ClusterAutomorphism), LoopError> {
    if k < 2 || n < 2 {
        return Err(LoopError::BadSpec(format!("k={k}, n={n}")));
    }
    let letters = (0..n).flat_map(|_| 1..k).collect();
    let fence = PlabicFence::from_braid(&BraidWord { strands: k, letters });
    let (target, rho) = fence.rotations(k - 1)?;
    if target != fence {
        return Err(LoopError::NotClosed);
    }
    Ok((fence, rho))
}

/// Evaluates a word such as `t1^4 t2^-1` in named generators; the word is
/// read left to right as successive actions.
pub fn eval_word(word: &str, gens: &BTreeMap<String, ClusterAutomorphism>) -> Result<ClusterAutomorphism, LoopError> {
    let mut acc = ClusterAutomorphism::identity();
    for tok in word.split_whitespace() {
        let (name, e) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| LoopError::UnknownGenerator(tok.into()))?),
            None => (tok, 1),
        };
        if name == "id" {
            continue;
        }
        let g = gens.get(name).ok_or_else(|| LoopError::UnknownGenerator(name.into()))?;
        acc = ClusterAutomorphism::compose(&g.power(e), &acc);
    }
    Ok(acc)
}

/// One line of a relation report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Checks each relation `lhs = rhs` by comparing actions on `seed`.
pub fn verify_relations(
    seed: &Seed,
    gens: &BTreeMap<String, ClusterAutomorphism>,
    relations: &[(&str, &str)],
) -> Result<Vec<RelationCheck>, LoopError> {
    for (name, g) in gens {
        if !seed.is_automorphism(g, false) {
            return Err(LoopError::InvalidGenerator(name.clone()));
        }
    }
    relations
        .iter()
        .map(|(l, r)| {
            let a = eval_word(l, gens)?;
            let b = eval_word(r, gens)?;
            Ok(RelationCheck { lhs: l.to_string(), rhs: r.to_string(), holds: seed.action_equal(&a, &b)? })
        })
        .collect()
}

/// Searches for names (one per vertex of `q`, drawn bijectively from
/// `alphabet`) under which every template is an automorphism of `q`.
/// Returns the labels in vertex order; the first hit in lexicographic
/// order of assignments.
pub fn labeling_search(q: &Quiver, alphabet: &[String], templates: &[ClusterAutomorphism]) -> Option<Vec<String>> {
    all_labelings(q, alphabet, templates, 1).into_iter().next()
}

/// Every labeling accepted by [`labeling_search`], up to `limit`.
pub fn all_labelings(q: &Quiver, alphabet: &[String], templates: &[ClusterAutomorphism], limit: usize) -> Vec<Vec<String>> {
    let n = q.n();
    let mut out = Vec::new();
    if alphabet.len() != n || n > 10 {
        return out;
    }
    let mut assign: Vec<Option<usize>> = vec![None; n]; // vertex -> alphabet index
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        q: &Quiver,
        alphabet: &[String],
        templates: &[ClusterAutomorphism],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<String>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let n = q.n();
        if v == n {
            let labels: Vec<String> = assign.iter().map(|a| alphabet[a.unwrap()].clone()).collect();
            let ql = q.clone().with_labels(labels.clone()).unwrap();
            if templates.iter().all(|t| t.is_automorphism(&ql, false)) {
                out.push(labels);
            }
            return;
        }
        for a in 0..n {
            if used[a] {
                continue;
            }
            used[a] = true;
            assign[v] = Some(a);
            rec(v + 1, q, alphabet, templates, assign, used, out, limit);
            assign[v] = None;
            used[a] = false;
        }
    }
    rec(0, q, alphabet, templates, &mut assign, &mut used, &mut out, limit);
    out
}

/// Paper instances in the `v<i>` naming.
pub mod instances {
    use super::*;

    fn tuple(s: &str) -> ClusterAutomorphism {
        ClusterAutomorphism::parse_tuple(s, "v").expect("instance tuple")
    }

    /// The `D~_n` fence, from `(s2 s1 s3 s2)^2 s1^{n-4}` on four strands.
    pub fn dtilde_fence(n: usize) -> PlabicFence {
        let mut letters = vec![2, 1, 3, 2, 2, 1, 3, 2];
        letters.extend(std::iter::repeat(1).take(n.saturating_sub(4)));
        PlabicFence::from_braid(&BraidWord { strands: 4, letters })
    }

    /// `(5, 0, 3, 1, 1, 4, 6, ..., n; (1 4 5 0 3))`.
    pub fn dtilde_theta1(n: usize) -> ClusterAutomorphism {
        let mut w = vec!["5", "0", "3", "1", "1", "4"].into_iter().map(String::from).collect::<Vec<_>>();
        w.extend((6..=n).map(|i| i.to_string()));
        tuple(&format!("({}; (1 4 5 0 3))", w.join(", ")))
    }

    /// `(1, 4; (1 4 0 3))`.
    pub fn dtilde_theta2() -> ClusterAutomorphism {
        tuple("(1, 4; (1 4 0 3))")
    }

    /// `v0, ..., vn`.
    pub fn dtilde_alphabet(n: usize) -> Vec<String> {
        (0..=n).map(|i| format!("v{i}")).collect()
    }

    /// The `D~_n` fence quiver carrying the template names, found by search.
    pub fn dtilde_quiver(n: usize) -> Option<Quiver> {
        let q = dtilde_fence(n).to_quiver();
        let labels = labeling_search(&q, &dtilde_alphabet(n), &[dtilde_theta1(n), dtilde_theta2()])?;
        q.with_labels(labels).ok()
    }

    /// `(3, 2, 4, ..., n; (1 2 3))`.
    pub fn dn_theta(n: usize) -> ClusterAutomorphism {
        let w: Vec<String> = [3, 2].into_iter().chain(4..=n).map(|i| i.to_string()).collect();
        tuple(&format!("({}; (1 2 3))", w.join(", ")))
    }

    /// The braid whose satellite gives the worked example, `s1^2 s3 s2 s3^2 s2 s1^2 D2`.
    pub fn example_beta() -> BraidWord {
        BraidWord::parse("s1^2 s3 s2 s3^2 s2 s1^2 D2", 4).unwrap()
    }

    /// The worked example's sequence.
    pub fn example_tuple() -> &'static str {
        "(10, 8, 7, 5, 3, 1, 1, 2, 5, 6, 8, 9, 11; (2 3 1)(6 7 5)(9 10 8))"
    }

    pub fn example_input() -> ThetaInput {
        let v = |xs: &[usize]| xs.iter().map(|i| format!("v{i}")).collect();
        ThetaInput { q_gamma: v(&[1, 3, 5, 7, 8, 10]), q_i: v(&[2, 3, 6, 7, 9, 10, 11]) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_sequence_verbatim() {
        let phi = theta_sequence(&instances::example_input(), ThetaReading::Example).unwrap();
        assert_eq!(phi.to_tuple("v"), instances::example_tuple());
        let lemma = theta_sequence(&instances::example_input(), ThetaReading::Lemma).unwrap();
        assert_eq!(lemma.word().len(), phi.word().len() + 1);
    }

    #[test]
    fn smallest_disjoint_instance() {
        let t = ThetaInput { q_gamma: vec!["g".into()], q_i: vec!["a".into()] };
        let phi = theta_sequence(&t, ThetaReading::Example).unwrap();
        assert_eq!(phi.word(), ["g", "g", "a"]);
        assert!(phi.cycles().is_empty());
    }

    #[test]
    fn cabling_rule() {
        let beta = BraidWord::parse("s1^2 s3 s2^2 s1^2", 4).unwrap();
        assert_eq!(cable(&beta, 2).letters, vec![1, 2, 2, 1, 4, 3, 2, 2, 3, 1, 2, 2, 1]);
    }

    #[test]
    fn tau_words() {
        let s = TnQuiverSpec::new(vec![2, 2, 2]).unwrap();
        assert_eq!(s.tau(1).unwrap().word(), ["1_2", "v0", "v1"]);
        let e6 = TnQuiverSpec::new(vec![3, 3, 2]).unwrap();
        assert_eq!(e6.tau(1).unwrap().word(), ["1_3", "1_2", "v0", "v1"]);
        assert!(e6.tau(4).is_err());
        assert!(TnQuiverSpec::new(vec![1, 2]).is_err());
    }

    #[test]
    fn word_evaluation() {
        let mut g = BTreeMap::new();
        let rho = ClusterAutomorphism::new(["v0"], vec![vec!["v0", "v1"]]).unwrap();
        g.insert("r".to_string(), rho.clone());
        let s = Seed::initial(&crate::quiver::families::a(2));
        let rep = verify_relations(&s, &g, &[("r^5", "id"), ("r r^-1", "id"), ("r^2", "r")]).unwrap();
        assert_eq!(rep.iter().map(|r| r.holds).collect::<Vec<_>>(), vec![true, true, false]);
        assert!(eval_word("x", &g).is_err());
    }
}
