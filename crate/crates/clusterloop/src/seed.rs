//! Seeds, A- and X-mutation, and cluster automorphisms `(word; perm)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::Num;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::laurent::{modinv, mulmod, powmod, LaurentError, LaurentPoly};
use crate::quiver::{Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("Laurent phenomenon violated (internal error): {0}")]
    Laurent(#[from] LaurentError),
    #[error("permutation is not a bijection: {0:?} repeated")]
    BadPermutation(String),
    #[error("permutation mixes mutable vertex {0:?} with frozen vertex {1:?}")]
    MixesFrozen(String, String),
    #[error("not an automorphism of the seed's quiver")]
    NotAutomorphism,
    #[error("X-coordinate {0} is not strictly positive")]
    NonPositive(usize),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// Compare names so that `v2 < v10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>, &str) {
        let st = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let en = s[st..].find(|c: char| !c.is_ascii_digit()).map_or(s.len(), |e| st + e);
        (&s[..st], s[st..en].parse().ok(), &s[en..])
    }
    let (pa, na, ra) = split(a);
    let (pb, nb, rb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then_with(|| ra.cmp(rb)).then_with(|| a.cmp(b))
}

/// A mutation word applied left to right, followed by the relabeling
/// `v -> perm(v)`. Vertices are referred to by name.
#[derive(Clone, Debug)]
pub struct ClusterAutomorphism {
    word: Vec<String>,
    cycles: Vec<Vec<String>>,
}

impl PartialEq for ClusterAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.perm_map() == other.perm_map()
    }
}

impl Eq for ClusterAutomorphism {}

impl ClusterAutomorphism {
    pub fn identity() -> Self {
        ClusterAutomorphism { word: vec![], cycles: vec![] }
    }

    /// Cycles are kept in the given presentation; `(a b c)` sends a to b.
    pub fn new<S: Into<String>>(word: impl IntoIterator<Item = S>, cycles: Vec<Vec<S>>) -> Result<Self, SeedError> {
        let word = word.into_iter().map(Into::into).collect();
        let cycles: Vec<Vec<String>> = cycles
            .into_iter()
            .map(|c| c.into_iter().map(Into::into).collect::<Vec<String>>())
            .filter(|c| c.len() > 1)
            .collect();
        let mut seen = HashSet::new();
        for v in cycles.iter().flatten() {
            if !seen.insert(v.clone()) {
                return Err(SeedError::BadPermutation(v.clone()));
            }
        }
        Ok(ClusterAutomorphism { word, cycles })
    }

    /// Builds from a name map; fixed points may be included or omitted.
    pub fn from_map(word: Vec<String>, map: &BTreeMap<String, String>) -> Result<Self, SeedError> {
        let targets: BTreeSet<&String> = map.values().collect();
        if targets.len() != map.len() || map.keys().collect::<BTreeSet<_>>() != targets {
            return Err(SeedError::BadPermutation(format!("{map:?}")));
        }
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort_by(|a, b| natural_cmp(a, b));
        let mut done = HashSet::new();
        let mut cycles = Vec::new();
        for k in keys {
            if done.contains(k) || map[k] == *k {
                continue;
            }
            let mut c = vec![k.clone()];
            done.insert(k.clone());
            let mut x = &map[k];
            while x != k {
                done.insert(x.clone());
                c.push(x.clone());
                x = &map[x];
            }
            cycles.push(c);
        }
        Ok(ClusterAutomorphism { word, cycles })
    }

    /// From vertex indices of `q`: `perm[v]` is the image of vertex `v`.
    pub fn from_indices(q: &Quiver, word: &[usize], perm: &[usize]) -> Self {
        let map = (0..q.n()).map(|v| (q.label(v).to_string(), q.label(perm[v]).to_string())).collect();
        Self::from_map(word.iter().map(|&v| q.label(v).to_string()).collect(), &map).expect("index permutation")
    }

    pub fn word(&self) -> &[String] {
        &self.word
    }

    pub fn cycles(&self) -> &[Vec<String>] {
        &self.cycles
    }

    pub fn perm_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for c in &self.cycles {
            for (i, a) in c.iter().enumerate() {
                m.insert(a.clone(), c[(i + 1) % c.len()].clone());
            }
        }
        m
    }

    pub fn image(&self, v: &str) -> String {
        for c in &self.cycles {
            if let Some(i) = c.iter().position(|x| x == v) {
                return c[(i + 1) % c.len()].clone();
            }
        }
        v.to_string()
    }

    pub fn preimage(&self, v: &str) -> String {
        for c in &self.cycles {
            if let Some(i) = c.iter().position(|x| x == v) {
                return c[(i + c.len() - 1) % c.len()].clone();
            }
        }
        v.to_string()
    }

    /// All names mentioned by the word or the permutation.
    pub fn alphabet(&self) -> BTreeSet<String> {
        self.word.iter().chain(self.cycles.iter().flatten()).cloned().collect()
    }

    /// Renames every vertex through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Self {
        ClusterAutomorphism {
            word: self.word.iter().map(|v| f(v)).collect(),
            cycles: self.cycles.iter().map(|c| c.iter().map(|v| f(v)).collect()).collect(),
        }
    }

    /// Word positions and the permutation as an index array for `q`.
    pub fn resolve(&self, q: &Quiver) -> Result<(Vec<usize>, Vec<usize>), SeedError> {
        let word = self.word.iter().map(|v| q.index_of(v)).collect::<Result<Vec<_>, _>>()?;
        let mut perm: Vec<usize> = (0..q.n()).collect();
        for (a, b) in self.perm_map() {
            let (i, j) = (q.index_of(&a)?, q.index_of(&b)?);
            if q.is_mutable(i) != q.is_mutable(j) {
                return Err(SeedError::MixesFrozen(a, b));
            }
            perm[i] = j;
        }
        Ok((word, perm))
    }

    /// `phi2 after phi1`: the word of `phi1` followed by that of `phi2` pulled
    /// back through `pi1`, and the permutation `pi2 . pi1`.
    pub fn compose(phi2: &Self, phi1: &Self) -> Self {
        let mut word = phi1.word.clone();
        word.extend(phi2.word.iter().map(|v| phi1.preimage(v)));
        let mut names = phi1.alphabet();
        names.extend(phi2.alphabet());
        let map = names.iter().map(|v| (v.clone(), phi2.image(&phi1.image(v)))).collect();
        Self::from_map(word, &map).unwrap()
    }

    /// `(pi(reversed word); pi^-1)`.
    pub fn inverse(&self) -> Self {
        ClusterAutomorphism {
            word: self.word.iter().rev().map(|v| self.image(v)).collect(),
            cycles: self.cycles.iter().map(|c| c.iter().rev().cloned().collect()).collect(),
        }
    }

    pub fn power(&self, m: i64) -> Self {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut r = Self::identity();
        for _ in 0..m.unsigned_abs() {
            r = Self::compose(&base, &r);
        }
        r
    }

    /// Cancels adjacent repeated mutations, which are involutions.
    pub fn reduced(&self) -> Self {
        let mut w: Vec<String> = Vec::new();
        for v in &self.word {
            if w.last() == Some(v) {
                w.pop();
            } else {
                w.push(v.clone());
            }
        }
        ClusterAutomorphism { word: w, cycles: self.cycles.clone() }
    }

    /// Image of the quiver after the word and the relabeling.
    pub fn apply_quiver(&self, q: &Quiver) -> Result<Quiver, SeedError> {
        let (word, perm) = self.resolve(q)?;
        let mut r = q.clone();
        for k in word {
            r = r.mutate(k)?;
        }
        Ok(r.relabeled(&perm))
    }

    /// Whether the induced quiver map is an automorphism (optionally
    /// accepting the globally reversed quiver).
    pub fn is_automorphism(&self, q: &Quiver, allow_reversal: bool) -> bool {
        match self.apply_quiver(q) {
            Ok(r) => r.same_arrows(q) || (allow_reversal && r.same_arrows(&q.reversed())),
            Err(_) => false,
        }
    }

    pub fn to_text(&self) -> String {
        let perm: String = if self.cycles.is_empty() {
            "()".into()
        } else {
            self.cycles.iter().map(|c| format!("({})", c.join(" "))).collect()
        };
        format!("mut: {} ; perm: {}", self.word.join(" "), perm)
    }

    /// Parses `mut: v5 v0 ; perm: (v1 v4)(v2 v3)`.
    pub fn parse(s: &str) -> Result<Self, SeedError> {
        let err = |col: usize, msg: &str| SeedError::Parse { col, msg: msg.to_string() };
        let t = s.trim();
        let rest = t.strip_prefix("mut:").ok_or_else(|| err(1, "expected `mut:`"))?;
        let semi = rest.find(';').ok_or_else(|| err(t.len(), "expected `;`"))?;
        let word: Vec<String> = rest[..semi].split_whitespace().map(String::from).collect();
        let p = rest[semi + 1..].trim();
        let pcol = t.len() - p.len() + 1;
        let p = p.strip_prefix("perm:").ok_or_else(|| err(pcol, "expected `perm:`"))?;
        let cycles = parse_cycles(p).map_err(|(c, m)| err(pcol + 5 + c, &m))?;
        Self::new(word, cycles)
    }

    /// Tuple form `(w1, w2, ...; (a b c)(d e))`; names have `strip` removed
    /// when what remains is numeric.
    pub fn to_tuple(&self, strip: &str) -> String {
        let f = |v: &String| match v.strip_prefix(strip) {
            Some(r) if !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()) => r.to_string(),
            _ => v.clone(),
        };
        let w: Vec<String> = self.word.iter().map(f).collect();
        let c: String = self
            .cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(f).collect::<Vec<_>>().join(" ")))
            .collect();
        format!("({}; {})", w.join(", "), if c.is_empty() { "id".into() } else { c })
    }

    /// Inverse of [`to_tuple`](Self::to_tuple): numeric tokens get `prefix`.
    pub fn parse_tuple(s: &str, prefix: &str) -> Result<Self, SeedError> {
        let err = |col: usize, msg: &str| SeedError::Parse { col, msg: msg.to_string() };
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| err(1, "expected parentheses"))?;
        let semi = inner.find(';').ok_or_else(|| err(1, "expected `;`"))?;
        let name = |x: &str| {
            if x.chars().all(|c| c.is_ascii_digit()) {
                format!("{prefix}{x}")
            } else {
                x.to_string()
            }
        };
        let word: Vec<String> = inner[..semi]
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(name)
            .collect();
        let p = inner[semi + 1..].trim();
        let cycles = if p == "id" { vec![] } else { parse_cycles(p).map_err(|(c, m)| err(semi + c, &m))? };
        let cycles = cycles.into_iter().map(|c| c.iter().map(|x| name(x)).collect()).collect();
        Self::new(word, cycles)
    }
}

fn parse_cycles(p: &str) -> Result<Vec<Vec<String>>, (usize, String)> {
    let mut cycles = Vec::new();
    let mut cur: Option<Vec<String>> = None;
    let mut tok = String::new();
    for (i, ch) in p.char_indices() {
        match ch {
            '(' => {
                if cur.is_some() {
                    return Err((i, "nested `(`".into()));
                }
                cur = Some(Vec::new());
            }
            ')' => {
                let mut c = cur.take().ok_or((i, "unmatched `)`".to_string()))?;
                if !tok.is_empty() {
                    c.push(std::mem::take(&mut tok));
                }
                cycles.push(c);
            }
            c if c.is_whitespace() || c == ',' => {
                if !tok.is_empty() {
                    cur.as_mut().ok_or((i, "name outside a cycle".to_string()))?.push(std::mem::take(&mut tok));
                }
            }
            c => {
                if cur.is_none() {
                    return Err((i, "name outside a cycle".into()));
                }
                tok.push(c)
            }
        }
    }
    if cur.is_some() {
        return Err((p.len(), "unclosed `(`".into()));
    }
    Ok(cycles)
}

impl fmt::Display for ClusterAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A quiver together with one Laurent polynomial per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: Quiver,
    vars: Vec<LaurentPoly>,
}

impl Seed {
    /// The initial seed `a_1, ..., a_n` on `q`.
    pub fn initial(q: &Quiver) -> Self {
        let n = q.n();
        Seed { quiver: q.clone(), vars: (0..n).map(|i| LaurentPoly::var(n, i)).collect() }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    /// `a_k a_k' = prod_{b_ik>0} a_i^{b_ik} + prod_{b_ik<0} a_i^{-b_ik}`.
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        let q = self.quiver.mutate(k)?;
        let nv = self.vars[k].nvars();
        let mut pos = LaurentPoly::one(nv);
        let mut neg = LaurentPoly::one(nv);
        for i in 0..self.quiver.n() {
            let b = self.quiver.b(i, k);
            if b > 0 {
                pos = &pos * &self.vars[i].pow(b as u32);
            } else if b < 0 {
                neg = &neg * &self.vars[i].pow((-b) as u32);
            }
        }
        let mut vars = self.vars.clone();
        vars[k] = (&pos + &neg).div_exact(&self.vars[k])?;
        Ok(Seed { quiver: q, vars })
    }

    /// Moves the variable and quiver data at `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Seed {
        let mut vars = self.vars.clone();
        for (v, &p) in perm.iter().enumerate() {
            vars[p] = self.vars[v].clone();
        }
        Seed { quiver: self.quiver.relabeled(perm), vars }
    }

    pub fn apply(&self, phi: &ClusterAutomorphism) -> Result<Seed, SeedError> {
        let (word, perm) = phi.resolve(&self.quiver)?;
        let mut s = self.clone();
        for k in word {
            s = s.mutate(k)?;
        }
        Ok(s.relabeled(&perm))
    }

    pub fn is_automorphism(&self, phi: &ClusterAutomorphism, allow_reversal: bool) -> bool {
        phi.is_automorphism(&self.quiver, allow_reversal)
    }

    /// Same cluster up to a permutation of the vertices.
    pub fn unlabeled_eq(&self, other: &Seed) -> bool {
        let mut a = self.vars.clone();
        let mut b = other.vars.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Labeled comparison of the cluster variables only.
    pub fn same_vars(&self, other: &Seed) -> bool {
        self.vars == other.vars
    }

    /// Least `m <= bound` with `phi^m` fixing the labeled seed.
    ///
    /// Candidates are screened by iterating the action on a random point
    /// modulo a large prime; a match is confirmed with exact Laurent arithmetic.
    pub fn order(&self, phi: &ClusterAutomorphism, bound: usize) -> Result<Order, SeedError> {
        if !self.is_automorphism(phi, false) {
            return Err(SeedError::NotAutomorphism);
        }
        let (word, perm) = phi.resolve(&self.quiver)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        'restart: loop {
            let start = ModSeed::random(&self.quiver, &mut rng);
            let mut x = start.clone();
            for m in 1..=bound {
                x = match x.apply(&word, &perm) {
                    Some(y) => y,
                    None => continue 'restart,
                };
                if x.vals == start.vals && self.apply(&phi.power(m as i64))?.same_vars(self) {
                    return Ok(Order::Finite(m));
                }
            }
            return Ok(Order::ExceedsBound(bound));
        }
    }

    pub fn action_equal(&self, phi1: &ClusterAutomorphism, phi2: &ClusterAutomorphism) -> Result<bool, SeedError> {
        let a = self.apply(phi1)?;
        let b = self.apply(phi2)?;
        Ok(a.same_vars(&b) && a.quiver.same_arrows(&b.quiver))
    }
}

/// Result of an order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    ExceedsBound(usize),
}

/// Prime used for modular screening.
pub const MOD_P: u64 = (1 << 61) - 1;

/// A seed evaluated at a point modulo [`MOD_P`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSeed {
    pub quiver: Quiver,
    pub vals: Vec<u64>,
}

impl ModSeed {
    pub fn random(q: &Quiver, rng: &mut impl Rng) -> Self {
        ModSeed { quiver: q.clone(), vals: (0..q.n()).map(|_| rng.gen_range(2..MOD_P)).collect() }
    }

    pub fn mutate(&self, k: usize) -> Option<ModSeed> {
        let p = MOD_P;
        let (mut pos, mut neg) = (1u64, 1u64);
        for i in 0..self.quiver.n() {
            let b = self.quiver.b(i, k);
            if b > 0 {
                pos = mulmod(pos, powmod(self.vals[i], b as u64, p), p);
            } else if b < 0 {
                neg = mulmod(neg, powmod(self.vals[i], (-b) as u64, p), p);
            }
        }
        let mut vals = self.vals.clone();
        vals[k] = mulmod((pos + neg) % p, modinv(self.vals[k], p)?, p);
        Some(ModSeed { quiver: self.quiver.mutate(k).ok()?, vals })
    }

    pub fn apply(&self, word: &[usize], perm: &[usize]) -> Option<ModSeed> {
        let mut s = self.clone();
        for &k in word {
            s = s.mutate(k)?;
        }
        let mut vals = s.vals.clone();
        for (v, &t) in perm.iter().enumerate() {
            vals[t] = s.vals[v];
        }
        Some(ModSeed { quiver: s.quiver.relabeled(perm), vals })
    }
}

/// Number of distinct unlabeled clusters reachable from `s`, exploring at
/// most `max_clusters`; the flag reports truncation. Clusters are compared
/// by their values at a seeded random point modulo [`MOD_P`].
pub fn exchange_graph_size(s: &Seed, max_clusters: usize) -> Result<(usize, bool), SeedError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe6);
    let n = s.quiver.n();
    let m = s.quiver.n_mut();
    let key = |t: &ModSeed| {
        let mut v = t.vals[..m].to_vec();
        v.sort_unstable();
        v
    };
    // a point where some mutation divides by zero is replaced by a fresh one
    'restart: loop {
        let x: Vec<u64> = (0..n).map(|_| rng.gen_range(2..MOD_P)).collect();
        let Some(vals) = s.vars.iter().map(|f| f.eval_mod(&x, MOD_P)).collect::<Option<Vec<u64>>>() else {
            continue;
        };
        let s0 = ModSeed { quiver: s.quiver.clone(), vals };
        let mut seen = HashSet::from([key(&s0)]);
        let mut queue = VecDeque::from([s0]);
        while let Some(t) = queue.pop_front() {
            for k in 0..m {
                let Some(u) = t.mutate(k) else { continue 'restart };
                if seen.insert(key(&u)) {
                    if seen.len() > max_clusters {
                        return Ok((max_clusters, true));
                    }
                    queue.push_back(u);
                }
            }
        }
        return Ok((seen.len(), false));
    }
}

/// Positive X-coordinates, one per mutable vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoint<T> {
    pub values: Vec<T>,
}

fn ipow<T: Clone + Num>(x: &T, e: u64) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * x.clone();
    }
    r
}

impl<T: Clone + Num + PartialOrd> XPoint<T> {
    pub fn new(values: Vec<T>) -> Result<Self, SeedError> {
        if let Some(i) = values.iter().position(|x| !(*x > T::zero())) {
            return Err(SeedError::NonPositive(i));
        }
        Ok(XPoint { values })
    }

    /// `x_k -> 1/x_k`; `x_j (1 + x_k)^{-b_kj}` for `b_kj <= 0` and
    /// `x_j (1 + 1/x_k)^{-b_kj}` for `b_kj >= 0`.
    pub fn mutate(&self, q: &Quiver, k: usize) -> Result<Self, SeedError> {
        if k >= q.n_mut() {
            return Err(QuiverError::Frozen(k).into());
        }
        let xk = self.values[k].clone();
        let one = T::one();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, xj)| {
                if j == k {
                    return one.clone() / xk.clone();
                }
                let b = q.b(k, j);
                let f = if b <= 0 { one.clone() + xk.clone() } else { one.clone() + one.clone() / xk.clone() };
                let p = ipow(&f, b.unsigned_abs());
                if b <= 0 {
                    xj.clone() * p
                } else {
                    xj.clone() / p
                }
            })
            .collect();
        Ok(XPoint { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families;
    use num_rational::BigRational;

    fn a2() -> Quiver {
        families::a(2)
    }

    #[test]
    fn a2_mutation() {
        let s = Seed::initial(&a2());
        let m = s.mutate(0).unwrap();
        assert_eq!(m.vars()[0], LaurentPoly::parse("a1^-1 + a1^-1*a2", 2).unwrap());
        assert_eq!(m.mutate(0).unwrap(), s);
    }

    #[test]
    fn a2_pentagon() {
        let s = Seed::initial(&a2());
        let phi = ClusterAutomorphism::new(["v0", "v1", "v0", "v1", "v0"], vec![vec!["v0", "v1"]]).unwrap();
        assert!(s.apply(&phi).unwrap().same_vars(&s));
        let rho = ClusterAutomorphism::new(["v0"], vec![vec!["v0", "v1"]]).unwrap();
        assert!(s.is_automorphism(&rho, false));
        assert_eq!(s.order(&rho, 100).unwrap(), Order::Finite(5));
        assert_eq!(s.order(&ClusterAutomorphism::identity(), 10).unwrap(), Order::Finite(1));
        let bad = ClusterAutomorphism::new(["v0"], vec![]).unwrap();
        assert!(!s.is_automorphism(&bad, false));
        assert_eq!(s.order(&bad, 10), Err(SeedError::NotAutomorphism));
        let other = ClusterAutomorphism::new(["v1"], vec![vec!["v0", "v1"]]).unwrap();
        assert!(!s.action_equal(&rho, &other).unwrap());
    }

    #[test]
    fn inverse_and_compose() {
        let q = families::d(4);
        let s = Seed::initial(&q);
        let phi = ClusterAutomorphism::new(["v0", "v2", "v3"], vec![vec!["v0", "v1", "v3"]]).unwrap();
        let inv = phi.inverse();
        assert!(s.apply(&phi).unwrap().apply(&inv).unwrap().same_vars(&s));
        assert!(s.apply(&ClusterAutomorphism::compose(&inv, &phi)).unwrap().same_vars(&s));
        let psi = ClusterAutomorphism::new(["v1", "v2"], vec![vec!["v1", "v2"]]).unwrap();
        let lhs = s.apply(&ClusterAutomorphism::compose(&psi, &phi)).unwrap();
        let rhs = s.apply(&phi).unwrap().apply(&psi).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exchange_graphs() {
        assert_eq!(exchange_graph_size(&Seed::initial(&a2()), 100).unwrap(), (5, false));
        assert_eq!(exchange_graph_size(&Seed::initial(&families::a(3)), 100).unwrap(), (14, false));
        assert!(exchange_graph_size(&Seed::initial(&families::kronecker()), 30).unwrap().1);
    }

    #[test]
    fn x_mutation() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let p = XPoint::new(vec![r(1, 1), r(1, 1)]).unwrap();
        let m = p.mutate(&a2(), 0).unwrap();
        assert_eq!(m.values, vec![r(1, 1), r(1, 2)]);
        assert_eq!(m.mutate(&a2().mutate(0).unwrap(), 0).unwrap(), p);
        let flat = Quiver::new(2, 0);
        let p2 = XPoint::new(vec![r(3, 1), r(5, 7)]).unwrap();
        assert_eq!(p2.mutate(&flat, 1).unwrap().values, vec![r(3, 1), r(7, 5)]);
        assert!(XPoint::new(vec![0.0f64]).is_err());
    }

    #[test]
    fn text_forms() {
        let phi = ClusterAutomorphism::parse("mut: v5 v0 v3 v1 v1 v4 ; perm: (v1 v4 v5 v0 v3)").unwrap();
        assert_eq!(phi.to_text(), "mut: v5 v0 v3 v1 v1 v4 ; perm: (v1 v4 v5 v0 v3)");
        assert_eq!(phi.image("v3"), "v1");
        let t = ClusterAutomorphism::parse_tuple("(1, 4; (1 4 0 3))", "v").unwrap();
        assert_eq!(t.to_tuple("v"), "(1, 4; (1 4 0 3))");
        assert!(ClusterAutomorphism::parse("mut: a ; perm: (a b)(b c)").is_err());
        assert!(ClusterAutomorphism::parse("perm: ()").is_err());
    }
}
