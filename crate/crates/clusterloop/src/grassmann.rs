//! Vector configurations for the top cell of `Gr(k, N)`: Plücker
//! coordinates, the cyclic shift, braid actions and flag ratios.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("configuration does not have full rank")]
    NotFullRank,
    #[error("column subset must have size {0}")]
    SubsetSize(usize),
    #[error("column index {0} out of range")]
    OutOfRange(usize),
    #[error("no braid generators: gcd(k, N) = 1")]
    NoBraid,
    #[error("braid index {i} outside 1..={max}")]
    BraidIndex { i: usize, max: usize },
    #[error("degenerate configuration at column {0}")]
    Degenerate(usize),
    #[error("zero pairing in ratio")]
    ZeroPairing,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Exact determinant by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for cc in c..n {
                let t = &f * &m[c][cc];
                m[r][cc] -= t;
            }
        }
    }
    d
}

fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        for i in r + 1..rows {
            let f = &m[i][c] / &m[r][c];
            for cc in c..cols {
                let t = &f * &m[r][cc];
                m[i][cc] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Determinant of the matrix whose columns are `vs`.
fn det_cols(vs: &[&Vec<Q>]) -> Q {
    let k = vs.len();
    det((0..k).map(|r| vs.iter().map(|v| v[r].clone()).collect()).collect())
}

/// `k` x `N` matrix stored as its columns `v_1, ..., v_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfig {
    k: usize,
    cols: Vec<Vec<Q>>,
}

impl VectorConfig {
    pub fn from_columns(k: usize, cols: Vec<Vec<Q>>) -> Result<Self, GrassError> {
        if let Some(c) = cols.iter().find(|c| c.len() != k) {
            return Err(GrassError::Shape { expected: k, got: c.len() });
        }
        let cfg = VectorConfig { k, cols };
        if cfg.cols.len() < k || rank(cfg.rows()) < k {
            return Err(GrassError::NotFullRank);
        }
        Ok(cfg)
    }

    pub fn from_int_columns(k: usize, cols: &[Vec<i64>]) -> Result<Self, GrassError> {
        Self::from_columns(k, cols.iter().map(|c| c.iter().map(|&x| Q::from_integer(x.into())).collect()).collect())
    }

    /// Random integer entries in `-range..=range`, retried until full rank
    /// and every cyclically consecutive minor is nonzero.
    pub fn random(k: usize, n: usize, range: i64, rng: &mut impl rand::Rng) -> Self {
        loop {
            let cols: Vec<Vec<i64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(-range..=range)).collect()).collect();
            if let Ok(c) = Self::from_int_columns(k, &cols) {
                if c.is_transverse() {
                    return c;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<Q>] {
        &self.cols
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        (0..self.k).map(|r| self.cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    /// Minor on the given 0-based columns, in that order.
    pub fn plucker(&self, cols: &[usize]) -> Result<Q, GrassError> {
        if cols.len() != self.k {
            return Err(GrassError::SubsetSize(self.k));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols.len()) {
            return Err(GrassError::OutOfRange(c));
        }
        Ok(det_cols(&cols.iter().map(|&c| &self.cols[c]).collect::<Vec<_>>()))
    }

    /// All cyclically consecutive minors are nonzero.
    pub fn is_transverse(&self) -> bool {
        let n = self.cols.len();
        (0..n).all(|i| !det_cols(&(0..self.k).map(|t| &self.cols[(i + t) % n]).collect::<Vec<_>>()).is_zero())
    }

    /// Same point of the Grassmannian: equal row spans.
    pub fn same_point(&self, other: &VectorConfig) -> bool {
        if self.k != other.k || self.cols.len() != other.cols.len() {
            return false;
        }
        let mut stacked = self.rows();
        stacked.extend(other.rows());
        rank(stacked) == self.k
    }

    fn sign(&self) -> Q {
        if self.k % 2 == 1 {
            Q::one()
        } else {
            -Q::one()
        }
    }

    /// `(v_1, ..., v_N) -> (v_2, ..., v_N, (-1)^(k-1) v_1)`.
    pub fn cyclic_shift(&self) -> VectorConfig {
        let s = self.sign();
        let mut cols = self.cols[1..].to_vec();
        cols.push(self.cols[0].iter().map(|x| x * &s).collect());
        VectorConfig { k: self.k, cols }
    }

    pub fn cyclic_shift_inv(&self) -> VectorConfig {
        let s = self.sign();
        let n = self.cols.len();
        let mut cols = vec![self.cols[n - 1].iter().map(|x| x * &s).collect()];
        cols.extend_from_slice(&self.cols[..n - 1]);
        VectorConfig { k: self.k, cols }
    }

    pub fn d(&self) -> usize {
        self.k.gcd(&self.cols.len())
    }

    /// Braid generator `sigma_i`, `1 <= i <= d - 1`.
    pub fn sigma(&self, i: usize) -> Result<VectorConfig, GrassError> {
        let d = self.d();
        if d < 2 {
            return Err(GrassError::NoBraid);
        }
        if i == 0 || i >= d {
            return Err(GrassError::BraidIndex { i, max: d - 1 });
        }
        self.sigma_at(i - 1)
    }

    /// The block move at 0-based positions `a + jd`, `a + jd + 1` for all `j`:
    /// `v_a, v_(a+1)` become `v_(a+1), w` where `w = -v_a + b v_(a+1)` lies
    /// in the span of `v_(a+2), ..., v_(a+k)`. Indices past `N` use the
    /// twisted periodicity `v_(t+N) = (-1)^(k-1) v_t` of the cyclic shift.
    pub fn sigma_at(&self, a0: usize) -> Result<VectorConfig, GrassError> {
        let n = self.cols.len();
        let (k, d) = (self.k, self.d());
        let s = self.sign();
        let ext = |t: usize| -> Vec<Q> {
            if t < n {
                self.cols[t].clone()
            } else {
                self.cols[t % n].iter().map(|x| x * &s).collect()
            }
        };
        let mut out = self.cols.clone();
        for j in 0..n / d {
            let a = (a0 + j * d) % n;
            let (va, vb) = (ext(a), ext(a + 1));
            let span: Vec<Vec<Q>> = (2..=k).map(|t| ext(a + t)).collect();
            let neg: Vec<Q> = va.iter().map(|x| -x).collect();
            let m0: Vec<&Vec<Q>> = std::iter::once(&neg).chain(&span).collect();
            let m1: Vec<&Vec<Q>> = std::iter::once(&vb).chain(&span).collect();
            let d1 = det_cols(&m1);
            if d1.is_zero() {
                return Err(GrassError::Degenerate(a));
            }
            let coef = -det_cols(&m0) / d1;
            let w: Vec<Q> = va.iter().zip(&vb).map(|(x, y)| -x + &coef * y).collect();
            out[a] = vb;
            out[(a + 1) % n] = if a + 1 < n { w } else { w.iter().map(|x| x * &s).collect() };
        }
        Ok(VectorConfig { k, cols: out })
    }

    /// Left multiplication by a `k` x `k` matrix.
    pub fn transform(&self, g: &[Vec<Q>]) -> VectorConfig {
        let cols = self
            .cols
            .iter()
            .map(|c| (0..self.k).map(|r| (0..self.k).fold(Q::zero(), |s, t| s + &g[r][t] * &c[t])).collect())
            .collect();
        VectorConfig { k: self.k, cols }
    }

    /// `grassmann k N` followed by `k` rows of `N` rationals.
    pub fn to_text(&self) -> String {
        let mut s = format!("grassmann {} {}\n", self.k, self.cols.len());
        for row in self.rows() {
            s += &row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GrassError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim())).filter(|(_, l)| !l.is_empty());
        let err = |line, msg: &str| GrassError::Parse { line, msg: msg.to_string() };
        let (ln, head) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        if h.len() != 3 || h[0] != "grassmann" {
            return Err(err(ln, "expected `grassmann <k> <N>`"));
        }
        let k: usize = h[1].parse().map_err(|_| err(ln, "bad k"))?;
        let n: usize = h[2].parse().map_err(|_| err(ln, "bad N"))?;
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let row = line.split_whitespace().map(|t| parse_rational(t).ok_or_else(|| err(ln, &format!("bad rational `{t}`")))).collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(err(ln, &format!("expected {n} entries, got {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(err(ln, &format!("expected {k} rows, got {}", rows.len())));
        }
        Self::from_columns(k, (0..n).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(t: &str) -> Option<Q> {
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (t.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!q.is_zero()).then(|| Q::new(p, q))
}

fn wedge2(a: &[Q], b: &[Q]) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn pair(f: &[Q], v: &[Q]) -> Q {
    f.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// `(a^b / b^c)(c^d / d^a)` for lines in the plane.
pub fn cross_ratio(a: &[Q], b: &[Q], c: &[Q], d: &[Q]) -> Result<Q, GrassError> {
    let (ab, bc, cd, da) = (wedge2(a, b), wedge2(b, c), wedge2(c, d), wedge2(d, a));
    if [&ab, &bc, &cd, &da].iter().any(|x| x.is_zero()) {
        return Err(GrassError::ZeroPairing);
    }
    Ok(ab / bc * (cd / da))
}

/// `B(a) C(b) A(c) / (B(c) C(a) A(b))` for covectors `A, B, C` and lines `a, b, c`.
pub fn triple_ratio(planes: [&[Q]; 3], lines: [&[Q]; 3]) -> Result<Q, GrassError> {
    let [pa, pb, pc] = planes;
    let [a, b, c] = lines;
    let num = pair(pb, a) * pair(pc, b) * pair(pa, c);
    let den = pair(pb, c) * pair(pc, a) * pair(pa, b);
    if num.is_zero() || den.is_zero() {
        return Err(GrassError::ZeroPairing);
    }
    Ok(num / den)
}

pub fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}
