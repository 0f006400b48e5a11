//! Fixed points of automorphisms on the positive part.
//!
//! Maps are evaluated with the subtraction-free exchange relation, so the
//! positive orthant is preserved. Searches run in logarithmic coordinates.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::quiver::Quiver;
use crate::seed::{ClusterAutomorphism, SeedError};

pub const TOL_FOUND: f64 = 1e-10;
pub const TOL_REFUTE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("expected a point of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("coordinate {0} is not positive")]
    NonPositive(usize),
    #[error("map is not invertible in closed form")]
    NoInverse,
    #[error("invalid box: need 0 < lo < hi")]
    BadBox,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone)]
struct Step {
    k: usize,
    pos: Vec<(usize, u32)>,
    neg: Vec<(usize, u32)>,
}

#[derive(Debug, Clone)]
enum Kind {
    Mutations { quiver: Quiver, phi: ClusterAutomorphism, steps: Vec<Step>, perm: Vec<usize> },
    Laurent { polys: Vec<LaurentPoly>, compiled: Vec<Vec<(f64, Vec<i32>)>> },
}

/// A map of the positive orthant: the action of an automorphism on the
/// initial chart, or an explicit list of Laurent polynomials.
#[derive(Debug, Clone)]
pub struct PositiveChartMap {
    n: usize,
    kind: Kind,
}

impl PositiveChartMap {
    pub fn from_automorphism(q: &Quiver, phi: &ClusterAutomorphism) -> Result<Self, FixError> {
        let (word, perm) = phi.resolve(q)?;
        let mut cur = q.clone();
        let mut steps = Vec::with_capacity(word.len());
        for k in word {
            let (mut pos, mut neg) = (vec![], vec![]);
            for i in 0..cur.n() {
                match cur.b(i, k) {
                    b if b > 0 => pos.push((i, b as u32)),
                    b if b < 0 => neg.push((i, (-b) as u32)),
                    _ => {}
                }
            }
            steps.push(Step { k, pos, neg });
            cur = cur.mutate(k).map_err(SeedError::from)?;
        }
        Ok(PositiveChartMap { n: q.n(), kind: Kind::Mutations { quiver: q.clone(), phi: phi.clone(), steps, perm } })
    }

    /// Coordinate `i` of the image is `polys[i]`.
    pub fn from_laurent(polys: Vec<LaurentPoly>) -> Result<Self, FixError> {
        let n = polys.len();
        if let Some(p) = polys.iter().find(|p| p.nvars() != n) {
            return Err(FixError::Dimension { expected: n, got: p.nvars() });
        }
        let compiled = polys
            .iter()
            .map(|p| p.terms().iter().map(|(e, c)| (c.to_f64().unwrap_or(f64::NAN), e.clone())).collect())
            .collect();
        Ok(PositiveChartMap { n, kind: Kind::Laurent { polys, compiled } })
    }

    /// One line per coordinate, `a<i> = <laurent polynomial>`, in order.
    pub fn parse_system(text: &str) -> Result<Self, FixError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let n = lines.len();
        let mut polys = Vec::with_capacity(n);
        for (idx, (ln, line)) in lines.into_iter().enumerate() {
            let err = |msg: String| FixError::Parse { line: ln, msg };
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("expected `a<i> = ...`".into()))?;
            if lhs.trim() != format!("a{}", idx + 1) {
                return Err(err(format!("expected left side a{}", idx + 1)));
            }
            polys.push(LaurentPoly::parse(rhs, n).map_err(|e| err(e.to_string()))?);
        }
        Self::from_laurent(polys)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn inverse(&self) -> Result<Self, FixError> {
        match &self.kind {
            Kind::Mutations { quiver, phi, .. } => Self::from_automorphism(quiver, &phi.inverse()),
            Kind::Laurent { .. } => Err(FixError::NoInverse),
        }
    }

    fn check(&self, len: usize) -> Result<(), FixError> {
        if len != self.n {
            return Err(FixError::Dimension { expected: self.n, got: len });
        }
        Ok(())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Result<Vec<f64>, FixError> {
        self.check(x.len())?;
        if let Some(i) = x.iter().position(|v| !(*v > 0.0)) {
            return Err(FixError::NonPositive(i));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> Vec<f64> {
        match &self.kind {
            Kind::Mutations { steps, perm, .. } => {
                let mut v = x.to_vec();
                for s in steps {
                    let p: f64 = s.pos.iter().map(|&(i, b)| v[i].powi(b as i32)).product();
                    let m: f64 = s.neg.iter().map(|&(i, b)| v[i].powi(b as i32)).product();
                    v[s.k] = (p + m) / v[s.k];
                }
                let mut out = v.clone();
                for (i, &t) in perm.iter().enumerate() {
                    out[t] = v[i];
                }
                out
            }
            Kind::Laurent { compiled, .. } => compiled
                .iter()
                .map(|terms| terms.iter().map(|(c, e)| c * x.iter().zip(e).map(|(b, k)| b.powi(*k)).product::<f64>()).sum())
                .collect(),
        }
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> Result<Vec<BigRational>, FixError> {
        self.check(x.len())?;
        if let Some(i) = x.iter().position(|v| !v.is_positive()) {
            return Err(FixError::NonPositive(i));
        }
        match &self.kind {
            Kind::Mutations { steps, perm, .. } => {
                let mut v = x.to_vec();
                for s in steps {
                    let p = s.pos.iter().fold(BigRational::one(), |a, &(i, b)| a * v[i].pow(b as i32));
                    let m = s.neg.iter().fold(BigRational::one(), |a, &(i, b)| a * v[i].pow(b as i32));
                    v[s.k] = (p + m) / &v[s.k];
                }
                let mut out = v.clone();
                for (i, &t) in perm.iter().enumerate() {
                    out[t] = v[i].clone();
                }
                Ok(out)
            }
            Kind::Laurent { polys, .. } => polys.iter().map(|p| Ok(p.eval_rational(x)?)).collect(),
        }
    }

    /// `max_i |F(x)_i - x_i|`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.eval_unchecked(x).iter().zip(x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// The residual computed exactly at the rational value of each float.
    pub fn exact_residual(&self, x: &[f64]) -> Result<f64, FixError> {
        let q: Vec<BigRational> = x.iter().map(|v| BigRational::from_float(*v).unwrap_or_else(BigRational::zero)).collect();
        let f = self.eval_rational(&q)?;
        Ok(f.iter().zip(&q).map(|(a, b)| (a - b).abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max))
    }

    /// `F(x) - x` at `x = exp(y)`, either in log coordinates or plainly.
    fn residual_at(&self, y: &[f64], log: bool) -> Vec<f64> {
        let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
        let f = self.eval_unchecked(&x);
        if log {
            f.iter().zip(y).map(|(f, v)| f.ln() - v).collect()
        } else {
            f.iter().zip(&x).map(|(f, v)| f - v).collect()
        }
    }
}

/// The `Sigma_1` loop on `Lambda(3,6)` as the ten printed equations
/// `a_i = F_i(a)`, each a Laurent polynomial.
pub fn t36_sigma1() -> PositiveChartMap {
    let n = 10;
    let a = |i: usize| LaurentPoly::var(n, i - 1);
    let inv = |exps: &[usize]| {
        let mut e = vec![0; n];
        for &i in exps {
            e[i - 1] -= 1;
        }
        LaurentPoly::monomial(e, 1)
    };
    // P = a1 a4 + (a2 + a3) a5
    let p = &(&a(1) * &a(4)) + &(&(&a(2) + &a(3)) * &a(5));
    let f1 = &(&(&a(2) + &a(3)) + &(&a(1) * &a(4))) * &inv(&[2]);
    let f3 = &(&a(2) + &a(3)) * &inv(&[1]);
    let f4 = &(&(&a(3) * &a(6)) + &(&a(4) * &a(7))) * &inv(&[5]);
    let a136 = &(&a(1) * &a(3)) * &a(6);
    let f5 = &(&a136 + &(&p * &a(7))) * &inv(&[1, 3, 5]);
    let a135 = &(&a(1) * &a(3)) * &a(5);
    let t1 = &(&a135 * &a(6)) * &a(8);
    let t2 = &(&(&a136 * &a(6)) + &(&(&p * &a(6)) * &a(7))) * &a(9);
    let t3 = &(&(&a136 * &a(7)) + &(&(&p * &a(7)) * &a(7))) * &a(10);
    let f7 = &(&(&t1 + &t2) + &t3) * &inv(&[1, 3, 5, 7, 8]);
    let f9 = &(&(&a135 * &a(8)) + &(&(&a136 + &(&p * &a(7))) * &a(9))) * &inv(&[1, 3, 5, 7]);
    PositiveChartMap::from_laurent(vec![f1, a(4), f3, f4, f5, a(6), f7, a(10), f9, a(9)]).expect("ten variables")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Found { point: Vec<f64>, residual: f64 },
    /// Heuristic only: the least residual seen over all starts stayed above
    /// the refutation tolerance. Not a certificate.
    RefutedHeuristically { min_residual: f64, argmin: Vec<f64>, starts: usize, lo: f64, hi: f64 },
    Inconclusive { min_residual: f64, argmin: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixpointReport {
    pub outcome: Outcome,
    pub iterations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub starts: usize,
    pub iters: usize,
    pub tol_found: f64,
    pub tol_refute: f64,
    pub lo: f64,
    pub hi: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { starts: 64, iters: 100, tol_found: TOL_FOUND, tol_refute: TOL_REFUTE, lo: 1e-3, hi: 1e3, seed: 0 }
    }
}

/// Halton points in `[0,1)^n` with a seeded random shift.
fn starts(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    const PRIMES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
    (1..=count)
        .map(|idx| {
            (0..n)
                .map(|d| {
                    let u = if d < PRIMES.len() {
                        let b = PRIMES[d] as f64;
                        let (mut f, mut r, mut i) = (1.0, 0.0, idx as f64);
                        while i > 0.0 {
                            f /= b;
                            r += f * (i % b);
                            i = (i / b).floor();
                        }
                        r
                    } else {
                        rng.gen()
                    };
                    (u + shift[d]).fract()
                })
                .collect()
        })
        .collect()
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        x[c] = (b[c] - (c + 1..n).map(|k| a[c][k] * x[k]).sum::<f64>()) / a[c][c];
    }
    Some(x)
}

/// Levenberg-Marquardt on the residual (logarithmic or plain), with the
/// iterate clamped to `[lo, hi]` in log coordinates. Returns the final
/// point and the number of iterations.
fn local_solve(m: &PositiveChartMap, mut y: Vec<f64>, lo: f64, hi: f64, iters: usize, tol: f64, log: bool) -> (Vec<f64>, usize) {
    let n = y.len();
    let clamp = |v: f64| v.clamp(lo, hi);
    let cost = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let mut r = m.residual_at(&y, log);
    let mut c = cost(&r);
    let mut lambda = 1e-3;
    for it in 0..iters {
        if !c.is_finite() {
            return (y, it);
        }
        if r.iter().all(|v| v.abs() < tol * 1e-2) {
            return (y, it);
        }
        let h = 1e-7;
        let mut jac = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut yp = y.clone();
            yp[j] += h;
            let rp = m.residual_at(&yp, log);
            for i in 0..n {
                jac[i][j] = (rp[i] - r[i]) / h;
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut a = vec![vec![0.0; n]; n];
            let mut g = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    a[i][j] = (0..n).map(|k| jac[k][i] * jac[k][j]).sum();
                }
                a[i][i] += lambda * (1.0 + a[i][i]);
                g[i] = -(0..n).map(|k| jac[k][i] * r[k]).sum::<f64>();
            }
            let Some(d) = solve(a, g) else {
                lambda *= 10.0;
                continue;
            };
            let yn: Vec<f64> = y.iter().zip(&d).map(|(a, b)| clamp(a + b)).collect();
            let rn = m.residual_at(&yn, log);
            let cn = cost(&rn);
            if cn.is_finite() && cn < c {
                y = yn;
                r = rn;
                c = cn;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            return (y, it + 1);
        }
    }
    (y, iters)
}

/// Damped fixed-point iteration in log coordinates, averaged over the
/// orbit, used as a starting point for the local solve.
fn orbit_barycenter(m: &PositiveChartMap, y0: &[f64], len: usize) -> Vec<f64> {
    let mut y = y0.to_vec();
    let mut sum = vec![0.0; y.len()];
    for _ in 0..len {
        for (s, v) in sum.iter_mut().zip(&y) {
            *s += v;
        }
        let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
        y = m.eval_unchecked(&x).iter().map(|v| v.ln()).collect();
        if y.iter().any(|v| !v.is_finite()) {
            return y0.to_vec();
        }
    }
    sum.iter().map(|s| s / len as f64).collect()
}

fn run(m: &PositiveChartMap, opts: &SearchOptions, refuting: bool) -> Result<(Option<(Vec<f64>, f64)>, f64, Vec<f64>, usize), FixError> {
    if !(opts.lo > 0.0 && opts.lo < opts.hi) {
        return Err(FixError::BadBox);
    }
    let (lo, hi) = (opts.lo.ln(), opts.hi.ln());
    let mut best = (f64::INFINITY, vec![]);
    let mut total = 0;
    for u in starts(m.n, opts.starts, opts.seed) {
        let y0: Vec<f64> = u.iter().map(|t| lo + t * (hi - lo)).collect();
        let mut candidates = vec![y0.clone()];
        if !refuting {
            candidates.push(orbit_barycenter(m, &y0, 60).into_iter().map(|v| v.clamp(lo, hi)).collect());
        }
        for y in candidates {
            // refutation minimizes the reported residual itself
            let (y, it) = local_solve(m, y, lo, hi, opts.iters, opts.tol_found, !refuting);
            total += it;
            let x: Vec<f64> = y.iter().map(|v| v.exp()).collect();
            let res = m.residual(&x);
            if res.is_finite() && res < best.0 {
                best = (res, x.clone());
            }
            if res <= opts.tol_found {
                let exact = m.exact_residual(&x)?;
                if exact <= opts.tol_found {
                    return Ok((Some((x, exact)), exact, best.1, total));
                }
            }
        }
    }
    Ok((None, best.0, best.1, total))
}

/// Multistart search for `F(x) = x` in the box.
pub fn find_fixed_point(m: &PositiveChartMap, opts: &SearchOptions) -> Result<FixpointReport, FixError> {
    let (found, min_residual, argmin, iterations) = run(m, opts, false)?;
    let outcome = match found {
        Some((point, residual)) => Outcome::Found { point, residual },
        None => Outcome::Inconclusive { min_residual, argmin },
    };
    Ok(FixpointReport { outcome, iterations, seed: opts.seed })
}

/// Minimizes the residual over seeded starts in the box. A minimum above
/// `tol_refute` is reported as a heuristic refutation.
pub fn refute_fixed_point(m: &PositiveChartMap, opts: &SearchOptions) -> Result<FixpointReport, FixError> {
    let (found, min_residual, argmin, iterations) = run(m, opts, true)?;
    let outcome = match found {
        Some((point, residual)) => Outcome::Found { point, residual },
        None if min_residual >= opts.tol_refute => {
            Outcome::RefutedHeuristically { min_residual, argmin, starts: opts.starts, lo: opts.lo, hi: opts.hi }
        }
        None => Outcome::Inconclusive { min_residual, argmin },
    };
    Ok(FixpointReport { outcome, iterations, seed: opts.seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families;

    fn a2_map() -> PositiveChartMap {
        let q = families::a(2);
        let phi = ClusterAutomorphism::new([q.label(0)], vec![vec![q.label(0), q.label(1)]]).unwrap();
        PositiveChartMap::from_automorphism(&q, &phi).unwrap()
    }

    #[test]
    fn a2_formula() {
        let m = a2_map();
        for (x1, x2) in [(1.0, 1.0), (2.0, 0.5), (0.3, 7.0)] {
            let f = m.eval_f64(&[x1, x2]).unwrap();
            assert!((f[0] - x2).abs() < 1e-12 && (f[1] - (1.0 + x2) / x1).abs() < 1e-12, "{f:?}");
        }
        assert!(m.eval_f64(&[1.0, 0.0]).is_err());
        assert!(m.eval_f64(&[1.0]).is_err());
    }

    #[test]
    fn exact_inverse() {
        let m = a2_map();
        let inv = m.inverse().unwrap();
        let x = vec![BigRational::new(3.into(), 7.into()), BigRational::new(5.into(), 2.into())];
        assert_eq!(inv.eval_rational(&m.eval_rational(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn golden_ratio() {
        let r = find_fixed_point(&a2_map(), &SearchOptions::default()).unwrap();
        let Outcome::Found { point, residual } = r.outcome else { panic!("{r:?}") };
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(residual <= TOL_FOUND);
        assert!(point.iter().all(|x| (x - phi).abs() < 1e-10), "{point:?}");
        let r = refute_fixed_point(&a2_map(), &SearchOptions::default()).unwrap();
        assert!(matches!(r.outcome, Outcome::Found { .. }));
    }

    #[test]
    fn identity_map() {
        let q = families::a(3);
        let m = PositiveChartMap::from_automorphism(&q, &ClusterAutomorphism::identity()).unwrap();
        assert_eq!(m.eval_f64(&[0.5, 2.0, 3.0]).unwrap(), vec![0.5, 2.0, 3.0]);
        let opts = SearchOptions { starts: 3, ..Default::default() };
        assert!(matches!(find_fixed_point(&m, &opts).unwrap().outcome, Outcome::Found { .. }));
        assert!(matches!(refute_fixed_point(&m, &opts).unwrap().outcome, Outcome::Found { .. }));
    }

    #[test]
    fn printed_components() {
        let m = t36_sigma1();
        let x: Vec<f64> = (1..=10).map(|i| 1.0 + i as f64 / 7.0).collect();
        let f = m.eval_f64(&x).unwrap();
        assert_eq!(f[1], x[3]);
        assert_eq!(f[5], x[5]);
        assert_eq!(f[7], x[9]);
        assert_eq!(f[9], x[8]);
        assert!((f[2] - (x[1] + x[2]) / x[0]).abs() < 1e-12);
    }

    #[test]
    fn system_text() {
        let m = PositiveChartMap::parse_system("a1 = a2\na2 = a1^-1 + a1^-1*a2\n").unwrap();
        let f = m.eval_f64(&[2.0, 3.0]).unwrap();
        assert_eq!(f, vec![3.0, 2.0]);
        assert!(PositiveChartMap::parse_system("a2 = a1\n").is_err());
        assert!(PositiveChartMap::parse_system("a1 = a3\n").is_err());
    }
}
