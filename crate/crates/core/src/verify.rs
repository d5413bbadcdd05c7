//! Numeric root oracle (Aberth-Ehrlich iteration), multiset comparison,
//! residual and Vieta checks, decomposition round trips.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{NAryForm, PowerSumDecomposition, UnivariateEquation};
use crate::numeric::{epsilon, float_mul, ComplexApprox, DEFAULT_PRECISION};
use crate::radical::RootSet;
use crate::scalar::{rational_to_f64, Rational};

/// Relative distance below which oracle roots are merged into one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Iteration budget per precision level.
pub const MAX_ITERATIONS: usize = 500;
/// Highest precision the oracle escalates to.
pub const MAX_PRECISION: usize = 2048;
/// Distinct clusters closer than this trigger a precision increase.
const SUSPICIOUS_GAP: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct OracleRoot {
    pub value: ComplexApprox,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct OracleRootSet {
    pub roots: Vec<OracleRoot>,
    pub iterations: usize,
    pub converged: bool,
    pub precision: usize,
}

impl OracleRootSet {
    /// Every root repeated by its multiplicity.
    pub fn flat(&self) -> Vec<ComplexApprox> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value.clone(), r.multiplicity))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Largest multiplicity among roots within `tol` (relative) of `x`.
    pub fn multiplicity_near(&self, x: &ComplexApprox, tol: f64) -> usize {
        self.roots
            .iter()
            .filter(|r| rel_dist(&r.value, x) <= tol)
            .map(|r| r.multiplicity)
            .sum()
    }
}

/// `|a - b| / max(1, |b|)`.
pub fn rel_dist(a: &ComplexApprox, b: &ComplexApprox) -> f64 {
    a.dist(b) / b.abs_f64().max(1.0)
}

struct Horner {
    coeffs: Vec<ComplexApprox>,
    abs_coeffs: Vec<ComplexApprox>,
}

impl Horner {
    fn new(plain: &[Rational], prec: usize) -> Self {
        Horner {
            coeffs: plain
                .iter()
                .map(|b| ComplexApprox::from_rational(b, prec))
                .collect(),
            abs_coeffs: plain
                .iter()
                .map(|b| ComplexApprox::from_rational(&b.abs(), prec))
                .collect(),
        }
    }

    /// `p(z)`, `p'(z)`.
    fn eval(&self, z: &ComplexApprox) -> (ComplexApprox, ComplexApprox) {
        let prec = z.precision();
        let mut p = ComplexApprox::zero_with(prec);
        let mut dp = ComplexApprox::zero_with(prec);
        for c in &self.coeffs {
            dp = dp * z.clone() + p.clone();
            p = p * z.clone() + c.clone();
        }
        (p, dp)
    }

    /// `sum |b_i| |z|^(d-i)`.
    fn abs_eval(&self, z: &ComplexApprox) -> astro_float::BigFloat {
        let prec = z.precision();
        let r = ComplexApprox::new(z.abs(), astro_float::BigFloat::from_u64(0, prec), prec);
        let mut acc = ComplexApprox::zero_with(prec);
        for c in &self.abs_coeffs {
            acc = acc * r.clone() + c.clone();
        }
        acc.re().clone()
    }
}

/// One Aberth run at a fixed precision from the given starting points.
fn aberth(
    h: &Horner,
    start: Vec<ComplexApprox>,
    prec: usize,
) -> (Vec<ComplexApprox>, usize, bool) {
    let d = start.len();
    let mut z = start;
    let mut done = vec![false; d];
    let eps = epsilon(prec.saturating_sub(4), prec);
    let tol_factor = float_mul(&eps, &astro_float::BigFloat::from_u64(16 * d as u64, prec), prec);
    let one = ComplexApprox::one_with(prec);
    for it in 0..MAX_ITERATIONS {
        if done.iter().all(|&b| b) {
            return (z, it, true);
        }
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp) = h.eval(&z[k]);
            let bound = float_mul(&tol_factor, &h.abs_eval(&z[k]), prec);
            if p.abs_le(&bound) {
                done[k] = true;
                continue;
            }
            if dp.is_exact_zero() {
                // nudge off a critical point
                z[k] = z[k].clone() * ComplexApprox::from_f64(1.0 + 1e-3, 1e-3, prec);
                continue;
            }
            let w = p / dp;
            let mut s = ComplexApprox::zero_with(prec);
            for j in 0..d {
                if j != k {
                    let diff = z[k].clone() - z[j].clone();
                    if !diff.is_exact_zero() {
                        s = s + diff.recip();
                    }
                }
            }
            let denom = one.clone() - w.clone() * s;
            let step = if denom.is_exact_zero() { w } else { w / denom };
            let small = float_mul(&eps, &z[k].abs(), prec);
            if step.abs_le(&small) {
                done[k] = true;
            }
            z[k] = z[k].clone() - step;
        }
    }
    let converged = done.iter().all(|&b| b);
    (z, MAX_ITERATIONS, converged)
}

/// Fixed irrational angular offset of the starting circle.
fn default_offset() -> f64 {
    0.4 + std::f64::consts::SQRT_2 / 10.0
}

/// Offset drawn from `seed`, for callers that ask for a different start.
fn seeded_offset(seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    rand_chacha::ChaCha8Rng::seed_from_u64(seed).gen_range(0.0..std::f64::consts::TAU)
}

fn initial_guesses(plain: &[Rational], prec: usize, offset: f64) -> Vec<ComplexApprox> {
    let d = plain.len() - 1;
    let b0 = rational_to_f64(&plain[0]).abs();
    let radius = 1.0
        + plain[1..]
            .iter()
            .map(|b| rational_to_f64(b).abs() / b0)
            .fold(0.0, f64::max);
    (0..d)
        .map(|k| {
            let t = offset + std::f64::consts::TAU * k as f64 / d as f64;
            ComplexApprox::from_f64(radius * t.cos(), radius * t.sin(), prec)
        })
        .collect()
}

fn cluster(z: &[ComplexApprox]) -> Vec<OracleRoot> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = z[i].abs_f64().max(z[j].abs_f64()).max(1.0);
            if z[i].dist(&z[j]) <= CLUSTER_TOL * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| {
            let prec = z[g[0]].precision();
            let sum = g
                .iter()
                .fold(ComplexApprox::zero_with(prec), |acc, &i| acc + z[i].clone());
            let value = sum / ComplexApprox::from_f64(g.len() as f64, 0.0, prec);
            OracleRoot {
                value,
                multiplicity: g.len(),
            }
        })
        .collect()
}

/// A root of multiplicity `m` spreads to about `eps^(1/m)` at working
/// precision, so any pair closer than `eps^(1/d)` (or `SUSPICIOUS_GAP`) may be
/// an unresolved cluster.
fn suspicious(roots: &[OracleRoot], prec: usize, d: usize) -> bool {
    let spread = 64.0 * 2f64.powf(-(prec as f64) / d.max(1) as f64);
    let gap = spread.max(SUSPICIOUS_GAP);
    (0..roots.len()).any(|i| {
        (i + 1..roots.len()).any(|j| {
            let scale = roots[i].value.abs_f64().max(roots[j].value.abs_f64()).max(1.0);
            roots[i].value.dist(&roots[j].value) < gap * scale
        })
    })
}

/// Descending coefficients of the `k`-th derivative.
fn derivative_plain(plain: &[Rational], k: usize) -> Vec<Rational> {
    let d = plain.len() - 1;
    (0..=d - k)
        .map(|i| {
            let e = d - i;
            let falling: i64 = (e - k + 1..=e).map(|t| t as i64).product();
            &plain[i] * Rational::from_integer(falling.into())
        })
        .collect()
}

/// Newton on `p` for simple roots and on `p^(m-1)` for an `m`-fold cluster,
/// where the root is simple.
fn polish(plain: &[Rational], prec: usize, roots: &mut [OracleRoot]) {
    for r in roots.iter_mut() {
        let h = Horner::new(&derivative_plain(plain, r.multiplicity - 1), prec);
        for _ in 0..8 {
            let (p, dp) = h.eval(&r.value);
            if dp.is_exact_zero() || p.is_exact_zero() {
                break;
            }
            let step = p / dp;
            let next = r.value.clone() - step.clone();
            if next.dist(&r.value) > CLUSTER_TOL * r.value.abs_f64().max(1.0) {
                break;
            }
            r.value = next;
            if step.abs_f64() <= f64::EPSILON * 1e-3 * r.value.abs_f64() {
                break;
            }
        }
    }
}

/// Roots of `eq` with multiplicities, starting at `prec` bits and doubling
/// while nearby clusters suggest an unresolved multiple root.
pub fn numeric_roots(eq: &UnivariateEquation, prec: usize) -> Result<OracleRootSet> {
    numeric_roots_seeded(eq, prec, None)
}

/// [`numeric_roots`] with the starting circle rotated by an angle drawn
/// from `seed`; `None` keeps the fixed default.
pub fn numeric_roots_seeded(eq: &UnivariateEquation, prec: usize, seed: Option<u64>) -> Result<OracleRootSet> {
    let offset = seed.map_or_else(default_offset, seeded_offset);
    let (zeros, rest) = eq.strip_zero_roots();
    let mut out: Vec<OracleRoot> = Vec::new();
    let mut iterations = 0;
    let mut used_prec = prec;
    if let Some(rest) = rest.filter(|r| r.degree() > 0) {
        let plain = rest.plain();
        let mut p = prec.max(32);
        let mut start = initial_guesses(plain, p, offset);
        loop {
            let h = Horner::new(plain, p);
            let (z, its, ok) = aberth(&h, start, p);
            iterations += its;
            let roots = cluster(&z);
            let escalate = (!ok || suspicious(&roots, p, plain.len() - 1)) && p < MAX_PRECISION;
            if !escalate {
                if !ok {
                    return Err(Error::NonConvergence { iterations });
                }
                let mut roots = roots;
                polish(plain, p, &mut roots);
                out.extend(roots);
                used_prec = p;
                break;
            }
            p *= 2;
            start = z.iter().map(|v| v.with_precision(p)).collect();
        }
    }
    if zeros > 0 {
        out.push(OracleRoot {
            value: ComplexApprox::zero_with(used_prec),
            multiplicity: zeros,
        });
    }
    Ok(OracleRootSet {
        roots: out,
        iterations,
        converged: true,
        precision: used_prec,
    })
}

pub fn numeric_roots_default(eq: &UnivariateEquation) -> Result<OracleRootSet> {
    numeric_roots(eq, DEFAULT_PRECISION)
}

/// Outcome of matching two root multisets.
#[derive(Clone, Debug, PartialEq)]
pub struct RootComparison {
    pub max_distance: f64,
    /// Index into the first multiset of the worst-matched element.
    pub worst_index: Option<usize>,
    pub passed: bool,
    /// Set when the multisets cannot be matched at all.
    pub structural: Option<String>,
}

/// Greedy nearest-neighbour matching refined by pairwise swaps. Distances
/// are relative to `max(1, |b|)`.
pub fn compare_multisets(a: &[ComplexApprox], b: &[ComplexApprox], tol: f64) -> RootComparison {
    if a.len() != b.len() {
        return RootComparison {
            max_distance: f64::INFINITY,
            worst_index: None,
            passed: false,
            structural: Some(format!("cardinality mismatch: {} vs {}", a.len(), b.len())),
        };
    }
    let n = a.len();
    let dist: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| rel_dist(x, y)).collect())
        .collect();
    let mut used = vec![false; n];
    let mut assign = vec![0; n];
    for i in 0..n {
        let j = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&j1, &j2| dist[i][j1].total_cmp(&dist[i][j2]))
            .expect("free partner");
        used[j] = true;
        assign[i] = j;
    }
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let cur = dist[i][assign[i]].max(dist[k][assign[k]]);
                let swapped = dist[i][assign[k]].max(dist[k][assign[i]]);
                if swapped < cur {
                    assign.swap(i, k);
                    improved = true;
                }
            }
        }
    }
    let (worst_index, max_distance) = (0..n)
        .map(|i| (i, dist[i][assign[i]]))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .map_or((None, 0.0), |(i, d)| (Some(i), d));
    RootComparison {
        max_distance,
        worst_index,
        passed: max_distance <= tol,
        structural: None,
    }
}

pub fn compare_root_sets(a: &RootSet, b: &OracleRootSet, tol: f64) -> RootComparison {
    compare_multisets(&a.flat_values(), &b.flat(), tol)
}

/// `|f(x)| / (max|b_i| * max(1, |x|)^d)`.
pub fn relative_residual(eq: &UnivariateEquation, x: &ComplexApprox) -> f64 {
    let prec = x.precision();
    let fx = eq.evaluate(x);
    let maxb = eq
        .plain()
        .iter()
        .map(|b| b.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let r = x.abs_f64().max(1.0);
    let scale = ComplexApprox::from_rational(&maxb, prec)
        * ComplexApprox::from_f64(r, 0.0, prec).powu(eq.degree() as u32);
    (fx / scale).abs_f64()
}

/// Largest relative residual over a root set.
pub fn max_residual(eq: &UnivariateEquation, roots: &RootSet) -> f64 {
    roots
        .roots
        .iter()
        .map(|r| relative_residual(eq, &r.value))
        .fold(0.0, f64::max)
}

/// Relative errors of the sum and product of the roots against Vieta.
pub fn vieta_errors(eq: &UnivariateEquation, roots: &[ComplexApprox]) -> (f64, f64) {
    let prec = roots.first().map_or(DEFAULT_PRECISION, ComplexApprox::precision);
    let b = eq.plain();
    let d = eq.degree();
    let sum_expected = ComplexApprox::from_rational(&(-&b[1] / &b[0]), prec);
    let sign = if d.is_multiple_of(2) { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
    let prod_expected = ComplexApprox::from_rational(&(sign * &b[d] / &b[0]), prec);
    let sum = roots
        .iter()
        .fold(ComplexApprox::zero_with(prec), |acc, r| acc + r.clone());
    let prod = roots
        .iter()
        .fold(ComplexApprox::one_with(prec), |acc, r| acc * r.clone());
    let sum_scale = roots
        .iter()
        .map(ComplexApprox::abs_f64)
        .sum::<f64>()
        .max(sum_expected.abs_f64())
        .max(1.0);
    let prod_scale = roots
        .iter()
        .map(ComplexApprox::abs_f64)
        .product::<f64>()
        .max(prod_expected.abs_f64())
        .max(1.0);
    (
        sum.dist(&sum_expected) / sum_scale,
        prod.dist(&prod_expected) / prod_scale,
    )
}

/// Monic polynomial with the given roots, coefficients leading first.
pub fn expand_from_roots(roots: &[ComplexApprox]) -> Vec<ComplexApprox> {
    let prec = roots.first().map_or(DEFAULT_PRECISION, ComplexApprox::precision);
    let mut c = vec![ComplexApprox::one_with(prec)];
    for r in roots {
        let mut next = c.clone();
        next.push(ComplexApprox::zero_with(prec));
        for i in 0..c.len() {
            next[i + 1] = next[i + 1].clone() - r.clone() * c[i].clone();
        }
        c = next;
    }
    c
}

/// Exact round trip of a decomposition.
pub fn check_decomposition(f: &NAryForm<Rational>, dec: &PowerSumDecomposition<Rational>) -> bool {
    dec.degree == f.degree() && dec.expand(f.n()).is_ok_and(|e| &e == f)
}

/// Coefficientwise comparison within `tol` relative to the largest
/// coefficient of `f`.
pub fn check_decomposition_numeric(
    f: &NAryForm<Rational>,
    dec: &PowerSumDecomposition<ComplexApprox>,
    tol: f64,
) -> bool {
    if dec.degree != f.degree() {
        return false;
    }
    let Ok(e) = dec.expand(f.n()) else {
        return false;
    };
    let scale = f
        .terms()
        .map(|(_, c)| rational_to_f64(c).abs())
        .fold(1.0, f64::max);
    let monos = NAryForm::<Rational>::monomials(f.n(), f.degree());
    monos.iter().all(|m| {
        let want = f.coeff(m);
        let got = e.terms().find(|(k, _)| *k == m).map(|(_, v)| v.clone());
        let prec = got.as_ref().map_or(DEFAULT_PRECISION, ComplexApprox::precision);
        let got = got.unwrap_or_else(|| ComplexApprox::zero_with(prec));
        got.dist(&ComplexApprox::from_rational(&want, prec)) <= tol * scale
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexApprox {
        ComplexApprox::from_f64(re, im, 64)
    }

    #[test]
    fn planted_integer_roots() {
        let eq = UnivariateEquation::from_i64(&[1, -6, 11, -6]).unwrap();
        let o = numeric_roots_default(&eq).unwrap();
        let cmp = compare_multisets(&o.flat(), &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1e-10);
        assert!(cmp.passed, "{cmp:?}");
    }

    #[test]
    fn zero_root_multiplicity() {
        let eq = UnivariateEquation::from_i64(&[1, 0, 0, 0]).unwrap();
        let o = numeric_roots_default(&eq).unwrap();
        assert_eq!(o.roots.len(), 1);
        assert_eq!(o.roots[0].multiplicity, 3);
        assert!(o.roots[0].value.is_exact_zero());
    }

    #[test]
    fn quintic_contains_minus_two() {
        let eq = UnivariateEquation::from_i64(&[31, 235, 710, 1070, 805, 242]).unwrap();
        let o = numeric_roots_default(&eq).unwrap();
        assert_eq!(o.count(), 5);
        assert_eq!(o.multiplicity_near(&c(-2.0, 0.0), 1e-10), 1);
    }

    #[test]
    fn sixfold_cluster_is_resolved() {
        use crate::scalar::{rat, ratio};
        let eq = UnivariateEquation::from_plain_coeffs(vec![
            rat(1),
            ratio(-8, 3),
            ratio(11, 4),
            ratio(-5, 4),
            ratio(5, 48),
            ratio(1, 8),
            ratio(-3, 64),
            ratio(1, 192),
        ])
        .unwrap();
        let o = numeric_roots_default(&eq).unwrap();
        assert_eq!(o.multiplicity_near(&c(0.5, 0.0), 1e-6), 6);
        assert_eq!(o.multiplicity_near(&c(-1.0 / 3.0, 0.0), 1e-6), 1);
    }

    #[test]
    fn comparison_reports() {
        let a = vec![c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 1.0)];
        let b = vec![c(-1.0, 1.0), c(1.0, 0.0), c(2.0, 0.0)];
        let same = compare_multisets(&a, &b, 1e-12);
        assert!(same.passed);
        assert_eq!(same.max_distance, 0.0);
        let mut bad = b.clone();
        bad[2] = c(2.1, 0.0);
        let r = compare_multisets(&a, &bad, 1e-9);
        assert!(!r.passed);
        assert_eq!(r.worst_index, Some(1));
        let s = compare_multisets(&a, &b[..2], 1e-9);
        assert!(!s.passed && s.structural.is_some());
    }

    #[test]
    fn deterministic() {
        let eq = UnivariateEquation::from_i64(&[3, -2, 7, 1, -5]).unwrap();
        let a = numeric_roots_default(&eq).unwrap().flat();
        let b = numeric_roots_default(&eq).unwrap().flat();
        assert_eq!(compare_multisets(&a, &b, 0.0).max_distance, 0.0);
        let s1 = numeric_roots_seeded(&eq, 64, Some(7)).unwrap().flat();
        let s2 = numeric_roots_seeded(&eq, 64, Some(7)).unwrap().flat();
        assert_eq!(compare_multisets(&s1, &s2, 0.0).max_distance, 0.0);
        assert!(compare_multisets(&a, &s1, 1e-12).passed);
    }

    #[test]
    fn self_consistency() {
        let eq = UnivariateEquation::from_i64(&[2, -3, 0, 5, 9, -1, 4]).unwrap();
        let o = numeric_roots_default(&eq).unwrap();
        let monic = eq.monic();
        let back = expand_from_roots(&o.flat());
        for (x, b) in back.iter().zip(monic.plain()) {
            let want = ComplexApprox::from_rational(b, 64);
            assert!(x.dist(&want) <= 1e-7 * want.abs_f64().max(1.0));
        }
    }
}
