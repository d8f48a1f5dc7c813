//! Simultaneous (Aberth–Ehrlich) root finding with residual certificates.
//!
//! The solver works on the origin-deflated polynomial, seeds its iterates
//! from the Newton polygon of `ln|c_k|`, polishes simple roots with Newton
//! steps and then groups iterates into multiple roots. For real input the
//! returned zero set is exactly closed under conjugation.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::ComplexPolynomial;

const EPS: f64 = f64::EPSILON;
/// Angular offset of the seed layout; keeps seeds off the real axis.
const SEED_OFFSET: f64 = 0.7;
/// Iterates closer than this (relative) are candidates for a multiple root.
const CANDIDATE_RADIUS: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("constant polynomial has no zeros")]
    DegreeZero,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("no convergence after {iterations} iterations: worst zero {worst} has relative residual {residual:e}")]
    NonConvergence { worst: Complex64, residual: f64, iterations: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub max_iterations: usize,
    /// Relative Aberth step below which an iterate counts as converged.
    pub convergence_tol: f64,
    /// Largest accepted relative residual `|p(z)| / (scale · max(1,|z|)^d)`.
    pub residual_accept: f64,
    pub cluster_tol: f64,
    pub real_snap_tol: f64,
    pub seed_radius_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iterations: 200,
            convergence_tol: 1e-13,
            residual_accept: 1e-9,
            cluster_tol: 1e-6,
            real_snap_tol: 1e-9,
            seed_radius_factor: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), RootError> {
        if self.max_iterations < 1 {
            return Err(RootError::InvalidConfig("max_iterations must be at least 1"));
        }
        let positive = [
            self.convergence_tol,
            self.residual_accept,
            self.cluster_tol,
            self.real_snap_tol,
            self.seed_radius_factor,
        ];
        if positive.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(RootError::InvalidConfig("tolerances and seed radius factor must be positive"));
        }
        Ok(())
    }
}

/// One distinct zero with its multiplicity and relative residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub location: Complex64,
    pub multiplicity: usize,
    pub residual: f64,
}

impl Zero {
    pub fn is_real(&self) -> bool {
        self.location.im == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    zeros: Vec<Zero>,
    source_degree: usize,
}

impl ZeroSet {
    /// Builds a zero set from explicit entries; multiplicities must add up to
    /// `source_degree`.
    pub fn new(mut zeros: Vec<Zero>, source_degree: usize) -> Option<Self> {
        let total: usize = zeros.iter().map(|z| z.multiplicity).sum();
        if total != source_degree || zeros.iter().any(|z| z.multiplicity == 0) {
            return None;
        }
        sort_zeros(&mut zeros);
        Some(ZeroSet { zeros, source_degree })
    }

    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Every zero repeated according to its multiplicity.
    pub fn locations(&self) -> Vec<Complex64> {
        self.zeros
            .iter()
            .flat_map(|z| std::iter::repeat_n(z.location, z.multiplicity))
            .collect()
    }

    pub fn all_real(&self) -> bool {
        self.zeros.iter().all(Zero::is_real)
    }

    pub fn max_residual(&self) -> f64 {
        self.zeros.iter().fold(0.0, |m, z| m.max(z.residual))
    }

    /// CSV dump: a `re,im,multiplicity,residual` header, then one row per zero.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "re,im,multiplicity,residual")?;
        for z in &self.zeros {
            writeln!(out, "{:?},{:?},{},{:e}", z.location.re, z.location.im, z.multiplicity, z.residual)?;
        }
        Ok(())
    }
}

fn sort_zeros(zeros: &mut [Zero]) {
    zeros.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(b.location.im.total_cmp(&a.location.im))
    });
}

/// `p(z) = z^k q(z)` with `q(0) ≠ 0`.
pub fn deflate_origin(p: &ComplexPolynomial) -> (ComplexPolynomial, usize) {
    let k = p.coeffs().iter().take_while(|c| c.re == 0.0 && c.im == 0.0).count();
    let q = ComplexPolynomial::new(p.coeffs()[k..].to_vec()).expect("nonzero polynomial keeps a nonzero coefficient");
    (q, k)
}

/// Largest relative residual `|p(z)| / (scale · max(1,|z|)^d)` over `zs`.
pub fn residual_report(p: &ComplexPolynomial, zs: &ZeroSet) -> f64 {
    let ev = Evaluator::new(p.coeffs());
    let scale = p.scale();
    zs.zeros.iter().fold(0.0, |m, z| m.max(ev.relative_residual(z.location, scale)))
}

pub fn find_roots(p: &ComplexPolynomial, cfg: &SolverConfig) -> Result<ZeroSet, RootError> {
    cfg.validate()?;
    let degree = p.degree();
    if degree == 0 {
        return Err(RootError::DegreeZero);
    }
    let (q, origin_mult) = deflate_origin(p);
    let real_input = p.is_real();

    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut iterations = 0;
    if q.degree() >= 1 {
        let ev = Evaluator::new(q.coeffs());
        let seeds = initial_guesses(q.coeffs(), cfg.seed_radius_factor);
        let (mut iterates, used) = aberth(&ev, seeds, cfg);
        iterations = used;
        polish(&ev, &mut iterates);
        if real_input {
            symmetrize(&mut iterates, cfg.real_snap_tol);
        }
        clusters = cluster(&ev, &iterates, cfg.cluster_tol);
        if real_input {
            clusters = mirror_clusters(clusters, cfg.real_snap_tol, q.degree());
        }
    }
    if origin_mult > 0 {
        clusters.push((Complex64::new(0.0, 0.0), origin_mult));
    }

    let ev = Evaluator::new(p.coeffs());
    let scale = p.scale();
    let mut zeros: Vec<Zero> = clusters
        .into_iter()
        .map(|(location, multiplicity)| Zero {
            location,
            multiplicity,
            residual: ev.relative_residual(location, scale),
        })
        .collect();
    if let Some(worst) = zeros
        .iter()
        .filter(|z| !(z.residual <= cfg.residual_accept))
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
    {
        return Err(RootError::NonConvergence {
            worst: worst.location,
            residual: worst.residual,
            iterations,
        });
    }
    sort_zeros(&mut zeros);
    Ok(ZeroSet { zeros, source_degree: degree })
}

/// Local behaviour of `p` at one point, scaled by `|z|^{-d}` when `|z| > 1`
/// so that high degrees and large moduli do not overflow.
struct Local {
    /// Newton correction `p(z)/p'(z)`.
    ratio: Complex64,
    /// `|p(z)|`, scaled.
    value: f64,
    /// `Σ |c_k| |z|^k`, scaled the same way; a rounding-error yardstick.
    bound: f64,
}

struct Evaluator<'a> {
    coeffs: &'a [Complex64],
    abs: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    fn new(coeffs: &'a [Complex64]) -> Self {
        Evaluator {
            coeffs,
            abs: coeffs.iter().map(|c| c.norm()).collect(),
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn local(&self, z: Complex64) -> Local {
        let zero = Complex64::new(0.0, 0.0);
        let r = z.norm();
        if r <= 1.0 {
            let (mut p, mut dp) = (zero, zero);
            let mut bound = 0.0;
            for (&c, &a) in self.coeffs.iter().zip(&self.abs).rev() {
                dp = dp * z + p;
                p = p * z + c;
                bound = bound * r + a;
            }
            Local { ratio: p / dp, value: p.norm(), bound }
        } else {
            // p(z) = z^d R(1/z) with R the reversed polynomial
            let w = z.inv();
            let rw = w.norm();
            let (mut rv, mut drv) = (zero, zero);
            let mut bound = 0.0;
            for (&c, &a) in self.coeffs.iter().zip(&self.abs) {
                drv = drv * w + rv;
                rv = rv * w + c;
                bound = bound * rw + a;
            }
            let denom = rv * self.degree() as f64 - w * drv;
            Local {
                ratio: z * rv / denom,
                value: rv.norm(),
                bound,
            }
        }
    }

    /// Residual with the scaling used throughout: `|p(z)| / (scale · max(1,|z|)^d)`.
    fn relative_residual(&self, z: Complex64, scale: f64) -> f64 {
        self.local(z).value / scale
    }

    fn noise_level(&self) -> f64 {
        8.0 * EPS * (self.degree() as f64 + 1.0)
    }
}

/// Seeds on circles whose radii come from the upper convex hull of
/// `(k, ln|c_k|)`; a single hull edge gives the circle of radius
/// `|c_0/c_d|^{1/d}`.
fn initial_guesses(coeffs: &[Complex64], radius_factor: f64) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let points: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();

    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (k1, l1) = hull[hull.len() - 2];
            let (k2, l2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - l1) - (l2 - l1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut seeds = Vec::with_capacity(d);
    for edge in hull.windows(2) {
        let ((i, li), (j, lj)) = (edge[0], edge[1]);
        let n = j - i;
        let radius = ((li - lj) / n as f64).exp() * radius_factor;
        for m in 0..n {
            let angle = 2.0 * PI * m as f64 / n as f64 + 2.0 * PI * i as f64 / d as f64 + SEED_OFFSET;
            seeds.push(Complex64::from_polar(radius, angle));
        }
    }
    seeds
}

fn aberth(ev: &Evaluator, mut z: Vec<Complex64>, cfg: &SolverConfig) -> (Vec<Complex64>, usize) {
    let n = z.len();
    let noise = ev.noise_level();
    let mut done = vec![false; n];
    for iteration in 1..=cfg.max_iterations {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let local = ev.local(z[i]);
            if local.value <= noise * local.bound {
                done[i] = true;
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                let diff = z[i] - zj;
                if j != i && (diff.re != 0.0 || diff.im != 0.0) {
                    repulsion += diff.inv();
                }
            }
            let mut step = local.ratio / (Complex64::new(1.0, 0.0) - local.ratio * repulsion);
            if !step.is_finite() {
                step = if local.ratio.is_finite() {
                    local.ratio
                } else {
                    // stationary point of p: nudge off it deterministically
                    Complex64::from_polar(1e-3 * z[i].norm().max(1.0), SEED_OFFSET + i as f64)
                };
            }
            z[i] -= step;
            if step.norm() <= cfg.convergence_tol * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return (z, iteration);
        }
    }
    (z, cfg.max_iterations)
}

/// A few guarded Newton steps on iterates that are well separated from the
/// rest; clustered iterates are left for the multiplicity pass.
fn polish(ev: &Evaluator, z: &mut [Complex64]) {
    for i in 0..z.len() {
        let nearest = z
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| (w - z[i]).norm())
            .fold(f64::INFINITY, f64::min);
        let mut current = ev.local(z[i]);
        for _ in 0..3 {
            if current.value == 0.0 || !current.ratio.is_finite() || current.ratio.norm() >= 0.25 * nearest {
                break;
            }
            let candidate = z[i] - current.ratio;
            let next = ev.local(candidate);
            if next.value < current.value {
                z[i] = candidate;
                current = next;
            } else {
                break;
            }
        }
    }
}

fn snap(z: Complex64, tol: f64) -> Complex64 {
    if z.im.abs() <= tol * z.norm().max(1.0) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Makes raw iterates of a real polynomial exactly conjugate-closed.
fn symmetrize(z: &mut [Complex64], snap_tol: f64) {
    for w in z.iter_mut() {
        *w = snap(*w, snap_tol);
    }
    let upper: Vec<usize> = (0..z.len()).filter(|&i| z[i].im > 0.0).collect();
    let mut lower: Vec<usize> = (0..z.len()).filter(|&i| z[i].im < 0.0).collect();
    let mut unmatched = Vec::new();
    for &u in &upper {
        let best = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (z[*a.1].conj() - z[u]).norm().total_cmp(&(z[*b.1].conj() - z[u]).norm()))
            .map(|(pos, _)| pos);
        match best {
            Some(pos) => {
                let l = lower.swap_remove(pos);
                let avg = (z[u] + z[l].conj()) * 0.5;
                z[u] = avg;
                z[l] = avg.conj();
            }
            None => unmatched.push(u),
        }
    }
    // an unpaired nonreal iterate cannot exist for a real polynomial
    unmatched.extend(lower);
    for i in unmatched {
        z[i] = Complex64::new(z[i].re, 0.0);
    }
}

/// Groups iterates into distinct zeros. Iterates within `cluster_tol` are
/// always merged; larger groups are merged only when `p` is at rounding
/// level on the whole disc spanned by the group, which is how an m-fold
/// root shows up after finite-precision iteration.
fn cluster(ev: &Evaluator, z: &[Complex64], cluster_tol: f64) -> Vec<(Complex64, usize)> {
    let n = z.len();
    let close = |a: Complex64, b: Complex64, tol: f64| (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0);

    let strict = components(n, |i, j| close(z[i], z[j], cluster_tol));
    let loose = components(n, |i, j| close(z[i], z[j], CANDIDATE_RADIUS));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for component in loose {
        if component.len() > 1 && certify(ev, z, &component) {
            groups.push(component);
            continue;
        }
        let mut sub: Vec<Vec<usize>> = strict
            .iter()
            .filter(|g| component.contains(&g[0]))
            .cloned()
            .collect();
        merge_greedily(ev, z, &mut sub);
        groups.extend(sub);
    }
    groups.sort_by_key(|g| g[0]);
    groups
        .into_iter()
        .map(|g| {
            let center = mean(z, &g);
            let location = if g.len() > 1 {
                let radius = g.iter().map(|&i| (z[i] - center).norm()).fold(0.0, f64::max);
                refine_multiple(ev, center, g.len(), radius)
            } else {
                center
            };
            (location, g.len())
        })
        .collect()
}

/// An m-fold zero of `p` is a simple zero of `p^{(m-1)}`; Newton on that
/// derivative recovers the location to working precision, whereas the mean
/// of the iterates is only accurate to roughly `eps^{1/m}`.
fn refine_multiple(ev: &Evaluator, center: Complex64, m: usize, radius: f64) -> Complex64 {
    let order = m - 1;
    let derived: Vec<Complex64> = ev.coeffs[order..]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * ((k + 1)..=(k + order)).map(|f| f as f64).product::<f64>())
        .collect();
    if derived.len() < 2 {
        return center;
    }
    let dev = Evaluator::new(&derived);
    let mut w = center;
    for _ in 0..20 {
        let local = dev.local(w);
        if local.value == 0.0 || !local.ratio.is_finite() {
            break;
        }
        w -= local.ratio;
        if local.ratio.norm() <= 4.0 * EPS * w.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    if w.is_finite() && (w - center).norm() <= 2.0 * radius.max(EPS * center.norm()) {
        w
    } else {
        center
    }
}

fn components(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if linked(i, j) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(i);
    }
    out
}

fn merge_greedily(ev: &Evaluator, z: &[Complex64], groups: &mut Vec<Vec<usize>>) {
    loop {
        let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                let dist = (mean(z, &groups[a]) - mean(z, &groups[b])).norm();
                candidates.push((dist, a, b));
            }
        }
        candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        let merged = candidates.into_iter().find_map(|(_, a, b)| {
            let mut union = groups[a].clone();
            union.extend(&groups[b]);
            certify(ev, z, &union).then_some((a, b, union))
        });
        match merged {
            Some((a, b, union)) => {
                groups.remove(b);
                groups[a] = union;
            }
            None => return,
        }
    }
}

fn mean(z: &[Complex64], members: &[usize]) -> Complex64 {
    members.iter().map(|&i| z[i]).sum::<Complex64>() / members.len() as f64
}

fn certify(ev: &Evaluator, z: &[Complex64], members: &[usize]) -> bool {
    let m = members.len();
    let center = mean(z, members);
    let radius = members.iter().map(|&i| (z[i] - center).norm()).fold(0.0, f64::max);
    if radius == 0.0 {
        return true;
    }
    // no foreign iterate may sit inside the disc we are about to collapse
    let foreign_inside = (0..z.len())
        .filter(|i| !members.contains(i))
        .any(|i| (z[i] - center).norm() <= 2.0 * radius);
    if foreign_inside {
        return false;
    }
    let slack = 2f64.powi(m.min(60) as i32) * 2.0 * ev.noise_level();
    (0..8).all(|q| {
        let s = center + Complex64::from_polar(radius, PI * (2 * q + 1) as f64 / 8.0);
        let local = ev.local(s);
        local.value <= slack * local.bound
    })
}

/// Rebuilds the cluster list of a real polynomial from its upper half-plane
/// and real entries so that the result is exactly conjugate-closed.
fn mirror_clusters(clusters: Vec<(Complex64, usize)>, snap_tol: f64, degree: usize) -> Vec<(Complex64, usize)> {
    let snapped: Vec<(Complex64, usize)> = clusters.iter().map(|&(z, m)| (snap(z, snap_tol), m)).collect();
    let mut out = Vec::with_capacity(snapped.len());
    for &(z, m) in &snapped {
        if z.im == 0.0 {
            out.push((z, m));
        } else if z.im > 0.0 {
            out.push((z, m));
            out.push((z.conj(), m));
        }
    }
    if out.iter().map(|e| e.1).sum::<usize>() == degree {
        out
    } else {
        snapped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RealPolynomial;

    fn real(coeffs: &[f64]) -> ComplexPolynomial {
        RealPolynomial::new(coeffs.to_vec()).unwrap().to_complex()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_imaginary_pair() {
        let zs = find_roots(&real(&[1.0, 0.0, 1.0]), &SolverConfig::default()).unwrap();
        assert_eq!(zs.zeros().len(), 2);
        assert!((zs.zeros()[0].location - c(0.0, 1.0)).norm() < 1e-14);
        assert_eq!(zs.zeros()[1].location, zs.zeros()[0].location.conj());
        assert!(zs.zeros().iter().all(|z| z.multiplicity == 1));
    }

    #[test]
    fn triple_root_merges() {
        // (z − 1)³ expanded
        let zs = find_roots(&real(&[-1.0, 3.0, -3.0, 1.0]), &SolverConfig::default()).unwrap();
        assert_eq!(zs.zeros().len(), 1, "{zs:?}");
        let z = zs.zeros()[0];
        assert_eq!(z.multiplicity, 3);
        assert!(z.is_real());
        assert!((z.location.re - 1.0).abs() < 1e-9, "{z:?}");
    }

    #[test]
    fn construction_roots() {
        let zs = find_roots(&real(&[2.0, -2.0, 1.0]), &SolverConfig::default()).unwrap();
        let locs = zs.locations();
        assert!((locs[0] - c(1.0, 1.0)).norm() < 1e-14);
        assert!((locs[1] - c(1.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(find_roots(&real(&[3.0]), &SolverConfig::default()), Err(RootError::DegreeZero));
    }

    #[test]
    fn zeros_at_origin_are_exact() {
        let zs = find_roots(&real(&[0.0, 0.0, 2.0, -3.0, 1.0]), &SolverConfig::default()).unwrap();
        let origin = zs.zeros().iter().find(|z| z.location == c(0.0, 0.0)).unwrap();
        assert_eq!(origin.multiplicity, 2);
        assert_eq!(zs.locations().len(), 4);
    }

    #[test]
    fn deflate_origin_examples() {
        let (q, k) = deflate_origin(&real(&[0.0, 0.0, 2.0, -3.0, 1.0]));
        assert_eq!((q, k), (real(&[2.0, -3.0, 1.0]), 2));
        let (q, k) = deflate_origin(&real(&[5.0]));
        assert_eq!((q, k), (real(&[5.0]), 0));
        let (q, k) = deflate_origin(&real(&[0.0, 1.0]));
        assert_eq!((q, k), (real(&[1.0]), 1));
    }

    #[test]
    fn residual_report_examples() {
        let p = real(&[2.0, -2.0, 1.0]);
        let exact = ZeroSet::new(
            vec![
                Zero { location: c(1.0, 1.0), multiplicity: 1, residual: 0.0 },
                Zero { location: c(1.0, -1.0), multiplicity: 1, residual: 0.0 },
            ],
            2,
        )
        .unwrap();
        assert!(residual_report(&p, &exact) < 1e-15);

        let delta = 1e-6;
        let z = c(1.0 + delta, 1.0);
        let perturbed = ZeroSet::new(vec![Zero { location: z, multiplicity: 2, residual: 0.0 }], 2).unwrap();
        // independent value: |p(z)| = |2iδ + δ²|, scaled by 2·|z|²
        let expected = c(delta * delta, 2.0 * delta).norm() / (2.0 * z.norm_sqr());
        let got = residual_report(&p, &perturbed);
        assert!(got > 0.0);
        assert!((got - expected).abs() <= 1e-6 * expected, "{got} vs {expected}");
    }

    #[test]
    fn fixed_degree_ten_polynomial() {
        let coeffs = [0.31, -0.72, 0.05, 0.93, -0.44, 0.18, -0.99, 0.61, -0.27, 0.84, -0.5];
        let p = real(&coeffs);
        let zs = find_roots(&p, &SolverConfig::default()).unwrap();
        assert_eq!(zs.locations().len(), 10);
        assert!(residual_report(&p, &zs) <= 1e-9);
    }

    #[test]
    fn complex_coefficients() {
        // (z − i)(z − 2)
        let p = ComplexPolynomial::new(vec![c(0.0, 2.0), c(-2.0, -1.0), c(1.0, 0.0)]).unwrap();
        let zs = find_roots(&p, &SolverConfig::default()).unwrap();
        let locs = zs.locations();
        assert!((locs[0] - c(0.0, 1.0)).norm() < 1e-13);
        assert!((locs[1] - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn widely_spread_moduli() {
        // (z − 1e-3)(z − 1)(z − 1e3)(z − 1e6)
        let spec = crate::poly::SectorRootSpec::new(vec![1e-3, 1.0, 1e3, 1e6], vec![]).unwrap();
        let p = RealPolynomial::from_sector_roots(&spec, 1.0).unwrap();
        let zs = find_roots(&p.to_complex(), &SolverConfig::default()).unwrap();
        for (got, want) in zs.locations().iter().zip([1e-3, 1.0, 1e3, 1e6]) {
            assert!((got.re - want).abs() <= 1e-10 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = SolverConfig { cluster_tol: 0.0, ..SolverConfig::default() };
        assert!(matches!(find_roots(&real(&[1.0, 1.0]), &cfg), Err(RootError::InvalidConfig(_))));
        let cfg = SolverConfig { max_iterations: 0, ..SolverConfig::default() };
        assert!(matches!(find_roots(&real(&[1.0, 1.0]), &cfg), Err(RootError::InvalidConfig(_))));
    }

    #[test]
    fn csv_dump() {
        let zs = find_roots(&real(&[1.0, 0.0, 1.0]), &SolverConfig::default()).unwrap();
        let mut buf = Vec::new();
        zs.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "re,im,multiplicity,residual");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].contains(",1,"));
    }
}
