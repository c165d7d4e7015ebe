//! Degrees and bidegrees of explicit maps `S^{n-1} × S^{n-1} -> S^{n-1}`.
//!
//! Two families are supported: `φ(x, y) = y − 2⟨x, y⟩x` for even `n`, and
//! unit-sphere multiplication of complex numbers, quaternions and octonions
//! built by Cayley-Dickson doubling. A slice fixes one argument. Slices that
//! are linear in the free argument get an exact determinant sign; the others
//! go through a winding count on the circle or a Monte Carlo average of the
//! Jacobian determinant.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::exact;
use crate::{Error, Result};

/// Input norms must be 1 within this tolerance.
pub const INPUT_NORM_TOL: f64 = 1e-12;
/// Products of unit vectors must stay on the sphere within this tolerance.
pub const OUTPUT_NORM_TOL: f64 = 1e-10;
/// Monte Carlo evaluation points must map to within this of the sphere.
pub const IMAGE_NORM_TOL: f64 = 1e-8;
pub const FD_STEP: f64 = 1e-5;
pub const MIN_WINDING_SAMPLES: usize = 1000;
pub const MIN_MC_SAMPLES: u64 = 100_000;
pub const WINDING_RESIDUAL: f64 = 1e-6;
/// A Monte Carlo estimate rounds to an integer only if it lies this close.
pub const MC_BAND: f64 = 0.3;
const FRAME_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum MapFamily {
    /// `φ(x, y) = y − 2⟨x, y⟩x`.
    Phi,
    /// Multiplication on the unit sphere of the `2^level`-dimensional
    /// Cayley-Dickson algebra.
    CayleyMult { level: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapDescriptor {
    #[serde(flatten)]
    pub family: MapFamily,
    /// Ambient dimension; the map acts on `S^{n-1}`.
    pub n: usize,
}

impl MapDescriptor {
    pub fn phi(n: usize) -> Result<Self> {
        if n < 2 || n % 2 == 1 {
            return Err(Error::Parameters(format!(
                "phi needs an even n >= 2, got {n}"
            )));
        }
        Ok(MapDescriptor {
            family: MapFamily::Phi,
            n,
        })
    }

    pub fn cayley(level: u32) -> Result<Self> {
        if !(1..=3).contains(&level) {
            return Err(Error::Parameters(format!(
                "multiplication level must be 1, 2 or 3, got {level}"
            )));
        }
        Ok(MapDescriptor {
            family: MapFamily::CayleyMult { level },
            n: 1 << level,
        })
    }

    /// Evaluates the map without norm checks.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        match self.family {
            MapFamily::Phi => {
                let c = 2.0 * dot(x, y);
                y.iter().zip(x).map(|(yi, xi)| yi - c * xi).collect()
            }
            MapFamily::CayleyMult { .. } => cd_mul(x, y),
        }
    }

    pub fn slice(&self, slot: Slot, point: Vec<f64>) -> Result<Slice> {
        check_unit(&point, self.n, "base point")?;
        Ok(Slice {
            map: *self,
            slot,
            point,
        })
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            MapFamily::Phi => write!(f, "phi(n={})", self.n),
            MapFamily::CayleyMult { level } => write!(f, "cayley(level={level})"),
        }
    }
}

/// Which argument is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slot {
    /// `x ↦ f(x, p)`; its degree is `α`.
    SecondFixed,
    /// `y ↦ f(p, y)`; its degree is `β`.
    FirstFixed,
}

/// A self-map of a unit sphere `S^{dim-1}`.
pub trait SphereMap {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    map: MapDescriptor,
    slot: Slot,
    point: Vec<f64>,
}

impl Slice {
    pub fn slot(&self) -> Slot {
        self.slot
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    /// Whether the slice is a linear map of its free argument. Only the
    /// `x`-slice of `φ` is not.
    pub fn is_linear(&self) -> bool {
        !(self.map.family == MapFamily::Phi && self.slot == Slot::SecondFixed)
    }
}

impl SphereMap for Slice {
    fn dim(&self) -> usize {
        self.map.n
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        match self.slot {
            Slot::SecondFixed => self.map.eval(v, &self.point),
            Slot::FirstFixed => self.map.eval(&self.point, v),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_unit(v: &[f64], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Parameters(format!(
            "{what} has {} coordinates, expected {n}",
            v.len()
        )));
    }
    let drift = (norm(v) - 1.0).abs();
    if drift.is_nan() || drift > INPUT_NORM_TOL {
        return Err(Error::Numeric(format!(
            "{what} is not a unit vector (norm error {drift:e})"
        )));
    }
    Ok(())
}

fn conj(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    for c in &mut out[1..] {
        *c = -*c;
    }
    out
}

/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &conj(c));
    let mut out: Vec<f64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

/// Product of two unit vectors in the algebra of dimension `2^level`
/// (complex numbers, quaternions, octonions for levels 1, 2, 3).
pub fn cayley_mult(level: u32, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let m = MapDescriptor::cayley(level)?;
    check_unit(x, m.n, "left factor")?;
    check_unit(y, m.n, "right factor")?;
    let p = cd_mul(x, y);
    let drift = (norm(&p) - 1.0).abs();
    if drift > OUTPUT_NORM_TOL {
        return Err(Error::Numeric(format!(
            "product left the unit sphere by {drift:e}"
        )));
    }
    Ok(p)
}

/// Exact sign of the determinant of a linear slice. The matrix is read
/// off the images of the basis vectors and converted to rationals without
/// rounding.
pub fn linear_slice_degree(slice: &Slice) -> Result<i64> {
    if !slice.is_linear() {
        return Err(Error::Nonlinear(format!(
            "{} with the second argument fixed; use the winding or Monte Carlo engine",
            slice.map
        )));
    }
    let n = slice.dim();
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        for (i, v) in slice.apply(&e).into_iter().enumerate() {
            rows[i][j] = BigRational::from_float(v)
                .ok_or_else(|| Error::Numeric(format!("non-finite matrix entry {v}")))?;
        }
    }
    let det = exact::determinant(rows);
    if det.is_zero() {
        return Err(Error::Numeric("slice matrix is singular".into()));
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Winding {
    pub degree: i64,
    /// Total angle swept divided by `2π`, before rounding.
    pub turns: f64,
}

/// Degree of a self-map of the circle by summing angle increments of the
/// image over a uniform grid.
pub fn winding_degree<M: SphereMap + ?Sized>(map: &M, samples: usize) -> Result<Winding> {
    if map.dim() != 2 {
        return Err(Error::Parameters(format!(
            "winding number needs a map of the circle, got dimension {}",
            map.dim()
        )));
    }
    if samples < MIN_WINDING_SAMPLES {
        return Err(Error::Parameters(format!(
            "winding number needs at least {MIN_WINDING_SAMPLES} samples, got {samples}"
        )));
    }
    let at = |i: usize| {
        let t = std::f64::consts::TAU * i as f64 / samples as f64;
        map.apply(&[t.cos(), t.sin()])
    };
    let mut prev = at(0);
    let mut total = 0.0;
    for i in 1..=samples {
        let cur = at(i % samples);
        let cross = prev[0] * cur[1] - prev[1] * cur[0];
        total += cross.atan2(dot(&prev, &cur));
        prev = cur;
    }
    let turns = total / std::f64::consts::TAU;
    let degree = turns.round();
    if (turns - degree).abs() >= WINDING_RESIDUAL {
        return Err(Error::Numeric(format!(
            "winding count {turns} is not within {WINDING_RESIDUAL:e} of an integer"
        )));
    }
    Ok(Winding {
        degree: degree as i64,
        turns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl McEstimate {
    /// Nearest integer, if the estimate lies within [`MC_BAND`] of it.
    pub fn rounded(&self) -> Result<i64> {
        let r = self.estimate.round();
        if (self.estimate - r).abs() >= MC_BAND {
            return Err(Error::Numeric(format!(
                "Monte Carlo estimate {} (stderr {}) is not within {MC_BAND} of an integer",
                self.estimate, self.stderr
            )));
        }
        Ok(r as i64)
    }
}

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let r = norm(&v);
        if r > 1e-9 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Determinant of a small dense matrix by partial-pivot elimination.
fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .expect("nonempty range");
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = row[c] / pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Orthonormal basis of the tangent space at the unit vector `p`, oriented
/// so that `(p, t_1, ..., t_{n-1})` has positive determinant.
fn tangent_frame<R: Rng>(p: &[f64], rng: &mut R) -> Result<Vec<Vec<f64>>> {
    let n = p.len();
    'attempt: for _ in 0..=FRAME_RETRIES {
        let mut basis: Vec<Vec<f64>> = vec![p.to_vec()];
        for _ in 1..n {
            let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            for b in &basis {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
            }
            let r = norm(&v);
            if r < 1e-6 {
                continue 'attempt;
            }
            v.iter_mut().for_each(|c| *c /= r);
            basis.push(v);
        }
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|i| basis.iter().map(|b| b[i]).collect())
            .collect();
        if det_f64(cols) < 0.0 {
            basis[n - 1].iter_mut().for_each(|c| *c = -*c);
        }
        basis.remove(0);
        return Ok(basis);
    }
    Err(Error::Numeric(format!(
        "degenerate tangent frame after {FRAME_RETRIES} retries"
    )))
}

fn retract(v: Vec<f64>) -> Vec<f64> {
    let r = norm(&v);
    v.into_iter().map(|c| c / r).collect()
}

/// Jacobian determinant of `map` at `x` in oriented tangent frames.
fn jacobian_det<M: SphereMap + ?Sized, R: Rng>(map: &M, x: &[f64], rng: &mut R) -> Result<f64> {
    let y = map.apply(x);
    let drift = (norm(&y) - 1.0).abs();
    if drift.is_nan() || drift > IMAGE_NORM_TOL {
        return Err(Error::Numeric(format!(
            "image left the unit sphere by {drift:e}"
        )));
    }
    let src = tangent_frame(x, rng)?;
    let img = tangent_frame(&y, rng)?;
    let step = |u: &[f64], sign: f64| {
        retract(
            x.iter()
                .zip(u)
                .map(|(a, b)| a + sign * FD_STEP * b)
                .collect(),
        )
    };
    let derivs: Vec<Vec<f64>> = src
        .iter()
        .map(|u| {
            let fp = map.apply(&step(u, 1.0));
            let fm = map.apply(&step(u, -1.0));
            fp.iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * FD_STEP))
                .collect()
        })
        .collect();
    let jac = img
        .iter()
        .map(|v| derivs.iter().map(|d| dot(v, d)).collect())
        .collect();
    Ok(det_f64(jac))
}

/// Degree as the mean Jacobian determinant over uniform points of the
/// sphere. Worker `w` draws from stream `w` of the generator seeded by
/// `seed`, so the result depends only on `(seed, workers)`.
pub fn mc_degree<M: SphereMap + Sync + ?Sized>(
    map: &M,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<McEstimate> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Parameters(format!(
            "Monte Carlo degree needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    if workers == 0 {
        return Err(Error::Parameters("workers must be at least 1".into()));
    }
    let n = map.dim();
    let share =
        |w: usize| samples / workers as u64 + u64::from((w as u64) < samples % workers as u64);
    let run = |w: usize| -> Result<(f64, f64)> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(w as u64);
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..share(w) {
            let x = random_unit(&mut rng, n);
            let d = jacobian_det(map, &x, &mut rng)?;
            sum += d;
            sq += d * d;
        }
        Ok((sum, sq))
    };
    let parts: Vec<Result<(f64, f64)>> = if workers == 1 {
        vec![run(0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || run(w))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    let (mut sum, mut sq) = (0.0, 0.0);
    for p in parts {
        let (a, b) = p?;
        sum += a;
        sq += b;
    }
    let count = samples as f64;
    let mean = sum / count;
    let var = (sq / count - mean * mean).max(0.0) * count / (count - 1.0);
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / count).sqrt(),
        samples,
        seed,
        workers,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Linear,
    Winding,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceEstimate {
    pub method: Method,
    pub degree: i64,
    /// Unrounded value: the determinant sign, the winding count or the
    /// Monte Carlo mean.
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BidegreeOptions {
    pub base_pairs: usize,
    pub winding_samples: usize,
    pub mc_samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for BidegreeOptions {
    fn default() -> Self {
        BidegreeOptions {
            base_pairs: 3,
            winding_samples: 4096,
            mc_samples: 2_000_000,
            seed: 0,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bidegree {
    pub alpha: i64,
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidegreeReport {
    pub map: MapDescriptor,
    #[serde(flatten)]
    pub bidegree: Bidegree,
    /// Keyed `alpha.<i>` / `beta.<i>` for base pair `i`.
    pub estimates: BTreeMap<String, SliceEstimate>,
    pub seed: u64,
}

/// Degree of one slice by the best available engine.
pub fn slice_degree(slice: &Slice, opts: &BidegreeOptions, seed: u64) -> Result<SliceEstimate> {
    if slice.is_linear() {
        let d = linear_slice_degree(slice)?;
        return Ok(SliceEstimate {
            method: Method::Linear,
            degree: d,
            value: d as f64,
            stderr: None,
        });
    }
    if slice.dim() == 2 {
        let w = winding_degree(slice, opts.winding_samples)?;
        return Ok(SliceEstimate {
            method: Method::Winding,
            degree: w.degree,
            value: w.turns,
            stderr: None,
        });
    }
    let e = mc_degree(slice, opts.mc_samples, seed, opts.workers)?;
    Ok(SliceEstimate {
        method: Method::MonteCarlo,
        degree: e.rounded()?,
        value: e.estimate,
        stderr: Some(e.stderr),
    })
}

/// Bidegree at `opts.base_pairs` random base pairs; all pairs must agree.
/// Base pairs come from stream `u64::MAX` of the seeded generator and
/// Monte Carlo runs for pair `i` use seed `seed + i`.
pub fn bidegree(map: &MapDescriptor, opts: &BidegreeOptions) -> Result<BidegreeReport> {
    if opts.base_pairs == 0 {
        return Err(Error::Parameters("need at least one base pair".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    rng.set_stream(u64::MAX);
    let mut estimates = BTreeMap::new();
    let mut seen: Option<Bidegree> = None;
    for i in 0..opts.base_pairs {
        let p1 = random_unit(&mut rng, map.n);
        let p2 = random_unit(&mut rng, map.n);
        let mc_seed = opts.seed.wrapping_add(i as u64);
        let a = slice_degree(&map.slice(Slot::SecondFixed, p2)?, opts, mc_seed)?;
        let b = slice_degree(&map.slice(Slot::FirstFixed, p1)?, opts, mc_seed)?;
        let here = Bidegree {
            alpha: a.degree,
            beta: b.degree,
        };
        estimates.insert(format!("alpha.{i}"), a);
        estimates.insert(format!("beta.{i}"), b);
        match seen {
            Some(prev) if prev != here => {
                return Err(Error::Numeric(format!(
                    "bidegree depends on the base pair: ({}, {}) vs ({}, {})",
                    prev.alpha, prev.beta, here.alpha, here.beta
                )))
            }
            _ => seen = Some(here),
        }
    }
    Ok(BidegreeReport {
        map: *map,
        bidegree: seen.expect("at least one base pair"),
        estimates,
        seed: opts.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfInvariant {
    pub magnitude: u64,
    /// `α·β`; only its absolute value is independent of orientation choices.
    pub signed: i64,
    pub note: &'static str,
}

/// Hopf invariant of the map `S^{2n-1} -> S^n` induced by a map of the given
/// bidegree, up to sign.
pub fn hopf_from_bidegree(b: &Bidegree) -> HopfInvariant {
    let signed = b.alpha * b.beta;
    HopfInvariant {
        magnitude: signed.unsigned_abs(),
        signed,
        note: "sign depends on orientation conventions; only the magnitude is invariant",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Identity(usize);

    impl SphereMap for Identity {
        fn dim(&self) -> usize {
            self.0
        }
        fn apply(&self, v: &[f64]) -> Vec<f64> {
            v.to_vec()
        }
    }

    struct Reflection(usize);

    impl SphereMap for Reflection {
        fn dim(&self) -> usize {
            self.0
        }
        fn apply(&self, v: &[f64]) -> Vec<f64> {
            let mut w = v.to_vec();
            w[0] = -w[0];
            w
        }
    }

    /// `g(x) = φ(x, e_1)` on the circle, followed by the antipode.
    struct AntipodalG;

    impl SphereMap for AntipodalG {
        fn dim(&self) -> usize {
            2
        }
        fn apply(&self, v: &[f64]) -> Vec<f64> {
            let g = [1.0 - 2.0 * v[0] * v[0], -2.0 * v[0] * v[1]];
            vec![-g[0], -g[1]]
        }
    }

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(42)
    }

    #[test]
    fn phi_slices() {
        let phi = MapDescriptor::phi(2).unwrap();
        let g = phi.slice(Slot::SecondFixed, e(2, 0)).unwrap();
        let v = g.apply(&[0.6, 0.8]);
        assert!((v[0] - (1.0 - 2.0 * 0.36)).abs() < 1e-15);
        assert!((v[1] + 2.0 * 0.48).abs() < 1e-15);
        assert_eq!(winding_degree(&g, 1000).unwrap().degree, 2);
        let h = phi.slice(Slot::FirstFixed, e(2, 0)).unwrap();
        assert_eq!(linear_slice_degree(&h).unwrap(), -1);
        assert!(matches!(linear_slice_degree(&g), Err(Error::Nonlinear(_))));
        assert!(MapDescriptor::phi(3).is_err());
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_degree(&Identity(2), 1000).unwrap().degree, 1);
        assert_eq!(winding_degree(&Reflection(2), 1000).unwrap().degree, -1);
        assert_eq!(winding_degree(&AntipodalG, 2000).unwrap().degree, 2);
        assert!(winding_degree(&Identity(2), 999).is_err());
        assert!(winding_degree(&Identity(3), 1000).is_err());
    }

    #[test]
    fn cayley_tables() {
        // level 1: angles add
        let (t, s) = (0.7f64, -1.9f64);
        let p = cayley_mult(1, &[t.cos(), t.sin()], &[s.cos(), s.sin()]).unwrap();
        assert!((p[0] - (t + s).cos()).abs() < 1e-15 && (p[1] - (t + s).sin()).abs() < 1e-15);
        // quaternions: i j = k, j i = -k, i^2 = -1
        let q = |i| e(4, i);
        assert_eq!(cayley_mult(2, &q(1), &q(2)).unwrap(), q(3));
        assert_eq!(
            cayley_mult(2, &q(2), &q(1)).unwrap(),
            vec![0.0, 0.0, 0.0, -1.0]
        );
        assert_eq!(
            cayley_mult(2, &q(1), &q(1)).unwrap(),
            vec![-1.0, 0.0, 0.0, 0.0]
        );
        assert!(cayley_mult(2, &[1.0, 1.0, 0.0, 0.0], &q(0)).is_err());
        assert!(cayley_mult(4, &e(16, 0), &e(16, 0)).is_err());
    }

    #[test]
    fn octonions_are_normed_but_not_associative() {
        let mut r = rng();
        let mut max_assoc: f64 = 0.0;
        for _ in 0..200 {
            let (x, y, z) = (
                random_unit(&mut r, 8),
                random_unit(&mut r, 8),
                random_unit(&mut r, 8),
            );
            let xy = cayley_mult(3, &x, &y).unwrap();
            let yz = cayley_mult(3, &y, &z).unwrap();
            let a = cd_mul(&xy, &z);
            let b = cd_mul(&x, &yz);
            max_assoc = max_assoc.max(
                a.iter()
                    .zip(&b)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max),
            );
        }
        assert!(max_assoc > 0.1);
    }

    #[test]
    fn evaluations_stay_on_sphere() {
        let mut r = rng();
        let maps = [
            MapDescriptor::phi(4).unwrap(),
            MapDescriptor::phi(8).unwrap(),
            MapDescriptor::cayley(1).unwrap(),
            MapDescriptor::cayley(2).unwrap(),
            MapDescriptor::cayley(3).unwrap(),
        ];
        for m in maps {
            for _ in 0..10_000 {
                let (x, y) = (random_unit(&mut r, m.n), random_unit(&mut r, m.n));
                assert!((norm(&m.eval(&x, &y)) - 1.0).abs() < OUTPUT_NORM_TOL);
            }
        }
    }

    #[test]
    fn multiplication_slices_are_orientation_preserving() {
        let mut r = rng();
        for level in 1..=3 {
            let m = MapDescriptor::cayley(level).unwrap();
            for slot in [Slot::FirstFixed, Slot::SecondFixed] {
                let p = random_unit(&mut r, m.n);
                assert_eq!(linear_slice_degree(&m.slice(slot, p).unwrap()).unwrap(), 1);
            }
        }
    }

    #[test]
    fn mc_matches_exact_on_linear_slices() {
        let id = mc_degree(&Identity(4), 100_000, 3, 1).unwrap();
        assert!((id.estimate - 1.0).abs() < 1e-6);
        let refl = mc_degree(&Reflection(4), 100_000, 3, 1).unwrap();
        assert!((refl.estimate + 1.0).abs() < 1e-6);
        let m = MapDescriptor::phi(4).unwrap();
        let s = m.slice(Slot::FirstFixed, e(4, 0)).unwrap();
        let est = mc_degree(&s, 100_000, 5, 2).unwrap();
        assert_eq!(est.rounded().unwrap(), linear_slice_degree(&s).unwrap());
        let q = MapDescriptor::cayley(2).unwrap();
        let s = q
            .slice(Slot::SecondFixed, random_unit(&mut rng(), 4))
            .unwrap();
        assert_eq!(mc_degree(&s, 100_000, 5, 1).unwrap().rounded().unwrap(), 1);
        assert!(mc_degree(&Identity(4), 10, 0, 1).is_err());
    }

    #[test]
    fn mc_is_deterministic_per_seed_and_workers() {
        let m = MapDescriptor::phi(4).unwrap();
        let s = m.slice(Slot::SecondFixed, e(4, 1)).unwrap();
        let a = mc_degree(&s, 100_000, 9, 3).unwrap();
        let b = mc_degree(&s, 100_000, 9, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rounded().unwrap(), 2);
    }

    #[test]
    fn image_off_sphere_is_reported() {
        struct Shrink;
        impl SphereMap for Shrink {
            fn dim(&self) -> usize {
                3
            }
            fn apply(&self, v: &[f64]) -> Vec<f64> {
                v.iter().map(|c| 0.5 * c).collect()
            }
        }
        assert!(matches!(
            mc_degree(&Shrink, 100_000, 0, 1),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn bidegrees() {
        let opts = BidegreeOptions::default();
        let r = bidegree(&MapDescriptor::phi(2).unwrap(), &opts).unwrap();
        assert_eq!(r.bidegree, Bidegree { alpha: 2, beta: -1 });
        assert_eq!(r.estimates.len(), 6);
        assert_eq!(r.estimates["alpha.0"].method, Method::Winding);
        for level in 1..=3 {
            let r = bidegree(&MapDescriptor::cayley(level).unwrap(), &opts).unwrap();
            assert_eq!(r.bidegree, Bidegree { alpha: 1, beta: 1 });
        }
    }

    #[test]
    fn hopf_examples() {
        let h = hopf_from_bidegree(&Bidegree { alpha: 2, beta: -1 });
        assert_eq!((h.magnitude, h.signed), (2, -2));
        assert_eq!(
            hopf_from_bidegree(&Bidegree { alpha: 1, beta: 1 }).magnitude,
            1
        );
        assert_eq!(
            hopf_from_bidegree(&Bidegree { alpha: 0, beta: 5 }).magnitude,
            0
        );
    }

    // unit complex z as an element of the quaternions (z, 0) or octonions
    fn complex_in(n: usize, t: f64) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[0] = t.cos();
        v[1] = t.sin();
        v
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn multiplication_is_circle_equivariant_for_n_2_and_4() {
        let mut r = rng();
        for n in [2, 4] {
            for _ in 0..100 {
                let z = complex_in(n, r.random_range(0.0..6.3));
                let (x, y) = (random_unit(&mut r, n), random_unit(&mut r, n));
                let lhs = cd_mul(&cd_mul(&z, &x), &y);
                let rhs = cd_mul(&z, &cd_mul(&x, &y));
                assert!(max_diff(&lhs, &rhs) < 1e-13);
            }
        }
    }

    #[test]
    fn octonion_multiplication_is_circle_equivariant() {
        // octonion = (w1, w2) over quaternions; source acts by
        // ((z w1, w2 z), (w3 z, w4 z̄)), target by (w1, w2) ↦ (z w1 z, w2)
        let mut r = rng();
        for _ in 0..200 {
            let z = complex_in(4, r.random_range(0.0..6.3));
            let zbar = conj(&z);
            let (x, y) = (random_unit(&mut r, 8), random_unit(&mut r, 8));
            let (w1, w2) = x.split_at(4);
            let (w3, w4) = y.split_at(4);
            let gx = [cd_mul(&z, w1), cd_mul(w2, &z)].concat();
            let gy = [cd_mul(w3, &z), cd_mul(w4, &zbar)].concat();
            let p = cd_mul(&x, &y);
            let (p1, p2) = p.split_at(4);
            let gp = [cd_mul(&cd_mul(&z, p1), &z), p2.to_vec()].concat();
            assert!(max_diff(&cd_mul(&gx, &gy), &gp) < 1e-13);
        }
    }

    #[test]
    fn octonion_target_action_fixes_a_five_sphere() {
        // fixed vectors of w1 ↦ z w1 z span the j, k directions of w1 plus all of w2
        let z = complex_in(4, 0.9);
        let act = |v: &[f64]| [cd_mul(&cd_mul(&z, &v[..4]), &z), v[4..].to_vec()].concat();
        let mut fixed_dims = 0;
        for i in 0..8 {
            let v = e(8, i);
            if max_diff(&act(&v), &v) < 1e-14 {
                fixed_dims += 1;
            }
        }
        assert_eq!(fixed_dims, 6);
        // and nothing outside that span is fixed: the action on 1, i is a rotation by 2θ
        let moved = act(&e(8, 0));
        assert!(max_diff(&moved, &complex_in(8, 1.8)) < 1e-14);
    }
}
