//! Floating-point oracle for piecewise-constant spectra.
//!
//! Everything here is computed in the frequency domain from closed-form
//! integrals of complex exponentials over exact interval fragments; the set
//! structure (intersections of dilated supports, residue classes) is always
//! computed exactly first and only then converted to `f64`.
//!
//! Conventions: `ψ̂(ξ) = coeff/√(2π)` on each piece, `Df(x) = √2 f(2x)`,
//! `T_α f(x) = f(x − α)`, so `(D^n T_α ψ)^(ξ) = 2^{-n/2} e^{-iαξ/2^n} ψ̂(ξ/2^n)`.
//!
//! Invariance of the core space under dyadic translations reduces to the same
//! question for `W_0`, the closed span of the integer translates of `ψ`; the
//! residual probe below therefore works at that level only.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::congruence::period_pieces;
use crate::interpolate::PiecewiseSpectrum;
use crate::sets::IntervalSet;

/// `∫_a^b e^{-iαξ} dξ`, stable as `α → 0`.
pub fn exp_integral(alpha: f64, a: f64, b: f64) -> Complex64 {
    let half = 0.5 * alpha * (b - a);
    let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
    Complex64::from_polar((b - a) * sinc, -alpha * 0.5 * (a + b))
}

/// A unitary image of `ψ` whose transform is `2^{-scale/2} e^{-i·freq·ξ} ψ̂(ξ/2^scale)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub scale: i32,
    pub freq: f64,
}

impl Atom {
    /// `D^n T^l ψ`.
    pub fn new(n: i32, l: i64) -> Self {
        Atom::dilate_translate(n, l as f64)
    }

    /// `D^n T_α ψ`.
    pub fn dilate_translate(n: i32, alpha: f64) -> Self {
        Atom { scale: n, freq: alpha * 2f64.powi(-n) }
    }

    /// `T_β D^n ψ`.
    pub fn translate_dilate(beta: f64, n: i32) -> Self {
        Atom { scale: n, freq: beta }
    }
}

/// `(lo, hi, weight)` in radians.
type Fragment = (f64, f64, f64);

/// Fragments of `2^n·supp(a) ∩ 2^m·supp(b)` in radians, with coefficient
/// products.
fn overlap_fragments(a: &PiecewiseSpectrum, n: i32, b: &PiecewiseSpectrum, m: i32) -> Vec<Fragment> {
    let mut out = Vec::new();
    for p in a.pieces() {
        let sp = p.support.dilate(n);
        for q in b.pieces() {
            let w = p.coeff.to_f64() * q.coeff.to_f64();
            for iv in sp.intersect(&q.support.dilate(m)).parts() {
                out.push((iv.lo().radians(), iv.hi().radians(), w));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

fn sum_fragments(frags: &[Fragment], alpha: f64, prefactor: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(lo, hi, w) in frags {
        acc += exp_integral(alpha, lo, hi) * w;
    }
    acc * prefactor
}

fn prefactor(n: i32, m: i32) -> f64 {
    2f64.powf(-0.5 * f64::from(n + m)) / (2.0 * PI)
}

/// `⟨x, y⟩` for atoms of two (possibly different) spectra, by Plancherel.
pub fn atom_inner_product(a: &PiecewiseSpectrum, x: Atom, b: &PiecewiseSpectrum, y: Atom) -> Complex64 {
    let frags = overlap_fragments(a, x.scale, b, y.scale);
    sum_fragments(&frags, x.freq - y.freq, prefactor(x.scale, y.scale))
}

/// `⟨D^n T^l ψ, D^{n'} T^{l'} ψ⟩`.
pub fn pair_inner_product(spec: &PiecewiseSpectrum, a: (i32, i64), b: (i32, i64)) -> Complex64 {
    atom_inner_product(spec, Atom::new(a.0, a.1), spec, Atom::new(b.0, b.1))
}

#[derive(Clone, Debug)]
pub struct GramRequest {
    pub spectrum: PiecewiseSpectrum,
    /// Scales `-N..=N`.
    pub scale_range: i32,
    /// Shifts `-L..=L`.
    pub shift_range: i64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub max_deviation: f64,
    pub worst_pair: ((i32, i64), (i32, i64)),
    pub worst_value: Complex64,
    pub entries: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// Max `|G − I|` over all index pairs of the requested block.
pub fn gram_report(req: &GramRequest) -> GramReport {
    let scales: Vec<i32> = (-req.scale_range..=req.scale_range).collect();
    let shifts: Vec<i64> = (-req.shift_range..=req.shift_range).collect();
    let mut cache: BTreeMap<(i32, i32), Vec<Fragment>> = BTreeMap::new();
    for &n in &scales {
        for &m in &scales {
            cache.insert((n, m), overlap_fragments(&req.spectrum, n, &req.spectrum, m));
        }
    }
    let mut worst = (0.0f64, ((0, 0), (0, 0)), Complex64::new(0.0, 0.0));
    let mut entries = 0;
    for &n in &scales {
        for &m in &scales {
            let frags = &cache[&(n, m)];
            let pre = prefactor(n, m);
            for &l in &shifts {
                for &k in &shifts {
                    let alpha = l as f64 * 2f64.powi(-n) - k as f64 * 2f64.powi(-m);
                    let v = sum_fragments(frags, alpha, pre);
                    let expected = if n == m && l == k { 1.0 } else { 0.0 };
                    let dev = (v - expected).norm();
                    entries += 1;
                    if dev > worst.0 {
                        worst = (dev, ((n, l), (m, k)), v);
                    }
                }
            }
        }
    }
    GramReport {
        max_deviation: worst.0,
        worst_pair: worst.1,
        worst_value: worst.2,
        entries,
        tolerance: req.tolerance,
        pass: worst.0 < req.tolerance,
    }
}

/// Residue cells of `[0, 2π)` with the `(m, coeff)` pairs meaning
/// `ψ̂(ξ0 + 2mπ) = coeff/√(2π)` for `ξ0` in the cell.
pub fn residue_cells(spec: &PiecewiseSpectrum) -> Vec<(IntervalSet, Vec<(i64, f64)>)> {
    let mut cells: Vec<(IntervalSet, Vec<(i64, f64)>)> = Vec::new();
    for p in spec.pieces() {
        let c = p.coeff.to_f64();
        for piece in period_pieces(&p.support) {
            let r = piece.image();
            let m = -piece.k;
            let mut next = Vec::with_capacity(cells.len() + 1);
            let mut fresh = r.clone();
            for (cell, contrib) in cells {
                let hit = cell.intersect(&r);
                let miss = cell.subtract(&r);
                fresh = fresh.subtract(&cell);
                if !hit.is_empty() {
                    let mut with = contrib.clone();
                    with.push((m, c));
                    next.push((hit, with));
                }
                if !miss.is_empty() {
                    next.push((miss, contrib));
                }
            }
            if !fresh.is_empty() {
                next.push((fresh, vec![(m, c)]));
            }
            cells = next;
        }
    }
    cells.sort_by(|a, b| a.0.inf().cmp(&b.0.inf()));
    cells
}

/// `e^{-i·2πm/2^n}` with the integer part of the phase removed exactly.
fn root_of_unity(m: i64, n: u32) -> Complex64 {
    let period = 1i64 << n;
    let r = m.rem_euclid(period);
    Complex64::from_polar(1.0, -2.0 * PI * r as f64 / period as f64)
}

/// `L²` distance from `e^{-iξ/2^n} ψ̂` to `{g ψ̂ : g 2π-periodic}`.
///
/// On a residue cell the optimal `g(ξ0)` is the weighted mean
/// `e^{-iξ0/2^n} Σ_m w_m e^{-i2πm/2^n}` with `w_m = c_m²/Σc²`. The common
/// phase `e^{-iξ0/2^n}` has modulus 1 and drops out, so the squared residual
/// integrates to `|cell| · Σ_m c_m²/(2π) |e^{-i2πm/2^n} − z|²` exactly.
pub fn invariance_residual(spec: &PiecewiseSpectrum, n: u32) -> f64 {
    let mut cells: Vec<f64> = residue_cells(spec)
        .into_iter()
        .map(|(cell, contrib)| {
            let len = cell.measure_f64() * PI;
            let total: f64 = contrib.iter().map(|(_, c)| c * c).sum();
            let z: Complex64 = contrib.iter().map(|&(m, c)| root_of_unity(m, n) * (c * c / total)).sum();
            let per_point: f64 =
                contrib.iter().map(|&(m, c)| c * c / (2.0 * PI) * (root_of_unity(m, n) - z).norm_sqr()).sum();
            len * per_point
        })
        .collect();
    cells.sort_by(f64::total_cmp);
    cells.iter().sum::<f64>().sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub max_error: f64,
    /// Radians.
    pub worst_point: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Checks `e^{-iξ/2^n} ψ̂(ξ) = g(ξ) ψ̂(ξ)` at seeded random points of the
/// support, where `g` is the 2π-periodic extension of `e^{-iξ/2^n}` from the
/// representative set `F`.
pub fn witness_check(spec: &PiecewiseSpectrum, f: &IntervalSet, n: u32, samples: usize, seed: u64) -> WitnessReport {
    // (lo, hi) radians, coeff, offset δ (π units) with partner x + δπ ∈ F.
    let f_pieces = period_pieces(f);
    let mut frags: Vec<(f64, f64, f64, i64)> = Vec::new();
    for p in spec.pieces() {
        for e in period_pieces(&p.support) {
            let residues = e.image();
            for fp in &f_pieces {
                let shared = residues.intersect(&fp.image());
                let sub = shared.translate(&crate::sets::RatPi::int(-2 * e.k));
                for iv in sub.parts() {
                    frags.push((iv.lo().radians(), iv.hi().radians(), p.coeff.to_f64(), 2 * (e.k - fp.k)));
                }
            }
        }
    }
    let total: f64 = frags.iter().map(|f| f.1 - f.0).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 2f64.powi(-(n as i32));
    let norm = 1.0 / (2.0 * PI).sqrt();
    let mut worst = (0.0f64, f64::NAN);
    if total <= 0.0 {
        return WitnessReport { max_error: 0.0, worst_point: f64::NAN, samples: 0, seed };
    }
    for _ in 0..samples {
        let mut pick = rng.gen::<f64>() * total;
        let mut chosen = frags[frags.len() - 1];
        for fr in &frags {
            let len = fr.1 - fr.0;
            if pick < len {
                chosen = *fr;
                break;
            }
            pick -= len;
        }
        let (lo, hi, c, delta) = chosen;
        let x = lo + rng.gen::<f64>() * (hi - lo);
        let psi = c * norm;
        let lhs = Complex64::from_polar(1.0, -x * scale) * psi;
        let g = Complex64::from_polar(1.0, -(x + delta as f64 * PI) * scale);
        let err = (lhs - g * psi).norm();
        if err > worst.0 || worst.1.is_nan() {
            worst = (err, x);
        }
    }
    WitnessReport { max_error: worst.0, worst_point: worst.1, samples, seed }
}

/// `ψ(x) = (1/√(2π)) ∫ ψ̂(ξ) e^{ixξ} dξ` in closed form.
pub fn time_domain(spec: &PiecewiseSpectrum, x: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for p in spec.pieces() {
        for iv in p.support.parts() {
            acc += exp_integral(-x, iv.lo().radians(), iv.hi().radians()) * p.coeff.to_f64();
        }
    }
    acc / (2.0 * PI)
}

/// `ψ̂` at a point given in radians.
pub fn spectrum_at(spec: &PiecewiseSpectrum, xi: f64) -> f64 {
    let u = xi / PI;
    for p in spec.pieces() {
        for iv in p.support.parts() {
            if iv.lo().to_f64() <= u && u < iv.hi().to_f64() {
                return p.coeff.to_f64() / (2.0 * PI).sqrt();
            }
        }
    }
    0.0
}

trait MeasureF64 {
    fn measure_f64(&self) -> f64;
}

impl MeasureF64 for IntervalSet {
    fn measure_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.measure().to_f64().unwrap_or(f64::NAN)
    }
}
