//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point Gauss rule.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, (k - g).abs() * h)
}

/// Globally adaptive Gauss–Kronrod quadrature on [a, b]: the interval with
/// the largest error estimate is bisected until the summed estimate drops
/// below `tol` or 4000 intervals are in use.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    while parts.len() < 4000 {
        let total_err: f64 = parts.iter().map(|p| p.3).sum();
        if total_err <= tol {
            break;
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].3.total_cmp(&parts[j].3))
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (lv, le) = gk15(&f, lo, mid);
        let (rv, re) = gk15(&f, mid, hi);
        parts.push((lo, mid, lv, le));
        parts.push((mid, hi, rv, re));
    }
    parts.iter().map(|p| p.2).sum()
}

/// Same, after splitting [a, b] into `pieces` equal panels.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, pieces: usize, tol: f64) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            integrate(
                &f,
                a + h * i as f64,
                a + h * (i + 1) as f64,
                tol / pieces as f64,
            )
        })
        .sum()
}

/// ₂F₁ with a terminating upper parameter −n, summed term by term in the
/// most literal way: each coefficient built from fresh Pochhammer products.
pub fn brute_2f1(n: u32, b: Complex64, c: Complex64, z: Complex64) -> Complex64 {
    let poch =
        |x: Complex64, k: u32| (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (x + j as f64));
    let fact = |k: u32| (1..=k).fold(1.0, |acc, j| acc * j as f64);
    (0..=n)
        .map(|k| {
            poch(Complex64::from(-(n as f64)), k) * poch(b, k) / (poch(c, k) * fact(k)) * z.powu(k)
        })
        .sum()
}

/// Σ|t_k| for the same series; the natural scale for rounding error in a
/// finite sum whose terms may cancel.
pub fn brute_2f1_abs_sum(n: u32, b: Complex64, c: Complex64, z: Complex64) -> f64 {
    let poch =
        |x: Complex64, k: u32| (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (x + j as f64));
    let fact = |k: u32| (1..=k).fold(1.0, |acc, j| acc * j as f64);
    (0..=n)
        .map(|k| {
            (poch(Complex64::from(-(n as f64)), k) * poch(b, k) / (poch(c, k) * fact(k))
                * z.powu(k))
            .norm()
        })
        .sum()
}

/// B(x, m) for positive integer m: (m−1)! / (x(x+1)…(x+m−1)).
pub fn beta_integer_second(x: f64, m: u32) -> f64 {
    let fact: f64 = (1..m).map(|j| j as f64).product();
    let rising: f64 = (0..m).map(|j| x + j as f64).product();
    fact / rising
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
