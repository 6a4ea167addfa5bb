// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss–Kronrod (7, 15) quadrature.

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

/// Gauss weights on the odd Kronrod nodes (indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 50;

/// One (7, 15) panel: `(kronrod, |kronrod − gauss|)`.
fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// `∫ₐᵇ f` to relative tolerance `rel_tol` (with an absolute floor
/// `abs_tol`), by recursive panel bisection.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (whole, err) = panel(f, a, b);
    refine(f, a, b, whole, err, abs_tol.max(rel_tol * whole.abs()), 0)
}

fn refine(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, err: f64, tol: f64, depth: u32) -> f64 {
    if err <= tol || depth >= MAX_DEPTH {
        return whole;
    }
    let m = 0.5 * (a + b);
    let (left, el) = panel(f, a, m);
    let (right, er) = panel(f, m, b);
    refine(f, a, m, left, el, 0.5 * tol, depth + 1) + refine(f, m, b, right, er, 0.5 * tol, depth + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(&|x: f64| x.powi(7) - 3.0 * x * x, -1.0, 2.0, 1e-12, 0.0);
        let want = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0);
        assert!((v - want).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let v = integrate(&|x: f64| (2.0 * x).cos() * (-0.1 * x).exp(), 0.0, 60.0, 1e-11, 0.0);
        let want = {
            let (a, w) = (-0.1f64, 2.0f64);
            let e = (a * 60.0).exp();
            (e * (a * (w * 60.0).cos() + w * (w * 60.0).sin()) - a) / (a * a + w * w)
        };
        assert!((v - want).abs() < 1e-11 * want.abs().max(1.0), "{v} {want}");
    }

    #[test]
    fn sharp_peak() {
        let v = integrate(&|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10, 0.0);
        let want = 2.0 * (1.0 / 1e-2f64) * (1.0 / 1e-2f64).atan();
        assert!(((v - want) / want).abs() < 1e-9);
    }
}
