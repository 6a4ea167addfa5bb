// SPDX-License-Identifier: Apache-2.0

//! Dense matrix exponential by scaling and squaring with diagonal Padé
//! approximants (degree 3 to 13, Higham's backward-error thresholds).

use nalgebra::{ComplexField, DMatrix, Matrix3};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn one_norm<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.clone().modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, s: f64) -> DMatrix<T> {
    m.map(|v| v * T::from_real(s))
}

/// Low-degree approximant: returns `(U, V)` for coefficient table `b`.
fn pade_low<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, b: &[f64]) -> (DMatrix<T>, DMatrix<T>) {
    let n = a.nrows();
    let ident = DMatrix::<T>::identity(n, n);
    let a2 = a * a;
    let mut odd = scaled(&ident, b[1]);
    let mut even = scaled(&ident, b[0]);
    let mut power = ident;
    for k in (2..b.len()).step_by(2) {
        power = &power * &a2;
        even += scaled(&power, b[k]);
        if k + 1 < b.len() {
            odd += scaled(&power, b[k + 1]);
        }
    }
    (a * odd, even)
}

fn pade13<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> (DMatrix<T>, DMatrix<T>) {
    let n = a.nrows();
    let ident = DMatrix::<T>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = &B13;
    let inner_u = &a6 * (scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]));
    let u = a * (inner_u + scaled(&a6, b[7]) + scaled(&a4, b[5]) + scaled(&a2, b[3]) + scaled(&ident, b[1]));
    let inner_v = &a6 * (scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]));
    let v = inner_v + scaled(&a6, b[6]) + scaled(&a4, b[4]) + scaled(&a2, b[2]) + scaled(&ident, b[0]);
    (u, v)
}

/// `exp(a)` for a square dense matrix.
///
/// Panics if `a` is not square or contains non-finite entries.
pub fn expm<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> DMatrix<T> {
    assert!(a.is_square(), "expm requires a square matrix");
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    assert!(norm.is_finite(), "expm of a non-finite matrix");

    let (u, v, squarings) = if norm <= THETA_3 {
        let (u, v) = pade_low(a, &B3);
        (u, v, 0)
    } else if norm <= THETA_5 {
        let (u, v) = pade_low(a, &B5);
        (u, v, 0)
    } else if norm <= THETA_7 {
        let (u, v) = pade_low(a, &B7);
        (u, v, 0)
    } else if norm <= THETA_9 {
        let (u, v) = pade_low(a, &B9);
        (u, v, 0)
    } else {
        let s = (norm / THETA_13).log2().ceil().max(0.0) as i32;
        let a_s = scaled(a, 2f64.powi(-s));
        let (u, v) = pade13(&a_s);
        (u, v, s)
    };

    let numer = &v + &u;
    let denom = v - u;
    let mut r = denom.lu().solve(&numer).expect("Padé denominator is singular");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}

/// `exp(a)` for a real 3×3 matrix.
pub fn expm3(a: &Matrix3<f64>) -> Matrix3<f64> {
    let d = DMatrix::from_column_slice(3, 3, a.as_slice());
    let e = expm(&d);
    Matrix3::from_column_slice(e.as_slice())
}
