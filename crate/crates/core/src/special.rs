//! Bessel and first-kind Hankel functions of integer order on the positive
//! real axis.
//!
//! Orders 0 and 1 use the ascending series below `x = 12` and the Hankel
//! asymptotic expansion from 12 on; order 2 follows from the three-term
//! recurrence. General integer orders of `J` use Miller's backward
//! recurrence.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::{Error, Result, C64};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 12.0;

/// (J₀, Y₀) or (J₁, Y₁) by the ascending series.
fn series(order: u32, x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let lg = (0.5 * x).ln();
    if order == 0 {
        let (mut term, mut j, mut ysum, mut h) = (1.0, 1.0, 0.0, 0.0);
        for k in 1..200 {
            let kf = k as f64;
            term *= -t / (kf * kf);
            h += 1.0 / kf;
            j += term;
            ysum -= h * term;
            if term.abs() < 1e-18 * j.abs().max(1e-300) && k > 3 {
                break;
            }
        }
        (j, 2.0 / PI * ((lg + EULER_GAMMA) * j + ysum))
    } else {
        // term_k = (−t)^k / (k!(k+1)!)
        let (mut term, mut s, mut ysum) = (1.0, 1.0, 1.0);
        let (mut hk, mut hk1) = (0.0, 1.0);
        for k in 1..200 {
            let kf = k as f64;
            term *= -t / (kf * (kf + 1.0));
            hk += 1.0 / kf;
            hk1 += 1.0 / (kf + 1.0);
            s += term;
            ysum += (hk + hk1) * term;
            if term.abs() < 1e-18 * s.abs().max(1e-300) && k > 3 {
                break;
            }
        }
        let j = 0.5 * x * s;
        let y = 2.0 / PI * (lg + EULER_GAMMA) * j - 2.0 / (PI * x) - x / (2.0 * PI) * ysum;
        (j, y)
    }
}

/// H_ν⁽¹⁾(x) for ν ∈ {0, 1} by the Hankel asymptotic expansion.
fn asymptotic(order: u32, x: f64) -> C64 {
    let mu = 4.0 * (order * order) as f64;
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= C64::new(0.0, 1.0) * ((mu - odd * odd) / (kf * 8.0 * x));
        let m = term.norm();
        if m >= last {
            break;
        }
        sum += term;
        last = m;
        if m < 1e-17 {
            break;
        }
    }
    let phase = x - (order as f64) * FRAC_PI_2 - FRAC_PI_4;
    C64::from_polar((2.0 / (PI * x)).sqrt(), phase) * sum
}

fn j_y(order: u32, x: f64) -> (f64, f64) {
    if x < SERIES_LIMIT {
        series(order, x)
    } else {
        let h = asymptotic(order, x);
        (h.re, h.im)
    }
}

fn check_domain(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Hankel argument must be positive and finite (got {x})")))
    }
}

/// H_n⁽¹⁾(x) for n ∈ {0, 1, 2}, x > 0.
pub fn hankel1(order: u32, x: f64) -> Result<C64> {
    check_domain(x)?;
    match order {
        0 | 1 => {
            let (j, y) = j_y(order, x);
            Ok(C64::new(j, y))
        }
        2 => Ok(hankel012(x)?[2]),
        _ => Err(Error::Domain(format!("Hankel order {order} not supported (0, 1, 2 only)"))),
    }
}

/// (H₀, H₁, H₂) at once, sharing work.
pub fn hankel012(x: f64) -> Result<[C64; 3]> {
    check_domain(x)?;
    let (j0, y0) = j_y(0, x);
    let (j1, y1) = j_y(1, x);
    let h0 = C64::new(j0, y0);
    let h1 = C64::new(j1, y1);
    Ok([h0, h1, h1 * (2.0 / x) - h0])
}

pub fn bessel_j0(x: f64) -> f64 {
    j_y(0, x.abs()).0
}

pub fn bessel_j1(x: f64) -> f64 {
    let v = j_y(1, x.abs()).0;
    if x < 0.0 {
        -v
    } else {
        v
    }
}

pub fn bessel_y0(x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(j_y(0, x).1)
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(j_y(1, x).1)
}

/// J_n(x) for n = 0..=nmax, x ≥ 0, by Miller's backward recurrence
/// normalised with J₀ + 2ΣJ_{2k} = 1.
pub fn bessel_j_all(nmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; nmax + 1];
        v[0] = 1.0;
        return v;
    }
    let big = nmax.max(x as usize);
    let mut start = big + 20 + (40.0 * big as f64).sqrt() as usize;
    start += start % 2;
    let mut out = vec![0.0; nmax + 1];
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        if k <= nmax {
            out[k] = j;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j } else { 2.0 * j };
        }
        if k == 0 {
            break;
        }
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if j.abs() > 1e250 {
            // rescale to stay in range
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// J_n(x) and J_n'(x).
pub fn bessel_jn_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let all = bessel_j_all(n + 1, x);
    let jn = all[n];
    let d = if n == 0 { -all[1] } else { all[n - 1] - n as f64 / x * jn };
    (jn, d)
}
