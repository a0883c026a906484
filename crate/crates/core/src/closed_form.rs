//! Analytic side of the principal ratio: `σ`, the three-term recurrence
//! `u_{i+1} = λ u_i - u_{i-1}`, the pendant-path ratio `f(σ, j)`, kite
//! spectral-radius bounds, and kite ratios evaluated in log space.
//!
//! For `λ ≥ 2` write `λ = σ + 1/σ` with `σ ≥ 1`. Then
//! `u_i = (σ^{i+1} - σ^{-i-1}) / (σ - σ^{-1})`, and along a pendant path
//! `x_1, ..., x_j` the eigenvector entries satisfy `x_j = u_{j-1} x_1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, KiteParams, MAX_VERTICES};
use crate::spectral;

fn require_at_least_two(lambda1: f64) -> Result<()> {
    if lambda1 >= 2.0 {
        Ok(())
    } else {
        Err(Error::LambdaBelowTwo(lambda1))
    }
}

/// The larger root `σ` of `x² - λx + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaValue {
    pub lambda1: f64,
    pub sigma: f64,
}

impl SigmaValue {
    /// `ln σ`, accurate as `λ → 2`.
    pub fn ln_sigma(&self) -> f64 {
        ln_sigma(self.lambda1)
    }
}

pub fn sigma_of_lambda(lambda1: f64) -> Result<SigmaValue> {
    require_at_least_two(lambda1)?;
    // (λ-2)(λ+2) avoids cancelling in λ² - 4 near λ = 2
    let root = ((lambda1 - 2.0) * (lambda1 + 2.0)).sqrt();
    Ok(SigmaValue {
        lambda1,
        sigma: 0.5 * (lambda1 + root),
    })
}

/// `ln σ(λ)` for `λ ≥ 2`, computed as `ln(1 + (σ - 1))`.
fn ln_sigma(lambda1: f64) -> f64 {
    let t = lambda1 - 2.0;
    (0.5 * (t + (t * (lambda1 + 2.0)).sqrt())).ln_1p()
}

/// `u_i(λ)` by forward recurrence, one rounding per step. Overflows to
/// infinity for very long sequences; use [`pendant_path_gamma`] there.
pub fn cheb_u(i: usize, lambda1: f64) -> Result<f64> {
    require_at_least_two(lambda1)?;
    let (mut prev, mut cur) = (1.0f64, lambda1);
    if i == 0 {
        return Ok(prev);
    }
    for _ in 1..i {
        let next = lambda1.mul_add(cur, -prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `u_0, u_1, ...` for a fixed `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSequence {
    pub lambda1: f64,
    pub u: Vec<f64>,
}

impl ChebSequence {
    /// First `len` terms (at least two).
    pub fn new(lambda1: f64, len: usize) -> Result<Self> {
        require_at_least_two(lambda1)?;
        let len = len.max(2);
        let mut u = Vec::with_capacity(len);
        u.push(1.0);
        u.push(lambda1);
        for i in 2..len {
            u.push(lambda1.mul_add(u[i - 1], -u[i - 2]));
        }
        Ok(ChebSequence { lambda1, u })
    }
}

/// `u_i` from the closed form in `σ`; `i + 1` when `|σ - 1| < 1e-9`, where the
/// closed form is `0/0`.
pub fn cheb_u_closed(i: usize, lambda1: f64) -> Result<f64> {
    let sv = sigma_of_lambda(lambda1)?;
    if (sv.sigma - 1.0).abs() < 1e-9 {
        return Ok((i + 1) as f64);
    }
    let s = sv.sigma;
    let k = (i + 1) as i32;
    Ok((s.powi(k) - s.powi(-k)) / (s - 1.0 / s))
}

/// `ln f(σ, j)` where `f(σ, j) = (σ^j - σ^{-j}) / (σ - σ^{-1}) = u_{j-1}(λ)`,
/// the ratio between the two ends of a pendant path on `j` vertices.
///
/// Written as `(j-1) L + ln(1 - e^{-2jL}) - ln(1 - e^{-2L})` with
/// `L = ln σ`, so it neither overflows for huge `j` nor cancels as `σ → 1`.
pub fn pendant_path_gamma(j: usize, lambda1: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::OutOfRange("pendant path needs at least one vertex".into()));
    }
    require_at_least_two(lambda1)?;
    let l = ln_sigma(lambda1);
    if l == 0.0 {
        return Ok((j as f64).ln());
    }
    let jf = j as f64;
    Ok((jf - 1.0) * l + (-(-2.0 * jf * l).exp_m1()).ln() - (-(-2.0 * l).exp_m1()).ln())
}

/// Open interval containing `λ₁(P_r · K_s)` for every `r ≥ 2`.
pub fn kite_lambda_bounds(s: usize) -> Result<(f64, f64)> {
    if s < 3 {
        return Err(Error::OutOfRange(format!("kite bounds need s >= 3, got {s}")));
    }
    let base = (s - 1) as f64;
    let s = s as f64;
    Ok((base + 1.0 / (s * (s - 1.0)), base + 1.0 / ((s - 1.0) * (s - 1.0))))
}

/// Truncation of `σ = λ - λ^{-1} - λ^{-3} - 2λ^{-5} - 5λ^{-7} - ...` after
/// `order` correction terms. The coefficients are Catalan numbers, since
/// `σ = λ - 1/σ` and `1/σ = Σ C_k λ^{-(2k+1)}`.
pub fn sigma_series(lambda1: f64, order: u32) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    if !(lambda1 >= 3.0) {
        return Err(Error::OutOfRange(format!(
            "sigma series needs lambda1 >= 3, got {lambda1}"
        )));
    }
    const CATALAN: [f64; 3] = [1.0, 1.0, 2.0];
    let inv = 1.0 / lambda1;
    let inv2 = inv * inv;
    let mut term = inv;
    let mut correction = 0.0;
    for c in &CATALAN[..order as usize] {
        correction += c * term;
        term *= inv2;
    }
    Ok(lambda1 - correction)
}

/// Residual of the kite's scalar characteristic equation at `λ`.
///
/// With the pendant entry set to 1, path entries are `u_0, ..., u_{r-1}` and
/// the `s - 1` clique vertices away from the attachment share the value
/// `u_{r-1} / (λ - s + 2)`. The attachment equation divided by `u_{r-1}`
/// reads `u_r / u_{r-1} = (s - 1) / (λ - s + 2)`; the ratio on the left is the
/// continued fraction `ρ_1 = λ`, `ρ_{i+1} = λ - 1/ρ_i`, which never overflows.
fn kite_characteristic(r: usize, s: usize, lambda1: f64) -> f64 {
    let mut rho = lambda1;
    for _ in 1..r {
        let next = lambda1 - 1.0 / rho;
        if next == rho {
            break;
        }
        rho = next;
    }
    rho - (s - 1) as f64 / (lambda1 - s as f64 + 2.0)
}

/// `λ₁(P_r · K_s)` by bisection of the scalar characteristic equation inside
/// the open interval of [`kite_lambda_bounds`]. Works for any `r`.
pub fn kite_lambda_scalar(p: KiteParams) -> Result<f64> {
    check_kite(p)?;
    let (low, high) = kite_lambda_bounds(p.s)?;
    let at_low = kite_characteristic(p.r, p.s, low);
    let at_high = kite_characteristic(p.r, p.s, high);
    // the equation is increasing in λ; a root outside the bracket is a bug
    if !(at_low < 0.0 && at_high > 0.0) {
        let lambda1 = if at_low >= 0.0 { low } else { high };
        return Err(Error::OutsideKiteBounds {
            r: p.r,
            s: p.s,
            lambda1,
            low,
            high,
        });
    }
    let (mut lo, mut hi) = (low, high);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if kite_characteristic(p.r, p.s, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // lo and hi are adjacent doubles around the root. For large s the root
    // can sit within one ulp of the lower end, where the midpoint would round
    // onto the endpoint itself.
    Ok(if hi < high { hi } else { lo })
}

fn check_kite(p: KiteParams) -> Result<()> {
    if p.r < 2 || p.s < 3 {
        return Err(Error::OutOfRange(format!(
            "kite ratio needs r >= 2 and s >= 3, got r={}, s={}",
            p.r, p.s
        )));
    }
    Ok(())
}

/// `λ₁(P_r · K_s)`: the power iteration when the kite fits in a [`Graph`],
/// the scalar equation otherwise. Either way the value is checked against
/// [`kite_lambda_bounds`].
pub fn kite_lambda(p: KiteParams, tol: f64) -> Result<f64> {
    check_kite(p)?;
    let lambda1 = if p.vertex_count() <= MAX_VERTICES {
        spectral::principal_eigenpair(&Graph::kite(p)?, tol)?.lambda1
    } else {
        kite_lambda_scalar(p)?
    };
    let (low, high) = kite_lambda_bounds(p.s)?;
    if !(low < lambda1 && lambda1 < high) {
        return Err(Error::OutsideKiteBounds {
            r: p.r,
            s: p.s,
            lambda1,
            low,
            high,
        });
    }
    Ok(lambda1)
}

/// `ln γ(P_r · K_s)`. The path is pendant, so the ratio is exactly
/// `f(σ, r)` at the kite's own `λ₁`.
pub fn kite_gamma(r: usize, s: usize, tol: f64) -> Result<f64> {
    let lambda1 = kite_lambda(KiteParams::new(r, s), tol)?;
    pendant_path_gamma(r, lambda1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_of_lambda(2.0).unwrap().sigma, 1.0);
        assert_eq!(sigma_of_lambda(2.5).unwrap().sigma, 2.0);
        let s = sigma_of_lambda(3.0).unwrap().sigma;
        assert!((s - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((s + 1.0 / s - 3.0).abs() < 1e-15);
        assert!((s - 2.6180339887).abs() < 1e-10);
        assert_eq!(sigma_of_lambda(1.99), Err(Error::LambdaBelowTwo(1.99)));
        assert!(sigma_of_lambda(f64::NAN).is_err());
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(cheb_u(2, 3.0).unwrap(), 8.0);
        assert_eq!(cheb_u(5, 2.0).unwrap(), 6.0);
        assert_eq!(cheb_u(3, 2.5).unwrap(), 10.625);
        assert_eq!(cheb_u(0, 7.0).unwrap(), 1.0);
        assert_eq!(cheb_u(1, 7.0).unwrap(), 7.0);
        assert!(cheb_u(3, 1.5).is_err());
        let seq = ChebSequence::new(2.5, 4).unwrap();
        assert_eq!(seq.u, vec![1.0, 2.5, 5.25, 10.625]);
        assert_eq!(cheb_u_closed(5, 2.0).unwrap(), 6.0);
    }

    #[test]
    fn pendant_path_examples() {
        assert!((pendant_path_gamma(2, 3.0).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((pendant_path_gamma(3, 3.0).unwrap() - 8f64.ln()).abs() < 1e-15);
        for lambda in [2.0, 2.0 + 1e-14, 2.5, 40.0] {
            assert_eq!(pendant_path_gamma(1, lambda).unwrap(), 0.0);
        }
        assert!((pendant_path_gamma(7, 2.0).unwrap() - 7f64.ln()).abs() < 1e-15);
        assert!(pendant_path_gamma(0, 3.0).is_err());
        assert!(pendant_path_gamma(3, 1.0).is_err());
    }

    #[test]
    fn pendant_path_is_continuous_at_two() {
        // u_{j-1}(2 + ε) = j + O(ε)
        for eps in [1e-16, 1e-13, 1e-10, 1e-8] {
            let j = 50;
            let log = pendant_path_gamma(j, 2.0 + eps).unwrap();
            let by_recurrence = cheb_u(j - 1, 2.0 + eps).unwrap().ln();
            assert!((log - by_recurrence).abs() < 1e-9, "eps={eps}");
        }
    }

    #[test]
    fn pendant_path_handles_huge_paths() {
        let log = pendant_path_gamma(1_000_000, 3.0).unwrap();
        let expected = 999_999.0 * ln_sigma(3.0) - (1.0 - 1.0 / sigma_of_lambda(3.0).unwrap().sigma.powi(2)).ln();
        assert!(log.is_finite());
        assert!((log - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn bounds() {
        let (lo, hi) = kite_lambda_bounds(3).unwrap();
        assert!((lo - (2.0 + 1.0 / 6.0)).abs() < 1e-15 && (hi - 2.25).abs() < 1e-15);
        let (lo, hi) = kite_lambda_bounds(4).unwrap();
        assert!((lo - (3.0 + 1.0 / 12.0)).abs() < 1e-15 && (hi - (3.0 + 1.0 / 9.0)).abs() < 1e-15);
        let (lo, hi) = kite_lambda_bounds(10).unwrap();
        assert!((lo - (9.0 + 1.0 / 90.0)).abs() < 1e-15 && (hi - (9.0 + 1.0 / 81.0)).abs() < 1e-15);
        assert!(kite_lambda_bounds(2).is_err());
    }

    #[test]
    fn series_examples() {
        assert!((sigma_series(10.0, 1).unwrap() - 9.9).abs() < 1e-15);
        let exact10 = sigma_of_lambda(10.0).unwrap().sigma;
        assert!((exact10 - (5.0 + 24f64.sqrt())).abs() < 1e-14);
        assert!((sigma_series(10.0, 1).unwrap() - exact10).abs() < 1.1e-3);
        let exact100 = sigma_of_lambda(100.0).unwrap().sigma;
        let s2 = sigma_series(100.0, 2).unwrap();
        assert!((s2 - (100.0 - 0.01 - 1e-6)).abs() < 1e-13);
        assert!((s2 - exact100).abs() < 3e-10);
        let s3 = sigma_series(3.0, 3).unwrap();
        assert!((s3 - (3.0 - 1.0 / 3.0 - 1.0 / 27.0 - 2.0 / 243.0)).abs() < 1e-15);
        assert!((s3 - sigma_of_lambda(3.0).unwrap().sigma).abs() < 4e-3);
        assert_eq!(sigma_series(10.0, 4), Err(Error::UnsupportedOrder(4)));
        assert_eq!(sigma_series(10.0, 0), Err(Error::UnsupportedOrder(0)));
        assert!(sigma_series(2.5, 1).is_err());
    }

    #[test]
    fn series_remainder_exceeds_next_catalan_term() {
        // the tail after order k starts with C_k λ^{-(2k+1)} and every later
        // term is positive, so the truncation error is strictly larger
        for lambda in [3.0, 5.0, 10.0] {
            let sigma = sigma_of_lambda(lambda).unwrap().sigma;
            let err = sigma_series(lambda, 3).unwrap() - sigma;
            let leading = 5.0 * lambda.powi(-7);
            assert!(err > leading, "λ={lambda}: {err} vs {leading}");
            assert!(err < leading / (1.0 - 4.0 / (lambda * lambda)));
        }
    }

    #[test]
    fn kite_routes_agree() {
        for r in 2..=12 {
            for s in 3..=20 {
                let p = KiteParams::new(r, s);
                let by_power = kite_lambda(p, 1e-12).unwrap();
                let by_scalar = kite_lambda_scalar(p).unwrap();
                assert!((by_power - by_scalar).abs() < 1e-11, "r={r} s={s}");
            }
        }
    }

    #[test]
    fn kite_gamma_examples() {
        const PAW_LAMBDA: f64 = 2.1700864866260337;
        assert!((kite_gamma(2, 3, 1e-12).unwrap() - PAW_LAMBDA.ln()).abs() < 1e-11);
        for s in 3..=12 {
            let lambda = kite_lambda(KiteParams::new(2, s), 1e-12).unwrap();
            assert!((kite_gamma(2, s, 1e-12).unwrap() - lambda.ln()).abs() < 1e-12);
        }
        // dense eigensolve of P_3·K_3 (numpy): γ = 3.9032119259115534
        assert!((kite_gamma(3, 3, 1e-12).unwrap() - 3.9032119259115534f64.ln()).abs() < 1e-10);
        let lambda = kite_lambda(KiteParams::new(3, 3), 1e-12).unwrap();
        assert!((kite_gamma(3, 3, 1e-12).unwrap() - (lambda * lambda - 1.0).ln()).abs() < 1e-12);
        assert!(kite_gamma(1, 3, 1e-12).is_err());
        assert!(kite_gamma(3, 2, 1e-12).is_err());
    }

    #[test]
    fn root_next_to_the_lower_end() {
        // λ₁(P_411·K_1590) lies within an ulp of s - 1 + 1/(s(s-1))
        let p = KiteParams::new(411, 1590);
        let (low, high) = kite_lambda_bounds(p.s).unwrap();
        let lambda = kite_lambda_scalar(p).unwrap();
        assert!(low < lambda && lambda < high);
        assert!(kite_lambda(p, 1e-12).is_ok());
    }

    #[test]
    fn huge_kite_stays_finite() {
        let log = kite_gamma(100_000, 50, 1e-12).unwrap();
        let lambda = kite_lambda_scalar(KiteParams::new(100_000, 50)).unwrap();
        let approx = 99_999.0 * sigma_of_lambda(lambda).unwrap().ln_sigma();
        assert!(log.is_finite());
        assert!((log - approx).abs() / approx < 1e-6);
    }
}
