//! Accelerated summation of slowly convergent series.
//!
//! Terms are consumed strictly in order `n = 1, 2, 3, ...` so callers can
//! keep incremental state (harmonic prefixes) inside the term closure.
//!
//! Strategy: consecutive terms are paired (which turns alternating and
//! mixed-sign series into absolutely convergent smooth ones and costs
//! nothing for series that are already smooth), partial sums are recorded at
//! geometric checkpoints `m0, 2 m0, ..., m0 2^(c-1)`, and the tail is
//! modeled on the basis `{ m^-j log^k m }` whose coefficients are
//! eliminated by solving the small linear system through the checkpoints.
//! Logarithmic basis terms appear whenever a weight-1 harmonic factor is
//! present; the caller passes the highest log power. The error estimate is
//! the difference between the extrapolants of the last two checkpoint
//! windows, with a safety factor.

use crate::error::{Error, Result};
use crate::hp::{self, Accel, BigReal, EvalConfig};

use super::{Method, SeriesResult};

/// Sums `sum_{n>=1} term(n)` to the configured tolerance.
///
/// `log_power` is the highest power of `log n` in the asymptotic expansion
/// of the smooth part of the terms.
pub(crate) fn sum_series(
    mut term: impl FnMut(u64) -> BigReal,
    log_power: u32,
    cfg: &EvalConfig,
) -> Result<SeriesResult> {
    cfg.validate()?;
    match cfg.accel {
        Accel::Extrapolated => extrapolated(&mut term, log_power, cfg),
        Accel::DirectTailBound => direct(&mut term, cfg),
    }
}

fn extrapolated(
    term: &mut impl FnMut(u64) -> BigReal,
    log_power: u32,
    cfg: &EvalConfig,
) -> Result<SeriesResult> {
    let k = log_power;
    // The tail-elimination solve cancels digits; carry extra internal
    // precision when the target tolerance is tight.
    let tol_digits = (-cfg.tol.log10()).ceil().max(0.0) as u32;
    let digits = cfg.digits.max(tol_digits + 25);
    let pair_budget = (cfg.max_terms / 2).max(8);

    // Checkpoint count: enough to fit the basis twice over (one extra for
    // log-bearing tails), shrunk only if the term budget is tight.
    let mut c = cfg.checkpoints.max(3 * (k + 1) + 2) + u32::from(k >= 1);
    while c > (k + 3).max(4) && (pair_budget >> (c - 1)) < 16 {
        c -= 1;
    }
    let m0_target = if cfg.tol >= 1e-15 { 64 } else { 256 };
    let m0 = prev_pow2((pair_budget >> (c - 1)).clamp(4, m0_target));
    let n_basis = (((c - 2) / (k + 1)).max(1)) as usize; // powers m^-1..m^-J
    let unknowns = 1 + n_basis * (k as usize + 1);
    let m_max = m0 << (c - 1);

    let ln2 = hp::log2(&EvalConfig { digits, ..*cfg });
    let log2_m0 = m0.ilog2();

    let mut sum = BigReal::zero(digits);
    let mut checkpoints: Vec<(u64, BigReal)> = Vec::with_capacity(c as usize);
    let mut next_cp = m0;
    for m in 1..=m_max {
        let t = term(2 * m - 1) + term(2 * m);
        if !t.is_finite() {
            return Err(Error::Numeric(format!("non-finite term at n = {}", 2 * m)));
        }
        sum = sum + t;
        if m == next_cp {
            checkpoints.push((m, sum.clone()));
            next_cp *= 2;
        }
    }

    let limit_at = |window: &[(u64, BigReal)]| -> Option<BigReal> {
        // S(m) = L - sum a_{j,l} log^l(m)/m^j ; solve for L.
        let rows = window.len();
        let mut a = vec![vec![BigReal::zero(digits); rows]; rows];
        let mut b = Vec::with_capacity(rows);
        for (r, (m, s)) in window.iter().enumerate() {
            let i = m.ilog2() - log2_m0;
            let ln_m = &ln2 * &BigReal::from_u64((log2_m0 + i) as u64, digits);
            a[r][0] = BigReal::one(digits);
            let inv_m = BigReal::from_u64(*m, digits).recip();
            let mut col = 1;
            let mut mp = inv_m.clone();
            for _ in 0..n_basis {
                let mut lp = BigReal::one(digits);
                for _ in 0..=k {
                    a[r][col] = &mp * &lp;
                    lp = &lp * &ln_m;
                    col += 1;
                }
                mp = &mp * &inv_m;
            }
            b.push(s.clone());
        }
        solve(a, b).map(|x| x[0].clone())
    };

    let n_cp = checkpoints.len();
    if n_cp < unknowns + 1 {
        // Degenerate budget; fall back to the direct bound on what we have.
        let err = (&checkpoints[n_cp - 1].1 - &checkpoints[n_cp - 2].1).abs()
            * BigReal::from_i64(8, digits)
            + noise_floor(&sum, digits);
        return finish(sum, 2 * m_max, err, Method::Extrapolated, cfg);
    }

    let full = limit_at(&checkpoints[n_cp - unknowns..]);
    let prev = limit_at(&checkpoints[n_cp - unknowns - 1..n_cp - 1]);
    let (value, err_raw) = match (full, prev) {
        (Some(f), Some(p)) => {
            let e = (&f - &p).abs();
            (f, e)
        }
        // Singular fit (e.g. identically-zero tail): the plain sum is exact
        // to rounding.
        _ => (sum.clone(), (&checkpoints[n_cp - 1].1 - &checkpoints[n_cp - 2].1).abs()),
    };
    let err = err_raw * BigReal::from_i64(8, digits) + noise_floor(&value, digits);
    finish(value, 2 * m_max, err, Method::Extrapolated, cfg)
}

fn direct(term: &mut impl FnMut(u64) -> BigReal, cfg: &EvalConfig) -> Result<SeriesResult> {
    let digits = cfg.digits;
    let pair_budget = (cfg.max_terms / 2).max(8);
    let tol = cfg.tol_real();

    let mut sum = BigReal::zero(digits);
    let mut m = 0u64;
    let mut last_abs: Option<(u64, BigReal)> = None;
    let mut bound = None;
    while m < pair_budget {
        m += 1;
        let t = term(2 * m - 1) + term(2 * m);
        if !t.is_finite() {
            return Err(Error::Numeric(format!("non-finite term at n = {}", 2 * m)));
        }
        sum = sum + &t;
        if m.is_power_of_two() && m >= 16 {
            let abs_t = t.abs();
            if let Some((m_prev, prev)) = last_abs.take() {
                if !prev.is_zero() && !abs_t.is_zero() {
                    let ratio = (&prev / &abs_t).approx_f64();
                    let s = ratio.log2() / ((m / m_prev) as f64).log2();
                    if s > 1.2 {
                        let tail = &abs_t * &BigReal::from_u64(m, digits)
                            / BigReal::from_f64(s - 1.0, digits);
                        let b = &tail + &tail;
                        if b < tol {
                            bound = Some(b);
                            break;
                        }
                        bound = Some(b);
                    }
                } else if abs_t.is_zero() {
                    bound = Some(BigReal::zero(digits));
                    break;
                }
            }
            last_abs = Some((m, abs_t));
        }
    }
    let err = match bound {
        Some(b) => b + noise_floor(&sum, digits),
        None => {
            return Err(Error::Tolerance { achieved: f64::INFINITY, requested: cfg.tol });
        }
    };
    finish(sum, 2 * m, err, Method::DirectTailBound, cfg)
}

fn finish(
    value: BigReal,
    terms_used: u64,
    err: BigReal,
    method: Method,
    cfg: &EvalConfig,
) -> Result<SeriesResult> {
    if err > cfg.tol_real() {
        return Err(Error::Tolerance { achieved: err.approx_f64(), requested: cfg.tol });
    }
    Ok(SeriesResult { value, terms_used, err_estimate: err, method })
}

/// Rounding-noise floor for the extrapolation solve.
fn noise_floor(value: &BigReal, digits: u32) -> BigReal {
    let scale = value.abs() + BigReal::one(digits);
    scale * BigReal::from_i64(10, digits).powi(-(digits as i64 - 10))
}

fn prev_pow2(x: u64) -> u64 {
    let x = x.max(1);
    1 << (63 - x.leading_zeros() as u64)
}

/// Gaussian elimination with partial pivoting; `None` on a singular system.
fn solve(mut a: Vec<Vec<BigReal>>, mut b: Vec<BigReal>) -> Option<Vec<BigReal>> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                a[r][c] = &a[r][c] - &(&f * &a[col][c]);
            }
            b[r] = &b[r] - &(&f * &b[col]);
        }
    }
    let digits = b[0].digits();
    let mut x = vec![BigReal::zero(digits); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series_is_recovered() {
        let cfg = EvalConfig::default();
        // sum 2^-n = 1
        let r = sum_series(|n| BigReal::from_i64(2, 40).powi(-(n as i64)), 0, &cfg).unwrap();
        let err = (&r.value - &BigReal::one(40)).abs();
        assert!(err < BigReal::from_f64(1e-30, 40));
    }

    #[test]
    fn basel_series_needs_extrapolation() {
        let cfg = EvalConfig::default();
        let r = sum_series(|n| BigReal::from_u64(n, 40).powi(-2), 0, &cfg).unwrap();
        let expect = hp::zeta(2, &cfg).unwrap();
        assert!((&r.value - &expect).abs() < BigReal::from_f64(1e-12, 40));
        assert!(r.err_estimate < cfg.tol_real());
    }

    #[test]
    fn alternating_harmonic_series() {
        let cfg = EvalConfig::default();
        let r = sum_series(
            |n| {
                let t = BigReal::from_u64(n, 40).recip();
                if n % 2 == 1 {
                    t
                } else {
                    -t
                }
            },
            0,
            &cfg,
        )
        .unwrap();
        let expect = hp::log2(&cfg);
        assert!((&r.value - &expect).abs() < BigReal::from_f64(1e-12, 40));
    }

    #[test]
    fn logarithmic_tail_series() {
        // sum H_n / n^2 = 2 zeta(3); tail carries log n / n terms.
        let cfg = EvalConfig::default();
        let mut h = BigReal::zero(40);
        let r = sum_series(
            |n| {
                h = &h + &BigReal::from_u64(n, 40).recip();
                &h * &BigReal::from_u64(n, 40).powi(-2)
            },
            1,
            &cfg,
        )
        .unwrap();
        let expect = hp::zeta(3, &cfg).unwrap() + hp::zeta(3, &cfg).unwrap();
        assert!(
            (&r.value - &expect).abs() < BigReal::from_f64(1e-11, 40),
            "value {} expect {}",
            r.value,
            expect
        );
    }

    #[test]
    fn direct_mode_fast_series() {
        let cfg = EvalConfig { accel: Accel::DirectTailBound, tol: 1e-8, ..Default::default() };
        let r = sum_series(|n| BigReal::from_u64(n, 40).powi(-4), 0, &cfg).unwrap();
        let expect = hp::zeta(4, &cfg).unwrap();
        assert!((&r.value - &expect).abs() < r.err_estimate);
        assert_eq!(r.method, Method::DirectTailBound);
    }

    #[test]
    fn monotone_truncation_property() {
        // Doubling the budget moves the value by less than the reported error.
        let base = EvalConfig::default();
        let spec = |cfg: &EvalConfig| {
            let mut h = BigReal::zero(40);
            let mut hh = h.clone();
            let step = move |n: u64| {
                hh = &hh + &BigReal::from_u64(n, 40).recip();
                &hh * &BigReal::from_u64(2 * n + 1, 40).powi(-3)
                    * BigReal::from_i64(8, 40)
            };
            let _ = &mut h;
            sum_series(step, 1, cfg).unwrap()
        };
        for n in [1u64 << 14, 1 << 15, 1 << 16] {
            let a = spec(&EvalConfig { max_terms: n, ..base });
            let b = spec(&EvalConfig { max_terms: 2 * n, ..base });
            assert!(
                (&a.value - &b.value).abs() <= a.err_estimate,
                "budget {n}: moved {} > err {}",
                (&a.value - &b.value).abs(),
                a.err_estimate
            );
        }
    }
}
