//! High-precision arithmetic and the classical constants every identity in
//! this crate eventually bottoms out in: pi, log 2, zeta, eta and the
//! Dirichlet beta values, plus the depth-one R-values derived from them.
//!
//! Constants are computed at the working precision of the supplied
//! [`EvalConfig`] and memoized per precision. All implementations here are
//! elementary series with rigorous tail bounds: pi uses Machin's formula,
//! log 2 an atanh series, and the alternating zeta/beta family a binomial
//! (Chebyshev) acceleration that gains roughly 1.3 digits per term.

mod real;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use real::BigReal;

use crate::error::{Error, Result};

/// How a series evaluation reaches its target accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Accel {
    /// Plain summation with an integral-comparison tail bound.
    DirectTailBound,
    /// Geometric checkpoints with elimination of the asymptotic tail model.
    Extrapolated,
}

/// Evaluation parameters shared by every numeric routine.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    /// Decimal digits of working precision.
    pub digits: u32,
    /// Hard cap on series terms per evaluation.
    pub max_terms: u64,
    /// Number of geometric partial-sum checkpoints for extrapolation.
    pub checkpoints: u32,
    /// Target absolute error.
    pub tol: f64,
    /// Acceleration strategy.
    pub accel: Accel,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            digits: 40,
            max_terms: 1_000_000,
            checkpoints: 8,
            tol: 1e-10,
            accel: Accel::Extrapolated,
        }
    }
}

impl EvalConfig {
    /// Checks the config invariants: the working precision must dominate the
    /// target accuracy (`tol >= 10^(5-digits)`) and the term budget must
    /// accommodate the checkpoint grid (`max_terms >= 2^checkpoints`).
    pub fn validate(&self) -> Result<()> {
        if self.digits < 8 {
            return Err(Error::Config("digits must be at least 8".into()));
        }
        if self.tol <= 0.0 {
            return Err(Error::Config("tol must be positive".into()));
        }
        // Compare in log10 to stay clear of f64 underflow for large digits.
        let floor_log10 = 5.0 - self.digits as f64;
        if self.tol.log10() < floor_log10 {
            return Err(Error::Config(format!(
                "tol {:e} below working-precision floor 1e{}",
                self.tol, floor_log10
            )));
        }
        if self.checkpoints < 2 || self.checkpoints > 40 {
            return Err(Error::Config("checkpoints must be in 2..=40".into()));
        }
        if self.max_terms < (1u64 << self.checkpoints) {
            return Err(Error::Config(format!(
                "max_terms {} < 2^checkpoints = {}",
                self.max_terms,
                1u64 << self.checkpoints
            )));
        }
        Ok(())
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Target tolerance as a `BigReal` at working precision.
    pub(crate) fn tol_real(&self) -> BigReal {
        BigReal::from_f64(self.tol, self.digits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum ConstKey {
    Pi,
    Log2,
    Eta(u32),
    Beta(u32),
}

static CONST_CACHE: Mutex<Option<HashMap<(ConstKey, u32), BigReal>>> = Mutex::new(None);

fn cached(key: ConstKey, digits: u32, compute: impl FnOnce() -> BigReal) -> BigReal {
    if let Some(v) = {
        let guard = CONST_CACHE.lock().expect("const cache");
        guard.as_ref().and_then(|m| m.get(&(key, digits)).cloned())
    } {
        return v;
    }
    let v = compute();
    let mut guard = CONST_CACHE.lock().expect("const cache");
    guard
        .get_or_insert_with(HashMap::new)
        .entry((key, digits))
        .or_insert_with(|| v.clone());
    v
}

/// pi to `cfg.digits` digits, by Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(cfg: &EvalConfig) -> BigReal {
    let digits = cfg.digits;
    cached(ConstKey::Pi, digits, || {
        let d = digits + 10;
        let a = atan_inv(5, d);
        let b = atan_inv(239, d);
        let v = BigReal::from_i64(16, d) * a - BigReal::from_i64(4, d) * b;
        round_to(&v, digits)
    })
}

/// log 2 via `2 atanh(1/3)`.
pub fn log2(cfg: &EvalConfig) -> BigReal {
    let digits = cfg.digits;
    cached(ConstKey::Log2, digits, || {
        let d = digits + 10;
        let v = BigReal::from_i64(2, d) * atanh_inv(3, d);
        round_to(&v, digits)
    })
}

/// `atan(1/k)` by the Taylor series, with the alternating-series tail bound.
fn atan_inv(k: i64, digits: u32) -> BigReal {
    let k2 = BigReal::from_i64(k * k, digits);
    let mut power = BigReal::from_ratio(1, k, digits);
    let mut sum = power.clone();
    let limit = threshold(digits);
    let mut j = 1i64;
    loop {
        power = &power / &k2;
        let term = &power / &BigReal::from_i64(2 * j + 1, digits);
        if term.abs() < limit {
            break;
        }
        if j % 2 == 1 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
        j += 1;
    }
    sum
}

/// `atanh(1/k)` by the Taylor series; terms are positive and decay
/// geometrically, so the tail is below the first omitted term times 2.
fn atanh_inv(k: i64, digits: u32) -> BigReal {
    let k2 = BigReal::from_i64(k * k, digits);
    let mut power = BigReal::from_ratio(1, k, digits);
    let mut sum = power.clone();
    let limit = threshold(digits);
    let mut j = 1i64;
    loop {
        power = &power / &k2;
        let term = &power / &BigReal::from_i64(2 * j + 1, digits);
        if term.abs() < limit {
            break;
        }
        sum = sum + term;
        j += 1;
    }
    sum
}

fn threshold(digits: u32) -> BigReal {
    BigReal::from_i64(10, digits).powi(-(digits as i64 + 5))
}

fn round_to(v: &BigReal, digits: u32) -> BigReal {
    // Re-round a guarded value down to the requested working precision.
    BigReal::zero(digits) + v
}

/// Binomial acceleration of an alternating sum `sum_{k>=0} (-1)^k a_k` for
/// totally monotone `a_k`; roughly `1.31` digits are gained per term.
fn alternating_accel(digits: u32, a: impl Fn(u64) -> BigReal) -> BigReal {
    let d = digits + 10;
    let n = (d as u64 * 131) / 100 + 12;
    // Integer weights t_i = n/(n+i) * C(n+i, 2i) * 4^i via an exact product
    // recurrence; d_k = sum of the first k+1 weights.
    let mut t = BigInt::one();
    let mut dsum: Vec<BigInt> = Vec::with_capacity(n as usize + 1);
    dsum.push(t.clone());
    for i in 0..n {
        let num = &t * (4u64 * (n + i) * (n - i));
        let den = BigInt::from((2 * i + 1) * (2 * i + 2));
        debug_assert!((&num % &den).is_zero());
        t = num / den;
        dsum.push(dsum.last().unwrap() + &t);
    }
    let d_n = BigReal::from_bigint(&dsum[n as usize], d);
    let mut acc = BigReal::zero(d);
    for k in 0..n {
        let w = &dsum[n as usize] - &dsum[k as usize];
        let coeff = BigReal::from_bigint(&w, d);
        let term = coeff * a(k);
        if k % 2 == 0 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    round_to(&(acc / d_n), digits)
}

/// Dirichlet eta `sum_{k>=1} (-1)^(k-1) / k^n`; `eta(1) = log 2`.
pub fn eta(n: u32, cfg: &EvalConfig) -> BigReal {
    let digits = cfg.digits;
    cached(ConstKey::Eta(n), digits, || {
        let d = digits + 10;
        alternating_accel(digits, |k| BigReal::from_u64(k + 1, d).powi(-(n as i64)))
    })
}

/// Riemann zeta at integer `n >= 2`, through `eta(n) / (1 - 2^(1-n))`.
pub fn zeta(n: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if n < 2 {
        return Err(Error::Domain(format!("zeta requires n >= 2, got {n}")));
    }
    let digits = cfg.digits;
    let e = eta(n, cfg);
    // 1/(1 - 2^(1-n)) = 2^(n-1)/(2^(n-1) - 1)
    let num = BigReal::from_bigint(&(BigInt::one() << (n - 1) as usize), digits);
    let den = BigReal::from_bigint(&((BigInt::one() << (n - 1) as usize) - 1), digits);
    Ok(e * num / den)
}

/// Dirichlet beta `sum_{k>=0} (-1)^k / (2k+1)^n`; `beta(1) = pi/4`,
/// `beta(2)` is Catalan's constant.
pub fn dirichlet_beta(n: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if n < 1 {
        return Err(Error::Domain("beta requires n >= 1".into()));
    }
    let digits = cfg.digits;
    Ok(cached(ConstKey::Beta(n), digits, || {
        let d = digits + 10;
        alternating_accel(digits, |k| BigReal::from_u64(2 * k + 1, d).powi(-(n as i64)))
    }))
}

/// Depth-one R-value for a signed nonzero index.
///
/// `R(k) = (2^k - 1) zeta(k)` for `k >= 2`, with the conventions
/// `R(1) = 2 log 2` and, for barred (negative) indices,
/// `R(-k) = -2^k beta(k)`.
pub fn r_single(k: i64, cfg: &EvalConfig) -> Result<BigReal> {
    match k {
        0 => Err(Error::Domain("R(0) is undefined".into())),
        1 => Ok(BigReal::from_i64(2, cfg.digits) * log2(cfg)),
        k if k >= 2 => {
            let pow = BigReal::from_bigint(&((BigInt::one() << k as usize) - 1), cfg.digits);
            Ok(pow * zeta(k as u32, cfg)?)
        }
        k => {
            let n = (-k) as u32;
            let pow = BigReal::from_bigint(&(BigInt::one() << n as usize), cfg.digits);
            Ok(-(pow * dirichlet_beta(n, cfg)?))
        }
    }
}

/// Exact Bernoulli numbers `B_0..=B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    for n in 0..=m {
        if n == 0 {
            b.push(BigRational::one());
            continue;
        }
        // sum_{j<n} C(n+1, j) B_j = 0 for n >= 1
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            // binom = C(n+1, j)
            acc += BigRational::from(binom.clone()) * bj;
            binom = &binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from(BigInt::from(n + 1)));
    }
    b
}

/// Exact Euler numbers `E_0, E_2, ..., E_(2m)` (signed, `E_2 = -1`).
pub fn euler_numbers(m: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=m {
        let mut acc = BigInt::zero();
        for (k, ek) in e.iter().enumerate() {
            acc += binomial(2 * n, 2 * k) * ek;
        }
        e.push(-acc);
    }
    e
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    for i in 0..k {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

/// `zeta(2k) / pi^(2k)` as an exact rational, from Bernoulli numbers.
pub fn even_zeta_rational(two_k: u32) -> Result<BigRational> {
    if two_k == 0 || two_k % 2 != 0 {
        return Err(Error::Domain("even_zeta_rational wants even n >= 2".into()));
    }
    let k = (two_k / 2) as usize;
    let b = bernoulli(2 * k);
    let b2k = &b[2 * k];
    // zeta(2k) = (-1)^(k+1) B_2k (2 pi)^(2k) / (2 (2k)!)
    let mut fact = BigInt::one();
    for i in 1..=(2 * k) {
        fact *= BigInt::from(i);
    }
    let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let two_pow = BigInt::one() << (2 * k);
    Ok(b2k * BigRational::new(sign * two_pow, fact * 2))
}

/// `beta(2k+1) / pi^(2k+1)` as an exact rational, from Euler numbers.
pub fn odd_beta_rational(n: u32) -> Result<BigRational> {
    if n % 2 == 0 {
        return Err(Error::Domain("odd_beta_rational wants odd n".into()));
    }
    let k = ((n - 1) / 2) as usize;
    let e = euler_numbers(k);
    let e2k = &e[k];
    let mut fact = BigInt::one();
    for i in 1..=(2 * k) {
        fact *= BigInt::from(i);
    }
    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let four_pow = BigInt::one() << (2 * (k + 1));
    Ok(BigRational::new(sign * e2k, four_pow * fact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(digits: u32) -> EvalConfig {
        EvalConfig::default().with_digits(digits)
    }

    fn close(a: &BigReal, b: &BigReal, tol: f64) -> bool {
        (a - b).abs() < BigReal::from_f64(tol, a.digits().max(b.digits()))
    }

    #[test]
    fn pi_matches_backend_constant() {
        // Cross-check Machin against the independent backend implementation.
        let c = cfg(50);
        let ours = pi(&c);
        let theirs = real::with_consts(|cc| {
            cc.pi(real::bits_for(50), astro_float::RoundingMode::ToEven)
        });
        let theirs = BigReal::from_raw(theirs, 50).unwrap();
        assert!(close(&ours, &theirs, 1e-48));
    }

    #[test]
    fn pi_decimal_examples() {
        let c = cfg(20);
        assert_eq!(pi(&c).to_decimal(20), "3.1415926535897932385");
        assert_eq!(pi(&cfg(5)).to_decimal(5), "3.1416");
        // precision stability: 40 digits rounded to 20 equals the 20-digit run
        assert_eq!(pi(&cfg(40)).to_decimal(20), pi(&c).to_decimal(20));
    }

    #[test]
    fn log2_matches_backend_constant() {
        let c = cfg(45);
        let ours = log2(&c);
        let theirs = real::with_consts(|cc| {
            cc.ln_2(real::bits_for(45), astro_float::RoundingMode::ToEven)
        });
        let theirs = BigReal::from_raw(theirs, 45).unwrap();
        assert!(close(&ours, &theirs, 1e-43));
    }

    #[test]
    fn zeta_two_and_four_closed_forms() {
        let c = cfg(40);
        let p = pi(&c);
        let z2 = zeta(2, &c).unwrap();
        let z4 = zeta(4, &c).unwrap();
        assert!(close(&z2, &(p.powi(2) / BigReal::from_i64(6, 40)), 1e-35));
        assert!(close(&z4, &(p.powi(4) / BigReal::from_i64(90, 40)), 1e-35));
        assert!(zeta(1, &c).is_err());
    }

    #[test]
    fn zeta_three_direct_summation_oracle() {
        // Independent oracle: Kahan-compensated direct sum of 1e7 terms plus
        // the Euler-Maclaurin tail 1/(2N^2) - 1/(2N^3) + 1/(4N^4).
        let mut s = 0.0f64;
        let mut comp = 0.0f64;
        let n = 10_000_000u64;
        for k in (1..=n).rev() {
            let x = (k as f64).powi(-3);
            let y = x - comp;
            let t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        let nf = n as f64;
        let oracle = s + 0.5 / (nf * nf) - 0.5 / (nf * nf * nf) + 0.25 / nf.powi(4);
        let z3 = zeta(3, &cfg(40)).unwrap();
        assert!((z3.approx_f64() - oracle).abs() < 1e-10);
    }

    #[test]
    fn eta_values() {
        let c = cfg(40);
        assert!(close(&eta(1, &c), &log2(&c), 1e-35));
        let half_z2 = zeta(2, &c).unwrap() / BigReal::from_i64(2, 40);
        assert!(close(&eta(2, &c), &half_z2, 1e-35));
        // eta(5) = (1 - 2^-4) zeta(5), and against the alternating oracle
        let expect = zeta(5, &c).unwrap() * BigReal::from_ratio(15, 16, 40);
        assert!(close(&eta(5, &c), &expect, 1e-35));
        let mut s = 0.0f64;
        for k in (1..2_000_000u64).rev() {
            let t = (k as f64).powi(-5);
            if k % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        assert!((eta(5, &c).approx_f64() - s).abs() < 1e-10);
    }

    #[test]
    fn beta_values() {
        let c = cfg(40);
        let p = pi(&c);
        assert!(close(
            &dirichlet_beta(1, &c).unwrap(),
            &(&p / &BigReal::from_i64(4, 40)),
            1e-35
        ));
        assert!(close(
            &dirichlet_beta(3, &c).unwrap(),
            &(p.powi(3) / BigReal::from_i64(32, 40)),
            1e-35
        ));
        // Catalan: alternating oracle with first-omitted-term bound
        let mut s = 0.0f64;
        for k in (0..2_000_000u64).rev() {
            let t = ((2 * k + 1) as f64).powi(-2);
            if k % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
        }
        assert!((dirichlet_beta(2, &c).unwrap().approx_f64() - s).abs() < 1e-10);
    }

    #[test]
    fn r_single_values() {
        let c = cfg(40);
        let r2 = r_single(2, &c).unwrap();
        let z2 = zeta(2, &c).unwrap();
        assert!(close(&r2, &(BigReal::from_i64(3, 40) * z2), 1e-35));
        let r1 = r_single(1, &c).unwrap();
        assert!(close(&r1, &(BigReal::from_i64(2, 40) * log2(&c)), 1e-35));
        let rm1 = r_single(-1, &c).unwrap();
        let mhalf_pi = -(pi(&c) / BigReal::from_i64(2, 40));
        assert!(close(&rm1, &mhalf_pi, 1e-35));
        assert!(r_single(0, &c).is_err());
    }

    #[test]
    fn eta_zeta_r_relations_sweep() {
        let c = cfg(40);
        for n in 2..=12u32 {
            let lhs = eta(n, &c);
            let scale = BigRational::new(
                (BigInt::one() << (n - 1) as usize) - 1,
                BigInt::one() << (n - 1) as usize,
            );
            let rhs = BigReal::from_rational(&scale, 40) * zeta(n, &c).unwrap();
            assert!(close(&lhs, &rhs, 1e-10), "eta({n})");
            let r = r_single(n as i64, &c).unwrap();
            let rr = BigReal::from_bigint(&((BigInt::one() << n as usize) - 1), 40)
                * zeta(n, &c).unwrap();
            assert!(close(&r, &rr, 1e-10), "r({n})");
        }
        for n in 1..=8u32 {
            let lhs = r_single(-(n as i64), &c).unwrap();
            let rhs = -(BigReal::from_bigint(&(BigInt::one() << n as usize), 40)
                * dirichlet_beta(n, &c).unwrap());
            assert!(close(&lhs, &rhs, 1e-10), "rbar({n})");
        }
    }

    #[test]
    fn precision_stability_for_constants() {
        for d in [20u32, 30] {
            let lo = cfg(d);
            let hi = cfg(d + 10);
            assert_eq!(pi(&lo).to_decimal(d), pi(&hi).to_decimal(d));
            assert_eq!(log2(&lo).to_decimal(d), log2(&hi).to_decimal(d));
            assert_eq!(
                zeta(3, &lo).unwrap().to_decimal(d),
                zeta(3, &hi).unwrap().to_decimal(d)
            );
            assert_eq!(
                dirichlet_beta(2, &lo).unwrap().to_decimal(d),
                dirichlet_beta(2, &hi).unwrap().to_decimal(d)
            );
        }
    }

    #[test]
    fn bernoulli_and_euler_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[2], BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(b[12], BigRational::new(BigInt::from(-691), BigInt::from(2730)));
        let e = euler_numbers(4);
        assert_eq!(e[1], BigInt::from(-1));
        assert_eq!(e[2], BigInt::from(5));
        assert_eq!(e[3], BigInt::from(-61));
        assert_eq!(e[4], BigInt::from(1385));
    }

    #[test]
    fn even_zeta_rationals_match_numeric() {
        let c = cfg(40);
        let p = pi(&c);
        for two_k in [2u32, 4, 6, 8, 10, 12] {
            let r = even_zeta_rational(two_k).unwrap();
            let lhs = zeta(two_k, &c).unwrap();
            let rhs = BigReal::from_rational(&r, 40) * p.powi(two_k as i64);
            assert!(close(&lhs, &rhs, 1e-30), "zeta({two_k}) vs pi-power");
        }
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        let bad = EvalConfig { tol: 1e-40, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad2 = EvalConfig { max_terms: 128, ..Default::default() };
        assert!(bad2.validate().is_err());
    }
}
