//! Sequence-parameterized machinery: the functionals E, F, G, L, M, T and
//! friends of a bilateral sequence, the parametric digamma and generalized
//! cotangent built from them, closed forms for the constant and alternating
//! sequences, and numeric probes of the Laurent expansions around integer
//! and half-integer centers.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hp::{self, BigReal, EvalConfig};
use crate::sums::{harmonic, sum_series, HarmonicKind};
use crate::symbolic::SymExpr;

/// A bilateral sequence `a_k` (`k` over all integers) with a growth bound
/// `a_k = o(k^alpha)`, `alpha < 1`.
#[derive(Clone)]
pub enum Seq {
    /// `a_k = 1` for all `k` (the constant sequence).
    Ones,
    /// `a_k = (-1)^k`.
    Alternating,
    /// User-supplied terms with a declared growth witness.
    Custom(CustomSeq),
}

#[derive(Clone)]
pub struct CustomSeq {
    /// Growth exponent `alpha < 1`.
    pub alpha: f64,
    /// Constant `C` with `|a_k| <= C |k|^alpha` (and `|a_0| <= C`).
    pub bound: f64,
    pub terms: Arc<dyn Fn(i64) -> BigRational + Send + Sync>,
}

impl fmt::Debug for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seq::Ones => f.write_str("Seq::Ones"),
            Seq::Alternating => f.write_str("Seq::Alternating"),
            Seq::Custom(c) => write!(f, "Seq::Custom(alpha={}, bound={})", c.alpha, c.bound),
        }
    }
}

impl Seq {
    /// Exact term value.
    pub fn term(&self, k: i64) -> BigRational {
        match self {
            Seq::Ones => BigRational::one(),
            Seq::Alternating => {
                if k.rem_euclid(2) == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                }
            }
            Seq::Custom(c) => (c.terms)(k),
        }
    }

    fn term_real(&self, k: i64, digits: u32) -> BigReal {
        match self {
            Seq::Ones => BigReal::one(digits),
            Seq::Alternating => {
                if k.rem_euclid(2) == 0 {
                    BigReal::one(digits)
                } else {
                    -BigReal::one(digits)
                }
            }
            Seq::Custom(c) => BigReal::from_rational(&(c.terms)(k), digits),
        }
    }

    fn a0(&self, digits: u32) -> BigReal {
        self.term_real(0, digits)
    }

    /// Spot-checks the declared growth bound on a sample of indices.
    pub fn check_growth(&self) -> Result<()> {
        let Seq::Custom(c) = self else { return Ok(()) };
        if c.alpha >= 1.0 {
            return Err(Error::Growth(format!("alpha = {} must be < 1", c.alpha)));
        }
        for &k in &[1i64, -1, 2, -2, 5, -5, 17, -17, 128, -128, 1024, -1024, 65536, -65536] {
            let a = (c.terms)(k).to_f64().unwrap_or(f64::INFINITY).abs();
            let cap = c.bound * (k.unsigned_abs() as f64).powf(c.alpha);
            if a > cap + 1e-12 {
                return Err(Error::Growth(format!("|a_{k}| = {a} exceeds C |k|^alpha = {cap}")));
            }
        }
        let a0 = (c.terms)(0).to_f64().unwrap_or(f64::INFINITY).abs();
        if a0 > c.bound + 1e-12 {
            return Err(Error::Growth(format!("|a_0| = {a0} exceeds C = {}", c.bound)));
        }
        Ok(())
    }

    fn is_builtin(&self) -> bool {
        !matches!(self, Seq::Custom(_))
    }
}

/// The functionals attached to a sequence. Finite kinds (`E`, `EBar`, `G`)
/// evaluate exactly in rational arithmetic; the rest are infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    /// `E_n(j) = sum_{k=1..n} a_(n-k) / k^j`
    E,
    /// `EBar_n(j) = sum_{k=1..n} a_(k-n-1) / k^j`
    EBar,
    /// `F_n(j) = sum_k a_(k+n) / k^j` (regularized difference form at `j = 1`)
    F,
    /// `FBar_n(j) = sum_k a_(k-n) / k^j` (regularized at `j = 1`)
    FBar,
    /// `G_n(j) = E_n(j) - EBar_(n-1)(j) - a_0 / n^j`
    G,
    /// `L_n(j) = F_n(j) + (-1)^j FBar_n(j)`
    L,
    /// `M_n(j) = E_n(j) + (-1)^j F_n(j)`
    M,
    /// `MBar_n(j) = FBar_n(j) - EBar_(n-1)(j)`
    MBar,
    /// `T_n(j) = G_n(j) + (-1)^j L_n(j)`
    T,
    /// `R(j) = sum_k a_k / (k-1/2)^j` (regularized at `j = 1`); independent of `n`
    RSeq,
    /// `RHat(j) = sum_k a_(k-1) / (k-1/2)^j` (regularized at `j = 1`)
    RHat,
}

fn finite_sum(a: &Seq, n: u64, j: u32, shift: impl Fn(u64) -> i64) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += a.term(shift(k)) / BigRational::from(BigInt::from(k).pow(j));
    }
    acc
}

/// Evaluates a sequence functional numerically.
pub fn seq_functional(kind: Functional, a: &Seq, n: u64, j: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if j == 0 {
        return Err(Error::Domain("functional order j must be >= 1".into()));
    }
    a.check_growth()?;
    let digits = cfg.digits;
    let sign_j = if j % 2 == 0 { 1i64 } else { -1 };
    match kind {
        Functional::E => Ok(BigReal::from_rational(&finite_sum(a, n, j, |k| n as i64 - k as i64), digits)),
        Functional::EBar => Ok(BigReal::from_rational(
            &finite_sum(a, n, j, |k| k as i64 - n as i64 - 1),
            digits,
        )),
        Functional::G => {
            if n == 0 {
                return Ok(BigReal::zero(digits));
            }
            let e = finite_sum(a, n, j, |k| n as i64 - k as i64);
            let ebar = finite_sum(a, n - 1, j, |k| k as i64 - (n as i64 - 1) - 1);
            let a0 = a.term(0) / BigRational::from(BigInt::from(n).pow(j));
            Ok(BigReal::from_rational(&(e - ebar - a0), digits))
        }
        Functional::F => series_f(a, n as i64, j, cfg),
        Functional::FBar => series_f(a, -(n as i64), j, cfg),
        Functional::L => {
            let f = series_f(a, n as i64, j, cfg)?;
            let fbar = series_f(a, -(n as i64), j, cfg)?;
            Ok(f + fbar * BigReal::from_i64(sign_j, digits))
        }
        Functional::M => {
            let e = seq_functional(Functional::E, a, n, j, cfg)?;
            let f = series_f(a, n as i64, j, cfg)?;
            Ok(e + f * BigReal::from_i64(sign_j, digits))
        }
        Functional::MBar => {
            if n == 0 {
                return Err(Error::Domain("MBar requires n >= 1".into()));
            }
            let fbar = series_f(a, -(n as i64), j, cfg)?;
            let ebar = seq_functional(Functional::EBar, a, n - 1, j, cfg)?;
            Ok(fbar - ebar)
        }
        Functional::T => {
            let g = seq_functional(Functional::G, a, n, j, cfg)?;
            let l = seq_functional(Functional::L, a, n, j, cfg)?;
            Ok(g + l * BigReal::from_i64(sign_j, digits))
        }
        Functional::RSeq => r_seq(a, j, cfg),
        Functional::RHat => r_hat(a, j, cfg),
    }
}

/// `F_n(j)` for `shift = n` / `FBar_n(j)` for `shift = -n`, by the series
/// definition with the `j = 1` regularization.
fn series_f(a: &Seq, shift: i64, j: u32, cfg: &EvalConfig) -> Result<BigReal> {
    let digits = cfg.digits;
    let a = a.clone();
    if j == 1 {
        let term = move |k: u64| {
            let num = a.term_real(k as i64 + shift, digits) - a.term_real(k as i64, digits);
            num / BigReal::from_u64(k, digits)
        };
        Ok(sum_series(term, 0, cfg)?.value)
    } else {
        let term =
            move |k: u64| a.term_real(k as i64 + shift, digits) * BigReal::from_u64(k, digits).powi(-(j as i64));
        Ok(sum_series(term, 0, cfg)?.value)
    }
}

/// `R(j)` of a sequence; closed values for the built-in sequences.
pub fn r_seq(a: &Seq, j: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if j == 0 {
        return Err(Error::Domain("R(j) needs j >= 1".into()));
    }
    let digits = cfg.digits;
    match a {
        Seq::Ones => hp::r_single(j as i64, cfg),
        Seq::Alternating => {
            if j == 1 {
                // sum (-1)^k (1/(k-1/2) - 1/k) = -pi/2 + log 2
                let half_pi = hp::pi(cfg) / BigReal::from_i64(2, digits);
                Ok(hp::log2(cfg) - half_pi)
            } else {
                hp::r_single(-(j as i64), cfg)
            }
        }
        Seq::Custom(_) => {
            a.check_growth()?;
            let a = a.clone();
            if j == 1 {
                let term = move |k: u64| {
                    let ak = a.term_real(k as i64, digits);
                    let d1 = BigReal::from_ratio(2 * k as i64 - 1, 2, digits);
                    &ak / &d1 - &ak / &BigReal::from_u64(k, digits)
                };
                Ok(sum_series(term, 0, cfg)?.value)
            } else {
                let term = move |k: u64| {
                    let d = BigReal::from_ratio(2 * k as i64 - 1, 2, digits).powi(-(j as i64));
                    a.term_real(k as i64, digits) * d
                };
                Ok(sum_series(term, 0, cfg)?.value)
            }
        }
    }
}

/// `RHat(j)` of a sequence; closed values for the built-in sequences.
pub fn r_hat(a: &Seq, j: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if j == 0 {
        return Err(Error::Domain("RHat(j) needs j >= 1".into()));
    }
    let digits = cfg.digits;
    match a {
        Seq::Ones => hp::r_single(j as i64, cfg),
        Seq::Alternating => {
            if j == 1 {
                // sum ((-1)^(k-1)/(k-1/2) - (-1)^k/k) = pi/2 + log 2
                let half_pi = hp::pi(cfg) / BigReal::from_i64(2, digits);
                Ok(hp::log2(cfg) + half_pi)
            } else {
                Ok(-hp::r_single(-(j as i64), cfg)?)
            }
        }
        Seq::Custom(_) => {
            a.check_growth()?;
            let a = a.clone();
            if j == 1 {
                let term = move |k: u64| {
                    let d1 = BigReal::from_ratio(2 * k as i64 - 1, 2, digits);
                    a.term_real(k as i64 - 1, digits) / d1
                        - a.term_real(k as i64, digits) / BigReal::from_u64(k, digits)
                };
                Ok(sum_series(term, 0, cfg)?.value)
            } else {
                let term = move |k: u64| {
                    let d = BigReal::from_ratio(2 * k as i64 - 1, 2, digits).powi(-(j as i64));
                    a.term_real(k as i64 - 1, digits) * d
                };
                Ok(sum_series(term, 0, cfg)?.value)
            }
        }
    }
}

/// Closed form of `M`, `MBar` or `T` for the built-in sequences, as an exact
/// symbolic expression over `zeta`, `eta`, `log 2` and rational harmonic
/// numbers. Uses the convention `zeta(1) = 0` for the constant sequence at
/// `j = 1`.
pub fn seq_functional_closed(kind: Functional, a: &Seq, n: u64, j: u32) -> Result<SymExpr> {
    if j == 0 {
        return Err(Error::Domain("functional order j must be >= 1".into()));
    }
    let sign_j = if j % 2 == 0 { 1 } else { -1 };
    let zeta_or_zero = |j: u32| if j >= 2 { SymExpr::zeta(j) } else { SymExpr::zero() };
    match (a, kind) {
        (Seq::Ones, Functional::M) => {
            let h = SymExpr::from_rational(harmonic(n, j, HarmonicKind::Plain));
            Ok(h + zeta_or_zero(j).scale_int(sign_j))
        }
        (Seq::Ones, Functional::MBar) => {
            if n == 0 {
                return Err(Error::Domain("MBar requires n >= 1".into()));
            }
            let h = SymExpr::from_rational(harmonic(n - 1, j, HarmonicKind::Plain));
            Ok(zeta_or_zero(j) - h)
        }
        (Seq::Ones, Functional::T) => Ok(zeta_or_zero(j).scale_int(1 + sign_j)),
        (Seq::Alternating, Functional::M) => {
            let sn = if n % 2 == 1 { 1 } else { -1 }; // (-1)^(n-1)
            let h = SymExpr::from_rational(harmonic(n, j, HarmonicKind::Alternating)).scale_int(sn);
            let tail = if j == 1 {
                // (-1)^j (1 - (-1)^n) log 2
                SymExpr::log2().scale_int(-(1 - if n % 2 == 0 { 1 } else { -1 }))
            } else {
                SymExpr::eta(j).scale_int(sign_j * sn)
            };
            Ok(h + tail)
        }
        (Seq::Alternating, Functional::MBar) => {
            if n == 0 {
                return Err(Error::Domain("MBar requires n >= 1".into()));
            }
            let sn = if n % 2 == 0 { 1 } else { -1 }; // (-1)^n
            let h = SymExpr::from_rational(harmonic(n - 1, j, HarmonicKind::Alternating)).scale_int(sn);
            let tail = if j == 1 {
                SymExpr::log2().scale_int(1 - sn)
            } else {
                SymExpr::eta(j).scale_int(-sn)
            };
            Ok(h + tail)
        }
        (Seq::Alternating, Functional::T) => {
            let sn = if n % 2 == 1 { 1 } else { -1 };
            Ok(if j >= 2 { SymExpr::eta(j).scale_int(sn * (1 + sign_j)) } else { SymExpr::zero() })
        }
        _ => Err(Error::Unsupported(
            "closed forms exist for M, MBar, T over the built-in sequences".into(),
        )),
    }
}

/// Parametric digamma `Psi^(p-1)(-s; A) / (p-1)!`.
///
/// For `p = 1` this is the regularized series
/// `a_0/s + sum_k (a_k/k - a_k/(k-s))`; for `p >= 2` the term-wise
/// derivative `a_0/s^p + (-1)^p sum_k a_k/(k-s)^p`.
pub fn psi_param(s: f64, a: &Seq, p: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if p == 0 {
        return Err(Error::Domain("derivative order p must be >= 1".into()));
    }
    if s >= 0.0 && s.fract() == 0.0 {
        return Err(Error::Pole { location: s });
    }
    a.check_growth()?;
    let digits = cfg.digits;
    let sr = BigReal::from_f64(s, digits);
    let a0 = a.a0(digits);
    let aa = a.clone();
    if p == 1 {
        let head = &a0 / &sr;
        let term = move |k: u64| {
            let ak = aa.term_real(k as i64, digits);
            let kr = BigReal::from_u64(k, digits);
            &ak / &kr - &ak / &(&kr - &sr)
        };
        Ok(head + sum_series(term, 0, cfg)?.value)
    } else {
        let head = &a0 / &sr.powi(p as i64);
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let term = move |k: u64| {
            let d = (BigReal::from_u64(k, digits) - &sr).powi(p as i64);
            aa.term_real(k as i64, digits) / d
        };
        Ok(head + sum_series(term, 0, cfg)?.value * BigReal::from_i64(sign, digits))
    }
}

/// Generalized cotangent `pi cot(pi s; A) = a_0/s - 2s sum_k a_k/(k^2 - s^2)`.
pub fn cot_param(s: f64, a: &Seq, cfg: &EvalConfig) -> Result<BigReal> {
    a.check_growth()?;
    let digits = cfg.digits;
    let integral = s.fract() == 0.0;
    if integral {
        let k = s.abs() as i64;
        if !a.term(k).is_zero() {
            return Err(Error::Pole { location: s });
        }
    }
    let sr = BigReal::from_f64(s, digits);
    let head = if s == 0.0 {
        BigReal::zero(digits) // a_0 = 0 guaranteed by the pole check
    } else {
        a.a0(digits) / &sr
    };
    let s2 = sr.powi(2);
    let aa = a.clone();
    let term = move |k: u64| {
        let d = BigReal::from_u64(k * k, digits) - &s2;
        if d.is_zero() {
            // a_k = 0 here (checked above); the term is a removable zero.
            return BigReal::zero(digits);
        }
        aa.term_real(k as i64, digits) / d
    };
    let series = sum_series(term, 0, cfg)?.value;
    Ok(head - BigReal::from_i64(2, digits) * &sr * series)
}

/// Which Laurent expansion a probe exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentKind {
    /// digamma about a nonnegative integer `n` (pole of order `p`)
    PsiAtPositive,
    /// digamma about a negative integer `-n` (regular point)
    PsiAtNegative,
    /// cotangent about any integer `n` (simple pole)
    CotAtInteger,
    /// classical digamma about `n - 1/2` (regular point, expansion in odd
    /// harmonic numbers); `center_n = n >= 0`
    ClassicalPsiAtHalf,
    /// classical digamma about `-(n - 1/2)`, `n >= 1`
    ClassicalPsiAtNegHalf,
}

/// A numeric probe of one truncated Laurent expansion.
#[derive(Debug, Clone, Copy)]
pub struct LaurentProbe {
    pub kind: LaurentKind,
    /// The integer parameter `n` of the expansion center.
    pub center_n: u64,
    /// Derivative order parameter `p >= 1`.
    pub p: u32,
    /// Number of expansion terms retained.
    pub terms: u32,
    /// Real evaluation point with `0 < |s - center| < 1`.
    pub s: f64,
}

impl LaurentProbe {
    pub fn center(&self) -> f64 {
        match self.kind {
            LaurentKind::PsiAtPositive => self.center_n as f64,
            LaurentKind::PsiAtNegative => -(self.center_n as f64),
            LaurentKind::CotAtInteger => self.center_n as f64,
            LaurentKind::ClassicalPsiAtHalf => self.center_n as f64 - 0.5,
            LaurentKind::ClassicalPsiAtNegHalf => -(self.center_n as f64 - 0.5),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p == 0 || self.terms == 0 {
            return Err(Error::Domain("probe needs p >= 1 and terms >= 1".into()));
        }
        let d = (self.s - self.center()).abs();
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::Domain(format!(
                "probe point s = {} must satisfy 0 < |s - center| < 1",
                self.s
            )));
        }
        if matches!(self.kind, LaurentKind::ClassicalPsiAtNegHalf) && self.center_n == 0 {
            return Err(Error::Domain("negative half-integer center needs n >= 1".into()));
        }
        Ok(())
    }
}

/// `|direct evaluation - truncated expansion|` at the probe point. The
/// caller asserts the `O(|s - center|^terms)` decay by sampling decreasing
/// distances.
pub fn laurent_residual(probe: &LaurentProbe, a: Option<&Seq>, cfg: &EvalConfig) -> Result<BigReal> {
    probe.validate()?;
    let digits = cfg.digits;
    let seq = match probe.kind {
        LaurentKind::ClassicalPsiAtHalf | LaurentKind::ClassicalPsiAtNegHalf => &Seq::Ones,
        _ => a.ok_or_else(|| Error::Domain("this probe kind needs a sequence".into()))?,
    };
    let p = probe.p;
    let n = probe.center_n;
    let j_terms = probe.terms;
    let sr = BigReal::from_f64(probe.s, digits);

    // Functional values via closed forms for built-ins, series otherwise.
    let m_val = |jj: u32| -> Result<BigReal> {
        if seq.is_builtin() {
            seq_functional_closed(Functional::M, seq, n, jj)?.eval(cfg)
        } else {
            seq_functional(Functional::M, seq, n, jj, cfg)
        }
    };
    let mbar_val = |jj: u32| -> Result<BigReal> {
        if seq.is_builtin() {
            seq_functional_closed(Functional::MBar, seq, n, jj)?.eval(cfg)
        } else {
            seq_functional(Functional::MBar, seq, n, jj, cfg)
        }
    };
    let t_val = |jj: u32| -> Result<BigReal> {
        if seq.is_builtin() {
            seq_functional_closed(Functional::T, seq, n, jj)?.eval(cfg)
        } else {
            seq_functional(Functional::T, seq, n, jj, cfg)
        }
    };

    let direct;
    let expansion;
    match probe.kind {
        LaurentKind::PsiAtPositive => {
            direct = psi_param(probe.s, seq, p, cfg)?;
            // (s-n)^-p [ a_n - sum_{j>=1} (-1)^j C(j+p-2, p-1) M_n(j+p-1) (s-n)^(j+p-1) ]
            let u = &sr - &BigReal::from_u64(n, digits);
            let mut acc = seq.term_real(n as i64, digits);
            for j in 1..=j_terms {
                let c = hp::binomial((j + p - 2) as usize, (p - 1) as usize);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let coeff = BigReal::from_bigint(&(BigInt::from(sign) * c), digits);
                acc = acc - coeff * m_val(j + p - 1)? * u.powi((j + p - 1) as i64);
            }
            expansion = acc * u.powi(-(p as i64));
        }
        LaurentKind::PsiAtNegative => {
            direct = psi_param(probe.s, seq, p, cfg)?;
            let u = &sr + &BigReal::from_u64(n, digits);
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let mut acc = BigReal::zero(digits);
            for j in 1..=j_terms {
                let c = hp::binomial((j + p - 2) as usize, (p - 1) as usize);
                let coeff = BigReal::from_bigint(&c, digits);
                acc = acc + coeff * mbar_val(j + p - 1)? * u.powi(j as i64 - 1);
            }
            expansion = acc * BigReal::from_i64(sign, digits);
        }
        LaurentKind::CotAtInteger => {
            direct = cot_param(probe.s, seq, cfg)?;
            let u = &sr - &BigReal::from_u64(n, digits);
            // sigma_n is +1 here: probes use nonnegative centers; negative
            // centers are covered through the sequence symmetry a_|n|.
            let mut acc = seq.term_real(n as i64, digits) / &u;
            for j in 1..=j_terms {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc = acc
                    - BigReal::from_i64(sign, digits) * t_val(j)? * u.powi(j as i64 - 1);
            }
            expansion = acc;
        }
        LaurentKind::ClassicalPsiAtHalf | LaurentKind::ClassicalPsiAtNegHalf => {
            direct = psi_param(probe.s, &Seq::Ones, p, cfg)?;
            let neg = matches!(probe.kind, LaurentKind::ClassicalPsiAtNegHalf);
            let center = BigReal::from_f64(probe.center(), digits);
            let u = &sr - &center;
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let mut acc = BigReal::zero(digits);
            for k in 1..=j_terms {
                let c = hp::binomial((k + p - 2) as usize, (p - 1) as usize);
                let order = k + p - 1;
                let r = if order == 1 {
                    BigReal::from_i64(2, digits) * hp::log2(cfg)
                } else {
                    hp::r_single(order as i64, cfg)?
                };
                let h = if neg {
                    -BigReal::from_rational(&harmonic(n - 1, order, HarmonicKind::Odd), digits)
                } else {
                    let s_h = if order % 2 == 0 { -1 } else { 1 }; // (-1)^(k+p-1)
                    BigReal::from_i64(s_h, digits)
                        * BigReal::from_rational(&harmonic(n, order, HarmonicKind::Odd), digits)
                };
                acc = acc + BigReal::from_bigint(&c, digits) * (r + h) * u.powi(k as i64 - 1);
            }
            expansion = acc * BigReal::from_i64(sign, digits);
        }
    }
    Ok((direct - expansion).abs())
}

/// `m`-th derivative of `pi cot(pi s; A)` at `s = -1/2` by central
/// differences with two Richardson extrapolation levels (steps `h`, `h/2`,
/// `h/4`). Supports `m <= 3`.
pub fn cot_derivative_at_half(m: u32, a: &Seq, cfg: &EvalConfig) -> Result<BigReal> {
    if m > 3 {
        return Err(Error::Domain("derivative order m <= 3".into()));
    }
    let digits = cfg.digits;
    // Series must be evaluated far below the difference scale h^m.
    let tight = EvalConfig { tol: 1e-24, digits: digits.max(40), ..*cfg };
    let f = |x: f64| cot_param(x, a, &tight);
    let h0 = 1.0 / 1024.0; // exact in binary
    let x0 = -0.5;

    let stencil = |h: f64| -> Result<BigReal> {
        let hv = BigReal::from_f64(h, digits);
        Ok(match m {
            0 => f(x0)?,
            1 => (f(x0 + h)? - f(x0 - h)?) / (BigReal::from_i64(2, digits) * &hv),
            2 => {
                (f(x0 + h)? - BigReal::from_i64(2, digits) * f(x0)? + f(x0 - h)?)
                    / hv.powi(2)
            }
            _ => {
                (f(x0 + 2.0 * h)? - BigReal::from_i64(2, digits) * f(x0 + h)?
                    + BigReal::from_i64(2, digits) * f(x0 - h)?
                    - f(x0 - 2.0 * h)?)
                    / (BigReal::from_i64(2, digits) * hv.powi(3))
            }
        })
    };

    let d0 = stencil(h0)?;
    let d1 = stencil(h0 / 2.0)?;
    let d2 = stencil(h0 / 4.0)?;
    // error series in h^2: two elimination levels
    let four = BigReal::from_i64(4, digits);
    let r0 = (&four * &d1 - &d0) / BigReal::from_i64(3, digits);
    let r1 = (&four * &d2 - &d1) / BigReal::from_i64(3, digits);
    let sixteen = BigReal::from_i64(16, digits);
    Ok((&sixteen * &r1 - &r0) / BigReal::from_i64(15, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn assert_close(a: &BigReal, b: &BigReal, tol: f64) {
        assert!((a - b).abs() < BigReal::from_f64(tol, 40), "{a} vs {b}");
    }

    #[test]
    fn finite_functionals() {
        let c = cfg();
        // E_3(1) over the constant sequence is H_3 = 11/6
        let e = seq_functional(Functional::E, &Seq::Ones, 3, 1, &c).unwrap();
        assert_close(&e, &BigReal::from_ratio(11, 6, 40), 1e-30);
        assert!(seq_functional(Functional::E, &Seq::Ones, 3, 0, &c).is_err());
        let g0 = seq_functional(Functional::G, &Seq::Ones, 0, 2, &c).unwrap();
        assert!(g0.is_zero());
    }

    #[test]
    fn t_functional_constant_sequence() {
        let c = cfg();
        // T_n(2) = 2 zeta(2) for the constant sequence, any n
        let t = seq_functional(Functional::T, &Seq::Ones, 5, 2, &c).unwrap();
        let expect = hp::zeta(2, &c).unwrap() * BigReal::from_i64(2, 40);
        assert_close(&t, &expect, 1e-10);
        let t3 = seq_functional(Functional::T, &Seq::Ones, 5, 3, &c).unwrap();
        assert!(t3.abs() < BigReal::from_f64(1e-10, 40));
    }

    #[test]
    fn m_functional_alternating_matches_closed_form() {
        let c = cfg();
        // direct definition-based evaluation vs closed form, n = 4, j = 3
        let m = seq_functional(Functional::M, &Seq::Alternating, 4, 3, &c).unwrap();
        let closed = seq_functional_closed(Functional::M, &Seq::Alternating, 4, 3)
            .unwrap()
            .eval(&c)
            .unwrap();
        assert_close(&m, &closed, 1e-10);
    }

    #[test]
    fn closed_form_examples() {
        // T over the constant sequence: 2 zeta(4)
        let t = seq_functional_closed(Functional::T, &Seq::Ones, 7, 4).unwrap();
        assert_eq!(t.to_string(), "2 z4");
        // T over the alternating sequence at odd j vanishes
        let t2 = seq_functional_closed(Functional::T, &Seq::Alternating, 3, 3).unwrap();
        assert!(t2.is_zero());
        // MBar over ones: zeta(2) - H_4^(2)
        let mb = seq_functional_closed(Functional::MBar, &Seq::Ones, 5, 2).unwrap();
        let h42 = harmonic(4, 2, HarmonicKind::Plain);
        let expect = SymExpr::zeta(2) - SymExpr::from_rational(h42);
        assert_eq!(mb, expect);
    }

    #[test]
    fn m_plus_mbar_is_t_plus_head_symbolically() {
        for a in [Seq::Ones, Seq::Alternating] {
            for n in [1u64, 2, 5, 12] {
                for j in 1..=4u32 {
                    let m = seq_functional_closed(Functional::M, &a, n, j).unwrap();
                    let mb = seq_functional_closed(Functional::MBar, &a, n, j).unwrap();
                    let t = seq_functional_closed(Functional::T, &a, n, j).unwrap();
                    let head = SymExpr::from_rational(BigRational::new(
                        BigInt::one(),
                        BigInt::from(n).pow(j),
                    ));
                    assert_eq!(m + mb, t + head, "a={a:?} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn psi_param_at_minus_half_gives_r_values() {
        let c = cfg();
        // p = 2, constant sequence: R(2) = 3 zeta(2)
        let v = psi_param(-0.5, &Seq::Ones, 2, &c).unwrap();
        let expect = hp::r_single(2, &c).unwrap();
        assert_close(&v, &expect, 1e-10);
        // p = 1, alternating: RHat^(A2)(1) = pi/2 + log2, with psi = -RHat at p=1
        let v2 = psi_param(-0.5, &Seq::Alternating, 1, &c).unwrap();
        let expect2 = -(hp::pi(&c) / BigReal::from_i64(2, 40) + hp::log2(&c));
        assert_close(&v2, &expect2, 1e-10);
        assert!(psi_param(3.0, &Seq::Ones, 1, &c).is_err());
    }

    #[test]
    fn psi_param_classical_value() {
        // psi(-1/4) + gamma = 4 - 3 log 2 + pi/2 (Gauss digamma + recurrence)
        let c = cfg();
        let v = psi_param(0.25, &Seq::Ones, 1, &c).unwrap();
        let expect = BigReal::from_i64(4, 40) - BigReal::from_i64(3, 40) * hp::log2(&c)
            + hp::pi(&c) / BigReal::from_i64(2, 40);
        assert_close(&v, &expect, 1e-10);
    }

    #[test]
    fn cot_param_classical_values() {
        let c = cfg();
        // cot(pi s; ones) = pi cot(pi s); at s = 0.5 this is 0
        let v = cot_param(0.5, &Seq::Ones, &c).unwrap();
        assert!(v.abs() < BigReal::from_f64(1e-10, 40));
        // alternating: pi csc(pi s) at s = 0.3
        let v2 = cot_param(0.3, &Seq::Alternating, &c).unwrap();
        let expect = std::f64::consts::PI / (0.3 * std::f64::consts::PI).sin();
        assert!((v2.approx_f64() - expect).abs() < 1e-10);
        // ones: pi cot(0.3 pi)
        let v3 = cot_param(0.3, &Seq::Ones, &c).unwrap();
        let expect3 = std::f64::consts::PI / (0.3 * std::f64::consts::PI).tan();
        assert!((v3.approx_f64() - expect3).abs() < 1e-10);
        assert!(cot_param(2.0, &Seq::Ones, &c).is_err());
    }

    #[test]
    fn laurent_probe_orders() {
        let c = cfg();
        // Lemma for psi about n=2 with p=2: residual decays like |s-2|^J
        let probe = |s: f64| LaurentProbe {
            kind: LaurentKind::PsiAtPositive,
            center_n: 2,
            p: 2,
            terms: 6,
            s,
        };
        let r1 = laurent_residual(&probe(2.1), Some(&Seq::Ones), &c).unwrap();
        let r2 = laurent_residual(&probe(2.05), Some(&Seq::Ones), &c).unwrap();
        let ratio = (&r1 / &r2).approx_f64();
        let expect = 2f64.powi(6);
        assert!(ratio > expect / 2.0 && ratio < expect * 2.0, "ratio {ratio}");
    }

    #[test]
    fn custom_sequence_growth_check() {
        let good = Seq::Custom(CustomSeq {
            alpha: 0.0,
            bound: 1.0,
            terms: Arc::new(|k| {
                BigRational::new(BigInt::one(), BigInt::from(1 + k.unsigned_abs()))
            }),
        });
        assert!(good.check_growth().is_ok());
        let bad = Seq::Custom(CustomSeq {
            alpha: 0.5,
            bound: 1.0,
            terms: Arc::new(|k| BigRational::from(BigInt::from(k.unsigned_abs() + 1))),
        });
        assert!(bad.check_growth().is_err());
    }

    #[test]
    fn cot_derivative_identity_small_orders() {
        let c = cfg();
        // d^m/ds^m pi cot(pi s; A) at -1/2 equals m!((-1)^m R(m+1) - RHat(m+1))
        for a in [Seq::Ones, Seq::Alternating] {
            for m in 0..=1u32 {
                let lhs = cot_derivative_at_half(m, &a, &c).unwrap();
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let mut fact = 1i64;
                for i in 1..=m as i64 {
                    fact *= i;
                }
                let rhs = BigReal::from_i64(fact, 40)
                    * (BigReal::from_i64(sign, 40) * r_seq(&a, m + 1, &c).unwrap()
                        - r_hat(&a, m + 1, &c).unwrap());
                assert!(
                    (&lhs - &rhs).abs() < BigReal::from_f64(1e-6, 40),
                    "a={a:?} m={m}: {lhs} vs {rhs}"
                );
            }
        }
    }
}
