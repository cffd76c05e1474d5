//! Harmonic numbers and numeric evaluation of every series family used by
//! the identity checkers: Euler sums, Euler R-sums (half-integer
//! denominators, all alternating variants), multiple zeta values, double
//! t/T-values and multiple R-values.

mod engine;

pub(crate) use engine::sum_series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{BigReal, EvalConfig};

/// One harmonic-number factor `H_n^(p)` (or the alternating variant) in the
/// numerator of an Euler-type sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicFactor {
    /// Order `p >= 1`.
    pub order: u32,
    /// Barred factor: alternating harmonic number.
    pub alternating: bool,
}

impl HarmonicFactor {
    pub fn plain(order: u32) -> Self {
        HarmonicFactor { order, alternating: false }
    }

    pub fn barred(order: u32) -> Self {
        HarmonicFactor { order, alternating: true }
    }
}

/// Denominator family of an Euler-type sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumBase {
    /// `n^q`, summed from `n = 1` (classical Euler sums).
    Integer,
    /// `(n + 1/2)^q`, summed from `n = 0` (Euler R-sums).
    HalfInteger,
}

/// Declarative description of an Euler-type sum.
///
/// The alternating-sign flag inserts `(-1)^(n-1)` for the integer base and
/// `(-1)^n` for the half-integer base, matching the bar-over-`q` notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumSpec {
    pub factors: Vec<HarmonicFactor>,
    pub base: SumBase,
    pub q: u32,
    pub alternating_sign: bool,
}

impl SumSpec {
    pub fn new(factors: Vec<HarmonicFactor>, base: SumBase, q: u32, alternating_sign: bool) -> Result<Self> {
        let spec = SumSpec { factors, base, q, alternating_sign };
        spec.validate()?;
        Ok(spec)
    }

    /// Shorthand for the R-sum `R_{p,q}` with optional bars.
    pub fn r_sum(p: u32, bar_p: bool, q: u32, bar_q: bool) -> Result<Self> {
        Self::new(
            vec![HarmonicFactor { order: p, alternating: bar_p }],
            SumBase::HalfInteger,
            q,
            bar_q,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::Domain(format!("sum exponent q must be >= 2, got {}", self.q)));
        }
        if self.factors.iter().any(|f| f.order < 1) {
            return Err(Error::Domain("harmonic factor order must be >= 1".into()));
        }
        Ok(())
    }

    /// Weight `sum p_i + q`.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.order).sum::<u32>() + self.q
    }

    /// Degree (order) `r`: the number of harmonic factors.
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Highest power of `log n` in the term asymptotics: one per plain
    /// weight-1 factor (alternating factors stay bounded).
    fn log_power(&self) -> u32 {
        self.factors.iter().filter(|f| f.order == 1 && !f.alternating).count() as u32
    }
}

/// A composition of signed nonzero integers indexing a multiple R-value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrvIndex {
    pub parts: Vec<i64>,
}

impl MrvIndex {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        let idx = MrvIndex { parts };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::Inadmissible("empty index".into()));
        }
        if self.parts.iter().any(|&k| k == 0) {
            return Err(Error::Inadmissible("zero entry".into()));
        }
        if self.parts[0] == 1 {
            return Err(Error::Inadmissible("k1=1".into()));
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().map(|k| k.unsigned_abs() as u32).sum()
    }

    /// `k1 = -1` converges only conditionally; the engine's pairing
    /// transform makes it absolutely convergent.
    pub fn is_conditionally_convergent(&self) -> bool {
        self.parts[0] == -1
    }

    fn log_power(&self) -> u32 {
        self.parts[1..].iter().filter(|&&k| k == 1).count() as u32
    }
}

impl std::fmt::Display for SumSpec {
    /// Grammar form, e.g. `R{~2;~2}` or `S{1^3,2;4}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self.base {
            SumBase::Integer => "S",
            SumBase::HalfInteger => "R",
        })?;
        f.write_str("{")?;
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let mut run = 1;
            while i + run < self.factors.len() && self.factors[i + run] == self.factors[i] {
                run += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if self.factors[i].alternating {
                f.write_str("~")?;
            }
            write!(f, "{}", self.factors[i].order)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        f.write_str(";")?;
        if self.alternating_sign {
            f.write_str("~")?;
        }
        write!(f, "{}}}", self.q)
    }
}

impl std::fmt::Display for MrvIndex {
    /// Grammar form, e.g. `MRV(2,-1)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("MRV(")?;
        for (i, k) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// Outcome of a series evaluation.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: BigReal,
    pub terms_used: u64,
    pub err_estimate: BigReal,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectTailBound,
    Extrapolated,
}

/// Which harmonic-number family to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicKind {
    /// `H_n^(p) = sum_{k<=n} k^-p`
    Plain,
    /// `sum_{k<=n} (-1)^(k-1) k^-p`
    Alternating,
    /// Odd harmonic `h_n^(p) = sum_{k<=n} (k - 1/2)^-p`
    Odd,
}

/// Exact harmonic number, with `H_0 = 0` for every kind.
pub fn harmonic(n: u64, p: u32, kind: HarmonicKind) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        let term = match kind {
            HarmonicKind::Plain => BigRational::new(BigInt::one(), BigInt::from(k).pow(p)),
            HarmonicKind::Alternating => {
                let s = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                BigRational::new(s, BigInt::from(k).pow(p))
            }
            HarmonicKind::Odd => {
                // 1/(k - 1/2)^p = 2^p/(2k-1)^p
                BigRational::new(BigInt::one() << p as usize, BigInt::from(2 * k - 1).pow(p))
            }
        };
        acc += term;
    }
    acc
}

fn inv_pow(v: u64, p: u32, digits: u32) -> BigReal {
    BigReal::from_u64(v, digits).powi(-(p as i64))
}

/// Evaluates an Euler-type sum described by `spec`.
pub fn euler_sum(spec: &SumSpec, cfg: &EvalConfig) -> Result<SeriesResult> {
    spec.validate()?;
    let digits = cfg.digits;
    let mut accs: Vec<BigReal> = spec.factors.iter().map(|_| BigReal::zero(digits)).collect();
    let factors = spec.factors.clone();
    let base = spec.base;
    let q = spec.q;
    let alt = spec.alternating_sign;
    let two_pow_q = BigReal::from_bigint(&(BigInt::one() << q as usize), digits);

    let term = move |n: u64| -> BigReal {
        let nu = match base {
            SumBase::Integer => n,
            SumBase::HalfInteger => n - 1,
        };
        if nu >= 1 {
            for (f, acc) in factors.iter().zip(accs.iter_mut()) {
                let mut step = inv_pow(nu, f.order, digits);
                if f.alternating && nu % 2 == 0 {
                    step = -step;
                }
                *acc = &*acc + &step;
            }
        }
        let mut t = match base {
            SumBase::Integer => inv_pow(nu, q, digits),
            SumBase::HalfInteger => inv_pow(2 * nu + 1, q, digits) * &two_pow_q,
        };
        for acc in &accs {
            t = t * acc;
        }
        if alt {
            let neg = match base {
                SumBase::Integer => nu % 2 == 0,
                SumBase::HalfInteger => nu % 2 == 1,
            };
            if neg {
                t = -t;
            }
        }
        t
    };
    sum_series(term, spec.log_power(), cfg)
}

fn mzv_admissible(index: &[i64]) -> Result<()> {
    if index.is_empty() {
        return Err(Error::Inadmissible("empty index".into()));
    }
    if index.iter().any(|&k| k == 0) {
        return Err(Error::Inadmissible("zero entry".into()));
    }
    if index[0] == 1 {
        return Err(Error::Inadmissible("k1=1".into()));
    }
    let mut w = 0u64;
    for (j, k) in index.iter().enumerate() {
        w += k.unsigned_abs();
        if w <= (j + 1) as u64 {
            return Err(Error::Inadmissible(format!(
                "partial weight {} not above depth {} prefix",
                w,
                j + 1
            )));
        }
    }
    Ok(())
}

/// Multiple zeta value for a signed admissible index, by bottom-up prefix
/// sums (one running accumulator per depth level).
pub fn mzv(index: &[i64], cfg: &EvalConfig) -> Result<SeriesResult> {
    mzv_admissible(index)?;
    let digits = cfg.digits;
    let ks = index.to_vec();
    let r = ks.len();
    let mut prefix: Vec<BigReal> = vec![BigReal::zero(digits); r]; // prefix[j] for level j+1
    let log_power = index[1..].iter().filter(|&&k| k == 1).count() as u32;

    let term = move |n: u64| -> BigReal {
        let part = |k: i64| -> BigReal {
            let mut t = inv_pow(n, k.unsigned_abs() as u32, digits);
            if k < 0 && n % 2 == 1 {
                t = -t;
            }
            t
        };
        let outer = if r == 1 {
            part(ks[0])
        } else {
            part(ks[0]) * &prefix[1]
        };
        for j in 1..r {
            let t = part(ks[j]);
            let inner = if j + 1 < r { t * &prefix[j + 1] } else { t };
            prefix[j] = &prefix[j] + &inner;
        }
        outer
    };
    sum_series(term, log_power, cfg)
}

/// Multiple R-value
/// `R(k) = 2^w sum_{n1>...>nr>0} prod sgn(k_j)^(n_j) / ((2n1-1)^|k1| (2n2)^|k2| ... (2nr)^|kr|)`.
///
/// Evaluated bottom-up with one prefix-sum accumulator per depth level
/// (`O(N r)` work) and the shared checkpoint extrapolation on the outer sum.
pub fn mrv(index: &MrvIndex, cfg: &EvalConfig) -> Result<SeriesResult> {
    index.validate()?;
    let digits = cfg.digits;
    let ks = index.parts.clone();
    let r = ks.len();
    let two_pow_w = BigReal::from_bigint(&(BigInt::one() << index.weight() as usize), digits);
    let mut prefix: Vec<BigReal> = vec![BigReal::zero(digits); r];
    let log_power = index.log_power();

    let term = move |n: u64| -> BigReal {
        let signed = |k: i64, t: BigReal| -> BigReal {
            if k < 0 && n % 2 == 1 {
                -t
            } else {
                t
            }
        };
        let outer_t = signed(ks[0], inv_pow(2 * n - 1, ks[0].unsigned_abs() as u32, digits));
        let outer = if r == 1 {
            outer_t * &two_pow_w
        } else {
            outer_t * &two_pow_w * &prefix[1]
        };
        for j in 1..r {
            let t = signed(ks[j], inv_pow(2 * n, ks[j].unsigned_abs() as u32, digits));
            let inner = if j + 1 < r { t * &prefix[j + 1] } else { t };
            prefix[j] = &prefix[j] + &inner;
        }
        outer
    };
    sum_series(term, log_power, cfg)
}

/// Exact partial sum of the same prefix-sum recurrence used by [`mrv`],
/// truncated at outer index `n_max`; the test suites compare it against
/// naive nested enumeration.
pub fn mrv_partial_exact(index: &MrvIndex, n_max: u64) -> Result<BigRational> {
    index.validate()?;
    let ks = &index.parts;
    let r = ks.len();
    let two_pow_w = BigRational::from(BigInt::one() << index.weight() as usize);
    let mut prefix: Vec<BigRational> = vec![BigRational::zero(); r];
    let mut sum = BigRational::zero();
    for n in 1..=n_max {
        let part = |k: i64, base: u64| -> BigRational {
            let neg = k < 0 && n % 2 == 1;
            let num = if neg { -BigInt::one() } else { BigInt::one() };
            BigRational::new(num, BigInt::from(base).pow(k.unsigned_abs() as u32))
        };
        let outer_t = part(ks[0], 2 * n - 1);
        sum += if r == 1 { outer_t } else { outer_t * &prefix[1] };
        for j in 1..r {
            let t = part(ks[j], 2 * n);
            let inner = if j + 1 < r { t * &prefix[j + 1] } else { t };
            prefix[j] += inner;
        }
    }
    Ok(sum * two_pow_w)
}

/// Double-value families reducible to a single-index series over odd
/// harmonic prefixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleKind {
    /// `t(k1,k2)`: both indices odd.
    SmallT,
    /// `T(k1,k2)`: parity-interleaved, outer even.
    BigT,
    /// `2^(k1+k2) t(k1,k2)`
    SmallTTilde,
    /// `2^(k1+k2-2) T(k1,k2)`
    BigTTilde,
    /// Double zeta `zeta(k1,k2)` through its harmonic-prefix form.
    Zeta2,
}

/// Evaluates a double t/T/zeta value; `k2 = 0` selects the degenerate
/// depth-one value of the same family.
pub fn double_value(kind: DoubleKind, k1: u32, k2: u32, cfg: &EvalConfig) -> Result<SeriesResult> {
    if k1 <= 1 {
        return Err(Error::Domain(format!("double value requires k1 > 1, got {k1}")));
    }
    let digits = cfg.digits;
    let log_power = if k2 == 1 { 1 } else { 0 };
    let mut h = BigReal::zero(digits);
    let two_pow_k2 = BigReal::from_bigint(&(BigInt::one() << k2 as usize), digits);

    let scale = {
        // Normalization 2^w for t~ and 2^(w-r) for T~, with r the depth.
        let e: i64 = match kind {
            DoubleKind::SmallT | DoubleKind::BigT | DoubleKind::Zeta2 => 0,
            DoubleKind::SmallTTilde => (k1 + k2) as i64,
            DoubleKind::BigTTilde if k2 == 0 => k1 as i64 - 1,
            DoubleKind::BigTTilde => (k1 + k2) as i64 - 2,
        };
        BigReal::from_i64(2, digits).powi(e)
    };

    let term = move |n: u64| -> BigReal {
        match kind {
            DoubleKind::SmallT | DoubleKind::SmallTTilde => {
                // t(k1,k2) = sum_n (2n-1)^-k1 * 2^-k2 * h_(n-1)^(k2)
                let head = inv_pow(2 * n - 1, k1, digits) * &scale;
                if k2 == 0 {
                    head
                } else {
                    let v = &head * &h / &two_pow_k2;
                    h = &h + &(inv_pow(2 * n - 1, k2, digits) * &two_pow_k2);
                    v
                }
            }
            DoubleKind::BigT | DoubleKind::BigTTilde => {
                // T(k1,k2) = 4 sum_m (2m)^-k1 * 2^-k2 * h_m^(k2)
                let four = BigReal::from_i64(4, digits);
                if k2 == 0 {
                    // depth-one T(k) = 2 sum (2n-1)^-k
                    let two = BigReal::from_i64(2, digits);
                    inv_pow(2 * n - 1, k1, digits) * &scale * two
                } else {
                    h = &h + &(inv_pow(2 * n - 1, k2, digits) * &two_pow_k2);
                    inv_pow(2 * n, k1, digits) * &scale * &four * &h / &two_pow_k2
                }
            }
            DoubleKind::Zeta2 => {
                // zeta(k1,k2) = sum_n n^-k1 H_(n-1)^(k2)
                if k2 == 0 {
                    inv_pow(n, k1, digits)
                } else {
                    let v = inv_pow(n, k1, digits) * &h;
                    h = &h + &inv_pow(n, k2, digits);
                    v
                }
            }
        }
    };
    sum_series(term, log_power, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn assert_close(a: &BigReal, b: &BigReal, tol: f64) {
        let d = (a - b).abs();
        assert!(
            d < BigReal::from_f64(tol, 40),
            "difference {} exceeds {tol} (a = {a}, b = {b})",
            d
        );
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 3, HarmonicKind::Plain), BigRational::zero());
        assert_eq!(
            harmonic(3, 1, HarmonicKind::Plain),
            BigRational::new(BigInt::from(11), BigInt::from(6))
        );
        // h_2^(2) = 4 + 4/9
        assert_eq!(
            harmonic(2, 2, HarmonicKind::Odd),
            BigRational::new(BigInt::from(40), BigInt::from(9))
        );
        assert_eq!(
            harmonic(2, 1, HarmonicKind::Alternating),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
    }

    #[test]
    fn empty_factor_r_sum_is_single_r_value() {
        let c = cfg();
        let spec = SumSpec::new(vec![], SumBase::HalfInteger, 2, false).unwrap();
        let r = euler_sum(&spec, &c).unwrap();
        assert_close(&r.value, &hp::r_single(2, &c).unwrap(), 1e-10);
        // alternating empty-factor sum: 2^q beta(q) = -R(bar q)
        let spec2 = SumSpec::new(vec![], SumBase::HalfInteger, 2, true).unwrap();
        let r2 = euler_sum(&spec2, &c).unwrap();
        assert_close(&r2.value, &(-hp::r_single(-2, &c).unwrap()), 1e-10);
    }

    #[test]
    fn classical_euler_sum_s12() {
        // S_{1,2} = 2 zeta(3), checked against the direct-summation oracle.
        let c = cfg();
        let spec = SumSpec::new(vec![HarmonicFactor::plain(1)], SumBase::Integer, 2, false).unwrap();
        let r = euler_sum(&spec, &c).unwrap();

        // oracle: Kahan sum of 1e7 terms + Euler-Maclaurin tail
        let n = 10_000_000u64;
        let (mut s, mut comp, mut hh) = (0.0f64, 0.0f64, 0.0f64);
        let gamma = 0.5772156649015328606_f64;
        for k in 1..=n {
            hh += 1.0 / k as f64;
            let x = hh / (k as f64 * k as f64);
            let y = x - comp;
            let t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        let nf = n as f64;
        let tail = (nf.ln() + gamma + 1.0) / nf + 0.25 / (nf * nf)
            - (nf.ln() + gamma) / (2.0 * nf * nf);
        let oracle = s + tail;
        assert!((r.value.approx_f64() - oracle).abs() < 1e-10, "{} vs {}", r.value, oracle);

        let expect = hp::zeta(3, &c).unwrap() * BigReal::from_i64(2, 40);
        assert_close(&r.value, &expect, 1e-12);
    }

    #[test]
    fn rejects_small_exponent() {
        assert!(SumSpec::new(vec![], SumBase::HalfInteger, 1, false).is_err());
    }

    #[test]
    fn mzv_depth_one_and_euler_reduction() {
        let c = cfg();
        let z3 = hp::zeta(3, &c).unwrap();
        let r = mzv(&[3], &c).unwrap();
        assert_close(&r.value, &z3, 1e-12);
        // Euler: zeta(2,1) = zeta(3)
        let r21 = mzv(&[2, 1], &c).unwrap();
        assert_close(&r21.value, &z3, 1e-8);
        assert!(mzv(&[1, 2], &c).is_err());
        assert!(mzv(&[2, 0], &c).is_err());
    }

    #[test]
    fn mzv_32_against_reduction_oracle() {
        // zeta(3,2) = sum H_(n-1)^(2) / n^3 via the double_value route.
        let c = cfg();
        let a = mzv(&[3, 2], &c).unwrap();
        let b = double_value(DoubleKind::Zeta2, 3, 2, &c).unwrap();
        assert_close(&a.value, &b.value, 1e-10);
    }

    #[test]
    fn mrv_depth_one_is_single_r() {
        let c = cfg();
        let idx = MrvIndex::new(vec![2]).unwrap();
        let r = mrv(&idx, &c).unwrap();
        assert_close(&r.value, &hp::r_single(2, &c).unwrap(), 1e-12);
        assert!(MrvIndex::new(vec![1, 2]).is_err());
        assert!(MrvIndex::new(vec![2, 0]).is_err());
    }

    #[test]
    fn mrv_21_closed_form() {
        // R(2,1) = 7 zeta(3) - 6 zeta(2) log 2
        let c = cfg();
        let idx = MrvIndex::new(vec![2, 1]).unwrap();
        let r = mrv(&idx, &c).unwrap();
        let expect = hp::zeta(3, &c).unwrap() * BigReal::from_i64(7, 40)
            - hp::zeta(2, &c).unwrap() * BigReal::from_i64(6, 40) * hp::log2(&c);
        assert_close(&r.value, &expect, 1e-8);
    }

    #[test]
    fn mrv_alternating_against_nested_oracle() {
        // R(3, -2) against a brute-force nested double loop with Richardson
        // extrapolation in the outer truncation.
        let c = cfg();
        let idx = MrvIndex::new(vec![3, -2]).unwrap();
        let r = mrv(&idx, &c).unwrap();

        let partial = |nmax: u64| -> f64 {
            let mut inner = 0.0f64; // sum over n2 < n1 of (-1)^(n2)/ (2 n2)^2
            let mut total = 0.0f64;
            for n1 in 1..=nmax {
                total += inner / ((2 * n1 - 1) as f64).powi(3);
                let s = if n1 % 2 == 1 { -1.0 } else { 1.0 };
                inner += s / ((2 * n1) as f64).powi(2);
            }
            total * 32.0
        };
        let (a, b) = (partial(10_000), partial(20_000));
        let oracle = 2.0 * b - a; // first-order Richardson in 1/N
        assert!((r.value.approx_f64() - oracle).abs() < 1e-6, "{} vs {oracle}", r.value);
    }

    #[test]
    fn mrv_prefix_matches_nested_enumeration_exactly() {
        let idx = MrvIndex::new(vec![2, 1, -2]).unwrap();
        let fast = mrv_partial_exact(&idx, 40).unwrap();
        // independent naive triple loop
        let mut naive = BigRational::zero();
        for n1 in 1u64..=40 {
            for n2 in 1..n1 {
                for n3 in 1..n2 {
                    let mut term = BigRational::new(
                        BigInt::one(),
                        BigInt::from(2 * n1 - 1).pow(2)
                            * BigInt::from(2 * n2)
                            * BigInt::from(2 * n3).pow(2),
                    );
                    if n3 % 2 == 1 {
                        term = -term;
                    }
                    naive += term;
                }
            }
        }
        naive *= BigRational::from(BigInt::from(32));
        assert_eq!(fast, naive);
    }

    #[test]
    fn double_values() {
        let c = cfg();
        // degenerate depth-1: t~(2) = R(2)
        let r = double_value(DoubleKind::SmallTTilde, 2, 0, &c).unwrap();
        assert_close(&r.value, &hp::r_single(2, &c).unwrap(), 1e-10);
        // zeta2 route equals mzv route
        let a = double_value(DoubleKind::Zeta2, 3, 2, &c).unwrap();
        let b = mzv(&[3, 2], &c).unwrap();
        assert_close(&a.value, &b.value, 1e-10);
        assert!(double_value(DoubleKind::SmallT, 1, 2, &c).is_err());
    }

    #[test]
    fn big_t_tilde_against_brute_force() {
        // T~(3,1) against the nested definition with Richardson in the outer
        // truncation.
        let c = cfg();
        let r = double_value(DoubleKind::BigTTilde, 3, 1, &c).unwrap();
        // T~(a,b) = sum_m h_m^(b) / m^a with the odd harmonic h; the inner
        // accumulator below is h_m^(1)/2.
        let partial = |nmax: u64| -> f64 {
            let mut h = 0.0f64;
            let mut total = 0.0f64;
            for m in 1..=nmax {
                h += 1.0 / (2.0 * m as f64 - 1.0);
                total += 2.0 * h / (m as f64).powi(3);
            }
            total
        };
        let (a, b) = (partial(10_000), partial(20_000));
        let oracle = 2.0 * b - a;
        assert!((r.value.approx_f64() - oracle).abs() < 1e-6, "{} vs {}", r.value, oracle);
    }

    #[test]
    fn d3_relation_connects_families() {
        // sum h_n^(k1) H_(n-1)^(k3) / n^k2 = R(k1) zeta(k2,k3) - R(k1,k2,k3)
        let c = cfg();
        for (k1, k2, k3) in [(2u32, 2i64, 1i64), (2, 2, 2), (3, 2, 1)] {
            let digits = c.digits;
            let mut h_odd = BigReal::zero(digits);
            let mut h_plain = BigReal::zero(digits);
            let two_pow = BigReal::from_bigint(&(BigInt::one() << k1 as usize), digits);
            let lhs = sum_series(
                |n| {
                    h_odd = &h_odd + &(inv_pow(2 * n - 1, k1, digits) * &two_pow);
                    let v = &h_odd * &h_plain * inv_pow(n, k2 as u32, digits);
                    h_plain = &h_plain + &inv_pow(n, k3 as u32, digits);
                    v
                },
                if k3 == 1 { 1 } else { 0 },
                &c,
            )
            .unwrap();
            let rhs = hp::r_single(k1 as i64, &c).unwrap() * mzv(&[k2, k3], &c).unwrap().value
                - mrv(&MrvIndex::new(vec![k1 as i64, k2, k3]).unwrap(), &c)
                    .unwrap()
                    .value;
            assert_close(&lhs.value, &rhs, 1e-6);
        }
    }
}
