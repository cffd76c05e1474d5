//! Exact bivariate truncated power series over symbolic coefficients, and
//! the closed generating series of the height-one multiple R-values
//! `R(m+1, 1, ..., 1)`: the coefficient of `x^m y^n` is the value with
//! `n - 1` trailing ones, a polynomial in `log 2` and zeta values.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::hp;
use crate::symbolic::SymExpr;

/// Bivariate power series truncated at total degree `d`, with exact
/// symbolic coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    d: u32,
    coeffs: BTreeMap<(u32, u32), SymExpr>,
}

impl BiSeries {
    pub fn zero(d: u32) -> Self {
        BiSeries { d, coeffs: BTreeMap::new() }
    }

    pub fn one(d: u32) -> Self {
        let mut s = Self::zero(d);
        s.set(0, 0, SymExpr::one());
        s
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Sets the coefficient of `x^m y^n`; silently drops terms beyond the
    /// truncation degree.
    pub fn set(&mut self, m: u32, n: u32, c: SymExpr) {
        if m + n > self.d {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(m, n));
        } else {
            self.coeffs.insert((m, n), c);
        }
    }

    pub fn coeff(&self, m: u32, n: u32) -> SymExpr {
        self.coeffs.get(&(m, n)).cloned().unwrap_or_else(SymExpr::zero)
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let d = self.d.min(other.d);
        let mut out = BiSeries::zero(d);
        for (&(m, n), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if m + n <= d {
                out.set(m, n, &out.coeff(m, n) + c);
            }
        }
        out
    }

    pub fn neg(&self) -> BiSeries {
        let mut out = BiSeries::zero(self.d);
        for (&(m, n), c) in &self.coeffs {
            out.set(m, n, -c);
        }
        out
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let d = self.d.min(other.d);
        let mut out = BiSeries::zero(d);
        for (&(m1, n1), c1) in &self.coeffs {
            for (&(m2, n2), c2) in &other.coeffs {
                let (m, n) = (m1 + m2, n1 + n2);
                if m + n <= d {
                    out.set(m, n, out.coeff(m, n) + c1 * c2);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> BiSeries {
        let mut out = BiSeries::zero(self.d);
        for (&(m, n), v) in &self.coeffs {
            out.set(m, n, v.scale(c));
        }
        out
    }

    /// `exp` of a series with zero constant term, truncated at the series
    /// degree: `sum_{j<=d} self^j / j!` with exact rational division.
    pub fn exp(&self) -> Result<BiSeries> {
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::Domain("series exp needs a zero constant term".into()));
        }
        let mut out = BiSeries::one(self.d);
        let mut power = BiSeries::one(self.d);
        let mut fact = BigInt::one();
        for j in 1..=self.d as u64 {
            power = power.mul(self);
            fact *= BigInt::from(j);
            out = out.add(&power.scale(&BigRational::new(BigInt::one(), fact.clone())));
        }
        Ok(out)
    }
}

/// The height-one generating series truncated at total degree `d`: the
/// difference of two exponentials whose arguments are explicit zeta-series,
/// with `(x+y)^n` expanded binomially. The `x^0` slice cancels identically.
pub fn height_one_gf(d: u32) -> Result<BiSeries> {
    if d < 2 {
        return Err(Error::Domain("generating series needs degree >= 2".into()));
    }
    let minus_two_log2 = SymExpr::log2().scale_int(-2);

    // first exponent: -2 log2 y + 2 sum_{n>=2} (1 - 2^(n-1)) zeta(n) y^n / n
    let mut e1 = BiSeries::zero(d);
    e1.set(0, 1, minus_two_log2.clone());
    for n in 2..=d {
        let c = BigRational::new(
            (BigInt::one() - (BigInt::one() << (n - 1) as usize)) * 2,
            BigInt::from(n),
        );
        e1.set(0, n, SymExpr::zeta(n).scale(&c));
    }

    // second exponent:
    // -2 log2 y + sum_{n>=2} zeta(n)/n [ (2^n - 1) x^n + y^n - (2^n - 1)(x+y)^n ]
    let mut e2 = BiSeries::zero(d);
    e2.set(0, 1, minus_two_log2);
    for n in 2..=d {
        let zn = SymExpr::zeta(n);
        let over_n = |num: BigInt| BigRational::new(num, BigInt::from(n));
        let two_n_minus_1: BigInt = (BigInt::one() << n as usize) - 1;
        // (2^n - 1) x^n and y^n
        e2.set(n, 0, zn.scale(&over_n(two_n_minus_1.clone())) + e2.coeff(n, 0));
        e2.set(0, n, e2.coeff(0, n) + zn.scale(&over_n(BigInt::one())));
        // -(2^n - 1) (x + y)^n, binomially
        for k in 0..=n {
            let c = hp::binomial(n as usize, k as usize) * &two_n_minus_1;
            let cur = e2.coeff(k, n - k);
            e2.set(k, n - k, cur - zn.scale(&over_n(c)));
        }
    }

    Ok(e1.exp()?.sub(&e2.exp()?))
}

const DEFAULT_DEGREE: u32 = 6;

static GF_CACHE: Mutex<Option<HashMap<u32, BiSeries>>> = Mutex::new(None);

fn cached_gf(d: u32) -> Result<BiSeries> {
    if let Some(gf) = {
        let guard = GF_CACHE.lock().expect("gf cache");
        guard.as_ref().and_then(|m| m.get(&d).cloned())
    } {
        return Ok(gf);
    }
    let gf = height_one_gf(d)?;
    let mut guard = GF_CACHE.lock().expect("gf cache");
    guard.get_or_insert_with(HashMap::new).entry(d).or_insert_with(|| gf.clone());
    Ok(gf)
}

/// Exact symbolic value of the height-one multiple R-value
/// `R(m+1, 1^(n-1))` for `m, n >= 1`, read off the generating series at the
/// default truncation degree.
pub fn height_one_mrv(m: u32, n: u32) -> Result<SymExpr> {
    height_one_mrv_with_degree(m, n, DEFAULT_DEGREE.max(m + n))
}

/// Same, at an explicit truncation degree `d >= m + n`.
pub fn height_one_mrv_with_degree(m: u32, n: u32, d: u32) -> Result<SymExpr> {
    if m < 1 || n < 1 {
        return Err(Error::Domain("coefficient indices must be >= 1".into()));
    }
    if m + n > d {
        return Err(Error::Domain(format!("m + n = {} exceeds the degree {d}", m + n)));
    }
    Ok(cached_gf(d)?.coeff(m, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::EvalConfig;
    use crate::sums::{self, MrvIndex};
    use crate::BigReal;
    use proptest::prelude::*;

    #[test]
    fn exp_of_zero_is_one() {
        let z = BiSeries::zero(4);
        assert_eq!(z.exp().unwrap(), BiSeries::one(4));
    }

    #[test]
    fn exp_of_log2_y() {
        // exp(log2 * y) at degree 2: 1 + log2 y + 1/2 log2^2 y^2
        let mut s = BiSeries::zero(2);
        s.set(0, 1, SymExpr::log2());
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(0, 0), SymExpr::one());
        assert_eq!(e.coeff(0, 1), SymExpr::log2());
        assert_eq!(
            e.coeff(0, 2),
            SymExpr::log2().pow(2).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
        );
        assert!(s.exp().unwrap().coeff(1, 1).is_zero());
        let mut bad = BiSeries::zero(2);
        bad.set(0, 0, SymExpr::one());
        assert!(bad.exp().is_err());
    }

    #[test]
    fn gf_x0_slice_vanishes() {
        let gf = height_one_gf(6).unwrap();
        for n in 0..=6 {
            assert!(gf.coeff(0, n).is_zero(), "x^0 y^{n} = {}", gf.coeff(0, n));
        }
    }

    #[test]
    fn depth_one_column_is_single_r() {
        // coefficient of x^m y^1 is R(m+1) = (2^(m+1) - 1) zeta(m+1)
        let c11 = height_one_mrv(1, 1).unwrap();
        assert_eq!(c11, SymExpr::zeta(2).scale_int(3));
        let c21 = height_one_mrv(2, 1).unwrap();
        assert_eq!(c21, SymExpr::zeta(3).scale_int(7));
    }

    #[test]
    fn paper_coefficients_match_catalog() {
        // R(2,1) at (1,2) and R(3,1) at (2,2), after even-zeta normalization
        let r21 = height_one_mrv(1, 2).unwrap().normalize_even_zeta();
        let expect = (SymExpr::zeta(3).scale_int(7)
            - (SymExpr::zeta(2) * SymExpr::log2()).scale_int(6))
        .normalize_even_zeta();
        assert_eq!(r21, expect, "{r21} vs {expect}");

        let r31 = height_one_mrv(2, 2).unwrap().normalize_even_zeta();
        let expect = (SymExpr::zeta(4).scale(&BigRational::new(45.into(), 4.into()))
            - (SymExpr::log2() * SymExpr::zeta(3)).scale_int(14))
        .normalize_even_zeta();
        assert_eq!(r31, expect, "{r31} vs {expect}");
    }

    #[test]
    fn numeric_cross_check_small() {
        // eval of the (1,2) coefficient against the series engine
        let cfg = EvalConfig::default();
        let sym = height_one_mrv(1, 2).unwrap().eval(&cfg).unwrap();
        let num = sums::mrv(&MrvIndex::new(vec![2, 1]).unwrap(), &cfg).unwrap().value;
        assert!(
            (&sym - &num).abs() < BigReal::from_f64(1e-8, 40),
            "sym {sym} vs num {num}"
        );
    }

    #[test]
    fn degree_bounds() {
        assert!(height_one_mrv_with_degree(3, 3, 4).is_err());
        assert!(height_one_mrv(0, 1).is_err());
        assert!(height_one_gf(1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn exp_inverse_property(seed in 0u64..1000) {
            // exp(a) * exp(-a) = 1 for a small random series without
            // constant term
            let d = 4u32;
            let mut a = BiSeries::zero(d);
            let atoms = [SymExpr::log2(), SymExpr::zeta(2), SymExpr::zeta(3)];
            let mut s = seed;
            for m in 0..=d {
                for n in 0..=d - m {
                    if m + n == 0 {
                        continue;
                    }
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let pick = (s >> 33) % 4;
                    if pick < 3 {
                        let c = ((s >> 20) % 7) as i64 - 3;
                        a.set(m, n, atoms[pick as usize].scale_int(c));
                    }
                }
            }
            let e = a.exp().unwrap();
            let einv = a.neg().exp().unwrap();
            prop_assert_eq!(e.mul(&einv), BiSeries::one(d));
        }
    }
}
