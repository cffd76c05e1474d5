//! Arbitrary-precision real numbers.
//!
//! `BigReal` wraps a correctly-rounded binary float and carries its decimal
//! working precision, so every arithmetic operation rounds to the precision
//! of its widest operand. All higher modules do numeric work through this
//! type only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::Zero;

#[cfg(test)]
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Guard bits kept on top of the requested decimal precision.
const GUARD_BITS: usize = 32;

static CONSTS: Mutex<Option<Consts>> = Mutex::new(None);

/// Runs `f` with the process-wide constants cache of the float backend.
pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    let mut guard = CONSTS.lock().expect("consts cache poisoned");
    let cc = guard.get_or_insert_with(|| Consts::new().expect("constants cache allocation"));
    f(cc)
}

/// Binary precision backing `digits` decimal digits. The backend requires
/// at least one machine word.
pub(crate) fn bits_for(digits: u32) -> usize {
    // log2(10) = 3.3219...; round up and add guard bits.
    ((digits as usize * 3322).div_ceil(1000) + GUARD_BITS).max(64)
}

/// A real number at a fixed decimal working precision.
///
/// Arithmetic between values of different precision rounds to the larger of
/// the two precisions. Individual operations are correctly rounded, hence
/// exact to within 1 ulp of the working precision.
#[derive(Debug, Clone)]
pub struct BigReal {
    x: BigFloat,
    digits: u32,
}

impl BigReal {
    fn wrap(x: BigFloat, digits: u32) -> Self {
        BigReal { x, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Self::wrap(BigFloat::from_i64(0, bits_for(digits)), digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_i64(v, bits_for(digits)), digits)
    }

    pub fn from_u64(v: u64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_u64(v, bits_for(digits)), digits)
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        Self::wrap(BigFloat::from_f64(v, bits_for(digits)), digits)
    }

    /// Exact conversion of an integer; the value is representable whenever
    /// its bit length fits the working precision, otherwise it rounds.
    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        let bits = bits_for(digits);
        if v.is_zero() {
            return Self::zero(digits);
        }
        let (sign, mag) = (v.sign(), v.magnitude());
        let len = mag.bits();
        let words = (len as usize).div_ceil(64);
        let shifted: BigUint = mag << (words * 64 - len as usize);
        let mut w = shifted.to_u64_digits();
        w.resize(words, 0);
        let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let f = BigFloat::from_words(&w, s, len as i32);
        // Renormalize to the working precision.
        let f = f.add(&BigFloat::from_i64(0, bits), bits, RM);
        Self::wrap(f, digits)
    }

    /// Conversion of a rational with at most one rounding in the division.
    pub fn from_rational(v: &BigRational, digits: u32) -> Self {
        let n = Self::from_bigint(v.numer(), digits);
        let d = Self::from_bigint(v.denom(), digits);
        &n / &d
    }

    /// Ratio of two machine integers at working precision.
    pub fn from_ratio(num: i64, den: i64, digits: u32) -> Self {
        &Self::from_i64(num, digits) / &Self::from_i64(den, digits)
    }

    /// The exact rational value of this float.
    pub fn to_rational(&self) -> BigRational {
        if self.x.is_zero() {
            return BigRational::zero();
        }
        let words = self.x.mantissa_digits().expect("finite value");
        let m = BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let e = self.x.exponent().expect("finite value") as i64;
        let shift = e - (words.len() as i64) * 64;
        let mut num = BigInt::from(m);
        let mut den = BigInt::from(1u8);
        if shift >= 0 {
            num <<= shift as usize;
        } else {
            den <<= (-shift) as usize;
        }
        if self.x.is_negative() {
            num = -num;
        }
        BigRational::new(num, den)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.x.is_nan() && !self.x.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.x.abs(), self.digits)
    }

    pub fn recip(&self) -> Self {
        let bits = self.bits();
        Self::wrap(BigFloat::from_i64(1, bits).div(&self.x, bits, RM), self.digits)
    }

    /// Integer power by repeated squaring; negative exponents go through the
    /// reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let bits = self.bits();
        if n >= 0 {
            Self::wrap(self.x.powi(n as usize, bits, RM), self.digits)
        } else {
            self.powi(-n).recip()
        }
    }

    /// One unit in the last place of `self` (a power of two), used as a
    /// rounding-noise floor. Returns the smallest positive value for zero.
    pub fn ulp(&self) -> Self {
        let bits = self.bits();
        match self.x.exponent() {
            Some(e) if !self.x.is_zero() => {
                let exp = e as i64 - bits as i64;
                Self::wrap(pow2(exp, bits), self.digits)
            }
            _ => Self::wrap(BigFloat::min_positive_normal(bits), self.digits),
        }
    }

    /// Closest `f64`, for diagnostics and error reporting.
    pub fn approx_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        if self.x.is_nan() {
            return f64::NAN;
        }
        if self.x.is_inf() {
            return if self.x.is_inf_neg() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let words = self.x.mantissa_digits().expect("finite");
        let e = self.x.exponent().expect("finite") as i64;
        let hi = words[words.len() - 1] as f64;
        let lo = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
        let m = hi + lo / 1.8446744073709552e19; // 2^64
        let v = m * exp2_f64(e - 64);
        if self.x.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with `sig` significant digits, rounded half-even.
    pub fn to_decimal(&self, sig: u32) -> String {
        let sig = sig.max(1) as usize;
        if self.x.is_zero() {
            return "0".into();
        }
        if !self.is_finite() {
            return format!("{}", self.x);
        }
        let (sign, mut digits, mut e10) =
            with_consts(|cc| self.x.convert_to_radix(astro_float::Radix::Dec, RM, cc))
                .expect("finite value converts");
        // Round the digit string at `sig` digits, half-even.
        if digits.len() > sig {
            let round_up = match digits[sig].cmp(&5) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    digits[sig + 1..].iter().any(|&d| d != 0) || digits[sig - 1] % 2 == 1
                }
            };
            digits.truncate(sig);
            if round_up {
                let mut i = sig;
                loop {
                    if i == 0 {
                        digits.insert(0, 1);
                        e10 += 1;
                        digits.truncate(sig);
                        break;
                    }
                    i -= 1;
                    if digits[i] == 9 {
                        digits[i] = 0;
                    } else {
                        digits[i] += 1;
                        break;
                    }
                }
            }
        }
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        out.push((b'0' + digits[0]) as char);
        if digits.len() > 1 {
            out.push('.');
            for d in &digits[1..] {
                out.push((b'0' + d) as char);
            }
        }
        let dec_exp = e10 - 1;
        if dec_exp != 0 {
            out.push('e');
            out.push_str(&dec_exp.to_string());
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn from_raw(x: BigFloat, digits: u32) -> Result<Self> {
        if x.is_nan() || x.is_inf() {
            return Err(Error::Numeric("non-finite value".into()));
        }
        Ok(Self::wrap(x, digits))
    }
}

/// 2^e at the given binary precision.
fn pow2(e: i64, bits: usize) -> BigFloat {
    let two = BigFloat::from_i64(2, bits);
    two.powi(e.unsigned_abs() as usize, bits, RM).pow_sign(e)
}

trait PowSign {
    fn pow_sign(self, e: i64) -> Self;
}

impl PowSign for BigFloat {
    fn pow_sign(self, e: i64) -> Self {
        if e >= 0 {
            self
        } else {
            let bits = self.precision().unwrap_or(64);
            BigFloat::from_i64(1, bits).div(&self, bits, RM)
        }
    }
}

fn exp2_f64(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        f64::from_bits(((e + 1023).max(1) as u64) << 52)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let digits = self.digits.max(rhs.digits);
                let bits = bits_for(digits);
                BigReal::wrap(self.x.$raw(&rhs.x, bits, RM), digits)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(BigFloat::neg(&self.x), self.digits)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.x.cmp(&other.x), Some(0))
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.cmp(&other.x).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.digits))
    }
}
