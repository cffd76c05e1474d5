//! Exact symbolic layer: polynomials with rational coefficients over a
//! fixed set of constant atoms, so closed forms can be stored and compared
//! exactly, with a numeric bridge for cross-validation.
//!
//! Construction rewrites keep expressions canonical:
//!
//! - `R(n)` is never an atom: it becomes `(2^n - 1) zeta(n)` (or `2 log 2`
//!   for `n = 1`);
//! - `zeta(bar j)` becomes `-eta(j)`, and `eta(1)` becomes `log 2`;
//! - `R(bar n)` for odd `n` has the closed form `rational * pi^n` (from
//!   Euler numbers) and is rewritten; even `n` stays an opaque atom.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::hp::{self, BigReal, EvalConfig};
use crate::sums::{self, DoubleKind};

/// An evaluable constant. Arguments are validated by the constructor
/// functions on [`SymExpr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstAtom {
    Pi,
    Log2,
    /// `zeta(n)`, `n >= 2`
    Zeta(u32),
    /// `eta(n)`, `n >= 2` after canonicalization
    Eta(u32),
    /// `R(bar n) = -2^n beta(n)`, kept atomic for even `n >= 2`
    RBar(u32),
    /// double zeta `zeta(a, b)`
    DoubleZeta(u32, u32),
    /// normalized double T-value `T~(a, b)`
    BigT(u32, u32),
    /// normalized double t-value `t~(a, b)`
    SmallT(u32, u32),
}

impl ConstAtom {
    fn render(&self) -> String {
        match self {
            ConstAtom::Pi => "pi".into(),
            ConstAtom::Log2 => "log2".into(),
            ConstAtom::Zeta(n) => format!("z{n}"),
            ConstAtom::Eta(n) => format!("zbar{n}"),
            ConstAtom::RBar(n) => format!("Rbar{n}"),
            ConstAtom::DoubleZeta(a, b) => format!("z{a}_{b}"),
            ConstAtom::BigT(a, b) => format!("Tt({a},{b})"),
            ConstAtom::SmallT(a, b) => format!("tt({a},{b})"),
        }
    }

    fn eval(&self, cfg: &EvalConfig) -> Result<BigReal> {
        Ok(match self {
            ConstAtom::Pi => hp::pi(cfg),
            ConstAtom::Log2 => hp::log2(cfg),
            ConstAtom::Zeta(n) => hp::zeta(*n, cfg)?,
            ConstAtom::Eta(n) => hp::eta(*n, cfg),
            ConstAtom::RBar(n) => hp::r_single(-(*n as i64), cfg)?,
            ConstAtom::DoubleZeta(a, b) => sums::double_value(DoubleKind::Zeta2, *a, *b, cfg)?.value,
            ConstAtom::BigT(a, b) => sums::double_value(DoubleKind::BigTTilde, *a, *b, cfg)?.value,
            ConstAtom::SmallT(a, b) => {
                sums::double_value(DoubleKind::SmallTTilde, *a, *b, cfg)?.value
            }
        })
    }
}

/// A multiset of atoms (product), the key of one polynomial term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<ConstAtom, u32>);

impl Monomial {
    fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    fn atom(a: ConstAtom) -> Self {
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        Monomial(m)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (a, e) in &other.0 {
            *m.entry(*a).or_insert(0) += e;
        }
        Monomial(m)
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(a, e)| {
                if *e == 1 {
                    a.render()
                } else {
                    format!("{}^{}", a.render(), e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Shorter products first, then lexicographic; gives stable, readable
        // rendering with the leading single constants up front.
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Polynomial with exact rational coefficients over [`ConstAtom`]s, kept in
/// canonical form (sorted monomials, no zero coefficients), so equality of
/// canonical forms is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr::default()
    }

    pub fn one() -> Self {
        SymExpr::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        let mut e = SymExpr::zero();
        if !v.is_zero() {
            e.terms.insert(Monomial::one(), v);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pi() -> Self {
        Self::atom(ConstAtom::Pi)
    }

    pub fn log2() -> Self {
        Self::atom(ConstAtom::Log2)
    }

    pub fn zeta(n: u32) -> Self {
        assert!(n >= 2, "zeta atom needs n >= 2, got {n}");
        Self::atom(ConstAtom::Zeta(n))
    }

    /// `eta(n)` with the exact rewrite `eta(1) = log 2`.
    pub fn eta(n: u32) -> Self {
        assert!(n >= 1, "eta atom needs n >= 1");
        if n == 1 {
            Self::log2()
        } else {
            Self::atom(ConstAtom::Eta(n))
        }
    }

    /// `zeta(bar n) = -eta(n)` for `n >= 1`.
    pub fn zeta_bar(n: u32) -> Self {
        -Self::eta(n)
    }

    /// `R(bar n) = -2^n beta(n)`; odd `n` reduces to a rational multiple of
    /// `pi^n` via Euler numbers, even `n` stays atomic.
    pub fn r_bar(n: u32) -> Self {
        assert!(n >= 1, "R-bar needs n >= 1");
        if n % 2 == 1 {
            let beta_over_pi = hp::odd_beta_rational(n).expect("odd n");
            let coeff = -BigRational::from(BigInt::one() << n as usize) * beta_over_pi;
            Self::atom_pow(ConstAtom::Pi, n).scale(&coeff)
        } else {
            Self::atom(ConstAtom::RBar(n))
        }
    }

    /// Depth-one `R` value: `R(k) = (2^k - 1) zeta(k)` for `k >= 2`,
    /// `R(1) = 2 log 2`, and `R(-k) = R(bar k)`.
    pub fn r_single(k: i64) -> Self {
        match k {
            0 => panic!("R(0) undefined"),
            1 => Self::log2().scale(&BigRational::from(BigInt::from(2))),
            k if k >= 2 => {
                let c = BigRational::from((BigInt::one() << k as usize) - 1);
                Self::zeta(k as u32).scale(&c)
            }
            k => Self::r_bar((-k) as u32),
        }
    }

    pub fn double_zeta(a: u32, b: u32) -> Self {
        assert!(a >= 2 && b >= 1);
        Self::atom(ConstAtom::DoubleZeta(a, b))
    }

    pub fn big_t(a: u32, b: u32) -> Self {
        assert!(a >= 2 && b >= 1);
        Self::atom(ConstAtom::BigT(a, b))
    }

    pub fn small_t(a: u32, b: u32) -> Self {
        assert!(a >= 2 && b >= 1);
        Self::atom(ConstAtom::SmallT(a, b))
    }

    pub fn atom(a: ConstAtom) -> Self {
        let mut e = SymExpr::zero();
        e.terms.insert(Monomial::atom(a), BigRational::one());
        e
    }

    fn atom_pow(a: ConstAtom, e: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(a, e);
        let mut out = SymExpr::zero();
        out.terms.insert(Monomial(m), BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return SymExpr::zero();
        }
        let mut out = SymExpr::zero();
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from(BigInt::from(c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SymExpr::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value; the error is bounded by the number of monomials times
    /// the tolerance of the underlying constant evaluations.
    pub fn eval(&self, cfg: &EvalConfig) -> Result<BigReal> {
        let digits = cfg.digits;
        let mut acc = BigReal::zero(digits);
        for (m, c) in &self.terms {
            let mut t = BigReal::from_rational(c, digits);
            for (a, e) in &m.0 {
                let v = atom_value(*a, cfg)?;
                t = t * v.powi(*e as i64);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Rewrites `zeta(2k)` (for `2k <= 12`) into its exact rational multiple
    /// of `pi^(2k)`, and `eta(j)` into `(1 - 2^(1-j)) zeta(j)` first, so
    /// even-weight forms compare canonically.
    pub fn normalize_even_zeta(&self) -> Self {
        let subst = |a: ConstAtom| -> SymExpr {
            match a {
                ConstAtom::Zeta(n) if n % 2 == 0 && n <= 12 => {
                    let r = hp::even_zeta_rational(n).expect("even n");
                    SymExpr::atom_pow(ConstAtom::Pi, n).scale(&r)
                }
                ConstAtom::Eta(j) => {
                    // eta(j) = (1 - 2^(1-j)) zeta(j); j >= 2 by canonical form
                    let c = BigRational::new(
                        (BigInt::one() << (j - 1) as usize) - 1,
                        BigInt::one() << (j - 1) as usize,
                    );
                    if j % 2 == 0 && j <= 12 {
                        let r = hp::even_zeta_rational(j).expect("even j");
                        SymExpr::atom_pow(ConstAtom::Pi, j).scale(&(c * r))
                    } else {
                        SymExpr::zeta(j).scale(&c)
                    }
                }
                other => SymExpr::atom(other),
            }
        };
        let mut out = SymExpr::zero();
        for (m, c) in &self.terms {
            let mut t = SymExpr::from_rational(c.clone());
            for (a, e) in &m.0 {
                let s = subst(*a);
                for _ in 0..*e {
                    t = &t * &s;
                }
            }
            out = &out + &t;
        }
        out
    }
}

static ATOM_CACHE: Mutex<Option<HashMap<(ConstAtom, u32), BigReal>>> = Mutex::new(None);

fn atom_value(a: ConstAtom, cfg: &EvalConfig) -> Result<BigReal> {
    let key = (a, cfg.digits);
    if let Some(v) = {
        let guard = ATOM_CACHE.lock().expect("atom cache");
        guard.as_ref().and_then(|m| m.get(&key).cloned())
    } {
        return Ok(v);
    }
    let v = a.eval(cfg)?;
    let mut guard = ATOM_CACHE.lock().expect("atom cache");
    guard.get_or_insert_with(HashMap::new).entry(key).or_insert_with(|| v.clone());
    Ok(v)
}

impl Add for &SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: &SymExpr) -> SymExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            let slot = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }
}

impl Sub for &SymExpr {
    type Output = SymExpr;
    fn sub(self, rhs: &SymExpr) -> SymExpr {
        self + &(-rhs)
    }
}

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        self.scale(&-BigRational::one())
    }
}

impl Neg for SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        -&self
    }
}

impl Mul for &SymExpr {
    type Output = SymExpr;
    fn mul(self, rhs: &SymExpr) -> SymExpr {
        let mut out = SymExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                let slot = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
                *slot += c;
                if slot.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<SymExpr> for SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: SymExpr) -> SymExpr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&SymExpr> for SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: &SymExpr) -> SymExpr {
                (&self).$method(rhs)
            }
        }
        impl $trait<SymExpr> for &SymExpr {
            type Output = SymExpr;
            fn $method(self, rhs: SymExpr) -> SymExpr {
                self.$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let atoms = m.render();
            if atoms.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&atoms)?;
            } else {
                write!(f, "{mag} {atoms}")?;
            }
        }
        Ok(())
    }
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
    fn r21_closed_form_builds() {
        let e = SymExpr::zeta(3).scale_int(7)
            - (SymExpr::zeta(2) * SymExpr::log2()).scale_int(6);
        assert_eq!(e.to_string(), "7 z3 - 6 log2 z2");
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn cancellation_gives_zero() {
        let e = SymExpr::zeta(3).scale_int(7);
        let z = &e - &e;
        assert!(z.is_zero());
        assert_eq!(z, SymExpr::zero());
    }

    #[test]
    fn squaring_builds_powers() {
        let e = SymExpr::zeta(3);
        let sq = &e * &e;
        assert_eq!(sq.to_string(), "z3^2");
    }

    #[test]
    fn construction_rewrites() {
        // R(2) = 3 zeta(2), R(1) = 2 log2
        assert_eq!(SymExpr::r_single(2).to_string(), "3 z2");
        assert_eq!(SymExpr::r_single(1).to_string(), "2 log2");
        // R(bar 1) = -pi/2, R(bar 3) = -pi^3/4, R(bar 2) stays atomic
        assert_eq!(SymExpr::r_bar(1).to_string(), "-1/2 pi");
        assert_eq!(SymExpr::r_bar(3).to_string(), "-1/4 pi^3");
        assert_eq!(SymExpr::r_bar(2).to_string(), "Rbar2");
        // zeta(bar 1) = -log 2 via eta(1) -> log2
        assert_eq!(SymExpr::zeta_bar(1).to_string(), "-log2");
        assert_eq!(SymExpr::zeta_bar(3).to_string(), "-zbar3");
    }

    #[test]
    fn eval_simple() {
        let c = cfg();
        let e = SymExpr::zeta(2).scale_int(3);
        let expect = hp::pi(&c).powi(2) / BigReal::from_i64(2, 40);
        assert_close(&e.eval(&c).unwrap(), &expect, 1e-30);
    }

    #[test]
    fn normalize_even_zeta_examples() {
        let z2 = SymExpr::zeta(2).normalize_even_zeta();
        assert_eq!(z2.to_string(), "1/6 pi^2");
        let z4 = SymExpr::zeta(4).normalize_even_zeta();
        assert_eq!(z4.to_string(), "1/90 pi^4");
        let z3 = SymExpr::zeta(3).normalize_even_zeta();
        assert_eq!(z3.to_string(), "z3");
        // eta(2) = zeta(2)/2 -> pi^2/12
        let e2 = SymExpr::eta(2).normalize_even_zeta();
        assert_eq!(e2.to_string(), "1/12 pi^2");
        // zeta(2)^2 and zeta(4) meet on the pi^4 form: 5/2 z4 == z2^2
        let a = SymExpr::zeta(2).pow(2).normalize_even_zeta();
        let b = SymExpr::zeta(4).scale(&BigRational::new(5.into(), 2.into())).normalize_even_zeta();
        assert_eq!(a, b);
    }

    #[test]
    fn normalize_preserves_value() {
        let c = cfg();
        let e = SymExpr::zeta(4).scale_int(45) + SymExpr::eta(2) * SymExpr::log2()
            - SymExpr::r_bar(2) * SymExpr::pi();
        let n = e.normalize_even_zeta();
        assert_close(&e.eval(&c).unwrap(), &n.eval(&c).unwrap(), 1e-9);
        // idempotent
        assert_eq!(n, n.normalize_even_zeta());
    }

    #[test]
    fn eval_homomorphism() {
        let c = cfg();
        let a = SymExpr::zeta(3).scale_int(2) + SymExpr::log2();
        let b = SymExpr::pi() - SymExpr::zeta(2).scale_int(4);
        let lhs = (&a + &b).eval(&c).unwrap();
        let rhs = a.eval(&c).unwrap() + b.eval(&c).unwrap();
        assert_close(&lhs, &rhs, 1e-30);
        let lhs = (&a * &b).eval(&c).unwrap();
        let rhs = a.eval(&c).unwrap() * b.eval(&c).unwrap();
        assert_close(&lhs, &rhs, 1e-28);
    }
}
