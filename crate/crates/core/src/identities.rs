//! The explicit identities between Euler R-sums, single R-values and
//! zeta-type constants, as executable objects: closed-form constructors
//! where explicit formulas exist, residual-zero checkers for the identity
//! families proved by contour integration, the quasi-shuffle expansion of
//! R-sums into multiple R-values, and the catalog of explicit evaluations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{self, BigReal, EvalConfig};
use crate::seq::{self, Functional, Seq};
use crate::sums::{self, sum_series, MrvIndex, SumSpec};
use crate::symbolic::SymExpr;

/// The four bar patterns of a linear R-sum `R_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearVariant {
    /// `R_{p,q}`
    Plain,
    /// `R_{bar p, q}`
    BarP,
    /// `R_{bar p, bar q}`
    BarPBarQ,
    /// `R_{p, bar q}`
    PlainPBarQ,
}

impl LinearVariant {
    pub const ALL: [LinearVariant; 4] =
        [LinearVariant::Plain, LinearVariant::BarP, LinearVariant::BarPBarQ, LinearVariant::PlainPBarQ];

    /// The series this variant's closed form evaluates.
    pub fn sum_spec(self, p: u32, q: u32) -> Result<SumSpec> {
        let (bar_p, bar_q) = match self {
            LinearVariant::Plain => (false, false),
            LinearVariant::BarP => (true, false),
            LinearVariant::BarPBarQ => (true, true),
            LinearVariant::PlainPBarQ => (false, true),
        };
        SumSpec::r_sum(p, bar_p, q, bar_q)
    }
}

fn binom_expr(n: u32, k: u32) -> BigRational {
    BigRational::from(hp::binomial(n as usize, k as usize))
}

/// `zeta(j)` with the conventions `zeta(0) = -1/2` and `zeta(1) = 0`.
fn zeta_conv(j: u32) -> SymExpr {
    match j {
        0 => SymExpr::from_ratio(-1, 2),
        1 => SymExpr::zero(),
        _ => SymExpr::zeta(j),
    }
}

/// `zeta(bar j)` with `zeta(bar 0) = -1/2`; `zeta(bar 1) = -log 2` is the
/// convergent alternating value.
fn zeta_bar_conv(j: u32) -> SymExpr {
    match j {
        0 => SymExpr::from_ratio(-1, 2),
        _ => SymExpr::zeta_bar(j),
    }
}

fn parity(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Closed form of the linear R-sum reduction for the given bar pattern.
///
/// Returns `(coef, rhs)` with `coef (in {0, 2}) * R-sum = eval(rhs)`: when
/// `coef = 2` the solved sum is `rhs / 2`; when `coef = 0` the right side is
/// a constants-only identity whose value must vanish.
pub fn linear_rsum_closed(p: u32, q: u32, variant: LinearVariant) -> Result<(BigRational, SymExpr)> {
    if p < 1 || q < 2 {
        return Err(Error::Domain("linear closed form needs p >= 1, q >= 2".into()));
    }
    let sp = parity(p); // (-1)^p
    let spq = parity(p + q);
    let sq = parity(q);
    let mut rhs = SymExpr::zero();
    let int = |v: i64| BigRational::from(BigInt::from(v));

    match variant {
        LinearVariant::Plain => {
            for j in 0..=p {
                let c = (1 + parity(j)) * sp;
                if c == 0 {
                    continue;
                }
                let term = zeta_conv(j) * SymExpr::r_single((p + q - j) as i64);
                rhs = rhs + term.scale(&(binom_expr(p + q - j - 1, q - 1) * int(c)));
            }
            for k in 0..q {
                let c = (1 - parity(k)) * sp;
                if c == 0 {
                    continue;
                }
                let term = SymExpr::r_single((k + 1) as i64) * SymExpr::r_single((p + q - k - 1) as i64);
                rhs = rhs + term.scale(&(binom_expr(p + q - k - 2, p - 1) * int(c)));
            }
            rhs = rhs - (zeta_conv(p) * SymExpr::r_single(q as i64)).scale_int(sp * (1 + sq));
            Ok((int(1 - spq), rhs))
        }
        LinearVariant::BarP => {
            for j in 0..=p {
                let c = (1 + parity(j)) * sp;
                if c == 0 {
                    continue;
                }
                let term = zeta_bar_conv(j) * SymExpr::r_single((p + q - j) as i64);
                rhs = rhs - term.scale(&(binom_expr(p + q - j - 1, q - 1) * int(c)));
            }
            for k in 0..q {
                let c = (1 + parity(k)) * sp;
                if c == 0 {
                    continue;
                }
                let term = SymExpr::r_bar(k + 1) * SymExpr::r_bar(p + q - k - 1);
                rhs = rhs - term.scale(&(binom_expr(p + q - k - 2, p - 1) * int(c)));
            }
            rhs = rhs + (zeta_bar_conv(p) * SymExpr::r_single(q as i64)).scale_int(sp * (1 + sq));
            Ok((int(1 - spq), rhs))
        }
        LinearVariant::BarPBarQ => {
            for j in 0..=p {
                let c = (1 + parity(j)) * sp;
                if c == 0 {
                    continue;
                }
                let term = zeta_conv(j) * SymExpr::r_bar(p + q - j);
                rhs = rhs + term.scale(&(binom_expr(p + q - j - 1, q - 1) * int(c)));
            }
            for k in 0..q {
                let c = (1 - parity(k)) * sp;
                if c == 0 {
                    continue;
                }
                let term = SymExpr::r_single((k + 1) as i64) * SymExpr::r_bar(p + q - k - 1);
                rhs = rhs + term.scale(&(binom_expr(p + q - k - 2, p - 1) * int(c)));
            }
            rhs = rhs - (zeta_bar_conv(p) * SymExpr::r_bar(q)).scale_int(sp * (1 - sq));
            Ok((int(1 + spq), rhs))
        }
        LinearVariant::PlainPBarQ => {
            for j in 0..=p {
                let c = (1 + parity(j)) * sp;
                if c == 0 {
                    continue;
                }
                let term = zeta_bar_conv(j) * SymExpr::r_bar(p + q - j);
                rhs = rhs - term.scale(&(binom_expr(p + q - j - 1, q - 1) * int(c)));
            }
            for k in 0..q {
                let c = (1 + parity(k)) * sp;
                if c == 0 {
                    continue;
                }
                let term = SymExpr::r_bar(k + 1) * SymExpr::r_single((p + q - k - 1) as i64);
                rhs = rhs - term.scale(&(binom_expr(p + q - k - 2, p - 1) * int(c)));
            }
            rhs = rhs - (zeta_conv(p) * SymExpr::r_single(q as i64)).scale_int(sp * (1 - sq));
            Ok((int(1 + spq), rhs))
        }
    }
}

// ---------------------------------------------------------------------------
// Streaming closed-form functionals for the residual checkers.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FKind {
    M,
    MBar,
    T,
}

/// One functional factor `X^(seq)_(n or n-1)(j)` inside a residual series.
#[derive(Clone)]
struct FuncFactor {
    kind: FKind,
    seq: Seq,
    j: u32,
    /// Evaluate at `n - 1` instead of `n`.
    shifted: bool,
}

/// Incremental closed-form values of one functional factor for the built-in
/// sequences; indices must be requested in nondecreasing order.
struct FactorStream {
    kind: FKind,
    alternating: bool,
    j: u32,
    digits: u32,
    h: BigReal,
    h_at: u64,
    constant: BigReal, // zeta(j) or eta(j); zero when j == 1
    log2: BigReal,
}

impl FactorStream {
    fn new(f: &FuncFactor, cfg: &EvalConfig) -> Result<Self> {
        let digits = cfg.digits;
        let alternating = matches!(f.seq, Seq::Alternating);
        let constant = if f.j >= 2 {
            if alternating {
                hp::eta(f.j, cfg)
            } else {
                hp::zeta(f.j, cfg)?
            }
        } else {
            BigReal::zero(digits)
        };
        Ok(FactorStream {
            kind: f.kind,
            alternating,
            j: f.j,
            digits,
            h: BigReal::zero(digits),
            h_at: 0,
            constant,
            log2: hp::log2(cfg),
        })
    }

    fn value_at(&mut self, nu: u64) -> BigReal {
        let digits = self.digits;
        let target = match self.kind {
            FKind::MBar => nu.saturating_sub(1),
            _ => nu,
        };
        while self.h_at < target {
            self.h_at += 1;
            let k = self.h_at;
            let mut step = BigReal::from_u64(k, digits).powi(-(self.j as i64));
            if self.alternating && k % 2 == 0 {
                step = -step;
            }
            self.h = &self.h + &step;
        }
        let sj = parity(self.j);
        if !self.alternating {
            match self.kind {
                FKind::M => &self.h + &(&self.constant * &BigReal::from_i64(sj, digits)),
                FKind::MBar => &self.constant - &self.h,
                FKind::T => &self.constant * &BigReal::from_i64(1 + sj, digits),
            }
        } else {
            let sn = if nu % 2 == 1 { 1 } else { -1 }; // (-1)^(nu-1)
            match self.kind {
                FKind::M => {
                    let head = &self.h * &BigReal::from_i64(sn, digits);
                    if self.j == 1 {
                        head - &self.log2 * &BigReal::from_i64(1 + sn, digits)
                    } else {
                        head + &self.constant * &BigReal::from_i64(sj * sn, digits)
                    }
                }
                FKind::MBar => {
                    let head = &self.h * &BigReal::from_i64(-sn, digits);
                    if self.j == 1 {
                        head + &self.log2 * &BigReal::from_i64(1 + sn, digits)
                    } else {
                        head + &self.constant * &BigReal::from_i64(sn, digits)
                    }
                }
                FKind::T => {
                    if self.j == 1 {
                        BigReal::zero(digits)
                    } else {
                        &self.constant * &BigReal::from_i64(sn * (1 + sj), digits)
                    }
                }
            }
        }
    }
}

fn seq_sign_at(s: &Seq, idx: u64) -> i64 {
    match s {
        Seq::Alternating if idx % 2 == 1 => -1,
        _ => 1,
    }
}

/// One series of the residual checkers:
/// `sum_{n>=1} prod_i X_i(n) * prod_j a_j(n or n-1) / (n - 1/2)^power`.
struct FSeries {
    funcs: Vec<FuncFactor>,
    /// Sign sequences multiplied in (`a_n` or `a_(n-1)`).
    signs: Vec<(Seq, bool)>,
    power: u32,
}

impl FSeries {
    fn log_power(&self) -> u32 {
        self.funcs
            .iter()
            .filter(|f| f.j == 1 && !matches!(f.kind, FKind::T) && matches!(f.seq, Seq::Ones))
            .count() as u32
    }

    fn is_identically_zero(&self) -> bool {
        // T over the constant sequence vanishes at odd j; over the
        // alternating sequence at j = 1.
        self.funcs.iter().any(|f| {
            f.kind == FKind::T
                && match f.seq {
                    Seq::Ones => f.j % 2 == 1,
                    Seq::Alternating => f.j == 1,
                    Seq::Custom(_) => false,
                }
        })
    }

    fn eval(&self, cfg: &EvalConfig) -> Result<BigReal> {
        let digits = cfg.digits;
        if self.is_identically_zero() {
            return Ok(BigReal::zero(digits));
        }
        if self.funcs.iter().any(|f| matches!(f.seq, Seq::Custom(_)))
            || self.signs.iter().any(|(s, _)| matches!(s, Seq::Custom(_)))
        {
            return self.eval_generic(cfg);
        }
        let mut streams = self
            .funcs
            .iter()
            .map(|f| FactorStream::new(f, cfg).map(|s| (s, f.shifted)))
            .collect::<Result<Vec<_>>>()?;
        let signs = self.signs.clone();
        let power = self.power;
        let two_pow = BigReal::from_i64(2, digits).powi(self.power as i64);
        let term = move |n: u64| -> BigReal {
            let mut t = BigReal::from_u64(2 * n - 1, digits).powi(-(power as i64)) * &two_pow;
            for (stream, shifted) in streams.iter_mut() {
                let nu = if *shifted { n - 1 } else { n };
                t = t * stream.value_at(nu);
            }
            let mut s = 1i64;
            for (sq, shifted) in &signs {
                let idx = if *shifted { n - 1 } else { n };
                s *= seq_sign_at(sq, idx);
            }
            if s < 0 {
                -t
            } else {
                t
            }
        };
        Ok(sum_series(term, self.log_power(), cfg)?.value)
    }

    /// Custom sequences: per-term functional evaluation with a reduced
    /// inner budget. Slow; intended for spot checks, not the test suites.
    fn eval_generic(&self, cfg: &EvalConfig) -> Result<BigReal> {
        let digits = cfg.digits;
        let inner = EvalConfig { max_terms: 1 << 12, tol: cfg.tol.max(1e-8), ..*cfg };
        let outer = EvalConfig {
            max_terms: (cfg.max_terms / 256).clamp(1 << 11, 1 << 13),
            tol: cfg.tol.max(1e-5),
            ..*cfg
        };
        let funcs = self.funcs.clone();
        let signs = self.signs.clone();
        let power = self.power;
        let two_pow = BigReal::from_i64(2, digits).powi(self.power as i64);
        let term = move |n: u64| -> BigReal {
            let mut t = BigReal::from_u64(2 * n - 1, digits).powi(-(power as i64)) * &two_pow;
            for f in &funcs {
                let nu = if f.shifted { n - 1 } else { n };
                let kind = match f.kind {
                    FKind::M => Functional::M,
                    FKind::MBar => Functional::MBar,
                    FKind::T => Functional::T,
                };
                match seq::seq_functional(kind, &f.seq, nu, f.j, &inner) {
                    Ok(v) => t = t * v,
                    Err(_) => return BigReal::from_f64(f64::NAN, digits),
                }
            }
            for (sq, shifted) in &signs {
                let idx = if *shifted { n - 1 } else { n };
                t = t * BigReal::from_rational(&sq.term(idx as i64), digits);
            }
            t
        };
        Ok(sum_series(term, self.log_power(), &outer)?.value)
    }
}

/// `RHat` of a pointwise product of sequences:
/// `sum_k (prod a_(k-1)) / (k-1/2)^j`.
fn r_hat_product(seqs: &[&Seq], j: u32, cfg: &EvalConfig) -> Result<BigReal> {
    // Built-in sequences multiply to a built-in sequence.
    let mut alt_count = 0usize;
    let mut builtin = true;
    for s in seqs {
        match s {
            Seq::Ones => {}
            Seq::Alternating => alt_count += 1,
            Seq::Custom(_) => builtin = false,
        }
    }
    if builtin {
        let prod = if alt_count % 2 == 0 { Seq::Ones } else { Seq::Alternating };
        return seq::r_hat(&prod, j, cfg);
    }
    let digits = cfg.digits;
    let seqs: Vec<Seq> = seqs.iter().map(|s| (*s).clone()).collect();
    let two_pow = BigReal::from_i64(2, digits).powi(j as i64);
    let term = move |k: u64| -> BigReal {
        let mut t = BigReal::from_u64(2 * k - 1, digits).powi(-(j as i64)) * &two_pow;
        for s in &seqs {
            t = t * BigReal::from_rational(&s.term(k as i64 - 1), digits);
        }
        t
    };
    Ok(sum_series(term, 0, cfg)?.value)
}

/// Residual of the linear reduction theorem: `|LHS - RHS|` of the contour
/// identity behind the linear R-sum closed forms, for `p >= 1`, `q >= 2`.
pub fn theorem31_residual(p: u32, q: u32, a: &Seq, b: &Seq, cfg: &EvalConfig) -> Result<BigReal> {
    if p < 1 || q < 2 {
        return Err(Error::Domain("needs p >= 1, q >= 2".into()));
    }
    a.check_growth()?;
    b.check_growth()?;
    let digits = cfg.digits;
    let sp = parity(p);
    let spq = parity(p + q);

    let s1 = FSeries {
        funcs: vec![FuncFactor { kind: FKind::MBar, seq: b.clone(), j: p, shifted: false }],
        signs: vec![(a.clone(), false)],
        power: q,
    }
    .eval(cfg)?;
    let s2 = FSeries {
        funcs: vec![FuncFactor { kind: FKind::M, seq: b.clone(), j: p, shifted: true }],
        signs: vec![(a.clone(), true)],
        power: q,
    }
    .eval(cfg)?;
    let lhs = s1 * BigReal::from_i64(spq, digits) + s2;

    let mut rhs = BigReal::zero(digits);
    for j in 1..=p {
        let series = FSeries {
            funcs: vec![FuncFactor { kind: FKind::T, seq: a.clone(), j, shifted: true }],
            signs: vec![(b.clone(), true)],
            power: p + q - j,
        }
        .eval(cfg)?;
        let c = BigReal::from_rational(&binom_expr(p + q - j - 1, q - 1), digits);
        rhs = rhs + series * c * BigReal::from_i64(sp, digits);
    }
    for k in 0..q {
        let c = binom_expr(p + q - k - 2, p - 1);
        let cot_coeff = seq::r_seq(a, k + 1, cfg)? * BigReal::from_i64(parity(k), digits)
            - seq::r_hat(a, k + 1, cfg)?;
        let tail = r_hat_product(&[b], p + q - k - 1, cfg)?;
        rhs = rhs - BigReal::from_rational(&c, digits) * cot_coeff * tail * BigReal::from_i64(sp, digits);
    }
    let last = r_hat_product(&[a, b], p + q, cfg)?;
    rhs = rhs - BigReal::from_rational(&binom_expr(p + q - 1, p), digits) * last * BigReal::from_i64(sp, digits);

    Ok((lhs - rhs).abs())
}

/// Residual of the duality theorem for `sum M M / (n-1/2)^q` series
/// (`m, p >= 1`, `q >= 2`). Both series families are the shifted forms
/// `M_(n-1)(.) x_(n-1)`, which is the version that balances numerically and
/// is symmetric under `(A, m) <-> (B, p)`.
pub fn theorem33_residual(
    m: u32,
    p: u32,
    q: u32,
    a: &Seq,
    b: &Seq,
    cfg: &EvalConfig,
) -> Result<BigReal> {
    if m < 1 || p < 1 || q < 2 {
        return Err(Error::Domain("needs m, p >= 1, q >= 2".into()));
    }
    a.check_growth()?;
    b.check_growth()?;
    let digits = cfg.digits;

    let mut lhs = BigReal::zero(digits);
    for i in 0..m {
        let j = m - 1 - i;
        let series = FSeries {
            funcs: vec![FuncFactor { kind: FKind::M, seq: b.clone(), j: p + i, shifted: true }],
            signs: vec![(a.clone(), true)],
            power: q + j,
        }
        .eval(cfg)?;
        let c = binom_expr(p + i - 1, i) * binom_expr(q + j - 1, j);
        lhs = lhs + series * BigReal::from_rational(&c, digits) * BigReal::from_i64(parity(m), digits);
    }
    for i in 0..p {
        let j = p - 1 - i;
        let series = FSeries {
            funcs: vec![FuncFactor { kind: FKind::M, seq: a.clone(), j: m + i, shifted: true }],
            signs: vec![(b.clone(), true)],
            power: q + j,
        }
        .eval(cfg)?;
        let c = binom_expr(m + i - 1, i) * binom_expr(q + j - 1, j);
        lhs = lhs + series * BigReal::from_rational(&c, digits) * BigReal::from_i64(parity(p), digits);
    }

    let mut rhs = r_hat_product(&[a, b], p + q + m - 1, cfg)?
        * BigReal::from_rational(&binom_expr(p + q + m - 2, q - 1), digits)
        * BigReal::from_i64(-parity(p + m), digits);
    for i in 0..q {
        let j = q - 1 - i;
        let c = binom_expr(m + i - 1, i) * binom_expr(p + j - 1, j);
        rhs = rhs
            + seq::r_hat(a, m + i, cfg)?
                * seq::r_hat(b, p + j, cfg)?
                * BigReal::from_rational(&c, digits)
                * BigReal::from_i64(parity(p + m), digits);
    }

    Ok((lhs - rhs).abs())
}

/// Residual of the quadratic reduction theorem: the absolute value of the
/// full left side (including the half-integer residue term), which the
/// identity asserts to vanish. Built-in sequences only.
pub fn theorem34_residual(
    m: u32,
    p: u32,
    q: u32,
    a: &Seq,
    b: &Seq,
    c: &Seq,
    cfg: &EvalConfig,
) -> Result<BigReal> {
    if m < 1 || p < 1 || q < 2 {
        return Err(Error::Domain("needs m, p >= 1, q >= 2".into()));
    }
    if !matches!(a, Seq::Ones | Seq::Alternating)
        || !matches!(b, Seq::Ones | Seq::Alternating)
        || !matches!(c, Seq::Ones | Seq::Alternating)
    {
        return Err(Error::Unsupported("quadratic residual checker needs built-in sequences".into()));
    }
    let digits = cfg.digits;
    let mut total = BigReal::zero(digits);

    // MBar MBar series
    let s1 = FSeries {
        funcs: vec![
            FuncFactor { kind: FKind::MBar, seq: b.clone(), j: m, shifted: false },
            FuncFactor { kind: FKind::MBar, seq: c.clone(), j: p, shifted: false },
        ],
        signs: vec![(a.clone(), false)],
        power: q,
    }
    .eval(cfg)?;
    total = total + s1 * BigReal::from_i64(parity(p + q + m), digits);

    // M M series
    let s2 = FSeries {
        funcs: vec![
            FuncFactor { kind: FKind::M, seq: b.clone(), j: m, shifted: true },
            FuncFactor { kind: FKind::M, seq: c.clone(), j: p, shifted: true },
        ],
        signs: vec![(a.clone(), true)],
        power: q,
    }
    .eval(cfg)?;
    total = total + s2;

    // triple product tail
    total = total
        + r_hat_product(&[a, b, c], p + q + m, cfg)?
            * BigReal::from_rational(&binom_expr(p + q + m - 1, q - 1), digits)
            * BigReal::from_i64(parity(p + m), digits);

    // M over C with an a*b sign pair
    for j in 1..=m + 1 {
        let coeff = binom_expr(j + p - 2, p - 1) * binom_expr(m + q - j, q - 1);
        let s = FSeries {
            funcs: vec![FuncFactor { kind: FKind::M, seq: c.clone(), j: j + p - 1, shifted: true }],
            signs: vec![(a.clone(), true), (b.clone(), true)],
            power: m + q - j + 1,
        }
        .eval(cfg)?;
        total = total + s * BigReal::from_rational(&coeff, digits) * BigReal::from_i64(parity(m), digits);
    }

    // M over B with an a*c sign pair
    for j in 1..=p + 1 {
        let coeff = binom_expr(j + m - 2, m - 1) * binom_expr(p + q - j, q - 1);
        let s = FSeries {
            funcs: vec![FuncFactor { kind: FKind::M, seq: b.clone(), j: j + m - 1, shifted: true }],
            signs: vec![(a.clone(), true), (c.clone(), true)],
            power: p + q - j + 1,
        }
        .eval(cfg)?;
        total = total + s * BigReal::from_rational(&coeff, digits) * BigReal::from_i64(parity(p), digits);
    }

    // T over A with a b*c sign pair
    for j in 1..=p + m {
        let coeff = binom_expr(p + q + m - j - 1, q - 1);
        let s = FSeries {
            funcs: vec![FuncFactor { kind: FKind::T, seq: a.clone(), j, shifted: true }],
            signs: vec![(b.clone(), true), (c.clone(), true)],
            power: p + q + m - j,
        }
        .eval(cfg)?;
        total = total - s * BigReal::from_rational(&coeff, digits) * BigReal::from_i64(parity(p + m), digits);
    }

    // T * M mixed series
    for j1 in 1..=m {
        for j2 in 1..=(m + 1 - j1) {
            let coeff = binom_expr(m + q - j1 - j2, q - 1) * binom_expr(j2 + p - 2, p - 1);
            let s = FSeries {
                funcs: vec![
                    FuncFactor { kind: FKind::T, seq: a.clone(), j: j1, shifted: true },
                    FuncFactor { kind: FKind::M, seq: c.clone(), j: j2 + p - 1, shifted: true },
                ],
                signs: vec![(b.clone(), true)],
                power: m + q - j1 - j2 + 1,
            }
            .eval(cfg)?;
            total = total - s * BigReal::from_rational(&coeff, digits) * BigReal::from_i64(parity(m), digits);
        }
    }
    for j1 in 1..=p {
        for j2 in 1..=(p + 1 - j1) {
            let coeff = binom_expr(p + q - j1 - j2, q - 1) * binom_expr(j2 + m - 2, m - 1);
            let s = FSeries {
                funcs: vec![
                    FuncFactor { kind: FKind::T, seq: a.clone(), j: j1, shifted: true },
                    FuncFactor { kind: FKind::M, seq: b.clone(), j: j2 + m - 1, shifted: true },
                ],
                signs: vec![(c.clone(), true)],
                power: p + q - j1 - j2 + 1,
            }
            .eval(cfg)?;
            total = total - s * BigReal::from_rational(&coeff, digits) * BigReal::from_i64(parity(p), digits);
        }
    }

    // residue at the half-integer pole
    let mut res = BigReal::zero(digits);
    for k1 in 0..q {
        for k2 in 0..q - k1 {
            let k3 = q - 1 - k1 - k2;
            let coeff = binom_expr(m + k2 - 1, k2) * binom_expr(p + k3 - 1, k3);
            let cot_coeff = seq::r_seq(a, k1 + 1, cfg)? * BigReal::from_i64(parity(k1), digits)
                - seq::r_hat(a, k1 + 1, cfg)?;
            res = res
                + BigReal::from_rational(&coeff, digits)
                    * cot_coeff
                    * seq::r_hat(b, m + k2, cfg)?
                    * seq::r_hat(c, p + k3, cfg)?;
        }
    }
    total = total + res * BigReal::from_i64(parity(m + p), digits);

    Ok(total.abs())
}

// ---------------------------------------------------------------------------
// Triple reduction of sum H_(n-1)^(m) h_n^(p) / n^q.
// ---------------------------------------------------------------------------

/// Symbolic reduction of `sum_{n>=1} H_(n-1)^(m) h_n^(p) / n^q` (with the
/// odd harmonic `h`) to single/double zeta values, double t/T values and
/// `log 2`, valid when `p + q + m` is even.
pub fn triple_reduction(m: u32, p: u32, q: u32) -> Result<SymExpr> {
    if m < 1 || p < 1 || q < 2 {
        return Err(Error::Domain("needs m, p >= 1, q >= 2".into()));
    }
    if (m + p + q) % 2 != 0 {
        return Err(Error::Domain("reduction needs p + q + m even".into()));
    }
    let smp = parity(m + p);
    let sm = parity(m);
    let sp = parity(p);
    let int = |v: i64| BigRational::from(BigInt::from(v));
    let mut rhs = SymExpr::zero();

    // -(-1)^(m+p) (1 + (-1)^q) zeta(m) zeta(q) R(p)
    rhs = rhs
        - (zeta_conv(m) * zeta_conv(q) * SymExpr::r_single(p as i64)).scale_int(smp * (1 + parity(q)));
    // -(-1)^m (1 - (-1)^(p+q)) zeta(m) T~(q, p)
    rhs = rhs - (zeta_conv(m) * SymExpr::big_t(q, p)).scale_int(sm * (1 - parity(p + q)));
    // -(-1)^p (1 - (-1)^(q+m)) R(p) zeta(q, m)
    rhs = rhs
        - (SymExpr::r_single(p as i64) * SymExpr::double_zeta(q, m)).scale_int(sp * (1 - parity(q + m)));
    // -(-1)^p R(p) zeta(q + m)
    rhs = rhs - (SymExpr::r_single(p as i64) * zeta_conv(q + m)).scale_int(sp);
    // -T~(m+q, p)
    rhs = rhs - SymExpr::big_t(m + q, p);

    // alternating-sign sum from the order-(m+1) integer poles
    for k in 1..=m + 1 {
        let coeff = binom_expr(k + p - 2, p - 1) * binom_expr(m + q - k, q - 1);
        let inner = SymExpr::r_single((k + p - 1) as i64) * zeta_conv(m + q - k + 1)
            + SymExpr::big_t(m + q - k + 1, k + p - 1).scale_int(parity(k + p - 1));
        rhs = rhs + inner.scale(&(coeff * int(smp * parity(k))));
    }

    // even-zeta corrections to the same block
    for k1 in 1..=(m + 1) / 2 {
        for k2 in 1..=(m + 1 - 2 * k1) {
            let coeff = binom_expr(k2 + p - 2, p - 1) * binom_expr(m + q - 2 * k1 - k2, q - 1);
            let tail_arg = m + q - 2 * k1 - k2 + 1;
            let inner = SymExpr::r_single((k2 + p - 1) as i64) * zeta_conv(tail_arg)
                + SymExpr::big_t(tail_arg, k2 + p - 1).scale_int(parity(k2 + p - 1));
            rhs = rhs + (SymExpr::zeta(2 * k1) * inner).scale(&(coeff * int(-2 * smp * parity(k2))));
        }
    }

    // half-integer pole block: odd k1 only. The inner t-sum runs over
    // h_n (not h_(n-1)), so it is the non-strict double t-value
    // t~(a, b) + R(a + b).
    for k1 in 0..p {
        for k2 in 0..p - k1 {
            let k3 = p - 1 - k1 - k2;
            let c = (1 - parity(k1)) * parity(k3) * sm;
            if c == 0 {
                continue;
            }
            let coeff = binom_expr(k2 + m - 1, k2) * binom_expr(k3 + q - 1, k3);
            let t_sum = SymExpr::small_t(k3 + q, m + k2)
                + SymExpr::r_single((k3 + q + m + k2) as i64);
            let inner = SymExpr::r_single((m + k2) as i64) * SymExpr::r_single((k3 + q) as i64)
                + t_sum.scale_int(parity(m + k2));
            rhs = rhs + (SymExpr::r_single((k1 + 1) as i64) * inner).scale(&(coeff * int(c)));
        }
    }

    // minus the residue at 0
    let mut res = SymExpr::r_single((p + q + m) as i64)
        .scale(&(binom_expr(p + q + m - 1, p - 1) * int(sp)));
    for k in 1..=(m + q) / 2 {
        let coeff = binom_expr(p + q + m - 2 * k - 1, p - 1);
        res = res
            - (SymExpr::zeta(2 * k) * SymExpr::r_single((p + q + m - 2 * k) as i64))
                .scale(&(coeff * int(2 * sp)));
    }
    for k in 1..=q + 1 {
        let coeff = binom_expr(k + m - 2, m - 1) * binom_expr(p + q - k, p - 1);
        res = res
            + (zeta_conv(k + m - 1) * SymExpr::r_single((p + q - k + 1) as i64))
                .scale(&(coeff * int(smp)));
    }
    for k1 in 1..=(q + 1) / 2 {
        for k2 in 1..=(q + 1 - 2 * k1) {
            let coeff = binom_expr(k2 + m - 2, m - 1) * binom_expr(p + q - 2 * k1 - k2, p - 1);
            res = res
                - (SymExpr::zeta(2 * k1)
                    * zeta_conv(k2 + m - 1)
                    * SymExpr::r_single((p + q - 2 * k1 - k2 + 1) as i64))
                    .scale(&(coeff * int(2 * smp)));
        }
    }
    rhs = rhs - res;

    // the left side carries the parity factor 2
    Ok(rhs.scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
}

/// Direct numeric evaluation of `sum_{n>=1} H_(n-1)^(m) h_n^(p) / n^q`.
pub fn triple_series(m: u32, p: u32, q: u32, cfg: &EvalConfig) -> Result<BigReal> {
    if m < 1 || p < 1 || q < 2 {
        return Err(Error::Domain("needs m, p >= 1, q >= 2".into()));
    }
    let digits = cfg.digits;
    let mut h_plain = BigReal::zero(digits);
    let mut h_odd = BigReal::zero(digits);
    let two_pow = BigReal::from_bigint(&(BigInt::one() << p as usize), digits);
    let log_power = u32::from(m == 1) + u32::from(p == 1);
    let term = move |n: u64| -> BigReal {
        h_odd = &h_odd + &(BigReal::from_u64(2 * n - 1, digits).powi(-(p as i64)) * &two_pow);
        let v = &h_plain * &h_odd * BigReal::from_u64(n, digits).powi(-(q as i64));
        h_plain = &h_plain + &BigReal::from_u64(n, digits).powi(-(m as i64));
        v
    };
    Ok(sum_series(term, log_power, cfg)?.value)
}

// ---------------------------------------------------------------------------
// Quasi-shuffle expansion.
// ---------------------------------------------------------------------------

fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            let mut c = vec![first];
            c.append(&mut rest);
            out.push(c);
        }
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut items: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    heap(m, &mut items, &mut out);
    out
}

/// Expands an Euler R-sum `R_{i1...im, q}` (signed orders; negative = bar)
/// into a rational combination of multiple R-values via the stuffle product
/// of the harmonic factors: when indices collide, orders add and signs
/// multiply. A barred factor or exponent flips the sign of the expansion.
pub fn quasi_shuffle_expand(factors: &[i64], q: i64) -> Result<Vec<(BigRational, MrvIndex)>> {
    if factors.is_empty() {
        return Err(Error::Domain("need at least one harmonic factor".into()));
    }
    if factors.iter().any(|&f| f == 0) || q.unsigned_abs() < 2 {
        return Err(Error::Domain("orders must be nonzero and |q| >= 2".into()));
    }
    let m = factors.len();
    let bar_sign = if factors.iter().filter(|&&f| f < 0).count() % 2 == 1 { -1 } else { 1 };
    let q_sign = if q < 0 { -1 } else { 1 };
    let overall = BigRational::from(BigInt::from(bar_sign * q_sign));

    let mut merged: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
    for xi in compositions(m) {
        let mut fact = BigInt::one();
        for part in &xi {
            for i in 1..=*part {
                fact *= BigInt::from(i);
            }
        }
        let weight = BigRational::new(BigInt::one(), fact);
        for sigma in permutations(m) {
            let mut index = Vec::with_capacity(xi.len() + 1);
            index.push(q);
            let mut pos = 0;
            for part in &xi {
                let mut mag = 0i64;
                let mut sign = 1i64;
                for t in 0..*part {
                    let f = factors[sigma[pos + t]];
                    mag += f.abs();
                    if f < 0 {
                        sign = -sign;
                    }
                }
                pos += part;
                index.push(sign * mag);
            }
            let entry = merged.entry(index).or_insert_with(BigRational::zero);
            *entry += &weight * &overall;
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(idx, c)| Ok((c, MrvIndex::new(idx)?)))
        .collect()
}

// ---------------------------------------------------------------------------
// Catalog of explicit identities.
// ---------------------------------------------------------------------------

/// Left side of a cataloged identity.
#[derive(Debug, Clone)]
pub enum IdentityLhs {
    Sum(SumSpec),
    Mrv(MrvIndex),
}

impl std::fmt::Display for IdentityLhs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdentityLhs::Sum(s) => s.fmt(f),
            IdentityLhs::Mrv(m) => m.fmt(f),
        }
    }
}

/// One explicit identity: a series on the left, an exact closed form on the
/// right, and the tolerance its verification must meet.
#[derive(Debug, Clone)]
pub struct IdentityRecord {
    pub name: String,
    pub lhs: IdentityLhs,
    pub rhs: SymExpr,
    /// Human-readable provenance note.
    pub anchor: String,
    pub tol: f64,
}

/// Outcome of verifying one record.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub lhs_value: BigReal,
    pub rhs_value: BigReal,
    pub abs_err: BigReal,
    pub terms_used: u64,
    pub pass: bool,
}

impl IdentityRecord {
    pub fn verify(&self, cfg: &EvalConfig) -> Result<VerifyOutcome> {
        let (lhs_value, terms_used) = match &self.lhs {
            IdentityLhs::Sum(spec) => {
                let r = sums::euler_sum(spec, cfg)?;
                (r.value, r.terms_used)
            }
            IdentityLhs::Mrv(idx) => {
                let r = sums::mrv(idx, cfg)?;
                (r.value, r.terms_used)
            }
        };
        let rhs_value = self.rhs.eval(cfg)?;
        let abs_err = (&lhs_value - &rhs_value).abs();
        let pass = abs_err < BigReal::from_f64(self.tol, cfg.digits);
        Ok(VerifyOutcome { lhs_value, rhs_value, abs_err, terms_used, pass })
    }
}

fn record(name: &str, lhs: IdentityLhs, rhs: SymExpr, anchor: &str, tol: f64) -> IdentityRecord {
    IdentityRecord { name: name.into(), lhs, rhs, anchor: anchor.into(), tol }
}

/// The eleven explicit closed-form identities: six alternating linear
/// R-sums and the five height-one multiple R-values.
pub fn example_catalog() -> Vec<IdentityRecord> {
    let rsum = |p: u32, bar_p: bool, q: u32, bar_q: bool| {
        IdentityLhs::Sum(SumSpec::r_sum(p, bar_p, q, bar_q).expect("static spec"))
    };
    let mrv = |parts: &[i64]| IdentityLhs::Mrv(MrvIndex::new(parts.to_vec()).expect("static index"));
    let z = SymExpr::zeta;
    let r = SymExpr::r_bar;
    let pi = SymExpr::pi;
    let l2 = SymExpr::log2;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));

    vec![
        record(
            "R{~1;4}",
            rsum(1, true, 4, false),
            z(5).scale_int(-62) - (pi() * r(4)).scale(&half) - (pi().pow(3) * r(2)).scale(&quarter)
                + (l2() * z(4)).scale_int(15),
            "linear R-sum reduction, barred p, (p,q) = (1,4)",
            1e-8,
        ),
        record(
            "R{~2;3}",
            rsum(2, true, 3, false),
            z(5).scale_int(93)
                + (z(2) * z(3)).scale(&BigRational::new(7.into(), 2.into()))
                + (pi() * r(4)).scale(&BigRational::new(3.into(), 2.into()))
                + (pi().pow(3) * r(2)).scale(&quarter),
            "linear R-sum reduction, barred p, (p,q) = (2,3)",
            1e-8,
        ),
        record(
            "R{~1;~3}",
            rsum(1, true, 3, true),
            r(4).scale(&BigRational::new(3.into(), 2.into())) - (z(2) * r(2)).scale_int(3)
                + (l2() * pi().pow(3)).scale(&quarter),
            "linear R-sum reduction, both barred, (p,q) = (1,3)",
            1e-8,
        ),
        record(
            "R{~2;~2}",
            rsum(2, true, 2, true),
            r(4).scale(&BigRational::new(BigInt::from(-3), BigInt::from(2)))
                + (z(2) * r(2)).scale_int(4),
            "linear R-sum reduction, both barred, (p,q) = (2,2)",
            1e-8,
        ),
        record(
            "R{1;~3}",
            rsum(1, false, 3, true),
            r(4).scale(&BigRational::new(BigInt::from(-3), BigInt::from(2)))
                - (pi() * z(3)).scale(&BigRational::new(7.into(), 2.into()))
                - (l2() * pi().pow(3)).scale(&half),
            "linear R-sum reduction, barred q, (p,q) = (1,3)",
            1e-8,
        ),
        record(
            "R{2;~2}",
            rsum(2, false, 2, true),
            r(4).scale(&BigRational::new(3.into(), 2.into())) + (z(2) * r(2)).scale(&half)
                + (pi() * z(3)).scale_int(7),
            "linear R-sum reduction, barred q, (p,q) = (2,2)",
            1e-8,
        ),
        record(
            "MRV(2,1)",
            mrv(&[2, 1]),
            z(3).scale_int(7) - (z(2) * l2()).scale_int(6),
            "height-one multiple R-value, depth 2, weight 3",
            1e-8,
        ),
        record(
            "MRV(3,1)",
            mrv(&[3, 1]),
            z(4).scale(&BigRational::new(45.into(), 4.into())) - (l2() * z(3)).scale_int(14),
            "height-one multiple R-value, depth 2, weight 4",
            1e-8,
        ),
        record(
            "MRV(2,1,1)",
            mrv(&[2, 1, 1]),
            z(4).scale(&BigRational::new(15.into(), 2.into())) + (l2().pow(2) * z(2)).scale_int(6)
                - (l2() * z(3)).scale_int(14),
            "height-one multiple R-value, depth 3, weight 4",
            1e-8,
        ),
        record(
            "MRV(3,1,1)",
            mrv(&[3, 1, 1]),
            z(5).scale_int(62)
                - (l2() * z(4)).scale(&BigRational::new(45.into(), 2.into()))
                - (z(2) * z(3)).scale_int(28)
                + (l2().pow(2) * z(3)).scale_int(14),
            "height-one multiple R-value, depth 3, weight 5",
            1e-8,
        ),
        record(
            "MRV(2,1,1,1)",
            mrv(&[2, 1, 1, 1]),
            z(5).scale_int(31) - (l2() * z(4)).scale_int(15) - (z(2) * z(3)).scale_int(13)
                + (l2().pow(2) * z(3)).scale_int(14)
                - (l2().pow(3) * z(2)).scale_int(4),
            "height-one multiple R-value, depth 4, weight 5",
            1e-8,
        ),
    ]
}

/// `|3 R_{2,4} + 2 R_{3,3} - (112 zeta(3)^2 - pi^6/6)|`, the weight-six
/// consequence of the duality theorem at `(m, p, q) = (3, 2, 2)`.
pub fn duality_weight_six(cfg: &EvalConfig) -> Result<BigReal> {
    let r24 = sums::euler_sum(&SumSpec::r_sum(2, false, 4, false)?, cfg)?.value;
    let r33 = sums::euler_sum(&SumSpec::r_sum(3, false, 3, false)?, cfg)?.value;
    let rhs = (SymExpr::zeta(3).pow(2).scale_int(112)
        - SymExpr::pi().pow(6).scale(&BigRational::new(BigInt::one(), BigInt::from(6))))
    .eval(cfg)?;
    let lhs = r24 * BigReal::from_i64(3, cfg.digits) + r33 * BigReal::from_i64(2, cfg.digits);
    Ok((lhs - rhs).abs())
}

/// Serializable catalog entry (name, parseable left side, rendered right
/// side, provenance note and tolerance).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub anchor: String,
    pub tol: f64,
}

/// The catalog in serializable form.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    example_catalog()
        .iter()
        .map(|r| CatalogEntry {
            name: r.name.clone(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            anchor: r.anchor.clone(),
            tol: r.tol,
        })
        .collect()
}

pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&catalog_entries()).expect("catalog serializes")
}

pub fn catalog_from_json(s: &str) -> Result<Vec<CatalogEntry>> {
    serde_json::from_str(s).map_err(|e| Error::Domain(format!("catalog parse: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn tol(x: f64) -> BigReal {
        BigReal::from_f64(x, 40)
    }

    #[test]
    fn linear_closed_form_matches_catalog_r1bar4() {
        // coef 2, rhs/2 = catalog closed form of R_{bar1,4}
        let (coef, rhs) = linear_rsum_closed(1, 4, LinearVariant::BarP).unwrap();
        assert_eq!(coef, BigRational::from(BigInt::from(2)));
        let half = rhs.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let catalog = &example_catalog()[0];
        assert_eq!(half, catalog.rhs, "closed form {} vs catalog {}", half, catalog.rhs);
    }

    #[test]
    fn linear_closed_form_matches_catalog_r2bar2bar() {
        let (coef, rhs) = linear_rsum_closed(2, 2, LinearVariant::BarPBarQ).unwrap();
        assert_eq!(coef, BigRational::from(BigInt::from(2)));
        let half = rhs.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(half, example_catalog()[3].rhs);
    }

    #[test]
    fn linear_closed_form_plain_case_vs_series() {
        // (2,3) plain, p+q odd so coef = 2; solved value matches the series
        let c = cfg();
        let (coef, rhs) = linear_rsum_closed(2, 3, LinearVariant::Plain).unwrap();
        assert_eq!(coef, BigRational::from(BigInt::from(2)));
        let solved = rhs.eval(&c).unwrap() / BigReal::from_i64(2, 40);
        let series = sums::euler_sum(&SumSpec::r_sum(2, false, 3, false).unwrap(), &c)
            .unwrap()
            .value;
        assert!((&solved - &series).abs() < tol(1e-8), "{solved} vs {series}");
    }

    #[test]
    fn linear_closed_form_parity_zero_is_constants_identity() {
        let c = cfg();
        // plain with p+q even: coefficient 0, rhs must vanish
        let (coef, rhs) = linear_rsum_closed(2, 2, LinearVariant::Plain).unwrap();
        assert!(coef.is_zero());
        assert!(rhs.eval(&c).unwrap().abs() < tol(1e-8), "rhs = {rhs}");
    }

    #[test]
    fn theorem31_basic_cases() {
        let c = cfg();
        for (p, q, a, b) in [
            (2u32, 3u32, Seq::Ones, Seq::Ones),
            (1, 2, Seq::Alternating, Seq::Ones),
            (3, 2, Seq::Alternating, Seq::Alternating),
        ] {
            let r = theorem31_residual(p, q, &a, &b, &c).unwrap();
            assert!(r < tol(1e-8), "thm31 p={p} q={q} a={a:?} b={b:?}: {r}");
        }
    }

    #[test]
    fn theorem33_reproduces_weight_six_duality() {
        let c = cfg();
        let r = theorem33_residual(3, 2, 2, &Seq::Ones, &Seq::Ones, &c).unwrap();
        assert!(r < tol(1e-8), "residual {r}");
        let d = duality_weight_six(&c).unwrap();
        assert!(d < tol(1e-8), "duality {d}");
        assert!(theorem33_residual(3, 2, 1, &Seq::Ones, &Seq::Ones, &c).is_err());
    }

    #[test]
    fn theorem34_residuals_vanish() {
        let c = cfg();
        for (m, p, q, a, b, cc) in [
            (1u32, 1u32, 2u32, Seq::Ones, Seq::Ones, Seq::Ones),
            (1, 2, 2, Seq::Ones, Seq::Alternating, Seq::Alternating),
            (2, 1, 2, Seq::Alternating, Seq::Ones, Seq::Ones),
        ] {
            let r = theorem34_residual(m, p, q, &a, &b, &cc, &c).unwrap();
            assert!(r < tol(1e-6), "thm34 ({m},{p},{q}) {a:?}{b:?}{cc:?}: {r}");
        }
    }

    #[test]
    fn quasi_shuffle_m2_example() {
        let out = quasi_shuffle_expand(&[2, 3], 4).unwrap();
        let expect: Vec<(BigRational, Vec<i64>)> = vec![
            (BigRational::one(), vec![4, 2, 3]),
            (BigRational::one(), vec![4, 3, 2]),
            (BigRational::one(), vec![4, 5]),
        ];
        let got: Vec<(BigRational, Vec<i64>)> =
            out.into_iter().map(|(c, i)| (c, i.parts)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn quasi_shuffle_m3_ones() {
        let out = quasi_shuffle_expand(&[1, 1, 1], 2).unwrap();
        let got: Vec<(BigRational, Vec<i64>)> =
            out.into_iter().map(|(c, i)| (c, i.parts)).collect();
        let expect: Vec<(BigRational, Vec<i64>)> = vec![
            (BigRational::from(BigInt::from(6)), vec![2, 1, 1, 1]),
            (BigRational::from(BigInt::from(3)), vec![2, 1, 2]),
            (BigRational::from(BigInt::from(3)), vec![2, 2, 1]),
            (BigRational::one(), vec![2, 3]),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn quasi_shuffle_depth_one_signs() {
        // R_{p,q} = R(q,p); barred variants carry a sign
        let out = quasi_shuffle_expand(&[2], 3).unwrap();
        assert_eq!(out[0].0, BigRational::one());
        assert_eq!(out[0].1.parts, vec![3, 2]);
        let out = quasi_shuffle_expand(&[-2], 3).unwrap();
        assert_eq!(out[0].0, -BigRational::one());
        assert_eq!(out[0].1.parts, vec![3, -2]);
        let out = quasi_shuffle_expand(&[2], -3).unwrap();
        assert_eq!(out[0].0, -BigRational::one());
        assert_eq!(out[0].1.parts, vec![-3, 2]);
        let out = quasi_shuffle_expand(&[-2], -3).unwrap();
        assert_eq!(out[0].0, BigRational::one());
        assert_eq!(out[0].1.parts, vec![-3, -2]);
    }

    #[test]
    fn catalog_verifies_spot_checks() {
        let c = cfg();
        let cat = example_catalog();
        assert_eq!(cat.len(), 11);
        // two spot checks here; the full run lives in the acceptance suite
        let r = cat[3].verify(&c).unwrap(); // R{~2;~2}
        assert!(r.pass, "R{{~2;~2}}: err {}", r.abs_err);
        let r = cat[6].verify(&c).unwrap(); // MRV(2,1)
        assert!(r.pass, "MRV(2,1): err {}", r.abs_err);
    }

    #[test]
    fn catalog_round_trips_through_json() {
        let json = catalog_json();
        let back = catalog_from_json(&json).unwrap();
        assert_eq!(back.len(), 11);
        assert_eq!(back[0].name, "R{~1;4}");
        assert_eq!(back[0].lhs, "R{~1;4}");
    }

    #[test]
    fn triple_reduction_parity_check() {
        assert!(triple_reduction(1, 1, 3).is_err()); // odd total
        assert!(triple_reduction(1, 2, 3).is_ok());
    }

    #[test]
    fn triple_reduction_small_case() {
        let c = cfg();
        let sym = triple_reduction(1, 1, 2).unwrap();
        let lhs = triple_series(1, 1, 2, &c).unwrap();
        let rhs = sym.eval(&c).unwrap();
        assert!((&lhs - &rhs).abs() < tol(1e-6), "{lhs} vs {rhs} ({sym})");
    }
}
