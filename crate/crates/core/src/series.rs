//! Exact truncated Laurent series in `q` and `y₁ … yₙ`.
//!
//! A [`LaurentSeries`] stores finitely many terms `c · qⁿ · y₁^{R₁/2} ⋯ yₙ^{Rₙ/2}`
//! with `0 ≤ n ≤ qmax` and exact rational `c`. The y-exponents are stored
//! *doubled*, so `y^{1/2}` is the integer key `1`. Each q-order is kept as its
//! own layer (a finite Laurent polynomial in the y's); this makes truncation
//! trivial and lets division proceed order by order.
//!
//! Binary operations truncate to the smaller of the two `qmax` values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Doubled y-exponent vector (one entry per y-variable).
pub type YExp = Vec<i32>;

/// One q-order: a Laurent polynomial in the y-variables.
pub type Layer = BTreeMap<YExp, Coeff>;

pub const DEFAULT_QMAX: u32 = 10;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    nvars: usize,
    qmax: u32,
    layers: Vec<Layer>,
}

impl LaurentSeries {
    pub fn zero(nvars: usize, qmax: u32) -> Self {
        LaurentSeries {
            nvars,
            qmax,
            layers: vec![Layer::new(); qmax as usize + 1],
        }
    }

    pub fn constant(nvars: usize, qmax: u32, c: Coeff) -> Self {
        Self::monomial(nvars, qmax, 0, vec![0; nvars], c)
    }

    pub fn one(nvars: usize, qmax: u32) -> Self {
        Self::constant(nvars, qmax, Coeff::one())
    }

    /// `c · qⁿ · y^{exps/2}`; the zero series when `n > qmax`.
    pub fn monomial(nvars: usize, qmax: u32, n: u32, exps: YExp, c: Coeff) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length must equal nvars");
        let mut s = Self::zero(nvars, qmax);
        s.add_term(n, exps, c);
        s
    }

    /// Builds a series from `(n, R, c)` triples, summing repeated keys and
    /// dropping terms beyond `qmax`.
    pub fn from_terms<I>(nvars: usize, qmax: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, YExp, Coeff)>,
    {
        let mut s = Self::zero(nvars, qmax);
        for (n, exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VarMismatch {
                    left: nvars,
                    right: exps.len(),
                });
            }
            s.add_term(n, exps, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn qmax(&self) -> u32 {
        self.qmax
    }

    pub fn layer(&self, n: u32) -> Option<&Layer> {
        self.layers.get(n as usize)
    }

    pub fn coeff(&self, n: u32, exps: &[i32]) -> Coeff {
        self.layers
            .get(n as usize)
            .and_then(|l| l.get(exps))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    /// All stored terms in lexicographic `(n, R)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &YExp, &Coeff)> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(n, l)| l.iter().map(move |(k, c)| (n as u32, k, c)))
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(BTreeMap::is_empty)
    }

    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, _, c)| c.is_integer())
    }

    /// Smallest q-order carrying a nonzero term.
    pub fn min_q(&self) -> Option<u32> {
        self.layers.iter().position(|l| !l.is_empty()).map(|n| n as u32)
    }

    pub(crate) fn add_term(&mut self, n: u32, exps: YExp, c: Coeff) {
        if n > self.qmax || c.is_zero() {
            return;
        }
        let layer = &mut self.layers[n as usize];
        match layer.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Drops all orders above `qmax` (no-op if already lower).
    pub fn truncate(&self, qmax: u32) -> Self {
        let qmax = qmax.min(self.qmax);
        LaurentSeries {
            nvars: self.nvars,
            qmax,
            layers: self.layers[..=qmax as usize].to_vec(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.qmax);
        for (n, k, c) in other.terms() {
            out.add_term(n, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.qmax);
        }
        let layers = self
            .layers
            .iter()
            .map(|l| l.iter().map(|(k, v)| (k.clone(), v * c)).collect())
            .collect();
        LaurentSeries {
            nvars: self.nvars,
            qmax: self.qmax,
            layers,
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Multiplies by the monomial `c · qⁿ · y^{exps/2}`.
    pub fn mul_monomial(&self, n: u32, exps: &[i32], c: &Coeff) -> Self {
        assert_eq!(exps.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.qmax);
        if c.is_zero() {
            return out;
        }
        for (m, k, v) in self.terms() {
            if m + n > self.qmax {
                break;
            }
            let key: YExp = k.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.layers[(m + n) as usize].insert(key, v * c);
        }
        out
    }

    /// Multiplies in place by `(1 − c·qᵐ·y^{exps/2})`, the building block of
    /// every infinite product used in this crate.
    pub fn mul_one_minus(&mut self, m: u32, exps: &[i32], c: &Coeff) {
        if m == 0 {
            let shifted = self.mul_monomial(0, exps, c);
            *self = self.checked_sub(&shifted).expect("same shape");
            return;
        }
        // Walk orders downwards so every read sees the old value.
        for n in (m..=self.qmax).rev() {
            let src = self.layers[(n - m) as usize].clone();
            for (k, v) in src {
                let key: YExp = k.iter().zip(exps).map(|(a, b)| a + b).collect();
                self.add_term(n, key, -(v * c));
            }
        }
    }

    /// Cauchy product truncated at `min(self.qmax, other.qmax)`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let qmax = self.qmax.min(other.qmax);
        let mut acc: Vec<BTreeMap<YExp, Coeff>> = vec![BTreeMap::new(); qmax as usize + 1];
        for (i, la) in self.layers.iter().enumerate().take(qmax as usize + 1) {
            if la.is_empty() {
                continue;
            }
            for (j, lb) in other.layers.iter().enumerate().take(qmax as usize + 1 - i) {
                if lb.is_empty() {
                    continue;
                }
                let slot = &mut acc[i + j];
                for (ka, ca) in la {
                    for (kb, cb) in lb {
                        let key: YExp = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                        let prod = ca * cb;
                        match slot.entry(key) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(prod);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                *o.get_mut() += prod;
                            }
                        }
                    }
                }
            }
        }
        for l in &mut acc {
            l.retain(|_, c| !c.is_zero());
        }
        Ok(LaurentSeries {
            nvars: self.nvars,
            qmax,
            layers: acc,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.nvars, self.qmax);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse. The q⁰ layer must be a single monomial
    /// `c·y^R`; the inverse then has finite y-support at every order.
    pub fn inv(&self) -> Result<Self> {
        let lead = &self.layers[0];
        if lead.len() != 1 {
            return Err(Error::NotInvertible(if lead.is_empty() {
                "q^0 layer vanishes".to_string()
            } else {
                format!("q^0 layer has {} terms, need a single monomial", lead.len())
            }));
        }
        Self::one(self.nvars, self.qmax).div_exact(self)
    }

    /// Exact quotient `self / divisor`, computed order by order.
    ///
    /// The divisor's q⁰ layer must be nonzero; each quotient layer is obtained
    /// by exact Laurent-polynomial division. Fails with
    /// [`Error::NotDivisible`] when some layer does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        let qmax = self.qmax.min(divisor.qmax);
        let d0 = &divisor.layers[0];
        if d0.is_empty() {
            return Err(Error::NotInvertible(
                "divisor has no q^0 layer (negative q-powers are not representable)".into(),
            ));
        }
        let mut quot = Self::zero(self.nvars, qmax);
        for n in 0..=qmax as usize {
            let mut rhs = self.layers[n].clone();
            for i in 1..=n {
                let di = &divisor.layers[i];
                if di.is_empty() {
                    continue;
                }
                for (ka, ca) in di {
                    for (kb, cb) in &quot.layers[n - i] {
                        let key: YExp = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                        let e = rhs.entry(key).or_insert_with(Coeff::zero);
                        *e -= ca * cb;
                    }
                }
            }
            rhs.retain(|_, c| !c.is_zero());
            quot.layers[n] = divide_layer(&rhs, d0).ok_or(Error::NotDivisible(n as u32))?;
        }
        Ok(quot)
    }

    /// Rescales variable `var`: every doubled exponent `R[var]` becomes `t·R[var]`
    /// (the substitution `z ↦ t·z`).
    pub fn subst_y_scale(&self, var: usize, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("scale factor t must be ≥ 1".into()));
        }
        if var >= self.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        self.map_exponents(self.nvars, |k| {
            let mut k = k.to_vec();
            k[var] *= t as i32;
            k
        })
    }

    /// Applies an arbitrary map on exponent vectors, summing colliding terms.
    pub fn map_exponents<F>(&self, nvars: usize, f: F) -> Result<Self>
    where
        F: Fn(&[i32]) -> YExp,
    {
        let mut out = Self::zero(nvars, self.qmax);
        for (n, k, c) in self.terms() {
            let key = f(k);
            if key.len() != nvars {
                return Err(Error::VarMismatch {
                    left: nvars,
                    right: key.len(),
                });
            }
            out.add_term(n, key, c.clone());
        }
        Ok(out)
    }

    /// Re-indexes q: term `qⁿ` moves to `q^{n/step}`. Every stored order must be
    /// a multiple of `step`; used to pass from `q^{1/2}` to `q` bookkeeping.
    pub fn compress_q(&self, step: u32) -> Result<Self> {
        let qmax = self.qmax / step;
        let mut out = Self::zero(self.nvars, qmax);
        for (n, k, c) in self.terms() {
            if n % step != 0 {
                return Err(Error::Inconsistent(format!(
                    "q-order {n} is not a multiple of {step}"
                )));
            }
            out.add_term(n / step, k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Sum of all coefficients at each q-order: the specialisation `y = 1`.
    pub fn eval_y_one(&self) -> LaurentSeries {
        let mut out = Self::zero(0, self.qmax);
        for (n, layer) in self.layers.iter().enumerate() {
            let s: Coeff = layer.values().fold(Coeff::zero(), |a, b| a + b);
            out.add_term(n as u32, vec![], s);
        }
        out
    }

    /// Reads back a series serialized with [`LaurentSeries::to_record`].
    pub fn from_record(rec: &SeriesRecord) -> Result<Self> {
        let mut terms = Vec::with_capacity(rec.terms.len());
        for (n, exps, c) in &rec.terms {
            let c = Coeff::from_str(c.trim())
                .map_err(|_| Error::Malformed(format!("bad coefficient `{c}`")))?;
            if *n > rec.qmax {
                return Err(Error::Malformed(format!(
                    "term at q^{n} exceeds qmax {}",
                    rec.qmax
                )));
            }
            terms.push((*n, exps.clone(), c));
        }
        let s = Self::from_terms(rec.nvars, rec.qmax, terms)?;
        if rec.integral && !s.is_integral() {
            return Err(Error::NotIntegral(
                "series declared integral has a fractional coefficient".into(),
            ));
        }
        Ok(s)
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            integral: self.is_integral(),
            nvars: self.nvars,
            qmax: self.qmax,
            terms: self
                .terms()
                .map(|(n, k, c)| (n, k.clone(), c.to_string()))
                .collect(),
        }
    }
}

/// Exact division of Laurent polynomials, or `None` if `d ∤ p`.
///
/// Repeatedly cancels the lexicographically largest term. Quotient exponents
/// are confined per variable to `[min(p) − min(d), max(p) − max(d)]`, which
/// makes the loop terminate on non-divisible input.
fn divide_layer(p: &Layer, d: &Layer) -> Option<Layer> {
    let mut quot = Layer::new();
    if p.is_empty() {
        return Some(quot);
    }
    let (dk, dc) = d.iter().next_back().expect("nonempty divisor");
    if d.len() == 1 {
        for (k, c) in p {
            let key: YExp = k.iter().zip(dk).map(|(a, b)| a - b).collect();
            quot.insert(key, c / dc);
        }
        return Some(quot);
    }
    let nv = dk.len();
    let bounds: Vec<(i32, i32)> = (0..nv)
        .map(|i| {
            let (pmin, pmax) = var_range(p, i);
            let (dmin, dmax) = var_range(d, i);
            (pmin - dmin, pmax - dmax)
        })
        .collect();
    let mut rem = p.clone();
    while let Some((rk, rc)) = rem.iter().next_back() {
        let qk: YExp = rk.iter().zip(dk).map(|(a, b)| a - b).collect();
        if qk.iter().zip(&bounds).any(|(e, (lo, hi))| e < lo || e > hi) {
            return None;
        }
        let qc = rc / dc;
        for (k, c) in d {
            let key: YExp = k.iter().zip(&qk).map(|(a, b)| a + b).collect();
            let e = rem.entry(key.clone()).or_insert_with(Coeff::zero);
            *e -= c * &qc;
            if e.is_zero() {
                rem.remove(&key);
            }
        }
        quot.insert(qk, qc);
    }
    Some(quot)
}

fn var_range(l: &Layer, i: usize) -> (i32, i32) {
    l.keys()
        .map(|k| k[i])
        .fold((i32::MAX, i32::MIN), |(lo, hi), e| (lo.min(e), hi.max(e)))
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            /// Panics on a variable-count mismatch; use the `checked_*` method to
            /// get an error instead.
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                self.$checked(rhs).expect("variable count mismatch")
            }
        }
        impl std::ops::$tr<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$checked(&rhs).expect("variable count mismatch")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries(nvars={}, qmax={}): {self}", self.nvars, self.qmax)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(q^{})", self.qmax + 1);
        }
        let mut first = true;
        for (n, k, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if n > 0 {
                parts.push(if n == 1 { "q".to_string() } else { format!("q^{n}") });
            }
            for (i, e) in k.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = if self.nvars == 1 { "y".to_string() } else { format!("y{}", i + 1) };
                let exp = if e % 2 == 0 { format!("{}", e / 2) } else { format!("{e}/2") };
                parts.push(if exp == "1" { name } else { format!("{name}^{exp}") });
            }
            if parts.is_empty() || !abs.is_one() {
                parts.insert(0, abs.to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        write!(f, " + O(q^{})", self.qmax + 1)
    }
}

/// Serialized form: `{integral, nvars, qmax, terms: [[n, [R…], "c"], …]}` with
/// terms in lexicographic `(n, R)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    #[serde(default)]
    pub integral: bool,
    pub nvars: usize,
    pub qmax: u32,
    pub terms: Vec<(u32, YExp, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: u32, r: i32, c: i64) -> LaurentSeries {
        LaurentSeries::monomial(1, 6, n, vec![r], rat(c))
    }

    #[test]
    fn add_cancels_and_prunes() {
        // (q + y) + (−y) → q
        let a = &y(1, 0, 1) + &y(0, 2, 1);
        let s = &a + &y(0, 2, -1);
        assert_eq!(s, y(1, 0, 1));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn add_zero_is_identity_and_doubling() {
        let a = &y(0, 0, 1) + &y(1, 0, 1);
        assert_eq!(&a + &LaurentSeries::zero(1, 6), a);
        assert_eq!(&a + &a, &y(0, 0, 2) + &y(1, 0, 2));
    }

    #[test]
    fn add_truncates_to_min_order() {
        let a = LaurentSeries::monomial(0, 9, 8, vec![], rat(1));
        let b = LaurentSeries::one(0, 4);
        let s = &a + &b;
        assert_eq!(s.qmax(), 4);
        assert_eq!(s, LaurentSeries::one(0, 4));
    }

    #[test]
    fn mismatched_variable_counts_error() {
        let a = LaurentSeries::one(1, 3);
        let b = LaurentSeries::one(2, 3);
        assert!(matches!(a.checked_add(&b), Err(Error::VarMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn square_of_half_integer_binomial() {
        // (y^{1/2} − y^{−1/2})² = y − 2 + y^{−1}
        let b = &y(0, 1, 1) + &y(0, -1, -1);
        let sq = &b * &b;
        let expected = &(&y(0, 2, 1) + &y(0, 0, -2)) + &y(0, -2, 1);
        assert_eq!(sq, expected);
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_q = &LaurentSeries::one(0, 7) - &LaurentSeries::monomial(0, 7, 1, vec![], rat(1));
        let inv = one_minus_q.inv().unwrap();
        for n in 0..=7 {
            assert_eq!(inv.coeff(n, &[]), rat(1));
        }
        assert_eq!(&one_minus_q * &inv, LaurentSeries::one(0, 7));
    }

    #[test]
    fn inverse_of_monomial() {
        let inv = y(0, 2, 1).inv().unwrap();
        assert_eq!(inv, y(0, -2, 1));
    }

    #[test]
    fn inverse_rejects_non_monomial_leading_layer() {
        let b = &y(0, 1, 1) + &y(0, -1, -1);
        assert!(matches!(b.inv(), Err(Error::NotInvertible(_))));
        assert!(matches!(y(1, 0, 1).inv(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn exact_division_of_binomials() {
        // (y − y^{−1}) / (y^{1/2} − y^{−1/2}) = y^{1/2} + y^{−1/2}
        let num = &y(0, 2, 1) + &y(0, -2, -1);
        let den = &y(0, 1, 1) + &y(0, -1, -1);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q, &y(0, 1, 1) + &y(0, -1, 1));
    }

    #[test]
    fn inexact_division_is_reported() {
        let num = &y(0, 2, 1) + &y(0, 0, 1);
        let den = &y(0, 1, 1) + &y(0, -1, -1);
        assert!(matches!(num.div_exact(&den), Err(Error::NotDivisible(0))));
    }

    #[test]
    fn y_scaling() {
        let s = &y(0, 2, 1) + &y(0, -2, -1);
        let t = s.subst_y_scale(0, 2).unwrap();
        assert_eq!(t, &y(0, 4, 1) + &y(0, -4, -1));
        let c = LaurentSeries::constant(1, 6, rat(5));
        assert_eq!(c.subst_y_scale(0, 7).unwrap(), c);
        assert!(s.subst_y_scale(0, 0).is_err());
    }

    #[test]
    fn mul_one_minus_matches_generic_product() {
        let base = &y(0, 1, 1) + &y(2, -1, 3);
        let mut fast = base.clone();
        fast.mul_one_minus(1, &[2], &rat(1));
        let factor = &LaurentSeries::one(1, 6) - &y(1, 2, 1);
        assert_eq!(fast, &base * &factor);
    }

    #[test]
    fn record_round_trip_and_integrality_flag() {
        let s = &y(0, 1, 1) + &LaurentSeries::monomial(1, 6, 2, vec![-3], ratio(1, 2));
        let rec = s.to_record();
        assert!(!rec.integral);
        assert_eq!(rec.terms[1].2, "1/2");
        let back = LaurentSeries::from_record(&rec).unwrap();
        assert_eq!(back, s);
        let mut bad = rec;
        bad.integral = true;
        assert!(LaurentSeries::from_record(&bad).is_err());
    }

    #[test]
    fn display_uses_half_exponents() {
        let s = &y(0, 1, 1) + &y(0, -1, -1);
        assert_eq!(s.to_string(), "-y^-1/2 + y^1/2 + O(q^7)");
    }
}
