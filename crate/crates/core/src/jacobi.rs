//! Weak Jacobi forms: the generator `a = φ₋₁,½`, the weight-0 generators
//! `φ₀,₁, φ₀,₃⁄₂, φ₀,₂, φ₀,₄`, and the coefficient-level checks on them.
//!
//! Indices are stored doubled: a form of index `k/2` has `index2 = k`, and its
//! Fourier support satisfies `R ≡ k (mod 2)` for the doubled y-exponent `R`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{mf_generator, ModularGenerator, QSeries};
use crate::order::Order;
use crate::series::{rat, Coeff, LaurentSeries, YExp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    pub weight2: i32,
    pub index2: i32,
    pub series: LaurentSeries,
}

impl JacobiForm {
    /// Wraps a series, checking the parity of its Fourier support.
    pub fn new(weight2: i32, index2: i32, series: LaurentSeries) -> Result<Self> {
        if series.nvars() == 0 {
            return Err(Error::InvalidArgument("a Jacobi form needs at least one y-variable".into()));
        }
        if let Some((n, k, _)) = series
            .terms()
            .find(|(_, k, _)| k.iter().any(|r| (r - index2).rem_euclid(2) != 0))
        {
            return Err(Error::InvalidArgument(format!(
                "term q^{n} y^{k:?} violates R ≡ index2 = {index2} (mod 2)"
            )));
        }
        Ok(JacobiForm {
            weight2,
            index2,
            series,
        })
    }

    pub fn nvars(&self) -> usize {
        self.series.nvars()
    }

    pub fn qmax(&self) -> u32 {
        self.series.qmax()
    }

    pub fn one(nvars: usize, qmax: u32) -> Self {
        JacobiForm {
            weight2: 0,
            index2: 0,
            series: LaurentSeries::one(nvars, qmax),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        JacobiForm {
            series: self.series.scale(c),
            ..self.clone()
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    /// Sum of two forms of the same weight and index.
    pub fn add(&self, other: &JacobiForm) -> Result<Self> {
        if (self.weight2, self.index2) != (other.weight2, other.index2) {
            return Err(Error::InvalidArgument(format!(
                "cannot add forms of (weight2, index2) = ({}, {}) and ({}, {})",
                self.weight2, self.index2, other.weight2, other.index2
            )));
        }
        Ok(JacobiForm {
            series: self.series.checked_add(&other.series)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &JacobiForm) -> Result<Self> {
        self.add(&other.scale_int(-1))
    }

    pub fn mul(&self, other: &JacobiForm) -> Result<Self> {
        jf_mul(self, other)
    }

    pub fn pow(&self, e: u32) -> Self {
        JacobiForm {
            weight2: self.weight2 * e as i32,
            index2: self.index2 * e as i32,
            series: self.series.pow(e),
        }
    }

    pub fn truncate(&self, qmax: u32) -> Self {
        JacobiForm {
            series: self.series.truncate(qmax),
            ..self.clone()
        }
    }

    /// Multiplies by a modular form.
    pub fn mul_modular(&self, f: &QSeries) -> Result<Self> {
        let lifted = f.series.map_exponents(self.nvars(), |_| vec![0; self.nvars()])?;
        Ok(JacobiForm {
            weight2: self.weight2 + f.weight2,
            index2: self.index2,
            series: self.series.checked_mul(&lifted)?,
        })
    }

    pub fn to_record(&self) -> JacobiRecord {
        let s = self.series.to_record();
        JacobiRecord {
            index2: self.index2,
            integral: s.integral,
            nvars: s.nvars,
            qmax: s.qmax,
            terms: s.terms,
            weight2: self.weight2,
        }
    }

    pub fn from_record(rec: &JacobiRecord) -> Result<Self> {
        let series = LaurentSeries::from_record(&crate::series::SeriesRecord {
            integral: rec.integral,
            nvars: rec.nvars,
            qmax: rec.qmax,
            terms: rec.terms.clone(),
        })?;
        JacobiForm::new(rec.weight2, rec.index2, series)
    }
}

impl fmt::Display for JacobiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[weight {}/2, index {}/2] {}",
            self.weight2, self.index2, self.series
        )
    }
}

/// The series record with `weight2` and `index2` added; keys in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiRecord {
    pub index2: i32,
    #[serde(default)]
    pub integral: bool,
    pub nvars: usize,
    pub qmax: u32,
    pub terms: Vec<(u32, YExp, String)>,
    pub weight2: i32,
}

/// `a = (y^{1/2} − y^{−1/2}) ∏_{m≥1} (1 − qᵐy)(1 − qᵐy⁻¹)/(1 − qᵐ)²`.
pub fn jf_generator_a(qmax: u32) -> JacobiForm {
    let one = rat(1);
    let mut num = LaurentSeries::monomial(1, qmax, 0, vec![1], rat(1))
        - LaurentSeries::monomial(1, qmax, 0, vec![-1], rat(1));
    let mut den = LaurentSeries::one(1, qmax);
    for m in 1..=qmax {
        num.mul_one_minus(m, &[2], &one);
        num.mul_one_minus(m, &[-2], &one);
        den.mul_one_minus(m, &[0], &one);
        den.mul_one_minus(m, &[0], &one);
    }
    let series = num.div_exact(&den).expect("denominator is 1 + O(q)");
    JacobiForm {
        weight2: -2,
        index2: 1,
        series,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeakGenerator {
    Phi01,
    Phi032,
    Phi02,
    Phi04,
}

impl WeakGenerator {
    pub const ALL: [WeakGenerator; 4] = [Self::Phi01, Self::Phi032, Self::Phi02, Self::Phi04];

    pub fn index2(self) -> i32 {
        match self {
            Self::Phi01 => 2,
            Self::Phi032 => 3,
            Self::Phi02 => 4,
            Self::Phi04 => 8,
        }
    }

    /// Value of the constant term under `z = 0`.
    pub fn ev_value(self) -> u64 {
        match self {
            Self::Phi01 => 12,
            Self::Phi032 => 2,
            Self::Phi02 => 6,
            Self::Phi04 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi01 => "phi01",
            Self::Phi032 => "phi032",
            Self::Phi02 => "phi02",
            Self::Phi04 => "phi04",
        }
    }
}

impl FromStr for WeakGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', ','], "").as_str() {
            "phi01" => Ok(Self::Phi01),
            "phi032" => Ok(Self::Phi032),
            "phi02" => Ok(Self::Phi02),
            "phi04" => Ok(Self::Phi04),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for WeakGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Theta-function pieces in the variable `Q = q^{1/2}`, so all exponents are
/// integers. `theta2` omits its overall `q^{1/8}`, which cancels in the
/// quotient `θ₂(z)²/θ₂(0)²`.
fn theta_squares_over_constants(qmax: u32) -> Result<LaurentSeries> {
    let half_max = 2 * qmax;
    let bound = (half_max as f64).sqrt() as i64 + 2;
    let mut t2 = LaurentSeries::zero(1, half_max);
    let mut t3 = LaurentSeries::zero(1, half_max);
    let mut t4 = LaurentSeries::zero(1, half_max);
    for n in -bound..=bound {
        let e3 = (n * n) as u32;
        t3.add_term(e3, vec![2 * n as i32], rat(1));
        t4.add_term(e3, vec![2 * n as i32], rat(if n % 2 == 0 { 1 } else { -1 }));
        if n * (n + 1) >= 0 {
            // q^{(n+1/2)²/2} = q^{1/8} · q^{n(n+1)/2} = q^{1/8} · Q^{n(n+1)}
            t2.add_term((n * (n + 1)) as u32, vec![2 * n as i32 + 1], rat(1));
        }
    }
    let mut total = LaurentSeries::zero(1, half_max);
    for t in [&t2, &t3, &t4] {
        let sq = t * t;
        let at_zero = sq.eval_y_one().map_exponents(1, |_| vec![0])?;
        total = &total + &sq.div_exact(&at_zero)?;
    }
    total.compress_q(2)
}

/// `φ₀,₁ = 4 Σ_{i=2,3,4} θᵢ(z)²/θᵢ(0)²`.
fn phi01(qmax: u32) -> Result<JacobiForm> {
    let s = theta_squares_over_constants(qmax)?.scale_int(4);
    JacobiForm::new(0, 2, s)
}

/// `φ₀,₃⁄₂ = a(2z)/a(z)`.
fn phi032(qmax: u32) -> Result<JacobiForm> {
    let a = jf_generator_a(qmax);
    let a2 = a.series.subst_y_scale(0, 2)?;
    JacobiForm::new(0, 3, a2.div_exact(&a.series)?)
}

fn divide_integral(f: JacobiForm, d: i64, what: &str) -> Result<JacobiForm> {
    let g = f.scale(&Coeff::new(1.into(), d.into()));
    if !g.series.is_integral() {
        return Err(Error::NotIntegral(what.to_string()));
    }
    Ok(g)
}

/// `φ₀,₂ = (φ₀,₁² − E₄·a⁴)/24`.
fn phi02(qmax: u32) -> Result<JacobiForm> {
    let p1 = phi01(qmax)?;
    let a4 = jf_generator_a(qmax).pow(4);
    let e4a4 = a4.mul_modular(&mf_generator(ModularGenerator::E4, qmax))?;
    divide_integral(p1.pow(2).sub(&e4a4)?, 24, "phi02")
}

/// `φ₀,₄ = (φ₀,₁·φ₀,₃⁄₂² − φ₀,₂²)/4`.
fn phi04(qmax: u32) -> Result<JacobiForm> {
    let lhs = jf_mul(&phi01(qmax)?, &phi032(qmax)?.pow(2))?;
    divide_integral(lhs.sub(&phi02(qmax)?.pow(2))?, 4, "phi04")
}

pub fn jf_generator(gen: WeakGenerator, qmax: u32) -> Result<JacobiForm> {
    match gen {
        WeakGenerator::Phi01 => phi01(qmax),
        WeakGenerator::Phi032 => phi032(qmax),
        WeakGenerator::Phi02 => phi02(qmax),
        WeakGenerator::Phi04 => phi04(qmax),
    }
}

/// All four weight-0 generators at a common order, computed once.
#[derive(Clone, Debug)]
pub struct WeakBasis {
    pub phi01: JacobiForm,
    pub phi032: JacobiForm,
    pub phi02: JacobiForm,
    pub phi04: JacobiForm,
}

impl WeakBasis {
    pub fn new(qmax: u32) -> Result<Self> {
        let phi01 = phi01(qmax)?;
        let phi032 = phi032(qmax)?;
        let e4a4 = jf_generator_a(qmax)
            .pow(4)
            .mul_modular(&mf_generator(ModularGenerator::E4, qmax))?;
        let phi02 = divide_integral(phi01.pow(2).sub(&e4a4)?, 24, "phi02")?;
        let rel = jf_mul(&phi01, &phi032.pow(2))?.sub(&phi02.pow(2))?;
        let phi04 = divide_integral(rel, 4, "phi04")?;
        Ok(WeakBasis {
            phi01,
            phi032,
            phi02,
            phi04,
        })
    }

    pub fn get(&self, gen: WeakGenerator) -> &JacobiForm {
        match gen {
            WeakGenerator::Phi01 => &self.phi01,
            WeakGenerator::Phi032 => &self.phi032,
            WeakGenerator::Phi02 => &self.phi02,
            WeakGenerator::Phi04 => &self.phi04,
        }
    }

    /// `φ₀,₁^{e₁} φ₀,₃⁄₂^{e₂} φ₀,₂^{e₃} φ₀,₄^{e₄}`.
    pub fn monomial(&self, e: Exponents) -> Result<JacobiForm> {
        let mut acc = JacobiForm::one(1, self.phi01.qmax());
        for (gen, k) in WeakGenerator::ALL.iter().zip(e) {
            if k > 0 {
                acc = jf_mul(&acc, &self.get(*gen).pow(k))?;
            }
        }
        Ok(acc)
    }
}

pub fn jf_mul(a: &JacobiForm, b: &JacobiForm) -> Result<JacobiForm> {
    Ok(JacobiForm {
        weight2: a.weight2 + b.weight2,
        index2: a.index2 + b.index2,
        series: a.series.checked_mul(&b.series)?,
    })
}

/// The specialisation `z = 0` (all `yᵢ = 1`).
pub fn jf_ev_z0(f: &JacobiForm) -> QSeries {
    QSeries {
        weight2: f.weight2,
        series: f.series.eval_y_one(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub n: u32,
    pub r2: i32,
    pub lhs: Coeff,
    pub partner_n: u32,
    pub partner_r2: i32,
    pub rhs: Coeff,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EllipticReport {
    pub lambda: i32,
    /// Pairs `((n, R), (n', R'))` compared, with at least one side nonzero.
    pub checked: Vec<((u32, i32), (u32, i32))>,
    pub violations: Vec<Violation>,
}

impl EllipticReport {
    /// No pair could be compared inside the truncation window.
    pub fn is_vacuous(&self) -> bool {
        self.checked.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the elliptic transformation law on Fourier coefficients:
/// `c(n, r) = (−1)^{λ·index2} · c(n + λr + mλ², r + 2mλ)` with `m = index2/2`,
/// over every pair where both orders lie in `[0, qmax]`.
///
/// The sign is the character of the translation for half-integral index; it
/// is `+1` whenever `index2` is even.
pub fn jf_check_elliptic_law(f: &JacobiForm, lambda: i32) -> Result<EllipticReport> {
    if f.nvars() != 1 {
        return Err(Error::InvalidArgument("elliptic-law check needs nvars = 1".into()));
    }
    let k = f.index2 as i64;
    let lam = lambda as i64;
    let sign = if (lam * k).rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
    let qmax = f.qmax() as i64;
    // Doubled: n' = n + λR/2 + kλ²/4·… = n + λ(R + kλ)/2, R' = R + 2kλ.
    let forward = |n: i64, r: i64| (n + lam * (r + k * lam) / 2, r + 2 * k * lam);
    let backward = |n: i64, r: i64| {
        let r0 = r - 2 * k * lam;
        (n - lam * (r0 + k * lam) / 2, r0)
    };
    let mut pairs = BTreeSet::new();
    for (n, key, _) in f.series.terms() {
        let (n, r) = (n as i64, key[0] as i64);
        let (n1, r1) = forward(n, r);
        if (0..=qmax).contains(&n1) {
            pairs.insert(((n, r), (n1, r1)));
        }
        let (n0, r0) = backward(n, r);
        if (0..=qmax).contains(&n0) {
            pairs.insert(((n0, r0), (n, r)));
        }
    }
    let mut report = EllipticReport {
        lambda,
        ..Default::default()
    };
    for ((n, r), (n1, r1)) in pairs {
        let lhs = f.series.coeff(n as u32, &[r as i32]);
        let rhs = f.series.coeff(n1 as u32, &[r1 as i32]);
        report.checked.push(((n as u32, r as i32), (n1 as u32, r1 as i32)));
        if lhs != &sign * &rhs {
            report.violations.push(Violation {
                n: n as u32,
                r2: r as i32,
                lhs,
                partner_n: n1 as u32,
                partner_r2: r1 as i32,
                rhs,
            });
        }
    }
    Ok(report)
}

/// `c(n, R) = c(n, −R)` for every stored term.
pub fn jf_is_even(f: &JacobiForm) -> Result<bool> {
    if f.nvars() != 1 {
        return Err(Error::InvalidArgument("evenness check needs nvars = 1".into()));
    }
    Ok(f
        .series
        .terms()
        .all(|(n, k, c)| f.series.coeff(n, &[-k[0]]) == *c))
}

/// Exponents `(e₁, e₂, e₃, e₄)` of `φ₀,₁, φ₀,₃⁄₂, φ₀,₂, φ₀,₄`.
pub type Exponents = [u32; 4];

/// All exponent tuples with `2e₁ + 3e₂ + 4e₃ + 8e₄ = index2`, in lexicographic order.
pub fn jf_weight0_monomials(index2: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for e1 in 0..=index2 / 2 {
        for e2 in 0..=index2 / 3 {
            for e3 in 0..=index2 / 4 {
                let used = 2 * e1 + 3 * e2 + 4 * e3;
                if used > index2 {
                    break;
                }
                let rest = index2 - used;
                if rest.is_multiple_of(8) {
                    out.push([e1, e2, e3, rest / 8]);
                }
            }
        }
    }
    out
}

/// Value of a monomial under `z = 0`, from the generator values 12, 2, 6, 3.
pub fn monomial_ev(e: Exponents) -> BigUint {
    WeakGenerator::ALL
        .iter()
        .zip(e)
        .fold(BigUint::one(), |acc, (g, k)| acc * BigUint::from(g.ev_value()).pow(k))
}

/// gcd of the `z = 0` values of all weight-0 monomials of doubled index `k`;
/// ∞ when there is no monomial.
pub fn jf_dclas_via_basis(k: u32) -> Order {
    let g = jf_weight0_monomials(k)
        .into_iter()
        .map(monomial_ev)
        .fold(BigUint::zero(), |acc, v| acc.gcd(&v));
    if g.is_zero() {
        Order::Infinite
    } else {
        Order::Finite(u64::try_from(g).expect("gcd bounded by 24"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer0(f: &JacobiForm) -> Vec<(i32, i64)> {
        f.series
            .layer(0)
            .unwrap()
            .iter()
            .map(|(k, c)| (k[0], c.to_integer().try_into().unwrap()))
            .collect()
    }

    #[test]
    fn a_leading_layers() {
        let a = jf_generator_a(6);
        assert_eq!(layer0(&a), vec![(-1, -1), (1, 1)]);
        assert_eq!(a.series.coeff(1, &[3]), rat(-1));
        assert_eq!((a.weight2, a.index2), (-2, 1));
    }

    #[test]
    fn a_is_odd() {
        let a = jf_generator_a(5);
        for (n, k, c) in a.series.terms() {
            assert_eq!(a.series.coeff(n, &[-k[0]]), -c.clone());
        }
        assert!(!jf_is_even(&a).unwrap());
        assert!(jf_is_even(&a.pow(2)).unwrap());
    }

    #[test]
    fn generator_leading_layers() {
        let b = WeakBasis::new(3).unwrap();
        assert_eq!(layer0(&b.phi01), vec![(-2, 1), (0, 10), (2, 1)]);
        assert_eq!(layer0(&b.phi032), vec![(-1, 1), (1, 1)]);
        assert_eq!(layer0(&b.phi02), vec![(-2, 1), (0, 4), (2, 1)]);
        assert_eq!(layer0(&b.phi04), vec![(-2, 1), (0, 1), (2, 1)]);
    }

    #[test]
    fn ev_constant_terms() {
        let b = WeakBasis::new(4).unwrap();
        for g in WeakGenerator::ALL {
            let ev = jf_ev_z0(b.get(g));
            assert_eq!(ev.coeff(0), rat(g.ev_value() as i64), "{g}");
        }
        assert!(jf_ev_z0(&jf_generator_a(4)).series.is_zero());
        assert_eq!(jf_ev_z0(&b.phi01.scale_int(2)).coeff(0), rat(24));
    }

    #[test]
    fn grading_adds_under_products() {
        let a = jf_generator_a(3);
        let sq = jf_mul(&a, &a).unwrap();
        assert_eq!((sq.weight2, sq.index2), (-4, 2));
        let a4e4 = a.pow(4).mul_modular(&mf_generator(ModularGenerator::E4, 3)).unwrap();
        assert_eq!((a4e4.weight2, a4e4.index2), (0, 4));
        let p = phi01(3).unwrap();
        assert_eq!(jf_mul(&p, &JacobiForm::one(1, 3)).unwrap(), p);
    }

    #[test]
    fn support_parity_is_enforced() {
        let bad = LaurentSeries::monomial(1, 2, 0, vec![2], rat(1));
        assert!(JacobiForm::new(0, 1, bad).is_err());
    }

    #[test]
    fn elliptic_law_holds_for_a_and_phi01() {
        let a = jf_generator_a(8);
        let r = jf_check_elliptic_law(&a, 1).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.checked.len() >= 5);
        let p = phi01(8).unwrap();
        let r = jf_check_elliptic_law(&p, -1).unwrap();
        assert!(r.passed() && !r.is_vacuous());
    }

    #[test]
    fn elliptic_law_flags_corruption() {
        let mut p = phi01(8).unwrap();
        p.series.add_term(2, vec![2], rat(1));
        let r = jf_check_elliptic_law(&p, 1).unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| (v.n, v.r2) == (2, 2) || (v.partner_n, v.partner_r2) == (2, 2)));
    }

    #[test]
    fn elliptic_law_on_constant_is_vacuous() {
        let c = JacobiForm::one(1, 3);
        // index 0: every pair maps a term to itself.
        let r = jf_check_elliptic_law(&c, 1).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(jf_weight0_monomials(3), vec![[0, 1, 0, 0]]);
        assert_eq!(jf_weight0_monomials(4), vec![[0, 0, 1, 0], [2, 0, 0, 0]]);
        let m8 = jf_weight0_monomials(8);
        assert_eq!(m8.len(), 5);
        assert!(m8.contains(&[0, 0, 0, 1]) && m8.contains(&[1, 2, 0, 0]));
        assert!(jf_weight0_monomials(1).is_empty());
    }

    #[test]
    fn dclas_lattice_values() {
        assert_eq!(jf_dclas_via_basis(1), Order::Infinite);
        assert_eq!(jf_dclas_via_basis(3), Order::Finite(2));
        assert_eq!(jf_dclas_via_basis(4), Order::Finite(6));
    }
}
