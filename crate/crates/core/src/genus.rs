//! Elliptic genera from Chern numbers.
//!
//! Each Chern root `x` of the tangent bundle contributes, for every y-variable,
//! the factor
//!
//! ```text
//! F(x) = y^{1/2} · x/(1 − e^{−x}) · (1 − y^{−1}e^{−x})
//!        · ∏_{m≥1} (1 − qᵐ y eˣ)(1 − qᵐ y^{−1} e^{−x}) / ((1 − qᵐ eˣ)(1 − qᵐ e^{−x}))
//! ```
//!
//! and the genus is the degree-`dimc` part of `∏_roots ∏_vars F`, paired with
//! the Chern numbers. `F(0) = a(z, q)` is not a unit, so the product is split:
//! the Todd factor and the infinite product are units and go through
//! logarithms and power sums, while `∏_j (1 − y^{−1}e^{−x_j})` is expanded
//! exactly through Newton's identities on `u_j = e^{−x_j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::jacobi::{jf_ev_z0, JacobiForm};
use crate::modular::QSeries;
use crate::series::{rat, ratio, Coeff, LaurentSeries};

/// An integer partition, parts in non-increasing order. Indexes both Chern
/// monomials `c_λ = ∏ c_{λᵢ}` and power-sum monomials `p_λ = ∏ p_{λᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Malformed(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Malformed(format!("partition `{s}` has a zero part")));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Chern numbers of a closed almost-complex manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub label: String,
    pub dimc: u32,
    pub numbers: BTreeMap<Partition, BigInt>,
}

impl ChernData {
    pub fn new(label: impl Into<String>, dimc: u32, numbers: BTreeMap<Partition, BigInt>) -> Result<Self> {
        for p in numbers.keys() {
            if p.size() != dimc {
                return Err(Error::Malformed(format!(
                    "partition [{p}] does not sum to dimc = {dimc}"
                )));
            }
        }
        Ok(ChernData {
            label: label.into(),
            dimc,
            numbers,
        })
    }

    pub fn from_pairs(label: &str, dimc: u32, pairs: &[(&str, i64)]) -> Result<Self> {
        let mut numbers = BTreeMap::new();
        for (k, v) in pairs {
            numbers.insert(k.parse()?, BigInt::from(*v));
        }
        Self::new(label, dimc, numbers)
    }

    /// The one-point manifold, unit for [`chern_product`].
    pub fn point() -> Self {
        Self::from_pairs("point", 0, &[("", 1)]).expect("valid")
    }

    pub fn number(&self, p: &Partition) -> Result<&BigInt> {
        self.numbers
            .get(p)
            .ok_or_else(|| Error::MissingChernNumber(p.to_string()))
    }

    /// The top Chern number `c_dimc[M]`, i.e. the Euler number.
    pub fn euler(&self) -> Result<&BigInt> {
        self.number(&Partition::new(vec![self.dimc]))
    }

    /// Parses `{"label": …, "dimc": k, "numbers": {"2": 24, "1,1": 0}}`.
    /// Values may be JSON integers or decimal strings; extra keys are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let label = v.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        let dimc = v
            .get("dimc")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("missing non-negative integer `dimc`".into()))?;
        let map = v
            .get("numbers")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Malformed("missing object `numbers`".into()))?;
        let mut numbers = BTreeMap::new();
        for (k, val) in map {
            let n = match val {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Malformed(format!("Chern number for [{k}] is not an integer")))?,
                Value::String(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Malformed(format!("Chern number for [{k}] is not an integer")))?,
                _ => return Err(Error::Malformed(format!("Chern number for [{k}] is not an integer"))),
            };
            numbers.insert(k.parse()?, n);
        }
        Self::new(label, dimc as u32, numbers)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Fixtures shipped with the crate: `k3`, `quintic`, `point`, `cp1`.
    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name {
            "k3" => include_str!("../../../data/fixtures/k3.json"),
            "quintic" => include_str!("../../../data/fixtures/quintic.json"),
            "point" => include_str!("../../../data/fixtures/point.json"),
            "cp1" => include_str!("../../../data/fixtures/cp1.json"),
            _ => return Err(Error::UnknownName(name.to_string())),
        };
        Self::from_json(text)
    }

    pub fn to_json(&self) -> Value {
        let numbers: serde_json::Map<String, Value> = self
            .numbers
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
            .collect();
        serde_json::json!({
            "dimc": self.dimc,
            "label": self.label,
            "numbers": numbers,
        })
    }
}

/// Chern numbers of `M × N` from `c(T(M×N)) = c(TM)·c(TN)`.
pub fn chern_product(m: &ChernData, n: &ChernData) -> Result<ChernData> {
    let dim = m.dimc + n.dimc;
    let mut numbers = BTreeMap::new();
    for lambda in partitions(dim) {
        // c_i(M×N) = Σ_{a+b=i} c_a(M) c_b(N); choose the split of every part.
        let mut total = BigInt::zero();
        let mut splits: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new())];
        for &part in lambda.parts() {
            let mut next = Vec::with_capacity(splits.len() * (part as usize + 1));
            for (left, right) in &splits {
                for a in 0..=part {
                    let (mut l, mut r) = (left.clone(), right.clone());
                    l.push(a);
                    r.push(part - a);
                    next.push((l, r));
                }
            }
            splits = next;
        }
        for (left, right) in splits {
            let mu = Partition::new(left);
            let nu = Partition::new(right);
            if mu.size() != m.dimc {
                continue;
            }
            total += m.number(&mu)? * n.number(&nu)?;
        }
        numbers.insert(lambda, total);
    }
    ChernData::new(format!("{} x {}", m.label, n.label), dim, numbers)
}

// ---------------------------------------------------------------------------
// Rational power series in one variable, truncated at a fixed degree.

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

fn rs_mul(a: &[Coeff], b: &[Coeff], deg: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); deg + 1];
    for (i, x) in a.iter().enumerate().take(deg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn rs_inv(a: &[Coeff], deg: usize) -> Vec<Coeff> {
    let mut out = vec![Coeff::zero(); deg + 1];
    out[0] = Coeff::one() / &a[0];
    for n in 1..=deg {
        let mut s = Coeff::zero();
        for i in 1..=n.min(a.len() - 1) {
            s += &a[i] * &out[n - i];
        }
        out[n] = -s * &out[0];
    }
    out
}

/// `log a` for `a₀ = 1`.
fn rs_log(a: &[Coeff], deg: usize) -> Vec<Coeff> {
    let mut u: Vec<Coeff> = a.iter().take(deg + 1).cloned().collect();
    u.resize(deg + 1, Coeff::zero());
    u[0] = Coeff::zero();
    let mut out = vec![Coeff::zero(); deg + 1];
    let mut pow = u.clone();
    for j in 1..=deg {
        let c = ratio(if j % 2 == 1 { 1 } else { -1 }, j as i64);
        for (o, p) in out.iter_mut().zip(&pow) {
            *o += p * &c;
        }
        pow = rs_mul(&pow, &u, deg);
    }
    out
}

/// Coefficients of `log(x/(1 − e^{−x}))` up to `x^deg`.
pub fn todd_log_coefficients(deg: usize) -> Vec<Coeff> {
    // (1 − e^{−x})/x = Σ (−1)ⁿ xⁿ/(n+1)!
    let f: Vec<Coeff> = (0..=deg as u32)
        .map(|n| {
            let s = if n % 2 == 0 { 1 } else { -1 };
            Coeff::new(BigInt::from(s), factorial(n + 1))
        })
        .collect();
    rs_log(&rs_inv(&f, deg), deg)
}

/// Coefficients of the Todd series `x/(1 − e^{−x})` up to `x^deg`.
pub fn todd_coefficients(deg: usize) -> Vec<Coeff> {
    let f: Vec<Coeff> = (0..=deg as u32)
        .map(|n| {
            let s = if n % 2 == 0 { 1 } else { -1 };
            Coeff::new(BigInt::from(s), factorial(n + 1))
        })
        .collect();
    rs_inv(&f, deg)
}

// ---------------------------------------------------------------------------
// Per-root factor as a polynomial in x.

/// A polynomial in a nilpotent variable `x` with series coefficients:
/// `coeffs[i]` multiplies `xⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    pub coeffs: Vec<LaurentSeries>,
}

impl XSeries {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &XSeries) -> XSeries {
        let deg = self.degree().min(other.degree());
        let nv = self.coeffs[0].nvars();
        let qmax = self.coeffs[0].qmax().min(other.coeffs[0].qmax());
        let mut out = vec![LaurentSeries::zero(nv, qmax); deg + 1];
        for i in 0..=deg {
            for j in 0..=deg - i {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        XSeries { coeffs: out }
    }

    fn from_rational(c: &[Coeff], nvars: usize, qmax: u32) -> XSeries {
        XSeries {
            coeffs: c
                .iter()
                .map(|v| LaurentSeries::constant(nvars, qmax, v.clone()))
                .collect(),
        }
    }

    /// `exp(self)` for a series whose `x⁰` coefficient vanishes.
    fn exp_nilpotent(&self) -> XSeries {
        let deg = self.degree();
        let nv = self.coeffs[0].nvars();
        let qmax = self.coeffs[0].qmax();
        let mut acc = XSeries::from_rational(&[rat(1)], nv, qmax);
        acc.coeffs.resize(deg + 1, LaurentSeries::zero(nv, qmax));
        let mut power = acc.clone();
        for j in 1..=deg {
            power = power.mul(self);
            let c = Coeff::new(BigInt::one(), factorial(j as u32));
            for (a, p) in acc.coeffs.iter_mut().zip(&power.coeffs) {
                *a = &*a + &p.scale(&c);
            }
        }
        acc
    }
}

fn unit_vector(nvars: usize, var: usize, r2: i32) -> Vec<i32> {
    let mut v = vec![0; nvars];
    v[var] = r2;
    v
}

/// `∏_{m≥1}(1 − qᵐyᵢ)(1 − qᵐyᵢ⁻¹)/(1 − qᵐ)²`, the unit part of `a` in variable `var`.
fn theta_unit(nvars: usize, var: usize, qmax: u32) -> LaurentSeries {
    let one = rat(1);
    let mut num = LaurentSeries::one(nvars, qmax);
    let mut den = LaurentSeries::one(nvars, qmax);
    let zero = vec![0; nvars];
    for m in 1..=qmax {
        num.mul_one_minus(m, &unit_vector(nvars, var, 2), &one);
        num.mul_one_minus(m, &unit_vector(nvars, var, -2), &one);
        den.mul_one_minus(m, &zero, &one);
        den.mul_one_minus(m, &zero, &one);
    }
    num.div_exact(&den).expect("denominator is 1 + O(q)")
}

/// x-coefficients `d ≥ 1` of the logarithm of the infinite product in `F`:
/// `g_d = −(1/d!) Σ_N q^N Σ_{r|N} r^{d−1} (y^r + (−1)^d y^{−r} − 1 − (−1)^d)`.
fn product_log_coefficient(nvars: usize, var: usize, qmax: u32, d: u32) -> LaurentSeries {
    let mut s = LaurentSeries::zero(nvars, qmax);
    let sign: i64 = if d.is_multiple_of(2) { 1 } else { -1 };
    let zero = vec![0; nvars];
    for big_n in 1..=qmax {
        for r in (1..=big_n).filter(|r| big_n % r == 0) {
            let w = BigInt::from(r).pow(d - 1);
            let w = Coeff::from_integer(w);
            s.add_term(big_n, unit_vector(nvars, var, 2 * r as i32), w.clone());
            s.add_term(big_n, unit_vector(nvars, var, -2 * r as i32), &w * rat(sign));
            s.add_term(big_n, zero.clone(), &w * rat(-1 - sign));
        }
    }
    s.scale(&Coeff::new(BigInt::from(-1), factorial(d)))
}

/// The per-root factor `F(x)` in one variable, to degree `xdeg` in `x`.
pub fn genus_factor(qmax: u32, xdeg: usize) -> XSeries {
    genus_factor_in(1, 0, qmax, xdeg)
}

/// The per-root factor for variable `var` among `nvars` y-variables.
pub fn genus_factor_in(nvars: usize, var: usize, qmax: u32, xdeg: usize) -> XSeries {
    let todd = XSeries::from_rational(&todd_coefficients(xdeg), nvars, qmax);
    // y^{1/2} − y^{−1/2} e^{−x}
    let mut mid = Vec::with_capacity(xdeg + 1);
    for i in 0..=xdeg {
        let e = Coeff::new(BigInt::from(if i % 2 == 0 { -1 } else { 1 }), factorial(i as u32));
        let mut c = LaurentSeries::monomial(nvars, qmax, 0, unit_vector(nvars, var, -1), e);
        if i == 0 {
            c = &c + &LaurentSeries::monomial(nvars, qmax, 0, unit_vector(nvars, var, 1), rat(1));
        }
        mid.push(c);
    }
    let mut log = vec![LaurentSeries::zero(nvars, qmax)];
    for d in 1..=xdeg as u32 {
        log.push(product_log_coefficient(nvars, var, qmax, d));
    }
    let prod = XSeries { coeffs: log }.exp_nilpotent();
    let unit = theta_unit(nvars, var, qmax);
    let prod = XSeries {
        coeffs: prod.coeffs.iter().map(|c| c * &unit).collect(),
    };
    todd.mul(&XSeries { coeffs: mid }).mul(&prod)
}

// ---------------------------------------------------------------------------
// Symmetric functions in the Chern roots.

/// A symmetric function in `dimc` Chern roots, in the power-sum basis, truncated
/// above total degree `dimc`: `Σ_λ coeff_λ · p_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExpansion {
    pub dim: u32,
    nvars: usize,
    qmax: u32,
    pub terms: BTreeMap<Partition, LaurentSeries>,
}

impl SymmetricExpansion {
    pub fn zero(dim: u32, nvars: usize, qmax: u32) -> Self {
        SymmetricExpansion {
            dim,
            nvars,
            qmax,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: u32, c: LaurentSeries) -> Self {
        let mut s = Self::zero(dim, c.nvars(), c.qmax());
        s.add_term(Partition::default(), c);
        s
    }

    fn add_term(&mut self, p: Partition, c: LaurentSeries) {
        if p.size() > self.dim || c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(p.clone())
            .or_insert_with(|| LaurentSeries::zero(self.nvars, self.qmax));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let qmax = self.qmax.min(other.qmax);
        let mut out = Self::zero(self.dim, self.nvars, qmax);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if p.size() + r.size() > self.dim {
                    continue;
                }
                out.add_term(p.union(r), a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentSeries) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.qmax.min(c.qmax()));
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a * c);
        }
        out
    }

    /// `exp` of an expansion without constant term (nilpotent by truncation).
    pub fn exp(&self) -> Self {
        debug_assert!(!self.terms.contains_key(&Partition::default()));
        let one = LaurentSeries::one(self.nvars, self.qmax);
        let mut acc = Self::constant(self.dim, one.clone());
        let mut power = acc.clone();
        for j in 1..=self.dim {
            power = power.mul(self);
            if power.terms.is_empty() {
                break;
            }
            let c = LaurentSeries::constant(self.nvars, self.qmax, Coeff::new(BigInt::one(), factorial(j)));
            acc = acc.add(&power.scale(&c));
        }
        acc
    }

    /// The homogeneous part of total degree `d`.
    pub fn degree_part(&self, d: u32) -> BTreeMap<Partition, LaurentSeries> {
        self.terms
            .iter()
            .filter(|(p, _)| p.size() == d)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }
}

/// The power sum `p_d` as an integer polynomial in the elementary symmetric
/// functions (Chern classes), by Newton's identities.
pub fn power_sum_in_elementary(d: u32) -> BTreeMap<Partition, BigInt> {
    let mut cache: Vec<BTreeMap<Partition, BigInt>> = vec![BTreeMap::new()];
    for n in 1..=d {
        // p_n = Σ_{i=1}^{n−1} (−1)^{i−1} e_i p_{n−i} + (−1)^{n−1} n e_n
        let mut p: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for i in 1..n {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            for (mu, c) in &cache[(n - i) as usize] {
                *p.entry(mu.union(&Partition::new(vec![i]))).or_default() += c * sign;
            }
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        *p.entry(Partition::new(vec![n])).or_default() += BigInt::from(sign * n as i64);
        p.retain(|_, c| !c.is_zero());
        cache.push(p);
    }
    cache.pop().unwrap_or_default()
}

fn poly_mul(a: &BTreeMap<Partition, BigInt>, b: &BTreeMap<Partition, BigInt>) -> BTreeMap<Partition, BigInt> {
    let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (p, x) in a {
        for (r, y) in b {
            *out.entry(p.union(r)).or_default() += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `∫_M p_λ`: the power-sum monomial paired with the Chern numbers of `M`.
pub fn integrate_power_sum(m: &ChernData, lambda: &Partition) -> Result<BigInt> {
    let mut poly: BTreeMap<Partition, BigInt> = [(Partition::default(), BigInt::one())].into();
    for &d in lambda.parts() {
        poly = poly_mul(&poly, &power_sum_in_elementary(d));
    }
    let mut total = BigInt::zero();
    for (mu, c) in poly {
        total += c * m.number(&mu)?;
    }
    Ok(total)
}

fn rational_expansion(dim: u32, nvars: usize, qmax: u32, terms: BTreeMap<Partition, Coeff>) -> SymmetricExpansion {
    let mut s = SymmetricExpansion::zero(dim, nvars, qmax);
    for (p, c) in terms {
        s.add_term(p, LaurentSeries::constant(nvars, qmax, c));
    }
    s
}

/// Elementary symmetric functions `e_0 … e_dim` of `u_j = e^{−x_j}` in the
/// power-sum basis of the `x_j`.
fn elementary_of_exponentials(dim: u32, nvars: usize, qmax: u32) -> Vec<SymmetricExpansion> {
    // P_r(u) = Σ_j e^{−r x_j} = dim + Σ_{d≥1} (−r)^d/d! · p_d
    let power: Vec<SymmetricExpansion> = (0..=dim)
        .map(|r| {
            let mut t = BTreeMap::new();
            t.insert(Partition::default(), rat(dim as i64));
            for d in 1..=dim {
                let num = BigInt::from(-(r as i64)).pow(d);
                t.insert(Partition::new(vec![d]), Coeff::new(num, factorial(d)));
            }
            rational_expansion(dim, nvars, qmax, t)
        })
        .collect();
    let mut e = vec![SymmetricExpansion::constant(dim, LaurentSeries::one(nvars, qmax))];
    for p in 1..=dim as usize {
        // p·e_p = Σ_{i=1}^p (−1)^{i−1} e_{p−i} P_i
        let mut acc = SymmetricExpansion::zero(dim, nvars, qmax);
        for i in 1..=p {
            let sign = if i % 2 == 1 { ratio(1, p as i64) } else { ratio(-1, p as i64) };
            let term = e[p - i].mul(&power[i]);
            acc = acc.add(&term.scale(&LaurentSeries::constant(nvars, qmax, sign)));
        }
        e.push(acc);
    }
    e
}

/// The genus integrand `∏_roots ∏_vars F` as a symmetric expansion.
pub fn genus_integrand(dim: u32, nvars: usize, qmax: u32) -> SymmetricExpansion {
    let todd = todd_log_coefficients(dim as usize);
    let mut log = SymmetricExpansion::zero(dim, nvars, qmax);
    for d in 1..=dim {
        let mut c = LaurentSeries::constant(nvars, qmax, &todd[d as usize] * rat(nvars as i64));
        for var in 0..nvars {
            c = &c + &product_log_coefficient(nvars, var, qmax, d);
        }
        log.add_term(Partition::new(vec![d]), c);
    }
    let mut total = log.exp();

    let e_u = elementary_of_exponentials(dim, nvars, qmax);
    for var in 0..nvars {
        // ∏_j (1 − y⁻¹ u_j) = Σ_p (−y⁻¹)^p e_p(u)
        let mut mid = SymmetricExpansion::zero(dim, nvars, qmax);
        for (p, ep) in e_u.iter().enumerate() {
            let c = if p % 2 == 0 { rat(1) } else { rat(-1) };
            let mono = LaurentSeries::monomial(nvars, qmax, 0, unit_vector(nvars, var, -2 * p as i32), c);
            mid = mid.add(&ep.scale(&mono));
        }
        total = total.mul(&mid);
        // y^{dim/2} · (unit part of a)^dim
        let pref = LaurentSeries::monomial(nvars, qmax, 0, unit_vector(nvars, var, dim as i32), rat(1))
            * theta_unit(nvars, var, qmax).pow(dim);
        total = total.scale(&pref);
    }
    total
}

/// The elliptic genus of `M` with `nvars` y-variables: a weight-0 form whose
/// doubled index is `dimc` in each variable.
pub fn genus_compute(m: &ChernData, nvars: usize, qmax: u32) -> Result<JacobiForm> {
    if nvars < 1 {
        return Err(Error::InvalidArgument("nvars must be at least 1".into()));
    }
    let required = partitions(m.dimc);
    for p in &required {
        m.number(p)?;
    }
    let integrand = genus_integrand(m.dimc, nvars, qmax);
    let mut series = LaurentSeries::zero(nvars, qmax);
    for (lambda, coeff) in integrand.degree_part(m.dimc) {
        let value = integrate_power_sum(m, &lambda)?;
        if !value.is_zero() {
            series = &series + &coeff.scale(&BigRational::from_integer(value));
        }
    }
    JacobiForm::new(0, m.dimc as i32, series)
}

/// `ev_{z=0}` of the genus, checked to be the constant `c_dimc[M]`.
pub fn genus_euler(m: &ChernData, qmax: u32) -> Result<QSeries> {
    let ev = jf_ev_z0(&genus_compute(m, 1, qmax)?);
    let euler = BigRational::from_integer(m.euler()?.clone());
    if !ev.is_constant() || ev.coeff(0) != euler {
        return Err(Error::Inconsistent(format!(
            "ev(z=0) of the genus of {} is {} but the top Chern number is {}",
            m.label, ev.series, euler
        )));
    }
    Ok(ev)
}

/// Convenience: Euler number as an `i64` when it fits.
pub fn euler_i64(q: &QSeries) -> Option<i64> {
    q.coeff(0).to_integer().to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> ChernData {
        ChernData::from_pairs("K3", 2, &[("2", 24), ("1,1", 0)]).unwrap()
    }

    #[test]
    fn partition_parsing_and_enumeration() {
        let p: Partition = "1,2".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1]);
        assert_eq!(p.to_string(), "2,1");
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(0), vec![Partition::default()]);
        assert!("1,0".parse::<Partition>().is_err());
    }

    #[test]
    fn todd_series_to_x2_and_log() {
        let t = todd_coefficients(4);
        assert_eq!(t[..3], [rat(1), ratio(1, 2), ratio(1, 12)]);
        assert_eq!(t[3], rat(0));
        assert_eq!(t[4], ratio(-1, 720));
        let l = todd_log_coefficients(4);
        // x/2 − log(sinh(x/2)/(x/2))
        assert_eq!(l, vec![rat(0), ratio(1, 2), ratio(-1, 24), rat(0), ratio(1, 2880)]);
    }

    #[test]
    fn newton_power_sums() {
        // p_2 = e_1² − 2e_2, p_3 = e_1³ − 3e_1e_2 + 3e_3
        let p2 = power_sum_in_elementary(2);
        assert_eq!(p2[&"1,1".parse().unwrap()], BigInt::from(1));
        assert_eq!(p2[&"2".parse().unwrap()], BigInt::from(-2));
        let p3 = power_sum_in_elementary(3);
        assert_eq!(p3.len(), 3);
        assert_eq!(p3[&"2,1".parse().unwrap()], BigInt::from(-3));
        assert_eq!(p3[&"3".parse().unwrap()], BigInt::from(3));
    }

    #[test]
    fn factor_constant_term_is_a() {
        let f = genus_factor(5, 3);
        assert_eq!(f.coeffs[0], crate::jacobi::jf_generator_a(5).series);
    }

    #[test]
    fn factor_at_q0() {
        // F(x)|_{q=0} = y^{1/2} · x/(1−e^{−x}) · (1 − y^{−1}e^{−x})
        let f = genus_factor(2, 3);
        let t = todd_coefficients(3);
        let e: Vec<Coeff> = (0..4).map(|i| Coeff::new(BigInt::from(if i % 2 == 0 { 1 } else { -1 }), factorial(i))).collect();
        for i in 0..=3usize {
            let at0 = f.coeffs[i].truncate(0);
            // coefficient of y^{1/2}: t_i; of y^{-1/2}: −Σ t_j e_{i−j}
            assert_eq!(at0.coeff(0, &[1]), t[i]);
            let conv: Coeff = (0..=i).map(|j| &t[j] * &e[i - j]).fold(Coeff::zero(), |a, b| a + b);
            assert_eq!(at0.coeff(0, &[-1]), -conv);
        }
    }

    #[test]
    fn product_of_k3_with_point_is_k3() {
        let p = chern_product(&k3(), &ChernData::point()).unwrap();
        assert_eq!(p.numbers, k3().numbers);
    }

    #[test]
    fn k3_squared_chern_numbers() {
        let p = chern_product(&k3(), &k3()).unwrap();
        let get = |s: &str| p.numbers[&s.parse::<Partition>().unwrap()].clone();
        assert_eq!(get("2,2"), BigInt::from(1152));
        assert_eq!(get("4"), BigInt::from(576));
        assert_eq!(get("2,1,1"), BigInt::from(0));
        assert_eq!(get("1,1,1,1"), BigInt::from(0));
        assert_eq!(get("3,1"), BigInt::from(0));
    }

    #[test]
    fn chern_product_is_symmetric() {
        let cp1 = ChernData::from_pairs("CP1", 1, &[("1", 2)]).unwrap();
        let a = chern_product(&k3(), &cp1).unwrap();
        let b = chern_product(&cp1, &k3()).unwrap();
        assert_eq!(a.numbers, b.numbers);
    }

    #[test]
    fn missing_chern_number_is_an_error() {
        let bad = ChernData::from_pairs("bad", 2, &[("2", 24)]).unwrap();
        assert!(matches!(genus_compute(&bad, 1, 2), Err(Error::MissingChernNumber(_))));
        assert!(matches!(genus_compute(&k3(), 0, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn zero_manifold_has_zero_genus() {
        let z = ChernData::from_pairs("zero", 3, &[("3", 0), ("2,1", 0), ("1,1,1", 0)]).unwrap();
        assert!(genus_compute(&z, 1, 3).unwrap().series.is_zero());
        assert!(genus_euler(&z, 3).unwrap().series.is_zero());
    }

    #[test]
    fn k3_is_twice_phi01() {
        use crate::jacobi::{jf_generator, WeakGenerator};
        let g = genus_compute(&k3(), 1, 6).unwrap();
        let phi = jf_generator(WeakGenerator::Phi01, 6).unwrap();
        assert_eq!(g, phi.scale_int(2));
    }

    #[test]
    fn quintic_is_multiple_of_phi032() {
        use crate::jacobi::{jf_generator, WeakGenerator};
        let q = ChernData::from_pairs("quintic", 3, &[("3", -200), ("2,1", 0), ("1,1,1", 0)]).unwrap();
        let g = genus_compute(&q, 1, 5).unwrap();
        let phi = jf_generator(WeakGenerator::Phi032, 5).unwrap();
        assert_eq!(g, phi.scale_int(-100));
    }

    #[test]
    fn k3_euler() {
        let e = genus_euler(&k3(), 4).unwrap();
        assert_eq!(euler_i64(&e), Some(24));
    }

    #[test]
    fn chern_json_round_trip() {
        let text = r#"{"label": "K3", "dimc": 2, "numbers": {"2": 24, "1,1": "0"}}"#;
        let m = ChernData::from_json(text).unwrap();
        assert_eq!(m, k3().tap_label("K3"));
        let back = ChernData::from_json(&m.to_json().to_string()).unwrap();
        assert_eq!(back, m);
        assert!(ChernData::from_json(r#"{"dimc": 2, "numbers": {"3": 1}}"#).is_err());
    }

    impl ChernData {
        fn tap_label(mut self, l: &str) -> Self {
            self.label = l.into();
            self
        }
    }
}
