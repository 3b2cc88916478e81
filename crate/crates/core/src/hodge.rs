//! Hodge-number constraints on hyperkähler manifolds from the elliptic genus.
//!
//! For an irreducible hyperkähler manifold of complex dimension `n = 2k` the
//! genus is a weight-0 form of index `k`, hence a combination of weight-0
//! monomials. The `q⁰` layer is `Σ_p (−1)^p χ^p y^{p − k}` with
//! `χ^p = Σ_q (−1)^q h^{p,q}`, which ties the monomial coefficients to Hodge
//! numbers, and `ev_{z=0}` ties them to the Euler number.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{jf_weight0_monomials, monomial_ev, Exponents, JacobiForm, WeakBasis};
use crate::lattice::{self, Matrix};
use crate::series::{rat, Coeff, LaurentSeries};

/// `constant + Σ coeff · unknown`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AffineExpr {
    pub constant: Coeff,
    pub terms: BTreeMap<String, Coeff>,
}

impl AffineExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff) -> Self {
        AffineExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, rat(1))
    }

    pub fn term(name: &str, c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(name, c);
        e
    }

    fn add_term(&mut self, name: &str, c: Coeff) {
        let entry = self.terms.entry(name.to_string()).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn add(&self, other: &AffineExpr) -> AffineExpr {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (n, c) in &other.terms {
            out.add_term(n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AffineExpr) -> AffineExpr {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> AffineExpr {
        if c.is_zero() {
            return Self::zero();
        }
        AffineExpr {
            constant: &self.constant * c,
            terms: self.terms.iter().map(|(n, v)| (n.clone(), v * c)).collect(),
        }
    }

    pub fn coefficient(&self, name: &str) -> Coeff {
        self.terms.get(name).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    /// Value at an assignment; `None` if an unknown is unassigned.
    pub fn eval(&self, values: &BTreeMap<String, Coeff>) -> Option<Coeff> {
        let mut acc = self.constant.clone();
        for (n, c) in &self.terms {
            acc += c * values.get(n)?;
        }
        Some(acc)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, c: &Coeff, name: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    let (num, den) = (a.numer(), a.denom());
    let n = if num.is_one() && !name.is_empty() { String::new() } else { num.to_string() };
    write!(f, "{n}{name}")?;
    if !den.is_one() {
        write!(f, "/{den}")?;
    }
    Ok(())
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in &self.terms {
            write_coeff_term(f, c, n, first)?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            write_coeff_term(f, &self.constant, "", first)?;
        }
        Ok(())
    }
}

/// `lhs = rhs` with `lhs` a single unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: String,
    pub rhs: AffineExpr,
}

impl Relation {
    /// The relation as an expression that vanishes.
    pub fn as_expr(&self) -> AffineExpr {
        AffineExpr::var(&self.lhs).sub(&self.rhs)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// A genus ansatz: weight-0 monomials of index `k` with affine coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    pub k: u32,
    pub terms: Vec<(Exponents, AffineExpr)>,
}

fn check_k(k: u32) -> Result<()> {
    if k == 2 || k == 3 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("only k = 2 and k = 3 are supported, got {k}")))
    }
}

/// `φ₀,₁^k` carries `k + 1` (from `h^{0,q}`), middle monomials are free
/// unknowns `A, B, …`, and the last monomial is fixed by `ev_{z=0} = E`.
pub fn hk_ansatz(k: u32) -> Result<Ansatz> {
    check_k(k)?;
    let mut monos = jf_weight0_monomials(2 * k);
    monos.sort_unstable_by(|a, b| b.cmp(a));
    let leading: Exponents = [k, 0, 0, 0];
    if monos.first() != Some(&leading) || monos.len() < 2 {
        return Err(Error::Inconsistent("unexpected weight-0 monomial basis".into()));
    }
    let mut terms = vec![(leading, AffineExpr::constant(rat(k as i64 + 1)))];
    let mut ev = AffineExpr::constant(rat(k as i64 + 1) * Coeff::from_integer(monomial_ev(leading).into()));
    for (i, &m) in monos[1..monos.len() - 1].iter().enumerate() {
        let name = ((b'A' + i as u8) as char).to_string();
        let c = AffineExpr::var(&name);
        ev = ev.add(&c.scale(&Coeff::from_integer(monomial_ev(m).into())));
        terms.push((m, c));
    }
    let last = *monos.last().expect("at least two monomials");
    let ev_last = Coeff::from_integer(monomial_ev(last).into());
    let coeff = AffineExpr::var("E").sub(&ev).scale(&(Coeff::one() / ev_last));
    terms.push((last, coeff));
    Ok(Ansatz { k, terms })
}

impl Ansatz {
    /// The coefficient of `qⁿ y^{r2/2}` as an affine expression.
    pub fn coefficient(&self, basis: &WeakBasis, n: u32, r2: i32) -> Result<AffineExpr> {
        let mut acc = AffineExpr::zero();
        for (m, c) in &self.terms {
            let v = basis.monomial(*m)?.series.coeff(n, &[r2]);
            acc = acc.add(&c.scale(&v));
        }
        Ok(acc)
    }

    /// The form obtained by substituting values for the unknowns.
    pub fn evaluate(&self, values: &BTreeMap<String, Coeff>, qmax: u32) -> Result<JacobiForm> {
        let basis = WeakBasis::new(qmax)?;
        let mut series = LaurentSeries::zero(1, qmax);
        for (m, c) in &self.terms {
            let v = c
                .eval(values)
                .ok_or_else(|| Error::InvalidArgument(format!("unassigned unknown in {c}")))?;
            series = &series + &basis.monomial(*m)?.series.scale(&v);
        }
        JacobiForm::new(0, 2 * self.k as i32, series)
    }

    pub fn unknowns(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .iter()
            .flat_map(|(_, c)| c.terms.keys().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Name of `h^{p,q}` up to the hyperkähler symmetries, or its fixed value.
enum Hodge {
    Unknown(String),
    Fixed(i64),
}

fn hodge(n: u32, p: u32, q: u32) -> Hodge {
    let a = p.min(n - p);
    let b = q.min(n - q);
    let (a, b) = (a.min(b), a.max(b));
    if a == 0 {
        Hodge::Fixed(i64::from(b % 2 == 0))
    } else {
        Hodge::Unknown(format!("h{a}{b}"))
    }
}

fn hodge_expr(n: u32, p: u32, q: u32) -> AffineExpr {
    match hodge(n, p, q) {
        Hodge::Unknown(name) => AffineExpr::var(&name),
        Hodge::Fixed(v) => AffineExpr::constant(rat(v)),
    }
}

fn sign(e: u32) -> Coeff {
    if e.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// `b_m = Σ_{p+q=m} h^{p,q}`.
pub fn betti(k: u32, m: u32) -> AffineExpr {
    let n = 2 * k;
    (0..=m.min(n))
        .filter(|p| m - p <= n)
        .fold(AffineExpr::zero(), |acc, p| acc.add(&hodge_expr(n, p, m - p)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    pub expr: AffineExpr,
}

/// Linear equations (`expr = 0`) and congruences (`expr ∈ m·ℤ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSystem {
    pub k: u32,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
    pub parity: Vec<(String, AffineExpr, u64)>,
    pub integrality: Vec<AffineExpr>,
}

fn rank(rows: &[Vec<Coeff>]) -> usize {
    rref(rows.to_vec(), usize::MAX).len()
}

/// Reduced row echelon form; pivots are searched in column order, and only
/// among the first `limit` columns if given (others may still be nonzero).
fn rref(mut rows: Vec<Vec<Coeff>>, limit: usize) -> Vec<Vec<Coeff>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols.min(limit) {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Coeff::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

impl HodgeSystem {
    fn row(&self, e: &AffineExpr, order: &[String]) -> Vec<Coeff> {
        let mut v: Vec<Coeff> = order.iter().map(|n| e.coefficient(n)).collect();
        v.push(e.constant.clone());
        v
    }

    /// Whether `expr = 0` follows from the equations over ℚ.
    pub fn implies(&self, expr: &AffineExpr) -> bool {
        let order = &self.unknowns;
        let mut rows: Vec<Vec<Coeff>> = self.equations.iter().map(|e| self.row(&e.expr, order)).collect();
        let r = rank(&rows);
        rows.push(self.row(expr, order));
        rank(&rows) == r
    }

    pub fn is_consistent(&self) -> bool {
        let n = self.unknowns.len();
        let rows: Vec<Vec<Coeff>> = self.equations.iter().map(|e| self.row(&e.expr, &self.unknowns)).collect();
        rref(rows, usize::MAX).iter().all(|r| r[..n].iter().any(|x| !x.is_zero()))
    }

    /// Equations remaining after eliminating `vars`, each solved for its
    /// leading unknown (Hodge numbers from the top of the diamond first).
    pub fn eliminate(&self, vars: &[&str]) -> Vec<Relation> {
        let mut order: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut rest: Vec<String> = self.unknowns.iter().filter(|u| !vars.contains(&u.as_str())).cloned().collect();
        rest.sort_by(|a, b| {
            let ha = a.starts_with('h');
            let hb = b.starts_with('h');
            hb.cmp(&ha).then(b.cmp(a))
        });
        order.extend(rest);
        let rows: Vec<Vec<Coeff>> = self.equations.iter().map(|e| self.row(&e.expr, &order)).collect();
        let reduced = rref(rows, order.len());
        reduced
            .into_iter()
            .filter(|row| vars.iter().enumerate().all(|(c, _)| row[c].is_zero()))
            .filter_map(|row| {
                let pivot = row[..order.len()].iter().position(|x| !x.is_zero())?;
                let mut rhs = AffineExpr::constant(-row[order.len()].clone());
                for (j, name) in order.iter().enumerate() {
                    if j != pivot && !row[j].is_zero() {
                        rhs = rhs.add(&AffineExpr::term(name, -row[j].clone()));
                    }
                }
                Some(Relation {
                    lhs: order[pivot].clone(),
                    rhs,
                })
            })
            .collect()
    }

    /// The relations displayed for each `k`: `E` eliminated for `k = 2`,
    /// `A` for `k = 3`.
    pub fn relations(&self) -> Vec<Relation> {
        match self.k {
            2 => self.eliminate(&["E"]),
            _ => self.eliminate(&["A"]),
        }
    }

    pub fn satisfied_by(&self, values: &BTreeMap<String, Coeff>) -> Option<bool> {
        for e in &self.equations {
            if !e.expr.eval(values)?.is_zero() {
                return Some(false);
            }
        }
        Some(true)
    }

    /// gcd of all Euler numbers in integer solutions, with or without the
    /// parity constraints.
    pub fn euler_divisor(&self, with_parity: bool) -> Result<u64> {
        let mut congruences: Vec<(AffineExpr, u64)> = self.integrality.iter().map(|e| (e.clone(), 1)).collect();
        if with_parity {
            congruences.extend(self.parity.iter().map(|(_, e, m)| (e.clone(), *m)));
        }
        let nu = self.unknowns.len();
        let ncols = nu + congruences.len();
        let mut m: Matrix = Vec::new();
        let mut rhs: Vec<i128> = Vec::new();
        let to_i128 = |c: &Coeff| -> Result<i128> {
            c.to_integer().to_i128().ok_or(Error::Overflow("Hodge lattice"))
        };
        let mut push = |e: &AffineExpr, slack: Option<(usize, u64)>| -> Result<()> {
            let l = Coeff::from_integer(e.denominator_lcm());
            let s = e.scale(&l);
            let mut row: Vec<i128> = self.unknowns.iter().map(|u| to_i128(&s.coefficient(u))).collect::<Result<_>>()?;
            row.resize(ncols, 0);
            if let Some((i, modulus)) = slack {
                row[nu + i] = -to_i128(&(l * rat(modulus as i64)))?;
            }
            m.push(row);
            rhs.push(-to_i128(&s.constant)?);
            Ok(())
        };
        for e in &self.equations {
            push(&e.expr, None)?;
        }
        for (i, (e, modulus)) in congruences.iter().enumerate() {
            push(e, Some((i, *modulus)))?;
        }
        let rows = m.len();
        let x0 = lattice::solve(&m, rows, ncols, &rhs)?
            .ok_or_else(|| Error::Infeasible(format!("no integer solution for k = {}", self.k)))?;
        let e_idx = self
            .unknowns
            .iter()
            .position(|u| u == "E")
            .ok_or_else(|| Error::Inconsistent("system has no Euler unknown".into()))?;
        let mut g = x0[e_idx].unsigned_abs();
        for v in lattice::kernel_basis(&m, rows, ncols)? {
            g = g.gcd(&v[e_idx].unsigned_abs());
        }
        if g == 0 {
            return Err(Error::Infeasible("the Euler number is forced to vanish".into()));
        }
        u64::try_from(g).map_err(|_| Error::Overflow("Hodge lattice"))
    }
}

/// Matches the `q⁰` layer of the ansatz against `χ^p`, `p = 1 … k`, and adds
/// `E = Σ (−1)^{p+q} h^{p,q}`.
pub fn hk_match(k: u32, qmax: u32) -> Result<HodgeSystem> {
    check_k(k)?;
    let ansatz = hk_ansatz(k)?;
    let basis = WeakBasis::new(qmax.max(1))?;
    let n = 2 * k;
    let mut unknowns: Vec<String> = Vec::new();
    for p in 1..=k {
        for q in p..=k {
            if let Hodge::Unknown(name) = hodge(n, p, q) {
                unknowns.push(name);
            }
        }
    }
    unknowns.dedup();
    unknowns.push("E".into());
    unknowns.extend(ansatz.unknowns().into_iter().filter(|u| u != "E"));

    let mut equations = Vec::new();
    for p in 0..=k {
        // coefficient of y^{p−k}: (−1)^p χ^p = Σ_q (−1)^{p+q} h^{p,q}
        let chi = (0..=n).fold(AffineExpr::zero(), |acc, q| acc.add(&hodge_expr(n, p, q).scale(&sign(p + q))));
        let c = ansatz.coefficient(&basis, 0, 2 * p as i32 - n as i32)?;
        let expr = chi.sub(&c);
        if !expr.is_zero() {
            equations.push(Equation {
                label: format!("c{p}"),
                expr,
            });
        }
    }
    let euler = (0..=n)
        .flat_map(|p| (0..=n).map(move |q| (p, q)))
        .fold(AffineExpr::zero(), |acc, (p, q)| acc.add(&hodge_expr(n, p, q).scale(&sign(p + q))));
    equations.push(Equation {
        label: "euler".into(),
        expr: AffineExpr::var("E").sub(&euler),
    });

    let mut parity = vec![("b3".to_string(), betti(k, 3), 4)];
    if k == 3 {
        parity.push(("b5".to_string(), betti(k, 5), 4));
    }
    let integrality = ansatz
        .terms
        .iter()
        .map(|(_, c)| c.clone())
        .filter(|c| !c.terms.is_empty())
        .collect();
    let system = HodgeSystem {
        k,
        unknowns,
        equations,
        parity,
        integrality,
    };
    if !system.is_consistent() {
        return Err(Error::Infeasible(format!("Hodge system for k = {k} has no rational solution")));
    }
    Ok(system)
}

/// The forced divisor of the Euler number, using the parity of odd Betti numbers.
pub fn hk_divisibility(k: u32) -> Result<u64> {
    hk_divisibility_with(k, true)
}

pub fn hk_divisibility_with(k: u32, with_parity: bool) -> Result<u64> {
    hk_match(k, 1)?.euler_divisor(with_parity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    fn parse(terms: &[(&str, Coeff)], c: Coeff) -> AffineExpr {
        terms
            .iter()
            .fold(AffineExpr::constant(c), |acc, (n, v)| acc.add(&AffineExpr::term(n, v.clone())))
    }

    #[test]
    fn ansatz_k2() {
        let a = hk_ansatz(2).unwrap();
        assert_eq!(a.terms.len(), 2);
        assert_eq!(a.terms[0], ([2, 0, 0, 0], AffineExpr::constant(rat(3))));
        assert_eq!(a.terms[1].0, [0, 0, 1, 0]);
        assert_eq!(a.terms[1].1.to_string(), "E/6 - 72");
    }

    #[test]
    fn ansatz_k3() {
        let a = hk_ansatz(3).unwrap();
        assert_eq!(a.terms[1], ([1, 0, 1, 0], AffineExpr::var("A")));
        assert_eq!(a.terms[2].0, [0, 2, 0, 0]);
        assert_eq!(a.terms[2].1.to_string(), "-18A + E/4 - 1728");
        assert!(hk_ansatz(4).is_err());
    }

    #[test]
    fn ansatz_evaluates_to_euler() {
        let a = hk_ansatz(3).unwrap();
        let vals: BTreeMap<String, Coeff> = [("E".to_string(), rat(1000)), ("A".to_string(), rat(7))].into();
        let f = a.evaluate(&vals, 2).unwrap();
        let ev = crate::jacobi::jf_ev_z0(&f);
        assert!(ev.is_constant());
        assert_eq!(ev.coeff(0), rat(1000));
    }

    #[test]
    fn k2_equations() {
        let s = hk_match(2, 1).unwrap();
        // 2h11 − h12 = E/6 − 12
        let c1 = parse(&[("h11", rat(2)), ("h12", rat(-1)), ("E", ratio(-1, 6))], rat(12));
        assert!(s.implies(&c1));
        let rel = s.relations();
        assert!(rel.iter().any(|r| r.to_string() == "h22 = 8h11 - 2h12 + 64"));
    }

    #[test]
    fn k3_relation() {
        let s = hk_match(3, 1).unwrap();
        let e = parse(
            &[
                ("h12", rat(-6)),
                ("h22", rat(6)),
                ("h23", rat(-7)),
                ("h13", rat(4)),
                ("h33", rat(2)),
                ("E", ratio(-7, 4)),
            ],
            rat(-14),
        );
        assert!(s.implies(&e));
        assert!(!s.implies(&AffineExpr::var("h11")));
    }

    #[test]
    fn k3_squared_hilbert_scheme_is_a_witness() {
        let s = hk_match(2, 1).unwrap();
        let vals: BTreeMap<String, Coeff> = [("h11", 21), ("h12", 0), ("h22", 232), ("E", 324)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), rat(v)))
            .collect();
        assert_eq!(s.satisfied_by(&vals), Some(true));
        let wrong: BTreeMap<String, Coeff> = [("h11", 23), ("h12", 0), ("h22", 276), ("E", 324)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), rat(v)))
            .collect();
        assert_eq!(s.satisfied_by(&wrong), Some(false));
    }

    #[test]
    fn divisors() {
        assert_eq!(hk_divisibility(2).unwrap(), 12);
        assert_eq!(hk_divisibility(3).unwrap(), 8);
        assert_eq!(hk_divisibility_with(2, false).unwrap(), 6);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti(2, 3).to_string(), "2h12");
        assert_eq!(betti(3, 5).to_string(), "2h12 + 2h23");
        assert_eq!(betti(2, 0).to_string(), "1");
    }
}
