//! Divisibility constants for Euler numbers and verdicts.
//!
//! | kind | meaning |
//! |------|---------|
//! | `d_clas(k)` | gcd of `ev_{z=0}` over integral weight-0 forms of index `k/2` |
//! | `d_su(k)` | order of the attaching element `x(k)` of `TJF` |
//! | `d_sp(k)` | order of `kν`, the attaching element `y(k)` |
//! | `d_ko(k)` | the real analogue for SO-manifolds of dimension `k` |

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::cells::{self, GradedRingTable};
use crate::error::{Error, Result};
use crate::jacobi::jf_dclas_via_basis;
use crate::order::Order;

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidArgument("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn d_clas(k: u32) -> Result<Order> {
    check_k(k)?;
    Ok(match k {
        1 => Order::Infinite,
        _ if k.is_multiple_of(2) => Order::Finite(12 / (k as u64 / 2).gcd(&12)),
        _ => Order::Finite(24 / ((k as u64 - 3) / 2).gcd(&12)),
    })
}

fn two_three(alpha: u32, beta: u32) -> Order {
    Order::Finite(2u64.pow(alpha) * 3u64.pow(beta))
}

fn beta(k: u32) -> u32 {
    u32::from(!k.is_multiple_of(3))
}

/// Exact values `2^α(k) · 3^β(k)`, with `d_su(1) = ∞`.
pub fn d_su(k: u32) -> Result<Order> {
    check_k(k)?;
    if k == 1 {
        return Ok(Order::Infinite);
    }
    let alpha = match k % 8 {
        1 | 2 | 5 => 3,
        6 | 7 => 2,
        3 | 4 => 1,
        _ => 0,
    };
    Ok(two_three(alpha, beta(k)))
}

/// The elementary lower bound `2^α′(k) · 3^β(k)` (with `∞` at 1 and 24 at 2).
pub fn d_su_easy_formula(k: u32) -> Result<Order> {
    check_k(k)?;
    Ok(match k {
        1 => Order::Infinite,
        2 => Order::Finite(24),
        _ => {
            let alpha = match k % 8 {
                1 | 5 => 3,
                2 | 6 | 7 => 2,
                3 | 4 => 1,
                _ => 0,
            };
            two_three(alpha, beta(k))
        }
    })
}

pub fn d_sp(k: u32) -> Result<Order> {
    check_k(k)?;
    Ok(Order::Finite(24 / (k as u64).gcd(&24)))
}

pub fn d_ko(k: u32) -> Result<Order> {
    check_k(k)?;
    Ok(match k % 4 {
        0 => Order::Finite(1),
        2 => Order::Finite(2),
        _ => Order::Infinite,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DivKind {
    Clas,
    Su,
    Sp,
    Ko,
}

impl fmt::Display for DivKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivKind::Clas => "clas",
            DivKind::Su => "su",
            DivKind::Sp => "sp",
            DivKind::Ko => "ko",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivReport {
    pub kind: DivKind,
    pub k: u32,
    pub value: Order,
    pub sources: Vec<(String, Order)>,
    pub agreement: bool,
    /// Elementary bound that must divide `value` (SU only).
    pub lower_bound: Option<Order>,
}

/// Every available computation of one constant, side by side.
pub fn div_report(kind: DivKind, k: u32) -> Result<DivReport> {
    let mut sources = Vec::new();
    let mut lower_bound = None;
    match kind {
        DivKind::Clas => {
            sources.push(("closed form".to_string(), d_clas(k)?));
            sources.push(("weight-0 lattice".to_string(), jf_dclas_via_basis(k)));
        }
        DivKind::Su => {
            sources.push(("table".to_string(), d_su(k)?));
            lower_bound = Some(cells::dsu_easy(k)?);
        }
        DivKind::Sp => {
            sources.push(("closed form".to_string(), d_sp(k)?));
            let t = GradedRingTable::builtin("pi_S")?;
            let order = t.element_order(&t.gen_element("nu", k as i64)?)?;
            sources.push(("order of k nu".to_string(), order));
        }
        DivKind::Ko => sources.push(("closed form".to_string(), d_ko(k)?)),
    }
    let value = sources[0].1;
    let agreement = sources.iter().all(|(_, v)| *v == value);
    Ok(DivReport {
        kind,
        k,
        value,
        sources,
        agreement,
        lower_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    SU,
    Sp,
    SO,
}

impl FromStr for Structure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su" => Ok(Structure::SU),
            "sp" => Ok(Structure::Sp),
            "so" => Ok(Structure::SO),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::SU => "SU",
            Structure::Sp => "Sp",
            Structure::SO => "SO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub structure: Structure,
    pub k: u32,
    pub euler: i64,
    pub constant: Order,
    pub divides: bool,
    pub note: String,
}

/// Whether `euler` is allowed for a manifold with the given structure.
///
/// `k` is the complex dimension for SU, the quaternionic dimension for Sp and
/// the real dimension for SO.
pub fn euler_verdict(structure: Structure, k: u32, euler: i64) -> Result<Verdict> {
    let constant = match structure {
        Structure::SU => d_su(k)?,
        Structure::Sp => d_sp(k)?,
        Structure::SO => d_ko(k)?,
    };
    let divides = constant.divides(euler);
    let note = match (constant, divides) {
        (Order::Infinite, true) => "Euler number must vanish; it does".to_string(),
        (Order::Infinite, false) => format!("Euler number must vanish, got {euler}"),
        (Order::Finite(1), _) => "no constraint".to_string(),
        (Order::Finite(d), true) => format!("{d} divides {euler}"),
        (Order::Finite(d), false) => format!("{d} does not divide {euler}"),
    };
    Ok(Verdict {
        structure,
        k,
        euler,
        constant,
        divides,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: u32,
    pub d_clas: Order,
    pub d_su: Order,
    pub d_su_easy: Order,
    pub d_sp: Order,
    pub d_ko: Order,
}

impl TableRow {
    pub const HEADER: [&'static str; 6] = ["k", "d_clas", "d_su", "d_su_easy", "d_sp", "d_ko"];

    pub fn cells(&self) -> [String; 6] {
        [
            self.k.to_string(),
            self.d_clas.to_plain(),
            self.d_su.to_plain(),
            self.d_su_easy.to_plain(),
            self.d_sp.to_plain(),
            self.d_ko.to_plain(),
        ]
    }
}

pub fn divis_table(kmax: u32) -> Result<Vec<TableRow>> {
    let table = GradedRingTable::builtin("pi_tmf")?;
    let eta = cells::CellComplex::builtin("tmf_eta")?;
    (1..=kmax)
        .map(|k| {
            Ok(TableRow {
                k,
                d_clas: d_clas(k)?,
                d_su: d_su(k)?,
                d_su_easy: cells::dsu_easy_with(k, &table, &eta)?,
                d_sp: d_sp(k)?,
                d_ko: d_ko(k)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> Order {
        Order::Finite(n)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(d_clas(1).unwrap(), Order::Infinite);
        assert_eq!(d_clas(2).unwrap(), f(12));
        assert_eq!(d_clas(7).unwrap(), f(12));
        assert_eq!(d_clas(3).unwrap(), f(2));
        assert_eq!(d_su(2).unwrap(), f(24));
        assert_eq!(d_su(5).unwrap(), f(24));
        assert_eq!(d_su(8).unwrap(), f(3));
        assert_eq!(d_sp(1).unwrap(), f(24));
        assert_eq!(d_sp(6).unwrap(), f(4));
        assert_eq!(d_sp(24).unwrap(), f(1));
        assert_eq!(d_ko(4).unwrap(), f(1));
        assert_eq!(d_ko(2).unwrap(), f(2));
        assert_eq!(d_ko(5).unwrap(), Order::Infinite);
        assert!(d_su(0).is_err());
    }

    #[test]
    fn easy_formula_differs_only_at_2_mod_8() {
        for k in 3..=40 {
            let exact = d_su(k).unwrap().finite().unwrap();
            let easy = d_su_easy_formula(k).unwrap().finite().unwrap();
            assert_eq!(exact % easy, 0);
            let expect = if k % 8 == 2 && k >= 10 { 2 } else { 1 };
            assert_eq!(exact / easy, expect, "k = {k}");
        }
    }

    #[test]
    fn verdicts() {
        let v = euler_verdict(Structure::Sp, 1, 24).unwrap();
        assert!(v.divides);
        assert_eq!(v.constant, f(24));
        assert!(!euler_verdict(Structure::SU, 2, 25).unwrap().divides);
        let s2 = euler_verdict(Structure::SO, 2, 2).unwrap();
        assert!(s2.divides);
        assert_eq!(s2.constant, f(2));
        assert!(euler_verdict(Structure::SU, 1, 0).unwrap().divides);
        assert!(!euler_verdict(Structure::SU, 1, 24).unwrap().divides);
        assert!("SX".parse::<Structure>().is_err());
    }

    #[test]
    fn reports_agree() {
        for k in 1..=12 {
            assert!(div_report(DivKind::Clas, k).unwrap().agreement, "clas {k}");
            assert!(div_report(DivKind::Sp, k).unwrap().agreement, "sp {k}");
        }
        let r = div_report(DivKind::Su, 10).unwrap();
        assert_eq!((r.value, r.lower_bound), (f(24), Some(f(12))));
    }

    #[test]
    fn table_rows() {
        let rows = divis_table(3).unwrap();
        assert_eq!(rows[0].cells(), ["1", "inf", "inf", "inf", "24", "inf"].map(String::from));
        assert_eq!(rows[1].cells(), ["2", "12", "24", "24", "12", "2"].map(String::from));
    }
}
