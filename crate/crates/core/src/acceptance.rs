//! The end-to-end acceptance suite, shared by the integration tests and the
//! `genera selftest` command.

use std::fmt;

use num_integer::Integer;

use crate::cells::{cofiber_homotopy, dsu_easy, CellComplex, GradedRingTable};
use crate::divis::{d_clas, d_ko, d_sp, d_su, d_su_easy_formula, euler_verdict, Structure};
use crate::error::Result;
use crate::genus::{chern_product, genus_compute, ChernData};
use crate::hodge::{hk_divisibility, hk_divisibility_with, hk_match, AffineExpr};
use crate::jacobi::{
    jf_check_elliptic_law, jf_dclas_via_basis, jf_ev_z0, jf_generator_a, jf_is_even, jf_mul, JacobiForm,
    WeakBasis, WeakGenerator,
};
use crate::lattice::AbelianGroup;
use crate::order::Order;
use crate::series::rat;

pub const QMAX: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 14] = [
    "K3 genus is 2 phi01",
    "quintic genus is -100 phi032",
    "generator evaluations at z = 0",
    "weight-0 ring relation",
    "classical divisibility closed form vs lattice",
    "orders of k nu in pi_S",
    "d_sp(k) = 2 d_clas(2k)",
    "easy SU estimates",
    "pi_5(tmf/nu)",
    "elliptic transformation law",
    "multiplicativity on K3 x K3",
    "evenness of the K3 genus",
    "hyperkaehler relations and divisors",
    "KO divisibility",
];

type Outcome = Result<(bool, String)>;

fn c1() -> Outcome {
    let g = genus_compute(&ChernData::builtin("k3")?, 1, QMAX)?;
    let phi = WeakBasis::new(QMAX)?.get(WeakGenerator::Phi01).scale_int(2);
    Ok((g == phi, format!("{} terms compared to q^{QMAX}", g.series.len())))
}

fn c2() -> Outcome {
    let g = genus_compute(&ChernData::builtin("quintic")?, 1, QMAX)?;
    let phi = WeakBasis::new(QMAX)?.get(WeakGenerator::Phi032).scale_int(-100);
    Ok((g == phi, format!("{} terms compared to q^{QMAX}", g.series.len())))
}

fn c3() -> Outcome {
    let basis = WeakBasis::new(QMAX)?;
    let mut ok = true;
    let mut got = Vec::new();
    for g in WeakGenerator::ALL {
        let ev = jf_ev_z0(basis.get(g));
        ok &= ev.is_constant() && ev.coeff(0) == rat(g.ev_value() as i64);
        got.push(format!("{}={}", g.name(), ev.coeff(0)));
    }
    Ok((ok, got.join(", ")))
}

/// `a(tz)/a(z)` from the product expansion of `a`.
fn theta_quotient(t: u32, qmax: u32) -> Result<JacobiForm> {
    let a = jf_generator_a(qmax).series;
    let num = a.subst_y_scale(0, t)?;
    JacobiForm::new(0, t as i32 * t as i32 - 1, num.div_exact(&a)?)
}

fn c4() -> Outcome {
    let basis = WeakBasis::new(QMAX)?;
    let phi04 = theta_quotient(3, QMAX)?;
    let rel = phi04
        .scale_int(4)
        .sub(&jf_mul(basis.get(WeakGenerator::Phi01), &basis.get(WeakGenerator::Phi032).pow(2))?)?
        .add(&basis.get(WeakGenerator::Phi02).pow(2))?;
    Ok((
        rel.series.is_zero() && phi04 == *basis.get(WeakGenerator::Phi04),
        format!("residual terms: {}, phi04 = a(3z)/a(z)", rel.series.len()),
    ))
}

fn c5() -> Outcome {
    let bad: Vec<u32> = (1..=12).filter(|&k| d_clas(k).ok() != Some(jf_dclas_via_basis(k))).collect();
    Ok((bad.is_empty(), format!("k = 1..12, mismatches: {bad:?}")))
}

fn c6() -> Outcome {
    let t = GradedRingTable::builtin("pi_S")?;
    let mut bad = Vec::new();
    for k in 1..=48i64 {
        let o = t.element_order(&t.gen_element("nu", k)?)?;
        if o != Order::Finite(24 / k.gcd(&24) as u64) {
            bad.push(k);
        }
    }
    Ok((bad.is_empty(), format!("k = 1..48, mismatches: {bad:?}")))
}

fn c7() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=24 {
        let sp = d_sp(k)?;
        let clas = d_clas(2 * k)?;
        if sp != Order::Finite(2).mul(clas) {
            bad.push(format!("k={k}: d_sp {sp}, d_clas(2k) {clas}, lattice {}", jf_dclas_via_basis(2 * k)));
        }
    }
    Ok((bad.is_empty(), format!("k = 1..24, mismatches: [{}]", bad.join("; "))))
}

fn c8() -> Outcome {
    let mut problems = Vec::new();
    let mut strict = Vec::new();
    for k in 2..=24 {
        let easy = dsu_easy(k)?;
        let exact = d_su(k)?;
        if easy != d_su_easy_formula(k)? {
            problems.push(format!("k={k}: cells {easy} vs formula {}", d_su_easy_formula(k)?));
        }
        if !easy.divides_order(exact) {
            problems.push(format!("k={k}: {easy} does not divide {exact}"));
        }
        if easy != exact {
            if Order::Finite(2).mul(easy) != exact {
                problems.push(format!("k={k}: ratio is not 2"));
            }
            strict.push(k);
        }
    }
    let expected: Vec<u32> = (2..=24).filter(|k| k % 8 == 2 && *k >= 10).collect();
    if strict != expected {
        problems.push(format!("strict cases {strict:?}, expected {expected:?}"));
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("k = 2..24, off by 2 at {strict:?}")
    } else {
        problems.join("; ")
    };
    Ok((ok, detail))
}

fn c9() -> Outcome {
    let g = cofiber_homotopy(&CellComplex::builtin("tmf_nu")?, &GradedRingTable::builtin("pi_tmf")?, 5)?;
    Ok((g.group == Some(AbelianGroup::cyclic(2)), format!("pi_5 = {g}")))
}

fn c10() -> Outcome {
    let basis = WeakBasis::new(QMAX)?;
    let forms = [
        ("a", jf_generator_a(QMAX)),
        ("phi01", basis.get(WeakGenerator::Phi01).clone()),
        ("K3", genus_compute(&ChernData::builtin("k3")?, 1, QMAX)?),
        ("quintic", genus_compute(&ChernData::builtin("quintic")?, 1, QMAX)?),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, f) in &forms {
        for lambda in [1, -1] {
            let r = jf_check_elliptic_law(f, lambda)?;
            ok &= r.passed() && r.checked.len() >= 5;
            parts.push(format!("{name}({lambda:+}): {}/{}", r.checked.len() - r.violations.len(), r.checked.len()));
        }
    }
    Ok((ok, parts.join(", ")))
}

fn c11() -> Outcome {
    let q = 5;
    let k3 = ChernData::builtin("k3")?;
    let lhs = genus_compute(&chern_product(&k3, &k3)?, 1, q)?;
    let g = genus_compute(&k3, 1, q)?;
    let rhs = jf_mul(&g, &g)?;
    Ok((lhs == rhs, format!("compared to q^{q}")))
}

fn c12() -> Outcome {
    let g = genus_compute(&ChernData::builtin("k3")?, 1, QMAX)?;
    let even = jf_is_even(&g)?;
    Ok((even, format!("c(n, r) = c(n, -r): {even}")))
}

fn c13() -> Outcome {
    let s = hk_match(2, 1)?;
    let target = AffineExpr::var("h22")
        .sub(&AffineExpr::constant(rat(64)))
        .sub(&AffineExpr::term("h11", rat(8)))
        .add(&AffineExpr::term("h12", rat(2)));
    let derived = s.implies(&target) && s.relations().iter().any(|r| r.as_expr() == target);
    let d2 = hk_divisibility(2)?;
    let d3 = hk_divisibility(3)?;
    let d2n = hk_divisibility_with(2, false)?;
    Ok((
        derived && (d2, d3, d2n) == (12, 8, 6),
        format!("h22 = 64 + 8h11 - 2h12 derived: {derived}; divisors {d2}, {d3}, {d2n} (no parity)"),
    ))
}

fn c14() -> Outcome {
    let expected = [Order::Finite(1), Order::Infinite, Order::Finite(2), Order::Infinite];
    let mut ok = true;
    for k in 1..=16u32 {
        ok &= d_ko(k)? == expected[(k % 4) as usize];
    }
    let v = euler_verdict(Structure::SO, 2, 2)?;
    ok &= v.divides;
    Ok((ok, format!("k = 1..16 by residue; S^2 verdict: {}", v.note)))
}

/// Runs one criterion, 1 through 14.
pub fn run(id: u32) -> Criterion {
    let f: fn() -> Outcome = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        12 => c12,
        13 => c13,
        14 => c14,
        _ => {
            return Criterion {
                id,
                title: "unknown",
                passed: false,
                detail: format!("no criterion {id}"),
            }
        }
    };
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Criterion {
        id,
        title: TITLES[id as usize - 1],
        passed,
        detail,
    }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=14).map(run).collect()
}
