//! The genus pipeline against a slower route: expand `∏_j F(x_j)` in monomial
//! symmetric functions, convert to elementary ones by solving a linear system
//! over explicit root polynomials, then pair with Chern numbers.

use std::collections::BTreeMap;

use genera::genus::{
    chern_product, genus_compute, genus_euler, genus_factor, partitions, ChernData, Partition, XSeries,
};
use genera::jacobi::jf_mul;
use genera::series::LaurentSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

type Poly = BTreeMap<Vec<u32>, BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *out.entry(k).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn elementary(r: u32, n: usize) -> Poly {
    let mut out = Poly::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() == r {
            let k = (0..n).map(|i| (mask >> i) & 1).collect();
            out.insert(k, BigInt::one());
        }
    }
    out
}

fn padded(p: &Partition, n: usize) -> Vec<u32> {
    let mut v = p.parts().to_vec();
    v.resize(n, 0);
    v
}

/// `∫ m_λ` for every `λ ⊢ d`, as rational combinations of Chern numbers.
fn monomial_integrals(m: &ChernData) -> BTreeMap<Partition, BigRational> {
    let d = m.dimc as usize;
    let parts = partitions(m.dimc);
    let n = parts.len();
    // a[μ][λ]: coefficient of m_λ in e_μ
    let a: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|mu| {
            let e = mu
                .parts()
                .iter()
                .fold(Poly::from([(vec![0; d], BigInt::one())]), |acc, &r| poly_mul(&acc, &elementary(r, d)));
            parts
                .iter()
                .map(|l| BigRational::from_integer(e.get(&padded(l, d)).cloned().unwrap_or_default()))
                .collect()
        })
        .collect();
    let mut rhs: Vec<BigRational> = parts
        .iter()
        .map(|mu| BigRational::from_integer(m.number(mu).unwrap().clone()))
        .collect();
    // solve aᵀ · v = rhs, where v_λ = ∫ m_λ
    let mut t: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !t[r][col].is_zero()).expect("e and m bases are related invertibly");
        t.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !t[r][col].is_zero() {
                let f = &t[r][col] / &t[col][col];
                for c in 0..n {
                    let v = &f * &t[col][c];
                    t[r][c] -= v;
                }
                let v = &f * &rhs[col];
                rhs[r] -= v;
            }
        }
    }
    parts
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, &rhs[i] / &t[i][i]))
        .collect()
}

fn oracle(m: &ChernData, factor: &XSeries) -> LaurentSeries {
    let d = m.dimc as usize;
    let g0 = &factor.coeffs[0];
    let nv = g0.nvars();
    let mut acc = LaurentSeries::zero(nv, g0.qmax());
    for (lambda, integral) in monomial_integrals(m) {
        if integral.is_zero() {
            continue;
        }
        let mut c = g0.pow((d - lambda.len()) as u32);
        for &p in lambda.parts() {
            c = &c * &factor.coeffs[p as usize];
        }
        acc = &acc + &c.scale(&integral);
    }
    acc
}

fn chern(dimc: u32, values: &[i64]) -> ChernData {
    let numbers = partitions(dimc).into_iter().zip(values).map(|(p, v)| (p, BigInt::from(*v))).collect();
    ChernData::new("random", dimc, numbers).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_chern_numbers(dimc in 1u32..=4, values in prop::collection::vec(-30i64..30, 5)) {
        let m = chern(dimc, &values);
        let q = 3;
        let fast = genus_compute(&m, 1, q).unwrap();
        prop_assert_eq!(fast.series, oracle(&m, &genus_factor(q, dimc as usize)));
    }
}

#[test]
fn fixtures_match_the_oracle() {
    for name in ["k3", "quintic", "cp1"] {
        let m = ChernData::builtin(name).unwrap();
        let q = 6;
        assert_eq!(
            genus_compute(&m, 1, q).unwrap().series,
            oracle(&m, &genus_factor(q, m.dimc as usize)),
            "{name}"
        );
    }
}

#[test]
fn two_variables_on_the_diagonal() {
    let k3 = ChernData::builtin("k3").unwrap();
    let q = 4;
    let g = genus_compute(&k3, 2, q).unwrap();
    assert_eq!((g.index2, g.series.nvars()), (2, 2));
    let diag = g.series.map_exponents(1, |k| vec![k[0] + k[1]]).unwrap();
    let f = genus_factor(q, 2);
    assert_eq!(diag, oracle(&k3, &f.mul(&f)));
}

#[test]
fn multiplicativity() {
    let q = 4;
    let k3 = ChernData::builtin("k3").unwrap();
    let cp1 = ChernData::builtin("cp1").unwrap();
    let lhs = genus_compute(&chern_product(&cp1, &k3).unwrap(), 1, q).unwrap();
    let rhs = jf_mul(&genus_compute(&cp1, 1, q).unwrap(), &genus_compute(&k3, 1, q).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let pt = genus_compute(&ChernData::point(), 1, q).unwrap();
    assert_eq!(jf_mul(&pt, &lhs).unwrap(), lhs);
}

#[test]
fn euler_specialisation_is_the_top_chern_number() {
    for name in ["k3", "quintic", "cp1"] {
        let m = ChernData::builtin(name).unwrap();
        let ev = genus_euler(&m, 6).unwrap();
        assert!(ev.is_constant());
        assert_eq!(ev.coeff(0), BigRational::from_integer(m.euler().unwrap().clone()));
    }
}
