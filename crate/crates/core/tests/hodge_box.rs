use std::collections::BTreeMap;

use genera::hodge::{hk_divisibility_with, hk_match, HodgeSystem};
use genera::series::{rat, Coeff};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

fn is_integer(c: &Coeff) -> bool {
    c.is_integer()
}

/// Euler numbers of integer points with free unknowns in `[-r, r]`, and `E`
/// in `[-48, 48]`.
fn eulers_in_box(s: &HodgeSystem, r: i64, parity: bool) -> Vec<i64> {
    let rels = s.eliminate(&[]);
    let free: Vec<String> = s.unknowns.iter().filter(|u| rels.iter().all(|x| &x.lhs != *u)).cloned().collect();
    let mut out = Vec::new();
    let bound: Vec<i64> = free.iter().map(|u| if u == "E" { 48 } else { r }).collect();
    let mut idx: Vec<i64> = bound.iter().map(|b| -b).collect();
    loop {
        let mut vals: BTreeMap<String, Coeff> = free.iter().cloned().zip(idx.iter().map(|&v| rat(v))).collect();
        for rel in &rels {
            let v = rel.rhs.eval(&vals).unwrap();
            vals.insert(rel.lhs.clone(), v);
        }
        let mut ok = vals.values().all(is_integer)
            && s.integrality.iter().all(|e| is_integer(&e.eval(&vals).unwrap()));
        if parity {
            ok &= s
                .parity
                .iter()
                .all(|(_, e, m)| e.eval(&vals).is_some_and(|v| is_integer(&v) && (v.to_integer() % m).is_zero()));
        }
        if ok {
            assert_eq!(s.satisfied_by(&vals), Some(true));
            out.push(vals["E"].to_integer().to_i64().unwrap());
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] <= bound[i] {
                break;
            }
            idx[i] = -bound[i];
            i += 1;
        }
    }
}

#[test]
fn divisor_is_the_gcd_of_admitted_euler_numbers() {
    for (k, r) in [(2, 3), (3, 2)] {
        let s = hk_match(k, 1).unwrap();
        for parity in [true, false] {
            let d = hk_divisibility_with(k, parity).unwrap() as i64;
            let eulers = eulers_in_box(&s, r, parity);
            assert!(!eulers.is_empty(), "k = {k}");
            assert!(eulers.iter().all(|e| e % d == 0), "k = {k}, parity {parity}");
            let g = eulers.iter().fold(0i64, |a, e| a.gcd(e));
            assert_eq!(g.abs(), d, "k = {k}, parity {parity}: box gcd {g}");
        }
    }
}

#[test]
fn known_diamonds_satisfy_the_system() {
    let s = hk_match(2, 1).unwrap();
    let k3_2: BTreeMap<String, Coeff> =
        [("h11", 21), ("h12", 0), ("h22", 232), ("E", 324)].map(|(n, v)| (n.to_string(), rat(v))).into();
    assert_eq!(s.satisfied_by(&k3_2), Some(true));
    // generalised Kummer of dimension 4
    let kum: BTreeMap<String, Coeff> =
        [("h11", 5), ("h12", 4), ("h22", 96), ("E", 108)].map(|(n, v)| (n.to_string(), rat(v))).into();
    assert_eq!(s.satisfied_by(&kum), Some(true));
    assert!(s.parity.iter().all(|(_, e, m)| (e.eval(&kum).unwrap().to_integer() % m).abs().is_zero()));
}
