//! Long exact sequences of two-cell module complexes over a coefficient table.
//!
//! For `C = S^b ∪_α S^t` with `s = t − b` and `α ∈ π_{s−1}`, the cofiber sequence
//! gives, in relative degree `j = d − b`,
//!
//! ```text
//! π_{j−s+1} ─α→ π_j → π_d(C) → π_{j−s} ─α→ π_{j−1}
//! ```
//!
//! so `π_d(C)` is an extension of `ker(α: π_{j−s} → π_{j−1})` by
//! `coker(α: π_{j−s+1} → π_j)`.

mod complex;
mod table;

use std::fmt;

use num_integer::Integer;

pub use complex::{Attach, Cell, CellComplex, TwoCell};
pub use table::{CyclicGen, Element, GradedRingTable};

use crate::error::{Error, Result};
use crate::lattice::{self, AbelianGroup, Matrix};
use crate::order::Order;

/// `π_d` of a two-cell complex, up to the extension the sequence leaves open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiberGroup {
    pub degree: i64,
    /// Image of the bottom cell.
    pub cokernel: AbelianGroup,
    /// Contribution of the top cell.
    pub kernel: AbelianGroup,
    /// `None` when the extension is not determined.
    pub group: Option<AbelianGroup>,
}

impl CofiberGroup {
    pub fn order(&self) -> Order {
        self.cokernel.order().mul(self.kernel.order())
    }

    pub fn is_ambiguous(&self) -> bool {
        self.group.is_none()
    }
}

impl fmt::Display for CofiberGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.group {
            Some(g) => write!(f, "{g}"),
            None => write!(
                f,
                "extension of {} by {} (order {})",
                self.kernel,
                self.cokernel,
                self.order()
            ),
        }
    }
}

/// The matrix of `x ↦ α·x` from `π_src` to `π_{src+|α|}`, with both orders lists.
fn mult_matrix(table: &GradedRingTable, alpha: &Element, src: i64) -> Result<(Vec<u64>, Vec<u64>, Matrix)> {
    let a = table.orders(src)?;
    let tgt = src + alpha.degree;
    let b = table.orders(tgt)?;
    let mut f: Matrix = vec![vec![0; a.len()]; b.len()];
    for i in 0..a.len() {
        let mut basis = vec![0; a.len()];
        basis[i] = 1;
        let img = table.mul(alpha, &table.element(src, basis)?)?;
        for (row, c) in f.iter_mut().zip(&img.coeffs) {
            row[i] = *c as i128;
        }
    }
    Ok((a, b, f))
}

fn with_relations(f: &Matrix, b: &[u64]) -> Matrix {
    f.iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..b.len()).map(|c| if c == r { b[r] as i128 } else { 0 }));
            row
        })
        .collect()
}

fn coker(a: &[u64], b: &[u64], f: &Matrix) -> Result<AbelianGroup> {
    AbelianGroup::cokernel(&with_relations(f, b), b.len(), a.len() + b.len())
}

fn ker(a: &[u64], b: &[u64], f: &Matrix) -> Result<AbelianGroup> {
    let m = a.len();
    if m == 0 {
        return Ok(AbelianGroup::trivial());
    }
    // K = {x ∈ ℤᵐ : Fx ∈ im diag(b)}, then ker = K / diag(a)ℤᵐ.
    let g = with_relations(f, b);
    let kvecs = lattice::kernel_basis(&g, b.len(), m + b.len())?;
    let kmat: Matrix = (0..m).map(|i| kvecs.iter().map(|v| v[i]).collect()).collect();
    let s = lattice::smith(&kmat, m, kvecs.len())?;
    let basis: Vec<Vec<i128>> = (0..s.rank())
        .map(|j| (0..m).map(|i| (0..kvecs.len()).map(|l| kmat[i][l] * s.v[l][j]).sum()).collect())
        .collect();
    let bmat: Matrix = (0..m).map(|i| basis.iter().map(|v| v[i]).collect()).collect();
    let mut rel: Matrix = vec![Vec::new(); s.rank()];
    for (i, &o) in a.iter().enumerate() {
        if o == 0 {
            continue;
        }
        let mut target = vec![0i128; m];
        target[i] = o as i128;
        let c = lattice::solve(&bmat, m, s.rank(), &target)?.ok_or_else(|| {
            Error::InconsistentTable("multiplication map is not well defined on torsion".into())
        })?;
        for (row, x) in rel.iter_mut().zip(c) {
            row.push(x);
        }
    }
    let cols = rel.first().map_or(0, Vec::len);
    AbelianGroup::cokernel(&rel, s.rank(), cols)
}

/// `π_d` of a two-cell complex.
pub fn cofiber_homotopy(cplx: &CellComplex, table: &GradedRingTable, d: i64) -> Result<CofiberGroup> {
    let tc = cplx.two_cell(table)?;
    let s = tc.top - tc.bottom;
    let j = d - tc.bottom;
    let (a_in, b_in, f_in) = mult_matrix(table, &tc.alpha, j - s + 1)?;
    let (a_out, b_out, f_out) = mult_matrix(table, &tc.alpha, j - s)?;
    let cokernel = coker(&a_in, &b_in, &f_in)?;
    let kernel = ker(&a_out, &b_out, &f_out)?;
    let coprime = match (cokernel.order(), kernel.order()) {
        (Order::Finite(x), Order::Finite(y)) => x.gcd(&y) == 1,
        _ => false,
    };
    let group = if kernel.is_trivial() {
        Some(cokernel.clone())
    } else if cokernel.is_trivial() {
        Some(kernel.clone())
    } else if coprime {
        Some(cokernel.direct_sum(&kernel))
    } else if let Some(orders) = cplx.extensions.get(&d) {
        let g = AbelianGroup::from_cyclic_orders(orders);
        if g.order() != cokernel.order().mul(kernel.order()) {
            return Err(Error::Inconsistent(format!(
                "declared extension {g} in degree {d} has the wrong order"
            )));
        }
        Some(g)
    } else {
        None
    };
    Ok(CofiberGroup {
        degree: d,
        cokernel,
        kernel,
        group,
    })
}

/// Order of the image of `e ∈ π_*` under the bottom-cell inclusion.
pub fn image_order_in_cofiber(e: &Element, cplx: &CellComplex, table: &GradedRingTable) -> Result<Order> {
    let tc = cplx.two_cell(table)?;
    let s = tc.top - tc.bottom;
    let (a, b, f) = mult_matrix(table, &tc.alpha, e.degree - s + 1)?;
    let m = with_relations(&f, &b);
    let v: Vec<i128> = e.coeffs.iter().map(|&c| c as i128).collect();
    lattice::order_in_cokernel(&m, b.len(), a.len() + b.len(), &v)
}

/// Lower bound for `d_SU(k)` from attaching maps of truncated projective spaces.
///
/// Even `k = 2k′`: the order of `k′ν` in `π₃(tmf/η)`. Odd `k = 2k′ + 3`: the
/// order of `(η, cν)` in `π₁ ⊕ π₃`, with `c = k′`, or `2k′` when `4 | k′`.
pub fn dsu_easy(k: u32) -> Result<Order> {
    let table = GradedRingTable::builtin("pi_tmf")?;
    dsu_easy_with(k, &table, &CellComplex::builtin("tmf_eta")?)
}

pub fn dsu_easy_with(k: u32, table: &GradedRingTable, tmf_eta: &CellComplex) -> Result<Order> {
    match k {
        0 => Err(Error::InvalidArgument("k must be positive".into())),
        1 => Ok(Order::Infinite),
        2 => table.element_order(&table.gen_element("nu", 1)?),
        _ if k.is_multiple_of(2) => {
            let kp = (k / 2) as i64;
            image_order_in_cofiber(&table.gen_element("nu", kp)?, tmf_eta, table)
        }
        _ => {
            let kp = ((k - 3) / 2) as i64;
            let c = if kp % 4 == 0 { 2 * kp } else { kp };
            let parts = [table.gen_element("eta", 1)?, table.gen_element("nu", c)?];
            table.direct_sum_order(&parts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmf() -> GradedRingTable {
        GradedRingTable::builtin("pi_tmf").unwrap()
    }

    #[test]
    fn tmf_mod_nu() {
        let c = CellComplex::builtin("tmf_nu").unwrap();
        let t = tmf();
        assert_eq!(cofiber_homotopy(&c, &t, 5).unwrap().group, Some(AbelianGroup::cyclic(2)));
        assert_eq!(cofiber_homotopy(&c, &t, 0).unwrap().group, Some(AbelianGroup::integers()));
        // ν·ν = ν² leaves 2ν ⊂ π₃ in the kernel
        assert_eq!(cofiber_homotopy(&c, &t, 7).unwrap().group, Some(AbelianGroup::cyclic(12)));
        // the top cell contributes 24ℤ ⊂ π₀, the kernel of ν
        assert_eq!(cofiber_homotopy(&c, &t, 4).unwrap().group, Some(AbelianGroup::integers()));
        assert!(cofiber_homotopy(&c, &t, 3).unwrap().group.unwrap().is_trivial());
    }

    #[test]
    fn tmf_mod_eta_degree_3() {
        let c = CellComplex::builtin("tmf_eta").unwrap();
        let t = tmf();
        let g = cofiber_homotopy(&c, &t, 3).unwrap();
        assert_eq!(g.group, Some(AbelianGroup::cyclic(12)));
        for kp in 1..=24 {
            let o = image_order_in_cofiber(&t.gen_element("nu", kp).unwrap(), &c, &t).unwrap();
            assert_eq!(o, Order::Finite(12 / kp.gcd(&12) as u64));
        }
        assert_eq!(image_order_in_cofiber(&t.zero(3).unwrap(), &c, &t).unwrap(), Order::Finite(1));
    }

    #[test]
    fn window_overflow_is_reported() {
        let c = CellComplex::builtin("tmf_nu").unwrap();
        assert!(matches!(cofiber_homotopy(&c, &tmf(), 9), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn ambiguous_extension_is_not_guessed() {
        // S⁰ ∨ S¹ in degree 2: π₂ ⊕ π₁, both ℤ/2
        let c = CellComplex::from_json(r#"{"cells":[{"deg":0},{"deg":1}]}"#).unwrap();
        let t = tmf();
        let g = cofiber_homotopy(&c, &t, 2).unwrap();
        assert!(g.is_ambiguous());
        assert_eq!(g.order(), Order::Finite(4));
        let c = CellComplex::from_json(r#"{"cells":[{"deg":0},{"deg":1}],"extensions":{"2":[2,2]}}"#).unwrap();
        assert_eq!(cofiber_homotopy(&c, &t, 2).unwrap().group.unwrap().to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn dsu_easy_values() {
        assert_eq!(dsu_easy(1).unwrap(), Order::Infinite);
        assert_eq!(dsu_easy(2).unwrap(), Order::Finite(24));
        assert_eq!(dsu_easy(4).unwrap(), Order::Finite(6));
        assert_eq!(dsu_easy(11).unwrap(), Order::Finite(6));
        assert_eq!(dsu_easy(10).unwrap(), Order::Finite(12));
    }

    #[test]
    fn tjf2_matches_tmf_mod_nu() {
        let t = tmf();
        let a = CellComplex::builtin("tjf2").unwrap();
        let b = CellComplex::builtin("tmf_nu").unwrap();
        for d in 0..=8 {
            assert_eq!(cofiber_homotopy(&a, &t, d).unwrap(), cofiber_homotopy(&b, &t, d).unwrap());
        }
    }
}
