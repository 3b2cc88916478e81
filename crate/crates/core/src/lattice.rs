//! Smith normal form over `i128` and finitely generated abelian groups.
//!
//! A matrix `M` (n × r) is read as the map `ℤʳ → ℤⁿ`, `x ↦ Mx`. Its Smith form
//! `U·M·V = D` gives the cokernel `ℤⁿ / im M ≅ ⊕ ℤ/dᵢ ⊕ ℤ^{n−rank}` in the
//! coordinates `U·e`, and the kernel as the last `r − rank` columns of `V`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::order::Order;

pub type Matrix = Vec<Vec<i128>>;

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("Smith normal form"))
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `U·M·V = D` with `U`, `V` unimodular and `d₁ | d₂ | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub u: Matrix,
    pub v: Matrix,
    pub diagonal: Vec<i128>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

// row_i ← row_i − q·row_t on `a` (restricted to columns) and the tracker.
fn row_op(a: &mut Matrix, u: &mut Matrix, i: usize, t: usize, q: i128) -> Result<()> {
    for j in 0..a[0].len() {
        a[i][j] = ck(a[i][j].checked_sub(ck(q.checked_mul(a[t][j]))?))?;
    }
    for j in 0..u[0].len() {
        u[i][j] = ck(u[i][j].checked_sub(ck(q.checked_mul(u[t][j]))?))?;
    }
    Ok(())
}

fn col_op(a: &mut Matrix, v: &mut Matrix, j: usize, t: usize, q: i128) -> Result<()> {
    for row in a.iter_mut() {
        row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
    }
    for row in v.iter_mut() {
        row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
    }
    Ok(())
}

pub fn smith(m: &Matrix, rows: usize, cols: usize) -> Result<Smith> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument(format!("matrix is not {rows} x {cols}")));
    }
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();
    if rows == 0 || cols == 0 {
        return Ok(Smith { rows, cols, u, v, diagonal });
    }
    let mut a = m.clone();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = Integer::div_floor(&a[i][t], &p);
            if q != 0 {
                row_op(&mut a, &mut u, i, t, q)?;
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&a[t][j], &p);
            if q != 0 {
                col_op(&mut a, &mut v, j, t, q)?;
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // enforce the divisibility chain
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            row_op(&mut a, &mut u, t, i, -1)?;
            continue;
        }
        if p < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(a[t][t]);
        t += 1;
    }
    Ok(Smith { rows, cols, u, v, diagonal })
}

fn mat_vec(m: &Matrix, x: &[i128]) -> Result<Vec<i128>> {
    m.iter()
        .map(|row| {
            row.iter().zip(x).try_fold(0i128, |acc, (a, b)| {
                ck(acc.checked_add(ck(a.checked_mul(*b))?))
            })
        })
        .collect()
}

/// A ℤ-basis of `{x : Mx = 0}`.
pub fn kernel_basis(m: &Matrix, rows: usize, cols: usize) -> Result<Vec<Vec<i128>>> {
    let s = smith(m, rows, cols)?;
    Ok((s.rank()..cols)
        .map(|j| s.v.iter().map(|row| row[j]).collect())
        .collect())
}

/// One integer solution of `Mx = b`, if any.
pub fn solve(m: &Matrix, rows: usize, cols: usize, b: &[i128]) -> Result<Option<Vec<i128>>> {
    let s = smith(m, rows, cols)?;
    let y = mat_vec(&s.u, b)?;
    let mut z = vec![0i128; cols];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank() {
            if yi % s.diagonal[i] != 0 {
                return Ok(None);
            }
            z[i] = yi / s.diagonal[i];
        } else if *yi != 0 {
            return Ok(None);
        }
    }
    Ok(Some(mat_vec(&s.v, &z)?))
}

/// A finitely generated abelian group, stored by invariant factors
/// `d₁ | d₂ | … ` (each > 1) followed by free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    pub fn integers() -> Self {
        Self::from_cyclic_orders(&[0])
    }

    /// `⊕ ℤ/oᵢ`, with 0 meaning `ℤ`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let m: Matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { orders[i] as i128 } else { 0 }).collect())
            .collect();
        Self::cokernel(&m, n, n).expect("diagonal input cannot overflow")
    }

    /// `ℤⁿ / im M` for an n × r matrix.
    pub fn cokernel(m: &Matrix, rows: usize, cols: usize) -> Result<Self> {
        let s = smith(m, rows, cols)?;
        let torsion = s
            .diagonal
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        Ok(AbelianGroup {
            torsion,
            free_rank: rows - s.rank(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Order {
        if self.free_rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion.iter().product())
        }
    }

    /// Exponent (lcm of element orders).
    pub fn exponent(&self) -> Order {
        if self.free_rank > 0 {
            return Order::Infinite;
        }
        Order::Finite(self.torsion.last().copied().unwrap_or(1))
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        orders.extend(std::iter::repeat_n(0, self.free_rank + other.free_rank));
        Self::from_cyclic_orders(&orders)
    }

    /// Cyclic orders, with 0 for each free summand.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(0, self.free_rank));
        v
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .cyclic_orders()
            .iter()
            .map(|&o| if o == 0 { "Z".to_string() } else { format!("Z/{o}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Order of the class of `e` in `ℤⁿ / im M`.
pub fn order_in_cokernel(m: &Matrix, rows: usize, cols: usize, e: &[i128]) -> Result<Order> {
    let s = smith(m, rows, cols)?;
    let y = mat_vec(&s.u, e)?;
    let mut order = Order::Finite(1);
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank() {
            let d = s.diagonal[i];
            order = order.lcm(Order::Finite((d / yi.gcd(&d)) as u64));
        } else if *yi != 0 {
            return Ok(Order::Infinite);
        }
    }
    Ok(order)
}
