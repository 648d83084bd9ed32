//! Integer normal forms and the lattice constructions built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::FinGenAb;
use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// `U·M·V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_0 | d_1 | …`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn min_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            let p = d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

/// Row-style Hermite basis with pivots moving right (upper echelon).
fn hnf_upper(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut clear = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &q);
                if !a[(i, c)].is_zero() {
                    clear = false;
                }
            }
            if clear {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        let p = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&p);
            a.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    a.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Canonical basis of the row span of `m`: lower-triangular echelon form
/// with positive pivots, entries below each pivot reduced into `[0, pivot)`.
///
/// Two matrices span the same lattice iff their Hermite forms are equal.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let rev: Vec<usize> = (0..n).rev().collect();
    let h = hnf_upper(&m.select_cols(&rev));
    let h = h.select_cols(&rev);
    let rrev: Vec<usize> = (0..h.rows()).rev().collect();
    h.select_rows(&rrev)
}

/// Basis of the integer row vectors `x` with `x·M = 0`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.rows()).collect();
    snf.u.select_rows(&idx)
}

/// `ℤⁿ / (row span of relations)` in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Quotient group; `generators` holds one lift in ℤⁿ per component.
    pub group: FinGenAb,
    /// `n × k`: row `j` is the image of `e_j` in component coordinates.
    pub projection: IntMatrix,
}

impl Quotient {
    /// Image of a lattice vector, torsion coordinates reduced into `[0, d)`.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        let raw = self.projection.left_apply(v);
        self.group.reduce(&raw)
    }

    pub fn lifts(&self) -> &IntMatrix {
        self.group
            .generators()
            .expect("quotient always records generator lifts")
    }
}

pub fn lattice_quotient(ambient_rank: usize, relations: &IntMatrix) -> Result<Quotient> {
    if relations.cols() != ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: ambient_rank,
            found: relations.cols(),
        });
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let mut torsion = Vec::new();
    let mut torsion_idx = Vec::new();
    let mut free_idx = Vec::new();
    for i in 0..ambient_rank {
        match diag.get(i) {
            Some(d) if d.is_zero() => free_idx.push(i),
            Some(d) if d.is_one() => {}
            Some(d) => {
                torsion.push(d.clone());
                torsion_idx.push(i);
            }
            None => free_idx.push(i),
        }
    }
    let comps: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    let mut projection = snf.v.select_cols(&comps);
    for (c, d) in torsion.iter().enumerate() {
        for j in 0..ambient_rank {
            projection[(j, c)] = projection[(j, c)].mod_floor(d);
        }
    }
    let v_inv = RatMatrix::from_int(&snf.v)
        .inverse()?
        .to_int()
        .ok_or_else(|| Error::Internal("Smith transform not unimodular".into()))?;
    let lifts = v_inv.select_rows(&comps);
    let group = FinGenAb::new(free_idx.len(), torsion)?.with_generators(lifts);
    Ok(Quotient { group, projection })
}

/// Hermite basis of `{λ ∈ ℤⁿ : C·λ ≡ 0 mod N}`.
pub fn congruence_kernel(c: &IntMatrix, modulus: &BigInt) -> Result<IntMatrix> {
    if !modulus.is_positive() {
        return Err(Error::NonPositiveModulus);
    }
    let (m, n) = (c.rows(), c.cols());
    // x·[Cᵀ; N·I] = 0  ⇔  C·λ = −N·μ  for x = (λ, μ).
    let scaled = IntMatrix::diagonal(&vec![modulus.clone(); m]);
    let stacked = c.transpose().vstack(&scaled)?;
    let ker = left_kernel(&stacked);
    let lam = ker.select_cols(&(0..n).collect::<Vec<_>>());
    let h = hermite_normal_form(&lam);
    if h.rows() != n {
        return Err(Error::Internal(format!(
            "congruence kernel has rank {} in ambient rank {}",
            h.rows(),
            n
        )));
    }
    Ok(h)
}

/// Rows of the inverse transpose: the basis of the dual lattice paired
/// with `basis` by the identity matrix.
pub fn dual_lattice(basis: &IntMatrix) -> Result<RatMatrix> {
    if basis.rows() != basis.cols() {
        return Err(Error::DimensionMismatch {
            expected: basis.cols(),
            found: basis.rows(),
        });
    }
    Ok(RatMatrix::from_int(basis).inverse()?.transpose())
}

/// Coordinates of `v` in the lattice basis `basis` (rows), if integral.
pub fn lattice_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let inv = RatMatrix::from_int(basis).inverse()?;
    let row = RatMatrix::from_rows(
        v.len(),
        vec![v.iter().map(|x| x.clone().into()).collect()],
    )?;
    Ok(row
        .checked_mul(&inv)?
        .to_int()
        .map(|m| m.row(0).to_vec()))
}
