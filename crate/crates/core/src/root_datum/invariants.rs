use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{cartan_matrix, fundamental_group, langlands_dual, levi_datum, BasedRootDatum};
use crate::error::Result;
use crate::exact::{lattice_quotient, left_kernel, FinGenAb, IntMatrix};

/// Isomorphism invariants of a based root datum.
///
/// Equal data have equal records. The converse is not guaranteed in general,
/// but the record separates all catalog data of rank at most 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumInvariants {
    pub rank: usize,
    pub semisimple_rank: usize,
    /// Cartan matrix in a canonical simple-index order.
    pub cartan_class: IntMatrix,
    /// `Λ / coroot lattice`.
    pub pi1: FinGenAb,
    /// `Λ̌ / root lattice`, i.e. `π₁` of the dual datum.
    pub dual_pi1: FinGenAb,
    /// `Λ / (coroot lattice + Λ ∩ roots^⊥)`: how the derived part meets the center.
    pub central_gluing: FinGenAb,
    /// The same quotient for the dual datum.
    pub dual_central_gluing: FinGenAb,
    /// Sorted `(Cartan class, π₁, dual π₁)` over the Levi subdata on every
    /// subset of simple indices. Left empty above [`LEVI_PROFILE_MAX`] simple roots.
    pub levi_profile: Vec<(IntMatrix, FinGenAb, FinGenAb)>,
}

pub const LEVI_PROFILE_MAX: usize = 10;

fn levi_profile(rd: &BasedRootDatum) -> Result<Vec<(IntMatrix, FinGenAb, FinGenAb)>> {
    let r = rd.num_simple();
    if r > LEVI_PROFILE_MAX {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(1 << r);
    for mask in 0u32..(1 << r) {
        let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let m = levi_datum(rd, &subset)?;
        out.push((
            canonical_cartan(&cartan_matrix(&m)),
            fundamental_group(&m)?.group,
            fundamental_group(&langlands_dual(&m))?.group,
        ));
    }
    out.sort();
    Ok(out)
}

fn central_gluing(rd: &BasedRootDatum) -> Result<FinGenAb> {
    let annihilator = left_kernel(&rd.simple_roots().transpose());
    let rel = rd.simple_coroots().vstack(&annihilator)?;
    Ok(lattice_quotient(rd.rank(), &rel)?.group)
}

pub fn datum_invariants(rd: &BasedRootDatum) -> Result<DatumInvariants> {
    let dual = langlands_dual(rd);
    Ok(DatumInvariants {
        rank: rd.rank(),
        semisimple_rank: rd.num_simple(),
        cartan_class: canonical_cartan(&cartan_matrix(rd)),
        pi1: fundamental_group(rd)?.group,
        dual_pi1: fundamental_group(&dual)?.group,
        central_gluing: central_gluing(rd)?,
        dual_central_gluing: central_gluing(&dual)?,
        levi_profile: levi_profile(rd)?,
    })
}

/// Encoding of `a` under the vertex order `ord`, built so that a prefix of
/// the order determines a prefix of the encoding.
fn encode(a: &IntMatrix, ord: &[usize]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(ord.len() * ord.len());
    for (t, &v) in ord.iter().enumerate() {
        out.push(a[(v, v)].clone());
        for &u in &ord[..t] {
            out.push(a[(v, u)].clone());
            out.push(a[(u, v)].clone());
        }
    }
    out
}

/// Minimum encoding over all connected vertex orders of one component.
/// The set of connected orders is invariant under relabeling, so the
/// minimum is a canonical form.
fn best_order(a: &IntMatrix, comp: &[usize]) -> Vec<usize> {
    fn rec(
        a: &IntMatrix,
        comp: &[usize],
        ord: &mut Vec<usize>,
        best: &mut Option<(Vec<BigInt>, Vec<usize>)>,
    ) {
        if let Some((enc, _)) = best {
            let cur = encode(a, ord);
            if cur.as_slice() > &enc[..cur.len()] {
                return;
            }
        }
        if ord.len() == comp.len() {
            let enc = encode(a, ord);
            if best.as_ref().is_none_or(|(b, _)| &enc < b) {
                *best = Some((enc, ord.clone()));
            }
            return;
        }
        for &v in comp {
            if ord.contains(&v) {
                continue;
            }
            let attached = ord.is_empty() || ord.iter().any(|&u| !a[(u, v)].is_zero());
            if attached {
                ord.push(v);
                rec(a, comp, ord, best);
                ord.pop();
            }
        }
    }
    let mut best = None;
    rec(a, comp, &mut Vec::new(), &mut best);
    best.map(|(_, o)| o).unwrap_or_default()
}

fn canonical_cartan(a: &IntMatrix) -> IntMatrix {
    let r = a.rows();
    let mut unvisited: BTreeSet<usize> = (0..r).collect();
    let mut blocks: Vec<IntMatrix> = Vec::new();
    while let Some(&start) = unvisited.iter().next() {
        let mut comp = vec![start];
        unvisited.remove(&start);
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            let next: Vec<usize> = unvisited
                .iter()
                .copied()
                .filter(|&u| !a[(u, v)].is_zero())
                .collect();
            for u in next {
                unvisited.remove(&u);
                comp.push(u);
            }
            k += 1;
        }
        let ord = best_order(a, &comp);
        blocks.push(a.select_rows(&ord).select_cols(&ord));
    }
    blocks.sort_by(|x, y| (x.rows(), x).cmp(&(y.rows(), y)));
    blocks
        .iter()
        .fold(IntMatrix::zeros(0, 0), |acc, b| acc.block_diag(b))
}
