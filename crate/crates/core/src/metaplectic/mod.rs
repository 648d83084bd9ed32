//! The ♯-construction, the metaplectic dual datum `(H, 𝒢_Z, ε)`, descent
//! checks, Levi compatibility and parity characters.

mod levi;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, dual_lattice, hom_group, AbHom, FinGenAb, IntMatrix, QmodZ, Quotient, RatMatrix};
use crate::quad_form::{
    is_weyl_invariant, radical_lattice, restrict_form, satisfies_restriction, TorsionQuadForm, Verdict,
};
use crate::root_datum::{
    fundamental_group, langlands_dual, validate_datum, weyl_group, BasedRootDatum, Caps,
};

pub use levi::{critical_parity, levi_parity, levi_sharp_compat, LeviCompatReport, LeviParity, ParityCharacter};

/// `G^♯` presented on a Hermite basis of `Λ^♯`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpData {
    /// Rows form a basis of `Λ^♯ ⊆ Λ`; this is the change of basis from
    /// `Λ^♯` coordinates to `Λ`.
    pub lambda_sharp: IntMatrix,
    /// Rows form the dual basis of `Λ̌^♯`, in coordinates of `Λ̌ ⊗ ℚ`.
    pub lambda_check_sharp: RatMatrix,
    /// `ordᵢ`, the order of `q(αᵢ)`.
    pub orders: Vec<BigInt>,
    /// `αᵢ^♯ = ordᵢ·αᵢ` in `Λ` coordinates.
    pub sharp_coroots_ambient: IntMatrix,
    /// The datum of `G^♯` in `Λ^♯` / `Λ̌^♯` coordinates.
    pub sharp_datum: BasedRootDatum,
}

fn row_times(v: &[BigInt], m: &RatMatrix) -> Vec<BigRational> {
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (i, x)| acc + &m[(i, j)] * BigRational::from(x.clone()))
        })
        .collect()
}

fn integral(v: Vec<BigRational>) -> Option<Vec<BigInt>> {
    v.into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

fn require_restricted(rd: &BasedRootDatum, q: &TorsionQuadForm) -> Result<()> {
    if let Verdict::Fails(w) = is_weyl_invariant(q, rd)? {
        return Err(w.into());
    }
    if let Verdict::Fails(w) = satisfies_restriction(q, rd)? {
        return Err(w.into());
    }
    Ok(())
}

pub fn sharp_datum(rd: &BasedRootDatum, q: &TorsionQuadForm) -> Result<SharpData> {
    sharp_datum_with_caps(rd, q, Caps::default())
}

/// Builds `G^♯` from a valid datum and a restricted form, checking every
/// structural invariant of the result.
pub fn sharp_datum_with_caps(rd: &BasedRootDatum, q: &TorsionQuadForm, caps: Caps) -> Result<SharpData> {
    validate_datum(rd, caps).into_result()?;
    require_restricted(rd, q)?;
    let r = rd.rank();
    let basis = radical_lattice(q);
    let to_sharp = RatMatrix::from_int(&basis).inverse()?;
    let dual = dual_lattice(&basis)?;

    let mut orders = Vec::new();
    let mut ambient = Vec::new();
    let mut coroots = Vec::new();
    let mut roots = Vec::new();
    for i in 0..rd.num_simple() {
        let ord = q.eval_q(rd.coroot(i))?.order();
        let a: Vec<BigInt> = rd.coroot(i).iter().map(|x| x * &ord).collect();
        let c = integral(row_times(&a, &to_sharp))
            .ok_or_else(|| Error::Internal(format!("alpha{i}^# = {a:?} is not in the radical")))?;
        let c_dual = integral(
            basis
                .row_vecs()
                .iter()
                .map(|b| BigRational::new(dot(rd.root(i), b), ord.clone()))
                .collect(),
        )
        .ok_or_else(|| Error::Internal(format!("root {i} divided by {ord} is not in the dual radical")))?;
        if dot(&c, &c_dual) != BigInt::from(2) {
            return Err(Error::Internal(format!("sharp pairing of index {i} is not 2")));
        }
        orders.push(ord);
        ambient.push(a);
        coroots.push(c);
        roots.push(c_dual);
    }
    let sharp = BasedRootDatum::new(r, IntMatrix::from_rows(r, coroots)?, IntMatrix::from_rows(r, roots)?)?;
    let sharp = match rd.labels() {
        Some(l) => sharp.with_labels(l.to_vec()),
        None => sharp,
    };
    let report = validate_datum(&sharp, caps);
    if !report.is_valid() {
        return Err(Error::Internal(format!(
            "sharp datum invalid: {}",
            report.messages().join("; ")
        )));
    }
    let w = weyl_group(rd, caps.weyl_elements)?.order();
    let w_sharp = weyl_group(&sharp, caps.weyl_elements)?.order();
    if w != w_sharp {
        return Err(Error::Internal(format!("|W| = {w} but |W^#| = {w_sharp}")));
    }
    Ok(SharpData {
        lambda_sharp: basis,
        lambda_check_sharp: dual,
        orders,
        sharp_coroots_ambient: IntMatrix::from_rows(r, ambient)?,
        sharp_datum: sharp,
    })
}

/// The triple `(H, 𝒢_Z, ε)`. The gerbe is represented by the group its
/// class lives in plus an optional opaque label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaplecticDualDatum {
    pub sharp: SharpData,
    /// Langlands dual of `G^♯`.
    pub h: BasedRootDatum,
    /// `π₁,alg(G^♯)` with its projection from `Λ^♯` coordinates.
    pub pi1_sharp: Quotient,
    /// `ε: π₁,alg(G^♯) → ℤ/2`.
    pub epsilon: AbHom,
    /// Coefficients `ℤ/N` for the gerbe class, `N` the exponent of `q`.
    pub gerbe_coefficients: BigInt,
    /// `Hom(π₁,alg(G^♯), ℤ/N)`, the characters of `Z_H` with values in `μ_N`.
    pub gerbe_class_slot: FinGenAb,
    pub gerbe_label: Option<String>,
}

impl MetaplecticDualDatum {
    pub fn with_gerbe_label(mut self, label: impl Into<String>) -> Self {
        self.gerbe_label = Some(label.into());
        self
    }
}

pub fn metaplectic_dual(rd: &BasedRootDatum, q: &TorsionQuadForm) -> Result<MetaplecticDualDatum> {
    metaplectic_dual_with_caps(rd, q, Caps::default())
}

pub fn metaplectic_dual_with_caps(
    rd: &BasedRootDatum,
    q: &TorsionQuadForm,
    caps: Caps,
) -> Result<MetaplecticDualDatum> {
    let sharp = sharp_datum_with_caps(rd, q, caps)?;
    let basis = &sharp.lambda_sharp;
    for i in 0..basis.rows() {
        for j in i..basis.rows() {
            if !q.eval_b(basis.row(i), basis.row(j))?.is_zero() {
                return Err(Error::Internal(format!("b does not vanish on radical rows {i}, {j}")));
            }
        }
    }
    for i in 0..rd.num_simple() {
        let v = q.eval_q(sharp.sharp_coroots_ambient.row(i))?;
        if !v.is_zero() {
            return Err(Error::Internal(format!("q(alpha{i}^#) = {v}, expected 0")));
        }
    }
    let pi1 = fundamental_group(&sharp.sharp_datum)?;
    let half = QmodZ::frac(1, 2);
    let mut values = Vec::new();
    for lift in pi1.lifts().row_vecs() {
        let v = q.eval_q(&basis.left_apply(&lift))?;
        values.push(if v.is_zero() {
            BigInt::zero()
        } else if v == half {
            BigInt::one()
        } else {
            return Err(Error::Internal(format!("q takes value {v} on the radical")));
        });
    }
    let epsilon = AbHom::new(pi1.group.clone(), 2, values)?;
    let n = q.exponent();
    let slot = hom_group(&pi1.group, &n)?;
    Ok(MetaplecticDualDatum {
        h: langlands_dual(&sharp.sharp_datum),
        sharp,
        pi1_sharp: pi1,
        epsilon,
        gerbe_coefficients: n,
        gerbe_class_slot: slot,
        gerbe_label: None,
    })
}

/// Conditions for descending a gerbe on `Λ₁` with form `q` along a
/// sublattice `Λ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentReport {
    /// `b(Λ₂, Λ₁) = 0`: necessary for a factorization descent.
    pub b_vanishes_on_sub_pairings: bool,
    /// `q|_{Λ₂} = 0`: a descent exists étale-locally.
    pub q_trivial_on_sub: bool,
    /// `b ≡ 0`: the gerbe is multiplicative.
    pub b_trivial_everywhere: bool,
}

pub fn descent_check(q: &TorsionQuadForm, sub: &IntMatrix) -> Result<DescentReport> {
    let restricted = restrict_form(q, sub)?;
    let mut pairs = true;
    'outer: for v in sub.row_vecs() {
        for j in 0..q.rank() {
            let mut e = vec![BigInt::zero(); q.rank()];
            e[j] = BigInt::one();
            if !q.eval_b(&v, &e)?.is_zero() {
                pairs = false;
                break 'outer;
            }
        }
    }
    let everywhere = (0..q.rank()).all(|i| (i..q.rank()).all(|j| q.basis_pairing(i, j).is_zero()));
    Ok(DescentReport {
        b_vanishes_on_sub_pairings: pairs,
        q_trivial_on_sub: restricted.is_zero(),
        b_trivial_everywhere: everywhere,
    })
}
