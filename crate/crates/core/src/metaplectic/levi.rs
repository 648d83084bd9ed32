use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{require_restricted, sharp_datum_with_caps};
use crate::error::{Error, Result};
use crate::exact::{dot, lattice_quotient, AbHom, Quotient};
use crate::quad_form::{is_restricted, TorsionQuadForm};
use crate::root_datum::{coroot_system, fundamental_group, levi_datum, BasedRootDatum, Caps};

/// Outcome of comparing `M^♯` with the Levi of `G^♯` on the same subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviCompatReport {
    pub subset: Vec<usize>,
    /// `Λ^♯` computed for `M` equals the one computed for `G`.
    pub radical_identical: bool,
    /// Simple data of `M^♯` equal the `subset` rows of `G^♯`'s.
    pub sharp_simple_data_match: bool,
    /// `π₁(M^♯) → π₁(G^♯)` induced by the identity of `Λ^♯` is well defined
    /// and onto.
    pub pi1_surjection: bool,
    /// Images of the generators of `π₁(M^♯)` in `π₁(G^♯)`.
    pub pi1_map: Vec<Vec<BigInt>>,
    pub failures: Vec<String>,
}

impl LeviCompatReport {
    pub fn all_hold(&self) -> bool {
        self.radical_identical && self.sharp_simple_data_match && self.pi1_surjection
    }
}

pub fn levi_sharp_compat(
    rd: &BasedRootDatum,
    q: &TorsionQuadForm,
    subset: &[usize],
) -> Result<LeviCompatReport> {
    let caps = Caps::default();
    require_restricted(rd, q)?;
    let m = levi_datum(rd, subset)?;
    if !is_restricted(q, &m)? {
        return Err(Error::Internal("restricted form fails to restrict to the Levi".into()));
    }
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();

    let g_sharp = sharp_datum_with_caps(rd, q, caps)?;
    let m_sharp = sharp_datum_with_caps(&m, q, caps)?;
    let mut failures = Vec::new();

    let radical_identical = g_sharp.lambda_sharp == m_sharp.lambda_sharp;
    if !radical_identical {
        failures.push(format!(
            "radical differs: G gives {:?}, M gives {:?}",
            g_sharp.lambda_sharp, m_sharp.lambda_sharp
        ));
    }

    let gs = &g_sharp.sharp_datum;
    let ms = &m_sharp.sharp_datum;
    let want_coroots = gs.simple_coroots().select_rows(&idx);
    let want_roots = gs.simple_roots().select_rows(&idx);
    let sharp_simple_data_match =
        ms.simple_coroots() == &want_coroots && ms.simple_roots() == &want_roots;
    if !sharp_simple_data_match {
        failures.push(format!(
            "sharp simple data differ: M has coroots {:?}, roots {:?}; G restricted has {:?}, {:?}",
            ms.simple_coroots(),
            ms.simple_roots(),
            want_coroots,
            want_roots
        ));
    }

    let pm = fundamental_group(ms)?;
    let pg = fundamental_group(gs)?;
    let mut well_defined = true;
    for i in 0..ms.num_simple() {
        let image = pg.project(ms.coroot(i));
        if image.iter().any(|x| !x.is_zero()) {
            well_defined = false;
            failures.push(format!(
                "coroot {:?} of M^# maps to {:?} in pi1(G^#)",
                ms.coroot(i),
                image
            ));
        }
    }
    let pi1_map: Vec<Vec<BigInt>> = pm.lifts().row_vecs().iter().map(|l| pg.project(l)).collect();
    let spanned = pm.lifts().vstack(gs.simple_coroots())?;
    let onto = lattice_quotient(gs.rank(), &spanned)?.group.is_trivial();
    if !onto {
        failures.push(format!("images {pi1_map:?} do not generate pi1(G^#) = {}", pg.group));
    }
    Ok(LeviCompatReport {
        subset: idx,
        radical_identical,
        sharp_simple_data_match,
        pi1_surjection: well_defined && onto,
        pi1_map,
        failures,
    })
}

/// `2ρ̌_{G,M}`, the degree functional it defines, and `ε_P` on
/// `Λ / span{αᵢ : i ∈ S}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviParity {
    pub subset: Vec<usize>,
    pub two_rho_gm: Vec<BigInt>,
    /// `π₁,alg(M) = Λ / span{αᵢ : i ∈ S}`.
    pub quotient: Quotient,
    pub eps_p: AbHom,
}

impl LeviParity {
    /// `d_{G,M}(λ) = ⟨2ρ̌_{G,M}, λ⟩`.
    pub fn degree(&self, lambda: &[BigInt]) -> BigInt {
        dot(&self.two_rho_gm, lambda)
    }

    /// `ε_P` evaluated on the image of `λ`.
    pub fn eps_at(&self, lambda: &[BigInt]) -> BigInt {
        self.eps_p.eval(&self.quotient.project(lambda))
    }
}

fn parity_hom(quotient: &Quotient, functional: &[BigInt]) -> Result<AbHom> {
    let two = BigInt::from(2);
    let values = quotient
        .lifts()
        .row_vecs()
        .iter()
        .map(|l| dot(functional, l).mod_floor(&two))
        .collect();
    AbHom::new(quotient.group.clone(), 2, values)
}

pub fn levi_parity(rd: &BasedRootDatum, subset: &[usize]) -> Result<LeviParity> {
    let caps = Caps::default();
    let m = levi_datum(rd, subset)?;
    let g_rho = coroot_system(rd, caps.coroot_orbit)?.two_rho_check;
    let m_rho = coroot_system(&m, caps.coroot_orbit)?.two_rho_check;
    let two_rho_gm: Vec<BigInt> = g_rho.iter().zip(&m_rho).map(|(a, b)| a - b).collect();
    for i in 0..m.num_simple() {
        let p = dot(&two_rho_gm, m.coroot(i));
        if !p.is_zero() {
            return Err(Error::Internal(format!(
                "<2rho_GM, alpha> = {p} for Levi coroot {:?}",
                m.coroot(i)
            )));
        }
    }
    let quotient = fundamental_group(&m)?;
    let eps_p = parity_hom(&quotient, &two_rho_gm)?;
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    Ok(LeviParity {
        subset: idx,
        two_rho_gm,
        quotient,
        eps_p,
    })
}

/// `λ ↦ ⟨2ρ̌, λ⟩ mod 2` on `π₁,alg(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCharacter {
    pub two_rho_check: Vec<BigInt>,
    pub quotient: Quotient,
    pub character: AbHom,
}

pub fn critical_parity(rd: &BasedRootDatum) -> Result<ParityCharacter> {
    let sys = coroot_system(rd, Caps::default().coroot_orbit)?;
    let quotient = fundamental_group(rd)?;
    let character = parity_hom(&quotient, &sys.two_rho_check)?;
    Ok(ParityCharacter {
        two_rho_check: sys.two_rho_check,
        quotient,
        character,
    })
}
