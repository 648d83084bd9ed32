//! Cohomology of `B(G)` with `ℤ/n` coefficients and the homotopy groups of
//! the space of metaplectic data over a complete curve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{ext_group, hermite_normal_form, hom_group, lattice_quotient, FinGenAb, IntMatrix, RatMatrix};
use crate::quad_form::{restricted_forms, EnumOptions, RestrictedForms, TorsionQuadForm};
use crate::root_datum::{fundamental_group, BasedRootDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveModel {
    pub genus: u32,
    pub complete: bool,
}

impl CurveModel {
    pub fn complete(genus: u32) -> Self {
        CurveModel {
            genus,
            complete: true,
        }
    }
}

/// `Hⁱ(B(G), ℤ/n)`; degree 4 also lists its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BgCohomology {
    pub degree: u32,
    pub group: FinGenAb,
    pub elements: Option<Vec<TorsionQuadForm>>,
}

/// Invariant factors of the subgroup of `(ℤ/n)^m` spanned by `generators`.
fn subgroup_structure(generators: &[Vec<i64>], n: i64, m: usize) -> Result<FinGenAb> {
    let mut rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for i in 0..m {
        let mut e = vec![BigInt::zero(); m];
        e[i] = BigInt::from(n);
        rows.push(e);
    }
    let basis = hermite_normal_form(&IntMatrix::from_rows(m, rows)?);
    // The subgroup is L / nℤ^m; in coordinates of the basis of L, nℤ^m is
    // spanned by the rows of n·B⁻¹.
    let inv = RatMatrix::from_int(&basis).inverse()?;
    let mut rel = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let x = &inv[(i, j)] * BigRational::from(BigInt::from(n));
            if !x.is_integer() {
                return Err(Error::Internal("n·B⁻¹ is not integral".into()));
            }
            rel[(i, j)] = x.to_integer();
        }
    }
    Ok(lattice_quotient(m, &rel)?.group)
}

/// `H⁴(B(G), ℤ/n) = Quad(Λ, ℤ/n)^W_restr` as an abstract group.
pub fn h4_group(forms: &RestrictedForms) -> Result<FinGenAb> {
    let m = forms.elements.first().map_or(0, Vec::len);
    let g = subgroup_structure(&forms.generators, forms.modulus, m)?;
    if g.order() != Some(BigInt::from(forms.len())) {
        return Err(Error::Internal(format!(
            "group structure {g} disagrees with {} enumerated forms",
            forms.len()
        )));
    }
    Ok(g)
}

pub fn bg_cohomology(rd: &BasedRootDatum, n: i64, degree: u32, opts: EnumOptions) -> Result<BgCohomology> {
    if n < 1 {
        return Err(Error::NonPositiveModulus);
    }
    let nb = BigInt::from(n);
    let (group, elements) = match degree {
        1 => (FinGenAb::trivial(), None),
        2 => (hom_group(&fundamental_group(rd)?.group, &nb)?, None),
        3 => (ext_group(&fundamental_group(rd)?.group, &nb)?, None),
        4 => {
            let forms = restricted_forms(rd, n, opts)?;
            (h4_group(&forms)?, Some(forms.forms()))
        }
        d => return Err(Error::InvalidDegree(d)),
    };
    Ok(BgCohomology {
        degree,
        group,
        elements,
    })
}

/// Homotopy groups of the space of metaplectic data for `G` with `ℤ/n`
/// coefficients over a complete curve of genus `g`. With
/// `B = Hom(π₁,alg(G), ℤ/n)`: `π₀ = Quad^W_restr × B`, `π₁ = B^{2g}`,
/// `π₂ = B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub modulus: i64,
    pub genus: u32,
    pub pi0_quad_count: BigInt,
    pub pi0_quad_group: FinGenAb,
    pub pi0_gerbe_group: FinGenAb,
    pub pi1_group: FinGenAb,
    pub pi2_group: FinGenAb,
    pub pi0_order: BigInt,
    pub pi1_order: BigInt,
    pub pi2_order: BigInt,
    /// `Ext¹(π₁,alg(G), ℤ/n)`.
    pub h3_group: FinGenAb,
    /// Set when `ℤ/n` is not divisible and `π₁,alg(G)` has torsion, so the
    /// formulas above (derived for divisible coefficients) may need the
    /// `Ext¹` correction.
    pub divisibility_caveat: bool,
}

pub fn parameter_census(
    rd: &BasedRootDatum,
    n: i64,
    curve: CurveModel,
    opts: EnumOptions,
) -> Result<CensusReport> {
    if !curve.complete {
        return Err(Error::IncompleteCurve);
    }
    if n < 1 {
        return Err(Error::NonPositiveModulus);
    }
    let nb = BigInt::from(n);
    let pi1_alg = fundamental_group(rd)?.group;
    let b = hom_group(&pi1_alg, &nb)?;
    let forms = restricted_forms(rd, n, opts)?;
    let quad_group = h4_group(&forms)?;
    let quad_count = BigInt::from(forms.len());
    let b_order = b.order().expect("Hom into a finite group is finite");
    let pi1 = b.power(2 * curve.genus as usize);
    Ok(CensusReport {
        modulus: n,
        genus: curve.genus,
        pi0_order: &quad_count * &b_order,
        pi0_quad_count: quad_count,
        pi0_quad_group: quad_group,
        pi0_gerbe_group: b.clone(),
        pi1_order: pi1.order().unwrap_or_else(BigInt::one),
        pi1_group: pi1,
        pi2_order: b_order,
        pi2_group: b,
        h3_group: ext_group(&pi1_alg, &nb)?,
        divisibility_caveat: n > 1 && !pi1_alg.torsion().is_empty(),
    })
}
