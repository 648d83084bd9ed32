//! ℚ/ℤ-valued quadratic forms on `Λ = ℤⁿ`.
//!
//! A form is stored by its values on the standard basis: `q(eᵢ)` and
//! `b(eᵢ, eⱼ)` for `i < j`. This encoding is a bijection with all forms.

mod enumerate;

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{congruence_kernel, IntMatrix, QmodZ};
use crate::root_datum::{coroot_system, BasedRootDatum, Caps};

pub use enumerate::{enumerate_restricted, restricted_forms, EnumOptions, RestrictedForms};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionQuadForm {
    rank: usize,
    diag: Vec<QmodZ>,
    /// Upper triangle, row-major: `(0,1), (0,2), …, (1,2), …`.
    offdiag: Vec<QmodZ>,
}

fn tri_index(rank: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < rank);
    i * (2 * rank - i - 1) / 2 + (j - i - 1)
}

fn check_len(expected: usize, v: &[BigInt]) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

impl TorsionQuadForm {
    pub fn zero(rank: usize) -> Self {
        TorsionQuadForm {
            rank,
            diag: vec![QmodZ::zero(); rank],
            offdiag: vec![QmodZ::zero(); rank * rank.saturating_sub(1) / 2],
        }
    }

    /// `diag[i] = q(eᵢ)`; `offdiag` lists `(i, j, b(eᵢ, eⱼ))` with `i < j`,
    /// omitted pairs being zero.
    pub fn new(diag: Vec<QmodZ>, offdiag: &[(usize, usize, QmodZ)]) -> Result<Self> {
        let mut q = Self::zero(diag.len());
        q.diag = diag;
        for (i, j, v) in offdiag {
            q.set_offdiag(*i, *j, v.clone())?;
        }
        Ok(q)
    }

    /// Builds a form from numerators over a common denominator `n`, laid out
    /// as `diag` followed by the upper triangle.
    pub fn from_numerators(rank: usize, n: i64, digits: &[i64]) -> Self {
        let nd = rank * rank.saturating_sub(1) / 2;
        assert_eq!(digits.len(), rank + nd);
        TorsionQuadForm {
            rank,
            diag: digits[..rank].iter().map(|&d| QmodZ::frac(d, n)).collect(),
            offdiag: digits[rank..].iter().map(|&d| QmodZ::frac(d, n)).collect(),
        }
    }

    pub fn set_offdiag(&mut self, i: usize, j: usize, v: QmodZ) -> Result<()> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if j >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.rank,
            });
        }
        if i == j {
            return Err(Error::MalformedSpec(format!(
                "off-diagonal entry with i = j = {i}"
            )));
        }
        let k = tri_index(self.rank, i, j);
        self.offdiag[k] = v;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn diag(&self) -> &[QmodZ] {
        &self.diag
    }

    /// `b(eᵢ, eⱼ)`, including `b(eᵢ, eᵢ) = 2q(eᵢ)`.
    pub fn basis_pairing(&self, i: usize, j: usize) -> QmodZ {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.diag[i].scale_i64(2),
            std::cmp::Ordering::Less => self.offdiag[tri_index(self.rank, i, j)].clone(),
            std::cmp::Ordering::Greater => self.offdiag[tri_index(self.rank, j, i)].clone(),
        }
    }

    /// Nonzero stored off-diagonal entries as `(i, j, b(eᵢ, eⱼ))`, `i < j`.
    pub fn offdiag_entries(&self) -> Vec<(usize, usize, QmodZ)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let v = &self.offdiag[tri_index(self.rank, i, j)];
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().chain(&self.offdiag).all(QmodZ::is_zero)
    }

    /// Least common denominator `N` of the stored values; `N·q = 0`.
    pub fn exponent(&self) -> BigInt {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denominator()))
    }

    pub fn eval_q(&self, lambda: &[BigInt]) -> Result<QmodZ> {
        check_len(self.rank, lambda)?;
        let mut acc = QmodZ::zero();
        for i in 0..self.rank {
            if lambda[i].is_zero() {
                continue;
            }
            acc += self.diag[i].scale(&(&lambda[i] * &lambda[i]));
            for j in i + 1..self.rank {
                if !lambda[j].is_zero() {
                    let v = &self.offdiag[tri_index(self.rank, i, j)];
                    acc += v.scale(&(&lambda[i] * &lambda[j]));
                }
            }
        }
        Ok(acc)
    }

    pub fn eval_b(&self, lambda: &[BigInt], mu: &[BigInt]) -> Result<QmodZ> {
        check_len(self.rank, lambda)?;
        check_len(self.rank, mu)?;
        let mut acc = QmodZ::zero();
        for i in 0..self.rank {
            if lambda[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !mu[j].is_zero() {
                    acc += self.basis_pairing(i, j).scale(&(&lambda[i] * &mu[j]));
                }
            }
        }
        Ok(acc)
    }

    /// Integer Gram matrix of `b` over the denominator [`Self::exponent`].
    pub fn gram_numerators(&self) -> (BigInt, IntMatrix) {
        let n = self.exponent();
        let mut g = IntMatrix::zeros(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                g[(i, j)] = self
                    .basis_pairing(i, j)
                    .numerator_over(&n)
                    .expect("exponent clears every denominator");
            }
        }
        (n, g)
    }
}

impl Add for &TorsionQuadForm {
    type Output = TorsionQuadForm;

    fn add(self, rhs: &TorsionQuadForm) -> TorsionQuadForm {
        assert_eq!(self.rank, rhs.rank, "adding forms of different rank");
        let zip = |a: &[QmodZ], b: &[QmodZ]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        TorsionQuadForm {
            rank: self.rank,
            diag: zip(&self.diag, &rhs.diag),
            offdiag: zip(&self.offdiag, &rhs.offdiag),
        }
    }
}

impl fmt::Debug for TorsionQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[")?;
        for (i, d) in self.diag.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")?;
        for (i, j, v) in self.offdiag_entries() {
            write!(f, " b{i}{j}={v}")?;
        }
        Ok(())
    }
}

/// The even symmetric integral form of a factorization line bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaDatum {
    kappa: IntMatrix,
}

impl ThetaDatum {
    pub fn new(kappa: IntMatrix) -> Result<Self> {
        if kappa.rows() != kappa.cols() {
            return Err(Error::InvalidTheta(format!(
                "{}x{} matrix is not square",
                kappa.rows(),
                kappa.cols()
            )));
        }
        for i in 0..kappa.rows() {
            if kappa[(i, i)].is_odd() {
                return Err(Error::InvalidTheta(format!("diagonal entry {i} is odd")));
            }
            for j in 0..i {
                if kappa[(i, j)] != kappa[(j, i)] {
                    return Err(Error::InvalidTheta(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(ThetaDatum { kappa })
    }

    pub fn kappa(&self) -> &IntMatrix {
        &self.kappa
    }
}

/// `q(λ) = a·κ(λ, λ)/2`.
pub fn line_bundle_form(theta: &ThetaDatum, a: &QmodZ) -> TorsionQuadForm {
    let k = theta.kappa();
    let n = k.rows();
    let mut q = TorsionQuadForm::zero(n);
    for i in 0..n {
        q.diag[i] = a.scale(&(&k[(i, i)] / 2));
        for j in i + 1..n {
            q.offdiag[tri_index(n, i, j)] = a.scale(&k[(i, j)]);
        }
    }
    q
}

/// Outcome of a check that reports a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Simple reflection `sᵢ` changes `q(eⱼ)` (when `j = k`) or `b(eⱼ, e_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceWitness {
    pub generator: usize,
    pub j: usize,
    pub k: usize,
}

impl From<InvarianceWitness> for Error {
    fn from(w: InvarianceWitness) -> Self {
        Error::NotWeylInvariant {
            generator: w.generator,
            j: w.j,
            k: w.k,
        }
    }
}

/// `b(α, e_basis) = lhs` differs from `⟨α̌, e_basis⟩·q(α) = rhs` for the
/// coroot `α` indexed by `coroot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionWitness {
    pub coroot: usize,
    pub basis: usize,
    pub lhs: QmodZ,
    pub rhs: QmodZ,
}

impl From<RestrictionWitness> for Error {
    fn from(w: RestrictionWitness) -> Self {
        Error::RestrictionFailed {
            coroot: w.coroot,
            basis: w.basis,
            lhs: w.lhs.to_string(),
            rhs: w.rhs.to_string(),
        }
    }
}

fn check_rank(q: &TorsionQuadForm, rd: &BasedRootDatum) -> Result<()> {
    if q.rank() != rd.rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.rank(),
            found: q.rank(),
        });
    }
    Ok(())
}

/// Checks `q(sᵢeⱼ) = q(eⱼ)` and `b(sᵢeⱼ, sᵢe_k) = b(eⱼ, e_k)` for every
/// simple reflection and `j < k`.
pub fn is_weyl_invariant(
    q: &TorsionQuadForm,
    rd: &BasedRootDatum,
) -> Result<Verdict<InvarianceWitness>> {
    check_rank(q, rd)?;
    for i in 0..rd.num_simple() {
        let s = rd.reflection(i);
        let cols: Vec<Vec<BigInt>> = (0..rd.rank()).map(|j| s.column(j)).collect();
        for j in 0..rd.rank() {
            if q.eval_q(&cols[j])? != q.diag[j] {
                return Ok(Verdict::Fails(InvarianceWitness { generator: i, j, k: j }));
            }
            for k in j + 1..rd.rank() {
                if q.eval_b(&cols[j], &cols[k])? != q.basis_pairing(j, k) {
                    return Ok(Verdict::Fails(InvarianceWitness { generator: i, j, k }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

fn restriction_on(
    q: &TorsionQuadForm,
    coroots: &[(&[BigInt], &[BigInt])],
) -> Result<Verdict<RestrictionWitness>> {
    for (idx, (alpha, root)) in coroots.iter().enumerate() {
        let qa = q.eval_q(alpha)?;
        for j in 0..q.rank() {
            let mut e = vec![BigInt::zero(); q.rank()];
            e[j] = BigInt::one();
            let lhs = q.eval_b(alpha, &e)?;
            let rhs = qa.scale(&root[j]);
            if lhs != rhs {
                return Ok(Verdict::Fails(RestrictionWitness {
                    coroot: idx,
                    basis: j,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// `b(αᵢ, eⱼ) = ⟨α̌ᵢ, eⱼ⟩·q(αᵢ)` for the simple coroots.
///
/// Requires Weyl invariance, which makes the simple coroots suffice; a
/// non-invariant form is rejected with [`Error::NotWeylInvariant`].
pub fn satisfies_restriction(
    q: &TorsionQuadForm,
    rd: &BasedRootDatum,
) -> Result<Verdict<RestrictionWitness>> {
    if let Verdict::Fails(w) = is_weyl_invariant(q, rd)? {
        return Err(w.into());
    }
    let pairs: Vec<(&[BigInt], &[BigInt])> =
        (0..rd.num_simple()).map(|i| (rd.coroot(i), rd.root(i))).collect();
    restriction_on(q, &pairs)
}

/// The restriction condition on every coroot of `Δ`. Slow; used as an
/// oracle for [`satisfies_restriction`]. Witness indices refer to the
/// sorted coroot list of [`coroot_system`].
pub fn satisfies_restriction_all_coroots(
    q: &TorsionQuadForm,
    rd: &BasedRootDatum,
    caps: Caps,
) -> Result<Verdict<RestrictionWitness>> {
    check_rank(q, rd)?;
    let sys = coroot_system(rd, caps.coroot_orbit)?;
    let pairs: Vec<(&[BigInt], &[BigInt])> = sys
        .coroots
        .iter()
        .zip(&sys.roots)
        .map(|(a, c)| (a.as_slice(), c.as_slice()))
        .collect();
    restriction_on(q, &pairs)
}

/// Convenience: both Weyl invariance and the restriction condition.
pub fn is_restricted(q: &TorsionQuadForm, rd: &BasedRootDatum) -> Result<bool> {
    if !is_weyl_invariant(q, rd)?.holds() {
        return Ok(false);
    }
    Ok(satisfies_restriction(q, rd)?.holds())
}

/// Hermite basis of `Λ^♯ = {λ : b(λ, ·) = 0}`.
pub fn radical_lattice(q: &TorsionQuadForm) -> IntMatrix {
    let (n, g) = q.gram_numerators();
    congruence_kernel(&g, &n).expect("exponent is positive")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplicativity {
    /// `b ≡ 0`; `epsilon[i] ∈ {0, 1}` is `2·q(eᵢ)`.
    Multiplicative { epsilon: Vec<u8> },
    /// A basis pair with `b(eᵢ, eⱼ) ≠ 0`.
    NotMultiplicative { i: usize, j: usize, value: QmodZ },
}

impl Multiplicativity {
    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Multiplicativity::Multiplicative { .. })
    }
}

pub fn classify_multiplicative(q: &TorsionQuadForm) -> Multiplicativity {
    for i in 0..q.rank() {
        for j in i..q.rank() {
            let v = q.basis_pairing(i, j);
            if !v.is_zero() {
                return Multiplicativity::NotMultiplicative { i, j, value: v };
            }
        }
    }
    let half = QmodZ::frac(1, 2);
    let epsilon = q
        .diag()
        .iter()
        .map(|d| {
            if d.is_zero() {
                0
            } else {
                assert_eq!(d, &half, "b = 0 forces q(e) ∈ {{0, 1/2}}");
                1
            }
        })
        .collect();
    Multiplicativity::Multiplicative { epsilon }
}

/// The form `x ↦ q(Σ xᵢvᵢ)` on the coordinates of the sublattice spanned
/// by the rows `vᵢ` of `sub_basis`.
pub fn restrict_form(q: &TorsionQuadForm, sub_basis: &IntMatrix) -> Result<TorsionQuadForm> {
    if sub_basis.cols() != q.rank() {
        return Err(Error::DimensionMismatch {
            expected: q.rank(),
            found: sub_basis.cols(),
        });
    }
    if sub_basis.rank() != sub_basis.rows() {
        return Err(Error::DependentRows);
    }
    let m = sub_basis.rows();
    let mut out = TorsionQuadForm::zero(m);
    for i in 0..m {
        out.diag[i] = q.eval_q(sub_basis.row(i))?;
        for j in i + 1..m {
            out.offdiag[tri_index(m, i, j)] = q.eval_b(sub_basis.row(i), sub_basis.row(j))?;
        }
    }
    Ok(out)
}

/// `q` evaluated on the simple coroots of `rd`.
pub fn coroot_values(q: &TorsionQuadForm, rd: &BasedRootDatum) -> Result<Vec<QmodZ>> {
    (0..rd.num_simple()).map(|i| q.eval_q(rd.coroot(i))).collect()
}

#[cfg(test)]
mod tests;
