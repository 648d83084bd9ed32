//! Based root data: validation, Weyl groups, coroot systems, duals,
//! fundamental groups and Levi subdata.

mod catalog;
mod invariants;
mod weyl;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, lattice_quotient, IntMatrix, Quotient};

pub use catalog::{catalog, standard_names};
pub use invariants::{datum_invariants, DatumInvariants};
pub use weyl::{coroot_orbit, coroot_system, weyl_group, CorootSystem, WeylGroup};

/// Bounds on the breadth-first closures used for finite-type checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of Weyl group elements.
    pub weyl_elements: u64,
    /// Maximum size of the coroot orbit.
    pub coroot_orbit: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl_elements: 10_000_000,
            coroot_orbit: 100_000,
        }
    }
}

/// A based root datum on `Λ = ℤⁿ`.
///
/// Simple coroots live in `Λ`; simple roots live in the dual lattice and pair
/// with `Λ` through the standard dot product. Row `i` of each matrix is the
/// `i`-th simple (co)root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasedRootDatum {
    rank: usize,
    simple_coroots: IntMatrix,
    simple_roots: IntMatrix,
    labels: Option<Vec<String>>,
}

impl BasedRootDatum {
    /// Checks shapes only; use [`validate_datum`] for the root-datum axioms.
    pub fn new(rank: usize, simple_coroots: IntMatrix, simple_roots: IntMatrix) -> Result<Self> {
        for m in [&simple_coroots, &simple_roots] {
            if m.cols() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: m.cols(),
                });
            }
        }
        if simple_coroots.rows() != simple_roots.rows() {
            return Err(Error::DimensionMismatch {
                expected: simple_coroots.rows(),
                found: simple_roots.rows(),
            });
        }
        Ok(BasedRootDatum {
            rank,
            simple_coroots,
            simple_roots,
            labels: None,
        })
    }

    pub fn torus(rank: usize) -> Self {
        BasedRootDatum {
            rank,
            simple_coroots: IntMatrix::zeros(0, rank),
            simple_roots: IntMatrix::zeros(0, rank),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.num_simple());
        self.labels = Some(labels);
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple coroots (semisimple rank).
    pub fn num_simple(&self) -> usize {
        self.simple_coroots.rows()
    }

    pub fn simple_coroots(&self) -> &IntMatrix {
        &self.simple_coroots
    }

    pub fn simple_roots(&self) -> &IntMatrix {
        &self.simple_roots
    }

    pub fn coroot(&self, i: usize) -> &[BigInt] {
        self.simple_coroots.row(i)
    }

    pub fn root(&self, i: usize) -> &[BigInt] {
        self.simple_roots.row(i)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Direct product: block sum of lattices and simple data.
    pub fn product(&self, other: &BasedRootDatum) -> BasedRootDatum {
        let pad = |m: &IntMatrix, left: usize, right: usize| {
            let rows = (0..m.rows())
                .map(|i| {
                    let mut r = vec![BigInt::zero(); left];
                    r.extend_from_slice(m.row(i));
                    r.extend(std::iter::repeat_n(BigInt::zero(), right));
                    r
                })
                .collect();
            IntMatrix::from_rows(left + m.cols() + right, rows).expect("padded rows")
        };
        let n = self.rank + other.rank;
        let coroots = pad(&self.simple_coroots, 0, other.rank)
            .vstack(&pad(&other.simple_coroots, self.rank, 0))
            .expect("same width");
        let roots = pad(&self.simple_roots, 0, other.rank)
            .vstack(&pad(&other.simple_roots, self.rank, 0))
            .expect("same width");
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            (a, b) => {
                let fill = |l: &Option<Vec<String>>, k: usize, off: usize| {
                    l.clone()
                        .unwrap_or_else(|| (0..k).map(|i| format!("a{}", off + i)).collect())
                };
                let mut l = fill(a, self.num_simple(), 0);
                l.extend(fill(b, other.num_simple(), self.num_simple()));
                Some(l)
            }
        };
        BasedRootDatum {
            rank: n,
            simple_coroots: coroots,
            simple_roots: roots,
            labels,
        }
    }

    /// Simple reflection `λ ↦ λ − ⟨α̌ᵢ, λ⟩ αᵢ` as a matrix on column vectors.
    pub fn reflection(&self, i: usize) -> IntMatrix {
        let n = self.rank;
        let mut s = IntMatrix::identity(n);
        let a = self.coroot(i);
        let c = self.root(i);
        for r in 0..n {
            for k in 0..n {
                let v = &a[r] * &c[k];
                s[(r, k)] -= v;
            }
        }
        s
    }

    /// Applies the `i`-th simple reflection to a vector of `Λ`.
    pub fn reflect(&self, i: usize, v: &[BigInt]) -> Vec<BigInt> {
        let p = dot(self.root(i), v);
        v.iter()
            .zip(self.coroot(i))
            .map(|(x, a)| x - &p * a)
            .collect()
    }

    /// Applies the `i`-th simple reflection to a vector of the dual lattice.
    pub fn reflect_dual(&self, i: usize, v: &[BigInt]) -> Vec<BigInt> {
        let p = dot(v, self.coroot(i));
        v.iter()
            .zip(self.root(i))
            .map(|(x, a)| x - &p * a)
            .collect()
    }
}

impl fmt::Debug for BasedRootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BasedRootDatum(rank {}, coroots {}, roots {})",
            self.rank, self.simple_coroots, self.simple_roots
        )
    }
}

/// One violated root-datum axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DiagonalNotTwo { i: usize, value: BigInt },
    OffDiagonalPositive { i: usize, j: usize, value: BigInt },
    ZeroPatternAsymmetric { i: usize, j: usize },
    CorootsDependent,
    RootsDependent,
    WeylGroupInfinite { cap: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DiagonalNotTwo { i, value } => {
                write!(f, "diagonal Cartan entry a[{i}][{i}] = {value}, expected 2")
            }
            Violation::OffDiagonalPositive { i, j, value } => {
                write!(f, "off-diagonal Cartan entry positive: a[{i}][{j}] = {value}")
            }
            Violation::ZeroPatternAsymmetric { i, j } => write!(
                f,
                "Cartan zero pattern asymmetric: a[{i}][{j}] and a[{j}][{i}] disagree on vanishing"
            ),
            Violation::CorootsDependent => write!(f, "simple coroots are linearly dependent"),
            Violation::RootsDependent => write!(f, "simple roots are linearly dependent"),
            Violation::WeylGroupInfinite { cap } => {
                write!(f, "Weyl group not finite within cap (coroot orbit exceeds {cap})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDatum(self.messages()))
        }
    }
}

/// Checks the based-root-datum axioms. Finiteness of `W` is decided by
/// closing the coroot orbit under simple reflections, bounded by `caps`.
pub fn validate_datum(rd: &BasedRootDatum, caps: Caps) -> ValidationReport {
    let mut violations = Vec::new();
    let a = cartan_matrix(rd);
    let r = rd.num_simple();
    for i in 0..r {
        if a[(i, i)] != BigInt::from(2) {
            violations.push(Violation::DiagonalNotTwo {
                i,
                value: a[(i, i)].clone(),
            });
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if a[(i, j)].is_positive() {
                violations.push(Violation::OffDiagonalPositive {
                    i,
                    j,
                    value: a[(i, j)].clone(),
                });
            }
            if i < j && a[(i, j)].is_zero() != a[(j, i)].is_zero() {
                violations.push(Violation::ZeroPatternAsymmetric { i, j });
            }
        }
    }
    if rd.simple_coroots.rank() < r {
        violations.push(Violation::CorootsDependent);
    }
    if rd.simple_roots.rank() < r {
        violations.push(Violation::RootsDependent);
    }
    let cartan_ok = violations.iter().all(|v| {
        !matches!(
            v,
            Violation::DiagonalNotTwo { .. }
                | Violation::OffDiagonalPositive { .. }
                | Violation::ZeroPatternAsymmetric { .. }
        )
    });
    if cartan_ok {
        if let Err(Error::CapExceeded { .. }) = coroot_orbit(rd, caps.coroot_orbit) {
            violations.push(Violation::WeylGroupInfinite {
                cap: caps.coroot_orbit,
            });
        }
    }
    ValidationReport { violations }
}

/// `a_ij = ⟨α̌ᵢ, αⱼ⟩`.
pub fn cartan_matrix(rd: &BasedRootDatum) -> IntMatrix {
    rd.simple_roots
        .checked_mul(&rd.simple_coroots.transpose())
        .expect("shapes checked at construction")
}

/// Swaps the roles of `Λ` and its dual.
pub fn langlands_dual(rd: &BasedRootDatum) -> BasedRootDatum {
    BasedRootDatum {
        rank: rd.rank,
        simple_coroots: rd.simple_roots.clone(),
        simple_roots: rd.simple_coroots.clone(),
        labels: rd.labels.clone(),
    }
}

/// `π₁,alg = Λ / (span of coroots)`, with the projection from `Λ`.
pub fn fundamental_group(rd: &BasedRootDatum) -> Result<Quotient> {
    lattice_quotient(rd.rank, &rd.simple_coroots)
}

/// Same lattice, simple data restricted to `subset` (sorted, deduplicated).
pub fn levi_datum(rd: &BasedRootDatum, subset: &[usize]) -> Result<BasedRootDatum> {
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&i| i >= rd.num_simple()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: rd.num_simple(),
        });
    }
    Ok(BasedRootDatum {
        rank: rd.rank,
        simple_coroots: rd.simple_coroots.select_rows(&idx),
        simple_roots: rd.simple_roots.select_rows(&idx),
        labels: rd
            .labels
            .as_ref()
            .map(|l| idx.iter().map(|&i| l[i].clone()).collect()),
    })
}
