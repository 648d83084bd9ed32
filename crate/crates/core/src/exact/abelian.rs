use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lattice::smith_normal_form;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with
/// `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
///
/// Component order is torsion first, then free. Equality compares the
/// isomorphism type only; recorded generators are ignored.
#[derive(Clone)]
pub struct FinGenAb {
    free_rank: usize,
    torsion: Vec<BigInt>,
    generators: Option<IntMatrix>,
}

impl FinGenAb {
    /// Validates an invariant-factor presentation.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::Internal(format!("invariant factor {d} < 2")));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::Internal(format!(
                    "invariant factors {} and {d} do not divide",
                    torsion[i - 1]
                )));
            }
        }
        Ok(FinGenAb {
            free_rank,
            torsion,
            generators: None,
        })
    }

    pub fn trivial() -> Self {
        FinGenAb {
            free_rank: 0,
            torsion: Vec::new(),
            generators: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        FinGenAb {
            free_rank: rank,
            torsion: Vec::new(),
            generators: None,
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let d = order.into();
        Self::from_cyclic_factors(0, &[d])
    }

    /// `ℤ^r ⊕ ⊕ ℤ/cᵢ` for arbitrary orders `cᵢ ≥ 0` (0 meaning ℤ),
    /// rewritten into invariant-factor form.
    pub fn from_cyclic_factors(free_rank: usize, orders: &[BigInt]) -> Self {
        let snf = smith_normal_form(&IntMatrix::diagonal(orders));
        let mut free = free_rank;
        let mut torsion = Vec::new();
        for d in snf.diagonal() {
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        FinGenAb {
            free_rank: free,
            torsion,
            generators: None,
        }
    }

    pub fn with_generators(mut self, generators: IntMatrix) -> Self {
        assert_eq!(generators.rows(), self.num_components());
        self.generators = Some(generators);
        self
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generators(&self) -> Option<&IntMatrix> {
        self.generators.as_ref()
    }

    pub fn num_components(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of component `i`; `None` for a free component.
    pub fn component_order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    /// Reduces component coordinates into canonical range.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &FinGenAb) -> FinGenAb {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &orders)
    }

    pub fn power(&self, k: usize) -> FinGenAb {
        (0..k).fold(FinGenAb::trivial(), |acc, _| acc.direct_sum(self))
    }
}

impl PartialEq for FinGenAb {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl Eq for FinGenAb {}

impl PartialOrd for FinGenAb {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinGenAb {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.free_rank, &self.torsion).cmp(&(other.free_rank, &other.torsion))
    }
}

impl fmt::Debug for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `0`, `Z`, `Z^2 + Z/2 + Z/6`, …
impl fmt::Display for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism from a [`FinGenAb`] to `ℤ/m`, given by its values on the
/// source's components.
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    source: FinGenAb,
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl AbHom {
    pub fn new(source: FinGenAb, modulus: impl Into<BigInt>, values: Vec<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if !modulus.is_positive() {
            return Err(Error::NonPositiveModulus);
        }
        if values.len() != source.num_components() {
            return Err(Error::DimensionMismatch {
                expected: source.num_components(),
                found: values.len(),
            });
        }
        let values: Vec<BigInt> = values.iter().map(|v| v.mod_floor(&modulus)).collect();
        for (i, d) in source.torsion().iter().enumerate() {
            if !(d * &values[i]).is_multiple_of(&modulus) {
                return Err(Error::Internal(format!(
                    "value {} on a generator of order {d} is not killed mod {modulus}",
                    values[i]
                )));
            }
        }
        Ok(AbHom {
            source,
            modulus,
            values,
        })
    }

    pub fn zero(source: FinGenAb, modulus: impl Into<BigInt>) -> Self {
        let n = source.num_components();
        Self::new(source, modulus, vec![BigInt::zero(); n]).expect("zero map is valid")
    }

    pub fn source(&self) -> &FinGenAb {
        &self.source
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, coords: &[BigInt]) -> BigInt {
        coords
            .iter()
            .zip(&self.values)
            .fold(BigInt::zero(), |acc, (c, v)| acc + c * v)
            .mod_floor(&self.modulus)
    }

    pub fn values_u64(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> Z/{}: {:?})", self.source, self.modulus, self.values)
    }
}

/// `Hom(G, ℤ/m) = (ℤ/m)^r ⊕ ⊕ ℤ/gcd(dᵢ, m)`.
pub fn hom_group(g: &FinGenAb, m: &BigInt) -> Result<FinGenAb> {
    if !m.is_positive() {
        return Err(Error::NonPositiveModulus);
    }
    let mut orders = vec![m.clone(); g.free_rank()];
    orders.extend(g.torsion().iter().map(|d| d.gcd(m)));
    Ok(FinGenAb::from_cyclic_factors(0, &orders))
}

/// `Ext¹(G, ℤ/m) = ⊕ ℤ/gcd(dᵢ, m)`; free summands contribute nothing.
pub fn ext_group(g: &FinGenAb, m: &BigInt) -> Result<FinGenAb> {
    if !m.is_positive() {
        return Err(Error::NonPositiveModulus);
    }
    let orders: Vec<BigInt> = g.torsion().iter().map(|d| d.gcd(m)).collect();
    Ok(FinGenAb::from_cyclic_factors(0, &orders))
}
