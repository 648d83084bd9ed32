//! Named root data.
//!
//! Bases used (`Λ` is always `ℤⁿ`, roots pair with it by the dot product):
//!
//! * `SLk`: `Λ` is the coroot lattice, simple coroots are `eᵢ`, simple roots
//!   are the rows of the type `A_{k-1}` Cartan matrix.
//! * `PGLk`: simple roots are `eᵢ`, simple coroots are the columns of the
//!   Cartan matrix.
//! * `GLk`: `Λ = ℤᵏ`, simple coroots and roots both `eᵢ − eᵢ₊₁`.
//! * `Sp2k`: `Λ = ℤᵏ`, coroots `eᵢ − eᵢ₊₁, e_k`; roots `eᵢ − eᵢ₊₁, 2e_k`.
//! * `SO(2k+1)`: coroots `eᵢ − eᵢ₊₁, 2e_k`; roots `eᵢ − eᵢ₊₁, e_k`.
//! * `SO(2k)`: coroots and roots `eᵢ − eᵢ₊₁, e_{k−1} + e_k` (`SO2` is a torus).
//! * `G2`: coroots `e₁, e₂`, roots the rows of `[[2,−1],[−3,2]]`.
//! * `Torusr`: rank `r`, no roots.
//! * `AxB`: direct product.

use num_bigint::BigInt;

use super::BasedRootDatum;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

fn type_a_cartan(r: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(r, r);
    for i in 0..r {
        a[(i, i)] = BigInt::from(2);
        if i + 1 < r {
            a[(i, i + 1)] = BigInt::from(-1);
            a[(i + 1, i)] = BigInt::from(-1);
        }
    }
    a
}

/// Rows `eᵢ − eᵢ₊₁` for `i < count`, in `ℤⁿ`.
fn consecutive_differences(count: usize, n: usize) -> Vec<Vec<BigInt>> {
    (0..count)
        .map(|i| {
            let mut v = vec![BigInt::from(0); n];
            v[i] = BigInt::from(1);
            v[i + 1] = BigInt::from(-1);
            v
        })
        .collect()
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    v[i] = BigInt::from(scale);
    v
}

fn from_rows(n: usize, coroots: Vec<Vec<BigInt>>, roots: Vec<Vec<BigInt>>) -> BasedRootDatum {
    BasedRootDatum::new(
        n,
        IntMatrix::from_rows(n, coroots).expect("catalog rows"),
        IntMatrix::from_rows(n, roots).expect("catalog rows"),
    )
    .expect("catalog shapes")
}

fn parse_index(s: &str, prefix: &str, whole: &str) -> Result<usize> {
    let digits = &s[prefix.len()..];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedSpec(whole.to_string()));
    }
    digits
        .parse()
        .map_err(|_| Error::MalformedSpec(whole.to_string()))
}

fn simple_factor(name: &str, whole: &str) -> Result<BasedRootDatum> {
    let too_small = || Error::MalformedSpec(whole.to_string());
    if name == "G2" {
        return Ok(from_rows(
            2,
            IntMatrix::identity(2).row_vecs(),
            IntMatrix::from_i64(&[&[2, -1], &[-3, 2]]).row_vecs(),
        ));
    }
    if name.starts_with("PGL") {
        let k = parse_index(name, "PGL", whole)?;
        if k < 2 {
            return Err(too_small());
        }
        let a = type_a_cartan(k - 1);
        return Ok(from_rows(
            k - 1,
            a.transpose().row_vecs(),
            IntMatrix::identity(k - 1).row_vecs(),
        ));
    }
    if name.starts_with("GL") {
        let k = parse_index(name, "GL", whole)?;
        if k < 1 {
            return Err(too_small());
        }
        let d = consecutive_differences(k - 1, k);
        return Ok(from_rows(k, d.clone(), d));
    }
    if name.starts_with("SL") {
        let k = parse_index(name, "SL", whole)?;
        if k < 2 {
            return Err(too_small());
        }
        let a = type_a_cartan(k - 1);
        return Ok(from_rows(
            k - 1,
            IntMatrix::identity(k - 1).row_vecs(),
            a.row_vecs(),
        ));
    }
    if name.starts_with("Sp") {
        let m = parse_index(name, "Sp", whole)?;
        if m < 2 || m % 2 != 0 {
            return Err(too_small());
        }
        let k = m / 2;
        let mut coroots = consecutive_differences(k - 1, k);
        let mut roots = coroots.clone();
        coroots.push(unit(k, k - 1, 1));
        roots.push(unit(k, k - 1, 2));
        return Ok(from_rows(k, coroots, roots));
    }
    if name.starts_with("SO") {
        let m = parse_index(name, "SO", whole)?;
        if m < 2 {
            return Err(too_small());
        }
        let k = m / 2;
        if m % 2 == 1 {
            let mut coroots = consecutive_differences(k - 1, k);
            let mut roots = coroots.clone();
            coroots.push(unit(k, k - 1, 2));
            roots.push(unit(k, k - 1, 1));
            return Ok(from_rows(k, coroots, roots));
        }
        if k == 1 {
            return Ok(BasedRootDatum::torus(1));
        }
        let mut d = consecutive_differences(k - 1, k);
        let mut last = vec![BigInt::from(0); k];
        last[k - 2] = BigInt::from(1);
        last[k - 1] = BigInt::from(1);
        d.push(last);
        return Ok(from_rows(k, d.clone(), d));
    }
    if name.starts_with("Torus") {
        let r = parse_index(name, "Torus", whole)?;
        if r < 1 {
            return Err(too_small());
        }
        return Ok(BasedRootDatum::torus(r));
    }
    Err(Error::UnknownGroup(name.to_string()))
}

/// Parses a catalog spec such as `"SL2"`, `"Sp4"` or `"SL2xTorus1"`.
pub fn catalog(spec: &str) -> Result<BasedRootDatum> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::MalformedSpec(spec.to_string()));
    }
    let mut out: Option<BasedRootDatum> = None;
    for part in spec.split('x') {
        if part.is_empty() {
            return Err(Error::MalformedSpec(spec.to_string()));
        }
        let f = simple_factor(part, spec)?;
        out = Some(match out {
            None => f,
            Some(acc) => acc.product(&f),
        });
    }
    Ok(out.expect("at least one factor"))
}

const STANDARD: &[&str] = &[
    // rank 1
    "SL2", "PGL2", "Torus1",
    // rank 2
    "SL3", "PGL3", "GL2", "Sp4", "SO4", "SO5", "G2", "Torus2", "SL2xSL2", "SL2xPGL2",
    "PGL2xPGL2", "SL2xTorus1", "PGL2xTorus1",
    // rank 3
    "SL4", "PGL4", "GL3", "Sp6", "SO6", "SO7", "Torus3", "SL2xSL2xSL2", "SL3xTorus1",
    "PGL3xTorus1", "GL2xTorus1", "GL2xSL2", "Sp4xSL2", "G2xTorus1", "SL2xTorus2",
    "PGL2xGL2", "SO5xPGL2",
];

/// A fixed list of catalog names of rank at most `max_rank`, used by sweeps.
///
/// Aliases (`Sp2 = SL2`, `SO3 = PGL2`, `SO2 = GL1 = Torus1`) are listed once.
pub fn standard_names(max_rank: usize) -> Vec<String> {
    STANDARD
        .iter()
        .filter(|n| catalog(n).is_ok_and(|rd| rd.rank() <= max_rank))
        .map(|n| n.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{validate_datum, Caps};

    #[test]
    fn examples() {
        let sl2 = catalog("SL2").unwrap();
        assert_eq!(sl2.rank(), 1);
        assert_eq!(sl2.simple_coroots(), &IntMatrix::from_i64(&[&[1]]));
        assert_eq!(sl2.simple_roots(), &IntMatrix::from_i64(&[&[2]]));
        let t = catalog("Torus3").unwrap();
        assert_eq!((t.rank(), t.num_simple()), (3, 0));
        let p = catalog("SL2xTorus1").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.simple_coroots(), &IntMatrix::from_i64(&[&[1, 0]]));
        assert_eq!(p.simple_roots(), &IntMatrix::from_i64(&[&[2, 0]]));
    }

    #[test]
    fn aliases() {
        assert_eq!(catalog("Sp2").unwrap(), catalog("SL2").unwrap());
        assert_eq!(catalog("SO3").unwrap(), catalog("PGL2").unwrap());
        assert_eq!(catalog("SO2").unwrap(), catalog("Torus1").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(catalog("E8"), Err(Error::UnknownGroup(_))));
        for bad in ["", "SL", "SL1", "Sp3", "SLx", "xSL2", "SL2x", "SL-2", "Torus0", "SO1"] {
            assert!(catalog(bad).is_err(), "{bad}");
        }
        assert!(matches!(catalog("SLa"), Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn every_standard_entry_is_valid() {
        let names = standard_names(3);
        assert_eq!(names.len(), STANDARD.len());
        for n in names {
            let rd = catalog(&n).unwrap();
            assert!(validate_datum(&rd, Caps::default()).is_valid(), "{n}");
        }
        for extra in ["SO8", "SO9", "Sp8", "SL6", "GL1xGL1", "SO10"] {
            assert!(validate_datum(&catalog(extra).unwrap(), Caps::default()).is_valid());
        }
    }
}
