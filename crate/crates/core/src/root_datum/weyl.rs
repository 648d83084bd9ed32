use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::BasedRootDatum;
use crate::error::{Error, Result};
use crate::exact::{dot, solve_in_span, IntMatrix};

/// The Weyl group as an explicit list of matrices acting on `Λ`
/// (column-vector convention), sorted lexicographically by entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylGroup {
    elements: Vec<IntMatrix>,
    generators: Vec<IntMatrix>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.binary_search(m).is_ok()
    }
}

/// Breadth-first closure of the simple reflections, failing once more than
/// `cap` elements have been found.
pub fn weyl_group(rd: &BasedRootDatum, cap: u64) -> Result<WeylGroup> {
    let generators: Vec<IntMatrix> = (0..rd.num_simple()).map(|i| rd.reflection(i)).collect();
    let id = IntMatrix::identity(rd.rank());
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = s * &g;
            if seen.contains(&h) {
                continue;
            }
            if seen.len() as u64 >= cap {
                return Err(Error::CapExceeded {
                    what: "Weyl group order".into(),
                    cap,
                });
            }
            seen.insert(h.clone());
            queue.push_back(h);
        }
    }
    let mut elements: Vec<IntMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(WeylGroup {
        elements,
        generators,
    })
}

/// The orbit of the simple coroots under `W`, each paired with its root.
///
/// Discovery order is breadth-first from the simple coroots.
pub fn coroot_orbit(rd: &BasedRootDatum, cap: u64) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..rd.num_simple() {
        let p = (rd.coroot(i).to_vec(), rd.root(i).to_vec());
        if index.insert(p.0.clone(), pairs.len()).is_none() {
            pairs.push(p.clone());
            queue.push_back(p);
        }
    }
    while let Some((a, c)) = queue.pop_front() {
        for j in 0..rd.num_simple() {
            let a2 = rd.reflect(j, &a);
            if index.contains_key(&a2) {
                continue;
            }
            if pairs.len() as u64 >= cap {
                return Err(Error::CapExceeded {
                    what: "coroot orbit".into(),
                    cap,
                });
            }
            let c2 = rd.reflect_dual(j, &c);
            index.insert(a2.clone(), pairs.len());
            pairs.push((a2.clone(), c2.clone()));
            queue.push_back((a2, c2));
        }
    }
    Ok(pairs)
}

/// All coroots with their paired roots, positivity flags and `2ρ̌`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorootSystem {
    pub coroots: Vec<Vec<BigInt>>,
    pub roots: Vec<Vec<BigInt>>,
    pub positive: Vec<bool>,
    /// Sum of the positive roots, in the dual lattice.
    pub two_rho_check: Vec<BigInt>,
}

impl CorootSystem {
    pub fn len(&self) -> usize {
        self.coroots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coroots.is_empty()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.roots
            .iter()
            .zip(&self.positive)
            .filter_map(|(r, &p)| p.then_some(r))
    }

    pub fn index_of_coroot(&self, v: &[BigInt]) -> Option<usize> {
        self.coroots.iter().position(|c| c.as_slice() == v)
    }
}

/// Enumerates `Δ = W·{αᵢ}` with paired roots, sorted lexicographically by
/// coroot. A coroot is positive when its expansion in simple coroots has
/// non-negative coefficients.
pub fn coroot_system(rd: &BasedRootDatum, cap: u64) -> Result<CorootSystem> {
    let mut pairs = coroot_orbit(rd, cap)?;
    pairs.sort();
    let mut coroots = Vec::with_capacity(pairs.len());
    let mut roots = Vec::with_capacity(pairs.len());
    let mut positive = Vec::with_capacity(pairs.len());
    let mut two_rho = vec![BigInt::zero(); rd.rank()];
    for (a, c) in pairs {
        if dot(&c, &a) != BigInt::from(2) {
            return Err(Error::Internal(format!("coroot {a:?} pairs with root {c:?} to != 2")));
        }
        let coeffs = solve_in_span(rd.simple_coroots(), &a)
            .ok_or_else(|| Error::Internal(format!("coroot {a:?} outside simple span")))?;
        let pos = coeffs.iter().all(|x| !x.is_negative());
        let neg = coeffs.iter().all(|x| !x.is_positive());
        if pos == neg {
            return Err(Error::Internal(format!(
                "coroot {a:?} has mixed-sign expansion {coeffs:?}"
            )));
        }
        if pos {
            for (t, x) in two_rho.iter_mut().zip(&c) {
                *t += x;
            }
        }
        coroots.push(a);
        roots.push(c);
        positive.push(pos);
    }
    let sys = CorootSystem {
        coroots,
        roots,
        positive,
        two_rho_check: two_rho,
    };
    for i in 0..rd.num_simple() {
        let p = dot(&sys.two_rho_check, rd.coroot(i));
        if p != BigInt::from(2) {
            return Err(Error::Internal(format!("<2rho, alpha{i}> = {p}, expected 2")));
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;
    use crate::root_datum::{catalog, standard_names};

    const CAP: u64 = 10_000_000;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group(&catalog("SL2").unwrap(), CAP).unwrap().order(), 2);
        assert_eq!(weyl_group(&catalog("SL3").unwrap(), CAP).unwrap().order(), 6);
        assert_eq!(weyl_group(&catalog("G2").unwrap(), CAP).unwrap().order(), 12);
        for n in 2..=5 {
            let w = weyl_group(&catalog(&format!("SL{n}")).unwrap(), CAP).unwrap();
            assert_eq!(w.order(), factorial(n));
        }
        for n in 1..=3 {
            let w = weyl_group(&catalog(&format!("Sp{}", 2 * n)).unwrap(), CAP).unwrap();
            assert_eq!(w.order(), (1usize << n) * factorial(n));
        }
        assert_eq!(weyl_group(&catalog("SO8").unwrap(), CAP).unwrap().order(), 192);
        assert_eq!(weyl_group(&catalog("Torus2").unwrap(), CAP).unwrap().order(), 1);
    }

    #[test]
    fn weyl_cap() {
        let err = weyl_group(&catalog("SL4").unwrap(), 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10, .. }));
    }

    #[test]
    fn weyl_group_closed_and_sorted() {
        let w = weyl_group(&catalog("Sp4").unwrap(), CAP).unwrap();
        let els = w.elements();
        assert!(els.windows(2).all(|p| p[0] < p[1]));
        assert!(w.contains(&IntMatrix::identity(2)));
        for g in els {
            for s in w.generators() {
                assert!(w.contains(&(g * s)));
            }
        }
        for s in w.generators() {
            assert_eq!(s * s, IntMatrix::identity(2));
        }
    }

    #[test]
    fn coroot_system_examples() {
        let sl2 = coroot_system(&catalog("SL2").unwrap(), CAP).unwrap();
        assert_eq!(sl2.coroots, vec![int_vec(&[-1]), int_vec(&[1])]);
        assert_eq!(sl2.two_rho_check, int_vec(&[2]));

        let sl3 = coroot_system(&catalog("SL3").unwrap(), CAP).unwrap();
        assert_eq!(sl3.len(), 6);
        assert_eq!(sl3.positive.iter().filter(|&&p| p).count(), 3);
        // Positive roots of A2 in the coroot basis: rows of the Cartan matrix and their sum.
        assert_eq!(sl3.two_rho_check, int_vec(&[2, 2]));

        let sp4 = coroot_system(&catalog("Sp4").unwrap(), CAP).unwrap();
        assert_eq!(sp4.len(), 8);
        let norm2 = |v: &Vec<BigInt>| dot(v, v);
        let short = sp4.coroots.iter().filter(|c| norm2(c) == BigInt::from(1)).count();
        let long = sp4.coroots.iter().filter(|c| norm2(c) == BigInt::from(2)).count();
        assert_eq!((short, long), (4, 4));
    }

    #[test]
    fn weyl_permutes_coroots_and_fixes_two_rho_pairing() {
        for name in standard_names(3) {
            let rd = catalog(&name).unwrap();
            let sys = coroot_system(&rd, CAP).unwrap();
            for c in &sys.coroots {
                let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
                assert!(sys.index_of_coroot(&neg).is_some(), "{name}: -Δ ≠ Δ");
            }
            let w = weyl_group(&rd, CAP).unwrap();
            for g in w.elements() {
                for c in &sys.coroots {
                    assert!(sys.index_of_coroot(&g.apply(c)).is_some(), "{name}");
                }
            }
            for i in 0..rd.num_simple() {
                assert_eq!(dot(&sys.two_rho_check, rd.coroot(i)), BigInt::from(2));
            }
        }
    }
}
