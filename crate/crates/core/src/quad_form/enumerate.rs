//! Brute-force enumeration of `Quad(Λ, ℤ/n)^W_restr`.
//!
//! Every candidate is a vector of numerators over `n`: `q(eᵢ)` for each `i`,
//! then `b(eᵢ, eⱼ)` for `i < j`. Checks run in machine integers modulo `n`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::TorsionQuadForm;
use crate::error::{Error, Result};
use crate::root_datum::BasedRootDatum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest admissible candidate count `n^(r(r+1)/2)`.
    pub cap: u64,
    /// Worker threads; the result does not depend on it.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            cap: 10_000_000,
            jobs: 1,
        }
    }
}

/// The restricted forms with values in `(1/n)ℤ/ℤ`, as numerator vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedForms {
    pub modulus: i64,
    pub rank: usize,
    /// In increasing lexicographic order of numerator vectors.
    pub elements: Vec<Vec<i64>>,
    /// A generating set found greedily while checking closure.
    pub generators: Vec<Vec<i64>>,
}

impl RestrictedForms {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn forms(&self) -> Vec<TorsionQuadForm> {
        self.elements
            .iter()
            .map(|d| TorsionQuadForm::from_numerators(self.rank, self.modulus, d))
            .collect()
    }
}

struct Checker {
    n: i64,
    r: usize,
    /// `reflected[i][j]` is `sᵢeⱼ` mod n.
    reflected: Vec<Vec<Vec<i64>>>,
    coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
}

fn reduce(v: &BigInt, n: i64) -> i64 {
    v.mod_floor(&BigInt::from(n)).to_i64().expect("residue fits")
}

impl Checker {
    fn new(rd: &BasedRootDatum, n: i64) -> Self {
        let r = rd.rank();
        let red = |v: &[BigInt]| v.iter().map(|x| reduce(x, n)).collect::<Vec<_>>();
        let reflected = (0..rd.num_simple())
            .map(|i| {
                let s = rd.reflection(i);
                (0..r).map(|j| red(&s.column(j))).collect()
            })
            .collect();
        Checker {
            n,
            r,
            reflected,
            coroots: (0..rd.num_simple()).map(|i| red(rd.coroot(i))).collect(),
            roots: (0..rd.num_simple()).map(|i| red(rd.root(i))).collect(),
        }
    }

    fn tri(&self, i: usize, j: usize) -> usize {
        self.r + i * (2 * self.r - i - 1) / 2 + (j - i - 1)
    }

    fn q(&self, d: &[i64], v: &[i64]) -> i64 {
        let n = self.n as i128;
        let mut acc: i128 = 0;
        for i in 0..self.r {
            if v[i] == 0 {
                continue;
            }
            let vi = v[i] as i128;
            acc += vi * vi % n * d[i] as i128;
            for j in i + 1..self.r {
                acc += vi * v[j] as i128 % n * d[self.tri(i, j)] as i128;
            }
            acc %= n;
        }
        acc.rem_euclid(n) as i64
    }

    fn pair(&self, d: &[i64], i: usize, j: usize) -> i64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => 2 * d[i] % self.n,
            std::cmp::Ordering::Less => d[self.tri(i, j)],
            std::cmp::Ordering::Greater => d[self.tri(j, i)],
        }
    }

    fn b(&self, d: &[i64], u: &[i64], v: &[i64]) -> i64 {
        let n = self.n as i128;
        let mut acc: i128 = 0;
        for i in 0..self.r {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.r {
                if v[j] != 0 {
                    acc += u[i] as i128 * v[j] as i128 % n * self.pair(d, i, j) as i128;
                }
            }
            acc %= n;
        }
        acc.rem_euclid(n) as i64
    }

    fn invariant(&self, d: &[i64]) -> bool {
        for cols in &self.reflected {
            for j in 0..self.r {
                if self.q(d, &cols[j]) != d[j] {
                    return false;
                }
                for k in j + 1..self.r {
                    if self.b(d, &cols[j], &cols[k]) != d[self.tri(j, k)] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn restricted(&self, d: &[i64]) -> bool {
        let n = self.n as i128;
        for (a, c) in self.coroots.iter().zip(&self.roots) {
            let qa = self.q(d, a) as i128;
            for j in 0..self.r {
                let mut lhs: i128 = 0;
                for i in 0..self.r {
                    lhs += a[i] as i128 * self.pair(d, i, j) as i128 % n;
                }
                if lhs.rem_euclid(n) != (c[j] as i128 * qa).rem_euclid(n) {
                    return false;
                }
            }
        }
        true
    }

    fn accepts(&self, d: &[i64]) -> bool {
        self.invariant(d) && self.restricted(d)
    }
}

fn candidate_count(n: i64, len: usize, cap: u64) -> Result<u64> {
    let exceeded = || Error::CapExceeded {
        what: format!("form enumeration size {n}^{len}"),
        cap,
    };
    let mut total: u64 = 1;
    for _ in 0..len {
        total = total.checked_mul(n as u64).ok_or_else(exceeded)?;
        if total > cap {
            return Err(exceeded());
        }
    }
    Ok(total)
}

fn scan(checker: &Checker, len: usize, start: u64, end: u64) -> Vec<Vec<i64>> {
    let n = checker.n;
    let mut digits = vec![0i64; len];
    let mut t = start;
    for k in (0..len).rev() {
        digits[k] = (t % n as u64) as i64;
        t /= n as u64;
    }
    let mut out = Vec::new();
    for _ in start..end {
        if checker.accepts(&digits) {
            out.push(digits.clone());
        }
        for k in (0..len).rev() {
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
    out
}

fn add_mod(a: &[i64], b: &[i64], n: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

/// Greedy generators of the group spanned by `elements`; fails unless
/// `elements` is itself that group.
fn check_subgroup(elements: &[Vec<i64>], n: i64) -> Result<Vec<Vec<i64>>> {
    let not_closed = || Error::Internal("restricted forms are not closed under addition".into());
    let Some(first) = elements.first() else {
        return Err(not_closed());
    };
    let zero = vec![0i64; first.len()];
    let mut span: HashSet<Vec<i64>> = HashSet::from([zero]);
    let mut gens = Vec::new();
    for s in elements {
        if span.contains(s) {
            continue;
        }
        gens.push(s.clone());
        let mut next = span.clone();
        let mut frontier: Vec<Vec<i64>> = span.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for x in &frontier {
                let y = add_mod(x, s, n);
                if next.insert(y.clone()) {
                    fresh.push(y);
                }
            }
            if next.len() > elements.len() {
                return Err(not_closed());
            }
            frontier = fresh;
        }
        span = next;
    }
    if span.len() != elements.len() {
        return Err(not_closed());
    }
    Ok(gens)
}

/// All forms with values in `(1/n)ℤ/ℤ` that are Weyl invariant and
/// restricted, with closure under addition verified.
pub fn restricted_forms(rd: &BasedRootDatum, n: i64, opts: EnumOptions) -> Result<RestrictedForms> {
    if n < 1 {
        return Err(Error::NonPositiveModulus);
    }
    let r = rd.rank();
    let len = r + r * r.saturating_sub(1) / 2;
    let total = candidate_count(n, len, opts.cap)?;
    let checker = Checker::new(rd, n);
    let jobs = opts.jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs).max(1);
    let elements: Vec<Vec<i64>> = if jobs == 1 {
        scan(&checker, len, 0, total)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let (start, end) = ((w * chunk).min(total), ((w + 1) * chunk).min(total));
                    let checker = &checker;
                    scope.spawn(move || scan(checker, len, start, end))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };
    let generators = check_subgroup(&elements, n)?;
    Ok(RestrictedForms {
        modulus: n,
        rank: r,
        elements,
        generators,
    })
}

pub fn enumerate_restricted(
    rd: &BasedRootDatum,
    n: i64,
    opts: EnumOptions,
) -> Result<Vec<TorsionQuadForm>> {
    Ok(restricted_forms(rd, n, opts)?.forms())
}
