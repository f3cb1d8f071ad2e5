//! Normal-ordered monomials in bosonic mode operators and their exact
//! products and commutators (integer coefficients).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::{smallvec, SmallVec};

/// `(a†_mode)^creations (a_mode)^annihilations`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeFactor {
    pub mode: u32,
    pub creations: u16,
    pub annihilations: u16,
}

/// Product of [`ModeFactor`]s over distinct modes, sorted by mode. Because
/// operators of different modes commute, this is the normal-ordered word with
/// every creation operator to the left of every annihilation operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[ModeFactor; 2]>,
}

impl Monomial {
    /// The identity (degree 0).
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn creation(mode: u32) -> Self {
        Self { factors: smallvec![ModeFactor { mode, creations: 1, annihilations: 0 }] }
    }

    pub fn annihilation(mode: u32) -> Self {
        Self { factors: smallvec![ModeFactor { mode, creations: 0, annihilations: 1 }] }
    }

    /// Builds a monomial from factors in any order; powers of repeated modes
    /// must not be split (use [`Monomial::product`] for that).
    pub fn from_factors(factors: impl IntoIterator<Item = ModeFactor>) -> Self {
        let mut f: SmallVec<[ModeFactor; 2]> = factors
            .into_iter()
            .filter(|f| f.creations > 0 || f.annihilations > 0)
            .collect();
        f.sort_by_key(|x| x.mode);
        assert!(f.windows(2).all(|w| w[0].mode != w[1].mode), "duplicate mode in monomial");
        Self { factors: f }
    }

    pub fn factors(&self) -> &[ModeFactor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| (f.creations + f.annihilations) as usize).sum()
    }

    pub fn modes(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|f| f.mode)
    }

    /// Hermitian adjoint; stays normal ordered.
    pub fn adjoint(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .map(|f| ModeFactor { mode: f.mode, creations: f.annihilations, annihilations: f.creations })
                .collect(),
        }
    }

    fn shares_mode(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].mode.cmp(&other.factors[j].mode) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Normal-ordered expansion of `self * other` with exact integer coefficients.
    ///
    /// Per mode, `a^p a†^r = Σ_k C(p,k) C(r,k) k! a†^(r-k) a^(p-k)`.
    pub fn product(&self, other: &Self) -> Vec<(Monomial, i64)> {
        let mut partial: Vec<(SmallVec<[ModeFactor; 2]>, i64)> = vec![(SmallVec::new(), 1)];
        let push_all = |partial: &mut Vec<(SmallVec<[ModeFactor; 2]>, i64)>, f: ModeFactor| {
            for (fs, _) in partial.iter_mut() {
                fs.push(f);
            }
        };
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let order = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.mode.cmp(&y.mode),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match order {
                Ordering::Less => {
                    push_all(&mut partial, a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    push_all(&mut partial, b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let (x, y) = (a[i], b[j]);
                    let p = x.annihilations as i64;
                    let r = y.creations as i64;
                    let mut next = Vec::with_capacity(partial.len() * (p.min(r) as usize + 1));
                    for k in 0..=p.min(r) {
                        let weight = binomial(p, k) * binomial(r, k) * factorial(k);
                        let f = ModeFactor {
                            mode: x.mode,
                            creations: x.creations + y.creations - k as u16,
                            annihilations: x.annihilations + y.annihilations - k as u16,
                        };
                        for (fs, c) in &partial {
                            let mut fs = fs.clone();
                            if f.creations > 0 || f.annihilations > 0 {
                                fs.push(f);
                            }
                            next.push((fs, c * weight));
                        }
                    }
                    partial = next;
                    i += 1;
                    j += 1;
                }
            }
        }
        partial.into_iter().map(|(factors, c)| (Monomial { factors }, c)).collect()
    }

    /// Exact `[self, other]` as a list of normal-ordered monomials with
    /// nonzero integer coefficients.
    pub fn commutator(&self, other: &Self) -> Vec<(Monomial, i64)> {
        if !self.shares_mode(other) {
            return Vec::new();
        }
        // [a, a†] = 1 and [a†, a] = -1 cover every degree-1 pair.
        if let ([x], [y]) = (self.factors.as_slice(), other.factors.as_slice()) {
            if x.creations + x.annihilations == 1 && y.creations + y.annihilations == 1 {
                return match (x.annihilations, y.creations) {
                    (1, 1) => vec![(Monomial::identity(), 1)],
                    (0, 0) => vec![(Monomial::identity(), -1)],
                    _ => Vec::new(),
                };
            }
        }
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in self.product(other) {
            *acc.entry(m).or_insert(0) += c;
        }
        for (m, c) in other.product(self) {
            *acc.entry(m).or_insert(0) -= c;
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then factor list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.as_slice().cmp(other.factors.as_slice()))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            Ok(())
        };
        for x in &self.factors {
            if x.creations > 0 {
                sep(f)?;
                write!(f, "a†{}", x.mode)?;
                if x.creations > 1 {
                    write!(f, "^{}", x.creations)?;
                }
            }
        }
        for x in &self.factors {
            if x.annihilations > 0 {
                sep(f)?;
                write!(f, "a{}", x.mode)?;
                if x.annihilations > 1 {
                    write!(f, "^{}", x.annihilations)?;
                }
            }
        }
        Ok(())
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}
