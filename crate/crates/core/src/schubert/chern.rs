//! Chern classes of tensor products through formal Chern roots.
//!
//! If `E` has roots `x_a` and `F` has roots `y_b`, `E ⊗ F` has roots
//! `x_a + y_b`. Its power sums are `p_k(E⊗F) = Σ_t C(k,t) p_t(E) p_{k−t}(F)`
//! with `p_0` the rank, and Newton's identities move between power sums and
//! elementary symmetric functions (the Chern classes). The rings used here are
//! torsion free, so the divisions in Newton's identities are exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cohomology::{CohomologyElement, Grassmannian};
use crate::error::{Error, Result};
use crate::exact_linalg::binomial;

/// Total rank above which [`chern_tensor_product`] refuses to expand.
pub const DEFAULT_RANK_LIMIT: usize = 12;

/// Commutative ring with integer scalars and exact integer division.
pub trait ChernRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Result<Self>;
    fn ring_mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &BigInt) -> Self;
    fn div_exact(&self, d: u64) -> Result<Self>;
}

impl ChernRing for CohomologyElement {
    fn zero_like(&self) -> Self {
        CohomologyElement::zero(self.ambient())
    }
    fn one_like(&self) -> Self {
        CohomologyElement::one(self.ambient())
    }
    fn ring_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn scale(&self, c: &BigInt) -> Self {
        CohomologyElement::scale(self, c)
    }
    fn div_exact(&self, d: u64) -> Result<Self> {
        CohomologyElement::div_exact(self, d)
    }
}

/// Polynomial with integer coefficients in a fixed number of generators;
/// used to check Chern class identities symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl FormalPoly {
    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        FormalPoly { vars, terms }
    }

    pub fn var(vars: usize, index: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[index] = 1;
        FormalPoly {
            vars,
            terms: BTreeMap::from([(exps, BigInt::one())]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

impl ChernRing for FormalPoly {
    fn zero_like(&self) -> Self {
        FormalPoly::constant(self.vars, 0)
    }
    fn one_like(&self) -> Self {
        FormalPoly::constant(self.vars, 1)
    }
    fn ring_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_default() += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FormalPoly { vars: self.vars, terms })
    }
    fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_default() += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(FormalPoly { vars: self.vars, terms })
    }
    fn scale(&self, c: &BigInt) -> Self {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        terms.retain(|_, v: &mut BigInt| !v.is_zero());
        FormalPoly { vars: self.vars, terms }
    }
    fn div_exact(&self, d: u64) -> Result<Self> {
        let d = BigInt::from(d);
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let (q, r) = v.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::OutOfRange(format!("coefficient {v} not divisible by {d}")));
            }
            terms.insert(e.clone(), q);
        }
        Ok(FormalPoly { vars: self.vars, terms })
    }
}

/// A bundle given by its rank and total Chern class `[c_0 = 1, c_1, .., c_rank]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernData<R> {
    pub rank: usize,
    pub classes: Vec<R>,
}

impl<R: ChernRing> ChernData<R> {
    pub fn new(rank: usize, classes: Vec<R>) -> Result<Self> {
        if classes.len() != rank + 1 {
            return Err(Error::OutOfRange(format!(
                "rank {rank} bundle needs {} Chern classes, got {}",
                rank + 1,
                classes.len()
            )));
        }
        Ok(ChernData { rank, classes })
    }

    /// Trivial bundle of the given rank.
    pub fn trivial(rank: usize, unit: &R) -> Self {
        let mut classes = vec![unit.zero_like(); rank + 1];
        classes[0] = unit.one_like();
        ChernData { rank, classes }
    }

    fn c(&self, i: usize) -> R {
        self.classes
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.classes[0].zero_like())
    }

    /// Power sums `p_0 .. p_top` of the Chern roots.
    pub fn power_sums(&self, top: usize) -> Result<Vec<R>> {
        let one = self.classes[0].one_like();
        let mut p = vec![one.scale(&BigInt::from(self.rank))];
        for k in 1..=top {
            // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
            let mut acc = self.c(k).scale(&signed(k - 1, k as i64));
            for i in 1..k {
                let term = self.c(i).ring_mul(&p[k - i])?.scale(&signed(i - 1, 1));
                acc = acc.ring_add(&term)?;
            }
            p.push(acc);
        }
        Ok(p)
    }
}

fn signed(parity: usize, v: i64) -> BigInt {
    if parity.is_multiple_of(2) {
        BigInt::from(v)
    } else {
        BigInt::from(-v)
    }
}

/// Elementary symmetric functions `e_0 .. e_top` from power sums `p_0 .. p_top`.
fn elementary_from_power_sums<R: ChernRing>(p: &[R], top: usize) -> Result<Vec<R>> {
    let mut e = vec![p[0].one_like()];
    for k in 1..=top {
        // k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
        let mut acc = p[0].zero_like();
        for i in 1..=k {
            let term = e[k - i].ring_mul(&p[i])?.scale(&signed(i - 1, 1));
            acc = acc.ring_add(&term)?;
        }
        e.push(acc.div_exact(k as u64)?);
    }
    Ok(e)
}

/// Chern classes `c_0 .. c_R` of `F_1 ⊗ .. ⊗ F_t`, `R = Π rank(F_i)`.
pub fn chern_tensor_product<R: ChernRing>(factors: &[ChernData<R>], rank_limit: usize) -> Result<ChernData<R>> {
    let Some(first) = factors.first() else {
        return Err(Error::OutOfRange("no factors".into()));
    };
    let rank = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.rank))
        .ok_or(Error::Overflow("bundle rank"))?;
    if rank > rank_limit {
        return Err(Error::RankLimit {
            rank,
            limit: rank_limit,
        });
    }
    let mut sums = first.power_sums(rank)?;
    for f in &factors[1..] {
        let other = f.power_sums(rank)?;
        let mut next = Vec::with_capacity(rank + 1);
        for k in 0..=rank {
            let mut acc = sums[0].zero_like();
            for t in 0..=k {
                let term = sums[t].ring_mul(&other[k - t])?.scale(&binomial(k as u64, t as i64));
                acc = acc.ring_add(&term)?;
            }
            next.push(acc);
        }
        sums = next;
    }
    Ok(ChernData {
        rank,
        classes: elementary_from_power_sums(&sums, rank)?,
    })
}

/// `c_j(S*) = σ_{1^j}`, `j = 0..k`, for the universal subbundle on `G(k, m)`.
pub fn chern_dual_universal(k: usize, m: usize) -> Result<Vec<CohomologyElement>> {
    let g = Grassmannian::new(k, m)?;
    chern_dual_universal_on(&[g], 0)
}

/// Same classes pulled back to a product, on factor `factor`.
pub fn chern_dual_universal_on(ambient: &[Grassmannian], factor: usize) -> Result<Vec<CohomologyElement>> {
    let g = ambient.get(factor).ok_or(Error::AmbientMismatch)?;
    (0..=g.k)
        .map(|j| CohomologyElement::pullback(ambient, factor, vec![1; j]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_chern(vars: usize, first: usize, rank: usize) -> ChernData<FormalPoly> {
        let mut classes = vec![FormalPoly::constant(vars, 1)];
        classes.extend((0..rank).map(|i| FormalPoly::var(vars, first + i)));
        ChernData::new(rank, classes).unwrap()
    }

    fn sum(xs: &[FormalPoly]) -> FormalPoly {
        xs.iter().skip(1).fold(xs[0].clone(), |a, b| a.ring_add(b).unwrap())
    }

    fn mul(a: &FormalPoly, b: &FormalPoly) -> FormalPoly {
        a.ring_mul(b).unwrap()
    }

    #[test]
    fn rank_two_times_line() {
        // vars: e1, e2, l1
        let e = poly_chern(3, 0, 2);
        let l = poly_chern(3, 2, 1);
        let out = chern_tensor_product(&[e, l], DEFAULT_RANK_LIMIT).unwrap();
        let (e1, e2, l1) = (FormalPoly::var(3, 0), FormalPoly::var(3, 1), FormalPoly::var(3, 2));
        assert_eq!(out.rank, 2);
        assert_eq!(out.classes[1], sum(&[e1.clone(), l1.clone(), l1.clone()]));
        assert_eq!(out.classes[2], sum(&[e2, mul(&e1, &l1), mul(&l1, &l1)]));
    }

    #[test]
    fn two_lines() {
        let a = poly_chern(2, 0, 1);
        let b = poly_chern(2, 1, 1);
        let out = chern_tensor_product(&[a, b], DEFAULT_RANK_LIMIT).unwrap();
        assert_eq!(
            out.classes[1],
            FormalPoly::var(2, 0).ring_add(&FormalPoly::var(2, 1)).unwrap()
        );
    }

    #[test]
    fn trivial_line_is_identity() {
        let e = poly_chern(3, 0, 3);
        let one = FormalPoly::constant(3, 1);
        let out = chern_tensor_product(&[e.clone(), ChernData::trivial(1, &one)], DEFAULT_RANK_LIMIT).unwrap();
        assert_eq!(out, e);
    }

    #[test]
    fn trivial_rank_t_is_direct_sum() {
        // E ⊗ O^2 = E ⊕ E for a line bundle: c = (1 + x)^2
        let x = poly_chern(1, 0, 1);
        let one = FormalPoly::constant(1, 1);
        let out = chern_tensor_product(&[x, ChernData::trivial(2, &one)], DEFAULT_RANK_LIMIT).unwrap();
        let v = FormalPoly::var(1, 0);
        assert_eq!(out.classes[1], v.scale(&BigInt::from(2)));
        assert_eq!(out.classes[2], mul(&v, &v));
    }

    #[test]
    fn rank_limit_enforced() {
        let e = poly_chern(8, 0, 4);
        let f = poly_chern(8, 4, 4);
        assert_eq!(
            chern_tensor_product(&[e, f], DEFAULT_RANK_LIMIT),
            Err(Error::RankLimit { rank: 16, limit: 12 })
        );
    }

    #[test]
    fn power_sums_of_split_bundle() {
        // roots {x, y}: p_2 = e1^2 - 2 e2
        let e = poly_chern(2, 0, 2);
        let p = e.power_sums(3).unwrap();
        let (e1, e2) = (FormalPoly::var(2, 0), FormalPoly::var(2, 1));
        assert_eq!(p[2], mul(&e1, &e1).ring_add(&e2.scale(&BigInt::from(-2))).unwrap());
        let back = elementary_from_power_sums(&p, 3).unwrap();
        assert_eq!(back[1], e1);
        assert_eq!(back[2], e2);
        assert!(back[3].terms().next().is_none());
    }

    #[test]
    fn universal_classes() {
        let c = chern_dual_universal(2, 5).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], CohomologyElement::one(c[0].ambient()));
        assert_eq!(c[2].coefficient(&vec![vec![1, 1]]), BigInt::one());
        let c = chern_dual_universal(1, 6).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].coefficient(&vec![vec![1]]), BigInt::one());
        let c = chern_dual_universal(3, 3).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c[1..].iter().all(CohomologyElement::is_zero));
        assert!(!c[0].is_zero());
    }
}
