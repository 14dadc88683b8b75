//! Compression genericity: when can a tensor avoid every `A' ⊗ B' ⊗ C'`
//! (subspaces of `A*, B*, C*` of dimensions `a', b', c'`) in its annihilator?
//!
//! The incidence variety `Y ⊂ G × P(A⊗B⊗C)` has dimension
//! `(abc − a'b'c' − 1) + Σ (a − a')a'`. When it is too small to dominate
//! `P(A⊗B⊗C)` a generic tensor is compression generic; otherwise the top
//! Chern class of `E* = ⊗ π_i* S_i*` on `G = Π G(a'_i, a_i)` decides whether
//! every tensor fails.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schubert::{
    chern_dual_universal_on, chern_tensor_product, ChernData, ChernRing, CohomologyElement, Grassmannian,
    SchubertClassTuple, DEFAULT_RANK_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompressionProfile {
    pub dims: [u64; 3],
    pub sub: [u64; 3],
}

impl CompressionProfile {
    pub fn new(dims: [u64; 3], sub: [u64; 3]) -> Result<Self> {
        for (d, s) in dims.iter().zip(&sub) {
            if *s == 0 || s > d {
                return Err(Error::OutOfRange(format!(
                    "need 1 <= a' <= a for every factor, got dims {dims:?}, sub {sub:?}"
                )));
            }
        }
        Ok(CompressionProfile { dims, sub })
    }

    /// `a'b'c'`
    pub fn bundle_rank(&self) -> u64 {
        self.sub.iter().product()
    }

    /// `Σ (a − a')a'`
    pub fn grassmannian_dim(&self) -> u64 {
        self.dims.iter().zip(&self.sub).map(|(d, s)| (d - s) * s).sum()
    }

    /// `abc − 1`
    pub fn ambient_dim(&self) -> BigInt {
        BigInt::from(self.dims.iter().product::<u64>()) - 1
    }
}

/// `aa' + bb' + cc' < a'² + b'² + c'² + a'b'c'`.
pub fn surjdim_holds(p: &CompressionProfile) -> bool {
    let lhs: BigInt = p.dims.iter().zip(&p.sub).map(|(d, s)| BigInt::from(d * s)).sum();
    let rhs: BigInt = p.sub.iter().map(|s| BigInt::from(s * s)).sum::<BigInt>() + BigInt::from(p.bundle_rank());
    lhs < rhs
}

pub fn dim_y(p: &CompressionProfile) -> BigInt {
    let fiber = BigInt::from(p.dims.iter().product::<u64>()) - BigInt::from(p.bundle_rank()) - 1;
    fiber + BigInt::from(p.grassmannian_dim())
}

/// If the inequality fails then `rank E* ≤ dim G`.
pub fn surjdim_or_rank_fits(p: &CompressionProfile) -> bool {
    surjdim_holds(p) || p.bundle_rank() <= p.grassmannian_dim()
}

/// Smallest `a'` with `a' ≥ ⌈√(3a + 9/4) − 3/2⌉`, i.e. `a'² + 3a' ≥ 3a`.
pub fn min_aprime_threshold(a: u64) -> Result<u64> {
    if a == 0 {
        return Err(Error::OutOfRange("a must be positive".into()));
    }
    let mut x = 1;
    while x * x + 3 * x < 3 * a {
        x += 1;
    }
    Ok(x)
}

/// Smallest `a'` making [`surjdim_holds`] true for the cubic profile `(a,a,a; a',a',a')`.
pub fn min_aprime_surjdim(a: u64) -> Option<u64> {
    (1..=a).find(|&x| {
        surjdim_holds(&CompressionProfile {
            dims: [a; 3],
            sub: [x; 3],
        })
    })
}

/// Base of the bundle: nontrivial Grassmannians plus the total rank of the
/// trivial factors (those with `a' = a`, where `G(a, a)` is a point).
#[derive(Debug, Clone)]
struct Reduced {
    ambient: Vec<Grassmannian>,
    ranks: Vec<usize>,
    trivial_rank: usize,
}

fn reduce(p: &CompressionProfile) -> Result<Reduced> {
    let mut ambient = Vec::new();
    let mut ranks = Vec::new();
    let mut trivial_rank = 1;
    for (d, s) in p.dims.iter().zip(&p.sub) {
        if s == d {
            trivial_rank *= *s as usize;
        } else {
            ambient.push(Grassmannian::new(*s as usize, *d as usize)?);
            ranks.push(*s as usize);
        }
    }
    Ok(Reduced {
        ambient,
        ranks,
        trivial_rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopChernReport {
    pub rank: u64,
    pub base_dim: u64,
    pub ambient: Vec<Grassmannian>,
    pub top_class: CohomologyElement,
    /// Coefficient of the point class; the generic fibre degree when `rank = dim G`.
    pub degree: BigInt,
}

impl TopChernReport {
    /// Nonzero top class: no tensor is compression generic.
    pub fn obstructs(&self) -> bool {
        !self.top_class.is_zero()
    }
}

pub fn top_chern_class(p: &CompressionProfile, rank_limit: usize) -> Result<TopChernReport> {
    let rank = p.bundle_rank();
    let base_dim = p.grassmannian_dim();
    if rank > base_dim {
        return Err(Error::RankCondition {
            rank: rank as usize,
            dim: base_dim as usize,
        });
    }
    let red = reduce(p)?;
    let unit = CohomologyElement::one(&red.ambient);
    let mut factors = Vec::new();
    for (f, &r) in red.ranks.iter().enumerate() {
        factors.push(ChernData::new(r, chern_dual_universal_on(&red.ambient, f)?)?);
    }
    if red.trivial_rank > 1 || factors.is_empty() {
        factors.push(ChernData::trivial(red.trivial_rank, &unit));
    }
    let total = chern_tensor_product(&factors, rank_limit)?;
    let top_class = total.classes[rank as usize].clone();
    Ok(TopChernReport {
        rank,
        base_dim,
        degree: top_class.point_coefficient(),
        ambient: red.ambient,
        top_class,
    })
}

pub fn top_chern_degree(p: &CompressionProfile) -> Result<BigInt> {
    Ok(top_chern_class(p, DEFAULT_RANK_LIMIT)?.degree)
}

/// One summand of the multinomial expansion of `c_top(F)^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    /// Exponent of each term of `c_top(F)`, in the order of `terms`.
    pub exponents: Vec<u32>,
    #[serde(serialize_with = "big_str")]
    pub multinomial: BigInt,
    /// Point coefficient of the product of the raised terms (coefficients included).
    #[serde(serialize_with = "big_str")]
    pub intersection: BigInt,
    #[serde(serialize_with = "big_str")]
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionBreakdown {
    /// Terms of `c_top(F)` where `F` is the tensor product of the nontrivial factors.
    pub terms: Vec<(SchubertClassTuple, BigInt)>,
    /// Power `t` = total rank of the trivial factors.
    pub power: u32,
    pub contributions: Vec<Contribution>,
}

impl ContributionBreakdown {
    pub fn total(&self) -> BigInt {
        self.contributions.iter().map(|c| &c.value).sum()
    }
}

/// Splits the degree of `c_top(E*) = c_top(F)^t` into multinomial contributions,
/// keeping the nonzero ones.
pub fn top_chern_contributions(p: &CompressionProfile) -> Result<ContributionBreakdown> {
    let rank = p.bundle_rank();
    let base_dim = p.grassmannian_dim();
    if rank > base_dim {
        return Err(Error::RankCondition {
            rank: rank as usize,
            dim: base_dim as usize,
        });
    }
    let red = reduce(p)?;
    let unit = CohomologyElement::one(&red.ambient);
    let mut factors = Vec::new();
    for (f, &r) in red.ranks.iter().enumerate() {
        factors.push(ChernData::new(r, chern_dual_universal_on(&red.ambient, f)?)?);
    }
    let inner = if factors.is_empty() {
        ChernData::trivial(1, &unit)
    } else {
        chern_tensor_product(&factors, DEFAULT_RANK_LIMIT)?
    };
    let base = inner.classes[inner.rank].clone();
    let terms: Vec<(SchubertClassTuple, BigInt)> = base.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
    let power = red.trivial_rank as u32;

    let mut contributions = Vec::new();
    for exponents in compositions(power, terms.len()) {
        let mut product = unit.one_like();
        let mut multinomial = factorial(power);
        for ((tuple, coef), &e) in terms.iter().zip(&exponents) {
            let term = CohomologyElement::monomial(&red.ambient, tuple.clone(), coef.clone())?;
            product = product.mul(&term.pow(e)?)?;
            multinomial /= factorial(e);
        }
        let intersection = product.point_coefficient();
        let value = &multinomial * &intersection;
        if !value.is_zero() {
            contributions.push(Contribution {
                exponents,
                multinomial,
                intersection,
                value,
            });
        }
    }
    Ok(ContributionBreakdown {
        terms,
        power,
        contributions,
    })
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// All `parts`-tuples of nonnegative integers summing to `total`.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Summary of the dimension count and Chern class test for one profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressionSummary {
    pub profile: CompressionProfile,
    pub surjdim: bool,
    #[serde(serialize_with = "big_str")]
    pub dim_y: BigInt,
    #[serde(serialize_with = "big_str")]
    pub ambient_dim: BigInt,
    pub bundle_rank: u64,
    pub grassmannian_dim: u64,
    /// Present when `rank E* <= dim G`.
    #[serde(serialize_with = "opt_big_str")]
    pub top_chern_degree: Option<BigInt>,
    pub top_chern_nonzero: Option<bool>,
}

fn big_str<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_big_str<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn summarize(p: &CompressionProfile) -> Result<CompressionSummary> {
    let top = match top_chern_class(p, DEFAULT_RANK_LIMIT) {
        Ok(r) => Some(r),
        Err(Error::RankCondition { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CompressionSummary {
        profile: *p,
        surjdim: surjdim_holds(p),
        dim_y: dim_y(p),
        ambient_dim: p.ambient_dim(),
        bundle_rank: p.bundle_rank(),
        grassmannian_dim: p.grassmannian_dim(),
        top_chern_nonzero: top.as_ref().map(TopChernReport::obstructs),
        top_chern_degree: top.map(|r| r.degree),
    })
}

impl CompressionProfile {
    /// `dim Y == dim P(A⊗B⊗C)`: the projection from `Y` can be finite and onto.
    pub fn balanced(&self) -> bool {
        dim_y(self) == self.ambient_dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(d: [u64; 3], s: [u64; 3]) -> CompressionProfile {
        CompressionProfile::new(d, s).unwrap()
    }

    #[test]
    fn surjdim_examples() {
        assert!(surjdim_holds(&prof([9; 3], [4; 3])));
        assert!(surjdim_holds(&prof([3; 3], [3; 3])));
        assert!(!surjdim_holds(&prof([5; 3], [2, 1, 5])));
    }

    #[test]
    fn dim_y_examples() {
        assert_eq!(dim_y(&prof([5; 3], [2, 1, 5])), BigInt::from(124));
        assert_eq!(dim_y(&prof([3; 3], [1; 3])), BigInt::from(31));
        assert!(CompressionProfile::new([3; 3], [0; 3]).is_err());
        assert!(CompressionProfile::new([3; 3], [4, 1, 1]).is_err());
        assert!(prof([5; 3], [2, 1, 5]).balanced());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(min_aprime_threshold(9), Ok(4));
        assert_eq!(min_aprime_threshold(1), Ok(1));
        assert_eq!(min_aprime_threshold(100), Ok(16));
        assert!(min_aprime_threshold(0).is_err());
    }

    #[test]
    fn threshold_against_surjdim() {
        // surjdim is strict; the threshold is not, so they differ exactly when
        // 3a = x² + 3x has an integer root x.
        for a in 1..400u64 {
            let t = min_aprime_threshold(a).unwrap();
            let s = min_aprime_surjdim(a).unwrap();
            if t * t + 3 * t == 3 * a {
                assert_eq!(s, t + 1, "a = {a}");
            } else {
                assert_eq!(s, t, "a = {a}");
            }
        }
    }

    #[test]
    fn rank_fits_when_surjdim_fails() {
        for a in 1..=6 {
            for b in 1..=6 {
                for c in 1..=6 {
                    for x in 1..=a {
                        for y in 1..=b {
                            for z in 1..=c {
                                assert!(surjdim_or_rank_fits(&prof([a, b, c], [x, y, z])));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn five_cube_degree() {
        let p = prof([5; 3], [2, 1, 5]);
        assert_eq!(top_chern_degree(&p), Ok(BigInt::from(50)));
        let b = top_chern_contributions(&p).unwrap();
        assert_eq!(b.power, 5);
        assert_eq!(b.total(), BigInt::from(50));
        let mut values: Vec<BigInt> = b.contributions.iter().map(|c| c.value.clone()).collect();
        values.sort();
        assert_eq!(values, vec![BigInt::from(10), BigInt::from(10), BigInt::from(30)]);
    }

    #[test]
    fn line_on_p1() {
        let p = prof([2, 1, 1], [1, 1, 1]);
        assert_eq!(top_chern_degree(&p), Ok(BigInt::from(1)));
    }

    #[test]
    fn rank_condition_violation() {
        let p = prof([3; 3], [2; 3]);
        assert!(matches!(
            top_chern_degree(&p),
            Err(Error::RankCondition { rank: 8, dim: 6 })
        ));
        let s = summarize(&p).unwrap();
        assert_eq!(s.top_chern_degree, None);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 3).len(), 21);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }
}
