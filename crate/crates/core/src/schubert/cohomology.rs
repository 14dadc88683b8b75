use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::lr::schubert_product;
use crate::error::{Error, Result};

/// `G(k, m)`: `k`-planes in an `m`-dimensional space. Schubert classes are
/// partitions inside the `k × (m − k)` box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grassmannian {
    pub k: usize,
    pub m: usize,
}

impl Grassmannian {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k == 0 || k > m {
            return Err(Error::OutOfRange(format!("G({k}, {m}) needs 1 <= k <= m")));
        }
        Ok(Grassmannian { k, m })
    }

    pub fn box_rows(&self) -> usize {
        self.k
    }

    pub fn box_cols(&self) -> usize {
        self.m - self.k
    }

    pub fn dim(&self) -> usize {
        self.k * (self.m - self.k)
    }

    pub fn fits(&self, p: &[usize]) -> bool {
        p.len() <= self.box_rows() && p.first().is_none_or(|&w| w <= self.box_cols())
    }

    pub fn point_class(&self) -> Vec<usize> {
        if self.box_cols() == 0 {
            Vec::new()
        } else {
            vec![self.box_cols(); self.k]
        }
    }
}

/// One partition per Grassmannian factor.
pub type SchubertClassTuple = Vec<Vec<usize>>;

/// Integer combination of Schubert class tuples on a product of
/// Grassmannians, kept sorted, merged and free of zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyElement {
    ambient: Vec<Grassmannian>,
    terms: BTreeMap<SchubertClassTuple, BigInt>,
}

impl CohomologyElement {
    pub fn zero(ambient: &[Grassmannian]) -> Self {
        CohomologyElement {
            ambient: ambient.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &[Grassmannian]) -> Self {
        let mut e = Self::zero(ambient);
        e.terms.insert(vec![Vec::new(); ambient.len()], BigInt::one());
        e
    }

    /// `coef · σ_tuple`; zero if some partition overflows its box.
    pub fn monomial(ambient: &[Grassmannian], tuple: SchubertClassTuple, coef: impl Into<BigInt>) -> Result<Self> {
        if tuple.len() != ambient.len() {
            return Err(Error::AmbientMismatch);
        }
        for p in &tuple {
            if p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::BadPartition(p.clone()));
            }
        }
        let mut e = Self::zero(ambient);
        let coef = coef.into();
        if !coef.is_zero() && tuple.iter().zip(ambient).all(|(p, g)| g.fits(p)) {
            e.terms.insert(tuple, coef);
        }
        Ok(e)
    }

    /// `σ_p` placed in factor `factor`, the fundamental class elsewhere.
    pub fn pullback(ambient: &[Grassmannian], factor: usize, p: Vec<usize>) -> Result<Self> {
        if factor >= ambient.len() {
            return Err(Error::AmbientMismatch);
        }
        let mut tuple = vec![Vec::new(); ambient.len()];
        tuple[factor] = p;
        Self::monomial(ambient, tuple, 1)
    }

    pub fn ambient(&self) -> &[Grassmannian] {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SchubertClassTuple, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, tuple: &SchubertClassTuple) -> BigInt {
        self.terms.get(tuple).cloned().unwrap_or_default()
    }

    pub fn point_tuple(&self) -> SchubertClassTuple {
        self.ambient.iter().map(Grassmannian::point_class).collect()
    }

    /// Degree: the coefficient on the class of a point.
    pub fn point_coefficient(&self) -> BigInt {
        self.coefficient(&self.point_tuple())
    }

    pub fn dim(&self) -> usize {
        self.ambient.iter().map(Grassmannian::dim).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    fn insert(&mut self, tuple: SchubertClassTuple, coef: BigInt) {
        let slot = self.terms.entry(tuple).or_default();
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.insert(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.ambient);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect();
        }
        out
    }

    /// Division by an integer that must divide every coefficient.
    pub fn div_exact(&self, d: u64) -> Result<Self> {
        let d = BigInt::from(d);
        let mut out = Self::zero(&self.ambient);
        for (t, v) in &self.terms {
            let (q, r) = v.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::OutOfRange(format!("coefficient {v} not divisible by {d}")));
            }
            out.terms.insert(t.clone(), q);
        }
        Ok(out)
    }

    /// Factorwise Littlewood–Richardson product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<SchubertClassTuple, BigInt> = BTreeMap::new();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let coef = ca * cb;
                let mut partial: Vec<(SchubertClassTuple, BigInt)> = vec![(Vec::new(), coef)];
                for (f, g) in self.ambient.iter().enumerate() {
                    let prod = schubert_product(&ta[f], &tb[f], g.box_rows(), g.box_cols());
                    if prod.is_empty() {
                        partial.clear();
                        break;
                    }
                    partial = partial
                        .into_iter()
                        .flat_map(|(t, c)| {
                            prod.iter().map(move |(p, k)| {
                                let mut t = t.clone();
                                t.push(p.clone());
                                (t, &c * *k)
                            })
                        })
                        .collect();
                }
                for (t, c) in partial {
                    *acc.entry(t).or_default() += c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(CohomologyElement {
            ambient: self.ambient.clone(),
            terms: acc,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ambient);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let classes: Vec<String> = t
                    .iter()
                    .map(|p| {
                        if p.is_empty() {
                            "1".to_string()
                        } else {
                            let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                            format!("σ{}", s.join("."))
                        }
                    })
                    .collect();
                format!("{c}·({})", classes.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
