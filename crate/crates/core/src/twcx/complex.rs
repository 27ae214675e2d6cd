use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainfty::DirectedCategory;
use crate::gf2::BitVec;
use crate::graded::Grading;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwError {
    #[error("summand {0} refers to a missing object")]
    NoSuchObject(usize),
    #[error("δ component {0}→{1} is not below the diagonal")]
    NotTriangular(usize, usize),
    #[error("δ component {0}→{1} goes from a higher object to a lower one")]
    NotDirected(usize, usize),
    #[error("δ component {0}→{1} has the wrong length")]
    Shape(usize, usize),
    #[error("δ component {p}→{q} has degree {degree}, expected 1")]
    Degree { p: usize, q: usize, degree: i64 },
    #[error("Maurer-Cartan equation fails: defect {0}")]
    MaurerCartan(String),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("morphism has degree {0}, expected {1}")]
    MorphismDegree(i64, i64),
    #[error("morphism vector has wrong length")]
    MorphismShape,
    #[error("grading mismatch between complex and category")]
    Grading,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub object: usize,
    pub shift: i64,
}

/// Dimension of hom(a,b) with the identity adjoined on the diagonal.
#[inline]
pub fn ext_dim(cat: &DirectedCategory, a: usize, b: usize) -> usize {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => cat.hom(a, b).dim(),
        std::cmp::Ordering::Equal => 1,
        std::cmp::Ordering::Greater => 0,
    }
}

#[inline]
pub fn ext_degree(cat: &DirectedCategory, a: usize, b: usize, i: usize) -> i64 {
    if a < b {
        cat.hom(a, b).degree(i)
    } else {
        0
    }
}

pub fn ext_label(cat: &DirectedCategory, a: usize, b: usize, i: usize) -> String {
    if a < b {
        cat.hom(a, b).label(i).to_string()
    } else {
        "id".to_string()
    }
}

/// A twisted complex: shifted summands with a strictly lower-triangular
/// connection δ. δ components go from summand p to summand q > p; along
/// every component the object index does not decrease, and components
/// between equal objects are identity multiples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    grading: Grading,
    summands: Vec<Summand>,
    delta: BTreeMap<(usize, usize), BitVec>,
}

impl TwistedComplex {
    /// Validated constructor; checks shape, degrees and Maurer-Cartan.
    pub fn new(
        cat: &DirectedCategory,
        summands: Vec<Summand>,
        delta: BTreeMap<(usize, usize), BitVec>,
    ) -> Result<Self, TwError> {
        let c = Self::new_unchecked(cat.grading_group(), summands, delta);
        c.validate(cat)?;
        Ok(c)
    }

    pub fn new_unchecked(grading: Grading, summands: Vec<Summand>, delta: BTreeMap<(usize, usize), BitVec>) -> Self {
        let summands = summands.into_iter().map(|s| Summand { object: s.object, shift: grading.norm(s.shift) }).collect();
        let delta = delta.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        TwistedComplex { grading, summands, delta }
    }

    /// A bare object.
    pub fn object(cat: &DirectedCategory, i: usize) -> Self {
        Self::new_unchecked(cat.grading_group(), vec![Summand { object: i, shift: 0 }], BTreeMap::new())
    }

    pub fn zero(grading: Grading) -> Self {
        Self::new_unchecked(grading, Vec::new(), BTreeMap::new())
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn delta(&self) -> &BTreeMap<(usize, usize), BitVec> {
        &self.delta
    }

    pub fn delta_component(&self, p: usize, q: usize) -> Option<&BitVec> {
        self.delta.get(&(p, q))
    }

    pub fn validate(&self, cat: &DirectedCategory) -> Result<(), TwError> {
        self.validate_shape(cat)?;
        let defect = super::mu::maurer_cartan_defect(cat, self);
        if !defect.is_empty() {
            let text = defect
                .iter()
                .map(|((p, q), v)| {
                    let (a, b) = (self.summands[*p].object, self.summands[*q].object);
                    let terms: Vec<String> = v.ones().map(|i| ext_label(cat, a, b, i)).collect();
                    format!("{}→{}: {}", p + 1, q + 1, terms.join("+"))
                })
                .collect::<Vec<_>>()
                .join(", ");
            return Err(TwError::MaurerCartan(text));
        }
        Ok(())
    }

    pub fn validate_shape(&self, cat: &DirectedCategory) -> Result<(), TwError> {
        if self.grading != cat.grading_group() {
            return Err(TwError::Grading);
        }
        if let Some(p) = self.summands.iter().position(|s| s.object >= cat.m()) {
            return Err(TwError::NoSuchObject(p));
        }
        for (&(p, q), v) in &self.delta {
            if p >= q || q >= self.len() {
                return Err(TwError::NotTriangular(p, q));
            }
            let (a, b) = (self.summands[p], self.summands[q]);
            if a.object > b.object {
                return Err(TwError::NotDirected(p, q));
            }
            if v.len() != ext_dim(cat, a.object, b.object) {
                return Err(TwError::Shape(p, q));
            }
            for i in v.ones() {
                let degree = self.grading.norm(ext_degree(cat, a.object, b.object, i) + a.shift - b.shift);
                if degree != self.grading.norm(1) {
                    return Err(TwError::Degree { p, q, degree });
                }
            }
        }
        Ok(())
    }

    /// Outgoing δ components per summand.
    pub(crate) fn out_edges(&self) -> Vec<Vec<(usize, &BitVec)>> {
        let mut out = vec![Vec::new(); self.len()];
        for (&(p, q), v) in &self.delta {
            out[p].push((q, v));
        }
        out
    }

    pub(crate) fn in_edges(&self) -> Vec<Vec<(usize, &BitVec)>> {
        let mut out = vec![Vec::new(); self.len()];
        for (&(p, q), v) in &self.delta {
            out[q].push((p, v));
        }
        out
    }

    /// All summand shifts increased by `s`.
    pub fn shift(&self, s: i64) -> Self {
        let summands = self.summands.iter().map(|x| Summand { object: x.object, shift: x.shift + s }).collect();
        Self::new_unchecked(self.grading, summands, self.delta.clone())
    }

    /// Direct sum with `other` placed after `self`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.len();
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        let mut delta = self.delta.clone();
        delta.extend(other.delta.iter().map(|(&(p, q), v)| ((p + n, q + n), v.clone())));
        Self::new_unchecked(self.grading, summands, delta)
    }

    /// Replace every object index through `f`.
    pub fn map_objects(&self, f: impl Fn(usize) -> usize) -> Self {
        let summands = self.summands.iter().map(|s| Summand { object: f(s.object), shift: s.shift }).collect();
        Self::new_unchecked(self.grading, summands, self.delta.clone())
    }

    pub fn with_grading(&self, grading: Grading) -> Self {
        Self::new_unchecked(grading, self.summands.clone(), self.delta.clone())
    }

    pub(crate) fn delta_mut(&mut self) -> &mut BTreeMap<(usize, usize), BitVec> {
        &mut self.delta
    }
}

/// Block layout of hom(c1, c2): one block per summand pair (p, q).
#[derive(Clone, Debug)]
pub struct HomLayout {
    n2: usize,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

impl HomLayout {
    pub fn new(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex) -> Self {
        let n2 = c2.len();
        let mut offsets = Vec::with_capacity(c1.len() * n2);
        let mut dims = Vec::with_capacity(c1.len() * n2);
        let mut total = 0;
        for a in c1.summands() {
            for b in c2.summands() {
                let d = ext_dim(cat, a.object, b.object);
                offsets.push(total);
                dims.push(d);
                total += d;
            }
        }
        HomLayout { n2, offsets, dims, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    #[inline]
    pub fn offset(&self, p: usize, q: usize) -> usize {
        self.offsets[p * self.n2 + q]
    }

    #[inline]
    pub fn block_dim(&self, p: usize, q: usize) -> usize {
        self.dims[p * self.n2 + q]
    }

    pub fn block(&self, v: &BitVec, p: usize, q: usize) -> BitVec {
        v.slice(self.offset(p, q), self.block_dim(p, q))
    }

    /// Locate the block containing global index `i`.
    pub fn locate(&self, i: usize) -> (usize, usize, usize) {
        let idx = self.offsets.partition_point(|&o| o <= i) - 1;
        // Skip empty blocks sharing the same offset.
        let mut j = idx;
        while self.dims[j] == 0 || self.offsets[j] + self.dims[j] <= i {
            j -= 1;
        }
        (j / self.n2, j % self.n2, i - self.offsets[j])
    }

    /// Nonzero blocks of `v`, grouped by source summand.
    pub fn split(&self, v: &BitVec, n1: usize) -> Vec<Vec<(usize, BitVec)>> {
        let mut out = vec![Vec::new(); n1];
        let mut last = None;
        for i in v.ones() {
            let (p, q, _) = self.locate(i);
            if last != Some((p, q)) {
                last = Some((p, q));
                let b = self.block(v, p, q);
                out[p].push((q, b));
            }
        }
        out
    }
}
