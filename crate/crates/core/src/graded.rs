//! Graded spaces, chain complexes and their cohomology.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitVec, Echelon};

/// The grading group: the integers or the integers mod 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Grading {
    #[default]
    Z,
    Z2,
}

impl Grading {
    #[inline]
    pub fn norm(self, d: i64) -> i64 {
        match self {
            Grading::Z => d,
            Grading::Z2 => d.rem_euclid(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Grading::Z => "z",
            Grading::Z2 => "z2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "z" | "Z" => Some(Grading::Z),
            "z2" | "Z2" | "z/2" => Some(Grading::Z2),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("differential has wrong degree on basis element `{0}`")]
    WrongDegree(String),
    #[error("d∘d is nonzero starting in degree {0}")]
    NotAComplex(i64),
    #[error("differential has {got} columns for a space of dimension {expected}")]
    Shape { expected: usize, got: usize },
}

/// A finite graded vector space with a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    grading: Grading,
    labels: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(grading: Grading, basis: Vec<(String, i64)>) -> Result<Self, GradedError> {
        let mut seen = HashSet::new();
        for (l, _) in &basis {
            if !seen.insert(l.as_str()) {
                return Err(GradedError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self::new_unchecked(grading, basis))
    }

    /// Skips the uniqueness check; callers guarantee distinct labels.
    pub fn new_unchecked(grading: Grading, basis: Vec<(String, i64)>) -> Self {
        let (labels, degrees) = basis.into_iter().map(|(l, d)| (l, grading.norm(d))).unzip();
        GradedSpace { grading, labels, degrees }
    }

    pub fn zero(grading: Grading) -> Self {
        GradedSpace { grading, labels: Vec::new(), degrees: Vec::new() }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Dimension per degree, omitting zero entries.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn indices_in_degree(&self, k: i64) -> Vec<usize> {
        let k = self.grading.norm(k);
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// Every degree moved by `s`.
    pub fn regraded(&self, s: i64) -> Self {
        let basis = self.labels.iter().cloned().zip(self.degrees.iter().map(|d| d + s)).collect();
        Self::new_unchecked(self.grading, basis)
    }

    /// Label of a vector: basis labels joined by `+`, or `0`.
    pub fn describe(&self, v: &BitVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.ones().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(" + ")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }
}

/// A graded space with a degree +1 differential, stored as the image of
/// each basis vector.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    space: GradedSpace,
    d: Vec<BitVec>,
}

impl ChainComplex {
    pub fn new(space: GradedSpace, d: Vec<BitVec>) -> Result<Self, GradedError> {
        let c = Self::new_unchecked(space, d)?;
        if let Some(k) = c.square_defect() {
            return Err(GradedError::NotAComplex(k));
        }
        Ok(c)
    }

    /// Checks shapes and degrees but not d∘d = 0.
    pub fn new_unchecked(space: GradedSpace, d: Vec<BitVec>) -> Result<Self, GradedError> {
        if d.len() != space.dim() {
            return Err(GradedError::Shape { expected: space.dim(), got: d.len() });
        }
        let g = space.grading();
        for (j, col) in d.iter().enumerate() {
            if col.len() != space.dim() {
                return Err(GradedError::Shape { expected: space.dim(), got: col.len() });
            }
            let want = g.norm(space.degree(j) + 1);
            if col.ones().any(|i| space.degree(i) != want) {
                return Err(GradedError::WrongDegree(space.label(j).to_string()));
            }
        }
        Ok(ChainComplex { space, d })
    }

    pub fn zero_differential(space: GradedSpace) -> Self {
        let n = space.dim();
        ChainComplex { space, d: vec![BitVec::zeros(n); n] }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.d[j]
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim());
        for j in v.ones() {
            out.xor_assign(&self.d[j]);
        }
        out
    }

    /// Lowest degree where d∘d fails, if any.
    pub fn square_defect(&self) -> Option<i64> {
        (0..self.dim())
            .filter(|&j| !self.apply(&self.d[j]).is_zero())
            .map(|j| self.space.degree(j))
            .min()
    }

    pub fn cohomology(&self) -> Cohomology {
        Splitting::new(self).cohomology()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.space.euler_characteristic()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDegree {
    pub dim: usize,
    pub representatives: Vec<String>,
}

/// Cohomology per degree; degrees with zero cohomology are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology(pub BTreeMap<i64, CohomologyDegree>);

impl Cohomology {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.0.iter().map(|(&k, v)| (k, v.dim)).collect()
    }

    pub fn total(&self) -> usize {
        self.0.values().map(|v| v.dim).sum()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.0.get(&k).map_or(0, |v| v.dim)
    }
}

#[derive(Clone, Debug)]
struct DegreeSplit {
    degree: i64,
    indices: Vec<usize>,
    /// Images of C^k in C^{k+1}; tags are preimages in C^k.
    image: Echelon,
    kernel: Vec<BitVec>,
    /// B^k rows first, then cohomology representatives.
    cycles: Echelon,
    n_b: usize,
    reps: Vec<BitVec>,
    b_pre: Vec<BitVec>,
    h_offset: usize,
}

/// Deterministic decomposition C = H ⊕ B ⊕ J of a complex with maps
/// `include`, `project` and `homotopy` satisfying the side conditions.
#[derive(Clone, Debug)]
pub struct Splitting {
    grading: Grading,
    local: Vec<usize>,
    deg_of: Vec<i64>,
    degrees: BTreeMap<i64, DegreeSplit>,
    h_dim: usize,
    h_space: GradedSpace,
    d: Vec<BitVec>,
}

impl Splitting {
    pub fn new(c: &ChainComplex) -> Self {
        let space = c.space();
        let g = space.grading();
        let n = space.dim();
        let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; n];
        for i in 0..n {
            let e = by_deg.entry(space.degree(i)).or_default();
            local[i] = e.len();
            e.push(i);
        }
        let deg_of = space.degrees().to_vec();
        let mut images: BTreeMap<i64, (Echelon, Vec<BitVec>)> = BTreeMap::new();
        for (&k, idx) in &by_deg {
            let next = g.norm(k + 1);
            let tdim = by_deg.get(&next).map_or(0, Vec::len);
            let mut ech = Echelon::new(tdim, idx.len());
            let mut kernel = Vec::new();
            for (j, &gj) in idx.iter().enumerate() {
                let mut img = BitVec::zeros(tdim);
                for i in c.column(gj).ones() {
                    img.flip(local[i]);
                }
                if let Err(rel) = ech.insert(img, BitVec::unit(idx.len(), j)) {
                    kernel.push(rel);
                }
            }
            images.insert(k, (ech, kernel));
        }
        let mut degrees = BTreeMap::new();
        let mut h_offset = 0;
        let mut h_basis = Vec::new();
        for (&k, idx) in &by_deg {
            let prev = g.norm(k - 1);
            let (b_rows, b_pre): (Vec<BitVec>, Vec<BitVec>) = match images.get(&prev) {
                Some((ech, _)) if by_deg.contains_key(&prev) => (ech.rows().to_vec(), ech.tags().to_vec()),
                _ => (Vec::new(), Vec::new()),
            };
            let (image, kernel) = images.get(&k).cloned().expect("image computed for every degree");
            let n_b = b_rows.len();
            let tag_len = n_b + kernel.len();
            let mut cycles = Echelon::new(idx.len(), tag_len);
            for (t, b) in b_rows.into_iter().enumerate() {
                cycles.insert(b, BitVec::unit(tag_len, t)).expect("boundary basis is independent");
            }
            let mut reps = Vec::new();
            for z in &kernel {
                let mut v = z.clone();
                let mut tag = BitVec::zeros(tag_len);
                if cycles.reduce(&mut v, &mut tag).is_some() {
                    let h = n_b + reps.len();
                    cycles.insert(v.clone(), BitVec::unit(tag_len, h)).expect("independent cycle");
                    reps.push(v);
                }
            }
            for r in &reps {
                let label = r.ones().map(|i| space.label(idx[i])).collect::<Vec<_>>().join("+");
                h_basis.push((label, k));
            }
            let split = DegreeSplit {
                degree: k,
                indices: idx.clone(),
                image,
                kernel,
                cycles,
                n_b,
                reps,
                b_pre,
                h_offset,
            };
            h_offset += split.reps.len();
            degrees.insert(k, split);
        }
        let h_space = GradedSpace::new_unchecked(g, h_basis);
        Splitting { grading: g, local, deg_of, degrees, h_dim: h_offset, h_space, d: c.d.clone() }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// The cohomology as a graded space; labels name the representatives.
    pub fn h_space(&self) -> &GradedSpace {
        &self.h_space
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    fn to_local(&self, s: &DegreeSplit, v: &BitVec) -> BitVec {
        BitVec::from_ones(s.indices.len(), v.ones().filter(|&i| self.deg_of[i] == s.degree).map(|i| self.local[i]))
    }

    fn to_global(&self, s: &DegreeSplit, v: &BitVec) -> BitVec {
        BitVec::from_ones(self.local.len(), v.ones().map(|i| s.indices[i]))
    }

    /// Representative cycle of the `h`-th cohomology basis vector.
    pub fn include(&self, coords: &BitVec) -> BitVec {
        assert_eq!(coords.len(), self.h_dim);
        let mut out = BitVec::zeros(self.local.len());
        for s in self.degrees.values() {
            for (r, rep) in s.reps.iter().enumerate() {
                if coords.get(s.h_offset + r) {
                    out.xor_assign(&self.to_global(s, rep));
                }
            }
        }
        out
    }

    pub fn rep(&self, h: usize) -> BitVec {
        self.include(&BitVec::unit(self.h_dim, h))
    }

    fn split_degree(&self, s: &DegreeSplit, v: &BitVec) -> (BitVec, BitVec) {
        let vl = self.to_local(s, v);
        let mut dv = BitVec::zeros(self.local.len());
        for j in v.ones().filter(|&j| self.deg_of[j] == s.degree) {
            dv.xor_assign(&self.d[j]);
        }
        let next = self.grading.norm(s.degree + 1);
        let u = match self.degrees.get(&next) {
            Some(t) => s.image.express(&self.to_local(t, &dv)).expect("d(v) lies in the image"),
            None => BitVec::zeros(s.indices.len()),
        };
        let mut z = vl;
        z.xor_assign(&u);
        let coords = s.cycles.express(&z).expect("v - u is a cycle");
        let b = coords.slice(0, s.n_b);
        let h = coords.slice(s.n_b, coords.len() - s.n_b);
        (b, h)
    }

    /// Cohomology coordinates of `v` (the map p).
    pub fn project(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.h_dim);
        for s in self.degrees.values() {
            if !v.ones().any(|i| self.deg_of[i] == s.degree) {
                continue;
            }
            let (_, h) = self.split_degree(s, v);
            for r in h.ones() {
                out.flip(s.h_offset + r);
            }
        }
        out
    }

    /// The contracting homotopy h, of degree −1.
    pub fn homotopy(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.local.len());
        for s in self.degrees.values() {
            if s.n_b == 0 || !v.ones().any(|i| self.deg_of[i] == s.degree) {
                continue;
            }
            let (b, _) = self.split_degree(s, v);
            let prev = &self.degrees[&self.grading.norm(s.degree - 1)];
            for t in b.ones() {
                out.xor_assign(&self.to_global(prev, &s.b_pre[t]));
            }
        }
        out
    }

    /// Basis of the cycles in degree `k`, as global vectors.
    pub fn cycle_basis(&self, k: i64) -> Vec<BitVec> {
        match self.degrees.get(&self.grading.norm(k)) {
            Some(s) => s.kernel.iter().map(|z| self.to_global(s, z)).collect(),
            None => Vec::new(),
        }
    }

    /// True if `v` is a coboundary.
    pub fn is_boundary(&self, v: &BitVec) -> bool {
        let mut dv = BitVec::zeros(self.local.len());
        for j in v.ones() {
            dv.xor_assign(&self.d[j]);
        }
        dv.is_zero() && self.project(v).is_zero()
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut out = BTreeMap::new();
        for s in self.degrees.values() {
            if s.reps.is_empty() {
                continue;
            }
            let representatives = (0..s.reps.len()).map(|r| self.h_space.label(s.h_offset + r).to_string()).collect();
            out.insert(s.degree, CohomologyDegree { dim: s.reps.len(), representatives });
        }
        Cohomology(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(degs: &[i64]) -> GradedSpace {
        GradedSpace::new(Grading::Z, degs.iter().enumerate().map(|(i, &d)| (format!("e{i}"), d)).collect()).unwrap()
    }

    #[test]
    fn zero_differential_cohomology() {
        let c = ChainComplex::zero_differential(space(&[0, 1, 1, 2]));
        assert_eq!(c.cohomology().dims(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn acyclic_two_term() {
        let c = ChainComplex::new(space(&[0, 1]), vec![BitVec::unit(2, 1), BitVec::zeros(2)]).unwrap();
        assert!(c.cohomology().0.is_empty());
    }

    #[test]
    fn rejects_nonsquare_zero() {
        let d = vec![BitVec::unit(3, 1), BitVec::unit(3, 2), BitVec::zeros(3)];
        assert_eq!(ChainComplex::new(space(&[0, 1, 2]), d).unwrap_err(), GradedError::NotAComplex(0));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let e = GradedSpace::new(Grading::Z, vec![("a".into(), 0), ("a".into(), 1)]);
        assert_eq!(e.unwrap_err(), GradedError::DuplicateLabel("a".into()));
    }

    #[test]
    fn z2_periodic_complex() {
        let sp = GradedSpace::new(Grading::Z2, vec![("x".into(), 0), ("y".into(), 1), ("z".into(), 3)]).unwrap();
        let d = vec![BitVec::unit(3, 1), BitVec::zeros(3), BitVec::zeros(3)];
        let c = ChainComplex::new(sp, d).unwrap();
        assert_eq!(c.cohomology().dims(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn splitting_side_conditions() {
        // e0 -> e1 + e2, e3 -> e1 + e2
        let sp = space(&[0, 1, 1, 0, 2]);
        let mut d = vec![BitVec::zeros(5); 5];
        d[0] = BitVec::from_ones(5, [1, 2]);
        d[3] = BitVec::from_ones(5, [1, 2]);
        d[1] = BitVec::unit(5, 4);
        d[2] = BitVec::unit(5, 4);
        let c = ChainComplex::new(sp, d).unwrap();
        let s = Splitting::new(&c);
        for i in 0..5 {
            let v = BitVec::unit(5, i);
            let mut lhs = s.include(&s.project(&v));
            lhs.xor_assign(&c.apply(&s.homotopy(&v)));
            lhs.xor_assign(&s.homotopy(&c.apply(&v)));
            assert_eq!(lhs, v, "homotopy relation at e{i}");
            assert!(s.homotopy(&s.homotopy(&v)).is_zero());
            assert!(s.project(&s.homotopy(&v)).is_zero());
        }
        for h in 0..s.h_dim() {
            assert!(s.homotopy(&s.rep(h)).is_zero());
        }
    }
}
