//! Spherical objects, matching pairs and braid relations between twists.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::ainfty::DirectedCategory;
use crate::gf2::{BitVec, Matrix};
use crate::graded::Splitting;
use crate::twcx::{
    cone, db_hom, hom_complex, HomLayout, is_isomorphic, strip_acyclic, tw_mu, twist, TwistedComplex, Verdict, DEFAULT_SEARCH_CAP,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphericalError {
    #[error("objects {0} and {1} do not form a matching pair")]
    NotMatching(usize, usize),
    #[error("index {0} out of range")]
    Index(usize),
    #[error("cone is not spherical")]
    NotSpherical,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphericalReport {
    pub dimension: i64,
    pub endo_table: BTreeMap<i64, usize>,
    pub endo_table_ok: bool,
    /// One entry per generator.
    pub pairing_ok: Vec<bool>,
    pub verdict: bool,
}

/// Cohomology class coordinates for one hom complex.
struct Classes {
    split: Splitting,
}

impl Classes {
    fn new(cat: &DirectedCategory, a: &TwistedComplex, b: &TwistedComplex) -> Self {
        Classes { split: Splitting::new(&hom_complex(cat, a, b)) }
    }

    fn in_degree(&self, k: i64) -> Vec<usize> {
        self.split.h_space().indices_in_degree(k)
    }
}

/// Is the composition pairing H^k(x, c) ⊗ H^{top−k}(c, x) → H^top(c, c)
/// perfect in every degree k?
pub fn pairing_is_perfect(cat: &DirectedCategory, x: &TwistedComplex, c: &TwistedComplex, top: i64) -> bool {
    let g = cat.grading_group();
    let xc = Classes::new(cat, x, c);
    let cx = Classes::new(cat, c, x);
    let cc = Classes::new(cat, c, c);
    let target = cc.in_degree(top);
    if target.len() != 1 {
        return false;
    }
    let t = target[0];
    let mut degrees: Vec<i64> = xc.split.h_space().degrees().to_vec();
    degrees.extend(cx.split.h_space().degrees().iter().map(|&d| g.norm(top - d)));
    degrees.sort_unstable();
    degrees.dedup();
    for k in degrees {
        let left = xc.in_degree(k);
        let right = cx.in_degree(g.norm(top - k));
        if left.len() != right.len() {
            return false;
        }
        let m = Matrix::from_fn(left.len(), right.len(), |i, j| {
            let a = xc.split.rep(left[i]);
            let b = cx.split.rep(right[j]);
            cc.split.project(&tw_mu(cat, &[c, x, c], &[&b, &a])).get(t)
        });
        if !m.is_invertible() {
            return false;
        }
    }
    true
}

/// Check that Hom*(c,c) ≅ H*(S^dim) and that c pairs perfectly against every
/// generator (hence against every shift of one).
pub fn is_spherical(cat: &DirectedCategory, c: &TwistedComplex, dim: i64) -> SphericalReport {
    let g = cat.grading_group();
    let endo = db_hom(cat, c, c);
    let mut want = BTreeMap::new();
    *want.entry(g.norm(0)).or_insert(0) += 1;
    *want.entry(g.norm(dim)).or_insert(0) += 1;
    let endo_table_ok = endo == want && dim != 0;
    let pairing_ok: Vec<bool> =
        (0..cat.m()).map(|i| pairing_is_perfect(cat, &TwistedComplex::object(cat, i), c, dim)).collect();
    let verdict = endo_table_ok && pairing_ok.iter().all(|&b| b);
    SphericalReport { dimension: dim, endo_table: endo, endo_table_ok, pairing_ok, verdict }
}

/// Does composition with a give isomorphisms on cohomology?
fn composes_isomorphically(
    cat: &DirectedCategory,
    objs: [&TwistedComplex; 3],
    fixed: &BitVec,
    fixed_first: bool,
) -> bool {
    let free = if fixed_first { Classes::new(cat, objs[1], objs[2]) } else { Classes::new(cat, objs[0], objs[1]) };
    let out = Classes::new(cat, objs[0], objs[2]);
    if free.split.h_space().dims() != out.split.h_space().dims() {
        return false;
    }
    let cols: Vec<BitVec> = (0..free.split.h_dim())
        .map(|h| {
            let v = free.split.rep(h);
            let args: [&BitVec; 2] = if fixed_first { [fixed, &v] } else { [&v, fixed] };
            out.split.project(&tw_mu(cat, &objs, &args))
        })
        .collect();
    Matrix::from_columns(out.split.h_dim(), &cols).is_invertible()
}

/// The degree-0 class making (X^i, X^{i+1}) a matching pair of dimension n,
/// if any. Indices are 0-based.
pub fn matching_class(cat: &DirectedCategory, i: usize, n: i64) -> Option<BitVec> {
    let m = cat.m();
    if i + 1 >= m {
        return None;
    }
    let g = cat.grading_group();
    let x = |k: usize| TwistedComplex::object(cat, k);
    let (xi, xj) = (x(i), x(i + 1));
    let mut want = BTreeMap::new();
    *want.entry(g.norm(0)).or_insert(0) += 1;
    *want.entry(g.norm(n)).or_insert(0) += 1;
    if db_hom(cat, &xi, &xj) != want {
        return None;
    }
    let cl = Classes::new(cat, &xi, &xj);
    let zero = cl.in_degree(0);
    // Every nonzero degree-0 class, in a fixed order.
    for bits in 1u64..1 << zero.len() {
        let mut a = BitVec::zeros(HomLayout::new(cat, &xi, &xj).total());
        for (j, &h) in zero.iter().enumerate() {
            if bits >> j & 1 == 1 {
                a.xor_assign(&cl.split.rep(h));
            }
        }
        let before = (0..i).all(|k| composes_isomorphically(cat, [&x(k), &xi, &xj], &a, false));
        let after = (i + 2..m).all(|l| composes_isomorphically(cat, [&xi, &xj, &x(l)], &a, true));
        if before && after {
            return Some(a);
        }
    }
    None
}

pub fn detect_matching_pair(cat: &DirectedCategory, i: usize, n: i64) -> bool {
    matching_class(cat, i, n).is_some()
}

/// The dimension n of a matching pair at i, read off the hom table.
pub fn matching_dimension(cat: &DirectedCategory, i: usize) -> Option<i64> {
    if i + 1 >= cat.m() {
        return None;
    }
    let t = db_hom(cat, &TwistedComplex::object(cat, i), &TwistedComplex::object(cat, i + 1));
    let g = cat.grading_group();
    let n = match t.iter().map(|(&k, &d)| (k, d)).collect::<Vec<_>>().as_slice() {
        [(0, 2)] => 0,
        [(a, 1), (b, 1)] if g.norm(*a) == 0 => *b,
        [(a, 1), (b, 1)] if g.norm(*b) == 0 => *a,
        _ => return None,
    };
    detect_matching_pair(cat, i, n).then_some(n)
}

/// Cone of the matching class X^i → X^{i+1}, checked to be spherical of
/// dimension n+1.
pub fn matching_cone(cat: &DirectedCategory, i: usize) -> Result<(TwistedComplex, i64), SphericalError> {
    if i + 1 >= cat.m() {
        return Err(SphericalError::Index(i));
    }
    let n = matching_dimension(cat, i).ok_or(SphericalError::NotMatching(i, i + 1))?;
    let a = matching_class(cat, i, n).ok_or(SphericalError::NotMatching(i, i + 1))?;
    let c = cone(cat, &TwistedComplex::object(cat, i), &TwistedComplex::object(cat, i + 1), &a)
        .map_err(|_| SphericalError::NotMatching(i, i + 1))?;
    if !is_spherical(cat, &c, n + 1).verdict {
        return Err(SphericalError::NotSpherical);
    }
    Ok((c, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// c1 = c2.
    Identical,
    /// Hom*(c1, c2) = 0: T_1 T_2 ≅ T_2 T_1.
    Commute,
    /// dim Hom*(c1, c2) = 1: T_1 T_2 T_1 ≅ T_2 T_1 T_2.
    Braid,
    /// No relation predicted.
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    pub relation: Relation,
    pub verdicts: Vec<Verdict>,
}

impl BraidReport {
    pub fn holds(&self) -> bool {
        self.relation != Relation::None && self.verdicts.iter().all(|&v| v == Verdict::Yes)
    }
}

fn apply_twists(cat: &DirectedCategory, word: &[&TwistedComplex], g: &TwistedComplex) -> TwistedComplex {
    word.iter().rev().fold(g.clone(), |acc, c| strip_acyclic(cat, &twist(cat, c, &acc)))
}

/// Check the commuting or braid relation between T_{c1} and T_{c2} on each
/// generator.
pub fn braid_check(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex, generators: &[TwistedComplex]) -> BraidReport {
    if c1 == c2 {
        return BraidReport { relation: Relation::Identical, verdicts: vec![Verdict::Yes; generators.len()] };
    }
    let total: usize = db_hom(cat, c1, c2).values().sum();
    let (relation, lhs, rhs): (Relation, Vec<&TwistedComplex>, Vec<&TwistedComplex>) = match total {
        0 => (Relation::Commute, vec![c1, c2], vec![c2, c1]),
        1 => (Relation::Braid, vec![c1, c2, c1], vec![c2, c1, c2]),
        _ => return BraidReport { relation: Relation::None, verdicts: Vec::new() },
    };
    let verdicts = generators
        .iter()
        .map(|g| {
            let a = apply_twists(cat, &lhs, g);
            let b = apply_twists(cat, &rhs, g);
            is_isomorphic(cat, &a, &b, DEFAULT_SEARCH_CAP).verdict
        })
        .collect();
    BraidReport { relation, verdicts }
}
