use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::TwistedComplex;
use super::mu::tw_mu;
use super::ops::{hom_classes, hom_complex};
use crate::ainfty::DirectedCategory;
use crate::gf2::{BitVec, Matrix};
use crate::graded::Splitting;

pub const DEFAULT_SEARCH_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub verdict: Verdict,
    /// A closed degree-0 morphism inducing bijections, when found.
    pub certificate: Option<BitVec>,
    pub candidates_tried: u64,
}

/// db_hom(X_i, c) for every generator X_i.
pub fn generator_table(cat: &DirectedCategory, c: &TwistedComplex) -> Vec<BTreeMap<i64, usize>> {
    (0..cat.m()).map(|i| hom_complex(cat, &TwistedComplex::object(cat, i), c).cohomology().dims()).collect()
}

/// Decide c1 ≅ c2 by searching H^0(hom(c1,c2)) for a class inducing
/// bijections against every generator.
pub fn is_isomorphic(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex, cap: u64) -> IsoOutcome {
    let gens: Vec<TwistedComplex> = (0..cat.m()).map(|i| TwistedComplex::object(cat, i)).collect();
    let mut splits = Vec::new();
    for g in &gens {
        let s1 = Splitting::new(&hom_complex(cat, g, c1));
        let s2 = Splitting::new(&hom_complex(cat, g, c2));
        if s1.cohomology().dims() != s2.cohomology().dims() {
            return IsoOutcome { verdict: Verdict::No, certificate: None, candidates_tried: 0 };
        }
        splits.push((s1, s2));
    }
    let classes: Vec<BitVec> =
        hom_classes(cat, c1, c2).into_iter().filter(|(d, _)| *d == cat.grading_group().norm(0)).map(|(_, v)| v).collect();
    let r = classes.len();
    // Induced maps per generator and class.
    let mats: Vec<Vec<Matrix>> = classes
        .iter()
        .map(|f| {
            gens.iter()
                .zip(&splits)
                .map(|(g, (s1, s2))| {
                    let cols: Vec<BitVec> = (0..s1.h_dim())
                        .map(|h| s2.project(&tw_mu(cat, &[g, c1, c2], &[&s1.rep(h), f])))
                        .collect();
                    Matrix::from_columns(s2.h_dim(), &cols)
                })
                .collect()
        })
        .collect();
    let total = if r >= 63 { u64::MAX } else { 1u64 << r };
    let mut cur: Vec<Matrix> = splits.iter().map(|(s1, s2)| Matrix::zeros(s2.h_dim(), s1.h_dim())).collect();
    let mut coeffs = BitVec::zeros(r);
    let ok = |cur: &[Matrix]| cur.iter().all(Matrix::is_invertible);
    if ok(&cur) {
        // Everything acyclic: zero is an isomorphism.
        let len = hom_complex(cat, c1, c2).dim();
        return IsoOutcome { verdict: Verdict::Yes, certificate: Some(BitVec::zeros(len)), candidates_tried: 1 };
    }
    let mut tried = 0;
    let mut t: u64 = 1;
    while t < total && tried < cap {
        let j = t.trailing_zeros() as usize;
        coeffs.flip(j);
        for (c, m) in cur.iter_mut().zip(&mats[j]) {
            *c = c.add(m);
        }
        tried += 1;
        if ok(&cur) {
            let mut f = BitVec::zeros(classes[0].len());
            for j in coeffs.ones() {
                f.xor_assign(&classes[j]);
            }
            return IsoOutcome { verdict: Verdict::Yes, certificate: Some(f), candidates_tried: tried };
        }
        t += 1;
    }
    let verdict = if t >= total { Verdict::No } else { Verdict::Unknown };
    IsoOutcome { verdict, certificate: None, candidates_tried: tried }
}
