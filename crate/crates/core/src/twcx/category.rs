use crate::ainfty::{chains, for_each_tuple, AInfty, DirectedCategory};
use crate::gf2::BitVec;
use crate::graded::{ChainComplex, GradedSpace, Grading};

use super::complex::TwistedComplex;
use super::mu::{max_len, tw_mu};
use super::ops::hom_complex;

/// The full subcategory of Tw(A) on an ordered list of twisted complexes,
/// restricted to strictly increasing chains.
pub struct TwCategory<'a> {
    base: &'a DirectedCategory,
    objects: Vec<TwistedComplex>,
    complexes: Vec<ChainComplex>,
}

impl<'a> TwCategory<'a> {
    pub fn new(base: &'a DirectedCategory, objects: Vec<TwistedComplex>) -> Self {
        let m = objects.len();
        let mut complexes = Vec::new();
        for i in 0..m {
            for k in i + 1..m {
                complexes.push(hom_complex(base, &objects[i], &objects[k]));
            }
        }
        TwCategory { base, objects, complexes }
    }

    pub fn base(&self) -> &DirectedCategory {
        self.base
    }

    pub fn objects(&self) -> &[TwistedComplex] {
        &self.objects
    }

    fn pair(&self, i: usize, k: usize) -> usize {
        let m = self.objects.len();
        i * m - i * (i + 1) / 2 + (k - i - 1)
    }

    /// Store every operation on basis tuples.
    pub fn materialize(&self, names: Vec<String>) -> DirectedCategory {
        let m = self.objects.len();
        let mut c = DirectedCategory::new(self.grading(), names);
        for i in 0..m {
            for k in i + 1..m {
                c.set_hom(i, k, self.hom_space(i, k).clone());
            }
        }
        let top = self.max_order().min(m.saturating_sub(1));
        for d in 1..=top {
            for objs in chains(m, d + 1) {
                let dims: Vec<usize> = objs.windows(2).map(|w| self.hom_space(w[0], w[1]).dim()).collect();
                let mut entries = Vec::new();
                for_each_tuple(&dims, |args| {
                    let units: Vec<BitVec> = (0..d).map(|j| BitVec::unit(dims[j], args[j] as usize)).collect();
                    let v = self.mu_vec(&objs, &units.iter().collect::<Vec<_>>());
                    if !v.is_zero() {
                        entries.push((args.to_vec(), v));
                    }
                });
                for (args, v) in entries {
                    c.set_mu(&objs, &args, v).expect("Tw operations have the right degree");
                }
            }
        }
        c
    }
}

impl AInfty for TwCategory<'_> {
    fn grading(&self) -> Grading {
        self.base.grading_group()
    }

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn hom_space(&self, i: usize, k: usize) -> &GradedSpace {
        self.complexes[self.pair(i, k)].space()
    }

    fn max_order(&self) -> usize {
        max_len(self.base)
    }

    fn mu_vec(&self, objs: &[usize], args: &[&BitVec]) -> BitVec {
        let cxs: Vec<&TwistedComplex> = objs.iter().map(|&o| &self.objects[o]).collect();
        tw_mu(self.base, &cxs, args)
    }

    fn hom_complex(&self, i: usize, k: usize) -> ChainComplex {
        self.complexes[self.pair(i, k)].clone()
    }
}
