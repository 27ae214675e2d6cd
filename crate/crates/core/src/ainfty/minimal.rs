//! Minimal models by homological perturbation.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::category::{chains, for_each_tuple, pair_index, AInfty, DirectedCategory};
use super::functor::{for_each_composition, op_key, AInftyFunctor};
use crate::gf2::BitVec;
use crate::graded::{GradedSpace, Splitting};

/// Transferred structure on cohomology together with the inclusion functor
/// I from the model back into the input.
pub struct Transfer {
    pub model: DirectedCategory,
    splittings: Vec<Splitting>,
    /// Model basis index → cohomology index of the splitting.
    order: Vec<Vec<usize>>,
    /// I^d for d ≥ 2, in coordinates of the input hom spaces.
    higher: FxHashMap<Box<[u32]>, BitVec>,
}

impl Transfer {
    pub fn splitting(&self, i: usize, k: usize) -> &Splitting {
        &self.splittings[pair_index(self.model.m(), i, k)]
    }

    /// Representative cycle of model basis element `x` of hom(i,k).
    pub fn rep(&self, i: usize, k: usize, x: usize) -> BitVec {
        let p = pair_index(self.model.m(), i, k);
        self.splittings[p].rep(self.order[p][x])
    }

    /// Model coordinates of the cohomology class of a cycle.
    pub fn project(&self, i: usize, k: usize, v: &BitVec) -> BitVec {
        let p = pair_index(self.model.m(), i, k);
        let h = self.splittings[p].project(v);
        BitVec::from_ones(h.len(), self.order[p].iter().enumerate().filter(|(_, &o)| h.get(o)).map(|(x, _)| x))
    }

    /// I^d on a basis tuple of the model.
    pub fn inclusion(&self, objs: &[usize], args: &[u32]) -> Option<BitVec> {
        if args.len() == 1 {
            Some(self.rep(objs[0], objs[1], args[0] as usize))
        } else {
            self.higher.get(&op_key(objs, args)).cloned()
        }
    }

    /// Multilinear extension of I^d.
    pub fn inclusion_vec(&self, objs: &[usize], args: &[&BitVec], out_dim: usize) -> BitVec {
        let d = args.len();
        let mut out = BitVec::zeros(out_dim);
        let supports: Vec<Vec<u32>> = args.iter().map(|a| a.ones().map(|i| i as u32).collect()).collect();
        let dims: Vec<usize> = supports.iter().map(Vec::len).collect();
        let mut key = vec![0u32; d];
        for_each_tuple(&dims, |t| {
            for j in 0..d {
                key[j] = supports[j][t[j] as usize];
            }
            if let Some(v) = self.inclusion(objs, &key) {
                out.xor_assign(&v);
            }
        });
        out
    }

    pub fn higher_components(&self) -> impl Iterator<Item = (&[u32], &BitVec)> {
        self.higher.iter().map(|(k, v)| (&**k, v))
    }
}

/// Homological perturbation for any category given by its operations.
pub fn transfer<A: AInfty + ?Sized>(a: &A, names: Vec<String>) -> Transfer {
    let m = a.object_count();
    let g = a.grading();
    let mut model = DirectedCategory::new(g, names);
    let mut splittings = Vec::new();
    let mut order = Vec::new();
    for i in 0..m {
        for k in i + 1..m {
            let s = Splitting::new(&a.hom_complex(i, k));
            let mut idx: Vec<usize> = (0..s.h_dim()).collect();
            let keys: Vec<usize> = idx.iter().map(|&h| s.rep(h).first_one().unwrap()).collect();
            idx.sort_by_key(|&h| keys[h]);
            let hs = s.h_space();
            let basis = idx.iter().map(|&h| (hs.label(h).to_string(), hs.degree(h))).collect();
            debug_assert_eq!(splittings.len(), pair_index(m, i, k));
            model.set_hom(i, k, GradedSpace::new_unchecked(g, basis));
            splittings.push(s);
            order.push(idx);
        }
    }
    let mut t = Transfer { model, splittings, order, higher: FxHashMap::default() };
    let top = a.max_order();
    if top < 2 {
        return t;
    }
    let mut entries = Vec::new();
    for d in 2..m {
        for objs in chains(m, d + 1) {
            let dims: Vec<usize> = objs.windows(2).map(|w| t.model.hom(w[0], w[1]).dim()).collect();
            let out_dim = a.hom_space(objs[0], objs[d]).dim();
            let mut new_higher = Vec::new();
            for_each_tuple(&dims, |args| {
                let mut lambda = BitVec::zeros(out_dim);
                for_each_composition(d, top, |blocks| {
                    if blocks.len() < 2 {
                        return;
                    }
                    let mut vals = Vec::with_capacity(blocks.len());
                    let mut aobjs = vec![objs[0]];
                    let mut at = 0;
                    for &b in blocks {
                        match t.inclusion(&objs[at..=at + b], &args[at..at + b]) {
                            Some(v) if !v.is_zero() => vals.push(v),
                            _ => return,
                        }
                        at += b;
                        aobjs.push(objs[at]);
                    }
                    lambda.xor_assign(&a.mu_vec(&aobjs, &vals.iter().collect::<Vec<_>>()));
                });
                if lambda.is_zero() {
                    return;
                }
                let p = pair_index(m, objs[0], objs[d]);
                let mu = t.project(objs[0], objs[d], &lambda);
                let h = t.splittings[p].homotopy(&lambda);
                if !mu.is_zero() {
                    entries.push((objs.clone(), args.to_vec(), mu));
                }
                if !h.is_zero() {
                    new_higher.push((op_key(&objs, args), h));
                }
            });
            t.higher.extend(new_higher);
        }
    }
    for (objs, args, v) in entries {
        t.model.set_mu(&objs, &args, v).expect("transferred operations have the right degree");
    }
    t
}

/// Minimal model of a stored category and the quasi-isomorphism into it.
pub fn minimal_model(c: &DirectedCategory) -> (DirectedCategory, AInftyFunctor) {
    let t = transfer(c, c.names().to_vec());
    let model = Arc::new(t.model.clone());
    let mut f = AInftyFunctor::new(model.clone(), Arc::new(c.clone()), (0..c.m()).collect());
    for i in 0..c.m() {
        for k in i + 1..c.m() {
            for x in 0..model.hom(i, k).dim() {
                f.set(&[i, k], &[x as u32], t.rep(i, k, x));
            }
        }
    }
    for (key, v) in t.higher_components() {
        let d = (key.len() - 1) / 2;
        let objs: Vec<usize> = key[..=d].iter().map(|&o| o as usize).collect();
        f.set(&objs, &key[d + 1..], v.clone());
    }
    ((*model).clone(), f)
}
