use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::category::{chains, for_each_tuple, AInfty, DirectedCategory};
use crate::gf2::{BitVec, Matrix};
use crate::graded::Splitting;

/// Visit every composition of `d` into `parts` positive block sizes.
pub fn for_each_composition(d: usize, max_parts: usize, mut f: impl FnMut(&[usize])) {
    fn go(rem: usize, max_parts: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rem == 0 {
            f(acc);
            return;
        }
        if acc.len() == max_parts {
            return;
        }
        for s in 1..=rem {
            acc.push(s);
            go(rem - s, max_parts, acc, f);
            acc.pop();
        }
    }
    go(d, max_parts, &mut Vec::new(), &mut f);
}

pub(crate) fn op_key(objs: &[usize], args: &[u32]) -> Box<[u32]> {
    objs.iter().map(|&o| o as u32).chain(args.iter().copied()).collect()
}

/// An A∞-functor between directed categories with an order-preserving
/// object map. Components on identities are implicit.
#[derive(Clone, Debug)]
pub struct AInftyFunctor {
    source: Arc<DirectedCategory>,
    target: Arc<DirectedCategory>,
    objects: Vec<usize>,
    comps: FxHashMap<Box<[u32]>, BitVec>,
}

impl AInftyFunctor {
    pub fn new(source: Arc<DirectedCategory>, target: Arc<DirectedCategory>, objects: Vec<usize>) -> Self {
        assert_eq!(objects.len(), source.m());
        assert!(objects.windows(2).all(|w| w[0] < w[1]), "object map must be strictly increasing");
        AInftyFunctor { source, target, objects, comps: FxHashMap::default() }
    }

    pub fn identity(c: Arc<DirectedCategory>) -> Self {
        let mut f = Self::new(c.clone(), c.clone(), (0..c.m()).collect());
        for i in 0..c.m() {
            for k in i + 1..c.m() {
                let n = c.hom(i, k).dim();
                for x in 0..n {
                    f.set(&[i, k], &[x as u32], BitVec::unit(n, x));
                }
            }
        }
        f
    }

    pub fn source(&self) -> &DirectedCategory {
        &self.source
    }

    pub fn target(&self) -> &DirectedCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn set(&mut self, objs: &[usize], args: &[u32], value: BitVec) {
        let d = args.len();
        let (a, b) = (self.objects[objs[0]], self.objects[objs[d]]);
        assert_eq!(value.len(), self.target.hom(a, b).dim());
        if value.is_zero() {
            self.comps.remove(&op_key(objs, args));
        } else {
            self.comps.insert(op_key(objs, args), value);
        }
    }

    pub fn component(&self, objs: &[usize], args: &[u32]) -> BitVec {
        let d = args.len();
        let dim = self.target.hom(self.objects[objs[0]], self.objects[objs[d]]).dim();
        self.comps.get(&op_key(objs, args)).cloned().unwrap_or_else(|| BitVec::zeros(dim))
    }

    /// Multilinear extension of F^d.
    pub fn apply(&self, objs: &[usize], args: &[&BitVec]) -> BitVec {
        let d = args.len();
        let dim = self.target.hom(self.objects[objs[0]], self.objects[objs[d]]).dim();
        let mut out = BitVec::zeros(dim);
        let supports: Vec<Vec<u32>> = args.iter().map(|a| a.ones().map(|i| i as u32).collect()).collect();
        let dims: Vec<usize> = supports.iter().map(Vec::len).collect();
        let mut key = vec![0u32; d];
        for_each_tuple(&dims, |t| {
            for j in 0..d {
                key[j] = supports[j][t[j] as usize];
            }
            if let Some(v) = self.comps.get(&op_key(objs, &key)) {
                out.xor_assign(v);
            }
        });
        out
    }

    /// First chain and tuple where the functor equations fail.
    pub fn check_equations(&self) -> Option<(Vec<usize>, Vec<u32>)> {
        let s = &*self.source;
        let t = &*self.target;
        let m = s.m();
        let top = t.stored_max_order().max(1);
        for d in 1..m {
            for objs in chains(m, d + 1) {
                let dims: Vec<usize> = objs.windows(2).map(|w| s.hom(w[0], w[1]).dim()).collect();
                let mut bad = None;
                for_each_tuple(&dims, |args| {
                    if bad.is_some() {
                        return;
                    }
                    let units: Vec<BitVec> = (0..d).map(|j| BitVec::unit(dims[j], args[j] as usize)).collect();
                    let mut lhs = BitVec::zeros(t.hom(self.objects[objs[0]], self.objects[objs[d]]).dim());
                    for_each_composition(d, top, |blocks| {
                        let mut vals = Vec::with_capacity(blocks.len());
                        let mut tobjs = vec![self.objects[objs[0]]];
                        let mut at = 0;
                        for &b in blocks {
                            vals.push(self.component(&objs[at..=at + b], &args[at..at + b]));
                            at += b;
                            tobjs.push(self.objects[objs[at]]);
                        }
                        if vals.iter().all(|v| !v.is_zero()) {
                            lhs.xor_assign(&t.mu_multi(&tobjs, &vals.iter().collect::<Vec<_>>()));
                        }
                    });
                    for j in 1..=d {
                        for st in 0..=d - j {
                            let inner = s.mu_multi(&objs[st..=st + j], &units[st..st + j].iter().collect::<Vec<_>>());
                            if inner.is_zero() {
                                continue;
                            }
                            let mut o: Vec<usize> = objs[..=st].to_vec();
                            o.extend_from_slice(&objs[st + j..]);
                            let mut a: Vec<&BitVec> = units[..st].iter().collect();
                            a.push(&inner);
                            a.extend(units[st + j..].iter());
                            lhs.xor_assign(&self.apply(&o, &a));
                        }
                    }
                    if !lhs.is_zero() {
                        bad = Some((objs.clone(), args.to_vec()));
                    }
                });
                if bad.is_some() {
                    return bad;
                }
            }
        }
        None
    }

    /// Whether F^1 induces isomorphisms on the cohomology of every hom space.
    pub fn is_quasi_isomorphism(&self) -> bool {
        let s = &*self.source;
        let t = &*self.target;
        for i in 0..s.m() {
            for k in i + 1..s.m() {
                let (a, b) = (self.objects[i], self.objects[k]);
                let ss = Splitting::new(&s.hom_complex(i, k));
                let ts = Splitting::new(&t.hom_complex(a, b));
                if ss.h_dim() != ts.h_dim() {
                    return false;
                }
                let cols: Vec<BitVec> = (0..ss.h_dim())
                    .map(|h| ts.project(&self.apply(&[i, k], &[&ss.rep(h)])))
                    .collect();
                if !Matrix::from_columns(ts.h_dim(), &cols).is_invertible() {
                    return false;
                }
            }
        }
        true
    }
}
