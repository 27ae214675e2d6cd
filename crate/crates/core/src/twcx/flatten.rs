use std::collections::BTreeMap;

use super::complex::{HomLayout, Summand, TwistedComplex};
use super::mu::{split_arg, Walk};
use super::ops::identity;
use crate::ainfty::{DirectedCategory, Transfer};
use crate::gf2::BitVec;

/// The functor Tw(B) → Tw(A) induced by the inclusion of a minimal model B
/// of a full subcategory of Tw(A) on `images`.
pub struct Embedding<'a> {
    pub base: &'a DirectedCategory,
    pub images: &'a [TwistedComplex],
    pub transfer: &'a Transfer,
}

impl Embedding<'_> {
    pub fn model(&self) -> &DirectedCategory {
        &self.transfer.model
    }

    fn offsets(&self, z: &TwistedComplex) -> Vec<usize> {
        let mut out = Vec::with_capacity(z.len() + 1);
        let mut at = 0;
        for s in z.summands() {
            out.push(at);
            at += self.images[s.object].len();
        }
        out.push(at);
        out
    }

    /// I on a path of model elements, in hom(Y_first, Y_last).
    fn apply(&self, objs: &[usize], elems: &[&BitVec], ids: usize) -> BitVec {
        let (a, b) = (&self.images[objs[0]], &self.images[*objs.last().unwrap()]);
        if ids > 0 {
            debug_assert_eq!(elems.len(), 1);
            let id = identity(self.base, a);
            return if elems[0].get(0) { id } else { BitVec::zeros(id.len()) };
        }
        let n = HomLayout::new(self.base, a, b).total();
        self.transfer.inclusion_vec(objs, elems, n)
    }

    /// Scatter v ∈ hom(Y_a, Y_b) into the block (p, q) of a flat layout.
    #[allow(clippy::too_many_arguments)]
    fn scatter(&self, a: usize, b: usize, v: &BitVec, op: usize, oq: usize, layout: &HomLayout, out: &mut BitVec) {
        let (ya, yb) = (&self.images[a], &self.images[b]);
        let inner = HomLayout::new(self.base, ya, yb);
        for (u, blocks) in inner.split(v, ya.len()).into_iter().enumerate() {
            for (w, comp) in blocks {
                out.xor_at(layout.offset(op + u, oq + w), &comp);
            }
        }
    }

    /// The twisted complex over A represented by `z` over the model.
    pub fn flatten(&self, z: &TwistedComplex) -> TwistedComplex {
        let off = self.offsets(z);
        let mut summands = Vec::new();
        let mut delta: BTreeMap<(usize, usize), BitVec> = BTreeMap::new();
        for (p, s) in z.summands().iter().enumerate() {
            let y = &self.images[s.object];
            summands.extend(y.summands().iter().map(|t| Summand { object: t.object, shift: t.shift + s.shift }));
            for (&(u, w), v) in y.delta() {
                delta.insert((off[p] + u, off[p] + w), v.clone());
            }
        }
        let objs: Vec<usize> = z.summands().iter().map(|s| s.object).collect();
        let outs = z.out_edges();
        let top = self.model().m().max(1);
        let mut path_objs = Vec::new();
        let mut elems = Vec::new();
        for p in 0..z.len() {
            path_objs.push(objs[p]);
            self.paths(p, p, &objs, &outs, &mut path_objs, &mut elems, 0, top, &off, &mut delta);
            path_objs.pop();
        }
        TwistedComplex::new_unchecked(z.grading(), summands, delta)
    }

    #[allow(clippy::too_many_arguments)]
    fn paths<'e>(
        &self,
        start: usize,
        node: usize,
        objs: &[usize],
        outs: &'e [Vec<(usize, &'e BitVec)>],
        path_objs: &mut Vec<usize>,
        elems: &mut Vec<&'e BitVec>,
        ids: usize,
        top: usize,
        off: &[usize],
        delta: &mut BTreeMap<(usize, usize), BitVec>,
    ) {
        if !elems.is_empty() {
            let v = self.apply(path_objs, elems, ids);
            if !v.is_zero() {
                let (a, b) = (objs[start], objs[node]);
                let (ya, yb) = (&self.images[a], &self.images[b]);
                let inner = HomLayout::new(self.base, ya, yb);
                for (u, blocks) in inner.split(&v, ya.len()).into_iter().enumerate() {
                    for (w, comp) in blocks {
                        let len = comp.len();
                        delta.entry((off[start] + u, off[node] + w)).or_insert_with(|| BitVec::zeros(len)).xor_assign(&comp);
                    }
                }
            }
        }
        for &(q, e) in &outs[node] {
            let is_id = objs[node] == objs[q];
            let n_ids = ids + is_id as usize;
            let len = elems.len() + 1;
            if len > top || (n_ids > 0 && len > 1) {
                continue;
            }
            path_objs.push(objs[q]);
            elems.push(e);
            self.paths(start, q, objs, outs, path_objs, elems, n_ids, top, off, delta);
            path_objs.pop();
            elems.pop();
        }
    }

    /// Image of φ ∈ hom(p, q) over the model in hom(flatten p, flatten q).
    pub fn flatten_morphism(&self, p: &TwistedComplex, q: &TwistedComplex, phi: &BitVec) -> BitVec {
        let (fp, fq) = (self.flatten(p), self.flatten(q));
        let layout = HomLayout::new(self.base, &fp, &fq);
        let mut out = BitVec::zeros(layout.total());
        if phi.is_zero() {
            return out;
        }
        let (op, oq) = (self.offsets(p), self.offsets(q));
        let walk = Walk {
            cxs: vec![p, q],
            args: vec![split_arg(self.model(), p, q, phi)],
            max_len: self.model().m().max(1),
            unit_len: 1,
        };
        walk.run(&mut |s0, s1, objs, elems, ids| {
            let v = self.apply(objs, elems, ids);
            if !v.is_zero() {
                self.scatter(objs[0], *objs.last().unwrap(), &v, op[s0], oq[s1], &layout, &mut out);
            }
        });
        out
    }
}
