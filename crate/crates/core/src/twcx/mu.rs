//! Operations on twisted complexes: sums of μ over all insertions of δ.

use std::collections::BTreeMap;

use super::complex::{ext_dim, HomLayout, TwistedComplex};
use crate::ainfty::DirectedCategory;
use crate::gf2::BitVec;

/// Argument blocks grouped by source summand: `blocks[p] = [(q, component)]`.
pub(crate) type Blocks = Vec<Vec<(usize, BitVec)>>;

pub(crate) struct Walk<'a> {
    pub cxs: Vec<&'a TwistedComplex>,
    pub args: Vec<Blocks>,
    /// Longest admissible sequence of arguments for the evaluator.
    pub max_len: usize,
    /// The only sequence length at which identity elements may occur.
    pub unit_len: usize,
}

struct State<'a> {
    objs: Vec<usize>,
    elems: Vec<&'a BitVec>,
    ids: usize,
}

impl<'a> Walk<'a> {
    fn objects(&self, j: usize) -> Vec<usize> {
        self.cxs[j].summands().iter().map(|s| s.object).collect()
    }

    /// Visit every admissible sequence δ*, a_1, δ*, …, a_d, δ* with the
    /// source summand of the first element and the target of the last.
    pub fn run(&self, visit: &mut dyn FnMut(usize, usize, &[usize], &[&BitVec], usize)) {
        let d = self.args.len();
        assert!(d >= 1);
        let objs: Vec<Vec<usize>> = (0..=d).map(|j| self.objects(j)).collect();
        let outs: Vec<Vec<Vec<(usize, &BitVec)>>> = self.cxs.iter().map(|c| c.out_edges()).collect();
        let ins = self.cxs[0].in_edges();
        for p in 0..self.cxs[0].len() {
            if self.args[0][p].is_empty() {
                continue;
            }
            let mut st = State { objs: vec![objs[0][p]], elems: Vec::new(), ids: 0 };
            self.back(p, p, &mut st, &objs, &outs, &ins, visit);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn back<'s>(
        &'s self,
        start: usize,
        node: usize,
        st: &mut State<'s>,
        objs: &[Vec<usize>],
        outs: &'s [Vec<Vec<(usize, &'s BitVec)>>],
        ins: &'s [Vec<(usize, &'s BitVec)>],
        visit: &mut dyn FnMut(usize, usize, &[usize], &[&BitVec], usize),
    ) {
        // st holds the reversed prefix from `node` to `start`.
        let d = self.args.len();
        let mut fwd = State {
            objs: st.objs.iter().rev().copied().collect(),
            elems: st.elems.iter().rev().copied().collect(),
            ids: st.ids,
        };
        self.arg_step(0, start, node, &mut fwd, objs, outs, visit);
        for &(s, e) in &ins[node] {
            let is_id = objs[0][s] == objs[0][node];
            let ids = st.ids + is_id as usize;
            let len = st.elems.len() + 1;
            if !self.admissible(len + d, ids) {
                continue;
            }
            st.objs.push(objs[0][s]);
            st.elems.push(e);
            st.ids = ids;
            self.back(start, s, st, objs, outs, ins, visit);
            st.objs.pop();
            st.elems.pop();
            st.ids -= is_id as usize;
        }
    }

    fn admissible(&self, len: usize, ids: usize) -> bool {
        len <= self.max_len && (ids == 0 || len <= self.unit_len)
    }

    #[allow(clippy::too_many_arguments)]
    fn arg_step<'s>(
        &'s self,
        j: usize,
        node: usize,
        s0: usize,
        st: &mut State<'s>,
        objs: &[Vec<usize>],
        outs: &'s [Vec<Vec<(usize, &'s BitVec)>>],
        visit: &mut dyn FnMut(usize, usize, &[usize], &[&BitVec], usize),
    ) {
        let d = self.args.len();
        for (q, e) in &self.args[j][node] {
            let is_id = objs[j][node] == objs[j + 1][*q];
            let ids = st.ids + is_id as usize;
            let len = st.elems.len() + 1;
            if !self.admissible(len + (d - j - 1), ids) {
                continue;
            }
            st.objs.push(objs[j + 1][*q]);
            st.elems.push(e);
            st.ids = ids;
            self.forward(j + 1, *q, s0, st, objs, outs, visit);
            st.objs.pop();
            st.elems.pop();
            st.ids -= is_id as usize;
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn forward<'s>(
        &'s self,
        j: usize,
        node: usize,
        s0: usize,
        st: &mut State<'s>,
        objs: &[Vec<usize>],
        outs: &'s [Vec<Vec<(usize, &'s BitVec)>>],
        visit: &mut dyn FnMut(usize, usize, &[usize], &[&BitVec], usize),
    ) {
        let d = self.args.len();
        if j == d {
            visit(s0, node, &st.objs, &st.elems, st.ids);
        } else {
            self.arg_step(j, node, s0, st, objs, outs, visit);
        }
        for &(q, e) in &outs[j][node] {
            let is_id = objs[j][node] == objs[j][q];
            let ids = st.ids + is_id as usize;
            let len = st.elems.len() + 1;
            if !self.admissible(len + (d - j), ids) {
                continue;
            }
            st.objs.push(objs[j][q]);
            st.elems.push(e);
            st.ids = ids;
            self.forward(j, q, s0, st, objs, outs, visit);
            st.objs.pop();
            st.elems.pop();
            st.ids -= is_id as usize;
        }
    }
}

/// μ^L on a sequence of elements with identities adjoined on the diagonal.
pub(crate) fn eval_mu(cat: &DirectedCategory, objs: &[usize], elems: &[&BitVec], ids: usize) -> BitVec {
    let l = elems.len();
    let out_dim = ext_dim(cat, objs[0], objs[l]);
    if ids > 0 {
        if l != 2 {
            return BitVec::zeros(out_dim);
        }
        if ids == 2 {
            let mut v = BitVec::zeros(out_dim);
            if elems[0].get(0) && elems[1].get(0) {
                v.set(0, true);
            }
            return v;
        }
        let (unit, other) = if objs[0] == objs[1] { (elems[0], elems[1]) } else { (elems[1], elems[0]) };
        return if unit.get(0) { other.clone() } else { BitVec::zeros(out_dim) };
    }
    cat.mu_multi(objs, elems)
}

pub(crate) fn max_len(cat: &DirectedCategory) -> usize {
    cat.stored_max_order().max(2)
}

pub(crate) fn split_arg(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex, v: &BitVec) -> Blocks {
    let layout = HomLayout::new(cat, c1, c2);
    assert_eq!(v.len(), layout.total(), "morphism vector has wrong length");
    layout.split(v, c1.len())
}

/// μ^d in Tw(A); `args[j] ∈ hom(cxs[j], cxs[j+1])`.
pub fn tw_mu(cat: &DirectedCategory, cxs: &[&TwistedComplex], args: &[&BitVec]) -> BitVec {
    let d = args.len();
    assert_eq!(cxs.len(), d + 1);
    let out = HomLayout::new(cat, cxs[0], cxs[d]);
    let mut result = BitVec::zeros(out.total());
    let blocks: Vec<Blocks> = (0..d).map(|j| split_arg(cat, cxs[j], cxs[j + 1], args[j])).collect();
    if blocks.iter().any(|b| b.iter().all(Vec::is_empty)) {
        return result;
    }
    let walk = Walk { cxs: cxs.to_vec(), args: blocks, max_len: max_len(cat), unit_len: 2 };
    walk.run(&mut |s0, s1, objs, elems, ids| {
        let v = eval_mu(cat, objs, elems, ids);
        if !v.is_zero() {
            result.xor_at(out.offset(s0, s1), &v);
        }
    });
    result
}

/// Σ_{L≥1} μ^L(δ, …, δ), by component.
pub fn maurer_cartan_defect(cat: &DirectedCategory, c: &TwistedComplex) -> BTreeMap<(usize, usize), BitVec> {
    let objs: Vec<usize> = c.summands().iter().map(|s| s.object).collect();
    let outs = c.out_edges();
    let top = max_len(cat);
    let mut acc: BTreeMap<(usize, usize), BitVec> = BTreeMap::new();
    fn go<'a>(
        cat: &DirectedCategory,
        start: usize,
        node: usize,
        objs: &[usize],
        outs: &'a [Vec<(usize, &'a BitVec)>],
        path_objs: &mut Vec<usize>,
        elems: &mut Vec<&'a BitVec>,
        ids: usize,
        top: usize,
        acc: &mut BTreeMap<(usize, usize), BitVec>,
    ) {
        if !elems.is_empty() {
            let v = eval_mu(cat, path_objs, elems, ids);
            if !v.is_zero() {
                let len = v.len();
                acc.entry((start, node)).or_insert_with(|| BitVec::zeros(len)).xor_assign(&v);
            }
        }
        for &(q, e) in &outs[node] {
            let is_id = objs[node] == objs[q];
            let n_ids = ids + is_id as usize;
            let len = elems.len() + 1;
            if len > top || (n_ids > 0 && len > 2) {
                continue;
            }
            path_objs.push(objs[q]);
            elems.push(e);
            go(cat, start, q, objs, outs, path_objs, elems, n_ids, top, acc);
            path_objs.pop();
            elems.pop();
        }
    }
    for s in 0..c.len() {
        go(cat, s, s, &objs, &outs, &mut vec![objs[s]], &mut Vec::new(), 0, top, &mut acc);
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}
