//! Normalized Hochschild cochains of a directed A∞-category.
//!
//! A basis cochain is either a multiple of the identity of one object (length
//! 0) or a single matrix coefficient of h^d on a strictly increasing chain:
//! the inputs are basis elements `args` and the output is basis element
//! `out`. Its degree is deg(out) − Σ deg(args) + d.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::ainfty::{chains, for_each_tuple, DirectedCategory};
use crate::gf2::{BitVec, Matrix};
use crate::graded::{ChainComplex, GradedSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HochschildError {
    #[error("cochain space has dimension {0}, above the bound {1}")]
    TooLarge(usize, usize),
}

struct Block {
    objs: Vec<usize>,
    arg_dims: Vec<usize>,
    out_dim: usize,
    offset: usize,
}

/// Index of the cochain basis.
pub struct CochainLayout {
    m: usize,
    blocks: Vec<Block>,
    by_chain: FxHashMap<Vec<usize>, usize>,
    total: usize,
}

impl CochainLayout {
    pub fn new(c: &DirectedCategory) -> Self {
        let m = c.m();
        let mut blocks = Vec::new();
        let mut by_chain = FxHashMap::default();
        let mut offset = m;
        for len in 2..=m {
            for objs in chains(m, len) {
                let arg_dims: Vec<usize> = objs.windows(2).map(|w| c.hom_dim(w[0], w[1])).collect();
                let out_dim = c.hom_dim(objs[0], objs[len - 1]);
                let size = arg_dims.iter().product::<usize>() * out_dim;
                if size == 0 {
                    continue;
                }
                by_chain.insert(objs.clone(), blocks.len());
                blocks.push(Block { objs, arg_dims, out_dim, offset });
                offset += size;
            }
        }
        CochainLayout { m, blocks, by_chain, total: offset }
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    fn index(&self, objs: &[usize], args: &[u32], out: usize) -> Option<usize> {
        let b = &self.blocks[*self.by_chain.get(objs)?];
        let mut r = 0;
        for (a, d) in args.iter().zip(&b.arg_dims) {
            r = r * d + *a as usize;
        }
        Some(b.offset + r * b.out_dim + out)
    }

    /// Length (number of inputs) of every basis cochain.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = vec![0; self.m];
        for b in &self.blocks {
            out.resize(b.offset, 0);
            let size = b.arg_dims.iter().product::<usize>() * b.out_dim;
            out.extend(std::iter::repeat_n(b.objs.len() - 1, size));
        }
        out
    }

    fn space(&self, c: &DirectedCategory) -> GradedSpace {
        let g = c.grading_group();
        let mut basis: Vec<(String, i64)> = (0..self.m).map(|i| (format!("id[{}]", c.name(i)), 0)).collect();
        for b in &self.blocks {
            let d = b.objs.len() - 1;
            let out_sp = c.hom(b.objs[0], b.objs[d]);
            for_each_tuple(&b.arg_dims, |args| {
                let mut in_deg = 0;
                let mut names = Vec::with_capacity(d);
                for (j, &a) in args.iter().enumerate() {
                    let h = c.hom(b.objs[j], b.objs[j + 1]);
                    in_deg += h.degree(a as usize);
                    names.push(h.label(a as usize));
                }
                let chain: Vec<&str> = b.objs.iter().map(|&o| c.name(o)).collect();
                for o in 0..b.out_dim {
                    basis.push((
                        format!("h[{}]({})->{}", chain.join(","), names.join(","), out_sp.label(o)),
                        g.norm(out_sp.degree(o) - in_deg + d as i64),
                    ));
                }
            });
        }
        GradedSpace::new_unchecked(g, basis)
    }
}

type Entry = (Vec<usize>, Vec<u32>, BitVec);

/// The differential, restricted to terms whose inner or outer operation has
/// order in `orders`.
fn differential(c: &DirectedCategory, layout: &CochainLayout, orders: &dyn Fn(usize) -> bool) -> Vec<Vec<u32>> {
    let entries: Vec<Entry> = c
        .entries()
        .filter(|(k, _, _)| orders(k.len() - 1))
        .map(|(k, a, v)| (k.iter().map(|&x| x as usize).collect(), a.to_vec(), v.clone()))
        .collect();
    // Outer: μ entries by (K[p], K[p+1], A[p]).
    let mut outer: FxHashMap<(usize, usize, u32), Vec<(usize, usize)>> = FxHashMap::default();
    // Inner: μ entries by (K[0], K[last], output bit).
    let mut inner: FxHashMap<(usize, usize, usize), Vec<usize>> = FxHashMap::default();
    for (e, (k, a, v)) in entries.iter().enumerate() {
        for p in 0..a.len() {
            outer.entry((k[p], k[p + 1], a[p])).or_default().push((e, p));
        }
        for bit in v.ones() {
            inner.entry((k[0], k[k.len() - 1], bit)).or_default().push(e);
        }
    }
    let n = layout.dim();
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
    // Units: (∂ id_X)(a) = μ²(id, a) + μ²(a, id) summed over the ends equal to X.
    if orders(2) {
        for b in &layout.blocks {
            if b.objs.len() != 2 {
                continue;
            }
            let (s, t) = (b.objs[0], b.objs[1]);
            for x in 0..b.arg_dims[0] {
                let idx = b.offset + x * b.out_dim + x;
                cols[s].push(idx as u32);
                cols[t].push(idx as u32);
            }
        }
    }
    for b in &layout.blocks {
        let d = b.objs.len() - 1;
        let (s, t) = (b.objs[0], b.objs[d]);
        let mut col_args: Vec<Vec<u32>> = Vec::new();
        for_each_tuple(&b.arg_dims, |args| col_args.push(args.to_vec()));
        for (r, args) in col_args.iter().enumerate() {
            for o in 0..b.out_dim {
                let col = b.offset + r * b.out_dim + o;
                let target = &mut cols[col];
                // μ(…, h(…), …)
                if let Some(list) = outer.get(&(s, t, o as u32)) {
                    for &(e, p) in list {
                        let (k, a, v) = &entries[e];
                        let objs: Vec<usize> = k[..=p].iter().chain(&b.objs[1..]).chain(&k[p + 2..]).copied().collect();
                        let new_args: Vec<u32> = a[..p].iter().chain(args).chain(&a[p + 1..]).copied().collect();
                        for bit in v.ones() {
                            let i = layout.index(&objs, &new_args, bit).expect("outer term lands in the layout");
                            target.push(i as u32);
                        }
                    }
                }
                // h(…, μ(…), …)
                for p in 0..d {
                    let Some(list) = inner.get(&(b.objs[p], b.objs[p + 1], args[p] as usize)) else {
                        continue;
                    };
                    for &e in list {
                        let (k, a, _) = &entries[e];
                        let objs: Vec<usize> =
                            b.objs[..=p].iter().chain(&k[1..k.len() - 1]).chain(&b.objs[p + 1..]).copied().collect();
                        let new_args: Vec<u32> = args[..p].iter().chain(a).chain(&args[p + 1..]).copied().collect();
                        let i = layout.index(&objs, &new_args, o).expect("inner term lands in the layout");
                        target.push(i as u32);
                    }
                }
            }
        }
    }
    for col in &mut cols {
        reduce_mod2(col);
    }
    cols
}

/// Sort and cancel repeated indices in pairs.
fn reduce_mod2(col: &mut Vec<u32>) {
    col.sort_unstable();
    let mut out = Vec::with_capacity(col.len());
    for &x in col.iter() {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *col = out;
}

/// Rank of a sparse matrix given by sorted column supports.
fn sparse_rank(cols: Vec<Vec<u32>>) -> usize {
    let mut pivots: FxHashMap<u32, Vec<u32>> = FxHashMap::default();
    for mut col in cols {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(p) => col = sym_diff(&col, p),
                None => {
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// The normalized Hochschild complex CC(A,A).
pub fn cc_complex(c: &DirectedCategory) -> ChainComplex {
    let layout = CochainLayout::new(c);
    let n = layout.dim();
    let d = differential(c, &layout, &|_| true).into_iter().map(|col| BitVec::from_ones(n, col.into_iter().map(|i| i as usize))).collect();
    ChainComplex::new(layout.space(c), d).expect("Hochschild differential squares to zero")
}

/// HH^*(A,A) dimensions per degree, by sparse elimination.
pub fn hh(c: &DirectedCategory) -> BTreeMap<i64, usize> {
    let layout = CochainLayout::new(c);
    let degrees = layout.space(c).degrees().to_vec();
    let d = differential(c, &layout, &|_| true);
    let mut by_degree: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (col, deg) in d.into_iter().zip(&degrees) {
        debug_assert!(col.iter().all(|&r| degrees[r as usize] == c.grading_group().norm(deg + 1)));
        by_degree.entry(*deg).or_default().push(col);
        *dims.entry(*deg).or_insert(0) += 1;
    }
    let ranks: BTreeMap<i64, usize> = by_degree.into_iter().map(|(k, cols)| (k, sparse_rank(cols))).collect();
    let g = c.grading_group();
    let mut out = BTreeMap::new();
    for (&k, &n) in &dims {
        let h = n - ranks[&k] - ranks.get(&g.norm(k - 1)).copied().unwrap_or(0);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

/// E1 of the length filtration: cohomology of each length piece under the
/// part of the differential coming from μ^1. Keys are (length, degree).
pub fn e1_length(c: &DirectedCategory) -> BTreeMap<(usize, i64), usize> {
    let layout = CochainLayout::new(c);
    let space = layout.space(c);
    let d = differential(c, &layout, &|k| k == 1);
    let lengths = layout.lengths();
    let mut out = BTreeMap::new();
    let max_len = lengths.iter().copied().max().unwrap_or(0);
    for len in 0..=max_len {
        let idx: Vec<usize> = (0..layout.dim()).filter(|&i| lengths[i] == len).collect();
        if idx.is_empty() {
            continue;
        }
        let pos: FxHashMap<usize, usize> = idx.iter().enumerate().map(|(j, &i)| (i, j)).collect();
        let sub = GradedSpace::new_unchecked(
            c.grading_group(),
            idx.iter().map(|&i| (space.label(i).to_string(), space.degree(i))).collect(),
        );
        let cols: Vec<BitVec> = idx
            .iter()
            .map(|&i| {
                debug_assert!(d[i].iter().all(|&r| lengths[r as usize] == len));
                BitVec::from_ones(idx.len(), d[i].iter().map(|&r| pos[&(r as usize)]))
            })
            .collect();
        let cx = ChainComplex::new(sub, cols).expect("μ^1 part squares to zero");
        for (deg, dim) in cx.cohomology().dims() {
            out.insert((len, deg), dim);
        }
    }
    out
}

/// Chain-space dimensions per (length, degree), counted directly from the
/// graded hom dimensions: m identities in length 0, and for each chain the
/// product of input and output dimensions with the matching degree.
pub fn length_piece_count(c: &DirectedCategory) -> BTreeMap<(usize, i64), usize> {
    let g = c.grading_group();
    let m = c.m();
    let mut out = BTreeMap::new();
    if m > 0 {
        out.insert((0, 0), m);
    }
    for len in 2..=m {
        for objs in chains(m, len) {
            let d = len - 1;
            // Distribution of Σ input degrees.
            let mut acc: BTreeMap<i64, usize> = BTreeMap::from([(0, 1)]);
            for w in objs.windows(2) {
                let dims = c.hom(w[0], w[1]).dims();
                let mut next = BTreeMap::new();
                for (s, n) in &acc {
                    for (k, dk) in &dims {
                        *next.entry(s + k).or_insert(0) += n * dk;
                    }
                }
                acc = next;
            }
            for (o, dout) in c.hom(objs[0], objs[d]).dims() {
                for (s, n) in &acc {
                    let deg = g.norm(o - s + d as i64);
                    *out.entry((d, deg)).or_insert(0) += n * dout;
                }
            }
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Dense reference computation of HH, evaluating the differential formula
/// on every basis cochain with identities treated as explicit elements.
pub fn hh_oracle(c: &DirectedCategory, bound: usize) -> Result<BTreeMap<i64, usize>, HochschildError> {
    let g = c.grading_group();
    let m = c.m();
    // Every basis cochain: (objects, inputs, output); identities have no inputs.
    let mut basis: Vec<(Vec<usize>, Vec<usize>, usize, i64)> = (0..m).map(|x| (vec![x], vec![], 0, 0)).collect();
    let mut stack: Vec<Vec<usize>> = (0..m).map(|x| vec![x]).collect();
    let mut seqs = Vec::new();
    while let Some(s) = stack.pop() {
        let last = *s.last().unwrap();
        for nxt in last + 1..m {
            let mut t = s.clone();
            t.push(nxt);
            seqs.push(t.clone());
            stack.push(t);
        }
    }
    seqs.sort();
    for objs in &seqs {
        let d = objs.len() - 1;
        let dims: Vec<usize> = objs.windows(2).map(|w| c.hom_dim(w[0], w[1])).collect();
        let out_sp = c.hom(objs[0], objs[d]);
        let mut tuples = Vec::new();
        for_each_tuple(&dims, |t| tuples.push(t.iter().map(|&x| x as usize).collect::<Vec<_>>()));
        for args in tuples {
            let in_deg: i64 = args.iter().enumerate().map(|(j, &a)| c.hom(objs[j], objs[j + 1]).degree(a)).sum();
            for o in 0..out_sp.dim() {
                basis.push((objs.clone(), args.clone(), o, g.norm(out_sp.degree(o) - in_deg + d as i64)));
            }
        }
        if basis.len() > bound {
            return Err(HochschildError::TooLarge(basis.len(), bound));
        }
    }
    let n = basis.len();
    let ext_dim = |a: usize, b: usize| if a == b { 1 } else { c.hom_dim(a, b) };
    // μ with identities adjoined on the diagonal.
    let ext_mu = |objs: &[usize], args: &[BitVec]| -> BitVec {
        let l = args.len();
        let out = ext_dim(objs[0], objs[l]);
        let diag: Vec<bool> = objs.windows(2).map(|w| w[0] == w[1]).collect();
        if diag.iter().any(|&x| x) {
            if l != 2 {
                return BitVec::zeros(out);
            }
            let (u, other) = if diag[0] { (&args[0], &args[1]) } else { (&args[1], &args[0]) };
            if diag[0] && diag[1] {
                return if args[0].get(0) && args[1].get(0) { BitVec::unit(1, 0) } else { BitVec::zeros(1) };
            }
            return if u.get(0) { other.clone() } else { BitVec::zeros(out) };
        }
        let refs: Vec<&BitVec> = args.iter().collect();
        c.mu_multi(objs, &refs)
    };
    // A basis cochain evaluated on a chain of vectors.
    let eval_h = |h: &(Vec<usize>, Vec<usize>, usize, i64), objs: &[usize], args: &[BitVec]| -> BitVec {
        let out = ext_dim(objs[0], objs[objs.len() - 1]);
        if h.0 != objs {
            return BitVec::zeros(out);
        }
        if h.1.iter().zip(args).all(|(&i, v)| v.get(i)) {
            if h.1.is_empty() {
                BitVec::unit(1, 0)
            } else {
                BitVec::unit(out, h.2)
            }
        } else {
            BitVec::zeros(out)
        }
    };
    let row_index: FxHashMap<(Vec<usize>, Vec<usize>, usize), usize> =
        basis.iter().enumerate().map(|(i, (o, a, out, _))| ((o.clone(), a.clone(), *out), i)).collect();
    let mut dmat = Matrix::zeros(n, n);
    for (col, h) in basis.iter().enumerate() {
        for objs in &seqs {
            let d = objs.len() - 1;
            let dims: Vec<usize> = objs.windows(2).map(|w| c.hom_dim(w[0], w[1])).collect();
            let mut tuples = Vec::new();
            for_each_tuple(&dims, |t| tuples.push(t.iter().map(|&x| x as usize).collect::<Vec<_>>()));
            for args in tuples {
                let vecs: Vec<BitVec> = (0..d).map(|j| BitVec::unit(dims[j], args[j])).collect();
                let mut total = BitVec::zeros(c.hom_dim(objs[0], objs[d]));
                for i in 0..=d {
                    for j in 0..=d - i {
                        // h on inputs i..i+j (objects i..=i+j), then μ around it.
                        let h_objs = &objs[i..=i + j];
                        let hv = eval_h(h, h_objs, &vecs[i..i + j]);
                        if !hv.is_zero() {
                            let mut o2: Vec<usize> = objs[..=i].to_vec();
                            o2.extend_from_slice(&objs[i + j..]);
                            let mut a2: Vec<BitVec> = vecs[..i].to_vec();
                            a2.push(hv);
                            a2.extend_from_slice(&vecs[i + j..]);
                            if !a2.is_empty() {
                                total.xor_assign(&ext_mu(&o2, &a2));
                            }
                        }
                        // μ^j on inputs i..i+j, then h around it.
                        if j >= 1 {
                            let mv = ext_mu(&objs[i..=i + j], &vecs[i..i + j]);
                            if !mv.is_zero() {
                                let mut o2: Vec<usize> = objs[..=i].to_vec();
                                o2.extend_from_slice(&objs[i + j..]);
                                let mut a2: Vec<BitVec> = vecs[..i].to_vec();
                                a2.push(mv);
                                a2.extend_from_slice(&vecs[i + j..]);
                                total.xor_assign(&eval_h(h, &o2, &a2));
                            }
                        }
                    }
                }
                for bit in total.ones() {
                    dmat.set(row_index[&(objs.clone(), args.clone(), bit)], col, true);
                }
            }
        }
    }
    // dim H^r = dim C^r − rank d_r − rank d_{r−1}.
    let mut degrees: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        degrees.entry(b.3).or_default().push(i);
    }
    let rank_from = |r: i64| -> usize {
        let Some(cols) = degrees.get(&r) else { return 0 };
        let Some(rows) = degrees.get(&g.norm(r + 1)) else { return 0 };
        Matrix::from_fn(rows.len(), cols.len(), |a, b| dmat.get(rows[a], cols[b])).rank()
    };
    let mut out = BTreeMap::new();
    for (&r, idx) in &degrees {
        let h = idx.len() - rank_from(r) - rank_from(g.norm(r - 1));
        if h > 0 {
            out.insert(r, h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Dynkin;

    #[test]
    fn a2_complex() {
        let c = Dynkin::A(2).category(0);
        let cc = cc_complex(&c);
        assert_eq!(cc.space().dims(), BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!(cc.column(0), &BitVec::unit(3, 2));
        assert_eq!(cc.column(1), &BitVec::unit(3, 2));
        assert_eq!(hh(&c), BTreeMap::from([(0, 1)]));
        assert_eq!(hh_oracle(&c, 1000).unwrap(), hh(&c));
    }

    #[test]
    fn one_object() {
        let c = Dynkin::A(1).category(0);
        assert_eq!(hh(&c), BTreeMap::from([(0, 1)]));
        assert_eq!(e1_length(&c), BTreeMap::from([((0, 0), 1)]));
    }

    #[test]
    fn oracle_bound() {
        let c = Dynkin::A(3).category(0);
        assert!(matches!(hh_oracle(&c, 2), Err(HochschildError::TooLarge(_, 2))));
    }
}
