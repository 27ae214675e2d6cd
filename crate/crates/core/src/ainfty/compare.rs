//! Comparing stored categories up to a change of basis in every hom space.

use std::collections::BTreeMap;

use super::category::{chains, for_each_tuple, DirectedCategory};
use crate::gf2::{BitVec, Matrix};

/// Largest per-degree block for which GL(n, 2) is enumerated.
pub const MAX_BLOCK: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisMatch {
    /// Degree-preserving isomorphisms g_ik: hom_a(i,k) → hom_b(i,k) that
    /// intertwine every stored operation.
    Matched(BTreeMap<(usize, usize), Matrix>),
    Different,
    TooLarge,
}

impl BasisMatch {
    pub fn is_matched(&self) -> bool {
        matches!(self, BasisMatch::Matched(_))
    }
}

fn general_linear(n: usize) -> Vec<Matrix> {
    let cells = n * n;
    (0u64..1 << cells)
        .map(|bits| Matrix::from_fn(n, n, |i, j| bits >> (i * n + j) & 1 == 1))
        .filter(Matrix::is_invertible)
        .collect()
}

/// Every degree-preserving invertible map between two spaces with the same
/// graded dimensions, as a dense matrix.
fn candidates(a: &crate::graded::GradedSpace, b: &crate::graded::GradedSpace, gl: &mut BTreeMap<usize, Vec<Matrix>>) -> Vec<Matrix> {
    let n = a.dim();
    let mut out = vec![Matrix::zeros(n, n)];
    for (deg, k) in a.dims() {
        let rows = b.indices_in_degree(deg);
        let cols = a.indices_in_degree(deg);
        let blocks = gl.entry(k).or_insert_with(|| general_linear(k)).clone();
        let mut next = Vec::with_capacity(out.len() * blocks.len());
        for m in &out {
            for blk in &blocks {
                let mut m = m.clone();
                for (i, &r) in rows.iter().enumerate() {
                    for (j, &c) in cols.iter().enumerate() {
                        m.set(r, c, blk.get(i, j));
                    }
                }
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// Search for basis changes identifying `a` with `b`.
pub fn match_bases(a: &DirectedCategory, b: &DirectedCategory) -> BasisMatch {
    if a.m() != b.m() || a.grading_group() != b.grading_group() || a.hom_table() != b.hom_table() {
        return BasisMatch::Different;
    }
    let m = a.m();
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |k| (i, k))).collect();
    pairs.sort_by_key(|&(i, k)| (k - i, i));
    for &(i, k) in &pairs {
        if a.hom(i, k).dims().values().any(|&d| d > MAX_BLOCK) {
            return BasisMatch::TooLarge;
        }
    }
    let mut gl = BTreeMap::new();
    let cands: Vec<Vec<Matrix>> = pairs.iter().map(|&(i, k)| candidates(a.hom(i, k), b.hom(i, k), &mut gl)).collect();
    let mut chosen: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
    if search(a, b, &pairs, &cands, 0, &mut chosen) {
        BasisMatch::Matched(chosen)
    } else {
        BasisMatch::Different
    }
}

/// Pairs (u, w) that g_ik must satisfy as g·u = w, given all shorter maps.
fn constraints(
    a: &DirectedCategory,
    b: &DirectedCategory,
    i: usize,
    k: usize,
    chosen: &BTreeMap<(usize, usize), Matrix>,
) -> Vec<(BitVec, BitVec)> {
    let mut out = Vec::new();
    let top = a.stored_max_order().max(b.stored_max_order());
    for d in 2..=top.min(k - i) {
        for mid in chains(k - i - 1, d - 1) {
            let objs: Vec<usize> = std::iter::once(i).chain(mid.iter().map(|&x| x + i + 1)).chain(std::iter::once(k)).collect();
            let dims: Vec<usize> = objs.windows(2).map(|w| a.hom_dim(w[0], w[1])).collect();
            for_each_tuple(&dims, |args| {
                let units: Vec<BitVec> = (0..d).map(|j| BitVec::unit(dims[j], args[j] as usize)).collect();
                let u = a.mu_multi(&objs, &units.iter().collect::<Vec<_>>());
                let images: Vec<BitVec> = (0..d).map(|j| chosen[&(objs[j], objs[j + 1])].mul_vec(&units[j])).collect();
                let w = b.mu_multi(&objs, &images.iter().collect::<Vec<_>>());
                out.push((u, w));
            });
        }
    }
    out
}

fn search(
    a: &DirectedCategory,
    b: &DirectedCategory,
    pairs: &[(usize, usize)],
    cands: &[Vec<Matrix>],
    at: usize,
    chosen: &mut BTreeMap<(usize, usize), Matrix>,
) -> bool {
    let Some(&(i, k)) = pairs.get(at) else {
        return true;
    };
    let cons = constraints(a, b, i, k, chosen);
    let n = a.hom_dim(i, k);
    let d1: Vec<(BitVec, BitVec)> = (0..n)
        .map(|x| {
            let e = BitVec::unit(n, x);
            (a.mu_multi(&[i, k], &[&e]), b.mu_multi(&[i, k], &[&e]))
        })
        .collect();
    for g in &cands[at] {
        if !cons.iter().all(|(u, w)| g.mul_vec(u) == *w) {
            continue;
        }
        // g μ¹_a = μ¹_b g
        if !(0..n).all(|x| g.mul_vec(&d1[x].0) == b.mu_multi(&[i, k], &[&g.column(x)])) {
            continue;
        }
        chosen.insert((i, k), g.clone());
        if search(a, b, pairs, cands, at + 1, chosen) {
            return true;
        }
        chosen.remove(&(i, k));
    }
    false
}

/// Same objects, hom spaces and stored operations, element for element.
pub fn tables_equal(a: &DirectedCategory, b: &DirectedCategory) -> bool {
    a.grading_group() == b.grading_group()
        && a.m() == b.m()
        && a.hom_table() == b.hom_table()
        && match_identity(a, b)
}

fn match_identity(a: &DirectedCategory, b: &DirectedCategory) -> bool {
    let mut ea: Vec<_> = a.entries().map(|(c, x, v)| (c.to_vec(), x.to_vec(), v.clone())).collect();
    let mut eb: Vec<_> = b.entries().map(|(c, x, v)| (c.to_vec(), x.to_vec(), v.clone())).collect();
    ea.sort_by(|p, q| (&p.0, &p.1).cmp(&(&q.0, &q.1)));
    eb.sort_by(|p, q| (&p.0, &p.1).cmp(&(&q.0, &q.1)));
    ea.len() == eb.len() && ea.iter().zip(&eb).all(|(p, q)| p.0 == q.0 && p.1 == q.1 && p.2 == q.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{from_quiver, QuiverPresentation};
    use crate::graded::Grading;

    fn cp2() -> DirectedCategory {
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2", "X3"]);
        for (n, s, t) in [("a1", "X1", "X2"), ("b1", "X1", "X2"), ("a2", "X2", "X3"), ("b2", "X2", "X3")] {
            q.add_arrow(n, s, t, 0).unwrap();
        }
        q.add_relation("a2*a1 = b2*b1").unwrap();
        q.add_relation("b2*a1 = a2*b1").unwrap();
        from_quiver(&q).unwrap()
    }

    #[test]
    fn self_match() {
        let c = cp2();
        assert!(match_bases(&c, &c).is_matched());
        assert!(tables_equal(&c, &c));
    }

    #[test]
    fn zero_products_are_different() {
        let c = cp2();
        let mut d = c.clone();
        let entries: Vec<(Vec<usize>, Vec<u32>)> =
            d.entries().map(|(o, a, _)| (o.iter().map(|&x| x as usize).collect(), a.to_vec())).collect();
        for (objs, args) in entries {
            let n = d.hom_dim(objs[0], objs[2]);
            d.set_mu(&objs, &args, BitVec::zeros(n)).unwrap();
        }
        assert_eq!(match_bases(&c, &d), BasisMatch::Different);
        assert!(!tables_equal(&c, &d));
    }

    #[test]
    fn swapped_arrows_match() {
        let c = cp2();
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2", "X3"]);
        for (n, s, t) in [("b1", "X1", "X2"), ("a1", "X1", "X2"), ("a2", "X2", "X3"), ("b2", "X2", "X3")] {
            q.add_arrow(n, s, t, 0).unwrap();
        }
        q.add_relation("a2*a1 = b2*b1").unwrap();
        q.add_relation("b2*a1 = a2*b1").unwrap();
        let d = from_quiver(&q).unwrap();
        assert!(match_bases(&c, &d).is_matched());
    }
}
