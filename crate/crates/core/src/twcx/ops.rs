use std::collections::BTreeMap;

use super::complex::{ext_degree, ext_dim, ext_label, HomLayout, Summand, TwError, TwistedComplex};
use super::mu::tw_mu;
use crate::ainfty::DirectedCategory;
use crate::gf2::BitVec;
use crate::graded::{ChainComplex, GradedSpace, Splitting};

/// Graded basis of hom(c1, c2): labels `p>q:b` with 1-based summand indices.
pub fn hom_space(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex) -> GradedSpace {
    let g = cat.grading_group();
    let mut basis = Vec::new();
    for (p, a) in c1.summands().iter().enumerate() {
        for (q, b) in c2.summands().iter().enumerate() {
            for i in 0..ext_dim(cat, a.object, b.object) {
                let deg = ext_degree(cat, a.object, b.object, i) + a.shift - b.shift;
                basis.push((format!("{}>{}:{}", p + 1, q + 1, ext_label(cat, a.object, b.object, i)), deg));
            }
        }
    }
    GradedSpace::new_unchecked(g, basis)
}

/// The hom complex with differential μ^1 of Tw(A).
pub fn hom_complex(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex) -> ChainComplex {
    let space = hom_space(cat, c1, c2);
    let n = space.dim();
    let d = (0..n).map(|j| tw_mu(cat, &[c1, c2], &[&BitVec::unit(n, j)])).collect();
    ChainComplex::new(space, d).expect("hom complex differential squares to zero")
}

/// Cohomology dimensions of hom(c1, c2) per degree.
pub fn db_hom(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex) -> BTreeMap<i64, usize> {
    hom_complex(cat, c1, c2).cohomology().dims()
}

/// Degree of a homogeneous morphism, or `None` if it is zero or mixed.
pub fn morphism_degree(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex, f: &BitVec) -> Option<i64> {
    let space = hom_space(cat, c1, c2);
    let mut degs = f.ones().map(|i| space.degree(i));
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

pub fn is_closed(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex, f: &BitVec) -> bool {
    tw_mu(cat, &[c1, c2], &[f]).is_zero()
}

/// Identity morphism of a twisted complex.
pub fn identity(cat: &DirectedCategory, c: &TwistedComplex) -> BitVec {
    let layout = HomLayout::new(cat, c, c);
    BitVec::from_ones(layout.total(), (0..c.len()).map(|p| layout.offset(p, p)))
}

/// Cone of a closed degree-0 morphism: source[1] followed by target.
pub fn cone(cat: &DirectedCategory, a: &TwistedComplex, b: &TwistedComplex, f: &BitVec) -> Result<TwistedComplex, TwError> {
    let layout = HomLayout::new(cat, a, b);
    if f.len() != layout.total() {
        return Err(TwError::MorphismShape);
    }
    if let Some(d) = morphism_degree(cat, a, b, f) {
        if d != 0 {
            return Err(TwError::MorphismDegree(d, 0));
        }
    } else if !f.is_zero() {
        return Err(TwError::MorphismDegree(1, 0));
    }
    if !is_closed(cat, a, b, f) {
        return Err(TwError::NotClosed);
    }
    let n = a.len();
    let mut c = a.shift(1).direct_sum(b);
    for p in 0..n {
        for q in 0..b.len() {
            let blk = layout.block(f, p, q);
            if !blk.is_zero() {
                c.delta_mut().insert((p, n + q), blk);
            }
        }
    }
    c.validate(cat)?;
    Ok(c)
}

/// Cohomology classes of hom(c1, c2) with deterministic representatives.
pub fn hom_classes(cat: &DirectedCategory, c1: &TwistedComplex, c2: &TwistedComplex) -> Vec<(i64, BitVec)> {
    let hc = hom_complex(cat, c1, c2);
    let s = Splitting::new(&hc);
    (0..s.h_dim()).map(|h| (s.h_space().degree(h), s.rep(h))).collect()
}

/// T_x(y): the cone of evaluation ⊕_j x[−e_j] → y over a basis of H(hom(x,y)).
pub fn twist(cat: &DirectedCategory, x: &TwistedComplex, y: &TwistedComplex) -> TwistedComplex {
    let classes = hom_classes(cat, x, y);
    let layout = HomLayout::new(cat, x, y);
    let mut src = TwistedComplex::zero(cat.grading_group());
    for (e, _) in &classes {
        src = src.direct_sum(&x.shift(-e));
    }
    let n = src.len();
    let mut c = src.shift(1).direct_sum(y);
    for (j, (_, phi)) in classes.iter().enumerate() {
        for p in 0..x.len() {
            for q in 0..y.len() {
                let blk = layout.block(phi, p, q);
                if !blk.is_zero() {
                    c.delta_mut().insert((j * x.len() + p, n + q), blk);
                }
            }
        }
    }
    debug_assert!(c.validate(cat).is_ok(), "twist violates Maurer-Cartan");
    c
}

/// T′_x(y) = y ⊕ (⊕_j x[e_j − 1]) with δ given by a basis of H(hom(y,x)).
pub fn dual_twist(cat: &DirectedCategory, x: &TwistedComplex, y: &TwistedComplex) -> TwistedComplex {
    let classes = hom_classes(cat, y, x);
    let layout = HomLayout::new(cat, y, x);
    let mut c = y.clone();
    let n = y.len();
    for (e, _) in &classes {
        c = c.direct_sum(&x.shift(e - 1));
    }
    for (j, (_, psi)) in classes.iter().enumerate() {
        for p in 0..y.len() {
            for q in 0..x.len() {
                let blk = layout.block(psi, p, q);
                if !blk.is_zero() {
                    c.delta_mut().insert((p, n + j * x.len() + q), blk);
                }
            }
        }
    }
    debug_assert!(c.validate(cat).is_ok(), "dual twist violates Maurer-Cartan");
    c
}

/// Remove pairs of equal-object summands joined by an identity component,
/// by Gaussian elimination. Only used over categories with μ^d = 0 for
/// d ≥ 3; the result is validated and each step is skipped if it would
/// break triangularity.
pub fn strip_acyclic(cat: &DirectedCategory, c: &TwistedComplex) -> TwistedComplex {
    if cat.stored_max_order() > 2 {
        return c.clone();
    }
    let mut cur = c.clone();
    let mut skip: Vec<(usize, usize)> = Vec::new();
    loop {
        let pair = cur
            .delta()
            .iter()
            .find(|(&(p, q), _)| cur.summands()[p].object == cur.summands()[q].object && !skip.contains(&(p, q)))
            .map(|(&k, _)| k);
        let Some((a, b)) = pair else {
            return cur;
        };
        match eliminate(cat, &cur, a, b) {
            Some(next) => {
                cur = next;
                skip.clear();
            }
            None => skip.push((a, b)),
        }
    }
}

fn eliminate(cat: &DirectedCategory, c: &TwistedComplex, a: usize, b: usize) -> Option<TwistedComplex> {
    let objs: Vec<usize> = c.summands().iter().map(|s| s.object).collect();
    let mut delta: BTreeMap<(usize, usize), BitVec> = BTreeMap::new();
    let keep: Vec<usize> = (0..c.len()).filter(|&s| s != a && s != b).collect();
    for (&(p, q), v) in c.delta() {
        if keep.contains(&p) && keep.contains(&q) {
            delta.insert((p, q), v.clone());
        }
    }
    let into_b: Vec<(usize, &BitVec)> = c.delta().iter().filter(|(&(_, q), _)| q == b).map(|(&(p, _), v)| (p, v)).collect();
    let from_a: Vec<(usize, &BitVec)> = c.delta().iter().filter(|(&(p, _), _)| p == a).map(|(&(_, q), v)| (q, v)).collect();
    for &(p, x) in &into_b {
        if p == a {
            continue;
        }
        for &(q, y) in &from_a {
            if q == b {
                continue;
            }
            let v = super::mu::eval_mu(
                cat,
                &[objs[p], objs[b], objs[q]],
                &[x, y],
                (objs[p] == objs[b]) as usize + (objs[a] == objs[q]) as usize,
            );
            if v.is_zero() {
                continue;
            }
            let len = v.len();
            delta.entry((p, q)).or_insert_with(|| BitVec::zeros(len)).xor_assign(&v);
        }
    }
    // Re-sort the remaining summands stably by object.
    let mut order = keep.clone();
    order.sort_by_key(|&s| objs[s]);
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let summands: Vec<Summand> = order.iter().map(|&s| c.summands()[s]).collect();
    let mut nd = BTreeMap::new();
    for ((p, q), v) in delta {
        if v.is_zero() {
            continue;
        }
        let (np, nq) = (pos[&p], pos[&q]);
        if np >= nq {
            return None;
        }
        nd.insert((np, nq), v);
    }
    let out = TwistedComplex::new_unchecked(c.grading(), summands, nd);
    out.validate(cat).ok()?;
    Some(out)
}
