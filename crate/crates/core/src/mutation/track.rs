use std::collections::BTreeMap;

use super::{run_script_steps, Move, MutationError, Script, Step};
use crate::ainfty::DirectedCategory;
use crate::gf2::{BitVec, Matrix};
use crate::graded::Splitting;
use crate::twcx::{
    cone, dual_twist, hom_classes, hom_complex, hom_space, strip_acyclic, tw_mu, twist, Embedding, HomLayout, Summand,
    TwistedComplex,
};

fn fail(reason: impl Into<String>) -> MutationError {
    MutationError::Step { step: 0, mv: String::new(), reason: reason.into() }
}

/// Old generators written over the mutated category.
fn generator_images(b: &DirectedCategory, mv: &Move) -> Vec<TwistedComplex> {
    let m = b.m();
    let y = |i: usize| TwistedComplex::object(b, i);
    match mv {
        Move::Shift(_) => unreachable!("shift steps are relabelled directly"),
        Move::C => {
            let mut out = vec![y(m - 1)];
            out.extend((1..m).map(|k| dual_twist(b, &y(m - 1), &y(k - 1))));
            out
        }
        Move::R => {
            let mut out: Vec<_> = (0..m - 2).map(y).collect();
            out.push(y(m - 1));
            out.push(dual_twist(b, &y(m - 1), &y(m - 2)));
            out
        }
        Move::CInv => {
            let mut out: Vec<_> = (0..m - 1).map(|k| twist(b, &y(0), &y(k + 1))).collect();
            out.push(y(0));
            out
        }
        Move::RInv => {
            let mut out: Vec<_> = (0..m - 2).map(y).collect();
            out.push(twist(b, &y(m - 2), &y(m - 1)));
            out.push(y(m - 2));
            out
        }
    }
}

fn is_iso(a: &DirectedCategory, x: &TwistedComplex, y: &TwistedComplex, f: &BitVec) -> bool {
    match cone(a, x, y, f) {
        Ok(c) => hom_complex(a, &c, &c).cohomology().total() == 0,
        Err(_) => false,
    }
}

/// Copy the blocks of v ∈ hom(c1, c2) into a larger layout at summand offsets.
fn embed_blocks(
    a: &DirectedCategory,
    c1: &TwistedComplex,
    c2: &TwistedComplex,
    v: &BitVec,
    o1: usize,
    o2: usize,
    big: &HomLayout,
    out: &mut BitVec,
) {
    let inner = HomLayout::new(a, c1, c2);
    for (u, blocks) in inner.split(v, c1.len()).into_iter().enumerate() {
        for (w, comp) in blocks {
            out.xor_at(big.offset(o1 + u, o2 + w), &comp);
        }
    }
}

fn prefix(t: &TwistedComplex, n: usize) -> TwistedComplex {
    let delta = t.delta().iter().filter(|(&(_, q), _)| q < n).map(|(&k, v)| (k, v.clone())).collect();
    TwistedComplex::new_unchecked(t.grading(), t.summands()[..n].to_vec(), delta)
}

/// Express t over the model of one step.
fn lift(step: &Step, t: &TwistedComplex) -> Result<TwistedComplex, MutationError> {
    let a = &step.before;
    if let Move::Shift(s) = &step.mv {
        let summands = t.summands().iter().map(|x| Summand { object: x.object, shift: x.shift - s[x.object] }).collect();
        return Ok(TwistedComplex::new_unchecked(t.grading(), summands, t.delta().clone()));
    }
    let tr = step.transfer.as_ref().expect("non-shift steps carry a transfer");
    let b = &tr.model;
    let emb = Embedding { base: a, images: &step.images, transfer: tr };
    let gens = generator_images(b, &step.mv);
    let mut alphas = Vec::with_capacity(gens.len());
    for (i, z) in gens.iter().enumerate() {
        let x = TwistedComplex::object(a, i);
        let fz = emb.flatten(z);
        let classes: Vec<BitVec> = hom_classes(a, &x, &fz).into_iter().filter(|(d, _)| *d == 0).map(|(_, v)| v).collect();
        match classes.as_slice() {
            [f] if is_iso(a, &x, &fz, f) => alphas.push(f.clone()),
            _ => return Err(fail(format!("generator {} has no image isomorphic to it", i + 1))),
        }
    }
    if t.is_empty() {
        return Ok(TwistedComplex::zero(b.grading_group()));
    }
    let first = t.summands()[0];
    let mut z = gens[first.object].shift(first.shift);
    let mut alpha = alphas[first.object].clone();
    for n in 1..t.len() {
        let s = t.summands()[n];
        let pre = prefix(t, n);
        let xn = TwistedComplex::new_unchecked(t.grading(), vec![s], BTreeMap::new());
        let zn = gens[s.object].shift(s.shift);
        let fzn = emb.flatten(&zn);
        let an = &alphas[s.object];
        let fz = emb.flatten(&z);
        // g: pre[−1] → X_n[s_n] collects the δ components into summand n.
        let pm = pre.shift(-1);
        let gl = HomLayout::new(a, &pm, &xn);
        let mut g = BitVec::zeros(gl.total());
        for p in 0..n {
            if let Some(v) = t.delta_component(p, n) {
                g.xor_at(gl.offset(p, 0), v);
            }
        }
        let target = tw_mu(a, &[&pm, &xn, &fzn], &[&g, an]);
        let zm = z.shift(-1);
        let fzm = fz.shift(-1);
        let reps: Vec<BitVec> = hom_classes(b, &zm, &zn).into_iter().filter(|(d, _)| *d == 0).map(|(_, v)| v).collect();
        let hc = hom_complex(a, &pm, &fzn);
        let split = Splitting::new(&hc);
        let cols: Vec<BitVec> = reps
            .iter()
            .map(|r| split.project(&tw_mu(a, &[&pm, &fzm, &fzn], &[&alpha, &emb.flatten_morphism(&zm, &zn, r)])))
            .collect();
        let coeffs = Matrix::from_columns(split.h_dim(), &cols)
            .solve(&split.project(&target))
            .ok_or_else(|| fail("no morphism over the mutated category matches the attaching map"))?;
        let mut g2 = BitVec::zeros(HomLayout::new(b, &zm, &zn).total());
        for j in coeffs.ones() {
            g2.xor_assign(&reps[j]);
        }
        let next = cone(b, &zm, &zn, &g2).map_err(|e| fail(e.to_string()))?;
        let fnext = emb.flatten(&next);
        let whole = prefix(t, n + 1);
        let big = HomLayout::new(a, &whole, &fnext);
        let mut phi = BitVec::zeros(big.total());
        embed_blocks(a, &pre, &fz, &alpha, 0, 0, &big, &mut phi);
        embed_blocks(a, &xn, &fzn, an, n, fz.len(), &big, &mut phi);
        // Correct by h: pre → flatten(Z_n) of degree 0.
        let space = hom_space(a, &whole, &fnext);
        let mut unknowns = Vec::new();
        for p in 0..n {
            for q in fz.len()..fnext.len() {
                let off = big.offset(p, q);
                unknowns.extend((off..off + big.block_dim(p, q)).filter(|&i| space.degree(i) == a.grading_group().norm(0)));
            }
        }
        let defect = tw_mu(a, &[&whole, &fnext], &[&phi]);
        if !defect.is_zero() {
            let cols: Vec<BitVec> =
                unknowns.iter().map(|&i| tw_mu(a, &[&whole, &fnext], &[&BitVec::unit(big.total(), i)])).collect();
            let h = Matrix::from_columns(big.total(), &cols)
                .solve(&defect)
                .ok_or_else(|| fail("comparison map cannot be made closed"))?;
            for j in h.ones() {
                phi.flip(unknowns[j]);
            }
        }
        z = next;
        alpha = phi;
    }
    Ok(z)
}

/// Image of t under the equivalence D^b(A) → D^b(A′) induced by a script,
/// as a twisted complex over `run_script(c, s)`.
pub fn track_object(c: &DirectedCategory, s: &Script, t: &TwistedComplex) -> Result<TwistedComplex, MutationError> {
    t.validate(c).map_err(|e| MutationError::Step { step: 0, mv: String::new(), reason: e.to_string() })?;
    let run = run_script_steps(c, s)?;
    let mut cur = t.clone();
    for (j, step) in run.steps.iter().enumerate() {
        cur = lift(step, &cur).map_err(|e| e.at(j + 1, &step.mv))?;
        cur = strip_acyclic(&step.after, &cur);
    }
    Ok(cur)
}
