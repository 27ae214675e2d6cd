use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::gf2::BitVec;
use crate::graded::{ChainComplex, GradedSpace, Grading};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("object index {0} out of range")]
    NoSuchObject(usize),
    #[error("no object named `{0}`")]
    UnknownObject(String),
    #[error("chain {0:?} is not strictly increasing")]
    NotDirected(Vec<usize>),
    #[error("argument {index} out of range for hom({from},{to})")]
    BadArgument { index: u32, from: usize, to: usize },
    #[error("μ^{order} on chain {chain:?} has degree {got}, expected {expected}")]
    Degree { order: usize, chain: Vec<usize>, got: i64, expected: i64 },
    #[error("cannot parse `{term}` as a morphism from {from} to {to}")]
    BadElement { term: String, from: String, to: String },
    #[error("grading mismatch")]
    GradingMismatch,
}

/// Multilinear table for one chain of objects, keyed by basis indices of the
/// arguments in path order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainTable {
    entries: FxHashMap<Box<[u32]>, BitVec>,
}

impl ChainTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, args: &[u32]) -> Option<&BitVec> {
        self.entries.get(args)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BitVec)> {
        self.entries.iter().map(|(k, v)| (&**k, v))
    }
}

/// Operations shared by stored categories and categories computed on demand.
///
/// Arguments are always listed in path order: `args[j]` lies in
/// `hom(objs[j], objs[j + 1])`, and identities never occur.
pub trait AInfty {
    fn grading(&self) -> Grading;
    fn object_count(&self) -> usize;
    fn hom_space(&self, i: usize, k: usize) -> &GradedSpace;
    /// Upper bound on the orders d with μ^d ≠ 0.
    fn max_order(&self) -> usize;
    fn mu_vec(&self, objs: &[usize], args: &[&BitVec]) -> BitVec;

    fn hom_complex(&self, i: usize, k: usize) -> ChainComplex {
        let sp = self.hom_space(i, k).clone();
        let n = sp.dim();
        let d = (0..n).map(|j| self.mu_vec(&[i, k], &[&BitVec::unit(n, j)])).collect();
        ChainComplex::new(sp, d).expect("μ^1 squares to zero")
    }
}

/// A directed A∞-category with explicitly stored composition tables.
#[derive(Clone, Debug)]
pub struct DirectedCategory {
    grading: Grading,
    names: Vec<String>,
    homs: Vec<GradedSpace>,
    tables: FxHashMap<Box<[u32]>, ChainTable>,
    aliases: FxHashMap<(usize, usize), Arc<BTreeMap<String, BitVec>>>,
}

impl PartialEq for DirectedCategory {
    fn eq(&self, other: &Self) -> bool {
        let nonempty = |c: &Self| -> FxHashMap<Box<[u32]>, ChainTable> {
            c.tables.iter().filter(|(_, t)| !t.is_empty()).map(|(k, t)| (k.clone(), t.clone())).collect()
        };
        self.grading == other.grading
            && self.names == other.names
            && self.homs == other.homs
            && nonempty(self) == nonempty(other)
    }
}

#[inline]
pub(crate) fn pair_index(m: usize, i: usize, k: usize) -> usize {
    debug_assert!(i < k && k < m);
    i * m - i * (i + 1) / 2 + (k - i - 1)
}

pub(crate) fn chain_key(objs: &[usize]) -> Box<[u32]> {
    objs.iter().map(|&o| o as u32).collect()
}

/// Visit every tuple in the product of `0..dims[j]`.
pub fn for_each_tuple(dims: &[usize], mut f: impl FnMut(&[u32])) {
    if dims.contains(&0) {
        return;
    }
    let mut t = vec![0u32; dims.len()];
    loop {
        f(&t);
        let mut j = dims.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            t[j] += 1;
            if (t[j] as usize) < dims[j] {
                break;
            }
            t[j] = 0;
        }
    }
}

/// Strictly increasing chains of `len` objects out of `0..m`.
pub fn chains(m: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..m).combinations(len)
}

impl DirectedCategory {
    pub fn new(grading: Grading, names: Vec<String>) -> Self {
        let m = names.len();
        let homs = vec![GradedSpace::zero(grading); m * m.saturating_sub(1) / 2];
        DirectedCategory { grading, names, homs, tables: FxHashMap::default(), aliases: FxHashMap::default() }
    }

    pub fn grading_group(&self) -> Grading {
        self.grading
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn object_index(&self, name: &str) -> Result<usize, CategoryError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.m());
        self.names = names;
    }

    pub fn hom(&self, i: usize, k: usize) -> &GradedSpace {
        &self.homs[pair_index(self.m(), i, k)]
    }

    /// Dimension of hom(i,k); zero unless i < k.
    pub fn hom_dim(&self, i: usize, k: usize) -> usize {
        if i < k {
            self.hom(i, k).dim()
        } else {
            0
        }
    }

    pub fn set_hom(&mut self, i: usize, k: usize, space: GradedSpace) {
        assert_eq!(space.grading(), self.grading);
        let m = self.m();
        self.homs[pair_index(m, i, k)] = space;
        self.tables.retain(|key, _| !key.windows(2).any(|w| w[0] as usize == i && w[1] as usize == k) && !(key[0] as usize == i && key[key.len() - 1] as usize == k));
    }

    pub(crate) fn set_aliases(&mut self, i: usize, k: usize, a: BTreeMap<String, BitVec>) {
        self.aliases.insert((i, k), Arc::new(a));
    }

    /// Store μ^d on a basis tuple, checking shape and degree. Zero values
    /// clear the entry.
    pub fn set_mu(&mut self, objs: &[usize], args: &[u32], value: BitVec) -> Result<(), CategoryError> {
        let d = args.len();
        assert_eq!(objs.len(), d + 1);
        if objs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CategoryError::NotDirected(objs.to_vec()));
        }
        if let Some(&o) = objs.iter().find(|&&o| o >= self.m()) {
            return Err(CategoryError::NoSuchObject(o));
        }
        let mut deg = 2 - d as i64;
        for (j, &a) in args.iter().enumerate() {
            let h = self.hom(objs[j], objs[j + 1]);
            if a as usize >= h.dim() {
                return Err(CategoryError::BadArgument { index: a, from: objs[j], to: objs[j + 1] });
            }
            deg += h.degree(a as usize);
        }
        let target = self.hom(objs[0], objs[d]);
        assert_eq!(value.len(), target.dim(), "output vector has wrong length");
        let want = self.grading.norm(deg);
        if let Some(bad) = value.ones().find(|&i| target.degree(i) != want) {
            return Err(CategoryError::Degree { order: d, chain: objs.to_vec(), got: target.degree(bad), expected: want });
        }
        let table = self.tables.entry(chain_key(objs)).or_default();
        if value.is_zero() {
            table.entries.remove(args);
        } else {
            table.entries.insert(args.into(), value);
        }
        Ok(())
    }

    pub fn mu_basis(&self, objs: &[usize], args: &[u32]) -> Option<&BitVec> {
        self.tables.get(&*chain_key(objs))?.get(args)
    }

    pub fn table(&self, objs: &[usize]) -> Option<&ChainTable> {
        self.tables.get(&*chain_key(objs))
    }

    /// All stored nonzero entries as (chain, args, value).
    pub fn entries(&self) -> impl Iterator<Item = (&[u32], &[u32], &BitVec)> {
        self.tables.iter().flat_map(|(c, t)| t.iter().map(move |(a, v)| (&**c, a, v)))
    }

    pub fn mu1_is_zero(&self) -> bool {
        self.tables.iter().all(|(c, t)| c.len() != 2 || t.is_empty())
    }

    pub fn stored_max_order(&self) -> usize {
        self.tables.iter().filter(|(_, t)| !t.is_empty()).map(|(c, _)| c.len() - 1).max().unwrap_or(0)
    }

    /// Resolve a sum of basis labels (or quiver path labels) in hom(i,k).
    pub fn parse_element(&self, i: usize, k: usize, expr: &str) -> Result<BitVec, CategoryError> {
        let err = |t: &str| CategoryError::BadElement {
            term: t.to_string(),
            from: self.names.get(i).cloned().unwrap_or_default(),
            to: self.names.get(k).cloned().unwrap_or_default(),
        };
        if i >= k {
            return Err(err(expr));
        }
        let h = self.hom(i, k);
        let mut v = BitVec::zeros(h.dim());
        for term in expr.split('+').map(str::trim) {
            if term == "0" {
                continue;
            }
            if let Some(p) = h.position(term) {
                v.flip(p);
            } else if let Some(a) = self.aliases.get(&(i, k)).and_then(|a| a.get(&normalize_path(term))) {
                v.xor_assign(a);
            } else {
                return Err(err(term));
            }
        }
        Ok(v)
    }

    /// Graded dimension table: (i, k) → degree → dimension.
    pub fn hom_table(&self) -> BTreeMap<(usize, usize), BTreeMap<i64, usize>> {
        let mut out = BTreeMap::new();
        for i in 0..self.m() {
            for k in i + 1..self.m() {
                out.insert((i, k), self.hom(i, k).dims());
            }
        }
        out
    }

    /// Multilinear extension of the stored tables.
    pub fn mu_multi(&self, objs: &[usize], args: &[&BitVec]) -> BitVec {
        let d = args.len();
        let out_dim = self.hom(objs[0], objs[d]).dim();
        let mut out = BitVec::zeros(out_dim);
        let Some(table) = self.tables.get(&*chain_key(objs)) else {
            return out;
        };
        if table.is_empty() || args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let supports: Vec<Vec<u32>> = args.iter().map(|a| a.ones().map(|i| i as u32).collect()).collect();
        let product: usize = supports.iter().map(Vec::len).fold(1usize, |a, b| a.saturating_mul(b));
        if product <= table.len() {
            let dims: Vec<usize> = supports.iter().map(Vec::len).collect();
            let mut key = vec![0u32; d];
            for_each_tuple(&dims, |t| {
                for j in 0..d {
                    key[j] = supports[j][t[j] as usize];
                }
                if let Some(v) = table.get(&key) {
                    out.xor_assign(v);
                }
            });
        } else {
            for (a, v) in table.iter() {
                if a.iter().zip(args).all(|(&x, arg)| arg.get(x as usize)) {
                    out.xor_assign(v);
                }
            }
        }
        out
    }

    pub fn clear_tables(&mut self) {
        self.tables.clear();
    }

    /// hom(i,k) moved by σ_i − σ_k; tables unchanged.
    pub fn regraded(&self, sigma: &[i64]) -> Self {
        assert_eq!(sigma.len(), self.m());
        let mut c = self.clone();
        let m = self.m();
        for i in 0..m {
            for k in i + 1..m {
                let p = pair_index(m, i, k);
                let h = &self.homs[p];
                let basis = h.labels().iter().cloned().zip(h.degrees().iter().map(|d| self.grading.norm(d + sigma[i] - sigma[k]))).collect();
                c.homs[p] = GradedSpace::new_unchecked(self.grading, basis);
            }
        }
        c
    }

    /// The same tables read in another grading group.
    pub fn with_grading(&self, grading: Grading) -> Self {
        let mut c = self.clone();
        c.grading = grading;
        c.homs = c.homs.iter().map(|h| GradedSpace::new_unchecked(grading, h.labels().iter().cloned().zip(h.degrees().iter().copied()).collect())).collect();
        c
    }
}

pub(crate) fn normalize_path(s: &str) -> String {
    s.split('*').map(str::trim).collect::<Vec<_>>().join("*")
}

impl AInfty for DirectedCategory {
    fn grading(&self) -> Grading {
        self.grading
    }

    fn object_count(&self) -> usize {
        self.m()
    }

    fn hom_space(&self, i: usize, k: usize) -> &GradedSpace {
        self.hom(i, k)
    }

    fn max_order(&self) -> usize {
        self.stored_max_order()
    }

    fn mu_vec(&self, objs: &[usize], args: &[&BitVec]) -> BitVec {
        self.mu_multi(objs, args)
    }
}

/// First violated identity found by [`check_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub order: usize,
    pub chain: Vec<String>,
    pub args: Vec<String>,
    pub defect: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "A∞ relation of order {} fails on chain ({}) with arguments ({}): defect {}", self.order, self.chain.join(", "), self.args.join(", "), self.defect)
    }
}

/// Value of Σ μ(a.., μ(..), ..a) on one basis tuple.
pub fn relation_defect<A: AInfty + ?Sized>(c: &A, objs: &[usize], args: &[u32]) -> BitVec {
    let d = args.len();
    let units: Vec<BitVec> =
        (0..d).map(|j| BitVec::unit(c.hom_space(objs[j], objs[j + 1]).dim(), args[j] as usize)).collect();
    let mut total = BitVec::zeros(c.hom_space(objs[0], objs[d]).dim());
    let top = c.max_order();
    for j in 1..=d.min(top) {
        let outer = d - j + 1;
        if outer > top {
            continue;
        }
        for s in 0..=d - j {
            let inner = c.mu_vec(&objs[s..=s + j], &units[s..s + j].iter().collect::<Vec<_>>());
            if inner.is_zero() {
                continue;
            }
            let mut o: Vec<usize> = objs[..=s].to_vec();
            o.extend_from_slice(&objs[s + j..]);
            let mut a: Vec<&BitVec> = units[..s].iter().collect();
            a.push(&inner);
            a.extend(units[s + j..].iter());
            total.xor_assign(&c.mu_vec(&o, &a));
        }
    }
    total
}

/// Verify the A∞ relations on every chain; returns the first violation.
pub fn check_relations(c: &DirectedCategory) -> Option<Violation> {
    let m = c.m();
    let top = c.stored_max_order();
    if top == 0 {
        return None;
    }
    let max_d = (2 * top).min(m.saturating_sub(1));
    for d in 1..=max_d {
        for objs in chains(m, d + 1) {
            let dims: Vec<usize> = objs.windows(2).map(|w| c.hom(w[0], w[1]).dim()).collect();
            let mut found = None;
            for_each_tuple(&dims, |args| {
                if found.is_some() {
                    return;
                }
                let defect = relation_defect(c, &objs, args);
                if !defect.is_zero() {
                    found = Some(Violation {
                        order: d,
                        chain: objs.iter().map(|&o| c.name(o).to_string()).collect(),
                        args: args.iter().enumerate().map(|(j, &a)| c.hom(objs[j], objs[j + 1]).label(a as usize).to_string()).collect(),
                        defect: c.hom(objs[0], objs[d]).describe(&defect),
                    });
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_dense() {
        let m = 5;
        let mut seen = vec![false; m * (m - 1) / 2];
        for i in 0..m {
            for k in i + 1..m {
                let p = pair_index(m, i, k);
                assert!(!seen[p]);
                seen[p] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn tuple_enumeration() {
        let mut n = 0;
        for_each_tuple(&[2, 3], |_| n += 1);
        assert_eq!(n, 6);
        for_each_tuple(&[2, 0], |_| panic!("empty product"));
    }

    #[test]
    fn degree_checked() {
        let mut c = DirectedCategory::new(Grading::Z, vec!["A".into(), "B".into()]);
        c.set_hom(0, 1, GradedSpace::new(Grading::Z, vec![("x".into(), 0), ("y".into(), 1)]).unwrap());
        assert!(c.set_mu(&[0, 1], &[0], BitVec::unit(2, 1)).is_ok());
        assert!(matches!(c.set_mu(&[0, 1], &[0], BitVec::unit(2, 0)), Err(CategoryError::Degree { .. })));
    }
}
