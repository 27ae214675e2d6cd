use std::collections::BTreeMap;

use thiserror::Error;

use super::category::DirectedCategory;
use crate::gf2::{BitVec, Echelon};
use crate::graded::{GradedSpace, Grading};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A path, listed in traversal order (first arrow first).
pub type Path = Vec<usize>;

/// A quiver with relations. Each relation is a sum of parallel paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub grading: Grading,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<Path>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow `{0}` does not go from a lower to a higher vertex")]
    NotDirected(String),
    #[error("relation {0} is not homogeneous in source, target and degree")]
    Inhomogeneous(usize),
    #[error("relation {0} contains a path that is not composable")]
    NotComposable(usize),
    #[error("relation {0} is empty")]
    EmptyRelation(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
}

impl QuiverPresentation {
    pub fn new(grading: Grading, vertices: &[&str]) -> Self {
        QuiverPresentation { grading, vertices: vertices.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn vertex(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str, degree: i64) -> Result<(), QuiverError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(QuiverError::Duplicate(name.to_string()));
        }
        let (source, target) = (self.vertex(source)?, self.vertex(target)?);
        self.arrows.push(Arrow { name: name.to_string(), source, target, degree });
        Ok(())
    }

    /// Parse a path written as a composition, e.g. `a2*a1` (a1 first).
    pub fn parse_path(&self, s: &str) -> Result<Path, QuiverError> {
        s.split('*').rev().map(|a| self.arrow_index(a.trim())).collect()
    }

    /// Add a relation `lhs = rhs`, each side a `+`-separated sum of paths or `0`.
    pub fn add_relation(&mut self, text: &str) -> Result<(), QuiverError> {
        let mut terms = Vec::new();
        for side in text.split('=') {
            for t in side.split('+').map(str::trim) {
                if t != "0" && !t.is_empty() {
                    terms.push(self.parse_path(t)?);
                }
            }
        }
        self.relations.push(terms);
        Ok(())
    }

    pub fn path_label(&self, p: &[usize]) -> String {
        p.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    fn path_ends(&self, p: &[usize]) -> Option<(usize, usize, i64)> {
        let first = self.arrows.get(*p.first()?)?;
        let mut deg = 0;
        let mut at = first.source;
        for &a in p {
            let ar = &self.arrows[a];
            if ar.source != at {
                return None;
            }
            at = ar.target;
            deg += ar.degree;
        }
        Some((first.source, at, deg))
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(QuiverError::Duplicate(v.clone()));
            }
        }
        for a in &self.arrows {
            if a.source >= a.target {
                return Err(QuiverError::NotDirected(a.name.clone()));
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            if rel.is_empty() {
                return Err(QuiverError::EmptyRelation(r));
            }
            for p in rel {
                let e = self.path_ends(p).ok_or(QuiverError::NotComposable(r))?;
                let e = (e.0, e.1, self.grading.norm(e.2));
                if *ends.get_or_insert(e) != e {
                    return Err(QuiverError::Inhomogeneous(r));
                }
            }
        }
        Ok(())
    }

    /// All nonempty paths starting at `v`.
    fn paths_from(&self, v: usize, prefix: &mut Path, out: &mut Vec<Path>) {
        for (a, ar) in self.arrows.iter().enumerate() {
            if ar.source == v {
                prefix.push(a);
                out.push(prefix.clone());
                self.paths_from(ar.target, prefix, out);
                prefix.pop();
            }
        }
    }
}

struct Block {
    paths: Vec<Path>,
    ideal: Echelon,
    basis_of: Vec<Option<usize>>,
    basis: Vec<usize>,
}

/// Path category modulo the two-sided ideal generated by the relations.
pub fn from_quiver(q: &QuiverPresentation) -> Result<DirectedCategory, QuiverError> {
    q.validate()?;
    let m = q.vertices.len();
    let g = q.grading;
    let mut all: Vec<Path> = Vec::new();
    for v in 0..m {
        q.paths_from(v, &mut Vec::new(), &mut all);
    }
    let mut grouped: BTreeMap<(usize, usize, i64), Vec<Path>> = BTreeMap::new();
    for p in all {
        let (s, t, d) = q.path_ends(&p).expect("enumerated paths compose");
        grouped.entry((s, t, g.norm(d))).or_default().push(p);
    }
    let mut blocks: BTreeMap<(usize, usize, i64), Block> = BTreeMap::new();
    let mut index: BTreeMap<Path, ((usize, usize, i64), usize)> = BTreeMap::new();
    for (key, mut paths) in grouped {
        paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| q.path_label(a).cmp(&q.path_label(b))));
        for (i, p) in paths.iter().enumerate() {
            index.insert(p.clone(), (key, i));
        }
        let n = paths.len();
        blocks.insert(key, Block { paths, ideal: Echelon::new(n, 0), basis_of: Vec::new(), basis: Vec::new() });
    }
    // Generate the ideal: q · r · p for every relation r and paths around it.
    let with_empty = |v: usize, forward: bool| -> Vec<Path> {
        let mut out = vec![Vec::new()];
        out.extend(index.keys().filter(|p| {
            let (s, t, _) = q.path_ends(p).unwrap();
            if forward {
                s == v
            } else {
                t == v
            }
        }).cloned());
        out
    };
    for rel in &q.relations {
        let (s, t, _) = q.path_ends(&rel[0]).unwrap();
        for before in with_empty(s, false) {
            for after in with_empty(t, true) {
                let mut key = None;
                let mut idxs = Vec::new();
                for term in rel {
                    let mut p = before.clone();
                    p.extend(term);
                    p.extend(&after);
                    let (k, i) = index[&p];
                    key = Some(k);
                    idxs.push(i);
                }
                let b = blocks.get_mut(&key.unwrap()).unwrap();
                let v = BitVec::from_ones(b.paths.len(), idxs);
                let _ = b.ideal.insert(v, BitVec::zeros(0));
            }
        }
    }
    for b in blocks.values_mut() {
        let n = b.paths.len();
        let mut is_pivot = vec![false; n];
        for r in b.ideal.rows() {
            is_pivot[r.first_one().unwrap()] = true;
        }
        b.basis_of = vec![None; n];
        for i in (0..n).filter(|&i| !is_pivot[i]) {
            b.basis_of[i] = Some(b.basis.len());
            b.basis.push(i);
        }
    }
    // Hom spaces: concatenate degree blocks in increasing degree order.
    let mut cat = DirectedCategory::new(g, q.vertices.clone());
    let mut offsets: BTreeMap<(usize, usize, i64), usize> = BTreeMap::new();
    for i in 0..m {
        for k in i + 1..m {
            let mut basis = Vec::new();
            for (&(s, t, d), b) in blocks.range((i, k, i64::MIN)..=(i, k, i64::MAX)) {
                debug_assert_eq!((s, t), (i, k));
                offsets.insert((s, t, d), basis.len());
                for &p in &b.basis {
                    basis.push((q.path_label(&b.paths[p]), d));
                }
            }
            cat.set_hom(i, k, GradedSpace::new_unchecked(g, basis));
        }
    }
    let reduce = |p: &Path| -> (usize, usize, BitVec) {
        let (key, i) = index[p];
        let b = &blocks[&key];
        let mut v = BitVec::unit(b.paths.len(), i);
        reduce_full(&b.ideal, &mut v);
        let dim = cat.hom(key.0, key.1).dim();
        let off = offsets[&key];
        let out = BitVec::from_ones(dim, v.ones().map(|j| off + b.basis_of[j].expect("reduced to basis paths")));
        (key.0, key.1, out)
    };
    let mut aliases: BTreeMap<(usize, usize), BTreeMap<String, BitVec>> = BTreeMap::new();
    for p in index.keys() {
        let (s, t, v) = reduce(p);
        aliases.entry((s, t)).or_default().insert(q.path_label(p), v);
    }
    let mut products = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for x in 0..cat.hom(i, j).dim() {
                    let px = q.parse_path(cat.hom(i, j).label(x)).unwrap();
                    for y in 0..cat.hom(j, k).dim() {
                        let mut p = px.clone();
                        p.extend(q.parse_path(cat.hom(j, k).label(y)).unwrap());
                        let (_, _, v) = reduce(&p);
                        products.push(([i, j, k], [x as u32, y as u32], v));
                    }
                }
            }
        }
    }
    for (objs, args, v) in products {
        cat.set_mu(&objs, &args, v).expect("path composition has degree 0");
    }
    for ((s, t), a) in aliases {
        cat.set_aliases(s, t, a);
    }
    Ok(cat)
}

/// Eliminate every pivot position of `e` from `v`.
pub(crate) fn reduce_full(e: &Echelon, v: &mut BitVec) {
    let mut pivots: Vec<(usize, usize)> = e.rows().iter().enumerate().map(|(r, row)| (row.first_one().unwrap(), r)).collect();
    pivots.sort_unstable();
    for (p, r) in pivots {
        if v.get(p) {
            v.xor_assign(&e.rows()[r]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::category::check_relations;

    #[test]
    fn a2_quiver() {
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2"]);
        q.add_arrow("a", "X1", "X2", 0).unwrap();
        let c = from_quiver(&q).unwrap();
        assert_eq!(c.hom(0, 1).dims(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn rejects_backwards_arrow() {
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2"]);
        q.add_arrow("a", "X2", "X1", 0).unwrap();
        assert_eq!(from_quiver(&q).unwrap_err(), QuiverError::NotDirected("a".into()));
    }

    #[test]
    fn rejects_inhomogeneous() {
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2", "X3"]);
        q.add_arrow("a", "X1", "X2", 0).unwrap();
        q.add_arrow("b", "X2", "X3", 0).unwrap();
        q.add_arrow("c", "X1", "X3", 1).unwrap();
        q.add_relation("b*a = c").unwrap();
        assert_eq!(from_quiver(&q).unwrap_err(), QuiverError::Inhomogeneous(0));
    }

    #[test]
    fn square_with_commutativity() {
        let mut q = QuiverPresentation::new(Grading::Z, &["A", "B", "C", "D"]);
        q.add_arrow("f", "A", "B", 0).unwrap();
        q.add_arrow("g", "A", "C", 0).unwrap();
        q.add_arrow("h", "B", "D", 0).unwrap();
        q.add_arrow("k", "C", "D", 0).unwrap();
        q.add_relation("h*f = k*g").unwrap();
        let c = from_quiver(&q).unwrap();
        assert_eq!(c.hom(0, 3).dim(), 1);
        assert_eq!(c.parse_element(0, 3, "h*f").unwrap(), c.parse_element(0, 3, "k*g").unwrap());
        assert!(check_relations(&c).is_none());
    }
}
