//! Morse categories built from combinatorial gradient-flow data.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::ainfty::DirectedCategory;
use crate::gf2::BitVec;
use crate::graded::{GradedSpace, Grading};
use crate::hochschild::hh;
use crate::spherical::pairing_is_perfect;
use crate::twcx::{db_hom, maurer_cartan_defect, Summand, TwistedComplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("manifold dimension must be at least 1")]
    Dimension,
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("unknown critical point `{0}`")]
    UnknownPoint(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("critical point `{0}` has index {1} outside 0..={2}")]
    Index(String, usize, usize),
    #[error("component `{label}` from `{from}` to `{to}`: {reason}")]
    Component { label: String, from: String, to: String, reason: String },
    #[error("broken trajectory ({0},{1}) {2}")]
    Broken(String, String, String),
    #[error("Maurer-Cartan equation fails for the fundamental object: {0}")]
    MaurerCartan(String),
    #[error("the manifold is not declared closed")]
    NotClosed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub name: String,
    pub index: usize,
}

/// One connected component of a trajectory space G(from, to).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: String,
    pub from: String,
    pub to: String,
    /// Z/2 Betti numbers, starting in degree 0.
    pub homology: Vec<usize>,
    /// Broken trajectories (c2, c1) on the boundary of the closure, with c1
    /// in G(from, w) and c2 in G(w, to).
    pub boundary: Vec<(String, String)>,
}

impl Component {
    /// A single trajectory.
    pub fn point(label: &str, from: &str, to: &str) -> Self {
        Component { label: label.into(), from: from.into(), to: to.into(), homology: vec![1], boundary: Vec::new() }
    }

    /// Closed components have no boundary; the others are open.
    pub fn is_compact(&self) -> bool {
        self.boundary.is_empty()
    }

    fn is_contractible(&self) -> bool {
        self.homology == [1]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FlowData {
    /// dim N = n + 1.
    pub dimension: usize,
    pub closed: bool,
    pub critical: Vec<CriticalPoint>,
    pub components: Vec<Component>,
}

impl FlowData {
    pub fn new(dimension: usize) -> Self {
        FlowData { dimension, ..Default::default() }
    }

    pub fn crit(&mut self, name: &str, index: usize) -> &mut Self {
        self.critical.push(CriticalPoint { name: name.into(), index });
        self
    }

    pub fn traj(&mut self, label: &str, from: &str, to: &str) -> &mut Self {
        self.components.push(Component::point(label, from, to));
        self
    }

    pub fn comp(&mut self, label: &str, from: &str, to: &str, homology: &[usize], boundary: &[(&str, &str)]) -> &mut Self {
        self.components.push(Component {
            label: label.into(),
            from: from.into(),
            to: to.into(),
            homology: homology.to_vec(),
            boundary: boundary.iter().map(|&(a, b)| (a.into(), b.into())).collect(),
        });
        self
    }

    fn top(&self) -> usize {
        self.dimension
    }

    /// 0 for minima, 1 for middle indices, 2 for maxima.
    pub fn level(&self, index: usize) -> usize {
        if index == 0 {
            0
        } else if index == self.top() {
            2
        } else {
            1
        }
    }

    fn point(&self, name: &str) -> Result<&CriticalPoint, MorseError> {
        self.critical.iter().find(|c| c.name == name).ok_or_else(|| MorseError::UnknownPoint(name.into()))
    }

    fn component(&self, label: &str) -> Result<&Component, MorseError> {
        self.components.iter().find(|c| c.label == label).ok_or_else(|| MorseError::UnknownComponent(label.into()))
    }

    /// Critical point names ordered by level class, then name.
    pub fn object_order(&self) -> Vec<String> {
        let mut pts: Vec<_> = self.critical.iter().map(|c| (self.level(c.index), c.name.clone())).collect();
        pts.sort();
        pts.into_iter().map(|(_, n)| n).collect()
    }

    fn components_between(&self, x: &str, y: &str) -> Vec<&Component> {
        self.components.iter().filter(|c| c.from == x && c.to == y).collect()
    }

    /// Names, indices, dimensions and directions.
    pub fn validate_structure(&self) -> Result<(), MorseError> {
        if self.dimension == 0 {
            return Err(MorseError::Dimension);
        }
        let mut seen = BTreeSet::new();
        for c in &self.critical {
            if !seen.insert(c.name.as_str()) {
                return Err(MorseError::Duplicate(c.name.clone()));
            }
            if c.index > self.top() {
                return Err(MorseError::Index(c.name.clone(), c.index, self.top()));
            }
        }
        let mut labels = BTreeSet::new();
        for c in &self.components {
            if !labels.insert(c.label.as_str()) {
                return Err(MorseError::Duplicate(c.label.clone()));
            }
            let bad = |reason: String| MorseError::Component {
                label: c.label.clone(),
                from: c.from.clone(),
                to: c.to.clone(),
                reason,
            };
            let (x, y) = (self.point(&c.from)?, self.point(&c.to)?);
            if self.level(x.index) >= self.level(y.index) {
                return Err(bad("trajectories must go up in level".into()));
            }
            let dim = y.index - x.index - 1;
            if c.homology.first() != Some(&1) {
                return Err(bad("a component is connected, so H_0 must be 1".into()));
            }
            if c.homology.len() > dim + 1 {
                return Err(bad(format!("homology above the dimension {dim}")));
            }
            let top = c.homology.get(dim).copied().unwrap_or(0);
            if c.is_compact() && top != 1 {
                return Err(bad(format!("a closed component needs H_{dim} = 1")));
            }
            if !c.is_compact() {
                if x.index != 0 || y.index != self.top() {
                    return Err(bad("only spaces from a minimum to a maximum may be non-compact".into()));
                }
                if top != 0 {
                    return Err(bad(format!("an open component has H_{dim} = 0")));
                }
            }
            for (c2, c1) in &c.boundary {
                let (b2, b1) = (self.component(c2)?, self.component(c1)?);
                if b1.from != c.from || b2.to != c.to || b1.to != b2.from {
                    return Err(MorseError::Broken(c2.clone(), c1.clone(), format!("does not lie over {}→{}", c.from, c.to)));
                }
            }
        }
        Ok(())
    }

    /// Every broken trajectory lies on exactly one boundary, and for n = 1
    /// every interval has two ends.
    pub fn validate_gluing(&self) -> Result<(), MorseError> {
        let mut count: BTreeMap<(&str, &str), usize> = BTreeMap::new();
        for c in &self.components {
            for (c2, c1) in &c.boundary {
                *count.entry((c2.as_str(), c1.as_str())).or_default() += 1;
            }
            if self.dimension == 2 && !c.is_compact() && c.boundary.len() != 2 {
                return Err(MorseError::Component {
                    label: c.label.clone(),
                    from: c.from.clone(),
                    to: c.to.clone(),
                    reason: format!("an interval has two ends, found {}", c.boundary.len()),
                });
            }
        }
        for c1 in &self.components {
            let x = self.point(&c1.from)?;
            let w = self.point(&c1.to)?;
            if x.index != 0 || w.index == 0 || w.index == self.top() {
                continue;
            }
            for c2 in self.components.iter().filter(|c| c.from == c1.to) {
                if self.point(&c2.to)?.index != self.top() {
                    continue;
                }
                match count.get(&(c2.label.as_str(), c1.label.as_str())).copied().unwrap_or(0) {
                    1 => {}
                    0 => return Err(MorseError::Broken(c2.label.clone(), c1.label.clone(), "lies on no boundary".into())),
                    k => return Err(MorseError::Broken(c2.label.clone(), c1.label.clone(), format!("lies on {k} boundaries"))),
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), MorseError> {
        self.validate_structure()?;
        self.validate_gluing()
    }
}

/// Basis labels of H_{-*} of one component.
fn component_basis(c: &Component) -> Vec<(String, i64)> {
    let mut out = Vec::new();
    for (k, &h) in c.homology.iter().enumerate() {
        for j in 0..h {
            let label = match (k, h) {
                (0, _) => c.label.clone(),
                (_, 1) => format!("{}.h{k}", c.label),
                _ => format!("{}.h{k}.{}", c.label, j + 1),
            };
            out.push((label, -(k as i64)));
        }
    }
    out
}

/// Offsets of each component's basis inside its hom space.
struct Layout {
    order: Vec<String>,
    start: BTreeMap<String, (usize, usize, usize)>,
}

impl Layout {
    fn new(f: &FlowData) -> Self {
        let order = f.object_order();
        let pos: BTreeMap<&str, usize> = order.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut start = BTreeMap::new();
        let mut used: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in &f.components {
            let (i, k) = (pos[c.from.as_str()], pos[c.to.as_str()]);
            let at = used.entry((i, k)).or_default();
            start.insert(c.label.clone(), (i, k, *at));
            *at += c.homology.iter().sum::<usize>();
        }
        Layout { order, start }
    }
}

fn build(f: &FlowData) -> DirectedCategory {
    let layout = Layout::new(f);
    let m = layout.order.len();
    let mut cat = DirectedCategory::new(Grading::Z, layout.order.clone());
    for i in 0..m {
        for k in i + 1..m {
            let basis: Vec<_> =
                f.components_between(&layout.order[i], &layout.order[k]).into_iter().flat_map(component_basis).collect();
            cat.set_hom(i, k, GradedSpace::new_unchecked(Grading::Z, basis));
        }
    }
    for big in &f.components {
        let (x, y, at) = layout.start[&big.label];
        for (c2, c1) in &big.boundary {
            let (Some(&(_, w, a1)), Some(&(_, _, a2))) = (layout.start.get(c1), layout.start.get(c2)) else { continue };
            let key = [a1 as u32, a2 as u32];
            let mut v = cat.mu_basis(&[x, w, y], &key).cloned().unwrap_or_else(|| BitVec::zeros(cat.hom_dim(x, y)));
            v.flip(at);
            cat.set_mu(&[x, w, y], &key, v).expect("H_0 classes compose in degree 0");
        }
    }
    cat
}

/// Morse(N, p): hom(x, y) = H_{-*}(G(x, y)), μ² from the boundary strata of
/// the compactified spaces, μ^d = 0 otherwise.
pub fn morse_category(f: &FlowData) -> Result<DirectedCategory, MorseError> {
    f.validate()?;
    Ok(build(f))
}

/// (⊕ x[−i(x)], δ) with δ_xy the fundamental class of G(x, y) when that
/// space is compact and nonempty.
pub fn fundamental_object(f: &FlowData) -> Result<(DirectedCategory, TwistedComplex), MorseError> {
    f.validate_structure()?;
    let cat = build(f);
    let layout = Layout::new(f);
    let index: BTreeMap<&str, usize> = f.critical.iter().map(|c| (c.name.as_str(), c.index)).collect();
    let summands: Vec<Summand> =
        layout.order.iter().enumerate().map(|(i, n)| Summand { object: i, shift: -(index[n.as_str()] as i64) }).collect();
    let mut delta = BTreeMap::new();
    for (i, x) in layout.order.iter().enumerate() {
        for (k, y) in layout.order.iter().enumerate().skip(i + 1) {
            let comps = f.components_between(x, y);
            if comps.is_empty() || !comps.iter().all(|c| c.is_compact()) {
                continue;
            }
            let mut v = BitVec::zeros(cat.hom_dim(i, k));
            for c in comps {
                let (_, _, at) = layout.start[&c.label];
                let dim = index[y.as_str()] - index[x.as_str()] - 1;
                let offset: usize = c.homology[..dim].iter().sum();
                v.flip(at + offset);
            }
            delta.insert((i, k), v);
        }
    }
    let fund = TwistedComplex::new_unchecked(Grading::Z, summands, delta);
    let defect = maurer_cartan_defect(&cat, &fund);
    if !defect.is_empty() {
        let text = defect
            .iter()
            .map(|((p, q), v)| {
                let terms: Vec<&str> = v.ones().map(|j| cat.hom(*p, *q).label(j)).collect();
                format!("{}→{}: {}", layout.order[*p], layout.order[*q], terms.join("+"))
            })
            .collect::<Vec<_>>()
            .join(", ");
        return Err(MorseError::MaurerCartan(text));
    }
    Ok((cat, fund))
}

#[derive(Clone, Debug, Serialize)]
pub struct EndosReport {
    pub computed: BTreeMap<i64, usize>,
    pub expected: BTreeMap<i64, usize>,
    pub matches: bool,
}

/// Hom*(⟦B⟧, ⟦B⟧) against user-supplied Betti numbers of B(N, p).
pub fn fundamental_endos(f: &FlowData, expected: &BTreeMap<i64, usize>) -> Result<EndosReport, MorseError> {
    let (cat, fund) = fundamental_object(f)?;
    let computed = db_hom(&cat, &fund, &fund);
    let expected: BTreeMap<i64, usize> = expected.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect();
    let matches = computed == expected;
    Ok(EndosReport { computed, expected, matches })
}

/// The composition pairing Hom*(X, ⟦N⟧) ⊗ Hom^{n+1−*}(⟦N⟧, X) → GF(2) is
/// perfect for X over the given category.
pub fn verdier_pairing(cat: &DirectedCategory, fund: &TwistedComplex, top: i64, x: &TwistedComplex) -> bool {
    pairing_is_perfect(cat, x, fund, top)
}

pub fn verdier_check(f: &FlowData, x: &TwistedComplex) -> Result<bool, MorseError> {
    if !f.closed {
        return Err(MorseError::NotClosed);
    }
    f.validate()?;
    let (cat, fund) = fundamental_object(f)?;
    Ok(verdier_pairing(&cat, &fund, f.dimension as i64, x))
}

/// verdier_check on every critical point.
pub fn verdier_generators(f: &FlowData) -> Result<Vec<bool>, MorseError> {
    if !f.closed {
        return Err(MorseError::NotClosed);
    }
    f.validate()?;
    let (cat, fund) = fundamental_object(f)?;
    Ok((0..cat.m()).map(|i| verdier_pairing(&cat, &fund, f.dimension as i64, &TwistedComplex::object(&cat, i))).collect())
}

/// Surface case with every nonempty trajectory space a single contractible
/// component.
pub fn is_cellular(f: &FlowData) -> bool {
    if f.dimension != 2 || f.validate().is_err() {
        return false;
    }
    let mut per_pair: BTreeMap<(&str, &str), Vec<&Component>> = BTreeMap::new();
    for c in &f.components {
        per_pair.entry((c.from.as_str(), c.to.as_str())).or_default().push(c);
    }
    per_pair.values().all(|cs| cs.len() == 1 && cs[0].is_contractible())
}

#[derive(Clone, Debug, Serialize)]
pub struct CellularReport {
    pub cellular: bool,
    pub hh: Option<BTreeMap<i64, usize>>,
    pub expected: BTreeMap<i64, usize>,
    pub matches: Option<bool>,
    pub hh0_matches: Option<bool>,
    pub euler_matches: Option<bool>,
}

impl CellularReport {
    pub fn passed(&self) -> bool {
        self.cellular && self.matches == Some(true)
    }
}

fn euler(t: &BTreeMap<i64, usize>) -> i64 {
    t.iter().map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
}

/// HH*(Morse(N, p)) against the Betti numbers of B(N, p) when cellular.
pub fn cellular_hh_check(f: &FlowData, expected: &BTreeMap<i64, usize>) -> CellularReport {
    let expected: BTreeMap<i64, usize> = expected.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect();
    if !is_cellular(f) {
        return CellularReport { cellular: false, hh: None, expected, matches: None, hh0_matches: None, euler_matches: None };
    }
    let cat = build(f);
    let h = hh(&cat);
    let get = |t: &BTreeMap<i64, usize>, k| t.get(&k).copied().unwrap_or(0);
    CellularReport {
        cellular: true,
        matches: Some(h == expected),
        hh0_matches: Some(get(&h, 0) == get(&expected, 0)),
        euler_matches: Some(euler(&h) == euler(&expected)),
        hh: Some(h),
        expected,
    }
}

/// RP² with three critical points.
pub fn rp2() -> FlowData {
    let mut f = FlowData::new(2);
    f.closed = true;
    f.crit("min", 0).crit("saddle", 1).crit("max", 2);
    f.traj("a1", "min", "saddle").traj("b1", "min", "saddle");
    f.traj("a2", "saddle", "max").traj("b2", "saddle", "max");
    f.comp("I1", "min", "max", &[1], &[("a2", "a1"), ("b2", "b1")]);
    f.comp("I2", "min", "max", &[1], &[("b2", "a1"), ("a2", "b1")]);
    f
}

/// S² with a minimum and a maximum; G(min, max) is a circle.
pub fn s2() -> FlowData {
    let mut f = FlowData::new(2);
    f.closed = true;
    f.crit("min", 0).crit("max", 2);
    f.comp("S", "min", "max", &[1, 1], &[]);
    f
}

/// A minimum and a saddle joined by one trajectory.
pub fn cellular_a2() -> FlowData {
    let mut f = FlowData::new(2);
    f.crit("min", 0).crit("saddle", 1);
    f.traj("t", "min", "saddle");
    f
}
