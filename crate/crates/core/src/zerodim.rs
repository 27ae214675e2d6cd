//! Zero-dimensional Picard-Lefschetz theory: branched covers of the disc
//! described by ordered lists of graded two-point subsets of a finite fibre.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::ainfty::DirectedCategory;
use crate::gf2::{BitVec, Matrix};
use crate::graded::{ChainComplex, GradedSpace, Grading, Splitting};
use crate::mutation::{Move, Script};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZeroDimError {
    #[error("point {0} is outside the fibre 1..={1}")]
    PointOutside(usize, usize),
    #[error("a zero-sphere needs two distinct points")]
    Degenerate,
    #[error("shift vector has length {0}, expected {1}")]
    ShiftLength(usize, usize),
    #[error("move needs at least {0} spheres")]
    TooFew(usize),
    #[error("boundary needs at least one arc")]
    EmptyBoundary,
}

/// Points are 1-based; `grading[j]` belongs to `points[j]`, and points are
/// kept in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedZeroSphere {
    points: [usize; 2],
    grading: [i64; 2],
}

impl GradedZeroSphere {
    pub fn new(p: usize, q: usize, gp: i64, gq: i64) -> Result<Self, ZeroDimError> {
        if p == q {
            return Err(ZeroDimError::Degenerate);
        }
        Ok(if p < q {
            GradedZeroSphere { points: [p, q], grading: [gp, gq] }
        } else {
            GradedZeroSphere { points: [q, p], grading: [gq, gp] }
        })
    }

    pub fn points(&self) -> [usize; 2] {
        self.points
    }

    pub fn contains(&self, x: usize) -> bool {
        self.points.contains(&x)
    }

    /// Grading at a point of the sphere.
    pub fn grading_at(&self, x: usize) -> Option<i64> {
        self.points.iter().position(|&p| p == x).map(|j| self.grading[j])
    }

    pub fn gradings(&self) -> [i64; 2] {
        self.grading
    }

    /// The transposition swapping the two points.
    pub fn swap(&self, x: usize) -> usize {
        if x == self.points[0] {
            self.points[1]
        } else if x == self.points[1] {
            self.points[0]
        } else {
            x
        }
    }

    /// L̃[σ] = L̃ − σ.
    pub fn shifted(&self, s: i64) -> Self {
        GradedZeroSphere { points: self.points, grading: [self.grading[0] - s, self.grading[1] - s] }
    }

    fn tau_tilde(&self, x: usize) -> i64 {
        match self.grading_at(x) {
            Some(g) => g - self.grading_at(self.swap(x)).unwrap() - 1,
            None => 0,
        }
    }
}

/// HF(l1, l2): one generator per common point, in degree l2(x) − l1(x).
pub fn hf(l1: &GradedZeroSphere, l2: &GradedZeroSphere) -> GradedSpace {
    let basis = l1
        .points
        .iter()
        .filter(|&&x| l2.contains(x))
        .map(|&x| (x.to_string(), l2.grading_at(x).unwrap() - l1.grading_at(x).unwrap()))
        .collect();
    GradedSpace::new_unchecked(Grading::Z, basis)
}

/// Common points, increasing.
pub fn intersection(l1: &GradedZeroSphere, l2: &GradedZeroSphere) -> Vec<usize> {
    l1.points.iter().copied().filter(|&x| l2.contains(x)).collect()
}

/// τ̃_l(target).
pub fn graded_dehn_twist(l: &GradedZeroSphere, target: &GradedZeroSphere) -> GradedZeroSphere {
    let [p, q] = target.points;
    let (x, y) = (l.swap(p), l.swap(q));
    let gx = target.grading[0] + l.tau_tilde(x);
    let gy = target.grading[1] + l.tau_tilde(y);
    GradedZeroSphere::new(x, y, gx, gy).expect("twist of a sphere is a sphere")
}

/// τ̃_l^{-1}(target).
pub fn inverse_dehn_twist(l: &GradedZeroSphere, target: &GradedZeroSphere) -> GradedZeroSphere {
    let [p, q] = target.points;
    let (x, y) = (l.swap(p), l.swap(q));
    let gx = target.grading[0] - l.tau_tilde(p);
    let gy = target.grading[1] - l.tau_tilde(q);
    GradedZeroSphere::new(x, y, gx, gy).expect("twist of a sphere is a sphere")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZeroConfig {
    fibre: usize,
    spheres: Vec<GradedZeroSphere>,
}

impl ZeroConfig {
    pub fn new(fibre: usize, spheres: Vec<GradedZeroSphere>) -> Result<Self, ZeroDimError> {
        for s in &spheres {
            for &p in &s.points {
                if p == 0 || p > fibre {
                    return Err(ZeroDimError::PointOutside(p, fibre));
                }
            }
        }
        Ok(ZeroConfig { fibre, spheres })
    }

    pub fn fibre(&self) -> usize {
        self.fibre
    }

    pub fn spheres(&self) -> &[GradedZeroSphere] {
        &self.spheres
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    fn with(&self, spheres: Vec<GradedZeroSphere>) -> Self {
        ZeroConfig { fibre: self.fibre, spheres }
    }

    pub fn apply(&self, mv: &Move) -> Result<Self, ZeroDimError> {
        match mv {
            Move::C => hurwitz_c(self),
            Move::R => hurwitz_r(self),
            Move::CInv => hurwitz_c_inv(self),
            Move::RInv => hurwitz_r_inv(self),
            Move::Shift(s) => hurwitz_shift(self, s),
        }
    }

    pub fn run(&self, script: &Script) -> Result<Self, ZeroDimError> {
        script.moves().iter().try_fold(self.clone(), |c, mv| c.apply(mv))
    }
}

pub fn hurwitz_c(cfg: &ZeroConfig) -> Result<ZeroConfig, ZeroDimError> {
    let Some(first) = cfg.spheres.first() else {
        return Err(ZeroDimError::TooFew(1));
    };
    let mut out: Vec<_> = cfg.spheres[1..].iter().map(|l| graded_dehn_twist(first, l)).collect();
    out.push(first.clone());
    Ok(cfg.with(out))
}

pub fn hurwitz_c_inv(cfg: &ZeroConfig) -> Result<ZeroConfig, ZeroDimError> {
    let Some(last) = cfg.spheres.last() else {
        return Err(ZeroDimError::TooFew(1));
    };
    let m = cfg.len();
    let mut out = vec![last.clone()];
    out.extend(cfg.spheres[..m - 1].iter().map(|l| inverse_dehn_twist(last, l)));
    Ok(cfg.with(out))
}

pub fn hurwitz_r(cfg: &ZeroConfig) -> Result<ZeroConfig, ZeroDimError> {
    let m = cfg.len();
    if m < 2 {
        return Err(ZeroDimError::TooFew(2));
    }
    let mut out = cfg.spheres.clone();
    out[m - 2] = graded_dehn_twist(&cfg.spheres[m - 2], &cfg.spheres[m - 1]);
    out[m - 1] = cfg.spheres[m - 2].clone();
    Ok(cfg.with(out))
}

pub fn hurwitz_r_inv(cfg: &ZeroConfig) -> Result<ZeroConfig, ZeroDimError> {
    let m = cfg.len();
    if m < 2 {
        return Err(ZeroDimError::TooFew(2));
    }
    let mut out = cfg.spheres.clone();
    out[m - 2] = cfg.spheres[m - 1].clone();
    out[m - 1] = inverse_dehn_twist(&cfg.spheres[m - 1], &cfg.spheres[m - 2]);
    Ok(cfg.with(out))
}

pub fn hurwitz_shift(cfg: &ZeroConfig, sigma: &[i64]) -> Result<ZeroConfig, ZeroDimError> {
    if sigma.len() != cfg.len() {
        return Err(ZeroDimError::ShiftLength(sigma.len(), cfg.len()));
    }
    Ok(cfg.with(cfg.spheres.iter().zip(sigma).map(|(l, &s)| l.shifted(s)).collect()))
}

/// The directed Fukaya category: hom = HF, μ² the point-matching product.
pub fn fukaya(cfg: &ZeroConfig) -> DirectedCategory {
    let m = cfg.len();
    let mut c = DirectedCategory::new(Grading::Z, (1..=m).map(|i| format!("L{i}")).collect());
    for i in 0..m {
        for k in i + 1..m {
            c.set_hom(i, k, hf(&cfg.spheres[i], &cfg.spheres[k]));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let ij = intersection(&cfg.spheres[i], &cfg.spheres[j]);
            for k in j + 1..m {
                let jk = intersection(&cfg.spheres[j], &cfg.spheres[k]);
                let ik = intersection(&cfg.spheres[i], &cfg.spheres[k]);
                for (a, &y) in ij.iter().enumerate() {
                    if let (Some(b), Some(o)) = (jk.iter().position(|&x| x == y), ik.iter().position(|&x| x == y)) {
                        c.set_mu(&[i, j, k], &[a as u32, b as u32], BitVec::unit(ik.len(), o))
                            .expect("pair-of-pants product has degree 0");
                    }
                }
            }
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub sheets: usize,
    pub branch_points: usize,
    pub components: usize,
    pub euler_characteristic: i64,
    pub boundary_circles: usize,
    pub genus_per_component: Vec<i64>,
}

impl CoverReport {
    pub fn connected(&self) -> bool {
        self.components == 1
    }

    pub fn summary(&self) -> String {
        let genus: Vec<String> = self.genus_per_component.iter().map(i64::to_string).collect();
        format!(
            "{}, chi={}, boundary={}, genus={}",
            if self.connected() { "connected" } else { "disconnected" },
            self.euler_characteristic,
            self.boundary_circles,
            genus.join(",")
        )
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Sheets, branch points, components, χ, boundary circles and genera of the
/// cover whose local monodromies are the transpositions of the spheres.
pub fn cover_topology(cfg: &ZeroConfig) -> CoverReport {
    let n = cfg.fibre;
    let mut parent: Vec<usize> = (0..=n).collect();
    for s in &cfg.spheres {
        let (a, b) = (find(&mut parent, s.points[0]), find(&mut parent, s.points[1]));
        parent[a] = b;
    }
    // Monodromy around the boundary: the ordered product of transpositions.
    let perm: Vec<usize> = (0..=n)
        .map(|x| cfg.spheres.iter().fold(x, |y, s| s.swap(y)))
        .collect();
    let mut comp_of = vec![0; n + 1];
    let mut roots = BTreeMap::new();
    for x in 1..=n {
        let r = find(&mut parent, x);
        let next = roots.len();
        comp_of[x] = *roots.entry(r).or_insert(next);
    }
    let k = roots.len();
    let mut sheets = vec![0i64; k];
    let mut branch = vec![0i64; k];
    let mut circles = vec![0i64; k];
    for x in 1..=n {
        sheets[comp_of[x]] += 1;
    }
    for s in &cfg.spheres {
        branch[comp_of[s.points[0]]] += 1;
    }
    let mut seen = vec![false; n + 1];
    for x in 1..=n {
        if !seen[x] {
            circles[comp_of[x]] += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = perm[y];
            }
        }
    }
    let genus = (0..k).map(|c| (2 - (sheets[c] - branch[c]) - circles[c]) / 2).collect();
    CoverReport {
        sheets: n,
        branch_points: cfg.len(),
        components: k,
        euler_characteristic: n as i64 - cfg.len() as i64,
        boundary_circles: circles.iter().sum::<i64>() as usize,
        genus_per_component: genus,
    }
}

/// Relative invariant of a cover of the disc with boundary arcs labelled by
/// zero-spheres. Marked point j sits between arc j and arc j+1 (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelInvariant {
    /// HF(L_j, L_{j+1}) at each marked point.
    pub factors: Vec<Vec<usize>>,
    /// Sum of basis tensors; each term lists one fibre point per factor.
    pub terms: Vec<Vec<usize>>,
}

impl RelInvariant {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Sections are the fibre points fixed by every branch transposition and
/// lying on every boundary sphere.
pub fn phi_rel(
    fibre: usize,
    branch: &[(usize, usize)],
    boundary: &[GradedZeroSphere],
) -> Result<RelInvariant, ZeroDimError> {
    if boundary.is_empty() {
        return Err(ZeroDimError::EmptyBoundary);
    }
    for &(a, b) in branch {
        if a == b {
            return Err(ZeroDimError::Degenerate);
        }
        for p in [a, b] {
            if p == 0 || p > fibre {
                return Err(ZeroDimError::PointOutside(p, fibre));
            }
        }
    }
    for s in boundary {
        for p in s.points {
            if p > fibre {
                return Err(ZeroDimError::PointOutside(p, fibre));
            }
        }
    }
    let k = boundary.len();
    let factors: Vec<Vec<usize>> =
        (0..k).map(|j| intersection(&boundary[j], &boundary[(j + 1) % k])).collect();
    let mut terms = BTreeSet::new();
    for x in 1..=fibre {
        if branch.iter().any(|&(a, b)| a == x || b == x) {
            continue;
        }
        if boundary.iter().all(|s| s.contains(x)) {
            let t: Vec<usize> = (0..k).map(|_| x).collect();
            // Mod 2: equal terms cancel.
            if !terms.remove(&t) {
                terms.insert(t);
            }
        }
    }
    Ok(RelInvariant { factors, terms: terms.into_iter().collect() })
}

impl RelInvariant {
    /// Terms as basis indices in the factors.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| t.iter().zip(&self.factors).map(|(x, f)| f.iter().position(|y| y == x).unwrap()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub cone_cohomology: BTreeMap<i64, usize>,
    pub target: BTreeMap<i64, usize>,
    pub chain_map: bool,
    pub bijective: bool,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.chain_map && self.bijective && self.cone_cohomology == self.target
    }
}

/// Check that (h, b): Cone(HF(L,L2) ⊗ HF(L1,L) → HF(L1,L2)) → HF(L1, τ_L(L2))
/// is a quasi-isomorphism.
pub fn cone_triangle_check(l: &GradedZeroSphere, l1: &GradedZeroSphere, l2: &GradedZeroSphere) -> TriangleReport {
    let t2 = graded_dehn_twist(l, l2);
    let a_pts = intersection(l, l2);
    let b_pts = intersection(l1, l);
    let c_pts = intersection(l1, l2);
    let t_pts = intersection(l1, &t2);
    // Cone basis: pairs (x, y) shifted down by one, then HF(L1, L2).
    let mut basis = Vec::new();
    let mut pairs = Vec::new();
    for &x in &a_pts {
        for &y in &b_pts {
            let deg = (l2.grading_at(x).unwrap() - l.grading_at(x).unwrap())
                + (l.grading_at(y).unwrap() - l1.grading_at(y).unwrap());
            basis.push((format!("{x}*{y}"), deg - 1));
            pairs.push((x, y));
        }
    }
    let np = pairs.len();
    for &z in &c_pts {
        basis.push((format!("{z}"), l2.grading_at(z).unwrap() - l1.grading_at(z).unwrap()));
    }
    let n = basis.len();
    let space = GradedSpace::new_unchecked(Grading::Z, basis);
    let d: Vec<BitVec> = (0..n)
        .map(|j| {
            if j < np && pairs[j].0 == pairs[j].1 {
                let z = c_pts.iter().position(|&z| z == pairs[j].0).expect("x = y lies on L1 and L2");
                BitVec::unit(n, np + z)
            } else {
                BitVec::zeros(n)
            }
        })
        .collect();
    let cone = ChainComplex::new(space.clone(), d).expect("cone differential squares to zero");
    let tdeg: Vec<i64> = t_pts.iter().map(|&z| t2.grading_at(z).unwrap() - l1.grading_at(z).unwrap()).collect();
    let mut target = BTreeMap::new();
    for &k in &tdeg {
        *target.entry(k).or_insert(0) += 1;
    }
    // The map on chains.
    let phi: Vec<BitVec> = (0..n)
        .map(|j| {
            let mut v = BitVec::zeros(t_pts.len());
            if j < np {
                let (x, y) = pairs[j];
                if y == l.swap(x) {
                    v.set(t_pts.iter().position(|&z| z == y).expect("y lies on L1 and τ(L2)"), true);
                }
            } else {
                let z = c_pts[j - np];
                if !l.contains(z) {
                    v.set(t_pts.iter().position(|&w| w == z).expect("fixed point stays"), true);
                }
            }
            v
        })
        .collect();
    let phi_m = Matrix::from_columns(t_pts.len(), &phi);
    let graded = (0..n).all(|j| phi[j].ones().all(|i| tdeg[i] == space.degree(j)));
    let chain_map = graded && (0..n).all(|j| phi_m.mul_vec(cone.column(j)).is_zero());
    let split = Splitting::new(&cone);
    let induced: Vec<BitVec> = (0..split.h_dim()).map(|h| phi_m.mul_vec(&split.rep(h))).collect();
    let ind = Matrix::from_columns(t_pts.len(), &induced);
    let bijective = split.h_dim() == t_pts.len() && ind.is_invertible();
    TriangleReport { cone_cohomology: cone.cohomology().dims(), target, chain_map, bijective }
}

/// Key of a configuration up to relabelling the fibre, shifting spheres and
/// regrading fibre points (adding f(x) to every grading at x). None of these
/// change the Fukaya category. Entry (a, b, v): the sphere joins labels
/// a < b, and v is its grading difference once earlier spheres fix f.
pub type CanonicalForm = Vec<(usize, usize, i64)>;

pub fn canonical_form(cfg: &ZeroConfig) -> CanonicalForm {
    canonical_labelling(cfg).0
}

/// The canonical form together with a labelling of the fibre realizing it.
fn canonical_labelling(cfg: &ZeroConfig) -> (CanonicalForm, HashMap<usize, usize>) {
    struct Search<'a> {
        cfg: &'a ZeroConfig,
        label: HashMap<usize, usize>,
        offset: HashMap<usize, i64>,
        acc: CanonicalForm,
        best: Option<(CanonicalForm, HashMap<usize, usize>)>,
    }
    impl Search<'_> {
        fn go(&mut self, at: usize) {
            if self.best.as_ref().is_some_and(|(b, _)| self.acc.as_slice() > &b[..self.acc.len()]) {
                return;
            }
            if at == self.cfg.len() {
                if self.best.as_ref().is_none_or(|(b, _)| self.acc < *b) {
                    self.best = Some((self.acc.clone(), self.label.clone()));
                }
                return;
            }
            let s = &self.cfg.spheres[at];
            let fresh: Vec<usize> = s.points.iter().copied().filter(|p| !self.label.contains_key(p)).collect();
            let orders = match fresh.len() {
                2 => vec![fresh.clone(), vec![fresh[1], fresh[0]]],
                _ => vec![fresh.clone()],
            };
            for order in orders {
                for &p in &order {
                    let next = self.label.len();
                    self.label.insert(p, next);
                    self.offset.insert(p, -s.grading_at(p).unwrap());
                }
                let [p, q] = s.points;
                let (lo, hi) = if self.label[&p] < self.label[&q] { (p, q) } else { (q, p) };
                let level = |x: usize| s.grading_at(x).unwrap() + self.offset[&x];
                let v = level(hi) - level(lo);
                self.acc.push((self.label[&lo], self.label[&hi], v));
                self.go(at + 1);
                self.acc.pop();
                for &p in &order {
                    self.label.remove(&p);
                    self.offset.remove(&p);
                }
            }
        }
    }
    let mut s = Search { cfg, label: HashMap::new(), offset: HashMap::new(), acc: Vec::new(), best: None };
    s.go(0);
    s.best.unwrap_or_default()
}

/// Breadth-first search over c, r, c!, r! for a script taking `from` to a
/// configuration with the same Fukaya category as `to`: equal up to
/// relabelling the fibre, shifting spheres and regrading fibre points. The
/// returned script ends with the shift fixing the gradings.
pub fn hurwitz_search(from: &ZeroConfig, to: &ZeroConfig, max_depth: usize) -> Option<Script> {
    if from.len() != to.len() {
        return None;
    }
    let goal = canonical_form(to);
    let moves = [Move::C, Move::R, Move::CInv, Move::RInv];
    let mut seen = HashSet::new();
    seen.insert(canonical_form(from));
    let mut queue = VecDeque::from([(from.clone(), Vec::<Move>::new())]);
    while let Some((cfg, path)) = queue.pop_front() {
        if canonical_form(&cfg) == goal {
            let s = shift_to_match(&cfg, to)?;
            let mut path = path;
            if s.iter().any(|&x| x != 0) {
                path.push(Move::Shift(s));
            }
            return Some(Script(path));
        }
        if path.len() == max_depth {
            continue;
        }
        for mv in &moves {
            let Ok(next) = cfg.apply(mv) else { continue };
            if seen.insert(canonical_form(&next)) {
                let mut p = path.clone();
                p.push(mv.clone());
                queue.push_back((next, p));
            }
        }
    }
    None
}

/// Per-sphere shift σ with cfg[σ] equal to `to` up to relabelling and
/// regrading fibre points. Within each connected piece the first sphere
/// keeps its grading.
fn shift_to_match(cfg: &ZeroConfig, to: &ZeroConfig) -> Option<Vec<i64>> {
    let (form, lc) = canonical_labelling(cfg);
    let (goal, lt) = canonical_labelling(to);
    if form != goal {
        return None;
    }
    let back: HashMap<usize, usize> = lt.iter().map(|(&y, &l)| (l, y)).collect();
    let target = |i: usize, x: usize| to.spheres[i].grading_at(back[&lc[&x]]);
    // cfg_i(x) − σ_i + f(x) = to_i(π x), solved by propagation.
    let m = cfg.len();
    let mut sigma: Vec<Option<i64>> = vec![None; m];
    let mut f: HashMap<usize, i64> = HashMap::new();
    for start in 0..m {
        if sigma[start].is_some() {
            continue;
        }
        sigma[start] = Some(0);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let s = sigma[i].unwrap();
            for x in cfg.spheres[i].points {
                let want = target(i, x)? - cfg.spheres[i].grading_at(x).unwrap() + s;
                match f.get(&x) {
                    Some(&v) if v != want => return None,
                    Some(_) => {}
                    None => {
                        f.insert(x, want);
                        for (k, l) in cfg.spheres.iter().enumerate() {
                            if sigma[k].is_none() && l.contains(x) {
                                sigma[k] = Some(l.grading_at(x).unwrap() + want - target(k, x)?);
                                stack.push(k);
                            }
                        }
                    }
                }
            }
        }
    }
    sigma.into_iter().collect()
}

/// A_m-type configuration in the fibre {1..m+1} whose Fukaya category is the
/// path category of the given orientation (bit j set: edge j points from
/// vertex j+1 to vertex j). Spheres are listed in topological order.
pub fn chain_configuration(m: usize, orientation: usize) -> ZeroConfig {
    let mut spheres = Vec::with_capacity(m);
    let mut hub = 1;
    let mut next = 2;
    let mut current = [1usize, 2];
    for v in 0..m {
        if v == 0 {
            current = [1, 2];
            next = 3;
        } else {
            let changed = v >= 2 && ((orientation >> (v - 1)) & 1) != ((orientation >> (v - 2)) & 1);
            if changed {
                hub = if current[0] == hub { current[1] } else { current[0] };
            }
            current = [hub, next];
            next += 1;
        }
        spheres.push(current);
    }
    // Topological order of the oriented path, smallest vertex first.
    let arrows: Vec<(usize, usize)> =
        (0..m.saturating_sub(1)).map(|j| if orientation >> j & 1 == 1 { (j + 1, j) } else { (j, j + 1) }).collect();
    let mut indeg = vec![0; m];
    for &(_, t) in &arrows {
        indeg[t] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::new();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &(s, t) in &arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    let spheres = order.iter().map(|&v| GradedZeroSphere::new(spheres[v][0], spheres[v][1], 0, 0).unwrap()).collect();
    ZeroConfig::new(m + 1, spheres).expect("points lie in the fibre")
}

/// 2g+1 copies of {1,2} with zero gradings.
pub fn a_g_configuration(g: usize) -> ZeroConfig {
    let s = GradedZeroSphere::new(1, 2, 0, 0).unwrap();
    ZeroConfig::new(2, vec![s; 2 * g + 1]).unwrap()
}

/// Seven zero-spheres forming a tree on eight points: ({1,2},{1,3},{7,4},{6,4},{5,4},{1,4},{7,8}).
pub fn seven_vertex_example() -> ZeroConfig {
    let pts = [(1, 2), (1, 3), (7, 4), (6, 4), (5, 4), (1, 4), (7, 8)];
    ZeroConfig::new(8, pts.iter().map(|&(p, q)| GradedZeroSphere::new(p, q, 0, 0).unwrap()).collect()).unwrap()
}
