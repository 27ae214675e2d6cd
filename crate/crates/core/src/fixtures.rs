//! Standard categories and objects used throughout the tests and the CLI.

use std::collections::BTreeMap;

use crate::ainfty::{from_quiver, DirectedCategory, QuiverPresentation};
use crate::gf2::BitVec;
use crate::graded::Grading;
use crate::twcx::{Summand, TwistedComplex};

fn names(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("{prefix}{i}")).collect()
}

fn quiver(grading: Grading, m: usize, arrows: &[(String, usize, usize)], relations: &[String]) -> QuiverPresentation {
    let vs = names("X", m);
    let refs: Vec<&str> = vs.iter().map(String::as_str).collect();
    let mut q = QuiverPresentation::new(grading, &refs);
    for (n, s, t) in arrows {
        q.add_arrow(n, &vs[*s], &vs[*t], 0).expect("fixture arrow");
    }
    for r in relations {
        q.add_relation(r).expect("fixture relation");
    }
    q
}

/// Two double arrows with a2a1 = b2b1 and b2a1 = a2b1.
pub fn cp2_quiver() -> QuiverPresentation {
    let arrows = [("a1", 0, 1), ("b1", 0, 1), ("a2", 1, 2), ("b2", 1, 2)].map(|(n, s, t)| (n.to_string(), s, t));
    quiver(Grading::Z, 3, &arrows, &["a2*a1 = b2*b1".into(), "b2*a1 = a2*b1".into()])
}

/// Two triple arrows with b_i a_j = b_j a_i and b_i a_i = 0.
pub fn beilinson_quiver() -> QuiverPresentation {
    let mut arrows = Vec::new();
    for i in 1..=3 {
        arrows.push((format!("a{i}"), 0, 1));
    }
    for i in 1..=3 {
        arrows.push((format!("b{i}"), 1, 2));
    }
    let mut rels = Vec::new();
    for i in 1..=3 {
        rels.push(format!("b{i}*a{i} = 0"));
        for j in i + 1..=3 {
            rels.push(format!("b{i}*a{j} = b{j}*a{i}"));
        }
    }
    quiver(Grading::Z, 3, &arrows, &rels)
}

/// 2g+1 vertices joined by pairs a_i, b_i with b_{i+1}a_i = a_{i+1}b_i = 0.
pub fn a_g_quiver(g: usize, grading: Grading) -> QuiverPresentation {
    let m = 2 * g + 1;
    let mut arrows = Vec::new();
    for i in 1..m {
        arrows.push((format!("a{i}"), i - 1, i));
        arrows.push((format!("b{i}"), i - 1, i));
    }
    let mut rels = Vec::new();
    for i in 1..m - 1 {
        rels.push(format!("b{}*a{i} = 0", i + 1));
        rels.push(format!("a{}*b{i} = 0", i + 1));
    }
    quiver(grading, m, &arrows, &rels)
}

pub fn a_g(g: usize, grading: Grading) -> DirectedCategory {
    from_quiver(&a_g_quiver(g, grading)).expect("A_g quiver is valid")
}

pub fn cp2() -> DirectedCategory {
    from_quiver(&cp2_quiver()).expect("CP2 quiver is valid")
}

pub fn beilinson() -> DirectedCategory {
    from_quiver(&beilinson_quiver()).expect("Beilinson quiver is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl Dynkin {
    pub fn rank(self) -> usize {
        match self {
            Dynkin::A(n) | Dynkin::D(n) | Dynkin::E(n) => n,
        }
    }

    pub fn name(self) -> String {
        match self {
            Dynkin::A(n) => format!("A{n}"),
            Dynkin::D(n) => format!("D{n}"),
            Dynkin::E(n) => format!("E{n}"),
        }
    }

    /// Undirected edges on vertices 0..n.
    pub fn edges(self) -> Vec<(usize, usize)> {
        match self {
            Dynkin::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            Dynkin::D(n) => {
                assert!(n >= 4);
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Dynkin::E(n) => {
                assert!((6..=8).contains(&n));
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Every simply laced Dynkin type with at most `n` vertices.
    pub fn up_to(n: usize) -> Vec<Dynkin> {
        let mut out: Vec<Dynkin> = (1..=n).map(Dynkin::A).collect();
        out.extend((4..=n).map(Dynkin::D));
        out.extend((6..=n.min(8)).map(Dynkin::E));
        out
    }

    pub fn orientation_count(self) -> usize {
        1 << self.edges().len()
    }

    /// Path quiver with edge j reversed when bit j of `orientation` is set,
    /// vertices renumbered so that every arrow increases the index.
    pub fn quiver(self, orientation: usize) -> QuiverPresentation {
        let n = self.rank();
        let arrows: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .enumerate()
            .map(|(j, (u, v))| if orientation >> j & 1 == 1 { (v, u) } else { (u, v) })
            .collect();
        // Kahn's algorithm, smallest vertex first.
        let mut indeg = vec![0; n];
        for &(_, t) in &arrows {
            indeg[t] += 1;
        }
        let mut order = Vec::new();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
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
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let named: Vec<(String, usize, usize)> =
            arrows.iter().enumerate().map(|(j, &(s, t))| (format!("e{}", j + 1), pos[&s], pos[&t])).collect();
        quiver(Grading::Z, n, &named, &[])
    }

    pub fn category(self, orientation: usize) -> DirectedCategory {
        from_quiver(&self.quiver(orientation)).expect("Dynkin quivers are valid")
    }
}

/// C_i = (X^i[1] ⊕ X^{i+1}, a_i + b_i), 1-based.
pub fn a_g_sphere(cat: &DirectedCategory, i: usize) -> TwistedComplex {
    let d = cat.parse_element(i - 1, i, &format!("a{i} + b{i}")).expect("a_i + b_i");
    let summands = vec![Summand { object: i - 1, shift: 1 }, Summand { object: i, shift: 0 }];
    TwistedComplex::new(cat, summands, BTreeMap::from([((0, 1), d)])).expect("C_i is a twisted complex")
}

/// C_0 = (X^1 ⊕ X^2[1] ⊕ X^3 ⊕ X^4[1]) with δ = a_1, b_2, a_3, b_3b_2b_1.
pub fn a_g_extra_sphere(cat: &DirectedCategory) -> TwistedComplex {
    let el = |i: usize, k: usize, s: &str| -> BitVec { cat.parse_element(i, k, s).expect("C_0 entry") };
    let summands = [(0, 0), (1, 1), (2, 0), (3, 1)].map(|(object, shift)| Summand { object, shift }).to_vec();
    let delta = BTreeMap::from([
        ((0, 1), el(0, 1, "a1")),
        ((1, 2), el(1, 2, "b2")),
        ((2, 3), el(2, 3, "a3")),
        ((0, 3), el(0, 3, "b3*b2*b1")),
    ]);
    TwistedComplex::new(cat, summands, delta).expect("C_0 is a twisted complex")
}
