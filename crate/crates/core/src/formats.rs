//! Text formats: `.qcat` categories, `.zconf` zero-sphere configurations,
//! `.flow` Morse data and `.tw` twisted complexes.
//!
//! Every format is line based. `#` starts a comment, blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::ainfty::{from_quiver, DirectedCategory, QuiverPresentation};
use crate::gf2::BitVec;
use crate::graded::{GradedSpace, Grading};
use crate::morse::{Component, CriticalPoint, FlowData};
use crate::twcx::{ext_dim, ext_label, Summand, TwistedComplex};
use crate::zerodim::{GradedZeroSphere, ZeroConfig};

/// `line` is 0 for errors that concern the whole file.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}", self.render())]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn render(&self) -> String {
        if self.line == 0 {
            self.message.clone()
        } else {
            format!("line {}, column {}: {}", self.line, self.column, self.message)
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        ParseError { line: 0, column: 0, message: message.into() }
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    toks: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.no, column: col + 1, message: message.into() }
    }

    fn at(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.text.len(), |t| t.0)
    }

    fn tok(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        self.toks.get(i).map(|t| t.1).ok_or_else(|| self.err(self.text.len(), format!("expected {what}")))
    }

    fn expect(&self, i: usize, word: &str) -> Result<(), ParseError> {
        match self.toks.get(i) {
            Some(&(_, t)) if t == word => Ok(()),
            Some(&(c, t)) => Err(self.err(c, format!("expected `{word}`, found `{t}`"))),
            None => Err(self.err(self.text.len(), format!("expected `{word}`"))),
        }
    }

    fn int<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        let t = self.tok(i, what)?;
        t.parse().map_err(|_| self.err(self.at(i), format!("expected {what}, found `{t}`")))
    }

    fn end(&self, i: usize) -> Result<(), ParseError> {
        match self.toks.get(i) {
            None => Ok(()),
            Some(&(c, t)) => Err(self.err(c, format!("unexpected `{t}`"))),
        }
    }

    /// Text from token i to the end of the line.
    fn rest(&self, i: usize) -> &'a str {
        self.text[self.at(i)..].trim()
    }
}

fn lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (no, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, &str)> = text
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
            .collect();
        if !toks.is_empty() {
            out.push(Line { no: no + 1, text, toks });
        }
    }
    out
}

fn nonempty(src: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let ls = lines(src);
    if ls.is_empty() {
        return Err(ParseError::whole("no declarations"));
    }
    Ok(ls)
}

fn grading_word(l: &Line, i: usize) -> Result<Grading, ParseError> {
    let t = l.tok(i, "a grading")?;
    Grading::parse(t).ok_or_else(|| l.err(l.at(i), format!("unknown grading `{t}`, expected z or z2")))
}

fn grading_name(g: Grading) -> &'static str {
    match g {
        Grading::Z => "z",
        Grading::Z2 => "z2",
    }
}

/// A `.qcat` file: a quiver with relations or explicit composition tables.
#[derive(Clone, Debug)]
pub enum Qcat {
    Quiver(QuiverPresentation),
    Tables(DirectedCategory),
}

impl Qcat {
    pub fn category(&self) -> Result<DirectedCategory, ParseError> {
        match self {
            Qcat::Quiver(q) => from_quiver(q).map_err(|e| ParseError::whole(e.to_string())),
            Qcat::Tables(c) => Ok(c.clone()),
        }
    }
}

/// Parse a `.qcat` file.
///
/// ```text
/// grading z
/// objects X1 X2 X3
/// arrow a1 : X1 -> X2
/// arrow c : X1 -> X3 degree 1
/// relation a2*a1 = b2*b1
/// ```
///
/// or, with explicit tables (arguments in path order):
///
/// ```text
/// objects A B C
/// hom A B : f@0 g@1
/// mu A B C : f u = h
/// ```
pub fn parse_qcat(src: &str) -> Result<Qcat, ParseError> {
    let ls = nonempty(src)?;
    let mut grading = Grading::Z;
    let mut objects: Option<Vec<String>> = None;
    let mut quiver: Option<QuiverPresentation> = None;
    let mut tables: Option<DirectedCategory> = None;
    for l in &ls {
        let kw = l.toks[0].1;
        let need_objects = |objects: &Option<Vec<String>>| {
            objects.clone().ok_or_else(|| l.err(l.at(0), "`objects` must come first"))
        };
        match kw {
            "grading" => {
                if objects.is_some() {
                    return Err(l.err(l.at(0), "`grading` must precede `objects`"));
                }
                grading = grading_word(l, 1)?;
                l.end(2)?;
            }
            "objects" => {
                if objects.is_some() {
                    return Err(l.err(l.at(0), "duplicate `objects`"));
                }
                let names: Vec<String> = l.toks[1..].iter().map(|t| t.1.to_string()).collect();
                for (i, n) in names.iter().enumerate() {
                    if names[..i].contains(n) {
                        return Err(l.err(l.at(i + 1), format!("duplicate object `{n}`")));
                    }
                }
                objects = Some(names);
            }
            "arrow" | "relation" => {
                if tables.is_some() {
                    return Err(l.err(l.at(0), "cannot mix quiver lines with explicit tables"));
                }
                let names = need_objects(&objects)?;
                let q = quiver.get_or_insert_with(|| {
                    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                    QuiverPresentation::new(grading, &refs)
                });
                if kw == "arrow" {
                    let name = l.tok(1, "an arrow name")?;
                    l.expect(2, ":")?;
                    let s = l.tok(3, "a source")?;
                    l.expect(4, "->")?;
                    let t = l.tok(5, "a target")?;
                    let degree = if l.toks.len() > 6 {
                        l.expect(6, "degree")?;
                        let d = l.int(7, "a degree")?;
                        l.end(8)?;
                        d
                    } else {
                        0
                    };
                    q.add_arrow(name, s, t, degree).map_err(|e| l.err(l.at(1), e.to_string()))?;
                    let a = q.arrows.last().expect("just added");
                    if a.source >= a.target {
                        return Err(l.err(l.at(3), format!("arrow `{name}` must go from an earlier to a later object")));
                    }
                } else {
                    let text = l.rest(1);
                    if !text.contains('=') {
                        return Err(l.err(l.at(1), "a relation needs `=`"));
                    }
                    q.add_relation(text).map_err(|e| l.err(l.at(1), e.to_string()))?;
                    if q.relations.last().is_some_and(Vec::is_empty) {
                        return Err(l.err(l.at(1), "relation has no terms"));
                    }
                }
            }
            "hom" | "mu" => {
                if quiver.is_some() {
                    return Err(l.err(l.at(0), "cannot mix explicit tables with quiver lines"));
                }
                let names = need_objects(&objects)?;
                let c = tables.get_or_insert_with(|| DirectedCategory::new(grading, names.clone()));
                let colon = l.toks.iter().position(|t| t.1 == ":").ok_or_else(|| l.err(l.text.len(), "expected `:`"))?;
                let mut objs = Vec::new();
                for j in 1..colon {
                    let n = l.toks[j].1;
                    objs.push(c.object_index(n).map_err(|_| l.err(l.at(j), format!("unknown object `{n}`")))?);
                }
                if objs.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(l.err(l.at(1), "objects must be listed in increasing order"));
                }
                if kw == "hom" {
                    if objs.len() != 2 {
                        return Err(l.err(l.at(1), "`hom` takes two objects"));
                    }
                    if c.hom_dim(objs[0], objs[1]) > 0 {
                        return Err(l.err(l.at(0), "duplicate `hom` line"));
                    }
                    let mut basis = Vec::new();
                    for j in colon + 1..l.toks.len() {
                        let t = l.toks[j].1;
                        let (name, deg) = t.rsplit_once('@').ok_or_else(|| l.err(l.at(j), "expected label@degree"))?;
                        let deg: i64 = deg.parse().map_err(|_| l.err(l.at(j), format!("bad degree in `{t}`")))?;
                        if name.is_empty() || basis.iter().any(|(n, _): &(String, i64)| n == name) {
                            return Err(l.err(l.at(j), format!("bad or duplicate label `{name}`")));
                        }
                        basis.push((name.to_string(), deg));
                    }
                    c.set_hom(objs[0], objs[1], GradedSpace::new_unchecked(grading, basis));
                } else {
                    if objs.len() < 2 {
                        return Err(l.err(l.at(1), "`mu` needs at least two objects"));
                    }
                    let eq = l.toks.iter().position(|t| t.1 == "=").ok_or_else(|| l.err(l.text.len(), "expected `=`"))?;
                    let d = objs.len() - 1;
                    if eq != colon + 1 + d {
                        return Err(l.err(l.at(colon + 1), format!("expected {d} arguments")));
                    }
                    let mut args = Vec::new();
                    for (j, w) in objs.windows(2).enumerate() {
                        let t = l.toks[colon + 1 + j].1;
                        let p = c.hom(w[0], w[1]).position(t).ok_or_else(|| {
                            l.err(l.at(colon + 1 + j), format!("`{t}` is not a basis label of hom({}, {})", c.name(w[0]), c.name(w[1])))
                        })?;
                        args.push(p as u32);
                    }
                    let value = c
                        .parse_element(objs[0], objs[d], l.rest(eq + 1))
                        .map_err(|e| l.err(l.at(eq + 1), e.to_string()))?;
                    c.set_mu(&objs, &args, value).map_err(|e| l.err(l.at(0), e.to_string()))?;
                }
            }
            other => return Err(l.err(l.at(0), format!("unknown keyword `{other}`"))),
        }
    }
    let names = objects.ok_or_else(|| ParseError::whole("missing `objects`"))?;
    Ok(match (quiver, tables) {
        (_, Some(c)) => Qcat::Tables(c),
        (Some(q), None) => {
            q.validate().map_err(|e| ParseError::whole(e.to_string()))?;
            Qcat::Quiver(q)
        }
        (None, None) => {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Qcat::Quiver(QuiverPresentation::new(grading, &refs))
        }
    })
}

pub fn print_qcat(q: &Qcat) -> String {
    let mut s = String::new();
    match q {
        Qcat::Quiver(q) => {
            let _ = writeln!(s, "grading {}", grading_name(q.grading));
            let _ = writeln!(s, "objects {}", q.vertices.join(" "));
            for a in &q.arrows {
                let _ = write!(s, "arrow {} : {} -> {}", a.name, q.vertices[a.source], q.vertices[a.target]);
                if a.degree != 0 {
                    let _ = write!(s, " degree {}", a.degree);
                }
                s.push('\n');
            }
            for r in &q.relations {
                let terms: Vec<String> = r.iter().map(|p| q.path_label(p)).collect();
                let text = match terms.as_slice() {
                    [one] => format!("{one} = 0"),
                    [first, rest @ ..] => format!("{first} = {}", rest.join(" + ")),
                    [] => "0 = 0".into(),
                };
                let _ = writeln!(s, "relation {text}");
            }
        }
        Qcat::Tables(c) => {
            let _ = writeln!(s, "grading {}", grading_name(c.grading_group()));
            let _ = writeln!(s, "objects {}", c.names().join(" "));
            for i in 0..c.m() {
                for k in i + 1..c.m() {
                    let h = c.hom(i, k);
                    if h.dim() == 0 {
                        continue;
                    }
                    let basis: Vec<String> = (0..h.dim()).map(|j| format!("{}@{}", h.label(j), h.degree(j))).collect();
                    let _ = writeln!(s, "hom {} {} : {}", c.name(i), c.name(k), basis.join(" "));
                }
            }
            let mut entries: Vec<_> = c.entries().map(|(ch, a, v)| (ch.to_vec(), a.to_vec(), v.clone())).collect();
            entries.sort_by(|p, q| (p.0.len(), &p.0, &p.1).cmp(&(q.0.len(), &q.0, &q.1)));
            for (ch, args, v) in entries {
                let objs: Vec<usize> = ch.iter().map(|&o| o as usize).collect();
                let names: Vec<&str> = objs.iter().map(|&o| c.name(o)).collect();
                let labels: Vec<&str> =
                    objs.windows(2).zip(&args).map(|(w, &a)| c.hom(w[0], w[1]).label(a as usize)).collect();
                let out = c.hom(objs[0], *objs.last().expect("chain"));
                let value: Vec<&str> = v.ones().map(|j| out.label(j)).collect();
                let _ = writeln!(s, "mu {} : {} = {}", names.join(" "), labels.join(" "), value.join(" + "));
            }
        }
    }
    s
}

/// Parse a `.zconf` file: `fibre 8`, then `sphere {1,2} grading 0 0` lines.
pub fn parse_zconf(src: &str) -> Result<ZeroConfig, ParseError> {
    let ls = nonempty(src)?;
    let mut fibre: Option<usize> = None;
    let mut spheres = Vec::new();
    for l in &ls {
        match l.toks[0].1 {
            "fibre" => {
                if fibre.is_some() {
                    return Err(l.err(l.at(0), "duplicate `fibre`"));
                }
                fibre = Some(l.int(1, "a fibre size")?);
                l.end(2)?;
            }
            "sphere" => {
                let f = fibre.ok_or_else(|| l.err(l.at(0), "`fibre` must come first"))?;
                let t = l.tok(1, "a point pair")?;
                let inner = t
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(|| l.err(l.at(1), format!("expected {{p,q}}, found `{t}`")))?;
                let pts: Vec<usize> = inner
                    .split(',')
                    .map(|x| x.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| l.err(l.at(1), format!("bad point pair `{t}`")))?;
                if pts.len() != 2 {
                    return Err(l.err(l.at(1), "a zero-sphere has two points"));
                }
                let (gp, gq) = if l.toks.len() > 2 {
                    l.expect(2, "grading")?;
                    let g = (l.int(3, "a grading")?, l.int(4, "a grading")?);
                    l.end(5)?;
                    g
                } else {
                    (0, 0)
                };
                for &p in &pts {
                    if p == 0 || p > f {
                        return Err(l.err(l.at(1), format!("point {p} is outside 1..={f}")));
                    }
                }
                spheres.push(GradedZeroSphere::new(pts[0], pts[1], gp, gq).map_err(|e| l.err(l.at(1), e.to_string()))?);
            }
            other => return Err(l.err(l.at(0), format!("unknown keyword `{other}`"))),
        }
    }
    let fibre = fibre.ok_or_else(|| ParseError::whole("missing `fibre`"))?;
    ZeroConfig::new(fibre, spheres).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn print_zconf(cfg: &ZeroConfig) -> String {
    let mut s = format!("fibre {}\n", cfg.fibre());
    for sp in cfg.spheres() {
        let [p, q] = sp.points();
        let [gp, gq] = sp.gradings();
        let _ = writeln!(s, "sphere {{{p},{q}}} grading {gp} {gq}");
    }
    s
}

fn parse_pairs(l: &Line, i: usize, text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| l.err(l.at(i), "expected `(c2,c1)`"))?;
        let close = body.find(')').ok_or_else(|| l.err(l.at(i), "missing `)`"))?;
        let (a, b) = body[..close].split_once(',').ok_or_else(|| l.err(l.at(i), "expected `(c2,c1)`"))?;
        out.push((a.trim().to_string(), b.trim().to_string()));
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

/// Parse a `.flow` file.
///
/// ```text
/// dimension 2
/// closed
/// crit min index 0
/// traj a1 : min -> saddle
/// comp I1 : min -> max boundary (a2,a1),(b2,b1)
/// comp S : min -> max homology 1 1
/// ```
pub fn parse_flow(src: &str) -> Result<FlowData, ParseError> {
    let ls = nonempty(src)?;
    let mut f = FlowData::new(2);
    let mut dim_seen = false;
    for l in &ls {
        match l.toks[0].1 {
            "dimension" => {
                if dim_seen || !f.critical.is_empty() {
                    return Err(l.err(l.at(0), "`dimension` must come first and only once"));
                }
                f.dimension = l.int(1, "a dimension")?;
                l.end(2)?;
                dim_seen = true;
            }
            "closed" => {
                l.end(1)?;
                f.closed = true;
            }
            "crit" => {
                let name = l.tok(1, "a name")?;
                l.expect(2, "index")?;
                let index = l.int(3, "an index")?;
                l.end(4)?;
                f.critical.push(CriticalPoint { name: name.into(), index });
            }
            kw @ ("traj" | "comp") => {
                let label = l.tok(1, "a label")?;
                l.expect(2, ":")?;
                let from = l.tok(3, "a source")?;
                l.expect(4, "->")?;
                let to = l.tok(5, "a target")?;
                let mut c = Component::point(label, from, to);
                if kw == "traj" {
                    l.end(6)?;
                } else {
                    let mut i = 6;
                    while i < l.toks.len() {
                        match l.toks[i].1 {
                            "homology" => {
                                let mut h = Vec::new();
                                i += 1;
                                while i < l.toks.len() && l.toks[i].1 != "boundary" {
                                    h.push(l.int(i, "a Betti number")?);
                                    i += 1;
                                }
                                c.homology = h;
                            }
                            "boundary" => {
                                c.boundary = parse_pairs(l, i + 1, l.rest(i + 1))?;
                                i = l.toks.len();
                            }
                            t => return Err(l.err(l.at(i), format!("unexpected `{t}`"))),
                        }
                    }
                }
                f.components.push(c);
            }
            other => return Err(l.err(l.at(0), format!("unknown keyword `{other}`"))),
        }
    }
    f.validate().map_err(|e| ParseError::whole(e.to_string()))?;
    Ok(f)
}

pub fn print_flow(f: &FlowData) -> String {
    let mut s = format!("dimension {}\n", f.dimension);
    if f.closed {
        s.push_str("closed\n");
    }
    for c in &f.critical {
        let _ = writeln!(s, "crit {} index {}", c.name, c.index);
    }
    for c in &f.components {
        if c.homology == [1] && c.boundary.is_empty() {
            let _ = writeln!(s, "traj {} : {} -> {}", c.label, c.from, c.to);
            continue;
        }
        let _ = write!(s, "comp {} : {} -> {}", c.label, c.from, c.to);
        if c.homology != [1] {
            let h: Vec<String> = c.homology.iter().map(usize::to_string).collect();
            let _ = write!(s, " homology {}", h.join(" "));
        }
        if !c.boundary.is_empty() {
            let b: Vec<String> = c.boundary.iter().map(|(a, b)| format!("({a},{b})")).collect();
            let _ = write!(s, " boundary {}", b.join(","));
        }
        s.push('\n');
    }
    s
}

/// Parse a `.tw` file over `cat`. Summands are numbered from 1 in order.
///
/// ```text
/// summand X1 shift 1
/// summand X2
/// delta 1 2 : a1 + b1
/// ```
pub fn parse_tw(cat: &DirectedCategory, src: &str) -> Result<TwistedComplex, ParseError> {
    let ls = nonempty(src)?;
    let mut summands = Vec::new();
    let mut delta: BTreeMap<(usize, usize), BitVec> = BTreeMap::new();
    for l in &ls {
        match l.toks[0].1 {
            "summand" => {
                let n = l.tok(1, "an object")?;
                let object = cat.object_index(n).map_err(|_| l.err(l.at(1), format!("unknown object `{n}`")))?;
                let shift = if l.toks.len() > 2 {
                    l.expect(2, "shift")?;
                    let s = l.int(3, "a shift")?;
                    l.end(4)?;
                    s
                } else {
                    0
                };
                summands.push(Summand { object, shift });
            }
            "delta" => {
                let p: usize = l.int(1, "a summand number")?;
                let q: usize = l.int(2, "a summand number")?;
                l.expect(3, ":")?;
                if p == 0 || q == 0 || p > summands.len() || q > summands.len() {
                    return Err(l.err(l.at(1), "summands must be declared before use"));
                }
                if p >= q {
                    return Err(l.err(l.at(1), "δ must go from an earlier summand to a later one"));
                }
                let (a, b) = (summands[p - 1].object, summands[q - 1].object);
                if a > b {
                    return Err(l.err(l.at(1), "δ cannot go from a later object to an earlier one"));
                }
                let text = l.rest(4);
                let v = if a == b {
                    let mut v = BitVec::zeros(1);
                    for t in text.split('+').map(str::trim) {
                        match t {
                            "id" => v.flip(0),
                            "0" => {}
                            _ => return Err(l.err(l.at(4), format!("only `id` is allowed between equal objects, found `{t}`"))),
                        }
                    }
                    v
                } else {
                    cat.parse_element(a, b, text).map_err(|e| l.err(l.at(4), e.to_string()))?
                };
                if delta.insert((p - 1, q - 1), v).is_some() {
                    return Err(l.err(l.at(0), "duplicate δ component"));
                }
            }
            other => return Err(l.err(l.at(0), format!("unknown keyword `{other}`"))),
        }
    }
    TwistedComplex::new(cat, summands, delta).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn print_tw(cat: &DirectedCategory, t: &TwistedComplex) -> String {
    let mut s = String::new();
    for x in t.summands() {
        let _ = write!(s, "summand {}", cat.name(x.object));
        if x.shift != 0 {
            let _ = write!(s, " shift {}", x.shift);
        }
        s.push('\n');
    }
    for (&(p, q), v) in t.delta() {
        let (a, b) = (t.summands()[p].object, t.summands()[q].object);
        debug_assert_eq!(v.len(), ext_dim(cat, a, b));
        let terms: Vec<String> = v.ones().map(|i| ext_label(cat, a, b, i)).collect();
        let _ = writeln!(s, "delta {} {} : {}", p + 1, q + 1, terms.join(" + "));
    }
    s
}
