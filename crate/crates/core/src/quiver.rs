//! Quivers, paths, monomial relations, and bound quiver presentations.
//!
//! The presentation text format is line-based:
//!
//! ```text
//! quiver a32
//! vertex 1 2 3 4 5
//! arrow alpha : 1 -> 1
//! arrow beta1 : 1 -> 2
//! relation alpha alpha        # arrows in traversal order
//! ```
//!
//! Storage is traversal order (first-traversed arrow first); display follows
//! the usual right-to-left composition convention, so the relation
//! `gamma1 beta1` (traverse gamma1, then beta1) prints as `beta1 gamma1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result, SourcePos};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    vertex_names: Vec<String>,
    vertex_index: BTreeMap<String, VertexId>,
    arrows: Vec<Arrow>,
    arrow_index: BTreeMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::Domain(format!("duplicate vertex `{name}`")));
        }
        let id = self.vertex_names.len();
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::Domain(format!("duplicate arrow `{name}`")));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_data(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }
}

/// A path: composable arrows in traversal order, or a trivial path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathWord {
    Trivial(VertexId),
    Arrows(Vec<ArrowId>),
}

impl PathWord {
    pub fn len(&self) -> usize {
        match self {
            PathWord::Trivial(_) => 0,
            PathWord::Arrows(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self, q: &Quiver) -> VertexId {
        match self {
            PathWord::Trivial(v) => *v,
            PathWord::Arrows(a) => q.arrow_data(a[0]).source,
        }
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        match self {
            PathWord::Trivial(v) => *v,
            PathWord::Arrows(a) => q.arrow_data(*a.last().expect("nonempty")).target,
        }
    }

    pub fn is_composable(&self, q: &Quiver) -> bool {
        match self {
            PathWord::Trivial(_) => true,
            PathWord::Arrows(a) => a
                .windows(2)
                .all(|w| q.arrow_data(w[0]).target == q.arrow_data(w[1]).source),
        }
    }

    /// Right-to-left rendering: last-traversed arrow first.
    pub fn render(&self, q: &Quiver) -> String {
        match self {
            PathWord::Trivial(v) => format!("e({})", q.vertex_name(*v)),
            PathWord::Arrows(a) => a
                .iter()
                .rev()
                .map(|&x| q.arrow_data(x).name.clone())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

/// A bound quiver presentation kQ/I with monomial relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: Option<String>,
    pub quiver: Quiver,
    /// Relation paths, traversal order, each of length >= 2; sorted, deduped.
    relations: Vec<Vec<ArrowId>>,
}

impl Presentation {
    pub fn new(name: Option<String>, quiver: Quiver, relations: Vec<Vec<ArrowId>>) -> Result<Self> {
        for rel in &relations {
            if rel.len() < 2 {
                return Err(Error::Domain("relation shorter than 2 arrows".into()));
            }
            let pw = PathWord::Arrows(rel.clone());
            if !pw.is_composable(&quiver) {
                return Err(Error::Domain(format!(
                    "relation {} is not a composable path",
                    pw.render(&quiver)
                )));
            }
        }
        let mut relations = relations;
        relations.sort();
        relations.dedup();
        Ok(Presentation {
            name,
            quiver,
            relations,
        })
    }

    pub fn relations(&self) -> &[Vec<ArrowId>] {
        &self.relations
    }

    /// True iff some relation occurs as a contiguous subword of `arrows`
    /// (traversal order).
    pub fn path_hits_relation(&self, arrows: &[ArrowId]) -> bool {
        self.relations.iter().any(|rel| {
            arrows.len() >= rel.len() && arrows.windows(rel.len()).any(|w| w == rel.as_slice())
        })
    }

    /// Longest relation, 0 when there are none.
    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    /// All relation-free paths, trivial paths included. Errors when the path
    /// algebra is infinite-dimensional.
    pub fn nonzero_paths(&self) -> Result<Vec<PathWord>> {
        self.check_finite_dimensional()?;
        let q = &self.quiver;
        let mut out: Vec<PathWord> = (0..q.vertex_count()).map(PathWord::Trivial).collect();
        let mut frontier: Vec<Vec<ArrowId>> = (0..q.arrow_count()).map(|a| vec![a]).collect();
        while let Some(p) = frontier.pop() {
            if self.path_hits_relation(&p) {
                continue;
            }
            let end = q.arrow_data(*p.last().expect("nonempty")).target;
            for b in q.arrows_from(end) {
                let mut ext = p.clone();
                ext.push(b);
                frontier.push(ext);
            }
            out.push(PathWord::Arrows(p));
        }
        out.sort();
        Ok(out)
    }

    /// The path algebra is finite-dimensional iff no directed cycle can be
    /// traversed forever without hitting a relation. States are the trailing
    /// windows of length max_relation_len - 1.
    pub fn check_finite_dimensional(&self) -> Result<()> {
        let q = &self.quiver;
        if q.arrow_count() == 0 {
            return Ok(());
        }
        let w = self.max_relation_len().saturating_sub(1).max(1);
        // states: relation-free arrow sequences of length <= w, reachable
        let mut states: Vec<Vec<ArrowId>> = Vec::new();
        let mut index: BTreeMap<Vec<ArrowId>, usize> = BTreeMap::new();
        for a in 0..q.arrow_count() {
            let s = vec![a];
            if !self.path_hits_relation(&s) && !index.contains_key(&s) {
                index.insert(s.clone(), states.len());
                states.push(s);
            }
        }
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); states.len()];
        let mut i = 0;
        while i < states.len() {
            let s = states[i].clone();
            let end = q.arrow_data(*s.last().expect("nonempty")).target;
            for b in q.arrows_from(end) {
                let mut ext = s.clone();
                ext.push(b);
                if self.path_hits_relation(&ext) {
                    continue;
                }
                if ext.len() > w {
                    ext.remove(0);
                }
                let j = *index.entry(ext.clone()).or_insert_with(|| {
                    states.push(ext);
                    edges.push(Vec::new());
                    states.len() - 1
                });
                edges[i].push(j);
            }
            i += 1;
        }
        if has_cycle(&edges) {
            return Err(Error::InfiniteDimensional);
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("quiver {name}\n"));
        }
        if q.vertex_count() > 0 {
            out.push_str("vertex");
            for v in 0..q.vertex_count() {
                out.push(' ');
                out.push_str(q.vertex_name(v));
            }
            out.push('\n');
        }
        for a in q.arrows() {
            out.push_str(&format!(
                "arrow {} : {} -> {}\n",
                a.name,
                q.vertex_name(a.source),
                q.vertex_name(a.target)
            ));
        }
        for rel in &self.relations {
            out.push_str("relation");
            for &a in rel {
                out.push(' ');
                out.push_str(&q.arrow_data(a).name);
            }
            out.push('\n');
        }
        out
    }
}

fn has_cycle(edges: &[Vec<usize>]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        White,
        Grey,
        Black,
    }
    let mut mark = vec![Mark::White; edges.len()];
    for start in 0..edges.len() {
        if mark[start] != Mark::White {
            continue;
        }
        // iterative DFS with explicit exit events
        let mut stack = vec![(start, false)];
        while let Some((v, exiting)) = stack.pop() {
            if exiting {
                mark[v] = Mark::Black;
                continue;
            }
            if mark[v] == Mark::Black {
                continue;
            }
            if mark[v] == Mark::Grey {
                continue;
            }
            mark[v] = Mark::Grey;
            stack.push((v, true));
            for &u in &edges[v] {
                match mark[u] {
                    Mark::Grey => return true,
                    Mark::White => stack.push((u, false)),
                    Mark::Black => {}
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = None;
    let mut quiver = Quiver::new();
    let mut relations: Vec<Vec<ArrowId>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = tokens(line, lineno + 1);
        let Some((kw, pos)) = toks.next() else {
            continue;
        };
        let err = |pos: SourcePos, msg: String| Error::Parse { pos, msg };
        match kw {
            "quiver" => {
                let (n, _) = toks
                    .next()
                    .ok_or_else(|| err(pos, "expected a name after `quiver`".into()))?;
                name = Some(n.to_string());
            }
            "vertex" => {
                let mut any = false;
                for (v, vpos) in toks.by_ref() {
                    any = true;
                    quiver.add_vertex(v).map_err(|e| err(vpos, e.to_string()))?;
                }
                if !any {
                    return Err(err(pos, "expected at least one vertex id".into()));
                }
            }
            "arrow" => {
                let (aname, apos) = toks
                    .next()
                    .ok_or_else(|| err(pos, "expected arrow name".into()))?;
                let (colon, cpos) = toks
                    .next()
                    .ok_or_else(|| err(apos, "expected `:`".into()))?;
                if colon != ":" {
                    return Err(err(cpos, format!("expected `:`, found `{colon}`")));
                }
                let (src, spos) = toks
                    .next()
                    .ok_or_else(|| err(cpos, "expected source vertex".into()))?;
                let (ar, arpos) = toks
                    .next()
                    .ok_or_else(|| err(spos, "expected `->`".into()))?;
                if ar != "->" {
                    return Err(err(arpos, format!("expected `->`, found `{ar}`")));
                }
                let (tgt, tpos) = toks
                    .next()
                    .ok_or_else(|| err(arpos, "expected target vertex".into()))?;
                if let Some((extra, epos)) = toks.next() {
                    return Err(err(epos, format!("unexpected token `{extra}`")));
                }
                quiver
                    .add_arrow(aname, src, tgt)
                    .map_err(|e| err(tpos, e.to_string()))?;
            }
            "relation" => {
                let mut rel = Vec::new();
                let mut last_pos = pos;
                for (aname, apos) in toks.by_ref() {
                    let a = quiver.arrow(aname).map_err(|e| err(apos, e.to_string()))?;
                    if let Some(&prev) = rel.last() {
                        if quiver.arrow_data(prev).target != quiver.arrow_data(a).source {
                            return Err(err(
                                apos,
                                format!(
                                    "relation path not composable: `{}` does not follow `{}`",
                                    aname,
                                    quiver.arrow_data(prev).name
                                ),
                            ));
                        }
                    }
                    rel.push(a);
                    last_pos = apos;
                }
                if rel.len() < 2 {
                    return Err(err(last_pos, "relation needs at least 2 arrows".into()));
                }
                relations.push(rel);
            }
            other => {
                return Err(err(pos, format!("unknown statement `{other}`")));
            }
        }
    }
    Presentation::new(name, quiver, relations)
}

fn tokens(line: &str, lineno: usize) -> impl Iterator<Item = (&str, SourcePos)> {
    let mut col = 0usize;
    let bytes = line.as_bytes();
    std::iter::from_fn(move || {
        while col < bytes.len() && bytes[col].is_ascii_whitespace() {
            col += 1;
        }
        if col >= bytes.len() {
            return None;
        }
        let start = col;
        while col < bytes.len() && !bytes[col].is_ascii_whitespace() {
            col += 1;
        }
        Some((
            &line[start..col],
            SourcePos {
                line: lineno,
                col: start + 1,
            },
        ))
    })
}

// ---------------------------------------------------------------------------
// string-algebra validation
// ---------------------------------------------------------------------------

/// One violated string-algebra condition, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// More than two arrows start at the vertex.
    TooManyArrowsOut { vertex: String, arrows: Vec<String> },
    /// More than two arrows end at the vertex.
    TooManyArrowsIn { vertex: String, arrows: Vec<String> },
    /// More than one arrow continues the given arrow outside the ideal.
    AmbiguousContinuation {
        arrow: String,
        continuations: Vec<String>,
    },
    /// More than one arrow precedes the given arrow outside the ideal.
    AmbiguousPredecessor {
        arrow: String,
        predecessors: Vec<String>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyArrowsOut { vertex, arrows } => {
                write!(
                    f,
                    "vertex {vertex} has {} outgoing arrows ({})",
                    arrows.len(),
                    arrows.join(", ")
                )
            }
            Violation::TooManyArrowsIn { vertex, arrows } => {
                write!(
                    f,
                    "vertex {vertex} has {} incoming arrows ({})",
                    arrows.len(),
                    arrows.join(", ")
                )
            }
            Violation::AmbiguousContinuation {
                arrow,
                continuations,
            } => {
                write!(
                    f,
                    "arrow {arrow} has several continuations outside the ideal ({})",
                    continuations.join(", ")
                )
            }
            Violation::AmbiguousPredecessor {
                arrow,
                predecessors,
            } => {
                write!(
                    f,
                    "arrow {arrow} has several predecessors outside the ideal ({})",
                    predecessors.join(", ")
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringAlgebraReport {
    pub violations: Vec<Violation>,
}

impl StringAlgebraReport {
    pub fn is_string_algebra(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three string-algebra conditions; the monomial condition holds
/// by construction of the type. Returns every violated condition with a
/// witness.
pub fn is_string_algebra(pres: &Presentation) -> StringAlgebraReport {
    let q = &pres.quiver;
    let mut violations = Vec::new();
    for v in 0..q.vertex_count() {
        let out: Vec<ArrowId> = q.arrows_from(v).collect();
        if out.len() > 2 {
            violations.push(Violation::TooManyArrowsOut {
                vertex: q.vertex_name(v).to_string(),
                arrows: out.iter().map(|&a| q.arrow_data(a).name.clone()).collect(),
            });
        }
        let inc: Vec<ArrowId> = q.arrows_into(v).collect();
        if inc.len() > 2 {
            violations.push(Violation::TooManyArrowsIn {
                vertex: q.vertex_name(v).to_string(),
                arrows: inc.iter().map(|&a| q.arrow_data(a).name.clone()).collect(),
            });
        }
    }
    for a in 0..q.arrow_count() {
        let tgt = q.arrow_data(a).target;
        let conts: Vec<ArrowId> = q
            .arrows_from(tgt)
            .filter(|&b| !pres.path_hits_relation(&[a, b]))
            .collect();
        if conts.len() > 1 {
            violations.push(Violation::AmbiguousContinuation {
                arrow: q.arrow_data(a).name.clone(),
                continuations: conts
                    .iter()
                    .map(|&b| q.arrow_data(b).name.clone())
                    .collect(),
            });
        }
        let src = q.arrow_data(a).source;
        let preds: Vec<ArrowId> = q
            .arrows_into(src)
            .filter(|&b| !pres.path_hits_relation(&[b, a]))
            .collect();
        if preds.len() > 1 {
            violations.push(Violation::AmbiguousPredecessor {
                arrow: q.arrow_data(a).name.clone(),
                predecessors: preds
                    .iter()
                    .map(|&b| q.arrow_data(b).name.clone())
                    .collect(),
            });
        }
    }
    StringAlgebraReport { violations }
}

// ---------------------------------------------------------------------------
// the A(n,m) family
// ---------------------------------------------------------------------------

/// The family A(n,m): a loop alpha at vertex 1 with alpha^2 = 0, a beta chain
/// 1 -> 2 -> ... -> n with beta2 beta1 = 0 (n >= 3), and a gamma chain
/// n+m -> ... -> n+1 -> 1 with beta1 gamma1 = 0 (m >= 1).
pub fn build_a_nm(n: i64, m: i64) -> Result<Presentation> {
    if n < 2 || m < 0 {
        return Err(Error::BadFamilyParameters { n, m });
    }
    let mut q = Quiver::new();
    for i in 1..=(n + m) {
        q.add_vertex(&i.to_string())?;
    }
    let alpha = q.add_arrow("alpha", "1", "1")?;
    let mut beta = Vec::new();
    for i in 1..n {
        beta.push(q.add_arrow(&format!("beta{i}"), &i.to_string(), &(i + 1).to_string())?);
    }
    let mut gamma = Vec::new();
    for j in 1..=m {
        let src = (n + j).to_string();
        let tgt = if j == 1 {
            "1".to_string()
        } else {
            (n + j - 1).to_string()
        };
        gamma.push(q.add_arrow(&format!("gamma{j}"), &src, &tgt)?);
    }
    let mut relations = vec![vec![alpha, alpha]];
    if m >= 1 {
        relations.push(vec![gamma[0], beta[0]]);
    }
    if n >= 3 {
        relations.push(vec![beta[0], beta[1]]);
    }
    Presentation::new(Some(format!("a{n}_{m}")), q, relations)
}
