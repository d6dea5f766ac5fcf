//! The string calculus: letters, walks, strings, peaks and deeps, hooks and
//! cohooks, canonical forms, enumeration, and band detection.
//!
//! A word stores its letters in traversal order (first-traversed letter
//! first); the string literal syntax and all rendering use the right-to-left
//! composition convention, with `~` marking a formal inverse. So the literal
//! `beta1 ~alpha ~beta1` is the walk that traverses beta1 backwards, then
//! alpha backwards, then beta1.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Presentation, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            inverse: false,
        }
    }

    pub fn inv(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            inverse: true,
        }
    }

    pub fn flipped(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    /// Start vertex; for an inverse letter this is the end of the arrow.
    pub fn source(self, pres: &Presentation) -> VertexId {
        let a = pres.quiver.arrow_data(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, pres: &Presentation) -> VertexId {
        let a = pres.quiver.arrow_data(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// Why a letter sequence fails to be a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringViolation {
    Empty,
    NotComposable { position: usize },
    NotReduced { position: usize },
    RelationViolation { position: usize, relation: String },
}

impl std::fmt::Display for StringViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StringViolation::Empty => write!(f, "empty letter sequence"),
            StringViolation::NotComposable { position } => {
                write!(
                    f,
                    "letters {} and {} are not composable",
                    position,
                    position + 1
                )
            }
            StringViolation::NotReduced { position } => {
                write!(f, "letter {} is followed by its own inverse", position)
            }
            StringViolation::RelationViolation { position, relation } => {
                write!(
                    f,
                    "subwalk at letter {position} lies in the ideal (relation {relation})"
                )
            }
        }
    }
}

/// Checks the string axioms for a letter sequence over `pres`: composable,
/// reduced, and no direct run (in either reading) lies in the ideal.
pub fn check_string(
    pres: &Presentation,
    letters: &[Letter],
) -> std::result::Result<(), StringViolation> {
    if letters.is_empty() {
        return Err(StringViolation::Empty);
    }
    for (i, w) in letters.windows(2).enumerate() {
        if w[0].target(pres) != w[1].source(pres) {
            return Err(StringViolation::NotComposable { position: i });
        }
        if w[0].arrow == w[1].arrow && w[0].inverse != w[1].inverse {
            return Err(StringViolation::NotReduced { position: i });
        }
    }
    // maximal same-direction runs, read as paths
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j].inverse == letters[i].inverse {
            j += 1;
        }
        let mut arrows: Vec<ArrowId> = letters[i..j].iter().map(|l| l.arrow).collect();
        if letters[i].inverse {
            arrows.reverse();
        }
        for rel in pres.relations() {
            if arrows.len() >= rel.len() {
                if let Some(k) = arrows.windows(rel.len()).position(|w| w == rel.as_slice()) {
                    let relation =
                        crate::quiver::PathWord::Arrows(rel.clone()).render(&pres.quiver);
                    return Err(StringViolation::RelationViolation {
                        position: i + k,
                        relation,
                    });
                }
            }
        }
        i = j;
    }
    Ok(())
}

/// Decision form of [`check_string`].
pub fn is_string(pres: &Presentation, letters: &[Letter]) -> (bool, Option<StringViolation>) {
    match check_string(pres, letters) {
        Ok(()) => (true, None),
        Err(v) => (false, Some(v)),
    }
}

/// A string over a presentation: a trivial string at a vertex or a valid
/// reduced relation-avoiding walk.
#[derive(Debug, Clone)]
pub struct StringWord {
    pres: Arc<Presentation>,
    word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Word {
    Trivial(VertexId),
    Letters(Vec<Letter>),
}

impl PartialEq for StringWord {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.pres == other.pres
    }
}
impl Eq for StringWord {}

/// Total order on strings used for canonical representatives: tokens in
/// right-to-left (display) order, compared as (arrow name, direction) with
/// direct before inverse; trivial strings sort by vertex name, before words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonKey {
    Trivial(String),
    Word(Vec<(String, bool)>),
}

impl StringWord {
    pub fn trivial(pres: Arc<Presentation>, vertex: VertexId) -> Self {
        assert!(vertex < pres.quiver.vertex_count());
        StringWord {
            pres,
            word: Word::Trivial(vertex),
        }
    }

    pub fn from_letters(pres: Arc<Presentation>, letters: Vec<Letter>) -> Result<Self> {
        check_string(&pres, &letters).map_err(|v| Error::NotAString(v.to_string()))?;
        Ok(StringWord {
            pres,
            word: Word::Letters(letters),
        })
    }

    pub(crate) fn from_letters_unchecked(pres: Arc<Presentation>, letters: Vec<Letter>) -> Self {
        debug_assert!(check_string(&pres, &letters).is_ok());
        StringWord {
            pres,
            word: Word::Letters(letters),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.word, Word::Trivial(_))
    }

    pub fn len(&self) -> usize {
        match &self.word {
            Word::Trivial(_) => 0,
            Word::Letters(ls) => ls.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> &[Letter] {
        match &self.word {
            Word::Trivial(_) => &[],
            Word::Letters(ls) => ls,
        }
    }

    pub fn source(&self) -> VertexId {
        match &self.word {
            Word::Trivial(v) => *v,
            Word::Letters(ls) => ls[0].source(&self.pres),
        }
    }

    pub fn target(&self) -> VertexId {
        match &self.word {
            Word::Trivial(v) => *v,
            Word::Letters(ls) => ls.last().expect("nonempty").target(&self.pres),
        }
    }

    /// Vertices visited by the walk, length len() + 1.
    pub fn visited_vertices(&self) -> Vec<VertexId> {
        match &self.word {
            Word::Trivial(v) => vec![*v],
            Word::Letters(ls) => {
                let mut out = Vec::with_capacity(ls.len() + 1);
                out.push(ls[0].source(&self.pres));
                out.extend(ls.iter().map(|l| l.target(&self.pres)));
                out
            }
        }
    }

    /// The inverse string: letters reversed with directions flipped.
    pub fn inverse(&self) -> StringWord {
        match &self.word {
            Word::Trivial(_) => self.clone(),
            Word::Letters(ls) => StringWord {
                pres: self.pres.clone(),
                word: Word::Letters(ls.iter().rev().map(|l| l.flipped()).collect()),
            },
        }
    }

    pub fn key(&self) -> CanonKey {
        let q = &self.pres.quiver;
        match &self.word {
            Word::Trivial(v) => CanonKey::Trivial(q.vertex_name(*v).to_string()),
            Word::Letters(ls) => CanonKey::Word(
                ls.iter()
                    .rev()
                    .map(|l| (q.arrow_data(l.arrow).name.clone(), l.inverse))
                    .collect(),
            ),
        }
    }

    /// Canonical representative of the pair {C, C^{-1}}.
    pub fn canonical(&self) -> StringWord {
        let inv = self.inverse();
        if self.key() <= inv.key() {
            self.clone()
        } else {
            inv
        }
    }

    pub fn canonical_key(&self) -> CanonKey {
        self.canonical().key()
    }

    /// Right-to-left rendering with `~` for inverse letters, `e(v)` trivial.
    pub fn render(&self) -> String {
        let q = &self.pres.quiver;
        match &self.word {
            Word::Trivial(v) => format!("e({})", q.vertex_name(*v)),
            Word::Letters(ls) => ls
                .iter()
                .rev()
                .map(|l| {
                    let name = &q.arrow_data(l.arrow).name;
                    if l.inverse {
                        format!("~{name}")
                    } else {
                        name.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Parses the literal syntax: whitespace-separated letters in display
    /// order, `~` marks an inverse, `e(<vertex>)` is a trivial string.
    pub fn parse(pres: Arc<Presentation>, text: &str) -> Result<StringWord> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e(").and_then(|s| s.strip_suffix(')')) {
            let vid = pres.quiver.vertex(v.trim())?;
            return Ok(StringWord::trivial(pres, vid));
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_prefix('~') {
                Some(rest) => (rest, true),
                None => (tok, false),
            };
            let arrow = pres.quiver.arrow(name)?;
            letters.push(Letter { arrow, inverse });
        }
        letters.reverse(); // display order -> traversal order
        if letters.is_empty() {
            return Err(Error::NotAString("empty literal".into()));
        }
        StringWord::from_letters(pres, letters)
    }

    // -- extension primitives -------------------------------------------

    fn with_letters(&self, letters: Vec<Letter>) -> StringWord {
        StringWord::from_letters_unchecked(self.pres.clone(), letters)
    }

    /// Letters l such that prepending l keeps a valid string.
    pub(crate) fn prepend_candidates(&self, inverse: bool) -> Vec<Letter> {
        let p = &self.pres;
        let v = self.source();
        let mut out = Vec::new();
        for a in 0..p.quiver.arrow_count() {
            let l = Letter { arrow: a, inverse };
            if l.target(p) != v {
                continue;
            }
            let mut ls = vec![l];
            ls.extend_from_slice(self.letters());
            if check_string(p, &ls).is_ok() {
                out.push(l);
            }
        }
        out.sort_by(|a, b| arrow_name(p, *a).cmp(arrow_name(p, *b)));
        out
    }

    pub(crate) fn append_candidates(&self, inverse: bool) -> Vec<Letter> {
        let p = &self.pres;
        let v = self.target();
        let mut out = Vec::new();
        for a in 0..p.quiver.arrow_count() {
            let l = Letter { arrow: a, inverse };
            if l.source(p) != v {
                continue;
            }
            let mut ls = self.letters().to_vec();
            ls.push(l);
            if check_string(p, &ls).is_ok() {
                out.push(l);
            }
        }
        out.sort_by(|a, b| arrow_name(p, *a).cmp(arrow_name(p, *b)));
        out
    }

    pub(crate) fn prepend(&self, l: Letter) -> StringWord {
        let mut ls = vec![l];
        ls.extend_from_slice(self.letters());
        self.with_letters(ls)
    }

    pub(crate) fn append(&self, l: Letter) -> StringWord {
        let mut ls = self.letters().to_vec();
        ls.push(l);
        self.with_letters(ls)
    }

    // -- boundary classification -----------------------------------------

    /// Starts in a peak: no arrow b with Cb a string (b traversed first).
    pub fn starts_in_peak(&self) -> bool {
        self.prepend_candidates(false).is_empty()
    }

    /// Starts in a deep: no arrow g with Cg^{-1} a string.
    pub fn starts_in_deep(&self) -> bool {
        self.prepend_candidates(true).is_empty()
    }

    pub fn ends_in_peak(&self) -> bool {
        self.inverse().starts_in_peak()
    }

    pub fn ends_in_deep(&self) -> bool {
        self.inverse().starts_in_deep()
    }

    pub fn boundary_class(&self) -> BoundaryClass {
        BoundaryClass {
            starts_in_peak: self.starts_in_peak(),
            starts_in_deep: self.starts_in_deep(),
            ends_in_peak: self.ends_in_peak(),
            ends_in_deep: self.ends_in_deep(),
        }
    }

    // -- hooks and cohooks -------------------------------------------------

    /// Adds a hook at the start: prepend the unique arrow keeping a string,
    /// then the maximal run of inverse letters. The result starts in a deep.
    ///
    /// On trivial strings the first step can admit two arrows; ties go to
    /// the shortest result, then the canonical order (this realizes the
    /// degenerate forms, e.g. a cohook that is a single direct letter).
    pub fn add_hook_start(&self) -> Result<StringWord> {
        let firsts = self.prepend_candidates(false);
        if firsts.is_empty() {
            return Err(Error::HookUndefined(format!(
                "{} starts in a peak",
                self.render()
            )));
        }
        let mut results = Vec::new();
        for f in firsts {
            let mut w = self.prepend(f);
            loop {
                let ext = w.prepend_candidates(true);
                match ext.len() {
                    0 => break,
                    1 => w = w.prepend(ext[0]),
                    _ => return Err(Error::HookUndefined("ambiguous inverse extension".into())),
                }
            }
            results.push(w);
        }
        results.sort_by_key(|w| (w.len(), w.key()));
        Ok(results.remove(0))
    }

    /// Adds a cohook at the start: prepend the unique inverse letter keeping
    /// a string, then the maximal run of direct letters. The result starts in
    /// a peak.
    pub fn add_cohook_start(&self) -> Result<StringWord> {
        let firsts = self.prepend_candidates(true);
        if firsts.is_empty() {
            return Err(Error::HookUndefined(format!(
                "{} starts in a deep",
                self.render()
            )));
        }
        let mut results = Vec::new();
        for f in firsts {
            let mut w = self.prepend(f);
            loop {
                let ext = w.prepend_candidates(false);
                match ext.len() {
                    0 => break,
                    1 => w = w.prepend(ext[0]),
                    _ => return Err(Error::HookUndefined("ambiguous direct extension".into())),
                }
            }
            results.push(w);
        }
        results.sort_by_key(|w| (w.len(), w.key()));
        Ok(results.remove(0))
    }

    pub fn add_hook_end(&self) -> Result<StringWord> {
        Ok(self.inverse().add_hook_start()?.inverse())
    }

    pub fn add_cohook_end(&self) -> Result<StringWord> {
        Ok(self.inverse().add_cohook_start()?.inverse())
    }

    /// Removes a cohook from the start: strips the maximal initial run of
    /// direct letters plus the following inverse letter. None when the word
    /// has no inverse letter (or is trivial).
    pub(crate) fn delete_cohook_start(&self) -> Option<StringWord> {
        let ls = self.letters();
        let i = ls.iter().position(|l| l.inverse)?;
        let rest = &ls[i + 1..];
        Some(if rest.is_empty() {
            StringWord::trivial(self.pres.clone(), ls[i].target(&self.pres))
        } else {
            self.with_letters(rest.to_vec())
        })
    }

    pub(crate) fn delete_cohook_end(&self) -> Option<StringWord> {
        Some(self.inverse().delete_cohook_start()?.inverse())
    }

    /// Transport along the opposite presentation (see [`opposite`]): same
    /// letter order, directions flipped, arrows replaced by their reverses.
    pub(crate) fn opposite(&self, op: &Arc<Presentation>) -> StringWord {
        match &self.word {
            Word::Trivial(v) => StringWord::trivial(op.clone(), *v),
            Word::Letters(ls) => {
                let letters = ls.iter().map(|l| Letter {
                    arrow: l.arrow,
                    inverse: !l.inverse,
                });
                StringWord::from_letters_unchecked(op.clone(), letters.collect())
            }
        }
    }
}

fn arrow_name(p: &Presentation, l: Letter) -> &str {
    &p.quiver.arrow_data(l.arrow).name
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryClass {
    pub starts_in_peak: bool,
    pub starts_in_deep: bool,
    pub ends_in_peak: bool,
    pub ends_in_deep: bool,
}

/// The opposite presentation: every arrow reversed, relations reversed.
/// Vertex and arrow names and declaration order are preserved, so ids agree.
pub fn opposite(pres: &Presentation) -> Result<Presentation> {
    let q = &pres.quiver;
    let mut oq = crate::quiver::Quiver::new();
    for v in 0..q.vertex_count() {
        oq.add_vertex(q.vertex_name(v))?;
    }
    for a in q.arrows() {
        oq.add_arrow(&a.name, q.vertex_name(a.target), q.vertex_name(a.source))?;
    }
    let relations = pres
        .relations()
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    Presentation::new(
        pres.name.as_deref().map(|n| format!("{n}_op")).or(None),
        oq,
        relations,
    )
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// All strings up to inversion, canonical representative per pair, trivial
/// strings included, sorted by canonical key. Errors with InfiniteType when
/// a band exists and InfiniteDimensional when the path algebra itself is
/// infinite-dimensional; with neither, termination is guaranteed.
pub fn enumerate_strings(pres: &Arc<Presentation>) -> Result<Vec<StringWord>> {
    pres.check_finite_dimensional()?;
    let bands = find_bands(pres);
    if let Some(b) = bands.first() {
        return Err(Error::InfiniteType(b.render()));
    }
    let mut out: Vec<StringWord> = (0..pres.quiver.vertex_count())
        .map(|v| StringWord::trivial(pres.clone(), v))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier: Vec<StringWord> = Vec::new();
    for a in 0..pres.quiver.arrow_count() {
        for inverse in [false, true] {
            let ls = vec![Letter { arrow: a, inverse }];
            if check_string(pres, &ls).is_ok() {
                frontier.push(StringWord::from_letters_unchecked(pres.clone(), ls));
            }
        }
    }
    while let Some(w) = frontier.pop() {
        let key = w.key();
        if !seen.insert(key) {
            continue;
        }
        for inverse in [false, true] {
            for l in w.append_candidates(inverse) {
                frontier.push(w.append(l));
            }
        }
        let canon = w.canonical();
        if canon.key() == w.key() {
            out.push(w);
        }
    }
    out.sort_by_key(|w| w.key());
    out.dedup_by_key(|w| w.key());
    Ok(out)
}

// ---------------------------------------------------------------------------
// bands
// ---------------------------------------------------------------------------

/// A cyclic string witnessing infinite representation type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pres: Arc<Presentation>,
    /// canonical rotation, traversal order
    letters: Vec<Letter>,
}

impl Band {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn render(&self) -> String {
        StringWord::from_letters_unchecked(self.pres.clone(), self.letters.clone()).render()
    }
}

/// Detects bands: primitive cyclic words, every rotation a string, containing
/// both a direct and an inverse letter. Detection walks elementary cycles of
/// the letter-extension automaton whose states carry enough trailing context
/// to decide relation windows across the wrap-around.
pub fn find_bands(pres: &Arc<Presentation>) -> Vec<Band> {
    let window = pres.max_relation_len().saturating_sub(1).max(1);
    // states: valid letter sequences of length <= window (same constraints as
    // string suffixes)
    let mut states: Vec<Vec<Letter>> = Vec::new();
    let mut index: std::collections::BTreeMap<Vec<(usize, bool)>, usize> = Default::default();
    let keyof = |ls: &[Letter]| ls.iter().map(|l| (l.arrow, l.inverse)).collect::<Vec<_>>();
    for a in 0..pres.quiver.arrow_count() {
        for inverse in [false, true] {
            let s = vec![Letter { arrow: a, inverse }];
            if check_string(pres, &s).is_ok() {
                index.insert(keyof(&s), states.len());
                states.push(s);
            }
        }
    }
    let mut edges: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); states.len()];
    let mut i = 0;
    while i < states.len() {
        let s = states[i].clone();
        let w = StringWord::from_letters_unchecked(pres.clone(), s.clone());
        for inverse in [false, true] {
            for l in w.append_candidates(inverse) {
                let mut ext = s.clone();
                ext.push(l);
                if ext.len() > window {
                    ext.remove(0);
                }
                let j = *index.entry(keyof(&ext)).or_insert_with(|| {
                    states.push(ext);
                    edges.push(Vec::new());
                    states.len() - 1
                });
                edges[i].push((j, l));
            }
        }
        i += 1;
    }

    // elementary cycles by DFS from each state (graphs here are tiny)
    let mut found: std::collections::BTreeMap<Vec<(usize, bool)>, Band> = Default::default();
    let n = states.len();
    for start in 0..n {
        let mut stack: Vec<(usize, Vec<Letter>, Vec<bool>)> =
            vec![(start, Vec::new(), vec![false; n])];
        while let Some((v, word, mut onpath)) = stack.pop() {
            if onpath[v] {
                continue;
            }
            onpath[v] = true;
            for &(u, l) in &edges[v] {
                let mut w2 = word.clone();
                w2.push(l);
                if u == start {
                    if let Some(b) = certify_band(pres, &w2) {
                        found.entry(keyof(&b.letters)).or_insert(b);
                    }
                } else if u > start && !onpath[u] {
                    stack.push((u, w2, onpath.clone()));
                }
            }
        }
    }
    found.into_values().collect()
}

fn certify_band(pres: &Arc<Presentation>, letters: &[Letter]) -> Option<Band> {
    if letters.is_empty() {
        return None;
    }
    if letters.iter().all(|l| l.inverse) || letters.iter().all(|l| !l.inverse) {
        return None; // needs both kinds of letters
    }
    // closed walk
    let w = letters;
    let n = w.len();
    for i in 0..n {
        let a = w[i];
        let b = w[(i + 1) % n];
        if a.target(pres) != b.source(pres) {
            return None;
        }
        if a.arrow == b.arrow && a.inverse != b.inverse {
            return None;
        }
    }
    // every rotation is a string and powers stay strings: check the doubled
    // word, which contains every window of every power
    let doubled: Vec<Letter> = w.iter().chain(w.iter()).copied().collect();
    if check_string(pres, &doubled).is_err() {
        return None;
    }
    if !is_primitive(w) {
        return None;
    }
    // canonical rotation of min(word, inverse word)
    let inv: Vec<Letter> = w.iter().rev().map(|l| l.flipped()).collect();
    let cand = std::cmp::min_by_key(min_rotation(w), min_rotation(&inv), |c| rot_key(pres, c));
    Some(Band {
        pres: pres.clone(),
        letters: cand,
    })
}

fn is_primitive(w: &[Letter]) -> bool {
    let n = w.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[i % p]) {
            return false;
        }
    }
    true
}

fn rot_key(pres: &Presentation, w: &[Letter]) -> Vec<(String, bool)> {
    w.iter()
        .map(|l| (pres.quiver.arrow_data(l.arrow).name.clone(), l.inverse))
        .collect()
}

fn min_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let mut best: Vec<Letter> = w.to_vec();
    for r in 1..n {
        let rot: Vec<Letter> = (0..n).map(|i| w[(i + r) % n]).collect();
        if (rot.iter().map(|l| (l.arrow, l.inverse)).collect::<Vec<_>>(),)
            < (best
                .iter()
                .map(|l| (l.arrow, l.inverse))
                .collect::<Vec<_>>(),)
        {
            best = rot;
        }
    }
    best
}
