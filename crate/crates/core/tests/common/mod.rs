//! Test-side helpers: a from-scratch string enumerator (independent of the
//! library's walk machinery) and a generator of small random string algebras.

// each test binary uses its own subset of these helpers
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use strad_core::quiver::{build_a_nm, is_string_algebra, parse_presentation, Presentation, Quiver};

/// A letter for the naive oracle: (arrow id, inverse?).
pub type NaiveLetter = (usize, bool);

fn letter_source(p: &Presentation, l: NaiveLetter) -> usize {
    let a = p.quiver.arrow_data(l.0);
    if l.1 {
        a.target
    } else {
        a.source
    }
}

fn letter_target(p: &Presentation, l: NaiveLetter) -> usize {
    let a = p.quiver.arrow_data(l.0);
    if l.1 {
        a.source
    } else {
        a.target
    }
}

/// String predicate straight from the definition: composable, reduced, and
/// no window of same-direction letters reads as a relation in either
/// direction. Written independently of the library's checker.
pub fn naive_is_string(p: &Presentation, w: &[NaiveLetter]) -> bool {
    if w.is_empty() {
        return false;
    }
    for k in 0..w.len() - 1 {
        if letter_target(p, w[k]) != letter_source(p, w[k + 1]) {
            return false;
        }
        if w[k].0 == w[k + 1].0 && w[k].1 != w[k + 1].1 {
            return false;
        }
    }
    for rel in p.relations() {
        let len = rel.len();
        if w.len() < len {
            continue;
        }
        for start in 0..=w.len() - len {
            let window = &w[start..start + len];
            if window.iter().all(|l| !l.1) {
                let arrows: Vec<usize> = window.iter().map(|l| l.0).collect();
                if arrows == *rel {
                    return false;
                }
            }
            if window.iter().all(|l| l.1) {
                let arrows: Vec<usize> = window.iter().rev().map(|l| l.0).collect();
                if arrows == *rel {
                    return false;
                }
            }
        }
    }
    true
}

fn invert(w: &[NaiveLetter]) -> Vec<NaiveLetter> {
    w.iter().rev().map(|&(a, d)| (a, !d)).collect()
}

/// Counts all strings up to inversion (trivial strings included) by plain
/// breadth-first extension. Panics past the cap, which would indicate
/// infinite type.
pub fn naive_string_count(p: &Presentation, cap: usize) -> usize {
    let mut canonical: BTreeSet<Vec<NaiveLetter>> = BTreeSet::new();
    let mut frontier: Vec<Vec<NaiveLetter>> = Vec::new();
    for a in 0..p.quiver.arrow_count() {
        for d in [false, true] {
            let w = vec![(a, d)];
            if naive_is_string(p, &w) {
                frontier.push(w);
            }
        }
    }
    let mut seen: BTreeSet<Vec<NaiveLetter>> = BTreeSet::new();
    while let Some(w) = frontier.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        assert!(seen.len() <= cap, "string enumeration exceeded the cap");
        canonical.insert(std::cmp::min(w.clone(), invert(&w)));
        let end = letter_target(p, *w.last().expect("nonempty"));
        for a in 0..p.quiver.arrow_count() {
            for d in [false, true] {
                if letter_source(p, (a, d)) != end {
                    continue;
                }
                let mut ext = w.clone();
                ext.push((a, d));
                if naive_is_string(p, &ext) {
                    frontier.push(ext);
                }
            }
        }
    }
    canonical.len() + p.quiver.vertex_count()
}

/// Exhaustive band oracle for tiny quivers: searches cyclic words up to the
/// given length whose doubled word is a string, containing both letter
/// kinds, primitive, counted up to rotation and inversion.
pub fn naive_band_count(p: &Presentation, max_len: usize) -> usize {
    let arrows = p.quiver.arrow_count();
    let mut found: BTreeSet<Vec<NaiveLetter>> = BTreeSet::new();
    let mut stack: Vec<Vec<NaiveLetter>> = (0..arrows)
        .flat_map(|a| [vec![(a, false)], vec![(a, true)]])
        .collect();
    while let Some(w) = stack.pop() {
        if naive_is_string(p, &w) {
            if w.len() >= 2 && letter_target(p, *w.last().unwrap()) == letter_source(p, w[0]) {
                let doubled: Vec<NaiveLetter> = w.iter().chain(w.iter()).copied().collect();
                let mixed = w.iter().any(|l| l.1) && w.iter().any(|l| !l.1);
                let primitive = (1..w.len()).all(|p_| {
                    !w.len().is_multiple_of(p_) || (0..w.len()).any(|i| w[i] != w[i % p_])
                });
                if mixed && primitive && naive_is_string(p, &doubled) {
                    let mut best: Option<Vec<NaiveLetter>> = None;
                    for cand in [w.clone(), invert(&w)] {
                        for r in 0..cand.len() {
                            let rot: Vec<NaiveLetter> = (0..cand.len())
                                .map(|i| cand[(i + r) % cand.len()])
                                .collect();
                            if best.as_ref().is_none_or(|b| rot < *b) {
                                best = Some(rot);
                            }
                        }
                    }
                    found.insert(best.expect("nonempty"));
                }
            }
            if w.len() < max_len {
                let end = letter_target(p, *w.last().unwrap());
                for a in 0..arrows {
                    for d in [false, true] {
                        if letter_source(p, (a, d)) == end {
                            let mut ext = w.clone();
                            ext.push((a, d));
                            stack.push(ext);
                        }
                    }
                }
            }
        }
    }
    found.len()
}

// ---------------------------------------------------------------------------
// random string algebras
// ---------------------------------------------------------------------------

/// Deterministically builds a small string algebra from raw bytes. Degree
/// caps are enforced during construction, relation choices kill ambiguous
/// continuations, and anything that still fails the axioms (or has bands, or
/// is infinite-dimensional) falls back to a pool of known-good algebras, so
/// every draw is usable.
pub fn algebra_from_bytes(bytes: &[u8]) -> Arc<Presentation> {
    if let Some(p) = try_build(bytes) {
        return p;
    }
    let pool: Vec<Presentation> = vec![
        build_a_nm(2, 0).unwrap(),
        build_a_nm(2, 1).unwrap(),
        build_a_nm(3, 0).unwrap(),
        build_a_nm(3, 1).unwrap(),
        parse_presentation("vertex 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n").unwrap(),
        parse_presentation("vertex 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelation a b\n")
            .unwrap(),
        parse_presentation("vertex 1\narrow a : 1 -> 1\nrelation a a\n").unwrap(),
        parse_presentation(
            "vertex 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation a b\nrelation b a\n",
        )
        .unwrap(),
    ];
    let pick = bytes.first().copied().unwrap_or(0) as usize % pool.len();
    Arc::new(pool[pick].clone())
}

fn try_build(bytes: &[u8]) -> Option<Arc<Presentation>> {
    let mut it = bytes.iter().copied();
    let mut take = || it.next().unwrap_or(0);
    let nv = 1 + (take() as usize % 4);
    let mut q = Quiver::new();
    for v in 0..nv {
        q.add_vertex(&format!("v{v}")).ok()?;
    }
    let narrows = take() as usize % 6;
    let mut out_deg = vec![0usize; nv];
    let mut in_deg = vec![0usize; nv];
    let mut arrows = Vec::new();
    for k in 0..narrows {
        let s = take() as usize % nv;
        let t = take() as usize % nv;
        if out_deg[s] >= 2 || in_deg[t] >= 2 {
            continue;
        }
        out_deg[s] += 1;
        in_deg[t] += 1;
        let name = format!("a{k}");
        q.add_arrow(&name, &format!("v{s}"), &format!("v{t}"))
            .ok()?;
        arrows.push(name);
    }
    let pres0 = Presentation::new(None, q, Vec::new()).ok()?;
    // kill ambiguous continuations and predecessors with length-2 relations
    let mut relations: BTreeSet<Vec<usize>> = BTreeSet::new();
    let q = &pres0.quiver;
    for a in 0..q.arrow_count() {
        let conts: Vec<usize> = q.arrows_from(q.arrow_data(a).target).collect();
        if conts.len() >= 2 {
            let keep = take() as usize % conts.len();
            for (i, &b) in conts.iter().enumerate() {
                if i != keep {
                    relations.insert(vec![a, b]);
                }
            }
        } else if conts.len() == 1 && take() % 3 == 0 {
            relations.insert(vec![a, conts[0]]);
        }
    }
    for b in 0..q.arrow_count() {
        let preds: Vec<usize> = q
            .arrows_into(q.arrow_data(b).source)
            .filter(|&a| !relations.contains(&vec![a, b]))
            .collect();
        if preds.len() >= 2 {
            let keep = take() as usize % preds.len();
            for (i, &a) in preds.iter().enumerate() {
                if i != keep {
                    relations.insert(vec![a, b]);
                }
            }
        }
    }
    let pres =
        Presentation::new(None, pres0.quiver.clone(), relations.into_iter().collect()).ok()?;
    if !is_string_algebra(&pres).is_string_algebra() {
        return None;
    }
    pres.check_finite_dimensional().ok()?;
    let pres = Arc::new(pres);
    if !strad_core::strings::find_bands(&pres).is_empty() {
        return None;
    }
    // keep the index small enough for table builds inside property runs
    if strad_core::strings::enumerate_strings(&pres).ok()?.len() > 24 {
        return None;
    }
    Some(pres)
}
