//! Claim pipelines over the family A(n,m): the almost-split sequence
//! 0 -> S(2) -> P(1) -> tau^{-1}S(2) -> 0, the sectional chain of canonical
//! maps, and the composite-depth verification (depth exactly n+m+3).

use std::sync::Arc;

use crate::artheory::{ArQuiver, ArSequence};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{build_a_nm, Presentation};
use crate::radical::{IndecomposableIndex, RadicalTable};
use crate::repmod::{find_graph_maps, RepMorphism};
use crate::strings::{Letter, StringWord};

/// Everything the verifications need for one family member: the AR quiver
/// (with its radical table), the certified sequence at S(2), and the chain.
pub struct FamilyContext<K: Field> {
    pub n: i64,
    pub m: i64,
    pub pres: Arc<Presentation>,
    pub ar: ArQuiver<K>,
    pub lemma: ArSequence<K>,
    pub chain: SectionalChain<K>,
}

/// The chain of canonical maps
/// I(n) -> ... -> I(3) -> S(2) -> P(1) -> ... -> P(1) -> tau^{-1}S(2),
/// stored in application order (the map out of I(n) first).
pub struct SectionalChain<K: Field> {
    pub nodes: Vec<usize>,
    pub maps: Vec<RepMorphism<K>>,
    /// names aligned with maps: f{n}..f3, f2, g1..g{m+3}, f1
    pub names: Vec<String>,
}

impl<K: Field> SectionalChain<K> {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn map_named(&self, name: &str) -> Option<(usize, &RepMorphism<K>)> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| (i, &self.maps[i]))
    }

    /// Composite of maps[from..to] in application order.
    pub fn composite_range(&self, from: usize, to: usize) -> Result<RepMorphism<K>> {
        if from >= to || to > self.maps.len() {
            return Err(Error::Domain("empty composite range".into()));
        }
        let mut acc = self.maps[from].clone();
        for k in from + 1..to {
            acc = self.maps[k].compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn composite(&self) -> Result<RepMorphism<K>> {
        self.composite_range(0, self.maps.len())
    }
}

impl<K: Field> FamilyContext<K> {
    pub fn build(n: i64, m: i64, field: K) -> Result<Self> {
        let pres = Arc::new(build_a_nm(n, m)?);
        let index = IndecomposableIndex::build(&pres, field)?;
        let table = RadicalTable::build(index)?;
        let ar = ArQuiver::build(table)?;
        let lemma = verify_lemma_s2p1(&ar)?;
        let chain = build_sectional_chain(&ar, &lemma, n, m)?;
        Ok(FamilyContext {
            n,
            m,
            pres,
            ar,
            lemma,
            chain,
        })
    }

    pub fn table(&self) -> &RadicalTable<K> {
        self.ar.table()
    }

    /// f1' = f1 + f1 g_{m+3} ... g1.
    pub fn f1_prime(&self) -> Result<RepMorphism<K>> {
        let (i1, f1) = self
            .chain
            .map_named("f1")
            .ok_or_else(|| Error::ChainConstruction("missing f1".into()))?;
        let (ig1, _) = self
            .chain
            .map_named("g1")
            .ok_or_else(|| Error::ChainConstruction("missing g1".into()))?;
        let g_loop = self.chain.composite_range(ig1, i1)?;
        f1.add(&f1.compose(&g_loop)?)
    }
}

/// The almost-split sequence 0 -> S(2) -> P(1) -> tau^{-1}S(2) -> 0: locates
/// S(2), takes the certified sequence starting there, and checks the middle
/// is indecomposable and is P(1) = M(beta1 alpha^{-1} beta1^{-1}).
pub fn verify_lemma_s2p1<K: Field>(ar: &ArQuiver<K>) -> Result<ArSequence<K>> {
    let index = ar.index();
    let pres = index.presentation().clone();
    let v2 = pres.quiver.vertex("2")?;
    let s2 = index.node_of_word(&StringWord::trivial(pres.clone(), v2))?;
    let seq = ar
        .sequence_starting_at(s2)
        .ok_or(Error::InjectiveEndpoint)?
        .clone();
    if seq.middles.len() != 1 {
        return Err(Error::CertificationFailed(format!(
            "middle of the sequence at S(2) has {} summands",
            seq.middles.len()
        )));
    }
    let mid = seq.middles[0];
    let v1 = pres.quiver.vertex("1")?;
    if index.entry(mid).projective != Some(v1) {
        return Err(Error::CertificationFailed("middle term is not P(1)".into()));
    }
    let p1_word = StringWord::parse(pres, "beta1 ~alpha ~beta1")?;
    if index.node_of_word(&p1_word)? != mid {
        return Err(Error::CertificationFailed(
            "middle term differs from M(beta1 ~alpha ~beta1)".into(),
        ));
    }
    // consecutive maps of a short exact sequence compose to zero
    if !seq.right_maps[0].compose(&seq.left_maps[0])?.is_zero() {
        return Err(Error::CertificationFailed("f1 . f2 is not zero".into()));
    }
    Ok(seq)
}

/// Builds the chain by window search; every searched edge must admit exactly
/// one graph map, and f2/f1 are the matched pair from the certified sequence
/// at S(2). Validates irreducibility of every map and sectionality of the
/// node path.
pub fn build_sectional_chain<K: Field>(
    ar: &ArQuiver<K>,
    lemma: &ArSequence<K>,
    n: i64,
    m: i64,
) -> Result<SectionalChain<K>> {
    let index = ar.index();
    let pres = index.presentation().clone();
    let arrow = |name: &str| pres.quiver.arrow(name);
    let word = |letters: Vec<Letter>| -> Result<StringWord> {
        StringWord::from_letters(pres.clone(), letters)
    };

    let mut nodes: Vec<usize> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for j in (3..=n).rev() {
        let v = pres.quiver.vertex(&j.to_string())?;
        nodes.push(index.node_of_injective(v));
        names.push(format!("f{j}"));
    }
    nodes.push(lemma.left); // S(2)
    names.push("f2".into());
    nodes.push(lemma.middles[0]); // P(1)
    let beta1 = arrow("beta1")?;
    let alpha = arrow("alpha")?;
    // tau^{-1} M(beta1) = M(beta1 alpha^{-1})
    nodes.push(index.node_of_word(&word(vec![Letter::inv(alpha), Letter::direct(beta1)])?)?);
    names.push("g1".into());
    for l in 1..=m {
        let mut letters: Vec<Letter> = Vec::new();
        for j in (1..=l).rev() {
            letters.push(Letter::direct(arrow(&format!("gamma{j}"))?));
        }
        letters.push(Letter::inv(alpha));
        letters.push(Letter::direct(beta1));
        nodes.push(index.node_of_word(&word(letters)?)?);
        names.push(format!("g{}", l + 1));
    }
    nodes.push(index.node_of_word(&word(vec![Letter::direct(beta1)])?)?);
    names.push(format!("g{}", m + 2));
    nodes.push(lemma.middles[0]); // P(1) again
    names.push(format!("g{}", m + 3));
    nodes.push(lemma.right); // tau^{-1} S(2)
    names.push("f1".into());

    debug_assert_eq!(names.len() + 1, nodes.len());
    let mut maps = Vec::with_capacity(names.len());
    for (k, name) in names.iter().enumerate() {
        let (a, b) = (nodes[k], nodes[k + 1]);
        let map = match name.as_str() {
            "f2" => lemma.left_maps[0].clone(),
            "f1" => lemma.right_maps[0].clone(),
            _ => {
                let found = find_graph_maps(&index.entry(a).module, &index.entry(b).module);
                if found.len() != 1 {
                    return Err(Error::ChainConstruction(format!(
                        "{name}: expected exactly one graph map {} -> {}, found {}",
                        index.entry(a).word.render(),
                        index.entry(b).word.render(),
                        found.len()
                    )));
                }
                found.into_iter().next().expect("length checked").2
            }
        };
        maps.push(map);
    }

    // every chain map is irreducible, the node path is sectional
    for (k, map) in maps.iter().enumerate() {
        let d = ar.table().depth(nodes[k], nodes[k + 1], map)?;
        if d != 1 {
            return Err(Error::ChainConstruction(format!(
                "{} has depth {d}, expected 1",
                names[k]
            )));
        }
    }
    if !ar.is_sectional(&nodes)? {
        return Err(Error::ChainConstruction(
            "chain path is not sectional".into(),
        ));
    }
    let expected = (n + m + 3) as usize;
    if maps.len() != expected {
        return Err(Error::ChainConstruction(format!(
            "chain has {} maps, expected n+m+3 = {expected}",
            maps.len()
        )));
    }
    Ok(SectionalChain { nodes, maps, names })
}

/// Composite of the canonical irreducible maps along a sectional path has
/// depth exactly the path length.
pub fn igusa_todorov_check<K: Field>(
    ar: &ArQuiver<K>,
    nodes: &[usize],
    maps: &[RepMorphism<K>],
) -> Result<bool> {
    if maps.is_empty() || nodes.len() != maps.len() + 1 {
        return Err(Error::NotAPath("empty or misaligned path".into()));
    }
    if !ar.is_sectional(nodes)? {
        return Err(Error::NotAPath("path is not sectional".into()));
    }
    let mut acc = maps[0].clone();
    for m in &maps[1..] {
        acc = m.compose(&acc)?;
    }
    let d = ar.table().depth(nodes[0], nodes[nodes.len() - 1], &acc)?;
    Ok(d == maps.len())
}

/// Outcome of the composite-depth verification for one (n, m).
#[derive(Debug, Clone)]
pub struct DepthReport {
    pub n: i64,
    pub m: i64,
    pub chain_length: usize,
    pub expected_depth: usize,
    pub f1_f2_zero: bool,
    pub f_composite_zero: bool,
    pub long_composite_nonzero: bool,
    pub long_composite_depth: Option<usize>,
    pub f1_prime_depth: Option<usize>,
    pub f1_prime_chain_equals_long: bool,
    pub sectional: bool,
    /// informational: depth of f2 ... fn (absent for n = 2 where it is f2)
    pub side_depth_tail: Option<usize>,
    /// informational: depth of f1' f2 ... f_{n-1}
    pub side_depth_head: Option<usize>,
    pub pass: bool,
}

impl DepthReport {
    pub fn family(&self) -> String {
        format!("A({},{})", self.n, self.m)
    }

    pub fn summary(&self) -> String {
        let depth = match self.long_composite_depth {
            Some(d) => d.to_string(),
            None => "zero".to_string(),
        };
        format!(
            "{}: {} (composite depth {}, expected {})",
            self.family(),
            if self.pass { "PASS" } else { "FAIL" },
            depth,
            self.expected_depth
        )
    }

    /// Plain-text key-value block.
    pub fn render(&self) -> String {
        let fmt_opt = |o: &Option<usize>| match o {
            Some(v) => v.to_string(),
            None => "zero".to_string(),
        };
        let mut out = String::new();
        out.push_str("[verify-main]\n");
        out.push_str(&format!("family = {}\n", self.family()));
        out.push_str(&format!("n = {}\n", self.n));
        out.push_str(&format!("m = {}\n", self.m));
        out.push_str(&format!("chain_length = {}\n", self.chain_length));
        out.push_str(&format!("expected_depth = {}\n", self.expected_depth));
        out.push_str(&format!("f1_f2_zero = {}\n", self.f1_f2_zero));
        out.push_str(&format!("f_composite_zero = {}\n", self.f_composite_zero));
        out.push_str(&format!(
            "long_composite_nonzero = {}\n",
            self.long_composite_nonzero
        ));
        out.push_str(&format!(
            "long_composite_depth = {}\n",
            fmt_opt(&self.long_composite_depth)
        ));
        out.push_str(&format!(
            "f1_prime_depth = {}\n",
            fmt_opt(&self.f1_prime_depth)
        ));
        out.push_str(&format!(
            "f1_prime_chain_equals_long = {}\n",
            self.f1_prime_chain_equals_long
        ));
        out.push_str(&format!("sectional = {}\n", self.sectional));
        out.push_str(&format!(
            "side_depth_tail = {}\n",
            self.side_depth_tail
                .map(|d| d.to_string())
                .unwrap_or_else(|| "n/a".into())
        ));
        out.push_str(&format!(
            "side_depth_head = {}\n",
            self.side_depth_head
                .map(|d| d.to_string())
                .unwrap_or_else(|| "n/a".into())
        ));
        out.push_str(&format!(
            "result = {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Runs the full composite-depth verification for A(n,m):
/// (a) f1 f2 = 0, hence the f-composite vanishes;
/// (b) the long composite f1 g_{m+3} ... g1 f2 ... fn has depth exactly n+m+3;
/// (c) f1' = f1 + f1 g_{m+3} ... g1 is irreducible;
/// (d) f1' f2 ... fn equals the long composite, is nonzero, same depth.
pub fn verify_main_theorem<K: Field>(ctx: &FamilyContext<K>) -> Result<DepthReport> {
    let chain = &ctx.chain;
    let table = ctx.table();
    let expected = (ctx.n + ctx.m + 3) as usize;
    let (i_f2, f2) = chain
        .map_named("f2")
        .ok_or_else(|| Error::ChainConstruction("f2".into()))?;
    let (i_f1, f1) = chain
        .map_named("f1")
        .ok_or_else(|| Error::ChainConstruction("f1".into()))?;
    let f1_f2_zero = f1.compose(f2)?.is_zero();

    // f2 ... fn : I(n) -> P(1) (just f2 when n = 2)
    let f_tail = chain.composite_range(0, i_f2 + 1)?;
    let f_composite_zero = f1.compose(&f_tail)?.is_zero();

    let long = chain.composite()?;
    let src = chain.nodes[0];
    let tgt = chain.nodes[chain.nodes.len() - 1];
    let long_nonzero = !long.is_zero();
    let long_depth = if long_nonzero {
        Some(table.depth(src, tgt, &long)?)
    } else {
        None
    };

    let f1p = ctx.f1_prime()?;
    let p1 = chain.nodes[i_f1];
    let f1p_depth = if f1p.is_zero() {
        None
    } else {
        Some(table.depth(p1, tgt, &f1p)?)
    };

    let f1p_chain = f1p.compose(&f_tail)?;
    let equals_long = f1p_chain == long;

    let sectional = ctx.ar.is_sectional(&chain.nodes)?;

    let side_depth_tail = if !f_tail.is_zero() {
        Some(table.depth(src, p1, &f_tail)?)
    } else {
        None
    };
    let side_depth_head = {
        // f1' f2 ... f_{n-1}: drop the first map when n >= 3, else just f1'
        let (head, head_src) = if i_f2 > 0 {
            let partial = chain.composite_range(1, i_f2 + 1)?;
            (f1p.compose(&partial)?, chain.nodes[1])
        } else {
            (f1p.clone(), chain.nodes[i_f1])
        };
        if head.is_zero() {
            None
        } else {
            Some(table.depth(head_src, tgt, &head)?)
        }
    };

    let pass = f1_f2_zero
        && f_composite_zero
        && long_nonzero
        && long_depth == Some(expected)
        && f1p_depth == Some(1)
        && equals_long
        && sectional
        && chain.len() == expected;

    Ok(DepthReport {
        n: ctx.n,
        m: ctx.m,
        chain_length: chain.len(),
        expected_depth: expected,
        f1_f2_zero,
        f_composite_zero,
        long_composite_nonzero: long_nonzero,
        long_composite_depth: long_depth,
        f1_prime_depth: f1p_depth,
        f1_prime_chain_equals_long: equals_long,
        sectional,
        side_depth_tail,
        side_depth_head,
        pass,
    })
}
