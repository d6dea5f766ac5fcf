//! The radical filtration of the module category: rad(X,Y) and its powers as
//! explicit subspaces over the complete list of indecomposables, morphism
//! depth, and irreducibility.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Subspace;
use crate::quiver::{Presentation, VertexId};
use crate::repmod::{
    self, are_isomorphic, end_radical_basis, hom_ambient_dim, hom_basis, string_module, unflatten,
    RepMorphism, Representation, StringModule,
};
use crate::strings::{enumerate_strings, CanonKey, StringWord};

/// A subspace of Hom(X, Y) given by a basis of morphisms.
#[derive(Debug, Clone)]
pub struct HomSubspace<K: Field> {
    pub source: Arc<Representation<K>>,
    pub target: Arc<Representation<K>>,
    pub basis: Vec<RepMorphism<K>>,
    pub ambient_dim: usize,
}

impl<K: Field> HomSubspace<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact membership test against the basis.
    pub fn contains(&self, f: &RepMorphism<K>) -> bool {
        let field = self.source.field().clone();
        let mut space = Subspace::empty(field, self.ambient_dim);
        for b in &self.basis {
            space.insert(&b.flatten());
        }
        space.contains(&f.flatten())
    }
}

/// rad(X, Y) for standalone indecomposable representations: all of Hom(X, Y)
/// when X and Y are not isomorphic, the non-isomorphisms otherwise (the
/// image of the maximal ideal of End(X) under any isomorphism).
pub fn rad_of_reps<K: Field>(
    x: &Arc<Representation<K>>,
    y: &Arc<Representation<K>>,
) -> Result<HomSubspace<K>> {
    if !repmod::is_indecomposable(x)? || !repmod::is_indecomposable(y)? {
        return Err(Error::NotIndecomposable);
    }
    let ambient_dim = hom_ambient_dim(x, y);
    let basis = if are_isomorphic(x, y) {
        let iso = hom_basis(x, y)
            .into_iter()
            .find(|m| m.is_isomorphism())
            .expect("isomorphic indecomposables admit an invertible basis element");
        end_radical_basis(x)?
            .into_iter()
            .map(|g| iso.compose(&g))
            .collect::<crate::error::Result<Vec<_>>>()?
    } else {
        hom_basis(x, y)
    };
    Ok(HomSubspace {
        source: x.clone(),
        target: y.clone(),
        basis,
        ambient_dim,
    })
}

/// The complete list of indecomposables of a representation-finite string
/// algebra: canonical strings realized as representations, with projective
/// and injective markings.
#[derive(Debug, Clone)]
pub struct IndexEntry<K: Field> {
    pub word: StringWord,
    pub module: StringModule<K>,
    /// Some(v) when this node is P(v).
    pub projective: Option<VertexId>,
    /// Some(v) when this node is I(v).
    pub injective: Option<VertexId>,
}

#[derive(Debug, Clone)]
pub struct IndecomposableIndex<K: Field> {
    pres: Arc<Presentation>,
    field: K,
    entries: Vec<IndexEntry<K>>,
    by_key: std::collections::BTreeMap<CanonKey, usize>,
}

impl<K: Field> IndecomposableIndex<K> {
    /// Enumerates all strings (errors on infinite type) and realizes each as
    /// a string module.
    pub fn build(pres: &Arc<Presentation>, field: K) -> Result<Self> {
        let words = enumerate_strings(pres)?;
        let mut entries: Vec<IndexEntry<K>> = words
            .into_iter()
            .map(|word| {
                let module = string_module(field.clone(), &word);
                IndexEntry {
                    word,
                    module,
                    projective: None,
                    injective: None,
                }
            })
            .collect();
        let by_key: std::collections::BTreeMap<CanonKey, usize> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.word.key(), i))
            .collect();
        // mark projectives and injectives by isomorphism with the path-basis
        // constructions
        for v in 0..pres.quiver.vertex_count() {
            let p = repmod::projective(pres, field.clone(), v)?;
            let i = repmod::injective(pres, field.clone(), v)?;
            let pi = entries
                .iter()
                .position(|e| are_isomorphic(&e.module.rep, &p))
                .ok_or_else(|| Error::NotInIndex(format!("P({})", pres.quiver.vertex_name(v))))?;
            entries[pi].projective = Some(v);
            let ii = entries
                .iter()
                .position(|e| are_isomorphic(&e.module.rep, &i))
                .ok_or_else(|| Error::NotInIndex(format!("I({})", pres.quiver.vertex_name(v))))?;
            entries[ii].injective = Some(v);
        }
        Ok(IndecomposableIndex {
            pres: pres.clone(),
            field,
            entries,
            by_key,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[IndexEntry<K>] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &IndexEntry<K> {
        &self.entries[i]
    }

    pub fn rep(&self, i: usize) -> &Arc<Representation<K>> {
        &self.entries[i].module.rep
    }

    /// Node of a string, by canonical form.
    pub fn node_of_word(&self, w: &StringWord) -> Result<usize> {
        self.by_key
            .get(&w.canonical_key())
            .copied()
            .ok_or_else(|| Error::NotInIndex(w.render()))
    }

    /// Node of an arbitrary representation, by isomorphism. The argument must
    /// be indecomposable for the test to be conclusive.
    pub fn node_of_rep(&self, r: &Arc<Representation<K>>) -> Result<usize> {
        self.entries
            .iter()
            .position(|e| e.module.rep.dims() == r.dims() && are_isomorphic(&e.module.rep, r))
            .ok_or_else(|| Error::NotInIndex(r.dim_vector_string()))
    }

    pub fn node_of_projective(&self, v: VertexId) -> usize {
        self.entries
            .iter()
            .position(|e| e.projective == Some(v))
            .expect("marked at build time")
    }

    pub fn node_of_injective(&self, v: VertexId) -> usize {
        self.entries
            .iter()
            .position(|e| e.injective == Some(v))
            .expect("marked at build time")
    }
}

// ---------------------------------------------------------------------------
// the radical table
// ---------------------------------------------------------------------------

/// rad^t for every ordered pair of indecomposables, memoized level by level.
/// Level t is computed from level t-1 by composing with level 1 over all
/// middle objects; the chain is descending and must stabilize at zero for a
/// representation-finite algebra.
pub struct RadicalTable<K: Field> {
    index: IndecomposableIndex<K>,
    hom: Vec<Vec<Vec<RepMorphism<K>>>>,
    /// levels[t][x][y], t >= 1; coordinates in the ambient Hom basis
    levels: Vec<Vec<Vec<Subspace<K>>>>,
}

impl<K: Field> RadicalTable<K> {
    pub fn build(index: IndecomposableIndex<K>) -> Result<Self> {
        let n = index.len();
        let field = index.field().clone();
        let hom: Vec<Vec<Vec<RepMorphism<K>>>> = (0..n)
            .into_par_iter()
            .map(|x| {
                (0..n)
                    .map(|y| hom_basis(index.rep(x), index.rep(y)))
                    .collect()
            })
            .collect();

        // level 1: all of Hom for distinct nodes, rad End on the diagonal
        let mut level1: Vec<Vec<Subspace<K>>> = Vec::with_capacity(n);
        for x in 0..n {
            let mut row = Vec::with_capacity(n);
            for y in 0..n {
                let ambient = hom_ambient_dim(index.rep(x), index.rep(y));
                let mut space = Subspace::empty(field.clone(), ambient);
                if x == y {
                    for g in end_radical_basis(index.rep(x))? {
                        space.insert(&g.flatten());
                    }
                } else {
                    for b in &hom[x][y] {
                        space.insert(&b.flatten());
                    }
                }
                row.push(space);
            }
            level1.push(row);
        }

        let mut table = RadicalTable {
            index,
            hom,
            levels: vec![level1],
        };
        table.extend_to_zero()?;
        Ok(table)
    }

    fn extend_to_zero(&mut self) -> Result<()> {
        let n = self.index.len();
        let field = self.index.field().clone();
        loop {
            let prev = self.levels.last().expect("level 1 present");
            if prev.iter().all(|row| row.iter().all(|s| s.is_zero())) {
                break;
            }
            let level1 = &self.levels[0];
            let next: Vec<Vec<Subspace<K>>> = (0..n)
                .into_par_iter()
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let ambient = hom_ambient_dim(self.index.rep(x), self.index.rep(y));
                            let mut space = Subspace::empty(field.clone(), ambient);
                            for z in 0..n {
                                if prev[x][z].is_zero() || level1[z][y].is_zero() {
                                    continue;
                                }
                                for gcoords in level1[z][y].basis_rows() {
                                    let g =
                                        unflatten(self.index.rep(z), self.index.rep(y), gcoords);
                                    for fcoords in prev[x][z].basis_rows() {
                                        let f = unflatten(
                                            self.index.rep(x),
                                            self.index.rep(z),
                                            fcoords,
                                        );
                                        let comp = g.compose(&f).expect("index shapes agree");
                                        space.insert(&comp.flatten());
                                    }
                                }
                            }
                            space
                        })
                        .collect()
                })
                .collect();
            // descending chain sanity
            for x in 0..n {
                for y in 0..n {
                    debug_assert!(next[x][y].subset_of(&prev[x][y]));
                }
            }
            let stalled = next
                .iter()
                .zip(prev.iter())
                .all(|(nr, pr)| nr.iter().zip(pr.iter()).all(|(a, b)| a.same_space(b)));
            if stalled {
                return Err(Error::Domain(
                    "radical filtration stabilized at a nonzero space; \
                     the algebra is not representation-finite here"
                        .into(),
                ));
            }
            self.levels.push(next);
        }
        Ok(())
    }

    pub fn index(&self) -> &IndecomposableIndex<K> {
        &self.index
    }

    /// First t with rad^t = 0 for every pair (the nilpotency index).
    pub fn nilpotency_index(&self) -> usize {
        self.levels.len()
    }

    pub fn hom_basis_of(&self, x: usize, y: usize) -> &[RepMorphism<K>] {
        &self.hom[x][y]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom[x][y].len()
    }

    fn level(&self, t: usize, x: usize, y: usize) -> Option<&Subspace<K>> {
        if t == 0 {
            return None;
        }
        Some(if t - 1 < self.levels.len() {
            &self.levels[t - 1][x][y]
        } else {
            &self.levels[self.levels.len() - 1][x][y] // zero space
        })
    }

    pub fn rad_dim(&self, t: usize, x: usize, y: usize) -> usize {
        match self.level(t, x, y) {
            None => self.hom_dim(x, y),
            Some(s) => s.dim(),
        }
    }

    /// rad^t(X, Y) as an explicit subspace of Hom(X, Y). t = 0 is all of Hom.
    pub fn rad_power(&self, t: usize, x: usize, y: usize) -> HomSubspace<K> {
        let source = self.index.rep(x).clone();
        let target = self.index.rep(y).clone();
        let ambient_dim = hom_ambient_dim(&source, &target);
        let basis = match self.level(t, x, y) {
            None => self.hom[x][y].clone(),
            Some(s) => s
                .basis_rows()
                .iter()
                .map(|v| unflatten(&source, &target, v))
                .collect(),
        };
        HomSubspace {
            source,
            target,
            basis,
            ambient_dim,
        }
    }

    /// rad(X, Y): all of Hom for non-isomorphic indecomposables, the maximal
    /// ideal of End(X) on the diagonal.
    pub fn rad(&self, x: usize, y: usize) -> HomSubspace<K> {
        self.rad_power(1, x, y)
    }

    pub fn contains(&self, t: usize, x: usize, y: usize, f: &RepMorphism<K>) -> bool {
        match self.level(t, x, y) {
            None => true,
            Some(s) => s.contains(&f.flatten()),
        }
    }

    /// The largest t with f in rad^t(X, Y). Errors on the zero morphism,
    /// whose depth is formally infinite.
    pub fn depth(&self, x: usize, y: usize, f: &RepMorphism<K>) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroMorphism);
        }
        let coords = f.flatten();
        let mut depth = 0;
        for t in 1..=self.levels.len() {
            let s = self.level(t, x, y).expect("t >= 1");
            if s.contains(&coords) {
                depth = t;
            } else {
                break;
            }
        }
        Ok(depth)
    }

    /// Locates the morphism's endpoints in the index and measures depth.
    pub fn depth_of(&self, f: &RepMorphism<K>) -> Result<usize> {
        let x = self.index.node_of_rep(f.source())?;
        let y = self.index.node_of_rep(f.target())?;
        self.depth(x, y, f)
    }

    pub fn is_irreducible(&self, x: usize, y: usize, f: &RepMorphism<K>) -> Result<bool> {
        Ok(self.depth(x, y, f)? == 1)
    }

    /// Multiplicity of AR-quiver arrows X -> Y: dim rad - dim rad^2.
    pub fn irr_multiplicity(&self, x: usize, y: usize) -> usize {
        self.rad_dim(1, x, y) - self.rad_dim(2, x, y)
    }

    /// Representatives of a basis of rad(X,Y)/rad^2(X,Y).
    pub fn irr_representatives(&self, x: usize, y: usize) -> Vec<RepMorphism<K>> {
        let field = self.index.field().clone();
        let source = self.index.rep(x);
        let target = self.index.rep(y);
        let ambient = hom_ambient_dim(source, target);
        let mut span = Subspace::empty(field, ambient);
        if let Some(s2) = self.level(2, x, y) {
            for row in s2.basis_rows() {
                span.insert(row);
            }
        }
        let mut out = Vec::new();
        if let Some(s1) = self.level(1, x, y) {
            for row in s1.basis_rows() {
                if span.insert(row) {
                    out.push(unflatten(source, target, row));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::quiver::build_a_nm;

    fn table(n: i64, m: i64) -> RadicalTable<Rationals> {
        let pres = Arc::new(build_a_nm(n, m).unwrap());
        let index = IndecomposableIndex::build(&pres, Rationals).unwrap();
        RadicalTable::build(index).unwrap()
    }

    fn node(t: &RadicalTable<Rationals>, lit: &str) -> usize {
        let w = StringWord::parse(t.index().presentation().clone(), lit).unwrap();
        t.index().node_of_word(&w).unwrap()
    }

    #[test]
    fn a32_table_shape() {
        let t = table(3, 2);
        assert_eq!(t.index().len(), 26);
        // rad vanishes exactly at level 12 (fixed by the enumeration oracle)
        assert_eq!(t.nilpotency_index(), 12);
    }

    #[test]
    fn rad_of_distinct_indecomposables_is_all_of_hom() {
        let t = table(3, 2);
        let s2 = node(&t, "e(2)");
        let p1 = node(&t, "beta1 alpha ~beta1");
        assert_eq!(t.rad_dim(1, s2, p1), t.hom_dim(s2, p1));
        assert_eq!(t.hom_dim(s2, p1), 2);
    }

    #[test]
    fn rad_of_standalone_reps() {
        use crate::repmod::{direct_sum, simple, string_module};
        let pres = Arc::new(build_a_nm(3, 2).unwrap());
        let s2 = simple(&pres, Rationals, pres.quiver.vertex("2").unwrap());
        let p1w = StringWord::parse(pres.clone(), "beta1 alpha ~beta1").unwrap();
        let p1 = string_module(Rationals, &p1w).rep;
        assert_eq!(rad_of_reps(&s2, &p1).unwrap().dim(), 2);
        assert_eq!(rad_of_reps(&s2, &s2).unwrap().dim(), 0);
        assert_eq!(rad_of_reps(&p1, &p1).unwrap().dim(), 1);
        // rad between different realizations of isomorphic modules
        let p1_flip = string_module(Rationals, &p1w.inverse()).rep;
        let r = rad_of_reps(&p1, &p1_flip).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.basis.iter().all(|f| !f.is_isomorphism()));
        // non-indecomposable arguments are rejected
        let (sum, _, _) = direct_sum(&[s2.clone(), s2.clone()]).unwrap();
        assert!(matches!(
            rad_of_reps(&sum, &p1),
            Err(Error::NotIndecomposable)
        ));
    }

    #[test]
    fn rad_end_of_simple_is_zero_and_of_p1_is_one() {
        let t = table(3, 2);
        let s2 = node(&t, "e(2)");
        assert_eq!(t.rad_dim(1, s2, s2), 0);
        let p1 = node(&t, "beta1 alpha ~beta1");
        assert_eq!(t.hom_dim(p1, p1), 2);
        assert_eq!(t.rad_dim(1, p1, p1), 1); // dim End - 1
    }

    #[test]
    fn depth_basics() {
        let t = table(3, 2);
        let p1 = node(&t, "beta1 alpha ~beta1");
        let id = RepMorphism::identity(t.index().rep(p1).clone());
        assert_eq!(t.depth(p1, p1, &id).unwrap(), 0);
        let zero = RepMorphism::zero(t.index().rep(p1).clone(), t.index().rep(p1).clone());
        assert!(matches!(t.depth(p1, p1, &zero), Err(Error::ZeroMorphism)));
    }

    #[test]
    fn descending_chain_and_stabilization_at_zero() {
        let t = table(2, 1);
        let n = t.index().len();
        for x in 0..n {
            for y in 0..n {
                for lvl in 1..t.nilpotency_index() {
                    assert!(t.rad_dim(lvl + 1, x, y) <= t.rad_dim(lvl, x, y));
                }
                assert_eq!(t.rad_dim(t.nilpotency_index(), x, y), 0);
            }
        }
    }

    #[test]
    fn irr_multiplicities_out_of_p1() {
        let t = table(3, 2);
        let p1 = node(&t, "beta1 alpha ~beta1");
        let ts2 = node(&t, "~alpha ~beta1");
        let tb1 = node(&t, "alpha ~beta1");
        assert_eq!(t.irr_multiplicity(p1, ts2), 1);
        assert_eq!(t.irr_multiplicity(p1, tb1), 1);
        let total: usize = (0..t.index().len())
            .map(|y| t.irr_multiplicity(p1, y))
            .sum();
        assert_eq!(total, 2, "exactly two arrows leave P(1)");
    }
}
