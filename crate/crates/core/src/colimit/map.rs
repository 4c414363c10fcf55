use std::sync::Arc;

use crate::delta::DeltaOperator;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};

/// A simplicial map given by the normal-form image of every generator.
///
/// Face-compatibility `f(g·δ_i) = f(g)·δ_i` is checked on construction;
/// compatibility with degeneracies is then automatic.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    assign: Vec<Vec<Simplex>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assign == other.assign
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for SimplicialMap {}

/// The one-point simplicial set Δ[0].
pub fn point() -> FiniteSimplicialSet {
    let mut b = SSetBuilder::new();
    b.add_generator(0, Some("pt")).expect("fresh builder");
    b.build().expect("valid point")
}

impl SimplicialMap {
    pub fn new(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        assign: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let map = SimplicialMap::unchecked(source, target, assign)?;
        map.check_faces()?;
        Ok(map)
    }

    /// Checks shape and references but not face-compatibility.
    pub(crate) fn unchecked(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        assign: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        if assign.len() != source.counts().len() {
            return Err(Error::InvalidMap(format!(
                "assignment covers {} degrees, source has {}",
                assign.len(),
                source.counts().len()
            )));
        }
        for (d, level) in assign.iter().enumerate() {
            if level.len() != source.count(d) {
                return Err(Error::InvalidMap(format!(
                    "degree {d}: {} images for {} generators",
                    level.len(),
                    source.count(d)
                )));
            }
            for (i, x) in level.iter().enumerate() {
                if x.degree() != d {
                    return Err(Error::InvalidMap(format!(
                        "generator {:?} sent to simplex of degree {}",
                        GeneratorId::new(d, i),
                        x.degree()
                    )));
                }
                if !target.contains(x.gen()) {
                    return Err(Error::DanglingGenerator(x.gen()));
                }
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            assign,
        })
    }

    pub fn from_fn(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        mut f: impl FnMut(GeneratorId) -> Result<Simplex>,
    ) -> Result<Self> {
        let assign = (0..source.counts().len())
            .map(|d| source.generators_of_degree(d).map(&mut f).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(source, target, assign)
    }

    pub fn identity(set: Arc<FiniteSimplicialSet>) -> Self {
        let assign = (0..set.counts().len())
            .map(|d| set.generators_of_degree(d).map(Simplex::generator).collect())
            .collect();
        SimplicialMap {
            source: set.clone(),
            target: set,
            assign,
        }
    }

    /// The unique map to Δ[0].
    pub fn to_point(set: Arc<FiniteSimplicialSet>) -> Self {
        let target = Arc::new(point());
        let pt = GeneratorId::new(0, 0);
        let assign = (0..set.counts().len())
            .map(|d| {
                let x = Simplex::new(pt, DeltaOperator::to_point(d)).expect("epi onto [0]");
                vec![x; set.count(d)]
            })
            .collect();
        SimplicialMap {
            source: set,
            target,
            assign,
        }
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    /// Image of a generator.
    pub fn image(&self, g: GeneratorId) -> Result<&Simplex> {
        self.assign
            .get(g.degree)
            .and_then(|l| l.get(g.index))
            .ok_or(Error::DanglingGenerator(g))
    }

    /// Normal form of `f(x)`: the image of `x♯` degenerated by `x♭`.
    pub fn apply(&self, x: &Simplex) -> Result<Simplex> {
        self.image(x.gen())?.degenerate(x.deg_part())
    }

    fn check_faces(&self) -> Result<()> {
        for g in self.source.generators().filter(|g| g.degree > 0) {
            let fg = self.image(g)?;
            for (i, face) in self.source.faces(g)?.iter().enumerate() {
                let left = self.apply(face)?;
                let right = self.target.face_of(fg, i)?;
                if left != right {
                    return Err(Error::InvalidMap(format!(
                        "not face-compatible at {} face {i}: f(d{i} g) = {} but d{i} f(g) = {}",
                        self.source.name(g),
                        self.target.describe(&left),
                        self.target.describe(&right)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &SimplicialMap) -> Result<SimplicialMap> {
        if !(Arc::ptr_eq(&self.target, &then.source) || *self.target == *then.source) {
            return Err(Error::InvalidMap("composite of non-composable maps".into()));
        }
        let assign = self
            .assign
            .iter()
            .map(|l| l.iter().map(|x| then.apply(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: then.target.clone(),
            assign,
        })
    }

    /// Surjective in every degree. A non-degenerate target simplex can only be
    /// hit by a generator, so it suffices to look at generator images.
    pub fn is_degreewise_surjective(&self) -> bool {
        let mut hit: Vec<Vec<bool>> = self.target.counts().iter().map(|&c| vec![false; c]).collect();
        for x in self.assign.iter().flatten() {
            if !x.is_degenerate() {
                hit[x.gen().degree][x.gen().index] = true;
            }
        }
        hit.iter().flatten().all(|&h| h)
    }

    /// Bijective on generators with non-degenerate images.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.counts() != self.target.counts() {
            return false;
        }
        let mut hit: Vec<Vec<bool>> = self.target.counts().iter().map(|&c| vec![false; c]).collect();
        for x in self.assign.iter().flatten() {
            if x.is_degenerate() || hit[x.gen().degree][x.gen().index] {
                return false;
            }
            hit[x.gen().degree][x.gen().index] = true;
        }
        true
    }

    /// Image generators in source order, for reporting.
    pub fn assignments(&self) -> impl Iterator<Item = (GeneratorId, &Simplex)> + '_ {
        self.assign
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, x)| (GeneratorId::new(d, i), x)))
    }

    /// Per-degree image table, indexed like the source generators.
    pub fn assignment_table(&self) -> &[Vec<Simplex>] {
        &self.assign
    }
}
