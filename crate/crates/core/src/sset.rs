//! Finite simplicial sets presented by their non-degenerate simplices.
//!
//! A [`FiniteSimplicialSet`] stores, for every generator of degree `n >= 1`,
//! the normal forms of its `n + 1` elementary faces. Every simplex is a pair
//! (generator, degeneracy operator) and [`FiniteSimplicialSet::act`] computes
//! the normal form of `x·α` for arbitrary operators, which is the
//! Eilenberg–Zilber decomposition made executable.

use std::collections::HashMap;
use std::fmt;

use crate::delta::{all_degeneracies, compose, ez_factorize, DeltaOperator};
use crate::error::{Error, Result};

/// A non-degenerate simplex of a presentation, addressed by degree and
/// position within that degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub degree: usize,
    pub index: usize,
}

impl GeneratorId {
    pub fn new(degree: usize, index: usize) -> Self {
        GeneratorId { degree, index }
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}.{}", self.degree, self.index)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(degree {}, index {})", self.degree, self.index)
    }
}

/// A simplex in normal form `gen · deg_part`, where `deg_part` is a
/// degeneracy operator `[degree] -> [gen.degree]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    gen: GeneratorId,
    deg_part: DeltaOperator,
}

impl Simplex {
    pub fn new(gen: GeneratorId, deg_part: DeltaOperator) -> Result<Self> {
        if !deg_part.is_degeneracy() {
            return Err(Error::NotDegeneracy(deg_part.to_string()));
        }
        if deg_part.target_rank() != gen.degree {
            return Err(Error::RankMismatch {
                expected: gen.degree,
                found: deg_part.target_rank(),
            });
        }
        Ok(Simplex { gen, deg_part })
    }

    /// The generator itself, as a non-degenerate simplex.
    pub fn generator(gen: GeneratorId) -> Self {
        Simplex {
            gen,
            deg_part: DeltaOperator::identity(gen.degree),
        }
    }

    pub fn gen(&self) -> GeneratorId {
        self.gen
    }

    pub fn deg_part(&self) -> &DeltaOperator {
        &self.deg_part
    }

    pub fn degree(&self) -> usize {
        self.deg_part.source_rank()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.deg_part.is_identity()
    }

    /// `self · rho` for a degeneracy operator `rho`; degeneracies act freely so
    /// this stays in normal form.
    pub fn degenerate(&self, rho: &DeltaOperator) -> Result<Simplex> {
        if !rho.is_degeneracy() {
            return Err(Error::NotDegeneracy(rho.to_string()));
        }
        Ok(Simplex {
            gen: self.gen,
            deg_part: compose(rho, &self.deg_part)?,
        })
    }

    /// Same degenerate part over a different generator of the same degree.
    pub fn with_gen(&self, gen: GeneratorId) -> Simplex {
        debug_assert_eq!(gen.degree, self.gen.degree);
        Simplex {
            gen,
            deg_part: self.deg_part.clone(),
        }
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_degenerate() {
            write!(f, "{:?}|{}", self.gen, self.deg_part)
        } else {
            write!(f, "{:?}", self.gen)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct GeneratorData {
    name: String,
    faces: Vec<Simplex>,
}

/// A presentation: generators graded by degree, each with its elementary
/// faces in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSimplicialSet {
    levels: Vec<Vec<GeneratorData>>,
}

/// A failed simplicial identity `x·δ_j·δ_i = x·δ_i·δ_{j-1}` for `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub generator: GeneratorId,
    pub i: usize,
    pub j: usize,
    pub left: Simplex,
    pub right: Simplex,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "generator {:?}: d{} d{} = {:?} but d{} d{} = {:?}",
            self.generator,
            self.i,
            self.j,
            self.left,
            self.j - 1,
            self.i,
            self.right
        )
    }
}

impl FiniteSimplicialSet {
    pub fn empty() -> Self {
        FiniteSimplicialSet { levels: Vec::new() }
    }

    /// Highest degree carrying a generator; 0 for the empty set.
    pub fn dimension(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn count(&self, degree: usize) -> usize {
        self.levels.get(degree).map_or(0, Vec::len)
    }

    /// Number of generators in each degree `0..=dimension`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total_generators(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn generators_of_degree(&self, degree: usize) -> impl Iterator<Item = GeneratorId> + '_ {
        (0..self.count(degree)).map(move |index| GeneratorId { degree, index })
    }

    /// Every generator, by degree and then index.
    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(degree, level)| (0..level.len()).map(move |index| GeneratorId { degree, index }))
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        g.index < self.count(g.degree)
    }

    fn data(&self, g: GeneratorId) -> Result<&GeneratorData> {
        self.levels
            .get(g.degree)
            .and_then(|level| level.get(g.index))
            .ok_or(Error::DanglingGenerator(g))
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        self.data(g).map(|d| d.name.as_str()).unwrap_or("?")
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GeneratorId> {
        self.generators().find(|&g| self.name(g) == name)
    }

    /// Stored normal form of `g·δ_i`.
    pub fn face(&self, g: GeneratorId, i: usize) -> Result<&Simplex> {
        let data = self.data(g)?;
        data.faces.get(i).ok_or_else(|| {
            Error::InvalidOperator(format!("generator {g:?} has no face {i}"))
        })
    }

    pub fn faces(&self, g: GeneratorId) -> Result<&[Simplex]> {
        Ok(&self.data(g)?.faces)
    }

    fn check_simplex(&self, x: &Simplex) -> Result<()> {
        self.data(x.gen).map(|_| ())
    }

    /// Normal form of `x·α`.
    ///
    /// With `β = x♭ ∘ α = μ ∘ ρ`, the face part `μ` is peeled one elementary
    /// face at a time (largest missing vertex first), each peel replacing the
    /// generator by its stored face; degeneracy parts then compose.
    pub fn act(&self, x: &Simplex, alpha: &DeltaOperator) -> Result<Simplex> {
        self.check_simplex(x)?;
        if alpha.target_rank() != x.degree() {
            return Err(Error::RankMismatch {
                expected: x.degree(),
                found: alpha.target_rank(),
            });
        }
        let beta = compose(alpha, &x.deg_part)?;
        let (mu, rho) = ez_factorize(&beta);
        let face = self.face_of_generator(x.gen, &mu)?;
        Ok(Simplex {
            gen: face.gen,
            deg_part: compose(&rho, &face.deg_part)?,
        })
    }

    fn face_of_generator(&self, g: GeneratorId, mu: &DeltaOperator) -> Result<Simplex> {
        if mu.is_identity() {
            return Ok(Simplex::generator(g));
        }
        let image = mu.values();
        let n = mu.target_rank();
        let missing = (0..=n).rev().find(|v| image.binary_search(v).is_err()).ok_or_else(|| {
            Error::Internal(format!("face operator {mu:?} misses no vertex"))
        })?;
        let stored = self.face(g, missing)?.clone();
        let rest = DeltaOperator::new(
            image.iter().map(|&v| if v > missing { v - 1 } else { v }).collect(),
            n - 1,
        )?;
        self.act(&stored, &rest)
    }

    /// `x·δ_i`.
    pub fn face_of(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        self.act(x, &DeltaOperator::face(x.degree(), i)?)
    }

    /// `x·σ_i`.
    pub fn degeneracy_of(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        x.degenerate(&DeltaOperator::degeneracy(x.degree(), i)?)
    }

    /// The vertices `x·ε_0, ..., x·ε_n`.
    pub fn vertices(&self, x: &Simplex) -> Result<Vec<Simplex>> {
        let n = x.degree();
        (0..=n)
            .map(|j| self.act(x, &DeltaOperator::vertex(n, j)?))
            .collect()
    }

    /// Whether the representing map of `g` is degreewise injective, i.e. its
    /// vertices are pairwise distinct.
    pub fn is_embedded(&self, g: GeneratorId) -> Result<bool> {
        let mut vs = self.vertices(&Simplex::generator(g))?;
        let n = vs.len();
        vs.sort();
        vs.dedup();
        Ok(vs.len() == n)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.generators().all(|g| self.is_embedded(g).unwrap_or(false))
    }

    pub fn non_embedded(&self) -> Vec<GeneratorId> {
        self.generators()
            .filter(|&g| !self.is_embedded(g).unwrap_or(false))
            .collect()
    }

    /// Checks the simplicial identities on every generator of degree `>= 2`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for g in self.generators().filter(|g| g.degree >= 2) {
            let x = Simplex::generator(g);
            let n = g.degree;
            for j in 1..=n {
                for i in 0..j {
                    let left = self
                        .face_of(&x, j)
                        .and_then(|y| self.face_of(&y, i));
                    let right = self
                        .face_of(&x, i)
                        .and_then(|y| self.face_of(&y, j - 1));
                    match (left, right) {
                        (Ok(l), Ok(r)) if l == r => {}
                        (l, r) => {
                            let bad = Simplex::generator(g);
                            out.push(Violation {
                                generator: g,
                                i,
                                j,
                                left: l.unwrap_or_else(|_| bad.clone()),
                                right: r.unwrap_or(bad),
                            })
                        }
                    }
                }
            }
        }
        out
    }

    /// All simplices of the given degree: the generators of that degree first,
    /// then degeneracies of lower generators by descending generator degree.
    pub fn simplices(&self, degree: usize) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.generators_of_degree(degree).map(Simplex::generator).collect();
        for k in (0..degree.min(self.levels.len())).rev() {
            let epis = all_degeneracies(degree, k);
            for g in self.generators_of_degree(k) {
                for rho in &epis {
                    out.push(Simplex {
                        gen: g,
                        deg_part: rho.clone(),
                    });
                }
            }
        }
        out
    }

    /// Renders a simplex as `name` or `name | epi`.
    pub fn describe(&self, x: &Simplex) -> String {
        if x.is_degenerate() {
            format!("{} | {}", self.name(x.gen), x.deg_part)
        } else {
            self.name(x.gen).to_string()
        }
    }

    /// Same presentation with generator names replaced.
    pub fn renamed(&self, mut name: impl FnMut(GeneratorId, &str) -> String) -> Result<Self> {
        let mut b = SSetBuilder::new();
        for g in self.generators() {
            b.add_generator(g.degree, Some(&name(g, self.name(g))))?;
        }
        for g in self.generators().filter(|g| g.degree > 0) {
            b.set_faces(g, self.faces(g)?.to_vec())?;
        }
        b.build()
    }

    /// Coproduct of several sets. Generators of part `p` keep their order and
    /// are shifted by `offsets[p][degree]`; names get the prefix `p{p}.`.
    pub fn coproduct(parts: &[&FiniteSimplicialSet]) -> Result<(FiniteSimplicialSet, Vec<Vec<usize>>)> {
        let dim = parts.iter().map(|p| p.levels.len()).max().unwrap_or(0);
        let mut offsets = vec![vec![0; dim]; parts.len()];
        let mut levels: Vec<Vec<GeneratorData>> = vec![Vec::new(); dim];
        for (p, part) in parts.iter().enumerate() {
            for d in 0..dim {
                offsets[p][d] = levels[d].len();
            }
            for (d, level) in part.levels.iter().enumerate() {
                for data in level {
                    let faces = data
                        .faces
                        .iter()
                        .map(|f| Simplex {
                            gen: GeneratorId::new(f.gen.degree, f.gen.index + offsets[p][f.gen.degree]),
                            deg_part: f.deg_part.clone(),
                        })
                        .collect();
                    levels[d].push(GeneratorData {
                        name: format!("p{p}.{}", data.name),
                        faces,
                    });
                }
            }
        }
        Ok((FiniteSimplicialSet { levels }, offsets))
    }

    pub fn disjoint_union(&self, other: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
        Ok(FiniteSimplicialSet::coproduct(&[self, other])?.0)
    }
}

/// Incremental construction of a presentation.
#[derive(Default)]
pub struct SSetBuilder {
    levels: Vec<Vec<(String, Option<Vec<Simplex>>)>>,
    names: HashMap<String, GeneratorId>,
}

impl SSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a generator; without a name it is called `g{degree}.{index}`.
    pub fn add_generator(&mut self, degree: usize, name: Option<&str>) -> Result<GeneratorId> {
        if self.levels.len() <= degree {
            self.levels.resize_with(degree + 1, Vec::new);
        }
        let id = GeneratorId::new(degree, self.levels[degree].len());
        let name = name.map_or_else(|| format!("g{degree}.{}", id.index), str::to_string);
        if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') || name == "=" || name == "|" {
            return Err(Error::InvalidSet(format!("bad generator name {name:?}")));
        }
        if self.names.insert(name.clone(), id).is_some() {
            return Err(Error::InvalidSet(format!("duplicate generator name {name:?}")));
        }
        self.levels[degree].push((name, None));
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<GeneratorId> {
        self.names.get(name).copied()
    }

    pub fn set_faces(&mut self, g: GeneratorId, faces: Vec<Simplex>) -> Result<()> {
        let slot = self
            .levels
            .get_mut(g.degree)
            .and_then(|l| l.get_mut(g.index))
            .ok_or(Error::DanglingGenerator(g))?;
        slot.1 = Some(faces);
        Ok(())
    }

    /// Structural checks only: face counts, degrees and references.
    pub fn build(self) -> Result<FiniteSimplicialSet> {
        let mut levels = self.levels;
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        let mut out = Vec::with_capacity(levels.len());
        for (degree, level) in levels.into_iter().enumerate() {
            let mut data = Vec::with_capacity(level.len());
            for (index, (name, faces)) in level.into_iter().enumerate() {
                let g = GeneratorId::new(degree, index);
                let faces = faces.unwrap_or_default();
                let expected = if degree == 0 { 0 } else { degree + 1 };
                if faces.len() != expected {
                    return Err(Error::InvalidSet(format!(
                        "generator {name} of degree {degree} has {} faces, expected {expected}",
                        faces.len()
                    )));
                }
                for (i, f) in faces.iter().enumerate() {
                    if f.gen.degree >= degree || f.gen.index >= counts.get(f.gen.degree).copied().unwrap_or(0) {
                        return Err(Error::InvalidSet(format!(
                            "face {i} of {name} ({g:?}) references missing or non-lower generator {:?}",
                            f.gen
                        )));
                    }
                    if f.degree() != degree - 1 {
                        return Err(Error::InvalidSet(format!(
                            "face {i} of {name} has degree {}, expected {}",
                            f.degree(),
                            degree - 1
                        )));
                    }
                }
                data.push(GeneratorData { name, faces });
            }
            out.push(data);
        }
        Ok(FiniteSimplicialSet { levels: out })
    }

    /// Structural checks plus the simplicial identities.
    pub fn build_validated(self) -> Result<FiniteSimplicialSet> {
        let set = self.build()?;
        let violations = set.validate();
        if let Some(v) = violations.first() {
            return Err(Error::InvalidSet(format!(
                "{} simplicial identity violation(s), first: {v}",
                violations.len()
            )));
        }
        Ok(set)
    }
}
