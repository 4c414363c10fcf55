//! Operator-compatible equivalence relations and the quotients they define.
//!
//! The closure works on all simplices of degree at most a bound `D >= dim X`.
//! Any operator `[p] -> [m]` with `p, m <= D` factors epi-then-mono through a
//! rank `<= D`, and each factor is a composite of elementary operators whose
//! intermediate ranks stay within `[0, D]`. Closing the seed pairs under
//! elementary faces (downward) and elementary degeneracies (upward, capped at
//! `D`) therefore gives the smallest compatible relation on those degrees,
//! and those degrees carry every non-degenerate class.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};

use super::map::SimplicialMap;

#[derive(Clone, Debug)]
struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Every simplex up to the bound, with precomputed elementary faces and
/// degeneracies as indices.
#[derive(Clone, Debug)]
struct SimplexTable {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplexTable {
    fn new(set: &FiniteSimplicialSet, bound: usize) -> Result<Self> {
        let simplices: Vec<Vec<Simplex>> = (0..=bound).map(|d| set.simplices(d)).collect();
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut faces = vec![Vec::new(); bound + 1];
        let mut degeneracies = vec![Vec::new(); bound + 1];
        for d in 0..=bound {
            for x in &simplices[d] {
                if d > 0 {
                    let f = (0..=d)
                        .map(|i| set.face_of(x, i).map(|y| index[d - 1][&y]))
                        .collect::<Result<Vec<_>>>()?;
                    faces[d].push(f);
                }
                if d < bound {
                    let s = (0..=d)
                        .map(|i| set.degeneracy_of(x, i).map(|y| index[d + 1][&y]))
                        .collect::<Result<Vec<_>>>()?;
                    degeneracies[d].push(s);
                }
            }
        }
        Ok(SimplexTable {
            simplices,
            index,
            faces,
            degeneracies,
        })
    }

    fn lookup(&self, x: &Simplex) -> Result<(usize, usize)> {
        let d = x.degree();
        self.index
            .get(d)
            .and_then(|m| m.get(x))
            .map(|&i| (d, i))
            .ok_or_else(|| Error::InvalidOperator(format!("simplex {x:?} outside the enumerated range")))
    }
}

/// The smallest operator-compatible equivalence relation containing the
/// merged pairs, restricted to degrees `0..=degree_bound`.
#[derive(Clone, Debug)]
pub struct Congruence {
    set: Arc<FiniteSimplicialSet>,
    bound: usize,
    table: SimplexTable,
    classes: Vec<DisjointSets>,
}

impl Congruence {
    /// The discrete relation. The bound is raised to `dim X` if lower.
    pub fn new(set: Arc<FiniteSimplicialSet>, degree_bound: usize) -> Result<Self> {
        let bound = degree_bound.max(set.dimension());
        let table = SimplexTable::new(&set, bound)?;
        let classes = table.simplices.iter().map(|l| DisjointSets::new(l.len())).collect();
        Ok(Congruence {
            set,
            bound,
            table,
            classes,
        })
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    pub fn set(&self) -> &Arc<FiniteSimplicialSet> {
        &self.set
    }

    /// Identifies `a` with `b` and closes under elementary operators.
    pub fn merge(&mut self, a: &Simplex, b: &Simplex) -> Result<()> {
        if a.degree() != b.degree() {
            return Err(Error::RankMismatch {
                expected: a.degree(),
                found: b.degree(),
            });
        }
        let (d, ia) = self.table.lookup(a)?;
        let (_, ib) = self.table.lookup(b)?;
        let mut work = VecDeque::from([(d, ia, ib)]);
        while let Some((d, x, y)) = work.pop_front() {
            if !self.classes[d].union(x, y) {
                continue;
            }
            if d > 0 {
                for i in 0..=d {
                    work.push_back((d - 1, self.table.faces[d][x][i], self.table.faces[d][y][i]));
                }
            }
            if d < self.bound {
                for i in 0..=d {
                    work.push_back((
                        d + 1,
                        self.table.degeneracies[d][x][i],
                        self.table.degeneracies[d][y][i],
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn same_class(&self, a: &Simplex, b: &Simplex) -> Result<bool> {
        if a.degree() != b.degree() {
            return Ok(false);
        }
        let (d, ia) = self.table.lookup(a)?;
        let (_, ib) = self.table.lookup(b)?;
        Ok(self.classes[d].find_const(ia) == self.classes[d].find_const(ib))
    }

    /// Classes of one degree as lists of simplices, each sorted by enumeration
    /// order and listed by their first member.
    pub fn classes(&self, degree: usize) -> Vec<Vec<Simplex>> {
        let Some(level) = self.table.simplices.get(degree) else {
            return Vec::new();
        };
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<Simplex>> = Vec::new();
        for (i, x) in level.iter().enumerate() {
            let root = self.classes[degree].find_const(i);
            let k = *slot.entry(root).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(x.clone());
        }
        out
    }

    /// Builds the quotient presentation and the quotient map.
    ///
    /// A class is degenerate iff it has a degenerate member; the others become
    /// generators, ordered by their first member and named after it. The
    /// normal form of a degenerate class is found by splitting off one
    /// elementary degeneracy from a degenerate member and recursing downward.
    pub fn into_quotient(self) -> Result<QuotientResult> {
        let bound = self.bound;
        let mut builder = SSetBuilder::new();
        // per degree: root -> normal form in the quotient
        let mut normal: Vec<HashMap<usize, Simplex>> = vec![HashMap::new(); bound + 1];
        // per degree: representatives of new generators
        let mut reps: Vec<Vec<usize>> = vec![Vec::new(); bound + 1];

        for d in 0..=bound {
            let level = &self.table.simplices[d];
            let mut root_order: Vec<usize> = Vec::new();
            let mut degenerate_member: HashMap<usize, usize> = HashMap::new();
            let mut seen: HashMap<usize, ()> = HashMap::new();
            for (i, x) in level.iter().enumerate() {
                let root = self.classes[d].find_const(i);
                if seen.insert(root, ()).is_none() {
                    root_order.push(root);
                }
                if x.is_degenerate() {
                    degenerate_member.entry(root).or_insert(i);
                }
            }
            for &root in &root_order {
                let nf = match degenerate_member.get(&root) {
                    None => {
                        // all members are generators; the first one names the class
                        let first = (0..level.len())
                            .find(|&i| self.classes[d].find_const(i) == root)
                            .ok_or_else(|| Error::Internal("empty class".into()))?;
                        let name = self.set.name(level[first].gen()).to_string();
                        let g = builder.add_generator(d, Some(&name))?;
                        reps[d].push(first);
                        Simplex::generator(g)
                    }
                    Some(&member) => {
                        let x = &level[member];
                        let rho = x.deg_part().values();
                        let i = rho
                            .windows(2)
                            .position(|w| w[0] == w[1])
                            .ok_or_else(|| Error::Internal("degenerate member without repeat".into()))?;
                        let mut lower = rho.to_vec();
                        lower.remove(i + 1);
                        let w = Simplex::new(
                            x.gen(),
                            crate::delta::DeltaOperator::new(lower, x.gen().degree)?,
                        )?;
                        let (_, wi) = self.table.lookup(&w)?;
                        let wroot = self.classes[d - 1].find_const(wi);
                        let below = normal[d - 1]
                            .get(&wroot)
                            .ok_or_else(|| Error::Internal("missing lower normal form".into()))?;
                        below.degenerate(&crate::delta::DeltaOperator::degeneracy(d - 1, i)?)?
                    }
                };
                normal[d].insert(root, nf);
            }
        }

        for d in 1..=bound {
            for (k, &rep) in reps[d].iter().enumerate() {
                let faces = self.table.faces[d][rep]
                    .iter()
                    .map(|&f| normal[d - 1][&self.classes[d - 1].find_const(f)].clone())
                    .collect();
                builder.set_faces(GeneratorId::new(d, k), faces)?;
            }
        }
        let quotient = Arc::new(builder.build_validated()?);

        let assign = (0..self.set.counts().len())
            .map(|d| {
                self.set
                    .generators_of_degree(d)
                    .map(|g| {
                        let (_, i) = self.table.lookup(&Simplex::generator(g))?;
                        Ok(normal[d][&self.classes[d].find_const(i)].clone())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let map = SimplicialMap::new(self.set.clone(), quotient.clone(), assign)?;
        Ok(QuotientResult {
            quotient,
            map,
            congruence: self,
        })
    }
}

/// A quotient presentation together with its quotient map.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub quotient: Arc<FiniteSimplicialSet>,
    pub map: SimplicialMap,
    pub congruence: Congruence,
}

impl QuotientResult {
    /// Normal form in the quotient of the class of `x`.
    pub fn class_of(&self, x: &Simplex) -> Result<Simplex> {
        self.map.apply(x)
    }
}

/// Quotient of `set` by the congruence generated by `seeds`, closing on
/// degrees up to `dim X` (or the highest seed degree, if larger).
pub fn quotient(set: Arc<FiniteSimplicialSet>, seeds: &[(Simplex, Simplex)]) -> Result<QuotientResult> {
    let bound = seeds.iter().map(|(a, _)| a.degree()).max().unwrap_or(0);
    quotient_with_bound(set, seeds, bound)
}

pub fn quotient_with_bound(
    set: Arc<FiniteSimplicialSet>,
    seeds: &[(Simplex, Simplex)],
    degree_bound: usize,
) -> Result<QuotientResult> {
    for (a, b) in seeds {
        if a.degree() != b.degree() {
            return Err(Error::RankMismatch {
                expected: a.degree(),
                found: b.degree(),
            });
        }
    }
    let mut congruence = Congruence::new(set, degree_bound)?;
    for (a, b) in seeds {
        congruence.merge(a, b)?;
    }
    congruence.into_quotient()
}
