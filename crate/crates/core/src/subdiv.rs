//! Kan subdivision, posets and their nerves, and the Barratt nerve.
//!
//! Simplices of `Sd X` are represented by flags `(g, V_0 ⊆ … ⊆ V_k)` where
//! `g` is a generator of degree `n` and the `V_i` are nonempty subsets of
//! `{0..n}` stored as bitmasks. A flag whose top `V_k` is a proper subset is
//! pushed down along the face onto `V_k` and across the degenerate part of
//! the resulting simplex, so every simplex has a unique full-topped
//! representative over a generator; repeated subsets then form its
//! degenerate part.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::colimit::SimplicialMap;
use crate::delta::DeltaOperator;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};

fn full_mask(n: usize) -> u64 {
    if n >= 63 {
        u64::MAX
    } else {
        (1u64 << (n + 1)) - 1
    }
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn mask_text(mask: u64) -> String {
    let v = mask_elements(mask);
    if v.iter().all(|&i| i < 10) {
        v.iter().map(|i| i.to_string()).collect()
    } else {
        let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Replaces a weakly increasing sequence by its distinct entries and the
/// degeneracy operator recording the repeats.
fn split_repeats<T: PartialEq + Clone>(seq: &[T]) -> Result<(Vec<T>, DeltaOperator)> {
    let mut distinct: Vec<T> = Vec::with_capacity(seq.len());
    let mut values = Vec::with_capacity(seq.len());
    for x in seq {
        if distinct.last() != Some(x) {
            distinct.push(x.clone());
        }
        values.push(distinct.len() - 1);
    }
    let rho = DeltaOperator::epi(values)?;
    Ok((distinct, rho))
}

/// A non-degenerate full-topped flag over a generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Flag {
    pub gen: GeneratorId,
    /// Strictly increasing bitmasks ending in the full vertex set.
    pub chain: Vec<u64>,
}

impl Flag {
    pub fn degree(&self) -> usize {
        self.chain.len() - 1
    }
}

/// `Sd X` with its flag table.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub source: Arc<FiniteSimplicialSet>,
    pub set: Arc<FiniteSimplicialSet>,
    flags: Vec<Vec<Flag>>,
    lookup: HashMap<Flag, GeneratorId>,
}

impl Subdivision {
    pub fn flag(&self, g: GeneratorId) -> Option<&Flag> {
        self.flags.get(g.degree).and_then(|l| l.get(g.index))
    }

    pub fn flags(&self, degree: usize) -> &[Flag] {
        self.flags.get(degree).map(|l| l.as_slice()).unwrap_or(&[])
    }

    pub fn generator_of(&self, flag: &Flag) -> Option<GeneratorId> {
        self.lookup.get(flag).copied()
    }

    /// The simplex of `Sd X` represented by `(g, chain)` for a weakly
    /// increasing chain of nonempty subsets of `{0..deg g}`.
    pub fn normalize(&self, g: GeneratorId, chain: &[u64]) -> Result<Simplex> {
        let (h, chain) = push_to_full(&self.source, g, chain)?;
        let (distinct, rho) = split_repeats(&chain)?;
        let flag = Flag { gen: h, chain: distinct };
        let id = self
            .generator_of(&flag)
            .ok_or_else(|| Error::Internal(format!("flag {flag:?} missing from the subdivision")))?;
        Simplex::new(id, rho)
    }
}

/// Moves `(g, chain)` to the equivalent pair with full top over a generator.
fn push_to_full(x: &FiniteSimplicialSet, g: GeneratorId, chain: &[u64]) -> Result<(GeneratorId, Vec<u64>)> {
    let n = g.degree;
    let full = full_mask(n);
    let top = *chain
        .last()
        .ok_or_else(|| Error::InvalidOperator("empty flag".into()))?;
    if chain.iter().any(|&v| v == 0 || v & !full != 0)
        || chain.windows(2).any(|w| w[0] & !w[1] != 0)
    {
        return Err(Error::InvalidOperator(format!("{chain:?} is not a chain of faces of [{n}]")));
    }
    if top == full {
        return Ok((g, chain.to_vec()));
    }
    let verts = mask_elements(top);
    let mu = DeltaOperator::face_onto(&verts, n)?;
    let y = x.act(&Simplex::generator(g), &mu)?;
    let tau = y.deg_part();
    let mut position = [usize::MAX; 64];
    for (p, &v) in verts.iter().enumerate() {
        position[v] = p;
    }
    let moved = chain
        .iter()
        .map(|&v| {
            mask_elements(v)
                .into_iter()
                .fold(0u64, |acc, e| acc | 1 << tau.apply(position[e]))
        })
        .collect::<Vec<_>>();
    push_to_full(x, y.gen(), &moved)
}

fn strict_chains_of(n: usize) -> Vec<Vec<u64>> {
    // chains V_0 ⊊ … ⊊ V_k = full, built downward from the top
    let full = full_mask(n);
    let mut out = Vec::new();
    let mut stack = vec![vec![full]];
    while let Some(chain) = stack.pop() {
        let bottom = chain[0];
        // proper nonempty submasks of bottom
        let mut sub = (bottom - 1) & bottom;
        while sub != 0 {
            let mut longer = Vec::with_capacity(chain.len() + 1);
            longer.push(sub);
            longer.extend_from_slice(&chain);
            stack.push(longer);
            sub = (sub - 1) & bottom;
        }
        out.push(chain);
    }
    out
}

/// Names if they are pairwise distinct, otherwise the builder's defaults.
fn add_named(b: &mut SSetBuilder, entries: &[(usize, String)]) -> Result<Vec<GeneratorId>> {
    let distinct = entries.iter().map(|(_, s)| s).collect::<HashSet<_>>().len() == entries.len();
    entries
        .iter()
        .map(|(d, name)| b.add_generator(*d, if distinct { Some(name) } else { None }))
        .collect()
}

/// The Kan subdivision `Sd X`, generated in degree `k` by the non-degenerate
/// full-topped flags with `k + 1` subsets, ordered by generator then chain.
pub fn sd(x: Arc<FiniteSimplicialSet>) -> Result<Subdivision> {
    if x.dimension() >= 63 {
        return Err(Error::Bounds("subdivision needs degree below 63".into()));
    }
    let mut flags: Vec<Vec<Flag>> = vec![Vec::new(); if x.is_empty() { 0 } else { x.dimension() + 1 }];
    for g in x.generators() {
        for chain in strict_chains_of(g.degree) {
            flags[chain.len() - 1].push(Flag { gen: g, chain });
        }
    }
    for level in &mut flags {
        level.sort();
    }
    let lookup: HashMap<Flag, GeneratorId> = flags
        .iter()
        .enumerate()
        .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, f)| (f.clone(), GeneratorId::new(d, i))))
        .collect();

    let mut b = SSetBuilder::new();
    let entries: Vec<(usize, String)> = flags
        .iter()
        .flatten()
        .map(|f| {
            let chain: Vec<String> = f.chain.iter().map(|&m| mask_text(m)).collect();
            (f.degree(), format!("{}:{}", x.name(f.gen), chain.join("<")))
        })
        .collect();
    add_named(&mut b, &entries)?;

    let mut result = Subdivision {
        source: x,
        set: Arc::new(FiniteSimplicialSet::empty()),
        flags,
        lookup,
    };
    for (d, level) in result.flags.iter().enumerate().skip(1) {
        for (i, f) in level.iter().enumerate() {
            let faces = (0..=d)
                .map(|j| {
                    let mut chain = f.chain.clone();
                    chain.remove(j);
                    result.normalize(f.gen, &chain)
                })
                .collect::<Result<Vec<_>>>()?;
            b.set_faces(GeneratorId::new(d, i), faces)?;
        }
    }
    result.set = Arc::new(b.build_validated()?);
    Ok(result)
}

/// `Sd f: Sd X → Sd Y`, sending `(g, V)` to `(h, ρ(V))` where `f(g) = h·ρ`.
pub fn sd_map(f: &SimplicialMap, sdx: &Subdivision, sdy: &Subdivision) -> Result<SimplicialMap> {
    let fits = |a: &Arc<FiniteSimplicialSet>, b: &Arc<FiniteSimplicialSet>| Arc::ptr_eq(a, b) || **a == **b;
    if !fits(f.source(), &sdx.source) || !fits(f.target(), &sdy.source) {
        return Err(Error::InvalidMap("subdivisions do not match the map".into()));
    }
    SimplicialMap::from_fn(sdx.set.clone(), sdy.set.clone(), |s| {
        let flag = sdx
            .flag(s)
            .ok_or_else(|| Error::Internal(format!("no flag for {s:?}")))?;
        let image = f.image(flag.gen)?;
        let rho = image.deg_part();
        let chain: Vec<u64> = flag
            .chain
            .iter()
            .map(|&v| mask_elements(v).into_iter().fold(0u64, |acc, e| acc | 1 << rho.apply(e)))
            .collect();
        sdy.normalize(image.gen(), &chain)
    })
}

/// A finite poset with degree tags that never decrease along the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    degrees: Vec<usize>,
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Closes the strict relations `a < b` transitively. Rejects cycles and
    /// relations going down in degree.
    pub fn new(names: Vec<String>, degrees: Vec<usize>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n {
            return Err(Error::InvalidPoset("one degree per element required".into()));
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            if degrees[a] > degrees[b] {
                return Err(Error::InvalidPoset(format!(
                    "{} < {} goes down in degree",
                    names[a], names[b]
                )));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            let through = less[k].clone();
            for row in less.iter_mut().filter(|row| row[k]) {
                for (reach, &via) in row.iter_mut().zip(&through) {
                    *reach |= via;
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| less[a][a]) {
            return Err(Error::InvalidPoset(format!("{} lies on a cycle", names[a])));
        }
        Ok(Poset { names, degrees, less })
    }

    /// A poset from bare relations, tagging each element with the length of
    /// the longest chain below it.
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
        let flat = Poset::new(names.clone(), vec![0; size], relations)?;
        let mut height = vec![0usize; size];
        // longest chains; the relation is acyclic so `size` passes suffice
        for _ in 0..size {
            for a in 0..size {
                for b in 0..size {
                    if flat.less[a][b] && height[b] < height[a] + 1 {
                        height[b] = height[a] + 1;
                    }
                }
            }
        }
        Poset::new(names, height, relations)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.degrees[a]
    }
}

/// The face poset of `X`: its generators, in generator order, with `y < x`
/// when `y = x·μ` for a proper face operator `μ`.
pub fn face_poset(x: &FiniteSimplicialSet) -> Result<Poset> {
    let ids: Vec<GeneratorId> = x.generators().collect();
    let position: HashMap<GeneratorId, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut relations = Vec::new();
    for (i, &g) in ids.iter().enumerate() {
        let n = g.degree;
        let full = full_mask(n);
        for mask in 1..full {
            let mu = DeltaOperator::face_onto(&mask_elements(mask), n)?;
            let y = x.act(&Simplex::generator(g), &mu)?;
            if !y.is_degenerate() {
                relations.push((position[&y.gen()], i));
            }
        }
    }
    relations.sort();
    relations.dedup();
    Poset::new(
        ids.iter().map(|&g| x.name(g).to_string()).collect(),
        ids.iter().map(|g| g.degree).collect(),
        &relations,
    )
}

/// The nerve of a poset together with its chain table.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<FiniteSimplicialSet>,
    chains: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<Vec<usize>, GeneratorId>,
}

impl Nerve {
    pub fn chain(&self, g: GeneratorId) -> Option<&[usize]> {
        self.chains.get(g.degree).and_then(|l| l.get(g.index)).map(|c| c.as_slice())
    }

    /// The simplex given by a weakly increasing sequence of elements.
    pub fn simplex_for_sequence(&self, seq: &[usize]) -> Result<Simplex> {
        let (chain, rho) = split_repeats(seq)?;
        let g = self
            .lookup
            .get(&chain)
            .ok_or_else(|| Error::InvalidPoset(format!("{seq:?} is not a chain")))?;
        Simplex::new(*g, rho)
    }
}

/// The nerve: strict chains `a_0 < … < a_k` in degree `k`, lexicographically
/// ordered, with face `i` dropping `a_i`.
pub fn nerve(p: &Poset) -> Result<Nerve> {
    let n = p.len();
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for b in (0..n).rev().filter(|&b| p.less(last, b)) {
            let mut longer = chain.clone();
            longer.push(b);
            stack.push(longer);
        }
        let k = chain.len() - 1;
        if chains.len() <= k {
            chains.resize(k + 1, Vec::new());
        }
        chains[k].push(chain);
    }
    for level in &mut chains {
        level.sort();
    }
    let lookup: HashMap<Vec<usize>, GeneratorId> = chains
        .iter()
        .enumerate()
        .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, c)| (c.clone(), GeneratorId::new(d, i))))
        .collect();
    let mut b = SSetBuilder::new();
    let entries: Vec<(usize, String)> = chains
        .iter()
        .flatten()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&a| p.name(a)).collect();
            (c.len() - 1, format!("[{}]", parts.join("<")))
        })
        .collect();
    add_named(&mut b, &entries)?;
    for (d, level) in chains.iter().enumerate().skip(1) {
        for (i, c) in level.iter().enumerate() {
            let faces = (0..=d)
                .map(|j| {
                    let mut shorter = c.clone();
                    shorter.remove(j);
                    Simplex::generator(lookup[&shorter])
                })
                .collect();
            b.set_faces(GeneratorId::new(d, i), faces)?;
        }
    }
    Ok(Nerve {
        set: Arc::new(b.build()?),
        chains,
        lookup,
    })
}

/// The Barratt nerve `BX` as a nerve with its chain table.
pub fn barratt_nerve(x: &FiniteSimplicialSet) -> Result<Nerve> {
    nerve(&face_poset(x)?)
}

/// The Barratt nerve `BX`.
pub fn barratt(x: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
    Ok((*barratt_nerve(x)?.set).clone())
}

/// `b_X: Sd X → BX`, sending a flag to the chain of non-degenerate parts of
/// the faces it names. `bx` must be the Barratt nerve of the subdivided set.
pub fn b_map_with(sdx: &Subdivision, bx: &Nerve) -> Result<SimplicialMap> {
    let x = &sdx.source;
    let position: HashMap<GeneratorId, usize> = x.generators().enumerate().map(|(i, g)| (g, i)).collect();
    SimplicialMap::from_fn(sdx.set.clone(), bx.set.clone(), |s| {
        let flag = sdx
            .flag(s)
            .ok_or_else(|| Error::Internal(format!("no flag for {s:?}")))?;
        let seq = flag
            .chain
            .iter()
            .map(|&v| {
                let mu = DeltaOperator::face_onto(&mask_elements(v), flag.gen.degree)?;
                let y = x.act(&Simplex::generator(flag.gen), &mu)?;
                Ok(position[&y.gen()])
            })
            .collect::<Result<Vec<_>>>()?;
        bx.simplex_for_sequence(&seq)
    })
}

pub fn b_map(x: Arc<FiniteSimplicialSet>) -> Result<SimplicialMap> {
    let bx = barratt_nerve(&x)?;
    let sdx = sd(x)?;
    b_map_with(&sdx, &bx)
}

/// `t_X: D(Sd X) → BX`, the factorization of `b_X` through the unit.
pub fn t_map(x: Arc<FiniteSimplicialSet>) -> Result<SimplicialMap> {
    let b = b_map(x)?;
    crate::desing::factor_through_eta(&b)
}
