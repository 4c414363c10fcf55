//! Maps, quotients, coproducts and pushouts of finite simplicial sets.

mod congruence;
mod map;

use std::sync::Arc;

pub use congruence::{quotient, quotient_with_bound, Congruence, QuotientResult};
pub use map::{point, SimplicialMap};

use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, Simplex};

fn same_set(a: &Arc<FiniteSimplicialSet>, b: &Arc<FiniteSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A coproduct with its inclusions.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Arc<FiniteSimplicialSet>,
    pub inclusions: Vec<SimplicialMap>,
    offsets: Vec<Vec<usize>>,
}

impl Coproduct {
    pub fn new(parts: &[Arc<FiniteSimplicialSet>]) -> Result<Self> {
        let refs: Vec<&FiniteSimplicialSet> = parts.iter().map(|p| p.as_ref()).collect();
        let (set, offsets) = FiniteSimplicialSet::coproduct(&refs)?;
        let object = Arc::new(set);
        let inclusions = parts
            .iter()
            .enumerate()
            .map(|(p, part)| {
                let assign = (0..part.counts().len())
                    .map(|d| {
                        part.generators_of_degree(d)
                            .map(|g| Simplex::generator(GeneratorId::new(d, g.index + offsets[p][d])))
                            .collect()
                    })
                    .collect();
                SimplicialMap::unchecked(part.clone(), object.clone(), assign)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coproduct {
            object,
            inclusions,
            offsets,
        })
    }

    /// Which part a generator of the coproduct came from, and its id there.
    pub fn origin(&self, g: GeneratorId) -> Option<(usize, GeneratorId)> {
        self.inclusions.iter().enumerate().find_map(|(p, inc)| {
            let off = *self.offsets[p].get(g.degree)?;
            let idx = g.index.checked_sub(off)?;
            (idx < inc.source().count(g.degree)).then(|| (p, GeneratorId::new(g.degree, idx)))
        })
    }

    /// The map out of the coproduct restricting to `maps[p]` on part `p`.
    pub fn copair(&self, maps: &[SimplicialMap]) -> Result<SimplicialMap> {
        if maps.len() != self.inclusions.len() {
            return Err(Error::InvalidMap(format!(
                "copairing needs {} maps, got {}",
                self.inclusions.len(),
                maps.len()
            )));
        }
        let target = maps
            .first()
            .map(|m| m.target().clone())
            .unwrap_or_else(|| Arc::new(FiniteSimplicialSet::empty()));
        for (m, inc) in maps.iter().zip(&self.inclusions) {
            if !same_set(m.target(), &target) {
                return Err(Error::InvalidMap("copaired maps have different targets".into()));
            }
            if !same_set(m.source(), inc.source()) {
                return Err(Error::InvalidMap("copaired map does not start at its summand".into()));
            }
        }
        SimplicialMap::from_fn(self.object.clone(), target, |g| {
            let (p, h) = self
                .origin(g)
                .ok_or_else(|| Error::Internal(format!("generator {g:?} outside every summand")))?;
            maps[p].image(h).cloned()
        })
    }
}

/// A pushout square `X ← A → Y` completed by `X → P ← Y`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Arc<FiniteSimplicialSet>,
    pub in_left: SimplicialMap,
    pub in_right: SimplicialMap,
    pub quotient: QuotientResult,
}

/// Pushout of `f: A → X` and `g: A → Y`, as the quotient of `X ⊔ Y` by the
/// congruence generated by `f(a) ~ g(a)` for the generators `a` of `A`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if !same_set(f.source(), g.source()) {
        return Err(Error::InvalidMap("pushout legs have different sources".into()));
    }
    let coproduct = Coproduct::new(&[f.target().clone(), g.target().clone()])?;
    let (inx, iny) = (&coproduct.inclusions[0], &coproduct.inclusions[1]);
    let seeds = f
        .source()
        .generators()
        .map(|a| {
            let left = inx.apply(f.image(a)?)?;
            let right = iny.apply(g.image(a)?)?;
            Ok((left, right))
        })
        .collect::<Result<Vec<_>>>()?;
    let q = quotient(coproduct.object.clone(), &seeds)?;
    let in_left = inx.then(&q.map)?;
    let in_right = iny.then(&q.map)?;
    Ok(Pushout {
        object: q.quotient.clone(),
        in_left,
        in_right,
        quotient: q,
    })
}

/// Outcome of trying to factor a map through a quotient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// The unique `h` with `h ∘ q = k`.
    Factors(SimplicialMap),
    /// Two simplices identified by `q` but not by `k`.
    Witness { first: Simplex, second: Simplex },
}

impl Factorization {
    pub fn into_map(self) -> Option<SimplicialMap> {
        match self {
            Factorization::Factors(h) => Some(h),
            Factorization::Witness { .. } => None,
        }
    }

    pub fn factors(&self) -> bool {
        matches!(self, Factorization::Factors(_))
    }
}

/// Factors `k: X → Z` through a degreewise surjective `q: X → Q`.
pub fn factor_through_quotient(q: &SimplicialMap, k: &SimplicialMap) -> Result<Factorization> {
    if !same_set(q.source(), k.source()) {
        return Err(Error::InvalidMap("maps to factor have different sources".into()));
    }
    let target = q.target().clone();
    // a generator of X over each generator of Q
    let mut preimage: Vec<Vec<Option<GeneratorId>>> =
        target.counts().iter().map(|&c| vec![None; c]).collect();
    for (g, x) in q.assignments() {
        if !x.is_degenerate() {
            let slot = &mut preimage[x.gen().degree][x.gen().index];
            if slot.is_none() {
                *slot = Some(g);
            }
        }
    }
    let preimage = preimage
        .into_iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(i, g)| {
                    g.ok_or_else(|| {
                        Error::InvalidMap(format!(
                            "not surjective: nothing hits {}",
                            target.name(GeneratorId::new(d, i))
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let assign = preimage
        .iter()
        .map(|level| level.iter().map(|&g| k.image(g).cloned()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let h = SimplicialMap::unchecked(target, k.target().clone(), assign)?;
    for (g, x) in q.assignments() {
        if h.apply(x)? != *k.image(g)? {
            let lift = Simplex::generator(preimage[x.gen().degree][x.gen().index]);
            return Ok(Factorization::Witness {
                first: Simplex::generator(g),
                second: lift.degenerate(x.deg_part())?,
            });
        }
    }
    Ok(Factorization::Factors(SimplicialMap::new(
        h.source().clone(),
        h.target().clone(),
        h.assignment_table().to_vec(),
    )?))
}
