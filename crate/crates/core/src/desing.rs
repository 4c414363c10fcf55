//! Enforcers, enforced collapse and desingularization.

use std::sync::Arc;

use serde::Serialize;

use crate::colimit::{factor_through_quotient, pushout, quotient_with_bound, Factorization, QuotientResult, SimplicialMap};
use crate::delta::{compose, minimal_section, partition_to_degeneracy, DeltaOperator, IntervalPartition};
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, Simplex};

/// The enforcer `ρ_g`: the finest interval partition of the vertices of `g`
/// that puts any two equal vertices, and everything between them, in one
/// block.
pub fn enforcer(x: &FiniteSimplicialSet, g: GeneratorId) -> Result<DeltaOperator> {
    let v = x.vertices(&Simplex::generator(g))?;
    let n = g.degree;
    // glue[t]: positions t and t+1 lie in a common block
    let mut glue = vec![false; n];
    for i in 0..=n {
        for j in i + 1..=n {
            if v[i] == v[j] {
                for flag in &mut glue[i..j] {
                    *flag = true;
                }
            }
        }
    }
    let mut block_of = Vec::with_capacity(n + 1);
    let mut block = 0;
    block_of.push(0);
    for &glued in &glue {
        if !glued {
            block += 1;
        }
        block_of.push(block);
    }
    Ok(partition_to_degeneracy(&IntervalPartition::new(block_of)?))
}

/// Enforced collapse along the generators in `along`: the quotient seeded by
/// `g ~ g·(s∘ρ_g)` for each of them, with `s` the least section of `ρ_g`.
pub fn cen(x: Arc<FiniteSimplicialSet>, along: &[GeneratorId]) -> Result<QuotientResult> {
    let mut seeds = Vec::with_capacity(along.len());
    for &g in along {
        let rho = enforcer(&x, g)?;
        if rho.is_identity() {
            continue;
        }
        let s = minimal_section(&rho)?;
        let gx = Simplex::generator(g);
        let collapsed = x.act(&gx, &compose(&rho, &s)?)?;
        seeds.push((gx, collapsed));
    }
    let bound = x.dimension();
    quotient_with_bound(x, &seeds, bound)
}

/// Enforced collapse along every non-embedded generator.
pub fn cen_default(x: Arc<FiniteSimplicialSet>) -> Result<QuotientResult> {
    let along = x.non_embedded();
    cen(x, &along)
}

/// The sequence `X → JX → J²X → …` ending in a non-singular set.
#[derive(Clone, Debug)]
pub struct DesingTrace {
    pub initial: Arc<FiniteSimplicialSet>,
    pub stages: Vec<QuotientResult>,
    /// Composite of the stage maps.
    pub eta: SimplicialMap,
}

/// Serialized form of a trace; field order is the output key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub iterations: usize,
    pub stage_counts: Vec<Vec<usize>>,
    pub nonsingular: bool,
}

impl DesingTrace {
    /// Number of enforced collapses performed.
    pub fn iterations(&self) -> usize {
        self.stages.len()
    }

    /// The desingularization `DX`.
    pub fn quotient(&self) -> &Arc<FiniteSimplicialSet> {
        self.stages.last().map(|s| &s.quotient).unwrap_or(&self.initial)
    }

    /// Generator counts of `X` and of every stage after it.
    pub fn stage_counts(&self) -> Vec<Vec<usize>> {
        std::iter::once(self.initial.counts())
            .chain(self.stages.iter().map(|s| s.quotient.counts()))
            .collect()
    }

    pub fn report(&self) -> TraceReport {
        TraceReport {
            iterations: self.iterations(),
            stage_counts: self.stage_counts(),
            nonsingular: self.quotient().is_nonsingular(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("trace serializes")
    }
}

/// Iterates enforced collapse until the result is non-singular.
pub fn desingularize(x: Arc<FiniteSimplicialSet>) -> Result<DesingTrace> {
    let mut stages: Vec<QuotientResult> = Vec::new();
    let mut eta = SimplicialMap::identity(x.clone());
    let mut current = x.clone();
    while !current.is_nonsingular() {
        let step = cen_default(current.clone())?;
        if step.quotient.total_generators() >= current.total_generators() {
            return Err(Error::Internal("enforced collapse made no progress".into()));
        }
        eta = eta.then(&step.map)?;
        current = step.quotient.clone();
        stages.push(step);
    }
    Ok(DesingTrace {
        initial: x,
        stages,
        eta,
    })
}

/// `η_X: X → DX`.
pub fn eta(x: Arc<FiniteSimplicialSet>) -> Result<SimplicialMap> {
    Ok(desingularize(x)?.eta)
}

fn expect_factor(f: Factorization, what: &str) -> Result<SimplicialMap> {
    match f {
        Factorization::Factors(h) => Ok(h),
        Factorization::Witness { first, second } => Err(Error::Internal(format!(
            "{what} does not factor: {first:?} and {second:?} are identified by the unit"
        ))),
    }
}

/// The unique `h: DX → A` with `h∘η_X = k`, for `k: X → A` with `A`
/// non-singular.
pub fn factor_through_eta(k: &SimplicialMap) -> Result<SimplicialMap> {
    if !k.target().is_nonsingular() {
        return Err(Error::SingularInput("target of the map to factor".into()));
    }
    let trace = desingularize(k.source().clone())?;
    expect_factor(factor_through_quotient(&trace.eta, k)?, "map into a non-singular set")
}

/// `Df: DX → DY`, characterized by `Df∘η_X = η_Y∘f`.
pub fn d_map(f: &SimplicialMap) -> Result<SimplicialMap> {
    let tx = desingularize(f.source().clone())?;
    let ty = desingularize(f.target().clone())?;
    let k = f.then(&ty.eta)?;
    expect_factor(factor_through_quotient(&tx.eta, &k)?, "η_Y∘f")
}

/// Outcome of collapsing along a chosen set of enforcers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnforcerCheck {
    /// `η_X` factors through `X → Y`.
    pub factors: bool,
    /// `Y` is non-singular and isomorphic to `DX`.
    pub is_dx: bool,
}

pub fn pushout_along_enforcers_check(x: Arc<FiniteSimplicialSet>, along: &[GeneratorId]) -> Result<EnforcerCheck> {
    let y = cen(x.clone(), along)?;
    let trace = desingularize(x)?;
    let factors = factor_through_quotient(&y.map, &trace.eta)?.factors();
    let is_dx = y.quotient.is_nonsingular() && crate::iso::are_isomorphic(&y.quotient, trace.quotient()).is_some();
    Ok(EnforcerCheck { factors, is_dx })
}

/// Pushout in non-singular sets: the desingularized pushout of `f` and `g`.
pub fn ns_pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<FiniteSimplicialSet> {
    for (what, set) in [("source", f.source()), ("left target", f.target()), ("right target", g.target())] {
        if !set.is_nonsingular() {
            return Err(Error::SingularInput(format!("pushout {what}")));
        }
    }
    let p = pushout(f, g)?;
    Ok((**desingularize(p.object)?.quotient()).clone())
}
