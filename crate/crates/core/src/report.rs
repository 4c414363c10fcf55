//! Machine-readable reports.

use std::sync::Arc;

use serde::Serialize;

use crate::builders::{boundary_inclusion, delta, delta_map, sphere};
use crate::colimit::{pushout, Pushout, SimplicialMap};
use crate::delta::DeltaOperator;
use crate::desing::desingularize;
use crate::error::Result;
use crate::iso::are_isomorphic;
use crate::sset::{FiniteSimplicialSet, GeneratorId};
use crate::subdiv::{barratt, sd};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub from: String,
    pub to: String,
}

/// Field order is the output key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub dimension: usize,
    pub nondegenerate_counts: Vec<usize>,
    pub nonsingular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Assignment>>,
}

impl Report {
    pub fn of(x: &FiniteSimplicialSet) -> Self {
        Report {
            dimension: x.dimension(),
            nondegenerate_counts: x.counts(),
            nonsingular: x.is_nonsingular(),
            iterations: None,
            iso: None,
            witness: None,
        }
    }

    /// Also records how many enforced collapses reach `DX`.
    pub fn with_iterations(x: Arc<FiniteSimplicialSet>) -> Result<Self> {
        let mut r = Report::of(&x);
        r.iterations = Some(desingularize(x)?.iterations());
        Ok(r)
    }

    pub fn comparison(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Self {
        let mut r = Report::of(x);
        let witness = are_isomorphic(x, y);
        r.iso = Some(witness.is_some());
        r.witness = witness.map(|w| witness_table(&w));
        r
    }
}

pub fn witness_table(f: &SimplicialMap) -> Vec<Assignment> {
    f.assignments()
        .map(|(g, x)| Assignment {
            from: f.source().name(g).to_string(),
            to: f.target().describe(x),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Cell {
    pub n: usize,
    pub k: usize,
    pub expected: String,
    pub counts: Vec<usize>,
    pub iterations: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub cells: Vec<Table1Cell>,
    pub pass: bool,
}

/// Two copies of `a` glued along `along`.
fn double_along(a: &Arc<FiniteSimplicialSet>, along: SimplicialMap) -> Result<FiniteSimplicialSet> {
    debug_assert!(Arc::ptr_eq(along.target(), a));
    Ok((*pushout(&along, &along)?.object).clone())
}

/// `Δ[1] ⊔_{Δ[0]} Δ[1]`, the two intervals glued at their last vertices.
fn subdivided_interval() -> Result<Pushout> {
    let last = delta_map(&DeltaOperator::vertex(1, 1)?)?;
    pushout(&last, &last)
}

/// The objects the desingularizations `D(Sd^k(Δ[n]/∂Δ[n]))` are compared
/// with, built without subdividing a sphere except in the last cell.
pub fn table1_expected(n: usize, k: usize) -> Result<(String, FiniteSimplicialSet)> {
    Ok(match (n, k) {
        (0, _) => ("Δ[0] ⊔ Δ[0]".into(), delta(0).disjoint_union(&delta(0))?),
        (1, 0) | (2, 0) => ("Δ[0]".into(), delta(0)),
        (1, 1) => {
            let inc = boundary_inclusion(1);
            let target = inc.target().clone();
            ("Δ[1] ⊔_{∂Δ[1]} Δ[1]".into(), double_along(&target, inc)?)
        }
        (1, _) => {
            let glued = subdivided_interval()?;
            let a = glued.object.clone();
            // the outer endpoints: vertex 0 of each interval
            let first = GeneratorId::new(0, 0);
            let outer = vec![glued.in_left.image(first)?.clone(), glued.in_right.image(first)?.clone()];
            let ends = Arc::new(sphere(0));
            let along = SimplicialMap::new(ends, a.clone(), vec![outer])?;
            ("A ⊔_{∂A} A, A = Sd Δ[1]".into(), double_along(&a, along)?)
        }
        (2, 1) => ("Δ[1]".into(), delta(1)),
        _ => ("B Sd(Δ[2]/∂Δ[2])".into(), barratt(&sd(Arc::new(sphere(2)))?.set)?),
    })
}

pub fn table1() -> Result<Table1> {
    let mut cells = Vec::new();
    for n in 0..=2 {
        let mut x = Arc::new(sphere(n));
        for k in 0..=2 {
            let trace = desingularize(x.clone())?;
            let (expected, object) = table1_expected(n, k)?;
            cells.push(Table1Cell {
                n,
                k,
                expected,
                counts: trace.quotient().counts(),
                iterations: trace.iterations(),
                pass: are_isomorphic(trace.quotient(), &object).is_some(),
            });
            if k < 2 {
                x = sd(x)?.set;
            }
        }
    }
    let pass = cells.iter().all(|c| c.pass);
    Ok(Table1 { cells, pass })
}
