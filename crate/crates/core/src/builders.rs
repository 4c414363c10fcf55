//! Standard objects: simplices, boundaries, spheres, collapsed faces and the
//! truncated strip.

use std::sync::Arc;

use crate::colimit::{pushout, Coproduct, Pushout, SimplicialMap};
use crate::delta::DeltaOperator;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a sorted vertex list among the subsets of `{0..n}` of the same
/// size, in lexicographic order.
fn combination_rank(vertices: &[usize], n: usize) -> usize {
    let total = n + 1;
    let k = vertices.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in vertices.iter().enumerate() {
        for v in next..c {
            rank += binomial(total - 1 - v, k - 1 - i);
        }
        next = c + 1;
    }
    rank
}

fn combinations(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..total {
            if total - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, total, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, total, k, &mut Vec::new(), &mut out);
    out
}

fn subset_name(vertices: &[usize]) -> String {
    let inner: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// The generator of Δ[n] spanned by a strictly increasing vertex list.
pub fn delta_generator(n: usize, vertices: &[usize]) -> Result<GeneratorId> {
    if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) || vertices[vertices.len() - 1] > n {
        return Err(Error::InvalidOperator(format!("{vertices:?} is not a face of [{n}]")));
    }
    Ok(GeneratorId::new(vertices.len() - 1, combination_rank(vertices, n)))
}

/// The simplex of Δ[n] represented by the operator `alpha: [m] -> [n]`.
pub fn delta_simplex(alpha: &DeltaOperator) -> Result<Simplex> {
    let (mu, rho) = crate::delta::ez_factorize(alpha);
    let g = delta_generator(alpha.target_rank(), mu.values())?;
    Simplex::new(g, rho)
}

/// Δ[n], with one generator per nonempty subset of `{0..n}`. Subsets of a
/// given size are in lexicographic order, so vertex `j` has index `j`.
pub fn delta(n: usize) -> FiniteSimplicialSet {
    let mut b = SSetBuilder::new();
    let levels: Vec<Vec<Vec<usize>>> = (1..=n + 1).map(|k| combinations(n + 1, k)).collect();
    for level in &levels {
        for s in level {
            b.add_generator(s.len() - 1, Some(&subset_name(s))).expect("distinct subset names");
        }
    }
    for (d, level) in levels.iter().enumerate().skip(1) {
        for (idx, s) in level.iter().enumerate() {
            let faces = (0..s.len())
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    Simplex::generator(delta_generator(n, &t).expect("subset of [n]"))
                })
                .collect();
            b.set_faces(GeneratorId::new(d, idx), faces).expect("faces of a subset");
        }
    }
    b.build().expect("Δ[n] is well formed")
}

/// ∂Δ[n]: every proper face of Δ[n]. Empty for `n = 0`.
pub fn boundary(n: usize) -> FiniteSimplicialSet {
    let full = delta(n);
    let mut b = SSetBuilder::new();
    for g in full.generators().filter(|g| g.degree < n) {
        b.add_generator(g.degree, Some(full.name(g))).expect("names from Δ[n]");
    }
    for g in full.generators().filter(|g| g.degree > 0 && g.degree < n) {
        b.set_faces(g, full.faces(g).expect("generator of Δ[n]").to_vec())
            .expect("faces from Δ[n]");
    }
    b.build().expect("∂Δ[n] is well formed")
}

/// The inclusion ∂Δ[n] → Δ[n].
pub fn boundary_inclusion(n: usize) -> SimplicialMap {
    let source = Arc::new(boundary(n));
    let target = Arc::new(delta(n));
    SimplicialMap::from_fn(source, target, |g| Ok(Simplex::generator(g))).expect("inclusion is simplicial")
}

/// The map Δ[m] → Δ[n] induced by `alpha: [m] -> [n]`.
pub fn delta_map(alpha: &DeltaOperator) -> Result<SimplicialMap> {
    let m = alpha.source_rank();
    let source = Arc::new(delta(m));
    let target = Arc::new(delta(alpha.target_rank()));
    let cache = (1..=m + 1).map(|k| combinations(m + 1, k)).collect::<Vec<_>>();
    SimplicialMap::from_fn(source, target, |g| {
        let vertices = &cache[g.degree][g.index];
        let values: Vec<usize> = vertices.iter().map(|&v| alpha.apply(v)).collect();
        delta_simplex(&DeltaOperator::new(values, alpha.target_rank())?)
    })
}

/// Δ[n]/∂Δ[n], as a pushout of the boundary inclusion and the map to a point.
pub fn sphere_pushout(n: usize) -> Result<Pushout> {
    let inc = boundary_inclusion(n);
    let collapse = SimplicialMap::to_point(inc.source().clone());
    pushout(&inc, &collapse)
}

/// Δ[n]/∂Δ[n]. For `n = 0` this is two points.
pub fn sphere(n: usize) -> FiniteSimplicialSet {
    (*sphere_pushout(n).expect("sphere pushout").object).clone()
}

/// Δ[n] with the face spanned by `{0..k}` collapsed to a point.
pub fn collapse_face(n: usize, k: usize) -> Result<FiniteSimplicialSet> {
    if k > n {
        return Err(Error::InvalidOperator(format!("collapse_face({n},{k}) needs k <= n")));
    }
    let mu = DeltaOperator::face_onto(&(0..=k).collect::<Vec<_>>(), n)?;
    let inc = delta_map(&mu)?;
    let collapse = SimplicialMap::to_point(inc.source().clone());
    Ok((*pushout(&inc, &collapse)?.object).clone())
}

/// The first `m` triangles of the infinite strip whose enforced collapses
/// never become non-singular.
///
/// Triangles `B_2, ..., B_{2m}` are glued along edges `A_0, ..., A_{2m-1}`:
/// for even `n`, `A_n` enters `B_{n+2}` by `δ_1` and `A_{n+1}` enters it by
/// `δ_2` (if `n % 4 == 0`) or `δ_0` (if `n % 4 == 2`). The edges `A_n` and
/// `A_{n+1}` are identified for odd `n`, and `A_0` is closed into a loop.
pub fn strip(m: usize) -> Result<FiniteSimplicialSet> {
    if m == 0 {
        return Ok(FiniteSimplicialSet::empty());
    }
    let edge = Arc::new(delta(1));
    let triangle = Arc::new(delta(2));
    let loop_ = Arc::new(sphere(1));

    let edges = Coproduct::new(&vec![edge.clone(); 2 * m])?;
    let triangles = Coproduct::new(&vec![triangle.clone(); m])?;
    // C_0 then C_2, ..., C_{2m}
    let mut c_parts = vec![loop_.clone()];
    c_parts.extend(std::iter::repeat_n(edge.clone(), m));
    let glue = Coproduct::new(&c_parts)?;

    let mut to_triangles = Vec::with_capacity(2 * m);
    let mut to_glue = Vec::with_capacity(2 * m);
    let canonical = SimplicialMap::from_fn(edge.clone(), loop_.clone(), |g| {
        Ok(Simplex::generator(GeneratorId::new(g.degree, 0)))
    })?;
    for a in 0..2 * m {
        let even = a - a % 2;
        let b = even / 2; // B_{even+2}
        let j = if a % 2 == 0 {
            1
        } else if even % 4 == 0 {
            2
        } else {
            0
        };
        to_triangles.push(delta_map(&DeltaOperator::face(2, j)?)?.then(&triangles.inclusions[b])?);
        let into_c = if a == 0 {
            canonical.then(&glue.inclusions[0])?
        } else {
            // A_a lands in C_{a+1} for odd a and in C_a for even a
            let c = a.div_ceil(2);
            glue.inclusions[c].clone()
        };
        to_glue.push(into_c);
    }
    let f = edges.copair(&to_glue)?;
    let g = edges.copair(&to_triangles)?;
    Ok((*pushout(&f, &g)?.object).clone())
}
