//! Isomorphism invariants and a backtracking isomorphism search.
//!
//! The search is exponential in the worst case. Candidates are restricted to
//! generators with equal local signatures, every assignment forces the
//! assignment of all faces, and the next generator to branch on is the one
//! with the fewest consistent candidates.

use std::collections::HashMap;
use std::sync::Arc;

use crate::colimit::SimplicialMap;
use crate::sset::{FiniteSimplicialSet, GeneratorId, Simplex};

/// What a generator looks like from itself: its degree, the shape of each
/// face, which vertices coincide, and how many stored faces land on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LocalSignature {
    pub degree: usize,
    pub faces: Vec<(usize, Vec<usize>)>,
    pub vertex_pattern: Vec<usize>,
    pub cofaces: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Fingerprint {
    pub counts: Vec<usize>,
    /// Sorted signatures of all generators.
    pub signatures: Vec<LocalSignature>,
}

fn signatures(x: &FiniteSimplicialSet) -> Vec<Vec<LocalSignature>> {
    let mut cofaces: HashMap<GeneratorId, usize> = HashMap::new();
    for g in x.generators().filter(|g| g.degree > 0) {
        for f in x.faces(g).expect("own generator") {
            *cofaces.entry(f.gen()).or_default() += 1;
        }
    }
    x.counts()
        .iter()
        .enumerate()
        .map(|(d, _)| {
            x.generators_of_degree(d)
                .map(|g| {
                    let faces = if d == 0 {
                        Vec::new()
                    } else {
                        x.faces(g)
                            .expect("own generator")
                            .iter()
                            .map(|f| (f.gen().degree, f.deg_part().values().to_vec()))
                            .collect()
                    };
                    let vs = x.vertices(&Simplex::generator(g)).expect("own generator");
                    let vertex_pattern = vs
                        .iter()
                        .map(|v| vs.iter().position(|w| w == v).expect("present"))
                        .collect();
                    LocalSignature {
                        degree: d,
                        faces,
                        vertex_pattern,
                        cofaces: cofaces.get(&g).copied().unwrap_or(0),
                    }
                })
                .collect()
        })
        .collect()
}

pub fn fingerprint(x: &FiniteSimplicialSet) -> Fingerprint {
    let mut all: Vec<LocalSignature> = signatures(x).into_iter().flatten().collect();
    all.sort();
    Fingerprint {
        counts: x.counts(),
        signatures: all,
    }
}

struct Search<'a> {
    x: &'a FiniteSimplicialSet,
    y: &'a FiniteSimplicialSet,
    sig_x: Vec<Vec<usize>>,
    sig_y: Vec<Vec<usize>>,
    phi: Vec<Vec<Option<usize>>>,
    inv: Vec<Vec<Option<usize>>>,
    trail: Vec<GeneratorId>,
}

impl Search<'_> {
    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let g = self.trail.pop().expect("nonempty trail");
            let h = self.phi[g.degree][g.index].take().expect("assigned");
            self.inv[g.degree][h] = None;
        }
    }

    /// Assigns `g ↦ h` and all faces it forces. Leaves partial work on the
    /// trail on failure.
    fn assign(&mut self, g: GeneratorId, h: usize) -> bool {
        let mut queue = vec![(g, h)];
        while let Some((g, h)) = queue.pop() {
            let d = g.degree;
            match self.phi[d][g.index] {
                Some(prev) if prev == h => continue,
                Some(_) => return false,
                None => {}
            }
            if self.inv[d][h].is_some() || self.sig_x[d][g.index] != self.sig_y[d][h] {
                return false;
            }
            self.phi[d][g.index] = Some(h);
            self.inv[d][h] = Some(g.index);
            self.trail.push(g);
            if d == 0 {
                continue;
            }
            let fx = self.x.faces(g).expect("own generator");
            let fy = self.y.faces(GeneratorId::new(d, h)).expect("own generator");
            for (a, b) in fx.iter().zip(fy) {
                if a.deg_part() != b.deg_part() {
                    return false;
                }
                queue.push((a.gen(), b.gen().index));
            }
        }
        true
    }

    fn plausible(&self, g: GeneratorId, h: usize) -> bool {
        let d = g.degree;
        if self.inv[d][h].is_some() || self.sig_x[d][g.index] != self.sig_y[d][h] {
            return false;
        }
        if d == 0 {
            return true;
        }
        let fx = self.x.faces(g).expect("own generator");
        let fy = self.y.faces(GeneratorId::new(d, h)).expect("own generator");
        fx.iter().zip(fy).all(|(a, b)| {
            let (ga, gb) = (a.gen(), b.gen());
            match self.phi[ga.degree][ga.index] {
                Some(img) => img == gb.index,
                None => self.inv[gb.degree][gb.index].is_none(),
            }
        })
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(GeneratorId, Vec<usize>)> = None;
        for g in self.x.generators() {
            if self.phi[g.degree][g.index].is_some() {
                continue;
            }
            let cands: Vec<usize> = (0..self.y.count(g.degree)).filter(|&h| self.plausible(g, h)).collect();
            let better = match &best {
                None => true,
                Some((b, c)) => cands.len() < c.len() || (cands.len() == c.len() && g.degree > b.degree),
            };
            if better {
                let empty = cands.is_empty();
                best = Some((g, cands));
                if empty {
                    return false;
                }
            }
        }
        let Some((g, cands)) = best else {
            return true;
        };
        for h in cands {
            let mark = self.trail.len();
            if self.assign(g, h) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// An isomorphism `X → Y`, or `None` if there is none.
pub fn are_isomorphic(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Option<SimplicialMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let (sx, sy) = (signatures(x), signatures(y));
    let mut ids: HashMap<&LocalSignature, usize> = HashMap::new();
    let mut id_of = |s| {
        let next = ids.len();
        *ids.entry(s).or_insert(next)
    };
    let sig_x: Vec<Vec<usize>> = sx.iter().map(|l| l.iter().map(&mut id_of).collect()).collect();
    let sig_y: Vec<Vec<usize>> = sy.iter().map(|l| l.iter().map(&mut id_of).collect()).collect();
    let (mut fx, mut fy): (Vec<usize>, Vec<usize>) =
        (sig_x.iter().flatten().copied().collect(), sig_y.iter().flatten().copied().collect());
    fx.sort_unstable();
    fy.sort_unstable();
    if fx != fy {
        return None;
    }
    let counts = x.counts();
    let mut search = Search {
        x,
        y,
        sig_x,
        sig_y,
        phi: counts.iter().map(|&c| vec![None; c]).collect(),
        inv: counts.iter().map(|&c| vec![None; c]).collect(),
        trail: Vec::new(),
    };
    if !search.solve() {
        return None;
    }
    let assign = search
        .phi
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .map(|h| Simplex::generator(GeneratorId::new(d, h.expect("complete assignment"))))
                .collect()
        })
        .collect();
    let map = SimplicialMap::new(Arc::new(x.clone()), Arc::new(y.clone()), assign).ok()?;
    map.is_isomorphism().then_some(map)
}

pub fn isomorphic(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> bool {
    are_isomorphic(x, y).is_some()
}
