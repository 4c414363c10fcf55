//! Independent oracles, a corpus of small simplicial sets, and the property
//! suites shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sset_desing::builders::{boundary, boundary_inclusion, collapse_face, delta, delta_map, delta_simplex, sphere, strip};
use sset_desing::colimit::{factor_through_quotient, pushout, quotient, Factorization, SimplicialMap};
use sset_desing::delta::{all_degeneracies, all_operators, compose, ez_factorize, DeltaOperator};
use sset_desing::desing::{cen, cen_default, desingularize, enforcer, factor_through_eta};
use sset_desing::iso::isomorphic;
use sset_desing::sset::{FiniteSimplicialSet, GeneratorId, SSetBuilder, Simplex};
use sset_desing::subdiv::{barratt, sd, sd_map, Poset};

pub type Set = Arc<FiniteSimplicialSet>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One vertex, one edge, one triangle with all three faces equal to the edge.
pub fn dunce_cap() -> FiniteSimplicialSet {
    let mut b = SSetBuilder::new();
    let v = b.add_generator(0, Some("v")).unwrap();
    let a = b.add_generator(1, Some("a")).unwrap();
    let t = b.add_generator(2, Some("t")).unwrap();
    b.set_faces(a, vec![Simplex::generator(v), Simplex::generator(v)]).unwrap();
    b.set_faces(t, vec![Simplex::generator(a); 3]).unwrap();
    b.build_validated().unwrap()
}

/// A triangle whose vertices 0 and 2 are equal but whose edges are distinct.
pub fn pinched_triangle() -> FiniteSimplicialSet {
    let mut b = SSetBuilder::new();
    let p = b.add_generator(0, Some("p")).unwrap();
    let q = b.add_generator(0, Some("q")).unwrap();
    let e01 = b.add_generator(1, Some("e01")).unwrap();
    let e02 = b.add_generator(1, Some("e02")).unwrap();
    let e12 = b.add_generator(1, Some("e12")).unwrap();
    let t = b.add_generator(2, Some("t")).unwrap();
    let g = Simplex::generator;
    b.set_faces(e01, vec![g(q), g(p)]).unwrap();
    b.set_faces(e02, vec![g(p), g(p)]).unwrap();
    b.set_faces(e12, vec![g(p), g(q)]).unwrap();
    b.set_faces(t, vec![g(e12), g(e02), g(e01)]).unwrap();
    b.build_validated().unwrap()
}

/// A triangle with its edge `{1,2}` degenerate at a vertex.
pub fn triangle_with_degenerate_edge() -> FiniteSimplicialSet {
    let mut b = SSetBuilder::new();
    let p = b.add_generator(0, Some("p")).unwrap();
    let q = b.add_generator(0, Some("q")).unwrap();
    let e = b.add_generator(1, Some("e")).unwrap();
    let f = b.add_generator(1, Some("f")).unwrap();
    let t = b.add_generator(2, Some("t")).unwrap();
    let g = Simplex::generator;
    let qq = Simplex::new(q, DeltaOperator::to_point(1)).unwrap();
    b.set_faces(e, vec![g(q), g(p)]).unwrap();
    b.set_faces(f, vec![g(q), g(p)]).unwrap();
    b.set_faces(t, vec![qq, g(f), g(e)]).unwrap();
    b.build_validated().unwrap()
}

pub fn corpus() -> Vec<(String, Set)> {
    static CORPUS: OnceLock<Vec<(String, Set)>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus).clone()
}

fn build_corpus() -> Vec<(String, Set)> {
    let mut out: Vec<(String, FiniteSimplicialSet)> = Vec::new();
    for n in 0..=3 {
        out.push((format!("delta({n})"), delta(n)));
    }
    for n in 1..=3 {
        out.push((format!("boundary({n})"), boundary(n)));
    }
    for n in 0..=3 {
        out.push((format!("sphere({n})"), sphere(n)));
    }
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        out.push((format!("collapse_face({n},{k})"), collapse_face(n, k).unwrap()));
    }
    for m in 1..=3 {
        out.push((format!("strip({m})"), strip(m).unwrap()));
    }
    out.push(("dunce_cap".into(), dunce_cap()));
    out.push(("pinched_triangle".into(), pinched_triangle()));
    out.push(("degenerate_edge_triangle".into(), triangle_with_degenerate_edge()));
    out.push(("sd(sphere(1))".into(), (*sd(Arc::new(sphere(1))).unwrap().set).clone()));
    out.push(("sd(sphere(2))".into(), (*sd(Arc::new(sphere(2))).unwrap().set).clone()));
    out.push(("sd(dunce_cap)".into(), (*sd(Arc::new(dunce_cap())).unwrap().set).clone()));
    out.push(("barratt(sphere(2))".into(), barratt(&sphere(2)).unwrap()));
    out.push((
        "disjoint(delta(1),sphere(2))".into(),
        delta(1).disjoint_union(&sphere(2)).unwrap(),
    ));
    out.into_iter().map(|(n, x)| (n, Arc::new(x))).collect()
}

/// Corpus members with at most `max` generators.
pub fn small_corpus(max: usize) -> Vec<(String, Set)> {
    corpus().into_iter().filter(|(_, x)| x.total_generators() <= max).collect()
}

// ---------------------------------------------------------------------------
// act oracle: elementary operators one at a time via the simplicial identities

/// `x·δ_i`, using only stored faces and the identity `σ δ_i ∈ {id, δ σ}`.
pub fn face_oracle(x: &FiniteSimplicialSet, s: &Simplex, i: usize) -> Simplex {
    let rho = s.deg_part();
    let n = s.degree();
    let composite: Vec<usize> = (0..n).map(|t| rho.apply(if t < i { t } else { t + 1 })).collect();
    let k = s.gen().degree;
    let mut image: Vec<usize> = composite.clone();
    image.dedup();
    if image.len() == k + 1 {
        return Simplex::new(s.gen(), DeltaOperator::new(composite, k).unwrap()).unwrap();
    }
    // exactly one value j is missed: ρδ_i = δ_j ρ'
    let j = (0..=k).find(|v| !composite.contains(v)).unwrap();
    let lowered: Vec<usize> = composite.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
    let rho2 = DeltaOperator::new(lowered, k - 1).unwrap();
    let f = x.face(s.gen(), j).unwrap().clone();
    f.degenerate(&rho2).unwrap()
}

pub fn degeneracy_oracle(s: &Simplex, i: usize) -> Simplex {
    s.degenerate(&DeltaOperator::degeneracy(s.degree(), i).unwrap()).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub enum Elementary {
    Face(usize),
    Degeneracy(usize),
}

/// A random word of elementary operators applicable to a degree-`start`
/// simplex, staying within degrees `0..=max_degree`, with the operator it
/// composes to.
pub fn random_word(rng: &mut impl Rng, start: usize, len: usize, max_degree: usize) -> (Vec<Elementary>, DeltaOperator) {
    let mut word = Vec::new();
    let mut degree = start;
    let mut op = DeltaOperator::identity(start);
    for _ in 0..len {
        let can_face = degree > 0;
        let can_degen = degree < max_degree;
        let face = match (can_face, can_degen) {
            (true, true) => rng.gen_bool(0.5),
            (f, _) => f,
        };
        if !can_face && !can_degen {
            break;
        }
        if face {
            let i = rng.gen_range(0..=degree);
            let d = DeltaOperator::face(degree, i).unwrap();
            op = compose(&d, &op).unwrap();
            word.push(Elementary::Face(i));
            degree -= 1;
        } else {
            let i = rng.gen_range(0..=degree);
            let s = DeltaOperator::degeneracy(degree, i).unwrap();
            op = compose(&s, &op).unwrap();
            word.push(Elementary::Degeneracy(i));
            degree += 1;
        }
    }
    (word, op)
}

pub fn apply_word(x: &FiniteSimplicialSet, s: &Simplex, word: &[Elementary]) -> Simplex {
    word.iter().fold(s.clone(), |acc, e| match *e {
        Elementary::Face(i) => face_oracle(x, &acc, i),
        Elementary::Degeneracy(i) => degeneracy_oracle(&acc, i),
    })
}

// ---------------------------------------------------------------------------
// brute-force congruence: close under every operator of rank <= bound

pub fn brute_congruence(x: &FiniteSimplicialSet, seeds: &[(Simplex, Simplex)], bound: usize) -> Vec<Vec<usize>> {
    let simplices: Vec<Vec<Simplex>> = (0..=bound).map(|d| x.simplices(d)).collect();
    let index: Vec<HashMap<Simplex, usize>> = simplices
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut label: Vec<Vec<usize>> = simplices.iter().map(|l| (0..l.len()).collect()).collect();
    let merge = |label: &mut Vec<Vec<usize>>, d: usize, a: usize, b: usize| -> bool {
        let (la, lb) = (label[d][a], label[d][b]);
        if la == lb {
            return false;
        }
        for l in label[d].iter_mut() {
            if *l == lb {
                *l = la;
            }
        }
        true
    };
    for (a, b) in seeds {
        let d = a.degree();
        merge(&mut label, d, index[d][a], index[d][b]);
    }
    let ops: Vec<Vec<Vec<DeltaOperator>>> = (0..=bound)
        .map(|m| (0..=bound).map(|p| all_operators(p, m)).collect())
        .collect();
    loop {
        let mut changed = false;
        for m in 0..=bound {
            for a in 0..simplices[m].len() {
                for b in a + 1..simplices[m].len() {
                    if label[m][a] != label[m][b] {
                        continue;
                    }
                    for p in 0..=bound {
                        for alpha in &ops[m][p] {
                            let xa = x.act(&simplices[m][a], alpha).unwrap();
                            let xb = x.act(&simplices[m][b], alpha).unwrap();
                            changed |= merge(&mut label, p, index[p][&xa], index[p][&xb]);
                        }
                    }
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// All pairs `(g·α, g·β)` with `ρ_g α = ρ_g β`, for ranks up to `dim X`.
pub fn kernel_pair_seeds(x: &FiniteSimplicialSet, along: &[GeneratorId]) -> Vec<(Simplex, Simplex)> {
    let mut seeds = Vec::new();
    for &g in along {
        let rho = enforcer(x, g).unwrap();
        let gx = Simplex::generator(g);
        for p in 0..=x.dimension() {
            let ops = all_operators(p, g.degree);
            for a in &ops {
                for b in &ops {
                    if a < b && compose(a, &rho).unwrap() == compose(b, &rho).unwrap() {
                        seeds.push((x.act(&gx, a).unwrap(), x.act(&gx, b).unwrap()));
                    }
                }
            }
        }
    }
    seeds
}

// ---------------------------------------------------------------------------
// brute-force isomorphism: every bijection in every degree

pub fn brute_iso(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> bool {
    if x.counts() != y.counts() {
        return false;
    }
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    fn go(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet, d: usize, chosen: &mut Vec<Vec<usize>>) -> bool {
        if d == x.counts().len() {
            return true;
        }
        for perm in permutations(x.count(d)) {
            let ok = x.generators_of_degree(d).all(|g| {
                d == 0
                    || x.faces(g).unwrap().iter().zip(y.faces(GeneratorId::new(d, perm[g.index])).unwrap()).all(
                        |(a, b)| a.deg_part() == b.deg_part() && chosen[a.gen().degree][a.gen().index] == b.gen().index,
                    )
            });
            if ok {
                chosen.push(perm);
                if go(x, y, d + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(x, y, 0, &mut Vec::new())
}

/// Same set with generators shuffled within each degree.
pub fn shuffled(x: &FiniteSimplicialSet, rng: &mut impl Rng) -> FiniteSimplicialSet {
    let perms: Vec<Vec<usize>> = x
        .counts()
        .iter()
        .map(|&c| {
            let mut p: Vec<usize> = (0..c).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    // perms[d][old] = new
    let mut inverse: Vec<Vec<usize>> = perms.iter().map(|p| vec![0; p.len()]).collect();
    for (d, p) in perms.iter().enumerate() {
        for (old, &new) in p.iter().enumerate() {
            inverse[d][new] = old;
        }
    }
    let mut b = SSetBuilder::new();
    for (d, inv) in inverse.iter().enumerate() {
        for &old in inv {
            b.add_generator(d, Some(&format!("s{}", x.name(GeneratorId::new(d, old))))).unwrap();
        }
    }
    for (d, inv) in inverse.iter().enumerate().skip(1) {
        for (new, &old) in inv.iter().enumerate() {
            let faces = x
                .faces(GeneratorId::new(d, old))
                .unwrap()
                .iter()
                .map(|f| Simplex::new(GeneratorId::new(f.gen().degree, perms[f.gen().degree][f.gen().index]), f.deg_part().clone()).unwrap())
                .collect();
            b.set_faces(GeneratorId::new(d, new), faces).unwrap();
        }
    }
    b.build_validated().unwrap()
}

// ---------------------------------------------------------------------------
// maps into nerves, sampled through vertex maps monotone along edges

/// A map `X → Δ[n]` from a random vertex labelling that is monotone along
/// every edge, if one is found within a few attempts.
pub fn random_map_to_delta(rng: &mut impl Rng, x: &Set, n: usize) -> Option<SimplicialMap> {
    let target = Arc::new(delta(n));
    for _ in 0..200 {
        let labels: Vec<usize> = (0..x.count(0)).map(|_| rng.gen_range(0..=n)).collect();
        let monotone = x.generators_of_degree(1).all(|e| {
            let f = x.faces(e).unwrap();
            labels[f[1].gen().index] <= labels[f[0].gen().index]
        });
        if !monotone {
            continue;
        }
        let map = SimplicialMap::from_fn(x.clone(), target.clone(), |g| {
            let vs = x.vertices(&Simplex::generator(g))?;
            let values: Vec<usize> = vs.iter().map(|v| labels[v.gen().index]).collect();
            delta_simplex(&DeltaOperator::new(values, n)?)
        });
        if let Ok(m) = map {
            return Some(m);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// the suspension of a 12-gon, by hand

/// Two cone points below a zigzag of six edges `e_j` and six triangles
/// `t_j`, with `e_j, e_{j+1} < t_j`.
pub fn suspended_twelve_gon_poset() -> Poset {
    let mut names = vec!["c0".to_string(), "c1".to_string()];
    names.extend((0..6).map(|j| format!("e{j}")));
    names.extend((0..6).map(|j| format!("t{j}")));
    let degrees: Vec<usize> = (0..14).map(|i| if i < 2 { 0 } else if i < 8 { 1 } else { 2 }).collect();
    let mut rel = Vec::new();
    for c in 0..2 {
        for z in 2..14 {
            rel.push((c, z));
        }
    }
    for j in 0..6 {
        rel.push((2 + j, 8 + j));
        rel.push((2 + (j + 1) % 6, 8 + j));
    }
    Poset::new(names, degrees, &rel).unwrap()
}

/// Number of strict chains of each length, by direct recursion.
pub fn chain_counts(p: &Poset) -> Vec<usize> {
    fn extend(p: &Poset, last: usize, len: usize, counts: &mut Vec<usize>) {
        if counts.len() <= len {
            counts.resize(len + 1, 0);
        }
        counts[len] += 1;
        for b in 0..p.len() {
            if p.less(last, b) {
                extend(p, b, len + 1, counts);
            }
        }
    }
    let mut counts = Vec::new();
    for a in 0..p.len() {
        extend(p, a, 0, &mut counts);
    }
    counts
}

// ---------------------------------------------------------------------------
// property suites; each returns the number of checks made

pub type Suite = Result<usize, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// EZ factorization is unique, and the action is an associative right action
/// agreeing with elementary-word evaluation.
pub fn suite_ez_and_act() -> Suite {
    let mut checks = 0;
    for m in 0..=6 {
        for n in 0..=6 {
            for alpha in all_operators(m, n) {
                let (mu, rho) = ez_factorize(&alpha);
                ensure(compose(&rho, &mu).unwrap() == alpha && mu.is_face() && rho.is_degeneracy(), || {
                    format!("bad factorization of {alpha:?}")
                })?;
                // every epi the operator factors through with an injective rest
                let mut found = 0;
                for k in 0..=m.min(n) {
                    for r in all_degeneracies(m, k) {
                        let mut induced = vec![None; k + 1];
                        let ok = (0..=m).all(|i| {
                            let slot = &mut induced[r.apply(i)];
                            match slot {
                                Some(v) => *v == alpha.apply(i),
                                None => {
                                    *slot = Some(alpha.apply(i));
                                    true
                                }
                            }
                        });
                        let values: Vec<usize> = induced.iter().flatten().copied().collect();
                        if ok && values.len() == k + 1 && values.windows(2).all(|w| w[0] < w[1]) {
                            found += 1;
                            ensure(r == rho, || format!("second factorization of {alpha:?}"))?;
                        }
                    }
                }
                ensure(found == 1, || format!("{found} factorizations of {alpha:?}"))?;
                checks += 1;
            }
        }
    }
    let mut r = rng(11);
    for (name, x) in corpus() {
        let top = x.dimension() + 1;
        for d in 0..=top {
            for s in x.simplices(d) {
                ensure(x.act(&s, &DeltaOperator::identity(d)).unwrap() == s, || format!("{name}: act by id"))?;
                for _ in 0..3 {
                    let len = r.gen_range(1..6);
                    let (word, op) = random_word(&mut r, d, len, top + 1);
                    let direct = x.act(&s, &op).unwrap();
                    ensure(direct == apply_word(&x, &s, &word), || {
                        format!("{name}: act({s:?}, {op:?}) disagrees with {word:?}")
                    })?;
                    let (word2, op2) = random_word(&mut r, op.source_rank(), 3, top + 1);
                    let twice = x.act(&x.act(&s, &op).unwrap(), &op2).unwrap();
                    ensure(twice == x.act(&s, &compose(&op2, &op).unwrap()).unwrap(), || {
                        format!("{name}: action not associative at {s:?}")
                    })?;
                    ensure(twice == apply_word(&x, &direct, &word2), || format!("{name}: word after act"))?;
                    checks += 3;
                }
            }
        }
    }
    Ok(checks)
}

/// Elementary closure agrees with closure under all operators.
pub fn suite_quotient_closure() -> Suite {
    let mut r = rng(12);
    let mut checks = 0;
    for (name, x) in small_corpus(12) {
        let dim = x.dimension();
        for trial in 0..4 {
            let seeds: Vec<(Simplex, Simplex)> = (0..=trial % 3)
                .filter_map(|_| {
                    let d = r.gen_range(0..=dim);
                    let l = x.simplices(d);
                    (!l.is_empty()).then(|| (l.choose(&mut r).unwrap().clone(), l.choose(&mut r).unwrap().clone()))
                })
                .collect();
            let q = quotient(x.clone(), &seeds).map_err(|e| format!("{name}: {e}"))?;
            let bound = q.congruence.degree_bound();
            let labels = brute_congruence(&x, &seeds, bound);
            for d in 0..=bound {
                let l = x.simplices(d);
                for a in 0..l.len() {
                    for b in 0..l.len() {
                        let same = q.congruence.same_class(&l[a], &l[b]).unwrap();
                        ensure(same == (labels[d][a] == labels[d][b]), || {
                            format!("{name}: closure disagrees on {:?} ~ {:?}", l[a], l[b])
                        })?;
                        checks += 1;
                    }
                }
                ensure(q.map.is_degreewise_surjective(), || format!("{name}: quotient map not surjective"))?;
            }
            ensure(q.quotient.total_generators() <= x.total_generators(), || format!("{name}: quotient grew"))?;
        }
    }
    Ok(checks)
}

/// The single-seed enforced collapse equals the quotient by all kernel pairs.
pub fn suite_cen_kernel_pair() -> Suite {
    let mut checks = 0;
    for (name, x) in small_corpus(12) {
        let along = x.non_embedded();
        let single = cen(x.clone(), &along).map_err(|e| format!("{name}: {e}"))?;
        let seeds = kernel_pair_seeds(&x, &along);
        let full = quotient(x.clone(), &seeds).map_err(|e| format!("{name}: {e}"))?;
        for d in 0..=x.dimension() {
            let l = x.simplices(d);
            for a in &l {
                for b in &l {
                    ensure(
                        single.congruence.same_class(a, b).unwrap() == full.congruence.same_class(a, b).unwrap(),
                        || format!("{name}: single seed and kernel pairs disagree on {a:?}, {b:?}"),
                    )?;
                    checks += 1;
                }
            }
        }
        ensure(*single.quotient == *full.quotient, || format!("{name}: quotient presentations differ"))?;
    }
    Ok(checks)
}

/// Interval blocks, degenerate parts of the unit, degeneration of
/// non-embedded generators, strict progress and idempotence.
pub fn suite_desing_invariants() -> Suite {
    let mut checks = 0;
    for (name, x) in corpus() {
        for g in x.generators() {
            let rho = enforcer(&x, g).unwrap();
            // blocks of a degeneracy are intervals by monotonicity; check the
            // finest-partition property directly
            let vs = x.vertices(&Simplex::generator(g)).unwrap();
            for i in 0..vs.len() {
                for j in i..vs.len() {
                    if vs[i] == vs[j] {
                        ensure(rho.apply(i) == rho.apply(j), || format!("{name}: enforcer splits equal vertices"))?;
                    }
                }
            }
            for t in 0..g.degree {
                if rho.apply(t) == rho.apply(t + 1) {
                    let covered = (0..=t).any(|i| (t + 1..=g.degree).any(|j| vs[i] == vs[j]));
                    ensure(covered, || format!("{name}: enforcer of {g:?} glues {t} and {} needlessly", t + 1))?;
                }
            }
            ensure(rho.is_identity() == x.is_embedded(g).unwrap(), || format!("{name}: enforcer vs embedded"))?;
            checks += 1;
        }
        let trace = desingularize(x.clone()).map_err(|e| format!("{name}: {e}"))?;
        ensure(trace.iterations() <= 1 + x.total_generators(), || format!("{name}: too many iterations"))?;
        for g in x.generators() {
            let rho = enforcer(&x, g).unwrap();
            let image = trace.eta.image(g).unwrap();
            let dp = image.deg_part();
            let factors = (0..g.degree).all(|t| rho.apply(t) != rho.apply(t + 1) || dp.apply(t) == dp.apply(t + 1));
            ensure(factors, || format!("{name}: η({g:?}) does not factor through its enforcer"))?;
            checks += 1;
        }
        let mut current = x.clone();
        let mut composite = SimplicialMap::identity(x.clone());
        for stage in &trace.stages {
            for g in current.non_embedded() {
                ensure(stage.map.image(g).unwrap().is_degenerate(), || {
                    format!("{name}: non-embedded {g:?} survives a collapse")
                })?;
            }
            ensure(stage.quotient.total_generators() < current.total_generators(), || {
                format!("{name}: no strict progress")
            })?;
            ensure(stage.map.is_degreewise_surjective(), || format!("{name}: stage map not surjective"))?;
            composite = composite.then(&stage.map).unwrap();
            current = stage.quotient.clone();
            checks += 1;
        }
        ensure(composite == trace.eta, || format!("{name}: unit is not the composite of the stages"))?;
        ensure(trace.quotient().is_nonsingular(), || format!("{name}: result singular"))?;
        let again = desingularize(trace.quotient().clone()).unwrap();
        ensure(again.iterations() == 0, || format!("{name}: D not idempotent"))?;
        checks += 1;
    }
    Ok(checks)
}

/// Maps into non-singular targets factor uniquely through the unit.
pub fn suite_lemma_2_1(samples: usize) -> Suite {
    let mut r = rng(13);
    let members = corpus();
    let mut done = 0;
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > samples * 20 {
            return Err(format!("only {done} maps sampled"));
        }
        let (name, x) = members.choose(&mut r).unwrap();
        if x.is_empty() {
            continue;
        }
        let n = r.gen_range(0..=3);
        let Some(k) = random_map_to_delta(&mut r, x, n) else {
            continue;
        };
        let trace = desingularize(x.clone()).unwrap();
        let h = factor_through_eta(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(trace.eta.then(&h).unwrap() == k, || format!("{name}: h∘η ≠ k"))?;
        // a second factorization built from the last preimage of each generator
        let dx = trace.quotient().clone();
        let mut last: HashMap<GeneratorId, GeneratorId> = HashMap::new();
        for (g, y) in trace.eta.assignments() {
            if !y.is_degenerate() {
                last.insert(y.gen(), g);
            }
        }
        let other = SimplicialMap::from_fn(dx.clone(), k.target().clone(), |g| Ok(k.image(last[&g])?.clone()))
            .map_err(|e| format!("{name}: second factorization invalid: {e}"))?;
        ensure(other == h, || format!("{name}: factorization not unique"))?;
        if k.is_degreewise_surjective() {
            ensure(h.is_degreewise_surjective(), || format!("{name}: h not surjective"))?;
        }
        done += 1;
    }
    Ok(done)
}

/// `Sd` by flags agrees with `Sd` of the defining pushout.
pub fn suite_sd_pushout() -> Suite {
    let mut checks = 0;
    let mut cases: Vec<(String, SimplicialMap, SimplicialMap)> = Vec::new();
    for n in 0..=3 {
        let inc = boundary_inclusion(n);
        let collapse = SimplicialMap::to_point(inc.source().clone());
        cases.push((format!("sphere({n})"), inc, collapse));
    }
    for n in 1..=4 {
        for k in 0..=n {
            let mu = DeltaOperator::face_onto(&(0..=k).collect::<Vec<_>>(), n).unwrap();
            let inc = delta_map(&mu).unwrap();
            let collapse = SimplicialMap::to_point(inc.source().clone());
            cases.push((format!("collapse_face({n},{k})"), inc, collapse));
        }
    }
    for (name, f, g) in cases {
        let whole = pushout(&f, &g).unwrap();
        let direct = sd(whole.object.clone()).unwrap();
        let (sa, sx, sy) = (
            sd(f.source().clone()).unwrap(),
            sd(f.target().clone()).unwrap(),
            sd(g.target().clone()).unwrap(),
        );
        let sf = sd_map(&f, &sa, &sx).unwrap();
        let sg = sd_map(&g, &sa, &sy).unwrap();
        let glued = pushout(&sf, &sg).unwrap();
        ensure(isomorphic(&direct.set, &glued.object), || format!("{name}: Sd does not preserve the pushout"))?;
        ensure(direct.set.dimension() == whole.object.dimension(), || format!("{name}: Sd changed dimension"))?;
        checks += 1;
    }
    Ok(checks)
}

/// Pushout cocones into simplices factor through the pushout exactly when
/// they agree on the common source.
pub fn suite_pushout_universal(samples: usize) -> Suite {
    let mut r = rng(14);
    let mut done = 0;
    let cases: Vec<(SimplicialMap, SimplicialMap)> = vec![
        (boundary_inclusion(2), SimplicialMap::to_point(Arc::new(boundary(2)))),
        (boundary_inclusion(1), boundary_inclusion(1)),
        (delta_map(&DeltaOperator::vertex(1, 1).unwrap()).unwrap(), delta_map(&DeltaOperator::vertex(2, 0).unwrap()).unwrap()),
        (
            SimplicialMap::identity(Arc::new(delta(2))),
            SimplicialMap::identity(Arc::new(delta(2))),
        ),
    ];
    let mut attempts = 0;
    while done < samples {
        attempts += 1;
        if attempts > samples * 50 {
            return Err(format!("only {done} cocones sampled"));
        }
        let (f, g) = cases.choose(&mut r).unwrap();
        let p = pushout(f, g).unwrap();
        let Some(u) = random_map_to_delta(&mut r, f.target(), 2) else { continue };
        let Some(v) = random_map_to_delta(&mut r, g.target(), 2) else { continue };
        let v = SimplicialMap::new(v.source().clone(), u.target().clone(), v.assignment_table().to_vec()).unwrap();
        let agrees = f.then(&u).unwrap() == g.then(&v).unwrap();
        let coproduct = sset_desing::colimit::Coproduct::new(&[f.target().clone(), g.target().clone()]).unwrap();
        let copaired = coproduct.copair(&[u.clone(), v.clone()]).unwrap();
        match factor_through_quotient(&p.quotient.map, &copaired).unwrap() {
            Factorization::Factors(h) => {
                ensure(agrees, || "a non-cocone factored".into())?;
                ensure(p.in_left.then(&h).unwrap() == u && p.in_right.then(&h).unwrap() == v, || {
                    "mediating map does not restrict to the legs".into()
                })?;
            }
            Factorization::Witness { first, second } => {
                ensure(!agrees, || "a cocone failed to factor".into())?;
                ensure(
                    p.quotient.map.apply(&first).unwrap() == p.quotient.map.apply(&second).unwrap()
                        && copaired.apply(&first).unwrap() != copaired.apply(&second).unwrap(),
                    || "bad witness".into(),
                )?;
            }
        }
        done += 1;
    }
    Ok(done)
}

pub fn cen_of(x: &Set) -> Set {
    cen_default(x.clone()).unwrap().quotient
}
