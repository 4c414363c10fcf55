//! Arithmetic in the simplex category.
//!
//! An operator `[m] -> [n]` is stored as its value sequence, so equality is
//! structural and composition is a single pass. Face operators are the
//! injective operators, degeneracy operators the surjective ones, and every
//! operator factors uniquely as a degeneracy followed by a face.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An order-preserving map `[m] -> [n]` with `m = values.len() - 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaOperator {
    target_rank: usize,
    values: Vec<usize>,
}

/// Classification of an operator by injectivity and surjectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Face,
    Degeneracy,
    Identity,
    Mixed,
}

impl DeltaOperator {
    pub fn new(values: Vec<usize>, target_rank: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOperator("empty value sequence".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v > target_rank) {
            return Err(Error::InvalidOperator(format!(
                "value {v} exceeds target rank {target_rank}"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOperator(format!(
                "values {values:?} are not weakly monotone"
            )));
        }
        Ok(DeltaOperator {
            target_rank,
            values,
        })
    }

    /// A degeneracy operator given only by its values; the target rank is the
    /// largest value.
    pub fn epi(values: Vec<usize>) -> Result<Self> {
        let target = values.last().copied().unwrap_or(0);
        let op = DeltaOperator::new(values, target)?;
        if !op.is_degeneracy() {
            return Err(Error::NotDegeneracy(op.to_string()));
        }
        Ok(op)
    }

    pub fn identity(n: usize) -> Self {
        DeltaOperator {
            target_rank: n,
            values: (0..=n).collect(),
        }
    }

    /// The elementary face operator `[n-1] -> [n]` skipping `j`.
    pub fn face(n: usize, j: usize) -> Result<Self> {
        if n == 0 || j > n {
            return Err(Error::InvalidOperator(format!("no elementary face d_{j} into [{n}]")));
        }
        let values = (0..n).map(|i| if i < j { i } else { i + 1 }).collect();
        Ok(DeltaOperator {
            target_rank: n,
            values,
        })
    }

    /// The elementary degeneracy operator `[n+1] -> [n]` hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> Result<Self> {
        if j > n {
            return Err(Error::InvalidOperator(format!("no elementary degeneracy s_{j} onto [{n}]")));
        }
        let values = (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect();
        Ok(DeltaOperator {
            target_rank: n,
            values,
        })
    }

    /// The vertex operator `[0] -> [n]` picking `j`.
    pub fn vertex(n: usize, j: usize) -> Result<Self> {
        DeltaOperator::new(vec![j], n)
    }

    /// The unique operator `[n] -> [0]`.
    pub fn to_point(n: usize) -> Self {
        DeltaOperator {
            target_rank: 0,
            values: vec![0; n + 1],
        }
    }

    pub fn source_rank(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_face(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_degeneracy(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target_rank
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source_rank() == self.target_rank && self.is_face()
    }

    pub fn classify(&self) -> OperatorKind {
        match (self.is_face(), self.is_degeneracy()) {
            (true, true) => OperatorKind::Identity,
            (true, false) => OperatorKind::Face,
            (false, true) => OperatorKind::Degeneracy,
            (false, false) => OperatorKind::Mixed,
        }
    }

    /// `self` followed by `second`, i.e. `second ∘ self`.
    pub fn then(&self, second: &DeltaOperator) -> Result<DeltaOperator> {
        compose(self, second)
    }

    /// Sorted distinct values.
    pub fn image(&self) -> Vec<usize> {
        let mut image = self.values.clone();
        image.dedup();
        image
    }

    /// Face operator onto the given strictly increasing subset of `[n]`.
    pub fn face_onto(subset: &[usize], n: usize) -> Result<DeltaOperator> {
        let op = DeltaOperator::new(subset.to_vec(), n)?;
        if !op.is_face() {
            return Err(Error::NotFace(op.to_string()));
        }
        Ok(op)
    }
}

impl fmt::Debug for DeltaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:{:?}", self.source_rank(), self.target_rank, self.values)
    }
}

/// Whitespace-separated values, e.g. `0 0 1`.
impl fmt::Display for DeltaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses the textual form; the result is read as a degeneracy operator onto
/// its largest value.
impl FromStr for DeltaOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidOperator(format!("bad value {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DeltaOperator::epi(values)
    }
}

/// Composite `second ∘ first` of `first: [a] -> [b]` and `second: [b] -> [c]`.
pub fn compose(first: &DeltaOperator, second: &DeltaOperator) -> Result<DeltaOperator> {
    if first.target_rank != second.source_rank() {
        return Err(Error::RankMismatch {
            expected: second.source_rank(),
            found: first.target_rank,
        });
    }
    Ok(DeltaOperator {
        target_rank: second.target_rank,
        values: first.values.iter().map(|&v| second.values[v]).collect(),
    })
}

pub fn classify(op: &DeltaOperator) -> OperatorKind {
    op.classify()
}

/// Unique factorization `op = mu ∘ rho` with `rho` a degeneracy and `mu` a
/// face operator: `mu` is the sorted image, `rho` sends `i` to the position of
/// `op(i)` in that image.
pub fn ez_factorize(op: &DeltaOperator) -> (DeltaOperator, DeltaOperator) {
    let image = op.image();
    let mut rho = Vec::with_capacity(op.values.len());
    let mut pos = 0;
    for &v in &op.values {
        while image[pos] != v {
            pos += 1;
        }
        rho.push(pos);
    }
    let k = image.len() - 1;
    (
        DeltaOperator {
            target_rank: op.target_rank,
            values: image,
        },
        DeltaOperator {
            target_rank: k,
            values: rho,
        },
    )
}

/// The section of a degeneracy operator picking the least preimage of each
/// target point.
pub fn minimal_section(rho: &DeltaOperator) -> Result<DeltaOperator> {
    if !rho.is_degeneracy() {
        return Err(Error::NotDegeneracy(rho.to_string()));
    }
    let mut values = Vec::with_capacity(rho.target_rank + 1);
    for (i, &v) in rho.values.iter().enumerate() {
        if values.len() == v {
            values.push(i);
        }
    }
    Ok(DeltaOperator {
        target_rank: rho.source_rank(),
        values,
    })
}

/// A partition of `{0..rank}` into consecutive blocks, numbered in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalPartition {
    block_of: Vec<usize>,
}

impl IntervalPartition {
    /// Block indices must start at 0, be weakly increasing and never skip.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        if block_of.is_empty() || block_of[0] != 0 {
            return Err(Error::InvalidPartition(format!("{block_of:?} must start with block 0")));
        }
        if block_of.windows(2).any(|w| w[1] < w[0] || w[1] - w[0] > 1) {
            return Err(Error::InvalidPartition(format!(
                "{block_of:?} does not consist of consecutive runs"
            )));
        }
        Ok(IntervalPartition { block_of })
    }

    /// Builds the partition from arbitrary blocks given as sets of points.
    pub fn from_blocks(rank: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; rank + 1];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p > rank || owner[p] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {p} misplaced")));
                }
                owner[p] = b;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("blocks do not cover every point".into()));
        }
        // renumber blocks in order of first appearance; intervals then read 0,0,1,...
        let mut renumber = vec![usize::MAX; blocks.len()];
        let mut next = 0;
        let block_of = owner
            .iter()
            .map(|&b| {
                if renumber[b] == usize::MAX {
                    renumber[b] = next;
                    next += 1;
                }
                renumber[b]
            })
            .collect();
        IntervalPartition::new(block_of)
    }

    pub fn rank(&self) -> usize {
        self.block_of.len() - 1
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.last().unwrap() + 1
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }
}

pub fn partition_to_degeneracy(p: &IntervalPartition) -> DeltaOperator {
    DeltaOperator {
        target_rank: p.num_blocks() - 1,
        values: p.block_of.clone(),
    }
}

pub fn degeneracy_to_partition(rho: &DeltaOperator) -> Result<IntervalPartition> {
    if !rho.is_degeneracy() {
        return Err(Error::NotDegeneracy(rho.to_string()));
    }
    IntervalPartition::new(rho.values.clone())
}

/// All operators `[m] -> [n]` in lexicographic order of their values.
pub fn all_operators(m: usize, n: usize) -> Vec<DeltaOperator> {
    let mut out = Vec::new();
    let mut values = vec![0; m + 1];
    fn rec(pos: usize, lo: usize, n: usize, values: &mut Vec<usize>, out: &mut Vec<DeltaOperator>) {
        if pos == values.len() {
            out.push(DeltaOperator {
                target_rank: n,
                values: values.clone(),
            });
            return;
        }
        for v in lo..=n {
            values[pos] = v;
            rec(pos + 1, v, n, values, out);
        }
    }
    rec(0, 0, n, &mut values, &mut out);
    out
}

/// All degeneracy operators `[m] -> [k]`, lexicographic.
pub fn all_degeneracies(m: usize, k: usize) -> Vec<DeltaOperator> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut values = vec![0; m + 1];
    // values[0] = 0; each later step adds 0 or 1; total increments = k
    fn rec(pos: usize, cur: usize, k: usize, values: &mut Vec<usize>, out: &mut Vec<DeltaOperator>) {
        let m = values.len() - 1;
        if pos > m {
            if cur == k {
                out.push(DeltaOperator {
                    target_rank: k,
                    values: values.clone(),
                });
            }
            return;
        }
        let remaining = m + 1 - pos;
        for step in 0..=1 {
            let next = cur + step;
            if next > k || k - next > remaining - 1 {
                continue;
            }
            values[pos] = next;
            rec(pos + 1, next, k, values, out);
        }
    }
    rec(1, 0, k, &mut values, &mut out);
    out
}

/// All face operators `[k] -> [n]`, lexicographic.
pub fn all_faces(k: usize, n: usize) -> Vec<DeltaOperator> {
    all_operators(k, n).into_iter().filter(|op| op.is_face()).collect()
}
