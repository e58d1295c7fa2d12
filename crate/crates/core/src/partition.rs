//! Integer partitions and the rectangles they live in.
//!
//! A [`Partition`] is always stored normalized: weakly decreasing, no zero
//! parts. The derived ordering is graded-lexicographic (size first, then the
//! part sequence compared lexicographically), which is the canonical order
//! used by every report and enumeration in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition {partition} does not fit in a {rows}x{cols} rectangle")]
    DoesNotFit {
        partition: Partition,
        rows: usize,
        cols: usize,
    },
    #[error("malformed partition text {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from arbitrary nonnegative parts; they are sorted
    /// into weakly decreasing order and zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The rectangular partition `(cols^rows)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            return Self::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_part(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first_part();
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Young-diagram containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn fits(&self, rect: Rectangle) -> bool {
        rect.contains(self)
    }

    /// The 180°-rotated complement inside `rect`.
    pub fn complement(&self, rect: Rectangle) -> Result<Partition, PartitionError> {
        if !rect.contains(self) {
            return Err(PartitionError::DoesNotFit {
                partition: self.clone(),
                rows: rect.rows,
                cols: rect.cols,
            });
        }
        let parts = (0..rect.rows)
            .map(|i| rect.cols - self.part(rect.rows - 1 - i))
            .collect();
        Ok(Partition::new(parts))
    }

    /// Multiplicity of the part value `v` (v ≥ 1).
    pub fn multiplicity(&self, v: usize) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts)
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `(3,1)`, `()` and tolerates inner whitespace. Parts must be
    /// positive and weakly decreasing as written.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(err());
        }
        Ok(Partition { parts })
    }
}

/// A `rows × cols` box. Degenerate boxes (either side zero) contain only ∅.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    pub rows: usize,
    pub cols: usize,
}

impl Rectangle {
    pub const fn new(rows: usize, cols: usize) -> Self {
        Rectangle { rows, cols }
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.len() <= self.rows && p.first_part() <= self.cols
    }

    pub fn full(&self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }

    pub fn transpose(&self) -> Rectangle {
        Rectangle::new(self.cols, self.rows)
    }

    /// All partitions inside the box in graded-lexicographic order.
    pub fn partitions(&self) -> Vec<Partition> {
        partitions_in_rectangle(*self)
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

pub fn complement(p: &Partition, rect: Rectangle) -> Result<Partition, PartitionError> {
    p.complement(rect)
}

pub fn fits(p: &Partition, rect: Rectangle) -> bool {
    rect.contains(p)
}

/// Every partition with at most `rect.rows` parts, each at most `rect.cols`,
/// ordered by size and then lexicographically.
pub fn partitions_in_rectangle(rect: Rectangle) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(rect.rows);
    collect_bounded(rect.rows, rect.cols, &mut current, &mut out);
    out.sort();
    out
}

fn collect_bounded(rows_left: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(Partition { parts: current.clone() });
    if rows_left == 0 {
        return;
    }
    for p in 1..=max_part {
        current.push(p);
        collect_bounded(rows_left - 1, p, current, out);
        current.pop();
    }
}

/// Partitions ν with `inner ⊆ ν ⊆ outer` and `|ν| = size`.
pub fn partitions_between(inner: &Partition, outer: &Partition, size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if !inner.is_contained_in(outer) || size < inner.size() || size > outer.size() {
        return out;
    }
    let rows = outer.len();
    let mut current = vec![0; rows];
    between_rec(inner, outer, 0, size - inner.size(), usize::MAX, &mut current, &mut out);
    out
}

fn between_rec(
    inner: &Partition,
    outer: &Partition,
    row: usize,
    remaining: usize,
    cap: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if row == current.len() {
        if remaining == 0 {
            out.push(Partition::new(current.clone()));
        }
        return;
    }
    let lo = inner.part(row);
    let hi = outer.part(row).min(cap);
    if lo > hi {
        return;
    }
    for v in lo..=hi.min(remaining + lo) {
        let rest = remaining - (v - lo);
        let below: usize = (row + 1..current.len())
            .map(|r| outer.part(r).min(v).saturating_sub(inner.part(r)))
            .sum();
        if rest > below {
            continue;
        }
        current[row] = v;
        between_rec(inner, outer, row + 1, rest, v, current, out);
    }
    current[row] = 0;
}
