//! Quivers, dimension vectors, and representations over finite fields.
//!
//! The Hom/Ext complex of two representations `V`, `W` is the map
//! `d^V_W : ⊕_x Hom(V(x), W(x)) → ⊕_a Hom(V(ta), W(ha))`,
//! `{φ(x)} ↦ {W(a)φ(ta) − φ(ha)V(a)}`. Its matrix uses a fixed basis:
//! the domain is ordered by vertex index and, inside `Hom(V(x), W(x))`
//! (γ(x) × β(x) matrices), by column-major matrix units `E_{r,c}` at
//! position `c·γ(x) + r`; the codomain is ordered by arrow index and then
//! column-major inside each `Hom(V(ta), W(ha))`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("arrow {arrow} ({tail}->{head}) refers to a vertex outside 0..{nvertices}")]
    VertexOutOfRange {
        arrow: usize,
        tail: usize,
        head: usize,
        nvertices: usize,
    },
    #[error("arrow {0} is a loop")]
    Loop(usize),
    #[error("quiver has an oriented cycle through vertex {0}")]
    Cycle(usize),
    #[error("vector has {got} entries but the quiver has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("representations are over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("representation has {got} matrices but the quiver has {expected} arrows")]
    ArrowCountMismatch { expected: usize, got: usize },
    #[error("matrix for arrow {arrow} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    MatrixShape {
        arrow: usize,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("d^V_W is {rows}x{cols}; the Euler pairing <beta,gamma> = {pairing} must vanish for c^V")]
    NonSquare { rows: usize, cols: usize, pairing: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver without oriented cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    nvertices: usize,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

impl Quiver {
    pub fn new(nvertices: usize, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, QuiverError> {
        let arrows: Vec<Arrow> = arrows.into_iter().map(|(tail, head)| Arrow { tail, head }).collect();
        for (i, a) in arrows.iter().enumerate() {
            if a.tail >= nvertices || a.head >= nvertices {
                return Err(QuiverError::VertexOutOfRange {
                    arrow: i,
                    tail: a.tail,
                    head: a.head,
                    nvertices,
                });
            }
            if a.tail == a.head {
                return Err(QuiverError::Loop(i));
            }
        }
        // Kahn's algorithm, smallest available vertex first.
        let mut indegree = vec![0usize; nvertices];
        for a in &arrows {
            indegree[a.head] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..nvertices).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(nvertices);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for a in arrows.iter().filter(|a| a.tail == v) {
                indegree[a.head] -= 1;
                if indegree[a.head] == 0 {
                    ready.insert(a.head);
                }
            }
        }
        if topo.len() < nvertices {
            let stuck = (0..nvertices).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(QuiverError::Cycle(stuck));
        }
        Ok(Quiver {
            nvertices,
            arrows,
            topo,
        })
    }

    /// θ(m): two vertices, `m` arrows 0 → 1.
    pub fn kronecker(m: usize) -> Self {
        Self::new(2, std::iter::repeat_n((0, 1), m)).expect("Kronecker quivers are acyclic")
    }

    /// Linearly oriented A_n: 0 → 1 → ⋯ → n−1.
    pub fn linear(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("A_n is acyclic")
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn narrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        self.arrows[i]
    }

    /// Vertices such that every arrow goes from an earlier to a later one.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arrows_out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].tail == x)
    }

    pub fn arrows_into(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].head == x)
    }

    pub fn check_len(&self, len: usize) -> Result<(), QuiverError> {
        if len != self.nvertices {
            return Err(QuiverError::SizeMismatch {
                expected: self.nvertices,
                got: len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Quiver {
    /// Text form: `vertices N` followed by one `arrow T H` line per arrow.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.nvertices)?;
        for a in &self.arrows {
            writeln!(f, "arrow {} {}", a.tail, a.head)?;
        }
        Ok(())
    }
}

/// Nonnegative integer vector indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entrywise `self − other`, `None` if any entry would be negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn signed(&self) -> Weight {
        Weight(self.0.iter().map(|&d| d as i64).collect())
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl<const N: usize> From<[usize; N]> for DimVector {
    fn from(v: [usize; N]) -> Self {
        DimVector(v.to_vec())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer vector indexed by vertices that may go negative (characters σ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Weight(pub Vec<i64>);

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `⟨a, b⟩ = Σ_x a(x)b(x) − Σ_arrows a(ta)b(ha)`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64, QuiverError> {
    q.check_len(a.len())?;
    q.check_len(b.len())?;
    Ok(euler_form_unchecked(q, a, b))
}

pub(crate) fn euler_form_unchecked(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    let vertex: i64 = a.0.iter().zip(&b.0).map(|(&x, &y)| (x * y) as i64).sum();
    let arrow: i64 = q.arrows().iter().map(|ar| (a[ar.tail] * b[ar.head]) as i64).sum();
    vertex - arrow
}

/// A representation of a quiver over a finite field: one
/// `dim(ha) × dim(ta)` matrix per arrow.
#[derive(Clone, Debug)]
pub struct FFRep {
    field: FiniteField,
    dim: DimVector,
    mats: Vec<Matrix>,
}

impl FFRep {
    pub fn new(q: &Quiver, field: FiniteField, dim: DimVector, mats: Vec<Matrix>) -> Result<Self, QuiverError> {
        q.check_len(dim.len())?;
        if mats.len() != q.narrows() {
            return Err(QuiverError::ArrowCountMismatch {
                expected: q.narrows(),
                got: mats.len(),
            });
        }
        for (i, (a, m)) in q.arrows().iter().zip(&mats).enumerate() {
            if m.shape() != (dim[a.head], dim[a.tail]) {
                return Err(QuiverError::MatrixShape {
                    arrow: i,
                    rows: dim[a.head],
                    cols: dim[a.tail],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(FFRep { field, dim, mats })
    }

    /// The representation with every map zero.
    pub fn zero(q: &Quiver, field: FiniteField, dim: DimVector) -> Result<Self, QuiverError> {
        q.check_len(dim.len())?;
        let mats = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dim[a.head], dim[a.tail]))
            .collect();
        Ok(FFRep { field, dim, mats })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    /// The same representation with entries viewed in an extension field of
    /// the (prime) field it is defined over.
    pub fn extend_to(&self, ext: &FiniteField) -> FFRep {
        let base = &self.field;
        FFRep {
            field: ext.clone(),
            dim: self.dim.clone(),
            mats: self.mats.iter().map(|m| m.map(|e| ext.embed_prime(base, e))).collect(),
        }
    }
}

fn check_pair(q: &Quiver, v: &FFRep, w: &FFRep) -> Result<(), QuiverError> {
    if v.field != w.field {
        return Err(QuiverError::FieldMismatch(v.field.to_string(), w.field.to_string()));
    }
    for r in [v, w] {
        q.check_len(r.dim.len())?;
        if r.mats.len() != q.narrows() {
            return Err(QuiverError::ArrowCountMismatch {
                expected: q.narrows(),
                got: r.mats.len(),
            });
        }
    }
    Ok(())
}

/// Matrix of `d^V_W` in the basis described in the module docs.
pub fn build_dvw(q: &Quiver, v: &FFRep, w: &FFRep) -> Result<Matrix, QuiverError> {
    check_pair(q, v, w)?;
    let f = &v.field;
    let (beta, gamma) = (&v.dim, &w.dim);
    let mut dom_offset = Vec::with_capacity(q.nvertices());
    let mut ncols = 0;
    for x in 0..q.nvertices() {
        dom_offset.push(ncols);
        ncols += beta[x] * gamma[x];
    }
    let mut cod_offset = Vec::with_capacity(q.narrows());
    let mut nrows = 0;
    for a in q.arrows() {
        cod_offset.push(nrows);
        nrows += beta[a.tail] * gamma[a.head];
    }
    let mut d = Matrix::zeros(nrows, ncols);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let (wa, va) = (&w.mats[ai], &v.mats[ai]);
        // Codomain entry (i, c) of a γ(h) × β(t) matrix sits at i + c·γ(h).
        let cod = |i: usize, c: usize| cod_offset[ai] + c * gamma[h] + i;
        // W(a)·E_{r,c}: column c of the result is column r of W(a).
        for c in 0..beta[t] {
            for r in 0..gamma[t] {
                let col = dom_offset[t] + c * gamma[t] + r;
                for i in 0..gamma[h] {
                    d[(cod(i, c), col)] = f.add(d[(cod(i, c), col)], wa[(i, r)]);
                }
            }
        }
        // −E_{r,c}·V(a): row r of the result is −(row c of V(a)).
        for c in 0..beta[h] {
            for r in 0..gamma[h] {
                let col = dom_offset[h] + c * gamma[h] + r;
                for j in 0..beta[t] {
                    d[(cod(r, j), col)] = f.sub(d[(cod(r, j), col)], va[(c, j)]);
                }
            }
        }
    }
    Ok(d)
}

/// `(dim Hom_Q(V, W), dim Ext_Q(V, W))` as nullity and corank of `d^V_W`.
pub fn hom_ext_dims(q: &Quiver, v: &FFRep, w: &FFRep) -> Result<(usize, usize), QuiverError> {
    let d = build_dvw(q, v, w)?;
    let rank = d.rank(&v.field);
    let (hom, ext) = (d.cols() - rank, d.rows() - rank);
    debug_assert_eq!(hom as i64 - ext as i64, euler_form_unchecked(q, &v.dim, &w.dim));
    Ok((hom, ext))
}

/// The determinantal semi-invariant `c^V(W) = det d^V_W`.
pub fn semiinvariant_cv(q: &Quiver, v: &FFRep, w: &FFRep) -> Result<Elem, QuiverError> {
    let d = build_dvw(q, v, w)?;
    if d.rows() != d.cols() {
        return Err(QuiverError::NonSquare {
            rows: d.rows(),
            cols: d.cols(),
            pairing: euler_form_unchecked(q, &v.dim, &w.dim),
        });
    }
    Ok(d.determinant(&v.field))
}

/// Representation with uniformly random entries, drawn arrow by arrow in
/// row-major order from a ChaCha8 stream seeded with `seed`.
pub fn random_rep(q: &Quiver, dim: &DimVector, field: &FiniteField, seed: u64) -> Result<FFRep, QuiverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_rep_with(q, dim, field, &mut rng)
}

pub fn random_rep_with<R: rand::Rng + ?Sized>(
    q: &Quiver,
    dim: &DimVector,
    field: &FiniteField,
    rng: &mut R,
) -> Result<FFRep, QuiverError> {
    q.check_len(dim.len())?;
    let mats = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dim[a.head], dim[a.tail]);
            Matrix::from_vec(r, c, (0..r * c).map(|_| field.random(rng)).collect())
        })
        .collect();
    Ok(FFRep {
        field: field.clone(),
        dim: dim.clone(),
        mats,
    })
}
