//! Covariant counts `N(β,α,μ̲)` and multiplicities `M(β,α,μ̲)` indexed by a
//! partition per vertex.
//!
//! The count is reduced to an ordinary subrepresentation count on the hat
//! quiver `Q̂`, which hangs an arm `x → y_{1,x} → ⋯ → y_{γ(x),x}` off every
//! vertex. The multiplicity is evaluated directly on `Q` as a labeled sum.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::{count_subreps, gamma_of, CountError};
use crate::lr::LrEngine;
use crate::partition::{Partition, PartitionError, Rectangle};
use crate::quiver::{euler_form_unchecked, DimVector, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovariantError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("labeling has {got} entries but the quiver has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("mu({vertex}) = {partition} does not fit the {rect} rectangle")]
    DoesNotFit {
        vertex: usize,
        partition: Partition,
        rect: Rectangle,
    },
    #[error("sum of |mu(x)| is {got} but <beta,gamma> = {pairing}")]
    DegreeMismatch { got: usize, pairing: i64 },
    #[error("malformed vertex labeling {0:?}")]
    Parse(String),
}

/// One partition per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabeling(pub Vec<Partition>);

impl VertexLabeling {
    pub fn empty(n: usize) -> Self {
        VertexLabeling(vec![Partition::empty(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ_x |μ̲(x)|`.
    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn get(&self, x: usize) -> &Partition {
        &self.0[x]
    }

    /// Parses `0:(1);1:()`. Vertices not mentioned get `∅`.
    pub fn parse(s: &str, nvertices: usize) -> Result<Self, CovariantError> {
        let bad = || CovariantError::Parse(s.to_string());
        let mut out = vec![None; nvertices];
        for item in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (v, p) = item.split_once(':').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            let p: Partition = p.trim().parse().map_err(|_: PartitionError| bad())?;
            let slot = out.get_mut(v).ok_or_else(bad)?;
            if slot.replace(p).is_some() {
                return Err(bad());
            }
        }
        Ok(VertexLabeling(out.into_iter().map(Option::unwrap_or_default).collect()))
    }

    fn check(&self, beta: &DimVector, gamma: &DimVector) -> Result<(), CovariantError> {
        if self.0.len() != beta.len() {
            return Err(CovariantError::SizeMismatch {
                expected: beta.len(),
                got: self.0.len(),
            });
        }
        for (x, p) in self.0.iter().enumerate() {
            let rect = Rectangle::new(beta[x], gamma[x]);
            if !p.fits(rect) {
                return Err(CovariantError::DoesNotFit {
                    vertex: x,
                    partition: p.clone(),
                    rect,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for VertexLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(i, p)| format!("{i}:{p}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// `b_1..b_{γ}`: `b_j` is how often the part `γ − j + 1` occurs in the
/// complement of `μ` inside `β × γ`.
pub fn exponent_profile(mu: &Partition, beta: usize, gamma: usize) -> Result<Vec<usize>, PartitionError> {
    let comp = mu.complement(Rectangle::new(beta, gamma))?;
    Ok((1..=gamma).map(|j| comp.multiplicity(gamma - j + 1)).collect())
}

/// The hat quiver with its dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatInstance {
    pub qhat: Quiver,
    pub betahat: DimVector,
    pub gammahat: DimVector,
    pub alphahat: DimVector,
    /// Original vertex `x` sits at `vertex_map[x]` in `qhat`.
    pub vertex_map: Vec<usize>,
    /// `arm_arrows[x][i-1]` is the arrow `y_{i-1,x} → y_{i,x}`.
    pub arm_arrows: Vec<Vec<usize>>,
    /// `arm_vertices[x][i-1]` is `y_{i,x}`.
    pub arm_vertices: Vec<Vec<usize>>,
}

/// Builds `Q̂`: original vertices keep their indices, arm vertices follow
/// in order `x = 0, 1, …` and within an arm `i = 1..γ(x)`. Original arrows
/// keep their indices and arm arrows follow in the same order.
pub fn build_hat(
    q: &Quiver,
    beta: &DimVector,
    gamma: &DimVector,
    mu: &VertexLabeling,
) -> Result<HatInstance, CovariantError> {
    q.check_len(beta.len()).map_err(CountError::from)?;
    q.check_len(gamma.len()).map_err(CountError::from)?;
    mu.check(beta, gamma)?;
    let n = q.nvertices();
    let mut arrows: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.tail, a.head)).collect();
    let mut betahat = beta.0.clone();
    let mut gammahat = gamma.0.clone();
    let mut arm_arrows = Vec::with_capacity(n);
    let mut arm_vertices = Vec::with_capacity(n);
    let mut next = n;
    for x in 0..n {
        let g = gamma[x];
        let b = exponent_profile(mu.get(x), beta[x], g).map_err(CountError::from)?;
        let mut prev = x;
        let (mut verts, mut arrs) = (Vec::with_capacity(g), Vec::with_capacity(g));
        for i in 1..=g {
            let y = next;
            next += 1;
            arrs.push(arrows.len());
            arrows.push((prev, y));
            verts.push(y);
            gammahat.push(g - i + 1);
            betahat.push(b[..g - i + 1].iter().sum());
            prev = y;
        }
        arm_arrows.push(arrs);
        arm_vertices.push(verts);
    }
    let qhat = Quiver::new(next, arrows).map_err(CountError::from)?;
    let betahat = DimVector(betahat);
    let gammahat = DimVector(gammahat);
    Ok(HatInstance {
        alphahat: betahat.add(&gammahat),
        qhat,
        betahat,
        gammahat,
        vertex_map: (0..n).collect(),
        arm_arrows,
        arm_vertices,
    })
}

fn checked_degree(q: &Quiver, beta: &DimVector, gamma: &DimVector, mu: &VertexLabeling) -> Result<(), CovariantError> {
    let pairing = euler_form_unchecked(q, beta, gamma);
    if pairing < 0 {
        return Err(CountError::NegativeEuler(pairing).into());
    }
    if mu.size() as i64 != pairing {
        return Err(CovariantError::DegreeMismatch {
            got: mu.size(),
            pairing,
        });
    }
    Ok(())
}

/// `N(β, α, μ̲)` computed as `N(β̂, α̂)` on the hat quiver. Requires
/// `Σ_x |μ̲(x)| = ⟨β, γ⟩`.
pub fn covariant_count(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
    mu: &VertexLabeling,
) -> Result<BigUint, CovariantError> {
    let gamma = gamma_of(q, beta, alpha)?;
    mu.check(beta, &gamma)?;
    checked_degree(q, beta, &gamma, mu)?;
    let hat = build_hat(q, beta, &gamma, mu)?;
    assert_eq!(
        euler_form_unchecked(&hat.qhat, &hat.betahat, &hat.gammahat),
        0,
        "hat quiver pairing must vanish"
    );
    Ok(count_subreps(engine, &hat.qhat, &hat.betahat, &hat.alphahat)?)
}

/// `M(β, α, μ̲)`, the multiplicity of `det^σ` in
/// `K[Rep(Q, γ)] ⊗ ⊗_x ⋀^{μ̲(x)} W(x)`, as the labeled sum
/// `Σ_λ̲ ∏_x mult(⋀^{(γ(x)^{β(x)})}; ⊗_{ta=x} ⋀^{λ(a)} ⊗ ⊗_{ha=x} ⋀^{λ̄(a)} ⊗ ⋀^{μ̲(x)})`.
/// Each factor is evaluated on conjugates since `⋀^λ = S^{λ'}`.
pub fn covariant_multiplicity(
    engine: &LrEngine,
    q: &Quiver,
    beta: &DimVector,
    alpha: &DimVector,
    mu: &VertexLabeling,
) -> Result<BigUint, CovariantError> {
    let gamma = gamma_of(q, beta, alpha)?;
    mu.check(beta, &gamma)?;
    let n = q.nvertices();
    let targets: Vec<Partition> = (0..n).map(|x| Partition::rectangle(gamma[x], beta[x])).collect();
    let options: Vec<Vec<(Partition, Partition)>> = q
        .arrows()
        .iter()
        .map(|a| {
            let rect = Rectangle::new(beta[a.tail], gamma[a.head]);
            rect.partitions()
                .into_iter()
                .map(|p| {
                    let comp = p.complement(rect).expect("enumerated inside the rectangle");
                    (p.conjugate(), comp.conjugate())
                })
                .collect()
        })
        .collect();
    let base: Vec<Vec<Partition>> = (0..n)
        .map(|x| {
            let m = mu.get(x).conjugate();
            if m.is_empty() {
                Vec::new()
            } else {
                vec![m]
            }
        })
        .collect();
    let mut total = BigUint::zero();
    let mut factors = base;
    walk(engine, q, &options, &targets, 0, &mut factors, &mut total);
    Ok(total)
}

fn walk(
    engine: &LrEngine,
    q: &Quiver,
    options: &[Vec<(Partition, Partition)>],
    targets: &[Partition],
    i: usize,
    factors: &mut Vec<Vec<Partition>>,
    total: &mut BigUint,
) {
    if i == options.len() {
        let mut product = BigUint::one();
        for (x, target) in targets.iter().enumerate() {
            if factors[x].iter().map(Partition::size).sum::<usize>() != target.size() {
                return;
            }
        }
        for (x, target) in targets.iter().enumerate() {
            let m = engine.tensor_multiplicity(target, &factors[x]);
            if m.is_zero() {
                return;
            }
            product *= m;
        }
        *total += product;
        return;
    }
    let a = q.arrow(i);
    for (lam, comp) in &options[i] {
        factors[a.tail].push(lam.clone());
        factors[a.head].push(comp.clone());
        walk(engine, q, options, targets, i + 1, factors, total);
        factors[a.head].pop();
        factors[a.tail].pop();
    }
}
