//! Numerical differentiation weights on uniform stencils.
//!
//! Two families are produced:
//!
//! * centered weights `δ^k_{p,j}`, `j = -p..=p`, exact for polynomials of
//!   degree `<= 2p` when approximating the `k`-th derivative at node 0;
//! * off-grid weights `γ^{k,q}_{p,j}`, `j = -p+1..=p`, on the `2p`-point
//!   stencil. For an integer offset `q` these are the interpolatory weights
//!   for the `k`-th derivative at `x = q`. For the interface offset `q = 1/2`
//!   they are the conservative flux weights whose first difference
//!   reproduces `δ^{k+1}`:
//!
//! ```text
//! δ^{k+1}_{p,p}  =  γ^{k,1/2}_{p,p}
//! δ^{k+1}_{p,j}  =  γ^{k,1/2}_{p,j} - γ^{k,1/2}_{p,j+1}     -p < j < p
//! δ^{k+1}_{p,-p} = -γ^{k,1/2}_{p,-p+1}
//! ```
//!
//! The centered family is built by the Lagrange-basis recursion in `p`
//! (never by solving the Vandermonde system), the integer-offset family by
//! Fornberg's recursion over the stencil nodes. Both run over any [`Field`],
//! so tables are generated with exact rationals and rounded once.

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, Real};

/// Evaluation offset of an off-grid formula, in grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Offset {
    /// A stencil node `q` with `-p+1 <= q <= p`.
    Node(i32),
    /// The interface `x = 1/2` between nodes 0 and 1.
    Half,
}

impl std::fmt::Display for Offset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Offset::Node(q) => write!(f, "{q}"),
            Offset::Half => f.write_str("1/2"),
        }
    }
}

impl std::str::FromStr for Offset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1/2" || t == "0.5" || t.eq_ignore_ascii_case("half") {
            return Ok(Offset::Half);
        }
        t.parse::<i32>()
            .map(Offset::Node)
            .map_err(|_| Error::Domain(format!("offset `{s}` is neither an integer nor 1/2")))
    }
}

/// Weights `δ^k_{p,j}` for `j = -p..=p`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredWeights<F> {
    pub p: usize,
    pub k: usize,
    pub weights: Vec<F>,
}

impl<F> CenteredWeights<F> {
    /// Weight at node `j`, `-p <= j <= p`.
    pub fn at(&self, j: i32) -> &F {
        &self.weights[(j + self.p as i32) as usize]
    }
}

/// Weights `γ^{k,q}_{p,j}` for `j = -p+1..=p`.
#[derive(Debug, Clone, PartialEq)]
pub struct OffgridWeights<F> {
    pub p: usize,
    pub k: usize,
    pub q: Offset,
    pub weights: Vec<F>,
}

impl<F> OffgridWeights<F> {
    /// Weight at node `j`, `-p+1 <= j <= p`.
    pub fn at(&self, j: i32) -> &F {
        &self.weights[(j + self.p as i32 - 1) as usize]
    }
}

/// Centered weights for every `p` in `0..=max_p`: `family[p][k][j + p]`.
///
/// `p = 0` is the seed of the recursion (the single weight 1 for `k = 0`).
pub fn centered_family<F: Field>(max_p: usize) -> Vec<Vec<Vec<F>>> {
    let mut family: Vec<Vec<Vec<F>>> = vec![vec![vec![F::one()]]];
    for p in 1..=max_p {
        let prev = &family[p - 1];
        let pp = p as i64;
        // δ^k_{p-1,j}, zero outside 0 <= k <= 2(p-1).
        let prev_at = |k: i64, j: usize| -> F {
            if k < 0 || k as usize >= prev.len() {
                F::zero()
            } else {
                prev[k as usize][j + p - 1].clone()
            }
        };

        let width = 2 * p + 1;
        let mut level = vec![vec![F::zero(); width]; width];
        for (k, row) in level.iter_mut().enumerate() {
            let ki = k as i64;
            for j in 0..p {
                let jj = j as i64;
                let num = F::from_int(pp * pp) * prev_at(ki, j)
                    - F::from_int(ki * (ki - 1)) * prev_at(ki - 2, j);
                row[j + p] = num / F::from_int(pp * pp - jj * jj);
            }
            let edge = F::from_int(ki * (ki - 1)) * prev_at(ki - 2, p - 1)
                + F::from_int(ki) * prev_at(ki - 1, p - 1)
                - F::from_int(pp * (pp - 1)) * prev_at(ki, p - 1);
            row[2 * p] = edge / F::from_int(2 * pp * (2 * pp - 1));
            for j in 1..=p {
                let w = row[p + j].clone();
                row[p - j] = if k % 2 == 0 { w } else { -w };
            }
        }
        family.push(level);
    }
    family
}

fn check_centered(p: usize, k: usize) -> Result<()> {
    if p < 1 {
        return Err(Error::Domain(format!("stencil half-width p = {p} must be >= 1")));
    }
    if k > 2 * p {
        return Err(Error::Domain(format!(
            "derivative order k = {k} exceeds 2p = {} for the centered stencil",
            2 * p
        )));
    }
    Ok(())
}

fn check_offgrid(p: usize, k: usize, q: Offset) -> Result<()> {
    if p < 1 {
        return Err(Error::Domain(format!("stencil half-width p = {p} must be >= 1")));
    }
    if k >= 2 * p {
        return Err(Error::Domain(format!(
            "derivative order k = {k} must be below 2p = {} on the 2p-point stencil",
            2 * p
        )));
    }
    if let Offset::Node(n) = q {
        if n < -(p as i32) + 1 || n > p as i32 {
            return Err(Error::Domain(format!(
                "node offset {n} lies outside the stencil {}..={p}",
                -(p as i32) + 1
            )));
        }
    }
    Ok(())
}

/// Centered weights `δ^k_{p,·}`.
pub fn centered_coeffs<F: Field>(p: usize, k: usize) -> Result<CenteredWeights<F>> {
    check_centered(p, k)?;
    let mut family = centered_family::<F>(p);
    let weights = family.swap_remove(p).swap_remove(k);
    Ok(CenteredWeights { p, k, weights })
}

/// Fornberg's recursion: weights of the `0..=max_deriv` derivatives at `z`
/// for an arbitrary node set. Entry `[k][j]` belongs to `nodes[j]`.
pub fn fornberg_weights<F: Field>(nodes: &[F], z: &F, max_deriv: usize) -> Vec<Vec<F>> {
    let n = nodes.len();
    let mut c = vec![vec![F::zero(); n]; max_deriv + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = F::one();
    let mut c4 = nodes[0].clone() - z.clone();
    c[0][0] = F::one();
    for i in 1..n {
        let mn = i.min(max_deriv);
        let mut c2 = F::one();
        let c5 = c4.clone();
        c4 = nodes[i].clone() - z.clone();
        for j in 0..i {
            let c3 = nodes[i].clone() - nodes[j].clone();
            c2 = c2 * c3.clone();
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1.clone()
                        * (F::from_int(k as i64) * c[k - 1][i - 1].clone()
                            - c5.clone() * c[k][i - 1].clone())
                        / c2.clone();
                }
                c[0][i] = -(c1.clone() * c5.clone() * c[0][i - 1].clone()) / c2.clone();
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4.clone() * c[k][j].clone() - F::from_int(k as i64) * c[k - 1][j].clone())
                    / c3.clone();
            }
            c[0][j] = c4.clone() * c[0][j].clone() / c3.clone();
        }
        c1 = c2;
    }
    c
}

fn stencil_nodes<F: Field>(p: usize) -> Vec<F> {
    (-(p as i64) + 1..=p as i64).map(F::from_int).collect()
}

/// Conservative interface weights from the next centered derivative.
fn interface_from_centered<F: Field>(centered_next: &[F], p: usize) -> Vec<F> {
    // centered_next is indexed j + p for j = -p..=p; output j + p - 1 for j = -p+1..=p.
    let mut out = vec![F::zero(); 2 * p];
    out[2 * p - 1] = centered_next[2 * p].clone();
    for j in (-(p as i64) + 1..p as i64).rev() {
        let idx = (j + p as i64 - 1) as usize;
        out[idx] = centered_next[(j + p as i64) as usize].clone() + out[idx + 1].clone();
    }
    out
}

/// Off-grid weights `γ^{k,q}_{p,·}`.
pub fn offgrid_coeffs<F: Field>(p: usize, k: usize, q: Offset) -> Result<OffgridWeights<F>> {
    check_offgrid(p, k, q)?;
    let weights = match q {
        Offset::Node(n) => {
            let nodes = stencil_nodes::<F>(p);
            fornberg_weights(&nodes, &F::from_int(n as i64), k).swap_remove(k)
        }
        Offset::Half => {
            let next = centered_coeffs::<F>(p, k + 1)?;
            interface_from_centered(&next.weights, p)
        }
    };
    Ok(OffgridWeights { p, k, q, weights })
}

/// Order of accuracy of the centered `k`-th derivative formula on `2p+1` points.
pub fn formula_order(p: usize, k: usize) -> Result<usize> {
    if p < 1 || k < 1 || k > 2 * p {
        return Err(Error::Domain(format!("formula order needs 1 <= k <= 2p (p = {p}, k = {k})")));
    }
    let alpha = if k % 2 == 1 { 2 * p + 1 } else { 2 * p + 2 };
    Ok(alpha - k)
}

/// Every weight the schemes use, for all `1 <= p <= max_p`, built once.
///
/// Immutable after construction; share it freely across threads.
#[derive(Debug, Clone)]
pub struct CoefficientTable<T> {
    max_p: usize,
    /// `[p][k][j + p]`, `0 <= k <= 2p`.
    centered: Vec<Vec<Vec<T>>>,
    /// `[p][q + p - 1][k][j + p - 1]`, `0 <= k <= 2p - 1`.
    nodes: Vec<Vec<Vec<Vec<T>>>>,
    /// `[p][k][j + p - 1]`, `0 <= k <= 2p - 1`.
    interface: Vec<Vec<Vec<T>>>,
}

impl<F: Field> CoefficientTable<F> {
    /// Table computed directly in `F`, increasing `p`.
    pub fn build_in(max_p: usize) -> Result<Self> {
        if max_p < 1 {
            return Err(Error::Domain("coefficient table needs max_p >= 1".into()));
        }
        let family = centered_family::<F>(max_p);
        let mut nodes = vec![Vec::new()];
        let mut interface = vec![Vec::new()];
        for p in 1..=max_p {
            let stencil = stencil_nodes::<F>(p);
            let per_q = (-(p as i64) + 1..=p as i64)
                .map(|q| fornberg_weights(&stencil, &F::from_int(q), 2 * p - 1))
                .collect();
            nodes.push(per_q);
            interface.push(
                (0..2 * p)
                    .map(|k| interface_from_centered(&family[p][k + 1], p))
                    .collect(),
            );
        }
        Ok(CoefficientTable { max_p, centered: family, nodes, interface })
    }

    pub fn max_p(&self) -> usize {
        self.max_p
    }

    fn check_p(&self, p: usize) {
        assert!(
            (1..=self.max_p).contains(&p),
            "p = {p} outside coefficient table range 1..={}",
            self.max_p
        );
    }

    /// `δ^k_{p,·}` indexed by `j + p`.
    pub fn centered(&self, p: usize, k: usize) -> &[F] {
        self.check_p(p);
        &self.centered[p][k]
    }

    /// `γ^{k,q}_{p,·}` at node `q`, indexed by `j + p - 1`.
    pub fn at_node(&self, p: usize, k: usize, q: i32) -> &[F] {
        self.check_p(p);
        &self.nodes[p][(q + p as i32 - 1) as usize][k]
    }

    /// `γ^{k,1/2}_{p,·}` indexed by `j + p - 1`.
    pub fn interface(&self, p: usize, k: usize) -> &[F] {
        self.check_p(p);
        &self.interface[p][k]
    }

    pub fn offgrid(&self, p: usize, k: usize, q: Offset) -> &[F] {
        match q {
            Offset::Node(n) => self.at_node(p, k, n),
            Offset::Half => self.interface(p, k),
        }
    }

    /// Elementwise conversion into another scalar type.
    pub fn map<G>(&self, f: impl Fn(&F) -> G + Copy) -> CoefficientTable<G> {
        let m1 = |v: &Vec<F>| v.iter().map(f).collect::<Vec<G>>();
        let m2 = |v: &Vec<Vec<F>>| v.iter().map(m1).collect::<Vec<_>>();
        let m3 = |v: &Vec<Vec<Vec<F>>>| v.iter().map(m2).collect::<Vec<_>>();
        CoefficientTable {
            max_p: self.max_p,
            centered: self.centered.iter().map(m2).collect(),
            nodes: self.nodes.iter().map(m3).collect(),
            interface: self.interface.iter().map(m2).collect(),
        }
    }
}

impl CoefficientTable<Rational> {
    pub fn exact(max_p: usize) -> Result<Self> {
        Self::build_in(max_p)
    }
}

impl<T: Real> CoefficientTable<T> {
    /// Exact rational table rounded once to `T`.
    pub fn new(max_p: usize) -> Result<Self> {
        Ok(CoefficientTable::<Rational>::exact(max_p)?.map(T::from_rational))
    }
}
