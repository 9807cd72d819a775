//! Effective resistance.
//!
//! Two independent routes are provided: the harmonic-extension definition
//! (solve the interior Dirichlet problem, read off the energy) and the
//! pseudo-inverse quadratic form `(χ_i - χ_j)ᵀ L⁺ (χ_i - χ_j)`. Full
//! profiles use the pseudo-inverse; the harmonic route is the cross-check.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{solve, Matrix};
use crate::spectral::{pseudo_inverse, spectrum, PseudoInverse, SpectralDecomposition};

/// Values on `V ∖ U` that make `(L x)_v = 0` at every interior vertex `v`.
///
/// `boundary` lists `(vertex, value)` pairs for the vertex set `U`.
pub fn harmonic_extension(g: &WeightedGraph, boundary: &[(usize, f64)]) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if boundary.is_empty() {
        return Err(Error::InvalidArgument(
            "harmonic extension needs a non-empty boundary".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut fixed: Vec<Option<f64>> = vec![None; n];
    for &(v, value) in boundary {
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "boundary vertex {v} out of range"
            )));
        }
        if fixed[v].replace(value).is_some() {
            return Err(Error::InvalidArgument(format!(
                "boundary vertex {v} given twice"
            )));
        }
    }
    let interior: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut x: Vec<f64> = fixed.iter().map(|f| f.unwrap_or(0.0)).collect();
    if interior.is_empty() {
        return Ok(x);
    }

    let l = g.laplacian();
    let lm = l.matrix();
    let k = interior.len();
    let mut block = Matrix::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for (a, &va) in interior.iter().enumerate() {
        for (b, &vb) in interior.iter().enumerate() {
            block[(a, b)] = lm[(va, vb)];
        }
        rhs[a] = -(0..n)
            .filter_map(|u| fixed[u].map(|val| lm[(va, u)] * val))
            .sum::<f64>();
    }
    let solution = solve(&block, &rhs).map_err(|e| match e {
        Error::Singular(p) => Error::Internal(format!(
            "interior block of a connected graph is singular (pivot {p:e})"
        )),
        other => other,
    })?;
    for (a, &v) in interior.iter().enumerate() {
        x[v] = solution[a];
    }

    let lx = l.apply(&x);
    let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()))
        * lm.as_slice().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let residual = interior.iter().map(|&v| lx[v].abs()).fold(0.0, f64::max);
    if residual > 1e-10 * scale {
        return Err(Error::Internal(format!("harmonic residual {residual:e}")));
    }
    Ok(x)
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= n || j >= n {
        return Err(Error::InvalidArgument(format!(
            "vertex pair ({i}, {j}) out of range for {n} vertices"
        )));
    }
    Ok(())
}

/// `r(v_i, v_j) = ⟨L h, h⟩⁻¹` with `h` harmonic, `h_i = 1`, `h_j = 0`.
///
/// The energy `⟨L h, h⟩` and the net current `(L h)_i` are both computed and
/// must agree to `1e-10` relative.
pub fn resistance_harmonic(g: &WeightedGraph, i: usize, j: usize) -> Result<f64> {
    check_pair(g.vertex_count(), i, j)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if i == j {
        return Ok(0.0);
    }
    let h = harmonic_extension(g, &[(i, 1.0), (j, 0.0)])?;
    let l = g.laplacian();
    let energy = l.quadratic_form(&h);
    let current = l.apply(&h)[i];
    if (energy - current).abs() > 1e-10 * energy.abs() {
        return Err(Error::Internal(format!(
            "energy {energy} and current {current} disagree"
        )));
    }
    Ok(1.0 / energy)
}

/// `L⁺_ii + L⁺_jj - 2 L⁺_ij`.
pub fn resistance_pseudoinverse(lp: &PseudoInverse, i: usize, j: usize) -> Result<f64> {
    check_pair(lp.dim(), i, j)?;
    if !lp.is_connected() {
        return Err(Error::Disconnected);
    }
    if i == j {
        return Ok(0.0);
    }
    let m = lp.matrix();
    Ok(m[(i, i)] + m[(j, j)] - 2.0 * m[(i, j)])
}

/// All pairwise effective resistances and their sum over unordered pairs.
#[derive(Debug, Clone)]
pub struct ResistanceProfile {
    pairwise: Matrix,
    total: f64,
}

impl ResistanceProfile {
    pub fn from_pseudo_inverse(lp: &PseudoInverse) -> Result<Self> {
        let n = lp.dim();
        let mut pairwise = Matrix::zeros(n, n);
        let mut total = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let r = resistance_pseudoinverse(lp, i, j)?;
                pairwise[(i, j)] = r;
                pairwise[(j, i)] = r;
                total += r;
            }
        }
        Ok(ResistanceProfile { pairwise, total })
    }

    pub fn pairwise(&self) -> &Matrix {
        &self.pairwise
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pairwise[(i, j)]
    }

    /// `R(G; ω)`.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Largest `r(a, c) - r(a, b) - r(b, c)` over all triples (non-positive for a metric).
    pub fn max_triangle_violation(&self) -> f64 {
        let n = self.pairwise.rows();
        let mut worst = f64::NEG_INFINITY;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    worst = worst.max(self.get(a, c) - self.get(a, b) - self.get(b, c));
                }
            }
        }
        worst
    }
}

pub fn resistance_profile(g: &WeightedGraph) -> Result<ResistanceProfile> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lp = pseudo_inverse(&spectrum(g)?);
    ResistanceProfile::from_pseudo_inverse(&lp)
}

/// `R(G; ω)` via the pairwise profile.
pub fn total_resistance(g: &WeightedGraph) -> Result<f64> {
    Ok(resistance_profile(g)?.total())
}

/// `n · Σ_{k ≥ 2} 1/λ_k`.
pub fn kirchhoff_total(dec: &SpectralDecomposition) -> Result<f64> {
    if !dec.is_connected() {
        return Err(Error::Disconnected);
    }
    let sum: f64 = dec.eigenvalues()[1..].iter().map(|l| 1.0 / l).sum();
    Ok(dec.dim() as f64 * sum)
}

/// Series rule on a path: `r(v_i, v_j) = Σ_{k=i}^{j-1} 1/c_k`.
pub fn path_pair_resistance(g: &WeightedGraph, i: usize, j: usize) -> Result<f64> {
    let c = g.path_weights().ok_or(Error::NotAPath)?;
    check_pair(g.vertex_count(), i, j)?;
    let (lo, hi) = (i.min(j), i.max(j));
    Ok(c[lo..hi].iter().map(|w| 1.0 / w).sum())
}

/// Total resistance of a path: edge `k` (1-based) separates `k(n-k)` vertex pairs.
pub fn path_total_resistance(g: &WeightedGraph) -> Result<f64> {
    let c = g.path_weights().ok_or(Error::NotAPath)?;
    let n = g.vertex_count();
    Ok(c.iter()
        .enumerate()
        .map(|(k, w)| ((k + 1) * (n - k - 1)) as f64 / w)
        .sum())
}
