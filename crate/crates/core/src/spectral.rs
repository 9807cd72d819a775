//! Laplacian spectra: cyclic Jacobi eigensolver, Fiedler pair, Rayleigh
//! quotients, the Moore–Penrose pseudo-inverse and the structural checks
//! on Fiedler vectors of paths.

use crate::error::{Error, Result};
use crate::graph::{Laplacian, WeightedGraph};
use crate::matrix::{dot, norm, Matrix};

/// Convergence: off-diagonal Frobenius norm at most this times `‖A‖_F`.
pub const JACOBI_RELATIVE_TOLERANCE: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Inputs whose asymmetry exceeds this (relative to the largest entry) are rejected.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// An eigenvalue is zero iff it is below this times `max(1, λ_n)`.
pub const ZERO_EIGENVALUE_RELATIVE: f64 = 1e-10;
/// The Fiedler pair is degenerate iff `λ₃ - λ₂` is below this times `max(1, λ_n)`.
pub const DEFAULT_DEGENERACY_RELATIVE: f64 = 1e-8;
/// Entries at or below this magnitude are skipped when fixing eigenvector signs.
const SIGN_EPSILON: f64 = 1e-12;

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted ascending and the matching orthonormal
/// eigenvectors as the columns of the second component. Each eigenvector is
/// signed so that its first entry of magnitude above `1e-12` is negative,
/// which makes the output a deterministic function of the input.
pub fn jacobi_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(
            "eigendecomposition needs a square matrix".into(),
        ));
    }
    let n = a.rows();
    let scale = a.as_slice().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOLERANCE * scale {
        return Err(Error::NotSymmetricMatrix(asym));
    }

    let mut m = a.clone();
    // symmetrize exactly so the rotations act on a truly symmetric matrix
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_RELATIVE_TOLERANCE * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > threshold {
        return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values: Vec<f64> = order.iter().map(|&k| m[(k, k)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let flip = (0..n)
            .map(|i| v[(i, k)])
            .find(|x| x.abs() > SIGN_EPSILON)
            .is_some_and(|x| x > 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[(i, col)] = sign * v[(i, k)];
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += m[(i, j)] * m[(i, j)];
        }
    }
    (2.0 * sum).sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = m.rows();
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    m[(p, p)] -= t * apq;
    m[(q, q)] += t * apq;
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        let new_kp = c * mkp - s * mkq;
        let new_kq = s * mkp + c * mkq;
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp;
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Sorted Laplacian spectrum with orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
    zero_threshold: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `λ_1 ≤ ... ≤ λ_n`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvectors as columns, column `k` paired with `eigenvalues()[k]`.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    pub fn zero_threshold(&self) -> f64 {
        self.zero_threshold
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn is_zero(&self, lambda: f64) -> bool {
        lambda < self.zero_threshold
    }

    /// Number of eigenvalues classified as zero (the number of components).
    pub fn zero_count(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|&&l| self.is_zero(l))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.zero_count() == 1
    }

    /// `Σ λ_k u_k u_kᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += lambda * self.eigenvectors[(i, k)] * self.eigenvectors[(j, k)];
                }
            }
        }
        out
    }

    /// Largest `‖L u_k - λ_k u_k‖` over all pairs.
    pub fn max_residual(&self, l: &Laplacian) -> f64 {
        (0..self.dim())
            .map(|k| {
                let u = self.eigenvector(k);
                let lu = l.apply(&u);
                let r: Vec<f64> = lu
                    .iter()
                    .zip(&u)
                    .map(|(a, b)| a - self.eigenvalues[k] * b)
                    .collect();
                norm(&r)
            })
            .fold(0.0, f64::max)
    }
}

pub fn eigendecompose(l: &Laplacian) -> Result<SpectralDecomposition> {
    let (eigenvalues, eigenvectors) = jacobi_eigen(l.matrix())?;
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        zero_threshold: ZERO_EIGENVALUE_RELATIVE * lambda_max.max(1.0),
    })
}

/// Shorthand for `eigendecompose(&g.laplacian())`.
pub fn spectrum(g: &WeightedGraph) -> Result<SpectralDecomposition> {
    eigendecompose(&g.laplacian())
}

/// Algebraic connectivity with its eigenvector and the gap to `λ₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fiedler {
    pub value: f64,
    /// Unit vector; first entry above `1e-12` in magnitude is negative.
    pub vector: Vec<f64>,
    /// `λ₃ - λ₂`, infinite for two-vertex graphs.
    pub gap: f64,
    pub degenerate: bool,
    /// Gap below which the pair was flagged degenerate.
    pub degeneracy_threshold: f64,
}

pub fn fiedler(dec: &SpectralDecomposition) -> Result<Fiedler> {
    fiedler_with_threshold(dec, DEFAULT_DEGENERACY_RELATIVE)
}

/// Like [`fiedler`] with a custom relative degeneracy threshold.
pub fn fiedler_with_threshold(dec: &SpectralDecomposition, relative: f64) -> Result<Fiedler> {
    let values = dec.eigenvalues();
    let value = values[1];
    if dec.is_zero(value) {
        return Err(Error::Disconnected);
    }
    let gap = values.get(2).map_or(f64::INFINITY, |l3| l3 - value);
    let threshold = relative * dec.lambda_max().max(1.0);
    Ok(Fiedler {
        value,
        vector: dec.eigenvector(1),
        gap,
        degenerate: gap < threshold,
        degeneracy_threshold: threshold,
    })
}

/// `λ₂(G; ω)`.
pub fn algebraic_connectivity(g: &WeightedGraph) -> Result<f64> {
    Ok(fiedler(&spectrum(g)?)?.value)
}

/// `<Lx, x> / <x, x>`.
pub fn rayleigh(l: &Laplacian, x: &[f64]) -> Result<f64> {
    if x.len() != l.dim() {
        return Err(Error::InvalidArgument(format!(
            "vector of length {} for {}x{} Laplacian",
            x.len(),
            l.dim(),
            l.dim()
        )));
    }
    let xx = dot(x, x);
    if xx == 0.0 {
        return Err(Error::InvalidArgument(
            "Rayleigh quotient of the zero vector".into(),
        ));
    }
    Ok(l.quadratic_form(x) / xx)
}

/// Moore–Penrose pseudo-inverse `L⁺` of a Laplacian.
#[derive(Debug, Clone)]
pub struct PseudoInverse {
    matrix: Matrix,
    kernel_dim: usize,
}

impl PseudoInverse {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of eigenvalues dropped as zero; 1 for connected graphs.
    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn is_connected(&self) -> bool {
        self.kernel_dim == 1
    }

    /// `L⁺(χ_i - χ_j)`.
    pub fn apply_difference(&self, i: usize, j: usize) -> Vec<f64> {
        (0..self.dim())
            .map(|k| self.matrix[(k, i)] - self.matrix[(k, j)])
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)]).sum()
    }
}

/// `L⁺ = Σ_{λ_k nonzero} λ_k⁻¹ u_k u_kᵀ`.
pub fn pseudo_inverse(dec: &SpectralDecomposition) -> PseudoInverse {
    let n = dec.dim();
    let mut matrix = Matrix::zeros(n, n);
    let mut kernel_dim = 0;
    for (k, &lambda) in dec.eigenvalues().iter().enumerate() {
        if dec.is_zero(lambda) {
            kernel_dim += 1;
            continue;
        }
        let u = dec.eigenvector(k);
        for i in 0..n {
            for j in 0..n {
                matrix[(i, j)] += u[i] * u[j] / lambda;
            }
        }
    }
    PseudoInverse { matrix, kernel_dim }
}

/// Outcome of the monotonicity check on a path Fiedler vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monotonicity {
    /// Entries weakly increasing or weakly decreasing along the path.
    pub monotone: bool,
    /// Every consecutive difference exceeds the tolerance in magnitude.
    pub strict: bool,
}

fn path_vector_checked(g: &WeightedGraph, u: &[f64]) -> Result<Vec<f64>> {
    let weights = g.path_weights().ok_or(Error::NotAPath)?;
    if u.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vector of length {} for a path on {} vertices",
            u.len(),
            g.vertex_count()
        )));
    }
    Ok(weights)
}

/// Monotonicity of `u` along the path, with tolerance `1e-8·‖u‖`.
pub fn path_monotonicity(g: &WeightedGraph, u: &[f64]) -> Result<Monotonicity> {
    path_vector_checked(g, u)?;
    let tol = 1e-8 * norm(u);
    let diffs: Vec<f64> = u.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = diffs.iter().all(|&d| d >= -tol);
    let decreasing = diffs.iter().all(|&d| d <= tol);
    Ok(Monotonicity {
        monotone: increasing || decreasing,
        strict: (increasing || decreasing) && diffs.iter().all(|d| d.abs() > tol),
    })
}

pub fn check_path_monotonicity(g: &WeightedGraph, u: &[f64]) -> Result<bool> {
    Ok(path_monotonicity(g, u)?.monotone)
}

/// For mirror-symmetric path weights, checks `u_j + u_{n+1-j} = 0` to `1e-8·‖u‖`.
pub fn check_path_antisymmetry(g: &WeightedGraph, u: &[f64]) -> Result<bool> {
    let c = path_vector_checked(g, u)?;
    let m = c.len();
    for i in 0..m / 2 {
        let (a, b) = (c[i], c[m - 1 - i]);
        if (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
            return Err(Error::NotSymmetric);
        }
    }
    let n = u.len();
    let worst = (0..n)
        .map(|j| (u[j] + u[n - 1 - j]).abs())
        .fold(0.0, f64::max);
    Ok(worst <= 1e-8 * norm(u))
}
