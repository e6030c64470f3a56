//! Generalized Jacobi function (GJF) interpolation in space, shifted Legendre
//! interpolation in time, and the exact modal maps for the fractional
//! Laplacian and the time derivative.

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::specfun::{
    gamma_norm, gamma_ratio_factorial, jacobi_derivative, jacobi_eval, jacobi_eval_all, jacobi_gauss,
    legendre_eval_all, JacobiIndex,
};

/// Checks α ∈ (0, 2].
pub fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(alpha)
    } else {
        Err(domain("alpha", alpha))
    }
}

/// (1 - x²)^{α/2}, zero outside (-1, 1).
pub fn gjf_weight(alpha: f64, x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return 0.0;
    }
    let s = (1.0 - x) * (1.0 + x);
    if s < 1e-14 {
        (0.5 * alpha * ((1.0 - x).ln() + (1.0 + x).ln())).exp()
    } else {
        s.powf(0.5 * alpha)
    }
}

/// 𝒥_n^{α/2}(x) = (1 - x²)^{α/2} P_n^{(α/2,α/2)}(x).
pub fn gjf_eval(n: usize, alpha: f64, x: f64) -> f64 {
    let w = gjf_weight(alpha, x);
    if w == 0.0 {
        return 0.0;
    }
    w * jacobi_eval(n, JacobiIndex { a: alpha / 2.0, b: alpha / 2.0 }, x)
}

/// λ_n = Γ(n+α+1)/n!, the eigenvalue of the fractional Laplacian on 𝒥_n.
pub fn frac_eigenvalue(n: usize, alpha: f64) -> f64 {
    gamma_ratio_factorial(n, alpha)
}

/// Jacobi-Gauss collocation grid of index (α/2, α/2).
#[derive(Debug, Clone)]
pub struct GjfGrid {
    pub alpha: f64,
    pub n_x: usize,
    pub index: JacobiIndex,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// c[n][j], nodal-to-modal map.
    pub c_matrix: Vec<Vec<f64>>,
    node_weight: Vec<f64>,
    bary: Vec<f64>,
    eigen: Vec<f64>,
}

impl GjfGrid {
    pub fn new(alpha: f64, n_x: usize) -> Result<Arc<Self>> {
        check_alpha(alpha)?;
        let index = JacobiIndex::symmetric(alpha / 2.0)?;
        let rule = jacobi_gauss(n_x, index);
        let node_weight: Vec<f64> = rule.nodes.iter().map(|&x| gjf_weight(alpha, x)).collect();
        let mut c_matrix = vec![vec![0.0; n_x + 1]; n_x + 1];
        let mut p = Vec::new();
        for (j, &x) in rule.nodes.iter().enumerate() {
            jacobi_eval_all(n_x, index, x, &mut p);
            for n in 0..=n_x {
                c_matrix[n][j] = p[n] * rule.weights[j] / (gamma_norm(n, index) * node_weight[j]);
            }
        }
        let mut bary: Vec<f64> = rule
            .nodes
            .iter()
            .map(|&x| 1.0 / jacobi_derivative(n_x + 1, index, x))
            .collect();
        let scale = bary.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        bary.iter_mut().for_each(|v| *v /= scale);
        let eigen = (0..=n_x).map(|n| frac_eigenvalue(n, alpha)).collect();
        Ok(Arc::new(Self {
            alpha,
            n_x,
            index,
            nodes: rule.nodes,
            weights: rule.weights,
            c_matrix,
            node_weight,
            bary,
            eigen,
        }))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodal values to GJF coefficients.
    pub fn to_modal(&self, values: &[f64]) -> Vec<f64> {
        self.c_matrix
            .iter()
            .map(|row| row.iter().zip(values).map(|(c, v)| c * v).sum())
            .collect()
    }

    /// Polynomial Lagrange weights h_j(x) through the barycentric formula.
    /// Returns `Err(j)` when x coincides with node j.
    fn lagrange_weights(&self, x: f64, out: &mut Vec<f64>) -> std::result::Result<(), usize> {
        out.clear();
        let mut denom = 0.0;
        for (j, (&xj, &lj)) in self.nodes.iter().zip(&self.bary).enumerate() {
            let d = x - xj;
            if d == 0.0 {
                return Err(j);
            }
            let term = lj / d;
            out.push(term);
            denom += term;
        }
        out.iter_mut().for_each(|v| *v /= denom);
        Ok(())
    }

    /// The generalized Lagrange basis function l_j^{α/2}(x).
    pub fn cardinal(&self, j: usize, x: f64) -> f64 {
        let mut e = vec![0.0; self.len()];
        e[j] = 1.0;
        self.eval_nodal(&e, x)
    }

    fn eval_nodal(&self, values: &[f64], x: f64) -> f64 {
        let w = gjf_weight(self.alpha, x);
        if w == 0.0 {
            return 0.0;
        }
        let mut h = Vec::with_capacity(self.len());
        match self.lagrange_weights(x, &mut h) {
            Err(j) => values[j],
            Ok(()) => {
                w * h
                    .iter()
                    .zip(values)
                    .zip(&self.node_weight)
                    .map(|((hj, v), nw)| hj * v / nw)
                    .sum::<f64>()
            }
        }
    }
}

/// Σ c_n P_n^{index}(x).
pub fn jacobi_series(coeffs: &[f64], index: JacobiIndex, x: f64) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let JacobiIndex { a, b } = index;
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut acc = coeffs[0];
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        let next = if k == 1 {
            0.5 * ((a + b + 2.0) * x + (a - b))
        } else {
            let kf = (k - 1) as f64;
            let s = 2.0 * kf + a + b;
            let c1 = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s;
            let c2 = (s + 1.0) * (s * (s + 2.0) * x + a * a - b * b);
            let c3 = 2.0 * (kf + a) * (kf + b) * (s + 2.0);
            (c2 * cur - c3 * prev) / c1
        };
        prev = cur;
        cur = next;
        acc += c * cur;
    }
    acc
}

/// Σ c_n 𝒥_n^{α/2}(x).
pub fn gjf_series(coeffs: &[f64], alpha: f64, x: f64) -> f64 {
    let w = gjf_weight(alpha, x);
    if w == 0.0 {
        return 0.0;
    }
    w * jacobi_series(coeffs, JacobiIndex { a: alpha / 2.0, b: alpha / 2.0 }, x)
}

/// Generalized Lagrange interpolant ℐ_{N_x}^{α/2}u.
#[derive(Debug, Clone)]
pub struct Interpolant1D {
    pub grid: Arc<GjfGrid>,
    pub values: Vec<f64>,
    pub modal: Vec<f64>,
}

/// Builds the interpolant from nodal samples.
pub fn interpolate(grid: &Arc<GjfGrid>, samples: &[f64]) -> Result<Interpolant1D> {
    if samples.len() != grid.len() {
        return Err(Error::Contract(format!(
            "interpolate: {} samples for {} nodes",
            samples.len(),
            grid.len()
        )));
    }
    Ok(Interpolant1D {
        grid: Arc::clone(grid),
        values: samples.to_vec(),
        modal: grid.to_modal(samples),
    })
}

/// Evaluates the interpolant; zero at and beyond ±1.
pub fn eval_interpolant(f: &Interpolant1D, x: f64) -> f64 {
    f.eval(x)
}

/// Fractional Laplacian coefficients ũ_n in the P_n^{(α/2,α/2)} basis.
pub fn frac_laplacian_modal(f: &Interpolant1D) -> Vec<f64> {
    f.modal.iter().zip(&f.grid.eigen).map(|(u, l)| u * l).collect()
}

impl Interpolant1D {
    pub fn zero(grid: &Arc<GjfGrid>) -> Self {
        interpolate(grid, &vec![0.0; grid.len()]).expect("matching length")
    }

    pub fn from_fn(grid: &Arc<GjfGrid>, u: impl Fn(f64) -> f64) -> Self {
        let samples: Vec<f64> = grid.nodes.iter().map(|&x| u(x)).collect();
        interpolate(grid, &samples).expect("matching length")
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.grid.eval_nodal(&self.values, x)
    }

    /// Evaluation through the modal expansion Σ û_n 𝒥_n(x).
    pub fn eval_modal(&self, x: f64) -> f64 {
        gjf_series(&self.modal, self.grid.alpha, x)
    }

    /// (−Δ)^{α/2} of the interpolant at x ∈ (-1, 1).
    pub fn frac_laplacian_at(&self, x: f64) -> f64 {
        jacobi_series(&frac_laplacian_modal(self), self.grid.index, x)
    }

    pub fn add(&self, other: &Interpolant1D) -> Result<Interpolant1D> {
        if !Arc::ptr_eq(&self.grid, &other.grid) && self.grid.nodes != other.grid.nodes {
            return Err(Error::Contract("add: interpolants on different grids".into()));
        }
        let values: Vec<f64> = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        interpolate(&self.grid, &values)
    }
}

/// Shifted Legendre-Gauss grid on (0, T).
#[derive(Debug, Clone)]
pub struct TimeGrid {
    pub horizon: f64,
    pub n_t: usize,
    pub nodes: Vec<f64>,
    /// Reference Legendre-Gauss weights on (-1, 1).
    pub weights: Vec<f64>,
    /// b[q][j] = (2q+1)/2 · L̃_q(t_j) · ω_j.
    pub b_matrix: Vec<Vec<f64>>,
}

impl TimeGrid {
    pub fn new(horizon: f64, n_t: usize) -> Result<Arc<Self>> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(domain("TimeGrid: T", horizon));
        }
        let rule = jacobi_gauss(n_t, JacobiIndex::legendre());
        let nodes: Vec<f64> = rule.nodes.iter().map(|&s| 0.5 * horizon * (s + 1.0)).collect();
        let mut b_matrix = vec![vec![0.0; n_t + 1]; n_t + 1];
        let mut l = Vec::new();
        for (j, &s) in rule.nodes.iter().enumerate() {
            legendre_eval_all(n_t, s, &mut l);
            for q in 0..=n_t {
                b_matrix[q][j] = (2 * q + 1) as f64 / 2.0 * l[q] * rule.weights[j];
            }
        }
        Ok(Arc::new(Self {
            horizon,
            n_t,
            nodes,
            weights: rule.weights,
            b_matrix,
        }))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// L̃_0..L̃_{N_t} at time t.
    pub fn legendre_at(&self, t: f64, out: &mut Vec<f64>) {
        legendre_eval_all(self.n_t, (2.0 * t - self.horizon) / self.horizon, out);
    }
}

/// Space-time interpolant ℐ_{N_x}^{α/2}ℐ_{N_t}u.
#[derive(Debug, Clone)]
pub struct SpaceTimeInterpolant {
    pub grid: Arc<GjfGrid>,
    pub tgrid: Arc<TimeGrid>,
    /// values[i][j] = u(x_i, t_j).
    pub values: Vec<Vec<f64>>,
    /// modal[p][q] = û_pq.
    pub modal: Vec<Vec<f64>>,
}

/// Builds the tensor interpolant from a (N_x+1)×(N_t+1) matrix of samples.
pub fn st_interpolate(
    grid: &Arc<GjfGrid>,
    tgrid: &Arc<TimeGrid>,
    samples: &[Vec<f64>],
) -> Result<SpaceTimeInterpolant> {
    let (nx, nt) = (grid.len(), tgrid.len());
    if samples.len() != nx || samples.iter().any(|row| row.len() != nt) {
        return Err(Error::Contract(format!(
            "st_interpolate: expected a {nx}x{nt} sample matrix"
        )));
    }
    // û_pq = Σ_i c_pi Σ_j u_ij b_qj
    let time_modal: Vec<Vec<f64>> = samples
        .iter()
        .map(|row| {
            tgrid
                .b_matrix
                .iter()
                .map(|b| b.iter().zip(row).map(|(b, u)| b * u).sum())
                .collect()
        })
        .collect();
    let modal = grid
        .c_matrix
        .iter()
        .map(|c| {
            (0..nt)
                .map(|q| c.iter().zip(&time_modal).map(|(c, row)| c * row[q]).sum())
                .collect()
        })
        .collect();
    Ok(SpaceTimeInterpolant {
        grid: Arc::clone(grid),
        tgrid: Arc::clone(tgrid),
        values: samples.to_vec(),
        modal,
    })
}

/// Evaluates Σ_pq m_pq B_p(x) L̃_q(t) with B_p = P_p or 𝒥_p.
fn tensor_series(
    coeffs: &[Vec<f64>],
    grid: &GjfGrid,
    tgrid: &TimeGrid,
    x: f64,
    t: f64,
    spatial_weight: f64,
) -> f64 {
    let mut p = Vec::with_capacity(coeffs.len());
    jacobi_eval_all(coeffs.len().saturating_sub(1), grid.index, x, &mut p);
    let mut l = Vec::with_capacity(tgrid.len());
    tgrid.legendre_at(t, &mut l);
    let mut acc = 0.0;
    for (row, pp) in coeffs.iter().zip(&p) {
        let inner: f64 = row.iter().zip(&l).map(|(c, l)| c * l).sum();
        acc += pp * inner;
    }
    spatial_weight * acc
}

/// Fractional Laplacian coefficients ũ_pq in the P_p × L̃_q basis.
pub fn st_frac_laplacian(f: &SpaceTimeInterpolant) -> Vec<Vec<f64>> {
    f.modal
        .iter()
        .zip(&f.grid.eigen)
        .map(|(row, l)| row.iter().map(|u| u * l).collect())
        .collect()
}

/// Time-derivative coefficients ǔ_pq in the 𝒥_p × L̃_q basis (last column zero).
pub fn st_time_derivative(f: &SpaceTimeInterpolant) -> Result<Vec<Vec<f64>>> {
    let n_t = f.tgrid.n_t;
    if n_t == 0 {
        return Err(Error::Contract("st_time_derivative needs N_t >= 1".into()));
    }
    let scale = 2.0 / f.tgrid.horizon;
    Ok(f.modal
        .iter()
        .map(|row| {
            (0..=n_t)
                .map(|q| {
                    let s: f64 = ((q + 1)..=n_t).step_by(2).map(|n| row[n]).sum();
                    s * (2 * q + 1) as f64 * scale
                })
                .collect()
        })
        .collect())
}

impl SpaceTimeInterpolant {
    pub fn zero(grid: &Arc<GjfGrid>, tgrid: &Arc<TimeGrid>) -> Self {
        let samples = vec![vec![0.0; tgrid.len()]; grid.len()];
        st_interpolate(grid, tgrid, &samples).expect("matching shape")
    }

    pub fn from_fn(grid: &Arc<GjfGrid>, tgrid: &Arc<TimeGrid>, u: impl Fn(f64, f64) -> f64) -> Self {
        let samples: Vec<Vec<f64>> = grid
            .nodes
            .iter()
            .map(|&x| tgrid.nodes.iter().map(|&t| u(x, t)).collect())
            .collect();
        st_interpolate(grid, tgrid, &samples).expect("matching shape")
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let w = gjf_weight(self.grid.alpha, x);
        if w == 0.0 {
            return 0.0;
        }
        tensor_series(&self.modal, &self.grid, &self.tgrid, x, t, w)
    }

    /// (−Δ)^{α/2} of the interpolant at (x, t).
    pub fn frac_laplacian_at(&self, x: f64, t: f64) -> f64 {
        tensor_series(&st_frac_laplacian(self), &self.grid, &self.tgrid, x, t, 1.0)
    }

    /// ∂_t of the interpolant at (x, t).
    pub fn time_derivative_at(&self, x: f64, t: f64) -> Result<f64> {
        let d = st_time_derivative(self)?;
        let w = gjf_weight(self.grid.alpha, x);
        Ok(tensor_series(&d, &self.grid, &self.tgrid, x, t, w))
    }

    pub fn add(&self, other: &SpaceTimeInterpolant) -> Result<SpaceTimeInterpolant> {
        if self.grid.nodes != other.grid.nodes || self.tgrid.nodes != other.tgrid.nodes {
            return Err(Error::Contract("add: interpolants on different grids".into()));
        }
        let values: Vec<Vec<f64>> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(a, b)| a + b).collect())
            .collect();
        st_interpolate(&self.grid, &self.tgrid, &values)
    }

    /// The combined operator ∂_t + (−Δ)^{α/2} of the interpolant, as a
    /// reusable evaluator.
    pub fn operator(&self) -> Result<StOperator> {
        Ok(StOperator {
            grid: Arc::clone(&self.grid),
            tgrid: Arc::clone(&self.tgrid),
            dt: st_time_derivative(self)?,
            lap: st_frac_laplacian(self),
        })
    }
}

/// Precomputed coefficients of (∂_t + (−Δ)^{α/2}) applied to an interpolant.
#[derive(Debug, Clone)]
pub struct StOperator {
    grid: Arc<GjfGrid>,
    tgrid: Arc<TimeGrid>,
    dt: Vec<Vec<f64>>,
    lap: Vec<Vec<f64>>,
}

impl StOperator {
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let w = gjf_weight(self.grid.alpha, x);
        let mut p = Vec::with_capacity(self.dt.len());
        jacobi_eval_all(self.dt.len() - 1, self.grid.index, x, &mut p);
        let mut l = Vec::with_capacity(self.tgrid.len());
        self.tgrid.legendre_at(t, &mut l);
        let mut acc = 0.0;
        for ((d, m), pp) in self.dt.iter().zip(&self.lap).zip(&p) {
            let inner: f64 = d
                .iter()
                .zip(m)
                .zip(&l)
                .map(|((d, m), l)| (w * d + m) * l)
                .sum();
            acc += pp * inner;
        }
        acc
    }
}
