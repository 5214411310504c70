//! Lovasz theta by a primal-dual interior point method.
//!
//! Primal: maximize `<J, X>` over `X >= 0` with `tr X = 1` and `X_uv = 0` on
//! every edge. The solver works on the equivalent minimization of
//! `<-J, X>` with Nesterov-Todd scaling and Mehrotra predictor-corrector
//! steps, then re-derives both bounds from the final iterate:
//! the cleaned primal matrix gives a lower bound and
//! `lambda_max(J + Y)` for the edge multipliers `Y` gives an upper bound.

use super::{maximum_independent_set, ExclusivityGraph};
use crate::error::{Error, Result};
use crate::linalg::real::{min_eigenvalue, solve_spd, sym_eigen, RealMatrix};

#[derive(Debug, Clone, Copy)]
pub struct ThetaOptions {
    /// Largest accepted gap between the certified lower and upper bounds.
    pub tol: f64,
    pub max_iterations: usize,
    /// Iterations of the alternating-projection fallback.
    pub projection_iterations: usize,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iterations: 100,
            projection_iterations: 20_000,
        }
    }
}

/// Optimal Gram matrix together with the dual certificate.
#[derive(Debug, Clone)]
pub struct ThetaCertificate {
    /// `<J, X>` of the feasible Gram matrix: a lower bound on theta.
    pub theta: f64,
    /// `lambda_max(J + Y)`: an upper bound on theta.
    pub upper_bound: f64,
    /// Unit-trace PSD matrix vanishing on edges.
    pub gram: RealMatrix,
    /// Multiplier for each edge, in `ExclusivityGraph::edges` order.
    pub edge_multipliers: Vec<f64>,
    pub iterations: usize,
    /// True when the projection fallback produced the primal matrix.
    pub refined: bool,
}

impl ThetaCertificate {
    pub fn gap(&self) -> f64 {
        self.upper_bound - self.theta
    }

    /// Re-checks every certificate property from scratch.
    pub fn validate(&self, g: &ExclusivityGraph, tol: f64) -> Result<()> {
        let n = g.n();
        let fail = |msg: String| Err(Error::NonConvergence {
            what: "theta certificate",
            detail: msg,
        });
        if self.gram.n() != n {
            return fail(format!("Gram matrix has size {}", self.gram.n()));
        }
        if n == 0 {
            return Ok(());
        }
        if (self.gram.trace() - 1.0).abs() > 1e-9 {
            return fail(format!("trace {}", self.gram.trace()));
        }
        for (u, v) in g.edges() {
            if self.gram[(u, v)].abs() > 1e-9 {
                return fail(format!("edge ({u},{v}) carries {:e}", self.gram[(u, v)]));
            }
        }
        let min = min_eigenvalue(&self.gram)?;
        if min < -1e-8 {
            return fail(format!("Gram matrix eigenvalue {min:e}"));
        }
        if (self.gram.sum() - self.theta).abs() > 1e-9 {
            return fail("objective does not match Gram matrix".into());
        }
        let upper = dual_bound(g, &self.edge_multipliers)?;
        if upper > self.upper_bound + 1e-9 {
            return fail(format!("dual bound {upper} exceeds reported {}", self.upper_bound));
        }
        if self.gap() > tol || self.gap() < -1e-9 {
            return fail(format!("gap {:e}", self.gap()));
        }
        Ok(())
    }
}

/// Lovasz number with the requested duality-gap tolerance (at least `1e-9`).
pub fn lovasz_theta(g: &ExclusivityGraph, tol: f64) -> Result<ThetaCertificate> {
    lovasz_theta_with(
        g,
        &ThetaOptions {
            tol,
            ..ThetaOptions::default()
        },
    )
}

pub fn lovasz_theta_with(g: &ExclusivityGraph, opts: &ThetaOptions) -> Result<ThetaCertificate> {
    g.check_budget()?;
    if !(opts.tol >= 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "theta tolerance {:e} is below 1e-9",
            opts.tol
        )));
    }
    let n = g.n();
    if n == 0 {
        return Ok(ThetaCertificate {
            theta: 0.0,
            upper_bound: 0.0,
            gram: RealMatrix::zeros(0),
            edge_multipliers: Vec::new(),
            iterations: 0,
            refined: false,
        });
    }
    let mut solver = Solver::new(g);
    let outcome = solver.run(opts);
    let ipm_error = outcome.err();

    if solver.record_certificate() > opts.tol {
        solver.polish();
    }
    if solver.best.as_ref().is_some_and(|b| b.gap() > opts.tol) {
        // When theta equals alpha the optimal face is not a single point and
        // the barrier iterate stalls inside it; a maximum independent set is
        // then an exact optimum.
        let set = maximum_independent_set(g)?;
        let k = set.len() as f64;
        let gram = RealMatrix::from_fn(n, |i, j| {
            if set.contains(&i) && set.contains(&j) {
                1.0 / k
            } else {
                0.0
            }
        });
        solver.offer(ThetaCertificate {
            theta: gram.sum(),
            upper_bound: f64::INFINITY,
            gram,
            edge_multipliers: Vec::new(),
            iterations: 0,
            refined: false,
        });
    }
    let mut cert = solver.best.take().expect("recorded above");
    if cert.gap() > opts.tol {
        if let Some(x) = dykstra(g, &solver.x, cert.upper_bound - 0.5 * opts.tol, opts) {
            let theta = x.sum();
            if theta > cert.theta {
                cert.theta = theta;
                cert.gram = x;
                cert.refined = true;
            }
        }
    }
    if cert.gap() > opts.tol {
        return Err(Error::NonConvergence {
            what: "Lovasz theta solver",
            detail: match ipm_error {
                Some(e) => format!("gap {:e} after {e}", cert.gap()),
                None => format!("gap {:e}", cert.gap()),
            },
        });
    }
    Ok(cert)
}

/// `lambda_max(J + Y)` where `Y` carries the edge multipliers symmetrically.
fn dual_bound(g: &ExclusivityGraph, multipliers: &[f64]) -> Result<f64> {
    let n = g.n();
    let mut m = RealMatrix::filled(n, 1.0);
    for ((u, v), &y) in g.edges().into_iter().zip(multipliers) {
        m[(u, v)] += y;
        m[(v, u)] += y;
    }
    let (vals, _) = sym_eigen(&m)?;
    Ok(vals.last().copied().unwrap_or(0.0))
}

struct Solver {
    n: usize,
    edges: Vec<(usize, usize)>,
    x: RealMatrix,
    /// `y[0]` multiplies the trace constraint, `y[1..]` the edges.
    y: Vec<f64>,
    z: RealMatrix,
    iterations: usize,
    graph: ExclusivityGraph,
    /// Certificate with the smallest gap seen so far.
    best: Option<ThetaCertificate>,
}

struct Scaling {
    g: RealMatrix,
    g_inv: RealMatrix,
    w: RealMatrix,
    d: Vec<f64>,
}

struct Direction {
    dx: RealMatrix,
    dy: Vec<f64>,
    dz: RealMatrix,
}

impl Solver {
    fn new(graph: &ExclusivityGraph) -> Self {
        let n = graph.n();
        let edges = graph.edges();
        let m = edges.len() + 1;
        let mut y = vec![0.0; m];
        y[0] = -(n as f64 + 1.0);
        let z = RealMatrix::identity(n)
            .scale(n as f64 + 1.0)
            .sub(&RealMatrix::filled(n, 1.0));
        Self {
            n,
            edges,
            x: RealMatrix::identity(n).scale(1.0 / n as f64),
            y,
            z,
            iterations: 0,
            graph: graph.clone(),
            best: None,
        }
    }

    fn a_op(&self, x: &RealMatrix) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(x.trace());
        out.extend(self.edges.iter().map(|&(u, v)| x[(u, v)] + x[(v, u)]));
        out
    }

    fn at_op(&self, y: &[f64]) -> RealMatrix {
        let mut m = RealMatrix::identity(self.n).scale(y[0]);
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            m[(u, v)] += y[k + 1];
            m[(v, u)] += y[k + 1];
        }
        m
    }

    fn cost(&self) -> RealMatrix {
        RealMatrix::filled(self.n, -1.0)
    }

    fn run(&mut self, opts: &ThetaOptions) -> Result<()> {
        let n = self.n as f64;
        for _ in 0..opts.max_iterations {
            if self.record_certificate() <= opts.tol {
                return Ok(());
            }
            let ax = self.a_op(&self.x);
            let rp: Vec<f64> = ax
                .iter()
                .enumerate()
                .map(|(k, v)| if k == 0 { 1.0 - v } else { -v })
                .collect();
            let rd = self.cost().sub(&self.z).sub(&self.at_op(&self.y));
            let mu = self.x.dot(&self.z) / n;
            let pobj = self.cost().dot(&self.x);
            let dobj = self.y[0];
            let pinf = rp.iter().map(|v| v * v).sum::<f64>().sqrt();
            let dinf = rd.frobenius_norm();
            if (pobj - dobj).abs() <= 0.1 * opts.tol && pinf <= 1e-12 && dinf <= 1e-11 {
                return Ok(());
            }
            if mu < 1e-15 {
                return Ok(());
            }
            self.iterations += 1;

            let sc = self.scaling()?;
            let schur = self.schur(&sc.w);

            let predictor_rc = self.x.scale(-1.0);
            let pred = self.direction(&sc, &schur, &rp, &rd, &predictor_rc)?;
            let ap = step_bound(&sc.d, &sc.g_inv.matmul(&pred.dx).matmul(&sc.g_inv.transpose()))?
                .min(1.0);
            let ad = step_bound(&sc.d, &sc.g.transpose().matmul(&pred.dz).matmul(&sc.g))?.min(1.0);
            let mu_aff = self
                .x
                .add_scaled(&pred.dx, ap)
                .dot(&self.z.add_scaled(&pred.dz, ad))
                / n;
            let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

            let dxt = sc.g_inv.matmul(&pred.dx).matmul(&sc.g_inv.transpose());
            let dzt = sc.g.transpose().matmul(&pred.dz).matmul(&sc.g);
            let second = dxt.matmul(&dzt).symmetrize();
            let rt = RealMatrix::from_fn(self.n, |i, j| {
                let mut h = -second[(i, j)];
                if i == j {
                    h += sigma * mu - sc.d[i] * sc.d[i];
                }
                2.0 * h / (sc.d[i] + sc.d[j])
            });
            let rc = sc.g.matmul(&rt).matmul(&sc.g.transpose());
            let dir = self.direction(&sc, &schur, &rp, &rd, &rc)?;

            let dxt = sc.g_inv.matmul(&dir.dx).matmul(&sc.g_inv.transpose());
            let dzt = sc.g.transpose().matmul(&dir.dz).matmul(&sc.g);
            let ap = (0.95 * step_bound(&sc.d, &dxt)?).min(1.0);
            let ad = (0.95 * step_bound(&sc.d, &dzt)?).min(1.0);
            let (x, _) = interior_step(&self.x, &dir.dx, ap)?;
            let (z, ad) = interior_step(&self.z, &dir.dz, ad)?;
            self.x = x;
            self.z = z;
            for (y, dy) in self.y.iter_mut().zip(&dir.dy) {
                *y += ad * dy;
            }
        }
        Err(Error::NonConvergence {
            what: "interior point iteration",
            detail: format!("{} iterations", opts.max_iterations),
        })
    }

    /// Nesterov-Todd scaling `W = G G^T` with `G^-1 X G^-T = G^T Z G = D`.
    fn scaling(&self) -> Result<Scaling> {
        let l = self.x.cholesky()?;
        let l_inv = l.lower_inverse();
        let t = l.transpose().matmul(&self.z).matmul(&l);
        let (lam, u) = sym_eigen(&t)?;
        if lam.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::NonConvergence {
                what: "interior point scaling",
                detail: "iterate left the cone interior".into(),
            });
        }
        let d: Vec<f64> = lam.iter().map(|v| v.sqrt()).collect();
        let n = self.n;
        let lu = l.matmul(&u);
        let g = RealMatrix::from_fn(n, |r, c| lu[(r, c)] / d[c].sqrt());
        let ut_linv = u.transpose().matmul(&l_inv);
        let g_inv = RealMatrix::from_fn(n, |r, c| d[r].sqrt() * ut_linv[(r, c)]);
        let w = g.matmul(&g.transpose());
        Ok(Scaling { g, g_inv, w, d })
    }

    /// Schur complement `M_kl = tr(A_k W A_l W)`.
    fn schur(&self, w: &RealMatrix) -> RealMatrix {
        let m = self.edges.len() + 1;
        let w2 = w.matmul(w);
        let mut s = RealMatrix::zeros(m);
        s[(0, 0)] = w.dot(w);
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            let v = 2.0 * w2[(i, j)];
            s[(0, k + 1)] = v;
            s[(k + 1, 0)] = v;
            for (l, &(p, q)) in self.edges.iter().enumerate().skip(k) {
                let v = 2.0 * (w[(j, p)] * w[(q, i)] + w[(j, q)] * w[(p, i)]);
                s[(k + 1, l + 1)] = v;
                s[(l + 1, k + 1)] = v;
            }
        }
        s
    }

    /// Solves `A(dX) = rp`, `A^T(dy) + dZ = rd`, `dX + W dZ W = rc`.
    fn direction(
        &self,
        sc: &Scaling,
        schur: &RealMatrix,
        rp: &[f64],
        rd: &RealMatrix,
        rc: &RealMatrix,
    ) -> Result<Direction> {
        let wrdw = sc.w.matmul(rd).matmul(&sc.w);
        let a_rc = self.a_op(rc);
        let a_wrdw = self.a_op(&wrdw);
        let rhs: Vec<f64> = (0..rp.len())
            .map(|k| rp[k] - a_rc[k] + a_wrdw[k])
            .collect();
        let dy = solve_schur(schur, &rhs)?;
        let dz = rd.sub(&self.at_op(&dy)).symmetrize();
        let dx = rc.sub(&sc.w.matmul(&dz).matmul(&sc.w)).symmetrize();
        Ok(Direction { dx, dy, dz })
    }

    /// Certifies the current iterate and returns its gap. The best lower
    /// and upper bounds seen so far are kept independently, since each is
    /// valid on its own.
    fn record_certificate(&mut self) -> f64 {
        let cert = self.certificate();
        let gap = cert.gap();
        self.offer(cert);
        gap
    }

    fn offer(&mut self, cert: ThetaCertificate) {
        let Some(best) = self.best.as_mut() else {
            self.best = Some(cert);
            return;
        };
        if cert.theta > best.theta {
            best.theta = cert.theta;
            best.gram = cert.gram;
            best.refined = cert.refined;
        }
        if cert.upper_bound < best.upper_bound {
            best.upper_bound = cert.upper_bound;
            best.edge_multipliers = cert.edge_multipliers;
        }
        best.iterations = self.iterations;
    }

    /// Facial refinement of the final iterate. For a guessed rank `r`, with
    /// `U` the top `r` eigenvectors of `X`, the primal is restricted to
    /// `X = U S U^T` and corrected to satisfy the constraints exactly, while
    /// the multipliers are corrected so that `J + Y` has `U` as an
    /// eigenspace. Both corrections are minimum-norm least squares. Near a
    /// nondegenerate optimum this removes the accuracy floor that the
    /// barrier leaves behind.
    fn polish(&mut self) {
        let Ok((vals, vecs)) = sym_eigen(&self.x) else {
            return;
        };
        let n = self.n;
        let mut ranks: Vec<(f64, usize)> = (1..n)
            .filter(|&r| vals[n - r - 1] > 0.0)
            .map(|r| (vals[n - r] / vals[n - r - 1], r))
            .collect();
        ranks.sort_by(|a, b| b.0.total_cmp(&a.0));
        for &(_, r) in ranks.iter().take(3) {
            let u = Rect::from_fn(n, r, |i, k| vecs[(i, n - r + k)]);
            let gram = self.polish_primal(&u);
            let edge_multipliers = self.polish_dual(&u);
            let (Some(gram), Some(edge_multipliers)) = (gram, edge_multipliers) else {
                continue;
            };
            let gram = clean_primal(&self.graph, &gram);
            let upper_bound = dual_bound(&self.graph, &edge_multipliers).unwrap_or(f64::INFINITY);
            self.offer(ThetaCertificate {
                theta: gram.sum(),
                upper_bound,
                gram,
                edge_multipliers,
                iterations: self.iterations,
                refined: false,
            });
        }
    }

    /// `U S U^T` with `S = U^T X U` moved the least distance onto the
    /// constraint set `tr = 1`, zero on edges.
    fn polish_primal(&self, u: &Rect) -> Option<RealMatrix> {
        let r = u.cols;
        let s0 = u.congruence_t(&self.x);
        // Projected constraint matrices P_k = U^T A_k U.
        let mut p = Vec::with_capacity(self.edges.len() + 1);
        p.push(RealMatrix::identity(r));
        for &(a, b) in &self.edges {
            p.push(RealMatrix::from_fn(r, |i, j| {
                u.at(a, i) * u.at(b, j) + u.at(b, i) * u.at(a, j)
            }));
        }
        let m = p.len();
        let gram = RealMatrix::from_fn(m, |k, l| p[k].dot(&p[l]));
        let res: Vec<f64> = p
            .iter()
            .enumerate()
            .map(|(k, pk)| if k == 0 { 1.0 } else { 0.0 } - pk.dot(&s0))
            .collect();
        let c = solve_psd_pinv(&gram, &res).ok()?;
        let mut s = s0;
        for (pk, ck) in p.iter().zip(&c) {
            s = s.add_scaled(pk, *ck);
        }
        if min_eigenvalue(&s).ok()? < 0.0 {
            return None;
        }
        Some(u.congruence(&s))
    }

    /// Edge multipliers corrected so that `(J + Y) U = t U` holds in the
    /// least-squares sense.
    fn polish_dual(&self, u: &Rect) -> Option<Vec<f64>> {
        let n = self.n;
        let r = u.cols;
        let y0 = &self.y[1..];
        let t0 = -self.y[0];
        let mut m = RealMatrix::filled(n, 1.0);
        for (&(a, b), &y) in self.edges.iter().zip(y0) {
            m[(a, b)] += y;
            m[(b, a)] += y;
        }
        // Residual R = t U - (J + Y) U, and the images of each unknown.
        let mu = u.left_mul(&m);
        let residual: Vec<f64> = (0..n * r)
            .map(|idx| t0 * u.data[idx] - mu.data[idx])
            .collect();
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(self.edges.len() + 1);
        columns.push(u.data.iter().map(|v| -v).collect());
        for &(a, b) in &self.edges {
            let mut col = vec![0.0; n * r];
            for k in 0..r {
                col[a * r + k] += u.at(b, k);
                col[b * r + k] += u.at(a, k);
            }
            columns.push(col);
        }
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        let k = columns.len();
        let normal = RealMatrix::from_fn(k, |i, j| dot(&columns[i], &columns[j]));
        let rhs: Vec<f64> = columns.iter().map(|col| dot(col, &residual)).collect();
        let delta = solve_psd_pinv(&normal, &rhs).ok()?;
        Some(y0.iter().zip(&delta[1..]).map(|(y, d)| y + d).collect())
    }

    /// Cleans the current iterate into a feasible primal point and a valid
    /// dual bound.
    fn certificate(&self) -> ThetaCertificate {
        let edge_multipliers: Vec<f64> = self.y[1..].to_vec();
        let gram = clean_primal(&self.graph, &self.x);
        let theta = gram.sum();
        let upper_bound = dual_bound(&self.graph, &edge_multipliers).unwrap_or(f64::INFINITY);
        ThetaCertificate {
            theta,
            upper_bound,
            gram,
            edge_multipliers,
            iterations: self.iterations,
            refined: false,
        }
    }
}

/// Dense row-major `rows x cols` matrix with orthonormal columns.
struct Rect {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Rect {
    fn at(&self, i: usize, k: usize) -> f64 {
        self.data[i * self.cols + k]
    }

    /// `U^T A U`.
    fn congruence_t(&self, a: &RealMatrix) -> RealMatrix {
        let au = self.left_mul(a);
        RealMatrix::from_fn(self.cols, |k, l| {
            (0..self.rows).map(|i| self.at(i, k) * au.at(i, l)).sum()
        })
    }

    /// `U S U^T`.
    fn congruence(&self, s: &RealMatrix) -> RealMatrix {
        let us = Self::from_fn(self.rows, self.cols, |i, l| {
            (0..self.cols).map(|k| self.at(i, k) * s[(k, l)]).sum()
        });
        RealMatrix::from_fn(self.rows, |i, j| {
            (0..self.cols).map(|k| us.at(i, k) * self.at(j, k)).sum()
        })
    }

    /// `A U`.
    fn left_mul(&self, a: &RealMatrix) -> Self {
        Self::from_fn(self.rows, self.cols, |i, k| {
            (0..self.rows).map(|j| a[(i, j)] * self.at(j, k)).sum()
        })
    }

    fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for k in 0..cols {
                data.push(f(i, k));
            }
        }
        Self { rows, cols, data }
    }
}

/// Cholesky solve, retried with growing diagonal jitter before falling back
/// to the pseudo-inverse.
fn solve_schur(m: &RealMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if let Ok(x) = solve_spd(m, rhs) {
        return Ok(x);
    }
    let scale = (0..m.n()).map(|i| m[(i, i)]).fold(0.0, f64::max);
    for rel in [1e-14, 1e-12, 1e-10] {
        let jittered = m.add(&RealMatrix::identity(m.n()).scale(rel * scale));
        if let Ok(x) = solve_spd(&jittered, rhs) {
            return Ok(x);
        }
    }
    solve_psd_pinv(m, rhs)
}

/// Least-squares solve of a symmetric positive semidefinite system through its
/// eigendecomposition, dropping directions below `1e-14` of the largest
/// eigenvalue. Used when the Schur complement is too ill-conditioned for
/// Cholesky near a degenerate optimum.
fn solve_psd_pinv(m: &RealMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let (vals, vecs) = sym_eigen(m)?;
    let cutoff = vals.last().copied().unwrap_or(0.0).max(0.0) * 1e-14;
    let n = m.n();
    let mut out = vec![0.0; n];
    for k in 0..n {
        if vals[k] <= cutoff {
            continue;
        }
        let coef: f64 = (0..n).map(|i| vecs[(i, k)] * rhs[i]).sum::<f64>() / vals[k];
        for i in 0..n {
            out[i] += coef * vecs[(i, k)];
        }
    }
    Ok(out)
}

/// `m + alpha * d`, halving `alpha` until the result still factors as
/// positive definite; rounding can otherwise push a near-singular iterate
/// out of the cone.
fn interior_step(m: &RealMatrix, d: &RealMatrix, alpha: f64) -> Result<(RealMatrix, f64)> {
    let mut alpha = alpha;
    for _ in 0..30 {
        let next = m.add_scaled(d, alpha).symmetrize();
        if next.cholesky().is_ok() {
            return Ok((next, alpha));
        }
        alpha *= 0.5;
    }
    Err(Error::NonConvergence {
        what: "interior point step",
        detail: "no positive definite step found".into(),
    })
}

/// Largest `alpha` with `D + alpha * S` positive semidefinite, for diagonal `D`.
fn step_bound(d: &[f64], s: &RealMatrix) -> Result<f64> {
    let n = d.len();
    let scaled = RealMatrix::from_fn(n, |i, j| s[(i, j)] / (d[i] * d[j]).sqrt());
    let min = min_eigenvalue(&scaled)?;
    Ok(if min >= 0.0 { f64::INFINITY } else { -1.0 / min })
}

/// Zeroes edge entries, renormalizes the trace and shifts towards the identity
/// just enough to remove negative eigenvalues.
fn clean_primal(g: &ExclusivityGraph, x: &RealMatrix) -> RealMatrix {
    let n = g.n();
    let mut m = x.symmetrize();
    for (u, v) in g.edges() {
        m[(u, v)] = 0.0;
        m[(v, u)] = 0.0;
    }
    let tr = m.trace();
    if tr > 0.0 {
        m = m.scale(1.0 / tr);
    }
    if let Ok(min) = min_eigenvalue(&m) {
        if min < 0.0 {
            let shift = -min;
            m = m
                .add(&RealMatrix::identity(n).scale(shift))
                .scale(1.0 / (1.0 + n as f64 * shift));
        }
    }
    m
}

/// Dykstra alternating projections onto the feasible affine set, the PSD cone
/// and the half-space `<J, X> >= target`, started from `x0`.
fn dykstra(
    g: &ExclusivityGraph,
    x0: &RealMatrix,
    target: f64,
    opts: &ThetaOptions,
) -> Option<RealMatrix> {
    let n = g.n();
    let edges = g.edges();
    let project_affine = |m: &RealMatrix| {
        let mut out = m.clone();
        for &(u, v) in &edges {
            out[(u, v)] = 0.0;
            out[(v, u)] = 0.0;
        }
        let shift = (1.0 - out.trace()) / n as f64;
        for i in 0..n {
            out[(i, i)] += shift;
        }
        out
    };
    let project_psd = |m: &RealMatrix| -> Option<RealMatrix> {
        let (vals, vecs) = sym_eigen(m).ok()?;
        let clipped: Vec<f64> = vals.iter().map(|v| v.max(0.0)).collect();
        Some(
            vecs.matmul(&RealMatrix::diagonal(&clipped))
                .matmul(&vecs.transpose()),
        )
    };
    let project_half = |m: &RealMatrix| {
        let s = m.sum();
        if s >= target {
            m.clone()
        } else {
            m.add(&RealMatrix::filled(n, (target - s) / (n * n) as f64))
        }
    };

    let mut x = x0.clone();
    let mut p = RealMatrix::zeros(n);
    let mut q = RealMatrix::zeros(n);
    let mut r = RealMatrix::zeros(n);
    for it in 0..opts.projection_iterations {
        let a = project_affine(&x.add(&p));
        p = x.add(&p).sub(&a);
        let b = project_psd(&a.add(&q))?;
        q = a.add(&q).sub(&b);
        let c = project_half(&b.add(&r));
        r = b.add(&r).sub(&c);
        x = c;
        if it % 50 == 49 {
            let candidate = clean_primal(g, &x);
            if candidate.sum() >= target {
                return Some(candidate);
            }
        }
    }
    let candidate = clean_primal(g, &x);
    (candidate.sum() >= target).then_some(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, icosahedron};

    #[test]
    fn five_cycle_gives_sqrt_five() {
        let g = cycle(5);
        let cert = lovasz_theta(&g, 1e-9).unwrap();
        assert!((cert.theta - 5f64.sqrt()).abs() < 1e-8, "{}", cert.theta);
        cert.validate(&g, 1e-9).unwrap();
    }

    #[test]
    fn icosahedron_value() {
        let g = icosahedron();
        let cert = lovasz_theta(&g, 1e-9).unwrap();
        assert!((cert.theta - 3.0 * (5f64.sqrt() - 1.0)).abs() < 1e-7);
    }

    #[test]
    fn trivial_graphs() {
        let empty = ExclusivityGraph::new(4);
        assert!((lovasz_theta(&empty, 1e-8).unwrap().theta - 4.0).abs() < 1e-7);
        let k4 = crate::graph::builtin_graph("k4").unwrap();
        assert!((lovasz_theta(&k4, 1e-8).unwrap().theta - 1.0).abs() < 1e-7);
        let single = ExclusivityGraph::new(1);
        assert!((lovasz_theta(&single, 1e-8).unwrap().theta - 1.0).abs() < 1e-7);
    }

    #[test]
    fn tolerance_floor_is_enforced() {
        assert!(lovasz_theta(&cycle(5), 1e-12).is_err());
    }
}
