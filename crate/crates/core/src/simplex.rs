//! Dense phase-1 simplex for tiny feasibility problems `A x = b, x ≥ 0`.
//!
//! Bland's rule throughout, so no cycling. When the system is infeasible the
//! final phase-1 duals give a Farkas certificate `y` with `yᵀA ≤ 0` and
//! `yᵀb > 0`, which [`verify_farkas`] can check independently of the tableau.

/// Pivot and feasibility tolerance.
pub const LP_TOL: f64 = 1e-9;

const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Feasible {
        x: Vec<f64>,
        /// `max |Ax − b|` at the returned point.
        residual: f64,
    },
    Infeasible {
        /// Optimal value of the phase-1 problem `min Σ artificials`.
        phase1_objective: f64,
        farkas: Vec<f64>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }
}

/// Equality-constrained feasibility problem with nonnegative variables.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    /// Sparse rows: `(coefficients, rhs)`.
    pub rows: Vec<(Vec<(usize, f64)>, f64)>,
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        self.rows.push((coeffs, rhs));
    }

    fn dense(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|(coeffs, _)| {
                let mut row = vec![0.0; self.num_vars];
                for &(j, a) in coeffs {
                    row[j] += a;
                }
                row
            })
            .collect()
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.rows.iter().map(|(_, b)| *b).collect()
    }

    pub fn residual(&self, x: &[f64]) -> f64 {
        self.rows
            .iter()
            .map(|(coeffs, b)| (coeffs.iter().map(|&(j, a)| a * x[j]).sum::<f64>() - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn solve(&self) -> LpOutcome {
        phase_one(&self.dense(), &self.rhs(), self.num_vars)
    }

    /// Checks `yᵀA ≤ tol` componentwise and `yᵀb > tol`.
    pub fn verify_farkas(&self, y: &[f64], tol: f64) -> bool {
        verify_farkas(&self.dense(), &self.rhs(), y, tol)
    }
}

pub fn verify_farkas(a: &[Vec<f64>], b: &[f64], y: &[f64], tol: f64) -> bool {
    if y.len() != a.len() {
        return false;
    }
    let n = a.first().map_or(0, |r| r.len());
    let yb: f64 = y.iter().zip(b).map(|(y, b)| y * b).sum();
    let cols_ok = (0..n).all(|j| a.iter().zip(y).map(|(row, yi)| row[j] * yi).sum::<f64>() <= tol);
    cols_ok && yb > tol
}

/// Minimizes the sum of artificial variables for `A x = b, x ≥ 0`.
pub fn phase_one(a: &[Vec<f64>], b: &[f64], n: usize) -> LpOutcome {
    let m = a.len();
    let width = n + m + 1;
    let rhs = width - 1;
    let sign: Vec<f64> = b.iter().map(|v| if *v < 0.0 { -1.0 } else { 1.0 }).collect();

    // Rows 0..m are constraints, row m is the reduced-cost row.
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        for j in 0..n {
            t[i][j] = sign[i] * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][rhs] = sign[i] * b[i];
    }
    for j in 0..n {
        t[m][j] = -(0..m).map(|i| t[i][j]).sum::<f64>();
    }
    t[m][rhs] = -(0..m).map(|i| t[i][rhs]).sum::<f64>();
    let mut basis: Vec<usize> = (n..n + m).collect();

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..n + m).find(|&j| t[m][j] < -LP_TOL) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][enter] > LP_TOL {
                let ratio = t[i][rhs] / t[i][enter];
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = t[l][rhs] / t[l][enter];
                        if ratio < best - LP_TOL || (ratio <= best + LP_TOL && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        // Phase 1 is bounded below by zero, so a pivot row always exists.
        let Some(row) = leave else { break };
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    let objective = -t[m][rhs];
    if objective > LP_TOL {
        // Reduced cost of artificial i is 1 − yᵢ.
        let farkas = (0..m).map(|i| sign[i] * (1.0 - t[m][n + i])).collect();
        return LpOutcome::Infeasible {
            phase1_objective: objective,
            farkas,
        };
    }
    let mut x = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][rhs].max(0.0);
        }
    }
    let residual = a
        .iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(&x).map(|(a, x)| a * x).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max);
    LpOutcome::Feasible { x, residual }
}

fn pivot(t: &mut [Vec<f64>], row: usize, col: usize) {
    let p = t[row][col];
    for v in t[row].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let factor = r[col];
        if factor != 0.0 {
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                *v -= factor * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x - y = 0.2
        let mut s = LinearSystem::new();
        let x = s.add_var();
        let y = s.add_var();
        s.add_row(vec![(x, 1.0), (y, 1.0)], 1.0);
        s.add_row(vec![(x, 1.0), (y, -1.0)], 0.2);
        match s.solve() {
            LpOutcome::Feasible { x: sol, residual } => {
                assert!((sol[0] - 0.6).abs() < 1e-12 && (sol[1] - 0.4).abs() < 1e-12);
                assert!(residual < 1e-12);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_system_has_farkas_certificate() {
        // x + y = 1, x + y = 2
        let mut s = LinearSystem::new();
        let x = s.add_var();
        let y = s.add_var();
        s.add_row(vec![(x, 1.0), (y, 1.0)], 1.0);
        s.add_row(vec![(x, 1.0), (y, 1.0)], 2.0);
        match s.solve() {
            LpOutcome::Infeasible { farkas, phase1_objective } => {
                assert!((phase1_objective - 1.0).abs() < 1e-12);
                assert!(s.verify_farkas(&farkas, LP_TOL));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn nonnegativity_makes_system_infeasible() {
        // x = -1 with x >= 0
        let mut s = LinearSystem::new();
        let x = s.add_var();
        s.add_row(vec![(x, 1.0)], -1.0);
        let LpOutcome::Infeasible { farkas, .. } = s.solve() else { panic!("feasible") };
        assert!(s.verify_farkas(&farkas, LP_TOL));
    }

    #[test]
    fn empty_row_with_nonzero_rhs() {
        let mut s = LinearSystem::new();
        s.add_var();
        s.add_row(vec![], 1.0);
        assert!(!s.solve().is_feasible());
    }

    #[test]
    fn redundant_and_degenerate_rows() {
        let mut s = LinearSystem::new();
        let v: Vec<usize> = (0..4).map(|_| s.add_var()).collect();
        s.add_row(vec![(v[0], 1.0), (v[1], 1.0)], 1.0);
        s.add_row(vec![(v[0], 2.0), (v[1], 2.0)], 2.0);
        s.add_row(vec![(v[2], 1.0), (v[3], -1.0)], 0.0);
        s.add_row(vec![(v[2], 1.0), (v[3], 1.0), (v[0], -1.0)], 0.0);
        let LpOutcome::Feasible { x, residual } = s.solve() else { panic!("infeasible") };
        assert!(residual < 1e-12);
        assert!(x.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn farkas_check_rejects_non_certificates() {
        let a = vec![vec![1.0, 1.0]];
        assert!(!verify_farkas(&a, &[1.0], &[1.0], 1e-9));
        assert!(!verify_farkas(&a, &[1.0], &[-1.0], 1e-9));
        assert!(!verify_farkas(&a, &[1.0], &[], 1e-9));
    }
}
