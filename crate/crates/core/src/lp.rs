//! Dense simplex solver for the small linear programs the kernel needs:
//! support values, max-slack interior witnesses and hull-membership checks.
//!
//! Problems are stated as `maximize c·x subject to A x <= b` with `x` free.
//! Internally `x = x⁺ − x⁻` and the slack-form dictionary is pivoted with
//! Bland's rule, so degenerate vertices (common for symmetric bodies) cannot
//! cycle.

use crate::error::{GeomError, Result};

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Dictionary {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
    v: f64,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Dictionary {
    fn pivot(&mut self, r: usize, s: usize) {
        let piv = self.a[r][s];
        let ncols = self.nonbasic.len();
        self.b[r] /= piv;
        for k in 0..ncols {
            if k != s {
                self.a[r][k] /= piv;
            }
        }
        self.a[r][s] = 1.0 / piv;
        let (pivot_row, b_r) = (self.a[r].clone(), self.b[r]);
        for i in 0..self.a.len() {
            if i == r {
                continue;
            }
            let f = self.a[i][s];
            if f == 0.0 {
                continue;
            }
            self.b[i] -= f * b_r;
            let row = &mut self.a[i];
            for k in 0..ncols {
                if k != s {
                    row[k] -= f * pivot_row[k];
                }
            }
            row[s] = -f * pivot_row[s];
        }
        let f = self.c[s];
        if f != 0.0 {
            self.v += f * b_r;
            for k in 0..ncols {
                if k != s {
                    self.c[k] -= f * pivot_row[k];
                }
            }
            self.c[s] = -f * pivot_row[s];
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[s]);
    }

    fn run(&mut self) -> Result<Phase> {
        for _ in 0..MAX_PIVOTS {
            // Bland: smallest variable index with positive reduced cost.
            let entering = (0..self.nonbasic.len())
                .filter(|&s| self.c[s] > PIVOT_EPS)
                .min_by_key(|&s| self.nonbasic[s]);
            let Some(s) = entering else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(f64, usize)> = None;
            for r in 0..self.a.len() {
                let coef = self.a[r][s];
                if coef > PIVOT_EPS {
                    let ratio = self.b[r].max(0.0) / coef;
                    let better = match leave {
                        None => true,
                        Some((best, br)) => {
                            ratio < best - 1e-14 * best.abs().max(1.0)
                                || (ratio <= best + 1e-14 * best.abs().max(1.0)
                                    && self.basic[r] < self.basic[br])
                        }
                    };
                    if better {
                        leave = Some((ratio, r));
                    }
                }
            }
            match leave {
                None => return Ok(Phase::Unbounded),
                Some((_, r)) => self.pivot(r, s),
            }
        }
        Err(GeomError::NumericalFailure("simplex pivot limit reached".into()))
    }
}

/// Maximises `c·x` over `{x : A x <= b}` with `x` unrestricted in sign.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let n = c.len();
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    let nv = 2 * n;
    // Columns 0..nv are x⁺/x⁻, nv..nv+m are slacks, nv+m is the auxiliary x0.
    let rows: Vec<Vec<f64>> = a
        .iter()
        .map(|row| row.iter().copied().chain(row.iter().map(|v| -v)).collect())
        .collect();
    let c_std: Vec<f64> = c.iter().copied().chain(c.iter().map(|v| -v)).collect();

    let mut dict = Dictionary {
        a: rows,
        b: b.to_vec(),
        c: c_std.clone(),
        v: 0.0,
        basic: (nv..nv + m).collect(),
        nonbasic: (0..nv).collect(),
    };

    let (min_row, min_b) = b
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    if m > 0 && min_b < 0.0 {
        let aux = nv + m;
        for row in dict.a.iter_mut() {
            row.push(-1.0);
        }
        dict.nonbasic.push(aux);
        dict.c = vec![0.0; nv + 1];
        dict.c[nv] = -1.0;
        dict.v = 0.0;
        dict.pivot(min_row, nv);
        dict.run()?;
        let scale = b.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        if dict.v < -1e-9 * scale {
            return Ok(LpOutcome::Infeasible);
        }
        if let Some(r) = dict.basic.iter().position(|&v| v == aux) {
            let s = (0..dict.nonbasic.len())
                .max_by(|&x, &y| dict.a[r][x].abs().total_cmp(&dict.a[r][y].abs()))
                .expect("at least one column");
            dict.pivot(r, s);
        }
        let s_aux = dict.nonbasic.iter().position(|&v| v == aux).expect("aux nonbasic");
        for row in dict.a.iter_mut() {
            row.remove(s_aux);
        }
        dict.nonbasic.remove(s_aux);
        dict.c = vec![0.0; nv];
        dict.v = 0.0;
        for (j, &cj) in c_std.iter().enumerate() {
            if cj == 0.0 {
                continue;
            }
            if let Some(s) = dict.nonbasic.iter().position(|&v| v == j) {
                dict.c[s] += cj;
            } else if let Some(r) = dict.basic.iter().position(|&v| v == j) {
                dict.v += cj * dict.b[r];
                for s in 0..nv {
                    dict.c[s] -= cj * dict.a[r][s];
                }
            }
        }
    }

    match dict.run()? {
        Phase::Unbounded => Ok(LpOutcome::Unbounded),
        Phase::Optimal => {
            let mut std_x = vec![0.0; nv];
            for (r, &var) in dict.basic.iter().enumerate() {
                if var < nv {
                    std_x[var] = dict.b[r];
                }
            }
            let x: Vec<f64> = (0..n).map(|i| std_x[i] - std_x[n + i]).collect();
            let value = c.iter().zip(&x).map(|(p, q)| p * q).sum();
            Ok(LpOutcome::Optimal { x, value })
        }
    }
}

/// Point maximising the minimum normalised slack `(b_i − a_i·x)/|a_i|`,
/// i.e. the centre of the largest inscribed ball. Returns `(x, slack)`;
/// the slack is negative when the system is infeasible.
pub fn max_slack_point(a: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let d = a.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(a.len());
    for (row, &bi) in a.iter().zip(b) {
        let nr = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nr == 0.0 {
            if bi < 0.0 {
                return Ok((vec![0.0; d], bi));
            }
            continue;
        }
        let mut r: Vec<f64> = row.iter().map(|v| v / nr).collect();
        r.push(1.0);
        rows.push(r);
        rhs.push(bi / nr);
    }
    let mut c = vec![0.0; d + 1];
    c[d] = 1.0;
    match maximize(&c, &rows, &rhs)? {
        LpOutcome::Optimal { mut x, value } => {
            x.truncate(d);
            Ok((x, value))
        }
        LpOutcome::Unbounded => Err(GeomError::Unbounded),
        // t is free, so the program is always feasible.
        LpOutcome::Infeasible => Err(GeomError::NumericalFailure("max-slack LP infeasible".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_program() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3, x,y >= 0 -> (3,1), 11
        let a = vec![
            vec![1.0, 1.0],
            vec![1.0, 3.0],
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ];
        let b = vec![4.0, 6.0, 3.0, 0.0, 0.0];
        match maximize(&[3.0, 2.0], &a, &b).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 11.0).abs() < 1e-12);
                assert!((x[0] - 3.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // x >= 2, y >= 1, x + y <= 10; max -(x + y) = -3
        let a = vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]];
        let b = vec![-2.0, -1.0, 10.0];
        match maximize(&[-1.0, -1.0], &a, &b).unwrap() {
            LpOutcome::Optimal { value, .. } => assert!((value + 3.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![1.0], vec![-1.0]];
        assert_eq!(maximize(&[1.0], &a, &[1.0, -2.0]).unwrap(), LpOutcome::Infeasible);
        assert_eq!(maximize(&[1.0], &[vec![-1.0]], &[0.0]).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn chebyshev_centre_of_square() {
        let a = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let b = vec![3.0, -1.0, 2.0, 0.0];
        let (x, t) = max_slack_point(&a, &b).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_slack_of_disjoint_system_is_negative() {
        let a = vec![vec![1.0], vec![-1.0]];
        let (_, t) = max_slack_point(&a, &[0.0, -1.0]).unwrap();
        assert!((t + 0.5).abs() < 1e-12);
    }
}
