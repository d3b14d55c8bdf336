//! Two-phase tableau simplex for `min cᵀy s.t. E y = f, y ≥ 0` with Bland's rule.
//!
//! Generic over any exact ordered field; the tableau keeps the artificial
//! columns so simplex multipliers can be read off at the end.

use crate::linalg::Scalar;

/// Result of a standard-form solve.
#[derive(Clone, Debug, PartialEq)]
pub enum StandardOutcome<T> {
    /// `w` with `Eᵀw ≥ 0` and `fᵀw < 0`.
    Infeasible { w: Vec<T> },
    /// Optimal basic solution `y` and multipliers `pi` with `c − Eᵀpi ≥ 0`.
    Optimal { y: Vec<T>, pi: Vec<T> },
    /// Feasible `y` plus a direction `d ≥ 0` with `E d = 0` and `cᵀd < 0`.
    Unbounded { y: Vec<T>, direction: Vec<T> },
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    obj: Vec<T>,
    basis: Vec<usize>,
    real: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.real + self.rows.len()
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        if !piv.is_one() {
            for x in self.rows[p].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / piv.clone();
                }
            }
            self.rhs[p] = self.rhs[p].clone() / piv;
        }
        let support: Vec<usize> = (0..self.width()).filter(|&j| !self.rows[p][j].is_zero()).collect();
        let (prow, prhs) = (self.rows[p].clone(), self.rhs[p].clone());
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let factor = self.rows[i][q].clone();
            for &j in &support {
                self.rows[i][j] = self.rows[i][j].clone() - factor.clone() * prow[j].clone();
            }
            self.rhs[i] = self.rhs[i].clone() - factor * prhs.clone();
        }
        if !self.obj[q].is_zero() {
            let factor = self.obj[q].clone();
            for &j in &support {
                self.obj[j] = self.obj[j].clone() - factor.clone() * prow[j].clone();
            }
        }
        self.basis[p] = q;
    }

    /// Runs Bland's rule over the real columns until optimal or unbounded.
    fn run(&mut self) -> Step {
        loop {
            let entering = (0..self.real).find(|&j| self.obj[j] < T::zero());
            let Some(q) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if *a > T::zero() {
                    let ratio = self.rhs[i].clone() / a.clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((p, _)) => self.pivot(p, q),
                None => return Step::Unbounded(q),
            }
        }
    }

    fn set_objective(&mut self, cost: &dyn Fn(usize) -> T) {
        let width = self.width();
        let mut obj: Vec<T> = (0..width).map(cost).collect();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost(self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = o.clone() - cb.clone() * x.clone();
                }
            }
        }
        self.obj = obj;
    }

    /// Multipliers `c_Bᵀ B⁻¹` for the (row-flipped) system.
    fn multipliers(&self, cost: &dyn Fn(usize) -> T) -> Vec<T> {
        let m = self.rows.len();
        let mut pi = vec![T::zero(); m];
        for (i, row) in self.rows.iter().enumerate() {
            let cb = cost(self.basis[i]);
            if cb.is_zero() {
                continue;
            }
            for k in 0..m {
                let x = &row[self.real + k];
                if !x.is_zero() {
                    pi[k] = pi[k].clone() + cb.clone() * x.clone();
                }
            }
        }
        pi
    }

    fn primal(&self) -> Vec<T> {
        let mut y = vec![T::zero(); self.real];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.real {
                y[b] = self.rhs[i].clone();
            }
        }
        y
    }
}

/// Solves `min costᵀy s.t. E y = f, y ≥ 0`; with no cost only feasibility is decided.
pub fn solve_standard<T: Scalar>(e: &[Vec<T>], f: &[T], cost: Option<&[T]>) -> StandardOutcome<T> {
    let m = e.len();
    assert_eq!(m, f.len(), "row count mismatch");
    let real = e.first().map_or(cost.map_or(0, <[T]>::len), Vec::len);
    let signs: Vec<bool> = f.iter().map(|x| *x < T::zero()).collect();
    let rows = e
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), real, "ragged constraint matrix");
            let mut row: Vec<T> = if signs[i] { r.iter().map(|x| -x.clone()).collect() } else { r.clone() };
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let rhs = f.iter().map(|x| x.abs()).collect();
    let mut t = Tableau { rows, rhs, obj: Vec::new(), basis: (real..real + m).collect(), real };

    let phase1 = |j: usize| if j >= real { T::one() } else { T::zero() };
    t.set_objective(&phase1);
    let Step::Optimal = t.run() else {
        unreachable!("phase one objective is bounded below");
    };
    let infeasibility = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= real)
        .fold(T::zero(), |acc, (_, x)| acc + x.clone());
    if infeasibility > T::zero() {
        let pi = t.multipliers(&phase1);
        let w = pi
            .into_iter()
            .zip(&signs)
            .map(|(p, &flip)| if flip { p } else { -p })
            .collect();
        return StandardOutcome::Infeasible { w };
    }

    // drive zero-level artificials out of the basis where possible
    for i in 0..m {
        if t.basis[i] >= real {
            if let Some(q) = (0..real).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, q);
            }
        }
    }

    let Some(c) = cost else {
        return StandardOutcome::Optimal { y: t.primal(), pi: vec![T::zero(); m] };
    };
    assert_eq!(c.len(), real, "cost length mismatch");
    let phase2 = |j: usize| if j < real { c[j].clone() } else { T::zero() };
    t.set_objective(&phase2);
    match t.run() {
        Step::Optimal => {
            let pi = t
                .multipliers(&phase2)
                .into_iter()
                .zip(&signs)
                .map(|(p, &flip)| if flip { -p } else { p })
                .collect();
            StandardOutcome::Optimal { y: t.primal(), pi }
        }
        Step::Unbounded(q) => {
            let mut direction = vec![T::zero(); real];
            direction[q] = T::one();
            for (i, &b) in t.basis.iter().enumerate() {
                if b < real {
                    direction[b] = -t.rows[i][q].clone();
                }
            }
            StandardOutcome::Unbounded { y: t.primal(), direction }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(x: i64) -> Q {
        Q::from_integer(x)
    }

    #[test]
    fn small_optimum() {
        // min -y0 - y1 s.t. y0 + y2 = 1, y1 + y3 = 1
        let e = vec![vec![q(1), q(0), q(1), q(0)], vec![q(0), q(1), q(0), q(1)]];
        let f = vec![q(1), q(1)];
        let c = vec![q(-1), q(-1), q(0), q(0)];
        match solve_standard(&e, &f, Some(&c)) {
            StandardOutcome::Optimal { y, pi } => {
                assert_eq!(y, vec![q(1), q(1), q(0), q(0)]);
                assert_eq!(pi, vec![q(-1), q(-1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_ray() {
        // y0 = -1 with y0 >= 0
        let e = vec![vec![q(1)]];
        let f = vec![q(-1)];
        match solve_standard(&e, &f, None) {
            StandardOutcome::Infeasible { w } => {
                assert!(w[0] >= q(0));
                assert!(f[0] * w[0] < q(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbounded_direction() {
        // min -y0 s.t. y0 - y1 = 0
        let e = vec![vec![q(1), q(-1)]];
        let f = vec![q(0)];
        let c = vec![q(-1), q(0)];
        match solve_standard(&e, &f, Some(&c)) {
            StandardOutcome::Unbounded { direction, .. } => {
                assert_eq!(direction[0] - direction[1], q(0));
                assert!(direction[0] > q(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_rows() {
        let e = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let f = vec![q(1), q(2)];
        let c = vec![q(1), q(2)];
        match solve_standard(&e, &f, Some(&c)) {
            StandardOutcome::Optimal { y, pi } => {
                assert_eq!(y, vec![q(1), q(0)]);
                for j in 0..2 {
                    let reduced = c[j] - (pi[0] * e[0][j] + pi[1] * e[1][j]);
                    assert!(reduced >= q(0));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
