//! Exact linear programming over inequality systems `A x ≤ b`.
//!
//! All queries are answered through the dual standard form, whose tableau
//! has `n + 1` rows regardless of how many inequalities the system carries.

pub mod simplex;

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{matrix_bit_size, BitSize, IntVector, Integer, RatVector, Rational};
use simplex::{solve_standard, StandardOutcome};

/// The polyhedron `{x : A x ≤ b}` given row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    dim: usize,
    rows: Vec<RatVector>,
    rhs: Vec<Rational>,
}

impl InequalitySystem {
    /// The system with no rows, i.e. all of `Rⁿ`.
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "inequality systems need at least one variable");
        InequalitySystem { dim, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn from_rows(dim: usize, rows: Vec<RatVector>, rhs: Vec<Rational>) -> Result<Self> {
        check_dim(rows.len(), rhs.len())?;
        let mut s = Self::new(dim);
        for (a, b) in rows.into_iter().zip(rhs) {
            s.push(a, b)?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn row(&self, i: usize) -> (&RatVector, &Rational) {
        (&self.rows[i], &self.rhs[i])
    }

    pub fn push(&mut self, a: RatVector, b: Rational) -> Result<()> {
        check_dim(self.dim, a.dim())?;
        self.rows.push(a);
        self.rhs.push(b);
        Ok(())
    }

    pub fn push_int(&mut self, a: &IntVector, b: &Integer) -> Result<()> {
        self.push(a.to_rational(), Rational::from_integer(b.clone()))
    }

    /// Adds `a x = b` as the two rows `a x ≤ b` and `−a x ≤ −b`.
    pub fn push_equality(&mut self, a: RatVector, b: Rational) -> Result<()> {
        let neg = -&a;
        self.push(a, b.clone())?;
        self.push(neg, -b)
    }

    pub fn with_row(&self, a: RatVector, b: Rational) -> Result<Self> {
        let mut s = self.clone();
        s.push(a, b)?;
        Ok(s)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn concat(&self, other: &InequalitySystem) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut s = self.clone();
        s.rows.extend(other.rows.iter().cloned());
        s.rhs.extend(other.rhs.iter().cloned());
        Ok(s)
    }

    /// `A x − b` for the given point.
    pub fn slack(&self, x: &RatVector) -> Vec<Rational> {
        self.rows.iter().zip(&self.rhs).map(|(a, b)| a.dot(x) - b).collect()
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        x.dim() == self.dim && self.slack(x).iter().all(|s| !s.is_positive())
    }

    /// Embeds the system into `dim + extra` variables, new coordinates last.
    pub fn extend_dim(&self, extra: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().cloned().chain(std::iter::repeat_n(Rational::zero(), extra)).collect())
            .collect();
        InequalitySystem { dim: self.dim + extra, rows, rhs: self.rhs.clone() }
    }
}

impl BitSize for InequalitySystem {
    fn bit_size(&self) -> u64 {
        matrix_bit_size(&self.rows) + RatVector::new(self.rhs.clone()).bit_size()
    }
}

/// Nonnegative multipliers `λ` with `λᵀA = 0` and `λᵀb < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: RatVector,
}

impl FarkasCertificate {
    pub fn new(multipliers: RatVector) -> Self {
        FarkasCertificate { multipliers }
    }

    pub fn nonzeros(&self) -> usize {
        self.multipliers.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        FarkasCertificate::new(self.multipliers.scale(s))
    }

    /// Exact check against `P`; no LP is solved.
    pub fn verify(&self, p: &InequalitySystem) -> bool {
        self.check(p).is_ok()
    }

    pub fn check(&self, p: &InequalitySystem) -> Result<()> {
        let lam = &self.multipliers;
        check_dim(p.num_rows(), lam.dim())?;
        if lam.iter().any(Signed::is_negative) {
            return Err(Error::InvalidCertificate("negative multiplier".into()));
        }
        let combo = combine(p, lam);
        if !combo.is_zero() {
            return Err(Error::InvalidCertificate(format!("λᵀA = {combo} is not zero")));
        }
        let value = lam.iter().zip(p.rhs()).fold(Rational::zero(), |acc, (l, b)| acc + l * b);
        if !value.is_negative() {
            return Err(Error::InvalidCertificate(format!("λᵀb = {value} is not negative")));
        }
        Ok(())
    }
}

impl BitSize for FarkasCertificate {
    fn bit_size(&self) -> u64 {
        self.multipliers.bit_size()
    }
}

/// `λᵀA` for multipliers over the rows of `p`.
pub fn combine(p: &InequalitySystem, lam: &[Rational]) -> RatVector {
    let mut acc = vec![Rational::zero(); p.dim()];
    for (row, l) in p.rows().iter().zip(lam) {
        if l.is_zero() {
            continue;
        }
        for (s, a) in acc.iter_mut().zip(row.iter()) {
            *s += l * a;
        }
    }
    RatVector::new(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Outcome of an LP solve.
///
/// For `Optimal`, `dual ≥ 0` satisfies `dualᵀA = ±cᵀ` and `dualᵀb = ±value`,
/// with the sign `+` for maximisation and `−` for minimisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: RatVector, dual: RatVector },
    Infeasible(FarkasCertificate),
    Unbounded(RatVector),
}

fn transpose(p: &InequalitySystem) -> Vec<Vec<Rational>> {
    (0..p.dim()).map(|j| p.rows().iter().map(|r| r[j].clone()).collect()).collect()
}

/// A point of `P`, or a certificate (a vertex of the normalised dual cone) that `P` is empty.
pub fn find_point(p: &InequalitySystem) -> std::result::Result<RatVector, FarkasCertificate> {
    let n = p.dim();
    if p.num_rows() == 0 {
        return Ok(RatVector::zeros(n));
    }
    let mut e = transpose(p);
    e.push(p.rhs().to_vec());
    let mut f = vec![Rational::zero(); n];
    f.push(-Rational::from_integer(1.into()));
    match solve_standard(&e, &f, None) {
        StandardOutcome::Optimal { y, .. } => Err(FarkasCertificate::new(RatVector::new(y))),
        StandardOutcome::Infeasible { w } => {
            let t = w[n].clone();
            Ok(w[..n].iter().map(|z| -z / &t).collect())
        }
        StandardOutcome::Unbounded { .. } => unreachable!("feasibility solve has no objective"),
    }
}

/// A certificate iff `{x : A x ≤ b}` is empty.
pub fn is_empty(p: &InequalitySystem) -> Option<FarkasCertificate> {
    find_point(p).err()
}

/// Optimises `c x` over `P`.
pub fn lp_optimize(p: &InequalitySystem, c: &RatVector, sense: Sense) -> Result<LpOutcome> {
    check_dim(p.dim(), c.dim())?;
    let obj = match sense {
        Sense::Max => c.clone(),
        Sense::Min => -c,
    };
    let out = maximize(p, &obj);
    Ok(match (out, sense) {
        (LpOutcome::Optimal { value, point, dual }, Sense::Min) => LpOutcome::Optimal { value: -value, point, dual },
        (LpOutcome::Unbounded(ray), _) => LpOutcome::Unbounded(ray),
        (other, _) => other,
    })
}

fn maximize(p: &InequalitySystem, c: &RatVector) -> LpOutcome {
    if p.num_rows() == 0 {
        return if c.is_zero() {
            LpOutcome::Optimal { value: Rational::zero(), point: RatVector::zeros(p.dim()), dual: RatVector::zeros(0) }
        } else {
            LpOutcome::Unbounded(c.clone())
        };
    }
    // dual: min bᵀy s.t. Aᵀy = c, y ≥ 0
    match solve_standard(&transpose(p), c, Some(p.rhs())) {
        StandardOutcome::Optimal { y, pi } => {
            let value = y.iter().zip(p.rhs()).fold(Rational::zero(), |acc, (l, b)| acc + l * b);
            LpOutcome::Optimal { value, point: RatVector::new(pi), dual: RatVector::new(y) }
        }
        StandardOutcome::Unbounded { direction, .. } => LpOutcome::Infeasible(FarkasCertificate::new(RatVector::new(direction))),
        StandardOutcome::Infeasible { w } => match find_point(p) {
            Err(cert) => LpOutcome::Infeasible(cert),
            Ok(_) => LpOutcome::Unbounded(w.iter().map(|x| -x).collect()),
        },
    }
}

/// Sparsifies a valid certificate to a vertex of `{λ ≥ 0 : λᵀA = 0, λᵀb = −1}`
/// supported inside the original support, hence with at most `n + 1` nonzeros.
pub fn reduce_certificate(p: &InequalitySystem, cert: &FarkasCertificate) -> Result<FarkasCertificate> {
    cert.check(p)?;
    let support: Vec<usize> = (0..p.num_rows()).filter(|&i| !cert.multipliers[i].is_zero()).collect();
    let n = p.dim();
    let mut e: Vec<Vec<Rational>> = (0..n).map(|j| support.iter().map(|&i| p.rows()[i][j].clone()).collect()).collect();
    e.push(support.iter().map(|&i| p.rhs()[i].clone()).collect());
    let mut f = vec![Rational::zero(); n];
    f.push(-Rational::from_integer(1.into()));
    match solve_standard(&e, &f, None) {
        StandardOutcome::Optimal { y, .. } => {
            let mut lam = vec![Rational::zero(); p.num_rows()];
            for (k, &i) in support.iter().enumerate() {
                lam[i] = y[k].clone();
            }
            Ok(FarkasCertificate::new(RatVector::new(lam)))
        }
        _ => Err(Error::InvalidCertificate("support admits no normalised certificate".into())),
    }
}
