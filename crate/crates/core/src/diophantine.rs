//! Simultaneous Diophantine approximation and right-hand-side classification.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{floor, round_nearest, to_rational, IntVector, Integer, RatVector, Rational};

/// `a′ = ⌊l·a/‖a‖∞⌉` with `‖l·a/‖a‖∞ − a′‖∞ < 1/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DioApprox {
    pub a_prime: IntVector,
    pub multiplier: Integer,
    pub precision: Integer,
}

impl DioApprox {
    /// Exact check of all invariants against the approximated vector.
    pub fn check(&self, a: &RatVector) -> Result<()> {
        let fail = |m: &str| Err(Error::Precondition(format!("approximation invariant: {m}")));
        let n = a.dim() as u32;
        if self.multiplier < Integer::one() || self.multiplier > num_traits::pow(self.precision.clone(), n as usize) {
            return fail("multiplier out of range");
        }
        if self.a_prime.norm_linf() != self.multiplier {
            return fail("‖a′‖∞ differs from the multiplier");
        }
        let scaled = a.scale(&(to_rational(&self.multiplier) / a.norm_linf()));
        let err = (&scaled - &self.a_prime.to_rational()).norm_linf();
        if err * to_rational(&self.precision) >= Rational::one() {
            return fail("rounding error not below 1/N");
        }
        if a.iter().zip(self.a_prime.iter()).any(|(x, y)| x.is_zero() && !y.is_zero()) {
            return fail("zero coordinate became nonzero");
        }
        Ok(())
    }
}

/// Scans `l = 1, 2, …, Nⁿ` for the first multiplier with rounding error below `1/N`.
pub fn dirichlet_approx(a: &RatVector, precision: &Integer) -> Result<DioApprox> {
    if a.is_zero() {
        return Err(Error::Precondition("cannot approximate the zero vector".into()));
    }
    if !precision.is_positive() {
        return Err(Error::Precondition("precision must be positive".into()));
    }
    let unit = a.scale(&a.norm_linf().recip());
    let q = unit.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let steps: Vec<Integer> = unit.iter().map(|x| (x.numer() * (&q / x.denom())).mod_floor(&q)).collect();
    let mut residues = steps.clone();
    let cap = num_traits::pow(precision.clone(), a.dim());
    let mut l = Integer::one();
    while l <= cap {
        let hit = residues.iter().all(|r| {
            let dist = std::cmp::min(r.clone(), &q - r);
            dist * precision < q
        });
        if hit {
            let a_prime = round_nearest(&unit.scale(&to_rational(&l)));
            return Ok(DioApprox { a_prime, multiplier: l, precision: precision.clone() });
        }
        for (r, s) in residues.iter_mut().zip(&steps) {
            *r += s;
            if *r >= q {
                *r -= &q;
            }
        }
        l += 1;
    }
    Err(Error::SearchLimit(format!("no multiplier up to N^n = {cap}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsCase {
    NonDominating,
    Dominating,
}

/// Outcome of the right-hand-side case split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhsClassification {
    pub case: RhsCase,
    pub b_prime: Integer,
    /// `‖â‖∞ / ‖a′‖∞`
    pub alpha: Rational,
    /// Set when an endpoint of `(b̂, b̂+1)` coincides with a case boundary.
    pub on_boundary: bool,
}

/// Chooses `b′` for the approximation `a′` of `â` so that `a′x ≤ b′` tracks `âx ≤ b̂` on `R·B₁ⁿ`.
pub fn classify_rhs(a_hat: &RatVector, b_hat: &Rational, approx: &DioApprox, radius: &Integer, precision: &Integer) -> Result<RhsClassification> {
    if !radius.is_positive() || !precision.is_positive() || Integer::from(4) * radius >= *precision {
        return Err(Error::Precondition("need 0 < R and R/N < 1/4".into()));
    }
    let norm_hat = a_hat.norm_linf();
    let norm_prime = to_rational(&approx.a_prime.norm_linf());
    if norm_prime.is_zero() {
        return Err(Error::Precondition("approximation is zero".into()));
    }
    let alpha = &norm_hat / &norm_prime;
    if alpha < Rational::from_integer(2.into()) {
        return Err(Error::Precondition(format!("alpha = {alpha} is below 2")));
    }
    let r = to_rational(radius);
    let rho = &r / to_rational(precision);
    let one = Rational::one();
    let upper = &r * &norm_hat;
    let r_prime = radius * approx.a_prime.norm_linf();
    let make = |case, b_prime, on_boundary| Ok(RhsClassification { case, b_prime, alpha: alpha.clone(), on_boundary });

    if *b_hat >= upper {
        return make(RhsCase::Dominating, r_prime, *b_hat == upper);
    }
    if b_hat + &one <= -&upper {
        return make(RhsCase::Dominating, -r_prime - Integer::one(), b_hat + &one == -&upper);
    }

    let lo_end = |c: &Integer| &alpha * (to_rational(c) - &rho);
    let hi_end = |c: &Integer| &alpha * (to_rational(c) + &rho);
    let centre = floor(&((b_hat + Rational::new(1.into(), 2.into())) / &alpha));
    let candidates = [&centre - Integer::one(), centre.clone(), &centre + Integer::one()];
    let touches = |c: &Integer| {
        let (lo, hi) = (lo_end(c), hi_end(c));
        lo == *b_hat || lo == b_hat + &one || hi == *b_hat || hi == b_hat + &one
    };
    let on_boundary = candidates.iter().any(touches);
    let meets: Vec<&Integer> = candidates.iter().filter(|c| lo_end(c) < b_hat + &one && hi_end(c) > *b_hat).collect();
    match meets[..] {
        [c] => {
            if c.abs() > r_prime {
                return Err(Error::Precondition(format!("b′ = {c} outside |b′| ≤ R‖a′‖∞")));
            }
            make(RhsCase::NonDominating, c.clone(), on_boundary)
        }
        [] => {
            let c = floor(&(b_hat / &alpha - &rho));
            let inside = hi_end(&c) <= *b_hat && b_hat + &one <= lo_end(&(&c + Integer::one()));
            if !inside || c < -r_prime.clone() || c > &r_prime - Integer::one() {
                return Err(Error::Precondition(format!("no consistent b′ for b̂ = {b_hat}")));
            }
            make(RhsCase::Dominating, c, on_boundary)
        }
        _ => Err(Error::Precondition("intervals overlap; alpha or R/N out of range".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    fn int(x: i64) -> Integer {
        Integer::from(x)
    }

    #[test]
    fn dirichlet_examples() {
        let d = dirichlet_approx(&RatVector::from_i64s(&[1, 0, -1]), &int(5)).unwrap();
        assert_eq!((d.multiplier.clone(), d.a_prime.clone()), (int(1), IntVector::from_i64s(&[1, 0, -1])));
        let a = RatVector::from_ratios(&[(1, 1), (1, 2)]);
        let d = dirichlet_approx(&a, &int(3)).unwrap();
        assert_eq!((d.multiplier.clone(), d.a_prime.clone()), (int(2), IntVector::from_i64s(&[2, 1])));
        d.check(&a).unwrap();
        let a = RatVector::from_ratios(&[(1, 1), (2, 3)]);
        let d = dirichlet_approx(&a, &int(4)).unwrap();
        assert_eq!((d.multiplier.clone(), d.a_prime.clone()), (int(3), IntVector::from_i64s(&[3, 2])));
        assert!(dirichlet_approx(&RatVector::zeros(2), &int(4)).is_err());
    }

    #[test]
    fn negative_entries_keep_sign() {
        let a = RatVector::from_i64s(&[-1000000, 1]);
        let d = dirichlet_approx(&a, &int(60)).unwrap();
        assert_eq!(d.a_prime, IntVector::from_i64s(&[-1, 0]));
        d.check(&a).unwrap();
    }

    fn approx(a: i64) -> DioApprox {
        DioApprox { a_prime: IntVector::from_i64s(&[a]), multiplier: int(a.abs()), precision: int(1) }
    }

    #[test]
    fn classification_examples() {
        let c = classify_rhs(&RatVector::from_i64s(&[1000]), &rational(1999), &approx(1), &int(2), &int(20)).unwrap();
        assert_eq!((c.case, c.b_prime), (RhsCase::NonDominating, int(2)));
        let c = classify_rhs(&RatVector::from_i64s(&[1001]), &rational(500), &approx(1), &int(1), &int(10)).unwrap();
        assert_eq!((c.case, c.b_prime), (RhsCase::Dominating, int(0)));
        let c = classify_rhs(&RatVector::from_i64s(&[7]), &rational(20), &approx(1), &int(2), &int(20)).unwrap();
        assert_eq!((c.case, c.b_prime), (RhsCase::Dominating, int(2)));
        let c = classify_rhs(&RatVector::from_i64s(&[7]), &rational(-15), &approx(1), &int(2), &int(20)).unwrap();
        assert_eq!((c.case, c.b_prime, c.on_boundary), (RhsCase::Dominating, int(-3), true));
    }

    #[test]
    fn classification_preconditions() {
        assert!(classify_rhs(&RatVector::from_i64s(&[3]), &rational(0), &approx(2), &int(1), &int(10)).is_err());
        assert!(classify_rhs(&RatVector::from_i64s(&[100]), &rational(0), &approx(1), &int(1), &int(4)).is_err());
    }
}
