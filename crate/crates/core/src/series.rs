//! Truncated even-graded torsion series.
//!
//! An element is stored as one homogeneous rational polynomial per grade
//! `k`; the polynomial of grade `k` has total degree exactly `2k` and
//! carries the implicit transcendental factor `zeta(2k+1) * pi^(-2k)`. The
//! circle series, variable scaling induced by self-coverings, substitution
//! along linear forms, restriction to a line, and numeric rendering all act
//! grade by grade on the rational parts, so the whole calculus is exact.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Rational part of grade `k` of the circle series: `2 * C(4k, 2k) / 64^k`.
/// The full grade-`k` coefficient of `y^(2k)` is this number times
/// `zeta(2k+1) * pi^(-2k)`.
pub fn circle_grade_coefficient(k: usize) -> BigRational {
    assert!(k >= 1);
    let num = BigInt::from(2) * binomial(BigInt::from(4 * k as u64), BigInt::from(2 * k as u64));
    let den = BigInt::from(64).pow(k as u32);
    BigRational::new(num, den)
}

/// Even-graded series over a fixed number of variables, truncated at grade
/// `K`: grade `k` in `1..=K` holds a homogeneous polynomial of degree `2k`
/// (absent when zero). There is no grade 0; constants are quotiented out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionSeries {
    vars: usize,
    truncation: usize,
    grades: BTreeMap<usize, Poly>,
}

impl TorsionSeries {
    fn assemble(vars: usize, truncation: usize, grades: BTreeMap<usize, Poly>) -> Self {
        assert!(vars >= 1, "series needs at least one variable");
        assert!(truncation >= 1, "truncation must be >= 1");
        for (&k, p) in &grades {
            assert!(
                k >= 1 && k <= truncation,
                "grade {} outside 1..={}",
                k,
                truncation
            );
            assert_eq!(p.vars(), vars);
            assert!(!p.is_zero(), "zero grades must be absent");
            assert!(
                p.is_homogeneous_of(2 * k as u32),
                "grade {} must be homogeneous of degree {}",
                k,
                2 * k
            );
        }
        TorsionSeries {
            vars,
            truncation,
            grades,
        }
    }

    /// Validating constructor for externally supplied grade data.
    pub fn try_new(vars: usize, truncation: usize, grades: BTreeMap<usize, Poly>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::InvalidConstruction("series needs vars >= 1".into()));
        }
        if truncation == 0 {
            return Err(Error::InvalidConstruction("truncation must be >= 1".into()));
        }
        for (&k, p) in &grades {
            if k == 0 || k > truncation {
                return Err(Error::InvalidConstruction(format!(
                    "grade {} outside 1..={}",
                    k, truncation
                )));
            }
            if p.vars() != vars {
                return Err(Error::VarsMismatch {
                    left: vars,
                    right: p.vars(),
                });
            }
            if p.is_zero() {
                return Err(Error::InvalidConstruction(format!(
                    "grade {} is zero and must be omitted",
                    k
                )));
            }
            if !p.is_homogeneous_of(2 * k as u32) {
                return Err(Error::InvalidConstruction(format!(
                    "grade {} must be homogeneous of degree {}",
                    k,
                    2 * k
                )));
            }
        }
        Ok(TorsionSeries {
            vars,
            truncation,
            grades,
        })
    }

    pub fn zero(vars: usize, truncation: usize) -> Self {
        TorsionSeries::assemble(vars, truncation, BTreeMap::new())
    }

    /// The torsion series of the circle acting on itself, truncated at
    /// grade `K`: grade `k` is `2 C(4k,2k)/64^k * y^(2k)`.
    pub fn circle(truncation: usize) -> Self {
        assert!(truncation >= 1);
        let grades = (1..=truncation)
            .map(|k| {
                (
                    k,
                    Poly::monomial(1, vec![2 * k as u32], circle_grade_coefficient(k)),
                )
            })
            .collect();
        TorsionSeries::assemble(1, truncation, grades)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, k: usize) -> Option<&Poly> {
        self.grades.get(&k)
    }

    pub fn grades(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.grades.iter().map(|(&k, p)| (k, p))
    }

    /// Map induced by the `n`-fold self-covering of the circle: grade `k`
    /// is multiplied by `n^(2k)`.
    pub fn scale_variable(&self, n: &BigUint) -> Result<Self> {
        if self.vars != 1 {
            return Err(Error::MultivariateInput { vars: self.vars });
        }
        assert!(!n.is_zero(), "covering degree must be >= 1");
        let n_int = BigInt::from(n.clone());
        let grades = self
            .grades
            .iter()
            .map(|(&k, p)| {
                let factor = BigRational::from_integer(n_int.pow(2 * k as u32));
                (k, p.scaled(&factor))
            })
            .collect();
        Ok(TorsionSeries::assemble(1, self.truncation, grades))
    }

    /// Substitution `y -> <c, (y_1..y_m)>` into a univariate series,
    /// expanding each grade as a homogeneous polynomial in `m` variables.
    /// An all-zero covector yields the zero series.
    pub fn substitute_linear(&self, c: &[BigInt]) -> Self {
        assert_eq!(self.vars, 1, "substitution expects a univariate series");
        assert!(!c.is_empty(), "covector must have length >= 1");
        let linear = Poly::linear_form(c);
        let mut grades = BTreeMap::new();
        for (&k, p) in &self.grades {
            let coeff = p.coefficient(&[2 * k as u32]);
            let expanded = linear.pow(2 * k as u32).scaled(&coeff);
            if !expanded.is_zero() {
                grades.insert(k, expanded);
            }
        }
        TorsionSeries::assemble(c.len(), self.truncation, grades)
    }

    /// Restriction along the line `y_i = v_i t`: grade `k` becomes the
    /// value of its polynomial at `v` times `t^(2k)`.
    pub fn restrict_to_line(&self, v: &[BigInt]) -> Result<Self> {
        if v.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: v.len(),
            });
        }
        let mut grades = BTreeMap::new();
        for (&k, p) in &self.grades {
            let value = p.eval_at_ints(v);
            if !value.is_zero() {
                grades.insert(k, Poly::monomial(1, vec![2 * k as u32], value));
            }
        }
        Ok(TorsionSeries::assemble(1, self.truncation, grades))
    }

    /// `a * s1 + b * s2`, truncated at the smaller of the two truncations.
    pub fn combine(
        a: &BigRational,
        s1: &TorsionSeries,
        b: &BigRational,
        s2: &TorsionSeries,
    ) -> Result<TorsionSeries> {
        if s1.vars != s2.vars {
            return Err(Error::VarsMismatch {
                left: s1.vars,
                right: s2.vars,
            });
        }
        let truncation = s1.truncation.min(s2.truncation);
        let mut grades = BTreeMap::new();
        for k in 1..=truncation {
            let zero = Poly::zero(s1.vars);
            let p1 = s1.grades.get(&k).unwrap_or(&zero);
            let p2 = s2.grades.get(&k).unwrap_or(&zero);
            let sum = p1.scaled(a).add_scaled(b, p2);
            if !sum.is_zero() {
                grades.insert(k, sum);
            }
        }
        Ok(TorsionSeries::assemble(s1.vars, truncation, grades))
    }

    /// Numeric value at a real point: each grade contributes its polynomial
    /// value times `zeta(2k+1) * pi^(-2k)`, with the zeta values summed to
    /// tolerance 1e-12.
    pub fn eval_numeric(&self, point: &[f64]) -> Result<f64> {
        self.eval_numeric_with_tolerance(point, 1e-12)
    }

    /// Same as [`eval_numeric`](Self::eval_numeric) with an explicit zeta
    /// summation tolerance.
    pub fn eval_numeric_with_tolerance(&self, point: &[f64], zeta_tol: f64) -> Result<f64> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: point.len(),
            });
        }
        let mut total = 0.0f64;
        for (&k, p) in &self.grades {
            let zeta = zeta_odd(2 * k as u64 + 1, zeta_tol)?;
            let pi_pow = std::f64::consts::PI.powi(-2 * (k as i32));
            total += p.eval_f64(point) * zeta.value * pi_pow;
        }
        Ok(total)
    }
}

/// Certified value of the Riemann zeta function at an odd integer `j >= 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaValue {
    pub j: u64,
    pub value: f64,
    /// Guaranteed enclosure radius: `|value - zeta(j)| <= tolerance`.
    pub tolerance: f64,
}

/// Direct summation of `sum_m m^(-j)` with the integral tail bound
/// `sum_{m>M} m^(-j) <= M^(1-j)/(j-1)`. The cutoff is chosen so the tail is
/// at most `tol/2`, leaving room for floating-point summation error inside
/// the stated tolerance; terms are compensated (Kahan) so that rounding is
/// negligible.
pub fn zeta_odd(j: u64, tol: f64) -> Result<ZetaValue> {
    if j < 3 || j.is_multiple_of(2) {
        return Err(Error::InvalidZetaArgument { j });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidConstruction(
            "zeta tolerance must be positive and finite".into(),
        ));
    }
    let jm1 = (j - 1) as f64;
    let m_min = (2.0 / (tol * jm1)).powf(1.0 / jm1).ceil();
    let m = if m_min.is_finite() && m_min >= 1.0 {
        m_min as u64
    } else {
        1
    };
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in (1..=m).rev() {
        let term = (i as f64).powi(-(j as i32));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(ZetaValue {
        j,
        value: sum,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn circle_series_first_grades() {
        let s = TorsionSeries::circle(2);
        assert_eq!(s.grade(1).unwrap().coefficient(&[2]), rat(3, 16));
        assert_eq!(s.grade(2).unwrap().coefficient(&[4]), rat(35, 1024));
    }

    #[test]
    fn circle_grade_coefficients_match_binomial_form() {
        // 2 * C(4k,2k) / 64^k, checked against an additive Pascal triangle.
        let mut pascal: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        for n in 1..=24usize {
            let prev = &pascal[n - 1];
            let mut row = vec![BigInt::from(1)];
            for i in 1..n {
                row.push(&prev[i - 1] + &prev[i]);
            }
            row.push(BigInt::from(1));
            pascal.push(row);
        }
        for k in 1..=6usize {
            let expected = BigRational::new(
                BigInt::from(2) * pascal[4 * k][2 * k].clone(),
                BigInt::from(64).pow(k as u32),
            );
            assert_eq!(circle_grade_coefficient(k), expected);
        }
    }

    #[test]
    fn scale_variable_examples() {
        let s = TorsionSeries::circle(1);
        assert_eq!(s.scale_variable(&BigUint::from(1u32)).unwrap(), s);
        let doubled = s.scale_variable(&BigUint::from(2u32)).unwrap();
        assert_eq!(doubled.grade(1).unwrap().coefficient(&[2]), rat(3, 4));
    }

    #[test]
    fn scale_variable_rejects_multivariate() {
        let s = TorsionSeries::circle(1).substitute_linear(&big(&[1, 1]));
        assert_eq!(
            s.scale_variable(&BigUint::from(2u32)).unwrap_err(),
            Error::MultivariateInput { vars: 2 }
        );
    }

    #[test]
    fn substitute_examples() {
        let s = TorsionSeries::circle(1);
        // Identity embedding.
        assert_eq!(s.substitute_linear(&big(&[1])), s);
        // Binomial expansion of (y1 + y2)^2.
        let t = s.substitute_linear(&big(&[1, 1]));
        let g = t.grade(1).unwrap();
        assert_eq!(g.coefficient(&[2, 0]), rat(3, 16));
        assert_eq!(g.coefficient(&[1, 1]), rat(3, 8));
        assert_eq!(g.coefficient(&[0, 2]), rat(3, 16));
        // Substituting (2) agrees with scaling by 2.
        assert_eq!(
            s.substitute_linear(&big(&[2])),
            s.scale_variable(&BigUint::from(2u32)).unwrap()
        );
        // All-zero covector yields the zero series.
        assert!(s.substitute_linear(&big(&[0, 0])).is_zero());
    }

    #[test]
    fn restrict_to_line_examples() {
        let s = TorsionSeries::circle(1).substitute_linear(&big(&[1, 1]));
        let r = s.restrict_to_line(&big(&[1, 0])).unwrap();
        assert_eq!(r.grade(1).unwrap().coefficient(&[2]), rat(3, 16));

        let z = TorsionSeries::zero(3, 4);
        assert!(z.restrict_to_line(&big(&[5, -2, 0])).unwrap().is_zero());

        let err = s.restrict_to_line(&big(&[1])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn substitute_then_restrict_is_scaling() {
        let s = TorsionSeries::circle(3);
        for (c, v) in [
            (vec![2i64, 3], vec![1i64, 1]),
            (vec![1, -1], vec![2, -3]),
            (vec![5], vec![7]),
        ] {
            let c = big(&c);
            let v = big(&v);
            let dot: BigInt = c.iter().zip(&v).map(|(a, b)| a * b).sum();
            let n = dot.magnitude().clone();
            let lhs = s.substitute_linear(&c).restrict_to_line(&v).unwrap();
            let rhs = s.scale_variable(&n).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn combine_examples() {
        let s = TorsionSeries::circle(2);
        let z = TorsionSeries::zero(1, 2);
        assert_eq!(
            TorsionSeries::combine(&rat(1, 1), &s, &rat(1, 1), &z).unwrap(),
            s
        );
        assert!(TorsionSeries::combine(&rat(1, 1), &s, &rat(-1, 1), &s)
            .unwrap()
            .is_zero());
        let doubled = TorsionSeries::combine(&rat(2, 1), &s, &rat(0, 1), &z).unwrap();
        assert_eq!(doubled.grade(1).unwrap().coefficient(&[2]), rat(3, 8));
    }

    #[test]
    fn combine_truncates_to_min() {
        let a = TorsionSeries::circle(4);
        let b = TorsionSeries::circle(2);
        let sum = TorsionSeries::combine(&rat(1, 1), &a, &rat(1, 1), &b).unwrap();
        assert_eq!(sum.truncation(), 2);
        assert!(sum.grade(2).is_some());
    }

    #[test]
    fn combine_vars_mismatch() {
        let a = TorsionSeries::circle(2);
        let b = TorsionSeries::zero(2, 2);
        assert_eq!(
            TorsionSeries::combine(&rat(1, 1), &a, &rat(1, 1), &b).unwrap_err(),
            Error::VarsMismatch { left: 1, right: 2 }
        );
    }

    #[test]
    fn zeta_odd_reference_values() {
        let z3 = zeta_odd(3, 1e-9).unwrap();
        assert!((z3.value - 1.202056903).abs() <= 1e-9);
        let z5 = zeta_odd(5, 1e-9).unwrap();
        assert!((z5.value - 1.036927755).abs() <= 1e-9);
    }

    #[test]
    fn zeta_odd_rejects_bad_arguments() {
        assert_eq!(
            zeta_odd(4, 1e-6).unwrap_err(),
            Error::InvalidZetaArgument { j: 4 }
        );
        assert_eq!(
            zeta_odd(1, 1e-6).unwrap_err(),
            Error::InvalidZetaArgument { j: 1 }
        );
    }

    #[test]
    fn zeta_odd_values_exceed_one() {
        for j in [3u64, 5, 7, 9, 21] {
            assert!(zeta_odd(j, 1e-10).unwrap().value > 1.0);
        }
        // Beyond ~50 the tail drops below machine epsilon and the partial
        // sum collapses to exactly 1.
        assert!(zeta_odd(99, 1e-10).unwrap().value >= 1.0);
    }

    #[test]
    fn zeta_odd_enclosure_is_stable() {
        // Doubling the cutoff moves the value by less than the tolerance.
        for (j, tol) in [(3u64, 1e-8f64), (5, 1e-10), (7, 1e-9)] {
            let a = zeta_odd(j, tol).unwrap();
            let b = zeta_odd(j, tol / 4.0).unwrap();
            assert!((a.value - b.value).abs() < tol, "j={} tol={}", j, tol);
        }
    }

    #[test]
    fn eval_numeric_circle() {
        // (3/16) * zeta(3) / pi^2
        let v = TorsionSeries::circle(1).eval_numeric(&[1.0]).unwrap();
        assert!((v - 0.022836342793794953).abs() < 1e-10, "got {}", v);
    }

    #[test]
    fn eval_numeric_at_origin() {
        let s = TorsionSeries::circle(4).substitute_linear(&big(&[3, -2]));
        assert_eq!(s.eval_numeric(&[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn eval_numeric_point_length_mismatch() {
        let s = TorsionSeries::circle(2).substitute_linear(&big(&[1, 1]));
        assert_eq!(
            s.eval_numeric(&[1.0]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn eval_numeric_scaling_consistency() {
        let s = TorsionSeries::circle(1);
        let scaled = s.scale_variable(&BigUint::from(2u32)).unwrap();
        assert_eq!(
            scaled.eval_numeric(&[1.0]).unwrap(),
            s.eval_numeric(&[2.0]).unwrap()
        );
    }

    #[test]
    fn eval_numeric_at_scaled_points() {
        // For a substituted circle series, evaluating at lambda * p equals
        // the sum of grades rescaled exactly by lambda^(2k).
        let s = TorsionSeries::circle(3).substitute_linear(&big(&[2, -1]));
        let p = [0.5f64, 1.25];
        for lambda in [2.0f64, 3.0, 0.5] {
            let scaled_point: Vec<f64> = p.iter().map(|x| x * lambda).collect();
            let direct = s.eval_numeric(&scaled_point).unwrap();
            let mut by_grades = 0.0f64;
            for (k, poly) in s.grades() {
                let zeta = zeta_odd(2 * k as u64 + 1, 1e-12).unwrap().value;
                let pi_pow = std::f64::consts::PI.powi(-2 * (k as i32));
                by_grades += lambda.powi(2 * k as i32) * poly.eval_f64(&p) * zeta * pi_pow;
            }
            let denom = direct.abs().max(1e-300);
            assert!(
                ((direct - by_grades) / denom).abs() < 1e-10,
                "lambda={} direct={} graded={}",
                lambda,
                direct,
                by_grades
            );
        }
    }

    proptest::proptest! {
        #[test]
        fn scaling_is_functorial(
            grades in proptest::collection::vec((-20i64..=20, 1i64..=16), 1..5),
            m in 1u64..=9,
            n in 1u64..=9,
        ) {
            let truncation = grades.len();
            let series = TorsionSeries::try_new(
                1,
                truncation,
                grades
                    .iter()
                    .enumerate()
                    .filter(|(_, &(num, _))| num != 0)
                    .map(|(i, &(num, den))| {
                        (i + 1, Poly::monomial(1, vec![2 * (i as u32 + 1)], rat(num, den)))
                    })
                    .collect(),
            )
            .unwrap();
            let lhs = series
                .scale_variable(&BigUint::from(m))
                .unwrap()
                .scale_variable(&BigUint::from(n))
                .unwrap();
            let rhs = series.scale_variable(&BigUint::from(m * n)).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitute_restrict_composition(
            c in proptest::collection::vec(-6i64..=6, 1..4),
            v in proptest::collection::vec(-6i64..=6, 1..4),
            k in 1usize..=3,
        ) {
            let len = c.len().min(v.len());
            let c = big(&c[..len]);
            let v = big(&v[..len]);
            let dot: BigInt = c.iter().zip(&v).map(|(a, b)| a * b).sum();
            proptest::prop_assume!(!dot.is_zero());
            let s = TorsionSeries::circle(k);
            let lhs = s.substitute_linear(&c).restrict_to_line(&v).unwrap();
            let rhs = s.scale_variable(dot.magnitude()).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
