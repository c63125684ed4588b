//! Multivariate polynomials with exact rational coefficients.
//!
//! Monomials are exponent vectors ordered graded-lexicographically; terms
//! with zero coefficient are never stored. Only the operations the torsion
//! series needs are provided.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exponent vector of a monomial. Ordering is graded lex: first by total
/// degree, then lexicographically on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), vars, "exponent vector length must equal vars");
            *map.entry(Monomial::new(exps))
                .or_insert_with(BigRational::zero) += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Poly { vars, terms: map }
    }

    pub fn monomial(vars: usize, exps: Vec<u32>, coeff: BigRational) -> Self {
        Poly::from_terms(vars, [(exps, coeff)])
    }

    /// The linear form `sum_i c_i y_i`.
    pub fn linear_form(coeffs: &[BigInt]) -> Self {
        let vars = coeffs.len();
        Poly::from_terms(
            vars,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0u32; vars];
                e[i] = 1;
                (e, BigRational::from_integer(c.clone()))
            }),
        )
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (the canonical display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scaled(&self, a: &BigRational) -> Poly {
        if a.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect(),
        }
    }

    /// `self + a * other`.
    pub fn add_scaled(&self, a: &BigRational, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let v = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *v += a * c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            vars: self.vars,
            terms,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exps: Vec<u32> =
                    m1.0.iter()
                        .zip(&m2.0)
                        .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                        .collect();
                *terms
                    .entry(Monomial(exps))
                    .or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            vars: self.vars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::monomial(self.vars, vec![0; self.vars], BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact evaluation at an integer point.
    pub fn eval_at_ints(&self, point: &[BigInt]) -> BigRational {
        assert_eq!(point.len(), self.vars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut prod = BigInt::one();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    prod *= x.pow(e);
                }
            }
            acc += c * BigRational::from_integer(prod);
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars);
        let mut acc = 0.0f64;
        for (m, c) in &self.terms {
            let mut prod = c.to_f64().expect("rational converts to f64");
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    prod *= x.powi(e as i32);
                }
            }
            acc += prod;
        }
        acc
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }
}
