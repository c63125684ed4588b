//! Recovery of a circle Euler element from its torsion series.
//!
//! The grade-`k` rational coefficient of the torsion of an element
//! `sum_i m_i [S^1/Z_{n_i}]` is `q_k * sum_i m_i n_i^(2k)` with `q_k` the
//! circle-series coefficient, so dividing out `q_k` exposes the weighted
//! power sums `p_k = sum_i m_i x_i^k` of the nodes `x_i = n_i^2`. Nodes and
//! weights are recovered exactly: the minimal linear recurrence of the
//! moment sequence is found by an exact overdetermined solve, its
//! characteristic polynomial is factored by integer root extraction with
//! deflation, and the weights come from the Vandermonde system. No floating
//! point and no thresholds anywhere.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::{EulerElement, Group, OrbitType};
use crate::series::{circle_grade_coefficient, TorsionSeries};
use crate::solve::solve_linear_system;

/// Weighted even power sums `p_k = sum_i m_i n_i^(2k)`, `k = 1..=K`,
/// extracted from a univariate torsion series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    values: Vec<BigRational>,
}

impl PowerSums {
    pub fn new(values: Vec<BigRational>) -> Self {
        PowerSums { values }
    }

    /// `p_1..p_K` in order.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Divide each grade coefficient by the circle-series coefficient.
pub fn power_sums(s: &TorsionSeries) -> Result<PowerSums> {
    if s.vars() != 1 {
        return Err(Error::MultivariateInput { vars: s.vars() });
    }
    let values = (1..=s.truncation())
        .map(|k| {
            let coeff = s
                .grade(k)
                .map(|p| p.coefficient(&[2 * k as u32]))
                .unwrap_or_else(BigRational::zero);
            coeff / circle_grade_coefficient(k)
        })
        .collect();
    Ok(PowerSums { values })
}

/// Recovered orbit data: distinct cyclic orders `n` with nonzero rational
/// weights, sorted by `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpectrum {
    pairs: Vec<(BigUint, BigRational)>,
}

impl OrbitSpectrum {
    pub fn pairs(&self) -> &[(BigUint, BigRational)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Exact Prony recovery of nodes and weights from the moment sequence.
///
/// The minimal recurrence order `s` is the smallest order whose recurrence
/// is consistent with every provided moment; this needs `K >= 2s` moments
/// to be reliable, and with fewer the search fails with an
/// insufficient-truncation error. Each recovered node must be the square of
/// a positive integer and each weight nonzero, otherwise the series is not
/// the torsion of any circle Euler element.
pub fn prony_recover(p: &PowerSums) -> Result<OrbitSpectrum> {
    let moments = &p.values;
    let count = moments.len();

    if moments.iter().all(|m| m.is_zero()) {
        return Ok(OrbitSpectrum { pairs: Vec::new() });
    }

    for order in 1..=count / 2 {
        // Monic recurrence p_{k+order} = sum_j c_j p_{k+j}, demanded on
        // every window of the provided moments.
        let rows: Vec<Vec<BigRational>> = (0..count - order)
            .map(|k| moments[k..k + order].to_vec())
            .collect();
        let rhs: Vec<BigRational> = (0..count - order)
            .map(|k| moments[k + order].clone())
            .collect();
        let Some(coeffs) = solve_linear_system(&rows, &rhs) else {
            continue;
        };

        let nodes = integer_square_roots(&coeffs)?;
        debug_assert_eq!(nodes.len(), order);

        // Weights from the Vandermonde system p_k = sum_i m_i x_i^k.
        let xs: Vec<BigInt> = nodes.iter().map(|n| BigInt::from(n * n)).collect();
        let vrows: Vec<Vec<BigRational>> = (1..=order)
            .map(|k| {
                xs.iter()
                    .map(|x| BigRational::from_integer(x.pow(k as u32)))
                    .collect()
            })
            .collect();
        let vrhs: Vec<BigRational> = moments[..order].to_vec();
        let weights = solve_linear_system(&vrows, &vrhs)
            .ok_or_else(|| Error::InconsistentSeries("weight system unsolvable".into()))?;

        for (n, w) in nodes.iter().zip(&weights) {
            if w.is_zero() {
                return Err(Error::ZeroWeight(n.to_string()));
            }
        }

        // Overdetermination guard: the spectrum must reproduce every moment.
        for (k, m) in moments.iter().enumerate() {
            let mut acc = BigRational::zero();
            for (x, w) in xs.iter().zip(&weights) {
                acc += w * BigRational::from_integer(x.pow(k as u32 + 1));
            }
            if &acc != m {
                return Err(Error::InconsistentSeries(format!(
                    "recovered spectrum fails to reproduce moment {}",
                    k + 1
                )));
            }
        }

        let pairs = nodes.into_iter().zip(weights).collect();
        return Ok(OrbitSpectrum { pairs });
    }

    Err(Error::InsufficientTruncation { moments: count })
}

/// Roots of the monic annihilator `x^s - c_{s-1} x^{s-1} - ... - c_0`,
/// required to be squares of distinct positive integers. Candidates are
/// scanned in increasing order with a divisibility filter on the constant
/// term and deflated out one at a time; the scan is complete because every
/// root is bounded by one plus the largest coefficient magnitude.
fn integer_square_roots(recurrence: &[BigRational]) -> Result<Vec<BigUint>> {
    let order = recurrence.len();
    // Integer polynomial: clear denominators of [-c_0, ..., -c_{s-1}, 1].
    let mut denom_lcm = BigInt::one();
    for c in recurrence {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut poly: Vec<BigInt> = recurrence
        .iter()
        .map(|c| {
            let scaled = -(c * BigRational::from_integer(denom_lcm.clone()));
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    poly.push(denom_lcm);

    let mut nodes: Vec<BigUint> = Vec::new();
    let mut n = BigUint::one();
    while poly.len() > 1 {
        if poly[0].is_zero() {
            return Err(Error::InconsistentSeries(
                "annihilator has root zero; nodes must be positive".into(),
            ));
        }
        let bound = cauchy_root_bound(&poly);
        let x = BigInt::from(&n * &n);
        if x > bound {
            return Err(Error::InconsistentSeries(
                "annihilator has a root that is not the square of a positive integer".into(),
            ));
        }
        if poly[0].magnitude().is_multiple_of(x.magnitude()) && eval_int_poly(&poly, &x).is_zero() {
            poly = deflate(&poly, &x);
            if poly.len() > 1 && eval_int_poly(&poly, &x).is_zero() {
                return Err(Error::InconsistentSeries(format!(
                    "repeated node {}; orbit orders must be distinct",
                    n
                )));
            }
            nodes.push(n.clone());
        }
        n += BigUint::one();
    }
    if nodes.len() != order {
        return Err(Error::InconsistentSeries(
            "annihilator does not factor over the admissible nodes".into(),
        ));
    }
    Ok(nodes)
}

fn eval_int_poly(poly: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division by `(t - x)`; the caller guarantees `x` is a root.
fn deflate(poly: &[BigInt], x: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.len() - 1];
    let mut carry = BigInt::zero();
    for i in (0..poly.len() - 1).rev() {
        carry = &poly[i + 1] + x * &carry;
        out[i] = carry.clone();
    }
    debug_assert!((&poly[0] + x * &carry).is_zero());
    out
}

/// Every complex root `r` of the integer polynomial satisfies
/// `|r| <= 1 + max_i |a_i / a_top|`.
fn cauchy_root_bound(poly: &[BigInt]) -> BigInt {
    let top = poly.last().expect("nonempty").magnitude();
    let mut max = BigUint::zero();
    for c in &poly[..poly.len() - 1] {
        let m = c.magnitude();
        if m > &max {
            max = m.clone();
        }
    }
    BigInt::from(max.div_ceil(top)) + 1
}

/// Reassemble the circle Euler element from its invariants: the ordinary
/// Euler characteristic is the coefficient of the fixed orbit, and the
/// recovered spectrum supplies the cyclic orbits.
pub fn chi_from_invariants(s: &TorsionSeries, euler_char: &BigInt) -> Result<EulerElement> {
    let spectrum = prony_recover(&power_sums(s)?)?;
    let mut terms: Vec<(OrbitType, BigRational)> = vec![(
        OrbitType::CircleFull,
        BigRational::from_integer(euler_char.clone()),
    )];
    for (n, m) in spectrum.pairs {
        terms.push((OrbitType::CircleCyclic(n), m));
    }
    EulerElement::from_terms(Group::Circle, terms)
}
