//! Orbit types, the additive Euler ring with rational coefficients, the
//! equivariant Euler characteristic of equivariant cell complexes,
//! restriction along circle subgroups, and the class-function calculus for
//! finite cyclic groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, IntMatrix};

/// The acting compact group: the circle, or a torus of rank `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Circle,
    Torus { rank: usize },
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Circle => write!(f, "S^1"),
            Group::Torus { rank } => write!(f, "T^{}", rank),
        }
    }
}

/// Isomorphism class of an orbit `G/H`, keyed by the closed subgroup `H`.
///
/// For the circle, `H` is either the whole group or the cyclic group of
/// order `n >= 1`. For a torus, `H` is encoded by the lattice of characters
/// vanishing on it, stored in Hermite normal form so that equality of orbit
/// types is plain structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    CircleFull,
    CircleCyclic(BigUint),
    TorusSubgroup(IntMatrix),
}

impl OrbitType {
    pub fn cyclic(n: BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidConstruction(
                "cyclic subgroup order must be >= 1".into(),
            ));
        }
        Ok(OrbitType::CircleCyclic(n))
    }

    pub fn cyclic_u64(n: u64) -> Result<Self> {
        Self::cyclic(BigUint::from(n))
    }

    /// Torus orbit type from any matrix of vanishing characters; the matrix
    /// is canonicalized to Hermite normal form.
    pub fn torus_subgroup(characters: &IntMatrix) -> Self {
        OrbitType::TorusSubgroup(characters.hermite_normal_form())
    }

    pub fn group(&self) -> Group {
        match self {
            OrbitType::CircleFull | OrbitType::CircleCyclic(_) => Group::Circle,
            OrbitType::TorusSubgroup(m) => Group::Torus { rank: m.cols() },
        }
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitType::CircleFull => write!(f, "[S^1/S^1]"),
            OrbitType::CircleCyclic(n) => write!(f, "[S^1/Z_{}]", n),
            OrbitType::TorusSubgroup(m) => {
                write!(f, "[T/H(")?;
                for r in 0..m.rows() {
                    if r > 0 {
                        write!(f, ";")?;
                    }
                    for c in 0..m.cols() {
                        if c > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", m.get(r, c))?;
                    }
                }
                write!(f, ")]")
            }
        }
    }
}

/// Finite rational combination of orbit types of a fixed group. Zero
/// coefficients are never stored, so structural equality is equality in the
/// Euler ring tensored with the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerElement {
    group: Group,
    terms: BTreeMap<OrbitType, BigRational>,
}

impl EulerElement {
    pub fn zero(group: Group) -> Self {
        EulerElement {
            group,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(group: Group, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OrbitType, BigRational)>,
    {
        let mut map: BTreeMap<OrbitType, BigRational> = BTreeMap::new();
        for (orbit, coeff) in terms {
            if orbit.group() != group {
                return Err(Error::GroupMismatch {
                    expected: group.to_string(),
                    got: orbit.group().to_string(),
                });
            }
            *map.entry(orbit).or_insert_with(BigRational::zero) += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(EulerElement { group, terms: map })
    }

    pub fn single(orbit: OrbitType, coeff: BigRational) -> Self {
        let group = orbit.group();
        EulerElement::from_terms(group, [(orbit, coeff)]).expect("group taken from the orbit")
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrbitType, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, orbit: &OrbitType) -> BigRational {
        self.terms
            .get(orbit)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scaled(&self, a: &BigRational) -> Self {
        if a.is_zero() {
            return EulerElement::zero(self.group);
        }
        EulerElement {
            group: self.group,
            terms: self.terms.iter().map(|(o, c)| (o.clone(), c * a)).collect(),
        }
    }

    /// `a * e1 + b * e2`, with zero coefficients pruned.
    pub fn combine(
        a: &BigRational,
        e1: &EulerElement,
        b: &BigRational,
        e2: &EulerElement,
    ) -> Result<EulerElement> {
        if e1.group != e2.group {
            return Err(Error::GroupMismatch {
                expected: e1.group.to_string(),
                got: e2.group.to_string(),
            });
        }
        let mut terms = BTreeMap::new();
        for (o, c) in &e1.terms {
            let v = a * c;
            if !v.is_zero() {
                terms.insert(o.clone(), v);
            }
        }
        for (o, c) in &e2.terms {
            let v = terms.entry(o.clone()).or_insert_with(BigRational::zero);
            *v += b * c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(EulerElement {
            group: e1.group,
            terms,
        })
    }
}

impl fmt::Display for EulerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (o, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, o)?;
        }
        Ok(())
    }
}

/// Finite list of equivariant cells `(disc dimension, isotropy type)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCWComplex {
    group: Group,
    cells: Vec<(u32, OrbitType)>,
}

impl GCWComplex {
    pub fn new(group: Group, cells: Vec<(u32, OrbitType)>) -> Result<Self> {
        for (i, (_, orbit)) in cells.iter().enumerate() {
            if orbit.group() != group {
                return Err(Error::GroupMismatch {
                    expected: group.to_string(),
                    got: format!("{} (cell {})", orbit.group(), i),
                });
            }
        }
        Ok(GCWComplex { group, cells })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn cells(&self) -> &[(u32, OrbitType)] {
        &self.cells
    }
}

/// Equivariant Euler characteristic: the signed count of cells, recorded by
/// isotropy type.
pub fn chi_equivariant(x: &GCWComplex) -> EulerElement {
    let one = BigRational::one();
    EulerElement::from_terms(
        x.group,
        x.cells.iter().map(|(dim, orbit)| {
            let sign = if dim % 2 == 0 {
                one.clone()
            } else {
                -one.clone()
            };
            (orbit.clone(), sign)
        }),
    )
    .expect("cells validated at construction")
}

/// Restriction of a torus Euler element along the circle subgroup in the
/// primitive direction `v`. On an orbit type with character lattice `L`:
/// rank 0 gives the fixed orbit, rank 1 gives the cyclic orbit of order
/// `gcd` of the pairings (or nothing when the pairing vanishes), rank >= 2
/// contributes nothing because the quotient stays positive dimensional.
pub fn restrict_torus_to_circle(e: &EulerElement, v: &[BigInt]) -> Result<EulerElement> {
    let Group::Torus { rank } = e.group else {
        return Err(Error::GroupMismatch {
            expected: "T^k".into(),
            got: e.group.to_string(),
        });
    };
    if v.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: v.len(),
        });
    }
    if !is_primitive(v) {
        return Err(Error::NonPrimitiveVector);
    }
    let mut out: Vec<(OrbitType, BigRational)> = Vec::new();
    for (orbit, coeff) in &e.terms {
        let OrbitType::TorusSubgroup(m) = orbit else {
            unreachable!("torus element holds torus orbit types");
        };
        let (lattice_rank, _) = m.rank_and_generator();
        match lattice_rank {
            0 => out.push((OrbitType::CircleFull, coeff.clone())),
            1 => {
                let g = m.pairing_gcd(v)?;
                if !g.is_zero() {
                    out.push((OrbitType::CircleCyclic(g), coeff.clone()));
                }
            }
            _ => {}
        }
    }
    EulerElement::from_terms(Group::Circle, out)
}

/// Rational-valued function on the cyclic group `Z/N`, stored elementwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidConstruction(
                "class function needs order >= 1".into(),
            ));
        }
        Ok(ClassFunction { values })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, j: usize) -> &BigRational {
        &self.values[j]
    }

    /// Pointwise product in the function algebra.
    pub fn pointwise_product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Integral against the normalized counting measure.
    pub fn average(&self) -> BigRational {
        let sum: BigRational = self.values.iter().sum();
        sum / BigRational::from_integer(BigInt::from(self.values.len()))
    }
}

/// Cell data for an action of `Z/N`: each cell records its disc dimension
/// and the order `d | N` of its isotropy subgroup (which determines the
/// subgroup uniquely).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCWComplex {
    order: u64,
    cells: Vec<(u32, u64)>,
}

impl GammaCWComplex {
    pub fn new(order: u64, cells: Vec<(u32, u64)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConstruction(
                "group order must be >= 1".into(),
            ));
        }
        for (i, &(_, d)) in cells.iter().enumerate() {
            if d == 0 || !order.is_multiple_of(d) {
                return Err(Error::InvalidConstruction(format!(
                    "cell {}: subgroup order {} does not divide {}",
                    i, d, order
                )));
            }
        }
        Ok(GammaCWComplex { order, cells })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn cells(&self) -> &[(u32, u64)] {
        &self.cells
    }
}

/// Equivariant Euler characteristic as a class function, evaluated
/// cellularly: the element `j` fixes the orbit of a cell with isotropy of
/// order `d` exactly when `(N/d) | j`, in which case all `N/d` translates
/// are fixed.
pub fn chi_gamma(x: &GammaCWComplex) -> ClassFunction {
    let n = x.order;
    let mut values = vec![BigRational::zero(); n as usize];
    for (j, slot) in values.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for &(dim, d) in &x.cells {
            let orbit = n / d;
            if (j as u64).is_multiple_of(orbit) {
                let c = BigInt::from(orbit);
                if dim % 2 == 0 {
                    acc += c;
                } else {
                    acc -= c;
                }
            }
        }
        *slot = BigRational::from_integer(acc);
    }
    ClassFunction { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cyc(n: u64) -> OrbitType {
        OrbitType::cyclic_u64(n).unwrap()
    }

    fn torus_orbit(cols: usize, rows: &[&[i64]]) -> OrbitType {
        let m = IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap();
        OrbitType::torus_subgroup(&m)
    }

    fn vec_i(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn chi_circle_on_itself() {
        let x = GCWComplex::new(Group::Circle, vec![(0, cyc(1))]).unwrap();
        let chi = chi_equivariant(&x);
        assert_eq!(chi, EulerElement::single(cyc(1), rat(1, 1)));
    }

    #[test]
    fn chi_rotation_sphere() {
        let x = GCWComplex::new(
            Group::Circle,
            vec![
                (0, OrbitType::CircleFull),
                (0, OrbitType::CircleFull),
                (1, cyc(1)),
            ],
        )
        .unwrap();
        let chi = chi_equivariant(&x);
        let expected = EulerElement::from_terms(
            Group::Circle,
            [(OrbitType::CircleFull, rat(2, 1)), (cyc(1), rat(-1, 1))],
        )
        .unwrap();
        assert_eq!(chi, expected);
    }

    #[test]
    fn chi_empty() {
        let x = GCWComplex::new(Group::Circle, vec![]).unwrap();
        assert!(chi_equivariant(&x).is_zero());
    }

    #[test]
    fn combine_examples() {
        let e = EulerElement::single(cyc(1), rat(1, 1));
        let two = EulerElement::combine(&rat(1, 1), &e, &rat(1, 1), &e).unwrap();
        assert_eq!(two, EulerElement::single(cyc(1), rat(2, 1)));

        let pt = EulerElement::single(OrbitType::CircleFull, rat(2, 1));
        let zero = EulerElement::combine(&rat(1, 1), &pt, &rat(-1, 1), &pt).unwrap();
        assert!(zero.is_zero());

        let t2 = torus_orbit(2, &[]);
        let half = EulerElement::single(t2.clone(), rat(1, 1));
        let back = EulerElement::combine(&rat(1, 2), &half, &rat(1, 2), &half).unwrap();
        assert_eq!(back, EulerElement::single(t2, rat(1, 1)));
    }

    #[test]
    fn combine_group_mismatch() {
        let a = EulerElement::zero(Group::Circle);
        let b = EulerElement::zero(Group::Torus { rank: 2 });
        assert!(matches!(
            EulerElement::combine(&rat(1, 1), &a, &rat(1, 1), &b),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn restrict_full_torus_orbit() {
        let e = EulerElement::single(torus_orbit(2, &[]), rat(1, 1));
        let r = restrict_torus_to_circle(&e, &vec_i(&[1, 1])).unwrap();
        assert_eq!(r, EulerElement::single(OrbitType::CircleFull, rat(1, 1)));
    }

    #[test]
    fn restrict_rank_one() {
        let e = EulerElement::single(torus_orbit(2, &[&[1, 0]]), rat(1, 1));
        let r = restrict_torus_to_circle(&e, &vec_i(&[1, 1])).unwrap();
        assert_eq!(r, EulerElement::single(cyc(1), rat(1, 1)));
    }

    #[test]
    fn restrict_rank_two_vanishes() {
        let e = EulerElement::single(torus_orbit(2, &[&[1, 0], &[0, 1]]), rat(1, 1));
        let r = restrict_torus_to_circle(&e, &vec_i(&[1, 0])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restrict_orthogonal_pairing_vanishes() {
        let e = EulerElement::single(torus_orbit(2, &[&[1, 0]]), rat(3, 1));
        let r = restrict_torus_to_circle(&e, &vec_i(&[0, 1])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restrict_rejects_bad_vectors() {
        let e = EulerElement::zero(Group::Torus { rank: 2 });
        assert_eq!(
            restrict_torus_to_circle(&e, &vec_i(&[2, 2])).unwrap_err(),
            Error::NonPrimitiveVector
        );
        assert_eq!(
            restrict_torus_to_circle(&e, &vec_i(&[0, 0])).unwrap_err(),
            Error::NonPrimitiveVector
        );
        assert_eq!(
            restrict_torus_to_circle(&e, &vec_i(&[1])).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
        let circle = EulerElement::zero(Group::Circle);
        assert!(matches!(
            restrict_torus_to_circle(&circle, &vec_i(&[1])),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn restrict_rank_one_self() {
        // Degenerate self-restriction on the rank-1 torus: L = <(n)> maps to
        // the cyclic orbit of order n, L = 0 to the fixed orbit.
        for n in 1..=6i64 {
            let e = EulerElement::single(torus_orbit(1, &[&[n]]), rat(1, 1));
            let r = restrict_torus_to_circle(&e, &vec_i(&[1])).unwrap();
            assert_eq!(r, EulerElement::single(cyc(n as u64), rat(1, 1)));
        }
        let e = EulerElement::single(torus_orbit(1, &[]), rat(1, 1));
        let r = restrict_torus_to_circle(&e, &vec_i(&[1])).unwrap();
        assert_eq!(r, EulerElement::single(OrbitType::CircleFull, rat(1, 1)));
    }

    #[test]
    fn chi_gamma_point() {
        let x = GammaCWComplex::new(2, vec![(0, 2)]).unwrap();
        assert_eq!(chi_gamma(&x).values(), &[rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn chi_gamma_free_circle() {
        let x = GammaCWComplex::new(2, vec![(0, 1), (1, 1)]).unwrap();
        assert_eq!(chi_gamma(&x).values(), &[rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn chi_gamma_rotation_sphere() {
        // Z/2 rotation of the 2-sphere about an axis: two fixed poles, a
        // free orbit of equator vertices, three free orbits of edges (the
        // equator arcs and the meridians to either pole), and two free
        // orbits of lune faces. Values frozen against the simplicial
        // Lefschetz oracle below: (2, 2).
        let x = GammaCWComplex::new(
            2,
            vec![
                (0, 2),
                (0, 2),
                (0, 1),
                (1, 1),
                (1, 1),
                (1, 1),
                (2, 1),
                (2, 1),
            ],
        )
        .unwrap();
        assert_eq!(chi_gamma(&x).values(), &[rat(2, 1), rat(2, 1)]);
    }

    /// Simplicial Lefschetz oracle: alternating sum of traces of a vertex
    /// permutation acting on oriented simplicial chains. Simplices are given
    /// by sorted vertex lists; the trace contribution of a setwise-fixed
    /// simplex is the sign of the induced vertex permutation.
    fn lefschetz(simplices: &[Vec<usize>], perm: &[usize]) -> i64 {
        let mut total = 0i64;
        for s in simplices {
            let img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            if &sorted != s {
                continue;
            }
            let mut pos: Vec<usize> = img
                .iter()
                .map(|v| s.iter().position(|w| w == v).unwrap())
                .collect();
            let mut sign = 1i64;
            for i in 0..pos.len() {
                while pos[i] != i {
                    let j = pos[i];
                    pos.swap(i, j);
                    sign = -sign;
                }
            }
            let dim = s.len() - 1;
            total += if dim % 2 == 0 { sign } else { -sign };
        }
        total
    }

    #[test]
    fn chi_gamma_matches_simplicial_oracle_on_octahedron() {
        // Octahedron model of the rotation sphere: vertices N,S,E,W,F,B =
        // 0..=5; rotation by pi about the NS axis swaps E<->W and F<->B.
        let faces: Vec<Vec<usize>> = [
            [0, 2, 4],
            [0, 3, 4],
            [0, 3, 5],
            [0, 2, 5],
            [1, 2, 4],
            [1, 3, 4],
            [1, 3, 5],
            [1, 2, 5],
        ]
        .iter()
        .map(|f| {
            let mut v = f.to_vec();
            v.sort_unstable();
            v
        })
        .collect();
        let mut simplices: Vec<Vec<usize>> = (0..6).map(|v| vec![v]).collect();
        let mut edges = std::collections::BTreeSet::new();
        for f in &faces {
            edges.insert(vec![f[0], f[1]]);
            edges.insert(vec![f[0], f[2]]);
            edges.insert(vec![f[1], f[2]]);
        }
        simplices.extend(edges);
        simplices.extend(faces);

        let id: Vec<usize> = (0..6).collect();
        let rot = vec![0, 1, 3, 2, 5, 4];
        let cellular = chi_gamma(
            &GammaCWComplex::new(
                2,
                vec![
                    (0, 2),
                    (0, 2),
                    (0, 1),
                    (1, 1),
                    (1, 1),
                    (1, 1),
                    (2, 1),
                    (2, 1),
                ],
            )
            .unwrap(),
        );
        assert_eq!(cellular.value(0), &rat(lefschetz(&simplices, &id), 1));
        assert_eq!(cellular.value(1), &rat(lefschetz(&simplices, &rot), 1));
    }

    #[test]
    fn classfn_product_examples() {
        let unit = ClassFunction::new(vec![rat(1, 1), rat(1, 1)]).unwrap();
        let f = ClassFunction::new(vec![rat(7, 2), rat(-4, 1)]).unwrap();
        assert_eq!(unit.pointwise_product(&f).unwrap(), f);

        let zero = ClassFunction::new(vec![rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(zero.pointwise_product(&f).unwrap(), zero);

        let a = ClassFunction::new(vec![rat(2, 1), rat(0, 1)]).unwrap();
        let b = ClassFunction::new(vec![rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(
            a.pointwise_product(&b).unwrap(),
            ClassFunction::new(vec![rat(6, 1), rat(0, 1)]).unwrap()
        );

        let c = ClassFunction::new(vec![rat(1, 1)]).unwrap();
        assert!(matches!(
            f.pointwise_product(&c),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn classfn_average_examples() {
        assert_eq!(
            ClassFunction::new(vec![rat(1, 1), rat(1, 1)])
                .unwrap()
                .average(),
            rat(1, 1)
        );
        assert_eq!(
            ClassFunction::new(vec![rat(2, 1), rat(0, 1)])
                .unwrap()
                .average(),
            rat(1, 1)
        );
        assert_eq!(
            ClassFunction::new(vec![rat(0, 1), rat(0, 1), rat(3, 1)])
                .unwrap()
                .average(),
            rat(1, 1)
        );
    }

    #[test]
    fn average_of_free_complex_is_quotient_chi() {
        // Every free cell contributes N at the identity and nothing
        // elsewhere, so the average recovers the signed cell count of the
        // quotient.
        for n in [2u64, 3, 6] {
            let cells = vec![(0, 1), (1, 1), (2, 1), (2, 1)];
            let x = GammaCWComplex::new(n, cells.clone()).unwrap();
            let avg = chi_gamma(&x).average();
            let quotient_chi: i64 = cells
                .iter()
                .map(|&(d, _)| if d % 2 == 0 { 1 } else { -1 })
                .sum();
            assert_eq!(avg, rat(quotient_chi, 1));
        }
    }

    #[test]
    fn chi_additive_over_disjoint_union() {
        let a = GCWComplex::new(Group::Circle, vec![(0, cyc(1)), (1, cyc(2))]).unwrap();
        let b =
            GCWComplex::new(Group::Circle, vec![(2, cyc(2)), (0, OrbitType::CircleFull)]).unwrap();
        let mut cells = a.cells().to_vec();
        cells.extend(b.cells().to_vec());
        let union = GCWComplex::new(Group::Circle, cells).unwrap();
        let sum = EulerElement::combine(
            &rat(1, 1),
            &chi_equivariant(&a),
            &rat(1, 1),
            &chi_equivariant(&b),
        )
        .unwrap();
        assert_eq!(chi_equivariant(&union), sum);
    }

    #[test]
    fn orbit_type_equality_is_hnf_equality() {
        let a = torus_orbit(2, &[&[4, 6], &[2, 2]]);
        let b = torus_orbit(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(a, b);
    }

    proptest::proptest! {
        #[test]
        fn restriction_is_linear(
            coeffs in proptest::collection::vec((-5i64..=5, 1i64..=4), 1..4),
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 1..3),
            a in -3i64..=3,
            b in -3i64..=3,
        ) {
            let orbit = torus_orbit(2, &rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let group = Group::Torus { rank: 2 };
            let mut terms1 = Vec::new();
            let mut terms2 = Vec::new();
            for (i, &(n, d)) in coeffs.iter().enumerate() {
                let t = if i % 2 == 0 { &mut terms1 } else { &mut terms2 };
                t.push((orbit.clone(), rat(n, d)));
            }
            let e1 = EulerElement::from_terms(group, terms1).unwrap();
            let e2 = EulerElement::from_terms(group, terms2).unwrap();
            let v = vec_i(&[1, 1]);
            let lhs = restrict_torus_to_circle(
                &EulerElement::combine(&rat(a, 1), &e1, &rat(b, 1), &e2).unwrap(),
                &v,
            )
            .unwrap();
            let rhs = EulerElement::combine(
                &rat(a, 1),
                &restrict_torus_to_circle(&e1, &v).unwrap(),
                &rat(b, 1),
                &restrict_torus_to_circle(&e2, &v).unwrap(),
            )
            .unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
