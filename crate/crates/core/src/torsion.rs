//! The torsion assignment on Euler elements, torsion of closed equivariant
//! cell complexes, rank-one symmetric-space assembly from coset projection
//! data, and the doubling/gluing calculus for manifolds with corner
//! singularities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::{chi_equivariant, EulerElement, GCWComplex, Group, OrbitType};
use crate::series::TorsionSeries;

/// Torsion homomorphism on circle Euler elements: the fixed orbit goes to
/// zero, the cyclic orbit of order `n` to the circle series rescaled by the
/// `n`-fold covering, extended linearly.
pub fn t_s1(e: &EulerElement, truncation: usize) -> Result<TorsionSeries> {
    if e.group() != Group::Circle {
        return Err(Error::GroupMismatch {
            expected: Group::Circle.to_string(),
            got: e.group().to_string(),
        });
    }
    let mut acc = TorsionSeries::zero(1, truncation);
    let one = BigRational::one();
    for (orbit, coeff) in e.terms() {
        match orbit {
            OrbitType::CircleFull => {}
            OrbitType::CircleCyclic(n) => {
                let scaled = TorsionSeries::circle(truncation).scale_variable(n)?;
                acc = TorsionSeries::combine(&one, &acc, coeff, &scaled)?;
            }
            OrbitType::TorusSubgroup(_) => unreachable!("circle element"),
        }
    }
    Ok(acc)
}

/// Torsion of a closed circle complex: the torsion homomorphism applied to
/// its equivariant Euler characteristic.
pub fn torsion_closed(x: &GCWComplex, truncation: usize) -> Result<TorsionSeries> {
    t_s1(&chi_equivariant(x), truncation)
}

/// Torsion homomorphism on torus Euler elements. An orbit type with
/// character lattice `L` contributes nothing unless `L` has rank one, in
/// which case the circle series is substituted along the Hermite generator
/// of `L`.
pub fn t_torus(e: &EulerElement, truncation: usize) -> Result<TorsionSeries> {
    let Group::Torus { rank } = e.group() else {
        return Err(Error::GroupMismatch {
            expected: "T^k".into(),
            got: e.group().to_string(),
        });
    };
    let mut acc = TorsionSeries::zero(rank, truncation);
    let one = BigRational::one();
    for (orbit, coeff) in e.terms() {
        let OrbitType::TorusSubgroup(m) = orbit else {
            unreachable!("torus element");
        };
        let (lattice_rank, generator) = m.rank_and_generator();
        if lattice_rank == 1 {
            let a = generator.expect("rank one has a generator").row();
            let sub = TorsionSeries::circle(truncation).substitute_linear(&a);
            acc = TorsionSeries::combine(&one, &acc, coeff, &sub)?;
        }
    }
    Ok(acc)
}

/// Restriction data of a rank-one symmetric space to a maximal torus: one
/// integer covector per Weyl coset, the derivative of the projection of the
/// torus onto the circle quotient attached to that coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSpaceData {
    torus_rank: usize,
    coset_covectors: Vec<Vec<BigInt>>,
}

impl SymmetricSpaceData {
    pub fn new(torus_rank: usize, coset_covectors: Vec<Vec<BigInt>>) -> Result<Self> {
        if torus_rank == 0 {
            return Err(Error::InvalidConstruction("torus rank must be >= 1".into()));
        }
        for (i, c) in coset_covectors.iter().enumerate() {
            if c.len() != torus_rank {
                return Err(Error::DimensionMismatch {
                    expected: torus_rank,
                    got: c.len(),
                });
            }
            if c.iter().all(|x| x.is_zero()) {
                return Err(Error::InvalidConstruction(format!(
                    "coset covector {} is zero",
                    i
                )));
            }
        }
        Ok(SymmetricSpaceData {
            torus_rank,
            coset_covectors,
        })
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn coset_covectors(&self) -> &[Vec<BigInt>] {
        &self.coset_covectors
    }
}

/// Torus restriction of the torsion of a rank-one symmetric space: the sum
/// over coset covectors of the substituted circle series. An empty list is
/// the higher-rank case and yields zero.
pub fn rank1_symmetric_space(data: &SymmetricSpaceData, truncation: usize) -> TorsionSeries {
    let one = BigRational::one();
    let mut acc = TorsionSeries::zero(data.torus_rank, truncation);
    for c in &data.coset_covectors {
        let sub = TorsionSeries::circle(truncation).substitute_linear(c);
        acc = TorsionSeries::combine(&one, &acc, &one, &sub).expect("vars match by construction");
    }
    acc
}

/// Stratified Euler data of a manifold with corner singularities and `l`
/// numbered boundary pieces: one Euler element per subset of pieces, the
/// element of the intersection of those boundary pieces (the empty subset
/// is the manifold itself). Subsets are addressed as bitmasks with bit
/// `i - 1` for piece `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerChi {
    group: Group,
    pieces: usize,
    strata: Vec<EulerElement>,
}

pub const MAX_CORNER_PIECES: usize = 16;

impl CornerChi {
    /// `strata[mask]` is the entry of the subset encoded by `mask`; all
    /// `2^pieces` entries are required.
    pub fn new(group: Group, pieces: usize, strata: Vec<EulerElement>) -> Result<Self> {
        if pieces > MAX_CORNER_PIECES {
            return Err(Error::TooManyPieces { pieces });
        }
        if strata.len() != 1usize << pieces {
            return Err(Error::InvalidConstruction(format!(
                "expected {} strata entries for {} pieces, got {}",
                1usize << pieces,
                pieces,
                strata.len()
            )));
        }
        for e in &strata {
            if e.group() != group {
                return Err(Error::GroupMismatch {
                    expected: group.to_string(),
                    got: e.group().to_string(),
                });
            }
        }
        Ok(CornerChi {
            group,
            pieces,
            strata,
        })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn pieces(&self) -> usize {
        self.pieces
    }

    pub fn stratum(&self, mask: usize) -> &EulerElement {
        &self.strata[mask]
    }

    pub fn strata(&self) -> &[EulerElement] {
        &self.strata
    }

    /// Double along boundary piece `i` (1-based). The result has the
    /// remaining pieces, renumbered order-preservingly, and each stratum of
    /// the double is glued from two copies along its intersection with the
    /// doubled piece: `2 * entry(S) - entry(S + {i})`.
    pub fn double(&self, piece: usize) -> Result<CornerChi> {
        if piece == 0 || piece > self.pieces {
            return Err(Error::PieceOutOfRange {
                piece,
                pieces: self.pieces,
            });
        }
        let bit = piece - 1;
        let two = BigRational::from_integer(BigInt::from(2));
        let minus_one = -BigRational::one();
        let new_pieces = self.pieces - 1;
        let mut strata = Vec::with_capacity(1 << new_pieces);
        for new_mask in 0..1usize << new_pieces {
            let low = new_mask & ((1usize << bit) - 1);
            let old = ((new_mask >> bit) << (bit + 1)) | low;
            let e = EulerElement::combine(
                &two,
                &self.strata[old],
                &minus_one,
                &self.strata[old | (1 << bit)],
            )?;
            strata.push(e);
        }
        CornerChi::new(self.group, new_pieces, strata)
    }

    /// Euler element of the corner manifold, by the doubling recursion:
    /// half the value of the double along the first piece, with the closed
    /// manifold as base case.
    pub fn chi(&self) -> EulerElement {
        if self.pieces == 0 {
            return self.strata[0].clone();
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.double(1).expect("piece 1 exists").chi().scaled(&half)
    }

    /// Inclusion-exclusion closed form of the same value:
    /// `sum_S (-1/2)^|S| entry(S)`. Kept as an independent route for
    /// cross-checking the recursion.
    pub fn chi_inclusion_exclusion(&self) -> EulerElement {
        let minus_half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let mut acc = EulerElement::zero(self.group);
        let one = BigRational::one();
        for (mask, e) in self.strata.iter().enumerate() {
            let weight = minus_half.pow(mask.count_ones() as i32);
            acc = EulerElement::combine(&one, &acc, &weight, e).expect("same group");
        }
        acc
    }

    /// Glue two corner manifolds along their piece 1, which must carry
    /// identical strata data in both (including every corner stratum meeting
    /// it). The result keeps pieces `2..=l`, renumbered, with
    /// `entry(S) = c1(S) + c2(S) - c1(S + {1})`.
    pub fn glue(&self, other: &CornerChi) -> Result<CornerChi> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                expected: self.group.to_string(),
                got: other.group.to_string(),
            });
        }
        if self.pieces != other.pieces {
            return Err(Error::GlueIncompatible(format!(
                "piece counts differ: {} vs {}",
                self.pieces, other.pieces
            )));
        }
        if self.pieces == 0 {
            return Err(Error::GlueIncompatible(
                "no boundary piece to glue along".into(),
            ));
        }
        for mask in 0..self.strata.len() {
            if mask & 1 == 1 && self.strata[mask] != other.strata[mask] {
                return Err(Error::GlueIncompatible(format!(
                    "strata at subset mask {:#b} differ on the glued piece",
                    mask
                )));
            }
        }
        let one = BigRational::one();
        let new_pieces = self.pieces - 1;
        let mut strata = Vec::with_capacity(1 << new_pieces);
        for new_mask in 0..1usize << new_pieces {
            let old = new_mask << 1;
            let sum = EulerElement::combine(&one, &self.strata[old], &one, &other.strata[old])?;
            let e = EulerElement::combine(&one, &sum, &-one.clone(), &self.strata[old | 1])?;
            strata.push(e);
        }
        CornerChi::new(self.group, new_pieces, strata)
    }
}

/// Torsion of a corner manifold over the circle: the torsion homomorphism
/// applied to its corner Euler element.
pub fn corner_torsion(c: &CornerChi, truncation: usize) -> Result<TorsionSeries> {
    t_s1(&c.chi(), truncation)
}
