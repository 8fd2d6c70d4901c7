//! The Johnson graph `J(D,k)`, its Terwilliger algebra `T(x0)` with respect
//! to an anchor vertex, and three independent routes to `dim T(x0)`: the
//! generated matrix algebra, the closed formula, and the Wedderburn block
//! structure.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binomial::binom;
use crate::error::{Error, Result};
use crate::lattice::{anchored_ab_slice, k_subsets, p_set, slice_decomposition_profile, Subset};
use crate::matrix::RepMatrix;
use crate::rational::{q, Rational};
use crate::span::{span_closure, SpanBasis};

/// Largest `C(D,k)` for which the generated algebra is computed unless a
/// different cap is configured. `C(9,4) = 126` fits.
pub const DEFAULT_BRUTEFORCE_CAP: u64 = 130;

fn check_dk(d: u32, k: u32) -> Result<()> {
    if k == 0 || k >= d {
        return Err(Error::OutOfRange(format!("J(D,k) needs 1 <= k <= D-1, got D = {d}, k = {k}")));
    }
    Ok(())
}

fn size(x: Subset) -> i64 {
    i64::from(x.count_ones())
}

/// `x0 = {0, ..., k-1}`.
pub fn default_anchor(k: u32) -> Subset {
    (1u64 << k) - 1
}

/// A `k`-subset drawn from a generator seeded by `seed` mixed with `(D, k)`,
/// different from [`default_anchor`].
pub fn random_anchor(d: u32, k: u32, seed: u64) -> Result<Subset> {
    check_dk(d, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(d) << 32 | u64::from(k)));
    loop {
        let x: Subset = sample(&mut rng, d as usize, k as usize).iter().map(|e| 1u64 << e).sum();
        if x != default_anchor(k) {
            return Ok(x);
        }
    }
}

/// Adjacency, dual adjacency and dual primitive idempotents of `J(D,k)` on
/// the `k`-subsets in mask order.
#[derive(Clone, Debug)]
pub struct JohnsonOps {
    pub d: u32,
    pub k: u32,
    pub x0: Subset,
    pub basis: Vec<Subset>,
    pub adjacency: RepMatrix,
    pub dual_adjacency: RepMatrix,
    /// `E*_i` projects onto the `x` with `|x ∩ x0| = k - i`, for `i = 0..=k`.
    pub dual_idempotents: Vec<RepMatrix>,
}

pub fn johnson_operators(d: u32, k: u32, x0: Subset) -> Result<JohnsonOps> {
    check_dk(d, k)?;
    if x0.count_ones() != k || x0 >> d != 0 {
        return Err(Error::InvalidAnchor(format!("anchor {x0:#b} is not a {k}-subset of Ω with D = {d}")));
    }
    let basis = k_subsets(d, k);
    let n = basis.len();
    let ki = i64::from(k);
    let adjacency =
        RepMatrix::from_fn(
            n,
            n,
            |r, c| {
                if size(basis[r] & basis[c]) == ki - 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            },
        );
    let (di, coef) = (i64::from(d), 2 * ki * (i64::from(d) - ki));
    let dual_adjacency = RepMatrix::diag(basis.iter().map(|&x| {
        let dist = size(x0 & !x) + size(x & !x0);
        Rational::from(di - 1) * (Rational::one() - q(di * dist, coef))
    }));
    let dual_idempotents =
        (0..=ki)
            .map(|i| {
                RepMatrix::diag(basis.iter().map(|&x| {
                    if size(x & x0) == ki - i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }))
            })
            .collect();
    let ops = JohnsonOps { d, k, x0, basis, adjacency, dual_adjacency, dual_idempotents };
    ops.check_invariants()?;
    Ok(ops)
}

impl JohnsonOps {
    pub fn vertex_count(&self) -> usize {
        self.basis.len()
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        let fail = |what: &str| Err(Error::CrossCheck(format!("J({}, {}): {what}", self.d, self.k)));
        let a = &self.adjacency;
        if *a != a.transpose() {
            return fail("adjacency is not symmetric");
        }
        let degree = Rational::from(u64::from(self.k) * u64::from(self.d - self.k));
        for r in 0..n {
            let row = a.row(r);
            if !row[r].is_zero() || row.iter().any(|x| !x.is_zero() && !x.is_one()) {
                return fail("adjacency is not 0/1 with zero diagonal");
            }
            if row.iter().cloned().sum::<Rational>() != degree {
                return fail("adjacency row sum differs from k(D-k)");
            }
        }
        let mut total = RepMatrix::zeros(n, n);
        for (i, ei) in self.dual_idempotents.iter().enumerate() {
            total = &total + ei;
            for (j, ej) in self.dual_idempotents.iter().enumerate() {
                let expected = if i == j { ei.clone() } else { RepMatrix::zeros(n, n) };
                if ei * ej != expected {
                    return fail("dual idempotents are not orthogonal idempotents");
                }
            }
        }
        if total != RepMatrix::identity(n) {
            return fail("dual idempotents do not sum to the identity");
        }
        let (d, k) = (i64::from(self.d), i64::from(self.k));
        let mut expansion = RepMatrix::zeros(n, n);
        for (i, ei) in self.dual_idempotents.iter().enumerate() {
            let theta = Rational::from(d - 1) * (Rational::one() - q(d * i as i64, k * (d - k)));
            expansion = &expansion + &ei.scale(&theta);
        }
        if expansion != self.dual_adjacency {
            return fail("dual adjacency differs from Σ θ*_i E*_i");
        }
        Ok(())
    }
}

fn check_cap(d: u32, k: u32, cap: u64) -> Result<()> {
    let n = binom(u64::from(d), u64::from(k));
    if n > cap {
        return Err(Error::SizeCapExceeded(format!("J({d}, {k}) has C(D,k) = {n} vertices, cap is {cap}")));
    }
    Ok(())
}

/// The algebra generated by the adjacency and dual adjacency operators.
pub fn terwilliger_algebra(d: u32, k: u32, x0: Subset, cap: u64) -> Result<SpanBasis> {
    check_dk(d, k)?;
    check_cap(d, k, cap)?;
    let ops = johnson_operators(d, k, x0)?;
    Ok(span_closure(&[ops.adjacency, ops.dual_adjacency], true)?.1)
}

pub fn terwilliger_dim_bruteforce(d: u32, k: u32, x0: Subset, cap: u64) -> Result<u64> {
    Ok(terwilliger_algebra(d, k, x0, cap)?.rank() as u64)
}

/// Whether the algebra generated by the adjacency and dual adjacency
/// operators equals the image of the Hahn algebra, i.e. the algebra generated
/// by the anchored `A`, `B` on the `k`-slice.
pub fn verify_t_equals_h_image(d: u32, k: u32, x0: Subset, cap: u64) -> Result<bool> {
    let t = terwilliger_algebra(d, k, x0, cap)?;
    let (a, b) = anchored_ab_slice(d, k, x0)?;
    let (_, h_image) = span_closure(&[a, b], true)?;
    Ok(t == h_image)
}

/// Which of the five `k`-ranges of the dimension formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DimensionCase {
    /// `1 <= k < D/3`
    I,
    /// `D/3 <= k < D/2`
    II,
    /// `k = D/2`
    III,
    /// `D/2 < k <= 2D/3`
    IV,
    /// `2D/3 < k <= D-1`
    V,
}

impl fmt::Display for DimensionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DimensionCase::I => "i",
            DimensionCase::II => "ii",
            DimensionCase::III => "iii",
            DimensionCase::IV => "iv",
            DimensionCase::V => "v",
        };
        f.pad(s)
    }
}

pub fn dimension_case(d: u32, k: u32) -> Result<DimensionCase> {
    check_dk(d, k)?;
    let (dq, kq) = (Rational::from(d), Rational::from(k));
    let third = &dq * &q(1, 3);
    let half = &dq * &q(1, 2);
    let two_thirds = &dq * &q(2, 3);
    Ok(if kq < third {
        DimensionCase::I
    } else if third <= kq && kq < half {
        DimensionCase::II
    } else if kq == half {
        DimensionCase::III
    } else if half < kq && kq <= two_thirds {
        DimensionCase::IV
    } else {
        DimensionCase::V
    })
}

/// `⌊C(N,4)/2 + C(N,3)/4 - C(N,2)/8 + C(N,1)/16⌋`.
fn stepped_floor(n: u64) -> u64 {
    let value = q(1, 2) * Rational::from(binom(n, 4)) + q(1, 4) * Rational::from(binom(n, 3))
        - q(1, 8) * Rational::from(binom(n, 2))
        + q(1, 16) * Rational::from(binom(n, 1));
    u64::try_from(value.floor()).expect("nonnegative")
}

/// `dim T(x0)` from the closed formula, with the case it came from.
pub fn terwilliger_dim_formula(d: u32, k: u32) -> Result<(DimensionCase, u64)> {
    let case = dimension_case(d, k)?;
    let (d, k) = (u64::from(d), u64::from(k));
    let dim = match case {
        DimensionCase::I => binom(k + 3, 4) + stepped_floor(k + 4),
        DimensionCase::II => binom(k + 3, 4) + stepped_floor(k + 4) - stepped_floor(3 * k + 3 - d),
        DimensionCase::III => stepped_floor(d / 2 + 4),
        DimensionCase::IV => binom(d - k + 3, 4) + stepped_floor(d - k + 4) - stepped_floor(2 * d + 3 - 3 * k),
        DimensionCase::V => binom(d - k + 3, 4) + stepped_floor(d - k + 4),
    };
    Ok((case, dim))
}

/// Which description of the block index sets applies to `k <= D/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockRange {
    /// `1 <= k < D/3`
    BelowThird,
    /// `D/3 <= k < 2D/5`
    ThirdToTwoFifths,
    /// `2D/5 <= k < D/2`
    TwoFifthsToHalf,
    /// `k = D/2`
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BlockPart {
    I,
    II,
    III,
}

/// One `End(C^size)` summand, labelled by its index pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub part: BlockPart,
    pub i: u32,
    pub j: u32,
    pub size: u64,
}

fn block_range(d: u32, k: u32) -> Result<BlockRange> {
    check_dk(d, k)?;
    let (d, k) = (u64::from(d), u64::from(k));
    Ok(if 3 * k < d {
        BlockRange::BelowThird
    } else if 5 * k < 2 * d {
        BlockRange::ThirdToTwoFifths
    } else if 2 * k < d {
        BlockRange::TwoFifthsToHalf
    } else if 2 * k == d {
        BlockRange::Half
    } else {
        return Err(Error::OutOfRange(format!("block index sets need k <= D/2, got D = {d}, k = {k}")));
    })
}

/// The block index sets `P_I`, `P_II`, `P_III` for `1 <= k <= D/2` with the
/// size rules `k-2j+1`, `k-i-j+1`, `D-k-2i+1`; for `k = D/2` the blocks
/// `D/2-2j+1` over `0 <= i <= j <= D/4`.
///
/// Conditions are written with both sides doubled so that `k/2` and
/// `(D-k)/2` stay integral. Membership in each part is tested separately, so
/// overlapping parts show up as repeated pairs.
pub fn block_index_sets(d: u32, k: u32) -> Result<(BlockRange, Vec<Block>)> {
    let range = block_range(d, k)?;
    let (d, k) = (i64::from(d), i64::from(k));
    let mut blocks = Vec::new();
    let mut push = |part, i: i64, j: i64, size: i64| {
        blocks.push(Block { part, i: i as u32, j: j as u32, size: size as u64 });
    };
    for i in 0..=d {
        for j in 0..=d {
            // P_I is common to the three ranges below D/2.
            let p_i = i <= j && 2 * j <= k;
            match range {
                BlockRange::BelowThird => {
                    let p_ii = (j < i && 2 * i <= k) || (k < 2 * i && i <= k && j <= k - i);
                    if p_i {
                        push(BlockPart::I, i, j, k - 2 * j + 1);
                    }
                    if p_ii {
                        push(BlockPart::II, i, j, k - i - j + 1);
                    }
                }
                BlockRange::ThirdToTwoFifths => {
                    let p_ii = (j < i && 2 * i <= k)
                        || (k < 2 * i && i <= d - 2 * k && j <= k - i)
                        || (d - 2 * k < i && 2 * i <= d - k && 2 * k - d + i <= j && j <= k - i);
                    let p_iii = j < 2 * k - d + i && 2 * (2 * k - d + i) <= 3 * k - d;
                    if p_i {
                        push(BlockPart::I, i, j, k - 2 * j + 1);
                    }
                    if p_ii {
                        push(BlockPart::II, i, j, k - i - j + 1);
                    }
                    if p_iii {
                        push(BlockPart::III, i, j, d - k - 2 * i + 1);
                    }
                }
                BlockRange::TwoFifthsToHalf => {
                    let p_ii = (j < i && i <= d - 2 * k)
                        || (d - 2 * k < i && 2 * i <= k && 2 * k - d + i <= j && j < i)
                        || (k < 2 * i && 2 * i <= d - k && 2 * k - d + i <= j && j <= k - i);
                    let p_iii = j < 2 * k - d + i && 2 * (2 * k - d + i) <= 3 * k - d;
                    if p_i {
                        push(BlockPart::I, i, j, k - 2 * j + 1);
                    }
                    if p_ii {
                        push(BlockPart::II, i, j, k - i - j + 1);
                    }
                    if p_iii {
                        push(BlockPart::III, i, j, d - k - 2 * i + 1);
                    }
                }
                BlockRange::Half => {
                    if i <= j && 4 * j <= d {
                        push(BlockPart::I, i, j, d / 2 - 2 * j + 1);
                    }
                }
            }
        }
    }
    Ok((range, blocks))
}

/// The index set `I(k)` of the earlier block description and, for `k < D/2`,
/// its parts `j <= i`, `0 < j-i <= D-2k`, `D-2k < j-i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItoIndexSets {
    pub all: Vec<(u32, u32)>,
    pub part_i: Vec<(u32, u32)>,
    pub part_ii: Vec<(u32, u32)>,
    pub part_iii: Vec<(u32, u32)>,
}

/// `I(k) = {(i,j) : 0 <= i <= k/2, 0 <= j <= min{k, (D-k)/2}, i+j <= k}`.
pub fn ito_index_sets(d: u32, k: u32) -> Result<ItoIndexSets> {
    check_dk(d, k)?;
    let (di, ki) = (i64::from(d), i64::from(k));
    let mut sets = ItoIndexSets { all: Vec::new(), part_i: Vec::new(), part_ii: Vec::new(), part_iii: Vec::new() };
    for i in 0..=ki {
        for j in 0..=ki {
            if !(2 * i <= ki && j <= ki && 2 * j <= di - ki && i + j <= ki) {
                continue;
            }
            let pair = (i as u32, j as u32);
            sets.all.push(pair);
            if j <= i {
                sets.part_i.push(pair);
            } else if j - i <= di - 2 * ki {
                sets.part_ii.push(pair);
            } else {
                sets.part_iii.push(pair);
            }
        }
    }
    Ok(sets)
}

/// Block sizes of the earlier description: `k-2i+1`, `k-i-j+1`, `D-k-2j+1`
/// over the three parts of `I(k)` for `k < D/2`, and `i+1` copies of
/// `D/2-2i+1` for `0 <= i <= D/4` when `k = D/2`.
pub fn ito_block_sizes(d: u32, k: u32) -> Result<Vec<u64>> {
    let (di, ki) = (i64::from(d), i64::from(k));
    if 2 * ki == di {
        check_dk(d, k)?;
        return Ok((0..=di / 4)
            .flat_map(|i| std::iter::repeat_n((di / 2 - 2 * i + 1) as u64, i as usize + 1))
            .collect());
    }
    let sets = ito_index_sets(d, k)?;
    let sizes = |pairs: &[(u32, u32)], f: &dyn Fn(i64, i64) -> i64| -> Vec<u64> {
        pairs.iter().map(|&(i, j)| f(i64::from(i), i64::from(j)) as u64).collect()
    };
    let mut out = sizes(&sets.part_i, &|i, _| ki - 2 * i + 1);
    out.extend(sizes(&sets.part_ii, &|i, j| ki - i - j + 1));
    out.extend(sizes(&sets.part_iii, &|_, j| di - ki - 2 * j + 1));
    Ok(out)
}

/// The Wedderburn blocks of `T(x0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub d: u32,
    pub k: u32,
    /// `min{k, D-k}`, where the index sets are evaluated.
    pub reduced_k: u32,
    pub range: BlockRange,
    pub blocks: Vec<Block>,
}

impl BlockStructure {
    /// Block sizes, largest first.
    pub fn sizes(&self) -> Vec<u64> {
        sorted_desc(self.blocks.iter().map(|b| b.size).collect())
    }

    pub fn wedderburn_dim(&self) -> u64 {
        self.blocks.iter().map(|b| b.size * b.size).sum()
    }
}

fn sorted_desc(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Blocks of `T(x0)` for `J(D,k)`, evaluated on `J(D, min{k, D-k})` and
/// cross-checked against the slice decomposition and the earlier `I(k)`
/// description.
pub fn terwilliger_blocks(d: u32, k: u32) -> Result<BlockStructure> {
    check_dk(d, k)?;
    let reduced_k = k.min(d - k);
    let (range, blocks) = block_index_sets(d, reduced_k)?;
    let structure = BlockStructure { d, k, reduced_k, range, blocks };
    let sizes = structure.sizes();
    let mismatch = |what: &str, other: &[u64]| {
        Error::CrossCheck(format!("J({d}, {k}): blocks {sizes:?} differ from {what} {other:?}"))
    };

    let profile = slice_decomposition_profile(d, reduced_k)?;
    let profile_dims = sorted_desc(profile.dims().into_iter().map(|x| x as u64).collect());
    if profile_dims != sizes {
        return Err(mismatch("slice class dimensions", &profile_dims));
    }
    let ito = sorted_desc(ito_block_sizes(d, reduced_k)?);
    if ito != sizes {
        return Err(mismatch("the I(k) block sizes", &ito));
    }

    let mut pairs: Vec<(u32, u32)> = structure.blocks.iter().map(|b| (b.i, b.j)).collect();
    pairs.sort_unstable();
    // For k = D/2 the mirrored pairs (i,j), (j,i) of P(k) are one class and
    // the blocks list it once, as the pair with i <= j.
    let mut expected: Vec<(u32, u32)> = if range == BlockRange::Half {
        profile
            .entries
            .iter()
            .map(|e| {
                let (i, j) = e.index_pairs[0];
                (i.min(j), i.max(j))
            })
            .collect()
    } else {
        p_set(d, reduced_k)
    };
    expected.sort_unstable();
    if pairs != expected {
        return Err(Error::CrossCheck(format!("J({d}, {k}): block index pairs do not partition P(k)")));
    }
    if range != BlockRange::Half {
        let sets = ito_index_sets(d, reduced_k)?;
        for (part, ito_pairs) in
            [(BlockPart::I, &sets.part_i), (BlockPart::II, &sets.part_ii), (BlockPart::III, &sets.part_iii)]
        {
            let mut swapped: Vec<(u32, u32)> = ito_pairs.iter().map(|&(i, j)| (j, i)).collect();
            swapped.sort_unstable();
            let mut ours: Vec<(u32, u32)> =
                structure.blocks.iter().filter(|b| b.part == part).map(|b| (b.i, b.j)).collect();
            ours.sort_unstable();
            if swapped != ours {
                return Err(Error::CrossCheck(format!(
                    "J({d}, {k}): (i,j) -> (j,i) does not carry part {part:?} of I(k) onto the matching block part"
                )));
            }
        }
    }
    Ok(structure)
}
