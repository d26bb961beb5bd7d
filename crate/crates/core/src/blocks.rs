//! Block designs, BIBD verification, and the correspondence between
//! E(s^2)-optimal designs and BIBDs.
//!
//! A design X with first row all +1 determines the incidence matrix Z (the
//! remaining N - 1 rows): treatment i lies in block j iff z_ij = +1.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::design::DesignMatrix;
use crate::error::{Error, Result};

/// `blocks` of equal size `k` over treatments `0..v`, each stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDesign {
    v: usize,
    k: usize,
    blocks: Vec<Vec<u32>>,
}

impl BlockDesign {
    /// Validates sizes and labels; sorts each block.
    pub fn new(v: usize, k: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for (index, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            if block.len() != k {
                return Err(Error::BadBlock {
                    index,
                    reason: format!("size {} != {k}", block.len()),
                });
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadBlock {
                    index,
                    reason: "repeated treatment".into(),
                });
            }
            if let Some(&t) = block.iter().find(|&&t| t as usize >= v) {
                return Err(Error::BadBlock {
                    index,
                    reason: format!("treatment {t} out of range 0..{v}"),
                });
            }
            out.push(block);
        }
        Ok(BlockDesign { v, k, blocks: out })
    }

    pub(crate) fn from_sorted(v: usize, k: usize, blocks: Vec<Vec<u32>>) -> Self {
        debug_assert!(blocks.iter().all(|b| b.len() == k && b.is_sorted()));
        BlockDesign { v, k, blocks }
    }

    pub fn treatments(&self) -> usize {
        self.v
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<u32>> {
        self.blocks
    }

    /// First pair of identical blocks, if any.
    pub fn repeated_blocks(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(self.blocks.len());
        for (j, b) in self.blocks.iter().enumerate() {
            if let Some(&i) = seen.get(b.as_slice()) {
                return Some((i, j));
            }
            seen.insert(b, j);
        }
        None
    }

    pub fn has_distinct_blocks(&self) -> bool {
        self.repeated_blocks().is_none()
    }

    /// Concatenates blocks of designs with matching v and k.
    pub fn union(&self, other: &BlockDesign) -> Result<BlockDesign> {
        if self.v != other.v || self.k != other.k {
            return Err(Error::Shape(format!(
                "cannot join ({}, {}) with ({}, {})",
                self.v, self.k, other.v, other.k
            )));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(BlockDesign::from_sorted(self.v, self.k, blocks))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BibdParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
}

impl BibdParams {
    /// vr = bk and lambda(v - 1) = r(k - 1).
    pub fn satisfies_counting_identities(&self) -> bool {
        self.v * self.r == self.b * self.k
            && self.lambda * (self.v.saturating_sub(1)) == self.r * (self.k.saturating_sub(1))
    }
}

impl fmt::Display for BibdParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BIBD({},{},{}) r={} lambda={}",
            self.v, self.b, self.k, self.r, self.lambda
        )
    }
}

/// The first balance condition a block design violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BibdFailure {
    NoBlocks,
    UnequalBlockSize {
        block: usize,
        size: usize,
        expected: usize,
    },
    UnequalPairCount {
        first: (u32, u32),
        first_count: usize,
        pair: (u32, u32),
        count: usize,
    },
    UnequalReplication {
        first_count: usize,
        treatment: u32,
        count: usize,
    },
}

impl fmt::Display for BibdFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BibdFailure::NoBlocks => write!(f, "no blocks"),
            BibdFailure::UnequalBlockSize {
                block,
                size,
                expected,
            } => write!(f, "block {block} has size {size}, expected {expected}"),
            BibdFailure::UnequalPairCount {
                first,
                first_count,
                pair,
                count,
            } => write!(
                f,
                "pair ({},{}) count {first_count} != pair ({},{}) count {count}",
                first.0, first.1, pair.0, pair.1
            ),
            BibdFailure::UnequalReplication {
                first_count,
                treatment,
                count,
            } => write!(
                f,
                "treatment 0 replicated {first_count} times, treatment {treatment} {count} times"
            ),
        }
    }
}

/// Checks block size, pair balance, then replication.
///
/// With k >= 2, pair balance already forces constant replication; the
/// replication check only matters for k < 2. Block distinctness is separate.
pub fn is_bibd(design: &BlockDesign) -> std::result::Result<BibdParams, BibdFailure> {
    let blocks = design.blocks();
    if blocks.is_empty() {
        return Err(BibdFailure::NoBlocks);
    }
    let k = blocks[0].len();
    if let Some((block, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() != k) {
        return Err(BibdFailure::UnequalBlockSize {
            block,
            size: b.len(),
            expected: k,
        });
    }
    let v = design.treatments();
    let mut pairs = vec![0usize; v * v];
    let mut reps = vec![0usize; v];
    for b in blocks {
        for (i, &a) in b.iter().enumerate() {
            reps[a as usize] += 1;
            for &c in &b[i + 1..] {
                pairs[a as usize * v + c as usize] += 1;
            }
        }
    }
    let mut lambda = None;
    for a in 0..v {
        for c in a + 1..v {
            let count = pairs[a * v + c];
            match lambda {
                None => lambda = Some(count),
                Some(l) if l != count => {
                    return Err(BibdFailure::UnequalPairCount {
                        first: (0, 1),
                        first_count: l,
                        pair: (a as u32, c as u32),
                        count,
                    })
                }
                _ => {}
            }
        }
    }
    let r = reps[0];
    if let Some((t, &count)) = reps.iter().enumerate().find(|(_, &c)| c != r) {
        return Err(BibdFailure::UnequalReplication {
            first_count: r,
            treatment: t as u32,
            count,
        });
    }
    Ok(BibdParams {
        v,
        b: blocks.len(),
        k,
        r,
        lambda: lambda.unwrap_or(0),
    })
}

/// Drops the first row after flipping columns that start with -1.
///
/// Block j collects the treatments (rows 1..N, relabelled 0..N-1) holding +1
/// in column j. The design should already be balanced.
pub fn design_to_bibd(x: &DesignMatrix) -> BlockDesign {
    let n = x.runs();
    let v = n - 1;
    let blocks: Vec<Vec<u32>> = x
        .columns()
        .map(|col| {
            let flip = col[0] < 0;
            (1..n)
                .filter(|&i| (col[i] > 0) != flip)
                .map(|i| (i - 1) as u32)
                .collect()
        })
        .collect();
    let k = blocks.first().map_or(0, Vec::len);
    BlockDesign::from_sorted(v, k, blocks)
}

/// Prepends an all-ones row to the +/-1 incidence matrix.
pub fn bibd_to_design(design: &BlockDesign) -> Result<DesignMatrix> {
    let v = design.treatments();
    if v % 2 == 0 {
        return Err(Error::Shape(format!("v = {v} must be odd")));
    }
    let expected = (v - 1) / 2;
    if design.block_size() != expected {
        return Err(Error::BadBlockSize {
            got: design.block_size(),
            expected,
        });
    }
    if let Some((i, j)) = design.repeated_blocks() {
        return Err(Error::RepeatedBlocks(i, j));
    }
    let columns: Vec<Vec<i8>> = design
        .blocks()
        .iter()
        .map(|b| {
            let mut col = vec![-1i8; v + 1];
            col[0] = 1;
            for &t in b {
                col[t as usize + 1] = 1;
            }
            col
        })
        .collect();
    DesignMatrix::from_columns(v + 1, &columns)
}

/// All k-subsets of the treatments that are not blocks of `design`.
pub fn trivial_complement(design: &BlockDesign) -> Result<BlockDesign> {
    if let Some((i, j)) = design.repeated_blocks() {
        return Err(Error::RepeatedBlocks(i, j));
    }
    let present: HashSet<&[u32]> = design.blocks().iter().map(Vec::as_slice).collect();
    let v = design.treatments() as u32;
    let blocks: Vec<Vec<u32>> = (0..v)
        .combinations(design.block_size())
        .filter(|c| !present.contains(c.as_slice()))
        .collect();
    Ok(BlockDesign::from_sorted(
        design.treatments(),
        design.block_size(),
        blocks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_by_three() -> DesignMatrix {
        DesignMatrix::from_rows(&[
            vec![1, 1, 1],
            vec![1, -1, -1],
            vec![-1, 1, -1],
            vec![-1, -1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn design_to_bibd_small() {
        let b = design_to_bibd(&four_by_three());
        assert_eq!(b.treatments(), 3);
        assert_eq!(b.block_size(), 1);
        assert_eq!(b.blocks(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(
            is_bibd(&b).unwrap(),
            BibdParams {
                v: 3,
                b: 3,
                k: 1,
                r: 1,
                lambda: 0
            }
        );
    }

    #[test]
    fn bibd_to_design_small() {
        let b = BlockDesign::new(3, 1, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(bibd_to_design(&b).unwrap(), four_by_three());
    }

    #[test]
    fn sign_normalization_before_conversion() {
        let mut x = four_by_three();
        x.negate_column(1);
        assert_eq!(design_to_bibd(&x), design_to_bibd(&four_by_three()));
    }

    #[test]
    fn repeated_blocks_rejected() {
        let b = BlockDesign::new(3, 1, vec![vec![0], vec![0], vec![2]]).unwrap();
        assert!(matches!(bibd_to_design(&b), Err(Error::RepeatedBlocks(0, 1))));
        assert!(matches!(trivial_complement(&b), Err(Error::RepeatedBlocks(0, 1))));
    }

    #[test]
    fn wrong_block_size_rejected() {
        let b = BlockDesign::new(5, 1, vec![vec![0]]).unwrap();
        assert!(matches!(
            bibd_to_design(&b),
            Err(Error::BadBlockSize {
                got: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn imbalance_reports_pair() {
        let b = BlockDesign::new(3, 2, vec![vec![0, 1], vec![0, 1], vec![0, 2]]).unwrap();
        match is_bibd(&b) {
            Err(BibdFailure::UnequalPairCount {
                first_count, pair, count, ..
            }) => {
                assert_eq!((first_count, pair, count), (2, (0, 2), 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_blocks() {
        assert!(BlockDesign::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(BlockDesign::new(3, 2, vec![vec![1, 1]]).is_err());
        assert!(BlockDesign::new(3, 2, vec![vec![1]]).is_err());
    }

    #[test]
    fn trivial_bibd_on_nine() {
        let empty = BlockDesign::new(9, 4, vec![]).unwrap();
        let all = trivial_complement(&empty).unwrap();
        assert_eq!(all.num_blocks(), 126);
        assert!(all.has_distinct_blocks());
        let p = is_bibd(&all).unwrap();
        assert_eq!((p.r, p.lambda), (56, 21));
        assert!(trivial_complement(&all).unwrap().blocks().is_empty());
    }

    #[test]
    fn params_identities() {
        let p = BibdParams {
            v: 19,
            b: 57,
            k: 9,
            r: 27,
            lambda: 12,
        };
        assert!(p.satisfies_counting_identities());
        assert_eq!(p.to_string(), "BIBD(19,57,9) r=27 lambda=12");
    }
}
