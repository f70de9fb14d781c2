use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::exponent::Exponent;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub p: Exponent,
    pub dim: usize,
}

/// A finite `l_s`-sum of `l_{p_j}^{d_j}` blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpace {
    pub outer: Exponent,
    pub blocks: Vec<Block>,
}

/// An element of a [`BlockSpace`], stored sparsely by block index. Missing
/// blocks are zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockVector {
    blocks: BTreeMap<usize, Vec<f64>>,
}

impl BlockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = (usize, Vec<f64>)>) -> Self {
        Self { blocks: blocks.into_iter().collect() }
    }

    pub fn block(&self, j: usize) -> Option<&[f64]> {
        self.blocks.get(&j).map(Vec::as_slice)
    }

    pub fn block_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[f64])> {
        self.blocks.iter().map(|(j, v)| (*j, v.as_slice()))
    }

    /// `self += weight * v` placed into block `j`.
    pub fn add_to_block(&mut self, j: usize, weight: f64, v: &[f64]) {
        let slot = self.blocks.entry(j).or_insert_with(|| vec![0.0; v.len()]);
        debug_assert_eq!(slot.len(), v.len());
        for (s, x) in slot.iter_mut().zip(v) {
            *s += weight * x;
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            blocks: self.blocks.iter().map(|(j, v)| (*j, v.iter().map(|x| a * x).collect())).collect(),
        }
    }
}

impl BlockSpace {
    pub fn new(outer: Exponent, blocks: Vec<Block>) -> Self {
        Self { outer, blocks }
    }

    fn block_of(&self, j: usize, len: usize) -> Result<Block> {
        let b = *self.blocks.get(j).ok_or(Error::UnknownBlock(j))?;
        if b.dim != len {
            return Err(Error::param(format!("block {j} has dimension {}, got {len} coordinates", b.dim)));
        }
        Ok(b)
    }

    pub fn norm(&self, v: &BlockVector) -> Result<f64> {
        let parts = v
            .iter()
            .map(|(j, x)| self.block_of(j, x.len()).map(|b| b.p.norm(x)))
            .collect::<Result<Vec<f64>>>()?;
        Ok(self.outer.combine(parts.into_iter()))
    }

    /// `||a - b||` without materializing the difference.
    pub fn distance(&self, a: &BlockVector, b: &BlockVector) -> Result<f64> {
        let keys: BTreeSet<usize> = a.block_indices().chain(b.block_indices()).collect();
        let mut parts = Vec::with_capacity(keys.len());
        for j in keys {
            let part = match (a.block(j), b.block(j)) {
                (Some(x), Some(y)) => {
                    let blk = self.block_of(j, x.len())?;
                    self.block_of(j, y.len())?;
                    blk.p.distance(x, y)
                }
                (Some(x), None) | (None, Some(x)) => self.block_of(j, x.len())?.p.norm(x),
                (None, None) => unreachable!(),
            };
            parts.push(part);
        }
        Ok(self.outer.combine(parts.into_iter()))
    }

    /// Keep only the blocks listed in `keep`.
    pub fn project(&self, v: &BlockVector, keep: &[usize]) -> Result<BlockVector> {
        if let Some(&j) = keep.iter().find(|&&j| j >= self.blocks.len()) {
            return Err(Error::UnknownBlock(j));
        }
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        Ok(BlockVector {
            blocks: v.blocks.iter().filter(|(j, _)| keep.contains(j)).map(|(j, x)| (*j, x.clone())).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_blocks(outer: Exponent) -> BlockSpace {
        let b = Block { p: Exponent::Finite(2.0), dim: 2 };
        BlockSpace::new(outer, vec![b, b])
    }

    #[test]
    fn unit_vectors_in_two_blocks() {
        let space = two_blocks(Exponent::Finite(2.0));
        let v = BlockVector::from_blocks([(0, vec![1.0, 0.0]), (1, vec![0.0, 1.0])]);
        assert!((space.norm(&v).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let one = space.project(&v, &[1]).unwrap();
        assert_eq!(space.norm(&one).unwrap(), 1.0);
    }

    #[test]
    fn unknown_blocks_rejected() {
        let space = two_blocks(Exponent::Finite(2.0));
        let v = BlockVector::from_blocks([(5, vec![1.0, 0.0])]);
        assert!(matches!(space.norm(&v), Err(Error::UnknownBlock(5))));
        assert!(space.project(&BlockVector::zero(), &[2]).is_err());
    }

    fn arb_vector() -> impl Strategy<Value = BlockVector> {
        proptest::collection::vec(proptest::option::of(proptest::collection::vec(-10.0..10.0f64, 3)), 4)
            .prop_map(|bs| {
                BlockVector::from_blocks(bs.into_iter().enumerate().filter_map(|(j, b)| b.map(|x| (j, x))))
            })
    }

    fn arb_space() -> impl Strategy<Value = BlockSpace> {
        let exps = prop_oneof![
            Just(Exponent::Finite(1.0)),
            Just(Exponent::Finite(2.0)),
            Just(Exponent::Finite(3.5)),
            Just(Exponent::Infinity)
        ];
        (exps.clone(), proptest::collection::vec(exps, 4)).prop_map(|(outer, ps)| {
            BlockSpace::new(outer, ps.into_iter().map(|p| Block { p, dim: 3 }).collect())
        })
    }

    proptest! {
        #[test]
        fn projections_are_contractive_and_idempotent(
            space in arb_space(),
            v in arb_vector(),
            keep in proptest::collection::vec(0usize..4, 0..4),
        ) {
            let pv = space.project(&v, &keep).unwrap();
            prop_assert!(space.norm(&pv).unwrap() <= space.norm(&v).unwrap() * (1.0 + 1e-12));
            prop_assert_eq!(space.project(&pv, &keep).unwrap(), pv.clone());
            let rest: Vec<usize> = (0..4).filter(|j| !keep.contains(j)).collect();
            let qv = space.project(&v, &rest).unwrap();
            // complementary projections recombine to v
            let mut sum = pv.clone();
            for (j, x) in qv.iter() {
                sum.add_to_block(j, 1.0, x);
            }
            prop_assert_eq!(sum, v);
        }

        #[test]
        fn distance_matches_norm_of_difference(space in arb_space(), a in arb_vector(), b in arb_vector()) {
            let mut diff = a.clone();
            for (j, x) in b.iter() {
                diff.add_to_block(j, -1.0, x);
            }
            let d1 = space.distance(&a, &b).unwrap();
            let d2 = space.norm(&diff).unwrap();
            prop_assert!((d1 - d2).abs() <= 1e-12 * d2.max(1.0));
        }
    }
}
