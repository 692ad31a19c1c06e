use serde::Serialize;

use super::BoundsError;

/// One block `ρ(i) = {first, …, last}` of the dyadic partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// 1-based block number `i`.
    pub index: u32,
    pub first: u64,
    pub last: u64,
}

impl Block {
    pub fn len(&self) -> u64 {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Split of `{1, …, d}` into blocks of doubling size; the last block absorbs
/// the remainder up to `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DyadicPartition {
    pub d: u64,
    pub blocks: Vec<Block>,
}

/// Smallest dimension the partition is defined for.
pub const MIN_PARTITION_DIMENSION: u64 = 8;

/// `ρ(i) = [2^{i-1}, 2^i - 1]` for `i < L = ⌊log₂ d⌋` and `ρ(L) = [2^{L-1}, d]`.
pub fn dyadic_partition(d: u64) -> Result<DyadicPartition, BoundsError> {
    if d < MIN_PARTITION_DIMENSION {
        return Err(BoundsError::InvalidArgument(format!(
            "the dyadic partition needs d >= {MIN_PARTITION_DIMENSION}, got {d}; count exactly instead"
        )));
    }
    let levels = 63 - d.leading_zeros();
    let mut blocks = Vec::with_capacity(levels as usize);
    for i in 1..=levels {
        let first = 1u64 << (i - 1);
        let last = if i < levels { (1u64 << i) - 1 } else { d };
        blocks.push(Block {
            index: i,
            first,
            last,
        });
    }
    Ok(DyadicPartition { d, blocks })
}

impl DyadicPartition {
    /// Describes every broken partition invariant; empty when all hold.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut next = 1u64;
        for b in &self.blocks {
            if b.first != next {
                out.push(format!(
                    "block {} starts at {} instead of {next}",
                    b.index, b.first
                ));
            }
            if b.last < b.first {
                out.push(format!("block {} is empty", b.index));
                continue;
            }
            let low = 1u64 << (b.index - 1);
            let high = 1u128 << (b.index + 1);
            if b.len() < low || u128::from(b.len()) >= high {
                out.push(format!(
                    "block {} has size {} outside [{low}, {high})",
                    b.index,
                    b.len()
                ));
            }
            next = b.last + 1;
        }
        if next != self.d + 1 {
            out.push(format!(
                "blocks cover 1..{} instead of 1..={}",
                next - 1,
                self.d
            ));
        }
        out
    }
}
