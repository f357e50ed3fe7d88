//! Square bit matrix used for comparability tables.

#[derive(Debug, Clone)]
pub(crate) struct BitMatrix {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(size: usize) -> BitMatrix {
        let words_per_row = size.div_ceil(64);
        BitMatrix {
            size,
            words_per_row,
            bits: vec![0; size * words_per_row],
        }
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] & (1 << (j % 64)) != 0
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Number of `k` with `m[i][k]` and `m[k][j]` both set, where the
    /// second index runs over the transpose built by the caller.
    pub fn count_between(&self, transpose: &BitMatrix, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(transpose.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                if self.get(i, j) {
                    t.set(j, i);
                }
            }
        }
        t
    }
}
