//! Dense bit-packed matrices over F₂ with deterministic row reduction.
//!
//! Rows are packed into u64 words. Pivots are always chosen as the first
//! unreduced row with the leftmost leading column, so reductions are
//! reproducible bit for bit.

#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.data[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols, "({r},{c}) out of {}x{}", self.rows, self.cols);
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        let w = &mut self.data[r * self.words_per_row + c / 64];
        *w ^= 1 << (c % 64);
    }

    pub fn push_rows(&mut self, other: &BitMatrix) {
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(next_row, pivot);
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, one matrix row per basis vector, in the
    /// deterministic order of free columns.
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = BitMatrix::zero(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, true);
            for (prow, &pc) in pivots.iter().enumerate() {
                if m.get(prow, fc) {
                    basis.set(i, pc, true);
                }
            }
        }
        basis
    }

    /// Rank of [self; other] minus rank of self: how much `other` adds to
    /// the row space.
    pub fn added_rank(&self, other: &BitMatrix) -> usize {
        let mut stacked = self.clone();
        stacked.push_rows(other);
        stacked.rank() - self.rank()
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn row_vec(&self, r: usize) -> Vec<u64> {
        self.data[r * self.words_per_row..(r + 1) * self.words_per_row].to_vec()
    }
}

/// Incremental F₂ row space: rows are kept reduced with recorded pivots,
/// so membership tests and insertions are single eliminations.
#[derive(Clone)]
pub struct RowBasis {
    cols: usize,
    words: usize,
    rows: Vec<(usize, Vec<u64>)>, // (pivot, row), sorted by pivot
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        RowBasis { cols, words: cols.div_ceil(64).max(1), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn leading(row: &[u64]) -> Option<usize> {
        for (k, &w) in row.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Reduce `row` against the basis in place; returns its pivot if the
    /// residue is nonzero.
    pub fn reduce(&self, row: &mut [u64]) -> Option<usize> {
        debug_assert_eq!(row.len(), self.words);
        loop {
            let lead = Self::leading(row)?;
            match self.rows.binary_search_by_key(&lead, |x| x.0) {
                Ok(i) => {
                    for (k, w) in self.rows[i].1.iter().enumerate() {
                        row[k] ^= w;
                    }
                }
                Err(_) => return Some(lead),
            }
        }
    }

    /// Insert a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        match self.reduce(&mut r) {
            None => false,
            Some(pivot) => {
                let at = self.rows.binary_search_by_key(&pivot, |x| x.0).unwrap_err();
                self.rows.insert(at, (pivot, r));
                true
            }
        }
    }

    pub fn insert_bits(&mut self, cols: &[usize]) -> bool {
        let mut r = vec![0u64; self.words];
        for &c in cols {
            debug_assert!(c < self.cols);
            r[c / 64] ^= 1 << (c % 64);
        }
        match self.reduce(&mut r) {
            None => false,
            Some(pivot) => {
                let at = self.rows.binary_search_by_key(&pivot, |x| x.0).unwrap_err();
                self.rows.insert(at, (pivot, r));
                true
            }
        }
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
