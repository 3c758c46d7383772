use std::fmt;

/// Column-major sparse integer matrix; zero entries are never stored and
/// each column is sorted by row.
///
/// Entries are `i64`. Boundary matrices only hold `±1`; elimination promotes
/// to arbitrary precision on overflow, so the storage width never limits the
/// results.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triples(rows: usize, cols: usize, triples: &[(usize, usize, i64)]) -> Self {
        let mut m = SparseIntMatrix::zeros(rows, cols);
        for &(r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range");
            m.cols[c].push((r as u32, v));
        }
        for col in m.cols.iter_mut() {
            col.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let triples: Vec<(usize, usize, i64)> = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)))
            .filter(|t| t.2 != 0)
            .collect();
        Self::from_triples(rows.len(), ncols, &triples)
    }

    /// Appends a column given as sorted `(row, value)` pairs without zeros.
    pub(crate) fn push_column(&mut self, column: Vec<(u32, i64)>) {
        debug_assert!(column.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(column.iter().all(|e| e.1 != 0 && (e.0 as usize) < self.rows));
        self.cols.push(column);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map_or(0, |i| self.cols[c][i].1)
    }

    /// Nonzero entries as `(row, col, value)`, column by column.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (r, c, v) in self.triples() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let triples: Vec<(usize, usize, i64)> = self.triples().map(|(r, c, v)| (c, r, v)).collect();
        SparseIntMatrix::from_triples(self.cols(), self.rows, &triples)
    }

    /// Whether `self * rhs` is the zero matrix, checked on the given columns
    /// of `rhs` (all columns when `None`).
    pub fn product_vanishes_on(&self, rhs: &SparseIntMatrix, columns: Option<&[usize]>) -> bool {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let check = |c: usize| {
            let mut acc: std::collections::BTreeMap<u32, i128> = std::collections::BTreeMap::new();
            for &(k, b) in &rhs.cols[c] {
                for &(r, a) in &self.cols[k as usize] {
                    *acc.entry(r).or_insert(0) += a as i128 * b as i128;
                }
            }
            acc.values().all(|&v| v == 0)
        };
        match columns {
            Some(cs) => cs.iter().all(|&c| check(c)),
            None => (0..rhs.cols()).all(check),
        }
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let m = SparseIntMatrix::from_triples(2, 3, &[(0, 1, 2), (1, 1, -1), (0, 1, 1), (1, 2, 0)]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 1), 3);
        assert_eq!(m.get(1, 2), 0);
        assert_eq!(m.to_dense(), vec![vec![0, 3, 0], vec![0, -1, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(SparseIntMatrix::from_dense(&m.to_dense()), m);
    }

    #[test]
    fn products() {
        // boundary of a triangle composed with the augmentation
        let d1 = SparseIntMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let eps = SparseIntMatrix::from_dense(&[vec![1, 1, 1]]);
        assert!(eps.product_vanishes_on(&d1, None));
        let d2 = SparseIntMatrix::from_dense(&[vec![1], vec![-1], vec![1]]);
        assert!(d1.product_vanishes_on(&d2, Some(&[0])));
        let bad = SparseIntMatrix::from_dense(&[vec![1], vec![1], vec![1]]);
        assert!(!d1.product_vanishes_on(&bad, None));
    }
}
