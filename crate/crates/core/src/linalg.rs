//! Dense exact linear algebra over `CycNum`, and cochain complexes.

use crate::cyclotomic::{CycField, CycNum};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        CycMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<CycNum>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &CycNum) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, f: &CycField, c: &CycNum) -> Self {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| f.mul(x, c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, f: &CycField, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let p = f.mul(a, b);
                        out.add_at(i, j, &p);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &CycField, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = CycNum::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &f.mul(a, b);
                    }
                }
                s
            })
            .collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(f: &CycField, m: &CycMatrix) -> (CycMatrix, Vec<usize>) {
    let mut rows: Vec<Vec<CycNum>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let pivots = eliminate(f, &mut rows, m.cols, true);
    let r = CycMatrix::from_rows_or_empty(rows, m.cols);
    (r, pivots)
}

impl CycMatrix {
    fn from_rows_or_empty(rows: Vec<Vec<CycNum>>, cols: usize) -> Self {
        if rows.is_empty() {
            return CycMatrix::zeros(0, cols);
        }
        CycMatrix::from_rows(rows)
    }
}

/// Gauss-Jordan in place. Pivots are found by scanning columns left to right
/// and taking the first row with a nonzero entry.
fn eliminate(f: &CycField, rows: &mut [Vec<CycNum>], cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        for t in c..cols {
            if !rows[r][t].is_zero() {
                rows[r][t] = f.mul(&rows[r][t], &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, below) = tail.split_first_mut().unwrap();
        let nz: Vec<usize> = (c..cols).filter(|&t| !prow[t].is_zero()).collect();
        let clear = |row: &mut Vec<CycNum>| {
            if row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for &t in &nz {
                let v = f.mul(&factor, &prow[t]);
                row[t] -= &v;
            }
        };
        for row in below.iter_mut() {
            clear(row);
        }
        if full {
            for row in head.iter_mut() {
                clear(row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &CycField, m: &CycMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // eliminate along the shorter side
    let (mut rows, cols) = if m.rows <= m.cols {
        ((0..m.rows).map(|i| m.row(i).to_vec()).collect::<Vec<_>>(), m.cols)
    } else {
        ((0..m.cols).map(|j| m.col(j)).collect::<Vec<_>>(), m.rows)
    };
    eliminate(f, &mut rows, cols, false).len()
}

/// Basis of `{ v : M v = 0 }` from the reduced echelon form.
pub fn kernel_basis(f: &CycField, m: &CycMatrix) -> Vec<Vec<CycNum>> {
    let (r, pivots) = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![CycNum::zero(); m.cols];
            v[fc] = CycNum::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(pi, fc).clone();
            }
            v
        })
        .collect()
}

/// Indices of a maximal linearly independent set of columns (leftmost first).
pub fn column_basis(f: &CycField, m: &CycMatrix) -> Vec<usize> {
    let mut rows: Vec<Vec<CycNum>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    eliminate(f, &mut rows, m.cols, false)
}

/// Indices of a maximal linearly independent set of rows.
pub fn row_basis(f: &CycField, m: &CycMatrix) -> Vec<usize> {
    column_basis(f, &m.transpose())
}

/// Solves `A X = B` for `A` with independent columns; `None` if inconsistent.
pub fn solve(f: &CycField, a: &CycMatrix, b: &CycMatrix) -> Option<CycMatrix> {
    assert_eq!(a.rows, b.rows);
    let n = a.cols;
    let mut rows: Vec<Vec<CycNum>> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend_from_slice(b.row(i));
            r
        })
        .collect();
    let pivots = eliminate(f, &mut rows, n + b.cols, true);
    if pivots.iter().any(|&p| p >= n) || pivots.len() < n {
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        panic!("solve: columns of A are dependent");
    }
    let mut x = CycMatrix::zeros(n, b.cols);
    for (pi, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, rows[pi][n + j].clone());
        }
    }
    Some(x)
}

/// Determinant by elimination; `1` for the empty matrix.
pub fn det(f: &CycField, a: &CycMatrix) -> CycNum {
    assert_eq!(a.rows, a.cols, "det of a non-square matrix");
    let n = a.rows;
    let mut rows: Vec<Vec<CycNum>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut d = CycNum::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return CycNum::zero();
        };
        if p != c {
            rows.swap(p, c);
            d = -d;
        }
        d = f.mul(&d, &rows[c][c]);
        let inv = f.inv(&rows[c][c]).expect("nonzero pivot");
        let (head, below) = rows.split_at_mut(c + 1);
        let prow = &head[c];
        for row in below.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for t in c..n {
                if !prow[t].is_zero() {
                    let v = f.mul(&factor, &prow[t]);
                    row[t] -= &v;
                }
            }
        }
    }
    d
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(f: &CycField, a: &CycMatrix) -> Option<CycMatrix> {
    if a.rows != a.cols || rank(f, a) < a.rows {
        return None;
    }
    solve(f, a, &CycMatrix::identity(a.rows))
}

/// Cochain complex in degrees `lo..=lo+dims.len()-1`; `diffs[p]` maps the
/// `p`-th space to the next and has shape `dims[p+1] x dims[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub diffs: Vec<CycMatrix>,
}

impl ChainComplex {
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<CycMatrix>) -> Self {
        let labels = dims.iter().map(|&d| (0..d).map(|i| i.to_string()).collect()).collect();
        Self::with_labels(lo, labels, diffs)
    }

    pub fn with_labels(lo: i64, labels: Vec<Vec<String>>, diffs: Vec<CycMatrix>) -> Self {
        let dims: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        assert_eq!(diffs.len() + 1, dims.len().max(1), "one differential per adjacent pair");
        for (p, d) in diffs.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (dims[p + 1], dims[p]), "differential shape");
        }
        ChainComplex { lo, dims, labels, diffs }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim_at(&self, deg: i64) -> usize {
        let p = deg - self.lo;
        if p < 0 || p as usize >= self.dims.len() {
            0
        } else {
            self.dims[p as usize]
        }
    }

    pub fn euler(&self) -> i64 {
        self.degrees().zip(&self.dims).map(|(d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Checks `d d = 0` exactly.
    pub fn check_d2(&self, f: &CycField) -> Result<()> {
        for p in 1..self.diffs.len() {
            if !self.diffs[p].mul(f, &self.diffs[p - 1]).is_zero() {
                return Err(Error::Contract(format!("d^2 != 0 at degree {}", self.lo + p as i64 - 1)));
            }
        }
        Ok(())
    }
}

/// `h^p = dim ker d_p - rank d_{p-1}`, with `d d = 0` and the Euler identity asserted.
pub fn cohomology_dims(f: &CycField, c: &ChainComplex) -> Result<Vec<usize>> {
    c.check_d2(f)?;
    let ranks: Vec<usize> = c.diffs.iter().map(|d| rank(f, d)).collect();
    let mut h = Vec::with_capacity(c.dims.len());
    for p in 0..c.dims.len() {
        let out = if p < ranks.len() { ranks[p] } else { 0 };
        let inc = if p > 0 { ranks[p - 1] } else { 0 };
        h.push(c.dims[p] - out - inc);
    }
    let chi: i64 = c.degrees().zip(&h).map(|(d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) }).sum();
    if chi != c.euler() {
        return Err(Error::Contract("Euler characteristic mismatch".into()));
    }
    Ok(h)
}

/// A degreewise map between complexes with the same degree range.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<CycMatrix>,
}

impl ChainMap {
    pub fn check(&self, f: &CycField, src: &ChainComplex, dst: &ChainComplex) -> Result<()> {
        if src.lo != dst.lo || src.dims.len() != dst.dims.len() || self.maps.len() != src.dims.len() {
            return Err(Error::Contract("chain map degree ranges differ".into()));
        }
        for (p, m) in self.maps.iter().enumerate() {
            if (m.rows(), m.cols()) != (dst.dims[p], src.dims[p]) {
                return Err(Error::Contract(format!("chain map shape at position {}", p)));
            }
        }
        for p in 0..src.diffs.len() {
            let a = dst.diffs[p].mul(f, &self.maps[p]);
            let b = self.maps[p + 1].mul(f, &src.diffs[p]);
            if a != b {
                return Err(Error::Contract(format!("not a chain map at degree {}", src.lo + p as i64)));
            }
        }
        Ok(())
    }

    pub fn is_iso(&self, f: &CycField) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && rank(f, m) == m.rows())
    }
}

/// Degreewise image of a chain map with the induced differential.
pub fn image_complex(f: &CycField, src: &ChainComplex, dst: &ChainComplex, map: &ChainMap) -> Result<ChainComplex> {
    map.check(f, src, dst)?;
    let bases: Vec<Vec<usize>> = map.maps.iter().map(|m| column_basis(f, m)).collect();
    let mut diffs = Vec::new();
    for p in 0..src.diffs.len() {
        let img_p = map.maps[p].select(&(0..dst.dims[p]).collect::<Vec<_>>(), &bases[p]);
        let dy = dst.diffs[p].mul(f, &img_p);
        let tgt = map.maps[p + 1].select(&(0..dst.dims[p + 1]).collect::<Vec<_>>(), &bases[p + 1]);
        let x = solve(f, &tgt, &dy).ok_or_else(|| Error::Contract("image is not a subcomplex".into()))?;
        diffs.push(x);
    }
    let labels = bases
        .iter()
        .enumerate()
        .map(|(p, b)| b.iter().map(|&j| src.labels[p][j].clone()).collect())
        .collect();
    Ok(ChainComplex::with_labels(src.lo, labels, diffs))
}
