//! Dense matrices over a prime field `F_p`, with `p` small enough for `u64`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    prime: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl FpMatrix {
    pub fn new(prime: u64, cols: usize) -> FpMatrix {
        FpMatrix {
            prime,
            cols,
            rows: Vec::new(),
        }
    }

    /// Builds a matrix from signed rows, reducing every entry mod `prime`.
    pub fn from_rows(prime: u64, cols: usize, rows: &[Vec<i64>]) -> FpMatrix {
        let mut m = FpMatrix::new(prime, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols, "row length");
        let p = self.prime as i64;
        self.rows
            .push(row.iter().map(|&x| x.rem_euclid(p) as u64).collect());
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (a % self.prime, self.prime - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.prime;
            }
            base = base * base % self.prime;
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.prime;
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for k in 0..rows.len() {
                if k != r && rows[k][c] != 0 {
                    let f = rows[k][c];
                    let pivot = rows[r].clone();
                    for (x, y) in rows[k].iter_mut().zip(&pivot) {
                        *x = (*x + p * p - f * y) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (
            FpMatrix {
                prime: p,
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the left kernel `{v : v M = 0}`, as rows.
    ///
    /// Rows of `M` are the images of basis vectors, so this is the kernel of
    /// the linear map they describe.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().right_kernel()
    }

    /// Basis of `{x : M x = 0}`, as rows.
    pub fn right_kernel(&self) -> FpMatrix {
        let p = self.prime;
        let (r, pivots) = self.rref();
        let mut out = FpMatrix::new(p, self.cols);
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r.rows[i][free]) % p;
            }
            out.rows.push(v);
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::new(self.prime, self.rows.len());
        for j in 0..self.cols {
            out.rows.push(self.rows.iter().map(|r| r[j]).collect());
        }
        out
    }

    /// True when both matrices have the same row space.
    pub fn same_row_space(&self, other: &FpMatrix) -> bool {
        assert_eq!(self.cols, other.cols, "column count");
        self.rref().0 == other.rref().0
    }

    /// True when every row of `other` lies in the row space of `self`.
    pub fn contains_rows_of(&self, other: &FpMatrix) -> bool {
        let mut both = self.clone();
        both.rows.extend(other.rows.iter().cloned());
        both.rank() == self.rank()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
