//! Dense exact linear algebra over `Q(ζ_m)`.

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};

/// Row-major dense matrix with entries in a single cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    m: u32,
    rows: usize,
    cols: usize,
    data: Vec<Vec<CycloNum>>,
}

/// Reduced row echelon form: nonzero rows only, pivots in increasing order.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<CycloNum>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Subtract the row space from `v`; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }
}

impl ExactMatrix {
    pub fn zeros(m: u32, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            m,
            rows,
            cols,
            data: vec![vec![CycloNum::zero(m); cols]; rows],
        }
    }

    pub fn from_rows(m: u32, cols: usize, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::BadLength {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.push(r.into_iter().map(|x| x.lift(m)).collect::<Result<_>>()?);
        }
        Ok(ExactMatrix {
            m,
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Build from columns.
    pub fn from_cols(m: u32, rows: usize, cols: Vec<Vec<CycloNum>>) -> Result<Self> {
        let ncols = cols.len();
        let mut out = ExactMatrix::zeros(m, rows, ncols);
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::BadLength {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, x) in col.into_iter().enumerate() {
                out.data[i][j] = x.lift(m)?;
            }
        }
        Ok(out)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycloNum) -> Result<()> {
        self.data[i][j] = x.lift(self.m)?;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let mut out = ExactMatrix::zeros(self.m, self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                out.data[j][i] = x.clone();
            }
        }
        out
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::BadLength {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        for r in &other.data {
            data.push(r.iter().map(|x| x.lift(self.m)).collect::<Result<_>>()?);
        }
        Ok(ExactMatrix {
            m: self.m,
            rows: data.len(),
            cols: self.cols,
            data,
        })
    }

    /// Gauss–Jordan elimination. Pivots are chosen per column as the entry of
    /// least complexity (fewest basis coefficients, then fewest bits).
    pub fn rref(&self) -> Rref {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == a.len() {
                break;
            }
            let Some(best) = (top..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by_key(|&i| (a[i][col].weight(), a[i][col].bit_size()))
            else {
                continue;
            };
            a.swap(top, best);
            let inv = a[top][col].inv().expect("nonzero pivot");
            let pivot_row: Vec<CycloNum> = a[top]
                .iter()
                .map(|x| if x.is_zero() { x.clone() } else { x * &inv })
                .collect();
            for (i, row) in a.iter_mut().enumerate() {
                if i == top || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            a[top] = pivot_row;
            pivots.push(col);
            top += 1;
        }
        a.truncate(top);
        Rref { rows: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<CycloNum>> {
        let r = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![CycloNum::zero(self.m); self.cols];
                v[free] = CycloNum::one(self.m);
                for (row, &p) in r.rows.iter().zip(&r.pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(CycloNum::zero(self.m), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

/// Whether two matrices with the same number of columns have the same row
/// space: `rank A = rank B = rank [A; B]`.
pub fn same_row_space(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    let ra = a.rank();
    let rb = b.rank();
    Ok(ra == rb && a.stack(b)?.rank() == ra)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> CycloNum {
        CycloNum::from_int(6, x)
    }

    #[test]
    fn rank_and_nullspace() {
        let z = CycloNum::zeta(6);
        let rows = vec![
            vec![int(1), z.clone(), int(0)],
            vec![z.clone(), &z * &z, int(0)],
            vec![int(0), int(0), int(2)],
        ];
        let a = ExactMatrix::from_rows(6, 3, rows).unwrap();
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(CycloNum::is_zero));
        assert_eq!(a.transpose().rank(), 2);
    }

    #[test]
    fn row_space_equality() {
        let a = ExactMatrix::from_rows(6, 2, vec![vec![int(1), int(2)]]).unwrap();
        let b = ExactMatrix::from_rows(6, 2, vec![vec![int(3), int(6)], vec![int(-1), int(-2)]])
            .unwrap();
        let c = ExactMatrix::from_rows(6, 2, vec![vec![int(1), int(0)]]).unwrap();
        assert!(same_row_space(&a, &b).unwrap());
        assert!(!same_row_space(&a, &c).unwrap());
    }

    #[test]
    fn rref_reduce_kills_row_space() {
        let a = ExactMatrix::from_rows(
            6,
            3,
            vec![
                vec![int(1), CycloNum::zeta(6), int(1)],
                vec![int(0), int(1), int(1)],
            ],
        )
        .unwrap();
        let r = a.rref();
        let v: Vec<CycloNum> = a
            .row(0)
            .iter()
            .zip(a.row(1))
            .map(|(x, y)| x + &(y * &int(3)))
            .collect();
        assert!(r.reduce(&v).iter().all(CycloNum::is_zero));
        assert!(r
            .reduce(&[int(0), int(0), int(1)])
            .iter()
            .any(|x| !x.is_zero()));
    }

    #[test]
    fn empty_shapes() {
        let a = ExactMatrix::zeros(6, 0, 4);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.nullspace().len(), 4);
        let b = ExactMatrix::zeros(6, 3, 0);
        assert_eq!(b.rank(), 0);
    }
}
