//! Transfer matrices `M_d` and path matrices `W_n`.
//!
//! `M_d` has `floor(d/2) + 1` rows and `d` columns with entries
//! `C(d+1-i, d-j) - C(i, d-j)`. `W_n` has `ceil(n/2)` rows and `n` columns
//! with entries `C(n-i, n-j) - C(i, n-j)` on and above the diagonal. The
//! leading column of `W_n` is `(1, 0, ..., 0)` and dropping it gives
//! `M_{n-1}`; `W_{d+1}` is the "augmented" form of `M_d` that also produces
//! the entry `f_{-1} = 1`.

use crate::error::{Error, Result};
use crate::exactnum::{choose, Integer};
use crate::io;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    d: usize,
    rows: Vec<Vec<Integer>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMatrix {
    n: usize,
    rows: Vec<Vec<Integer>>,
}

/// Entry `m_ij` of `M_d`.
pub fn transfer_entry(d: usize, i: usize, j: usize) -> Integer {
    let (d, i, j) = (d as i64, i as i64, j as i64);
    choose((d + 1 - i) as u64, d - j) - choose(i as u64, d - j)
}

/// Entry `(i, j)` of `W_n`; zero below the diagonal.
pub fn path_entry(n: usize, i: usize, j: usize) -> Integer {
    if i > j {
        return Integer::from(0);
    }
    let (n, i, j) = (n as i64, i as i64, j as i64);
    choose((n - i) as u64, n - j) - choose(i as u64, n - j)
}

/// Builds `M_d`.
pub fn build_m(d: usize) -> Result<TransferMatrix> {
    if d == 0 {
        return Err(Error::domain("transfer matrix needs d >= 1"));
    }
    let rows = (0..=d / 2)
        .map(|i| (0..d).map(|j| transfer_entry(d, i, j)).collect())
        .collect();
    Ok(TransferMatrix { d, rows })
}

/// Builds `W_n`.
pub fn build_w(n: usize) -> Result<PathMatrix> {
    if n < 2 {
        return Err(Error::domain(format!("path matrix needs n >= 2, got {n}")));
    }
    let rows = (0..n.div_ceil(2))
        .map(|i| (0..n).map(|j| path_entry(n, i, j)).collect())
        .collect();
    Ok(PathMatrix { n, rows })
}

/// Drops column 0 of `W_n`, yielding `M_{n-1}`.
pub fn strip_leading_column(w: &PathMatrix) -> TransferMatrix {
    let rows = w.rows.iter().map(|row| row[1..].to_vec()).collect();
    TransferMatrix { d: w.n - 1, rows }
}

impl TransferMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.d)
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.rows[i][j]
    }

    pub fn to_csv(&self) -> String {
        io::integer_rows_to_csv(&self.rows)
    }

    /// `{"d": d, "rows": [[...], ...]}`
    pub fn to_json(&self) -> serde_json::Value {
        io::matrix_json("d", self.d, &self.rows)
    }
}

impl PathMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.rows[i][j]
    }

    pub fn to_csv(&self) -> String {
        io::integer_rows_to_csv(&self.rows)
    }

    /// `{"n": n, "rows": [[...], ...]}`
    pub fn to_json(&self) -> serde_json::Value {
        io::matrix_json("n", self.n, &self.rows)
    }
}
