//! Exact determinants and exhaustive total-nonnegativity scans.

use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Integer, Rational};
use crate::io::rational_json;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    /// Builds a matrix from nonempty rows of equal, nonzero length.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::domain("matrix must have at least one row and one column"));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::domain(format!(
                "ragged matrix: row {bad} has {} entries, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(ExactMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[Vec<Integer>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n)
            .map(|t| if t / n == t % n { Rational::one() } else { Rational::zero() })
            .collect();
        ExactMatrix { rows: n, cols: n, entries }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        ExactMatrix { rows: rows.len(), cols: cols.len(), entries }
    }
}

/// Fraction-free Gaussian elimination (Bareiss) on a square integer matrix.
/// Every intermediate value is itself a minor, so nothing leaves the integers.
fn bareiss(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::one();
    }
    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Integer::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Rows scaled to integers, with the scale factor of each row.
struct IntegerRows {
    rows: Vec<Vec<Integer>>,
    scale: Vec<Integer>,
    cols: usize,
}

impl IntegerRows {
    fn new(m: &ExactMatrix) -> Self {
        let mut rows = Vec::with_capacity(m.rows);
        let mut scale = Vec::with_capacity(m.rows);
        for i in 0..m.rows {
            let l = m.row(i).iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
            rows.push(m.row(i).iter().map(|q| q.numer() * (&l / q.denom())).collect());
            scale.push(l);
        }
        IntegerRows { rows, scale, cols: m.cols }
    }

    fn integral(&self) -> bool {
        self.scale.iter().all(One::is_one)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let sub = rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect();
        let det = bareiss(sub);
        if self.integral() {
            Rational::from_integer(det)
        } else {
            let denom: Integer = rows.iter().map(|&i| &self.scale[i]).product();
            Rational::new(det, denom)
        }
    }
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &ExactMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let all: Vec<usize> = (0..m.rows).collect();
    Ok(IntegerRows::new(m).minor(&all, &all))
}

/// A minor with its row and column index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Rational,
}

impl Minor {
    pub fn to_json(&self) -> Value {
        json!({ "rows": self.rows, "cols": self.cols, "value": rational_json(&self.value) })
    }
}

/// All minors of one order, row sets then column sets in lexicographic order.
pub fn minor_iterator(m: &ExactMatrix, order: usize) -> Result<impl Iterator<Item = Minor>> {
    if order == 0 || order > m.rows.min(m.cols) {
        return Err(Error::IndexOutOfRange(format!(
            "minor order {order} outside 1..={}",
            m.rows.min(m.cols)
        )));
    }
    let ints = IntegerRows::new(m);
    let mut minors = Vec::new();
    for rs in (0..m.rows).combinations(order) {
        for cs in (0..m.cols).combinations(order) {
            let value = ints.minor(&rs, &cs);
            minors.push(Minor { rows: rs.clone(), cols: cs, value });
        }
    }
    Ok(minors.into_iter())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnnReport {
    pub is_tnn: bool,
    pub minors_checked: u64,
    pub min_minor: Rational,
    /// The first negative minor in (order, row set, column set) order.
    pub witness: Option<Minor>,
}

impl TnnReport {
    /// `{"is_tnn", "minors_checked", "min_minor", "witness"}`
    pub fn to_json(&self) -> Value {
        json!({
            "is_tnn": self.is_tnn,
            "minors_checked": self.minors_checked,
            "min_minor": rational_json(&self.min_minor),
            "witness": self.witness.as_ref().map_or(Value::Null, Minor::to_json),
        })
    }

    pub fn to_text(&self) -> String {
        let witness = match &self.witness {
            None => "none".to_string(),
            Some(w) => format!(
                "rows {:?} cols {:?} value {}",
                w.rows,
                w.cols,
                format_rational(&w.value)
            ),
        };
        format!(
            "is_tnn: {}\nminors_checked: {}\nmin_minor: {}\nwitness: {}\n",
            self.is_tnn,
            self.minors_checked,
            format_rational(&self.min_minor),
            witness
        )
    }
}

/// Scan result for one (order, row set) block.
struct Block {
    count: u64,
    min: Rational,
    first_negative: Option<Minor>,
}

fn scan_block(ints: &IntegerRows, rows: &[usize]) -> Block {
    let mut count = 0;
    let mut min: Option<Rational> = None;
    let mut first_negative = None;
    for cols in (0..ints.cols).combinations(rows.len()) {
        let value = ints.minor(rows, &cols);
        count += 1;
        if value.is_negative() && first_negative.is_none() {
            first_negative = Some(Minor { rows: rows.to_vec(), cols, value: value.clone() });
        }
        if min.as_ref().is_none_or(|m| value < *m) {
            min = Some(value);
        }
    }
    Block { count, min: min.expect("block has at least one column set"), first_negative }
}

/// Checks every minor of order up to `max_order` (default: all orders).
pub fn is_totally_nonnegative(m: &ExactMatrix, max_order: Option<usize>) -> TnnReport {
    scan(m, max_order, 1)
}

/// As [`is_totally_nonnegative`], spread over `jobs` worker threads.
///
/// The report, witness included, does not depend on `jobs`: blocks are
/// collected in scan order and merged sequentially.
pub fn is_totally_nonnegative_par(m: &ExactMatrix, max_order: Option<usize>, jobs: usize) -> Result<TnnReport> {
    if jobs == 0 {
        return Err(Error::domain("jobs must be at least 1"));
    }
    Ok(scan(m, max_order, jobs))
}

fn scan(m: &ExactMatrix, max_order: Option<usize>, jobs: usize) -> TnnReport {
    let full = m.rows.min(m.cols);
    let top = max_order.unwrap_or(full).clamp(1, full);
    let ints = IntegerRows::new(m);
    let tasks: Vec<Vec<usize>> = (1..=top).flat_map(|k| (0..m.rows).combinations(k)).collect();

    let blocks: Vec<Block> = if jobs <= 1 {
        tasks.iter().map(|rs| scan_block(&ints, rs)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.par_iter().map(|rs| scan_block(&ints, rs)).collect())
    };

    let mut minors_checked = 0;
    let mut min_minor: Option<Rational> = None;
    let mut witness = None;
    for b in blocks {
        minors_checked += b.count;
        if min_minor.as_ref().is_none_or(|m| b.min < *m) {
            min_minor = Some(b.min);
        }
        if witness.is_none() {
            witness = b.first_negative;
        }
    }
    TnnReport {
        is_tnn: witness.is_none(),
        minors_checked,
        min_minor: min_minor.expect("at least one minor"),
        witness,
    }
}
