//! The weighted planar lattice graphs `T_n` and their non-intersecting path
//! families.
//!
//! `T_n` lives on the integer points with `x <= ceil(n/2) - 1`,
//! `y - x <= floor(n/2)` and `x + y >= ceil(n/2) - 1`. East steps weigh 1 and
//! the north step leaving height `y` weighs `w_y = C(n, y+1) / C(n, y) =
//! (n - y) / (y + 1)`. Source `i` is `(ceil(n/2) - 1 - i, i)` and sink `j` is
//! `(ceil(n/2) - 1, j)`; the path weight sums between them are the entries of
//! `W_n`, and by Lindström–Gessel–Viennot the minors of `W_n` are sums over
//! vertex-disjoint path families.

use std::collections::HashMap;
use std::fmt::Write as _;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, Integer, Rational};
use crate::io::integer_json;
use crate::transfer;

pub type Point = (i64, i64);

/// Largest `n` accepted by the family enumeration.
pub const ENUMERATION_MAX_N: usize = 10;
/// Largest number of paths per family accepted by the enumeration.
pub const ENUMERATION_MAX_ORDER: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: Point,
    pub to: Point,
    pub weight: Rational,
}

#[derive(Clone, Debug)]
pub struct LatticeGraph {
    n: usize,
    /// Sorted lexicographically.
    vertices: Vec<Point>,
    index: HashMap<Point, usize>,
}

/// One path per (source, sink) pair, pairwise vertex-disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub paths: Vec<Vec<Point>>,
    pub weight: Rational,
}

/// Builds `T_n`.
pub fn build_t(n: usize) -> Result<LatticeGraph> {
    if n < 2 {
        return Err(Error::domain(format!("lattice graph needs n >= 2, got {n}")));
    }
    let c = n.div_ceil(2) as i64;
    let f = (n / 2) as i64;
    // x <= c-1 and y <= x+f bound y by n-1; x+y >= c-1 and y-x <= f bound
    // everything else.
    let mut vertices = Vec::new();
    for x in -(f + 1)..c {
        for y in 0..n as i64 {
            if y - x <= f && x + y >= c - 1 {
                vertices.push((x, y));
            }
        }
    }
    vertices.sort_unstable();
    let index = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    Ok(LatticeGraph { n, vertices, index })
}

impl LatticeGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index.contains_key(&p)
    }

    fn half(&self) -> i64 {
        self.n.div_ceil(2) as i64
    }

    pub fn num_sources(&self) -> usize {
        self.n.div_ceil(2)
    }

    pub fn num_sinks(&self) -> usize {
        self.n
    }

    pub fn source(&self, i: usize) -> Point {
        (self.half() - 1 - i as i64, i as i64)
    }

    pub fn sink(&self, j: usize) -> Point {
        (self.half() - 1, j as i64)
    }

    pub fn sources(&self) -> Vec<Point> {
        (0..self.num_sources()).map(|i| self.source(i)).collect()
    }

    pub fn sinks(&self) -> Vec<Point> {
        (0..self.num_sinks()).map(|j| self.sink(j)).collect()
    }

    /// Weight `(n - y) / (y + 1)` of the north step leaving height `y`.
    pub fn vertical_weight(&self, y: i64) -> Rational {
        Rational::new(Integer::from(self.n as i64 - y), Integer::from(y + 1))
    }

    /// Arcs in lexicographic order of the tail, east before north.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut arcs = Vec::new();
        for &(x, y) in &self.vertices {
            if self.contains((x + 1, y)) {
                arcs.push(Arc { from: (x, y), to: (x + 1, y), weight: Rational::one() });
            }
            if self.contains((x, y + 1)) {
                arcs.push(Arc { from: (x, y), to: (x, y + 1), weight: self.vertical_weight(y) });
            }
        }
        arcs
    }

    fn check_indices(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.num_sources() || j >= self.num_sinks() {
            return Err(Error::IndexOutOfRange(format!(
                "(i, j) = ({i}, {j}) outside 0..{} x 0..{} for T_{}",
                self.num_sources(),
                self.num_sinks(),
                self.n
            )));
        }
        Ok(())
    }

    /// Sum of path weights from source `i` to sink `j`, by dynamic programming
    /// over the vertices in order of `x + y`, then `x`.
    pub fn path_weight_sum(&self, i: usize, j: usize) -> Result<Rational> {
        self.check_indices(i, j)?;
        let start = self.source(i);
        let target = self.sink(j);
        let mut order: Vec<Point> = self.vertices.clone();
        order.sort_by_key(|&(x, y)| (x + y, x));
        let mut sums: HashMap<Point, Rational> = HashMap::new();
        for &(x, y) in &order {
            let value = if (x, y) == start {
                Rational::one()
            } else {
                let west = sums.get(&(x - 1, y)).cloned().unwrap_or_else(Rational::zero);
                let south = sums
                    .get(&(x, y - 1))
                    .map(|s| s * self.vertical_weight(y - 1))
                    .unwrap_or_else(Rational::zero);
                west + south
            };
            sums.insert((x, y), value);
        }
        Ok(sums.remove(&target).unwrap_or_else(Rational::zero))
    }

    /// Every east/north path inside the graph from `from` to `to`.
    fn paths_between(&self, from: Point, to: Point) -> Vec<Path> {
        fn walk(g: &LatticeGraph, at: Point, to: Point, trail: &mut Vec<Point>, weight: &Rational, out: &mut Vec<Path>) {
            if at == to {
                let mask = trail.iter().fold(0u128, |m, p| m | 1u128 << g.index[p]);
                out.push(Path { points: trail.clone(), mask, weight: weight.clone() });
                return;
            }
            let east = (at.0 + 1, at.1);
            if east.0 <= to.0 && g.contains(east) {
                trail.push(east);
                walk(g, east, to, trail, weight, out);
                trail.pop();
            }
            let north = (at.0, at.1 + 1);
            if north.1 <= to.1 && g.contains(north) {
                trail.push(north);
                walk(g, north, to, trail, &(weight * g.vertical_weight(at.1)), out);
                trail.pop();
            }
        }
        let mut out = Vec::new();
        if self.contains(from) && self.contains(to) {
            walk(self, from, to, &mut vec![from], &Rational::one(), &mut out);
        }
        out
    }

    fn check_family_request(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.len() != cols.len() {
            return Err(Error::domain(format!(
                "need as many rows as columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        if rows.is_empty() {
            return Err(Error::domain("need at least one row and column"));
        }
        for (name, set) in [("rows", rows), ("cols", cols)] {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::domain(format!("{name} must be strictly increasing")));
            }
        }
        self.check_indices(*rows.last().unwrap(), *cols.last().unwrap())?;
        if rows.len() > ENUMERATION_MAX_ORDER || self.n > ENUMERATION_MAX_N {
            return Err(Error::BudgetExceeded(format!(
                "family enumeration is limited to order <= {ENUMERATION_MAX_ORDER} and n <= {ENUMERATION_MAX_N}"
            )));
        }
        Ok(())
    }

    /// Runs `visit` on every vertex-disjoint family joining `rows[t]` to
    /// `cols[perm[t]]`. Stops early once `visit` returns `false`.
    fn search_families(&self, rows: &[usize], cols: &[usize], perm: &[usize], visit: &mut dyn FnMut(&[&Path]) -> bool) {
        let choices: Vec<Vec<Path>> = rows
            .iter()
            .zip(perm)
            .map(|(&i, &p)| self.paths_between(self.source(i), self.sink(cols[p])))
            .collect();
        fn go<'a>(choices: &'a [Vec<Path>], used: u128, acc: &mut Vec<&'a Path>, visit: &mut dyn FnMut(&[&Path]) -> bool) -> bool {
            let level = acc.len();
            if level == choices.len() {
                return visit(acc);
            }
            for p in &choices[level] {
                if p.mask & used != 0 {
                    continue;
                }
                acc.push(p);
                let keep_going = go(choices, used | p.mask, acc, visit);
                acc.pop();
                if !keep_going {
                    return false;
                }
            }
            true
        }
        go(&choices, 0, &mut Vec::new(), visit);
    }

    /// Fails if some non-identity pairing of `rows` with `cols` admits a
    /// vertex-disjoint family, which planarity rules out.
    fn assert_identity_pairing(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        for perm in (0..rows.len()).permutations(rows.len()) {
            if perm.iter().enumerate().all(|(t, &p)| t == p) {
                continue;
            }
            let mut found = None;
            self.search_families(rows, cols, &perm, &mut |family| {
                found = Some(family.iter().map(|p| p.points.clone()).collect::<Vec<_>>());
                false
            });
            if let Some(paths) = found {
                return Err(Error::Invariant(format!(
                    "disjoint family under pairing {perm:?} for rows {rows:?}, cols {cols:?}: {paths:?}"
                )));
            }
        }
        Ok(())
    }

    /// All vertex-disjoint families joining source `rows[t]` to sink `cols[t]`.
    pub fn enumerate_nonintersecting_families(&self, rows: &[usize], cols: &[usize]) -> Result<Vec<PathFamily>> {
        self.check_family_request(rows, cols)?;
        self.assert_identity_pairing(rows, cols)?;
        let identity: Vec<usize> = (0..rows.len()).collect();
        let mut families = Vec::new();
        self.search_families(rows, cols, &identity, &mut |family| {
            families.push(PathFamily {
                paths: family.iter().map(|p| p.points.clone()).collect(),
                weight: family.iter().map(|p| &p.weight).product(),
            });
            true
        });
        Ok(families)
    }

    /// The minor of `W_n` on `rows` x `cols`, as the total weight of the
    /// vertex-disjoint path families.
    pub fn minor_via_lgv(&self, rows: &[usize], cols: &[usize]) -> Result<Rational> {
        self.check_family_request(rows, cols)?;
        self.assert_identity_pairing(rows, cols)?;
        let identity: Vec<usize> = (0..rows.len()).collect();
        let mut total = Rational::zero();
        self.search_families(rows, cols, &identity, &mut |family| {
            total += family.iter().map(|p| &p.weight).product::<Rational>();
            true
        });
        Ok(total)
    }

    /// Graphviz rendering; vertices in lexicographic order, each at its
    /// lattice position.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph T_{} {{", self.n).unwrap();
        writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
        for &(x, y) in &self.vertices {
            writeln!(out, "  \"({x},{y})\" [pos=\"{x},{y}!\"];").unwrap();
        }
        for arc in self.arcs() {
            let (a, b) = (arc.from, arc.to);
            if a.1 == b.1 {
                writeln!(out, "  \"({},{})\" -> \"({},{})\";", a.0, a.1, b.0, b.1).unwrap();
            } else {
                writeln!(
                    out,
                    "  \"({},{})\" -> \"({},{})\" [label=\"{}\"];",
                    a.0,
                    a.1,
                    b.0,
                    b.1,
                    format_rational(&arc.weight)
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// `{n, vertices: [[x, y], ...], arcs: [{from, to, weight_num, weight_den}]}`
    pub fn to_json(&self) -> Value {
        let arcs: Vec<Value> = self
            .arcs()
            .iter()
            .map(|a| {
                json!({
                    "from": [a.from.0, a.from.1],
                    "to": [a.to.0, a.to.1],
                    "weight_num": integer_json(a.weight.numer()),
                    "weight_den": integer_json(a.weight.denom()),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "vertices": self.vertices.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "arcs": arcs,
        })
    }
}

struct Path {
    points: Vec<Point>,
    mask: u128,
    weight: Rational,
}

/// `C(n-i, n-j) - C(i, n-j)` for `i <= j`, zero otherwise.
pub fn closed_form_w(n: usize, i: usize, j: usize) -> Integer {
    transfer::path_entry(n, i, j)
}

pub fn export_dot(g: &LatticeGraph) -> String {
    g.to_dot()
}
