//! f-, h- and g-vectors of simplicial polytopes.
//!
//! For a simplicial `d`-polytope with face numbers `f_0, ..., f_{d-1}` (and
//! the implied `f_{-1} = f_d = 1`),
//!
//! ```text
//! h_i = sum_{j=0}^{i} (-1)^{i+j} C(d-j, i-j) f_{j-1},   i = 0..d
//! g_k = h_k - h_{k-1},                                 k = 0..floor(d/2)
//! ```
//!
//! and the McMullen correspondence recovers `f = g * M_d`.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{choose, Integer};
use crate::io::integer_json;
use crate::macaulay::{self, Violation};
use crate::transfer::{self, TransferMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    d: usize,
    counts: Vec<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    d: usize,
    values: Vec<Integer>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector {
    d: usize,
    values: Vec<Integer>,
}

impl FVector {
    /// `counts` are `(f_0, ..., f_{d-1})`; all must be at least 1.
    pub fn new(d: usize, counts: Vec<Integer>) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("f-vector needs d >= 1"));
        }
        if counts.len() != d {
            return Err(Error::LengthMismatch { expected: d, actual: counts.len() });
        }
        if let Some((i, v)) = counts.iter().enumerate().find(|(_, v)| **v < Integer::one()) {
            return Err(Error::domain(format!("f_{i} = {v} but face counts must be >= 1")));
        }
        Ok(FVector { d, counts })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn counts(&self) -> &[Integer] {
        &self.counts
    }

    /// `f_i` for `-1 <= i <= d`, using `f_{-1} = f_d = 1`.
    pub fn face_count(&self, i: i64) -> Integer {
        if i == -1 || i == self.d as i64 {
            Integer::one()
        } else {
            self.counts[i as usize].clone()
        }
    }
}

impl HVector {
    pub fn new(d: usize, values: Vec<Integer>) -> Result<Self> {
        if values.len() != d + 1 {
            return Err(Error::LengthMismatch { expected: d + 1, actual: values.len() });
        }
        Ok(HVector { d, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }
}

impl GVector {
    /// `values` are `(g_0, ..., g_{floor(d/2)})`.
    pub fn new(d: usize, values: Vec<Integer>) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("g-vector needs d >= 1"));
        }
        if values.len() != d / 2 + 1 {
            return Err(Error::LengthMismatch { expected: d / 2 + 1, actual: values.len() });
        }
        Ok(GVector { d, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }
}

pub fn f_to_h(f: &FVector) -> HVector {
    let d = f.d;
    let values = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let term = choose((d - j) as u64, (i - j) as i64) * f.face_count(j as i64 - 1);
                    if (i + j) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    HVector { d, values }
}

pub fn h_to_g(h: &HVector) -> GVector {
    let values = (0..=h.d / 2)
        .map(|k| {
            if k == 0 {
                h.values[0].clone()
            } else {
                &h.values[k] - &h.values[k - 1]
            }
        })
        .collect();
    GVector { d: h.d, values }
}

pub fn f_to_g(f: &FVector) -> GVector {
    h_to_g(&f_to_h(f))
}

/// Which matrix the McMullen map multiplies by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapForm {
    /// `g * M_d = (f_0, ..., f_{d-1})`.
    Plain,
    /// `g * W_{d+1} = (f_{-1}, f_0, ..., f_{d-1})`; the first coordinate is `g_0`.
    Augmented,
}

fn row_vector_product(g: &[Integer], rows: &[Vec<Integer>]) -> Vec<Integer> {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| g.iter().zip(rows).map(|(gi, row)| gi * &row[j]).sum())
        .collect()
}

/// The McMullen map `g -> g * M_d` (or `g * W_{d+1}`).
///
/// The result is returned as raw integers since an arbitrary `g` need not map
/// to a valid face-count vector.
pub fn g_to_f(g: &GVector, form: MapForm) -> Vec<Integer> {
    match form {
        MapForm::Plain => {
            let m: TransferMatrix = transfer::build_m(g.d).expect("g-vector has d >= 1");
            row_vector_product(&g.values, m.rows())
        }
        MapForm::Augmented => {
            let w = transfer::build_w(g.d + 1).expect("d + 1 >= 2");
            row_vector_product(&g.values, w.rows())
        }
    }
}

/// Euler-Poincare: `sum_{i=-1}^{d} (-1)^i f_i = 0`.
pub fn euler_check(f: &FVector) -> bool {
    euler_sum(f).is_zero()
}

fn euler_sum(f: &FVector) -> Integer {
    (-1..=f.d as i64)
        .map(|i| if i.rem_euclid(2) == 0 { f.face_count(i) } else { -f.face_count(i) })
        .sum()
}

/// Conditions checked by [`is_polytopal_f`], in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Euler,
    LeadingOne,
    Nonnegative,
    MSequence,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Euler => "euler",
            Condition::LeadingOne => "g0",
            Condition::Nonnegative => "nonnegative",
            Condition::MSequence => "m_sequence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub pass: bool,
    pub g: GVector,
    /// `n = f_0`.
    pub vertices: Integer,
    /// Whether `g_1 = n - d - 1`.
    pub g1_matches_vertices: bool,
    pub failed_condition: Option<Condition>,
    /// Details of the failure: the Euler sum, the offending `g_k`, or the
    /// Macaulay witness.
    pub witness: Option<Value>,
}

impl FeasibilityVerdict {
    /// `{"pass", "g", "failed_condition", "witness", "vertices", "g1_matches_vertices"}`
    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "g": self.g.values.iter().map(integer_json).collect::<Vec<_>>(),
            "failed_condition": self.failed_condition.map(Condition::as_str),
            "witness": self.witness.clone().unwrap_or(Value::Null),
            "vertices": integer_json(&self.vertices),
            "g1_matches_vertices": self.g1_matches_vertices,
        })
    }
}

/// Decides whether `f` is the f-vector of some simplicial `d`-polytope
/// through the McMullen correspondence, reporting the first failed condition.
pub fn is_polytopal_f(f: &FVector) -> FeasibilityVerdict {
    let g = f_to_g(f);
    let vertices = f.counts[0].clone();
    let g1_matches_vertices = g
        .values
        .get(1)
        .is_none_or(|g1| *g1 == &vertices - Integer::from(f.d as u64 + 1));
    let verdict = |failed: Option<Condition>, witness: Option<Value>| FeasibilityVerdict {
        pass: failed.is_none(),
        g: g.clone(),
        vertices: vertices.clone(),
        g1_matches_vertices,
        failed_condition: failed,
        witness,
    };

    let sum = euler_sum(f);
    if !sum.is_zero() {
        return verdict(Some(Condition::Euler), Some(json!({ "euler_sum": integer_json(&sum) })));
    }
    if !g.values[0].is_one() {
        return verdict(Some(Condition::LeadingOne), Some(json!({ "g0": integer_json(&g.values[0]) })));
    }
    if let Some((k, v)) = g.values.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return verdict(
            Some(Condition::Nonnegative),
            Some(json!({ "k": k, "g_k": integer_json(v) })),
        );
    }
    let m = macaulay::is_m_sequence(&g.values).expect("g-vector is nonempty");
    match m.witness {
        None => verdict(None, None),
        Some(Violation::Boundary { k, boundary, previous }) => verdict(
            Some(Condition::MSequence),
            Some(json!({
                "k": k,
                "boundary_value": integer_json(&boundary),
                "previous_value": integer_json(&previous),
            })),
        ),
        Some(other) => unreachable!("leading entry and signs already checked: {other:?}"),
    }
}

/// Feasibility of the image `g * M_d` of a candidate g-vector.
///
/// Fails with a domain error if some coordinate of `g * M_d` is below 1,
/// since that is not a face-count vector at all.
pub fn is_polytopal_g(g: &GVector) -> Result<FeasibilityVerdict> {
    let f = FVector::new(g.d, g_to_f(g, MapForm::Plain))?;
    Ok(is_polytopal_f(&f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn fv(d: usize, v: &[i64]) -> FVector {
        FVector::new(d, ints(v)).unwrap()
    }

    fn gv(d: usize, v: &[i64]) -> GVector {
        GVector::new(d, ints(v)).unwrap()
    }

    /// Face counts of a simplicial complex given by its facets, counting
    /// every nonempty subset of every facet once.
    fn face_counts(d: usize, facets: &[Vec<usize>]) -> Vec<i64> {
        let mut faces = std::collections::BTreeSet::new();
        for facet in facets {
            for mask in 1u32..(1 << facet.len()) {
                let face: Vec<usize> =
                    facet.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
                faces.insert(face);
            }
        }
        let mut counts = vec![0i64; d];
        for face in faces {
            counts[face.len() - 1] += 1;
        }
        counts
    }

    #[test]
    fn face_enumeration_of_small_polytopes() {
        // Boundary of the tetrahedron.
        let tetra: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
        assert_eq!(face_counts(3, &tetra), vec![4, 6, 4]);
        // Octahedron: vertices +-e_i as 0/1, 2/3, 4/5.
        let mut octa = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    octa.push(vec![a, b, c]);
                }
            }
        }
        assert_eq!(face_counts(3, &octa), vec![6, 12, 8]);
        // Triangular bipyramid: triangle 0,1,2 with apexes 3 and 4.
        let bipyramid: Vec<Vec<usize>> =
            [3, 4].iter().flat_map(|&apex| [[0, 1], [1, 2], [0, 2]].map(|e| vec![e[0], e[1], apex])).collect();
        assert_eq!(face_counts(3, &bipyramid), vec![5, 9, 6]);
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(f_to_h(&fv(3, &[4, 6, 4])).values(), ints(&[1, 1, 1, 1]).as_slice());
        assert_eq!(f_to_h(&fv(3, &[6, 12, 8])).values(), ints(&[1, 3, 3, 1]).as_slice());
        assert_eq!(f_to_h(&fv(1, &[2])).values(), ints(&[1, 1]).as_slice());
    }

    #[test]
    fn h_to_g_examples() {
        let h = |d, v: &[i64]| HVector::new(d, ints(v)).unwrap();
        assert_eq!(h_to_g(&h(3, &[1, 1, 1, 1])).values(), ints(&[1, 0]).as_slice());
        assert_eq!(h_to_g(&h(3, &[1, 3, 3, 1])).values(), ints(&[1, 2]).as_slice());
        assert_eq!(h_to_g(&h(1, &[1, 1])).values(), ints(&[1]).as_slice());
    }

    #[test]
    fn g_to_f_examples() {
        assert_eq!(g_to_f(&gv(3, &[1, 0]), MapForm::Plain), ints(&[4, 6, 4]));
        assert_eq!(g_to_f(&gv(3, &[1, 2]), MapForm::Plain), ints(&[6, 12, 8]));
        assert_eq!(g_to_f(&gv(3, &[1, 1]), MapForm::Plain), ints(&[5, 9, 6]));
        assert_eq!(g_to_f(&gv(3, &[1, 2]), MapForm::Augmented), ints(&[1, 6, 12, 8]));
    }

    #[test]
    fn f_to_g_examples() {
        assert_eq!(f_to_g(&fv(3, &[4, 6, 4])).values(), ints(&[1, 0]).as_slice());
        assert_eq!(f_to_g(&fv(3, &[6, 12, 8])).values(), ints(&[1, 2]).as_slice());
        assert_eq!(f_to_g(&fv(2, &[3, 3])).values(), ints(&[1, 0]).as_slice());
    }

    #[test]
    fn euler_examples() {
        assert!(euler_check(&fv(3, &[4, 6, 4])));
        assert!(!euler_check(&fv(3, &[5, 9, 7])));
        assert!(euler_check(&fv(2, &[3, 3])));
        assert!(euler_check(&fv(1, &[2])));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FVector::new(3, ints(&[4, 6])), Err(Error::LengthMismatch { expected: 3, actual: 2 })));
        assert!(FVector::new(2, ints(&[3, 0])).is_err());
        assert!(FVector::new(0, vec![]).is_err());
        assert!(matches!(GVector::new(5, ints(&[1, 0])), Err(Error::LengthMismatch { expected: 3, actual: 2 })));
        assert!(HVector::new(2, ints(&[1, 1])).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let v = is_polytopal_f(&fv(3, &[4, 6, 4]));
        assert!(v.pass);
        assert_eq!(v.g.values(), ints(&[1, 0]).as_slice());
        assert!(v.g1_matches_vertices);

        let v = is_polytopal_f(&fv(3, &[4, 6, 5]));
        assert!(!v.pass);
        assert_eq!(v.failed_condition, Some(Condition::Euler));

        let v = is_polytopal_g(&gv(5, &[1, 0, 2])).unwrap();
        assert!(!v.pass);
        assert_eq!(v.failed_condition, Some(Condition::MSequence));
        let w = v.witness.unwrap();
        assert_eq!(w["k"], json!(2));
        assert_eq!(w["boundary_value"], json!(2));
        assert_eq!(w["previous_value"], json!(0));
    }

    #[test]
    fn feasibility_nonnegativity_and_leading_entry() {
        // g = (1, 3, -1) for d = 4 satisfies Euler but has a negative entry.
        let f = g_to_f(&gv(4, &[1, 3, -1]), MapForm::Plain);
        let v = is_polytopal_f(&FVector::new(4, f).unwrap());
        assert_eq!(v.failed_condition, Some(Condition::Nonnegative));
        // h_0 = f_{-1} = 1, so a scaled g-vector comes back normalized:
        // 2*(3,3) + 1*(1,1) = (7,7) is the heptagon.
        let f = g_to_f(&gv(2, &[2, 1]), MapForm::Plain);
        let v = is_polytopal_f(&FVector::new(2, f).unwrap());
        assert!(v.pass);
        assert_eq!(v.g.values(), ints(&[1, 4]).as_slice());
    }

    #[test]
    fn verdict_json_shape() {
        let v = is_polytopal_f(&fv(3, &[4, 6, 5]));
        let j = v.to_json();
        assert_eq!(j["pass"], json!(false));
        assert_eq!(j["failed_condition"], json!("euler"));
        assert_eq!(j["g"], json!([1, 0]));
        assert_eq!(j["witness"]["euler_sum"], json!(1));
    }

    #[test]
    fn dehn_sommerville_on_generated_examples() {
        for d in 1..=10 {
            let mut values = vec![Integer::from(0); d / 2 + 1];
            values[0] = 1.into();
            if d >= 2 {
                values[1] = 3.into();
            }
            let f = FVector::new(d, g_to_f(&GVector::new(d, values).unwrap(), MapForm::Plain)).unwrap();
            let h = f_to_h(&f);
            for i in 0..=d {
                assert_eq!(h.values()[i], h.values()[d - i], "d={d} i={i}");
            }
        }
    }
}
