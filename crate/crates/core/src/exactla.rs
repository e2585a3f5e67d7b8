//! Exact integer and rational linear algebra: fraction-free determinants,
//! Smith normal form, and lattice span checks.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

pub type Int = BigInt;

/// Exact rational number in canonical form (reduced, positive denominator).
/// `num_rational::Ratio` enforces canonicity on construction, which keeps
/// equality and hashing structural.
pub type Rational = num_rational::BigRational;

/// An integer point of `Z^d`, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    entries: Vec<Int>,
}

impl LatticeVector {
    /// Panics if `entries` is empty; lattice vectors live in dimension >= 1.
    pub fn new(entries: Vec<Int>) -> Self {
        assert!(!entries.is_empty(), "lattice vector must have dim >= 1");
        LatticeVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Int::zero(); dim])
    }

    /// Standard basis vector `e_i` (zero-based index).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut entries = vec![Int::zero(); dim];
        entries[i] = Int::one();
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Int {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, other: &LatticeVector) -> Int {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scaled(&self, c: &Int) -> Self {
        Self::new(self.entries.iter().map(|x| x * c).collect())
    }

    /// Divides by the gcd of the entries, preserving direction.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.entries.iter().map(|x| x / &g).collect())
    }

    /// Gcd of the absolute values of the entries (zero for the zero vector).
    pub fn content(&self) -> Int {
        self.entries
            .iter()
            .fold(Int::zero(), |acc, x| acc.gcd(x))
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector::new(
            self.entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector::new(
            self.entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.entries.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

// Wire encoding: each entry is a JSON number when it fits in i64 and a
// decimal string beyond that, so consumers never see rounded integers.
pub(crate) fn serialize_int<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x.clone()) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int::from(v))
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int::from(v))
    }

    fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Int, E> {
        v.parse::<Int>()
            .map_err(|_| E::custom(format!("invalid integer literal {v:?}")))
    }
}

pub(crate) fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    d.deserialize_any(IntVisitor)
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for x in &self.entries {
            match i64::try_from(x.clone()) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

struct VectorVisitor;

impl<'de> Visitor<'de> for VectorVisitor {
    type Value = LatticeVector;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a nonempty sequence of integers")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LatticeVector, A::Error> {
        #[derive(Deserialize)]
        struct Entry(#[serde(deserialize_with = "deserialize_int")] Int);
        let mut entries = Vec::new();
        while let Some(Entry(x)) = seq.next_element()? {
            entries.push(x);
        }
        if entries.is_empty() {
            return Err(serde::de::Error::custom("lattice vector must have dim >= 1"));
        }
        Ok(LatticeVector::new(entries))
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<LatticeVector, D::Error> {
        d.deserialize_seq(VectorVisitor)
    }
}

/// Integer matrix stored by columns; all columns share one dimension.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeMatrix {
    columns: Vec<LatticeVector>,
}

impl LatticeMatrix {
    pub fn from_columns(columns: Vec<LatticeVector>) -> Result<Self, Error> {
        let Some(first) = columns.first() else {
            return Err(Error::Shape("matrix needs at least one column".into()));
        };
        let dim = first.dim();
        if columns.iter().any(|c| c.dim() != dim) {
            return Err(Error::Shape("columns have unequal dimensions".into()));
        }
        Ok(LatticeMatrix { columns })
    }

    pub fn rows(&self) -> usize {
        self.columns[0].dim()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> &Int {
        self.columns[col].get(row)
    }

    /// Submatrix on the given column indices, in the order listed.
    pub fn select_columns(&self, indices: &[usize]) -> Result<Self, Error> {
        let columns = indices
            .iter()
            .map(|&j| {
                self.columns
                    .get(j)
                    .cloned()
                    .ok_or_else(|| Error::Shape(format!("column index {j} out of range")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_columns(columns)
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                (0..self.rows())
                    .map(|i| self.entry(i, j).to_string().len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.entry(i, j), width = widths[j])?;
            }
            if i + 1 < self.rows() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        fmt::Display::fmt(self, f)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every division in the recurrence is exact over the integers, so no
/// rounding occurs anywhere.
pub fn det(m: &LatticeMatrix) -> Result<Int, Error> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Shape(format!(
            "determinant needs a square matrix, got {}x{}",
            n,
            m.cols()
        )));
    }
    let mut a: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Int::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Elementary divisors d_1 | d_2 | ... of an integer matrix, computed by
/// repeated gcd pivoting with unimodular row/column operations only.
///
/// Returns `min(rows, cols)` nonnegative entries, trailing zeros included.
pub fn smith_normal_form(m: &LatticeMatrix) -> Vec<Int> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Int>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let k = rows.min(cols);
    let mut divisors = Vec::with_capacity(k);

    for t in 0..k {
        // Pivot choice: smallest nonzero magnitude in the trailing block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }

        'reduce: loop {
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !r.is_zero() {
                    a.swap(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !r.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            // Row and column are clear; force the divisibility chain.
            for i in t + 1..rows {
                if let Some(j) = (t + 1..cols).find(|&j| !(&a[i][j] % &a[t][t]).is_zero()) {
                    let _ = j;
                    for jj in t..cols {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        divisors.push(a[t][t].abs());
    }

    divisors.resize(k, Int::zero());
    divisors
}

/// Rank over the rationals (number of nonzero elementary divisors).
pub fn rank(m: &LatticeMatrix) -> usize {
    smith_normal_form(m).iter().filter(|d| !d.is_zero()).count()
}

/// Whether the integer span of `vectors` is all of `Z^dim`: rank `dim` and
/// every elementary divisor equal to 1. An empty list never spans.
pub fn generates_full_lattice(vectors: &[LatticeVector], dim: usize) -> bool {
    if vectors.is_empty() || vectors.len() < dim {
        return false;
    }
    assert!(vectors.iter().all(|v| v.dim() == dim), "vector dim mismatch");
    let m = LatticeMatrix::from_columns(vectors.to_vec()).expect("nonempty columns");
    let divisors = smith_normal_form(&m);
    divisors.len() == dim && divisors.iter().all(|d| d.is_one())
}
