//! Exact rational scalars, vectors and matrices.
//!
//! Every number in the crate is a [`Rational`]; there is no floating point
//! anywhere on a decision path. `BigRational` keeps itself reduced with a
//! positive denominator, so equality and hashing are structural.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `[+-]digits[/digits]` with a strictly positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            d
        }
    };
    Ok(Rational::new(n, d))
}

/// A vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&e| int(e)).collect())
    }

    /// Parses a comma-separated list of rationals, e.g. `"1,-1/2,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(QVector(Vec::new()));
        }
        t.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(QVector)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector(self.0.iter().map(|e| e * c).collect())
    }

    /// Positive multiple with coprime integer entries; the zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|e| (e * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
        QVector(ints.into_iter().map(|e| Rational::from_integer(e / &gcd)).collect())
    }

    /// Comma-separated text form accepted by [`QVector::parse`].
    pub fn to_text(&self) -> String {
        self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        self.0.iter().map(|a| -a).collect()
    }
}

impl Mul<&QVector> for &Rational {
    type Output = QVector;
    fn mul(self, rhs: &QVector) -> QVector {
        rhs.scale(self)
    }
}

/// A dense rectangular matrix, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    cols: usize,
    rows: Vec<QVector>,
}

impl QMatrix {
    pub fn from_rows(cols: usize, rows: Vec<QVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
        }
        Ok(QMatrix { cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { cols: n, rows: (0..n).map(|i| QVector::unit(n, i)).collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { cols, rows: vec![QVector::zeros(cols); rows] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn mul_vec(&self, w: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(w)).collect()
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{w : self·w = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<QVector> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut w = QVector::zeros(self.cols);
                w[f] = Rational::one();
                for (row, &p) in ech.pivots.iter().enumerate() {
                    w[p] = -&ech.rows[row][f];
                }
                w
            })
            .collect()
    }

    /// Some `w` with `self·w = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &QVector) -> Option<QVector> {
        assert_eq!(b.dim(), self.nrows(), "right-hand side length must equal row count");
        let augmented = QMatrix {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .zip(b.iter())
                .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
                .collect(),
        };
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut w = QVector::zeros(self.cols);
        for (row, &p) in ech.pivots.iter().enumerate() {
            w[p] = ech.rows[row][self.cols].clone();
        }
        Some(w)
    }

    /// Reduced row echelon form. Among candidate pivots in a column the one
    /// with the smallest `|num·den|` is chosen to limit coefficient growth.
    fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (rows[i][c].numer() * rows[i][c].denom()).abs());
            let Some(p) = best else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            rows[r] = rows[r].scale(&inv);
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let factor = rows[i][c].clone();
                    let sub = rows[r].scale(&factor);
                    rows[i] = &rows[i] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rows, pivots }
    }
}

struct Echelon {
    rows: Vec<QVector>,
    pivots: Vec<usize>,
}

/// Rank of a list of vectors of a common dimension.
pub fn rank_of(dim: usize, vectors: &[QVector]) -> usize {
    QMatrix { cols: dim, rows: vectors.to_vec() }.rank()
}

/// Whether `w` is a scalar multiple of `x`.
pub fn in_span(x: &QVector, w: &QVector) -> bool {
    rank_of(x.dim(), &[x.clone(), w.clone()]) <= 1 && (!x.is_zero() || w.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_rows(cols, rows.iter().map(|r| QVector::from_ints(r)).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(2, 4).rank(), 0);
        assert_eq!(m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]).rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(QMatrix::identity(2).nullspace_basis().is_empty());
        let ones = m(&[&[1, 1, 1]]);
        let basis = ones.nullspace_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(rank_of(3, &basis), 2);
        for w in &basis {
            assert!(ones.mul_vec(w).is_zero());
        }
        assert_eq!(QMatrix::zeros(1, 2).nullspace_basis().len(), 2);
    }

    #[test]
    fn solve_examples() {
        let b = QVector::from_ints(&[3, -7]);
        assert_eq!(QMatrix::identity(2).solve(&b), Some(b));
        assert_eq!(m(&[&[1, 0], &[1, 0]]).solve(&QVector::from_ints(&[1, 2])), None);
        let w = m(&[&[2, 0], &[0, 4]]).solve(&QVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(w, QVector::new(vec![ratio(1, 2), ratio(1, 4)]));
    }

    #[test]
    fn rational_grammar() {
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("+4/6").unwrap(), ratio(2, 3));
        for bad in ["", "1/", "/2", "1/-2", "1/0", "1.5", "a", "--1", "1 /2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert_eq!(QVector::parse("1, -1/2,0").unwrap().to_text(), "1,-1/2,0");
    }

    #[test]
    fn primitive_scaling() {
        let v = QVector::new(vec![ratio(1, 2), int(0), ratio(-3, 4)]);
        assert_eq!(v.primitive(), QVector::from_ints(&[2, 0, -3]));
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec((-4i64..5, 1i64..4), c), r).prop_map(
                move |rows| {
                    let rows = rows
                        .into_iter()
                        .map(|row| row.into_iter().map(|(n, d)| ratio(n, d)).collect())
                        .collect();
                    QMatrix::from_rows(c, rows).unwrap()
                },
            )
        })
    }

    fn canonical(q: &Rational) -> bool {
        q.denom() > &BigInt::zero() && q.numer().gcd(q.denom()) == BigInt::one()
            || q.is_zero() && q.denom() == &BigInt::one()
    }

    proptest! {
        #[test]
        fn rank_nullity(mat in small_matrix()) {
            let basis = mat.nullspace_basis();
            prop_assert_eq!(mat.rank() + basis.len(), mat.ncols());
            prop_assert_eq!(rank_of(mat.ncols(), &basis), basis.len());
            for w in &basis {
                prop_assert!(mat.mul_vec(w).is_zero());
                prop_assert!(w.iter().all(canonical));
            }
        }

        #[test]
        fn solve_is_exact(mat in small_matrix(), seed in prop::collection::vec(-5i64..6, 4)) {
            let w0: QVector = (0..mat.ncols()).map(|i| int(seed[i])).collect();
            let b = mat.mul_vec(&w0);
            let w = mat.solve(&b).expect("consistent by construction");
            prop_assert_eq!(mat.mul_vec(&w), b);
        }

        #[test]
        fn text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let q = ratio(n, d);
            prop_assert!(canonical(&q));
            prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
        }
    }
}
