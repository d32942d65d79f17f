//! Arithmetic in the three-element field F3 and dense linear algebra over it.

use crate::error::{Error, Result};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element of the field F3 = {0, 1, 2} with arithmetic modulo 3.
///
/// The two-element field F2 embeds as the subset {0, 1}; puzzle-piece side
/// labels live in that subset while atomic pieces use all of F3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct F3(u8);

impl F3 {
    /// The additive identity.
    pub const ZERO: F3 = F3(0);
    /// The multiplicative identity.
    pub const ONE: F3 = F3(1);
    /// The element 2 = -1.
    pub const TWO: F3 = F3(2);

    /// All three field elements in ascending order.
    pub const ALL: [F3; 3] = [F3(0), F3(1), F3(2)];

    /// Builds an element from any integer residue.
    pub fn new(v: i64) -> F3 {
        F3(v.rem_euclid(3) as u8)
    }

    /// The canonical representative in {0, 1, 2}.
    pub fn value(self) -> u8 {
        self.0
    }

    /// True when the element is zero.
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The multiplicative inverse of a nonzero element (1 and 2 are each
    /// their own inverse).
    ///
    /// # Panics
    /// Panics on zero.
    pub fn inverse(self) -> F3 {
        match self.0 {
            1 => F3::ONE,
            2 => F3::TWO,
            _ => panic!("zero has no inverse in F3"),
        }
    }

    /// True when the element lies in the embedded subfield F2 = {0, 1}.
    pub fn is_f2(self) -> bool {
        self.0 < 2
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u8> for F3 {
    fn from(v: u8) -> F3 {
        F3(v % 3)
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, rhs: F3) -> F3 {
        F3((self.0 + rhs.0) % 3)
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, rhs: F3) -> F3 {
        F3((3 + self.0 - rhs.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, rhs: F3) -> F3 {
        F3((self.0 * rhs.0) % 3)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, rhs: F3) {
        *self = *self + rhs;
    }
}

impl SubAssign for F3 {
    fn sub_assign(&mut self, rhs: F3) {
        *self = *self - rhs;
    }
}

impl MulAssign for F3 {
    fn mul_assign(&mut self, rhs: F3) {
        *self = *self * rhs;
    }
}

impl Sum for F3 {
    fn sum<I: Iterator<Item = F3>>(iter: I) -> F3 {
        iter.fold(F3::ZERO, |a, b| a + b)
    }
}

/// Solves `A x = b` over F3 by Gauss-Jordan elimination.
///
/// Returns the canonical solution obtained from the reduced row echelon form
/// with every free variable set to zero, or [`Error::Inconsistent`] when the
/// rows contradict.
pub fn f3_linear_solve(a: &[Vec<F3>], b: &[F3]) -> Result<Vec<F3>> {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side disagree");
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F3>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();

    let mut pivot_of_col = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][col].inverse();
        for x in m[rank].iter_mut() {
            *x = *x * inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col];
                for c in col..=cols {
                    let sub = factor * m[rank][c];
                    m[r][c] = m[r][c] - sub;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::Inconsistent);
    }

    let mut x = vec![F3::ZERO; cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = m[*r][cols];
        }
    }
    Ok(x)
}
