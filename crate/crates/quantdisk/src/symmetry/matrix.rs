use std::fmt;

use num_traits::{One, Zero};

use crate::exact::GaussRat;

/// Square matrix over ℚ(i), row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    size: usize,
    data: Vec<GaussRat>,
}

impl CMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Option<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return None;
        }
        Some(CMatrix { size, data: rows.into_iter().flatten().collect() })
    }

    pub fn zero(size: usize) -> Self {
        CMatrix { size, data: vec![GaussRat::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = CMatrix::zero(size);
        for i in 0..size {
            m.data[i * size + i] = GaussRat::one();
        }
        m
    }

    /// η = diag(−1, 1, …, 1).
    pub fn eta(size: usize) -> Self {
        let mut m = CMatrix::identity(size);
        m.data[0] = -GaussRat::one();
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.data[i * self.size + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<GaussRat>> {
        self.data.chunks(self.size).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let n = self.size;
        let mut out = CMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GaussRat::zero();
                for k in 0..n {
                    acc += self.get(i, k) * o.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix { size: self.size, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix { size: self.size, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.size;
        let mut out = CMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> GaussRat {
        (0..self.size).fold(GaussRat::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    /// Determinant by cofactor expansion; sizes here are at most 4.
    pub fn det(&self) -> GaussRat {
        det_rec(&self.rows())
    }

    /// max |U_ij|², rational.
    pub fn max_norm_sqr(&self) -> crate::exact::Rational {
        self.data.iter().map(GaussRat::norm_sqr).max().unwrap_or_else(crate::exact::Rational::zero)
    }
}

fn det_rec(m: &[Vec<GaussRat>]) -> GaussRat {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = GaussRat::zero();
    for (col, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<GaussRat>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect()).collect();
        let term = a * &det_rec(&minor);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.size).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn det_and_commutator() {
        let g = |a: i64, b: i64| GaussRat::new(rat(a, 4), rat(b, 4));
        let u = CMatrix::from_rows(vec![vec![g(5, 0), g(3, 0)], vec![g(3, 0), g(5, 0)]]).unwrap();
        assert_eq!(u.det(), GaussRat::one());
        let i3 = CMatrix::identity(3);
        assert_eq!(i3.det(), GaussRat::one());
        assert!(u.commutator(&CMatrix::identity(2)).is_zero());
        assert_eq!(CMatrix::eta(2).det(), -GaussRat::one());
    }
}
