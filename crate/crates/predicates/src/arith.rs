//! Number types a predicate polynomial can be evaluated in.
//!
//! Each determinant is written once against [`Arith`] and instantiated with
//! [`Interval`] for the filter stage and [`Expansion`] for the exact stage.

use crate::expansion::Expansion;
use crate::interval::Interval;

pub trait Arith: Clone {
    fn from_f64(x: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `a - b`, enclosing or exact depending on the type.
    fn diff(a: f64, b: f64) -> Self {
        Self::from_f64(a).sub(&Self::from_f64(b))
    }
}

impl Arith for Interval {
    #[inline]
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        Interval::add(*self, *o)
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Interval::sub(*self, *o)
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Interval::mul(*self, *o)
    }
    #[inline]
    fn neg(&self) -> Self {
        Interval::neg(*self)
    }
}

impl Arith for Expansion {
    fn from_f64(x: f64) -> Self {
        Expansion::from_f64(x)
    }
    fn add(&self, o: &Self) -> Self {
        Expansion::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Expansion::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Expansion::mul(self, o)
    }
    fn neg(&self) -> Self {
        Expansion::neg(self)
    }
    fn diff(a: f64, b: f64) -> Self {
        Expansion::diff(a, b)
    }
}

impl Arith for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[inline]
pub fn det2<T: Arith>(a: &T, b: &T, c: &T, d: &T) -> T {
    a.mul(d).sub(&b.mul(c))
}

/// Determinant of the 3x3 matrix with the given rows.
pub fn det3<T: Arith>(r: &[[T; 3]; 3]) -> T {
    let m0 = det2(&r[1][1], &r[1][2], &r[2][1], &r[2][2]);
    let m1 = det2(&r[1][0], &r[1][2], &r[2][0], &r[2][2]);
    let m2 = det2(&r[1][0], &r[1][1], &r[2][0], &r[2][1]);
    r[0][0].mul(&m0).sub(&r[0][1].mul(&m1)).add(&r[0][2].mul(&m2))
}

/// Determinant of the 4x4 matrix with the given rows.
pub fn det4<T: Arith>(r: &[[T; 4]; 4]) -> T {
    // Laplace expansion on the first two rows
    let a = |i: usize, j: usize| det2(&r[0][i], &r[0][j], &r[1][i], &r[1][j]);
    let b = |i: usize, j: usize| det2(&r[2][i], &r[2][j], &r[3][i], &r[3][j]);
    let t0 = a(0, 1).mul(&b(2, 3));
    let t1 = a(0, 2).mul(&b(1, 3));
    let t2 = a(0, 3).mul(&b(1, 2));
    let t3 = a(1, 2).mul(&b(0, 3));
    let t4 = a(1, 3).mul(&b(0, 2));
    let t5 = a(2, 3).mul(&b(0, 1));
    t0.sub(&t1).add(&t2).add(&t3).sub(&t4).add(&t5)
}

pub fn cross<T: Arith>(u: &[T; 3], v: &[T; 3]) -> [T; 3] {
    [
        det2(&u[1], &u[2], &v[1], &v[2]),
        det2(&u[2], &u[0], &v[2], &v[0]),
        det2(&u[0], &u[1], &v[0], &v[1]),
    ]
}

pub fn dot<T: Arith>(u: &[T; 3], v: &[T; 3]) -> T {
    u[0].mul(&v[0]).add(&u[1].mul(&v[1])).add(&u[2].mul(&v[2]))
}

pub fn diff3<T: Arith>(a: &[f64; 3], b: &[f64; 3]) -> [T; 3] {
    [T::diff(a[0], b[0]), T::diff(a[1], b[1]), T::diff(a[2], b[2])]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det4_matches_cofactor_expansion() {
        let m = [
            [2.0, -1.0, 0.0, 3.0],
            [1.0, 4.0, -2.0, 0.5],
            [0.0, 1.0, 5.0, -1.0],
            [3.0, 0.0, 1.0, 2.0],
        ];
        // cofactor expansion along the first row
        let mut expect = 0.0;
        for j in 0..4 {
            let mut minor = [[0.0; 3]; 3];
            for (ri, row) in m[1..].iter().enumerate() {
                let mut cj = 0;
                for (k, v) in row.iter().enumerate() {
                    if k != j {
                        minor[ri][cj] = *v;
                        cj += 1;
                    }
                }
            }
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            expect += s * m[0][j] * det3(&minor);
        }
        assert_eq!(det4(&m), expect);
    }
}
