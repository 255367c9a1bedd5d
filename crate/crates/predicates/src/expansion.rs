//! Floating-point expansion arithmetic.
//!
//! An expansion is a sum of doubles whose bit ranges do not overlap, kept in
//! order of increasing magnitude. Sums and products of expansions are exact,
//! so the sign of any polynomial in double inputs can be computed without
//! rounding error (barring overflow/underflow).

use std::cmp::Ordering;

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bv = x - a;
    let av = x - bv;
    let br = b - bv;
    let ar = a - av;
    (x, ar + br)
}

#[inline]
pub fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let x = a - b;
    let bv = a - x;
    let av = x + bv;
    let br = bv - b;
    let ar = a - av;
    (x, ar + br)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bv = x - a;
    (x, b - bv)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let abig = c - a;
    let hi = c - abig;
    (hi, a - hi)
}

/// Exact product `a*b = x + y` where `x = fl(a*b)`.
#[inline]
pub fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err1 = x - ahi * bhi;
    let err2 = err1 - alo * bhi;
    let err3 = err2 - ahi * blo;
    (x, alo * blo - err3)
}

/// Exact multi-component value. Zero is the empty expansion.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expansion {
    terms: Vec<f64>,
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion { terms: Vec::new() }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::zero()
        } else {
            Expansion { terms: vec![x] }
        }
    }

    /// Builds an expansion equal to the exact sum of arbitrary doubles.
    pub fn from_sum(values: &[f64]) -> Self {
        let mut e = Self::zero();
        for &v in values {
            e = e.grow(v);
        }
        e
    }

    pub fn diff(a: f64, b: f64) -> Self {
        let (x, y) = two_diff(a, b);
        Self::from_pair(x, y)
    }

    pub fn product(a: f64, b: f64) -> Self {
        let (x, y) = two_product(a, b);
        Self::from_pair(x, y)
    }

    fn from_pair(hi: f64, lo: f64) -> Self {
        let mut terms = Vec::with_capacity(2);
        if lo != 0.0 {
            terms.push(lo);
        }
        if hi != 0.0 {
            terms.push(hi);
        }
        Expansion { terms }
    }

    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sign of the exact value: the sign of the largest component.
    pub fn sign(&self) -> i8 {
        match self.terms.last() {
            None => 0,
            Some(&t) if t > 0.0 => 1,
            Some(_) => -1,
        }
    }

    /// Approximation of the value (the rounded sum of its components).
    pub fn estimate(&self) -> f64 {
        self.terms.iter().sum()
    }

    /// `self + b`, exact.
    pub fn grow(&self, b: f64) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + 1);
        let mut q = b;
        for &e in &self.terms {
            let (qn, h) = two_sum(q, e);
            q = qn;
            if h != 0.0 {
                out.push(h);
            }
        }
        if q != 0.0 {
            out.push(q);
        }
        Expansion { terms: out }
    }

    /// `self * b`, exact.
    pub fn scale(&self, b: f64) -> Self {
        if self.terms.is_empty() || b == 0.0 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(2 * self.terms.len());
        let (mut q, h) = two_product(self.terms[0], b);
        if h != 0.0 {
            out.push(h);
        }
        for &e in &self.terms[1..] {
            let (p1, p0) = two_product(e, b);
            let (sum, h) = two_sum(q, p0);
            if h != 0.0 {
                out.push(h);
            }
            let (qn, h) = fast_two_sum(p1, sum);
            q = qn;
            if h != 0.0 {
                out.push(h);
            }
        }
        if q != 0.0 {
            out.push(q);
        }
        Expansion { terms: out }
    }

    /// `self + other`, exact (merge followed by a linear renormalization).
    pub fn add(&self, other: &Expansion) -> Self {
        let (e, f) = (&self.terms, &other.terms);
        if e.is_empty() {
            return other.clone();
        }
        if f.is_empty() {
            return self.clone();
        }
        // merge by magnitude
        let mut merged = Vec::with_capacity(e.len() + f.len());
        let (mut i, mut j) = (0, 0);
        while i < e.len() && j < f.len() {
            if f[j].abs() > e[i].abs() {
                merged.push(e[i]);
                i += 1;
            } else {
                merged.push(f[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&e[i..]);
        merged.extend_from_slice(&f[j..]);

        let mut out = Vec::with_capacity(merged.len());
        let (mut q, h) = fast_two_sum(merged[1], merged[0]);
        if h != 0.0 {
            out.push(h);
        }
        for &g in &merged[2..] {
            let (qn, h) = two_sum(q, g);
            q = qn;
            if h != 0.0 {
                out.push(h);
            }
        }
        if q != 0.0 {
            out.push(q);
        }
        Expansion { terms: out }
    }

    pub fn neg(&self) -> Self {
        Expansion {
            terms: self.terms.iter().map(|t| -t).collect(),
        }
    }

    pub fn sub(&self, other: &Expansion) -> Self {
        self.add(&other.neg())
    }

    /// `self * other`, exact.
    pub fn mul(&self, other: &Expansion) -> Self {
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.terms.is_empty() {
            return Self::zero();
        }
        let mut acc = long.scale(short.terms[0]);
        for &t in &short.terms[1..] {
            acc = acc.add(&long.scale(t));
        }
        if acc.terms.len() > 16 {
            acc.compress();
        }
        acc
    }

    /// Rewrites the expansion with fewer components; the value is unchanged.
    pub fn compress(&mut self) {
        let e = &self.terms;
        if e.len() < 2 {
            return;
        }
        let n = e.len();
        let mut g = vec![0.0; n];
        let mut bottom = n - 1;
        let mut q = e[n - 1];
        for i in (0..n - 1).rev() {
            let (qn, small) = fast_two_sum(q, e[i]);
            if small != 0.0 {
                g[bottom] = qn;
                bottom -= 1;
                q = small;
            } else {
                q = qn;
            }
        }
        g[bottom] = q;
        let mut out = Vec::with_capacity(n - bottom);
        let mut q = g[bottom];
        for &gi in &g[bottom + 1..] {
            let (qn, small) = fast_two_sum(gi, q);
            q = qn;
            if small != 0.0 {
                out.push(small);
            }
        }
        if q != 0.0 {
            out.push(q);
        }
        self.terms = out;
    }

    /// Exact comparison of two expansions.
    pub fn cmp_exact(&self, other: &Expansion) -> Ordering {
        match self.sub(other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_product_is_exact() {
        let a = 1.0 + f64::EPSILON;
        let (x, y) = two_product(a, a);
        assert_eq!(x, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(y, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn cancellation_gives_zero() {
        let a = Expansion::from_sum(&[1e30, 1.0, -1e30]);
        assert_eq!(a.terms(), &[1.0]);
        let z = a.sub(&Expansion::from_f64(1.0));
        assert!(z.is_zero());
    }

    #[test]
    fn compress_keeps_value() {
        let mut e = Expansion::from_sum(&[1e-300, 3.0, 1e200, -7.5e-20, 2.0f64.powi(-60)]);
        let before = e.clone();
        e.compress();
        assert!(e.sub(&before).is_zero());
    }
}
