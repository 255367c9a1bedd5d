//! Interval arithmetic with outward rounding.
//!
//! Every operation rounds to nearest and then widens the result by one ulp in
//! each direction, which always encloses the exact result. Overflow produces
//! infinite or NaN bounds; such intervals never certify a sign.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    #[inline]
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    #[inline]
    fn widened(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    /// Certified sign, or `None` when the interval straddles zero or is not finite.
    #[inline]
    pub fn sign(&self) -> Option<i8> {
        if self.lo > 0.0 && self.hi.is_finite() {
            Some(1)
        } else if self.hi < 0.0 && self.lo.is_finite() {
            Some(-1)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        let lo = self.lo + o.lo;
        let hi = self.hi + o.hi;
        if self.lo == self.hi && o.lo == o.hi {
            // exact when the rounded sum has no error term
            let (s, e) = crate::expansion::two_sum(self.lo, o.lo);
            if e == 0.0 {
                return Interval::point(s);
            }
        }
        Self::widened(lo, hi)
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    #[inline]
    pub fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, o: Self) -> Self {
        if self.lo == self.hi && o.lo == o.hi {
            let (p, e) = crate::expansion::two_product(self.lo, o.lo);
            let safe = p.is_finite() && p.abs() < 1e300 && (p.abs() > 1e-290 || self.lo == 0.0 || o.lo == 0.0);
            if safe && e == 0.0 {
                return Interval::point(p);
            }
        }
        let a = self.lo * o.lo;
        let b = self.lo * o.hi;
        let c = self.hi * o.lo;
        let d = self.hi * o.hi;
        if a.is_nan() || b.is_nan() || c.is_nan() || d.is_nan() {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        let lo = a.min(b).min(c).min(d);
        let hi = a.max(b).max(c).max(d);
        if lo == 0.0 && hi == 0.0 {
            // a zero factor gives an exact zero, anything else may have underflowed
            if (self.lo == 0.0 && self.hi == 0.0) || (o.lo == 0.0 && o.hi == 0.0) {
                return Interval::point(0.0);
            }
        }
        Self::widened(lo, hi)
    }

    /// Quotient enclosure; `None` if the divisor contains zero.
    pub fn div(self, o: Self) -> Option<Self> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return None;
        }
        let a = self.lo / o.lo;
        let b = self.lo / o.hi;
        let c = self.hi / o.lo;
        let d = self.hi / o.hi;
        let lo = a.min(b).min(c).min(d);
        let hi = a.max(b).max(c).max(d);
        if lo.is_nan() || hi.is_nan() {
            return None;
        }
        Some(Self::widened(lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encloses_rounded_sum() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        let s = a.add(b);
        assert!(s.lo < s.hi);
        assert!(s.contains(0.1 + 0.2));
    }

    #[test]
    fn exact_sum_stays_a_point() {
        let s = Interval::point(1.0).add(Interval::point(2.0));
        assert_eq!(s, Interval::point(3.0));
        assert_eq!(s.sub(Interval::point(3.0)).sign(), Some(0));
    }

    #[test]
    fn overflow_never_certifies() {
        let big = Interval::point(1e308);
        let p = big.mul(big);
        assert_eq!(p.sign(), None);
        let q = p.sub(p);
        assert_eq!(q.sign(), None);
    }
}
