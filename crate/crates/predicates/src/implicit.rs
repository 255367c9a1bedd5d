//! Implicit points and indirect predicates.
//!
//! An LPI point is the intersection of the line through `p, q` with the plane
//! through `r, s, t`; a TPI point is the intersection of three planes, each
//! given by three points. Both are evaluated in homogeneous form `(X, Y, Z, W)`
//! whose components are polynomials in the defining coordinates, so any
//! predicate on them reduces to the sign of a polynomial.

use crate::arith::{cross, det3, det4, diff3, dot, Arith};
use crate::expansion::Expansion;
use crate::interval::Interval;
use crate::kernel::{self, Point2, Point3, Sign};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lpi {
    pub p: Point3,
    pub q: Point3,
    pub r: Point3,
    pub s: Point3,
    pub t: Point3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tpi {
    pub planes: [[Point3; 3]; 3],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GenericPoint {
    Explicit(Point3),
    Lpi(Lpi),
    Tpi(Tpi),
}

/// Coordinate-plane projection used by the 2D predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    /// `(x, y)`
    XY,
    /// `(y, z)`
    YZ,
    /// `(z, x)`
    ZX,
}

impl Projection {
    pub const ALL: [Projection; 3] = [Projection::XY, Projection::YZ, Projection::ZX];

    #[inline]
    pub fn axes(self) -> (usize, usize) {
        match self {
            Projection::XY => (0, 1),
            Projection::YZ => (1, 2),
            Projection::ZX => (2, 0),
        }
    }

    /// Projection that drops the given axis.
    pub fn dropping(axis: usize) -> Projection {
        match axis {
            0 => Projection::YZ,
            1 => Projection::ZX,
            _ => Projection::XY,
        }
    }

    #[inline]
    pub fn apply(self, p: &Point3) -> Point2 {
        let (i, j) = self.axes();
        [p[i], p[j]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverflowError;

impl std::fmt::Display for OverflowError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("implicit point coordinate exceeds the double range")
    }
}

impl std::error::Error for OverflowError {}

fn lpi_homog<T: Arith>(l: &Lpi) -> [T; 4] {
    let a = diff3::<T>(&l.q, &l.p);
    let rs = diff3::<T>(&l.s, &l.r);
    let rt = diff3::<T>(&l.t, &l.r);
    let rp = diff3::<T>(&l.r, &l.p);
    let n = cross(&rs, &rt);
    let w = dot(&n, &a);
    let lambda = dot(&n, &rp);
    let c = |i: usize| T::from_f64(l.p[i]).mul(&w).add(&a[i].mul(&lambda));
    [c(0), c(1), c(2), w]
}

fn tpi_homog<T: Arith>(t: &Tpi) -> [T; 4] {
    let plane = |v: &[Point3; 3]| {
        let n = cross(&diff3::<T>(&v[1], &v[0]), &diff3::<T>(&v[2], &v[0]));
        let p0 = [T::from_f64(v[0][0]), T::from_f64(v[0][1]), T::from_f64(v[0][2])];
        let d = dot(&n, &p0);
        (n, d)
    };
    let (n1, d1) = plane(&t.planes[0]);
    let (n2, d2) = plane(&t.planes[1]);
    let (n3, d3) = plane(&t.planes[2]);
    let w = det3(&[n1.clone(), n2.clone(), n3.clone()]);
    let with_col = |c: usize| {
        let mut r1 = n1.clone();
        let mut r2 = n2.clone();
        let mut r3 = n3.clone();
        r1[c] = d1.clone();
        r2[c] = d2.clone();
        r3[c] = d3.clone();
        det3(&[r1, r2, r3])
    };
    [with_col(0), with_col(1), with_col(2), w]
}

/// A point in the form a predicate kernel consumes: explicit coordinates or
/// homogeneous components with a certified sign of `W`.
enum Hom<T> {
    Exp(Point3),
    Imp([T; 4], Sign),
}

trait SignOf {
    fn certified_sign(&self) -> Option<Sign>;
}

impl SignOf for Interval {
    fn certified_sign(&self) -> Option<Sign> {
        self.sign()
    }
}

impl SignOf for Expansion {
    fn certified_sign(&self) -> Option<Sign> {
        Some(self.sign())
    }
}

fn homog<T: Arith + SignOf>(p: &GenericPoint) -> Option<Hom<T>> {
    match p {
        GenericPoint::Explicit(c) => Some(Hom::Exp(*c)),
        GenericPoint::Lpi(l) => {
            let h = lpi_homog::<T>(l);
            let s = h[3].certified_sign()?;
            if s == 0 {
                return None;
            }
            Some(Hom::Imp(h, s))
        }
        GenericPoint::Tpi(t) => {
            let h = tpi_homog::<T>(t);
            let s = h[3].certified_sign()?;
            if s == 0 {
                return None;
            }
            Some(Hom::Imp(h, s))
        }
    }
}

fn orient3d_hom<T: Arith + SignOf>(pts: [&GenericPoint; 4]) -> Option<Sign> {
    let h = [
        homog::<T>(pts[0])?,
        homog::<T>(pts[1])?,
        homog::<T>(pts[2])?,
        homog::<T>(pts[3])?,
    ];
    let mut wsign: Sign = 1;
    for x in &h {
        if let Hom::Imp(_, s) = x {
            wsign *= s;
        }
    }
    let explicit = h.iter().rposition(|x| matches!(x, Hom::Exp(_)));
    match explicit {
        Some(k) => {
            // move the explicit point last; a transposition flips the sign
            let mut order = [0usize, 1, 2, 3];
            let mut flip: Sign = 1;
            if k != 3 {
                order.swap(k, 3);
                flip = -1;
            }
            let d = match &h[order[3]] {
                Hom::Exp(c) => *c,
                Hom::Imp(..) => unreachable!(),
            };
            let row = |x: &Hom<T>| -> [T; 3] {
                match x {
                    Hom::Exp(c) => diff3::<T>(c, &d),
                    Hom::Imp(v, _) => [
                        v[0].sub(&v[3].mul(&T::from_f64(d[0]))),
                        v[1].sub(&v[3].mul(&T::from_f64(d[1]))),
                        v[2].sub(&v[3].mul(&T::from_f64(d[2]))),
                    ],
                }
            };
            let det = det3(&[row(&h[order[0]]), row(&h[order[1]]), row(&h[order[2]])]);
            det.certified_sign().map(|s| s * flip * wsign)
        }
        None => {
            let row = |x: &Hom<T>| -> [T; 4] {
                match x {
                    Hom::Imp(v, _) => v.clone(),
                    Hom::Exp(_) => unreachable!(),
                }
            };
            let det = det4(&[row(&h[0]), row(&h[1]), row(&h[2]), row(&h[3])]);
            det.certified_sign().map(|s| s * wsign)
        }
    }
}

/// orient3d on explicit or implicit points; same convention as
/// [`kernel::orient3d`].
pub fn orient3d_indirect(a: &GenericPoint, b: &GenericPoint, c: &GenericPoint, d: &GenericPoint) -> Sign {
    if let (
        GenericPoint::Explicit(a),
        GenericPoint::Explicit(b),
        GenericPoint::Explicit(c),
        GenericPoint::Explicit(d),
    ) = (a, b, c, d)
    {
        return kernel::orient3d(a, b, c, d);
    }
    if let Some(s) = orient3d_hom::<Interval>([a, b, c, d]) {
        return s;
    }
    orient3d_indirect_exact(a, b, c, d)
}

/// Exact stage of [`orient3d_indirect`], skipping the filters.
pub fn orient3d_indirect_exact(a: &GenericPoint, b: &GenericPoint, c: &GenericPoint, d: &GenericPoint) -> Sign {
    orient3d_hom::<Expansion>([a, b, c, d]).expect("implicit point without a unique intersection")
}

/// Filter stage of [`orient3d_indirect`]; `None` when not certified.
pub fn orient3d_indirect_filter(a: &GenericPoint, b: &GenericPoint, c: &GenericPoint, d: &GenericPoint) -> Option<Sign> {
    orient3d_hom::<Interval>([a, b, c, d])
}

/// 2D point for the projected predicates: a projected 3D point or a plain
/// pair of coordinates.
#[derive(Clone, Copy, Debug)]
pub enum Planar<'a> {
    Point(&'a GenericPoint),
    Coords(Point2),
}

enum Hom2<T> {
    Exp(Point2),
    Imp([T; 3], Sign),
}

fn homog2<T: Arith + SignOf>(p: &Planar, proj: Projection) -> Option<Hom2<T>> {
    let (i, j) = proj.axes();
    match p {
        Planar::Coords(c) => Some(Hom2::Exp(*c)),
        Planar::Point(GenericPoint::Explicit(c)) => Some(Hom2::Exp([c[i], c[j]])),
        Planar::Point(g) => match homog::<T>(g)? {
            Hom::Imp(h, s) => {
                let [x, y, z, w] = h;
                let c = [x, y, z];
                Some(Hom2::Imp([c[i].clone(), c[j].clone(), w], s))
            }
            Hom::Exp(_) => unreachable!(),
        },
    }
}

fn orient2d_hom<T: Arith + SignOf>(pts: [&Planar; 3], proj: Projection) -> Option<Sign> {
    let h = [homog2::<T>(pts[0], proj)?, homog2::<T>(pts[1], proj)?, homog2::<T>(pts[2], proj)?];
    let mut wsign: Sign = 1;
    for x in &h {
        if let Hom2::Imp(_, s) = x {
            wsign *= s;
        }
    }
    match h.iter().rposition(|x| matches!(x, Hom2::Exp(_))) {
        Some(k) => {
            let mut order = [0usize, 1, 2];
            let mut flip: Sign = 1;
            if k != 2 {
                order.swap(k, 2);
                flip = -1;
            }
            let c = match &h[order[2]] {
                Hom2::Exp(c) => *c,
                Hom2::Imp(..) => unreachable!(),
            };
            let row = |x: &Hom2<T>| -> [T; 2] {
                match x {
                    Hom2::Exp(p) => [T::diff(p[0], c[0]), T::diff(p[1], c[1])],
                    Hom2::Imp(v, _) => [
                        v[0].sub(&v[2].mul(&T::from_f64(c[0]))),
                        v[1].sub(&v[2].mul(&T::from_f64(c[1]))),
                    ],
                }
            };
            let r0 = row(&h[order[0]]);
            let r1 = row(&h[order[1]]);
            let det = r0[0].mul(&r1[1]).sub(&r0[1].mul(&r1[0]));
            det.certified_sign().map(|s| s * flip * wsign)
        }
        None => {
            let row = |x: &Hom2<T>| -> [T; 3] {
                match x {
                    Hom2::Imp(v, _) => v.clone(),
                    Hom2::Exp(_) => unreachable!(),
                }
            };
            let det = det3(&[row(&h[0]), row(&h[1]), row(&h[2])]);
            det.certified_sign().map(|s| s * wsign)
        }
    }
}

/// orient2d of projected points (explicit, implicit or plain 2D coordinates).
pub fn orient2d_planar(a: &Planar, b: &Planar, c: &Planar, proj: Projection) -> Sign {
    let explicit = |p: &Planar| -> Option<Point2> {
        match p {
            Planar::Coords(c) => Some(*c),
            Planar::Point(GenericPoint::Explicit(c)) => Some(proj.apply(c)),
            _ => None,
        }
    };
    if let (Some(a), Some(b), Some(c)) = (explicit(a), explicit(b), explicit(c)) {
        return kernel::orient2d(&a, &b, &c);
    }
    if let Some(s) = orient2d_hom::<Interval>([a, b, c], proj) {
        return s;
    }
    orient2d_hom::<Expansion>([a, b, c], proj).expect("implicit point without a unique intersection")
}

/// orient2d of the projections of three generic points.
pub fn orient2d_indirect(a: &GenericPoint, b: &GenericPoint, c: &GenericPoint, proj: Projection) -> Sign {
    orient2d_planar(&Planar::Point(a), &Planar::Point(b), &Planar::Point(c), proj)
}

fn cmp_coord_hom<T: Arith + SignOf>(a: &GenericPoint, b: &GenericPoint, axis: usize) -> Option<Sign> {
    match (homog::<T>(a)?, homog::<T>(b)?) {
        (Hom::Exp(p), Hom::Exp(q)) => Some(if p[axis] > q[axis] {
            1
        } else if p[axis] < q[axis] {
            -1
        } else {
            0
        }),
        (Hom::Imp(h, s), Hom::Exp(q)) => {
            let d = h[axis].sub(&h[3].mul(&T::from_f64(q[axis])));
            d.certified_sign().map(|x| x * s)
        }
        (Hom::Exp(p), Hom::Imp(h, s)) => {
            let d = T::from_f64(p[axis]).mul(&h[3]).sub(&h[axis]);
            d.certified_sign().map(|x| x * s)
        }
        (Hom::Imp(ha, sa), Hom::Imp(hb, sb)) => {
            let d = ha[axis].mul(&hb[3]).sub(&hb[axis].mul(&ha[3]));
            d.certified_sign().map(|x| x * sa * sb)
        }
    }
}

/// Sign of `a[axis] - b[axis]` on exact coordinates.
pub fn cmp_coord(a: &GenericPoint, b: &GenericPoint, axis: usize) -> Sign {
    if let (GenericPoint::Explicit(p), GenericPoint::Explicit(q)) = (a, b) {
        return if p[axis] > q[axis] {
            1
        } else if p[axis] < q[axis] {
            -1
        } else {
            0
        };
    }
    if let Some(s) = cmp_coord_hom::<Interval>(a, b, axis) {
        return s;
    }
    cmp_coord_hom::<Expansion>(a, b, axis).expect("implicit point without a unique intersection")
}

/// True iff the exact coordinates of the two points coincide.
pub fn same_point(a: &GenericPoint, b: &GenericPoint) -> bool {
    (0..3).all(|axis| cmp_coord(a, b, axis) == 0)
}

impl GenericPoint {
    pub fn explicit(p: Point3) -> Self {
        GenericPoint::Explicit(p)
    }

    pub fn lpi(p: Point3, q: Point3, r: Point3, s: Point3, t: Point3) -> Self {
        GenericPoint::Lpi(Lpi { p, q, r, s, t })
    }

    pub fn tpi(a: [Point3; 3], b: [Point3; 3], c: [Point3; 3]) -> Self {
        GenericPoint::Tpi(Tpi { planes: [a, b, c] })
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, GenericPoint::Explicit(_))
    }

    /// Checks the existence invariant: the defining line/planes meet in
    /// exactly one point.
    pub fn is_well_defined(&self) -> bool {
        match self {
            GenericPoint::Explicit(p) => p.iter().all(|c| c.is_finite()),
            GenericPoint::Lpi(l) => lpi_homog::<Expansion>(l)[3].sign() != 0,
            GenericPoint::Tpi(t) => tpi_homog::<Expansion>(t)[3].sign() != 0,
        }
    }

    /// Homogeneous coordinates as exact expansions (`W = 1` for explicit points).
    pub fn homogeneous_exact(&self) -> [Expansion; 4] {
        match self {
            GenericPoint::Explicit(p) => [
                Expansion::from_f64(p[0]),
                Expansion::from_f64(p[1]),
                Expansion::from_f64(p[2]),
                Expansion::from_f64(1.0),
            ],
            GenericPoint::Lpi(l) => lpi_homog::<Expansion>(l),
            GenericPoint::Tpi(t) => tpi_homog::<Expansion>(t),
        }
    }

    /// Double coordinates within one ulp of the exact ones.
    pub fn approximate(&self) -> Result<Point3, OverflowError> {
        let h = match self {
            GenericPoint::Explicit(p) => return Ok(*p),
            GenericPoint::Lpi(l) => lpi_homog::<Interval>(l),
            GenericPoint::Tpi(t) => tpi_homog::<Interval>(t),
        };
        let mut out = [0.0; 3];
        let mut exact: Option<[Expansion; 4]> = None;
        for axis in 0..3 {
            if let Some(v) = narrow_quotient(&h[axis], &h[3]) {
                out[axis] = v;
                continue;
            }
            let e = exact.get_or_insert_with(|| self.homogeneous_exact());
            out[axis] = rounded_quotient(&e[axis], &e[3])?;
        }
        Ok(out)
    }
}

/// A double within one ulp of `x / w` when the interval quotient is that tight.
fn narrow_quotient(x: &Interval, w: &Interval) -> Option<f64> {
    let q = x.div(*w)?;
    if !q.lo.is_finite() || !q.hi.is_finite() {
        return None;
    }
    let mid = q.lo.next_up();
    if q.hi <= mid {
        Some(q.lo)
    } else if q.hi <= mid.next_up() {
        Some(mid)
    } else {
        None
    }
}

/// Nearest double to `x / w` computed from exact expansions.
fn rounded_quotient(x: &Expansion, w: &Expansion) -> Result<f64, OverflowError> {
    let ws = w.sign();
    debug_assert!(ws != 0);
    if x.is_zero() {
        return Ok(0.0);
    }
    // sign of (x/w - q) for a candidate double q
    let side = |q: f64| -> Sign { x.sub(&w.scale(q)).sign() * ws };
    let mut q = x.estimate() / w.estimate();
    if !q.is_finite() {
        return Err(OverflowError);
    }
    let s = side(q);
    if s == 0 {
        return Ok(q);
    }
    // walk to the bracketing pair (lo, hi)
    let (lo, hi);
    let mut steps = 0;
    if s > 0 {
        loop {
            let n = q.next_up();
            if !n.is_finite() {
                return Err(OverflowError);
            }
            let sn = side(n);
            if sn == 0 {
                return Ok(n);
            }
            if sn < 0 {
                lo = q;
                hi = n;
                break;
            }
            q = n;
            steps += 1;
            if steps > 64 {
                q = x.estimate() / w.estimate();
                return Ok(q);
            }
        }
    } else {
        loop {
            let n = q.next_down();
            if !n.is_finite() {
                return Err(OverflowError);
            }
            let sn = side(n);
            if sn == 0 {
                return Ok(n);
            }
            if sn > 0 {
                lo = n;
                hi = q;
                break;
            }
            q = n;
            steps += 1;
            if steps > 64 {
                q = x.estimate() / w.estimate();
                return Ok(q);
            }
        }
    }
    // midpoint lo + (hi - lo)/2 as an exact two-term expansion
    let mid = Expansion::from_sum(&[lo, (hi - lo) * 0.5]);
    let sm = x.sub(&w.mul(&mid)).sign() * ws;
    if sm < 0 {
        Ok(lo)
    } else if sm > 0 {
        Ok(hi)
    } else if lo.to_bits() & 1 == 0 {
        Ok(lo)
    } else {
        Ok(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: Point3) -> GenericPoint {
        GenericPoint::Explicit(p)
    }

    #[test]
    fn lpi_on_its_plane() {
        let l = GenericPoint::lpi([0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 0.0, 1.0]);
        let s = orient3d_indirect(&l, &e([1.0, 0.0, 0.0]), &e([1.0, 1.0, 0.0]), &e([1.0, 0.0, 1.0]));
        assert_eq!(s, 0);
        assert!(same_point(&l, &e([1.0, 0.0, 0.0])));
        assert_eq!(l.approximate().unwrap(), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn tpi_at_origin() {
        let t = GenericPoint::tpi(
            [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
            [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        );
        let a = e([1.0, 1.0, 1.0]);
        let b = e([2.0, 1.0, 1.0]);
        let c = e([1.0, 2.0, 1.0]);
        let expect = kernel::orient3d(&[0.0; 3], &[1.0, 1.0, 1.0], &[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0]);
        assert_eq!(orient3d_indirect(&t, &a, &b, &c), expect);
        assert_eq!(orient3d_indirect(&a, &t, &b, &c), -expect);
    }

    #[test]
    fn third_rounds_to_nearest() {
        // x-axis against the plane 3x + z = 1
        let l = GenericPoint::lpi([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, -2.0], [0.0, 1.0, 1.0]);
        let x = l.approximate().unwrap()[0];
        assert_eq!(x, 1.0 / 3.0);
        let exact = l.homogeneous_exact();
        assert_eq!(rounded_quotient(&exact[0], &exact[3]).unwrap(), 1.0 / 3.0);
    }
}
