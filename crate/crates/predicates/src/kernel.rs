//! Base predicates on explicit points.
//!
//! Each predicate is evaluated in three stages: a semi-static error bound on
//! the plain double evaluation, then interval arithmetic, then exact
//! expansions. The stages are also exposed individually so their agreement
//! can be tested.

use crate::arith::{det3, diff3, Arith};
use crate::expansion::Expansion;
use crate::interval::Interval;

pub type Point2 = [f64; 2];
pub type Point3 = [f64; 3];

/// Sign of an exact expression: -1, 0 or +1.
pub type Sign = i8;

const EPS: f64 = f64::EPSILON * 0.5; // 2^-53
const CCW_ERRBOUND_A: f64 = (3.0 + 16.0 * EPS) * EPS;
const O3D_ERRBOUND_A: f64 = (7.0 + 56.0 * EPS) * EPS;
const ISP_ERRBOUND_A: f64 = (16.0 + 224.0 * EPS) * EPS;

#[inline]
fn sign_of(x: f64) -> Sign {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------- orient2d

/// Positive when `a, b, c` turn counterclockwise.
pub fn orient2d(a: &Point2, b: &Point2, c: &Point2) -> Sign {
    if let Some(s) = orient2d_filter(a, b, c) {
        return s;
    }
    if let Some(s) = orient2d_interval(a, b, c) {
        return s;
    }
    orient2d_exact(a, b, c)
}

pub fn orient2d_filter(a: &Point2, b: &Point2, c: &Point2) -> Option<Sign> {
    let detleft = (a[0] - c[0]) * (b[1] - c[1]);
    let detright = (a[1] - c[1]) * (b[0] - c[0]);
    let det = detleft - detright;
    let detsum = detleft.abs() + detright.abs();
    let bound = CCW_ERRBOUND_A * detsum;
    if (det > bound || -det > bound) && detsum.is_finite() {
        Some(sign_of(det))
    } else {
        None
    }
}

fn orient2d_generic<T: Arith>(a: &Point2, b: &Point2, c: &Point2) -> T {
    let acx = T::diff(a[0], c[0]);
    let acy = T::diff(a[1], c[1]);
    let bcx = T::diff(b[0], c[0]);
    let bcy = T::diff(b[1], c[1]);
    acx.mul(&bcy).sub(&acy.mul(&bcx))
}

pub fn orient2d_interval(a: &Point2, b: &Point2, c: &Point2) -> Option<Sign> {
    orient2d_generic::<Interval>(a, b, c).sign()
}

pub fn orient2d_exact(a: &Point2, b: &Point2, c: &Point2) -> Sign {
    orient2d_generic::<Expansion>(a, b, c).sign()
}

// ---------------------------------------------------------------- orient3d

/// Sign of `det[a-d; b-d; c-d]`, i.e. of the 4x4 determinant with rows
/// `(p, 1)`. Positive when `d` lies below the plane through `a, b, c`
/// oriented counterclockwise seen from above.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    if let Some(s) = orient3d_filter(a, b, c, d) {
        return s;
    }
    if let Some(s) = orient3d_interval(a, b, c, d) {
        return s;
    }
    orient3d_exact(a, b, c, d)
}

pub fn orient3d_filter(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Option<Sign> {
    let adx = a[0] - d[0];
    let bdx = b[0] - d[0];
    let cdx = c[0] - d[0];
    let ady = a[1] - d[1];
    let bdy = b[1] - d[1];
    let cdy = c[1] - d[1];
    let adz = a[2] - d[2];
    let bdz = b[2] - d[2];
    let cdz = c[2] - d[2];

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;

    let det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * adz.abs()
        + (cdxady.abs() + adxcdy.abs()) * bdz.abs()
        + (adxbdy.abs() + bdxady.abs()) * cdz.abs();
    let bound = O3D_ERRBOUND_A * permanent;
    if (det > bound || -det > bound) && permanent.is_finite() {
        Some(sign_of(det))
    } else {
        None
    }
}

fn orient3d_generic<T: Arith>(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> T {
    det3(&[diff3::<T>(a, d), diff3::<T>(b, d), diff3::<T>(c, d)])
}

pub fn orient3d_interval(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Option<Sign> {
    orient3d_generic::<Interval>(a, b, c, d).sign()
}

pub fn orient3d_exact(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    orient3d_generic::<Expansion>(a, b, c, d).sign()
}

// ---------------------------------------------------------------- insphere

/// Positive when `e` lies strictly inside the sphere through `a, b, c, d`,
/// provided `orient3d(a, b, c, d) > 0`; the sign flips for negative tets.
pub fn insphere(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Sign {
    if let Some(s) = insphere_filter(a, b, c, d, e) {
        return s;
    }
    if let Some(s) = insphere_interval(a, b, c, d, e) {
        return s;
    }
    insphere_exact(a, b, c, d, e)
}

pub fn insphere_filter(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Option<Sign> {
    let aex = a[0] - e[0];
    let bex = b[0] - e[0];
    let cex = c[0] - e[0];
    let dex = d[0] - e[0];
    let aey = a[1] - e[1];
    let bey = b[1] - e[1];
    let cey = c[1] - e[1];
    let dey = d[1] - e[1];
    let aez = a[2] - e[2];
    let bez = b[2] - e[2];
    let cez = c[2] - e[2];
    let dez = d[2] - e[2];

    let aexbey = aex * bey;
    let bexaey = bex * aey;
    let ab = aexbey - bexaey;
    let bexcey = bex * cey;
    let cexbey = cex * bey;
    let bc = bexcey - cexbey;
    let cexdey = cex * dey;
    let dexcey = dex * cey;
    let cd = cexdey - dexcey;
    let dexaey = dex * aey;
    let aexdey = aex * dey;
    let da = dexaey - aexdey;
    let aexcey = aex * cey;
    let cexaey = cex * aey;
    let ac = aexcey - cexaey;
    let bexdey = bex * dey;
    let dexbey = dex * bey;
    let bd = bexdey - dexbey;

    let abc = aez * bc - bez * ac + cez * ab;
    let bcd = bez * cd - cez * bd + dez * bc;
    let cda = cez * da + dez * ac + aez * cd;
    let dab = dez * ab + aez * bd + bez * da;

    let alift = aex * aex + aey * aey + aez * aez;
    let blift = bex * bex + bey * bey + bez * bez;
    let clift = cex * cex + cey * cey + cez * cez;
    let dlift = dex * dex + dey * dey + dez * dez;

    let det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);

    let (aez, bez, cez, dez) = (aez.abs(), bez.abs(), cez.abs(), dez.abs());
    let (aexbey, bexaey, bexcey, cexbey) = (aexbey.abs(), bexaey.abs(), bexcey.abs(), cexbey.abs());
    let (cexdey, dexcey, dexaey, aexdey) = (cexdey.abs(), dexcey.abs(), dexaey.abs(), aexdey.abs());
    let (aexcey, cexaey, bexdey, dexbey) = (aexcey.abs(), cexaey.abs(), bexdey.abs(), dexbey.abs());
    let permanent = ((cexdey + dexcey) * bez + (dexbey + bexdey) * cez + (bexcey + cexbey) * dez)
        * alift
        + ((dexaey + aexdey) * cez + (aexcey + cexaey) * dez + (cexdey + dexcey) * aez) * blift
        + ((aexbey + bexaey) * dez + (bexdey + dexbey) * aez + (dexaey + aexdey) * bez) * clift
        + ((bexcey + cexbey) * aez + (cexaey + aexcey) * bez + (aexbey + bexaey) * cez) * dlift;
    let bound = ISP_ERRBOUND_A * permanent;
    if (det > bound || -det > bound) && permanent.is_finite() {
        Some(sign_of(det))
    } else {
        None
    }
}

fn insphere_generic<T: Arith>(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> T {
    let ae = diff3::<T>(a, e);
    let be = diff3::<T>(b, e);
    let ce = diff3::<T>(c, e);
    let de = diff3::<T>(d, e);
    let m = |u: &[T; 3], v: &[T; 3]| u[0].mul(&v[1]).sub(&v[0].mul(&u[1]));
    let ab = m(&ae, &be);
    let bc = m(&be, &ce);
    let cd = m(&ce, &de);
    let da = m(&de, &ae);
    let ac = m(&ae, &ce);
    let bd = m(&be, &de);
    let abc = ae[2].mul(&bc).sub(&be[2].mul(&ac)).add(&ce[2].mul(&ab));
    let bcd = be[2].mul(&cd).sub(&ce[2].mul(&bd)).add(&de[2].mul(&bc));
    let cda = ce[2].mul(&da).add(&de[2].mul(&ac)).add(&ae[2].mul(&cd));
    let dab = de[2].mul(&ab).add(&ae[2].mul(&bd)).add(&be[2].mul(&da));
    let lift = |u: &[T; 3]| u[0].mul(&u[0]).add(&u[1].mul(&u[1])).add(&u[2].mul(&u[2]));
    let (al, bl, cl, dl) = (lift(&ae), lift(&be), lift(&ce), lift(&de));
    dl.mul(&abc)
        .sub(&cl.mul(&dab))
        .add(&bl.mul(&cda).sub(&al.mul(&bcd)))
}

pub fn insphere_interval(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Option<Sign> {
    insphere_generic::<Interval>(a, b, c, d, e).sign()
}

pub fn insphere_exact(a: &Point3, b: &Point3, c: &Point3, d: &Point3, e: &Point3) -> Sign {
    insphere_generic::<Expansion>(a, b, c, d, e).sign()
}

/// Insphere with symbolic perturbation: each point's lifted coordinate is
/// raised by an infinitesimal that grows with its rank, so the result is
/// never zero. Points with higher rank are perturbed more.
///
/// For `orient3d(a, b, c, d) > 0` a positive result means `e` conflicts
/// with the tet.
pub fn insphere_perturbed(pts: [&Point3; 5], ranks: [u32; 5]) -> Sign {
    let [a, b, c, d, e] = pts;
    let s = insphere(a, b, c, d, e);
    if s != 0 {
        return s;
    }
    let mut order = [0usize, 1, 2, 3, 4];
    order.sort_by(|&i, &j| ranks[j].cmp(&ranks[i]));
    for &i in &order {
        // coefficient of the lift of point i in the determinant
        let o = match i {
            0 => -orient3d(b, c, d, e),
            1 => orient3d(c, d, a, e),
            2 => -orient3d(d, a, b, e),
            3 => orient3d(a, b, c, e),
            _ => -orient3d(a, b, c, d),
        };
        if o != 0 {
            return o;
        }
    }
    0
}

/// Exact coordinate equality in 3D; `-0.0 == 0.0`.
#[inline]
pub fn coincident_points_3d(a: &Point3, b: &Point3) -> bool {
    a[0] == b[0] && a[1] == b[1] && a[2] == b[2]
}

/// Exact coordinate equality in 2D; `-0.0 == 0.0`.
#[inline]
pub fn coincident_points_2d(a: &Point2, b: &Point2) -> bool {
    a[0] == b[0] && a[1] == b[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_signs() {
        assert_eq!(orient3d(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]), -1);
        assert_eq!(orient3d(&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]), 0);
        assert_eq!(orient2d(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]), 1);
        assert_eq!(orient2d(&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]), 0);
    }

    #[test]
    fn insphere_center_is_inside() {
        let a = [1.0, 0.0, 0.0];
        let b = [0.0, 0.0, 0.0];
        let c = [0.0, 1.0, 0.0];
        let d = [0.0, 0.0, 1.0];
        assert_eq!(orient3d(&a, &b, &c, &d), 1);
        assert_eq!(insphere(&a, &b, &c, &d, &[0.5, 0.5, 0.5]), 1);
        assert_eq!(insphere(&a, &b, &c, &d, &[2.0, 2.0, 2.0]), -1);
        // (1,1,1) lies on the sphere through the four points
        assert_eq!(insphere(&a, &b, &c, &d, &[1.0, 1.0, 1.0]), 0);
    }

    #[test]
    fn perturbed_insphere_never_zero() {
        let a = [1.0, 0.0, 0.0];
        let b = [0.0, 0.0, 0.0];
        let c = [0.0, 1.0, 0.0];
        let d = [0.0, 0.0, 1.0];
        let e = [1.0, 1.0, 1.0];
        let s_last = insphere_perturbed([&a, &b, &c, &d, &e], [0, 1, 2, 3, 4]);
        // the query point carries the largest perturbation: it ends up outside
        assert_eq!(s_last, -1);
        let s_first = insphere_perturbed([&a, &b, &c, &d, &e], [4, 1, 2, 3, 0]);
        assert_ne!(s_first, 0);
    }

    #[test]
    fn signed_zero_coincides() {
        assert!(coincident_points_3d(&[-0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]));
        assert!(!coincident_points_3d(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0 + 8.0 * f64::EPSILON]));
    }
}
