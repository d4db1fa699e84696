//! Enumeration of ideal elements whose embedding lies in a bounded region.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::field::FieldElement;
use super::ideal::FractionalIdeal;
use crate::error::{Error, Result};

/// Bounds for one archimedean coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaceRegion {
    /// lo ≤ x ≤ hi at a real place.
    Interval { lo: f64, hi: f64 },
    /// r_min ≤ |z| ≤ r_max at a complex place.
    Annulus { r_min: f64, r_max: f64 },
}

impl PlaceRegion {
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            PlaceRegion::Interval { lo, hi } => lo <= z.re && z.re <= hi,
            PlaceRegion::Annulus { r_min, r_max } => {
                let r = z.norm();
                r_min <= r && r <= r_max
            }
        }
    }

    fn is_bounded(&self) -> bool {
        match *self {
            PlaceRegion::Interval { lo, hi } => lo.is_finite() && hi.is_finite(),
            PlaceRegion::Annulus { r_min, r_max } => r_min.is_finite() && r_max.is_finite(),
        }
    }
}

/// An element with its archimedean embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub element: FieldElement,
    pub embedding: Vec<Complex64>,
}

/// Maximum number of coefficient pairs scanned.
pub const DEFAULT_SCAN_CAP: usize = 50_000_000;

fn combo(u: &FieldElement, v: &FieldElement, k: i64) -> FieldElement {
    let kq = BigRational::from_integer(BigInt::from(k));
    FieldElement::new(&u.a - &v.a * &kq, &u.b - &v.b * &kq)
}

/// Gauss-reduces the basis of a totally real ideal after rescaling each
/// coordinate to the box width, so that a long thin box (a cell far out
/// along a unit direction) is scanned in time proportional to its points.
fn reduce_for_box(field: super::FieldDescriptor, basis: &[FieldElement], region: &[PlaceRegion]) -> Vec<FieldElement> {
    let scale: Vec<f64> = region
        .iter()
        .map(|r| match *r {
            PlaceRegion::Interval { lo, hi } => (hi - lo).abs().max(1e-300).recip(),
            PlaceRegion::Annulus { r_max, .. } => r_max.max(1e-300).recip(),
        })
        .collect();
    let vec = |x: &FieldElement| -> [f64; 2] {
        let e = field.embed(x);
        [e[0].re * scale[0], e[1].re * scale[1]]
    };
    let dot = |a: [f64; 2], b: [f64; 2]| a[0] * b[0] + a[1] * b[1];
    let (mut u, mut v) = (basis[0].clone(), basis[1].clone());
    for _ in 0..500 {
        let (mut eu, mut ev) = (vec(&u), vec(&v));
        if dot(eu, eu) > dot(ev, ev) {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut eu, &mut ev);
        }
        let mu = (dot(eu, ev) / dot(eu, eu)).round();
        if mu == 0.0 || !mu.is_finite() {
            break;
        }
        v = combo(&v, &u, mu.clamp(-4e18, 4e18) as i64);
    }
    vec![u, v]
}

/// Nonzero elements of the ideal whose embedding lies in the region, in a
/// deterministic order (lexicographic in the HNF basis except for totally
/// real fields, where a box-adapted basis is used).
pub fn lattice_points(ideal: &FractionalIdeal, region: &[PlaceRegion]) -> Result<Vec<FieldElement>> {
    Ok(lattice_points_embedded(ideal, region, DEFAULT_SCAN_CAP)?
        .into_iter()
        .map(|p| p.element)
        .collect())
}

fn int_range(lo: f64, hi: f64) -> (i64, i64) {
    let slack = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    ((lo - slack).ceil() as i64, (hi + slack).floor() as i64)
}

pub fn lattice_points_embedded(
    ideal: &FractionalIdeal,
    region: &[PlaceRegion],
    cap: usize,
) -> Result<Vec<LatticePoint>> {
    let field = ideal.field;
    let places = field.places();
    if region.len() != places.len() || region.iter().any(|r| !r.is_bounded()) {
        return Err(Error::RegionUnbounded);
    }
    let basis = ideal.basis();
    let mut out = Vec::new();
    if field.is_rational() {
        let g = basis[0].a.to_f64().unwrap();
        let (lo, hi) = match region[0] {
            PlaceRegion::Interval { lo, hi } => (lo, hi),
            PlaceRegion::Annulus { .. } => return Err(Error::RegionUnbounded),
        };
        let (m0, m1) = int_range(lo / g, hi / g);
        if (m1 - m0) as f64 > cap as f64 {
            return Err(Error::EnumerationCapExceeded(cap));
        }
        for m in m0..=m1 {
            if m == 0 {
                continue;
            }
            let x = FieldElement::new(&basis[0].a * BigRational::from_integer(BigInt::from(m)), basis[0].b.clone());
            let emb = field.embed(&x);
            if region[0].contains(emb[0]) {
                out.push(LatticePoint { element: x, embedding: emb });
            }
        }
        return Ok(out);
    }
    let basis = if field.r1 == 2 { reduce_for_box(field, &basis, region) } else { basis };
    // real coordinates of the two basis vectors and a box per coordinate
    let e1 = field.embed(&basis[0]);
    let e2 = field.embed(&basis[1]);
    let (cols, boxes): ([[f64; 2]; 2], [(f64, f64); 2]) = if field.r1 == 2 {
        let b = |r: &PlaceRegion| match *r {
            PlaceRegion::Interval { lo, hi } => Ok((lo, hi)),
            PlaceRegion::Annulus { .. } => Err(Error::RegionUnbounded),
        };
        ([[e1[0].re, e1[1].re], [e2[0].re, e2[1].re]], [b(&region[0])?, b(&region[1])?])
    } else {
        let r = match region[0] {
            PlaceRegion::Annulus { r_max, .. } => r_max,
            PlaceRegion::Interval { .. } => return Err(Error::RegionUnbounded),
        };
        ([[e1[0].re, e1[0].im], [e2[0].re, e2[0].im]], [(-r, r), (-r, r)])
    };
    // M = [cols[0] cols[1]]; invert to bound m
    let det = cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1];
    let inv_row0 = [cols[1][1] / det, -cols[1][0] / det];
    let mut mlo = 0.0;
    let mut mhi = 0.0;
    for j in 0..2 {
        let (a, b) = (inv_row0[j] * boxes[j].0, inv_row0[j] * boxes[j].1);
        mlo += a.min(b);
        mhi += a.max(b);
    }
    let (m0, m1) = int_range(mlo, mhi);
    if (m1 - m0) as f64 > cap as f64 {
        return Err(Error::EnumerationCapExceeded(cap));
    }
    let mut scanned = 0usize;
    for m in m0..=m1 {
        // n-range from each coordinate constraint lo ≤ m·c0 + n·c1 ≤ hi
        let mut nlo = f64::NEG_INFINITY;
        let mut nhi = f64::INFINITY;
        for j in 0..2 {
            let base = m as f64 * cols[0][j];
            let slope = cols[1][j];
            let (lo, hi) = boxes[j];
            if slope.abs() < 1e-300 {
                if base < lo - 1e-9 || base > hi + 1e-9 {
                    nlo = 1.0;
                    nhi = 0.0;
                }
                continue;
            }
            let (a, b) = ((lo - base) / slope, (hi - base) / slope);
            nlo = nlo.max(a.min(b));
            nhi = nhi.min(a.max(b));
        }
        if nlo > nhi {
            continue;
        }
        let (n0, n1) = int_range(nlo, nhi);
        scanned += (n1 - n0 + 1).max(0) as usize;
        if scanned > cap {
            return Err(Error::EnumerationCapExceeded(cap));
        }
        let mq = BigRational::from_integer(BigInt::from(m));
        for n in n0..=n1 {
            if m == 0 && n == 0 {
                continue;
            }
            let nq = BigRational::from_integer(BigInt::from(n));
            let x = FieldElement::new(
                &basis[0].a * &mq + &basis[1].a * &nq,
                &basis[0].b * &mq + &basis[1].b * &nq,
            );
            let emb = field.embed(&x);
            if region.iter().zip(&emb).all(|(r, z)| r.contains(*z)) {
                out.push(LatticePoint { element: x, embedding: emb });
            }
        }
    }
    Ok(out)
}
