//! The genus-0 four-curve configuration, verified exactly.
//!
//! Four parametrized curves in a product of projective lines are built from
//! marked points `a1, a2, b1, b2` with `a1 a2 = -b1 b2`. All arithmetic is
//! exact over the Gaussian rationals; the normalization constants `c1, c2`
//! of the degree-two auxiliary maps are formal symbols carrying only the
//! relation `c_j^4 = u_j` forced by the normalization condition, never a
//! chosen root. The total cubical boundary of the four-curve sum must cancel
//! identically; a single curve does not cancel.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::rational_string;

#[derive(Debug, Error)]
pub enum FourConfigError {
    #[error("invalid marked points: {0}")]
    InvalidPoints(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("degenerate face: {0}")]
    DegenerateFace(String),
    #[error("cannot parse Gaussian rational from {0:?}")]
    Parse(String),
}

/// Exact element of the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn gq(re: i64, im: i64) -> GaussianRational {
    GaussianRational {
        re: BigRational::from_integer(re.into()),
        im: BigRational::from_integer(im.into()),
    }
}

impl GaussianRational {
    pub fn zero() -> Self {
        gq(0, 0)
    }

    pub fn one() -> Self {
        gq(1, 0)
    }

    pub fn i() -> Self {
        gq(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn inverse(&self) -> GaussianRational {
        let d = &self.re * &self.re + &self.im * &self.im;
        GaussianRational {
            re: &self.re / &d,
            im: -&self.im / &d,
        }
    }

    pub fn pow(&self, k: i64) -> GaussianRational {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GaussianRational::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inverse()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_string(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", rational_string(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{im}", rational_string(&self.re))
        } else {
            write!(f, "{}+{im}", rational_string(&self.re))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FourConfigError> {
    let bad = || FourConfigError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = FourConfigError;

    /// Accepts "2", "-3/5", "i", "-i", "2i", "1+2i", "1-1/2i".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().replace(' ', "");
        let bad = || FourConfigError::Parse(s.clone());
        if let Some(im_part) = s.strip_suffix('i') {
            // split at the last +/- that is not the leading sign
            let split = im_part
                .char_indices()
                .rfind(|(ix, ch)| {
                    *ix > 0 && (*ch == '+' || *ch == '-') && !im_part[..*ix].ends_with('/')
                })
                .map(|(ix, _)| ix);
            match split {
                Some(ix) => {
                    let re = parse_rational(&im_part[..ix])?;
                    let im_str = &im_part[ix..];
                    let im = match im_str {
                        "+" => BigRational::one(),
                        "-" => -BigRational::one(),
                        _ => parse_rational(im_str)?,
                    };
                    Ok(GaussianRational { re, im })
                }
                None => {
                    let im = match im_part {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        _ => parse_rational(im_part)?,
                    };
                    Ok(GaussianRational {
                        re: BigRational::zero(),
                        im,
                    })
                }
            }
        } else if s.is_empty() {
            Err(bad())
        } else {
            Ok(GaussianRational {
                re: parse_rational(&s)?,
                im: BigRational::zero(),
            })
        }
    }
}

/// Relations of the formal constants: `c_j^4 = u_j`.
#[derive(Clone, Debug)]
pub struct CRelations {
    pub u1: GaussianRational,
    pub u2: GaussianRational,
}

/// Value in the group generated by the Gaussian rationals and the formal
/// constants, with exponents normalized to 0..3 through the relations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FormalValue {
    pub coeff: GaussianRational,
    pub e1: u8,
    pub e2: u8,
}

impl FormalValue {
    pub fn new(coeff: GaussianRational, e1: i64, e2: i64, rel: &CRelations) -> FormalValue {
        let (q1, r1) = (e1.div_euclid(4), e1.rem_euclid(4));
        let (q2, r2) = (e2.div_euclid(4), e2.rem_euclid(4));
        let mut c = coeff;
        if q1 != 0 {
            c = &c * &rel.u1.pow(q1);
        }
        if q2 != 0 {
            c = &c * &rel.u2.pow(q2);
        }
        FormalValue {
            coeff: c,
            e1: r1 as u8,
            e2: r2 as u8,
        }
    }

    pub fn from_field(coeff: GaussianRational) -> FormalValue {
        FormalValue {
            coeff,
            e1: 0,
            e2: 0,
        }
    }

    pub fn mul(&self, o: &FormalValue, rel: &CRelations) -> FormalValue {
        FormalValue::new(
            &self.coeff * &o.coeff,
            self.e1 as i64 + o.e1 as i64,
            self.e2 as i64 + o.e2 as i64,
            rel,
        )
    }

    pub fn pow(&self, k: i64, rel: &CRelations) -> FormalValue {
        FormalValue::new(
            self.coeff.pow(k),
            self.e1 as i64 * k,
            self.e2 as i64 * k,
            rel,
        )
    }

    /// Exactly the multiplicative unit (formal exponents must vanish).
    pub fn is_one(&self) -> bool {
        self.e1 == 0 && self.e2 == 0 && self.coeff.is_one()
    }
}

impl fmt::Display for FormalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.e1 > 0 {
            write!(f, "*c1^{}", self.e1)?;
        }
        if self.e2 > 0 {
            write!(f, "*c2^{}", self.e2)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rational map in factored form: constant times a product of linear forms.
/// The divisor has degree zero, so the value at infinity is the constant.
#[derive(Clone, Debug)]
pub struct RationalMap {
    pub constant: FormalValue,
    /// (root, multiplicity); positive for zeros, negative for poles.
    pub factors: Vec<(GaussianRational, i64)>,
}

impl RationalMap {
    fn new(constant: FormalValue, factors: Vec<(GaussianRational, i64)>) -> RationalMap {
        debug_assert_eq!(factors.iter().map(|(_, m)| m).sum::<i64>(), 0);
        RationalMap { constant, factors }
    }

    pub fn value_at(
        &self,
        x: &GaussianRational,
        rel: &CRelations,
    ) -> Result<FormalValue, FourConfigError> {
        let mut v = self.constant.clone();
        for (root, m) in &self.factors {
            let d = x - root;
            if d.is_zero() {
                return Err(FourConfigError::DegenerateFace(format!(
                    "evaluating at the zero/pole {x}"
                )));
            }
            v = v.mul(&FormalValue::from_field(d.pow(*m)), rel);
        }
        Ok(v)
    }

    pub fn value_at_infinity(&self) -> FormalValue {
        self.constant.clone()
    }

    /// Zeros (positive) and poles (negative) with multiplicities.
    pub fn zeros_poles(&self) -> Vec<(GaussianRational, i64)> {
        let mut acc: BTreeMap<GaussianRational, i64> = BTreeMap::new();
        for (root, m) in &self.factors {
            *acc.entry(root.clone()).or_insert(0) += m;
        }
        acc.into_iter().filter(|(_, m)| *m != 0).collect()
    }

    pub fn pow(&self, k: i64, rel: &CRelations) -> RationalMap {
        RationalMap::new(
            self.constant.pow(k, rel),
            self.factors.iter().map(|(r, m)| (r.clone(), m * k)).collect(),
        )
    }
}

/// The built configuration: the three maps and the formal relations.
#[derive(Clone, Debug)]
pub struct FourConfig {
    pub a1: GaussianRational,
    pub a2: GaussianRational,
    pub b1: GaussianRational,
    pub b2: GaussianRational,
    pub f: RationalMap,
    pub h1: RationalMap,
    pub h2: RationalMap,
    pub relations: CRelations,
}

/// Build f, h1, h2 from marked points with `a1 a2 = -b1 b2`.
///
/// `f = (x-a1)^2 (x-a2)^2 (x-b1)^{-2} (x-b2)^{-2}`,
/// `h1 = c1 (x-1)^2 (x+1)^{-2}`, `h2 = c2 (x-i)^2 (x+i)^{-2}`, with the
/// normalization `(h_j(a1) h_j(a2))^2 = 1` defining `c_j^4`.
pub fn build_config(
    a1: GaussianRational,
    a2: GaussianRational,
    b1: GaussianRational,
    b2: GaussianRational,
) -> Result<FourConfig, FourConfigError> {
    let pts = [&a1, &a2, &b1, &b2];
    for (ix, p) in pts.iter().enumerate() {
        if p.is_zero() {
            return Err(FourConfigError::InvalidPoints(format!(
                "point #{} is zero",
                ix + 1
            )));
        }
        for bad in [gq(1, 0), gq(-1, 0), gq(0, 1), gq(0, -1)] {
            if **p == bad {
                return Err(FourConfigError::InvalidPoints(format!(
                    "point #{} = {bad} collides with an auxiliary branch point",
                    ix + 1
                )));
            }
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(FourConfigError::InvalidPoints(format!(
                    "points #{} and #{} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let lhs = &a1 * &a2;
    let rhs = -&(&b1 * &b2);
    if lhs != rhs {
        return Err(FourConfigError::Constraint(format!(
            "a1*a2 = {lhs} but -(b1*b2) = {rhs}"
        )));
    }
    // (**): (h_j(a1) h_j(a2))^2 = 1 determines c_j^4 exactly
    let fourth_power = |plus: &GaussianRational, minus: &GaussianRational| {
        let mut w = GaussianRational::one();
        for a in [&a1, &a2] {
            w = &w * &(a - plus).pow(2);
            w = &w * &(a - minus).pow(-2);
        }
        (&w * &w).inverse()
    };
    let relations = CRelations {
        u1: fourth_power(&gq(1, 0), &gq(-1, 0)),
        u2: fourth_power(&gq(0, 1), &gq(0, -1)),
    };
    let f = RationalMap::new(
        FormalValue::from_field(GaussianRational::one()),
        vec![
            (a1.clone(), 2),
            (a2.clone(), 2),
            (b1.clone(), -2),
            (b2.clone(), -2),
        ],
    );
    let h1 = RationalMap::new(
        FormalValue {
            coeff: GaussianRational::one(),
            e1: 1,
            e2: 0,
        },
        vec![(gq(1, 0), 2), (gq(-1, 0), -2)],
    );
    let h2 = RationalMap::new(
        FormalValue {
            coeff: GaussianRational::one(),
            e1: 0,
            e2: 1,
        },
        vec![(gq(0, 1), 2), (gq(0, -1), -2)],
    );
    Ok(FourConfig {
        a1,
        a2,
        b1,
        b2,
        f,
        h1,
        h2,
        relations,
    })
}

/// Exact condition report.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionsReport {
    /// f(1) = f(-1) and f(i) = f(-i).
    pub plus_at_one: bool,
    pub plus_at_i: bool,
    /// f(0) = f(infinity) = 1, forced by the constraint.
    pub f_at_zero: String,
    pub f_at_infinity: String,
    /// The reciprocity identity `(h_j(a1)h_j(a2))^2 = (h_j(b1)h_j(b2))^2`,
    /// an identity in the field (the formal constants cancel).
    pub reciprocity_h1: bool,
    pub reciprocity_h2: bool,
    /// The defining fourth powers of the formal constants.
    pub c1_fourth: String,
    pub c2_fourth: String,
}

impl ConditionsReport {
    pub fn plus_holds(&self) -> bool {
        self.plus_at_one && self.plus_at_i
    }
}

pub fn check_conditions(config: &FourConfig) -> Result<ConditionsReport, FourConfigError> {
    let rel = &config.relations;
    let f1 = config.f.value_at(&gq(1, 0), rel)?;
    let fm1 = config.f.value_at(&gq(-1, 0), rel)?;
    let fi = config.f.value_at(&gq(0, 1), rel)?;
    let fmi = config.f.value_at(&gq(0, -1), rel)?;
    let f0 = config.f.value_at(&GaussianRational::zero(), rel)?;
    let finf = config.f.value_at_infinity();
    let recip = |h: &RationalMap| -> Result<bool, FourConfigError> {
        let at = |p: &GaussianRational| h.value_at(p, rel);
        let lhs = at(&config.a1)?.mul(&at(&config.a2)?, rel);
        let lhs = lhs.mul(&lhs, rel);
        let rhs = at(&config.b1)?.mul(&at(&config.b2)?, rel);
        let rhs = rhs.mul(&rhs, rel);
        // both sides carry c^4, which the relation turns into field values
        Ok(lhs == rhs)
    };
    Ok(ConditionsReport {
        plus_at_one: f1 == fm1,
        plus_at_i: fi == fmi,
        f_at_zero: f0.to_string(),
        f_at_infinity: finf.to_string(),
        reciprocity_h1: recip(&config.h1)?,
        reciprocity_h2: recip(&config.h2)?,
        c1_fourth: rel.u1.to_string(),
        c2_fourth: rel.u2.to_string(),
    })
}

/// One of the four parametrized curves: its ambient map plus the three
/// auxiliary coordinate maps `(f^{s}, h1^{2s}, h2^{2s})` with `s = -1` for
/// odd curve indices and `+1` for even ones.
#[derive(Clone, Debug)]
pub struct CubicalCurve {
    pub index: usize,
    pub sign_exponent: i64,
    pub coords: [RationalMap; 3],
}

impl FourConfig {
    /// The curve `K_i`, 1-based `i` in 1..=4.
    pub fn curve(&self, index: usize) -> Result<CubicalCurve, FourConfigError> {
        if !(1..=4).contains(&index) {
            return Err(FourConfigError::InvalidPoints(format!(
                "curve index {index} out of 1..=4"
            )));
        }
        let rel = &self.relations;
        let s: i64 = if index % 2 == 1 { -1 } else { 1 };
        Ok(CubicalCurve {
            index,
            sign_exponent: s,
            coords: [self.f.pow(s, rel), self.h1.pow(2 * s, rel), self.h2.pow(2 * s, rel)],
        })
    }

    /// The ambient coordinate of curve `i` at x: translation is
    /// multiplication and inversion is the opposite map.
    pub fn ambient_at(
        &self,
        index: usize,
        x: &GaussianRational,
    ) -> Result<GaussianRational, FourConfigError> {
        let v = match index {
            1 => x / &self.a1,
            2 => &self.a2 / x,
            3 => -&(x / &self.a1),
            4 => -&(&self.a2 / x),
            _ => {
                return Err(FourConfigError::InvalidPoints(format!(
                    "curve index {index} out of 1..=4"
                )))
            }
        };
        if v.is_zero() {
            return Err(FourConfigError::DegenerateFace(format!(
                "ambient coordinate of curve {index} vanishes at {x}"
            )));
        }
        Ok(v)
    }
}

/// Which end of a cubical face a boundary point lies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FaceEnd {
    Zero,
    Infinity,
}

/// One boundary incidence: curve, face coordinate, end, location and the
/// evaluated remaining coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryTerm {
    pub curve: usize,
    pub coordinate: usize,
    pub end: FaceEnd,
    pub at: String,
    pub point: Vec<String>,
    pub multiplicity: i64,
}

/// Signed aggregation key: the face coordinate and the full point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FacePoint {
    pub coordinate: usize,
    pub alpha: GaussianRational,
    pub others: [FormalValue; 2],
}

#[derive(Debug)]
pub struct BoundaryReport {
    pub terms: Vec<BoundaryTerm>,
    /// Nonzero aggregated multiplicities (zeros count +, poles -).
    pub residue: Vec<(FacePoint, i64)>,
}

impl BoundaryReport {
    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }
}

/// Exact cubical boundary of the selected curves (1-based indices 1..=4).
///
/// For each curve and each of its three auxiliary coordinate maps, every
/// zero or pole contributes a face point with the remaining coordinates
/// evaluated exactly modulo the formal relations. Zeros and poles of the
/// same coordinate enter with opposite signs, so a vanishing aggregate is
/// independent of the face sign convention.
pub fn cubical_boundary(
    config: &FourConfig,
    curves: &[usize],
) -> Result<BoundaryReport, FourConfigError> {
    let rel = &config.relations;
    let mut terms = Vec::new();
    let mut agg: BTreeMap<FacePoint, i64> = BTreeMap::new();
    for &curve in curves {
        let k = config.curve(curve)?;
        for (slot, map) in k.coords.iter().enumerate() {
            let coordinate = slot + 2;
            for (x0, mult) in map.zeros_poles() {
                let alpha = config.ambient_at(curve, &x0)?;
                let mut others: Vec<FormalValue> = Vec::with_capacity(2);
                for (other_slot, other_map) in k.coords.iter().enumerate() {
                    if other_slot == slot {
                        continue;
                    }
                    let v = other_map.value_at(&x0, rel)?;
                    if v.is_one() {
                        return Err(FourConfigError::DegenerateFace(format!(
                            "coordinate {} of curve {curve} is 1 at {x0}",
                            other_slot + 2
                        )));
                    }
                    others.push(v);
                }
                let end = if mult > 0 { FaceEnd::Zero } else { FaceEnd::Infinity };
                terms.push(BoundaryTerm {
                    curve,
                    coordinate,
                    end,
                    at: x0.to_string(),
                    point: std::iter::once(alpha.to_string())
                        .chain(others.iter().map(|v| v.to_string()))
                        .collect(),
                    multiplicity: mult,
                });
                let key = FacePoint {
                    coordinate,
                    alpha,
                    others: [others[0].clone(), others[1].clone()],
                };
                *agg.entry(key).or_insert(0) += mult;
            }
        }
    }
    let residue: Vec<(FacePoint, i64)> =
        agg.into_iter().filter(|(_, m)| *m != 0).collect();
    Ok(BoundaryReport { terms, residue })
}

/// Height-bounded exhaustive search for marked points satisfying the
/// constraint together with both parts of the symmetry condition.
/// Candidates are Gaussian integers ordered by height; the fourth point is
/// solved from the constraint.
pub fn search_plus_config(max_height: i64) -> Option<[GaussianRational; 4]> {
    for h in 1..=max_height {
        let coords: Vec<GaussianRational> = (-h..=h)
            .flat_map(|re| (-h..=h).map(move |im| gq(re, im)))
            .filter(|p| !p.is_zero())
            .collect();
        for a1 in &coords {
            for a2 in &coords {
                for b1 in &coords {
                    let b2 = -&(&(a1 * a2) / b1);
                    let Ok(config) = build_config(a1.clone(), a2.clone(), b1.clone(), b2.clone())
                    else {
                        continue;
                    };
                    let Ok(report) = check_conditions(&config) else {
                        continue;
                    };
                    if report.plus_holds() {
                        return Some([a1.clone(), a2.clone(), b1.clone(), b2]);
                    }
                }
            }
        }
    }
    None
}


#[cfg(test)]
mod pairing_tests {
    use super::*;

    /// The cancellation pairing on the f-coordinate face: the term of the
    /// inverted curve at a2 lands on the same ambient point as the term of
    /// the straight curve at a1, and the aggregate there vanishes.
    #[test]
    fn a_points_pair_across_the_two_curves() {
        let config = build_config(gq(2, 0), gq(-2, 0), gq(0, 2), gq(0, -2)).unwrap();
        let both = cubical_boundary(&config, &[1, 2]).unwrap();
        let shared = &gq(-2, 0) / &gq(2, 0); // a2 / a1
        let k1_at_a2 = both
            .terms
            .iter()
            .find(|t| t.curve == 1 && t.coordinate == 2 && t.at == "-2")
            .expect("curve 1 meets the f-face over a2");
        let k2_at_a1 = both
            .terms
            .iter()
            .find(|t| t.curve == 2 && t.coordinate == 2 && t.at == "2")
            .expect("curve 2 meets the f-face over a1");
        assert_eq!(k1_at_a2.point[0], shared.to_string());
        assert_eq!(k2_at_a1.point[0], shared.to_string());
        assert_eq!(k1_at_a2.multiplicity + k2_at_a1.multiplicity, 0);
        // and the aggregate at that ambient point on the f-face is zero
        assert!(both
            .residue
            .iter()
            .all(|(p, _)| !(p.coordinate == 2 && p.alpha == shared)));
    }
}
