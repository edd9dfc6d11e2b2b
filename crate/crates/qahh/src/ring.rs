//! The coefficient ring R = Z[X, Y, Z^{±1}] / (X² = Y² = 1).

use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A Z²-degree `(v1, v2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct BiDegree {
    pub v1: i64,
    pub v2: i64,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { v1: 0, v2: 0 };

    pub const fn new(v1: i64, v2: i64) -> Self {
        BiDegree { v1, v2 }
    }

    /// Quantum flattening `v1 + v2`.
    pub fn q(self) -> i64 {
        self.v1 + self.v2
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.v1 + o.v1, self.v2 + o.v2)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.v1 - o.v1, self.v2 - o.v2)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.v1, -self.v2)
    }
}

impl AddAssign for BiDegree {
    fn add_assign(&mut self, o: BiDegree) {
        self.v1 += o.v1;
        self.v2 += o.v2;
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v1, self.v2)
    }
}

/// A trivial unit `±X^x Y^y Z^z` of R.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Unit {
    pub neg: bool,
    pub x: bool,
    pub y: bool,
    pub z: i64,
}

impl Unit {
    pub const ONE: Unit = Unit { neg: false, x: false, y: false, z: 0 };
    pub const MINUS_ONE: Unit = Unit { neg: true, x: false, y: false, z: 0 };
    pub const X: Unit = Unit { neg: false, x: true, y: false, z: 0 };
    pub const Y: Unit = Unit { neg: false, x: false, y: true, z: 0 };
    pub const Z: Unit = Unit { neg: false, x: false, y: false, z: 1 };

    pub fn z_pow(k: i64) -> Unit {
        Unit { z: k, ..Unit::ONE }
    }

    pub fn inv(self) -> Unit {
        Unit { z: -self.z, ..self }
    }

    pub fn is_one(self) -> bool {
        self == Unit::ONE
    }

    pub fn pow(self, e: i64) -> Unit {
        let odd = e.rem_euclid(2) == 1;
        Unit {
            neg: self.neg && odd,
            x: self.x && odd,
            y: self.y && odd,
            z: self.z * e,
        }
    }

    pub fn to_elem(self) -> RingElem {
        RingElem::monomial(self.x as u8, self.y as u8, self.z, if self.neg { -1 } else { 1 })
    }

    pub fn specialize(self, x: i64, y: i64, z: i64) -> i64 {
        let mut v = if self.neg { -1 } else { 1 };
        if self.x {
            v *= x;
        }
        if self.y {
            v *= y;
        }
        if self.z.rem_euclid(2) == 1 {
            v *= z;
        }
        v
    }
}

impl Serialize for Unit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, o: Unit) -> Unit {
        Unit {
            neg: self.neg ^ o.neg,
            x: self.x ^ o.x,
            y: self.y ^ o.y,
            z: self.z + o.z,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_elem())
    }
}

/// `λ((a,b),(c,d)) = X^{ac} Y^{bd} Z^{ad-bc}`.
pub fn lambda(d1: BiDegree, d2: BiDegree) -> Unit {
    Unit {
        neg: false,
        x: (d1.v1 * d2.v1).rem_euclid(2) == 1,
        y: (d1.v2 * d2.v2).rem_euclid(2) == 1,
        z: d1.v1 * d2.v2 - d1.v2 * d2.v1,
    }
}

/// Key of a monomial: `(xExp, yExp, zExp)`.
pub type MonoKey = (u8, u8, i64);

/// An element of R, stored as a canonical sparse monomial expansion.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RingElem {
    terms: BTreeMap<MonoKey, i64>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        RingElem::monomial(0, 0, 0, c)
    }

    pub fn x() -> Self {
        RingElem::monomial(1, 0, 0, 1)
    }

    pub fn y() -> Self {
        RingElem::monomial(0, 1, 0, 1)
    }

    pub fn z(k: i64) -> Self {
        RingElem::monomial(0, 0, k, 1)
    }

    pub fn monomial(x: u8, y: u8, z: i64, c: i64) -> Self {
        let mut r = RingElem::zero();
        r.add_term((x % 2, y % 2, z), c);
        r
    }

    pub fn from_terms<I: IntoIterator<Item = (MonoKey, i64)>>(it: I) -> Self {
        let mut r = RingElem::zero();
        for (k, c) in it {
            r.add_term((k.0 % 2, k.1 % 2, k.2), c);
        }
        r
    }

    pub fn add_term(&mut self, k: MonoKey, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0, 0)) == Some(&1)
    }

    /// Returns the unit when `self` is a single term with coefficient ±1.
    pub fn as_unit(&self) -> Option<Unit> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(x, y, z), &c) = self.terms.iter().next().unwrap();
        if c != 1 && c != -1 {
            return None;
        }
        Some(Unit { neg: c == -1, x: x == 1, y: y == 1, z })
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    pub fn mul_unit(&self, u: Unit) -> RingElem {
        let s = if u.neg { -1 } else { 1 };
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y, z), &c)| ((x ^ u.x as u8, y ^ u.y as u8, z + u.z), c * s))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> RingElem {
        if k == 0 {
            return RingElem::zero();
        }
        RingElem { terms: self.terms.iter().map(|(&m, &c)| (m, c * k)).collect() }
    }

    /// The unit `u` with `num = u · den`, if one exists.
    pub fn unit_ratio(num: &RingElem, den: &RingElem) -> Option<Unit> {
        RingElem::unit_ratios(num, den).into_iter().next()
    }

    /// Every trivial unit `u` with `u · den = num`. More than one exists
    /// when `den` is annihilated by some `1 − u'`, e.g. `den = 1 + XY`.
    pub fn unit_ratios(num: &RingElem, den: &RingElem) -> Vec<Unit> {
        let mut out = Vec::new();
        if den.is_zero() || num.is_zero() || num.terms.len() != den.terms.len() {
            return out;
        }
        let (&(nx, ny, nz), &nc) = num.terms.iter().next().unwrap();
        for (&(dx, dy, dz), &dc) in den.terms.iter() {
            if nc != dc && nc != -dc {
                continue;
            }
            let u = Unit { neg: nc != dc, x: (nx ^ dx) == 1, y: (ny ^ dy) == 1, z: nz - dz };
            if !out.contains(&u) && &den.mul_unit(u) == num {
                out.push(u);
            }
        }
        out.sort();
        out
    }

    /// Ring homomorphism R → Z sending X, Y, Z to `x, y, z ∈ {±1}`.
    pub fn specialize(&self, x: i64, y: i64, z: i64) -> i64 {
        self.terms
            .iter()
            .map(|(&(a, b, k), &c)| {
                let mut v = c;
                if a == 1 {
                    v *= x;
                }
                if b == 1 {
                    v *= y;
                }
                if k.rem_euclid(2) == 1 {
                    v *= z;
                }
                v
            })
            .sum()
    }

    pub fn z_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.2).min()?;
        let hi = self.terms.keys().map(|k| k.2).max()?;
        Some((lo, hi))
    }

    pub fn quads(&self) -> Vec<[i64; 4]> {
        self.terms.iter().map(|(&(x, y, z), &c)| [x as i64, y as i64, z, c]).collect()
    }
}

impl From<Unit> for RingElem {
    fn from(u: Unit) -> Self {
        u.to_elem()
    }
}

impl From<i64> for RingElem {
    fn from(c: i64) -> Self {
        RingElem::constant(c)
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(mut self, o: RingElem) -> RingElem {
        self += &o;
        self
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, o: &RingElem) {
        for (&k, &c) in o.terms.iter() {
            self.add_term(k, c);
        }
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        let mut r = self.clone();
        for (&k, &c) in o.terms.iter() {
            r.add_term(k, -c);
        }
        r
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, o: RingElem) -> RingElem {
        &self - &o
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.scale(-1)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, o: &RingElem) -> RingElem {
        let mut r = RingElem::zero();
        for (&(x1, y1, z1), &c1) in self.terms.iter() {
            for (&(x2, y2, z2), &c2) in o.terms.iter() {
                r.add_term((x1 ^ x2, y1 ^ y2, z1 + z2), c1 * c2);
            }
        }
        r
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, o: RingElem) -> RingElem {
        &self * &o
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(x, y, z), &c) in self.terms.iter() {
            let mut mono = String::new();
            if x == 1 {
                mono.push('X');
            }
            if y == 1 {
                mono.push('Y');
            }
            match z {
                0 => {}
                1 => mono.push('Z'),
                k => mono.push_str(&format!("Z^{}", k)),
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match (mag, mono.is_empty()) {
                (m, true) => write!(f, "{}", m)?,
                (1, false) => write!(f, "{}", mono)?,
                (m, false) => write!(f, "{}{}", m, mono)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for q in self.quads() {
            seq.serialize_element(&q)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let quads: Vec<[i64; 4]> = Vec::deserialize(d)?;
        for q in &quads {
            if !(0..=1).contains(&q[0]) || !(0..=1).contains(&q[1]) {
                return Err(serde::de::Error::custom("X and Y exponents must be 0 or 1"));
            }
        }
        Ok(RingElem::from_terms(quads.into_iter().map(|q| ((q[0] as u8, q[1] as u8, q[2]), q[3]))))
    }
}

/// The eight sign specializations `(x, y, z)`.
pub const ALL_SPECS: [(i64, i64, i64); 8] = [
    (1, 1, 1),
    (1, -1, 1),
    (1, 1, -1),
    (1, -1, -1),
    (-1, 1, 1),
    (-1, -1, 1),
    (-1, 1, -1),
    (-1, -1, -1),
];

/// A named specialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Spec {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Spec {
    pub const EVEN: Spec = Spec { x: 1, y: 1, z: 1 };
    pub const ODD: Spec = Spec { x: 1, y: -1, z: 1 };

    pub fn all() -> Vec<Spec> {
        ALL_SPECS.iter().map(|&(x, y, z)| Spec { x, y, z }).collect()
    }

    pub fn name(&self) -> String {
        match (self.x, self.y, self.z) {
            (1, 1, 1) => "even".into(),
            (1, -1, 1) => "odd".into(),
            (x, y, z) => format!("{},{},{}", x, y, z),
        }
    }

    pub fn parse(s: &str) -> Option<Spec> {
        match s {
            "even" => return Some(Spec::EVEN),
            "odd" => return Some(Spec::ODD),
            _ => {}
        }
        let v: Vec<i64> = s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
        if v.len() != 3 || v.iter().any(|&c| c != 1 && c != -1) {
            return None;
        }
        Some(Spec { x: v[0], y: v[1], z: v[2] })
    }

    pub fn apply(&self, r: &RingElem) -> i64 {
        r.specialize(self.x, self.y, self.z)
    }
}
