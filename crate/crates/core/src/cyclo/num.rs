use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the cyclotomic polynomial `Φ_n`.
///
/// Computed by exact division of `x^n - 1` by `Φ_d` for the proper divisors
/// `d` of `n`, and memoised per `n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &divisor);
        }
    }
    let poly = Arc::new(num);
    phi_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Clone, Debug)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `ζ_N^k` as an element of `Q(ζ_N)`.
pub fn cyclo_root(order: u32, k: i64) -> CycloNum {
    CycloNum::root(order, k)
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let d = euler_phi(order) as usize;
        CycloNum {
            order,
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    /// Builds an element from power-basis coordinates of any length; the
    /// polynomial is reduced modulo `Φ_N`.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Self {
        CycloNum {
            order,
            coeffs: reduce(order, coeffs),
        }
    }

    pub fn root(order: u32, k: i64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Self::from_coeffs(order, raw)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Canonical image under `Q(ζ_N) -> Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrders {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::from_coeffs(target, raw))
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let m = self.order.lcm(&other.order);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    /// Checked field operation; the operands are lifted to the lcm order.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => Ok(self + other),
            ArithOp::Sub => Ok(self - other),
            ArithOp::Mul => Ok(self * other),
            ArithOp::Div => self.checked_div(other),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv()?;
        Ok(self * &inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let s = rational_inverse_mod(&self.coeffs, &modulus);
        Ok(Self::from_coeffs(self.order, s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The exponent `k` in `0..N` with `self == ζ_N^k`, if `self` is an `N`-th
    /// root of unity.
    pub fn root_exponent(&self, order: u32) -> Option<u32> {
        let lifted_order = self.order.lcm(&order);
        let me = self.embed(lifted_order).ok()?;
        (0..order).find(|&k| CycloNum::root(order, k as i64).embed(lifted_order).unwrap() == me)
    }

    pub fn half(&self) -> Self {
        let h = BigRational::new(BigInt::one(), BigInt::from(2));
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * &h).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

/// Reduces a raw polynomial in `ζ_N` to the power basis of length `φ(N)`.
fn reduce(order: u32, mut raw: Vec<BigRational>) -> Vec<BigRational> {
    let n = order as usize;
    if raw.len() > n {
        for i in n..raw.len() {
            let c = std::mem::take(&mut raw[i]);
            if !c.is_zero() {
                raw[i % n] += c;
            }
        }
        raw.truncate(n);
    }
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    if raw.len() > d {
        for top in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[top]);
            if c.is_zero() {
                continue;
            }
            for (j, &p) in phi[..d].iter().enumerate() {
                if p != 0 {
                    raw[top - d + j] -= &c * BigInt::from(p);
                }
            }
        }
    }
    raw.resize(d, BigRational::zero());
    raw
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// `s` with `s·a ≡ 1 (mod m)`, assuming `gcd(a, m) = 1` in `Q[x]`.
fn rational_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r1 is a nonzero constant since Φ_N is irreducible.
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.lifted_pair(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNum {}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        if self.order != rhs.order {
            let (a, b) = self.lifted_pair(rhs);
            return &a + &b;
        }
        CycloNum {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        if self.order != rhs.order {
            let (a, b) = self.lifted_pair(rhs);
            return &a - &b;
        }
        CycloNum {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        if self.order != rhs.order {
            let (a, b) = self.lifted_pair(rhs);
            return &a * &b;
        }
        if self.coeffs.len() == 1 {
            return CycloNum {
                order: self.order,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        if self.is_zero() || rhs.is_zero() {
            return CycloNum::zero(self.order);
        }
        CycloNum::from_coeffs(self.order, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    // BigRational keeps lowest terms with a positive denominator.
    format!("{}/{}", q.numer(), q.denom())
}

/// Canonical text form `N:[c0,c1,...]` with every coordinate written `p/q`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "{}:[{}]", self.order, parts.join(","))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for CycloNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad cyclotomic number `{s}`"));
        let (n, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let order: u32 = n.trim().parse().map_err(|_| bad())?;
        if order == 0 {
            return Err(bad());
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coeffs = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?
        };
        if coeffs.len() != euler_phi(order) as usize {
            return Err(Error::Parse(format!(
                "expected {} coordinates for order {order}",
                euler_phi(order)
            )));
        }
        Ok(CycloNum { order, coeffs })
    }
}

impl CycloNum {
    /// Sign of a rational element, `None` when irrational.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(cyclo_root(4, 2), CycloNum::from_integer(4, -1));
        assert_eq!(cyclo_root(2, 1), CycloNum::from_integer(2, -1));
        assert!(cyclo_root(7, 0).is_one());
        assert_eq!(cyclo_root(5, -1), cyclo_root(5, 4));
        let s = &cyclo_root(3, 1) + &cyclo_root(3, 2);
        assert_eq!(s, CycloNum::from_integer(3, -1));
    }

    #[test]
    fn field_operations() {
        let i = cyclo_root(4, 1);
        assert_eq!(&i * &i, CycloNum::from_integer(4, -1));
        let z8 = cyclo_root(8, 1);
        let d = CycloNum::one(8).arith(&z8, ArithOp::Div).unwrap();
        assert_eq!(d, cyclo_root(8, 7));
        assert!((&z8 * &d).is_one());
        let z6 = cyclo_root(6, 1);
        assert_eq!(&z6 * &CycloNum::from_integer(6, -1), cyclo_root(6, 4));
        assert_eq!(
            CycloNum::one(5).arith(&CycloNum::zero(5), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn inverse_of_non_unit_element() {
        // (1 + 2ζ_5 - ζ_5^3) has an inverse in Q(ζ_5).
        let a = CycloNum::from_coeffs(5, vec![q(1, 1), q(2, 1), q(0, 1), q(-1, 1)]);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn embedding() {
        let minus_one = CycloNum::from_integer(2, -1);
        assert_eq!(minus_one.embed(4).unwrap(), cyclo_root(4, 2));
        assert_eq!(cyclo_root(3, 1).embed(6).unwrap(), cyclo_root(6, 2));
        let a = &cyclo_root(4, 1) + &CycloNum::one(4);
        let e = a.embed(8).unwrap();
        assert_eq!(e, &cyclo_root(8, 2) + &CycloNum::one(8));
        assert_eq!(&e * &e, (&a * &a).embed(8).unwrap());
        assert_eq!(
            cyclo_root(3, 1).embed(4),
            Err(Error::IncompatibleOrders { from: 3, to: 4 })
        );
        assert_eq!(a.embed(4).unwrap(), a);
    }

    #[test]
    fn text_round_trip() {
        let a = CycloNum::from_coeffs(3, vec![q(1, 2), q(-3, 4)]);
        assert_eq!(a.to_string(), "3:[1/2,-3/4]");
        assert_eq!(a.to_string().parse::<CycloNum>().unwrap(), a);
        assert_eq!(CycloNum::from_integer(2, 8).to_string(), "2:[8/1]");
        assert!("3:[1]".parse::<CycloNum>().is_err());
        assert!("x".parse::<CycloNum>().is_err());
    }

    #[test]
    fn root_exponent_lookup() {
        assert_eq!(CycloNum::from_integer(4, -1).root_exponent(2), Some(1));
        assert_eq!(cyclo_root(12, 4).root_exponent(3), Some(1));
        assert_eq!(CycloNum::from_integer(2, 2).root_exponent(2), None);
    }
}
