//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored over the power basis `1, z, ..., z^(phi(N)-1)` reduced
//! modulo the cyclotomic polynomial `Phi_N`, so two elements are equal exactly
//! when their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Units of `Z/N`, in increasing order. For `N = 1` this is `{0}`.
pub fn units(n: u64) -> impl Iterator<Item = u64> {
    (0..n).filter(move |k| k.gcd(&n) == 1)
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, Arc::clone(&p));
    p
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Reduces an arbitrary polynomial in `z` modulo `Phi_N`.
    pub fn from_poly(order: u64, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().take(deg).enumerate() {
                if !pj.is_zero() {
                    poly[i - deg + j] -= &c * pj;
                }
            }
        }
        poly.resize(deg, Rational::zero());
        Cyclotomic {
            order,
            coeffs: poly,
        }
    }

    pub fn zero(order: u64) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let deg = euler_phi(order) as usize;
        let mut coeffs = vec![Rational::zero(); deg];
        coeffs[0] = q;
        Cyclotomic { order, coeffs }
    }

    pub fn from_integer(order: u64, n: i64) -> Self {
        Self::from_rational(order, int(n))
    }

    pub fn zeta(order: u64) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// `zeta_N^k`, for any integer `k`.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                poly[i + j] += a * b;
            }
        }
        Ok(Self::from_poly(self.order, poly))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The automorphism `z -> z^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let n = self.order;
        let k = k.rem_euclid(n as i64) as u64;
        if k.gcd(&n) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.order;
        let mut poly = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            poly[((i as u64 * k) % n) as usize] += c;
        }
        Self::from_poly(n, poly)
    }

    /// Complex conjugate, i.e. `z -> z^-1`.
    pub fn conj(&self) -> Self {
        let k = if self.order == 1 { 0 } else { self.order - 1 };
        self.galois_unchecked(k)
    }

    /// Trace from `Q(zeta_N)` down to `Q`: the sum of all Galois conjugates.
    pub fn absolute_trace(&self) -> Rational {
        let total = units(self.order)
            .map(|k| self.galois_unchecked(k))
            .fold(Self::zero(self.order), |acc, x| &acc + &x);
        total
            .as_rational()
            .expect("sum over the Galois group is rational")
    }

    /// Reinterprets `self` inside `Q(zeta_M)` for a multiple `M` of its order.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.order) {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: target,
            });
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    pub fn pow(&self, mut e: u32) -> Self {
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
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            /// Panics when the orders differ; use the `checked_` form to recover.
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{z}")?,
                _ => write!(f, "{mag}*{z}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn i_squared() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_integer(4, -1));
    }

    #[test]
    fn zeta_to_the_n() {
        for n in 1..=24u64 {
            let z = Cyclotomic::zeta(n);
            let w = Cyclotomic::zeta_pow(n, n as i64 - 1);
            assert_eq!(&z * &w, Cyclotomic::one(n), "n = {n}");
            assert_eq!(z.pow(n as u32), Cyclotomic::one(n));
        }
    }

    #[test]
    fn fifth_roots_sum() {
        let s = (1..5).fold(Cyclotomic::zero(5), |acc, k| {
            &acc + &Cyclotomic::zeta_pow(5, k)
        });
        assert_eq!(s, Cyclotomic::from_integer(5, -1));
    }

    #[test]
    fn galois_action() {
        let z5 = Cyclotomic::zeta(5);
        assert_eq!(z5.galois_apply(2).unwrap(), Cyclotomic::zeta_pow(5, 2));
        assert_eq!(z5.galois_apply(4).unwrap(), Cyclotomic::zeta_pow(5, -1));
        assert_eq!(z5.conj(), Cyclotomic::zeta_pow(5, -1));
        assert!(matches!(
            Cyclotomic::zeta(6).galois_apply(2),
            Err(Error::NotCoprime { k: 2, n: 6 })
        ));
    }

    #[test]
    fn traces() {
        assert_eq!(Cyclotomic::one(4).absolute_trace(), int(2));
        assert_eq!(Cyclotomic::zeta(5).absolute_trace(), int(-1));
        assert_eq!(Cyclotomic::zeta(8).absolute_trace(), int(0));
    }

    #[test]
    fn rational_detection() {
        assert_eq!(
            Cyclotomic::from_rational(7, rat(3, 2)).as_rational(),
            Some(rat(3, 2))
        );
        assert_eq!(Cyclotomic::zeta(5).as_rational(), None);
        let s = &Cyclotomic::zeta(3) + &Cyclotomic::zeta_pow(3, 2);
        assert_eq!(s.as_rational(), Some(int(-1)));
    }

    #[test]
    fn mismatched_orders() {
        let err = Cyclotomic::zeta(3)
            .checked_add(&Cyclotomic::zeta(4))
            .unwrap_err();
        assert!(matches!(err, Error::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn embedding_preserves_value() {
        let z5 = Cyclotomic::zeta(5);
        let e = z5.embed(10).unwrap();
        assert_eq!(e, Cyclotomic::zeta_pow(10, 2));
        assert_eq!(e.absolute_trace(), int(-1));
    }

    #[test]
    fn display() {
        let x = &Cyclotomic::from_rational(5, rat(1, 2)) - &Cyclotomic::zeta_pow(5, 2);
        assert_eq!(x.to_string(), "1/2 - z5^2");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
    }
}
