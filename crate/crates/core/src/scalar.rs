//! Exact coefficient field Q(zeta_N): rationals extended by a primitive
//! N-th root of unity. Elements are coefficient vectors of length
//! phi(N), reduced modulo the N-th cyclotomic polynomial, so equality is
//! vector equality. Order 1 is plain Q and promotes silently into any
//! other order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Reduction data for one cyclotomic order, cached globally.
struct CycData {
    phi: usize,
    /// Monic minimal polynomial of zeta_N, low-to-high, length phi+1.
    minpoly: Vec<Q>,
}

fn cyc_cache() -> &'static Mutex<HashMap<u32, Arc<CycData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyc_data(order: u32) -> Arc<CycData> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(d) = cyc_cache().lock().unwrap().get(&order) {
        return d.clone();
    }
    let minpoly = cyclotomic_poly(order);
    let data = Arc::new(CycData {
        phi: minpoly.len() - 1,
        minpoly,
    });
    cyc_cache()
        .lock()
        .unwrap()
        .entry(order)
        .or_insert(data)
        .clone()
}

/// N-th cyclotomic polynomial over Q, computed as (x^N - 1) divided by
/// the product of the d-th cyclotomic polynomials over proper divisors d.
fn cyclotomic_poly(n: u32) -> Vec<Q> {
    if n == 1 {
        return vec![-Q::one(), Q::one()]; // x - 1
    }
    let mut num = vec![Q::zero(); n as usize + 1];
    num[0] = -Q::one();
    num[n as usize] = Q::one();
    let mut den = vec![Q::one()];
    for d in 1..n {
        if n % d == 0 {
            den = upoly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let (q, r) = upoly_divrem(&num, &den);
    debug_assert!(r.iter().all(Q::is_zero));
    q
}

// Dense univariate helpers over Q, low-to-high coefficient order.

fn upoly_trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().map_or(false, Q::is_zero) {
        p.pop();
    }
}

fn upoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    upoly_trim(&mut out);
    out
}

fn upoly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    upoly_trim(&mut rem);
    let mut b = b.to_vec();
    upoly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    assert!(!lead.is_zero(), "division by zero polynomial");
    if rem.len() <= db && !(db == 0) {
        return (vec![Q::zero()], rem);
    }
    let mut quo = vec![Q::zero(); rem.len().saturating_sub(db)];
    while rem.len() > db || (db == 0 && rem.iter().any(|c| !c.is_zero())) {
        let dr = rem.len() - 1;
        if dr < db || rem[dr].is_zero() {
            if rem[dr].is_zero() && rem.len() > 1 {
                rem.pop();
                continue;
            }
            break;
        }
        let c = &rem[dr] / &lead;
        quo[dr - db] = c.clone();
        for k in 0..=db {
            let t = &b[k] * &c;
            rem[dr - db + k] -= t;
        }
        upoly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    if quo.is_empty() {
        quo.push(Q::zero());
    }
    upoly_trim(&mut quo);
    (quo, rem)
}

/// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic.
fn upoly_xgcd(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>, Vec<Q>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    upoly_trim(&mut r0);
    upoly_trim(&mut r1);
    let mut s0 = vec![Q::one()];
    let mut s1 = vec![Q::zero()];
    let mut t0 = vec![Q::zero()];
    let mut t1 = vec![Q::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = upoly_divrem(&r0, &r1);
        let s = upoly_sub(&s0, &upoly_mul(&q, &s1));
        let t = upoly_sub(&t0, &upoly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lead = r0.last().unwrap().clone();
    if !lead.is_one() {
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c /= &lead;
        }
    }
    (r0, s0, t0)
}

fn upoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    upoly_trim(&mut out);
    out
}

/// An element of Q(zeta_N). `coeffs[i]` multiplies zeta_N^i; the vector
/// always has length phi(N) and is fully reduced.
#[derive(Clone)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<Q>,
}

/// Equality is mathematical for rational values regardless of the field
/// they are stored in; non-rational values compare equal only within the
/// same field order (one computation sticks to one declared order).
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero(order: u32) -> Self {
        let phi = cyc_data(order).phi;
        Scalar {
            order,
            coeffs: vec![Q::zero(); phi],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Scalar::zero(order);
        s.coeffs[0] = Q::one();
        s
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut s = Scalar::zero(order);
        s.coeffs[0] = Q::from(BigInt::from(n));
        s
    }

    pub fn from_rational(order: u32, q: Q) -> Self {
        let mut s = Scalar::zero(order);
        s.coeffs[0] = q;
        s
    }

    /// zeta_N itself (the class of x); for order 1 this is 1, for order 2
    /// it is -1.
    pub fn zeta(order: u32) -> Self {
        let data = cyc_data(order);
        let mut raw = vec![Q::zero(); 2];
        raw[1] = Q::one();
        Scalar::reduce(order, &data, raw)
    }

    /// A primitive m-th root of unity inside Q(zeta_N); requires m | N.
    pub fn primitive_root(order: u32, m: u32) -> crate::Result<Self> {
        if m == 0 || order % m != 0 {
            return Err(crate::Error::Invalid(format!(
                "coefficient field of order {order} has no primitive {m}-th root of unity"
            )));
        }
        Ok(Scalar::zeta(order).pow((order / m) as i64))
    }

    fn reduce(order: u32, data: &CycData, mut raw: Vec<Q>) -> Self {
        if raw.len() > data.phi {
            let (_, r) = upoly_divrem(&raw, &data.minpoly);
            raw = r;
        }
        raw.resize(data.phi, Q::zero());
        Scalar {
            order,
            coeffs: raw,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Q::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Q::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.is_rational() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Promotes order-1 operands so mixed arithmetic with plain rationals
    /// works; any other order mismatch is a caller bug.
    fn align(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        if a.order == 1 && a.is_rational() {
            let mut p = Scalar::zero(b.order);
            p.coeffs[0] = a.coeffs[0].clone();
            return (p, b.clone());
        }
        if b.order == 1 && b.is_rational() {
            let mut p = Scalar::zero(a.order);
            p.coeffs[0] = b.coeffs[0].clone();
            return (a.clone(), p);
        }
        panic!(
            "scalar order mismatch: {} vs {} (only order 1 promotes)",
            a.order, b.order
        );
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = Scalar::align(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = Scalar::align(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Scalar {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        let (a, b) = Scalar::align(self, rhs);
        let data = cyc_data(a.order);
        let raw = upoly_mul(&a.coeffs, &b.coeffs);
        Scalar::reduce(a.order, &data, raw)
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        let data = cyc_data(self.order);
        if data.phi == 1 {
            let mut s = Scalar::zero(self.order);
            s.coeffs[0] = self.coeffs[0].recip();
            return s;
        }
        let (g, s, _) = upoly_xgcd(&self.coeffs, &data.minpoly);
        assert!(
            g.len() == 1 && g[0].is_one(),
            "cyclotomic polynomial not coprime to nonzero element"
        );
        Scalar::reduce(self.order, &data, s)
    }

    /// Least common multiple of the coefficient denominators.
    pub(crate) fn den_lcm(&self) -> BigInt {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for c in &self.coeffs {
            if !c.is_zero() {
                l = l.lcm(c.denom());
            }
        }
        l
    }

    /// Multiply by an integer without going through `mul`.
    pub(crate) fn scale_int(&self, n: &BigInt) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Quotient `self / d` where the division is known to be exact in the
    /// ring of denominator-free elements. Exactness is the caller's
    /// contract (checked in debug builds for the rational fast path);
    /// non-rational divisors fall back to inverse multiplication.
    pub(crate) fn div_exact(&self, d: &Scalar) -> Scalar {
        if d.is_rational() {
            let q = &d.coeffs[0];
            assert!(!q.is_zero(), "exact division by zero");
            if q.denom().is_one() && q.numer().magnitude() != &num_bigint::BigUint::from(1u32) {
                let n = q.numer();
                let mut out = self.clone();
                for c in out.coeffs.iter_mut() {
                    if c.is_zero() {
                        continue;
                    }
                    if c.denom().is_one() {
                        let (quo, rem) = num_integer::Integer::div_rem(c.numer(), n);
                        debug_assert!(rem.is_zero(), "inexact integer division");
                        *c = Q::from(quo);
                    } else {
                        *c = &*c / q;
                    }
                }
                return out;
            }
            let mut out = self.clone();
            for c in out.coeffs.iter_mut() {
                *c = &*c / q;
            }
            return out;
        }
        self.mul(&d.inv())
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one(self.order);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Rendering split used by the polynomial printer: (negated, body,
    /// needs_parens). `negated` means the printed body is the absolute
    /// value and the caller must emit a minus sign.
    pub(crate) fn render(&self) -> (bool, String, bool) {
        let nterms = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nterms == 0 {
            return (false, "0".into(), false);
        }
        if nterms == 1 {
            let (k, c) = self
                .coeffs
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .unwrap();
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            let body = if k == 0 {
                fmt_q(&abs)
            } else if abs.is_one() {
                zeta_pow_str(self.order, k)
            } else {
                format!("{}*{}", fmt_q(&abs), zeta_pow_str(self.order, k))
            };
            return (neg, body, false);
        }
        // multi-term: print fully signed, highest power first
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            if k == 0 {
                out.push_str(&fmt_q(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_q(&abs));
                    out.push('*');
                }
                out.push_str(&zeta_pow_str(self.order, k));
            }
        }
        (false, out, true)
    }
}

fn zeta_pow_str(order: u32, k: usize) -> String {
    if k == 1 {
        format!("z{order}")
    } else {
        format!("z{order}^{k}")
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body, _) = self.render();
        if neg {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: u32, n: i64) -> Scalar {
        Scalar::from_int(order, n)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        // Phi_1 = x-1, Phi_2 = x+1, Phi_3 = x^2+x+1, Phi_4 = x^2+1,
        // Phi_6 = x^2-x+1, Phi_12 = x^4-x^2+1
        let q = |n: i64| Q::from(BigInt::from(n));
        assert_eq!(cyclotomic_poly(1), vec![q(-1), q(1)]);
        assert_eq!(cyclotomic_poly(2), vec![q(1), q(1)]);
        assert_eq!(cyclotomic_poly(3), vec![q(1), q(1), q(1)]);
        assert_eq!(cyclotomic_poly(4), vec![q(1), q(0), q(1)]);
        assert_eq!(cyclotomic_poly(6), vec![q(1), q(-1), q(1)]);
        assert_eq!(cyclotomic_poly(12), vec![q(1), q(0), q(-1), q(0), q(1)]);
    }

    #[test]
    fn zeta_powers_cycle() {
        for order in [1u32, 2, 3, 4, 6, 12] {
            let z = Scalar::zeta(order);
            assert!(z.pow(order as i64).is_one(), "zeta_{order}^{order} != 1");
            for k in 1..order {
                // zeta is primitive: lower powers are not 1
                assert!(!z.pow(k as i64).is_one(), "zeta_{order}^{k} == 1");
            }
        }
    }

    #[test]
    fn geometric_sum_vanishes() {
        for order in [2u32, 3, 4, 6] {
            let z = Scalar::zeta(order);
            let mut sum = Scalar::zero(order);
            for k in 0..order {
                sum = sum.add(&z.pow(k as i64));
            }
            assert!(sum.is_zero(), "sum of all zeta_{order} powers != 0");
        }
    }

    #[test]
    fn field_inverse() {
        let z = Scalar::zeta(6);
        let a = z.mul(&s(6, 3)).add(&s(6, 2)); // 3*zeta_6 + 2
        let b = a.inv();
        assert!(a.mul(&b).is_one());
        // zeta_6 inverse is zeta_6^5
        assert_eq!(z.inv(), z.pow(5));
    }

    #[test]
    fn order_one_promotes() {
        let two = s(1, 2);
        let z = Scalar::zeta(4);
        let r = two.mul(&z);
        assert_eq!(r, z.add(&z));
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn primitive_roots_inside_bigger_field() {
        let r = Scalar::primitive_root(6, 3).unwrap();
        assert!(r.pow(3).is_one());
        assert!(!r.is_one());
        assert!(Scalar::primitive_root(6, 4).is_err());
        // zeta_2 = -1 in any even-order field
        assert_eq!(Scalar::primitive_root(6, 2).unwrap(), s(6, -1));
    }

    #[test]
    fn display_round_values() {
        assert_eq!(s(1, -3).to_string(), "-3");
        let half = Scalar::from_rational(1, Q::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(Scalar::zeta(3).to_string(), "z3");
        let e = Scalar::zeta(3).mul(&s(3, 2)).sub(&s(3, 1));
        assert_eq!(e.to_string(), "2*z3-1");
    }
}
