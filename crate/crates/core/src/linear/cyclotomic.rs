//! Elements of cyclotomic fields `Q(zeta_N)` in the power basis.
//!
//! An element of conductor `N` is stored as `phi(N)` rational coefficients
//! with respect to `1, zeta, ..., zeta^(phi(N)-1)`, where `zeta = exp(2 pi i / N)`.
//! Binary operations on elements of different conductors lift both operands
//! into `Q(zeta_lcm)`, so conductors only ever grow under arithmetic;
//! [`Cyc::normalize`] shrinks an element back to its minimal conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::{cyclotomic_int, euler_phi, lcm, prime_factors, Poly};
use super::scalar::{format_rational, Rational, Scalar};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u64 = 5040;

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
struct CycField {
    n: u64,
    phi: usize,
    /// `zeta^e` in the power basis, for `0 <= e < n`.
    powers: Vec<Vec<BigInt>>,
}

impl CycField {
    fn build(n: u64) -> Self {
        let phi = euler_phi(n) as usize;
        let cyc = cyclotomic_int(n);
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic cyclotomic polynomial
            let top = cur[phi - 1].clone();
            let mut next = vec![BigInt::zero(); phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, slot) in next.iter_mut().enumerate() {
                    *slot -= &top * &cyc[i];
                }
            }
            cur = next;
        }
        CycField { n, phi, powers }
    }
}

fn field(n: u64) -> Arc<CycField> {
    static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CycField>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = fields.lock().unwrap().get(&n) {
        return Arc::clone(f);
    }
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "conductor {n} outside supported range 1..={MAX_CONDUCTOR}"
    );
    let f = Arc::new(CycField::build(n));
    fields.lock().unwrap().insert(n, Arc::clone(&f));
    debug_assert_eq!(f.n, n);
    f
}

/// An element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyc {
    n: u64,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", format_rational(&self.coeffs[0]));
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format_rational(c),
                1 => format!("{}*z{}", format_rational(c), self.n),
                _ => format!("{}*z{}^{}", format_rational(c), self.n, i),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Cyc {
    /// Builds an element from power-basis coefficients. Longer coefficient
    /// vectors are reduced modulo the cyclotomic polynomial.
    pub fn new(n: u64, coeffs: Vec<Rational>) -> Self {
        let f = field(n);
        let mut out = vec![Rational::zero(); f.phi];
        for (e, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_power(&f, &mut out, e as u64 % n, &c);
        }
        Cyc { n, coeffs: out }
    }

    pub fn rational(q: Rational) -> Self {
        Cyc { n: 1, coeffs: vec![q] }
    }

    pub fn integer(v: i64) -> Self {
        Cyc::rational(Rational::from_integer(BigInt::from(v)))
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as u64;
        Cyc {
            n,
            coeffs: f.powers[e as usize]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-embeds into `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> Cyc {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "cannot lift conductor {} into {}", self.n, m);
        let f = field(m);
        let step = m / self.n;
        let mut out = vec![Rational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_power(&f, &mut out, (j as u64 * step) % m, c);
            }
        }
        Cyc { n: m, coeffs: out }
    }

    fn unify(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.n, b.n);
        (a.lift(m), b.lift(m))
    }

    /// Galois automorphism `zeta -> zeta^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: u64) -> Cyc {
        assert_eq!(k.gcd(&self.n), 1, "Galois exponent must be a unit");
        let f = field(self.n);
        let mut out = vec![Rational::zero(); f.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_power(&f, &mut out, (j as u64 * k) % self.n, c);
            }
        }
        Cyc { n: self.n, coeffs: out }
    }

    /// Same element with the smallest possible conductor.
    pub fn normalize(&self) -> Cyc {
        let mut cur = self.clone();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            if cur.coeffs[1..].iter().all(|c| c.is_zero()) {
                return Cyc::rational(cur.coeffs[0].clone());
            }
            for p in prime_factors(cur.n) {
                let m = cur.n / p;
                if let Some(smaller) = cur.descend(m) {
                    cur = smaller;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Expresses `self` in `Q(zeta_m)` for `m | N`, if it lies there.
    fn descend(&self, m: u64) -> Option<Cyc> {
        let phi_m = euler_phi(m) as usize;
        let columns: Vec<Vec<Rational>> = (0..phi_m)
            .map(|j| Cyc::root_of_unity(m, j as i64).lift(self.n).coeffs)
            .collect();
        let basis = Matrix::from_columns(&columns);
        let sol = basis.solve(&self.coeffs).ok()??;
        Some(Cyc { n: m, coeffs: sol })
    }

    /// Multiplicative order if `self` is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let (k, m) = self.root_of_unity_log()?;
        Some(m / k.gcd(&m))
    }

    /// Writes a root of unity as `zeta_M^k` with `M = lcm(2, N)`.
    pub fn root_of_unity_log(&self) -> Option<(u64, u64)> {
        let m = lcm(2, self.n);
        let lifted = self.lift(m);
        (0..m).find(|&k| Cyc::root_of_unity(m, k as i64) == lifted).map(|k| (k, m))
    }
}

fn add_power(f: &CycField, out: &mut [Rational], e: u64, c: &Rational) {
    for (slot, p) in out.iter_mut().zip(&f.powers[e as usize]) {
        if !p.is_zero() {
            *slot += c * Rational::from_integer(p.clone());
        }
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyc::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        let (a, b) = if self.n == rhs.n { (self, rhs) } else { Cyc::unify(&self, &rhs) };
        Cyc {
            n: a.n,
            coeffs: a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, rhs: Cyc) -> Cyc {
        self + (-rhs)
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        let (a, b) = if self.n == rhs.n { (self, rhs) } else { Cyc::unify(&self, &rhs) };
        if a.n == 1 {
            return Cyc::rational(&a.coeffs[0] * &b.coeffs[0]);
        }
        let f = field(a.n);
        let mut prod = vec![Rational::zero(); 2 * f.phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..f.phi].to_vec();
        for (e, c) in prod.iter().enumerate().skip(f.phi) {
            if !c.is_zero() {
                add_power(&f, &mut out, e as u64 % f.n, c);
            }
        }
        Cyc { n: a.n, coeffs: out }
    }
}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::rational(Rational::one())
    }
}

impl Scalar for Cyc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Cyc::rational(self.coeffs[0].recip()));
        }
        // solve (multiplication by self) * y = 1 over Q
        let f = field(self.n);
        let columns: Vec<Vec<Rational>> = (0..f.phi)
            .map(|j| (self.clone() * Cyc::root_of_unity(self.n, j as i64)).coeffs)
            .collect();
        let mut one = vec![Rational::zero(); f.phi];
        one[0] = Rational::one();
        let y = Matrix::from_columns(&columns).solve(&one).ok()??;
        Some(Cyc { n: self.n, coeffs: y })
    }

    fn from_i64(v: i64) -> Self {
        Cyc::integer(v)
    }

    fn from_rational(q: &Rational) -> Self {
        Cyc::rational(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            return Some(self.coeffs[0].clone());
        }
        let n = self.normalize();
        (n.n == 1).then(|| n.coeffs[0].clone())
    }

    fn canonical_key(&self) -> String {
        let n = self.normalize();
        let parts: Vec<String> = n.coeffs.iter().map(format_rational).collect();
        format!("{}:{}", n.n, parts.join(","))
    }
}

/// Rational polynomial whose roots are all Galois conjugates of the roots
/// of `p` (the norm from `Q(zeta_N)` down to `Q`).
pub trait RationalNorm: Scalar {
    fn norm_poly(p: &Poly<Self>) -> Poly<Rational>;

    /// `zeta_order^k`, if the field can represent it.
    fn root_of_unity_elem(order: u64, k: u64) -> Option<Self>;
}

impl RationalNorm for Rational {
    fn norm_poly(p: &Poly<Self>) -> Poly<Rational> {
        p.clone()
    }

    fn root_of_unity_elem(order: u64, k: u64) -> Option<Self> {
        match (order, k % order.max(1)) {
            (1, _) | (2, 0) => Some(Rational::from_i64(1)),
            (2, 1) => Some(Rational::from_i64(-1)),
            _ => None,
        }
    }
}

impl RationalNorm for Cyc {
    fn norm_poly(p: &Poly<Self>) -> Poly<Rational> {
        let n = p.coeffs().iter().fold(1, |acc, c| lcm(acc, c.normalize().n));
        let lifted = p.map(|c| c.normalize().lift(n));
        let mut prod: Poly<Cyc> = Poly::one();
        for k in (1..=n).filter(|k| k.gcd(&n) == 1) {
            prod = prod.mul(&lifted.map(|c| c.galois(k)));
        }
        prod.map(|c| c.to_rational().expect("norm has rational coefficients"))
    }

    fn root_of_unity_elem(order: u64, k: u64) -> Option<Self> {
        (order <= MAX_CONDUCTOR).then(|| Cyc::root_of_unity(order, k as i64).normalize())
    }
}
