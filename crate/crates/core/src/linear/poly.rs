//! Dense univariate polynomials and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{Rational, Scalar};

/// Polynomial with coefficients stored lowest degree first. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![S::one()] }
    }

    /// `x - root`
    pub fn linear(root: S) -> Self {
        Poly::new(vec![-root, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Division with remainder. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let d = divisor.degree()?;
        let lead_inv = divisor.leading()?.inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = rem[k - d + j].clone() - c.clone() * dc.clone();
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
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

pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let d = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - d];
    for k in (d..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k - d + j] -= &c * dc;
        }
        quot[k - d] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_int(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            let pd = cyclotomic_int(d);
            num = int_poly_div_exact(&num, &pd);
        }
    }
    let arc = Arc::new(num);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&arc));
    arc
}

/// The `n`-th cyclotomic polynomial over an exact field.
pub fn cyclotomic<S: Scalar>(n: u64) -> Poly<S> {
    Poly::new(
        cyclotomic_int(n)
            .iter()
            .map(|c| S::from_rational(&Rational::from_integer(c.clone())))
            .collect(),
    )
}

fn divisors_by_sqrt(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of `p` by the rational root test. Roots whose numerator or
/// denominator would exceed `10^12` are not searched for.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(Rational::zero());
        ints.drain(..zeros);
    }
    if deg == zeros {
        return roots;
    }
    let bound = BigInt::from(1_000_000_000_000u64);
    let (a0, an) = (ints[0].magnitude().clone(), ints[ints.len() - 1].magnitude().clone());
    if BigInt::from(a0.clone()) > bound || BigInt::from(an.clone()) > bound {
        return roots;
    }
    let to_u64 = |x: &num_bigint::BigUint| x.to_u64_digits().first().copied().unwrap_or(0);
    let reduced = Poly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut seen = std::collections::HashSet::new();
    for num in divisors_by_sqrt(to_u64(&a0)) {
        for den in divisors_by_sqrt(to_u64(&an)) {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                if seen.insert(r.clone()) && reduced.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::scalar::rat;

    #[test]
    fn small_cyclotomics() {
        let c = |n| {
            cyclotomic_int(n)
                .iter()
                .map(|x| x.to_string().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(c(1), vec![-1, 1]);
        assert_eq!(c(2), vec![1, 1]);
        assert_eq!(c(6), vec![1, -1, 1]);
        assert_eq!(c(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_int(30).len() as u64 - 1, euler_phi(30));
    }

    #[test]
    fn totient_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p: Poly<Rational> = Poly::new(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let (q, r) = p.div_rem(&Poly::linear(rat(1, 1))).unwrap();
        assert_eq!(q, Poly::new(vec![rat(1, 1), rat(1, 1)]));
        assert!(r.is_zero());
        assert!(p.div_rem(&Poly::zero()).is_none());
    }
}
