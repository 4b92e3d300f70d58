//! Arithmetic functions and Dirichlet series truncated at a bound.
//!
//! Truncation is exact: the coefficient of `n^{-s}` in a product only involves
//! indices dividing `n`, so nothing above the bound ever feeds back into it.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

/// Largest argument accepted by the sieve-backed functions.
pub const MAX_SIEVE: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be at least 1")]
    Zero,
    #[error("bounds differ: {0} and {1}")]
    BoundMismatch(usize, usize),
    #[error("not invertible: coefficient of 1 is zero")]
    NotInvertible,
    #[error("{what} = {value} exceeds {max}")]
    TooLarge { what: &'static str, value: u64, max: u64 },
}

/// `Σ_{n=1}^{N} a_n / n^s`, stored as `a_1, ..., a_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDirichlet {
    coeffs: Vec<Rational>,
}

impl TruncatedDirichlet {
    pub fn from_coefficients(coeffs: Vec<Rational>) -> Result<Self, ArithError> {
        if coeffs.is_empty() {
            return Err(ArithError::Zero);
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(usize) -> Rational) -> Result<Self, ArithError> {
        Self::from_coefficients((1..=bound).map(&mut f).collect())
    }

    pub fn zero(bound: usize) -> Result<Self, ArithError> {
        Self::from_fn(bound, |_| Rational::zero())
    }

    /// The indicator of 1, the unit of the Dirichlet product.
    pub fn unit(bound: usize) -> Result<Self, ArithError> {
        Self::from_fn(bound, |n| if n == 1 { Rational::one() } else { Rational::zero() })
    }

    /// `ζ(s)`: every coefficient 1.
    pub fn zeta(bound: usize) -> Result<Self, ArithError> {
        Self::from_fn(bound, |_| Rational::one())
    }

    /// `Σ μ(n) / n^s`, from the sieve.
    pub fn mobius(bound: usize) -> Result<Self, ArithError> {
        let mu = mobius_sieve(bound as u64)?;
        Self::from_fn(bound, |n| rational::int(mu[n] as i64))
    }

    /// Indicator of the powers of `p`, including `p^0 = 1`.
    pub fn prime_powers(bound: usize, p: usize) -> Result<Self, ArithError> {
        let mut f = Self::zero(bound)?;
        let mut q = 1;
        while q <= bound {
            f.coeffs[q - 1] = Rational::one();
            if p < 2 {
                break;
            }
            q *= p;
        }
        Ok(f)
    }

    /// `η(1) = 1`, `η(p) = -1` for primes `p`, zero elsewhere.
    pub fn prime_eta(bound: usize) -> Result<Self, ArithError> {
        Self::from_fn(bound, |n| match n {
            1 => Rational::one(),
            _ if is_prime(n as u64) => rational::int(-1),
            _ => Rational::zero(),
        })
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n`, for `1 <= n <= bound`.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    /// Sets `a_n`; panics outside `1..=bound`.
    pub fn set(&mut self, n: usize, value: Rational) {
        self.coeffs[n - 1] = value;
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().map(|(i, a)| (i + 1, a))
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Prime factorization by trial division, as `(p, e)` with increasing `p`.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// `μ(n)` by trial division: 0 on a repeated prime factor, else `(-1)^k`.
pub fn classical_mobius(n: u64) -> Result<i8, ArithError> {
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// `μ(0..=n)` by a linear sieve; entry 0 is 0.
pub fn mobius_sieve(n: u64) -> Result<Vec<i8>, ArithError> {
    if n > MAX_SIEVE {
        return Err(ArithError::TooLarge {
            what: "sieve bound",
            value: n,
            max: MAX_SIEVE,
        });
    }
    let n = n as usize;
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let Some(m) = i.checked_mul(p).filter(|&m| m <= n) else { break };
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    Ok(mu)
}

/// `M(n) = Σ_{k<=n} μ(k)`.
pub fn mertens(n: u64) -> Result<i64, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    Ok(mobius_sieve(n)?.iter().map(|&m| m as i64).sum())
}

/// `(f ⋆ g)_n = Σ_{cd = n} f_c g_d`.
pub fn dirichlet_convolve(
    f: &TruncatedDirichlet,
    g: &TruncatedDirichlet,
) -> Result<TruncatedDirichlet, ArithError> {
    let n = f.bound();
    if g.bound() != n {
        return Err(ArithError::BoundMismatch(n, g.bound()));
    }
    let mut out = vec![Rational::zero(); n];
    for c in 1..=n {
        let fc = &f.coeffs[c - 1];
        if fc.is_zero() {
            continue;
        }
        for d in 1..=n / c {
            let gd = &g.coeffs[d - 1];
            if !gd.is_zero() {
                out[c * d - 1] += fc * gd;
            }
        }
    }
    Ok(TruncatedDirichlet { coeffs: out })
}

/// The `⋆`-inverse: `g_1 = 1/f_1`, `g_n = -(1/f_1) Σ_{d | n, d > 1} f_d g_{n/d}`.
pub fn dirichlet_invert(f: &TruncatedDirichlet) -> Result<TruncatedDirichlet, ArithError> {
    let f1 = &f.coeffs[0];
    if f1.is_zero() {
        return Err(ArithError::NotInvertible);
    }
    let n = f.bound();
    let mut g = vec![Rational::zero(); n];
    g[0] = f1.recip();
    // accumulate Σ_{d > 1} f_d g_m into index d·m once g_m is final
    let mut acc = vec![Rational::zero(); n];
    for m in 1..=n {
        if m > 1 {
            g[m - 1] = -(&acc[m - 1]) / f1;
        }
        if g[m - 1].is_zero() {
            continue;
        }
        for d in 2..=n / m {
            let fd = &f.coeffs[d - 1];
            if !fd.is_zero() {
                acc[d * m - 1] += fd * &g[m - 1];
            }
        }
    }
    Ok(TruncatedDirichlet { coeffs: g })
}

/// `f(ab) = f(a) f(b)` for all coprime `a, b` with `ab` within the bound.
pub fn is_multiplicative(f: &TruncatedDirichlet) -> bool {
    let n = f.bound();
    (1..=n).all(|a| {
        (1..=n / a)
            .filter(|&b| a.gcd(&b) == 1)
            .all(|b| f.coeffs[a * b - 1] == &f.coeffs[a - 1] * &f.coeffs[b - 1])
    })
}

/// Ordered factorizations of `n` into primes: `(Σ e_i)! / Π e_i!`. This is
/// the inverse of [`TruncatedDirichlet::prime_eta`].
pub fn ordered_prime_factorizations(n: u64) -> Result<u64, ArithError> {
    let factors = factorize(n)?;
    let mut total = 0u64;
    let mut count = 1u64;
    for (_, e) in factors {
        for i in 1..=e as u64 {
            total += 1;
            count = count * total / i;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn classical_values() {
        assert_eq!(classical_mobius(1).unwrap(), 1);
        assert_eq!(classical_mobius(12).unwrap(), 0);
        assert_eq!(classical_mobius(30).unwrap(), -1);
        assert_eq!(classical_mobius(0), Err(ArithError::Zero));
        let sieve = mobius_sieve(2000).unwrap();
        assert!((1..=2000).all(|n| sieve[n] == classical_mobius(n as u64).unwrap()));
    }

    #[test]
    fn mertens_values() {
        assert_eq!(mertens(1).unwrap(), 1);
        assert_eq!(mertens(2).unwrap(), 0);
        assert_eq!(mertens(10).unwrap(), -1);
        assert_eq!(mertens(100).unwrap(), 1);
    }

    #[test]
    fn convolution() {
        let z = TruncatedDirichlet::zeta(100).unwrap();
        let d = dirichlet_convolve(&z, &z).unwrap();
        assert_eq!(d.get(6), Some(&int(4)));
        assert_eq!(d.get(12), Some(&int(6)));
        let mu = TruncatedDirichlet::mobius(100).unwrap();
        assert_eq!(dirichlet_convolve(&z, &mu).unwrap(), TruncatedDirichlet::unit(100).unwrap());
        let short = TruncatedDirichlet::zeta(10).unwrap();
        assert_eq!(dirichlet_convolve(&z, &short), Err(ArithError::BoundMismatch(100, 10)));
    }

    #[test]
    fn inversion() {
        let n = 1000;
        let mu = dirichlet_invert(&TruncatedDirichlet::zeta(n).unwrap()).unwrap();
        assert!((1..=n).all(|k| mu.get(k) == Some(&int(classical_mobius(k as u64).unwrap() as i64))));

        let fp = TruncatedDirichlet::prime_powers(200, 3).unwrap();
        let inv = dirichlet_invert(&fp).unwrap();
        for k in 1..=200 {
            let expected = match k {
                1 => 1,
                3 => -1,
                _ => 0,
            };
            assert_eq!(inv.get(k), Some(&int(expected)));
        }

        let eta = TruncatedDirichlet::prime_eta(300).unwrap();
        let inv = dirichlet_invert(&eta).unwrap();
        assert_eq!(dirichlet_convolve(&eta, &inv).unwrap(), TruncatedDirichlet::unit(300).unwrap());
        assert!((1..=300).all(|k| inv.get(k) == Some(&int(ordered_prime_factorizations(k as u64).unwrap() as i64))));
        assert_eq!(inv.get(12), Some(&int(3)));

        let mut zero_first = TruncatedDirichlet::zeta(5).unwrap();
        zero_first.set(1, Rational::zero());
        assert_eq!(dirichlet_invert(&zero_first), Err(ArithError::NotInvertible));
    }

    #[test]
    fn multiplicativity() {
        assert!(is_multiplicative(&TruncatedDirichlet::mobius(300).unwrap()));
        assert!(is_multiplicative(&TruncatedDirichlet::zeta(300).unwrap()));
        assert!(is_multiplicative(&TruncatedDirichlet::unit(300).unwrap()));
        let mut f = TruncatedDirichlet::zeta(10).unwrap();
        f.set(6, int(2));
        assert!(!is_multiplicative(&f));
    }
}
