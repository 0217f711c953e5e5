//! Exact integer arithmetic functions behind the Ramanujan sums.
//!
//! Everything here returns exact integers; the only floating-point routine is
//! [`ramanujan_sum_direct`], which evaluates the defining character sum and is
//! kept as an independent check on the closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing
/// primes. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Product of `prime^exponent` over all factors.
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial division up to `sqrt(n)`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::invalid("gcd(0, 0) is undefined"));
    }
    Ok(gcd_unchecked(a, b))
}

fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Möbius function: 0 when `n` has a squared prime factor, otherwise
/// `(-1)^k` for `k` distinct primes.
pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    Ok(moebius_of(&f))
}

fn moebius_of(f: &Factorization) -> i8 {
    if !f.is_squarefree() {
        0
    } else if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler totient, computed as `q / prod(p) * prod(p - 1)` over the distinct
/// prime factors so that no rational arithmetic is needed.
pub fn totient(q: u64) -> Result<u64> {
    let f = factorize(q)?;
    Ok(totient_of(q, &f))
}

fn totient_of(q: u64, f: &Factorization) -> u64 {
    let radical: u64 = f.primes().product();
    let reduced: u64 = f.primes().map(|p| p - 1).product();
    q / radical * reduced
}

/// Ramanujan sum `c_q(n)` from the closed form
/// `mu(q / (q, n)) * phi(q) / phi(q / (q, n))`.
pub fn ramanujan_sum(q: u64, n: u64) -> Result<i64> {
    check_qn(q, n)?;
    Ok(ramanujan_closed_form(q, n))
}

fn ramanujan_closed_form(q: u64, n: u64) -> i64 {
    let d = q / gcd_unchecked(q, n);
    let fd = factorize(d).expect("d >= 1");
    let mu = moebius_of(&fd);
    if mu == 0 {
        return 0;
    }
    let phi_q = totient_of(q, &factorize(q).expect("q >= 1"));
    let phi_d = totient_of(d, &fd);
    i64::from(mu) * (phi_q / phi_d) as i64
}

/// `c_q(n)` as the literal sum of `exp(2 pi i p n / q)` over the residues
/// `1 <= p <= q` coprime to `q`.
pub fn ramanujan_sum_direct(q: u64, n: u64) -> Result<Complex64> {
    check_qn(q, n)?;
    // Reduce p*n mod q in integers so the phase argument stays small.
    let sum = (1..=q)
        .filter(|&p| gcd_unchecked(p, q) == 1)
        .map(|p| {
            let r = ((p as u128 * n as u128) % q as u128) as f64;
            Complex64::from_polar(1.0, 2.0 * PI * r / q as f64)
        })
        .sum();
    Ok(sum)
}

fn check_qn(q: u64, n: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::invalid("Ramanujan sum order q must be >= 1"));
    }
    if n == 0 {
        return Err(Error::invalid("Ramanujan sum index n must be >= 1"));
    }
    Ok(())
}

/// Precomputed `c_q(n)` for `q = 1..=max_order`, one period per order.
///
/// `c_q` is periodic in `n` with period `q`, so row `q` stores the `q` values
/// indexed by `n mod q`.
#[derive(Debug, Clone)]
pub struct RamanujanTable {
    rows: Vec<Vec<i64>>,
    totients: Vec<u64>,
}

impl RamanujanTable {
    pub fn new(max_order: usize) -> Result<Self> {
        if max_order == 0 {
            return Err(Error::invalid("table order must be >= 1"));
        }
        let mut rows = Vec::with_capacity(max_order);
        let mut totients = Vec::with_capacity(max_order);
        for q in 1..=max_order as u64 {
            // residue 0 is n = q
            let row = (0..q)
                .map(|r| ramanujan_closed_form(q, if r == 0 { q } else { r }))
                .collect();
            rows.push(row);
            totients.push(totient_of(q, &factorize(q)?));
        }
        Ok(Self { rows, totients })
    }

    pub fn max_order(&self) -> usize {
        self.rows.len()
    }

    /// `c_q(n)`; panics if `q` is outside `1..=max_order`.
    pub fn get(&self, q: usize, n: u64) -> i64 {
        let row = &self.rows[q - 1];
        row[(n % q as u64) as usize]
    }

    pub fn totient(&self, q: usize) -> u64 {
        self.totients[q - 1]
    }

    /// One period of `c_q`, indexed by `n mod q`.
    pub fn period(&self, q: usize) -> &[i64] {
        &self.rows[q - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_prime_brute(n: u64) -> bool {
        n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
    }

    fn gcd_brute(a: u64, b: u64) -> u64 {
        (1..=a.max(b)).rev().find(|d| a.is_multiple_of(*d) && b.is_multiple_of(*d)).unwrap()
    }

    fn totient_brute(q: u64) -> u64 {
        (1..=q).filter(|&k| gcd_brute(k, q) == 1).count() as u64
    }

    fn divisors(n: u64) -> impl Iterator<Item = u64> {
        (1..=n).filter(move |d| n.is_multiple_of(*d))
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(is_prime_brute(97));
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_invariants() {
        for n in 1..=2000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            let ps: Vec<u64> = f.primes().collect();
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
            assert!(ps.iter().all(|&p| is_prime_brute(p)));
            assert!(f.factors().iter().all(|&(_, e)| e >= 1));
        }
        let big = 999_983u64 * 2 * 2;
        assert_eq!(factorize(big).unwrap().factors(), &[(2, 2), (999_983, 1)]);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(6, 4).unwrap(), 2);
        assert_eq!(gcd(7, 1).unwrap(), 1);
        assert_eq!(gcd(12, 18).unwrap(), gcd_brute(12, 18));
        assert_eq!(gcd(12, 18).unwrap(), 6);
        assert_eq!(gcd(0, 5).unwrap(), 5);
        assert!(gcd(0, 0).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(6).unwrap(), totient_brute(6));
        assert_eq!(totient(6).unwrap(), 2);
        assert_eq!(totient(10).unwrap(), 4);
        assert!(totient(0).is_err());
        for q in 1..=300 {
            assert_eq!(totient(q).unwrap(), totient_brute(q), "q = {q}");
        }
    }

    #[test]
    fn divisor_identities() {
        for n in 1..=1000u64 {
            let phi_sum: u64 = divisors(n).map(|d| totient(d).unwrap()).sum();
            assert_eq!(phi_sum, n);
            let mu_sum: i64 = divisors(n).map(|d| i64::from(moebius(d).unwrap())).sum();
            assert_eq!(mu_sum, i64::from(n == 1));
        }
    }

    #[test]
    fn ramanujan_sum_examples() {
        for n in 1..=20 {
            assert_eq!(ramanujan_sum(1, n).unwrap(), 1);
            assert_eq!(ramanujan_sum(2, n).unwrap(), if n % 2 == 0 { 1 } else { -1 });
        }
        let c4: Vec<i64> = (1..=8).map(|n| ramanujan_sum(4, n).unwrap()).collect();
        assert_eq!(c4, vec![0, -2, 0, 2, 0, -2, 0, 2]);
        assert!(ramanujan_sum(0, 1).is_err());
        assert!(ramanujan_sum(1, 0).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let c = ramanujan_sum_direct(1, 5).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let c = ramanujan_sum_direct(3, 3).unwrap();
        assert!((c - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let c = ramanujan_sum_direct(5, 1).unwrap();
        assert!((c - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        for q in 1..=50 {
            for n in 1..=50 {
                let exact = ramanujan_sum(q, n).unwrap() as f64;
                let direct = ramanujan_sum_direct(q, n).unwrap();
                assert!((exact - direct.re).abs() < 1e-9, "q={q} n={n}");
                assert!(direct.im.abs() < 1e-9, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn orthogonality_and_first_value() {
        for q in 1..=100u64 {
            let sq: i64 = (1..=q).map(|n| ramanujan_sum(q, n).unwrap().pow(2)).sum();
            assert_eq!(sq as u64, q * totient(q).unwrap());
            assert_eq!(ramanujan_sum(q, 1).unwrap(), i64::from(moebius(q).unwrap()));
        }
    }

    #[test]
    fn table_matches_closed_form() {
        let table = RamanujanTable::new(40).unwrap();
        for q in 1..=40usize {
            assert_eq!(table.totient(q), totient(q as u64).unwrap());
            for n in 1..=200u64 {
                assert_eq!(table.get(q, n), ramanujan_sum(q as u64, n).unwrap());
            }
        }
        assert!(RamanujanTable::new(0).is_err());
    }

    #[test]
    fn multiplicative_for_coprime_orders() {
        for q in 1..=100u64 {
            for q2 in (1..=100 / q).filter(|&q2| gcd_brute(q, q2) == 1) {
                for n in 1..=100 {
                    assert_eq!(
                        ramanujan_sum(q * q2, n).unwrap(),
                        ramanujan_sum(q, n).unwrap() * ramanujan_sum(q2, n).unwrap()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn periodic_in_n(q in 1u64..200, n in 1u64..10_000) {
            prop_assert_eq!(ramanujan_sum(q, n).unwrap(), ramanujan_sum(q, n + q).unwrap());
        }
    }
}
