use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Möbius function; 0 on integers with a square factor.
pub fn mobius(mut n: usize) -> i32 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// For each `n` in `1..=counts.len()`, the residue mod `n` of
/// `sum_{d | n} mu(d) R(phi^(n/d))`. `counts[0]` is `R(phi)`.
pub fn congruence_check(counts: &[BigInt]) -> Vec<(usize, BigInt)> {
    (1..=counts.len())
        .map(|n| {
            let sum: BigInt = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| BigInt::from(mobius(d)) * &counts[n / d - 1])
                .sum();
            (n, sum.mod_floor(&BigInt::from(n)))
        })
        .collect()
}

pub fn congruences_hold(counts: &[BigInt]) -> bool {
    congruence_check(counts).iter().all(|(_, r)| r.is_zero())
}
