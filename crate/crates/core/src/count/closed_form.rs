use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::num::Count;

/// Proper `q`-colorings of the cycle `C_len`: `(q-1)^len + (-1)^len (q-1)`.
pub fn cycle_chrom_formula(len: u32, q: u64) -> Result<Count> {
    if len < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {len} < 3")));
    }
    let base: BigInt = BigInt::from(q) - 1;
    let sign = if len.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let value = base.pow(len) + sign * base;
    Ok(Count(value.to_biguint().expect("nonnegative for q >= 0")))
}

/// Independent sets of the path on `n` vertices: the Fibonacci number
/// `F_{n+2}` with `F_0 = 0, F_1 = 1`.
pub fn path_ind_fib(n: u32) -> Result<Count> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "path needs at least one vertex".into(),
        ));
    }
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n + 2 {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(Count(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle_chrom_formula(4, 3).unwrap(), Count::from(18u64));
        assert_eq!(cycle_chrom_formula(3, 2).unwrap(), Count::from(0u64));
        assert_eq!(cycle_chrom_formula(4, 2).unwrap(), Count::from(2u64));
        assert_eq!(cycle_chrom_formula(5, 0).unwrap(), Count::from(0u64));
        assert_eq!(cycle_chrom_formula(6, 1).unwrap(), Count::from(0u64));
        assert!(cycle_chrom_formula(2, 3).is_err());
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(path_ind_fib(1).unwrap(), Count::from(2u64));
        assert_eq!(path_ind_fib(2).unwrap(), Count::from(3u64));
        assert_eq!(path_ind_fib(4).unwrap(), Count::from(8u64));
        assert_eq!(path_ind_fib(25).unwrap(), Count::from(196418u64));
        assert!(path_ind_fib(0).is_err());
    }
}
