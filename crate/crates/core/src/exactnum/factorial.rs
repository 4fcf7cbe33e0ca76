use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

// Grows monotonically; a reader never observes a partially written entry.
static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// `n!` from a process-wide memo table.
pub fn factorial(n: usize) -> BigInt {
    {
        let table = FACTORIALS.read().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = FACTORIALS.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigInt::from(k);
        table.push(next);
    }
    table[n].clone()
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}
