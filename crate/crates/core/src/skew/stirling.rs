//! Memoized Stirling numbers.
//!
//! `T^j = Σ_i S(j,i) z^i ∂^i` (second kind) and
//! `z^n ∂^n = T(T-1)…(T-n+1) = Σ_k s(n,k) T^k` (signed first kind).

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

struct Table {
    rows: Vec<Vec<BigInt>>,
    next: fn(&[Vec<BigInt>], usize, usize) -> BigInt,
}

impl Table {
    fn new(next: fn(&[Vec<BigInt>], usize, usize) -> BigInt) -> Self {
        Self {
            rows: vec![vec![BigInt::one()]],
            next,
        }
    }

    fn get(&mut self, n: usize, k: usize) -> BigInt {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let row = (0..=m).map(|k| (self.next)(&self.rows, m, k)).collect();
            self.rows.push(row);
        }
        self.rows[n].get(k).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn at(rows: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
    rows.get(n)
        .and_then(|r| r.get(k))
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

fn second_kind_step(rows: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
    // S(n,k) = k S(n-1,k) + S(n-1,k-1)
    if k == 0 {
        return BigInt::zero();
    }
    BigInt::from(k) * at(rows, n - 1, k) + at(rows, n - 1, k - 1)
}

fn first_kind_step(rows: &[Vec<BigInt>], n: usize, k: usize) -> BigInt {
    // s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
    if k == 0 {
        return BigInt::zero();
    }
    at(rows, n - 1, k - 1) - BigInt::from(n - 1) * at(rows, n - 1, k)
}

fn second() -> &'static Mutex<Table> {
    static T: OnceLock<Mutex<Table>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(Table::new(second_kind_step)))
}

fn first() -> &'static Mutex<Table> {
    static T: OnceLock<Mutex<Table>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(Table::new(first_kind_step)))
}

pub fn stirling_second(n: usize, k: usize) -> BigInt {
    second().lock().expect("stirling table poisoned").get(n, k)
}

pub fn stirling_first_signed(n: usize, k: usize) -> BigInt {
    first().lock().expect("stirling table poisoned").get(n, k)
}
