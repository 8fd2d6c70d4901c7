//! Binomial coefficients and the stepped sums `s_ℓ(n) = Σ_{i=0}^{⌊n/2⌋} C(n-2i, ℓ)`
//! that the Terwilliger dimension formulas are written in.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::rational::{q, Rational};

/// `C(n, k)`, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `s_ℓ(n)` by direct summation.
pub fn s_ell(ell: u64, n: u64) -> u64 {
    (0..=n / 2).map(|i| binom(n - 2 * i, ell)).sum()
}

/// `C(n+1, ℓ+1)/2 + (1/4) Σ_{i<ℓ} (-1/2)^i C(n+1, ℓ-i)`, the part of the
/// closed form shared by both variants.
fn closed_form_body(ell: u64, n: u64) -> Rational {
    let mut acc = Rational::from(binom(n + 1, ell + 1)) * q(1, 2);
    let mut weight = q(1, 4);
    for i in 0..ell {
        acc += &weight * &Rational::from(binom(n + 1, ell - i));
        weight = &weight * &q(-1, 2);
    }
    acc
}

/// Closed form of `s_ℓ(n)` with the exact parity correction
/// `(-1)^ℓ / 2^{ℓ+1}` for even `n`.
pub fn s_closed_exact(ell: u64, n: u64) -> Rational {
    let body = closed_form_body(ell, n);
    if n.is_multiple_of(2) {
        let sign = if ell.is_multiple_of(2) { 1 } else { -1 };
        let correction = Rational::from(sign) * Rational::from(2).pow(ell as u32 + 1).inv().expect("nonzero");
        body + correction
    } else {
        body
    }
}

/// Closed form of `s_ℓ(n)` by rounding: ceiling for even `ℓ`, floor for odd.
pub fn s_closed_rounded(ell: u64, n: u64) -> u64 {
    let body = closed_form_body(ell, n);
    let r: BigInt = if ell.is_multiple_of(2) { body.ceil() } else { body.floor() };
    r.to_u64().expect("nonnegative and small")
}

/// Pascal triangle and `s_ℓ(n)` table, filled once and then read-only.
#[derive(Clone, Debug)]
pub struct BinomialTables {
    pascal: Vec<Vec<u64>>,
    s: Vec<Vec<u64>>,
}

impl BinomialTables {
    /// Tables for `0 <= n <= n_max` and `0 <= ℓ <= ell_max`.
    pub fn new(n_max: usize, ell_max: usize) -> Self {
        let mut pascal: Vec<Vec<u64>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
            }
            pascal.push(row);
        }
        let mut tables = BinomialTables { pascal, s: Vec::new() };
        tables.s = (0..=ell_max)
            .map(|ell| (0..=n_max).map(|n| (0..=n / 2).map(|i| tables.binom(n - 2 * i, ell)).sum()).collect())
            .collect();
        tables
    }

    pub fn binom(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.pascal[n][k]
        }
    }

    pub fn s(&self, ell: usize, n: usize) -> u64 {
        self.s[ell][n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: u64,
    pub ell: Option<u64>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(identity: &str, n: u64, ell: Option<u64>, lhs: impl Into<Rational>, rhs: impl Into<Rational>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        IdentityCheck { identity: identity.to_string(), n, ell, pass: lhs == rhs, lhs, rhs }
    }
}

pub const ELL_MAX: u64 = 6;

/// Checks, for every `n <= n_max` and `ℓ <= 6`: the three sum identities on
/// squares and binomials, both two-term recurrences of `s_ℓ`, and both
/// closed forms of `s_ℓ`.
pub fn verify_binomial_identities(n_max: u64) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let sq_even: u64 = (0..=n / 2).map(|i| (n - 2 * i).pow(2)).sum();
        out.push(IdentityCheck::new("Σ(n-2i)^2 = C(n+2,3)", n, None, sq_even, binom(n + 2, 3)));
        let sq_all: u64 = (0..=n).map(|i| (n - i).pow(2)).sum();
        out.push(IdentityCheck::new(
            "Σ(n-i)^2 = C(n+2,3)+C(n+1,3)",
            n,
            None,
            sq_all,
            binom(n + 2, 3) + binom(n + 1, 3),
        ));
        for ell in 0..=ELL_MAX {
            let hockey: u64 = (0..=n).map(|i| binom(i, ell)).sum();
            out.push(IdentityCheck::new("ΣC(i,ℓ) = C(n+1,ℓ+1)", n, Some(ell), hockey, binom(n + 1, ell + 1)));
            out.push(IdentityCheck::new(
                "s_{ℓ+1}(n+1)+s_{ℓ+1}(n) = C(n+2,ℓ+2)",
                n,
                Some(ell),
                s_ell(ell + 1, n + 1) + s_ell(ell + 1, n),
                binom(n + 2, ell + 2),
            ));
            out.push(IdentityCheck::new(
                "s_{ℓ+1}(n+1)-s_{ℓ+1}(n) = s_ℓ(n)",
                n,
                Some(ell),
                s_ell(ell + 1, n + 1) - s_ell(ell + 1, n),
                s_ell(ell, n),
            ));
            out.push(IdentityCheck::new(
                "s_ℓ(n) = exact closed form",
                n,
                Some(ell),
                Rational::from(s_ell(ell, n)),
                s_closed_exact(ell, n),
            ));
            out.push(IdentityCheck::new(
                "s_ℓ(n) = rounded closed form",
                n,
                Some(ell),
                s_ell(ell, n),
                s_closed_rounded(ell, n),
            ));
        }
    }
    out
}
