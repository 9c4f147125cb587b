//! Bell numbers from Stirling numbers of the second kind and singleton-free
//! Bell numbers by inclusion-exclusion, checked against the table.

use num_bigint::{BigInt, BigUint};
use pekr_core::counting::build_table;

fn stirling_bell(n_max: usize) -> Vec<BigUint> {
    // S(n, k) = k S(n-1, k) + S(n-1, k-1)
    let mut row = vec![BigUint::from(1u32)];
    let mut bell = vec![BigUint::from(1u32)];
    for n in 1..=n_max {
        let mut next = vec![BigUint::from(0u32); n + 1];
        for k in 1..=n {
            let keep = if k < row.len() {
                &row[k] * k
            } else {
                BigUint::from(0u32)
            };
            next[k] = keep + &row[k - 1];
        }
        bell.push(next.iter().sum());
        row = next;
    }
    bell
}

fn binom(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn bell_numbers_match_stirling_sums() {
    let table = build_table(40);
    let oracle = stirling_bell(40);
    for (n, b) in oracle.iter().enumerate() {
        assert_eq!(table.bell(n).unwrap().as_biguint(), b, "n={}", n);
    }
    assert_eq!(table.bell(25).unwrap().to_string(), "4638590332229999353");
}

#[test]
fn singleton_free_by_inclusion_exclusion() {
    let table = build_table(40);
    let bell = stirling_bell(40);
    for n in 0..=40 {
        // Σ_k (-1)^k C(n,k) B_{n-k}
        let v: BigInt = (0..=n)
            .map(|k| {
                let term = BigInt::from(binom(n, k) * &bell[n - k]);
                if k % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        assert_eq!(
            BigInt::from(table.bell_sf(n).unwrap().as_biguint().clone()),
            v,
            "n={}",
            n
        );
    }
}
