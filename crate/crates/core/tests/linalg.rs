use anntl::linalg::{homology_at, rational_rank, smith_normal_form, AbGroup, ChainComplex, IntMatrix};
use anntl::LinAlgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows)
        .prop_map(|v| IntMatrix::from_rows(&v).unwrap())
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let k = m.len();
    let mut total = BigInt::zero();
    for c in 0..k {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcd of all k×k minors.
fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

proptest! {
    #[test]
    fn factors_match_minor_oracle(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))) {
        let (f, rank) = smith_normal_form(&m);
        prop_assert_eq!(rank, f.len());
        prop_assert_eq!(rank, rational_rank(&m));
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let mut prod = BigInt::one();
        for k in 1..=rank {
            prod *= &f[k - 1];
            prop_assert_eq!(&prod, &minor_gcd(&m, k));
        }
        if rank < m.rows().min(m.cols()) {
            prop_assert!(minor_gcd(&m, rank + 1).is_zero());
        }
        prop_assert!(f.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn rank_matches_rationals(m in (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| matrix(r, c, 3))) {
        prop_assert_eq!(smith_normal_form(&m).1, rational_rank(&m));
        prop_assert_eq!(smith_normal_form(&m.transpose()).0, smith_normal_form(&m).0);
    }

    #[test]
    fn homology_survives_unimodular_changes(
        torsion in prop::collection::vec(1i64..6, 0..3),
        free in 0usize..3,
        killed in 0usize..3,
        ops in prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..25),
    ) {
        // Middle group Z^m with a = diag(torsion) into the first block and
        // b = identity on the `killed` block.
        let t = torsion.len();
        let m = t + free + killed;
        let mut a = IntMatrix::zeros(m, t);
        for (i, &d) in torsion.iter().enumerate() {
            a.set(i, i, BigInt::from(d));
        }
        let mut b = IntMatrix::zeros(killed, m);
        for i in 0..killed {
            b.set(i, t + free + i, BigInt::one());
        }
        let expect = AbGroup {
            free_rank: free,
            torsion: {
                let mut v: Vec<BigInt> = torsion.iter().filter(|&&d| d > 1).map(|&d| BigInt::from(d)).collect();
                v.sort();
                // Fold into a divisibility chain.
                let k = v.len();
                for i in 0..k {
                    for j in i + 1..k {
                        let g = v[i].gcd(&v[j]);
                        let l = v[i].lcm(&v[j]);
                        v[i] = g;
                        v[j] = l;
                    }
                }
                v.into_iter().filter(|d| !d.is_one()).collect()
            },
        };
        // Change basis in the middle: rows of a by U, columns of b by U^{-1}.
        for &(i, j, q) in &ops {
            if m < 2 { break; }
            let (i, j) = (i % m, j % m);
            if i == j { continue; }
            let q = BigInt::from(q);
            for c in 0..a.cols() {
                let v = a.get(i, c) + &q * a.get(j, c);
                a.set(i, c, v);
            }
            for r in 0..b.rows() {
                let v = b.get(r, j) - &q * b.get(r, i);
                b.set(r, j, v);
            }
        }
        prop_assert_eq!(homology_at(&a, &b).unwrap(), expect);
    }

    #[test]
    fn free_rank_matches_rank_nullity(
        b in (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c, 2)),
        k in 0usize..4,
    ) {
        // Incoming map: integer combinations of a kernel basis of b.
        let kernel = integer_kernel(&b);
        let cols = kernel.len().min(k);
        let mut a = IntMatrix::zeros(b.cols(), cols);
        for (c, v) in kernel.iter().take(cols).enumerate() {
            for (r, x) in v.iter().enumerate() {
                a.set(r, c, x * BigInt::from(c as i64 + 2));
            }
        }
        let h = homology_at(&a, &b).unwrap();
        let expect = b.cols() - rational_rank(&b) - rational_rank(&a);
        prop_assert_eq!(h.free_rank, expect);
    }
}

/// Kernel vectors of `b` from integer-scaled rational elimination.
fn integer_kernel(b: &IntMatrix) -> Vec<Vec<BigInt>> {
    use num_rational::BigRational;
    let (rows, cols) = (b.rows(), b.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigRational::from_integer(b.get(r, c).clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(row, p);
        let pv = a[row][c].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..rows {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..cols {
                    let v = &a[row][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.push(v.iter().map(|x| (x * &den).to_integer()).collect());
    }
    out
}

#[test]
fn chain_complex_checks_composition() {
    let d1 = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
    let d2 = IntMatrix::from_rows(&[vec![1], vec![1]]).unwrap();
    assert_eq!(ChainComplex::new(vec![1, 2, 1], vec![d1.clone(), d2]).err(), Some(LinAlgError::NotAComplex));
    let d2 = IntMatrix::from_rows(&[vec![2], vec![-2]]).unwrap();
    let c = ChainComplex::new(vec![1, 2, 1], vec![d1, d2]).unwrap();
    assert_eq!(c.homology(0).unwrap(), AbGroup::trivial());
    assert_eq!(c.homology(1).unwrap(), AbGroup::new(0, &[2]));
    assert_eq!(c.homology(2).unwrap(), AbGroup::trivial());
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::from(10u8).pow(40);
    let m = IntMatrix::from_rows(&[vec![big.clone(), BigInt::from(0)], vec![BigInt::from(0), big.clone() * 3]]).unwrap();
    let (f, r) = smith_normal_form(&m);
    assert_eq!(r, 2);
    assert_eq!(f, vec![big.clone(), big * 3]);
}
