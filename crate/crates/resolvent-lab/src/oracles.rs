//! Independent reference computations used to validate the fast paths:
//! literal lattice enumeration for representation and Weyl counts, a
//! modular-rank computation of harmonic-space dimensions (dim ker Δ on
//! homogeneous polynomials, no combinatorial identity involved), and a
//! cubic-time quadruple counter. These are deliberately written along
//! different algorithmic routes than the production code they check.

use std::collections::HashSet;

/// r_n(m) by literal enumeration of the box [−√m, √m]ⁿ.
pub fn brute_rep_count(dim: u32, m: u64) -> u64 {
    let s = (m.isqrt() + 1) as i64;
    let dim = dim as usize;
    let mut k = vec![-s; dim];
    let mut count = 0u64;
    'outer: loop {
        let q: i64 = k.iter().map(|&x| x * x).sum();
        if q as u64 == m {
            count += 1;
        }
        for i in 0..dim {
            if k[i] < s {
                k[i] += 1;
                continue 'outer;
            }
            k[i] = -s;
        }
        break;
    }
    count
}

/// N(λ) on the torus by literal enumeration: #{k ∈ ℤⁿ : 2π|k| ≤ λ}.
pub fn brute_torus_weyl(dim: u32, lambda: f64) -> u64 {
    let s = (lambda / (2.0 * std::f64::consts::PI)).floor() as i64 + 1;
    let dim = dim as usize;
    let mut k = vec![-s; dim];
    let mut count = 0u64;
    'outer: loop {
        let q: i64 = k.iter().map(|&x| x * x).sum();
        if 2.0 * std::f64::consts::PI * (q as f64).sqrt() <= lambda {
            count += 1;
        }
        for i in 0..dim {
            if k[i] < s {
                k[i] += 1;
                continue 'outer;
            }
            k[i] = -s;
        }
        break;
    }
    count
}

/// Ordered quadruples (a, b, c, d) with a + b = c + d, counted in O(N³)
/// by solving for d.
pub fn brute_quadruple_count(points: &[[i64; 3]]) -> u128 {
    let set: HashSet<[i64; 3]> = points.iter().copied().collect();
    let mut count = 0u128;
    for a in points {
        for b in points {
            for c in points {
                let d = [a[0] + b[0] - c[0], a[1] + b[1] - c[1], a[2] + b[2] - c[2]];
                if set.contains(&d) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Exponent vectors of the degree-k monomials in `vars` variables, in
/// lexicographic order.
fn monomials(vars: usize, k: u32) -> Vec<Vec<u32>> {
    fn go(vars: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            go(vars - 1, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of an integer matrix modulo a prime, by Gaussian elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let inv = |a: u64| powmod(a, p - 2);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let s = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = mulmod(*v, s);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..ncols {
                    let sub = mulmod(f, rows[rank][c]);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// dim of degree-k spherical harmonics on Sⁿ computed as
/// dim P_k − rank(Δ: P_k → P_{k−2}) over two large prime fields, where
/// P_k is the space of homogeneous degree-k polynomials in n+1 variables.
/// Surjectivity of Δ makes the difference the kernel dimension.
pub fn harmonic_dimension_by_rank(n: u32, k: u32) -> u64 {
    let vars = (n + 1) as usize;
    let cols = monomials(vars, k);
    if k < 2 {
        return cols.len() as u64;
    }
    let rows_idx = monomials(vars, k - 2);
    let row_of = |m: &[u32]| rows_idx.iter().position(|r| r == m).expect("image monomial");
    let mut matrix = vec![vec![0u64; cols.len()]; rows_idx.len()];
    for (j, alpha) in cols.iter().enumerate() {
        for i in 0..vars {
            if alpha[i] >= 2 {
                let coeff = u64::from(alpha[i]) * u64::from(alpha[i] - 1);
                let mut beta = alpha.clone();
                beta[i] -= 2;
                matrix[row_of(&beta)][j] += coeff;
            }
        }
    }
    let p1 = (1u64 << 61) - 1;
    let p2 = (1u64 << 31) - 1;
    let m1: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| v % p1).collect())
        .collect();
    let m2: Vec<Vec<u64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| v % p2).collect())
        .collect();
    let r1 = rank_mod_p(m1, p1);
    let r2 = rank_mod_p(m2, p2);
    assert_eq!(r1, r2, "rank disagrees between prime fields");
    (cols.len() - r1) as u64
}
