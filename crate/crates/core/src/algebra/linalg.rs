#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(q: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let d = q.denom().mod_floor(&p).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = q.numer().mod_floor(&p).to_u64()?;
    Some(mul_mod(n, pow_mod(d, PRIME - 2)))
}

/// Rank of `A` modulo a fixed large prime, or `None` when some denominator
/// vanishes there. Never exceeds the rank over `ℚ`.
pub fn rank_mod_p(a: &[Vec<Rational>], ncols: usize) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r[..ncols].iter().map(reduce).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][col], PRIME - 2);
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let f = mul_mod(m[r][col], inv);
                for c in col..ncols {
                    let sub = mul_mod(f, m[rank][c]);
                    m[r][c] = (m[r][c] + PRIME - sub) % PRIME;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_bareiss(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a rational matrix by elimination.
pub fn det_rational(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let delta = &f * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s: Rational = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn cartan_a2() {
        assert_eq!(det_bareiss(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(det_bareiss(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn modular_rank() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        assert_eq!(rank_mod_p(&a, 3), Some(1));
        let b = vec![vec![rat(1, 3), int(1)], vec![int(0), rat(2, 7)]];
        assert_eq!(rank_mod_p(&b, 2), Some(2));
        let c = vec![vec![Rational::new(BigInt::one(), BigInt::from(PRIME))]];
        assert_eq!(rank_mod_p(&c, 1), None);
    }

    fn cofactor(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 1 {
            return a[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * cofactor(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn determinants_agree(n in 1usize..5, seed in prop::collection::vec(-4i64..=4, 16)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            let want = cofactor(&a);
            prop_assert_eq!(det_bareiss(&a), BigInt::from(want));
            let r: Vec<Vec<Rational>> = a.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
            prop_assert_eq!(det_rational(&r), int(want));
            let mut m = r.clone();
            prop_assert_eq!(rank_mod_p(&r, n), Some(rref(&mut m, n).len()));
        }
    }
}
