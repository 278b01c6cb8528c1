//! Fast exact solver for large square integer systems.
//!
//! Dixon p-adic lifting: invert the matrix once modulo a word-sized prime,
//! lift the solution digit by digit, reconstruct rationals, then certify the
//! candidate by an exact residual check. Everything stays in integer
//! arithmetic; a failed certification falls back to plain rational
//! elimination, so results are always exact.

use crate::linalg::{self, QMatrix};
use crate::rat::{denominator_lcm, Q};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

const P: u64 = (1 << 61) - 1; // Mersenne prime

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a % P, P - 2)
}

fn bigint_mod(x: &BigInt) -> u64 {
    let m = (x % BigInt::from(P) + BigInt::from(P)) % BigInt::from(P);
    m.to_u64().unwrap()
}

/// Inverse of an integer matrix modulo `P`, or `None` if singular mod `P`.
fn invert_mod(a: &[Vec<i64>]) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|&v| v.rem_euclid(P as i64) as u64).collect())
        .collect();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(c, p);
        inv.swap(c, p);
        let pinv = invmod(m[c][c]);
        for j in 0..n {
            m[c][j] = mulmod(m[c][j], pinv);
            inv[c][j] = mulmod(inv[c][j], pinv);
        }
        for r in 0..n {
            if r != c && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..n {
                    let s = mulmod(f, m[c][j]);
                    m[r][j] = (m[r][j] + P - s) % P;
                    let s = mulmod(f, inv[c][j]);
                    inv[r][j] = (inv[r][j] + P - s) % P;
                }
            }
        }
    }
    Some(inv)
}

/// Rational reconstruction of `x mod m` with `|num|, den <= sqrt(m/2)`.
fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = {
        let half = m / BigInt::from(2);
        half.sqrt()
    };
    let (mut r0, mut r1) = (m.clone(), ((x % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let num = if t1.sign() == Sign::Minus { -r1 } else { r1.clone() };
    let den = t1.abs();
    if den > bound {
        return None;
    }
    Some(Q::new(num, den))
}

/// Cached solver for a fixed square integer matrix.
pub struct DixonSolver {
    a: Vec<Vec<i64>>,
    inv_mod_p: Vec<Vec<u64>>,
    /// retained for the exact fallback path
    a_exact: QMatrix,
}

impl DixonSolver {
    /// `None` when the matrix is singular mod P; callers should then decide
    /// singularity with exact arithmetic.
    pub fn new(a: Vec<Vec<i64>>) -> Option<Self> {
        let inv = invert_mod(&a)?;
        let a_exact = QMatrix::from_rows(
            a.iter()
                .map(|r| r.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect())
                .collect(),
        );
        Some(DixonSolver { a, inv_mod_p: inv, a_exact })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Solves `A x = b` for rational `b`, exactly (certified).
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let l = denominator_lcm(b);
        let bi: Vec<BigInt> = b
            .iter()
            .map(|x| (x * Q::from_integer(l.clone())).to_integer())
            .collect();
        let digits = self.lift(&bi, 16.max(4 * n));
        if let Some(x) = digits {
            let sol: Vec<Q> = x
                .into_iter()
                .map(|v| v / Q::from_integer(l.clone()))
                .collect();
            // certify
            let lhs = self.a_exact.mat_vec(&sol);
            if lhs.iter().zip(b).all(|(u, v)| u == v) {
                return Some(sol);
            }
        }
        // exact fallback
        linalg::solve(&self.a_exact, b).ok().flatten()
    }

    /// p-adic lifting; reconstruction attempted at doubling step counts.
    fn lift(&self, b: &[BigInt], max_steps: usize) -> Option<Vec<Q>> {
        let n = self.n();
        let pbig = BigInt::from(P);
        let mut r: Vec<BigInt> = b.to_vec();
        let mut x: Vec<BigInt> = vec![BigInt::zero(); n];
        let mut pk = BigInt::one();
        let mut step = 0;
        let mut next_try = 8;
        loop {
            // digit = inv_mod_p * (r mod p)
            let rm: Vec<u64> = r.iter().map(bigint_mod).collect();
            let digit: Vec<u64> = (0..n)
                .map(|i| {
                    let mut acc: u128 = 0;
                    let row = &self.inv_mod_p[i];
                    for j in 0..n {
                        acc += row[j] as u128 * rm[j] as u128 % P as u128;
                    }
                    (acc % P as u128) as u64
                })
                .collect();
            for i in 0..n {
                x[i] += &pk * BigInt::from(digit[i]);
            }
            // r = (r - A * digit) / p
            for i in 0..n {
                let mut acc = BigInt::zero();
                let row = &self.a[i];
                for j in 0..n {
                    if row[j] != 0 {
                        acc += BigInt::from(row[j]) * BigInt::from(digit[j]);
                    }
                }
                let num = &r[i] - acc;
                debug_assert!((&num % &pbig).is_zero());
                r[i] = num / &pbig;
            }
            pk *= &pbig;
            step += 1;
            if step >= next_try || step >= max_steps {
                next_try *= 2;
                let cand: Option<Vec<Q>> = x
                    .iter()
                    .map(|xi| rational_reconstruct(xi, &pk))
                    .collect();
                if let Some(c) = cand {
                    return Some(c);
                }
                if step >= max_steps {
                    return None;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    #[test]
    fn lifts_small_systems() {
        let a = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        let s = DixonSolver::new(a).unwrap();
        let b = vec![q(1, 3), qi(2), q(-5, 7)];
        let x = s.solve(&b).unwrap();
        let ax = s.a_exact.mat_vec(&x);
        assert_eq!(ax, b);
    }

    #[test]
    fn agrees_with_exact_gauss_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let n = 8;
            let a: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-40..40)).collect()).collect();
            let Some(s) = DixonSolver::new(a.clone()) else { continue };
            let b: Vec<Q> = (0..n).map(|_| qi(rng.gen_range(-99..99))).collect();
            let fast = s.solve(&b);
            let slow = linalg::solve(&s.a_exact, &b).unwrap();
            assert_eq!(fast, slow);
        }
    }
}
