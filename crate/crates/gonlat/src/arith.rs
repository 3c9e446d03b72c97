//! Exact integer and rational arithmetic shared by the enumeration kernels.
//!
//! Every bound in the search routines is computed here over `BigRational`
//! or plain integers; no floating point enters any comparison.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// gcd of a slice, ignoring signs. Returns 0 for an all-zero slice.
pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Extended gcd: `(g, x, y)` with `a*x + b*y = g` and `g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// floor(sqrt(n)) for n >= 0.
pub fn isqrt_floor(n: i64) -> i64 {
    debug_assert!(n >= 0);
    n.sqrt()
}

/// ceil(sqrt(n)), with non-positive n mapping to 0.
pub fn isqrt_ceil(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let r = n.sqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// floor(sqrt(x)) of a nonnegative rational.
///
/// Uses floor(sqrt(p/q)) = floor(floor(sqrt(p*q)) / q), valid for p >= 0, q > 0.
pub fn floor_sqrt_rat(x: &BigRational) -> BigInt {
    debug_assert!(!x.is_negative());
    let p = x.numer();
    let q = x.denom();
    (p * q).sqrt() / q
}

/// Largest integer m with m <= c + sqrt(s), for s >= 0.
pub fn floor_plus_sqrt(c: &BigRational, s: &BigRational) -> BigInt {
    debug_assert!(!s.is_negative());
    let mut m = c.floor().to_integer() + floor_sqrt_rat(s);
    // The initial guess is never above the target and at most 2 below it.
    loop {
        let next: BigInt = &m + 1;
        let diff = BigRational::from_integer(next.clone()) - c;
        if !diff.is_positive() || &diff * &diff <= *s {
            m = next;
        } else {
            return m;
        }
    }
}

/// Smallest integer m with m >= c - sqrt(s), for s >= 0.
pub fn ceil_minus_sqrt(c: &BigRational, s: &BigRational) -> BigInt {
    -floor_plus_sqrt(&-c.clone(), s)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact inverse of an integer matrix over the rationals, by Gauss-Jordan.
/// Returns `None` when the matrix is singular.
pub fn invert_exact(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
        .collect();
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot_row);
        inv.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &pivot;
            inv[k][j] = &inv[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = &a[k][j] * &f;
                a[i][j] = &a[i][j] - t;
                let t = &inv[k][j] * &f;
                inv[i][j] = &inv[i][j] - t;
            }
        }
    }
    Some(inv)
}

/// LDL^T factorization of a positive definite integer matrix, kept exact
/// over the rationals. `lower` stores the strictly lower part of the unit
/// triangular factor.
#[derive(Debug, Clone)]
pub struct Ldl {
    pub dim: usize,
    pub lower: Vec<Vec<BigRational>>,
    pub diag: Vec<BigRational>,
}

impl Ldl {
    /// Returns `None` when a pivot fails to be positive, i.e. the form is
    /// not positive definite.
    pub fn decompose(q: &[Vec<i64>]) -> Option<Ldl> {
        let n = q.len();
        let mut a: Vec<Vec<BigRational>> = q
            .iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect();
        let mut lower = vec![vec![BigRational::zero(); n]; n];
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            let pivot = a[k][k].clone();
            if !pivot.is_positive() {
                return None;
            }
            for i in k + 1..n {
                lower[i][k] = &a[i][k] / &pivot;
            }
            for i in k + 1..n {
                for j in k + 1..=i {
                    let t = &lower[i][k] * &a[k][j];
                    a[i][j] = &a[i][j] - t;
                    if i != j {
                        a[j][i] = a[i][j].clone();
                    }
                }
            }
            diag.push(pivot);
        }
        Some(Ldl { dim: n, lower, diag })
    }

    /// Solves Q x = b exactly.
    pub fn solve(&self, b: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim;
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = &self.lower[i][k] * &y[k];
                y[i] = &y[i] - t;
            }
        }
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = &*yi / &self.diag[i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = &self.lower[k][i] * &y[k];
                y[i] = &y[i] - t;
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(g, a.gcd(&b));
                assert_eq!(a * x + b * y, g, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(isqrt_floor(48), 6);
        assert_eq!(isqrt_ceil(48), 7);
        assert_eq!(isqrt_ceil(49), 7);
        assert_eq!(isqrt_ceil(0), 0);
        assert_eq!(floor_sqrt_rat(&ratio(9, 4)), BigInt::from(1));
        assert_eq!(floor_sqrt_rat(&ratio(25, 4)), BigInt::from(2));
        assert_eq!(floor_sqrt_rat(&rat(49)), BigInt::from(7));
    }

    #[test]
    fn interval_bounds_are_exact_at_integer_endpoints() {
        // c + sqrt(s) = 1/2 + 3/2 = 2 exactly
        assert_eq!(floor_plus_sqrt(&ratio(1, 2), &ratio(9, 4)), BigInt::from(2));
        // c - sqrt(s) = 1/2 - 3/2 = -1 exactly
        assert_eq!(ceil_minus_sqrt(&ratio(1, 2), &ratio(9, 4)), BigInt::from(-1));
        // s = 0 collapses to ceil/floor of c
        assert_eq!(floor_plus_sqrt(&ratio(7, 3), &rat(0)), BigInt::from(2));
        assert_eq!(ceil_minus_sqrt(&ratio(7, 3), &rat(0)), BigInt::from(3));
        // irrational radius
        assert_eq!(floor_plus_sqrt(&rat(0), &rat(2)), BigInt::from(1));
        assert_eq!(ceil_minus_sqrt(&rat(0), &rat(2)), BigInt::from(-1));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(det_exact(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det_exact(&[vec![2]]), BigInt::from(2));
        assert_eq!(
            det_exact(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]),
            BigInt::from(4)
        );
        assert_eq!(det_exact(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![0, 1], vec![1, 0]];
        let inv = invert_exact(&m).unwrap();
        assert_eq!(inv[0][0], rat(0));
        assert_eq!(inv[0][1], rat(1));
        assert!(invert_exact(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn ldl_solves_positive_definite_systems() {
        let q = vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]];
        let ldl = Ldl::decompose(&q).unwrap();
        let b = [rat(1), rat(0), rat(1)];
        let x = ldl.solve(&b);
        // check Q x = b
        for i in 0..3 {
            let mut acc = BigRational::zero();
            for j in 0..3 {
                acc += rat(q[i][j]) * &x[j];
            }
            assert_eq!(acc, b[i]);
        }
        // an indefinite form is rejected
        assert!(Ldl::decompose(&[vec![0, 1], vec![1, 0]]).is_none());
    }
}
