//! Arithmetic modulo a word-sized prime and incremental row echelon forms.

use rand::Rng;

/// Montgomery arithmetic for an odd modulus below 2^62. Values are kept in
/// Montgomery form; zero is represented by zero.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    p: u64,
    /// -p^{-1} mod 2^64
    neg_inv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62), "modulus must be odd and below 2^62");
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Converts a residue into Montgomery form.
    pub fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Montgomery form in and out).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Uniform random element in Montgomery form.
    pub fn random(&self, rng: &mut impl Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^62 - 2^40, 2^62)`.
pub fn random_prime(rng: &mut impl Rng) -> u64 {
    let hi = 1u64 << 62;
    let lo = hi - (1u64 << 40);
    loop {
        let c = rng.gen_range(lo..hi) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Row echelon basis over F_p, grown one row at a time. Stored rows have a
/// unit pivot and zeros before it.
pub struct Echelon<'a> {
    f: &'a Montgomery,
    width: usize,
    rows: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl<'a> Echelon<'a> {
    pub fn new(f: &'a Montgomery, width: usize) -> Self {
        Echelon {
            f,
            width,
            rows: vec![None; width],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` against the basis and keeps it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        let f = self.f;
        for j in 0..self.width {
            let c = row[j];
            if c == 0 {
                continue;
            }
            match &self.rows[j] {
                Some(b) => {
                    for (x, &y) in row[j..].iter_mut().zip(&b[j..]) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(c, y));
                        }
                    }
                }
                None => {
                    let inv = f.inv(c);
                    for x in row[j..].iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    self.rows[j] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Basis of the left null space of an `n x d` matrix `u` given by rows:
/// returns `(n - rank) x n` rows `q` with `q u = 0`, or `None` if `u` does
/// not have full column rank.
pub fn left_annihilator(f: &Montgomery, u: &[Vec<u64>], d: usize) -> Option<Vec<Vec<u64>>> {
    let n = u.len();
    // Row-reduce the transpose (d x n).
    let mut t: Vec<Vec<u64>> = (0..d).map(|c| (0..n).map(|r| u[r][c]).collect()).collect();
    let mut pivots = Vec::with_capacity(d);
    let mut row = 0;
    for col in 0..n {
        if row == d {
            break;
        }
        let Some(p) = (row..d).find(|&r| t[r][col] != 0) else {
            continue;
        };
        t.swap(row, p);
        let inv = f.inv(t[row][col]);
        for x in t[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..d {
            if r != row && t[r][col] != 0 {
                let c = t[r][col];
                let (src, dst) = if r < row {
                    let (a, b) = t.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = t.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (x, &y) in dst.iter_mut().zip(src.iter()) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < d {
        return None;
    }
    let one = f.one();
    let mut q = Vec::with_capacity(n - d);
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u64; n];
        x[free] = one;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = f.neg(t[i][free]);
        }
        q.push(x);
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn miller_rabin_known_values() {
        let primes = [2u64, 3, 5, 97, 1_000_000_007, (1 << 61) - 1, 4_611_686_018_427_387_847];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        let composites = [1u64, 4, 561, 1_000_000_007 * 3, 3_215_031_751, (1 << 62) - 1];
        for c in composites {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "{n}");
        }
    }

    #[test]
    fn montgomery_matches_u128() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_prime(&mut rng);
        assert!(p > 1 << 61);
        let f = Montgomery::new(p);
        for _ in 0..1000 {
            let a = rng.gen_range(0..p);
            let b = rng.gen_range(0..p);
            let want = mul_mod(a, b, p);
            let got = f.from_mont(f.mul(f.to_mont(a), f.to_mont(b)));
            assert_eq!(got, want);
            if a != 0 {
                let ia = f.inv(f.to_mont(a));
                assert_eq!(f.from_mont(f.mul(ia, f.to_mont(a))), 1);
            }
        }
    }

    #[test]
    fn echelon_rank() {
        let f = Montgomery::new(1_000_000_007);
        let m = |x: u64| f.to_mont(x);
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(vec![m(1), m(2), m(3)]));
        assert!(e.insert(vec![m(2), m(4), m(7)]));
        assert!(!e.insert(vec![m(3), m(6), m(10)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn annihilator_kills_columns() {
        let f = Montgomery::new(1_000_000_007);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u: Vec<Vec<u64>> = (0..5).map(|_| (0..2).map(|_| f.random(&mut rng)).collect()).collect();
        let q = left_annihilator(&f, &u, 2).unwrap();
        assert_eq!(q.len(), 3);
        for row in &q {
            for c in 0..2 {
                let s = (0..5).fold(0, |acc, r| f.add(acc, f.mul(row[r], u[r][c])));
                assert_eq!(s, 0);
            }
        }
    }
}
