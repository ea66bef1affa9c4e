//! Dense polynomials over a prime field `Z/p` with `p < 2^32`, low degree first.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

pub(crate) type PolyP = Vec<u64>;

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 32));
        Zp { p }
    }

    #[cfg(test)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &PolyP) -> usize {
        a.len().saturating_sub(1)
    }

    #[cfg(test)]
    pub fn padd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(r)
    }

    pub fn psub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(r)
    }

    pub fn pmul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        self.trim(r)
    }

    pub fn scale(&self, a: &PolyP, k: u64) -> PolyP {
        self.trim(a.iter().map(|&c| self.mul(c, k)).collect())
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Quotient and remainder of `a / b`, `b` nonzero.
    pub fn divrem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (db..r.len()).rev() {
            let c = self.mul(r[k], inv);
            q[k - db] = c;
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                r[k - db + j] = self.sub(r[k - db + j], self.mul(c, bc));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.psub(&s0, &self.pmul(&q, &s1));
            let t = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = *r0.last().expect("gcd of two zero polynomials");
        let inv = self.inv(lc);
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        let r = a.iter().enumerate().skip(1).map(|(i, &c)| self.mul(c, i as u64 % self.p)).collect();
        self.trim(r)
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &PolyP, e: &BigUint, m: &PolyP) -> PolyP {
        let mut result = vec![1u64];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.rem(&self.pmul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.pmul(&b, &b), m);
            }
        }
        self.rem(&result, m)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` where `g_d` is the product of the degree-`d` irreducible factors.
    pub fn distinct_degree(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while 2 * (d + 1) <= Self::deg(&f) {
            d += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.psub(&h, &x), &f);
            if Self::deg(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if Self::deg(&f) > 0 {
            let n = Self::deg(&f);
            out.push((f, n));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree<R: Rng>(&self, f: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = Self::deg(f);
        if n == d {
            return vec![f.clone()];
        }
        let e = (num_traits::pow(BigUint::from(self.p), d) - BigUint::one()) >> 1;
        loop {
            let a: PolyP = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if Self::deg(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if Self::deg(&g) > 0 {
                g
            } else {
                let b = self.powmod(&a, &e, f);
                self.gcd(&self.psub(&b, &vec![1]), f)
            };
            let k = Self::deg(&split);
            if k > 0 && k < n {
                let rest = self.divrem(f, &split).0;
                let mut out = self.equal_degree(&split, d, rng);
                out.extend(self.equal_degree(&rest, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree<R: Rng>(&self, f: &PolyP, rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ext_gcd_identity() {
        let f = Zp::new(7);
        let a = vec![1, 0, 1];
        let b = vec![3, 1];
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(f.padd(&f.pmul(&s, &a), &f.pmul(&t, &b)), vec![1]);
    }

    #[test]
    fn factors_product_of_irreducibles() {
        let f = Zp::new(13);
        // (x^2 + 2)(x + 1)(x + 5)(x^3 + x + 1) mod 13, checked to be squarefree
        let parts = [vec![2, 0, 1], vec![1, 1], vec![5, 1], vec![1, 1, 0, 1]];
        let prod = parts.iter().fold(vec![1], |acc, q| f.pmul(&acc, q));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let factors = f.factor_squarefree(&prod, &mut rng);
        let back = factors.iter().fold(vec![1], |acc, q| f.pmul(&acc, q));
        assert_eq!(back, prod);
        assert!(factors.iter().all(|g| f.distinct_degree(g).len() == 1));
    }
}
