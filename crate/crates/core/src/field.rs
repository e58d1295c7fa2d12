//! Finite fields `F_p` and `F_{p^k}` (k ≤ 4).
//!
//! Elements are opaque 32-bit handles interpreted by the owning
//! [`FiniteField`]. Prime fields store residues directly. Extension fields
//! with at most 2^20 elements use Zech logarithm tables; larger extensions
//! (up to 2^32 elements) fall back to polynomial arithmetic modulo the
//! defining polynomial.
//!
//! Defining polynomials come from a small table of Conway polynomials for
//! p ≤ 7; for other primes the lexicographically first primitive monic
//! polynomial of the requested degree is used, so the choice is fixed for
//! every (p, k).

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (need p < 2^31)")]
    PrimeTooLarge(u64),
    #[error("extension degree {0} unsupported (need 1 ≤ k ≤ 4)")]
    BadDegree(u32),
    #[error("field of order {p}^{k} is too large (need p^k < 2^32)")]
    OrderTooLarge { p: u64, k: u32 },
}

/// Field element handle. Only meaningful together with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

const ZECH_LIMIT: u64 = 1 << 20;

/// Conway polynomials, low-order coefficient first, leading 1 omitted.
const CONWAY: &[(u64, &[u64])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 0]),
    (2, &[1, 1, 0, 0]),
    (3, &[2, 2]),
    (3, &[1, 2, 0]),
    (3, &[2, 0, 0, 2]),
    (5, &[2, 4]),
    (5, &[3, 3, 0]),
    (5, &[2, 4, 4, 0]),
    (7, &[3, 6]),
    (7, &[4, 0, 6]),
    (7, &[3, 4, 5, 0]),
];

#[derive(Debug)]
enum Repr {
    Prime,
    Zech {
        /// log → packed coefficients
        exp: Vec<u32>,
        /// packed coefficients → log (index 0 unused)
        log: Vec<u32>,
        /// n → handle of 1 + g^n
        zech: Vec<u32>,
        /// log of −1
        minus_one: u64,
    },
    Poly,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic modulus, low-order first, length degree + 1.
    modulus: Vec<u64>,
    repr: Repr,
}

/// A finite field. Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.characteristic())
        } else {
            write!(f, "F_{}^{}", self.characteristic(), self.degree())
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.degree == other.inner.degree
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial helpers over F_p on packed base-p digit encodings.
struct PolyRing<'a> {
    p: u64,
    modulus: &'a [u64],
}

impl PolyRing<'_> {
    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn unpack(&self, mut v: u64) -> [u64; 4] {
        let mut d = [0u64; 4];
        for slot in d.iter_mut().take(self.k()) {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> u64 {
        d.iter().take(self.k()).rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let k = self.k();
        let (da, db) = (self.unpack(a), self.unpack(b));
        let mut prod = [0u64; 8];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^k ≡ −(m_0 + … + m_{k−1} x^{k−1})
            for i in 0..k {
                let sub = c * self.modulus[i] % self.p;
                prod[deg - k + i] = (prod[deg - k + i] + self.p - sub) % self.p;
            }
        }
        self.pack(&prod[..k])
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// x has multiplicative order p^k − 1.
    fn x_is_primitive(&self) -> bool {
        if self.modulus[0] == 0 {
            return false;
        }
        let order = self.p.pow(self.k() as u32) - 1;
        // x is the packed encoding of the polynomial x (k ≥ 2).
        let x = self.p;
        if self.pow(x, order) != 1 {
            return false;
        }
        prime_factors(order).into_iter().all(|r| self.pow(x, order / r) != 1)
    }
}

fn conway(p: u64, k: u32) -> Option<Vec<u64>> {
    let mut seen = 0;
    for &(q, coeffs) in CONWAY {
        if q == p {
            seen += 1;
            if seen + 1 == k {
                let mut m = coeffs.to_vec();
                m.push(1);
                return Some(m);
            }
        }
    }
    None
}

/// Lexicographically first primitive monic polynomial of degree `k`.
fn search_primitive(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        let mut m: Vec<u64> = (0..k).map(|i| code / p.pow(i) % p).collect();
        m.push(1);
        if (PolyRing { p, modulus: &m }).x_is_primitive() {
            return m;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    pub fn new(p: u64, degree: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !(1..=4).contains(&degree) {
            return Err(FieldError::BadDegree(degree));
        }
        let order = p.checked_pow(degree).filter(|&q| q < 1 << 32);
        let Some(order) = order else {
            return Err(FieldError::OrderTooLarge { p, k: degree });
        };
        if degree == 1 {
            return Ok(FiniteField {
                inner: Arc::new(Inner {
                    p,
                    degree,
                    order,
                    modulus: vec![0, 1],
                    repr: Repr::Prime,
                }),
            });
        }
        let modulus = conway(p, degree).unwrap_or_else(|| search_primitive(p, degree));
        let repr = if order <= ZECH_LIMIT {
            Self::zech_tables(p, &modulus, order)
        } else {
            Repr::Poly
        };
        Ok(FiniteField {
            inner: Arc::new(Inner {
                p,
                degree,
                order,
                modulus,
                repr,
            }),
        })
    }

    fn zech_tables(p: u64, modulus: &[u64], order: u64) -> Repr {
        let ring = PolyRing { p, modulus };
        let n = (order - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur as u32;
            log[cur as usize] = i as u32;
            cur = ring.mul(cur, p);
        }
        debug_assert_eq!(cur, 1, "modulus must be primitive");
        let zech = exp
            .iter()
            .map(|&packed| {
                let mut d = ring.unpack(packed as u64);
                d[0] = (d[0] + 1) % p;
                let sum = ring.pack(&d);
                if sum == 0 {
                    0
                } else {
                    log[sum as usize] + 1
                }
            })
            .collect();
        let minus_one = log[(p - 1) as usize] as u64;
        Repr::Zech {
            exp,
            log,
            zech,
            minus_one,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// The defining polynomial, low-order coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    fn ring(&self) -> PolyRing<'_> {
        PolyRing {
            p: self.inner.p,
            modulus: &self.inner.modulus,
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem(1)
    }

    #[inline]
    pub fn is_zero(&self, a: Elem) -> bool {
        a.0 == 0
    }

    /// Element with base-p coefficient digits `packed` (constant term lowest).
    pub fn from_packed(&self, packed: u64) -> Elem {
        assert!(packed < self.inner.order, "packed value out of range");
        match &self.inner.repr {
            Repr::Prime | Repr::Poly => Elem(packed as u32),
            Repr::Zech { log, .. } => {
                if packed == 0 {
                    Elem(0)
                } else {
                    Elem(log[packed as usize] + 1)
                }
            }
        }
    }

    pub fn to_packed(&self, a: Elem) -> u64 {
        match &self.inner.repr {
            Repr::Prime | Repr::Poly => a.0 as u64,
            Repr::Zech { exp, .. } => {
                if a.0 == 0 {
                    0
                } else {
                    exp[(a.0 - 1) as usize] as u64
                }
            }
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.inner.p as i64;
        self.from_packed(n.rem_euclid(p) as u64)
    }

    /// Coefficients of `a` in the polynomial basis, constant term first.
    pub fn coefficients(&self, a: Elem) -> Vec<u64> {
        let packed = self.to_packed(a);
        let ring = self.ring();
        ring.unpack(packed)[..self.inner.degree as usize].to_vec()
    }

    /// Maps an element of the prime field `F_p` into this field.
    pub fn embed_prime(&self, from: &FiniteField, a: Elem) -> Elem {
        assert_eq!(from.degree(), 1, "only prime-field elements can be embedded");
        assert_eq!(from.characteristic(), self.characteristic(), "characteristic mismatch");
        self.from_packed(a.0 as u64)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.repr {
            Repr::Prime => {
                let s = a.0 as u64 + b.0 as u64;
                let p = self.inner.p;
                Elem(if s >= p { s - p } else { s } as u32)
            }
            Repr::Zech { zech, .. } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                // g^x + g^y = g^x (1 + g^{y−x})
                let n = self.inner.order - 1;
                let (x, y) = ((a.0 - 1) as u64, (b.0 - 1) as u64);
                let diff = (y + n - x) % n;
                let z = zech[diff as usize];
                if z == 0 {
                    Elem(0)
                } else {
                    Elem(((x + (z - 1) as u64) % n) as u32 + 1)
                }
            }
            Repr::Poly => {
                let ring = self.ring();
                let (da, db) = (ring.unpack(a.0 as u64), ring.unpack(b.0 as u64));
                let mut d = [0u64; 4];
                for i in 0..4 {
                    d[i] = (da[i] + db[i]) % self.inner.p;
                }
                Elem(ring.pack(&d) as u32)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.0 == 0 {
            return a;
        }
        match &self.inner.repr {
            Repr::Prime => Elem((self.inner.p - a.0 as u64) as u32),
            Repr::Zech { minus_one, .. } => {
                let n = self.inner.order - 1;
                Elem(((a.0 - 1) as u64 + minus_one) as u32 % n as u32 + 1)
            }
            Repr::Poly => {
                let ring = self.ring();
                let mut d = ring.unpack(a.0 as u64);
                for c in d.iter_mut() {
                    *c = (self.inner.p - *c) % self.inner.p;
                }
                Elem(ring.pack(&d) as u32)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        match &self.inner.repr {
            Repr::Prime => Elem((a.0 as u64 * b.0 as u64 % self.inner.p) as u32),
            Repr::Zech { .. } => {
                let n = self.inner.order - 1;
                Elem((((a.0 - 1) as u64 + (b.0 - 1) as u64) % n) as u32 + 1)
            }
            Repr::Poly => Elem(self.ring().mul(a.0 as u64, b.0 as u64) as u32),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.inner.repr {
            Repr::Prime => Elem(pow_mod(a.0 as u64, self.inner.p - 2, self.inner.p) as u32),
            Repr::Zech { .. } => {
                let n = self.inner.order - 1;
                Elem(((n - (a.0 - 1) as u64) % n) as u32 + 1)
            }
            Repr::Poly => Elem(self.ring().pow(a.0 as u64, self.inner.order - 2) as u32),
        })
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        self.from_packed(rng.gen_range(0..self.inner.order))
    }

    /// All elements, in packed-coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.inner.order).map(|v| self.from_packed(v))
    }

    /// Human-readable element: an integer for prime fields, otherwise the
    /// coefficient list in the polynomial basis.
    pub fn format(&self, a: Elem) -> String {
        if self.degree() == 1 {
            a.0.to_string()
        } else {
            let c = self.coefficients(a);
            let parts: Vec<String> = c.iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}
