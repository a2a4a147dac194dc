//! Finite fields F_{p^a}: construction with a canonical modulus, arithmetic,
//! subfield embeddings, norms, and k-th power sets.
//!
//! Elements are encoded as integers in `[0, p^a)`: the base-p digits of the
//! encoding are the coordinates in the power basis of the modulus root,
//! constant coordinate least significant. The modulus is always the
//! lexicographically least monic irreducible of its degree under this integer
//! encoding, so a field is reconstructible from `(p, a)` alone.

// Digit and coefficient manipulation reads most clearly with explicit
// indices; iterator rewrites of these loops obscure the positional structure.
#![allow(clippy::needless_range_loop, clippy::explicit_counter_loop)]

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Upper bound on field size; enumeration-based operations stay cheap.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// An element of a finite field, as its integer encoding.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Repr {
    p: u32,
    a: u32,
    q: u32,
    /// Modulus coefficients over F_p, ascending, length a + 1, monic.
    modulus: Vec<u32>,
    /// exp[i] = generator^i for i in 0..q-1.
    exp: Vec<u32>,
    /// log[x] defined for x in 1..q; log[0] is a sentinel.
    log: Vec<u32>,
    generator: u32,
}

/// A finite field F_{p^a}. Cheap to clone (shared immutable tables).
#[derive(Clone)]
pub struct Field(Arc<Repr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.a == other.0.a
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.a)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.a)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in F_p[x] used only while constructing a field.
mod fpx {
    use alloc::vec;
    use alloc::vec::Vec;

    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u64) * (y as u64)) % (p as u64);
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        // Reduce modulo the monic polynomial f.
        let df = f.len() - 1;
        while out.len() > df {
            let lead = *out.last().unwrap();
            let k = out.len() - 1 - df;
            if lead != 0 {
                for i in 0..=df {
                    let sub = ((lead as u64) * (f[i] as u64)) % (p as u64);
                    let cur = out[k + i] as u64;
                    out[k + i] = ((cur + p as u64 - sub % p as u64) % p as u64) as u32;
                }
            }
            out.pop();
            trim(&mut out);
            if out.len() <= df {
                break;
            }
        }
        trim(&mut out);
        out
    }

    pub fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for i in 0..n {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            out[i] = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        // f monic; plain schoolbook remainder.
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        while r.len() > df {
            let lead = *r.last().unwrap();
            let k = r.len() - 1 - df;
            if lead != 0 {
                for i in 0..=df {
                    let sub = ((lead as u64) * (f[i] as u64)) % (p as u64);
                    r[k + i] = ((r[k + i] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // Make b monic before using it as a divisor.
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = super::inv_mod_p(lead, p);
                for c in b.iter_mut() {
                    *c = ((*c as u64 * inv as u64) % p as u64) as u32;
                }
            }
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

fn inv_mod_p(x: u32, p: u32) -> u32 {
    // Fermat: x^(p-2) mod p.
    let mut result = 1u64;
    let mut base = x as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Irreducibility of a monic polynomial of degree a >= 1 over F_p
/// (coefficients ascending, length a + 1).
fn irreducible_over_fp(f: &[u32], p: u32) -> bool {
    let a = (f.len() - 1) as u32;
    if a == 1 {
        return true;
    }
    let x = [0u32, 1];
    // x^(p^a) == x mod f
    let mut xp = x.to_vec();
    for _ in 0..a {
        xp = fpx::pow_mod(&xp, p as u64, f, p);
    }
    if fpx::sub(&xp, &x, p) != Vec::<u32>::new() {
        return false;
    }
    // For every prime divisor l of a: gcd(x^(p^(a/l)) - x, f) == 1
    let mut n = a;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            primes.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    for l in primes {
        let mut xe = x.to_vec();
        for _ in 0..(a / l) {
            xe = fpx::pow_mod(&xe, p as u64, f, p);
        }
        let g = fpx::gcd(&fpx::sub(&xe, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn digits(mut enc: u32, p: u32, a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(a as usize);
    for _ in 0..a {
        out.push(enc % p);
        enc /= p;
    }
    out
}

fn encode(digs: &[u32], p: u32) -> u32 {
    let mut enc = 0u32;
    for &d in digs.iter().rev() {
        enc = enc * p + d;
    }
    enc
}

impl Field {
    /// Construct F_{p^a} with the canonical (least-encoded monic irreducible)
    /// modulus; for a = 1 the modulus is x.
    pub fn new(p: u32, a: u32) -> Result<Field> {
        if !is_prime(p) || a == 0 {
            return Err(Error::InvalidField);
        }
        let mut q: u64 = 1;
        for _ in 0..a {
            q *= p as u64;
            if q > MAX_FIELD_SIZE {
                return Err(Error::InvalidField);
            }
        }
        let q = q as u32;
        let modulus = if a == 1 {
            vec![0, 1]
        } else {
            // Scan monic degree-a polynomials by the encoding of their
            // non-leading coefficients; the first irreducible wins.
            let mut found = None;
            for low in 0..q {
                let mut f = digits(low, p, a);
                f.push(1);
                if irreducible_over_fp(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.ok_or(Error::InvalidField)?
        };

        // Raw multiplication (table-free), used to bootstrap the tables.
        let raw_mul = |x: u32, y: u32| -> u32 {
            let xd = digits(x, p, a);
            let yd = digits(y, p, a);
            let prod = fpx::mul_mod(&xd, &yd, &modulus, p);
            encode(&prod, p)
        };
        let raw_pow = |x: u32, mut e: u64| -> u32 {
            let mut result = 1u32;
            let mut b = x;
            while e > 0 {
                if e & 1 == 1 {
                    result = raw_mul(result, b);
                }
                b = raw_mul(b, b);
                e >>= 1;
            }
            result
        };

        // Least multiplicative generator.
        let mut prime_factors = Vec::new();
        let mut n = q - 1;
        let mut d = 2;
        while (d as u64) * (d as u64) <= n as u64 {
            if n.is_multiple_of(d) {
                prime_factors.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            prime_factors.push(n);
        }
        let mut generator = 1u32;
        if q > 2 {
            'outer: for g in 2..q {
                for &r in &prime_factors {
                    if raw_pow(g, ((q - 1) / r) as u64) == 1 {
                        continue 'outer;
                    }
                }
                generator = g;
                break;
            }
        }

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..(q - 1) {
            exp.push(cur);
            log[cur as usize] = i;
            cur = raw_mul(cur, generator);
        }

        Ok(Field(Arc::new(Repr {
            p,
            a,
            q,
            modulus,
            exp,
            log,
            generator,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn a(&self) -> u32 {
        self.0.a
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients over F_p, ascending, monic, length a + 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Validate an encoding.
    pub fn elem(&self, enc: u32) -> Result<Elem> {
        if enc < self.0.q {
            Ok(Elem(enc))
        } else {
            Err(Error::Parse(alloc::format!(
                "element encoding {} out of range for field of order {}",
                enc,
                self.0.q
            )))
        }
    }

    /// The image of an integer under the canonical map Z -> F_p into the
    /// prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i64;
        Elem(((n % p + p) % p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let r = &*self.0;
        if r.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        if r.a == 1 {
            return Elem((x.0 + y.0) % r.p);
        }
        let mut xe = x.0;
        let mut ye = y.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..r.a {
            out += ((xe % r.p + ye % r.p) % r.p) * place;
            xe /= r.p;
            ye /= r.p;
            place *= r.p;
        }
        Elem(out)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        let r = &*self.0;
        if r.p == 2 {
            return x;
        }
        if r.a == 1 {
            return Elem((r.p - x.0) % r.p);
        }
        let mut xe = x.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..r.a {
            out += ((r.p - xe % r.p) % r.p) * place;
            xe /= r.p;
            place *= r.p;
        }
        Elem(out)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let r = &*self.0;
        let i = r.log[x.0 as usize] as u64 + r.log[y.0 as usize] as u64;
        Elem(r.exp[(i % (r.q - 1) as u64) as usize])
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = &*self.0;
        let i = ((r.q - 1) - r.log[x.0 as usize]) % (r.q - 1);
        Ok(Elem(r.exp[i as usize]))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let r = &*self.0;
        let m = (r.q - 1) as u64;
        let i = (r.log[x.0 as usize] as u64 % m) * (e % m) % m;
        Elem(r.exp[i as usize])
    }

    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.0.p as u64)
    }

    /// Least element of multiplicative order q - 1.
    pub fn generator(&self) -> Elem {
        Elem(self.0.generator)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = &*self.0;
        let m = (r.q - 1) as u64;
        let l = r.log[x.0 as usize] as u64;
        Ok(m / gcd_u64(m, l))
    }

    /// The set {x^k : x in F}, sorted by encoding. Contains 0 and 1; its
    /// nonzero part is the subgroup of index hcf(k, q-1) in the
    /// multiplicative group.
    pub fn kth_powers(&self, k: u64) -> Vec<Elem> {
        let r = &*self.0;
        let m = (r.q - 1) as u64;
        let h = gcd_u64(k, m);
        let mut out = vec![Elem::ZERO];
        let mut i = 0u64;
        while i < m {
            out.push(Elem(r.exp[i as usize]));
            i += h;
        }
        out.sort();
        out
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A field homomorphism F_{p^a} -> F_{p^b} (a | b) fixing the prime field,
/// sending the small modulus root to its least-encoded root in the big field.
pub struct Embedding {
    small: Field,
    big: Field,
    /// b/a, the degree of the big field over the image of the small one.
    ell: u32,
    /// map[s] = image encoding, for every small encoding s.
    fwd: Vec<u32>,
    /// preimage of big encodings; u32::MAX when not in the image.
    back: Vec<u32>,
    /// Inverse of the F_p change-of-basis matrix from coordinates
    /// (c_0..c_{ell-1}) over the small field (each c_j given by its a digits)
    /// to big-field digits, where x = sum_j fwd(c_j) * theta^j and theta is
    /// the canonical root of the big modulus. Row-major b x b over F_p.
    basis_inv: Vec<u32>,
    b: usize,
}

impl Embedding {
    pub fn new(small: &Field, big: &Field) -> Result<Embedding> {
        if small.p() != big.p() || !big.a().is_multiple_of(small.a()) {
            return Err(Error::NotASubfield);
        }
        let p = small.p();
        let a = small.a();
        let b = big.a();
        let ell = b / a;
        // Least root of the small modulus inside the big field.
        let mods = small.modulus();
        let mut root = None;
        for x in big.elements() {
            let mut acc = Elem::ZERO;
            for &c in mods.iter().rev() {
                acc = big.add(big.mul(acc, x), Elem(c % p));
            }
            if acc.is_zero() {
                root = Some(x);
                break;
            }
        }
        let root = root.ok_or(Error::NotASubfield)?;
        // fwd: evaluate small digits at the root.
        let mut fwd = Vec::with_capacity(small.q() as usize);
        let mut root_pows = Vec::with_capacity(a as usize);
        let mut rp = Elem::ONE;
        for _ in 0..a {
            root_pows.push(rp);
            rp = big.mul(rp, root);
        }
        for s in 0..small.q() {
            let ds = digits(s, p, a);
            let mut acc = Elem::ZERO;
            for (i, &d) in ds.iter().enumerate() {
                acc = big.add(acc, big.mul(Elem(d), root_pows[i]));
            }
            fwd.push(acc.0);
        }
        let mut back = vec![u32::MAX; big.q() as usize];
        for (s, &im) in fwd.iter().enumerate() {
            back[im as usize] = s as u32;
        }
        // Change-of-basis matrix over F_p: column (j*a + i) holds the digits
        // of fwd(p^i) * theta^j, theta the canonical root of the big modulus.
        let theta = if b == 1 { Elem::ZERO } else { Elem(p) };
        let bn = b as usize;
        let mut mat = vec![0u32; bn * bn];
        let mut theta_pow = Elem::ONE;
        for j in 0..ell as usize {
            for i in 0..a as usize {
                let basis_small = Elem(fwd[p.pow(i as u32).min(small.q() - 1) as usize]);
                // p^i is a valid small encoding since i < a.
                debug_assert!(p.pow(i as u32) < small.q());
                let v = big.mul(basis_small, theta_pow);
                let dv = digits(v.0, p, b);
                let col = j * a as usize + i;
                for (row, &d) in dv.iter().enumerate() {
                    mat[row * bn + col] = d;
                }
            }
            theta_pow = big.mul(theta_pow, theta);
        }
        let basis_inv = invert_fp(&mat, bn, p).ok_or(Error::NotASubfield)?;
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            ell,
            fwd,
            back,
            basis_inv,
            b: bn,
        })
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    /// Degree of the big field over the image of the small one.
    pub fn degree(&self) -> u32 {
        self.ell
    }

    pub fn apply(&self, x: Elem) -> Elem {
        Elem(self.fwd[x.0 as usize])
    }

    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        let s = self.back[y.0 as usize];
        if s == u32::MAX {
            None
        } else {
            Some(Elem(s))
        }
    }

    /// Coordinates of a big-field element over the small field in the basis
    /// 1, theta, ..., theta^{ell-1} (theta the canonical big modulus root).
    pub fn decompose(&self, x: Elem) -> Vec<Elem> {
        let p = self.small.p();
        let dv = digits(x.0, p, self.big.a());
        let bn = self.b;
        let mut c = vec![0u32; bn];
        for row in 0..bn {
            let mut acc = 0u64;
            for col in 0..bn {
                acc += (self.basis_inv[row * bn + col] as u64) * (dv[col] as u64);
            }
            c[row] = (acc % p as u64) as u32;
        }
        let a = self.small.a() as usize;
        (0..self.ell as usize)
            .map(|j| Elem(encode(&c[j * a..(j + 1) * a], p)))
            .collect()
    }

    /// Inverse of `decompose`.
    pub fn compose(&self, coords: &[Elem]) -> Elem {
        let theta = if self.big.a() == 1 {
            Elem::ZERO
        } else {
            Elem(self.big.p())
        };
        let mut acc = Elem::ZERO;
        let mut tp = Elem::ONE;
        for &c in coords.iter() {
            acc = self.big.add(acc, self.big.mul(self.apply(c), tp));
            tp = self.big.mul(tp, theta);
        }
        acc
    }

    /// The norm map big -> small: x ^ (1 + q + ... + q^{ell-1}) with q the
    /// small field's order, pulled back through the embedding.
    pub fn norm(&self, x: Elem) -> Elem {
        if x.is_zero() {
            return Elem::ZERO;
        }
        let q = self.small.q() as u64;
        let mut e = 0u64;
        let mut t = 1u64;
        for _ in 0..self.ell {
            e += t;
            t *= q;
        }
        let y = self.big.pow(x, e);
        Elem(self.back[y.0 as usize])
    }
}

/// Invert an n x n matrix over F_p; None if singular.
fn invert_fp(m: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let mut aug = vec![0u32; n * 2 * n];
    for r in 0..n {
        for c in 0..n {
            aug[r * 2 * n + c] = m[r * n + c];
        }
        aug[r * 2 * n + n + r] = 1;
    }
    let w = 2 * n;
    let mut row = 0;
    for col in 0..n {
        let piv = (row..n).find(|&r| aug[r * w + col] != 0)?;
        aug.swap_chunks(piv, row, w);
        let inv = inv_mod_p(aug[row * w + col], p);
        for c in 0..w {
            aug[row * w + c] = ((aug[row * w + c] as u64 * inv as u64) % p as u64) as u32;
        }
        for r in 0..n {
            if r != row && aug[r * w + col] != 0 {
                let f = aug[r * w + col];
                for c in 0..w {
                    let sub = (f as u64 * aug[row * w + c] as u64) % p as u64;
                    aug[r * w + c] =
                        ((aug[r * w + c] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        row += 1;
    }
    let mut out = vec![0u32; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = aug[r * w + n + c];
        }
    }
    Some(out)
}

trait SwapChunks {
    fn swap_chunks(&mut self, i: usize, j: usize, w: usize);
}

impl SwapChunks for Vec<u32> {
    fn swap_chunks(&mut self, i: usize, j: usize, w: usize) {
        if i == j {
            return;
        }
        for k in 0..w {
            self.swap(i * w + k, j * w + k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]); // x^2+x+1
        assert_eq!(Field::new(3, 1).unwrap().modulus(), &[0, 1]); // x
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]); // x^3+x+1
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]); // x^4+x+1
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::InvalidField);
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::InvalidField);
        assert_eq!(Field::new(2, 21).unwrap_err(), Error::InvalidField);
    }

    #[test]
    fn f4_generator_squares_correctly() {
        // g*g = g+1 where g is the modulus root (encoding 2): 2*2 = 3.
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(3));
    }

    #[test]
    fn f3_inverse() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(2));
        assert_eq!(f.inv(Elem(0)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn f8_every_nonidentity_nonzero_has_order_7() {
        let f = Field::new(2, 3).unwrap();
        for x in f.elements().skip(2) {
            assert_eq!(f.order(x).unwrap(), 7);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, a) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1)] {
            let f = Field::new(p, a).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                    if !y.is_zero() {
                        assert_eq!(f.mul(f.div(x, y).unwrap(), y), x);
                    }
                    for z in f.elements() {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(
                            f.mul(x, f.add(y, z)),
                            f.add(f.mul(x, y), f.mul(x, z))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_basics() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let e = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(e.apply(Elem::ONE), Elem::ONE);
        // F_4 -> F_16: image of g is the least h with h^2+h+1 = 0.
        let e2 = Embedding::new(&f4, &f16).unwrap();
        let img = e2.apply(Elem(2));
        let h = img;
        assert_eq!(
            f16.add(f16.add(f16.mul(h, h), h), Elem::ONE),
            Elem::ZERO
        );
        for x in f16.elements() {
            if f16.add(f16.add(f16.mul(x, x), x), Elem::ONE) == Elem::ZERO {
                assert!(img <= x);
            }
        }
        // Not a subfield.
        let f8 = Field::new(2, 3).unwrap();
        assert!(matches!(
            Embedding::new(&f4, &f8).err(),
            Some(Error::NotASubfield)
        ));
    }

    #[test]
    fn embedding_is_homomorphism_and_composes() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let e24 = Embedding::new(&f2, &f4).unwrap();
        let e416 = Embedding::new(&f4, &f16).unwrap();
        let e216 = Embedding::new(&f2, &f16).unwrap();
        for x in f4.elements() {
            for y in f4.elements() {
                assert_eq!(
                    e416.apply(f4.add(x, y)),
                    f16.add(e416.apply(x), e416.apply(y))
                );
                assert_eq!(
                    e416.apply(f4.mul(x, y)),
                    f16.mul(e416.apply(x), e416.apply(y))
                );
            }
        }
        for x in f2.elements() {
            assert_eq!(e416.apply(e24.apply(x)), e216.apply(x));
        }
    }

    #[test]
    fn decompose_compose_roundtrip() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        for x in f16.elements() {
            let c = e.decompose(x);
            assert_eq!(c.len(), 2);
            assert_eq!(e.compose(&c), x);
        }
        // Images decompose as (s, 0).
        for s in f4.elements() {
            assert_eq!(e.decompose(e.apply(s)), vec![s, Elem::ZERO]);
        }
    }

    #[test]
    fn norm_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let e = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(e.norm(f4.generator()), Elem::ONE);
        assert_eq!(e.norm(Elem::ZERO), Elem::ZERO);
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let e9 = Embedding::new(&f3, &f9).unwrap();
        let n = e9.norm(f9.generator());
        assert_eq!(f3.order(n).unwrap(), 2); // generates F_3^x
    }

    #[test]
    fn norm_multiplicative_and_surjective() {
        // Exhaustive for q^d <= 81.
        for (p, a, b) in [(2, 1, 2), (2, 1, 4), (2, 2, 4), (3, 1, 2), (2, 1, 6), (2, 3, 6), (2, 2, 6), (3, 2, 4)] {
            if p == 3 && b == 4 {
                // 3^4 = 81 boundary included
            }
            let small = Field::new(p, a).unwrap();
            let big = match Field::new(p, b) {
                Ok(f) => f,
                Err(_) => continue,
            };
            if (big.q() as u64) > 81 {
                continue;
            }
            let e = Embedding::new(&small, &big).unwrap();
            let mut seen = alloc::collections::BTreeSet::new();
            for x in big.elements() {
                for y in big.elements() {
                    assert_eq!(
                        e.norm(big.mul(x, y)),
                        small.mul(e.norm(x), e.norm(y))
                    );
                }
                if !x.is_zero() {
                    seen.insert(e.norm(x));
                }
            }
            assert_eq!(seen.len() as u32, small.q() - 1);
        }
    }

    #[test]
    fn kth_power_sets() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.kth_powers(1), vec![Elem(0), Elem(1), Elem(2)]);
        assert_eq!(f3.kth_powers(2), vec![Elem(0), Elem(1)]);
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.kth_powers(2), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn kth_power_subgroup_index() {
        for q in [(2u32, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            let f = Field::new(q.0, q.1).unwrap();
            for k in 1..=12u64 {
                let s = f.kth_powers(k);
                let expected = (f.q() as u64 - 1) / gcd_u64(k, f.q() as u64 - 1);
                assert_eq!(s.len() as u64 - 1, expected);
                // Cross-check against direct enumeration.
                let mut direct: Vec<Elem> = f.elements().map(|x| f.pow(x, k)).collect();
                direct.sort();
                direct.dedup();
                assert_eq!(s, direct);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, a) in [(2, 1), (2, 2), (3, 1), (5, 1), (2, 3), (3, 2), (7, 1)] {
            let f = Field::new(p, a).unwrap();
            if f.q() > 2 {
                assert_eq!(f.order(f.generator()).unwrap(), (f.q() - 1) as u64);
            }
        }
    }
}
