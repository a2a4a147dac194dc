//! Univariate polynomials over a finite field: arithmetic, irreducibility,
//! factorization, enumeration, and the count of monic irreducibles with a
//! prescribed constant term.
//!
//! Coefficients are stored ascending by degree with no trailing zeros; the
//! zero polynomial has an empty coefficient list. Polynomials are ordered by
//! their integer encoding `sum enc(c_i) * q^i` (leading coefficient
//! included), which makes "least irreducible" well defined and reproducible.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{gcd_u64, Elem, Embedding, Field};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{}", c.enc())?,
                (1, Elem::ONE) => write!(f, "x")?,
                (1, c) => write!(f, "{}*x", c.enc())?,
                (k, Elem::ONE) => write!(f, "x^{}", k)?,
                (k, c) => write!(f, "{}*x^{}", c.enc(), k)?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        let coeffs = if c.is_zero() { vec![] } else { vec![c] };
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn x(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![Elem::ZERO, Elem::ONE],
        }
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Reconstruct from the integer encoding sum enc(c_i) * q^i.
    pub fn from_encoding(field: &Field, mut enc: u128) -> Poly {
        let q = field.q() as u128;
        let mut coeffs = Vec::new();
        while enc > 0 {
            coeffs.push(Elem((enc % q) as u32));
            enc /= q;
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn encoding(&self) -> u128 {
        let q = self.field.q() as u128;
        let mut enc = 0u128;
        for &c in self.coeffs.iter().rev() {
            enc = enc * q + c.enc() as u128;
        }
        enc
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        Poly::from_coeffs(f, out)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = f.mul(*rem.last().unwrap(), lead_inv);
            if !factor.is_zero() {
                quot[k] = factor;
                for i in 0..=dd {
                    let s = f.mul(factor, divisor.coeff(i));
                    rem[k + i] = f.sub(rem[k + i], s);
                }
            }
            rem.pop();
            while rem.last() == Some(&Elem::ZERO) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = self.field.inv(a.leading()).unwrap();
            a.scale(inv)
        }
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            (r0, s0, t0)
        } else {
            let inv = f.inv(r0.leading()).unwrap();
            (r0.scale(inv), s0.scale(inv), t0.scale(inv))
        }
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// self composed with g: (self ∘ g)(x) = self(g(x)).
    pub fn compose(&self, g: &Poly) -> Poly {
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(f, c));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(f.from_int(k as i64), c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// self^e reduced modulo a monic polynomial m.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut result = Poly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// x^(q^k) reduced modulo a monic m, by k-fold q-power steps.
    fn xq_power(k: u32, m: &Poly) -> Result<Poly> {
        let q = m.field.q() as u64;
        let mut acc = Poly::x(&m.field).rem(m)?;
        for _ in 0..k {
            acc = acc.powmod(q, m)?;
        }
        Ok(acc)
    }

    /// Irreducibility over the coefficient field (degree >= 1 required).
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::InvalidDegree),
            Some(d) => d as u32,
        };
        if d == 1 {
            return Ok(true);
        }
        // Work with the monic associate.
        let monic = if self.is_monic() {
            self.clone()
        } else {
            self.scale(self.field.inv(self.leading())?)
        };
        let x = Poly::x(&self.field).rem(&monic)?;
        // x^(q^d) must reduce to x ...
        if Poly::xq_power(d, &monic)? != x {
            return Ok(false);
        }
        // ... and for each prime l | d, gcd(x^(q^(d/l)) - x, f) must be 1.
        for l in prime_divisors(d as u64) {
            let xe = Poly::xq_power(d / l as u32, &monic)?;
            let g = monic.gcd(&xe.sub(&x));
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Factor the monic associate into (irreducible, multiplicity) pairs,
    /// sorted by (degree, encoding). The unit (leading coefficient of the
    /// input) is returned alongside.
    pub fn factor(&self) -> Result<(Elem, Vec<(Poly, u32)>)> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let unit = self.leading();
        let mut rem = self.scale(f.inv(unit)?);
        let mut out: Vec<(Poly, u32)> = Vec::new();
        if rem.degree() == Some(0) {
            return Ok((unit, out));
        }
        // Distinct-degree probe: degrees d with an irreducible factor of
        // degree d are those where gcd(x^(q^d) - x, rem) is nontrivial.
        let x = Poly::x(f);
        let mut d = 1u32;
        while let Some(deg) = rem.degree() {
            if deg == 0 {
                break;
            }
            if (d as usize) > deg / 2 {
                // What is left is irreducible.
                out.push((rem.clone(), 1));
                break;
            }
            let xr = x.rem(&rem)?;
            let frob = Poly::xq_power(d, &rem)?;
            let g = rem.gcd(&frob.sub(&xr));
            if g.degree().is_some_and(|gd| gd >= 1) {
                // g is a product of the distinct degree-d irreducible factors.
                let factors_d = split_equal_degree(&g, d)?;
                for fac in factors_d {
                    let mut mult = 0u32;
                    loop {
                        let (q2, r2) = rem.divmod(&fac)?;
                        if r2.is_zero() {
                            mult += 1;
                            rem = q2;
                        } else {
                            break;
                        }
                    }
                    debug_assert!(mult >= 1);
                    out.push((fac, mult));
                }
            }
            d += 1;
        }
        // Merge duplicates, then recompute exact multiplicities from scratch
        // (the trailing irreducible may divide the input more than once).
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (fac, mult) in out {
            if let Some(prev) = merged.iter_mut().find(|(g, _)| *g == fac) {
                prev.1 += mult;
            } else {
                merged.push((fac, mult));
            }
        }
        let mut final_out: Vec<(Poly, u32)> = Vec::new();
        let mut check = self.scale(f.inv(unit)?);
        for (fac, _) in merged {
            let mut mult = 0u32;
            loop {
                let (q2, r2) = check.divmod(&fac)?;
                if r2.is_zero() {
                    mult += 1;
                    check = q2;
                } else {
                    break;
                }
            }
            final_out.push((fac, mult));
        }
        debug_assert_eq!(check.degree(), Some(0));
        final_out.sort_by_key(|(g, _)| (g.degree().unwrap(), g.encoding()));
        Ok((unit, final_out))
    }

    /// Parse the textual syntax: sum of terms `c*x^k`, `x^k`, `x`, `c`,
    /// with coefficients as element encodings in decimal.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        for term in cleaned.split('+') {
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let (coeff_str, pow_str) = match term.find('x') {
                None => (term, None),
                Some(ix) => {
                    let c = &term[..ix];
                    let rest = &term[ix + 1..];
                    let pow = if rest.is_empty() {
                        "1"
                    } else if let Some(stripped) = rest.strip_prefix('^') {
                        stripped
                    } else {
                        return Err(Error::Parse(alloc::format!("bad term `{term}`")));
                    };
                    (c, Some(pow))
                }
            };
            let coeff = if coeff_str.is_empty() {
                if pow_str.is_none() {
                    return Err(Error::Parse(alloc::format!("bad term `{term}`")));
                }
                Elem::ONE
            } else {
                let cs = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
                if cs.is_empty() {
                    Elem::ONE
                } else {
                    let enc: u32 = cs
                        .parse()
                        .map_err(|_| Error::Parse(alloc::format!("bad coefficient `{cs}`")))?;
                    field.elem(enc)?
                }
            };
            let k: usize = match pow_str {
                None => 0,
                Some(s) => s
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad exponent `{s}`")))?,
            };
            let mut term_coeffs = vec![Elem::ZERO; k + 1];
            term_coeffs[k] = coeff;
            acc = acc.add(&Poly::from_coeffs(field, term_coeffs));
        }
        Ok(acc)
    }
}

/// Split a squarefree product of distinct irreducibles, all of degree d, by
/// trial division against monic polynomials of degree d in encoding order.
/// Any monic degree-d divisor found this way is necessarily one of the
/// irreducible factors.
fn split_equal_degree(g: &Poly, d: u32) -> Result<Vec<Poly>> {
    let f = g.field().clone();
    let mut rem = g.clone();
    let mut out = Vec::new();
    if rem.degree() == Some(d as usize) {
        return Ok(vec![rem]);
    }
    let q = f.q() as u128;
    let mut lead = vec![Elem::ZERO; d as usize + 1];
    lead[d as usize] = Elem::ONE;
    let count = q.checked_pow(d).ok_or(Error::BudgetExceeded)?;
    if count > 100_000_000 {
        return Err(Error::BudgetExceeded);
    }
    let mut enc = 0u128;
    while enc < count {
        let mut cand = Poly::from_encoding(&f, enc);
        if cand.degree().map_or(0, |x| x) < d as usize {
            let mut coeffs = cand.coeffs.clone();
            coeffs.resize(d as usize + 1, Elem::ZERO);
            coeffs[d as usize] = Elem::ONE;
            cand = Poly::from_coeffs(&f, coeffs);
        } else {
            // encodings here only cover the low coefficients
            unreachable!()
        }
        let (quot, r) = rem.divmod(&cand)?;
        if r.is_zero() {
            out.push(cand);
            rem = quot;
            if rem.degree() == Some(d as usize) {
                out.push(rem);
                return Ok(out);
            }
            if rem.degree() == Some(0) {
                return Ok(out);
            }
            continue; // retry same candidate is pointless (squarefree)
        }
        enc += 1;
    }
    Err(Error::NotIrreducible)
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

pub(crate) fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Number of monic irreducibles of degree d over F_q, by the Moebius count
/// (1/d) * sum over e | d of mu(e) q^(d/e).
pub fn num_irreducibles(field: &Field, d: u32) -> u64 {
    let q = field.q() as i128;
    let mut total = 0i128;
    for e in divisors(d as u64) {
        total += moebius(e) as i128 * q.pow((d as u64 / e) as u32);
    }
    (total / d as i128) as u64
}

/// All monic irreducibles of degree d, sorted by encoding.
pub fn enumerate_irreducibles(field: &Field, d: u32) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    let q = field.q() as u128;
    let count = q.checked_pow(d).ok_or(Error::BudgetExceeded)?;
    if count > 10_000_000 {
        return Err(Error::BudgetExceeded);
    }
    let mut out = Vec::new();
    for low in 0..count {
        let mut coeffs = Poly::from_encoding(field, low).coeffs;
        coeffs.resize(d as usize + 1, Elem::ZERO);
        coeffs[d as usize] = Elem::ONE;
        let cand = Poly::from_coeffs(field, coeffs);
        if cand.is_irreducible()? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The i-th (0-based) monic irreducible of degree d in encoding order,
/// without materializing the full list.
pub fn nth_irreducible(field: &Field, d: u32, index: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    let q = field.q() as u128;
    let count = q.checked_pow(d).ok_or(Error::BudgetExceeded)?;
    let mut seen = 0usize;
    for low in 0..count {
        let mut coeffs = Poly::from_encoding(field, low).coeffs;
        coeffs.resize(d as usize + 1, Elem::ZERO);
        coeffs[d as usize] = Elem::ONE;
        let cand = Poly::from_coeffs(field, coeffs);
        if cand.is_irreducible()? {
            if seen == index {
                return Ok(cand);
            }
            seen += 1;
        }
    }
    Err(Error::NotRepresentable)
}

/// Number of monic irreducibles of degree d over F_q with constant term
/// theta != 0:
/// (1 / (d (q-1))) * sum over k | d with theta a k-th power of
/// mu(k) * hcf(q-1, k) * (q^(d/k) - 1).
pub fn count_irreducibles_with_constant(field: &Field, d: u32, theta: Elem) -> Result<u64> {
    if theta.is_zero() {
        return Err(Error::InvalidConstantTerm);
    }
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    let q = field.q() as i128;
    let mut total = 0i128;
    for k in divisors(d as u64) {
        let powers = field.kth_powers(k);
        if powers.binary_search(&theta).is_err() {
            continue;
        }
        let h = gcd_u64(field.q() as u64 - 1, k) as i128;
        total += moebius(k) as i128 * h * (q.pow((d as u64 / k) as u32) - 1);
    }
    let denom = d as i128 * (q - 1);
    debug_assert!(total % denom == 0);
    Ok((total / denom) as u64)
}

/// Minimum polynomial over the small field of an element of the big field,
/// as the product of (x - conjugate) over the Frobenius orbit.
pub fn min_poly_of_element(alpha: Elem, emb: &Embedding) -> Poly {
    let big = emb.big();
    let small = emb.small();
    let q = small.q() as u64;
    let mut orbit = vec![alpha];
    let mut cur = big.pow(alpha, q);
    while cur != alpha {
        orbit.push(cur);
        cur = big.pow(cur, q);
    }
    let mut prod = Poly::one(big);
    for &c in &orbit {
        let lin = Poly::from_coeffs(big, vec![big.neg(c), Elem::ONE]);
        prod = prod.mul(&lin);
    }
    let coeffs = prod
        .coeffs()
        .iter()
        .map(|&c| {
            emb.preimage(c)
                .expect("orbit product has subfield coefficients")
        })
        .collect();
    Poly::from_coeffs(small, coeffs)
}

/// Chinese remainder combination: the unique F of degree < sum deg(m_i) with
/// F = F_i mod m_i for all i. Moduli must be pairwise coprime.
pub fn crt_combine(pairs: &[(Poly, Poly)]) -> Result<Poly> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let f = pairs[0].0.field().clone();
    for i in 0..pairs.len() {
        if pairs[i].1.degree().is_none() {
            return Err(Error::DivisionByZero);
        }
        for j in (i + 1)..pairs.len() {
            if pairs[i].1.gcd(&pairs[j].1).degree() != Some(0) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let mut modulus_all = Poly::one(&f);
    for (_, m) in pairs {
        modulus_all = modulus_all.mul(m);
    }
    let mut acc = Poly::zero(&f);
    for (fi, mi) in pairs {
        let (rest, _) = modulus_all.divmod(mi)?;
        let (g, s, _) = rest.xgcd(mi);
        debug_assert_eq!(g.degree(), Some(0));
        // rest * s = g = 1 mod mi (g monic constant = 1)
        let term = fi.mul(&rest).mul(&s).rem(&modulus_all)?;
        acc = acc.add(&term).rem(&modulus_all)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }
    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn p(field: &Field, s: &str) -> Poly {
        Poly::parse(field, s).unwrap()
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let f = f2();
        for s in ["x^3+x+1", "x^2+x+1", "x", "1", "0", "x^6+x^5+x^4+x^3+x^2+x+1"] {
            let poly = p(&f, s);
            assert_eq!(alloc::format!("{poly}"), s);
        }
        let f4 = Field::new(2, 2).unwrap();
        let poly = p(&f4, "x^2+2*x+1");
        assert_eq!(poly.coeff(1), Elem(2));
        assert_eq!(alloc::format!("{poly}"), "x^2+2*x+1");
    }

    #[test]
    fn arithmetic_basics() {
        let f = f2();
        assert_eq!(p(&f, "x^2+x").gcd(&p(&f, "x")), p(&f, "x"));
        assert_eq!(p(&f, "x^2").compose(&p(&f, "x+1")), p(&f, "x^2+1"));
        let (q, r) = p(&f, "x^3+x+1").divmod(&p(&f, "x+1")).unwrap();
        assert_eq!(q.mul(&p(&f, "x+1")).add(&r), p(&f, "x^3+x+1"));
    }

    #[test]
    fn derivative_works() {
        let f = f3();
        // d/dx (x^3 + 2x^2 + x + 1) = 3x^2 + 4x + 1 = x + 1 over F_3
        let d = p(&f, "x^3+2*x^2+x+1").derivative();
        assert_eq!(d, p(&f, "x+1"));
    }

    #[test]
    fn irreducibility_examples() {
        let f = f2();
        assert!(p(&f, "x^2+x+1").is_irreducible().unwrap());
        assert!(!p(&f, "x^2+1").is_irreducible().unwrap());
        let f3 = f3();
        assert!(p(&f3, "x^2+1").is_irreducible().unwrap());
        assert!(matches!(
            p(&f, "1").is_irreducible(),
            Err(Error::InvalidDegree)
        ));
    }

    #[test]
    fn enumerate_matches_moebius_count() {
        for (pp, a) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let f = Field::new(pp, a).unwrap();
            for d in 1..=4 {
                let list = enumerate_irreducibles(&f, d).unwrap();
                assert_eq!(list.len() as u64, num_irreducibles(&f, d));
                for w in list.windows(2) {
                    assert!(w[0].encoding() < w[1].encoding());
                }
            }
        }
    }

    #[test]
    fn known_irreducible_lists() {
        let f = f2();
        let cubics = enumerate_irreducibles(&f, 3).unwrap();
        assert_eq!(cubics, vec![p(&f, "x^3+x+1"), p(&f, "x^3+x^2+1")]);
        let linears = enumerate_irreducibles(&f, 1).unwrap();
        assert_eq!(linears, vec![p(&f, "x"), p(&f, "x+1")]);
        let f3 = f3();
        assert_eq!(enumerate_irreducibles(&f3, 2).unwrap().len(), 3);
    }

    #[test]
    fn count_with_constant_examples() {
        let f = f2();
        assert_eq!(
            count_irreducibles_with_constant(&f, 3, Elem::ONE).unwrap(),
            2
        );
        let f3 = f3();
        assert_eq!(
            count_irreducibles_with_constant(&f3, 2, Elem::ONE).unwrap(),
            1
        );
        let f5 = Field::new(5, 1).unwrap();
        for t in 1..5 {
            assert_eq!(
                count_irreducibles_with_constant(&f5, 1, Elem(t)).unwrap(),
                1
            );
        }
        assert!(matches!(
            count_irreducibles_with_constant(&f, 2, Elem::ZERO),
            Err(Error::InvalidConstantTerm)
        ));
    }

    #[test]
    fn count_with_constant_matches_enumeration() {
        for (pp, a) in [(2u32, 1u32), (3, 1), (2, 2), (5, 1), (7, 1)] {
            let f = Field::new(pp, a).unwrap();
            for d in 1..=3u32 {
                let list = enumerate_irreducibles(&f, d).unwrap();
                for theta in f.elements().skip(1) {
                    let direct = list
                        .iter()
                        .filter(|g| g.coeff(0) == theta)
                        .count() as u64;
                    assert_eq!(
                        count_irreducibles_with_constant(&f, d, theta).unwrap(),
                        direct,
                        "q={} d={} theta={}",
                        f.q(),
                        d,
                        theta
                    );
                }
                // Row sum: all irreducibles except x itself have nonzero
                // constant term.
                let total: u64 = f
                    .elements()
                    .skip(1)
                    .map(|t| count_irreducibles_with_constant(&f, d, t).unwrap())
                    .sum();
                let expect = list.len() as u64 - if d == 1 { 1 } else { 0 };
                assert_eq!(total, expect);
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = f2();
        let (unit, facs) = p(&f, "x^4+x^2").factor().unwrap();
        assert_eq!(unit, Elem::ONE);
        assert_eq!(facs, vec![(p(&f, "x"), 2), (p(&f, "x+1"), 2)]);
        let (_, facs) = p(&f, "x^2+x+1").factor().unwrap();
        assert_eq!(facs, vec![(p(&f, "x^2+x+1"), 1)]);
        let prod = p(&f, "x^3+x+1").mul(&p(&f, "x^3+x^2+1"));
        assert_eq!(prod, p(&f, "x^6+x^5+x^4+x^3+x^2+x+1"));
        let (_, facs) = prod.factor().unwrap();
        assert_eq!(
            facs,
            vec![(p(&f, "x^3+x+1"), 1), (p(&f, "x^3+x^2+1"), 1)]
        );
    }

    #[test]
    fn factor_roundtrip_randomish() {
        // factor . multiply is the identity on factor multisets.
        let f = f2();
        let irs: Vec<Poly> = (1..=3)
            .flat_map(|d| enumerate_irreducibles(&f, d).unwrap())
            .collect();
        for i in 0..irs.len() {
            for j in i..irs.len() {
                for (mi, mj) in [(1, 1), (2, 1), (1, 3), (2, 2)] {
                    let prod = irs[i].pow(mi).mul(&irs[j].pow(mj));
                    if prod.degree().map_or(0, |d| d) > 8 {
                        continue;
                    }
                    let (_, facs) = prod.factor().unwrap();
                    let mut rebuilt = Poly::one(&f);
                    for (g, m) in &facs {
                        assert!(g.is_irreducible().unwrap());
                        rebuilt = rebuilt.mul(&g.pow(*m as u64));
                    }
                    assert_eq!(rebuilt, prod);
                }
            }
        }
    }

    #[test]
    fn min_poly_of_element_examples() {
        let f2 = f2();
        let f4 = Field::new(2, 2).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(min_poly_of_element(Elem::ONE, &emb), p(&f2, "x+1"));
        assert_eq!(
            min_poly_of_element(f4.generator(), &emb),
            p(&f2, "x^2+x+1")
        );
        let f3 = f3();
        let f9 = Field::new(3, 2).unwrap();
        let emb9 = Embedding::new(&f3, &f9).unwrap();
        let mp = min_poly_of_element(f9.generator(), &emb9);
        assert_eq!(mp.degree(), Some(2));
        assert!(mp.is_irreducible().unwrap());
    }

    #[test]
    fn crt_examples() {
        let f = f2();
        // Single pair: F mod m.
        let c = crt_combine(&[(p(&f, "x^3+x"), p(&f, "x^2+x+1"))]).unwrap();
        assert_eq!(c, p(&f, "x^3+x").rem(&p(&f, "x^2+x+1")).unwrap());
        // (1 mod x, 0 mod x+1) -> x+1
        let c = crt_combine(&[
            (p(&f, "1"), p(&f, "x")),
            (Poly::zero(&f), p(&f, "x+1")),
        ])
        .unwrap();
        assert_eq!(c, p(&f, "x+1"));
        assert!(matches!(
            crt_combine(&[
                (p(&f, "1"), p(&f, "x")),
                (Poly::zero(&f), p(&f, "x")),
            ]),
            Err(Error::NotCoprime)
        ));
    }

    #[test]
    fn crt_many_components() {
        let f = f3();
        let moduli = [p(&f, "x^2"), p(&f, "x^2+1"), p(&f, "x+1")];
        let residues = [p(&f, "x+2"), p(&f, "2*x"), p(&f, "1")];
        let pairs: Vec<(Poly, Poly)> = residues
            .iter()
            .cloned()
            .zip(moduli.iter().cloned())
            .collect();
        let c = crt_combine(&pairs).unwrap();
        for (r, m) in &pairs {
            assert_eq!(c.rem(m).unwrap(), r.rem(m).unwrap());
        }
    }
}
