//! Dense square matrices over a finite field: exact Gaussian elimination,
//! canonical constructions (Jordan, companion, cyclic and scalar-shift
//! blocks, Kronecker products, regular embedding of an extension-field
//! matrix algebra), minimum polynomial, cycle-type and class-type extraction,
//! centralizer bases, cyclic bases of nilpotent matrices, and a deterministic
//! conjugating-matrix construction via canonical forms.

// Dense linear algebra reads most clearly with explicit row/column indices;
// iterator rewrites of these loops obscure the pivoting structure.
#![allow(clippy::needless_range_loop, clippy::explicit_counter_loop)]

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{Elem, Embedding, Field};
use crate::partition::Partition;
use crate::poly::Poly;
use crate::{Error, Result};

/// Square matrix, row-major. Acts on column vectors: (Mv)_r = sum_c M[r][c] v_c.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}:", self.n, self.n, self.field)?;
        for r in 0..self.n {
            for c in 0..self.n {
                write!(f, "{} ", self.get(r, c).enc())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: &Field, n: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            n,
            entries: vec![Elem::ZERO; n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Elem) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            entries.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    fn check_compat(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compat(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compat(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compat(other)?;
        let f = &self.field;
        let n = self.n;
        let mut out = Matrix::zero(f, n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c);
                        out.set(r, c, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut result = Matrix::identity(&self.field, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        result
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let n = self.n;
        let mut out = vec![Elem::ZERO; n];
        for r in 0..n {
            let mut acc = Elem::ZERO;
            for c in 0..n {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc = f.add(acc, f.mul(a, v[c]));
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn commutes_with(&self, other: &Matrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::ShapeMismatch);
        }
        let n = self.n + other.n;
        let mut out = Matrix::zero(&self.field, n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.n {
            for c in 0..other.n {
                out.set(self.n + r, self.n + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::ShapeMismatch);
        }
        let f = &self.field;
        let (a, b) = (self.n, other.n);
        let mut out = Matrix::zero(f, a * b);
        for r1 in 0..a {
            for c1 in 0..a {
                let x = self.get(r1, c1);
                if x.is_zero() {
                    continue;
                }
                for r2 in 0..b {
                    for c2 in 0..b {
                        let y = other.get(r2, c2);
                        if !y.is_zero() {
                            out.set(r1 * b + r2, c1 * b + c2, f.mul(x, y));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// g^{-1} * self * g for invertible g.
    pub fn conjugate_by(&self, g: &Matrix) -> Result<Matrix> {
        let gi = g.inverse().ok_or(Error::DivisionByZero)?;
        gi.mul(self)?.mul(g)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Elem>> = (0..self.n)
            .map(|r| self.entries[r * self.n..(r + 1) * self.n].to_vec())
            .collect();
        row_echelon(&self.field, &mut rows)
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let n = self.n;
        let mut rows: Vec<Vec<Elem>> = (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect();
        let rank = row_echelon(f, &mut rows);
        rows.truncate(rank);
        // Pivot columns.
        let mut pivots = Vec::with_capacity(rank);
        for row in &rows {
            let p = row.iter().position(|e| !e.is_zero()).unwrap();
            pivots.push(p);
        }
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; n];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Elem::ZERO; n];
            v[free] = Elem::ONE;
            // Back-substitute: rows are in reduced echelon form.
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = f.neg(row[free]);
            }
            basis.push(v);
        }
        basis
    }

    /// True if v lies in the column space.
    pub fn in_image(&self, v: &[Elem]) -> bool {
        let f = &self.field;
        let n = self.n;
        // Rank of columns vs rank of columns plus v.
        let mut rows: Vec<Vec<Elem>> = (0..n)
            .map(|c| (0..n).map(|r| self.get(r, c)).collect())
            .collect();
        let base = row_echelon(f, &mut rows);
        let mut rows2: Vec<Vec<Elem>> = (0..n)
            .map(|c| (0..n).map(|r| self.get(r, c)).collect())
            .collect();
        rows2.push(v.to_vec());
        let ext = row_echelon(f, &mut rows2);
        base == ext
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut aug: Vec<Vec<Elem>> = (0..n)
            .map(|r| {
                let mut row = self.entries[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| if c == r { Elem::ONE } else { Elem::ZERO }));
                row
            })
            .collect();
        let mut row = 0;
        for col in 0..n {
            let piv = (row..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(piv, row);
            let inv = f.inv(aug[row][col]).ok()?;
            for c in 0..2 * n {
                aug[row][c] = f.mul(aug[row][c], inv);
            }
            for r in 0..n {
                if r != row && !aug[r][col].is_zero() {
                    let factor = aug[r][col];
                    for c in 0..2 * n {
                        let s = f.mul(factor, aug[row][c]);
                        aug[r][c] = f.sub(aug[r][c], s);
                    }
                }
            }
            row += 1;
        }
        let mut out = Matrix::zero(f, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug[r][n + c]);
            }
        }
        Some(out)
    }

    pub fn det(&self) -> Elem {
        let f = &self.field;
        let n = self.n;
        let mut rows: Vec<Vec<Elem>> = (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect();
        let mut det = Elem::ONE;
        let mut row = 0;
        for col in 0..n {
            let piv = match (row..n).find(|&r| !rows[r][col].is_zero()) {
                Some(p) => p,
                None => return Elem::ZERO,
            };
            if piv != row {
                rows.swap(piv, row);
                det = f.neg(det);
            }
            det = f.mul(det, rows[row][col]);
            let inv = f.inv(rows[row][col]).unwrap();
            for r in (row + 1)..n {
                if !rows[r][col].is_zero() {
                    let factor = f.mul(rows[r][col], inv);
                    for c in col..n {
                        let s = f.mul(factor, rows[row][c]);
                        rows[r][c] = f.sub(rows[r][c], s);
                    }
                }
            }
            row += 1;
        }
        det
    }

    pub fn is_nilpotent(&self) -> bool {
        // M^n = 0, by repeated squaring past n.
        let mut m = self.clone();
        let mut e = 1usize;
        while e < self.n {
            m = m.mul(&m).unwrap();
            e *= 2;
        }
        m == Matrix::zero(&self.field, self.n)
    }

    /// Evaluate a polynomial at this matrix.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        let fld = &self.field;
        let mut acc = Matrix::zero(fld, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).unwrap();
            if !c.is_zero() {
                for i in 0..self.n {
                    let cur = acc.get(i, i);
                    acc.set(i, i, fld.add(cur, c));
                }
            }
        }
        acc
    }

    /// Minimum polynomial via Krylov spaces: the lcm over standard basis
    /// vectors of the least annihilator of each vector.
    pub fn min_poly(&self) -> Poly {
        let f = &self.field;
        let n = self.n;
        let mut result = Poly::one(f);
        for start in 0..n {
            if result.degree() == Some(n) {
                break;
            }
            let mut v = vec![Elem::ZERO; n];
            v[start] = Elem::ONE;
            // Echelon rows with tracked combinations in terms of M^j v.
            let mut ech: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
            let mut w = v.clone();
            let mut j = 0usize;
            loop {
                let mut combo = vec![Elem::ZERO; j + 2];
                combo[j] = Elem::ONE;
                let mut cur = w.clone();
                // Reduce against echelon.
                for (row, rc) in &ech {
                    let p = row.iter().position(|e| !e.is_zero()).unwrap();
                    if !cur[p].is_zero() {
                        let factor = f.mul(cur[p], f.inv(row[p]).unwrap());
                        for i in 0..n {
                            let s = f.mul(factor, row[i]);
                            cur[i] = f.sub(cur[i], s);
                        }
                        for (i, &c) in rc.iter().enumerate() {
                            if i < combo.len() {
                                let s = f.mul(factor, c);
                                combo[i] = f.sub(combo[i], s);
                            }
                        }
                    }
                }
                if cur.iter().all(|e| e.is_zero()) {
                    // combo gives the annihilator coefficients (degree j).
                    let ann = Poly::from_coeffs(f, combo);
                    let g = result.gcd(&ann);
                    result = result.mul(&ann.divmod(&g).unwrap().0);
                    break;
                }
                ech.push((cur, combo));
                w = self.apply(&w);
                j += 1;
            }
        }
        // Make monic (lcm of monics is monic up to unit; gcd is monic).
        if !result.is_monic() {
            let inv = f.inv(result.leading()).unwrap();
            result = result.scale(inv);
        }
        result
    }

    /// Partition of a nilpotent matrix: m_j parts of size j where
    /// m_j = (null M^j - null M^{j-1}) - (null M^{j+1} - null M^j).
    pub fn nilpotent_partition(&self) -> Result<Partition> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let n = self.n;
        let mut nulls = vec![0usize];
        let mut p = Matrix::identity(&self.field, n);
        while *nulls.last().unwrap() < n {
            p = p.mul(self).unwrap();
            nulls.push(p.nullity());
        }
        partition_from_nullities(&nulls, n, 1)
    }

    /// Cycle type and class type. The minimum polynomial is factored; for
    /// each irreducible factor f of degree d, the partition lambda_f has
    /// d * m_j = (null f(M)^j - null f(M)^{j-1}) - (null f(M)^{j+1} - null f(M)^j)
    /// parts of size j.
    pub fn cycle_type(&self) -> Result<CycleType> {
        if self.n == 0 {
            return Ok(CycleType {
                field: self.field.clone(),
                components: vec![],
            });
        }
        let mp = self.min_poly();
        let (_, factors) = mp.factor()?;
        let mut components = Vec::new();
        let mut total = 0usize;
        for (fpoly, a) in factors {
            let d = fpoly.degree().unwrap();
            let fm = self.eval_poly(&fpoly);
            let mut nulls = vec![0usize];
            let mut p = Matrix::identity(&self.field, self.n);
            for _ in 0..a {
                p = p.mul(&fm).unwrap();
                nulls.push(p.nullity());
            }
            // nullity stabilizes at exponent a (a is the multiplicity in the
            // minimum polynomial).
            let stable = *nulls.last().unwrap();
            nulls.push(stable);
            let lam = partition_from_nullities(&nulls, stable, d)?;
            total += d * lam.size() as usize;
            components.push((fpoly, lam));
        }
        if total != self.n {
            // Consistency check of the dimension bookkeeping.
            return Err(Error::ShapeMismatch);
        }
        components.sort_by_key(|(f, _)| (f.degree().unwrap(), f.encoding()));
        Ok(CycleType {
            field: self.field.clone(),
            components,
        })
    }

    pub fn class_type(&self) -> Result<ClassType> {
        Ok(self.cycle_type()?.class_type())
    }
}

/// In-place reduced row echelon form; returns the rank.
pub(crate) fn row_echelon(f: &Field, rows: &mut [Vec<Elem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut row = 0;
    for col in 0..width {
        let piv = match (row..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        rows.swap(piv, row);
        let inv = f.inv(rows[row][col]).unwrap();
        for c in 0..width {
            rows[row][c] = f.mul(rows[row][c], inv);
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for c in 0..width {
                    let s = f.mul(factor, rows[row][c]);
                    rows[r][c] = f.sub(rows[r][c], s);
                }
            }
        }
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    row
}

fn partition_from_nullities(nulls: &[usize], total: usize, d: usize) -> Result<Partition> {
    // nulls[j] = nullity of the j-th power; nulls[last] assumed stable.
    let mut incr: Vec<usize> = nulls.windows(2).map(|w| w[1] - w[0]).collect();
    incr.push(0);
    let mut parts = Vec::new();
    for j in 0..incr.len() - 1 {
        let m = incr[j] - incr[j + 1];
        if !m.is_multiple_of(d) {
            return Err(Error::ShapeMismatch);
        }
        for _ in 0..(m / d) {
            parts.push((j + 1) as u32);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let p = Partition::new(&parts).expect("sorted positive parts");
    if p.size() as usize * d != total {
        return Err(Error::ShapeMismatch);
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Cycle types and class types
// ---------------------------------------------------------------------------

/// The full invariant of a similarity class: pairwise distinct monic
/// irreducibles with partitions, sorted by (degree, encoding).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleType {
    field: Field,
    components: Vec<(Poly, Partition)>,
}

impl CycleType {
    pub fn new(field: &Field, mut components: Vec<(Poly, Partition)>) -> Result<CycleType> {
        for (f, lam) in &components {
            if f.degree().is_none_or(|d| d == 0) || !f.is_monic() {
                return Err(Error::NotIrreducible);
            }
            if !f.is_irreducible()? {
                return Err(Error::NotIrreducible);
            }
            if lam.is_empty() {
                return Err(Error::EmptyInput);
            }
        }
        components.sort_by_key(|(f, _)| (f.degree().unwrap(), f.encoding()));
        for w in components.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Parse("repeated polynomial in cycle type".into()));
            }
        }
        Ok(CycleType {
            field: field.clone(),
            components,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn components(&self) -> &[(Poly, Partition)] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components
            .iter()
            .map(|(f, lam)| f.degree().unwrap() * lam.size() as usize)
            .sum()
    }

    /// Forget polynomials, keep degrees.
    pub fn class_type(&self) -> ClassType {
        let mut components: Vec<(u32, Partition)> = self
            .components
            .iter()
            .map(|(f, lam)| (f.degree().unwrap() as u32, lam.clone()))
            .collect();
        components.sort();
        ClassType { components }
    }
}

/// The degree-forgetting invariant: a multiset of (degree, partition) pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ClassType {
    components: Vec<(u32, Partition)>,
}

impl ClassType {
    pub fn new(mut components: Vec<(u32, Partition)>) -> Result<ClassType> {
        for (d, lam) in &components {
            if *d == 0 || lam.is_empty() {
                return Err(Error::EmptyInput);
            }
        }
        components.sort();
        Ok(ClassType { components })
    }

    pub fn components(&self) -> &[(u32, Partition)] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components
            .iter()
            .map(|(d, lam)| *d as usize * lam.size() as usize)
            .sum()
    }

    pub fn is_primary(&self) -> bool {
        self.components.len() == 1
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Upper-triangular Jordan form of the nilpotent class N(lambda): one block
/// per part, each block with ones on the superdiagonal.
pub fn jordan(field: &Field, lam: &Partition) -> Matrix {
    let n = lam.size() as usize;
    let mut m = Matrix::zero(field, n);
    let mut off = 0usize;
    for &h in lam.parts() {
        for t in 0..(h as usize - 1) {
            m.set(off + t, off + t + 1, Elem::ONE);
        }
        off += h as usize;
    }
    m
}

/// Companion matrix of a monic polynomial.
pub fn companion(f: &Poly) -> Result<Matrix> {
    let d = f.degree().ok_or(Error::InvalidDegree)?;
    if d == 0 {
        return Err(Error::InvalidDegree);
    }
    if !f.is_monic() {
        return Err(Error::NotIrreducible);
    }
    let fld = f.field().clone();
    let mut m = Matrix::zero(&fld, d);
    for i in 1..d {
        m.set(i, i - 1, Elem::ONE);
    }
    for i in 0..d {
        m.set(i, d - 1, fld.neg(f.coeff(i)));
    }
    Ok(m)
}

/// Companion matrix of f^h for irreducible f: the cyclic block with cycle
/// type f^{(h)}.
pub fn cyclic_block(f: &Poly, h: u32) -> Result<Matrix> {
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    companion(&f.pow(h as u64))
}

/// Block matrix with P along the diagonal (k copies) and identities on the
/// block superdiagonal; for P = companion(f) this has class type d^{(k)}.
pub fn pk_block(p: &Matrix, k: u32) -> Matrix {
    let d = p.dim();
    let n = d * k as usize;
    let mut m = Matrix::zero(p.field(), n);
    for b in 0..k as usize {
        for r in 0..d {
            for c in 0..d {
                m.set(b * d + r, b * d + c, p.get(r, c));
            }
        }
        if b + 1 < k as usize {
            for r in 0..d {
                m.set(b * d + r, (b + 1) * d + r, Elem::ONE);
            }
        }
    }
    m
}

/// Canonical representative: direct sum of cyclic blocks companion(f^h) in
/// canonical component order, parts in decreasing order.
pub fn class_rep(t: &CycleType) -> Result<Matrix> {
    let field = t.field().clone();
    let mut acc = Matrix::zero(&field, 0);
    for (f, lam) in t.components() {
        for &h in lam.parts() {
            let block = companion(&f.pow(h as u64))?;
            acc = acc.direct_sum(&block)?;
        }
    }
    Ok(acc)
}

/// Regular embedding of a matrix over F_{q^l} into dimension l*m over F_q:
/// every entry y becomes the l x l matrix of multiplication by y in the
/// basis 1, theta, ..., theta^{l-1}.
pub fn regular_embed(m: &Matrix, emb: &Embedding) -> Result<Matrix> {
    if m.field() != emb.big() {
        return Err(Error::ShapeMismatch);
    }
    let l = emb.degree() as usize;
    let small = emb.small().clone();
    let big = emb.big().clone();
    let n = m.dim();
    let theta = if big.a() == 1 {
        Elem::ZERO
    } else {
        Elem(big.p())
    };
    let mut out = Matrix::zero(&small, l * n);
    for r in 0..n {
        for c in 0..n {
            let y = m.get(r, c);
            if y.is_zero() {
                continue;
            }
            // Column j of the block: coordinates of y * theta^j.
            let mut tp = Elem::ONE;
            for j in 0..l {
                let coords = emb.decompose(big.mul(y, tp));
                for (i, &co) in coords.iter().enumerate() {
                    out.set(r * l + i, c * l + j, co);
                }
                tp = big.mul(tp, theta);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Centralizers
// ---------------------------------------------------------------------------

/// Basis of Cent(M) = {X : XM = MX} as a vector space, by solving the
/// Sylvester system.
pub fn centralizer_basis(m: &Matrix) -> Vec<Matrix> {
    let f = m.field().clone();
    let n = m.dim();
    let nn = n * n;
    // Equation (r,c): sum_k X[r][k] M[k][c] - M[r][k] X[k][c] = 0.
    // Variable index of X[i][j] is i*n + j.
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(nn);
    for r in 0..n {
        for c in 0..n {
            let mut row = vec![Elem::ZERO; nn];
            for k in 0..n {
                let a = m.get(k, c);
                if !a.is_zero() {
                    let idx = r * n + k;
                    row[idx] = f.add(row[idx], a);
                }
                let b = m.get(r, k);
                if !b.is_zero() {
                    let idx = k * n + c;
                    row[idx] = f.sub(row[idx], b);
                }
            }
            rows.push(row);
        }
    }
    // Kernel of the nn x nn system.
    let rank = row_echelon(&f, &mut rows);
    rows.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for row in &rows {
        pivots.push(row.iter().position(|e| !e.is_zero()).unwrap());
    }
    let mut pivot_set = vec![false; nn];
    for &p in &pivots {
        pivot_set[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..nn {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Elem::ZERO; nn];
        v[free] = Elem::ONE;
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = f.neg(row[free]);
        }
        basis.push(Matrix {
            field: f.clone(),
            n,
            entries: v,
        });
    }
    basis
}

/// Supports of the chain-map basis of Cent(J(lambda)): basis element
/// (i, j, m) sends the t-th vector of chain i to the (m - (h_i - t))-th
/// vector of chain j, for m = 1..min(h_i, h_j). Returned as coordinate lists
/// of ones; the full centralizer is all field-coefficient combinations.
/// The basis size is sum over i,j of min(h_i, h_j).
pub fn jordan_chain_supports(lam: &Partition) -> Vec<Vec<(usize, usize)>> {
    let parts = lam.parts();
    let mut offs = Vec::with_capacity(parts.len());
    let mut off = 0usize;
    for &h in parts {
        offs.push(off);
        off += h as usize;
    }
    let mut out = Vec::new();
    for (i, &hi) in parts.iter().enumerate() {
        for (j, &hj) in parts.iter().enumerate() {
            for m in 1..=hi.min(hj) {
                let mut coords = Vec::new();
                for t in 1..=hi {
                    let tgt = m as i64 - (hi as i64 - t as i64);
                    if tgt >= 1 {
                        coords.push((offs[j] + tgt as usize - 1, offs[i] + t as usize - 1));
                    }
                }
                out.push(coords);
            }
        }
    }
    out
}

/// The chain-map basis as dense matrices.
pub fn jordan_chain_basis(field: &Field, lam: &Partition) -> Vec<Matrix> {
    let n = lam.size() as usize;
    jordan_chain_supports(lam)
        .into_iter()
        .map(|coords| {
            let mut m = Matrix::zero(field, n);
            for (r, c) in coords {
                m.set(r, c, Elem::ONE);
            }
            m
        })
        .collect()
}

/// Expected dimension of Cent(J(lambda)): sum over i,j of min(lambda_i, lambda_j).
pub fn centralizer_dimension(lam: &Partition) -> u64 {
    let parts = lam.parts();
    let mut sum = 0u64;
    for &a in parts {
        for &b in parts {
            sum += a.min(b) as u64;
        }
    }
    sum
}

// ---------------------------------------------------------------------------
// Cyclic bases and composition-series dimensions
// ---------------------------------------------------------------------------

/// A cyclic basis of a nilpotent matrix: chains v, Mv, ..., M^{h-1}v with v
/// a cyclic vector (not in the image of M) of height h.
pub struct CyclicBasis {
    /// One entry per chain: (cyclic vector, height); heights are the parts
    /// of the nilpotent partition in decreasing order.
    pub chains: Vec<(Vec<Elem>, u32)>,
    /// All basis vectors: chain 0's vectors v, Mv, ... then chain 1's, etc.
    pub vectors: Vec<Vec<Elem>>,
}

fn span_contains(f: &Field, ech: &[Vec<Elem>], v: &[Elem]) -> bool {
    reduce_against(f, ech, v).iter().all(|e| e.is_zero())
}

fn reduce_against(f: &Field, ech: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    let mut cur = v.to_vec();
    for row in ech {
        let p = match row.iter().position(|e| !e.is_zero()) {
            Some(p) => p,
            None => continue,
        };
        if !cur[p].is_zero() {
            let factor = f.mul(cur[p], f.inv(row[p]).unwrap());
            for i in 0..cur.len() {
                let s = f.mul(factor, row[i]);
                cur[i] = f.sub(cur[i], s);
            }
        }
    }
    cur
}

fn insert_into_span(f: &Field, ech: &mut Vec<Vec<Elem>>, v: &[Elem]) -> bool {
    let cur = reduce_against(f, ech, v);
    if cur.iter().all(|e| e.is_zero()) {
        false
    } else {
        ech.push(cur);
        true
    }
}

/// Compute ker M^h bases for h = 0..=H where H is the max height.
fn kernel_chain(m: &Matrix) -> Vec<Vec<Vec<Elem>>> {
    let n = m.dim();
    let mut out = vec![Vec::new()]; // ker M^0 = 0
    let mut p = Matrix::identity(m.field(), n);
    loop {
        p = p.mul(m).unwrap();
        let k = p.kernel_basis();
        let done = k.len() == n;
        out.push(k);
        if done {
            break;
        }
        if out.len() > n + 1 {
            break; // not nilpotent; caller checks
        }
    }
    out
}

pub fn cyclic_basis(m: &Matrix) -> Result<CyclicBasis> {
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let f = m.field().clone();
    let n = m.dim();
    let kers = kernel_chain(m);
    let hmax = kers.len() - 1;
    let mut chains: Vec<(Vec<Elem>, u32)> = Vec::new();
    for h in (1..=hmax).rev() {
        // U_h = ker M^{h-1} + M * ker M^{h+1}; new cyclic vectors extend a
        // basis of U_h inside ker M^h.
        let mut ech: Vec<Vec<Elem>> = Vec::new();
        for v in &kers[h - 1] {
            insert_into_span(&f, &mut ech, v);
        }
        if h < hmax {
            for v in &kers[h + 1] {
                insert_into_span(&f, &mut ech, &m.apply(v));
            }
        }
        for cand in &kers[h] {
            if insert_into_span(&f, &mut ech, cand) {
                chains.push((cand.clone(), h as u32));
            }
        }
    }
    chains.sort_by_key(|c| core::cmp::Reverse(c.1));
    let mut vectors = Vec::with_capacity(n);
    for (v, h) in &chains {
        let mut cur = v.clone();
        for _ in 0..*h {
            vectors.push(cur.clone());
            cur = m.apply(&cur);
        }
    }
    // The chain construction guarantees a basis; assert it.
    let mut ech = Vec::new();
    let mut count = 0;
    for v in &vectors {
        if insert_into_span(&f, &mut ech, v) {
            count += 1;
        }
    }
    debug_assert_eq!(count, n);
    Ok(CyclicBasis { chains, vectors })
}

/// For nilpotent M: h -> dim ker M^h / (ker M^{h-1} + M ker M^{h+1}),
/// which equals the multiplicity of the part h.
pub fn simple_module_dims(m: &Matrix) -> Result<Vec<(u32, u32)>> {
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let f = m.field().clone();
    let kers = kernel_chain(m);
    let hmax = kers.len() - 1;
    let mut out = Vec::new();
    for h in 1..=hmax {
        // Span of U_h = ker M^{h-1} + M ker M^{h+1}; the quotient dimension
        // is the number of ker M^h basis vectors extending that span.
        let mut ech: Vec<Vec<Elem>> = Vec::new();
        for v in &kers[h - 1] {
            insert_into_span(&f, &mut ech, v);
        }
        if h < hmax {
            for v in &kers[h + 1] {
                insert_into_span(&f, &mut ech, &m.apply(v));
            }
        }
        let mut mh = 0u32;
        for v in &kers[h] {
            if insert_into_span(&f, &mut ech, v) {
                mh += 1;
            }
        }
        if mh > 0 {
            out.push((h as u32, mh));
        }
    }
    Ok(out)
}

/// The induced action of a centralizer element Y on the simple module at
/// part size h, in the basis given by the cyclic vectors of height h of the
/// provided cyclic basis: an m_h x m_h matrix.
pub fn induced_action(
    m: &Matrix,
    basis: &CyclicBasis,
    y: &Matrix,
    h: u32,
) -> Result<Matrix> {
    let f = m.field().clone();
    let n = m.dim();
    // Coordinates in the full cyclic basis.
    let mut full: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for v in &basis.vectors {
        full.push(v.clone());
    }
    let basis_mat = Matrix::from_rows(&f, &full)?.transpose();
    let inv = basis_mat.inverse().ok_or(Error::ShapeMismatch)?;
    // Chain-top positions of height h.
    let mut tops = Vec::new();
    let mut pos = 0usize;
    for (_, hh) in &basis.chains {
        if *hh == h {
            tops.push(pos);
        }
        pos += *hh as usize;
    }
    let k = tops.len();
    let mut out = Matrix::zero(&f, k);
    for (col, &tc) in tops.iter().enumerate() {
        let image = y.apply(&basis.vectors[tc]);
        let coords = inv.apply(&image);
        for (row, &tr) in tops.iter().enumerate() {
            out.set(row, col, coords[tr]);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical-form change of basis and conjugating matrices
// ---------------------------------------------------------------------------

/// A matrix P with P^{-1} A P = class_rep(cycle_type(A)).
pub fn to_canonical_basis(a: &Matrix) -> Result<Matrix> {
    let f = a.field().clone();
    let n = a.dim();
    let ct = a.cycle_type()?;
    let mut columns: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for (fpoly, lam) in ct.components() {
        let d = fpoly.degree().unwrap();
        let k = a.eval_poly(fpoly);
        // Kernel chain of K = f(A).
        let amax = lam.parts()[0] as usize;
        let mut kers: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
        let mut p = Matrix::identity(&f, n);
        for _ in 0..(amax + 1) {
            p = p.mul(&k).unwrap();
            kers.push(p.kernel_basis());
        }
        // Chains chosen greedily per height, tracking A-translates.
        let mut chains: Vec<(Vec<Elem>, u32)> = Vec::new();
        for h in (1..=amax).rev() {
            let mut ech: Vec<Vec<Elem>> = Vec::new();
            for v in &kers[h - 1] {
                insert_into_span(&f, &mut ech, v);
            }
            for v in &kers[h + 1] {
                insert_into_span(&f, &mut ech, &k.apply(v));
            }
            for cand in &kers[h] {
                if span_contains(&f, &ech, cand) {
                    continue;
                }
                // Accept; add all A-translates A^s cand (s < d).
                let mut cur = cand.clone();
                for _ in 0..d {
                    insert_into_span(&f, &mut ech, &cur);
                    cur = a.apply(&cur);
                }
                chains.push((cand.clone(), h as u32));
            }
        }
        chains.sort_by_key(|c| core::cmp::Reverse(c.1));
        // Emit columns v, Av, ..., A^{dh-1} v per chain, parts descending.
        for (v, h) in chains {
            let mut cur = v;
            for _ in 0..(d as u32 * h) {
                columns.push(cur.clone());
                cur = a.apply(&cur);
            }
        }
    }
    if columns.len() != n {
        return Err(Error::NotSimilar);
    }
    let mut pmat = Matrix::zero(&f, n);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n {
            pmat.set(r, c, col[r]);
        }
    }
    if pmat.inverse().is_none() {
        return Err(Error::NotSimilar);
    }
    Ok(pmat)
}

/// An invertible g with g^{-1} A g = B, for similar A and B.
pub fn conjugating_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.dim() != b.dim() || a.field() != b.field() {
        return Err(Error::ShapeMismatch);
    }
    if a.cycle_type()? != b.cycle_type()? {
        return Err(Error::NotSimilar);
    }
    let pa = to_canonical_basis(a)?;
    let pb = to_canonical_basis(b)?;
    let g = pa.mul(&pb.inverse().ok_or(Error::NotSimilar)?)?;
    debug_assert_eq!(a.conjugate_by(&g).unwrap(), *b);
    Ok(g)
}
