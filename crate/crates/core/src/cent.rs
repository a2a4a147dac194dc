//! Centralizer determinants: the part-size invariant, the determinant set of
//! a centralizer algebra (theorem formula and brute-force enumeration), the
//! centralizing-subgroup index, determinant coverage of class types, and the
//! pi-expressibility machinery for linear types with its conjecture checker.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Elem, Field};
use crate::matrix::{centralizer_basis, ClassType, Matrix};
use crate::partition::{self, Partition};
use crate::poly;
use crate::typealg;
use crate::{Error, Result};

/// Cap on the number of constant-term assignments examined by the exhaustive
/// coverage mode; beyond this the computation refuses rather than returning a
/// partial set.
const COVERAGE_CAP: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Part-size invariant and determinant sets
// ---------------------------------------------------------------------------

/// The part-size invariant of a class type: the highest common factor of all
/// parts across all component partitions.
pub fn part_size_invariant_of_type(t: &ClassType) -> Result<u32> {
    let parts: Vec<Partition> = t
        .components()
        .iter()
        .map(|(_, lam)| lam.clone())
        .collect();
    partition::part_size_invariant(&parts)
}

/// The part-size invariant of a matrix (via its class type).
pub fn part_size_invariant_of(m: &Matrix) -> Result<u32> {
    part_size_invariant_of_type(&m.class_type()?)
}

/// How to compute a determinant set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetMode {
    /// The classification: the k-th powers of the field, k the part-size
    /// invariant.
    Theorem,
    /// Direct enumeration of the centralizer algebra.
    BruteForce,
}

/// The set of determinants of elements of Cent(M), sorted by encoding.
/// Theorem mode applies the classification; brute-force mode enumerates the
/// centralizer (q^dim(Cent) elements) and fails with BudgetExceeded when that
/// exceeds the budget.
pub fn det_set(m: &Matrix, mode: DetMode, budget: u64) -> Result<Vec<Elem>> {
    if m.dim() == 0 {
        return Err(Error::EmptyInput);
    }
    let field = m.field().clone();
    match mode {
        DetMode::Theorem => {
            let k = part_size_invariant_of(m)?;
            Ok(field.kth_powers(k as u64))
        }
        DetMode::BruteForce => {
            let basis = centralizer_basis(m);
            let c = basis.len();
            let q = field.q() as u64;
            let mut total = 1u64;
            for _ in 0..c {
                total = total
                    .checked_mul(q)
                    .filter(|&t| t <= budget)
                    .ok_or(Error::BudgetExceeded)?;
            }
            let mut dets: BTreeSet<Elem> = BTreeSet::new();
            let mut digits = vec![0u32; c];
            loop {
                let mut y = Matrix::zero(&field, m.dim());
                for (i, &dg) in digits.iter().enumerate() {
                    if dg != 0 {
                        y = y.add(&basis[i].scale(Elem(dg)))?;
                    }
                }
                dets.insert(y.det());
                let mut i = 0usize;
                loop {
                    if i == c {
                        return Ok(dets.into_iter().collect());
                    }
                    digits[i] += 1;
                    if digits[i] < field.q() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

/// The index c = hcf(q - 1, k) of the centralizing subgroup of a class with
/// part-size invariant k: for invertible M the centralizing subgroup is the
/// unique index-c subgroup of GL_n(F_q) containing SL_n(F_q). The formula is
/// well-defined for any k, invertible or not.
pub fn centralizing_index(k: u32, field: &Field) -> u32 {
    crate::gf::gcd_u64((field.q() - 1) as u64, k as u64) as u32
}

/// Centralizing index of a class type: hcf(q - 1, part-size invariant).
pub fn centralizing_index_of_type(t: &ClassType, field: &Field) -> Result<u32> {
    Ok(centralizing_index(part_size_invariant_of_type(t)?, field))
}

// ---------------------------------------------------------------------------
// Determinant coverage of class types
// ---------------------------------------------------------------------------

/// How to compute determinant coverage of a class type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    /// Closed forms where available (primary types, a coprimality condition,
    /// linear types via pi-expressibility), otherwise exhaustive.
    Fast,
    /// Enumeration of all constant-term assignments.
    Exhaustive,
}

/// The set of determinants of matrices of class type T over F, sorted by
/// encoding. Zero occurs iff T has a degree-1 component. Exhaustive mode
/// enumerates assignments of pairwise-distinct irreducibles to components
/// degree by degree (only constant terms matter: a component d^lam with
/// polynomial f contributes (-1)^(d|lam|) f(0)^|lam|); Fast mode uses the
/// primary-type formula, the coprimality sufficient condition, or the
/// pi-expressibility reduction for linear types before falling back.
pub fn type_det_coverage(
    t: &ClassType,
    field: &Field,
    mode: CoverageMode,
) -> Result<Vec<Elem>> {
    if !typealg::representable(t, field) {
        return Err(Error::NotRepresentable);
    }
    if mode == CoverageMode::Exhaustive {
        return exhaustive_coverage(t, field);
    }
    let linear_count = t.components().iter().filter(|(d, _)| *d == 1).count() as u32;
    let has_linear = linear_count > 0;
    // Primary types: nonzero determinants are exactly the |lam|-th powers.
    if t.is_primary() {
        let (d, lam) = &t.components()[0];
        let mut out = field.kth_powers(lam.size() as u64);
        if *d != 1 {
            out.retain(|e| !e.is_zero());
        }
        return Ok(out);
    }
    // Sufficient condition: some degree d with d * L_d coprime to q - 1
    // yields every nonzero determinant. This requires an invertible
    // representative, i.e. the degree-1 components must fit among the q - 1
    // linear polynomials with nonzero constant term.
    let mut lsums: BTreeMap<u32, u64> = BTreeMap::new();
    for (d, lam) in t.components() {
        *lsums.entry(*d).or_insert(0) += lam.size() as u64;
    }
    let m = (field.q() - 1) as u64;
    if linear_count as u64 <= m
        && lsums
            .iter()
            .any(|(&d, &l)| crate::gf::gcd_u64(d as u64 * l, m) == 1)
    {
        let mut out: Vec<Elem> = field.elements().filter(|e| !e.is_zero()).collect();
        if has_linear {
            out.insert(0, Elem::ZERO);
        }
        out.sort();
        return Ok(out);
    }
    // Linear types: nonzero determinants are the pi-expressible elements of
    // the multiplicative group, for pi the component sizes padded with zeros.
    if t.components().iter().all(|(d, _)| *d == 1) {
        return linear_coverage(t, field);
    }
    exhaustive_coverage(t, field)
}

fn linear_coverage(t: &ClassType, field: &Field) -> Result<Vec<Elem>> {
    let m = field.q() - 1;
    let mut out: BTreeSet<Elem> = BTreeSet::new();
    // A degree-1 component may take the polynomial x, so zero always occurs.
    out.insert(Elem::ZERO);
    let tcount = t.components().len() as u32;
    if tcount <= m {
        let sizes: Vec<i64> = t
            .components()
            .iter()
            .map(|(_, lam)| lam.size() as i64)
            .collect();
        let pi = ExponentVector::new(m, &sizes)?;
        let g = field.generator();
        for e in pi_expressible_set(&pi) {
            out.insert(field.pow(g, e as u64));
        }
    }
    // With t = q components every assignment uses the polynomial x, so the
    // nonzero part is empty.
    Ok(out.into_iter().collect())
}

/// Assign constant terms to the same-degree components with per-term
/// capacities (the number of irreducibles of that degree and constant term),
/// collecting the set of determinant contributions of the degree.
fn degree_products(
    d: u32,
    sizes: &[u32],
    field: &Field,
    counter: &mut u64,
) -> Result<BTreeSet<Elem>> {
    let mut caps: Vec<(Elem, u64)> = Vec::new();
    for theta in field.elements() {
        let c = if theta.is_zero() {
            // x is the only irreducible with constant term zero.
            if d == 1 {
                1
            } else {
                0
            }
        } else {
            poly::count_irreducibles_with_constant(field, d, theta)?
        };
        if c > 0 {
            caps.push((theta, c));
        }
    }
    let minus_one = field.neg(Elem::ONE);
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Elem)> = vec![(0, Elem::ONE)];
    // Depth-first over components; `remaining` tracks capacities in place.
    let mut remaining: Vec<u64> = caps.iter().map(|&(_, c)| c).collect();
    // The recursion threads the full DFS state explicitly rather than through
    // a struct, since every field changes on every frame.
    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        acc: Elem,
        sizes: &[u32],
        d: u32,
        caps: &[(Elem, u64)],
        remaining: &mut [u64],
        minus_one: Elem,
        field: &Field,
        counter: &mut u64,
        out: &mut BTreeSet<Elem>,
    ) -> Result<()> {
        if pos == sizes.len() {
            out.insert(acc);
            return Ok(());
        }
        let s = sizes[pos];
        for i in 0..caps.len() {
            if remaining[i] == 0 {
                continue;
            }
            *counter += 1;
            if *counter > COVERAGE_CAP {
                return Err(Error::BudgetExceeded);
            }
            let theta = caps[i].0;
            let mut factor = field.pow(theta, s as u64);
            if (d as u64 * s as u64) % 2 == 1 {
                factor = field.mul(factor, minus_one);
            }
            remaining[i] -= 1;
            let r = rec(
                pos + 1,
                field.mul(acc, factor),
                sizes,
                d,
                caps,
                remaining,
                minus_one,
                field,
                counter,
                out,
            );
            remaining[i] += 1;
            r?;
        }
        Ok(())
    }
    stack.clear();
    rec(
        0,
        Elem::ONE,
        sizes,
        d,
        &caps,
        &mut remaining,
        minus_one,
        field,
        counter,
        &mut out,
    )?;
    Ok(out)
}

fn exhaustive_coverage(t: &ClassType, field: &Field) -> Result<Vec<Elem>> {
    let mut by_deg: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (d, lam) in t.components() {
        by_deg.entry(*d).or_default().push(lam.size());
    }
    let mut counter = 0u64;
    let mut total: BTreeSet<Elem> = BTreeSet::new();
    total.insert(Elem::ONE);
    for (&d, sizes) in &by_deg {
        let part = degree_products(d, sizes, field, &mut counter)?;
        let mut next = BTreeSet::new();
        for &a in &total {
            for &b in &part {
                next.insert(field.mul(a, b));
            }
        }
        total = next;
    }
    Ok(total.into_iter().collect())
}

// ---------------------------------------------------------------------------
// Pi-expressibility
// ---------------------------------------------------------------------------

/// A canonical exponent vector for pi-expressibility in the cyclic group of
/// order m: exactly m entries, each reduced mod m, weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentVector {
    m: u32,
    entries: Vec<u32>,
}

impl ExponentVector {
    /// Canonicalize: reduce entries mod m, pad with zeros to length m, sort
    /// decreasing. Supplying more than m entries is an error.
    pub fn new(m: u32, entries: &[i64]) -> Result<ExponentVector> {
        if m == 0 {
            return Err(Error::EmptyInput);
        }
        if entries.len() > m as usize {
            return Err(Error::SizeMismatch);
        }
        let mm = m as i64;
        let mut es: Vec<u32> = entries.iter().map(|&e| (e.rem_euclid(mm)) as u32).collect();
        es.resize(m as usize, 0);
        es.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ExponentVector { m, entries: es })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

/// The set of pi-expressible elements of Z_m: all values of
/// sum_i pi_i * sigma(i) over bijections sigma from positions to Z_m.
/// Dynamic programming over (exponents consumed per distinct value, running
/// sum); distinct-value compression keeps the state space small.
pub fn pi_expressible_set(pi: &ExponentVector) -> Vec<u32> {
    let m = pi.m;
    // Distinct exponent values with multiplicities.
    let mut vals: Vec<u32> = Vec::new();
    let mut mults: Vec<u32> = Vec::new();
    for &e in &pi.entries {
        match vals.last() {
            Some(&v) if v == e => *mults.last_mut().unwrap() += 1,
            _ => {
                vals.push(e);
                mults.push(1);
            }
        }
    }
    let k = vals.len();
    let mut states: BTreeSet<(Vec<u32>, u32)> = BTreeSet::new();
    states.insert((vec![0u32; k], 0));
    for g in 0..m {
        let mut next = BTreeSet::new();
        for (used, sum) in &states {
            for i in 0..k {
                if used[i] < mults[i] {
                    let mut u = used.clone();
                    u[i] += 1;
                    let s = ((*sum as u64 + vals[i] as u64 * g as u64) % m as u64) as u32;
                    next.insert((u, s));
                }
            }
        }
        states = next;
    }
    let mut out: Vec<u32> = states.into_iter().map(|(_, s)| s).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether the conjecture predicts that every element of Z_m is
/// pi-expressible: full unless some shift representative of pi reduces to an
/// exceptional vector — either (m-r, r, 0, ..., 0) for some r, or a vector
/// all of whose entries share a common factor p > 1 with m.
///
/// Subtracting a constant c from every entry shifts each expressible sum by
/// the constant c * m(m-1)/2, so expressibility of the full group is a
/// shift-invariant property; the exception list is therefore applied to every
/// representative (e - c mod m, sorted, minimum subtracted) rather than only
/// to the minimum-subtracted form of pi itself, which mod-m wraparound would
/// otherwise exclude. For example (2,1,1,0) with m = 4 misses exactly one
/// element, and its shift by 1 is (3,1,0,0), the r = 1 exception.
pub fn pi_conjecture_predicts_full(pi: &ExponentVector) -> bool {
    let m = pi.m;
    if m == 1 {
        return true;
    }
    for c in 0..m {
        let mut v: Vec<u32> = pi
            .entries
            .iter()
            .map(|&e| (e + m - c) % m)
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let last = *v.last().expect("length m >= 1");
        let prime: Vec<u32> = v.iter().map(|&e| e - last).collect();
        let exc1 = prime.len() >= 2
            && prime[0] > 0
            && prime[0] + prime[1] == m
            && prime.iter().skip(2).all(|&e| e == 0);
        let mut g = m as u64;
        for &e in &prime {
            g = crate::gf::gcd_u64(g, e as u64);
        }
        if exc1 || g > 1 {
            return false;
        }
    }
    true
}

/// A canonical exponent vector where the conjecture's prediction disagrees
/// with the exhaustively computed pi-expressible set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiDisagreement {
    pub pi: ExponentVector,
    pub predicted_full: bool,
    pub actual_full: bool,
}

/// Check the conjecture at group order m: for every canonical exponent
/// vector, compare the prediction against the exact set. An empty report
/// means the conjecture is verified at m.
pub fn pi_conjecture_check(m: u32) -> Result<Vec<PiDisagreement>> {
    if m == 0 {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::new();
    let mut entries = vec![0u32; m as usize];
    enumerate_decreasing(m, 0, m - 1, &mut entries, &mut |es| {
        let pi = ExponentVector {
            m,
            entries: es.to_vec(),
        };
        let actual_full = pi_expressible_set(&pi).len() == m as usize;
        let predicted_full = pi_conjecture_predicts_full(&pi);
        if actual_full != predicted_full {
            out.push(PiDisagreement {
                pi,
                predicted_full,
                actual_full,
            });
        }
    });
    Ok(out)
}

/// All weakly decreasing vectors of length m with entries in [0, bound].
fn enumerate_decreasing(
    m: u32,
    pos: u32,
    bound: u32,
    entries: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if pos == m {
        visit(entries);
        return;
    }
    let mut v = bound as i64;
    while v >= 0 {
        entries[pos as usize] = v as u32;
        enumerate_decreasing(m, pos + 1, v as u32, entries, visit);
        v -= 1;
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
