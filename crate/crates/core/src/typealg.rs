//! Class-type algebra: textual grammars for class types and cycle types,
//! representability over a given field, separations, and the commuting
//! decision pipeline — primary types via reduction to nilpotent classes over
//! an extension field, general types via separation matching, similarity
//! classes via the type decision plus a polynomial upgrade of the witness.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Elem, Embedding, Field};
use crate::matrix::{class_rep, regular_embed, ClassType, CycleType, Matrix};
use crate::nilcommute::{self, Verdict};
use crate::partition::Partition;
use crate::poly::{self, Poly};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// Work counters accumulated by a decision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BudgetSpent {
    /// Primary-pair decisions delegated to the nilpotent engine.
    pub primary_decisions: u64,
    /// (separation, separation) pairs examined by the matching search.
    pub separation_pairs: u64,
}

/// Outcome of a commuting decision on types or classes. A Yes status always
/// carries a verified witness pair: the matrices commute and their recomputed
/// types match the query.
#[derive(Debug, Clone)]
pub struct CommuteVerdict {
    pub status: Verdict,
    pub witness: Option<(Matrix, Matrix)>,
    /// How the verdict was certified: a theorem tag, `exhaustive`,
    /// `separation-matching`, `separation-exhaustion`, `identity`,
    /// `dimension-mismatch`, or `divisibility`. Absent for Unknown.
    pub certificate: Option<String>,
    pub budget_spent: BudgetSpent,
}

impl CommuteVerdict {
    fn no(tag: &str, spent: BudgetSpent) -> CommuteVerdict {
        CommuteVerdict {
            status: Verdict::No,
            witness: None,
            certificate: Some(tag.into()),
            budget_spent: spent,
        }
    }

    fn unknown(spent: BudgetSpent) -> CommuteVerdict {
        CommuteVerdict {
            status: Verdict::Unknown,
            witness: None,
            certificate: None,
            budget_spent: spent,
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing and formatting
// ---------------------------------------------------------------------------

/// Parse the class-type grammar: space-separated components `d^(parts)` with
/// d a positive degree and `(parts)` a weakly decreasing partition.
pub fn parse_type(text: &str) -> Result<ClassType> {
    let mut comps = Vec::new();
    for tok in text.split_whitespace() {
        let ix = tok
            .find("^(")
            .ok_or_else(|| Error::Parse(format!("component `{tok}` is not d^(parts)")))?;
        let d: u32 = tok[..ix]
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree `{}`", &tok[..ix])))?;
        if d == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        let lam = Partition::parse(&tok[ix + 1..])?;
        if lam.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        comps.push((d, lam));
    }
    if comps.is_empty() {
        return Err(Error::Parse("empty class type".into()));
    }
    ClassType::new(comps)
}

/// Canonical text of a class type; `parse_type` round-trips it.
pub fn format_type(t: &ClassType) -> String {
    let mut out = String::new();
    for (i, (d, lam)) in t.components().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{d}^{}", lam.format()));
    }
    out
}

/// Parse the cycle-type grammar: space-separated components `poly^(parts)`,
/// polynomials in the polynomial module's syntax (the split point is the last
/// `^(` of the token, so exponents inside the polynomial are unambiguous).
pub fn parse_cycle_type(text: &str, field: &Field) -> Result<CycleType> {
    let mut comps = Vec::new();
    for tok in text.split_whitespace() {
        let ix = tok
            .rfind("^(")
            .ok_or_else(|| Error::Parse(format!("component `{tok}` is not poly^(parts)")))?;
        let f = Poly::parse(field, &tok[..ix])?;
        let lam = Partition::parse(&tok[ix + 1..])?;
        if lam.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        comps.push((f, lam));
    }
    if comps.is_empty() {
        return Err(Error::Parse("empty cycle type".into()));
    }
    CycleType::new(field, comps)
}

/// Canonical text of a cycle type; `parse_cycle_type` round-trips it.
pub fn format_cycle_type(t: &CycleType) -> String {
    let mut out = String::new();
    for (i, (f, lam)) in t.components().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{f}^{}", lam.format()));
    }
    out
}

// ---------------------------------------------------------------------------
// Representability
// ---------------------------------------------------------------------------

/// A class type is representable over F iff for every degree d the number of
/// its degree-d components does not exceed the number of monic irreducibles
/// of degree d over F (components of a cycle type carry distinct polynomials).
pub fn representable(t: &ClassType, field: &Field) -> bool {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for (d, _) in t.components() {
        *counts.entry(*d).or_insert(0) += 1;
    }
    counts
        .iter()
        .all(|(&d, &c)| c <= poly::num_irreducibles(field, d))
}

/// The least cycle type of a given class type over F: components in canonical
/// order receive distinct irreducibles of the right degree by least encoding.
pub fn least_cycle_type(t: &ClassType, field: &Field) -> Result<CycleType> {
    if !representable(t, field) {
        return Err(Error::NotRepresentable);
    }
    let mut next: BTreeMap<u32, usize> = BTreeMap::new();
    let mut comps = Vec::new();
    for (d, lam) in t.components() {
        let ix = next.entry(*d).or_insert(0);
        comps.push((poly::nth_irreducible(field, *d, *ix)?, lam.clone()));
        *ix += 1;
    }
    CycleType::new(field, comps)
}

// ---------------------------------------------------------------------------
// Separations
// ---------------------------------------------------------------------------

/// A type derived from another by splitting component partitions into
/// multiset unions, together with the origin of each derived component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Separation {
    pub derived: ClassType,
    /// `provenance[i]` is the index, in the canonical component order of the
    /// source type, of the component from which `derived.components()[i]`
    /// came. Summing the derived partitions per provenance recovers the
    /// source partitions.
    pub provenance: Vec<usize>,
}

/// All ways to write the parts of `lam` as a multiset union of nonempty
/// partitions, each split listed with its groups in decreasing order; the
/// unsplit partition comes first, splits sorted by increasing group count.
fn multiset_splits(lam: &Partition) -> Vec<Vec<Partition>> {
    // Run-length representation, parts strictly decreasing.
    let mut counts: Vec<(u32, u32)> = Vec::new();
    for &p in lam.parts() {
        match counts.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => counts.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    split_rec(&mut counts, None, &mut acc, &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Recursive multiset-partition enumeration in canonical form: groups are
/// produced in weakly decreasing order, and each group contains one copy of
/// the largest remaining part, so each partition into groups is produced
/// exactly once.
fn split_rec(
    counts: &mut Vec<(u32, u32)>,
    bound: Option<&Partition>,
    acc: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    let first = match counts.iter().position(|&(_, c)| c > 0) {
        None => {
            out.push(acc.clone());
            return;
        }
        Some(i) => i,
    };
    let n = counts.len();
    // Start from the full remaining multiset so the unsplit choice comes
    // first, and count the odometer down toward singleton groups.
    let mut take = vec![0u32; n];
    for i in first..n {
        take[i] = counts[i].1;
    }
    loop {
        let mut parts = Vec::new();
        for i in 0..n {
            for _ in 0..take[i] {
                parts.push(counts[i].0);
            }
        }
        let group = Partition::new(&parts).expect("parts listed in decreasing order");
        if bound.is_none_or(|b| &group <= b) {
            for i in 0..n {
                counts[i].1 -= take[i];
            }
            acc.push(group.clone());
            split_rec(counts, Some(&group), acc, out);
            acc.pop();
            for i in 0..n {
                counts[i].1 += take[i];
            }
        }
        // Decrement the odometer: take[first] ranges over 1..=c_first, the
        // later digits over 0..=c_i.
        let mut i = n - 1;
        loop {
            let min = if i == first { 1 } else { 0 };
            if take[i] > min {
                take[i] -= 1;
                for j in i + 1..n {
                    take[j] = counts[j].1;
                }
                break;
            }
            if i == first {
                return;
            }
            take[i] = counts[i].1;
            i -= 1;
        }
    }
}

/// Every separation of `t`: each component's partition replaced by a multiset
/// split, over all components independently, deduplicated as canonical types
/// with provenance. The list contains `t` itself (as its first element).
pub fn separations(t: &ClassType) -> Vec<Separation> {
    let comps = t.components();
    let per: Vec<Vec<Vec<Partition>>> = comps.iter().map(|(_, lam)| multiset_splits(lam)).collect();
    let mut seen: BTreeSet<Vec<(u32, Partition, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; comps.len()];
    loop {
        let mut triples: Vec<(u32, Partition, usize)> = Vec::new();
        for (i, (d, _)) in comps.iter().enumerate() {
            for group in &per[i][idx[i]] {
                triples.push((*d, group.clone(), i));
            }
        }
        triples.sort();
        if seen.insert(triples.clone()) {
            let pairs: Vec<(u32, Partition)> =
                triples.iter().map(|(d, g, _)| (*d, g.clone())).collect();
            let provenance: Vec<usize> = triples.iter().map(|(_, _, i)| *i).collect();
            let derived = ClassType::new(pairs).expect("groups are nonempty");
            out.push(Separation {
                derived,
                provenance,
            });
        }
        // Advance the mixed-radix index over per-component split choices.
        let mut i = comps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < per[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Primary types
// ---------------------------------------------------------------------------

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Outcome of the arithmetic reduction of a primary pair.
enum Reduction {
    No(&'static str),
    /// The required extension field exceeds the size cap.
    Unknown,
    Go {
        lam2: Partition,
        mu2: Partition,
        big: Field,
    },
}

/// Reduce `d1^lam` vs `d2^mu` over F_q to a nilpotent pair over F_{q^lcm}:
/// the types commute iff lam is (d2/h)-divisible, mu is (d1/h)-divisible
/// (h = hcf(d1, d2)), and N(lam/(d2/h)), N(mu/(d1/h)) commute over the
/// extension of degree lcm(d1, d2).
fn reduce_primary(
    d1: u32,
    lam: &Partition,
    d2: u32,
    mu: &Partition,
    field: &Field,
) -> Result<Reduction> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidDegree);
    }
    if lam.is_empty() || mu.is_empty() {
        return Err(Error::EmptyInput);
    }
    if d1 as u64 * lam.size() as u64 != d2 as u64 * mu.size() as u64 {
        return Ok(Reduction::No("dimension-mismatch"));
    }
    let h = gcd_u32(d1, d2);
    if !lam.is_divisible(d2 / h) || !mu.is_divisible(d1 / h) {
        return Ok(Reduction::No("divisibility"));
    }
    let lam2 = lam.divide(d2 / h)?;
    let mu2 = mu.divide(d1 / h)?;
    let ell = d1 / h * d2;
    match field.a().checked_mul(ell).map(|b| Field::new(field.p(), b)) {
        Some(Ok(big)) => Ok(Reduction::Go { lam2, mu2, big }),
        _ => Ok(Reduction::Unknown),
    }
}

/// Status-only primary decision (no witness construction).
fn primary_status(
    d1: u32,
    lam: &Partition,
    d2: u32,
    mu: &Partition,
    field: &Field,
    budget: u64,
) -> Result<(Verdict, Option<String>)> {
    match reduce_primary(d1, lam, d2, mu, field)? {
        Reduction::No(tag) => Ok((Verdict::No, Some(tag.into()))),
        Reduction::Unknown => Ok((Verdict::Unknown, None)),
        Reduction::Go { lam2, mu2, big } => {
            let nv = nilcommute::decide(&lam2, &mu2, &big, budget, nilcommute::DEFAULT_SEED)?;
            let cert = match nv.verdict {
                Verdict::Unknown => None,
                _ => Some(format!("{}", nv.method)),
            };
            Ok((nv.verdict, cert))
        }
    }
}

/// Coefficient-map a base-field polynomial into the extension field.
fn map_coeffs(f: &Poly, emb: &Embedding) -> Poly {
    let coeffs: Vec<Elem> = f.coeffs().iter().map(|&c| emb.apply(c)).collect();
    Poly::from_coeffs(emb.big(), coeffs)
}

/// A root of the base-field irreducible `f` in the extension field, found by
/// scanning element encodings in increasing order.
fn root_in(f: &Poly, emb: &Embedding) -> Option<Elem> {
    let fb = map_coeffs(f, emb);
    emb.big().elements().find(|&x| fb.eval(x).is_zero())
}

/// Lift a commuting nilpotent pair over F_{q^ell} to a commuting pair over
/// F_q with cycle types f^lam and g^mu: shift by roots of f and g in the
/// extension field, then apply the regular embedding.
fn lift_primary_witness(
    f: &Poly,
    g: &Poly,
    xn: &Matrix,
    yn: &Matrix,
    emb: &Embedding,
) -> Result<(Matrix, Matrix)> {
    let big = emb.big();
    let alpha = root_in(f, emb).ok_or(Error::NotIrreducible)?;
    let beta = root_in(g, emb).ok_or(Error::NotIrreducible)?;
    let xs = Matrix::scalar(big, xn.dim(), alpha).add(xn)?;
    let ys = Matrix::scalar(big, yn.dim(), beta).add(yn)?;
    Ok((regular_embed(&xs, emb)?, regular_embed(&ys, emb)?))
}

fn primary_class_type(d: u32, lam: &Partition) -> ClassType {
    ClassType::new(vec![(d, lam.clone())]).expect("positive degree, nonempty partition")
}

/// Decide whether the primary types d1^lam and d2^mu commute over F. Types of
/// unequal dimension never commute. Otherwise the decision reduces to a
/// nilpotent pair over the extension field of degree lcm(d1, d2); a Yes
/// verdict carries a verified base-field witness pair built by scalar
/// shifting the nilpotent witnesses and embedding regularly.
pub fn primary_commute(
    d1: u32,
    lam: &Partition,
    d2: u32,
    mu: &Partition,
    field: &Field,
    budget: u64,
) -> Result<CommuteVerdict> {
    let spent = BudgetSpent {
        primary_decisions: 1,
        separation_pairs: 0,
    };
    match reduce_primary(d1, lam, d2, mu, field)? {
        Reduction::No(tag) => Ok(CommuteVerdict::no(tag, spent)),
        Reduction::Unknown => Ok(CommuteVerdict::unknown(spent)),
        Reduction::Go { lam2, mu2, big } => {
            let nv = nilcommute::decide(&lam2, &mu2, &big, budget, nilcommute::DEFAULT_SEED)?;
            match nv.verdict {
                Verdict::No => Ok(CommuteVerdict::no(&format!("{}", nv.method), spent)),
                Verdict::Unknown => Ok(CommuteVerdict::unknown(spent)),
                Verdict::Yes => {
                    let (xn, yn) = nv.witness.expect("yes verdicts carry a witness");
                    let f = poly::nth_irreducible(field, d1, 0)?;
                    let g = poly::nth_irreducible(field, d2, 0)?;
                    let emb = Embedding::new(field, &big)?;
                    let (x, y) = lift_primary_witness(&f, &g, &xn, &yn, &emb)?;
                    verify_pair(&x, &y, &primary_class_type(d1, lam), &primary_class_type(d2, mu))?;
                    Ok(CommuteVerdict {
                        status: Verdict::Yes,
                        witness: Some((x, y)),
                        certificate: Some(format!("{}", nv.method)),
                        budget_spent: spent,
                    })
                }
            }
        }
    }
}

/// Check a constructed witness: the matrices commute and have the requested
/// class types. Failure indicates an internal construction bug.
fn verify_pair(x: &Matrix, y: &Matrix, s: &ClassType, t: &ClassType) -> Result<()> {
    if !x.commutes_with(y)? {
        debug_assert!(false, "constructed witness does not commute");
        return Err(Error::NotCommuting);
    }
    if x.class_type()? != *s || y.class_type()? != *t {
        debug_assert!(false, "constructed witness has the wrong type");
        return Err(Error::TypeMismatch);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// General class types
// ---------------------------------------------------------------------------

type PKey = (u32, Partition, u32, Partition);

struct MatchCtx<'a> {
    field: &'a Field,
    budget: u64,
    memo: BTreeMap<PKey, Verdict>,
    spent: BudgetSpent,
    saw_unknown: bool,
}

impl MatchCtx<'_> {
    /// Memoized symmetric primary decision keyed by (d1, lam, d2, mu).
    fn primary(&mut self, d1: u32, lam: &Partition, d2: u32, mu: &Partition) -> Result<Verdict> {
        let key = if (d1, lam) <= (d2, mu) {
            (d1, lam.clone(), d2, mu.clone())
        } else {
            (d2, mu.clone(), d1, lam.clone())
        };
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.spent.primary_decisions += 1;
        let (v, _) = primary_status(d1, lam, d2, mu, self.field, self.budget)?;
        self.memo.insert(key, v);
        Ok(v)
    }
}

/// Backtracking perfect matching between the components of two separations:
/// components are paired only when their dimensions agree and the primary
/// decision is Yes. Components of the first separation are processed in
/// decreasing dimension order. Returns perm with perm[i] = matched index.
fn match_components(
    ss: &Separation,
    tt: &Separation,
    ctx: &mut MatchCtx<'_>,
) -> Result<Option<Vec<usize>>> {
    let a = ss.derived.components();
    let b = tt.derived.components();
    debug_assert_eq!(a.len(), b.len());
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(a[i].0 as u64 * a[i].1.size() as u64));
    let mut perm = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    if match_rec(&order, 0, a, b, &mut perm, &mut used, ctx)? {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

fn match_rec(
    order: &[usize],
    pos: usize,
    a: &[(u32, Partition)],
    b: &[(u32, Partition)],
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    ctx: &mut MatchCtx<'_>,
) -> Result<bool> {
    if pos == order.len() {
        return Ok(true);
    }
    let i = order[pos];
    let (d1, ref lam) = a[i];
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        let (d2, ref mu) = b[j];
        if d1 as u64 * lam.size() as u64 != d2 as u64 * mu.size() as u64 {
            continue;
        }
        match ctx.primary(d1, lam, d2, mu)? {
            Verdict::Yes => {
                used[j] = true;
                perm[i] = j;
                if match_rec(order, pos + 1, a, b, perm, used, ctx)? {
                    return Ok(true);
                }
                perm[i] = usize::MAX;
                used[j] = false;
            }
            Verdict::Unknown => ctx.saw_unknown = true,
            Verdict::No => {}
        }
    }
    Ok(false)
}

/// Distinct irreducibles for the components of a class type, least encodings
/// first within each degree, in canonical component order.
fn assign_polys(t: &ClassType, field: &Field) -> Result<Vec<Poly>> {
    let mut next: BTreeMap<u32, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for (d, _) in t.components() {
        let ix = next.entry(*d).or_insert(0);
        out.push(poly::nth_irreducible(field, *d, *ix)?);
        *ix += 1;
    }
    Ok(out)
}

/// Build the block-diagonal witness for a successful separation matching.
/// Blocks deriving from the same component of the source type share that
/// component's polynomial, so the assembled matrices realize exactly the
/// queried types.
fn assemble_witness(
    s: &ClassType,
    t: &ClassType,
    ss: &Separation,
    tt: &Separation,
    perm: &[usize],
    field: &Field,
    budget: u64,
) -> Result<(Matrix, Matrix)> {
    let fs = assign_polys(s, field)?;
    let gs = assign_polys(t, field)?;
    let a = ss.derived.components();
    let b = tt.derived.components();
    let mut x = Matrix::zero(field, 0);
    let mut y = Matrix::zero(field, 0);
    for (k, (d1, lam)) in a.iter().enumerate() {
        let j = perm[k];
        let (d2, mu) = &b[j];
        let (lam2, mu2, big) = match reduce_primary(*d1, lam, *d2, mu, field)? {
            Reduction::Go { lam2, mu2, big } => (lam2, mu2, big),
            _ => {
                debug_assert!(false, "matched pair must reduce");
                return Err(Error::NotCommuting);
            }
        };
        let nv = nilcommute::decide(&lam2, &mu2, &big, budget, nilcommute::DEFAULT_SEED)?;
        let (xn, yn) = match (nv.verdict, nv.witness) {
            (Verdict::Yes, Some(w)) => w,
            _ => {
                debug_assert!(false, "matched pair must re-decide Yes");
                return Err(Error::NotCommuting);
            }
        };
        let emb = Embedding::new(field, &big)?;
        let f = &fs[ss.provenance[k]];
        let g = &gs[tt.provenance[j]];
        let (xk, yk) = lift_primary_witness(f, g, &xn, &yn, &emb)?;
        x = x.direct_sum(&xk)?;
        y = y.direct_sum(&yk)?;
    }
    Ok((x, y))
}

/// Decide whether the class types S and T commute over F: search all pairs
/// of separations for a perfect matching of components, dimension-equal in
/// pairs with every pair commuting as primary types. A Yes carries a verified
/// block-diagonal witness; No is certified only when every branch is a
/// certified No (any Unknown branch downgrades the verdict to Unknown).
pub fn types_commute(
    s: &ClassType,
    t: &ClassType,
    field: &Field,
    budget: u64,
) -> Result<CommuteVerdict> {
    if !representable(s, field) || !representable(t, field) {
        return Err(Error::NotRepresentable);
    }
    if s.dimension() != t.dimension() {
        return Err(Error::SizeMismatch);
    }
    if s == t {
        let x = class_rep(&least_cycle_type(s, field)?)?;
        verify_pair(&x, &x, s, t)?;
        return Ok(CommuteVerdict {
            status: Verdict::Yes,
            witness: Some((x.clone(), x)),
            certificate: Some("identity".into()),
            budget_spent: BudgetSpent::default(),
        });
    }
    let seps_s = separations(s);
    let seps_t = separations(t);
    let mut ctx = MatchCtx {
        field,
        budget,
        memo: BTreeMap::new(),
        spent: BudgetSpent::default(),
        saw_unknown: false,
    };
    for ss in &seps_s {
        for tt in &seps_t {
            if ss.derived.components().len() != tt.derived.components().len() {
                continue;
            }
            ctx.spent.separation_pairs += 1;
            if let Some(perm) = match_components(ss, tt, &mut ctx)? {
                let (x, y) = assemble_witness(s, t, ss, tt, &perm, field, budget)?;
                verify_pair(&x, &y, s, t)?;
                return Ok(CommuteVerdict {
                    status: Verdict::Yes,
                    witness: Some((x, y)),
                    certificate: Some("separation-matching".into()),
                    budget_spent: ctx.spent,
                });
            }
        }
    }
    if ctx.saw_unknown {
        Ok(CommuteVerdict::unknown(ctx.spent))
    } else {
        Ok(CommuteVerdict::no("separation-exhaustion", ctx.spent))
    }
}

// ---------------------------------------------------------------------------
// Similarity classes
// ---------------------------------------------------------------------------

/// Decide whether the similarity classes with cycle types C and D commute:
/// classes commute iff their class types commute, and a Yes witness is
/// upgraded to the requested cycle types by polynomial maps, then re-verified.
pub fn classes_commute(c: &CycleType, d: &CycleType, budget: u64) -> Result<CommuteVerdict> {
    let field = c.field().clone();
    if d.field() != &field {
        return Err(Error::ShapeMismatch);
    }
    if c.dimension() != d.dimension() {
        return Err(Error::SizeMismatch);
    }
    if c == d {
        let x = class_rep(c)?;
        return Ok(CommuteVerdict {
            status: Verdict::Yes,
            witness: Some((x.clone(), x)),
            certificate: Some("identity".into()),
            budget_spent: BudgetSpent::default(),
        });
    }
    let s = c.class_type();
    let t = d.class_type();
    let tv = types_commute(&s, &t, &field, budget)?;
    if tv.status != Verdict::Yes {
        return Ok(tv);
    }
    let (x0, y0) = tv.witness.expect("yes verdicts carry a witness");
    let fpol = polynomial_map(&x0, c)?;
    let x = x0.eval_poly(&fpol);
    let gpol = polynomial_map(&y0, d)?;
    let y = y0.eval_poly(&gpol);
    if !x.commutes_with(&y)? {
        debug_assert!(false, "polynomial images of a commuting pair must commute");
        return Err(Error::NotCommuting);
    }
    if x.cycle_type()? != *c || y.cycle_type()? != *d {
        debug_assert!(false, "upgraded witness has the wrong cycle type");
        return Err(Error::TypeMismatch);
    }
    Ok(CommuteVerdict {
        status: Verdict::Yes,
        witness: Some((x, y)),
        certificate: tv.certificate,
        budget_spent: tv.budget_spent,
    })
}

// ---------------------------------------------------------------------------
// Polynomial maps between same-type classes
// ---------------------------------------------------------------------------

/// The semisimple part of x modulo f^a as a polynomial: the unique s with
/// s = x mod f and f(s) = 0 mod f^a, computed by Newton iteration against the
/// separable irreducible f (quadratic convergence, at most ~log2(a) + 2
/// rounds).
fn semisimple_part(f: &Poly, modulus: &Poly) -> Result<Poly> {
    let field = f.field().clone();
    let mut s = Poly::x(&field);
    let a = modulus.degree().unwrap_or(1) / f.degree().ok_or(Error::InvalidDegree)?;
    let max_iter = (usize::BITS - a.leading_zeros()) + 2;
    for _ in 0..max_iter {
        let fs = f.compose(&s).rem(modulus)?;
        if fs.is_zero() {
            return Ok(s);
        }
        let fds = f.derivative().compose(&s).rem(modulus)?;
        let (g, u, _) = fds.xgcd(modulus);
        if g.degree() != Some(0) {
            return Err(Error::NotCoprime);
        }
        let inv = u.scale(field.inv(g.leading())?);
        s = s.sub(&fs.mul(&inv).rem(modulus)?).rem(modulus)?;
    }
    Err(Error::BudgetExceeded)
}

/// The polynomial G of degree < d with G(alpha) = beta, solved over the base
/// field in the power basis 1, alpha, ..., alpha^{d-1} (alpha of degree d).
fn interpolate(alpha: Elem, beta: Elem, emb: &Embedding) -> Result<Poly> {
    let big = emb.big();
    let small = emb.small().clone();
    let d = emb.degree() as usize;
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(d);
    let mut ap = Elem::ONE;
    for _ in 0..d {
        cols.push(emb.decompose(ap));
        ap = big.mul(ap, alpha);
    }
    let rows: Vec<Vec<Elem>> = (0..d).map(|r| (0..d).map(|k| cols[k][r]).collect()).collect();
    let m = Matrix::from_rows(&small, &rows)?;
    let minv = m
        .inverse()
        .expect("powers of a degree-d element form a basis");
    let b = emb.decompose(beta);
    let mut coeffs = vec![Elem::ZERO; d];
    for (j, cj) in coeffs.iter_mut().enumerate() {
        for (r, &br) in b.iter().enumerate() {
            *cj = small.add(*cj, small.mul(minv.get(j, r), br));
        }
    }
    Ok(Poly::from_coeffs(&small, coeffs))
}

/// The map for one primary component: F = G(s) + x - s mod f^a, where s is
/// the semisimple part and G sends a root of f to a root of g. Returns the
/// residue and the modulus f^a.
fn component_map(f: &Poly, g: &Poly, a: u32, field: &Field) -> Result<(Poly, Poly)> {
    let modulus = f.pow(a as u64);
    let s = semisimple_part(f, &modulus)?;
    let d = f.degree().ok_or(Error::InvalidDegree)? as u32;
    let ext = field
        .a()
        .checked_mul(d)
        .map(|b| Field::new(field.p(), b))
        .ok_or(Error::InvalidField)??;
    let emb = Embedding::new(field, &ext)?;
    let alpha = root_in(f, &emb).ok_or(Error::NotIrreducible)?;
    let beta = root_in(g, &emb).ok_or(Error::NotIrreducible)?;
    let gpoly = interpolate(alpha, beta, &emb)?;
    let fi = gpoly
        .compose(&s)
        .add(&Poly::x(field))
        .sub(&s)
        .rem(&modulus)?;
    Ok((fi, modulus))
}

/// A polynomial F with F(X) in the similarity class of `target`, which must
/// have the same class type as X. Per primary component f^lam of X the
/// semisimple part is expressed as a polynomial and its eigenvalue moved from
/// a root of f to a root of the target polynomial; the component maps are
/// glued by the Chinese remainder theorem modulo the f^(max part). The result
/// is verified: cycle_type(F(X)) = target.
pub fn polynomial_map(x: &Matrix, target: &CycleType) -> Result<Poly> {
    let field = x.field().clone();
    if target.field() != &field {
        return Err(Error::ShapeMismatch);
    }
    let ct = x.cycle_type()?;
    if ct.class_type() != target.class_type() {
        return Err(Error::TypeMismatch);
    }
    // Pair source and target components with equal (degree, partition).
    let mut pool: BTreeMap<(usize, Partition), Vec<usize>> = BTreeMap::new();
    for (j, (g, mu)) in target.components().iter().enumerate() {
        pool.entry((g.degree().unwrap(), mu.clone()))
            .or_default()
            .push(j);
    }
    let mut crt_pairs = Vec::new();
    for (f, lam) in ct.components() {
        let slot = pool
            .get_mut(&(f.degree().unwrap(), lam.clone()))
            .ok_or(Error::TypeMismatch)?;
        if slot.is_empty() {
            return Err(Error::TypeMismatch);
        }
        let j = slot.remove(0);
        let g = &target.components()[j].0;
        let a = lam.parts()[0];
        crt_pairs.push(component_map(f, g, a, &field)?);
    }
    let fpol = poly::crt_combine(&crt_pairs)?;
    let image = x.eval_poly(&fpol);
    if image.cycle_type()? != *target {
        debug_assert!(false, "polynomial map failed verification");
        return Err(Error::TypeMismatch);
    }
    Ok(fpol)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
