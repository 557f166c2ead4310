//! Integer-valued set functions (imsets) and the combinatorial cone.
//!
//! An imset assigns an integer to every subset of a universe; only the
//! non-zero coefficients are stored. The building blocks:
//!
//! * the identifier `δ_A` (coefficient 1 on `A`),
//! * the semi-elementary imset of a triplet `⟨A, B | C⟩`,
//!   `δ_{ABC} + δ_C − δ_{AC} − δ_{BC}`, which encodes the conditional
//!   independence statement "A and B given C",
//! * the elementary imsets, semi-elementary with singleton sides.
//!
//! *Combinatorial* imsets are the sums of elementary imsets with non-negative
//! integer multiplicities. Membership, and a witness decomposition, is
//! decided by [`combinatorial_decompose`].
//!
//! A family of linear functionals does most of the work: the up-set sums
//! `ζ_u(T) = Σ_{A ⊇ T} u(A)`. On an elementary imset `u_⟨a,b|C⟩` a direct
//! check of the four terms gives
//!
//! ```text
//! ζ(T) = 1  if {a,b} ⊆ T ⊆ {a,b} ∪ C,     ζ(T) = 0  otherwise.
//! ```
//!
//! Consequences used here:
//!
//! * `ζ_u(∅) = 0` and `ζ_u({x}) = 0` for every vertex are necessary for
//!   membership, and `ζ_u(T) ≥ 0` for every `|T| ≥ 2` (each is a count of
//!   summands, so never negative);
//! * `ζ_u({x,y})` is *exactly* the number of summands with sides `{x,y}` in
//!   every decomposition — the side pairs of a decomposition are determined
//!   by `u` before any search;
//! * the pair-weighted sum `Σ_A u(A)·C(|A|,2) = Σ_{pairs} ζ_u` is the exact
//!   length of every decomposition, so the search knows its depth in
//!   advance, and a minimum-length decomposition is just a decomposition.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Triplet;
use crate::set::VertexSet;

/// Hard limit for [`combinatorial_decompose`]: the branching is over pairs
/// inside support-maximal sets, but the residual space still explodes.
pub const MAX_DECOMPOSE_VERTICES: usize = 6;

/// An integer-valued function on the subsets of a fixed universe, sparse.
///
/// Coordinates are ordered by subset encoding, so iteration and printing are
/// deterministic. All arithmetic is overflow-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Imset {
    universe: VertexSet,
    coef: std::collections::BTreeMap<VertexSet, i64>,
}

impl Imset {
    /// The zero imset over `universe`.
    pub fn zero(universe: VertexSet) -> Imset {
        Imset {
            universe,
            coef: Default::default(),
        }
    }

    /// The identifier `δ_a` of a single subset.
    pub fn delta(universe: VertexSet, a: VertexSet) -> Result<Imset> {
        let mut u = Imset::zero(universe);
        u.add_to(a, 1)?;
        Ok(u)
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_empty()
    }

    /// Coefficient at `a` (zero when absent).
    pub fn get(&self, a: VertexSet) -> i64 {
        self.coef.get(&a).copied().unwrap_or(0)
    }

    /// Adds `k` to the coefficient at `a`, checked.
    pub fn add_to(&mut self, a: VertexSet, k: i64) -> Result<()> {
        if !a.is_subset_of(self.universe) {
            return Err(Error::ForeignSet(a));
        }
        let cur = self.get(a);
        let next = cur.checked_add(k).ok_or(Error::Overflow)?;
        if next == 0 {
            self.coef.remove(&a);
        } else {
            self.coef.insert(a, next);
        }
        Ok(())
    }

    /// Iterates `(subset, coefficient)` in increasing subset encoding.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, i64)> + '_ {
        self.coef.iter().map(|(&a, &k)| (a, k))
    }

    /// The subsets with non-zero coefficient.
    pub fn support(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.coef.keys().copied()
    }

    /// Checked pointwise sum; universes must agree.
    pub fn try_add(&self, other: &Imset) -> Result<Imset> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let mut out = self.clone();
        for (a, k) in other.iter() {
            out.add_to(a, k)?;
        }
        Ok(out)
    }

    /// Checked pointwise difference; universes must agree.
    pub fn try_sub(&self, other: &Imset) -> Result<Imset> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let mut out = self.clone();
        for (a, k) in other.iter() {
            out.add_to(a, k.checked_neg().ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// Checked scalar multiple.
    pub fn scaled(&self, k: i64) -> Result<Imset> {
        let mut out = Imset::zero(self.universe);
        for (a, c) in self.iter() {
            out.add_to(a, c.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// The same imset over a larger universe. Embedding is literal: a subset
    /// of the small universe is the same subset of the large one.
    pub fn embedded_in(&self, universe: VertexSet) -> Result<Imset> {
        if !self.universe.is_subset_of(universe) {
            return Err(Error::UniverseMismatch);
        }
        Ok(Imset {
            universe,
            coef: self.coef.clone(),
        })
    }

    /// `Σ_A u(A)`; zero on every combinatorial imset.
    pub fn coefficient_sum(&self) -> i64 {
        self.iter().map(|(_, k)| k).sum()
    }

    /// `Σ_A u(A)·|A|`; zero on every combinatorial imset.
    pub fn cardinality_weighted_sum(&self) -> i64 {
        self.iter().map(|(a, k)| k * a.len() as i64).sum()
    }

    /// `Σ_A u(A)·C(|A|,2)`. Every semi-elementary summand `⟨A,B|C⟩`
    /// contributes `|A|·|B|`, every elementary summand exactly 1; for a
    /// combinatorial imset this is therefore the length of every elementary
    /// decomposition (the degree).
    pub fn pair_weighted_sum(&self) -> i64 {
        self.iter()
            .map(|(a, k)| {
                let n = a.len() as i64;
                k * (n * (n - 1) / 2)
            })
            .sum()
    }
}

/// The semi-elementary imset of `⟨A, B | C⟩` over `universe`.
pub fn semi_elementary(universe: VertexSet, t: &Triplet) -> Result<Imset> {
    if !t.span().is_subset_of(universe) {
        return Err(Error::ForeignSet(t.span() - universe));
    }
    let mut u = Imset::zero(universe);
    u.add_to(t.a() | t.b() | t.c(), 1)?;
    u.add_to(t.c(), 1)?;
    u.add_to(t.a() | t.c(), -1)?;
    u.add_to(t.b() | t.c(), -1)?;
    Ok(u)
}

/// All elementary imsets over `universe` with their triplets: one per pair
/// `{u, v}` and conditioning set `C ⊆ universe − {u,v}`. There are
/// `C(n,2)·2^(n-2)` of them.
pub fn elementary_imsets(universe: VertexSet) -> Vec<(Triplet, Imset)> {
    let mut out = Vec::new();
    for (u, v) in universe.pairs() {
        let rest = universe.without(u).without(v);
        for c in rest.subsets() {
            let t = Triplet::elementary(u, v, c).expect("disjoint by construction");
            let im = semi_elementary(universe, &t).expect("span inside universe");
            out.push((t, im));
        }
    }
    out
}

/// The up-set sums `ζ(T) = Σ_{A ⊇ T} u(A)` for every `T ⊆ universe`.
fn up_set_sums(u: &Imset) -> HashMap<VertexSet, i64> {
    let mut z: HashMap<VertexSet, i64> = u.universe().subsets().map(|t| (t, 0)).collect();
    for (a, k) in u.iter() {
        for t in a.subsets() {
            *z.get_mut(&t).expect("subset of the universe") += k;
        }
    }
    z
}

/// Writes `u` as a sum of elementary imsets if possible.
///
/// Returns the summands as elementary triplets in canonical order; the
/// length is the degree. `None` means `u` is not combinatorial.
///
/// Root screens: the up-set sums must vanish on `∅` and singletons and be
/// non-negative everywhere else. The search then subtracts one elementary
/// imset per step. Its pivot rule: any ⊆-maximal set `M` in the support of
/// the residual must carry a positive coefficient and be the union
/// `{a} ∪ {b} ∪ C` of some remaining summand (consider a ⊆-maximal such
/// union among the summands: nothing can cancel its positive coefficient),
/// so it suffices to branch over the pairs inside one such `M` — and only
/// over pairs whose remaining side budget `ζ({a,b})` is positive. Each
/// subtraction lowers `ζ(T)` by one exactly for `{a,b} ⊆ T ⊆ M`, and every
/// such count must stay non-negative. Dead residuals are memoised.
pub fn combinatorial_decompose(u: &Imset) -> Result<Option<Vec<Triplet>>> {
    if u.universe().len() > MAX_DECOMPOSE_VERTICES {
        return Err(Error::GuardExceeded(format!(
            "decomposition over {} vertices (maximum {})",
            u.universe().len(),
            MAX_DECOMPOSE_VERTICES
        )));
    }
    if u.coefficient_sum() != 0 || u.cardinality_weighted_sum() != 0 {
        return Ok(None);
    }
    let mut zeta = up_set_sums(u);
    for (&t, &v) in &zeta {
        match t.len() {
            0 | 1 => {
                if v != 0 {
                    return Ok(None);
                }
            }
            _ => {
                if v < 0 {
                    return Ok(None);
                }
            }
        }
    }
    let depth = u.pair_weighted_sum();
    debug_assert_eq!(
        depth,
        zeta.iter().filter(|(t, _)| t.len() == 2).map(|(_, &v)| v).sum::<i64>(),
        "pair weight is the total side budget"
    );
    let mut residual = u.clone();
    let mut picked = Vec::new();
    let mut dead: HashSet<Vec<(u32, i64)>> = HashSet::new();
    if search(&mut residual, &mut zeta, depth, &mut picked, &mut dead)? {
        picked.sort_unstable();
        Ok(Some(picked))
    } else {
        Ok(None)
    }
}

fn residual_key(r: &Imset) -> Vec<(u32, i64)> {
    r.iter().map(|(a, k)| (a.bits(), k)).collect()
}

fn search(
    r: &mut Imset,
    zeta: &mut HashMap<VertexSet, i64>,
    depth: i64,
    picked: &mut Vec<Triplet>,
    dead: &mut HashSet<Vec<(u32, i64)>>,
) -> Result<bool> {
    if r.is_zero() {
        debug_assert_eq!(depth, 0, "pair weight must hit zero with the residual");
        return Ok(true);
    }
    if depth == 0 {
        return Ok(false);
    }
    let key = residual_key(r);
    if dead.contains(&key) {
        return Ok(false);
    }
    // All ⊆-maximal support sets must be positive tops; any violation kills
    // the branch. Branch over the pairs of one maximal set.
    let support: Vec<VertexSet> = r.support().collect();
    let mut pivot: Option<VertexSet> = None;
    for &m in &support {
        if support.iter().any(|&x| m != x && m.is_subset_of(x)) {
            continue;
        }
        if r.get(m) < 0 || m.len() < 2 {
            dead.insert(key);
            return Ok(false);
        }
        if pivot.is_none() {
            pivot = Some(m);
        }
    }
    let m = pivot.expect("non-zero residual has a maximal support set");
    'pairs: for (a, b) in m.pairs() {
        let c = m.without(a).without(b);
        let ab = VertexSet::singleton(a).with(b);
        // Subtracting u_⟨a,b|C⟩ lowers ζ(T) by one exactly on
        // {a,b} ⊆ T ⊆ M; all those counts must stay non-negative.
        for s in c.subsets() {
            if zeta[&(s | ab)] == 0 {
                continue 'pairs;
            }
        }
        for s in c.subsets() {
            *zeta.get_mut(&(s | ab)).expect("inside universe") -= 1;
        }
        r.add_to(m, -1)?;
        r.add_to(c, -1)?;
        r.add_to(c.with(a), 1)?;
        r.add_to(c.with(b), 1)?;
        let hit = search(r, zeta, depth - 1, picked, dead)?;
        r.add_to(m, 1)?;
        r.add_to(c, 1)?;
        r.add_to(c.with(a), -1)?;
        r.add_to(c.with(b), -1)?;
        for s in c.subsets() {
            *zeta.get_mut(&(s | ab)).expect("inside universe") += 1;
        }
        if hit {
            picked.push(Triplet::elementary(a, b, c).expect("disjoint by construction"));
            return Ok(true);
        }
    }
    dead.insert(key);
    Ok(false)
}

/// Membership in the combinatorial cone.
pub fn is_combinatorial(u: &Imset) -> Result<bool> {
    Ok(combinatorial_decompose(u)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vals: &[usize]) -> VertexSet {
        VertexSet::from_indices(vals.iter().copied())
    }

    fn t(a: &[usize], b: &[usize], c: &[usize]) -> Triplet {
        Triplet::new(vs(a), vs(b), vs(c)).unwrap()
    }

    #[test]
    fn semi_elementary_terms() {
        // ⟨{0,1}, {4} | {2,3}⟩ over five vertices.
        let u = semi_elementary(VertexSet::full(5), &t(&[0, 1], &[4], &[2, 3])).unwrap();
        assert_eq!(u.get(vs(&[0, 1, 2, 3, 4])), 1);
        assert_eq!(u.get(vs(&[2, 3])), 1);
        assert_eq!(u.get(vs(&[0, 1, 2, 3])), -1);
        assert_eq!(u.get(vs(&[2, 3, 4])), -1);
        assert_eq!(u.iter().count(), 4);
        assert_eq!(u.coefficient_sum(), 0);
        assert_eq!(u.cardinality_weighted_sum(), 0);
        // Pair weight |A|·|B| = 2.
        assert_eq!(u.pair_weighted_sum(), 2);
    }

    #[test]
    fn elementary_counts() {
        assert_eq!(elementary_imsets(VertexSet::full(2)).len(), 1);
        assert_eq!(elementary_imsets(VertexSet::full(3)).len(), 6);
        assert_eq!(elementary_imsets(VertexSet::full(4)).len(), 24);
        for (t, u) in elementary_imsets(VertexSet::full(4)) {
            assert_eq!(u.pair_weighted_sum(), 1);
            assert_eq!(t.a().len(), 1);
            assert_eq!(t.b().len(), 1);
        }
    }

    #[test]
    fn arithmetic_checks_universes_and_overflow() {
        let a = Imset::delta(VertexSet::full(3), vs(&[0])).unwrap();
        let b = Imset::delta(VertexSet::full(4), vs(&[0])).unwrap();
        assert_eq!(a.try_add(&b), Err(Error::UniverseMismatch));
        let mut big = Imset::zero(VertexSet::full(3));
        big.add_to(vs(&[0]), i64::MAX).unwrap();
        assert_eq!(big.add_to(vs(&[0]), 1), Err(Error::Overflow));
        assert_eq!(big.scaled(2), Err(Error::Overflow));
        assert_eq!(
            Imset::zero(vs(&[0])).add_to(vs(&[1]), 1),
            Err(Error::ForeignSet(vs(&[1])))
        );
    }

    #[test]
    fn zero_imset_is_trivially_combinatorial() {
        let z = Imset::zero(VertexSet::full(4));
        assert_eq!(combinatorial_decompose(&z).unwrap(), Some(vec![]));
    }

    #[test]
    fn identifiers_are_not_combinatorial() {
        let d = Imset::delta(VertexSet::full(3), vs(&[0, 1])).unwrap();
        assert_eq!(combinatorial_decompose(&d).unwrap(), None);
    }

    #[test]
    fn semi_elementary_decomposes_into_side_product() {
        // ⟨{0,1}, {3,4} | {2}⟩ must split into 2·2 = 4 elementary imsets.
        let u = semi_elementary(VertexSet::full(5), &t(&[0, 1], &[3, 4], &[2])).unwrap();
        let d = combinatorial_decompose(&u).unwrap().unwrap();
        assert_eq!(d.len(), 4);
        // Re-summing the elementary pieces gives the original back.
        let mut sum = Imset::zero(VertexSet::full(5));
        for piece in &d {
            sum = sum.try_add(&semi_elementary(VertexSet::full(5), piece).unwrap()).unwrap();
        }
        assert_eq!(sum, u);
    }

    #[test]
    fn negated_elementary_is_rejected() {
        // Dies at the pair-weight screen: the weight is -1.
        let u = semi_elementary(VertexSet::full(3), &t(&[0], &[1], &[2])).unwrap();
        let neg = u.scaled(-1).unwrap();
        assert_eq!(neg.pair_weighted_sum(), -1);
        assert_eq!(combinatorial_decompose(&neg).unwrap(), None);
    }

    #[test]
    fn non_members_that_pass_all_screens() {
        let n = VertexSet::full(3);
        let e = |a: &[usize], b: &[usize], c: &[usize]| {
            semi_elementary(n, &t(a, b, c)).unwrap()
        };
        // 2·u_⟨0,1|∅⟩ − u_⟨0,1|2⟩: the ⊆-maximal support set {0,1,2} has a
        // negative coefficient, which the pivot rule rejects.
        let u = e(&[0], &[1], &[]).scaled(2).unwrap().try_sub(&e(&[0], &[1], &[2])).unwrap();
        assert_eq!(u.coefficient_sum(), 0);
        assert_eq!(u.cardinality_weighted_sum(), 0);
        assert_eq!(u.pair_weighted_sum(), 1);
        assert_eq!(combinatorial_decompose(&u).unwrap(), None);

        // 2·u_⟨0,1|2⟩ − u_⟨0,1|∅⟩: positive maximal top, but no branch
        // reaches zero within the exact depth.
        let v = e(&[0], &[1], &[2]).scaled(2).unwrap().try_sub(&e(&[0], &[1], &[])).unwrap();
        assert_eq!(v.pair_weighted_sum(), 1);
        assert_eq!(combinatorial_decompose(&v).unwrap(), None);
    }

    #[test]
    fn decompose_guard() {
        let z = Imset::zero(VertexSet::full(7));
        assert!(matches!(
            combinatorial_decompose(&z),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn embedding_is_literal() {
        let u = semi_elementary(vs(&[1, 2]), &t(&[1], &[2], &[])).unwrap();
        let big = u.embedded_in(VertexSet::full(4)).unwrap();
        assert_eq!(big.get(vs(&[1, 2])), 1);
        assert_eq!(big.get(VertexSet::EMPTY), 1);
        assert_eq!(big.get(vs(&[1])), -1);
        assert_eq!(big.get(vs(&[2])), -1);
        assert!(u.embedded_in(vs(&[1])).is_err());
    }
}
