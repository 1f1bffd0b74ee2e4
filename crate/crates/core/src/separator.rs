//! Idealizers and separators of subsets.
//!
//! For a subset A of a semigroup S:
//!
//! * the idealizer `Id(A) = {x | xA ⊆ A and Ax ⊆ A}` is the largest
//!   subset that multiplies A into itself from both sides;
//! * the separator `Sep(A) = Id(A) ∩ Id(S∖A)` collects the elements that
//!   simultaneously stabilize A and its complement.
//!
//! `Id(∅) = S` vacuously, so `Sep(∅) = Sep(S) = S`. Three facts about
//! separators are exposed as checkable predicates and exercised
//! exhaustively by the test suites:
//!
//! 1. for `∅ ⊂ A ⊂ S`, `Sep(A) ⊆ A` or `Sep(A) ⊆ S∖A` (never both sides);
//! 2. a nonempty separator is a subsemigroup;
//! 3. a unitary subsemigroup H satisfies `Sep(H) = H`.
//!
//! Here a subset U is *unitary* when `ab ∈ U` with either factor in U
//! forces the other factor into U.

use crate::semigroup::Semigroup;
use crate::subset::SubsetMask;

/// Which side of A the separator landed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    /// `Sep(A) = ∅`.
    Empty,
    /// `∅ ≠ Sep(A) ⊆ A`.
    InA,
    /// `∅ ≠ Sep(A) ⊆ S∖A`.
    InComplement,
    /// `Sep(A) = S`, which happens exactly for `A = ∅` and `A = S`.
    WholeS,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Side::Empty => "Empty",
            Side::InA => "InA",
            Side::InComplement => "InComplement",
            Side::WholeS => "WholeS",
        })
    }
}

/// `Id(A) = {x | xA ⊆ A and Ax ⊆ A}`.
pub fn idealizer(s: &Semigroup, a: SubsetMask) -> SubsetMask {
    debug_assert_eq!(a.order(), s.order());
    let mut id = SubsetMask::empty(s.order());
    'next: for x in s.elements() {
        for u in a.iter() {
            if !a.contains(s.product(x, u)) || !a.contains(s.product(u, x)) {
                continue 'next;
            }
        }
        id = id.with(x);
    }
    id
}

/// `Sep(A) = Id(A) ∩ Id(S∖A)`.
pub fn separator(s: &Semigroup, a: SubsetMask) -> SubsetMask {
    idealizer(s, a).intersection(idealizer(s, a.complement()))
}

/// Separator of A with both idealizers and the side classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparatorReport {
    pub subset: SubsetMask,
    pub idealizer: SubsetMask,
    pub complement_idealizer: SubsetMask,
    pub separator: SubsetMask,
    pub side: Side,
}

/// Computes `Id(A)`, `Id(S∖A)`, `Sep(A)`, and the side in one pass.
pub fn separator_report(s: &Semigroup, a: SubsetMask) -> SeparatorReport {
    let id_a = idealizer(s, a);
    let id_c = idealizer(s, a.complement());
    let sep = id_a.intersection(id_c);
    SeparatorReport {
        subset: a,
        idealizer: id_a,
        complement_idealizer: id_c,
        separator: sep,
        side: classify_side(a, sep),
    }
}

/// Side classification for a proper nonempty subset.
///
/// For `A = ∅` or `A = S` the side is not defined (the separator is all
/// of S either way); such subsets are reported as an error and callers
/// that need a total answer use the [`Side::WholeS`] convention.
pub fn separator_side(s: &Semigroup, a: SubsetMask) -> Result<Side, SideUndefined> {
    if a.is_empty() || a.is_universe() {
        return Err(SideUndefined { universe: a.is_universe() });
    }
    Ok(classify_side(a, separator(s, a)))
}

fn classify_side(a: SubsetMask, sep: SubsetMask) -> Side {
    if sep.is_empty() {
        Side::Empty
    } else if sep.is_universe() {
        Side::WholeS
    } else if sep.is_subset_of(a) {
        Side::InA
    } else if sep.is_subset_of(a.complement()) {
        Side::InComplement
    } else {
        // Ruled out for any associative table: an element of Sep(A)∩A
        // times an element of Sep(A)∖A would land in A and S∖A at once.
        unreachable!("separator straddles its subset")
    }
}

/// Side query on `∅` or the whole carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("side undefined for the empty set and the whole carrier")]
pub struct SideUndefined {
    /// Whether the offending subset was the whole carrier (else empty).
    pub universe: bool,
}

/// True for a nonempty subset closed under the product.
pub fn is_subsemigroup(s: &Semigroup, h: SubsetMask) -> bool {
    debug_assert_eq!(h.order(), s.order());
    !h.is_empty()
        && h.iter()
            .all(|a| h.iter().all(|b| h.contains(s.product(a, b))))
}

/// True when `ab ∈ U` with either factor in U forces the other factor
/// into U (vacuously true for the empty set).
pub fn is_unitary(s: &Semigroup, u: SubsetMask) -> bool {
    debug_assert_eq!(u.order(), s.order());
    for a in s.elements() {
        for b in s.elements() {
            if u.contains(s.product(a, b)) && (u.contains(a) != u.contains(b)) {
                return false;
            }
        }
    }
    true
}

/// Fact 1: the separator of a proper nonempty subset stays on one side.
/// Boundary subsets hold trivially.
pub fn separator_takes_one_side(s: &Semigroup, a: SubsetMask) -> bool {
    if a.is_empty() || a.is_universe() {
        return true;
    }
    let sep = separator(s, a);
    sep.is_subset_of(a) || sep.is_subset_of(a.complement())
}

/// Fact 2: a nonempty separator is closed under the product.
pub fn separator_closed_when_nonempty(s: &Semigroup, a: SubsetMask) -> bool {
    let sep = separator(s, a);
    sep.is_empty() || is_subsemigroup(s, sep)
}

/// Fact 3: a unitary subsemigroup is fixed by the separator.
pub fn unitary_subsemigroup_fixed(s: &Semigroup, u: SubsetMask) -> bool {
    !(is_subsemigroup(s, u) && is_unitary(s, u)) || separator(s, u) == u
}
