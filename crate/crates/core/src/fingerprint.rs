//! Fingerprint relations and the congruences they induce.
//!
//! Fix a subset H of a semigroup S. Every element a leaves a *fingerprint*
//! on H: the relation `{(x, y) | x·a·y ∈ H}`, stored as an n×n bit
//! matrix. Grouping elements by equal fingerprints yields a partition
//! which is a congruence of S for every subset H whatsoever: the
//! *fingerprint congruence* of H.
//!
//! A *family* `(H; H₁, …, H_k)` is a nonempty collection of subsets whose
//! separators intersect exactly to H, with H itself a nonempty
//! subsemigroup. Grouping elements by the tuple of their fingerprints on
//! all members (equivalently, taking the common refinement of the
//! members' fingerprint congruences) gives the *family congruence*.
//!
//! [`maximal_family`] builds the largest family available for a given H:
//! every subset whose separator contains H. Its members always include
//! `∅` and S, whose separators are all of S.

use alloc::vec::Vec;
use core::fmt;

use crate::partition::Partition;
use crate::relations::{congruence_witness, Congruence};
use crate::semigroup::Semigroup;
use crate::separator::{is_subsemigroup, separator};
use crate::subset::SubsetMask;

/// The relation `{(x, y) | x·a·y ∈ H}` as an n×n bit matrix
/// (bit `x·n + y` row-major).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    n: usize,
    words: Vec<u64>,
}

/// The fingerprint of `a` on `h`.
pub fn fingerprint(s: &Semigroup, h: SubsetMask, a: usize) -> Fingerprint {
    let n = s.order();
    debug_assert_eq!(h.order(), n);
    debug_assert!(a < n);
    let mut words = alloc::vec![0u64; (n * n + 63) / 64];
    for x in 0..n {
        let xa = s.product(x, a);
        for y in 0..n {
            if h.contains(s.product(xa, y)) {
                let bit = x * n + y;
                words[bit / 64] |= 1 << (bit % 64);
            }
        }
    }
    Fingerprint { n, words }
}

impl Fingerprint {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Whether the pair `(x, y)` is in the relation.
    pub fn contains(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n && y < self.n);
        let bit = x * self.n + y;
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn pair_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The related pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
            .collect()
    }
}

impl fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fingerprint{:?}", self.pairs())
    }
}

/// Groups elements by their fingerprint on `h`. The result is a
/// congruence for every subset of every finite semigroup: if a and b
/// have equal fingerprints, so do c·a and c·b for every c, because
/// `x·(ca)·y ∈ H` is `(xc)·a·y ∈ H` read at the shifted left argument,
/// and symmetrically on the right.
pub fn fingerprint_partition(s: &Semigroup, h: SubsetMask) -> Partition {
    let n = s.order();
    let prints: Vec<Fingerprint> = (0..n).map(|a| fingerprint(s, h, a)).collect();
    let mut first_seen: alloc::collections::BTreeMap<&Fingerprint, usize> =
        alloc::collections::BTreeMap::new();
    let mut labels = Vec::with_capacity(n);
    for p in &prints {
        let next = first_seen.len();
        labels.push(*first_seen.entry(p).or_insert(next));
    }
    Partition::from_class_ids(&labels)
}

/// [`fingerprint_partition`] wrapped as a congruence of `s`.
pub fn fingerprint_congruence<'s>(s: &'s Semigroup, h: SubsetMask) -> Congruence<'s> {
    let p = fingerprint_partition(s, h);
    debug_assert!(congruence_witness(s, &p).is_none());
    Congruence::new_unchecked(s, p)
}

/// A family `(H; H₁, …, H_k)`: members whose separators are meant to
/// intersect exactly to H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    /// The intersection the family is anchored to.
    pub h: SubsetMask,
    /// Members, deduplicated and in ascending mask order.
    pub members: Vec<SubsetMask>,
    /// Whether [`validate_family`] vouched for this value.
    pub validated: bool,
}

impl Family {
    /// A family that has not been validated (so the congruence
    /// constructors refuse it). Members are normalized all the same.
    pub fn unvalidated(h: SubsetMask, members: &[SubsetMask]) -> Family {
        Family { h, members: normalize(members), validated: false }
    }
}

fn normalize(members: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut m = members.to_vec();
    m.sort();
    m.dedup();
    m
}

/// Checks the family axioms and returns the validated family:
/// the member list is nonempty, H is a nonempty subsemigroup, and the
/// separators of the members intersect to exactly H.
pub fn validate_family(
    s: &Semigroup,
    h: SubsetMask,
    members: &[SubsetMask],
) -> Result<Family, FamilyError> {
    let members = normalize(members);
    if members.is_empty() {
        return Err(FamilyError::EmptyFamily);
    }
    if !is_subsemigroup(s, h) {
        return Err(FamilyError::NotSubsemigroup { h });
    }
    let mut meet = SubsetMask::universe(s.order());
    for &m in &members {
        meet = meet.intersection(separator(s, m));
    }
    if meet != h {
        return Err(FamilyError::IntersectionMismatch { expected: h, actual: meet });
    }
    Ok(Family { h, members, validated: true })
}

/// The family congruence as a partition: elements grouped by the tuple
/// of their fingerprints on every member, computed as the common
/// refinement of the members' fingerprint partitions.
pub fn family_partition(s: &Semigroup, fam: &Family) -> Result<Partition, FamilyError> {
    if !fam.validated {
        return Err(FamilyError::Unvalidated);
    }
    let mut acc = Partition::universal(s.order());
    for &m in &fam.members {
        if acc.is_identity() {
            break;
        }
        acc = acc.meet(&fingerprint_partition(s, m));
    }
    Ok(acc)
}

/// [`family_partition`] wrapped as a congruence of `s`.
pub fn family_congruence<'s>(s: &'s Semigroup, fam: &Family) -> Result<Congruence<'s>, FamilyError> {
    let p = family_partition(s, fam)?;
    debug_assert!(congruence_witness(s, &p).is_none());
    Ok(Congruence::new_unchecked(s, p))
}

/// The largest family anchored to `h`: all subsets A with
/// `h ⊆ Sep(A)`, in ascending mask order. Errors if the 2ⁿ subset scan
/// is over the cap or if the collected members fail validation (which
/// signals that h is not the kind of subsemigroup separators fix).
pub fn maximal_family(s: &Semigroup, h: SubsetMask, cap: usize) -> Result<Family, FamilyError> {
    if s.order() > cap {
        return Err(FamilyError::CapExceeded { order: s.order(), cap });
    }
    let members: Vec<SubsetMask> = SubsetMask::all(s.order())
        .filter(|&a| h.is_subset_of(separator(s, a)))
        .collect();
    validate_family(s, h, &members)
}

/// Why a family was rejected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("a family needs at least one member")]
    EmptyFamily,
    #[error("H = {h} is not a nonempty subsemigroup")]
    NotSubsemigroup { h: SubsetMask },
    #[error("member separators intersect to {actual}, not H = {expected}")]
    IntersectionMismatch { expected: SubsetMask, actual: SubsetMask },
    #[error("family was not validated")]
    Unvalidated,
    #[error("order {order} above subset-enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps;
    use alloc::string::ToString;
    use alloc::vec;

    fn min2() -> Semigroup {
        Semigroup::named("chain_min", 2).unwrap()
    }

    fn null2() -> Semigroup {
        Semigroup::named("null", 2).unwrap()
    }

    fn zmul3() -> Semigroup {
        Semigroup::named("zmod_mult", 3).unwrap()
    }

    fn m(n: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(n, elems.iter().copied())
    }

    #[test]
    fn fingerprint_of_1_on_the_zero_class_collects_the_annihilating_pairs() {
        let s = zmul3();
        let f = fingerprint(&s, m(3, &[0]), 1);
        assert_eq!(f.pairs(), [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)]);
        assert_eq!(f.pair_count(), 5);
    }

    #[test]
    fn unit_classes_of_mod_3_multiplication_arise_as_a_fingerprint_partition() {
        let s = zmul3();
        let p = fingerprint_partition(&s, m(3, &[1, 2]));
        assert_eq!(p.to_string(), "0;1,2");
    }

    #[test]
    fn null_semigroup_fingerprints_are_all_equal() {
        let s = null2();
        let p = fingerprint_partition(&s, m(2, &[0]));
        assert!(p.is_universal());
    }

    #[test]
    fn chain_fingerprints_separate_everything() {
        let s = min2();
        let p = fingerprint_partition(&s, m(2, &[1]));
        assert!(p.is_identity());
    }

    #[test]
    fn fingerprint_partitions_are_congruences_on_the_catalog() {
        for name in ["null", "chain_min", "zmod_mult", "zmod_add"] {
            for n in 1..=4 {
                let s = Semigroup::named(name, n).unwrap();
                for h in SubsetMask::all(n) {
                    let p = fingerprint_partition(&s, h);
                    assert_eq!(congruence_witness(&s, &p), None, "{name}({n}) H={h}");
                }
            }
        }
    }

    #[test]
    fn fingerprint_partition_matches_the_pairwise_oracle() {
        // Oracle: a ~ b iff the defining membership test agrees on every
        // pair, compared pairwise without fingerprints.
        fn naive(s: &Semigroup, h: SubsetMask) -> Partition {
            let n = s.order();
            let same = |a: usize, b: usize| {
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        h.contains(s.product(s.product(x, a), y))
                            == h.contains(s.product(s.product(x, b), y))
                    })
                })
            };
            let mut labels = vec![0usize; n];
            for a in 0..n {
                labels[a] = (0..a).find(|&b| same(a, b)).unwrap_or(a);
            }
            Partition::from_class_ids(&labels)
        }
        for name in ["null", "chain_min", "zmod_mult", "zmod_add"] {
            let s = Semigroup::named(name, 4).unwrap();
            for h in SubsetMask::all(4) {
                assert_eq!(fingerprint_partition(&s, h), naive(&s, h), "{name} H={h}");
            }
        }
    }

    #[test]
    fn validating_the_unit_class_family_succeeds() {
        let s = zmul3();
        let h = m(3, &[1, 2]);
        let fam = validate_family(&s, h, &[m(3, &[0]), h]).unwrap();
        assert!(fam.validated);
        assert_eq!(fam.members, [m(3, &[0]), h]);
    }

    #[test]
    fn validation_reports_the_actual_intersection_on_mismatch() {
        let s = zmul3();
        let h = m(3, &[1, 2]);
        assert_eq!(
            validate_family(&s, h, &[m(3, &[1])]).unwrap_err(),
            FamilyError::IntersectionMismatch { expected: h, actual: m(3, &[1]) }
        );
    }

    #[test]
    fn validation_rejects_empty_or_non_subsemigroup_anchors() {
        let s = zmul3();
        assert_eq!(
            validate_family(&s, m(3, &[1, 2]), &[]).unwrap_err(),
            FamilyError::EmptyFamily
        );
        assert!(matches!(
            validate_family(&s, SubsetMask::empty(3), &[m(3, &[0])]),
            Err(FamilyError::NotSubsemigroup { .. })
        ));
        // {2} is not closed: 2·2 = 1.
        assert!(matches!(
            validate_family(&s, m(3, &[2]), &[m(3, &[2])]),
            Err(FamilyError::NotSubsemigroup { .. })
        ));
    }

    #[test]
    fn the_whole_carrier_always_validates_against_itself() {
        for s in [min2(), null2(), zmul3()] {
            let u = SubsetMask::universe(s.order());
            let fam = validate_family(&s, u, &[u]).unwrap();
            assert_eq!(fam.members, [u]);
        }
    }

    #[test]
    fn family_congruence_of_the_unit_class_family() {
        let s = zmul3();
        let h = m(3, &[1, 2]);
        let fam = validate_family(&s, h, &[m(3, &[0]), h]).unwrap();
        let c = family_congruence(&s, &fam).unwrap();
        assert_eq!(c.partition().to_string(), "0;1,2");
    }

    #[test]
    fn family_congruence_of_the_trivial_family_is_universal() {
        let s = null2();
        let u = SubsetMask::universe(2);
        let fam = validate_family(&s, u, &[SubsetMask::empty(2), u]).unwrap();
        let c = family_congruence(&s, &fam).unwrap();
        assert!(c.partition().is_universal());
    }

    #[test]
    fn unvalidated_families_are_refused() {
        let s = zmul3();
        let fam = Family::unvalidated(m(3, &[1, 2]), &[m(3, &[0])]);
        assert_eq!(family_partition(&s, &fam).unwrap_err(), FamilyError::Unvalidated);
    }

    #[test]
    fn maximal_families_match_the_worked_examples() {
        let s = zmul3();
        let h = m(3, &[1, 2]);
        let fam = maximal_family(&s, h, caps::SUBSET_ORDER).unwrap();
        assert_eq!(
            fam.members,
            [SubsetMask::empty(3), m(3, &[0]), h, SubsetMask::universe(3)]
        );

        let s = min2();
        let fam = maximal_family(&s, m(2, &[1]), caps::SUBSET_ORDER).unwrap();
        assert_eq!(
            fam.members,
            [
                SubsetMask::empty(2),
                m(2, &[0]),
                m(2, &[1]),
                SubsetMask::universe(2)
            ]
        );

        let s = null2();
        let fam = maximal_family(&s, SubsetMask::universe(2), caps::SUBSET_ORDER).unwrap();
        assert_eq!(fam.members, [SubsetMask::empty(2), SubsetMask::universe(2)]);
    }

    #[test]
    fn maximal_family_respects_the_cap_and_validation() {
        let s = Semigroup::named("zmod_add", 4).unwrap();
        assert!(matches!(
            maximal_family(&s, SubsetMask::universe(4), 3),
            Err(FamilyError::CapExceeded { order: 4, cap: 3 })
        ));
        // {0} is a subsemigroup of the null semigroup, but separators
        // only ever intersect to the whole carrier there.
        let s = null2();
        assert!(matches!(
            maximal_family(&s, m(2, &[0]), caps::SUBSET_ORDER),
            Err(FamilyError::IntersectionMismatch { .. })
        ));
    }

    #[test]
    fn singleton_families_reduce_to_the_fingerprint_partition() {
        let s = zmul3();
        let a = m(3, &[0]);
        let h = separator(&s, a);
        let fam = validate_family(&s, h, &[a]).unwrap();
        assert_eq!(
            family_partition(&s, &fam).unwrap(),
            fingerprint_partition(&s, a)
        );
    }

    #[test]
    fn family_partition_equals_grouping_by_fingerprint_tuples() {
        // Oracle: label each element by the vector of its fingerprints
        // on all members, then group equal labels.
        let s = zmul3();
        let h = m(3, &[1, 2]);
        let fam = maximal_family(&s, h, caps::SUBSET_ORDER).unwrap();
        let labels: Vec<Vec<Fingerprint>> = (0..3)
            .map(|a| fam.members.iter().map(|&hm| fingerprint(&s, hm, a)).collect())
            .collect();
        assert_eq!(
            family_partition(&s, &fam).unwrap(),
            Partition::from_class_ids(&labels)
        );
    }

    #[test]
    fn more_members_can_only_refine_the_family_partition() {
        let s = zmul3();
        let h = m(3, &[1, 2]);
        let fam = maximal_family(&s, h, caps::SUBSET_ORDER).unwrap();
        let mut coarser = Partition::universal(3);
        for k in 1..=fam.members.len() {
            let prefix = Family { h, members: fam.members[..k].to_vec(), validated: true };
            let p = family_partition(&s, &prefix).unwrap();
            assert!(p.refines(&coarser), "prefix of {k} members must refine");
            coarser = p;
        }
    }
}
