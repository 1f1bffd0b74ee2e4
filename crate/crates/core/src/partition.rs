//! Set partitions of `{0, …, n−1}` in restricted-growth form.
//!
//! A partition is stored as the vector `class_of` mapping each element to
//! its class id. The vector is always normalized to a restricted-growth
//! sequence: `class_of[0] = 0` and each entry exceeds the maximum of the
//! prefix by at most one. Under this normalization class ids are ordered
//! by the smallest element of each class, and equal partitions compare
//! equal structurally.
//!
//! The text form separates classes with `;` and elements with `,`, classes
//! ordered by least element: `{{0}, {1, 2}}` prints as `0;1,2`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::subset::SubsetMask;

/// A partition of `{0, …, n−1}`, kept in restricted-growth form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Partition {
    /// Builds a partition from any class labeling, relabeling classes in
    /// order of first appearance.
    pub fn from_class_ids<L: Eq + Clone>(labels: &[L]) -> Self {
        assert!(!labels.is_empty(), "partition of an empty carrier");
        let mut seen: Vec<L> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for l in labels {
            let id = match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(l.clone());
                    seen.len() - 1
                }
            };
            class_of.push(id);
        }
        Partition { class_of, num_classes: seen.len() }
    }

    /// The partition into singletons.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Partition { class_of: (0..n).collect(), num_classes: n }
    }

    /// The one-class partition.
    pub fn universal(n: usize) -> Self {
        assert!(n >= 1);
        Partition { class_of: vec![0; n], num_classes: 1 }
    }

    /// Size of the partitioned carrier.
    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    /// Class id of element `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// The full element → class map.
    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same_class(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Members of class `c` as a subset of the carrier.
    pub fn class_mask(&self, c: usize) -> SubsetMask {
        assert!(c < self.num_classes, "class {c} out of range");
        SubsetMask::from_elements(
            self.order(),
            (0..self.order()).filter(|&x| self.class_of[x] == c),
        )
    }

    /// All class masks, in class-id order (least element ascending).
    pub fn class_masks(&self) -> Vec<SubsetMask> {
        (0..self.num_classes).map(|c| self.class_mask(c)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes == self.order()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes == 1
    }

    /// True when `a` is a union of whole classes (the empty set counts).
    pub fn is_class_union(&self, a: SubsetMask) -> bool {
        debug_assert_eq!(a.order(), self.order());
        (0..self.num_classes).all(|c| {
            let class = self.class_mask(c);
            let met = class.intersection(a);
            met.is_empty() || met == class
        })
    }

    /// Common refinement: x and y share a class in the meet exactly when
    /// they share a class in both inputs.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.order(), other.order(), "partitions of different carriers");
        let keys: Vec<(usize, usize)> = (0..self.order())
            .map(|x| (self.class_of[x], other.class_of[x]))
            .collect();
        Partition::from_class_ids(&keys)
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        assert_eq!(self.order(), coarser.order(), "partitions of different carriers");
        let mut image = vec![usize::MAX; self.num_classes];
        for x in 0..self.order() {
            let c = self.class_of[x];
            if image[c] == usize::MAX {
                image[c] = coarser.class_of[x];
            } else if image[c] != coarser.class_of[x] {
                return false;
            }
        }
        true
    }

    /// All partitions of `{0, …, n−1}` in lexicographic restricted-growth
    /// order, from the one-class partition to the all-singletons one.
    pub fn all(n: usize) -> Partitions {
        assert!(n >= 1);
        Partitions { next: Some(Partition::universal(n)) }
    }

    /// Parses the text form (`0;1,2`) against carrier size `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionParseError> {
        if text.trim().is_empty() {
            return Err(PartitionParseError::Empty);
        }
        let mut label_of: Vec<Option<usize>> = vec![None; n];
        for (class, chunk) in text.trim().split(';').enumerate() {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(PartitionParseError::EmptyClass);
            }
            for token in chunk.split(',') {
                let token = token.trim();
                let x: usize = token
                    .parse()
                    .map_err(|_| PartitionParseError::BadIndex { token: token.into() })?;
                if x >= n {
                    return Err(PartitionParseError::OutOfRange { index: x, order: n });
                }
                if label_of[x].is_some() {
                    return Err(PartitionParseError::Duplicate { index: x });
                }
                label_of[x] = Some(class);
            }
        }
        let labels: Vec<usize> = label_of
            .iter()
            .enumerate()
            .map(|(x, l)| l.ok_or(PartitionParseError::Missing { index: x }))
            .collect::<Result<_, _>>()?;
        Ok(Partition::from_class_ids(&labels))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.num_classes {
            if c > 0 {
                f.write_str(";")?;
            }
            let mut first = true;
            for x in (0..self.order()).filter(|&x| self.class_of[x] == c) {
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Iterator behind [`Partition::all`].
pub struct Partitions {
    next: Option<Partition>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(current)
    }
}

/// Next restricted-growth sequence in lexicographic order.
fn successor(p: &Partition) -> Option<Partition> {
    let n = p.order();
    let a = p.classes();
    let mut prefix_max = vec![0; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
    }
    for i in (1..n).rev() {
        if a[i] <= prefix_max[i] {
            let mut next: Vec<usize> = a.to_vec();
            next[i] += 1;
            for v in next.iter_mut().skip(i + 1) {
                *v = 0;
            }
            let num_classes = next.iter().copied().max().unwrap() + 1;
            return Some(Partition { class_of: next, num_classes });
        }
    }
    None
}

/// Why a partition string failed to parse.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PartitionParseError {
    #[error("empty partition text")]
    Empty,
    #[error("empty class between `;` separators")]
    EmptyClass,
    #[error("`{token}` is not an element index")]
    BadIndex { token: String },
    #[error("element {index} outside carrier of size {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("element {index} listed twice")]
    Duplicate { index: usize },
    #[error("element {index} missing from the partition")]
    Missing { index: usize },
}
