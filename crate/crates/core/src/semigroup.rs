//! Finite semigroups as Cayley tables.
//!
//! A table of order n is stored row-major: `table[a*n + b]` is the product
//! `a·b`, with the row index the left factor. Construction eagerly checks
//! closure and associativity, so every [`Semigroup`] value in the program
//! is a genuine semigroup; commutativity is computed once and cached.
//!
//! The text form is one line holding `n` followed by n lines of n
//! whitespace-separated entries. Blank lines and lines starting with `#`
//! are ignored.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::subset::MAX_ORDER;

/// A finite semigroup on `{0, …, n−1}`, validated at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semigroup {
    n: usize,
    table: Vec<usize>,
    commutative: bool,
}

/// First triple `(a, b, c)` with `(a·b)·c ≠ a·(b·c)`, scanning
/// lexicographically. `None` means the table is associative.
///
/// Requires `table.len() == n²` with every entry below `n`.
pub fn associativity_witness(n: usize, table: &[usize]) -> Option<[usize; 3]> {
    debug_assert_eq!(table.len(), n * n);
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First pair `(a, b)` with `a·b ≠ b·a`, or `None` if the table commutes.
pub fn commutativity_witness(n: usize, table: &[usize]) -> Option<[usize; 2]> {
    debug_assert_eq!(table.len(), n * n);
    for a in 0..n {
        for b in a + 1..n {
            if table[a * n + b] != table[b * n + a] {
                return Some([a, b]);
            }
        }
    }
    None
}

impl Semigroup {
    /// Validates a row-major table and wraps it.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::ZeroOrder);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge { order: n });
        }
        if table.len() != n * n {
            return Err(TableError::WrongLength {
                expected: n * n,
                found: table.len(),
            });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(TableError::ValueOutOfRange {
                    row: i / n,
                    col: i % n,
                    value: v,
                    order: n,
                });
            }
        }
        if let Some([a, b, c]) = associativity_witness(n, &table) {
            return Err(TableError::NotAssociative { a, b, c });
        }
        let commutative = commutativity_witness(n, &table).is_none();
        Ok(Semigroup { n, table, commutative })
    }

    /// Parses the text form of a single table.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut tables = parse_many(text, Some(1))?;
        match tables.pop() {
            Some(s) => Ok(s),
            None => Err(TableError::Parse {
                line: text.lines().count().max(1),
                message: "no table found".into(),
            }),
        }
    }

    /// A table from the built-in catalog.
    ///
    /// * `null`: every product is 0
    /// * `chain_min`: `a·b = min(a, b)`
    /// * `zmod_mult`: multiplication mod n
    /// * `zmod_add`: addition mod n
    pub fn named(name: &str, n: usize) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::ZeroOrder);
        }
        let entry = |a: usize, b: usize| -> Result<usize, TableError> {
            match name {
                "null" => Ok(0),
                "chain_min" => Ok(a.min(b)),
                "zmod_mult" => Ok(a * b % n),
                "zmod_add" => Ok((a + b) % n),
                _ => Err(TableError::UnknownName { name: name.into() }),
            }
        };
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(entry(a, b)?);
            }
        }
        Self::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The product `a·b`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Cached commutativity of the whole table.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    /// The two-sided identity element, if one exists. A finite semigroup
    /// has at most one: if e and f are both identities then e = e·f = f.
    pub fn identity_element(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.product(e, x) == x && self.product(x, e) == x))
    }

    /// Table rows as nested vectors (the shape reports serialize).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    /// Canonical text form: `n`, then n rows of single-space-separated
    /// entries, each line newline-terminated. Parsing it back yields an
    /// equal semigroup, and serializing a parse of canonical text is the
    /// identity on the text.
    pub fn to_cayley_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if b > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", self.product(a, b));
            }
            out.push('\n');
        }
        out
    }
}

/// Parses whitespace-separated tables from one text, each headed by its
/// order. `limit` bounds how many tables may appear.
pub(crate) fn parse_many(text: &str, limit: Option<usize>) -> Result<Vec<Semigroup>, TableError> {
    let mut toks = tokens(text).peekable();
    let mut out = Vec::new();
    while let Some(&(line, _)) = toks.peek() {
        if let Some(limit) = limit {
            if out.len() == limit {
                return Err(TableError::Parse {
                    line,
                    message: "trailing data after table".into(),
                });
            }
        }
        let header_line = line;
        let n = take_number(&mut toks, "table order")?;
        if n == 0 {
            return Err(TableError::Parse {
                line: header_line,
                message: "table order must be at least 1".into(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        let mut last_line = header_line;
        for i in 0..n * n {
            match toks.next() {
                Some((line, tok)) => {
                    last_line = line;
                    let v: usize = tok.parse().map_err(|_| TableError::Parse {
                        line,
                        message: format!("`{tok}` is not a table entry"),
                    })?;
                    if v >= n {
                        return Err(TableError::Parse {
                            line,
                            message: format!(
                                "entry {v} at row {}, column {} outside 0..{n}",
                                i / n,
                                i % n
                            ),
                        });
                    }
                    table.push(v);
                }
                None => {
                    return Err(TableError::Parse {
                        line: last_line,
                        message: format!("table ends after {} of {} entries", i, n * n),
                    });
                }
            }
        }
        let s = Semigroup::from_table(n, table).map_err(|e| match e {
            TableError::Parse { .. } => e,
            other => TableError::InTable {
                index: out.len(),
                line: header_line,
                source: Box::new(other),
            },
        })?;
        out.push(s);
    }
    Ok(out)
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().flat_map(|(i, line)| {
        let content = if line.trim_start().starts_with('#') { "" } else { line };
        content.split_whitespace().map(move |t| (i + 1, t))
    })
}

fn take_number<'a, I: Iterator<Item = (usize, &'a str)>>(
    toks: &mut I,
    what: &str,
) -> Result<usize, TableError> {
    match toks.next() {
        Some((line, tok)) => tok.parse().map_err(|_| TableError::Parse {
            line,
            message: format!("`{tok}` is not a {what}"),
        }),
        None => Err(TableError::Parse {
            line: 1,
            message: format!("missing {what}"),
        }),
    }
}

/// Why a table failed to parse or validate.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("a semigroup needs at least one element")]
    ZeroOrder,
    #[error("order {order} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge { order: usize },
    #[error("table has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("entry {value} at row {row}, column {col} outside 0..{order}")]
    ValueOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("associativity fails at ({a}, {b}, {c}): ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("unknown catalog name `{name}`")]
    UnknownName { name: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table {index} (line {line}): {source}")]
    InTable { index: usize, line: usize, source: Box<TableError> },
}

impl TableError {
    /// The input line the error points at, for parse-shaped errors.
    pub fn line(&self) -> Option<usize> {
        match self {
            TableError::Parse { line, .. } | TableError::InTable { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const MIN2: &str = "2\n0 0\n0 1";
    pub(crate) const NULL2: &str = "2\n0 0\n0 0";

    #[test]
    fn parses_the_two_element_chain() {
        let s = Semigroup::parse(MIN2).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s, Semigroup::named("chain_min", 2).unwrap());
        assert!(s.is_commutative());
        assert_eq!(s.identity_element(), Some(1));
    }

    #[test]
    fn parses_the_two_element_null_semigroup() {
        let s = Semigroup::parse(NULL2).unwrap();
        assert_eq!(s, Semigroup::named("null", 2).unwrap());
        assert_eq!(s.identity_element(), None);
    }

    #[test]
    fn rejects_a_non_associative_table_with_first_witness() {
        let err = Semigroup::parse("2\n1 0\n0 0").unwrap_err();
        match err {
            TableError::InTable { source, .. } => {
                assert_eq!(*source, TableError::NotAssociative { a: 0, b: 0, c: 1 });
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn xor_is_associative_but_the_flipped_table_is_not() {
        assert!(associativity_witness(2, &[0, 1, 1, 0]).is_none());
        assert_eq!(associativity_witness(2, &[1, 1, 1, 0]), Some([0, 0, 1]));
    }

    #[test]
    fn mod_3_multiplication_is_commutative_with_identity_1() {
        let s = Semigroup::named("zmod_mult", 3).unwrap();
        assert_eq!(s.table(), &[0, 0, 0, 0, 1, 2, 0, 2, 1]);
        assert!(s.is_commutative());
        assert_eq!(s.identity_element(), Some(1));
    }

    #[test]
    fn catalog_families_construct_at_several_orders() {
        for name in ["null", "chain_min", "zmod_mult", "zmod_add"] {
            for n in 1..=6 {
                let s = Semigroup::named(name, n).unwrap();
                assert_eq!(s.order(), n);
                assert!(s.is_commutative(), "{name}({n}) should commute");
            }
        }
        assert!(matches!(
            Semigroup::named("boolean", 2),
            Err(TableError::UnknownName { .. })
        ));
        assert!(matches!(Semigroup::named("null", 0), Err(TableError::ZeroOrder)));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# order two\n\n2\n# rows\n0 0\n\n0 1\n";
        assert_eq!(Semigroup::parse(text).unwrap(), Semigroup::parse(MIN2).unwrap());
    }

    #[test]
    fn serialization_round_trips_bit_exactly() {
        let s = Semigroup::parse(MIN2).unwrap();
        assert_eq!(s.to_cayley_text(), "2\n0 0\n0 1\n");
        assert_eq!(Semigroup::parse(&s.to_cayley_text()).unwrap(), s);
        let canonical = Semigroup::named("zmod_add", 4).unwrap().to_cayley_text();
        assert_eq!(
            Semigroup::parse(&canonical).unwrap().to_cayley_text(),
            canonical
        );
    }

    #[test]
    fn parse_errors_name_the_offending_line() {
        let err = Semigroup::parse("2\n0 0\n0 x").unwrap_err();
        assert_eq!(err.line(), Some(3));
        let err = Semigroup::parse("2\n0 0\n0 7").unwrap_err();
        assert_eq!(err.line(), Some(3));
        let err = Semigroup::parse("2\n0 0\n0 1\n2\n0 0\n0 1").unwrap_err();
        assert_eq!(err.line(), Some(4));
        let err = Semigroup::parse("2\n0 0\n0").unwrap_err();
        assert_eq!(err.line(), Some(3));
    }

    #[test]
    fn non_commutative_tables_are_flagged() {
        // Left-zero: every product is the left factor.
        let s = Semigroup::from_table(2, alloc::vec![0, 0, 1, 1]).unwrap();
        assert!(!s.is_commutative());
        assert_eq!(commutativity_witness(2, s.table()), Some([0, 1]));
        assert_eq!(s.identity_element(), None);
    }

    #[test]
    fn order_bounds_are_enforced() {
        assert!(matches!(
            Semigroup::from_table(0, Vec::new()),
            Err(TableError::ZeroOrder)
        ));
        assert!(matches!(
            Semigroup::named("null", 65),
            Err(TableError::OrderTooLarge { order: 65 })
        ));
    }
}
