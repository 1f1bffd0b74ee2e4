//! Executable checks for the five structure claims, plus a sweep
//! harness that runs them over whole corpora.
//!
//! The checks, stated over a finite semigroup S:
//!
//! 1. For any congruence p and any union U of its classes, Sep U is
//!    empty or again a union of p-classes.
//! 2. The relation of a validated family `(H; Hᵢ, I)` is a congruence
//!    under which H and every member Hᵢ are unions of classes.
//! 3. Forward: on commutative S, H is exactly one class of the family
//!    congruence, namely the identity class of the quotient.
//!    Converse: on commutative S, every monoid congruence p is
//!    reconstructed exactly by the family of all its classes, anchored
//!    to the identity class.
//! 4. On commutative S, a monoid congruence p with identity class H is
//!    sandwiched between the maximal-family congruence of H and the
//!    fingerprint congruence of H, and Sep H = H along the way.
//! 5. On commutative S, a non-universal monoid congruence exists iff
//!    some proper nonempty subset has a nonempty separator; for each
//!    such subset A, Sep A is the identity class of the quotient by the
//!    fingerprint congruence of A, of its complement, and of Sep A
//!    itself (the three readings are checked separately).
//!
//! Every failed check carries a [`Witness`] with enough strings to
//! rebuild the configuration and re-run that one check via [`replay`].
//! Checks 1 and 2 apply to arbitrary semigroups; 3 through 5 report
//! [`CheckStatus::NotApplicable`] on non-commutative input unless hunt
//! mode forces them, in which case violations are recorded as
//! [`CheckStatus::Candidate`], never as failures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::caps;
use crate::fingerprint::{
    family_partition, fingerprint_congruence, fingerprint_partition, maximal_family,
    validate_family, Family, FamilyError,
};
use crate::partition::Partition;
use crate::relations::{congruence_witness, enumerate_congruences, Congruence, CongruenceError};
use crate::semigroup::Semigroup;
use crate::separator::separator;
use crate::subset::SubsetMask;

/// Which claim a result speaks for. Theorem 3 has two independent
/// directions, so it contributes two ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum TheoremId {
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem2")]
    Theorem2,
    #[serde(rename = "theorem3_forward")]
    Theorem3Forward,
    #[serde(rename = "theorem3_converse")]
    Theorem3Converse,
    #[serde(rename = "theorem4")]
    Theorem4,
    #[serde(rename = "corollary5")]
    Corollary5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Theorem1,
        TheoremId::Theorem2,
        TheoremId::Theorem3Forward,
        TheoremId::Theorem3Converse,
        TheoremId::Theorem4,
        TheoremId::Corollary5,
    ];

    /// The claim number used by theorem selection (both directions of
    /// the third claim share 3).
    pub fn number(self) -> u8 {
        match self {
            TheoremId::Theorem1 => 1,
            TheoremId::Theorem2 => 2,
            TheoremId::Theorem3Forward | TheoremId::Theorem3Converse => 3,
            TheoremId::Theorem4 => 4,
            TheoremId::Corollary5 => 5,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TheoremId::Theorem1 => "theorem1",
            TheoremId::Theorem2 => "theorem2",
            TheoremId::Theorem3Forward => "theorem3_forward",
            TheoremId::Theorem3Converse => "theorem3_converse",
            TheoremId::Theorem4 => "theorem4",
            TheoremId::Corollary5 => "corollary5",
        }
    }
}

impl core::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one check or one merged group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    NotApplicable,
    Pass,
    /// A violation found by hunt mode where the claim was never
    /// promised (non-commutative input); recorded, not counted as a
    /// failure.
    Candidate,
    Fail,
}

impl core::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            CheckStatus::NotApplicable => "not_applicable",
            CheckStatus::Pass => "pass",
            CheckStatus::Candidate => "candidate",
            CheckStatus::Fail => "fail",
        })
    }
}

/// Everything needed to rebuild one failed check: the table plus the
/// subset, partition, selection, and family strings that configured it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    /// Cayley file text of the semigroup.
    pub table: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<String>,
    /// Class ids for a theorem-1 selection, comma separated, `-` empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_h: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub family_members: Vec<String>,
    /// Free-form named values (actual separators, quotient classes, …).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, String>,
}

impl Witness {
    fn new(s: &Semigroup) -> Witness {
        Witness {
            table: s.to_cayley_text(),
            partition: None,
            subset: None,
            selection: None,
            family_h: None,
            family_members: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    fn partition(mut self, p: &Partition) -> Witness {
        self.partition = Some(p.to_string());
        self
    }

    fn subset(mut self, a: SubsetMask) -> Witness {
        self.subset = Some(a.to_string());
        self
    }

    fn selection(mut self, ids: &[usize]) -> Witness {
        self.selection = Some(format_ids(ids));
        self
    }

    fn family(mut self, fam: &Family) -> Witness {
        self.family_h = Some(fam.h.to_string());
        self.family_members = fam.members.iter().map(|m| m.to_string()).collect();
        self
    }

    fn note(mut self, key: &str, value: impl core::fmt::Display) -> Witness {
        self.data.insert(key.to_string(), value.to_string());
        self
    }
}

fn format_ids(ids: &[usize]) -> String {
    if ids.is_empty() {
        return "-".to_string();
    }
    let mut out = String::new();
    for (i, id) in ids.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&id.to_string());
    }
    out
}

fn parse_ids(text: &str) -> Option<Vec<usize>> {
    if text == "-" {
        return Some(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Result of one check, or of all runs of one check over a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TheoremResult {
    pub theorem: TheoremId,
    pub status: CheckStatus,
    /// How many sub-claims were evaluated.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Which sub-claim failed, or a short informational note.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl TheoremResult {
    fn pass(theorem: TheoremId, checks: usize) -> TheoremResult {
        TheoremResult { theorem, status: CheckStatus::Pass, checks, witness: None, detail: None }
    }

    fn pass_with(theorem: TheoremId, checks: usize, detail: String) -> TheoremResult {
        TheoremResult {
            theorem,
            status: CheckStatus::Pass,
            checks,
            witness: None,
            detail: Some(detail),
        }
    }

    fn fail(theorem: TheoremId, checks: usize, witness: Witness, detail: &str) -> TheoremResult {
        TheoremResult {
            theorem,
            status: CheckStatus::Fail,
            checks,
            witness: Some(witness),
            detail: Some(detail.to_string()),
        }
    }

    fn not_applicable(theorem: TheoremId, detail: &str) -> TheoremResult {
        TheoremResult {
            theorem,
            status: CheckStatus::NotApplicable,
            checks: 0,
            witness: None,
            detail: Some(detail.to_string()),
        }
    }

    /// Hunt mode downgrade: violations outside the claimed scope are
    /// candidates, not failures.
    fn candidate(mut self) -> TheoremResult {
        if self.status == CheckStatus::Fail {
            self.status = CheckStatus::Candidate;
        }
        self
    }
}

/// Sep of any class union is empty or a class union.
pub fn check_theorem1(
    p: &Congruence<'_>,
    selection: &[usize],
) -> Result<TheoremResult, CongruenceError> {
    let u = p.class_union(selection)?;
    let sep = separator(p.semigroup(), u);
    if sep.is_empty() || p.is_class_union(sep) {
        Ok(TheoremResult::pass(TheoremId::Theorem1, 1))
    } else {
        let w = Witness::new(p.semigroup())
            .partition(p.partition())
            .subset(u)
            .selection(selection)
            .note("separator", sep);
        Ok(TheoremResult::fail(
            TheoremId::Theorem1,
            1,
            w,
            "separator of the class union is neither empty nor a class union",
        ))
    }
}

/// The family relation is a congruence saturating H and every member.
pub fn check_theorem2(s: &Semigroup, fam: &Family) -> Result<TheoremResult, FamilyError> {
    if !fam.validated {
        return Err(FamilyError::Unvalidated);
    }
    let p = family_partition(s, fam)?;
    let checks = 2 + fam.members.len();
    if let Some([a, b, c]) = congruence_witness(s, &p) {
        let w = Witness::new(s)
            .partition(&p)
            .family(fam)
            .note("witness", format!("({a}, {b}, {c})"));
        return Ok(TheoremResult::fail(
            TheoremId::Theorem2,
            checks,
            w,
            "family relation is not a congruence",
        ));
    }
    for &m in fam.members.iter().chain(core::iter::once(&fam.h)) {
        if !p.is_class_union(m) {
            let w = Witness::new(s).partition(&p).family(fam).subset(m);
            return Ok(TheoremResult::fail(
                TheoremId::Theorem2,
                checks,
                w,
                "subset is not a union of classes of the family congruence",
            ));
        }
    }
    Ok(TheoremResult::pass(TheoremId::Theorem2, checks))
}

/// H is one whole class and the identity class of the quotient.
pub fn check_theorem3_forward(
    s: &Semigroup,
    fam: &Family,
) -> Result<TheoremResult, FamilyError> {
    if !fam.validated {
        return Err(FamilyError::Unvalidated);
    }
    if !s.is_commutative() {
        return Ok(TheoremResult::not_applicable(
            TheoremId::Theorem3Forward,
            "semigroup is not commutative",
        ));
    }
    Ok(theorem3_forward_raw(s, fam))
}

fn theorem3_forward_raw(s: &Semigroup, fam: &Family) -> TheoremResult {
    let id = TheoremId::Theorem3Forward;
    let p = family_partition(s, fam).expect("family was validated");
    if !p.class_masks().contains(&fam.h) {
        let w = Witness::new(s).partition(&p).family(fam);
        return TheoremResult::fail(id, 2, w, "H is not a single class of the family congruence");
    }
    let cong = Congruence::new_unchecked(s, p.clone());
    match cong.monoid_identity_class() {
        Some(h) if h == fam.h => TheoremResult::pass(id, 2),
        got => {
            let w = Witness::new(s).partition(&p).family(fam).note(
                "identity_class",
                got.map_or_else(|| "none".to_string(), |m| m.to_string()),
            );
            TheoremResult::fail(id, 2, w, "H is not the identity class of the quotient")
        }
    }
}

/// A monoid congruence is rebuilt exactly from the family of all its
/// classes anchored to the identity class.
pub fn check_theorem3_converse(p: &Congruence<'_>) -> TheoremResult {
    let id = TheoremId::Theorem3Converse;
    if !p.semigroup().is_commutative() {
        return TheoremResult::not_applicable(id, "semigroup is not commutative");
    }
    let Some(h) = p.monoid_identity_class() else {
        return TheoremResult::not_applicable(id, "not a monoid congruence");
    };
    theorem3_converse_raw(p, h)
}

fn theorem3_converse_raw(p: &Congruence<'_>, h: SubsetMask) -> TheoremResult {
    let id = TheoremId::Theorem3Converse;
    let s = p.semigroup();
    let classes = p.partition().class_masks();
    let meet = classes
        .iter()
        .fold(SubsetMask::universe(s.order()), |acc, &c| acc.intersection(separator(s, c)));
    if meet != h {
        let w = Witness::new(s).partition(p.partition()).subset(h).note("intersection", meet);
        return TheoremResult::fail(
            id,
            3,
            w,
            "separators of the classes do not intersect to the identity class",
        );
    }
    let fam = match validate_family(s, h, &classes) {
        Ok(fam) => fam,
        Err(e) => {
            let w = Witness::new(s).partition(p.partition()).subset(h).note("error", e);
            return TheoremResult::fail(id, 3, w, "class family does not validate");
        }
    };
    let rebuilt = family_partition(s, &fam).expect("family was validated");
    if rebuilt != *p.partition() {
        let w = Witness::new(s)
            .partition(p.partition())
            .family(&fam)
            .note("reconstruction", &rebuilt);
        return TheoremResult::fail(id, 3, w, "reconstructed congruence differs");
    }
    TheoremResult::pass(id, 3)
}

/// The refinement sandwich around a monoid congruence with identity
/// class H: maximal-family congruence ⊆ p ⊆ fingerprint congruence,
/// with Sep H = H up front.
pub fn check_theorem4(
    p: &Congruence<'_>,
    subset_cap: usize,
) -> Result<TheoremResult, FamilyError> {
    let id = TheoremId::Theorem4;
    if !p.semigroup().is_commutative() {
        return Ok(TheoremResult::not_applicable(id, "semigroup is not commutative"));
    }
    let Some(h) = p.monoid_identity_class() else {
        return Ok(TheoremResult::not_applicable(id, "not a monoid congruence"));
    };
    theorem4_raw(p, h, subset_cap)
}

fn theorem4_raw(
    p: &Congruence<'_>,
    h: SubsetMask,
    subset_cap: usize,
) -> Result<TheoremResult, FamilyError> {
    let id = TheoremId::Theorem4;
    let s = p.semigroup();
    let sep_h = separator(s, h);
    if sep_h != h {
        let w = Witness::new(s).partition(p.partition()).subset(h).note("separator", sep_h);
        return Ok(TheoremResult::fail(id, 4, w, "identity class is not fixed by Sep"));
    }
    let fam = match maximal_family(s, h, subset_cap) {
        Ok(fam) => fam,
        Err(e @ FamilyError::CapExceeded { .. }) => return Err(e),
        Err(e) => {
            let w = Witness::new(s).partition(p.partition()).subset(h).note("error", e);
            return Ok(TheoremResult::fail(id, 4, w, "maximal family does not validate"));
        }
    };
    let lower = family_partition(s, &fam).expect("family was validated");
    if !lower.refines(p.partition()) {
        let w = Witness::new(s).partition(p.partition()).family(&fam).note("lower", &lower);
        return Ok(TheoremResult::fail(
            id,
            4,
            w,
            "maximal-family congruence does not refine the congruence",
        ));
    }
    let upper = fingerprint_partition(s, h);
    if !p.partition().refines(&upper) {
        let w = Witness::new(s).partition(p.partition()).subset(h).note("upper", &upper);
        return Ok(TheoremResult::fail(
            id,
            4,
            w,
            "congruence does not refine the fingerprint congruence of H",
        ));
    }
    Ok(TheoremResult::pass(id, 4))
}

/// A non-universal monoid congruence exists iff some proper nonempty
/// subset has a nonempty separator; each such subset realizes its
/// separator as a quotient identity class under all three readings.
pub fn check_corollary5(
    s: &Semigroup,
    congruence_cap: usize,
) -> Result<TheoremResult, CongruenceError> {
    if !s.is_commutative() {
        return Ok(TheoremResult::not_applicable(
            TheoremId::Corollary5,
            "semigroup is not commutative",
        ));
    }
    corollary5_raw(s, congruence_cap)
}

fn corollary5_raw(s: &Semigroup, congruence_cap: usize) -> Result<TheoremResult, CongruenceError> {
    let id = TheoremId::Corollary5;
    let congruences = enumerate_congruences(s, congruence_cap)?;
    let lhs = congruences
        .iter()
        .any(|c| !c.partition().is_universal() && c.monoid_identity_class().is_some());
    let witnesses: Vec<SubsetMask> = SubsetMask::all(s.order())
        .filter(|&a| !a.is_empty() && !a.is_universe() && !separator(s, a).is_empty())
        .collect();
    let rhs = !witnesses.is_empty();
    let mut checks = 1;
    if lhs != rhs {
        let w = Witness::new(s).note("lhs", lhs).note("rhs", rhs);
        return Ok(TheoremResult::fail(
            id,
            checks,
            w,
            "existence of a non-universal monoid congruence and of a separating subset disagree",
        ));
    }
    let mut diverging = 0usize;
    for &a in &witnesses {
        let sep = separator(s, a);
        for (reading, subset) in [
            ("subset", a),
            ("complement", a.complement()),
            ("separator", sep),
        ] {
            checks += 1;
            let got = fingerprint_congruence(s, subset).monoid_identity_class();
            if got != Some(sep) {
                let w = Witness::new(s)
                    .subset(a)
                    .note("reading", reading)
                    .note("separator", sep)
                    .note(
                        "identity_class",
                        got.map_or_else(|| "none".to_string(), |m| m.to_string()),
                    );
                return Ok(TheoremResult::fail(
                    id,
                    checks,
                    w,
                    "separator is not the identity class of the quotient",
                ));
            }
        }
        if fingerprint_partition(s, a) != fingerprint_partition(s, sep) {
            diverging += 1;
        }
    }
    Ok(TheoremResult::pass_with(
        id,
        checks,
        format!(
            "lhs={lhs} rhs={rhs}; {} separating subsets, {} where the subset and separator readings differ",
            witnesses.len(),
            diverging
        ),
    ))
}

/// Which claim numbers to run, as a small bit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremSet(u8);

impl TheoremSet {
    pub fn all() -> TheoremSet {
        TheoremSet(0b11111)
    }

    pub fn from_numbers(numbers: &[u8]) -> Result<TheoremSet, TheoremSetError> {
        let mut bits = 0u8;
        for &k in numbers {
            if !(1..=5).contains(&k) {
                return Err(TheoremSetError { found: k });
            }
            bits |= 1 << (k - 1);
        }
        Ok(TheoremSet(bits))
    }

    pub fn contains(self, number: u8) -> bool {
        (1..=5).contains(&number) && self.0 >> (number - 1) & 1 == 1
    }

    pub fn numbers(self) -> Vec<u8> {
        (1..=5).filter(|&k| self.contains(k)).collect()
    }
}

impl Default for TheoremSet {
    fn default() -> Self {
        TheoremSet::all()
    }
}

impl core::fmt::Display for TheoremSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, k) in self.numbers().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl core::str::FromStr for TheoremSet {
    type Err = TheoremSetError;

    fn from_str(text: &str) -> Result<Self, TheoremSetError> {
        let numbers: Vec<u8> = text
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| TheoremSetError { found: 0 }))
            .collect::<Result<_, _>>()?;
        TheoremSet::from_numbers(&numbers)
    }
}

/// A claim selector outside 1 through 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("theorem selection must be a comma-separated list of numbers 1-5 (got {found})")]
pub struct TheoremSetError {
    found: u8,
}

/// Knobs for [`verify_all`] and [`sweep_corpus`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub theorems: TheoremSet,
    /// Check claim 1 over all 2^k class selections instead of the
    /// boundary-plus-random strategy.
    pub exhaustive_selections: bool,
    /// Random selections per congruence in the default strategy.
    pub random_selections: usize,
    pub seed: u64,
    /// Force claims 3 through 5 on non-commutative input, recording
    /// violations as candidates.
    pub hunt: bool,
    pub congruence_cap: usize,
    pub subset_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            theorems: TheoremSet::all(),
            exhaustive_selections: false,
            random_selections: 4,
            seed: 0,
            hunt: false,
            congruence_cap: caps::CONGRUENCE_ORDER,
            subset_cap: caps::SUBSET_ORDER,
        }
    }
}

/// All checks over one semigroup, merged per theorem id.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SemigroupReport {
    /// Position in the corpus; 0 for a standalone run.
    pub index: usize,
    /// Cayley file text of the semigroup.
    pub table: String,
    pub order: usize,
    pub commutative: bool,
    pub congruences: usize,
    pub monoid_congruences: usize,
    /// One merged entry per id, in [`TheoremId::ALL`] order.
    pub results: Vec<TheoremResult>,
}

impl SemigroupReport {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.status == CheckStatus::Fail).count()
    }

    pub fn candidates(&self) -> usize {
        self.results.iter().filter(|r| r.status == CheckStatus::Candidate).count()
    }

    pub fn checks(&self) -> usize {
        self.results.iter().map(|r| r.checks).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Aggregate counts over every merged result in a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Totals {
    pub semigroups: usize,
    pub checks: usize,
    pub passes: usize,
    pub failures: usize,
    pub not_applicable: usize,
    pub candidates: usize,
}

/// The sweep output: totals plus one report per corpus member.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerificationReport {
    pub totals: Totals,
    pub reports: Vec<SemigroupReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.totals.failures == 0
    }
}

/// A sweep could not even configure its checks.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

fn merge(theorem: TheoremId, parts: Vec<TheoremResult>) -> TheoremResult {
    let status = parts
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(CheckStatus::NotApplicable);
    let checks = parts.iter().map(|r| r.checks).sum();
    let chosen = parts.into_iter().find(|r| r.status == status);
    TheoremResult {
        theorem,
        status,
        checks,
        witness: chosen.as_ref().and_then(|r| r.witness.clone()),
        detail: chosen.and_then(|r| r.detail),
    }
}

/// The class selections claim 1 is checked against: either all 2^k of
/// them, or the boundary cases (empty, full, singletons) plus seeded
/// random draws.
fn selections(
    k: usize,
    options: &VerifyOptions,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Vec<SubsetMask> {
    if options.exhaustive_selections {
        return SubsetMask::all(k).collect();
    }
    let mut picks = BTreeSet::new();
    picks.insert(SubsetMask::empty(k));
    picks.insert(SubsetMask::universe(k));
    for i in 0..k {
        picks.insert(SubsetMask::singleton(k, i));
    }
    for _ in 0..options.random_selections {
        let bits = rng.next_u64() & SubsetMask::universe(k).bits();
        picks.insert(SubsetMask::from_bits(k, bits));
    }
    picks.into_iter().collect()
}

/// Runs every selected check over one semigroup. The caps in `options`
/// guard the congruence and subset scans; randomized pieces reseed from
/// `options.seed`, so equal inputs give equal reports.
pub fn verify_all(s: &Semigroup, options: &VerifyOptions) -> Result<SemigroupReport, VerifyError> {
    let congruences = enumerate_congruences(s, options.congruence_cap)?;
    let commutative = s.is_commutative();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(options.seed);
    let monoid: Vec<(&Congruence<'_>, SubsetMask)> = congruences
        .iter()
        .filter_map(|c| c.monoid_identity_class().map(|h| (c, h)))
        .collect();
    let na_non_commutative = |id| TheoremResult::not_applicable(id, "semigroup is not commutative");
    let not_selected = |id| TheoremResult::not_applicable(id, "not selected");
    let mut results = Vec::with_capacity(TheoremId::ALL.len());

    if options.theorems.contains(1) {
        let mut parts = Vec::new();
        for c in &congruences {
            for sel in selections(c.partition().num_classes(), options, &mut rng) {
                parts.push(check_theorem1(c, &sel.elements())?);
            }
        }
        results.push(merge(TheoremId::Theorem1, parts));
    } else {
        results.push(not_selected(TheoremId::Theorem1));
    }

    // Families anchored to each distinct monoid-congruence identity
    // class feed claims 2 and 3-forward. A class whose maximal family
    // fails validation signals Sep H ≠ H; that only arises off the
    // commutative happy path and is claim 4's business to report.
    let identity_classes: BTreeSet<SubsetMask> = monoid.iter().map(|&(_, h)| h).collect();
    let mut families = Vec::new();
    if options.theorems.contains(2) || options.theorems.contains(3) {
        for &h in &identity_classes {
            match maximal_family(s, h, options.subset_cap) {
                Ok(fam) => families.push(fam),
                Err(e @ FamilyError::CapExceeded { .. }) => return Err(e.into()),
                Err(_) => {}
            }
        }
    }

    if options.theorems.contains(2) {
        if families.is_empty() {
            results.push(TheoremResult::not_applicable(
                TheoremId::Theorem2,
                "no validated maximal families",
            ));
        } else {
            let parts = families
                .iter()
                .map(|fam| check_theorem2(s, fam).expect("family was validated"))
                .collect();
            results.push(merge(TheoremId::Theorem2, parts));
        }
    } else {
        results.push(not_selected(TheoremId::Theorem2));
    }

    if options.theorems.contains(3) {
        if !commutative && !options.hunt {
            results.push(na_non_commutative(TheoremId::Theorem3Forward));
            results.push(na_non_commutative(TheoremId::Theorem3Converse));
        } else {
            if families.is_empty() {
                results.push(TheoremResult::not_applicable(
                    TheoremId::Theorem3Forward,
                    "no validated maximal families",
                ));
            } else {
                let parts = families
                    .iter()
                    .map(|fam| theorem3_forward_raw(s, fam).candidate_unless(commutative))
                    .collect();
                results.push(merge(TheoremId::Theorem3Forward, parts));
            }
            let parts = monoid
                .iter()
                .map(|&(c, h)| theorem3_converse_raw(c, h).candidate_unless(commutative))
                .collect();
            results.push(merge(TheoremId::Theorem3Converse, parts));
        }
    } else {
        results.push(not_selected(TheoremId::Theorem3Forward));
        results.push(not_selected(TheoremId::Theorem3Converse));
    }

    if options.theorems.contains(4) {
        if !commutative && !options.hunt {
            results.push(na_non_commutative(TheoremId::Theorem4));
        } else {
            let mut parts = Vec::new();
            for &(c, h) in &monoid {
                parts.push(theorem4_raw(c, h, options.subset_cap)?.candidate_unless(commutative));
            }
            results.push(merge(TheoremId::Theorem4, parts));
        }
    } else {
        results.push(not_selected(TheoremId::Theorem4));
    }

    if options.theorems.contains(5) {
        if !commutative && !options.hunt {
            results.push(na_non_commutative(TheoremId::Corollary5));
        } else {
            results.push(
                corollary5_raw(s, options.congruence_cap)?.candidate_unless(commutative),
            );
        }
    } else {
        results.push(not_selected(TheoremId::Corollary5));
    }

    Ok(SemigroupReport {
        index: 0,
        table: s.to_cayley_text(),
        order: s.order(),
        commutative,
        congruences: congruences.len(),
        monoid_congruences: monoid.len(),
        results,
    })
}

impl TheoremResult {
    fn candidate_unless(self, commutative: bool) -> TheoremResult {
        if commutative {
            self
        } else {
            self.candidate()
        }
    }
}

/// Folds per-semigroup reports into a full report with totals. Order
/// is preserved; indexes are rewritten to corpus positions.
pub fn aggregate(reports: Vec<SemigroupReport>) -> VerificationReport {
    let mut totals = Totals { semigroups: reports.len(), ..Totals::default() };
    let mut reports = reports;
    for (i, report) in reports.iter_mut().enumerate() {
        report.index = i;
        for r in &report.results {
            totals.checks += r.checks;
            match r.status {
                CheckStatus::Pass => totals.passes += 1,
                CheckStatus::Fail => totals.failures += 1,
                CheckStatus::NotApplicable => totals.not_applicable += 1,
                CheckStatus::Candidate => totals.candidates += 1,
            }
        }
    }
    VerificationReport { totals, reports }
}

/// [`verify_all`] over a corpus in order. Failures are data in the
/// report, not errors; only cap violations abort.
pub fn sweep_corpus(
    corpus: &[Semigroup],
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let mut reports = Vec::with_capacity(corpus.len());
    for s in corpus {
        reports.push(verify_all(s, options)?);
    }
    Ok(aggregate(reports))
}

/// Re-runs the single check a failure witness came from. `None` when
/// there is no witness or it does not reconstruct; otherwise whether
/// the violation reproduced. Candidate witnesses re-run the forced
/// check the way hunt mode does.
pub fn replay(result: &TheoremResult) -> Option<bool> {
    let w = result.witness.as_ref()?;
    let forced = match result.status {
        CheckStatus::Fail => false,
        CheckStatus::Candidate => true,
        _ => return None,
    };
    let s = Semigroup::parse(&w.table).ok()?;
    let n = s.order();
    let partition = || Partition::parse(w.partition.as_ref()?, n).ok();
    let family = || {
        let h = SubsetMask::parse(w.family_h.as_ref()?, n).ok()?;
        let members: Vec<SubsetMask> = w
            .family_members
            .iter()
            .map(|m| SubsetMask::parse(m, n).ok())
            .collect::<Option<_>>()?;
        let mut fam = Family::unvalidated(h, &members);
        fam.validated = true;
        Some(fam)
    };
    let rerun = match result.theorem {
        TheoremId::Theorem1 => {
            let c = Congruence::new_unchecked(&s, partition()?);
            let sel = parse_ids(w.selection.as_ref()?)?;
            check_theorem1(&c, &sel).ok()?
        }
        TheoremId::Theorem2 => check_theorem2(&s, &family()?).ok()?,
        TheoremId::Theorem3Forward => {
            let fam = family()?;
            if forced {
                theorem3_forward_raw(&s, &fam)
            } else {
                check_theorem3_forward(&s, &fam).ok()?
            }
        }
        TheoremId::Theorem3Converse => {
            let c = Congruence::new_unchecked(&s, partition()?);
            if forced {
                theorem3_converse_raw(&c, c.monoid_identity_class()?)
            } else {
                check_theorem3_converse(&c)
            }
        }
        TheoremId::Theorem4 => {
            let c = Congruence::new_unchecked(&s, partition()?);
            if forced {
                theorem4_raw(&c, c.monoid_identity_class()?, caps::SUBSET_ORDER).ok()?
            } else {
                check_theorem4(&c, caps::SUBSET_ORDER).ok()?
            }
        }
        TheoremId::Corollary5 => {
            if forced {
                corollary5_raw(&s, caps::CONGRUENCE_ORDER).ok()?
            } else {
                check_corollary5(&s, caps::CONGRUENCE_ORDER).ok()?
            }
        }
    };
    Some(rerun.status == CheckStatus::Fail)
}
