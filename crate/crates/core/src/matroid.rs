//! The matroid type: a ground set `{0, .., n-1}` plus a rank oracle over its
//! finite subsets.
//!
//! A [`Matroid`] is a cheap handle. Cloning shares the oracle and the rank
//! memo, which is a pure cache: the oracle is deterministic, so racing inserts
//! always store the same value.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, RwLock};

use crate::error::{MatroidError, Result};
use crate::set::{Element, ElementSet, MAX_ELEMENTS};

/// A rank function on the finite subsets of `{0, .., ground_size()-1}`.
///
/// Implementations must be pure: the same set always yields the same rank.
pub trait RankOracle: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Callers guarantee `set ⊆ {0, .., ground_size()-1}`.
    fn rank(&self, set: ElementSet) -> usize;
}

/// Bounds on the ground-set size for operations that enumerate all subsets.
/// Operations above a bound refuse with [`MatroidError::TooLarge`]; nothing
/// falls back to sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Axiom validation, closure by intersection, coloring searches.
    pub exhaustive: usize,
    /// Circuit enumeration and everything built on the circuit list.
    pub circuits: usize,
    /// Ground-set size for list chromatic number enumeration.
    pub list_coloring: usize,
    /// Largest list size enumerated by the list chromatic number search.
    pub list_kmax: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive: 16,
            circuits: 12,
            list_coloring: 5,
            list_kmax: 4,
        }
    }
}

impl Limits {
    /// Overrides every ground-set bound at once (the CLI's `--max-n`).
    pub fn with_max_n(self, n: usize) -> Self {
        Limits {
            exhaustive: n,
            circuits: n,
            list_coloring: n,
            ..self
        }
    }

    pub(crate) fn check(&self, operation: &'static str, n: usize, bound: usize) -> Result<()> {
        if n > bound {
            Err(MatroidError::TooLarge {
                operation,
                n,
                bound,
            })
        } else {
            Ok(())
        }
    }
}

const DENSE_MEMO_MAX: usize = 16;
const UNSET: u32 = u32::MAX;

enum Memo {
    Dense(Box<[AtomicU32]>),
    Sparse(RwLock<HashMap<ElementSet, u32>>),
}

impl Memo {
    fn new(n: usize) -> Self {
        if n <= DENSE_MEMO_MAX {
            Memo::Dense((0..1usize << n).map(|_| AtomicU32::new(UNSET)).collect())
        } else {
            Memo::Sparse(RwLock::new(HashMap::new()))
        }
    }

    fn get_or(&self, set: ElementSet, eval: impl FnOnce() -> usize) -> usize {
        match self {
            Memo::Dense(slots) => {
                let slot = &slots[set.bits() as usize];
                let v = slot.load(Ordering::Relaxed);
                if v != UNSET {
                    return v as usize;
                }
                let r = eval();
                slot.store(r as u32, Ordering::Relaxed);
                r
            }
            Memo::Sparse(map) => {
                if let Some(&v) = map.read().expect("rank memo poisoned").get(&set) {
                    return v as usize;
                }
                let r = eval();
                map.write()
                    .expect("rank memo poisoned")
                    .insert(set, r as u32);
                r
            }
        }
    }
}

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    oracle: Arc<dyn RankOracle>,
    memo: Arc<Memo>,
    limits: Limits,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("limits", &self.limits)
            .finish_non_exhaustive()
    }
}

/// Outcome of an exhaustive property check: pass, or the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `r(∅) = 0`
    Normalization,
    /// `A ⊆ B ⇒ r(A) ≤ r(B)`
    Monotonicity,
    /// `r(A) ≤ |A|`
    Subcardinality,
    /// `r(A) + r(B) ≥ r(A∩B) + r(A∪B)`
    Submodularity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Normalization => "normalization",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Subcardinality => "subcardinality",
            Axiom::Submodularity => "submodularity",
        })
    }
}

/// The first violated axiom together with the two sets that witness it.
/// Single-set axioms repeat the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: (ElementSet, ElementSet),
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on ({}, {}): {}",
            self.axiom, self.witness.0, self.witness.1, self.detail
        )
    }
}

/// A minimal dependent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit(ElementSet);

impl Circuit {
    /// Wraps a set already known to be a circuit.
    pub fn new_unchecked(members: ElementSet) -> Self {
        Circuit(members)
    }

    pub fn members(self) -> ElementSet {
        self.0
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Witness that circuit elimination failed for `(c1, c2, e)` and, for the
/// strong form, the element `through` that no eliminated circuit contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationFailure {
    pub c1: Circuit,
    pub c2: Circuit,
    pub e: Element,
    pub through: Option<Element>,
}

impl fmt::Display for EliminationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no circuit inside ({} ∪ {}) - {}",
            self.c1, self.c2, self.e
        )?;
        if let Some(t) = self.through {
            write!(f, " containing {t}")?;
        }
        Ok(())
    }
}

impl Matroid {
    pub fn new(oracle: impl RankOracle + 'static) -> Self {
        Self::from_arc(Arc::new(oracle))
    }

    pub fn from_arc(oracle: Arc<dyn RankOracle>) -> Self {
        let n = oracle.ground_size();
        assert!(
            n <= MAX_ELEMENTS,
            "ground set of {n} elements exceeds {MAX_ELEMENTS}"
        );
        Matroid {
            n,
            oracle,
            memo: Arc::new(Memo::new(n)),
            limits: Limits::default(),
        }
    }

    #[must_use]
    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn check_subset(&self, a: ElementSet) -> Result<()> {
        a.check_within(self.n)
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(MatroidError::ElementOutOfRange {
                element: x,
                n: self.n,
            })
        }
    }

    pub fn rank(&self, a: ElementSet) -> Result<usize> {
        self.check_subset(a)?;
        Ok(self.r(a))
    }

    /// Memoized rank for a set already known to lie in the ground set.
    pub(crate) fn r(&self, a: ElementSet) -> usize {
        debug_assert!(a.check_within(self.n).is_ok());
        self.memo.get_or(a, || self.oracle.rank(a))
    }

    pub fn is_independent(&self, x: ElementSet) -> Result<bool> {
        self.check_subset(x)?;
        Ok(self.indep(x))
    }

    pub(crate) fn indep(&self, x: ElementSet) -> bool {
        self.r(x) == x.len()
    }

    /// Ranks of all `2^n` subsets, indexed by mask.
    pub fn rank_table(&self, operation: &'static str, bound: usize) -> Result<Vec<u32>> {
        self.limits.check(operation, self.n, bound)?;
        Ok(ElementSet::all(self.n).map(|s| self.r(s) as u32).collect())
    }

    pub(crate) fn independence_table(
        &self,
        operation: &'static str,
        bound: usize,
    ) -> Result<Vec<bool>> {
        self.limits.check(operation, self.n, bound)?;
        Ok(ElementSet::all(self.n).map(|s| self.indep(s)).collect())
    }

    /// Elements `x` with `r({x}) = 0`.
    pub fn loops(&self) -> ElementSet {
        (0..self.n)
            .filter(|&x| self.r(ElementSet::singleton(x)) == 0)
            .collect()
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops().is_empty()
    }

    /// Checks the four rank axioms exhaustively and reports the first
    /// violated one, in the order normalization, monotonicity,
    /// subcardinality, submodularity.
    ///
    /// Monotonicity and submodularity are checked in their local forms
    /// (`r(A) ≤ r(A+x)` and `r(A+x) + r(A+y) ≥ r(A) + r(A+x+y)`), which are
    /// equivalent to the global ones for set functions on a finite lattice.
    /// Sets are scanned in canonical order so the witness is minimal.
    pub fn validate_axioms(&self) -> Result<Verdict<AxiomViolation>> {
        let table = self.rank_table("axiom validation", self.limits.exhaustive)?;
        Ok(validate_rank_table(self.n, &table))
    }

    /// All circuits, sorted canonically.
    pub fn circuits(&self) -> Result<Vec<Circuit>> {
        let indep = self.independence_table("circuit enumeration", self.limits.circuits)?;
        let mut out: Vec<Circuit> = ElementSet::all(self.n)
            .filter(|s| !indep[s.bits() as usize])
            .filter(|s| s.iter().all(|x| indep[s.without(x).bits() as usize]))
            .map(Circuit)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Checks weak and strong circuit elimination for every ordered pair of
    /// distinct circuits.
    pub fn check_circuit_elimination(&self) -> Result<Verdict<EliminationFailure>> {
        let circuits = self.circuits()?;
        for &c1 in &circuits {
            for &c2 in &circuits {
                if c1 == c2 {
                    continue;
                }
                let common = c1.members() & c2.members();
                for e in common {
                    if eliminate(&circuits, c1, c2, e, None).is_none() {
                        return Ok(Verdict::Fail(EliminationFailure {
                            c1,
                            c2,
                            e,
                            through: None,
                        }));
                    }
                    for e1 in c1.members() - c2.members() {
                        if eliminate(&circuits, c1, c2, e, Some(e1)).is_none() {
                            return Ok(Verdict::Fail(EliminationFailure {
                                c1,
                                c2,
                                e,
                                through: Some(e1),
                            }));
                        }
                    }
                }
            }
        }
        Ok(Verdict::Pass)
    }
}

/// First circuit (canonical order) inside `(c1 ∪ c2) - e`, optionally required
/// to contain `through`.
pub fn eliminate(
    circuits: &[Circuit],
    c1: Circuit,
    c2: Circuit,
    e: Element,
    through: Option<Element>,
) -> Option<Circuit> {
    let room = (c1.members() | c2.members()).without(e);
    circuits
        .iter()
        .copied()
        .find(|c| c.members().is_subset(room) && through.is_none_or(|t| c.members().contains(t)))
}

pub(crate) fn validate_rank_table(n: usize, table: &[u32]) -> Verdict<AxiomViolation> {
    let r = |s: ElementSet| table[s.bits() as usize] as usize;
    let order = ElementSet::all_canonical(n);

    if r(ElementSet::EMPTY) != 0 {
        return Verdict::Fail(AxiomViolation {
            axiom: Axiom::Normalization,
            witness: (ElementSet::EMPTY, ElementSet::EMPTY),
            detail: format!("r({{}}) = {}", r(ElementSet::EMPTY)),
        });
    }
    for &a in &order {
        for x in ElementSet::full(n) - a {
            let b = a.with(x);
            if r(a) > r(b) {
                return Verdict::Fail(AxiomViolation {
                    axiom: Axiom::Monotonicity,
                    witness: (a, b),
                    detail: format!("r({a}) = {} > r({b}) = {}", r(a), r(b)),
                });
            }
        }
    }
    for &a in &order {
        if r(a) > a.len() {
            return Verdict::Fail(AxiomViolation {
                axiom: Axiom::Subcardinality,
                witness: (a, a),
                detail: format!("r({a}) = {} > |{a}| = {}", r(a), a.len()),
            });
        }
    }
    for &a in &order {
        let outside = ElementSet::full(n) - a;
        for x in outside {
            for y in outside {
                if y <= x {
                    continue;
                }
                let (ax, ay, axy) = (a.with(x), a.with(y), a.with(x).with(y));
                if r(ax) + r(ay) < r(a) + r(axy) {
                    return Verdict::Fail(AxiomViolation {
                        axiom: Axiom::Submodularity,
                        witness: (ax, ay),
                        detail: format!(
                            "r({ax}) + r({ay}) = {} < r({a}) + r({axy}) = {}",
                            r(ax) + r(ay),
                            r(a) + r(axy)
                        ),
                    });
                }
            }
        }
    }
    Verdict::Pass
}
