//! The recursive tree families `Gamma_k(lambda)` and `Gamma2_k(lambda)`.
//!
//! Membership is decided by searching the major vertices of a tree for a
//! decomposition `T - w` matching one of the definitional clauses, recursing
//! into the single non-path component. Results for whole isomorphism classes
//! are memoized on the canonical code.

mod generate;

pub use generate::{generate, generate_with_cap};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::poly::LambdaSpec;
use crate::tree::{Component, Tree};

/// Reading of `Gamma2_0(lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gamma2Mode {
    /// Paths one vertex shorter than a `Gamma_0` path: `n = M - 2 (mod M)`.
    Strict,
    /// Paths that do not have `lambda` as an eigenvalue: `M` does not divide `n + 1`.
    #[default]
    Broad,
    /// `Broad`, plus two repairs to the recursive clauses: a `Gamma2_1` tree
    /// made of three `Gamma2_0` legs must itself have `lambda` as an
    /// eigenvalue, and the non-pendant clause accepts a `Gamma_i` component of
    /// any level as long as the whole tree keeps `gamma(T) = j`.
    Corrected,
}

impl Gamma2Mode {
    pub const ALL: [Gamma2Mode; 3] = [Gamma2Mode::Broad, Gamma2Mode::Strict, Gamma2Mode::Corrected];

    pub fn as_str(self) -> &'static str {
        match self {
            Gamma2Mode::Strict => "strict",
            Gamma2Mode::Broad => "broad",
            Gamma2Mode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Gamma2Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gamma2Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Gamma2Mode::Strict),
            "broad" => Ok(Gamma2Mode::Broad),
            "corrected" => Ok(Gamma2Mode::Corrected),
            other => Err(format!("unknown mode {other:?} (expected strict, broad or corrected)")),
        }
    }
}

/// Which of the two recursive families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Gamma,
    Gamma2,
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gamma" => Ok(FamilyKind::Gamma),
            "gamma2" => Ok(FamilyKind::Gamma2),
            other => Err(format!("unknown family {other:?} (expected gamma or gamma2)")),
        }
    }
}

/// A family with its level, or no family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gamma(usize),
    Gamma2(usize),
    None,
}

impl Family {
    pub fn level(self) -> Option<usize> {
        match self {
            Family::Gamma(k) | Family::Gamma2(k) => Some(k),
            Family::None => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gamma(k) => write!(f, "GAMMA({k})"),
            Family::Gamma2(k) => write!(f, "GAMMA2({k})"),
            Family::None => f.write_str("NONE"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "NONE" {
            return Ok(Family::None);
        }
        let level = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
        };
        if let Some(k) = level("GAMMA2(") {
            Ok(Family::Gamma2(k))
        } else if let Some(k) = level("GAMMA(") {
            Ok(Family::Gamma(k))
        } else {
            Err(format!("not a family tag: {s:?}"))
        }
    }
}

/// Definitional clause used at one step of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `Gamma_j`: one `Gamma_{j-1}` component (none when `j = 1`), the rest `Gamma_0`.
    Gamma,
    /// `Gamma2_1` (1): exactly three `Gamma2_0` components.
    ThreeGamma2Zero,
    /// `Gamma2_j` (1), or `Gamma2_1` (2): one `Gamma2_{j-1}` component, the rest `Gamma_0`.
    Gamma2Descent,
    /// `Gamma2_j` (2): one `Gamma_{j-1}` component attached at a non-pendant vertex.
    NonPendantGamma,
    /// `Gamma2_j` (3): one `Gamma_{j-1}`, one `Gamma2_0`, the rest `Gamma_0`.
    GammaPlusGamma2Zero,
}

/// What one component of `T - w` was certified as.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    /// Neighbor of the deleted vertex inside this component, in original ids.
    pub attach: usize,
    pub size: usize,
    pub attach_is_pendant: bool,
    /// `Gamma(0)` for `Gamma_0` paths, `Gamma2(0)` for `Gamma2_0` paths.
    pub role: Family,
}

/// One deletion in a witness chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    /// Deleted major vertex, in original ids.
    pub vertex: usize,
    pub clause: Clause,
    /// Components in ascending order of their attach vertex.
    pub components: Vec<ComponentRecord>,
}

impl WitnessStep {
    /// The component the chain descends into next, if any.
    pub fn distinguished(&self) -> Option<&ComponentRecord> {
        self.components
            .iter()
            .find(|c| c.role.level().is_some_and(|k| k > 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyResult {
    pub family: Family,
    pub witness: Vec<WitnessStep>,
}

impl FamilyResult {
    fn none() -> Self {
        FamilyResult {
            family: Family::None,
            witness: Vec::new(),
        }
    }

    /// Re-deletes the recorded vertices from `t` and checks that every step
    /// reproduces its recorded components (attach vertex, size, pendancy).
    pub fn replays_on(&self, t: &Tree) -> bool {
        let mut current = t.clone();
        let mut to_orig: Vec<usize> = (0..t.n()).collect();
        for step in &self.witness {
            let Some(local) = to_orig.iter().position(|&v| v == step.vertex) else {
                return false;
            };
            let Ok(forest) = current.delete_vertex(local) else {
                return false;
            };
            if forest.components.len() != step.components.len() {
                return false;
            }
            let mut next = None;
            for (comp, rec) in forest.components.iter().zip(&step.components) {
                if to_orig[comp.attach_in_parent()] != rec.attach
                    || comp.tree.n() != rec.size
                    || comp.attach_is_pendant() != rec.attach_is_pendant
                {
                    return false;
                }
                if step.distinguished() == Some(rec) {
                    next = Some(comp);
                }
            }
            if let Some(comp) = next {
                to_orig = comp.vertex_map.iter().map(|&v| to_orig[v]).collect();
                current = comp.tree.clone();
            }
        }
        true
    }
}

impl fmt::Display for FamilyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for step in &self.witness {
            write!(f, "\n  delete {} ({:?}):", step.vertex, step.clause)?;
            for c in &step.components {
                let side = if c.attach_is_pendant { "pendant" } else { "inner" };
                write!(f, " [{} via {} {}, n={}]", c.role, side, c.attach, c.size)?;
            }
        }
        Ok(())
    }
}

/// `P_n` with `M | n + 1`: the paths carrying `lambda` (always simply).
pub fn is_gamma0(t: &Tree, lambda: &LambdaSpec) -> bool {
    t.is_path() && (t.n() as u64 + 1).is_multiple_of(lambda.denominator())
}

pub fn is_gamma2_0(t: &Tree, lambda: &LambdaSpec, mode: Gamma2Mode) -> bool {
    if !t.is_path() {
        return false;
    }
    let n = t.n() as u64;
    let m = lambda.denominator();
    match mode {
        Gamma2Mode::Strict => (n + 2).is_multiple_of(m),
        Gamma2Mode::Broad | Gamma2Mode::Corrected => !(n + 1).is_multiple_of(m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct MemoKey {
    code: Vec<u16>,
    lambda: (u64, u64),
    family: FamilyKind,
    mode: Gamma2Mode,
}

/// Family membership with a concurrent memo keyed by isomorphism class.
#[derive(Default)]
pub struct Classifier {
    memo: DashMap<MemoKey, bool>,
}

/// A successful decomposition at one vertex, in local ids of the tree searched.
struct Found {
    vertex: usize,
    clause: Clause,
    roles: Vec<Family>,
    components: Vec<Component>,
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared instance used by the free functions.
    pub fn global() -> &'static Classifier {
        static GLOBAL: OnceLock<Classifier> = OnceLock::new();
        GLOBAL.get_or_init(Classifier::new)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    /// `GAMMA(gamma(t))` if `t` is in `Gamma_k`, else `GAMMA2(gamma(t))` if in
    /// `Gamma2_k`, else `NONE`.
    pub fn classify(&self, t: &Tree, lambda: &LambdaSpec, mode: Gamma2Mode) -> FamilyResult {
        for family in [FamilyKind::Gamma, FamilyKind::Gamma2] {
            if self.is_member(t, lambda, family, mode) {
                let mut witness = Vec::new();
                let ids: Vec<usize> = (0..t.n()).collect();
                self.build_witness(t, &ids, lambda, family, mode, &mut witness);
                let k = t.major_count();
                let family = match family {
                    FamilyKind::Gamma => Family::Gamma(k),
                    FamilyKind::Gamma2 => Family::Gamma2(k),
                };
                return FamilyResult { family, witness };
            }
        }
        FamilyResult::none()
    }

    /// The family tag alone, without building a witness.
    pub fn family(&self, t: &Tree, lambda: &LambdaSpec, mode: Gamma2Mode) -> Family {
        let k = t.major_count();
        if self.is_member(t, lambda, FamilyKind::Gamma, mode) {
            Family::Gamma(k)
        } else if self.is_member(t, lambda, FamilyKind::Gamma2, mode) {
            Family::Gamma2(k)
        } else {
            Family::None
        }
    }

    /// Whether `t` lies in `Gamma_{gamma(t)}` (or `Gamma2_{gamma(t)}`).
    pub fn is_member(&self, t: &Tree, lambda: &LambdaSpec, family: FamilyKind, mode: Gamma2Mode) -> bool {
        if t.is_path() {
            return match family {
                FamilyKind::Gamma => is_gamma0(t, lambda),
                FamilyKind::Gamma2 => is_gamma2_0(t, lambda, mode),
            };
        }
        let key = MemoKey {
            code: t.canonical_code(),
            lambda: lambda.key(),
            family,
            mode: match family {
                FamilyKind::Gamma => Gamma2Mode::Broad,
                FamilyKind::Gamma2 => mode,
            },
        };
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        let member = self.search(t, lambda, family, mode).is_some();
        self.memo.insert(key, member);
        member
    }

    fn build_witness(
        &self,
        t: &Tree,
        ids: &[usize],
        lambda: &LambdaSpec,
        family: FamilyKind,
        mode: Gamma2Mode,
        out: &mut Vec<WitnessStep>,
    ) {
        let Some(found) = self.search(t, lambda, family, mode) else {
            return;
        };
        let components = found
            .components
            .iter()
            .zip(&found.roles)
            .map(|(c, &role)| ComponentRecord {
                attach: ids[c.attach_in_parent()],
                size: c.tree.n(),
                attach_is_pendant: c.attach_is_pendant(),
                role,
            })
            .collect();
        out.push(WitnessStep {
            vertex: ids[found.vertex],
            clause: found.clause,
            components,
        });
        let next = found
            .components
            .iter()
            .zip(&found.roles)
            .find(|(_, role)| role.level().is_some_and(|k| k > 0));
        if let Some((comp, role)) = next {
            let sub_ids: Vec<usize> = comp.vertex_map.iter().map(|&v| ids[v]).collect();
            let sub_family = match role {
                Family::Gamma(_) => FamilyKind::Gamma,
                _ => FamilyKind::Gamma2,
            };
            self.build_witness(&comp.tree, &sub_ids, lambda, sub_family, mode, out);
        }
    }

    /// First major vertex (ascending) at which a clause matches.
    fn search(&self, t: &Tree, lambda: &LambdaSpec, family: FamilyKind, mode: Gamma2Mode) -> Option<Found> {
        let k = t.major_count();
        if k == 0 {
            return None;
        }
        let majors: Vec<usize> = t.major_vertices().collect();
        for w in majors {
            let components = t.delete_vertex(w).expect("major vertex in range").components;
            let matched = match family {
                FamilyKind::Gamma => self.match_gamma(&components, k, lambda),
                FamilyKind::Gamma2 => self.match_gamma2(&components, k, lambda, mode),
            };
            if let Some((clause, roles)) = matched {
                return Some(Found {
                    vertex: w,
                    clause,
                    roles,
                    components,
                });
            }
        }
        None
    }

    fn in_gamma(&self, c: &Component, level: usize, lambda: &LambdaSpec) -> bool {
        c.tree.major_count() == level && self.is_member(&c.tree, lambda, FamilyKind::Gamma, Gamma2Mode::Broad)
    }

    fn in_gamma2(&self, c: &Component, level: usize, lambda: &LambdaSpec, mode: Gamma2Mode) -> bool {
        c.tree.major_count() == level && self.is_member(&c.tree, lambda, FamilyKind::Gamma2, mode)
    }

    fn match_gamma(
        &self,
        comps: &[Component],
        k: usize,
        lambda: &LambdaSpec,
    ) -> Option<(Clause, Vec<Family>)> {
        if !comps.iter().all(Component::attach_is_pendant) {
            return None;
        }
        let roles = self.one_special(comps, k - 1, |c| self.in_gamma(c, k - 1, lambda), lambda)?;
        let roles = roles.into_iter().map(|special| {
            if special { Family::Gamma(k - 1) } else { Family::Gamma(0) }
        });
        Some((Clause::Gamma, roles.collect()))
    }

    fn match_gamma2(
        &self,
        comps: &[Component],
        k: usize,
        lambda: &LambdaSpec,
        mode: Gamma2Mode,
    ) -> Option<(Clause, Vec<Family>)> {
        let all_pendant = comps.iter().all(Component::attach_is_pendant);
        if k == 1 {
            if !all_pendant {
                return None;
            }
            if comps.len() == 3
                && comps.iter().all(|c| is_gamma2_0(&c.tree, lambda, mode))
                && (mode != Gamma2Mode::Corrected || spider_has_eigenvalue(comps, lambda))
            {
                return Some((Clause::ThreeGamma2Zero, vec![Family::Gamma2(0); 3]));
            }
            let special = self.exactly_one(comps, |c| is_gamma2_0(&c.tree, lambda, mode), lambda)?;
            let roles = special.into_iter().map(|s| if s { Family::Gamma2(0) } else { Family::Gamma(0) });
            return Some((Clause::Gamma2Descent, roles.collect()));
        }
        if all_pendant {
            if let Some(special) =
                self.one_special(comps, k - 1, |c| self.in_gamma2(c, k - 1, lambda, mode), lambda)
            {
                let roles = special.into_iter().map(|s| if s { Family::Gamma2(k - 1) } else { Family::Gamma(0) });
                return Some((Clause::Gamma2Descent, roles.collect()));
            }
        }
        // Clause (2): the only non-pendant attachment is into a Gamma_{k-1} member.
        let inner: Vec<usize> = (0..comps.len()).filter(|&i| !comps[i].attach_is_pendant()).collect();
        if let [i] = inner[..] {
            let rest_ok = comps
                .iter()
                .enumerate()
                .all(|(j, c)| j == i || is_gamma0(&c.tree, lambda));
            let level = match mode {
                Gamma2Mode::Corrected => comps[i].tree.major_count(),
                _ => k - 1,
            };
            if rest_ok && self.in_gamma(&comps[i], level, lambda) {
                let roles = (0..comps.len())
                    .map(|j| if j == i { Family::Gamma(level) } else { Family::Gamma(0) })
                    .collect();
                return Some((Clause::NonPendantGamma, roles));
            }
        }
        if !all_pendant {
            return None;
        }
        // Clause (3): one Gamma_{k-1}, one Gamma2_0 path, the rest Gamma_0.
        let big: Vec<usize> = (0..comps.len()).filter(|&i| !comps[i].tree.is_path()).collect();
        let [b] = big[..] else { return None };
        if !self.in_gamma(&comps[b], k - 1, lambda) {
            return None;
        }
        let paths: Vec<&Component> = comps.iter().enumerate().filter(|&(j, _)| j != b).map(|(_, c)| c).collect();
        let special = self.exactly_one(&paths, |c| is_gamma2_0(&c.tree, lambda, mode), lambda)?;
        let mut special = special.into_iter();
        let roles = (0..comps.len())
            .map(|j| {
                if j == b {
                    Family::Gamma(k - 1)
                } else if special.next().expect("one flag per path") {
                    Family::Gamma2(0)
                } else {
                    Family::Gamma(0)
                }
            })
            .collect();
        Some((Clause::GammaPlusGamma2Zero, roles))
    }

    /// For `level >= 1`: exactly one component satisfies `special`, every other
    /// is a `Gamma_0` path. For `level = 0` all components must be `Gamma_0`.
    fn one_special(
        &self,
        comps: &[Component],
        level: usize,
        special: impl Fn(&Component) -> bool,
        lambda: &LambdaSpec,
    ) -> Option<Vec<bool>> {
        if level == 0 {
            return comps
                .iter()
                .all(|c| is_gamma0(&c.tree, lambda))
                .then(|| vec![false; comps.len()]);
        }
        let big: Vec<usize> = (0..comps.len()).filter(|&i| !comps[i].tree.is_path()).collect();
        let [b] = big[..] else { return None };
        let ok = comps
            .iter()
            .enumerate()
            .all(|(j, c)| if j == b { special(c) } else { is_gamma0(&c.tree, lambda) });
        ok.then(|| (0..comps.len()).map(|j| j == b).collect())
    }

    /// Exactly one path satisfies `special`; the others are `Gamma_0`.
    fn exactly_one<C: std::borrow::Borrow<Component>>(
        &self,
        comps: &[C],
        special: impl Fn(&Component) -> bool,
        lambda: &LambdaSpec,
    ) -> Option<Vec<bool>> {
        let flags: Vec<bool> = comps.iter().map(|c| special(c.borrow())).collect();
        if flags.iter().filter(|&&f| f).count() != 1 {
            return None;
        }
        let ok = comps
            .iter()
            .zip(&flags)
            .all(|(c, &f)| f || is_gamma0(&c.borrow().tree, lambda));
        ok.then_some(flags)
    }
}

/// Whether the spider formed by the deleted vertex and three path components
/// has `lambda` as an eigenvalue.
fn spider_has_eigenvalue(comps: &[Component], lambda: &LambdaSpec) -> bool {
    let legs: Vec<usize> = comps.iter().map(|c| c.tree.n()).collect();
    crate::spectrum::multiplicity(&Tree::spider(&legs), lambda) > 0
}

/// [`Classifier::classify`] on the shared memo.
pub fn classify(t: &Tree, lambda: &LambdaSpec, mode: Gamma2Mode) -> FamilyResult {
    Classifier::global().classify(t, lambda, mode)
}

pub fn is_member(t: &Tree, lambda: &LambdaSpec, family: FamilyKind, mode: Gamma2Mode) -> bool {
    Classifier::global().is_member(t, lambda, family, mode)
}
