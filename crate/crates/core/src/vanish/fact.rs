use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hypothesis::Hypothesis;
use super::rules::RuleId;
use crate::error::{Error, Result};

/// A sheaf drawn from the grammar `F(m) | F*(m) | F⊗ω(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SheafExpr {
    F(i64),
    Dual(i64),
    Omega(i64),
}

impl SheafExpr {
    /// The twist `m` with this sheaf isomorphic to `F(m)`, using
    /// `F* ≅ F(−k)` and `ω_X = O(−a)`.
    pub fn canonical_twist(self, a: i64, k: i64) -> i64 {
        match self {
            SheafExpr::F(m) => m,
            SheafExpr::Dual(m) => m - k,
            SheafExpr::Omega(m) => m - a,
        }
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, m) = match *self {
            SheafExpr::F(m) => ("F", m),
            SheafExpr::Dual(m) => ("F*", m),
            SheafExpr::Omega(m) => ("F⊗ω", m),
        };
        if m == 0 {
            f.write_str(base)
        } else {
            write!(f, "{base}({m})")
        }
    }
}

impl FromStr for SheafExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad sheaf expression {s:?}"));
        let (ctor, rest): (fn(i64) -> SheafExpr, &str) = if let Some(r) = s.strip_prefix("F⊗ω") {
            (SheafExpr::Omega, r)
        } else if let Some(r) = s.strip_prefix("F*") {
            (SheafExpr::Dual, r)
        } else if let Some(r) = s.strip_prefix('F') {
            (SheafExpr::F, r)
        } else {
            return Err(bad());
        };
        if rest.is_empty() {
            return Ok(ctor(0));
        }
        let m = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        Ok(ctor(m))
    }
}

impl Serialize for SheafExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SheafExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The cohomology group `Hⁱ(X, expr)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Group {
    pub i: u8,
    pub expr: SheafExpr,
}

impl Group {
    pub fn new(i: u8, expr: SheafExpr) -> Self {
        Group { i, expr }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}({})", self.i, self.expr)
    }
}

/// What is known about the dimension of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Zero,
    DimAtMost(u64),
    DimEquals(u64),
}

impl Status {
    /// `DimEquals(0)` and `DimAtMost(0)` collapse to `Zero`.
    pub fn normalized(self) -> Status {
        match self {
            Status::DimEquals(0) | Status::DimAtMost(0) => Status::Zero,
            s => s,
        }
    }

    /// The admissible dimensions as an inclusive interval.
    fn range(self) -> (u64, u64) {
        match self {
            Status::Zero => (0, 0),
            Status::DimAtMost(n) => (0, n),
            Status::DimEquals(n) => (n, n),
        }
    }

    pub fn compatible(self, other: Status) -> bool {
        let (lo1, hi1) = self.range();
        let (lo2, hi2) = other.range();
        lo1.max(lo2) <= hi1.min(hi2)
    }

    /// `Greater` when `self` pins the dimension down more tightly.
    /// Only meaningful for compatible statuses.
    pub fn strength_cmp(self, other: Status) -> Ordering {
        let (lo1, hi1) = self.range();
        let (lo2, hi2) = other.range();
        (hi2 - lo2).cmp(&(hi1 - lo1)).then(hi2.cmp(&hi1))
    }

    /// True when every dimension allowed by `self` is allowed by `other`.
    pub fn implies(self, other: Status) -> bool {
        let (lo1, hi1) = self.range();
        let (lo2, hi2) = other.range();
        lo2 <= lo1 && hi1 <= hi2
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Zero => f.write_str("= 0"),
            Status::DimAtMost(n) => write!(f, "has dim <= {n}"),
            Status::DimEquals(n) => write!(f, "has dim = {n}"),
        }
    }
}

/// One premise of a derivation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    /// A hypothesis, asserted or derived; see [`FactSet::hypotheses`].
    Assumption(Hypothesis),
    /// Another fact, at (at least) the given status.
    Fact { group: Group, status: Status },
    /// A numerical check that was evaluated and passed.
    Check(String),
    /// A standard result built into the engine.
    Builtin(String),
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Premise::Assumption(h) => write!(f, "[{h}] {}", h.statement()),
            Premise::Fact { group, status } => write!(f, "{group} {status}"),
            Premise::Check(s) => write!(f, "check: {s}"),
            Premise::Builtin(s) => write!(f, "builtin: {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: RuleId,
    pub premises: Vec<Premise>,
}

impl Derivation {
    pub fn new(rule: RuleId, premises: Vec<Premise>) -> Self {
        Derivation { rule, premises }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub group: Group,
    pub status: Status,
    /// Every known derivation reaching `status`, in canonical order.
    pub provenance: BTreeSet<Derivation>,
}

impl Fact {
    pub fn new(group: Group, status: Status, derivation: Derivation) -> Self {
        Fact {
            group,
            status: status.normalized(),
            provenance: BTreeSet::from([derivation]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.status == Status::Zero
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.group, self.status)?;
        let rules: Vec<String> = self.provenance.iter().map(|d| d.rule.to_string()).collect();
        write!(f, "  [{}]", rules.join(", "))
    }
}

/// A dimension relation or qualitative conclusion that is not a single
/// group's status (e.g. `h² − h¹ = c₃/2`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub rule: RuleId,
    pub statement: String,
    #[serde(default)]
    pub asymptotic: bool,
    pub premises: Vec<Premise>,
}

/// How a hypothesis came to hold.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub asserted: bool,
    pub derivations: BTreeSet<Derivation>,
}

impl HypothesisRecord {
    pub fn asserted() -> Self {
        HypothesisRecord {
            asserted: true,
            derivations: BTreeSet::new(),
        }
    }
}

/// The saturated output of the engine: hypotheses with provenance, facts in
/// canonical `(group, status)` order and recorded relations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactSet {
    /// `(a, k)` used to identify isomorphic sheaf expressions.
    pub a: i64,
    pub k: i64,
    pub hypotheses: BTreeMap<Hypothesis, HypothesisRecord>,
    #[serde(with = "fact_list")]
    pub facts: BTreeMap<Group, Fact>,
    pub relations: BTreeSet<Relation>,
}

mod fact_list {
    use super::*;

    pub fn serialize<S: Serializer>(map: &BTreeMap<Group, Fact>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.values())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Group, Fact>, D::Error> {
        let v: Vec<Fact> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|f| (f.group, f)).collect())
    }
}

impl FactSet {
    pub fn new(a: i64, k: i64) -> Self {
        FactSet {
            a,
            k,
            ..Default::default()
        }
    }

    pub fn holds(&self, h: Hypothesis) -> bool {
        self.hypotheses.contains_key(&h)
    }

    pub fn get(&self, group: Group) -> Option<&Fact> {
        self.facts.get(&group)
    }

    /// Status of `group`, or of any isomorphic expression if `group` itself
    /// was never derived (the strongest one wins).
    pub fn status_up_to_iso(&self, group: Group) -> Option<Status> {
        if let Some(f) = self.facts.get(&group) {
            return Some(f.status);
        }
        let target = group.expr.canonical_twist(self.a, self.k);
        self.facts
            .values()
            .filter(|f| f.group.i == group.i && f.group.expr.canonical_twist(self.a, self.k) == target)
            .map(|f| f.status)
            .max_by(|x, y| x.strength_cmp(*y))
    }

    /// True when the fact is known with a status at least as strong as `status`.
    pub fn satisfies(&self, group: Group, status: Status) -> bool {
        self.facts
            .get(&group)
            .is_some_and(|f| f.status.implies(status))
    }

    pub fn is_zero(&self, group: Group) -> bool {
        self.satisfies(group, Status::Zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fact> {
        self.facts.values()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    /// Merge one fact. Returns whether anything changed, or a contradiction
    /// with an existing fact on the same (or an isomorphic) group.
    pub fn insert(&mut self, fact: Fact) -> Result<bool> {
        let target = fact.group.expr.canonical_twist(self.a, self.k);
        if let Some(clash) = self.facts.values().find(|old| {
            old.group.i == fact.group.i
                && old.group.expr.canonical_twist(self.a, self.k) == target
                && !old.status.compatible(fact.status)
        }) {
            return Err(Error::Contradiction {
                first: Box::new(clash.clone()),
                second: Box::new(fact),
            });
        }
        match self.facts.get_mut(&fact.group) {
            None => {
                self.facts.insert(fact.group, fact);
                Ok(true)
            }
            Some(old) => match fact.status.strength_cmp(old.status) {
                Ordering::Greater => {
                    *old = fact;
                    Ok(true)
                }
                Ordering::Less => Ok(false),
                Ordering::Equal => {
                    let before = old.provenance.len();
                    old.provenance.extend(fact.provenance);
                    Ok(old.provenance.len() != before)
                }
            },
        }
    }

    pub fn add_hypothesis(&mut self, h: Hypothesis, derivation: Derivation) -> bool {
        self.hypotheses
            .entry(h)
            .or_default()
            .derivations
            .insert(derivation)
    }

    /// Rule ids that produced facts anywhere in one derivation tree,
    /// following fact premises (hypothesis derivations are not counted).
    pub fn fact_rules_in(&self, derivation: &Derivation) -> BTreeSet<RuleId> {
        let mut out = BTreeSet::from([derivation.rule]);
        for p in &derivation.premises {
            if let Premise::Fact { group, .. } = p {
                if let Some(f) = self.facts.get(group) {
                    if let Some(d) = f.provenance.iter().next() {
                        out.extend(self.fact_rules_in(d));
                    }
                }
            }
        }
        out
    }

    /// Whether `h` would still hold if the assertion `removed` were withdrawn.
    pub fn hypothesis_survives(&self, h: Hypothesis, removed: Hypothesis) -> bool {
        self.hyp_survives(h, removed, &mut BTreeSet::new())
    }

    /// Whether `fact` keeps at least one derivation independent of `removed`.
    pub fn fact_survives(&self, fact: &Fact, removed: Hypothesis) -> bool {
        fact.provenance
            .iter()
            .any(|d| self.derivation_survives(d, removed, &mut BTreeSet::new()))
    }

    fn hyp_survives(&self, h: Hypothesis, removed: Hypothesis, seen: &mut BTreeSet<String>) -> bool {
        let Some(rec) = self.hypotheses.get(&h) else { return false };
        if rec.asserted && h != removed {
            return true;
        }
        let key = format!("h:{h}");
        if !seen.insert(key.clone()) {
            return false;
        }
        let ok = rec
            .derivations
            .iter()
            .any(|d| self.derivation_survives(d, removed, seen));
        seen.remove(&key);
        ok
    }

    fn derivation_survives(&self, d: &Derivation, removed: Hypothesis, seen: &mut BTreeSet<String>) -> bool {
        d.premises.iter().all(|p| match p {
            Premise::Assumption(h) => self.hyp_survives(*h, removed, seen),
            Premise::Fact { group, .. } => {
                let key = format!("f:{group}");
                if !seen.insert(key.clone()) {
                    return false;
                }
                let ok = self.facts.get(group).is_some_and(|f| {
                    f.provenance
                        .iter()
                        .any(|d| self.derivation_survives(d, removed, seen))
                });
                seen.remove(&key);
                ok
            }
            Premise::Check(_) | Premise::Builtin(_) => true,
        })
    }

    /// Re-checks that every premise of every recorded derivation is present
    /// in this set.
    pub fn replay(&self) -> Result<()> {
        let check = |d: &Derivation, what: &str| -> Result<()> {
            for p in &d.premises {
                let ok = match p {
                    Premise::Assumption(h) => self.holds(*h),
                    Premise::Fact { group, status } => self.satisfies(*group, *status),
                    Premise::Check(_) | Premise::Builtin(_) => true,
                };
                if !ok {
                    return Err(Error::Identity(format!(
                        "{what}: premise {p} of rule {} is missing",
                        d.rule
                    )));
                }
            }
            Ok(())
        };
        for (h, rec) in &self.hypotheses {
            for d in &rec.derivations {
                check(d, &h.to_string())?;
            }
        }
        for f in self.facts.values() {
            for d in &f.provenance {
                check(d, &f.group.to_string())?;
            }
        }
        for r in &self.relations {
            check(&Derivation::new(r.rule, r.premises.clone()), &r.statement)?;
        }
        Ok(())
    }

    /// Indented provenance tree for one fact (first derivation per node).
    pub fn explain(&self, fact: &Fact) -> String {
        let mut out = String::new();
        self.explain_fact(fact, 0, &mut out);
        out
    }

    fn explain_fact(&self, fact: &Fact, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!("{pad}{} {}\n", fact.group, fact.status));
        for d in &fact.provenance {
            out.push_str(&format!("{pad}  by {}\n", d.rule));
            for p in &d.premises {
                self.explain_premise(p, depth + 2, out);
            }
        }
    }

    fn explain_premise(&self, p: &Premise, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match p {
            Premise::Fact { group, .. } if depth < 12 => match self.facts.get(group) {
                Some(f) => self.explain_fact(f, depth, out),
                None => out.push_str(&format!("{pad}{p} (missing)\n")),
            },
            Premise::Assumption(h) => {
                let how = match self.hypotheses.get(h) {
                    Some(rec) if rec.asserted => "asserted".to_string(),
                    Some(rec) => {
                        let rules: Vec<String> =
                            rec.derivations.iter().map(|d| d.rule.to_string()).collect();
                        format!("derived by {}", rules.join(" | "))
                    }
                    None => "missing".to_string(),
                };
                out.push_str(&format!("{pad}{p} ({how})\n"));
            }
            _ => out.push_str(&format!("{pad}{p}\n")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero(i: u8, e: SheafExpr, rule: RuleId) -> Fact {
        Fact::new(Group::new(i, e), Status::Zero, Derivation::new(rule, vec![]))
    }

    #[test]
    fn expr_round_trip() {
        for e in [
            SheafExpr::F(0),
            SheafExpr::F(-3),
            SheafExpr::Dual(0),
            SheafExpr::Dual(2),
            SheafExpr::Omega(0),
            SheafExpr::Omega(-1),
        ] {
            assert_eq!(e.to_string().parse::<SheafExpr>().unwrap(), e);
        }
        assert!("G(1)".parse::<SheafExpr>().is_err());
        assert!("F(1".parse::<SheafExpr>().is_err());
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::DimEquals(0).normalized(), Status::Zero);
        assert_eq!(Status::Zero.strength_cmp(Status::DimAtMost(1)), Ordering::Greater);
        assert_eq!(Status::DimAtMost(1).strength_cmp(Status::DimAtMost(3)), Ordering::Greater);
        assert_eq!(Status::DimEquals(2).strength_cmp(Status::DimAtMost(2)), Ordering::Greater);
        assert!(!Status::Zero.compatible(Status::DimEquals(1)));
        assert!(!Status::DimAtMost(1).compatible(Status::DimEquals(2)));
        assert!(Status::DimAtMost(1).compatible(Status::DimEquals(1)));
        assert!(Status::Zero.implies(Status::DimAtMost(4)));
        assert!(!Status::DimAtMost(4).implies(Status::Zero));
    }

    #[test]
    fn merge_keeps_strongest() {
        let mut set = FactSet::new(0, 0);
        let g = Group::new(2, SheafExpr::Omega(1));
        set.insert(Fact::new(g, Status::DimAtMost(1), Derivation::new(RuleId::HypersurfaceTwistH2, vec![])))
            .unwrap();
        assert!(set.insert(zero(2, SheafExpr::Omega(1), RuleId::SectionTwistH2)).unwrap());
        assert_eq!(set.get(g).unwrap().status, Status::Zero);
        assert!(!set
            .insert(Fact::new(g, Status::DimAtMost(1), Derivation::new(RuleId::HypersurfaceTwistH2, vec![])))
            .unwrap());
        assert!(set.insert(zero(2, SheafExpr::Omega(1), RuleId::HypersurfaceTwistH2)).unwrap());
        assert_eq!(set.get(g).unwrap().provenance.len(), 2);
    }

    #[test]
    fn isomorphic_contradiction_detected() {
        // a = 2, k = 1: F*(0) ≅ F(-1) ≅ F⊗ω(1).
        let mut set = FactSet::new(2, 1);
        set.insert(zero(2, SheafExpr::Dual(0), RuleId::RationalCurveDualH23)).unwrap();
        let bad = Fact::new(
            Group::new(2, SheafExpr::Omega(1)),
            Status::DimEquals(3),
            Derivation::new(RuleId::Asserted, vec![]),
        );
        assert!(matches!(set.insert(bad), Err(Error::Contradiction { .. })));
        assert_eq!(
            set.status_up_to_iso(Group::new(2, SheafExpr::F(-1))),
            Some(Status::Zero)
        );
    }
}
