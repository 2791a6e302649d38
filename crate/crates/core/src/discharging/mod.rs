//! Exact charge bookkeeping and the built-in discharging rule sets.

mod audit;
mod classify;
mod rules;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cycles::GraphClass;
use crate::embedding::{FaceId, PlaneGraph};
use crate::graph::Vertex;

pub use audit::{audit, AuditEntry, AuditReport, Reduction};
pub use classify::{classify_10face, classify_8face, is_heavy_four_face, EightFaceClass, TenFaceClass};
pub use rules::{apply_r1, apply_r2, apply_r3};

pub type Charge = Ratio<i64>;

/// Formats a charge as `p/q`, or `p` when integral.
pub fn fmt_charge(c: Charge) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Element {
    Vertex(Vertex),
    Face(FaceId),
    Bank,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
            Element::Bank => write!(f, "bank"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R1,
    R2a,
    R2b,
    R2c,
    /// Surplus deposited in the bank.
    R3Deposit,
    R3b,
    R3c,
}

impl Rule {
    pub fn stage(self) -> Stage {
        match self {
            Rule::R1 => Stage::R1,
            Rule::R2a | Rule::R2b | Rule::R2c => Stage::R2,
            Rule::R3Deposit | Rule::R3b | Rule::R3c => Stage::R3,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Stage {
    Initial,
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    #[serde(serialize_with = "ser_charge")]
    pub amount: Charge,
    pub rule: Rule,
}

fn ser_charge<S: serde::Serializer>(c: &Charge, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_charge(*c))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DischargeError {
    #[error("the embedded graph is disconnected")]
    Disconnected,
}

/// Charges of every vertex, face and the bank, with the log of transfers.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    n: usize,
    faces: usize,
    initial: Vec<Charge>,
    charges: Vec<Charge>,
    transfers: Vec<Transfer>,
    total: Charge,
    /// 5⁻-faces whose R1 deficit had no 7⁺-face edge to draw from.
    pub unsatisfied: Vec<FaceId>,
}

impl ChargeLedger {
    fn index(&self, e: Element) -> usize {
        match e {
            Element::Vertex(v) => v,
            Element::Face(f) => self.n + f,
            Element::Bank => self.n + self.faces,
        }
    }

    fn element(&self, i: usize) -> Element {
        if i < self.n {
            Element::Vertex(i)
        } else if i < self.n + self.faces {
            Element::Face(i - self.n)
        } else {
            Element::Bank
        }
    }

    pub fn charge(&self, e: Element) -> Charge {
        self.charges[self.index(e)]
    }

    pub fn initial_charge(&self, e: Element) -> Charge {
        self.initial[self.index(e)]
    }

    pub fn total(&self) -> Charge {
        self.charges.iter().copied().sum()
    }

    pub fn initial_total(&self) -> Charge {
        self.initial.iter().copied().sum()
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.transfers
    }

    pub fn elements(&self) -> impl Iterator<Item = (Element, Charge)> + '_ {
        self.charges.iter().enumerate().map(|(i, &c)| (self.element(i), c))
    }

    pub fn negative(&self) -> Vec<(Element, Charge)> {
        self.elements().filter(|(_, c)| *c < Charge::zero()).collect()
    }

    /// Moves `amount` from `from` to `to`; zero amounts are not logged.
    pub fn transfer(&mut self, from: Element, to: Element, amount: Charge, rule: Rule) {
        if amount.is_zero() {
            return;
        }
        let (i, j) = (self.index(from), self.index(to));
        self.charges[i] -= amount;
        self.charges[j] += amount;
        self.transfers.push(Transfer { from, to, amount, rule });
        debug_assert_eq!(self.total(), self.total, "charge not conserved by {rule} transfer");
    }

    /// Charges after replaying the log up to and including `stage`.
    pub fn charges_after(&self, stage: Stage) -> Vec<(Element, Charge)> {
        let mut c = self.initial.clone();
        for t in self.transfers.iter().filter(|t| t.rule.stage() <= stage) {
            c[self.index(t.from)] -= t.amount;
            c[self.index(t.to)] += t.amount;
        }
        c.into_iter().enumerate().map(|(i, x)| (self.element(i), x)).collect()
    }

    pub fn charge_after(&self, e: Element, stage: Stage) -> Charge {
        let mut c = self.initial_charge(e);
        for t in self.transfers.iter().filter(|t| t.rule.stage() <= stage) {
            if t.from == e {
                c -= t.amount;
            }
            if t.to == e {
                c += t.amount;
            }
        }
        c
    }

    /// Sum of amounts leaving `e` under `rule`.
    pub fn outflow(&self, e: Element, rule: Rule) -> Charge {
        self.transfers.iter().filter(|t| t.from == e && t.rule == rule).map(|t| t.amount).sum()
    }

    pub fn inflow(&self, e: Element, rule: Rule) -> Charge {
        self.transfers.iter().filter(|t| t.to == e && t.rule == rule).map(|t| t.amount).sum()
    }
}

/// Initial charges `2d(v) - 6` and `d(f) - 6`, bank 0.
pub fn initial_charges(p: &PlaneGraph) -> Result<ChargeLedger, DischargeError> {
    let g = p.graph();
    if !g.is_connected() {
        return Err(DischargeError::Disconnected);
    }
    let n = g.n();
    let faces = p.faces().len();
    let mut initial: Vec<Charge> = (0..n).map(|v| Charge::from(2 * g.degree(v) as i64 - 6)).collect();
    initial.extend((0..faces).map(|f| Charge::from(p.face_len(f) as i64 - 6)));
    initial.push(Charge::zero());
    let total: Charge = initial.iter().copied().sum();
    if n > 0 {
        assert_eq!(total, Charge::from(-12), "initial charges of a connected plane graph must sum to -12");
    }
    Ok(ChargeLedger {
        n,
        faces,
        charges: initial.clone(),
        initial,
        transfers: Vec::new(),
        total,
        unsatisfied: Vec::new(),
    })
}

/// The four rule systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleSet {
    /// R1 only.
    T3678,
    /// R1 and R2a.
    T356,
    /// R1, R2b and R3b; `p` is 6 or 7.
    T45p9 { p: u8 },
    /// R1, R2c and R3c.
    T567,
}

impl RuleSet {
    pub fn class(self) -> GraphClass {
        match self {
            RuleSet::T3678 => GraphClass::C3678,
            RuleSet::T356 => GraphClass::C356,
            RuleSet::T45p9 { p: 6 } => GraphClass::C4569,
            RuleSet::T45p9 { .. } => GraphClass::C4579,
            RuleSet::T567 => GraphClass::C567T,
        }
    }

    pub fn for_class(c: GraphClass) -> Self {
        match c {
            GraphClass::C3678 => RuleSet::T3678,
            GraphClass::C356 => RuleSet::T356,
            GraphClass::C4569 => RuleSet::T45p9 { p: 6 },
            GraphClass::C4579 => RuleSet::T45p9 { p: 7 },
            GraphClass::C567T => RuleSet::T567,
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSet::T3678 => f.write_str("T3678"),
            RuleSet::T356 => f.write_str("T356"),
            RuleSet::T45p9 { p } => write!(f, "T45{p}9"),
            RuleSet::T567 => f.write_str("T567"),
        }
    }
}

impl FromStr for RuleSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim_start_matches(['T', 't']);
        t.parse::<GraphClass>().map(RuleSet::for_class).map_err(|_| format!("unknown rule set {s:?}"))
    }
}

/// Runs initial charges, R1, the rule set's R2 and R3 stages.
pub fn run(p: &PlaneGraph, rs: RuleSet) -> Result<ChargeLedger, DischargeError> {
    let mut ledger = initial_charges(p)?;
    apply_r1(&mut ledger, p);
    apply_r2(&mut ledger, p, rs);
    apply_r3(&mut ledger, p, rs);
    assert_eq!(ledger.total(), ledger.initial_total(), "charge not conserved");
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn r(n: i64, d: i64) -> Charge {
        Charge::new(n, d)
    }

    #[test]
    fn initial_examples() {
        let cube = PlaneGraph::planar(Graph::cube()).unwrap();
        let l = initial_charges(&cube).unwrap();
        assert!((0..8).all(|v| l.charge(Element::Vertex(v)) == r(0, 1)));
        assert!((0..6).all(|f| l.charge(Element::Face(f)) == r(-2, 1)));
        assert_eq!(l.total(), r(-12, 1));

        let c9 = PlaneGraph::planar(Graph::cycle(9)).unwrap();
        let l = initial_charges(&c9).unwrap();
        assert_eq!(l.charge(Element::Face(0)), r(3, 1));
        assert_eq!(l.charge(Element::Vertex(4)), r(-2, 1));

        let two = PlaneGraph::planar(Graph::empty(2)).unwrap();
        assert_eq!(initial_charges(&two).unwrap_err(), DischargeError::Disconnected);
    }

    #[test]
    fn cycle_has_no_transfers_under_r1() {
        let c9 = PlaneGraph::planar(Graph::cycle(9)).unwrap();
        let l = run(&c9, RuleSet::T3678).unwrap();
        assert!(l.transfers().is_empty());
        assert_eq!(l.total(), r(-12, 1));
    }

    #[test]
    fn charge_formatting_and_parsing() {
        assert_eq!(fmt_charge(r(-1, 4)), "-1/4");
        assert_eq!(fmt_charge(r(6, 3)), "2");
        assert_eq!("4569".parse::<RuleSet>(), Ok(RuleSet::T45p9 { p: 6 }));
        assert_eq!("T567".parse::<RuleSet>(), Ok(RuleSet::T567));
        assert_eq!(RuleSet::T45p9 { p: 7 }.to_string(), "T4579");
    }
}
