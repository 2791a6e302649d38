use std::collections::BTreeSet;

use serde::Serialize;

use super::{fmt_charge, Charge, ChargeLedger, Element, RuleSet};
use crate::cycles::in_class;
use crate::embedding::PlaneGraph;
use crate::graph::Vertex;
use crate::reducibility::{build_face_ordering, controls_small_face, search_extension_ordering, ReduceError};

/// How a negative element was explained away, if at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// The reducible subgraph.
    pub h: Vec<Vertex>,
    /// An ordering of `h` meeting the extension conditions for `k`.
    pub order: Vec<Vertex>,
    /// True when the ordering came from the face construction rather than search.
    pub from_face_construction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub element: Element,
    pub charge: String,
    pub reduction: Option<Reduction>,
    /// Set when some candidate search ran out of budget.
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rule_set: String,
    pub in_class: bool,
    pub min_degree: Option<usize>,
    /// A vertex of degree below 3, which alone makes the graph reducible.
    pub low_degree_vertex: Option<Vertex>,
    pub negative: Vec<AuditEntry>,
    pub unsatisfied_deficits: Vec<usize>,
    /// Negative charge on an in-class graph of minimum degree at least 3
    /// that no reduction accounts for.
    pub inconsistency: bool,
}

impl AuditReport {
    pub fn negative_count(&self) -> usize {
        self.negative.len()
    }
}

fn candidates(p: &PlaneGraph, e: Element) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    let mut push = |h: BTreeSet<Vertex>| {
        let h: Vec<Vertex> = h.into_iter().collect();
        if !h.is_empty() && !out.contains(&h) {
            out.push(h);
        }
    };
    match e {
        Element::Face(f) => {
            let mut h: BTreeSet<Vertex> = p.face_vertex_set(f).into_iter().collect();
            let bare = h.clone();
            for i in 0..p.face_len(f) {
                if controls_small_face(p, f, i) {
                    h.extend(p.face_vertex_set(p.across(f, i)));
                }
            }
            push(h);
            push(bare);
        }
        Element::Vertex(v) => {
            let mut h: BTreeSet<Vertex> = [v].into();
            for g in p.faces_at(v) {
                if p.face_len(g) <= 4 {
                    h.extend(p.face_vertex_set(g));
                }
            }
            push(h);
            push([v].into());
        }
        Element::Bank => {}
    }
    out
}

fn explain(p: &PlaneGraph, e: Element, k: usize, budget: u64) -> (Option<Reduction>, bool) {
    let g = p.graph();
    if let Element::Face(f) = e {
        if let Ok(order) = build_face_ordering(p, f, k) {
            let h = order.clone();
            let a = crate::reducibility::worst_case_sizes(g, &h, k);
            if crate::reducibility::check_extension_conditions(g, &h, &order, &a, k).passes() {
                return (Some(Reduction { h, order, from_face_construction: true }), false);
            }
        }
    }
    let mut exhausted = false;
    for h in candidates(p, e) {
        if h.len() == g.n() {
            continue;
        }
        match search_extension_ordering(g, &h, k, budget) {
            Ok(Some(order)) => return (Some(Reduction { h, order, from_face_construction: false }), exhausted),
            Ok(None) => {}
            Err(ReduceError::SearchBudgetExceeded { .. }) => exhausted = true,
            Err(_) => {}
        }
    }
    (None, exhausted)
}

/// Lists negative elements of a finished run and tries to account for each
/// with a reducible configuration for DP-3-coloring.
pub fn audit(p: &PlaneGraph, ledger: &ChargeLedger, rs: RuleSet, budget_orderings: u64) -> AuditReport {
    let g = p.graph();
    let k = 3;
    let min_degree = g.min_degree();
    let low_degree_vertex = (0..g.n()).find(|&v| g.degree(v) < 3);
    let member = in_class(g, rs.class());
    let negative: Vec<AuditEntry> = ledger
        .negative()
        .into_iter()
        .map(|(element, c): (Element, Charge)| {
            let (reduction, budget_exhausted) = explain(p, element, k, budget_orderings);
            AuditEntry { element, charge: fmt_charge(c), reduction, budget_exhausted }
        })
        .collect();
    let unexplained = match rs {
        RuleSet::T3678 => !negative.is_empty(),
        _ => negative.iter().any(|e| e.reduction.is_none()),
    };
    AuditReport {
        rule_set: rs.to_string(),
        in_class: member,
        min_degree,
        low_degree_vertex,
        inconsistency: member && low_degree_vertex.is_none() && unexplained,
        unsatisfied_deficits: ledger.unsatisfied.clone(),
        negative,
    }
}
