//! The four subcommands. Each maps one input graph to a serializable report
//! and a status; rendering and exit codes live in `main`.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use dplab::cover::{Color, MatchingAssignment};
use dplab::cycles::{class_memberships, cycle_lengths_present, triangle_distance, DEFAULT_MAX_CYCLE_LEN};
use dplab::discharging::{
    audit, classify_10face, classify_8face, fmt_charge, run, AuditReport, Charge, ChargeLedger, Element, Rule, RuleSet,
    Stage,
};
use dplab::dp::{chi_dp_with_witness, is_dp_k_colorable, permutations, DpOptions};
use dplab::embedding::PlaneGraph;
use dplab::graph::{Graph, Vertex};
use dplab::planarity::is_planar;
use dplab::reducibility::{
    build_face_ordering, check_extension_conditions, extend_coloring, search_extension_ordering, worst_case_sizes,
    Condition, PartialColoring,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::input::Job;

/// Ordered by precedence when several jobs disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    BudgetExhausted,
    Violation,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::InputError => 2,
            Status::BudgetExhausted => 3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub source: String,
    pub error: String,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Entry<R> {
    Done(R),
    Failed(Failure),
}

impl<R: Display> Display for Entry<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Done(r) => r.fmt(f),
            Entry::Failed(e) => writeln!(f, "{}: error: {}", e.source, e.error),
        }
    }
}

fn fail<R>(job: &Job, error: impl ToString, status: Status) -> (Entry<R>, Status) {
    (Entry::Failed(Failure { source: job.source.clone(), error: error.to_string() }), status)
}

fn embed(job: &Job) -> Result<PlaneGraph, String> {
    match &job.plane {
        Some(p) => Ok(p.clone()),
        None => PlaneGraph::planar(job.graph.clone()).ok_or_else(|| "graph is not planar".to_string()),
    }
}

// ---------------------------------------------------------------- chi-dp

#[derive(Debug, Clone, Copy)]
pub struct ChiDpConfig {
    pub k: Option<usize>,
    pub opts: DpOptions,
}

#[derive(Debug, Serialize)]
pub struct WitnessEdge {
    pub u: String,
    pub v: String,
    pub pairs: Vec<(Color, Color)>,
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub k: usize,
    pub edges: Vec<WitnessEdge>,
}

impl Witness {
    fn new(job: &Job, k: usize, m: &MatchingAssignment) -> Self {
        let edges = job
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| WitnessEdge { u: job.name(u), v: job.name(v), pairs: m.pairs(u, v) })
            .collect();
        Witness { k, edges }
    }
}

#[derive(Debug, Serialize)]
pub struct ChiDpReport {
    pub source: String,
    pub n: usize,
    pub m: usize,
    /// Set when a single `k` was asked for.
    pub k: Option<usize>,
    pub chi_dp: Option<usize>,
    pub colorable: Option<bool>,
    /// A cover with no transversal for `k` (or `chi_dp - 1`).
    pub witness: Option<Witness>,
}

impl Display for ChiDpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.chi_dp, self.k, self.colorable) {
            (Some(c), _, _) => writeln!(f, "{}: chi_dp: {c}", self.source)?,
            (None, Some(k), Some(yes)) => {
                writeln!(f, "{}: DP-{k}-colorable: {}", self.source, if yes { "yes" } else { "no" })?
            }
            _ => writeln!(f, "{}: no result", self.source)?,
        }
        if let Some(w) = &self.witness {
            writeln!(f, "  witness for k={} (no independent transversal):", w.k)?;
            for e in &w.edges {
                let pairs: Vec<String> = e.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                writeln!(f, "    {} {}: {}", e.u, e.v, pairs.join(", "))?;
            }
        }
        Ok(())
    }
}

pub fn chi_dp(job: &Job, cfg: &ChiDpConfig) -> (Entry<ChiDpReport>, Status) {
    let g = &job.graph;
    let mut report = ChiDpReport {
        source: job.source.clone(),
        n: g.n(),
        m: g.m(),
        k: cfg.k,
        chi_dp: None,
        colorable: None,
        witness: None,
    };
    match cfg.k {
        Some(k) => match is_dp_k_colorable(g, k, &cfg.opts) {
            Ok(out) => {
                report.colorable = Some(out.colorable);
                report.witness = out.witness.map(|w| Witness::new(job, k, &w));
            }
            Err(e) => return fail(job, e, Status::BudgetExhausted),
        },
        None => match chi_dp_with_witness(g, &cfg.opts) {
            Ok((c, w)) => {
                report.chi_dp = Some(c);
                report.witness = w.map(|w| Witness::new(job, c - 1, &w));
            }
            Err(e) => return fail(job, e, Status::BudgetExhausted),
        },
    }
    (Entry::Done(report), Status::Ok)
}

// ----------------------------------------------------------- check-class

#[derive(Debug, Serialize)]
pub struct Membership {
    pub class: String,
    pub member: bool,
}

#[derive(Debug, Serialize)]
pub struct ClassReport {
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub planar: bool,
    /// Cycle lengths present, up to the enumeration bound.
    pub cycle_lengths: Vec<usize>,
    pub triangle_distance: Option<usize>,
    pub classes: Vec<Membership>,
}

impl Display for ClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> =
            self.classes.iter().map(|c| format!("{} {}", c.class, if c.member { "yes" } else { "no" })).collect();
        writeln!(f, "{}: {}", self.source, classes.join(", "))?;
        let lengths: Vec<String> = self.cycle_lengths.iter().map(usize::to_string).collect();
        let td = self.triangle_distance.map_or("none".to_string(), |d| d.to_string());
        writeln!(
            f,
            "  n={} m={} planar={} cycle lengths<={}: [{}] triangle distance: {td}",
            self.n,
            self.m,
            self.planar,
            DEFAULT_MAX_CYCLE_LEN,
            lengths.join(" ")
        )
    }
}

pub fn check_class(job: &Job) -> (Entry<ClassReport>, Status) {
    let g = &job.graph;
    let classes =
        class_memberships(g).into_iter().map(|(c, member)| Membership { class: c.to_string(), member }).collect();
    let report = ClassReport {
        source: job.source.clone(),
        n: g.n(),
        m: g.m(),
        planar: is_planar(g),
        cycle_lengths: cycle_lengths_present(g, DEFAULT_MAX_CYCLE_LEN).into_iter().collect(),
        triangle_distance: triangle_distance(g),
        classes,
    };
    (Entry::Done(report), Status::Ok)
}

// ------------------------------------------------------------- discharge

#[derive(Debug, Clone, Copy)]
pub struct DischargeConfig {
    pub rule_set: Option<RuleSet>,
    pub budget_orderings: u64,
}

#[derive(Debug, Serialize)]
pub struct StageTotal {
    pub stage: Stage,
    pub total: String,
}

#[derive(Debug, Serialize)]
pub struct RuleTotal {
    pub rule: Rule,
    pub transfers: usize,
    pub amount: String,
}

#[derive(Debug, Serialize)]
pub struct TransferRow {
    pub from: String,
    pub to: String,
    pub amount: String,
    pub rule: Rule,
}

#[derive(Debug, Serialize)]
pub struct ChargeRow {
    pub element: String,
    pub charge: String,
}

#[derive(Debug, Serialize)]
pub struct FaceClassRow {
    pub face: usize,
    pub length: usize,
    pub vertices: Vec<String>,
    pub class: String,
}

#[derive(Debug, Serialize)]
pub struct DischargeReport {
    pub source: String,
    pub rule_set: String,
    pub n: usize,
    pub faces: usize,
    pub stage_totals: Vec<StageTotal>,
    pub bank: String,
    pub rule_totals: Vec<RuleTotal>,
    pub transfers: Vec<TransferRow>,
    pub face_classes: Vec<FaceClassRow>,
    pub negative: Vec<ChargeRow>,
    pub unsatisfied_deficits: Vec<usize>,
    pub audit: AuditReport,
    #[serde(skip)]
    names: Vec<String>,
}

fn label(job: &Job, e: Element) -> String {
    match e {
        Element::Vertex(v) => format!("v:{}", job.name(v)),
        Element::Face(f) => format!("f:{f}"),
        Element::Bank => "bank".to_string(),
    }
}

impl Display for DischargeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: rule set {}, {} vertices, {} faces", self.source, self.rule_set, self.n, self.faces)?;
        let totals: Vec<String> = self.stage_totals.iter().map(|s| format!("{:?} {}", s.stage, s.total)).collect();
        writeln!(f, "  totals: {}", totals.join(", "))?;
        if !self.rule_totals.is_empty() {
            let rules: Vec<String> =
                self.rule_totals.iter().map(|r| format!("{} x{} = {}", r.rule, r.transfers, r.amount)).collect();
            writeln!(f, "  transfers: {}", rules.join(", "))?;
        }
        writeln!(f, "  bank: {}", self.bank)?;
        for c in &self.face_classes {
            writeln!(f, "  f:{} ({}-face) {}: {}", c.face, c.length, c.class, c.vertices.join(" "))?;
        }
        if !self.unsatisfied_deficits.is_empty() {
            let ids: Vec<String> = self.unsatisfied_deficits.iter().map(|x| format!("f:{x}")).collect();
            writeln!(f, "  unsatisfied deficits: {}", ids.join(" "))?;
        }
        let a = &self.audit;
        let member = if a.in_class { "in class" } else { "not in class" };
        let delta = a.min_degree.map_or("-".to_string(), |d| d.to_string());
        writeln!(f, "  audit: {member}, minimum degree {delta}, {} negative element(s)", self.negative.len())?;
        if let Some(v) = a.low_degree_vertex {
            writeln!(
                f,
                "    vertex {} has degree at most 2; any DP-3-coloring of the rest extends to it",
                self.names[v]
            )?;
        }
        for (row, entry) in self.negative.iter().zip(&a.negative) {
            let why = match (&entry.reduction, entry.budget_exhausted) {
                (Some(r), _) => {
                    let order: Vec<&str> = r.order.iter().map(|&v| self.names[v].as_str()).collect();
                    format!("reducible, order {}", order.join(" "))
                }
                (None, true) => "unexplained (ordering budget exhausted)".to_string(),
                (None, false) => "unexplained".to_string(),
            };
            writeln!(f, "    {} = {}: {why}", row.element, row.charge)?;
        }
        if a.inconsistency {
            writeln!(f, "  INCONSISTENT: negative charge on an in-class graph of minimum degree at least 3")?;
        }
        Ok(())
    }
}

fn default_rule_set(g: &Graph) -> RuleSet {
    class_memberships(g).into_iter().find(|&(_, m)| m).map_or(RuleSet::T3678, |(c, _)| RuleSet::for_class(c))
}

fn rule_totals(ledger: &ChargeLedger) -> Vec<RuleTotal> {
    let mut by_rule: BTreeMap<Rule, (usize, Charge)> = BTreeMap::new();
    for t in ledger.transfers() {
        let e = by_rule.entry(t.rule).or_insert((0, Charge::from(0)));
        e.0 += 1;
        e.1 += t.amount;
    }
    by_rule.into_iter().map(|(rule, (n, a))| RuleTotal { rule, transfers: n, amount: fmt_charge(a) }).collect()
}

pub fn discharge(job: &Job, cfg: &DischargeConfig) -> (Entry<DischargeReport>, Status) {
    let p = match embed(job) {
        Ok(p) => p,
        Err(e) => return fail(job, e, Status::InputError),
    };
    let rs = cfg.rule_set.unwrap_or_else(|| default_rule_set(&job.graph));
    let ledger = match run(&p, rs) {
        Ok(l) => l,
        Err(e) => return fail(job, e, Status::InputError),
    };
    let report_audit = audit(&p, &ledger, rs, cfg.budget_orderings);
    let face_classes = (0..p.faces().len())
        .filter_map(|f| {
            let class = match p.face_len(f) {
                10 => classify_10face(&p, f).to_string(),
                8 => classify_8face(&p, f).to_string(),
                _ => return None,
            };
            Some(FaceClassRow { face: f, length: p.face_len(f), vertices: job.names(&p.face(f).vertices()), class })
        })
        .collect();
    let status = if report_audit.inconsistency { Status::Violation } else { Status::Ok };
    let report = DischargeReport {
        source: job.source.clone(),
        rule_set: rs.to_string(),
        n: job.graph.n(),
        faces: p.faces().len(),
        stage_totals: [Stage::Initial, Stage::R1, Stage::R2, Stage::R3]
            .into_iter()
            .map(|stage| StageTotal { stage, total: fmt_charge(ledger.charges_after(stage).iter().map(|e| e.1).sum()) })
            .collect(),
        bank: fmt_charge(ledger.charge(Element::Bank)),
        rule_totals: rule_totals(&ledger),
        transfers: ledger
            .transfers()
            .iter()
            .map(|t| TransferRow {
                from: label(job, t.from),
                to: label(job, t.to),
                amount: fmt_charge(t.amount),
                rule: t.rule,
            })
            .collect(),
        face_classes,
        negative: ledger
            .negative()
            .into_iter()
            .map(|(e, c)| ChargeRow { element: label(job, e), charge: fmt_charge(c) })
            .collect(),
        unsatisfied_deficits: ledger.unsatisfied.clone(),
        audit: report_audit,
        names: (0..job.graph.n()).map(|v| job.name(v)).collect(),
    };
    (Entry::Done(report), status)
}

// -------------------------------------------------------- find-reducible

#[derive(Debug, Clone)]
pub struct ReducibleConfig {
    pub k: Option<usize>,
    pub h: Vec<String>,
    pub face: Vec<String>,
    pub budget_orderings: u64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct OrderCheck {
    pub order: Vec<String>,
    pub passes: bool,
    pub failed: Vec<String>,
    pub overloaded: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub order: Vec<String>,
    pub trials: usize,
    pub extended: usize,
    /// Trials whose random coloring of the rest got stuck before reaching `H`.
    pub skipped: usize,
}

#[derive(Debug, Serialize)]
pub struct ReducibleReport {
    pub source: String,
    pub k: usize,
    pub h: Vec<String>,
    /// The ordering supplied with the input, checked under worst-case lists.
    pub given: Option<OrderCheck>,
    /// The ordering built directly from the chosen face.
    pub face_construction: Option<OrderCheck>,
    pub face_construction_error: Option<String>,
    pub found: Option<Vec<String>>,
    pub search_error: Option<String>,
    pub verification: Option<Verification>,
}

fn condition_name(c: Condition) -> &'static str {
    match c {
        Condition::WellFormed => "well-formed",
        Condition::FirstLast => "first-last",
        Condition::LastVertex => "last-vertex",
        Condition::Degenerate => "degenerate",
    }
}

fn order_check(job: &Job, h: &[Vertex], order: &[Vertex], k: usize) -> OrderCheck {
    let g = &job.graph;
    let report = check_extension_conditions(g, h, order, &worst_case_sizes(g, h, k), k);
    OrderCheck {
        order: job.names(order),
        passes: report.passes(),
        failed: report.failed().into_iter().map(|c| condition_name(c).to_string()).collect(),
        overloaded: job.names(&report.overloaded),
    }
}

impl Display for ReducibleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: k={}, H = {{{}}}", self.source, self.k, self.h.join(" "))?;
        let show = |f: &mut fmt::Formatter<'_>, what: &str, c: &OrderCheck| {
            let mut line = format!("  {what}: {}", c.order.join(" "));
            if c.passes {
                line.push_str(" (passes)");
            } else {
                write!(line, " (fails: {}", c.failed.join(", ")).unwrap();
                if !c.overloaded.is_empty() {
                    write!(line, "; overloaded {}", c.overloaded.join(" ")).unwrap();
                }
                line.push(')');
            }
            writeln!(f, "{line}")
        };
        if let Some(c) = &self.given {
            show(f, "given ordering", c)?;
        }
        if let Some(c) = &self.face_construction {
            show(f, "face construction", c)?;
        }
        if let Some(e) = &self.face_construction_error {
            writeln!(f, "  face construction: {e}")?;
        }
        match (&self.found, &self.search_error) {
            (Some(o), _) => writeln!(f, "  ordering found: {}", o.join(" "))?,
            (None, Some(e)) => writeln!(f, "  search: {e}")?,
            (None, None) => writeln!(f, "  ordering found: none")?,
        }
        if let Some(v) = &self.verification {
            writeln!(
                f,
                "  extension verified on {}/{} random covers ({} skipped)",
                v.extended,
                v.trials - v.skipped,
                v.skipped
            )?;
        }
        Ok(())
    }
}

fn resolve(job: &Job, tokens: &[String]) -> Result<Vec<Vertex>, String> {
    tokens
        .iter()
        .flat_map(|t| t.split_whitespace())
        .map(|t| job.vertex(t).ok_or_else(|| format!("unknown vertex {t:?}")))
        .collect()
}

/// Colors `G - H` greedily with random colors; `None` if some vertex has no
/// color left.
fn random_outside_coloring(
    g: &Graph,
    h: &[Vertex],
    m: &MatchingAssignment,
    k: usize,
    rng: &mut StdRng,
) -> Option<PartialColoring> {
    let mut pc = PartialColoring::uncolored(g.n());
    for v in (0..g.n()).filter(|v| !h.contains(v)) {
        let free: Vec<Color> = (1..=k as Color)
            .filter(|&c| g.neighbors(v).iter().all(|&u| pc.get(u).is_none_or(|cu| m.matched(u, v, cu) != Some(c))))
            .collect();
        pc.set(v, *free.choose(rng)?);
    }
    Some(pc)
}

fn verify(job: &Job, h: &[Vertex], order: &[Vertex], k: usize, cfg: &ReducibleConfig) -> Verification {
    let g = &job.graph;
    let perms = permutations(k);
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let (mut extended, mut skipped) = (0, 0);
    for _ in 0..cfg.trials {
        let mut m = MatchingAssignment::new();
        for &(u, v) in g.edges() {
            m.set_permutation(u, v, perms.choose(&mut rng).unwrap());
        }
        let Some(pc) = random_outside_coloring(g, h, &m, k, &mut rng) else {
            skipped += 1;
            continue;
        };
        if let Ok(out) = extend_coloring(g, h, order, &pc, &m, k) {
            if out.is_total() && out.is_valid(g, &m, k) {
                extended += 1;
            }
        }
    }
    Verification { order: job.names(order), trials: cfg.trials, extended, skipped }
}

pub fn find_reducible(job: &Job, cfg: &ReducibleConfig) -> (Entry<ReducibleReport>, Status) {
    let g = &job.graph;
    let fixture = job.fixture.as_ref();
    let k = cfg.k.or(fixture.map(|f| f.k)).unwrap_or(3);
    let mut report = ReducibleReport {
        source: job.source.clone(),
        k,
        h: Vec::new(),
        given: None,
        face_construction: None,
        face_construction_error: None,
        found: None,
        search_error: None,
        verification: None,
    };

    let face_tokens: Option<Vec<Vertex>> = if !cfg.face.is_empty() {
        match resolve(job, &cfg.face) {
            Ok(c) => Some(c),
            Err(e) => return fail(job, e, Status::InputError),
        }
    } else if cfg.h.is_empty() && fixture.is_some_and(|f| f.h.is_empty()) {
        fixture.and_then(|f| f.face.clone())
    } else {
        None
    };

    let mut best: Option<Vec<Vertex>> = None;
    let h: Vec<Vertex> = if !cfg.h.is_empty() {
        match resolve(job, &cfg.h) {
            Ok(h) => h,
            Err(e) => return fail(job, e, Status::InputError),
        }
    } else if let Some(cycle) = &face_tokens {
        let p = match embed(job) {
            Ok(p) => p,
            Err(e) => return fail(job, e, Status::InputError),
        };
        let Some(face) = p.find_face(cycle) else {
            return fail(job, "the given vertices do not bound a face", Status::InputError);
        };
        match build_face_ordering(&p, face, k) {
            Ok(order) => {
                let check = order_check(job, &order, &order, k);
                if check.passes {
                    best = Some(order.clone());
                }
                report.face_construction = Some(check);
                order
            }
            Err(e) => {
                report.face_construction_error = Some(e.to_string());
                p.face_vertex_set(face)
            }
        }
    } else if let Some(f) = fixture.filter(|f| !f.h.is_empty()) {
        if let Some(order) = &f.order {
            let check = order_check(job, &f.h, order, k);
            if check.passes {
                best = Some(order.clone());
            }
            report.given = Some(check);
        }
        f.h.clone()
    } else {
        return fail(job, "no vertex set H: pass --h or --face", Status::InputError);
    };
    let mut h = h;
    h.sort_unstable();
    h.dedup();
    if h.is_empty() {
        return fail(job, "the vertex set H is empty", Status::InputError);
    }
    report.h = job.names(&h);

    let mut status = Status::Ok;
    match search_extension_ordering(g, &h, k, cfg.budget_orderings) {
        Ok(Some(order)) => {
            report.found = Some(job.names(&order));
            best = best.or(Some(order));
        }
        Ok(None) => {}
        Err(e) => {
            report.search_error = Some(e.to_string());
            status = Status::BudgetExhausted;
        }
    }
    if report.given.as_ref().is_some_and(|c| !c.passes) {
        status = status.max(Status::Violation);
    }
    if let Some(order) = best {
        let v = verify(job, &h, &order, k, cfg);
        if v.extended + v.skipped < v.trials {
            status = status.max(Status::Violation);
        }
        report.verification = Some(v);
    }
    (Entry::Done(report), status)
}
