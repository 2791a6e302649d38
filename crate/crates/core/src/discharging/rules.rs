use num_traits::Zero;

use super::classify::{classify_10face, classify_8face, is_heavy_four_face, TenFaceClass};
use super::{Charge, ChargeLedger, Element, Rule, RuleSet};
use crate::embedding::PlaneGraph;
use crate::reducibility::{richness_at, Richness};

fn q(n: i64, d: i64) -> Charge {
    Charge::new(n, d)
}

/// R1: every 5⁻-face takes 1 from each distinct 4⁺-vertex on it, and the rest
/// of its deficit in equal shares across its edges shared with 7⁺-faces.
pub fn apply_r1(ledger: &mut ChargeLedger, p: &PlaneGraph) {
    for f in 0..p.faces().len() {
        let d = p.face_len(f);
        if d == 0 || d > 5 {
            continue;
        }
        let big: Vec<_> = p.face_vertex_set(f).into_iter().filter(|&v| p.degree(v) >= 4).collect();
        for &v in &big {
            ledger.transfer(Element::Vertex(v), Element::Face(f), Charge::from(1), Rule::R1);
        }
        let deficit = (6 - d as i64 - big.len() as i64).max(0);
        if deficit == 0 {
            continue;
        }
        let slots: Vec<_> = (0..d).map(|i| p.across(f, i)).filter(|&g| p.face_len(g) >= 7).collect();
        if slots.is_empty() {
            ledger.unsatisfied.push(f);
            continue;
        }
        let share = q(deficit, slots.len() as i64);
        for g in slots {
            ledger.transfer(Element::Face(g), Element::Face(f), share, Rule::R1);
        }
    }
}

pub fn apply_r2(ledger: &mut ChargeLedger, p: &PlaneGraph, rs: RuleSet) {
    match rs {
        RuleSet::T3678 => {}
        RuleSet::T356 => r2a(ledger, p),
        RuleSet::T45p9 { .. } => r2b(ledger, p),
        RuleSet::T567 => r2c(ledger, p),
    }
}

fn r2a(ledger: &mut ChargeLedger, p: &PlaneGraph) {
    for f in (0..p.faces().len()).filter(|&f| p.face_len(f) == 7) {
        for pos in 0..7 {
            let v = p.vertex_at(f, pos);
            let amount = match (p.degree(v), richness_at(p, f, pos)) {
                (4, Ok(Richness::SemiRich)) => q(1, 4),
                (4, Ok(Richness::Rich)) => q(1, 2),
                (d, _) if d >= 5 => q(1, 2),
                _ => Charge::zero(),
            };
            ledger.transfer(Element::Vertex(v), Element::Face(f), amount, Rule::R2a);
            let g = p.across(f, pos);
            if p.face_len(g) == 4 && is_heavy_four_face(p, g) {
                ledger.transfer(Element::Face(g), Element::Face(f), q(1, 4), Rule::R2a);
            }
        }
    }
}

fn r2b(ledger: &mut ChargeLedger, p: &PlaneGraph) {
    for f in (0..p.faces().len()).filter(|&f| p.face_len(f) >= 10) {
        let class = classify_10face(p, f);
        for pos in 0..p.face_len(f) {
            let v = p.vertex_at(f, pos);
            let amount = match p.degree(v) {
                4 => match richness_at(p, f, pos) {
                    Ok(Richness::Rich | Richness::SemiRich) if class == TenFaceClass::Special => q(1, 3),
                    Ok(Richness::Rich | Richness::SemiRich) => q(1, 6),
                    _ => Charge::zero(),
                },
                5 if class == TenFaceClass::Poor => q(2, 3),
                5 => q(1, 3),
                d if d >= 6 => q(2, 3),
                _ => Charge::zero(),
            };
            ledger.transfer(Element::Vertex(v), Element::Face(f), amount, Rule::R2b);
        }
    }
}

fn r2c(ledger: &mut ChargeLedger, p: &PlaneGraph) {
    for f in (0..p.faces().len()).filter(|&f| p.face_len(f) == 8) {
        for pos in 0..8 {
            let v = p.vertex_at(f, pos);
            let rich = richness_at(p, f, pos);
            let amount = match p.degree(v) {
                d if d >= 6 => Charge::from(1),
                5 if rich == Ok(Richness::SemiRich) => q(3, 4),
                5 => q(1, 2),
                4 if rich != Ok(Richness::Poor) => q(1, 4),
                _ => Charge::zero(),
            };
            ledger.transfer(Element::Vertex(v), Element::Face(f), amount, Rule::R2c);
            let g = p.across(f, pos);
            let w = p.vertex_at(f, pos + 1);
            if p.degree(v) >= 4 && p.degree(w) >= 4 && p.face_len(g) == 4 && is_heavy_four_face(p, g) {
                ledger.transfer(Element::Face(g), Element::Face(f), q(1, 2), Rule::R2c);
            }
        }
    }
}

/// R3: positive vertices and faces deposit their surplus in the bank, which
/// then pays 1/3 to each bad 10-face (R3b) or 1/4 to each special 8-face (R3c).
pub fn apply_r3(ledger: &mut ChargeLedger, p: &PlaneGraph, rs: RuleSet) {
    let (rule, pays): (Rule, Vec<(usize, Charge)>) = match rs {
        RuleSet::T3678 | RuleSet::T356 => return,
        RuleSet::T45p9 { .. } => (
            Rule::R3b,
            (0..p.faces().len())
                .filter(|&f| classify_10face(p, f) == TenFaceClass::Bad)
                .map(|f| (f, q(1, 3)))
                .collect(),
        ),
        RuleSet::T567 => (
            Rule::R3c,
            (0..p.faces().len()).filter(|&f| classify_8face(p, f).is_special()).map(|f| (f, q(1, 4))).collect(),
        ),
    };
    let surplus: Vec<_> = ledger.elements().filter(|(e, c)| *e != Element::Bank && *c > Charge::zero()).collect();
    for (e, c) in surplus {
        ledger.transfer(e, Element::Bank, c, Rule::R3Deposit);
    }
    for (f, amount) in pays {
        ledger.transfer(Element::Bank, Element::Face(f), amount, rule);
    }
}
