//! Classification of 10-faces (special, poor, bad) and 8-faces (P1 to P4).
//!
//! A class is described by the exact multiset of maximal 4⁻-controlling
//! walks of the face (degree pattern, whether the walk is a special path, and
//! the degree patterns of the faces it controls), or by the exact multiset of
//! controlled 4⁻-faces. Degree patterns of walks are read in either
//! direction; those of faces cyclically in either direction.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::embedding::{FaceId, PlaneGraph};
use crate::reducibility::{find_special_paths, maximal_walks, richness_at, FaceProfile, Richness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TenFaceClass {
    Special,
    Poor,
    Bad,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EightFaceClass {
    P1,
    P2,
    P3,
    P4,
    None,
}

impl EightFaceClass {
    pub fn is_special(self) -> bool {
        self != EightFaceClass::None
    }
}

impl fmt::Display for TenFaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for EightFaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A degree constraint: exactly `n` or at least `n`.
#[derive(Debug, Clone, Copy)]
enum D {
    Eq(usize),
    Ge(usize),
}

use D::{Eq, Ge};

fn fits(d: usize, s: D) -> bool {
    match s {
        Eq(n) => d == n,
        Ge(n) => d >= n,
    }
}

fn seq_fits(degs: &[usize], pat: &[D]) -> bool {
    degs.len() == pat.len() && degs.iter().zip(pat).all(|(&d, &s)| fits(d, s))
}

fn either_way(degs: &[usize], pat: &[D]) -> bool {
    let rev: Vec<usize> = degs.iter().rev().copied().collect();
    seq_fits(degs, pat) || seq_fits(&rev, pat)
}

fn cyclic_fits(degs: &[usize], pat: &[D]) -> bool {
    let n = degs.len();
    n == pat.len()
        && (0..n).any(|r| {
            let rot: Vec<usize> = (0..n).map(|i| degs[(r + i) % n]).collect();
            either_way(&rot, pat)
        })
}

/// True when some bijection pairs every item with a spec it satisfies.
fn bijection<A, B>(items: &[A], specs: &[B], ok: &impl Fn(&A, &B) -> bool) -> bool {
    fn rec<A, B>(items: &[A], specs: &[B], used: &mut [bool], ok: &impl Fn(&A, &B) -> bool) -> bool {
        let Some((first, rest)) = items.split_first() else { return true };
        for j in 0..specs.len() {
            if !used[j] && ok(first, &specs[j]) {
                used[j] = true;
                if rec(rest, specs, used, ok) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    items.len() == specs.len() && rec(items, specs, &mut vec![false; specs.len()], ok)
}

/// A controlled face seen from `f`: its degree cycle and the degrees of the
/// controlling edge.
struct Controlled {
    face_degrees: Vec<usize>,
    edge: (usize, usize),
}

struct Walk {
    degrees: Vec<usize>,
    special: bool,
    controlled: Vec<Controlled>,
}

struct FaceView {
    walks: Vec<Walk>,
    controlled: Vec<Controlled>,
    rich_four: bool,
}

fn face_degrees(p: &PlaneGraph, g: FaceId) -> Vec<usize> {
    p.face(g).vertices().into_iter().map(|v| p.degree(v)).collect()
}

fn view(p: &PlaneGraph, f: FaceId, profile: &FaceProfile) -> FaceView {
    let d = p.face_len(f);
    let specials: BTreeSet<Vec<usize>> = find_special_paths(p, f)
        .into_iter()
        .flat_map(|sp| {
            let mut rev = sp.spine.clone();
            rev.reverse();
            [sp.spine, rev]
        })
        .collect();
    let controlled_at = |pos: usize| Controlled {
        face_degrees: face_degrees(p, p.across(f, pos)),
        edge: (p.degree(p.vertex_at(f, pos)), p.degree(p.vertex_at(f, pos + 1))),
    };
    let walks = profile
        .walks
        .iter()
        .map(|w| Walk {
            degrees: w.vertices.iter().map(|&v| p.degree(v)).collect(),
            special: specials.contains(&w.vertices),
            controlled: (0..w.controlled.len()).map(|j| controlled_at((w.start + j) % d)).collect(),
        })
        .collect();
    let controlled = (0..d).filter(|&i| p.face_len(p.across(f, i)) <= 4).map(controlled_at).collect();
    let rich_four =
        (0..d).any(|pos| p.degree(p.vertex_at(f, pos)) == 4 && richness_at(p, f, pos) == Ok(Richness::Rich));
    FaceView { walks, controlled, rich_four }
}

struct WalkSpec {
    pattern: &'static [D],
    special: Option<bool>,
    faces: &'static [&'static [D]],
}

const fn sp(pattern: &'static [D]) -> WalkSpec {
    WalkSpec { pattern, special: Some(true), faces: &[] }
}

fn walk_ok(w: &Walk, s: &WalkSpec) -> bool {
    either_way(&w.degrees, s.pattern)
        && s.special.is_none_or(|want| w.special == want)
        && (s.faces.is_empty()
            || bijection(&w.controlled, s.faces, &|c: &Controlled, pat: &&[D]| cyclic_fits(&c.face_degrees, pat)))
}

const SS: WalkSpec = sp(&[Eq(3), Eq(3)]);
const S343: WalkSpec = sp(&[Eq(3), Eq(4), Eq(3)]);

pub fn classify_10face(p: &PlaneGraph, f: FaceId) -> TenFaceClass {
    if p.face_len(f) != 10 || !p.face(f).is_cycle() {
        return TenFaceClass::Plain;
    }
    let v = view(p, f, &maximal_walks(p, f));
    let walks_are = |specs: &[WalkSpec]| bijection(&v.walks, specs, &walk_ok);

    let special_a = [SS, SS, SS, SS, WalkSpec { pattern: &[Eq(3), Eq(4)], special: Some(false), faces: &[] }];
    let special_b = [SS, SS, SS, S343];
    if walks_are(&special_a) || (v.rich_four && walks_are(&special_b)) {
        return TenFaceClass::Special;
    }

    let poor_a =
        [SS, SS, SS, SS, WalkSpec { pattern: &[Eq(3), Ge(5)], special: None, faces: &[&[Eq(3), Eq(3), Ge(5)]] }];
    let poor_b = [
        SS,
        SS,
        SS,
        WalkSpec {
            pattern: &[Eq(3), Eq(4), Ge(5), Eq(3)],
            special: None,
            faces: &[&[Eq(3), Eq(4), Ge(5)], &[Eq(3), Eq(3), Ge(4)], &[Eq(3), Eq(3), Ge(4)]],
        },
    ];
    let poor_c = [
        SS,
        SS,
        S343,
        WalkSpec {
            pattern: &[Eq(3), Ge(5), Eq(3)],
            special: None,
            faces: &[&[Eq(3), Eq(3), Ge(5)], &[Eq(3), Eq(3), Ge(5)]],
        },
    ];
    if walks_are(&poor_a) || walks_are(&poor_b) || walks_are(&poor_c) {
        return TenFaceClass::Poor;
    }

    let bad = [
        SS,
        SS,
        SS,
        WalkSpec {
            pattern: &[Eq(3), Eq(4), Eq(4), Eq(3)],
            special: None,
            faces: &[&[Eq(3), Eq(3), Eq(4)], &[Eq(3), Eq(3), Eq(4)], &[Eq(4), Eq(4), Ge(4)]],
        },
    ];
    if walks_are(&bad) {
        return TenFaceClass::Bad;
    }
    TenFaceClass::Plain
}

type CtlSpec = Box<dyn Fn(&Controlled) -> bool>;

fn shaped(pat: &'static [D]) -> CtlSpec {
    Box::new(move |c| cyclic_fits(&c.face_degrees, pat))
}

fn via_three_four(inner: CtlSpec) -> CtlSpec {
    Box::new(move |c| matches!(c.edge, (3, 4) | (4, 3)) && inner(c))
}

pub fn classify_8face(p: &PlaneGraph, f: FaceId) -> EightFaceClass {
    if p.face_len(f) != 8 || !p.face(f).is_cycle() {
        return EightFaceClass::None;
    }
    let v = view(p, f, &maximal_walks(p, f));
    let controlled_are = |specs: Vec<CtlSpec>| bijection(&v.controlled, &specs, &|c: &Controlled, s: &CtlSpec| s(c));
    const T333: &[D] = &[Eq(3), Eq(3), Eq(3)];
    const Q3333: &[D] = &[Eq(3), Eq(3), Eq(3), Eq(3)];

    if v.rich_four && controlled_are(vec![shaped(Q3333), shaped(T333), shaped(T333)]) {
        return EightFaceClass::P1;
    }
    let lengths: Vec<usize> = {
        let mut l: Vec<usize> = v.controlled.iter().map(|c| c.face_degrees.len()).collect();
        l.sort_unstable();
        l
    };
    if v.rich_four && lengths == [3, 3, 4, 4] && bijection(&v.walks, &[S343, SS, SS], &walk_ok) {
        return EightFaceClass::P2;
    }
    if controlled_are(vec![shaped(T333), shaped(Q3333), shaped(Q3333), via_three_four(shaped(&[Eq(3), Eq(4), Ge(4)]))])
    {
        return EightFaceClass::P3;
    }
    let big_four: CtlSpec =
        Box::new(|c: &Controlled| c.face_degrees.len() == 4 && c.face_degrees.iter().filter(|&&d| d >= 4).count() >= 2);
    if controlled_are(vec![shaped(Q3333), shaped(T333), shaped(T333), via_three_four(big_four)]) {
        return EightFaceClass::P4;
    }
    EightFaceClass::None
}

/// True when the degrees around face `g` fit `(3⁺, 4⁺, 4⁺, 4⁺)`.
pub fn is_heavy_four_face(p: &PlaneGraph, g: FaceId) -> bool {
    cyclic_fits(&face_degrees(p, g), &[Ge(3), Ge(4), Ge(4), Ge(4)])
}
