//! Ring gadgets: a central face bounded by a cycle, with short faces glued
//! to chosen edges on the outside and pendant leaves padding vertex degrees.
//!
//! Cycle vertices are named `c0 .. c{n-1}`. A triangle apex on edge
//! `c_i c_{i+1}` is `e{i}`; the off-cycle vertices of a longer ear are
//! `e{i}a, e{i}b, ...` starting next to `c_i`. Leaves are `x0, x1, ...`.

use std::f64::consts::TAU;

use crate::embedding::{PlaneGraph, RotationSystem};
use crate::graph::{Graph, Vertex};
use crate::io::Fixture;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ear {
    /// A triangle whose apex has the given degree.
    Triangle { apex: usize },
    /// A square whose off-cycle vertices have degrees `near` (next to `c_i`)
    /// and `far`.
    Square { near: usize, far: usize },
    /// A pentagon whose off-cycle vertices have the given degrees, starting
    /// next to `c_i`.
    Pentagon { degrees: [usize; 3] },
}

impl Ear {
    fn interior(self) -> Vec<usize> {
        match self {
            Ear::Triangle { apex } => vec![apex],
            Ear::Square { near, far } => vec![near, far],
            Ear::Pentagon { degrees } => degrees.to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Ring {
    name: String,
    degrees: Vec<usize>,
    ears: Vec<(usize, Ear)>,
}

impl Ring {
    /// A cycle whose vertices get the given target degrees.
    pub fn new(name: &str, degrees: &[usize]) -> Self {
        assert!(degrees.len() >= 3, "a ring needs at least three vertices");
        Ring { name: name.to_string(), degrees: degrees.to_vec(), ears: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn triangle(mut self, i: usize, apex: usize) -> Self {
        self.ears.push((i, Ear::Triangle { apex }));
        self
    }

    pub fn square(mut self, i: usize, near: usize, far: usize) -> Self {
        self.ears.push((i, Ear::Square { near, far }));
        self
    }

    pub fn pentagon(mut self, i: usize, degrees: [usize; 3]) -> Self {
        self.ears.push((i, Ear::Pentagon { degrees }));
        self
    }

    pub fn ear(mut self, i: usize, ear: Ear) -> Self {
        self.ears.push((i, ear));
        self
    }

    /// Builds the embedded gadget. The central face is recorded as the
    /// fixture's face; `h` is left empty.
    ///
    /// # Panics
    /// If a target degree is below what the ears already force, or an edge
    /// carries two ears.
    pub fn build(&self) -> Fixture {
        let n = self.degrees.len();
        let step = TAU / n as f64;
        let polar = |r: f64, a: f64| (r * a.cos(), r * a.sin());

        let mut names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let mut xy: Vec<(f64, f64)> = (0..n).map(|i| polar(10.0, step * i as f64)).collect();
        let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut want: Vec<(Vertex, usize, f64, f64)> = Vec::new();

        let mut ears = self.ears.clone();
        ears.sort_by_key(|e| e.0);
        for w in ears.windows(2) {
            assert_ne!(w[0].0, w[1].0, "edge c{} carries two ears", w[0].0);
        }
        let add = |name: String, at: (f64, f64), names: &mut Vec<String>, xy: &mut Vec<(f64, f64)>| {
            names.push(name);
            xy.push(at);
            names.len() - 1
        };
        for &(i, ear) in &ears {
            let (a, b) = (i % n, (i + 1) % n);
            let base = step * i as f64;
            let inner = ear.interior();
            let m = inner.len();
            let mut prev = a;
            for (j, &d) in inner.iter().enumerate() {
                let t = base + step * (j + 1) as f64 / (m + 1) as f64;
                let label = if m == 1 { format!("e{i}") } else { format!("e{i}{}", (b'a' + j as u8) as char) };
                let x = add(label, polar(14.0, t), &mut names, &mut xy);
                edges.push((prev, x));
                want.push((x, d, 17.0, t));
                prev = x;
            }
            edges.push((prev, b));
        }
        for (i, &d) in self.degrees.iter().enumerate() {
            want.push((i, d, 12.0, step * i as f64));
        }

        let mut leaves = 0;
        for (v, target, r, t) in want {
            let have = edges.iter().filter(|&&(a, b)| a == v || b == v).count();
            assert!(target >= have, "vertex {} already has degree {have} > {target}", names[v]);
            let extra = target - have;
            for j in 0..extra {
                let offset = (j as f64 - (extra as f64 - 1.0) / 2.0) * 0.06;
                let x = add(format!("x{leaves}"), polar(r, t + offset), &mut names, &mut xy);
                leaves += 1;
                edges.push((v, x));
            }
        }

        let graph = Graph::new(names.len(), edges).expect("ring edges are simple");
        let rot = RotationSystem::from_coordinates(&graph, &xy);
        let plane = PlaneGraph::new(graph.clone(), rot).expect("ring drawing is planar");
        Fixture {
            name: self.name.clone(),
            k: 3,
            names,
            graph,
            plane: Some(plane),
            h: Vec::new(),
            order: None,
            face: Some((0..n).collect()),
        }
    }
}

/// The face-classification gadgets, keyed by fixture file stem.
pub fn face_gadgets() -> Vec<Ring> {
    vec![
        // a 3-controlling special (3,4,3)-path, a special (4,4,4,3)-path and a
        // non-special maximal (3,4,3)-path containing a special (4,3)-path
        Ring::new("ten_cycle_special_paths", &[3, 4, 3, 4, 4, 4, 3, 3, 4, 3])
            .triangle(0, 3)
            .triangle(1, 3)
            .triangle(3, 3)
            .triangle(4, 3)
            .triangle(5, 3)
            .triangle(7, 4)
            .triangle(8, 3),
        Ring::new("ten_face_special_nonspecial_edge", &[3, 3, 3, 3, 3, 3, 3, 3, 3, 4])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(6, 3)
            .triangle(8, 4),
        Ring::new("ten_face_special_rich_four", &[3, 3, 3, 3, 3, 3, 3, 4, 3, 4])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(6, 3)
            .triangle(7, 3),
        Ring::new("ten_face_poor_three_five", &[3, 3, 3, 3, 3, 3, 3, 3, 3, 5])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(6, 3)
            .triangle(8, 3),
        Ring::new("ten_face_poor_three_four_five_three", &[3, 3, 3, 3, 3, 3, 3, 4, 5, 3])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(6, 3)
            .triangle(7, 3)
            .triangle(8, 3),
        Ring::new("ten_face_poor_three_five_three", &[3, 3, 3, 3, 3, 4, 3, 3, 5, 3])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(5, 3)
            .triangle(7, 3)
            .triangle(8, 3),
        Ring::new("ten_face_bad", &[3, 3, 3, 3, 3, 3, 3, 4, 4, 3])
            .triangle(0, 3)
            .triangle(2, 3)
            .triangle(4, 3)
            .triangle(6, 3)
            .triangle(7, 4)
            .triangle(8, 3),
        Ring::new("eight_face_p1", &[3, 3, 3, 3, 3, 3, 3, 4]).triangle(0, 3).square(2, 3, 3).triangle(4, 3),
        Ring::new("eight_face_p2", &[3, 4, 3, 3, 3, 3, 3, 4])
            .triangle(0, 3)
            .square(1, 3, 3)
            .triangle(3, 3)
            .square(5, 3, 3),
        Ring::new("eight_face_p3", &[3, 3, 3, 3, 3, 4, 3, 3])
            .triangle(0, 3)
            .square(2, 3, 3)
            .triangle(4, 4)
            .square(6, 3, 3),
        Ring::new("eight_face_p4", &[3, 3, 3, 3, 3, 3, 3, 4])
            .triangle(0, 3)
            .square(2, 3, 3)
            .triangle(4, 3)
            .square(6, 3, 4),
        Ring::new("seven_face_theta", &[3, 4, 3, 3, 3, 3, 3]).triangle(0, 3).triangle(1, 3).triangle(3, 3),
    ]
}
