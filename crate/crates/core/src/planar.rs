//! Faces of the square minus the projection, their checkerboard colouring and
//! the black and white region graphs.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, Event};

pub type FaceId = usize;

/// Quadrant names in clockwise order; quadrant `q` lies between ports `q`
/// and `q + 1`, so N is between NW and NE.
pub const QUADRANT_NAMES: [&str; 4] = ["N", "E", "S", "W"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("projection is not connected: {faces} faces for {crossings} crossings and {strands} strands")]
    Disconnected { faces: usize, crossings: usize, strands: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceComplex {
    pub strands: usize,
    pub colors: Vec<Color>,
    /// Faces in the quadrants N, E, S, W of each crossing, by crossing ordinal.
    pub quadrants: Vec<[FaceId; 4]>,
    /// Faces along the bottom edge, left to right (`strands + 1` of them).
    pub bottom: Vec<FaceId>,
    /// The leftmost face.
    pub u: FaceId,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn push(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

impl FaceComplex {
    /// Sweeps the event levels top to bottom, tracking the face in each gap
    /// between neighbouring arcs. Faces are numbered by creation order.
    pub fn build(d: &Diagram) -> FaceComplex {
        let mut uf = UnionFind(vec![]);
        let mut parity = vec![];
        let mut gaps: Vec<usize> = (0..=d.strands())
            .map(|g| {
                parity.push(g % 2);
                uf.push()
            })
            .collect();
        let mut raw_quadrants = vec![];
        for ev in d.events() {
            match *ev {
                Event::Cross { pos, .. } => {
                    let north = gaps[pos + 1];
                    let south = uf.push();
                    parity.push((pos + 1) % 2);
                    raw_quadrants.push([north, gaps[pos + 2], south, gaps[pos]]);
                    gaps[pos + 1] = south;
                }
                Event::Cap(pos) => {
                    let outer = gaps[pos];
                    let inner = uf.push();
                    parity.push((pos + 1) % 2);
                    gaps.splice(pos + 1..pos + 1, [inner, outer]);
                }
                Event::Cup(pos) => {
                    uf.union(gaps[pos], gaps[pos + 2]);
                    gaps.drain(pos + 1..pos + 3);
                }
            }
        }
        // renumber the classes by their smallest member
        let n = uf.0.len();
        let mut id = vec![usize::MAX; n];
        let mut colors = vec![];
        for raw in 0..n {
            let r = uf.find(raw);
            if id[r] == usize::MAX {
                id[r] = colors.len();
                colors.push(if parity[r] == 0 { Color::White } else { Color::Black });
            }
        }
        let mut face = |raw: usize| id[uf.find(raw)];
        let quadrants = raw_quadrants.iter().map(|q| q.map(&mut face)).collect();
        let bottom: Vec<FaceId> = gaps.iter().map(|&g| face(g)).collect();
        let u = bottom[0];
        FaceComplex { strands: d.strands(), colors, quadrants, bottom, u }
    }

    pub fn face_count(&self) -> usize {
        self.colors.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.quadrants.len()
    }

    /// The two faces beside meridian `i`.
    pub fn meridian_faces(&self, i: usize) -> (FaceId, FaceId) {
        (self.bottom[i], self.bottom[i + 1])
    }

    /// Face count matches a connected projection (or side-by-side blocks).
    pub fn check_connected(&self) -> Result<(), PlanarError> {
        let expected = self.crossing_count() + self.strands + 1;
        if self.face_count() != expected {
            return Err(PlanarError::Disconnected {
                faces: self.face_count(),
                crossings: self.crossing_count(),
                strands: self.strands,
            });
        }
        Ok(())
    }

    pub fn black_graph(&self) -> Result<RegionGraph, PlanarError> {
        self.region_graph(Color::Black)
    }

    pub fn white_graph(&self) -> Result<RegionGraph, PlanarError> {
        self.region_graph(Color::White)
    }

    fn region_graph(&self, color: Color) -> Result<RegionGraph, PlanarError> {
        self.check_connected()?;
        let vertices: Vec<FaceId> = (0..self.face_count()).filter(|&f| self.colors[f] == color).collect();
        let edges = self
            .quadrants
            .iter()
            .enumerate()
            .map(|(c, q)| {
                let first = if self.colors[q[0]] == color { 0 } else { 1 };
                RegionEdge { crossing: c, faces: (q[first], q[first + 2]) }
            })
            .collect();
        let mut roots: Vec<FaceId> = self.bottom.iter().copied().filter(|&f| self.colors[f] == color).collect();
        roots.dedup();
        Ok(RegionGraph { color, vertices, edges, roots })
    }
}

/// The edge contributed by one crossing: it joins the two same-coloured
/// opposite quadrants (N and S, or E and W).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionEdge {
    pub crossing: usize,
    pub faces: (FaceId, FaceId),
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionGraph {
    pub color: Color,
    pub vertices: Vec<FaceId>,
    pub edges: Vec<RegionEdge>,
    /// Vertices on the bottom edge; every forest component holds one.
    pub roots: Vec<FaceId>,
}

impl RegionGraph {
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else { return true };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let w = match e.faces {
                    (a, b) if a == v => b,
                    (a, b) if b == v => a,
                    _ => continue,
                };
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_mld;

    #[test]
    fn trivial_faces() {
        let fc = FaceComplex::build(&Diagram::trivial(2));
        assert_eq!(fc.face_count(), 3);
        assert_eq!(fc.u, 0);
        assert_eq!(fc.colors, vec![Color::White, Color::Black, Color::White]);
        let g = fc.black_graph().unwrap();
        assert_eq!(g.roots, vec![1]);
        assert!(g.edges.is_empty());
        let g = FaceComplex::build(&Diagram::trivial(5)).black_graph().unwrap();
        assert_eq!(g.roots.len(), 3);
    }

    #[test]
    fn twist_faces() {
        let d = parse_mld("strands 2\nx+ 1\nx+ 1\n").unwrap();
        let fc = FaceComplex::build(&d);
        assert_eq!(fc.face_count(), 5);
        fc.check_connected().unwrap();
        assert_eq!(fc.quadrants[0], [1, 2, 3, 0]);
        assert_eq!(fc.quadrants[1], [3, 2, 4, 0]);
        assert_eq!(fc.bottom, vec![0, 4, 2]);
    }

    #[test]
    fn trefoil_strand_faces() {
        let d = parse_mld("strands 1\ncap 2\nx+ 1\nx+ 1\nx+ 1\ncup 2\n").unwrap();
        let fc = FaceComplex::build(&d);
        assert_eq!(fc.face_count(), 5);
        assert_eq!(fc.colors[fc.u], Color::White);
        fc.check_connected().unwrap();
    }

    #[test]
    fn quadrants_alternate_colors() {
        let d = parse_mld("strands 2\ncap 2\nx- 1\nx- 1\nx+ 2\ncup 3\n").unwrap();
        let fc = FaceComplex::build(&d);
        for q in &fc.quadrants {
            for i in 0..4 {
                assert_ne!(fc.colors[q[i]], fc.colors[q[(i + 1) % 4]]);
            }
        }
        let black = fc.black_graph().unwrap();
        let white = fc.white_graph().unwrap();
        assert!(black.is_connected() && white.is_connected());
        assert_eq!(black.edges.len(), white.edges.len());
        assert_eq!(black.roots.len() + white.roots.len(), 3);
    }

    #[test]
    fn split_circle_is_flagged() {
        let d = Diagram::with_closed(
            1,
            vec![Event::Cap(1), Event::Cup(1)],
            vec![crate::diagram::ClosedComponent { color: 0, seed: None }],
        )
        .unwrap();
        let fc = FaceComplex::build(&d);
        assert!(matches!(fc.black_graph(), Err(PlanarError::Disconnected { .. })));
    }
}
