//! Kauffman states, their dual forest pairs and clock moves.

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, EdgeEnd, Line, StrandTrace};
use crate::planar::{Color, FaceComplex, FaceId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("no assignment of meridians to bottom faces")]
    NoMeridianMatching,
    #[error("{0} assignments of meridians to bottom faces; expected exactly one")]
    AmbiguousMeridians(usize),
    #[error("state {state:?}: {reason}")]
    Forest { state: Vec<u8>, reason: String },
}

/// One generator: a marked quadrant at every crossing and a face at every
/// meridian, together covering every face except U exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KauffmanState {
    /// Quadrant (0 = N, 1 = E, 2 = S, 3 = W) per crossing ordinal.
    pub markers: Vec<u8>,
    pub meridians: Vec<FaceId>,
}

impl KauffmanState {
    pub fn face(&self, fc: &FaceComplex, crossing: usize) -> FaceId {
        fc.quadrants[crossing][self.markers[crossing] as usize]
    }
}

/// The unique way to give each meridian one of its two faces, U excluded.
pub fn meridian_assignment(fc: &FaceComplex) -> Result<Vec<FaceId>, StateError> {
    let k = fc.strands;
    let mut found = vec![];
    let mut cur = vec![];
    fn go(fc: &FaceComplex, i: usize, cur: &mut Vec<FaceId>, found: &mut Vec<Vec<FaceId>>) {
        if i == fc.strands {
            found.push(cur.clone());
            return;
        }
        let (l, r) = fc.meridian_faces(i);
        for f in [l, r] {
            if f != fc.u && !cur.contains(&f) {
                cur.push(f);
                go(fc, i + 1, cur, found);
                cur.pop();
            }
        }
    }
    go(fc, 0, &mut cur, &mut found);
    match found.len() {
        0 => Err(StateError::NoMeridianMatching),
        1 => Ok(found.pop().unwrap()),
        n => Err(StateError::AmbiguousMeridians(n)),
    }
    .inspect(|m| {
        debug_assert_eq!(m.len(), k);
    })
}

/// All states, crossings taken in event order and quadrants in the order
/// N, E, S, W. A complex whose face count does not match its crossings has
/// no states.
pub fn enumerate_states(fc: &FaceComplex) -> Result<Vec<KauffmanState>, StateError> {
    let meridians = meridian_assignment(fc)?;
    if fc.check_connected().is_err() {
        return Ok(vec![]);
    }
    let nf = fc.face_count();
    let mut used = vec![false; nf];
    used[fc.u] = true;
    for &f in &meridians {
        used[f] = true;
    }
    // distinct faces per crossing, for forward checking
    let faces_of: Vec<Vec<FaceId>> = fc
        .quadrants
        .iter()
        .map(|q| {
            let mut v = q.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let mut claimants = vec![0usize; nf];
    for fs in &faces_of {
        for &f in fs {
            claimants[f] += 1;
        }
    }

    struct Search<'a> {
        fc: &'a FaceComplex,
        faces_of: Vec<Vec<FaceId>>,
        used: Vec<bool>,
        claimants: Vec<usize>,
        markers: Vec<u8>,
        meridians: Vec<FaceId>,
        out: Vec<KauffmanState>,
    }

    impl Search<'_> {
        fn go(&mut self, c: usize) {
            if c == self.fc.crossing_count() {
                self.out.push(KauffmanState { markers: self.markers.clone(), meridians: self.meridians.clone() });
                return;
            }
            for &f in &self.faces_of[c] {
                self.claimants[f] -= 1;
            }
            for q in 0..4u8 {
                let f = self.fc.quadrants[c][q as usize];
                if self.used[f] {
                    continue;
                }
                // every other free face this crossing touches must keep a claimant
                if self.faces_of[c].iter().any(|&g| g != f && !self.used[g] && self.claimants[g] == 0) {
                    continue;
                }
                self.used[f] = true;
                self.markers[c] = q;
                self.go(c + 1);
                self.used[f] = false;
            }
            for &f in &self.faces_of[c] {
                self.claimants[f] += 1;
            }
        }
    }

    let mut search =
        Search { fc, faces_of, used, claimants, markers: vec![0; fc.crossing_count()], meridians, out: vec![] };
    search.go(0);
    Ok(search.out)
}

/// A region-graph edge chosen by a state, oriented into the marked face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForestEdge {
    pub crossing: usize,
    pub from: FaceId,
    pub to: FaceId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestPair {
    /// Edges of the black graph.
    pub black: Vec<ForestEdge>,
    /// Edges of the white graph.
    pub white: Vec<ForestEdge>,
}

/// The dual forest pair of a state. Each marked black face receives the black
/// edge of its crossing, each marked white face the white edge; both forests
/// are checked to be acyclic with exactly one root per component.
pub fn to_forest_pair(fc: &FaceComplex, s: &KauffmanState) -> Result<ForestPair, StateError> {
    let fail = |reason: String| StateError::Forest { state: s.markers.clone(), reason };
    let mut pair = ForestPair { black: vec![], white: vec![] };
    let mut parent: HashMap<FaceId, FaceId> = HashMap::new();
    for (c, q) in fc.quadrants.iter().enumerate() {
        let m = s.markers[c] as usize;
        let to = q[m];
        let from = q[(m + 2) % 4];
        let edge = ForestEdge { crossing: c, from, to };
        match fc.colors[to] {
            Color::Black => pair.black.push(edge),
            Color::White => pair.white.push(edge),
        }
        if to == from {
            return Err(fail(format!("crossing {c} marks a face that meets it twice")));
        }
        if parent.insert(to, from).is_some() {
            return Err(fail(format!("face {to} marked twice")));
        }
    }
    let roots: HashSet<FaceId> = fc.bottom.iter().copied().collect();
    for f in 0..fc.face_count() {
        let is_root = roots.contains(&f);
        if is_root && parent.contains_key(&f) {
            return Err(fail(format!("root face {f} has an incoming edge")));
        }
        if !is_root && !parent.contains_key(&f) {
            return Err(fail(format!("face {f} is not reached")));
        }
        // walk to the root; more steps than faces means a cycle
        let mut v = f;
        let mut steps = 0;
        while let Some(&p) = parent.get(&v) {
            if fc.colors[p] != fc.colors[f] {
                return Err(fail(format!("edge into face {v} changes colour")));
            }
            v = p;
            steps += 1;
            if steps > fc.face_count() {
                return Err(fail(format!("cycle through face {f}")));
            }
        }
        if !roots.contains(&v) {
            return Err(fail(format!("face {f} leads to non-root {v}")));
        }
    }
    Ok(pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Clock,
    Counterclock,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Clock => Direction::Counterclock,
            Direction::Counterclock => Direction::Clock,
        }
    }
}

/// Where a move happens: the port between the old and new marker at each
/// of the two crossings. The two faces involved meet along the projection
/// starting from both ports. Usually the ports are the ends of one edge;
/// when a kink sits inside a face the stretch runs around it through the
/// crossings in `via`. When the faces meet along two separate stretches
/// there is no single path and `via` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveSite {
    pub a: (usize, u8),
    pub b: (usize, u8),
    pub via: Option<Vec<usize>>,
    /// Component leaving `a`.
    pub component: usize,
    /// Strand whose variable the stretch carries.
    pub color: usize,
    /// Whether the strand at each port passes over.
    pub over_a: bool,
    pub over_b: bool,
    /// Whether the strand runs from end `a` to end `b`.
    pub flows_ab: bool,
}

#[derive(Clone, Debug)]
pub struct ClockMove {
    pub direction: Direction,
    pub site: MoveSite,
    pub target: KauffmanState,
}

/// Face complex, states and the crossing-to-crossing edges of one diagram.
#[derive(Clone, Debug)]
pub struct StateModel {
    pub fc: FaceComplex,
    trace: StrandTrace,
    /// The crossing port at the far end of each crossing port's edge.
    links: HashMap<(usize, u8), (usize, u8)>,
}

impl StateModel {
    pub fn new(d: &Diagram) -> StateModel {
        let fc = FaceComplex::build(d);
        let trace = d.trace();
        let ord = |e: usize| trace.crossing_of_event[e].expect("crossing event");
        let mut links = HashMap::new();
        for edge in d.projection().crossing_edges(d.events()) {
            if let (EdgeEnd::Crossing { event: ea, port: pa }, EdgeEnd::Crossing { event: eb, port: pb }) =
                (edge.a, edge.b)
            {
                links.insert((ord(ea), pa), (ord(eb), pb));
                links.insert((ord(eb), pb), (ord(ea), pa));
            }
        }
        StateModel { fc, trace, links }
    }

    pub fn states(&self) -> Result<Vec<KauffmanState>, StateError> {
        enumerate_states(&self.fc)
    }

    fn site(&self, a: (usize, u8), b: (usize, u8)) -> MoveSite {
        let (xa, xb) = (&self.trace.crossings[a.0], &self.trace.crossings[b.0]);
        let component = xa.port_comp[a.1 as usize];
        MoveSite {
            a,
            b,
            via: self.stretch(a, b),
            component,
            color: self.trace.color(component),
            over_a: Line::of_port(a.1) == xa.over_line,
            over_b: Line::of_port(b.1) == xb.over_line,
            flows_ab: !xa.port_in[a.1 as usize],
        }
    }

    /// Follows the boundary between the two faces beside port `from` until
    /// it reaches port `to`, returning the crossings passed on the way.
    fn stretch(&self, from: (usize, u8), to: (usize, u8)) -> Option<Vec<usize>> {
        let q = &self.fc.quadrants;
        let sides = |c: usize, p: u8| {
            let mut f = [q[c][(p as usize + 3) % 4], q[c][p as usize]];
            f.sort_unstable();
            f
        };
        let want = sides(from.0, from.1);
        let mut via = vec![];
        let mut at = from;
        for _ in 0..=q.len() {
            let (c, p) = *self.links.get(&at)?;
            if (c, p) == to {
                return Some(via);
            }
            // the boundary turns around the one quadrant it shares with the next port
            let next = [(p + 1) % 4, (p + 3) % 4].into_iter().find(|&r| sides(c, r) == want)?;
            via.push(c);
            at = (c, next);
        }
        None
    }

    /// All states one clock or counter-clock move away. A move swaps the
    /// markers of two crossings that both touch the same two faces, each
    /// marker turning one quadrant in the same sense about its crossing;
    /// it is clockwise when that sense is clockwise.
    pub fn clock_neighbors(&self, s: &KauffmanState) -> Vec<ClockMove> {
        let q = &self.fc.quadrants;
        let n = q.len();
        let mut out: Vec<ClockMove> = vec![];
        for [c, c2] in (0..n).array_combinations() {
            let (m, m2) = (s.markers[c] as usize, s.markers[c2] as usize);
            for (direction, turn) in [(Direction::Clock, 1), (Direction::Counterclock, 3)] {
                let (new, new2) = ((m + turn) % 4, (m2 + turn) % 4);
                if q[c][new] != q[c2][m2] || q[c2][new2] != q[c][m] {
                    continue;
                }
                let mut target = s.clone();
                target.markers[c] = new as u8;
                target.markers[c2] = new2 as u8;
                if out.iter().any(|mv| mv.target == target) || to_forest_pair(&self.fc, &target).is_err() {
                    continue;
                }
                // the ports between the old and new quadrants
                let (port, port2) = if turn == 1 { (new, new2) } else { (m, m2) };
                let site = self.site((c, port as u8), (c2, port2 as u8));
                out.push(ClockMove { direction, site, target });
            }
        }
        out
    }

    /// Breadth-first search over clock moves from the first state reaches
    /// every state.
    pub fn clock_connectivity(&self) -> Result<bool, StateError> {
        let states = self.states()?;
        let Some(first) = states.first() else { return Ok(true) };
        let all: HashSet<&KauffmanState> = states.iter().collect();
        let mut seen: HashSet<KauffmanState> = HashSet::from([first.clone()]);
        let mut queue = VecDeque::from([first.clone()]);
        while let Some(s) = queue.pop_front() {
            for mv in self.clock_neighbors(&s) {
                if !all.contains(&mv.target) {
                    return Ok(false);
                }
                if seen.insert(mv.target.clone()) {
                    queue.push_back(mv.target);
                }
            }
        }
        Ok(seen.len() == states.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_mld;

    const TREFOIL: &str = "strands 1\ncap 2\nx+ 1\nx+ 1\nx+ 1\ncup 2\n";
    const CLASP1: &str = "strands 2\ncap 2\nx- 1\nx- 1\nx+ 2\ncup 3\n";

    fn model(text: &str) -> StateModel {
        StateModel::new(&parse_mld(text).unwrap())
    }

    #[test]
    fn trivial_has_one_state() {
        for k in 1..5 {
            let m = StateModel::new(&Diagram::trivial(k));
            let states = m.states().unwrap();
            assert_eq!(states.len(), 1);
            assert_eq!(states[0].meridians, (1..=k).collect::<Vec<_>>());
            assert!(m.clock_neighbors(&states[0]).is_empty());
            assert!(m.clock_connectivity().unwrap());
            let pair = to_forest_pair(&m.fc, &states[0]).unwrap();
            assert!(pair.black.is_empty() && pair.white.is_empty());
        }
    }

    #[test]
    fn braid_has_one_state() {
        let m = StateModel::new(&Diagram::braid(3, &[1, -2, 1, 2, -1]).unwrap());
        let states = m.states().unwrap();
        assert_eq!(states.len(), 1);
        // every marker sits between the two incoming edges
        assert!(states[0].markers.iter().all(|&q| q == 0));
    }

    #[test]
    fn trefoil_strand_states() {
        let m = model(TREFOIL);
        let states = m.states().unwrap();
        assert_eq!(states.len(), 3);
        for s in &states {
            to_forest_pair(&m.fc, s).unwrap();
        }
        assert!(m.clock_connectivity().unwrap());
    }

    #[test]
    fn clasp_states_form_a_path() {
        let m = model(CLASP1);
        let states = m.states().unwrap();
        assert_eq!(states.len(), 3);
        let degrees: Vec<usize> = states.iter().map(|s| m.clock_neighbors(s).len()).collect();
        let mut sorted = degrees.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 2]);
        assert!(m.clock_connectivity().unwrap());
    }

    #[test]
    fn moves_are_mutually_inverse() {
        let m = model("strands 2\ncap 2\nx- 1\nx- 1\nx- 1\nx- 1\nx+ 2\ncup 3\n");
        for s in m.states().unwrap() {
            for mv in m.clock_neighbors(&s) {
                let back = m.clock_neighbors(&mv.target);
                let rev = back.iter().find(|b| b.target == s).expect("inverse move");
                assert_eq!(rev.direction, mv.direction.reverse());
            }
        }
    }

    #[test]
    fn moves_pass_around_a_kink() {
        // the first crossing is a kink lying between the faces the other
        // three crossings share
        let m = model("strands 3\ncap 3\nx+ 3\nx- 4\nx- 4\nx+ 2\ncup 3\n");
        let states = m.states().unwrap();
        assert_eq!(states.len(), 3);
        let around: Vec<ClockMove> =
            states.iter().flat_map(|s| m.clock_neighbors(s)).filter(|mv| mv.site.via != Some(vec![])).collect();
        assert_eq!(around.len(), 2);
        assert!(around.iter().all(|mv| mv.site.via == Some(vec![0])));
        assert!(m.clock_connectivity().unwrap());
    }

    #[test]
    fn moves_between_faces_meeting_twice() {
        // faces 2 and 4 meet along two separate edges, so crossings 1 and 6
        // can trade markers without sharing an edge
        let m = model(
            "strands 1\ncap 1\ncap 1\ncup 2\nx- 2\nx- 2\ncap 3\nx+ 2\nx- 3\nx+ 2\nx+ 2\ncup 3\nx+ 1\ncap 2\nx- 2\ncup 1\ncup 2\n",
        );
        let states = m.states().unwrap();
        assert_eq!(states.len(), 15);
        let split: Vec<ClockMove> =
            states.iter().flat_map(|s| m.clock_neighbors(s)).filter(|mv| mv.site.via.is_none()).collect();
        assert_eq!(split.len(), 10);
        assert!(split.iter().all(|mv| (mv.site.a.0, mv.site.b.0) == (1, 6)));
        assert!(m.clock_connectivity().unwrap());
    }

    #[test]
    fn no_marker_in_u() {
        let m = model(CLASP1);
        for s in m.states().unwrap() {
            for c in 0..s.markers.len() {
                assert_ne!(s.face(&m.fc, c), m.fc.u);
            }
            assert!(!s.meridians.contains(&m.fc.u));
        }
    }
}
