use std::collections::HashMap;

use super::Event;

/// An attachment point in the projection graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Top(usize),
    Bottom(usize),
    /// Crossing event index and port: NW = 0, NE = 1, SE = 2, SW = 3.
    Cross(usize, u8),
    /// Cap or cup event index and leg: left = 0, right = 1.
    Turn(usize, u8),
}

impl Port {
    /// The port on the far side of the node this port belongs to, following
    /// the same strand.
    pub fn through(self) -> Option<Port> {
        match self {
            Port::Cross(e, q) => Some(Port::Cross(e, (q + 2) % 4)),
            Port::Turn(e, s) => Some(Port::Turn(e, 1 - s)),
            Port::Top(_) | Port::Bottom(_) => None,
        }
    }

    /// True for the two upper ports of a crossing and the legs of a cup.
    pub fn faces_up(self, events: &[Event]) -> bool {
        match self {
            Port::Cross(_, q) => q < 2,
            Port::Turn(e, _) => matches!(events[e], Event::Cup(_)),
            Port::Top(_) => false,
            Port::Bottom(_) => true,
        }
    }
}

/// Where an edge of the projection graph ends: a crossing port or the
/// boundary of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeEnd {
    Crossing { event: usize, port: u8 },
    Boundary(Port),
}

/// An edge between two vertices of the 4-valent projection graph; caps and
/// cups are interior points of edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjEdge {
    pub a: EdgeEnd,
    pub b: EdgeEnd,
}

/// The projection as a port graph.
#[derive(Clone, Debug)]
pub struct Projection {
    links: HashMap<Port, Port>,
}

impl Projection {
    pub(crate) fn build(strands: usize, events: &[Event]) -> Self {
        let mut links = HashMap::new();
        let mut link = |a: Port, b: Port| {
            links.insert(a, b);
            links.insert(b, a);
        };
        let mut cur: Vec<Port> = (0..strands).map(Port::Top).collect();
        for (e, ev) in events.iter().enumerate() {
            match *ev {
                Event::Cross { pos, .. } => {
                    link(cur[pos], Port::Cross(e, 0));
                    link(cur[pos + 1], Port::Cross(e, 1));
                    cur[pos] = Port::Cross(e, 3);
                    cur[pos + 1] = Port::Cross(e, 2);
                }
                Event::Cap(pos) => {
                    cur.insert(pos, Port::Turn(e, 1));
                    cur.insert(pos, Port::Turn(e, 0));
                }
                Event::Cup(pos) => {
                    link(cur[pos], Port::Turn(e, 0));
                    link(cur[pos + 1], Port::Turn(e, 1));
                    cur.drain(pos..pos + 2);
                }
            }
        }
        for (i, p) in cur.into_iter().enumerate() {
            link(p, Port::Bottom(i));
        }
        Projection { links }
    }

    pub fn linked(&self, p: Port) -> Port {
        self.links[&p]
    }

    /// Follows the projection from a crossing port through caps and cups to
    /// the next crossing port or the boundary.
    pub fn edge_from(&self, event: usize, port: u8) -> EdgeEnd {
        let mut p = self.linked(Port::Cross(event, port));
        loop {
            match p {
                Port::Cross(e, q) => return EdgeEnd::Crossing { event: e, port: q },
                Port::Turn(..) => p = self.linked(p.through().unwrap()),
                Port::Top(_) | Port::Bottom(_) => return EdgeEnd::Boundary(p),
            }
        }
    }

    /// All crossing-to-crossing edges, each listed once.
    pub fn crossing_edges(&self, events: &[Event]) -> Vec<ProjEdge> {
        let mut out = vec![];
        for (e, ev) in events.iter().enumerate() {
            if !ev.is_crossing() {
                continue;
            }
            for q in 0..4u8 {
                let a = EdgeEnd::Crossing { event: e, port: q };
                let b = self.edge_from(e, q);
                if matches!(b, EdgeEnd::Crossing { .. }) && a <= b {
                    out.push(ProjEdge { a, b });
                }
            }
        }
        out
    }
}
