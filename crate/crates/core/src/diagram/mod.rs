//! String-link projections as top-to-bottom Morse event lists.
//!
//! A diagram starts with `k` strand endpoints on the top edge of the unit
//! square and reads downward one event per level. Positions are 0-based
//! internally; the MLD text format is 1-based.

mod mld;
mod ops;
mod projection;
mod trace;

use std::fmt;

use thiserror::Error;

pub use mld::{parse_mld, MldError};
pub use ops::SkeinTriple;
pub use projection::{EdgeEnd, Port, ProjEdge, Projection};
pub use trace::{Component, CrossingTrace, Passage, StrandTrace};

/// One level of the event list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// The arcs at `pos` and `pos + 1` swap. With `left_over` the arc
    /// coming from `pos` passes over (`x+`), otherwise under (`x-`).
    Cross { pos: usize, left_over: bool },
    /// A local maximum: two new arcs appear at `pos` and `pos + 1`.
    Cap(usize),
    /// A local minimum: the arcs at `pos` and `pos + 1` join.
    Cup(usize),
}

impl Event {
    pub fn is_crossing(&self) -> bool {
        matches!(self, Event::Cross { .. })
    }

    pub fn pos(&self) -> usize {
        match *self {
            Event::Cross { pos, .. } | Event::Cap(pos) | Event::Cup(pos) => pos,
        }
    }

    pub(crate) fn with_pos(self, pos: usize) -> Event {
        match self {
            Event::Cross { left_over, .. } => Event::Cross { pos, left_over },
            Event::Cap(_) => Event::Cap(pos),
            Event::Cup(_) => Event::Cup(pos),
        }
    }

    /// Change of width across the event.
    pub fn width_delta(&self) -> isize {
        match self {
            Event::Cross { .. } => 0,
            Event::Cap(_) => 2,
            Event::Cup(_) => -2,
        }
    }

    /// Positions occupied just above the event, as a half-open range.
    pub(crate) fn range_above(&self) -> (usize, usize) {
        match *self {
            Event::Cross { pos, .. } | Event::Cup(pos) => (pos, pos + 2),
            Event::Cap(pos) => (pos, pos),
        }
    }

    /// Positions occupied just below the event.
    pub(crate) fn range_below(&self) -> (usize, usize) {
        match *self {
            Event::Cross { pos, .. } | Event::Cap(pos) => (pos, pos + 2),
            Event::Cup(pos) => (pos, pos),
        }
    }
}

/// Which diagonal of a crossing a passage runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    /// From the upper-left port to the lower-right port.
    NwSe,
    /// From the upper-right port to the lower-left port.
    NeSw,
}

impl Line {
    pub fn other(self) -> Line {
        match self {
            Line::NwSe => Line::NeSw,
            Line::NeSw => Line::NwSe,
        }
    }

    /// Ports on this line: (upper, lower). Ports are numbered clockwise
    /// NW = 0, NE = 1, SE = 2, SW = 3.
    pub fn ports(self) -> (u8, u8) {
        match self {
            Line::NwSe => (0, 2),
            Line::NeSw => (1, 3),
        }
    }

    pub fn of_port(port: u8) -> Line {
        if port.is_multiple_of(2) {
            Line::NwSe
        } else {
            Line::NeSw
        }
    }
}

/// Orientation hint for a closed component produced by a skein smoothing:
/// the component runs along `line` of crossing event `event`, downward or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub event: usize,
    pub line: Line,
    pub downward: bool,
}

/// A closed component, allowed only in diagrams produced internally
/// (oriented smoothings). It carries the variable of the strand it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosedComponent {
    pub color: usize,
    pub seed: Option<Seed>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("a diagram needs at least one strand")]
    NoStrands,
    #[error("event {event}: {reason}")]
    Width { event: usize, reason: String },
    #[error("final width {found} differs from the strand count {expected}")]
    FinalWidth { expected: usize, found: usize },
    #[error("closed component found; tangles with closed components are not supported")]
    ClosedComponent,
    #[error("strand starting at top endpoint {top} returns to the top edge")]
    ReturnsToTop { top: usize },
    #[error("closed component data does not match the diagram: {0}")]
    ClosedMismatch(String),
    #[error("strand index {index} out of range 1..={strands}")]
    StrandIndex { index: usize, strands: usize },
    #[error("crossing {index} out of range (diagram has {count} crossings)")]
    CrossingIndex { index: usize, count: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("crossing {0} joins two different strands; pass the mixed flag to resolve it anyway")]
    MixedCrossing(usize),
    #[error("cable width must be at least 1")]
    CableWidth,
}

/// A validated string-link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    strands: usize,
    events: Vec<Event>,
    closed: Vec<ClosedComponent>,
}

impl Diagram {
    pub fn new(strands: usize, events: Vec<Event>) -> Result<Self, DiagramError> {
        Self::with_closed(strands, events, vec![])
    }

    /// Builds a diagram that may contain the given closed components.
    pub fn with_closed(strands: usize, events: Vec<Event>, closed: Vec<ClosedComponent>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        check_widths(strands, &events)?;
        let d = Diagram { strands, events, closed };
        d.trace_checked()?;
        Ok(d)
    }

    pub fn trivial(strands: usize) -> Self {
        Diagram::new(strands, vec![]).expect("trivial diagram")
    }

    /// A braid from a word of signed 1-based generators: `i` is `x+ i`,
    /// `-i` is `x- i`.
    pub fn braid(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        let events =
            word.iter().map(|&g| Event::Cross { pos: g.unsigned_abs() as usize - 1, left_over: g > 0 }).collect();
        Diagram::new(strands, events)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn closed(&self) -> &[ClosedComponent] {
        &self.closed
    }

    pub fn has_closed(&self) -> bool {
        !self.closed.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_crossing()).count()
    }

    /// Event indices of the crossings, in order.
    pub fn crossing_events(&self) -> Vec<usize> {
        (0..self.events.len()).filter(|&i| self.events[i].is_crossing()).collect()
    }

    pub fn projection(&self) -> Projection {
        Projection::build(self.strands, &self.events)
    }

    pub fn trace(&self) -> StrandTrace {
        self.trace_checked().expect("validated diagram")
    }

    fn trace_checked(&self) -> Result<StrandTrace, DiagramError> {
        StrandTrace::build(self.strands, &self.events, &self.closed)
    }

    /// The canonical MLD rendering (without normalization).
    pub fn to_mld(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.strands)?;
        for e in &self.events {
            match *e {
                Event::Cross { pos, left_over: true } => writeln!(f, "x+ {}", pos + 1)?,
                Event::Cross { pos, left_over: false } => writeln!(f, "x- {}", pos + 1)?,
                Event::Cap(pos) => writeln!(f, "cap {}", pos + 1)?,
                Event::Cup(pos) => writeln!(f, "cup {}", pos + 1)?,
            }
        }
        Ok(())
    }
}

fn check_widths(strands: usize, events: &[Event]) -> Result<(), DiagramError> {
    let mut width = strands;
    for (i, e) in events.iter().enumerate() {
        match *e {
            Event::Cross { pos, .. } if pos + 2 > width => {
                return Err(DiagramError::Width {
                    event: i,
                    reason: format!("crossing at {} needs width {}, have {width}", pos + 1, pos + 2),
                })
            }
            Event::Cup(pos) if pos + 2 > width => {
                return Err(DiagramError::Width {
                    event: i,
                    reason: format!("cup at {} needs width {}, have {width}", pos + 1, pos + 2),
                })
            }
            Event::Cap(pos) if pos > width => {
                return Err(DiagramError::Width {
                    event: i,
                    reason: format!("cap at {} beyond width {width}", pos + 1),
                })
            }
            _ => {}
        }
        width = (width as isize + e.width_delta()) as usize;
    }
    if width != strands {
        return Err(DiagramError::FinalWidth { expected: strands, found: width });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_word() {
        let d = Diagram::braid(3, &[1, -2, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.events()[1], Event::Cross { pos: 1, left_over: false });
    }

    #[test]
    fn width_errors() {
        assert!(matches!(Diagram::new(2, vec![Event::Cup(0)]), Err(DiagramError::FinalWidth { .. })));
        assert!(matches!(
            Diagram::new(1, vec![Event::Cross { pos: 0, left_over: true }]),
            Err(DiagramError::Width { event: 0, .. })
        ));
        assert!(matches!(Diagram::new(0, vec![]), Err(DiagramError::NoStrands)));
    }

    #[test]
    fn strand_back_to_top() {
        // the two top endpoints are joined by a cup
        let r = Diagram::new(2, vec![Event::Cup(0), Event::Cap(0)]);
        assert!(matches!(r, Err(DiagramError::ReturnsToTop { .. })));
    }

    #[test]
    fn closed_loop_rejected() {
        let r = Diagram::new(1, vec![Event::Cap(1), Event::Cup(1)]);
        assert_eq!(r, Err(DiagramError::ClosedComponent));
    }
}
