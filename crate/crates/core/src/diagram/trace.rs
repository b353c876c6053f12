use std::collections::HashMap;

use super::projection::{Port, Projection};
use super::{ClosedComponent, DiagramError, Event, Line};

/// One pass of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    /// Crossing ordinal (position among the crossing events).
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Strand id for strands; the inherited strand id for closed components.
    pub color: usize,
    pub closed: bool,
    /// Passages in the order met along the orientation.
    pub passages: Vec<Passage>,
}

/// Orientation data at one crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingTrace {
    pub event: usize,
    pub over_line: Line,
    /// Component indices of the over and under passages.
    pub over: usize,
    pub under: usize,
    pub over_down: bool,
    pub under_down: bool,
    /// +1 or -1; `x+` with both passages running down is +1.
    pub sign: i32,
    /// Whether the component enters the crossing through each port.
    pub port_in: [bool; 4],
    pub port_comp: [usize; 4],
}

impl CrossingTrace {
    pub fn line_comp(&self, line: Line) -> usize {
        if line == self.over_line {
            self.over
        } else {
            self.under
        }
    }

    pub fn is_self(&self, trace: &StrandTrace) -> bool {
        trace.components[self.over].color == trace.components[self.under].color
    }
}

/// Arc-to-strand assignment and per-crossing orientation data.
#[derive(Clone, Debug)]
pub struct StrandTrace {
    pub strands: usize,
    /// Strand id of the arc leaving each top endpoint.
    pub top_strand: Vec<usize>,
    /// Strands `0..strands` (ordered by bottom endpoint), then closed components.
    pub components: Vec<Component>,
    pub crossings: Vec<CrossingTrace>,
    pub crossing_of_event: Vec<Option<usize>>,
    port_info: HashMap<Port, (usize, bool)>,
}

impl StrandTrace {
    pub(crate) fn build(strands: usize, events: &[Event], closed: &[ClosedComponent]) -> Result<Self, DiagramError> {
        let proj = Projection::build(strands, events);
        let mut crossing_of_event = vec![None; events.len()];
        let mut n = 0;
        for (e, ev) in events.iter().enumerate() {
            if ev.is_crossing() {
                crossing_of_event[e] = Some(n);
                n += 1;
            }
        }

        // (entered port, exited port) pairs per walk
        let walk_open = |start: Port| -> (Vec<(Port, Port)>, Port) {
            let mut steps = vec![];
            let mut leave = start;
            loop {
                let enter = proj.linked(leave);
                match enter.through() {
                    Some(exit) => {
                        steps.push((enter, exit));
                        leave = exit;
                    }
                    None => return (steps, enter),
                }
            }
        };

        let mut port_info: HashMap<Port, (usize, bool)> = HashMap::new();
        let mut comp_steps: Vec<Option<Vec<(Port, Port)>>> = vec![None; strands];
        let mut top_strand = vec![0; strands];
        for (top, slot) in top_strand.iter_mut().enumerate() {
            let (steps, end) = walk_open(Port::Top(top));
            match end {
                Port::Bottom(j) => {
                    *slot = j;
                    port_info.insert(Port::Top(top), (j, false));
                    port_info.insert(end, (j, true));
                    comp_steps[j] = Some(steps);
                }
                _ => return Err(DiagramError::ReturnsToTop { top }),
            }
        }
        let mut all_steps: Vec<Vec<(Port, Port)>> =
            comp_steps.into_iter().map(|s| s.expect("every bottom reached")).collect();
        for (c, steps) in all_steps.iter().enumerate() {
            for &(a, b) in steps {
                port_info.insert(a, (c, true));
                port_info.insert(b, (c, false));
            }
        }

        // closed components
        let walk_closed = |entry: Port| -> Vec<(Port, Port)> {
            let mut steps = vec![];
            let mut enter = entry;
            loop {
                let exit = enter.through().expect("interior port");
                steps.push((enter, exit));
                enter = proj.linked(exit);
                if enter == entry {
                    return steps;
                }
            }
        };
        let mut colors: Vec<usize> = (0..strands).collect();
        let mut unseeded = vec![];
        for spec in closed {
            if spec.color >= strands {
                return Err(DiagramError::ClosedMismatch(format!("color {} out of range", spec.color)));
            }
            let Some(seed) = spec.seed else {
                unseeded.push(spec.color);
                continue;
            };
            if !matches!(events.get(seed.event), Some(Event::Cross { .. })) {
                return Err(DiagramError::ClosedMismatch(format!("seed event {} is not a crossing", seed.event)));
            }
            let (up, low) = seed.line.ports();
            let entry = Port::Cross(seed.event, if seed.downward { up } else { low });
            if port_info.contains_key(&entry) {
                return Err(DiagramError::ClosedMismatch(format!(
                    "seed at event {} lies on another component",
                    seed.event
                )));
            }
            let steps = walk_closed(entry);
            let c = all_steps.len();
            for &(a, b) in &steps {
                port_info.insert(a, (c, true));
                port_info.insert(b, (c, false));
            }
            all_steps.push(steps);
            colors.push(spec.color);
        }
        // whatever is left must be crossing-free circles
        let mut rest: Vec<Port> = vec![];
        for (e, ev) in events.iter().enumerate() {
            let ports: &[Port] = &match ev {
                Event::Cross { .. } => [Port::Cross(e, 0), Port::Cross(e, 1), Port::Cross(e, 2), Port::Cross(e, 3)],
                _ => [Port::Turn(e, 0), Port::Turn(e, 1), Port::Turn(e, 0), Port::Turn(e, 1)],
            };
            rest.extend(ports.iter().filter(|p| !port_info.contains_key(p)));
        }
        rest.sort();
        rest.dedup();
        for p in rest {
            if port_info.contains_key(&p) {
                continue;
            }
            if closed.is_empty() {
                return Err(DiagramError::ClosedComponent);
            }
            let steps = walk_closed(p);
            if steps.iter().any(|(a, _)| matches!(a, Port::Cross(..))) {
                return Err(DiagramError::ClosedMismatch("closed component through a crossing has no seed".into()));
            }
            let Some(color) = unseeded.pop() else {
                return Err(DiagramError::ClosedMismatch("more closed components than declared".into()));
            };
            let c = all_steps.len();
            for &(a, b) in &steps {
                port_info.insert(a, (c, true));
                port_info.insert(b, (c, false));
            }
            all_steps.push(steps);
            colors.push(color);
        }
        if !unseeded.is_empty() {
            return Err(DiagramError::ClosedMismatch("fewer closed components than declared".into()));
        }

        let mut crossings = vec![];
        for (e, ev) in events.iter().enumerate() {
            let Event::Cross { left_over, .. } = *ev else { continue };
            let over_line = if left_over { Line::NwSe } else { Line::NeSw };
            let mut port_in = [false; 4];
            let mut port_comp = [0; 4];
            for q in 0..4u8 {
                let (c, incoming) = port_info[&Port::Cross(e, q)];
                port_in[q as usize] = incoming;
                port_comp[q as usize] = c;
            }
            let down = |line: Line| port_in[line.ports().0 as usize];
            let over_down = down(over_line);
            let under_down = down(over_line.other());
            let sign =
                (if left_over { 1 } else { -1 }) * (if over_down { 1 } else { -1 }) * (if under_down { 1 } else { -1 });
            crossings.push(CrossingTrace {
                event: e,
                over_line,
                over: port_comp[over_line.ports().0 as usize],
                under: port_comp[over_line.other().ports().0 as usize],
                over_down,
                under_down,
                sign,
                port_in,
                port_comp,
            });
        }

        let components = all_steps
            .iter()
            .zip(&colors)
            .enumerate()
            .map(|(c, (steps, &color))| {
                let passages = steps
                    .iter()
                    .filter_map(|&(enter, _)| match enter {
                        Port::Cross(e, q) => {
                            let x = crossing_of_event[e].unwrap();
                            Some(Passage { crossing: x, over: Line::of_port(q) == crossings[x].over_line })
                        }
                        _ => None,
                    })
                    .collect();
                Component { color, closed: c >= strands, passages }
            })
            .collect();

        Ok(StrandTrace { strands, top_strand, components, crossings, crossing_of_event, port_info })
    }

    /// Component owning a port, and whether the component enters its node there.
    pub fn port(&self, p: Port) -> (usize, bool) {
        self.port_info[&p]
    }

    pub fn color(&self, comp: usize) -> usize {
        self.components[comp].color
    }

    /// Component at each position just above each event, plus one final row
    /// for the bottom edge.
    pub fn levels(&self, events: &[Event]) -> Vec<Vec<usize>> {
        let mut cur: Vec<Port> = (0..self.strands).map(Port::Top).collect();
        let mut rows = vec![];
        for (e, ev) in events.iter().enumerate() {
            rows.push(cur.iter().map(|p| self.port_info[p].0).collect());
            match *ev {
                Event::Cross { pos, .. } => {
                    cur[pos] = Port::Cross(e, 3);
                    cur[pos + 1] = Port::Cross(e, 2);
                }
                Event::Cap(pos) => {
                    cur.insert(pos, Port::Turn(e, 1));
                    cur.insert(pos, Port::Turn(e, 0));
                }
                Event::Cup(pos) => {
                    cur.drain(pos..pos + 2);
                }
            }
        }
        rows.push(cur.iter().map(|p| self.port_info[p].0).collect());
        rows
    }

    /// Whether each component's over/under sequence alternates.
    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|c| {
            let alt_inside = c.passages.windows(2).all(|w| w[0].over != w[1].over);
            // a closed component also wraps around
            let wraps = !c.closed
                || c.passages.len() < 2
                || c.passages.first().unwrap().over != c.passages.last().unwrap().over;
            alt_inside && wraps
        })
    }

    /// Sum of signs over crossings between strands `i` and `j`, `i != j`.
    pub fn mixed_sign_sum(&self, i: usize, j: usize) -> i32 {
        self.crossings
            .iter()
            .filter(|x| {
                let (a, b) = (self.color(x.over), self.color(x.under));
                (a == i && b == j) || (a == j && b == i)
            })
            .map(|x| x.sign)
            .sum()
    }

    /// Linking number of strands `i` and `j` in the closure.
    pub fn linking_number(&self, i: usize, j: usize) -> i32 {
        self.mixed_sign_sum(i, j) / 2
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::{parse_mld, Diagram};

    #[test]
    fn trivial_two() {
        let t = Diagram::trivial(2).trace();
        assert_eq!(t.components.len(), 2);
        assert!(t.crossings.is_empty());
        assert_eq!(t.top_strand, vec![0, 1]);
    }

    #[test]
    fn full_twist_both_down_positive() {
        let d = parse_mld("strands 2\nx+ 1\nx+ 1\n").unwrap();
        let t = d.trace();
        assert_eq!(t.crossings.len(), 2);
        for x in &t.crossings {
            assert!(x.over_down && x.under_down);
            assert_eq!(x.sign, 1);
            assert_ne!(x.over, x.under);
        }
        assert_eq!(t.linking_number(0, 1), 1);
        assert_eq!(t.mixed_sign_sum(0, 1), 2);
    }

    #[test]
    fn trefoil_strand_alternates() {
        let d = parse_mld("strands 1\ncap 2\nx+ 1\nx+ 1\nx+ 1\ncup 2\n").unwrap();
        let t = d.trace();
        assert_eq!(t.components.len(), 1);
        let p = &t.components[0].passages;
        assert_eq!(p.len(), 6);
        assert!(p.windows(2).all(|w| w[0].over != w[1].over));
        assert!(t.crossings.iter().all(|x| x.over == 0 && x.under == 0));
        assert!(t.is_alternating());
    }

    #[test]
    fn levels_track_strands() {
        let d = parse_mld("strands 2\nx+ 1\n").unwrap();
        let t = d.trace();
        let rows = t.levels(d.events());
        // strand ids are bottom positions; the arcs swap at the crossing
        assert_eq!(rows, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(t.top_strand, vec![1, 0]);
    }
}
