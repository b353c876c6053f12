//! Crossing weights: the filtration vector and grading of a state.
//!
//! For a crossing between two different strands, the strand under
//! consideration (the thick strand) gets `-sign/2` in the two quadrants
//! that touch the outgoing edge of the other strand and 0 elsewhere. A
//! crossing of a strand with itself gets `+sign/2` between the two incoming
//! edges, `-sign/2` between the two outgoing edges and 0 on the sides. The
//! grading weight is `-sign` between the outgoing edges and 0 elsewhere.
//! Meridians carry no weight.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CrossingTrace, StrandTrace};
use crate::states::{ClockMove, Direction, KauffmanState, MoveSite};

const STANDARD_TABLE: &str = include_str!("../fixtures/weights.tsv");

/// Per-strand filtration values, doubled.
pub type IndexVector = Vec<i32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("weight table line {line}: {msg}")]
    Table { line: usize, msg: String },
    #[error("clock move at crossings {crossings:?}: {msg}")]
    Delta { crossings: (usize, usize), msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Over,
    Under,
    /// Both passages belong to the same strand.
    #[serde(rename = "self")]
    SelfCrossing,
}

/// Directions of the over and under passages, `true` for downward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orient {
    pub over_down: bool,
    pub under_down: bool,
}

impl fmt::Display for Orient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |down: bool| if down { 'd' } else { 'u' };
        write!(f, "{}{}", c(self.over_down), c(self.under_down))
    }
}

type Key = (i32, Orient, u8, Role);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    rows: HashMap<Key, (i32, i32)>,
}

impl WeightTable {
    /// The checked-in table.
    pub fn standard() -> WeightTable {
        WeightTable::parse(STANDARD_TABLE).expect("bundled weight table parses")
    }

    /// Parses the TSV format: `sign orient quadrant role filt2 grad`.
    pub fn parse(text: &str) -> Result<WeightTable, WeightError> {
        let mut rows = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let err = |msg: &str| WeightError::Table { line, msg: msg.to_string() };
            let cols: Vec<&str> = content.split('\t').collect();
            let [sign, orient, quadrant, role, filt2, grad] = cols[..] else {
                return Err(err("expected 6 tab-separated columns"));
            };
            let sign = match sign {
                "+" => 1,
                "-" => -1,
                _ => return Err(err("sign must be + or -")),
            };
            let dir = |c: u8| match c {
                b'd' => Ok(true),
                b'u' => Ok(false),
                _ => Err(err("orientation must be two of d/u")),
            };
            let ob = orient.as_bytes();
            if ob.len() != 2 {
                return Err(err("orientation must be two of d/u"));
            }
            let orient = Orient { over_down: dir(ob[0])?, under_down: dir(ob[1])? };
            let quadrant = match quadrant {
                "N" => 0,
                "E" => 1,
                "S" => 2,
                "W" => 3,
                _ => return Err(err("quadrant must be N, E, S or W")),
            };
            let role = match role {
                "over" => Role::Over,
                "under" => Role::Under,
                "self" => Role::SelfCrossing,
                _ => return Err(err("role must be over, under or self")),
            };
            let filt2: i32 = filt2.parse().map_err(|_| err("filt2 is not an integer"))?;
            let grad: i32 = grad.parse().map_err(|_| err("grad is not an integer"))?;
            if rows.insert((sign, orient, quadrant, role), (filt2, grad)).is_some() {
                return Err(err("duplicate row"));
            }
        }
        if rows.len() != 96 {
            return Err(WeightError::Table { line: 0, msg: format!("{} rows, expected 96", rows.len()) });
        }
        Ok(WeightTable { rows })
    }

    fn lookup(&self, x: &CrossingTrace, quadrant: u8, role: Role) -> (i32, i32) {
        let orient = Orient { over_down: x.over_down, under_down: x.under_down };
        self.rows[&(x.sign, orient, quadrant, role)]
    }

    /// Doubled filtration weight for `role` at quadrant `quadrant`.
    pub fn filt2(&self, x: &CrossingTrace, quadrant: u8, role: Role) -> i32 {
        self.lookup(x, quadrant, role).0
    }

    pub fn grad(&self, x: &CrossingTrace, quadrant: u8) -> i32 {
        self.lookup(x, quadrant, Role::Over).1
    }
}

/// Doubled filtration vector of a state: one entry per strand.
pub fn filtration_vector(trace: &StrandTrace, s: &KauffmanState, wt: &WeightTable) -> IndexVector {
    let mut f = vec![0; trace.strands];
    for (x, &q) in trace.crossings.iter().zip(&s.markers) {
        let (a, b) = (trace.color(x.over), trace.color(x.under));
        if a == b {
            f[a] += wt.filt2(x, q, Role::SelfCrossing);
        } else {
            f[a] += wt.filt2(x, q, Role::Over);
            f[b] += wt.filt2(x, q, Role::Under);
        }
    }
    f
}

pub fn grading(trace: &StrandTrace, s: &KauffmanState, wt: &WeightTable) -> i32 {
    trace.crossings.iter().zip(&s.markers).map(|(x, &q)| wt.grad(x, q)).sum()
}

/// How a clock move changes the filtration vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveCase {
    /// No change.
    Unchanged,
    /// The strand's entry drops by one.
    Down(usize),
    /// The strand's entry rises by one.
    Up(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveDelta {
    pub dg: i32,
    pub df2: IndexVector,
    pub case: MoveCase,
}

/// Expected change of (grading, doubled entry of the moving strand) for a
/// clockwise move. When the strand passes under at both ends the grading
/// rises by one and the filtration is unchanged; over at both ends it drops
/// by one. Otherwise both change by the same unit: up when the strand passes
/// under first and over second along its orientation, down in the reverse
/// order.
pub fn expected_clock_delta(site: &MoveSite) -> (i32, i32) {
    match (site.over_a, site.over_b) {
        (false, false) => (1, 0),
        (true, true) => (-1, 0),
        (over_a, _) => {
            let under_first = over_a != site.flows_ab;
            let s = if under_first { 1 } else { -1 };
            (s, 2 * s)
        }
    }
}

/// Checks one move against [`expected_clock_delta`]: the grading changes by
/// exactly one and the filtration vector changes at most in the entry of
/// the strand along which the markers slide, by at most one.
pub fn clock_delta_check(
    trace: &StrandTrace,
    s: &KauffmanState,
    mv: &ClockMove,
    wt: &WeightTable,
) -> Result<MoveDelta, WeightError> {
    let fail = |msg: String| WeightError::Delta { crossings: (mv.site.a.0, mv.site.b.0), msg };
    let dir = match mv.direction {
        Direction::Clock => 1,
        Direction::Counterclock => -1,
    };
    let far = &trace.crossings[mv.site.b.0];
    let b_port = mv.site.b.1 as usize;
    if trace.color(far.port_comp[b_port]) != mv.site.color || far.port_in[b_port] != mv.site.flows_ab {
        return Err(fail("the two ends of the move lie on differently oriented strands".into()));
    }
    let (eg, ef) = expected_clock_delta(&mv.site);
    let i = mv.site.color;
    let mut expected_df = vec![0; trace.strands];
    expected_df[i] = dir * ef;

    let dg = grading(trace, &mv.target, wt) - grading(trace, s, wt);
    if dg != dir * eg {
        return Err(fail(format!("grading changes by {dg}, expected {}", dir * eg)));
    }
    let (f0, f1) = (filtration_vector(trace, s, wt), filtration_vector(trace, &mv.target, wt));
    let df2: IndexVector = f1.iter().zip(&f0).map(|(a, b)| a - b).collect();
    if df2 != expected_df {
        return Err(fail(format!("doubled filtration changes by {df2:?}, expected {expected_df:?}")));
    }
    let case = match df2[i].signum() {
        0 => MoveCase::Unchanged,
        -1 => MoveCase::Down(i),
        _ => MoveCase::Up(i),
    };
    Ok(MoveDelta { dg, df2, case })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_mld, Diagram, Line};
    use crate::states::StateModel;

    /// The weight rule evaluated straight from the port orientations.
    fn intrinsic(x: &CrossingTrace, q: u8, role: Role) -> (i32, i32) {
        let ports = [q as usize, (q as usize + 1) % 4];
        let over_ports = x.over_line.ports();
        let on_over = |p: usize| p as u8 == over_ports.0 || p as u8 == over_ports.1;
        let po = *ports.iter().find(|&&p| on_over(p)).unwrap();
        let pu = *ports.iter().find(|&&p| !on_over(p)).unwrap();
        let (io, iu) = (x.port_in[po], x.port_in[pu]);
        let grad = if !io && !iu { -x.sign } else { 0 };
        let filt = match role {
            Role::Over if !iu => -x.sign,
            Role::Under if !io => -x.sign,
            Role::SelfCrossing if io && iu => x.sign,
            Role::SelfCrossing if !io && !iu => -x.sign,
            _ => 0,
        };
        (filt, grad)
    }

    #[test]
    fn table_matches_rule() {
        let wt = WeightTable::standard();
        for sign in [1, -1] {
            for over_down in [true, false] {
                for under_down in [true, false] {
                    let left_over = sign * (if over_down { 1 } else { -1 }) * (if under_down { 1 } else { -1 }) == 1;
                    let over_line = if left_over { Line::NwSe } else { Line::NeSw };
                    let mut port_in = [false; 4];
                    let (ou, ol) = over_line.ports();
                    let (uu, ul) = over_line.other().ports();
                    port_in[ou as usize] = over_down;
                    port_in[ol as usize] = !over_down;
                    port_in[uu as usize] = under_down;
                    port_in[ul as usize] = !under_down;
                    let x = CrossingTrace {
                        event: 0,
                        over_line,
                        over: 0,
                        under: 1,
                        over_down,
                        under_down,
                        sign,
                        port_in,
                        port_comp: [0; 4],
                    };
                    for q in 0..4 {
                        for role in [Role::Over, Role::Under, Role::SelfCrossing] {
                            assert_eq!(wt.lookup(&x, q, role), intrinsic(&x, q, role), "{sign} {q} {role:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn self_weights_are_role_sums_shifted() {
        let wt = WeightTable::standard();
        for ((sign, orient, q, role), (f, _)) in &wt.rows {
            if *role != Role::SelfCrossing {
                continue;
            }
            let over = wt.rows[&(*sign, *orient, *q, Role::Over)].0;
            let under = wt.rows[&(*sign, *orient, *q, Role::Under)].0;
            assert_eq!(*f, over + under + sign);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(WeightTable::parse("+\tdd\tN\tover\t0\n").is_err());
        assert!(WeightTable::parse("+\tdx\tN\tover\t0\t0\n").is_err());
        assert!(WeightTable::parse("# only a header\n").is_err());
    }

    #[test]
    fn braid_state_is_zero() {
        let d = Diagram::braid(3, &[1, 2, -1, -2, 2]).unwrap();
        let m = StateModel::new(&d);
        let s = &m.states().unwrap()[0];
        let wt = WeightTable::standard();
        assert_eq!(filtration_vector(&d.trace(), s, &wt), vec![0, 0, 0]);
        assert_eq!(grading(&d.trace(), s, &wt), 0);
    }

    #[test]
    fn kink_states_are_zero() {
        for text in ["strands 1\ncap 2\nx+ 1\ncup 2\n", "strands 1\ncap 2\nx- 1\ncup 2\n"] {
            let d = parse_mld(text).unwrap();
            let m = StateModel::new(&d);
            let states = m.states().unwrap();
            assert_eq!(states.len(), 1);
            let wt = WeightTable::standard();
            assert_eq!(filtration_vector(&d.trace(), &states[0], &wt), vec![0]);
            assert_eq!(grading(&d.trace(), &states[0], &wt), 0);
        }
    }
}
