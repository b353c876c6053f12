use super::{ClosedComponent, Diagram, DiagramError, Event, Seed};

/// The three diagrams of a skein relation at one crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: Diagram,
    pub minus: Diagram,
    /// The oriented smoothing; may contain a closed component.
    pub zero: Diagram,
}

impl Diagram {
    pub fn mirror(&self) -> Diagram {
        let events = self
            .events
            .iter()
            .map(|&e| match e {
                Event::Cross { pos, left_over } => Event::Cross { pos, left_over: !left_over },
                other => other,
            })
            .collect();
        Diagram { strands: self.strands, events, closed: self.closed.clone() }
    }

    /// Side-by-side placement: `other` goes to the right of `self`.
    pub fn amalgamate(&self, other: &Diagram) -> Diagram {
        let shift = self.strands;
        let mut events = self.events.clone();
        events.extend(other.events.iter().map(|e| e.with_pos(e.pos() + shift)));
        let offset = self.events.len();
        let mut closed = self.closed.clone();
        closed.extend(other.closed.iter().map(|c| ClosedComponent {
            color: c.color + shift,
            seed: c.seed.map(|s| Seed { event: s.event + offset, ..s }),
        }));
        Diagram { strands: self.strands + other.strands, events, closed }
    }

    /// Stacking: `self` on top, `other` below.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.strands != other.strands {
            return Err(DiagramError::StrandMismatch(self.strands, other.strands));
        }
        if self.has_closed() || other.has_closed() {
            return Err(DiagramError::ClosedComponent);
        }
        let mut events = self.events.clone();
        events.extend_from_slice(&other.events);
        Ok(Diagram { strands: self.strands, events, closed: vec![] })
    }

    /// Replaces strand `strand` (0-based) by `n` parallel copies, with full
    /// twists at the bottom cancelling the self-writhe of the strand.
    pub fn satellite(&self, strand: usize, n: usize) -> Result<Diagram, DiagramError> {
        if strand >= self.strands {
            return Err(DiagramError::StrandIndex { index: strand + 1, strands: self.strands });
        }
        if n == 0 {
            return Err(DiagramError::CableWidth);
        }
        if self.has_closed() {
            return Err(DiagramError::ClosedComponent);
        }
        let trace = self.trace();
        let rows = trace.levels(&self.events);
        let mult = |c: usize| if c == strand { n } else { 1 };
        let mut events = vec![];
        for (e, ev) in self.events.iter().enumerate() {
            let row = &rows[e];
            let start = |p: usize| row[..p].iter().map(|&c| mult(c)).sum::<usize>();
            match *ev {
                Event::Cross { pos, left_over } => {
                    let (a, b) = (mult(row[pos]), mult(row[pos + 1]));
                    let base = start(pos);
                    for s in 0..b {
                        for t in (0..a).rev() {
                            events.push(Event::Cross { pos: base + s + t, left_over });
                        }
                    }
                }
                Event::Cap(pos) => {
                    let c = rows[e + 1][pos];
                    let base = start(pos);
                    for j in 0..mult(c) {
                        events.push(Event::Cap(base + j));
                    }
                }
                Event::Cup(pos) => {
                    let m = mult(row[pos]);
                    let base = start(pos);
                    for j in 0..m {
                        events.push(Event::Cup(base + m - 1 - j));
                    }
                }
            }
        }
        // undo the blackboard framing so the copies are unlinked in the closure
        let writhe: i32 =
            trace.crossings.iter().filter(|x| x.over == strand && x.under == strand).map(|x| x.sign).sum();
        for _ in 0..writhe.unsigned_abs() {
            for _ in 0..n {
                for j in 0..n - 1 {
                    events.push(Event::Cross { pos: strand + j, left_over: writhe < 0 });
                }
            }
        }
        Diagram::new(self.strands + n - 1, events)
    }

    /// The skein triple at crossing ordinal `crossing`. Crossings between two
    /// different strands are refused unless `allow_mixed` is set.
    pub fn skein_triple(&self, crossing: usize, allow_mixed: bool) -> Result<SkeinTriple, DiagramError> {
        if self.has_closed() {
            return Err(DiagramError::ClosedComponent);
        }
        let trace = self.trace();
        let count = trace.crossings.len();
        let Some(x) = trace.crossings.get(crossing) else {
            return Err(DiagramError::CrossingIndex { index: crossing + 1, count });
        };
        let is_self = x.over == x.under;
        if !is_self && !allow_mixed {
            return Err(DiagramError::MixedCrossing(crossing + 1));
        }
        let e = x.event;
        let Event::Cross { pos, left_over } = self.events[e] else { unreachable!() };

        let with_event = |lo: bool| {
            let mut events = self.events.clone();
            events[e] = Event::Cross { pos, left_over: lo };
            Diagram { strands: self.strands, events, closed: vec![] }
        };
        let (plus, minus) =
            if x.sign > 0 { (self.clone(), with_event(!left_over)) } else { (with_event(!left_over), self.clone()) };

        let nwse_down = x.port_in[0];
        let nesw_down = x.port_in[1];
        let mut events = self.events.clone();
        let shift: isize = if nwse_down == nesw_down {
            events.remove(e);
            -1
        } else {
            events.splice(e..=e, [Event::Cup(pos), Event::Cap(pos)]);
            1
        };
        let reindex = |ev: usize| if ev > e { (ev as isize + shift) as usize } else { ev };

        let mut closed = vec![];
        if is_self {
            let comp = &trace.components[x.over];
            let hits: Vec<usize> =
                (0..comp.passages.len()).filter(|&i| comp.passages[i].crossing == crossing).collect();
            let seed = comp.passages[hits[0] + 1..hits[1]].first().map(|p| {
                let y = &trace.crossings[p.crossing];
                let line = if p.over { y.over_line } else { y.over_line.other() };
                let downward = y.port_in[line.ports().0 as usize];
                Seed { event: reindex(y.event), line, downward }
            });
            closed.push(ClosedComponent { color: comp.color, seed });
        }
        let zero = Diagram::with_closed(self.strands, events, closed)?;
        Ok(SkeinTriple { plus, minus, zero })
    }

    pub fn is_braid(&self) -> bool {
        self.events.iter().all(Event::is_crossing)
    }

    pub fn is_alternating(&self) -> bool {
        self.trace().is_alternating()
    }

    /// Splits the diagram into side-by-side blocks with connected projection,
    /// left to right. Strands of each block are consecutive.
    pub fn decompose(&self) -> Vec<Diagram> {
        let (block_of, blocks) = self.blocks();
        if blocks.len() <= 1 {
            return vec![self.clone()];
        }
        let trace = self.trace();
        let rows = trace.levels(&self.events);
        let mut out: Vec<Vec<Event>> = vec![vec![]; blocks.len()];
        for (e, ev) in self.events.iter().enumerate() {
            let row = &rows[e];
            let after = &rows[e + 1];
            let pos = ev.pos();
            let b = match ev {
                Event::Cap(_) => block_of[after[pos]],
                _ => block_of[row[pos]],
            };
            let local = row[..pos].iter().filter(|&&c| block_of[c] == b).count();
            out[b].push(ev.with_pos(local));
        }
        out.into_iter()
            .zip(&blocks)
            .map(|(events, strands)| Diagram::new(strands.len(), events).expect("block is a valid diagram"))
            .collect()
    }

    /// Block index per component and the strands of each block, ordered by
    /// their leftmost bottom endpoint.
    pub(crate) fn blocks(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let trace = self.trace();
        let n = trace.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for x in &trace.crossings {
            let (a, b) = (find(&mut parent, x.over), find(&mut parent, x.under));
            parent[a.max(b)] = a.min(b);
        }
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = vec![];
        for s in 0..self.strands {
            let r = find(&mut parent, s);
            if block_of[r] == usize::MAX {
                block_of[r] = blocks.len();
                blocks.push(vec![]);
            }
            let b = block_of[r];
            block_of[s] = b;
            blocks[b].push(s);
        }
        for c in self.strands..n {
            let r = find(&mut parent, c);
            block_of[c] = if block_of[r] == usize::MAX { 0 } else { block_of[r] };
        }
        (block_of, blocks)
    }

    /// Normal form under commutation of distant events: whenever the later of
    /// two adjacent events lies strictly to the left of the earlier one, they
    /// are swapped.
    pub fn canonical(&self) -> Diagram {
        let mut events = self.events.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..events.len().saturating_sub(1) {
                let (e1, e2) = (events[i], events[i + 1]);
                let (a1, _) = e1.range_below();
                let (_, b2) = e2.range_above();
                if b2 <= a1 && !(e2.range_above().0 == a1 && e1.range_below().0 == e1.range_below().1) {
                    let shifted = (e1.pos() as isize + e2.width_delta()) as usize;
                    events[i] = e2;
                    events[i + 1] = e1.with_pos(shifted);
                    changed = true;
                }
            }
        }
        let closed = if self.closed.is_empty() { vec![] } else { self.closed.clone() };
        Diagram { strands: self.strands, events, closed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_mld;

    fn clasp1_braid() -> Diagram {
        parse_mld("strands 2\nx+ 1\nx+ 1\n").unwrap()
    }

    #[test]
    fn skein_triple_of_the_trefoil() {
        let d = parse_mld("strands 1\ncap 2\nx+ 1\nx+ 1\nx+ 1\ncup 2\n").unwrap();
        let t = d.skein_triple(0, false).unwrap();
        let counts = (t.plus.crossing_count(), t.minus.crossing_count(), t.zero.crossing_count());
        assert_eq!(counts, (3, 3, 2));
        assert_eq!(t.plus, d);
        assert_eq!(t.minus.events()[1], Event::Cross { pos: 0, left_over: false });
        assert_eq!(t.zero.closed().len(), 1);
    }

    #[test]
    fn skein_smoothing_by_direction() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut seen = [false; 2];
        for _ in 0..200 {
            let d = crate::random::random_diagram_on(&mut rng, 1, 6);
            if d.has_closed() {
                continue;
            }
            for (c, x) in d.trace().crossings.iter().enumerate() {
                let zero = d.skein_triple(c, false).unwrap().zero;
                // same vertical sense: the smoothing drops the event; otherwise a cup over a cap
                let same = x.over_down == x.under_down;
                seen[same as usize] = true;
                let expected = if same { d.events().len() - 1 } else { d.events().len() + 1 };
                assert_eq!(zero.events().len(), expected, "{d:?} crossing {c}");
            }
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn skein_refuses_mixed_crossings() {
        let d = clasp1_braid();
        assert_eq!(d.skein_triple(0, false).unwrap_err(), DiagramError::MixedCrossing(1));
        let t = d.skein_triple(0, true).unwrap();
        assert_eq!(t.zero.events().len(), 1);
        assert!(t.zero.closed().is_empty());
        assert!(matches!(d.skein_triple(5, true), Err(DiagramError::CrossingIndex { index: 6, count: 2 })));
    }

    #[test]
    fn mirror_swaps_crossings() {
        let d = clasp1_braid();
        let m = d.mirror();
        assert_eq!(m, parse_mld("strands 2\nx- 1\nx- 1\n").unwrap());
        assert_eq!(m.mirror(), d);
        assert_eq!(Diagram::trivial(3).mirror(), Diagram::trivial(3));
    }

    #[test]
    fn amalgamate_shifts_right_block() {
        let d = clasp1_braid().amalgamate(&Diagram::trivial(1));
        assert_eq!(d.strands(), 3);
        assert_eq!(d.decompose().len(), 2);
        assert_eq!(Diagram::trivial(1).amalgamate(&Diagram::trivial(1)), Diagram::trivial(2));
        let t = d.trace();
        assert!(t.components[2].passages.is_empty());
    }

    #[test]
    fn compose_concatenates() {
        let d = clasp1_braid();
        assert_eq!(Diagram::trivial(2).compose(&d).unwrap(), d);
        let twice = d.compose(&d).unwrap();
        assert_eq!(twice, parse_mld("strands 2\nx+ 1\nx+ 1\nx+ 1\nx+ 1\n").unwrap());
        assert!(matches!(d.compose(&Diagram::trivial(3)), Err(DiagramError::StrandMismatch(2, 3))));
    }

    #[test]
    fn satellite_basics() {
        let d = clasp1_braid();
        assert_eq!(d.satellite(0, 1).unwrap(), d);
        assert_eq!(Diagram::trivial(1).satellite(0, 3).unwrap(), Diagram::trivial(3));
        assert!(matches!(d.satellite(2, 2), Err(DiagramError::StrandIndex { .. })));
        let s = d.satellite(1, 2).unwrap();
        assert_eq!(s.strands(), 3);
        assert_eq!(s.crossing_count(), 4);
        let t = s.trace();
        assert_eq!(t.linking_number(0, 1), 1);
        assert_eq!(t.linking_number(0, 2), 1);
        assert_eq!(t.mixed_sign_sum(1, 2), 0);

        // a kinked strand gets a compensating twist
        let kink = parse_mld("strands 1\ncap 2\nx+ 1\ncup 2\n").unwrap();
        let s = kink.satellite(0, 2).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.trace().linking_number(0, 1), 0);
    }

    #[test]
    fn decompose_blocks() {
        let d = Diagram::trivial(3);
        let parts = d.decompose();
        assert_eq!(parts.len(), 3);
        let d = parse_mld("strands 4\nx+ 3\nx- 1\nx- 3\n").unwrap();
        let parts = d.decompose();
        assert_eq!(parts.iter().map(Diagram::strands).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(parts[1], parse_mld("strands 2\nx+ 1\nx- 1\n").unwrap());
        let d = parse_mld("strands 3\nx+ 1\ncap 4\nx+ 3\ncup 4\n").unwrap();
        let parts = d.decompose();
        assert_eq!(parts[0], parse_mld("strands 2\nx+ 1\n").unwrap());
        assert_eq!(parts[1], parse_mld("strands 1\ncap 2\nx+ 1\ncup 2\n").unwrap());
    }

    #[test]
    fn canonical_moves_left_events_first() {
        let d = parse_mld("strands 4\nx+ 3\nx+ 1\n").unwrap();
        assert_eq!(d.canonical(), parse_mld("strands 4\nx+ 1\nx+ 3\n").unwrap());
        let c = d.canonical();
        assert_eq!(c.canonical(), c);
    }
}
