//! The MLD text format:
//!
//! ```text
//! strands <k>
//! x+ <i> | x- <i> | cap <i> | cup <i>
//! ```
//!
//! One event per line, positions 1-based, `#` starts a comment.

use thiserror::Error;

use super::{Diagram, DiagramError, Event};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MldError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: DiagramError },
    #[error("{0}")]
    Diagram(DiagramError),
}

pub fn parse_mld(text: &str) -> Result<Diagram, MldError> {
    let mut strands = None;
    let mut events = vec![];
    let mut lines = vec![];
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim_end_matches('\r').trim();
        if content.is_empty() {
            continue;
        }
        if !content.is_ascii() {
            return Err(MldError::Syntax { line, msg: "non-ASCII input".into() });
        }
        let mut words = content.split_whitespace();
        let (Some(kw), Some(arg), None) = (words.next(), words.next(), words.next()) else {
            return Err(MldError::Syntax { line, msg: format!("expected `<keyword> <integer>`, found `{content}`") });
        };
        let n: usize =
            arg.parse().map_err(|_| MldError::Syntax { line, msg: format!("`{arg}` is not a positive integer") })?;
        if strands.is_none() {
            if kw != "strands" {
                return Err(MldError::Syntax { line, msg: "the first line must be `strands <k>`".into() });
            }
            if n == 0 {
                return Err(MldError::Syntax { line, msg: "strand count must be positive".into() });
            }
            strands = Some(n);
            continue;
        }
        if n == 0 {
            return Err(MldError::Syntax { line, msg: "positions are 1-based".into() });
        }
        let pos = n - 1;
        let ev = match kw {
            "x+" => Event::Cross { pos, left_over: true },
            "x-" => Event::Cross { pos, left_over: false },
            "cap" => Event::Cap(pos),
            "cup" => Event::Cup(pos),
            "strands" => return Err(MldError::Syntax { line, msg: "duplicate `strands` line".into() }),
            other => return Err(MldError::Syntax { line, msg: format!("unknown event `{other}`") }),
        };
        events.push(ev);
        lines.push(line);
    }
    let Some(strands) = strands else {
        return Err(MldError::Syntax { line: 1, msg: "missing `strands <k>` line".into() });
    };
    Diagram::new(strands, events).map_err(|err| match err {
        DiagramError::Width { event, .. } => MldError::Invalid { line: lines[event], source: err },
        other => MldError::Diagram(other),
    })
}
