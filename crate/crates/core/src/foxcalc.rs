//! Wirtinger presentations, Fox derivatives and `det(A B)`.
//!
//! Generators are the arcs of the diagram (pieces of strands between
//! undercrossings). At a crossing where the under arc runs from `a` to `b`
//! beneath the over arc `x`, the relation is `b = x^s a x^-s` with `s` the
//! crossing sign. Columns of the bottom arcs form the block `C`; the torsion
//! is the determinant of the remaining square block `(A B)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Event};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoxError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("(A B) is singular")]
    Singular,
}

/// A letter of a free-group word: generator and exponent `±1`.
pub type Letter = (usize, i8);

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub crossing: usize,
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub strands: usize,
    /// Strand of each arc generator.
    pub arc_strand: Vec<usize>,
    /// First and last arc of each strand.
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub relations: Vec<Relation>,
    /// Strands that received a kink.
    pub kinked: Vec<usize>,
    #[serde(skip)]
    pub diagram: Diagram,
}

/// Inserts a positive kink at the top of every strand that never passes
/// under, so that its top and bottom arcs differ.
pub fn add_kinks(d: &Diagram) -> Result<(Diagram, Vec<usize>), FoxError> {
    let trace = d.trace();
    let mut kinked = vec![];
    let mut prefix = vec![];
    for (top, &s) in trace.top_strand.iter().enumerate() {
        if trace.components[s].passages.iter().all(|p| p.over) {
            kinked.push(s);
            prefix.extend([Event::Cap(top + 1), Event::Cross { pos: top, left_over: true }, Event::Cup(top + 1)]);
        }
    }
    kinked.sort_unstable();
    prefix.extend_from_slice(d.events());
    Ok((Diagram::new(d.strands(), prefix)?, kinked))
}

pub fn wirtinger(d: &Diagram) -> Result<Presentation, FoxError> {
    if d.has_closed() {
        return Err(DiagramError::ClosedComponent.into());
    }
    let (d, kinked) = add_kinks(d)?;
    let trace = d.trace();
    let n = trace.crossings.len();
    let mut over_arc = vec![0; n];
    let mut under_in = vec![0; n];
    let mut under_out = vec![0; n];
    let mut arc_strand = vec![];
    let (mut top, mut bottom) = (vec![], vec![]);
    for (s, comp) in trace.components.iter().enumerate() {
        let mut arc = arc_strand.len();
        arc_strand.push(s);
        top.push(arc);
        for p in &comp.passages {
            if p.over {
                over_arc[p.crossing] = arc;
            } else {
                under_in[p.crossing] = arc;
                arc = arc_strand.len();
                arc_strand.push(s);
                under_out[p.crossing] = arc;
            }
        }
        bottom.push(arc);
    }
    let relations = trace
        .crossings
        .iter()
        .enumerate()
        .map(|(c, x)| {
            let e = x.sign as i8;
            let (ov, a, b) = (over_arc[c], under_in[c], under_out[c]);
            Relation { crossing: c, word: vec![(ov, e), (a, 1), (ov, -e), (b, -1)] }
        })
        .collect();
    Ok(Presentation { strands: d.strands(), arc_strand, top, bottom, relations, kinked, diagram: d })
}

/// Abelianized Fox derivatives: one row per relation, one column per arc.
#[derive(Clone, Debug)]
pub struct FoxMatrix {
    pub rows: Vec<Vec<LaurentPoly>>,
    /// Columns of the square block `(A B)`, in arc order.
    pub ab_columns: Vec<usize>,
    /// Columns of the bottom arcs.
    pub c_columns: Vec<usize>,
}

impl FoxMatrix {
    pub fn ab_block(&self) -> Vec<Vec<LaurentPoly>> {
        self.rows.iter().map(|r| self.ab_columns.iter().map(|&j| r[j].clone()).collect()).collect()
    }

    /// The integer matrix obtained by setting every variable to 1.
    pub fn augmentation(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(LaurentPoly::eval_at_one).collect()).collect()
    }
}

pub fn fox_matrix(p: &Presentation) -> FoxMatrix {
    let k = p.strands;
    let arcs = p.arc_strand.len();
    let letter_exp = |g: usize, e: i8| {
        let mut v = vec![0; k];
        v[p.arc_strand[g]] = 2 * e as i32;
        v
    };
    let rows = p
        .relations
        .iter()
        .map(|rel| {
            let mut row = vec![LaurentPoly::zero(k); arcs];
            let mut prefix = vec![0; k];
            for &(g, e) in &rel.word {
                let step = letter_exp(g, e);
                if e > 0 {
                    row[g] = &row[g] + &LaurentPoly::monomial(k, prefix.clone(), 1);
                }
                for (a, b) in prefix.iter_mut().zip(&step) {
                    *a += b;
                }
                if e < 0 {
                    row[g] = &row[g] - &LaurentPoly::monomial(k, prefix.clone(), 1);
                }
            }
            row
        })
        .collect();
    let ab_columns = (0..arcs).filter(|a| !p.bottom.contains(a)).collect();
    FoxMatrix { rows, ab_columns, c_columns: p.bottom.clone() }
}

/// Determinant over the Laurent ring: memoized cofactor expansion up to
/// 10 x 10, fraction-free elimination above.
pub fn determinant(m: &[Vec<LaurentPoly>], vars: usize) -> LaurentPoly {
    if m.len() <= 10 {
        det_cofactor(m, vars)
    } else {
        det_bareiss(m, vars)
    }
}

pub fn det_cofactor(m: &[Vec<LaurentPoly>], vars: usize) -> LaurentPoly {
    let n = m.len();
    fn go(m: &[Vec<LaurentPoly>], mask: u32, vars: usize, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
        let n = m.len();
        let row = mask.count_ones() as usize;
        if row == n {
            return LaurentPoly::one(vars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(vars);
        let mut sign = true;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let minor = go(m, mask | (1 << j), vars, memo);
                let term = &m[row][j] * &minor;
                acc = if sign { &acc + &term } else { &acc - &term };
            }
            sign = !sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    assert!(n < 32, "cofactor expansion is limited to small matrices");
    go(m, 0, vars, &mut HashMap::new())
}

pub fn det_bareiss(m: &[Vec<LaurentPoly>], vars: usize) -> LaurentPoly {
    let n = m.len();
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut prev = LaurentPoly::one(vars);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentPoly::zero(vars);
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            a[i][k] = LaurentPoly::zero(vars);
        }
        prev = a[k][k].clone();
    }
    let det = a.get(n.wrapping_sub(1)).map(|r| r[n - 1].clone()).unwrap_or_else(|| LaurentPoly::one(vars));
    if negate {
        -det
    } else {
        det
    }
}

/// `det(A B)` of the kinked diagram.
pub fn torsion_via_fox(d: &Diagram) -> Result<LaurentPoly, FoxError> {
    let p = wirtinger(d)?;
    let m = fox_matrix(&p);
    let det = determinant(&m.ab_block(), p.strands);
    if det.is_zero() {
        return Err(FoxError::Singular);
    }
    Ok(det)
}
