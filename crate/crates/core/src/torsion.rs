//! The state-sum torsion polynomial and the identities it satisfies.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::laurent::{LaurentPoly, Unit};
use crate::states::{KauffmanState, StateError, StateModel};
use crate::weights::{filtration_vector, grading, IndexVector, WeightTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Clone, Debug, Serialize)]
pub struct StateRecord {
    pub state: KauffmanState,
    /// Doubled filtration vector.
    pub f2: IndexVector,
    pub g: i32,
}

#[derive(Clone, Debug)]
pub struct StateSum {
    pub strands: usize,
    pub records: Vec<StateRecord>,
    pub poly: LaurentPoly,
}

/// Enumerates the states of the whole diagram and sums
/// `(-1)^G h^F` over them.
pub fn state_sum(d: &Diagram) -> Result<StateSum, TorsionError> {
    let model = StateModel::new(d);
    let trace = d.trace();
    let wt = WeightTable::standard();
    let k = d.strands();
    let mut poly = LaurentPoly::zero(k);
    let records: Vec<StateRecord> = model
        .states()?
        .into_iter()
        .map(|state| {
            let f2 = filtration_vector(&trace, &state, &wt);
            let g = grading(&trace, &state, &wt);
            StateRecord { state, f2, g }
        })
        .collect();
    for r in &records {
        let c = if r.g.rem_euclid(2) == 0 { 1 } else { -1 };
        poly = &poly + &LaurentPoly::monomial(k, r.f2.clone(), c);
    }
    Ok(StateSum { strands: k, records, poly })
}

/// The torsion polynomial. Side-by-side blocks are summed separately and
/// multiplied in their own variables.
pub fn torsion_polynomial(d: &Diagram) -> Result<LaurentPoly, TorsionError> {
    if d.has_closed() {
        return Ok(state_sum(d)?.poly);
    }
    let k = d.strands();
    let mut out = LaurentPoly::one(k);
    let mut offset = 0;
    for block in d.decompose() {
        let p = state_sum(&block)?.poly;
        out = &out * &p.embed(k, offset);
        offset += block.strands();
    }
    Ok(out)
}

/// The torsion with every variable except `h_{i+1}` set to 1.
pub fn specialize_to_closure(d: &Diagram, i: usize) -> Result<LaurentPoly, TorsionError> {
    if i >= d.strands() {
        return Err(DiagramError::StrandIndex { index: i + 1, strands: d.strands() }.into());
    }
    let others: Vec<usize> = (0..d.strands()).filter(|&j| j != i).collect();
    Ok(torsion_polynomial(d)?.specialize_to_one(&others).expect("indices in range"))
}

/// Shape of the factor relating the two sides of a skein relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeinFactor {
    /// `h^(1/2) - h^(-1/2)` in the strand's variable.
    HalfDifference,
    /// `1 - h` in the strand's variable.
    OneMinus,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeinReport {
    pub crossing: usize,
    pub strand: usize,
    #[serde(skip)]
    pub plus: LaurentPoly,
    #[serde(skip)]
    pub minus: LaurentPoly,
    #[serde(skip)]
    pub zero: LaurentPoly,
    /// `(factor, sign, doubled shift)` with
    /// `plus - minus = sign * h^shift * factor * zero`, when one exists and
    /// `zero` is nonzero.
    pub factor: Option<(SkeinFactor, i8, Vec<i32>)>,
    /// `plus - minus = (h^(1/2) - h^(-1/2)) * zero` exactly.
    pub holds: bool,
}

/// Resolves crossing `crossing` and looks for the factor `u` with
/// `nabla(plus) - nabla(minus) = u * nabla(zero)`.
pub fn verify_skein(d: &Diagram, crossing: usize, allow_mixed: bool) -> Result<SkeinReport, TorsionError> {
    let triple = d.skein_triple(crossing, allow_mixed)?;
    let trace = d.trace();
    let x = &trace.crossings[crossing];
    let strand = trace.color(x.over);
    let plus = torsion_polynomial(&triple.plus)?;
    let minus = torsion_polynomial(&triple.minus)?;
    let zero = torsion_polynomial(&triple.zero)?;
    let diff = &plus - &minus;
    let k = d.strands();
    let mut half = vec![0; k];
    half[strand] = 1;
    let half_diff =
        &LaurentPoly::monomial(k, half.clone(), 1) - &LaurentPoly::monomial(k, half.iter().map(|x| -x).collect(), 1);
    let holds = diff == &half_diff * &zero;
    let factor = diff.div_exact(&zero).and_then(|q| {
        let one_minus = &LaurentPoly::one(k) - &LaurentPoly::var(k, strand);
        [(SkeinFactor::HalfDifference, half_diff), (SkeinFactor::OneMinus, one_minus)]
            .into_iter()
            .find_map(|(kind, u)| q.equal_up_to_unit(&u).map(|(s, sh)| (kind, s, sh)))
    });
    Ok(SkeinReport { crossing, strand, plus, minus, zero, factor, holds })
}

/// Skein reports at every self-crossing.
pub fn verify_skein_all(d: &Diagram) -> Result<Vec<SkeinReport>, TorsionError> {
    let trace = d.trace();
    (0..trace.crossings.len())
        .filter(|&c| trace.crossings[c].is_self(&trace))
        .map(|c| verify_skein(d, c, false))
        .collect()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityOptions {
    /// Strand and width for the satellite check.
    pub satellite: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    /// Torsion of `d0 + d1` is the product in disjoint variables.
    pub amalgamation: bool,
    /// Torsion of `d0 . d1` is the product up to a unit; `None` when the
    /// strand counts differ.
    pub composition: Option<Unit>,
    pub composition_holds: Option<bool>,
    /// The unit relating the mirror's torsion to the inverted torsion of `d0`.
    pub mirror: Option<Unit>,
    /// The satellite's torsion equals the merged torsion.
    pub satellite: Option<bool>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.amalgamation
            && self.composition_holds.unwrap_or(true)
            && self.mirror.is_some()
            && self.satellite.unwrap_or(true)
    }
}

pub fn verify_identities(d0: &Diagram, d1: &Diagram, opts: IdentityOptions) -> Result<IdentityReport, TorsionError> {
    let t0 = torsion_polynomial(d0)?;
    let t1 = torsion_polynomial(d1)?;
    let (k0, k1) = (d0.strands(), d1.strands());

    let sum = torsion_polynomial(&d0.amalgamate(d1))?;
    let amalgamation = sum == &t0.embed(k0 + k1, 0) * &t1.embed(k0 + k1, k0);

    let (composition, composition_holds) = if k0 == k1 {
        let comp = torsion_polynomial(&d0.compose(d1)?)?;
        // strand i of d0 continues as the strand of d1 leaving top endpoint i
        let expected = &t0.permute_variables(&d1.trace().top_strand) * &t1;
        let unit = comp.equal_up_to_unit(&expected);
        let holds = unit.is_some();
        (unit, Some(holds))
    } else {
        (None, None)
    };

    let mirror = torsion_polynomial(&d0.mirror())?.equal_up_to_unit(&t0.invert_variables());

    let satellite = match opts.satellite {
        Some((i, n)) => {
            let sat = torsion_polynomial(&d0.satellite(i, n)?)?;
            Some(sat == t0.merge_variables(i, n).expect("strand index checked by satellite"))
        }
        None => None,
    };
    Ok(IdentityReport { amalgamation, composition, composition_holds, mirror, satellite })
}
