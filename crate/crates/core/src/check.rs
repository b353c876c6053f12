//! The seeded invariant suite behind `strlink check`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::foxcalc::{fox_matrix, torsion_via_fox, wirtinger};
use crate::homology::euler_table;
use crate::random::{random_braid, random_diagram, random_diagram_on};
use crate::states::StateModel;
use crate::torsion::{state_sum, torsion_polynomial, verify_identities, verify_skein_all, IdentityOptions};
use crate::weights::{clock_delta_check, WeightTable};

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub max_crossings: usize,
    pub max_strands: usize,
    /// Random diagrams for the single-diagram checks.
    pub diagrams: usize,
    pub braids: usize,
    /// Random pairs for the operation identities, capped at six crossings.
    pub pairs: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 1, max_crossings: 8, max_strands: 4, diagrams: 100, braids: 200, pairs: 50 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub seed: u64,
    pub items: Vec<CheckItem>,
}

impl CheckSummary {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.failures.is_empty())
    }
}

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn clock_connected(d: &Diagram) -> Outcome {
    let connected = StateModel::new(d).clock_connectivity().map_err(|e| e.to_string())?;
    ensure(connected, || "clock moves do not connect the states".into())
}

/// Every clock move out of every state has the expected deltas. Returns the
/// number of moves checked.
pub fn clock_deltas(d: &Diagram) -> Result<usize, String> {
    let model = StateModel::new(d);
    let trace = d.trace();
    let wt = WeightTable::standard();
    let mut moves = 0;
    for s in model.states().map_err(|e| e.to_string())? {
        for mv in model.clock_neighbors(&s) {
            clock_delta_check(&trace, &s, &mv, &wt).map_err(|e| e.to_string())?;
            moves += 1;
        }
    }
    Ok(moves)
}

pub fn fox_agrees(d: &Diagram) -> Outcome {
    let fox = torsion_via_fox(d).map_err(|e| e.to_string())?;
    let poly = torsion_polynomial(d).map_err(|e| e.to_string())?;
    ensure(fox.equal_up_to_unit(&poly).is_some(), || format!("Fox gives {fox}, state sum gives {poly}"))
}

/// Zero row sums of the augmented Fox matrix and `det(A B) = ±1` at 1.
pub fn fox_structure(d: &Diagram) -> Outcome {
    let p = wirtinger(d).map_err(|e| e.to_string())?;
    let m = fox_matrix(&p);
    for (r, row) in m.augmentation().iter().enumerate() {
        let sum: BigInt = row.iter().sum();
        ensure(sum.is_zero(), || format!("augmented row {r} sums to {sum}"))?;
    }
    let det = torsion_via_fox(d).map_err(|e| e.to_string())?.eval_at_one();
    ensure(det.abs().is_one(), || format!("det(A B) at 1 is {det}"))
}

pub fn euler_matches(d: &Diagram) -> Outcome {
    let poly = torsion_polynomial(d).map_err(|e| e.to_string())?;
    let table = euler_table(d).map_err(|e| e.to_string())?;
    let from_poly: BTreeMap<Vec<i32>, i64> =
        poly.terms().map(|(e, c)| (e.clone(), i64::try_from(c).expect("small coefficients"))).collect();
    ensure(table == from_poly, || format!("signed ranks {table:?} but torsion {poly}"))
}

pub fn skein_holds(d: &Diagram) -> Outcome {
    for r in verify_skein_all(d).map_err(|e| e.to_string())? {
        ensure(r.holds, || {
            format!("skein fails at crossing {}: {} and {} against {}", r.crossing + 1, r.plus, r.minus, r.zero)
        })?;
    }
    Ok(())
}

pub fn braid_trivial(d: &Diagram) -> Outcome {
    let sum = state_sum(d).map_err(|e| e.to_string())?;
    ensure(sum.records.len() == 1, || format!("{} states", sum.records.len()))?;
    let r = &sum.records[0];
    ensure(r.f2.iter().all(|&x| x == 0) && r.g == 0, || format!("F2 = {:?}, G = {}", r.f2, r.g))?;
    ensure(sum.poly.is_one(), || format!("torsion {}", sum.poly))
}

/// Mirror, amalgamation, composition and a width-two satellite of one
/// strand of `d0`.
pub fn identities(d0: &Diagram, d1: &Diagram, strand: usize) -> Vec<(&'static str, Outcome)> {
    let report = match verify_identities(d0, d1, IdentityOptions { satellite: Some((strand, 2)) }) {
        Ok(r) => r,
        Err(e) => return vec![("identities", Err(e.to_string()))],
    };
    vec![
        ("mirror", ensure(report.mirror.is_some(), || "mirror torsion is not the inverted torsion".into())),
        ("amalgamation", ensure(report.amalgamation, || "torsion of the sum is not the product".into())),
        (
            "composition",
            ensure(report.composition_holds.unwrap_or(true), || "torsion of the composite is not the product".into()),
        ),
        (
            "satellite",
            ensure(report.satellite.unwrap_or(true), || format!("satellite of strand {} is not the merge", strand + 1)),
        ),
    ]
}

struct Tally(BTreeMap<&'static str, CheckItem>, Vec<&'static str>);

impl Tally {
    fn record(&mut self, name: &'static str, what: &str, outcome: Outcome) {
        if !self.0.contains_key(name) {
            self.1.push(name);
        }
        let item = self.0.entry(name).or_insert_with(|| CheckItem { name: name.into(), ..Default::default() });
        match outcome {
            Ok(()) => item.passed += 1,
            Err(msg) => item.failures.push(format!("{what}: {msg}")),
        }
    }

    fn finish(mut self, seed: u64) -> CheckSummary {
        let items = self.1.iter().map(|n| self.0.remove(n).expect("recorded")).collect();
        CheckSummary { seed, items }
    }
}

fn describe(label: &str, d: &Diagram) -> String {
    format!("{label} [{}]", d.to_mld().trim_end().replace('\n', "; "))
}

pub fn run_checks(cfg: &CheckConfig) -> CheckSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tally = Tally(BTreeMap::new(), vec![]);
    for i in 0..cfg.diagrams {
        let d = random_diagram(&mut rng, cfg.max_strands, cfg.max_crossings);
        let what = describe(&format!("diagram {i}"), &d);
        tally.record("clock connectivity", &what, clock_connected(&d));
        tally.record("clock deltas", &what, clock_deltas(&d).map(|_| ()));
        tally.record("fox vs state sum", &what, fox_agrees(&d));
        tally.record("fox structure", &what, fox_structure(&d));
        tally.record("euler identity", &what, euler_matches(&d));
        tally.record("skein", &what, skein_holds(&d));
    }
    for i in 0..cfg.braids {
        let d = random_braid(&mut rng, cfg.max_strands, cfg.max_crossings + 2);
        tally.record("braid triviality", &describe(&format!("braid {i}"), &d), braid_trivial(&d));
    }
    let pair_crossings = cfg.max_crossings.min(6);
    for i in 0..cfg.pairs {
        let k = rng.gen_range(1..=cfg.max_strands.min(3));
        let d0 = random_diagram_on(&mut rng, k, pair_crossings);
        let d1 = random_diagram_on(&mut rng, k, pair_crossings);
        let strand = rng.gen_range(0..k);
        let what = format!("{} with {}", describe(&format!("pair {i}"), &d0), describe("", &d1));
        for (name, outcome) in identities(&d0, &d1, strand) {
            tally.record(name, &what, outcome);
        }
    }
    tally.finish(cfg.seed)
}
