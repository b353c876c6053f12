//! Fixture loading and a small term-map model of Laurent polynomials, used
//! as an oracle independent of the library's polynomial operations.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use strlink::{parse_mld, Diagram, LaurentPoly};

pub const FIXTURES: [&str; 7] =
    ["clasp1", "clasp2", "clasp3", "trefoil_strand", "braid", "alternating3", "nonalternating"];

pub fn fixture(name: &str) -> Diagram {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.mld")].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_mld(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Doubled exponent vector to coefficient.
pub type Terms = BTreeMap<Vec<i32>, i64>;

pub fn terms(p: &LaurentPoly) -> Terms {
    p.terms().map(|(e, c)| (e.clone(), i64::try_from(c).expect("small coefficient"))).collect()
}

pub fn poly(vars: usize, t: &Terms) -> LaurentPoly {
    LaurentPoly::from_terms(vars, t.iter().map(|(e, &c)| (e.clone(), BigInt::from(c))))
}

fn add_into(out: &mut Terms, e: Vec<i32>, c: i64) {
    let slot = out.entry(e.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        out.remove(&e);
    }
}

/// Product of polynomials in disjoint variable blocks, `a` first.
pub fn disjoint_product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut out, ea.iter().chain(eb).copied().collect(), ca * cb);
        }
    }
    out
}

pub fn product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut out, ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
        }
    }
    out
}

pub fn invert(a: &Terms) -> Terms {
    a.iter().map(|(e, &c)| (e.iter().map(|x| -x).collect(), c)).collect()
}

/// Substitutes `h_i -> h_i h_{i+1} ... h_{i+n-1}` with the later variables
/// shifted up.
pub fn merge(a: &Terms, i: usize, n: usize) -> Terms {
    a.iter()
        .map(|(e, &c)| {
            let mut out = e[..i].to_vec();
            out.extend(std::iter::repeat_n(e[i], n));
            out.extend_from_slice(&e[i + 1..]);
            (out, c)
        })
        .collect()
}

/// Relabels variable `j` as `perm[j]`.
pub fn permute(a: &Terms, perm: &[usize]) -> Terms {
    a.iter()
        .map(|(e, &c)| {
            let mut out = vec![0; e.len()];
            for (j, &x) in e.iter().enumerate() {
                out[perm[j]] = x;
            }
            (out, c)
        })
        .collect()
}

/// Sets every variable outside `keep` to 1.
pub fn restrict(a: &Terms, keep: usize) -> Terms {
    let mut out = Terms::new();
    for (e, &c) in a {
        let v: Vec<i32> = e.iter().enumerate().map(|(j, &x)| if j == keep { x } else { 0 }).collect();
        add_into(&mut out, v, c);
    }
    out
}

/// Whether `a = ±h^s b` for some sign and shift.
pub fn equal_up_to_unit(a: &Terms, b: &Terms) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (Some((ea, ca)), Some((eb, cb))) = (a.iter().next(), b.iter().next()) else {
        return a.is_empty() && b.is_empty();
    };
    if ca.abs() != cb.abs() {
        return false;
    }
    let sign = ca / cb;
    let shift: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x - y).collect();
    b.iter().all(|(e, c)| {
        let moved: Vec<i32> = e.iter().zip(&shift).map(|(x, s)| x + s).collect();
        a.get(&moved) == Some(&(sign * c))
    })
}
