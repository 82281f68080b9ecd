//! The published tables of normalized invariants, cell by cell.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::link::{p_mu_rho, LinkSpec};
use crate::perm::CycleType;
use crate::rho::{make_rho, RhoKind};
use crate::ring::{parse_poly, CycPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableId {
    TwoCycle,
    ThreeCycle,
    Trefoil,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::TwoCycle, TableId::ThreeCycle, TableId::Trefoil];
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::TwoCycle => "table1",
            TableId::ThreeCycle => "table2",
            TableId::Trefoil => "table3",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" | "1" => Ok(TableId::TwoCycle),
            "table2" | "2" => Ok(TableId::ThreeCycle),
            "table3" | "3" => Ok(TableId::Trefoil),
            _ => Err(Error::Parse(format!("unknown table {s:?}; expected table1, table2 or table3"))),
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Printed(&'static str),
    /// A printed value with ζ_N ↦ ζ_N⁻¹ applied.
    Conjugate(&'static str),
}

impl Expected {
    pub fn value(&self) -> Result<CycPoly> {
        match self {
            Expected::Printed(s) => parse_poly(s),
            Expected::Conjugate(s) => parse_poly(s)?.galois(-1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub table: TableId,
    pub mu: CycleType,
    pub rho: RhoKind,
    pub rho_label: &'static str,
    pub link: LinkSpec,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOutcome {
    pub cell: TableCell,
    pub computed: CycPoly,
    pub expected: CycPoly,
}

impl CellOutcome {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

fn torus(p: usize, q: i64) -> LinkSpec {
    LinkSpec::Torus { p, q }
}

fn mu(parts: &[usize]) -> CycleType {
    CycleType::new(parts.to_vec()).expect("positive parts")
}

const TWO_CYCLE: [(usize, i64, &str, &str); 5] = [
    (2, -2, "1/2*t^2 - 5/2*t + 4", "1/2*t^2 - 5/2*t + 4"),
    (2, -3, "2*t - 3", "-2*t + 3"),
    (2, -6, "1/2*t^2 - 1/2*t", "1/2*t^2 - 1/2*t"),
    (3, -4, "2*t^2 - 8*t + 9", "2*t^2 - 8*t + 9"),
    (4, -5, "2*t^3 - 18*t^2 + 52*t - 47", "-2*t^3 + 18*t^2 - 52*t + 47"),
];

const THREE_CYCLE: [(usize, i64, &str, &str); 5] = [
    (2, -2, "1/3*t^3 - 4*t^2 + 47/3*t - 18", "1/3*t^3 - 4*t^2 + 47/3*t + z3 + z3^2 - 20"),
    (2, -3, "3*t - 8", "3*t - 8"),
    (2, -5, "3*t^2 - 21*t + 37", "(3*t^2 - 21*t + 36 + z3)*z3"),
    (2, -6, "1/3*t^3 - 4*t^2 + 56/3*t - 27", "1/3*t^3 - 4*t^2 + 56/3*t - 27"),
    (3, -4, "3*t^3 - 36*t^2 + 144*t - 188", "(3*t^3 - 36*t^2 + 144*t - 188)*z3^2"),
];

const TREFOIL: [(&[usize], &str); 5] = [
    (&[1], "1"),
    (&[2], "2*t - 3"),
    (&[3], "3*t - 8"),
    (&[4], "2*t^2 - 16*t + 37"),
    (&[2, 2], "4*t^2 - 28*t + 49"),
];

pub fn cells(table: TableId) -> Vec<TableCell> {
    let cell = |mu, rho, rho_label, link, expected| TableCell { table, mu, rho, rho_label, link, expected };
    match table {
        TableId::TwoCycle => TWO_CYCLE
            .iter()
            .flat_map(|&(p, q, triv, sign)| {
                [
                    cell(mu(&[2]), RhoKind::Trivial, "triv", torus(p, q), Expected::Printed(triv)),
                    cell(mu(&[2]), RhoKind::Sign, "sign", torus(p, q), Expected::Printed(sign)),
                ]
            })
            .collect(),
        TableId::ThreeCycle => THREE_CYCLE
            .iter()
            .flat_map(|&(p, q, zero, one)| {
                [
                    cell(mu(&[3]), RhoKind::CyclicPower(0), "cyclic:0", torus(p, q), Expected::Printed(zero)),
                    cell(mu(&[3]), RhoKind::CyclicPower(1), "cyclic:1", torus(p, q), Expected::Printed(one)),
                    cell(mu(&[3]), RhoKind::CyclicPower(2), "cyclic:2", torus(p, q), Expected::Conjugate(one)),
                ]
            })
            .collect(),
        TableId::Trefoil => TREFOIL
            .iter()
            .map(|&(parts, v)| cell(mu(parts), RhoKind::Trivial, "triv", torus(2, -3), Expected::Printed(v)))
            .collect(),
    }
}

pub fn evaluate(cell: &TableCell, max_states: u64) -> Result<CellOutcome> {
    let rho = make_rho(&cell.rho, &cell.mu.representative())?;
    let computed = p_mu_rho(&rho, &cell.link, true, max_states)?.value;
    Ok(CellOutcome { cell: cell.clone(), computed, expected: cell.expected.value()? })
}

/// All cells of a table, computed concurrently, in table order.
pub fn reproduce(table: TableId, max_states: u64) -> Result<Vec<CellOutcome>> {
    cells(table).par_iter().map(|c| evaluate(c, max_states)).collect()
}
