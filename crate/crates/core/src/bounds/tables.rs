//! Reference values for `R_n` and `G_n`, `n ≤ 20`, and their reproduction.
//!
//! Table 1 keeps three literature columns verbatim. Table 2 holds the four
//! improved lower bounds. Table 3 pairs `R_n` with `G_n = n² − 2R_n` and the
//! normalized constant `G_n / n^{3/2}`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::certificate::r_lower_certificate;
use crate::error::{Error, Result};
use crate::switching::{exact_g, exact_r, ExactOptions};

/// One table entry: exact, one-sided, or missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Exact(u64),
    AtLeast(u64),
    AtMost(u64),
    Missing,
}

impl Cell {
    pub fn value(&self) -> Option<u64> {
        match *self {
            Cell::Exact(v) | Cell::AtLeast(v) | Cell::AtMost(v) => Some(v),
            Cell::Missing => None,
        }
    }

    pub fn exact(&self) -> Option<u64> {
        match *self {
            Cell::Exact(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Exact(v) => write!(f, "={v}"),
            Cell::AtLeast(v) => write!(f, ">={v}"),
            Cell::AtMost(v) => write!(f, "<={v}"),
            Cell::Missing => f.write_str("-"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n: u64,
    pub brown_spencer: Cell,
    pub fishburn_sloane: Cell,
    pub carlson_stolarski: Cell,
}

impl Table1Row {
    fn cells(&self) -> [Cell; 3] {
        [self.brown_spencer, self.fishburn_sloane, self.carlson_stolarski]
    }
}

/// Bound on `G_n / n^{3/2}` in a Table 3 row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CBound {
    /// `G_n / n^{3/2}` with `G_n = g` (exact) or `G_n ≤ g`.
    Ratio { g: u64, exact: bool },
    /// `≤ 1`, from `C_{2,2,n,n} ≤ 1` at a Hadamard order.
    Hadamard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Row {
    pub n: u64,
    pub r: Cell,
    pub g: Cell,
    pub c: CBound,
    /// The printed cell, e.g. `=35/11^{3/2}<0.96`.
    pub c_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceTables {
    pub table1: Vec<Table1Row>,
    /// `(n, lower bound on R_n)`.
    pub table2: Vec<(u64, u64)>,
    pub table3: Vec<Table3Row>,
}

const TABLE1: [(u64, Cell, Cell, Cell); 20] = {
    use Cell::{AtLeast as L, Exact as E, Missing as M};
    [
        (1, E(0), E(0), E(0)),
        (2, E(1), E(1), E(1)),
        (3, E(2), E(2), E(2)),
        (4, E(4), E(4), E(4)),
        (5, E(7), E(7), E(7)),
        (6, M, E(11), E(11)),
        (7, M, E(16), E(16)),
        (8, L(22), E(22), E(22)),
        (9, M, E(27), E(27)),
        (10, L(32), M, E(35)),
        (11, M, M, E(43)),
        (12, M, M, E(54)),
        (13, M, M, L(60)),
        (14, M, M, L(71)),
        (15, L(72), M, L(82)),
        (16, L(96), M, L(94)),
        (17, M, M, L(106)),
        (18, M, M, L(120)),
        (19, M, M, L(132)),
        (20, L(156), M, L(148)),
    ]
};

const TABLE2: [(u64, u64); 4] = [(15, 83), (17, 107), (18, 122), (19, 139)];

const TABLE3: [(u64, Cell, Cell, &str); 20] = {
    use Cell::{AtLeast as L, AtMost as U, Exact as E, Missing as M};
    [
        (1, E(0), E(1), "=1"),
        (2, E(1), E(2), "=2/2^{3/2}<0.71"),
        (3, E(2), E(5), "=5/3^{3/2}<0.97"),
        (4, E(4), E(8), "=8/4^{3/2}=1"),
        (5, E(7), E(11), "=11/5^{3/2}<0.99"),
        (6, E(11), E(14), "=14/6^{3/2}<0.96"),
        (7, E(16), E(17), "=17/7^{3/2}<0.92"),
        (8, E(22), E(20), "=20/8^{3/2}<0.89"),
        (9, E(27), E(27), "=27/9^{3/2}=1"),
        (10, E(35), E(30), "=30/10^{3/2}<0.95"),
        (11, E(43), E(35), "=35/11^{3/2}<0.96"),
        (12, E(54), E(36), "=36/12^{3/2}<0.87"),
        (13, L(60), U(49), "<=49/13^{3/2}<1.05"),
        (14, L(71), U(54), "<=54/14^{3/2}<1.04"),
        (15, L(83), U(59), "<=59/15^{3/2}<1.02"),
        (16, M, M, "<=1"),
        (17, L(107), U(75), "<=75/17^{3/2}<1.08"),
        (18, L(122), U(80), "<=80/18^{3/2}<1.05"),
        (19, L(139), U(83), "<=83/19^{3/2}<1.01"),
        (20, M, M, "<=1"),
    ]
};

fn c_bound(g: Cell) -> CBound {
    match g {
        Cell::Exact(g) => CBound::Ratio { g, exact: true },
        Cell::AtMost(g) => CBound::Ratio { g, exact: false },
        _ => CBound::Hadamard,
    }
}

fn table3_from(entry: &(u64, Cell, Cell, &str)) -> Table3Row {
    let (n, r, g, text) = *entry;
    Table3Row {
        n,
        r,
        g,
        c: c_bound(g),
        c_text: text.to_string(),
    }
}

pub(crate) fn table3_row(n: u64) -> Option<Table3Row> {
    TABLE3.iter().find(|e| e.0 == n).map(table3_from)
}

/// The stored reference rows.
pub fn reference_tables() -> ReferenceTables {
    ReferenceTables {
        table1: TABLE1
            .iter()
            .map(|&(n, a, b, c)| Table1Row {
                n,
                brown_spencer: a,
                fishburn_sloane: b,
                carlson_stolarski: c,
            })
            .collect(),
        table2: TABLE2.to_vec(),
        table3: TABLE3.iter().map(table3_from).collect(),
    }
}

/// Smallest two-decimal value strictly above `g / n^{3/2}`, checked exactly:
/// `c > g/n^{3/2}` iff `c² n³ > g²`.
fn ratio_ceiling(g: u64, n: u64) -> (u64, bool) {
    let lhs = |hundredths: u64| hundredths as u128 * hundredths as u128 * (n as u128).pow(3);
    let target = 10_000u128 * g as u128 * g as u128;
    let mut c = ((g as f64 / (n as f64).powf(1.5)) * 100.0).floor() as u64;
    c = c.saturating_sub(1);
    while lhs(c) < target {
        c += 1;
    }
    (c, lhs(c) == target)
}

fn fmt_hundredths(c: u64) -> String {
    match (c / 100, c % 100) {
        (w, 0) => format!("{w}"),
        (w, f) if f % 10 == 0 => format!("{w}.{}", f / 10),
        (w, f) => format!("{w}.{f:02}"),
    }
}

fn c_text_for(n: u64, g: Cell) -> String {
    let (rel, g) = match g {
        Cell::Exact(g) => ("=", g),
        Cell::AtMost(g) => ("<=", g),
        _ => return "<=1".into(),
    };
    let (c, equal) = ratio_ceiling(g, n);
    if equal {
        let c = fmt_hundredths(c);
        if n == 1 {
            return format!("{rel}{c}");
        }
        return format!("{rel}{g}/{n}^{{3/2}}={c}");
    }
    format!("{rel}{g}/{n}^{{3/2}}<{}", fmt_hundredths(c))
}

fn regression(row: u64, detail: impl Into<String>) -> Error {
    Error::TableRegression {
        row,
        detail: detail.into(),
    }
}

impl ReferenceTables {
    /// Cross-table consistency:
    /// - `R_n = (n² − G_n)/2` in every Table 3 row with both entries present;
    /// - exact Table 1 cells agree across sources;
    /// - Table 3 `R_n` equals the last Table 1 column, or the Table 2 bound
    ///   where one exists;
    /// - the printed ceilings in Table 3 hold.
    pub fn check_consistency(&self) -> Result<()> {
        for row in &self.table3 {
            let n = row.n;
            match (row.r, row.g) {
                (Cell::Exact(r), Cell::Exact(g)) | (Cell::AtLeast(r), Cell::AtMost(g)) => {
                    if n * n != g + 2 * r {
                        return Err(regression(n, format!("R = {r}, G = {g} but n² = {}", n * n)));
                    }
                }
                (Cell::Missing, Cell::Missing) => {}
                (r, g) => return Err(regression(n, format!("mismatched cell kinds {r} / {g}"))),
            }
            if row.c_text != c_text_for(n, row.g) {
                return Err(regression(
                    n,
                    format!("printed bound {:?}, expected {:?}", row.c_text, c_text_for(n, row.g)),
                ));
            }
        }
        for t1 in &self.table1 {
            let exact: Vec<u64> = t1.cells().iter().filter_map(Cell::exact).collect();
            if exact.windows(2).any(|w| w[0] != w[1]) {
                return Err(regression(t1.n, format!("exact values disagree: {exact:?}")));
            }
            if let Some(e) = exact.first() {
                if t1.cells().iter().any(|c| matches!(c, Cell::AtLeast(v) if v > e)) {
                    return Err(regression(t1.n, "lower bound exceeds exact value"));
                }
            }
            let Some(t3) = self.table3.iter().find(|r| r.n == t1.n) else {
                continue;
            };
            let expected = match self.table2.iter().find(|(n, _)| *n == t1.n) {
                Some(&(_, v)) => Cell::AtLeast(v),
                None => t1.carlson_stolarski,
            };
            if t3.r != Cell::Missing && t3.r != expected {
                return Err(regression(t1.n, format!("Table 3 R = {}, expected {expected}", t3.r)));
            }
        }
        for &(n, v) in &self.table2 {
            let t1 = self.table1.iter().find(|r| r.n == n);
            if let Some(t1) = t1 {
                if t1.cells().iter().any(|c| matches!(c, Cell::AtLeast(w) if *w >= v)) {
                    return Err(regression(n, "Table 2 does not improve on Table 1"));
                }
            }
        }
        Ok(())
    }

    pub fn table1_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "Brown-Spencer, 1971", "Fishburn-Sloane, 1989", "Carlson-Stolarski, 2004"])
            .expect("in-memory write");
        for r in &self.table1 {
            w.write_record([
                r.n.to_string(),
                r.brown_spencer.to_string(),
                r.fishburn_sloane.to_string(),
                r.carlson_stolarski.to_string(),
            ])
            .expect("in-memory write");
        }
        into_string(w)
    }

    pub fn table2_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "R_n"]).expect("in-memory write");
        for &(n, v) in &self.table2 {
            w.write_record([n.to_string(), Cell::AtLeast(v).to_string()])
                .expect("in-memory write");
        }
        into_string(w)
    }

    pub fn table3_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "R_n", "G_n", "C_{inf,inf,n,n}=G_n/n^{3/2}"])
            .expect("in-memory write");
        for r in &self.table3 {
            w.write_record([r.n.to_string(), r.r.to_string(), r.g.to_string(), r.c_text.clone()])
                .expect("in-memory write");
        }
        into_string(w)
    }
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Debug, Clone, Copy)]
pub struct ReproduceOptions {
    /// Recompute `R_n` and `G_n` exhaustively for `n ≤ exact_max_n` (at most 6).
    pub exact_max_n: usize,
    pub jobs: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            exact_max_n: 6,
            jobs: std::thread::available_parallelism().map_or(1, |p| p.get()),
        }
    }
}

/// [`reproduce_tables_with`] using the default options.
pub fn reproduce_tables() -> Result<ReferenceTables> {
    reproduce_tables_with(ReproduceOptions::default())
}

/// Rebuilds the tables from computation where possible:
/// - `n ≤ exact_max_n`: exhaustive `R_n` and `G_n`, which must match every
///   exact stored cell;
/// - `n ∈ {15, 17, 18, 19}`: certificate claims, which must reach the
///   Table 2 bounds.
///
/// Rows outside both ranges are kept as stored, after a consistency check.
pub fn reproduce_tables_with(opts: ReproduceOptions) -> Result<ReferenceTables> {
    let mut t = reference_tables();
    t.check_consistency()?;
    let exact_opts = ExactOptions {
        jobs: opts.jobs.max(1),
        allow_long_running: false,
    };
    for n in 1..=opts.exact_max_n.min(6) {
        let r = exact_r(n, exact_opts)?.value;
        let g = exact_g(n, exact_opts)?.value;
        let nn = n as u64;
        if nn * nn != g + 2 * r {
            return Err(regression(nn, format!("computed R = {r}, G = {g} violate n² = G + 2R")));
        }
        let row1 = t.table1.iter_mut().find(|x| x.n == nn).expect("row present");
        for cell in [&mut row1.brown_spencer, &mut row1.fishburn_sloane, &mut row1.carlson_stolarski] {
            match *cell {
                Cell::Exact(v) if v != r => {
                    return Err(regression(nn, format!("stored R = {v}, computed {r}")))
                }
                Cell::AtLeast(v) if v > r => {
                    return Err(regression(nn, format!("stored R >= {v}, computed {r}")))
                }
                Cell::Exact(_) => *cell = Cell::Exact(r),
                _ => {}
            }
        }
        let row3 = t.table3.iter_mut().find(|x| x.n == nn).expect("row present");
        if row3.r != Cell::Exact(r) || row3.g != Cell::Exact(g) {
            return Err(regression(
                nn,
                format!("stored R {} / G {}, computed ={r} / ={g}", row3.r, row3.g),
            ));
        }
    }
    for i in 0..t.table2.len() {
        let (n, stored) = t.table2[i];
        let claim = r_lower_certificate(n)?
            .claimed_integer()
            .expect("R_n certificates carry an integer claim");
        if claim < stored {
            return Err(regression(n, format!("certificate gives R >= {claim}, table has >= {stored}")));
        }
        t.table2[i].1 = claim;
        let row3 = t.table3.iter_mut().find(|x| x.n == n).expect("row present");
        row3.r = Cell::AtLeast(claim);
        row3.g = Cell::AtMost(n * n - 2 * claim);
        row3.c = c_bound(row3.g);
        row3.c_text = c_text_for(n, row3.g);
    }
    Ok(t)
}
