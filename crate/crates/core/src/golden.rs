//! The published N- and m-polynomials for small `(g, n)`, and a diff of the
//! engine's output against them.

use rayon::prelude::*;

use crate::eo::Engine;
use crate::error::{Error, Result};
use crate::expand::{Expansion, Form, MPoly, QuasiPoly};

pub const TABLE7_JSON: &str = include_str!("../data/table7.json");

/// `(g, n)` rows of the table, in its order.
pub const TABLE7_ROWS: [(u32, u32); 7] = [(0, 3), (1, 1), (0, 4), (1, 2), (1, 3), (2, 1), (3, 1)];

pub fn golden_tables() -> Result<Vec<QuasiPoly>> {
    let v: serde_json::Value = serde_json::from_str(TABLE7_JSON).map_err(|e| Error::Parse(e.to_string()))?;
    let tables = v["tables"]
        .as_array()
        .ok_or_else(|| Error::Parse("golden data has no tables".into()))?;
    tables.iter().map(|t| QuasiPoly::from_json(t).map_err(Error::Parse)).collect()
}

pub fn golden(g: u32, n: u32, form: Form) -> Result<QuasiPoly> {
    golden_tables()?
        .into_iter()
        .find(|q| q.g == g && q.n == n && q.form == form)
        .ok_or_else(|| Error::Unsupported(format!("no golden row for ({g}, {n})")))
}

/// One sector of one form, engine against golden.
#[derive(Clone, Debug)]
pub struct RowDiff {
    pub g: u32,
    pub n: u32,
    pub k: usize,
    pub form: Form,
    pub expected: MPoly,
    pub computed: MPoly,
}

impl RowDiff {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// Computed N- and m-forms for every row, in table order.
pub fn computed_rows(engine: &Engine) -> Result<Vec<(QuasiPoly, QuasiPoly)>> {
    TABLE7_ROWS
        .par_iter()
        .map(|&(g, n)| {
            let x = Expansion::compute(engine, g, n)?;
            Ok((x.nq.clone(), x.mq.clone()))
        })
        .collect()
}

pub fn diff_table7(engine: &Engine) -> Result<Vec<RowDiff>> {
    let rows = computed_rows(engine)?;
    let mut out = Vec::new();
    for ((g, n), (nq, mq)) in TABLE7_ROWS.iter().zip(rows) {
        for (form, got) in [(Form::N, nq), (Form::M, mq)] {
            let want = golden(*g, *n, form)?;
            for k in 0..=*n as usize {
                out.push(RowDiff {
                    g: *g,
                    n: *n,
                    k,
                    form,
                    expected: want.sector(k).clone(),
                    computed: got.sector(k).clone(),
                });
            }
        }
    }
    Ok(out)
}
