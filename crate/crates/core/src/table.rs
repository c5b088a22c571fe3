//! Bracket table export.
//!
//! Rows are the non-zero brackets `[x, y]` of enumerated generators with `x`
//! before `y` in enumeration order, written in that order whatever the
//! number of workers.

use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::LieAlgebra;
use crate::base::BaseAlgebra;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::generator::{element_to_json, GenId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidLabel(format!("unknown format {s:?} (json, csv or text)"))),
        }
    }
}

pub type Row = (GenId, GenId, Element<GenId>);

/// Non-zero brackets of all pairs `i < j`, on `workers` threads (0 uses the
/// global pool).
pub fn bracket_table(alg: &dyn LieAlgebra, gens: &[GenId], workers: usize) -> Result<Vec<Row>> {
    let run = || -> Result<Vec<Row>> {
        let per_row: Vec<Result<Vec<Row>>> = (0..gens.len())
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                for y in &gens[i + 1..] {
                    let b = alg.bracket_gens(&gens[i], y)?;
                    if !b.is_zero() {
                        out.push((gens[i], *y, b));
                    }
                }
                Ok(out)
            })
            .collect();
        let mut rows = Vec::new();
        for r in per_row {
            rows.extend(r?);
        }
        Ok(rows)
    };
    if workers == 0 {
        return run();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    pool.install(run)
}

/// Writes the table; `header` goes into the JSON object alongside the
/// entries and is ignored by the other formats.
pub fn write_table(w: &mut dyn Write, rows: &[Row], header: &Value, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            // stream the entries one per line instead of building one value
            let head = serde_json::to_string(header)?;
            let open =
                head.strip_suffix('}').ok_or_else(|| Error::Domain("table header must be a JSON object".into()))?;
            w.write_all(open.as_bytes())?;
            w.write_all(if open == "{" { b"\"entries\":[" } else { b",\"entries\":[" })?;
            for (k, (x, y, b)) in rows.iter().enumerate() {
                if k > 0 {
                    w.write_all(b",")?;
                }
                w.write_all(b"\n")?;
                let entry = json!({"lhs": x.to_string(), "rhs": y.to_string(), "result": element_to_json(b)});
                serde_json::to_writer(&mut *w, &entry)?;
            }
            w.write_all(b"\n]}\n")?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["lhs", "rhs", "gen", "coeff"]).map_err(csv_error)?;
            for (x, y, b) in rows {
                for (g, c) in b.terms() {
                    csv.write_record([x.to_string(), y.to_string(), g.to_string(), c.to_string()])
                        .map_err(csv_error)?;
                }
            }
            csv.flush()?;
        }
        Format::Text => {
            for (x, y, b) in rows {
                writeln!(w, "[{x}, {y}] = {b}")?;
            }
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Non-zero `f^{abc}` with `a < b < c`, and the Cartan matrix.
pub fn base_dump(g: &BaseAlgebra) -> Value {
    let d = g.dim();
    let mut f = Vec::new();
    for a in 1..=d {
        for b in a + 1..=d {
            for c in b + 1..=d {
                let v = g.structure_constant(a, b, c);
                if !v.is_zero() {
                    f.push(json!({"a": a, "b": b, "c": c, "f": v.to_string()}));
                }
            }
        }
    }
    json!({
        "algebra": g.name(),
        "dim": d,
        "rank": g.rank(),
        "cartan_matrix": g.cartan_matrix(),
        "structure_constants": f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{family_algebra, Family};
    use crate::base::builtin_algebra;
    use crate::verify::{enumerate_generators, Basis, Cutoffs};

    fn bytes(family: Family, cut: u32, workers: usize, format: Format) -> Vec<u8> {
        let g = builtin_algebra("su2").unwrap();
        let alg = family_algebra(g, family);
        let gens = enumerate_generators(g, family, Cutoffs::uniform(cut), Basis::Hermitian);
        let rows = bracket_table(alg.as_ref(), &gens, workers).unwrap();
        let mut out = Vec::new();
        write_table(&mut out, &rows, &json!({"family": family.name()}), format).unwrap();
        out
    }

    #[test]
    fn deterministic_across_workers() {
        for format in [Format::Json, Format::Csv, Format::Text] {
            let a = bytes(Family::Torus, 2, 1, format);
            assert_eq!(a, bytes(Family::Torus, 2, 3, format));
            assert_eq!(a, bytes(Family::Torus, 2, 0, format));
        }
    }

    #[test]
    fn json_parses() {
        let v: Value = serde_json::from_slice(&bytes(Family::Sphere, 1, 1, Format::Json)).unwrap();
        assert_eq!(v["family"], "sphere");
        assert!(!v["entries"].as_array().unwrap().is_empty());
    }

    #[test]
    fn su2_base() {
        let v = base_dump(builtin_algebra("su2").unwrap());
        assert_eq!(v["structure_constants"], json!([{"a": 1, "b": 2, "c": 3, "f": "sqrt(2)"}]));
    }
}
