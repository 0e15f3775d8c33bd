use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::MetricsRecord;
use crate::error::Result;

/// Header plus one row per record, columns in [`MetricsRecord`] field order.
pub fn write_csv<W: Write>(records: &[MetricsRecord], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    w.write_record(header())?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn header() -> &'static [&'static str] {
    &[
        "users",
        "picos",
        "seed",
        "algorithm",
        "outcome",
        "outer_iterations",
        "iterations_per_user",
        "assigned_users",
        "blocking_pairs",
        "avg_rate_per_user",
        "avg_rate_all_users",
        "avg_utility_per_user",
        "avg_utility_all_users",
        "laptop_utility",
        "tablet_utility",
        "smartphone_utility",
        "laptop_utility_all",
        "tablet_utility_all",
        "smartphone_utility_all",
        "avg_utility_per_scbs",
    ]
}

pub fn emit_csv(records: &[MetricsRecord], destination: &Path) -> Result<()> {
    let file = File::create(destination)?;
    write_csv(records, std::io::BufWriter::new(file))
}

pub fn parse_csv<R: Read>(reader: R) -> Result<Vec<MetricsRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    r.deserialize().map(|row| row.map_err(Into::into)).collect()
}

pub fn read_csv(source: &Path) -> Result<Vec<MetricsRecord>> {
    parse_csv(File::open(source)?)
}
