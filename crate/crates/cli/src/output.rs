use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Float with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV sink preceded by a provenance comment row.
pub struct CsvOut {
    writer: csv::Writer<Box<dyn Write>>,
}

impl CsvOut {
    pub fn open(path: Option<&Path>, provenance: &str, columns: &[&str]) -> Result<Self> {
        let mut sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        writeln!(sink, "{provenance}")?;
        let mut writer = csv::WriterBuilder::new().from_writer(sink);
        writer.write_record(columns)?;
        Ok(Self { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }
}
