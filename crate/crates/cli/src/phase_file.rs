use std::collections::BTreeMap;
use std::io::Read;

use anyhow::{bail, Context, Result};
use gravtangle_core::gravity::build_from_phase_vector;
use gravtangle_core::qstate::{parse_bits, PureState};

/// Branch phases read from `bitstring,phase_rad` rows.
///
/// Lines starting with `#` are skipped, as is a header row whose first field
/// is not a bit-string.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector {
    pub n_qubits: usize,
    pub phases: BTreeMap<usize, f64>,
}

impl PhaseVector {
    pub fn parse<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let mut n_qubits = None;
        let mut phases = BTreeMap::new();
        for (k, record) in rdr.records().enumerate() {
            let record = record?;
            let line = record.position().map_or(k as u64 + 1, |p| p.line());
            if record.len() != 2 {
                bail!("line {line}: expected `bitstring,phase_rad`, found {} fields", record.len());
            }
            let bits = &record[0];
            let Ok((index, n)) = parse_bits(bits) else {
                if k == 0 && !bits.is_empty() {
                    continue;
                }
                bail!("line {line}: invalid bit-string {bits:?}");
            };
            let phase: f64 =
                record[1].parse().with_context(|| format!("line {line}: invalid phase {:?}", &record[1]))?;
            if !phase.is_finite() {
                bail!("line {line}: phase must be finite");
            }
            match n_qubits {
                None => n_qubits = Some(n),
                Some(m) if m != n => bail!("line {line}: bit-string {bits} has {n} qubits, expected {m}"),
                _ => {}
            }
            if phases.insert(index, phase).is_some() {
                bail!("line {line}: bit-string {bits} given twice");
            }
        }
        let Some(n_qubits) = n_qubits else {
            bail!("phase file has no rows");
        };
        Ok(Self { n_qubits, phases })
    }

    pub fn state(&self) -> Result<PureState> {
        Ok(build_from_phase_vector(self.n_qubits, &self.phases)?)
    }
}
