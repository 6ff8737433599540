//! Per-space analysis records and their CSV export.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use topogames::constructions::{enumerate_t0, EnumMode};
use topogames::format::{space_doc, SpaceDoc};
use topogames::game::{ps, sm, SolverConfig};
use topogames::invariants::psw0;
use topogames::{canonical_code, FiniteSpace};

/// Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRecord {
    pub code: String,
    pub n: usize,
    pub opens: usize,
    pub ps: u32,
    pub sm: u32,
    pub psw0: u32,
    pub door: bool,
    pub discrete: bool,
}

pub fn analyze(space: &FiniteSpace, config: &SolverConfig) -> Result<AnalyzeRecord> {
    Ok(AnalyzeRecord {
        code: canonical_code(space).to_hex(),
        n: space.len(),
        opens: space.all_opens().len(),
        ps: ps(space)?,
        sm: sm(space, config)?,
        psw0: psw0(space),
        door: space.is_door(),
        discrete: space.is_discrete(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedSpace {
    #[serde(flatten)]
    pub record: AnalyzeRecord,
    pub space: SpaceDoc,
}

/// Every T₀ space with `1 <= n <= max_n` points, labeled or up to
/// isomorphism, each analyzed. Order is by size, then enumeration order.
pub fn enumerate(max_n: usize, mode: EnumMode, config: &SolverConfig) -> Result<Vec<EnumeratedSpace>> {
    let mut spaces = Vec::new();
    for n in 1..=max_n {
        spaces.extend(enumerate_t0(n, mode)?);
    }
    spaces
        .par_iter()
        .map(|s| {
            Ok(EnumeratedSpace {
                record: analyze(s, config)?,
                space: space_doc(s),
            })
        })
        .collect()
}

/// Writes the CSV table sorted by `(n, code)`. Rows with a repeated code are
/// dropped; one warning per dropped row is returned.
pub fn export_csv<W: Write>(records: &[AnalyzeRecord], out: W) -> Result<Vec<String>> {
    let mut rows: BTreeMap<(usize, String), &AnalyzeRecord> = BTreeMap::new();
    let mut warnings = Vec::new();
    for r in records {
        let key = (r.n, r.code.clone());
        if let Some(kept) = rows.get(&key) {
            let note = if *kept == r { "" } else { " with different values" };
            warnings.push(format!("duplicate code {} dropped{note}", r.code));
        } else {
            rows.insert(key, r);
        }
    }
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record(["code", "n", "opens", "ps", "sm", "psw0", "door", "discrete"])?;
    }
    for r in rows.values() {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use topogames::constructions::{chain, discrete, sierpinski};

    #[test]
    fn analyze_examples() {
        let cfg = SolverConfig::default();
        let r = analyze(&sierpinski(), &cfg).unwrap();
        assert_eq!((r.n, r.ps, r.sm, r.psw0, r.door), (2, 1, 1, 1, true));
        let r = analyze(&chain(3), &cfg).unwrap();
        assert_eq!((r.n, r.ps, r.sm, r.psw0, r.door), (3, 2, 2, 2, false));
        let r = analyze(&discrete(4), &cfg).unwrap();
        assert_eq!((r.n, r.ps, r.sm, r.psw0, r.opens), (4, 2, 1, 2, 16));
        assert!(r.discrete);
    }

    fn csv_of(records: &[AnalyzeRecord]) -> (String, Vec<String>) {
        let mut buf = Vec::new();
        let warnings = export_csv(records, &mut buf).unwrap();
        (String::from_utf8(buf).unwrap(), warnings)
    }

    #[test]
    fn export_examples() {
        let cfg = SolverConfig::default();
        let (text, _) = csv_of(&[]);
        assert_eq!(text, "code,n,opens,ps,sm,psw0,door,discrete\n");

        let a = analyze(&chain(3), &cfg).unwrap();
        let b = analyze(&sierpinski(), &cfg).unwrap();
        let (text, warnings) = csv_of(&[a.clone(), b.clone()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with(&format!("{},2,", b.code)));
        assert!(warnings.is_empty());

        let (text, warnings) = csv_of(&[a.clone(), a]);
        assert_eq!(text.lines().count(), 2);
        assert_eq!(warnings.len(), 1);
    }
}
