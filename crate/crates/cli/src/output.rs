//! Rendering of records in the three output formats.

use std::fmt::Write as _;

use crate::record::{ObRecord, OutputRecord};

pub fn records_json(records: &[OutputRecord]) -> Result<String, String> {
    let mut text = String::new();
    for record in records {
        let line = serde_json::to_string(record)
            .map_err(|e| format!("cannot serialize record: {e}"))?;
        text.push_str(&line);
        text.push('\n');
    }
    Ok(text)
}

pub fn records_csv(records: &[OutputRecord]) -> Result<String, String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["input", "p", "method", "frobenius", "genus"])
        .map_err(|e| format!("cannot write csv: {e}"))?;
    for r in records {
        writer
            .write_record([
                r.input.as_str(),
                &r.p.to_string(),
                &r.method.to_string(),
                &r.frobenius.to_string(),
                &r.genus.map(|g| g.to_string()).unwrap_or_default(),
            ])
            .map_err(|e| format!("cannot write csv: {e}"))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| format!("cannot write csv: {e}"))?;
    String::from_utf8(bytes).map_err(|e| format!("csv is not utf-8: {e}"))
}

pub fn records_text(records: &[OutputRecord]) -> String {
    let mut text = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        let _ = writeln!(text, "input      {}", r.input);
        let _ = writeln!(text, "p          {}", r.p);
        let _ = writeln!(text, "method     {}", r.method);
        let _ = writeln!(text, "frobenius  {}", r.frobenius);
        match r.genus {
            Some(g) => {
                let _ = writeln!(text, "genus      {g}");
            }
            None => {
                let _ = writeln!(text, "genus      (no closed form)");
            }
        }
        if let Some(listing) = &r.apery {
            let joined: Vec<String> = listing.entries.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(
                text,
                "apery      modulus {}: {}",
                listing.modulus,
                joined.join(" ")
            );
        }
        if let Some(ok) = r.verified {
            let _ = writeln!(
                text,
                "verified   {}",
                if ok { "yes, oracle agrees" } else { "NO, oracle disagrees" }
            );
        }
    }
    text
}

pub fn ob_json(record: &ObRecord) -> Result<String, String> {
    serde_json::to_string(record)
        .map(|line| line + "\n")
        .map_err(|e| format!("cannot serialize record: {e}"))
}

pub fn ob_text(record: &ObRecord) -> String {
    let parts: Vec<String> = record.parts.iter().map(|v| v.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "parts   {}", parts.join(","));
    let _ = writeln!(text, "target  {}", record.target);
    match record.value {
        Some(v) => {
            let _ = writeln!(text, "value   {v}");
        }
        None => {
            let _ = writeln!(text, "value   unreachable");
        }
    }
    if let Some(witness) = &record.witness {
        let w: Vec<String> = witness.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "witness {}", w.join("+"));
    }
    text
}
