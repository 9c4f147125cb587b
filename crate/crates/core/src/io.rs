//! Family files.
//!
//! ```text
//! n=5 t=1
//! # comment
//! 1,5|2|3|4
//! 1|2|3|4,5
//! ```
//!
//! The header comes first (`t` optional), then one partition per line in
//! block or `rgs:` form. Output lists members in ascending rank. The JSON
//! form is `{"n":5,"t":1,"members":["1,5|2|3|4",...]}` and is accepted on
//! input as well.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::PartitionFamily;
use crate::partition::SetPartition;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{}` (text or json)", other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFile {
    pub family: PartitionFamily,
    pub t: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t: Option<usize>,
    members: Vec<String>,
}

fn parse_header(line: &str, lineno: usize) -> Result<(usize, Option<usize>)> {
    let mut n = None;
    let mut t = None;
    let mut col = 1;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            let bad = |msg: String| Error::Parse {
                line: lineno,
                column: col,
                message: msg,
            };
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found `{}`", tok)))?;
            let v: usize = value
                .parse()
                .map_err(|_| bad(format!("`{}` is not a non-negative integer", value)))?;
            match key {
                "n" => n = Some(v),
                "t" => t = Some(v),
                other => return Err(bad(format!("unknown header key `{}`", other))),
            }
        }
        col += tok.len() + 1;
    }
    let n = n.ok_or_else(|| Error::Parse {
        line: lineno,
        column: 1,
        message: "header must start with n=<N>".into(),
    })?;
    Ok((n, t))
}

pub fn parse_family(text: &str) -> Result<FamilyFile> {
    if text.trim_start().starts_with('{') {
        return parse_family_json(text);
    }
    let mut header: Option<(usize, Option<usize>)> = None;
    let mut family: Option<PartitionFamily> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        match header {
            None => {
                let (n, t) = parse_header(content, lineno)?;
                family = Some(PartitionFamily::empty(n).map_err(|e| e.at_line(lineno))?);
                header = Some((n, t));
            }
            Some((n, _)) => {
                let p = SetPartition::parse(content, Some(n)).map_err(|e| e.at_line(lineno))?;
                let fam = family.as_mut().expect("header seen");
                if !fam.insert(&p).map_err(|e| e.at_line(lineno))? {
                    return Err(Error::DuplicateMember {
                        line: lineno,
                        member: p.to_string(),
                    });
                }
            }
        }
    }
    match (header, family) {
        (Some((_, t)), Some(family)) => Ok(FamilyFile { family, t }),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "missing n=<N> header".into(),
        }),
    }
}

fn parse_family_json(text: &str) -> Result<FamilyFile> {
    let doc: FamilyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut family = PartitionFamily::empty(doc.n)?;
    for (k, m) in doc.members.iter().enumerate() {
        let p = SetPartition::parse(m, Some(doc.n)).map_err(|e| e.at_line(k + 1))?;
        if !family.insert(&p)? {
            return Err(Error::DuplicateMember {
                line: k + 1,
                member: m.clone(),
            });
        }
    }
    Ok(FamilyFile { family, t: doc.t })
}

pub fn read_family_file<P: AsRef<Path>>(path: P) -> Result<FamilyFile> {
    parse_family(&std::fs::read_to_string(path)?)
}

pub fn emit_family(family: &PartitionFamily, t: Option<usize>, format: Format) -> String {
    let members: Vec<String> = family.partitions().iter().map(|p| p.to_string()).collect();
    match format {
        Format::Text => {
            let mut out = format!("n={}", family.n());
            if let Some(t) = t {
                out.push_str(&format!(" t={}", t));
            }
            out.push('\n');
            for m in members {
                out.push_str(&m);
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = FamilyJson {
                n: family.n(),
                t,
                members,
            };
            serde_json::to_string(&doc).expect("family JSON") + "\n"
        }
    }
}

pub fn write_family_file<P: AsRef<Path>>(
    family: &PartitionFamily,
    t: Option<usize>,
    path: P,
    format: Format,
) -> Result<()> {
    std::fs::write(path, emit_family(family, t, format))?;
    Ok(())
}
