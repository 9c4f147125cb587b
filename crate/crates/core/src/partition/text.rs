//! Text forms: `1,5|2|3|4` (blocks by minimum, `|`-separated) and
//! `rgs:0,1,2,2`.

use std::fmt;
use std::str::FromStr;

use super::{Block, SetPartition};
use crate::error::{Error, Result};

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.to_blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (k, x) in block.elements().iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({})", self)
    }
}

impl SetPartition {
    /// Writes the `rgs:` form.
    pub fn to_rgs_string(&self) -> String {
        let parts: Vec<String> = self.rgs().iter().map(|v| v.to_string()).collect();
        format!("rgs:{}", parts.join(","))
    }

    /// Parses either text form. When `n` is `None` the ground set is taken
    /// from the input (largest element, or sequence length).
    pub fn parse(text: &str, n: Option<usize>) -> Result<SetPartition> {
        let trimmed = text.trim_start();
        let offset = text.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("rgs:") {
            let rgs = parse_numbers(rest, offset + 4, ',')?
                .into_iter()
                .map(|(v, col)| {
                    u8::try_from(v).map_err(|_| Error::Parse {
                        line: 1,
                        column: col,
                        message: format!("rgs entry {} too large", v),
                    })
                })
                .collect::<Result<Vec<u8>>>()?;
            if let Some(n) = n {
                if rgs.len() != n {
                    return Err(Error::HeaderMismatch {
                        line: 1,
                        expected: n,
                        found: rgs.len(),
                    });
                }
            }
            return SetPartition::from_rgs(rgs);
        }

        let mut blocks = Vec::new();
        let mut col = 1;
        for piece in text.split('|') {
            let elems = parse_numbers(piece, col - 1, ',')?;
            if elems.is_empty() {
                return Err(Error::Parse {
                    line: 1,
                    column: col,
                    message: "empty block".into(),
                });
            }
            let values: Vec<usize> = elems.iter().map(|&(v, _)| v).collect();
            if let Some(&(_, c)) = elems.iter().find(|&&(v, _)| v == 0) {
                return Err(Error::Parse {
                    line: 1,
                    column: c,
                    message: "elements are 1-based".into(),
                });
            }
            blocks.push(Block::new(values)?);
            col += piece.len() + 1;
        }
        let n = match n {
            Some(n) => n,
            None => blocks
                .iter()
                .flat_map(|b| b.elements().iter().copied())
                .max()
                .unwrap_or(0),
        };
        SetPartition::from_blocks(n, &blocks)
    }
}

/// Splits `text` on `sep` into integers, tracking 1-based columns (offset by
/// `base`).
fn parse_numbers(text: &str, base: usize, sep: char) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut col = base + 1;
    if text.trim().is_empty() {
        return Ok(out);
    }
    for tok in text.split(sep) {
        let lead = tok.len() - tok.trim_start().len();
        let t = tok.trim();
        let at = col + lead;
        if t.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: at,
                message: "missing number".into(),
            });
        }
        let v: usize = t.parse().map_err(|_| Error::Parse {
            line: 1,
            column: at,
            message: format!("expected an integer, found `{}`", t),
        })?;
        out.push((v, at));
        col += tok.len() + 1;
    }
    Ok(out)
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<SetPartition> {
        SetPartition::parse(s, None)
    }
}
