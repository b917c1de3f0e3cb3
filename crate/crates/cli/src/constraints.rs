//! Constraint files for `qhat solve`.
//!
//! One constraint per line: a vector in the basis `(h, e1, ..., e_r)`
//! followed by a residue mod 4. Entries may be separated by commas or
//! spaces and the vector may be wrapped in brackets. `#` starts a comment.
//!
//! ```text
//! # e1 - e2 vanishes
//! [0, 1, -1, 0, 0, 0, 0, 0, 0]  0
//! ```

use delpezzo_core::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub line: usize,
    pub vector: DivisorClass,
    pub residue: u8,
}

pub fn parse(text: &str, rank: usize) -> Result<Vec<Constraint>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace() || "[]()".contains(c))
            .filter(|t| !t.is_empty())
            .collect();
        let Some((last, coords)) = tokens.split_last() else {
            continue;
        };
        let residue: i64 = last
            .parse()
            .map_err(|_| format!("line {line}: bad residue {last:?}"))?;
        let coords = coords
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| format!("line {line}: bad coordinate {t:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != rank {
            return Err(format!(
                "line {line}: expected {rank} coordinates, found {}",
                coords.len()
            ));
        }
        out.push(Constraint {
            line,
            vector: DivisorClass::new(coords),
            residue: residue.rem_euclid(4) as u8,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let text = "# comment\n[0, 1, -1] 0\n\n1 0 0  2 # trailing\n(1,1,1),-1\n";
        let c = parse(text, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].vector.coords(), &[0, 1, -1]);
        assert_eq!((c[0].line, c[0].residue), (2, 0));
        assert_eq!((c[1].line, c[1].residue), (4, 2));
        assert_eq!(c[2].residue, 3);
    }

    #[test]
    fn errors() {
        assert!(parse("1 2 0", 3).unwrap_err().contains("expected 3"));
        assert!(parse("1 x 0 0", 3).unwrap_err().contains("bad coordinate"));
        assert!(parse("1 0 0 z", 3).unwrap_err().contains("bad residue"));
    }
}
