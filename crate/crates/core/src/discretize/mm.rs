use super::{DiscretizeError, EigenProblem};
use std::fmt::Write as _;
use std::path::Path;

const HEADER: &str = "%%MatrixMarket matrix coordinate real symmetric";

/// One stored entry, 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixMarketEntry {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

fn io(e: impl std::fmt::Display) -> DiscretizeError {
    DiscretizeError::Io(e.to_string())
}

pub(super) fn write_pair(p: &EigenProblem, dir: &Path, stem: &str) -> Result<(), DiscretizeError> {
    std::fs::create_dir_all(dir).map_err(io)?;
    let n = p.dim();
    let a = &p.form_matrix;
    let (cp, ri, v) = (a.col_ptr(), a.row_idx(), a.val());
    let mut entries = Vec::new();
    for j in 0..n {
        for k in cp[j]..cp[j + 1] {
            if ri[k] >= j {
                entries.push((ri[k], j, v[k]));
            }
        }
    }
    let mut s = String::new();
    writeln!(s, "{HEADER}").ok();
    writeln!(s, "% form matrix, {:?}", p.meta.kind).ok();
    writeln!(s, "{n} {n} {}", entries.len()).ok();
    for (i, j, x) in entries {
        writeln!(s, "{} {} {:.17e}", i + 1, j + 1, x).ok();
    }
    std::fs::write(dir.join(format!("{stem}_A.mtx")), s).map_err(io)?;

    let mut s = String::new();
    writeln!(s, "{HEADER}").ok();
    writeln!(s, "% diagonal weight matrix").ok();
    writeln!(s, "{n} {n} {n}").ok();
    for (i, w) in p.weights.iter().enumerate() {
        writeln!(s, "{} {} {:.17e}", i + 1, i + 1, w).ok();
    }
    std::fs::write(dir.join(format!("{stem}_B.mtx")), s).map_err(io)?;
    Ok(())
}

/// Reads a symmetric coordinate file back as `(dimension, lower entries)`.
pub fn read_matrix_market(path: &Path) -> Result<(usize, Vec<MatrixMarketEntry>), DiscretizeError> {
    let text = std::fs::read_to_string(path).map_err(io)?;
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| io("empty file"))?;
    if !head.trim().eq_ignore_ascii_case(HEADER) {
        return Err(io(format!("unsupported header: {head}")));
    }
    let mut lines = lines.filter(|l| !l.starts_with('%') && !l.trim().is_empty());
    let size: Vec<usize> = lines
        .next()
        .ok_or_else(|| io("missing size line"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(io))
        .collect::<Result<_, _>>()?;
    if size.len() != 3 || size[0] != size[1] {
        return Err(io("bad size line"));
    }
    let mut out = Vec::with_capacity(size[2]);
    for l in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 3 {
            return Err(io(format!("bad entry: {l}")));
        }
        let row: usize = t[0].parse().map_err(io)?;
        let col: usize = t[1].parse().map_err(io)?;
        out.push(MatrixMarketEntry { row: row - 1, col: col - 1, value: t[2].parse().map_err(io)? });
    }
    if out.len() != size[2] {
        return Err(io(format!("expected {} entries, found {}", size[2], out.len())));
    }
    Ok((size[0], out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::assemble_transverse;
    use crate::transverse::{BiasSide, CouplingParams};

    #[test]
    fn round_trip() {
        let p = assemble_transverse(&CouplingParams::new(1.0, 0.5, BiasSide::Interior).unwrap(), 3.0, 10).unwrap();
        let dir = tempfile::tempdir().unwrap();
        p.write_matrix_market(dir.path(), "h").unwrap();
        let (n, a) = read_matrix_market(&dir.path().join("h_A.mtx")).unwrap();
        assert_eq!(n, 11);
        assert_eq!(a.len(), 21);
        let dense = p.dense_form();
        for e in &a {
            assert!(e.row >= e.col);
            assert_eq!(dense[e.row * n + e.col], e.value);
        }
        let (_, b) = read_matrix_market(&dir.path().join("h_B.mtx")).unwrap();
        assert_eq!(b.iter().map(|e| e.value).collect::<Vec<_>>(), p.weights);
    }
}
