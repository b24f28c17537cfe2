//! Matrix Market coordinate files and plain-text vectors.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::CsrMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a square `matrix coordinate real {general|symmetric}` file.
pub fn read_matrix_market<T: Scalar, R: BufRead>(reader: R) -> Result<CsrMatrix<T>> {
    let mut lines = reader.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = header?.to_ascii_lowercase();
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(1, "missing %%MatrixMarket matrix header"));
    }
    if fields[2] != "coordinate" {
        return Err(parse_err(1, format!("unsupported format '{}'", fields[2])));
    }
    if fields[3] != "real" && fields[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field '{}'", fields[3])));
    }
    let symmetric = match fields[4] {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(1, format!("unsupported symmetry '{other}'"))),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut trip = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        match size {
            None => {
                if parts.len() != 3 {
                    return Err(parse_err(lineno, "expected 'rows cols nnz'"));
                }
                let r: usize = parts[0].parse().map_err(|_| parse_err(lineno, "bad row count"))?;
                let c: usize = parts[1].parse().map_err(|_| parse_err(lineno, "bad column count"))?;
                let nnz: usize = parts[2].parse().map_err(|_| parse_err(lineno, "bad entry count"))?;
                if r != c {
                    return Err(Error::NotSquare { rows: r, cols: c });
                }
                size = Some((r, nnz));
                trip.reserve(if symmetric { 2 * nnz } else { nnz });
            }
            Some((n, _)) => {
                if parts.len() != 3 {
                    return Err(parse_err(lineno, "expected 'row col value'"));
                }
                let i: usize = parts[0].parse().map_err(|_| parse_err(lineno, "bad row index"))?;
                let j: usize = parts[1].parse().map_err(|_| parse_err(lineno, "bad column index"))?;
                let v: f64 = parts[2].parse().map_err(|_| parse_err(lineno, "bad value"))?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(lineno, format!("index ({i}, {j}) out of range")));
                }
                if !v.is_finite() {
                    return Err(parse_err(lineno, "non-finite value"));
                }
                trip.push((i - 1, j - 1, T::lit(v)));
                if symmetric && i != j {
                    trip.push((j - 1, i - 1, T::lit(v)));
                }
            }
        }
    }
    let (n, nnz) = size.ok_or_else(|| parse_err(1, "missing size line"))?;
    let stored = if symmetric {
        trip.iter().filter(|&&(i, j, _)| i >= j).count()
    } else {
        trip.len()
    };
    if stored != nnz {
        return Err(parse_err(0, format!("header declares {nnz} entries, found {stored}")));
    }
    CsrMatrix::from_triplets(n, &trip)
}

/// Writes `a` as a `general` coordinate file. Values use the shortest
/// representation that round-trips exactly.
pub fn write_matrix_market<T: Scalar, W: Write>(a: &CsrMatrix<T>, mut w: W) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.dim(), a.dim(), a.nnz())?;
    for i in 0..a.dim() {
        for (j, v) in a.row(i) {
            writeln!(w, "{} {} {}", i + 1, j + 1, v.as_f64())?;
        }
    }
    Ok(())
}

/// Reads one decimal value per line; blank lines and `#`/`%` comments are
/// skipped.
pub fn read_vector<T: Scalar, R: BufRead>(reader: R) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let v: f64 = t.parse().map_err(|_| parse_err(idx + 1, format!("bad value '{t}'")))?;
        if !v.is_finite() {
            return Err(parse_err(idx + 1, "non-finite value"));
        }
        out.push(T::lit(v));
    }
    Ok(out)
}

pub fn write_vector<T: Scalar, W: Write>(v: &[T], mut w: W) -> Result<()> {
    for x in v {
        writeln!(w, "{}", x.as_f64())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_file_expands() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 2\n1 1 -2\n2 1 0.5\n";
        let a: CsrMatrix<f64> = read_matrix_market(text.as_bytes()).unwrap();
        assert_eq!(a.get(0, 1), 0.5);
        assert_eq!(a.get(1, 0), 0.5);
        assert_eq!(a.get(0, 0), -2.0);
    }

    #[test]
    fn rejects_out_of_range() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n";
        assert!(matches!(
            read_matrix_market::<f64, _>(text.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn vector_round_trip() {
        let v = vec![0.1, -2.5e-17, 3.0];
        let mut buf = Vec::new();
        write_vector(&v, &mut buf).unwrap();
        let back: Vec<f64> = read_vector(buf.as_slice()).unwrap();
        assert_eq!(back, v);
    }
}
