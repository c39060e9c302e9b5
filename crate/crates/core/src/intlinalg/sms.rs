//! SMS sparse text format: a `<rows> <cols> M` header, one 1-based
//! `i j v` triple per nonzero, and a `0 0 0` terminator.

use std::io::{self, BufRead, Write};

use num_bigint::BigInt;

use super::{LinalgError, SparseIntMatrix};

/// Writes entries in row-major order.
pub fn write_sms<W: Write>(m: &SparseIntMatrix, mut out: W) -> io::Result<()> {
    writeln!(out, "{} {} M", m.rows(), m.cols())?;
    let t = m.transpose();
    for (c, r, v) in t.triplets() {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    writeln!(out, "0 0 0")
}

pub fn to_sms_string(m: &SparseIntMatrix) -> String {
    let mut buf = Vec::new();
    write_sms(m, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("SMS output is ASCII")
}

pub fn read_sms<R: BufRead>(input: R) -> Result<SparseIntMatrix, LinalgError> {
    let err = |line: usize, reason: &str| LinalgError::Sms { line, reason: reason.to_string() };
    let mut lines = input.lines().enumerate();
    let (rows, cols) = loop {
        let Some((no, line)) = lines.next() else {
            return Err(err(0, "missing header"));
        };
        let line = line.map_err(|e| err(no + 1, &e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 || fields[2] != "M" {
            return Err(err(no + 1, "header must be `<rows> <cols> M`"));
        }
        let rows = fields[0].parse::<usize>().map_err(|_| err(no + 1, "bad row count"))?;
        let cols = fields[1].parse::<usize>().map_err(|_| err(no + 1, "bad column count"))?;
        break (rows, cols);
    };
    let mut triplets = Vec::new();
    let mut terminated = false;
    for (no, line) in lines {
        let line = line.map_err(|e| err(no + 1, &e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if terminated {
            return Err(err(no + 1, "content after terminator"));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(no + 1, "expected `i j v`"));
        }
        let i = fields[0].parse::<usize>().map_err(|_| err(no + 1, "bad row index"))?;
        let j = fields[1].parse::<usize>().map_err(|_| err(no + 1, "bad column index"))?;
        let v = fields[2].parse::<BigInt>().map_err(|_| err(no + 1, "bad value"))?;
        if i == 0 && j == 0 {
            terminated = true;
            continue;
        }
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(err(no + 1, "index out of range"));
        }
        triplets.push((i - 1, j - 1, v));
    }
    if !terminated {
        return Err(err(0, "missing `0 0 0` terminator"));
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_row_major_with_terminator() {
        let m = SparseIntMatrix::from_dense(&[vec![0, 2], vec![-3, 0]]);
        assert_eq!(to_sms_string(&m), "2 2 M\n1 2 2\n2 1 -3\n0 0 0\n");
    }

    #[test]
    fn read_back() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, 7], vec![0, -2, 0]]);
        let text = to_sms_string(&m);
        assert_eq!(read_sms(text.as_bytes()).unwrap(), m);
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_sms("2 2\n0 0 0\n".as_bytes()).is_err());
        assert!(read_sms("2 2 M\n3 1 1\n0 0 0\n".as_bytes()).is_err());
        assert!(read_sms("2 2 M\n1 1 1\n".as_bytes()).is_err());
    }
}
