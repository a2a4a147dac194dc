//! Matrix file format:
//! line 1: `field <p> <a>`; line 2: `dim <n>`; then n lines of n
//! space-separated element encodings. Out-of-range encodings are rejected.
//!
//! Witness files hold two consecutive matrix blocks followed by the trailer
//! line `verified commute=yes typesmatch=yes`.

use commat_core::gf::{Elem, Field};
use commat_core::matrix::Matrix;
use commat_core::{Error, Result};

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.into())
}

/// Parse one matrix block from the line iterator.
fn parse_block<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Matrix> {
    let header = lines
        .next()
        .ok_or_else(|| parse_err("missing `field p a` line"))?;
    let mut it = header.split_whitespace();
    if it.next() != Some("field") {
        return Err(parse_err("expected `field p a` header"));
    }
    let p: u32 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err("bad field characteristic"))?;
    let a: u32 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err("bad field degree"))?;
    if it.next().is_some() {
        return Err(parse_err("trailing tokens on field line"));
    }
    let field = Field::new(p, a)?;
    let dim_line = lines
        .next()
        .ok_or_else(|| parse_err("missing `dim n` line"))?;
    let mut it = dim_line.split_whitespace();
    if it.next() != Some("dim") {
        return Err(parse_err("expected `dim n` line"));
    }
    let n: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err("bad dimension"))?;
    if it.next().is_some() {
        return Err(parse_err("trailing tokens on dim line"));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| parse_err(&format!("missing row {r}")))?;
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            let enc: u32 = tok
                .parse()
                .map_err(|_| parse_err(&format!("bad entry `{tok}` in row {r}")))?;
            if enc >= field.q() {
                return Err(parse_err(&format!("entry {enc} out of range in row {r}")));
            }
            row.push(Elem(enc));
        }
        if row.len() != n {
            return Err(parse_err(&format!("row {r} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    Matrix::from_rows(&field, &rows)
}

/// Parse a single-matrix file.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let m = parse_block(&mut lines)?;
    if lines.next().is_some() {
        return Err(parse_err("unexpected content after matrix"));
    }
    Ok(m)
}

/// Render one matrix block.
pub fn format_matrix(m: &Matrix) -> String {
    let f = m.field();
    let mut out = format!("field {} {}\ndim {}\n", f.p(), f.a(), m.dim());
    for r in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|c| m.get(r, c).enc().to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Render a verified witness file: two matrix blocks plus the trailer.
pub fn format_witness(x: &Matrix, y: &Matrix) -> String {
    let mut out = format_matrix(x);
    out.push_str(&format_matrix(y));
    out.push_str("verified commute=yes typesmatch=yes\n");
    out
}

/// Parse a witness file back into its matrix pair (trailer checked).
pub fn parse_witness(text: &str) -> Result<(Matrix, Matrix)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let x = parse_block(&mut lines)?;
    let y = parse_block(&mut lines)?;
    match lines.next() {
        Some("verified commute=yes typesmatch=yes") => {}
        _ => return Err(parse_err("missing witness trailer")),
    }
    if lines.next().is_some() {
        return Err(parse_err("unexpected content after trailer"));
    }
    Ok((x, y))
}
