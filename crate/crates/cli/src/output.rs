//! Dependency-free artifact writers: CSV, JSON, binary PPM/PBM images.

use std::io::Write;
use std::path::Path;

use cqca::pauli::Pauli;
use serde::Serialize;

pub fn write_text(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), String> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_text(path, &out)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| format!("serialization failed: {e}"))?;
    text.push('\n');
    write_text(path, &text)
}

/// Pauli color palette: identity black, X blue, Y green, Z orange.
fn pauli_rgb(p: Pauli) -> [u8; 3] {
    match p {
        Pauli::I => [0, 0, 0],
        Pauli::X => [30, 100, 230],
        Pauli::Y => [40, 170, 70],
        Pauli::Z => [240, 150, 30],
    }
}

/// Binary PPM (P6): one pixel per (site, time) cell, rows top to bottom.
pub fn write_ppm(path: &Path, rows: &[Vec<Pauli>]) -> Result<(), String> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut bytes = format!("P6\n{width} {height}\n255\n").into_bytes();
    for row in rows {
        for &p in row {
            bytes.extend_from_slice(&pauli_rgb(p));
        }
    }
    let mut file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    file.write_all(&bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Plain PBM (P1): 1 marks a set cell.
pub fn write_pbm(path: &Path, rows: &[Vec<bool>]) -> Result<(), String> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut out = format!("P1\n{width} {height}\n");
    for row in rows {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    write_text(path, &out)
}
