//! File formats: points CSV, permutation and matrix payloads, and the
//! key = value config files.

use anyhow::{anyhow, bail, Context, Result};
use lowdisc_core::generators::{DigitalMatrices, UpperMatrix};
use lowdisc_core::rat::Rat;
use std::fs;
use std::path::Path;

/// Read a points CSV: header `x` or `x,y`, cells exact rationals.
pub fn read_points(path: &Path) -> Result<Vec<Vec<Rat>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| anyhow!("empty points file"))?;
    let dim = match header.trim() {
        "x" => 1,
        "x,y" => 2,
        other => bail!("unrecognized header {other:?}; expected 'x' or 'x,y'"),
    };
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != dim {
            bail!("row {} has {} cells, expected {dim}", i + 2, cells.len());
        }
        let row: Vec<Rat> = cells
            .iter()
            .map(|c| Rat::parse(c).map_err(|e| anyhow!("row {}: {e}", i + 2)))
            .collect::<Result<_>>()?;
        points.push(row);
    }
    if points.is_empty() {
        bail!("no points in {}", path.display());
    }
    Ok(points)
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Sparse upper-triangular matrix payload: lines of `row col value`
/// triples (whitespace separated, `#` comments allowed).
pub fn read_upper_matrix(path: &Path, base: u32, nut: bool) -> Result<UpperMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            bail!("line {}: expected 'row col value'", i + 1);
        }
        let triple: Vec<u32> = parts
            .iter()
            .map(|p| {
                p.parse()
                    .map_err(|_| anyhow!("line {}: bad number {p:?}", i + 1))
            })
            .collect::<Result<_>>()?;
        entries.push((triple[0], triple[1], triple[2]));
    }
    let m = if nut {
        UpperMatrix::nut(base, entries)
    } else {
        UpperMatrix::strict(base, entries)
    };
    m.map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Dense square matrices payload: comma-separated rows, one matrix per
/// blank-line separated block.
pub fn read_dense_matrices(path: &Path, base: u32) -> Result<DigitalMatrices> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut mats: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut current: Vec<Vec<u32>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if !current.is_empty() {
                mats.push(std::mem::take(&mut current));
            }
            continue;
        }
        let row: Vec<u32> = line
            .split(',')
            .map(|c| c.trim().parse().map_err(|_| anyhow!("bad entry {c:?}")))
            .collect::<Result<_>>()?;
        current.push(row);
    }
    if !current.is_empty() {
        mats.push(current);
    }
    DigitalMatrices::new(base, mats).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Bit-row payload for base-2 matrices: one row per line, columns left to
/// right as `0`/`1` characters, or `0x...` hex masks (bit j = column
/// j+1). The names `reversal` and `pascal` expand to those matrices.
pub fn read_bit_rows(spec: &str, m: usize) -> Result<Vec<u64>> {
    match spec {
        "reversal" => return Ok((0..m).map(|r| 1u64 << (m - 1 - r)).collect()),
        "pascal" => {
            return Ok(lowdisc_core::generators::pascal_matrix(2, m)
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &v)| acc | ((v as u64) << j))
                })
                .collect())
        }
        _ => {}
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = if let Some(hex) = line.strip_prefix("0x") {
            u64::from_str_radix(hex, 16).map_err(|_| anyhow!("bad hex row {line:?}"))?
        } else {
            let mut mask = 0u64;
            for (j, ch) in line.chars().filter(|c| !c.is_whitespace()).enumerate() {
                match ch {
                    '1' => mask |= 1 << j,
                    '0' => {}
                    other => bail!("bad bit {other:?} in row {line:?}"),
                }
            }
            mask
        };
        rows.push(row);
    }
    if rows.len() != m {
        bail!("expected {m} rows, found {}", rows.len());
    }
    Ok(rows)
}

/// Expand a `key = value` config file into command-line flags that are
/// inserted ahead of the explicit ones (explicit flags win).
pub fn config_to_args(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut args = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected 'key = value'", i + 1))?;
        let key = key.trim();
        let value = value.trim();
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_file(content: &str) -> temppath::TempPath {
        let mut f = temppath::TempPath::new();
        f.file.write_all(content.as_bytes()).unwrap();
        f
    }

    mod temppath {
        use std::fs::File;
        use std::path::PathBuf;

        pub struct TempPath {
            pub file: File,
            pub path: PathBuf,
        }

        impl TempPath {
            pub fn new() -> Self {
                let path = std::env::temp_dir().join(format!(
                    "lowdisc-test-{}-{:x}",
                    std::process::id(),
                    std::time::SystemTime::now()
                        .duration_since(std::time::UNIX_EPOCH)
                        .unwrap()
                        .as_nanos()
                ));
                TempPath {
                    file: File::create(&path).unwrap(),
                    path,
                }
            }
        }

        impl Drop for TempPath {
            fn drop(&mut self) {
                let _ = std::fs::remove_file(&self.path);
            }
        }
    }

    #[test]
    fn points_round_trip() {
        let f = temp_file("x,y\n0,1/2\n3/4,1\n");
        let pts = read_points(&f.path).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0][1], Rat::new(1, 2));
        assert_eq!(pts[1][0], Rat::new(3, 4));
    }

    #[test]
    fn rejects_ragged_rows() {
        let f = temp_file("x,y\n0\n");
        assert!(read_points(&f.path).is_err());
        let f = temp_file("z\n0\n");
        assert!(read_points(&f.path).is_err());
    }

    #[test]
    fn upper_matrix_payload() {
        let f = temp_file("# strict upper\n0 1 1\n1 3 2\n");
        let m = read_upper_matrix(&f.path, 3, false).unwrap();
        assert_eq!(m.upper_entries(0), &[(1, 1)]);
        assert_eq!(m.upper_entries(1), &[(3, 2)]);
    }

    #[test]
    fn dense_matrices_payload() {
        let f = temp_file("1,0\n0,1\n\n0,1\n1,0\n");
        let mats = read_dense_matrices(&f.path, 2).unwrap();
        assert_eq!(mats.dim(), 2);
        assert_eq!(mats.m(), 2);
    }

    #[test]
    fn bit_rows_payload() {
        assert_eq!(read_bit_rows("reversal", 3).unwrap(), vec![4, 2, 1]);
        let f = temp_file("101\n010\n0x7\n");
        let rows = read_bit_rows(f.path.to_str().unwrap(), 3).unwrap();
        assert_eq!(rows, vec![0b101, 0b010, 0b111]);
    }

    #[test]
    fn config_args() {
        let f = temp_file("m-max = 6\npm = true\nseed = 9\n");
        let args = config_to_args(&f.path).unwrap();
        assert_eq!(args, vec!["--m-max", "6", "--pm", "--seed", "9"]);
    }
}
