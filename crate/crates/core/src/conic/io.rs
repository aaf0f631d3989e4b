//! Plain-text dump/load of conic problems for cross-solver debugging.
//!
//! Format (line-oriented, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! conic 1              # header with format version
//!VARS n
//! ROWS m
//! C                    # then n lines, one objective coefficient each
//! <value>...
//! CONES k              # then k lines: "<kind> <dim>", kind in
//! zero|nonneg|soc|psd  #   {zero,nonneg,soc,psd}; psd dim is the side
//! B                    # then m lines
//! <value>...
//! A nnz                # then nnz triplet lines: "row col value"
//! <i> <j> <value>...
//! END
//! ```
//!
//! Floats are written with 17 significant digits so a dump/load round trip
//! preserves `f64` values exactly.

use std::io::{BufRead, Write};

use super::{Cone, ConicProblem};
use crate::linalg::real::RealMatrix;
use crate::{Error, Result};

pub fn dump_problem<W: Write>(problem: &ConicProblem, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "conic 1")?;
    writeln!(out, "VARS {}", problem.num_vars())?;
    writeln!(out, "ROWS {}", problem.num_rows())?;
    writeln!(out, "C")?;
    for v in &problem.c {
        writeln!(out, "{v:.17e}")?;
    }
    writeln!(out, "CONES {}", problem.cones.len())?;
    for cone in &problem.cones {
        match cone {
            Cone::Zero(k) => writeln!(out, "zero {k}")?,
            Cone::Nonneg(k) => writeln!(out, "nonneg {k}")?,
            Cone::Soc(k) => writeln!(out, "soc {k}")?,
            Cone::Psd(p) => writeln!(out, "psd {p}")?,
        }
    }
    writeln!(out, "B")?;
    for v in &problem.b {
        writeln!(out, "{v:.17e}")?;
    }
    let nnz = problem.a.data().iter().filter(|v| **v != 0.0).count();
    writeln!(out, "A {nnz}")?;
    for i in 0..problem.a.nrows() {
        for j in 0..problem.a.ncols() {
            let v = problem.a[(i, j)];
            if v != 0.0 {
                writeln!(out, "{i} {j} {v:.17e}")?;
            }
        }
    }
    writeln!(out, "END")?;
    Ok(())
}

pub fn load_problem<R: BufRead>(input: &mut R) -> Result<ConicProblem> {
    let mut lines = Vec::new();
    let mut buf = String::new();
    loop {
        buf.clear();
        if input.read_line(&mut buf)? == 0 {
            break;
        }
        let line = buf.split('#').next().unwrap_or("").trim().to_string();
        if !line.is_empty() {
            lines.push(line);
        }
    }
    let mut it = lines.into_iter();
    let mut next = || it.next().ok_or_else(|| Error::Config("conic dump: unexpected end of input".into()));

    let header = next()?;
    if header != "conic 1" {
        return Err(Error::Config(format!("conic dump: unsupported header `{header}`")));
    }
    let n: usize = parse_tagged(&next()?, "VARS")?;
    let m: usize = parse_tagged(&next()?, "ROWS")?;
    expect(&next()?, "C")?;
    let mut c = Vec::with_capacity(n);
    for _ in 0..n {
        c.push(parse_f64(&next()?)?);
    }
    let ncones: usize = parse_tagged(&next()?, "CONES")?;
    let mut cones = Vec::with_capacity(ncones);
    for _ in 0..ncones {
        let line = next()?;
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let dim: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Config(format!("conic dump: bad cone line `{line}`")))?;
        cones.push(match kind {
            "zero" => Cone::Zero(dim),
            "nonneg" => Cone::Nonneg(dim),
            "soc" => Cone::Soc(dim),
            "psd" => Cone::Psd(dim),
            other => {
                return Err(Error::Config(format!("conic dump: unknown cone kind `{other}`")))
            }
        });
    }
    expect(&next()?, "B")?;
    let mut b = Vec::with_capacity(m);
    for _ in 0..m {
        b.push(parse_f64(&next()?)?);
    }
    let nnz: usize = parse_tagged(&next()?, "A")?;
    let mut a = RealMatrix::zeros(m, n);
    for _ in 0..nnz {
        let line = next()?;
        let mut parts = line.split_whitespace();
        let parse_idx = |t: Option<&str>| -> Result<usize> {
            t.and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Config(format!("conic dump: bad triplet `{line}`")))
        };
        let i = parse_idx(parts.next())?;
        let j = parse_idx(parts.next())?;
        let v = parse_f64(parts.next().unwrap_or(""))?;
        if i >= m || j >= n {
            return Err(Error::Config(format!("conic dump: triplet out of range `{line}`")));
        }
        a[(i, j)] = v;
    }
    expect(&next()?, "END")?;
    let problem = ConicProblem { c, a, b, cones };
    problem.validate()?;
    Ok(problem)
}

fn expect(line: &str, tag: &str) -> Result<()> {
    if line == tag {
        Ok(())
    } else {
        Err(Error::Config(format!("conic dump: expected `{tag}`, found `{line}`")))
    }
}

fn parse_tagged(line: &str, tag: &str) -> Result<usize> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::Config(format!("conic dump: expected `{tag} <count>`, found `{line}`")));
    }
    parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Config(format!("conic dump: bad count in `{line}`")))
}

fn parse_f64(token: &str) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("conic dump: bad float `{token}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::{solve, SolverSettings};

    #[test]
    fn round_trip_preserves_bits_and_solutions() {
        let mut a = RealMatrix::zeros(3, 1);
        a[(0, 0)] = -1.0;
        a[(1, 0)] = 0.125e-3;
        let p = ConicProblem {
            c: vec![1.0 / 3.0],
            a,
            b: vec![0.0, 3.0, 4.0 + 1e-13],
            cones: vec![Cone::Soc(3)],
        };
        let mut text = Vec::new();
        dump_problem(&p, &mut text).unwrap();
        let q = load_problem(&mut text.as_slice()).unwrap();
        assert_eq!(p.c[0].to_bits(), q.c[0].to_bits());
        assert_eq!(p.b.len(), q.b.len());
        for i in 0..p.b.len() {
            assert_eq!(p.b[i].to_bits(), q.b[i].to_bits());
        }
        assert_eq!(p.a.data().len(), q.a.data().len());
        for (x, y) in p.a.data().iter().zip(q.a.data()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
        assert_eq!(p.cones, q.cones);
        let s1 = solve(&p, &SolverSettings::default()).unwrap();
        let s2 = solve(&q, &SolverSettings::default()).unwrap();
        assert_eq!(s1.x[0].to_bits(), s2.x[0].to_bits());
    }

    #[test]
    fn load_rejects_malformed_input() {
        let text = b"conic 1\nVARS 1\nROWS 1\nC\n1.0\nCONES 1\nwedge 1\n";
        assert!(load_problem(&mut text.as_slice()).is_err());
        let text = b"conic 2\n";
        assert!(load_problem(&mut text.as_slice()).is_err());
    }
}
