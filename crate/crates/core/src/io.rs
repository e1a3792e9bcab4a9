//! Text formats for filtrations, point clouds, distance matrices and diagrams.
//!
//! All readers skip blank lines and lines starting with `#`.
//!
//! | content | one line per | fields |
//! |---|---|---|
//! | filtration | simplex | `dim v0 .. vd value` |
//! | points | point | coordinates |
//! | distance matrix | point `i` | `d(i,0) .. d(i,i-1)`; the empty row 0 may be omitted |
//! | field diagram | pair | `dim birth death bval dval q` |
//! | multi-field diagram | entry | `dim birth death bval dval primes=q_a,q_b,..` |
//!
//! Deaths of essential classes are written `inf` in both index and value.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::complex::{FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::field::FieldDiagram;
use crate::generators::{DistanceMatrix, PointCloud};
use crate::multifield::MultiFieldDiagram;

fn data_lines(reader: impl BufRead) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(Error::Io(e))),
        Ok(line) => {
            let trimmed = line.trim();
            (!trimmed.is_empty() && !trimmed.starts_with('#')).then(|| Ok((i + 1, trimmed.to_string())))
        }
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token.parse().map_err(|_| parse_err(line, format!("'{token}' is not a number")))?;
    if v.is_nan() {
        return Err(parse_err(line, "NaN value"));
    }
    Ok(v)
}

/// Reads a filtration; simplices may come in any order.
pub fn read_filtration(reader: impl BufRead) -> Result<FilteredComplex> {
    let mut items = Vec::new();
    for entry in data_lines(reader) {
        let (line, text) = entry?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let dim: usize = tokens[0].parse().map_err(|_| parse_err(line, "dimension is not an integer"))?;
        if tokens.len() != dim + 3 {
            return Err(parse_err(line, format!("expected {} fields for a {dim}-simplex", dim + 3)));
        }
        let vertices = tokens[1..=dim + 1]
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| parse_err(line, format!("'{t}' is not a vertex id"))))
            .collect::<Result<Vec<u32>>>()?;
        let simplex = Simplex::new(vertices).map_err(|e| parse_err(line, e.to_string()))?;
        let value = parse_f64(tokens[dim + 2], line)?;
        items.push((simplex, value));
    }
    if items.is_empty() {
        return Err(Error::InvalidInput("filtration has no simplices".into()));
    }
    FilteredComplex::from_unsorted(items)
}

pub fn write_filtration(mut w: impl Write, complex: &FilteredComplex) -> Result<()> {
    for (s, v) in complex.simplices().iter().zip(complex.values()) {
        write!(w, "{}", s.dim())?;
        for x in s.vertices() {
            write!(w, " {x}")?;
        }
        writeln!(w, " {v}")?;
    }
    Ok(())
}

pub fn read_points(reader: impl BufRead) -> Result<PointCloud> {
    let mut points = Vec::new();
    for entry in data_lines(reader) {
        let (line, text) = entry?;
        points.push(text.split_whitespace().map(|t| parse_f64(t, line)).collect::<Result<Vec<f64>>>()?);
    }
    PointCloud::new(points)
}

pub fn write_points(mut w: impl Write, cloud: &PointCloud) -> Result<()> {
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(f64::to_string).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_distance_matrix(reader: impl BufRead) -> Result<DistanceMatrix> {
    let mut rows = vec![Vec::new()];
    for entry in data_lines(reader) {
        let (line, text) = entry?;
        let row = text.split_whitespace().map(|t| parse_f64(t, line)).collect::<Result<Vec<f64>>>()?;
        if row.len() != rows.len() {
            return Err(parse_err(line, format!("expected {} distances, found {}", rows.len(), row.len())));
        }
        rows.push(row);
    }
    DistanceMatrix::from_lower_triangular(rows)
}

fn fmt_death(death: Option<u32>, values: &[f64]) -> (String, String) {
    match death {
        Some(j) => (j.to_string(), values[j as usize - 1].to_string()),
        None => ("inf".into(), "inf".into()),
    }
}

/// `values[i - 1]` is the filtration value of index `i`.
pub fn write_field_diagram(mut w: impl Write, diagram: &FieldDiagram, values: &[f64]) -> Result<()> {
    for p in &diagram.pairs {
        let (death, dval) = fmt_death(p.death, values);
        writeln!(w, "{} {} {death} {} {dval} {}", p.dim, p.birth, values[p.birth as usize - 1], diagram.prime)?;
    }
    Ok(())
}

pub fn write_multifield_diagram(mut w: impl Write, mf: &MultiFieldDiagram) -> Result<()> {
    for p in mf.pairs() {
        let (death, dval) = fmt_death(p.death, mf.values());
        let primes: Vec<String> = mf.mask_primes(&p.mask).iter().map(u64::to_string).collect();
        writeln!(w, "{} {} {death} {} {dval} primes={}", p.dim, p.birth, mf.value(p.birth), primes.join(","))?;
    }
    Ok(())
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

pub fn load_filtration(path: &Path) -> Result<FilteredComplex> {
    read_filtration(open(path)?)
}

pub fn load_points(path: &Path) -> Result<PointCloud> {
    read_points(open(path)?)
}

pub fn load_distance_matrix(path: &Path) -> Result<DistanceMatrix> {
    read_distance_matrix(open(path)?)
}

/// Creates `path` and hands a buffered writer to `body`.
pub fn save(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crt::PrimeBasis;
    use crate::field::reduce_single_field;
    use crate::fixtures;
    use crate::multifield::reduce_multifield;

    #[test]
    fn filtration_round_trip() {
        let k = fixtures::rp2();
        let mut buf = Vec::new();
        write_filtration(&mut buf, &k).unwrap();
        let back = read_filtration(buf.as_slice()).unwrap();
        assert_eq!(back.simplices(), k.simplices());
        assert_eq!(back.values(), k.values());
    }

    #[test]
    fn filtration_sorted_on_load() {
        let text = "# triangle\n2 0 1 2 2\n1 0 1 1\n1 1 2 1.5\n\n1 0 2 1\n0 2 0\n0 1 0\n0 0 0\n";
        let k = read_filtration(text.as_bytes()).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.value(7), 2.0);
        assert_eq!(k.simplex(6).vertices(), &[1, 2]);
    }

    #[test]
    fn filtration_errors() {
        for bad in ["1 0 1\n", "x 0 1\n", "1 0 a 1\n", "0 0 nan\n", "1 0 0 1\n"] {
            assert!(matches!(read_filtration(bad.as_bytes()), Err(Error::Parse { line: 1, .. })), "{bad}");
        }
        assert!(matches!(read_filtration("1 0 1 1\n".as_bytes()), Err(Error::InvalidComplex(_))));
        assert!(matches!(read_filtration("# nothing\n".as_bytes()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn points_and_matrices() {
        let cloud = read_points("0 0\n1 0\n# c\n0 1\n".as_bytes()).unwrap();
        assert_eq!((cloud.len(), cloud.dim()), (3, 2));
        let mut buf = Vec::new();
        write_points(&mut buf, &cloud).unwrap();
        assert_eq!(read_points(buf.as_slice()).unwrap(), cloud);
        assert!(read_points("0 0\n1\n".as_bytes()).is_err());

        let m = read_distance_matrix("1\n1 2\n".as_bytes()).unwrap();
        assert_eq!((m.len(), m.get(2, 1)), (3, 2.0));
        assert!(matches!(read_distance_matrix("1\n1\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn diagram_formats() {
        let k = fixtures::filled_triangle();
        let (dgm, _) = reduce_single_field(&k, 2, false).unwrap();
        let mut buf = Vec::new();
        write_field_diagram(&mut buf, &dgm, k.values()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 1 inf 0 inf 2\n0 2 4 1 3 2\n0 3 5 2 4 2\n1 6 7 5 6 2\n");

        let (mf, _) = reduce_multifield(&fixtures::rp2(), &PrimeBasis::new(vec![2, 3]).unwrap(), false);
        let mut buf = Vec::new();
        write_multifield_diagram(&mut buf, &mf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().next().unwrap().ends_with("primes=2,3"));
        assert!(text.lines().any(|l| l.starts_with("2 ") && l.contains(" inf ") && l.ends_with("primes=2")));
        assert_eq!(text.lines().count(), mf.len());
    }
}
