//! Matrix Market input (column-net model) and plain-text partition files.
//!
//! Rows become vertices, columns become hyperedges, and a structural nonzero
//! at `(r, c)` becomes the pin `<e_c, v_r>`. Numerical values are ignored.

use std::io::{BufRead, Write};
use std::str::FromStr;

use log::warn;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Partition, VertexId};

/// How hyperedge weights are assigned after ingestion. Vertex weights are
/// always 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightScheme {
    #[default]
    UnitAll,
    /// `γ(e) = |e|`.
    EdgeSize,
}

impl WeightScheme {
    pub fn apply(self, h: Hypergraph) -> Hypergraph {
        match self {
            WeightScheme::UnitAll => {
                let w = vec![1; h.num_hyperedges()];
                h.with_edge_weights(w)
            }
            WeightScheme::EdgeSize => {
                let w = (0..h.num_hyperedges())
                    .map(|e| h.edge_size(e).max(1) as u64)
                    .collect();
                h.with_edge_weights(w)
            }
        }
        .expect("weights sized to the hypergraph and positive")
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" | "unit-all" => Ok(WeightScheme::UnitAll),
            "size" | "hyperedge-size" => Ok(WeightScheme::EdgeSize),
            other => Err(Error::Config(format!(
                "unknown edge weight scheme {other:?} (expected unit or size)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Mirrored,
}

/// Counters collected while reading a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub rows: usize,
    pub columns: usize,
    /// Coordinate lines read (before mirroring).
    pub entries: usize,
    /// Distinct structural nonzeros, i.e. pins.
    pub pins: usize,
    pub duplicate_entries: usize,
    pub dropped_empty_columns: usize,
}

fn parse_header(line: &str) -> Result<Symmetry> {
    let fields: Vec<String> = line
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" {
        return Err(Error::parse(
            1,
            "malformed header: expected %%MatrixMarket banner",
        ));
    }
    if fields[1] != "matrix" {
        return Err(Error::parse(
            1,
            format!("unsupported object {:?}", fields[1]),
        ));
    }
    if fields[2] != "coordinate" {
        return Err(Error::parse(
            1,
            format!("unsupported format {:?} (only coordinate)", fields[2]),
        ));
    }
    match fields[3].as_str() {
        "real" | "integer" | "pattern" | "complex" | "double" => {}
        other => return Err(Error::parse(1, format!("unsupported field {other:?}"))),
    }
    match fields[4].as_str() {
        "general" => Ok(Symmetry::General),
        "symmetric" | "skew-symmetric" | "hermitian" => Ok(Symmetry::Mirrored),
        other => Err(Error::parse(1, format!("unsupported symmetry {other:?}"))),
    }
}

fn parse_index(token: Option<&str>, line: usize, what: &str, limit: usize) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what} index")))?;
    let i: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} index {token:?}")))?;
    if i == 0 || i > limit {
        return Err(Error::parse(
            line,
            format!("{what} index {i} out of range 1..={limit}"),
        ));
    }
    Ok(i - 1)
}

/// Reads a Matrix Market coordinate matrix as a hypergraph.
pub fn read_matrix_market<R: BufRead>(
    source: R,
    scheme: WeightScheme,
) -> Result<(Hypergraph, IngestStats)> {
    let mut lines = source.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let symmetry = parse_header(&header?)?;

    let mut size_line = None;
    for (no, line) in lines.by_ref() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size_line = Some((no, line));
        break;
    }
    let (no, size_line) =
        size_line.ok_or_else(|| Error::parse(1, "truncated: missing size line"))?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(no, "malformed size line"))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::parse(
            no,
            "size line must have rows, columns and entries",
        ));
    };
    if symmetry == Symmetry::Mirrored && rows != cols {
        return Err(Error::parse(no, "symmetric matrix must be square"));
    }

    let mut columns: Vec<Vec<VertexId>> = vec![Vec::new(); cols];
    let mut read = 0usize;
    let mut last_line = no;
    for (no, line) in lines {
        let line = line?;
        last_line = no;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        if read == nnz {
            return Err(Error::parse(no, format!("more than {nnz} entries")));
        }
        let mut tokens = t.split_whitespace();
        let r = parse_index(tokens.next(), no, "row", rows)?;
        let c = parse_index(tokens.next(), no, "column", cols)?;
        columns[c].push(r as VertexId);
        if symmetry == Symmetry::Mirrored && r != c {
            columns[r].push(c as VertexId);
        }
        read += 1;
    }
    if read < nnz {
        return Err(Error::parse(
            last_line,
            format!("truncated: expected {nnz} entries, found {read}"),
        ));
    }

    let mut stats = IngestStats {
        rows,
        columns: cols,
        entries: read,
        ..IngestStats::default()
    };
    let mut kept = Vec::with_capacity(cols);
    for mut col in columns {
        let before = col.len();
        col.sort_unstable();
        col.dedup();
        stats.duplicate_entries += before - col.len();
        if col.is_empty() {
            stats.dropped_empty_columns += 1;
        } else {
            stats.pins += col.len();
            kept.push(col);
        }
    }
    if stats.dropped_empty_columns > 0 {
        warn!("dropped {} empty columns", stats.dropped_empty_columns);
    }
    let m = kept.len();
    let h = Hypergraph::new(vec![1; rows], vec![1; m], kept)?;
    Ok((scheme.apply(h), stats))
}

/// Writes a structure-only Matrix Market file whose column-net hypergraph
/// is `h` (one column per hyperedge).
pub fn write_matrix_market<W: Write>(h: &Hypergraph, mut sink: W) -> Result<()> {
    writeln!(sink, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(
        sink,
        "{} {} {}",
        h.num_vertices(),
        h.num_hyperedges(),
        h.num_pins()
    )?;
    for e in 0..h.num_hyperedges() {
        for &v in h.pins(e) {
            writeln!(sink, "{} {}", v + 1, e + 1)?;
        }
    }
    sink.flush()?;
    Ok(())
}

/// One decimal part id per line; line `i` holds the part of vertex `i`.
pub fn write_partition<W: Write>(p: &Partition, mut sink: W) -> Result<()> {
    for &part in p.assignment() {
        writeln!(sink, "{part}")?;
    }
    sink.flush()?;
    Ok(())
}

pub fn read_partition<R: BufRead>(source: R, h: &Hypergraph, k: usize) -> Result<Partition> {
    let mut assignment = Vec::with_capacity(h.num_vertices());
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let part: u32 = t
            .parse()
            .map_err(|_| Error::parse(i + 1, format!("not a part id: {t:?}")))?;
        if part as usize >= k {
            return Err(Error::parse(
                i + 1,
                format!("part id out of range: {part} >= {k}"),
            ));
        }
        assignment.push(part);
    }
    if assignment.len() != h.num_vertices() {
        return Err(Error::Parse {
            line: assignment.len(),
            message: format!(
                "wrong line count: expected {}, found {}",
                h.num_vertices(),
                assignment.len()
            ),
        });
    }
    Partition::new(h, k, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str, scheme: WeightScheme) -> Result<(Hypergraph, IngestStats)> {
        read_matrix_market(text.as_bytes(), scheme)
    }

    #[test]
    fn identity_matrix() {
        let (h, _) = read(
            "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 1.0\n2 2 1.0\n3 3 1.0\n",
            WeightScheme::UnitAll,
        )
        .unwrap();
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.num_hyperedges(), 3);
        assert!((0..3).all(|e| h.edge_size(e) == 1));
    }

    #[test]
    fn full_two_by_two_with_size_weights() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n2 2 4\n1 1\n1 2\n2 1\n2 2\n";
        let (h, stats) = read(text, WeightScheme::EdgeSize).unwrap();
        assert_eq!(h.pins(0), &[0, 1]);
        assert_eq!(h.pins(1), &[0, 1]);
        assert_eq!(h.edge_weights(), &[2, 2]);
        assert_eq!(stats.pins, 4);
    }

    #[test]
    fn coordinate_transcription() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n% comment\n3 2 4\n1 1\n2 1\n2 2\n3 2\n";
        let (h, _) = read(text, WeightScheme::UnitAll).unwrap();
        assert_eq!(h.pins(0), &[0, 1]);
        assert_eq!(h.pins(1), &[1, 2]);
        assert!(h.validate().is_empty());
    }

    #[test]
    fn symmetric_equals_mirrored_general() {
        let sym =
            "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 4\n2 1 1\n3 2 1\n3 3 2\n";
        let gen = "%%MatrixMarket matrix coordinate real general\n3 3 6\n1 1 4\n2 1 1\n1 2 1\n3 2 1\n2 3 1\n3 3 2\n";
        let (a, _) = read(sym, WeightScheme::UnitAll).unwrap();
        let (b, _) = read(gen, WeightScheme::UnitAll).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicates_collapse_and_empty_columns_drop() {
        let text = "%%MatrixMarket matrix coordinate pattern general\n2 3 3\n1 1\n1 1\n2 3\n";
        let (h, stats) = read(text, WeightScheme::UnitAll).unwrap();
        assert_eq!(h.num_hyperedges(), 2);
        assert_eq!(stats.duplicate_entries, 1);
        assert_eq!(stats.dropped_empty_columns, 1);
        assert_eq!(stats.pins, 2);
        assert_eq!(h.num_pins(), 2);
    }

    #[test]
    fn malformed_inputs_are_errors() {
        assert!(read("", WeightScheme::UnitAll).is_err());
        assert!(read(
            "%%MatrixMarket matrix array real general\n1 1\n1\n",
            WeightScheme::UnitAll
        )
        .is_err());
        assert!(read("hello\n", WeightScheme::UnitAll).is_err());
        let oob = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n";
        assert!(read(oob, WeightScheme::UnitAll).is_err());
        let truncated = "%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n";
        let err = read(truncated, WeightScheme::UnitAll).unwrap_err();
        assert!(err.to_string().contains("truncated"));
    }

    #[test]
    fn partition_file_format() {
        let h = Hypergraph::unweighted(4, vec![]).unwrap();
        let p = Partition::new(&h, 2, vec![0, 1, 0, 1]).unwrap();
        let mut out = Vec::new();
        write_partition(&p, &mut out).unwrap();
        assert_eq!(out, b"0\n1\n0\n1\n");

        let p4 = Partition::new(&h, 4, vec![3, 0, 2, 1]).unwrap();
        let mut out = Vec::new();
        write_partition(&p4, &mut out).unwrap();
        assert_eq!(out, b"3\n0\n2\n1\n");
        assert_eq!(read_partition(&out[..], &h, 4).unwrap(), p4);

        let empty = Hypergraph::unweighted(0, vec![]).unwrap();
        let mut out = Vec::new();
        write_partition(&Partition::new(&empty, 2, vec![]).unwrap(), &mut out).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn partition_file_errors() {
        let h = Hypergraph::unweighted(3, vec![]).unwrap();
        let err = read_partition(&b"0\n2\n1\n"[..], &h, 2).unwrap_err();
        assert!(err.to_string().contains("part id out of range"));
        let err = read_partition(&b"0\n1\n"[..], &h, 2).unwrap_err();
        assert!(err.to_string().contains("wrong line count"));
        assert!(read_partition(&b"0\nx\n1\n"[..], &h, 2).is_err());
    }

    proptest::proptest! {
        #[test]
        fn partition_round_trip(assignment in proptest::collection::vec(0u32..5, 0..40)) {
            let h = Hypergraph::unweighted(assignment.len(), vec![]).unwrap();
            let p = Partition::new(&h, 5, assignment).unwrap();
            let mut buf = Vec::new();
            write_partition(&p, &mut buf).unwrap();
            proptest::prop_assert_eq!(read_partition(&buf[..], &h, 5).unwrap(), p);
        }

        #[test]
        fn matrix_market_round_trip(
            pins in proptest::collection::vec(proptest::collection::btree_set(0u32..12, 1..6), 0..15)
        ) {
            let pins: Vec<Vec<u32>> = pins.into_iter().map(|s| s.into_iter().collect()).collect();
            let total: usize = pins.iter().map(Vec::len).sum();
            let h = Hypergraph::unweighted(12, pins).unwrap();
            let mut buf = Vec::new();
            write_matrix_market(&h, &mut buf).unwrap();
            let (back, stats) = read_matrix_market(&buf[..], WeightScheme::UnitAll).unwrap();
            proptest::prop_assert_eq!(stats.pins, total);
            proptest::prop_assert_eq!(back, h);
        }
    }
}
