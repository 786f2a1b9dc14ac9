//! The road-network exchange format.
//!
//! A plain text format in the DIMACS style: `c` comment lines, one
//! `p ev <vertices> <segments>` header, then one `a <u> <v> <length_m>
//! <class>` line per undirected road segment with 1-based endpoints.
//! Loading expands every segment into 2 directions x 3 driving styles
//! of integer-weighted edges, so edge ids are segment-major: segment k
//! produces ids 6k..6k+5 ordered fast, moderate, slow, each u-to-v
//! then v-to-u.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{RoadGraph, RoadGraphBuilder, VertexId};
use crate::ingest::params::{DrivingParams, RoadClass, DRIVING_STYLES};
use crate::weight::BiWeight;

const METERS_PER_MILE: f64 = 1609.344;
const METERS_PER_SECOND_PER_MPH: f64 = 0.44704;

/// One undirected road segment as stored on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub u: VertexId,
    pub v: VertexId,
    pub length_m: i64,
    pub class: RoadClass,
}

/// A parsed graph file; segments in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub vertex_count: usize,
    pub segments: Vec<Segment>,
}

/// Integer (seconds, Wh) for one style over `length_m` meters,
/// rounded half away from zero independently per component.
pub fn styled_weights(length_m: f64, class: RoadClass, params: &DrivingParams) -> [BiWeight; 3] {
    DRIVING_STYLES.map(|style| {
        let p = params.get(class, style);
        let seconds = length_m / (p.speed_mph as f64 * METERS_PER_SECOND_PER_MPH);
        let wh = length_m / METERS_PER_MILE * p.wh_per_mile as f64;
        BiWeight::new(seconds.round() as i64, wh.round() as i64)
    })
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        let mut header: Option<(usize, usize)> = None;
        let mut segments: Vec<Segment> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(parse_err(line_no, "duplicate header"));
                    }
                    if tokens.next() != Some("ev") {
                        return Err(parse_err(line_no, "header must read `p ev <n> <segments>`"));
                    }
                    let n = parse_number::<usize>(line_no, tokens.next(), "vertex count")?;
                    let m = parse_number::<usize>(line_no, tokens.next(), "segment count")?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after header"));
                    }
                    header = Some((n, m));
                }
                Some("a") => {
                    let Some((n, _)) = header else {
                        return Err(parse_err(line_no, "segment before header"));
                    };
                    let u = parse_number::<usize>(line_no, tokens.next(), "endpoint")?;
                    let v = parse_number::<usize>(line_no, tokens.next(), "endpoint")?;
                    let length_m = parse_number::<i64>(line_no, tokens.next(), "length")?;
                    let class_code = parse_number::<i64>(line_no, tokens.next(), "class")?;
                    if tokens.next().is_some() {
                        return Err(parse_err(line_no, "trailing tokens after segment"));
                    }
                    if u == 0 || u > n || v == 0 || v > n {
                        return Err(parse_err(
                            line_no,
                            &format!("endpoint out of range 1..={n}"),
                        ));
                    }
                    if length_m <= 0 {
                        return Err(Error::NonPositiveLength {
                            line: line_no,
                            length: length_m,
                        });
                    }
                    let class = RoadClass::from_code(class_code).ok_or(Error::UnknownClass {
                        line: line_no,
                        class: class_code,
                    })?;
                    segments.push(Segment {
                        u: u - 1,
                        v: v - 1,
                        length_m,
                        class,
                    });
                }
                Some(other) => {
                    return Err(parse_err(line_no, &format!("unknown record {other:?}")));
                }
                None => unreachable!("blank lines skipped above"),
            }
        }
        let (vertex_count, declared) = header.ok_or(parse_err(0, "missing `p ev` header"))?;
        if segments.len() != declared {
            return Err(parse_err(
                0,
                &format!(
                    "header declares {declared} segments, file has {}",
                    segments.len()
                ),
            ));
        }
        Ok(GraphFile {
            vertex_count,
            segments,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p ev {} {}\n", self.vertex_count, self.segments.len()));
        for s in &self.segments {
            out.push_str(&format!(
                "a {} {} {} {}\n",
                s.u + 1,
                s.v + 1,
                s.length_m,
                s.class.code()
            ));
        }
        out
    }

    /// Expands to the directed styled multigraph: 6 edges per segment.
    pub fn expand(&self, params: &DrivingParams) -> RoadGraph {
        let mut b = RoadGraphBuilder::new(self.vertex_count, DRIVING_STYLES.len());
        for s in &self.segments {
            let weights = styled_weights(s.length_m as f64, s.class, params);
            for (style, w) in weights.into_iter().enumerate() {
                b.add_edge(s.u, s.v, w, style);
                b.add_edge(s.v, s.u, w, style);
            }
        }
        b.build()
    }

    pub fn load(path: &Path) -> Result<GraphFile> {
        GraphFile::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Parse and expand in one step.
pub fn load_graph(path: &Path, params: &DrivingParams) -> Result<RoadGraph> {
    Ok(GraphFile::load(path)?.expand(params))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_number<T: std::str::FromStr>(
    line: usize,
    token: Option<&str>,
    what: &str,
) -> Result<T> {
    let token = token.ok_or_else(|| parse_err(line, &format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, &format!("bad {what} {token:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::params::DrivingStyle;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_mile_conversions() {
        let params = DrivingParams::default();
        let local = styled_weights(1609.344, RoadClass::Local, &params);
        assert_eq!(local[DrivingStyle::Slow.index()], BiWeight::new(180, 197));
        let highway = styled_weights(1609.344, RoadClass::Highway, &params);
        assert_eq!(highway[DrivingStyle::Fast.index()], BiWeight::new(51, 378));
    }

    #[test]
    fn parses_and_expands_a_small_file() {
        let text = "\
c two segments on three vertices
p ev 3 2
a 1 2 1000 1
a 2 3 250 4
";
        let gf = GraphFile::parse(text).unwrap();
        assert_eq!(gf.vertex_count, 3);
        assert_eq!(
            gf.segments,
            vec![
                Segment { u: 0, v: 1, length_m: 1000, class: RoadClass::Highway },
                Segment { u: 1, v: 2, length_m: 250, class: RoadClass::Local },
            ]
        );
        let g = gf.expand(&DrivingParams::default());
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 12);
        // Segment-major layout: ids 0..6 belong to the first segment,
        // alternating directions within each style.
        let e = g.edge(0);
        assert_eq!((e.from, e.to, e.style), (0, 1, 0));
        let e = g.edge(1);
        assert_eq!((e.from, e.to, e.style), (1, 0, 0));
        let e = g.edge(4);
        assert_eq!((e.from, e.to, e.style), (0, 1, 2));
        assert_eq!(g.edge(6).from, 1);
        // Forward and reverse duplicates carry identical weights.
        for k in 0..6 {
            assert_eq!(g.edge(2 * k).weight, g.edge(2 * k + 1).weight);
        }
    }

    #[test]
    fn header_only_file_is_an_empty_graph() {
        let gf = GraphFile::parse("p ev 5 0\n").unwrap();
        assert_eq!(gf.vertex_count, 5);
        assert!(gf.segments.is_empty());
        let g = gf.expand(&DrivingParams::default());
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 0));
    }

    #[test]
    fn malformed_files_are_rejected() {
        let cases: Vec<(&str, fn(&Error) -> bool)> = vec![
            ("a 1 2 100 1\n", |e| matches!(e, Error::Parse { line: 1, .. })),
            ("p sp 3 1\na 1 2 100 1\n", |e| matches!(e, Error::Parse { line: 1, .. })),
            ("p ev 3 1\na 1 4 100 1\n", |e| matches!(e, Error::Parse { line: 2, .. })),
            ("p ev 3 1\na 0 2 100 1\n", |e| matches!(e, Error::Parse { line: 2, .. })),
            ("p ev 3 1\na 1 2 0 1\n", |e| {
                matches!(e, Error::NonPositiveLength { line: 2, length: 0 })
            }),
            ("p ev 3 1\na 1 2 -5 1\n", |e| {
                matches!(e, Error::NonPositiveLength { line: 2, length: -5 })
            }),
            ("p ev 3 1\na 1 2 100 7\n", |e| {
                matches!(e, Error::UnknownClass { line: 2, class: 7 })
            }),
            ("p ev 3 1\na 1 2 100 1 9\n", |e| matches!(e, Error::Parse { line: 2, .. })),
            ("p ev 3 2\na 1 2 100 1\n", |e| matches!(e, Error::Parse { line: 0, .. })),
            ("p ev 3 1\nb 1 2\n", |e| matches!(e, Error::Parse { line: 2, .. })),
            ("", |e| matches!(e, Error::Parse { line: 0, .. })),
        ];
        for (text, check) in cases {
            let err = GraphFile::parse(text).unwrap_err();
            assert!(check(&err), "{text:?} gave {err}");
        }
    }

    #[test]
    fn faster_styles_are_quicker_and_no_cheaper_per_segment() {
        let gf = crate::ingest::generate::gen_grid(
            6,
            6,
            &crate::ingest::generate::ClassMix::default(),
            0x5eed,
        );
        let g = gf.expand(&DrivingParams::default());
        for k in 0..gf.segments.len() {
            let fast = g.edge(6 * k).weight;
            let moderate = g.edge(6 * k + 2).weight;
            let slow = g.edge(6 * k + 4).weight;
            assert!(fast.time < moderate.time && moderate.time < slow.time);
            assert!(fast.energy >= moderate.energy && moderate.energy >= slow.energy);
        }
    }

    #[test]
    fn serialization_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xf11e);
        for _ in 0..25 {
            let n = rng.random_range(2..=12);
            let m = rng.random_range(0..=20);
            let segments: Vec<Segment> = (0..m)
                .map(|_| Segment {
                    u: rng.random_range(0..n),
                    v: rng.random_range(0..n),
                    length_m: rng.random_range(1..=8000),
                    class: RoadClass::from_code(rng.random_range(1..=4)).unwrap(),
                })
                .collect();
            let gf = GraphFile {
                vertex_count: n,
                segments,
            };
            let reparsed = GraphFile::parse(&gf.to_text()).unwrap();
            assert_eq!(reparsed, gf);
            let params = DrivingParams::default();
            assert_eq!(
                gf.expand(&params).edges(),
                reparsed.expand(&params).edges()
            );
        }
    }
}
