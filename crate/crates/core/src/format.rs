//! Text formats: graph6 and plain edge lists.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const GRAPH6_HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are tolerated.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(base + pos, format!("byte 0x{:02x} outside 63..=126", body[pos])));
    }
    let (n, header_len) = decode_length(body).map_err(|(off, why)| g6_err(base + off, why))?;

    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != bytes_needed {
        return Err(g6_err(
            base + header_len,
            format!("expected {bytes_needed} data bytes for n={n}, found {}", data.len()),
        ));
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = data[bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((u, v));
            }
            bit += 1;
            if bit == bits_needed {
                break 'outer;
            }
        }
    }
    if bits_needed % 6 != 0 {
        let last = data[data.len() - 1] - 63;
        let pad = 6 - bits_needed % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(base + header_len + data.len() - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn decode_length(body: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let six = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match body {
        [] => Err((0, "missing length header".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err((2, "truncated 8-byte length header".into()));
            }
            let n = six(&rest[..6]);
            if n <= 258_047 {
                return Err((2, format!("non-canonical long length {n}")));
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err((1, "truncated 4-byte length header".into()));
            }
            let n = six(&rest[..3]);
            if n <= 62 {
                return Err((1, format!("non-canonical length {n}")));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

/// Encodes `g` in graph6 (upper triangle, column by column).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| 63 + ((n >> (6 * i)) & 63) as u8));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| 63 + ((n >> (6 * i)) & 63) as u8));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Result of parsing an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListParse {
    pub graph: Graph,
    /// Number of duplicate edge lines that were collapsed.
    pub duplicate_edges: usize,
}

/// Parses lines of `u v` pairs. An optional first data line `n <count>`
/// fixes the vertex count; otherwise it is `max id + 1`. Blank lines and
/// `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<EdgeListParse> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| Error::EdgeList { line: line_no, reason };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if seen_data {
                return Err(err("vertex count must come before any edge".into()));
            }
            if tokens.len() != 2 {
                return Err(err("expected `n <count>`".into()));
            }
            declared = Some(tokens[1].parse().map_err(|_| err(format!("bad count {:?}", tokens[1])))?);
            seen_data = true;
            continue;
        }
        seen_data = true;
        if tokens.len() != 2 {
            return Err(err(format!("expected two vertex ids, found {}", tokens.len())));
        }
        let id = |t: &str| t.parse::<Vertex>().map_err(|_| err(format!("bad vertex id {t:?}")));
        let (u, v) = (id(tokens[0])?, id(tokens[1])?);
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        edges.push((u.min(v), u.max(v)));
    }
    let max_id = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < max_id => {
            return Err(Error::EdgeList {
                line: 1,
                reason: format!("declared n={n} but vertex {} appears", max_id - 1),
            })
        }
        Some(n) => n,
        None => max_id,
    };
    let raw_count = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let duplicate_edges = raw_count - edges.len();
    Ok(EdgeListParse { graph: Graph::from_edges(n, edges)?, duplicate_edges })
}

/// Writes `n <count>` followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent encoder: builds the full bit string first, then packs it.
    fn oracle_graph6(n: usize, edges: &[(usize, usize)]) -> String {
        let mut bits = Vec::new();
        for v in 1..n {
            for u in 0..v {
                bits.push(edges.contains(&(u, v)) || edges.contains(&(v, u)));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        assert!(n <= 62);
        s.push((63 + n as u8) as char);
        for chunk in bits.chunks(6) {
            let val = chunk.iter().fold(0u8, |a, &b| a * 2 + b as u8);
            s.push((63 + val) as char);
        }
        s
    }

    #[test]
    fn tiny_graphs_match_format_oracle() {
        assert_eq!(oracle_graph6(1, &[]), "@");
        assert_eq!(oracle_graph6(2, &[(0, 1)]), "A_");
        assert_eq!(oracle_graph6(2, &[]), "A?");

        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        let e2 = parse_graph6("A?").unwrap();
        assert_eq!((e2.n(), e2.edge_count()), (2, 0));
        assert_eq!(to_graph6(&k1), "@");
        assert_eq!(to_graph6(&k2), "A_");
    }

    #[test]
    fn encoder_matches_oracle_on_assorted_graphs() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (5, (0..5).map(|i| (i, (i + 1) % 5)).collect()),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            (7, (1..7).map(|i| (0, i)).collect()),
            (9, vec![(0, 8), (3, 4), (2, 7)]),
        ];
        for (n, edges) in cases {
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let expected = oracle_graph6(n, &edges);
            assert_eq!(to_graph6(&g), expected);
            assert_eq!(parse_graph6(&expected).unwrap(), g);
        }
    }

    #[test]
    fn known_strings() {
        // K4 and C5 from the nauty documentation conventions
        assert_eq!(to_graph6(&Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()), "C~");
        assert_eq!(to_graph6(&Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()), "Dhc");
    }

    #[test]
    fn header_and_long_form() {
        let g = parse_graph6(">>graph6<<A_\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        let big = Graph::from_edges(100, (0..99).map(|i| (i, i + 1))).unwrap();
        let s = to_graph6(&big);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), big);
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        // nonzero padding: n=2 needs one bit, low five bits must be zero
        assert!(matches!(parse_graph6("A`"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("A\u{7}"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("B"), Err(Error::Graph6 { .. })));
        assert!(matches!(parse_graph6("~??"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6(">>graph6<<A\u{1}"), Err(Error::Graph6 { offset: 11, .. })));
    }

    #[test]
    fn edge_lists() {
        let p = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count(), p.duplicate_edges), (3, 2, 0));

        let p = parse_edge_list("n 4\n0 1").unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count()), (4, 1));

        let p = parse_edge_list("# comment\n\n0 1 # trailing\n1 0\n").unwrap();
        assert_eq!((p.graph.edge_count(), p.duplicate_edges), (1, 1));

        assert!(matches!(parse_edge_list("0 0"), Err(Error::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 -1"), Err(Error::EdgeList { .. })));
        assert!(matches!(parse_edge_list("0 x"), Err(Error::EdgeList { .. })));
        assert!(matches!(parse_edge_list("n 2\n0 5"), Err(Error::EdgeList { .. })));

        let g = parse_edge_list("n 5\n0 1\n3 4\n").unwrap().graph;
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap().graph, g);
    }
}
