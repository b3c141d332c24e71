//! Text encodings for source graphs: graph6 (header-free) and a plain
//! edge list.
//!
//! Edge-list layout: a header line `n m`, followed by exactly `m` lines
//! `u v` with 0-based ids. `#` starts a comment running to end of line and
//! blank lines are ignored.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Edgelist,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edgelist" | "el" => Ok(GraphFormat::Edgelist),
            other => Err(Error::InvalidArgument(format!(
                "unknown graph format {other:?}"
            ))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::Edgelist => parse_edgelist(text),
    }
}

pub fn write_graph(h: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(h),
        GraphFormat::Edgelist => to_edgelist(h),
    }
}

const G6_MIN: u8 = 63;
const G6_MAX: u8 = 126;

fn g6_byte(bytes: &[u8], pos: usize) -> Result<u8> {
    match bytes.get(pos) {
        None => Err(Error::parse(
            format!("byte {pos}"),
            "unexpected end of input",
        )),
        Some(&b) if (G6_MIN..=G6_MAX).contains(&b) => Ok(b - G6_MIN),
        Some(&b) => Err(Error::parse(
            format!("byte {pos}"),
            format!("value {b} outside the graph6 range 63..=126"),
        )),
    }
}

/// Decodes one header-free graph6 string. A single trailing newline is
/// accepted; padding bits must be zero.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text
        .strip_suffix('\n')
        .map(|t| t.strip_suffix('\r').unwrap_or(t))
        .unwrap_or(text)
        .as_bytes();
    if bytes.starts_with(b">>graph6<<") {
        return Err(Error::parse("byte 0", "graph6 header is not supported"));
    }
    let first = g6_byte(bytes, 0)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else if g6_byte(bytes, 1)? < 63 {
        let mut n = 0usize;
        for i in 1..4 {
            n = n << 6 | g6_byte(bytes, i)? as usize;
        }
        if n < 63 {
            return Err(Error::parse("byte 1", "non-canonical size encoding"));
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = n << 6 | g6_byte(bytes, i)? as usize;
        }
        if n < 258048 {
            return Err(Error::parse("byte 2", "non-canonical size encoding"));
        }
        (n, 8)
    };
    // Keep hostile inputs from requesting absurd allocations.
    let pairs = n
        .checked_mul(n.saturating_sub(1))
        .map(|p| p / 2)
        .ok_or_else(|| Error::parse("byte 0", "vertex count overflows"))?;
    let body_len = pairs.div_ceil(6);
    if bytes.len() != pos + body_len {
        return Err(Error::parse(
            format!("byte {}", bytes.len().min(pos + body_len)),
            format!(
                "expected {} bytes for {n} vertices, found {}",
                pos + body_len,
                bytes.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    'cols: for v in 1..n {
        for u in 0..v {
            let byte = g6_byte(bytes, pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
            if k == pairs {
                break 'cols;
            }
        }
    }
    if pairs % 6 != 0 {
        let last = g6_byte(bytes, pos + body_len - 1)?;
        let pad = 6 - pairs % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(
                format!("byte {}", pos + body_len - 1),
                "nonzero padding bits",
            ));
        }
    }
    pos += body_len;
    debug_assert_eq!(pos, bytes.len());
    Graph::new(n, edges)
}

pub fn to_graph6(h: &Graph) -> String {
    let n = h.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + G6_MIN);
    } else if n < 258048 {
        out.push(G6_MAX);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + G6_MIN);
        }
    } else {
        out.extend([G6_MAX, G6_MAX]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + G6_MIN);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | h.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + G6_MIN);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + G6_MIN);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(format!("line {line}"), format!("invalid {what} {tok:?}")))
}

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse("line 1", "missing \"n m\" header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(
            format!("line {hline}"),
            "header must be \"n m\"",
        ));
    }
    let n = parse_usize(toks[0], hline, "vertex count")?;
    let m = parse_usize(toks[1], hline, "edge count")?;

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m.min(1 << 16));
    let mut seen = std::collections::HashSet::new();
    for (line, body) in lines {
        if edges.len() == m {
            return Err(Error::parse(
                format!("line {line}"),
                format!("more than the declared {m} edges"),
            ));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(format!("line {line}"), "edge must be \"u v\""));
        }
        let u = parse_usize(toks[0], line, "vertex id")?;
        let v = parse_usize(toks[1], line, "vertex id")?;
        if u >= n || v >= n {
            return Err(Error::parse(
                format!("line {line}"),
                format!("vertex id {} >= n = {n}", u.max(v)),
            ));
        }
        if u == v {
            return Err(Error::parse(
                format!("line {line}"),
                format!("self-loop at {u}"),
            ));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(
                format!("line {line}"),
                format!("duplicate edge ({u}, {v})"),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            "end of input",
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn to_edgelist(h: &Graph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for (u, v) in h.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edgelist_k2() {
        let h = parse_edgelist("2 1\n0 1\n").unwrap();
        assert_eq!(h, Graph::complete(2));
    }

    #[test]
    fn edgelist_comments_and_blank_lines() {
        let h = parse_edgelist("# triangle\n3 3\n\n0 1 # first\n1 2\n0 2\n").unwrap();
        assert_eq!(h, Graph::complete(3));
    }

    #[test]
    fn edgelist_errors_name_the_line() {
        let err = parse_edgelist("3 4\n0 1\n1 2\n0 2\n0 0\n").unwrap_err();
        assert_eq!(err, Error::parse("line 5", "self-loop at 0"));
        assert!(matches!(
            parse_edgelist("3 1\n0 3\n"),
            Err(Error::Parse { location, .. }) if location == "line 2"
        ));
        assert!(matches!(
            parse_edgelist("3 2\n0 1\n1 0\n"),
            Err(Error::Parse { location, message }) if location == "line 3" && message.contains("duplicate")
        ));
        assert!(parse_edgelist("3\n").is_err());
        assert!(parse_edgelist("").is_err());
        assert!(parse_edgelist("3 2\n0 1\n").is_err());
        assert!(parse_edgelist("3 1\n0 1\n1 2\n").is_err());
    }

    #[test]
    fn graph6_k4() {
        let h = parse_graph6("C~").unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h, Graph::complete(4));
        assert_eq!(to_graph6(&h), "C~");
    }

    #[test]
    fn graph6_known_strings() {
        // Reference encodings: empty K_1, P_3 (edges 01,12) and a 5-vertex sample.
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
        let h = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&h), "DQc");
    }

    #[test]
    fn graph6_large_size_prefix() {
        let h = Graph::path(70);
        let s = to_graph6(&h);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), h);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\x7f").is_err());
        // P_3 is "Bg"; "Bh" sets a padding bit.
        assert!(matches!(
            parse_graph6("Bh"),
            Err(Error::Parse { message, .. }) if message.contains("padding")
        ));
        assert!(parse_graph6(">>graph6<<C~").is_err());
        assert_eq!(parse_graph6("C~\n").unwrap(), Graph::complete(4));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..40).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::btree_set(0..pairs.max(1), 0..pairs.min(60) + 1).prop_map(
                move |idx| {
                    let mut edges = Vec::new();
                    for v in 1..n {
                        for u in 0..v {
                            if idx.contains(&Graph::pair_index(u, v)) {
                                edges.push((u, v));
                            }
                        }
                    }
                    Graph::new(n, edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn round_trip_both_formats(h in arb_graph()) {
            for fmt in [GraphFormat::Graph6, GraphFormat::Edgelist] {
                let text = write_graph(&h, fmt);
                prop_assert_eq!(&parse_graph(&text, fmt).unwrap(), &h);
            }
        }

        #[test]
        fn parsers_never_panic(s in ".{0,64}") {
            let _ = parse_graph6(&s);
            let _ = parse_edgelist(&s);
        }
    }
}
