use std::path::Path;

use homverify::format::{parse_graph, parse_graph6, GraphFormat};
use homverify::{Graph, TargetGraph};

pub fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once(',')
        .ok_or_else(|| format!("edge must look like u,v: {s:?}"))?;
    let u = u.trim().parse().map_err(|_| format!("bad vertex {u:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad vertex {v:?}"))?;
    Ok((u, v))
}

pub fn parse_list(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not a nonnegative integer: {s:?}"))
}

/// Reads a graph from `g6:<code>` or a file. The format comes from
/// `format`, else from the extension (`.g6`/`.graph6` is graph6).
pub fn load_graph(src: &str, format: Option<&str>) -> Result<Graph, String> {
    if let Some(code) = src.strip_prefix("g6:") {
        return parse_graph6(code).map_err(|e| e.to_string());
    }
    let format = match format {
        Some(f) => f.parse::<GraphFormat>().map_err(|e| e.to_string())?,
        None => match Path::new(src).extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            _ => GraphFormat::Edgelist,
        },
    };
    let text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    parse_graph(&text, format).map_err(|e| format!("{src}: {e}"))
}

/// `@K<q>`, `@hardcore`, `@widom` (or `@wr`), otherwise a matrix file.
pub fn load_target(src: &str) -> Result<TargetGraph, String> {
    if let Some(name) = src.strip_prefix('@') {
        return match name {
            "hardcore" => Ok(TargetGraph::hardcore()),
            "widom" | "wr" => Ok(TargetGraph::widom_rowlinson()),
            _ => name
                .strip_prefix('K')
                .and_then(|q| q.parse::<usize>().ok())
                .filter(|&q| (1..=64).contains(&q))
                .map(TargetGraph::complete)
                .ok_or_else(|| format!("unknown builtin target {src:?}")),
        };
    }
    let text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    TargetGraph::parse(&text).map_err(|e| format!("{src}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_lists() {
        assert_eq!(parse_edge("0,1"), Ok((0, 1)));
        assert_eq!(parse_edge(" 3 , 2"), Ok((3, 2)));
        assert!(parse_edge("0-1").is_err());
        assert!(parse_list("x").is_err());
    }

    #[test]
    fn builtin_targets() {
        assert_eq!(load_target("@K3").unwrap(), TargetGraph::complete(3));
        assert_eq!(load_target("@wr").unwrap(), TargetGraph::widom_rowlinson());
        assert!(load_target("@K0").is_err());
        assert!(load_target("@petersen").is_err());
    }

    #[test]
    fn inline_graph6() {
        assert_eq!(load_graph("g6:C~", None).unwrap(), Graph::complete(4));
        assert!(load_graph("g6:??", None).is_err());
    }
}
