//! Text formats: the edge list (`n m` header, then `u v` lines, 0-based) and
//! the SMC variant that appends one `c u color` line per vertex.

use std::fmt::Write as _;

use modcard_core::gadgets::SmcInstance;
use modcard_core::graph::Graph;

use crate::CliError;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn ints<const N: usize>(line: usize, s: &str) -> Result<[usize; N], CliError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != N {
        return Err(CliError::Parse(format!("line {line}: expected {N} integers, got {:?}", s)));
    }
    let mut out = [0usize; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| CliError::Parse(format!("line {line}: not a non-negative integer: {p}")))?;
    }
    Ok(out)
}

struct Parsed {
    n: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<(usize, usize)>,
}

fn parse(text: &str, allow_colors: bool) -> Result<Parsed, CliError> {
    let mut lines = data_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| CliError::Parse("empty input".into()))?;
    let [n, m] = ints::<2>(ln, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut colors = Vec::new();
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix('c').filter(|r| r.starts_with(char::is_whitespace)) {
            if !allow_colors {
                return Err(CliError::Parse(format!("line {ln}: colour line in a plain edge list")));
            }
            let [u, c] = ints::<2>(ln, rest)?;
            colors.push((u, c));
        } else {
            if !colors.is_empty() {
                return Err(CliError::Parse(format!("line {ln}: edge after colour lines")));
            }
            let [u, v] = ints::<2>(ln, l)?;
            edges.push((u, v));
        }
    }
    if edges.len() != m {
        return Err(CliError::Parse(format!("header promises {m} edges, found {}", edges.len())));
    }
    Ok(Parsed { n, edges, colors })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let p = parse(text, false)?;
    Ok(Graph::from_edges(p.n, &p.edges)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Colour classes must have equal sizes; within a class, vertices are indexed
/// by ascending id.
pub fn parse_smc(text: &str) -> Result<SmcInstance, CliError> {
    let p = parse(text, true)?;
    Graph::from_edges(p.n, &p.edges)?;
    let mut color = vec![usize::MAX; p.n];
    for &(u, c) in &p.colors {
        if u >= p.n {
            return Err(CliError::Parse(format!("colour line for vertex {u} out of range")));
        }
        if color[u] != usize::MAX {
            return Err(CliError::Parse(format!("vertex {u} coloured twice")));
        }
        color[u] = c;
    }
    if let Some(u) = color.iter().position(|&c| c == usize::MAX) {
        return Err(CliError::Parse(format!("vertex {u} has no colour")));
    }
    let k = color.iter().max().map_or(0, |c| c + 1);
    let mut index = vec![0usize; p.n];
    let mut sizes = vec![0usize; k];
    for u in 0..p.n {
        index[u] = sizes[color[u]];
        sizes[color[u]] += 1;
    }
    let size = sizes.first().copied().unwrap_or(0);
    if sizes.iter().any(|&s| s != size) {
        return Err(CliError::Parse(format!("colour classes have unequal sizes {sizes:?}")));
    }
    let edges = p.edges.iter().map(|&(u, v)| (color[u], index[u], color[v], index[v]));
    Ok(SmcInstance::new(k, size, edges)?)
}

pub fn format_smc(smc: &SmcInstance) -> String {
    let edges: Vec<_> = smc.edges().collect();
    let mut s = format!("{} {}\n", smc.k * smc.n, edges.len());
    for (c1, r1, c2, r2) in edges {
        let _ = writeln!(s, "{} {}", c1 * smc.n + r1, c2 * smc.n + r2);
    }
    for u in 0..smc.k * smc.n {
        let _ = writeln!(s, "c {u} {}", u / smc.n);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_lists() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n# tail\n2 3\n").unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn smc_round_trip() {
        let text = "4 2\n0 2\n1 3\nc 0 0\nc 1 0\nc 2 1\nc 3 1\n";
        let smc = parse_smc(text).unwrap();
        assert_eq!((smc.k, smc.n), (2, 2));
        assert_eq!(parse_smc(&format_smc(&smc)).unwrap(), smc);
        // (0,0)-(1,1) lacks its mirror (0,1)-(1,0)
        assert!(parse_smc("4 1\n0 3\nc 0 0\nc 1 0\nc 2 1\nc 3 1\n").is_err());
        assert!(parse_smc("4 0\nc 0 0\nc 1 0\nc 2 1\n").is_err());
    }
}
