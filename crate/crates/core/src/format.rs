//! Text formats.
//!
//! Hypergraph (`.uhg`): `#` starts a comment; the first remaining line is
//! `n k`, or `product n1 n2 a b` for the product family; every further line
//! lists one edge as space-separated 1-based ids.
//!
//! Certificate: `t a b`, then `A: <ids>` and `B: <ids>` lines alternating,
//! starting with `A_0`.
//!
//! Bipartite adjacency: `t`, then `t` rows of `t` characters `0`/`1`.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::abfinder::ABCycleCert;
use crate::bihamilton::BipartiteGraph;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ProductHypergraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Plain(Hypergraph),
    Product(ProductHypergraph),
}

impl Instance {
    pub fn hypergraph(&self) -> &Hypergraph {
        match self {
            Instance::Plain(h) => h,
            Instance::Product(ph) => ph.as_hypergraph(),
        }
    }
}

// (1-based line number, trimmed content) of non-blank, non-comment lines
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("not a number: {tok:?}")))
}

fn parse_ids(line: usize, body: &str) -> Result<VertexSet> {
    let ids = body
        .split_whitespace()
        .map(|tok| parse_num::<u32>(line, tok))
        .collect::<Result<Vec<_>>>()?;
    VertexSet::new(ids).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses either hypergraph flavour.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let mut edges = Vec::new();
    for (line, body) in lines {
        edges.push((line, parse_ids(line, body)?));
    }
    let wrap = |line: usize| move |e: Error| Error::parse(line, e.to_string());
    match fields.as_slice() {
        ["product", n1, n2, a, b] => {
            let (n1, n2): (u32, u32) = (parse_num(hline, n1)?, parse_num(hline, n2)?);
            let (a, b): (usize, usize) = (parse_num(hline, a)?, parse_num(hline, b)?);
            let line_of_first = edges.first().map(|e| e.0).unwrap_or(hline);
            let ph = ProductHypergraph::new(n1, n2, a, b, edges.into_iter().map(|(_, e)| e))
                .map_err(wrap(line_of_first))?;
            Ok(Instance::Product(ph))
        }
        [n, k] => {
            let (n, k): (u32, usize) = (parse_num(hline, n)?, parse_num(hline, k)?);
            // report the offending line for per-edge errors
            let mut seen = std::collections::HashSet::new();
            for (line, e) in &edges {
                if e.len() != k {
                    return Err(Error::parse(
                        *line,
                        format!("edge has {} vertices, expected {k}", e.len()),
                    ));
                }
                if let Some(v) = e.max_vertex().filter(|&v| v > n) {
                    return Err(Error::parse(*line, format!("vertex {v} outside 1..={n}")));
                }
                if !seen.insert(e.clone()) {
                    return Err(Error::parse(*line, format!("duplicate edge {e}")));
                }
            }
            let h =
                Hypergraph::new(n, k, edges.into_iter().map(|(_, e)| e)).map_err(wrap(hline))?;
            Ok(Instance::Plain(h))
        }
        _ => Err(Error::parse(
            hline,
            "header must be `n k` or `product n1 n2 a b`",
        )),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    Ok(parse_instance(text)?.hypergraph().clone())
}

fn edge_lines(out: &mut String, edges: &[VertexSet]) {
    for e in edges {
        let _ = writeln!(out, "{}", e.iter().join(" "));
    }
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    edge_lines(&mut out, h.edges());
    out
}

pub fn write_product(ph: &ProductHypergraph) -> String {
    let mut out = format!("product {} {} {} {}\n", ph.n1(), ph.n2(), ph.a(), ph.b());
    edge_lines(&mut out, ph.as_hypergraph().edges());
    out
}

pub fn write_cert(cert: &ABCycleCert) -> String {
    let mut out = format!("{} {} {}\n", cert.t(), cert.a, cert.b);
    for (x, y) in cert.a_blocks.iter().zip(&cert.b_blocks) {
        let _ = writeln!(out, "A: {}", x.iter().join(" "));
        let _ = writeln!(out, "B: {}", y.iter().join(" "));
    }
    out
}

/// Reads a certificate. Block sizes are not checked here; the verifier
/// reports them.
pub fn parse_cert(text: &str) -> Result<ABCycleCert> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing `t a b` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [t, a, b] = fields.as_slice() else {
        return Err(Error::parse(hline, "header must be `t a b`"));
    };
    let (t, a, b): (usize, usize, usize) = (
        parse_num(hline, t)?,
        parse_num(hline, a)?,
        parse_num(hline, b)?,
    );
    let mut a_blocks = Vec::new();
    let mut b_blocks = Vec::new();
    for (idx, (line, body)) in lines.enumerate() {
        let (tag, expect_a) = if idx % 2 == 0 {
            ("A:", true)
        } else {
            ("B:", false)
        };
        let rest = body
            .strip_prefix(tag)
            .ok_or_else(|| Error::parse(line, format!("expected line starting with `{tag}`")))?;
        let set = parse_ids(line, rest)?;
        if expect_a {
            a_blocks.push(set);
        } else {
            b_blocks.push(set);
        }
    }
    if a_blocks.len() != t || b_blocks.len() != t {
        return Err(Error::parse(
            hline,
            format!(
                "header says t={t} but found {} A-lines and {} B-lines",
                a_blocks.len(),
                b_blocks.len()
            ),
        ));
    }
    Ok(ABCycleCert {
        a,
        b,
        a_blocks,
        b_blocks,
    })
}

pub fn write_adjacency(g: &BipartiteGraph) -> String {
    let mut out = format!("{}\n", g.t());
    for x in 0..g.t() {
        let row: String = (0..g.t())
            .map(|y| if g.has_edge(x, y) { '1' } else { '0' })
            .collect();
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn parse_adjacency(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing size line"))?;
    let t: usize = parse_num(hline, header)?;
    let mut g = BipartiteGraph::empty(t);
    let mut rows = 0;
    for (line, body) in lines {
        if rows == t {
            return Err(Error::parse(line, "more rows than declared"));
        }
        let bits: Vec<char> = body.chars().filter(|c| !c.is_whitespace()).collect();
        if bits.len() != t {
            return Err(Error::parse(
                line,
                format!("row has {} entries, expected {t}", bits.len()),
            ));
        }
        for (y, c) in bits.into_iter().enumerate() {
            match c {
                '1' => g.set_edge(rows, y, true),
                '0' => {}
                other => return Err(Error::parse(line, format!("unexpected {other:?}"))),
            }
        }
        rows += 1;
    }
    if rows != t {
        return Err(Error::parse(
            hline,
            format!("expected {t} rows, found {rows}"),
        ));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{planted_product_cycle, random_hypergraph};
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let text = "# four edges\n6 3\n1 2 3 # first\n\n2 3 4\n4 5 6\n5 6 1\n";
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.edge_count(), 4);
        assert!(h.contains(&VertexSet::new([1, 5, 6]).unwrap()));
    }

    #[test]
    fn load_errors_carry_line_numbers() {
        assert!(matches!(parse_instance(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_instance("# only\n"),
            Err(Error::Parse { .. })
        ));
        let dup = "6 3\n1 2 3\n3 2 1\n";
        assert!(matches!(
            parse_instance(dup),
            Err(Error::Parse { line: 3, .. })
        ));
        let short = "6 3\n1 2\n";
        assert!(matches!(
            parse_instance(short),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("6 3\n1 2 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("6 3\n1 2 9\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn product_roundtrip() {
        let (ph, _) = planted_product_cycle(3, 1, 2, 5).unwrap();
        let text = write_product(&ph);
        assert!(text.starts_with("product 3 6 1 2\n"));
        assert_eq!(parse_instance(&text).unwrap(), Instance::Product(ph));
    }

    #[test]
    fn cert_roundtrip_and_errors() {
        let (_, cert) = crate::oracle::planted_cycle(9, 1, 2, 3).unwrap();
        let text = write_cert(&cert);
        assert_eq!(parse_cert(&text).unwrap(), cert);
        assert!(parse_cert("2 1 2\nA: 1\nB: 2 3\nA: 4\n").is_err());
        assert!(parse_cert("2 1 2\nB: 1\n").is_err());
    }

    #[test]
    fn adjacency_roundtrip() {
        let g = BipartiteGraph::from_mask(3, 0b101_110_011);
        assert_eq!(parse_adjacency(&write_adjacency(&g)).unwrap(), g);
        assert!(parse_adjacency("2\n10\n").is_err());
        assert!(parse_adjacency("2\n10\n1x\n").is_err());
    }

    proptest! {
        #[test]
        fn hypergraph_roundtrip(n in 3u32..10, k in 1usize..4, p in 0.0f64..1.0, seed in any::<u64>()) {
            prop_assume!(k <= n as usize);
            let h = random_hypergraph(n, k, p, seed).unwrap();
            prop_assert_eq!(parse_hypergraph(&write_hypergraph(&h)).unwrap(), h);
        }
    }
}
