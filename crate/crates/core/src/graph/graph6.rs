//! The graph6 ASCII encoding (as produced by nauty's `showg`/`geng`).

use super::{Graph, GraphError};

const BIAS: u8 = 63;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn decode_line(line: &str, line_no: usize) -> Result<Graph, GraphError> {
    let err = |msg: String| GraphError::Parse { line: line_no, msg };
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(err(format!("invalid graph6 byte 0x{b:02x} at offset {i}")));
        }
    }
    let six = |i: usize| -> Result<usize, GraphError> {
        bytes
            .get(i)
            .map(|&b| (b - BIAS) as usize)
            .ok_or_else(|| err("truncated size field".into()))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(err("empty graph6 string".into())),
        Some(126) if bytes.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | six(i)?;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | six(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - BIAS) as usize, 1),
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let needed = total_bits.div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(err(format!(
            "expected {needed} data bytes for n = {n}, found {}",
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut cur = 0u8;
    for v in 1..n {
        for u in 0..v {
            if bit % 6 == 0 {
                cur = bytes[pos] - BIAS;
                pos += 1;
            }
            if cur & (1 << (5 - bit % 6)) != 0 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Decodes exactly one graph6 line (blank lines around it are ignored).
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut graphs = parse_graph6_all(text)?;
    match graphs.len() {
        1 => Ok(graphs.pop().unwrap()),
        0 => Err(GraphError::Parse {
            line: 1,
            msg: "no graph6 line found".into(),
        }),
        k => Err(GraphError::Parse {
            line: 1,
            msg: format!("expected one graph, found {k}"),
        }),
    }
}

/// Decodes one graph per non-empty line.
pub fn parse_graph6_all(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode_line(l.trim(), i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_known_strings() {
        // Independent of the encoder: bytes worked out by hand from the format.
        assert_eq!(parse_graph6("B?").unwrap(), Graph::empty(3));
        assert_eq!(
            parse_graph6("B_").unwrap(),
            Graph::from_edges(3, [(0, 1)]).unwrap()
        );
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("A?").unwrap(), Graph::empty(2));
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
        assert_eq!(encode_graph6(&Graph::empty(3)), "B?");
        assert_eq!(encode_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("Bww").is_err());
        assert!(parse_graph6("B@?").is_err());
        assert!(matches!(
            parse_graph6("B\u{1}"),
            Err(GraphError::Parse { .. })
        ));
        assert!(parse_graph6("Bw\nBw").is_err());
    }

    #[test]
    fn large_size_field() {
        let g = Graph::path(70);
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn roundtrip_all_graphs_up_to_six() {
        for n in 0..=6usize {
            let pairs: Vec<_> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
            }
        }
    }

    proptest! {
        #[test]
        fn roundtrip_random(n in 0usize..40, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                    if state % 3 == 0 { edges.push((u, v)); }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(parse_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }
}
