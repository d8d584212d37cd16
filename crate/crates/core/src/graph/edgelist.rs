//! Plain edge-list text: the vertex count `n` as the first token, then one
//! `u v` pair per line. Blank lines and `#` comments are ignored.

use super::{Graph, ParseError};

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::EdgeList {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (first_line, header) = lines.next().ok_or_else(|| err(1, "missing vertex count"))?;
    let n: usize = header[0]
        .parse()
        .map_err(|_| err(first_line, format!("invalid vertex count {:?}", header[0])))?;

    // the first pair may share the header line
    let mut pending: Vec<(usize, &str)> = header[1..].iter().map(|t| (first_line, *t)).collect();
    for (line, tokens) in lines {
        pending.extend(tokens.into_iter().map(|t| (line, t)));
    }
    if pending.len() % 2 == 1 {
        let (line, _) = pending[pending.len() - 1];
        return Err(err(line, "dangling endpoint without a partner"));
    }

    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(pending.len() / 2);
    for pair in pending.chunks(2) {
        let line = pair[1].0;
        let mut ends = [0usize; 2];
        for (slot, &(_, tok)) in ends.iter_mut().zip(pair) {
            *slot = tok
                .parse()
                .map_err(|_| err(line, format!("invalid vertex {tok:?}")))?;
            if *slot >= n {
                return Err(err(line, format!("endpoint {slot} out of range for n={n}")));
            }
        }
        let [u, v] = ends;
        if u == v {
            return Err(err(line, format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).map_err(|e| err(0, e.to_string()))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
