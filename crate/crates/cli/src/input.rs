use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rcaudit_core::generators::{
    connected_labeled_up_to, gen_counterexample, gen_named, random_corpus, CounterexampleParams,
    Family,
};
use rcaudit_core::graph::{parse_edge_list, parse_graph6, Graph};

/// Reads a graph from a file (graph6 or edge list) or, if no such file
/// exists, parses the argument itself as graph6.
pub fn read_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if !path.is_file() {
        return parse_graph6(arg).with_context(|| format!("{arg:?} is neither a file nor graph6"));
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    parse_graph_text(&text).with_context(|| format!("parsing {arg}"))
}

fn first_token(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

/// Edge lists start with a vertex count; anything else is graph6.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    match first_token(text) {
        None => bail!("no graph found"),
        Some(tok) if tok.bytes().all(|b| b.is_ascii_digit()) => Ok(parse_edge_list(text)?),
        Some(_) => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .expect("first token exists");
            Ok(parse_graph6(line)?)
        }
    }
}

/// One graph6 string per non-empty, non-comment line.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_graph6(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| anyhow::anyhow!("bad {what} {s:?} in corpus source"))
}

/// Expands a corpus source: a graph6 file or one of the generator specs
/// `connected:N`, `random:COUNT:NMIN-NMAX:SEED`, `cex:DELTA:T[:SEED]`,
/// `named:FAMILY:SIZE[,SIZE]`.
pub fn corpus_source(spec: &str) -> Result<Vec<Graph>> {
    let path = Path::new(spec);
    if path.is_file() {
        return read_graph6_file(path);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["connected", n] => {
            let n: usize = num(n, "vertex count")?;
            if n > 7 {
                bail!("connected:N supports N <= 7");
            }
            Ok(connected_labeled_up_to(n))
        }
        ["random", count, range, seed] => {
            let (lo, hi) = range
                .split_once('-')
                .with_context(|| format!("bad vertex range {range:?}, expected NMIN-NMAX"))?;
            Ok(random_corpus(
                num(count, "count")?,
                num(lo, "vertex count")?,
                num(hi, "vertex count")?,
                num(seed, "seed")?,
            )?)
        }
        ["cex", delta, t, rest @ ..] if rest.len() <= 1 => {
            let params = CounterexampleParams {
                seed: rest.first().map(|s| num(s, "seed")).transpose()?,
                ..CounterexampleParams::new(num(delta, "delta")?, num(t, "t")?)
            };
            Ok(vec![gen_counterexample(&params)?.0])
        }
        ["named", family, sizes] => {
            let family: Family = family.parse()?;
            let sizes = sizes
                .split(',')
                .map(|s| num(s, "size"))
                .collect::<Result<Vec<usize>>>()?;
            Ok(vec![gen_named(family, &sizes)?])
        }
        _ => bail!("{spec:?} is neither a file nor a corpus spec"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_formats() {
        let g = parse_graph_text("# path\n3\n0 1\n1 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        let g = parse_graph_text("\nC~\n").unwrap();
        assert_eq!(g, Graph::complete(4));
        assert!(parse_graph_text("  \n# nothing\n").is_err());
    }

    #[test]
    fn corpus_specs() {
        assert_eq!(corpus_source("connected:3").unwrap().len(), 1 + 1 + 4);
        assert_eq!(corpus_source("random:5:4-9:1").unwrap().len(), 5);
        assert_eq!(corpus_source("cex:2:1").unwrap()[0].n(), 9);
        assert_eq!(
            corpus_source("named:complete_bipartite:2,3").unwrap()[0].m(),
            6
        );
        assert!(corpus_source("connected:9").is_err());
        assert!(corpus_source("random:5:9:1").is_err());
        assert!(corpus_source("wat").is_err());
    }
}
