//! Brute-force references that share no code with the library's search.

#![allow(dead_code)]

use rcaudit_core::graph::Graph;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    adj
}

fn rainbow_simple_path(
    adj: &[Vec<(usize, usize)>],
    colors: &[usize],
    at: usize,
    target: usize,
    on_path: &mut [bool],
    used: &mut Vec<usize>,
) -> bool {
    if at == target {
        return true;
    }
    for &(w, e) in &adj[at] {
        if on_path[w] || used.contains(&colors[e]) {
            continue;
        }
        on_path[w] = true;
        used.push(colors[e]);
        let found = rainbow_simple_path(adj, colors, w, target, on_path, used);
        used.pop();
        on_path[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// Exhaustive simple-path check of every pair.
pub fn oracle_rainbow_connected(g: &Graph, colors: &[usize]) -> bool {
    let n = g.n();
    let adj = adjacency(n, g.edges());
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            let mut on_path = vec![false; n];
            on_path[u] = true;
            rainbow_simple_path(&adj, colors, u, v, &mut on_path, &mut Vec::new())
        })
    })
}

/// Smallest `q` for which some coloring in `[q]^m` passes the oracle,
/// found by trying every coloring in turn.
pub fn oracle_rc(g: &Graph) -> usize {
    let m = g.m();
    if g.n() <= 1 {
        return 0;
    }
    for q in 1..=m {
        let mut colors = vec![0usize; m];
        loop {
            if oracle_rainbow_connected(g, &colors) {
                return q;
            }
            // odometer increment
            let mut i = 0;
            while i < m && colors[i] + 1 == q {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            colors[i] += 1;
        }
    }
    panic!("connected graphs are rainbow connected with m colors")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Clique `{0..k}` of minimum-degree vertices joined to dense blobs, some of
/// them with a low-degree connector vertex that sees all but one clique
/// vertex. Drives the construction through all of its cases.
pub fn clique_gadget(seed: u64) -> Graph {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=4usize);
    let delta = rng.gen_range(k.max(2)..=k + 3);
    let blobs = rng.gen_range(1..=3usize);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    let mut room = vec![delta + 1 - k; k];
    let mut n = k;
    let mut blob_vertices = Vec::new();
    for _ in 0..blobs {
        let s = rng.gen_range(delta + 1..=delta + 3);
        let members: Vec<usize> = (n..n + s).collect();
        n += s;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
        let inner = delta + 1 - k;
        if k >= 2 && inner <= s && rng.gen_bool(0.6) {
            // connector: k-1 clique neighbors plus inner blob neighbors
            let w = n;
            n += 1;
            let skip = rng.gen_range(0..k);
            let seen: Vec<usize> = (0..k).filter(|&x| x != skip && room[x] > 0).collect();
            if seen.len() + inner == delta {
                for &x in &seen {
                    edges.push((x, w));
                    room[x] -= 1;
                }
                for &b in members.choose_multiple(&mut rng, inner) {
                    edges.push((b, w));
                }
            } else {
                // not enough room at the clique; make w an ordinary blob vertex
                for &b in &members {
                    edges.push((b, w));
                }
            }
        }
        blob_vertices.push(members);
    }
    // remaining clique degree goes to blob vertices, every blob reached once
    let mut order: Vec<usize> = (0..blobs).collect();
    order.shuffle(&mut rng);
    let mut next_blob = order.into_iter();
    for (x, &slots) in room.iter().enumerate() {
        for _ in 0..slots {
            let blob = next_blob.next().unwrap_or_else(|| rng.gen_range(0..blobs));
            let target = *blob_vertices[blob].choose(&mut rng).unwrap();
            edges.push((x, target));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(n, edges).unwrap();
    if g.is_connected() {
        g
    } else {
        // fall back to joining every blob to vertex 0
        let mut edges = g.edges().to_vec();
        for members in &blob_vertices {
            edges.push((0, members[0]));
        }
        edges.sort_unstable();
        edges.dedup();
        Graph::from_edges(n, edges).unwrap()
    }
}
