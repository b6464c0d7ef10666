//! Graphviz output: the Hasse diagram of the underlying preorder, one
//! cluster per type, with isomorphism classes collapsed onto their least
//! member.

use std::fmt::Write;

use crate::qcat::QCategory;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Representatives and covering pairs `(lower, upper)` of the underlying preorder.
pub fn hasse(c: &QCategory) -> (Vec<usize>, Vec<(usize, usize)>) {
    let p = c.underlying_preorder();
    let reps: Vec<usize> = c.objects().filter(|&x| p.representative(x) == x).collect();
    let lt = |x: usize, y: usize| p.leq(x, y) && !p.leq(y, x);
    let mut edges = vec![];
    for &x in &reps {
        for &y in &reps {
            if lt(x, y) && !reps.iter().any(|&z| lt(x, z) && lt(z, y)) {
                edges.push((x, y));
            }
        }
    }
    (reps, edges)
}

/// `digraph` with bottom-to-top edges.
pub fn hasse_dot(c: &QCategory, name: &str) -> String {
    let q = c.quantaloid();
    let (reps, edges) = hasse(c);
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    writeln!(s, "  node [shape=box];").unwrap();
    let multi = q.n_objects() > 1;
    for t in q.objects() {
        let nodes: Vec<usize> = reps.iter().copied().filter(|&x| c.ty(x) == t).collect();
        if nodes.is_empty() {
            continue;
        }
        let indent = if multi {
            writeln!(s, "  subgraph {} {{", quote(&format!("cluster_{}", q.object_name(t)))).unwrap();
            writeln!(s, "    label={};", quote(q.object_name(t))).unwrap();
            "    "
        } else {
            "  "
        };
        for x in nodes {
            writeln!(s, "{indent}{};", quote(c.name(x))).unwrap();
        }
        if multi {
            writeln!(s, "  }}").unwrap();
        }
    }
    for (x, y) in edges {
        writeln!(s, "  {} -> {};", quote(c.name(x)), quote(c.name(y))).unwrap();
    }
    s.push_str("}\n");
    s
}
