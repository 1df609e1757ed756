//! Recognition of connected Dynkin diagrams from a pairing matrix.
//!
//! Used when a Levi subsystem is cut out of a larger system: the surviving
//! nodes are split into connected pieces and each piece is renumbered into the
//! standard order of its type, so that the subsystem coincides with the system
//! built directly from its type string.

use super::{RootSystemType, Series};

/// Number of edges joining two nodes (0 to 3).
pub(crate) fn edge_multiplicity(pairing: &[Vec<i64>], i: usize, j: usize) -> i64 {
    if i == j {
        return 0;
    }
    let p = pairing[i][j];
    4 * p * p / (pairing[i][i] * pairing[j][j])
}

/// Connected components of the diagram induced on `nodes`, each sorted
/// ascending, ordered by smallest member.
pub(crate) fn connected_pieces(pairing: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; nodes.len()];
    let mut pieces = Vec::new();
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut piece = vec![nodes[start]];
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..nodes.len() {
                if !seen[b] && edge_multiplicity(pairing, nodes[a], nodes[b]) > 0 {
                    seen[b] = true;
                    piece.push(nodes[b]);
                    stack.push(b);
                }
            }
        }
        piece.sort_unstable();
        pieces.push(piece);
    }
    pieces.sort();
    pieces
}

fn neighbours(pairing: &[Vec<i64>], nodes: &[usize], v: usize) -> Vec<usize> {
    nodes.iter().copied().filter(|&u| edge_multiplicity(pairing, v, u) > 0).collect()
}

/// Walks a path starting at `start`, never revisiting `blocked`.
fn walk(pairing: &[Vec<i64>], nodes: &[usize], start: usize, blocked: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    let mut prev = blocked;
    let mut cur = start;
    loop {
        let next = neighbours(pairing, nodes, cur).into_iter().find(|&u| Some(u) != prev && !out.contains(&u));
        match next {
            Some(u) => {
                out.push(u);
                prev = Some(cur);
                cur = u;
            }
            None => return out,
        }
    }
}

/// Identifies a connected diagram. Returns its type and the nodes listed in
/// the standard numbering of that type.
pub(crate) fn classify(pairing: &[Vec<i64>], nodes: &[usize]) -> Option<(RootSystemType, Vec<usize>)> {
    let n = nodes.len();
    let ty = |series, rank| RootSystemType { series, rank };
    if n == 1 {
        return Some((ty(Series::A, 1), nodes.to_vec()));
    }
    let is_long = |v: usize| {
        let max = nodes.iter().map(|&u| pairing[u][u]).max().unwrap_or(0);
        pairing[v][v] == max
    };
    let mut max_mult = 0;
    for &a in nodes {
        for &b in nodes {
            max_mult = max_mult.max(edge_multiplicity(pairing, a, b));
        }
    }
    let degree = |v: usize| neighbours(pairing, nodes, v).len();
    let ends: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) == 1).collect();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();

    match max_mult {
        3 => {
            if n != 2 {
                return None;
            }
            let (short, long) = if is_long(nodes[0]) { (nodes[1], nodes[0]) } else { (nodes[0], nodes[1]) };
            Some((ty(Series::G, 2), vec![short, long]))
        }
        2 => {
            if !branch.is_empty() || ends.len() != 2 {
                return None;
            }
            if n == 2 {
                let series = if is_long(nodes[0]) { Series::B } else { Series::C };
                return Some((ty(series, 2), nodes.to_vec()));
            }
            // Start from the end away from the double edge.
            let double_at_end = |v: usize| {
                let nb = neighbours(pairing, nodes, v);
                edge_multiplicity(pairing, v, nb[0]) == 2
            };
            let far: Vec<usize> = ends.iter().copied().filter(|&v| !double_at_end(v)).collect();
            if far.len() == 2 {
                // Double edge in the interior: F4, numbered from the long end.
                if n != 4 {
                    return None;
                }
                let start = if is_long(far[0]) { far[0] } else { far[1] };
                return Some((ty(Series::F, 4), walk(pairing, nodes, start, None)));
            }
            let order = walk(pairing, nodes, far[0], None);
            let last = *order.last().unwrap();
            let series = if is_long(last) { Series::C } else { Series::B };
            Some((ty(series, n), order))
        }
        1 => {
            if branch.is_empty() {
                let start = *ends.iter().min()?;
                return Some((ty(Series::A, n), walk(pairing, nodes, start, None)));
            }
            if branch.len() != 1 {
                return None;
            }
            let centre = branch[0];
            let mut arms: Vec<Vec<usize>> =
                neighbours(pairing, nodes, centre).into_iter().map(|u| walk(pairing, nodes, u, Some(centre))).collect();
            if arms.len() != 3 {
                return None;
            }
            // Shortest arms first; ties broken by the index of the arm's far end.
            arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            match (lens[0], lens[1], lens[2]) {
                (1, 1, k) => {
                    // D_n: long arm read from its far end, then centre, then the two leaves.
                    let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                    order.push(centre);
                    let mut leaves = vec![arms[0][0], arms[1][0]];
                    leaves.sort_unstable();
                    if k == 1 {
                        // D4: every arm is a leaf; the smallest becomes the first node.
                        let mut all = [arms[0][0], arms[1][0], arms[2][0]];
                        all.sort_unstable();
                        return Some((ty(Series::D, 4), vec![all[0], centre, all[1], all[2]]));
                    }
                    order.extend(leaves);
                    Some((ty(Series::D, n), order))
                }
                (1, 2, k) if (2..=4).contains(&k) => {
                    // E_n: first node at the end of a length-2 arm, second node the
                    // length-1 arm, then the centre and the remaining arm outwards.
                    let (short2, long_arm) = if k == 2 {
                        let (a, b) = (&arms[1], &arms[2]);
                        if a.last() < b.last() {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    } else {
                        (&arms[1], &arms[2])
                    };
                    let order = vec![short2[1], arms[0][0], short2[0], centre]
                        .into_iter()
                        .chain(long_arm.iter().copied())
                        .collect();
                    Some((ty(Series::E, n), order))
                }
                _ => None,
            }
        }
        _ => None,
    }
}
