use crate::graph::Graph;
use crate::treedepth::TreedepthDecomposition;

/// Decomposition with the boundary as a chain on top (in the given order) and
/// every component of `G - boundary` hung below the last boundary vertex,
/// each split recursively at a vertex minimising the largest remaining piece.
pub fn composite_decomposition(g: &Graph, boundary: &[usize]) -> TreedepthDecomposition {
    let n = g.n();
    let mut parent = vec![0usize; n + 1];
    for w in boundary.windows(2) {
        parent[w[1]] = w[0];
    }
    let mut keep = vec![true; n + 1];
    keep[0] = false;
    for &b in boundary {
        keep[b] = false;
    }
    let mut anchor = boundary.last().copied();
    for comp in g.components_within(&keep) {
        let root = split(g, comp, anchor.unwrap_or(0), &mut keep, &mut parent);
        anchor.get_or_insert(root);
    }
    TreedepthDecomposition::from_parents(parent[1..].to_vec())
        .expect("composite decomposition is a rooted tree")
}

// Places a centre of `comp` under `above` and recurses; returns the centre.
fn split(
    g: &Graph,
    comp: Vec<usize>,
    above: usize,
    keep: &mut [bool],
    parent: &mut [usize],
) -> usize {
    let centre = if comp.len() <= 2 {
        comp[0]
    } else {
        let mut best = (usize::MAX, 0);
        for &v in &comp {
            keep[v] = false;
            let worst = largest_piece(g, &comp, keep);
            keep[v] = true;
            if worst < best.0 {
                best = (worst, v);
            }
        }
        best.1
    };
    parent[centre] = above;
    keep[centre] = false;
    let rest: Vec<usize> = comp.iter().copied().filter(|&v| v != centre).collect();
    for piece in pieces(g, &rest, keep) {
        split(g, piece, centre, keep, parent);
    }
    for &v in &rest {
        keep[v] = false;
    }
    centre
}

fn pieces(g: &Graph, within: &[usize], keep: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; keep.len()];
    let mut out = Vec::new();
    for &s in within {
        if !keep[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut piece = Vec::new();
        while let Some(v) = stack.pop() {
            piece.push(v);
            for &w in g.neighbors(v) {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        piece.sort_unstable();
        out.push(piece);
    }
    out
}

fn largest_piece(g: &Graph, within: &[usize], keep: &[bool]) -> usize {
    pieces(g, within, keep)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedepth::validate;

    #[test]
    fn path_below_boundary() {
        // boundary 1,2; path 3-4-5-6-7 with 3 and 7 joined to the boundary
        let g = Graph::from_edges(7, [(1, 3), (2, 7), (3, 4), (4, 5), (5, 6), (6, 7)]).unwrap();
        let t = composite_decomposition(&g, &[1, 2]);
        assert_eq!(validate(&g, &t), Ok(()));
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(5), Some(2));
        assert_eq!(t.depth(), 2 + 3);
    }

    #[test]
    fn isolated_padding_are_leaves() {
        let g = Graph::from_edges(5, [(1, 2)]).unwrap();
        let t = composite_decomposition(&g, &[1]);
        assert_eq!(validate(&g, &t), Ok(()));
        assert_eq!(t.depth(), 2);
    }

    #[test]
    fn no_boundary() {
        let g = Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        let t = composite_decomposition(&g, &[]);
        assert_eq!(validate(&g, &t), Ok(()));
    }
}
