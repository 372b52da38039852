//! Iterative Tarjan SCC, safe for graphs with long paths.

/// Strongly connected components of the graph on `0..n` with successors given by
/// `succ`. Components come out in reverse topological order: every arc leaving a
/// component points into one listed earlier. Vertices inside a component are sorted.
pub fn tarjan<F, I>(n: usize, succ: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0usize;
    // call frames: (vertex, its successor list, position in it)
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, succ(root).collect(), 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(parent) = frames.last() {
                let p = parent.0;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
        tarjan(adj.len(), |v| adj[v].iter().copied())
    }

    #[test]
    fn chain_of_cycles() {
        // 0 <-> 1 -> 2 <-> 3 -> 4
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2, 4], vec![]];
        assert_eq!(run(&adj), vec![vec![4], vec![2, 3], vec![0, 1]]);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 200_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        let comps = run(&adj);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), n);
    }

    #[test]
    fn reverse_topological() {
        let adj = vec![vec![2], vec![0], vec![], vec![1, 2]];
        let comps = run(&adj);
        let pos = |v: usize| comps.iter().position(|c| c.contains(&v)).unwrap();
        for (v, succ) in adj.iter().enumerate() {
            for &w in succ {
                assert!(pos(w) <= pos(v));
            }
        }
    }
}
