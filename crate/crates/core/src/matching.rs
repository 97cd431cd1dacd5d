//! Maximum bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching of the bipartite graph whose left vertex `i` is adjacent
/// to the right vertices `adj[i]`. Returns `mate[i]`, the right partner of
/// each left vertex.
///
/// Adjacency lists are scanned in order, so the result is deterministic.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![FREE; n_left];
    let mut mate_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for i in 0..n_left {
            if mate_l[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = mate_r[j];
                if k == FREE {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for i in 0..n_left {
            if mate_l[i] == FREE && augment(i, adj, &mut mate_l, &mut mate_r, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    mate_l
        .into_iter()
        .map(|j| (j != FREE).then_some(j))
        .collect()
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let k = mate_r[j];
        if k == FREE || (dist[k] == dist[i] + 1 && augment(k, adj, mate_l, mate_r, dist)) {
            mate_l[i] = j;
            mate_r[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// A perfect matching as `left -> right`, when one exists.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    maximum_matching(adj, n_right).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force_max(adj: &[Vec<usize>], n_right: usize) -> usize {
        fn go(i: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
            if i == adj.len() {
                return 0;
            }
            let mut best = go(i + 1, adj, used);
            for &j in &adj[i] {
                if !used[j] {
                    used[j] = true;
                    best = best.max(1 + go(i + 1, adj, used));
                    used[j] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; n_right])
    }

    #[test]
    fn needs_augmenting_path() {
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), Some(vec![1, 0]));
    }

    #[test]
    fn hall_violation() {
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        assert_eq!(maximum_matching(&adj, 3).iter().flatten().count(), 2);
    }

    #[test]
    fn empty() {
        assert_eq!(perfect_matching(&[], 0), Some(vec![]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(raw in proptest::collection::vec(proptest::collection::vec(0usize..6, 0..4), 0..6)) {
            let n_right = 6;
            let mut adj = raw;
            for a in adj.iter_mut() {
                a.sort();
                a.dedup();
            }
            let m = maximum_matching(&adj, n_right);
            let size = m.iter().flatten().count();
            prop_assert_eq!(size, brute_force_max(&adj, n_right));
            let mut seen = vec![false; n_right];
            for (i, j) in m.iter().enumerate() {
                if let Some(j) = *j {
                    prop_assert!(adj[i].contains(&j));
                    prop_assert!(!seen[j]);
                    seen[j] = true;
                }
            }
        }
    }
}
