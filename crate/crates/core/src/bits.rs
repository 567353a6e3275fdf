//! Bitmask helpers for the exponential solvers (graphs with at most 64 vertices).

pub(crate) fn iter(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Union of the open neighbourhoods of the members of `set`.
pub(crate) fn neighbourhood(adj: &[u64], set: u64) -> u64 {
    iter(set).fold(0, |acc, v| acc | adj[v])
}

/// Vertices reachable from `start` inside `within` (`start` must be in `within`).
pub(crate) fn reach(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut comp = 1u64 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let next = neighbourhood(adj, frontier) & within & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}

/// Components of the subgraph induced on `within`, in order of their lowest vertex.
pub(crate) fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let c = reach(adj, rest.trailing_zeros() as usize, rest);
        out.push(c);
        rest &= !c;
    }
    out
}

/// Calls `f` on every `k`-subset of `0..n` as a mask, in lexicographic order of the
/// sorted member lists. Stops early when `f` returns `true`.
pub(crate) fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | (1u64 << i));
        if f(mask) {
            return true;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
