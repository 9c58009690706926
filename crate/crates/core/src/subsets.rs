//! Deterministic enumeration of k-subsets.

use alloc::vec::Vec;

/// Calls `f` for every subset of `items` of size `k`, in lexicographic order
/// of positions. Stops early and returns `Some` when `f` does.
pub(crate) fn for_each_subset<T: Copy, R>(items: &[T], k: usize, mut f: impl FnMut(&[T]) -> Option<R>) -> Option<R> {
    if k > items.len() {
        return None;
    }
    let mut pos: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = Vec::with_capacity(k);
    loop {
        buf.clear();
        buf.extend(pos.iter().map(|&i| items[i]));
        if let Some(r) = f(&buf) {
            return Some(r);
        }
        // advance the rightmost position that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if pos[i] < items.len() - k + i {
                break;
            }
        }
        pos[i] += 1;
        for j in i + 1..k {
            pos[j] = pos[j - 1] + 1;
        }
    }
}
