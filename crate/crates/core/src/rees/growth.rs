//! Degree of the polynomial eventually describing `t -> dim M_t`, read off
//! by finite differences over the tail of the known dimensions.

/// Smallest `k` such that the `k`-th difference sequence is constant on its
/// last `max(window, 2)` entries gives the degree (`k`, or `k - 1` when the
/// constant is zero; `-1` means eventually zero). `None` if the known tail is
/// too short for any `k`.
pub fn growth_degree(dims: &[u64], window: usize) -> Option<i64> {
    let w = window.max(2);
    let mut seq: Vec<i128> = dims.iter().map(|&x| x as i128).collect();
    let mut k = 0i64;
    while seq.len() >= w {
        let tail = &seq[seq.len() - w..];
        if tail.iter().all(|&x| x == tail[0]) {
            return Some(if tail[0] == 0 { k - 1 } else { k });
        }
        seq = seq.windows(2).map(|p| p[1] - p[0]).collect();
        k += 1;
    }
    None
}
