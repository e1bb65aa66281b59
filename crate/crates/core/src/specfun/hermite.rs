/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2x·H_n − 2n·H_{n−1}.
pub fn hermite(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}
