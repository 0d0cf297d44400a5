//! Classic string dynamic programs: plain LCS and LCS constrained to contain
//! a pattern as a subsequence. They serve as baselines for the graph solvers
//! and as building blocks of the brute-force oracle.

use crate::ext_len::ExtLen;

/// LCS length of `a` and `b`, two rolling rows.
pub fn lcs_strings(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    lcs_chars(&a, &b)
}

pub(crate) fn lcs_chars(a: &[char], b: &[char]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Length of a longest common subsequence of `a` and `b` that contains `p`
/// as a subsequence, or [`ExtLen::NegInf`] if there is none.
pub fn seq_ic_lcs_strings(a: &str, b: &str, p: &str) -> ExtLen {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let p: Vec<char> = p.chars().collect();
    seq_ic_lcs_chars(&a, &b, &p)
}

pub(crate) fn seq_ic_lcs_chars(a: &[char], b: &[char], p: &[char]) -> ExtLen {
    let (n, m, l) = (a.len(), b.len(), p.len());
    let idx = |i: usize, j: usize, k: usize| (i * (m + 1) + j) * (l + 1) + k;
    let mut c = vec![ExtLen::NegInf; (n + 1) * (m + 1) * (l + 1)];

    for i in 0..=n {
        for j in 0..=m {
            for k in 0..=l {
                c[idx(i, j, k)] = if i == 0 || j == 0 {
                    if k == 0 {
                        ExtLen::ZERO
                    } else {
                        ExtLen::NegInf
                    }
                } else if a[i - 1] == b[j - 1] {
                    if k > 0 && a[i - 1] == p[k - 1] {
                        c[idx(i - 1, j - 1, k - 1)] + ExtLen::ONE
                    } else {
                        c[idx(i - 1, j - 1, k)] + ExtLen::ONE
                    }
                } else {
                    c[idx(i - 1, j, k)].max(c[idx(i, j - 1, k)])
                };
            }
        }
    }
    c[idx(n, m, l)]
}
