// SPDX-License-Identifier: MIT OR Apache-2.0

//! Suffix array by induced sorting (SA-IS) and Kasai's LCP scan.

const EMPTY: usize = usize::MAX;

/// Suffix array of `s`, whose values lie in `0..=upper`.
pub fn suffix_array(s: &[u32], upper: u32) -> Vec<usize> {
    let s: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    sa_is(&s, upper as usize)
}

fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }

    // ls[i]: suffix i is S-type (smaller than suffix i+1).
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }

    // Bucket starts: sum_l[c] for L-type, sum_s[c] for S-type.
    let mut sum_l = vec![0usize; upper + 1];
    let mut sum_s = vec![0usize; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let mut sa = vec![EMPTY; n];
    let induce = |lms: &[usize], sa: &mut [usize]| {
        sa.fill(EMPTY);
        let mut buf = sum_s.clone();
        for &d in lms {
            if d == n {
                continue;
            }
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }
        buf.copy_from_slice(&sum_l);
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![EMPTY; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();

    induce(&lms, &mut sa);

    if m > 0 {
        let mut sorted_lms: Vec<usize> = sa.iter().copied().filter(|&v| lms_map[v] != EMPTY).collect();
        let mut rec_s = vec![0usize; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted_lms[i - 1], sorted_lms[i]);
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r];
        }
        induce(&sorted_lms, &mut sa);
    }
    sa
}

/// `lcp[k]` is the longest common prefix of suffixes `sa[k-1]` and `sa[k]`;
/// `lcp[0] = 0`.
pub fn lcp_array(s: &[u32], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i];
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1];
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

pub fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut rank = vec![0usize; sa.len()];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_sa(s: &[u32]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..s.len()).collect();
        sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        sa
    }

    fn naive_lcp(s: &[u32], sa: &[usize]) -> Vec<usize> {
        let mut out = vec![0; sa.len()];
        for k in 1..sa.len() {
            out[k] = s[sa[k - 1]..]
                .iter()
                .zip(&s[sa[k]..])
                .take_while(|(a, b)| a == b)
                .count();
        }
        out
    }

    #[test]
    fn known_strings() {
        let s: Vec<u32> = b"banana".iter().map(|&b| b as u32).collect();
        assert_eq!(suffix_array(&s, 255), vec![5, 3, 1, 0, 4, 2]);
        let s: Vec<u32> = b"mississippi".iter().map(|&b| b as u32).collect();
        assert_eq!(suffix_array(&s, 255), naive_sa(&s));
        let s = vec![0u32; 50];
        assert_eq!(suffix_array(&s, 0), (0..50).rev().collect::<Vec<_>>());
    }

    #[test]
    fn exhaustive_binary() {
        for n in 1..=12u32 {
            for bits in 0..(1u32 << n) {
                let s: Vec<u32> = (0..n).map(|k| (bits >> k) & 1).collect();
                let sa = suffix_array(&s, 1);
                assert_eq!(sa, naive_sa(&s), "{s:?}");
                assert_eq!(lcp_array(&s, &sa, &inverse(&sa)), naive_lcp(&s, &sa));
            }
        }
    }

    proptest! {
        #[test]
        fn matches_naive(s in proptest::collection::vec(0u32..5, 1..300)) {
            let sa = suffix_array(&s, 4);
            prop_assert_eq!(&sa, &naive_sa(&s));
            prop_assert_eq!(lcp_array(&s, &sa, &inverse(&sa)), naive_lcp(&s, &sa));
        }
    }
}
