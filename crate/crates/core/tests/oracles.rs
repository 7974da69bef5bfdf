//! Counts and dimensions recomputed by brute force or closed formulas.

use webcalc::combinatorics::{enum_colored, enum_m, Object};
use webcalc::howe::double_centralizer_check;
use webcalc::schur::schur_dim;
use webcalc::superalgebra::{builtin, BUILTIN_SUITE};
use webcalc::wreath::wreath_dim;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Matrices with entries in `0..=cap` (cap None: unbounded) and given margins.
fn margin_matrices(rows: &[usize], cols: &[usize], cap: Option<usize>) -> Vec<Vec<Vec<usize>>> {
    fn rec(r: usize, c: usize, rows: &mut Vec<usize>, cols: &mut Vec<usize>, cap: Option<usize>, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if r == rows.len() {
            if cols.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if c == cols.len() {
            if rows[r] == 0 {
                rec(r + 1, 0, rows, cols, cap, cur, out);
            }
            return;
        }
        let hi = rows[r].min(cols[c]).min(cap.unwrap_or(usize::MAX));
        for v in 0..=hi {
            rows[r] -= v;
            cols[c] -= v;
            cur[r][c] = v;
            rec(r, c + 1, rows, cols, cap, cur, out);
            rows[r] += v;
            cols[c] += v;
        }
        cur[r][c] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![vec![0; cols.len()]; rows.len()];
    rec(0, 0, &mut rows.to_vec(), &mut cols.to_vec(), cap, &mut cur, &mut out);
    out
}

fn thicknesses(o: &Object) -> Vec<usize> {
    o.parts.iter().map(|&(_, x)| x as usize).collect()
}

#[test]
fn trivial_hom_counts_are_margin_matrices() {
    let p = builtin("trivial").unwrap();
    for d in 1..=4 {
        let objs = enum_colored(d, d, 1);
        for s in &objs {
            for t in &objs {
                let expect = margin_matrices(&thicknesses(s), &thicknesses(t), None).len();
                assert_eq!(enum_m(&p, s, t).len(), expect, "{s} -> {t}");
            }
        }
    }
}

#[test]
fn clifford_hom_counts_split_into_even_and_odd_parts() {
    // a cell splits as e + o with o ∈ {0, 1}; sum over all odd 0/1 matrices
    let p = builtin("clifford1").unwrap();
    for d in 1..=3 {
        let objs = enum_colored(d, d, 1);
        for s in &objs {
            for t in &objs {
                let (rs, cs) = (thicknesses(s), thicknesses(t));
                let mut expect = 0;
                for k in 0..=d {
                    for r_odd in compositions_bounded(&rs, k) {
                        for c_odd in compositions_bounded(&cs, k) {
                            let odd = margin_matrices(&r_odd, &c_odd, Some(1)).len();
                            let re: Vec<usize> = rs.iter().zip(&r_odd).map(|(a, b)| a - b).collect();
                            let ce: Vec<usize> = cs.iter().zip(&c_odd).map(|(a, b)| a - b).collect();
                            expect += odd * margin_matrices(&re, &ce, None).len();
                        }
                    }
                }
                assert_eq!(enum_m(&p, s, t).len(), expect, "{s} -> {t}");
            }
        }
    }
}

/// Vectors v with v ≤ bound entrywise and Σ v = k.
fn compositions_bounded(bound: &[usize], k: usize) -> Vec<Vec<usize>> {
    if bound.is_empty() {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for v in 0..=bound[0].min(k) {
        for mut rest in compositions_bounded(&bound[1..], k - v) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

#[test]
fn classical_schur_algebra_dimension() {
    let p = builtin("trivial").unwrap();
    for n in 1..=3 {
        for d in 1..=3 {
            assert_eq!(schur_dim(&p, n, d), binom(n * n + d - 1, d), "S({n},{d})");
        }
    }
}

#[test]
fn wreath_dimension_is_factorial_times_power() {
    for name in BUILTIN_SUITE {
        let p = builtin(name).unwrap();
        for d in 1..=2 {
            let fact: usize = (1..=d).product();
            assert_eq!(wreath_dim(&p, d), fact * p.dim().pow(d as u32), "{name} d={d}");
        }
    }
    assert_eq!(wreath_dim(&builtin("trivial").unwrap(), 3), 6);
}

fn sym_dim(even: usize, odd: usize, k: usize) -> usize {
    if k == 0 {
        return 1;
    }
    (0..=k.min(odd)).map(|j| binom(even + k - j - 1, k - j) * binom(odd, j)).sum()
}

fn strict_partitions(d: usize, max_parts: usize, largest: usize) -> usize {
    if d == 0 {
        return 1;
    }
    if max_parts == 0 {
        return 0;
    }
    (1..=largest.min(d)).map(|x| strict_partitions(d - x, max_parts - 1, x - 1)).sum()
}

fn partitions(d: usize, max_parts: usize, largest: usize) -> usize {
    if d == 0 {
        return 1;
    }
    if max_parts == 0 {
        return 0;
    }
    (1..=largest.min(d)).map(|x| partitions(d - x, max_parts - 1, x)).sum()
}

#[test]
fn howe_space_and_multipartition_counts() {
    for (name, strict) in [("trivial", false), ("clifford1", true)] {
        let p = builtin(name).unwrap();
        let (e, o) = p.graded_dim();
        for (m, n, d) in [(1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 3, 2), (2, 2, 3)] {
            let r = double_centralizer_check(&p, m, n, d);
            assert_eq!(r.space_dim, sym_dim(m * n * e, m * n * o, d), "{name} ({m},{n},{d})");
            let k = m.min(n);
            let expect = if strict { strict_partitions(d, k, d) } else { partitions(d, k, d) };
            assert_eq!(r.multipartitions, Some(expect), "{name} ({m},{n},{d})");
        }
    }
}
