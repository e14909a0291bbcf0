//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use filtdef::Q;
use std::collections::HashMap;

/// Dense rank over Q, kept separate from the sparse routines under test.
pub fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let mut r = 0;
    let cols = m.first().map(|row| row.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in c..cols {
                    let x = &m[r][k] * &f;
                    m[i][k] -= &x;
                }
            }
        }
        r += 1;
    }
    r
}

/// `H^q(P^1, O(m))` from Laurent monomials `s^a t^b`, `a + b = m`, with
/// exponents in `[-w, w]`.
pub fn p1_oracle(m: i64, q: usize, w: i64) -> usize {
    let cells: Vec<i64> = (-w..=w).filter(|a| (m - a).abs() <= w).collect();
    let mut c0: Vec<(usize, i64)> = Vec::new();
    for &a in &cells {
        if m - a >= 0 {
            c0.push((0, a));
        }
        if a >= 0 {
            c0.push((1, a));
        }
    }
    let idx: HashMap<i64, usize> = cells.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mat: Vec<Vec<Q>> = c0
        .iter()
        .map(|&(chart, a)| {
            let mut row = vec![Q::zero(); cells.len()];
            row[idx[&a]] = if chart == 1 { Q::one() } else { -Q::one() };
            row
        })
        .collect();
    let r = dense_rank(mat);
    if q == 0 {
        c0.len() - r
    } else {
        cells.len() - r
    }
}

/// Fermat cubic `x^3 + y^3 + z^3`: the normal form keeps `x`-exponents
/// below three.
fn cubic_normal(mut p: HashMap<[u32; 3], Q>) -> HashMap<[u32; 3], Q> {
    loop {
        let Some(e) = p.keys().find(|e| e[0] >= 3).copied() else { break };
        let c = p.remove(&e).unwrap();
        for sub in [[e[0] - 3, e[1] + 3, e[2]], [e[0] - 3, e[1], e[2] + 3]] {
            let v = p.entry(sub).or_insert_with(Q::zero);
            *v -= &c;
        }
        p.retain(|_, c| !c.is_zero());
    }
    p
}

fn cubic_basis(deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..3.min(deg + 1) {
        for b in 0..=deg - a {
            out.push([a, b, deg - a - b]);
        }
    }
    out
}

/// `H^q` of the plain Čech complex of `O` on the cubic at pole order `n`.
pub fn cubic_oracle(n: u32, q: usize) -> usize {
    let sets: Vec<Vec<Vec<usize>>> = vec![
        vec![vec![0], vec![1], vec![2]],
        vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        vec![vec![0, 1, 2]],
    ];
    let bases: Vec<Vec<(usize, [u32; 3])>> = sets
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .flat_map(|(k, s)| cubic_basis(n * s.len() as u32).into_iter().map(move |m| (k, m)))
                .collect()
        })
        .collect();
    let delta = |lvl: usize| -> Vec<Vec<Q>> {
        let tgt: HashMap<(usize, [u32; 3]), usize> = bases[lvl + 1].iter().enumerate().map(|(i, x)| (*x, i)).collect();
        bases[lvl]
            .iter()
            .map(|&(k, m)| {
                let mut row = vec![Q::zero(); bases[lvl + 1].len()];
                let s = &sets[lvl][k];
                for j in 0..3 {
                    if s.contains(&j) {
                        continue;
                    }
                    let pos = s.iter().filter(|&&x| x < j).count();
                    let mut big = s.clone();
                    big.insert(pos, j);
                    let bk = sets[lvl + 1].iter().position(|x| *x == big).unwrap();
                    let mut e = m;
                    e[j] += n;
                    let sign = if pos % 2 == 0 { Q::one() } else { -Q::one() };
                    for (e2, c) in cubic_normal(HashMap::from([(e, sign)])) {
                        row[tgt[&(bk, e2)]] += &c;
                    }
                }
                row
            })
            .collect()
    };
    let r0 = dense_rank(delta(0));
    let r1 = dense_rank(delta(1));
    match q {
        0 => bases[0].len() - r0,
        1 => bases[1].len() - r1 - r0,
        _ => bases[2].len() - r1,
    }
}

/// Torsion of `Ω^1` of the cusp as the kernel of `Ω^1_A → k[t] dt`,
/// `x = t^2`, `y = t^3`, graded by weight (`x`, `dx` weight 2; `y`, `dy`
/// weight 3).
pub fn cusp_torsion_oracle(max_w: u32) -> usize {
    // monomial basis of A: x^a y^b with b < 2
    let mono = |w: i64| -> Vec<(u32, u32)> {
        (0..=1u32).filter_map(|b| {
            let rest = w - 3 * b as i64;
            (rest >= 0 && rest % 2 == 0).then_some(((rest / 2) as u32, b))
        }).collect()
    };
    let mut total = 0;
    for w in 0..=max_w as i64 {
        // V = A_{w-2} dx ⊕ A_{w-3} dy
        let mut gens: Vec<(u8, (u32, u32))> = Vec::new();
        for m in mono(w - 2) {
            gens.push((0, m));
        }
        for m in mono(w - 3) {
            gens.push((1, m));
        }
        if gens.is_empty() {
            continue;
        }
        let pos: HashMap<(u8, (u32, u32)), usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        // normal form of x^a y^b in A
        let nf = |a: u32, b: u32| -> (u32, u32) { (a + 3 * (b / 2), b % 2) };
        // relation rho = 2y dy - 3x^2 dx of weight 6, times monomials of weight w-6
        let rows: Vec<Vec<Q>> = mono(w - 6)
            .into_iter()
            .map(|(a, b)| {
                let mut row = vec![Q::zero(); gens.len()];
                row[pos[&(1, nf(a, b + 1))]] += &Q::from_int(2);
                row[pos[&(0, nf(a + 2, b))]] += &Q::from_int(-3);
                row
            })
            .collect();
        let rel = dense_rank(rows);
        // each generator maps to a nonzero multiple of t^(w-1) dt
        total += gens.len() - rel - 1;
    }
    total
}

