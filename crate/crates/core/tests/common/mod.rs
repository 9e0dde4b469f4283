//! Oracles shared by the integration suites. Nothing here calls into the
//! library's linear algebra.
#![allow(dead_code)]

use std::collections::HashMap;

use lensorbit::reconstruct::{family_one, family_three, family_two};
use lensorbit::ring::{standard_space, Presentation, SpaceKind};

/// Exponent vectors of total degree `d`.
pub fn monomials(degrees: &[usize], d: usize) -> Vec<Vec<u32>> {
    fn go(degrees: &[usize], left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let g = degrees[cur.len()];
        for e in 0..=left / g {
            cur.push(e as u32);
            go(degrees, left - e * g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, d, &mut Vec::new(), &mut out);
    out
}

fn rank_u64(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimensions in degrees `0..=cap`: all monomials of each degree, minus the
/// rank of the relations multiplied by every monomial of complementary degree.
pub fn poincare_oracle(p: &Presentation) -> Vec<usize> {
    let degrees: Vec<usize> = p.generators().iter().map(|g| g.degree).collect();
    let deg = |m: &[u32]| {
        m.iter()
            .zip(&degrees)
            .map(|(&e, &g)| e as usize * g)
            .sum::<usize>()
    };
    (0..=p.cap())
        .map(|d| {
            let monos = monomials(&degrees, d);
            let index: HashMap<&Vec<u32>, usize> =
                monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let words = monos.len().div_ceil(64).max(1);
            let mut rows = Vec::new();
            for rel in p.relations() {
                let e = deg(&rel[0]);
                if e > d {
                    continue;
                }
                for u in monomials(&degrees, d - e) {
                    let mut row = vec![0u64; words];
                    for term in rel {
                        let prod: Vec<u32> = term.iter().zip(&u).map(|(a, b)| a + b).collect();
                        let i = index[&prod];
                        row[i / 64] ^= 1 << (i % 64);
                    }
                    rows.push(row);
                }
            }
            monos.len() - rank_u64(rows, monos.len())
        })
        .collect()
}

/// The presentations the suites and the search build on.
pub fn presentations_in_use() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    for n in 1..=9 {
        out.push((
            format!("S{n}"),
            standard_space(SpaceKind::Sphere(n)).unwrap(),
        ));
    }
    for n in 1..=13 {
        out.push((
            format!("RP{n}"),
            standard_space(SpaceKind::RealProjective(n)).unwrap(),
        ));
    }
    for m in 1..=8 {
        out.push((
            format!("lens m={m}"),
            standard_space(SpaceKind::LensMod2(m)).unwrap(),
        ));
    }
    for cap in [1, 4, 9] {
        out.push((
            format!("BZ2 cap {cap}"),
            standard_space(SpaceKind::ClassifyingSpaceZ2(cap)).unwrap(),
        ));
    }
    for h in 2..=16 {
        out.push((
            format!("family 1 h={h}"),
            family_one(h).unwrap().presentation,
        ));
    }
    for m in 1..=8 {
        out.push((
            format!("family 2 m={m}"),
            family_two(m).unwrap().presentation,
        ));
    }
    for m in [4, 6, 8] {
        for l in [0, 1] {
            out.push((
                format!("family 3 m={m} λ={l}"),
                family_three(m, l).unwrap().presentation,
            ));
        }
    }
    for text in [
        "ring F2[x:1,y:1,z:4]/(x^4, y^2, z^3, x^2*y) cap 14",
        "ring F2[a:2,b:3]/(a^2, b^2) cap 10",
        "ring F2[v:1,w:2]/(v^2, w^3) cap 7",
        "ring F2[u:3]/(u^2) cap 9",
        "ring F2[x:1,y:2]/(x^3 + x*y, y^2) cap 9",
        "ring F2[] cap 3",
    ] {
        out.push((text.to_string(), text.parse().unwrap()));
    }
    out
}
