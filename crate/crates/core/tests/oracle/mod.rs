//! Reference implementations used as test oracles. Written for clarity and
//! exhaustiveness rather than speed, and sharing no code with the engine.
#![allow(dead_code)]

use std::collections::HashSet;

use q4eda_core::query::{QueryExpr, Term};
use rand::Rng;

pub const LAMBDA1: f64 = 0.5;
pub const LAMBDA2: f64 = 1.5;
pub const HALF_WINDOW: usize = 2;
pub const REL_HEIGHT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Up,
    Down,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Stable,
    Peak,
    Valley,
    Unstable,
}

/// Moving average by explicit summation over the neighbours that exist.
pub fn smooth(x: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..x.len() {
        let mut sum = 0.0;
        let mut count = 0.0;
        for (j, v) in x.iter().enumerate() {
            if j + HALF_WINDOW >= i && j <= i + HALF_WINDOW {
                sum += v;
                count += 1.0;
            }
        }
        out.push(sum / count);
    }
    out
}

pub fn trend(x: &[f64]) -> Trend {
    if x.len() < 2 {
        return Trend::Flat;
    }
    let s = smooth(x);
    let mut score = 0i64;
    for i in 1..s.len() {
        if s[i] > s[i - 1] {
            score += 1;
        } else if s[i] < s[i - 1] {
            score -= 1;
        }
    }
    match score.signum() {
        1 => Trend::Up,
        -1 => Trend::Down,
        _ => Trend::Flat,
    }
}

pub fn sigma(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// (index, prominence, width) of each local maximum.
///
/// Maximal runs of equal samples are enumerated; a run is a peak when both
/// neighbouring samples exist and are lower. The reported index is the
/// run's first sample.
pub fn peaks(x: &[f64]) -> Vec<(usize, f64, f64)> {
    let n = x.len();
    let mut runs = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && x[end + 1] == x[start] {
            end += 1;
        }
        runs.push((start, end));
        start = end + 1;
    }
    let mut out = Vec::new();
    for (s, e) in runs {
        if s == 0 || e == n - 1 || x[s - 1] >= x[s] || x[e + 1] >= x[s] {
            continue;
        }
        let top = x[s];
        // bases: lowest sample between the peak and the first strictly
        // higher sample on each side (or the edge); ties go to the sample
        // nearest the peak
        let mut left_base = s;
        let mut i = s;
        while i > 0 {
            i -= 1;
            if x[i] > top {
                break;
            }
            if x[i] < x[left_base] {
                left_base = i;
            }
        }
        let mut right_base = s;
        let mut j = s;
        while j + 1 < n {
            j += 1;
            if x[j] > top {
                break;
            }
            if x[j] < x[right_base] {
                right_base = j;
            }
        }
        let prominence = top - x[left_base].max(x[right_base]);
        let h = top - REL_HEIGHT * prominence;
        let mut l = s;
        while l > left_base && x[l] > h {
            l -= 1;
        }
        let mut left = l as f64;
        if x[l] < h {
            left += (h - x[l]) / (x[l + 1] - x[l]);
        }
        let mut r = s;
        while r < right_base && x[r] > h {
            r += 1;
        }
        let mut right = r as f64;
        if x[r] < h {
            right -= (h - x[r]) / (x[r - 1] - x[r]);
        }
        out.push((s, prominence, right - left));
    }
    out
}

pub fn factor(x: &[f64]) -> f64 {
    let s = sigma(x);
    if s == 0.0 {
        return 0.0;
    }
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let area = |v: &[f64]| peaks(v).iter().map(|(_, p, w)| p * w).sum::<f64>();
    x.len() as f64 * (area(x) - area(&neg)) / s
}

pub fn shape(x: &[f64]) -> Shape {
    if sigma(x) < LAMBDA1 {
        return Shape::Stable;
    }
    let pf = factor(x);
    if pf > LAMBDA2 {
        Shape::Peak
    } else if pf < -LAMBDA2 {
        Shape::Valley
    } else {
        Shape::Unstable
    }
}

/// Minimum DTW cost by enumerating every monotone alignment path.
pub fn dtw_exhaustive(a: &[f64], b: &[f64]) -> f64 {
    fn walk(a: &[f64], b: &[f64], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + (a[i] - b[j]).abs();
        if i == a.len() - 1 && j == b.len() - 1 {
            *best = best.min(acc);
            return;
        }
        if i + 1 < a.len() {
            walk(a, b, i + 1, j, acc, best);
        }
        if j + 1 < b.len() {
            walk(a, b, i, j + 1, acc, best);
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            walk(a, b, i + 1, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(a, b, 0, 0, 0.0, &mut best);
    best
}

/// Overlap metric evaluated straight from its definition.
pub fn replay_stability(original: &[String], derived: &[Vec<String>]) -> f64 {
    let mut total = 0usize;
    for list in derived {
        let mut seen = HashSet::new();
        for id in list {
            if original.contains(id) && seen.insert(id) {
                total += 1;
            }
        }
    }
    total as f64 / (original.len() as f64 * derived.len() as f64)
}

/// The nine endpoint variants of a range, original first, clamped and
/// de-duplicated.
pub fn nine_ranges(start: i32, end: i32, lo: i32, hi: i32) -> Vec<(i32, i32)> {
    let mut out = vec![(start, end)];
    for ds in [-1, 0, 1] {
        for de in [-1, 0, 1] {
            let r = ((start + ds).max(lo).min(hi), (end + de).max(lo).min(hi));
            if r.0 <= r.1 && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// The 30-case synthetic finding suite: constructed peaks, valleys, trends,
/// flats and noise.
pub fn finding_suite(rng: &mut impl Rng) -> Vec<(String, Vec<f64>)> {
    let mut cases = Vec::new();
    let bump = |n: usize, c: f64, a: f64, s: f64| -> Vec<f64> {
        (0..n).map(|i| a * (-((i as f64 - c) / s).powi(2)).exp()).collect()
    };
    for (k, n) in [5usize, 7, 9, 11, 15].into_iter().enumerate() {
        let c = (n / 2) as f64;
        cases.push((format!("peak-{n}"), bump(n, c, 3.0 + k as f64, 1.5)));
        cases.push((format!("valley-{n}"), bump(n, c, -(3.0 + k as f64), 1.5)));
        cases.push((format!("rise-{n}"), (0..n).map(|i| i as f64 * 0.8).collect()));
        cases.push((format!("fall-{n}"), (0..n).map(|i| 10.0 - i as f64 * 0.7).collect()));
    }
    for n in [4usize, 8, 12] {
        cases.push((format!("flat-{n}"), vec![7.0; n]));
        cases.push((
            format!("jitter-{n}"),
            (0..n).map(|_| 7.0 + rng.random_range(-0.2..0.2)).collect(),
        ));
    }
    for n in [10usize, 20] {
        cases.push((
            format!("noise-{n}"),
            (0..n).map(|_| rng.random_range(-3.0..3.0)).collect(),
        ));
    }
    cases.push(("zigzag".into(), vec![0.0, 2.0, 0.0, 2.0, 0.0, 2.0]));
    cases.push(("twin-peaks".into(), vec![0.0, 6.0, 2.0, 6.0, 0.0]));
    assert_eq!(cases.len(), 30);
    cases
}

const WORDS: [&str; 8] = ["war", "life", "usa", "north america", "1860s", "death", "19th century", "dip"];
const WEIGHTS: [f64; 6] = [1.0, 0.5, 2.0, 0.2, 1.5, 0.8];

/// A random expression tree of bounded depth, not necessarily canonical.
pub fn random_expr(rng: &mut impl Rng, depth: u32) -> QueryExpr {
    let leaf = depth == 0 || rng.random_bool(0.3);
    if leaf {
        let text = WORDS[rng.random_range(0..WORDS.len())];
        let weight = WEIGHTS[rng.random_range(0..WEIGHTS.len())];
        let term = Term::new(text, weight, rng.random_bool(0.2)).unwrap();
        return QueryExpr::Term(term);
    }
    match rng.random_range(0..10) {
        0 => QueryExpr::required(random_expr(rng, depth - 1)),
        1 => QueryExpr::scaled(random_expr(rng, depth - 1), WEIGHTS[rng.random_range(1..WEIGHTS.len())]).unwrap(),
        k => {
            let n = rng.random_range(2..5);
            let cs = (0..n).map(|_| random_expr(rng, depth - 1)).collect();
            if k % 2 == 0 {
                QueryExpr::Or(cs)
            } else {
                QueryExpr::And(cs)
            }
        }
    }
}

/// Scores every document for a negation-free canonical query by scanning
/// token lists: tf·idf·weight per matching term with idf = ln(1 + N/df),
/// `Or` sums its matching children (a failed required child rejects),
/// `And` needs every child. Returns (doc index, score) best first, ties by
/// id.
pub fn score_corpus(expr: &QueryExpr, docs: &[(String, Vec<String>)], tokenize: impl Fn(&str) -> Vec<String>) -> Vec<(usize, f64)> {
    fn occurrences(tokens: &[String], phrase: &[String]) -> usize {
        if phrase.is_empty() || phrase.len() > tokens.len() {
            return 0;
        }
        (0..=tokens.len() - phrase.len())
            .filter(|&i| tokens[i..i + phrase.len()] == *phrase)
            .count()
    }
    fn eval(
        e: &QueryExpr,
        d: usize,
        docs: &[(String, Vec<String>)],
        tokenize: &dyn Fn(&str) -> Vec<String>,
    ) -> Option<f64> {
        match e {
            QueryExpr::Term(t) => {
                let phrase = tokenize(t.text());
                let tf = occurrences(&docs[d].1, &phrase);
                if tf == 0 {
                    return None;
                }
                let df = docs.iter().filter(|(_, toks)| occurrences(toks, &phrase) > 0).count();
                let idf = (1.0 + docs.len() as f64 / df as f64).ln();
                Some(tf as f64 * idf * t.weight())
            }
            QueryExpr::Or(cs) => {
                let mut any = None;
                for c in cs {
                    match eval(c, d, docs, tokenize) {
                        Some(s) => any = Some(any.unwrap_or(0.0) + s),
                        None if matches!(c, QueryExpr::Required(_)) => return None,
                        None => {}
                    }
                }
                any
            }
            QueryExpr::And(cs) => cs.iter().map(|c| eval(c, d, docs, tokenize)).sum(),
            QueryExpr::Required(c) => eval(c, d, docs, tokenize),
            QueryExpr::Scaled(..) => panic!("oracle expects canonical input"),
        }
    }
    let mut out: Vec<(usize, f64)> = (0..docs.len())
        .filter_map(|d| eval(expr, d, docs, &tokenize).map(|s| (d, s)))
        .collect();
    out.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(docs[a.0].0.cmp(&docs[b.0].0)));
    out
}
