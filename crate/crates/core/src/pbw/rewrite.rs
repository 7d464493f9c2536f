//! A deliberately naive word rewriter used to cross-check the engine. It
//! shares only the relation list with [`Algebra`], never its normal forms.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::Fp;

use super::{Algebra, Gen, GeneratorOrder, NcPoly, PbwMonomial};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always rewrite the leftmost out-of-order adjacent pair.
    Leftmost,
    /// Always rewrite the rightmost out-of-order adjacent pair.
    Rightmost,
}

type WordSum = HashMap<Vec<Gen>, Fp>;

pub struct WordRewriter {
    alg: Arc<Algebra>,
    /// `[a, b]` as a sum of words, `z(D)` expanded without any reordering.
    tails: Vec<Vec<WordSum>>,
}

impl WordRewriter {
    pub fn new(alg: Arc<Algebra>) -> Self {
        let f = alg.field();
        let mut tails = vec![vec![WordSum::new(); 5]; 5];
        for a in Gen::ALL {
            for b in Gen::ALL {
                if a.is_vector() && b.is_vector() {
                    continue;
                }
                for &(m, c) in alg.bracket_terms(a, b) {
                    // structural tails are single letters
                    let word: Vec<Gen> =
                        m.factors(alg.order()).into_iter().map(|(g, _)| g).collect();
                    tails[a.index()][b.index()].insert(word, c);
                }
            }
        }
        let mut delta = WordSum::new();
        delta.insert(vec![Gen::H, Gen::H], Fp(1));
        delta.insert(vec![Gen::E, Gen::F], f.elem(4));
        delta.insert(vec![Gen::H], f.elem(-2));
        let mut power = WordSum::new();
        power.insert(Vec::new(), Fp(1));
        let mut zd = WordSum::new();
        for (n, c) in alg.deformation().coeffs().iter().enumerate() {
            if n > 0 {
                let mut next = WordSum::new();
                for (w1, c1) in &power {
                    for (w2, c2) in &delta {
                        let mut w = w1.clone();
                        w.extend_from_slice(w2);
                        add_to(&mut next, w, f.fmul(*c1, *c2), &alg);
                    }
                }
                power = next;
            }
            for (w, pc) in &power {
                add_to(&mut zd, w.clone(), f.fmul(*pc, *c), &alg);
            }
        }
        let neg: WordSum = zd.iter().map(|(w, c)| (w.clone(), f.fneg(*c))).collect();
        tails[Gen::X.index()][Gen::Y.index()] = zd;
        tails[Gen::Y.index()][Gen::X.index()] = neg;
        WordRewriter { alg, tails }
    }

    fn inversion(&self, w: &[Gen], strategy: Strategy) -> Option<usize> {
        let order: &GeneratorOrder = self.alg.order();
        let bad = |i: &usize| order.position(w[*i]) > order.position(w[*i + 1]);
        let n = w.len().saturating_sub(1);
        match strategy {
            Strategy::Leftmost => (0..n).find(bad),
            Strategy::Rightmost => (0..n).rev().find(bad),
        }
    }

    /// Reduces a word to a sum of ordered words, one rule application at a
    /// time.
    pub fn reduce(&self, word: &[Gen], strategy: Strategy) -> NcPoly {
        let f = self.alg.field();
        let mut pending: WordSum = WordSum::new();
        pending.insert(word.to_vec(), Fp(1));
        let mut done: HashMap<PbwMonomial, Fp> = HashMap::new();
        while let Some(w) = pending.keys().next().cloned() {
            let c = pending.remove(&w).unwrap();
            if c.0 == 0 {
                continue;
            }
            match self.inversion(&w, strategy) {
                None => {
                    let mut m = PbwMonomial::ONE;
                    for g in &w {
                        m = m.times(*g, 1);
                    }
                    let e = done.entry(m).or_insert(Fp(0));
                    *e = f.fadd(*e, c);
                }
                Some(i) => {
                    let (a, b) = (w[i], w[i + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    add_to(&mut pending, swapped, c, &self.alg);
                    for (tail, tc) in &self.tails[a.index()][b.index()] {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(tail);
                        nw.extend_from_slice(&w[i + 2..]);
                        add_to(&mut pending, nw, f.fmul(c, *tc), &self.alg);
                    }
                }
            }
        }
        NcPoly::from_terms(self.alg.clone(), done)
    }
}

fn add_to(sum: &mut WordSum, w: Vec<Gen>, c: Fp, alg: &Algebra) {
    let f = alg.field();
    let e = sum.entry(w).or_insert(Fp(0));
    *e = f.fadd(*e, c);
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub samples: usize,
    /// Words on which the two strategies disagree.
    pub divergences: Vec<String>,
    /// Words on which the rewriter disagrees with the engine.
    pub engine_mismatches: Vec<String>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.divergences.is_empty() && self.engine_mismatches.is_empty()
    }
}

fn word_string(w: &[Gen]) -> String {
    w.iter()
        .map(|g| g.symbol().to_string())
        .collect::<Vec<_>>()
        .join("*")
}

/// Compares both rewriting strategies and the engine on one word.
pub fn check_word(rw: &WordRewriter, word: &[Gen], report: &mut ConfluenceReport) {
    let left = rw.reduce(word, Strategy::Leftmost);
    let right = rw.reduce(word, Strategy::Rightmost);
    report.samples += 1;
    if left != right {
        report
            .divergences
            .push(format!("{}: {left} vs {right}", word_string(word)));
    }
    let engine = rw.alg.word(word);
    if engine != left {
        report
            .engine_mismatches
            .push(format!("{}: {engine} vs {left}", word_string(word)));
    }
}

/// Reduces `n_samples` random words (length 2 to 6) with both strategies
/// and with the engine.
pub fn confluence_check(alg: &Arc<Algebra>, n_samples: usize, seed: u64) -> ConfluenceReport {
    let rw = WordRewriter::new(alg.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConfluenceReport::default();
    for _ in 0..n_samples {
        let len = rng.gen_range(2..=6);
        let word: Vec<Gen> = (0..len)
            .map(|_| Gen::from_index(rng.gen_range(0..5)))
            .collect();
        check_word(&rw, &word, &mut report);
    }
    report
}
