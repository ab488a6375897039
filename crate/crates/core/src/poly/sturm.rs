//! Exact real-root counting.

use num_traits::Signed;

use super::QPoly;

fn sign_at_infinity(p: &QPoly, negative: bool) -> i8 {
    let lead = p.leading().expect("nonzero");
    let mut s: i8 = if lead.is_negative() { -1 } else { 1 };
    if negative && p.degree().unwrap() % 2 == 1 {
        s = -s;
    }
    s
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// The Sturm chain P, P', -rem(P, P'), ...
pub fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        chain.push(-&r);
    }
    chain.pop();
    chain
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_real_roots(p: &QPoly) -> usize {
    assert!(!p.is_zero(), "zero polynomial has no finite root count");
    if p.degree() == Some(0) {
        return 0;
    }
    let chain = sturm_chain(p);
    let at_neg = sign_changes(chain.iter().map(|q| sign_at_infinity(q, true)));
    let at_pos = sign_changes(chain.iter().map(|q| sign_at_infinity(q, false)));
    debug_assert!(chain.iter().all(|q| !q.is_zero()));
    at_neg - at_pos
}
