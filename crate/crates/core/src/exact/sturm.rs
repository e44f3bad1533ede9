use std::cmp::Ordering;

use rug::Rational;

use super::poly::Polynomial;

/// Yun's square-free decomposition: returns `[a_1, a_2, ...]` with
/// `p = lc * a_1 * a_2^2 * a_3^3 * ...`, each `a_i` monic and square-free.
pub fn squarefree_decomposition(p: &Polynomial<Rational>) -> Vec<Polynomial<Rational>> {
    assert!(!p.is_zero(), "square-free decomposition of zero");
    let mut factors = Vec::new();
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0).unwrap();
    let mut c = dp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        factors.push(a);
    }
    factors
}

/// Product of the square-free factors that occur to an odd power; the
/// polynomial changes sign exactly at the real roots of this part.
pub fn odd_multiplicity_part(p: &Polynomial<Rational>) -> Polynomial<Rational> {
    squarefree_decomposition(p)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(Polynomial::one(p.var()), |acc, (_, a)| &acc * a)
}

fn sturm_chain(p: &Polynomial<Rational>) -> Vec<Polynomial<Rational>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(chain: &[Polynomial<Rational>], at: &Rational) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|q| q.sign_at(at))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the open interval `(lo, hi)`.
pub fn count_roots_open(p: &Polynomial<Rational>, lo: &Rational, hi: &Rational) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    assert!(lo < hi, "empty interval");
    let sqfree = p.exact_div(&p.gcd(&p.derivative())).unwrap();
    let (sqfree, _) = sqfree.remove_root(lo);
    let (sqfree, _) = sqfree.remove_root(hi);
    if sqfree.is_constant() {
        return 0;
    }
    let chain = sturm_chain(&sqfree);
    sign_changes(&chain, lo) - sign_changes(&chain, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints("t", c)
    }

    #[test]
    fn yun_decomposition() {
        // (t - 1)(t - 2)^2 t^3
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1]).pow(2)) * &p(&[0, 1]).pow(3);
        let parts = squarefree_decomposition(&f);
        assert_eq!(parts, vec![p(&[-1, 1]), p(&[-2, 1]), p(&[0, 1])]);
        assert_eq!(odd_multiplicity_part(&f), &p(&[-1, 1]) * &p(&[0, 1]));
        // leading coefficient other than 1
        assert_eq!(squarefree_decomposition(&p(&[108, -96])), vec![p(&[-9, 8]).monic()]);
        assert_eq!(odd_multiplicity_part(&p(&[0, 0, 3])), Polynomial::one("t"));
    }

    #[test]
    fn counts_roots_in_unit_interval() {
        let zero = Rational::new();
        let one = Rational::from(1);
        // 12(9 - 8t) vanishes at 9/8, outside
        assert_eq!(count_roots_open(&p(&[108, -96]), &zero, &one), 0);
        // (2t - 1)^2 - 1/100 has roots 0.45 and 0.55
        let q = &p(&[-1, 2]).pow(2) - &Polynomial::constant("t", Rational::from((1, 100)));
        assert_eq!(count_roots_open(&q, &zero, &one), 2);
        // endpoint roots are excluded
        assert_eq!(count_roots_open(&p(&[0, -1, 1]), &zero, &one), 0);
        // catalog (iv): roots 8 +- 4 sqrt 3
        assert_eq!(count_roots_open(&p(&[48, -48, 3]), &zero, &one), 0);
    }
}
