use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Exponent, LaurentPolynomial, PolynomialSystem, ValuedCoefficient, Variables};
use crate::error::{Error, Result};

fn subsets(ground: &[u8]) -> Vec<Vec<u8>> {
    (0u32..1 << ground.len())
        .map(|mask| ground.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn digits(set: &[u8]) -> String {
    let mut s: Vec<u8> = set.to_vec();
    s.sort_unstable();
    s.iter().map(|d| char::from(b'0' + d)).collect()
}

fn p_name(set: &[u8]) -> String {
    format!("p{}", digits(set))
}

fn a_name(i: u8, j: u8, k: &[u8]) -> String {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let k = digits(k);
    if k.is_empty() {
        format!("a{i}{j}")
    } else {
        format!("a{i}{j}_{k}")
    }
}

/// Variables of the gaussoid ring: every `p_I` ordered by the digit string
/// of `I`, then every `a_{ij|K}` ordered by `(i, j)` and the digit string of
/// `K`. Names follow `p`, `p12`, `a12`, `a12_3`.
pub fn gaussoid_variables(n: u8) -> Result<Variables> {
    if !(3..=9).contains(&n) {
        return Err(Error::Invalid(format!("gaussoid size must lie in 3..=9, got {n}")));
    }
    let ground: Vec<u8> = (1..=n).collect();
    let mut ps: Vec<String> = subsets(&ground).iter().map(|s| digits(s)).collect();
    ps.sort();
    let mut names: Vec<String> = ps.iter().map(|d| format!("p{d}")).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            let rest: Vec<u8> = ground.iter().copied().filter(|&x| x != i && x != j).collect();
            let mut ks: Vec<String> = subsets(&rest).iter().map(|s| digits(s)).collect();
            ks.sort();
            for k in ks {
                names.push(if k.is_empty() { format!("a{i}{j}") } else { format!("a{i}{j}_{k}") });
            }
        }
    }
    Ok(Variables::new(&names))
}

struct Builder<'a> {
    vars: &'a Variables,
    index: BTreeMap<&'a str, usize>,
}

impl Builder<'_> {
    fn mono(&self, c: i64, names: &[&str]) -> LaurentPolynomial {
        let mut e = Exponent::zero(self.vars.len());
        for name in names {
            e.0[self.index[name]] += 1;
        }
        LaurentPolynomial::monomial(self.vars, e, ValuedCoefficient::from_integer(c))
    }
}

fn without(set: &[u8], drop: &[u8]) -> Vec<u8> {
    set.iter().copied().filter(|x| !drop.contains(x)).collect()
}

fn with(set: &[u8], add: u8) -> Vec<u8> {
    let mut s = set.to_vec();
    if !s.contains(&add) {
        s.push(add);
    }
    s
}

/// Square and edge trinomials of the gaussoid ideal `T_n`.
///
/// Squares `a_{ij|K}² − p_{Ki} p_{Kj} + p_{Kij} p_K` come first (ordered by
/// `(i, j, K)`), then edges `p_{Lk} a_{ij|L∖ij} − p_L a_{ij|Lk∖ij} −
/// a_{ki|L∖i} a_{kj|L∖j}` ordered by `(k, i, j, L)` with `i < j`.
pub fn gaussoid_system(n: u8) -> Result<PolynomialSystem> {
    let vars = gaussoid_variables(n)?;
    let names: Vec<String> = vars.names().to_vec();
    let b = Builder { vars: &vars, index: names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect() };
    let ground: Vec<u8> = (1..=n).collect();
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in subsets(&without(&ground, &[i, j])) {
                let a = a_name(i, j, &k);
                let (pki, pkj, pkij, pk) = (p_name(&with(&k, i)), p_name(&with(&k, j)), p_name(&with(&with(&k, i), j)), p_name(&k));
                let f = &(&b.mono(1, &[&a, &a]) - &b.mono(1, &[&pki, &pkj])) + &b.mono(1, &[&pkij, &pk]);
                gens.push(f);
            }
        }
    }
    for k in 1..=n {
        let others = without(&ground, &[k]);
        for (x, &i) in others.iter().enumerate() {
            for &j in &others[x + 1..] {
                for l in subsets(&others) {
                    let t1 = b.mono(1, &[&p_name(&with(&l, k)), &a_name(i, j, &without(&l, &[i, j]))]);
                    let t2 = b.mono(1, &[&p_name(&l), &a_name(i, j, &without(&with(&l, k), &[i, j]))]);
                    let t3 = b.mono(1, &[&a_name(k, i, &without(&l, &[i])), &a_name(k, j, &without(&l, &[j]))]);
                    gens.push(&(&t1 - &t2) - &t3);
                }
            }
        }
    }
    PolynomialSystem::new(&vars, gens)
}
