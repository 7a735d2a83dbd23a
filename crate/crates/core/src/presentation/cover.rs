use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;

use super::{Presentation, Word};
use crate::error::{Error, Result};

/// Presentation of the kernel of `phi: G -> Z/N` by Reidemeister-Schreier rewriting.
///
/// `phi[i]` is the image of generator `i`. The Schreier transversal is a BFS tree on the
/// cosets `0..N`; every edge `c --x_i--> c + phi_i` off the tree becomes a generator
/// named `{x_i}_{c}`, and every relator is rewritten from every coset.
pub fn cyclic_cover_presentation(p: &Presentation, phi: &[i64], order: u64) -> Result<Presentation> {
    let n = p.num_generators();
    if phi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: phi.len() });
    }
    let big_n = order as i64;
    if order == 0 || phi.iter().fold(big_n, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::NotSurjective { order });
    }
    let phi: Vec<usize> = phi.iter().map(|&x| x.rem_euclid(big_n) as usize).collect();
    let cosets = order as usize;
    for r in p.relators() {
        let total: i64 = r.exponent_vector(n).iter().zip(&phi).map(|(e, &f)| e * f as i64).sum::<i64>();
        if total.rem_euclid(big_n) != 0 {
            return Err(Error::NotHomomorphism { order, relator: r.render(p.gen_names()) });
        }
    }

    // tree[c][i]: the edge c --x_i--> c+phi_i lies in the spanning tree
    let mut tree = vec![vec![false; n]; cosets];
    let mut seen = vec![false; cosets];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (i, &f) in phi.iter().enumerate() {
            let fwd = (c + f) % cosets;
            if !seen[fwd] {
                seen[fwd] = true;
                tree[c][i] = true;
                queue.push_back(fwd);
            }
            let back = (c + cosets - f) % cosets;
            if !seen[back] {
                seen[back] = true;
                tree[back][i] = true;
                queue.push_back(back);
            }
        }
    }

    let mut index = vec![vec![None; n]; cosets];
    let mut names = Vec::new();
    for i in 0..n {
        for c in 0..cosets {
            if !tree[c][i] {
                index[c][i] = Some(names.len());
                names.push(format!("{}_{}", p.gen_names()[i], c));
            }
        }
    }

    let mut rels = BTreeSet::new();
    for r in p.relators() {
        for start in 0..cosets {
            let mut c = start;
            let mut w = Word::identity();
            for (i, s) in r.letters() {
                if s > 0 {
                    if let Some(g) = index[c][i] {
                        w = w.mul(&Word::generator(g));
                    }
                    c = (c + phi[i]) % cosets;
                } else {
                    c = (c + cosets - phi[i]) % cosets;
                    if let Some(g) = index[c][i] {
                        w = w.mul(&Word::syllable(g, -1));
                    }
                }
            }
            debug_assert_eq!(c, start);
            let w = w.cyclically_reduced();
            if !w.is_identity() {
                rels.insert(w);
            }
        }
    }
    Presentation::new(names, rels.into_iter().collect())
}
