//! `E(k)` recomputed from an explicit `W = U A + A U` in degree `2^{n+1}` and
//! compared with the factorised computation.

use gs_growth::algebra::{Echelon, Subspace};
use gs_growth::exact::{BitVec, Gf2};
use gs_growth::ladder::{build_ladder, compute_e, Ladder, Strategy};

fn explicit_w(l: &Ladder<Gf2>, n: u32) -> Subspace<Gf2> {
    let half = 1usize << n;
    let u = l.u_space(n).unwrap();
    let width = 1usize << (2 * half);
    let mut vectors = Vec::new();
    for row in u.rows() {
        for w in 0..1usize << half {
            let mut left = BitVec::zeros(width);
            let mut right = BitVec::zeros(width);
            for s in 0..1usize << half {
                if row.get(s) {
                    left.set((s << half) | w, true);
                    right.set((w << half) | s, true);
                }
            }
            vectors.push(left);
            vectors.push(right);
        }
    }
    Subspace::span(Gf2, 2, 2 * half, vectors)
}

/// Functionals `r -> phi(α r β)` for `phi` in `W⊥`; `E(k)` is their common kernel.
fn oracle_constraints(l: &Ladder<Gf2>, k: usize) -> Echelon<Gf2> {
    let n = usize::BITS - k.leading_zeros();
    let total = 2usize << n;
    let perp = explicit_w(l, n).annihilator();
    let mut e = Echelon::new(Gf2, 1 << k);
    for a in 0..=total - k {
        let b = total - k - a;
        for al in 0..1usize << a {
            for be in 0..1usize << b {
                for phi in perp.rows() {
                    let mut f = BitVec::zeros(1 << k);
                    for s in 0..1usize << k {
                        if phi.get((((al << k) | s) << b) | be) {
                            f.set(s, true);
                        }
                    }
                    e.insert(f);
                    if e.is_full() {
                        return e;
                    }
                }
            }
        }
    }
    e
}

#[test]
fn matches_explicit_kernel() {
    let mut ladders = vec![build_ladder(Gf2, Strategy::Trivial, 2, None).unwrap()];
    ladders.push(build_ladder(Gf2, Strategy::LexGreedy, 2, None).unwrap());
    for seed in 0..4 {
        ladders.push(build_ladder(Gf2, Strategy::Random(seed), 2, None).unwrap());
    }
    for l in &ladders {
        for k in 1..=3 {
            let fast = compute_e(l, k).unwrap();
            let constraints = oracle_constraints(l, k);
            assert_eq!(fast.dim(), (1 << k) - constraints.rank(), "{} k={k}", l.strategy());
            for r in fast.rows() {
                for c in constraints.rows() {
                    assert!(!r.and_parity(c), "{} k={k}: basis vector outside E", l.strategy());
                }
            }
        }
    }
}
