//! Property suites over randomized inputs.

use num::{BigRational, Zero};
use proptest::prelude::*;

use cycleforge::hurwitz::{hurwitz_move, replay_sequence, HurwitzTuple, MoveDirection};
use cycleforge::hypcheck::{reduce, KSymbol, KSymbolVector, Translation};
use cycleforge::perm::{compose, conjugate, symmetric_group, Perm};

fn perm_strategy(degree: usize) -> impl Strategy<Value = Perm> {
    let group = symmetric_group(degree);
    (0..group.len()).prop_map(move |i| group[i].clone())
}

/// A random tuple with identity product: random entries with a correcting
/// tail of two equal transpositions... instead, conjugates of a fixed base
/// tuple shuffled by random braid moves, which preserves the invariant.
fn tuple_strategy(degree: usize, n: usize) -> impl Strategy<Value = HurwitzTuple> {
    let base: Vec<Perm> = {
        // transposition pairs (t, t, u, u, ...) always multiply to 1
        let group = symmetric_group(degree);
        let transpositions: Vec<Perm> = group
            .iter()
            .filter(|p| p.cycle_type().parts() == [2].iter().copied().chain(std::iter::repeat(1)).take(degree - 1).collect::<Vec<_>>())
            .cloned()
            .collect();
        let mut entries = Vec::with_capacity(n);
        let mut i = 0;
        while entries.len() + 2 <= n {
            let t = transpositions[i % transpositions.len()].clone();
            entries.push(t.clone());
            entries.push(t);
            i += 1;
        }
        if entries.len() < n {
            entries.push(Perm::identity(degree));
        }
        entries
    };
    let moves = proptest::collection::vec((1..n, proptest::bool::ANY), 0..40);
    let base = HurwitzTuple::new(base).unwrap();
    moves.prop_map(move |word| {
        let word: Vec<(usize, MoveDirection)> = word
            .into_iter()
            .map(|(i, f)| {
                (
                    i,
                    if f {
                        MoveDirection::Forward
                    } else {
                        MoveDirection::Inverse
                    },
                )
            })
            .collect();
        replay_sequence(&base, &word).unwrap()
    })
}

proptest! {
    #[test]
    fn compose_associative_and_inverse(
        p in perm_strategy(4),
        q in perm_strategy(4),
        r in perm_strategy(4),
    ) {
        let left = compose(&compose(&p, &q).unwrap(), &r).unwrap();
        let right = compose(&p, &compose(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(compose(&p.inverse(), &p).unwrap().is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type(p in perm_strategy(5), g in perm_strategy(5)) {
        prop_assert_eq!(conjugate(&p, &g).unwrap().cycle_type(), p.cycle_type());
    }

    #[test]
    fn cycle_notation_round_trips(p in perm_strategy(6)) {
        let s = p.to_string();
        prop_assert_eq!(Perm::parse_cycles(6, &s).unwrap(), p);
    }

    #[test]
    fn move_then_inverse_is_identity(t in tuple_strategy(4, 6), i in 1usize..6) {
        let forward = hurwitz_move(&t, i, MoveDirection::Forward).unwrap();
        let back = hurwitz_move(&forward, i, MoveDirection::Inverse).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn move_word_and_reversal_cancel(
        t in tuple_strategy(4, 6),
        word in proptest::collection::vec((1usize..6, proptest::bool::ANY), 0..25),
    ) {
        let moves: Vec<(usize, MoveDirection)> = word
            .iter()
            .map(|&(i, f)| (i, if f { MoveDirection::Forward } else { MoveDirection::Inverse }))
            .collect();
        let reversal: Vec<(usize, MoveDirection)> = moves
            .iter()
            .rev()
            .map(|&(i, d)| {
                (
                    i,
                    match d {
                        MoveDirection::Forward => MoveDirection::Inverse,
                        MoveDirection::Inverse => MoveDirection::Forward,
                    },
                )
            })
            .collect();
        let there = replay_sequence(&t, &moves).unwrap();
        let back = replay_sequence(&there, &reversal).unwrap();
        prop_assert_eq!(back, t);
    }
}

fn symbol_strategy(n: usize) -> impl Strategy<Value = KSymbol> {
    let taus = proptest::collection::vec(-2i32..=2, n - 1);
    (0usize..3, 1usize..=4, taus, proptest::bool::ANY).prop_map(move |(kind, k, taus, eps)| {
        let c = Translation::from_parts(taus, eps);
        match kind {
            0 => KSymbol::G { k, c },
            1 => KSymbol::K { c },
            _ => KSymbol::A {
                k: 2 * (k / 2) + 1,
                c,
            },
        }
    })
}

fn vector_strategy(n: usize) -> impl Strategy<Value = KSymbolVector> {
    proptest::collection::vec((symbol_strategy(n), -9i64..=9), 0..8).prop_map(|terms| {
        let mut v = KSymbolVector::new();
        for (sym, c) in terms {
            v.add_term(sym, BigRational::from_integer(c.into()));
        }
        v
    })
}

proptest! {
    #[test]
    fn reduce_is_linear(v in vector_strategy(3), w in vector_strategy(3), a in -5i64..=5, b in -5i64..=5) {
        let a = BigRational::from_integer(a.into());
        let b = BigRational::from_integer(b.into());
        let mut combo = KSymbolVector::new();
        combo.add_scaled(&v, &a);
        combo.add_scaled(&w, &b);
        let mut expect = KSymbolVector::new();
        expect.add_scaled(&reduce(&v), &a);
        expect.add_scaled(&reduce(&w), &b);
        prop_assert_eq!(reduce(&combo), expect);
    }

    #[test]
    fn reduce_is_idempotent(v in vector_strategy(4)) {
        let r = reduce(&v);
        prop_assert_eq!(reduce(&r), r.clone());
        // no G symbols remain, eps never stored on residuals or K parts
        for (sym, coef) in r.terms() {
            prop_assert!(!coef.is_zero());
            match sym {
                KSymbol::G { .. } => prop_assert!(false, "G symbol after reduce"),
                KSymbol::K { c } | KSymbol::A { c, .. } => {
                    prop_assert!(!c.has_eps());
                }
            }
        }
    }
}
