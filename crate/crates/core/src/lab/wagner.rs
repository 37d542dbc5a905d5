//! The family `D^p_{n,m}`: rows `0..=m` of states `0^ℓ..n^ℓ` over `{a, b}`.
//! `b` walks right along a row and from `n^ℓ` down to `0^(ℓ+1)`; `a` returns
//! to the start of the row; `n^m` is a sink. The loop `{0^ℓ..j^ℓ}` is
//! accepting iff `j` and `ℓ` have the same parity (flipped for `-`).

use std::collections::BTreeSet;

use crate::acceptance::{Acceptance, Acceptor};
use crate::alphabet::Alphabet;
use crate::loops::Polarity;
use crate::structure::{StateId, StateSet, TransitionStructure};

/// Id of state `k^ℓ`.
pub fn wagner_state(n: usize, k: usize, row: usize) -> StateId {
    row * (n + 1) + k
}

pub fn wagner_family(n: usize, m: usize, polarity: Polarity) -> Acceptor {
    match polarity {
        Polarity::Plus => single(n, m, true),
        Polarity::Minus => single(n, m, false),
        Polarity::Both => both(n, m),
    }
}

fn rows(n: usize, m: usize, plus: bool, offset: usize) -> (Vec<Vec<StateId>>, BTreeSet<StateSet>) {
    let id = |k, row| offset + wagner_state(n, k, row);
    let mut delta = Vec::new();
    let mut table = BTreeSet::new();
    for row in 0..=m {
        for k in 0..=n {
            let b = if k < n {
                id(k + 1, row)
            } else if row < m {
                id(0, row + 1)
            } else {
                id(n, m)
            };
            let a = if k == n && row == m {
                id(n, m)
            } else {
                id(0, row)
            };
            delta.push(vec![a, b]);
        }
        let last = if row == m { n } else { n + 1 };
        for j in 0..last {
            if (j % 2 == row % 2) == plus {
                table.insert((0..=j).map(|k| id(k, row)).collect());
            }
        }
    }
    if (n % 2 == m % 2) == plus {
        table.insert(StateSet::from([id(n, m)]));
    }
    (delta, table)
}

fn single(n: usize, m: usize, plus: bool) -> Acceptor {
    let (delta, table) = rows(n, m, plus, 0);
    let structure = TransitionStructure::from_table(Alphabet::chars("ab").unwrap(), 0, delta)
        .expect("well formed");
    Acceptor::new(structure, Acceptance::MullerStates(table)).expect("well formed")
}

/// Fresh initial state; `a` enters the `+` copy and `b` the `-` copy.
fn both(n: usize, m: usize) -> Acceptor {
    let size = (n + 1) * (m + 1);
    let (plus_delta, plus_table) = rows(n, m, true, 1);
    let (minus_delta, minus_table) = rows(n, m, false, 1 + size);
    let mut delta = vec![vec![1, 1 + size]];
    delta.extend(plus_delta);
    delta.extend(minus_delta);
    let structure = TransitionStructure::from_table(Alphabet::chars("ab").unwrap(), 0, delta)
        .expect("well formed");
    let table = plus_table.into_iter().chain(minus_table).collect();
    Acceptor::new(structure, Acceptance::MullerStates(table)).expect("well formed")
}
