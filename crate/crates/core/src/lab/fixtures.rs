//! Hand transcriptions of the small example automata. States are numbered
//! from 0; the comment on each builder maps the drawn labels to ids.

use std::collections::BTreeSet;

use crate::acceptance::{validate, Acceptance, Acceptor};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::structure::{PartialStructure, StateId, StateSet, Transition, TransitionSet};

pub const FIXTURE_NAMES: &[&str] = &[
    "fig2_B",
    "fig2_C",
    "fig2_M",
    "fig2_P",
    "fig2_T",
    "fig3_M",
    "fig3_P",
    "fig3_B",
    "fig3_C",
    "fig3_Mprime",
    "fig3_T",
    "fig5_Bbad",
    "fig5_Cbad",
    "fig5_Dbad",
    "fig6_B1",
    "fig6_B2",
    "fig6_BC",
    "fig6_P",
    "fig7_M1",
    "fig7_M2",
    "fig7_M3",
    "fig7_P1",
    "fig7_P2",
    "fig7_C1",
    "fig7_C2",
    "fig7_bowtie",
    "L1",
    "L2",
    "aab",
    "fgaxa",
];

/// Each label character is one symbol.
fn partial(symbols: &str, states: usize, edges: &[(StateId, &str, StateId)]) -> PartialStructure {
    let mut p = PartialStructure::new(
        Alphabet::chars(symbols).expect("fixture alphabet"),
        states,
        0,
    );
    for &(from, label, to) in edges {
        for c in label.chars() {
            p.add(from, &c.to_string(), to).expect("fixture symbol");
        }
    }
    p
}

fn set(states: &[StateId]) -> StateSet {
    states.iter().copied().collect()
}

fn table(sets: &[&[StateId]]) -> BTreeSet<StateSet> {
    sets.iter().map(|s| set(s)).collect()
}

pub fn fixture(name: &str) -> Result<Acceptor> {
    match name {
        // 0 = ab (initial), 1 = ε, 2 = a
        "fig2_B" => validate(
            partial(
                "abc",
                3,
                &[
                    (1, "a", 2),
                    (1, "bc", 1),
                    (2, "ac", 2),
                    (2, "b", 0),
                    (0, "abc", 1),
                ],
            ),
            Acceptance::Buchi(set(&[0])),
        ),
        // 0 = 1, 1 = 2
        "fig2_C" => validate(
            partial(
                "ab",
                2,
                &[(0, "a", 0), (0, "b", 1), (1, "b", 1), (1, "a", 0)],
            ),
            Acceptance::CoBuchi(set(&[0])),
        ),
        "fig2_M" => validate(
            partial(
                "ab",
                2,
                &[(0, "b", 0), (0, "a", 1), (1, "b", 1), (1, "a", 0)],
            ),
            Acceptance::MullerStates(table(&[&[0], &[1]])),
        ),
        // 0..3 = 1..4
        "fig2_P" => validate(
            partial(
                "ab",
                4,
                &[
                    (0, "a", 0),
                    (0, "b", 1),
                    (1, "a", 0),
                    (1, "b", 2),
                    (2, "a", 0),
                    (2, "b", 3),
                    (3, "ab", 3),
                ],
            ),
            Acceptance::parity_from(&[2, 1, 0, 0]),
        ),
        "fig2_T" => validate(
            partial("ab", 1, &[(0, "ab", 0)]),
            Acceptance::MullerTransitions(BTreeSet::from([TransitionSet::from([
                Transition::new(0, 0, 0),
            ])])),
        ),
        // 0 = λ, 1 = 0, 2 = 1
        "fig3_M" => validate(fig3_mp(), Acceptance::MullerStates(table(&[&[0, 2]]))),
        "fig3_P" => validate(fig3_mp(), Acceptance::parity_from(&[1, 0, 2])),
        "fig3_B" => validate(fig3_bc(), Acceptance::Buchi(set(&[0]))),
        "fig3_C" => validate(fig3_bc(), Acceptance::CoBuchi(set(&[0]))),
        // 0..2 = 1..3
        "fig3_Mprime" => validate(
            partial(
                "abc",
                3,
                &[
                    (0, "a", 0),
                    (0, "b", 1),
                    (0, "c", 2),
                    (1, "b", 1),
                    (1, "c", 0),
                    (1, "a", 2),
                    (2, "abc", 2),
                ],
            ),
            Acceptance::MullerStates(table(&[&[0], &[1]])),
        ),
        "fig3_T" => validate(
            partial("ab", 1, &[(0, "ab", 0)]),
            Acceptance::MullerTransitions(BTreeSet::from([
                TransitionSet::from([Transition::new(0, 0, 0)]),
                TransitionSet::from([Transition::new(0, 1, 0)]),
            ])),
        ),
        // 0 = λ, 1..3 = 0..2
        "fig5_Bbad" => validate(
            partial(
                "012",
                4,
                &[
                    (0, "0", 1),
                    (0, "1", 2),
                    (0, "2", 3),
                    (1, "012", 1),
                    (2, "1", 0),
                    (2, "02", 2),
                    (3, "2", 0),
                    (3, "01", 3),
                ],
            ),
            Acceptance::Buchi(set(&[0])),
        ),
        // 0 = λ, 1..4 = 0..3
        "fig5_Cbad" => validate(
            partial(
                "0123",
                5,
                &[
                    (0, "0", 1),
                    (0, "1", 2),
                    (0, "2", 3),
                    (0, "3", 0),
                    (1, "0123", 1),
                    (2, "02", 2),
                    (2, "1", 0),
                    (2, "3", 4),
                    (3, "013", 3),
                    (3, "2", 0),
                    (4, "012", 4),
                    (4, "3", 2),
                ],
            ),
            Acceptance::CoBuchi(set(&[1, 4])),
        ),
        // 0 = λ, 1..5 = 0..4
        "fig5_Dbad" => validate(
            partial(
                "01234",
                6,
                &[
                    (0, "0", 1),
                    (0, "1", 2),
                    (0, "2", 3),
                    (0, "34", 0),
                    (1, "01234", 1),
                    (2, "02", 2),
                    (2, "1", 0),
                    (2, "3", 4),
                    (2, "4", 5),
                    (3, "013", 3),
                    (3, "2", 0),
                    (3, "4", 1),
                    (4, "0123", 4),
                    (4, "4", 5),
                    (5, "01234", 5),
                ],
            ),
            Acceptance::Buchi(set(&[0, 2, 3, 5])),
        ),
        "fig6_B1" => validate(
            partial(
                "ab",
                3,
                &[
                    (0, "a", 1),
                    (0, "b", 2),
                    (1, "a", 1),
                    (1, "b", 0),
                    (2, "a", 0),
                    (2, "b", 2),
                ],
            ),
            Acceptance::Buchi(set(&[2])),
        ),
        "fig6_B2" => validate(
            partial(
                "ab",
                3,
                &[
                    (0, "b", 0),
                    (0, "a", 2),
                    (2, "b", 2),
                    (2, "a", 1),
                    (1, "a", 1),
                    (1, "b", 0),
                ],
            ),
            Acceptance::Buchi(set(&[2])),
        ),
        // sink is state 3
        "fig6_BC" => validate(
            partial(
                "ab",
                3,
                &[(0, "a", 1), (0, "b", 2), (1, "a", 0), (2, "b", 0)],
            )
            .complete_with_sink(),
            Acceptance::Buchi(set(&[2])),
        ),
        // 0..3 = 1..4, sink is state 4
        "fig6_P" => validate(
            partial(
                "abc",
                4,
                &[
                    (0, "ac", 0),
                    (0, "b", 1),
                    (1, "bc", 0),
                    (1, "a", 2),
                    (2, "a", 3),
                    (3, "c", 2),
                ],
            )
            .complete_with_sink(),
            Acceptance::Buchi(set(&[2, 3])),
        ),
        "fig7_M1" => validate(fig7(), Acceptance::MullerStates(table(&[&[0]]))),
        "fig7_M2" => validate(fig7(), Acceptance::MullerStates(table(&[&[1]]))),
        "fig7_M3" => validate(fig7(), Acceptance::MullerStates(table(&[&[0], &[1]]))),
        "fig7_P1" => validate(fig7(), Acceptance::parity_from(&[1, 2])),
        "fig7_P2" => validate(fig7(), Acceptance::parity_from(&[2, 1])),
        "fig7_C1" => validate(fig7(), Acceptance::CoBuchi(set(&[1]))),
        "fig7_C2" => validate(fig7(), Acceptance::CoBuchi(set(&[0]))),
        // sink is state 5
        "fig7_bowtie" => validate(
            partial(
                "ab",
                5,
                &[
                    (0, "a", 1),
                    (1, "b", 2),
                    (2, "a", 0),
                    (0, "b", 3),
                    (3, "a", 4),
                    (4, "b", 0),
                ],
            )
            .complete_with_sink(),
            Acceptance::Buchi(set(&[0])),
        ),
        // 0 = nothing read, 1 = only a, 2 = only b, 3 / 4 = both seen, last a / last b
        "L1" => validate(
            partial(
                "ab",
                5,
                &[
                    (0, "a", 1),
                    (0, "b", 2),
                    (1, "a", 1),
                    (1, "b", 4),
                    (2, "b", 2),
                    (2, "a", 3),
                    (3, "a", 3),
                    (3, "b", 4),
                    (4, "a", 3),
                    (4, "b", 4),
                ],
            ),
            Acceptance::MullerStates(table(&[&[3], &[4]])),
        ),
        // 1 / 2 = last letter a / b
        "L2" => validate(
            partial(
                "ab",
                3,
                &[
                    (0, "a", 1),
                    (0, "b", 2),
                    (1, "a", 1),
                    (1, "b", 2),
                    (2, "a", 1),
                    (2, "b", 2),
                ],
            ),
            Acceptance::MullerStates(table(&[&[1], &[2]])),
        ),
        // 0 / 1 = even / odd number of a's, 2 = reading b's, 3 = sink
        "aab" => validate(
            partial(
                "ab",
                4,
                &[
                    (0, "a", 1),
                    (1, "a", 0),
                    (0, "b", 2),
                    (1, "b", 3),
                    (2, "b", 2),
                    (2, "a", 3),
                    (3, "ab", 3),
                ],
            ),
            Acceptance::Buchi(set(&[2])),
        ),
        // 0 = after a (or start), 1 = after a single b, 2 = after bb
        "fgaxa" => validate(
            partial(
                "ab",
                3,
                &[
                    (0, "a", 0),
                    (0, "b", 1),
                    (1, "a", 0),
                    (1, "b", 2),
                    (2, "a", 0),
                    (2, "b", 2),
                ],
            ),
            Acceptance::CoBuchi(set(&[2])),
        ),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn fig3_mp() -> PartialStructure {
    partial(
        "01",
        3,
        &[
            (0, "0", 1),
            (0, "1", 2),
            (1, "01", 0),
            (2, "0", 2),
            (2, "1", 0),
        ],
    )
}

fn fig3_bc() -> PartialStructure {
    partial(
        "abc",
        4,
        &[
            (0, "abc", 1),
            (1, "a", 2),
            (1, "bc", 1),
            (2, "a", 2),
            (2, "b", 3),
            (2, "c", 1),
            (3, "a", 1),
            (3, "b", 3),
            (3, "c", 0),
        ],
    )
}

fn fig7() -> PartialStructure {
    partial(
        "abc",
        2,
        &[(0, "bc", 0), (0, "a", 1), (1, "ac", 1), (1, "b", 0)],
    )
}
