//! The line-oriented acceptor file format.
//!
//! ```text
//! oaf 1
//! type tmuller
//! alphabet a b
//! states 1
//! initial 0
//! trans 0 a 0
//! trans 0 b 0
//! acc tset 0 a 0
//! ```
//!
//! One directive per line, `#` starts a comment. Acceptance lines are
//! `acc states <q>...` (buchi, cobuchi), `acc color <q> <c>` (parity),
//! `acc set <q>...` (muller) and `acc tset <q> <sym> <q'> [; ...]`
//! (tmuller). `complete sink` routes missing transitions to a fresh sink.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::acceptance::{validate, Acceptance, AcceptanceKind, Acceptor};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::structure::{PartialStructure, StateId, StateSet, Transition, TransitionSet};

pub fn print_oaf(acceptor: &Acceptor) -> String {
    let s = acceptor.structure();
    let alphabet = s.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "oaf 1");
    let _ = writeln!(out, "type {}", acceptor.kind());
    let _ = writeln!(out, "alphabet {}", alphabet.symbols().join(" "));
    let _ = writeln!(out, "states {}", s.state_count());
    let _ = writeln!(out, "initial {}", s.initial());
    for q in 0..s.state_count() {
        for a in 0..s.symbol_count() {
            let _ = writeln!(out, "trans {q} {} {}", alphabet.symbol(a), s.step(q, a));
        }
    }
    let join = |set: &StateSet| set.iter().map(|q| format!(" {q}")).collect::<String>();
    match acceptor.acceptance() {
        Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
            let _ = writeln!(out, "acc states{}", join(f));
        }
        Acceptance::Parity(kappa) => {
            for (q, c) in kappa {
                let _ = writeln!(out, "acc color {q} {c}");
            }
        }
        Acceptance::MullerStates(table) => {
            for set in table {
                let _ = writeln!(out, "acc set{}", join(set));
            }
        }
        Acceptance::MullerTransitions(table) => {
            for set in table {
                let parts: Vec<String> = set
                    .iter()
                    .map(|t| format!("{} {} {}", t.from, alphabet.symbol(t.symbol), t.to))
                    .collect();
                let _ = writeln!(out, "acc tset {}", parts.join(" ; "));
            }
        }
    }
    out
}

#[derive(Default)]
struct Header {
    version: Option<usize>,
    kind: Option<AcceptanceKind>,
    alphabet: Option<Alphabet>,
    states: Option<usize>,
    initial: Option<StateId>,
    sink: bool,
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line, format!("duplicate {what} directive")));
    }
    *slot = Some(value);
    Ok(())
}

fn number<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {token:?}")))
}

fn exactly(args: &[&str], n: usize, line: usize, directive: &str) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::parse(
            line,
            format!("`{directive}` takes {n} argument(s), found {}", args.len()),
        ))
    }
}

pub fn parse_oaf(text: &str) -> Result<Acceptor> {
    let mut header = Header::default();
    let mut trans: Vec<(usize, StateId, String, StateId)> = Vec::new();
    let mut acc: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        if header.version.is_none() && directive != "oaf" {
            return Err(Error::parse(line, "file must start with `oaf 1`"));
        }
        match directive {
            "oaf" => {
                exactly(args, 1, line, "oaf")?;
                let v: usize = number(args[0], line, "version")?;
                if v != 1 {
                    return Err(Error::parse(line, format!("unsupported version {v}")));
                }
                set_once(&mut header.version, v, line, "oaf")?;
            }
            "type" => {
                exactly(args, 1, line, "type")?;
                let kind = args[0].parse().map_err(|_| {
                    Error::parse(line, format!("unknown acceptance type {:?}", args[0]))
                })?;
                set_once(&mut header.kind, kind, line, "type")?;
            }
            "alphabet" => {
                let alphabet = Alphabet::new(args.iter().copied())
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                set_once(&mut header.alphabet, alphabet, line, "alphabet")?;
            }
            "states" => {
                exactly(args, 1, line, "states")?;
                set_once(
                    &mut header.states,
                    number(args[0], line, "state count")?,
                    line,
                    "states",
                )?;
            }
            "initial" => {
                exactly(args, 1, line, "initial")?;
                set_once(
                    &mut header.initial,
                    number(args[0], line, "state")?,
                    line,
                    "initial",
                )?;
            }
            "trans" => {
                exactly(args, 3, line, "trans")?;
                let from = number(args[0], line, "state")?;
                let to = number(args[2], line, "state")?;
                trans.push((line, from, args[1].to_string(), to));
            }
            "acc" => {
                let Some((&which, rest)) = args.split_first() else {
                    return Err(Error::parse(line, "`acc` needs a form"));
                };
                acc.push((
                    line,
                    which.to_string(),
                    rest.iter().map(|s| s.to_string()).collect(),
                ));
            }
            "complete" => {
                if args != ["sink"] {
                    return Err(Error::parse(line, "expected `complete sink`"));
                }
                header.sink = true;
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let eof = last + 1;
    let missing = |what: &str| Error::parse(eof, format!("missing `{what}` directive"));
    if header.version.is_none() {
        return Err(missing("oaf"));
    }
    let kind = header.kind.ok_or_else(|| missing("type"))?;
    let alphabet = header.alphabet.ok_or_else(|| missing("alphabet"))?;
    let states = header.states.ok_or_else(|| missing("states"))?;
    let initial = header.initial.ok_or_else(|| missing("initial"))?;

    let state = |q: StateId, line: usize| {
        if q < states {
            Ok(q)
        } else {
            Err(Error::parse(
                line,
                format!("state {q} out of range (states {states})"),
            ))
        }
    };
    let symbol = |token: &str, line: usize| {
        alphabet
            .id(token)
            .ok_or_else(|| Error::parse(line, format!("symbol {token:?} not in the alphabet")))
    };

    let mut partial = PartialStructure::new(alphabet.clone(), states, initial);
    for &(line, from, ref sym, to) in &trans {
        let (from, to, a) = (state(from, line)?, state(to, line)?, symbol(sym, line)?);
        match partial.delta[from][a] {
            Some(prev) if prev != to => {
                return Err(Error::parse(
                    line,
                    format!("second target for state {from} on {sym:?}"),
                ));
            }
            _ => {
                partial.set(from, a, to);
            }
        }
    }

    let expected = match kind {
        AcceptanceKind::Buchi | AcceptanceKind::CoBuchi => "states",
        AcceptanceKind::Parity => "color",
        AcceptanceKind::MullerStates => "set",
        AcceptanceKind::MullerTransitions => "tset",
    };
    let mut marked = StateSet::new();
    let mut colors = BTreeMap::new();
    let mut sets = BTreeSet::new();
    let mut tsets = BTreeSet::new();
    for (line, which, args) in &acc {
        let line = *line;
        if which != expected {
            return Err(Error::parse(
                line,
                format!("`acc {which}` does not fit type {kind}"),
            ));
        }
        match kind {
            AcceptanceKind::Buchi | AcceptanceKind::CoBuchi => {
                for a in args {
                    marked.insert(state(number(a, line, "state")?, line)?);
                }
            }
            AcceptanceKind::Parity => {
                exactly(
                    &args.iter().map(String::as_str).collect::<Vec<_>>(),
                    2,
                    line,
                    "acc color",
                )?;
                let q = state(number(&args[0], line, "state")?, line)?;
                let c: u32 = number(&args[1], line, "color")?;
                if colors.insert(q, c).is_some() {
                    return Err(Error::parse(line, format!("second color for state {q}")));
                }
            }
            AcceptanceKind::MullerStates => {
                let set = args
                    .iter()
                    .map(|a| state(number(a, line, "state")?, line))
                    .collect::<Result<StateSet>>()?;
                sets.insert(set);
            }
            AcceptanceKind::MullerTransitions => {
                let joined = args.join(" ");
                let mut set = TransitionSet::new();
                for part in joined.split(';') {
                    let t: Vec<&str> = part.split_whitespace().collect();
                    if t.len() != 3 {
                        return Err(Error::parse(
                            line,
                            format!("expected `<q> <sym> <q'>`, found {:?}", part.trim()),
                        ));
                    }
                    let from = state(number(t[0], line, "state")?, line)?;
                    let to = state(number(t[2], line, "state")?, line)?;
                    set.insert(Transition::new(from, symbol(t[1], line)?, to));
                }
                tsets.insert(set);
            }
        }
    }
    let acceptance = match kind {
        AcceptanceKind::Buchi => Acceptance::Buchi(marked),
        AcceptanceKind::CoBuchi => Acceptance::CoBuchi(marked),
        AcceptanceKind::Parity => Acceptance::Parity(colors),
        AcceptanceKind::MullerStates => Acceptance::MullerStates(sets),
        AcceptanceKind::MullerTransitions => Acceptance::MullerTransitions(tsets),
    };
    let mut acceptance = acceptance;
    if header.sink {
        partial = partial.complete_with_sink();
        if partial.state_count > states {
            // the added sink rejects under every acceptance type
            match &mut acceptance {
                Acceptance::CoBuchi(f) => {
                    f.insert(states);
                }
                Acceptance::Parity(colors) => {
                    colors.insert(states, 0);
                }
                _ => {}
            }
        }
    }
    validate(partial, acceptance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{fixture, FIXTURE_NAMES};
    use crate::lasso::LassoWord;

    #[test]
    fn fixtures_round_trip() {
        for name in FIXTURE_NAMES {
            let a = fixture(name).unwrap();
            let text = print_oaf(&a);
            assert_eq!(parse_oaf(&text).unwrap(), a, "{name}");
            assert_eq!(print_oaf(&parse_oaf(&text).unwrap()), text);
        }
    }

    #[test]
    fn transition_table_line() {
        assert!(print_oaf(&fixture("fig2_T").unwrap()).contains("acc tset 0 a 0\n"));
    }

    #[test]
    fn missing_initial() {
        let text = "oaf 1\ntype buchi\nalphabet a\nstates 1\ntrans 0 a 0\nacc states 0\n";
        assert!(matches!(parse_oaf(text), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn errors_carry_lines() {
        let text = "oaf 1\ntype buchi\nalphabet a\nstates 1\ninitial 0\ntrans 0 b 0\n";
        assert!(matches!(parse_oaf(text), Err(Error::Parse { line: 6, .. })));
        let text = "oaf 1\ntype buchi\nalphabet a\nstates 1\ninitial 0\ntrans 0 a 0\nacc set 0\n";
        assert!(matches!(parse_oaf(text), Err(Error::Parse { line: 7, .. })));
        assert!(matches!(
            parse_oaf("type buchi\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn incomplete_without_sink_fails_validation() {
        let text =
            "oaf 1\ntype buchi\nalphabet a b\nstates 1\ninitial 0\ntrans 0 a 0\nacc states 0\n";
        assert!(matches!(
            parse_oaf(text),
            Err(Error::IncompleteTransition(0, _))
        ));
        let with_sink = format!("{text}complete sink # b falls out\n");
        let a = parse_oaf(&with_sink).unwrap();
        assert_eq!(a.state_count(), 2);
        let co = with_sink
            .replace("type buchi", "type cobuchi")
            .replace("acc states 0", "acc states");
        let b = LassoWord::parse(a.structure().alphabet(), ":b").unwrap();
        assert!(!parse_oaf(&co).unwrap().accepts(&b).unwrap());
    }
}
