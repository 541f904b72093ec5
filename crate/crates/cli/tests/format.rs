use pnasync::format::{parse, parse_builder, serialize, FormatError, NetDocument};
use pnasync_core::corpus::{self, builtin_corpus};
use pnasync_core::transform::{asymm_async, enumerate_priorities, fully_async, symm_async};
use pnasync_core::{enumerate, Net};

type Case = (&'static str, fn(&FormatError) -> bool);

fn round_trip(name: &str, net: &Net) {
    let doc = NetDocument { name: name.to_string(), net: net.clone() };
    let text = serialize(&doc);
    let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
    assert_eq!(back, doc, "{name}");
    assert_eq!(serialize(&back), text, "{name}: serialization is not canonical");
}

#[test]
fn corpus_and_implementations_round_trip() {
    for e in builtin_corpus() {
        round_trip(e.name, &e.net);
        if !e.net.is_plain() {
            continue;
        }
        round_trip("fi", fully_async(&e.net).unwrap().net());
        round_trip("si", symm_async(&e.net).unwrap().net());
        for g in enumerate_priorities(&e.net, 10_000).unwrap() {
            round_trip("ai", asymm_async(&e.net, &g).unwrap().net());
        }
    }
}

#[test]
fn enumerated_nets_round_trip() {
    for net in enumerate::exhaustive(2, 2).chain(enumerate::sample(4, 4, 3, 200)) {
        round_trip("n", &net);
    }
}

#[test]
fn parses_fig2_text() {
    let doc = parse("net fig2\nplace p1 marked\ntrans a\ntrans b\narc p1 a\narc p1 b").unwrap();
    assert_eq!(doc.name, "fig2");
    assert_eq!(doc.net, corpus::fig2());
}

#[test]
fn fi_output_uses_derived_names() {
    let fi = fully_async(&corpus::fig2()).unwrap().into_net();
    let text = serialize(&NetDocument { name: "fig2_fi".into(), net: fi });
    assert!(text.contains("place b.p1.a\n"));
    assert!(text.contains("trans u.a.p1 silent\n"));
}

#[test]
fn comments_blank_lines_and_forward_arcs() {
    let text = "# header\n\nnet x # trailing\narc p t\nplace p marked\n  trans t\n";
    let doc = parse(text).unwrap();
    assert_eq!(doc.net.place_count(), 1);
    assert_eq!(doc.net.transition_count(), 1);
}

#[test]
fn rejects_malformed_documents() {
    let cases: &[Case] = &[
        ("net n\ntrans a\ntrans b\narc a b", |e| matches!(e, FormatError::SameKindArc { .. })),
        ("net n\nplace p\nplace q\narc p q", |e| matches!(e, FormatError::SameKindArc { .. })),
        ("net n\nplace p\ntrans p", |e| matches!(e, FormatError::DuplicateId { line: 3, first: 2, .. })),
        ("net n\nplace p\narc p t", |e| matches!(e, FormatError::UndeclaredEndpoint { .. })),
        ("net n\nplace p\ntrans t marked\narc p t", |e| matches!(e, FormatError::MarkedTransition { .. })),
        ("place p", |e| matches!(e, FormatError::Syntax { line: 1, .. })),
        ("", |e| matches!(e, FormatError::MissingHeader)),
        ("net n\nnet m", |e| matches!(e, FormatError::Syntax { line: 2, .. })),
        ("net n\nplace p-q", |e| matches!(e, FormatError::Syntax { .. })),
        ("net n\nplace x.y", |e| matches!(e, FormatError::Syntax { .. })),
        ("net n\nbox p", |e| matches!(e, FormatError::Syntax { .. })),
        ("net n\nplace p\ntrans t", |e| matches!(e, FormatError::Invalid(_))),
    ];
    for (text, expected) in cases {
        let err = parse(text).expect_err(text);
        assert!(expected(&err), "{text:?} gave {err:?}");
    }
}

#[test]
fn builder_keeps_semantic_errors_for_validation() {
    let (name, b) = parse_builder("net n\nplace p\ntrans t").unwrap();
    assert_eq!(name, "n");
    assert!(b.validate(false).has_errors());
}
