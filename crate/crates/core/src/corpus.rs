//! The figure nets with the class memberships they are known to have.

use alloc::vec;
use alloc::vec::Vec;

use crate::classify::{Class, Verdict};
use crate::net::{Net, NetBuilder};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    /// Short lowercase name, used as the `net` name when serialized.
    pub name: &'static str,
    pub net: Net,
    pub expected: Vec<(Class, Verdict)>,
}

impl CorpusEntry {
    pub fn expected(&self, class: Class) -> Option<Verdict> {
        self.expected.iter().find(|(c, _)| *c == class).map(|(_, v)| *v)
    }
}

/// One place marked, two transitions competing for it.
pub fn fig2() -> Net {
    NetBuilder::new()
        .marked("p1")
        .trans("a")
        .trans("b")
        .arc("p1", "a")
        .arc("p1", "b")
        .build()
        .expect("fig2")
}

/// `a` competes with the binary-preset `b` for `p1`; `p2` stays empty.
pub fn fig3() -> Net {
    NetBuilder::new()
        .marked("p1")
        .place("p2")
        .trans("a")
        .trans("b")
        .arc("p1", "a")
        .arc("p1", "b")
        .arc("p2", "b")
        .build()
        .expect("fig3")
}

pub fn fig4a() -> Net {
    NetBuilder::new()
        .place("p1")
        .place("p2")
        .trans("a")
        .trans("b")
        .arc("p1", "a")
        .arc("p1", "b")
        .arc("p2", "b")
        .build()
        .expect("fig4a")
}

pub fn fig4b() -> Net {
    NetBuilder::new()
        .marked("p1")
        .marked("p2")
        .trans("a")
        .trans("b")
        .arc("p1", "a")
        .arc("p2", "a")
        .arc("p1", "b")
        .arc("p2", "b")
        .build()
        .expect("fig4b")
}

pub fn fig4c() -> Net {
    NetBuilder::new()
        .marked("p")
        .marked("q")
        .trans("a")
        .trans("b")
        .trans("c")
        .arc("p", "a")
        .arc("a", "p")
        .arc("p", "b")
        .arc("q", "b")
        .arc("q", "c")
        .arc("c", "q")
        .build()
        .expect("fig4c")
}

/// Free-choice counterpart of [`fig4b`]: a silent transition gathers both
/// tokens into one place.
pub fn fig5a() -> Net {
    NetBuilder::new()
        .marked("p1")
        .marked("p2")
        .place("p3")
        .silent("tau")
        .trans("a")
        .trans("b")
        .arc("p1", "tau")
        .arc("p2", "tau")
        .arc("tau", "p3")
        .arc("p3", "a")
        .arc("p3", "b")
        .build()
        .expect("fig5a")
}

/// Extended-free-choice counterpart of [`fig4c`].
pub fn fig5b() -> Net {
    NetBuilder::new()
        .marked("p")
        .marked("q")
        .trans("a")
        .trans("b")
        .trans("c")
        .arc("p", "a")
        .arc("a", "p")
        .arc("q", "a")
        .arc("a", "q")
        .arc("p", "b")
        .arc("q", "b")
        .arc("p", "c")
        .arc("c", "p")
        .arc("q", "c")
        .arc("c", "q")
        .build()
        .expect("fig5b")
}

/// The running example for asymmetric implementations: `b` has three
/// preplaces.
pub fn fig7() -> Net {
    NetBuilder::new()
        .marked("p")
        .marked("q")
        .marked("s")
        .place("p4")
        .trans("a")
        .trans("b")
        .arc("p", "a")
        .arc("p", "b")
        .arc("q", "b")
        .arc("s", "b")
        .arc("b", "p4")
        .build()
        .expect("fig7")
}

fn fig8(x_marks_r: bool) -> Net {
    let mut b = NetBuilder::new()
        .place("p")
        .place("q")
        .place("r")
        .place("s")
        .marked("i")
        .trans("t")
        .trans("u")
        .trans("v")
        .trans("x")
        .trans("y")
        .arc("x", "p")
        .arc("x", "q")
        .arc("y", "q")
        .arc("y", "r")
        .arc("y", "s")
        .arc("p", "t")
        .arc("q", "t")
        .arc("q", "u")
        .arc("r", "u")
        .arc("s", "u")
        .arc("s", "v")
        .arc("i", "x")
        .arc("i", "y");
    if x_marks_r {
        b = b.arc("x", "r");
    }
    b.build().expect("fig8")
}

/// Border-reachable M, outside AA(B).
pub fn fig8l() -> Net {
    fig8(true)
}

/// Border-reachable M, inside AA(B).
pub fn fig8r() -> Net {
    fig8(false)
}

/// Unmarked, not extended simple, trivially in AA(B).
pub fn fig9() -> Net {
    NetBuilder::new()
        .place("p1")
        .place("p2")
        .trans("a")
        .trans("b")
        .trans("c")
        .arc("p1", "a")
        .arc("p1", "b")
        .arc("p2", "b")
        .arc("p2", "c")
        .build()
        .expect("fig9")
}

/// Two instances choosing between a message exchange and local actions.
/// `msend`/`mrecv` are the send and receive events of message `m`.
pub fn msc() -> Net {
    NetBuilder::new()
        .marked("p1")
        .marked("p2")
        .place("p3")
        .place("p4")
        .place("p5")
        .trans("a")
        .trans("msend")
        .trans("mrecv")
        .trans("b")
        .arc("p1", "a")
        .arc("p1", "msend")
        .arc("p2", "b")
        .arc("p2", "mrecv")
        .arc("msend", "p3")
        .arc("p3", "mrecv")
        .arc("a", "p4")
        .arc("msend", "p4")
        .arc("b", "p5")
        .arc("mrecv", "p5")
        .build()
        .expect("msc")
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use Class::*;
    use Verdict::{In, Out};
    let entry = |id, name, net, expected| CorpusEntry { id, name, net, expected };
    vec![
        entry("NET_FIG2", "fig2", fig2(), vec![(FAB, Out), (SAB, In)]),
        entry("NET_FIG3", "fig3", fig3(), vec![(FAB, Out), (SAB, Out), (AAB, In)]),
        entry(
            "NET_FIG4A",
            "fig4a",
            fig4a(),
            vec![(FC, Out), (EFC, Out), (SAB, In), (BFC, In), (SPL, In)],
        ),
        entry(
            "NET_FIG4B",
            "fig4b",
            fig4b(),
            vec![
                (FC, Out),
                (EFC, In),
                (SAB, Out),
                (BFC, In),
                (SPL, Out),
                (ESPL, In),
                (AAB, Out),
            ],
        ),
        entry(
            "NET_FIG4C",
            "fig4c",
            fig4c(),
            vec![(FC, Out), (EFC, Out), (SAB, Out), (BFC, In)],
        ),
        entry("NET_FIG5A", "fig5a", fig5a(), vec![]),
        entry("NET_FIG5B", "fig5b", fig5b(), vec![(EFC, In)]),
        entry("NET_FIG7", "fig7", fig7(), vec![]),
        entry("NET_FIG8L", "fig8l", fig8l(), vec![(AAB, Out)]),
        entry("NET_FIG8R", "fig8r", fig8r(), vec![(AAB, In)]),
        entry(
            "NET_FIG9",
            "fig9",
            fig9(),
            vec![(AAB, In), (ESPL, Out), (SPL, Out)],
        ),
        entry("NET_MSC", "msc", msc(), vec![(SAB, Out), (AAB, In)]),
    ]
}

/// Looks an entry up by id (`NET_FIG2`) or short name (`fig2`), ignoring case.
pub fn lookup(key: &str) -> Option<CorpusEntry> {
    builtin_corpus()
        .into_iter()
        .find(|e| e.id.eq_ignore_ascii_case(key) || e.name.eq_ignore_ascii_case(key))
}
