use polyalg_cli::corpus::CORPUS;
use polyalg_cli::parse;
use polyalg_cli::selftest::round_trip;
use proptest::prelude::*;

#[test]
fn corpus_round_trips() {
    assert!(CORPUS.len() >= 10);
    for (file, src) in CORPUS {
        round_trip(src).unwrap_or_else(|e| panic!("{file}: {e}"));
    }
}

#[test]
fn corpus_covers_builtins_and_paper_fusions() {
    let all: String = CORPUS.iter().map(|(_, s)| parse(s).unwrap().to_string()).collect();
    for name in ["boson", "su2", "su11", "higgs", "quadratic"] {
        assert!(all.contains(&format!("show {name};")), "{name}");
    }
    for fusion in [
        "fuse(J, su2, boson)",
        "fuse(J, quadratic, boson)",
        "fuse(J, su2, su11)",
        "fuse(J, su11, su11)",
        "fuse(J, boson, boson)",
        "fuse(K, boson, boson)",
    ] {
        assert!(all.contains(fusion), "{fusion}");
    }
}

#[test]
fn layout_and_comments_do_not_matter() {
    let a = "algebra h(h,a){phi=4*h*P0^3+2*a*P0;}# trailing\nlet c=fuse(K,h,su2);verify c with(j=1/2,mu=0.5);";
    let b = "# header\nalgebra h ( h , a ) {\n  phi = 4 * h * P0 ^ 3 + 2 * a * P0 ;\n}\nlet c = fuse ( K , h , su2 ) ;\nverify c with ( j = 1/2 , mu = 1/2 ) ;\n";
    assert_eq!(parse(a).unwrap().kinds(), parse(b).unwrap().kinds());
    round_trip(a).unwrap();
}

fn term() -> impl Strategy<Value = String> {
    (
        0u32..=9,
        1u32..=6,
        0u32..=4,
        proptest::option::of(prop_oneof![Just("a"), Just("b"), Just("a^2")]),
    )
        .prop_map(|(n, d, p, sym)| {
            let mut t = format!("{n}/{d}");
            if let Some(s) = sym {
                t += &format!("*{s}");
            }
            match p {
                0 => t,
                1 => t + "*P0",
                _ => format!("{t}*P0^{p}"),
            }
        })
}

fn poly() -> impl Strategy<Value = String> {
    (
        any::<bool>(),
        proptest::collection::vec((any::<bool>(), term()), 1..5),
    )
        .prop_map(|(lead, ts)| {
            let mut out = if lead { "-".to_string() } else { String::new() };
            for (i, (minus, t)) in ts.into_iter().enumerate() {
                if i > 0 {
                    out += if minus { " - " } else { " + " };
                }
                out += &t;
            }
            out
        })
}

fn expr(depth: u32) -> BoxedStrategy<String> {
    let leaf = prop_oneof![
        Just("boson".to_string()),
        Just("su2".to_string()),
        Just("su11".to_string()),
        Just("higgs".to_string()),
        Just("quadratic".to_string()),
        Just("user".to_string()),
    ];
    if depth == 0 {
        return leaf.boxed();
    }
    prop_oneof![
        2 => leaf,
        1 => (prop_oneof![Just("J"), Just("K")], expr(depth - 1), expr(depth - 1))
            .prop_map(|(k, l, r)| format!("fuse({k}, {l}, {r})")),
        1 => (expr(depth - 1), -5i32..5).prop_map(|(e, s)| format!("recenter({e}, {s}/2)")),
        1 => (expr(depth - 1), -5i32..5).prop_map(|(e, s)| format!("specialize({e}, Lambda = {s})")),
    ]
    .boxed()
}

fn statement() -> impl Strategy<Value = String> {
    prop_oneof![
        expr(2).prop_map(|e| format!("show {e};")),
        expr(2).prop_map(|e| format!("g {e};")),
        expr(2).prop_map(|e| format!("{e};")),
        (expr(2), poly()).prop_map(|(e, p)| format!("expect {e} = {p};")),
        (expr(2), 1u32..20, 1u32..4).prop_map(|(e, c, j)| format!("verify {e} with (cutoff = {c}, j = {j}/2);")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_programs_round_trip(
        phi in poly(),
        stmts in proptest::collection::vec(statement(), 0..6),
    ) {
        let src = format!("algebra user(a, b) {{ phi = {phi}; }}\n{}", stmts.join("\n"));
        prop_assert!(parse(&src).is_ok(), "{}", src);
        prop_assert_eq!(round_trip(&src), Ok(()));
    }
}
