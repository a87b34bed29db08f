use tateforge::io::{canonical, parse_input, series_to_json, Input};
use tateforge::{Error, PadicElement, QpCtx, SeriesCtx};

const T2_MINUS_2: &str = r#"{"base":{"cap":16,"p":2,"ring":"Qp"},"coeffs":[[0,-2],[2,1]],"tail_exp":null}"#;

fn round_trip(text: &str) -> String {
    canonical(&parse_input(text).unwrap().to_json())
}

#[test]
fn t2_minus_2_round_trips_byte_identically() {
    assert_eq!(round_trip(T2_MINUS_2), T2_MINUS_2);
    let from_disk =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/inputs/t2_minus_2.json")).unwrap();
    assert_eq!(round_trip(&from_disk), from_disk.trim_end());
}

#[test]
fn constructed_series_serializes_canonically() {
    let ctx = SeriesCtx::<PadicElement>::new(QpCtx::new(2, 16).unwrap());
    let f = ctx.from_ints(&[-2, 0, 1]);
    assert_eq!(canonical(&series_to_json(&f)), T2_MINUS_2);
}

#[test]
fn other_encodings_round_trip() {
    let docs = [
        // low-precision and fractional p-adic coefficients
        r#"{"base":{"cap":16,"p":3,"ring":"Qp"},"coeffs":[[0,{"cap":10,"m":5,"s":0}],[1,{"cap":16,"m":7,"s":1}],[3,1]],"tail_exp":8}"#,
        r#"{"base":{"q":2,"ring":"PerfL","root_denom":3,"trunc":4},"coeffs":[[0,[["1/8",1],[2,1]]],[1,[[0,1]]]],"tail_exp":null}"#,
        r#"{"base":{"base":{"cap":12,"p":2,"ring":"Qp"},"max_degree":64,"ring":"Tate"},"coeffs":[[0,{"base":{"cap":12,"p":2,"ring":"Qp"},"coeffs":[[1,1]],"tail_exp":null}],[1,{"base":{"cap":12,"p":2,"ring":"Qp"},"coeffs":[[0,1]],"tail_exp":null}]],"tail_exp":null}"#,
        r#"{"base":{"cap":16,"p":3,"ring":"Qp"},"modulus":[1,-1,0,1]}"#,
    ];
    for doc in docs {
        let once = round_trip(doc);
        assert_eq!(round_trip(&once), once, "idempotent for {doc}");
    }
    for name in ["lambda.json", "tie.json"] {
        let text = std::fs::read_to_string(format!("{}/inputs/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert!(matches!(parse_input(&text).unwrap(), Input::Teich(..)));
        assert_eq!(round_trip(&text), text.trim_end());
    }
}

#[test]
fn rational_strings_are_accepted() {
    let doc = r#"{"base":{"cap":16,"p":3,"ring":"Qp"},"coeffs":[[0,"1/2"]],"tail_exp":null}"#;
    let Input::QpSeries(f) = parse_input(doc).unwrap() else {
        panic!("a Q_p series")
    };
    let two = PadicElement::from_i64(&f.series_ctx().base, 2);
    assert_eq!(
        tateforge::Coeff::mul(&f.coeffs()[0], &two),
        PadicElement::from_i64(&f.series_ctx().base, 1)
    );
}

fn parse_error_path(doc: &str) -> String {
    match parse_input(doc) {
        Err(Error::Parse { path, .. }) => path,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn malformed_documents_name_the_offending_field() {
    let base = r#""base":{"cap":16,"p":2,"ring":"Qp"}"#;
    assert_eq!(
        parse_error_path(&format!(r#"{{{base},"coeffs":[[-1,3]],"tail_exp":null}}"#)),
        "$.coeffs[0][0]"
    );
    assert_eq!(
        parse_error_path(&format!(r#"{{{base},"coeffs":[[0,1],["x",3]],"tail_exp":null}}"#)),
        "$.coeffs[1][0]"
    );
    assert_eq!(
        parse_error_path(r#"{"base":{"cap":16,"p":2,"ring":"Zp"},"coeffs":[],"tail_exp":null}"#),
        "$.base.ring"
    );
    assert!(parse_input("{").is_err());
    assert!(parse_input(r#"{"nothing":1}"#).is_err());
}
