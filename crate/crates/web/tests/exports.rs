use serde_json::Value;
use twobridge_web::{breakdown, even_expansion, signature_report};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn signature_of_fraction_and_list() {
    let v = parse(signature_report("23/10").unwrap());
    assert_eq!(v["sigma"], "-2");
    assert_eq!(v["oracle"], "-2");
    let v = parse(signature_report("[2,-3,3]").unwrap());
    assert_eq!((v["sigmaG"].as_str(), v["mu"].as_str()), (Some("-4"), Some("-2")));
    let v = parse(signature_report("7, -5, 5").unwrap());
    assert_eq!(v["sigma"], "6");
}

#[test]
fn oracle_is_skipped_for_large_p() {
    let v = parse(signature_report("100000000000000000001/3").unwrap());
    assert!(v["oracle"].is_null());
}

#[test]
fn even_expansion_rows() {
    let v = parse(even_expansion("137/37").unwrap());
    assert_eq!(v["cf"], "[3,-2,-2,-4,-4]");
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["rows"][4], serde_json::json!(["5", "-4", "1", "0"]));
    assert!(even_expansion("3,1,3").is_err());
}

#[test]
fn breakdown_of_expansion() {
    let v = parse(breakdown("3,-3,-5").unwrap());
    assert_eq!(v["mu"], "-1");
    assert_eq!(v["regions"][0]["type"], "II");
    let v = parse(breakdown("23/10").unwrap());
    assert_eq!(v["det"], "23");
    assert_eq!(v["sigma"], "-2");
}

#[test]
fn errors_are_messages() {
    assert!(signature_report("2").unwrap_err().contains("not a knot"));
    assert!(signature_report("1,0,1").unwrap_err().contains("zero"));
    assert!(signature_report("x/3").unwrap_err().contains("malformed"));
}
