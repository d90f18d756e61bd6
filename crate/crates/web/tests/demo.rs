use semipolar_web::Demo;
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn layout_covers_every_point() {
    let d = Demo::new(3, 2).unwrap();
    let l = parse(&d.layout());
    assert_eq!(l["size"], 243);
    assert_eq!(l["blocks"].as_u64().unwrap() * l["rows"].as_u64().unwrap() * l["cols"].as_u64().unwrap(), 243);
    assert_eq!(l["coords"].as_array().unwrap().len(), 243);
}

#[test]
fn joinable_set_is_a_hyperplane() {
    let d = Demo::new(3, 1).unwrap();
    for i in [0, 5, 26] {
        let j = parse(&d.joinable(i).unwrap());
        assert_eq!(j["members"].as_array().unwrap().len(), 9);
        assert_eq!(j["dim"], 2);
    }
    assert!(d.joinable(27).is_err());
}

#[test]
fn singular_lines_through_a_point() {
    let d = Demo::new(3, 2).unwrap();
    let v = parse(&d.singular_lines(7).unwrap());
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 40);
    assert!(lines.iter().all(|l| l["points"].as_array().unwrap().contains(&Value::from(7))));
}

#[test]
fn bisectors_of_a_vertical_pair() {
    let d = Demo::new(3, 1).unwrap();
    // Points 0 and 9 differ only in v.
    let v = parse(&d.bisectors(0, 9).unwrap());
    assert_eq!(v["t"]["classification"], "empty");
    assert_eq!(v["m"]["points"].as_array().unwrap().len(), 9);
    assert_eq!(v["sphere"]["points"].as_array().unwrap().len(), 9);
}

#[test]
fn rejects_even_characteristic() {
    assert!(Demo::new(2, 1).is_err());
}
