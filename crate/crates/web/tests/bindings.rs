use fano_web::{analyze_polygon_json, obstruct_xd_line, pencil_verdict_json};
use serde_json::Value;

#[test]
fn hexagon() {
    let v: Value = serde_json::from_str(&analyze_polygon_json("1 0; 1 1; 0 1; -1 0; -1 -1; 0 -1").unwrap()).unwrap();
    assert_eq!(v["degree"], "6");
    assert_eq!(v["ke"], true);
    assert_eq!(v["barycenter"], serde_json::json!(["0", "0"]));
    assert_eq!(v["dual"].as_array().unwrap().len(), 6);
}

#[test]
fn weighted_plane_has_rational_dual() {
    let v: Value = serde_json::from_str(&analyze_polygon_json("1,0; 0,1; -1,-4").unwrap()).unwrap();
    assert_eq!(v["ke"], false);
    assert_eq!(v["bishop"], "obstructed");
    assert!(v["dual"].to_string().contains("/2"));
}

#[test]
fn bad_polygons() {
    assert!(analyze_polygon_json("1 0; 0 1; 1 1").is_err());
    assert!(analyze_polygon_json("1 0; 0 x").is_err());
    assert!(analyze_polygon_json("1 0 0; 0 1 0").is_err());
}

#[test]
fn pencils() {
    let v: Value = serde_json::from_str(&pencil_verdict_json("0, 1, 2, 3, 4").unwrap()).unwrap();
    assert_eq!(v["stability"], "stable");
    let v: Value = serde_json::from_str(&pencil_verdict_json("1/2 1/2 1/2 3 3 3").unwrap()).unwrap();
    assert_eq!(v["stability"], "strictly_polystable");
    let v: Value = serde_json::from_str(&pencil_verdict_json("1 1 1 2 3").unwrap()).unwrap();
    assert_eq!(v["stability"], "unstable");
    assert!(pencil_verdict_json("1 a 2").is_err());
}

#[test]
fn threefold() {
    assert_eq!(obstruct_xd_line(5).unwrap(), "degree 512/5, LHS 512 > 100: obstructed");
    assert!(obstruct_xd_line(0).is_err());
}
