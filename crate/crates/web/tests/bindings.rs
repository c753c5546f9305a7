use cv_tradeoff_web::{bounds_svg_impl, sample_point_impl, scan_svg_impl};

#[test]
fn scans_render() {
    for scenario in ["error_free", "nonzero_error", "mixed_state"] {
        let svg = scan_svg_impl(scenario, -2.9, 3.9).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"), "{scenario}");
        assert!(svg.contains(r#"data-value="0.25""#));
    }
    assert!(scan_svg_impl("sideways", -2.9, 3.9).is_err());
    assert!(scan_svg_impl("mixed_state", -5.0, 3.0).is_err());
}

#[test]
fn bounds_render() {
    let svg = bounds_svg_impl(-2.9, 3.9).unwrap();
    assert!(svg.contains("</svg>"));
}

#[test]
fn sampled_point_tracks_exact() {
    let json = sample_point_impl("mixed_state", -2.9, 3.9, 0.5, 200_000, 7).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let exact = v["analytic"]["eps_b"].as_f64().unwrap();
    let sampled = v["mc"]["point"]["eps_b"].as_f64().unwrap();
    let se = exact / (2.0f64 * 200_000.0).sqrt();
    assert!((exact - sampled).abs() < 5.0 * se, "{exact} vs {sampled}");
    assert_eq!(json, sample_point_impl("mixed_state", -2.9, 3.9, 0.5, 200_000, 7).unwrap());
}
