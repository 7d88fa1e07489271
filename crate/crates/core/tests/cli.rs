use powergeom::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("powergeom").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn painleve4_json_has_three_admissible_facets() {
    let doc = json(&["analyze", "--preset", "painleve4", "--dim", "4", "--format", "json"]);
    assert_eq!(doc["schema_version"], 1);
    let facets = doc["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 5);
    assert_eq!(facets.iter().filter(|f| f["admissible"] == true).count(), 3);
    let ids: Vec<&str> = doc["errata"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["P4-TERM-8ZW3"]);
}

#[test]
fn painleve2_text_names_witness_hyperplane() {
    let (code, out, _) = call(&["analyze", "--preset", "painleve2", "--dim", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("q3 = 0"), "{out}");
    assert!(out.contains("(0,0,1,0)"));
    assert!(out.contains("no truncated equation"));
}

#[test]
fn unit_square_hull() {
    let (code, out, _) = call(&["hull", "--points", "(0,0),(1,0),(0,1),(1,1)"]);
    assert_eq!(code, 0);
    assert!(out.contains("vertices (4)"));
    assert!(out.contains("edges: 4"));
    let doc = json(&["hull", "--points", "(0,0),(1,0),(0,1),(1,1)", "--format", "json"]);
    assert_eq!(doc["face_counts"], serde_json::json!([4, 4]));
}

#[test]
fn json_is_byte_deterministic() {
    for p in ["painleve1", "painleve2", "painleve3", "painleve4", "painleve5"] {
        let a = call(&["analyze", "--preset", p, "--format", "json"]).1;
        let b = call(&["analyze", "--preset", p, "--format", "json"]).1;
        assert_eq!(a, b);
    }
}

#[test]
fn usage_errors_exit_one_and_name_the_token() {
    let (code, _, err) = call(&["analyze", "--preset", "painleve7"]);
    assert_eq!(code, 1);
    assert!(err.contains("painleve7"));
    let (code, _, err) = call(&["analyze", "--preset", "painleve3", "--assume", "alpha>0"]);
    assert_eq!(code, 1);
    assert!(err.contains("alpha>0"));
    let (code, _, err) = call(&["analyze", "--equation", "w'' + w^x"]);
    assert_eq!(code, 1);
    assert!(err.contains("x"), "{err}");
    let (code, _, err) = call(&["analyze", "--equation", "w''' + w"]);
    assert_eq!(code, 1);
    assert!(err.contains("w'''"), "{err}");
    let (code, _, _) = call(&["analyze", "--preset", "painleve3", "--dim", "5"]);
    assert_eq!(code, 1);
    let (code, _, err) = call(&["analyze", "--preset", "painleve3", "--convention", "skew"]);
    assert_eq!(code, 1);
    assert!(err.contains("skew"));
    let (code, _, err) = call(&["hull", "--points", "(0,0),(1,q)"]);
    assert_eq!(code, 1);
    assert!(err.contains("`q`"));
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["analyze", "--equation", "w - w"]);
    assert_eq!(code, 1);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("analyze"));
}

#[test]
fn regime_filter_hides_candidate_orders() {
    let count = |regime: &str| {
        let doc = json(&["analyze", "--preset", "painleve5", "--regime", regime, "--format", "json"]);
        doc["facets"].as_array().unwrap().iter().filter(|f| !f["candidate_orders"].is_null()).count()
    };
    assert_eq!(count("both"), 4);
    assert_eq!(count("zero") + count("infinity"), 4);
    assert_eq!(count("zero"), 1);
}

#[test]
fn conventions_agree_on_admissibility() {
    for p in ["painleve3", "painleve4", "painleve5"] {
        let flags = |conv: &str| {
            let doc = json(&["analyze", "--preset", p, "--convention", conv, "--format", "json"]);
            let mut v: Vec<(i64, bool)> = doc["facets"]
                .as_array()
                .unwrap()
                .iter()
                .map(|f| (f["normal"][0].as_i64().unwrap(), f["admissible"].as_bool().unwrap()))
                .collect();
            v.sort();
            v
        };
        assert_eq!(flags("plain"), flags("count-dependent"), "{p}");
    }
}

#[test]
fn assumptions_change_the_support() {
    let doc = json(&["analyze", "--preset", "painleve3", "--assume", "gamma=0,alpha!=0", "--format", "json"]);
    assert_eq!(doc["support"].as_array().unwrap().len(), 6);
    assert_eq!(doc["assumptions"], serde_json::json!(["alpha!=0", "gamma=0"]));
    let resolved: Vec<bool> = doc["support"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["coefficient"] == "alpha")
        .map(|s| s["condition_resolved"].as_bool().unwrap())
        .collect();
    assert_eq!(resolved, [true]);
}

#[test]
fn explain_prints_published_and_computed_values() {
    let (_, plain, _) = call(&["analyze", "--preset", "painleve4"]);
    let (_, explained, _) = call(&["analyze", "--preset", "painleve4", "--explain"]);
    assert!(!plain.contains("published:"));
    assert!(explained.contains("published:") && explained.contains("8*z*w^3"), "{explained}");
}

#[test]
fn equation_from_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("powergeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("p1.ode");
    std::fs::write(&input, "w'' - 6*w^2 - z\n").unwrap();
    let output = dir.join("report.json");
    let (code, out, _) =
        call(&["analyze", "--file", input.to_str().unwrap(), "--format", "json", "--out", output.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(doc["preset"], "painleve1");
    assert_eq!(doc["affine_dim"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn force_relative_analyzes_degenerate_support() {
    let doc = json(&["analyze", "--preset", "painleve2", "--force-relative", "--format", "json"]);
    assert_eq!(doc["facets"].as_array().unwrap().len(), 4);
    assert!(doc["facets"][0]["admissible"].is_null());
}

#[test]
fn order_subcommand_reports_gap_class() {
    let doc =
        json(&["order", "--expr", "z + z^2.5", "--d1", "1 + 2.5*z^1.5", "--d2", "3.75*z^0.5", "--format", "json"]);
    assert_eq!(doc["gaps"]["class"], "four_dim_necessary");
    let v = doc["estimates"][0]["value"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-3);
    let (code, _, err) = call(&["order", "--expr", "z + foo"]);
    assert_eq!(code, 1);
    assert!(err.contains("foo"));
    let (code, _, _) = call(&["order", "--expr", "z", "--regime", "zero", "--ratio", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn lower_dimensional_geometries() {
    for dim in ["2", "3"] {
        let doc = json(&["analyze", "--preset", "painleve3", "--dim", dim, "--format", "json"]);
        assert_eq!(doc["dim"].as_u64().unwrap().to_string(), dim);
        assert!(doc["facets"].as_array().unwrap().iter().all(|f| f["admissible"].is_null()));
    }
}

fn schema_keys(def: &Value) -> Vec<String> {
    let mut keys: Vec<String> = def["properties"].as_object().unwrap().keys().cloned().collect();
    let mut required: Vec<String> =
        def["required"].as_array().unwrap().iter().map(|k| k.as_str().unwrap().to_string()).collect();
    keys.sort();
    required.sort();
    assert_eq!(keys, required);
    keys
}

fn doc_keys(doc: &Value) -> Vec<String> {
    doc.as_object().unwrap().keys().cloned().collect()
}

#[test]
fn documents_match_shipped_schema() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let defs = &schema["$defs"];
    let analyze = json(&["analyze", "--preset", "painleve3", "--format", "json"]);
    assert_eq!(doc_keys(&analyze), schema_keys(&defs["analyze"]));
    let facet = &defs["analyze"]["properties"]["facets"]["items"];
    assert_eq!(doc_keys(&analyze["facets"][0]), schema_keys(facet));
    let support = &defs["analyze"]["properties"]["support"]["items"];
    assert_eq!(doc_keys(&analyze["support"][0]), schema_keys(support));
    assert_eq!(doc_keys(&analyze["degeneracy"]), schema_keys(&defs["analyze"]["properties"]["degeneracy"]));
    let hull = json(&["hull", "--points", "(0,0),(1,0),(0,1)", "--format", "json"]);
    assert_eq!(doc_keys(&hull), schema_keys(&defs["hull"]));
    let order = json(&["order", "--expr", "z", "--format", "json"]);
    assert_eq!(doc_keys(&order), schema_keys(&defs["order"]));
}
