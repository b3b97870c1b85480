use gamma_forge::construct::{circ_loop, Construction};
use gamma_forge::group::{construct, GroupSpec};
use gamma_forge::table::{Loop, DEFAULT_TABLE_CAP};
use gamma_forge::tbl;
use gamma_forge::verify::{
    cmd_convert, cmd_export, cmd_import, cmd_survey, cmd_verify, ConvertInput, Format, Outcome, RowStatus,
    SurveySource, VerifyOptions,
};
use gamma_forge::Error;

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

#[test]
fn table_text_round_trips() {
    let g = construct(&spec("wr:3"), DEFAULT_TABLE_CAP).unwrap().into_table().unwrap();
    let q = circ_loop(&g).unwrap();
    let text = tbl::to_string(q.table(), &["note".to_string()]);
    let back = tbl::parse(&text, "memory").unwrap();
    assert!(back.table.cells().eq(q.table().cells()));
    assert_eq!(tbl::body(&tbl::to_string(&back.table, &[])), tbl::body(&text));
}

#[test]
fn malformed_tables_are_rejected() {
    for text in ["", "2\n0 1\n", "2\n0 1\n1 x\n", "2\n0 1\n1 0\n0 1\n"] {
        assert!(tbl::parse(text, "memory").is_err(), "{text:?}");
    }
    let not_latin = tbl::parse("2\n0 1\n0 1\n", "memory").unwrap();
    assert!(Loop::new(not_latin.table).is_err());
}

#[test]
fn verify_reports_are_reproducible() {
    let opts = VerifyOptions::default();
    for s in ["sd:7:3:2", "heis:3", "wr:3"] {
        let a = cmd_verify(&spec(s), &opts).unwrap().without_timing();
        let b = cmd_verify(&spec(s), &opts).unwrap().without_timing();
        assert_eq!(a, b);
        assert_eq!(a.render(Format::Json), b.render(Format::Json));
        assert!(a.checks.iter().all(|c| c.outcome != Outcome::Fail), "{s}");
        assert_eq!(a.exit_code(), 0);
    }
}

#[test]
fn verify_refuses_even_order() {
    let err = cmd_verify(&spec("cyclic:4"), &VerifyOptions::default()).unwrap_err();
    assert!(matches!(err, Error::NotUniquelyTwoDivisible(_)));
}

#[test]
fn export_convert_import() {
    let dir = tempfile::tempdir().unwrap();
    let exported = dir.path().join("g.tbl");
    std::fs::write(&exported, cmd_export(&spec("sd:7:3:2"), DEFAULT_TABLE_CAP).unwrap()).unwrap();
    let out = dir.path().join("circ.tbl");
    let input = ConvertInput::parse(exported.to_str().unwrap()).unwrap();
    let q = cmd_convert(&input, Construction::Circ, &out, DEFAULT_TABLE_CAP).unwrap();
    assert_eq!(q.n(), 21);
    let summary = cmd_import(&out).unwrap();
    assert_eq!(summary.order, 21);
    assert!(summary.group.is_err());
    assert!(cmd_import(&exported).unwrap().group.is_ok());
}

#[test]
fn survey_of_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    for (file, s) in [("a.tbl", "sd:7:3:2"), ("b.tbl", "cyclic:6"), ("c.tbl", "heis:3")] {
        std::fs::write(dir.path().join(file), cmd_export(&spec(s), DEFAULT_TABLE_CAP).unwrap()).unwrap();
    }
    std::fs::write(dir.path().join("d.tbl"), "2\n0 1\n").unwrap();
    let source = SurveySource::Directory(dir.path().to_path_buf());
    let report = cmd_survey(1, 100, &source, &VerifyOptions::default()).unwrap();
    let orders: Vec<_> = report.rows.iter().map(|r| r.order).collect();
    assert_eq!(orders, [None, Some(6), Some(21), Some(27)]);
    assert!(matches!(report.rows[0].status, RowStatus::Error(_)));
    assert!(matches!(report.rows[1].status, RowStatus::Skipped(_)));
    assert_eq!(report.summary.checked, 2);
    assert_eq!(report.exit_code(), 0);
    let narrow = cmd_survey(20, 22, &source, &VerifyOptions::default()).unwrap();
    assert_eq!(narrow.rows.len(), 2);
}
