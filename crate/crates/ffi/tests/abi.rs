use std::ffi::{CStr, CString};
use std::ptr;

use nonsolv_ffi::*;

const SL25: &str = r#"{"name": "SL(2,5)", "kind": "matrix", "dimension": 2, "modulus": 5,
    "generators": [[[1, 1], [0, 1]], [[0, 1], [4, 0]]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = ns_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn group_from_definition(text: &str) -> *mut NsGroup {
    let mut g = ptr::null_mut();
    let s = unsafe { ns_group_from_definition(c(text).as_ptr(), 0, &mut g) };
    assert_eq!(s, NsStatus::Ok, "{:?}", last_error());
    g
}

fn table(name: &str) -> *mut NsTable {
    let path = format!(
        "{}/../core/data/tables/{name}.table",
        env!("CARGO_MANIFEST_DIR")
    );
    let text = std::fs::read_to_string(path).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { ns_table_load(c(&text).as_ptr(), &mut t) },
        NsStatus::Ok
    );
    t
}

#[test]
fn sl25_through_the_abi() {
    let g = group_from_definition(SL25);
    unsafe {
        let mut order = 0usize;
        assert_eq!(ns_group_order(g, &mut order), NsStatus::Ok);
        assert_eq!(order, 120);
        let mut solvable = true;
        assert_eq!(ns_group_is_solvable(g, &mut solvable), NsStatus::Ok);
        assert!(!solvable);

        let expect = [
            (NsCondition::Thompson, true),
            (NsCondition::KaplanLevy, true),
            (NsCondition::ThreePo, false),
            (NsCondition::ThreePpo, true),
            (NsCondition::ThreeSs, true),
        ];
        for (cond, want) in expect {
            let (mut holds, mut conclusive) = (!want, false);
            let s = ns_group_check(
                g,
                cond as u32,
                NsSearchMode::Exhaustive as u32,
                &mut holds,
                &mut conclusive,
            );
            assert_eq!(s, NsStatus::Ok);
            assert_eq!(holds, want, "{cond:?}");
            assert!(conclusive);
        }

        let mut n = 99u64;
        let s = ns_group_count_triples(
            g,
            c("2").as_ptr(),
            c("3A").as_ptr(),
            c("5A").as_ptr(),
            &mut n,
        );
        assert_eq!(s, NsStatus::Ok);
        assert_eq!(n, 0);

        let t = table("2a5");
        for k in ["5A_0", "5B_0"] {
            let mut n = 99u64;
            let s = ns_table_count_triples(
                g,
                t,
                c("1A_1").as_ptr(),
                c("3A_0").as_ptr(),
                c(k).as_ptr(),
                &mut n,
            );
            assert_eq!(s, NsStatus::Ok, "{:?}", last_error());
            assert_eq!(n, 0);
        }
        ns_table_free(t);

        let mut json = ptr::null_mut();
        assert_eq!(
            ns_group_analyze_json(g, NsSearchMode::Fast as u32, &mut json),
            NsStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        ns_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schemaVersion"], ns_schema_version());
        assert_eq!(v["report"]["threePo"]["present"], false);
        ns_group_free(g);
    }
}

#[test]
fn catalog_and_counts_agree() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            ns_group_from_catalog(c("a5").as_ptr(), 0, &mut g),
            NsStatus::Ok
        );
        let t = table("a5");
        let (mut brute, mut chi) = (0u64, 1u64);
        let sel = [c("2A"), c("3A"), c("5A")];
        assert_eq!(
            ns_group_count_triples(
                g,
                sel[0].as_ptr(),
                sel[1].as_ptr(),
                sel[2].as_ptr(),
                &mut brute
            ),
            NsStatus::Ok
        );
        assert_eq!(
            ns_table_count_triples(
                g,
                t,
                sel[0].as_ptr(),
                sel[1].as_ptr(),
                sel[2].as_ptr(),
                &mut chi
            ),
            NsStatus::Ok
        );
        assert!(brute > 0);
        assert_eq!(brute, chi);

        let (mut holds, mut conclusive) = (true, true);
        let s = ns_group_check(
            g,
            NsCondition::ThreeSs as u32,
            NsSearchMode::Fast as u32,
            &mut holds,
            &mut conclusive,
        );
        assert_eq!(s, NsStatus::Ok);
        assert!(!holds && !conclusive);
        ns_table_free(t);
        ns_group_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            ns_group_from_definition(c("{").as_ptr(), 0, &mut g),
            NsStatus::Parse
        );
        assert!(last_error().unwrap().contains("parse"));
        assert!(g.is_null());

        assert_eq!(
            ns_group_from_definition(c(SL25).as_ptr(), 50, &mut g),
            NsStatus::OrderCapExceeded
        );
        assert_eq!(
            ns_group_from_catalog(c("Monster").as_ptr(), 0, &mut g),
            NsStatus::Parse
        );
        assert_eq!(
            ns_group_from_catalog(ptr::null(), 0, &mut g),
            NsStatus::NullArgument
        );
        assert_eq!(
            ns_group_from_catalog(c("A5").as_ptr(), 0, ptr::null_mut()),
            NsStatus::NullArgument
        );
        let bad_utf8 = [0xffu8, 0];
        assert_eq!(
            ns_group_from_catalog(bad_utf8.as_ptr().cast(), 0, &mut g),
            NsStatus::InvalidUtf8
        );

        let mut order = 0usize;
        assert_eq!(
            ns_group_order(ptr::null(), &mut order),
            NsStatus::NullArgument
        );

        let sl25 = group_from_definition(SL25);
        assert!(last_error().is_none());
        let mut holds = false;
        assert_eq!(
            ns_group_check(sl25, 17, 0, &mut holds, ptr::null_mut()),
            NsStatus::InvalidArgument
        );
        assert_eq!(
            ns_group_check(sl25, 0, 9, &mut holds, ptr::null_mut()),
            NsStatus::InvalidArgument
        );

        let mut n = 0u64;
        let s = ns_group_count_triples(
            sl25,
            c("5").as_ptr(),
            c("3A").as_ptr(),
            c("2A").as_ptr(),
            &mut n,
        );
        assert_eq!(s, NsStatus::UnknownClass);
        assert!(last_error().unwrap().contains("ambiguous"));

        let wrong = table("a5");
        let s = ns_table_count_triples(
            sl25,
            wrong,
            c("2A").as_ptr(),
            c("3A").as_ptr(),
            c("5A").as_ptr(),
            &mut n,
        );
        assert_eq!(s, NsStatus::WrongTable);
        ns_table_free(wrong);

        let mut t = ptr::null_mut();
        let bad = r#"{"groupName": "C2", "groupOrder": 2,
            "classes": [{"label": "1A", "size": 1, "elementOrder": 1, "inverseClassIndex": 0},
                        {"label": "2A", "size": 1, "elementOrder": 2, "inverseClassIndex": 1}],
            "characters": [[1, 1], [1, 0]]}"#;
        assert_eq!(
            ns_table_load(c(bad).as_ptr(), &mut t),
            NsStatus::TableInvalid
        );
        assert!(t.is_null());

        ns_group_free(sl25);
        ns_group_free(ptr::null_mut());
        ns_table_free(ptr::null_mut());
        ns_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { ns_group_from_definition(c("{").as_ptr(), 0, &mut g) },
        NsStatus::Parse
    );
    std::thread::spawn(|| assert!(last_error().is_none()))
        .join()
        .unwrap();
    assert!(last_error().is_some());
}
