use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "trispec").unwrap();
        trispec_py::register(&m).unwrap();
        f(&m);
    });
}

#[test]
fn spectral_gap_of_constructions() {
    with_module(|m| {
        let k5 = m.call_method1("construct", ("kn:5",)).unwrap();
        let gap: f64 = k5.call_method0("spectral_gap").unwrap().extract().unwrap();
        assert!((gap - 5.0).abs() < 1e-8);
        let n: usize = k5.len().unwrap();
        assert_eq!(n, 10);
    });
}

#[test]
fn report_is_a_dict() {
    with_module(|m| {
        let cls = m.getattr("TriangleFamily").unwrap();
        let fam = cls.call1((vec![[1u32, 2, 3], [1, 2, 4]],)).unwrap();
        let report = m.call_method1("spectral_report", (fam,)).unwrap();
        let lambda: f64 = report.get_item("lambda").unwrap().extract().unwrap();
        assert!((lambda - 2.0).abs() < 1e-8);
    });
}

#[test]
fn errors_become_value_errors() {
    with_module(|m| {
        let err = m.call_method1("construct", ("nope:1",)).unwrap_err();
        Python::attach(|py| assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py)));
        let cls = m.getattr("TriangleFamily").unwrap();
        assert!(cls.call1((vec![[1u32, 1, 2]],)).is_err());
    });
}

#[test]
fn phi_entry() {
    with_module(|m| {
        let entry = m.call_method1("phi", (3usize,)).unwrap();
        let phi: f64 = entry.get_item("phi").unwrap().extract().unwrap();
        let exhaustive: bool = entry.get_item("exhaustive").unwrap().extract().unwrap();
        assert!((phi - 3.0).abs() < 1e-8 && exhaustive);
    });
}
