mod field_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/field_arithmetic.rs"));
}

mod matrix_kernels {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matrix_kernels.rs"));
}

mod polynomial_toolkit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polynomial_toolkit.rs"));
}

mod sparse_interpolation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sparse_interpolation.rs"));
}

mod row_probe {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/row_probe.rs"));
}

mod product_correction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/product_correction.rs"));
}

mod inverse_correction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/inverse_correction.rs"));
}

mod matrix_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matrix_files.rs"));
}

mod benchmark {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/benchmark.rs"));
}

#[test]
fn field_arithmetic_runs() {
    field_arithmetic::run_example().expect("field_arithmetic example should run");
}

#[test]
fn matrix_kernels_runs() {
    matrix_kernels::run_example().expect("matrix_kernels example should run");
}

#[test]
fn polynomial_toolkit_runs() {
    polynomial_toolkit::run_example().expect("polynomial_toolkit example should run");
}

#[test]
fn sparse_interpolation_runs() {
    sparse_interpolation::run_example().expect("sparse_interpolation example should run");
}

#[test]
fn row_probe_runs() {
    row_probe::run_example().expect("row_probe example should run");
}

#[test]
fn product_correction_runs() {
    product_correction::run_example().expect("product_correction example should run");
}

#[test]
fn inverse_correction_runs() {
    inverse_correction::run_example().expect("inverse_correction example should run");
}

#[test]
fn matrix_files_runs() {
    matrix_files::run_example().expect("matrix_files example should run");
}

#[test]
fn benchmark_runs() {
    benchmark::run_example().expect("benchmark example should run");
}
