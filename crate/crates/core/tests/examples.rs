macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(tilted_family, tilted_family_runs, "tilted_family.rs");
example!(projection, projection_runs, "projection.rs");
example!(rate_function, rate_function_runs, "rate_function.rs");
example!(
    moment_exponents,
    moment_exponents_runs,
    "moment_exponents.rs"
);
example!(finite_oracle, finite_oracle_runs, "finite_oracle.rs");
example!(
    one_to_one_coding,
    one_to_one_coding_runs,
    "one_to_one_coding.rs"
);
