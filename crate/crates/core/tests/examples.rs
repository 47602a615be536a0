macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(genus2_counterexample);
example!(genus4_counterexample);
example!(lemma62_shape);
example!(lpoly_table);
example!(record_format);
example!(split_table);
example!(twist_moments);
