//! Every runnable example must run to completion.

mod channel_basics {
    include!("../examples/channel_basics.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod essential_map {
    include!("../examples/essential_map.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod time_reversals {
    include!("../examples/time_reversals.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod stinespring {
    include!("../examples/stinespring.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod fluctuation_relations {
    include!("../examples/fluctuation_relations.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod channel_files {
    include!("../examples/channel_files.rs");
    #[test]
    fn runs() {
        main().unwrap();
    }
}
