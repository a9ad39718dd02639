//! Compiles and runs the guide's code samples (`book/src/*.md`) as
//! doc-tests, so the book cannot drift out of sync with the crate. Only
//! built while rustdoc collects doctests.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        pub mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(isotonic, "../../../book/src/isotonic.md");
chapter!(smoothing, "../../../book/src/smoothing.md");
chapter!(nadaraya_watson, "../../../book/src/nadaraya-watson.md");
chapter!(bootstrap, "../../../book/src/bootstrap.md");
chapter!(bandwidth, "../../../book/src/bandwidth.md");
chapter!(simulation, "../../../book/src/simulation.md");
chapter!(cli, "../../../book/src/cli.md");
