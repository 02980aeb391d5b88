//! The user guide, inlined. Each chapter of the mdbook under `book/` is
//! included verbatim, so every code block in the guide compiles and runs as
//! a doctest of this crate and the guide cannot drift from the API.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        pub mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(moment_graphs, "../../../book/src/moment-graphs.md");
chapter!(polynomials, "../../../book/src/polynomials.md");
chapter!(morse_theory, "../../../book/src/morse-theory.md");
chapter!(cohomology, "../../../book/src/cohomology.md");
chapter!(generators, "../../../book/src/generators.md");
chapter!(integral, "../../../book/src/integral.md");
chapter!(cli, "../../../book/src/cli.md");
chapter!(formats, "../../../book/src/formats.md");
