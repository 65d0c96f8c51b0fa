pub mod convex;
pub mod error;
pub mod rational;
pub mod zk;
pub mod emax;
pub mod bounds;
pub mod optimizer;
pub mod repro;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/convex.md")]
    mod convex {}
    #[doc = include_str!("../../../book/src/book-drawings.md")]
    mod book_drawings {}
    #[doc = include_str!("../../../book/src/edge-maximum.md")]
    mod edge_maximum {}
    #[doc = include_str!("../../../book/src/lower-bounds.md")]
    mod lower_bounds {}
    #[doc = include_str!("../../../book/src/annealing.md")]
    mod annealing {}
}
