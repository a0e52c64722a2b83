pub mod cohomology;
pub mod job;
pub mod lie;
pub mod linalg;
pub mod reps;
pub mod scalars;
pub mod words;
