//! Zero location machinery (placeholder while the evaluators stabilize).
