//! Phase decomposition (placeholder while the evaluators stabilize).
