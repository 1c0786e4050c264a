//! Verification suite (placeholder while the evaluators stabilize).
