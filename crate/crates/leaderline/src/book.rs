//! Doc-tests for the guide chapters live here; see book/src.
