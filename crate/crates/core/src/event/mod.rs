//! Event simulation stub.
