//! Tomography stub.
