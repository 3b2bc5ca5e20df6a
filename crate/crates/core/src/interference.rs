//! Two-photon interference stub.
