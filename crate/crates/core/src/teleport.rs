//! Teleportation engine stub.
