//! Quantum-dot emitter physics stub.
