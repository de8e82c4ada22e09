//! Placeholder; chapters get included once written.
