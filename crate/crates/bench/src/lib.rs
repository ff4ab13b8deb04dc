//! Benchmarks live in benches/; see `cargo bench -p jacring-bench`.
