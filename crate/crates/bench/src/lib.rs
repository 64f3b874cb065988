//! Shared inputs for the criterion benchmarks.

use impspace::{parse, Program};

/// Programs from the doubling, factorial and power families at a mid-size
/// parameter, plus a long-running counter loop.
pub fn workload() -> Vec<(&'static str, Program)> {
    [
        ("pows2", "(x[0] := 1; (while (x[1] < 20) do (x[1] := (x[1] + 1); x[0] := (x[0] * 2))))"),
        ("fact", "(x[0] := 1; (while (x[1] < 11) do (x[1] := (x[1] + 1); x[0] := (x[0] * x[1]))))"),
        ("counter", "(while (x[0] < 1000) do x[0] := (x[0] + 1))"),
    ]
    .into_iter()
    .map(|(name, src)| (name, parse(src).expect("workload programs parse")))
    .collect()
}
