//! Run time and work counters on growing theories. Use `--release`.
use ddl::bench::{run_bench, Family};

fn main() {
    for family in Family::ALL {
        let r = run_bench(family, &[1_000, 10_000, 100_000], 3);
        println!(
            "{family:<10} sizes {:?} mutations {:?} slope(time) {:.2} slope(mutations) {:.2}",
            r.sizes, r.mutation_counts, r.slope_time, r.slope_mutations
        );
    }
}
