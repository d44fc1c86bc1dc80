//! Entrywise comparison of the printed order-4, 5 and 6 systems with the
//! normal forms derived from the jet rows.

use elastic_corners::corner::compare_printed_systems;

fn main() {
    for n in 4..=6 {
        let d = compare_printed_systems(n);
        println!(
            "order {n} ({}, denominator {}): {} entries, {} mismatches, derived rows certify: {}",
            d.source,
            d.denominator,
            d.entries.len(),
            d.mismatches,
            d.derived_certifies
        );
        for e in d.entries.iter().filter(|e| !e.equal) {
            println!("  {} j={} printed {} derived {}", e.row, e.j, e.printed, e.derived);
        }
    }
}
