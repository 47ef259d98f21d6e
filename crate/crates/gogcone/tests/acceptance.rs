//! One line per acceptance criterion, at the pinned full scale.

use gogcone::acceptance::{run_all, Scale};

fn main() {
    let outcomes = run_all(&Scale::full());
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<usize> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria passed",
            outcomes.len(),
            outcomes.len()
        );
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
