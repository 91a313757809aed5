//! Run the acceptance criteria and print one line per criterion.

use dualfield::verify::verify_all;

fn main() -> dualfield::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    for c in verify_all(seed)? {
        println!("{}", c.summary_line());
    }
    Ok(())
}
