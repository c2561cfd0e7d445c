//! Prints `src/cube/tables.rs` from the geometric cubie model.
//!
//! Usage: cargo run -p puzzle-notation --example derive_move_tables > crates/core/src/cube/tables.rs

#[path = "../tests/support/cubie.rs"]
mod cubie;

fn main() {
    let names = ["U", "R", "F", "D", "B", "L"];
    println!(
        "// Generated by `cargo run -p puzzle-notation --example derive_move_tables`. Do not edit."
    );
    println!();
    println!("/// Gather tables for clockwise quarter turns, indexed by face in URFDBL order:");
    println!("/// after the turn, facelet `i` holds what was at `CLOCKWISE[face][i]`.");
    println!("pub(crate) const CLOCKWISE: [[u8; 54]; 6] = [");
    for (face, name) in names.iter().enumerate() {
        let table = cubie::clockwise_table(face);
        println!("    // {name}");
        for chunk in table.chunks(9) {
            let row: Vec<String> = chunk.iter().map(|v| format!("{v:2}")).collect();
            if chunk.as_ptr() == table.as_ptr() {
                print!("    [");
            } else {
                print!("     ");
            }
            print!("{},", row.join(", "));
            println!();
        }
        println!("    ],");
    }
    println!("];");
}
