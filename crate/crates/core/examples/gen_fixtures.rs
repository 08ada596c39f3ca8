//! Regenerates the character-table fixtures under `fixtures/`.
//!
//! cargo run -p cosetkit --example gen_fixtures

#[path = "../tests/support/characters.rs"]
mod characters;

use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, contents) in characters::generated_fixtures() {
        std::fs::write(dir.join(&name), contents)?;
        println!("wrote {name}");
    }
    Ok(())
}
