//! Regenerates the canonical fixture files in fixtures/ from the built-in
//! gluing data. Run from the workspace root:
//!
//!     cargo run -p hodge-cli --example gen_fixtures

use hodge_cli::schema::{serialize_document, Document, Payload};
use hodge_core::descent::builtin_fixture;

fn main() {
    let dir = std::path::Path::new("fixtures");
    std::fs::create_dir_all(dir).expect("create fixtures dir");
    for name in ["bloch", "srinivas"] {
        let g = builtin_fixture(name).expect("builtin fixture");
        let doc = Document { d: g.d, payload: Payload::Gluing(g) };
        let path = dir.join(format!("{}.json", name));
        std::fs::write(&path, serialize_document(&doc)).expect("write fixture");
        println!("wrote {}", path.display());
    }
}
