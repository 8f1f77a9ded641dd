//! Full pipeline to a canonical JSON certificate.
//!
//!     cargo run --example certificate -- [g2|g3] [output.json]

use curve_reflexive::pipeline::{emit_report, run_pipeline, RunConfig};

fn main() -> curve_reflexive::Result<()> {
    let mut args = std::env::args().skip(1);
    let cfg = match args.next().as_deref() {
        Some("g3") => RunConfig::demo_g3(),
        _ => RunConfig::demo_g2(),
    };
    let doc = run_pipeline(&cfg)?;
    match args.next() {
        Some(path) => {
            emit_report(&doc, path.as_ref())?;
            println!("wrote {path}");
        }
        None => print!("{}", doc.to_canonical_json()),
    }
    eprintln!("verdict {}", doc.verdict);
    Ok(())
}
