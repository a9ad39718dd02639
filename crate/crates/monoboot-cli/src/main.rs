use clap::Parser;
use monoboot_cli::app::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        // Machine-readable error record on stderr.
        let record = serde_json::json!({
            "error": { "kind": err.kind(), "message": err.to_string() }
        });
        eprintln!("{record}");
        std::process::exit(1);
    }
}
