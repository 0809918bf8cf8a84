// Reading and writing channel files, and driving the command line
// in-process.
//
// Run with `cargo run --example channel_files`.

use chanrev::cli::{self, files};
use chanrev::zoo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let phi = zoo::decaying_channel(0.36)?;
    let text = files::format_channel(&phi);
    print!("{text}");
    let back = files::parse_channel(&text, files::FILE_TOL).map_err(|e| e.to_string())?;
    println!("round trip byte-identical: {}", files::format_channel(&back) == text);

    let dir = std::env::temp_dir().join(format!("chanrev-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("decaying.json");
    std::fs::write(&path, &text)?;
    let file = path.to_str().ok_or("non-UTF-8 temp path")?;

    for method in ["two-kraus", "crooks", "dual"] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(["chanrev", "reverse", file, "--method", method], &mut out, &mut err);
        let msg = String::from_utf8_lossy(&err);
        println!("reverse --method {method:<10} exit {code} {}", msg.trim());
    }

    let mut out = Vec::new();
    let code = cli::run(["chanrev", "info", file], &mut out, &mut std::io::sink());
    println!("info exit {code}:\n{}", String::from_utf8_lossy(&out));
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
