//! Regenerate the bundled job files in jobs/ from the built-in example data.
//!
//! Usage: cargo run -p optlim --example make_jobs [output-dir]

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "jobs".to_string());
    std::fs::create_dir_all(&dir)?;
    for (name, job) in [
        ("fig8.json", optlim::job::fig8_job()),
        ("trefoil.json", optlim::job::trefoil_job()),
    ] {
        let path = std::path::Path::new(&dir).join(name);
        let body = serde_json::to_string_pretty(&job).expect("serialize job");
        std::fs::write(&path, body + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
