//! The text formats: write a certificate, read it back, and drive the
//! command line in-process.

use kneser::cli;
use kneser::derive::kneser_cycle;
use kneser::format::CertificateFile;
use kneser::middle_levels::SearchProvider;

fn main() -> kneser::error::Result<()> {
    let cert = kneser_cycle(7, 3, &SearchProvider::default())?;
    let file = cert.to_file()?;
    let text = file.render();
    print!(
        "{}",
        text.lines()
            .take(4)
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
    println!("...");
    assert_eq!(CertificateFile::parse(&text)?, file);

    match CertificateFile::parse("K 7 3 2\n1110000\n111000\n") {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!(),
    }

    let dir = std::env::temp_dir().join("kneser-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("k73.cert");
    std::fs::write(&path, &text)?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["kneser", "verify", path.to_str().unwrap()],
        &mut out,
        &mut err,
    );
    print!(
        "kneser verify {} -> exit {code}: {}",
        path.display(),
        String::from_utf8_lossy(&out)
    );

    out.clear();
    let code = cli::run(
        ["kneser", "stats", "--n", "7", "--k", "3"],
        &mut out,
        &mut err,
    );
    println!("kneser stats exit {code}");
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}
