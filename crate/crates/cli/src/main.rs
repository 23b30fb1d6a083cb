use std::io::{IsTerminal, Read, Write};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut stdin = None;
    if argv.iter().skip(1).any(|a| a == "-") && !std::io::stdin().is_terminal() {
        let mut buf = String::new();
        if std::io::stdin().read_to_string(&mut buf).is_ok() {
            stdin = Some(buf);
        }
    }
    let (code, out, err) = adjminor_cli::run_command(&argv, stdin.as_deref());
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(code);
}
