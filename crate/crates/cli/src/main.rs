use std::io::Write;

fn main() {
    let (out, code) = lieb_cli::run(std::env::args().skip(1));
    let written = if code == 2 {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if written.is_err() {
        std::process::exit(2);
    }
    std::process::exit(code);
}
