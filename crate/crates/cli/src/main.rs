use std::io::Write;

fn main() {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut io = qwalk_cli::Io {
        stdin: &mut stdin.lock(),
        stdout: &mut out,
        stderr: &mut std::io::stderr(),
    };
    let code = qwalk_cli::run(std::env::args_os(), &mut io);
    let _ = out.flush();
    std::process::exit(code);
}
