use std::io::{Read, Write};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let r = clusterloop_cli::run_with(args, &|| {
        let mut s = String::new();
        let _ = std::io::stdin().lock().read_to_string(&mut s);
        s
    });
    let _ = std::io::stdout().write_all(r.stdout.as_bytes());
    let _ = std::io::stderr().write_all(r.stderr.as_bytes());
    std::process::exit(r.code);
}
