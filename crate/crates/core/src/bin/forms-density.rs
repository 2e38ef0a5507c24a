use std::io::Write;

fn main() {
    let r = forms_density::cli::run(std::env::args_os());
    eprint!("{}", r.diagnostics);
    print!("{}", r.payload);
    let _ = std::io::stdout().flush();
    std::process::exit(r.exit_code);
}
