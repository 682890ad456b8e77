fn main() {
    let (status, out) = tensorloci_cli::run_command(std::env::args_os());
    print!("{out}");
    std::process::exit(status);
}
