fn main() {
    std::process::exit(p1z_cli::run(std::env::args_os()));
}
